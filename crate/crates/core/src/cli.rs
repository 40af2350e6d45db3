//! Command-line front end. [`run`] parses arguments, dispatches, writes
//! to the given streams and returns the process exit code:
//! 0 success, 1 usage error, 2 mathematical invariant violated or a
//! verification failed, 3 malformed input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bridge::{verify_extension_diagram, DiagramOptions};
use crate::coeff::{ext_group, hom_order, CoeffGroup};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{check_cocycle, coboundary_witness, degree2_classes, homology, uct_split, Cochain};
use crate::hqft::tau;
use crate::io::{load_bundle_with_map, load_chain, load_cochain, load_complex, surface_to_bundle, ChainFile, CochainFile};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::random::{random_cocycle, rng_from_seed, seed_from_env};
use crate::report::Report;
use crate::suites;
use crate::surface::{surface_from_cycle, XSurface};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hqft", version, about = "Exact homology, flat surface holonomy and rank-one field theories over simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ComplexArg {
    /// Complex file: {"vertices": n, "maximal_simplices": [[...], ...]}
    #[arg(long)]
    complex: PathBuf,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// 2-cocycle file
    #[arg(long)]
    cochain: PathBuf,
    /// Mapped surface bundle
    #[arg(long)]
    surface: PathBuf,
    /// Vertex map file, overriding the one in the bundle
    #[arg(long)]
    map: Option<PathBuf>,
    /// Also evaluate through an independently computed relative cycle
    #[arg(long)]
    debug_selfcheck: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Diagram,
    Surgery,
    Functoriality,
    Group,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology in one degree
    Homology {
        #[command(flatten)]
        x: ComplexArg,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology with coefficients; with --cochain, classify that cochain
    Cohomology {
        #[command(flatten)]
        x: ComplexArg,
        #[arg(long)]
        degree: usize,
        /// Coefficients: z, z/n, q/z, or a sum such as z/2+z/3
        #[arg(long)]
        group: String,
        #[arg(long)]
        cochain: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Smith normal form of a boundary matrix or of a matrix file
    Snf {
        #[arg(long, required_unless_present = "matrix", requires = "degree")]
        complex: Option<PathBuf>,
        #[arg(long)]
        degree: Option<usize>,
        /// JSON array of integer rows
        #[arg(long, conflicts_with = "complex")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Holonomy of a closed mapped surface
    Holonomy {
        #[command(flatten)]
        x: ComplexArg,
        #[command(flatten)]
        s: SurfaceArgs,
    },
    /// Holonomy on each generator of H2
    Character {
        #[command(flatten)]
        x: ComplexArg,
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Push a phase on the input circles through a cobordism
    Evaluate {
        #[command(flatten)]
        x: ComplexArg,
        #[command(flatten)]
        s: SurfaceArgs,
        /// Phase over the input object, relative to its canonical cycle
        #[arg(long, default_value = "0")]
        phase: String,
    },
    /// Validate a mapped surface and print its invariants
    VerifySurface {
        #[command(flatten)]
        x: ComplexArg,
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Realise an integral 2-cycle as a mapped closed surface (bundle JSON)
    SurfaceFromCycle {
        #[command(flatten)]
        x: ComplexArg,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        x: ComplexArg,
        #[arg(long)]
        group: String,
        /// Random instances for the randomized suites
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
    /// Ext(H_k, A) and its classes
    Ext {
        #[command(flatten)]
        x: ComplexArg,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
}

/// Result of a command: text to print and whether it counts as a pass.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Self {
        Outcome {
            text: text.into(),
            passed: true,
        }
    }

    fn json(v: &Value) -> Self {
        Outcome::ok(format!("{}\n", serde_json::to_string_pretty(v).expect("serialisable")))
    }

    fn report(r: &Report, as_json: bool) -> Self {
        let text = if as_json {
            format!("{}\n", serde_json::to_string_pretty(&r.to_json()).expect("serialisable"))
        } else {
            r.to_text()
        };
        Outcome {
            text,
            passed: r.passed(),
        }
    }
}

/// Runs the CLI on `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let mut text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::InvalidSubcommand | ErrorKind::UnknownArgument) {
                text.push('\n');
                text.push_str(&Cli::command().render_help().to_string());
            }
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if o.passed {
                EXIT_OK
            } else {
                EXIT_INVARIANT
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_malformed() {
                EXIT_MALFORMED
            } else {
                EXIT_INVARIANT
            }
        }
    }
}

fn complex(arg: &ComplexArg) -> Result<Arc<SimplicialComplex>> {
    load_complex(&arg.complex).map(Arc::new)
}

fn group(s: &str) -> Result<CoeffGroup> {
    s.parse()
}

fn surface(x: &Arc<SimplicialComplex>, path: &Path, map: Option<&Path>) -> Result<XSurface> {
    load_bundle_with_map(path, map, x)
}

fn chain_json(c: &crate::complex::Chain) -> Value {
    serde_json::to_value(ChainFile::from_chain(c)).expect("serialisable")
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Homology { x, degree, json } => {
            let x = complex(&x)?;
            let h = homology(&x, degree)?;
            if json {
                return Ok(Outcome::json(&json!({
                    "degree": degree,
                    "group": h.group().to_string(),
                    "rank": h.group().rank(),
                    "invariant_factors": h.group().invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "generators": h.generators().iter().map(chain_json).collect::<Vec<_>>(),
                    "torsion_witnesses": h.torsion_witnesses().iter().map(chain_json).collect::<Vec<_>>(),
                })));
            }
            Ok(Outcome::ok(format!("{}\n", h.group())))
        }
        Command::Cohomology {
            x,
            degree,
            group: g,
            cochain,
            json,
        } => cohomology(&load_complex(&x.complex)?, degree, &group(&g)?, cochain.as_deref(), json),
        Command::Snf {
            complex: cpath,
            degree,
            matrix,
            json,
        } => {
            let m = match (cpath, matrix) {
                (_, Some(p)) => read_matrix(&p)?,
                (Some(c), None) => {
                    let x = load_complex(&c)?;
                    x.boundary_matrix(degree.expect("clap requires degree"))?
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            let d = smith_normal_form(&m);
            let factors: Vec<String> = d.invariant_factors().iter().map(ToString::to_string).collect();
            if json {
                return Ok(Outcome::json(&json!({
                    "rows": m.rows(),
                    "cols": m.cols(),
                    "rank": d.rank(),
                    "invariant_factors": factors,
                })));
            }
            Ok(Outcome::ok(format!(
                "matrix: {}x{}\nrank: {}\ninvariant factors: [{}]\n",
                m.rows(),
                m.cols(),
                d.rank(),
                factors.join(", ")
            )))
        }
        Command::Holonomy { x, s } => {
            let x = complex(&x)?;
            let theta = load_cochain(&s.cochain, &x)?;
            let h = tau(&x, &theta)?.with_selfcheck(s.debug_selfcheck);
            let g = surface(&x, &s.surface, s.map.as_deref())?;
            Ok(Outcome::ok(format!("{}\n", h.holonomy(&g)?)))
        }
        Command::Character { x, cochain } => {
            let x = complex(&x)?;
            let theta = load_cochain(&cochain, &x)?;
            let ch = tau(&x, &theta)?.holonomy_character()?;
            let mut text = format!("H2 = {}\n", ch.group);
            for (label, v) in ch.group.labels().iter().zip(&ch.values) {
                text.push_str(&format!("{label}: {v}\n"));
            }
            Ok(Outcome::ok(text))
        }
        Command::Evaluate { x, s, phase } => {
            let x = complex(&x)?;
            let theta = load_cochain(&s.cochain, &x)?;
            let h = tau(&x, &theta)?.with_selfcheck(s.debug_selfcheck);
            let g = surface(&x, &s.surface, s.map.as_deref())?;
            let p = theta.group().parse_element(&phase)?;
            let e = h.fiber_element(&g.input_object(), p)?;
            let r = h.evaluate(&g, &e)?;
            Ok(Outcome::ok(format!(
                "input: {:?}\noutput: {:?}\nphase: {}\n",
                e.object.circles(),
                r.object.circles(),
                r.phase
            )))
        }
        Command::VerifySurface { x, surface: p, map, json } => {
            let x = complex(&x)?;
            let g = surface(&x, &p, map.as_deref())?;
            let c = g.census();
            let genus = c.genus.map_or("n/a".to_string(), |k| k.to_string());
            if json {
                return Ok(Outcome::json(&json!({
                    "vertices": c.vertices,
                    "edges": c.edges,
                    "triangles": c.triangles,
                    "euler_characteristic": c.euler_characteristic,
                    "components": c.components,
                    "genus": c.genus,
                    "input_lengths": c.input_lengths,
                    "output_lengths": c.output_lengths,
                    "closed": g.is_closed(),
                })));
            }
            Ok(Outcome::ok(format!(
                "vertices: {}\nedges: {}\ntriangles: {}\neuler characteristic: {}\ncomponents: {}\ngenus: {}\ninput circles: {:?}\noutput circles: {:?}\nstatus: valid\n",
                c.vertices, c.edges, c.triangles, c.euler_characteristic, c.components, genus, c.input_lengths, c.output_lengths
            )))
        }
        Command::SurfaceFromCycle { x, chain } => {
            let x = complex(&x)?;
            let z = load_chain(&chain, &x)?;
            let g = surface_from_cycle(&x, &z)?;
            Ok(Outcome::json(&serde_json::to_value(surface_to_bundle(&g)).expect("serialisable")))
        }
        Command::Verify {
            suite,
            x,
            group: g,
            count,
            json,
        } => {
            let x = complex(&x)?;
            let a = group(&g)?;
            let seed = seed_from_env();
            let mut r = match suite {
                Suite::Diagram => {
                    let mut opts = DiagramOptions {
                        seed,
                        ..DiagramOptions::default()
                    };
                    if !a.is_finite() {
                        let mut rng = rng_from_seed(seed);
                        for _ in 0..count.min(8) {
                            opts.test_cocycles.push(random_cocycle(&mut rng, &x, &a)?);
                        }
                    }
                    verify_extension_diagram(&x, &a, &opts)?
                }
                Suite::Surgery => suites::holonomy_invariance(&x, &a, count, seed)?,
                Suite::Functoriality => suites::functoriality(&x, &a, count, seed)?,
                Suite::Group => suites::group_structure(&x, &a, count, seed)?,
            };
            r.fact("seed", seed);
            Ok(Outcome::report(&r, json))
        }
        Command::Ext { x, group: g, degree } => {
            let x = complex(&x)?;
            let a = group(&g)?;
            let h = homology(&x, degree)?;
            let ext = ext_group(h.group(), &a);
            let mut text = format!("H{degree} = {}\n|Ext(H{degree}, {a})| = {}\n", h.group(), ext.order());
            for c in ext.classes() {
                text.push_str(&format!("{c}\n"));
            }
            Ok(Outcome::ok(text))
        }
    }
}

fn read_matrix(p: &Path) -> Result<IntMatrix> {
    let text = std::fs::read_to_string(p).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?;
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?;
    IntMatrix::from_rows(&rows)
}

fn order_string(o: Option<BigInt>) -> String {
    o.map_or("infinite".into(), |n| n.to_string())
}

fn cohomology(
    x: &SimplicialComplex,
    degree: usize,
    a: &CoeffGroup,
    cochain: Option<&Path>,
    as_json: bool,
) -> Result<Outcome> {
    let hk = if degree <= x.dim() {
        homology(x, degree)?.group().clone()
    } else {
        crate::coeff::FgAbGroup::trivial()
    };
    let below = if degree == 0 {
        crate::coeff::FgAbGroup::trivial()
    } else {
        homology(x, degree - 1)?.group().clone()
    };
    let hom = hom_order(&hk, a);
    let ext = ext_group(&below, a).order();
    let total = hom.as_ref().map(|h| h * &ext);
    let classes = if degree == 2 && a.is_finite() {
        degree2_classes(x, a, 1 << 16)?.map(|c| c.len())
    } else {
        None
    };
    let mut v = json!({
        "degree": degree,
        "group": a.to_string(),
        "H_k": hk.to_string(),
        "H_k-1": below.to_string(),
        "hom_order": order_string(hom.clone()),
        "ext_order": ext.to_string(),
        "order": order_string(total.clone()),
    });
    let mut text = format!(
        "H{degree} = {hk}\nH{} = {below}\n|Hom(H{degree}, {a})| = {}\n|Ext(H{}, {a})| = {ext}\n|H^{degree}(X; {a})| = {}\n",
        degree.saturating_sub(1),
        order_string(hom),
        degree.saturating_sub(1),
        order_string(total),
    );
    if let Some(n) = classes {
        text.push_str(&format!("enumerated classes: {n}\n"));
        v["enumerated_classes"] = json!(n);
    }
    if let Some(p) = cochain {
        let theta: Cochain = load_cochain(p, x)?;
        if theta.degree() != degree || theta.group() != a {
            return Err(Error::DomainMismatch(format!(
                "cochain has degree {} over {}, expected degree {degree} over {a}",
                theta.degree(),
                theta.group()
            )));
        }
        check_cocycle(x, &theta)?;
        let witness = coboundary_witness(x, &theta)?;
        text.push_str(&format!("cocycle: yes\ncoboundary: {}\n", if witness.is_some() { "yes" } else { "no" }));
        v["coboundary"] = json!(witness.is_some());
        if let Some(f) = &witness {
            v["coboundary_witness"] = serde_json::to_value(CochainFile::from_cochain(f)).expect("serialisable");
        }
        if degree == 2 {
            let split = uct_split(x, &theta)?;
            let hom: Vec<String> = split.hom_part.values.iter().map(ToString::to_string).collect();
            text.push_str(&format!("hom part: ({})\next part: {}\n", hom.join(", "), split.ext_part));
            v["hom_part"] = json!(hom);
            v["ext_part"] = json!(split.ext_part.to_string());
        }
    }
    if as_json {
        Ok(Outcome::json(&v))
    } else {
        Ok(Outcome::ok(text))
    }
}
