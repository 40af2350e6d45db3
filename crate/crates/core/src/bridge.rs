//! Abelian extensions as symmetric monoidal functors, the map from
//! `Ext(H₁X, A)` into `H²(X; A)` through lifted cycle bases, and the
//! two-square comparison between cohomology, theories and the universal
//! coefficient sequence.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::coeff::{
    ext_group, hom_order, CocycleRule, CoeffElement, CoeffGroup, ExtClass, ExtElement, Extension,
    FgAbGroup,
};
use crate::complex::{Chain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{
    check_cocycle, coboundary, coboundary_witness, degree2_classes, low_homology, uct_split_with,
    Cochain, HomologyGroup,
};
use crate::hqft::{tau, FiberElement, Hqft};
use crate::linalg::{kernel_basis, IntMatrix, IntSolver};
use crate::random::{random_cobordism, random_element, random_object, rng_from_seed, TestRng};
use crate::report::Report;
use crate::surface::XSurface;

type Twist = Arc<dyn Fn(&[BigInt], &[BigInt]) -> CoeffElement + Send + Sync>;

/// A functor from `Γ` (as a discrete category) to `A`-torsors: the fiber
/// over `x` is a copy of `A` labelled by `x`, and the structure map
/// `E(x) ⊗ E(y) → E(x + y)` is `(a, b) ↦ a + b + c(x, y)`.
#[derive(Clone)]
pub struct MonFunctor {
    pub base: FgAbGroup,
    pub fiber: CoeffGroup,
    twist: Twist,
}

impl fmt::Debug for MonFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonFunctor")
            .field("base", &self.base.to_string())
            .field("fiber", &self.fiber.to_string())
            .finish_non_exhaustive()
    }
}

impl MonFunctor {
    /// Any twist; the axioms are checked separately.
    pub fn new(
        base: &FgAbGroup,
        fiber: &CoeffGroup,
        twist: impl Fn(&[BigInt], &[BigInt]) -> CoeffElement + Send + Sync + 'static,
    ) -> Self {
        MonFunctor {
            base: base.clone(),
            fiber: fiber.clone(),
            twist: Arc::new(twist),
        }
    }

    pub fn twist(&self, x: &[BigInt], y: &[BigInt]) -> CoeffElement {
        (self.twist)(&self.base.normalize(x.to_vec()), &self.base.normalize(y.to_vec()))
    }

    /// `Φ_{x,y}(a, b)`: the product lands in the fiber over `x + y`.
    pub fn structure(
        &self,
        x: &[BigInt],
        a: &CoeffElement,
        y: &[BigInt],
        b: &CoeffElement,
    ) -> (Vec<BigInt>, CoeffElement) {
        let sum = self.fiber.add(&self.fiber.add(a, b), &self.twist(x, y));
        (self.base.add(x, y), sum)
    }

    /// Elements of `Γ` to test on: all of them when at most `limit`,
    /// otherwise a box of small coordinates.
    pub fn samples(&self, limit: usize) -> Vec<Vec<BigInt>> {
        if let Some(all) = self.base.elements(limit) {
            return all;
        }
        let mut out = vec![Vec::new()];
        for i in 0..self.base.generator_count() {
            let range: Vec<i64> = match self.base.generator_order(i) {
                Some(d) if *d <= BigInt::from(3) => (0..3).collect(),
                _ => vec![-1, 0, 1, 2],
            };
            out = out
                .into_iter()
                .flat_map(|p| {
                    range.iter().map(move |&k| {
                        let mut v = p.clone();
                        v.push(BigInt::from(k));
                        v
                    })
                })
                .take(limit.max(1))
                .collect();
        }
        out.into_iter().map(|v| self.base.normalize(v)).collect()
    }

    /// Unit, associativity and symmetry on all sampled pairs and triples.
    pub fn verify_axioms(&self, limit: usize) -> Result<()> {
        let xs = self.samples(limit);
        let zero = self.base.zero();
        let fail = |msg: String| Err(Error::NotMonoidal(msg));
        for x in &xs {
            if !self.fiber.is_zero(&self.twist(&zero, x)) || !self.fiber.is_zero(&self.twist(x, &zero)) {
                return fail(format!("unit axiom fails at x = {x:?}"));
            }
        }
        for x in &xs {
            for y in &xs {
                if self.twist(x, y) != self.twist(y, x) {
                    return fail(format!(
                        "symmetry fails at ({x:?}, {y:?}): c(x, y) = {}, c(y, x) = {}",
                        self.twist(x, y),
                        self.twist(y, x)
                    ));
                }
                for z in &xs {
                    let l = self.fiber.add(&self.twist(x, y), &self.twist(&self.base.add(x, y), z));
                    let r = self.fiber.add(&self.twist(x, &self.base.add(y, z)), &self.twist(y, z));
                    if l != r {
                        return fail(format!("associativity fails at ({x:?}, {y:?}, {z:?}): {l} vs {r}"));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn functor_from_extension(ext: &Extension) -> MonFunctor {
    let e = ext.clone();
    MonFunctor::new(&ext.base, &ext.fiber, move |x, y| e.cocycle(x, y))
}

/// The union of the fibers with the product from `Φ`; fails when the
/// functor violates an axiom on the sampled elements.
pub fn extension_from_functor(f: &MonFunctor, limit: usize) -> Result<Extension> {
    f.verify_axioms(limit)?;
    Ok(Extension {
        base: f.base.clone(),
        fiber: f.fiber.clone(),
        rule: CocycleRule::Custom(f.twist.clone()),
    })
}

/// A basis of the 1-cycles with a lift of each basis cycle into `Γ̂`
/// over its homology class.
#[derive(Clone, Debug)]
pub struct CycleLift {
    pub extension: Extension,
    pub cycle_basis: Vec<Chain>,
    pub lift_values: Vec<ExtElement>,
    complex: Arc<SimplicialComplex>,
    h1: HomologyGroup,
    basis_matrix: Option<IntMatrix>,
}

/// The standard basis of `Z₁` from the kernel of `∂₁`.
pub fn cycle_basis(x: &SimplicialComplex) -> Result<Vec<Chain>> {
    if x.count(1) == 0 {
        return Ok(Vec::new());
    }
    kernel_basis(&x.boundary_matrix(1)?)
        .iter()
        .map(|v| Chain::from_vector(x, 1, v))
        .collect()
}

impl CycleLift {
    /// Lifts each basis cycle `z` to `(0, [z])`.
    pub fn new(x: &Arc<SimplicialComplex>, ext: &Extension, h1: &HomologyGroup) -> Result<Self> {
        let basis = cycle_basis(x)?;
        let zeros = vec![ext.fiber.zero(); basis.len()];
        CycleLift::with_basis(x, ext, h1, basis, zeros)
    }

    /// Lifts `basis[j]` to `(offsets[j], [basis[j]])`. The basis must span
    /// the 1-cycles.
    pub fn with_basis(
        x: &Arc<SimplicialComplex>,
        ext: &Extension,
        h1: &HomologyGroup,
        basis: Vec<Chain>,
        offsets: Vec<CoeffElement>,
    ) -> Result<Self> {
        if !ext.base.isomorphic(h1.group()) || ext.base.invariant_factors() != h1.group().invariant_factors() {
            return Err(Error::DomainMismatch(format!(
                "extension base {} is not the first homology {}",
                ext.base,
                h1.group()
            )));
        }
        if offsets.len() != basis.len() {
            return Err(Error::Malformed("one offset per basis cycle is needed".into()));
        }
        let mut lift_values = Vec::with_capacity(basis.len());
        for (z, a) in basis.iter().zip(offsets) {
            lift_values.push(ExtElement {
                a: ext.fiber.normalize(a)?,
                x: h1.class_of(x, z)?,
            });
        }
        let basis_matrix = if basis.is_empty() {
            None
        } else {
            let cols = basis
                .iter()
                .map(|z| z.to_vector(x))
                .collect::<Result<Vec<_>>>()?;
            Some(IntMatrix::from_columns(x.count(1), &cols)?)
        };
        let lift = CycleLift {
            extension: ext.clone(),
            cycle_basis: basis,
            lift_values,
            complex: x.clone(),
            h1: h1.clone(),
            basis_matrix,
        };
        if let Some(z) = cycle_basis(x)?.into_iter().find(|z| lift.coordinates(z).is_err()) {
            return Err(Error::Malformed(format!("basis does not span the cycle {z:?}")));
        }
        Ok(lift)
    }

    /// Coordinates of a 1-cycle in the basis.
    pub fn coordinates(&self, z: &Chain) -> Result<Vec<BigInt>> {
        let Some(m) = &self.basis_matrix else {
            return if z.is_zero() {
                Ok(Vec::new())
            } else {
                Err(Error::NotACycle("the complex has no 1-cycles".into()))
            };
        };
        IntSolver::new(m)
            .solve(&z.to_vector(&self.complex)?)?
            .ok_or_else(|| Error::NotACycle(format!("{z:?} is not an integral 1-cycle")))
    }

    /// `q̂(z)`, extended linearly from the basis with `Γ̂` arithmetic.
    pub fn lift(&self, z: &Chain) -> Result<ExtElement> {
        let k = self.coordinates(z)?;
        let e = &self.extension;
        Ok(k.iter()
            .zip(&self.lift_values)
            .filter(|(c, _)| !c.is_zero())
            .fold(e.zero(), |acc, (c, v)| e.add(&acc, &e.scale(c, v))))
    }

    /// `p(q̂(z)) = [z]` on every basis cycle.
    pub fn verify(&self) -> Result<()> {
        for z in &self.cycle_basis {
            let l = self.lift(z)?;
            let class = self.h1.class_of(&self.complex, z)?;
            if self.extension.project(&l) != class {
                return Err(Error::Internal(format!("lift of {z:?} does not project to its class")));
            }
        }
        Ok(())
    }

    /// `θ_ε(e) = q̂(∂e)`, read in `A` since `∂e` is a boundary.
    pub fn cocycle(&self) -> Result<Cochain> {
        let x = &self.complex;
        let a = &self.extension.fiber;
        if x.dim() < 2 {
            return Ok(Cochain::zero(2, a));
        }
        let mut values = Vec::with_capacity(x.count(2));
        for t in x.simplices(2) {
            let q = self.lift(&Chain::from_terms(2, [(t.clone(), 1)]).boundary()?)?;
            if q.x.iter().any(|c| !c.is_zero()) {
                return Err(Error::Internal(format!("lift of ∂{t:?} leaves the fiber")));
            }
            values.push(q.a);
        }
        let theta = Cochain::from_dense(x, 2, a, values);
        check_cocycle(x, &theta)?;
        Ok(theta)
    }
}

/// `ι(ε)`: the 2-cocycle of the standard cycle lift of `ε`.
pub fn iota(x: &Arc<SimplicialComplex>, ext: &Extension) -> Result<Cochain> {
    let (h1, _) = low_homology(x)?;
    CycleLift::new(x, ext, &h1)?.cocycle()
}

/// The comparison `Ψ_γ(p) = p + q̂(γ_* [S_m])` from the fibers of
/// `τ(ι(ε))` into `Γ̂`, over `p⁻¹([γ])`.
#[derive(Clone, Debug)]
pub struct LeftSquare {
    pub theory: Hqft,
    pub lift: CycleLift,
}

impl LeftSquare {
    pub fn new(lift: CycleLift) -> Result<Self> {
        let theta = lift.cocycle()?;
        Ok(LeftSquare {
            theory: tau(&lift.complex, &theta)?,
            lift,
        })
    }

    pub fn psi(&self, e: &FiberElement) -> Result<ExtElement> {
        let ext = &self.lift.extension;
        let q = self.lift.lift(&e.object.canonical_cycle())?;
        Ok(ext.add(&ext.include(&e.phase), &q))
    }

    /// `Ψ_{γ₁}(E(g)(p)) = Ψ_{γ₀}(p)`: morphisms act as identities on `Γ̂`.
    pub fn verify_naturality(&self, g: &XSurface, e: &FiberElement) -> Result<bool> {
        let out = self.theory.evaluate(g, e)?;
        Ok(self.psi(&out)? == self.psi(e)?)
    }

    /// `Ψ(a ⊗ b) = Ψ(a) + Ψ(b)` and `Ψ` lands over the class of `γ`.
    pub fn verify_monoidality(&self, a: &FiberElement, b: &FiberElement) -> Result<bool> {
        let ext = &self.lift.extension;
        let ab = self.psi(&a.tensor(b, &ext.fiber))?;
        let over = self.lift.h1.class_of(&self.lift.complex, &a.object.canonical_cycle())?;
        Ok(ab == ext.add(&self.psi(a)?, &self.psi(b)?) && ext.project(&self.psi(a)?) == over)
    }
}

/// Options for [`verify_extension_diagram`].
#[derive(Clone, Debug)]
pub struct DiagramOptions {
    pub seed: u64,
    /// Random cobordisms per extension class for the left square.
    pub samples: usize,
    /// Cap on enumerated cohomology classes.
    pub class_limit: usize,
    /// Cocycles to test when `A` is not finite.
    pub test_cocycles: Vec<Cochain>,
}

impl Default for DiagramOptions {
    fn default() -> Self {
        DiagramOptions {
            seed: crate::random::DEFAULT_SEED,
            samples: 6,
            class_limit: 4096,
            test_cocycles: Vec::new(),
        }
    }
}

fn describe(theta: &Cochain) -> String {
    let nz: Vec<String> = theta
        .values()
        .map(|(s, v)| format!("{:?}:{v}", s.vertices()))
        .collect();
    if nz.is_empty() {
        "0".into()
    } else {
        nz.join(" ")
    }
}

fn values_string(v: &[CoeffElement]) -> String {
    let s: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", s.join(", "))
}

/// Checks the commuting diagram relating `H²(X; A)`, theories, and the
/// universal coefficient sequence:
///
/// * right square: the holonomy character of `τ(θ)` is the Hom part of
///   `θ`, for every enumerated class;
/// * left square: for every `ε`, `ι(ε)` has zero Hom part and Ext part
///   `ε`, and `Ψ` identifies `τ(ι(ε))` with the theory of `ε`
///   (naturality and monoidality on random cobordisms);
/// * counts, injectivity, surjectivity and exactness in the middle;
/// * `ι` is a homomorphism and independent of the cycle basis up to
///   coboundaries, each with an exhibited witness.
pub fn verify_extension_diagram(
    x: &Arc<SimplicialComplex>,
    a: &CoeffGroup,
    opts: &DiagramOptions,
) -> Result<Report> {
    let mut rep = Report::new(format!("diagram check over {a}"));
    let (h1, h2) = low_homology(x)?;
    let ext = ext_group(h1.group(), a);
    rep.fact("H1", h1.group());
    rep.fact("H2", h2.group());
    let homs = hom_order(h2.group(), a);
    rep.fact("|Hom(H2, A)|", homs.as_ref().map_or("infinite".into(), ToString::to_string));
    rep.fact("|Ext(H1, A)|", ext.order());
    let mut rng = rng_from_seed(opts.seed);

    let enumerated = degree2_classes(x, a, opts.class_limit)?;
    let classes = match &enumerated {
        Some(c) => c.clone(),
        None => opts.test_cocycles.clone(),
    };
    for t in &classes {
        check_cocycle(x, t)?;
    }
    rep.fact("classes", classes.len());

    if let (Some(_), Some(h)) = (&enumerated, &homs) {
        let expected = h * ext.order();
        rep.check("count", "|H2(X;A)| = |Hom|·|Ext|", &expected, classes.len(), None);
    }

    // right square
    let mut splits = Vec::with_capacity(classes.len());
    for (i, theta) in classes.iter().enumerate() {
        let split = uct_split_with(&h1, &h2, theta, a)?;
        let chi = tau(x, theta)?.holonomy_character()?;
        rep.check(
            "right-square",
            format!("class {i}"),
            values_string(&split.hom_part.values),
            values_string(&chi.values),
            Some(format!("cocycle {}", describe(theta))),
        );
        splits.push(split);
    }

    if enumerated.is_some() {
        let distinct: BTreeSet<(String, String)> = splits
            .iter()
            .map(|s| (values_string(&s.hom_part.values), s.ext_part.to_string()))
            .collect();
        let witness = (distinct.len() != splits.len()).then(|| {
            let mut seen = std::collections::BTreeMap::new();
            for (i, s) in splits.iter().enumerate() {
                let key = (values_string(&s.hom_part.values), s.ext_part.to_string());
                if let Some(j) = seen.insert(key, i) {
                    return format!("classes {j} and {i} have the same invariants");
                }
            }
            String::new()
        });
        rep.check("injectivity", "UCT invariants separate classes", splits.len(), distinct.len(), witness);
        let hom_images: BTreeSet<String> = splits.iter().map(|s| values_string(&s.hom_part.values)).collect();
        if let Some(h) = &homs {
            rep.check("surjectivity", "Hom part onto Hom(H2, A)", h, hom_images.len(), None);
        }
        let kernel: Vec<&Cochain> = classes
            .iter()
            .zip(&splits)
            .filter(|(_, s)| s.hom_part.is_zero())
            .map(|(t, _)| t)
            .collect();
        rep.check("exactness", "|ker S| = |Ext(H1, A)|", ext.order(), kernel.len(), None);
    } else {
        // infinite A: a cocycle with zero Hom part must come from Ext
        for (i, (theta, s)) in classes.iter().zip(&splits).enumerate() {
            if s.hom_part.is_zero() && ext.is_trivial() {
                let w = coboundary_witness(x, theta)?;
                rep.record(
                    "kernel",
                    format!("test cocycle {i}"),
                    w.is_some(),
                    "coboundary",
                    if w.is_some() { "coboundary" } else { "not a coboundary" },
                    w.map(|f| format!("f = {}", describe(&f))),
                );
            }
        }
    }

    // left square
    let ext_classes = if ext.order() <= BigInt::from(opts.class_limit) {
        ext.classes()
    } else {
        vec![ext.zero()]
    };
    let mut iotas: Vec<(ExtClass, Cochain)> = Vec::new();
    for cls in &ext_classes {
        let e = crate::coeff::extension_from_class(h1.group(), a, cls)?;
        let lift = CycleLift::new(x, &e, &h1)?;
        lift.verify()?;
        let theta = lift.cocycle()?;
        let split = uct_split_with(&h1, &h2, &theta, a)?;
        rep.record(
            "iota",
            format!("ext {cls}"),
            split.hom_part.is_zero() && split.ext_part == *cls,
            format!("hom 0, ext {cls}"),
            format!("hom {}, ext {}", values_string(&split.hom_part.values), split.ext_part),
            Some(format!("cocycle {}", describe(&theta))),
        );
        if ext.is_trivial() {
            let w = coboundary_witness(x, &theta)?;
            rep.record(
                "divisible-collapse",
                format!("ext {cls}"),
                w.is_some(),
                "coboundary",
                if w.is_some() { "coboundary" } else { "not a coboundary" },
                w.map(|f| format!("f = {}", describe(&f))),
            );
        }

        let square = LeftSquare::new(lift.clone())?;
        let (mut nat, mut mono, mut total) = (0, 0, 0);
        let mut bad: Option<String> = None;
        for _ in 0..opts.samples {
            let g = random_cobordism(&mut rng, x)?;
            let e0 = square.theory.fiber_element(&g.input_object(), random_element(&mut rng, a))?;
            total += 1;
            if square.verify_naturality(&g, &e0)? {
                nat += 1;
            } else if bad.is_none() {
                bad = Some(format!("naturality fails on a cobordism with census {:?}", g.census()));
            }
            let circles = rng.gen_range(1..=2);
            let other = random_object(&mut rng, x, circles);
            let e1 = square.theory.fiber_element(&other, random_element(&mut rng, a))?;
            if square.verify_monoidality(&e0, &e1)? {
                mono += 1;
            } else if bad.is_none() {
                bad = Some(format!("monoidality fails for {e0} and {e1}"));
            }
        }
        rep.record(
            "left-square",
            format!("ext {cls}"),
            nat == total && mono == total,
            format!("{total}/{total} natural, {total}/{total} monoidal"),
            format!("{nat}/{total} natural, {mono}/{total} monoidal"),
            bad,
        );

        // a second basis and other lifts change ι(ε) by a coboundary
        let alt = sheared_lift(&mut rng, x, &e, &h1)?;
        let diff = alt.cocycle()?.sub(&theta)?;
        let w = coboundary_witness(x, &diff)?;
        rep.record(
            "basis-independence",
            format!("ext {cls}"),
            w.is_some(),
            "coboundary",
            if w.is_some() { "coboundary" } else { "not a coboundary" },
            w.map(|f| format!("f = {}", describe(&f))),
        );
        iotas.push((cls.clone(), theta));
    }

    if enumerated.is_some() {
        // each kernel class is hit by ι
        for (i, (theta, s)) in classes.iter().zip(&splits).enumerate() {
            if !s.hom_part.is_zero() {
                continue;
            }
            let Some((_, image)) = iotas.iter().find(|(c, _)| *c == s.ext_part) else {
                continue;
            };
            let w = coboundary_witness(x, &theta.sub(image)?)?;
            rep.record(
                "exactness",
                format!("class {i} = ι({})", s.ext_part),
                w.is_some(),
                "cohomologous",
                if w.is_some() { "cohomologous" } else { "different" },
                w.map(|f| format!("f = {}", describe(&f))),
            );
        }
    }

    // ι is additive up to coboundaries
    let pairs: Vec<(usize, usize)> = (0..iotas.len())
        .flat_map(|i| (i..iotas.len()).map(move |j| (i, j)))
        .take(16)
        .collect();
    for (i, j) in pairs {
        let (c1, t1) = &iotas[i];
        let (c2, t2) = &iotas[j];
        let sum = ext.add(c1, c2);
        let Some((_, t12)) = iotas.iter().find(|(c, _)| *c == sum) else {
            continue;
        };
        let diff = t12.sub(t1)?.sub(t2)?;
        let w = coboundary_witness(x, &diff)?;
        let ok = w.as_ref().is_some_and(|f| coboundary(x, f) == diff);
        rep.record(
            "iota-homomorphism",
            format!("ι({c1} + {c2})"),
            ok,
            "coboundary",
            if ok { "coboundary" } else { "not a coboundary" },
            w.map(|f| format!("f = {}", describe(&f))),
        );
    }
    Ok(rep)
}

/// A lift over a unimodular change of the standard basis, with random
/// fiber offsets.
fn sheared_lift(
    rng: &mut TestRng,
    x: &Arc<SimplicialComplex>,
    ext: &Extension,
    h1: &HomologyGroup,
) -> Result<CycleLift> {
    let mut basis = cycle_basis(x)?;
    let n = basis.len();
    for j in 1..n {
        let k: i64 = rng.gen_range(-2..=2);
        basis[j - 1] = basis[j - 1].add_scaled(&basis[j].clone(), k);
    }
    basis.reverse();
    let offsets = (0..n).map(|_| random_element(rng, &ext.fiber)).collect();
    CycleLift::with_basis(x, ext, h1, basis, offsets)
}
