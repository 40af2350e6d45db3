//! JSON file formats for complexes, maps, chains, cochains and mapped
//! surfaces. Every loader validates eagerly: parse problems and dangling
//! references are `Malformed`-family errors, broken invariants surface as
//! the corresponding mathematical error.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::{CoeffElement, CoeffGroup};
use crate::complex::{Chain, Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::homology::Cochain;
use crate::surface::{Surface, XSurface};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: usize,
    pub maximal_simplices: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub vertex_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainTerm {
    pub simplex: Vec<usize>,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub dim: usize,
    pub terms: Vec<ChainTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainValue {
    pub simplex: Vec<usize>,
    /// A string literal (`"1/3"`, `"2"`, `"1,0"`) or a JSON integer.
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub degree: usize,
    pub group: String,
    pub values: Vec<CochainValue>,
}

/// A mapped surface. `complex`, `map` and `cycle` are either inline
/// objects or paths (relative to the bundle file) of the separate files.
/// `map` may be omitted when it is supplied separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub complex: Value,
    #[serde(default)]
    pub map: Value,
    pub cycle: Value,
    #[serde(default)]
    pub inputs: Vec<Vec<usize>>,
    #[serde(default)]
    pub outputs: Vec<Vec<usize>>,
}

fn malformed(what: &str, e: impl std::fmt::Display) -> Error {
    Error::Malformed(format!("{what}: {e}"))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| malformed(&path.display().to_string(), e))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| malformed(what, e))
}

fn simplex(v: &[usize], what: &str) -> Result<Simplex> {
    Simplex::new(v.to_vec()).map_err(|e| malformed(what, e))
}

impl ComplexFile {
    pub fn build(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.vertices, &self.maximal_simplices)
    }

    pub fn from_complex(x: &SimplicialComplex) -> Self {
        ComplexFile {
            vertices: x.vertex_count(),
            maximal_simplices: x
                .maximal_simplices()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
        }
    }
}

impl ChainFile {
    pub fn build(&self, x: &SimplicialComplex) -> Result<Chain> {
        let mut c = Chain::zero(self.dim);
        for t in &self.terms {
            let s = simplex(&t.simplex, "chain term")?;
            if s.dim() != self.dim {
                return Err(Error::Malformed(format!(
                    "chain of degree {} has a term on {:?}",
                    self.dim, t.simplex
                )));
            }
            if !x.contains(&s) {
                return Err(Error::Malformed(format!(
                    "chain references simplex {:?}, which is not in the complex",
                    t.simplex
                )));
            }
            c.add_term(s, t.coeff);
        }
        Ok(c)
    }

    pub fn from_chain(c: &Chain) -> Self {
        ChainFile {
            dim: c.dim(),
            terms: c
                .terms()
                .map(|(s, k)| ChainTerm {
                    simplex: s.vertices().to_vec(),
                    coeff: k,
                })
                .collect(),
        }
    }
}

impl CochainFile {
    pub fn build(&self, x: &SimplicialComplex) -> Result<Cochain> {
        let group: CoeffGroup = self.group.parse()?;
        let mut values = Vec::with_capacity(self.values.len());
        for v in &self.values {
            let s = simplex(&v.simplex, "cochain value")?;
            if s.dim() != self.degree {
                return Err(Error::Malformed(format!(
                    "cochain of degree {} has a value on {:?}",
                    self.degree, v.simplex
                )));
            }
            if !x.contains(&s) {
                return Err(Error::Malformed(format!(
                    "cochain references simplex {:?}, which is not in the complex",
                    v.simplex
                )));
            }
            let literal = match &v.value {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                other => return Err(Error::Malformed(format!("cochain value {other} is not an element literal"))),
            };
            values.push((s, group.parse_element(&literal)?));
        }
        Cochain::new(x, self.degree, &group, values)
    }

    pub fn from_cochain(c: &Cochain) -> Self {
        CochainFile {
            degree: c.degree(),
            group: c.group().to_string(),
            values: c
                .values()
                .map(|(s, v): (&Simplex, &CoeffElement)| CochainValue {
                    simplex: s.vertices().to_vec(),
                    value: Value::String(v.to_string()),
                })
                .collect(),
        }
    }
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    parse::<ComplexFile>(&read(path)?, &path.display().to_string())?.build()
}

pub fn load_map(path: &Path, domain: &Arc<SimplicialComplex>, codomain: &Arc<SimplicialComplex>) -> Result<SimplicialMap> {
    let m: MapFile = parse(&read(path)?, &path.display().to_string())?;
    SimplicialMap::new(domain.clone(), codomain.clone(), m.vertex_map)
}

pub fn load_chain(path: &Path, x: &SimplicialComplex) -> Result<Chain> {
    parse::<ChainFile>(&read(path)?, &path.display().to_string())?.build(x)
}

pub fn load_cochain(path: &Path, x: &SimplicialComplex) -> Result<Cochain> {
    parse::<CochainFile>(&read(path)?, &path.display().to_string())?.build(x)
}

/// Inline object or path relative to `dir`.
fn resolve<T: for<'de> Deserialize<'de>>(v: &Value, dir: &Path, what: &str) -> Result<T> {
    match v {
        Value::String(p) => {
            let path: PathBuf = dir.join(p);
            parse(&read(&path)?, &path.display().to_string())
        }
        other => serde_json::from_value(other.clone()).map_err(|e| malformed(what, e)),
    }
}

/// Loads a mapped surface into `x`. The surface invariants are checked
/// in full.
pub fn load_bundle(path: &Path, x: &Arc<SimplicialComplex>) -> Result<XSurface> {
    load_bundle_with_map(path, None, x)
}

/// As [`load_bundle`], with the map taken from `map` when given.
pub fn load_bundle_with_map(path: &Path, map: Option<&Path>, x: &Arc<SimplicialComplex>) -> Result<XSurface> {
    let mut b: BundleFile = parse(&read(path)?, &path.display().to_string())?;
    if let Some(m) = map {
        let text = read(m)?;
        b.map = parse(&text, &m.display().to_string())?;
    }
    let dir = path.parent().unwrap_or(Path::new("."));
    bundle_to_surface(&b, dir, x)
}

pub fn bundle_to_surface(b: &BundleFile, dir: &Path, x: &Arc<SimplicialComplex>) -> Result<XSurface> {
    let cf: ComplexFile = resolve(&b.complex, dir, "bundle complex")?;
    if b.map.is_null() {
        return Err(Error::Malformed("surface bundle has no map and none was given".into()));
    }
    let mf: MapFile = resolve(&b.map, dir, "bundle map")?;
    let chf: ChainFile = resolve(&b.cycle, dir, "bundle cycle")?;
    let complex = Arc::new(cf.build()?);
    if chf.dim != 2 {
        return Err(Error::Malformed(format!("surface cycle has degree {}", chf.dim)));
    }
    let cycle = chf.build(&complex)?;
    let surface = Surface::new(complex.clone(), b.inputs.clone(), b.outputs.clone(), cycle)?;
    let map = SimplicialMap::new(complex, x.clone(), mf.vertex_map.clone())?;
    XSurface::new(surface, map)
}

pub fn surface_to_bundle(g: &XSurface) -> BundleFile {
    let s = g.surface();
    BundleFile {
        complex: serde_json::to_value(ComplexFile::from_complex(s.complex())).expect("serialisable"),
        map: serde_json::to_value(MapFile {
            vertex_map: g.map().vertex_map().to_vec(),
        })
        .expect("serialisable"),
        cycle: serde_json::to_value(ChainFile::from_chain(s.cycle())).expect("serialisable"),
        inputs: s.inputs().to_vec(),
        outputs: s.outputs().to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::homology;
    use crate::surface::surface_from_cycle;

    #[test]
    fn bundle_round_trip() {
        let x = Arc::new(fixtures::torus());
        let g = surface_from_cycle(&x, &homology(&x, 2).unwrap().generators()[0]).unwrap();
        let b = surface_to_bundle(&g);
        let text = serde_json::to_string(&b).unwrap();
        let back: BundleFile = serde_json::from_str(&text).unwrap();
        let h = bundle_to_surface(&back, Path::new("."), &x).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn cochain_values_accept_numbers_and_strings() {
        let x = fixtures::torus();
        let text = r#"{"degree": 2, "group": "z/6", "values": [
            {"simplex": [0, 1, 3], "value": 5},
            {"simplex": [0, 2, 3], "value": "7"}]}"#;
        let c: CochainFile = serde_json::from_str(text).unwrap();
        let c = c.build(&x).unwrap();
        assert_eq!(c.values().count(), 2);
        assert_eq!(CochainFile::from_cochain(&c).build(&x).unwrap(), c);
    }

    #[test]
    fn missing_simplex_is_malformed() {
        let x = fixtures::torus();
        let c = ChainFile {
            dim: 2,
            terms: vec![ChainTerm {
                simplex: vec![0, 1, 2],
                coeff: 1,
            }],
        };
        let err = c.build(&x).unwrap_err();
        assert!(err.is_malformed());
        assert!(err.to_string().contains("[0, 1, 2]"));
    }
}
