//! Finite simplicial complexes, integer chains and simplicial maps.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A simplex, stored as its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Simplex {
    /// Sorts the vertices; repeated vertices are rejected.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Malformed("a simplex needs at least one vertex".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!(
                "repeated vertex in simplex {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-one faces with their incidence signs `(-1)^i`.
    pub fn faces(&self) -> impl Iterator<Item = (i64, Simplex)> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            (if i % 2 == 0 { 1 } else { -1 }, Simplex(v))
        })
    }
}

/// A simplex together with an orientation relative to its increasing
/// vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedSimplex {
    pub simplex: Simplex,
    pub sign: i64,
}

impl OrientedSimplex {
    /// The oriented simplex spanned by `vertices` in the given order, or
    /// `None` when a vertex repeats (a degenerate simplex).
    pub fn from_ordered(vertices: &[usize]) -> Option<Self> {
        let mut v = vertices.to_vec();
        let mut sign = 1;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) || v.is_empty() {
            return None;
        }
        Some(OrientedSimplex {
            simplex: Simplex(v),
            sign,
        })
    }

    pub fn reversed(&self) -> Self {
        OrientedSimplex {
            simplex: self.simplex.clone(),
            sign: -self.sign,
        }
    }

    pub fn to_chain(&self) -> Chain {
        Chain::from_terms(self.simplex.dim(), [(self.simplex.clone(), self.sign)])
    }
}

/// A finite simplicial complex on vertices `0..vertex_count`.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertex_count", &self.vertex_count)
            .field("counts", &self.counts())
            .finish()
    }
}

impl SimplicialComplex {
    /// Downward closure of the given simplices on `vertex_count` vertices.
    /// Every vertex id below `vertex_count` is a 0-simplex even if no listed
    /// simplex uses it.
    pub fn new(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![(0..vertex_count)
            .map(|v| Simplex(vec![v]))
            .collect()];
        for tuple in maximal {
            let s = Simplex::new(tuple.clone())?;
            if let Some(&v) = s.vertices().iter().find(|&&v| v >= vertex_count) {
                return Err(Error::Malformed(format!(
                    "vertex {v} of simplex {tuple:?} is not below the vertex count {vertex_count}"
                )));
            }
            add_closure(&mut by_dim, s);
        }
        Ok(Self::from_sets(vertex_count, by_dim))
    }

    fn from_sets(vertex_count: usize, by_dim: Vec<BTreeSet<Simplex>>) -> Self {
        let mut simplices: Vec<Vec<Simplex>> =
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        while simplices.len() > 1 && simplices.last().is_some_and(Vec::is_empty) {
            simplices.pop();
        }
        let index = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        SimplicialComplex {
            vertex_count,
            simplices,
            index,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    /// Top dimension (0 for the empty complex).
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// The k-simplices in lexicographic order.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// The maximal simplices (those that are not a face of another).
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<Simplex> = BTreeSet::new();
        for k in 1..=self.dim() {
            for s in self.simplices(k) {
                for (_, f) in s.faces() {
                    covered.insert(f);
                }
            }
        }
        (0..=self.dim())
            .flat_map(|k| self.simplices(k).iter())
            .filter(|s| !covered.contains(*s))
            .cloned()
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// The matrix of the boundary map from k-chains to (k−1)-chains.
    pub fn boundary_matrix(&self, k: usize) -> Result<IntMatrix> {
        if k == 0 || k > self.dim() {
            return Err(Error::Dimension(format!(
                "boundary matrix in degree {k} requested for a complex of dimension {}",
                self.dim()
            )));
        }
        Ok(self.boundary_matrix_or_zero(k))
    }

    /// Like [`Self::boundary_matrix`] but total: degrees without a boundary
    /// map give correctly sized zero matrices.
    pub fn boundary_matrix_or_zero(&self, k: usize) -> IntMatrix {
        let rows = if k == 0 { 0 } else { self.count(k - 1) };
        let cols = self.count(k);
        let mut entries = Vec::new();
        if k > 0 {
            for (j, s) in self.simplices(k).iter().enumerate() {
                for (sign, f) in s.faces() {
                    let i = self.index[k - 1][&f];
                    entries.push((i, j, BigInt::from(sign)));
                }
            }
        }
        IntMatrix::from_triplets(rows, cols, entries).expect("indices come from the complex")
    }

    /// Simplices of any dimension containing vertex `v`.
    pub fn star_of_vertex(&self, v: usize) -> Vec<Simplex> {
        (0..=self.dim())
            .flat_map(|k| self.simplices(k).iter())
            .filter(|s| s.vertices().contains(&v))
            .cloned()
            .collect()
    }

    /// Disjoint union, with the vertices of `other` shifted past ours.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.vertex_count;
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); self.simplices.len().max(other.simplices.len()).max(1)];
        for (k, level) in self.simplices.iter().enumerate() {
            by_dim[k].extend(level.iter().cloned());
        }
        for (k, level) in other.simplices.iter().enumerate() {
            by_dim[k].extend(
                level
                    .iter()
                    .map(|s| Simplex(s.0.iter().map(|v| v + shift).collect())),
            );
        }
        Self::from_sets(self.vertex_count + other.vertex_count, by_dim)
    }
}

fn add_closure(by_dim: &mut Vec<BTreeSet<Simplex>>, s: Simplex) {
    let k = s.dim();
    while by_dim.len() <= k {
        by_dim.push(BTreeSet::new());
    }
    if by_dim[k].contains(&s) {
        return;
    }
    let faces: Vec<Simplex> = s.faces().map(|(_, f)| f).collect();
    by_dim[k].insert(s);
    for f in faces {
        add_closure(by_dim, f);
    }
}

/// Builds the downward closure of a list of simplices; the vertex count is
/// one more than the largest vertex id.
pub fn build_complex(maximal: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let n = maximal
        .iter()
        .flat_map(|t| t.iter())
        .max()
        .map_or(0, |m| m + 1);
    SimplicialComplex::new(n, maximal)
}

/// An integer k-chain. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<Simplex, i64>,
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain<{}>", self.dim)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Sums the given terms. Every simplex must have dimension `dim`.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Simplex, i64)>) -> Self {
        let mut c = Chain::zero(dim);
        for (s, x) in terms {
            c.add_term(s, x);
        }
        c
    }

    /// The chain `±[v0, v1, …]` for an ordered vertex list; zero if degenerate.
    pub fn oriented(vertices: &[usize]) -> Self {
        match OrientedSimplex::from_ordered(vertices) {
            Some(o) => o.to_chain(),
            None => Chain::zero(vertices.len().saturating_sub(1)),
        }
    }

    pub fn add_term(&mut self, s: Simplex, x: i64) {
        assert_eq!(s.dim(), self.dim, "simplex {s:?} in a {}-chain", self.dim);
        if x == 0 {
            return;
        }
        match self.terms.entry(s) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += x;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(x);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &Simplex) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.terms.iter().map(|(s, &x)| (s, x))
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn l1_norm(&self) -> i64 {
        self.terms.values().map(|x| x.abs()).sum()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add_scaled(other, -1)
    }

    pub fn add_scaled(&self, other: &Chain, k: i64) -> Chain {
        assert_eq!(self.dim, other.dim, "adding chains of different degree");
        let mut c = self.clone();
        for (s, x) in other.terms() {
            c.add_term(s.clone(), k * x);
        }
        c
    }

    pub fn neg(&self) -> Chain {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Chain {
        if k == 0 {
            return Chain::zero(self.dim);
        }
        Chain {
            dim: self.dim,
            terms: self.terms.iter().map(|(s, x)| (s.clone(), x * k)).collect(),
        }
    }

    pub fn boundary(&self) -> Result<Chain> {
        if self.dim == 0 {
            return Err(Error::Dimension("boundary of a 0-chain".into()));
        }
        let mut c = Chain::zero(self.dim - 1);
        for (s, x) in self.terms() {
            for (sign, f) in s.faces() {
                c.add_term(f, sign * x);
            }
        }
        Ok(c)
    }

    /// Checks every simplex of the chain lies in `complex`.
    pub fn check_in(&self, complex: &SimplicialComplex) -> Result<()> {
        match self.terms.keys().find(|s| !complex.contains(s)) {
            Some(s) => Err(Error::DomainMismatch(format!(
                "simplex {s:?} is not in the complex"
            ))),
            None => Ok(()),
        }
    }

    /// Coordinates against the lexicographic basis of `complex`.
    pub fn to_vector(&self, complex: &SimplicialComplex) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); complex.count(self.dim)];
        for (s, x) in self.terms() {
            let i = complex.index_of(s).ok_or_else(|| {
                Error::DomainMismatch(format!("simplex {s:?} is not in the complex"))
            })?;
            v[i] = BigInt::from(x);
        }
        Ok(v)
    }

    pub fn from_vector(complex: &SimplicialComplex, dim: usize, v: &[BigInt]) -> Result<Chain> {
        if v.len() != complex.count(dim) {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} simplices of dimension {dim}",
                v.len(),
                complex.count(dim)
            )));
        }
        let mut c = Chain::zero(dim);
        for (s, x) in complex.simplices(dim).iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            let x = x
                .to_i64()
                .ok_or_else(|| Error::Overflow(format!("chain coefficient {x}")))?;
            c.terms.insert(s.clone(), x);
        }
        Ok(c)
    }

    /// Renames vertices, dropping simplices that become degenerate.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Chain {
        let mut c = Chain::zero(self.dim);
        for (s, x) in self.terms() {
            let image: Vec<usize> = s.vertices().iter().map(|&v| f(v)).collect();
            if let Some(o) = OrientedSimplex::from_ordered(&image) {
                c.add_term(o.simplex, o.sign * x);
            }
        }
        c
    }
}

/// A simplicial map, given by where each vertex goes.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    vertex_map: Vec<usize>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialMap")
            .field("vertex_map", &self.vertex_map)
            .finish()
    }
}

impl SimplicialMap {
    /// Checks that the image of every simplex (with repeats removed) is a
    /// simplex of the codomain.
    pub fn new(
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != domain.vertex_count() {
            return Err(Error::Malformed(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                domain.vertex_count()
            )));
        }
        if let Some(&w) = vertex_map.iter().find(|&&w| w >= codomain.vertex_count()) {
            return Err(Error::Malformed(format!(
                "vertex map targets vertex {w}, codomain has {}",
                codomain.vertex_count()
            )));
        }
        let map = SimplicialMap {
            domain,
            codomain,
            vertex_map,
        };
        for k in 1..=map.domain.dim() {
            for s in map.domain.simplices(k) {
                let img = map.image_vertices(s);
                let img = Simplex(img);
                if !map.codomain.contains(&img) {
                    return Err(Error::InvalidSurface(format!(
                        "simplex {s:?} maps to {img:?}, which is not a simplex of the target"
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(complex: Arc<SimplicialComplex>) -> Self {
        let n = complex.vertex_count();
        SimplicialMap {
            domain: complex.clone(),
            codomain: complex,
            vertex_map: (0..n).collect(),
        }
    }

    pub fn domain(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialComplex> {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn image_of_vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    /// Sorted, deduplicated image vertices of a simplex.
    fn image_vertices(&self, s: &Simplex) -> Vec<usize> {
        let mut img: Vec<usize> = s.vertices().iter().map(|&v| self.vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Pushes a chain forward. Degenerate images are dropped; the others
    /// carry the sign of the permutation sorting the image vertices.
    pub fn push_forward(&self, c: &Chain) -> Result<Chain> {
        c.check_in(&self.domain)?;
        Ok(c.relabel(|v| self.vertex_map[v]))
    }

    pub fn compose(&self, then: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.codomain != *then.domain {
            return Err(Error::DomainMismatch(
                "composing maps whose codomain and domain differ".into(),
            ));
        }
        Ok(SimplicialMap {
            domain: self.domain.clone(),
            codomain: then.codomain.clone(),
            vertex_map: self.vertex_map.iter().map(|&v| then.vertex_map[v]).collect(),
        })
    }
}

/// Pushes `c` forward along `m`; free-function form of
/// [`SimplicialMap::push_forward`].
pub fn push_forward(m: &SimplicialMap, c: &Chain) -> Result<Chain> {
    m.push_forward(c)
}

/// Boundary of a chain; free-function form of [`Chain::boundary`].
pub fn boundary(c: &Chain) -> Result<Chain> {
    c.boundary()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn closure_of_one_triangle() {
        let x = build_complex(&[vec![0, 1, 2]]).unwrap();
        assert_eq!(x.counts(), vec![3, 3, 1]);
    }

    #[test]
    fn circle_has_no_triangles() {
        let x = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(x.counts(), vec![3, 3]);
        assert_eq!(x.dim(), 1);
    }

    #[test]
    fn tetrahedron_boundary_counts() {
        let x = build_complex(&[
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        assert_eq!(x.counts(), vec![4, 6, 4]);
        assert_eq!(x.euler_characteristic(), 2);
    }

    #[test]
    fn duplicate_vertex_is_malformed() {
        assert!(matches!(
            build_complex(&[vec![0, 1, 1]]),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn boundary_matrix_of_a_triangle() {
        let x = build_complex(&[vec![0, 1, 2]]).unwrap();
        let d2 = x.boundary_matrix(2).unwrap();
        // edges in lexicographic order: (0,1), (0,2), (1,2)
        let col: Vec<i64> = d2.column(0).iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(col, vec![1, -1, 1]);
    }

    #[test]
    fn circle_boundary_matrix_columns() {
        let x = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let d1 = x.boundary_matrix(1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        for j in 0..3 {
            let col: Vec<i64> = d1.column(j).iter().map(|v| i64::try_from(v).unwrap()).collect();
            assert_eq!(col.iter().filter(|&&v| v == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&v| v == -1).count(), 1);
        }
    }

    #[test]
    fn boundary_matrix_out_of_range() {
        let x = build_complex(&[vec![0, 1]]).unwrap();
        assert!(matches!(x.boundary_matrix(2), Err(Error::Dimension(_))));
        assert!(matches!(x.boundary_matrix(0), Err(Error::Dimension(_))));
    }

    #[test]
    fn boundary_of_triangle() {
        let b = Chain::from_terms(2, [(s(&[0, 1, 2]), 1)]).boundary().unwrap();
        let expect = Chain::from_terms(
            1,
            [(s(&[1, 2]), 1), (s(&[0, 2]), -1), (s(&[0, 1]), 1)],
        );
        assert_eq!(b, expect);
        assert!(b.boundary().unwrap().is_zero());
    }

    #[test]
    fn boundary_of_square() {
        // square 0-1-2-3 split along the diagonal 0-2
        let c = Chain::oriented(&[0, 1, 2]).add(&Chain::oriented(&[0, 2, 3]));
        let b = c.boundary().unwrap();
        let expect = Chain::oriented(&[0, 1])
            .add(&Chain::oriented(&[1, 2]))
            .add(&Chain::oriented(&[2, 3]))
            .add(&Chain::oriented(&[3, 0]));
        assert_eq!(b, expect);
    }

    #[test]
    fn boundary_of_zero_chain_errors() {
        assert!(matches!(Chain::zero(0).boundary(), Err(Error::Dimension(_))));
    }

    #[test]
    fn oriented_simplex_sign() {
        let o = OrientedSimplex::from_ordered(&[2, 0, 1]).unwrap();
        assert_eq!(o.simplex, s(&[0, 1, 2]));
        assert_eq!(o.sign, 1);
        let o = OrientedSimplex::from_ordered(&[1, 0, 2]).unwrap();
        assert_eq!(o.sign, -1);
        assert!(OrientedSimplex::from_ordered(&[1, 1, 2]).is_none());
    }

    #[test]
    fn constant_map_kills_two_chains() {
        let x = Arc::new(build_complex(&[vec![0, 1, 2]]).unwrap());
        let pt = Arc::new(build_complex(&[vec![0]]).unwrap());
        let m = SimplicialMap::new(x, pt, vec![0, 0, 0]).unwrap();
        let c = Chain::oriented(&[0, 1, 2]);
        assert!(m.push_forward(&c).unwrap().is_zero());
    }

    #[test]
    fn identity_pushforward() {
        let x = Arc::new(build_complex(&[vec![0, 1, 2], vec![1, 2, 3]]).unwrap());
        let m = SimplicialMap::identity(x);
        let c = Chain::oriented(&[0, 1, 2]).add_scaled(&Chain::oriented(&[1, 3, 2]), 3);
        assert_eq!(m.push_forward(&c).unwrap(), c);
    }

    #[test]
    fn map_must_send_simplices_to_simplices() {
        let x = Arc::new(build_complex(&[vec![0, 1]]).unwrap());
        let y = Arc::new(build_complex(&[vec![0], vec![1]]).unwrap());
        assert!(SimplicialMap::new(x, y, vec![0, 1]).is_err());
    }

    #[test]
    fn pushforward_domain_mismatch() {
        let x = Arc::new(build_complex(&[vec![0, 1]]).unwrap());
        let m = SimplicialMap::identity(x);
        let c = Chain::oriented(&[0, 1, 2]);
        assert!(matches!(m.push_forward(&c), Err(Error::DomainMismatch(_))));
    }
}
