//! Triangulated oriented surfaces with boundary circles, mapped into a
//! base complex: validation, gluing, disjoint union, reversal, cylinders,
//! local surgery, and surfaces realising a given 2-cycle.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{Chain, Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntSolver};

/// A triangulated compact oriented surface. `cycle` carries `±1` on every
/// triangle and satisfies `∂cycle = Σ inputs − Σ outputs`, each circle
/// read as the 1-cycle `Σ [cᵢ, cᵢ₊₁]`. Without circles the surface is
/// closed and `cycle` is its fundamental cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    complex: Arc<SimplicialComplex>,
    inputs: Vec<Vec<usize>>,
    outputs: Vec<Vec<usize>>,
    cycle: Chain,
}

/// The 1-cycle `Σ [cᵢ, cᵢ₊₁]` of a cyclic vertex sequence.
pub fn circle_cycle(circle: &[usize]) -> Chain {
    let mut c = Chain::zero(1);
    let n = circle.len();
    for i in 0..n {
        let e = Chain::oriented(&[circle[i], circle[(i + 1) % n]]);
        c = c.add(&e);
    }
    c
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidSurface(msg)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl Surface {
    /// Validates every surface invariant.
    pub fn new(
        complex: Arc<SimplicialComplex>,
        inputs: Vec<Vec<usize>>,
        outputs: Vec<Vec<usize>>,
        cycle: Chain,
    ) -> Result<Self> {
        let s = Surface {
            complex,
            inputs,
            outputs,
            cycle,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn closed(complex: Arc<SimplicialComplex>, cycle: Chain) -> Result<Self> {
        Surface::new(complex, Vec::new(), Vec::new(), cycle)
    }

    pub fn empty() -> Self {
        Surface {
            complex: Arc::new(SimplicialComplex::new(0, &[]).expect("empty")),
            inputs: Vec::new(),
            outputs: Vec::new(),
            cycle: Chain::zero(2),
        }
    }

    fn validate(&self) -> Result<()> {
        let x = &*self.complex;
        if x.dim() > 2 {
            return Err(bad(format!("surface complex has dimension {}", x.dim())));
        }
        if self.cycle.dim() != 2 {
            return Err(bad(format!("fundamental cycle has degree {}", self.cycle.dim())));
        }
        if x.vertex_count() > 0 && x.count(2) == 0 {
            return Err(bad("surface has vertices but no triangles".into()));
        }
        self.cycle.check_in(x)?;
        for t in x.simplices(2) {
            let c = self.cycle.coefficient(t);
            if c.abs() != 1 {
                return Err(bad(format!(
                    "fundamental cycle has coefficient {c} on triangle {t:?}"
                )));
            }
        }

        let mut on_circle: HashMap<usize, usize> = HashMap::new();
        let mut circle_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (ci, c) in self.inputs.iter().chain(&self.outputs).enumerate() {
            if c.len() < 3 {
                return Err(bad(format!("boundary circle {c:?} has fewer than 3 vertices")));
            }
            for &v in c {
                if v >= x.vertex_count() {
                    return Err(Error::Malformed(format!(
                        "boundary circle vertex {v} is not a vertex of the surface"
                    )));
                }
                if on_circle.insert(v, ci).is_some() {
                    return Err(bad(format!("vertex {v} lies on two boundary circles or twice on one")));
                }
            }
            for i in 0..c.len() {
                let e = edge_key(c[i], c[(i + 1) % c.len()]);
                if !x.contains(&Simplex::new(vec![e.0, e.1])?) {
                    return Err(bad(format!("boundary circle edge {:?} is not an edge", [e.0, e.1])));
                }
                circle_edges.insert(e);
            }
        }

        let mut edge_count: BTreeMap<(usize, usize), usize> = x
            .simplices(1)
            .iter()
            .map(|e| (edge_key(e.vertices()[0], e.vertices()[1]), 0))
            .collect();
        let mut tris_at: Vec<Vec<[usize; 3]>> = vec![Vec::new(); x.vertex_count()];
        for t in x.simplices(2) {
            let v = t.vertices();
            for (a, b) in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
                *edge_count.get_mut(&edge_key(a, b)).expect("face of a triangle") += 1;
            }
            for &a in v {
                tris_at[a].push([v[0], v[1], v[2]]);
            }
        }
        for (&(a, b), &n) in &edge_count {
            let boundary = circle_edges.contains(&(a, b));
            match (boundary, n) {
                (true, 1) | (false, 2) => {}
                (true, n) => {
                    return Err(bad(format!(
                        "boundary edge [{a}, {b}] lies in {n} triangles, expected 1"
                    )))
                }
                (false, n) => {
                    return Err(bad(format!("edge [{a}, {b}] lies in {n} triangles, expected 2")))
                }
            }
        }

        for (v, tris) in tris_at.iter().enumerate() {
            if tris.is_empty() {
                return Err(bad(format!("vertex {v} lies in no triangle")));
            }
            // link of v: one edge per triangle, must be connected
            let nbrs: Vec<usize> = {
                let mut s: Vec<usize> = tris.iter().flatten().copied().filter(|&w| w != v).collect();
                s.sort_unstable();
                s.dedup();
                s
            };
            let idx = |w: usize| nbrs.binary_search(&w).expect("neighbour");
            let mut uf = UnionFind::new(nbrs.len());
            for t in tris {
                let o: Vec<usize> = t.iter().copied().filter(|&w| w != v).collect();
                uf.union(idx(o[0]), idx(o[1]));
            }
            let root = uf.find(0);
            if (1..nbrs.len()).any(|i| uf.find(i) != root) {
                return Err(bad(format!("link of vertex {v} is not connected")));
            }
        }

        let mut expected = Chain::zero(1);
        for c in &self.inputs {
            expected = expected.add(&circle_cycle(c));
        }
        for c in &self.outputs {
            expected = expected.sub(&circle_cycle(c));
        }
        let actual = if x.count(2) == 0 {
            Chain::zero(1)
        } else {
            self.cycle.boundary()?
        };
        if actual != expected {
            return Err(bad(if self.is_closed() {
                "fundamental cycle has non-zero boundary; the triangles are not coherently oriented"
                    .into()
            } else {
                "boundary of the relative cycle is not inputs minus outputs".into()
            }));
        }
        Ok(())
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn inputs(&self) -> &[Vec<usize>] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Vec<usize>] {
        &self.outputs
    }

    pub fn cycle(&self) -> &Chain {
        &self.cycle
    }

    pub fn is_closed(&self) -> bool {
        self.inputs.is_empty() && self.outputs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.vertex_count() == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        if self.is_empty() {
            return 0;
        }
        self.complex.euler_characteristic()
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.complex.vertex_count();
        let mut uf = UnionFind::new(n);
        for e in self.complex.simplices(1) {
            uf.union(e.vertices()[0], e.vertices()[1]);
        }
        (0..n).filter(|&v| uf.find(v) == v).count()
    }

    /// Component index of every vertex, numbered by smallest vertex.
    pub fn vertex_components(&self) -> Vec<usize> {
        let n = self.complex.vertex_count();
        let mut uf = UnionFind::new(n);
        for e in self.complex.simplices(1) {
            uf.union(e.vertices()[0], e.vertices()[1]);
        }
        let mut ids = HashMap::new();
        (0..n)
            .map(|v| {
                let r = uf.find(v);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }

    /// Genus of a closed connected surface.
    pub fn genus(&self) -> Option<i64> {
        (self.is_closed() && self.component_count() == 1).then(|| (2 - self.euler_characteristic()) / 2)
    }

    /// No edge joins two vertices of the given circles except the circle
    /// edges themselves, and no triangle has all corners on them.
    pub fn is_collared(&self, circles: &[Vec<usize>]) -> bool {
        let on: BTreeSet<usize> = circles.iter().flatten().copied().collect();
        let mut circle_edges = BTreeSet::new();
        for c in circles {
            for i in 0..c.len() {
                circle_edges.insert(edge_key(c[i], c[(i + 1) % c.len()]));
            }
        }
        let edges_ok = self.complex.simplices(1).iter().all(|e| {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            !(on.contains(&a) && on.contains(&b)) || circle_edges.contains(&(a, b))
        });
        let tris_ok = self
            .complex
            .simplices(2)
            .iter()
            .all(|t| !t.vertices().iter().all(|v| on.contains(v)));
        edges_ok && tris_ok
    }

    /// Oriented triangles `(a, b, c)` with `cycle = Σ [a, b, c]`.
    pub fn oriented_triangles(&self) -> Vec<[usize; 3]> {
        self.cycle
            .terms()
            .map(|(s, c)| {
                let v = s.vertices();
                if c > 0 {
                    [v[0], v[1], v[2]]
                } else {
                    [v[0], v[2], v[1]]
                }
            })
            .collect()
    }
}

/// Circles in the base complex: the image sequences of boundary circles.
/// Consecutive images are equal or joined by an edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XObject {
    circles: Vec<Vec<usize>>,
}

impl XObject {
    pub fn new(x: &SimplicialComplex, circles: Vec<Vec<usize>>) -> Result<Self> {
        for c in &circles {
            if c.len() < 3 {
                return Err(bad(format!("object circle {c:?} has fewer than 3 points")));
            }
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                if a >= x.vertex_count() || b >= x.vertex_count() {
                    return Err(Error::Malformed(format!("object circle {c:?} leaves the complex")));
                }
                if a != b && !x.contains(&Simplex::new(vec![a, b])?) {
                    return Err(bad(format!(
                        "object circle {c:?} jumps between non-adjacent vertices {a} and {b}"
                    )));
                }
            }
        }
        Ok(XObject { circles })
    }

    pub fn empty() -> Self {
        XObject { circles: Vec::new() }
    }

    pub fn circles(&self) -> &[Vec<usize>] {
        &self.circles
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// `γ_*` of the standard fundamental cycle of the circles.
    pub fn canonical_cycle(&self) -> Chain {
        self.circles
            .iter()
            .fold(Chain::zero(1), |acc, c| acc.add(&circle_cycle(c)))
    }

    pub fn disjoint_union(&self, other: &XObject) -> XObject {
        let mut circles = self.circles.clone();
        circles.extend(other.circles.iter().cloned());
        XObject { circles }
    }

    /// The standard model `S_m` (circle `j` on consecutive vertex ids), its
    /// map into `x`, and its fundamental cycle.
    pub fn model(&self, x: &Arc<SimplicialComplex>) -> Result<(SimplicialMap, Chain)> {
        let mut edges = Vec::new();
        let mut images = Vec::new();
        let mut cycle = Chain::zero(1);
        for c in &self.circles {
            let base = images.len();
            let n = c.len();
            let ring: Vec<usize> = (base..base + n).collect();
            for i in 0..n {
                edges.push(vec![ring[i], ring[(i + 1) % n]]);
            }
            images.extend(c.iter().copied());
            cycle = cycle.add(&circle_cycle(&ring));
        }
        let s = Arc::new(SimplicialComplex::new(images.len(), &edges)?);
        Ok((SimplicialMap::new(s, x.clone(), images)?, cycle))
    }
}

/// A surface with a simplicial map into the base complex.
#[derive(Clone, Debug)]
pub struct XSurface {
    surface: Surface,
    map: SimplicialMap,
}

impl PartialEq for XSurface {
    fn eq(&self, other: &Self) -> bool {
        self.surface == other.surface
            && self.map.vertex_map() == other.map.vertex_map()
            && *self.map.codomain() == *other.map.codomain()
    }
}

impl XSurface {
    pub fn new(surface: Surface, map: SimplicialMap) -> Result<Self> {
        if **map.domain() != *surface.complex {
            return Err(Error::DomainMismatch(
                "map domain is not the surface complex".into(),
            ));
        }
        Ok(XSurface { surface, map })
    }

    pub fn empty(x: &Arc<SimplicialComplex>) -> Self {
        let surface = Surface::empty();
        let map = SimplicialMap::new(surface.complex.clone(), x.clone(), Vec::new())
            .expect("empty map");
        XSurface { surface, map }
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        self.map.codomain()
    }

    pub fn is_closed(&self) -> bool {
        self.surface.is_closed()
    }

    /// `g_*` of the (relative) fundamental cycle.
    pub fn pushforward(&self) -> Chain {
        self.map
            .push_forward(&self.surface.cycle)
            .expect("cycle lives on the surface")
    }

    fn object_of(&self, circles: &[Vec<usize>]) -> XObject {
        XObject {
            circles: circles
                .iter()
                .map(|c| c.iter().map(|&v| self.map.image_of_vertex(v)).collect())
                .collect(),
        }
    }

    pub fn input_object(&self) -> XObject {
        self.object_of(&self.surface.inputs)
    }

    pub fn output_object(&self) -> XObject {
        self.object_of(&self.surface.outputs)
    }

    /// Opposite orientation: cycle negated, inputs and outputs exchanged.
    pub fn reverse(&self) -> XSurface {
        let s = Surface {
            complex: self.surface.complex.clone(),
            inputs: self.surface.outputs.clone(),
            outputs: self.surface.inputs.clone(),
            cycle: self.surface.cycle.neg(),
        };
        XSurface {
            surface: s,
            map: self.map.clone(),
        }
    }

    pub fn disjoint_union(&self, other: &XSurface) -> Result<XSurface> {
        same_target(self, other)?;
        let mut soup = Soup::from_xsurface(self);
        let off = soup.append(&Soup::from_xsurface(other));
        let _ = off;
        Ok(soup.build(self.target())?.0)
    }

    /// Glues the outputs of `self` to the inputs of `next`, circle by
    /// circle and vertex by vertex. If neither side is collared along the
    /// interface an identity cylinder is inserted first.
    pub fn glue(&self, next: &XSurface) -> Result<XSurface> {
        same_target(self, next)?;
        let out = self.output_object();
        let inp = next.input_object();
        if out != inp {
            return Err(Error::Gluing(describe_mismatch(&out, &inp)));
        }
        if !self.surface.is_collared(&self.surface.outputs)
            && !next.surface.is_collared(&next.surface.inputs)
        {
            let collar = identity_cylinder(self.target(), &out)?;
            return self.glue(&collar)?.glue(next);
        }
        let mut soup = Soup::from_xsurface(self);
        let mut other = Soup::from_xsurface(next);
        let off = soup.images.len();
        let mut ident: HashMap<usize, usize> = HashMap::new();
        for (c_out, c_in) in self.surface.outputs.iter().zip(&next.surface.inputs) {
            for (&a, &b) in c_out.iter().zip(c_in) {
                ident.insert(b, a);
            }
        }
        other.relabel(|v| ident.get(&v).copied().unwrap_or(v + off));
        soup.images.extend(next.map.vertex_map().iter().copied());
        soup.tris.extend(other.tris);
        soup.outputs = other.outputs;
        soup.build(self.target())
            .map(|r| r.0)
            .map_err(|e| Error::Gluing(format!("glued surface is invalid: {e}")))
    }

    /// Closes an endomorphism by gluing its outputs to its inputs.
    pub fn close_up(&self) -> Result<XSurface> {
        let inp = self.input_object();
        let out = self.output_object();
        if inp != out {
            return Err(Error::Gluing(format!(
                "closing up needs matching ends: {}",
                describe_mismatch(&out, &inp)
            )));
        }
        let collar = identity_cylinder(self.target(), &out)?;
        let h = self.glue(&collar)?;
        let mut soup = Soup::from_xsurface(&h);
        let mut ident = HashMap::new();
        for (c_out, c_in) in h.surface.outputs.iter().zip(&h.surface.inputs) {
            for (&a, &b) in c_out.iter().zip(c_in) {
                ident.insert(a, b);
            }
        }
        soup.relabel(|v| ident.get(&v).copied().unwrap_or(v));
        soup.inputs.clear();
        soup.outputs.clear();
        soup.build(self.target())
            .map(|r| r.0)
            .map_err(|e| Error::Gluing(format!("closed-up surface is invalid: {e}")))
    }

    /// Boundary-circle lengths, Euler characteristic, components, genus.
    pub fn census(&self) -> SurfaceCensus {
        SurfaceCensus {
            vertices: self.surface.complex.vertex_count(),
            edges: self.surface.complex.count(1),
            triangles: self.surface.complex.count(2),
            euler_characteristic: self.surface.euler_characteristic(),
            components: self.surface.component_count(),
            genus: self.surface.genus(),
            input_lengths: self.surface.inputs.iter().map(Vec::len).collect(),
            output_lengths: self.surface.outputs.iter().map(Vec::len).collect(),
        }
    }
}

fn same_target(a: &XSurface, b: &XSurface) -> Result<()> {
    if !Arc::ptr_eq(a.target(), b.target()) && **a.target() != **b.target() {
        return Err(Error::DomainMismatch("surfaces map into different complexes".into()));
    }
    Ok(())
}

fn describe_mismatch(out: &XObject, inp: &XObject) -> String {
    if out.circles.len() != inp.circles.len() {
        return format!(
            "{} output circles against {} input circles",
            out.circles.len(),
            inp.circles.len()
        );
    }
    for (j, (a, b)) in out.circles.iter().zip(&inp.circles).enumerate() {
        if a != b {
            return format!("circle {j} maps to {a:?} on one side and {b:?} on the other");
        }
    }
    "objects differ".into()
}

/// Summary invariants of a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCensus {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub euler_characteristic: i64,
    pub components: usize,
    pub genus: Option<i64>,
    pub input_lengths: Vec<usize>,
    pub output_lengths: Vec<usize>,
}

/// Oriented triangles over vertex ids with one image per vertex; the
/// working form of every surface construction.
#[derive(Clone, Debug, Default)]
struct Soup {
    tris: Vec<[usize; 3]>,
    images: Vec<usize>,
    inputs: Vec<Vec<usize>>,
    outputs: Vec<Vec<usize>>,
}

impl Soup {
    fn from_xsurface(g: &XSurface) -> Soup {
        Soup {
            tris: g.surface.oriented_triangles(),
            images: g.map.vertex_map().to_vec(),
            inputs: g.surface.inputs.clone(),
            outputs: g.surface.outputs.clone(),
        }
    }

    fn add_vertex(&mut self, image: usize) -> usize {
        self.images.push(image);
        self.images.len() - 1
    }

    fn add_row(&mut self, images: impl IntoIterator<Item = usize>) -> Vec<usize> {
        images.into_iter().map(|i| self.add_vertex(i)).collect()
    }

    /// Appends a disjoint copy; returns the vertex offset.
    fn append(&mut self, other: &Soup) -> usize {
        let off = self.images.len();
        self.images.extend(other.images.iter().copied());
        self.tris
            .extend(other.tris.iter().map(|t| [t[0] + off, t[1] + off, t[2] + off]));
        let shift = |cs: &[Vec<usize>]| -> Vec<Vec<usize>> {
            cs.iter()
                .map(|c| c.iter().map(|v| v + off).collect())
                .collect()
        };
        self.inputs.extend(shift(&other.inputs));
        self.outputs.extend(shift(&other.outputs));
        off
    }

    fn relabel(&mut self, f: impl Fn(usize) -> usize) {
        for t in &mut self.tris {
            for v in t.iter_mut() {
                *v = f(*v);
            }
        }
        for c in self.inputs.iter_mut().chain(self.outputs.iter_mut()) {
            for v in c.iter_mut() {
                *v = f(*v);
            }
        }
    }

    /// Strip between two rows of equal length: `∂ = lower − upper`.
    fn prism(&mut self, lower: &[usize], upper: &[usize]) -> Vec<[usize; 3]> {
        let n = lower.len();
        let mut added = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            added.push([lower[i], lower[j], upper[j]]);
            added.push([lower[i], upper[j], upper[i]]);
        }
        self.tris.extend(&added);
        added
    }

    /// Strip between rows of possibly different lengths, advancing along
    /// the lower row first and the upper row last: `∂ = lower − upper`.
    fn zipper(&mut self, lower: &[usize], upper: &[usize]) -> Vec<[usize; 3]> {
        let (n, m) = (lower.len(), upper.len());
        let mut steps = vec![true];
        // interior steps: n − 1 lower advances, m − 1 upper advances
        let (np, nq) = (n - 1, m - 1);
        let (mut a, mut b) = (0usize, 0usize);
        while a < np || b < nq {
            let lower_next = b == nq || (a < np && (2 * a + 1) * nq <= (2 * b + 1) * np);
            steps.push(lower_next);
            if lower_next {
                a += 1;
            } else {
                b += 1;
            }
        }
        steps.push(false);
        let (mut i, mut j) = (0usize, 0usize);
        let mut added = Vec::new();
        for advance_lower in steps {
            if advance_lower {
                added.push([lower[i % n], lower[(i + 1) % n], upper[j % m]]);
                i += 1;
            } else {
                added.push([lower[i % n], upper[(j + 1) % m], upper[j % m]]);
                j += 1;
            }
        }
        self.tris.extend(&added);
        added
    }

    /// Cone over a circle: `∂ = circle`.
    fn cone(&mut self, circle: &[usize], apex: usize) -> Vec<[usize; 3]> {
        let n = circle.len();
        let added: Vec<[usize; 3]> = (0..n)
            .map(|i| [circle[i], circle[(i + 1) % n], apex])
            .collect();
        self.tris.extend(&added);
        added
    }

    /// Drops unused vertices, validates, and returns the surface together
    /// with the old-to-new vertex renumbering.
    fn build(self, x: &Arc<SimplicialComplex>) -> Result<(XSurface, Vec<Option<usize>>)> {
        let mut used = vec![false; self.images.len()];
        for t in &self.tris {
            for &v in t {
                used[v] = true;
            }
        }
        for c in self.inputs.iter().chain(&self.outputs) {
            for &v in c {
                used[v] = true;
            }
        }
        let mut renumber = vec![None; self.images.len()];
        let mut images = Vec::new();
        for (v, &u) in used.iter().enumerate() {
            if u {
                renumber[v] = Some(images.len());
                images.push(self.images[v]);
            }
        }
        let r = |v: usize| renumber[v].expect("used vertex");
        let mut seen = BTreeSet::new();
        let mut maximal = Vec::with_capacity(self.tris.len());
        let mut cycle = Chain::zero(2);
        for t in &self.tris {
            let tv = [r(t[0]), r(t[1]), r(t[2])];
            let s = Simplex::new(tv.to_vec())
                .map_err(|_| bad(format!("degenerate triangle {tv:?}")))?;
            if !seen.insert(s.clone()) {
                return Err(bad(format!("triangle {:?} occurs twice", s.vertices())));
            }
            maximal.push(s.vertices().to_vec());
            cycle = cycle.add(&Chain::oriented(&tv));
        }
        let remap = |cs: &[Vec<usize>]| -> Vec<Vec<usize>> {
            cs.iter().map(|c| c.iter().map(|&v| r(v)).collect()).collect()
        };
        let complex = Arc::new(SimplicialComplex::new(images.len(), &maximal)?);
        let surface = Surface::new(
            complex.clone(),
            remap(&self.inputs),
            remap(&self.outputs),
            cycle,
        )?;
        let map = SimplicialMap::new(complex, x.clone(), images)?;
        Ok((XSurface { surface, map }, renumber))
    }
}

/// The cylinder `S_m × [0, 1]` over an object, mapped through the
/// projection to the circles. Three rows per circle, so both ends are
/// collared. Inputs are the bottom rows, outputs the top rows.
pub fn identity_cylinder(x: &Arc<SimplicialComplex>, obj: &XObject) -> Result<XSurface> {
    XObject::new(x, obj.circles.clone())?;
    let mut soup = Soup::default();
    let mut tops = Vec::new();
    for c in &obj.circles {
        let bottom = soup.add_row(c.iter().copied());
        let middle = soup.add_row(c.iter().copied());
        let top = soup.add_row(c.iter().copied());
        soup.prism(&bottom, &middle);
        soup.prism(&middle, &top);
        soup.inputs.push(bottom);
        tops.push(top);
    }
    soup.outputs = tops;
    Ok(soup.build(x)?.0)
}

/// The symmetry `a ⊔ b → b ⊔ a`: an identity cylinder whose output
/// circles are listed in swapped order.
pub fn swap_cylinder(x: &Arc<SimplicialComplex>, a: &XObject, b: &XObject) -> Result<XSurface> {
    let cyl = identity_cylinder(x, &a.disjoint_union(b))?;
    let k = a.circles.len();
    let mut soup = Soup::from_xsurface(&cyl);
    let (first, second) = soup.outputs.split_at(k);
    soup.outputs = second.iter().chain(first).cloned().collect();
    Ok(soup.build(x)?.0)
}

/// A vertex `w` with `{γᵢ, γᵢ₊₁, w}` a simplex for every `i`.
fn cone_image(x: &SimplicialComplex, c: &[usize]) -> Option<usize> {
    let mut candidates: Vec<usize> = c.to_vec();
    candidates.extend(0..x.vertex_count());
    candidates.into_iter().find(|&w| {
        (0..c.len()).all(|i| {
            let mut s = vec![c[i], c[(i + 1) % c.len()], w];
            s.sort_unstable();
            s.dedup();
            Simplex::new(s).is_ok_and(|s| x.contains(&s))
        })
    })
}

/// Disks capping every circle of the object: a cobordism `obj → ∅`.
pub fn caps(x: &Arc<SimplicialComplex>, obj: &XObject) -> Result<XSurface> {
    XObject::new(x, obj.circles.clone())?;
    let mut soup = Soup::default();
    for c in &obj.circles {
        let apex_image = cone_image(x, c)
            .ok_or_else(|| bad(format!("circle {c:?} bounds no cone in the complex")))?;
        let row = soup.add_row(c.iter().copied());
        let apex = soup.add_vertex(apex_image);
        soup.cone(&row, apex);
        soup.inputs.push(row);
    }
    Ok(soup.build(x)?.0)
}

/// Disks filling every circle of the object: a cobordism `∅ → obj`.
pub fn cups(x: &Arc<SimplicialComplex>, obj: &XObject) -> Result<XSurface> {
    Ok(caps(x, obj)?.reverse())
}

/// The boundary of a tetrahedron, mapped to the single vertex `v`.
pub fn constant_sphere(x: &Arc<SimplicialComplex>, v: usize) -> Result<XSurface> {
    if v >= x.vertex_count() {
        return Err(Error::Malformed(format!("vertex {v} is not in the complex")));
    }
    let soup = Soup {
        tris: vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]],
        images: vec![v; 4],
        ..Soup::default()
    };
    Ok(soup.build(x)?.0)
}

/// Where a local surgery happens: two disjoint disks, or one annulus,
/// each given by its triangles and mapped to a single vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurgerySite {
    TwoDisks { first: Vec<Simplex>, second: Vec<Simplex> },
    Annulus { triangles: Vec<Simplex> },
}

fn site_err(msg: String) -> Error {
    Error::InvalidSite(msg)
}

/// Oriented boundary circles of `Σ cycle_coeff · σ` over the given
/// triangles, each as `[v₀, v₁, …]` with the boundary equal to the sum of
/// their circle cycles.
fn oriented_boundary_circles(g: &XSurface, tris: &[Simplex]) -> Result<Vec<Vec<usize>>> {
    let mut d = Chain::zero(2);
    for t in tris {
        d.add_term(t.clone(), g.surface.cycle.coefficient(t));
    }
    let b = d.boundary()?;
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    let mut indeg: BTreeMap<usize, usize> = BTreeMap::new();
    for (e, c) in b.terms() {
        let (u, v) = (e.vertices()[0], e.vertices()[1]);
        let (from, to) = match c {
            1 => (u, v),
            -1 => (v, u),
            _ => return Err(site_err(format!("site boundary has multiplicity {c} on edge {e:?}"))),
        };
        if next.insert(from, to).is_some() {
            return Err(site_err(format!("site boundary is pinched at vertex {from}")));
        }
        *indeg.entry(to).or_default() += 1;
    }
    if indeg.values().any(|&d| d != 1) || indeg.len() != next.len() {
        return Err(site_err("site boundary is not a union of simple circles".into()));
    }
    let mut circles = Vec::new();
    let mut seen = BTreeSet::new();
    for &start in next.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut c = vec![start];
        seen.insert(start);
        let mut v = next[&start];
        while v != start {
            c.push(v);
            seen.insert(v);
            v = next[&v];
        }
        circles.push(c);
    }
    Ok(circles)
}

/// Checks a site piece and returns its oriented boundary circles and the
/// common image vertex.
fn check_piece(
    g: &XSurface,
    tris: &[Simplex],
    want_circles: usize,
    want_euler: i64,
    what: &str,
) -> Result<(Vec<Vec<usize>>, usize)> {
    let surf = &g.surface;
    if tris.is_empty() {
        return Err(site_err(format!("{what} has no triangles")));
    }
    let set: BTreeSet<&Simplex> = tris.iter().collect();
    if set.len() != tris.len() {
        return Err(site_err(format!("{what} lists a triangle twice")));
    }
    for t in tris {
        if t.dim() != 2 || !surf.complex.contains(t) {
            return Err(site_err(format!("{what}: {t:?} is not a triangle of the surface")));
        }
    }
    let verts: BTreeSet<usize> = tris.iter().flat_map(|t| t.vertices().iter().copied()).collect();
    let images: BTreeSet<usize> = verts.iter().map(|&v| g.map.image_of_vertex(v)).collect();
    if images.len() != 1 {
        return Err(site_err(format!(
            "{what} is not mapped to a single point (images {images:?})"
        )));
    }
    let boundary_circles: BTreeSet<usize> = surf.inputs.iter().chain(&surf.outputs).flatten().copied().collect();
    if let Some(v) = verts.iter().find(|v| boundary_circles.contains(v)) {
        return Err(site_err(format!("{what} touches the boundary circle vertex {v}")));
    }
    let circles = oriented_boundary_circles(g, tris)?;
    if circles.len() != want_circles {
        return Err(site_err(format!(
            "{what} has {} boundary circles, expected {want_circles}",
            circles.len()
        )));
    }
    let on_boundary: BTreeSet<usize> = circles.iter().flatten().copied().collect();
    for &v in &verts {
        if on_boundary.contains(&v) {
            continue;
        }
        let outside = surf
            .complex
            .simplices(2)
            .iter()
            .any(|t| t.vertices().contains(&v) && !set.contains(t));
        if outside {
            return Err(site_err(format!("{what} is not a neighbourhood of its interior vertex {v}")));
        }
    }
    let mut edges = BTreeSet::new();
    for t in tris {
        let v = t.vertices();
        edges.insert((v[0], v[1]));
        edges.insert((v[0], v[2]));
        edges.insert((v[1], v[2]));
    }
    let euler = verts.len() as i64 - edges.len() as i64 + tris.len() as i64;
    if euler != want_euler {
        return Err(site_err(format!("{what} has Euler characteristic {euler}, expected {want_euler}")));
    }
    let vlist: Vec<usize> = verts.iter().copied().collect();
    let pos = |v: usize| vlist.binary_search(&v).expect("site vertex");
    let mut uf = UnionFind::new(vlist.len());
    for (a, b) in &edges {
        uf.union(pos(*a), pos(*b));
    }
    let root = uf.find(0);
    if (0..vlist.len()).any(|i| uf.find(i) != root) {
        return Err(site_err(format!("{what} is not connected")));
    }
    Ok((circles, *images.iter().next().expect("one image")))
}

/// Replaces two point-mapped disks by a point-mapped annulus with the
/// same boundary circles, or an annulus by two disks.
pub fn local_surgery(g: &XSurface, site: &SurgerySite) -> Result<XSurface> {
    Ok(local_surgery_with_inverse(g, site)?.0)
}

/// [`local_surgery`] together with the site that undoes it.
pub fn local_surgery_with_inverse(
    g: &XSurface,
    site: &SurgerySite,
) -> Result<(XSurface, SurgerySite)> {
    let mut soup = Soup::from_xsurface(g);
    let remove: BTreeSet<Simplex>;
    let added: Vec<Vec<[usize; 3]>>;
    let annulus_out: bool;
    match site {
        SurgerySite::TwoDisks { first, second } => {
            let (c1, x1) = check_piece(g, first, 1, 1, "first disk")?;
            let (c2, x2) = check_piece(g, second, 1, 1, "second disk")?;
            if x1 != x2 {
                return Err(site_err(format!("disks map to different points {x1} and {x2}")));
            }
            let v1: BTreeSet<usize> = first.iter().flat_map(|t| t.vertices().iter().copied()).collect();
            if second.iter().flat_map(|t| t.vertices()).any(|v| v1.contains(v)) {
                return Err(site_err("the two disks share a vertex".into()));
            }
            remove = first.iter().chain(second).cloned().collect();
            let p = &c1[0];
            let q_rev: Vec<usize> = c2[0].iter().rev().copied().collect();
            let pn = soup.add_row(std::iter::repeat(x1).take(p.len()));
            let qn = soup.add_row(std::iter::repeat(x1).take(q_rev.len()));
            let mut all = soup.prism(p, &pn);
            all.extend(soup.zipper(&pn, &qn));
            all.extend(soup.prism(&qn, &q_rev));
            added = vec![all];
            annulus_out = true;
        }
        SurgerySite::Annulus { triangles } => {
            let (circles, x0) = check_piece(g, triangles, 2, 0, "annulus")?;
            remove = triangles.iter().cloned().collect();
            let mut pieces = Vec::new();
            for c in &circles {
                let apex = soup.add_vertex(x0);
                pieces.push(soup.cone(c, apex));
            }
            added = pieces;
            annulus_out = false;
        }
    }
    let new_tris: BTreeSet<[usize; 3]> = added.iter().flatten().copied().collect();
    soup.tris.retain(|t| {
        new_tris.contains(t) || {
            let mut s = t.to_vec();
            s.sort_unstable();
            !remove.contains(&Simplex::new(s).expect("triangle"))
        }
    });
    let (h, renumber) = soup.build(g.target())?;
    let to_simplices = |tris: &Vec<[usize; 3]>| -> Vec<Simplex> {
        tris.iter()
            .map(|t| {
                Simplex::new(t.iter().map(|&v| renumber[v].expect("kept")).collect())
                    .expect("triangle")
            })
            .collect()
    };
    let inverse = if annulus_out {
        SurgerySite::Annulus {
            triangles: to_simplices(&added[0]),
        }
    } else {
        SurgerySite::TwoDisks {
            first: to_simplices(&added[0]),
            second: to_simplices(&added[1]),
        }
    };
    Ok((h, inverse))
}

/// Subdivides one triangle `[a, b, c]` so that it contains a small disk
/// mapped to `image`, one of the images of its corners. The pushforward
/// is unchanged. Returns the new surface and the disk's triangles.
pub fn plant_constant_disk(
    g: &XSurface,
    triangle: &Simplex,
    image: usize,
) -> Result<(XSurface, Vec<Simplex>)> {
    let mut soup = Soup::from_xsurface(g);
    let pos = soup
        .tris
        .iter()
        .position(|t| {
            let mut s = t.to_vec();
            s.sort_unstable();
            s == triangle.vertices()
        })
        .ok_or_else(|| site_err(format!("{triangle:?} is not a triangle of the surface")))?;
    let [a, b, c] = soup.tris.swap_remove(pos);
    if ![a, b, c].iter().any(|&v| soup.images[v] == image) {
        return Err(site_err(format!("no corner of {triangle:?} maps to {image}")));
    }
    let r = soup.add_row([image; 3]);
    let z = soup.add_vertex(image);
    let (r0, r1, r2) = (r[0], r[1], r[2]);
    soup.tris.extend([
        [a, b, r1],
        [a, r1, r0],
        [b, c, r2],
        [b, r2, r1],
        [c, a, r0],
        [c, r0, r2],
    ]);
    let inner = soup.cone(&r, z);
    let (h, renumber) = soup.build(g.target())?;
    let disk = inner
        .iter()
        .map(|t| Simplex::new(t.iter().map(|&v| renumber[v].expect("kept")).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok((h, disk))
}

/// A closed mapped surface whose fundamental cycle pushes forward to
/// exactly `y`.
///
/// Each triangle of `y` is taken `|coefficient|` times with the matching
/// orientation; every directed edge occurrence `p → q` is paired with an
/// occurrence `q → p` (greedily, in order); corners glued across paired
/// edges become one vertex. Corners around a vertex then form a single
/// cycle, so links are circles. When the result is not simplicial it is
/// barycentrically subdivided, new vertices going to the least image
/// vertex of their carrier.
pub fn surface_from_cycle(x: &Arc<SimplicialComplex>, y: &Chain) -> Result<XSurface> {
    if y.dim() != 2 {
        return Err(Error::Dimension(format!("surface_from_cycle needs a 2-chain, got degree {}", y.dim())));
    }
    y.check_in(x)?;
    if !y.boundary()?.is_zero() {
        return Err(Error::NotACycle("the 2-chain has non-zero boundary".into()));
    }
    if y.is_zero() {
        return Ok(XSurface::empty(x));
    }
    let mut copies: Vec<[usize; 3]> = Vec::new();
    for (s, c) in y.terms() {
        let v = s.vertices();
        let t = if c > 0 { [v[0], v[1], v[2]] } else { [v[0], v[2], v[1]] };
        for _ in 0..c.unsigned_abs() {
            copies.push(t);
        }
    }
    // directed edge occurrences: (copy, slot) with slot k = t[k] → t[k+1]
    let mut by_edge: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (i, t) in copies.iter().enumerate() {
        for k in 0..3 {
            by_edge.entry((t[k], t[(k + 1) % 3])).or_default().push((i, k));
        }
    }
    let corner = |i: usize, k: usize| 3 * i + k;
    let mut uf = UnionFind::new(3 * copies.len());
    // glued edge id per (copy, slot)
    let mut edge_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut glued = 0usize;
    for (&(p, q), occ) in &by_edge {
        if p > q {
            continue;
        }
        let opp = by_edge.get(&(q, p)).map(Vec::as_slice).unwrap_or(&[]);
        if opp.len() != occ.len() {
            return Err(Error::Internal(format!("edge [{p}, {q}] cannot be paired")));
        }
        for (&(i, k), &(j, l)) in occ.iter().zip(opp) {
            // copy i: t[k] = p, t[k+1] = q; copy j: t[l] = q, t[l+1] = p
            uf.union(corner(i, k), corner(j, (l + 1) % 3));
            uf.union(corner(i, (k + 1) % 3), corner(j, l));
            edge_id.insert((i, k), glued);
            edge_id.insert((j, l), glued);
            glued += 1;
        }
    }
    let mut vid: HashMap<usize, usize> = HashMap::new();
    let mut images = Vec::new();
    let mut tris = Vec::with_capacity(copies.len());
    for (i, t) in copies.iter().enumerate() {
        let mut tv = [0usize; 3];
        for k in 0..3 {
            let r = uf.find(corner(i, k));
            let next = images.len();
            let v = *vid.entry(r).or_insert(next);
            if v == next {
                images.push(t[k]);
            }
            tv[k] = v;
        }
        tris.push(tv);
    }
    let distinct_edges: BTreeSet<(usize, usize)> = tris
        .iter()
        .flat_map(|t| (0..3).map(move |k| edge_key(t[k], t[(k + 1) % 3])))
        .collect();
    let distinct_tris: BTreeSet<[usize; 3]> = tris
        .iter()
        .map(|t| {
            let mut s = *t;
            s.sort_unstable();
            s
        })
        .collect();
    let simplicial = distinct_edges.len() == glued && distinct_tris.len() == tris.len();
    let soup = if simplicial {
        Soup {
            tris,
            images,
            ..Soup::default()
        }
    } else {
        let edges: Vec<[usize; 3]> = (0..copies.len())
            .map(|i| [edge_id[&(i, 0)], edge_id[&(i, 1)], edge_id[&(i, 2)]])
            .collect();
        subdivide(&tris, &edges, glued, &images)
    };
    let g = soup.build(x)?.0;
    if g.pushforward() != *y {
        return Err(Error::Internal("surface pushforward differs from the cycle".into()));
    }
    Ok(g)
}

/// Barycentric subdivision of closed triangle data. `edges[i][k]` is the
/// id of the edge `t[k] → t[k+1]` of triangle `i`.
fn subdivide(tris: &[[usize; 3]], edges: &[[usize; 3]], edge_count: usize, images: &[usize]) -> Soup {
    let mut soup = Soup {
        images: images.to_vec(),
        ..Soup::default()
    };
    let mut mid: Vec<Option<usize>> = vec![None; edge_count];
    for (t, e) in tris.iter().zip(edges) {
        let img_min = t.iter().map(|&v| images[v]).min().expect("three corners");
        let f = soup.add_vertex(img_min);
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let m = match mid[e[k]] {
                Some(m) => m,
                None => {
                    let m = soup.add_vertex(images[a].min(images[b]));
                    mid[e[k]] = Some(m);
                    m
                }
            };
            soup.tris.push([a, m, f]);
            soup.tris.push([m, b, f]);
        }
    }
    soup
}

/// Barycentric subdivision of a mapped surface with the least-vertex
/// approximation of its map. Boundary circles are subdivided too, so
/// their length doubles.
pub fn barycentric_subdivision(g: &XSurface) -> Result<XSurface> {
    let tris = g.surface.oriented_triangles();
    let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges = Vec::with_capacity(tris.len());
    for t in &tris {
        let mut e = [0usize; 3];
        for k in 0..3 {
            let key = edge_key(t[k], t[(k + 1) % 3]);
            let next = ids.len();
            e[k] = *ids.entry(key).or_insert(next);
        }
        edges.push(e);
    }
    let images = g.map.vertex_map();
    let mut soup = subdivide(&tris, &edges, ids.len(), images);
    // midpoints were created in first-use order; recover them from the triangles
    let mut midpoint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for st in soup.tris.chunks(2) {
        // [a, m, f], [m, b, f]
        let (a, m, b) = (st[0][0], st[0][1], st[1][1]);
        midpoint.insert(edge_key(a, b), m);
    }
    let refine = |cs: &[Vec<usize>]| -> Vec<Vec<usize>> {
        cs.iter()
            .map(|c| {
                let n = c.len();
                (0..n)
                    .flat_map(|i| [c[i], midpoint[&edge_key(c[i], c[(i + 1) % n])]])
                    .collect()
            })
            .collect()
    };
    soup.inputs = refine(&g.surface.inputs);
    soup.outputs = refine(&g.surface.outputs);
    Ok(soup.build(g.target())?.0)
}

/// A second relative fundamental cycle of `g`, computed on its
/// barycentric subdivision by integer solving, and pushed into the base.
///
/// Components with boundary have a unique relative cycle; each closed
/// component is pinned by the orientation of one triangle.
pub fn independent_pushforward(g: &XSurface) -> Result<Chain> {
    let sd = barycentric_subdivision(g)?;
    let s = &sd.surface;
    let cx = &s.complex;
    if cx.count(2) == 0 {
        return Ok(Chain::zero(2));
    }
    let d2 = cx.boundary_matrix(2)?;
    let mut target = Chain::zero(1);
    for c in &s.inputs {
        target = target.add(&circle_cycle(c));
    }
    for c in &s.outputs {
        target = target.sub(&circle_cycle(c));
    }
    let mut rows: Vec<Vec<BigInt>> = (0..d2.rows()).map(|i| d2.row(i).to_vec()).collect();
    let mut rhs = target.to_vector(cx)?;
    let comps = s.vertex_components();
    let mut has_boundary = vec![false; comps.iter().max().map_or(0, |m| m + 1)];
    for c in s.inputs.iter().chain(&s.outputs) {
        has_boundary[comps[c[0]]] = true;
    }
    let mut pinned = vec![false; has_boundary.len()];
    for (j, t) in cx.simplices(2).iter().enumerate() {
        let comp = comps[t.vertices()[0]];
        if has_boundary[comp] || pinned[comp] {
            continue;
        }
        pinned[comp] = true;
        let mut row = vec![BigInt::zero(); d2.cols()];
        row[j] = BigInt::from(1);
        rows.push(row);
        rhs.push(BigInt::from(s.cycle.coefficient(t)));
    }
    let a = IntMatrix::from_columns(rows.len(), &transpose(&rows, d2.cols()))?;
    let sol = IntSolver::new(&a)
        .solve(&rhs)?
        .ok_or_else(|| Error::Internal("no relative cycle on the subdivision".into()))?;
    let c = Chain::from_vector(cx, 2, &sol)?;
    sd.map.push_forward(&c)
}

fn transpose(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Builds a mapped surface from oriented triangles over vertices
/// `0..images.len()`, with boundary circles.
pub fn xsurface_from_triangles(
    x: &Arc<SimplicialComplex>,
    triangles: Vec<[usize; 3]>,
    images: Vec<usize>,
    inputs: Vec<Vec<usize>>,
    outputs: Vec<Vec<usize>>,
) -> Result<XSurface> {
    if let Some(&v) = triangles.iter().flatten().chain(inputs.iter().flatten()).chain(outputs.iter().flatten()).find(|&&v| v >= images.len()) {
        return Err(Error::Malformed(format!("vertex {v} has no image")));
    }
    let soup = Soup {
        tris: triangles,
        images,
        inputs,
        outputs,
    };
    Ok(soup.build(x)?.0)
}
