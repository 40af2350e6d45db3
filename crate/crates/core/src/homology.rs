//! Integral homology with explicit generators, coefficient-valued cochains,
//! coboundary witnesses, degree-2 class enumeration and the splitting of
//! a 2-cocycle into its Hom and Ext parts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::{
    ext_group, hom_values, CoeffElement, CoeffGroup, ExtClass, FgAbGroup, GroupHom,
};
use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix, IntSolver, SmithDecomposition};

/// `H_k(X; ℤ)` with one cycle per generator.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    degree: usize,
    group: FgAbGroup,
    generators: Vec<Chain>,
    /// For torsion generator `i` of order `dᵢ`: a chain `w` with
    /// `∂w = dᵢ·generatorᵢ`.
    torsion_witnesses: Vec<Chain>,
    /// Reads cycle coordinates: `class = reader · (V⁻¹ z)[rank..]`.
    cycle_rank: usize,
    v_inv: IntMatrix,
    reader: IntMatrix,
    /// Index into `reader` rows of each generator.
    reader_rows: Vec<usize>,
    chain_count: usize,
}

impl HomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Chain] {
        &self.generators
    }

    pub fn torsion_witnesses(&self) -> &[Chain] {
        &self.torsion_witnesses
    }

    /// Coordinates of the class of a cycle against [`Self::generators`],
    /// torsion coordinates reduced.
    pub fn class_of(&self, x: &SimplicialComplex, z: &Chain) -> Result<Vec<BigInt>> {
        if z.dim() != self.degree {
            return Err(Error::Dimension(format!(
                "{}-chain given to degree-{} homology",
                z.dim(),
                self.degree
            )));
        }
        if self.degree > 0 && !z.boundary()?.is_zero() {
            return Err(Error::NotACycle(format!("{z:?} has non-zero boundary")));
        }
        let v = z.to_vector(x)?;
        if v.len() != self.chain_count {
            return Err(Error::DomainMismatch("chain from another complex".into()));
        }
        let full = self.v_inv.mul_vec(&v)?;
        let y = &full[self.cycle_rank..];
        let y2 = self.reader.mul_vec(y)?;
        let coords = self.reader_rows.iter().map(|&r| y2[r].clone()).collect();
        Ok(self.group.normalize(coords))
    }

    /// A cycle representing the given class.
    pub fn cycle_of(&self, class: &[BigInt]) -> Result<Chain> {
        let mut c = Chain::zero(self.degree);
        for (g, k) in self.generators.iter().zip(class) {
            let k = k
                .to_i64()
                .ok_or_else(|| Error::Overflow(format!("class coordinate {k}")))?;
            c = c.add_scaled(g, k);
        }
        Ok(c)
    }
}

/// `H_k(X; ℤ)` for `0 ≤ k ≤ dim X`.
pub fn homology(x: &SimplicialComplex, k: usize) -> Result<HomologyGroup> {
    if k > x.dim() {
        return Err(Error::Dimension(format!(
            "homology in degree {k} of a complex of dimension {}",
            x.dim()
        )));
    }
    let n = x.count(k);
    let d_k = x.boundary_matrix_or_zero(k);
    let d_next = x.boundary_matrix_or_zero(k + 1);

    // cycles: columns rank.. of V; coordinates from rows rank.. of V⁻¹
    let snf_k = smith_normal_form(&d_k);
    let r = snf_k.rank();
    let z_dim = n - r;
    let cycle_basis: Vec<Vec<BigInt>> = (r..n).map(|j| snf_k.v.column(j)).collect();

    let rel = snf_k.v_inv.select_rows(r..n).mul(&d_next)?;
    let snf_rel = smith_normal_form(&rel);
    let r2 = snf_rel.rank();

    let basis_col = |i: usize| -> Vec<BigInt> {
        // Z_k basis vector K · U₂⁻¹ eᵢ
        let coeffs = snf_rel.u_inv.column(i);
        let mut out = vec![BigInt::zero(); n];
        for (c, b) in coeffs.iter().zip(&cycle_basis) {
            if c.is_zero() {
                continue;
            }
            for (o, bj) in out.iter_mut().zip(b) {
                *o += c * bj;
            }
        }
        out
    };

    let mut factors = Vec::new();
    let mut generators = Vec::new();
    let mut witnesses = Vec::new();
    let mut reader_rows = Vec::new();
    for i in 0..r2 {
        let d = snf_rel.s.get(i, i).clone();
        if d.is_one() {
            continue;
        }
        generators.push(Chain::from_vector(x, k, &basis_col(i))?);
        witnesses.push(Chain::from_vector(x, k + 1, &snf_rel.v.column(i))?);
        factors.push(d);
        reader_rows.push(i);
    }
    for i in r2..z_dim {
        generators.push(Chain::from_vector(x, k, &basis_col(i))?);
        reader_rows.push(i);
    }
    let group = FgAbGroup::new(factors.clone(), z_dim - r2)?;

    // sparsify: adding boundaries keeps the class; witnesses follow
    let boundaries: Vec<Chain> = if k + 1 <= x.dim() {
        x.simplices(k + 1)
            .iter()
            .map(|s| Chain::from_terms(k + 1, [(s.clone(), 1)]).boundary())
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    for (i, g) in generators.iter_mut().enumerate() {
        let (reduced, shift) = reduce_by_boundaries(g, &boundaries, x.simplices(k + 1));
        if let Some(w) = witnesses.get_mut(i) {
            let d = factors[i].to_i64().ok_or_else(|| Error::Overflow("torsion order".into()))?;
            *w = w.add_scaled(&shift, d);
        }
        *g = reduced;
    }

    let h = HomologyGroup {
        degree: k,
        group,
        generators,
        torsion_witnesses: witnesses,
        cycle_rank: r,
        v_inv: snf_k.v_inv,
        reader: snf_rel.u,
        reader_rows,
        chain_count: n,
    };
    for (i, g) in h.generators.iter().enumerate() {
        if k > 0 && !g.boundary()?.is_zero() {
            return Err(Error::Internal(format!("generator {i} is not a cycle")));
        }
        if let Some(w) = h.torsion_witnesses.get(i) {
            let d = h.group.invariant_factors()[i].to_i64().unwrap_or(0);
            if w.boundary()? != g.scale(d) {
                return Err(Error::Internal(format!("torsion witness {i} is wrong")));
            }
        }
    }
    Ok(h)
}

/// Greedy L1 descent `z ↦ z ± ∂σ`. Returns the reduced chain and the
/// `(k+1)`-chain `b` with `reduced = z + ∂b`.
fn reduce_by_boundaries(z: &Chain, boundaries: &[Chain], cells: &[Simplex]) -> (Chain, Chain) {
    let mut z = z.clone();
    let mut shift = Chain::zero(z.dim() + 1);
    loop {
        let mut improved = false;
        for (b, cell) in boundaries.iter().zip(cells) {
            for s in [1i64, -1] {
                let delta: i64 = b
                    .terms()
                    .map(|(t, c)| {
                        let old = z.coefficient(t);
                        (old + s * c).abs() - old.abs()
                    })
                    .sum();
                if delta < 0 {
                    z = z.add_scaled(b, s);
                    shift.add_term(cell.clone(), s);
                    improved = true;
                }
            }
        }
        if !improved {
            return (z, shift);
        }
    }
}

/// Betti numbers `b₀ … b_dim`.
pub fn betti_numbers(x: &SimplicialComplex) -> Result<Vec<usize>> {
    (0..=x.dim()).map(|k| Ok(homology(x, k)?.group().rank())).collect()
}

/// Some `w` with `∂w = z`, or `None` when `z` is not a boundary.
pub fn is_boundary_with_witness(x: &SimplicialComplex, z: &Chain) -> Result<Option<Chain>> {
    z.check_in(x)?;
    let k = z.dim();
    if k > 0 && !z.boundary()?.is_zero() {
        return Err(Error::NotACycle(format!("{z:?} has non-zero boundary")));
    }
    if z.is_zero() {
        return Ok(Some(Chain::zero(k + 1)));
    }
    if k + 1 > x.dim() {
        return Ok(None);
    }
    let d = x.boundary_matrix(k + 1)?;
    match IntSolver::new(&d).solve(&z.to_vector(x)?)? {
        Some(w) => {
            let w = Chain::from_vector(x, k + 1, &w)?;
            debug_assert_eq!(w.boundary()?, *z);
            Ok(Some(w))
        }
        None => Ok(None),
    }
}

/// A `k`-cochain with values in a coefficient group, keyed by simplices in
/// increasing vertex order. Zero values are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    group: CoeffGroup,
    values: BTreeMap<Simplex, CoeffElement>,
}

impl Cochain {
    pub fn zero(degree: usize, group: &CoeffGroup) -> Self {
        Cochain {
            degree,
            group: group.clone(),
            values: BTreeMap::new(),
        }
    }

    /// Builds a cochain on `x`; every simplex must be a `degree`-simplex of
    /// `x` and every value an element of `group`.
    pub fn new(
        x: &SimplicialComplex,
        degree: usize,
        group: &CoeffGroup,
        values: impl IntoIterator<Item = (Simplex, CoeffElement)>,
    ) -> Result<Self> {
        let mut c = Cochain::zero(degree, group);
        for (s, v) in values {
            if s.dim() != degree {
                return Err(Error::Dimension(format!(
                    "{s:?} given to a degree-{degree} cochain"
                )));
            }
            if !x.contains(&s) {
                return Err(Error::DomainMismatch(format!("simplex {s:?} is not in the complex")));
            }
            let v = group.normalize(v)?;
            let sum = group.add(&c.value(&s), &v);
            c.set(s, sum);
        }
        Ok(c)
    }

    fn set(&mut self, s: Simplex, v: CoeffElement) {
        if self.group.is_zero(&v) {
            self.values.remove(&s);
        } else {
            self.values.insert(s, v);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &CoeffGroup {
        &self.group
    }

    pub fn value(&self, s: &Simplex) -> CoeffElement {
        self.values.get(s).cloned().unwrap_or_else(|| self.group.zero())
    }

    /// Non-zero values in simplex order.
    pub fn values(&self) -> impl Iterator<Item = (&Simplex, &CoeffElement)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `⟨θ, c⟩ = Σ c_σ θ(σ)`.
    pub fn evaluate(&self, c: &Chain) -> Result<CoeffElement> {
        if c.dim() != self.degree {
            return Err(Error::Dimension(format!(
                "{}-chain paired with a degree-{} cochain",
                c.dim(),
                self.degree
            )));
        }
        let mut acc = self.group.zero();
        for (s, k) in c.terms() {
            if let Some(v) = self.values.get(s) {
                acc = self.group.add(&acc, &self.group.scale_i64(k, v));
            }
        }
        Ok(acc)
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || self.group != other.group {
            return Err(Error::DomainMismatch(format!(
                "degree-{} {} cochain combined with degree-{} {} cochain",
                self.degree, self.group, other.degree, other.group
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, v) in &other.values {
            let sum = self.group.add(&out.value(s), v);
            out.set(s.clone(), sum);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let mut out = Cochain::zero(self.degree, &self.group);
        for (s, v) in &self.values {
            out.set(s.clone(), self.group.scale(k, v));
        }
        out
    }

    /// Every stored simplex belongs to `x`.
    pub fn check_in(&self, x: &SimplicialComplex) -> Result<()> {
        match self.values.keys().find(|s| !x.contains(s)) {
            Some(s) => Err(Error::DomainMismatch(format!("simplex {s:?} is not in the complex"))),
            None => Ok(()),
        }
    }

    /// Values as a dense vector over the `degree`-simplices of `x`.
    pub fn to_dense(&self, x: &SimplicialComplex) -> Vec<CoeffElement> {
        x.simplices(self.degree).iter().map(|s| self.value(s)).collect()
    }

    pub fn from_dense(
        x: &SimplicialComplex,
        degree: usize,
        group: &CoeffGroup,
        values: Vec<CoeffElement>,
    ) -> Cochain {
        let mut c = Cochain::zero(degree, group);
        for (s, v) in x.simplices(degree).iter().zip(values) {
            c.set(s.clone(), v);
        }
        c
    }
}

/// `(δf)(σ) = f(∂σ)`. Total: in top degree the result is the zero cochain.
pub fn coboundary(x: &SimplicialComplex, f: &Cochain) -> Cochain {
    let g = f.group();
    let mut out = Cochain::zero(f.degree() + 1, g);
    for s in x.simplices(f.degree() + 1) {
        let mut acc = g.zero();
        for (sign, face) in s.faces() {
            if let Some(v) = f.values.get(&face) {
                acc = g.add(&acc, &g.scale_i64(sign, v));
            }
        }
        out.set(s.clone(), acc);
    }
    out
}

/// `Ok` iff `δθ = 0`; otherwise names the first simplex where it fails.
pub fn check_cocycle(x: &SimplicialComplex, theta: &Cochain) -> Result<()> {
    theta.check_in(x)?;
    let d = coboundary(x, theta);
    let first = d.values().next().map(|(s, _)| s.vertices().to_vec());
    match first {
        Some(simplex) => Err(Error::NotACocycle { simplex }),
        None => Ok(()),
    }
}

/// `Σᵢ aᵢ·M[i][j]` for each column `j`.
fn row_times_matrix(g: &CoeffGroup, a: &[CoeffElement], m: &IntMatrix) -> Vec<CoeffElement> {
    (0..m.cols())
        .map(|j| {
            let mut acc = g.zero();
            for (i, ai) in a.iter().enumerate() {
                let c = m.get(i, j);
                if !c.is_zero() && !g.is_zero(ai) {
                    acc = g.add(&acc, &g.scale(c, ai));
                }
            }
            acc
        })
        .collect()
}

/// Some `f` of degree `k − 1` with `δf = θ`, or `None` when `θ` is not a
/// coboundary. Complete for every coefficient group.
pub fn coboundary_witness(x: &SimplicialComplex, theta: &Cochain) -> Result<Option<Cochain>> {
    let k = theta.degree();
    if k == 0 {
        return Err(Error::Dimension("degree-0 cochains are never coboundaries".into()));
    }
    theta.check_in(x)?;
    let g = theta.group();
    if k > x.dim() {
        return Ok(Some(Cochain::zero(k - 1, g)));
    }
    // θ = f·∂ and U∂V = S give θV = (fU⁻¹)S
    let d = x.boundary_matrix(k)?;
    let snf = smith_normal_form(&d);
    let t = row_times_matrix(g, &theta.to_dense(x), &snf.v);
    let r = snf.rank();
    if t[r..].iter().any(|v| !g.is_zero(v)) {
        return Ok(None);
    }
    let mut y = vec![g.zero(); d.rows()];
    for j in 0..r {
        match g.solve_division(snf.s.get(j, j), &t[j]) {
            Some(v) => y[j] = v,
            None => return Ok(None),
        }
    }
    let f = Cochain::from_dense(x, k - 1, g, row_times_matrix(g, &y, &snf.u));
    if coboundary(x, &f) != *theta {
        return Err(Error::Internal("coboundary witness failed verification".into()));
    }
    Ok(Some(f))
}

/// Per-component enumeration data for `H²(X; ℤ/n)` in the coordinates
/// `t = θV`, where `U∂₂V = S`.
struct CyclicClasses {
    n: BigInt,
    /// For each coordinate: the finite list of admissible values.
    choices: Vec<Vec<BigInt>>,
}

fn degree2_classes_cyclic(
    n: u64,
    snf2: &SmithDecomposition,
    ker_rows: &Option<SmithDecomposition>,
    n2: usize,
) -> CyclicClasses {
    let n = BigInt::from(n);
    let r = snf2.rank();
    let mut choices = Vec::with_capacity(n2);
    // t_j for j < r: one value per class of ℤ/n modulo d_j
    for j in 0..r {
        let g = snf2.s.get(j, j).gcd(&n);
        let g = g.to_u64().expect("bounded by n");
        choices.push((0..g).map(BigInt::from).collect());
    }
    // t_{≥r}: solutions of t·R = 0, parametrised as t = s·U_R
    let free = n2 - r;
    let mut s_choices: Vec<Vec<BigInt>> = Vec::with_capacity(free);
    match ker_rows {
        Some(snf_r) => {
            let rr = snf_r.rank();
            for i in 0..free {
                if i < rr {
                    let e = snf_r.s.get(i, i);
                    let g = e.gcd(&n);
                    let step = &n / &g;
                    let g = g.to_u64().expect("bounded by n");
                    s_choices.push((0..g).map(|u| &step * BigInt::from(u)).collect());
                } else {
                    let nn = n.to_u64().expect("small");
                    s_choices.push((0..nn).map(BigInt::from).collect());
                }
            }
        }
        None => {
            let nn = n.to_u64().expect("small");
            for _ in 0..free {
                s_choices.push((0..nn).map(BigInt::from).collect());
            }
        }
    }
    choices.extend(s_choices);
    CyclicClasses { n, choices }
}

fn cartesian(choices: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|p| {
                c.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// One representative cocycle per class of `H²(X; A)` for finite `A`
/// (cyclic or a direct sum of cyclics). `None` when `A` is infinite or the
/// number of classes exceeds `limit`.
///
/// Classes are enumerated over a complement of the coboundaries, so the
/// cost is the class count, not the cochain count.
pub fn degree2_classes(
    x: &SimplicialComplex,
    a: &CoeffGroup,
    limit: usize,
) -> Result<Option<Vec<Cochain>>> {
    let comps = match a {
        CoeffGroup::Cyclic(_) => vec![a.clone()],
        CoeffGroup::DirectSum(parts) => parts.clone(),
        _ => return Ok(None),
    };
    let n2 = x.count(2);
    if x.dim() < 2 {
        return Ok(Some(vec![Cochain::zero(2, a)]));
    }
    let d2 = x.boundary_matrix(2)?;
    let snf2 = smith_normal_form(&d2);
    let r = snf2.rank();
    let ker_rows = if x.dim() >= 3 {
        let d3 = x.boundary_matrix(3)?;
        let rows = snf2.v_inv.select_rows(r..n2).mul(&d3)?;
        Some(smith_normal_form(&rows))
    } else {
        None
    };

    let mut per_comp: Vec<Vec<Vec<BigInt>>> = Vec::new();
    let mut total: usize = 1;
    for c in &comps {
        let CoeffGroup::Cyclic(n) = c else {
            return Ok(None);
        };
        let cc = degree2_classes_cyclic(*n, &snf2, &ker_rows, n2);
        let count = cc
            .choices
            .iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(v.len()));
        total = match count.and_then(|c| c.checked_mul(total)) {
            Some(t) if t <= limit => t,
            _ => return Ok(None),
        };
        // θ = t·V⁻¹ where t = (t_{<r}, s·U_R)
        let ts: Vec<Vec<BigInt>> = cartesian(&cc.choices)
            .into_iter()
            .map(|mut t| {
                if let Some(snf_r) = &ker_rows {
                    let s = t.split_off(r);
                    let tail = snf_r.u.vec_mul(&s).expect("sizes agree");
                    t.extend(tail);
                }
                let theta = snf2.v_inv.vec_mul(&t).expect("sizes agree");
                theta.into_iter().map(|v| v.mod_floor(&cc.n)).collect()
            })
            .collect();
        per_comp.push(ts);
    }

    let mut out = Vec::with_capacity(total);
    let combos = cartesian(
        &per_comp
            .iter()
            .map(|v| (0..v.len()).map(BigInt::from).collect())
            .collect::<Vec<_>>(),
    );
    for combo in combos {
        let picks: Vec<&Vec<BigInt>> = combo
            .iter()
            .zip(&per_comp)
            .map(|(i, v)| &v[i.to_usize().expect("index")])
            .collect();
        let values: Vec<CoeffElement> = (0..n2)
            .map(|j| match a {
                CoeffGroup::DirectSum(_) => CoeffElement::Tuple(
                    picks
                        .iter()
                        .map(|p| CoeffElement::Residue(p[j].clone()))
                        .collect(),
                ),
                _ => CoeffElement::Residue(picks[0][j].clone()),
            })
            .collect();
        let theta = Cochain::from_dense(x, 2, a, values);
        debug_assert!(check_cocycle(x, &theta).is_ok());
        out.push(theta);
    }
    Ok(Some(out))
}

/// The Hom and Ext parts of a 2-cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UctSplit {
    pub hom_part: GroupHom,
    pub ext_part: ExtClass,
}

/// Splits a 2-cocycle: `θ` on each `H₂` generator, and `θ(w) mod mA` for
/// each torsion `H₁` generator `t` of order `m` with witness `∂w = m·t`.
/// Witnesses are fixed by the homology computation, so the pair is a
/// function of the cohomology class.
pub fn uct_split(x: &SimplicialComplex, theta: &Cochain) -> Result<UctSplit> {
    if theta.degree() != 2 {
        return Err(Error::Dimension(format!(
            "uct_split needs a 2-cochain, got degree {}",
            theta.degree()
        )));
    }
    check_cocycle(x, theta)?;
    let a = theta.group();
    let (h1, h2) = low_homology(x)?;
    uct_split_with(&h1, &h2, theta, a)
}

/// `H₁` and `H₂` of `x`, with `H₂ = 0` when `dim X < 2`.
pub fn low_homology(x: &SimplicialComplex) -> Result<(HomologyGroup, HomologyGroup)> {
    let h1 = if x.dim() >= 1 {
        homology(x, 1)?
    } else {
        empty_homology(x, 1)
    };
    let h2 = if x.dim() >= 2 {
        homology(x, 2)?
    } else {
        empty_homology(x, 2)
    };
    Ok((h1, h2))
}

fn empty_homology(x: &SimplicialComplex, k: usize) -> HomologyGroup {
    HomologyGroup {
        degree: k,
        group: FgAbGroup::trivial(),
        generators: Vec::new(),
        torsion_witnesses: Vec::new(),
        cycle_rank: 0,
        v_inv: IntMatrix::zeros(0, 0),
        reader: IntMatrix::zeros(0, 0),
        reader_rows: Vec::new(),
        chain_count: x.count(k),
    }
}

/// [`uct_split`] with precomputed homology; skips the cocycle check.
pub fn uct_split_with(
    h1: &HomologyGroup,
    h2: &HomologyGroup,
    theta: &Cochain,
    a: &CoeffGroup,
) -> Result<UctSplit> {
    let hom = h2
        .generators()
        .iter()
        .map(|g| theta.evaluate(g))
        .collect::<Result<Vec<_>>>()?;
    let hom_part = hom_values(h2.group(), a, hom)?;
    let ext = ext_group(h1.group(), a);
    let raw = h1
        .torsion_witnesses()
        .iter()
        .map(|w| theta.evaluate(w))
        .collect::<Result<Vec<_>>>()?;
    let ext_part = ext.canonical(&raw)?;
    Ok(UctSplit { hom_part, ext_part })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;

    fn circle() -> SimplicialComplex {
        build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn s2() -> SimplicialComplex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    fn q(s: &str) -> CoeffElement {
        CoeffGroup::RationalCircle.parse_element(s).unwrap()
    }

    #[test]
    fn point_homology() {
        let p = build_complex(&[vec![0]]).unwrap();
        let h0 = homology(&p, 0).unwrap();
        assert_eq!(h0.group().to_string(), "Z");
        assert!(homology(&p, 2).is_err());
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        let h1 = homology(&c, 1).unwrap();
        assert_eq!(h1.group().to_string(), "Z");
        let g = &h1.generators()[0];
        assert_eq!(g.support_len(), 3);
        assert_eq!(g.l1_norm(), 3);
        assert!(g.boundary().unwrap().is_zero());
        let z = Chain::oriented(&[0, 1])
            .add(&Chain::oriented(&[1, 2]))
            .add(&Chain::oriented(&[2, 0]));
        let cls = h1.class_of(&c, &z).unwrap();
        assert!(cls[0] == BigInt::one() || cls[0] == BigInt::from(-1));
        assert_eq!(h1.cycle_of(&cls).unwrap(), z);
    }

    #[test]
    fn sphere_homology() {
        let x = s2();
        assert_eq!(homology(&x, 1).unwrap().group().to_string(), "0");
        let h2 = homology(&x, 2).unwrap();
        assert_eq!(h2.group().to_string(), "Z");
        assert_eq!(h2.generators()[0].support_len(), 4);
        assert_eq!(betti_numbers(&x).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn boundary_witnesses() {
        let c = circle();
        let h1 = homology(&c, 1).unwrap();
        assert_eq!(is_boundary_with_witness(&c, &h1.generators()[0]).unwrap(), None);
        assert_eq!(
            is_boundary_with_witness(&c, &Chain::zero(1)).unwrap(),
            Some(Chain::zero(2))
        );
        let x = s2();
        let z = Chain::oriented(&[0, 1, 2]).boundary().unwrap();
        let w = is_boundary_with_witness(&x, &z).unwrap().unwrap();
        assert_eq!(w.boundary().unwrap(), z);
        let not_cycle = Chain::oriented(&[0, 1]);
        assert!(matches!(
            is_boundary_with_witness(&x, &not_cycle),
            Err(Error::NotACycle(_))
        ));
    }

    #[test]
    fn coboundary_of_edge_indicator() {
        let x = build_complex(&[vec![0, 1, 2]]).unwrap();
        let a = CoeffGroup::RationalCircle;
        let f = Cochain::new(&x, 1, &a, [(Simplex::new(vec![0, 1]).unwrap(), q("1/4"))]).unwrap();
        let df = coboundary(&x, &f);
        // ∂[0,1,2] = [1,2] − [0,2] + [0,1]
        assert_eq!(df.value(&Simplex::new(vec![0, 1, 2]).unwrap()), q("1/4"));
        assert!(coboundary(&x, &df).is_zero());
    }

    #[test]
    fn coboundaries_are_detected() {
        let x = s2();
        let a = CoeffGroup::Cyclic(6);
        let f = Cochain::new(
            &x,
            1,
            &a,
            [
                (Simplex::new(vec![0, 1]).unwrap(), CoeffElement::Residue(5.into())),
                (Simplex::new(vec![1, 3]).unwrap(), CoeffElement::Residue(2.into())),
            ],
        )
        .unwrap();
        let theta = coboundary(&x, &f);
        let w = coboundary_witness(&x, &theta).unwrap().unwrap();
        assert_eq!(coboundary(&x, &w), theta);
        let one = Cochain::new(&x, 2, &a, [(Simplex::new(vec![0, 1, 2]).unwrap(), CoeffElement::Residue(1.into()))]).unwrap();
        assert_eq!(coboundary_witness(&x, &one).unwrap(), None);
    }

    #[test]
    fn not_a_cocycle_names_simplex() {
        let x = build_complex(&[vec![0, 1, 2, 3]]).unwrap();
        let a = CoeffGroup::Cyclic(2);
        let theta = Cochain::new(&x, 2, &a, [(Simplex::new(vec![0, 1, 2]).unwrap(), CoeffElement::Residue(1.into()))]).unwrap();
        assert_eq!(
            check_cocycle(&x, &theta),
            Err(Error::NotACocycle { simplex: vec![0, 1, 2, 3] })
        );
    }

    #[test]
    fn sphere_classes_and_split() {
        let x = s2();
        let a = CoeffGroup::Cyclic(4);
        let classes = degree2_classes(&x, &a, 1000).unwrap().unwrap();
        assert_eq!(classes.len(), 4);
        let mut homs: Vec<CoeffElement> = classes
            .iter()
            .map(|t| uct_split(&x, t).unwrap().hom_part.values[0].clone())
            .collect();
        homs.sort();
        homs.dedup();
        assert_eq!(homs.len(), 4);
    }

    #[test]
    fn split_of_coboundary_is_zero() {
        let x = s2();
        let a = CoeffGroup::RationalCircle;
        let f = Cochain::new(&x, 1, &a, [(Simplex::new(vec![0, 2]).unwrap(), q("1/3"))]).unwrap();
        let split = uct_split(&x, &coboundary(&x, &f)).unwrap();
        assert!(split.hom_part.is_zero());
        assert!(split.ext_part.values.is_empty());
    }

    #[test]
    fn infinite_coefficients_are_not_enumerated() {
        assert!(degree2_classes(&s2(), &CoeffGroup::RationalCircle, 10).unwrap().is_none());
        assert!(degree2_classes(&s2(), &CoeffGroup::Cyclic(4), 3).unwrap().is_none());
    }
}
