//! Abelian coefficient groups, finitely generated abelian groups, Hom and
//! Ext, and abelian extensions with an explicit twisted addition.
//!
//! All groups are written additively. The multiplicative group of units of
//! a ring is modelled by one of these: `ℤ/n` for finite cyclic unit groups,
//! `ℚ/ℤ` for the torsion of `ℂ^×` (a divisible group), `ℤ`, or a finite
//! direct sum of them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An abstract abelian coefficient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffGroup {
    /// `ℤ/n`, `n ≥ 1`.
    Cyclic(u64),
    /// `ℚ/ℤ`.
    RationalCircle,
    /// `ℤ`.
    FreeInt,
    /// A non-empty finite direct sum.
    DirectSum(Vec<CoeffGroup>),
}

/// An element of a [`CoeffGroup`], always kept in canonical form: residues
/// in `[0, n)`, rationals reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffElement {
    Residue(BigInt),
    Rational(BigRational),
    Integer(BigInt),
    Tuple(Vec<CoeffElement>),
}

fn frac_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl CoeffGroup {
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("cyclic group of order 0".into()));
        }
        Ok(CoeffGroup::Cyclic(n))
    }

    pub fn direct_sum(parts: Vec<CoeffGroup>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Malformed("empty direct sum".into()));
        }
        Ok(CoeffGroup::DirectSum(parts))
    }

    pub fn zero(&self) -> CoeffElement {
        match self {
            CoeffGroup::Cyclic(_) => CoeffElement::Residue(BigInt::zero()),
            CoeffGroup::RationalCircle => CoeffElement::Rational(BigRational::zero()),
            CoeffGroup::FreeInt => CoeffElement::Integer(BigInt::zero()),
            CoeffGroup::DirectSum(parts) => {
                CoeffElement::Tuple(parts.iter().map(CoeffGroup::zero).collect())
            }
        }
    }

    /// Checks membership and canonical form.
    pub fn contains(&self, a: &CoeffElement) -> bool {
        match (self, a) {
            (CoeffGroup::Cyclic(n), CoeffElement::Residue(r)) => {
                !r.is_negative() && *r < BigInt::from(*n)
            }
            (CoeffGroup::RationalCircle, CoeffElement::Rational(q)) => {
                !q.is_negative() && *q < BigRational::one()
            }
            (CoeffGroup::FreeInt, CoeffElement::Integer(_)) => true,
            (CoeffGroup::DirectSum(parts), CoeffElement::Tuple(xs)) => {
                parts.len() == xs.len() && parts.iter().zip(xs).all(|(g, x)| g.contains(x))
            }
            _ => false,
        }
    }

    /// Brings an element of the right shape into canonical form.
    pub fn normalize(&self, a: CoeffElement) -> Result<CoeffElement> {
        match (self, a) {
            (CoeffGroup::Cyclic(n), CoeffElement::Residue(r)) => {
                Ok(CoeffElement::Residue(r.mod_floor(&BigInt::from(*n))))
            }
            (CoeffGroup::Cyclic(n), CoeffElement::Integer(r)) => {
                Ok(CoeffElement::Residue(r.mod_floor(&BigInt::from(*n))))
            }
            (CoeffGroup::RationalCircle, CoeffElement::Rational(q)) => {
                Ok(CoeffElement::Rational(frac_part(&q)))
            }
            (CoeffGroup::RationalCircle, CoeffElement::Integer(_)) => {
                Ok(CoeffElement::Rational(BigRational::zero()))
            }
            (CoeffGroup::FreeInt, CoeffElement::Integer(r)) => Ok(CoeffElement::Integer(r)),
            (CoeffGroup::DirectSum(parts), CoeffElement::Tuple(xs)) if parts.len() == xs.len() => {
                Ok(CoeffElement::Tuple(
                    parts
                        .iter()
                        .zip(xs)
                        .map(|(g, x)| g.normalize(x))
                        .collect::<Result<_>>()?,
                ))
            }
            (g, a) => Err(Error::Malformed(format!("{a} is not an element of {g}"))),
        }
    }

    pub fn add(&self, a: &CoeffElement, b: &CoeffElement) -> CoeffElement {
        match (self, a, b) {
            (CoeffGroup::Cyclic(n), CoeffElement::Residue(x), CoeffElement::Residue(y)) => {
                CoeffElement::Residue((x + y).mod_floor(&BigInt::from(*n)))
            }
            (CoeffGroup::RationalCircle, CoeffElement::Rational(x), CoeffElement::Rational(y)) => {
                CoeffElement::Rational(frac_part(&(x + y)))
            }
            (CoeffGroup::FreeInt, CoeffElement::Integer(x), CoeffElement::Integer(y)) => {
                CoeffElement::Integer(x + y)
            }
            (CoeffGroup::DirectSum(parts), CoeffElement::Tuple(xs), CoeffElement::Tuple(ys)) => {
                CoeffElement::Tuple(
                    parts
                        .iter()
                        .zip(xs.iter().zip(ys))
                        .map(|(g, (x, y))| g.add(x, y))
                        .collect(),
                )
            }
            _ => panic!("adding {a} and {b} in {self}"),
        }
    }

    pub fn neg(&self, a: &CoeffElement) -> CoeffElement {
        self.scale(&BigInt::from(-1), a)
    }

    pub fn sub(&self, a: &CoeffElement, b: &CoeffElement) -> CoeffElement {
        self.add(a, &self.neg(b))
    }

    /// Integer multiple `k·a`.
    pub fn scale(&self, k: &BigInt, a: &CoeffElement) -> CoeffElement {
        match (self, a) {
            (CoeffGroup::Cyclic(n), CoeffElement::Residue(x)) => {
                CoeffElement::Residue((k * x).mod_floor(&BigInt::from(*n)))
            }
            (CoeffGroup::RationalCircle, CoeffElement::Rational(x)) => {
                CoeffElement::Rational(frac_part(&(x * BigRational::from_integer(k.clone()))))
            }
            (CoeffGroup::FreeInt, CoeffElement::Integer(x)) => CoeffElement::Integer(k * x),
            (CoeffGroup::DirectSum(parts), CoeffElement::Tuple(xs)) => CoeffElement::Tuple(
                parts.iter().zip(xs).map(|(g, x)| g.scale(k, x)).collect(),
            ),
            _ => panic!("scaling {a} in {self}"),
        }
    }

    pub fn scale_i64(&self, k: i64, a: &CoeffElement) -> CoeffElement {
        self.scale(&BigInt::from(k), a)
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a CoeffElement>) -> CoeffElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn is_zero(&self, a: &CoeffElement) -> bool {
        *a == self.zero()
    }

    /// The group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        match self {
            CoeffGroup::Cyclic(n) => Some(BigInt::from(*n)),
            CoeffGroup::RationalCircle | CoeffGroup::FreeInt => None,
            CoeffGroup::DirectSum(parts) => parts
                .iter()
                .map(CoeffGroup::order)
                .try_fold(BigInt::one(), |acc, o| o.map(|o| acc * o)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// All elements of a finite group, in a fixed order. `None` for
    /// infinite groups or when the order exceeds `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<CoeffElement>> {
        let order = self.order()?.to_usize()?;
        if order > limit {
            return None;
        }
        Some(match self {
            CoeffGroup::Cyclic(n) => (0..*n).map(|r| CoeffElement::Residue(r.into())).collect(),
            CoeffGroup::DirectSum(parts) => {
                let mut out = vec![Vec::new()];
                for p in parts {
                    let elems = p.elements(limit)?;
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            elems.iter().map(move |e| {
                                let mut v = prefix.clone();
                                v.push(e.clone());
                                v
                            })
                        })
                        .collect();
                }
                out.into_iter().map(CoeffElement::Tuple).collect()
            }
            _ => unreachable!("finite"),
        })
    }

    /// Canonical representative of the class of `a` in `A/dA`.
    pub fn reduce_mod_multiple(&self, d: &BigInt, a: &CoeffElement) -> CoeffElement {
        match (self, a) {
            (CoeffGroup::Cyclic(n), CoeffElement::Residue(x)) => {
                let g = d.gcd(&BigInt::from(*n));
                CoeffElement::Residue(x.mod_floor(&g))
            }
            (CoeffGroup::RationalCircle, _) => CoeffElement::Rational(BigRational::zero()),
            (CoeffGroup::FreeInt, CoeffElement::Integer(x)) => {
                if d.is_zero() {
                    CoeffElement::Integer(x.clone())
                } else {
                    CoeffElement::Integer(x.mod_floor(&d.abs()))
                }
            }
            (CoeffGroup::DirectSum(parts), CoeffElement::Tuple(xs)) => CoeffElement::Tuple(
                parts
                    .iter()
                    .zip(xs)
                    .map(|(g, x)| g.reduce_mod_multiple(d, x))
                    .collect(),
            ),
            _ => panic!("reducing {a} in {self}"),
        }
    }

    /// The canonical representatives of `A/dA` for `d ≥ 1`; always finite
    /// for the groups modelled here.
    pub fn quotient_representatives(&self, d: &BigInt) -> Vec<CoeffElement> {
        match self {
            CoeffGroup::Cyclic(n) => {
                let g = d.gcd(&BigInt::from(*n));
                let g = g.to_u64().expect("bounded by n");
                (0..g).map(|r| CoeffElement::Residue(r.into())).collect()
            }
            CoeffGroup::RationalCircle => vec![self.zero()],
            CoeffGroup::FreeInt => {
                let d = d.to_u64().expect("quotient of Z by a huge integer");
                (0..d as i64)
                    .map(|r| CoeffElement::Integer(r.into()))
                    .collect()
            }
            CoeffGroup::DirectSum(parts) => {
                let mut out = vec![Vec::new()];
                for p in parts {
                    let reps = p.quotient_representatives(d);
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            reps.iter().map(move |e| {
                                let mut v = prefix.clone();
                                v.push(e.clone());
                                v
                            })
                        })
                        .collect();
                }
                out.into_iter().map(CoeffElement::Tuple).collect()
            }
        }
    }

    /// Some `x` with `n·x = target`, if one exists; the smallest canonical
    /// one is returned.
    pub fn solve_division(&self, n: &BigInt, target: &CoeffElement) -> Option<CoeffElement> {
        assert!(n.is_positive(), "division by {n}");
        match (self, target) {
            (CoeffGroup::Cyclic(m), CoeffElement::Residue(t)) => {
                let m = BigInt::from(*m);
                let g = n.gcd(&m);
                if !t.is_multiple_of(&g) {
                    return None;
                }
                let m_red = &m / &g;
                let n_red = (n / &g).mod_floor(&m_red);
                let t_red = t / &g;
                let inv = mod_inverse(&n_red, &m_red)?;
                Some(CoeffElement::Residue((t_red * inv).mod_floor(&m_red)))
            }
            (CoeffGroup::RationalCircle, CoeffElement::Rational(t)) => Some(CoeffElement::Rational(
                t / BigRational::from_integer(n.clone()),
            )),
            (CoeffGroup::FreeInt, CoeffElement::Integer(t)) => {
                let (q, r) = t.div_rem(n);
                r.is_zero().then_some(CoeffElement::Integer(q))
            }
            (CoeffGroup::DirectSum(parts), CoeffElement::Tuple(ts)) => parts
                .iter()
                .zip(ts)
                .map(|(g, t)| g.solve_division(n, t))
                .collect::<Option<Vec<_>>>()
                .map(CoeffElement::Tuple),
            _ => None,
        }
    }

    /// Parses an element literal: an integer, `a/b`, or a comma-joined tuple
    /// for direct sums.
    pub fn parse_element(&self, s: &str) -> Result<CoeffElement> {
        let s = s.trim();
        match self {
            CoeffGroup::DirectSum(parts) => {
                let items: Vec<&str> = s
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .split(',')
                    .collect();
                if items.len() != parts.len() {
                    return Err(Error::Malformed(format!(
                        "element {s:?} has {} components, {self} has {}",
                        items.len(),
                        parts.len()
                    )));
                }
                Ok(CoeffElement::Tuple(
                    parts
                        .iter()
                        .zip(items)
                        .map(|(g, x)| g.parse_element(x))
                        .collect::<Result<_>>()?,
                ))
            }
            CoeffGroup::RationalCircle => {
                let q = parse_rational(s)?;
                Ok(CoeffElement::Rational(frac_part(&q)))
            }
            CoeffGroup::Cyclic(_) | CoeffGroup::FreeInt => {
                let x = BigInt::from_str(s)
                    .map_err(|_| Error::Malformed(format!("{s:?} is not an integer")))?;
                self.normalize(CoeffElement::Integer(x))
            }
        }
    }

    /// Components of a direct sum with nested sums flattened; a single
    /// group for anything else.
    pub fn flat_components(&self) -> Vec<CoeffGroup> {
        match self {
            CoeffGroup::DirectSum(parts) => parts.iter().flat_map(|p| p.flat_components()).collect(),
            g => vec![g.clone()],
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Malformed(format!("{s:?} is not a rational number"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a = BigInt::from_str(a.trim()).map_err(|_| bad())?;
            let b = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl fmt::Display for CoeffGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffGroup::Cyclic(n) => write!(f, "z/{n}"),
            CoeffGroup::RationalCircle => write!(f, "q/z"),
            CoeffGroup::FreeInt => write!(f, "z"),
            CoeffGroup::DirectSum(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("+"))
            }
        }
    }
}

impl FromStr for CoeffGroup {
    type Err = Error;

    /// `z`, `z/6`, `q/z`, and `+`-joined direct sums such as `z/2+q/z`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('+').map(str::trim).collect();
        if parts.len() > 1 {
            return CoeffGroup::direct_sum(
                parts.into_iter().map(CoeffGroup::from_str).collect::<Result<_>>()?,
            );
        }
        let p = s.trim().to_ascii_lowercase();
        match p.as_str() {
            "z" => Ok(CoeffGroup::FreeInt),
            "q/z" => Ok(CoeffGroup::RationalCircle),
            _ => match p.strip_prefix("z/") {
                Some(n) => {
                    let n: u64 = n
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad group order in {s:?}")))?;
                    CoeffGroup::cyclic(n)
                }
                None => Err(Error::Malformed(format!("unknown coefficient group {s:?}"))),
            },
        }
    }
}

impl fmt::Display for CoeffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffElement::Residue(x) | CoeffElement::Integer(x) => write!(f, "{x}"),
            CoeffElement::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            CoeffElement::Tuple(xs) => {
                let s: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", s.join(","))
            }
        }
    }
}

/// A finitely generated abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/d_t ⊕ ℤ^r` with
/// `d₁ | d₂ | …` and every `dᵢ ≥ 2`. Elements are integer vectors, torsion
/// coordinates first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbGroup {
    rank: usize,
    invariant_factors: Vec<BigInt>,
    labels: Vec<String>,
}

impl FgAbGroup {
    pub fn new(invariant_factors: Vec<BigInt>, rank: usize) -> Result<Self> {
        if let Some(d) = invariant_factors.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::Malformed(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = invariant_factors
            .windows(2)
            .find(|w| !w[1].is_multiple_of(&w[0]))
        {
            return Err(Error::Malformed(format!(
                "invariant factors {} and {} break the divisibility chain",
                w[0], w[1]
            )));
        }
        let labels = (0..invariant_factors.len() + rank)
            .map(|i| format!("g{i}"))
            .collect();
        Ok(FgAbGroup {
            rank,
            invariant_factors,
            labels,
        })
    }

    pub fn trivial() -> Self {
        FgAbGroup::new(Vec::new(), 0).expect("valid")
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup::new(Vec::new(), rank).expect("valid")
    }

    /// `ℤ/d₁ ⊕ … ⊕ ℤ^r` from small factors; factors of 1 are dropped.
    pub fn from_small(factors: &[u64], rank: usize) -> Result<Self> {
        FgAbGroup::new(
            factors
                .iter()
                .filter(|&&d| d != 1)
                .map(|&d| BigInt::from(d))
                .collect(),
            rank,
        )
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.generator_count() {
            return Err(Error::Malformed("one label per generator required".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_count(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn generator_count(&self) -> usize {
        self.invariant_factors.len() + self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Order of generator `i`; `None` for free generators.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        self.invariant_factors.get(i)
    }

    pub fn is_trivial(&self) -> bool {
        self.generator_count() == 0
    }

    /// Same invariants, ignoring labels.
    pub fn isomorphic(&self, other: &FgAbGroup) -> bool {
        self.rank == other.rank && self.invariant_factors == other.invariant_factors
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.invariant_factors.iter().product())
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.generator_count()]
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut v = self.zero();
        v[i] = BigInt::one();
        v
    }

    pub fn normalize(&self, mut x: Vec<BigInt>) -> Vec<BigInt> {
        for (xi, d) in x.iter_mut().zip(&self.invariant_factors) {
            *xi = xi.mod_floor(d);
        }
        x
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.normalize(x.iter().zip(y).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.normalize(x.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt, x: &[BigInt]) -> Vec<BigInt> {
        self.normalize(x.iter().map(|a| k * a).collect())
    }

    /// All elements of a finite group; `None` if infinite or larger than
    /// `limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?.to_usize()?;
        if order > limit {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let d = d.to_i64().expect("bounded by limit");
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |r| {
                        let mut v = p.clone();
                        v.push(BigInt::from(r));
                        v
                    })
                })
                .collect();
        }
        Some(out)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A homomorphism from a finitely generated abelian group into a
/// coefficient group, given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub domain: FgAbGroup,
    pub codomain: CoeffGroup,
    pub values: Vec<CoeffElement>,
}

impl GroupHom {
    pub fn zero(domain: &FgAbGroup, codomain: &CoeffGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            values: vec![codomain.zero(); domain.generator_count()],
        }
    }

    pub fn evaluate(&self, x: &[BigInt]) -> CoeffElement {
        let terms: Vec<CoeffElement> = x
            .iter()
            .zip(&self.values)
            .map(|(k, v)| self.codomain.scale(k, v))
            .collect();
        self.codomain.sum(&terms)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.codomain.is_zero(v))
    }
}

/// Validates generator values and builds the homomorphism: a torsion
/// generator of order `d` must go to an element killed by `d`.
pub fn hom_values(
    domain: &FgAbGroup,
    codomain: &CoeffGroup,
    values: Vec<CoeffElement>,
) -> Result<GroupHom> {
    if values.len() != domain.generator_count() {
        return Err(Error::Malformed(format!(
            "{} values for {} generators",
            values.len(),
            domain.generator_count()
        )));
    }
    let values = values
        .into_iter()
        .map(|v| codomain.normalize(v))
        .collect::<Result<Vec<_>>>()?;
    for (i, v) in values.iter().enumerate() {
        if let Some(d) = domain.generator_order(i) {
            if !codomain.is_zero(&codomain.scale(d, v)) {
                return Err(Error::NotAHomomorphism(format!(
                    "generator {} has order {d} but {d}·{v} ≠ 0 in {codomain}",
                    domain.labels()[i]
                )));
            }
        }
    }
    Ok(GroupHom {
        domain: domain.clone(),
        codomain: codomain.clone(),
        values,
    })
}

/// Size of `Hom(G, A)` for finite `A` (or `None` when infinite).
pub fn hom_order(domain: &FgAbGroup, codomain: &CoeffGroup) -> Option<BigInt> {
    let mut total = BigInt::one();
    for c in codomain.flat_components() {
        let n = match c {
            CoeffGroup::Cyclic(n) => BigInt::from(n),
            _ => return if domain.is_trivial() { Some(total) } else { None },
        };
        if domain.rank() > 0 {
            total *= num_traits::pow(n.clone(), domain.rank());
        }
        for d in domain.invariant_factors() {
            total *= d.gcd(&n);
        }
    }
    Some(total)
}

/// An element of `Ext(G, A)`: one value per torsion factor `dᵢ`, read in
/// `A/dᵢA` and kept canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtClass {
    pub values: Vec<CoeffElement>,
}

impl ExtClass {
    pub fn is_trivial(&self, coeff: &CoeffGroup) -> bool {
        self.values.iter().all(|v| coeff.is_zero(v))
    }
}

impl fmt::Display for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.values.iter().map(|v| format!("[{v}]")).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// `Ext(G, A) ≅ ⊕ᵢ A/dᵢA` with the canonical class representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGroup {
    pub base: FgAbGroup,
    pub coeff: CoeffGroup,
}

impl ExtGroup {
    pub fn order(&self) -> BigInt {
        self.base
            .invariant_factors()
            .iter()
            .map(|d| BigInt::from(self.coeff.quotient_representatives(d).len()))
            .product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }

    pub fn zero(&self) -> ExtClass {
        ExtClass {
            values: vec![self.coeff.zero(); self.base.torsion_count()],
        }
    }

    /// Every class, in lexicographic order of representatives.
    pub fn classes(&self) -> Vec<ExtClass> {
        let mut out = vec![Vec::new()];
        for d in self.base.invariant_factors() {
            let reps = self.coeff.quotient_representatives(d);
            out = out
                .into_iter()
                .flat_map(|p| {
                    reps.iter().map(move |r| {
                        let mut v = p.clone();
                        v.push(r.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|values| ExtClass { values }).collect()
    }

    /// Reduces arbitrary `A`-values into the canonical class.
    pub fn canonical(&self, values: &[CoeffElement]) -> Result<ExtClass> {
        if values.len() != self.base.torsion_count() {
            return Err(Error::InvalidClass(format!(
                "{} values for {} torsion factors",
                values.len(),
                self.base.torsion_count()
            )));
        }
        let mut out = Vec::with_capacity(values.len());
        for (v, d) in values.iter().zip(self.base.invariant_factors()) {
            if !self.coeff.contains(v) {
                return Err(Error::InvalidClass(format!("{v} is not an element of {}", self.coeff)));
            }
            out.push(self.coeff.reduce_mod_multiple(d, v));
        }
        Ok(ExtClass { values: out })
    }

    pub fn add(&self, a: &ExtClass, b: &ExtClass) -> ExtClass {
        let sums: Vec<CoeffElement> = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| self.coeff.add(x, y))
            .collect();
        self.canonical(&sums).expect("sum of valid classes")
    }
}

/// `Ext(G, A)` as the direct sum of `A/dᵢA` over the invariant factors.
pub fn ext_group(base: &FgAbGroup, coeff: &CoeffGroup) -> ExtGroup {
    ExtGroup {
        base: base.clone(),
        coeff: coeff.clone(),
    }
}

/// A normalised symmetric 2-cocycle `Γ × Γ → A`.
#[derive(Clone)]
pub enum CocycleRule {
    /// Per torsion factor `ℤ/m` with value `α`: `c(i, j) = α` when the
    /// residues carry (`i + j ≥ m`), else 0; summed over factors.
    Carry(Vec<CoeffElement>),
    /// Any other rule, e.g. one read off a monoidal functor.
    Custom(Arc<dyn Fn(&[BigInt], &[BigInt]) -> CoeffElement + Send + Sync>),
}

impl fmt::Debug for CocycleRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleRule::Carry(v) => f.debug_tuple("Carry").field(v).finish(),
            CocycleRule::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// An element `(a, x)` of an extension: `a ∈ A`, `x ∈ Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub a: CoeffElement,
    pub x: Vec<BigInt>,
}

/// An abelian extension `0 → A → Γ̂ → Γ → 0`, realised on `A × Γ` with
/// `(a, x) + (b, y) = (a + b + c(x, y), x + y)`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub base: FgAbGroup,
    pub fiber: CoeffGroup,
    pub rule: CocycleRule,
}

/// The extension with the carry cocycle of a class of `Ext(G, A)`.
pub fn extension_from_class(
    base: &FgAbGroup,
    fiber: &CoeffGroup,
    class: &ExtClass,
) -> Result<Extension> {
    let ext = ext_group(base, fiber);
    let canonical = ext.canonical(&class.values)?;
    Ok(Extension {
        base: base.clone(),
        fiber: fiber.clone(),
        rule: CocycleRule::Carry(canonical.values),
    })
}

impl Extension {
    pub fn split(base: &FgAbGroup, fiber: &CoeffGroup) -> Self {
        Extension {
            base: base.clone(),
            fiber: fiber.clone(),
            rule: CocycleRule::Carry(vec![fiber.zero(); base.torsion_count()]),
        }
    }

    pub fn cocycle(&self, x: &[BigInt], y: &[BigInt]) -> CoeffElement {
        match &self.rule {
            CocycleRule::Carry(alphas) => {
                let mut acc = self.fiber.zero();
                for ((alpha, d), (xi, yi)) in alphas
                    .iter()
                    .zip(self.base.invariant_factors())
                    .zip(x.iter().zip(y))
                {
                    if xi.mod_floor(d) + yi.mod_floor(d) >= *d {
                        acc = self.fiber.add(&acc, alpha);
                    }
                }
                acc
            }
            CocycleRule::Custom(f) => f(x, y),
        }
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            a: self.fiber.zero(),
            x: self.base.zero(),
        }
    }

    pub fn add(&self, p: &ExtElement, q: &ExtElement) -> ExtElement {
        let a = self.fiber.add(&self.fiber.add(&p.a, &q.a), &self.cocycle(&p.x, &q.x));
        ExtElement {
            a,
            x: self.base.add(&p.x, &q.x),
        }
    }

    pub fn neg(&self, p: &ExtElement) -> ExtElement {
        let mx = self.base.neg(&p.x);
        let c = self.cocycle(&p.x, &mx);
        ExtElement {
            a: self.fiber.neg(&self.fiber.add(&p.a, &c)),
            x: mx,
        }
    }

    /// `k·p` by double-and-add.
    pub fn scale(&self, k: &BigInt, p: &ExtElement) -> ExtElement {
        let (mut base, mut k) = if k.is_negative() {
            (self.neg(p), -k)
        } else {
            (p.clone(), k.clone())
        };
        let mut acc = self.zero();
        let two = BigInt::from(2);
        while k.is_positive() {
            if k.is_odd() {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k /= &two;
        }
        acc
    }

    pub fn include(&self, a: &CoeffElement) -> ExtElement {
        ExtElement {
            a: a.clone(),
            x: self.base.zero(),
        }
    }

    pub fn project(&self, p: &ExtElement) -> Vec<BigInt> {
        p.x.clone()
    }

    /// The class in `Ext(Γ, A)`: for each torsion generator `e` of order
    /// `m`, the element `m·(0, e)` lies in `A`; its residue mod `mA` is the
    /// class value.
    pub fn class(&self) -> ExtClass {
        let values: Vec<CoeffElement> = (0..self.base.torsion_count())
            .map(|i| {
                let d = self.base.invariant_factors()[i].clone();
                let lift = ExtElement {
                    a: self.fiber.zero(),
                    x: self.base.generator(i),
                };
                let m = self.scale(&d, &lift);
                debug_assert!(m.x.iter().all(Zero::is_zero));
                m.a
            })
            .collect();
        ext_group(&self.base, &self.fiber)
            .canonical(&values)
            .expect("values lie in the fiber")
    }

    /// Every element, when `|Γ̂| ≤ limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<ExtElement>> {
        let base = self.base.elements(limit)?;
        let fiber = self.fiber.elements(limit)?;
        if base.len().checked_mul(fiber.len())? > limit {
            return None;
        }
        Some(
            base.iter()
                .flat_map(|x| {
                    fiber.iter().map(move |a| ExtElement {
                        a: a.clone(),
                        x: x.clone(),
                    })
                })
                .collect(),
        )
    }

    /// Checks the group axioms by exhaustive enumeration; `Ok(false)` when
    /// the group is too large to enumerate.
    pub fn verify_exhaustive(&self, limit: usize) -> Result<bool> {
        let Some(elems) = self.elements(limit) else {
            return Ok(false);
        };
        let zero = self.zero();
        for p in &elems {
            if self.add(p, &zero) != *p || self.add(&zero, p) != *p {
                return Err(Error::Internal(format!("{p:?} + 0 ≠ {p:?}")));
            }
            if self.add(p, &self.neg(p)) != zero {
                return Err(Error::Internal(format!("{p:?} has no inverse")));
            }
            for q in &elems {
                let pq = self.add(p, q);
                if pq != self.add(q, p) {
                    return Err(Error::Internal(format!("{p:?} and {q:?} do not commute")));
                }
                if self.base.add(&p.x, &q.x) != pq.x {
                    return Err(Error::Internal("projection is not additive".into()));
                }
            }
        }
        // associativity is cubic; sample when large
        let step = (elems.len() / 24).max(1);
        for p in elems.iter().step_by(step) {
            for q in &elems {
                for r in elems.iter().step_by(step) {
                    if self.add(&self.add(p, q), r) != self.add(p, &self.add(q, r)) {
                        return Err(Error::Internal(format!(
                            "associativity fails on {p:?}, {q:?}, {r:?}"
                        )));
                    }
                }
            }
        }
        Ok(true)
    }
}
