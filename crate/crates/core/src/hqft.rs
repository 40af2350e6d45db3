//! Rank-one normalised theories built from a 2-cocycle: torsor fibers over
//! mapped circles, evaluation on mapped cobordisms, closed holonomy, and
//! the group structure on theories.
//!
//! Everything is additive: a fiber over an object is an `A`-torsor
//! trivialised by the canonical cycle of the object, so a fiber element is
//! a single phase in `A`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::coeff::{hom_values, CoeffElement, CoeffGroup, FgAbGroup, GroupHom};
use crate::complex::{Chain, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{
    check_cocycle, coboundary, coboundary_witness, homology, Cochain,
};
use crate::linalg::IntSolver;
use crate::surface::{identity_cylinder, independent_pushforward, surface_from_cycle, XObject, XSurface};

/// The theory of a 2-cocycle `θ` on `X` with values in `A`.
#[derive(Clone, Debug)]
pub struct Hqft {
    base: Arc<SimplicialComplex>,
    coeff: CoeffGroup,
    cocycle: Cochain,
    selfcheck: bool,
}

/// A point of the fiber over `object`: the phase relative to the
/// canonical cycle of the object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberElement {
    pub object: XObject,
    pub phase: CoeffElement,
}

impl FiberElement {
    /// The tensor product in the fiber over the disjoint union.
    pub fn tensor(&self, other: &FiberElement, a: &CoeffGroup) -> FiberElement {
        FiberElement {
            object: self.object.disjoint_union(&other.object),
            phase: a.add(&self.phase, &other.phase),
        }
    }
}

impl fmt::Display for FiberElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self.phase, self.object.circles())
    }
}

/// Closed holonomy on each `H₂` generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyCharacter {
    pub group: FgAbGroup,
    pub generators: Vec<Chain>,
    pub values: Vec<CoeffElement>,
}

impl HolonomyCharacter {
    pub fn as_hom(&self, a: &CoeffGroup) -> Result<GroupHom> {
        hom_values(&self.group, a, self.values.clone())
    }

    pub fn is_zero(&self, a: &CoeffGroup) -> bool {
        self.values.iter().all(|v| a.is_zero(v))
    }
}

/// `τ(θ)`: validates that `θ` is a 2-cocycle on `x`.
pub fn tau(x: &Arc<SimplicialComplex>, theta: &Cochain) -> Result<Hqft> {
    if theta.degree() != 2 {
        return Err(Error::Dimension(format!(
            "a theory needs a 2-cocycle, got degree {}",
            theta.degree()
        )));
    }
    check_cocycle(x, theta)?;
    Ok(Hqft {
        base: x.clone(),
        coeff: theta.group().clone(),
        cocycle: theta.clone(),
        selfcheck: false,
    })
}

impl Hqft {
    pub fn trivial(x: &Arc<SimplicialComplex>, a: &CoeffGroup) -> Hqft {
        Hqft {
            base: x.clone(),
            coeff: a.clone(),
            cocycle: Cochain::zero(2, a),
            selfcheck: false,
        }
    }

    /// Recomputes every evaluation from an independent relative cycle on
    /// the barycentric subdivision and fails on disagreement.
    pub fn with_selfcheck(mut self, on: bool) -> Hqft {
        self.selfcheck = on;
        self
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn coeff(&self) -> &CoeffGroup {
        &self.coeff
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    fn check_surface(&self, g: &XSurface) -> Result<()> {
        if **g.target() != *self.base {
            return Err(Error::DomainMismatch(
                "surface maps into a different complex than the theory".into(),
            ));
        }
        Ok(())
    }

    /// `θ(g_* c)` for the relative cycle `c` of `g`.
    fn pairing(&self, g: &XSurface) -> Result<CoeffElement> {
        self.check_surface(g)?;
        let push = g.pushforward();
        let value = self.cocycle.evaluate(&push)?;
        if self.selfcheck {
            let other = self.cocycle.evaluate(&independent_pushforward(g)?)?;
            if other != value {
                return Err(Error::Internal(format!(
                    "independent relative cycle gives {other}, fundamental cycle gives {value}"
                )));
            }
        }
        Ok(value)
    }

    /// The scalar of a closed mapped surface.
    pub fn holonomy(&self, g: &XSurface) -> Result<CoeffElement> {
        if !g.is_closed() {
            return Err(Error::InvalidSurface(format!(
                "holonomy needs a closed surface, this one has {} input and {} output circles",
                g.surface().inputs().len(),
                g.surface().outputs().len()
            )));
        }
        self.pairing(g)
    }

    pub fn fiber_element(&self, object: &XObject, phase: CoeffElement) -> Result<FiberElement> {
        XObject::new(&self.base, object.circles().to_vec())?;
        Ok(FiberElement {
            object: object.clone(),
            phase: self.coeff.normalize(phase)?,
        })
    }

    /// The element `|a|·phase` where `a` is a 1-cycle on the standard
    /// cylinder over `object` homologous to its bottom circles. The
    /// bounding 2-chain `e` with `∂e = a − bottom` is found by integer
    /// solving and contributes `θ(π_* e)`.
    pub fn from_representative(
        &self,
        object: &XObject,
        cylinder: &XSurface,
        a: &Chain,
        phase: CoeffElement,
    ) -> Result<FiberElement> {
        if cylinder.input_object() != *object || cylinder.output_object() != *object {
            return Err(Error::ObjectMismatch("cylinder does not sit over the object".into()));
        }
        let cx = cylinder.surface().complex();
        let bottom = cylinder
            .surface()
            .inputs()
            .iter()
            .fold(Chain::zero(1), |acc, c| acc.add(&crate::surface::circle_cycle(c)));
        let diff = a.sub(&bottom);
        diff.check_in(cx)?;
        let d2 = cx.boundary_matrix(2)?;
        let e = IntSolver::new(&d2)
            .solve(&diff.to_vector(cx)?)?
            .ok_or_else(|| Error::NotACycle("representative is not homologous to the object".into()))?;
        let e = Chain::from_vector(cx, 2, &e)?;
        let correction = self.cocycle.evaluate(&cylinder.map().push_forward(&e)?)?;
        self.fiber_element(object, self.coeff.add(&phase, &correction))
    }

    /// `E(g)`: adds `θ(g_* c)` where `∂c = inputs − outputs`.
    pub fn evaluate(&self, g: &XSurface, e: &FiberElement) -> Result<FiberElement> {
        let input = g.input_object();
        if e.object != input {
            return Err(Error::ObjectMismatch(format!(
                "fiber element lives over {:?}, the cobordism starts at {:?}",
                e.object.circles(),
                input.circles()
            )));
        }
        let shift = self.pairing(g)?;
        Ok(FiberElement {
            object: g.output_object(),
            phase: self.coeff.add(&e.phase, &shift),
        })
    }

    fn same_kind(&self, other: &Hqft) -> Result<()> {
        if *self.base != *other.base {
            return Err(Error::DomainMismatch("theories live over different complexes".into()));
        }
        if self.coeff != other.coeff {
            return Err(Error::DomainMismatch(format!(
                "coefficient groups {} and {} differ",
                self.coeff, other.coeff
            )));
        }
        Ok(())
    }

    pub fn tensor(&self, other: &Hqft) -> Result<Hqft> {
        self.same_kind(other)?;
        Ok(Hqft {
            base: self.base.clone(),
            coeff: self.coeff.clone(),
            cocycle: self.cocycle.add(&other.cocycle)?,
            selfcheck: self.selfcheck || other.selfcheck,
        })
    }

    pub fn inverse(&self) -> Hqft {
        Hqft {
            cocycle: self.cocycle.neg(),
            ..self.clone()
        }
    }

    /// Holonomy on a surface realising each `H₂` generator.
    pub fn holonomy_character(&self) -> Result<HolonomyCharacter> {
        let (group, generators) = if self.base.dim() >= 2 {
            let h2 = homology(&self.base, 2)?;
            (h2.group().clone(), h2.generators().to_vec())
        } else {
            (FgAbGroup::trivial(), Vec::new())
        };
        let values = generators
            .iter()
            .map(|z| self.holonomy(&surface_from_cycle(&self.base, z)?))
            .collect::<Result<Vec<_>>>()?;
        hom_values(&group, &self.coeff, values.clone())?;
        Ok(HolonomyCharacter {
            group,
            generators,
            values,
        })
    }

    /// An isomorphism onto `other`, when the cocycles are cohomologous.
    pub fn isomorphism_to(&self, other: &Hqft) -> Result<Option<CoboundaryIso>> {
        self.same_kind(other)?;
        let diff = self.cocycle.sub(&other.cocycle)?;
        Ok(coboundary_witness(&self.base, &diff)?.map(|f| coboundary_iso(self, &f)))
    }

    pub fn is_isomorphic(&self, other: &Hqft) -> Result<bool> {
        Ok(self.isomorphism_to(other)?.is_some())
    }
}

/// `Ψ: τ(θ) → τ(θ − δf)`, on fibers `phase ↦ phase + f(γ_* [S_m])`.
///
/// With relative cycles bounding `inputs − outputs` this is the sign that
/// makes `Ψ` natural: `E^{θ−δf}(g)` shifts by `θ(c) − f(γ₀) + f(γ₁)`.
#[derive(Clone, Debug)]
pub struct CoboundaryIso {
    pub source: Hqft,
    pub target: Hqft,
    pub f: Cochain,
}

pub fn coboundary_iso(h: &Hqft, f: &Cochain) -> CoboundaryIso {
    let df = coboundary(&h.base, f);
    let target = Hqft {
        cocycle: h.cocycle.sub(&df).expect("same coefficient group"),
        ..h.clone()
    };
    CoboundaryIso {
        source: h.clone(),
        target,
        f: f.clone(),
    }
}

impl CoboundaryIso {
    pub fn apply(&self, e: &FiberElement) -> Result<FiberElement> {
        let shift = self.f.evaluate(&e.object.canonical_cycle())?;
        Ok(FiberElement {
            object: e.object.clone(),
            phase: self.source.coeff.add(&e.phase, &shift),
        })
    }

    /// `Ψ ∘ E^θ(g) = E^{θ−δf}(g) ∘ Ψ` on the given input phase.
    pub fn verify_naturality(&self, g: &XSurface, e: &FiberElement) -> Result<bool> {
        let left = self.apply(&self.source.evaluate(g, e)?)?;
        let right = self.target.evaluate(g, &self.apply(e)?)?;
        Ok(left == right)
    }

    /// `Ψ(a ⊗ b) = Ψ(a) ⊗ Ψ(b)`.
    pub fn verify_monoidality(&self, a: &FiberElement, b: &FiberElement) -> Result<bool> {
        let coeff = &self.source.coeff;
        let left = self.apply(&a.tensor(b, coeff))?;
        let right = self.apply(a)?.tensor(&self.apply(b)?, coeff);
        Ok(left == right)
    }

    /// Closed holonomies agree on both sides.
    pub fn verify_closed(&self, g: &XSurface) -> Result<bool> {
        Ok(self.source.holonomy(g)? == self.target.holonomy(g)?)
    }
}

/// The identity cobordism of an object as a fiber map, for spot checks.
pub fn identity_evaluation(h: &Hqft, e: &FiberElement) -> Result<FiberElement> {
    h.evaluate(&identity_cylinder(&h.base, &e.object)?, e)
}

/// `θ` with `θ(σ) = value` on one triangle and zero elsewhere; a cocycle
/// whenever `dim X ≤ 2`.
pub fn point_cochain(x: &SimplicialComplex, a: &CoeffGroup, triangle: &[usize], value: CoeffElement) -> Result<Cochain> {
    let s = crate::complex::Simplex::new(triangle.to_vec())?;
    Cochain::new(x, 2, a, [(s, value)])
}

/// Small helper: the integer `k` as an element of a cyclic or circle
/// group, for building test phases.
pub fn integer_phase(a: &CoeffGroup, k: i64) -> Result<CoeffElement> {
    a.normalize(CoeffElement::Integer(BigInt::from(k)))
}
