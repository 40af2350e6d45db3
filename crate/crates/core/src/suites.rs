//! Randomized property suites over a base complex. Each returns a
//! [`Report`] with one aggregated item per property; a failing item
//! carries the first counterexample found.

use std::sync::Arc;

use rand::Rng;

use crate::coeff::CoeffGroup;
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::hqft::{tau, Hqft};
use crate::random::{
    random_closed_surface, random_cobordism, random_cobordism_from, random_cocycle,
    random_element, random_endomorphism, random_surgeries, rng_from_seed, TestRng,
};
use crate::report::Report;
use crate::surface::{constant_sphere, identity_cylinder, surface_from_cycle, swap_cylinder};

/// Pass count and first failure for one property.
#[derive(Default)]
struct Tally {
    passed: usize,
    total: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn add(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(witness());
        }
    }

    fn report(self, rep: &mut Report, check: &str, subject: &str) {
        rep.record(
            check,
            subject,
            self.passed == self.total && self.total > 0,
            format!("{0}/{0}", self.total),
            format!("{}/{}", self.passed, self.total),
            self.first_failure,
        );
    }
}

fn theory(rng: &mut TestRng, x: &Arc<SimplicialComplex>, a: &CoeffGroup) -> Result<Hqft> {
    tau(x, &random_cocycle(rng, x, a)?)
}

/// Closed holonomy is unchanged by local surgery, by adding constant
/// spheres, and by replacing a surface with the realisation of its
/// pushforward cycle.
pub fn holonomy_invariance(
    x: &Arc<SimplicialComplex>,
    a: &CoeffGroup,
    instances: usize,
    seed: u64,
) -> Result<Report> {
    let mut rng = rng_from_seed(seed);
    let mut rep = Report::new(format!("holonomy invariance over {a}"));
    let (mut surgery, mut spheres, mut realised) = (Tally::default(), Tally::default(), Tally::default());
    for _ in 0..instances {
        let h = theory(&mut rng, x, a)?;
        let g = random_closed_surface(&mut rng, x)?;
        let base = h.holonomy(&g)?;

        let steps = rng.gen_range(1..=5);
        let s = random_surgeries(&mut rng, &g, steps)?;
        let v = h.holonomy(&s)?;
        surgery.add(v == base, || {
            format!("{steps} surgeries moved holonomy {base} to {v} (census {:?})", s.census())
        });

        let vertex = rng.gen_range(0..x.vertex_count());
        let with_sphere = g.disjoint_union(&constant_sphere(x, vertex)?)?;
        let v = h.holonomy(&with_sphere)?;
        spheres.add(v == base, || format!("sphere at {vertex} moved holonomy {base} to {v}"));

        let r = surface_from_cycle(x, &g.pushforward())?;
        let v = h.holonomy(&r)?;
        realised.add(v == base, || format!("realised cycle has holonomy {v}, surface {base}"));
    }
    surgery.report(&mut rep, "surgery", "1-5 random local surgeries");
    spheres.report(&mut rep, "constant-sphere", "disjoint union with a constant sphere");
    realised.report(&mut rep, "realisation", "surface of the pushforward cycle");
    Ok(rep)
}

/// Evaluation respects gluing, disjoint union and the symmetry; the
/// trace identity and reflection cancellation hold.
pub fn functoriality(
    x: &Arc<SimplicialComplex>,
    a: &CoeffGroup,
    instances: usize,
    seed: u64,
) -> Result<Report> {
    let mut rng = rng_from_seed(seed);
    let mut rep = Report::new(format!("functoriality over {a}"));
    let mut glue = Tally::default();
    let mut union = Tally::default();
    let mut swap = Tally::default();
    let mut identity = Tally::default();
    let mut trace = Tally::default();
    let mut reflect = Tally::default();
    let mut there_and_back = Tally::default();
    for _ in 0..instances {
        let h = theory(&mut rng, x, a)?;
        let g1 = random_cobordism(&mut rng, x)?;
        let g2 = random_cobordism_from(&mut rng, x, &g1.output_object())?;
        let e1 = h.fiber_element(&g1.input_object(), random_element(&mut rng, a))?;

        let whole = h.evaluate(&g1.glue(&g2)?, &e1)?;
        let steps = h.evaluate(&g2, &h.evaluate(&g1, &e1)?)?;
        glue.add(whole == steps, || format!("glued gives {whole}, stepwise {steps}"));

        let g3 = random_cobordism(&mut rng, x)?;
        let e3 = h.fiber_element(&g3.input_object(), random_element(&mut rng, a))?;
        let joint = h.evaluate(&g1.disjoint_union(&g3)?, &e1.tensor(&e3, a))?;
        let apart = h.evaluate(&g1, &e1)?.tensor(&h.evaluate(&g3, &e3)?, a);
        union.add(joint == apart, || format!("union gives {joint}, factors give {apart}"));

        let left = g1
            .disjoint_union(&g3)?
            .glue(&swap_cylinder(x, &g1.output_object(), &g3.output_object())?)?;
        let right = swap_cylinder(x, &g1.input_object(), &g3.input_object())?.glue(&g3.disjoint_union(&g1)?)?;
        let lv = h.evaluate(&left, &e1.tensor(&e3, a))?;
        let rv = h.evaluate(&right, &e1.tensor(&e3, a))?;
        let swapped = h.evaluate(&g3, &e3)?.tensor(&h.evaluate(&g1, &e1)?, a);
        swap.add(lv == rv && lv == swapped, || {
            format!("swap square: {lv} vs {rv}, expected {swapped}")
        });

        let id = h.evaluate(&identity_cylinder(x, &e1.object)?, &e1)?;
        identity.add(id == e1, || format!("identity cylinder sent {e1} to {id}"));

        let endo = random_endomorphism(&mut rng, x, &e1.object)?;
        let moved = h.evaluate(&endo, &e1)?;
        let shift = a.sub(&moved.phase, &e1.phase);
        let closed = h.holonomy(&endo.close_up()?)?;
        trace.add(shift == closed, || format!("endomorphism shifts by {shift}, its closure has holonomy {closed}"));

        let c = random_closed_surface(&mut rng, x)?;
        let v = h.holonomy(&c.disjoint_union(&c.reverse())?)?;
        reflect.add(a.is_zero(&v), || format!("g ⊔ reverse(g) has holonomy {v}"));

        let back = h.evaluate(&g1.glue(&g1.reverse())?, &e1)?;
        there_and_back.add(back == e1, || format!("g then reverse(g) sent {e1} to {back}"));
    }
    glue.report(&mut rep, "gluing", "E(g2 ∘ g1) = E(g2) E(g1)");
    union.report(&mut rep, "disjoint-union", "E(g1 ⊔ g3) = E(g1) ⊗ E(g3)");
    swap.report(&mut rep, "symmetry", "swap cylinder square");
    identity.report(&mut rep, "identity", "identity cylinder acts trivially");
    trace.report(&mut rep, "trace", "closing an endomorphism adds its holonomy");
    reflect.report(&mut rep, "reflection", "holonomy(g ⊔ reverse g) = 0");
    there_and_back.report(&mut rep, "inverse", "g then reverse(g) acts trivially");
    Ok(rep)
}

/// The holonomy character is a homomorphism from theories under tensor
/// product, and `H ⊗ H⁻¹` is isomorphic to the trivial theory.
pub fn group_structure(
    x: &Arc<SimplicialComplex>,
    a: &CoeffGroup,
    instances: usize,
    seed: u64,
) -> Result<Report> {
    let mut rng = rng_from_seed(seed);
    let mut rep = Report::new(format!("group structure over {a}"));
    let (mut additive, mut negation, mut trivialised) = (Tally::default(), Tally::default(), Tally::default());
    let trivial = Hqft::trivial(x, a);
    for _ in 0..instances {
        let h1 = theory(&mut rng, x, a)?;
        let h2 = theory(&mut rng, x, a)?;
        let c1 = h1.holonomy_character()?;
        let c2 = h2.holonomy_character()?;
        let c12 = h1.tensor(&h2)?.holonomy_character()?;
        let sums: Vec<_> = c1.values.iter().zip(&c2.values).map(|(u, v)| a.add(u, v)).collect();
        additive.add(c12.values == sums, || format!("character of tensor {:?}, sum {:?}", c12.values, sums));

        let inv = h1.inverse().holonomy_character()?;
        let negs: Vec<_> = c1.values.iter().map(|v| a.neg(v)).collect();
        negation.add(inv.values == negs, || format!("character of inverse {:?}, negation {:?}", inv.values, negs));

        let both = h1.tensor(&h1.inverse())?;
        let ok = match both.isomorphism_to(&trivial)? {
            Some(psi) => {
                let g = random_cobordism(&mut rng, x)?;
                let e = both.fiber_element(&g.input_object(), random_element(&mut rng, a))?;
                let c = random_closed_surface(&mut rng, x)?;
                psi.verify_naturality(&g, &e)? && psi.verify_closed(&c)? && psi.verify_monoidality(&e, &e)?
            }
            None => false,
        };
        trivialised.add(ok, || "no verified isomorphism from H ⊗ H⁻¹ to the trivial theory".into());
    }
    additive.report(&mut rep, "tensor", "character(H1 ⊗ H2) = character(H1) + character(H2)");
    negation.report(&mut rep, "inverse", "character(H⁻¹) = −character(H)");
    trivialised.report(&mut rep, "trivialisation", "H ⊗ H⁻¹ ≅ trivial via an exhibited Ψ");
    Ok(rep)
}
