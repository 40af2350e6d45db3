//! Seeded generators for the randomized suites: mapped surfaces,
//! cobordisms, objects, cocycles and surgery sequences.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{CoeffElement, CoeffGroup};
use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::error::Result;
use crate::homology::{coboundary, degree2_classes, homology, Cochain};
use crate::surface::{
    barycentric_subdivision, identity_cylinder, local_surgery_with_inverse, plant_constant_disk,
    surface_from_cycle, xsurface_from_triangles, SurgerySite, XObject, XSurface,
};

pub type TestRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// `HQFT_SEED` when set and numeric, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("HQFT_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng_from_seed(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn is_simplex(x: &SimplicialComplex, images: &[usize]) -> bool {
    let mut s = images.to_vec();
    s.sort_unstable();
    s.dedup();
    Simplex::new(s).is_ok_and(|s| x.contains(&s))
}

/// Vertex neighbourhoods in the 1-skeleton, each vertex included.
fn closed_neighbours(x: &SimplicialComplex) -> Vec<Vec<usize>> {
    let mut n: Vec<BTreeSet<usize>> = (0..x.vertex_count()).map(|v| BTreeSet::from([v])).collect();
    for e in x.simplices(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        n[a].insert(b);
        n[b].insert(a);
    }
    n.into_iter().map(|s| s.into_iter().collect()).collect()
}

pub fn random_element(rng: &mut TestRng, a: &CoeffGroup) -> CoeffElement {
    match a {
        CoeffGroup::Cyclic(n) => CoeffElement::Residue(BigInt::from(rng.gen_range(0..*n))),
        CoeffGroup::RationalCircle => {
            let d: i64 = rng.gen_range(1..=12);
            let k: i64 = rng.gen_range(0..d);
            a.parse_element(&format!("{k}/{d}")).expect("valid rational")
        }
        CoeffGroup::FreeInt => CoeffElement::Integer(BigInt::from(rng.gen_range(-3i64..=3))),
        CoeffGroup::DirectSum(parts) => {
            CoeffElement::Tuple(parts.iter().map(|p| random_element(rng, p)).collect())
        }
    }
}

/// A random cochain of the given degree.
pub fn random_cochain(rng: &mut TestRng, x: &SimplicialComplex, degree: usize, a: &CoeffGroup) -> Cochain {
    let values: Vec<CoeffElement> = (0..x.count(degree)).map(|_| random_element(rng, a)).collect();
    Cochain::from_dense(x, degree, a, values)
}

/// A random 2-cocycle. On complexes of dimension at most two every
/// 2-cochain is a cocycle; otherwise a random class representative (finite
/// `A`) plus a random coboundary.
pub fn random_cocycle(rng: &mut TestRng, x: &SimplicialComplex, a: &CoeffGroup) -> Result<Cochain> {
    if x.dim() <= 2 {
        return Ok(random_cochain(rng, x, 2, a));
    }
    let base = match degree2_classes(x, a, 4096)? {
        Some(classes) => classes.choose(rng).expect("at least the zero class").clone(),
        None => Cochain::zero(2, a),
    };
    base.add(&coboundary(x, &random_cochain(rng, x, 1, a)))
}

/// A random integer combination of `H₂` generators with coefficients in
/// `-2..=2`.
pub fn random_cycle(rng: &mut TestRng, x: &SimplicialComplex) -> Result<Chain> {
    if x.dim() < 2 {
        return Ok(Chain::zero(2));
    }
    let h2 = homology(x, 2)?;
    let mut y = Chain::zero(2);
    for g in h2.generators() {
        y = y.add_scaled(g, rng.gen_range(-2..=2));
    }
    Ok(y)
}

/// Images for the vertices of `domain` making every triangle land on a
/// simplex of `x`; `None` when the search budget runs out.
pub fn random_map(
    rng: &mut TestRng,
    domain: &SimplicialComplex,
    x: &SimplicialComplex,
    budget: usize,
) -> Option<Vec<usize>> {
    let n = domain.vertex_count();
    let mut tris_at: Vec<Vec<[usize; 3]>> = vec![Vec::new(); n];
    for t in domain.simplices(2) {
        let v = t.vertices();
        let tv = [v[0], v[1], v[2]];
        for &a in v {
            tris_at[a].push(tv);
        }
    }
    let mut nodes = 0usize;
    let mut images: Vec<Option<usize>> = vec![None; n];
    let all: Vec<usize> = (0..x.vertex_count()).collect();
    fn go(
        v: usize,
        rng: &mut TestRng,
        images: &mut Vec<Option<usize>>,
        tris_at: &[Vec<[usize; 3]>],
        x: &SimplicialComplex,
        all: &[usize],
        nodes: &mut usize,
        budget: usize,
    ) -> bool {
        if v == images.len() {
            return true;
        }
        let mut cands = all.to_vec();
        cands.shuffle(rng);
        for c in cands {
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            images[v] = Some(c);
            let ok = tris_at[v].iter().all(|t| {
                let im: Vec<usize> = t.iter().filter_map(|&w| images[w]).collect();
                is_simplex(x, &im)
            });
            if ok && go(v + 1, rng, images, tris_at, x, all, nodes, budget) {
                return true;
            }
        }
        images[v] = None;
        false
    }
    go(0, rng, &mut images, &tris_at, x, &all, &mut nodes, budget)
        .then(|| images.into_iter().map(|i| i.expect("assigned")).collect())
}

/// Oriented surface templates: the tetrahedral sphere and the 7-vertex
/// torus, each once barycentrically subdivided.
fn templates() -> &'static [(Vec<[usize; 3]>, usize)] {
    static TEMPLATES: OnceLock<Vec<(Vec<[usize; 3]>, usize)>> = OnceLock::new();
    TEMPLATES.get_or_init(build_templates)
}

fn build_templates() -> Vec<(Vec<[usize; 3]>, usize)> {
    let mut out = Vec::new();
    for x in [crate::fixtures::sphere(), crate::fixtures::torus()] {
        let x = Arc::new(x);
        let h2 = homology(&x, 2).expect("surface homology");
        let g = surface_from_cycle(&x, &h2.generators()[0]).expect("surface");
        let sd = barycentric_subdivision(&g).expect("subdivision");
        out.push((sd.surface().oriented_triangles(), sd.surface().complex().vertex_count()));
    }
    out
}

/// A closed mapped surface: either a realisation of a random `H₂` class,
/// or a random map out of a sphere or torus.
pub fn random_closed_surface(rng: &mut TestRng, x: &Arc<SimplicialComplex>) -> Result<XSurface> {
    if x.dim() >= 2 && rng.gen_bool(0.4) {
        let y = random_cycle(rng, x)?;
        if !y.is_zero() {
            return surface_from_cycle(x, &y);
        }
    }
    let (tris, n) = templates().choose(rng).expect("two templates").clone();
    let domain = crate::complex::build_complex(
        &tris
            .iter()
            .map(|t| {
                let mut v = t.to_vec();
                v.sort_unstable();
                v
            })
            .collect::<Vec<_>>(),
    )?;
    let images = random_map(rng, &domain, x, 20_000)
        .unwrap_or_else(|| vec![rng.gen_range(0..x.vertex_count()); n]);
    xsurface_from_triangles(x, tris, images, Vec::new(), Vec::new())
}

/// A random closed walk of length 3 to 6 in the 1-skeleton (steps may
/// stay put).
pub fn random_circle(rng: &mut TestRng, x: &SimplicialComplex) -> Vec<usize> {
    let nb = closed_neighbours(x);
    for _ in 0..200 {
        let len = rng.gen_range(3..=6);
        let mut walk = vec![rng.gen_range(0..x.vertex_count())];
        for _ in 1..len {
            let last = *walk.last().expect("non-empty");
            walk.push(*nb[last].choose(rng).expect("contains itself"));
        }
        if nb[*walk.last().expect("non-empty")].contains(&walk[0]) {
            return walk;
        }
    }
    vec![0; 3]
}

pub fn random_object(rng: &mut TestRng, x: &SimplicialComplex, circles: usize) -> XObject {
    let cs = (0..circles).map(|_| random_circle(rng, x)).collect();
    XObject::new(x, cs).expect("walks are valid circles")
}

/// A row over `lower` such that the prism between them maps simplicially,
/// also compatible with `upper` when given.
fn next_row(
    rng: &mut TestRng,
    x: &SimplicialComplex,
    nb: &[Vec<usize>],
    lower: &[usize],
    upper: Option<&[usize]>,
) -> Option<Vec<usize>> {
    let n = lower.len();
    let mut row: Vec<usize> = Vec::with_capacity(n);
    let mut nodes = 0usize;
    fn prism_ok(x: &SimplicialComplex, p: &[usize], q: &[usize], i: usize) -> bool {
        let j = (i + 1) % p.len();
        is_simplex(x, &[p[i], p[j], q[j]]) && is_simplex(x, &[p[i], q[j], q[i]])
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        rng: &mut TestRng,
        x: &SimplicialComplex,
        nb: &[Vec<usize>],
        lower: &[usize],
        upper: Option<&[usize]>,
        row: &mut Vec<usize>,
        nodes: &mut usize,
    ) -> bool {
        let n = lower.len();
        if i == n {
            return true;
        }
        let mut cands = nb[lower[i]].clone();
        cands.shuffle(rng);
        for c in cands {
            *nodes += 1;
            if *nodes > 5_000 {
                return false;
            }
            row.push(c);
            let mut ok = true;
            // prism squares whose two upper corners are both assigned
            let checks: Vec<usize> = if i == n - 1 { vec![i - 1, i] } else if i > 0 { vec![i - 1] } else { vec![] };
            let q = pad(row, n);
            for k in checks {
                ok &= prism_ok(x, lower, &q, k);
                if let Some(u) = upper {
                    ok &= prism_ok(x, &q, u, k);
                }
            }
            if ok && go(i + 1, rng, x, nb, lower, upper, row, nodes) {
                return true;
            }
            row.pop();
        }
        false
    }
    // `pad` fills unassigned slots so index arithmetic stays in range; only
    // assigned slots are read by the checks above
    fn pad(row: &[usize], n: usize) -> Vec<usize> {
        let mut r = row.to_vec();
        r.resize(n, usize::MAX);
        r
    }
    go(0, rng, x, nb, lower, upper, &mut row, &mut nodes).then_some(row)
}

/// A cylinder over `obj` with `rows` random intermediate rows. With
/// `back_to_start` the top row is `obj` again, giving an endomorphism.
pub fn random_cylinder(
    rng: &mut TestRng,
    x: &Arc<SimplicialComplex>,
    obj: &XObject,
    rows: usize,
    back_to_start: bool,
) -> Result<XSurface> {
    let nb = closed_neighbours(x);
    let mut tris = Vec::new();
    let mut images = Vec::new();
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let prism_ok = |p: &[usize], q: &[usize]| {
        (0..p.len()).all(|i| {
            let j = (i + 1) % p.len();
            is_simplex(x, &[p[i], p[j], q[j]]) && is_simplex(x, &[p[i], q[j], q[i]])
        })
    };
    for c in obj.circles() {
        // retry until every prism maps to simplices; constant layers always do
        let mut layers = vec![c.clone(), c.clone()];
        for _ in 0..8 {
            let mut trial: Vec<Vec<usize>> = vec![c.clone()];
            for r in 0..rows {
                let last = trial.last().expect("non-empty").clone();
                let target = (back_to_start && r + 1 == rows).then_some(c.as_slice());
                trial.push(next_row(rng, x, &nb, &last, target).unwrap_or(last));
            }
            if back_to_start {
                trial.push(c.clone());
            }
            if trial.len() == 1 {
                trial.push(c.clone());
            }
            if trial.windows(2).all(|w| prism_ok(&w[0], &w[1])) {
                layers = trial;
                break;
            }
        }
        let ids: Vec<Vec<usize>> = layers
            .iter()
            .map(|l| {
                let base = images.len();
                images.extend(l.iter().copied());
                (base..base + l.len()).collect()
            })
            .collect();
        for w in ids.windows(2) {
            let (p, q) = (&w[0], &w[1]);
            let n = p.len();
            for i in 0..n {
                let j = (i + 1) % n;
                tris.push([p[i], p[j], q[j]]);
                tris.push([p[i], q[j], q[i]]);
            }
        }
        inputs.push(ids[0].clone());
        outputs.push(ids.last().expect("two layers").clone());
    }
    xsurface_from_triangles(x, tris, images, inputs, outputs)
}

/// A closed surface with the open stars of two far-apart vertices
/// removed: input the reversed link of one, output the link of the other.
pub fn holed_surface(rng: &mut TestRng, g: &XSurface) -> Result<Option<XSurface>> {
    let cx = g.surface().complex();
    let n = cx.vertex_count();
    if n == 0 {
        return Ok(None);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in cx.simplices(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj[a].push(b);
        adj[b].push(a);
    }
    let u = rng.gen_range(0..n);
    let mut dist = vec![usize::MAX; n];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(a) = queue.pop_front() {
        for &b in &adj[a] {
            if dist[b] == usize::MAX {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    let far: Vec<usize> = (0..n).filter(|&v| dist[v] != usize::MAX && dist[v] >= 3).collect();
    let Some(&v) = far.choose(rng) else {
        return Ok(None);
    };
    let tris = g.surface().oriented_triangles();
    let link = |w: usize| -> Vec<usize> {
        let mut next = BTreeMap::new();
        for t in &tris {
            if let Some(k) = t.iter().position(|&a| a == w) {
                next.insert(t[(k + 1) % 3], t[(k + 2) % 3]);
            }
        }
        let start = *next.keys().next().expect("vertex in a triangle");
        let mut c = vec![start];
        let mut a = next[&start];
        while a != start {
            c.push(a);
            a = next[&a];
        }
        c
    };
    let mut input = link(u);
    input.reverse();
    let output = link(v);
    let kept: Vec<[usize; 3]> = tris
        .iter()
        .filter(|t| !t.contains(&u) && !t.contains(&v))
        .copied()
        .collect();
    xsurface_from_triangles(
        g.target(),
        kept,
        g.map().vertex_map().to_vec(),
        vec![input],
        vec![output],
    )
    .map(Some)
}

/// Plants two constant disks at a common image and joins them by
/// surgery. Returns the result and the annulus site that undoes it.
pub fn random_disk_surgery(rng: &mut TestRng, g: &XSurface) -> Result<Option<(XSurface, SurgerySite)>> {
    let cx = g.surface().complex();
    if cx.count(2) == 0 {
        return Ok(None);
    }
    let t1 = cx.simplices(2).choose(rng).expect("non-empty").clone();
    let image = g.map().image_of_vertex(*t1.vertices().choose(rng).expect("three"));
    let (g1, d1) = plant_constant_disk(g, &t1, image)?;
    let candidates: Vec<Simplex> = g1
        .surface()
        .complex()
        .simplices(2)
        .iter()
        .filter(|t| !d1.contains(t))
        .filter(|t| t.vertices().iter().any(|&v| g1.map().image_of_vertex(v) == image))
        .cloned()
        .collect();
    let t2 = candidates.choose(rng).expect("the ring triangles qualify").clone();
    let (g2, d2) = plant_constant_disk(&g1, &t2, image)?;
    let site = SurgerySite::TwoDisks { first: d1, second: d2 };
    local_surgery_with_inverse(&g2, &site).map(Some)
}

/// `steps` local surgeries: joins of planted disk pairs, each possibly
/// followed later by the inverse split along the annulus it created.
pub fn random_surgeries(rng: &mut TestRng, g: &XSurface, steps: usize) -> Result<XSurface> {
    let mut cur = g.clone();
    let mut pending: Option<SurgerySite> = None;
    for _ in 0..steps {
        match pending.take() {
            Some(site) if rng.gen_bool(0.5) => {
                cur = local_surgery_with_inverse(&cur, &site)?.0;
            }
            _ => {
                if let Some((h, inv)) = random_disk_surgery(rng, &cur)? {
                    cur = h;
                    pending = Some(inv);
                }
            }
        }
    }
    Ok(cur)
}

/// A cobordism out of `obj`: a random cylinder, optionally joined with a
/// random closed surface, then 0–2 surgeries.
pub fn random_cobordism_from(rng: &mut TestRng, x: &Arc<SimplicialComplex>, obj: &XObject) -> Result<XSurface> {
    let rows = rng.gen_range(1..=3);
    let mut g = random_cylinder(rng, x, obj, rows, false)?;
    if rng.gen_bool(0.5) {
        g = g.disjoint_union(&random_closed_surface(rng, x)?)?;
    }
    let steps = rng.gen_range(0..=2);
    random_surgeries(rng, &g, steps)
}

/// A cobordism between random objects, sometimes with a holed surface
/// (a genuine handle between an input and an output circle).
pub fn random_cobordism(rng: &mut TestRng, x: &Arc<SimplicialComplex>) -> Result<XSurface> {
    let circles = rng.gen_range(1..=2);
    let obj = random_object(rng, x, circles);
    let mut g = random_cobordism_from(rng, x, &obj)?;
    if rng.gen_bool(0.5) {
        let closed = random_closed_surface(rng, x)?;
        if let Some(h) = holed_surface(rng, &closed)? {
            g = g.disjoint_union(&h)?;
        }
    }
    Ok(g)
}

/// An endomorphism of `obj`: a cylinder returning to `obj`, possibly with
/// a closed surface attached by surgery.
pub fn random_endomorphism(rng: &mut TestRng, x: &Arc<SimplicialComplex>, obj: &XObject) -> Result<XSurface> {
    let rows = rng.gen_range(1..=3);
    let mut g = random_cylinder(rng, x, obj, rows, true)?;
    if rng.gen_bool(0.6) {
        g = g.disjoint_union(&random_closed_surface(rng, x)?)?;
    }
    let steps = rng.gen_range(0..=3);
    random_surgeries(rng, &g, steps)
}

/// The identity cobordism, exposed for symmetry with the generators.
pub fn identity(x: &Arc<SimplicialComplex>, obj: &XObject) -> Result<XSurface> {
    identity_cylinder(x, obj)
}
