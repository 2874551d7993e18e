//! Seeded random instances for self-checks and property tests.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ext_tor::SubquotientPresentation;
use crate::module::{BaseRing, GradedFreeModule, ModulePresentation, Vector};
use crate::poly::{GradedPoly, Monomial, Ring};
use crate::trigraded::{TrigradedFreeData, TrigradedRingSpec};

pub use rand::SeedableRng;
pub type SeededRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20231;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random homogeneous polynomial of degree `deg` with small coefficients;
/// may be zero.
pub fn random_poly(rng: &mut SeededRng, ring: &Ring, deg: i64) -> GradedPoly {
    if deg < 0 {
        return GradedPoly::zero();
    }
    let mut terms = Vec::new();
    for m in Monomial::all_of_degree(ring.nvars(), deg) {
        if rng.gen_bool(0.5) {
            let c = ring.field().from_i64(rng.gen_range(-3..=3));
            if !c.is_zero() {
                terms.push((m, c));
            }
        }
    }
    ring.poly(terms).expect("terms share a degree")
}

/// A random homogeneous element of `f` of degree `deg`.
pub fn random_vector(rng: &mut SeededRng, ring: &Ring, f: &GradedFreeModule, deg: i64) -> Vector {
    f.twists().iter().map(|a| random_poly(rng, ring, deg - a)).collect()
}

/// A random cokernel with at most `max_gens` generators in degrees `0..=1`
/// and at most `max_rels` relations of degree at most `max_deg`.
pub fn random_module(
    rng: &mut SeededRng,
    ring: &Ring,
    base: BaseRing,
    max_gens: usize,
    max_rels: usize,
    max_deg: i64,
) -> Result<ModulePresentation> {
    let r = rng.gen_range(1..=max_gens);
    let mut twists: Vec<i64> = (0..r).map(|_| rng.gen_range(0..=1)).collect();
    twists.sort_unstable();
    let f = GradedFreeModule::new(twists, base);
    let nrel = rng.gen_range(0..=max_rels);
    let rels: Vec<Vector> = (0..nrel)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            random_vector(rng, ring, &f, d)
        })
        .collect();
    ModulePresentation::from_relations(f, &rels)
}

/// `0 → V/U → F/U → F/V → 0` for random `U ⊆ V ⊆ F`.
pub struct ShortExactSequence {
    pub sub: ModulePresentation,
    pub middle: ModulePresentation,
    pub quotient: ModulePresentation,
}

pub fn random_short_exact_sequence(rng: &mut SeededRng, ring: &Ring, max_deg: i64) -> Result<ShortExactSequence> {
    let middle = random_module(rng, ring, BaseRing::Quotient, 2, 2, max_deg)?;
    let f = middle.generators().clone();
    let u = middle.relations();
    let extra: Vec<Vector> = (0..rng.gen_range(1..=2))
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            random_vector(rng, ring, &f, d)
        })
        .collect();
    let mut v = u.clone();
    v.extend(extra);
    let quotient = ModulePresentation::from_relations(f.clone(), &v)?;
    let sub = SubquotientPresentation::new(ring, f, v, u)?.presentation().clone();
    Ok(ShortExactSequence { sub, middle, quotient })
}

/// Random trigraded data: up to four generators per level, multidegrees in
/// `[0, 3]^3`, and degree lists with entries in `[-3, 3]`.
pub fn random_trigraded(rng: &mut SeededRng) -> (TrigradedRingSpec, TrigradedFreeData) {
    let b = rng.gen_range(1..=3);
    let c = rng.gen_range(1..=3);
    let h = (0..b).map(|_| rng.gen_range(-3..=3)).collect();
    let g = (0..c).map(|_| rng.gen_range(-3..=3)).collect();
    let spec = TrigradedRingSpec::new(rng.gen_range(0..=2), h, g);
    let nlev = rng.gen_range(1..=spec.total_dimension() + 1);
    let levels = (0..nlev)
        .map(|l| {
            let k = rng.gen_range(usize::from(l == 0)..=4);
            (0..k)
                .map(|_| (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3)))
                .collect()
        })
        .collect();
    (spec, TrigradedFreeData { levels })
}
