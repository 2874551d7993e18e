//! Powers of an ideal acting on a module, reductions, and an upper bound
//! for the reduction number `ρ_N(I) = min d(J)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ext_tor::SubquotientPresentation;
use crate::groebner::{contains, minimal_generators, minimal_generators_ascending, submodule_equal};
use crate::module::{BaseRing, GradedFreeModule, ModulePresentation, Vector};
use crate::poly::{GradedPoly, Ring};
use crate::resolution::prune_presentation;

/// Largest number of minimal generators whose subsets are all tried.
pub const MAX_SUBSET_GENERATORS: usize = 8;

/// A homogeneous ideal of `A` with minimal generators in descending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealData {
    generators: Vec<GradedPoly>,
    degrees: Vec<i64>,
    improper: bool,
}

fn unit_ambient() -> GradedFreeModule {
    GradedFreeModule::new(vec![0], BaseRing::Quotient)
}

impl IdealData {
    pub fn new(ring: &Ring, generators: Vec<GradedPoly>) -> Result<Self> {
        let amb = unit_ambient();
        let gens: Vec<Vector> = generators.iter().map(|g| vec![ring.reduce(g)]).collect();
        if contains(ring, &gens, &amb, &[ring.one()])? {
            return Ok(IdealData::unit(ring));
        }
        let mut generators = Vec::new();
        let mut degrees = Vec::new();
        for v in minimal_generators(ring, &gens, &amb)? {
            let g = v.into_iter().next().unwrap();
            degrees.push(g.degree().expect("minimal generators are nonzero"));
            generators.push(g);
        }
        Ok(IdealData {
            generators,
            degrees,
            improper: false,
        })
    }

    /// The improper ideal `A`.
    pub fn unit(ring: &Ring) -> Self {
        IdealData {
            generators: vec![ring.one()],
            degrees: vec![0],
            improper: true,
        }
    }

    pub fn zero() -> Self {
        IdealData {
            generators: Vec::new(),
            degrees: Vec::new(),
            improper: false,
        }
    }

    pub fn generators(&self) -> &[GradedPoly] {
        &self.generators
    }

    /// `d_1 ≥ ⋯ ≥ d_b`.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn is_improper(&self) -> bool {
        self.improper
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// `J ⊆ self`.
    pub fn contains_ideal(&self, ring: &Ring, j: &IdealData) -> Result<bool> {
        let amb = unit_ambient();
        let gens: Vec<Vector> = self.generators.iter().map(|g| vec![g.clone()]).collect();
        for g in &j.generators {
            if !contains(ring, &gens, &amb, std::slice::from_ref(g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `d(J)`: the largest degree of a minimal generator; 0 for `A` and `(0)`.
pub fn d_of(j: &IdealData) -> i64 {
    if j.improper {
        0
    } else {
        j.degrees.first().copied().unwrap_or(0)
    }
}

fn multiply(ring: &Ring, ideal: &IdealData, gens: &[Vector]) -> Vec<Vector> {
    let mut out = Vec::new();
    for y in &ideal.generators {
        for g in gens {
            let v: Vector = g.iter().map(|p| ring.reduce(&ring.mul(y, p))).collect();
            if !crate::module::vec_is_zero(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Generators of `I^n N` inside the generator module of `N`, chosen
/// minimally modulo the relations of `N`.
pub fn power_generators(ring: &Ring, ideal: &IdealData, n: usize, module: &ModulePresentation) -> Result<Vec<Vector>> {
    check_base(module)?;
    let amb = module.generators();
    let rels = module.relations();
    let mut gens: Vec<Vector> = (0..amb.rank()).map(|k| amb.basis_vector(ring, k)).collect();
    if ideal.improper {
        return minimal_generators_ascending(ring, &gens, amb, &rels);
    }
    for _ in 0..n {
        gens = minimal_generators_ascending(ring, &multiply(ring, ideal, &gens), amb, &rels)?;
    }
    if n == 0 {
        gens = minimal_generators_ascending(ring, &gens, amb, &rels)?;
    }
    Ok(gens)
}

fn check_base(module: &ModulePresentation) -> Result<()> {
    if module.base() != BaseRing::Quotient {
        return Err(Error::Precondition("ideal powers act on modules over A".into()));
    }
    Ok(())
}

/// `I^n N` as a module in its own right.
pub fn power_module(ring: &Ring, ideal: &IdealData, n: usize, module: &ModulePresentation) -> Result<ModulePresentation> {
    let gens = power_generators(ring, ideal, n, module)?;
    let rels = module.relations();
    let mut cycles = gens;
    cycles.extend(rels.iter().cloned());
    let sq = SubquotientPresentation::new(ring, module.generators().clone(), cycles, rels)?;
    Ok(sq.presentation().clone())
}

/// `N / I^n N`.
pub fn quotient_module(ring: &Ring, module: &ModulePresentation, ideal: &IdealData, n: usize) -> Result<ModulePresentation> {
    let mut rels = module.relations();
    rels.extend(power_generators(ring, ideal, n, module)?);
    let pres = ModulePresentation::from_relations(module.generators().clone(), &rels)?;
    prune_presentation(ring, &pres)
}

/// Outcome of a reduction search.
#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub candidate: IdealData,
    /// Smallest `n ≤ n_max` with `I^{n+1} N = J I^n N`.
    pub witness: Option<usize>,
}

/// Searches for `n ≤ n_max` with `I^{n+1} N = J I^n N`.
pub fn is_reduction(
    ring: &Ring,
    j: &IdealData,
    ideal: &IdealData,
    module: &ModulePresentation,
    n_max: usize,
) -> Result<ReductionCertificate> {
    if !ideal.contains_ideal(ring, j)? {
        return Err(Error::Precondition("the candidate is not contained in the ideal".into()));
    }
    let amb = module.generators();
    let rels = module.relations();
    let mut power = power_generators(ring, ideal, 0, module)?;
    for n in 0..=n_max {
        let next = minimal_generators_ascending(ring, &multiply(ring, ideal, &power), amb, &rels)?;
        let mut lhs = next.clone();
        lhs.extend(rels.iter().cloned());
        let mut rhs = multiply(ring, j, &power);
        rhs.extend(rels.iter().cloned());
        if submodule_equal(ring, &lhs, &rhs, amb)? {
            return Ok(ReductionCertificate {
                candidate: j.clone(),
                witness: Some(n),
            });
        }
        power = next;
    }
    Ok(ReductionCertificate {
        candidate: j.clone(),
        witness: None,
    })
}

/// A certified upper bound for `ρ_N(I)`.
#[derive(Clone, Debug)]
pub struct RhoBound {
    pub value: i64,
    pub witness: IdealData,
    pub witness_exponent: usize,
    /// True when the ideal had too many generators for the subset search.
    pub truncated: bool,
}

/// `min d(J)` over certified reductions among subsets of the minimal
/// generators of `I`, the supplied candidates, and `I` itself.
pub fn rho_upper(
    ring: &Ring,
    ideal: &IdealData,
    module: &ModulePresentation,
    candidates: &[IdealData],
    n_max: usize,
) -> Result<RhoBound> {
    let b = ideal.generators.len();
    let truncated = b > MAX_SUBSET_GENERATORS;
    let mut pool: Vec<IdealData> = Vec::new();
    if !truncated {
        for mask in 0u32..(1 << b) {
            let gens: Vec<GradedPoly> = (0..b)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| ideal.generators[k].clone())
                .collect();
            pool.push(if gens.is_empty() {
                IdealData::zero()
            } else {
                IdealData::new(ring, gens)?
            });
        }
    }
    pool.extend(candidates.iter().cloned());
    pool.push(ideal.clone());
    pool.sort_by_key(d_of);
    pool.dedup();
    let results: Vec<Result<ReductionCertificate>> = pool
        .par_iter()
        .map(|j| is_reduction(ring, j, ideal, module, n_max))
        .collect();
    let mut best: Option<RhoBound> = None;
    for r in results {
        let cert = r?;
        if let Some(n0) = cert.witness {
            let d = d_of(&cert.candidate);
            if best.as_ref().is_none_or(|b| d < b.value) {
                best = Some(RhoBound {
                    value: d,
                    witness: cert.candidate,
                    witness_exponent: n0,
                    truncated,
                });
            }
        }
    }
    best.ok_or_else(|| Error::Internal("the ideal is not a reduction of itself".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieces::hilbert_value;
    use crate::scalar::Field;

    fn node() -> (Ring, GradedPoly, GradedPoly) {
        let q = Ring::polynomial(2, Field::Prime(32003));
        let (x, y) = (q.var(0), q.var(1));
        let a = q.clone().with_quotient(vec![q.mul(&x, &y)]).unwrap();
        (a, x, y)
    }

    fn ideal_x_as_module(a: &Ring, y: &GradedPoly) -> ModulePresentation {
        let _ = a;
        ModulePresentation::from_relations(GradedFreeModule::new(vec![1], BaseRing::Quotient), &[vec![y.clone()]])
            .unwrap()
    }

    #[test]
    fn powers_on_the_node() {
        let (a, x, y) = node();
        let n = ideal_x_as_module(&a, &y);
        let i = IdealData::new(&a, vec![x.clone()]).unwrap();
        assert_eq!(d_of(&i), 1);
        for k in 0..4 {
            let p = power_module(&a, &i, k, &n).unwrap();
            assert_eq!(p.generators().twists(), &[k as i64 + 1]);
            let w = quotient_module(&a, &n, &i, k).unwrap();
            let dims: Vec<usize> = (0..6).map(|t| hilbert_value(&a, &w, t)).collect();
            let expect: Vec<usize> = (0..6).map(|t| usize::from(t >= 1 && t <= k as i64)).collect();
            assert_eq!(dims, expect);
        }
        let rho = rho_upper(&a, &i, &n, &[], 4).unwrap();
        assert_eq!(rho.value, 1);
        let none = is_reduction(&a, &IdealData::zero(), &i, &n, 5).unwrap();
        assert!(none.witness.is_none());
    }

    #[test]
    fn improper_and_principal_ideals() {
        let (a, x, y) = node();
        let n = ideal_x_as_module(&a, &y);
        let unit = IdealData::new(&a, vec![a.one(), x.clone()]).unwrap();
        assert!(unit.is_improper());
        assert_eq!(rho_upper(&a, &unit, &n, &[], 2).unwrap().value, 0);
        let q = Ring::polynomial(1, Field::Rational);
        let k1 = q.clone().with_quotient(vec![q.pow(&q.var(0), 5)]).unwrap();
        let free = ModulePresentation::free(GradedFreeModule::new(vec![0], BaseRing::Quotient));
        let i = IdealData::new(&k1, vec![k1.pow(&k1.var(0), 2), k1.pow(&k1.var(0), 3)]).unwrap();
        assert_eq!(i.degrees(), &[2]);
        // x^2 is nilpotent modulo x^5, so the zero ideal is already a reduction.
        assert_eq!(rho_upper(&k1, &i, &free, &[], 4).unwrap().value, 0);
    }

    #[test]
    fn principal_ideal_over_a_polynomial_ring() {
        let q = Ring::polynomial(1, Field::Rational);
        let free = ModulePresentation::free(GradedFreeModule::new(vec![0], BaseRing::Quotient));
        let i = IdealData::new(&q, vec![q.pow(&q.var(0), 2)]).unwrap();
        let rho = rho_upper(&q, &i, &free, &[], 3).unwrap();
        assert_eq!((rho.value, rho.witness_exponent), (2, 0));
    }
}
