//! Seeded randomized consistency checks shared by the `selfcheck` command
//! and the test suites.

use serde::Serialize;

use crate::error::Result;
use crate::module::{BaseRing, GradedFreeModule, ModulePresentation};
use crate::poly::Ring;
use crate::random::{random_module, random_short_exact_sequence, random_trigraded, rng};
use crate::regularity::{betti_oracle, betti_over_q, regularity, short_exact_inequalities};
use crate::scalar::Field;
use crate::trigraded::{component_bound, component_twists, max_twist_bound_check};

/// Degree window for oracle comparisons.
pub const ORACLE_WINDOW: i64 = 8;

/// Grid side for trigraded checks.
pub const TRIGRADED_GRID: i64 = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub cases: usize,
    pub failures: usize,
}

impl CheckCount {
    fn record(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub oracle: CheckCount,
    pub short_exact: CheckCount,
    pub trigraded: CheckCount,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.oracle.passed() && self.short_exact.passed() && self.trigraded.passed()
    }
}

/// `K[X, Y]` over the default prime field.
pub fn plane() -> Ring {
    Ring::polynomial(2, Field::default())
}

/// Compares the Koszul oracle with the minimal resolution on `count` random
/// modules over `K[X, Y]` with at most two generators and two relations of
/// degree at most 3.
pub fn oracle_agreement(seed: u64, count: usize) -> Result<CheckCount> {
    let ring = plane();
    let mut r = rng(seed);
    let mut out = CheckCount::default();
    for _ in 0..count {
        let m = random_module(&mut r, &ring, BaseRing::Polynomial, 2, 2, 3)?;
        let oracle = betti_oracle(&ring, &m, ORACLE_WINDOW)?.table;
        let full = betti_over_q(&ring, &m)?.restricted(ORACLE_WINDOW);
        out.record(oracle.entries().eq(full.entries()));
    }
    Ok(out)
}

/// Checks the regularity inequalities for short exact sequences on `count`
/// random sequences over `ring`.
pub fn short_exact_sequences(ring: &Ring, seed: u64, count: usize) -> Result<CheckCount> {
    let mut r = rng(seed);
    let mut out = CheckCount::default();
    for _ in 0..count {
        let s = random_short_exact_sequence(&mut r, ring, 3)?;
        let regs = (
            regularity(ring, &s.sub)?,
            regularity(ring, &s.middle)?,
            regularity(ring, &s.quotient)?,
        );
        out.record(short_exact_inequalities(regs.0, regs.1, regs.2).iter().all(|&b| b));
    }
    Ok(out)
}

/// On `count` random trigraded instances: the twist bound on every level
/// over a `TRIGRADED_GRID²` grid, and for the level-0 generators taken as a
/// free `Q`-module, regularity equal to the maximal twist.
pub fn trigraded_bounds(seed: u64, count: usize) -> Result<CheckCount> {
    let mut r = rng(seed);
    let mut out = CheckCount::default();
    let q = Ring::polynomial(1, Field::default());
    for _ in 0..count {
        let (spec, data) = random_trigraded(&mut r);
        let k = crate::trigraded::bound_constants(&spec, &data)?;
        let mut ok = true;
        for i in 0..TRIGRADED_GRID {
            for n in 0..TRIGRADED_GRID {
                for l in 0..data.levels.len() {
                    ok &= max_twist_bound_check(&spec, &data, l, i, n);
                    if let Some(m) = component_twists(&spec, &data, l, i, n).into_iter().max() {
                        ok &= m - l as i64 <= component_bound(&spec, &k, i, n);
                    }
                }
            }
        }
        let tw = component_twists(&spec, &data, 0, 2, 2);
        let free = ModulePresentation::free(GradedFreeModule::new(tw.clone(), BaseRing::Polynomial));
        let reg = regularity(&q, &free)?;
        ok &= reg.finite() == tw.iter().copied().max();
        out.record(ok);
    }
    Ok(out)
}

/// Runs all three families with `count` cases each; short exact sequences
/// are drawn over `K[X, Y] / (X^2, Y^3)`.
pub fn selfcheck(seed: u64, count: usize) -> Result<SelfcheckReport> {
    let ring = plane();
    let (x, y) = (ring.var(0), ring.var(1));
    let ci = ring.clone().with_quotient(vec![ring.pow(&x, 2), ring.pow(&y, 3)])?;
    Ok(SelfcheckReport {
        seed,
        oracle: oracle_agreement(seed, count)?,
        short_exact: short_exact_sequences(&ci, seed, count)?,
        trigraded: trigraded_bounds(seed, count)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selfcheck_passes() {
        let r = selfcheck(7, 5).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.oracle.cases, 5);
    }
}
