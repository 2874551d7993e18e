//! Twist calculus for `Z^3`-graded free modules over
//! `S = Q[Y_1..Y_b, Z_1..Z_c]` with `deg Y_j = (0, 1, h_j)` and
//! `deg Z_k = (1, 0, g_k)`.
//!
//! A generator `(b1, b2, a)` of `F_l` contributes to the `(i, n)` component
//! the twists `a + Σ u_j h_j + Σ v_k g_k` over compositions `u` of `n - b2`
//! and `v` of `i - b1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variable counts and the sorted degree lists `h_1 ≥ ⋯ ≥ h_b`, `g_1 ≥ ⋯ ≥ g_c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawRingSpec")]
pub struct TrigradedRingSpec {
    pub d: usize,
    h: Vec<i64>,
    g: Vec<i64>,
}

#[derive(Deserialize)]
struct RawRingSpec {
    d: usize,
    h: Vec<i64>,
    g: Vec<i64>,
}

impl From<RawRingSpec> for TrigradedRingSpec {
    fn from(r: RawRingSpec) -> Self {
        TrigradedRingSpec::new(r.d, r.h, r.g)
    }
}

impl TrigradedRingSpec {
    /// Sorts `h` and `g` in descending order.
    pub fn new(d: usize, mut h: Vec<i64>, mut g: Vec<i64>) -> Self {
        h.sort_unstable_by(|a, b| b.cmp(a));
        g.sort_unstable_by(|a, b| b.cmp(a));
        TrigradedRingSpec { d, h, g }
    }

    pub fn b(&self) -> usize {
        self.h.len()
    }

    pub fn c(&self) -> usize {
        self.g.len()
    }

    pub fn h(&self) -> &[i64] {
        &self.h
    }

    pub fn g(&self) -> &[i64] {
        &self.g
    }

    /// `h_1`, or 0 when there are no `Y` variables.
    pub fn h1(&self) -> i64 {
        self.h.first().copied().unwrap_or(0)
    }

    /// `g_1`, or 0 when there are no `Z` variables.
    pub fn g1(&self) -> i64 {
        self.g.first().copied().unwrap_or(0)
    }

    /// `d + b + c`, the length bound for free resolutions over `S`.
    pub fn total_dimension(&self) -> usize {
        self.d + self.b() + self.c()
    }
}

/// Generator multidegrees `(b1, b2, a)` of each `F_l`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigradedFreeData {
    pub levels: Vec<Vec<(i64, i64, i64)>>,
}

/// `c_l` (absent for an empty level) and `e = max (c_l - l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundConstants {
    pub c: Vec<Option<i64>>,
    pub e: i64,
}

pub fn bound_constants(spec: &TrigradedRingSpec, data: &TrigradedFreeData) -> Result<BoundConstants> {
    if data.levels.first().is_none_or(Vec::is_empty) {
        return Err(Error::Precondition("level 0 must have a generator".into()));
    }
    let c: Vec<Option<i64>> = data
        .levels
        .iter()
        .map(|gens| gens.iter().map(|&(b1, b2, a)| a - spec.g1() * b1 - spec.h1() * b2).max())
        .collect();
    let e = c
        .iter()
        .enumerate()
        .filter_map(|(l, cl)| cl.map(|v| v - l as i64))
        .max()
        .expect("level 0 is present");
    Ok(BoundConstants { c, e })
}

/// Compositions of `total` into `parts` nonnegative parts, colex order.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if total < 0 {
        return Vec::new();
    }
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for last in 0..=total {
        for mut head in compositions(total - last, parts - 1) {
            head.push(last);
            out.push(head);
        }
    }
    out
}

fn dot(u: &[i64], w: &[i64]) -> i64 {
    u.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// The twists of `(F_l)_{(i, n, *)}` as a free `Q`-module.
pub fn component_twists(spec: &TrigradedRingSpec, data: &TrigradedFreeData, l: usize, i: i64, n: i64) -> Vec<i64> {
    let Some(gens) = data.levels.get(l) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for &(b1, b2, a) in gens {
        if i < b1 || n < b2 {
            continue;
        }
        let us = compositions(n - b2, spec.b());
        let vs = compositions(i - b1, spec.c());
        for v in &vs {
            for u in &us {
                out.push(a + dot(u, spec.h()) + dot(v, spec.g()));
            }
        }
    }
    out
}

/// `g_1 i + h_1 n + e`.
pub fn component_bound(spec: &TrigradedRingSpec, k: &BoundConstants, i: i64, n: i64) -> i64 {
    spec.g1() * i + spec.h1() * n + k.e
}

/// `max component_twists(l, i, n) ≤ g_1 i + h_1 n + c_l`.
pub fn max_twist_bound_check(spec: &TrigradedRingSpec, data: &TrigradedFreeData, l: usize, i: i64, n: i64) -> bool {
    let Some(max) = component_twists(spec, data, l, i, n).into_iter().max() else {
        return true;
    };
    let cl = data.levels[l]
        .iter()
        .map(|&(b1, b2, a)| a - spec.g1() * b1 - spec.h1() * b2)
        .max()
        .expect("nonempty level");
    max <= spec.g1() * i + spec.h1() * n + cl
}

/// `C(n, k)` for small arguments.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn data(levels: Vec<Vec<(i64, i64, i64)>>) -> TrigradedFreeData {
        TrigradedFreeData { levels }
    }

    #[test]
    fn constants_by_hand() {
        let s = TrigradedRingSpec::new(1, vec![2], vec![3]);
        let k = bound_constants(&s, &data(vec![vec![(0, 0, 0)], vec![(1, 2, 5)]])).unwrap();
        assert_eq!(k.c, vec![Some(0), Some(-2)]);
        assert_eq!(k.e, 0);
        let s = TrigradedRingSpec::new(1, vec![0], vec![2]);
        let k = bound_constants(&s, &data(vec![vec![(0, 0, 0)], vec![(1, 0, 4)]])).unwrap();
        assert_eq!((k.c.clone(), k.e), (vec![Some(0), Some(2)], 1));
        assert!(bound_constants(&s, &data(vec![vec![]])).is_err());
    }

    #[test]
    fn component_enumeration() {
        let s = TrigradedRingSpec::new(0, vec![1, 3], vec![2]);
        assert_eq!(s.h(), &[3, 1]);
        let dt = data(vec![vec![(0, 1, 0)]]);
        let tw = component_twists(&s, &dt, 0, 2, 3);
        // u1 + u2 = 2: (2,0), (1,1), (0,2) in colex order
        assert_eq!(tw, vec![6 + 4, 4 + 4, 2 + 4]);
        assert!(component_twists(&s, &data(vec![vec![(3, 0, 0)]]), 0, 2, 5).is_empty());
        let single = TrigradedRingSpec::new(0, vec![5], vec![-2]);
        let d0 = data(vec![vec![(0, 0, 0)]]);
        assert_eq!(component_twists(&single, &d0, 0, 3, 4), vec![-6 + 20]);
        let k = bound_constants(&single, &d0).unwrap();
        assert_eq!(component_bound(&single, &k, 3, 4), 14);
    }

    #[test]
    fn colex_order() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(0, 0), vec![Vec::<i64>::new()]);
        assert!(compositions(1, 0).is_empty());
    }

    fn arb_case() -> impl Strategy<Value = (TrigradedRingSpec, TrigradedFreeData)> {
        (
            prop::collection::vec(-3i64..4, 0..3),
            prop::collection::vec(-3i64..4, 0..3),
            prop::collection::vec(prop::collection::vec((0i64..4, 0i64..4, 0i64..4), 1..5), 1..4),
        )
            .prop_map(|(h, g, levels)| (TrigradedRingSpec::new(1, h, g), TrigradedFreeData { levels }))
    }

    proptest! {
        #[test]
        fn twists_respect_the_bound((s, dt) in arb_case(), i in 0i64..10, n in 0i64..10) {
            let k = bound_constants(&s, &dt).unwrap();
            for l in 0..dt.levels.len() {
                prop_assert!(max_twist_bound_check(&s, &dt, l, i, n));
                if let Some(m) = component_twists(&s, &dt, l, i, n).into_iter().max() {
                    prop_assert!(m - l as i64 <= component_bound(&s, &k, i, n));
                }
            }
        }

        #[test]
        fn component_sizes_follow_stars_and_bars((s, dt) in arb_case(), i in 0i64..8, n in 0i64..8) {
            for l in 0..dt.levels.len() {
                let expect: u64 = dt.levels[l].iter().map(|&(b1, b2, _)| {
                    let nu = if s.b() == 0 { u64::from(n == b2) } else { binomial(n - b2 + s.b() as i64 - 1, s.b() as i64 - 1) };
                    let nv = if s.c() == 0 { u64::from(i == b1) } else { binomial(i - b1 + s.c() as i64 - 1, s.c() as i64 - 1) };
                    if i < b1 || n < b2 { 0 } else { nu * nv }
                }).sum();
                prop_assert_eq!(component_twists(&s, &dt, l, i, n).len() as u64, expect);
            }
        }
    }
}
