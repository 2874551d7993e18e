//! Castelnuovo–Mumford regularity over the polynomial ring.
//!
//! A module over `A` is regarded as a `Q`-module by adding the relations
//! `z_j e_k`; its regularity is read off the minimal `Q`-resolution. The
//! Koszul-homology routine computes the same Betti numbers by plain linear
//! algebra on graded pieces and is used as a cross-check.

use std::collections::HashMap;

use crate::error::Result;
use crate::groebner::quotient_relations;
use crate::linalg::RowSpace;
use crate::module::{BaseRing, ModulePresentation, RegValue};
use crate::pieces::QuotientPiece;
use crate::poly::{Monomial, Ring};
use crate::resolution::{betti_table, resolve_over_q, BettiTable};
use crate::scalar::Scalar;

/// The same module presented over `Q`.
pub fn present_over_q(ring: &Ring, m: &ModulePresentation) -> Result<ModulePresentation> {
    if m.base() == BaseRing::Polynomial {
        return Ok(m.clone());
    }
    let mut rels = m.relations();
    rels.extend(quotient_relations(ring, m.generators()));
    let target = m.generators().over(BaseRing::Polynomial);
    ModulePresentation::from_relations(target, &rels)
}

/// Minimal graded Betti numbers over `Q`.
pub fn betti_over_q(ring: &Ring, m: &ModulePresentation) -> Result<BettiTable> {
    let mq = present_over_q(ring, m)?;
    let r = resolve_over_q(ring, &mq, true)?;
    Ok(betti_table(&r))
}

/// `reg M`, or `-∞` for the zero module.
pub fn regularity(ring: &Ring, m: &ModulePresentation) -> Result<RegValue> {
    Ok(betti_over_q(ring, m)?.regularity())
}

/// `reg M(a) = reg M - a`.
pub fn reg_of_shift(reg: RegValue, a: i64) -> RegValue {
    reg.offset(-a)
}

/// For `0 → M' → M → M'' → 0`, the three inequalities
/// `reg M' ≤ max(reg M, reg M'' + 1)`, `reg M ≤ max(reg M', reg M'')` and
/// `reg M'' ≤ max(reg M' - 1, reg M)`.
pub fn short_exact_inequalities(sub: RegValue, middle: RegValue, quotient: RegValue) -> [bool; 3] {
    [
        sub <= middle.max(quotient.offset(1)),
        middle <= sub.max(quotient),
        quotient <= sub.offset(-1).max(middle),
    ]
}

/// Betti numbers `β_ij` for `j ≤ window`, from `Tor_i(K, M)_j`.
#[derive(Clone, Debug)]
pub struct OracleTable {
    pub table: BettiTable,
    pub window: i64,
}

/// Computes `β_ij = dim H_i(K(x) ⊗ M)_j` for all `j ≤ window`.
pub fn betti_oracle(ring: &Ring, m: &ModulePresentation, window: i64) -> Result<OracleTable> {
    let mq = present_over_q(ring, m)?;
    let q = ring.ambient();
    let d = q.nvars();
    let field = q.field();
    let mut table = BettiTable::new();
    let Some(&lo) = mq.generators().twists().iter().min() else {
        return Ok(OracleTable { table, window });
    };
    let rels = mq.relations();
    let mut pieces: HashMap<i64, QuotientPiece> = HashMap::new();
    for t in lo..=window + 1 {
        pieces.insert(t, QuotientPiece::new(&q, mq.generators(), &rels, t));
    }
    // mult[(s, t)]: rows are images of the basis of M_t under x_s.
    let mut mult: HashMap<(usize, i64), Vec<Vec<Scalar>>> = HashMap::new();
    for t in lo..=window {
        for s in 0..d {
            let x = Monomial::var(d, s);
            let rows = pieces[&t].map_rows(&q, &pieces[&(t + 1)], |v| {
                v.iter().map(|p| q.mul_term(p, &x, &field.one())).collect()
            });
            mult.insert((s, t), rows);
        }
    }
    let dim = |t: i64| pieces.get(&t).map_or(0, QuotientPiece::dim);
    let subsets: Vec<Vec<u32>> = (0..=d)
        .map(|i| (0u32..(1 << d)).filter(|s| s.count_ones() as usize == i).collect())
        .collect();
    // Rank of d_i: K_i,j → K_{i-1},j, where K_i,j = ⊕_{|S|=i} M_{j-i}.
    let rank_of = |i: usize, j: i64| -> usize {
        if i == 0 || i > d {
            return 0;
        }
        let (ts, tt) = (j - i as i64, j - i as i64 + 1);
        let (ds, dt) = (dim(ts), dim(tt));
        if ds == 0 || dt == 0 {
            return 0;
        }
        let targets = &subsets[i - 1];
        let pos: HashMap<u32, usize> = targets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut space = RowSpace::new(field, targets.len() * dt);
        for &s in &subsets[i] {
            for b in 0..ds {
                let mut row = vec![field.zero(); targets.len() * dt];
                let mut sign = true;
                for v in 0..d {
                    if s & (1 << v) == 0 {
                        continue;
                    }
                    let off = pos[&(s & !(1 << v))] * dt;
                    for (c, val) in mult[&(v, ts)][b].iter().enumerate() {
                        row[off + c] = if sign { val.clone() } else { -val.clone() };
                    }
                    sign = !sign;
                }
                space.insert(&row);
            }
        }
        space.dim()
    };
    for j in lo..=window {
        for i in 0..=d {
            let k = subsets[i].len() * dim(j - i as i64);
            if k == 0 {
                continue;
            }
            let h = k - rank_of(i, j) - rank_of(i + 1, j);
            if h > 0 {
                table.insert(i, j, h);
            }
        }
    }
    Ok(OracleTable { table, window })
}
