//! Eisenbud operators of a resolution over a complete intersection
//! `A = Q/(z_1, …, z_c)`, and the maps they induce on Ext.

use crate::error::{Error, Result};
use crate::ext_tor::SubquotientPresentation;
use crate::groebner::{contains, Lifter};
use crate::module::{BaseRing, GradedFreeModule, GradedMap, ModulePresentation, Vector};
use crate::poly::{GradedPoly, Ring};
use crate::resolution::FreeResolution;

/// Differentials of a resolution over `A`, lifted entrywise to `Q`.
#[derive(Clone, Debug)]
pub struct LiftedResolution {
    source: FreeResolution,
    lifted: Vec<GradedMap>,
}

impl LiftedResolution {
    pub fn source(&self) -> &FreeResolution {
        &self.source
    }

    /// `d̃_l` for `l ≥ 1`.
    pub fn lifted(&self, l: usize) -> Option<&GradedMap> {
        if l == 0 {
            None
        } else {
            self.lifted.get(l - 1)
        }
    }

    pub fn len(&self) -> usize {
        self.lifted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lifted.is_empty()
    }
}

/// Lifts each entry to its normal form modulo `(z)`.
pub fn lift_resolution(ring: &Ring, r: &FreeResolution) -> LiftedResolution {
    let lifted = r
        .differentials()
        .iter()
        .map(|d| {
            let matrix = d
                .matrix()
                .iter()
                .map(|row| row.iter().map(|p| ring.reduce(p)).collect())
                .collect();
            GradedMap::raw(
                d.source().over(BaseRing::Polynomial),
                d.target().over(BaseRing::Polynomial),
                matrix,
            )
            .expect("shape is preserved")
        })
        .collect();
    LiftedResolution {
        source: r.clone(),
        lifted,
    }
}

/// `t̃_j[i]: F_{i+2} → F_i(-f_j)` with `d̃_{i+1} d̃_{i+2} = Σ_j z_j t̃_j[i]`.
#[derive(Clone, Debug)]
pub struct CIOperators {
    degrees: Vec<i64>,
    /// `ops[i][j]`, with polynomial entries over `Q`.
    ops: Vec<Vec<GradedMap>>,
}

impl CIOperators {
    /// `f_j = deg z_j`.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn count(&self) -> usize {
        self.degrees.len()
    }

    /// Number of levels `i` for which operators were computed.
    pub fn levels(&self) -> usize {
        self.ops.len()
    }

    /// `t̃_j[i]` as a map over `Q`.
    pub fn lifted(&self, j: usize, i: usize) -> Option<&GradedMap> {
        self.ops.get(i)?.get(j)
    }

    /// `t̃_j[i]` reduced to a map over `A`.
    pub fn over_a(&self, ring: &Ring, j: usize, i: usize) -> Option<GradedMap> {
        let t = self.lifted(j, i)?;
        Some(t.over(BaseRing::Quotient).reduced(ring))
    }
}

/// Solves `d̃²` against `z` entry by entry.
pub fn eisenbud_operators(ring: &Ring, lr: &LiftedResolution) -> Result<CIOperators> {
    let q = ring.ambient();
    let z = ring.quotient().to_vec();
    let degrees = ring.quotient_degrees();
    let one = GradedFreeModule::new(vec![0], BaseRing::Polynomial);
    let zmap = GradedMap::from_columns(
        GradedFreeModule::new(degrees.clone(), BaseRing::Polynomial),
        one,
        &z.iter().map(|p| vec![p.clone()]).collect::<Vec<_>>(),
    )?;
    let lifter = Lifter::new(&q, &zmap, &[])?;
    let mut ops = Vec::new();
    for i in 0..lr.len().saturating_sub(1) {
        let (d1, d2) = (lr.lifted(i + 1).unwrap(), lr.lifted(i + 2).unwrap());
        let prod = d1.compose(&q, d2)?;
        let (rows, cols) = (prod.target().rank(), prod.source().rank());
        let mut mats = vec![vec![vec![GradedPoly::zero(); cols]; rows]; z.len()];
        for k in 0..rows {
            for m in 0..cols {
                let e = prod.entry(k, m);
                if e.is_zero() {
                    continue;
                }
                let c = lifter
                    .lift(std::slice::from_ref(e))
                    .ok_or_else(|| Error::Internal(format!("d~^2 entry ({k},{m}) at level {i} is not in (z)")))?;
                for (j, cj) in c.into_iter().enumerate() {
                    mats[j][k][m] = cj;
                }
            }
        }
        let mut level = Vec::new();
        for (j, mat) in mats.into_iter().enumerate() {
            let target = d1.target().shifted(degrees[j]);
            level.push(GradedMap::new(d2.source().clone(), target, mat)?);
        }
        ops.push(level);
    }
    let out = CIOperators { degrees, ops };
    verify_lifted_identity(ring, lr, &out)?;
    Ok(out)
}

/// Checks `d̃_{i+1} d̃_{i+2} = Σ_j z_j t̃_j[i]` exactly over `Q`.
pub fn verify_lifted_identity(ring: &Ring, lr: &LiftedResolution, t: &CIOperators) -> Result<()> {
    let q = ring.ambient();
    for i in 0..t.levels() {
        let prod = lr.lifted(i + 1).unwrap().compose(&q, lr.lifted(i + 2).unwrap())?;
        for k in 0..prod.target().rank() {
            for m in 0..prod.source().rank() {
                let mut s = GradedPoly::zero();
                for (j, zj) in ring.quotient().iter().enumerate() {
                    s = q.add(&s, &q.mul(zj, t.lifted(j, i).unwrap().entry(k, m)))?;
                }
                if &s != prod.entry(k, m) {
                    return Err(Error::Internal(format!("lifted identity fails at level {i}, entry ({k},{m})")));
                }
            }
        }
    }
    Ok(())
}

/// `(φ ∘ t)` for `φ ∈ Hom(F_i, N)` written in block coordinates.
fn precompose(ring: &Ring, t: &GradedMap, r: usize, v: &[GradedPoly]) -> Result<Vector> {
    let (fi, fi2) = (t.target().rank(), t.source().rank());
    let mut out = vec![GradedPoly::zero(); fi2 * r];
    for m in 0..fi2 {
        for p in 0..r {
            let mut s = GradedPoly::zero();
            for k in 0..fi {
                s = ring.add(&s, &ring.mul(t.entry(k, m), &v[k * r + p]))?;
            }
            out[m * r + p] = ring.reduce(&s);
        }
    }
    Ok(out)
}

/// The map `Ext^i → Ext^{i+2}` lowering degrees by `shift`, written on the
/// generators of the two presentations.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub shift: i64,
    /// Source twists are those of `Ext^i` minus `shift`.
    pub map: GradedMap,
}

impl InducedMap {
    /// `other ∘ self`.
    pub fn then(&self, ring: &Ring, other: &InducedMap) -> Result<InducedMap> {
        let outer = other.map.shifted(other.shift);
        let comp = outer.compose(ring, &self.map)?.reduced(ring);
        let map = GradedMap::raw(
            self.map.source().shifted(-other.shift),
            other.map.target().clone(),
            comp.matrix().to_vec(),
        )?;
        Ok(InducedMap {
            shift: self.shift + other.shift,
            map,
        })
    }

    /// Equality as maps into `target` (columns agree modulo its relations).
    pub fn agrees_with(&self, ring: &Ring, other: &InducedMap, target: &ModulePresentation) -> Result<bool> {
        if self.shift != other.shift || self.map.source().rank() != other.map.source().rank() {
            return Ok(false);
        }
        let rels = target.relations();
        for (a, b) in self.map.columns().iter().zip(other.map.columns()) {
            let diff = a
                .iter()
                .zip(&b)
                .map(|(x, y)| ring.sub(x, y).map(|d| ring.reduce(&d)))
                .collect::<Result<Vector>>()?;
            if !crate::module::vec_is_zero(&diff) && !contains(ring, &rels, target.generators(), &diff)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The map on Ext induced by `t_j` at level `i`.
pub fn induced_on_ext(
    ring: &Ring,
    t: &CIOperators,
    j: usize,
    i: usize,
    n: &ModulePresentation,
    ext_i: &SubquotientPresentation,
    ext_i2: &SubquotientPresentation,
) -> Result<InducedMap> {
    let tj = t
        .over_a(ring, j, i)
        .ok_or_else(|| Error::Precondition(format!("operators not computed at level {i}")))?;
    let f = t.degrees()[j];
    let r = n.generators().rank();
    let gens2 = ext_i2.generators();
    let zmap = GradedMap::generated_by(ext_i2.ambient().clone(), gens2)?;
    let lifter = Lifter::new(ring, &zmap, ext_i2.boundaries())?;
    let mut cols = Vec::new();
    for g in ext_i.generators() {
        let img = precompose(ring, &tj, r, g)?;
        let c = lifter
            .lift(&img)
            .ok_or_else(|| Error::Internal("induced image is not a cycle".into()))?;
        cols.push(c.iter().map(|p| ring.reduce(p)).collect::<Vector>());
    }
    let source = ext_i.presentation().generators().shifted(-f);
    let target = ext_i2.presentation().generators().clone();
    let matrix = (0..target.rank()).map(|h| cols.iter().map(|c| c[h].clone()).collect()).collect();
    Ok(InducedMap {
        shift: f,
        map: GradedMap::new(source, target, matrix)?,
    })
}
