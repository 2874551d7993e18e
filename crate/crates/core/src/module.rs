//! Graded free modules, homogeneous maps, and module presentations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{GradedPoly, Ring};

/// Which ring a free module lives over: the polynomial ring `Q` or the
/// complete intersection `A = Q/(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    Polynomial,
    Quotient,
}

/// `⊕_k R(-a_k)` with twist list `(a_1, .., a_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
    base: BaseRing,
}

/// A module element: one coordinate per basis vector.
pub type Vector = Vec<GradedPoly>;

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>, base: BaseRing) -> Self {
        GradedFreeModule { twists, base }
    }

    pub fn zero(base: BaseRing) -> Self {
        GradedFreeModule { twists: Vec::new(), base }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn over(&self, base: BaseRing) -> Self {
        GradedFreeModule {
            twists: self.twists.clone(),
            base,
        }
    }

    /// Adds `a` to every twist: `F` becomes `F(-a)`.
    pub fn shifted(&self, a: i64) -> Self {
        GradedFreeModule {
            twists: self.twists.iter().map(|t| t + a).collect(),
            base: self.base,
        }
    }

    pub fn direct_sum(&self, other: &GradedFreeModule) -> Self {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        GradedFreeModule { twists, base: self.base }
    }

    pub fn zero_vector(&self) -> Vector {
        vec![GradedPoly::zero(); self.rank()]
    }

    /// The basis vector `e_k`.
    pub fn basis_vector(&self, ring: &Ring, k: usize) -> Vector {
        let mut v = self.zero_vector();
        v[k] = ring.one();
        v
    }

    /// Degree of a homogeneous element, `None` for zero.
    pub fn degree_of(&self, v: &[GradedPoly]) -> Result<Option<i64>> {
        if v.len() != self.rank() {
            return Err(Error::Dimension(format!("vector of length {} in module of rank {}", v.len(), self.rank())));
        }
        let mut deg = None;
        for (p, t) in v.iter().zip(&self.twists) {
            if let Some(d) = p.degree() {
                let e = d + t;
                match deg {
                    None => deg = Some(e),
                    Some(x) if x != e => {
                        return Err(Error::Homogeneity(format!("vector mixes degrees {x} and {e}")));
                    }
                    _ => {}
                }
            }
        }
        Ok(deg)
    }
}

impl fmt::Display for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.base {
            BaseRing::Polynomial => "Q",
            BaseRing::Quotient => "A",
        };
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .twists
            .iter()
            .map(|t| if *t == 0 { r.to_string() } else { format!("{r}({})", -t) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Shifts every twist of `f` by `a`; the rank is unchanged.
pub fn twist_module(f: &GradedFreeModule, a: i64) -> GradedFreeModule {
    f.shifted(a)
}

pub fn vec_is_zero(v: &[GradedPoly]) -> bool {
    v.iter().all(GradedPoly::is_zero)
}

pub fn vec_add(ring: &Ring, u: &[GradedPoly], v: &[GradedPoly]) -> Result<Vector> {
    u.iter().zip(v).map(|(a, b)| ring.add(a, b)).collect()
}

pub fn vec_sub(ring: &Ring, u: &[GradedPoly], v: &[GradedPoly]) -> Result<Vector> {
    u.iter().zip(v).map(|(a, b)| ring.sub(a, b)).collect()
}

pub fn vec_scale(ring: &Ring, p: &GradedPoly, v: &[GradedPoly]) -> Vector {
    v.iter().map(|a| ring.mul(p, a)).collect()
}

/// A degree-0 homomorphism of graded free modules, as a matrix with
/// `target.rank()` rows and `source.rank()` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedFreeModule,
    target: GradedFreeModule,
    matrix: Vec<Vec<GradedPoly>>,
}

/// True iff every nonzero entry `(k, m)` has degree `source_m - target_k`.
pub fn check_homogeneous_map(phi: &GradedMap) -> bool {
    phi.matrix.iter().enumerate().all(|(k, row)| {
        row.iter().enumerate().all(|(m, p)| match p.degree() {
            None => true,
            Some(d) => d == phi.source.twists[m] - phi.target.twists[k],
        })
    })
}

impl GradedMap {
    /// Checks dimensions only; use [`check_homogeneous_map`] for degrees.
    pub fn raw(source: GradedFreeModule, target: GradedFreeModule, matrix: Vec<Vec<GradedPoly>>) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::Dimension(format!(
                "matrix shape does not match {} x {}",
                target.rank(),
                source.rank()
            )));
        }
        Ok(GradedMap { source, target, matrix })
    }

    pub fn new(source: GradedFreeModule, target: GradedFreeModule, matrix: Vec<Vec<GradedPoly>>) -> Result<Self> {
        let phi = GradedMap::raw(source, target, matrix)?;
        if !check_homogeneous_map(&phi) {
            return Err(Error::Homogeneity("map entries do not match twist differences".into()));
        }
        Ok(phi)
    }

    /// Builds a map from its columns (images of the source basis).
    pub fn from_columns(source: GradedFreeModule, target: GradedFreeModule, cols: &[Vector]) -> Result<Self> {
        if cols.len() != source.rank() {
            return Err(Error::Dimension(format!("{} columns for source of rank {}", cols.len(), source.rank())));
        }
        let matrix = (0..target.rank())
            .map(|k| cols.iter().map(|c| c[k].clone()).collect())
            .collect();
        GradedMap::new(source, target, matrix)
    }

    /// The map whose columns are `cols`, with source twists read off their
    /// degrees; zero columns are dropped.
    pub fn generated_by(target: GradedFreeModule, cols: &[Vector]) -> Result<Self> {
        let mut twists = Vec::new();
        let mut kept = Vec::new();
        for c in cols {
            if let Some(d) = target.degree_of(c)? {
                twists.push(d);
                kept.push(c.clone());
            }
        }
        let source = GradedFreeModule::new(twists, target.base());
        GradedMap::from_columns(source, target, &kept)
    }

    pub fn zero(source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let matrix = vec![vec![GradedPoly::zero(); source.rank()]; target.rank()];
        GradedMap { source, target, matrix }
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<GradedPoly>] {
        &self.matrix
    }

    pub fn entry(&self, k: usize, m: usize) -> &GradedPoly {
        &self.matrix[k][m]
    }

    pub fn column(&self, m: usize) -> Vector {
        self.matrix.iter().map(|row| row[m].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.source.rank()).map(|m| self.column(m)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| vec_is_zero(r))
    }

    pub fn apply(&self, ring: &Ring, v: &[GradedPoly]) -> Result<Vector> {
        if v.len() != self.source.rank() {
            return Err(Error::Dimension("vector length does not match source rank".into()));
        }
        let mut out = self.target.zero_vector();
        for (k, row) in self.matrix.iter().enumerate() {
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    out[k] = ring.add(&out[k], &ring.mul(a, b))?;
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &Ring, other: &GradedMap) -> Result<GradedMap> {
        if other.target.twists != self.source.twists {
            return Err(Error::Dimension("composing maps with mismatched modules".into()));
        }
        let cols = other
            .columns()
            .iter()
            .map(|c| self.apply(ring, c))
            .collect::<Result<Vec<_>>>()?;
        let matrix = (0..self.target.rank())
            .map(|k| cols.iter().map(|c| c[k].clone()).collect())
            .collect();
        GradedMap::raw(other.source.clone(), self.target.clone(), matrix)
    }

    /// Entrywise canonical form modulo the quotient ideal.
    pub fn reduced(&self, ring: &Ring) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(|p| ring.reduce(p)).collect())
                .collect(),
        }
    }

    pub fn over(&self, base: BaseRing) -> GradedMap {
        GradedMap {
            source: self.source.over(base),
            target: self.target.over(base),
            matrix: self.matrix.clone(),
        }
    }

    /// Twists source and target by the same amount.
    pub fn shifted(&self, a: i64) -> GradedMap {
        GradedMap {
            source: self.source.shifted(a),
            target: self.target.shifted(a),
            matrix: self.matrix.clone(),
        }
    }
}

/// A finitely generated graded module, presented as `coker(φ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    map: GradedMap,
}

impl ModulePresentation {
    pub fn new(map: GradedMap) -> Self {
        ModulePresentation { map }
    }

    /// The free module itself, with no relations.
    pub fn free(module: GradedFreeModule) -> Self {
        let base = module.base();
        ModulePresentation {
            map: GradedMap::zero(GradedFreeModule::zero(base), module),
        }
    }

    /// `coker` of the given relation columns inside `target`.
    pub fn from_relations(target: GradedFreeModule, relations: &[Vector]) -> Result<Self> {
        Ok(ModulePresentation {
            map: GradedMap::generated_by(target, relations)?,
        })
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }

    pub fn generators(&self) -> &GradedFreeModule {
        self.map.target()
    }

    pub fn relations(&self) -> Vec<Vector> {
        self.map.columns()
    }

    pub fn base(&self) -> BaseRing {
        self.map.target().base()
    }

    /// `M(a)`: generator twists decrease by `a`.
    pub fn twisted(&self, a: i64) -> Self {
        ModulePresentation {
            map: self.map.shifted(-a),
        }
    }

    pub fn over(&self, base: BaseRing) -> Self {
        ModulePresentation { map: self.map.over(base) }
    }
}

/// Regularity value: an integer or `-∞` (the zero module).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegValue {
    NegInfinity,
    Finite(i64),
}

impl RegValue {
    pub fn finite(&self) -> Option<i64> {
        match self {
            RegValue::Finite(v) => Some(*v),
            RegValue::NegInfinity => None,
        }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, RegValue::NegInfinity)
    }

    /// `self + a`, with `-∞ + a = -∞`.
    pub fn offset(&self, a: i64) -> RegValue {
        match self {
            RegValue::Finite(v) => RegValue::Finite(v + a),
            RegValue::NegInfinity => RegValue::NegInfinity,
        }
    }
}

impl fmt::Display for RegValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegValue::Finite(v) => write!(f, "{v}"),
            RegValue::NegInfinity => write!(f, "-inf"),
        }
    }
}

impl std::str::FromStr for RegValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(RegValue::NegInfinity),
            t => t
                .parse::<i64>()
                .map(RegValue::Finite)
                .map_err(|_| Error::Precondition(format!("not a regularity value: {t:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn q1() -> Ring {
        Ring::polynomial(1, Field::Rational)
    }

    #[test]
    fn homogeneity_predicate() {
        let r = q1();
        let x2 = r.pow(&r.var(0), 2);
        let q = |t: i64| GradedFreeModule::new(vec![t], BaseRing::Polynomial);
        let good = GradedMap::raw(q(2), q(0), vec![vec![x2.clone()]]).unwrap();
        assert!(check_homogeneous_map(&good));
        let bad = GradedMap::raw(q(1), q(0), vec![vec![x2]]).unwrap();
        assert!(!check_homogeneous_map(&bad));
        assert!(check_homogeneous_map(&GradedMap::zero(q(7), q(-3))));
    }

    #[test]
    fn shifting_twists() {
        let f = GradedFreeModule::new(vec![0, 1], BaseRing::Polynomial);
        assert_eq!(f.shifted(2).twists(), &[2, 3]);
        assert_eq!(f.shifted(0), f);
        let a = GradedFreeModule::new(vec![1], BaseRing::Quotient);
        assert_eq!(a.shifted(-1).twists(), &[0]);
    }

    #[test]
    fn composition_stays_homogeneous() {
        let r = Ring::polynomial(2, Field::Prime(101));
        let (x, y) = (r.var(0), r.var(1));
        let f0 = GradedFreeModule::new(vec![0], BaseRing::Polynomial);
        let f1 = GradedFreeModule::new(vec![1, 1], BaseRing::Polynomial);
        let f2 = GradedFreeModule::new(vec![2], BaseRing::Polynomial);
        let d1 = GradedMap::new(f1.clone(), f0, vec![vec![x.clone(), y.clone()]]).unwrap();
        let d2 = GradedMap::new(f2, f1, vec![vec![y], vec![r.neg(&x)]]).unwrap();
        let c = d1.compose(&r, &d2).unwrap();
        assert!(check_homogeneous_map(&c));
        assert!(c.is_zero());
    }

    #[test]
    fn reg_value_order() {
        assert!(RegValue::NegInfinity < RegValue::Finite(-100));
        assert_eq!("-inf".parse::<RegValue>().unwrap(), RegValue::NegInfinity);
        assert_eq!(RegValue::Finite(3).offset(-5), RegValue::Finite(-2));
    }
}
