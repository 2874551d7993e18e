#![allow(dead_code)]

//! The three complete-intersection setups used throughout the test suite.

use cireg::harness::{sweep, Cell, SweepConfig, Variant};
use cireg::module::{BaseRing, GradedFreeModule, ModulePresentation, RegValue, Vector};
use cireg::poly::{GradedPoly, Ring};
use cireg::rees::IdealData;
use cireg::scalar::Field;

pub struct Setup {
    pub ring: Ring,
    pub m: ModulePresentation,
    pub n: ModulePresentation,
    pub ideal: IdealData,
}

pub fn cyclic(twist: i64, rels: Vec<GradedPoly>) -> ModulePresentation {
    let cols: Vec<Vector> = rels.into_iter().map(|p| vec![p]).collect();
    ModulePresentation::from_relations(GradedFreeModule::new(vec![twist], BaseRing::Quotient), &cols).unwrap()
}

/// `K[X]/(X^2)`, `M = N = A/(x)`, `I = A`.
pub fn hypersurface_x2() -> Setup {
    let q = Ring::polynomial(1, Field::default());
    let x = q.var(0);
    let ring = q.clone().with_quotient(vec![q.pow(&x, 2)]).unwrap();
    let m = cyclic(0, vec![x]);
    Setup { ideal: IdealData::unit(&ring), n: m.clone(), m, ring }
}

/// `K[X,Y]/(X^2, Y^3)`, `M = N = A/(y)`, `I = A`.
pub fn ci_x2_y3() -> Setup {
    let q = Ring::polynomial(2, Field::default());
    let (x, y) = (q.var(0), q.var(1));
    let ring = q.clone().with_quotient(vec![q.pow(&x, 2), q.pow(&y, 3)]).unwrap();
    let m = cyclic(0, vec![y]);
    Setup { ideal: IdealData::unit(&ring), n: m.clone(), m, ring }
}

/// `K[X,Y]/(XY)`, `M = A/(x)`, `N = (x) = A(-1)/(y)`, `I = (x)`.
pub fn node_xy() -> Setup {
    let q = Ring::polynomial(2, Field::default());
    let (x, y) = (q.var(0), q.var(1));
    let ring = q.clone().with_quotient(vec![q.mul(&x, &y)]).unwrap();
    let m = cyclic(0, vec![x.clone()]);
    let n = cyclic(1, vec![y]);
    let ideal = IdealData::new(&ring, vec![x]).unwrap();
    Setup { ring, m, n, ideal }
}

pub fn fin(v: i64) -> Cell {
    Cell::Reg(RegValue::Finite(v))
}

pub const NEG_INF: Cell = Cell::Reg(RegValue::NegInfinity);

pub fn run(s: &Setup, imax: usize, nmax: usize, variants: Vec<Variant>) -> cireg::harness::ExtRegTable {
    let cfg = SweepConfig { imax, nmax, variants, rho_upper: None };
    sweep(&s.ring, &s.m, &s.n, &s.ideal, &cfg).unwrap()
}

/// `K[X,Y]/(X^2, Y^3)` with `U = V = A/(x)` in both slots.
pub fn ci_u() -> Setup {
    let mut s = ci_x2_y3();
    let x = s.ring.var(0);
    s.m = cyclic(0, vec![x]);
    s.n = s.m.clone();
    s
}
