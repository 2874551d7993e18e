//! Regularity tables of `Ext^{2i+l}(M, I^n N)`, `Ext^{2i+l}(M, N / I^n N)`
//! and `Tor_{2i+l}(M, I^n N)` over `(i, n)` grids, the linear bound check
//! `reg ≤ ρ n - f i + e`, and detection of eventually linear rows.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext_tor::{ext_from_resolution, tor_from_resolution};
use crate::module::{ModulePresentation, RegValue};
use crate::poly::Ring;
use crate::rees::{power_module, quotient_module, IdealData};
use crate::regularity::regularity;
use crate::resolution::resolve_over_a;

pub const LIMITATION: &str =
    "constants are measured on the computed grid only; the bound is claimed for all (i, n) but a finite grid cannot certify it";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `Ext(M, I^n N)`.
    Power,
    /// `Ext(M, N / I^n N)`.
    Quotient,
    /// `Tor(M, I^n N)`.
    Tor,
}

impl Variant {
    pub fn is_ext(self) -> bool {
        self != Variant::Tor
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Power => "power",
            Variant::Quotient => "quotient",
            Variant::Tor => "tor",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(Variant::Power),
            "quotient" => Ok(Variant::Quotient),
            "tor" => Ok(Variant::Tor),
            _ => Err(Error::Precondition(format!("unknown variant {s:?}"))),
        }
    }
}

/// A computed regularity or a marker for a breached Gröbner degree cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Cell {
    Reg(RegValue),
    CapBreach,
}

impl Cell {
    pub fn reg(&self) -> Option<RegValue> {
        match self {
            Cell::Reg(r) => Some(*r),
            Cell::CapBreach => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Reg(r) => write!(f, "{r}"),
            Cell::CapBreach => f.write_str("cap"),
        }
    }
}

impl From<Cell> for String {
    fn from(c: Cell) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Cell {
    type Error = Error;
    fn try_from(s: String) -> Result<Cell> {
        if s == "cap" {
            Ok(Cell::CapBreach)
        } else {
            Ok(Cell::Reg(s.parse()?))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub field: String,
    pub degree_cap: i64,
    pub homological_cap: usize,
    pub imax: usize,
    pub nmax: usize,
    pub rho_upper: Option<i64>,
    pub f: Option<i64>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub variant: Variant,
    pub parity: u8,
    pub i: usize,
    pub n: usize,
    pub reg: Cell,
}

/// Grid of regularities keyed by `(variant, parity, i, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtRegTable {
    pub metadata: Metadata,
    pub cells: Vec<CellRecord>,
}

impl ExtRegTable {
    pub fn get(&self, variant: Variant, parity: u8, i: usize, n: usize) -> Option<Cell> {
        self.cells
            .iter()
            .find(|c| c.variant == variant && c.parity == parity && c.i == i && c.n == n)
            .map(|c| c.reg)
    }

    pub fn variants(&self) -> Vec<Variant> {
        let mut v: Vec<Variant> = self.cells.iter().map(|c| c.variant).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `variant,parity,i,n,reg` with a header line.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["variant", "parity", "i", "n", "reg"])
            .map_err(|e| Error::Io(e.to_string()))?;
        for c in &self.cells {
            w.write_record([
                c.variant.to_string(),
                c.parity.to_string(),
                c.i.to_string(),
                c.n.to_string(),
                c.reg.to_string(),
            ])
            .map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Io(format!("bad table: {e}")))
    }
}

/// Grid bounds and the families to compute.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub imax: usize,
    pub nmax: usize,
    pub variants: Vec<Variant>,
    /// Recorded in the metadata; not used in the computation.
    pub rho_upper: Option<i64>,
}

/// A module needed by some variant, or `None` when no variant needs it.
type Prepared = Option<Result<ModulePresentation>>;

fn cell_of(r: Result<RegValue>) -> Result<Cell> {
    match r {
        Ok(v) => Ok(Cell::Reg(v)),
        Err(Error::CapExceeded { .. }) => Ok(Cell::CapBreach),
        Err(e) => Err(e),
    }
}

/// Computes every cell of the grid. The resolution of `M` and the modules
/// `I^n N`, `N / I^n N` are computed once and shared between cells.
pub fn sweep(
    ring: &Ring,
    m: &ModulePresentation,
    n: &ModulePresentation,
    ideal: &IdealData,
    cfg: &SweepConfig,
) -> Result<ExtRegTable> {
    let hcap = 2 * cfg.imax + 2;
    let res = resolve_over_a(ring, m, hcap)?;
    let need_power = cfg.variants.iter().any(|v| *v != Variant::Quotient);
    let need_quot = cfg.variants.contains(&Variant::Quotient);
    let modules: Vec<(Prepared, Prepared)> = (0..=cfg.nmax)
        .into_par_iter()
        .map(|k| {
            (
                need_power.then(|| power_module(ring, ideal, k, n)),
                need_quot.then(|| quotient_module(ring, n, ideal, k)),
            )
        })
        .collect();
    let mut keys = Vec::new();
    for &v in &cfg.variants {
        for parity in 0..2u8 {
            for i in 0..=cfg.imax {
                for k in 0..=cfg.nmax {
                    keys.push((v, parity, i, k));
                }
            }
        }
    }
    keys.sort();
    keys.dedup();
    let cells: Vec<Result<CellRecord>> = keys
        .par_iter()
        .map(|&(variant, parity, i, k)| {
            let slot = match variant {
                Variant::Quotient => &modules[k].1,
                _ => &modules[k].0,
            };
            let target = match slot.as_ref().expect("module prepared") {
                Ok(t) => t,
                Err(e) => {
                    return cell_of(Err(e.clone())).map(|reg| CellRecord { variant, parity, i, n: k, reg });
                }
            };
            let h = 2 * i + parity as usize;
            let reg = cell_of((|| {
                let sq = if variant == Variant::Tor {
                    tor_from_resolution(ring, &res, target, h)?
                } else {
                    ext_from_resolution(ring, &res, target, h)?
                };
                regularity(ring, sq.presentation())
            })())?;
            Ok(CellRecord {
                variant,
                parity,
                i,
                n: k,
                reg,
            })
        })
        .collect();
    let cells = cells.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ExtRegTable {
        metadata: Metadata {
            field: ring.field().to_string(),
            degree_cap: ring.degree_cap(),
            homological_cap: hcap,
            imax: cfg.imax,
            nmax: cfg.nmax,
            rho_upper: cfg.rho_upper,
            f: ring.min_quotient_degree(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        cells,
    })
}

/// Shape of a sequence of regularities along one axis of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Asymptote {
    /// `value(t) = slope * t + intercept` for all `t ≥ onset`.
    Linear { slope: i64, intercept: i64, onset: usize },
    /// `-∞` from `onset` on.
    NegInfinity { onset: usize },
    NotLinear,
    Inconclusive,
}

/// Points needed after the onset to call a row eventually linear.
pub const MIN_STABLE_POINTS: usize = 3;

/// Finds the longest tail on which the sequence is `-∞` or has constant
/// first differences.
pub fn fit_sequence(values: &[Cell]) -> Asymptote {
    if values.len() < MIN_STABLE_POINTS || values.contains(&Cell::CapBreach) {
        return Asymptote::Inconclusive;
    }
    let regs: Vec<RegValue> = values.iter().filter_map(Cell::reg).collect();
    let last = regs.len() - 1;
    if regs[last].is_neg_infinity() {
        let onset = regs.iter().rposition(|r| !r.is_neg_infinity()).map_or(0, |p| p + 1);
        return if regs.len() - onset >= MIN_STABLE_POINTS {
            Asymptote::NegInfinity { onset }
        } else {
            Asymptote::NotLinear
        };
    }
    let fin: Vec<Option<i64>> = regs.iter().map(RegValue::finite).collect();
    let (Some(a), Some(b)) = (fin[last - 1], fin[last]) else {
        return Asymptote::NotLinear;
    };
    let slope = b - a;
    let mut onset = last - 1;
    while onset > 0 {
        match fin[onset - 1] {
            Some(v) if fin[onset].unwrap() - v == slope => onset -= 1,
            _ => break,
        }
    }
    if regs.len() - onset < MIN_STABLE_POINTS {
        return Asymptote::NotLinear;
    }
    Asymptote::Linear {
        slope,
        intercept: fin[onset].unwrap() - slope * onset as i64,
        onset,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    /// Vary `i` at fixed `n`.
    I { n: usize },
    /// Vary `n` at fixed `i`.
    N { i: usize },
}

pub fn fit_asymptote(t: &ExtRegTable, variant: Variant, parity: u8, axis: Axis) -> Asymptote {
    let values: Option<Vec<Cell>> = match axis {
        Axis::I { n } => (0..=t.metadata.imax).map(|i| t.get(variant, parity, i, n)).collect(),
        Axis::N { i } => (0..=t.metadata.nmax).map(|n| t.get(variant, parity, i, n)).collect(),
    };
    values.map_or(Asymptote::Inconclusive, |v| fit_sequence(&v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub variant: Variant,
    pub parity: u8,
    pub i: usize,
    pub n: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub variant: Variant,
    pub parity: u8,
    /// Smallest `ê` with `reg ≤ ρ n - f i + ê` on the grid; `None` is `-∞`.
    pub e_hat: Option<i64>,
    pub tight_cells: Vec<(usize, usize)>,
    /// Along `i` at the largest `n`.
    pub per_i: Asymptote,
    /// Along `n` at the largest `i`.
    pub per_n: Asymptote,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub rho_upper: i64,
    pub f: i64,
    pub entries: Vec<BoundEntry>,
    pub violations: Vec<Violation>,
    pub limitation: String,
}

impl BoundReport {
    pub fn entry(&self, variant: Variant, parity: u8) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.variant == variant && e.parity == parity)
    }

    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Measures `ê` per `(variant, parity)` for the Ext variants. A cell is a
/// violation when its degree cap was breached, or when it exceeds the
/// bound with a claimed constant from `claims`.
pub fn verify_bounds(
    t: &ExtRegTable,
    rho: i64,
    f: i64,
    claims: &BTreeMap<(Variant, u8), i64>,
) -> BoundReport {
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    for variant in t.variants().into_iter().filter(|v| v.is_ext()) {
        for parity in 0..2u8 {
            let cells: Vec<&CellRecord> =
                t.cells.iter().filter(|c| c.variant == variant && c.parity == parity).collect();
            let residual = |c: &CellRecord| -> Option<i64> {
                c.reg.reg()?.finite().map(|r| r - rho * c.n as i64 + f * c.i as i64)
            };
            let e_hat = cells.iter().filter_map(|c| residual(c)).max();
            for c in &cells {
                if c.reg == Cell::CapBreach {
                    violations.push(Violation {
                        variant,
                        parity,
                        i: c.i,
                        n: c.n,
                        reason: "degree cap breached".into(),
                    });
                } else if let (Some(r), Some(&e)) = (residual(c), claims.get(&(variant, parity))) {
                    if r > e {
                        violations.push(Violation {
                            variant,
                            parity,
                            i: c.i,
                            n: c.n,
                            reason: format!("exceeds the bound with e = {e} by {}", r - e),
                        });
                    }
                }
            }
            let tight_cells = cells
                .iter()
                .filter(|c| e_hat.is_some() && residual(c) == e_hat)
                .map(|c| (c.i, c.n))
                .collect();
            entries.push(BoundEntry {
                variant,
                parity,
                e_hat,
                tight_cells,
                per_i: fit_asymptote(t, variant, parity, Axis::I { n: t.metadata.nmax }),
                per_n: fit_asymptote(t, variant, parity, Axis::N { i: t.metadata.imax }),
            });
        }
    }
    BoundReport {
        rho_upper: rho,
        f,
        entries,
        violations,
        limitation: LIMITATION.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{BaseRing, GradedFreeModule, Vector};
    use crate::scalar::Field;

    fn fin(v: &[i64]) -> Vec<Cell> {
        v.iter().map(|&x| Cell::Reg(RegValue::Finite(x))).collect()
    }

    #[test]
    fn sequence_fitting() {
        assert_eq!(
            fit_sequence(&fin(&[0, -2, -4, -6])),
            Asymptote::Linear { slope: -2, intercept: 0, onset: 0 }
        );
        assert_eq!(
            fit_sequence(&fin(&[7, -2, -5, -8, -11])),
            Asymptote::Linear { slope: -3, intercept: 1, onset: 1 }
        );
        assert_eq!(fit_sequence(&fin(&[0, 1])), Asymptote::Inconclusive);
        assert_eq!(fit_sequence(&fin(&[0, 1, 3, 6])), Asymptote::NotLinear);
        let ninf = vec![Cell::Reg(RegValue::Finite(2)), Cell::Reg(RegValue::NegInfinity), Cell::Reg(RegValue::NegInfinity), Cell::Reg(RegValue::NegInfinity)];
        assert_eq!(fit_sequence(&ninf), Asymptote::NegInfinity { onset: 1 });
    }

    #[test]
    fn dual_numbers_sweep_and_bounds() {
        let q = Ring::polynomial(1, Field::Prime(32003));
        let x = q.var(0);
        let a = q.clone().with_quotient(vec![q.pow(&x, 2)]).unwrap();
        let k = ModulePresentation::from_relations(
            GradedFreeModule::new(vec![0], BaseRing::Quotient),
            &[vec![x.clone()] as Vector],
        )
        .unwrap();
        let cfg = SweepConfig {
            imax: 2,
            nmax: 1,
            variants: vec![Variant::Power],
            rho_upper: Some(0),
        };
        let t = sweep(&a, &k, &k, &IdealData::unit(&a), &cfg).unwrap();
        for i in 0..=2 {
            for n in 0..=1 {
                assert_eq!(t.get(Variant::Power, 0, i, n), Some(Cell::Reg(RegValue::Finite(-2 * i as i64))));
                assert_eq!(t.get(Variant::Power, 1, i, n), Some(Cell::Reg(RegValue::Finite(-2 * i as i64 - 1))));
            }
        }
        let rep = verify_bounds(&t, 0, 2, &BTreeMap::new());
        assert!(rep.is_sound());
        assert_eq!(rep.entry(Variant::Power, 0).unwrap().e_hat, Some(0));
        assert_eq!(rep.entry(Variant::Power, 1).unwrap().e_hat, Some(-1));
        let back = ExtRegTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(t.to_csv().unwrap().starts_with("variant,parity,i,n,reg\npower,0,0,0,0\n"));
    }
}
