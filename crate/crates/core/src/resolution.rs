//! Graded free resolutions: finite minimal resolutions over `Q`, truncated
//! resolutions over `A`, Gaussian minimization, and Betti tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{kernel_modulo, minimal_generators_ascending};
use crate::module::{vec_is_zero, BaseRing, GradedFreeModule, GradedMap, ModulePresentation, RegValue, Vector};
use crate::poly::{GradedPoly, Ring};

/// `⋯ → F_2 → F_1 → F_0`, computed through homological degree `len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeResolution {
    base: BaseRing,
    modules: Vec<GradedFreeModule>,
    maps: Vec<GradedMap>,
    minimal: bool,
    terminated: bool,
}

impl FreeResolution {
    /// Assembles a resolution from explicit data, checking homogeneity and
    /// `φ_l ∘ φ_{l+1} = 0`. `terminated` states that the last module is the
    /// end of the resolution.
    pub fn from_parts(
        ring: &Ring,
        modules: Vec<GradedFreeModule>,
        maps: Vec<GradedMap>,
        terminated: bool,
    ) -> Result<Self> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Dimension("a resolution needs one more module than maps".into()));
        }
        for (l, phi) in maps.iter().enumerate() {
            if phi.source().twists() != modules[l + 1].twists() || phi.target().twists() != modules[l].twists() {
                return Err(Error::Dimension(format!("map {} does not match its modules", l + 1)));
            }
            if !crate::module::check_homogeneous_map(phi) {
                return Err(Error::Homogeneity(format!("differential {} is not homogeneous", l + 1)));
            }
        }
        let base = modules[0].base();
        let mut r = FreeResolution {
            base,
            modules,
            maps,
            minimal: false,
            terminated,
        };
        r.verify_complex(ring)?;
        r.minimal = r.has_no_unit_entries(ring);
        Ok(r)
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    /// `F_0, F_1, ...` through the computed length.
    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    /// The differential `φ_l: F_l → F_{l-1}` for `l ≥ 1`.
    pub fn differential(&self, l: usize) -> Option<&GradedMap> {
        if l == 0 {
            None
        } else {
            self.maps.get(l - 1)
        }
    }

    pub fn differentials(&self) -> &[GradedMap] {
        &self.maps
    }

    /// Highest computed homological degree.
    pub fn len(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.modules.iter().all(|f| f.rank() == 0)
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// True if the resolution is known to stop at `len()`.
    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    /// The free module `F_l`, zero beyond a terminated resolution.
    pub fn module(&self, l: usize) -> Option<GradedFreeModule> {
        match self.modules.get(l) {
            Some(f) => Some(f.clone()),
            None if self.terminated => Some(GradedFreeModule::zero(self.base)),
            None => None,
        }
    }

    /// `φ_l`, with zero maps beyond a terminated resolution.
    pub fn differential_or_zero(&self, l: usize) -> Option<GradedMap> {
        if l == 0 {
            return Some(GradedMap::zero(self.module(0)?, GradedFreeModule::zero(self.base)));
        }
        match self.maps.get(l - 1) {
            Some(m) => Some(m.clone()),
            None => Some(GradedMap::zero(self.module(l)?, self.module(l - 1)?)),
        }
    }

    /// Checks `φ_l ∘ φ_{l+1} = 0` (modulo the quotient ideal over `A`).
    pub fn verify_complex(&self, ring: &Ring) -> Result<()> {
        let q = ring.ambient();
        for l in 1..self.maps.len() {
            let c = self.maps[l - 1].compose(&q, &self.maps[l])?;
            let zero = c
                .matrix()
                .iter()
                .all(|row| row.iter().all(|p| self.reduce(ring, p).is_zero()));
            if !zero {
                return Err(Error::Internal(format!("φ_{} ∘ φ_{} is not zero", l, l + 1)));
            }
        }
        Ok(())
    }

    fn reduce(&self, ring: &Ring, p: &GradedPoly) -> GradedPoly {
        match self.base {
            BaseRing::Quotient => ring.reduce(p),
            BaseRing::Polynomial => p.clone(),
        }
    }

    fn has_no_unit_entries(&self, ring: &Ring) -> bool {
        self.maps
            .iter()
            .all(|m| m.matrix().iter().all(|row| row.iter().all(|p| !self.reduce(ring, p).is_unit())))
    }
}

/// Graded Betti numbers `β_{ij}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
    /// Set when read off a non-minimal resolution: the numbers are then only
    /// upper bounds.
    pub upper_bound: bool,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, i: usize, j: i64, count: usize) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries `((i, j), β_ij)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `max { j - i : β_ij ≠ 0 }`, `-∞` for the empty table.
    pub fn regularity(&self) -> RegValue {
        self.entries
            .keys()
            .map(|&(i, j)| j - i as i64)
            .max()
            .map_or(RegValue::NegInfinity, RegValue::Finite)
    }

    /// Entries with `j ≤ window`.
    pub fn restricted(&self, window: i64) -> BettiTable {
        BettiTable {
            entries: self.entries.iter().filter(|(k, _)| k.1 <= window).map(|(&k, &v)| (k, v)).collect(),
            upper_bound: self.upper_bound,
        }
    }

    /// `i,j,beta` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,beta\n");
        for ((i, j), b) in self.entries() {
            s.push_str(&format!("{i},{j},{b}\n"));
        }
        s
    }
}

/// Reads the twist lists of a resolution; tagged as an upper bound unless
/// the resolution is minimal.
pub fn betti_table(r: &FreeResolution) -> BettiTable {
    let mut t = BettiTable::new();
    for (i, f) in r.modules().iter().enumerate() {
        for &a in f.twists() {
            t.insert(i, a, 1);
        }
    }
    t.upper_bound = !r.is_minimal();
    t
}

/// Cancels one unit entry `C[k][m]` of the columns `cols` (target rank
/// `rows`): returns the new columns with row `k` and column `m` removed.
fn cancel_unit(ring: &Ring, base: BaseRing, cols: &[Vector], k: usize, m: usize) -> Result<Vec<Vector>> {
    let u = cols[m][k].constant_term().expect("unit entry").clone();
    let uinv = u.inv();
    let mut out = Vec::with_capacity(cols.len().saturating_sub(1));
    for (b, col) in cols.iter().enumerate() {
        if b == m {
            continue;
        }
        let factor = ring.scale(&col[k], &uinv);
        let mut new = Vec::with_capacity(col.len() - 1);
        for (a, entry) in col.iter().enumerate() {
            if a == k {
                continue;
            }
            let e = if factor.is_zero() || cols[m][a].is_zero() {
                entry.clone()
            } else {
                ring.sub(entry, &ring.mul(&cols[m][a], &factor))?
            };
            new.push(match base {
                BaseRing::Quotient => ring.reduce(&e),
                BaseRing::Polynomial => e,
            });
        }
        out.push(new);
    }
    Ok(out)
}

fn find_unit(cols: &[Vector]) -> Option<(usize, usize)> {
    cols.iter()
        .enumerate()
        .find_map(|(m, c)| c.iter().position(GradedPoly::is_unit).map(|k| (k, m)))
}

/// Removes unit entries from a presentation matrix by Gaussian
/// cancellation and drops redundant relations; the cokernel is unchanged and
/// the generators of the result are minimal.
pub fn prune_presentation(ring: &Ring, m: &ModulePresentation) -> Result<ModulePresentation> {
    let base = m.base();
    let reduce = |v: &Vector| -> Vector {
        match base {
            BaseRing::Quotient => v.iter().map(|p| ring.reduce(p)).collect(),
            BaseRing::Polynomial => v.clone(),
        }
    };
    let mut twists = m.generators().twists().to_vec();
    let mut cols: Vec<Vector> = m.relations().iter().map(reduce).filter(|c| !vec_is_zero(c)).collect();
    while let Some((k, mm)) = find_unit(&cols) {
        cols = cancel_unit(ring, base, &cols, k, mm)?;
        twists.remove(k);
        cols.retain(|c| !vec_is_zero(c));
    }
    let target = GradedFreeModule::new(twists, base);
    let rels = minimal_generators_ascending(ring, &cols, &target, &[])?;
    ModulePresentation::from_relations(target, &rels)
}

fn build(ring: &Ring, m: &ModulePresentation, cap: Option<usize>, minimal: bool) -> Result<FreeResolution> {
    let pres = if minimal { prune_presentation(ring, m)? } else { m.clone() };
    let f0 = pres.generators().clone();
    let first = if minimal {
        pres.relations()
    } else {
        pres.relations().into_iter().filter(|c| !vec_is_zero(c)).collect()
    };
    let mut modules = vec![f0.clone()];
    let mut maps: Vec<GradedMap> = Vec::new();
    let mut terminated = false;
    let mut gens = first;
    let max_len = cap.unwrap_or(ring.nvars() + 1);
    loop {
        if gens.is_empty() {
            terminated = true;
            break;
        }
        if modules.len() > max_len {
            if cap.is_none() {
                return Err(Error::Internal("resolution over Q longer than the number of variables".into()));
            }
            break;
        }
        let target = modules.last().unwrap().clone();
        let phi = GradedMap::generated_by(target, &gens)?;
        modules.push(phi.source().clone());
        gens = kernel_modulo(ring, &phi, &[])?;
        maps.push(phi);
    }
    let mut r = FreeResolution {
        base: f0.base(),
        modules,
        maps,
        minimal: false,
        terminated,
    };
    r.minimal = r.has_no_unit_entries(ring);
    Ok(r)
}

/// Finite graded free resolution of a module presented over `Q`.
pub fn resolve_over_q(ring: &Ring, m: &ModulePresentation, minimal: bool) -> Result<FreeResolution> {
    if m.base() != BaseRing::Polynomial {
        return Err(Error::Precondition("resolve_over_q needs a presentation over Q".into()));
    }
    let q = ring.ambient();
    let r = build(&q, m, None, minimal)?;
    if minimal && !r.is_minimal() {
        return minimize(&q, &r);
    }
    Ok(r)
}

/// Minimal graded free resolution over `A`, computed through homological
/// degree `cap`.
pub fn resolve_over_a(ring: &Ring, m: &ModulePresentation, cap: usize) -> Result<FreeResolution> {
    if m.base() != BaseRing::Quotient {
        return Err(Error::Precondition("resolve_over_a needs a presentation over A".into()));
    }
    let r = build(ring, m, Some(cap), true)?;
    if !r.is_minimal() {
        return minimize(ring, &r);
    }
    Ok(r)
}

/// Gaussian cancellation of unit entries; the result has no unit entries.
pub fn minimize(ring: &Ring, r: &FreeResolution) -> Result<FreeResolution> {
    let base = r.base;
    let mut modules: Vec<Vec<i64>> = r.modules.iter().map(|f| f.twists().to_vec()).collect();
    let mut cols: Vec<Vec<Vector>> = r
        .maps
        .iter()
        .map(|m| {
            m.columns()
                .into_iter()
                .map(|c| match base {
                    BaseRing::Quotient => c.iter().map(|p| ring.reduce(p)).collect(),
                    BaseRing::Polynomial => c,
                })
                .collect()
        })
        .collect();
    'outer: loop {
        for l in 0..cols.len() {
            if let Some((k, m)) = find_unit(&cols[l]) {
                // φ_{l+1} = cols[l]: F_{l+1} → F_l; unit at row k of F_l, column m of F_{l+1}
                cols[l] = cancel_unit(ring, base, &cols[l], k, m)?;
                modules[l].remove(k);
                modules[l + 1].remove(m);
                if l > 0 {
                    cols[l - 1].remove(k);
                }
                if l + 1 < cols.len() {
                    for c in cols[l + 1].iter_mut() {
                        c.remove(m);
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    let modules: Vec<GradedFreeModule> = modules.into_iter().map(|t| GradedFreeModule::new(t, base)).collect();
    let maps = cols
        .iter()
        .enumerate()
        .map(|(l, c)| GradedMap::from_columns(modules[l + 1].clone(), modules[l].clone(), c))
        .collect::<Result<Vec<_>>>()?;
    let mut out = FreeResolution {
        base,
        modules,
        maps,
        minimal: false,
        terminated: r.terminated,
    };
    // trailing zero modules carry no information
    while out.modules.len() > 1 && out.terminated && out.modules.last().unwrap().rank() == 0 {
        out.modules.pop();
        out.maps.pop();
    }
    out.minimal = out.has_no_unit_entries(ring);
    Ok(out)
}
