//! `Ext_A^i(M, N)` and `Tor_i^A(M, N)` as explicit subquotient presentations.
//!
//! With `F` a free resolution of `M` and `N = coker(G_1 → G_0)`, the term
//! `Hom_A(F_l, N) = ⊕_k N(a_lk)` lives in the free module with twists
//! `g_p - a_lk`; likewise `F_l ⊗ N` uses `g_p + a_lk`. Blocks are indexed
//! `k * rank(G_0) + p`.

use crate::error::{Error, Result};
use crate::groebner::{contains, kernel_modulo, minimal_generators_ascending, quotient_relations};
use crate::module::{BaseRing, GradedFreeModule, GradedMap, ModulePresentation, Vector};
use crate::pieces::{hilbert_value, submodule_piece};
use crate::poly::{GradedPoly, Ring};
use crate::resolution::{resolve_over_a, FreeResolution};

/// `Z / B` inside a free module, with `B ⊆ Z`.
#[derive(Clone, Debug)]
pub struct SubquotientPresentation {
    ambient: GradedFreeModule,
    cycles: Vec<Vector>,
    boundaries: Vec<Vector>,
    generators: Vec<Vector>,
    presentation: ModulePresentation,
}

impl SubquotientPresentation {
    /// Builds the presentation of `<cycles> / <boundaries>`. Generators are
    /// chosen minimally modulo the boundaries.
    pub fn new(ring: &Ring, ambient: GradedFreeModule, cycles: Vec<Vector>, boundaries: Vec<Vector>) -> Result<Self> {
        for b in &boundaries {
            if !contains(ring, &cycles, &ambient, b)? {
                return Err(Error::Internal("boundary outside the cycles".into()));
            }
        }
        let generators = minimal_generators_ascending(ring, &cycles, &ambient, &boundaries)?;
        let zmap = GradedMap::generated_by(ambient.clone(), &generators)?;
        let rels = kernel_modulo(ring, &zmap, &boundaries)?;
        let presentation = ModulePresentation::from_relations(zmap.source().clone(), &rels)?;
        Ok(SubquotientPresentation {
            ambient,
            cycles,
            boundaries,
            generators,
            presentation,
        })
    }

    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn cycles(&self) -> &[Vector] {
        &self.cycles
    }

    /// Includes the relations of the ambient term.
    pub fn boundaries(&self) -> &[Vector] {
        &self.boundaries
    }

    /// Representatives in the ambient of the presentation's generators.
    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Compares `dim Z_t - dim B_t` with the Hilbert function of the
    /// presentation for every `t` in `degrees`.
    pub fn check_hilbert(&self, ring: &Ring, degrees: impl IntoIterator<Item = i64>) -> bool {
        let q = ring.ambient();
        let zrel = quotient_relations(ring, &self.ambient);
        let with_z = |gens: &[Vector]| {
            let mut g = gens.to_vec();
            g.extend(zrel.iter().cloned());
            g
        };
        let (zs, bs) = (with_z(&self.cycles), with_z(&self.boundaries));
        degrees.into_iter().all(|t| {
            let dz = submodule_piece(&q, &zs, &self.ambient, t).1.dim();
            let db = submodule_piece(&q, &bs, &self.ambient, t).1.dim();
            dz - db == hilbert_value(ring, &self.presentation, t)
        })
    }
}

/// A complex of presented modules; `maps[l]` starts at `terms[l]`.
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    pub terms: Vec<ModulePresentation>,
    pub maps: Vec<GradedMap>,
    /// `+1` for cochain complexes, `-1` for chain complexes.
    pub direction: i8,
}

fn block_module(f: &GradedFreeModule, g: &GradedFreeModule, sign: i64) -> GradedFreeModule {
    let twists = f
        .twists()
        .iter()
        .flat_map(|a| g.twists().iter().map(move |gp| gp + sign * a))
        .collect();
    GradedFreeModule::new(twists, BaseRing::Quotient)
}

fn block_relations(nf: usize, n: &ModulePresentation) -> Vec<Vector> {
    let r = n.generators().rank();
    let mut out = Vec::new();
    for k in 0..nf {
        for rel in n.relations() {
            let mut v = vec![GradedPoly::zero(); nf * r];
            v[k * r..(k + 1) * r].clone_from_slice(&rel);
            out.push(v);
        }
    }
    out
}

fn needs(res: &FreeResolution, l: usize) -> Result<()> {
    if res.module(l).is_none() {
        return Err(Error::CapExceeded {
            cap: res.len() as i64,
            degree: l as i64,
        });
    }
    Ok(())
}

fn check_module(n: &ModulePresentation) -> Result<()> {
    if n.base() != BaseRing::Quotient {
        return Err(Error::Precondition("the second argument must be a module over A".into()));
    }
    Ok(())
}

/// `0 → Hom(F_0, N) → Hom(F_1, N) → ⋯` through position `upto`.
pub fn hom_complex(res: &FreeResolution, n: &ModulePresentation, upto: usize) -> Result<PresentedComplex> {
    check_module(n)?;
    needs(res, upto)?;
    let g = n.generators();
    let r = g.rank();
    let mut terms = Vec::new();
    for l in 0..=upto {
        let f = res.module(l).unwrap();
        let amb = block_module(&f, g, -1);
        terms.push(ModulePresentation::from_relations(amb, &block_relations(f.rank(), n))?);
    }
    let mut maps = Vec::new();
    for l in 0..upto {
        let d = res.differential_or_zero(l + 1).unwrap();
        let (fs, ft) = (d.target().rank(), d.source().rank());
        let mut matrix = vec![vec![GradedPoly::zero(); fs * r]; ft * r];
        for m in 0..ft {
            for k in 0..fs {
                for p in 0..r {
                    matrix[m * r + p][k * r + p] = d.entry(k, m).clone();
                }
            }
        }
        let src = terms[l].generators().clone();
        let tgt = terms[l + 1].generators().clone();
        maps.push(GradedMap::new(src, tgt, matrix)?);
    }
    Ok(PresentedComplex {
        terms,
        maps,
        direction: 1,
    })
}

/// `⋯ → F_1 ⊗ N → F_0 ⊗ N → 0` through position `upto`; `maps[l]` is
/// `F_{l+1} ⊗ N → F_l ⊗ N`.
pub fn tensor_complex(res: &FreeResolution, n: &ModulePresentation, upto: usize) -> Result<PresentedComplex> {
    check_module(n)?;
    needs(res, upto)?;
    let g = n.generators();
    let r = g.rank();
    let mut terms = Vec::new();
    for l in 0..=upto {
        let f = res.module(l).unwrap();
        let amb = block_module(&f, g, 1);
        terms.push(ModulePresentation::from_relations(amb, &block_relations(f.rank(), n))?);
    }
    let mut maps = Vec::new();
    for l in 0..upto {
        let d = res.differential_or_zero(l + 1).unwrap();
        let (ft, fs) = (d.target().rank(), d.source().rank());
        let mut matrix = vec![vec![GradedPoly::zero(); fs * r]; ft * r];
        for k in 0..ft {
            for m in 0..fs {
                for p in 0..r {
                    matrix[k * r + p][m * r + p] = d.entry(k, m).clone();
                }
            }
        }
        let src = terms[l + 1].generators().clone();
        let tgt = terms[l].generators().clone();
        maps.push(GradedMap::new(src, tgt, matrix)?);
    }
    Ok(PresentedComplex {
        terms,
        maps,
        direction: -1,
    })
}

/// Homology of a complex at position `i`; needs terms through `i + 1`.
pub fn homology(ring: &Ring, c: &PresentedComplex, i: usize) -> Result<SubquotientPresentation> {
    let term = &c.terms[i];
    let ambient = term.generators().clone();
    // outgoing and incoming maps at position i
    let (out, inc) = if c.direction > 0 {
        (c.maps.get(i), if i > 0 { c.maps.get(i - 1) } else { None })
    } else {
        (if i > 0 { c.maps.get(i - 1) } else { None }, c.maps.get(i))
    };
    let next = if c.direction > 0 { i + 1 } else { i.wrapping_sub(1) };
    let cycles = match out {
        Some(phi) => kernel_modulo(ring, phi, &c.terms[next].relations())?,
        None => (0..ambient.rank()).map(|k| ambient.basis_vector(ring, k)).collect(),
    };
    let mut boundaries: Vec<Vector> = inc.map(|phi| phi.columns()).unwrap_or_default();
    boundaries.extend(term.relations());
    SubquotientPresentation::new(ring, ambient, cycles, boundaries)
}

/// `Ext^i` from a resolution computed through at least `i + 1`.
pub fn ext_from_resolution(
    ring: &Ring,
    res: &FreeResolution,
    n: &ModulePresentation,
    i: usize,
) -> Result<SubquotientPresentation> {
    let c = hom_complex(res, n, i + 1)?;
    homology(ring, &c, i)
}

/// `Tor_i` from a resolution computed through at least `i + 1`.
pub fn tor_from_resolution(
    ring: &Ring,
    res: &FreeResolution,
    n: &ModulePresentation,
    i: usize,
) -> Result<SubquotientPresentation> {
    let c = tensor_complex(res, n, i + 1)?;
    homology(ring, &c, i)
}

/// `Ext_A^i(M, N)`.
pub fn ext(ring: &Ring, m: &ModulePresentation, n: &ModulePresentation, i: usize) -> Result<SubquotientPresentation> {
    let res = resolve_over_a(ring, m, i + 1)?;
    ext_from_resolution(ring, &res, n, i)
}

/// `Tor_i^A(M, N)`.
pub fn tor(ring: &Ring, m: &ModulePresentation, n: &ModulePresentation, i: usize) -> Result<SubquotientPresentation> {
    let res = resolve_over_a(ring, m, i + 1)?;
    tor_from_resolution(ring, &res, n, i)
}
