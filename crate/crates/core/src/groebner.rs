//! Gröbner bases for homogeneous submodules of graded free modules over `Q`.
//!
//! Computations over `A = Q/(z)` are embedded in `Q`: a submodule of
//! `⊕ A(-a_k)` is represented by its generators together with `z_j e_k`.
//! Kernels and coefficient lifts use the graph-module construction:
//! a Gröbner basis of `{(φ(e_m), e_m)}` in `G ⊕ F` under an order where
//! every position of `G` beats every position of `F`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::module::{BaseRing, GradedFreeModule, GradedMap, Vector};
use crate::poly::{GradedPoly, Monomial, MonomialOrder, Ring};
use crate::scalar::{Field, Scalar};

/// Default bound on the polynomial degree of S-pairs.
pub const DEFAULT_DEGREE_CAP: i64 = 40;

/// Order on module terms `(position, monomial)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Positions compared first; `priority[0]` is the most significant.
    PositionOverTerm(Vec<usize>),
    /// Monomials compared first, positions break ties by index.
    TermOverPosition,
}

impl ModuleOrder {
    /// Position-over-term with positions ordered by ascending twist, ties by index.
    pub fn ascending_twist(ambient: &GradedFreeModule) -> Self {
        let mut idx: Vec<usize> = (0..ambient.rank()).collect();
        idx.sort_by_key(|&k| (ambient.twists()[k], k));
        ModuleOrder::PositionOverTerm(idx)
    }
}

#[derive(Clone, Debug)]
struct OrderCtx {
    mon: MonomialOrder,
    rank: Vec<usize>,
    top: bool,
}

impl OrderCtx {
    fn new(mon: MonomialOrder, order: &ModuleOrder, npos: usize) -> Self {
        match order {
            ModuleOrder::PositionOverTerm(priority) => {
                let mut rank = vec![usize::MAX; npos];
                for (r, &p) in priority.iter().enumerate() {
                    rank[p] = r;
                }
                assert!(rank.iter().all(|&r| r != usize::MAX), "priority list must cover every position");
                OrderCtx { mon, rank, top: false }
            }
            ModuleOrder::TermOverPosition => OrderCtx {
                mon,
                rank: (0..npos).collect(),
                top: true,
            },
        }
    }

    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        // smaller rank means larger term
        let by_pos = self.rank[b.0].cmp(&self.rank[a.0]);
        if self.top {
            self.mon.cmp(&a.1, &b.1).then(by_pos)
        } else {
            by_pos.then_with(|| self.mon.cmp(&a.1, &b.1))
        }
    }
}

type Term = (usize, Monomial, Scalar);
type MPoly = Vec<Term>;

/// Incremental, degree-truncatable Buchberger engine.
#[derive(Clone, Debug)]
pub(crate) struct Engine {
    field: Field,
    ctx: OrderCtx,
    twists: Vec<i64>,
    basis: Vec<MPoly>,
    by_pos: Vec<Vec<usize>>,
    pairs: BinaryHeap<Reverse<(i64, usize, usize)>>,
    cap: i64,
}

impl Engine {
    pub(crate) fn new(ring: &Ring, ambient: &GradedFreeModule, order: &ModuleOrder, cap: i64) -> Self {
        Engine {
            field: ring.field(),
            ctx: OrderCtx::new(ring.order(), order, ambient.rank()),
            twists: ambient.twists().to_vec(),
            basis: Vec::new(),
            by_pos: vec![Vec::new(); ambient.rank()],
            pairs: BinaryHeap::new(),
            cap,
        }
    }

    fn to_mpoly(&self, v: &[GradedPoly]) -> MPoly {
        let mut terms: MPoly = v
            .iter()
            .enumerate()
            .flat_map(|(k, p)| p.terms().iter().map(move |(m, c)| (k, m.clone(), c.clone())))
            .collect();
        terms.sort_by(|a, b| self.ctx.cmp(b, a));
        terms
    }

    fn to_vector(&self, p: &MPoly) -> Vector {
        let mut coords: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); self.twists.len()];
        for (k, m, c) in p {
            coords[*k].push((m.clone(), c.clone()));
        }
        coords
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| self.ctx.mon.cmp(&b.0, &a.0));
                GradedPoly::from_sorted_unchecked(t)
            })
            .collect()
    }

    /// `a - c * m * g`, both sorted descending.
    fn sub_mul(&self, a: &[Term], c: &Scalar, m: &Monomial, g: &[Term]) -> MPoly {
        let mut out = Vec::with_capacity(a.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |t: &Term| -> Term { (t.0, t.1.mul(m), -(&t.2 * c)) };
        while i < a.len() || j < g.len() {
            if j == g.len() {
                out.push(a[i].clone());
                i += 1;
                continue;
            }
            let gt = scaled(&g[j]);
            if i == a.len() {
                out.push(gt);
                j += 1;
                continue;
            }
            match self.ctx.cmp(&a[i], &gt) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(gt);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].2 + &gt.2;
                    if !s.is_zero() {
                        out.push((a[i].0, a[i].1.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    fn find_reducer(&self, pos: usize, mon: &Monomial) -> Option<usize> {
        self.by_pos[pos]
            .iter()
            .copied()
            .find(|&i| self.basis[i][0].1.divides(mon))
    }

    /// Full normal form: no term of the result is divisible by a leading term.
    fn reduce(&self, p: MPoly) -> MPoly {
        let mut rest = p;
        let mut out: MPoly = Vec::new();
        while !rest.is_empty() {
            let (pos, mon, c) = rest[0].clone();
            match self.find_reducer(pos, &mon) {
                Some(i) => {
                    let g = &self.basis[i];
                    let q = g[0].1.quotient_of(&mon);
                    // g is monic
                    rest = self.sub_mul(&rest, &c, &q, g);
                }
                None => {
                    out.push(rest.remove(0));
                }
            }
        }
        out
    }

    fn insert(&mut self, mut p: MPoly) {
        debug_assert!(!p.is_empty());
        let inv = p[0].2.inv();
        for t in p.iter_mut() {
            t.2 = &t.2 * &inv;
        }
        let idx = self.basis.len();
        let (pos, lead) = (p[0].0, p[0].1.clone());
        for &j in &self.by_pos[pos] {
            let other = &self.basis[j][0].1;
            // product criterion is only valid in the ideal case
            if self.twists.len() == 1 && lead.is_coprime(other) {
                continue;
            }
            let l = lead.lcm(other);
            self.pairs.push(Reverse((l.degree() + self.twists[pos], j, idx)));
        }
        self.by_pos[pos].push(idx);
        self.basis.push(p);
    }

    fn spoly(&self, i: usize, j: usize) -> MPoly {
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let l = gi[0].1.lcm(&gj[0].1);
        let qi = gi[0].1.quotient_of(&l);
        let qj = gj[0].1.quotient_of(&l);
        let one = self.field.one();
        let lifted: MPoly = gi.iter().map(|(k, m, c)| (*k, m.mul(&qi), c.clone())).collect();
        self.sub_mul(&lifted, &one, &qj, gj)
    }

    /// Adds a generator; returns true if it was not already in the span
    /// of the current (possibly truncated) basis.
    pub(crate) fn add(&mut self, v: &[GradedPoly]) -> bool {
        let p = self.reduce(self.to_mpoly(v));
        if p.is_empty() {
            false
        } else {
            self.insert(p);
            true
        }
    }

    /// Processes S-pairs of degree at most `upto` (all when `None`).
    pub(crate) fn run(&mut self, upto: Option<i64>) -> Result<()> {
        while let Some(Reverse((deg, i, j))) = self.pairs.peek().copied() {
            if upto.is_some_and(|d| deg > d) {
                break;
            }
            self.pairs.pop();
            let pos = self.basis[i][0].0;
            let mono_deg = deg - self.twists[pos];
            if mono_deg > self.cap {
                return Err(Error::CapExceeded {
                    cap: self.cap,
                    degree: mono_deg,
                });
            }
            let s = self.reduce(self.spoly(i, j));
            if !s.is_empty() {
                self.insert(s);
            }
        }
        Ok(())
    }

    pub(crate) fn normal_form(&self, v: &[GradedPoly]) -> Vector {
        self.to_vector(&self.reduce(self.to_mpoly(v)))
    }

    fn elements(&self) -> Vec<Vector> {
        self.basis.iter().map(|p| self.to_vector(p)).collect()
    }
}

/// A Gröbner basis of a submodule of a graded free module over `Q`.
#[derive(Clone, Debug)]
pub struct GBasis {
    ambient: GradedFreeModule,
    order: ModuleOrder,
    engine: Engine,
}

impl GBasis {
    pub fn ambient(&self) -> &GradedFreeModule {
        &self.ambient
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    /// Basis elements, each monic in its leading term.
    pub fn elements(&self) -> Vec<Vector> {
        self.engine.elements()
    }

    pub fn len(&self) -> usize {
        self.engine.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.basis.is_empty()
    }

    /// Leading terms `(position, monomial)` of the basis elements.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.engine.basis.iter().map(|p| (p[0].0, p[0].1.clone())).collect()
    }

    /// Re-checks the Buchberger criterion: every S-pair reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let e = &self.engine;
        (0..e.basis.len()).all(|i| {
            (i + 1..e.basis.len()).all(|j| e.basis[i][0].0 != e.basis[j][0].0 || e.reduce(e.spoly(i, j)).is_empty())
        })
    }

    pub fn contains(&self, v: &[GradedPoly]) -> bool {
        crate::module::vec_is_zero(&self.engine.normal_form(v))
    }
}

/// Gröbner basis of the submodule of `ambient` generated by `generators`,
/// with the default position-over-term order.
pub fn buchberger(ring: &Ring, generators: &[Vector], ambient: &GradedFreeModule, cap: i64) -> Result<GBasis> {
    buchberger_with_order(ring, generators, ambient, ModuleOrder::ascending_twist(ambient), cap)
}

pub fn buchberger_with_order(
    ring: &Ring,
    generators: &[Vector],
    ambient: &GradedFreeModule,
    order: ModuleOrder,
    cap: i64,
) -> Result<GBasis> {
    let mut engine = Engine::new(ring, ambient, &order, cap);
    let mut gens: Vec<(i64, usize)> = Vec::new();
    for (k, g) in generators.iter().enumerate() {
        if let Some(d) = ambient.degree_of(g)? {
            gens.push((d, k));
        }
    }
    gens.sort();
    for (d, k) in gens {
        engine.run(Some(d - 1))?;
        engine.add(&generators[k]);
    }
    engine.run(None)?;
    Ok(GBasis {
        ambient: ambient.clone(),
        order,
        engine,
    })
}

/// Remainder of `v` modulo `gb`.
pub fn normal_form(_ring: &Ring, v: &[GradedPoly], gb: &GBasis) -> Vector {
    gb.engine.normal_form(v)
}

/// `z_j e_k` for all `j, k`, when `ambient` is over the quotient ring.
pub fn quotient_relations(ring: &Ring, ambient: &GradedFreeModule) -> Vec<Vector> {
    if ambient.base() != BaseRing::Quotient {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in 0..ambient.rank() {
        for z in ring.quotient() {
            let mut v = ambient.zero_vector();
            v[k] = z.clone();
            out.push(v);
        }
    }
    out
}

/// Gröbner basis of `<generators> + (z) ambient` (the second summand only
/// over the quotient ring).
pub fn submodule_basis(ring: &Ring, generators: &[Vector], ambient: &GradedFreeModule) -> Result<GBasis> {
    let mut all = generators.to_vec();
    all.extend(quotient_relations(ring, ambient));
    buchberger(ring, &all, ambient, ring.degree_cap())
}

/// Membership of `v` in the submodule generated by `generators`.
pub fn contains(ring: &Ring, generators: &[Vector], ambient: &GradedFreeModule, v: &[GradedPoly]) -> Result<bool> {
    ambient.degree_of(v)?;
    Ok(submodule_basis(ring, generators, ambient)?.contains(v))
}

/// Equality of the submodules generated by `u` and `v`, via mutual membership.
pub fn submodule_equal(ring: &Ring, u: &[Vector], v: &[Vector], ambient: &GradedFreeModule) -> Result<bool> {
    let gu = submodule_basis(ring, u, ambient)?;
    let gv = submodule_basis(ring, v, ambient)?;
    Ok(u.iter().all(|x| gv.contains(x)) && v.iter().all(|x| gu.contains(x)))
}

/// Graded Nakayama selection, returned in ascending degree (ties by input
/// index). Elements are kept in canonical form modulo the quotient ideal.
pub(crate) fn minimal_generators_ascending(
    ring: &Ring,
    generators: &[Vector],
    ambient: &GradedFreeModule,
    extra_relations: &[Vector],
) -> Result<Vec<Vector>> {
    let order = ModuleOrder::ascending_twist(ambient);
    let mut engine = Engine::new(ring, ambient, &order, ring.degree_cap());
    let mut rels = extra_relations.to_vec();
    rels.extend(quotient_relations(ring, ambient));
    let mut items: Vec<(i64, usize, bool)> = Vec::new();
    for (k, r) in rels.iter().enumerate() {
        if let Some(d) = ambient.degree_of(r)? {
            items.push((d, k, false));
        }
    }
    let mut degs = Vec::new();
    for (k, g) in generators.iter().enumerate() {
        let d = ambient.degree_of(g)?;
        degs.push(d);
        if let Some(d) = d {
            items.push((d, k, true));
        }
    }
    // relations of a degree are inserted before generators of that degree
    items.sort_by_key(|&(d, k, is_gen)| (d, is_gen, k));
    let reduce_mod_z = ambient.base() == BaseRing::Quotient && !ring.is_polynomial();
    let mut kept = Vec::new();
    for (d, k, is_gen) in items {
        engine.run(Some(d))?;
        if is_gen {
            if engine.add(&generators[k]) {
                let g: Vector = if reduce_mod_z {
                    generators[k].iter().map(|p| ring.reduce(p)).collect()
                } else {
                    generators[k].clone()
                };
                kept.push(g);
            }
        } else {
            engine.add(&rels[k]);
        }
    }
    Ok(kept)
}

/// A minimal homogeneous generating set of the submodule generated by
/// `generators`, sorted by descending degree.
pub fn minimal_generators(ring: &Ring, generators: &[Vector], ambient: &GradedFreeModule) -> Result<Vec<Vector>> {
    let mut out = minimal_generators_ascending(ring, generators, ambient, &[])?;
    let mut keyed: Vec<(i64, usize, Vector)> = out
        .drain(..)
        .enumerate()
        .map(|(i, v)| (ambient.degree_of(&v).ok().flatten().unwrap_or(0), i, v))
        .collect();
    keyed.sort_by_key(|&(d, i, _)| (Reverse(d), i));
    Ok(keyed.into_iter().map(|(_, _, v)| v).collect())
}

/// Graph-module Gröbner basis for `φ: F → G / <relations>`.
struct GraphBasis {
    target_rank: usize,
    engine: Engine,
}

impl GraphBasis {
    fn new(ring: &Ring, phi: &GradedMap, relations: &[Vector]) -> Result<Self> {
        let g = phi.target();
        let f = phi.source();
        let graph = g.over(BaseRing::Polynomial).direct_sum(&f.over(BaseRing::Polynomial));
        let mut g_order = match ModuleOrder::ascending_twist(g) {
            ModuleOrder::PositionOverTerm(p) => p,
            ModuleOrder::TermOverPosition => unreachable!(),
        };
        if let ModuleOrder::PositionOverTerm(p) = ModuleOrder::ascending_twist(f) {
            g_order.extend(p.into_iter().map(|k| k + g.rank()));
        }
        let order = ModuleOrder::PositionOverTerm(g_order);
        let mut gens: Vec<Vector> = Vec::new();
        for (m, col) in phi.columns().into_iter().enumerate() {
            let mut v = col;
            v.extend(f.basis_vector(ring, m));
            gens.push(v);
        }
        let mut rels = relations.to_vec();
        rels.extend(quotient_relations(ring, g));
        for r in rels {
            let mut v = r;
            v.extend(f.zero_vector());
            gens.push(v);
        }
        let gb = buchberger_with_order(&ring.ambient(), &gens, &graph, order, ring.degree_cap())?;
        Ok(GraphBasis {
            target_rank: g.rank(),
            engine: gb.engine,
        })
    }

    /// Source parts of basis elements whose target part vanishes.
    fn kernel_elements(&self) -> Result<Vec<Vector>> {
        let mut out = Vec::new();
        for p in &self.engine.basis {
            if p[0].0 >= self.target_rank {
                let v = self.engine.to_vector(p);
                if !crate::module::vec_is_zero(&v[..self.target_rank]) {
                    return Err(Error::Internal("graph basis element with nonzero target part".into()));
                }
                out.push(v[self.target_rank..].to_vec());
            }
        }
        Ok(out)
    }

    fn lift(&self, ring: &Ring, v: &[GradedPoly], source_rank: usize) -> Option<Vector> {
        let mut w = v.to_vec();
        w.extend(std::iter::repeat_with(GradedPoly::zero).take(source_rank));
        let r = self.engine.normal_form(&w);
        if !crate::module::vec_is_zero(&r[..self.target_rank]) {
            return None;
        }
        Some(r[self.target_rank..].iter().map(|p| ring.neg(p)).collect())
    }
}

/// Generators of `{v ∈ F : φ(v) ∈ <relations> (+ z G)}`, minimal modulo
/// `z F` when the source is over the quotient ring.
pub fn kernel_modulo(ring: &Ring, phi: &GradedMap, relations: &[Vector]) -> Result<Vec<Vector>> {
    let graph = GraphBasis::new(ring, phi, relations)?;
    let elems = graph.kernel_elements()?;
    minimal_generators_ascending(ring, &elems, phi.source(), &[])
}

/// Homogeneous generators of `ker φ` (over the base ring of `φ`).
pub fn kernel(ring: &Ring, phi: &GradedMap) -> Result<Vec<Vector>> {
    let gens = kernel_modulo(ring, phi, &[])?;
    let check = submodule_basis(ring, &[], phi.target())?;
    for g in &gens {
        if !check.contains(&phi.apply(&ring.ambient(), g)?) {
            return Err(Error::Internal("kernel generator does not map to zero".into()));
        }
    }
    Ok(gens)
}

/// Expresses target elements as combinations of the columns of `φ`,
/// modulo `relations` (and the quotient ideal over `A`).
pub struct Lifter {
    graph: GraphBasis,
    source_rank: usize,
    ring: Ring,
}

impl Lifter {
    pub fn new(ring: &Ring, phi: &GradedMap, relations: &[Vector]) -> Result<Self> {
        Ok(Lifter {
            graph: GraphBasis::new(ring, phi, relations)?,
            source_rank: phi.source().rank(),
            ring: ring.ambient(),
        })
    }

    /// Coefficients `c` with `φ(c) ≡ v`, or `None` when `v` is not in the image.
    pub fn lift(&self, v: &[GradedPoly]) -> Option<Vector> {
        self.graph.lift(&self.ring, v, self.source_rank)
    }
}

/// One-shot version of [`Lifter::lift`].
pub fn express(ring: &Ring, phi: &GradedMap, relations: &[Vector], v: &[GradedPoly]) -> Result<Option<Vector>> {
    Ok(Lifter::new(ring, phi, relations)?.lift(v))
}
