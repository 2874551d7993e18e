//! Graded pieces of free modules and their quotients as finite-dimensional
//! vector spaces. Nothing here touches Gröbner bases, so these routines
//! serve as independent oracles.

use std::collections::HashMap;

use crate::groebner::quotient_relations;
use crate::linalg::RowSpace;
use crate::module::{GradedFreeModule, ModulePresentation, Vector};
use crate::poly::{GradedPoly, Monomial, Ring};
use crate::scalar::Scalar;

/// Monomial basis `{m e_k : deg m = t - a_k}` of `F_t`.
#[derive(Clone, Debug)]
pub struct PieceBasis {
    rank: usize,
    items: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl PieceBasis {
    pub fn new(nvars: usize, module: &GradedFreeModule, t: i64) -> Self {
        let mut items = Vec::new();
        for (k, a) in module.twists().iter().enumerate() {
            for m in Monomial::all_of_degree(nvars, t - a) {
                items.push((k, m));
            }
        }
        let index = items.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        PieceBasis {
            rank: module.rank(),
            items,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Coordinates of a homogeneous element of degree `t`.
    pub fn coords(&self, ring: &Ring, v: &[GradedPoly]) -> Vec<Scalar> {
        let mut out = vec![ring.field().zero(); self.items.len()];
        for (k, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                let i = self.index[&(k, m.clone())];
                out[i] = &out[i] + c;
            }
        }
        out
    }

    pub fn vector(&self, ring: &Ring, coords: &[Scalar]) -> Vector {
        let mut terms: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); self.rank];
        for ((k, m), c) in self.items.iter().zip(coords) {
            if !c.is_zero() {
                terms[*k].push((m.clone(), c.clone()));
            }
        }
        terms
            .into_iter()
            .map(|t| ring.poly(t).expect("piece elements are homogeneous"))
            .collect()
    }
}

/// Degree-`t` piece of the submodule generated by `gens` in `module`.
pub fn submodule_piece(ring: &Ring, gens: &[Vector], module: &GradedFreeModule, t: i64) -> (PieceBasis, RowSpace) {
    let basis = PieceBasis::new(ring.nvars(), module, t);
    let mut space = RowSpace::new(ring.field(), basis.len());
    for g in gens {
        let Some(d) = module.degree_of(g).ok().flatten() else {
            continue;
        };
        for m in Monomial::all_of_degree(ring.nvars(), t - d) {
            let mg: Vector = g.iter().map(|p| ring.mul_term(p, &m, &ring.field().one())).collect();
            space.insert(&basis.coords(ring, &mg));
        }
    }
    (basis, space)
}

/// The piece `(F / U)_t` with the non-pivot monomials as basis.
#[derive(Clone, Debug)]
pub struct QuotientPiece {
    basis: PieceBasis,
    sub: RowSpace,
    free: Vec<usize>,
}

impl QuotientPiece {
    /// `U` is generated by `relations`, plus `z F` when `module` is over `A`.
    pub fn new(ring: &Ring, module: &GradedFreeModule, relations: &[Vector], t: i64) -> Self {
        let mut rels = relations.to_vec();
        rels.extend(quotient_relations(ring, module));
        let q = ring.ambient();
        let (basis, sub) = submodule_piece(&q, &rels, module, t);
        let free = sub.free_columns();
        QuotientPiece { basis, sub, free }
    }

    pub fn of_presentation(ring: &Ring, m: &ModulePresentation, t: i64) -> Self {
        QuotientPiece::new(ring, m.generators(), &m.relations(), t)
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn coords(&self, ring: &Ring, v: &[GradedPoly]) -> Vec<Scalar> {
        let r = self.sub.reduce(&self.basis.coords(ring, v));
        self.free.iter().map(|&i| r[i].clone()).collect()
    }

    /// A representative of the `k`-th basis element.
    pub fn basis_vector(&self, ring: &Ring, k: usize) -> Vector {
        let mut c = vec![ring.field().zero(); self.basis.len()];
        c[self.free[k]] = ring.field().one();
        self.basis.vector(ring, &c)
    }

    /// Matrix (as rows: images of the basis of `self`) of an induced map
    /// into `target`.
    pub fn map_rows(&self, ring: &Ring, target: &QuotientPiece, f: impl Fn(&Vector) -> Vector) -> Vec<Vec<Scalar>> {
        (0..self.dim())
            .map(|k| target.coords(ring, &f(&self.basis_vector(ring, k))))
            .collect()
    }
}

/// `dim_K M_t`.
pub fn hilbert_value(ring: &Ring, m: &ModulePresentation, t: i64) -> usize {
    QuotientPiece::of_presentation(ring, m, t).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::BaseRing;
    use crate::scalar::Field;

    #[test]
    fn hilbert_function_of_a_complete_intersection() {
        let q = Ring::polynomial(2, Field::Prime(101));
        let (x, y) = (q.var(0), q.var(1));
        let a = q.clone().with_quotient(vec![q.pow(&x, 2), q.pow(&y, 3)]).unwrap();
        let m = ModulePresentation::free(GradedFreeModule::new(vec![0], BaseRing::Quotient));
        let h: Vec<usize> = (0..5).map(|t| hilbert_value(&a, &m, t)).collect();
        assert_eq!(h, vec![1, 2, 2, 1, 0]);
    }
}
