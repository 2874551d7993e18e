//! Ext and Tor cross-checked against linear algebra on graded pieces.

mod setups;

use cireg::ci_ops::{eisenbud_operators, induced_on_ext, lift_resolution};
use cireg::ext_tor::{ext, ext_from_resolution, hom_complex, tor, PresentedComplex};
use cireg::linalg::rank;
use cireg::module::{BaseRing, GradedMap, ModulePresentation, RegValue, Vector};
use cireg::pieces::{hilbert_value, QuotientPiece};
use cireg::poly::Ring;
use cireg::random::{random_module, rng};
use cireg::rees::{power_module, quotient_module, IdealData};
use cireg::regularity::regularity;
use cireg::resolution::resolve_over_a;
use cireg::scalar::Scalar;
use setups::{ci_x2_y3, cyclic, hypersurface_x2, node_xy};

fn map_rank(ring: &Ring, phi: &GradedMap, src: &ModulePresentation, tgt: &ModulePresentation, t: i64) -> usize {
    let ps = QuotientPiece::of_presentation(ring, src, t);
    let pt = QuotientPiece::of_presentation(ring, tgt, t);
    let rows = ps.map_rows(ring, &pt, |v| phi.apply(ring, v).expect("map applies"));
    rank(ring.field(), pt.dim(), &rows)
}

/// `dim H^i_t` of a cochain complex by row reduction on pieces.
fn cohomology_dim(ring: &Ring, c: &PresentedComplex, i: usize, t: i64) -> usize {
    let dim = hilbert_value(ring, &c.terms[i], t);
    let out = c.maps.get(i).map_or(0, |m| map_rank(ring, m, &c.terms[i], &c.terms[i + 1], t));
    let inc = if i == 0 { 0 } else { map_rank(ring, &c.maps[i - 1], &c.terms[i - 1], &c.terms[i], t) };
    dim - out - inc
}

/// `dim Hom(M, N)_t` from the linear conditions `Σ_k r_kl n_k = 0`.
fn hom_dim(ring: &Ring, m: &ModulePresentation, n: &ModulePresentation, t: i64) -> usize {
    let twists = m.generators().twists();
    let src: Vec<QuotientPiece> = twists.iter().map(|a| QuotientPiece::of_presentation(ring, n, t + a)).collect();
    let rels: Vec<(Vector, i64)> = m
        .relations()
        .into_iter()
        .filter_map(|r| m.generators().degree_of(&r).expect("homogeneous").map(|d| (r, d)))
        .collect();
    let tgt: Vec<QuotientPiece> = rels.iter().map(|(_, d)| QuotientPiece::of_presentation(ring, n, t + d)).collect();
    let width: usize = tgt.iter().map(QuotientPiece::dim).sum();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (k, piece) in src.iter().enumerate() {
        for b in 0..piece.dim() {
            let v = piece.basis_vector(ring, b);
            let mut row = Vec::with_capacity(width);
            for ((r, _), tp) in rels.iter().zip(&tgt) {
                let img: Vector = v.iter().map(|p| ring.mul(&r[k], p)).collect();
                row.extend(tp.coords(ring, &img));
            }
            rows.push(row);
        }
    }
    let total: usize = src.iter().map(QuotientPiece::dim).sum();
    total - rank(ring.field(), width, &rows)
}

fn ci_random_modules(seed: u64, count: usize) -> (Ring, Vec<ModulePresentation>) {
    let s = ci_x2_y3();
    let mut r = rng(seed);
    let mods = (0..count)
        .map(|_| random_module(&mut r, &s.ring, BaseRing::Quotient, 2, 2, 2).expect("random module"))
        .collect();
    (s.ring, mods)
}

#[test]
fn ext0_is_hom() {
    let mut cases: Vec<(Ring, ModulePresentation, ModulePresentation)> = Vec::new();
    for s in [hypersurface_x2(), ci_x2_y3(), node_xy()] {
        cases.push((s.ring.clone(), s.m.clone(), s.n.clone()));
        cases.push((s.ring.clone(), s.n.clone(), s.m.clone()));
    }
    let (ring, mods) = ci_random_modules(11, 6);
    for w in mods.windows(2) {
        cases.push((ring.clone(), w[0].clone(), w[1].clone()));
    }
    for (ring, m, n) in cases {
        let e0 = ext(&ring, &m, &n, 0).unwrap();
        for t in -6..=6 {
            assert_eq!(hilbert_value(&ring, e0.presentation(), t), hom_dim(&ring, &m, &n, t), "degree {t}");
        }
    }
}

#[test]
fn ext_dimensions_match_hom_complex_pieces() {
    let (ring, mods) = ci_random_modules(23, 4);
    let mut cases: Vec<(Ring, ModulePresentation, ModulePresentation)> = vec![
        (node_xy().ring, node_xy().m, node_xy().n),
        (ci_x2_y3().ring, ci_x2_y3().m, ci_x2_y3().n),
    ];
    for w in mods.windows(2) {
        cases.push((ring.clone(), w[0].clone(), w[1].clone()));
    }
    for (ring, m, n) in cases {
        let res = resolve_over_a(&ring, &m, 5).unwrap();
        let c = hom_complex(&res, &n, 4).unwrap();
        for i in 0..4 {
            let e = ext_from_resolution(&ring, &res, &n, i).unwrap();
            for t in -12..=4 {
                assert_eq!(hilbert_value(&ring, e.presentation(), t), cohomology_dim(&ring, &c, i, t), "Ext^{i} degree {t}");
            }
        }
    }
}

/// Along `0 → Ext^0(M, IN) → Ext^0(M, N) → Ext^0(M, N/IN) → Ext^1(M, IN) → ⋯`
/// every partial alternating sum of dimensions is the rank of the next map.
fn check_long_exact(ring: &Ring, m: &ModulePresentation, n: &ModulePresentation, ideal: &IdealData, power: usize) {
    let sub = power_module(ring, ideal, power, n).unwrap();
    let quo = quotient_module(ring, n, ideal, power).unwrap();
    let imax = 3;
    let dims = |x: &ModulePresentation| -> Vec<ModulePresentation> {
        (0..=imax).map(|i| ext(ring, m, x, i).unwrap().presentation().clone()).collect()
    };
    let (es, en, eq) = (dims(&sub), dims(n), dims(&quo));
    for t in -10..=4 {
        let seq: Vec<i64> = (0..=imax)
            .flat_map(|i| [&es[i], &en[i], &eq[i]].map(|p| hilbert_value(ring, p, t) as i64))
            .collect();
        let mut alt = 0i64;
        for k in 0..seq.len() - 1 {
            alt = seq[k] - alt;
            assert!(alt >= 0 && alt <= seq[k].min(seq[k + 1]), "degree {t}, position {k}: {seq:?}");
        }
    }
}

#[test]
fn long_exact_sequence_dimensions() {
    let s = node_xy();
    for power in 1..=2 {
        check_long_exact(&s.ring, &s.m, &s.n, &s.ideal, power);
    }
    let (ring, mods) = ci_random_modules(31, 4);
    let y = IdealData::new(&ring, vec![ring.var(1)]).unwrap();
    let x = IdealData::new(&ring, vec![ring.var(0)]).unwrap();
    for (k, w) in mods.windows(2).enumerate() {
        check_long_exact(&ring, &w[0], &w[1], if k % 2 == 0 { &x } else { &y }, 1);
    }
}

#[test]
fn tor_gold_values() {
    let h = hypersurface_x2();
    for k in 0..6 {
        let t = tor(&h.ring, &h.m, &h.n, k).unwrap();
        assert_eq!(regularity(&h.ring, t.presentation()).unwrap(), RegValue::Finite(k as i64));
    }
    let t0 = tor(&h.ring, &h.m, &h.n, 0).unwrap();
    let hf: Vec<usize> = (-2..4).map(|t| hilbert_value(&h.ring, t0.presentation(), t)).collect();
    assert_eq!(hf, vec![0, 0, 1, 0, 0, 0]);
    let node = node_xy();
    for k in [1, 3, 5] {
        assert!(tor(&node.ring, &node.m, &node.n, k).unwrap().is_zero());
    }
}

#[test]
fn induced_operators_commute_on_random_modules() {
    let (a, mods) = ci_random_modules(47, 4);
    let n = cyclic(0, vec![a.var(0)]);
    let mut checked = 0;
    for m in &mods {
        let r = resolve_over_a(&a, m, 7).unwrap();
        let t = eisenbud_operators(&a, &lift_resolution(&a, &r)).unwrap();
        if t.levels() < 4 {
            // the resolution terminates; there is nothing to compose
            continue;
        }
        checked += 1;
        let e: Vec<_> = (0..=5).map(|i| ext_from_resolution(&a, &r, &n, i).unwrap()).collect();
        for i in 0..=1 {
            let ind = |j: usize, lvl: usize| induced_on_ext(&a, &t, j, lvl, &n, &e[lvl], &e[lvl + 2]).unwrap();
            let lhs = ind(0, i).then(&a, &ind(1, i + 2)).unwrap();
            let rhs = ind(1, i).then(&a, &ind(0, i + 2)).unwrap();
            assert!(lhs.agrees_with(&a, &rhs, e[i + 4].presentation()).unwrap());
        }
    }
    assert!(checked >= 2, "only {checked} modules with infinite resolutions");
}
