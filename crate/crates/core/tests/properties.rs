//! Property tests over seeded random instances.

mod setups;

use proptest::prelude::*;

use cireg::groebner::{buchberger, kernel, normal_form, submodule_equal};
use cireg::harness::Variant;
use cireg::module::{BaseRing, GradedMap, ModulePresentation};
use cireg::poly::{MonomialOrder, Ring};
use cireg::random::{random_module, random_poly, random_short_exact_sequence, random_trigraded, rng};
use cireg::rees::{power_generators, IdealData};
use cireg::regularity::{betti_oracle, betti_over_q, reg_of_shift, regularity, short_exact_inequalities};
use cireg::resolution::{betti_table, minimize, resolve_over_q};
use cireg::scalar::Field;
use cireg::trigraded::{bound_constants, component_twists, TrigradedRingSpec};

fn plane(field: Field) -> Ring {
    Ring::polynomial(2, field)
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::default()), Just(Field::Rational), Just(Field::Prime(7))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), field in field_strategy(), d in 0i64..4, e in 0i64..4) {
        let q = Ring::polynomial(3, field);
        let mut r = rng(seed);
        let (a, b, c) = (random_poly(&mut r, &q, d), random_poly(&mut r, &q, d), random_poly(&mut r, &q, e));
        prop_assert_eq!(q.mul(&q.mul(&a, &b), &c), q.mul(&a, &q.mul(&b, &c)));
        prop_assert_eq!(q.mul(&q.add(&a, &b).unwrap(), &c), q.add(&q.mul(&a, &c), &q.mul(&b, &c)).unwrap());
        prop_assert_eq!(q.mul(&a, &c), q.mul(&c, &a));
        if !a.is_zero() && !c.is_zero() {
            prop_assert_eq!(q.mul(&a, &c).degree(), Some(d + e));
        }
    }

    #[test]
    fn groebner_invariants(seed in any::<u64>()) {
        let q = plane(Field::default());
        let m = random_module(&mut rng(seed), &q, BaseRing::Polynomial, 2, 3, 3).unwrap();
        let f = m.generators().clone();
        let rels = m.relations();
        let gb = buchberger(&q, &rels, &f, q.degree_cap()).unwrap();
        prop_assert!(gb.verify_s_pairs());
        for v in &rels {
            prop_assert!(gb.contains(v));
        }
        let mut r = rng(seed ^ 1);
        let v = cireg::random::random_vector(&mut r, &q, &f, 3);
        let nf = normal_form(&q, &v, &gb);
        prop_assert_eq!(normal_form(&q, &nf, &gb), nf);
        let mut reversed = rels.clone();
        reversed.reverse();
        prop_assert!(submodule_equal(&q, &rels, &reversed, &f).unwrap());
        prop_assert!(submodule_equal(&q, &rels, &gb.elements(), &f).unwrap());
    }

    #[test]
    fn kernels_are_sound(seed in any::<u64>()) {
        let q = plane(Field::default());
        let m = random_module(&mut rng(seed), &q, BaseRing::Polynomial, 2, 3, 3).unwrap();
        let phi: &GradedMap = m.map();
        for k in kernel(&q, phi).unwrap() {
            prop_assert!(phi.apply(&q, &k).unwrap().iter().all(|p| p.is_zero()));
        }
    }

    #[test]
    fn resolutions_over_q(seed in any::<u64>()) {
        let q = plane(Field::default());
        let m = random_module(&mut rng(seed), &q, BaseRing::Polynomial, 2, 2, 3).unwrap();
        let r = resolve_over_q(&q, &m, false).unwrap();
        r.verify_complex(&q).unwrap();
        let min = minimize(&q, &r).unwrap();
        min.verify_complex(&q).unwrap();
        prop_assert!(min.is_minimal());
        let b = betti_table(&min);
        prop_assert!(b.length().is_none_or(|l| l <= 2));
        let lex = plane(Field::default()).with_order(MonomialOrder::Lex);
        let ml = random_module(&mut rng(seed), &lex, BaseRing::Polynomial, 2, 2, 3).unwrap();
        prop_assert_eq!(betti_over_q(&lex, &ml).unwrap(), b);
    }

    #[test]
    fn oracle_matches_resolution(seed in any::<u64>()) {
        let q = plane(Field::default());
        let m = random_module(&mut rng(seed), &q, BaseRing::Polynomial, 2, 2, 3).unwrap();
        let oracle = betti_oracle(&q, &m, 7).unwrap().table;
        prop_assert_eq!(oracle, betti_over_q(&q, &m).unwrap().restricted(7));
    }

    #[test]
    fn shift_law(seed in any::<u64>(), a in -5i64..=5) {
        let s = setups::ci_x2_y3();
        let m = random_module(&mut rng(seed), &s.ring, BaseRing::Quotient, 2, 2, 3).unwrap();
        let base = regularity(&s.ring, &m).unwrap();
        prop_assert_eq!(regularity(&s.ring, &m.twisted(a)).unwrap(), reg_of_shift(base, a));
    }

    #[test]
    fn short_exact_sequences(seed in any::<u64>()) {
        let s = setups::node_xy();
        let ses = random_short_exact_sequence(&mut rng(seed), &s.ring, 3).unwrap();
        let regs = [&ses.sub, &ses.middle, &ses.quotient].map(|m| regularity(&s.ring, m).unwrap());
        prop_assert_eq!(short_exact_inequalities(regs[0], regs[1], regs[2]), [true; 3]);
    }

    #[test]
    fn powers_compose(seed in any::<u64>(), m in 0usize..3, n in 0usize..3) {
        let s = setups::ci_x2_y3();
        let a = &s.ring;
        let module = random_module(&mut rng(seed), a, BaseRing::Quotient, 2, 1, 2).unwrap();
        let ideal = IdealData::new(a, vec![a.var(0), a.pow(&a.var(1), 2)]).unwrap();
        let amb = module.generators();
        let rels = module.relations();
        let inner = power_generators(a, &ideal, n, &module).unwrap();
        let mut nested = inner.clone();
        for _ in 0..m {
            nested = nested
                .iter()
                .flat_map(|v| ideal.generators().iter().map(move |g| v.iter().map(|p| a.mul(g, p)).collect()))
                .collect();
        }
        let mut lhs = nested;
        lhs.extend(rels.iter().cloned());
        let mut rhs = power_generators(a, &ideal, m + n, &module).unwrap();
        rhs.extend(rels.iter().cloned());
        prop_assert!(submodule_equal(a, &lhs, &rhs, amb).unwrap());
    }

    #[test]
    fn trigraded_outputs_ignore_input_order(seed in any::<u64>(), i in 0i64..6, n in 0i64..6) {
        let (spec, data) = random_trigraded(&mut rng(seed));
        let mut h = spec.h().to_vec();
        let mut g = spec.g().to_vec();
        h.reverse();
        let k = 1.min(g.len());
        g.rotate_left(k);
        let other = TrigradedRingSpec::new(spec.d, h, g);
        prop_assert_eq!(bound_constants(&spec, &data).unwrap(), bound_constants(&other, &data).unwrap());
        for l in 0..data.levels.len() {
            let mut a = component_twists(&spec, &data, l, i, n);
            let mut b = component_twists(&other, &data, l, i, n);
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn sweeps_are_deterministic() {
    let s = setups::node_xy();
    let a = setups::run(&s, 2, 3, vec![Variant::Power, Variant::Quotient, Variant::Tor]);
    let b = setups::run(&s, 2, 3, vec![Variant::Tor, Variant::Quotient, Variant::Power]);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
}

#[test]
fn random_sequences_are_not_degenerate() {
    let s = setups::node_xy();
    let mut r = rng(3);
    let mut nontrivial = 0;
    for _ in 0..20 {
        let ses = random_short_exact_sequence(&mut r, &s.ring, 3).unwrap();
        let zero = |m: &ModulePresentation| regularity(&s.ring, m).unwrap().is_neg_infinity();
        if !zero(&ses.sub) && !zero(&ses.quotient) {
            nontrivial += 1;
        }
    }
    assert!(nontrivial >= 5, "{nontrivial} of 20 sequences have nonzero ends");
}
