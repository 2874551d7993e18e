//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. All comparisons are exact integer equality;
//! runtime limits apply to criteria 1-3.

mod setups;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cireg::ci_ops::{eisenbud_operators, induced_on_ext, lift_resolution, verify_lifted_identity};
use cireg::ext_tor::{ext_from_resolution, tor};
use cireg::harness::{verify_bounds, Cell, ExtRegTable, Variant};
use cireg::module::{BaseRing, GradedFreeModule, ModulePresentation, RegValue};
use cireg::poly::Ring;
use cireg::rees::rho_upper;
use cireg::regularity::{reg_of_shift, regularity};
use cireg::resolution::resolve_over_a;
use cireg::scalar::Field;
use cireg::selfcheck::{oracle_agreement, short_exact_sequences, trigraded_bounds};
use cireg::trigraded::{binomial, component_twists};
use setups::{ci_u, ci_x2_y3, cyclic, fin, hypersurface_x2, node_xy, run, Setup, NEG_INF};

const SEED: u64 = cireg::random::DEFAULT_SEED;

/// Name, setup, `ρ`, variants, `(i_max, n_max)`, and whether tightness is required.
type BoundCase = (&'static str, Setup, i64, Vec<Variant>, (usize, usize), bool);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { ok: true, detail: summary }
    } else {
        Outcome {
            ok: false,
            detail: format!("{summary}; {}", failures.join("; ")),
        }
    }
}

fn expect_cell(t: &ExtRegTable, v: Variant, parity: u8, i: usize, n: usize, want: Cell, fails: &mut Vec<String>) {
    let got = t.get(v, parity, i, n);
    if got != Some(want) {
        fails.push(format!("{v} parity {parity} (i, n) = ({i}, {n}): expected {want}, got {got:?}"));
    }
}

fn within(elapsed: Duration, limit_secs: u64, fails: &mut Vec<String>) {
    if elapsed > Duration::from_secs(limit_secs) {
        fails.push(format!("took {elapsed:?}, limit {limit_secs}s"));
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = run(&hypersurface_x2(), 4, 3, vec![Variant::Power]);
    let mut fails = Vec::new();
    for i in 0..=4 {
        for n in 0..=3 {
            expect_cell(&t, Variant::Power, 0, i, n, fin(-2 * i as i64), &mut fails);
            expect_cell(&t, Variant::Power, 1, i, n, fin(-2 * i as i64 - 1), &mut fails);
        }
    }
    within(start.elapsed(), 10, &mut fails);
    outcome(fails, format!("40 cells in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let t = run(&ci_x2_y3(), 3, 1, vec![Variant::Power]);
    let mut fails = Vec::new();
    for i in 0..=3 {
        for n in 0..=1 {
            expect_cell(&t, Variant::Power, 0, i, n, fin(-3 * i as i64 + 1), &mut fails);
            expect_cell(&t, Variant::Power, 1, i, n, fin(-3 * i as i64), &mut fails);
        }
    }
    within(start.elapsed(), 30, &mut fails);
    outcome(fails, format!("16 cells in {:?}", start.elapsed()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let t = run(&node_xy(), 3, 4, vec![Variant::Power, Variant::Quotient]);
    let mut fails = Vec::new();
    for i in 0..=3usize {
        for n in 0..=4usize {
            let (ii, nn) = (i as i64, n as i64);
            expect_cell(&t, Variant::Power, 0, i, n, NEG_INF, &mut fails);
            expect_cell(&t, Variant::Power, 1, i, n, fin(nn - 2 * ii), &mut fails);
            if n >= 1 {
                expect_cell(&t, Variant::Quotient, 0, i, n, fin(nn - 2 * ii), &mut fails);
                expect_cell(&t, Variant::Quotient, 1, i, n, fin(-2 * ii), &mut fails);
            }
        }
    }
    within(start.elapsed(), 60, &mut fails);
    outcome(fails, format!("72 checked cells in {:?}", start.elapsed()))
}

fn tor_reg(s: &Setup, k: usize) -> RegValue {
    let h = tor(&s.ring, &s.m, &s.n, k).expect("tor computes");
    regularity(&s.ring, h.presentation()).expect("regularity computes")
}

fn criterion_4() -> Outcome {
    let mut fails = Vec::new();
    let mut check = |label: &str, got: RegValue, want: RegValue| {
        if got != want {
            fails.push(format!("{label}: expected {want}, got {got}"));
        }
    };
    let (ci, u, node) = (ci_x2_y3(), ci_u(), node_xy());
    for i in 0..=3usize {
        let ii = i as i64;
        check(&format!("CI Tor_{}", 2 * i), tor_reg(&ci, 2 * i), RegValue::Finite(3 * ii + 1));
        check(&format!("CI Tor_{}", 2 * i + 1), tor_reg(&ci, 2 * i + 1), RegValue::Finite(3 * ii + 2));
        check(&format!("Tor_{i}(U, U)"), tor_reg(&u, i), RegValue::Finite(ii + 2));
        check(&format!("node Tor_{}", 2 * i), tor_reg(&node, 2 * i), RegValue::Finite(2 * ii + 1));
        // The stated value for the odd node family is 0; the same module is
        // computed by hand as the kernel of an injective map, i.e. zero.
        check(&format!("node Tor_{}", 2 * i + 1), tor_reg(&node, 2 * i + 1), RegValue::Finite(0));
    }
    outcome(fails, "20 Tor regularities for i <= 3".into())
}

fn criterion_5() -> Outcome {
    let mut fails = Vec::new();
    let mut notes = Vec::new();
    let cases: [BoundCase; 3] = [
        ("hypersurface", hypersurface_x2(), 0, vec![Variant::Power], (4, 3), true),
        ("complete intersection", ci_x2_y3(), 0, vec![Variant::Power], (3, 2), false),
        ("node", node_xy(), 1, vec![Variant::Power, Variant::Quotient], (3, 4), true),
    ];
    for (name, s, rho, variants, (imax, nmax), need_tight) in cases {
        let certified = rho_upper(&s.ring, &s.ideal, &s.n, &[], 4).expect("reduction search runs");
        if certified.value != rho {
            fails.push(format!("{name}: certified rho {} differs from {rho}", certified.value));
        }
        let t = run(&s, imax, nmax, variants);
        let r = verify_bounds(&t, rho, 2, &BTreeMap::new());
        if !r.is_sound() {
            fails.push(format!("{name}: {} violations", r.violations.len()));
        }
        for e in &r.entries {
            if need_tight && e.e_hat.is_some() && e.tight_cells.is_empty() {
                fails.push(format!("{name} {} parity {}: no tight cell", e.variant, e.parity));
            }
            notes.push(format!("{name} {}/{} e={:?}", e.variant, e.parity, e.e_hat));
        }
    }
    outcome(fails, notes.join(", "))
}

fn criterion_6() -> Outcome {
    let c = oracle_agreement(SEED, 100).expect("oracle runs");
    let fails = if c.passed() { vec![] } else { vec![format!("{} mismatches", c.failures)] };
    outcome(fails, format!("{} random modules over K[X, Y], seed {SEED}", c.cases))
}

fn criterion_7() -> Outcome {
    let mut fails = Vec::new();
    for (name, s) in [("hypersurface", hypersurface_x2()), ("complete intersection", ci_x2_y3()), ("node", node_xy())] {
        for module in [&s.m, &s.n] {
            let r = resolve_over_a(&s.ring, module, 8).expect("resolution");
            let lr = lift_resolution(&s.ring, &r);
            match eisenbud_operators(&s.ring, &lr) {
                Ok(t) => {
                    if let Err(e) = verify_lifted_identity(&s.ring, &lr, &t) {
                        fails.push(format!("{name}: {e}"));
                    }
                }
                Err(e) => fails.push(format!("{name}: {e}")),
            }
        }
    }
    let s = ci_x2_y3();
    let a = &s.ring;
    let r = resolve_over_a(a, &s.m, 9).expect("resolution");
    let t = eisenbud_operators(a, &lift_resolution(a, &r)).expect("operators");
    let e: Vec<_> = (0..=7).map(|i| ext_from_resolution(a, &r, &s.n, i).expect("ext")).collect();
    for i in 0..=3 {
        let ind = |j: usize, lvl: usize| induced_on_ext(a, &t, j, lvl, &s.n, &e[lvl], &e[lvl + 2]).expect("induced map");
        let lhs = ind(0, i).then(a, &ind(1, i + 2)).expect("composition");
        let rhs = ind(1, i).then(a, &ind(0, i + 2)).expect("composition");
        if !lhs.agrees_with(a, &rhs, e[i + 4].presentation()).expect("comparison") {
            fails.push(format!("t1 t2 != t2 t1 on Ext^{i}"));
        }
    }
    outcome(fails, "lifted identity on 6 resolutions to length 8, commutation on Ext^0..Ext^3".into())
}

fn criterion_8() -> Outcome {
    let mut fails = Vec::new();
    let c = trigraded_bounds(SEED, 100).expect("trigraded checks run");
    if !c.passed() {
        fails.push(format!("{} bound failures", c.failures));
    }
    let mut r = cireg::random::rng(SEED);
    for _ in 0..100 {
        let (spec, data) = cireg::random::random_trigraded(&mut r);
        for i in 0..10i64 {
            for n in 0..10i64 {
                for (l, gens) in data.levels.iter().enumerate() {
                    let want: u64 = gens
                        .iter()
                        .filter(|&&(b1, b2, _)| i >= b1 && n >= b2)
                        .map(|&(b1, b2, _)| {
                            let count = |t: i64, parts: usize| {
                                if parts == 0 {
                                    u64::from(t == 0)
                                } else {
                                    binomial(t + parts as i64 - 1, parts as i64 - 1)
                                }
                            };
                            count(n - b2, spec.b()) * count(i - b1, spec.c())
                        })
                        .sum();
                    if component_twists(&spec, &data, l, i, n).len() as u64 != want {
                        fails.push(format!("count mismatch at l = {l}, (i, n) = ({i}, {n})"));
                    }
                }
            }
        }
    }
    fails.truncate(5);
    outcome(fails, format!("100 instances on 10x10 grids, seed {SEED}"))
}

fn criterion_9() -> Outcome {
    let mut fails = Vec::new();
    let q = Ring::polynomial(3, Field::default());
    for j in -5..=5 {
        let m = ModulePresentation::free(GradedFreeModule::new(vec![j], BaseRing::Polynomial));
        let got = regularity(&q, &m).expect("regularity");
        if got != RegValue::Finite(j) {
            fails.push(format!("reg Q(-{j}) = {got}"));
        }
    }
    let residue = cyclic(0, vec![q.var(0), q.var(1), q.var(2)]).over(BaseRing::Polynomial);
    if regularity(&q, &residue).expect("regularity") != RegValue::Finite(0) {
        fails.push("reg of the residue field is not 0".into());
    }
    for s in [hypersurface_x2(), ci_x2_y3(), node_xy(), ci_u()] {
        for m in [&s.m, &s.n] {
            let base = regularity(&s.ring, m).expect("regularity");
            for a in -3..=3 {
                if regularity(&s.ring, &m.twisted(a)).expect("regularity") != reg_of_shift(base, a) {
                    fails.push(format!("shift law fails for twist {a}"));
                }
            }
        }
    }
    let ci = ci_x2_y3();
    let c = short_exact_sequences(&ci.ring, SEED, 50).expect("sequences");
    if !c.passed() {
        fails.push(format!("{} short exact sequences violate the inequalities", c.failures));
    }
    outcome(fails, format!("free twists, residue field, shift law, {} short exact sequences", c.cases))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("hypersurface Ext grid", criterion_1),
        ("complete intersection Ext grid", criterion_2),
        ("node Ext grids, powers and quotients", criterion_3),
        ("Tor gold values", criterion_4),
        ("bound verification and tightness", criterion_5),
        ("Koszul oracle equivalence", criterion_6),
        ("operator identities and commutation", criterion_7),
        ("trigraded twist bounds", criterion_8),
        ("regularity basics", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("criterion {}: {} ({name}): {}", k + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
