//! Regularity grid over `(i, n)` for the node, bound constants, and
//! asymptotic fits.

use std::collections::BTreeMap;

use cireg::harness::{fit_asymptote, sweep, verify_bounds, Axis, SweepConfig, Variant};
use cireg::problem::parse_problem;

fn main() -> cireg::Result<()> {
    let p = parse_problem(include_str!("../problems/node_xy.cireg"))?;
    let cfg = SweepConfig {
        imax: 3,
        nmax: 4,
        variants: vec![Variant::Power, Variant::Quotient],
        rho_upper: Some(1),
    };
    let t = sweep(p.ring(), &p.module("M")?, &p.module("N")?, &p.ideal("I")?, &cfg)?;
    print!("{}", t.to_csv()?);
    let report = verify_bounds(&t, 1, 2, &BTreeMap::new());
    for e in &report.entries {
        println!(
            "{} parity {}: e = {:?}, tight at {} cells",
            e.variant,
            e.parity,
            e.e_hat,
            e.tight_cells.len()
        );
    }
    println!("{:?}", fit_asymptote(&t, Variant::Power, 1, Axis::I { n: 2 }));
    println!("{}", report.limitation);
    Ok(())
}
