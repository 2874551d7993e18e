//! Regularity of modules over a complete intersection, checked against the
//! Koszul homology oracle.

use cireg::module::{BaseRing, GradedFreeModule, ModulePresentation};
use cireg::problem::parse_problem;
use cireg::regularity::{betti_oracle, betti_over_q, regularity, reg_of_shift};

fn main() -> cireg::Result<()> {
    let p = parse_problem(include_str!("../problems/ci_x2_y3.cireg"))?;
    let a = p.ring();
    let ring_itself = ModulePresentation::free(GradedFreeModule::new(vec![0], BaseRing::Quotient));
    println!("reg A = {}", regularity(a, &ring_itself)?);
    for name in ["M", "U"] {
        let m = p.module(name)?;
        let r = regularity(a, &m)?;
        println!("reg {name} = {r}, reg {name}(2) = {}", reg_of_shift(r, 2));
        let oracle = betti_oracle(a, &m, 6)?.table;
        let full = betti_over_q(a, &m)?.restricted(6);
        println!("  oracle agrees through degree 6: {}", oracle == full);
    }
    Ok(())
}
