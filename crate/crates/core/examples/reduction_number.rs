//! Powers of an ideal on a module, reductions, and the bound on `ρ_N(I)`.

use cireg::problem::parse_problem;
use cireg::rees::{d_of, is_reduction, power_module, quotient_module, rho_upper};
use cireg::regularity::regularity;

fn main() -> cireg::Result<()> {
    let p = parse_problem(include_str!("../problems/node_xy.cireg"))?;
    let a = p.ring();
    let (n, i) = (p.module("N")?, p.ideal("I")?);
    for k in 0..4 {
        let pw = power_module(a, &i, k, &n)?;
        let qt = quotient_module(a, &n, &i, k)?;
        println!("n = {k}: reg I^n N = {}, reg N / I^n N = {}", regularity(a, &pw)?, regularity(a, &qt)?);
    }
    let cert = is_reduction(a, &i, &i, &n, 3)?;
    println!("I reduces itself at n = {:?}", cert.witness);
    let b = rho_upper(a, &i, &n, &[], 4)?;
    println!("rho <= {} (d(J) = {}, witness exponent {})", b.value, d_of(&b.witness), b.witness_exponent);
    Ok(())
}
