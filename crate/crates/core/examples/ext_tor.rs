//! Ext and Tor as explicit subquotients, with their regularities.

use cireg::ext_tor::{ext, tor};
use cireg::problem::parse_problem;
use cireg::regularity::regularity;

fn main() -> cireg::Result<()> {
    let p = parse_problem(include_str!("../problems/ci_x2_y3.cireg"))?;
    let a = p.ring();
    let (m, u) = (p.module("M")?, p.module("U")?);
    for i in 0..5 {
        let e = ext(a, &m, &m, i)?;
        let t = tor(a, &u, &u, i)?;
        println!(
            "i = {i}: reg Ext^i(M, M) = {:>3}   reg Tor_i(U, U) = {:>3}   Ext generators in degrees {:?}",
            regularity(a, e.presentation())?,
            regularity(a, t.presentation())?,
            e.presentation().generators().twists(),
        );
    }
    Ok(())
}
