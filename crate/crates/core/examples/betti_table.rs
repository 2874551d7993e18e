//! Minimal free resolution over `Q` and its Betti table.

use cireg::problem::parse_problem;
use cireg::regularity::present_over_q;
use cireg::resolution::{betti_table, resolve_over_q};

fn main() -> cireg::Result<()> {
    let p = parse_problem(include_str!("../problems/ci_x2_y3.cireg"))?;
    let m = present_over_q(p.ring(), &p.module("M")?)?;
    let r = resolve_over_q(p.ring(), &m, true)?;
    r.verify_complex(p.ring())?;
    for (l, f) in r.modules().iter().enumerate() {
        println!("F_{l} = {f}");
    }
    let b = betti_table(&r);
    print!("{}", b.to_csv());
    println!("reg = {}", b.regularity());
    Ok(())
}
