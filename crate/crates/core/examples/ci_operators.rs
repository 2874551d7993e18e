//! Operators `t_j` from a lifted resolution, and the maps they induce on
//! Ext, including a commutation check.

use cireg::ci_ops::{eisenbud_operators, induced_on_ext, lift_resolution};
use cireg::ext_tor::ext_from_resolution;
use cireg::problem::parse_problem;
use cireg::resolution::resolve_over_a;

fn main() -> cireg::Result<()> {
    let p = parse_problem(include_str!("../problems/ci_x2_y3.cireg"))?;
    let a = p.ring();
    let m = p.module("M")?;
    let r = resolve_over_a(a, &m, 8)?;
    let lr = lift_resolution(a, &r);
    let t = eisenbud_operators(a, &lr)?;
    println!("operator degrees {:?}, {} levels", t.degrees(), t.levels());
    for i in 0..3 {
        let row: Vec<String> = (0..t.count())
            .map(|j| format!("t{} = {}", j + 1, t.lifted(j, i).map_or("-".into(), |g| g.entry(0, 0).to_string())))
            .collect();
        println!("level {i}: {}", row.join(", "));
    }
    let e: Vec<_> = (0..=5).map(|i| ext_from_resolution(a, &r, &m, i)).collect::<cireg::Result<_>>()?;
    let t1 = induced_on_ext(a, &t, 0, 1, &m, &e[1], &e[3])?;
    let t2 = induced_on_ext(a, &t, 1, 1, &m, &e[1], &e[3])?;
    let t1_next = induced_on_ext(a, &t, 0, 3, &m, &e[3], &e[5])?;
    let t2_next = induced_on_ext(a, &t, 1, 3, &m, &e[3], &e[5])?;
    let lhs = t1.then(a, &t2_next)?;
    let rhs = t2.then(a, &t1_next)?;
    println!("t2 t1 = t1 t2 on Ext^1: {}", lhs.agrees_with(a, &rhs, e[5].presentation())?);
    Ok(())
}
