//! Gröbner basis, normal forms and membership for a submodule of `Q^2`.

use cireg::groebner::{buchberger, contains, normal_form, DEFAULT_DEGREE_CAP};
use cireg::module::{BaseRing, GradedFreeModule};
use cireg::poly::Ring;
use cireg::scalar::Field;

fn main() -> cireg::Result<()> {
    let q = Ring::polynomial(3, Field::Rational);
    let (x, y, z) = (q.var(0), q.var(1), q.var(2));
    let f = GradedFreeModule::new(vec![0, 1], BaseRing::Polynomial);
    let gens = vec![
        vec![q.mul(&x, &y), x.clone()],
        vec![q.mul(&y, &z), z.clone()],
        vec![q.pow(&y, 2), q.zero()],
    ];
    let gb = buchberger(&q, &gens, &f, DEFAULT_DEGREE_CAP)?;
    println!("{} elements, S-pairs reduce to zero: {}", gb.len(), gb.verify_s_pairs());
    for g in gb.elements() {
        println!("  [{}, {}]", g[0], g[1]);
    }
    let v = vec![q.mul(&q.mul(&x, &y), &z), q.mul(&x, &z)];
    let nf = normal_form(&q, &v, &gb);
    println!("normal form of [xyz, xz]: [{}, {}]", nf[0], nf[1]);
    println!("member: {}", contains(&q, &gens, &f, &v)?);
    Ok(())
}
