//! Twist calculus for trigraded free modules and the resulting linear bound.

use cireg::trigraded::{bound_constants, component_bound, component_twists, TrigradedFreeData, TrigradedRingSpec};

fn main() -> cireg::Result<()> {
    let spec = TrigradedRingSpec::new(1, vec![1, 0], vec![2]);
    let data = TrigradedFreeData {
        levels: vec![vec![(0, 0, 0)], vec![(1, 0, 3), (0, 1, 2)], vec![(1, 1, 5)]],
    };
    let k = bound_constants(&spec, &data)?;
    println!("c = {:?}, e = {}", k.c, k.e);
    for i in 0..4 {
        for n in 0..4 {
            let worst = (0..data.levels.len())
                .filter_map(|l| component_twists(&spec, &data, l, i, n).into_iter().max().map(|m| m - l as i64))
                .max();
            println!("(i, n) = ({i}, {n}): max twist - l = {worst:?} <= {}", component_bound(&spec, &k, i, n));
        }
    }
    Ok(())
}
