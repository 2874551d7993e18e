//! Seeded randomized checks: Koszul oracle, short exact sequences, and
//! trigraded twist bounds.

use cireg::selfcheck::selfcheck;

fn main() -> cireg::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(cireg::random::DEFAULT_SEED);
    let r = selfcheck(seed, 10)?;
    println!("{}", serde_json::to_string_pretty(&r).expect("plain JSON"));
    Ok(())
}
