//! Parsing, normalizing and diagnosing problem files.

use cireg::problem::parse_problem;

fn main() {
    let p = parse_problem(include_str!("../problems/node_xy.cireg")).expect("shipped file parses");
    print!("{}", p.pretty());
    println!("f = {:?}", p.f());
    for bad in ["ring d=1 char=0\nquotient: x1^2 + x1\n", "ring d=2 char=0\nmodule M: targets [0] relations []\n"] {
        println!("{}", parse_problem(bad).unwrap_err());
    }
}
