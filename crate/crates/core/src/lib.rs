//! Castelnuovo-Mumford regularity of graded Ext and Tor modules over
//! complete intersections `A = Q/(z_1, ..., z_c)`, `Q = K[x_1, ..., x_d]`.
//!
//! Modules over `A` are cokernels of graded maps between free modules and are
//! computed with module Gröbner bases over `Q`. Regularity is read from the
//! minimal graded resolution over `Q`. Ext and Tor come back as explicit
//! subquotient presentations, so both their regularity and the maps induced
//! by the operators `t_j` can be computed.
//!
//! Runnable examples, one per capability:
//!
//! | example | shows |
//! |---|---|
//! | `groebner_basis` | bases, normal forms, membership |
//! | `betti_table` | minimal resolutions over `Q` and Betti tables |
//! | `regularity` | regularity and the Koszul homology oracle |
//! | `ext_tor` | Ext and Tor presentations |
//! | `ci_operators` | operators `t_j` and their action on Ext |
//! | `reduction_number` | powers `I^n N`, reductions, bounds on `ρ_N(I)` |
//! | `trigraded_bound` | twist bounds for trigraded free data |
//! | `sweep_and_verify` | regularity grids over `(i, n)` and bound constants |
//! | `problem_file` | the problem-file format |
//! | `selfcheck` | seeded randomized consistency checks |

pub mod ci_ops;
pub mod cli;
pub mod error;
pub mod ext_tor;
pub mod groebner;
pub mod harness;
pub mod linalg;
pub mod module;
pub mod pieces;
pub mod poly;
pub mod problem;
pub mod random;
pub mod rees;
pub mod regularity;
pub mod resolution;
pub mod scalar;
pub mod selfcheck;
pub mod trigraded;

pub use error::{Error, Result};
