//! Generalized autocommuting probabilities of small finite groups.
//!
//! For a finite group `G`, `Pr_g(G, Aut(G))` is the probability that the
//! autocommutator `x^-1 α(x)` of a uniformly random element `x` and
//! automorphism `α` equals `g`. This crate builds groups from multiplication
//! tables, enumerates `Aut(G)` exactly, computes the whole `Pr_g`
//! distribution with exact rationals by several independent routes, checks
//! the known upper and lower bounds against it, and searches for
//! autoisoclinisms between pairs of groups.
//!
//! ```
//! use autocomm::{catalog, automorphism, autocomm::AutocommutingReport, Execution, Rational};
//!
//! let g = catalog::build_str("cyclic:4").unwrap();
//! let a = automorphism::enumerate_automorphisms(&g).unwrap();
//! let rep = AutocommutingReport::compute(&g, &a, Execution::default()).unwrap();
//! assert_eq!(rep.pr, Rational::new(3, 4));
//! ```

pub mod autocomm;
pub mod automorphism;
pub mod bounds;
pub mod catalog;
pub mod error;
pub mod exec;
pub mod group;
pub mod iso;
pub mod isoclinism;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use exec::Execution;
pub use group::{FiniteGroup, GroupMap, Subgroup};
pub use rational::Rational;
