//! Seeded random generation of definable sets and the axiom check suites.
//!
//! Every generated object is a deterministic function of `(seed, index)`;
//! counterexamples replay from those two numbers alone.

mod gen;
mod suites;

pub use gen::{gen_constraints, gen_exists, gen_formula, gen_formula_at, GenConfig};
pub use suites::{
    check_axioms, cross_check_qe, Counterexample, SuiteOutcome, SuiteReport, SuiteStats,
};
