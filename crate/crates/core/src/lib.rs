//! Exact concordance invariants of torus knots and their formal sums.
//!
//! Everything is computed in exact arithmetic:
//!
//! - [`semigroup`]: the numerical semigroup <p,q> of a torus knot
//!   (membership, gaps, counting function, conductor).
//! - [`staircase`]: the staircase complex St(b1,...,b2m) of T(p,q) from the
//!   semigroup run structure, Alexander exponents and the a-tuple.
//! - [`upsilon`]: the piecewise-linear Upsilon invariant on [0,2] with
//!   rational breakpoints, linear over formal knot sums, plus the exact
//!   recursion check that validates the construction.
//! - [`order`]: the epsilon-order engine: a-tuple trichotomy and comparison
//!   rules, block splits of staircases, torus-knot decompositions, and
//!   re-verifiable domination certificates up to the independent-family
//!   builder.
//! - [`parse`] / [`emit`]: the `T(p,q)` expression grammar and the JSON, CSV
//!   and SVG output forms.

pub mod emit;
pub mod error;
pub mod order;
pub mod parse;
pub mod pl;
pub mod semigroup;
pub mod staircase;
pub mod sum;
pub mod upsilon;

pub use error::{Error, Result};
pub use order::{
    build_family, certify_proposition, certify_upper_bound, compare, decompose_torus, peel,
    verify_certificate, ATuple, BracketClass, Certificate, ClassExpr, Comparison, Condition,
    DecompositionRecord, EpsilonSign, FamilyMember, FamilyRule,
};
pub use parse::parse;
pub use pl::PLFunction;
pub use semigroup::{Semigroup, TorusKnot};
pub use staircase::{max_entry_bound, Staircase};
pub use sum::TorusKnotSum;
pub use upsilon::{check_recursion, upsilon_of_sum, upsilon_torus};
