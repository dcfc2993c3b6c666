//! Exact arithmetic for LR-ending partisan games.
//!
//! Both players share every move; play stops at a terminal `*L` (Left wins)
//! or `*R` (Right wins), and a disjunctive sum of terminals is `*R` exactly
//! when it contains an odd number of `*R`. Everything lives in an [`Engine`],
//! which interns positions up to isomorphism and memoizes sums, outcomes and
//! simplifications.
//!
//! ```
//! use lrgame::{Engine, Outcome};
//!
//! let mut engine = Engine::new();
//! let g = engine.eval_str("B1 + B2 + B3").unwrap();
//! assert_eq!(engine.outcome(g), Outcome::P);
//! ```

pub mod equivalence;
pub mod error;
pub mod notation;
pub mod outcome;
pub mod position;
pub mod rulesets;
pub mod simplify;
mod traverse;
pub mod values;

pub use equivalence::{Universe, Verdict};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use notation::{parse, Expr};
pub use outcome::Outcome;
pub use position::{Engine, Position, Terminal};
pub use rulesets::{
    detect_periodicity, even_nim_outcome, even_nim_value, EvenNimPile, EvenNimState, Periodicity,
    SubtractionSet, SubtractionState, ValueTable,
};
pub use values::{
    bigstar_sum_outcome, maltese_sum_outcome, mex, nim_sum, star_sum_reduce, starl_mex_reduce,
    starr_mex_reduce, Family, MalteseSumSpec, NamedValue,
};
