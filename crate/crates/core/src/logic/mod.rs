//! First-order formulas in negation normal form: syntax, semiring
//! evaluation and canonical bounded enumeration.

mod enumerate;
mod eval;
mod formula;
mod parse;

pub use enumerate::{enumerate_formulas, Enumerator, Item, Signature, Syntactic, DEFAULT_FORMULA_CAP};
pub use eval::{evaluate, evaluate_at, Assignment};
pub use formula::{pool_var, print_formula, quantifier_rank, var, Atom, Formula, Junction, Var};
pub use parse::parse_formula;
