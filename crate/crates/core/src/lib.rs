//! Counting functions, injections and permutations that avoid block
//! constraints.
//!
//! A constraint pairs a domain block `X` with a codomain set `Y` and forbids
//! either `f(X) ⊆ Y` or `f(X) = Y`. The [`counting`] module evaluates
//! inclusion-exclusion sums and closed forms for such systems; [`oracle`]
//! recounts them by exhaustive enumeration. [`catalog`] lists OEIS sequences
//! known to arise from the closed-form families.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod catalog;
pub mod constraints;
pub mod counting;
pub mod numeric;
pub mod oracle;

pub use catalog::{builtin_table, ANumber, Param, ParameterBinding, Params, TableEntry, TableId};
pub use constraints::{Block, Constraint, ConstraintSystem, FunctionClass, Relation, Violation};
pub use counting::{count, ClosedForm, CountError, CountResult, Family, ParameterError};
pub use numeric::BigInteger;
pub use oracle::{enumerate_count, EnumerationBudget, OracleError};
