//! Standard-library companion to `derangekit-core`: constraint files,
//! multi-threaded enumeration, OEIS b-file verification and the
//! `derangekit` command line.

pub mod cli;
pub mod export;
pub mod oeis;
pub mod parallel;
pub mod system_file;
pub mod verify;

pub use oeis::{compare_with_shift, BFile, FetchMode, MatchReport, OeisClient, Verdict};
pub use system_file::{parse_constraint_file, to_constraint_file, SystemFileError};
pub use verify::{verify_table, EntryReport, VerifyOptions};
