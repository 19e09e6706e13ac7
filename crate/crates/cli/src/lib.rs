//! Front end for the `realcycle` binary: grammars, JSON reports and the
//! check suite.

pub mod parse;
pub mod report;
pub mod suite;
