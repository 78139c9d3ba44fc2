//! Batch execution of rank/select/access/snippet queries.
//!
//! With the `parallel` feature (default) batches fan out over a rayon pool;
//! [`run_sequential`] is always available and the two produce identical
//! answer streams, so results never depend on the worker count.

use crate::apstring::ApString;
use crate::error::Error;

/// One query against a partitioned string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    Rank { symbol: usize, pos: usize },
    Select { symbol: usize, j: usize },
    Access { pos: usize },
    Snippet { pos: usize, len: usize },
}

impl Query {
    pub fn op_name(&self) -> &'static str {
        match self {
            Query::Rank { .. } => "rank",
            Query::Select { .. } => "select",
            Query::Access { .. } => "access",
            Query::Snippet { .. } => "snippet",
        }
    }
}

/// Answer to a [`Query`]; failed queries carry their error and do not abort
/// the batch.
#[derive(Debug, Clone, PartialEq)]
pub enum Answer {
    Count(usize),
    Position(usize),
    Symbol(usize),
    Snippet(Vec<usize>),
    Error(Error),
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Answer::Count(v) | Answer::Position(v) | Answer::Symbol(v) => write!(f, "{v}"),
            Answer::Snippet(s) => {
                for (i, v) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Answer::Error(e) => write!(f, "error: {e}"),
        }
    }
}

/// Executes one query.
pub fn execute(ap: &ApString, query: Query) -> Answer {
    match query {
        Query::Rank { symbol, pos } => match ap.rank(symbol, pos) {
            Ok(v) => Answer::Count(v),
            Err(e) => Answer::Error(e),
        },
        Query::Select { symbol, j } => match ap.select(symbol, j) {
            Ok(v) => Answer::Position(v),
            Err(e) => Answer::Error(e),
        },
        Query::Access { pos } => match ap.access(pos) {
            Ok(v) => Answer::Symbol(v),
            Err(e) => Answer::Error(e),
        },
        Query::Snippet { pos, len } => match ap.snippet(pos, len) {
            Ok(v) => Answer::Snippet(v),
            Err(e) => Answer::Error(e),
        },
    }
}

/// Runs a batch on one thread.
pub fn run_sequential(ap: &ApString, batch: &[Query]) -> Vec<Answer> {
    batch.iter().map(|&q| execute(ap, q)).collect()
}

/// Runs a batch, in parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn run(ap: &ApString, batch: &[Query]) -> Vec<Answer> {
    use rayon::prelude::*;
    batch.par_iter().map(|&q| execute(ap, q)).collect()
}

/// Runs a batch, in parallel when the `parallel` feature is enabled.
#[cfg(not(feature = "parallel"))]
pub fn run(ap: &ApString, batch: &[Query]) -> Vec<Answer> {
    run_sequential(ap, batch)
}
