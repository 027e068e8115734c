use thiserror::Error;

use crate::algebra::DerivedSymbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no value assigned to symbol `{0}`")]
    UnboundSymbol(DerivedSymbol),

    #[error("polynomial is not divisible by {symbol}^{power}")]
    NotDivisible { symbol: DerivedSymbol, power: u32 },

    #[error("step {step} refers to step {target}, which is not an earlier step")]
    InvalidRef { step: usize, target: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown symbol `{name}` at line {line}, column {column}")]
    UnknownSymbol {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("invalid derived symbol: {0}")]
    InvalidSymbol(String),

    #[error("no transcribed display named `{0}`")]
    UnknownDisplay(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
