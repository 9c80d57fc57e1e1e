use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("columns of the partial basis are linearly dependent")]
    NotIndependent,

    #[error("partial basis is not contained in the column span of the space")]
    NotContained,

    #[error("field error: {0}")]
    Field(String),

    #[error("invalid scalar {text:?}: {reason}")]
    Scalar { text: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),

    #[error("base certificate does not satisfy B = BCX + YAB")]
    BaseInvalid,

    #[error("exhaustive search needs {needed} candidate pairs, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("exhaustive search requires a prime field, got {0}")]
    NotFiniteField(FieldSpec),
}

impl Error {
    pub(crate) fn dims(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            op,
            left_rows: left.0,
            left_cols: left.1,
            right_rows: right.0,
            right_cols: right.1,
        }
    }
}
