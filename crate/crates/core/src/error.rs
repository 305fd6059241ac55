use thiserror::Error;

/// Errors raised by constructions and computations in this crate.
///
/// Verification failures are never errors: they are reported as entries of
/// the corresponding report structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("operation not available for {flavor}: {reason}")]
    Unsupported { flavor: String, reason: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: i64, right: i64 },

    #[error("inadmissible J-invariant: {}", describe_inadmissible(.missing, .out_of_range))]
    Inadmissible {
        missing: Vec<u32>,
        out_of_range: Vec<u32>,
    },

    #[error("search space of {needed} candidates exceeds the bound of {bound}")]
    SizingRefusal { needed: u128, bound: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

fn describe_inadmissible(missing: &[u32], out_of_range: &[u32]) -> String {
    let list = |v: &[u32]| {
        v.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut parts = Vec::new();
    if !missing.is_empty() {
        parts.push(format!("missing indices {}", list(missing)));
    }
    if !out_of_range.is_empty() {
        parts.push(format!("indices out of range {}", list(out_of_range)));
    }
    parts.join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
