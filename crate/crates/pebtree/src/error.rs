use thiserror::Error;

/// Errors produced by the library.
///
/// All arithmetic is exact 128-bit; anything that would leave that range is
/// an [`Error::Overflow`], never a silent wraparound. Violations of proved
/// identities (certificate slack, divisibility of `s_n - n` by 4, family
/// closed forms) are surfaced as hard errors because the correctness story
/// of the whole crate rests on them.
#[derive(Debug, Error)]
pub enum Error {
    /// A result or intermediate value left the exact `u128` range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exhaustive search exceeded its state or configuration budget.
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The lower-bound certificate failed its strict inequality or its
    /// case-specific closed form.
    #[error("certificate violation at h={h}: {detail}")]
    CertificateViolation { h: u32, detail: String },

    /// Two routes that must agree (an identity, a predicted closed form,
    /// or a recurrence index) disagreed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    /// A configuration document failed to parse or validate.
    #[error("configuration parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
