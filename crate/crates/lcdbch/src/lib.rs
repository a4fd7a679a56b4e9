//! Cyclotomic coset leaders modulo `(q^m + 1) / lambda` and the parameters of
//! the LCD BCH codes defined by them.
//!
//! The crate has three layers:
//!
//! * exact number theory and coset enumeration ([`modmath`], [`cosets`]),
//! * closed forms for the first few largest coset leaders and for BCH code
//!   dimensions ([`leaders`], [`dims`]),
//! * concrete code construction over small finite fields with LCD and
//!   minimum-distance checks ([`gf`], [`code`]).
//!
//! Every closed form is cross-checkable against a brute-force route; the
//! [`verify`] module bundles those checks into runnable suites.

pub mod code;
pub mod cosets;
pub mod dims;
pub mod gf;
pub mod leaders;
pub mod modmath;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parameters not covered by any closed form: {0}")]
    Uncovered(String),
    #[error("desk-scale limit exceeded: {0}")]
    DeskScale(String),
    #[error("enumeration budget exhausted; best weight found so far is {upper_bound} (upper bound only)")]
    BudgetExceeded { upper_bound: u64 },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Whether a closed-form value is backed by a proof or only by the
/// conjectured general formula (numerically verified, not proven).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Proven,
    Conjectural,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Proven => "proven",
            Provenance::Conjectural => "conjectural",
        }
    }
}
