//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Distance must be finite and strictly positive.
    InvalidDistance(f64),
    /// Linear SNR fed to a BER kernel must be finite and nonnegative.
    InvalidSnr(f64),
    /// A linear power ratio of zero (or below) has no dB representation.
    NonPositiveLinearSnr(f64),
    /// PRR target for the inverse solver must lie strictly inside (0, 1).
    InvalidTarget(f64),
    /// Target PRR is already exceeded at zero SNR; no nonnegative solution.
    UnattainableTarget { target: f64, prr_at_zero_snr: f64 },
    /// Sweep range is empty, inverted, or has a nonpositive step.
    InvalidSweep { lo: f64, hi: f64, step: f64 },
    /// Region boundary still inside the region at the bracket cap.
    UnboundedRegion { cap_m: f64 },
    /// An iterative solver failed to reach its tolerance.
    NoConvergence(&'static str),
    /// A scalar argument violated its documented precondition.
    InvalidParameter { name: &'static str, reason: &'static str },
    /// A profile field violated a type invariant.
    InvalidProfile { field: &'static str, reason: String },
    /// Radio name not among the built-in profiles.
    UnknownRadio(String),
    /// Modulation name not one of "ncfsk", "cfsk", "bpsk", "dpsk".
    UnknownModulation(String),
    /// JSON syntax or schema error (includes unknown keys).
    Json(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDistance(d) => {
                write!(f, "distance must be finite and > 0, got {d}")
            }
            Error::InvalidSnr(g) => {
                write!(f, "linear SNR must be finite and >= 0, got {g}")
            }
            Error::NonPositiveLinearSnr(g) => {
                write!(f, "linear SNR must be > 0 to convert to dB, got {g}")
            }
            Error::InvalidTarget(t) => {
                write!(f, "target PRR must lie strictly inside (0, 1), got {t}")
            }
            Error::UnattainableTarget { target, prr_at_zero_snr } => write!(
                f,
                "target PRR {target} is below the zero-SNR PRR {prr_at_zero_snr}; \
                 no nonnegative SNR attains it"
            ),
            Error::InvalidSweep { lo, hi, step } => write!(
                f,
                "sweep needs lo < hi and step > 0, got lo={lo} hi={hi} step={step}"
            ),
            Error::UnboundedRegion { cap_m } => {
                write!(f, "region boundary not found below the {cap_m} m bracket cap")
            }
            Error::NoConvergence(what) => write!(f, "{what} did not converge"),
            Error::InvalidParameter { name, reason } => write!(f, "{name}: {reason}"),
            Error::InvalidProfile { field, reason } => write!(f, "{field}: {reason}"),
            Error::UnknownRadio(name) => write!(
                f,
                "unknown radio \"{name}\"; built-in profiles are \"mica2\" and \"tinynode\""
            ),
            Error::UnknownModulation(name) => write!(
                f,
                "unknown modulation \"{name}\"; expected one of \
                 \"ncfsk\", \"cfsk\", \"bpsk\", \"dpsk\""
            ),
            Error::Json(msg) => write!(f, "profile JSON: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
