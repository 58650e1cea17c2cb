//! Bit-error-rate kernels for the four supported modulation schemes.
//!
//! All kernels consume the SNR as a *linear* power ratio:
//!
//! ```text
//! NCFSK   Pe = 1/2 exp(-g/2)
//! CFSK    Pe = Q(sqrt(g))
//! BPSK    Pe = Q(sqrt(2 g))
//! DPSK    Pe = 1/2 exp(-g)
//! ```
//!
//! Every kernel is 0.5 at g = 0 and strictly decreasing. Linear ratios above
//! roughly 745 start underflowing the PSK kernels to 0 (about 1490 for the
//! FSK kernels, whose exponent is g/2); that is accepted — the packet
//! reception rate simply saturates at 1.

use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{SnrDb, SnrLinear};
use crate::error::Error;
use crate::math;

/// The four supported binary modulation schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modulation {
    /// Non-coherent frequency shift keying.
    Ncfsk,
    /// Coherent frequency shift keying.
    Cfsk,
    /// Binary phase shift keying.
    Bpsk,
    /// Differential phase shift keying.
    Dpsk,
}

impl Modulation {
    pub const ALL: [Modulation; 4] =
        [Modulation::Ncfsk, Modulation::Cfsk, Modulation::Bpsk, Modulation::Dpsk];

    /// The exact lowercase name used in configs and CLI flags.
    pub fn as_str(&self) -> &'static str {
        match self {
            Modulation::Ncfsk => "ncfsk",
            Modulation::Cfsk => "cfsk",
            Modulation::Bpsk => "bpsk",
            Modulation::Dpsk => "dpsk",
        }
    }
}

impl FromStr for Modulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "ncfsk" => Ok(Modulation::Ncfsk),
            "cfsk" => Ok(Modulation::Cfsk),
            "bpsk" => Ok(Modulation::Bpsk),
            "dpsk" => Ok(Modulation::Dpsk),
            other => Err(Error::UnknownModulation(alloc::string::String::from(other))),
        }
    }
}

impl core::fmt::Display for Modulation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Probability of bit error; in [0, 0.5] for every kernel at g >= 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BitErrorProb(pub f64);

/// Upper-tail probability of the standard normal, `Q(x) = P[Z > x]`.
///
/// Computed as `erfc(x / sqrt(2)) / 2`; absolute error is a few ulps, far
/// inside the 1.5e-7 contract over [-6, 6].
#[inline]
pub fn q_function(x: f64) -> f64 {
    0.5 * math::erfc(x / core::f64::consts::SQRT_2)
}

/// Bit error probability of scheme `m` at linear SNR `g`.
pub fn ber(m: Modulation, g: SnrLinear) -> Result<BitErrorProb, Error> {
    if !g.0.is_finite() || g.0 < 0.0 {
        return Err(Error::InvalidSnr(g.0));
    }
    let pe = match m {
        Modulation::Ncfsk => 0.5 * math::exp(-g.0 / 2.0),
        Modulation::Cfsk => q_function(math::sqrt(g.0)),
        Modulation::Bpsk => q_function(math::sqrt(2.0 * g.0)),
        Modulation::Dpsk => 0.5 * math::exp(-g.0),
    };
    Ok(BitErrorProb(pe))
}

/// dB to linear power ratio: `10^(s/10)`.
#[inline]
pub fn snr_db_to_linear(s: SnrDb) -> SnrLinear {
    SnrLinear(math::powf(10.0, s.0 / 10.0))
}

/// Linear power ratio to dB: `10 log10(g)`. Zero has no dB representation.
pub fn snr_linear_to_db(g: SnrLinear) -> Result<SnrDb, Error> {
    if !g.0.is_finite() || g.0 <= 0.0 {
        return Err(Error::NonPositiveLinearSnr(g.0));
    }
    Ok(SnrDb(10.0 * math::log10(g.0)))
}
