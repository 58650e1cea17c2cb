//! Log-normal shadowing path loss and the link-budget SNR.
//!
//! Mean path loss at distance `d` is
//!
//! ```text
//! PL(d) = PL(d0) + 10 * n * log10(d / d0)        [dB]
//! ```
//!
//! and the stochastic form adds a zero-mean Gaussian dB offset with standard
//! deviation `sigma_db` (the shadowing term). The SNR at distance `d` is the
//! plain dB budget `pt - PL(d) - pn`.
//!
//! Everything here is pure given its inputs; the only stateful object is the
//! caller-provided seeded generator, which is single-owner. Parallel
//! ensembles must split sub-streams from one root seed — see
//! [`crate::montecarlo`] for the splitting rule this crate uses.

use core::f64::consts::PI;

use rand_chacha::rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::math;

/// Environment parameters of the log-normal shadowing model.
///
/// `sigma_db = 0` degenerates to the deterministic mean model. Distances
/// below `d0_m` are allowed (the formula extrapolates); `d <= 0` is not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelProfile {
    /// Reference distance, meters.
    pub d0_m: f64,
    /// Path loss at the reference distance, dB.
    pub pl_d0_db: f64,
    /// Path loss exponent (rate of decay with distance).
    pub n: f64,
    /// Shadowing standard deviation, dB.
    pub sigma_db: f64,
}

impl ChannelProfile {
    pub fn new(d0_m: f64, pl_d0_db: f64, n: f64, sigma_db: f64) -> Result<Self, Error> {
        let ch = ChannelProfile { d0_m, pl_d0_db, n, sigma_db };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<(), Error> {
        fn check(field: &'static str, value: f64, ok: bool) -> Result<(), Error> {
            if !value.is_finite() || !ok {
                return Err(Error::InvalidProfile {
                    field,
                    reason: alloc::format!("invalid value {value}"),
                });
            }
            Ok(())
        }
        check("d0_m", self.d0_m, self.d0_m > 0.0)?;
        check("pl_d0_db", self.pl_d0_db, self.pl_d0_db >= 0.0)?;
        check("n", self.n, self.n > 0.0)?;
        check("sigma_db", self.sigma_db, self.sigma_db >= 0.0)?;
        Ok(())
    }
}

/// The default channel: 1 m reference at 55 dB, exponent 4, 4 dB shadowing.
/// Indoor-range parameters; every field can be overridden via a channel JSON
/// file.
impl Default for ChannelProfile {
    fn default() -> Self {
        ChannelProfile { d0_m: 1.0, pl_d0_db: 55.0, n: 4.0, sigma_db: 4.0 }
    }
}

/// Path loss in dB.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PathLossDb(pub f64);

/// Signal-to-noise ratio in dB.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SnrDb(pub f64);

/// Signal-to-noise ratio as a dimensionless linear power ratio (>= 0).
///
/// Distinct from [`SnrDb`] because the link budget produces dB while the BER
/// kernels consume a linear ratio; the two must never be mixed up silently.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SnrLinear(pub f64);

/// Mean (shadowing-free) path loss at distance `d_m`.
pub fn mean_path_loss(d_m: f64, ch: &ChannelProfile) -> Result<PathLossDb, Error> {
    if !d_m.is_finite() || d_m <= 0.0 {
        return Err(Error::InvalidDistance(d_m));
    }
    Ok(PathLossDb(mean_path_loss_unchecked(d_m, ch)))
}

/// Same as [`mean_path_loss`] but trusts `d_m > 0` (solver hot path).
#[inline]
pub(crate) fn mean_path_loss_unchecked(d_m: f64, ch: &ChannelProfile) -> f64 {
    ch.pl_d0_db + 10.0 * ch.n * math::log10(d_m / ch.d0_m)
}

/// One draw of the shadowing offset: Normal(0, sigma_db^2), in dB.
///
/// `sigma_db = 0` returns exactly 0.0 without consuming the generator.
pub fn sample_shadowing<R: RngCore>(ch: &ChannelProfile, rng: &mut R) -> f64 {
    if ch.sigma_db == 0.0 {
        return 0.0;
    }
    ch.sigma_db * standard_normal(rng)
}

/// One standard-normal draw via the basic Box-Muller transform:
///
/// ```text
/// z = sqrt(-2 ln u1) * cos(2 pi u2)
/// ```
///
/// Each call consumes exactly two `u64`s from the generator; the sine
/// variate of the pair is discarded so calls stay aligned to a fixed
/// generator offset. `u1` lies in (0, 1] so the log never sees zero.
pub(crate) fn standard_normal<R: RngCore>(rng: &mut R) -> f64 {
    let u1 = 1.0 - unit_f64(rng);
    let u2 = unit_f64(rng);
    math::sqrt(-2.0 * math::ln(u1)) * math::cos(2.0 * PI * u2)
}

/// Uniform in [0, 1) from the top 53 bits of one `u64`.
#[inline]
pub(crate) fn unit_f64<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Path loss with one shadowing draw added: `PL(d) + X_sigma`.
pub fn sampled_path_loss<R: RngCore>(
    d_m: f64,
    ch: &ChannelProfile,
    rng: &mut R,
) -> Result<PathLossDb, Error> {
    let mean = mean_path_loss(d_m, ch)?;
    Ok(PathLossDb(mean.0 + sample_shadowing(ch, rng)))
}

/// Link-budget SNR for an already-computed path loss (all inputs dB/dBm):
/// `pt - pl - pn`. The caller chooses whether `pl` is mean or sampled.
#[inline]
pub fn snr_db(pt_dbm: f64, pn_dbm: f64, pl: PathLossDb) -> SnrDb {
    SnrDb(pt_dbm - pl.0 - pn_dbm)
}

/// Analytic inverse of the mean model: the distance whose mean path loss
/// equals `pl`.
pub fn distance_for_path_loss(pl: PathLossDb, ch: &ChannelProfile) -> f64 {
    ch.d0_m * math::powf(10.0, (pl.0 - ch.pl_d0_db) / (10.0 * ch.n))
}
