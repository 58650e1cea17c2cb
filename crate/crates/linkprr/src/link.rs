//! Packet reception rate and the link-region calculus.
//!
//! Under NRZ encoding one baud is one bit, so a frame of `f` bytes is
//! received iff all `8 f` bits are, and
//!
//! ```text
//! PRR = (1 - Pe)^(8 f)
//! ```
//!
//! The preamble length `l` cancels algebraically
//! (`(1-Pe)^(8l) (1-Pe)^(8(f-l)) = (1-Pe)^(8f)`), so it is carried in
//! [`FrameSpec`] for configuration fidelity but never affects PRR.
//!
//! Region boundaries in this module are defined on the *mean* channel
//! (shadowing ignored); the stochastic view lives in [`crate::montecarlo`].
//! That split gives one exact, testable definition plus one explicitly
//! probabilistic one instead of a single ambiguous blend.

use alloc::vec::Vec;

use crate::channel::{self, ChannelProfile, SnrDb, SnrLinear};
use crate::error::Error;
use crate::math;
use crate::modem::{self, Modulation};
use crate::profiles::RadioProfile;

/// PRR values below this are clamped to exactly 0 to avoid dragging
/// subnormal noise through downstream arithmetic.
pub const PRR_UNDERFLOW_CLAMP: f64 = 1e-300;

/// Bracket cap for region searches; a boundary beyond this is reported as an
/// unbounded-region error.
pub const REGION_CAP_M: f64 = 1e6;

/// Absolute distance tolerance of the region bisection.
pub const REGION_TOL_M: f64 = 1e-6;

/// Absolute PRR tolerance of the inverse solver [`snr_for_prr`].
pub const SNR_SOLVER_TOL: f64 = 1e-9;

/// Frame geometry in bytes. `frame_bytes` is the total frame including the
/// preamble; `preamble_bytes` is PRR-neutral under NRZ (see module docs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameSpec {
    pub frame_bytes: u32,
    pub preamble_bytes: u32,
}

impl FrameSpec {
    pub fn new(frame_bytes: u32, preamble_bytes: u32) -> Result<Self, Error> {
        let frame = FrameSpec { frame_bytes, preamble_bytes };
        frame.validate()?;
        Ok(frame)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.frame_bytes < 1 {
            return Err(Error::InvalidProfile {
                field: "frame_bytes",
                reason: alloc::format!("must be >= 1, got {}", self.frame_bytes),
            });
        }
        if self.preamble_bytes > self.frame_bytes {
            return Err(Error::InvalidProfile {
                field: "preamble_bytes",
                reason: alloc::format!(
                    "must not exceed frame_bytes ({} > {})",
                    self.preamble_bytes,
                    self.frame_bytes
                ),
            });
        }
        Ok(())
    }
}

/// 50-byte frame with a 2-byte preamble.
impl Default for FrameSpec {
    fn default() -> Self {
        FrameSpec { frame_bytes: 50, preamble_bytes: 2 }
    }
}

/// Packet reception rate, a probability in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Prr(pub f64);

/// PRR levels bounding the regions: connected above `connected`,
/// disconnected below `disconnected`, transitional in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionThresholds {
    pub connected: f64,
    pub disconnected: f64,
}

impl RegionThresholds {
    pub fn new(connected: f64, disconnected: f64) -> Result<Self, Error> {
        let th = RegionThresholds { connected, disconnected };
        th.validate()?;
        Ok(th)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.disconnected > 0.0 && self.connected < 1.0 && self.disconnected < self.connected)
        {
            return Err(Error::InvalidParameter {
                name: "thresholds",
                reason: "require 0 < disconnected < connected < 1",
            });
        }
        Ok(())
    }
}

/// The conventional 0.9 / 0.1 bounds.
impl Default for RegionThresholds {
    fn default() -> Self {
        RegionThresholds { connected: 0.9, disconnected: 0.1 }
    }
}

/// Region boundary distances. The connected region is
/// `[0, d_connected_end_m]`, the transitional region
/// `(d_connected_end_m, d_transitional_end_m]`, disconnected beyond.
/// A boundary of 0 means the corresponding region is empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRegions {
    pub d_connected_end_m: f64,
    pub d_transitional_end_m: f64,
    pub thresholds: RegionThresholds,
}

/// PRR of scheme `m` at linear SNR `g` for the given frame.
pub fn prr(m: Modulation, g: SnrLinear, frame: FrameSpec) -> Result<Prr, Error> {
    frame.validate()?;
    let pe = modem::ber(m, g)?;
    Ok(Prr(prr_from_ber(pe.0, frame)))
}

#[inline]
pub(crate) fn prr_from_ber(pe: f64, frame: FrameSpec) -> f64 {
    let bits = 8.0 * frame.frame_bytes as f64;
    let p = math::powf(1.0 - pe, bits);
    if p < PRR_UNDERFLOW_CLAMP {
        0.0
    } else {
        p
    }
}

#[inline]
pub(crate) fn prr_unchecked(m: Modulation, g_lin: f64, frame: FrameSpec) -> f64 {
    let pe = match m {
        Modulation::Ncfsk => 0.5 * math::exp(-g_lin / 2.0),
        Modulation::Cfsk => modem::q_function(math::sqrt(g_lin)),
        Modulation::Bpsk => modem::q_function(math::sqrt(2.0 * g_lin)),
        Modulation::Dpsk => 0.5 * math::exp(-g_lin),
    };
    prr_from_ber(pe, frame)
}

/// Inverse of [`prr`] in the SNR argument: the linear SNR at which the PRR
/// equals `target`, to within [`SNR_SOLVER_TOL`] on the PRR axis.
///
/// Bisection on a bracket grown from zero; valid because PRR is strictly
/// increasing in SNR wherever it is not saturated.
pub fn snr_for_prr(m: Modulation, frame: FrameSpec, target: Prr) -> Result<SnrLinear, Error> {
    frame.validate()?;
    if !target.0.is_finite() || target.0 <= 0.0 || target.0 >= 1.0 {
        return Err(Error::InvalidTarget(target.0));
    }
    let p0 = prr_unchecked(m, 0.0, frame);
    if target.0 < p0 {
        return Err(Error::UnattainableTarget { target: target.0, prr_at_zero_snr: p0 });
    }
    if target.0 == p0 {
        return Ok(SnrLinear(0.0));
    }

    let mut lo = 0.0;
    let mut hi = 1.0;
    while prr_unchecked(m, hi, frame) < target.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::NoConvergence("snr_for_prr bracket growth"));
        }
    }
    for _ in 0..500 {
        let mid = 0.5 * (lo + hi);
        let p = prr_unchecked(m, mid, frame);
        if (p - target.0).abs() <= SNR_SOLVER_TOL {
            return Ok(SnrLinear(mid));
        }
        if p < target.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence("snr_for_prr bisection"))
}

/// Mean-channel PRR at distance `d_m` for a full radio/channel pairing.
pub fn prr_at_distance(
    d_m: f64,
    radio: &RadioProfile,
    ch: &ChannelProfile,
) -> Result<Prr, Error> {
    if !d_m.is_finite() || d_m <= 0.0 {
        return Err(Error::InvalidDistance(d_m));
    }
    Ok(Prr(mean_prr(d_m, radio, ch)))
}

/// Shared pipeline used by the solvers: mean path loss -> dB budget ->
/// linear SNR -> PRR. Trusts `d_m > 0`.
#[inline]
pub(crate) fn mean_prr(d_m: f64, radio: &RadioProfile, ch: &ChannelProfile) -> f64 {
    shadowed_prr(d_m, 0.0, radio, ch)
}

/// Same pipeline with an explicit shadowing offset in dB. A zero offset is
/// bit-identical to [`mean_prr`], which is what lets the probabilistic
/// region search degenerate exactly to the deterministic one at sigma = 0.
#[inline]
pub(crate) fn shadowed_prr(
    d_m: f64,
    shadowing_db: f64,
    radio: &RadioProfile,
    ch: &ChannelProfile,
) -> f64 {
    let pl = channel::mean_path_loss_unchecked(d_m, ch) + shadowing_db;
    let snr = channel::snr_db(radio.pt_dbm, radio.pn_dbm, channel::PathLossDb(pl));
    let g = modem::snr_db_to_linear(snr);
    prr_unchecked(radio.modulation, g.0, radio.frame)
}

/// Largest distance at which `inside` still holds, assuming `inside` is
/// monotone (true on `[d0, boundary]`, false beyond). Geometric bracket
/// growth from `d0`, then bisection to [`REGION_TOL_M`].
///
/// Returns 0 when `inside(d0)` is already false (empty region) and an
/// unbounded-region error when the boundary lies past [`REGION_CAP_M`].
pub(crate) fn boundary_search<F: Fn(f64) -> bool>(d0: f64, inside: F) -> Result<f64, Error> {
    if !inside(d0) {
        return Ok(0.0);
    }
    if d0 >= REGION_CAP_M {
        return Err(Error::UnboundedRegion { cap_m: REGION_CAP_M });
    }
    let mut lo = d0;
    let mut hi = d0;
    loop {
        hi = (hi * 2.0).min(REGION_CAP_M);
        if !inside(hi) {
            break;
        }
        lo = hi;
        if hi >= REGION_CAP_M {
            return Err(Error::UnboundedRegion { cap_m: REGION_CAP_M });
        }
    }
    while hi - lo > REGION_TOL_M {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Deterministic (mean-channel) region boundaries for a radio.
pub fn region_bounds(
    radio: &RadioProfile,
    ch: &ChannelProfile,
    th: &RegionThresholds,
) -> Result<LinkRegions, Error> {
    radio.validate()?;
    ch.validate()?;
    th.validate()?;
    let d_connected_end_m =
        boundary_search(ch.d0_m, |d| mean_prr(d, radio, ch) >= th.connected)?;
    let d_transitional_end_m =
        boundary_search(ch.d0_m, |d| mean_prr(d, radio, ch) >= th.disconnected)?;
    Ok(LinkRegions { d_connected_end_m, d_transitional_end_m, thresholds: *th })
}

/// Closed-form radius at which the mean-channel SNR equals `gamma_star`:
///
/// ```text
/// d = d0 * 10^((pt - pn - PL(d0) - gamma*) / (10 n))
/// ```
///
/// Cross-checks the bisection in [`region_bounds`]; the two agree within
/// 1e-6 relative for any valid profile.
pub fn region_radius_closed_form(
    radio: &RadioProfile,
    ch: &ChannelProfile,
    gamma_star: SnrDb,
) -> f64 {
    let budget = radio.pt_dbm - radio.pn_dbm - ch.pl_d0_db - gamma_star.0;
    ch.d0_m * math::powf(10.0, budget / (10.0 * ch.n))
}

/// PRR-vs-SNR sweep over a dB grid (a receiver response curve).
pub fn receiver_response_curve(
    m: Modulation,
    frame: FrameSpec,
    snr_min_db: f64,
    snr_max_db: f64,
    step_db: f64,
) -> Result<Vec<(SnrDb, Prr)>, Error> {
    frame.validate()?;
    let grid = sweep_grid(snr_min_db, snr_max_db, step_db)?;
    Ok(grid
        .map(|s| {
            let g = modem::snr_db_to_linear(SnrDb(s));
            (SnrDb(s), Prr(prr_unchecked(m, g.0, frame)))
        })
        .collect())
}

/// Mean-channel PRR-vs-distance sweep.
pub fn prr_distance_curve(
    radio: &RadioProfile,
    ch: &ChannelProfile,
    d_min_m: f64,
    d_max_m: f64,
    step_m: f64,
) -> Result<Vec<(f64, Prr)>, Error> {
    radio.validate()?;
    ch.validate()?;
    if d_min_m <= 0.0 {
        return Err(Error::InvalidDistance(d_min_m));
    }
    let grid = sweep_grid(d_min_m, d_max_m, step_m)?;
    Ok(grid.map(|d| (d, Prr(mean_prr(d, radio, ch)))).collect())
}

/// Inclusive grid `lo, lo + step, ...` up to `hi` (with a small slack so
/// the endpoint survives accumulated rounding). Capped at 1e8 points.
fn sweep_grid(lo: f64, hi: f64, step: f64) -> Result<impl Iterator<Item = f64>, Error> {
    if !lo.is_finite() || !hi.is_finite() || !step.is_finite() || lo >= hi || step <= 0.0 {
        return Err(Error::InvalidSweep { lo, hi, step });
    }
    let count = math::floor((hi - lo) / step + 1.0 + 1e-9);
    if count > 1e8 {
        return Err(Error::InvalidSweep { lo, hi, step });
    }
    let count = count as usize;
    Ok((0..count).map(move |i| lo + i as f64 * step))
}
