//! Analytic model of low-power wireless links.
//!
//! The model chains four stages:
//!
//! 1. [`channel`] — log-normal shadowing path loss and the link-budget SNR,
//!    in deterministic-mean and stochastic-sample forms.
//! 2. [`modem`] — bit-error-rate kernels for NCFSK, CFSK, BPSK and DPSK,
//!    plus the Gaussian Q-function they require.
//! 3. [`link`] — packet reception rate (PRR) under NRZ framing, inverse
//!    solvers, and the connected/transitional/disconnected region calculus.
//! 4. [`montecarlo`] — seeded Bernoulli packet simulation and the
//!    shadowing-induced PRR distribution that widens the transitional region.
//!
//! [`profiles`] carries the built-in radio/channel configurations (MICA2,
//! TinyNode, a default indoor channel) and their JSON wire formats.
//!
//! The crate is `no_std`-compatible (`alloc` required); the `std` feature
//! (on by default) only adds `std::error::Error` and faster float intrinsics.
//! The optional `rayon` feature adds parallel Monte Carlo drivers that are
//! guaranteed to reproduce the sequential results bit for bit.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod channel;
pub mod error;
pub mod link;
pub mod modem;
pub mod montecarlo;
pub mod profiles;

mod math;

pub use channel::{ChannelProfile, PathLossDb, SnrDb, SnrLinear};
pub use error::Error;
pub use link::{FrameSpec, LinkRegions, Prr, RegionThresholds};
pub use modem::{BitErrorProb, Modulation};
pub use montecarlo::{PrrEnsemble, SimulationResult};
pub use profiles::RadioProfile;
