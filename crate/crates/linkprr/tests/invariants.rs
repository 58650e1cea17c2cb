//! Cross-module property tests: monotonicity of the loss/SNR/PRR pipeline
//! and the solver-vs-closed-form equivalence on randomized profiles.

use linkprr::channel::{distance_for_path_loss, mean_path_loss, snr_db, ChannelProfile, SnrDb};
use linkprr::link::{
    prr, region_bounds, region_radius_closed_form, snr_for_prr, FrameSpec, Prr,
    RegionThresholds,
};
use linkprr::modem::{ber, snr_db_to_linear, snr_linear_to_db, Modulation};
use linkprr::profiles::builtin_radio;
use linkprr::{RadioProfile, SnrLinear};
use proptest::prelude::*;

fn channel(d0_m: f64, pl_d0_db: f64, n: f64) -> ChannelProfile {
    ChannelProfile { d0_m, pl_d0_db, n, sigma_db: 0.0 }
}

proptest! {
    #[test]
    fn path_loss_strictly_increasing_in_distance(
        d in 0.01f64..1e4,
        factor in 1.000001f64..100.0,
        n in 1.0f64..8.0,
    ) {
        let ch = channel(1.0, 55.0, n);
        let near = mean_path_loss(d, &ch).unwrap().0;
        let far = mean_path_loss(d * factor, &ch).unwrap().0;
        prop_assert!(far > near, "PL({}) = {} !> PL({}) = {}", d * factor, far, d, near);
    }

    #[test]
    fn path_loss_strictly_increasing_in_exponent_past_d0(
        d in 1.001f64..1e4,
        n in 1.0f64..7.0,
        dn in 0.01f64..1.0,
    ) {
        let lo = mean_path_loss(d, &channel(1.0, 55.0, n)).unwrap().0;
        let hi = mean_path_loss(d, &channel(1.0, 55.0, n + dn)).unwrap().0;
        prop_assert!(hi > lo);
    }

    #[test]
    fn path_loss_increasing_in_reference_loss(
        d in 0.01f64..1e4,
        pl0 in 0.0f64..100.0,
        bump in 0.001f64..50.0,
    ) {
        let lo = mean_path_loss(d, &channel(1.0, pl0, 4.0)).unwrap().0;
        let hi = mean_path_loss(d, &channel(1.0, pl0 + bump, 4.0)).unwrap().0;
        prop_assert!(hi > lo);
    }

    #[test]
    fn snr_strictly_decreasing_in_distance(
        d in 0.1f64..1e3,
        factor in 1.00001f64..50.0,
    ) {
        let ch = ChannelProfile { sigma_db: 0.0, ..ChannelProfile::default() };
        let at = |d: f64| snr_db(5.0, -104.0, mean_path_loss(d, &ch).unwrap()).0;
        prop_assert!(at(d * factor) < at(d));
    }

    #[test]
    fn distance_inversion_round_trip(
        d in 0.01f64..1e5,
        d0 in 0.1f64..10.0,
        pl0 in 10.0f64..90.0,
        n in 1.5f64..6.0,
    ) {
        let ch = channel(d0, pl0, n);
        let back = distance_for_path_loss(mean_path_loss(d, &ch).unwrap(), &ch);
        prop_assert!(((back - d) / d).abs() < 1e-9, "{d} -> {back}");
    }

    #[test]
    fn db_linear_mutual_inverse(s in -80.0f64..80.0) {
        let back = snr_linear_to_db(snr_db_to_linear(SnrDb(s))).unwrap().0;
        prop_assert!((back - s).abs() <= 1e-12 * s.abs().max(1.0));
    }

    #[test]
    fn prr_nondecreasing_in_snr(
        g in 0.0f64..200.0,
        dg in 0.0f64..50.0,
        f in 1u32..200,
    ) {
        let frame = FrameSpec { frame_bytes: f, preamble_bytes: 0 };
        for m in Modulation::ALL {
            let lo = prr(m, SnrLinear(g), frame).unwrap().0;
            let hi = prr(m, SnrLinear(g + dg), frame).unwrap().0;
            prop_assert!(hi >= lo, "{m}: prr({}) = {hi} < prr({g}) = {lo}", g + dg);
        }
    }

    #[test]
    fn prr_nonincreasing_in_frame_size(
        g in 0.0f64..100.0,
        f in 1u32..100,
        extra in 1u32..100,
    ) {
        for m in Modulation::ALL {
            let small = FrameSpec { frame_bytes: f, preamble_bytes: 0 };
            let large = FrameSpec { frame_bytes: f + extra, preamble_bytes: 0 };
            let ps = prr(m, SnrLinear(g), small).unwrap().0;
            let pl = prr(m, SnrLinear(g), large).unwrap().0;
            prop_assert!(pl <= ps);
        }
    }

    #[test]
    fn ber_ordering_everywhere_in_the_working_range(g in 1e-3f64..600.0) {
        let b = ber(Modulation::Bpsk, SnrLinear(g)).unwrap().0;
        let d = ber(Modulation::Dpsk, SnrLinear(g)).unwrap().0;
        let c = ber(Modulation::Cfsk, SnrLinear(g)).unwrap().0;
        let n = ber(Modulation::Ncfsk, SnrLinear(g)).unwrap().0;
        prop_assert!(b < d && d < n, "at g = {g}: {b} {d} {n}");
        prop_assert!(b < c && c < n, "at g = {g}: {b} {c} {n}");
    }
}

/// 100 randomized valid profiles: bisection vs closed form within 1e-6
/// relative, for both region boundaries.
#[test]
fn region_solver_matches_closed_form_on_random_profiles() {
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut uniform = |lo: f64, hi: f64| {
        lo + (hi - lo) * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64)
    };
    let th = RegionThresholds::default();
    for case in 0..100 {
        let d0 = uniform(1.0, 3.0);
        let pl0 = uniform(30.0, 70.0);
        let n = uniform(2.0, 6.0);
        let ch = channel(d0, pl0, n);
        let m = Modulation::ALL[case % 4];
        let f = [25u32, 50, 100, 200][(case / 4) % 4];
        let frame = FrameSpec { frame_bytes: f, preamble_bytes: 2 };
        let margin_over_threshold = uniform(5.0, 100.0);

        let g_conn =
            snr_linear_to_db(snr_for_prr(m, frame, Prr(th.connected)).unwrap()).unwrap();
        let radio = RadioProfile {
            name: format!("case{case}"),
            pt_dbm: 0.0,
            pn_dbm: -(pl0 + g_conn.0 + margin_over_threshold),
            modulation: m,
            frame,
        };

        let regions = region_bounds(&radio, &ch, &th).unwrap();
        let d_formula = region_radius_closed_form(&radio, &ch, g_conn);
        let rel = ((regions.d_connected_end_m - d_formula) / d_formula).abs();
        assert!(rel <= 1e-6, "case {case}: connected off by {rel}");

        let g_trans =
            snr_linear_to_db(snr_for_prr(m, frame, Prr(th.disconnected)).unwrap())
                .unwrap();
        let d_formula = region_radius_closed_form(&radio, &ch, g_trans);
        let rel = ((regions.d_transitional_end_m - d_formula) / d_formula).abs();
        assert!(rel <= 1e-6, "case {case}: transitional off by {rel}");
    }
}

#[test]
fn connected_radius_moves_the_right_way() {
    let ch = ChannelProfile { sigma_db: 0.0, ..ChannelProfile::default() };
    let th = RegionThresholds::default();
    let base_radio = builtin_radio("mica2").unwrap();
    let radius = |radio: &RadioProfile, th: &RegionThresholds| {
        region_bounds(radio, &ch, th).unwrap().d_connected_end_m
    };
    let base = radius(&base_radio, &th);

    let mut hot = base_radio.clone();
    hot.pt_dbm += 3.0;
    assert!(radius(&hot, &th) > base, "more transmit power must not shrink the region");

    let mut noisy = base_radio.clone();
    noisy.pn_dbm += 3.0;
    assert!(radius(&noisy, &th) < base, "a higher noise floor must shrink the region");

    let mut long_frames = base_radio.clone();
    long_frames.frame.frame_bytes = 200;
    assert!(radius(&long_frames, &th) < base, "longer frames must shrink the region");

    let relaxed = RegionThresholds::new(0.8, 0.1).unwrap();
    assert!(radius(&base_radio, &relaxed) > base, "a lower bar must widen the region");
}

/// Raising the transmit power by 10 n dB scales both radii by exactly 10;
/// exact in the closed form, within bisection tolerance for the solver.
#[test]
fn budget_decade_scales_radii_by_ten() {
    let ch = ChannelProfile { sigma_db: 0.0, ..ChannelProfile::default() };
    let radio = builtin_radio("mica2").unwrap();
    let mut boosted = radio.clone();
    boosted.pt_dbm += 10.0 * ch.n;
    for g_star in [SnrDb(5.0), SnrDb(11.79)] {
        let r0 = region_radius_closed_form(&radio, &ch, g_star);
        let r1 = region_radius_closed_form(&boosted, &ch, g_star);
        assert!((r1 / r0 - 10.0).abs() < 1e-12);
    }
}
