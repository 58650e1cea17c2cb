//! Command implementations. Every command is deterministic given its flags
//! (plus the seed where randomness is involved) and writes only inside the
//! chosen output directory.

use std::path::Path;

use linkprr::link::{
    prr_distance_curve, receiver_response_curve, region_bounds, LinkRegions,
    RegionThresholds,
};
use linkprr::montecarlo::{
    probabilistic_region_bounds, shadowed_prr_ensemble_par, simulate_packets_par,
};
use linkprr::modem::snr_db_to_linear;
use linkprr::{FrameSpec, Modulation, RadioProfile, SnrDb};

use crate::args::Command;
use crate::config::{load_channel, load_radio};
use crate::output::{csv, fmt6, write_file};
use crate::{svg, CliError};

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Response { mods, frame, snr_min, snr_max, step, out_dir, svg } => {
            cmd_response(&mods, &frame, snr_min, snr_max, step, &out_dir, svg)
        }
        Command::Curve { radio, channel, d_min, d_max, d_step, out_dir, svg } => {
            cmd_curve(&radio, channel.as_deref(), d_min, d_max, d_step, &out_dir, svg)
        }
        Command::Regions { radio, channel, confidence, draws, seed, out_dir } => {
            cmd_regions(&radio, channel.as_deref(), confidence, draws, seed, &out_dir)
        }
        Command::Compare {
            radios,
            mods,
            radio,
            frame,
            channel,
            d_min,
            d_max,
            d_step,
            out_dir,
            svg,
        } => cmd_compare(
            radios.as_deref(),
            mods.as_deref(),
            &radio,
            frame,
            channel.as_deref(),
            (d_min, d_max, d_step),
            &out_dir,
            svg,
        ),
        Command::Simulate { modulation, snr_db, frame, trials, seed, out_dir } => {
            cmd_simulate(&modulation, snr_db, frame, trials, seed, &out_dir)
        }
        Command::Ensemble { radio, channel, distance, draws, seed, out_dir } => {
            cmd_ensemble(&radio, channel.as_deref(), distance, draws, seed, &out_dir)
        }
    }
}

fn parse_mod(s: &str) -> Result<Modulation, CliError> {
    s.parse::<Modulation>().map_err(|e| CliError::Usage(e.to_string()))
}

fn frame_spec(frame_bytes: u32) -> Result<FrameSpec, CliError> {
    FrameSpec::new(frame_bytes, 2.min(frame_bytes)).map_err(CliError::from)
}

fn cmd_response(
    mods: &[String],
    frames: &[u32],
    snr_min: f64,
    snr_max: f64,
    step: f64,
    out_dir: &Path,
    want_svg: bool,
) -> Result<(), CliError> {
    let mods: Vec<Modulation> =
        mods.iter().map(|s| parse_mod(s)).collect::<Result<_, _>>()?;
    if frames.is_empty() {
        return Err(CliError::Usage("--frame needs at least one value".into()));
    }
    let mut overlays = Vec::new();
    for &m in &mods {
        for &f in frames {
            let frame = frame_spec(f)?;
            let curve = receiver_response_curve(m, frame, snr_min, snr_max, step)?;
            let rows = curve.iter().map(|(s, p)| vec![fmt6(s.0), fmt6(p.0)]);
            write_file(out_dir, &format!("response_{m}_f{f}.csv"), &csv("snr_db,prr", rows))?;
            overlays.push((
                format!("{m} f={f}"),
                curve.iter().map(|(s, p)| (s.0, p.0)).collect::<Vec<_>>(),
            ));
        }
    }
    if want_svg {
        let image = svg::render("Receiver response", "snr_db", "prr", &overlays);
        write_file(out_dir, "response.svg", &image)?;
    }
    Ok(())
}

fn cmd_curve(
    radio_spec: &str,
    channel_path: Option<&Path>,
    d_min: f64,
    d_max: f64,
    d_step: f64,
    out_dir: &Path,
    want_svg: bool,
) -> Result<(), CliError> {
    let radio = load_radio(radio_spec)?;
    let ch = load_channel(channel_path)?;
    let curve = prr_distance_curve(&radio, &ch, d_min, d_max, d_step)?;
    let rows = curve.iter().map(|(d, p)| vec![fmt6(*d), fmt6(p.0)]);
    write_file(out_dir, &format!("curve_{}.csv", radio.name), &csv("distance_m,prr", rows))?;
    if want_svg {
        let overlay =
            vec![(radio.name.clone(), curve.iter().map(|(d, p)| (*d, p.0)).collect())];
        let image = svg::render(
            &format!("PRR vs distance: {}", radio.name),
            "distance_m",
            "prr",
            &overlay,
        );
        write_file(out_dir, &format!("curve_{}.svg", radio.name), &image)?;
    }
    Ok(())
}

fn cmd_regions(
    radio_spec: &str,
    channel_path: Option<&Path>,
    confidence: f64,
    draws: u64,
    seed: u64,
    out_dir: &Path,
) -> Result<(), CliError> {
    let radio = load_radio(radio_spec)?;
    let ch = load_channel(channel_path)?;
    let th = RegionThresholds::default();
    let det = region_bounds(&radio, &ch, &th)?;
    let prob = probabilistic_region_bounds(&radio, &ch, &th, confidence, draws, seed)?;

    println!(
        "radio {} (pt={} dBm, pn={} dBm, {}, f={} bytes)",
        radio.name, radio.pt_dbm, radio.pn_dbm, radio.modulation, radio.frame.frame_bytes
    );
    println!(
        "channel d0={} m, pl(d0)={} dB, n={}, sigma={} dB",
        ch.d0_m, ch.pl_d0_db, ch.n, ch.sigma_db
    );
    print_region_line("deterministic (mean channel)", &det);
    print_region_line(
        &format!("probabilistic (confidence {confidence}, draws {draws}, seed {seed})"),
        &prob,
    );

    let header = "radio,definition,threshold_connected,threshold_disconnected,confidence,\
                  draws,seed,d_connected_end_m,d_transitional_end_m";
    let rows = vec![
        vec![
            radio.name.clone(),
            "deterministic".into(),
            fmt6(th.connected),
            fmt6(th.disconnected),
            String::new(),
            String::new(),
            String::new(),
            fmt6(det.d_connected_end_m),
            fmt6(det.d_transitional_end_m),
        ],
        vec![
            radio.name.clone(),
            "probabilistic".into(),
            fmt6(th.connected),
            fmt6(th.disconnected),
            fmt6(confidence),
            draws.to_string(),
            seed.to_string(),
            fmt6(prob.d_connected_end_m),
            fmt6(prob.d_transitional_end_m),
        ],
    ];
    write_file(out_dir, &format!("regions_{}.csv", radio.name), &csv(header, rows))?;
    Ok(())
}

fn print_region_line(label: &str, regions: &LinkRegions) {
    println!(
        "{label}: connected 0 - {} m, transitional {} - {} m",
        fmt6(regions.d_connected_end_m),
        fmt6(regions.d_connected_end_m),
        fmt6(regions.d_transitional_end_m),
    );
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    radios: Option<&[String]>,
    mods: Option<&[String]>,
    base_radio: &str,
    frame_override: Option<u32>,
    channel_path: Option<&Path>,
    (d_min, d_max, d_step): (f64, f64, f64),
    out_dir: &Path,
    want_svg: bool,
) -> Result<(), CliError> {
    let ch = load_channel(channel_path)?;
    let subjects: Vec<RadioProfile> = match (radios, mods) {
        (Some(names), None) if names.len() >= 2 => {
            names.iter().map(|n| load_radio(n)).collect::<Result<_, _>>()?
        }
        (None, Some(mod_names)) if mod_names.len() >= 2 => {
            let base = load_radio(base_radio)?;
            mod_names
                .iter()
                .map(|name| {
                    let m = parse_mod(name)?;
                    let mut r = base.clone();
                    r.name = format!("{}_{m}", base.name);
                    r.modulation = m;
                    if let Some(f) = frame_override {
                        r.frame = frame_spec(f)?;
                    }
                    Ok(r)
                })
                .collect::<Result<_, CliError>>()?
        }
        _ => {
            return Err(CliError::Usage(
                "compare needs either --radios a,b[,...] or --mods a,b[,...] \
                 (at least two entries, not both flags)"
                    .into(),
            ))
        }
    };

    let mut columns = Vec::new();
    for radio in &subjects {
        let curve = prr_distance_curve(radio, &ch, d_min, d_max, d_step)?;
        columns.push((radio.name.clone(), curve));
    }

    let mut header = String::from("distance_m");
    for (name, _) in &columns {
        header.push_str(&format!(",prr_{name}"));
    }
    let n_points = columns[0].1.len();
    let rows = (0..n_points).map(|i| {
        let mut row = vec![fmt6(columns[0].1[i].0)];
        for (_, curve) in &columns {
            row.push(fmt6(curve[i].1 .0));
        }
        row
    });
    write_file(out_dir, "compare_curves.csv", &csv(&header, rows))?;

    let th = RegionThresholds::default();
    let mut region_rows = Vec::new();
    println!("regions (deterministic, thresholds {}/{}):", th.connected, th.disconnected);
    for radio in &subjects {
        let regions = region_bounds(radio, &ch, &th)?;
        println!(
            "  {}: connected 0 - {} m, transitional to {} m",
            radio.name,
            fmt6(regions.d_connected_end_m),
            fmt6(regions.d_transitional_end_m)
        );
        region_rows.push(vec![
            radio.name.clone(),
            fmt6(regions.d_connected_end_m),
            fmt6(regions.d_transitional_end_m),
        ]);
    }
    write_file(
        out_dir,
        "compare_regions.csv",
        &csv("label,d_connected_end_m,d_transitional_end_m", region_rows),
    )?;

    if want_svg {
        let overlays: Vec<(String, Vec<(f64, f64)>)> = columns
            .iter()
            .map(|(name, curve)| {
                (name.clone(), curve.iter().map(|(d, p)| (*d, p.0)).collect())
            })
            .collect();
        let image = svg::render("PRR vs distance", "distance_m", "prr", &overlays);
        write_file(out_dir, "compare.svg", &image)?;
    }
    Ok(())
}

fn cmd_simulate(
    modulation: &str,
    snr_db: f64,
    frame_bytes: u32,
    trials: u64,
    seed: u64,
    out_dir: &Path,
) -> Result<(), CliError> {
    let m = parse_mod(modulation)?;
    let frame = frame_spec(frame_bytes)?;
    let g = snr_db_to_linear(SnrDb(snr_db));
    let result = simulate_packets_par(m, g, frame, trials, seed)?;
    println!(
        "{m} at {snr_db} dB, f={frame_bytes}: {}/{} packets received, empirical prr {}",
        result.successes,
        result.trials,
        fmt6(result.empirical_prr)
    );
    let header = "modulation,snr_db,frame_bytes,trials,successes,empirical_prr,seed";
    let rows = vec![vec![
        m.to_string(),
        fmt6(snr_db),
        frame_bytes.to_string(),
        result.trials.to_string(),
        result.successes.to_string(),
        fmt6(result.empirical_prr),
        result.seed.to_string(),
    ]];
    write_file(out_dir, "simulate.csv", &csv(header, rows))?;
    Ok(())
}

fn cmd_ensemble(
    radio_spec: &str,
    channel_path: Option<&Path>,
    distance: f64,
    draws: u64,
    seed: u64,
    out_dir: &Path,
) -> Result<(), CliError> {
    let radio = load_radio(radio_spec)?;
    let ch = load_channel(channel_path)?;
    let ensemble = shadowed_prr_ensemble_par(distance, &radio, &ch, draws, seed)?;
    let s = ensemble.summary;
    println!(
        "{} at {} m, sigma {} dB, {} draws: mean prr {}, std {}",
        radio.name,
        fmt6(distance),
        ch.sigma_db,
        draws,
        fmt6(s.mean),
        fmt6(s.std)
    );
    let header = "distance_m,mean_prr,std_prr,p05,p25,p50,p75,p95";
    let rows = vec![vec![
        fmt6(ensemble.distance_m),
        fmt6(s.mean),
        fmt6(s.std),
        fmt6(s.p05),
        fmt6(s.p25),
        fmt6(s.p50),
        fmt6(s.p75),
        fmt6(s.p95),
    ]];
    write_file(out_dir, "ensemble.csv", &csv(header, rows))?;
    Ok(())
}
