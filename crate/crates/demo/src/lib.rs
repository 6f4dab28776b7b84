//! WebAssembly bindings behind `www/index.html`.
//!
//! Each exported function has a plain-Rust twin returning `Result<_, String>`
//! so it can be exercised natively; the exported wrappers only convert errors
//! into JS exceptions.

use beamtrack::mobility::MobilityParams;
use beamtrack::sim::{self, ScenarioConfig, Sweep};
use beamtrack::{AntennaPattern, Mechanism, TrScore};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
pub struct UeView {
    pub id: u32,
    pub before: [f64; 2],
    pub after: [f64; 2],
    pub capacity_bps: f64,
    pub in_area: bool,
}

#[derive(Debug, Serialize)]
pub struct DecisionView {
    pub mechanism: &'static str,
    pub direction: f64,
    pub covered: usize,
    pub throughput_bps: f64,
    pub handoff_prob: f64,
    pub tr: f64,
    pub all_covered: bool,
    /// UE ids inside the chosen window, in counter-clockwise order.
    pub window: Vec<u32>,
}

#[derive(Debug, Serialize)]
pub struct DropView {
    pub cell_radius: f64,
    pub beamwidth: f64,
    pub area_center: f64,
    pub area_width: f64,
    pub candidates: usize,
    pub ues: Vec<UeView>,
    pub decisions: Vec<DecisionView>,
}

#[derive(Debug, Serialize)]
pub struct CurveView {
    pub m: Vec<usize>,
    /// Mechanism label and mean TR per `m`.
    pub series: Vec<(&'static str, Vec<f64>)>,
    pub ci: Vec<(&'static str, Vec<f64>)>,
}

fn scenario(
    m: usize,
    beamwidth_deg: f64,
    freq_ghz: f64,
    speed_max: f64,
    seed: u64,
) -> Result<ScenarioConfig, String> {
    let cfg = ScenarioConfig {
        ues_per_beam: m,
        beamwidth_bs: beamwidth_deg.to_radians(),
        beamwidth_ue: beamwidth_deg.to_radians(),
        carrier_freq: freq_ghz * 1e9,
        mobility: MobilityParams {
            speed_min: 0.0_f64.max(speed_max / 3.0),
            speed_max,
            ..Default::default()
        },
        seed,
        ..Default::default()
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

/// Sampled gain (linear) of a sector pattern over `[-π, π)`.
pub fn pattern_samples(
    beamwidth_deg: f64,
    side_lobe: f64,
    samples: usize,
) -> Result<Vec<f64>, String> {
    let p =
        AntennaPattern::new(beamwidth_deg.to_radians(), side_lobe).map_err(|e| e.to_string())?;
    let n = samples.max(2);
    Ok((0..n)
        .map(|i| {
            let off = -std::f64::consts::PI + std::f64::consts::TAU * i as f64 / n as f64;
            p.gain(off)
        })
        .collect())
}

pub fn drop_view(
    seed: u64,
    m: usize,
    beamwidth_deg: f64,
    freq_ghz: f64,
    speed_max: f64,
) -> Result<DropView, String> {
    let cfg = scenario(m, beamwidth_deg, freq_ghz, speed_max, seed)?;
    let d = sim::run_drop_detailed(&cfg, seed).map_err(|e| e.to_string())?;
    let ues = d
        .before
        .iter()
        .zip(&d.after)
        .zip(&d.capacities)
        .enumerate()
        .map(|(i, ((b, a), c))| UeView {
            id: i as u32,
            before: [b.angle(), b.radius()],
            after: [a.angle(), a.radius()],
            capacity_bps: *c,
            in_area: d.area.contains_interior(a),
        })
        .collect();
    let decisions = d
        .decisions
        .iter()
        .zip(&d.result.outcomes)
        .map(|(dec, out)| DecisionView {
            mechanism: dec.mechanism.label(),
            direction: dec.new_direction,
            covered: dec.covered_count,
            throughput_bps: dec.throughput,
            handoff_prob: dec.handoff_prob,
            tr: out.tr,
            all_covered: matches!(dec.tr, TrScore::AllCovered),
            window: dec
                .chosen
                .map(|c| d.ring_ids[c.start..=c.end].iter().map(|id| id.0).collect())
                .unwrap_or_default(),
        })
        .collect();
    Ok(DropView {
        cell_radius: cfg.r_cell,
        beamwidth: cfg.beamwidth_bs,
        area_center: d.area.center(),
        area_width: d.area.width(),
        candidates: d.candidates.len(),
        ues,
        decisions,
    })
}

pub fn curve_view(
    freq_ghz: f64,
    beamwidth_deg: f64,
    trials: usize,
    seed: u64,
) -> Result<CurveView, String> {
    let mut cfg = scenario(1, beamwidth_deg, freq_ghz, 3.0, seed)?;
    cfg.mobility.speed_min = 1.0;
    cfg.n_trials = trials.max(1);
    let m: Vec<usize> = std::iter::once(1).chain((5..=30).step_by(5)).collect();
    let sweep = Sweep {
        m_values: m.clone(),
        freqs: vec![cfg.carrier_freq],
        widths: vec![cfg.beamwidth_bs],
    };
    let stats = sim::run_sweep(&cfg, &sweep).map_err(|e| e.to_string())?;
    let pick = |f: fn(&sim::MechanismStats) -> f64| {
        Mechanism::ALL
            .iter()
            .map(|&mech| (mech.label(), stats.iter().map(|s| f(s.get(mech))).collect()))
            .collect()
    };
    Ok(CurveView {
        m,
        series: pick(|s| s.mean_tr),
        ci: pick(|s| s.ci_tr),
    })
}

fn to_json<T: Serialize>(v: Result<T, String>) -> Result<String, JsValue> {
    v.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn antenna_pattern(
    beamwidth_deg: f64,
    side_lobe: f64,
    samples: usize,
) -> Result<Vec<f64>, JsValue> {
    pattern_samples(beamwidth_deg, side_lobe, samples).map_err(|e| JsValue::from_str(&e))
}

/// One drop rendered as JSON: UE positions before/after moving and each
/// mechanism's decision.
#[wasm_bindgen]
pub fn simulate_drop(
    seed: u64,
    m: usize,
    beamwidth_deg: f64,
    freq_ghz: f64,
    speed_max: f64,
) -> Result<String, JsValue> {
    to_json(drop_view(seed, m, beamwidth_deg, freq_ghz, speed_max))
}

/// Mean TR against UEs per beam for all mechanisms, as JSON.
#[wasm_bindgen]
pub fn tr_curve(
    freq_ghz: f64,
    beamwidth_deg: f64,
    trials: usize,
    seed: u64,
) -> Result<String, JsValue> {
    to_json(curve_view(freq_ghz, beamwidth_deg, trials, seed))
}
