//! Monte Carlo harness: place UEs, move them, evaluate every mechanism on the
//! same drop, and aggregate the outcomes over many drops.

use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::{order_ues, uniform_sector_point, GeometryError, PolarPoint, Sector, UeId};
use crate::mobility::{self, MobilityParams, MIN_RADIUS};
use crate::radio::{self, AntennaPattern, BeamConfig, BeamId, ChannelParams, RadioError};
use crate::tracking::{
    evaluate_wobt, scored_candidates, select_mnbt, select_mtbt, select_trbt, Mechanism, TrScore,
    TrackingDecision, TrackingError,
};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error("no trials to aggregate")]
    EmptyTrials,
    #[error("trials mix different sweep points")]
    MixedTrials,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Radio(#[from] RadioError),
    #[error(transparent)]
    Tracking(#[from] TrackingError),
    #[error("failed to build worker pool: {0}")]
    Pool(String),
}

/// What the window throughput is divided by before dividing by the handoff
/// probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `m · B`: normalized throughput is the mean spectral efficiency per
    /// previously served UE, so it tracks absolute link quality.
    #[default]
    PerUeBandwidth,
    /// Sum of capacities of the UEs currently in the tracking area.
    TrackingArea,
}

impl Normalization {
    pub fn label(self) -> &'static str {
        match self {
            Self::PerUeBandwidth => "per_ue_bandwidth",
            Self::TrackingArea => "tracking_area",
        }
    }
}

impl std::str::FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "per_ue_bandwidth" => Ok(Self::PerUeBandwidth),
            "tracking_area" => Ok(Self::TrackingArea),
            other => Err(format!(
                "unknown normalization `{other}` (expected per_ue_bandwidth or tracking_area)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    /// Hz
    pub carrier_freq: f64,
    /// Hz
    pub bandwidth: f64,
    /// m
    pub r_cell: f64,
    pub ues_per_beam: usize,
    /// rad
    pub beamwidth_bs: f64,
    /// rad
    pub beamwidth_ue: f64,
    /// dBm
    pub tx_power: f64,
    pub side_lobe: f64,
    /// dBm/Hz
    pub noise_density: f64,
    /// dB
    pub shadowing_sigma: f64,
    pub pathloss_exp: f64,
    pub n_beams: usize,
    /// rad; `None` means three beamwidths.
    pub tracking_area_width: Option<f64>,
    pub mobility: MobilityParams,
    pub normalization: Normalization,
    pub n_trials: usize,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            carrier_freq: 28e9,
            bandwidth: 500e6,
            r_cell: 200.0,
            ues_per_beam: 10,
            beamwidth_bs: 10f64.to_radians(),
            beamwidth_ue: 10f64.to_radians(),
            tx_power: 40.0,
            side_lobe: 0.01,
            noise_density: -174.0,
            shadowing_sigma: 12.0,
            pathloss_exp: 2.5,
            n_beams: 6,
            tracking_area_width: None,
            mobility: MobilityParams::default(),
            normalization: Normalization::PerUeBandwidth,
            n_trials: 500,
            seed: 1,
        }
    }
}

impl ScenarioConfig {
    pub fn channel(&self) -> ChannelParams {
        ChannelParams {
            carrier_freq: self.carrier_freq,
            bandwidth: self.bandwidth,
            pathloss_exp: self.pathloss_exp,
            shadowing_sigma: self.shadowing_sigma,
            noise_density: self.noise_density,
        }
    }

    /// Width of the region the tracked beam may be steered within.
    pub fn effective_tracking_area(&self) -> f64 {
        self.tracking_area_width
            .unwrap_or_else(|| (3.0 * self.beamwidth_bs).min(TAU * (1.0 - 1e-9)))
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |msg: &str| Err(SimError::Validation(msg.to_string()));
        self.channel()
            .validate()
            .map_err(|e| SimError::Validation(e.to_string()))?;
        if !(self.r_cell > MIN_RADIUS) {
            return bad("cell radius must exceed the 1 m minimum UE distance");
        }
        if self.ues_per_beam == 0 {
            return bad("ues_per_beam must be >= 1");
        }
        if !(self.beamwidth_bs > 0.0 && self.beamwidth_bs <= TAU) {
            return bad("beamwidth_bs must be in (0, 2π]");
        }
        if !(self.beamwidth_ue > 0.0 && self.beamwidth_ue <= TAU) {
            return bad("beamwidth_ue must be in (0, 2π]");
        }
        if !(0.0..1.0).contains(&self.side_lobe) {
            return bad("side_lobe must be a linear gain in [0, 1)");
        }
        if !self.tx_power.is_finite() {
            return bad("tx_power must be finite");
        }
        if self.n_beams == 0 {
            return bad("n_beams must be >= 1");
        }
        if self.n_beams as f64 * self.beamwidth_bs > TAU * (1.0 + 1e-12) {
            return bad("beams overlap: n_beams * beamwidth_bs exceeds 360 deg");
        }
        let area = self.effective_tracking_area();
        if !(area >= self.beamwidth_bs && area < TAU) {
            return bad("tracking_area_width must be >= beamwidth_bs and < 360 deg");
        }
        self.mobility
            .validate()
            .map_err(|e| SimError::Validation(e.to_string()))?;
        if self.n_trials == 0 {
            return bad("n_trials must be >= 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    /// bit/s
    pub throughput: f64,
    pub handoff_prob: f64,
    /// TR with the all-covered case floored, see [`floored_tr`].
    pub tr: f64,
    pub all_covered: bool,
    /// Raw decision score, for comparisons that respect the sentinel order.
    pub score: TrScore,
    pub direction: f64,
    pub covered_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    pub m: usize,
    /// UEs inside the tracking area after movement.
    pub n: usize,
    pub freq_hz: f64,
    pub beamwidth_rad: f64,
    /// Indexed by [`Mechanism::index`].
    pub outcomes: [Outcome; 4],
}

impl TrialResult {
    pub fn get(&self, m: Mechanism) -> &Outcome {
        &self.outcomes[m.index()]
    }
}

/// TR used for averaging. A window with zero handoff probability has no
/// finite score, so its probability is floored at `1 / (2m)`, half the
/// smallest nonzero value.
pub fn floored_tr(score: TrScore, throughput: f64, total: f64, m: usize) -> f64 {
    match score {
        TrScore::Finite(v) => v,
        TrScore::AllCovered => throughput / total * (2 * m) as f64,
    }
}

/// Everything a drop produced, for inspection and visualization.
#[derive(Debug, Clone)]
pub struct DropDetail {
    pub before: Vec<PolarPoint>,
    pub after: Vec<PolarPoint>,
    /// Capacity of each UE if served by the tracked beam's main lobe, bit/s.
    pub capacities: Vec<f64>,
    pub area: Sector,
    pub ring_ids: Vec<UeId>,
    pub candidates: Vec<crate::tracking::CandidateSet>,
    pub total_throughput: f64,
    pub decisions: [TrackingDecision; 4],
    pub result: TrialResult,
}

/// Direction of the tracked beam before the UEs move.
pub const TRACKED_BEAM_DIRECTION: f64 = 0.0;

/// Fixed interfering beams, evenly spaced after the tracked one.
pub fn interferer_beams(cfg: &ScenarioConfig, pattern: AntennaPattern) -> Vec<BeamConfig> {
    (1..cfg.n_beams)
        .map(|k| BeamConfig {
            id: BeamId(k as u32),
            direction: TRACKED_BEAM_DIRECTION + TAU * k as f64 / cfg.n_beams as f64,
            pattern,
            tx_power: cfg.tx_power,
        })
        .collect()
}

/// Runs one drop and keeps all intermediate state.
///
/// RNG draws happen in a fixed order (placement, movement, shadowing) and
/// their count depends only on `m` and `n_beams`, so drops that share a seed
/// share geometry and shadowing across carrier frequencies.
pub fn run_drop_detailed(cfg: &ScenarioConfig, seed: u64) -> Result<DropDetail, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = cfg.ues_per_beam;
    let params = cfg.channel();
    let bs_pattern = AntennaPattern::new(cfg.beamwidth_bs, cfg.side_lobe)?;
    let ue_pattern = AntennaPattern::new(cfg.beamwidth_ue, cfg.side_lobe)?;
    let beam_sector = Sector::new(TRACKED_BEAM_DIRECTION, cfg.beamwidth_bs)?;
    let area = Sector::new(TRACKED_BEAM_DIRECTION, cfg.effective_tracking_area())?;

    let before: Vec<PolarPoint> = (0..m)
        .map(|_| uniform_sector_point(&mut rng, &beam_sector, MIN_RADIUS, cfg.r_cell))
        .collect();
    let after: Vec<PolarPoint> = before
        .iter()
        .map(|p| mobility::step(p, &cfg.mobility, cfg.r_cell, &mut rng))
        .collect();
    let shadows: Vec<Vec<f64>> = (0..m)
        .map(|_| {
            (0..cfg.n_beams)
                .map(|_| params.sample_shadow_db(&mut rng))
                .collect()
        })
        .collect();

    let interferers = interferer_beams(cfg, bs_pattern);
    let capacities = after
        .iter()
        .zip(&shadows)
        .map(|(ue, sh)| {
            // covered UEs sit inside the re-pointed main lobe
            let serving = BeamConfig {
                id: BeamId(0),
                direction: ue.angle(),
                pattern: bs_pattern,
                tx_power: cfg.tx_power,
            };
            let s = radio::sinr(&serving, ue, &ue_pattern, &interferers, &params, sh)?;
            radio::capacity(&params, s)
        })
        .collect::<Result<Vec<f64>, RadioError>>()?;

    let in_area: Vec<(UeId, PolarPoint)> = after
        .iter()
        .enumerate()
        .filter(|(_, p)| area.contains_interior(p))
        .map(|(i, p)| (UeId(i as u32), *p))
        .collect();

    let area_throughput: f64 = in_area
        .iter()
        .map(|(id, _)| capacities[id.0 as usize])
        .sum();
    let total_throughput = match cfg.normalization {
        Normalization::PerUeBandwidth => m as f64 * cfg.bandwidth,
        Normalization::TrackingArea if area_throughput > 0.0 => area_throughput,
        // nobody left to normalize against; every outcome has zero throughput
        Normalization::TrackingArea => 1.0,
    };

    let (ring_ids, candidates, trackers) = if in_area.is_empty() {
        let none = |mech| TrackingDecision::no_coverage(mech, TRACKED_BEAM_DIRECTION);
        (
            Vec::new(),
            Vec::new(),
            [
                none(Mechanism::Trbt),
                none(Mechanism::Mnbt),
                none(Mechanism::Mtbt),
            ],
        )
    } else {
        let ring = order_ues(&in_area, &area)?;
        let ring_caps: Vec<f64> = ring
            .ues()
            .iter()
            .map(|(id, _)| capacities[id.0 as usize])
            .collect();
        let candidates =
            scored_candidates(&ring, cfg.beamwidth_bs, &ring_caps, m, total_throughput)?;
        let decisions = [
            select_trbt(&candidates)?,
            select_mnbt(&candidates)?,
            select_mtbt(&candidates)?,
        ];
        let ids = ring.ues().iter().map(|(id, _)| *id).collect();
        (ids, candidates, decisions)
    };

    let ues_with_caps: Vec<(PolarPoint, f64)> = after
        .iter()
        .copied()
        .zip(capacities.iter().copied())
        .collect();
    let wobt = evaluate_wobt(
        TRACKED_BEAM_DIRECTION,
        cfg.beamwidth_bs,
        &ues_with_caps,
        m,
        total_throughput,
    )?;

    let [trbt, mnbt, mtbt] = trackers;
    let decisions = [trbt, wobt, mnbt, mtbt];
    let outcome = |d: &TrackingDecision| Outcome {
        throughput: d.throughput,
        handoff_prob: d.handoff_prob,
        tr: floored_tr(d.tr, d.throughput, total_throughput, m),
        all_covered: d.tr.is_all_covered(),
        score: d.tr,
        direction: d.new_direction,
        covered_count: d.covered_count,
    };
    let result = TrialResult {
        seed,
        m,
        n: in_area.len(),
        freq_hz: cfg.carrier_freq,
        beamwidth_rad: cfg.beamwidth_bs,
        outcomes: decisions.each_ref().map(outcome),
    };
    Ok(DropDetail {
        before,
        after,
        capacities,
        area,
        ring_ids,
        candidates,
        total_throughput,
        decisions,
        result,
    })
}

pub fn run_drop(cfg: &ScenarioConfig, seed: u64) -> Result<TrialResult, SimError> {
    run_drop_detailed(cfg, seed).map(|d| d.result)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` at population `m`. Frequency and beamwidth are left
/// out so that sweep points differing only in those share their drops.
pub fn trial_seed(master: u64, m: usize, trial: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ m as u64) ^ trial as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MechanismStats {
    pub mean_tr: f64,
    pub ci_tr: f64,
    pub mean_throughput: f64,
    pub ci_throughput: f64,
    pub mean_handoff: f64,
    pub ci_handoff: f64,
    /// Trials whose TR went through the zero-handoff floor.
    pub all_covered_trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateStats {
    pub m: usize,
    pub freq_hz: f64,
    pub beamwidth_rad: f64,
    pub n_trials: usize,
    /// Indexed by [`Mechanism::index`].
    pub per_mechanism: [MechanismStats; 4],
}

impl AggregateStats {
    pub fn get(&self, m: Mechanism) -> &MechanismStats {
        &self.per_mechanism[m.index()]
    }
}

/// Mean and normal-approximation 95% half-width.
fn mean_ci(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count();
    let mean = xs.clone().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, 1.96 * (var / n as f64).sqrt())
}

pub fn aggregate(trials: &[TrialResult]) -> Result<AggregateStats, SimError> {
    let first = trials.first().ok_or(SimError::EmptyTrials)?;
    if trials.iter().any(|t| {
        t.m != first.m || t.freq_hz != first.freq_hz || t.beamwidth_rad != first.beamwidth_rad
    }) {
        return Err(SimError::MixedTrials);
    }
    let per_mechanism = Mechanism::ALL.map(|mech| {
        let outs = trials.iter().map(move |t| t.get(mech));
        let (mean_tr, ci_tr) = mean_ci(outs.clone().map(|o| o.tr));
        let (mean_throughput, ci_throughput) = mean_ci(outs.clone().map(|o| o.throughput));
        let (mean_handoff, ci_handoff) = mean_ci(outs.clone().map(|o| o.handoff_prob));
        MechanismStats {
            mean_tr,
            ci_tr,
            mean_throughput,
            ci_throughput,
            mean_handoff,
            ci_handoff,
            all_covered_trials: outs.filter(|o| o.all_covered).count(),
        }
    });
    Ok(AggregateStats {
        m: first.m,
        freq_hz: first.freq_hz,
        beamwidth_rad: first.beamwidth_rad,
        n_trials: trials.len(),
        per_mechanism,
    })
}

/// Sweep axes. Points are visited frequency-major, then beamwidth, then `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub m_values: Vec<usize>,
    pub freqs: Vec<f64>,
    pub widths: Vec<f64>,
}

impl Sweep {
    pub fn single(cfg: &ScenarioConfig) -> Self {
        Self {
            m_values: vec![cfg.ues_per_beam],
            freqs: vec![cfg.carrier_freq],
            widths: vec![cfg.beamwidth_bs],
        }
    }

    pub fn points(&self, cfg: &ScenarioConfig) -> Vec<ScenarioConfig> {
        let mut out = Vec::new();
        for &f in &self.freqs {
            for &w in &self.widths {
                for &m in &self.m_values {
                    out.push(ScenarioConfig {
                        carrier_freq: f,
                        beamwidth_bs: w,
                        ues_per_beam: m,
                        ..*cfg
                    });
                }
            }
        }
        out
    }
}

fn run_point(cfg: &ScenarioConfig) -> Result<Vec<TrialResult>, SimError> {
    let seeds: Vec<u64> = (0..cfg.n_trials)
        .map(|t| trial_seed(cfg.seed, cfg.ues_per_beam, t))
        .collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        seeds.par_iter().map(|&s| run_drop(cfg, s)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seeds.iter().map(|&s| run_drop(cfg, s)).collect()
    }
}

/// Runs `cfg.n_trials` drops at every sweep point on the current thread pool.
pub fn run_sweep(cfg: &ScenarioConfig, sweep: &Sweep) -> Result<Vec<AggregateStats>, SimError> {
    if sweep.m_values.is_empty() || sweep.freqs.is_empty() || sweep.widths.is_empty() {
        return Err(SimError::Validation("sweep axes must be non-empty".into()));
    }
    sweep
        .points(cfg)
        .iter()
        .map(|point| {
            point.validate()?;
            // collected in trial order, so the reduction never depends on scheduling
            aggregate(&run_point(point)?)
        })
        .collect()
}

/// Like [`run_sweep`] but on a dedicated pool of `workers` threads.
#[cfg(feature = "parallel")]
pub fn run_sweep_with_workers(
    cfg: &ScenarioConfig,
    sweep: &Sweep,
    workers: usize,
) -> Result<Vec<AggregateStats>, SimError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SimError::Pool(e.to_string()))?;
    pool.install(|| run_sweep(cfg, sweep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small() -> ScenarioConfig {
        ScenarioConfig {
            n_trials: 20,
            ..Default::default()
        }
    }

    #[test]
    fn defaults_validate() {
        ScenarioConfig::default().validate().unwrap();
        let bad = ScenarioConfig {
            n_beams: 40,
            beamwidth_bs: 30f64.to_radians(),
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(SimError::Validation(_))));
    }

    #[test]
    fn stationary_ues_are_never_handed_off() {
        let cfg = ScenarioConfig {
            mobility: MobilityParams {
                speed_min: 0.0,
                speed_max: 0.0,
                ..Default::default()
            },
            ues_per_beam: 12,
            ..small()
        };
        for seed in 0..50 {
            let r = run_drop(&cfg, seed).unwrap();
            for o in &r.outcomes {
                assert_eq!(o.handoff_prob, 0.0);
                assert!(o.all_covered);
            }
            assert_eq!(r.get(Mechanism::Wobt).covered_count, 12);
        }
    }

    #[test]
    fn single_ue_makes_trackers_agree() {
        let cfg = ScenarioConfig {
            ues_per_beam: 1,
            ..small()
        };
        for seed in 0..50 {
            let r = run_drop(&cfg, seed).unwrap();
            let t = r.get(Mechanism::Trbt);
            assert_eq!(t, r.get(Mechanism::Mnbt));
            assert_eq!(t, r.get(Mechanism::Mtbt));
        }
    }

    #[test]
    fn drops_are_reproducible() {
        let cfg = small();
        assert_eq!(run_drop(&cfg, 77).unwrap(), run_drop(&cfg, 77).unwrap());
    }

    #[test]
    fn frequency_does_not_change_geometry() {
        let a = run_drop_detailed(&small(), 5).unwrap();
        let b = run_drop_detailed(
            &ScenarioConfig {
                carrier_freq: 60e9,
                ..small()
            },
            5,
        )
        .unwrap();
        assert_eq!(a.after, b.after);
        assert!(a.capacities.iter().zip(&b.capacities).all(|(x, y)| x > y));
    }

    #[test]
    fn empty_tracking_area_scores_zero() {
        // UEs sprint far outside a narrow tracking area
        let cfg = ScenarioConfig {
            ues_per_beam: 3,
            r_cell: 20.0,
            tracking_area_width: Some(10f64.to_radians()),
            mobility: MobilityParams {
                speed_min: 30.0,
                speed_max: 30.0,
                ..Default::default()
            },
            ..small()
        };
        let mut seen = false;
        for seed in 0..200 {
            let d = run_drop_detailed(&cfg, seed).unwrap();
            if d.result.n == 0 {
                seen = true;
                for o in &d.result.outcomes {
                    assert_eq!((o.throughput, o.handoff_prob, o.tr), (0.0, 1.0, 0.0));
                }
            }
        }
        assert!(seen);
    }

    #[test]
    fn aggregate_examples() {
        let cfg = small();
        let t = run_drop(&cfg, 1).unwrap();
        let a = aggregate(std::slice::from_ref(&t)).unwrap();
        for mech in Mechanism::ALL {
            assert_eq!(a.get(mech).mean_tr, t.get(mech).tr);
            assert_eq!(a.get(mech).ci_tr, 0.0);
        }

        let mut t2 = t.clone();
        let mut t4 = t.clone();
        t2.outcomes[0].tr = 2.0;
        t4.outcomes[0].tr = 4.0;
        let a = aggregate(&[t2, t4]).unwrap();
        assert_relative_eq!(a.get(Mechanism::Trbt).mean_tr, 3.0);

        let a = aggregate(&[t.clone(), t.clone(), t.clone()]).unwrap();
        assert_eq!(a.get(Mechanism::Mtbt).ci_throughput, 0.0);

        assert!(matches!(aggregate(&[]), Err(SimError::EmptyTrials)));
        let mut other = t.clone();
        other.m += 1;
        assert!(matches!(aggregate(&[t, other]), Err(SimError::MixedTrials)));
    }

    #[test]
    fn sweep_single_point_single_trial() {
        let cfg = ScenarioConfig {
            n_trials: 1,
            ues_per_beam: 1,
            ..Default::default()
        };
        let stats = run_sweep(&cfg, &Sweep::single(&cfg)).unwrap();
        assert_eq!(stats.len(), 1);
        let t = run_drop(&cfg, trial_seed(cfg.seed, 1, 0)).unwrap();
        for mech in Mechanism::ALL {
            assert_eq!(stats[0].get(mech).mean_tr, t.get(mech).tr);
            assert_eq!(stats[0].get(mech).mean_throughput, t.get(mech).throughput);
        }
    }

    #[test]
    fn sweep_is_deterministic_and_ordered() {
        let cfg = small();
        let sweep = Sweep {
            m_values: vec![2, 6],
            freqs: vec![28e9, 60e9],
            widths: vec![10f64.to_radians()],
        };
        let a = run_sweep(&cfg, &sweep).unwrap();
        assert_eq!(a, run_sweep(&cfg, &sweep).unwrap());
        let coords: Vec<_> = a.iter().map(|s| (s.freq_hz, s.m)).collect();
        assert_eq!(coords, vec![(28e9, 2), (28e9, 6), (60e9, 2), (60e9, 6)]);
    }

    #[test]
    fn normalization_changes_values_not_decisions() {
        for seed in 0..100 {
            let a = run_drop_detailed(&small(), seed).unwrap();
            let b = run_drop_detailed(
                &ScenarioConfig {
                    normalization: Normalization::TrackingArea,
                    ..small()
                },
                seed,
            )
            .unwrap();
            for (x, y) in a.decisions.iter().zip(&b.decisions) {
                assert_eq!(x.chosen.map(|c| c.start), y.chosen.map(|c| c.start));
                assert_eq!(x.covered_count, y.covered_count);
            }
        }
    }

    #[test]
    fn trial_seeds_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for m in 1..=30 {
            for t in 0..100 {
                assert!(seen.insert(trial_seed(9, m, t)));
            }
        }
    }
}
