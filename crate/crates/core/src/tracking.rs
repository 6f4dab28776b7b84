//! Beam tracking decisions.
//!
//! After the UEs of a beam have moved, the beam may be re-pointed to any
//! contiguous run of angularly ordered UEs whose span fits its beamwidth.
//! Each run is scored by its normalized throughput divided by the fraction of
//! previously served UEs it would hand off (the TR score). Three baselines are
//! provided alongside the TR selector: no tracking, most UEs covered and most
//! throughput covered.

use std::cmp::Ordering;

use thiserror::Error;

use crate::geometry::{OrderedUeRing, PolarPoint, Sector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrackingError {
    #[error("cannot enumerate windows of an empty ring")]
    EmptyRing,
    #[error("no candidate windows to choose from")]
    NoCandidates,
    #[error("total throughput must be > 0")]
    ZeroTotalThroughput,
    #[error("previous UE population must be > 0")]
    ZeroPopulation,
    #[error("expected {expected} capacities, got {got}")]
    CapacityCountMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mechanism {
    /// Throughput and robustness guaranteed tracking (max TR).
    Trbt,
    /// Beam management without tracking.
    Wobt,
    /// Tracking toward the most UEs.
    Mnbt,
    /// Tracking toward the most throughput.
    Mtbt,
}

impl Mechanism {
    pub const ALL: [Mechanism; 4] = [Self::Trbt, Self::Wobt, Self::Mnbt, Self::Mtbt];

    pub fn label(self) -> &'static str {
        match self {
            Self::Trbt => "TRBT",
            Self::Wobt => "WoBT",
            Self::Mnbt => "MNBT",
            Self::Mtbt => "MTBT",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::str::FromStr for Mechanism {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|m| m.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown mechanism `{s}` (expected TRBT, WoBT, MNBT or MTBT)"))
    }
}

impl std::fmt::Display for Mechanism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// TR score of a window. Covering every previously served UE has zero handoff
/// probability, which ranks above any finite score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrScore {
    Finite(f64),
    AllCovered,
}

impl TrScore {
    pub fn is_all_covered(&self) -> bool {
        matches!(self, Self::AllCovered)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(*v),
            Self::AllCovered => None,
        }
    }
}

/// Total order on `(score, throughput)` used by every selector and by
/// cross-mechanism comparisons: all-covered beats finite, all-covered
/// windows compare by throughput, finite windows by score.
pub fn compare_scores(a: (TrScore, f64), b: (TrScore, f64)) -> Ordering {
    match (a.0, b.0) {
        (TrScore::AllCovered, TrScore::AllCovered) => a.1.total_cmp(&b.1),
        (TrScore::AllCovered, TrScore::Finite(_)) => Ordering::Greater,
        (TrScore::Finite(_), TrScore::AllCovered) => Ordering::Less,
        (TrScore::Finite(x), TrScore::Finite(y)) => x.total_cmp(&y),
    }
}

/// A contiguous window `start..=end` of ring positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateSet {
    pub start: usize,
    pub end: usize,
    pub covered_count: usize,
    /// Angle between the first and last UE of the window.
    pub span: f64,
    /// Absolute direction bisecting the window.
    pub center: f64,
    pub throughput: f64,
    pub handoff_prob: f64,
    pub tr: TrScore,
}

impl CandidateSet {
    fn score_key(&self) -> (TrScore, f64) {
        (self.tr, self.throughput)
    }
}

/// Lists every window that fits `beamwidth` and cannot grow counter-clockwise,
/// in ascending order of its first UE. Scores are left at zero.
pub fn enumerate_maximal_sets(
    ring: &OrderedUeRing,
    beamwidth: f64,
) -> Result<Vec<CandidateSet>, TrackingError> {
    let n = ring.len();
    if n == 0 {
        return Err(TrackingError::EmptyRing);
    }
    let gaps = ring.gaps();
    let mut out = Vec::with_capacity(n);
    for start in 0..n {
        let mut end = start;
        let mut span = 0.0;
        while end + 1 < n && span + gaps[end] <= beamwidth {
            span += gaps[end];
            end += 1;
        }
        out.push(CandidateSet {
            start,
            end,
            covered_count: end - start + 1,
            span,
            center: ring.bisector(start, end),
            throughput: 0.0,
            handoff_prob: 0.0,
            tr: TrScore::Finite(0.0),
        });
    }
    Ok(out)
}

fn handoff_and_score(
    covered: usize,
    throughput: f64,
    prior_population: usize,
    total_throughput: f64,
) -> Result<(f64, TrScore), TrackingError> {
    if prior_population == 0 {
        return Err(TrackingError::ZeroPopulation);
    }
    if !(total_throughput > 0.0 && total_throughput.is_finite()) {
        return Err(TrackingError::ZeroTotalThroughput);
    }
    let m = prior_population as f64;
    // UEs that drifted in from elsewhere may push coverage above m
    let p = prior_population.saturating_sub(covered) as f64 / m;
    let tr = if throughput == 0.0 {
        TrScore::Finite(0.0)
    } else if p == 0.0 {
        TrScore::AllCovered
    } else {
        TrScore::Finite(throughput / total_throughput / p)
    };
    Ok((p, tr))
}

/// Fills throughput, handoff probability and TR of `set`.
///
/// `capacities` is indexed by ring position; `prior_population` is the number
/// of UEs the beam served before they moved.
pub fn score_set(
    set: &CandidateSet,
    capacities: &[f64],
    prior_population: usize,
    total_throughput: f64,
) -> Result<CandidateSet, TrackingError> {
    if set.end >= capacities.len() {
        return Err(TrackingError::CapacityCountMismatch {
            expected: set.end + 1,
            got: capacities.len(),
        });
    }
    let throughput: f64 = capacities[set.start..=set.end].iter().sum();
    let (p, tr) = handoff_and_score(
        set.covered_count,
        throughput,
        prior_population,
        total_throughput,
    )?;
    Ok(CandidateSet {
        throughput,
        handoff_prob: p,
        tr,
        ..*set
    })
}

/// Enumerates and scores all candidate windows of `ring`.
pub fn scored_candidates(
    ring: &OrderedUeRing,
    beamwidth: f64,
    capacities: &[f64],
    prior_population: usize,
    total_throughput: f64,
) -> Result<Vec<CandidateSet>, TrackingError> {
    if capacities.len() != ring.len() {
        return Err(TrackingError::CapacityCountMismatch {
            expected: ring.len(),
            got: capacities.len(),
        });
    }
    enumerate_maximal_sets(ring, beamwidth)?
        .iter()
        .map(|c| score_set(c, capacities, prior_population, total_throughput))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackingDecision {
    pub mechanism: Mechanism,
    pub chosen: Option<CandidateSet>,
    pub new_direction: f64,
    pub throughput: f64,
    pub handoff_prob: f64,
    pub tr: TrScore,
    pub covered_count: usize,
}

impl TrackingDecision {
    fn from_candidate(mechanism: Mechanism, c: CandidateSet) -> Self {
        Self {
            mechanism,
            chosen: Some(c),
            new_direction: c.center,
            throughput: c.throughput,
            handoff_prob: c.handoff_prob,
            tr: c.tr,
            covered_count: c.covered_count,
        }
    }

    /// Outcome when no UE is left to track: the beam keeps its direction and
    /// every previously served UE is handed off.
    pub fn no_coverage(mechanism: Mechanism, direction: f64) -> Self {
        Self {
            mechanism,
            chosen: None,
            new_direction: direction,
            throughput: 0.0,
            handoff_prob: 1.0,
            tr: TrScore::Finite(0.0),
            covered_count: 0,
        }
    }

    pub fn score_key(&self) -> (TrScore, f64) {
        (self.tr, self.throughput)
    }
}

/// Picks the candidate maximizing `better`, keeping the smaller start index
/// on ties.
fn select_by(
    candidates: &[CandidateSet],
    mechanism: Mechanism,
    cmp: impl Fn(&CandidateSet, &CandidateSet) -> Ordering,
) -> Result<TrackingDecision, TrackingError> {
    let best = candidates
        .iter()
        .copied()
        .reduce(
            |best, c| match cmp(&c, &best).then(best.start.cmp(&c.start)) {
                Ordering::Greater => c,
                _ => best,
            },
        )
        .ok_or(TrackingError::NoCandidates)?;
    Ok(TrackingDecision::from_candidate(mechanism, best))
}

pub fn select_trbt(candidates: &[CandidateSet]) -> Result<TrackingDecision, TrackingError> {
    select_by(candidates, Mechanism::Trbt, |a, b| {
        compare_scores(a.score_key(), b.score_key())
    })
}

pub fn select_mnbt(candidates: &[CandidateSet]) -> Result<TrackingDecision, TrackingError> {
    select_by(candidates, Mechanism::Mnbt, |a, b| {
        a.covered_count
            .cmp(&b.covered_count)
            .then(a.throughput.total_cmp(&b.throughput))
    })
}

pub fn select_mtbt(candidates: &[CandidateSet]) -> Result<TrackingDecision, TrackingError> {
    select_by(candidates, Mechanism::Mtbt, |a, b| {
        a.throughput
            .total_cmp(&b.throughput)
            .then(b.handoff_prob.total_cmp(&a.handoff_prob))
    })
}

/// Keeps the beam where it was and scores whoever is still inside it.
pub fn evaluate_wobt(
    prev_direction: f64,
    beamwidth: f64,
    ues: &[(PolarPoint, f64)],
    prior_population: usize,
    total_throughput: f64,
) -> Result<TrackingDecision, TrackingError> {
    let sector = Sector::new(prev_direction, beamwidth.min(std::f64::consts::TAU))
        .expect("beamwidth validated by caller");
    // sum counter-clockwise, the same order windows use, so equal sets give
    // bit-identical throughput
    let mut inside: Vec<(f64, f64)> = ues
        .iter()
        .filter(|(p, _)| sector.contains(p))
        .map(|(p, c)| (sector.offset_from_edge(p.angle()), *c))
        .collect();
    inside.sort_by(|a, b| a.0.total_cmp(&b.0));
    let covered = inside.len();
    let throughput: f64 = inside.iter().map(|(_, c)| c).sum();
    let (p, tr) = handoff_and_score(covered, throughput, prior_population, total_throughput)?;
    Ok(TrackingDecision {
        mechanism: Mechanism::Wobt,
        chosen: None,
        new_direction: sector.center(),
        throughput,
        handoff_prob: p,
        tr,
        covered_count: covered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{order_ues, UeId};
    use approx::assert_relative_eq;

    fn ring_from_gaps_deg(gaps: &[f64]) -> OrderedUeRing {
        let area = Sector::new(0.0, 170f64.to_radians()).unwrap();
        let mut off = 1.0;
        let mut ues = vec![(UeId(0), off)];
        for (i, g) in gaps.iter().enumerate() {
            off += g;
            ues.push((UeId(i as u32 + 1), off));
        }
        let ues: Vec<_> = ues
            .into_iter()
            .map(|(id, o)| {
                let p = PolarPoint::new(area.clockwise_edge() + o.to_radians(), 50.0).unwrap();
                (id, p)
            })
            .collect();
        order_ues(&ues, &area).unwrap()
    }

    fn cand(start: usize, end: usize, t: f64, p: f64, tr: TrScore) -> CandidateSet {
        CandidateSet {
            start,
            end,
            covered_count: end - start + 1,
            span: 0.0,
            center: 0.0,
            throughput: t,
            handoff_prob: p,
            tr,
        }
    }

    #[test]
    fn enumerates_right_maximal_windows() {
        let ring = ring_from_gaps_deg(&[5.0, 8.0, 20.0, 3.0]);
        let sets = enumerate_maximal_sets(&ring, 15f64.to_radians()).unwrap();
        let windows: Vec<_> = sets.iter().map(|s| (s.start, s.end)).collect();
        assert_eq!(windows, vec![(0, 2), (1, 2), (2, 2), (3, 4), (4, 4)]);
        assert_relative_eq!(sets[0].span, 13f64.to_radians(), max_relative = 1e-9);
        assert_relative_eq!(sets[3].span, 3f64.to_radians(), max_relative = 1e-9);
        assert!(sets.iter().all(|s| s.span <= 15f64.to_radians()));
    }

    #[test]
    fn singleton_and_colocated() {
        let ring = ring_from_gaps_deg(&[]);
        let sets = enumerate_maximal_sets(&ring, 0.1).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].span, 0.0);

        let ring = ring_from_gaps_deg(&[0.0; 6]);
        let sets = enumerate_maximal_sets(&ring, 0.1).unwrap();
        assert_eq!((sets[0].start, sets[0].end), (0, 6));
        assert_eq!(sets[0].covered_count, 7);
    }

    #[test]
    fn window_center_bisects_extremes() {
        let ring = ring_from_gaps_deg(&[4.0, 6.0]);
        let sets = enumerate_maximal_sets(&ring, 1.0).unwrap();
        let expected = ring.bisector(0, 2);
        assert_relative_eq!(sets[0].center, expected);
        let mid = ring.area().clockwise_edge() + (1.0f64 + 5.0).to_radians();
        assert!(crate::geometry::angular_distance(sets[0].center, mid) < 1e-12);
    }

    #[test]
    fn score_examples() {
        let base = cand(0, 3, 0.0, 0.0, TrScore::Finite(0.0));
        let s = score_set(&base, &[0.2, 0.2, 0.2, 0.2], 10, 1.0).unwrap();
        assert_relative_eq!(s.throughput, 0.8);
        assert_relative_eq!(s.handoff_prob, 0.6);
        assert_relative_eq!(s.tr.finite().unwrap(), 4.0 / 3.0, max_relative = 1e-12);

        let full = cand(0, 9, 0.0, 0.0, TrScore::Finite(0.0));
        let s = score_set(&full, &[1.0; 10], 10, 10.0).unwrap();
        assert_eq!(s.handoff_prob, 0.0);
        assert_eq!(s.tr, TrScore::AllCovered);

        let two = cand(0, 1, 0.0, 0.0, TrScore::Finite(0.0));
        let s = score_set(&two, &[0.25, 0.25], 5, 1.0).unwrap();
        assert_relative_eq!(s.handoff_prob, 0.6);
        assert_relative_eq!(s.tr.finite().unwrap(), 0.5 / 0.6, max_relative = 1e-12);
    }

    #[test]
    fn score_clamps_incoming_ues() {
        let s = score_set(
            &cand(0, 4, 0.0, 0.0, TrScore::Finite(0.0)),
            &[1.0; 5],
            3,
            5.0,
        )
        .unwrap();
        assert_eq!(s.handoff_prob, 0.0);
        assert!(s.tr.is_all_covered());
    }

    #[test]
    fn score_errors() {
        let c = cand(0, 0, 0.0, 0.0, TrScore::Finite(0.0));
        assert_eq!(
            score_set(&c, &[1.0], 3, 0.0),
            Err(TrackingError::ZeroTotalThroughput)
        );
        assert_eq!(
            score_set(&c, &[1.0], 0, 1.0),
            Err(TrackingError::ZeroPopulation)
        );
        assert!(matches!(
            score_set(&cand(0, 2, 0.0, 0.0, TrScore::Finite(0.0)), &[1.0], 3, 1.0),
            Err(TrackingError::CapacityCountMismatch { .. })
        ));
    }

    #[test]
    fn trbt_argmax_and_ties() {
        let cs = [
            cand(0, 0, 1.0, 0.5, TrScore::Finite(1.2)),
            cand(1, 1, 1.0, 0.5, TrScore::Finite(3.4)),
            cand(2, 2, 1.0, 0.5, TrScore::Finite(0.9)),
        ];
        assert_eq!(select_trbt(&cs).unwrap().chosen.unwrap().start, 1);

        let cs = [
            cand(0, 0, 1.0, 0.5, TrScore::Finite(8.0)),
            cand(1, 3, 2.0, 0.0, TrScore::AllCovered),
            cand(2, 4, 1.5, 0.0, TrScore::AllCovered),
        ];
        assert_eq!(select_trbt(&cs).unwrap().chosen.unwrap().start, 1);

        let cs = [
            cand(3, 3, 1.0, 0.5, TrScore::Finite(2.0)),
            cand(0, 0, 1.0, 0.5, TrScore::Finite(2.0)),
        ];
        assert_eq!(select_trbt(&cs).unwrap().chosen.unwrap().start, 0);
        assert_eq!(select_trbt(&[]), Err(TrackingError::NoCandidates));
    }

    #[test]
    fn mnbt_examples() {
        let cs = [
            cand(0, 2, 20.0, 0.7, TrScore::Finite(0.0)),
            cand(1, 5, 10.0, 0.5, TrScore::Finite(0.0)),
            cand(2, 6, 12.0, 0.5, TrScore::Finite(0.0)),
        ];
        let d = select_mnbt(&cs).unwrap();
        assert_eq!(d.chosen.unwrap().start, 2);
        assert_eq!(d.mechanism, Mechanism::Mnbt);
        assert_eq!(select_mnbt(&cs[..1]).unwrap().chosen.unwrap().start, 0);
        let cs = [
            cand(0, 1, 1.0, 0.5, TrScore::Finite(0.0)),
            cand(1, 4, 1.0, 0.5, TrScore::Finite(0.0)),
        ];
        assert_eq!(select_mnbt(&cs).unwrap().covered_count, 4);
        assert_eq!(select_mnbt(&[]), Err(TrackingError::NoCandidates));
    }

    #[test]
    fn mtbt_examples() {
        let cs = [
            cand(0, 0, 1e9, 0.5, TrScore::Finite(0.0)),
            cand(1, 1, 3e9, 0.5, TrScore::Finite(0.0)),
            cand(2, 2, 2e9, 0.5, TrScore::Finite(0.0)),
        ];
        assert_eq!(select_mtbt(&cs).unwrap().chosen.unwrap().start, 1);
        let cs = [
            cand(0, 0, 1e9, 0.4, TrScore::Finite(0.0)),
            cand(1, 1, 1e9, 0.2, TrScore::Finite(0.0)),
        ];
        assert_eq!(select_mtbt(&cs).unwrap().chosen.unwrap().start, 1);
        assert_eq!(select_mtbt(&cs[..1]).unwrap().chosen.unwrap().start, 0);
        assert_eq!(select_mtbt(&[]), Err(TrackingError::NoCandidates));
    }

    #[test]
    fn wobt_examples() {
        let bw = 10f64.to_radians();
        let inside = PolarPoint::new(0.01, 50.0).unwrap();
        let outside = PolarPoint::new(1.0, 50.0).unwrap();

        let d = evaluate_wobt(0.0, bw, &[(outside, 5.0), (outside, 5.0)], 2, 10.0).unwrap();
        assert_eq!((d.throughput, d.handoff_prob), (0.0, 1.0));
        assert_eq!(d.tr, TrScore::Finite(0.0));
        assert_eq!(d.new_direction, 0.0);

        let d = evaluate_wobt(0.0, bw, &[(inside, 5.0), (inside, 5.0)], 2, 10.0).unwrap();
        assert!(d.tr.is_all_covered());

        let ues = [
            (inside, 1.0),
            (inside, 1.0),
            (inside, 1.0),
            (outside, 1.0),
            (outside, 1.0),
            (outside, 1.0),
        ];
        let d = evaluate_wobt(0.0, bw, &ues, 6, 6.0).unwrap();
        assert_relative_eq!(d.handoff_prob, 0.5);
        assert_relative_eq!(d.tr.finite().unwrap(), 1.0);
    }

    #[test]
    fn compare_scores_orders_sentinel_first() {
        use Ordering::*;
        assert_eq!(
            compare_scores((TrScore::AllCovered, 1.0), (TrScore::Finite(1e9), 9.0)),
            Greater
        );
        assert_eq!(
            compare_scores((TrScore::AllCovered, 1.0), (TrScore::AllCovered, 2.0)),
            Less
        );
        assert_eq!(
            compare_scores((TrScore::Finite(2.0), 0.0), (TrScore::Finite(1.0), 5.0)),
            Greater
        );
    }

    #[test]
    fn mechanism_labels_parse() {
        for m in Mechanism::ALL {
            assert_eq!(m.label().to_lowercase().parse::<Mechanism>().unwrap(), m);
        }
        assert!("foo".parse::<Mechanism>().is_err());
    }
}
