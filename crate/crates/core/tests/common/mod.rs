//! Brute-force reference for window selection, independent of the
//! right-maximal scan in the library.

#![allow(dead_code)]

use beamtrack::geometry::{order_ues, OrderedUeRing, PolarPoint, Sector, UeId};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RefScore {
    Finite(f64),
    AllCovered,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefWindow {
    pub start: usize,
    pub end: usize,
    pub throughput: f64,
    pub handoff: f64,
    pub score: RefScore,
}

/// `a` strictly better than `b`, ignoring the start-index tie-break.
fn better(a: &RefWindow, b: &RefWindow) -> Option<bool> {
    match (a.score, b.score) {
        (RefScore::AllCovered, RefScore::Finite(_)) => Some(true),
        (RefScore::Finite(_), RefScore::AllCovered) => Some(false),
        (RefScore::AllCovered, RefScore::AllCovered) => {
            (a.throughput != b.throughput).then_some(a.throughput > b.throughput)
        }
        (RefScore::Finite(x), RefScore::Finite(y)) => (x != y).then_some(x > y),
    }
}

/// Every contiguous window whose gap sum fits the beamwidth, scored directly
/// from the handoff and throughput definitions.
pub fn all_feasible_windows(
    gaps: &[f64],
    beamwidth: f64,
    caps: &[f64],
    m: usize,
    total: f64,
) -> Vec<RefWindow> {
    let n = caps.len();
    let mut out = Vec::new();
    for a in 0..n {
        for c in a..n {
            let span: f64 = gaps[a..c].iter().sum();
            if span > beamwidth {
                continue;
            }
            let throughput: f64 = caps[a..=c].iter().sum();
            let count = c - a + 1;
            let handoff = if count >= m {
                0.0
            } else {
                (m - count) as f64 / m as f64
            };
            let score = if throughput == 0.0 {
                RefScore::Finite(0.0)
            } else if handoff == 0.0 {
                RefScore::AllCovered
            } else {
                RefScore::Finite(throughput / total / handoff)
            };
            out.push(RefWindow {
                start: a,
                end: c,
                throughput,
                handoff,
                score,
            });
        }
    }
    out
}

pub fn brute_force_best(windows: &[RefWindow]) -> RefWindow {
    let mut best = windows[0];
    for w in &windows[1..] {
        match better(w, &best) {
            Some(true) => best = *w,
            None if w.start < best.start => best = *w,
            _ => {}
        }
    }
    best
}

/// A random tracking instance: ring, beamwidth, capacities, prior population.
pub struct Instance {
    pub ring: OrderedUeRing,
    pub beamwidth: f64,
    pub caps: Vec<f64>,
    pub m: usize,
}

pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let n = rng.random_range(1..=20);
    let area = Sector::new(rng.random_range(0.0..std::f64::consts::TAU), 1.5).unwrap();
    let tied = rng.random_bool(0.3);
    let mut offset = 0.01;
    let mut ues = Vec::with_capacity(n);
    for i in 0..n {
        let p =
            PolarPoint::new(area.clockwise_edge() + offset, rng.random_range(5.0..200.0)).unwrap();
        ues.push((UeId(i as u32), p));
        // occasional coincident UEs
        if !rng.random_bool(0.1) {
            offset += rng.random_range(0.0..1.4 / n as f64);
        }
    }
    let ring = order_ues(&ues, &area).unwrap();
    let caps = (0..n)
        .map(|_| {
            if tied {
                rng.random_range(1..=3) as f64 * 1e9
            } else {
                rng.random_range(1e8..5e9)
            }
        })
        .collect();
    let m = rng.random_range(n.saturating_sub(2).max(1)..=n + 6);
    Instance {
        ring,
        beamwidth: rng.random_range(0.02..0.8),
        caps,
        m,
    }
}
