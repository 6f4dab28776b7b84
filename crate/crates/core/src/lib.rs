//! Single-cell mmWave downlink simulator and beam-tracking decision engine.
//!
//! A base station at the origin serves UEs through non-overlapping sectored
//! beams. When the UEs of a beam move, the beam is re-pointed to the window of
//! UEs that best trades covered throughput against the share of UEs that must
//! be handed off to other beams. The [`sim`] module compares this policy with
//! three baselines over Monte Carlo drops.

// `!(x > 0.0)` is used on purpose throughout input validation so that NaN is
// rejected along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod geometry;
pub mod mobility;
pub mod radio;
pub mod sim;
pub mod tracking;

pub use geometry::{PolarPoint, Sector, UeId};
pub use radio::{AntennaPattern, ChannelParams};
pub use sim::{AggregateStats, ScenarioConfig, Sweep, TrialResult};
pub use tracking::{CandidateSet, Mechanism, TrScore, TrackingDecision};
