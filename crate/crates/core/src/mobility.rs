//! UE movement between tracking epochs.

use std::f64::consts::TAU;

use rand::Rng;

use crate::geometry::PolarPoint;

/// UEs never get closer to the base station than this, in meters.
pub const MIN_RADIUS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MobilityModel {
    /// Uniform heading, uniform speed, one straight leg per epoch.
    #[default]
    RandomDirection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobilityParams {
    /// m/s
    pub speed_min: f64,
    /// m/s
    pub speed_max: f64,
    /// s
    pub step_duration: f64,
    pub model: MobilityModel,
}

impl Default for MobilityParams {
    fn default() -> Self {
        Self {
            speed_min: 1.0,
            speed_max: 3.0,
            step_duration: 1.0,
            model: MobilityModel::RandomDirection,
        }
    }
}

impl MobilityParams {
    pub fn validate(&self) -> Result<(), &'static str> {
        if !(self.speed_min >= 0.0 && self.speed_min <= self.speed_max) {
            return Err("speeds must satisfy 0 <= speed_min <= speed_max");
        }
        if !(self.step_duration > 0.0) {
            return Err("step duration must be > 0");
        }
        Ok(())
    }

    pub fn max_displacement(&self) -> f64 {
        self.speed_max * self.step_duration
    }
}

/// Moves `ue` for one epoch inside a cell of radius `r_cell`. Positions that
/// would leave the cell are reflected back off its edge.
pub fn step<R: Rng + ?Sized>(
    ue: &PolarPoint,
    params: &MobilityParams,
    r_cell: f64,
    rng: &mut R,
) -> PolarPoint {
    match params.model {
        MobilityModel::RandomDirection => random_direction_step(ue, params, r_cell, rng),
    }
}

fn random_direction_step<R: Rng + ?Sized>(
    ue: &PolarPoint,
    params: &MobilityParams,
    r_cell: f64,
    rng: &mut R,
) -> PolarPoint {
    let heading = rng.random_range(0.0..TAU);
    let speed = if params.speed_max > params.speed_min {
        rng.random_range(params.speed_min..=params.speed_max)
    } else {
        let _: f64 = rng.random();
        params.speed_min
    };
    let dist = speed * params.step_duration;
    if dist == 0.0 {
        return *ue;
    }
    let (x, y) = ue.to_cartesian();
    let (s, c) = heading.sin_cos();
    let (nx, ny) = (x + dist * c, y + dist * s);
    let mut r = nx.hypot(ny);
    if r > r_cell {
        r = 2.0 * r_cell - r;
    }
    let r = r.clamp(MIN_RADIUS.min(r_cell), r_cell);
    PolarPoint::new(ny.atan2(nx), r).expect("radius clamped positive")
}
