//! Polar geometry of a single cell with the base station at the origin.
//!
//! Angles are radians everywhere in this module. Positions are stored as
//! `(angle, radius)` with the angle normalized to `[0, 2π)`.

use std::f64::consts::TAU;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("radius must be finite and > 0, got {0}")]
    InvalidRadius(f64),
    #[error("angle must be finite, got {0}")]
    InvalidAngle(f64),
    #[error("sector width must be in (0, 2π], got {0}")]
    InvalidWidth(f64),
    #[error("no UEs to order")]
    EmptyInput,
    #[error("UE {0} lies outside the tracking area")]
    OutOfArea(UeId),
    #[error("tracking area must be narrower than a full turn")]
    FullTurnArea,
}

/// Wraps any finite angle into `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Minimal absolute separation between two directions, in `[0, π]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = normalize_angle(a - b);
    d.min(TAU - d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UeId(pub u32);

impl std::fmt::Display for UeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UE{}", self.0)
    }
}

/// A position relative to the base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    angle: f64,
    radius: f64,
}

impl PolarPoint {
    pub fn new(angle: f64, radius: f64) -> Result<Self, GeometryError> {
        if !angle.is_finite() {
            return Err(GeometryError::InvalidAngle(angle));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(GeometryError::InvalidRadius(radius));
        }
        Ok(Self {
            angle: normalize_angle(angle),
            radius,
        })
    }

    pub fn from_cartesian(x: f64, y: f64) -> Result<Self, GeometryError> {
        Self::new(y.atan2(x), x.hypot(y))
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn to_cartesian(&self) -> (f64, f64) {
        let (s, c) = self.angle.sin_cos();
        (self.radius * c, self.radius * s)
    }
}

/// An angular sector around `center`. Containment is boundary-inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    center: f64,
    width: f64,
}

impl Sector {
    pub fn new(center: f64, width: f64) -> Result<Self, GeometryError> {
        if !center.is_finite() {
            return Err(GeometryError::InvalidAngle(center));
        }
        if !(width > 0.0 && width <= TAU) {
            return Err(GeometryError::InvalidWidth(width));
        }
        Ok(Self {
            center: normalize_angle(center),
            width,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn contains_angle(&self, angle: f64) -> bool {
        angular_distance(angle, self.center) <= self.width / 2.0
    }

    pub fn contains(&self, p: &PolarPoint) -> bool {
        self.contains_angle(p.angle)
    }

    /// Strict membership, used for tracking areas whose edges belong to the
    /// neighbouring beams.
    pub fn contains_interior(&self, p: &PolarPoint) -> bool {
        angular_distance(p.angle, self.center) < self.width / 2.0
    }

    pub fn clockwise_edge(&self) -> f64 {
        normalize_angle(self.center - self.width / 2.0)
    }

    /// Counter-clockwise angle from the clockwise edge to `angle`.
    pub fn offset_from_edge(&self, angle: f64) -> f64 {
        normalize_angle(angle - self.clockwise_edge())
    }
}

pub fn sector_contains(s: &Sector, p: &PolarPoint) -> bool {
    s.contains(p)
}

/// UEs of a tracking area numbered counter-clockwise from its clockwise edge,
/// together with the angular gaps between neighbours.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedUeRing {
    area: Sector,
    ues: Vec<(UeId, PolarPoint)>,
    offsets: Vec<f64>,
    gaps: Vec<f64>,
}

impl OrderedUeRing {
    pub fn area(&self) -> &Sector {
        &self.area
    }

    pub fn ues(&self) -> &[(UeId, PolarPoint)] {
        &self.ues
    }

    /// Offset of each UE from the area's clockwise edge.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.ues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ues.is_empty()
    }

    /// Absolute direction halfway between ring positions `first` and `last`.
    pub fn bisector(&self, first: usize, last: usize) -> f64 {
        let mid = 0.5 * (self.offsets[first] + self.offsets[last]);
        normalize_angle(self.area.clockwise_edge() + mid)
    }
}

pub fn order_ues(
    ues: &[(UeId, PolarPoint)],
    area: &Sector,
) -> Result<OrderedUeRing, GeometryError> {
    if ues.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    if area.width >= TAU {
        return Err(GeometryError::FullTurnArea);
    }
    if let Some((id, _)) = ues.iter().find(|(_, p)| !area.contains_interior(p)) {
        return Err(GeometryError::OutOfArea(*id));
    }

    let mut keyed: Vec<(f64, UeId, PolarPoint)> = ues
        .iter()
        .map(|&(id, p)| (area.offset_from_edge(p.angle), id, p))
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let offsets: Vec<f64> = keyed.iter().map(|k| k.0).collect();
    let gaps = offsets.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(OrderedUeRing {
        area: *area,
        ues: keyed.into_iter().map(|(_, id, p)| (id, p)).collect(),
        offsets,
        gaps,
    })
}

/// Draws a point uniformly over the disk of radius `r_cell`.
pub fn uniform_cell_point<R: Rng + ?Sized>(rng: &mut R, r_cell: f64) -> PolarPoint {
    let angle = rng.random_range(0.0..TAU);
    // 1 - u lies in (0, 1], keeping the radius strictly positive
    let u: f64 = 1.0 - rng.random::<f64>();
    PolarPoint {
        angle,
        radius: r_cell * u.sqrt(),
    }
}

/// Draws a point uniformly over the annular sector `min_radius..=r_cell`
/// inside `sector`.
pub fn uniform_sector_point<R: Rng + ?Sized>(
    rng: &mut R,
    sector: &Sector,
    min_radius: f64,
    r_cell: f64,
) -> PolarPoint {
    let offset = rng.random_range(-0.5..=0.5) * sector.width;
    let u: f64 = rng.random();
    let r2 = min_radius * min_radius + u * (r_cell * r_cell - min_radius * min_radius);
    PolarPoint {
        angle: normalize_angle(sector.center + offset),
        radius: r2.sqrt().clamp(min_radius, r_cell),
    }
}
