//! Physical-layer model: ideal sectored antennas, log-distance path gain with
//! log-normal shadowing, inter-beam interference and Shannon capacity.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::geometry::{angular_distance, PolarPoint};

/// Propagation speed used to derive the carrier wavelength.
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadioError {
    #[error("distance must be > 0, got {0}")]
    NonPositiveDistance(f64),
    #[error("SINR must be >= 0, got {0}")]
    NegativeSinr(f64),
    #[error("beamwidth must be in (0, 2π], got {0}")]
    InvalidBeamwidth(f64),
    #[error("side-lobe gain must be in [0, 1), got {0}")]
    InvalidSideLobe(f64),
    #[error("invalid channel parameter: {0}")]
    InvalidChannel(&'static str),
    #[error("expected {expected} shadowing samples, got {got}")]
    ShadowCountMismatch { expected: usize, got: usize },
    #[error("beam {0} is both serving and interfering")]
    ServingInInterferers(u32),
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Ideal sector pattern: constant main lobe over the beamwidth, constant
/// side lobe elsewhere, total radiated power equal to an isotropic antenna.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern {
    beamwidth: f64,
    side_lobe: f64,
}

impl AntennaPattern {
    pub fn new(beamwidth: f64, side_lobe: f64) -> Result<Self, RadioError> {
        if !(beamwidth > 0.0 && beamwidth <= TAU) {
            return Err(RadioError::InvalidBeamwidth(beamwidth));
        }
        if !(0.0..1.0).contains(&side_lobe) {
            return Err(RadioError::InvalidSideLobe(side_lobe));
        }
        Ok(Self {
            beamwidth,
            side_lobe,
        })
    }

    pub fn omni() -> Self {
        Self {
            beamwidth: TAU,
            side_lobe: 0.0,
        }
    }

    pub fn beamwidth(&self) -> f64 {
        self.beamwidth
    }

    pub fn side_lobe(&self) -> f64 {
        self.side_lobe
    }

    pub fn main_lobe_gain(&self) -> f64 {
        (TAU - (TAU - self.beamwidth) * self.side_lobe) / self.beamwidth
    }

    /// Gain toward a direction `offset` radians away from boresight.
    pub fn gain(&self, offset: f64) -> f64 {
        if angular_distance(offset, 0.0) <= self.beamwidth / 2.0 {
            self.main_lobe_gain()
        } else {
            self.side_lobe
        }
    }
}

pub fn directivity_gain(pattern: &AntennaPattern, offset: f64) -> f64 {
    pattern.gain(offset)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Hz
    pub carrier_freq: f64,
    /// Hz
    pub bandwidth: f64,
    pub pathloss_exp: f64,
    /// dB
    pub shadowing_sigma: f64,
    /// dBm/Hz
    pub noise_density: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            carrier_freq: 28e9,
            bandwidth: 500e6,
            pathloss_exp: 2.5,
            shadowing_sigma: 12.0,
            noise_density: -174.0,
        }
    }
}

impl ChannelParams {
    pub fn validate(&self) -> Result<(), RadioError> {
        if !(self.carrier_freq > 0.0) {
            return Err(RadioError::InvalidChannel("carrier frequency must be > 0"));
        }
        if !(self.bandwidth > 0.0) {
            return Err(RadioError::InvalidChannel("bandwidth must be > 0"));
        }
        if !(self.pathloss_exp > 0.0) {
            return Err(RadioError::InvalidChannel("path-loss exponent must be > 0"));
        }
        if !(self.shadowing_sigma >= 0.0) {
            return Err(RadioError::InvalidChannel("shadowing sigma must be >= 0"));
        }
        if !self.noise_density.is_finite() {
            return Err(RadioError::InvalidChannel("noise density must be finite"));
        }
        Ok(())
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq
    }

    /// Thermal noise over the full bandwidth, in watts.
    pub fn noise_power(&self) -> f64 {
        dbm_to_watts(self.noise_density) * self.bandwidth
    }

    /// One zero-mean log-normal shadowing draw in dB.
    pub fn sample_shadow_db<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let z: f64 = StandardNormal.sample(rng);
        self.shadowing_sigma * z
    }
}

pub fn path_gain_db(params: &ChannelParams, d: f64) -> Result<f64, RadioError> {
    if !(d > 0.0) {
        return Err(RadioError::NonPositiveDistance(d));
    }
    Ok(10.0 * params.pathloss_exp * (params.wavelength() / (4.0 * PI * d)).log10())
}

pub fn channel_gain(params: &ChannelParams, d: f64, shadow_db: f64) -> Result<f64, RadioError> {
    Ok(db_to_linear(path_gain_db(params, d)? + shadow_db))
}

pub fn capacity(params: &ChannelParams, sinr: f64) -> Result<f64, RadioError> {
    if !(sinr >= 0.0) {
        return Err(RadioError::NegativeSinr(sinr));
    }
    Ok(params.bandwidth * (1.0 + sinr).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeamId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamConfig {
    pub id: BeamId,
    pub direction: f64,
    pub pattern: AntennaPattern,
    /// dBm
    pub tx_power: f64,
}

impl BeamConfig {
    /// Received power at `ue` in watts for a given receive gain and shadowing.
    fn received_power(
        &self,
        ue: &PolarPoint,
        rx_gain: f64,
        params: &ChannelParams,
        shadow_db: f64,
    ) -> Result<f64, RadioError> {
        let g_tx = self.pattern.gain(ue.angle() - self.direction);
        let g_ch = channel_gain(params, ue.radius(), shadow_db)?;
        Ok(dbm_to_watts(self.tx_power) * g_tx * g_ch * rx_gain)
    }
}

/// Gains and rates of one serving link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub channel_gain: f64,
    pub sinr: f64,
    pub capacity: f64,
}

impl LinkBudget {
    pub fn evaluate(
        serving: &BeamConfig,
        ue: &PolarPoint,
        rx_pattern: &AntennaPattern,
        interferers: &[BeamConfig],
        params: &ChannelParams,
        shadows_db: &[f64],
    ) -> Result<Self, RadioError> {
        let sinr = sinr(serving, ue, rx_pattern, interferers, params, shadows_db)?;
        Ok(Self {
            tx_gain: serving.pattern.gain(ue.angle() - serving.direction),
            rx_gain: rx_pattern.gain(0.0),
            channel_gain: channel_gain(params, ue.radius(), shadows_db[0])?,
            sinr,
            capacity: capacity(params, sinr)?,
        })
    }
}

/// Downlink SINR of `ue` served by `serving`.
///
/// `shadows_db[0]` is the serving link's shadowing and `shadows_db[k + 1]`
/// belongs to `interferers[k]`. The UE receive beam points at the base
/// station, so every path (serving or interfering) arrives on its main lobe.
pub fn sinr(
    serving: &BeamConfig,
    ue: &PolarPoint,
    rx_pattern: &AntennaPattern,
    interferers: &[BeamConfig],
    params: &ChannelParams,
    shadows_db: &[f64],
) -> Result<f64, RadioError> {
    if shadows_db.len() != interferers.len() + 1 {
        return Err(RadioError::ShadowCountMismatch {
            expected: interferers.len() + 1,
            got: shadows_db.len(),
        });
    }
    if let Some(b) = interferers.iter().find(|b| b.id == serving.id) {
        return Err(RadioError::ServingInInterferers(b.id.0));
    }
    let rx_gain = rx_pattern.gain(0.0);
    let signal = serving.received_power(ue, rx_gain, params, shadows_db[0])?;
    let mut interference = 0.0;
    for (beam, shadow) in interferers.iter().zip(&shadows_db[1..]) {
        interference += beam.received_power(ue, rx_gain, params, *shadow)?;
    }
    Ok(signal / (interference + params.noise_power()))
}
