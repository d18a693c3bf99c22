//! Small-scale gain models.
//!
//! Zero-forcing MU-MIMO leaves the served user an equivalent gain
//! Gamma(N_T − M + 1, 1) and every interfering BS a gain Gamma(M, 1).
//! Satellite links use Nakagami-m fading, whose power is Gamma(m, 1/m).

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::gamma::upper_incomplete_gamma_reg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MimoConfig {
    antennas: u32,
    users: u32,
}

impl MimoConfig {
    pub fn new(antennas: u32, users: u32) -> Result<Self> {
        if users == 0 {
            return Err(Error::domain("M", 0.0, "at least one user per cell"));
        }
        if users > antennas {
            return Err(Error::domain(
                "M",
                users as f64,
                "zero-forcing needs M <= N_T",
            ));
        }
        Ok(MimoConfig { antennas, users })
    }

    pub fn antennas(&self) -> u32 {
        self.antennas
    }

    pub fn users(&self) -> u32 {
        self.users
    }

    /// m_o = N_T − M + 1.
    pub fn serving_shape(&self) -> u32 {
        self.antennas - self.users + 1
    }

    pub fn interferer_shape(&self) -> u32 {
        self.users
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SatelliteFading {
    m: f64,
}

impl SatelliteFading {
    pub fn new(m: f64) -> Result<Self> {
        if !(m >= 0.5 && m.is_finite()) {
            return Err(Error::domain("nakagami_m", m, "must be at least 0.5"));
        }
        Ok(SatelliteFading { m })
    }

    pub fn m(&self) -> f64 {
        self.m
    }
}

/// P[g̃_o ≥ x] = e^{−x} Σ_{q<m_o} x^q/q!.
pub fn serving_gain_ccdf_terrestrial(mimo: &MimoConfig, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let mut term = (-x).exp();
    let mut sum = term;
    for q in 1..mimo.serving_shape() {
        term *= x / q as f64;
        sum += term;
    }
    sum.min(1.0)
}

/// P[Ω ≥ x] = Γ(m, m x)/Γ(m).
pub fn serving_gain_ccdf_satellite(fading: &SatelliteFading, x: f64) -> Result<f64> {
    upper_incomplete_gamma_reg(fading.m, fading.m * x.max(0.0))
}

/// One Gamma(shape, scale) variate (Marsaglia–Tsang).
pub fn sample_gamma<R: Rng + ?Sized>(shape: f64, scale: f64, rng: &mut R) -> Result<f64> {
    Ok(gamma_distribution(shape, scale)?.sample(rng))
}

pub(crate) fn gamma_distribution(shape: f64, scale: f64) -> Result<Gamma<f64>> {
    if !(shape > 0.0 && shape.is_finite()) {
        return Err(Error::domain("shape", shape, "must be positive"));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::domain("scale", scale, "must be positive"));
    }
    Gamma::new(shape, scale).map_err(|_| Error::domain("shape", shape, "rejected by sampler"))
}
