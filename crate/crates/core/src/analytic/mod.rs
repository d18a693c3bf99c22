//! Closed-form performance of the hybrid network: association probabilities,
//! serving distributions, conditional and total coverage, and average rate.
//!
//! [`HybridModel`] caches the quantities shared by every formula (A_S, the
//! terrestrial support breakpoints, the free-space constant). The free
//! functions build a model per call and are convenient for one-off queries.

mod coverage;
mod interference;
mod serving;

use std::cell::{Cell, RefCell};
use std::f64::consts::PI;

use serde::Serialize;

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::geometry::{boundary_distance, free_space_constant};
use crate::numerics::TruncatedSeries;

/// Probabilities may leave [0, 1] by this much through rounding before the
/// result is treated as a numerical failure.
pub const PROBABILITY_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageBreakdown {
    pub a_t: Estimate,
    pub a_s: Estimate,
    pub p_cov_t: Estimate,
    pub p_cov_s: Estimate,
    pub p_tot: Estimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateBreakdown {
    pub a_t: Estimate,
    pub a_s: Estimate,
    /// Conditional rates in bit/s.
    pub r_t: Estimate,
    pub r_s: Estimate,
    pub r_tot: Estimate,
}

#[derive(Debug, Clone)]
pub struct HybridModel {
    cfg: SystemConfig,
    /// l_o = (c/(4π f_S))².
    lo: f64,
    /// P_T m_o / (P_S G_{S,o} l_o).
    power_ratio: f64,
    /// E_T(h_S) and E_T(√(R_e² + (R_e+h_S)²)).
    breakpoints: [f64; 2],
    a_s: Estimate,
}

impl HybridModel {
    pub fn new(cfg: &SystemConfig) -> Result<Self> {
        cfg.validate()?;
        let lo = free_space_constant(cfg.satellite_carrier);
        let power_ratio = cfg.terrestrial_power * cfg.mimo.serving_shape() as f64
            / (cfg.satellite_power * cfg.main_lobe_gain * lo);
        let g = &cfg.geometry;
        let far = (g.earth_radius().powi(2) + (g.earth_radius() + g.altitude()).powi(2)).sqrt();
        let breakpoints = [
            boundary_distance(cfg, g.altitude()),
            boundary_distance(cfg, far),
        ];
        let mut model = HybridModel {
            cfg: cfg.clone(),
            lo,
            power_ratio,
            breakpoints,
            a_s: Estimate::exact(0.0),
        };
        model.a_s = model.compute_association_satellite()?;
        Ok(model)
    }

    pub fn config(&self) -> &SystemConfig {
        &self.cfg
    }

    pub fn association_satellite(&self) -> Estimate {
        self.a_s
    }

    pub fn association_terrestrial(&self) -> Estimate {
        Estimate {
            value: 1.0 - self.a_s.value,
            ..self.a_s
        }
    }

    /// The two breakpoints of the terrestrial serving-distance law; the
    /// second is the end of its support.
    pub fn terrestrial_breakpoints(&self) -> [f64; 2] {
        self.breakpoints
    }

    /// r² at which the nearest BS and a satellite at angle φ have equal mean
    /// power: (P_T m_o d²(φ) / (P_S G_{S,o} l_o))^{2/η}.
    fn balance_distance_sq(&self, phi: f64) -> f64 {
        let d2 = self.cfg.geometry.slant_distance_sq_unchecked(phi);
        (self.power_ratio * d2).powf(2.0 / self.cfg.path_loss_exponent)
    }

    /// P[no BS closer than the balance distance] · f_φ(φ).
    fn satellite_preference_density(&self, phi: f64) -> f64 {
        let void = (-PI * self.cfg.bs_density * self.balance_distance_sq(phi)).exp();
        void * self.cfg.geometry.contact_angle_pdf_unchecked(phi)
    }

    fn compute_association_satellite(&self) -> Result<Estimate> {
        if self.cfg.geometry.satellite_count() == 0 {
            return Ok(Estimate::exact(0.0));
        }
        crate::numerics::integrate(
            |phi| self.satellite_preference_density(phi),
            0.0,
            self.cfg.geometry.phi_max(),
            &self.cfg.quadrature,
        )
    }

    /// Taylor series of the interference Laplace transform L_{I_T} at
    /// s0 + scale·u for a serving distance x, in powers of u, of order m_o − 1.
    pub fn laplace_interference_terrestrial_scaled(
        &self,
        s0: f64,
        x: f64,
        scale: f64,
    ) -> Result<TruncatedSeries> {
        interference::laplace_series(self, s0, x, scale)
    }
}

/// Bookkeeping for integrals nested inside an outer integrand, whose
/// closures can only return `f64`.
pub(crate) struct Nested {
    failure: RefCell<Option<Error>>,
    worst_rel: Cell<f64>,
}

impl Nested {
    pub(crate) fn new() -> Self {
        Nested {
            failure: RefCell::new(None),
            worst_rel: Cell::new(0.0),
        }
    }

    /// Unwraps an inner result; failures turn into NaN, which aborts the
    /// outer quadrature, and are reported by [`Nested::finish`].
    pub(crate) fn take(&self, inner: Result<Estimate>) -> f64 {
        match inner {
            Ok(e) => {
                if e.value.abs() > 1e-10 {
                    self.worst_rel
                        .set(self.worst_rel.get().max(e.half_width / e.value.abs()));
                }
                e.value
            }
            Err(err) => {
                self.failure.borrow_mut().get_or_insert(err);
                f64::NAN
            }
        }
    }

    pub(crate) fn take_value(&self, inner: Result<f64>) -> f64 {
        self.take(inner.map(Estimate::exact))
    }

    pub(crate) fn finish(self, outer: Result<Estimate>) -> Result<Estimate> {
        if let Some(err) = self.failure.into_inner() {
            return Err(err);
        }
        let o = outer?;
        Ok(Estimate::quadrature(
            o.value,
            o.half_width + self.worst_rel.get() * o.value.abs(),
            o.n,
        ))
    }
}

/// Clamps a probability that rounding pushed slightly outside [0, 1].
pub(crate) fn checked_probability(what: &'static str, e: Estimate) -> Result<Estimate> {
    if e.value < -PROBABILITY_SLACK || e.value > 1.0 + PROBABILITY_SLACK || !e.value.is_finite() {
        return Err(Error::ProbabilityOutOfRange {
            what,
            value: e.value,
        });
    }
    Ok(Estimate {
        value: e.value.clamp(0.0, 1.0),
        ..e
    })
}

pub fn association_prob_satellite(cfg: &SystemConfig) -> Result<Estimate> {
    Ok(HybridModel::new(cfg)?.association_satellite())
}

pub fn association_prob_terrestrial(cfg: &SystemConfig) -> Result<Estimate> {
    Ok(HybridModel::new(cfg)?.association_terrestrial())
}

pub fn serving_distance_pdf_terrestrial(cfg: &SystemConfig, x: f64) -> Result<f64> {
    Ok(HybridModel::new(cfg)?.serving_distance_pdf_terrestrial(x))
}

pub fn serving_distance_cdf_terrestrial(cfg: &SystemConfig, x: f64) -> Result<Estimate> {
    HybridModel::new(cfg)?.serving_distance_cdf_terrestrial(x)
}

pub fn serving_angle_pdf_satellite(cfg: &SystemConfig, x: f64) -> Result<f64> {
    HybridModel::new(cfg)?.serving_angle_pdf_satellite(x)
}

pub fn serving_angle_cdf_satellite(cfg: &SystemConfig, x: f64) -> Result<Estimate> {
    HybridModel::new(cfg)?.serving_angle_cdf_satellite(x)
}

/// Taylor coefficients of L_{I_T} about `s` in powers of (s' − s), order m_o − 1.
pub fn laplace_interference_terrestrial(
    cfg: &SystemConfig,
    s: f64,
    x: f64,
) -> Result<TruncatedSeries> {
    HybridModel::new(cfg)?.laplace_interference_terrestrial_scaled(s, x, 1.0)
}

pub fn mean_satellite_interference(cfg: &SystemConfig, x: f64) -> Result<Estimate> {
    HybridModel::new(cfg)?.mean_satellite_interference(x)
}

pub fn coverage_conditional_terrestrial(cfg: &SystemConfig, gamma: f64) -> Result<Estimate> {
    HybridModel::new(cfg)?.coverage_conditional_terrestrial(gamma)
}

pub fn coverage_conditional_satellite(cfg: &SystemConfig, gamma: f64) -> Result<Estimate> {
    HybridModel::new(cfg)?.coverage_conditional_satellite(gamma)
}

pub fn coverage_total(cfg: &SystemConfig, gamma: f64) -> Result<CoverageBreakdown> {
    HybridModel::new(cfg)?.coverage_total(gamma)
}

pub fn rate_terrestrial(cfg: &SystemConfig) -> Result<Estimate> {
    HybridModel::new(cfg)?.rate_terrestrial()
}

pub fn rate_satellite(cfg: &SystemConfig) -> Result<Estimate> {
    HybridModel::new(cfg)?.rate_satellite()
}

pub fn rate_total(cfg: &SystemConfig) -> Result<RateBreakdown> {
    HybridModel::new(cfg)?.rate_total()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::db_to_linear;

    #[test]
    fn association_limits() {
        let mut cfg = SystemConfig::default();
        cfg.bs_density = 0.0;
        let a = association_prob_satellite(&cfg).unwrap().value;
        let visible = cfg
            .geometry
            .contact_angle_cdf(cfg.geometry.phi_max())
            .unwrap();
        assert!((a - visible).abs() < 1e-9);

        cfg.bs_density = 1e-3;
        assert!(association_prob_satellite(&cfg).unwrap().value < 1e-12);

        let cfg = SystemConfig::default().with_satellite_count(0);
        assert_eq!(association_prob_satellite(&cfg).unwrap().value, 0.0);
        assert_eq!(association_prob_terrestrial(&cfg).unwrap().value, 1.0);
    }

    #[test]
    fn association_depends_on_power_ratio_only() {
        let cfg = SystemConfig::default();
        let mut scaled = cfg.clone();
        scaled.terrestrial_power *= 7.3;
        scaled.satellite_power *= 7.3;
        let a = association_prob_satellite(&cfg).unwrap().value;
        let b = association_prob_satellite(&scaled).unwrap().value;
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn satellite_association_grows_with_power_and_count() {
        let base = SystemConfig::default();
        let mut last = 0.0;
        for p in [10.0, 20.0, 50.0, 100.0, 200.0] {
            let mut c = base.clone();
            c.satellite_power = p;
            let a = association_prob_satellite(&c).unwrap().value;
            assert!(a > last);
            last = a;
        }
        let mut last = 0.0;
        for n in [10, 50, 100, 300, 1000] {
            let a = association_prob_satellite(&base.with_satellite_count(n))
                .unwrap()
                .value;
            assert!(a > last);
            last = a;
        }
        // sanity: 20 dB main lobe reads as 100
        assert!((base.main_lobe_gain - db_to_linear(20.0)).abs() < 1e-12);
    }
}
