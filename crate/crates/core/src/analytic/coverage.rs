use std::f64::consts::LN_2;

use super::{checked_probability, CoverageBreakdown, HybridModel, Nested, RateBreakdown};
use crate::channel::serving_gain_ccdf_satellite;
use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::numerics::{integrate_semi_infinite_with_breakpoints, TruncatedSeries};

/// Threshold at which the kernel evaluation changes regime; passed to the
/// rate integrals as a panel edge.
const KERNEL_SWITCH: f64 = 9.0;

fn check_threshold(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::domain(
            "gamma",
            gamma,
            "SINR threshold must be positive",
        ));
    }
    Ok(())
}

impl HybridModel {
    /// Kernel series for threshold γ in the relative variable s = s_T(x)(1+u).
    ///
    /// With s_T(x) = γx^η/P_T the argument −s P_T x^{−η} equals −γ(1+u), so
    /// the series is the same for every serving distance.
    fn coverage_kernel(&self, gamma: f64) -> Result<TruncatedSeries> {
        self.interference_kernel(-gamma, -gamma)
    }

    /// Σ_{q<m_o} (−s)^q/q! ∂^q/∂s^q [e^{−sσ²} L(s)] at s = s_T(x), i.e. the
    /// probability that the Gamma(m_o) serving gain clears the SINR target at
    /// serving distance x.
    fn terrestrial_coverage_at(&self, kernel: &TruncatedSeries, gamma: f64, x: f64) -> Result<f64> {
        let k = kernel.order();
        let s0 = gamma * x.powf(self.cfg.path_loss_exponent) / self.cfg.terrestrial_power;
        let noise = TruncatedSeries::variable(1.0, k).scale(-s0 * self.cfg.terrestrial_noise);
        let product = self.laplace_exponent(kernel, x)?.checked_add(&noise)?.exp();
        // Coefficient q of the relative expansion is s0^q/q! times the q-th
        // derivative, so the alternating sum is the q-sum directly.
        Ok(product.weighted_partial_sum(k + 1, -1.0))
    }

    pub fn coverage_conditional_terrestrial(&self, gamma: f64) -> Result<Estimate> {
        check_threshold(gamma)?;
        let kernel = self.coverage_kernel(gamma)?;
        let nested = Nested::new();
        let e = self.integrate_over_terrestrial_serving(|x| {
            nested.take_value(self.terrestrial_coverage_at(&kernel, gamma, x))
        });
        checked_probability("terrestrial coverage", nested.finish(e)?)
    }

    /// F̄_Ω(γ(Ī_S(x) + σ_S²)/(P_S G_{S,o} l(x))).
    fn satellite_coverage_at(&self, gamma: f64, x: f64) -> Result<f64> {
        let signal = self.cfg.satellite_power * self.cfg.main_lobe_gain * self.lo
            / self.cfg.geometry.slant_distance_sq_unchecked(x);
        let arg = gamma * (self.mean_satellite_interference_closed(x) + self.cfg.satellite_noise)
            / signal;
        serving_gain_ccdf_satellite(&self.cfg.fading, arg)
    }

    /// Conditional satellite coverage under the mean-interference
    /// approximation.
    pub fn coverage_conditional_satellite(&self, gamma: f64) -> Result<Estimate> {
        check_threshold(gamma)?;
        let nested = Nested::new();
        let e = self.integrate_over_satellite_serving(|x| {
            nested.take_value(self.satellite_coverage_at(gamma, x))
        });
        checked_probability("satellite coverage", nested.finish(e)?)
    }

    pub fn coverage_total(&self, gamma: f64) -> Result<CoverageBreakdown> {
        let a_s = self.association_satellite();
        let a_t = self.association_terrestrial();
        let p_cov_t = self.coverage_conditional_terrestrial(gamma)?;
        let p_cov_s = self.coverage_conditional_satellite(gamma)?;
        let p_tot = Estimate::quadrature(
            p_cov_t.value * a_t.value + p_cov_s.value * a_s.value,
            p_cov_t.half_width * a_t.value
                + p_cov_s.half_width * a_s.value
                + a_s.half_width * (p_cov_t.value - p_cov_s.value).abs(),
            p_cov_t.n + p_cov_s.n + a_s.n,
        );
        Ok(CoverageBreakdown {
            a_t,
            a_s,
            p_cov_t,
            p_cov_s,
            p_tot,
        })
    }

    /// (B/ln2) ∫₀^∞ P_cov(t)/(1+t) dt for a conditional coverage curve.
    fn rate_integral<F: Fn(f64) -> Result<Estimate>>(
        &self,
        bandwidth: f64,
        coverage: F,
    ) -> Result<Estimate> {
        if bandwidth == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        let nested = Nested::new();
        let e = integrate_semi_infinite_with_breakpoints(
            |t| {
                if t == 0.0 {
                    return 1.0;
                }
                nested.take(coverage(t)) / (1.0 + t)
            },
            &[KERNEL_SWITCH],
            &self.cfg.quadrature,
        );
        let e = nested.finish(e)?;
        let k = bandwidth / LN_2;
        Ok(Estimate::quadrature(k * e.value, k * e.half_width, e.n))
    }

    /// Average rate given terrestrial association, bit/s.
    pub fn rate_terrestrial(&self) -> Result<Estimate> {
        if self.association_terrestrial().value <= 0.0 || self.cfg.bs_density == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        self.rate_integral(self.cfg.terrestrial_bandwidth, |t| {
            self.coverage_conditional_terrestrial(t)
        })
    }

    /// Average rate given satellite association, bit/s, under the
    /// mean-interference approximation.
    pub fn rate_satellite(&self) -> Result<Estimate> {
        if self.a_s.value <= 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        self.rate_integral(self.cfg.satellite_bandwidth, |t| {
            self.coverage_conditional_satellite(t)
        })
    }

    pub fn rate_total(&self) -> Result<RateBreakdown> {
        let a_s = self.association_satellite();
        let a_t = self.association_terrestrial();
        let r_t = self.rate_terrestrial()?;
        let r_s = self.rate_satellite()?;
        let r_tot = Estimate::quadrature(
            r_t.value * a_t.value + r_s.value * a_s.value,
            r_t.half_width * a_t.value
                + r_s.half_width * a_s.value
                + a_s.half_width * (r_t.value - r_s.value).abs(),
            r_t.n + r_s.n + a_s.n,
        );
        Ok(RateBreakdown {
            a_t,
            a_s,
            r_t,
            r_s,
            r_tot,
        })
    }
}
