use std::f64::consts::PI;

use super::HybridModel;
use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::numerics::{gauss_2f1_taylor, integrate, TruncatedSeries};

impl HybridModel {
    /// Order of the series needed by the terrestrial coverage sum, m_o − 1.
    pub(crate) fn series_order(&self) -> usize {
        self.cfg.mimo.serving_shape() as usize - 1
    }

    /// Taylor coefficients of u ↦ ₂F₁(−2/η, M; 1−2/η; z0 + scale·u).
    pub(crate) fn interference_kernel(&self, z0: f64, scale: f64) -> Result<TruncatedSeries> {
        let delta = 2.0 / self.cfg.path_loss_exponent;
        let m = self.cfg.mimo.interferer_shape() as f64;
        let coefficients =
            gauss_2f1_taylor(-delta, m, 1.0 - delta, z0, scale, self.series_order())?;
        TruncatedSeries::new(coefficients)
    }

    /// −πλx²(H − 1), the exponent of the Laplace transform, from the kernel
    /// series H.
    pub(crate) fn laplace_exponent(
        &self,
        kernel: &TruncatedSeries,
        x: f64,
    ) -> Result<TruncatedSeries> {
        let k = kernel.order();
        kernel
            .checked_add(&TruncatedSeries::constant(-1.0, k))
            .map(|s| s.scale(-PI * self.cfg.bs_density * x * x))
    }
}

pub(super) fn laplace_series(
    model: &HybridModel,
    s0: f64,
    x: f64,
    scale: f64,
) -> Result<TruncatedSeries> {
    if !(s0 >= 0.0 && s0.is_finite()) {
        return Err(Error::domain("s", s0, "must be non-negative"));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("serving distance", x, "must be positive"));
    }
    let cfg = model.config();
    let k = cfg.terrestrial_power * x.powf(-cfg.path_loss_exponent);
    let kernel = model.interference_kernel(-s0 * k, -scale * k)?;
    Ok(model.laplace_exponent(&kernel, x)?.exp())
}

impl HybridModel {
    /// Ī_S(x) = (N_S/2) ∫_x^{φmax} P_S G_S l(φ) sin φ dφ by quadrature.
    pub fn mean_satellite_interference(&self, x: f64) -> Result<Estimate> {
        let g = &self.cfg.geometry;
        if !(x >= 0.0 && x <= g.phi_max() * (1.0 + 1e-12)) {
            return Err(Error::domain(
                "serving angle",
                x,
                "must lie in [0, phi_max]",
            ));
        }
        let x = x.min(g.phi_max());
        let k = 0.5
            * g.satellite_count() as f64
            * self.cfg.satellite_power
            * self.cfg.side_lobe_gain
            * self.lo;
        integrate(
            |phi| k * phi.sin() / g.slant_distance_sq_unchecked(phi),
            x,
            g.phi_max(),
            &self.cfg.quadrature,
        )
    }

    /// Ī_S in closed form: the integrand sin φ / d²(φ) has antiderivative
    /// ln d²(φ) / (2R_e(R_e+h)).
    pub(crate) fn mean_satellite_interference_closed(&self, x: f64) -> f64 {
        let g = &self.cfg.geometry;
        let k = 0.5
            * g.satellite_count() as f64
            * self.cfg.satellite_power
            * self.cfg.side_lobe_gain
            * self.lo;
        let ratio = g.slant_distance_sq_unchecked(g.phi_max()) / g.slant_distance_sq_unchecked(x);
        (k / g.cosine_coefficient() * ratio.ln()).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SystemConfig;
    use crate::numerics::{integrate_semi_infinite, QuadratureSpec};

    fn model(cfg: &SystemConfig) -> HybridModel {
        HybridModel::new(cfg).unwrap()
    }

    #[test]
    fn laplace_at_zero_is_one() {
        let m = model(&SystemConfig::default());
        let s = m
            .laplace_interference_terrestrial_scaled(0.0, 3000.0, 1.0)
            .unwrap();
        assert_eq!(s.value(), 1.0);
        assert_eq!(s.order(), 16);

        let mut cfg = SystemConfig::default();
        cfg.bs_density = 0.0;
        let m = model(&cfg);
        let s = m
            .laplace_interference_terrestrial_scaled(1e12, 3000.0, 1.0)
            .unwrap();
        assert_eq!(s.value(), 1.0);
    }

    fn pgfl(cfg: &SystemConfig, s: f64, x: f64) -> f64 {
        let spec = QuadratureSpec::new(1e-12, 1e-300, 20_000).unwrap();
        let m = cfg.mimo.interferer_shape() as f64;
        let eta = cfg.path_loss_exponent;
        let inner = integrate_semi_infinite(
            |t| {
                let r = x + t;
                let v = s * cfg.terrestrial_power * r.powf(-eta);
                -(-m * v.ln_1p()).exp_m1() * r
            },
            &spec,
        )
        .unwrap();
        (-2.0 * PI * cfg.bs_density * inner.value).exp()
    }

    #[test]
    fn laplace_matches_pgfl_integral() {
        let mut cfg = SystemConfig::default();
        cfg.mimo = crate::channel::MimoConfig::new(4, 1).unwrap();
        for &(x, gamma) in &[(2000.0, 0.5), (5000.0, 3.0), (8000.0, 40.0)] {
            let s = gamma * f64::powf(x, 4.0) / cfg.terrestrial_power;
            let m = model(&cfg);
            let v = m
                .laplace_interference_terrestrial_scaled(s, x, 1.0)
                .unwrap()
                .value();
            let o = pgfl(&cfg, s, x);
            assert!((v - o).abs() < 1e-9 * o, "{x} {gamma}: {v} vs {o}");
        }
        // and with the default M = 16
        let cfg = SystemConfig::default();
        let x = 4000.0;
        let s = 2.0 * f64::powf(x, 4.0) / cfg.terrestrial_power;
        let v = model(&cfg)
            .laplace_interference_terrestrial_scaled(s, x, 1.0)
            .unwrap()
            .value();
        assert!((v - pgfl(&cfg, s, x)).abs() < 1e-9);
    }

    #[test]
    fn laplace_series_derivatives_match_finite_differences() {
        let cfg = SystemConfig::default();
        let m = model(&cfg);
        let x = 3000.0;
        let s0 = 1.0 * f64::powf(x, 4.0) / cfg.terrestrial_power;
        // relative variable: s = s0 (1 + u)
        let series = m
            .laplace_interference_terrestrial_scaled(s0, x, s0)
            .unwrap();
        let f = |u: f64| {
            m.laplace_interference_terrestrial_scaled(s0 * (1.0 + u), x, s0)
                .unwrap()
                .value()
        };
        let h = 1e-4;
        let d1 = (f(h) - f(-h)) / (2.0 * h);
        assert!((series.coefficients()[1] - d1).abs() < 1e-6 * d1.abs());
    }

    #[test]
    fn mean_interference_closed_form_and_quadrature_agree() {
        let m = model(&SystemConfig::default());
        let phi_max = m.config().geometry.phi_max();
        for i in 0..=10 {
            let x = phi_max * i as f64 / 10.0;
            let q = m.mean_satellite_interference(x).unwrap().value;
            let c = m.mean_satellite_interference_closed(x);
            assert!(
                (q - c).abs() <= 1e-9 * c.max(1e-300) + 1e-30,
                "{x}: {q} vs {c}"
            );
        }
        assert_eq!(m.mean_satellite_interference(phi_max).unwrap().value, 0.0);
    }

    #[test]
    fn mean_interference_linear_in_side_lobe_gain() {
        let cfg = SystemConfig::default();
        let mut doubled = cfg.clone();
        doubled.side_lobe_gain *= 2.0;
        let a = model(&cfg).mean_satellite_interference(0.01).unwrap().value;
        let b = model(&doubled)
            .mean_satellite_interference(0.01)
            .unwrap()
            .value;
        assert!((b - 2.0 * a).abs() < 1e-12 * b);
    }
}
