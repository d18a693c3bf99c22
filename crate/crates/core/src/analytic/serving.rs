use std::f64::consts::PI;

use super::HybridModel;
use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::numerics::integrate;

impl HybridModel {
    /// 2πλ r e^{−πλr²}.
    pub(crate) fn nearest_bs_pdf(&self, r: f64) -> f64 {
        let lam = self.cfg.bs_density;
        2.0 * PI * lam * r * (-PI * lam * r * r).exp()
    }

    /// Probability that no satellite beats a BS at distance x on mean power.
    ///
    /// Inside the first breakpoint even a satellite at nadir loses. Between
    /// the breakpoints the winning region is a cap of half-angle ψ with
    /// 1 − cos ψ = (d²(ψ) − h²)/(2R_e(R_e+h)) and d²(ψ) the slant distance
    /// of equal power. Beyond the second breakpoint the law carries no mass.
    pub(crate) fn terrestrial_thinning(&self, x: f64) -> f64 {
        let [e1, e2] = self.breakpoints;
        if x <= e1 {
            return 1.0;
        }
        if x > e2 {
            return 0.0;
        }
        let g = &self.cfg.geometry;
        let d2 = x.powf(self.cfg.path_loss_exponent) / self.power_ratio;
        let one_minus_cos = (d2 - g.altitude() * g.altitude()) / g.cosine_coefficient();
        let k = 0.5 * g.satellite_count() as f64;
        (-k * one_minus_cos).exp()
    }

    /// Unnormalized terrestrial serving density f_R(x)·thinning(x).
    pub(crate) fn terrestrial_preference_density(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        self.nearest_bs_pdf(x) * self.terrestrial_thinning(x)
    }

    /// Three-branch density of the serving distance given terrestrial
    /// association; zero outside [0, E_T(√(R_e²+(R_e+h)²))].
    pub fn serving_distance_pdf_terrestrial(&self, x: f64) -> f64 {
        let a_t = self.association_terrestrial().value;
        if a_t <= 0.0 {
            return 0.0;
        }
        self.terrestrial_preference_density(x) / a_t
    }

    /// CDF of the terrestrial serving distance: closed form up to the first
    /// breakpoint, quadrature across the second branch, constant after.
    pub fn serving_distance_cdf_terrestrial(&self, x: f64) -> Result<Estimate> {
        if x <= 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        let a_t = self.association_terrestrial().value;
        let [e1, e2] = self.breakpoints;
        let lam = self.cfg.bs_density;
        let first = |r: f64| -(-PI * lam * r * r).exp_m1();
        if x <= e1 {
            return Ok(Estimate::exact(first(x) / a_t));
        }
        let upper = x.min(e2);
        let second = integrate(
            |r| self.terrestrial_preference_density(r),
            e1,
            upper,
            &self.cfg.quadrature,
        )?;
        Ok(Estimate::quadrature(
            (first(e1) + second.value) / a_t,
            second.half_width / a_t,
            second.n,
        ))
    }

    fn check_serving_angle(&self, x: f64) -> Result<()> {
        let phi_max = self.cfg.geometry.phi_max();
        if !(x >= 0.0 && x <= phi_max * (1.0 + 1e-12)) {
            return Err(Error::domain(
                "serving angle",
                x,
                "must lie in [0, phi_max]",
            ));
        }
        if self.a_s.value <= 0.0 {
            return Err(Error::domain(
                "A_S",
                self.a_s.value,
                "no satellite association is possible",
            ));
        }
        Ok(())
    }

    /// Density of the serving zenith angle given satellite association.
    pub fn serving_angle_pdf_satellite(&self, x: f64) -> Result<f64> {
        self.check_serving_angle(x)?;
        Ok(self.satellite_preference_density(x) / self.a_s.value)
    }

    pub fn serving_angle_cdf_satellite(&self, x: f64) -> Result<Estimate> {
        self.check_serving_angle(x)?;
        let e = integrate(
            |p| self.satellite_preference_density(p),
            0.0,
            x,
            &self.cfg.quadrature,
        )?;
        Ok(Estimate::quadrature(
            e.value / self.a_s.value,
            e.half_width / self.a_s.value,
            e.n,
        ))
    }

    /// Terrestrial serving-distance CDF at every point of an ascending
    /// slice, accumulating the integral between neighbours.
    pub fn serving_distance_cdf_terrestrial_sorted(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let a_t = self.association_terrestrial().value;
        let [e1, e2] = self.breakpoints;
        let lam = self.cfg.bs_density;
        let first = |r: f64| -(-PI * lam * r * r).exp_m1();
        let mut acc = first(e1);
        let mut from = e1;
        let mut out = Vec::with_capacity(xs.len());
        for &x in xs {
            if x <= 0.0 {
                out.push(0.0);
            } else if x <= e1 {
                out.push(first(x) / a_t);
            } else {
                let to = x.min(e2);
                if to > from {
                    acc += integrate(
                        |r| self.terrestrial_preference_density(r),
                        from,
                        to,
                        &self.cfg.quadrature,
                    )?
                    .value;
                    from = to;
                }
                out.push(acc / a_t);
            }
        }
        Ok(out)
    }

    /// Satellite serving-angle CDF at every point of an ascending slice.
    pub fn serving_angle_cdf_satellite_sorted(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let mut acc = 0.0;
        let mut from = 0.0;
        let mut out = Vec::with_capacity(xs.len());
        for &x in xs {
            self.check_serving_angle(x)?;
            if x > from {
                acc += integrate(
                    |p| self.satellite_preference_density(p),
                    from,
                    x,
                    &self.cfg.quadrature,
                )?
                .value;
                from = x;
            }
            out.push(acc / self.a_s.value);
        }
        Ok(out)
    }

    /// ∫ f_{X_T}(x) g(x) dx over the support, with both breakpoints as panel
    /// edges.
    pub(crate) fn integrate_over_terrestrial_serving<G: Fn(f64) -> f64>(
        &self,
        g: G,
    ) -> Result<Estimate> {
        let a_t = self.association_terrestrial().value;
        if a_t <= 0.0 || self.cfg.bs_density == 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        let [e1, e2] = self.breakpoints;
        let e = crate::numerics::integrate_with_breakpoints(
            |x| {
                let w = self.terrestrial_preference_density(x);
                if w == 0.0 {
                    0.0
                } else {
                    w * g(x)
                }
            },
            &[0.0, e1, e2],
            &self.cfg.quadrature,
        )?;
        Ok(Estimate::quadrature(e.value / a_t, e.half_width / a_t, e.n))
    }

    /// ∫ f_{X_S}(x) g(x) dx over [0, φ_max].
    pub(crate) fn integrate_over_satellite_serving<G: Fn(f64) -> f64>(
        &self,
        g: G,
    ) -> Result<Estimate> {
        if self.a_s.value <= 0.0 {
            return Ok(Estimate::exact(0.0));
        }
        let e = integrate(
            |p| {
                let w = self.satellite_preference_density(p);
                if w == 0.0 {
                    0.0
                } else {
                    w * g(p)
                }
            },
            0.0,
            self.cfg.geometry.phi_max(),
            &self.cfg.quadrature,
        )?;
        let a_s = self.a_s.value;
        Ok(Estimate::quadrature(e.value / a_s, e.half_width / a_s, e.n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SystemConfig;
    use crate::numerics::QuadratureSpec;

    fn model() -> HybridModel {
        HybridModel::new(&SystemConfig::default()).unwrap()
    }

    #[test]
    fn terrestrial_density_normalizes() {
        let m = model();
        assert_eq!(m.serving_distance_pdf_terrestrial(0.0), 0.0);
        let total = m.integrate_over_terrestrial_serving(|_| 1.0).unwrap();
        assert!((total.value - 1.0).abs() < 1e-6, "{}", total.value);
        let [_, e2] = m.terrestrial_breakpoints();
        assert_eq!(m.serving_distance_pdf_terrestrial(e2 * 1.0001), 0.0);
    }

    #[test]
    fn terrestrial_cdf_plateaus_at_support_end() {
        let m = model();
        let [e1, e2] = m.terrestrial_breakpoints();
        let at_end = m.serving_distance_cdf_terrestrial(e2).unwrap().value;
        let beyond = m.serving_distance_cdf_terrestrial(3.0 * e2).unwrap().value;
        assert!((at_end - 1.0).abs() < 1e-6);
        assert_eq!(at_end, beyond);
        assert!(m.serving_distance_cdf_terrestrial(0.5 * e1).unwrap().value < at_end);
    }

    #[test]
    fn terrestrial_cdf_derivative_is_pdf() {
        let m = model();
        let [e1, e2] = m.terrestrial_breakpoints();
        let h = 0.5;
        for i in 1..20 {
            let x = e2 * i as f64 / 20.0;
            if (x - e1).abs() < 10.0 * h {
                continue;
            }
            let fd = (m.serving_distance_cdf_terrestrial(x + h).unwrap().value
                - m.serving_distance_cdf_terrestrial(x - h).unwrap().value)
                / (2.0 * h);
            let pdf = m.serving_distance_pdf_terrestrial(x);
            // CDF values carry ~1e-16 absolute rounding, hence the floor
            assert!(
                (fd - pdf).abs() <= 1e-4 * pdf + 1e-12,
                "x {x}: {fd} vs {pdf}"
            );
        }
    }

    #[test]
    fn sorted_cdfs_match_pointwise() {
        let m = model();
        let [e1, e2] = m.terrestrial_breakpoints();
        let xs: Vec<f64> = (0..40)
            .map(|i| 1.3 * e2 * i as f64 / 40.0)
            .chain([e1])
            .collect::<Vec<_>>();
        let mut xs = xs;
        xs.sort_by(f64::total_cmp);
        let sorted = m.serving_distance_cdf_terrestrial_sorted(&xs).unwrap();
        for (x, f) in xs.iter().zip(&sorted) {
            let p = m.serving_distance_cdf_terrestrial(*x).unwrap().value;
            assert!((f - p).abs() < 1e-10, "x {x}: {f} vs {p}");
        }
        let phi_max = m.config().geometry.phi_max();
        let angles: Vec<f64> = (0..=30).map(|i| phi_max * i as f64 / 30.0).collect();
        let sorted = m.serving_angle_cdf_satellite_sorted(&angles).unwrap();
        for (x, f) in angles.iter().zip(&sorted) {
            let p = m.serving_angle_cdf_satellite(*x).unwrap().value;
            assert!((f - p).abs() < 1e-10, "x {x}: {f} vs {p}");
        }
    }

    #[test]
    fn satellite_angle_density_normalizes() {
        let m = model();
        assert_eq!(m.serving_angle_pdf_satellite(0.0).unwrap(), 0.0);
        let phi_max = m.config().geometry.phi_max();
        let cdf = m.serving_angle_cdf_satellite(phi_max).unwrap();
        assert!((cdf.value - 1.0).abs() < 1e-6);
        assert!(m.serving_angle_pdf_satellite(phi_max * 1.1).is_err());
        let spec = QuadratureSpec::default();
        let direct = integrate(
            |p| m.serving_angle_pdf_satellite(p).unwrap(),
            0.0,
            phi_max,
            &spec,
        )
        .unwrap();
        assert!((direct.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn dense_terrestrial_network_matches_nearest_bs_law() {
        let mut cfg = SystemConfig::default();
        cfg.bs_density = 1e-6;
        let m = HybridModel::new(&cfg).unwrap();
        for r in [50.0, 300.0, 800.0, 1500.0] {
            let f = m.serving_distance_cdf_terrestrial(r).unwrap().value;
            let nearest = 1.0 - (-PI * 1e-6 * r * r).exp();
            assert!((f - nearest).abs() < 1e-6);
        }
    }
}
