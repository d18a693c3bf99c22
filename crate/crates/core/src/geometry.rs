//! Spherical constellation geometry, free-space satellite path loss and the
//! contact-angle law of the nearest satellite.
//!
//! Angles are Earth-centred zenith angles in radians.

use std::f64::consts::PI;

use serde::Serialize;

use crate::config::SystemConfig;
use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Mean Earth radius in metres.
pub const EARTH_RADIUS: f64 = 6_371_000.0;

/// Slack allowed when checking φ ≤ φ_max, so that quadrature nodes and
/// round-tripped angles at the horizon are accepted.
const ANGLE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstellationGeometry {
    earth_radius: f64,
    altitude: f64,
    satellite_count: u32,
    alpha: f64,
    phi_max: f64,
    density: f64,
}

impl ConstellationGeometry {
    /// `satellite_count` may be zero, which describes a terrestrial-only
    /// network.
    pub fn new(earth_radius: f64, altitude: f64, satellite_count: u32) -> Result<Self> {
        let phi_max = max_zenith_angle(earth_radius, altitude)?;
        let orbit = earth_radius + altitude;
        Ok(ConstellationGeometry {
            earth_radius,
            altitude,
            satellite_count,
            alpha: earth_radius / orbit,
            phi_max,
            density: satellite_count as f64 / (4.0 * PI * orbit * orbit),
        })
    }

    pub fn earth_radius(&self) -> f64 {
        self.earth_radius
    }

    pub fn altitude(&self) -> f64 {
        self.altitude
    }

    pub fn satellite_count(&self) -> u32 {
        self.satellite_count
    }

    /// R_e/(R_e + h_S).
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn phi_max(&self) -> f64 {
        self.phi_max
    }

    /// Satellites per square metre of the orbital sphere.
    pub fn density(&self) -> f64 {
        self.density
    }

    /// Same shell with a different number of satellites.
    pub fn with_satellite_count(&self, satellite_count: u32) -> Self {
        Self::new(self.earth_radius, self.altitude, satellite_count)
            .expect("shell already validated")
    }

    fn check_angle(&self, phi: f64) -> Result<()> {
        if !(phi >= 0.0 && phi <= self.phi_max * (1.0 + ANGLE_SLACK)) {
            return Err(Error::domain(
                "zenith angle",
                phi,
                "must lie in [0, phi_max]",
            ));
        }
        Ok(())
    }

    /// 2 R_e (R_e + h_S), the coefficient of −cos φ in d²(φ).
    pub(crate) fn cosine_coefficient(&self) -> f64 {
        2.0 * self.earth_radius * (self.earth_radius + self.altitude)
    }

    /// d²(φ) without range checks. Written as h² + B(1 − cos φ) to keep full
    /// precision near nadir.
    pub(crate) fn slant_distance_sq_unchecked(&self, phi: f64) -> f64 {
        let half = (0.5 * phi).sin();
        self.altitude * self.altitude + self.cosine_coefficient() * 2.0 * half * half
    }

    pub fn slant_distance(&self, phi: f64) -> Result<f64> {
        self.check_angle(phi)?;
        Ok(self.slant_distance_sq_unchecked(phi).sqrt())
    }

    /// Slant distance to a satellite on the horizon, √((R_e+h_S)² − R_e²).
    pub fn horizon_distance(&self) -> f64 {
        let orbit = self.earth_radius + self.altitude;
        (orbit * orbit - self.earth_radius * self.earth_radius).sqrt()
    }

    /// Nearest-satellite angle density, (N_S/2) sin φ e^{−(N_S/2)(1−cos φ)}.
    pub fn contact_angle_pdf(&self, phi: f64) -> Result<f64> {
        self.check_angle(phi)?;
        Ok(self.contact_angle_pdf_unchecked(phi))
    }

    pub(crate) fn contact_angle_pdf_unchecked(&self, phi: f64) -> f64 {
        let k = 0.5 * self.satellite_count as f64;
        k * phi.sin() * (-k * one_minus_cos(phi)).exp()
    }

    /// 1 − e^{−(N_S/2)(1−cos φ)}.
    pub fn contact_angle_cdf(&self, phi: f64) -> Result<f64> {
        self.check_angle(phi)?;
        Ok(self.contact_angle_cdf_unchecked(phi))
    }

    pub(crate) fn contact_angle_cdf_unchecked(&self, phi: f64) -> f64 {
        let k = 0.5 * self.satellite_count as f64;
        -(-k * one_minus_cos(phi)).exp_m1()
    }
}

/// 1 − cos φ without cancellation.
pub(crate) fn one_minus_cos(phi: f64) -> f64 {
    let s = (0.5 * phi).sin();
    2.0 * s * s
}

/// Largest zenith angle at which a satellite at altitude `altitude` is above
/// the horizon: arccos(R_e/(R_e + h_S)).
pub fn max_zenith_angle(earth_radius: f64, altitude: f64) -> Result<f64> {
    if !(earth_radius > 0.0 && earth_radius.is_finite()) {
        return Err(Error::domain(
            "earth radius",
            earth_radius,
            "must be positive",
        ));
    }
    if !(altitude > 0.0 && altitude.is_finite()) {
        return Err(Error::domain("altitude", altitude, "must be positive"));
    }
    Ok((earth_radius / (earth_radius + altitude)).acos())
}

/// Free-space constant l_o = (c/(4π f))².
pub fn free_space_constant(frequency: f64) -> f64 {
    let k = SPEED_OF_LIGHT / (4.0 * PI * frequency);
    k * k
}

/// l(φ) = l_o/d(φ)².
pub fn satellite_path_loss(geom: &ConstellationGeometry, phi: f64, frequency: f64) -> Result<f64> {
    if !(frequency > 0.0 && frequency.is_finite()) {
        return Err(Error::domain(
            "carrier frequency",
            frequency,
            "must be positive",
        ));
    }
    geom.check_angle(phi)?;
    Ok(free_space_constant(frequency) / geom.slant_distance_sq_unchecked(phi))
}

/// Terrestrial distance at which the mean terrestrial power P_T m_o r^{−η}
/// equals the mean power of a satellite at slant distance `x`.
pub fn boundary_distance(cfg: &SystemConfig, x: f64) -> f64 {
    let ratio = cfg.terrestrial_power * cfg.mimo.serving_shape() as f64
        / (cfg.satellite_power * cfg.main_lobe_gain * free_space_constant(cfg.satellite_carrier));
    let eta = cfg.path_loss_exponent;
    ratio.powf(1.0 / eta) * x.powf(2.0 / eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quadrature::{integrate, QuadratureSpec};

    fn table() -> ConstellationGeometry {
        ConstellationGeometry::new(EARTH_RADIUS, 800e3, 300).unwrap()
    }

    #[test]
    fn phi_max_matches_arccot_form() {
        let g = table();
        let a = g.alpha();
        let cot_form = (PI / 2.0) - (a / (1.0 - a * a).sqrt()).atan();
        assert!((g.phi_max() - cot_form).abs() < 1e-12);
        assert!((g.phi_max() - (6371.0f64 / 7171.0).acos()).abs() < 1e-12);
        assert!(max_zenith_angle(1.0, 1.0).unwrap() - PI / 3.0 < 1e-15);
        assert!(max_zenith_angle(EARTH_RADIUS, 1e-3).unwrap() < 1e-4);
        assert!(max_zenith_angle(EARTH_RADIUS, 0.0).is_err());
        assert!(max_zenith_angle(-1.0, 1.0).is_err());
    }

    #[test]
    fn density_times_area_is_count() {
        let g = table();
        let r = EARTH_RADIUS + 800e3;
        assert!((g.density() * 4.0 * PI * r * r - 300.0).abs() < 1e-9);
    }

    #[test]
    fn slant_distance_endpoints() {
        let g = table();
        assert_eq!(g.slant_distance(0.0).unwrap(), 800e3);
        let dmax = g.slant_distance(g.phi_max()).unwrap();
        assert!((dmax - g.horizon_distance()).abs() < 1e-6);
        assert!(g.slant_distance(g.phi_max() * 1.01).is_err());
        assert!(g.slant_distance(-0.1).is_err());
    }

    #[test]
    fn slant_distance_matches_coordinates() {
        let g = table();
        let phi = 0.5 * g.phi_max();
        let user = (0.0, EARTH_RADIUS);
        let orbit = EARTH_RADIUS + 800e3;
        let sat = (orbit * phi.sin(), orbit * phi.cos());
        let d = ((sat.0 - user.0).powi(2) + (sat.1 - user.1).powi(2)).sqrt();
        assert!((g.slant_distance(phi).unwrap() - d).abs() < 1e-6);
    }

    #[test]
    fn path_loss_oracles() {
        let g = table();
        let lo = free_space_constant(2e9);
        assert!((satellite_path_loss(&g, 0.0, 2e9).unwrap() - lo / 800e3f64.powi(2)).abs() < 1e-30);
        let l1 = satellite_path_loss(&g, 0.1, 2e9).unwrap();
        let l2 = satellite_path_loss(&g, 0.1, 4e9).unwrap();
        assert!((l1 / l2 - 4.0).abs() < 1e-12);
        let d = g.horizon_distance();
        let direct = (SPEED_OF_LIGHT / (4.0 * PI * 2e9 * d)).powi(2);
        let l = satellite_path_loss(&g, g.phi_max(), 2e9).unwrap();
        assert!((l - direct).abs() <= 1e-9 * direct);
    }

    #[test]
    fn contact_angle_law() {
        let g = table();
        assert_eq!(g.contact_angle_pdf(0.0).unwrap(), 0.0);
        assert_eq!(g.contact_angle_cdf(0.0).unwrap(), 0.0);
        let want = 1.0 - (-150.0 * (1.0 - g.alpha())).exp();
        assert!((g.contact_angle_cdf(g.phi_max()).unwrap() - want).abs() < 1e-14);

        let h = 1e-6;
        let fd = (g.contact_angle_cdf(0.05 + h).unwrap() - g.contact_angle_cdf(0.05 - h).unwrap())
            / (2.0 * h);
        assert!((g.contact_angle_pdf(0.05).unwrap() - fd).abs() < 1e-6 * fd);

        let spec = QuadratureSpec::default();
        let int = integrate(
            |p| g.contact_angle_pdf_unchecked(p),
            0.0,
            g.phi_max(),
            &spec,
        )
        .unwrap();
        assert!((int.value - want).abs() < 1e-9);
    }

    #[test]
    fn cdf_is_antiderivative_on_grid() {
        let g = table();
        let spec = QuadratureSpec::default();
        let mut prev = 0.0;
        for i in 1..=50 {
            let phi = g.phi_max() * i as f64 / 50.0;
            let int = integrate(|p| g.contact_angle_pdf_unchecked(p), 0.0, phi, &spec).unwrap();
            let cdf = g.contact_angle_cdf(phi).unwrap();
            assert!((int.value - cdf).abs() < 1e-9);
            assert!(cdf >= prev);
            prev = cdf;
        }
    }

    #[test]
    fn boundary_distance_unit_prefactor() {
        let mut cfg = SystemConfig::default();
        // choose P_T so that P_T m_o = P_S G_So l_o
        let lo = free_space_constant(cfg.satellite_carrier);
        cfg.terrestrial_power =
            cfg.satellite_power * cfg.main_lobe_gain * lo / cfg.mimo.serving_shape() as f64;
        let x: f64 = 123_456.0;
        assert!((boundary_distance(&cfg, x) - x.sqrt()).abs() < 1e-9 * x.sqrt());
    }

    #[test]
    fn boundary_distance_solves_power_balance() {
        let cfg = SystemConfig::default();
        let x = cfg.geometry.altitude();
        let sat =
            cfg.satellite_power * cfg.main_lobe_gain * free_space_constant(cfg.satellite_carrier)
                / (x * x);
        let terr = |r: f64| {
            cfg.terrestrial_power
                * (cfg.mimo.serving_shape() as f64)
                * r.powf(-cfg.path_loss_exponent)
        };
        // bisection on ln r
        let (mut lo, mut hi) = (1.0f64, 1e9f64);
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if terr(mid) > sat {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let e = boundary_distance(&cfg, x);
        assert!((e - lo).abs() < 1e-9 * e);
    }
}
