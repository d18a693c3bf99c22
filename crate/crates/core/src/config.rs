//! System parameters and their JSON form.
//!
//! The JSON document mirrors the parameter table grouped into
//! `terrestrial`, `mimo`, `satellite` and `analysis`. Every key is optional
//! and falls back to the rural reference values; unknown keys are rejected.
//! dB and dBm values are converted to linear units and watts once, here.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channel::{MimoConfig, SatelliteFading};
use crate::error::{Error, Result};
use crate::geometry::{ConstellationGeometry, EARTH_RADIUS};
use crate::numerics::quadrature::QuadratureSpec;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn watts_to_dbm(w: f64) -> f64 {
    10.0 * w.log10() + 30.0
}

/// Validated parameter set in SI units and linear gains.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemConfig {
    /// λ_T, BSs per m².
    pub bs_density: f64,
    /// P_{t,T}, W.
    pub terrestrial_power: f64,
    pub path_loss_exponent: f64,
    /// σ_T², W.
    pub terrestrial_noise: f64,
    pub terrestrial_bandwidth: f64,
    /// Stored for completeness; the terrestrial path loss is a pure power law.
    pub terrestrial_carrier: f64,
    pub mimo: MimoConfig,

    pub geometry: ConstellationGeometry,
    /// P_{t,S}, W.
    pub satellite_power: f64,
    /// G_{S,o}, linear.
    pub main_lobe_gain: f64,
    /// G_S, linear.
    pub side_lobe_gain: f64,
    /// σ_S², W.
    pub satellite_noise: f64,
    pub satellite_bandwidth: f64,
    pub satellite_carrier: f64,
    pub fading: SatelliteFading,

    /// γ, linear.
    pub sinr_threshold: f64,
    pub quadrature: QuadratureSpec,
}

impl Default for SystemConfig {
    fn default() -> Self {
        ConfigDocument::default()
            .resolve()
            .expect("reference parameters are valid")
    }
}

fn positive(path: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::config(
            path,
            format!("must be positive and finite, got {x}"),
        ));
    }
    Ok(())
}

fn non_negative(path: &str, x: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::config(
            path,
            format!("must be non-negative and finite, got {x}"),
        ));
    }
    Ok(())
}

fn finite(path: &str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::config(path, format!("must be finite, got {x}")));
    }
    Ok(())
}

impl SystemConfig {
    /// Checks every invariant; the error names the offending document key.
    pub fn validate(&self) -> Result<()> {
        non_negative("terrestrial.lambda_T", self.bs_density)?;
        positive("terrestrial.P_t_T_W", self.terrestrial_power)?;
        if !(self.path_loss_exponent > 2.0 && self.path_loss_exponent.is_finite()) {
            return Err(Error::config(
                "terrestrial.eta",
                format!(
                    "path-loss exponent must exceed 2, got {}",
                    self.path_loss_exponent
                ),
            ));
        }
        positive("terrestrial.sigma2_T_dBm", self.terrestrial_noise)?;
        non_negative("terrestrial.B_T_Hz", self.terrestrial_bandwidth)?;
        positive("terrestrial.f_T_Hz", self.terrestrial_carrier)?;
        MimoConfig::new(self.mimo.antennas(), self.mimo.users())
            .map_err(|e| Error::config("mimo.M", e.to_string()))?;

        positive("satellite.h_S_m", self.geometry.altitude())?;
        positive("satellite.R_e_m", self.geometry.earth_radius())?;
        positive("satellite.P_t_S_W", self.satellite_power)?;
        positive("satellite.G_So_dB", self.main_lobe_gain)?;
        positive("satellite.G_S_dB", self.side_lobe_gain)?;
        if self.side_lobe_gain >= self.main_lobe_gain {
            return Err(Error::config(
                "satellite.G_S_dB",
                "side-lobe gain must be below the main-lobe gain",
            ));
        }
        positive("satellite.sigma2_S_dBm", self.satellite_noise)?;
        non_negative("satellite.B_S_Hz", self.satellite_bandwidth)?;
        positive("satellite.f_S_Hz", self.satellite_carrier)?;
        SatelliteFading::new(self.fading.m())
            .map_err(|e| Error::config("satellite.nakagami_m", e.to_string()))?;

        positive("analysis.gamma_dB", self.sinr_threshold)?;
        self.quadrature
            .validate()
            .map_err(|e| Error::config("analysis", e.to_string()))?;
        Ok(())
    }

    pub fn with_satellite_count(&self, n: u32) -> Self {
        let mut c = self.clone();
        c.geometry = self.geometry.with_satellite_count(n);
        c
    }

    pub fn with_threshold(&self, gamma: f64) -> Self {
        let mut c = self.clone();
        c.sinr_threshold = gamma;
        c
    }

    /// The equivalent document, with every key present.
    pub fn to_document(&self) -> ConfigDocument {
        ConfigDocument {
            terrestrial: Some(TerrestrialSection {
                lambda_t: Some(self.bs_density),
                p_t_t_w: Some(self.terrestrial_power),
                eta: Some(self.path_loss_exponent),
                sigma2_t_dbm: Some(watts_to_dbm(self.terrestrial_noise)),
                b_t_hz: Some(self.terrestrial_bandwidth),
                f_t_hz: Some(self.terrestrial_carrier),
            }),
            mimo: Some(MimoSection {
                n_t: Some(self.mimo.antennas()),
                m: Some(self.mimo.users()),
            }),
            satellite: Some(SatelliteSection {
                n_s: Some(self.geometry.satellite_count()),
                h_s_m: Some(self.geometry.altitude()),
                r_e_m: Some(self.geometry.earth_radius()),
                p_t_s_w: Some(self.satellite_power),
                g_so_db: Some(linear_to_db(self.main_lobe_gain)),
                g_s_db: Some(linear_to_db(self.side_lobe_gain)),
                sigma2_s_dbm: Some(watts_to_dbm(self.satellite_noise)),
                b_s_hz: Some(self.satellite_bandwidth),
                f_s_hz: Some(self.satellite_carrier),
                nakagami_m: Some(self.fading.m()),
            }),
            analysis: Some(AnalysisSection {
                gamma_db: Some(linear_to_db(self.sinr_threshold)),
                rel_tol: Some(self.quadrature.rel_tol),
                abs_tol: Some(self.quadrature.abs_tol),
                max_subdivisions: Some(self.quadrature.max_subdivisions),
            }),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terrestrial: Option<TerrestrialSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mimo: Option<MimoSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satellite: Option<SatelliteSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisSection>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerrestrialSection {
    #[serde(rename = "lambda_T", default)]
    pub lambda_t: Option<f64>,
    #[serde(rename = "P_t_T_W", default)]
    pub p_t_t_w: Option<f64>,
    #[serde(default)]
    pub eta: Option<f64>,
    #[serde(rename = "sigma2_T_dBm", default)]
    pub sigma2_t_dbm: Option<f64>,
    #[serde(rename = "B_T_Hz", default)]
    pub b_t_hz: Option<f64>,
    #[serde(rename = "f_T_Hz", default)]
    pub f_t_hz: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MimoSection {
    #[serde(rename = "N_T", default)]
    pub n_t: Option<u32>,
    #[serde(rename = "M", default)]
    pub m: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatelliteSection {
    #[serde(rename = "N_S", default)]
    pub n_s: Option<u32>,
    #[serde(rename = "h_S_m", default)]
    pub h_s_m: Option<f64>,
    #[serde(rename = "R_e_m", default)]
    pub r_e_m: Option<f64>,
    #[serde(rename = "P_t_S_W", default)]
    pub p_t_s_w: Option<f64>,
    #[serde(rename = "G_So_dB", default)]
    pub g_so_db: Option<f64>,
    #[serde(rename = "G_S_dB", default)]
    pub g_s_db: Option<f64>,
    #[serde(rename = "sigma2_S_dBm", default)]
    pub sigma2_s_dbm: Option<f64>,
    #[serde(rename = "B_S_Hz", default)]
    pub b_s_hz: Option<f64>,
    #[serde(rename = "f_S_Hz", default)]
    pub f_s_hz: Option<f64>,
    #[serde(default)]
    pub nakagami_m: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    #[serde(rename = "gamma_dB", default)]
    pub gamma_db: Option<f64>,
    #[serde(default)]
    pub rel_tol: Option<f64>,
    #[serde(default)]
    pub abs_tol: Option<f64>,
    #[serde(default)]
    pub max_subdivisions: Option<usize>,
}

impl ConfigDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Fills defaults, converts units and validates.
    pub fn resolve(&self) -> Result<SystemConfig> {
        let t = self.terrestrial.clone().unwrap_or_default();
        let mi = self.mimo.clone().unwrap_or_default();
        let s = self.satellite.clone().unwrap_or_default();
        let a = self.analysis.clone().unwrap_or_default();

        let sigma_t = t.sigma2_t_dbm.unwrap_or(-140.0);
        finite("terrestrial.sigma2_T_dBm", sigma_t)?;
        let sigma_s = s.sigma2_s_dbm.unwrap_or(-135.0);
        finite("satellite.sigma2_S_dBm", sigma_s)?;
        let g_so = s.g_so_db.unwrap_or(20.0);
        finite("satellite.G_So_dB", g_so)?;
        let g_s = s.g_s_db.unwrap_or(5.0);
        finite("satellite.G_S_dB", g_s)?;
        let gamma_db = a.gamma_db.unwrap_or(0.0);
        finite("analysis.gamma_dB", gamma_db)?;

        let n_t = mi.n_t.unwrap_or(32);
        let m = mi.m.unwrap_or(16);
        let mimo = MimoConfig::new(n_t, m).map_err(|e| Error::config("mimo.M", e.to_string()))?;

        let r_e = s.r_e_m.unwrap_or(EARTH_RADIUS);
        positive("satellite.R_e_m", r_e)?;
        let h_s = s.h_s_m.unwrap_or(800e3);
        positive("satellite.h_S_m", h_s)?;
        let geometry = ConstellationGeometry::new(r_e, h_s, s.n_s.unwrap_or(300))
            .map_err(|e| Error::config("satellite.h_S_m", e.to_string()))?;

        let nakagami = s.nakagami_m.unwrap_or(2.0);
        let fading = SatelliteFading::new(nakagami)
            .map_err(|e| Error::config("satellite.nakagami_m", e.to_string()))?;

        let defaults = QuadratureSpec::default();
        let quadrature = QuadratureSpec {
            rel_tol: a.rel_tol.unwrap_or(defaults.rel_tol),
            abs_tol: a.abs_tol.unwrap_or(defaults.abs_tol),
            max_subdivisions: a.max_subdivisions.unwrap_or(defaults.max_subdivisions),
        };
        quadrature.validate().map_err(|e| {
            let path = match e {
                Error::Domain {
                    name: "abs_tol", ..
                } => "analysis.abs_tol",
                Error::Domain {
                    name: "max_subdivisions",
                    ..
                } => "analysis.max_subdivisions",
                _ => "analysis.rel_tol",
            };
            Error::config(path, e.to_string())
        })?;

        let cfg = SystemConfig {
            bs_density: t.lambda_t.unwrap_or(5e-9),
            terrestrial_power: t.p_t_t_w.unwrap_or(40.0),
            path_loss_exponent: t.eta.unwrap_or(4.0),
            terrestrial_noise: dbm_to_watts(sigma_t),
            terrestrial_bandwidth: t.b_t_hz.unwrap_or(50e6),
            terrestrial_carrier: t.f_t_hz.unwrap_or(2.5e9),
            mimo,
            geometry,
            satellite_power: s.p_t_s_w.unwrap_or(50.0),
            main_lobe_gain: db_to_linear(g_so),
            side_lobe_gain: db_to_linear(g_s),
            satellite_noise: dbm_to_watts(sigma_s),
            satellite_bandwidth: s.b_s_hz.unwrap_or(200e6),
            satellite_carrier: s.f_s_hz.unwrap_or(2e9),
            fading,
            sinr_threshold: db_to_linear(gamma_db),
            quadrature,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses and validates a JSON configuration string.
pub fn config_from_str(text: &str) -> Result<SystemConfig> {
    ConfigDocument::from_json(text)?.resolve()
}

/// Reads, parses and validates a JSON configuration file.
pub fn load_config(path: impl AsRef<Path>) -> Result<SystemConfig> {
    let text = std::fs::read_to_string(path)?;
    config_from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_reference_values() {
        let c = config_from_str("{}").unwrap();
        assert_eq!(c.geometry.satellite_count(), 300);
        assert_eq!(c.geometry.altitude(), 800e3);
        assert_eq!(c.satellite_power, 50.0);
        assert!((c.main_lobe_gain - 100.0).abs() < 1e-12);
        assert!((c.side_lobe_gain - 10f64.sqrt()).abs() < 1e-12);
        assert_eq!(c.mimo.antennas(), 32);
        assert_eq!(c.mimo.users(), 16);
        assert_eq!(c.bs_density, 5e-9);
        assert_eq!(c.path_loss_exponent, 4.0);
        assert_eq!(c.terrestrial_power, 40.0);
        assert!((c.satellite_noise - 10f64.powf(-16.5)).abs() < 1e-28);
        assert!((c.terrestrial_noise - 1e-17).abs() < 1e-29);
        assert_eq!(c.satellite_carrier, 2e9);
        assert_eq!(c.terrestrial_carrier, 2.5e9);
        assert_eq!(c.satellite_bandwidth, 200e6);
        assert_eq!(c.terrestrial_bandwidth, 50e6);
        assert_eq!(c.fading.m(), 2.0);
        assert_eq!(c.sinr_threshold, 1.0);
        assert_eq!(c, SystemConfig::default());
    }

    fn path_of(text: &str) -> String {
        match config_from_str(text) {
            Err(Error::Config { path, .. }) => path,
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn validation_errors_name_the_field() {
        assert_eq!(path_of(r#"{"mimo":{"M":40,"N_T":32}}"#), "mimo.M");
        assert_eq!(
            path_of(r#"{"satellite":{"G_S_dB":25}}"#),
            "satellite.G_S_dB"
        );
        assert_eq!(path_of(r#"{"terrestrial":{"eta":2.0}}"#), "terrestrial.eta");
        assert_eq!(path_of(r#"{"satellite":{"h_S_m":-5}}"#), "satellite.h_S_m");
        assert_eq!(path_of(r#"{"analysis":{"rel_tol":0}}"#), "analysis.rel_tol");
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(matches!(
            config_from_str(r#"{"satelite":{}}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            config_from_str(r#"{"satellite":{"N_s":3}}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn document_round_trip() {
        let c = config_from_str(
            r#"{"satellite":{"N_S":101,"nakagami_m":3},"analysis":{"gamma_dB":4.5}}"#,
        )
        .unwrap();
        let text = serde_json::to_string(&c.to_document()).unwrap();
        let back = config_from_str(&text).unwrap();
        assert_eq!(back.geometry.satellite_count(), 101);
        assert!((back.sinr_threshold - c.sinr_threshold).abs() < 1e-14 * c.sinr_threshold);
        assert!((back.terrestrial_noise - c.terrestrial_noise).abs() < 1e-14 * c.terrestrial_noise);
    }

    #[test]
    fn load_from_file() {
        let dir = std::env::temp_dir().join(format!("hybridnet-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("c.json");
        std::fs::write(&p, r#"{"terrestrial":{"lambda_T":1e-9}}"#).unwrap();
        assert_eq!(load_config(&p).unwrap().bs_density, 1e-9);
        assert!(matches!(
            load_config(dir.join("missing.json")),
            Err(Error::Io(_))
        ));
        std::fs::remove_dir_all(&dir).ok();
    }
}
