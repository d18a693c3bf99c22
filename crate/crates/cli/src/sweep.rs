//! Parameter sweeps and their CSV form.
//!
//! A sweep varies one parameter of a base configuration and evaluates the
//! requested outputs with each requested engine. The CSV starts with
//! `#`-prefixed metadata lines followed by a fixed header:
//!
//! ```text
//! # hybridnet 0.1.0
//! # config_sha256 9f2c...
//! # seed 1
//! # trials 100000
//! N_S,engine,A_S,A_S_pm,P_tot,P_tot_pm,error
//! ```
//!
//! `_pm` columns hold the quadrature error bound for analytic rows and the
//! 95% half-width for Monte Carlo rows. Floats are written with 17
//! significant digits so they parse back to the same bits.

use hybridnet_core::analytic::HybridModel;
use hybridnet_core::channel::{MimoConfig, SatelliteFading};
use hybridnet_core::config::{db_to_linear, SystemConfig};
use hybridnet_core::montecarlo::{
    association_from, coverage_from, rate_from, run_trials, MonteCarloConfig,
};
use hybridnet_core::Estimate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{CliError, VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParameter {
    #[serde(rename = "N_S")]
    SatelliteCount,
    #[serde(rename = "lambda_T")]
    BsDensity,
    #[serde(rename = "M")]
    Users,
    #[serde(rename = "N_T")]
    Antennas,
    #[serde(rename = "P_t_S_W")]
    SatellitePower,
    #[serde(rename = "gamma_dB")]
    ThresholdDb,
    #[serde(rename = "nakagami_m")]
    NakagamiM,
    #[serde(rename = "h_S_m")]
    Altitude,
}

impl SweepParameter {
    pub fn key(self) -> &'static str {
        match self {
            SweepParameter::SatelliteCount => "N_S",
            SweepParameter::BsDensity => "lambda_T",
            SweepParameter::Users => "M",
            SweepParameter::Antennas => "N_T",
            SweepParameter::SatellitePower => "P_t_S_W",
            SweepParameter::ThresholdDb => "gamma_dB",
            SweepParameter::NakagamiM => "nakagami_m",
            SweepParameter::Altitude => "h_S_m",
        }
    }

    fn is_integer(self) -> bool {
        matches!(
            self,
            SweepParameter::SatelliteCount | SweepParameter::Users | SweepParameter::Antennas
        )
    }

    /// The base configuration with this parameter set to `value`, validated.
    pub fn apply(self, base: &SystemConfig, value: f64) -> Result<SystemConfig, CliError> {
        if self.is_integer() && !(value >= 0.0 && value.fract() == 0.0 && value <= u32::MAX as f64)
        {
            return Err(CliError::Sweep(format!(
                "{} must be a non-negative integer, got {value}",
                self.key()
            )));
        }
        let mut cfg = base.clone();
        match self {
            SweepParameter::SatelliteCount => cfg = base.with_satellite_count(value as u32),
            SweepParameter::BsDensity => cfg.bs_density = value,
            SweepParameter::Users => {
                cfg.mimo = MimoConfig::new(base.mimo.antennas(), value as u32)?
            }
            SweepParameter::Antennas => {
                cfg.mimo = MimoConfig::new(value as u32, base.mimo.users())?
            }
            SweepParameter::SatellitePower => cfg.satellite_power = value,
            SweepParameter::ThresholdDb => cfg.sinr_threshold = db_to_linear(value),
            SweepParameter::NakagamiM => cfg.fading = SatelliteFading::new(value)?,
            SweepParameter::Altitude => {
                let g = &base.geometry;
                cfg.geometry = hybridnet_core::geometry::ConstellationGeometry::new(
                    g.earth_radius(),
                    value,
                    g.satellite_count(),
                )?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn format_value(self, v: f64) -> String {
        if self.is_integer() {
            format!("{}", v as u64)
        } else {
            format_float(v)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepValues {
    List(Vec<f64>),
    Range {
        start: f64,
        stop: f64,
        count: usize,
        #[serde(default)]
        scale: Scale,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Output {
    #[serde(rename = "A_S")]
    AssociationSatellite,
    #[serde(rename = "A_T")]
    AssociationTerrestrial,
    #[serde(rename = "P_cov_T")]
    CoverageTerrestrial,
    #[serde(rename = "P_cov_S")]
    CoverageSatellite,
    #[serde(rename = "P_tot")]
    CoverageTotal,
    #[serde(rename = "R_T")]
    RateTerrestrial,
    #[serde(rename = "R_S")]
    RateSatellite,
    #[serde(rename = "R_tot")]
    RateTotal,
}

impl Output {
    pub const ALL: [Output; 8] = [
        Output::AssociationSatellite,
        Output::AssociationTerrestrial,
        Output::CoverageTerrestrial,
        Output::CoverageSatellite,
        Output::CoverageTotal,
        Output::RateTerrestrial,
        Output::RateSatellite,
        Output::RateTotal,
    ];

    pub fn column(self) -> &'static str {
        match self {
            Output::AssociationSatellite => "A_S",
            Output::AssociationTerrestrial => "A_T",
            Output::CoverageTerrestrial => "P_cov_T",
            Output::CoverageSatellite => "P_cov_S",
            Output::CoverageTotal => "P_tot",
            Output::RateTerrestrial => "R_T",
            Output::RateSatellite => "R_S",
            Output::RateTotal => "R_tot",
        }
    }

    fn is_coverage(self) -> bool {
        matches!(
            self,
            Output::CoverageTerrestrial | Output::CoverageSatellite | Output::CoverageTotal
        )
    }

    fn is_rate(self) -> bool {
        matches!(
            self,
            Output::RateTerrestrial | Output::RateSatellite | Output::RateTotal
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Analytic,
    #[serde(alias = "mc")]
    Montecarlo,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Analytic => "analytic",
            Engine::Montecarlo => "montecarlo",
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "analytic" => Ok(Engine::Analytic),
            "mc" | "montecarlo" => Ok(Engine::Montecarlo),
            other => Err(format!("unknown engine `{other}`")),
        }
    }
}

fn all_outputs() -> Vec<Output> {
    Output::ALL.to_vec()
}

fn analytic_only() -> Vec<Engine> {
    vec![Engine::Analytic]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: SweepValues,
    #[serde(default = "all_outputs")]
    pub outputs: Vec<Output>,
    #[serde(default = "analytic_only")]
    pub engines: Vec<Engine>,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Sweep(format!("could not parse sweep: {e}")))
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, CliError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The sweep points in order.
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let points = match &self.values {
            SweepValues::List(v) => v.clone(),
            &SweepValues::Range {
                start,
                stop,
                count,
                scale,
            } => {
                if count == 0 {
                    return Err(CliError::Sweep("count must be at least 1".into()));
                }
                if scale == Scale::Log && !(start > 0.0 && stop > 0.0) {
                    return Err(CliError::Sweep(
                        "log-spaced ranges need positive endpoints".into(),
                    ));
                }
                let steps = count.saturating_sub(1).max(1) as f64;
                (0..count)
                    .map(|i| {
                        let i = i as f64;
                        let v = match scale {
                            Scale::Linear => start + (stop - start) * i / steps,
                            Scale::Log => (start.ln() + (stop.ln() - start.ln()) * i / steps).exp(),
                        };
                        // integer parameters should land on integers despite rounding
                        let r = v.round();
                        if self.parameter.is_integer() && (v - r).abs() <= 1e-9 * r.abs().max(1.0) {
                            r
                        } else {
                            v
                        }
                    })
                    .collect()
            }
        };
        if points.is_empty() {
            return Err(CliError::Sweep("values must not be empty".into()));
        }
        if points.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Sweep("values must be finite".into()));
        }
        let increasing = points.windows(2).all(|w| w[0] < w[1]);
        let decreasing = points.windows(2).all(|w| w[0] > w[1]);
        if !(increasing || decreasing) {
            return Err(CliError::Sweep("values must be strictly monotone".into()));
        }
        Ok(points)
    }

    /// Checks the spec and that every point yields a valid configuration.
    pub fn validate(&self, base: &SystemConfig) -> Result<Vec<f64>, CliError> {
        if self.outputs.is_empty() {
            return Err(CliError::Sweep("outputs must not be empty".into()));
        }
        if self.engines.is_empty() {
            return Err(CliError::Sweep("engines must not be empty".into()));
        }
        let points = self.points()?;
        for &v in &points {
            self.parameter
                .apply(base, v)
                .map_err(|e| CliError::Sweep(format!("{} = {}: {e}", self.parameter.key(), v)))?;
        }
        Ok(points)
    }
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// SHA-256 of the configuration's canonical JSON document.
pub fn config_digest(cfg: &SystemConfig) -> String {
    let doc = serde_json::to_string(&cfg.to_document()).expect("config documents serialize");
    hex::encode(Sha256::digest(doc.as_bytes()))
}

type Row = Result<Vec<Option<Estimate>>, String>;

fn analytic_row(cfg: &SystemConfig, outputs: &[Output]) -> Row {
    let run = || -> Result<Vec<Option<Estimate>>, hybridnet_core::Error> {
        let model = HybridModel::new(cfg)?;
        let coverage = if outputs.iter().any(|o| o.is_coverage()) {
            Some(model.coverage_total(cfg.sinr_threshold)?)
        } else {
            None
        };
        let rate = if outputs.iter().any(|o| o.is_rate()) {
            Some(model.rate_total()?)
        } else {
            None
        };
        Ok(outputs
            .iter()
            .map(|o| match o {
                Output::AssociationSatellite => Some(model.association_satellite()),
                Output::AssociationTerrestrial => Some(model.association_terrestrial()),
                Output::CoverageTerrestrial => coverage.map(|c| c.p_cov_t),
                Output::CoverageSatellite => coverage.map(|c| c.p_cov_s),
                Output::CoverageTotal => coverage.map(|c| c.p_tot),
                Output::RateTerrestrial => rate.map(|r| r.r_t),
                Output::RateSatellite => rate.map(|r| r.r_s),
                Output::RateTotal => rate.map(|r| r.r_tot),
            })
            .collect())
    };
    run().map_err(|e| e.to_string())
}

fn montecarlo_row(cfg: &SystemConfig, outputs: &[Output], mc: &MonteCarloConfig) -> Row {
    let outcomes = run_trials(cfg, mc).map_err(|e| e.to_string())?;
    let a = association_from(&outcomes);
    let c = coverage_from(&outcomes, cfg.sinr_threshold);
    let r = rate_from(&outcomes);
    Ok(outputs
        .iter()
        .map(|o| {
            Some(match o {
                Output::AssociationSatellite => a.a_s,
                Output::AssociationTerrestrial => a.a_t,
                Output::CoverageTerrestrial => c.terrestrial,
                Output::CoverageSatellite => c.satellite,
                Output::CoverageTotal => c.total,
                Output::RateTerrestrial => r.terrestrial,
                Output::RateSatellite => r.satellite,
                Output::RateTotal => r.total,
            })
        })
        .collect())
}

/// Runs the sweep and renders the CSV document. Per-point failures land in
/// the `error` column; only an invalid spec fails the whole run.
pub fn run_sweep(
    base: &SystemConfig,
    spec: &SweepSpec,
    mc: &MonteCarloConfig,
) -> Result<String, CliError> {
    let points = spec.validate(base)?;
    let rows: Vec<Vec<(Engine, Row)>> = points
        .par_iter()
        .map(|&v| {
            let cfg = spec.parameter.apply(base, v).expect("validated above");
            spec.engines
                .iter()
                .map(|&engine| {
                    let row = match engine {
                        Engine::Analytic => analytic_row(&cfg, &spec.outputs),
                        Engine::Montecarlo => montecarlo_row(&cfg, &spec.outputs, mc),
                    };
                    (engine, row)
                })
                .collect()
        })
        .collect();

    let mut out = String::new();
    out.push_str(&format!("# hybridnet {VERSION}\n"));
    out.push_str(&format!("# config_sha256 {}\n", config_digest(base)));
    out.push_str(&format!("# seed {}\n", mc.seed));
    out.push_str(&format!("# trials {}\n", mc.trials));

    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut header = vec![spec.parameter.key().to_string(), "engine".to_string()];
    for o in &spec.outputs {
        header.push(o.column().to_string());
        header.push(format!("{}_pm", o.column()));
    }
    header.push("error".to_string());
    writer.write_record(&header)?;

    for (&v, point_rows) in points.iter().zip(&rows) {
        for (engine, row) in point_rows {
            let mut record = vec![spec.parameter.format_value(v), engine.name().to_string()];
            match row {
                Ok(values) => {
                    for e in values {
                        match e {
                            Some(e) => {
                                record.push(format_float(e.value));
                                record.push(format_float(e.half_width));
                            }
                            None => {
                                record.push(String::new());
                                record.push(String::new());
                            }
                        }
                    }
                    record.push(String::new());
                }
                Err(msg) => {
                    record.extend(std::iter::repeat_n(String::new(), 2 * spec.outputs.len()));
                    record.push(msg.clone());
                }
            }
            writer.write_record(&record)?;
        }
    }
    let body = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.into_error()))?;
    out.push_str(std::str::from_utf8(&body).expect("csv output is utf-8"));
    Ok(out)
}

/// One parsed data row of a sweep CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub parameter: f64,
    pub engine: String,
    /// (column, value, half-width); `None` where the cell was empty.
    pub values: Vec<(String, Option<(f64, f64)>)>,
    pub error: Option<String>,
}

/// Parses a document produced by [`run_sweep`].
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRecord>, CliError> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.len() < 3
        || header[1] != "engine"
        || header.last().map(String::as_str) != Some("error")
    {
        return Err(CliError::Sweep("unrecognised sweep header".into()));
    }
    let outputs = (header.len() - 3) / 2;
    let parse = |s: &str| -> Result<f64, CliError> {
        s.parse::<f64>()
            .map_err(|e| CliError::Sweep(format!("bad number `{s}`: {e}")))
    };
    reader
        .records()
        .map(|rec| {
            let rec = rec?;
            let mut values = Vec::with_capacity(outputs);
            for k in 0..outputs {
                let (v, pm) = (&rec[2 + 2 * k], &rec[3 + 2 * k]);
                let cell = if v.is_empty() {
                    None
                } else {
                    Some((parse(v)?, parse(pm)?))
                };
                values.push((header[2 + 2 * k].clone(), cell));
            }
            let error = &rec[rec.len() - 1];
            Ok(SweepRecord {
                parameter: parse(&rec[0])?,
                engine: rec[1].to_string(),
                values,
                error: (!error.is_empty()).then(|| error.to_string()),
            })
        })
        .collect()
}
