//! Reference curves and the comparison of computed values against them.
//!
//! Three figures are available. Figure 3 is coverage against the number of
//! users per cell, figure 4 coverage against the satellite count and
//! figure 5 average rate against the satellite count. Each figure has an
//! anchor point used to fit one free scalar (the SINR threshold or the
//! Nakagami parameter) before the remaining points are compared.

pub mod data;

use std::fmt;

use hybridnet_core::analytic::HybridModel;
use hybridnet_core::channel::{MimoConfig, SatelliteFading};
use hybridnet_core::config::{db_to_linear, linear_to_db, SystemConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

/// Absolute tolerance on coverage probabilities.
pub const COVERAGE_TOLERANCE: f64 = 0.03;
/// Relative tolerance on rates.
pub const RATE_TOLERANCE: f64 = 0.08;
/// Fraction of non-anchor points that must fall within tolerance.
pub const REQUIRED_PASS_FRACTION: f64 = 0.8;

/// Terrestrial and satellite noise powers of the reference curves, in watts.
///
/// The curves are reproduced with the parameter-table noise figures
/// (−140 and −135) read as dBW rather than dBm, i.e. −110 dBm and −105 dBm.
pub const REFERENCE_NOISE_W: (f64, f64) = (1e-14, 3.162_277_660_168_379_5e-14);

/// Range searched when fitting the SINR threshold, dB.
pub const GAMMA_SEARCH_DB: (f64, f64) = (-20.0, 30.0);
/// Integer Nakagami parameters tried when fitting m.
pub const NAKAGAMI_SEARCH: std::ops::RangeInclusive<u32> = 1..=5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Figure {
    /// Coverage vs users per cell.
    Users,
    /// Coverage vs satellite count.
    SatelliteCoverage,
    /// Average rate vs satellite count.
    SatelliteRate,
}

impl Figure {
    pub const ALL: [Figure; 3] = [
        Figure::Users,
        Figure::SatelliteCoverage,
        Figure::SatelliteRate,
    ];

    pub fn from_number(n: u8) -> Option<Figure> {
        match n {
            3 => Some(Figure::Users),
            4 => Some(Figure::SatelliteCoverage),
            5 => Some(Figure::SatelliteRate),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Figure::Users => 3,
            Figure::SatelliteCoverage => 4,
            Figure::SatelliteRate => 5,
        }
    }

    pub fn metric(self) -> Metric {
        match self {
            Figure::SatelliteRate => Metric::RateMbps,
            _ => Metric::Coverage,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Metric {
    /// Total coverage probability at the configured threshold.
    Coverage,
    /// Total average rate in Mbit/s.
    RateMbps,
}

/// Where a golden value sits in parameter space. Everything not listed is
/// taken from the base configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coordinate {
    pub bs_density: f64,
    pub satellites: u32,
    pub antennas: u32,
    pub users: u32,
}

impl Coordinate {
    pub fn apply(&self, base: &SystemConfig) -> Result<SystemConfig, CliError> {
        let mut cfg = base.with_satellite_count(self.satellites);
        cfg.bs_density = self.bs_density;
        cfg.mimo = MimoConfig::new(self.antennas, self.users)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lambda_T={:e} N_S={} N_T={} M={}",
            self.bs_density, self.satellites, self.antennas, self.users
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
}

impl Tolerance {
    pub fn admits(self, computed: f64, expected: f64) -> bool {
        match self {
            Tolerance::Absolute(t) => (computed - expected).abs() <= t,
            Tolerance::Relative(t) => (computed - expected).abs() <= t * expected.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoldenPoint {
    pub figure: Figure,
    pub series: &'static str,
    pub coordinate: Coordinate,
    pub expected: f64,
    pub tolerance: Tolerance,
}

fn series(
    figure: Figure,
    name: &'static str,
    table: &'static [(f64, f64)],
    coordinate: impl Fn(f64) -> Coordinate,
) -> impl Iterator<Item = GoldenPoint> {
    let tolerance = match figure.metric() {
        Metric::Coverage => Tolerance::Absolute(COVERAGE_TOLERANCE),
        Metric::RateMbps => Tolerance::Relative(RATE_TOLERANCE),
    };
    table.iter().map(move |&(x, y)| GoldenPoint {
        figure,
        series: name,
        coordinate: coordinate(x),
        expected: y,
        tolerance,
    })
}

const TABLE_ANTENNAS: u32 = 32;
const TABLE_USERS: u32 = 16;
const TABLE_SATELLITES: u32 = 300;
const TABLE_DENSITY: f64 = 5e-9;

/// Every tabulated point of a figure, in table order.
pub fn golden_set(figure: Figure) -> Vec<GoldenPoint> {
    use data::*;
    let by_users = |satellites: u32, antennas: u32| {
        move |m: f64| Coordinate {
            bs_density: TABLE_DENSITY,
            satellites,
            antennas,
            users: m as u32,
        }
    };
    let by_satellites = |bs_density: f64| {
        move |n: f64| Coordinate {
            bs_density,
            satellites: n as u32,
            antennas: TABLE_ANTENNAS,
            users: TABLE_USERS,
        }
    };
    match figure {
        Figure::Users => series(
            figure,
            "N_T=32 terrestrial",
            &USERS_TERRESTRIAL_32,
            by_users(0, 32),
        )
        .chain(series(
            figure,
            "N_T=64 terrestrial",
            &USERS_TERRESTRIAL_64,
            by_users(0, 64),
        ))
        .chain(series(
            figure,
            "N_T=32 hybrid",
            &USERS_HYBRID_32,
            by_users(TABLE_SATELLITES, 32),
        ))
        .chain(series(
            figure,
            "N_T=64 hybrid",
            &USERS_HYBRID_64,
            by_users(TABLE_SATELLITES, 64),
        ))
        .collect(),
        Figure::SatelliteCoverage => series(
            figure,
            "lambda_T=1e-9",
            &SATELLITES_COVERAGE_1E9,
            by_satellites(1e-9),
        )
        .chain(series(
            figure,
            "lambda_T=5e-9",
            &SATELLITES_COVERAGE_5E9,
            by_satellites(5e-9),
        ))
        .chain(series(
            figure,
            "lambda_T=1e-8",
            &SATELLITES_COVERAGE_1E8,
            by_satellites(1e-8),
        ))
        .collect(),
        Figure::SatelliteRate => series(
            figure,
            "lambda_T=1e-9",
            &SATELLITES_RATE_1E9,
            by_satellites(1e-9),
        )
        .chain(series(
            figure,
            "lambda_T=5e-9",
            &SATELLITES_RATE_5E9,
            by_satellites(5e-9),
        ))
        .chain(series(
            figure,
            "lambda_T=1e-8",
            &SATELLITES_RATE_1E8,
            by_satellites(1e-8),
        ))
        .collect(),
    }
}

/// The point at which a calibration scalar is fitted.
pub fn anchor(figure: Figure) -> GoldenPoint {
    let (series, satellites, antennas, users, density) = match figure {
        Figure::Users => ("N_T=32 terrestrial", 0, 32, 15, TABLE_DENSITY),
        Figure::SatelliteCoverage => ("lambda_T=1e-9", 101, TABLE_ANTENNAS, TABLE_USERS, 1e-9),
        Figure::SatelliteRate => ("lambda_T=1e-9", 100, TABLE_ANTENNAS, TABLE_USERS, 1e-9),
    };
    golden_set(figure)
        .into_iter()
        .find(|p| {
            p.series == series
                && p.coordinate.satellites == satellites
                && p.coordinate.antennas == antennas
                && p.coordinate.users == users
                && p.coordinate.bs_density == density
        })
        .expect("anchor is a tabulated point")
}

/// Reference parameters with the noise powers of the reference curves.
pub fn reference_config() -> SystemConfig {
    let mut cfg = SystemConfig::default();
    cfg.terrestrial_noise = REFERENCE_NOISE_W.0;
    cfg.satellite_noise = REFERENCE_NOISE_W.1;
    cfg
}

/// The figure's metric at one coordinate.
pub fn evaluate(
    base: &SystemConfig,
    figure: Figure,
    coordinate: &Coordinate,
) -> Result<f64, CliError> {
    let cfg = coordinate.apply(base)?;
    let model = HybridModel::new(&cfg)?;
    Ok(match figure.metric() {
        Metric::Coverage => model.coverage_total(cfg.sinr_threshold)?.p_tot.value,
        Metric::RateMbps => model.rate_total()?.r_tot.value / 1e6,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Calibration {
    /// SINR threshold, fitted in dB by golden-section search.
    Gamma,
    /// Integer Nakagami parameter, fitted by scanning.
    NakagamiM,
}

impl std::str::FromStr for Calibration {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gamma" => Ok(Calibration::Gamma),
            "m" => Ok(Calibration::NakagamiM),
            other => Err(format!(
                "unknown calibration scalar `{other}` (expected gamma or m)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CalibrationResult {
    pub parameter: Calibration,
    /// γ in dB, or m.
    pub value: f64,
    pub anchor: GoldenPoint,
    pub computed: f64,
    pub within_tolerance: bool,
}

/// Minimizes a unimodal function on [a, b].
pub fn golden_section_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn with_calibration(
    base: &SystemConfig,
    parameter: Calibration,
    value: f64,
) -> Result<SystemConfig, CliError> {
    let mut cfg = base.clone();
    match parameter {
        Calibration::Gamma => cfg.sinr_threshold = db_to_linear(value),
        Calibration::NakagamiM => cfg.fading = SatelliteFading::new(value)?,
    }
    Ok(cfg)
}

/// Fits the scalar at the figure's anchor and returns the calibrated base
/// configuration.
pub fn calibrate(
    base: &SystemConfig,
    figure: Figure,
    parameter: Calibration,
) -> Result<(SystemConfig, CalibrationResult), CliError> {
    let anchor = anchor(figure);
    if parameter == Calibration::Gamma && figure.metric() == Metric::RateMbps {
        return Err(CliError::Golden(format!(
            "figure {} reports rates, which do not depend on the SINR threshold",
            figure.number()
        )));
    }
    let miss = |cfg: &SystemConfig| -> Result<f64, CliError> {
        let v = evaluate(cfg, figure, &anchor.coordinate)?;
        Ok(match anchor.tolerance {
            Tolerance::Absolute(_) => (v - anchor.expected).abs(),
            Tolerance::Relative(_) => ((v - anchor.expected) / anchor.expected).abs(),
        })
    };
    let value = match parameter {
        Calibration::Gamma => {
            let mut failure = None;
            let v = golden_section_min(
                |db| match with_calibration(base, parameter, db).and_then(|c| miss(&c)) {
                    Ok(e) => e,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::INFINITY
                    }
                },
                GAMMA_SEARCH_DB.0,
                GAMMA_SEARCH_DB.1,
                1e-6,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            v
        }
        Calibration::NakagamiM => {
            let mut best = (f64::INFINITY, 0.0);
            for m in NAKAGAMI_SEARCH {
                let e = miss(&with_calibration(base, parameter, m as f64)?)?;
                if e < best.0 {
                    best = (e, m as f64);
                }
            }
            best.1
        }
    };
    let cfg = with_calibration(base, parameter, value)?;
    let computed = evaluate(&cfg, figure, &anchor.coordinate)?;
    let result = CalibrationResult {
        parameter,
        value,
        anchor,
        computed,
        within_tolerance: anchor.tolerance.admits(computed, anchor.expected),
    };
    Ok((cfg, result))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoldenRow {
    pub point: GoldenPoint,
    pub computed: f64,
    /// computed − expected.
    pub error: f64,
    pub pass: bool,
}

/// Matches computed values to golden points by coordinate.
///
/// Every golden point must have a computed value; a missing coordinate is
/// an error.
pub fn compare_golden(
    results: &[(Coordinate, f64)],
    golden: &[GoldenPoint],
) -> Result<Vec<GoldenRow>, CliError> {
    golden
        .iter()
        .map(|p| {
            let computed = results
                .iter()
                .find(|(c, _)| *c == p.coordinate)
                .map(|&(_, v)| v)
                .ok_or_else(|| {
                    CliError::Golden(format!("no computed value at {}", p.coordinate))
                })?;
            Ok(GoldenRow {
                point: *p,
                computed,
                error: computed - p.expected,
                pass: p.tolerance.admits(computed, p.expected),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenReport {
    pub figure: Figure,
    pub calibration: Option<CalibrationResult>,
    pub rows: Vec<GoldenRow>,
    /// Passing fraction of the rows other than the anchor, when calibrated.
    pub pass_fraction: f64,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.pass_fraction >= REQUIRED_PASS_FRACTION
    }

    pub fn compared_rows(&self) -> impl Iterator<Item = &GoldenRow> {
        let anchor = self.calibration.map(|c| c.anchor);
        self.rows.iter().filter(move |r| Some(r.point) != anchor)
    }
}

/// Evaluates every golden point of a figure (after the optional fit) and
/// compares.
pub fn run_golden(
    base: &SystemConfig,
    figure: Figure,
    calibration: Option<Calibration>,
) -> Result<GoldenReport, CliError> {
    let (cfg, calibration) = match calibration {
        Some(p) => {
            let (cfg, r) = calibrate(base, figure, p)?;
            (cfg, Some(r))
        }
        None => (base.clone(), None),
    };
    let golden = golden_set(figure);
    let results: Vec<(Coordinate, f64)> = golden
        .par_iter()
        .map(|p| evaluate(&cfg, figure, &p.coordinate).map(|v| (p.coordinate, v)))
        .collect::<Result<_, _>>()?;
    let rows = compare_golden(&results, &golden)?;
    let mut report = GoldenReport {
        figure,
        calibration,
        rows,
        pass_fraction: 0.0,
    };
    let (passed, total) = report
        .compared_rows()
        .fold((0usize, 0usize), |(p, t), r| (p + r.pass as usize, t + 1));
    report.pass_fraction = if total == 0 {
        1.0
    } else {
        passed as f64 / total as f64
    };
    Ok(report)
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "figure {}", self.figure.number())?;
        if let Some(c) = &self.calibration {
            let name = match c.parameter {
                Calibration::Gamma => "gamma_dB",
                Calibration::NakagamiM => "nakagami_m",
            };
            writeln!(
                f,
                "calibrated {name} = {:.6} at {} ({}): computed {:.6}, expected {:.6}{}",
                c.value,
                c.anchor.coordinate,
                c.anchor.series,
                c.computed,
                c.anchor.expected,
                if c.within_tolerance {
                    ""
                } else {
                    " (outside tolerance)"
                }
            )?;
        }
        writeln!(f, "series\tcoordinate\texpected\tcomputed\terror\tpass")?;
        for r in &self.rows {
            writeln!(
                f,
                "{}\t{}\t{:.6}\t{:.6}\t{:+.6}\t{}",
                r.point.series, r.point.coordinate, r.point.expected, r.computed, r.error, r.pass
            )?;
        }
        write!(
            f,
            "{:.1}% of compared points within tolerance (need {:.0}%)",
            100.0 * self.pass_fraction,
            100.0 * REQUIRED_PASS_FRACTION
        )
    }
}

/// γ in dB of a configuration, for reporting.
pub fn threshold_db(cfg: &SystemConfig) -> f64 {
    linear_to_db(cfg.sinr_threshold)
}
