//! Monte Carlo against closed-form cross-checks.

use std::f64::consts::LN_2;
use std::fmt;

use hybridnet_core::analytic::HybridModel;
use hybridnet_core::config::{db_to_linear, SystemConfig};
use hybridnet_core::montecarlo::{
    association_from, contact_angle_ks, coverage_from, mean_satellite_interference_mc, rate_from,
    serving_distributions_from, Association, MonteCarloConfig, Simulator, TrialOutcome,
};
use serde::Serialize;

use crate::CliError;

pub const ASSOCIATION_FLOOR: f64 = 0.01;
pub const COVERAGE_FLOOR: f64 = 0.02;
pub const RATE_RELATIVE_SLACK: f64 = 0.03;
pub const KS_LIMIT: f64 = 0.02;
pub const TERRESTRIAL_COVERAGE_TOLERANCE: f64 = 0.015;
pub const SATELLITE_COVERAGE_TOLERANCE: f64 = 0.03;
pub const INTERFERENCE_RELATIVE_TOLERANCE: f64 = 0.02;

/// Threshold grid for coverage comparisons: 10 points evenly spaced in dB
/// from −10 dB to 20 dB.
pub fn threshold_grid_db() -> Vec<f64> {
    (0..10).map(|i| -10.0 + 30.0 * i as f64 / 9.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub simulated: f64,
    pub half_width: f64,
    pub analytic: f64,
    /// Largest admissible |simulated − analytic|.
    pub allowed: f64,
    pub pass: bool,
}

impl Check {
    fn new(
        name: impl Into<String>,
        simulated: f64,
        half_width: f64,
        analytic: f64,
        allowed: f64,
    ) -> Check {
        Check {
            name: name.into(),
            simulated,
            half_width,
            analytic,
            allowed,
            pass: (simulated - analytic).abs() <= allowed,
        }
    }

    /// A statistic that must stay below a limit.
    fn below(name: impl Into<String>, statistic: f64, limit: f64) -> Check {
        Check {
            name: name.into(),
            simulated: statistic,
            half_width: 0.0,
            analytic: 0.0,
            allowed: limit,
            pass: statistic < limit,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: simulated {:.6e} ± {:.2e}, analytic {:.6e}, |diff| {:.3e} (allowed {:.3e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.simulated,
            self.half_width,
            self.analytic,
            (self.simulated - self.analytic).abs(),
            self.allowed
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation {
    pub association: Vec<Check>,
    pub coverage: Vec<Check>,
    pub rate: Vec<Check>,
    pub distributions: Vec<Check>,
    pub conditional: Vec<Check>,
    /// Fraction of trials with neither a BS in the disk nor a visible satellite.
    pub outage: f64,
    pub region_radius: f64,
}

impl CrossValidation {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.association
            .iter()
            .chain(&self.coverage)
            .chain(&self.rate)
            .chain(&self.distributions)
            .chain(&self.conditional)
    }

    pub fn passed(&self) -> bool {
        self.checks().all(|c| c.pass)
    }
}

impl fmt::Display for CrossValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "BS disk radius {:.0} m, outage fraction {:.2e}",
            self.region_radius, self.outage
        )?;
        for c in self.checks() {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "all checks passed"
            } else {
                "some checks failed"
            }
        )
    }
}

/// (B/ln2)·∫ P[SINR > t]/(1+t) dt for the trials of one tier, by the
/// trapezoid rule on y = ln(1+t) over the empirical coverage curve.
pub fn rate_from_coverage_curve(
    outcomes: &[TrialOutcome],
    tier: Association,
    bandwidth: f64,
) -> f64 {
    let mut y: Vec<f64> = outcomes
        .iter()
        .filter(|o| o.association == tier)
        .map(|o| o.sinr.ln_1p())
        .collect();
    if y.is_empty() {
        return 0.0;
    }
    y.sort_by(f64::total_cmp);
    let n = y.len() as f64;
    let top = *y.last().expect("non-empty");
    let steps = 4000;
    let h = top / steps as f64;
    let mut idx = 0;
    let mut survival = |t: f64| {
        while idx < y.len() && y[idx] <= t {
            idx += 1;
        }
        (y.len() - idx) as f64 / n
    };
    let mut integral = 0.0;
    let mut prev = survival(0.0);
    for k in 1..=steps {
        let s = survival(k as f64 * h);
        integral += 0.5 * h * (prev + s);
        prev = s;
    }
    bandwidth / LN_2 * integral
}

/// Runs the simulator once and compares everything it estimates against
/// the closed forms.
pub fn cross_validate(
    cfg: &SystemConfig,
    mc: &MonteCarloConfig,
) -> Result<CrossValidation, CliError> {
    let model = HybridModel::new(cfg)?;
    let sim = Simulator::new(cfg, mc)?;
    let outcomes = sim.run();

    let a = association_from(&outcomes);
    let a_s = model.association_satellite().value;
    let association = vec![Check::new(
        "A_S",
        a.a_s.value,
        a.a_s.half_width,
        a_s,
        a.a_s.half_width.max(ASSOCIATION_FLOOR),
    )];

    let mut coverage = Vec::new();
    for db in threshold_grid_db() {
        let g = db_to_linear(db);
        let sim = coverage_from(&outcomes, g).total;
        let an = model.coverage_total(g)?.p_tot.value;
        coverage.push(Check::new(
            format!("P_tot at {db:.2} dB"),
            sim.value,
            sim.half_width,
            an,
            sim.half_width.max(COVERAGE_FLOOR),
        ));
    }

    let r = rate_from(&outcomes);
    let ar = model.rate_total()?;
    let allowed = r.total.half_width + RATE_RELATIVE_SLACK * ar.r_tot.value;
    let curve = rate_from_coverage_curve(
        &outcomes,
        Association::Terrestrial,
        cfg.terrestrial_bandwidth,
    ) * a.a_t.value
        + rate_from_coverage_curve(&outcomes, Association::Satellite, cfg.satellite_bandwidth)
            * a.a_s.value;
    let rate = vec![
        Check::new(
            "R_tot",
            r.total.value,
            r.total.half_width,
            ar.r_tot.value,
            allowed,
        ),
        Check::new(
            "R_tot from coverage curve",
            curve,
            r.total.half_width,
            ar.r_tot.value,
            allowed,
        ),
    ];

    let d = serving_distributions_from(&model, &outcomes)?;
    let mut distributions = vec![
        Check::below(
            "KS terrestrial serving distance",
            d.ks_terrestrial,
            KS_LIMIT,
        ),
        Check::below("KS satellite serving angle", d.ks_satellite, KS_LIMIT),
    ];
    if cfg.geometry.satellite_count() > 0 {
        let ks = contact_angle_ks(
            &cfg.geometry,
            mc.constellation_mode,
            mc.trials,
            mc.seed ^ 0x5a71,
        );
        distributions.push(Check::below("KS contact angle", ks, KS_LIMIT));
    }

    let gamma = cfg.sinr_threshold;
    let c = coverage_from(&outcomes, gamma);
    let interference = mean_satellite_interference_mc(
        cfg,
        mc.constellation_mode,
        0.0,
        mc.trials,
        mc.seed ^ 0x1b5,
    )?;
    let analytic_interference = model.mean_satellite_interference(0.0)?.value;
    let conditional = vec![
        Check::new(
            "P_cov_T at configured threshold",
            c.terrestrial.value,
            c.terrestrial.half_width,
            model.coverage_conditional_terrestrial(gamma)?.value,
            TERRESTRIAL_COVERAGE_TOLERANCE,
        ),
        Check::new(
            "P_cov_S at configured threshold",
            c.satellite.value,
            c.satellite.half_width,
            model.coverage_conditional_satellite(gamma)?.value,
            SATELLITE_COVERAGE_TOLERANCE,
        ),
        Check::new(
            "mean satellite interference at nadir",
            interference.value,
            interference.half_width,
            analytic_interference,
            INTERFERENCE_RELATIVE_TOLERANCE * analytic_interference,
        ),
    ];

    Ok(CrossValidation {
        association,
        coverage,
        rate,
        distributions,
        conditional,
        outage: a.outage.value,
        region_radius: sim.region_radius(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spans_ten_points() {
        let g = threshold_grid_db();
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], -10.0);
        assert!((g[9] - 20.0).abs() < 1e-12);
    }

    #[test]
    fn curve_rate_of_constant_sinr() {
        let o = TrialOutcome {
            association: Association::Terrestrial,
            serving: 1.0,
            sinr: 3.0,
            rate: 0.0,
            contact_angle: f64::NAN,
        };
        // P[ln(1+SINR) > y] = 1 on [0, ln 4)
        let r = rate_from_coverage_curve(&[o; 10], Association::Terrestrial, LN_2);
        assert!((r - 4f64.ln()).abs() < 1e-3);
    }
}
