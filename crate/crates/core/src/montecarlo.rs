//! Monte Carlo simulation of the hybrid downlink.
//!
//! Each trial drops a Poisson field of BSs in a disk around the typical user
//! and a constellation on the orbital sphere, associates by mean received
//! power, draws fading and evaluates the SINR with exact interference sums.
//!
//! Trials are split into fixed-size blocks. Block `b` draws from ChaCha8
//! seeded with the run seed on stream `b`, and blocks are reassembled in
//! order, so results do not depend on how many worker threads ran them.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Gamma, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::HybridModel;
use crate::channel::gamma_distribution;
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::geometry::{free_space_constant, ConstellationGeometry};

/// Trials per generator block.
pub const BLOCK_SIZE: u64 = 1000;

/// Smallest number of conditioned samples accepted for a KS comparison.
pub const MIN_CONDITIONED_SAMPLES: usize = 100;

/// Largest tolerated ratio of expected interference beyond the simulation
/// disk to the expected interference inside it.
pub const TAIL_INTERFERENCE_BOUND: f64 = 1e-3;

/// Radius used when it already satisfies the tail bound.
pub const DEFAULT_BS_REGION_RADIUS: f64 = 300e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ConstellationMode {
    /// Exactly N_S satellites, uniform on the sphere.
    #[default]
    FixedCount,
    /// Poisson(N_S) satellites, uniform on the sphere.
    PoissonCount,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub trials: u64,
    pub seed: u64,
    /// Radius of the BS disk in metres. `None` picks the larger of
    /// [`DEFAULT_BS_REGION_RADIUS`] and the smallest radius meeting the tail
    /// bound.
    pub bs_region_radius: Option<f64>,
    pub constellation_mode: ConstellationMode,
    pub exact_satellite_interference: bool,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            trials: 100_000,
            seed: 0,
            bs_region_radius: None,
            constellation_mode: ConstellationMode::FixedCount,
            exact_satellite_interference: true,
        }
    }
}

impl MonteCarloConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        MonteCarloConfig {
            trials,
            seed,
            ..Default::default()
        }
    }

    /// Disk radius to simulate, checked against the tail bound.
    pub fn region_radius(&self, cfg: &SystemConfig) -> Result<f64> {
        let needed = minimum_region_radius(cfg);
        match self.bs_region_radius {
            None => Ok(DEFAULT_BS_REGION_RADIUS.max(needed)),
            Some(r) => {
                if !(r > 0.0 && r.is_finite()) {
                    return Err(Error::domain("bs_region_radius", r, "must be positive"));
                }
                if cfg.bs_density > 0.0
                    && tail_interference_ratio(cfg, r) >= TAIL_INTERFERENCE_BOUND
                {
                    return Err(Error::domain(
                        "bs_region_radius",
                        r,
                        "interference beyond the disk exceeds 0.1% of the in-disk mean",
                    ));
                }
                Ok(r)
            }
        }
    }
}

/// Typical nearest-BS distance 1/(2√λ), the inner edge of the in-disk
/// interference integral in the tail check.
fn reference_distance(cfg: &SystemConfig) -> f64 {
    0.5 / cfg.bs_density.sqrt()
}

/// Expected interference beyond radius R over that between the reference
/// distance and R:
/// ∫_R^∞ r^{1−η} dr / ∫_{r_ref}^R r^{1−η} dr (the 2πλ P_T M factors cancel).
pub fn tail_interference_ratio(cfg: &SystemConfig, radius: f64) -> f64 {
    let k = 2.0 - cfg.path_loss_exponent;
    let r_ref = reference_distance(cfg);
    if radius <= r_ref {
        return f64::INFINITY;
    }
    let tail = radius.powf(k);
    tail / (r_ref.powf(k) - tail)
}

/// Smallest radius whose tail ratio is below the bound, rounded up to 1 m.
pub fn minimum_region_radius(cfg: &SystemConfig) -> f64 {
    if cfg.bs_density == 0.0 {
        return 0.0;
    }
    // (r_ref/R)^{η−2} ≤ b/(1+b)
    let b = TAIL_INTERFERENCE_BOUND;
    let q = (b / (1.0 + b)).powf(1.0 / (cfg.path_loss_exponent - 2.0));
    (reference_distance(cfg) / q).ceil() + 1.0
}

/// Sorted distances of a Poisson field of density λ_T in the disk of the
/// given radius around the origin.
pub fn sample_bs_field<R: Rng + ?Sized>(cfg: &SystemConfig, radius: f64, rng: &mut R) -> Vec<f64> {
    let mut d = unsorted_bs_field(cfg.bs_density, radius, rng);
    d.sort_by(f64::total_cmp);
    d
}

fn poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    let p = Poisson::new(mean).expect("positive finite mean");
    p.sample(rng) as u64
}

fn unsorted_bs_field<R: Rng + ?Sized>(density: f64, radius: f64, rng: &mut R) -> Vec<f64> {
    let n = poisson_count(density * PI * radius * radius, rng);
    (0..n)
        .map(|_| radius * rng.random::<f64>().sqrt())
        .collect()
}

/// Sorted zenith angles of the satellites above the horizon.
///
/// Each satellite lands in the visible cap with probability (1 − cos φ_max)/2
/// and, inside the cap, has cos φ uniform on [cos φ_max, 1]. Drawing the
/// visible count first and placing only those satellites gives the same law
/// as placing all of them and discarding the hidden ones.
pub fn sample_constellation<R: Rng + ?Sized>(
    geom: &ConstellationGeometry,
    mode: ConstellationMode,
    rng: &mut R,
) -> Vec<f64> {
    let mut v = unsorted_constellation(geom, mode, rng);
    v.sort_by(f64::total_cmp);
    v
}

fn unsorted_constellation<R: Rng + ?Sized>(
    geom: &ConstellationGeometry,
    mode: ConstellationMode,
    rng: &mut R,
) -> Vec<f64> {
    let n = geom.satellite_count() as u64;
    if n == 0 {
        return Vec::new();
    }
    let cap = 0.5 * (1.0 - geom.alpha());
    let visible = match mode {
        ConstellationMode::FixedCount => Binomial::new(n, cap)
            .expect("valid probability")
            .sample(rng),
        ConstellationMode::PoissonCount => poisson_count(n as f64 * cap, rng),
    };
    let alpha = geom.alpha();
    (0..visible)
        .map(|_| {
            let u: f64 = rng.random();
            // cos φ uniform on [α, 1]; written via 1 − cos φ for accuracy near nadir
            let one_minus_cos = u * (1.0 - alpha);
            2.0 * (0.5 * one_minus_cos).sqrt().asin()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Association {
    Terrestrial,
    Satellite,
    Outage,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub association: Association,
    /// Serving distance in metres (terrestrial) or zenith angle in radians
    /// (satellite); NaN on outage.
    pub serving: f64,
    pub sinr: f64,
    /// B·log2(1 + SINR) of the serving tier, bit/s.
    pub rate: f64,
    /// Smallest visible zenith angle, NaN if no satellite is visible.
    pub contact_angle: f64,
}

/// Pre-built samplers and constants for one (cfg, mc) pair.
pub struct Simulator {
    cfg: SystemConfig,
    mc: MonteCarloConfig,
    radius: f64,
    lo: f64,
    serving_t: Gamma<f64>,
    interferer_t: Gamma<f64>,
    fading_s: Gamma<f64>,
    model: Option<HybridModel>,
}

impl Simulator {
    pub fn new(cfg: &SystemConfig, mc: &MonteCarloConfig) -> Result<Self> {
        cfg.validate()?;
        if mc.trials == 0 {
            return Err(Error::domain("trials", 0.0, "at least one trial"));
        }
        let radius = mc.region_radius(cfg)?;
        let m = cfg.fading.m();
        let model = if mc.exact_satellite_interference {
            None
        } else {
            Some(HybridModel::new(cfg)?)
        };
        Ok(Simulator {
            cfg: cfg.clone(),
            mc: mc.clone(),
            radius,
            lo: free_space_constant(cfg.satellite_carrier),
            serving_t: gamma_distribution(cfg.mimo.serving_shape() as f64, 1.0)?,
            interferer_t: gamma_distribution(cfg.mimo.interferer_shape() as f64, 1.0)?,
            fading_s: gamma_distribution(m, 1.0 / m)?,
            model,
        })
    }

    pub fn region_radius(&self) -> f64 {
        self.radius
    }

    fn satellite_gain(&self, phi: f64) -> f64 {
        self.lo / self.cfg.geometry.slant_distance_sq_unchecked(phi)
    }

    pub fn simulate_trial<R: Rng + ?Sized>(&self, rng: &mut R) -> TrialOutcome {
        let cfg = &self.cfg;
        let eta = cfg.path_loss_exponent;
        let bs = unsorted_bs_field(cfg.bs_density, self.radius, rng);
        let sats = unsorted_constellation(&cfg.geometry, self.mc.constellation_mode, rng);

        let nearest_bs = argmin(&bs);
        let nearest_sat = argmin(&sats);
        let contact_angle = nearest_sat.map_or(f64::NAN, |i| sats[i]);

        let mean_t = nearest_bs
            .map(|i| cfg.terrestrial_power * bs[i].powf(-eta) * cfg.mimo.serving_shape() as f64);
        let mean_s = nearest_sat
            .map(|j| cfg.satellite_power * cfg.main_lobe_gain * self.satellite_gain(sats[j]));

        let satellite = match (mean_t, mean_s) {
            (None, None) => {
                return TrialOutcome {
                    association: Association::Outage,
                    serving: f64::NAN,
                    sinr: 0.0,
                    rate: 0.0,
                    contact_angle,
                }
            }
            (Some(_), None) => false,
            (None, Some(_)) => true,
            (Some(t), Some(s)) => s > t,
        };

        if satellite {
            let j = nearest_sat.expect("satellite candidate present");
            let phi = sats[j];
            let signal = cfg.satellite_power
                * cfg.main_lobe_gain
                * self.satellite_gain(phi)
                * self.fading_s.sample(rng);
            let interference = match &self.model {
                Some(model) => model.mean_satellite_interference_closed(phi),
                None => sats
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &p)| {
                        cfg.satellite_power
                            * cfg.side_lobe_gain
                            * self.satellite_gain(p)
                            * self.fading_s.sample(rng)
                    })
                    .sum(),
            };
            let sinr = signal / (interference + cfg.satellite_noise);
            TrialOutcome {
                association: Association::Satellite,
                serving: phi,
                sinr,
                rate: cfg.satellite_bandwidth * sinr.ln_1p() / std::f64::consts::LN_2,
                contact_angle,
            }
        } else {
            let i = nearest_bs.expect("terrestrial candidate present");
            let r = bs[i];
            let signal = cfg.terrestrial_power * r.powf(-eta) * self.serving_t.sample(rng);
            let interference: f64 = bs
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &d)| cfg.terrestrial_power * d.powf(-eta) * self.interferer_t.sample(rng))
                .sum();
            let sinr = signal / (interference + cfg.terrestrial_noise);
            TrialOutcome {
                association: Association::Terrestrial,
                serving: r,
                sinr,
                rate: cfg.terrestrial_bandwidth * sinr.ln_1p() / std::f64::consts::LN_2,
                contact_angle,
            }
        }
    }

    /// Runs every block on the current rayon pool; output is in trial order.
    pub fn run(&self) -> Vec<TrialOutcome> {
        run_blocks(self.mc.trials, self.mc.seed, |rng, n| {
            (0..n).map(|_| self.simulate_trial(rng)).collect()
        })
    }
}

/// Splits `trials` into blocks, runs `f(rng, block_len)` per block with an
/// independent stream, and concatenates the results in block order.
pub fn run_blocks<T, F>(trials: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> Vec<T> + Sync,
{
    let blocks = trials.div_ceil(BLOCK_SIZE);
    let parts: Vec<Vec<T>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let len = BLOCK_SIZE.min(trials - b * BLOCK_SIZE);
            f(&mut rng, len)
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Generator for block `b` of a run seeded with `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn argmin(v: &[f64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
}

/// Convenience wrapper: one trial from a fresh simulator.
pub fn simulate_trial<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    mc: &MonteCarloConfig,
    rng: &mut R,
) -> Result<TrialOutcome> {
    Ok(Simulator::new(cfg, mc)?.simulate_trial(rng))
}

pub fn run_trials(cfg: &SystemConfig, mc: &MonteCarloConfig) -> Result<Vec<TrialOutcome>> {
    Ok(Simulator::new(cfg, mc)?.run())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AssociationEstimate {
    pub a_t: Estimate,
    pub a_s: Estimate,
    pub outage: Estimate,
}

pub fn association_from(outcomes: &[TrialOutcome]) -> AssociationEstimate {
    let n = outcomes.len() as u64;
    let count = |a| outcomes.iter().filter(|o| o.association == a).count() as u64;
    AssociationEstimate {
        a_t: Estimate::proportion(count(Association::Terrestrial), n),
        a_s: Estimate::proportion(count(Association::Satellite), n),
        outage: Estimate::proportion(count(Association::Outage), n),
    }
}

pub fn estimate_association(
    cfg: &SystemConfig,
    mc: &MonteCarloConfig,
) -> Result<AssociationEstimate> {
    Ok(association_from(&run_trials(cfg, mc)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageEstimate {
    pub gamma: f64,
    /// Over all trials; outage trials count as uncovered.
    pub total: Estimate,
    pub terrestrial: Estimate,
    pub satellite: Estimate,
    pub outage: Estimate,
}

pub fn coverage_from(outcomes: &[TrialOutcome], gamma: f64) -> CoverageEstimate {
    let covered = |o: &TrialOutcome| o.association != Association::Outage && o.sinr >= gamma;
    let tier = |a: Association| {
        let in_tier: Vec<&TrialOutcome> = outcomes.iter().filter(|o| o.association == a).collect();
        Estimate::proportion(
            in_tier.iter().filter(|o| covered(o)).count() as u64,
            in_tier.len() as u64,
        )
    };
    let n = outcomes.len() as u64;
    CoverageEstimate {
        gamma,
        total: Estimate::proportion(outcomes.iter().filter(|o| covered(o)).count() as u64, n),
        terrestrial: tier(Association::Terrestrial),
        satellite: tier(Association::Satellite),
        outage: Estimate::proportion(
            outcomes
                .iter()
                .filter(|o| o.association == Association::Outage)
                .count() as u64,
            n,
        ),
    }
}

pub fn estimate_coverage(
    cfg: &SystemConfig,
    mc: &MonteCarloConfig,
    gamma: f64,
) -> Result<CoverageEstimate> {
    Ok(coverage_from(&run_trials(cfg, mc)?, gamma))
}

/// Coverage at every threshold of `gammas` from one set of trials.
pub fn estimate_coverage_curve(
    cfg: &SystemConfig,
    mc: &MonteCarloConfig,
    gammas: &[f64],
) -> Result<Vec<CoverageEstimate>> {
    let outcomes = run_trials(cfg, mc)?;
    Ok(gammas
        .iter()
        .map(|&g| coverage_from(&outcomes, g))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEstimate {
    pub total: Estimate,
    pub terrestrial: Estimate,
    pub satellite: Estimate,
}

pub fn rate_from(outcomes: &[TrialOutcome]) -> RateEstimate {
    let tier = |a: Association| {
        Estimate::mean(
            outcomes
                .iter()
                .filter(|o| o.association == a)
                .map(|o| o.rate),
        )
    };
    RateEstimate {
        total: Estimate::mean(outcomes.iter().map(|o| o.rate)),
        terrestrial: tier(Association::Terrestrial),
        satellite: tier(Association::Satellite),
    }
}

pub fn estimate_rate(cfg: &SystemConfig, mc: &MonteCarloConfig) -> Result<RateEstimate> {
    Ok(rate_from(&run_trials(cfg, mc)?))
}

/// Largest gap between the empirical CDF of `sorted` and `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ServingDistributions {
    /// Sorted serving distances of terrestrial-associated trials, metres.
    #[serde(skip)]
    pub terrestrial: Vec<f64>,
    /// Sorted serving angles of satellite-associated trials, radians.
    #[serde(skip)]
    pub satellite: Vec<f64>,
    pub ks_terrestrial: f64,
    pub ks_satellite: f64,
}

pub fn serving_distributions_from(
    model: &HybridModel,
    outcomes: &[TrialOutcome],
) -> Result<ServingDistributions> {
    let pick = |a: Association| {
        let mut v: Vec<f64> = outcomes
            .iter()
            .filter(|o| o.association == a)
            .map(|o| o.serving)
            .collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let terrestrial = pick(Association::Terrestrial);
    let satellite = pick(Association::Satellite);
    for v in [&terrestrial, &satellite] {
        if v.len() < MIN_CONDITIONED_SAMPLES {
            return Err(Error::InsufficientSamples {
                got: v.len(),
                needed: MIN_CONDITIONED_SAMPLES,
            });
        }
    }
    let ks_terrestrial = ks_with(
        &terrestrial,
        &model.serving_distance_cdf_terrestrial_sorted(&terrestrial)?,
    );
    let phi_max = model.config().geometry.phi_max();
    let clipped: Vec<f64> = satellite.iter().map(|&x| x.min(phi_max)).collect();
    let ks_satellite = ks_with(
        &satellite,
        &model.serving_angle_cdf_satellite_sorted(&clipped)?,
    );
    Ok(ServingDistributions {
        terrestrial,
        satellite,
        ks_terrestrial,
        ks_satellite,
    })
}

fn ks_with(sorted: &[f64], cdf: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    cdf.iter()
        .enumerate()
        .map(|(i, &f)| (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs()))
        .fold(0.0, f64::max)
}

/// Empirical serving laws with KS distances to the analytic CDFs.
pub fn empirical_serving_distributions(
    cfg: &SystemConfig,
    mc: &MonteCarloConfig,
) -> Result<ServingDistributions> {
    let model = HybridModel::new(cfg)?;
    serving_distributions_from(&model, &run_trials(cfg, mc)?)
}

/// KS distance between the simulated nearest-satellite angle and the
/// contact-angle law over [0, φ_max]. Draws without a visible satellite only
/// count towards n, so both CDFs top out at the visibility probability.
pub fn contact_angle_ks(
    geom: &ConstellationGeometry,
    mode: ConstellationMode,
    draws: u64,
    seed: u64,
) -> f64 {
    let mut angles: Vec<f64> = run_blocks(draws, seed, |rng, n| {
        (0..n)
            .map(|_| {
                unsorted_constellation(geom, mode, rng)
                    .into_iter()
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    });
    angles.sort_by(f64::total_cmp);
    let n = angles.len() as f64;
    let cdf = |x: f64| geom.contact_angle_cdf(x.min(geom.phi_max())).unwrap_or(1.0);
    let visible = angles.partition_point(|x| x.is_finite());
    let tail = (cdf(geom.phi_max()) - visible as f64 / n).abs();
    angles[..visible]
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(tail, f64::max)
}

/// Monte Carlo mean of the power received over the side lobes of every
/// visible satellite whose zenith angle is at least `x`, with Nakagami fading.
pub fn mean_satellite_interference_mc(
    cfg: &SystemConfig,
    mode: ConstellationMode,
    x: f64,
    draws: u64,
    seed: u64,
) -> Result<Estimate> {
    let m = cfg.fading.m();
    let fading = gamma_distribution(m, 1.0 / m)?;
    let lo = free_space_constant(cfg.satellite_carrier);
    let g = &cfg.geometry;
    let samples = run_blocks(draws, seed, |rng, n| {
        (0..n)
            .map(|_| {
                unsorted_constellation(g, mode, rng)
                    .into_iter()
                    .filter(|&p| p >= x)
                    .map(|p| {
                        cfg.satellite_power * cfg.side_lobe_gain * lo
                            / g.slant_distance_sq_unchecked(p)
                            * fading.sample(rng)
                    })
                    .sum::<f64>()
            })
            .collect()
    });
    Ok(Estimate::mean(samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_fields() {
        let mut cfg = SystemConfig::default();
        cfg.bs_density = 0.0;
        let mut rng = block_rng(1, 0);
        assert!(sample_bs_field(&cfg, 1e5, &mut rng).is_empty());
        let g = cfg.geometry.with_satellite_count(0);
        assert!(sample_constellation(&g, ConstellationMode::FixedCount, &mut rng).is_empty());
    }

    #[test]
    fn bs_count_mean() {
        let cfg = SystemConfig::default();
        let r = 20e3;
        let mean = cfg.bs_density * PI * r * r;
        let n = 10_000;
        let mut rng = block_rng(2, 0);
        let total: usize = (0..n)
            .map(|_| sample_bs_field(&cfg, r, &mut rng).len())
            .sum();
        let emp = total as f64 / n as f64;
        assert!(
            (emp - mean).abs() < 3.0 * (mean / n as f64).sqrt(),
            "{emp} vs {mean}"
        );
    }

    #[test]
    fn fields_are_sorted_and_in_range() {
        let cfg = SystemConfig::default();
        let mut rng = block_rng(3, 0);
        let d = sample_bs_field(&cfg, 50e3, &mut rng);
        assert!(d.windows(2).all(|w| w[0] <= w[1]) && d.iter().all(|&x| x <= 50e3));
        let a = sample_constellation(&cfg.geometry, ConstellationMode::PoissonCount, &mut rng);
        assert!(
            a.windows(2).all(|w| w[0] <= w[1]) && a.iter().all(|&x| x <= cfg.geometry.phi_max())
        );
    }

    #[test]
    fn nearest_bs_follows_void_probability() {
        let cfg = SystemConfig::default();
        let lam = cfg.bs_density;
        let mut rng = block_rng(4, 0);
        let mut nearest: Vec<f64> = (0..100_000)
            .map(|_| {
                sample_bs_field(&cfg, 60e3, &mut rng)
                    .first()
                    .copied()
                    .unwrap_or(f64::INFINITY)
            })
            .collect();
        nearest.sort_by(f64::total_cmp);
        let ks = ks_statistic(&nearest, |r| 1.0 - (-PI * lam * r * r).exp());
        assert!(ks < 0.01, "{ks}");
    }

    #[test]
    fn visible_fraction_matches_cap_area() {
        let g = SystemConfig::default().geometry.with_satellite_count(1);
        let mut rng = block_rng(5, 0);
        let n = 100_000;
        let hits: usize = (0..n)
            .map(|_| sample_constellation(&g, ConstellationMode::FixedCount, &mut rng).len())
            .sum();
        let p = 0.5 * (1.0 - g.alpha());
        let emp = hits as f64 / n as f64;
        assert!((emp - p).abs() < 3.0 * (p * (1.0 - p) / n as f64).sqrt());
    }

    #[test]
    fn forced_terrestrial_association() {
        let cfg = SystemConfig::default().with_satellite_count(0);
        let mc = MonteCarloConfig::new(200, 9);
        let out = run_trials(&cfg, &mc).unwrap();
        assert!(out
            .iter()
            .all(|o| o.association == Association::Terrestrial));
    }

    #[test]
    fn lone_satellite_sinr() {
        let mut cfg = SystemConfig::default();
        cfg.bs_density = 0.0;
        let cfg = cfg.with_satellite_count(1);
        let sim = Simulator::new(&cfg, &MonteCarloConfig::new(1, 0)).unwrap();
        let mut rng = block_rng(6, 0);
        let mut seen = 0;
        for _ in 0..2000 {
            let mut probe = rng.clone();
            let o = sim.simulate_trial(&mut rng);
            if o.association != Association::Satellite {
                assert_eq!(o.association, Association::Outage);
                continue;
            }
            seen += 1;
            // replay: BS field, constellation, then the serving fade
            assert!(unsorted_bs_field(0.0, sim.region_radius(), &mut probe).is_empty());
            let phi =
                unsorted_constellation(&cfg.geometry, ConstellationMode::FixedCount, &mut probe)[0];
            let omega = sim.fading_s.sample(&mut probe);
            let want = cfg.satellite_power * cfg.main_lobe_gain * sim.satellite_gain(phi) * omega
                / cfg.satellite_noise;
            assert_eq!(o.serving, phi);
            assert!((o.sinr - want).abs() <= 1e-12 * want);
        }
        assert!(seen > 0);
    }

    #[test]
    fn outage_and_degenerate_rate() {
        let mut cfg = SystemConfig::default();
        cfg.bs_density = 0.0;
        let cfg = cfg.with_satellite_count(0);
        let out = run_trials(&cfg, &MonteCarloConfig::new(50, 1)).unwrap();
        assert!(out.iter().all(|o| o.association == Association::Outage));
        assert_eq!(rate_from(&out).total.value, 0.0);
        let c = coverage_from(&out, 1e-9);
        assert_eq!(c.total.value, 0.0);
        assert_eq!(c.outage.value, 1.0);
    }

    #[test]
    fn threshold_extremes() {
        let out = run_trials(&SystemConfig::default(), &MonteCarloConfig::new(2000, 3)).unwrap();
        let c0 = coverage_from(&out, 0.0);
        assert_eq!(c0.total.value, 1.0 - c0.outage.value);
        assert_eq!(coverage_from(&out, f64::INFINITY).total.value, 0.0);
    }

    #[test]
    fn region_radius_rules() {
        let mut cfg = SystemConfig::default();
        cfg.bs_density = 1e-9;
        let mc = MonteCarloConfig::default();
        let r = mc.region_radius(&cfg).unwrap();
        assert!(r > DEFAULT_BS_REGION_RADIUS);
        assert!(tail_interference_ratio(&cfg, r) < TAIL_INTERFERENCE_BOUND);
        let explicit = MonteCarloConfig {
            bs_region_radius: Some(DEFAULT_BS_REGION_RADIUS),
            ..mc.clone()
        };
        assert!(explicit.region_radius(&cfg).is_err());
        cfg.bs_density = 1e-8;
        assert_eq!(mc.region_radius(&cfg).unwrap(), DEFAULT_BS_REGION_RADIUS);
    }

    #[test]
    fn too_few_conditioned_samples() {
        let cfg = SystemConfig::default();
        let r = empirical_serving_distributions(&cfg, &MonteCarloConfig::new(50, 1));
        assert!(matches!(r, Err(Error::InsufficientSamples { .. })));
    }

    #[test]
    fn same_seed_same_trials() {
        let cfg = SystemConfig::default();
        let mc = MonteCarloConfig::new(2500, 42);
        let a = run_trials(&cfg, &mc).unwrap();
        let b = run_trials(&cfg, &mc).unwrap();
        let bits = |v: &[TrialOutcome]| v.iter().map(|o| o.sinr.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
        let one_thread = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let c = one_thread.install(|| run_trials(&cfg, &mc).unwrap());
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let d = four.install(|| run_trials(&cfg, &mc).unwrap());
        assert_eq!(bits(&a), bits(&c));
        assert_eq!(bits(&a), bits(&d));
    }
}
