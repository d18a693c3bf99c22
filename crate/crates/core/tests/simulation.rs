use hybridnet_core::analytic::HybridModel;
use hybridnet_core::config::{db_to_linear, SystemConfig};
use hybridnet_core::montecarlo::{
    association_from, contact_angle_ks, coverage_from, rate_from, run_trials, Association,
    ConstellationMode, MonteCarloConfig, TrialOutcome,
};

const TRIALS: u64 = 60_000;

fn mean_interference(trials: u64, seed: u64) -> MonteCarloConfig {
    MonteCarloConfig {
        exact_satellite_interference: false,
        ..MonteCarloConfig::new(trials, seed)
    }
}

fn bits(outcomes: &[TrialOutcome]) -> Vec<(u64, u64, u64, u64)> {
    outcomes
        .iter()
        .map(|o| {
            (
                o.serving.to_bits(),
                o.sinr.to_bits(),
                o.rate.to_bits(),
                o.contact_angle.to_bits(),
            )
        })
        .collect()
}

fn gamma_grid() -> Vec<f64> {
    (0..10)
        .map(|i| db_to_linear(-10.0 + 30.0 * i as f64 / 9.0))
        .collect()
}

#[test]
fn mean_interference_simulation_reproduces_closed_forms() {
    let cfg = SystemConfig::default();
    let model = HybridModel::new(&cfg).unwrap();
    let outcomes = run_trials(&cfg, &mean_interference(TRIALS, 11)).unwrap();

    let assoc = association_from(&outcomes);
    let a_s = model.association_satellite().value;
    assert!(
        assoc.a_s.contains(a_s, 0.002),
        "A_S {a_s} vs {:?}",
        assoc.a_s
    );

    for g in gamma_grid() {
        let mc = coverage_from(&outcomes, g);
        let an = model.coverage_total(g).unwrap();
        for (label, sim, exact) in [
            ("total", mc.total, an.p_tot.value),
            ("terrestrial", mc.terrestrial, an.p_cov_t.value),
            ("satellite", mc.satellite, an.p_cov_s.value),
        ] {
            assert!(
                (sim.value - exact).abs() <= 2.0 * sim.half_width + 0.005,
                "{label} at gamma {g}: {} ± {} vs {exact}",
                sim.value,
                sim.half_width
            );
        }
    }
}

#[test]
fn rate_matches_integral_of_simulated_coverage() {
    // Per tier, R = B/ln2 ∫ P(SINR > e^u − 1) du. Trapezoid over the
    // empirical coverage, weighted by the empirical tier shares.
    let cfg = SystemConfig::default();
    let outcomes = run_trials(&cfg, &mean_interference(TRIALS, 12)).unwrap();
    let n = outcomes.len() as f64;
    let tier_integral = |tier: Association| {
        let mut sinrs: Vec<f64> = outcomes
            .iter()
            .filter(|o| o.association == tier)
            .map(|o| o.sinr)
            .collect();
        sinrs.sort_by(f64::total_cmp);
        let ccdf = |t: f64| (sinrs.len() - sinrs.partition_point(|&s| s < t)) as f64 / n;
        let (steps, top) = (4000, 25.0f64);
        let du = top / steps as f64;
        (0..=steps)
            .map(|i| {
                let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
                w * ccdf((i as f64 * du).exp_m1())
            })
            .sum::<f64>()
            * du
            / std::f64::consts::LN_2
    };
    let from_curve = cfg.terrestrial_bandwidth * tier_integral(Association::Terrestrial)
        + cfg.satellite_bandwidth * tier_integral(Association::Satellite);
    let mean = rate_from(&outcomes).total;
    assert!(
        (from_curve - mean.value).abs() <= 0.01 * mean.value,
        "{from_curve} vs {}",
        mean.value
    );

    let analytic = HybridModel::new(&cfg)
        .unwrap()
        .rate_total()
        .unwrap()
        .r_tot
        .value;
    assert!(
        (mean.value - analytic).abs() <= 2.0 * mean.half_width + 0.01 * analytic,
        "{} vs {analytic}",
        mean.value
    );
}

#[test]
fn thread_count_does_not_change_trials() {
    let cfg = SystemConfig::default();
    let mc = MonteCarloConfig::new(7_500, 99);
    let on = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_trials(&cfg, &mc).unwrap())
    };
    let one = bits(&on(1));
    assert_eq!(one, bits(&on(3)));
    assert_eq!(one, bits(&on(8)));
}

#[test]
fn wider_region_barely_moves_coverage() {
    let cfg = SystemConfig::default();
    let at = |radius: f64| {
        let mc = MonteCarloConfig {
            bs_region_radius: Some(radius),
            ..MonteCarloConfig::new(TRIALS, 5)
        };
        coverage_from(&run_trials(&cfg, &mc).unwrap(), cfg.sinr_threshold)
            .total
            .value
    };
    let (base, wide) = (at(300e3), at(600e3));
    assert!((base - wide).abs() < 0.005, "{base} vs {wide}");
}

#[test]
fn poisson_constellation_follows_contact_law() {
    // The contact-angle law is exact for a Poisson number of satellites.
    let cfg = SystemConfig::default();
    for n in [20, 300] {
        let g = cfg.geometry.with_satellite_count(n);
        let ks = contact_angle_ks(&g, ConstellationMode::PoissonCount, 50_000, 3);
        assert!(ks < 0.01, "N_S {n}: {ks}");
    }
}

#[test]
fn poisson_constellation_runs_end_to_end() {
    let cfg = SystemConfig::default().with_satellite_count(30);
    let mc = MonteCarloConfig {
        constellation_mode: ConstellationMode::PoissonCount,
        ..mean_interference(20_000, 8)
    };
    let outcomes = run_trials(&cfg, &mc).unwrap();
    let assoc = association_from(&outcomes);
    let a_s = HybridModel::new(&cfg)
        .unwrap()
        .association_satellite()
        .value;
    assert!(assoc.a_s.contains(a_s, 0.005), "{a_s} vs {:?}", assoc.a_s);
    assert!((assoc.a_s.value + assoc.a_t.value + assoc.outage.value - 1.0).abs() < 1e-12);
}
