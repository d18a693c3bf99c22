use hybridnet::sweep::{format_float, parse_sweep_csv, run_sweep, SweepRecord, SweepSpec};
use hybridnet_core::analytic::HybridModel;
use hybridnet_core::config::SystemConfig;
use hybridnet_core::montecarlo::MonteCarloConfig;
use proptest::prelude::*;

fn analytic(cfg: &SystemConfig, json: &str) -> Vec<SweepRecord> {
    let spec = SweepSpec::from_json(json).unwrap();
    let csv = run_sweep(cfg, &spec, &MonteCarloConfig::new(1, 0)).unwrap();
    parse_sweep_csv(&csv).unwrap()
}

fn column(records: &[SweepRecord], name: &str) -> Vec<f64> {
    records
        .iter()
        .map(|r| {
            let (_, cell) = r.values.iter().find(|(c, _)| c == name).unwrap();
            cell.unwrap().0
        })
        .collect()
}

proptest! {
    #[test]
    fn floats_survive_the_csv_format(bits in any::<u64>()) {
        let v = f64::from_bits(bits);
        prop_assume!(v.is_finite());
        prop_assert_eq!(format_float(v).parse::<f64>().unwrap().to_bits(), bits);
    }
}

#[test]
fn parsed_values_are_bit_identical_to_direct_evaluation() {
    let cfg = SystemConfig::default();
    let records = analytic(
        &cfg,
        r#"{"parameter":"lambda_T","values":[1e-9,3.3e-9,1e-8],"outputs":["A_S","P_tot"]}"#,
    );
    assert_eq!(records.len(), 3);
    for r in &records {
        let mut point = cfg.clone();
        point.bs_density = r.parameter;
        let model = HybridModel::new(&point).unwrap();
        let p_tot = model.coverage_total(point.sinr_threshold).unwrap().p_tot;
        let expect = [model.association_satellite(), p_tot];
        for ((_, cell), e) in r.values.iter().zip(expect) {
            let (v, pm) = cell.unwrap();
            assert_eq!(v.to_bits(), e.value.to_bits());
            assert_eq!(pm.to_bits(), e.half_width.to_bits());
        }
        assert_eq!(r.engine, "analytic");
        assert!(r.error.is_none());
    }
}

#[test]
fn repeated_sweeps_are_identical() {
    let cfg = SystemConfig::default();
    let spec = SweepSpec::from_json(r#"{"parameter":"gamma_dB","values":{"start":-5,"stop":10,"count":4},"engines":["analytic","mc"],"outputs":["P_cov_T","P_cov_S"]}"#).unwrap();
    let mc = MonteCarloConfig::new(3000, 4);
    assert_eq!(
        run_sweep(&cfg, &spec, &mc).unwrap(),
        run_sweep(&cfg, &spec, &mc).unwrap()
    );
}

#[test]
fn constellation_sweep_peaks_inside_the_range() {
    let cfg = SystemConfig::default();
    let records = analytic(
        &cfg,
        r#"{"parameter":"N_S","values":{"start":1,"stop":991,"count":100},"outputs":["A_S","P_tot"]}"#,
    );
    let a_s = column(&records, "A_S");
    assert!(a_s.windows(2).all(|w| w[1] > w[0]));
    let p = column(&records, "P_tot");
    let (peak, _) = p
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    assert!(peak > 0 && peak < p.len() - 1, "peak at index {peak}");
}

#[test]
fn satellites_help_only_with_many_users() {
    // Hybrid minus terrestrial-only coverage across the number of users.
    let json = r#"{"parameter":"M","values":[1,4,8,12,15,20,31],"outputs":["P_tot"]}"#;
    let cfg = SystemConfig::default();
    let hybrid = column(&analytic(&cfg, json), "P_tot");
    let alone = column(&analytic(&cfg.with_satellite_count(0), json), "P_tot");
    let gain: Vec<f64> = hybrid.iter().zip(&alone).map(|(h, t)| h - t).collect();
    assert!(gain[0] < 0.0, "{gain:?}");
    assert!(gain[4] > 0.0 && gain[6] > 0.0, "{gain:?}");
}
