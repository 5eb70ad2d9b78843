//! Seeded sweeps for the ear and scattering layers on top of the
//! decomposition pipeline.

use hammock_core::chops::weak_diameter;
use hammock_core::ears::{nested_ears_with, verify_ears};
use hammock_core::generate::{generate_series_parallel, GeneratorConfig};
use hammock_core::hammock::decompose;
use hammock_core::metric::Metric;
use hammock_core::ratio::Ratio;
use hammock_core::scattering::{
    scattering_chop, scattering_partition, verify_cut_budgets, CHOP_CUT_LIMIT,
};

fn biconnected_cfg() -> GeneratorConfig {
    GeneratorConfig {
        series_bias: 0.4,
        max_parallel: 4,
        glue: false,
        max_blocks: 1,
        max_weight: 1,
    }
}

#[test]
fn ears_verify_across_many_biconnected_instances() {
    let cfg = biconnected_cfg();
    let mut verified = 0;
    for seed in 0..220 {
        let n = 4 + (seed as usize * 3) % 60;
        let g = generate_series_parallel(seed, n, &cfg);
        if !g.is_biconnected() {
            continue;
        }
        let (t, hd) = decompose(&g, 0).expect("series-parallel");
        let ed = nested_ears_with(&g, &t, &hd).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let report = verify_ears(&g, &t, &hd, &ed);
        assert!(report.passed(), "seed {seed}: {:?}", report.violations);
        assert_eq!(ed.ears.len(), t.cross_edges().len(), "seed {seed}");
        verified += 1;
    }
    assert!(verified >= 80, "only {verified} biconnected instances");
}

#[test]
fn chop_budgets_across_instances_and_widths() {
    let cfg = GeneratorConfig::default();
    let mut max_seen = 0;
    for seed in 0..25 {
        let n = 10 + (seed as usize * 7) % 70;
        let g = generate_series_parallel(seed, n, &cfg);
        let metric = Metric::new(&g);
        let (t, hd) = decompose(&g, 0).expect("sp");
        for delta in [4i64, 8, 16] {
            let sc = scattering_chop(&g, &t, &hd, Ratio::int(delta)).unwrap();
            let report = verify_cut_budgets(&g, &t, &metric, &hd, &sc, Ratio::int(delta));
            assert!(
                report.passed(),
                "seed {seed} delta {delta}: full={} single={} mono={} cross={}",
                report.max_full_path_cuts,
                report.max_single_hammock_cross,
                report.max_monotone_cuts,
                report.max_cross_path_cuts
            );
            max_seen = max_seen.max(report.max_full_path_cuts);
        }
    }
    assert!(max_seen <= CHOP_CUT_LIMIT);
}

#[test]
fn partitions_hold_their_invariants() {
    let cfg = GeneratorConfig::default();
    for seed in 0..10 {
        let n = 12 + (seed as usize * 9) % 48;
        let g = generate_series_parallel(seed, n, &cfg);
        let metric = Metric::new(&g);
        for delta in [4u64, 8, 16] {
            let p = scattering_partition(&g, delta)
                .unwrap_or_else(|e| panic!("seed {seed} delta {delta}: {e}"));
            for part in &p.parts {
                assert_eq!(g.induced_components(part).len(), 1);
                assert!(weak_diameter(&metric, part) <= delta);
            }
            assert!(p.tau_observed <= p.tau_budget);
        }
    }
}
