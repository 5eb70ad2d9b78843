//! Broad seeded sweep of the hammock pipeline with full verification.

use hammock_core::generate::{generate_series_parallel, GeneratorConfig};
use hammock_core::hammock::{decompose, verify_decomposition};
use hammock_core::metric::Metric;

#[test]
fn seeded_sweep_small_and_medium() {
    let cfg = GeneratorConfig::default();
    for seed in 0..150 {
        let n = 2 + (seed as usize * 13) % 99;
        let g = generate_series_parallel(seed, n, &cfg);
        let (t, hd) = decompose(&g, 0).unwrap_or_else(|e| panic!("seed {seed} n {n}: {e}"));
        let metric = Metric::new(&g);
        let report = verify_decomposition(&g, &t, &metric, &hd);
        assert!(
            report.passed(),
            "seed {seed} n {n}: {:?}",
            report.violations
        );
    }
}

#[test]
fn sweep_with_roots_other_than_zero() {
    let cfg = GeneratorConfig::default();
    for seed in 200..240 {
        let n = 6 + (seed as usize) % 30;
        let g = generate_series_parallel(seed, n, &cfg);
        for root in [0, n / 2, n - 1] {
            let (t, hd) =
                decompose(&g, root).unwrap_or_else(|e| panic!("seed {seed} root {root}: {e}"));
            let metric = Metric::new(&g);
            let report = verify_decomposition(&g, &t, &metric, &hd);
            assert!(
                report.passed(),
                "seed {seed} root {root}: {:?}",
                report.violations
            );
        }
    }
}

#[test]
fn blocky_generator_settings() {
    // Heavier parallel bias and more glued blocks.
    let cfg = GeneratorConfig {
        series_bias: 0.3,
        max_parallel: 5,
        glue: true,
        max_blocks: 8,
        max_weight: 1,
    };
    for seed in 500..560 {
        let n = 5 + (seed as usize * 7) % 76;
        let g = generate_series_parallel(seed, n, &cfg);
        let (t, hd) = decompose(&g, 0).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let metric = Metric::new(&g);
        let report = verify_decomposition(&g, &t, &metric, &hd);
        assert!(report.passed(), "seed {seed}: {:?}", report.violations);
    }
}
