//! Studies, fits and report files.

use nls_lri::experiments::{
    emit_csv, emit_svg_plot, fit_order, gen_rough_data, halving, read_csv, run_convergence,
    run_mass_drift, ConvergenceTable, RoughDataSpec, Study,
};
use nls_lri::{Nonlinearity, Scheme, SchemeConfig, SpectralField};

fn rough(n: usize, gamma: f64, seed: u64) -> SpectralField {
    gen_rough_data(&RoughDataSpec::new(n, gamma, seed).unwrap()).unwrap()
}

fn study(n: usize, gamma: f64, seed: u64, t_final: f64) -> Study {
    let u = rough(n, gamma, seed);
    let base = SchemeConfig::for_initial_data(Scheme::Lri, 0.1, Nonlinearity::Defocusing, &u).unwrap();
    Study::new(u, seed, t_final, base)
}

fn without_timing(mut tables: Vec<ConvergenceTable>) -> Vec<ConvergenceTable> {
    for r in tables.iter_mut().flat_map(|t| t.records.iter_mut()) {
        r.wall_time = 0.0;
    }
    tables
}

#[test]
fn injected_linear_errors_fit_order_one() {
    let pts: Vec<_> = halving(0.1, 0.001).into_iter().map(|t| (t, 0.37 * t)).collect();
    let fit = fit_order(&pts).unwrap();
    assert!((fit.order - 1.0).abs() < 1e-12 && fit.residual < 1e-12);
}

#[test]
fn pipeline_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let taus = halving(2f64.powi(-3), 2f64.powi(-6));
    let emit = |name: &str| {
        let s = study(64, 2.0, 9, 0.5);
        let tables = without_timing(run_convergence(&s, &[Scheme::Lri, Scheme::Nlri, Scheme::Strang], &taus, 2.0).unwrap());
        let csv = dir.path().join(format!("{name}.csv"));
        let svg = dir.path().join(format!("{name}.svg"));
        emit_csv(&tables, &csv).unwrap();
        emit_svg_plot(&tables, &svg, &[1.0]).unwrap();
        s.u0.write_json(dir.path().join(format!("{name}.json"))).unwrap();
        [csv, svg, dir.path().join(format!("{name}.json"))].map(|p| std::fs::read(p).unwrap())
    };
    assert_eq!(emit("a"), emit("b"));
}

#[test]
fn parallel_and_serial_sweeps_agree() {
    let s = study(64, 2.0, 3, 0.5);
    let taus = halving(2f64.powi(-3), 2f64.powi(-6));
    let parallel = without_timing(run_mass_drift(&s, &[Scheme::Lri, Scheme::Nlri], &taus).unwrap());
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = without_timing(pool.install(|| run_mass_drift(&s, &[Scheme::Lri, Scheme::Nlri], &taus).unwrap()));
    assert_eq!(parallel, serial);
}

#[test]
fn csv_roundtrip_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.csv");
    let s = study(32, 1.0, 2, 0.25);
    let tables = run_convergence(&s, &[Scheme::Lri, Scheme::ExpEuler], &halving(0.05, 0.01), 1.0).unwrap();
    emit_csv(&tables, &path).unwrap();
    let mut expected: Vec<_> = tables.iter().flat_map(|t| t.records.clone()).collect();
    expected.sort_by(|a, b| a.scheme.label().cmp(b.scheme.label()).then(b.tau.total_cmp(&a.tau)));
    assert_eq!(read_csv(&path).unwrap(), expected);
}

#[test]
fn reference_is_converged() {
    let taus = halving(2f64.powi(-6), 2f64.powi(-10));
    let mut s = study(128, 2.0, 1, 1.0);
    let coarse = run_convergence(&s, &[Scheme::Lri], &taus, 2.0).unwrap()[0].fitted_order().unwrap();
    s.reference_factor *= 2;
    let fine = run_convergence(&s, &[Scheme::Lri], &taus, 2.0).unwrap()[0].fitted_order().unwrap();
    assert!((coarse - fine).abs() < 0.05, "{coarse} vs {fine}");
}

#[test]
fn lri_error_decreases_under_halving() {
    let taus = halving(2f64.powi(-5), 2f64.powi(-10));
    let mut pairs = 0;
    let mut decreasing = 0;
    for seed in 1..=5 {
        let s = study(128, 2.0, seed, 1.0);
        let table = &run_convergence(&s, &[Scheme::Lri], &taus, 2.0).unwrap()[0];
        for w in table.records.windows(2) {
            pairs += 1;
            if w[1].error.unwrap() < w[0].error.unwrap() {
                decreasing += 1;
            }
        }
    }
    assert!(decreasing as f64 >= 0.9 * pairs as f64, "{decreasing}/{pairs}");
}

#[test]
fn mass_drift_contrast() {
    let s = study(256, 2.0, 0, 1.0);
    let taus = halving(1e-2, 1e-3);
    let tables = run_mass_drift(&s, &[Scheme::Lri, Scheme::Nlri, Scheme::Oracle], &taus).unwrap();
    let (lri, nlri, oracle) = (&tables[0], &tables[1], &tables[2]);
    for (a, b) in lri.records.iter().zip(&nlri.records) {
        assert_eq!(a.tau, b.tau);
        assert!(a.mass_drift > b.mass_drift, "tau {}", a.tau);
    }
    assert!(nlri.fitted_order().unwrap() >= 4.0, "{:?}", nlri.fit);
    assert!(oracle.records.iter().all(|r| r.mass_drift <= 1e-10));
}

#[test]
fn svg_for_real_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.svg");
    let s = study(32, 2.0, 4, 0.25);
    let tables = run_convergence(&s, &[Scheme::Lri, Scheme::Strang], &halving(0.05, 0.01), 2.0).unwrap();
    emit_svg_plot(&tables, &path, &[1.0, 2.0]).unwrap();
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="data""#).count(), 2);
    assert_eq!(svg.matches(r#"class="guide""#).count(), 2);
    assert!(emit_svg_plot(&[], &path, &[1.0]).is_err());
}
