use malmsten_core::verify::{run, Block, VerifyOptions};

#[test]
fn full_suite_passes_at_default_tolerances() {
    let report = run(&VerifyOptions::default());
    let failures: Vec<_> = report.failures().collect();
    for f in &failures {
        eprintln!(
            "FAIL {} lhs={:e} rhs={:e} residual={:e} tol={:e}",
            f.name, f.lhs, f.rhs, f.residual, f.tolerance
        );
    }
    for c in &report.comparisons {
        eprintln!(
            "comparison max_delta={:e} tol={:e} pass={}",
            c.max_delta, c.tolerance, c.pass
        );
    }
    assert!(failures.is_empty());
    assert!(report.pass);
    assert_eq!(report.blocks, Block::ALL.to_vec());
    assert_eq!(report.comparisons.len(), 3);
}

#[test]
fn tolerance_below_roundoff_fails() {
    let opts = VerifyOptions {
        tol_closed_quad: 1e-16,
        ..VerifyOptions::default()
    };
    let report = run(&opts);
    assert!(!report.pass);
    assert!(report.failures().any(|c| c.name.starts_with("quad.")));
}
