use fracwave::solutions::{OdibatSolution, QuinticSolution};
use fracwave::verify::{
    odibat_samples, periodic_samples, verify_odibat, verify_quintic_pde, verify_quintic_system,
    verify_similarity, Window,
};

#[test]
fn quintic_system_converges() {
    let w = Window { refinements: 3, ..Window::default() };
    for alpha in [0.3, 0.5, 0.75, 0.9] {
        let r = verify_quintic_system(alpha, 1.0, &w).unwrap();
        assert!(r.max_residual <= 1e-3);
        assert!(r.analytic_max_residual.unwrap() <= 1e-10);
        // g₃ ~ t^α at the origin caps the L1 order at 1 + α
        let expected = f64::min(2.0 - alpha, 1.0 + alpha);
        let p = r.est_order.unwrap();
        assert!((p - expected).abs() <= 0.3, "{}", r.summary());
    }
}

#[test]
fn quintic_pde_and_perturbation() {
    let w = Window::default();
    let xs = periodic_samples(16);
    let q = QuinticSolution::build(0.75, 1.0, 4.5, 2.0, 1.0).unwrap();
    let r = verify_quintic_pde(&q, &w, &xs).unwrap();
    assert!(r.max_residual <= 1e-3, "{}", r.summary());
    assert!((r.est_order.unwrap() - 1.25).abs() <= 0.3);
    let mut bad = q.clone();
    bad.mubar *= 1.01;
    let rb = verify_quintic_pde(&bad, &w, &xs).unwrap();
    assert!(rb.max_residual > 10.0 * r.max_residual);
}

#[test]
fn odibat_reports() {
    for alpha in [0.8, 1.0] {
        let o = OdibatSolution::build(1.0, 1.0, alpha).unwrap();
        let w = Window { refinements: 3, ..Window::default() };
        let xs = odibat_samples(&o, w.t_end, 16).unwrap();
        let r = verify_odibat(&o, &w, &xs).unwrap();
        let p = r.est_order.unwrap();
        assert!(p >= 0.7, "{}", r.summary());
        assert!(r.levels.windows(2).all(|l| l[0].max_residual < l[1].max_residual));
    }
}

#[test]
fn similarity_consistency_across_orders() {
    for k in 0..20 {
        // 20 orders spread over (0, 1/2) and (1/2, 1)
        let a = if k < 10 { 0.02 + 0.046 * k as f64 } else { 0.52 + 0.046 * (k - 10) as f64 };
        let r = verify_similarity(a).unwrap();
        assert!(r.max_residual <= 1e-11, "{}", r.summary());
    }
}

#[test]
fn reports_are_deterministic() {
    let w = Window { h: 2f64.powi(-9), ..Window::default() };
    let a = verify_quintic_system(0.6, -3.0, &w).unwrap();
    let b = verify_quintic_system(0.6, -3.0, &w).unwrap();
    assert_eq!(a.max_residual.to_bits(), b.max_residual.to_bits());
    assert_eq!(a, b);
}
