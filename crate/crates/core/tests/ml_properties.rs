use fracwave::fracops::{caputo_l1, gamma_fn, Order, Sampled, TimeGrid};
use fracwave::mittag::{caputo_of_ml, mittag_leffler, ml_cos_branch, ml_sin_branch};

#[test]
fn recurrence() {
    for a in [0.4, 0.75, 1.0, 1.5, 1.9] {
        for b in [0.5, 1.0, 1.5, 2.0] {
            let mut z = -15.0;
            while z <= 3.0 {
                let lhs = mittag_leffler(a, b, z).unwrap();
                let rhs = 1.0 / gamma_fn(b).unwrap() + z * mittag_leffler(a, a + b, z).unwrap();
                assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0), "a={a} b={b} z={z}: {lhs} vs {rhs}");
                z += 0.25;
            }
        }
    }
}

#[test]
fn unit_order_reductions() {
    for k in 0..=1000 {
        let t = k as f64 * 0.01;
        assert!((mittag_leffler(2.0, 1.0, -t * t).unwrap() - t.cos()).abs() <= 1e-10);
        assert!((t * mittag_leffler(2.0, 2.0, -t * t).unwrap() - t.sin()).abs() <= 1e-10);
    }
}

#[test]
fn exponential_law() {
    let mut z = -50.0;
    while z <= 20.0 {
        let v = mittag_leffler(1.0, 1.0, z).unwrap();
        assert!((v - z.exp()).abs() <= 1e-12 * z.exp(), "z={z}");
        z += 0.1;
    }
}

#[test]
fn complete_monotonicity_samples() {
    for a in [0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
        let mut prev = f64::INFINITY;
        for k in 0..=200 {
            let t = k as f64 * 0.05;
            let v = mittag_leffler(a, 1.0, -t.powf(a)).unwrap();
            assert!(v > 0.0 && v <= 1.0, "a={a} t={t}: {v}");
            assert!(v < prev || k == 0, "a={a} t={t}: {v} !< {prev}");
            prev = v;
        }
    }
}

#[test]
fn caputo_identity_against_l1() {
    let alpha = Order::new(0.75).unwrap();
    let h = 2f64.powi(-11);
    let grid = TimeGrid::spanning(0.0, 5.0, h).unwrap();
    let f = Sampled::from_fn(grid, |t| ml_cos_branch(alpha, 1.0, t).unwrap());
    let d = caputo_l1(&f, alpha).unwrap();
    let start = grid.first_index_at_or_after(0.5);
    let mut worst: f64 = 0.0;
    for j in start..=grid.n {
        let (exact, _) = caputo_of_ml(alpha, -1.0, grid.node(j)).unwrap();
        worst = worst.max((d.values[j] - exact).abs());
    }
    assert!(worst <= 1e-3, "{worst}");
}

#[test]
fn branch_identities() {
    // D^α g₂ = μ̄ g₃ and D^α g₃ = -μ̄ g₂ with g₃ = -sin branch
    for alpha in [0.3, 0.6, 0.9] {
        let o = Order::new(alpha).unwrap();
        for mubar in [-3.0, 1.0] {
            for k in 0..=90 {
                let t = 0.5 + 0.05 * k as f64;
                let g2 = ml_cos_branch(o, mubar, t).unwrap();
                let g3 = -ml_sin_branch(o, mubar, t).unwrap();
                let (d2, ds) = caputo_of_ml(o, -mubar * mubar, t).unwrap();
                assert!((d2 - mubar * g3).abs() <= 1e-10);
                assert!((-mubar * ds + mubar * g2).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn sine_branch_small_time() {
    let o = Order::new(0.5).unwrap();
    let t: f64 = 1e-4;
    let lead = t.sqrt() / gamma_fn(1.5).unwrap();
    let v = ml_sin_branch(o, 1.0, t).unwrap();
    // next term is -t^{1.5}/Γ(2.5)
    assert!((v - lead).abs() <= 2.0 * t.powf(1.5));
    assert_eq!(ml_sin_branch(o, 1.0, 0.0).unwrap(), 0.0);
}
