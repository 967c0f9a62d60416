use fracwave::subspace::{
    apply_operator, check_invariance, expand_power, reduce_to_system, Basis, KOperator, Scalar,
};
use fracwave::Error;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn lemma_forms(c: &[Scalar]) -> Vec<Scalar> {
    let (c0, c1, c2, c3) = (&c[0], &c[1], &c[2], &c[3]);
    let i = Scalar::int;
    vec![
        i(6) * (c1 * c2 + c0 * c3),
        i(12) * (c2 * c2 + i(2) * (c1 * c3)),
        i(60) * (c2 * c3),
        i(60) * (c3 * c3),
    ]
}

/// Truncated Taylor series in s about a point, used as an independent
/// differentiation oracle.
#[derive(Clone)]
struct Jet(Vec<f64>);

const ORDER: usize = 9;

impl Jet {
    fn mul(&self, o: &Jet) -> Jet {
        let mut r = vec![0.0; ORDER];
        for i in 0..ORDER {
            for j in 0..ORDER - i {
                r[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(r)
    }

    fn add_scaled(&self, o: &Jet, s: f64) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a + s * b).collect())
    }

    fn pow(&self, k: u32) -> Jet {
        (1..k).fold(self.clone(), |acc, _| acc.mul(self))
    }

    fn d(&self, n: usize) -> Jet {
        let mut c = self.0.clone();
        for _ in 0..n {
            c = (0..ORDER).map(|k| if k + 1 < ORDER { (k + 1) as f64 * c[k + 1] } else { 0.0 }).collect();
        }
        Jet(c)
    }

    fn value(&self) -> f64 {
        self.0[0]
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn element_jet(basis: &Basis, i: usize, x0: f64) -> Jet {
    let mut c = vec![0.0; ORDER];
    match basis {
        Basis::Monomial { .. } => {
            // (x0 + s)^i
            for (k, ck) in c.iter_mut().enumerate().take(i + 1) {
                let binom = factorial(i) / (factorial(k) * factorial(i - k));
                *ck = binom * x0.powi((i - k) as i32);
            }
        }
        Basis::Trig { omega } | Basis::Hyperbolic { omega } => {
            let w = omega.to_f64();
            let hyper = matches!(basis, Basis::Hyperbolic { .. });
            if i == 0 {
                c[0] = 1.0;
            } else {
                let (e, o) = if hyper {
                    ((w * x0).cosh(), (w * x0).sinh())
                } else {
                    ((w * x0).cos(), (w * x0).sin())
                };
                for (k, ck) in c.iter_mut().enumerate() {
                    // Taylor coefficients of cos(ws), sin(ws) (or cosh, sinh)
                    let wk = w.powi(k as i32) / factorial(k);
                    let sign = if hyper { 1.0 } else if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    let (ce, so) = if k % 2 == 0 { (sign * wk, 0.0) } else { (0.0, sign * wk) };
                    // cos(a+b) = cos a cos b - sin a sin b, sin(a+b) = sin a cos b + cos a sin b
                    *ck = match (i, hyper) {
                        (1, false) => e * ce - o * so,
                        (2, false) => o * ce + e * so,
                        (1, true) => e * ce + o * so,
                        _ => o * ce + e * so,
                    };
                }
            }
        }
    }
    Jet(c)
}

fn operator_by_jets(op: &KOperator, basis: &Basis, c: &[f64], x0: f64) -> f64 {
    let zero = Jet(vec![0.0; ORDER]);
    let u = (0..basis.dim()).fold(zero, |acc, i| acc.add_scaled(&element_jet(basis, i, x0), c[i]));
    let mut v = op.nu.to_f64() * u.pow(op.p).d(5).value()
        + op.beta.to_f64() * u.pow(op.n).d(3).value()
        + op.gamma_c.to_f64() * u.pow(op.m).d(1).value();
    if let Some(k) = &op.convective {
        v += k.to_f64() * u.mul(&u.d(2)).d(1).value();
    }
    v
}

fn cases() -> Vec<(KOperator, Basis)> {
    let q = |a, b, c| KOperator::quintic(Scalar::from(a), Scalar::from(b), Scalar::from(c)).unwrap();
    vec![
        (KOperator::third_order(), Basis::monomial(3).unwrap()),
        (q(1, 3, 5), Basis::trig(Scalar::one()).unwrap()),
        (q(2, -1, 3), Basis::trig(Scalar::ratio(3, 2)).unwrap()),
        (q(1, 2, 3), Basis::hyperbolic(Scalar::ratio(1, 2)).unwrap()),
        (
            KOperator::new(Scalar::ratio(1, 3), Scalar::int(-2), Scalar::one(), 3, 2, 4).unwrap(),
            Basis::monomial(2).unwrap(),
        ),
        (KOperator::odibat(Scalar::int(2)).unwrap(), Basis::trig(Scalar::one()).unwrap()),
        (KOperator::rosenau_hyman(), Basis::hyperbolic(Scalar::int(1)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn third_order_closure_is_exact(c in proptest::collection::vec(rational(), 4)) {
        let phi = reduce_to_system(&KOperator::third_order(), &Basis::monomial(3).unwrap()).unwrap();
        let got: Vec<Scalar> = phi.iter().map(|f| f.eval_scalar(&c)).collect();
        prop_assert!(got.iter().all(Scalar::is_exact));
        prop_assert_eq!(got, lemma_forms(&c));
    }

    #[test]
    fn closure_maps_are_homogeneous(
        c in proptest::collection::vec(rational(), 4),
        lambda in rational(),
    ) {
        let b = Basis::trig(Scalar::one()).unwrap();
        let ops = [
            (KOperator::third_order(), Basis::monomial(3).unwrap()),
            (KOperator::quintic(Scalar::one(), Scalar::ratio(9, 2), Scalar::int(2)).unwrap(), b.clone()),
            (KOperator::odibat(Scalar::one()).unwrap(), b),
            (
                KOperator::quintic(Scalar::zero(), Scalar::one(), Scalar::int(-1)).unwrap(),
                Basis::hyperbolic(Scalar::ratio(1, 2)).unwrap(),
            ),
        ];
        for (op, basis) in ops {
            let phi = reduce_to_system(&op, &basis).unwrap();
            let c = &c[..basis.dim()];
            let scaled: Vec<Scalar> = c.iter().map(|v| v * &lambda).collect();
            let l2 = &lambda * &lambda;
            for f in &phi {
                prop_assert_eq!(f.eval_scalar(&scaled), &l2 * &f.eval_scalar(c));
            }
        }
    }

    #[test]
    fn expansion_matches_nested_differentiation(
        c in proptest::collection::vec(rational(), 4),
        xs in proptest::collection::vec(-3.0f64..3.0, 32),
    ) {
        for (op, basis) in cases() {
            let f = apply_operator(&op, &basis).unwrap();
            let cf: Vec<f64> = c[..basis.dim()].iter().map(Scalar::to_f64).collect();
            for &x in &xs {
                let want = operator_by_jets(&op, &basis, &cf, x);
                let got = f.eval(&cf, x);
                prop_assert!(
                    (got - want).abs() <= 1e-9 * (1.0 + want.abs()),
                    "{op} on {basis} at x={x}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn projection_soundness() {
    for (op, basis) in cases() {
        let r = check_invariance(&op, &basis).unwrap();
        let f = apply_operator(&op, &basis).unwrap();
        let labels = basis.labels();
        let outside = f.nonzero_terms().into_iter().filter(|(l, _)| !labels.contains(l)).count();
        assert_eq!(r.invariant, outside == 0, "{op} on {basis}");
        assert_eq!(r.invariant, r.residual_terms.is_empty());
        assert_eq!(r.invariant, r.phi.is_some());
    }
}

#[test]
fn power_expansion_examples() {
    let m = Basis::monomial(3).unwrap();
    let sq = expand_power(&m, 2).unwrap();
    assert_eq!(sq.coefficient("x^6").unwrap().eval(&[0.0, 0.0, 0.0, 1.0]), 1.0);
    let t = Basis::trig(Scalar::one()).unwrap();
    let sq = expand_power(&t, 2).unwrap();
    let at = |l: &str| sq.coefficient(l).unwrap().eval(&[0.0, 1.0, 0.0]);
    assert_eq!((at("1"), at("cos(2*x)")), (0.5, 0.5));
    let big = Basis::monomial(40).unwrap();
    assert!(matches!(expand_power(&big, 2), Err(Error::Overflow { cap: 64, .. })));
}

#[test]
fn trig_condition_is_exact() {
    for (nu, beta, gamma) in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (3, -7, 2)] {
        let op = KOperator::quintic(Scalar::from(nu), Scalar::from(beta), Scalar::from(gamma)).unwrap();
        let r = check_invariance(&op, &Basis::trig(Scalar::one()).unwrap()).unwrap();
        let cond = r.condition.unwrap();
        assert_eq!(cond.coefficients, [16, -4, 1].map(Scalar::from).to_vec());
        assert_eq!(r.invariant, cond.eval(&op).is_zero());
    }
}
