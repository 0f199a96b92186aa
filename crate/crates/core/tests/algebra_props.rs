use proptest::prelude::*;
use stirling_core::{Coefficient, LambdaPoly, PolyOp, RatOp, Rational, TruncatedSeries};

type QSeries = TruncatedSeries<Rational>;
type PSeries = TruncatedSeries<LambdaPoly>;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn poly(max_len: usize) -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(LambdaPoly::from_coeffs)
}

/// Series with zero constant term at the given order.
fn nilpotent_series(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(rational(), order).prop_map(move |tail| {
        let mut c = vec![Rational::zero()];
        c.extend(tail);
        QSeries::from_coeffs(order, c)
    })
}

fn nilpotent_poly_series(order: usize) -> impl Strategy<Value = PSeries> {
    prop::collection::vec(poly(3), order).prop_map(move |tail| {
        let mut c = vec![LambdaPoly::zero()];
        c.extend(tail);
        PSeries::from_coeffs(order, c)
    })
}

fn unit_series(order: usize) -> impl Strategy<Value = QSeries> {
    (
        nilpotent_series(order),
        rational().prop_filter("nonzero", |r| !r.is_zero()),
    )
        .prop_map(move |(s, head)| s.add(&QSeries::constant(order, head)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.apply(RatOp::Add, &b).unwrap(), b.apply(RatOp::Add, &a).unwrap());
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            let quotient = a.apply(RatOp::Div, &b).unwrap();
            prop_assert_eq!(quotient * &b, a.clone());
        }
        // canonical: gcd(p, q) = 1, q > 0
        let s = &a + &b;
        prop_assert!(s.denom() > &0.into());
        prop_assert_eq!(num_integer::Integer::gcd(s.numer(), s.denom()), 1.into());
        prop_assert_eq!(s.to_string().parse::<Rational>().unwrap(), s);
    }

    #[test]
    fn degree_is_additive(p in poly(6), q in poly(6)) {
        let prod = p.apply(PolyOp::Mul, &q);
        match (p.degree(), q.degree()) {
            (Some(dp), Some(dq)) => prop_assert_eq!(prod.degree(), Some(dp + dq)),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn evaluation_is_multiplicative(p in poly(6), q in poly(6), x in rational()) {
        let lhs = p.apply(PolyOp::Mul, &q).eval(&x);
        let rhs = p.eval(&x).apply(RatOp::Mul, &q.eval(&x)).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = p.apply(PolyOp::Add, &q).eval(&x);
        prop_assert_eq!(sum, p.eval(&x) + q.eval(&x));
    }

    #[test]
    fn substitute_negated_is_an_involution(p in poly(8), x in rational()) {
        prop_assert_eq!(p.substitute_negated().substitute_negated(), p.clone());
        prop_assert_eq!(p.substitute_negated().eval(&x), p.eval(&-&x));
    }

    #[test]
    fn representation_equality_is_value_equality(p in poly(5), q in poly(5)) {
        // p + q − q must come back structurally identical
        let back = p.apply(PolyOp::Add, &q).apply(PolyOp::Sub, &q);
        prop_assert_eq!(&back, &p);
        prop_assert!(back.coeffs().last().is_none_or(|c| !c.is_zero()));
    }

    #[test]
    fn div_exact_lambda_inverts_lambda_multiple(p in poly(6)) {
        let lp = &LambdaPoly::lambda() * &p;
        prop_assert_eq!(lp.div_exact_lambda().unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_log_round_trip(order in 0usize..=24, seed in any::<u64>()) {
        let f = small_nilpotent(order, seed);
        let one = QSeries::one(order);
        prop_assert_eq!(f.log1p().unwrap().exp().unwrap(), one.add(&f));
        prop_assert_eq!(f.exp().unwrap().sub(&one).log1p().unwrap(), f);
    }

    #[test]
    fn inverse_round_trip(f in (0usize..=16).prop_flat_map(unit_series)) {
        let order = f.order();
        prop_assert_eq!(f.mul(&f.inverse().unwrap()), QSeries::one(order));
    }

    #[test]
    fn composition_is_associative(
        (f, g, h) in (1usize..=8).prop_flat_map(|n| (nilpotent_series(n), nilpotent_series(n), nilpotent_series(n)))
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pow_matches_repeated_product(f in (0usize..=10).prop_flat_map(nilpotent_series), k in 0u32..6) {
        let mut expected = QSeries::one(f.order());
        for _ in 0..k {
            expected = expected.mul(&f);
        }
        prop_assert_eq!(f.pow(k), expected);
    }

    #[test]
    fn evaluation_commutes_with_series_ops(
        (f, g) in (1usize..=7).prop_flat_map(|n| (nilpotent_poly_series(n), nilpotent_poly_series(n))),
        x in rational(),
    ) {
        let at = |s: &PSeries| s.map(|c| c.eval(&x));
        let (fx, gx) = (at(&f), at(&g));
        let one = PSeries::one(f.order());
        prop_assert_eq!(at(&f.mul(&g)), fx.mul(&gx));
        prop_assert_eq!(at(&f.pow(3)), fx.pow(3));
        prop_assert_eq!(at(&f.log1p().unwrap()), fx.log1p().unwrap());
        prop_assert_eq!(at(&f.exp().unwrap()), fx.exp().unwrap());
        prop_assert_eq!(at(&f.compose(&g).unwrap()), fx.compose(&gx).unwrap());
        prop_assert_eq!(at(&one.sub(&f).inverse().unwrap()), QSeries::one(f.order()).sub(&fx).inverse().unwrap());
        prop_assert_eq!(at(&f.egf_coeff(f.order()).map(|c| PSeries::constant(0, c)).unwrap()),
                        QSeries::constant(0, fx.egf_coeff(fx.order()).unwrap()));
        if f.order() >= 1 {
            let sf = f.shift_down(1).unwrap();
            prop_assert_eq!(at(&sf), fx.shift_down(1).unwrap());
        }
    }
}

// Coefficients in {−2..2}/{1,2} keep exact growth manageable at order 24.
fn small_nilpotent(order: usize, seed: u64) -> QSeries {
    let mut state = seed;
    QSeries::from_fn(order, |n| {
        if n == 0 {
            return Rational::zero();
        }
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let num = ((state >> 33) % 5) as i64 - 2;
        let den = ((state >> 40) % 2) as i64 + 1;
        Rational::new(num, den).unwrap()
    })
}

#[test]
fn lambda_poly_units() {
    assert_eq!(
        LambdaPoly::constant(Rational::from(4)).inverse(),
        Some(LambdaPoly::constant(Rational::new(1, 4).unwrap()))
    );
    assert_eq!(LambdaPoly::lambda().inverse(), None);
    assert_eq!(LambdaPoly::zero().inverse(), None);
}
