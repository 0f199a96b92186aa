use stirling_core::expectation::{
    degenerate_moment_from_power, degenerate_moment_sum, exact_degenerate_moment,
    exact_power_moment,
};
use stirling_core::stirling::{
    binomial, build_triangle, build_triangle_gf, generator, new_stirling1_signed,
    new_stirling1_signed_gf, new_stirling1_unsigned_conv, new_stirling2_conv, stirling1_signed,
    stirling1_unsigned, stirling2,
};
use stirling_core::{Family, LambdaPoly, Rational, TruncatedSeries};

fn classical(family: Family, n: usize, k: usize) -> Rational {
    match family {
        Family::S1 => stirling1_signed(n, k),
        Family::S1U => stirling1_unsigned(n, k),
        Family::S2 => stirling2(n, k),
        other => panic!("{other} is not classical"),
    }
}

#[test]
fn every_family_agrees_across_routes() {
    for family in Family::ALL {
        let fast = build_triangle(family, 20);
        let gf = build_triangle_gf(family, 20, 22).unwrap();
        for (n, k, p) in fast.entries() {
            assert_eq!(Some(p), gf.get(n, k), "{family} ({n},{k})");
        }
    }
}

#[test]
fn signed_first_kind_gf_route() {
    for n in 0..=12 {
        for k in 0..=n {
            assert_eq!(
                new_stirling1_signed_gf(n, k, n).unwrap(),
                new_stirling1_signed(n, k),
                "({n},{k})"
            );
        }
    }
}

#[test]
fn boundaries() {
    for family in Family::ALL {
        let t = build_triangle(family, 12);
        for n in 0..=12 {
            assert_eq!(t.get(n, n), Some(&LambdaPoly::one()), "{family} ({n},{n})");
            if n >= 1 {
                assert!(t.get(n, 0).unwrap().is_zero(), "{family} ({n},0)");
            }
        }
        if family.is_classical() {
            for (_, _, p) in t.entries() {
                let c = p.as_constant().expect("constant entry");
                assert!(c.is_integer());
            }
        }
    }
}

#[test]
fn lambda_zero_limits() {
    let zero = Rational::zero();
    for family in [
        Family::NS1U,
        Family::NS2,
        Family::NS1,
        Family::DS1,
        Family::DS2,
    ] {
        let limit = family.lambda_zero_limit();
        let t = build_triangle(family, 20);
        for (n, k, p) in t.entries() {
            assert_eq!(p.eval(&zero), classical(limit, n, k), "{family} ({n},{k})");
        }
    }
}

#[test]
fn new_type_shape() {
    for family in [Family::NS1U, Family::NS2] {
        let t = build_triangle(family, 20);
        for (n, k, p) in t.entries() {
            if p.is_zero() {
                continue;
            }
            assert_eq!(p.degree(), Some(n - k), "{family} ({n},{k})");
            assert_eq!(p.leading_coeff(), p.constant_term(), "{family} ({n},{k})");
            assert!(p.has_nonnegative_integer_coeffs(), "{family} ({n},{k})");
        }
    }
    let signed = build_triangle(Family::NS1, 20);
    for (n, k, p) in signed.entries() {
        let unsigned = if (n - k) % 2 == 1 { -p } else { p.clone() };
        assert!(unsigned.has_nonnegative_integer_coeffs(), "({n},{k})");
    }
}

#[test]
fn new_type_triangles_are_mutually_inverse() {
    let max_n = 15;
    let a = build_triangle(Family::NS1, max_n);
    let b = build_triangle(Family::NS2, max_n);
    let at = |t: &stirling_core::StirlingTriangle, n: usize, k: usize| {
        t.get(n, k).cloned().unwrap_or_default()
    };
    for n in 0..=max_n {
        for k in 0..=n {
            let ba: LambdaPoly = (k..=n).map(|m| &at(&b, n, m) * &at(&a, m, k)).sum();
            let ab: LambdaPoly = (k..=n).map(|m| &at(&a, n, m) * &at(&b, m, k)).sum();
            let delta = if n == k {
                LambdaPoly::one()
            } else {
                LambdaPoly::zero()
            };
            assert_eq!(ba, delta, "BA ({n},{k})");
            assert_eq!(ab, delta, "AB ({n},{k})");
        }
    }
}

#[test]
fn generators_are_compositional_inverses() {
    let order = 16;
    let first = generator(Family::NS1, order).unwrap();
    let second = generator(Family::NS2, order).unwrap();
    let t = TruncatedSeries::<LambdaPoly>::variable(order);
    assert_eq!(second.compose(&first).unwrap(), t);
    assert_eq!(first.compose(&second).unwrap(), t);
    // same for the classical pair log(1+t), e^t − 1
    let log = generator(Family::S1, order).unwrap();
    let expm1 = generator(Family::S2, order).unwrap();
    assert_eq!(log.compose(&expm1).unwrap(), t);
}

#[test]
fn moment_sum_polynomial_identity() {
    for n in 1..=12 {
        for k in 1..=n {
            let expected = new_stirling1_unsigned_conv(n, k).substitute_negated();
            assert_eq!(degenerate_moment_sum(n, k).unwrap(), expected, "({n},{k})");
        }
    }
}

#[test]
fn power_moment_identity() {
    for n in 1..=10 {
        for k in 1..=n {
            let lhs = binomial(n, k) * exact_power_moment(k, n - k);
            assert_eq!(lhs, stirling1_unsigned(n, k), "({n},{k})");
            assert_eq!(
                degenerate_moment_sum(n, k).unwrap().constant_term(),
                lhs,
                "({n},{k})"
            );
        }
    }
}

#[test]
fn moment_oracles_agree_beyond_small_cases() {
    for k in 1..=4 {
        let series_route: Vec<LambdaPoly> = (0..=10)
            .map(|n| exact_degenerate_moment(k, n, 10).unwrap())
            .collect();
        for (n, p) in series_route.iter().enumerate() {
            assert_eq!(p, &degenerate_moment_from_power(k, n), "k={k} n={n}");
        }
    }
}

#[test]
fn second_kind_convolution_row_sums() {
    // At λ = 1 the convolution collapses to Σ_m {n,m}{m,k}; spot-check one
    // value computed by hand: n=4, k=2 gives 7·1 + 6·3 + 1·7 = 32.
    let one = Rational::one();
    assert_eq!(new_stirling2_conv(4, 2).eval(&one), Rational::from(32));
}
