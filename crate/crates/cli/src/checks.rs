//! Named identity checks over triangles up to a given row.

use std::fmt;

use serde::Serialize;
use stirling_core::expectation::{degenerate_moment_sum, exact_power_moment};
use stirling_core::stirling::{
    binomial, build_triangle, build_triangle_gf, generator, stirling1_unsigned, LambdaSeries,
};
use stirling_core::{Family, LambdaPoly, Rational, StirlingTriangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    /// Unsigned new type first kind: convolution against its generating function.
    FirstKindConvolution,
    /// New type second kind: convolution against its generating function.
    SecondKindConvolution,
    /// Series sum over degenerate moments against the first-kind numbers at −λ.
    MomentSum,
    /// Signed first-kind and second-kind new type triangles are inverse matrices.
    Inversion,
    /// Every family: recurrence or convolution against generating functions.
    GfVsConv,
    /// Constant terms equal the classical numbers; leading coefficients equal constant terms.
    LimitLambda0,
    /// C(n,k)·E[S_k^{n−k}] equals the unsigned first-kind number.
    PowerMoment,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::FirstKindConvolution,
        CheckName::SecondKindConvolution,
        CheckName::MomentSum,
        CheckName::Inversion,
        CheckName::GfVsConv,
        CheckName::LimitLambda0,
        CheckName::PowerMoment,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::FirstKindConvolution => "theorem-2-1",
            CheckName::SecondKindConvolution => "theorem-3-1",
            CheckName::MomentSum => "theorem-2-2",
            CheckName::Inversion => "inversion",
            CheckName::GfVsConv => "gf-vs-conv",
            CheckName::LimitLambda0 => "limit-lambda0",
            CheckName::PowerMoment => "adell-lekuona",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: usize,
    pub k: usize,
    /// What was being compared, e.g. `ns2 generating function`.
    pub context: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_n: usize,
    pub passed: bool,
    pub first_failure: Option<Failure>,
}

impl CheckResult {
    fn from_outcome(name: CheckName, max_n: usize, outcome: Result<(), Failure>) -> Self {
        let first_failure = outcome.err();
        CheckResult {
            name: name.to_string(),
            max_n,
            passed: first_failure.is_none(),
            first_failure,
        }
    }

    /// Human-readable summary line(s).
    pub fn summary(&self) -> String {
        match &self.first_failure {
            None => format!("PASS {} max_n={}", self.name, self.max_n),
            Some(f) => format!(
                "FAIL {} max_n={} at (n={}, k={}) [{}]: expected {}, got {}",
                self.name, self.max_n, f.n, f.k, f.context, f.expected, f.actual
            ),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

type Outcome = Result<(), Failure>;

fn compare(
    n: usize,
    k: usize,
    context: &str,
    expected: &LambdaPoly,
    actual: &LambdaPoly,
) -> Outcome {
    if expected == actual {
        Ok(())
    } else {
        Err(Failure {
            n,
            k,
            context: context.to_string(),
            expected: expected.to_ascending_string(),
            actual: actual.to_ascending_string(),
        })
    }
}

fn internal(n: usize, k: usize, context: &str, err: impl fmt::Display) -> Failure {
    Failure {
        n,
        k,
        context: context.to_string(),
        expected: "a value".to_string(),
        actual: format!("error: {err}"),
    }
}

/// GF truncation with two guard terms past the last row.
pub fn gf_order(max_n: usize) -> usize {
    max_n + 2
}

fn triangles_agree(family: Family, max_n: usize) -> Outcome {
    let context = format!("{family} generating function vs recurrence/convolution");
    let fast = build_triangle(family, max_n);
    let gf = build_triangle_gf(family, max_n, gf_order(max_n))
        .map_err(|e| internal(max_n, 0, &context, e))?;
    for (n, k, expected) in fast.entries() {
        compare(n, k, &context, expected, gf.get(n, k).expect("same shape"))?;
    }
    Ok(())
}

fn moment_sum(max_n: usize) -> Outcome {
    let context = "summation over degenerate moments vs unsigned first kind at -lambda";
    let table = build_triangle(Family::NS1U, max_n);
    for n in 1..=max_n {
        for k in 1..=n {
            let expected = table.get(n, k).expect("in range").substitute_negated();
            let actual = degenerate_moment_sum(n, k).map_err(|e| internal(n, k, context, e))?;
            compare(n, k, context, &expected, &actual)?;
        }
    }
    Ok(())
}

fn entry(t: &StirlingTriangle, n: usize, k: usize) -> LambdaPoly {
    t.get(n, k).cloned().unwrap_or_default()
}

fn inversion(max_n: usize) -> Outcome {
    let a = build_triangle(Family::NS1, max_n);
    let b = build_triangle(Family::NS2, max_n);
    for n in 0..=max_n {
        for k in 0..=n {
            let delta = if n == k {
                LambdaPoly::one()
            } else {
                LambdaPoly::zero()
            };
            let ba: LambdaPoly = (k..=n).map(|m| &entry(&b, n, m) * &entry(&a, m, k)).sum();
            compare(n, k, "ns2 * ns1 = identity", &delta, &ba)?;
            let ab: LambdaPoly = (k..=n).map(|m| &entry(&a, n, m) * &entry(&b, m, k)).sum();
            compare(n, k, "ns1 * ns2 = identity", &delta, &ab)?;
        }
    }
    let order = max_n + 1;
    let context = "ns2 generator composed with ns1 generator = t";
    let first = generator(Family::NS1, order).map_err(|e| internal(order, 1, context, e))?;
    let second = generator(Family::NS2, order).map_err(|e| internal(order, 1, context, e))?;
    let composed = second
        .compose(&first)
        .map_err(|e| internal(order, 1, context, e))?;
    let t = LambdaSeries::variable(order);
    for (i, (want, got)) in t.coeffs().iter().zip(composed.coeffs()).enumerate() {
        compare(i, 1, context, want, got)?;
    }
    Ok(())
}

fn limits(max_n: usize) -> Outcome {
    let zero = Rational::zero();
    for family in [
        Family::NS1U,
        Family::NS2,
        Family::NS1,
        Family::DS1,
        Family::DS2,
    ] {
        let limit = build_triangle(family.lambda_zero_limit(), max_n);
        let table = build_triangle(family, max_n);
        let context = format!("{family} at lambda=0 vs {}", family.lambda_zero_limit());
        for (n, k, p) in table.entries() {
            let expected = entry(&limit, n, k);
            compare(
                n,
                k,
                &context,
                &expected,
                &LambdaPoly::constant(p.eval(&zero)),
            )?;
            if matches!(family, Family::NS1U | Family::NS2) && !p.is_zero() {
                let context = format!("{family} leading coefficient vs constant term");
                let lead = LambdaPoly::constant(p.coeff(n - k));
                compare(
                    n,
                    k,
                    &context,
                    &LambdaPoly::constant(p.constant_term()),
                    &lead,
                )?;
            }
        }
    }
    Ok(())
}

fn power_moment(max_n: usize) -> Outcome {
    let context = "C(n,k) E[S_k^(n-k)] vs unsigned first kind";
    for n in 1..=max_n {
        for k in 1..=n {
            let expected = LambdaPoly::constant(stirling1_unsigned(n, k));
            let actual = LambdaPoly::constant(binomial(n, k) * exact_power_moment(k, n - k));
            compare(n, k, context, &expected, &actual)?;
        }
    }
    Ok(())
}

pub fn run_check(name: CheckName, max_n: usize) -> CheckResult {
    let outcome = match name {
        CheckName::FirstKindConvolution => triangles_agree(Family::NS1U, max_n),
        CheckName::SecondKindConvolution => triangles_agree(Family::NS2, max_n),
        CheckName::MomentSum => moment_sum(max_n),
        CheckName::Inversion => inversion(max_n),
        CheckName::GfVsConv => Family::ALL
            .into_iter()
            .try_for_each(|f| triangles_agree(f, max_n)),
        CheckName::LimitLambda0 => limits(max_n),
        CheckName::PowerMoment => power_moment(max_n),
    };
    CheckResult::from_outcome(name, max_n, outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_small() {
        for name in CheckName::ALL {
            let r = run_check(name, 6);
            assert!(r.passed, "{}", r.summary());
            assert!(r.first_failure.is_none());
        }
    }

    #[test]
    fn inversion_at_one() {
        let r = run_check(CheckName::Inversion, 1);
        assert!(r.passed);
        assert_eq!(r.summary(), "PASS inversion max_n=1");
    }

    #[test]
    fn failures_carry_the_counterexample() {
        let want = LambdaPoly::from_ints(&[1, 1]);
        let got = LambdaPoly::from_ints(&[1, 2]);
        let r = CheckResult::from_outcome(
            CheckName::FirstKindConvolution,
            3,
            compare(2, 1, "demo", &want, &got),
        );
        assert!(!r.passed);
        let f = r.first_failure.as_ref().unwrap();
        assert_eq!((f.n, f.k), (2, 1));
        assert_eq!(f.expected, "1+1*l");
        assert_eq!(f.actual, "1+2*l");
        assert!(r.summary().starts_with("FAIL theorem-2-1"));
        assert!(r.to_json().contains("\"passed\":false"));
    }
}
