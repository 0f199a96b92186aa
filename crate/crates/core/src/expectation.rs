//! Moments of S_k = U_1·X_1 + … + U_k·X_k, with U_i uniform on (0,1) and X_i
//! exponential of rate 1.
//!
//! Exact moments come from the moment generating functions expanded as formal
//! series. The Monte Carlo side samples S_k directly and averages the
//! degenerate falling factorial (s)_{n,λ} = s(s−λ)⋯(s−(n−1)λ).
//!
//! Sampling is organised in fixed-size blocks. Block `b` draws from the ChaCha8
//! stream `b` of a generator seeded with the run seed, and block statistics are
//! merged in block order. The `chunks` setting only decides how blocks are
//! spread over worker threads, so it never changes a report.

use rand::distr::{Distribution, Open01, StandardUniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{LambdaPoly, Rational};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::stirling::{
    binomial, new_stirling1_unsigned_conv, scaled_log_series, stirling1_signed, LambdaSeries,
};

/// Samples per RNG substream.
pub const BLOCK_SIZE: u64 = 1 << 13;

/// Largest |λ| accepted for Monte Carlo runs.
pub const MAX_ABS_LAMBDA: f64 = 2.0;

/// Largest falling-factorial order accepted for Monte Carlo runs.
pub const MAX_MC_ORDER: usize = 16;

/// Automated checks fail when |z| exceeds this.
pub const Z_THRESHOLD: f64 = 5.0;

/// E[S_k^j] = j!·[t^j] (−log(1−t)/t)^k
pub fn exact_power_moment(k: usize, j: usize) -> Rational {
    let t = TruncatedSeries::<Rational>::variable(j + 1);
    let log = t.neg().log1p().expect("zero constant term").neg();
    let single = log.shift_down(1).expect("valuation one");
    single.pow(k as u32).egf_coeff(j).expect("order is j")
}

/// The series E[e_λ^{S_k}(t)] truncated at `order`.
///
/// With p(t) = (1/λ)log(1+λt) this is ((−log(1−p)/t) / (p/t))^k.
pub fn degenerate_moment_series(k: usize, order: usize) -> Result<LambdaSeries> {
    let p = scaled_log_series(order + 1);
    let unit = p.shift_down(1)?;
    let log = p.neg().log1p()?.neg().shift_down(1)?;
    Ok(unit.inverse()?.mul(&log).pow(k as u32))
}

/// E[(S_k)_{n,λ}] as a polynomial in λ, from the generating function route.
pub fn exact_degenerate_moment(k: usize, n: usize, order: usize) -> Result<LambdaPoly> {
    if order < n {
        return Err(Error::InsufficientOrder { needed: n, order });
    }
    degenerate_moment_series(k, order)?.egf_coeff(n)
}

/// E[(S_k)_{n,λ}] by expanding (x)_{n,λ} = Σ_j S_1(n,j) λ^{n−j} x^j and
/// taking power moments term by term.
pub fn degenerate_moment_from_power(k: usize, n: usize) -> LambdaPoly {
    (0..=n)
        .map(|j| LambdaPoly::monomial(stirling1_signed(n, j) * exact_power_moment(k, j), n - j))
        .sum()
}

fn check_first_kind_indices(n: usize, k: usize) -> Result<()> {
    if k == 0 || n < k {
        return Err(Error::Precondition(format!(
            "need n >= k >= 1, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Σ_{m=k}^{n} λ^{m−k}·C(n,m)·S_1(m,k)·E[(S_k)_{n−m,λ}]
///
/// Equals the unsigned new type first-kind number at −λ.
pub fn degenerate_moment_sum(n: usize, k: usize) -> Result<LambdaPoly> {
    check_first_kind_indices(n, k)?;
    let moments = degenerate_moment_series(k, n - k)?;
    (k..=n)
        .map(|m| {
            let c = binomial(n, m) * stirling1_signed(m, k);
            Ok(moments.egf_coeff(n - m)?.scale(&c).shift_up(m - k))
        })
        .sum()
}

/// One draw of S_k.
pub fn sample_s_k<R: Rng + ?Sized>(k: usize, rng: &mut R) -> f64 {
    (0..k)
        .map(|_| {
            let u: f64 = Open01.sample(rng);
            let v: f64 = StandardUniform.sample(rng);
            let x = -(-v).ln_1p();
            u * x
        })
        .sum()
}

/// (s)_{n,λ} = s(s−λ)⋯(s−(n−1)λ)
pub fn falling_factorial(s: f64, n: usize, lambda: f64) -> f64 {
    (0..n).map(|i| s - i as f64 * lambda).product()
}

#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    /// Number of U·X summands.
    pub k: usize,
    /// Order of the degenerate falling factorial.
    pub n: usize,
    pub lambda: f64,
    pub samples: u64,
    pub seed: u64,
    pub chunks: usize,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.k == 0 {
            return bad("k must be positive".into());
        }
        if self.samples < 2 {
            return bad(format!("samples must be at least 2, got {}", self.samples));
        }
        if self.chunks == 0 {
            return bad("chunks must be positive".into());
        }
        if !self.lambda.is_finite() || self.lambda.abs() > MAX_ABS_LAMBDA {
            return bad(format!(
                "lambda must lie in [-{MAX_ABS_LAMBDA}, {MAX_ABS_LAMBDA}], got {}",
                self.lambda
            ));
        }
        if self.n > MAX_MC_ORDER {
            return bad(format!("n must be at most {MAX_MC_ORDER}, got {}", self.n));
        }
        Ok(())
    }

    fn exact_lambda(&self) -> Rational {
        Rational::from_f64(self.lambda).expect("validated finite")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McReport {
    pub estimate: f64,
    pub std_error: f64,
    pub exact_value: f64,
    pub z_score: f64,
    pub samples_used: u64,
}

impl McReport {
    fn new(estimate: f64, std_error: f64, exact_value: f64, samples_used: u64) -> Self {
        let diff = estimate - exact_value;
        let z_score = if std_error > 0.0 {
            diff / std_error
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        };
        McReport {
            estimate,
            std_error,
            exact_value,
            z_score,
            samples_used,
        }
    }

    pub fn passes(&self) -> bool {
        self.z_score.abs() <= Z_THRESHOLD
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Welford) -> Welford {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        Welford { count, mean, m2 }
    }

    fn std_error(&self) -> f64 {
        let variance = self.m2 / (self.count - 1) as f64;
        (variance / self.count as f64).sqrt()
    }
}

fn run_block(
    seed: u64,
    block: u64,
    len: u64,
    k: usize,
    integrand: &(dyn Fn(f64) -> f64 + Sync),
) -> Welford {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut acc = Welford::default();
    for _ in 0..len {
        acc.push(integrand(sample_s_k(k, &mut rng)));
    }
    acc
}

/// Mean of `integrand(S_k)` over `samples` draws, with its standard error.
fn estimate_mean(cfg: &McConfig, integrand: &(dyn Fn(f64) -> f64 + Sync)) -> Welford {
    let blocks = cfg.samples.div_ceil(BLOCK_SIZE);
    let chunks = (cfg.chunks as u64).min(blocks);
    let per_chunk = blocks.div_ceil(chunks);
    let block_len = |b: u64| BLOCK_SIZE.min(cfg.samples - b * BLOCK_SIZE);
    let partials: Vec<Vec<Welford>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * per_chunk;
            let end = ((c + 1) * per_chunk).min(blocks);
            (start..end)
                .map(|b| run_block(cfg.seed, b, block_len(b), cfg.k, integrand))
                .collect()
        })
        .collect();
    partials
        .into_iter()
        .flatten()
        .fold(Welford::default(), Welford::merge)
}

/// Monte Carlo estimate of E[(S_k)_{n,λ}] against the exact polynomial value.
pub fn mc_estimate_degenerate_moment(cfg: &McConfig) -> Result<McReport> {
    cfg.validate()?;
    let exact = exact_degenerate_moment(cfg.k, cfg.n, cfg.n)?
        .eval(&cfg.exact_lambda())
        .to_f64();
    if cfg.n == 0 {
        return Ok(McReport::new(1.0, 0.0, exact, cfg.samples));
    }
    let (n, lambda) = (cfg.n, cfg.lambda);
    let stats = estimate_mean(cfg, &move |s| falling_factorial(s, n, lambda));
    Ok(McReport::new(
        stats.mean,
        stats.std_error(),
        exact,
        stats.count,
    ))
}

/// Monte Carlo estimate of Σ_{m=k}^{n} λ^{m−k} C(n,m) S_1(m,k) E[(S_k)_{n−m,λ}].
///
/// Each draw of S_k feeds every term of the sum, so the reported standard
/// error is that of the whole summand. The exact value is the unsigned new
/// type first-kind number (n,k) evaluated at −λ.
pub fn mc_estimate_moment_sum(cfg: &McConfig) -> Result<McReport> {
    cfg.validate()?;
    check_first_kind_indices(cfg.n, cfg.k)?;
    let (n, k, lambda) = (cfg.n, cfg.k, cfg.lambda);
    let lam = cfg.exact_lambda();
    let weights: Vec<f64> = (k..=n)
        .map(|m| (binomial(n, m) * stirling1_signed(m, k) * lam.pow((m - k) as u32)).to_f64())
        .collect();
    let exact = new_stirling1_unsigned_conv(n, k)
        .substitute_negated()
        .eval(&lam)
        .to_f64();
    let integrand = move |s: f64| {
        weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * falling_factorial(s, n - (k + i), lambda))
            .sum::<f64>()
    };
    let stats = estimate_mean(cfg, &integrand);
    Ok(McReport::new(
        stats.mean,
        stats.std_error(),
        exact,
        stats.count,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    fn cfg(k: usize, n: usize, lambda: f64, samples: u64, seed: u64) -> McConfig {
        McConfig {
            k,
            n,
            lambda,
            samples,
            seed,
            chunks: 4,
        }
    }

    #[test]
    fn power_moments() {
        assert_eq!(exact_power_moment(1, 1), q(1, 2));
        assert_eq!(exact_power_moment(1, 2), q(2, 3));
        // E[(UX)^j] = E[U^j]·E[X^j] = j!/(j+1)
        for j in 0..8 {
            let fact: Rational = (1..=j as i64).map(Rational::from).product();
            assert_eq!(exact_power_moment(1, j), fact * q(1, j as i64 + 1));
        }
        assert_eq!(exact_power_moment(3, 0), Rational::one());
        assert_eq!(exact_power_moment(2, 1), Rational::one());
    }

    #[test]
    fn degenerate_moment_examples() {
        assert_eq!(exact_degenerate_moment(1, 0, 0).unwrap(), LambdaPoly::one());
        assert_eq!(
            exact_degenerate_moment(1, 1, 1).unwrap(),
            LambdaPoly::constant(q(1, 2))
        );
        let expected = LambdaPoly::from_coeffs(vec![q(2, 3), q(-1, 2)]);
        assert_eq!(exact_degenerate_moment(1, 2, 2).unwrap(), expected);
        assert_eq!(degenerate_moment_from_power(1, 2), expected);
        assert_eq!(degenerate_moment_from_power(5, 0), LambdaPoly::one());
        assert!(matches!(
            exact_degenerate_moment(2, 4, 3),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn moment_routes_agree() {
        for k in 1..=4 {
            for n in 0..=10 {
                assert_eq!(
                    exact_degenerate_moment(k, n, n).unwrap(),
                    degenerate_moment_from_power(k, n),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn moment_sum_examples() {
        assert_eq!(
            degenerate_moment_sum(2, 1).unwrap(),
            LambdaPoly::from_ints(&[1, -1])
        );
        assert_eq!(
            degenerate_moment_sum(3, 1).unwrap(),
            LambdaPoly::from_ints(&[2, -3, 2])
        );
        assert!(degenerate_moment_sum(2, 3).is_err());
        assert!(degenerate_moment_sum(2, 0).is_err());
    }

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(3.0, 0, 0.5), 1.0);
        assert_eq!(falling_factorial(3.0, 3, 1.0), 6.0);
        assert_eq!(falling_factorial(2.0, 2, 0.0), 4.0);
    }

    #[test]
    fn samples_are_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 1..5 {
            for _ in 0..10_000 {
                let s = sample_s_k(k, &mut rng);
                assert!(s.is_finite() && s >= 0.0);
            }
        }
    }

    #[test]
    fn sample_means_match_linearity() {
        for (k, mean) in [(1usize, 0.5f64), (2, 1.0)] {
            let mut rng = ChaCha8Rng::seed_from_u64(11 + k as u64);
            let mut acc = Welford::default();
            for _ in 0..1_000_000 {
                acc.push(sample_s_k(k, &mut rng));
            }
            let z = (acc.mean - mean) / acc.std_error();
            assert!(z.abs() <= Z_THRESHOLD, "k={k} z={z}");
        }
    }

    #[test]
    fn zero_order_moment_is_degenerate() {
        let r = mc_estimate_degenerate_moment(&cfg(3, 0, 0.7, 100, 5)).unwrap();
        assert_eq!(r.estimate, 1.0);
        assert_eq!(r.std_error, 0.0);
        assert_eq!(r.exact_value, 1.0);
        assert_eq!(r.z_score, 0.0);
    }

    #[test]
    fn mc_first_moment() {
        for lambda in [-1.0, 0.0, 0.5] {
            let r = mc_estimate_degenerate_moment(&cfg(1, 1, lambda, 1_000_000, 42)).unwrap();
            assert_eq!(r.exact_value, 0.5);
            assert!(r.passes(), "{r:?}");
        }
    }

    #[test]
    fn mc_k2_n3() {
        let r = mc_estimate_degenerate_moment(&cfg(2, 3, 0.5, 1_000_000, 3)).unwrap();
        let exact = exact_degenerate_moment(2, 3, 3)
            .unwrap()
            .eval(&q(1, 2))
            .to_f64();
        assert_eq!(r.exact_value, exact);
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn mc_moment_sum_points() {
        let a = mc_estimate_moment_sum(&cfg(1, 2, 0.0, 200_000, 9)).unwrap();
        assert_eq!(a.exact_value, 1.0);
        assert!(a.passes(), "{a:?}");
        let b = mc_estimate_moment_sum(&cfg(1, 2, 0.5, 200_000, 9)).unwrap();
        assert_eq!(b.exact_value, 0.5);
        assert!(b.passes(), "{b:?}");
        let c = mc_estimate_moment_sum(&cfg(2, 4, 0.25, 200_000, 9)).unwrap();
        assert_eq!(c.exact_value, 7.1875);
        assert!(c.passes(), "{c:?}");
        assert!(mc_estimate_moment_sum(&cfg(3, 2, 0.5, 100, 1)).is_err());
    }

    #[test]
    fn invalid_configs() {
        let base = cfg(1, 1, 0.5, 100, 1);
        assert!(base.validate().is_ok());
        for bad in [
            McConfig {
                k: 0,
                ..base.clone()
            },
            McConfig {
                samples: 1,
                ..base.clone()
            },
            McConfig {
                chunks: 0,
                ..base.clone()
            },
            McConfig {
                lambda: f64::NAN,
                ..base.clone()
            },
            McConfig {
                lambda: 2.5,
                ..base.clone()
            },
            McConfig {
                n: MAX_MC_ORDER + 1,
                ..base.clone()
            },
        ] {
            assert!(matches!(
                mc_estimate_degenerate_moment(&bad),
                Err(Error::InvalidConfig(_))
            ));
        }
    }

    #[test]
    fn chunking_does_not_change_reports() {
        let base = cfg(2, 3, 0.5, 50_000, 77);
        let reports: Vec<McReport> = [1, 3, 4, 16, 1000]
            .into_iter()
            .map(|chunks| {
                mc_estimate_degenerate_moment(&McConfig {
                    chunks,
                    ..base.clone()
                })
                .unwrap()
            })
            .collect();
        for r in &reports[1..] {
            assert_eq!(r, &reports[0]);
            assert_eq!(r.estimate.to_bits(), reports[0].estimate.to_bits());
        }
        assert_eq!(reports[0].samples_used, 50_000);
    }
}
