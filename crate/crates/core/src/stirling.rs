//! The eight Stirling-type families, each computed two ways.
//!
//! The default route is a recurrence (classical and degenerate families) or a
//! finite convolution over classical numbers (new type families). The second
//! route expands the defining exponential generating function with
//! [`TruncatedSeries`] and reads off EGF coefficients. The two routes share
//! no code beyond the coefficient arithmetic, so they serve as oracles for
//! each other.

use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{LambdaPoly, Rational};
use crate::error::{Error, Result};
use crate::series::{factorial, TruncatedSeries};

pub type LambdaSeries = TruncatedSeries<LambdaPoly>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Signed Stirling numbers of the first kind S_1(n,k).
    S1,
    /// Unsigned Stirling numbers of the first kind.
    S1U,
    /// Stirling numbers of the second kind.
    S2,
    /// Degenerate Stirling numbers of the first kind S_{1,λ}(n,k).
    DS1,
    /// Degenerate Stirling numbers of the second kind S_{2,λ}(n,k).
    DS2,
    /// New type degenerate Stirling numbers of the first kind S*_{1,λ}(n,k).
    NS1,
    /// Unsigned new type degenerate Stirling numbers of the first kind.
    NS1U,
    /// New type degenerate Stirling numbers of the second kind.
    NS2,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::S1,
        Family::S1U,
        Family::S2,
        Family::DS1,
        Family::DS2,
        Family::NS1,
        Family::NS1U,
        Family::NS2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::S1 => "s1",
            Family::S1U => "s1u",
            Family::S2 => "s2",
            Family::DS1 => "ds1",
            Family::DS2 => "ds2",
            Family::NS1 => "ns1",
            Family::NS1U => "ns1u",
            Family::NS2 => "ns2",
        }
    }

    /// Whether entries are plain integers rather than genuine polynomials in λ.
    pub fn is_classical(self) -> bool {
        matches!(self, Family::S1 | Family::S1U | Family::S2)
    }

    /// The classical family obtained in the limit λ → 0.
    pub fn lambda_zero_limit(self) -> Family {
        match self {
            Family::S1 | Family::DS1 | Family::NS1 => Family::S1,
            Family::S1U | Family::NS1U => Family::S1U,
            Family::S2 | Family::DS2 | Family::NS2 => Family::S2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                what: "family",
                input: s.to_string(),
            })
    }
}

/// Lower-triangular table of one family, rows 0..=max_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTriangle {
    family: Family,
    rows: Vec<Vec<LambdaPoly>>,
}

impl StirlingTriangle {
    /// Validates the shape: row n must hold exactly n+1 entries.
    pub fn from_rows(family: Family, rows: Vec<Vec<LambdaPoly>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Precondition(
                "triangle needs at least one row".into(),
            ));
        }
        if let Some(n) = rows.iter().enumerate().position(|(n, r)| r.len() != n + 1) {
            return Err(Error::Precondition(format!(
                "row {n} has {} entries, expected {}",
                rows[n].len(),
                n + 1
            )));
        }
        Ok(StirlingTriangle { family, rows })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<LambdaPoly>] {
        &self.rows
    }

    /// Entry (n,k); `None` outside 0 ≤ k ≤ n ≤ max_n.
    pub fn get(&self, n: usize, k: usize) -> Option<&LambdaPoly> {
        self.rows.get(n).and_then(|r| r.get(k))
    }

    /// Iterates `(n, k, entry)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LambdaPoly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, p)| (n, k, p)))
    }
}

/// Grow-only memo of an integer triangle defined by a row recurrence.
struct ClassicalMemo {
    rows: RwLock<Vec<Vec<BigInt>>>,
    next_row: fn(usize, &[BigInt]) -> Vec<BigInt>,
}

impl ClassicalMemo {
    fn new(next_row: fn(usize, &[BigInt]) -> Vec<BigInt>) -> Self {
        ClassicalMemo {
            rows: RwLock::new(vec![vec![BigInt::one()]]),
            next_row,
        }
    }

    fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        {
            let rows = self.rows.read().expect("memo lock poisoned");
            if let Some(row) = rows.get(n) {
                return row[k].clone();
            }
        }
        let mut rows = self.rows.write().expect("memo lock poisoned");
        while rows.len() <= n {
            let m = rows.len() - 1;
            let next = (self.next_row)(m, &rows[m]);
            rows.push(next);
        }
        rows[n][k].clone()
    }
}

// S_1(n+1,k) = S_1(n,k−1) − n·S_1(n,k)
fn stirling1_next_row(n: usize, row: &[BigInt]) -> Vec<BigInt> {
    let n_big = BigInt::from(n);
    (0..=n + 1)
        .map(|k| {
            let left = if k > 0 {
                row[k - 1].clone()
            } else {
                BigInt::zero()
            };
            let here = row.get(k).map(|x| x * &n_big).unwrap_or_default();
            left - here
        })
        .collect()
}

// {n+1, k} = k·{n, k} + {n, k−1}
fn stirling2_next_row(n: usize, row: &[BigInt]) -> Vec<BigInt> {
    (0..=n + 1)
        .map(|k| {
            let left = if k > 0 {
                row[k - 1].clone()
            } else {
                BigInt::zero()
            };
            let here = row.get(k).map(|x| x * BigInt::from(k)).unwrap_or_default();
            left + here
        })
        .collect()
}

fn stirling1_memo() -> &'static ClassicalMemo {
    static MEMO: OnceLock<ClassicalMemo> = OnceLock::new();
    MEMO.get_or_init(|| ClassicalMemo::new(stirling1_next_row))
}

fn stirling2_memo() -> &'static ClassicalMemo {
    static MEMO: OnceLock<ClassicalMemo> = OnceLock::new();
    MEMO.get_or_init(|| ClassicalMemo::new(stirling2_next_row))
}

/// Signed Stirling number of the first kind; zero for k > n.
pub fn stirling1_signed(n: usize, k: usize) -> Rational {
    Rational::from(stirling1_memo().get(n, k))
}

pub fn stirling1_unsigned(n: usize, k: usize) -> Rational {
    let s = stirling1_signed(n, k);
    if (n + k) % 2 == 1 {
        -s
    } else {
        s
    }
}

pub fn stirling2(n: usize, k: usize) -> Rational {
    Rational::from(stirling2_memo().get(n, k))
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from(acc)
}

fn lambda_minus(i: usize) -> LambdaPoly {
    LambdaPoly::from_coeffs(vec![Rational::from(-(i as i64)), Rational::one()])
}

fn one_minus_lambda_times(i: usize) -> LambdaPoly {
    LambdaPoly::from_coeffs(vec![Rational::one(), Rational::from(-(i as i64))])
}

/// log_λ(1+t) = (1/λ)((1+t)^λ − 1), whose EGF coefficients are
/// ∏_{i=1}^{n−1}(λ − i).
pub fn degenerate_log_series(order: usize) -> LambdaSeries {
    let mut egf = LambdaPoly::one();
    LambdaSeries::from_fn(order, |n| {
        if n == 0 {
            return LambdaPoly::zero();
        }
        if n >= 2 {
            egf = &egf * &lambda_minus(n - 1);
        }
        egf.scale(&factorial(n).recip().expect("n! > 0"))
    })
}

/// e_λ(t) − 1, with EGF coefficients (1)_{n,λ} = ∏_{i=0}^{n−1}(1 − iλ).
pub fn degenerate_exp_minus_one_series(order: usize) -> LambdaSeries {
    let mut egf = LambdaPoly::one();
    LambdaSeries::from_fn(order, |n| {
        if n == 0 {
            return LambdaPoly::zero();
        }
        if n >= 2 {
            egf = &egf * &one_minus_lambda_times(n - 1);
        }
        egf.scale(&factorial(n).recip().expect("n! > 0"))
    })
}

/// (1/λ)·log(1 + λt): ordinary coefficients (−1)^{m−1} λ^{m−1} / m.
pub fn scaled_log_series(order: usize) -> LambdaSeries {
    LambdaSeries::from_fn(order, |m| {
        if m == 0 {
            return LambdaPoly::zero();
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        LambdaPoly::monomial(Rational::new(sign, m as i64).expect("m > 0"), m - 1)
    })
}

/// (1/λ)·log(1 − λt): ordinary coefficients −λ^{m−1} / m.
fn scaled_log_series_negated_arg(order: usize) -> LambdaSeries {
    LambdaSeries::from_fn(order, |m| {
        if m == 0 {
            return LambdaPoly::zero();
        }
        LambdaPoly::monomial(Rational::new(-1, m as i64).expect("m > 0"), m - 1)
    })
}

/// The k = 1 generating function of a family, i.e. the series whose k-th
/// power over k! has the family's column k as EGF coefficients.
pub fn generator(family: Family, order: usize) -> Result<LambdaSeries> {
    let t = LambdaSeries::variable(order);
    let one = LambdaSeries::one(order);
    Ok(match family {
        Family::S1 => t.log1p()?,
        Family::S1U => t.neg().log1p()?.neg(),
        Family::S2 => t.exp()?.sub(&one),
        Family::DS1 => degenerate_log_series(order),
        Family::DS2 => degenerate_exp_minus_one_series(order),
        Family::NS1 => scaled_log_series(order).log1p()?,
        // log(1 / (1 + (1/λ)log(1 − λt)))
        Family::NS1U => scaled_log_series_negated_arg(order).log1p()?.neg(),
        // (1/λ)(e^{λ(e^t − 1)} − 1)
        Family::NS2 => {
            let inner = t.exp()?.sub(&one).scale_by(&LambdaPoly::lambda());
            let shifted = inner.exp()?.sub(&one);
            let coeffs = shifted
                .coeffs()
                .iter()
                .map(LambdaPoly::div_exact_lambda)
                .collect::<Result<Vec<_>>>()?;
            LambdaSeries::from_coeffs(order, coeffs)
        }
    })
}

/// (generator)^k / k!, the EGF of column k.
pub fn column_series(family: Family, k: usize, order: usize) -> Result<LambdaSeries> {
    let base = generator(family, order)?;
    Ok(base.pow(k as u32).scale(&factorial(k).recip()?))
}

fn gf_entry(family: Family, n: usize, k: usize, order: usize) -> Result<LambdaPoly> {
    if order < n {
        return Err(Error::InsufficientOrder { needed: n, order });
    }
    if k > n {
        return Ok(LambdaPoly::zero());
    }
    column_series(family, k, order)?.egf_coeff(n)
}

/// S_{1,λ}(n,k) from the generating function (1/k!)·log_λ^k(1+t).
pub fn degenerate_stirling1(n: usize, k: usize) -> LambdaPoly {
    gf_entry(Family::DS1, n, k, n).expect("order equals n")
}

/// S_{2,λ}(n,k) from the generating function (1/k!)·(e_λ(t) − 1)^k.
pub fn degenerate_stirling2(n: usize, k: usize) -> LambdaPoly {
    gf_entry(Family::DS2, n, k, n).expect("order equals n")
}

/// Σ_{m=k}^{n} λ^{n−m} [n,m] [m,k] over unsigned first-kind numbers.
pub fn new_stirling1_unsigned_conv(n: usize, k: usize) -> LambdaPoly {
    (k..=n)
        .map(|m| {
            let c = stirling1_unsigned(n, m) * stirling1_unsigned(m, k);
            LambdaPoly::monomial(c, n - m)
        })
        .sum()
}

pub fn new_stirling1_unsigned_gf(n: usize, k: usize, order: usize) -> Result<LambdaPoly> {
    gf_entry(Family::NS1U, n, k, order)
}

/// (−1)^{n−k} times the unsigned convolution.
pub fn new_stirling1_signed(n: usize, k: usize) -> LambdaPoly {
    let p = new_stirling1_unsigned_conv(n, k);
    if n >= k && (n - k) % 2 == 1 {
        -p
    } else {
        p
    }
}

pub fn new_stirling1_signed_gf(n: usize, k: usize, order: usize) -> Result<LambdaPoly> {
    gf_entry(Family::NS1, n, k, order)
}

/// Σ_{m=k}^{n} λ^{m−k} {m,k} {n,m} over second-kind numbers.
pub fn new_stirling2_conv(n: usize, k: usize) -> LambdaPoly {
    (k..=n)
        .map(|m| LambdaPoly::monomial(stirling2(m, k) * stirling2(n, m), m - k))
        .sum()
}

pub fn new_stirling2_gf(n: usize, k: usize, order: usize) -> Result<LambdaPoly> {
    gf_entry(Family::NS2, n, k, order)
}

/// Entry (n,k) by the default recurrence/convolution route.
pub fn entry(family: Family, n: usize, k: usize) -> LambdaPoly {
    if k > n {
        return LambdaPoly::zero();
    }
    match family {
        Family::S1 => stirling1_signed(n, k).into(),
        Family::S1U => stirling1_unsigned(n, k).into(),
        Family::S2 => stirling2(n, k).into(),
        Family::DS1 | Family::DS2 => build_triangle(family, n).rows[n][k].clone(),
        Family::NS1 => new_stirling1_signed(n, k),
        Family::NS1U => new_stirling1_unsigned_conv(n, k),
        Family::NS2 => new_stirling2_conv(n, k),
    }
}

// S_{1,λ}(n+1,k) = S_{1,λ}(n,k−1) + (kλ − n)·S_{1,λ}(n,k)
fn degenerate1_next_row(n: usize, row: &[LambdaPoly]) -> Vec<LambdaPoly> {
    (0..=n + 1)
        .map(|k| {
            let left = if k > 0 {
                row[k - 1].clone()
            } else {
                LambdaPoly::zero()
            };
            let factor = LambdaPoly::from_coeffs(vec![
                Rational::from(-(n as i64)),
                Rational::from(k as i64),
            ]);
            let here = row.get(k).map(|p| p * &factor).unwrap_or_default();
            left + here
        })
        .collect()
}

// S_{2,λ}(n+1,k) = S_{2,λ}(n,k−1) + (k − nλ)·S_{2,λ}(n,k)
fn degenerate2_next_row(n: usize, row: &[LambdaPoly]) -> Vec<LambdaPoly> {
    (0..=n + 1)
        .map(|k| {
            let left = if k > 0 {
                row[k - 1].clone()
            } else {
                LambdaPoly::zero()
            };
            let factor = LambdaPoly::from_coeffs(vec![
                Rational::from(k as i64),
                Rational::from(-(n as i64)),
            ]);
            let here = row.get(k).map(|p| p * &factor).unwrap_or_default();
            left + here
        })
        .collect()
}

/// Builds rows 0..=max_n by the recurrence/convolution route.
pub fn build_triangle(family: Family, max_n: usize) -> StirlingTriangle {
    let rows = match family {
        Family::DS1 | Family::DS2 => {
            let step = if family == Family::DS1 {
                degenerate1_next_row
            } else {
                degenerate2_next_row
            };
            let mut rows = vec![vec![LambdaPoly::one()]];
            for n in 0..max_n {
                let next = step(n, &rows[n]);
                rows.push(next);
            }
            rows
        }
        _ => (0..=max_n)
            .map(|n| (0..=n).map(|k| entry(family, n, k)).collect())
            .collect(),
    };
    StirlingTriangle { family, rows }
}

/// Builds rows 0..=max_n by expanding generating functions truncated at `order`.
pub fn build_triangle_gf(family: Family, max_n: usize, order: usize) -> Result<StirlingTriangle> {
    if order < max_n {
        return Err(Error::InsufficientOrder {
            needed: max_n,
            order,
        });
    }
    let base = generator(family, order)?;
    let mut rows: Vec<Vec<LambdaPoly>> = (0..=max_n).map(|n| Vec::with_capacity(n + 1)).collect();
    let mut power = LambdaSeries::one(order);
    for k in 0..=max_n {
        if k > 0 {
            power = power.mul(&base);
        }
        let column = power.scale(&factorial(k).recip()?);
        for (n, row) in rows.iter_mut().enumerate().skip(k) {
            row.push(column.egf_coeff(n)?);
        }
    }
    Ok(StirlingTriangle { family, rows })
}
