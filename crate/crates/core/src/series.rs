//! Truncated formal power series in t.
//!
//! Coefficients are stored as ordinary coefficients; the t^n/n! convention
//! only appears in [`TruncatedSeries::egf_coeff`]. Every value carries its
//! truncation order N (coefficients t^0..=t^N) and binary operations on
//! series of different orders truncate to the smaller one.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{LambdaPoly, Rational};
use crate::error::{Error, Result};

/// A commutative ring with rational scalars, usable as series coefficients.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn scale(&self, c: &Rational) -> Self;
    fn from_rational(c: Rational) -> Self;
    /// Multiplicative inverse, when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn from_rational(c: Rational) -> Self {
        c
    }
    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
}

impl Coefficient for LambdaPoly {
    fn zero() -> Self {
        LambdaPoly::zero()
    }
    fn one() -> Self {
        LambdaPoly::one()
    }
    fn is_zero(&self) -> bool {
        LambdaPoly::is_zero(self)
    }
    fn scale(&self, c: &Rational) -> Self {
        LambdaPoly::scale(self, c)
    }
    fn from_rational(c: Rational) -> Self {
        LambdaPoly::constant(c)
    }
    // Units of Q[λ] are the nonzero constants.
    fn inverse(&self) -> Option<Self> {
        self.as_constant()
            .and_then(|c| c.recip().ok())
            .map(LambdaPoly::constant)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// Builds a series of the given order; missing coefficients are zero and
    /// extra ones are dropped.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, C::one())
    }

    pub fn constant(order: usize, c: C) -> Self {
        Self::from_coeffs(order, vec![c])
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(order, C::one(), 1)
    }

    /// `c·t^power` (zero if the power exceeds the order).
    pub fn monomial(order: usize, c: C, power: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Ordinary coefficient of t^n; `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn constant_term(&self) -> &C {
        &self.coeffs[0]
    }

    /// Index of the lowest nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(order.min(self.order()), self.coeffs.clone())
    }

    /// Applies a ring map coefficient-wise, e.g. evaluation at a fixed λ.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|a| a.clone() * c)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::from_fn(order, |n| self.coeffs[n].clone() + rhs.coeffs[n].clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::from_fn(order, |n| self.coeffs[n].clone() - rhs.coeffs[n].clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// k-th power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit of the ring.
    pub fn inverse(&self) -> Result<Self> {
        let head = self.constant_term();
        let head_inv = head
            .inverse()
            .ok_or_else(|| Error::SingularSeries(format!("{head:?}")))?;
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(head_inv.clone());
        for n in 1..=order {
            let mut acc = C::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc = acc + self.coeffs[i].clone() * &out[n - i];
                }
            }
            out.push(-(acc * &head_inv));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.constant_term().is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm)
        }
    }

    /// log(1+f) = Σ_{m≥1} (−1)^{m−1} f^m / m
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let order = self.order();
        let mut acc = Self::zero(order);
        let mut power = self.clone();
        for m in 1..=order {
            let mut term = power.scale(&Rational::new(1, m as i64)?);
            if m % 2 == 0 {
                term = term.neg();
            }
            acc = acc.add(&term);
            power = power.mul(self);
        }
        Ok(acc)
    }

    /// exp(f) = Σ_{m≥0} f^m / m!
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let order = self.order();
        let mut acc = Self::one(order);
        let mut term = Self::one(order);
        for m in 1..=order {
            term = term.mul(self).scale(&Rational::new(1, m as i64)?);
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// outer(inner) by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        inner.require_zero_constant()?;
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&inner).add(&Self::constant(order, c.clone()));
        }
        Ok(acc)
    }

    /// Divides by t^v; coefficients below t^v must vanish. The order drops by v.
    pub fn shift_down(&self, v: usize) -> Result<Self> {
        if let Some(index) = self.coeffs.iter().take(v).position(|c| !c.is_zero()) {
            return Err(Error::ValuationViolation { index, shift: v });
        }
        if v > self.order() {
            return Err(Error::InsufficientOrder {
                needed: v,
                order: self.order(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[v..].to_vec(),
        })
    }

    /// n! times the ordinary coefficient of t^n.
    pub fn egf_coeff(&self, n: usize) -> Result<C> {
        let c = self.coeff(n).ok_or(Error::InsufficientOrder {
            needed: n,
            order: self.order(),
        })?;
        Ok(c.scale(&factorial(n)))
    }
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).map(Rational::from).product()
}
