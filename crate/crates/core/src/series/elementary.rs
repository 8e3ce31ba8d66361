//! Composition with exp, log(1 + ·), 1/·, √· by coefficient recurrences.
//!
//! Each coefficient `(k, l)` only depends on coefficients of strictly lower
//! multidegree, so filling the dense vector in graded order is enough. The
//! exp/log recurrences come from the Euler operator `E = z∂z + z̄∂z̄`,
//! which multiplies the degree-`d` part by `d`.

use num_traits::{One, Zero};

use super::{index, monomials, TruncatedSeries};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Exp,
    Log1p,
    Reciprocal,
    Sqrt,
}

/// Nonzero non-constant terms, graded.
fn tail_terms(s: &TruncatedSeries) -> Vec<((usize, usize), GaussianRational)> {
    s.terms()
        .filter(|((k, l), _)| k + l > 0)
        .map(|(kl, c)| (kl, c.clone()))
        .collect()
}

impl TruncatedSeries {
    pub fn elementary(&self, f: Elementary) -> Result<Self> {
        match f {
            Elementary::Exp => self.exp(),
            Elementary::Log1p => self.log1p(),
            Elementary::Reciprocal => self.reciprocal(),
            Elementary::Sqrt => self.sqrt(),
        }
    }

    /// `exp(s)`. The constant term must vanish (otherwise the result would
    /// carry the transcendental factor `e^{s(0)}`).
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain(format!(
                "exp needs a zero constant term, got {}",
                self.constant_term()
            )));
        }
        let order = self.order;
        let u = tail_terms(self);
        let mut y = Self::zero(order);
        y.coeffs[0] = GaussianRational::one();
        for (k, l) in monomials(order).skip(1) {
            let d = (k + l) as i64;
            let mut acc = GaussianRational::zero();
            for ((i, j), c) in &u {
                if *i > k || *j > l {
                    continue;
                }
                let prev = &y.coeffs[index(k - i, l - j)];
                if !prev.is_zero() {
                    acc += &(&(c * prev) * &GaussianRational::from_int((i + j) as i64));
                }
            }
            y.coeffs[index(k, l)] = &acc / &GaussianRational::from_int(d);
        }
        y.real = self.real;
        Ok(y)
    }

    /// `log(1 + s)` for `s` with zero constant term.
    pub fn log1p(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain(format!(
                "log1p needs a zero constant term, got {}",
                self.constant_term()
            )));
        }
        let order = self.order;
        let u = tail_terms(self);
        let mut v = Self::zero(order);
        for (k, l) in monomials(order).skip(1) {
            let d = (k + l) as i64;
            let mut acc = &self.coeffs[index(k, l)] * &GaussianRational::from_int(d);
            for ((i, j), c) in &u {
                if *i > k || *j > l || (*i == k && *j == l) {
                    continue;
                }
                let prev = &v.coeffs[index(k - i, l - j)];
                if !prev.is_zero() {
                    let w = GaussianRational::from_int(d - (i + j) as i64);
                    acc -= &(&(c * prev) * &w);
                }
            }
            v.coeffs[index(k, l)] = &acc / &GaussianRational::from_int(d);
        }
        v.real = self.real;
        Ok(v)
    }

    /// `log(s)` for a series with constant term exactly one.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain(format!(
                "log needs constant term 1, got {}",
                self.constant_term()
            )));
        }
        (self - &Self::one(self.order)).log1p()
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv0 = a0.inv()?;
        let order = self.order;
        let a = tail_terms(self);
        let mut c = Self::zero(order);
        c.coeffs[0] = inv0.clone();
        for (k, l) in monomials(order).skip(1) {
            let mut acc = GaussianRational::zero();
            for ((i, j), aij) in &a {
                if *i > k || *j > l {
                    continue;
                }
                let prev = &c.coeffs[index(k - i, l - j)];
                if !prev.is_zero() {
                    acc += &(aij * prev);
                }
            }
            c.coeffs[index(k, l)] = -&(&acc * &inv0);
        }
        c.real = self.real;
        Ok(c)
    }

    /// Square root for a positive constant term that is a rational square.
    pub fn sqrt(&self) -> Result<Self> {
        let y0 = self.constant_term().sqrt_positive_rational()?;
        let inv_2y0 = (&y0 * &GaussianRational::from_int(2)).inv()?;
        let order = self.order;
        let mut y = Self::zero(order);
        y.coeffs[0] = y0;
        for (k, l) in monomials(order).skip(1) {
            let mut acc = self.coeffs[index(k, l)].clone();
            // Σ y_{ij} y_{k-i,l-j} over proper nonzero splits.
            for i in 0..=k {
                for j in 0..=l {
                    if (i == 0 && j == 0) || (i == k && j == l) {
                        continue;
                    }
                    let a = &y.coeffs[index(i, j)];
                    let b = &y.coeffs[index(k - i, l - j)];
                    if !a.is_zero() && !b.is_zero() {
                        acc -= &(a * b);
                    }
                }
            }
            y.coeffs[index(k, l)] = &acc * &inv_2y0;
        }
        y.real = self.real;
        Ok(y)
    }

    /// `self / rhs`, requiring a nonzero constant term in `rhs`.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.reciprocal()?)
    }
}
