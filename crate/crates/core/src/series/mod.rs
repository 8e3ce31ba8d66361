//! Truncated bivariate power series in (z, z̄) over the Gaussian rationals.
//!
//! Coefficients are stored densely in graded order: degree `d = k + l`
//! first, then by decreasing power of `z`. The monomial `z^k z̄^l` lives at
//! index `d(d+1)/2 + l`. A series of order `N` carries every monomial of
//! total degree `<= N`; anything above is discarded by every operation.
//!
//! The recorded order is the degree through which the coefficients are
//! exact. Differentiation lowers it by one, and binary operations take the
//! minimum of their inputs (the checked [`TruncatedSeries::arith`] entry point
//! insists on equal orders instead).

mod elementary;
pub mod io;

pub use elementary::Elementary;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z,
    ZBar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[inline]
pub(crate) fn index(k: usize, l: usize) -> usize {
    let d = k + l;
    d * (d + 1) / 2 + l
}

#[inline]
fn dense_len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

/// Graded monomial iterator: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
pub fn monomials(order: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=order).flat_map(|d| (0..=d).map(move |l| (d - l, l)))
}

#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<GaussianRational>,
    real: bool,
}

impl PartialEq for TruncatedSeries {
    /// Equal orders and coefficients; the reality flag is derived data.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![GaussianRational::zero(); dense_len(order)], real: true }
    }

    pub fn constant(c: GaussianRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.real = c.is_real();
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(GaussianRational::one(), order)
    }

    /// The monomial `c z^k z̄^l`, dropped if `k + l > order`.
    pub fn monomial(c: GaussianRational, k: usize, l: usize, order: usize) -> Self {
        Self::from_terms(order, [((k, l), c)])
    }

    /// `z` itself.
    pub fn z(order: usize) -> Self {
        Self::monomial(GaussianRational::one(), 1, 0, order)
    }

    /// `z̄` itself.
    pub fn zbar(order: usize) -> Self {
        Self::monomial(GaussianRational::one(), 0, 1, order)
    }

    /// Builds a series from `(k, l) -> c` pairs. Terms above `order` are
    /// dropped; repeated exponents accumulate. The reality flag is set by
    /// checking the conjugate symmetry of the result.
    pub fn from_terms<I>(order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), GaussianRational)>,
    {
        let mut s = Self::zero(order);
        for ((k, l), c) in terms {
            if k + l <= order {
                s.coeffs[index(k, l)] += &c;
            }
        }
        s.real = s.is_conjugate_symmetric();
        s
    }

    fn from_dense(order: usize, coeffs: Vec<GaussianRational>, real: bool) -> Self {
        debug_assert_eq!(coeffs.len(), dense_len(order));
        Self { order, coeffs, real }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The reality claim carried through operations.
    pub fn real_flag(&self) -> bool {
        self.real
    }

    /// Re-derives the reality flag from the coefficients.
    pub fn with_reality_check(mut self) -> Self {
        self.real = self.is_conjugate_symmetric();
        self
    }

    /// Checks `coeff(k, l) == conj(coeff(l, k))` for every monomial.
    pub fn is_conjugate_symmetric(&self) -> bool {
        monomials(self.order).all(|(k, l)| {
            k < l || self.coeffs[index(k, l)] == self.coeffs[index(l, k)].conj()
        })
    }

    /// Coefficient of `z^k z̄^l`; zero beyond the order.
    pub fn coeff(&self, k: usize, l: usize) -> GaussianRational {
        if k + l > self.order {
            GaussianRational::zero()
        } else {
            self.coeffs[index(k, l)].clone()
        }
    }

    pub fn constant_term(&self) -> &GaussianRational {
        &self.coeffs[0]
    }

    /// Nonzero terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &GaussianRational)> + '_ {
        monomials(self.order)
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First nonzero monomial in graded order.
    pub fn leading_term(&self) -> Option<((usize, usize), GaussianRational)> {
        self.terms().next().map(|(kl, c)| (kl, c.clone()))
    }

    /// Keeps only degrees `<= order`; no-op if already lower.
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::from_dense(order, self.coeffs[..dense_len(order)].to_vec(), self.real)
    }

    /// Raises the recorded order by padding with zeros. Only meaningful for
    /// polynomials whose true degree is `<= self.order`.
    pub fn pad_to(&self, order: usize) -> Self {
        if order <= self.order {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dense_len(order), GaussianRational::zero());
        Self::from_dense(order, coeffs, self.real)
    }

    /// Checked arithmetic: orders must agree.
    pub fn arith(&self, rhs: &Self, op: ArithOp) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch { lhs: self.order, rhs: rhs.order });
        }
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
        })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Self::from_dense(self.order, coeffs, self.real && c.is_real())
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&GaussianRational::from_int(n))
    }

    /// Formal partial derivative. The result is exact through order `N - 1`.
    pub fn differentiate(&self, var: Var) -> Self {
        let order = self.order.saturating_sub(1);
        let mut out = Self::zero(order);
        if self.order == 0 {
            return out;
        }
        for (k, l) in monomials(order) {
            let (src, mult) = match var {
                Var::Z => (index(k + 1, l), k + 1),
                Var::ZBar => (index(k, l + 1), l + 1),
            };
            let c = &self.coeffs[src];
            if !c.is_zero() {
                out.coeffs[index(k, l)] = c * &GaussianRational::from_int(mult as i64);
            }
        }
        out.real = false;
        out
    }

    /// `D = ∂/∂z`.
    pub fn d(&self) -> Self {
        self.differentiate(Var::Z)
    }

    /// `D̄ = ∂/∂z̄`.
    pub fn dbar(&self) -> Self {
        self.differentiate(Var::ZBar)
    }

    /// `coeff'(k, l) = conj(coeff(l, k))`.
    pub fn conjugate(&self) -> Self {
        let coeffs = monomials(self.order)
            .map(|(k, l)| self.coeffs[index(l, k)].conj())
            .collect();
        Self::from_dense(self.order, coeffs, self.real)
    }

    /// Floating-point evaluation at `z`, summed in graded order.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        let mut zpow = vec![Complex64::new(1.0, 0.0); self.order + 1];
        let mut zbpow = vec![Complex64::new(1.0, 0.0); self.order + 1];
        for j in 1..=self.order {
            zpow[j] = zpow[j - 1] * z;
            zbpow[j] = zbpow[j - 1] * zb;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for ((k, l), c) in monomials(self.order).zip(self.coeffs.iter()) {
            if !c.is_zero() {
                acc += c.to_complex64() * zpow[k] * zbpow[l];
            }
        }
        acc
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.reciprocal()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    fn binary_coeffwise(&self, rhs: &Self, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Self {
        let order = self.order.min(rhs.order);
        let n = dense_len(order);
        let coeffs = self.coeffs[..n].iter().zip(&rhs.coeffs[..n]).map(|(a, b)| f(a, b)).collect();
        Self::from_dense(order, coeffs, self.real && rhs.real)
    }

    fn cauchy_product(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = vec![GaussianRational::zero(); dense_len(order)];
        // Sparse outer loop: both operands are often mostly zero.
        let lhs_terms: Vec<_> = self.truncate(order).terms().map(|(kl, c)| (kl, c.clone())).collect();
        let rhs_terms: Vec<_> = rhs.truncate(order).terms().map(|(kl, c)| (kl, c.clone())).collect();
        for ((k1, l1), a) in &lhs_terms {
            let room = order - (k1 + l1);
            for ((k2, l2), b) in &rhs_terms {
                if k2 + l2 > room {
                    // rhs_terms is graded, so nothing later fits either.
                    break;
                }
                out[index(k1 + k2, l1 + l2)] += &(a * b);
            }
        }
        Self::from_dense(order, out, self.real && rhs.real)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.binary_coeffwise(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.binary_coeffwise(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.cauchy_product(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::from_dense(self.order, self.coeffs.iter().map(|c| -c).collect(), self.real)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                (&self).$m(rhs)
            }
        }
        impl $tr<TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        -&self
    }
}

impl fmt::Display for TruncatedSeries {
    /// Canonical expression syntax `(re+im*i)*z^k*zb^l + ...`; the order is
    /// not printed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((k, l), c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if k > 0 {
                write!(f, "*z^{k}")?;
            }
            if l > 0 {
                write!(f, "*zb^{l}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
