//! Sparse polynomials over Q(i) in the fixed indeterminates that appear in
//! the fiber-coordinate computation of `Q;1` and `Q;11`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::gaussian::GaussianRational;

/// `b`, `b̄`, `μ`, `μ̄`, `r`, and the derivatives `L₁r`, `L₁²r`, `L₁b`
/// treated as independent symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Indeterminate {
    B,
    BBar,
    Mu,
    MuBar,
    R,
    L1R,
    L1L1R,
    L1B,
}

pub const NVARS: usize = 8;

impl Indeterminate {
    pub const ALL: [Indeterminate; NVARS] = [
        Indeterminate::B,
        Indeterminate::BBar,
        Indeterminate::Mu,
        Indeterminate::MuBar,
        Indeterminate::R,
        Indeterminate::L1R,
        Indeterminate::L1L1R,
        Indeterminate::L1B,
    ];

    fn slot(self) -> usize {
        self as usize
    }

    fn name(self) -> &'static str {
        match self {
            Indeterminate::B => "b",
            Indeterminate::BBar => "bb",
            Indeterminate::Mu => "mu",
            Indeterminate::MuBar => "mub",
            Indeterminate::R => "r",
            Indeterminate::L1R => "L1r",
            Indeterminate::L1L1R => "L1L1r",
            Indeterminate::L1B => "L1b",
        }
    }
}

type Exponents = [u32; NVARS];

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.insert([0; NVARS], c);
        p
    }

    pub fn var(v: Indeterminate) -> Self {
        let mut e = [0; NVARS];
        e[v.slot()] = 1;
        let mut p = Self::zero();
        p.insert(e, GaussianRational::one());
        p
    }

    /// `i`.
    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    fn insert(&mut self, e: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Complex conjugation: conjugates coefficients and swaps `b ↔ b̄`,
    /// `μ ↔ μ̄`. The remaining symbols are left alone, so this is only the
    /// true conjugate on polynomials in `b, b̄, μ, μ̄`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut f = *e;
            f.swap(Indeterminate::B.slot(), Indeterminate::BBar.slot());
            f.swap(Indeterminate::Mu.slot(), Indeterminate::MuBar.slot());
            out.insert(f, c.conj());
        }
        out
    }

    pub fn evaluate(&self, point: &[GaussianRational; NVARS]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &p) in point.iter().zip(e) {
                if p > 0 {
                    t = &t * &x.powi(i64::from(p)).expect("nonnegative power");
                }
            }
            acc += &t;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for (a, b) in e.iter_mut().zip(e2) {
                    *a += b;
                }
                out.insert(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for v in Indeterminate::ALL {
                match e[v.slot()] {
                    0 => {}
                    1 => write!(f, "*{}", v.name())?,
                    p => write!(f, "*{}^{p}", v.name())?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Indeterminate::*;

    #[test]
    fn ring_basics() {
        let b = Poly::var(B);
        let mu = Poly::var(Mu);
        let sum = &b + &mu;
        let sq = &sum * &sum;
        let expect = &(&(&b * &b) + &(&(&b * &mu) * &Poly::int(2))) + &(&mu * &mu);
        assert_eq!(sq, expect);
        assert!((&sq - &expect).is_zero());
    }

    #[test]
    fn conjugation_swaps_pairs() {
        let p = &Poly::i() * &(&Poly::var(B) * &Poly::var(MuBar));
        let c = p.conj();
        let expect = &(-&Poly::i()) * &(&Poly::var(BBar) * &Poly::var(Mu));
        assert_eq!(c, expect);
        assert_eq!(c.conj(), p);
    }

    #[test]
    fn evaluation() {
        let p = &Poly::var(B) * &Poly::var(B);
        let mut pt: [GaussianRational; NVARS] = Default::default();
        pt[0] = GaussianRational::i();
        assert_eq!(p.evaluate(&pt), GaussianRational::from_int(-1));
    }
}
