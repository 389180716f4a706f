use alloc::format;
use core::fmt;

use super::gaussian::GaussianRational;
use super::poly::Poly;
use super::series::{series_mul, series_reciprocal, TruncSeries};
use crate::error::{Error, Result};

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = den.leading().unwrap().inv().unwrap();
        num = num.scale(&lead);
        den = den.scale(&lead);
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, z: &GaussianRational) -> Result<GaussianRational> {
        let d = self.den.eval(z);
        let d_inv = d.inv().ok_or_else(|| Error::Singularity(format!("pole at {z}")))?;
        Ok(&self.num.eval(z) * &d_inv)
    }

    pub fn to_series(&self, base: &GaussianRational, order: usize) -> Result<TruncSeries> {
        let n = self.num.to_series(base, order);
        let d = self.den.to_series(base, order);
        series_mul(&n, &series_reciprocal(&d)?)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    /// `None` when dividing by zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        Some(Self::new(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::new(self.num.scale(s), self.den.clone())
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}
