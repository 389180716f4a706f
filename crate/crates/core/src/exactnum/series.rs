use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::gaussian::{factorial, gr, GaussianRational};
use crate::error::{usage, Error, Result};

/// Truncated Taylor series `sum_j coeffs[j] (z - base)^j`, `j = 0..=order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    base: GaussianRational,
    coeffs: Vec<GaussianRational>,
}

impl TruncSeries {
    /// Panics on an empty coefficient list; order is `coeffs.len() - 1`.
    pub fn new(base: GaussianRational, coeffs: Vec<GaussianRational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Self { base, coeffs }
    }

    pub fn constant(base: GaussianRational, c: GaussianRational, order: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); order + 1];
        coeffs[0] = c;
        Self { base, coeffs }
    }

    pub fn zero(base: GaussianRational, order: usize) -> Self {
        Self::constant(base, GaussianRational::zero(), order)
    }

    pub fn one(base: GaussianRational, order: usize) -> Self {
        Self::constant(base, GaussianRational::one(), order)
    }

    /// The coordinate function `z` expanded at `base`.
    pub fn identity(base: GaussianRational, order: usize) -> Self {
        let mut s = Self::constant(base.clone(), base, order);
        if order >= 1 {
            s.coeffs[1] = GaussianRational::one();
        }
        s
    }

    /// `(z - base)^j` (zero if `j > order`).
    pub fn monomial(base: GaussianRational, j: usize, order: usize) -> Self {
        let mut s = Self::zero(base, order);
        if j <= order {
            s.coeffs[j] = GaussianRational::one();
        }
        s
    }

    pub fn base(&self) -> &GaussianRational {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &GaussianRational {
        &self.coeffs[j]
    }

    /// Raw derivative `f^(j)(base) = j! * coeffs[j]`.
    pub fn derivative_at_base(&self, j: usize) -> GaussianRational {
        &factorial(j) * &self.coeffs[j]
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(usage(format!("cannot truncate order {} series to order {order}", self.order())));
        }
        Ok(Self::new(self.base.clone(), self.coeffs[..=order].to_vec()))
    }

    /// Formal derivative; the order drops by one (order 0 gives the zero series of order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.base.clone(), 0);
        }
        let coeffs = (1..self.coeffs.len()).map(|j| &self.coeffs[j] * &gr(j as i64)).collect();
        Self::new(self.base.clone(), coeffs)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::new(self.base.clone(), self.coeffs.iter().map(|c| c * s).collect())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.base != other.base || self.order() != other.order() {
            return Err(Error::Usage(format!(
                "series mismatch: base {} order {} vs base {} order {}",
                self.base,
                self.order(),
                other.base,
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Self::new(self.base.clone(), coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        series_mul(self, other)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let b = if e < 0 { series_reciprocal(self)? } else { self.clone() };
        let mut acc = Self::one(self.base.clone(), self.order());
        for _ in 0..e.unsigned_abs() {
            acc = mul_unchecked(&acc, &b);
        }
        Ok(acc)
    }

    /// Same coefficients re-labelled with a new base point.
    pub fn rebase(&self, base: GaussianRational) -> Self {
        Self::new(base, self.coeffs.clone())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[at {}] ", self.base)?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})t^{j}")?;
        }
        write!(f, " + O(t^{})", self.coeffs.len())
    }
}

fn mul_unchecked(f: &TruncSeries, g: &TruncSeries) -> TruncSeries {
    let k = f.order();
    let mut out = vec![GaussianRational::zero(); k + 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.coeffs[..=k - i].iter().enumerate() {
            out[i + j] += &(a * b);
        }
    }
    TruncSeries::new(f.base.clone(), out)
}

/// Cauchy product truncated at the common order.
pub fn series_mul(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
    f.check_compatible(g)?;
    Ok(mul_unchecked(f, g))
}

/// `f(g(s))`, expanded at `g`'s base point. Requires `f.base == g(0)`.
pub fn series_compose(f: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
    if f.base != g.coeffs[0] || f.order() != g.order() {
        return Err(Error::Usage(format!(
            "compose: outer base {} (order {}) vs inner value {} (order {})",
            f.base,
            f.order(),
            g.coeffs[0],
            g.order()
        )));
    }
    let mut h = g.clone();
    h.coeffs[0] = GaussianRational::zero();
    let k = f.order();
    let mut acc = TruncSeries::constant(g.base.clone(), f.coeffs[k].clone(), k);
    for j in (0..k).rev() {
        acc = mul_unchecked(&acc, &h);
        acc.coeffs[0] += &f.coeffs[j];
    }
    Ok(acc)
}

/// `1 / f` to the same order. A zero constant term is a pole at the base point.
pub fn series_reciprocal(f: &TruncSeries) -> Result<TruncSeries> {
    let c0_inv = f.coeffs[0]
        .inv()
        .ok_or_else(|| Error::Singularity(format!("reciprocal of a series vanishing at {}", f.base)))?;
    let k = f.order();
    let mut out: Vec<GaussianRational> = Vec::with_capacity(k + 1);
    out.push(c0_inv.clone());
    for j in 1..=k {
        let mut acc = GaussianRational::zero();
        for i in 1..=j {
            acc += &(&f.coeffs[i] * &out[j - i]);
        }
        out.push(-(&acc * &c0_inv));
    }
    Ok(TruncSeries::new(f.base.clone(), out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(cs: &[i64]) -> TruncSeries {
        TruncSeries::new(gr(0), cs.iter().map(|&c| gr(c)).collect())
    }

    #[test]
    fn products() {
        assert_eq!(series_mul(&s(&[1, 1, 0]), &s(&[1, -1, 0])).unwrap(), s(&[1, 0, -1]));
        let f = s(&[4, -2, 7]);
        assert_eq!(series_mul(&f, &s(&[1, 0, 0])).unwrap(), f);
        assert_eq!(series_mul(&s(&[1, 2, 1]), &s(&[3, 1, 0])).unwrap(), s(&[3, 7, 5]));
    }

    #[test]
    fn mismatched_product_is_usage_error() {
        let g = TruncSeries::new(gr(1), vec![gr(1), gr(0), gr(0)]);
        assert!(matches!(series_mul(&s(&[1, 0, 0]), &g), Err(Error::Usage(_))));
        assert!(matches!(series_mul(&s(&[1, 0, 0]), &s(&[1, 0])), Err(Error::Usage(_))));
    }

    #[test]
    fn compositions() {
        let f = s(&[3, 1, 4]);
        assert_eq!(series_compose(&f, &TruncSeries::identity(gr(0), 2)).unwrap(), f);
        // f(t) = t^2 expanded at t = 1, g(s) = 1 + s.
        let sq = TruncSeries::new(gr(1), vec![gr(1), gr(2), gr(1)]);
        assert_eq!(series_compose(&sq, &s(&[1, 1, 0])).unwrap(), s(&[1, 2, 1]));
        assert_eq!(series_compose(&s(&[1, 1, 0, 0]), &s(&[0, 2, 0, 0])).unwrap(), s(&[1, 2, 0, 0]));
        assert!(matches!(series_compose(&f, &s(&[1, 1, 0])), Err(Error::Usage(_))));
    }

    #[test]
    fn reciprocals() {
        assert_eq!(series_reciprocal(&s(&[1])).unwrap(), s(&[1]));
        assert_eq!(series_reciprocal(&s(&[1, 1, 0])).unwrap(), s(&[1, -1, 1]));
        assert_eq!(series_reciprocal(&s(&[2])).unwrap().coeffs()[0], GaussianRational::from_ratio(1, 2));
        assert!(matches!(series_reciprocal(&s(&[0, 1])), Err(Error::Singularity(_))));
    }

    #[test]
    fn negative_power() {
        let f = s(&[2, 1, 0, 3]);
        let p = f.powi(-3).unwrap();
        assert_eq!(series_mul(&p, &f.powi(3).unwrap()).unwrap(), s(&[1, 0, 0, 0]));
    }
}
