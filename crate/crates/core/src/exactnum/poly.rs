use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::gaussian::{gr, GaussianRational};
use super::series::TruncSeries;

/// Dense univariate polynomial in `z`, coefficients lowest degree first.
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// The coordinate function `z`.
    pub fn z() -> Self {
        Self::new(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| gr(c)).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> GaussianRational {
        self.coeffs.get(j).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(j, c)| c * &gr(j as i64)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Taylor expansion in `t = z - base` truncated at `order`.
    pub fn to_series(&self, base: &GaussianRational, order: usize) -> TruncSeries {
        let mut out = vec![GaussianRational::zero(); order + 1];
        // Synthetic division by (z - base), repeated.
        let mut rem = self.coeffs.clone();
        for slot in out.iter_mut() {
            if rem.is_empty() {
                break;
            }
            let mut acc = GaussianRational::zero();
            let mut quot = vec![GaussianRational::zero(); rem.len().saturating_sub(1)];
            for j in (0..rem.len()).rev() {
                acc = &(&acc * base) + &rem[j];
                if j > 0 {
                    quot[j - 1] = acc.clone();
                }
            }
            *slot = acc;
            rem = quot;
        }
        TruncSeries::new(base.clone(), out)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for j in (0..quot.len()).rev() {
            let q = &rem[j + dd] * &lead_inv;
            if !q.is_zero() {
                for (t, dc) in divisor.coeffs.iter().enumerate() {
                    rem[j + t] -= &(&q * dc);
                }
            }
            quot[j] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Interpolating polynomial through `(xs[i], ys[i])` (Newton form).
    /// Panics if abscissae repeat.
    pub fn interpolate(xs: &[GaussianRational], ys: &[GaussianRational]) -> Poly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<GaussianRational> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = &xs[i] - &xs[i - level];
                dd[i] = &(&dd[i] - &dd[i - 1]) / &den;
            }
        }
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            let factor = Poly::new(vec![-&xs[i], GaussianRational::one()]);
            acc = &(&acc * &factor) + &Poly::constant(dd[i].clone());
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{j}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_and_gcd() {
        // (z-1)(z+2) and (z-1)(z-3) share z-1.
        let a = Poly::from_ints(&[-2, 1, 1]);
        let b = Poly::from_ints(&[3, -4, 1]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&Poly::from_ints(&[-1, 1]));
        assert_eq!(q, Poly::from_ints(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn taylor_shift() {
        // z^2 at base 1: 1 + 2t + t^2.
        let s = Poly::from_ints(&[0, 0, 1]).to_series(&gr(1), 3);
        assert_eq!(s.coeffs(), &[gr(1), gr(2), gr(1), gr(0)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::from_ints(&[5, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(gr).collect();
        let ys: Vec<_> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), p);
    }
}
