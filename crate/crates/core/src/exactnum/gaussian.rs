//! Gaussian rationals `a + b i` with `a, b` in Q.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An element of Q(i). Both parts are kept as reduced big rationals, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num / den` as a real Gaussian rational. Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn from_real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = a^2 + b^2`.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Integer power; negative exponents invert. `None` for `0^(-m)`.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
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
        Some(acc)
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.re.denom().lcm(self.im.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| alloc::format!("bad integer `{num}`"))?;
    let den = BigInt::from_str(den).map_err(|_| alloc::format!("bad integer `{den}`"))?;
    if den.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(BigRational::new(num, den))
}

fn parse_imag(s: &str) -> Result<BigRational, String> {
    // `s` is the coefficient text in front of the trailing `i`, sign included.
    match s.trim() {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        t => parse_rational(t.strip_prefix('+').unwrap_or(t)),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `p`, `p/q`, `p/q+r/si`, `p/q-r/si`, `r/si` and `i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: String| Error::Parse(alloc::format!("scalar `{s}`: {why}"));
        if s.is_empty() {
            return Err(bad("empty".to_string()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(&s).map(Self::from_real).map_err(bad);
        };
        // Split at the last sign that is not the leading one.
        let split =
            body.char_indices().filter(|&(idx, c)| idx > 0 && (c == '+' || c == '-')).map(|(idx, _)| idx).next_back();
        match split {
            Some(idx) => {
                let re = parse_rational(&body[..idx]).map_err(bad)?;
                let im = parse_imag(&body[idx..]).map_err(bad)?;
                Ok(Self::new(re, im))
            }
            None => Ok(Self::new(BigRational::zero(), parse_imag(body).map_err(bad)?)),
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::from_real(r)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_real(&self.re * &rhs.re);
        }
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; fallible callers use [`GaussianRational::inv`].
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        if rhs.im.is_zero() {
            assert!(!rhs.re.is_zero(), "division by zero");
            return GaussianRational::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational { (&self).$m(rhs) }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, rhs: GaussianRational) {
        *self += &rhs;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

/// Shorthand for an integer scalar.
pub fn gr(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// `n!` as a scalar.
pub fn factorial(n: usize) -> GaussianRational {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    GaussianRational::from_real(BigRational::from_integer(acc))
}

/// Binomial coefficient `C(n, j)` for `0 <= j <= n`.
pub fn binomial(n: usize, j: usize) -> GaussianRational {
    if j > n {
        return GaussianRational::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..j {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    GaussianRational::from_real(BigRational::from_integer(acc))
}

/// Falling factorial `x (x-1) ... (x-j+1)` of an integer, as a scalar.
pub fn falling(x: i64, j: usize) -> GaussianRational {
    (0..j as i64).fold(GaussianRational::one(), |acc, t| acc * gr(x - t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["3/4+1/2i", "-2", "0+1i", "5/3-7i", "0", "-1/9+2/5i"] {
            let z: GaussianRational = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
    }

    #[test]
    fn parse_short_forms() {
        assert_eq!("i".parse::<GaussianRational>().unwrap(), GaussianRational::i());
        assert_eq!("-i".parse::<GaussianRational>().unwrap(), -GaussianRational::i());
        assert_eq!("1/2i".parse::<GaussianRational>().unwrap(), GaussianRational::from_parts(0, 1, 1, 2));
        assert_eq!(" 6/4 ".parse::<GaussianRational>().unwrap(), GaussianRational::from_ratio(3, 2));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn field_inverse_and_powers() {
        let z = GaussianRational::from_parts(3, 4, 1, 2);
        assert!((&z * &z.inv().unwrap()).is_one());
        assert_eq!(z.pow(3).unwrap(), &(&z * &z) * &z);
        assert!((&z.pow(-2).unwrap() * &z.pow(2).unwrap()).is_one());
        assert!(GaussianRational::zero().pow(-1).is_none());
        assert_eq!(GaussianRational::i().pow(2).unwrap(), gr(-1));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), gr(120));
        assert_eq!(binomial(6, 2), gr(15));
        assert_eq!(falling(-4, 3), gr(-120));
        assert_eq!(falling(7, 0), gr(1));
    }
}
