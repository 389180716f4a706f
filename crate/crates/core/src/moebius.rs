//! SL(2, Q(i)) elements acting on the affine chart `[z : 1]` of the projective line.

use alloc::format;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::{gr, series_reciprocal, GaussianRational, Matrix, TruncSeries};

/// `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MoebiusMap {
    a: GaussianRational,
    b: GaussianRational,
    c: GaussianRational,
    d: GaussianRational,
}

impl MoebiusMap {
    pub fn new(a: GaussianRational, b: GaussianRational, c: GaussianRational, d: GaussianRational) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if !det.is_one() {
            return Err(Error::Usage(format!("determinant is {det}, expected 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(gr(a), gr(b), gr(c), gr(d))
    }

    pub fn identity() -> Self {
        Self { a: gr(1), b: gr(0), c: gr(0), d: gr(1) }
    }

    /// `z -> z + b`.
    pub fn translation(b: GaussianRational) -> Self {
        Self { a: gr(1), b, c: gr(0), d: gr(1) }
    }

    /// `z -> -1/z`.
    pub fn inversion() -> Self {
        Self { a: gr(0), b: gr(1), c: gr(-1), d: gr(0) }
    }

    pub fn a(&self) -> &GaussianRational {
        &self.a
    }
    pub fn b(&self) -> &GaussianRational {
        &self.b
    }
    pub fn c(&self) -> &GaussianRational {
        &self.c
    }
    pub fn d(&self) -> &GaussianRational {
        &self.d
    }

    pub fn is_real(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| x.is_real())
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(alloc::vec![
            alloc::vec![self.a.clone(), self.b.clone()],
            alloc::vec![self.c.clone(), self.d.clone()],
        ])
    }

    pub fn transpose(&self) -> Self {
        Self { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    pub fn negate(&self) -> Self {
        Self { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    /// `c z + d`, failing when it vanishes.
    fn denom_at(&self, z: &GaussianRational) -> Result<GaussianRational> {
        let den = &(&self.c * z) + &self.d;
        if den.is_zero() {
            return Err(Error::ChartEscape(format!("c z + d vanishes at z = {z}")));
        }
        Ok(den)
    }

    /// `(a z + b) / (c z + d)`.
    pub fn act(&self, z: &GaussianRational) -> Result<GaussianRational> {
        let den = self.denom_at(z)?;
        Ok(&(&(&self.a * z) + &self.b) / &den)
    }

    /// Matrix product `self * g1`, so `act(compose) = act(self) . act(g1)`.
    pub fn compose(&self, g1: &Self) -> Self {
        Self {
            a: &(&self.a * &g1.a) + &(&self.b * &g1.c),
            b: &(&self.a * &g1.b) + &(&self.b * &g1.d),
            c: &(&self.c * &g1.a) + &(&self.d * &g1.c),
            d: &(&self.c * &g1.b) + &(&self.d * &g1.d),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// `mu_n(g, z) = (c z + d)^n`.
    pub fn automorphy(&self, n: i64, z: &GaussianRational) -> Result<GaussianRational> {
        Ok(self.denom_at(z)?.pow(n).expect("nonzero base"))
    }

    /// `g'(z) = (c z + d)^(-2)`.
    pub fn derivative(&self, z: &GaussianRational) -> Result<GaussianRational> {
        self.automorphy(-2, z)
    }

    /// Taylor series of `z -> g(z)` at `z0`.
    pub fn act_series(&self, z0: &GaussianRational, order: usize) -> Result<TruncSeries> {
        let den = self.linear_series(&self.c, &self.d, z0, order);
        if den.coeff(0).is_zero() {
            return Err(Error::ChartEscape(format!("c z + d vanishes at z = {z0}")));
        }
        let num = self.linear_series(&self.a, &self.b, z0, order);
        num.mul(&series_reciprocal(&den)?)
    }

    /// Taylor series of `z -> mu_n(g, z)` at `z0`.
    pub fn automorphy_series(&self, n: i64, z0: &GaussianRational, order: usize) -> Result<TruncSeries> {
        let den = self.linear_series(&self.c, &self.d, z0, order);
        if den.coeff(0).is_zero() {
            return Err(Error::ChartEscape(format!("c z + d vanishes at z = {z0}")));
        }
        den.powi(n)
    }

    fn linear_series(
        &self,
        p: &GaussianRational,
        q: &GaussianRational,
        z0: &GaussianRational,
        order: usize,
    ) -> TruncSeries {
        let mut s = TruncSeries::constant(z0.clone(), &(p * z0) + q, order);
        if order >= 1 {
            let mut cs = s.coeffs().to_vec();
            cs[1] = p.clone();
            s = TruncSeries::new(z0.clone(), cs);
        }
        s
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Base points every random element must keep in the chart.
pub const STANDARD_BASE_POINTS: [i64; 3] = [0, 1, 2];

/// Deterministic sampler. Each `(seed, stream)` pair names an independent,
/// reproducible sequence.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Rational with numerator in `[-h, h]` and denominator in `[1, h]`.
    fn rational(&mut self, height: i64) -> GaussianRational {
        let num = self.int_in(-height, height);
        let den = self.int_in(1, height);
        GaussianRational::from_ratio(num, den)
    }

    pub fn scalar(&mut self, height: i64, real_only: bool) -> GaussianRational {
        let re = self.rational(height);
        if real_only {
            return re;
        }
        let im = self.rational(height);
        &re + &(&im * &GaussianRational::i())
    }

    pub fn nonzero_scalar(&mut self, height: i64, real_only: bool) -> GaussianRational {
        loop {
            let x = self.scalar(height, real_only);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Random element of SL(2): `a, b, c` drawn with bounded height, `d = (1 + bc)/a`,
    /// rejected while `c z0 + d = 0` for a standard base point.
    pub fn moebius(&mut self, height: i64, real_only: bool) -> MoebiusMap {
        assert!(height >= 1, "height must be at least 1");
        loop {
            let a = self.nonzero_scalar(height, real_only);
            let b = self.scalar(height, real_only);
            let c = self.scalar(height, real_only);
            let d = &(&gr(1) + &(&b * &c)) / &a;
            let g = MoebiusMap { a, b, c, d };
            if STANDARD_BASE_POINTS.iter().all(|&z| g.act(&gr(z)).is_ok()) {
                return g;
            }
        }
    }

    /// A base point `z0` with both `z0` and `g z0` in the chart for every listed `g`.
    pub fn base_point(&mut self, height: i64, real_only: bool, avoid: &[&MoebiusMap]) -> GaussianRational {
        loop {
            let z = self.scalar(height, real_only);
            if avoid.iter().all(|g| g.act(&z).is_ok()) {
                return z;
            }
        }
    }
}

/// `random_element(seed, height)` with Gaussian entries.
pub fn random_element(seed: u64, height: i64) -> MoebiusMap {
    Sampler::new(seed).moebius(height, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn action_examples() {
        assert_eq!(MoebiusMap::identity().act(&gr(7)).unwrap(), gr(7));
        assert_eq!(MoebiusMap::from_ints(1, 1, 0, 1).unwrap().act(&gr(0)).unwrap(), gr(1));
        assert_eq!(MoebiusMap::inversion().act(&gr(2)).unwrap(), q("-1/2"));
        assert!(matches!(MoebiusMap::inversion().act(&gr(0)), Err(Error::ChartEscape(_))));
        assert!(MoebiusMap::from_ints(1, 1, 1, 1).is_err());
    }

    #[test]
    fn composition_examples() {
        let g = random_element(3, 5);
        assert_eq!(g.compose(&g.inverse()), MoebiusMap::identity());
        assert_eq!(MoebiusMap::identity().compose(&g), g);
        let t1 = MoebiusMap::from_ints(1, 1, 0, 1).unwrap();
        let t2 = MoebiusMap::from_ints(1, 2, 0, 1).unwrap();
        assert_eq!(t1.compose(&t2), MoebiusMap::from_ints(1, 3, 0, 1).unwrap());
    }

    #[test]
    fn automorphy_examples() {
        let t = MoebiusMap::from_ints(1, 1, 0, 1).unwrap();
        for n in -3..4 {
            assert!(t.automorphy(n, &q("5/7+2i")).unwrap().is_one());
        }
        assert_eq!(MoebiusMap::inversion().automorphy(2, &gr(2)).unwrap(), gr(4));
        assert!(random_element(9, 4).automorphy(0, &gr(1)).unwrap().is_one());
    }

    #[test]
    fn random_elements_are_deterministic_and_in_chart() {
        assert_eq!(random_element(42, 5), random_element(42, 5));
        let mut s = Sampler::new(0);
        for _ in 0..1000 {
            let g = s.moebius(5, false);
            let det = &(g.a() * g.d()) - &(g.b() * g.c());
            assert!(det.is_one());
            for z in STANDARD_BASE_POINTS {
                assert!(!(&(g.c() * &gr(z)) + g.d()).is_zero());
            }
        }
    }

    #[test]
    fn series_match_pointwise_derivative() {
        let g = random_element(11, 4);
        let z0 = gr(1);
        let s = g.act_series(&z0, 3).unwrap();
        assert_eq!(s.coeff(0), &g.act(&z0).unwrap());
        assert_eq!(s.coeff(1), &g.derivative(&z0).unwrap());
        let m = g.automorphy_series(-3, &z0, 3).unwrap();
        assert_eq!(m.coeff(0), &g.automorphy(-3, &z0).unwrap());
    }
}
