//! Symmetric powers of the standard representation, realized as binary forms.
//!
//! A degree-`k` vector stores the coefficients of `e1^(k-j) e2^j`, `j = 0..=k`.
//! Dual vectors use the same layout against `(e1*)^(k-j) (e2*)^j`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{usage, Result};
use crate::exactnum::{binomial, factorial, gr, inverse, GaussianRational, Matrix};
use crate::moebius::MoebiusMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymVector {
    coeffs: Vec<GaussianRational>,
}

impl SymVector {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<GaussianRational>) -> Self {
        assert!(!coeffs.is_empty(), "a degree-k vector has k + 1 coefficients");
        Self { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![GaussianRational::zero(); degree + 1])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| gr(c)).collect())
    }

    /// Basis monomial `e1^(k-j) e2^j`.
    pub fn basis(degree: usize, j: usize) -> Self {
        let mut v = Self::zero(degree);
        v.coeffs[j] = GaussianRational::one();
        v
    }

    pub fn e1() -> Self {
        Self::basis(1, 0)
    }

    pub fn e2() -> Self {
        Self::basis(1, 1)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_zero)
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "degree mismatch");
        Self::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    /// Product of binary forms.
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::from_ints(&[1]), |acc, _| acc.mul(self))
    }

    /// `d/de1`; the zero vector of degree 0 when already constant.
    pub fn partial_1(&self) -> Self {
        let k = self.degree();
        if k == 0 {
            return Self::zero(0);
        }
        Self::new((0..k).map(|j| &self.coeffs[j] * &gr((k - j) as i64)).collect())
    }

    /// `d/de2`.
    pub fn partial_2(&self) -> Self {
        let k = self.degree();
        if k == 0 {
            return Self::zero(0);
        }
        Self::new((0..k).map(|j| &self.coeffs[j + 1] * &gr((j + 1) as i64)).collect())
    }

    fn partials(&self, n1: usize, n2: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n1 {
            f = f.partial_1();
        }
        for _ in 0..n2 {
            f = f.partial_2();
        }
        f
    }
}

/// Matrix of `Sym^k(g)` in the monomial basis.
pub fn sym_rep(k: usize, g: &MoebiusMap) -> Matrix {
    let ge1 = SymVector::new(vec![g.a().clone(), g.c().clone()]);
    let ge2 = SymVector::new(vec![g.b().clone(), g.d().clone()]);
    let mut m = Matrix::zeros(k + 1, k + 1);
    for j in 0..=k {
        let col = ge1.pow(k - j).mul(&ge2.pow(j));
        for (i, c) in col.coeffs.iter().enumerate() {
            m[(i, j)] = c.clone();
        }
    }
    m
}

/// `omega(u, v) = u1 v2 - u2 v1`, with `omega(e1, e2) = 1`.
pub fn omega_pair(u: &SymVector, v: &SymVector) -> Result<GaussianRational> {
    if u.degree() != 1 || v.degree() != 1 {
        return Err(usage("omega_pair takes two degree-1 vectors"));
    }
    Ok(&(&u.coeffs[0] * &v.coeffs[1]) - &(&u.coeffs[1] * &v.coeffs[0]))
}

/// The vector `v` with `omega(v, .) = alpha`, for `alpha = (alpha(e1), alpha(e2))`.
pub fn psi_iso(alpha: [GaussianRational; 2]) -> SymVector {
    let [a1, a2] = alpha;
    SymVector::new(vec![a2, -a1])
}

/// Symmetric product `v . s`.
pub fn mult_line(v: &SymVector, s: &SymVector) -> Result<SymVector> {
    if v.degree() != 1 {
        return Err(usage("mult_line takes a degree-1 vector"));
    }
    Ok(v.mul(s))
}

/// Contraction of a degree-`j` symmetric tensor by a degree-1 element of the
/// opposite space, normalized so that `alpha^j -> alpha(v) alpha^(j-1)`.
pub fn contract_line(v: &SymVector, t: &SymVector) -> Result<SymVector> {
    if v.degree() != 1 {
        return Err(usage("contract_line takes a degree-1 vector"));
    }
    let j = t.degree();
    if j == 0 {
        return Err(usage("cannot contract a degree-0 tensor"));
    }
    let d = t.partial_1().scale(&v.coeffs[0]).add(&t.partial_2().scale(&v.coeffs[1]));
    Ok(d.scale(&gr(j as i64).inv().unwrap()))
}

/// Classical `i`-th transvectant of binary forms of degrees `m` and `n`:
/// `(m-i)!(n-i)!/(m!n!) sum_r (-1)^r C(i,r) d1^(i-r) d2^r f * d1^r d2^(i-r) g`.
/// With this scale `transvectant(k, v^k, u^k) = omega(v, u)^k`.
pub fn transvectant(i: usize, f: &SymVector, g: &SymVector) -> Result<SymVector> {
    let (m, n) = (f.degree(), g.degree());
    if i > m.min(n) {
        return Err(usage(format!("transvectant order {i} exceeds min({m}, {n})")));
    }
    let mut acc = SymVector::zero(m + n - 2 * i);
    for r in 0..=i {
        let term = f.partials(i - r, r).mul(&g.partials(r, i - r));
        let c = if r % 2 == 0 { binomial(i, r) } else { -binomial(i, r) };
        acc = acc.add(&term.scale(&c));
    }
    let norm = &(&factorial(m - i) * &factorial(n - i)) / &(&factorial(m) * &factorial(n));
    Ok(acc.scale(&norm))
}

/// The invariant pairing `Sym^k x Sym^k -> C` (top transvectant).
pub fn p0_pair(k: usize, a: &SymVector, b: &SymVector) -> Result<GaussianRational> {
    if a.degree() != k || b.degree() != k {
        return Err(usage(format!("p0_pair expects degree {k}, got {} and {}", a.degree(), b.degree())));
    }
    Ok(transvectant(k, a, b)?.coeffs[0].clone())
}

/// Matrix of the bilinear form `p0_pair(k, ., .)` in the monomial basis.
pub fn p0_matrix(k: usize) -> Matrix {
    Matrix::from_fn(k + 1, k + 1, |i, j| p0_pair(k, &SymVector::basis(k, i), &SymVector::basis(k, j)).unwrap())
}

/// Degrees of the Clebsch-Gordan summands of `Sym^m x Sym^n`.
pub fn clebsch_degrees(m: usize, n: usize) -> Vec<usize> {
    (0..=m.min(n)).map(|i| m + n - 2 * i).collect()
}

/// Square matrix stacking all transvectant projections; tensor index `a (n+1) + b`.
pub fn clebsch_matrix(m: usize, n: usize) -> Matrix {
    let dim = (m + 1) * (n + 1);
    let mut out = Matrix::zeros(dim, dim);
    for a in 0..=m {
        for b in 0..=n {
            let col = a * (n + 1) + b;
            let (fa, gb) = (SymVector::basis(m, a), SymVector::basis(n, b));
            let mut row = 0;
            for i in 0..=m.min(n) {
                for c in transvectant(i, &fa, &gb).unwrap().coeffs {
                    out[(row, col)] = c;
                    row += 1;
                }
            }
        }
    }
    out
}

/// Transvectant components of a tensor, degrees `m+n, m+n-2, ..., |m-n|`.
pub fn clebsch_decompose(m: usize, n: usize, t: &[GaussianRational]) -> Result<Vec<SymVector>> {
    if t.len() != (m + 1) * (n + 1) {
        return Err(usage("tensor length does not match (m+1)(n+1)"));
    }
    let flat = clebsch_matrix(m, n).mul_vec(t);
    let mut out = Vec::new();
    let mut at = 0;
    for d in clebsch_degrees(m, n) {
        out.push(SymVector::new(flat[at..at + d + 1].to_vec()));
        at += d + 1;
    }
    Ok(out)
}

/// Inverse of `clebsch_decompose`.
pub fn clebsch_compose(m: usize, n: usize, components: &[SymVector]) -> Result<Vec<GaussianRational>> {
    let degrees = clebsch_degrees(m, n);
    if components.len() != degrees.len() || components.iter().zip(&degrees).any(|(c, &d)| c.degree() != d) {
        return Err(usage("component degrees do not match m + n - 2i"));
    }
    let flat: Vec<GaussianRational> = components.iter().flat_map(|c| c.coeffs.iter().cloned()).collect();
    let inv = inverse(&clebsch_matrix(m, n)).expect("Clebsch-Gordan matrix is invertible");
    Ok(inv.mul_vec(&flat))
}

/// Tensor `f (x) g` as a coefficient vector with index `a (n+1) + b`.
pub fn tensor(f: &SymVector, g: &SymVector) -> Vec<GaussianRational> {
    f.coeffs.iter().flat_map(|a| g.coeffs.iter().map(move |b| a * b)).collect()
}
