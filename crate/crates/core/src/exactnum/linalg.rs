use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::matrix::Matrix;

/// Gaussian integer used inside fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Gi {
    re: BigInt,
    im: BigInt,
}

impl Gi {
    fn one() -> Self {
        Gi { re: BigInt::one(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Gi) -> Gi {
        Gi { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &Gi) -> Gi {
        Gi { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact in Z[i].
    fn div_exact(&self, o: &Gi) -> Gi {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        debug_assert!(re.is_multiple_of(&n) && im.is_multiple_of(&n));
        Gi { re: re / &n, im: im / n }
    }

    fn to_gr(&self) -> GaussianRational {
        GaussianRational::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

/// Scale every row by the lcm of its denominators so that it lives in Z[i].
fn integral_rows(m: &Matrix) -> Vec<Vec<Gi>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_lcm()));
            row.iter()
                .map(|x| {
                    let re = x.re() * BigRational::from_integer(l.clone());
                    let im = x.im() * BigRational::from_integer(l.clone());
                    Gi { re: re.to_integer(), im: im.to_integer() }
                })
                .collect()
        })
        .collect()
}

/// Bareiss forward elimination. Returns the echelon rows and pivot columns.
fn bareiss_echelon(m: &Matrix) -> (Vec<Vec<Gi>>, Vec<usize>) {
    let mut a = integral_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = Gi::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            let aic = a[i][c].clone();
            for j in c + 1..cols {
                let v = a[r][c].mul(&a[i][j]).sub(&aic.mul(&a[r][j]));
                a[i][j] = v.div_exact(&prev);
            }
            a[i][c] = Gi { re: BigInt::zero(), im: BigInt::zero() };
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of the right nullspace of `m`, one vector per free column. The vector
/// for free column `f` has a 1 at `f` and 0 at every other free column, so the
/// basis is the canonical reduced one.
pub fn exact_nullspace(m: &Matrix) -> Vec<Vec<GaussianRational>> {
    let cols = m.cols();
    let (ech, pivots) = bareiss_echelon(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let ech: Vec<Vec<GaussianRational>> = ech.iter().map(|row| row.iter().map(Gi::to_gr).collect()).collect();
    let mut basis = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![GaussianRational::zero(); cols];
        v[f] = GaussianRational::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = GaussianRational::zero();
            for j in pc + 1..cols {
                if !v[j].is_zero() && !ech[r][j].is_zero() {
                    acc += &(&ech[r][j] * &v[j]);
                }
            }
            v[pc] = -(&acc / &ech[r][pc]);
        }
        basis.push(v);
    }
    basis
}

pub fn rank(m: &Matrix) -> usize {
    bareiss_echelon(m).1.len()
}

/// Inverse by Gauss-Jordan elimination; `None` if singular or not square.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = Matrix::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
        if p != c {
            for j in 0..n {
                let t = a[(c, j)].clone();
                a[(c, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
                let t = inv[(c, j)].clone();
                inv[(c, j)] = inv[(p, j)].clone();
                inv[(p, j)] = t;
            }
        }
        let piv_inv = a[(c, c)].inv()?;
        for j in 0..n {
            a[(c, j)] = &a[(c, j)] * &piv_inv;
            inv[(c, j)] = &inv[(c, j)] * &piv_inv;
        }
        for i in 0..n {
            if i == c || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..n {
                let da = &f * &a[(c, j)];
                a[(i, j)] -= &da;
                let di = &f * &inv[(c, j)];
                inv[(i, j)] -= &di;
            }
        }
    }
    Some(inv)
}

/// Determinant by elimination over the field.
pub fn determinant(m: &Matrix) -> GaussianRational {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = GaussianRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return GaussianRational::zero();
        };
        if p != c {
            for j in 0..n {
                let t = a[(c, j)].clone();
                a[(c, j)] = a[(p, j)].clone();
                a[(p, j)] = t;
            }
            det = -det;
        }
        det = &det * &a[(c, c)];
        let piv_inv = a[(c, c)].inv().unwrap();
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = &a[(i, c)] * &piv_inv;
            for j in c..n {
                let d = &f * &a[(c, j)];
                a[(i, j)] -= &d;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::gaussian::gr;

    #[test]
    fn nullspace_examples() {
        assert!(exact_nullspace(&Matrix::identity(3)).is_empty());
        assert_eq!(exact_nullspace(&Matrix::zeros(2, 3)).len(), 3);
        let m = Matrix::from_int_rows(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = exact_nullspace(&m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert_eq!(v[0], -&v[1]);
        assert!(v[2].is_zero() && !v[0].is_zero());
    }

    #[test]
    fn nullspace_with_gaussian_entries() {
        let i = GaussianRational::i();
        let half = GaussianRational::from_ratio(1, 2);
        let m = Matrix::from_rows(vec![
            vec![gr(1), i.clone(), half.clone(), gr(0)],
            vec![i.clone(), gr(-1), &half * &i, gr(2)],
        ]);
        let ns = exact_nullspace(&m);
        assert_eq!(ns.len() + rank(&m), 4);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(GaussianRational::is_zero));
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_int_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(determinant(&m), gr(1));
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&Matrix::from_int_rows(&[&[1, 2], &[2, 4]])).is_none());
    }
}
