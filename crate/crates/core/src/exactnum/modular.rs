//! Linear algebra modulo word-sized primes, with Chinese remaindering and
//! rational reconstruction back to Q.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^62`, in decreasing order.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let start = (1u64 << 62) - 1;
    (0..).map(move |i| start - 2 * i).filter(|&n| is_prime(n))
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// Image of a rational in `Z/p`; `None` if `p` divides the denominator.
pub fn reduce_rational(x: &BigRational, p: u64) -> Option<u64> {
    let d = reduce_int(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce_int(x.numer(), p), inv_mod(d, p), p))
}

/// Incrementally maintained reduced row echelon form over `Z/p`.
#[derive(Clone, Debug)]
pub struct ModRref {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModRref {
    pub fn new(p: u64, cols: usize) -> Self {
        Self { p, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds one equation; returns whether the rank grew.
    pub fn push(&mut self, mut row: Vec<u64>) -> bool {
        let p = self.p;
        debug_assert_eq!(row.len(), self.cols);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = row[pc];
            if f != 0 {
                let nf = p - f;
                for (x, &y) in row.iter_mut().zip(r).skip(pc) {
                    if y != 0 {
                        *x = (*x + mul_mod(nf, y, p)) % p;
                    }
                }
            }
        }
        let Some(pc) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(row[pc], p);
        for x in row.iter_mut().skip(pc) {
            *x = mul_mod(*x, inv, p);
        }
        for r in self.rows.iter_mut() {
            let f = r[pc];
            if f != 0 {
                let nf = p - f;
                for (x, &y) in r.iter_mut().zip(&row).skip(pc) {
                    if y != 0 {
                        *x = (*x + mul_mod(nf, y, p)) % p;
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, row);
        true
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Canonical nullspace basis: one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (r, &pc) in self.rows.iter().zip(&self.pivots) {
                    v[pc] = (p - r[f]) % p;
                }
                v
            })
            .collect()
    }
}

/// Running Chinese-remainder accumulator for a vector of residues.
#[derive(Clone, Debug)]
pub struct CrtVector {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtVector {
    pub fn new(len: usize) -> Self {
        Self { modulus: BigInt::one(), values: vec![BigInt::zero(); len] }
    }

    pub fn absorb(&mut self, residues: &[u64], p: u64) {
        assert_eq!(residues.len(), self.values.len());
        let pb = BigInt::from(p);
        let m_mod_p = reduce_int(&self.modulus, p);
        let m_inv = BigInt::from(inv_mod(m_mod_p, p));
        for (v, &r) in self.values.iter_mut().zip(residues) {
            // v' = v + m * ((r - v) * m^{-1} mod p)
            let diff = (BigInt::from(r) - &*v).mod_floor(&pb);
            let t = (diff * &m_inv).mod_floor(&pb);
            *v += &self.modulus * t;
        }
        self.modulus *= pb;
    }

    /// Rational reconstruction of every entry; `None` if any entry fails.
    pub fn reconstruct(&self) -> Option<Vec<BigRational>> {
        let bound = (self.modulus.clone() >> 1usize).sqrt();
        self.values.iter().map(|v| rational_reconstruct(v, &self.modulus, &bound)).collect()
    }
}

fn rational_reconstruct(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = core::mem::replace(&mut r1, r2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = large_primes().take(3).collect();
        assert!(ps.iter().all(|&p| p > (1 << 61)));
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime((1u64 << 61) + 1));
    }

    #[test]
    fn reconstruction_round_trip() {
        let xs =
            [BigRational::new(BigInt::from(-7), BigInt::from(15)), BigRational::from_integer(BigInt::from(123456789))];
        let mut crt = CrtVector::new(2);
        for p in large_primes().take(2) {
            let res: Vec<u64> = xs.iter().map(|x| reduce_rational(x, p).unwrap()).collect();
            crt.absorb(&res, p);
        }
        assert_eq!(crt.reconstruct().unwrap(), xs.to_vec());
    }

    #[test]
    fn rref_nullspace() {
        let p = large_primes().next().unwrap();
        let mut m = ModRref::new(p, 3);
        assert!(m.push(vec![1, 1, 0]));
        assert!(m.push(vec![0, 0, 1]));
        assert!(!m.push(vec![2, 2, 5]));
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![p - 1, 1, 0]]);
    }
}
