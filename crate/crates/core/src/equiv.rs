//! Equivariant isomorphisms between jet cocycles and their representation
//! models, found as polynomial intertwiners by exact linear algebra.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactnum::modular::{large_primes, reduce_rational, CrtVector, ModRref};
use crate::exactnum::{exact_nullspace, factorial, falling, gr, inverse, GaussianRational, Matrix, Poly};
use crate::jets::{forgetful_matrix, iota_matrix, jet_cocycle};
use crate::moebius::{MoebiusMap, Sampler};
use crate::rep::{clebsch_degrees, contract_line, sym_rep, SymVector};

/// A rule `(g, z0) -> T(g, z0)` satisfying `T(g2 g1, z) = T(g1, z) T(g2, g1 z)`.
pub trait Cocycle {
    fn size(&self) -> usize;
    fn eval(&self, g: &MoebiusMap, z0: &GaussianRational) -> Result<Matrix>;
    fn describe(&self) -> String;
}

/// Transition matrices of `J^k(L^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetCocycle {
    pub k: usize,
    pub n: i64,
}

impl Cocycle for JetCocycle {
    fn size(&self) -> usize {
        self.k + 1
    }

    fn eval(&self, g: &MoebiusMap, z0: &GaussianRational) -> Result<Matrix> {
        jet_cocycle(self.k, self.n, g, z0)
    }

    fn describe(&self) -> String {
        format!("J^{}(L^{})", self.k, self.n)
    }
}

/// `L^twist (x) V_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub twist: i64,
    pub degree: usize,
}

/// Direct sum of summands `L^m (x) V_d`, acting by `mu_m(g, z0) Sym^d(g^T)`.
///
/// The transpose comes from the chart dictionary `e1^(d-j) e2^j -> z^(d-j)`:
/// pulling a global section back along `g` acts on its coefficient vector by
/// `Sym^d(g^T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCocycle {
    summands: Vec<Summand>,
}

impl ModelCocycle {
    pub fn new(summands: Vec<Summand>) -> Self {
        Self { summands }
    }

    pub fn single(twist: i64, degree: usize) -> Self {
        Self::new(vec![Summand { twist, degree }])
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Start index of each summand block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut at = 0;
        self.summands
            .iter()
            .map(|s| {
                let o = at;
                at += s.degree + 1;
                o
            })
            .collect()
    }
}

impl Cocycle for ModelCocycle {
    fn size(&self) -> usize {
        self.summands.iter().map(|s| s.degree + 1).sum()
    }

    fn eval(&self, g: &MoebiusMap, z0: &GaussianRational) -> Result<Matrix> {
        let gt = g.transpose();
        let mut out = Matrix::zeros(self.size(), self.size());
        for (s, off) in self.summands.iter().zip(self.offsets()) {
            let block = sym_rep(s.degree, &gt).scale(&g.automorphy(s.twist, z0)?);
            out.set_block(off, off, &block);
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.summands.iter().map(|s| format!("L^{} V_{}", s.twist, s.degree)).collect();
        parts.join(" + ")
    }
}

/// Model summands `L^m (x) V_d` isomorphic to `J^k(L^n)`.
pub fn thm1_model(k: usize, n: i64) -> ModelCocycle {
    if is_split(k, n) {
        ModelCocycle::new(vec![
            Summand { twist: 0, degree: n as usize },
            Summand { twist: -(k as i64) - 1, degree: k - n as usize - 1 },
        ])
    } else {
        ModelCocycle::single(n - k as i64, k)
    }
}

/// `k > n >= 0`: the jet bundle splits into two summands.
pub fn is_split(k: usize, n: i64) -> bool {
    n >= 0 && (k as i64) > n
}

/// Matrix whose entries are polynomials in the chart coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &GaussianRational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).eval(z))
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        Self::new(self.rows, self.cols, self.entries.iter().map(|p| p.scale(s)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Columns `c0..c0+cols` as their own matrix.
    pub fn columns(&self, c0: usize, cols: usize) -> Self {
        let entries = (0..self.rows)
            .flat_map(|i| (c0..c0 + cols).map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j).clone())
            .collect();
        Self::new(self.rows, cols, entries)
    }

    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let entries = (0..self.rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| if j < self.cols { self.entry(i, j).clone() } else { other.entry(i, j - self.cols).clone() })
            .collect();
        Self::new(self.rows, cols, entries)
    }
}

/// How the linear system is solved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Fit modulo large primes on real samples, reconstruct rationals, certify exactly.
    Modular,
    /// Fraction-free elimination over Z[i] on Gaussian samples.
    Exact,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub degree_bound: usize,
    pub seed: u64,
    pub method: SolveMethod,
    /// Height bound for sampled group elements and base points.
    pub height: i64,
    /// Number of distinct group elements used for fitting.
    pub group_elements: usize,
    /// Fresh samples for the exact certification of every basis element.
    pub verify_samples: usize,
}

impl SolverConfig {
    pub fn new(degree_bound: usize, seed: u64) -> Self {
        Self { degree_bound, seed, method: SolveMethod::Modular, height: 5, group_elements: 8, verify_samples: 25 }
    }

    pub fn with_method(mut self, method: SolveMethod) -> Self {
        self.method = method;
        self
    }
}

struct Sample {
    ta: Matrix,
    tb: Matrix,
    z_pows: Vec<GaussianRational>,
    w_pows: Vec<GaussianRational>,
}

fn powers(z: &GaussianRational, d: usize) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::one()];
    for _ in 0..d {
        let next = out.last().unwrap() * z;
        out.push(next);
    }
    out
}

/// Draws fitting samples: group elements cycle through a fixed pool, base points are fresh.
struct SamplePool<'a> {
    a: &'a dyn Cocycle,
    b: &'a dyn Cocycle,
    degree: usize,
    groups: Vec<MoebiusMap>,
    points: Sampler,
    real_only: bool,
    height: i64,
    drawn: Vec<Sample>,
}

impl<'a> SamplePool<'a> {
    fn new(a: &'a dyn Cocycle, b: &'a dyn Cocycle, cfg: &SolverConfig, real_only: bool) -> Self {
        let mut gs = Sampler::with_stream(cfg.seed, 1);
        let groups = (0..cfg.group_elements.max(1)).map(|_| gs.moebius(cfg.height, real_only)).collect();
        Self {
            a,
            b,
            degree: cfg.degree_bound,
            groups,
            points: Sampler::with_stream(cfg.seed, 2),
            real_only,
            height: cfg.height,
            drawn: Vec::new(),
        }
    }

    fn get(&mut self, idx: usize) -> Result<&Sample> {
        while self.drawn.len() <= idx {
            let g = self.groups[self.drawn.len() % self.groups.len()].clone();
            let z0 = self.points.base_point(self.height, self.real_only, &[&g]);
            let w0 = g.act(&z0)?;
            self.drawn.push(Sample {
                ta: self.a.eval(&g, &z0)?,
                tb: self.b.eval(&g, &z0)?,
                z_pows: powers(&z0, self.degree),
                w_pows: powers(&w0, self.degree),
            });
        }
        Ok(&self.drawn[idx])
    }
}

/// Unknown `(i, j, e)`: coefficient of `z^e` in entry `(i, j)`.
fn unknown(q: usize, d1: usize, i: usize, j: usize, e: usize) -> usize {
    (i * q + j) * d1 + e
}

/// Equations `T_A Sigma(w0) - Sigma(z0) T_B = 0` contributed by one sample.
fn sample_rows<T: Clone>(
    s: &Sample,
    p: usize,
    q: usize,
    d1: usize,
    zero: T,
    conv: &impl Fn(&GaussianRational) -> T,
    add: &impl Fn(&T, &T) -> T,
    mul: &impl Fn(&T, &T) -> T,
    neg: &impl Fn(&T) -> T,
) -> Vec<Vec<T>> {
    let w: Vec<T> = s.w_pows.iter().map(conv).collect();
    let z: Vec<T> = s.z_pows.iter().map(conv).collect();
    let ta: Vec<T> = s.ta.entries().iter().map(conv).collect();
    let tb: Vec<T> = s.tb.entries().iter().map(conv).collect();
    let cols = p * q * d1;
    let mut rows = Vec::with_capacity(p * q);
    for i in 0..p {
        for j in 0..q {
            let mut row = vec![zero.clone(); cols];
            for t in 0..p {
                let c = &ta[i * p + t];
                for e in 0..d1 {
                    let u = unknown(q, d1, t, j, e);
                    row[u] = add(&row[u], &mul(c, &w[e]));
                }
            }
            for t in 0..q {
                let c = neg(&tb[t * q + j]);
                for e in 0..d1 {
                    let u = unknown(q, d1, i, t, e);
                    row[u] = add(&row[u], &mul(&c, &z[e]));
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn basis_to_polys(v: &[GaussianRational], p: usize, q: usize, d1: usize) -> PolyMatrix {
    let entries = (0..p * q).map(|c| Poly::new(v[c * d1..(c + 1) * d1].to_vec())).collect();
    PolyMatrix::new(p, q, entries)
}

/// Checks `T_A(g, z0) Sigma(g z0) = Sigma(z0) T_B(g, z0)` exactly.
pub fn check_intertwining(
    a: &dyn Cocycle,
    b: &dyn Cocycle,
    sigma: &PolyMatrix,
    g: &MoebiusMap,
    z0: &GaussianRational,
) -> Result<bool> {
    let w0 = g.act(z0)?;
    let lhs = a.eval(g, z0)?.mul(&sigma.eval(&w0));
    let rhs = sigma.eval(z0).mul(&b.eval(g, z0)?);
    Ok(lhs == rhs)
}

/// Certification samples: fresh Gaussian `(g, z0)` pairs from their own stream.
pub fn certification_samples(seed: u64, count: usize, height: i64) -> Vec<(MoebiusMap, GaussianRational)> {
    let mut s = Sampler::with_stream(seed, 3);
    (0..count)
        .map(|_| {
            let g = s.moebius(height, false);
            let z0 = s.base_point(height, false, &[&g]);
            (g, z0)
        })
        .collect()
}

fn certify(a: &dyn Cocycle, b: &dyn Cocycle, basis: &[PolyMatrix], cfg: &SolverConfig) -> Result<bool> {
    for (g, z0) in certification_samples(cfg.seed, cfg.verify_samples, cfg.height) {
        for s in basis {
            if !check_intertwining(a, b, s, &g, &z0)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn modular_fit(
    pool: &mut SamplePool<'_>,
    p: usize,
    q: usize,
    d1: usize,
    prime: u64,
    min_samples: usize,
    cap: usize,
) -> Result<Option<(ModRref, usize)>> {
    let cols = p * q * d1;
    let mut rref = ModRref::new(prime, cols);
    let mut idle = 0;
    let mut used = 0;
    let conv = |x: &GaussianRational| reduce_rational(x.re(), prime);
    while used < cap && !rref.is_full() && (used < min_samples || idle < 2) {
        let s = pool.get(used)?;
        used += 1;
        let rows = sample_rows(
            s,
            p,
            q,
            d1,
            Some(0u64),
            &conv,
            &|a, b| Some(((*a)? as u128 + (*b)? as u128).rem_euclid(prime as u128) as u64),
            &|a, b| Some((((*a)? as u128 * (*b)? as u128) % prime as u128) as u64),
            &|a| Some((prime - (*a)?) % prime),
        );
        let before = rref.rank();
        for row in rows {
            let Some(row) = row.into_iter().collect::<Option<Vec<u64>>>() else {
                return Ok(None);
            };
            rref.push(row);
        }
        idle = if rref.rank() == before { idle + 1 } else { 0 };
    }
    Ok(Some((rref, used)))
}

fn solve_modular(a: &dyn Cocycle, b: &dyn Cocycle, cfg: &SolverConfig) -> Result<Vec<PolyMatrix>> {
    let (p, q, d1) = (a.size(), b.size(), cfg.degree_bound + 1);
    let cols = p * q * d1;
    let mut pool = SamplePool::new(a, b, cfg, true);
    let cap = 8 * (p.max(q) + 3) * (p.max(q) + 3) + cols;
    let mut min_samples = 0;
    for _round in 0..6 {
        let mut primes = large_primes();
        let mut crt: Option<CrtVector> = None;
        let mut reference: Option<(usize, Vec<usize>)> = None;
        let mut used = min_samples;
        let mut last: Option<Vec<BigRational>> = None;
        for _ in 0..8 {
            let prime = primes.next().unwrap();
            let Some((rref, n_used)) = modular_fit(&mut pool, p, q, d1, prime, used, cap)? else {
                continue;
            };
            used = used.max(n_used);
            let free = rref.free_columns();
            match &reference {
                None => reference = Some((rref.rank(), free.clone())),
                Some((r, f)) if *r != rref.rank() || *f != free => {
                    // A prime with different rank profile: restart this round with more samples.
                    if rref.rank() > *r {
                        reference = Some((rref.rank(), free.clone()));
                        crt = None;
                        last = None;
                    } else {
                        continue;
                    }
                }
                _ => {}
            }
            if free.is_empty() {
                return Err(Error::NoIntertwiner { degree_bound: cfg.degree_bound });
            }
            let ns: Vec<u64> = rref.nullspace().concat();
            let acc = crt.get_or_insert_with(|| CrtVector::new(ns.len()));
            acc.absorb(&ns, prime);
            let Some(values) = acc.reconstruct() else {
                continue;
            };
            if last.as_ref() == Some(&values) {
                let basis: Vec<PolyMatrix> = values
                    .chunks(cols)
                    .map(|chunk| {
                        let v: Vec<GaussianRational> = chunk.iter().cloned().map(GaussianRational::from_real).collect();
                        basis_to_polys(&v, p, q, d1)
                    })
                    .collect();
                if certify(a, b, &basis, cfg)? {
                    return Ok(basis);
                }
                break;
            }
            last = Some(values);
        }
        min_samples = (used * 2).max(4);
    }
    Err(Error::Verification(format!("intertwiner fit between {} and {} did not certify", a.describe(), b.describe())))
}

fn solve_exact(a: &dyn Cocycle, b: &dyn Cocycle, cfg: &SolverConfig) -> Result<Vec<PolyMatrix>> {
    let (p, q, d1) = (a.size(), b.size(), cfg.degree_bound + 1);
    let cols = p * q * d1;
    let mut pool = SamplePool::new(a, b, cfg, false);
    let mut n_samples = cols.div_ceil(p * q) + 4;
    loop {
        let mut rows = Vec::new();
        for idx in 0..n_samples {
            let s = pool.get(idx)?;
            rows.extend(sample_rows(
                s,
                p,
                q,
                d1,
                GaussianRational::zero(),
                &|x: &GaussianRational| x.clone(),
                &|x, y| x + y,
                &|x, y| x * y,
                &|x| -x,
            ));
        }
        let ns = exact_nullspace(&Matrix::from_rows(rows));
        if ns.is_empty() {
            return Err(Error::NoIntertwiner { degree_bound: cfg.degree_bound });
        }
        let basis: Vec<PolyMatrix> = ns.iter().map(|v| basis_to_polys(v, p, q, d1)).collect();
        if certify(a, b, &basis, cfg)? {
            return Ok(basis);
        }
        n_samples *= 2;
    }
}

/// Basis of polynomial matrices `Sigma(z)` with entry degrees at most the bound and
/// `T_A(g, z0) Sigma(g z0) = Sigma(z0) T_B(g, z0)`. Every returned element has
/// been re-verified exactly on fresh Gaussian samples.
pub fn solve_intertwiner(a: &dyn Cocycle, b: &dyn Cocycle, cfg: &SolverConfig) -> Result<Vec<PolyMatrix>> {
    match cfg.method {
        SolveMethod::Modular => solve_modular(a, b, cfg),
        SolveMethod::Exact => solve_exact(a, b, cfg),
    }
}

/// Smallest degree bound with a nonzero intertwiner, searched upward to `cap`.
pub fn minimal_intertwiners(
    a: &dyn Cocycle,
    b: &dyn Cocycle,
    cap: usize,
    seed: u64,
    method: SolveMethod,
) -> Result<(usize, Vec<PolyMatrix>)> {
    for d in 0..=cap {
        let cfg = SolverConfig::new(d, seed).with_method(method);
        match solve_intertwiner(a, b, &cfg) {
            Ok(basis) => return Ok((d, basis)),
            Err(Error::NoIntertwiner { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoIntertwiner { degree_bound: cap })
}

/// Degree cap of the intertwiner search.
pub fn degree_cap(k: usize, n: i64) -> usize {
    2 * k + n.unsigned_abs() as usize + 2
}

/// Which scalar pin fixed a canonical intertwiner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Row 0 (the value) reads the `e2^k` coordinate with coefficient 1.
    ValuePin,
    /// First block equals the jets of global sections; on the second block the
    /// derivative of order `n+1` reads the `e2^(k-n-1)` coordinate with weight `(n+1)!`.
    GlobalSectionsPin,
}

/// Canonical isomorphism `Sigma(z)` from the model onto `J^k(L^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub k: usize,
    pub n: i64,
    pub model: ModelCocycle,
    pub sigma: PolyMatrix,
    /// Minimal degree found for each summand block.
    pub block_degrees: Vec<usize>,
    /// Dimension of the space of intertwiners at the largest block degree.
    pub schur_dimension: usize,
    pub normalization: Normalization,
}

impl Intertwiner {
    pub fn eval(&self, z: &GaussianRational) -> Matrix {
        self.sigma.eval(z)
    }

    /// `Sigma(z)^{-1}`, the map from jets to the model.
    pub fn eval_inverse(&self, z: &GaussianRational) -> Result<Matrix> {
        inverse(&self.eval(z)).ok_or_else(|| Error::Singularity(format!("intertwiner degenerate at {z}")))
    }

    pub fn jet_cocycle(&self) -> JetCocycle {
        JetCocycle { k: self.k, n: self.n }
    }
}

/// Polynomial matrix of `global_jet_matrix`: entry `(i, j)` is `d^i/dz^i z^(n-j)`.
pub fn global_jet_poly(n: usize, k: usize) -> PolyMatrix {
    let mut entries = Vec::with_capacity((k + 1) * (n + 1));
    for i in 0..=k {
        for j in 0..=n {
            let e = n - j;
            let p = if i > e {
                Poly::zero()
            } else {
                let mut cs = vec![GaussianRational::zero(); e - i + 1];
                cs[e - i] = falling(e as i64, i);
                Poly::new(cs)
            };
            entries.push(p);
        }
    }
    PolyMatrix::new(k + 1, n + 1, entries)
}

const THM1_SEED: u64 = 0x5eed_0001;

fn pin_to(sigma: &PolyMatrix, i: usize, j: usize, target: &GaussianRational) -> Result<PolyMatrix> {
    let entry = sigma.entry(i, j);
    if entry.degree() != Some(0) {
        return Err(Error::Verification(format!("pin entry ({i}, {j}) is not a nonzero constant: {entry:?}")));
    }
    Ok(sigma.scale(&(target / &entry.coeff(0))))
}

fn single_block(k: usize, n: i64, s: Summand, method: SolveMethod) -> Result<(usize, PolyMatrix)> {
    let jet = JetCocycle { k, n };
    let model = ModelCocycle::new(vec![s]);
    let (deg, basis) = minimal_intertwiners(&jet, &model, degree_cap(k, n), THM1_SEED, method)?;
    if basis.len() != 1 {
        return Err(Error::Verification(format!(
            "expected a unique intertwiner onto L^{} V_{}, found dimension {}",
            s.twist,
            s.degree,
            basis.len()
        )));
    }
    Ok((deg, basis.into_iter().next().unwrap()))
}

/// The canonical isomorphism, found by the solver and pinned.
pub fn thm1_iso_with(k: usize, n: i64, method: SolveMethod) -> Result<Intertwiner> {
    let model = thm1_model(k, n);
    let jet = JetCocycle { k, n };
    if !is_split(k, n) {
        let (deg, sigma) = single_block(k, n, model.summands()[0], method)?;
        let sigma = pin_to(&sigma, 0, k, &gr(1))?;
        return Ok(Intertwiner {
            k,
            n,
            model,
            sigma,
            block_degrees: vec![deg],
            schur_dimension: 1,
            normalization: Normalization::ValuePin,
        });
    }
    let nu = n as usize;
    let (d1, first) = single_block(k, n, model.summands()[0], method)?;
    let first = pin_to(&first, 0, nu, &gr(1))?;
    if first != global_jet_poly(nu, k) {
        return Err(Error::Verification(format!("first summand of J^{k}(L^{n}) is not the global-section jet map")));
    }
    let (d2, second) = single_block(k, n, model.summands()[1], method)?;
    let second = pin_to(&second, nu + 1, k - nu - 1, &factorial(nu + 1))?;
    let top = d1.max(d2);
    let cfg = SolverConfig::new(top, THM1_SEED).with_method(method);
    let schur_dimension = solve_intertwiner(&jet, &model, &cfg)?.len();
    Ok(Intertwiner {
        k,
        n,
        model,
        sigma: first.hcat(&second),
        block_degrees: vec![d1, d2],
        schur_dimension,
        normalization: Normalization::GlobalSectionsPin,
    })
}

pub fn thm1_iso(k: usize, n: i64) -> Result<Intertwiner> {
    thm1_iso_with(k, n, SolveMethod::Modular)
}

/// Memo table of canonical isomorphisms, filled on demand.
#[derive(Default)]
pub struct IsoTable {
    map: RefCell<BTreeMap<(usize, i64), Intertwiner>>,
}

impl IsoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: usize, n: i64) -> Result<Intertwiner> {
        if let Some(it) = self.map.borrow().get(&(k, n)) {
            return Ok(it.clone());
        }
        let it = thm1_iso(k, n)?;
        self.map.borrow_mut().insert((k, n), it.clone());
        Ok(it)
    }

    pub fn insert(&self, it: Intertwiner) {
        self.map.borrow_mut().insert((it.k, it.n), it);
    }
}

/// Linear map `J^k(L^n)` at `z0` to `Sym^n`: truncate to order `n`, then invert
/// the global-section jet map. Requires `k > n >= 0`.
pub fn splitting_beta(k: usize, n: usize, z0: &GaussianRational) -> Result<Matrix> {
    if k <= n {
        return Err(crate::error::usage("splitting_beta needs k > n"));
    }
    let gamma_n = global_jet_poly(n, n).eval(z0);
    let inv = inverse(&gamma_n).expect("global-section jets are nondegenerate");
    let trunc = Matrix::from_fn(n + 1, k + 1, |i, j| if i == j { gr(1) } else { gr(0) });
    Ok(inv.mul(&trunc))
}

/// The model map `V_j -> V_(j-1)`: contraction with the point `(z0, 1)`,
/// `S -> (1/j) (z0 d/de1 + d/de2) S`.
pub fn varpi0(j: usize, z0: &GaussianRational) -> Matrix {
    let v = SymVector::new(vec![z0.clone(), gr(1)]);
    let mut m = Matrix::zeros(j, j + 1);
    for c in 0..=j {
        let img = contract_line(&v, &SymVector::basis(j, c)).unwrap();
        for (r, x) in img.coeffs().iter().enumerate() {
            m[(r, c)] = x.clone();
        }
    }
    m
}

/// Expected conjugate of the truncation `J^k -> J^(k-1)` in model coordinates.
pub fn forgetful_model_map(k: usize, n: i64, z0: &GaussianRational) -> Matrix {
    if !is_split(k, n) {
        return varpi0(k, z0);
    }
    let nu = n as usize;
    let id = Matrix::identity(nu + 1);
    if k - 1 == nu {
        id.hcat(&Matrix::zeros(nu + 1, k - nu))
    } else {
        id.direct_sum(&varpi0(k - nu - 1, z0))
    }
}

/// Outcome of a check over sample points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    /// First failing base point with a description.
    Fail {
        z0: GaussianRational,
        detail: String,
    },
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

/// Base points for pointwise checks of rational identities.
pub fn check_points(seed: u64, count: usize) -> Vec<GaussianRational> {
    let mut s = Sampler::with_stream(seed, 4);
    (0..count).map(|_| s.scalar(7, false)).collect()
}

/// `Sigma_(k-1)(z0)^{-1} . truncation . Sigma_k(z0)` against the model map.
pub fn verify_forgetful_model(table: &IsoTable, k: usize, n: i64, seed: u64) -> Result<Check> {
    if k == 0 {
        return Err(crate::error::usage("forgetful model needs k >= 1"));
    }
    let hi = table.get(k, n)?;
    let lo = table.get(k - 1, n)?;
    for z0 in check_points(seed, 6) {
        let Ok(lo_inv) = lo.eval_inverse(&z0) else { continue };
        let conj = lo_inv.mul(&forgetful_matrix(k, 1)).mul(&hi.eval(&z0));
        let expected = forgetful_model_map(k, n, &z0);
        if conj != expected {
            return Ok(Check::Fail { z0, detail: format!("got {conj:?}, expected {expected:?}") });
        }
    }
    Ok(Check::Pass)
}

/// Irreducible summands `(twist, degree)` of `J^k(L^a) (x) J^l(L^b)`, with multiplicity.
pub fn decompose_jet_tensor(k: usize, a: i64, l: usize, b: i64) -> Vec<Summand> {
    let mut out = Vec::new();
    for s in thm1_model(k, a).summands() {
        for t in thm1_model(l, b).summands() {
            for d in clebsch_degrees(s.degree, t.degree) {
                out.push(Summand { twist: s.twist + t.twist, degree: d });
            }
        }
    }
    out.sort_by(|x, y| y.degree.cmp(&x.degree).then(y.twist.cmp(&x.twist)));
    out
}

/// Model vector of `iota` on the line `L^(n-2k)`: `(e1 - z0 e2)^d` placed in the
/// summand that receives the symbol, zero elsewhere.
pub fn model_iota(model: &ModelCocycle, z0: &GaussianRational) -> Vec<GaussianRational> {
    let last = *model.summands().last().unwrap();
    let ell = SymVector::new(vec![gr(1), -z0]);
    let top = ell.pow(last.degree);
    let mut v = vec![GaussianRational::zero(); model.size()];
    let off = *model.offsets().last().unwrap();
    for (i, c) in top.coeffs().iter().enumerate() {
        v[off + i] = c.clone();
    }
    v
}

/// Jet-side image of the model `iota` vector: `Sigma(z0) * model_iota`.
pub fn symbol_constant(it: &Intertwiner, z0: &GaussianRational) -> Result<GaussianRational> {
    let img = it.eval(z0).mul_vec(&model_iota(&it.model, z0));
    let top = iota_matrix(it.k, 1).col(0);
    // img must be a multiple of iota(1).
    let ratio = &img[it.k] / &top[it.k];
    if img.iter().zip(&top).any(|(x, t)| *x != &ratio * t) {
        return Err(Error::Verification(format!("model iota does not land in iota at {z0}")));
    }
    Ok(&ratio * &factorial(it.k))
}

/// Boxed cocycle helper for heterogeneous lists.
pub fn boxed<C: Cocycle + 'static>(c: C) -> Box<dyn Cocycle> {
    Box::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_scalars_at_order_zero() {
        let a = JetCocycle { k: 0, n: 3 };
        let basis = solve_intertwiner(&a, &a, &SolverConfig::new(0, 1)).unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn non_split_dimension_one() {
        let a = JetCocycle { k: 1, n: 2 };
        let b = ModelCocycle::single(1, 1);
        let (_, basis) = minimal_intertwiners(&a, &b, 4, 1, SolveMethod::Modular).unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn non_isomorphic_models_have_no_intertwiner() {
        let a = JetCocycle { k: 1, n: 3 };
        let b = ModelCocycle::single(0, 1);
        let back = solve_intertwiner(&b, &a, &SolverConfig::new(4, 1));
        assert!(matches!(back, Err(Error::NoIntertwiner { .. })));
        // Towards the jets there is only the rank-one map through the symbol line.
        let forth = solve_intertwiner(&a, &b, &SolverConfig::new(4, 1)).unwrap();
        assert_eq!(forth.len(), 1);
        for z in 0..4 {
            assert!(crate::exactnum::determinant(&forth[0].eval(&gr(z))).is_zero());
        }
    }

    #[test]
    fn modular_and_exact_agree() {
        for (k, n) in [(1, 0), (2, -1), (2, 3)] {
            let a = JetCocycle { k, n };
            let b = thm1_model(k, n);
            let d = degree_cap(k, n).min(3);
            let cfg = SolverConfig::new(d, 9);
            let m = solve_intertwiner(&a, &b, &cfg).unwrap();
            let e = solve_intertwiner(&a, &b, &cfg.clone().with_method(SolveMethod::Exact)).unwrap();
            assert_eq!(m, e);
        }
    }

    #[test]
    fn thm1_small_cases() {
        let t0 = thm1_iso(0, 5).unwrap();
        assert!(t0.eval(&gr(3)).is_identity());
        let t = thm1_iso(1, 0).unwrap();
        assert_eq!(t.sigma.columns(0, 1), global_jet_poly(0, 1));
        assert_eq!(t.schur_dimension, 2);
        let t = thm1_iso(2, -1).unwrap();
        assert_eq!(t.model, ModelCocycle::single(-3, 2));
    }

    #[test]
    fn beta_examples() {
        let z0: GaussianRational = "1/2+i".parse().unwrap();
        let beta = splitting_beta(3, 0, &z0).unwrap();
        assert_eq!(beta, Matrix::from_int_rows(&[&[1, 0, 0, 0]]));
        let b = splitting_beta(2, 1, &gr(0)).unwrap();
        assert!(b.col(2).iter().all(GaussianRational::is_zero));
        let p = SymVector::new(vec!["2".parse().unwrap(), "-1/3i".parse().unwrap()]);
        let jet = crate::jets::poly_global_jet(&p, &z0, 4);
        assert_eq!(splitting_beta(4, 1, &z0).unwrap().mul_vec(jet.values()), p.coeffs());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(decompose_jet_tensor(0, 2, 0, -5), vec![Summand { twist: -3, degree: 0 }]);
        assert_eq!(decompose_jet_tensor(1, 2, 0, 1), vec![Summand { twist: 2, degree: 1 }]);
        for (k, a, l, b) in [(3, 1, 2, -2), (4, 7, 1, 0), (2, 0, 2, 0)] {
            let rank: usize = decompose_jet_tensor(k, a, l, b).iter().map(|s| s.degree + 1).sum();
            assert_eq!(rank, (k + 1) * (l + 1));
        }
    }
}
