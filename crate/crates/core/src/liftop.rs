//! Differential operators in a chart, their symbols, and the canonical lift of
//! a prescribed symbol to an operator.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::equiv::{check_points, is_split, model_iota, Check, IsoTable};
use crate::error::{usage, Error, Result};
use crate::exactnum::{
    exact_nullspace, factorial, falling, gr, inverse, GaussianRational, Matrix, Poly, RatFun, TruncSeries,
};
use crate::jets::{
    jet_cocycle, mat_series_inverse, parallel_transport_series, transformed_connection_series, transport_jet_matrix,
    FlatConnectionSpec, Gauge, MatSeries,
};
use crate::moebius::{MoebiusMap, Sampler};
use crate::rep::p0_matrix;

/// `D = sum_j c_j(z) d^j/dz^j` from `E (x) L^n` (rank `r`) to `F (x) L^n'` (rank `r'`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    order: usize,
    source_weight: i64,
    target_weight: i64,
    /// `coeffs[j]` is an `r' x r` matrix, stored row-major as `[row][col]`.
    coeffs: Vec<Vec<Vec<RatFun>>>,
}

impl DiffOperator {
    /// Trailing identically-zero coefficients are dropped so the order is tight.
    pub fn new(source_weight: i64, target_weight: i64, mut coeffs: Vec<Vec<Vec<RatFun>>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(usage("an operator needs at least one coefficient"));
        }
        let rows = coeffs[0].len();
        let cols = coeffs[0].first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 || coeffs.iter().any(|c| c.len() != rows || c.iter().any(|r| r.len() != cols)) {
            return Err(usage("operator coefficients must share one nonempty shape"));
        }
        while coeffs.len() > 1 && coeffs.last().unwrap().iter().flatten().all(RatFun::is_zero) {
            coeffs.pop();
        }
        Ok(Self { order: coeffs.len() - 1, source_weight, target_weight, coeffs })
    }

    /// Scalar operator from one rational function per order.
    pub fn scalar(source_weight: i64, target_weight: i64, coeffs: Vec<RatFun>) -> Result<Self> {
        Self::new(source_weight, target_weight, coeffs.into_iter().map(|c| vec![vec![c]]).collect())
    }

    /// `d^k/dz^k` on a line bundle of weight `n`.
    pub fn derivative(k: usize, n: i64) -> Self {
        let mut cs = vec![RatFun::zero(); k + 1];
        cs[k] = RatFun::one();
        Self::scalar(n, n - 2 * k as i64, cs).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn source_rank(&self) -> usize {
        self.coeffs[0][0].len()
    }

    pub fn target_rank(&self) -> usize {
        self.coeffs[0].len()
    }

    pub fn source_weight(&self) -> i64 {
        self.source_weight
    }

    pub fn target_weight(&self) -> i64 {
        self.target_weight
    }

    pub fn coeffs(&self) -> &[Vec<Vec<RatFun>>] {
        &self.coeffs
    }

    pub fn coeff_at(&self, j: usize, z0: &GaussianRational) -> Result<Matrix> {
        let rows = self.coeffs[j]
            .iter()
            .map(|row| row.iter().map(|c| c.eval(z0)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows))
    }
}

/// `sum_j c_j s^(j)` as series of order `m`; `s` needs order at least `k + m`.
pub fn apply(d: &DiffOperator, s: &[TruncSeries], m: usize) -> Result<Vec<TruncSeries>> {
    let k = d.order;
    if s.len() != d.source_rank() {
        return Err(usage("section rank differs from operator source rank"));
    }
    let base = s[0].base().clone();
    if s.iter().any(|c| c.order() < k + m || *c.base() != base) {
        return Err(usage(format!("apply needs series of order at least {} at one base point", k + m)));
    }
    let mut out = vec![TruncSeries::zero(base.clone(), m); d.target_rank()];
    let mut ders: Vec<TruncSeries> = s.to_vec();
    for j in 0..=k {
        for (a, o) in out.iter_mut().enumerate() {
            for (b, der) in ders.iter().enumerate() {
                let c = d.coeffs[j][a][b].to_series(&base, m)?;
                *o = o.add(&c.mul(&der.truncate(m)?)?)?;
            }
        }
        ders = ders.iter().map(TruncSeries::derivative).collect();
    }
    Ok(out)
}

/// Pointwise functional on jets: block `j` of the `r' x (k+1) r` matrix is `c_j(z0)`.
pub fn as_jet_functional(d: &DiffOperator, z0: &GaussianRational) -> Result<Matrix> {
    let (rt, rs) = (d.target_rank(), d.source_rank());
    let mut f = Matrix::zeros(rt, (d.order + 1) * rs);
    for j in 0..=d.order {
        f.set_block(0, j * rs, &d.coeff_at(j, z0)?);
    }
    Ok(f)
}

/// The top coefficient, a section of `Hom(E, F) (x) L^weight` with
/// `weight = n' - n + 2k` (using `TX = L^2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolSection {
    pub weight: i64,
    pub entries: Vec<Vec<RatFun>>,
}

pub fn symbol(d: &DiffOperator) -> SymbolSection {
    SymbolSection { weight: d.target_weight - d.source_weight + 2 * d.order as i64, entries: d.coeffs[d.order].clone() }
}

/// Jet functional of `d1 . d2` at `z0`, computed by applying both to the
/// basis sections `(z - z0)^j / j! e_b`.
pub fn compose_functional(d1: &DiffOperator, d2: &DiffOperator, z0: &GaussianRational) -> Result<Matrix> {
    let k = d1.order + d2.order;
    let r = d2.source_rank();
    let mut f = Matrix::zeros(d1.target_rank(), (k + 1) * r);
    for j in 0..=k {
        for b in 0..r {
            let s: Vec<TruncSeries> = (0..r)
                .map(|e| {
                    if e == b {
                        TruncSeries::monomial(z0.clone(), j, k).scale(&factorial(j).inv().unwrap())
                    } else {
                        TruncSeries::zero(z0.clone(), k)
                    }
                })
                .collect();
            let mid = apply(d2, &s, d1.order)?;
            let out = apply(d1, &mid, 0)?;
            for (a, o) in out.iter().enumerate() {
                f[(a, j * r + b)] = o.coeff(0).clone();
            }
        }
    }
    Ok(f)
}

/// Constant relating the jet-side `iota` to the model one under the canonical
/// isomorphism: `(n)_k` off the split range, `(-1)^(k-n-1) k!` on it.
pub fn symbol_model_constant(k: usize, n: i64) -> GaussianRational {
    if is_split(k, n) {
        let sign = if (k as i64 - n - 1) % 2 == 0 { 1 } else { -1 };
        &factorial(k) * &gr(sign)
    } else {
        falling(n, k)
    }
}

/// Shape of the symbol map in model coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolBranch {
    /// `n < 0` or `n >= k`: restriction to the kernel line of the quotient map.
    Irreducible,
    /// `k - 1 > n >= 0`: restriction of the second summand.
    SplitRestriction,
    /// `k - 1 = n`: projection onto the second summand.
    SplitProjection,
}

pub fn symbol_branch(k: usize, n: i64) -> SymbolBranch {
    if !is_split(k, n) {
        SymbolBranch::Irreducible
    } else if k as i64 - 1 == n {
        SymbolBranch::SplitProjection
    } else {
        SymbolBranch::SplitRestriction
    }
}

/// For each basis operator `d^j`, the model symbol `c . Sigma(z0) . iota_model`
/// must equal `symbol_model_constant(k, n)` times `c_k`.
pub fn verify_symbol_model(table: &IsoTable, k: usize, n: i64, seed: u64) -> Result<Check> {
    let it = table.get(k, n)?;
    let eps = symbol_model_constant(k, n);
    for z0 in check_points(seed, 6) {
        let img = it.eval(&z0).mul_vec(&model_iota(&it.model, &z0));
        for j in 0..=k {
            let d = DiffOperator::derivative(j, n);
            let c = as_jet_functional(&d, &z0)?;
            let mut padded = vec![GaussianRational::zero(); k + 1];
            padded[..=j].clone_from_slice(c.row(0));
            let model_symbol: GaussianRational = padded.iter().zip(&img).map(|(a, b)| a * b).sum();
            let top = if j == k { symbol(&d).entries[0][0].eval(&z0)? } else { GaussianRational::zero() };
            if model_symbol != &eps * &top {
                return Ok(Check::Fail {
                    z0,
                    detail: format!("operator d^{j}: model symbol {model_symbol}, expected {}", &eps * &top),
                });
            }
        }
        if symbol_branch(k, n) == SymbolBranch::SplitProjection {
            // The symbol line is the whole second summand.
            if it.model.summands()[1].degree != 0 {
                return Ok(Check::Fail { z0, detail: String::from("second summand is not a line") });
            }
        }
    }
    Ok(Check::Pass)
}

/// Section hypothesis for the lift: `n < 0` (with `l` outside `[0, k)`), or `n, l >= k`.
pub fn lift_hypothesis(k: usize, n: i64, l: i64) -> bool {
    let k = k as i64;
    let l_ok = l < 0 || l >= k;
    (n < 0 || n >= k) && l_ok
}

/// Raw derivatives of `theta` at `z0` as a list of `r x r` matrices.
pub fn matrix_jets(entries: &[Vec<Poly>], z0: &GaussianRational, k: usize) -> Vec<Matrix> {
    let r = entries.len();
    let series: Vec<Vec<TruncSeries>> =
        entries.iter().map(|row| row.iter().map(|p| p.to_series(z0, k)).collect()).collect();
    (0..=k).map(|j| Matrix::from_fn(r, r, |a, b| series[a][b].derivative_at_base(j))).collect()
}

fn series_from_jets(jets: &[Matrix], z0: &GaussianRational) -> MatSeries {
    MatSeries::new(z0.clone(), jets.iter().enumerate().map(|(j, m)| m.scale(&factorial(j).inv().unwrap())).collect())
}

/// Jet functional of the unnormalized composite `(Id (x) p0) . T0` at `z0`,
/// from the raw jets of `theta` and the connection's series at `z0`.
pub fn lift_composite_at(
    table: &IsoTable,
    k: usize,
    n: i64,
    l: i64,
    theta_jets: &[Matrix],
    connection: &MatSeries,
) -> Result<Matrix> {
    let z0 = connection.base().clone();
    let r = connection.rank();
    let p = parallel_transport_series(connection, k);
    let m_p_inv = inverse(&transport_jet_matrix(&p, k)).expect("unipotent");
    let p_inv = mat_series_inverse(&p)?;
    // Flat-frame coefficients of theta: P^{-1} theta P.
    let theta_flat = p_inv.mul(&series_from_jets(theta_jets, &z0)).mul(&p);
    let sig_n_inv = table.get(k, n)?.eval_inverse(&z0)?;
    let sig_l_inv = table.get(k, l)?.eval_inverse(&z0)?;
    let p0 = p0_matrix(k);
    let mut f = Matrix::zeros(r, (k + 1) * r);
    for a in 0..r {
        for b in 0..r {
            let th_jet: Vec<GaussianRational> =
                (0..=k).map(|j| theta_flat.derivative_at_base(j)[(a, b)].clone()).collect();
            let th_model = sig_l_inv.mul_vec(&th_jet);
            // p0(S, Theta) = S^T P0 Theta, with S = Sigma_n^{-1} (jet of f_b).
            let w = p0.mul_vec(&th_model);
            let row = Matrix::row_vector(w).mul(&sig_n_inv);
            for j in 0..=k {
                // f_b^(j) = row (j r + b) of M_P^{-1} applied to the jet of s.
                let sel = m_p_inv.row(j * r + b);
                for (c, x) in sel.iter().enumerate() {
                    if !x.is_zero() {
                        f[(a, c)] += &(&row[(0, j)] * x);
                    }
                }
            }
        }
    }
    Ok(f)
}

/// Normalized lift functional: the composite times `(n)_k`, whose symbol is `theta(z0)`.
pub fn lift_functional_at(
    table: &IsoTable,
    k: usize,
    n: i64,
    l: i64,
    theta_jets: &[Matrix],
    connection: &MatSeries,
) -> Result<Matrix> {
    Ok(lift_composite_at(table, k, n, l, theta_jets, connection)?.scale(&falling(n, k)))
}

fn theta_degree(theta0: &[Vec<Poly>]) -> usize {
    theta0.iter().flatten().filter_map(Poly::degree).max().unwrap_or(0)
}

fn check_theta(theta0: &[Vec<Poly>], spec: &FlatConnectionSpec) -> Result<()> {
    let r = spec.rank();
    if theta0.len() != r || theta0.iter().any(|row| row.len() != r) {
        return Err(usage("theta0 must be an r x r matrix matching the connection rank"));
    }
    Ok(())
}

fn interpolate_operator(
    k: usize,
    r: usize,
    n: i64,
    target: i64,
    degree: usize,
    seed: u64,
    eval: impl Fn(&GaussianRational) -> Result<Matrix>,
) -> Result<DiffOperator> {
    let mut deg = degree;
    loop {
        let xs: Vec<GaussianRational> = (0..=deg as i64).map(gr).collect();
        let vals: Vec<Matrix> = xs.iter().map(&eval).collect::<Result<_>>()?;
        let polys: Vec<Vec<Vec<Poly>>> = (0..=k)
            .map(|j| {
                (0..r)
                    .map(|a| {
                        (0..r)
                            .map(|b| {
                                let ys: Vec<GaussianRational> =
                                    vals.iter().map(|m| m[(a, j * r + b)].clone()).collect();
                                Poly::interpolate(&xs, &ys)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let fresh = check_points(seed ^ 0x11f7, 3);
        let mut ok = true;
        for z in &fresh {
            let m = eval(z)?;
            for (j, cj) in polys.iter().enumerate() {
                for a in 0..r {
                    for b in 0..r {
                        if cj[a][b].eval(z) != m[(a, j * r + b)] {
                            ok = false;
                        }
                    }
                }
            }
        }
        if ok {
            let coeffs = polys
                .into_iter()
                .map(|cj| cj.into_iter().map(|row| row.into_iter().map(RatFun::from_poly).collect()).collect())
                .collect();
            return DiffOperator::new(n, target, coeffs);
        }
        if deg > 8 * (degree + 1) {
            return Err(Error::Verification(String::from("operator coefficients did not interpolate")));
        }
        deg *= 2;
    }
}

fn lift_with(
    table: &IsoTable,
    theta0: &[Vec<Poly>],
    k: usize,
    n: i64,
    l: i64,
    spec: &FlatConnectionSpec,
    normalized: bool,
) -> Result<DiffOperator> {
    if !lift_hypothesis(k, n, l) {
        return Err(usage(format!("lift needs n < 0 or n, l >= k (with l outside [0, k)); got k={k} n={n} l={l}")));
    }
    check_theta(theta0, spec)?;
    let degree = theta_degree(theta0) + 2 * k + 3 * k * spec.max_degree() + 2;
    let eval = |z: &GaussianRational| {
        let jets = matrix_jets(theta0, z, k);
        let conn = spec.series(z, k);
        if normalized {
            lift_functional_at(table, k, n, l, &jets, &conn)
        } else {
            lift_composite_at(table, k, n, l, &jets, &conn)
        }
    };
    interpolate_operator(k, spec.rank(), n, l + n - 2 * k as i64, degree, 0x1f7, eval)
}

/// The canonical order-`k` operator `E (x) L^n -> E (x) L^(l+n-2k)` with symbol `theta0`.
pub fn lift_symbol(
    table: &IsoTable,
    theta0: &[Vec<Poly>],
    k: usize,
    n: i64,
    l: i64,
    spec: &FlatConnectionSpec,
) -> Result<DiffOperator> {
    lift_with(table, theta0, k, n, l, spec, true)
}

/// The composite `(Id (x) p0) . T0` before normalization; its symbol is `theta0 / (n)_k`.
pub fn lift_composite(
    table: &IsoTable,
    theta0: &[Vec<Poly>],
    k: usize,
    n: i64,
    l: i64,
    spec: &FlatConnectionSpec,
) -> Result<DiffOperator> {
    lift_with(table, theta0, k, n, l, spec, false)
}

/// Chart naturality of the lift under `g` (trivial gauge): the functional built
/// from first-chart data at `z0`, composed with the source transition, equals
/// `mu_(l+n-2k)(g, z0)` times the functional built from the transformed data at `g z0`.
#[allow(clippy::too_many_arguments)]
pub fn check_lift_naturality(
    table: &IsoTable,
    theta0: &[Vec<Poly>],
    k: usize,
    n: i64,
    l: i64,
    spec: &FlatConnectionSpec,
    g: &MoebiusMap,
    z0: &GaussianRational,
) -> Result<bool> {
    let r = spec.rank();
    let w0 = g.act(z0)?;
    let f1 = lift_functional_at(table, k, n, l, &matrix_jets(theta0, z0, k), &spec.series(z0, k))?;
    // theta~(w) = mu_l(g^{-1}, w) theta(g^{-1} w)
    let ginv = g.inverse();
    let h = ginv.act_series(&w0, k)?;
    let mu = ginv.automorphy_series(l, &w0, k)?;
    let theta_series: Vec<Vec<TruncSeries>> = theta0
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| crate::exactnum::series_compose(&p.to_series(z0, k), &h)?.mul(&mu))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let theta_t = MatSeries::from_entries(&theta_series);
    let jets_t: Vec<Matrix> = (0..=k).map(|j| theta_t.derivative_at_base(j)).collect();
    let conn_t = transformed_connection_series(spec, g, z0, &Gauge::identity(r), k)?;
    let f2 = lift_functional_at(table, k, n, l, &jets_t, &conn_t)?;
    let t = crate::jets::twisted_jet_cocycle(spec, k, n, g, z0, &Gauge::identity(r))?;
    let mu_t = g.automorphy(l + n - 2 * k as i64, z0)?;
    Ok(f1.mul(&t) == f2.scale(&mu_t))
}

/// Result of the search for a global first-order operator `L^n -> L^(n-2)` with symbol 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub n: i64,
    pub feasible: bool,
    /// Chart-1 coefficients `(c0, c1)` and chart-2 coefficients `(c0~, c1~)` when feasible.
    pub witness: Option<[Poly; 4]>,
    pub degree_bound: usize,
}

/// Searches for polynomial `c0, c1` (chart `z`) and `c0~, c1~` (chart `w = -1/z`)
/// with `c1 = 1` such that both charts describe the same operator.
pub fn nonlift_probe(n: i64) -> Result<ProbeResult> {
    const B: usize = 3;
    let d1 = B + 1;
    let cols = 4 * d1 + 1;
    let t_col = 4 * d1;
    let g = MoebiusMap::inversion();
    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    // c1(z) - t = 0 as a polynomial identity.
    for e in 0..d1 {
        let mut row = vec![GaussianRational::zero(); cols];
        row[d1 + e] = gr(1);
        if e == 0 {
            row[t_col] = gr(-1);
        }
        rows.push(row);
    }
    let samples = 2 * B + 2 * n.unsigned_abs() as usize + 8;
    let mut s = Sampler::with_stream(0x9e0b, 5);
    for _ in 0..samples {
        let z0 = s.base_point(6, false, &[&g]);
        if z0.is_zero() {
            continue;
        }
        let w0 = g.act(&z0)?;
        let t = jet_cocycle(1, n, &g, &z0)?;
        let mu = g.automorphy(n - 2, &z0)?;
        // (c0, c1)(z0) T(g, z0) - mu (c0~, c1~)(w0) = 0, one equation per jet slot.
        for col in 0..2 {
            let mut row = vec![GaussianRational::zero(); cols];
            for slot in 0..2 {
                let tc = &t[(slot, col)];
                let mut zp = gr(1);
                for e in 0..d1 {
                    row[slot * d1 + e] += &(tc * &zp);
                    zp = &zp * &z0;
                }
            }
            let mut wp = gr(1);
            for e in 0..d1 {
                row[(2 + col) * d1 + e] -= &(&mu * &wp);
                wp = &wp * &w0;
            }
            rows.push(row);
        }
    }
    let ns = exact_nullspace(&Matrix::from_rows(rows));
    let Some(v) = ns.iter().find(|v| !v[t_col].is_zero()) else {
        return Ok(ProbeResult { n, feasible: false, witness: None, degree_bound: B });
    };
    let inv_t = v[t_col].inv().unwrap();
    let poly = |slot: usize| Poly::new(v[slot * d1..(slot + 1) * d1].iter().map(|x| x * &inv_t).collect());
    Ok(ProbeResult { n, feasible: true, witness: Some([poly(0), poly(1), poly(2), poly(3)]), degree_bound: B })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn series(base: i64, cs: &[i64]) -> TruncSeries {
        TruncSeries::new(gr(base), cs.iter().map(|&c| gr(c)).collect())
    }

    #[test]
    fn apply_examples() {
        let s = series(2, &[3, 1, 4, 1]);
        let id = DiffOperator::scalar(0, 0, vec![RatFun::one()]).unwrap();
        assert_eq!(apply(&id, core::slice::from_ref(&s), 3).unwrap()[0], s);
        let sq = TruncSeries::monomial(gr(2), 2, 3);
        let d = DiffOperator::derivative(1, 0);
        assert_eq!(apply(&d, &[sq], 2).unwrap()[0], series(2, &[0, 2, 0]));
        let mult_z = DiffOperator::scalar(0, 0, vec![RatFun::from_poly(Poly::z())]).unwrap();
        let one = TruncSeries::one(gr(2), 2);
        assert_eq!(apply(&mult_z, &[one], 2).unwrap()[0], TruncSeries::identity(gr(2), 2));
    }

    #[test]
    fn apply_at_a_pole_is_singular() {
        let d = DiffOperator::scalar(0, 0, vec![RatFun::new(Poly::one(), Poly::z())]).unwrap();
        let r = apply(&d, &[TruncSeries::one(gr(0), 1)], 1);
        assert!(matches!(r, Err(Error::Singularity(_))));
    }

    #[test]
    fn jet_functional_examples() {
        let z0 = q("1/2");
        let f = as_jet_functional(&DiffOperator::derivative(3, 0), &z0).unwrap();
        assert_eq!(f.row(0), &[gr(0), gr(0), gr(0), gr(1)]);
        let c0 = RatFun::from_poly(Poly::from_ints(&[1, 1]));
        let f = as_jet_functional(&DiffOperator::scalar(0, 0, vec![c0]).unwrap(), &z0).unwrap();
        assert_eq!(f.row(0), &[q("3/2")]);
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(symbol(&DiffOperator::derivative(4, 1)).entries[0][0], RatFun::one());
        let c = RatFun::from_poly(Poly::from_ints(&[2, 0, 1]));
        assert_eq!(symbol(&DiffOperator::scalar(0, 0, vec![c.clone()]).unwrap()).entries[0][0], c);
        let d = DiffOperator::scalar(0, -2, vec![RatFun::constant(gr(5)), RatFun::from_poly(Poly::z())]).unwrap();
        assert_eq!(symbol(&d).entries[0][0], RatFun::from_poly(Poly::z()));
        let demoted = DiffOperator::scalar(0, 0, vec![RatFun::one(), RatFun::zero()]).unwrap();
        assert_eq!(demoted.order(), 0);
    }

    #[test]
    fn branches() {
        assert_eq!(symbol_branch(1, 3), SymbolBranch::Irreducible);
        assert_eq!(symbol_branch(2, 0), SymbolBranch::SplitRestriction);
        assert_eq!(symbol_branch(1, 0), SymbolBranch::SplitProjection);
        assert!(lift_hypothesis(2, -1, 5));
        assert!(!lift_hypothesis(2, 1, 3));
        assert!(!lift_hypothesis(2, 3, 1));
    }

    #[test]
    fn probe_examples() {
        let p = nonlift_probe(0).unwrap();
        assert!(p.feasible);
        let [c0, c1, c0t, c1t] = p.witness.unwrap();
        assert!(c0.is_zero() && c0t.is_zero());
        assert_eq!((c1, c1t), (Poly::one(), Poly::one()));
        assert!(!nonlift_probe(1).unwrap().feasible);
        assert!(!nonlift_probe(-2).unwrap().feasible);
    }
}
