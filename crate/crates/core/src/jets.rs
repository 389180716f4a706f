//! Jets of sections in a chart and their transition matrices.
//!
//! A jet of order `k` and rank `r` at `z0` stores `(k+1)` blocks of `r` raw
//! derivatives; entry `j r + e` is `s_e^(j)(z0)`. Transition matrices are in
//! pull-back orientation: `T(g, z0)` takes the jet at `g z0` of the transformed
//! section to the jet at `z0` of `s(z) = mu_n(g, z) G(z) s~(g z)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{usage, Error, Result};
use crate::exactnum::{
    binomial, factorial, gr, inverse, series_compose, GaussianRational, Matrix, Poly, RatFun, TruncSeries,
};
use crate::moebius::MoebiusMap;
use crate::rep::SymVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetVector {
    order: usize,
    rank: usize,
    base: GaussianRational,
    values: Vec<GaussianRational>,
}

impl JetVector {
    pub fn new(order: usize, rank: usize, base: GaussianRational, values: Vec<GaussianRational>) -> Result<Self> {
        if values.len() != (order + 1) * rank {
            return Err(usage(format!(
                "jet of order {order} and rank {rank} needs {} values, got {}",
                (order + 1) * rank,
                values.len()
            )));
        }
        Ok(Self { order, rank, base, values })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> &GaussianRational {
        &self.base
    }

    pub fn values(&self) -> &[GaussianRational] {
        &self.values
    }

    /// Raw derivative of component `e` of order `j`.
    pub fn get(&self, j: usize, e: usize) -> &GaussianRational {
        &self.values[j * self.rank + e]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GaussianRational::is_zero)
    }
}

/// Raw derivatives `s^(j)(z0) = j! * coeff_j` for `j = 0..=k`.
pub fn jet_of_series(s: &TruncSeries, k: usize) -> Result<JetVector> {
    jet_of_series_vec(core::slice::from_ref(s), k)
}

/// Jet of a rank-`r` section given by one series per component.
pub fn jet_of_series_vec(components: &[TruncSeries], k: usize) -> Result<JetVector> {
    let first = components.first().ok_or_else(|| usage("a section needs at least one component"))?;
    let base = first.base().clone();
    if components.iter().any(|s| s.order() < k || *s.base() != base) {
        return Err(usage(format!("components must share a base point and have order >= {k}")));
    }
    let r = components.len();
    let mut values = Vec::with_capacity((k + 1) * r);
    for j in 0..=k {
        for s in components {
            values.push(s.derivative_at_base(j));
        }
    }
    JetVector::new(k, r, base, values)
}

/// Taylor series at the jet's base point of component `e` (order `k`).
pub fn series_of_jet(jet: &JetVector, e: usize) -> TruncSeries {
    let coeffs = (0..=jet.order).map(|j| jet.get(j, e) / &factorial(j)).collect();
    TruncSeries::new(jet.base.clone(), coeffs)
}

/// Transition matrix of `J^k(L^n)`; lower triangular with diagonal `mu_n(g, z0) g'(z0)^j`.
pub fn jet_cocycle(k: usize, n: i64, g: &MoebiusMap, z0: &GaussianRational) -> Result<Matrix> {
    twisted_jet_cocycle_with(1, k, n, g, z0, &Gauge::identity(1))
}

/// Drops the top derivative block.
pub fn forgetful(jet: &JetVector) -> Result<JetVector> {
    if jet.order == 0 {
        return Err(usage("forgetful map needs order at least 1"));
    }
    let keep = jet.order * jet.rank;
    JetVector::new(jet.order - 1, jet.rank, jet.base.clone(), jet.values[..keep].to_vec())
}

/// Matrix of the truncation `J^k -> J^(k-1)` for rank `r`.
pub fn forgetful_matrix(k: usize, r: usize) -> Matrix {
    assert!(k >= 1, "forgetful map needs order at least 1");
    Matrix::from_fn(k * r, (k + 1) * r, |i, j| if i == j { gr(1) } else { gr(0) })
}

/// The jet of `(z - z0)^k value`: `k! value` in the top block, zeros below.
pub fn iota(k: usize, z0: &GaussianRational, value: &[GaussianRational]) -> JetVector {
    let r = value.len();
    let mut values = vec![GaussianRational::zero(); (k + 1) * r];
    let kf = factorial(k);
    for (e, v) in value.iter().enumerate() {
        values[k * r + e] = &kf * v;
    }
    JetVector { order: k, rank: r, base: z0.clone(), values }
}

/// Matrix of `iota` for rank `r`, of shape `((k+1) r) x r`.
pub fn iota_matrix(k: usize, r: usize) -> Matrix {
    let kf = factorial(k);
    Matrix::from_fn((k + 1) * r, r, |i, e| if i == k * r + e { kf.clone() } else { gr(0) })
}

/// Power series with matrix coefficients, `sum_j coeffs[j] (z - base)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatSeries {
    base: GaussianRational,
    coeffs: Vec<Matrix>,
}

impl MatSeries {
    pub fn new(base: GaussianRational, coeffs: Vec<Matrix>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        Self { base, coeffs }
    }

    pub fn base(&self) -> &GaussianRational {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs[0].rows()
    }

    /// Assembles a matrix series from entrywise scalar series.
    pub fn from_entries(entries: &[Vec<TruncSeries>]) -> Self {
        let rows = entries.len();
        let cols = entries[0].len();
        let base = entries[0][0].base().clone();
        let order = entries[0][0].order();
        let coeffs = (0..=order).map(|j| Matrix::from_fn(rows, cols, |a, b| entries[a][b].coeff(j).clone())).collect();
        Self { base, coeffs }
    }

    pub fn entry(&self, a: usize, b: usize) -> TruncSeries {
        TruncSeries::new(self.base.clone(), self.coeffs.iter().map(|m| m[(a, b)].clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.base, o.base, "base mismatch");
        let k = self.order().min(o.order());
        let coeffs = (0..=k)
            .map(|j| {
                let mut acc = Matrix::zeros(self.coeffs[0].rows(), o.coeffs[0].cols());
                for i in 0..=j {
                    acc = acc.add(&self.coeffs[i].mul(&o.coeffs[j - i]));
                }
                acc
            })
            .collect();
        Self { base: self.base.clone(), coeffs }
    }

    /// Raw derivative `M^(j)(base)`.
    pub fn derivative_at_base(&self, j: usize) -> Matrix {
        self.coeffs[j].scale(&factorial(j))
    }

    /// Entrywise composition with a scalar series whose constant term is `base`.
    pub fn compose(&self, inner: &TruncSeries) -> Result<Self> {
        let (r, c) = (self.coeffs[0].rows(), self.coeffs[0].cols());
        let entries: Vec<Vec<TruncSeries>> = (0..r)
            .map(|a| (0..c).map(|b| series_compose(&self.entry(a, b), inner)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Ok(Self::from_entries(&entries))
    }
}

/// Trivial rank-`r` bundle with connection `d + A(z) dz`, `A` polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatConnectionSpec {
    rank: usize,
    a: Vec<Vec<Poly>>,
}

impl FlatConnectionSpec {
    pub fn new(a: Vec<Vec<Poly>>) -> Result<Self> {
        let rank = a.len();
        if rank == 0 || a.iter().any(|row| row.len() != rank) {
            return Err(usage("connection matrix must be square and nonempty"));
        }
        Ok(Self { rank, a })
    }

    pub fn trivial(rank: usize) -> Self {
        Self { rank, a: vec![vec![Poly::zero(); rank]; rank] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.a
    }

    pub fn max_degree(&self) -> usize {
        self.a.iter().flatten().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, z: &GaussianRational) -> Matrix {
        Matrix::from_fn(self.rank, self.rank, |i, j| self.a[i][j].eval(z))
    }

    pub fn series(&self, z0: &GaussianRational, order: usize) -> MatSeries {
        let entries: Vec<Vec<TruncSeries>> =
            self.a.iter().map(|row| row.iter().map(|p| p.to_series(z0, order)).collect()).collect();
        MatSeries::from_entries(&entries)
    }

    /// Induced connection on `End(E)`, `X -> [A, X]`, acting on row-major `vec(X)`.
    pub fn endomorphism(&self) -> Self {
        let r = self.rank;
        let mut a = vec![vec![Poly::zero(); r * r]; r * r];
        for i in 0..r {
            for j in 0..r {
                for t in 0..r {
                    // ([A, X])_{ij} = sum_t A_it X_tj - X_it A_tj
                    let row = i * r + j;
                    a[row][t * r + j] = &a[row][t * r + j] + &self.a[i][t];
                    a[row][i * r + t] = &a[row][i * r + t] - &self.a[t][j];
                }
            }
        }
        Self { rank: r * r, a }
    }
}

/// Order-`k` truncation of the solution of `P' = -A P`, `P(base) = I`,
/// for a connection given by its series at the base point.
pub fn parallel_transport_series(a: &MatSeries, k: usize) -> MatSeries {
    let r = a.rank();
    let mut p: Vec<Matrix> = vec![Matrix::identity(r)];
    for j in 0..k {
        let mut acc = Matrix::zeros(r, r);
        for i in 0..=j.min(a.order()) {
            acc = acc.add(&a.coeffs[i].mul(&p[j - i]));
        }
        p.push(acc.scale(&gr(-(j as i64) - 1).inv().unwrap()));
    }
    MatSeries::new(a.base.clone(), p)
}

pub fn parallel_transport_jet(spec: &FlatConnectionSpec, z0: &GaussianRational, k: usize) -> MatSeries {
    parallel_transport_series(&spec.series(z0, k), k)
}

/// Jet of `P(z) f(z)` in terms of the jet of `f`: block `(j, i)` is `C(j, i) P^(j-i)(z0)`.
pub fn transport_jet_matrix(p: &MatSeries, k: usize) -> Matrix {
    let r = p.rank();
    let mut m = Matrix::zeros((k + 1) * r, (k + 1) * r);
    for j in 0..=k {
        for i in 0..=j {
            let block = p.derivative_at_base(j - i).scale(&binomial(j, i));
            m.set_block(j * r, i * r, &block);
        }
    }
    m
}

/// Chart-change rule for the flat bundle: `s(z) = G(z) s~(w)` on top of the
/// line-bundle factor. `G` is an invertible matrix of rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    g: Vec<Vec<RatFun>>,
}

impl Gauge {
    pub fn new(g: Vec<Vec<RatFun>>) -> Result<Self> {
        let r = g.len();
        if r == 0 || g.iter().any(|row| row.len() != r) {
            return Err(usage("gauge must be a square nonempty matrix"));
        }
        Ok(Self { g })
    }

    pub fn identity(r: usize) -> Self {
        Self {
            g: (0..r).map(|i| (0..r).map(|j| if i == j { RatFun::one() } else { RatFun::zero() }).collect()).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    pub fn eval(&self, z: &GaussianRational) -> Result<Matrix> {
        let r = self.rank();
        let rows = (0..r)
            .map(|i| (0..r).map(|j| self.g[i][j].eval(z)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows))
    }

    pub fn series(&self, z0: &GaussianRational, order: usize) -> Result<MatSeries> {
        let entries = self
            .g
            .iter()
            .map(|row| row.iter().map(|f| f.to_series(z0, order)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(MatSeries::from_entries(&entries))
    }
}

fn twisted_jet_cocycle_with(
    r: usize,
    k: usize,
    n: i64,
    g: &MoebiusMap,
    z0: &GaussianRational,
    gauge: &Gauge,
) -> Result<Matrix> {
    if gauge.rank() != r {
        return Err(usage("gauge rank differs from bundle rank"));
    }
    let w = g.act_series(z0, k)?;
    let w0 = w.coeff(0).clone();
    let mu = g.automorphy_series(n, z0, k)?;
    let gs = gauge.series(z0, k)?;
    let mut t = Matrix::zeros((k + 1) * r, (k + 1) * r);
    for j in 0..=k {
        // s~ = (w - w0)^j / j! in component e, pulled back and weighted.
        let basis = TruncSeries::monomial(w0.clone(), j, k).scale(&factorial(j).inv().unwrap());
        let pulled = series_compose(&basis, &w)?.mul(&mu)?;
        for e in 0..r {
            for a in 0..r {
                let comp = gs.entry(a, e).mul(&pulled)?;
                for i in 0..=k {
                    t[(i * r + a, j * r + e)] = comp.derivative_at_base(i);
                }
            }
        }
    }
    Ok(t)
}

/// Transition matrix of `J^k(E (x) L^n)` for sections related by
/// `s(z) = mu_n(g, z) G(z) s~(g z)`. The connection does not enter the
/// transition itself; it is carried for the parallel-transport model.
pub fn twisted_jet_cocycle(
    spec: &FlatConnectionSpec,
    k: usize,
    n: i64,
    g: &MoebiusMap,
    z0: &GaussianRational,
    gauge: &Gauge,
) -> Result<Matrix> {
    twisted_jet_cocycle_with(spec.rank(), k, n, g, z0, gauge)
}

/// Series at `g z0` of the connection matrix in the second chart:
/// `A~(w) = G^{-1} (G' + A G) / g'(z)` with `z = g^{-1}(w)`.
pub fn transformed_connection_series(
    spec: &FlatConnectionSpec,
    g: &MoebiusMap,
    z0: &GaussianRational,
    gauge: &Gauge,
    order: usize,
) -> Result<MatSeries> {
    let r = spec.rank();
    let k1 = order + 1;
    let gz = gauge.series(z0, k1)?;
    let g_prime = derivative_series(&gz);
    let a = spec.series(z0, order);
    let gz_o = truncate_mat(&gz, order);
    let g_inv = mat_series_inverse(&gz_o)?;
    let inner = MatSeries::new(z0.clone(), add_coeffs(&g_prime, &a.mul(&gz_o)));
    // 1 / g'(z) = (c z + d)^2
    let inv_deriv = g.automorphy_series(2, z0, order)?;
    let scalar = MatSeries::new(z0.clone(), inv_deriv.coeffs().iter().map(|c| Matrix::identity(r).scale(c)).collect());
    let b = g_inv.mul(&inner).mul(&scalar);
    let w0 = g.act(z0)?;
    let ginv_series = g.inverse().act_series(&w0, order)?;
    b.compose(&ginv_series)
}

fn derivative_series(s: &MatSeries) -> MatSeries {
    let coeffs = (1..s.coeffs.len()).map(|j| s.coeffs[j].scale(&gr(j as i64))).collect();
    MatSeries::new(s.base.clone(), coeffs)
}

fn truncate_mat(s: &MatSeries, order: usize) -> MatSeries {
    MatSeries::new(s.base.clone(), s.coeffs[..=order].to_vec())
}

fn add_coeffs(a: &MatSeries, b: &MatSeries) -> Vec<Matrix> {
    a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect()
}

/// Inverse of a matrix series with invertible constant term.
pub fn mat_series_inverse(s: &MatSeries) -> Result<MatSeries> {
    let c0_inv =
        inverse(&s.coeffs[0]).ok_or_else(|| Error::Singularity(format!("matrix series singular at {}", s.base)))?;
    let mut out = vec![c0_inv.clone()];
    for j in 1..s.coeffs.len() {
        let mut acc = Matrix::zeros(c0_inv.rows(), c0_inv.cols());
        for i in 1..=j {
            acc = acc.add(&s.coeffs[i].mul(&out[j - i]));
        }
        out.push(c0_inv.mul(&acc).scale(&gr(-1)));
    }
    Ok(MatSeries::new(s.base.clone(), out))
}

/// Parallel-transport model of the twisted transition:
/// `M_P(z0) (T_n(g, z0) (x) G(z0)) M_P~(g z0)^{-1}`.
pub fn twisted_cocycle_model(
    spec: &FlatConnectionSpec,
    k: usize,
    n: i64,
    g: &MoebiusMap,
    z0: &GaussianRational,
    gauge: &Gauge,
) -> Result<Matrix> {
    let p = parallel_transport_jet(spec, z0, k);
    let a_tilde = transformed_connection_series(spec, g, z0, gauge, k)?;
    let p_tilde = parallel_transport_series(&a_tilde, k);
    let m_p = transport_jet_matrix(&p, k);
    let m_pt_inv = inverse(&transport_jet_matrix(&p_tilde, k)).expect("transport jet matrix is unipotent");
    let t = jet_cocycle(k, n, g, z0)?;
    Ok(m_p.mul(&t.kron(&gauge.eval(z0)?)).mul(&m_pt_inv))
}

/// Chart polynomial `sum_j P_j z^(n-j)` attached to a degree-`n` vector.
pub fn section_polynomial(p: &SymVector) -> Poly {
    let n = p.degree();
    Poly::new((0..=n).map(|i| p.coeffs()[n - i].clone()).collect())
}

/// `k`-jet at `z0` of the global section attached to `P`.
pub fn poly_global_jet(p: &SymVector, z0: &GaussianRational, k: usize) -> JetVector {
    let s = section_polynomial(p).to_series(z0, k);
    jet_of_series(&s, k).expect("order matches")
}

/// Matrix `Sym^n -> J^k(L^n)` at `z0` whose column `j` is the jet of `z^(n-j)`.
pub fn global_jet_matrix(n: usize, z0: &GaussianRational, k: usize) -> Matrix {
    let mut m = Matrix::zeros(k + 1, n + 1);
    for j in 0..=n {
        let jet = poly_global_jet(&SymVector::basis(n, j), z0, k);
        for i in 0..=k {
            m[(i, j)] = jet.values[i].clone();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::determinant;
    use crate::moebius::{random_element, Sampler};
    use crate::rep::sym_rep;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn jet_of_series_examples() {
        let c = TruncSeries::constant(gr(3), q("2+i"), 3);
        assert_eq!(jet_of_series(&c, 3).unwrap().values(), &[q("2+i"), gr(0), gr(0), gr(0)]);
        let sq = TruncSeries::monomial(gr(1), 2, 2);
        assert_eq!(jet_of_series(&sq, 2).unwrap().values(), &[gr(0), gr(0), gr(2)]);
        let s = TruncSeries::new(gr(0), vec![gr(5), gr(1)]);
        assert_eq!(jet_of_series(&s, 0).unwrap().values(), &[gr(5)]);
        assert!(jet_of_series(&s, 2).is_err());
    }

    #[test]
    fn jet_cocycle_examples() {
        let z0 = q("1/3");
        assert!(jet_cocycle(3, 2, &MoebiusMap::identity(), &z0).unwrap().is_identity());
        let t = jet_cocycle(1, 0, &MoebiusMap::inversion(), &gr(2)).unwrap();
        assert_eq!(t, Matrix::from_rows(vec![vec![gr(1), gr(0)], vec![gr(0), q("1/4")]]));
        let g = random_element(2, 4);
        for n in -2..3 {
            let t0 = jet_cocycle(0, n, &g, &gr(1)).unwrap();
            assert_eq!(t0, Matrix::scalar(g.automorphy(n, &gr(1)).unwrap()));
        }
    }

    #[test]
    fn jet_cocycle_diagonal() {
        let g = random_element(8, 5);
        let z0 = gr(2);
        let t = jet_cocycle(4, -3, &g, &z0).unwrap();
        let mu = g.automorphy(-3, &z0).unwrap();
        let d = g.derivative(&z0).unwrap();
        for j in 0..=4 {
            assert_eq!(t[(j, j)], &mu * &d.pow(j as i64).unwrap());
            for i in 0..j {
                assert!(t[(i, j)].is_zero());
            }
        }
    }

    #[test]
    fn forgetful_and_iota() {
        let j = JetVector::new(2, 1, gr(0), vec![gr(1), gr(2), gr(3)]).unwrap();
        assert_eq!(forgetful(&j).unwrap().values(), &[gr(1), gr(2)]);
        let i2 = iota(2, &gr(0), &[gr(1)]);
        assert_eq!(i2.values(), &[gr(0), gr(0), gr(2)]);
        assert!(forgetful(&i2).unwrap().is_zero());
        assert_eq!(iota(0, &gr(0), &[q("7/2")]).values(), &[q("7/2")]);
        let lin = TruncSeries::monomial(gr(4), 1, 1);
        assert_eq!(forgetful(&jet_of_series(&lin, 1).unwrap()).unwrap().values(), &[gr(0)]);
        let zero = JetVector::new(0, 1, gr(0), vec![gr(1)]).unwrap();
        assert!(forgetful(&zero).is_err());
    }

    #[test]
    fn parallel_transport_examples() {
        let z0 = q("1/2");
        let p = parallel_transport_jet(&FlatConnectionSpec::trivial(2), &z0, 3);
        assert!(p.coeffs()[0].is_identity());
        assert!(p.coeffs()[1..].iter().all(Matrix::is_zero));

        let nil =
            FlatConnectionSpec::new(vec![vec![Poly::zero(), Poly::one()], vec![Poly::zero(), Poly::zero()]]).unwrap();
        let p = parallel_transport_jet(&nil, &z0, 3);
        assert_eq!(p.coeffs()[1], Matrix::from_int_rows(&[&[0, -1], &[0, 0]]));
        assert!(p.coeffs()[2].is_zero() && p.coeffs()[3].is_zero());

        let a = q("3/5");
        let scalar = FlatConnectionSpec::new(vec![vec![Poly::constant(a.clone())]]).unwrap();
        let p = parallel_transport_jet(&scalar, &z0, 2);
        assert!(p.coeffs()[0].is_identity());
        assert_eq!(p.coeffs()[1][(0, 0)], -&a);
        assert_eq!(p.coeffs()[2][(0, 0)], &(&a * &a) / &gr(2));
    }

    #[test]
    fn twisted_reduces_to_untwisted() {
        let g = random_element(21, 4);
        let z0 = gr(1);
        let spec = FlatConnectionSpec::trivial(1);
        let t = twisted_jet_cocycle(&spec, 3, 2, &g, &z0, &Gauge::identity(1)).unwrap();
        assert_eq!(t, jet_cocycle(3, 2, &g, &z0).unwrap());
        let spec2 = FlatConnectionSpec::trivial(2);
        let id = twisted_jet_cocycle(&spec2, 2, -1, &MoebiusMap::identity(), &z0, &Gauge::identity(2)).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn twisted_matches_transport_model_for_translation() {
        let spec =
            FlatConnectionSpec::new(vec![vec![Poly::zero(), Poly::constant(gr(2))], vec![Poly::zero(), Poly::zero()]])
                .unwrap();
        let g = MoebiusMap::translation(q("1/3"));
        let z0 = q("2/7");
        let direct = twisted_jet_cocycle(&spec, 1, 0, &g, &z0, &Gauge::identity(2)).unwrap();
        let model = twisted_cocycle_model(&spec, 1, 0, &g, &z0, &Gauge::identity(2)).unwrap();
        assert_eq!(direct, model);
    }

    #[test]
    fn twisted_matches_transport_model_general() {
        let spec = FlatConnectionSpec::new(vec![
            vec![Poly::from_ints(&[1, 0, 2]), Poly::from_ints(&[0, 1])],
            vec![Poly::from_ints(&[-1, 3]), Poly::zero()],
        ])
        .unwrap();
        let gauge =
            Gauge::new(vec![vec![RatFun::one(), RatFun::from_poly(Poly::z())], vec![RatFun::zero(), RatFun::one()]])
                .unwrap();
        let mut s = Sampler::new(17);
        for k in 0..=3 {
            let g = s.moebius(4, false);
            let z0 = s.base_point(4, false, &[&g]);
            for n in [-2, 0, 3] {
                let direct = twisted_jet_cocycle(&spec, k, n, &g, &z0, &gauge).unwrap();
                let model = twisted_cocycle_model(&spec, k, n, &g, &z0, &gauge).unwrap();
                assert_eq!(direct, model);
            }
        }
    }

    #[test]
    fn global_jets() {
        let z0 = q("2-i");
        assert_eq!(poly_global_jet(&SymVector::from_ints(&[1]), &z0, 3).values(), &[gr(1), gr(0), gr(0), gr(0)]);
        assert_eq!(poly_global_jet(&SymVector::e1(), &gr(0), 1).values(), &[gr(0), gr(1)]);
        for n in 0..=5 {
            assert!(!determinant(&global_jet_matrix(n, &z0, n)).is_zero());
        }
    }

    #[test]
    fn global_jets_intertwine_transposed_rep() {
        let mut s = Sampler::new(4);
        for _ in 0..5 {
            let g = s.moebius(5, false);
            let z0 = s.base_point(5, false, &[&g]);
            let w0 = g.act(&z0).unwrap();
            for n in 0..4usize {
                let k = 3;
                let lhs = jet_cocycle(k, n as i64, &g, &z0).unwrap().mul(&global_jet_matrix(n, &w0, k));
                let rhs = global_jet_matrix(n, &z0, k).mul(&sym_rep(n, &g.transpose()));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
