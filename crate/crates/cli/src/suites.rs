//! Verification suites. Each case yields one [`Report`].

use serde_json::{json, Value};
use sl2jets::atlas::{
    check_atlas, verify_corollary1, verify_l2_tm, verify_prop1_atlas, AtlasCheck, OverlapCheck, ProjectiveAtlas,
};
use sl2jets::equiv::{
    certification_samples, check_intertwining, check_points, is_split, splitting_beta, thm1_model,
    verify_forgetful_model, Check, IsoTable, ModelCocycle,
};
use sl2jets::exactnum::{exact_nullspace, gr, inverse, rank, GaussianRational, Matrix, Poly, RatFun};
use sl2jets::jets::{
    forgetful_matrix, global_jet_matrix, iota_matrix, twisted_cocycle_model, twisted_jet_cocycle, FlatConnectionSpec,
    Gauge,
};
use sl2jets::liftop::{
    check_lift_naturality, lift_hypothesis, lift_symbol, nonlift_probe, symbol, symbol_branch, symbol_model_constant,
    verify_symbol_model, SymbolBranch,
};
use sl2jets::moebius::{MoebiusMap, Sampler};
use sl2jets::rep::{clebsch_compose, clebsch_decompose, clebsch_degrees, clebsch_matrix, sym_rep};

use crate::format;
use crate::report::Report;

/// Shared state for a run: the seed, sampling parameters and cached isomorphisms.
pub struct Ctx {
    pub seed: u64,
    pub trials: Option<usize>,
    pub height: i64,
    pub table: IsoTable,
}

impl Ctx {
    pub fn new(seed: u64) -> Self {
        Self { seed, trials: None, height: 5, table: IsoTable::new() }
    }

    fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn sampler(&self, stream: u64) -> Sampler {
        Sampler::with_stream(self.seed, stream)
    }
}

fn core_error(rep: Report, e: &sl2jets::Error) -> Report {
    rep.fail(json!({ "error": e.to_string() }))
}

fn pair(g: &MoebiusMap, z0: &GaussianRational) -> Value {
    json!({ "g": format::moebius(g), "z0": format::scalar(z0) })
}

fn model_json(m: &ModelCocycle) -> Value {
    Value::Array(m.summands().iter().map(|s| json!({ "twist": s.twist, "degree": s.degree })).collect())
}

/// Canonical isomorphism for `J^k(L^n)`, certified on fresh `(g, z0)` pairs.
pub fn thm1(ctx: &Ctx, k: usize, n: i64) -> Report {
    let rep = Report::new("thm1", ctx.seed).param("k", k).param("n", n);
    let it = match ctx.table.get(k, n) {
        Ok(it) => it,
        Err(e) => return core_error(rep, &e),
    };
    let expected_schur = if is_split(k, n) { 2 } else { 1 };
    let rep = rep
        .datum("model", model_json(&it.model))
        .datum("intertwiner_degrees", json!(it.block_degrees))
        .datum("schur_dimension", it.schur_dimension);
    if it.schur_dimension != expected_schur {
        return rep.fail(json!({ "schur_dimension": it.schur_dimension, "expected": expected_schur }));
    }
    let jet = it.jet_cocycle();
    for (g, z0) in certification_samples(ctx.seed, ctx.trials_or(25), ctx.height) {
        match check_intertwining(&jet, &it.model, &it.sigma, &g, &z0) {
            Ok(true) => {}
            Ok(false) => return rep.fail(pair(&g, &z0)),
            Err(e) => return core_error(rep, &e),
        }
    }
    rep
}

/// `ker(truncation) = im(iota)` on `J^k(E)` of rank `r`.
pub fn sequence(ctx: &Ctx, k: usize, r: usize) -> Report {
    let rep = Report::new("sequence", ctx.seed).param("k", k).param("r", r);
    let iota = iota_matrix(k, r);
    if rank(&iota) != r {
        return rep.fail(json!({ "iota_rank": rank(&iota) }));
    }
    if k == 0 {
        return rep.datum("kernel_dimension", r);
    }
    let phi = forgetful_matrix(k, r);
    if !phi.mul(&iota).is_zero() {
        return rep.fail(json!({ "detail": "truncation does not kill the image of iota" }));
    }
    let kernel = exact_nullspace(&phi);
    if kernel.len() != r {
        return rep.fail(json!({ "kernel_dimension": kernel.len() }));
    }
    for v in &kernel {
        if rank(&iota.hcat(&Matrix::column(v.clone()))) != r {
            return rep.fail(json!({ "kernel_vector": v.iter().map(format::scalar).collect::<Vec<_>>() }));
        }
    }
    rep.datum("kernel_dimension", kernel.len())
}

fn check_report(rep: Report, c: sl2jets::Result<Check>) -> Report {
    match c {
        Ok(Check::Pass) => rep,
        Ok(Check::Fail { z0, detail }) => rep.fail(json!({ "z0": format::scalar(&z0), "detail": detail })),
        Err(e) => core_error(rep, &e),
    }
}

fn forgetful_branch(k: usize, n: i64) -> &'static str {
    if !is_split(k, n) {
        "irreducible"
    } else if k as i64 - 1 == n {
        "split-zero"
    } else {
        "split"
    }
}

/// Truncation `J^k -> J^(k-1)` in model coordinates.
pub fn props234(ctx: &Ctx, k: usize, n: i64) -> Report {
    let rep = Report::new("props234", ctx.seed).param("k", k).param("n", n).datum("branch", forgetful_branch(k, n));
    check_report(rep, verify_forgetful_model(&ctx.table, k, n, ctx.seed))
}

/// The splitting `beta` inverts the global-section jets and is equivariant.
pub fn lemma1(ctx: &Ctx, k: usize, n: usize) -> Report {
    let rep = Report::new("lemma1", ctx.seed).param("k", k).param("n", n);
    let id = Matrix::identity(n + 1);
    for z0 in check_points(ctx.seed, ctx.trials_or(6)) {
        let beta = match splitting_beta(k, n, &z0) {
            Ok(b) => b,
            Err(e) => return core_error(rep, &e),
        };
        if beta.mul(&global_jet_matrix(n, &z0, k)) != id {
            return rep.fail(json!({ "z0": format::scalar(&z0) }));
        }
    }
    for (g, z0) in certification_samples(ctx.seed, ctx.trials_or(6), ctx.height) {
        let run = || -> sl2jets::Result<bool> {
            let w0 = g.act(&z0)?;
            let lhs = splitting_beta(k, n, &z0)?.mul(&sl2jets::jets::jet_cocycle(k, n as i64, &g, &z0)?);
            let rhs = sym_rep(n, &g.transpose()).mul(&splitting_beta(k, n, &w0)?);
            Ok(lhs == rhs)
        };
        match run() {
            Ok(true) => {}
            Ok(false) => return rep.fail(pair(&g, &z0)),
            Err(e) => return core_error(rep, &e),
        }
    }
    rep
}

/// Clebsch-Gordan round trip, equivariance and dimension count for `Sym^m x Sym^n`.
pub fn prop1(ctx: &Ctx, m: usize, n: usize) -> Report {
    let degrees = clebsch_degrees(m, n);
    let rep = Report::new("prop1", ctx.seed).param("m", m).param("n", n).datum("degrees", json!(degrees));
    let total: usize = degrees.iter().map(|d| d + 1).sum();
    if total != (m + 1) * (n + 1) {
        return rep.fail(json!({ "dimension": total }));
    }
    let mut s = ctx.sampler(6);
    for _ in 0..ctx.trials_or(6) {
        let t: Vec<GaussianRational> = (0..(m + 1) * (n + 1)).map(|_| s.scalar(ctx.height, false)).collect();
        let back = clebsch_decompose(m, n, &t).and_then(|parts| clebsch_compose(m, n, &parts));
        match back {
            Ok(b) if b == t => {}
            Ok(_) => return rep.fail(json!({ "tensor": t.iter().map(format::scalar).collect::<Vec<_>>() })),
            Err(e) => return core_error(rep, &e),
        }
    }
    let c = clebsch_matrix(m, n);
    let Some(c_inv) = inverse(&c) else {
        return rep.fail(json!({ "detail": "Clebsch-Gordan matrix is singular" }));
    };
    for _ in 0..ctx.trials_or(6) {
        let g = s.moebius(ctx.height, false);
        let lhs = c.mul(&sym_rep(m, &g).kron(&sym_rep(n, &g))).mul(&c_inv);
        let blocks: Vec<Matrix> = degrees.iter().map(|&d| sym_rep(d, &g)).collect();
        let rhs = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.direct_sum(b));
        if lhs != rhs {
            return rep.fail(json!({ "g": format::moebius(&g) }));
        }
    }
    rep
}

fn random_poly(s: &mut Sampler, max_degree: usize, height: i64) -> Poly {
    let deg = s.int_in(0, max_degree as i64) as usize;
    Poly::new((0..=deg).map(|_| s.scalar(height, false)).collect())
}

fn random_poly_matrix(s: &mut Sampler, r: usize, max_degree: usize, height: i64) -> Vec<Vec<Poly>> {
    (0..r).map(|_| (0..r).map(|_| random_poly(s, max_degree, height)).collect()).collect()
}

fn random_gauge(s: &mut Sampler, r: usize, height: i64) -> Gauge {
    let g = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| match a.cmp(&b) {
                    std::cmp::Ordering::Equal => RatFun::constant(gr(if a == 0 { 2 } else { 1 })),
                    std::cmp::Ordering::Less => RatFun::from_poly(random_poly(s, 1, height)),
                    std::cmp::Ordering::Greater => RatFun::zero(),
                })
                .collect()
        })
        .collect();
    Gauge::new(g).expect("triangular with constant diagonal")
}

/// Twisted jet transitions against the parallel-transport model.
pub fn lemma2(ctx: &Ctx, k: usize, n: i64, r: usize) -> Report {
    let rep = Report::new("lemma2", ctx.seed).param("k", k).param("n", n).param("r", r);
    let mut s = ctx.sampler(7);
    let a = random_poly_matrix(&mut s, r, 2, 3);
    let spec = FlatConnectionSpec::new(a.clone()).expect("square");
    let gauge = random_gauge(&mut s, r, 3);
    for _ in 0..ctx.trials_or(6) {
        let g = s.moebius(ctx.height, false);
        let z0 = s.base_point(ctx.height, false, &[&g]);
        let direct = twisted_jet_cocycle(&spec, k, n, &g, &z0, &gauge);
        let model = twisted_cocycle_model(&spec, k, n, &g, &z0, &gauge);
        match (direct, model) {
            (Ok(d), Ok(m)) if d == m => {}
            (Ok(_), Ok(_)) => {
                let mut w = pair(&g, &z0);
                w["connection"] = format::poly_matrix(&a);
                return rep.fail(w);
            }
            (Err(e), _) | (_, Err(e)) => return core_error(rep, &e),
        }
    }
    rep
}

fn overlap_report(rep: Report, c: sl2jets::Result<OverlapCheck>) -> Report {
    match c {
        Ok(OverlapCheck::Pass { samples_checked }) => rep.datum("samples_checked", samples_checked),
        Ok(OverlapCheck::Fail { from, to, z, detail }) => {
            rep.fail(json!({ "from": from, "to": to, "z": format::scalar(&z), "detail": detail }))
        }
        Err(e) => core_error(rep, &e),
    }
}

/// Atlas conditions and the `L^2 = TM` identification.
pub fn atlas_checks(ctx: &Ctx, atlas: &ProjectiveAtlas, name: &str) -> Vec<Report> {
    let rep = Report::new("atlas", ctx.seed).param("atlas", name);
    let rep = match check_atlas(atlas) {
        AtlasCheck::Pass { samples_checked } => rep.datum("samples", samples_checked),
        AtlasCheck::SignInconsistent { witness } => rep.fail(json!({ "sign_inconsistent": witness })),
        AtlasCheck::Fail { condition, witness, detail } => {
            rep.fail(json!({ "condition": format!("{condition:?}"), "charts": witness, "detail": detail }))
        }
    };
    let l2 = overlap_report(Report::new("l2tm", ctx.seed).param("atlas", name), verify_l2_tm(atlas));
    vec![rep, l2]
}

/// The chartwise jet isomorphism intertwines the induced transitions on every overlap.
pub fn cor1(ctx: &Ctx, atlas: &ProjectiveAtlas, name: &str, k: usize, n: i64) -> Report {
    let rep = Report::new("cor1", ctx.seed).param("atlas", name).param("k", k).param("n", n);
    overlap_report(rep, verify_corollary1(atlas, &ctx.table, k, n))
}

/// The constant Clebsch-Gordan matrix splits the induced `V_m x V_n` on an atlas.
pub fn prop1_atlas(ctx: &Ctx, atlas: &ProjectiveAtlas, name: &str, m: usize, n: usize) -> Report {
    let rep = Report::new("prop1-atlas", ctx.seed).param("atlas", name).param("m", m).param("n", n);
    overlap_report(rep, verify_prop1_atlas(atlas, m, n))
}

/// Symbol of every basis operator in model coordinates.
pub fn symbol_model(ctx: &Ctx, k: usize, n: i64) -> Report {
    let branch = match symbol_branch(k, n) {
        SymbolBranch::Irreducible => "irreducible",
        SymbolBranch::SplitRestriction => "split-restriction",
        SymbolBranch::SplitProjection => "split-projection",
    };
    let rep = Report::new("symbol", ctx.seed)
        .param("k", k)
        .param("n", n)
        .datum("branch", branch)
        .datum("constant", format::scalar(&symbol_model_constant(k, n)));
    check_report(rep, verify_symbol_model(&ctx.table, k, n, ctx.seed))
}

/// Lifts random symbols and compares the result's symbol; then chart naturality.
pub fn thm2(ctx: &Ctx, k: usize, n: i64, l: i64, r: usize) -> Report {
    let rep = Report::new("thm2", ctx.seed).param("k", k).param("n", n).param("l", l).param("r", r);
    if !lift_hypothesis(k, n, l) {
        return rep.fail(json!({ "detail": "outside the lift hypothesis" }));
    }
    let mut s = ctx.sampler(8);
    let a = random_poly_matrix(&mut s, r, 1, 2);
    let spec = FlatConnectionSpec::new(a.clone()).expect("square");
    let mut first = None;
    for _ in 0..ctx.trials_or(10) {
        let theta = random_poly_matrix(&mut s, r, 3, 4);
        let witness = || json!({ "theta0": format::poly_matrix(&theta), "connection": format::poly_matrix(&a) });
        let d = match lift_symbol(&ctx.table, &theta, k, n, l, &spec) {
            Ok(d) => d,
            Err(e) => return core_error(rep, &e).fail(witness()),
        };
        let expected: Vec<Vec<RatFun>> =
            theta.iter().map(|row| row.iter().cloned().map(RatFun::from_poly).collect()).collect();
        if d.order() != k || symbol(&d).entries != expected {
            return rep.fail(witness());
        }
        first.get_or_insert(theta);
    }
    let theta = first.expect("at least one trial");
    for _ in 0..5 {
        let g = s.moebius(ctx.height.min(3), false);
        let z0 = s.base_point(3, false, &[&g]);
        match check_lift_naturality(&ctx.table, &theta, k, n, l, &spec, &g, &z0) {
            Ok(true) => {}
            Ok(false) => {
                let mut w = pair(&g, &z0);
                w["theta0"] = format::poly_matrix(&theta);
                w["connection"] = format::poly_matrix(&a);
                return rep.fail(w);
            }
            Err(e) => return core_error(rep, &e),
        }
    }
    rep.datum("naturality_maps", 5)
}

/// Global first-order operators `L^n -> L^(n-2)` with symbol 1 exist only for `n = 0`.
pub fn remark(ctx: &Ctx, n: i64) -> Report {
    let rep = Report::new("remark", ctx.seed).param("n", n);
    let probe = match nonlift_probe(n) {
        Ok(p) => p,
        Err(e) => return core_error(rep, &e),
    };
    let mut rep = rep.datum("feasible", probe.feasible).datum("degree_bound", probe.degree_bound);
    if let Some([c0, c1, c0t, c1t]) = &probe.witness {
        rep = rep.datum(
            "witness",
            json!({ "c0": format::poly(c0), "c1": format::poly(c1), "c0_tilde": format::poly(c0t), "c1_tilde": format::poly(c1t) }),
        );
        let is_d = c0.is_zero() && c0t.is_zero() && *c1 == Poly::one() && *c1t == Poly::one();
        if n == 0 && !is_d {
            return rep.fail(json!({ "detail": "witness is not d/dz" }));
        }
    }
    if probe.feasible != (n == 0) {
        return rep.fail(json!({ "feasible": probe.feasible }));
    }
    rep
}

/// Model summands of `J^k(L^n)` as JSON.
pub fn model_of(k: usize, n: i64) -> Value {
    model_json(&thm1_model(k, n))
}
