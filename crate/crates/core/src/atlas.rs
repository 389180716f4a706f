//! Projective atlases given by chart samples and SL(2) transitions, and the
//! bundles they induce.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::equiv::{check_intertwining, thm1_model, Cocycle, IsoTable, JetCocycle, ModelCocycle};
use crate::error::{usage, Result};
use crate::exactnum::{gr, inverse, GaussianRational, Matrix};
use crate::jets::jet_cocycle;
use crate::moebius::MoebiusMap;
use crate::rep::{clebsch_degrees, clebsch_matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub id: String,
    /// Points in this chart's coordinate.
    pub samples: Vec<GaussianRational>,
}

/// `map` sends the `from` coordinate to the `to` coordinate on the overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: String,
    pub to: String,
    pub map: MoebiusMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveAtlas {
    pub charts: Vec<Chart>,
    pub transitions: Vec<Transition>,
    pub triples: Vec<[String; 3]>,
    /// Which theta characteristic the lift is meant to represent; carried, never checked.
    pub theta_characteristic: Option<String>,
}

impl ProjectiveAtlas {
    pub fn chart(&self, id: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.id == id)
    }

    /// The transition `from -> to`: listed, the inverse of the listed reverse, or
    /// the identity on a single chart.
    pub fn transition(&self, from: &str, to: &str) -> Option<MoebiusMap> {
        if let Some(t) = self.transitions.iter().find(|t| t.from == from && t.to == to) {
            return Some(t.map.clone());
        }
        if let Some(t) = self.transitions.iter().find(|t| t.from == to && t.to == from) {
            return Some(t.map.inverse());
        }
        (from == to).then(MoebiusMap::identity)
    }

    /// Ordered pairs of distinct charts joined by a transition, listed or implied.
    pub fn overlaps(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        for t in &self.transitions {
            if t.from == t.to {
                continue;
            }
            for pair in [(t.from.clone(), t.to.clone()), (t.to.clone(), t.from.clone())] {
                if !out.contains(&pair) {
                    out.push(pair);
                }
            }
        }
        out
    }

    /// Samples of `from` that stay in the chart under the transition to `to`.
    pub fn overlap_samples(&self, from: &str, to: &str) -> Vec<GaussianRational> {
        let (Some(c), Some(g)) = (self.chart(from), self.transition(from, to)) else {
            return Vec::new();
        };
        c.samples.iter().filter(|z| g.act(z).is_ok()).cloned().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtlasCondition {
    /// Charts and transitions refer to known identifiers.
    WellFormed,
    /// `tau_ii = Id`.
    Identity,
    /// `tau_ik tau_kj tau_ji = Id` (pairs included as `i, j, i`).
    Cocycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtlasCheck {
    Pass {
        samples_checked: usize,
    },
    /// A loop of transitions multiplies to `-Id`: projectively consistent, but not an SL(2) lift.
    SignInconsistent {
        witness: Vec<String>,
    },
    Fail {
        condition: AtlasCondition,
        witness: Vec<String>,
        detail: String,
    },
}

impl AtlasCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AtlasCheck::Pass { .. })
    }
}

fn loops(atlas: &ProjectiveAtlas) -> Vec<[String; 3]> {
    let mut out: Vec<[String; 3]> = atlas.overlaps().into_iter().map(|(a, b)| [a.clone(), b, a]).collect();
    out.extend(atlas.triples.iter().cloned());
    out
}

pub fn check_atlas(atlas: &ProjectiveAtlas) -> AtlasCheck {
    for t in &atlas.transitions {
        if atlas.chart(&t.from).is_none() || atlas.chart(&t.to).is_none() {
            return AtlasCheck::Fail {
                condition: AtlasCondition::WellFormed,
                witness: vec![t.from.clone(), t.to.clone()],
                detail: String::from("transition names an unknown chart"),
            };
        }
        if t.from == t.to && !t.map.to_matrix().is_identity() {
            return AtlasCheck::Fail {
                condition: AtlasCondition::Identity,
                witness: vec![t.from.clone()],
                detail: format!("self-transition is {:?}", t.map),
            };
        }
    }
    let mut signs = None;
    for tri in loops(atlas) {
        let [i, j, k] = &tri;
        let (Some(tij), Some(tjk), Some(tki)) =
            (atlas.transition(i, j), atlas.transition(j, k), atlas.transition(k, i))
        else {
            return AtlasCheck::Fail {
                condition: AtlasCondition::WellFormed,
                witness: tri.to_vec(),
                detail: String::from("triple without transitions"),
            };
        };
        let prod = tki.compose(&tjk).compose(&tij).to_matrix();
        if prod.is_identity() {
            continue;
        }
        if prod.scale(&gr(-1)).is_identity() {
            signs.get_or_insert(tri.to_vec());
            continue;
        }
        return AtlasCheck::Fail {
            condition: AtlasCondition::Cocycle,
            witness: tri.to_vec(),
            detail: format!("loop product {prod:?}"),
        };
    }
    match signs {
        Some(witness) => AtlasCheck::SignInconsistent { witness },
        None => AtlasCheck::Pass { samples_checked: atlas.charts.iter().map(|c| c.samples.len()).sum() },
    }
}

/// Bundles built from the atlas transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    /// `L^n`, transition `mu_n`.
    Line(i64),
    /// `V_j`, transition `Sym^j(g^T)`.
    Sym(usize),
    /// `J^k(L^n)`.
    Jet(usize, i64),
    Tensor(Box<Descriptor>, Box<Descriptor>),
}

impl Descriptor {
    pub fn rank(&self) -> usize {
        match self {
            Descriptor::Line(_) => 1,
            Descriptor::Sym(j) => j + 1,
            Descriptor::Jet(k, _) => k + 1,
            Descriptor::Tensor(a, b) => a.rank() * b.rank(),
        }
    }

    pub fn eval(&self, g: &MoebiusMap, z: &GaussianRational) -> Result<Matrix> {
        match self {
            Descriptor::Line(n) => Ok(Matrix::scalar(g.automorphy(*n, z)?)),
            Descriptor::Sym(j) => ModelCocycle::single(0, *j).eval(g, z),
            Descriptor::Jet(k, n) => jet_cocycle(*k, *n, g, z),
            Descriptor::Tensor(a, b) => Ok(a.eval(g, z)?.kron(&b.eval(g, z)?)),
        }
    }

    /// Parses `L^n`, `V_j`, `J^k(L^n)` and tensor products joined by ` x `.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(" x ").map(str::trim).collect();
        let mut it = parts.into_iter().map(Self::parse_factor);
        let mut acc = it.next().ok_or_else(|| usage("empty descriptor"))??;
        for f in it {
            acc = Descriptor::Tensor(Box::new(acc), Box::new(f?));
        }
        Ok(acc)
    }

    fn parse_factor(s: &str) -> Result<Self> {
        let bad = || usage(format!("unknown descriptor `{s}`"));
        if let Some(rest) = s.strip_prefix("L^") {
            return rest.parse().map(Descriptor::Line).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("V_") {
            return rest.parse().map(Descriptor::Sym).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("J^") {
            let (k, tail) = rest.split_once("(L^").ok_or_else(bad)?;
            let n = tail.strip_suffix(')').ok_or_else(bad)?;
            return Ok(Descriptor::Jet(k.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?));
        }
        Err(bad())
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Line(n) => write!(f, "L^{n}"),
            Descriptor::Sym(j) => write!(f, "V_{j}"),
            Descriptor::Jet(k, n) => write!(f, "J^{k}(L^{n})"),
            Descriptor::Tensor(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapValues {
    pub from: String,
    pub to: String,
    /// `(z, T(tau, z))` with `z` in the `from` chart.
    pub values: Vec<(GaussianRational, Matrix)>,
}

/// Transition matrices of an induced bundle: a section in chart `from` equals
/// `T(tau, z)` times the section in chart `to` at `tau z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleCocycle {
    pub descriptor: Descriptor,
    pub rank: usize,
    pub overlaps: Vec<OverlapValues>,
}

pub fn induced_cocycle(atlas: &ProjectiveAtlas, descriptor: &Descriptor) -> Result<BundleCocycle> {
    let mut overlaps = Vec::new();
    for (from, to) in atlas.overlaps() {
        let g = atlas.transition(&from, &to).expect("overlap has a transition");
        let values = atlas
            .overlap_samples(&from, &to)
            .into_iter()
            .map(|z| descriptor.eval(&g, &z).map(|m| (z, m)))
            .collect::<Result<Vec<_>>>()?;
        overlaps.push(OverlapValues { from, to, values });
    }
    Ok(BundleCocycle { descriptor: descriptor.clone(), rank: descriptor.rank(), overlaps })
}

/// Outcome of an atlas-level identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OverlapCheck {
    Pass { samples_checked: usize },
    Fail { from: String, to: String, z: GaussianRational, detail: String },
}

impl OverlapCheck {
    pub fn passed(&self) -> bool {
        matches!(self, OverlapCheck::Pass { .. })
    }
}

fn for_each_overlap_sample(
    atlas: &ProjectiveAtlas,
    mut f: impl FnMut(&MoebiusMap, &GaussianRational) -> Result<Option<String>>,
) -> Result<OverlapCheck> {
    let mut count = 0;
    for (from, to) in atlas.overlaps() {
        let g = atlas.transition(&from, &to).expect("overlap has a transition");
        for z in atlas.overlap_samples(&from, &to) {
            count += 1;
            if let Some(detail) = f(&g, &z)? {
                return Ok(OverlapCheck::Fail { from, to, z, detail });
            }
        }
    }
    Ok(OverlapCheck::Pass { samples_checked: count })
}

/// `T(tau_ik, z) = T(tau_ij, z) T(tau_jk, tau_ij z)` on every triple at the samples of chart `i`.
pub fn check_bundle_cocycle(atlas: &ProjectiveAtlas, descriptor: &Descriptor) -> Result<OverlapCheck> {
    let mut count = 0;
    for [i, j, k] in &atlas.triples {
        let (Some(tij), Some(tjk), Some(tik)) =
            (atlas.transition(i, j), atlas.transition(j, k), atlas.transition(i, k))
        else {
            return Err(usage("triple without transitions"));
        };
        let Some(chart) = atlas.chart(i) else { return Err(usage(format!("unknown chart {i}"))) };
        for z in &chart.samples {
            let (Ok(w), Ok(_)) = (tij.act(z), tik.act(z)) else { continue };
            if tjk.act(&w).is_err() {
                continue;
            }
            count += 1;
            let lhs = descriptor.eval(&tik, z)?;
            let rhs = descriptor.eval(&tij, z)?.mul(&descriptor.eval(&tjk, &w)?);
            if lhs != rhs {
                return Ok(OverlapCheck::Fail {
                    from: i.clone(),
                    to: k.clone(),
                    z: z.clone(),
                    detail: format!("cocycle condition fails through {j}"),
                });
            }
        }
    }
    Ok(OverlapCheck::Pass { samples_checked: count })
}

/// The canonical chartwise isomorphism conjugates `J^k(L^n)` into its model on every overlap.
pub fn verify_corollary1(atlas: &ProjectiveAtlas, table: &IsoTable, k: usize, n: i64) -> Result<OverlapCheck> {
    let it = table.get(k, n)?;
    let jet = JetCocycle { k, n };
    let model = thm1_model(k, n);
    for_each_overlap_sample(atlas, |g, z| {
        Ok((!check_intertwining(&jet, &model, &it.sigma, g, z)?)
            .then(|| format!("J^{k}(L^{n}) vs {}", model.describe())))
    })
}

/// The `L^2` transitions equal the tangent transitions `1 / tau'(z)`.
pub fn verify_l2_tm(atlas: &ProjectiveAtlas) -> Result<OverlapCheck> {
    for_each_overlap_sample(atlas, |g, z| {
        let l2 = g.automorphy(2, z)?;
        let tangent = g.derivative(z)?.inv().expect("derivative of a Moebius map is nonzero");
        Ok((l2 != tangent).then(|| format!("mu_2 = {l2}, 1/tau' = {tangent}")))
    })
}

/// The constant Clebsch-Gordan matrix block-diagonalizes the induced `V_m x V_n` transitions.
pub fn verify_prop1_atlas(atlas: &ProjectiveAtlas, m: usize, n: usize) -> Result<OverlapCheck> {
    let c = clebsch_matrix(m, n);
    let c_inv = inverse(&c).expect("Clebsch-Gordan matrix is invertible");
    let tensor = Descriptor::Tensor(Box::new(Descriptor::Sym(m)), Box::new(Descriptor::Sym(n)));
    for_each_overlap_sample(atlas, |g, z| {
        let lhs = c.mul(&tensor.eval(g, z)?).mul(&c_inv);
        let blocks =
            clebsch_degrees(m, n).into_iter().map(|d| Descriptor::Sym(d).eval(g, z)).collect::<Result<Vec<_>>>()?;
        let rhs = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.direct_sum(b));
        Ok((lhs != rhs).then(|| String::from("Clebsch-Gordan conjugate is not block diagonal")))
    })
}

fn q(s: &str) -> GaussianRational {
    s.parse().expect("literal")
}

fn chart(id: &str, samples: &[&str]) -> Chart {
    Chart { id: id.to_string(), samples: samples.iter().map(|s| q(s)).collect() }
}

fn transition(from: &str, to: &str, map: MoebiusMap) -> Transition {
    Transition { from: from.to_string(), to: to.to_string(), map }
}

/// Four charts on `C / (Z + Zi)` glued by translations by `1`, `i` and `1 + i`.
pub fn torus_example() -> ProjectiveAtlas {
    let samples = ["1/4", "1/3+1/5i", "2/3+1/2i", "1/2+3/4i", "1/5+2/3i", "3/5+1/7i"];
    let tr = |b: &str| MoebiusMap::translation(q(b));
    ProjectiveAtlas {
        charts: ["U0", "U1", "U2", "U3"].iter().map(|id| chart(id, &samples)).collect(),
        transitions: vec![
            transition("U0", "U1", tr("1")),
            transition("U0", "U2", tr("i")),
            transition("U0", "U3", tr("1+i")),
            transition("U1", "U3", tr("i")),
            transition("U2", "U3", tr("1")),
        ],
        triples: vec![
            ["U0".to_string(), "U1".to_string(), "U3".to_string()],
            ["U0".to_string(), "U2".to_string(), "U3".to_string()],
        ],
        theta_characteristic: Some(String::from("trivial")),
    }
}

/// The projective line with charts `z` and `w = -1/z`.
pub fn sphere_example() -> ProjectiveAtlas {
    let samples = ["1", "2", "1/2+i", "-3/2+1/3i", "-1/4", "3i"];
    ProjectiveAtlas {
        charts: vec![chart("N", &samples), chart("S", &samples)],
        transitions: vec![transition("N", "S", MoebiusMap::inversion())],
        triples: Vec::new(),
        theta_characteristic: None,
    }
}

/// A single chart with no transitions.
pub fn single_chart_example() -> ProjectiveAtlas {
    ProjectiveAtlas {
        charts: vec![chart("U", &["0", "1", "1/2+i"])],
        transitions: Vec::new(),
        triples: Vec::new(),
        theta_characteristic: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_and_sphere_pass() {
        assert!(check_atlas(&torus_example()).passed());
        assert!(check_atlas(&sphere_example()).passed());
        assert!(check_atlas(&single_chart_example()).passed());
    }

    #[test]
    fn negated_transition_is_flagged() {
        let mut a = torus_example();
        a.transitions[0].map = a.transitions[0].map.negate();
        assert!(matches!(check_atlas(&a), AtlasCheck::SignInconsistent { .. }));
        assert!(!check_bundle_cocycle(&a, &Descriptor::Sym(1)).unwrap().passed());
        assert!(check_bundle_cocycle(&a, &Descriptor::Sym(2)).unwrap().passed());
    }

    #[test]
    fn broken_loop_fails() {
        let mut a = torus_example();
        a.transitions[3].map = MoebiusMap::translation(q("2i"));
        assert!(matches!(check_atlas(&a), AtlasCheck::Fail { condition: AtlasCondition::Cocycle, .. }));
    }

    #[test]
    fn torus_induced_cocycles() {
        let t = torus_example();
        for ov in induced_cocycle(&t, &Descriptor::Line(2)).unwrap().overlaps {
            assert!(ov.values.iter().all(|(_, m)| m.is_identity()));
        }
        for ov in induced_cocycle(&t, &Descriptor::Jet(1, 0)).unwrap().overlaps {
            assert!(ov.values.iter().all(|(_, m)| m.is_identity()));
        }
        let v1 = induced_cocycle(&t, &Descriptor::Sym(1)).unwrap();
        let ov = v1.overlaps.iter().find(|o| o.from == "U0" && o.to == "U3").unwrap();
        let b = q("1+i");
        let expected = Matrix::from_rows(vec![vec![gr(1), GaussianRational::zero()], vec![b, gr(1)]]);
        assert!(ov.values.iter().all(|(_, m)| *m == expected));
        for d in ["L^3", "V_2", "J^2(L^-1)", "V_1 x J^1(L^2)"] {
            assert!(check_bundle_cocycle(&t, &Descriptor::parse(d).unwrap()).unwrap().passed(), "{d}");
        }
    }

    #[test]
    fn descriptor_parsing() {
        for d in ["L^-2", "V_3", "J^2(L^5)", "V_1 x V_2"] {
            assert_eq!(Descriptor::parse(d).unwrap().to_string(), d);
        }
        assert!(Descriptor::parse("W_2").is_err());
        assert!(Descriptor::parse("J^2(L^x)").is_err());
    }

    #[test]
    fn l2_is_tangent() {
        assert!(verify_l2_tm(&torus_example()).unwrap().passed());
        assert!(verify_l2_tm(&sphere_example()).unwrap().passed());
        assert!(verify_l2_tm(&single_chart_example()).unwrap().passed());
        let s = induced_cocycle(&sphere_example(), &Descriptor::Line(2)).unwrap();
        let ov = s.overlaps.iter().find(|o| o.from == "N").unwrap();
        for (z, m) in &ov.values {
            assert_eq!(m[(0, 0)], z * z);
        }
    }

    #[test]
    fn jet_isomorphism_glues_across_charts() {
        let table = IsoTable::new();
        let t = torus_example();
        assert!(verify_corollary1(&t, &table, 1, 0).unwrap().passed());
        assert!(verify_corollary1(&t, &table, 2, 3).unwrap().passed());
        assert!(verify_corollary1(&single_chart_example(), &table, 2, 1).unwrap().passed());
        assert!(verify_corollary1(&sphere_example(), &table, 2, 1).unwrap().passed());
    }

    #[test]
    fn clebsch_gordan_splits_induced_tensors() {
        assert!(verify_prop1_atlas(&torus_example(), 2, 1).unwrap().passed());
        assert!(verify_prop1_atlas(&sphere_example(), 2, 2).unwrap().passed());
    }
}
