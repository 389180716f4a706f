//! JSON encodings of exact objects.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sl2jets::atlas::{Chart, ProjectiveAtlas, Transition};
use sl2jets::exactnum::{GaussianRational, Matrix, Poly, RatFun};
use sl2jets::liftop::DiffOperator;
use sl2jets::moebius::MoebiusMap;

use crate::CliError;

pub fn scalar(x: &GaussianRational) -> Value {
    Value::String(x.to_string())
}

pub fn parse_scalar(s: &str) -> Result<GaussianRational, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("bad scalar `{s}`: {e}")))
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(scalar).collect())).collect())
}

/// Ascending coefficient list.
pub fn poly(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar).collect())
}

pub fn ratfun(r: &RatFun) -> Value {
    json!({ "num": poly(r.num()), "den": poly(r.den()) })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MoebiusJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

impl MoebiusJson {
    pub fn from_map(g: &MoebiusMap) -> Self {
        Self { a: g.a().to_string(), b: g.b().to_string(), c: g.c().to_string(), d: g.d().to_string() }
    }

    pub fn to_map(&self) -> Result<MoebiusMap, CliError> {
        MoebiusMap::new(parse_scalar(&self.a)?, parse_scalar(&self.b)?, parse_scalar(&self.c)?, parse_scalar(&self.d)?)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

pub fn moebius(g: &MoebiusMap) -> Value {
    serde_json::to_value(MoebiusJson::from_map(g)).expect("plain struct")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ChartJson {
    id: String,
    samples: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TransitionJson {
    from: String,
    to: String,
    map: MoebiusJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct AtlasJson {
    charts: Vec<ChartJson>,
    transitions: Vec<TransitionJson>,
    #[serde(default)]
    triples: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta_characteristic: Option<String>,
}

/// Parses JSON text, reporting the line and column of malformed input.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("malformed {what} JSON at line {}, column {}: {e}", e.line(), e.column())))
}

pub fn parse_atlas(text: &str) -> Result<ProjectiveAtlas, CliError> {
    let a: AtlasJson = from_json(text, "atlas")?;
    let charts = a
        .charts
        .into_iter()
        .map(|c| {
            let samples = c.samples.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?;
            Ok(Chart { id: c.id, samples })
        })
        .collect::<Result<_, CliError>>()?;
    let transitions = a
        .transitions
        .into_iter()
        .map(|t| Ok(Transition { from: t.from, to: t.to, map: t.map.to_map()? }))
        .collect::<Result<_, CliError>>()?;
    Ok(ProjectiveAtlas { charts, transitions, triples: a.triples, theta_characteristic: a.theta_characteristic })
}

pub fn atlas_to_json(a: &ProjectiveAtlas) -> String {
    let j = AtlasJson {
        charts: a
            .charts
            .iter()
            .map(|c| ChartJson { id: c.id.clone(), samples: c.samples.iter().map(ToString::to_string).collect() })
            .collect(),
        transitions: a
            .transitions
            .iter()
            .map(|t| TransitionJson { from: t.from.clone(), to: t.to.clone(), map: MoebiusJson::from_map(&t.map) })
            .collect(),
        triples: a.triples.clone(),
        theta_characteristic: a.theta_characteristic.clone(),
    };
    serde_json::to_string_pretty(&j).expect("plain struct") + "\n"
}

/// Square matrix of polynomials given as ascending coefficient lists of strings.
pub fn parse_poly_matrix(text: &str, what: &str) -> Result<Vec<Vec<Poly>>, CliError> {
    let raw: Vec<Vec<Vec<String>>> = from_json(text, what)?;
    let r = raw.len();
    if r == 0 || raw.iter().any(|row| row.len() != r) {
        return Err(CliError::Usage(format!("{what} must be a nonempty square matrix")));
    }
    raw.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|cs| Ok(Poly::new(cs.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?)))
                .collect()
        })
        .collect()
}

pub fn poly_matrix(m: &[Vec<Poly>]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(poly).collect())).collect())
}

/// `{"order", "weights": {"n", "l", "target"}, "coeffs"}` with `coeffs[j]` an
/// `r' x r` matrix of rational functions.
pub fn operator(d: &DiffOperator, l: i64) -> Value {
    let coeffs: Vec<Value> = d
        .coeffs()
        .iter()
        .map(|cj| Value::Array(cj.iter().map(|row| Value::Array(row.iter().map(ratfun).collect())).collect()))
        .collect();
    json!({
        "order": d.order(),
        "weights": { "n": d.source_weight(), "l": l, "target": d.target_weight() },
        "coeffs": coeffs,
    })
}
