use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sl2jets::atlas::{
    check_atlas, induced_cocycle, sphere_example, torus_example, AtlasCheck, Descriptor, ProjectiveAtlas,
};
use sl2jets::equiv::is_split;
use sl2jets::jets::{jet_cocycle, FlatConnectionSpec};
use sl2jets::liftop::{lift_hypothesis, lift_symbol};
use sl2jets::rep::clebsch_degrees;

use crate::format::{self, MoebiusJson};
use crate::report::Report;
use crate::suites::{self, Ctx};
use crate::{CliError, SPHERE_FIXTURE, TORUS_FIXTURE};

#[derive(Parser, Debug)]
#[command(name = "sl2jets", version, about = "Exact checks for SL(2)-equivariant jet bundles on the projective line")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run a verification suite over a parameter grid.
    Verify(VerifyArgs),
    /// Compute one object and print it as JSON.
    #[command(subcommand)]
    Compute(Compute),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Thm1,
    Sequence,
    Props234,
    Prop1,
    Lemma1,
    Lemma2,
    Cor1,
    Symbol,
    Thm2,
    Remark,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    target: Target,
    /// Jet order: `a`, `a..b` (inclusive) or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    /// Bundle rank for the twisted checks.
    #[arg(long)]
    r: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 5)]
    height: i64,
    /// Atlas JSON file, or `torus` / `sphere`.
    #[arg(long)]
    atlas: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Compute {
    /// Transition matrix of `J^k(L^n)` for `g` at `z0`.
    Cocycle {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// `{"a": .., "b": .., "c": .., "d": ..}`
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
    },
    /// Canonical isomorphism from the model onto `J^k(L^n)`.
    Intertwiner {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Clebsch-Gordan degrees of `V_m x V_n`.
    Decompose {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Lift a symbol to an operator `E (x) L^n -> E (x) L^(l+n-2k)`.
    Lift {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        /// Square matrix of ascending coefficient lists, e.g. `[[["1","2"]]]`.
        #[arg(long)]
        theta: String,
        /// Connection matrix in the same format; trivial when omitted.
        #[arg(long)]
        connection: Option<String>,
    },
    /// Check an atlas and optionally print an induced cocycle.
    AtlasCheck {
        /// Atlas JSON file, or `torus` / `sphere`.
        #[arg(long)]
        atlas: String,
        /// `L^n`, `V_j`, `J^k(L^n)`, joined by ` x `.
        #[arg(long, allow_hyphen_values = true)]
        descriptor: Option<String>,
    },
}

fn parse_list<T: std::str::FromStr + Copy>(s: &str, flag: &str) -> Result<Vec<T>, CliError>
where
    std::ops::RangeInclusive<T>: Iterator<Item = T>,
{
    let bad = || CliError::Usage(format!("--{flag}: cannot parse `{s}`"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b): (T, T) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("--{flag}: empty range `{s}`")));
    }
    Ok(out)
}

fn list_or<T: std::str::FromStr + Copy>(arg: &Option<String>, flag: &str, default: &str) -> Result<Vec<T>, CliError>
where
    std::ops::RangeInclusive<T>: Iterator<Item = T>,
{
    parse_list(arg.as_deref().unwrap_or(default), flag)
}

fn load_atlas(spec: &str) -> Result<(ProjectiveAtlas, String), CliError> {
    match spec {
        "torus" => Ok((format::parse_atlas(TORUS_FIXTURE)?, "torus".into())),
        "sphere" => Ok((format::parse_atlas(SPHERE_FIXTURE)?, "sphere".into())),
        path => {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            Ok((format::parse_atlas(&text)?, path.to_string()))
        }
    }
}

fn nonneg(v: Vec<i64>, flag: &str) -> Result<Vec<usize>, CliError> {
    v.into_iter()
        .map(|x| usize::try_from(x).map_err(|_| CliError::Usage(format!("--{flag} must be nonnegative"))))
        .collect()
}

fn verify_reports(a: &VerifyArgs) -> Result<Vec<Report>, CliError> {
    let mut ctx = Ctx::new(a.seed);
    ctx.trials = a.trials;
    if a.height < 1 {
        return Err(CliError::Usage("--height must be at least 1".into()));
    }
    ctx.height = a.height;
    let ks = |d: &str| -> Result<Vec<usize>, CliError> { nonneg(list_or(&a.k, "k", d)?, "k") };
    let ns = |d: &str| list_or::<i64>(&a.n, "n", d);
    let rs = |d: &str| -> Result<Vec<usize>, CliError> {
        let r = nonneg(list_or(&a.r, "r", d)?, "r")?;
        if r.contains(&0) {
            return Err(CliError::Usage("--r must be positive".into()));
        }
        Ok(r)
    };
    let mut out = Vec::new();
    match a.target {
        Target::Thm1 | Target::Props234 | Target::Symbol => {
            let kd = if a.target == Target::Props234 { "1..5" } else { "0..5" };
            for k in ks(kd)? {
                for n in ns("-4..7")? {
                    out.push(match a.target {
                        Target::Thm1 => suites::thm1(&ctx, k, n),
                        Target::Props234 if k == 0 => return Err(CliError::Usage("props234 needs k >= 1".into())),
                        Target::Props234 => suites::props234(&ctx, k, n),
                        _ => suites::symbol_model(&ctx, k, n),
                    });
                }
            }
        }
        Target::Sequence => {
            for k in ks("0..5")? {
                for r in rs("1..2")? {
                    out.push(suites::sequence(&ctx, k, r));
                }
            }
        }
        Target::Lemma1 => {
            let n_list = nonneg(ns("0..4")?, "n")?;
            let pairs: Vec<(usize, usize)> = ks("1..5")?
                .into_iter()
                .flat_map(|k| n_list.iter().map(move |&n| (k, n)))
                .filter(|&(k, n)| k > n)
                .collect();
            if pairs.is_empty() {
                return Err(CliError::Usage("lemma1 needs k > n >= 0".into()));
            }
            for (k, n) in pairs {
                out.push(suites::lemma1(&ctx, k, n));
            }
        }
        Target::Prop1 => {
            for m in nonneg(list_or(&a.m, "m", "0..5")?, "m")? {
                for n in nonneg(ns("0..5")?, "n")? {
                    out.push(suites::prop1(&ctx, m, n));
                }
            }
        }
        Target::Lemma2 => {
            for k in ks("0..3")? {
                for n in ns("-2..3")? {
                    for r in rs("1..2")? {
                        out.push(suites::lemma2(&ctx, k, n, r));
                    }
                }
            }
        }
        Target::Cor1 => {
            let (atlas, name) = load_atlas(a.atlas.as_deref().unwrap_or("torus"))?;
            out.extend(suites::atlas_checks(&ctx, &atlas, &name));
            for k in ks("0..3")? {
                for n in ns("-2..3")? {
                    out.push(suites::cor1(&ctx, &atlas, &name, k, n));
                }
            }
        }
        Target::Thm2 => {
            let mut cases = Vec::new();
            for k in ks("0..3")? {
                let kk = k as i64;
                let pairs: Vec<(i64, i64)> = match (&a.n, &a.l) {
                    (None, None) => vec![(-1, -1), (kk, kk)],
                    _ => {
                        let n_list = ns(&format!("-1,{kk}"))?;
                        let l_list = list_or::<i64>(&a.l, "l", &format!("-1,{kk}"))?;
                        n_list.iter().flat_map(|&n| l_list.iter().map(move |&l| (n, l))).collect()
                    }
                };
                for (n, l) in pairs {
                    if lift_hypothesis(k, n, l) {
                        cases.push((k, n, l));
                    }
                }
            }
            if cases.is_empty() {
                return Err(CliError::Usage("no (k, n, l) satisfies: n < 0 (l outside [0, k)), or n, l >= k".into()));
            }
            for (k, n, l) in cases {
                for r in rs("1..2")? {
                    out.push(suites::thm2(&ctx, k, n, l, r));
                }
            }
        }
        Target::Remark => {
            for n in ns("-4..4")? {
                out.push(suites::remark(&ctx, n));
            }
        }
    }
    Ok(out)
}

fn compute(c: &Compute) -> Result<serde_json::Value, CliError> {
    Ok(match c {
        Compute::Cocycle { k, n, g, z0 } => {
            let g = format::from_json::<MoebiusJson>(g, "Moebius map")?.to_map()?;
            let z0 = format::parse_scalar(z0)?;
            format::matrix(&jet_cocycle(*k, *n, &g, &z0)?)
        }
        Compute::Intertwiner { k, n } => {
            let it = sl2jets::equiv::thm1_iso(*k, *n)?;
            let sigma: Vec<Vec<serde_json::Value>> = (0..it.sigma.rows())
                .map(|i| (0..it.sigma.cols()).map(|j| format::poly(it.sigma.entry(i, j))).collect())
                .collect();
            json!({
                "k": k,
                "n": n,
                "split": is_split(*k, *n),
                "model": suites::model_of(*k, *n),
                "sigma": sigma,
                "intertwiner_degrees": it.block_degrees,
                "schur_dimension": it.schur_dimension,
            })
        }
        Compute::Decompose { m, n } => json!({ "m": m, "n": n, "degrees": clebsch_degrees(*m, *n) }),
        Compute::Lift { k, n, l, theta, connection } => {
            let theta = format::parse_poly_matrix(theta, "theta")?;
            let spec = match connection {
                Some(c) => FlatConnectionSpec::new(format::parse_poly_matrix(c, "connection")?)?,
                None => FlatConnectionSpec::trivial(theta.len()),
            };
            let table = sl2jets::equiv::IsoTable::new();
            format::operator(&lift_symbol(&table, &theta, *k, *n, *l, &spec)?, *l)
        }
        Compute::AtlasCheck { atlas, descriptor } => {
            let (a, name) = load_atlas(atlas)?;
            let ctx = Ctx::new(0);
            let reports: Vec<serde_json::Value> = suites::atlas_checks(&ctx, &a, &name)
                .iter()
                .map(|r| serde_json::to_value(r).expect("report serializes"))
                .collect();
            let status = if check_atlas(&a).passed() { "pass" } else { "fail" };
            let sign_inconsistent = matches!(check_atlas(&a), AtlasCheck::SignInconsistent { .. });
            let mut out =
                json!({ "atlas": name, "status": status, "sign_inconsistent": sign_inconsistent, "checks": reports });
            if let Some(d) = descriptor {
                let d = Descriptor::parse(d)?;
                let cocycle = induced_cocycle(&a, &d)?;
                out["cocycle"] = json!({
                    "descriptor": d.to_string(),
                    "rank": cocycle.rank,
                    "overlaps": cocycle.overlaps.iter().map(|o| json!({
                        "from": o.from,
                        "to": o.to,
                        "values": o.values.iter().map(|(z, m)| json!({ "z": format::scalar(z), "matrix": format::matrix(m) })).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                });
            }
            out
        }
    })
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match &cli.cmd {
        Cmd::Verify(a) => {
            let start = Instant::now();
            verify_reports(a).map(|reports| {
                for r in &reports {
                    let line = if a.json { r.to_json() } else { r.to_line() };
                    let _ = writeln!(out, "{line}");
                }
                let failed = reports.iter().filter(|r| !r.passed()).count();
                let _ =
                    writeln!(err, "{} cases, {} failed, {:.2}s", reports.len(), failed, start.elapsed().as_secs_f64());
                i32::from(failed > 0)
            })
        }
        Cmd::Compute(c) => compute(c).map(|v| {
            let _ = writeln!(out, "{}", serde_json::to_string(&v).expect("json value"));
            let failed = v.get("status").and_then(|s| s.as_str()) == Some("fail");
            i32::from(failed)
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Built-in atlases, in the order the fixtures are written.
pub fn builtin_atlases() -> [(&'static str, ProjectiveAtlas); 2] {
    [("torus", torus_example()), ("sphere", sphere_example())]
}
