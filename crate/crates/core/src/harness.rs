//! Batch driver: JSON run configurations, the model catalog, and sweeps that
//! merge per-check records into one deterministic report.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};

use crate::derham::{relative_sequence_check, verify_cor51};
use crate::error::{invalid, Error, Result};
use crate::koszul::{augmentation_zero_check, structure_check, twist_for, verify_thm42_i, verify_thm42_ii, verify_thm42_iii, GradedKoszul};
use crate::minexp::{cor23_check, cor24_check, lct_consistency, minexp_formula, minexp_monomial, psi_hodge_dim, thm22_check};
use crate::model::MonomialModel;
use crate::rational::{parse_q, qi, Q};
use crate::report::{CheckRecord, Report};
use crate::snc::{jump_candidates, lct_from_resolution, multiplier_ideal_snc, ResolutionNumerics};
use crate::table::TruncationBox;
use crate::vfilt::{check_v_axioms, exhaustion_check, gr_dim, saito_check, t_shift_check, GrMode};

pub const DEFAULT_BOX: i64 = 6;
pub const DEFAULT_PMAX: u32 = 3;
pub const JOBS_ENV: &str = "MINEXP_LAB_JOBS";
/// Random operator multiples per `(model, α)` in the monodromy check.
pub const THM42_SAMPLES: usize = 20;
const SEED: u64 = 0x5eed;

pub const COMMANDS: &[&str] = &[
    "lct",
    "minexp",
    "jumps",
    "vfilt",
    "psi-dims",
    "verify-thm42",
    "verify-cor23",
    "verify-cor24",
    "verify-cor51",
    "verify-axioms",
    "catalog",
];

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum AlphaSpec {
    #[default]
    AllJumps,
    List(Vec<Q>),
}

impl AlphaSpec {
    /// Accepts `all-jumps` or a comma-separated list of rationals.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "all-jumps" {
            return Ok(AlphaSpec::AllJumps);
        }
        s.split(',').map(parse_q).collect::<Result<Vec<_>>>().map(AlphaSpec::List)
    }

    fn resolve(&self, model: &MonomialModel, lo: &Q, hi: &Q, closed: bool) -> Result<Vec<Q>> {
        match self {
            AlphaSpec::AllJumps => {
                let mut js = jump_candidates(&model.divisor(), lo, hi)?;
                if !closed {
                    js.retain(|a| a < hi);
                }
                Ok(js)
            }
            AlphaSpec::List(xs) => Ok(xs.clone()),
        }
    }
}

impl<'de> Deserialize<'de> for AlphaSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Value::deserialize(d)?;
        let parsed = match &v {
            Value::String(s) => AlphaSpec::parse(s),
            Value::Number(x) => AlphaSpec::parse(&x.to_string()),
            Value::Array(xs) => xs
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_q(s),
                    Value::Number(n) => parse_q(&n.to_string()),
                    _ => Err(Error::Parse(format!("bad alpha {x}"))),
                })
                .collect::<Result<Vec<_>>>()
                .map(AlphaSpec::List),
            _ => Err(Error::Parse(format!("bad alpha {v}"))),
        };
        parsed.map_err(D::Error::custom)
    }
}

impl Serialize for AlphaSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            AlphaSpec::AllJumps => s.serialize_str("all-jumps"),
            AlphaSpec::List(xs) => xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s),
        }
    }
}

/// One batch run. Without a `model`, model-based commands sweep the catalog.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    #[serde(default)]
    pub model: Option<MonomialModel>,
    #[serde(default)]
    pub pairs: Option<Vec<(u64, u64)>>,
    #[serde(default)]
    pub alpha: AlphaSpec,
    #[serde(default)]
    pub pmax: Option<u32>,
    #[serde(default, rename = "box")]
    pub radius: Option<i64>,
    #[serde(default)]
    pub mode: Option<GrMode>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig { command: command.to_string(), ..Default::default() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn pmax(&self) -> u32 {
        self.pmax.unwrap_or(DEFAULT_PMAX)
    }

    pub fn radius(&self) -> i64 {
        self.radius.unwrap_or(DEFAULT_BOX)
    }
}

/// All models with `n ≤ 3`, `1 ≤ r ≤ n` and exponents in `1..=4`; the smooth
/// model `n = 1, a = (1)` comes first.
pub fn catalog() -> Vec<MonomialModel> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        for r in 1..=n {
            let mut a = vec![1u32; r];
            loop {
                out.push(MonomialModel::new(n, a.clone()).expect("catalog model"));
                let Some(i) = (0..r).rev().find(|&i| a[i] < 4) else { break };
                a[i] += 1;
                a[i + 1..].iter_mut().for_each(|x| *x = 1);
            }
        }
    }
    out
}

/// The `--jobs` value after the environment override.
pub fn effective_jobs(flag: Option<usize>) -> Result<Option<usize>> {
    match std::env::var(JOBS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::Parse(format!("{JOBS_ENV}={v} is not a job count"))),
        Err(_) => Ok(flag),
    }
}

type Task = (MonomialModel, Option<Q>);

struct Outcome {
    checks: Vec<CheckRecord>,
    result: Value,
}

fn models(cfg: &RunConfig) -> Vec<MonomialModel> {
    cfg.model.clone().map(|m| vec![m]).unwrap_or_else(catalog)
}

fn box_for(cfg: &RunConfig, model: &MonomialModel) -> TruncationBox {
    TruncationBox::radius(model.n(), cfg.radius(), cfg.pmax() as i64)
}

/// The bound `radius ≥ p_max + max a_i` ensures every `∂_t`-order up to `p_max`
/// has a nonnegative-degree term inside the box; it is recorded, not enforced.
fn box_note(cfg: &RunConfig) -> Value {
    let amax = models(cfg).iter().flat_map(|m| m.exponents().to_vec()).max().unwrap_or(1) as i64;
    let required = cfg.pmax() as i64 + amax;
    json!({
        "radius": cfg.radius(),
        "pmax": cfg.pmax(),
        "required": required,
        "sufficient": cfg.radius() >= required,
    })
}

fn tasks(cfg: &RunConfig, closed: bool) -> Result<Vec<Task>> {
    let mut out = Vec::new();
    for m in models(cfg) {
        for a in cfg.alpha.resolve(&m, &qi(0), &qi(1), closed)? {
            out.push((m.clone(), Some(a)));
        }
    }
    Ok(out)
}

fn per_model(cfg: &RunConfig) -> Vec<Task> {
    models(cfg).into_iter().map(|m| (m, None)).collect()
}

fn task_label(model: &MonomialModel, alpha: &Option<Q>) -> Value {
    match alpha {
        Some(a) => json!({"model": model.to_string(), "alpha": a.to_string()}),
        None => json!({"model": model.to_string()}),
    }
}

fn sweep<F>(tasks: Vec<Task>, f: F) -> Result<(Vec<CheckRecord>, Vec<Value>)>
where
    F: Fn(&MonomialModel, Option<&Q>) -> Result<Outcome> + Sync,
{
    let outcomes: Vec<Result<Outcome>> = tasks.par_iter().map(|(m, a)| f(m, a.as_ref())).collect();
    let mut checks = Vec::new();
    let mut results = Vec::new();
    for ((m, a), o) in tasks.iter().zip(outcomes) {
        let o = o?;
        checks.extend(o.checks);
        if !o.result.is_null() {
            let mut label = task_label(m, a);
            label["value"] = o.result;
            results.push(label);
        }
    }
    Ok((checks, results))
}

fn require_alpha(alpha: Option<&Q>) -> &Q {
    alpha.expect("task carries a V-index")
}

fn dispatch(cfg: &RunConfig) -> Result<Report> {
    let pmax = cfg.pmax();
    let cmd = cfg.command.as_str();
    let (checks, result) = match cmd {
        "lct" => {
            let Some(pairs) = cfg.pairs.clone() else {
                return invalid("lct needs `pairs`");
            };
            let lct = lct_from_resolution(&ResolutionNumerics::new(pairs)?)?;
            (Vec::new(), json!({"lct": lct.to_string()}))
        }
        "catalog" => {
            let list: Vec<Value> = catalog().iter().map(|m| serde_json::to_value(m).expect("model serializes")).collect();
            (Vec::new(), json!({"models": list}))
        }
        "minexp" => {
            let (checks, results) = sweep(per_model(cfg), |m, _| {
                let res = minexp_monomial(m, pmax.max(1))?;
                let formula = minexp_formula(m);
                let mut agree = CheckRecord::new("minexp_formula").input("model", m).detail("formula", &formula);
                agree.require(formula == res.value, || format!("membership {} vs formula {formula}", res.value));
                let checks = vec![agree, lct_consistency(m, pmax.max(1))?, thm22_check(m, pmax.max(1))?];
                Ok(Outcome { checks, result: json!(res.value.to_string()) })
            })?;
            let result = match (&cfg.model, results.as_slice()) {
                (Some(_), [one]) => json!({"minexp": one["value"]}),
                _ => json!({"minexp": results}),
            };
            (checks, result)
        }
        "jumps" => {
            let (checks, results) = sweep(per_model(cfg), |m, _| {
                let js: Vec<Value> = jump_candidates(&m.divisor(), &qi(0), &qi(1))?
                    .into_iter()
                    .map(|a| {
                        let ideal = multiplier_ideal_snc(&m.divisor(), &a).expect("positive index").coeffs;
                        json!({"alpha": a.to_string(), "multiplier_ideal": ideal})
                    })
                    .collect();
                Ok(Outcome { checks: Vec::new(), result: json!(js) })
            })?;
            (checks, json!({"jumps": results}))
        }
        "vfilt" => {
            let mode = cfg.mode.unwrap_or(GrMode::GrV);
            let (checks, results) = sweep(tasks(cfg, true)?, |m, a| {
                let bx = box_for(cfg, m);
                let tables: Vec<Value> = (-(m.n() as i64)..=pmax as i64)
                    .map(|p| gr_dim(p, require_alpha(a), &bx, m, mode).map(|t| t.to_json()))
                    .collect::<Result<_>>()?;
                Ok(Outcome { checks: Vec::new(), result: json!(tables) })
            })?;
            (checks, json!({"mode": mode.to_string(), "tables": results}))
        }
        "psi-dims" => {
            let (checks, results) = sweep(tasks(cfg, true)?, |m, a| {
                let bx = box_for(cfg, m);
                let tables: Vec<Value> = (0..=pmax as i64 + 1)
                    .map(|p| psi_hodge_dim(p, require_alpha(a), &bx, m).map(|t| t.to_json()))
                    .collect::<Result<_>>()?;
                Ok(Outcome { checks: Vec::new(), result: json!(tables) })
            })?;
            (checks, json!({"tables": results}))
        }
        "verify-thm42" => {
            let (checks, _) = sweep(tasks(cfg, true)?, |m, a| {
                let alpha = require_alpha(a);
                let bx = box_for(cfg, m);
                let gk = GradedKoszul::new(m);
                let range = -(m.n() as i64)..=pmax as i64;
                let mut checks = verify_thm42_i(&gk, alpha, range.clone(), &bx)?;
                checks.extend(verify_thm42_ii(&gk, alpha, range, &bx)?);
                checks.push(verify_thm42_iii(m, alpha, THM42_SAMPLES, SEED)?);
                checks.push(augmentation_zero_check(m, alpha, 3, SEED)?);
                checks.push(structure_check(m, &twist_for(m, alpha)?, SEED)?);
                Ok(Outcome { checks, result: Value::Null })
            })?;
            (checks, Value::Null)
        }
        "verify-cor23" | "verify-cor24" => {
            let (checks, _) = sweep(tasks(cfg, false)?, |m, a| {
                let alpha = require_alpha(a);
                let bx = box_for(cfg, m);
                let am = minexp_formula(m);
                let mut checks = Vec::new();
                for p in 0..=pmax {
                    if cmd == "verify-cor23" {
                        checks.push(cor23_check(m, p, alpha, &bx)?);
                    } else if am.ge(&qi(p as i64)) {
                        checks.push(cor24_check(m, p, alpha, &bx)?);
                    }
                }
                Ok(Outcome { checks, result: Value::Null })
            })?;
            (checks, Value::Null)
        }
        "verify-cor51" => {
            let mut checks = Vec::new();
            for m in models(cfg) {
                for q in 0..=m.n() {
                    checks.push(relative_sequence_check(&m, q)?);
                }
            }
            let (more, _) = sweep(tasks(cfg, true)?, |m, a| {
                let bx = box_for(cfg, m);
                let checks = verify_cor51(m, require_alpha(a), 0..=(m.n() as i64 - 1), &bx)?;
                Ok(Outcome { checks, result: Value::Null })
            })?;
            checks.extend(more);
            (checks, Value::Null)
        }
        "verify-axioms" => {
            let (mut checks, _) = sweep(tasks(cfg, true)?, |m, a| {
                let alpha = require_alpha(a);
                let bx = box_for(cfg, m);
                let checks = vec![check_v_axioms(m, alpha, &bx)?, t_shift_check(m, alpha, &bx)?];
                Ok(Outcome { checks, result: Value::Null })
            })?;
            let (more, _) = sweep(per_model(cfg), |m, _| {
                let mut checks = vec![exhaustion_check(m, &box_for(cfg, m))?];
                for a in jump_candidates(&m.divisor(), &qi(0), &qi(1))? {
                    for p in 0..=pmax {
                        checks.push(saito_check(m, p, &a)?);
                    }
                }
                Ok(Outcome { checks, result: Value::Null })
            })?;
            checks.extend(more);
            (checks, Value::Null)
        }
        other => return invalid(format!("unknown command `{other}`; expected one of {}", COMMANDS.join(", "))),
    };
    let mut report = Report::new(cmd, checks);
    let mut result = if result.is_null() { json!({}) } else { result };
    if !matches!(cmd, "lct" | "catalog") {
        result["box"] = box_note(cfg);
    }
    report = report.with_result(result);
    Ok(report)
}

/// Runs one configuration on a pool of `jobs` threads (all cores when unset).
pub fn run(cfg: &RunConfig) -> Result<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = effective_jobs(cfg.jobs)? {
        if j == 0 {
            return invalid("job count must be positive");
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::InvalidInput(e.to_string()))?;
    pool.install(|| dispatch(cfg))
}
