//! A registry of numerical identity checks and a runner that evaluates them over parameter grids.

mod checks;
pub mod limits;

use crate::error::{Error, Result};
use crate::index::Index;
use crate::quadrature::QuadConfig;
use crate::series::{Approx, EvalConfig, Route};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

/// A single named parameter of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Real(f64),
    Index(Index),
    Text(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Real(v) => write!(f, "{v}"),
            Param::Index(k) => write!(f, "({k})"),
            Param::Text(t) => write!(f, "{t}"),
        }
    }
}

/// Named parameters of one check instance.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(pub BTreeMap<String, Param>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn int(mut self, name: &str, v: i64) -> Self {
        self.0.insert(name.into(), Param::Int(v));
        self
    }

    pub fn real(mut self, name: &str, v: f64) -> Self {
        self.0.insert(name.into(), Param::Real(v));
        self
    }

    pub fn index(mut self, name: &str, k: &[u32]) -> Self {
        self.0
            .insert(name.into(), Param::Index(Index::new(k.to_vec()).expect("grid index")));
        self
    }

    pub fn text(mut self, name: &str, v: &str) -> Self {
        self.0.insert(name.into(), Param::Text(v.into()));
        self
    }

    fn get(&self, name: &str) -> Result<&Param> {
        self.0
            .get(name)
            .ok_or_else(|| Error::ParamOutOfRange(format!("missing parameter {name}")))
    }

    pub fn get_int(&self, name: &str) -> Result<i64> {
        match self.get(name)? {
            Param::Int(v) => Ok(*v),
            other => Err(Error::ParamOutOfRange(format!("{name} must be an integer, got {other}"))),
        }
    }

    /// A positive integer parameter.
    pub fn get_pos(&self, name: &str) -> Result<u32> {
        let v = self.get_int(name)?;
        if v < 1 || v > u32::MAX as i64 {
            return Err(Error::ParamOutOfRange(format!("{name} must be positive, got {v}")));
        }
        Ok(v as u32)
    }

    pub fn get_real(&self, name: &str) -> Result<f64> {
        match self.get(name)? {
            Param::Real(v) => Ok(*v),
            Param::Int(v) => Ok(*v as f64),
            other => Err(Error::ParamOutOfRange(format!("{name} must be a number, got {other}"))),
        }
    }

    pub fn get_index(&self, name: &str) -> Result<Index> {
        match self.get(name)? {
            Param::Index(k) if !k.is_empty() => Ok(k.clone()),
            other => Err(Error::ParamOutOfRange(format!("{name} must be a nonempty index, got {other}"))),
        }
    }

    pub fn get_text(&self, name: &str) -> Result<&str> {
        match self.get(name)? {
            Param::Text(t) => Ok(t),
            other => Err(Error::ParamOutOfRange(format!("{name} must be text, got {other}"))),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Catalog entry describing a check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckSpec {
    pub id: &'static str,
    /// Parameter names and their documented ranges.
    pub params: BTreeMap<&'static str, &'static str>,
    pub description: &'static str,
    pub paper_anchor: &'static str,
    pub base_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

/// Outcome of one check instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub params: Params,
    pub lhs: Approx,
    pub rhs: Approx,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub runtime_ms: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Residual of an alternative reading of an identity, kept for the record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Discrepancy {
    pub id: String,
    pub params: Params,
    pub reading: String,
    pub residual: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
    pub summary: Summary,
    pub discrepancies: Vec<Discrepancy>,
}

/// Numerical settings shared by every check.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub eval: EvalConfig,
    pub quad: QuadConfig,
    /// Overrides each check's base tolerance.
    pub tol: Option<f64>,
    /// Zero out wall-clock timings so that reports are byte-reproducible.
    pub no_meta: bool,
}

/// Which checks and grid points to run.
#[derive(Debug, Clone, Default)]
pub struct SuiteFilter {
    pub prefix: Option<String>,
    pub max_weight: Option<u32>,
    pub jobs: Option<usize>,
}

/// What a check computes before tolerances are applied.
pub(crate) struct Outcome {
    pub lhs: Approx,
    pub rhs: Approx,
    pub skip: Option<String>,
    pub note: Option<String>,
    pub alternatives: Vec<(String, Result<Approx>)>,
}

impl Outcome {
    pub fn new(lhs: Approx, rhs: Approx) -> Self {
        Outcome {
            lhs,
            rhs,
            skip: None,
            note: None,
            alternatives: Vec::new(),
        }
    }

    pub fn alternative(mut self, reading: &str, rhs: Result<Approx>) -> Self {
        self.alternatives.push((reading.to_string(), rhs));
        self
    }
}

pub fn list_checks() -> Vec<CheckSpec> {
    checks::registry().iter().map(|e| e.spec()).collect()
}

/// Default parameter grid of a check.
pub fn default_grid(id: &str) -> Result<Vec<Params>> {
    Ok((checks::find(id)?.grid)())
}

fn nan_approx() -> Approx {
    Approx {
        value: f64::NAN,
        err_bound: f64::NAN,
        route: Route::Series,
        terms_used: 0,
    }
}

fn run_one(entry: &checks::Entry, params: &Params, cfg: &SuiteConfig) -> (CheckResult, Vec<Discrepancy>) {
    let start = Instant::now();
    let outcome = (entry.run)(params, &checks::Ctx { cfg });
    let runtime_ms = if cfg.no_meta {
        0
    } else {
        start.elapsed().as_millis() as u64
    };
    let base = cfg.tol.unwrap_or(entry.base_tol);
    let mut discrepancies = Vec::new();
    let result = match outcome {
        Ok(o) => {
            let residual = (o.lhs.value - o.rhs.value).abs();
            let tol = base.max(10.0 * (o.lhs.err_bound + o.rhs.err_bound));
            let pass = o.skip.is_none() && residual <= tol;
            for (reading, alt) in o.alternatives {
                let residual = match alt {
                    Ok(a) => (o.lhs.value - a.value).abs(),
                    Err(_) => f64::NAN,
                };
                discrepancies.push(Discrepancy {
                    id: entry.id.to_string(),
                    params: params.clone(),
                    reading,
                    residual,
                });
            }
            let status = match o.skip {
                Some(reason) => {
                    discrepancies.push(Discrepancy {
                        id: entry.id.to_string(),
                        params: params.clone(),
                        reading: format!("skipped instance: {reason}"),
                        residual,
                    });
                    Status::Skipped(reason)
                }
                None if pass => Status::Pass,
                None => {
                    discrepancies.push(Discrepancy {
                        id: entry.id.to_string(),
                        params: params.clone(),
                        reading: "failure at tolerance".into(),
                        residual,
                    });
                    Status::Fail
                }
            };
            CheckResult {
                id: entry.id.to_string(),
                params: params.clone(),
                lhs: o.lhs,
                rhs: o.rhs,
                residual,
                tol,
                pass,
                runtime_ms,
                status,
                note: o.note,
            }
        }
        Err(e) => {
            let status = match &e {
                Error::Divergent(_) => Status::Skipped(e.to_string()),
                _ => Status::Fail,
            };
            CheckResult {
                id: entry.id.to_string(),
                params: params.clone(),
                lhs: nan_approx(),
                rhs: nan_approx(),
                residual: f64::NAN,
                tol: base,
                pass: false,
                runtime_ms,
                status,
                note: Some(e.to_string()),
            }
        }
    };
    (result, discrepancies)
}

/// Run a single check instance.
pub fn run_check(id: &str, params: &Params, cfg: &SuiteConfig) -> Result<CheckResult> {
    let entry = checks::find(id)?;
    Ok(run_one(entry, params, cfg).0)
}

/// Run a single check instance, also returning the residuals of alternative readings.
pub fn run_check_detailed(id: &str, params: &Params, cfg: &SuiteConfig) -> Result<(CheckResult, Vec<Discrepancy>)> {
    let entry = checks::find(id)?;
    Ok(run_one(entry, params, cfg))
}

/// Run every registered check over its default grid.
pub fn run_suite(filter: &SuiteFilter, cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.eval.validate()?;
    cfg.quad.validate()?;
    let mut jobs_list: Vec<(&checks::Entry, Params)> = Vec::new();
    for entry in checks::registry() {
        if let Some(prefix) = &filter.prefix {
            if !entry.id.starts_with(prefix.as_str()) {
                continue;
            }
        }
        for params in (entry.grid)() {
            if let Some(w) = filter.max_weight {
                if (entry.weight)(&params) > w {
                    continue;
                }
            }
            jobs_list.push((entry, params));
        }
    }
    let run = || -> Vec<(CheckResult, Vec<Discrepancy>)> {
        jobs_list
            .par_iter()
            .map(|(entry, params)| run_one(entry, params, cfg))
            .collect()
    };
    let outputs = match filter.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::ParamOutOfRange(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut summary = Summary::default();
    let mut results = Vec::with_capacity(outputs.len());
    let mut discrepancies = Vec::new();
    for (r, d) in outputs {
        summary.total += 1;
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skipped(_) => summary.skipped += 1,
        }
        results.push(r);
        discrepancies.extend(d);
    }
    Ok(SuiteReport {
        results,
        summary,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    const REQUIRED: &[&str] = &[
        "EQ17", "THM28", "THM29", "COR210", "COR211", "THM211", "THM213", "THM214", "THM215",
        "LEM216", "THM217", "CCD1", "THM218", "ETADUAL", "C1", "THM31", "THM33", "SER-BC",
        "LM-D10", "LM-D14", "LM-D15", "LM-D19", "PROP25", "LEM27", "PROP212", "ODE",
    ];

    #[test]
    fn registry_is_complete_and_unique() {
        let specs = list_checks();
        let ids: HashSet<&str> = specs.iter().map(|s| s.id).collect();
        assert_eq!(ids.len(), specs.len());
        for id in REQUIRED {
            assert!(ids.contains(id), "missing {id}");
        }
        let thm31 = specs.iter().find(|s| s.id == "THM31").unwrap();
        assert_eq!(thm31.paper_anchor, "Theorem 3.1");
        for s in &specs {
            assert!(!default_grid(s.id).unwrap().is_empty(), "{} has an empty grid", s.id);
        }
    }

    #[test]
    fn eta_duality_example() {
        let r = run_check("ETADUAL", &Params::new().int("k", 2).int("p", 3), &SuiteConfig::default()).unwrap();
        assert!(r.pass && r.residual <= 1e-7, "{r:?}");
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn word_identity_is_exact() {
        let r = run_check("PROP212", &Params::new().int("m", 3).int("n", 2), &SuiteConfig::default()).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn psi_duality_single_term() {
        let r = run_check("C1", &Params::new().int("r", 1).int("k", 2).int("m", 1), &SuiteConfig::default()).unwrap();
        assert!(r.residual <= 1e-6, "{r:?}");
    }

    #[test]
    fn unknown_id_is_an_error() {
        assert!(matches!(
            run_check("NOPE", &Params::new(), &SuiteConfig::default()),
            Err(Error::UnknownCheck(_))
        ));
    }

    #[test]
    fn bad_parameters_become_failed_results() {
        let r = run_check("ETADUAL", &Params::new().int("k", 0).int("p", 3), &SuiteConfig::default()).unwrap();
        assert!(!r.pass);
        assert_eq!(r.status, Status::Fail);
        assert!(r.note.unwrap().contains("positive"));
    }

    #[test]
    fn divergent_instances_are_skipped() {
        // s = 1 makes the zeta-function side divergent
        let p = Params::new().int("r", 1).int("k", 2).real("s", 1.0);
        let r = run_check("EQ17", &p, &SuiteConfig::default()).unwrap();
        assert!(matches!(r.status, Status::Skipped(_)), "{r:?}");
        assert!(!r.pass);
    }

    #[test]
    fn printed_reading_is_reported() {
        let p = Params::new().int("j", 1).int("r", 2).real("s", 2.0);
        let (r, d) = run_check_detailed("THM214", &p, &SuiteConfig::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(d.len(), 1);
        assert!(d[0].residual > 1e-3);
    }

    #[test]
    fn suite_filter_and_determinism() {
        let cfg = SuiteConfig {
            no_meta: true,
            ..SuiteConfig::default()
        };
        let filter = SuiteFilter {
            prefix: Some("COR21".into()),
            max_weight: Some(3),
            jobs: Some(2),
        };
        let a = run_suite(&filter, &cfg).unwrap();
        let b = run_suite(&filter, &cfg).unwrap();
        assert!(a.results.iter().all(|r| r.id.starts_with("COR21")));
        assert_eq!(a.summary.total, a.summary.passed);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn params_round_trip_through_json() {
        let p = Params::new().int("k", 2).real("z", 0.5).index("K", &[1, 2]).text("form", "ones");
        let s = serde_json::to_string(&p).unwrap();
        let back: Params = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
        assert_eq!(p.to_string(), "K=(1,2);form=ones;k=2;z=0.5");
    }
}
