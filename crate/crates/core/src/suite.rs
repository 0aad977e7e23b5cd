//! Randomized certification runs over seeded instances, and the JSON report.
//!
//! Every trial draws its instance from `RngState::child(check_id, trial)`, so a
//! report depends only on the configuration, never on thread scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::{
    random_commuting_pair, random_matrix, random_ordered_pair, random_pd, Ensemble, Fixture, PDMatrix, RngState,
};
use crate::matrix_inequalities::{self as mi, loewner_sign, run_matrix_check, MatrixCheckInput};
use crate::scalar_inequalities::{self as si, probe_monotonicity, MonotoneFunctionId};
use crate::scalar_means::{min_max_weight, PositivePair, Weight};
use crate::verdict::InequalityVerdict;
use crate::{MATRIX_TOL, SCALAR_TOL};

pub const SCHEMA_VERSION: &str = "1";

pub const SCALAR_IDS: [&str; 9] = [
    si::HH_QUAD,
    si::HH_MUL,
    si::LOGQ,
    si::AH_QUAD,
    si::AH_KANTO,
    si::AH_SQ,
    si::GH_QUAD,
    si::GH_MUL,
    si::CHAIN,
];

/// Scalar pairs are drawn log-uniformly from this range.
pub const SCALAR_RANGE: (f64, f64) = (1e-3, 1e3);

/// Every check id, scalar first, then the monotonicity probes, then matrix.
pub fn check_ids() -> Vec<String> {
    let mut ids: Vec<String> = SCALAR_IDS.iter().map(|s| s.to_string()).collect();
    ids.extend(MonotoneFunctionId::ALL.iter().map(|m| m.check_id()));
    ids.extend(mi::ALL.iter().map(|s| s.to_string()));
    ids
}

/// Expand exact ids and trailing-`*` globs, keeping registry order within a
/// glob and dropping repeats.
pub fn expand_families(families: &[String]) -> Result<Vec<String>> {
    let all = check_ids();
    let mut out: Vec<String> = Vec::new();
    for pattern in families {
        let hits: Vec<&String> = match pattern.strip_suffix('*') {
            Some(prefix) => all.iter().filter(|id| id.starts_with(prefix)).collect(),
            None => all.iter().filter(|id| *id == pattern).collect(),
        };
        if hits.is_empty() {
            return Err(Error::Config(format!("no check matches {pattern:?}")));
        }
        for id in hits {
            if !out.contains(id) {
                out.push(id.clone());
            }
        }
    }
    Ok(out)
}

pub fn default_tol(check_id: &str) -> f64 {
    if check_id.starts_with("M-") {
        MATRIX_TOL
    } else {
        SCALAR_TOL
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScalarCheckInput {
    pub pair: Option<PositivePair>,
    pub t: Option<Weight>,
    pub tau: Option<Weight>,
    pub nu: Option<Weight>,
}

#[derive(Debug, Clone)]
pub enum CheckInput {
    Scalar(ScalarCheckInput),
    Probe { c: f64, grid: usize },
    Matrix(MatrixCheckInput),
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Config(format!("missing {name}")))
}

fn run_scalar_check(id: &str, s: &ScalarCheckInput, tol_rel: f64) -> Result<InequalityVerdict> {
    let p = need(&s.pair, "a/b")?;
    let t = || need(&s.t, "t");
    let tau = || need(&s.tau, "tau");
    let nu = || need(&s.nu, "nu");
    match id {
        si::HH_QUAD => si::check_hh_quadratic(p, t()?, tau()?, tol_rel),
        si::HH_MUL => si::check_hh_multiplicative(p, t()?, tau()?, tol_rel),
        si::LOGQ => si::check_quotient_log_comparison(p, t()?, tau()?, tol_rel),
        si::AH_QUAD => si::check_arith_har_quadratic(p, nu()?, tau()?, tol_rel),
        si::AH_KANTO => si::check_arith_har_kantorovich(p, t()?, tol_rel),
        si::AH_SQ => si::check_arith_har_square(p, nu()?, tau()?, tol_rel),
        si::GH_QUAD => si::check_geo_har_quadratic(p, nu()?, tau()?, tol_rel),
        si::GH_MUL => si::check_geo_har_multiplicative(p, nu()?, tau()?, tol_rel),
        si::CHAIN => si::check_linear_quadratic_chain(p, t()?, tol_rel),
        _ => Err(Error::Config(format!("unknown scalar check {id:?}"))),
    }
}

/// Evaluate check `id` on `input`.
pub fn evaluate(id: &str, input: &CheckInput, tol_rel: f64) -> Result<InequalityVerdict> {
    match input {
        CheckInput::Scalar(s) => run_scalar_check(id, s, tol_rel),
        CheckInput::Matrix(m) => run_matrix_check(id, m, tol_rel),
        CheckInput::Probe { c, grid } => {
            let probe = id
                .strip_prefix("S-MONO-")
                .ok_or_else(|| Error::Config(format!("{id:?} is not a monotonicity probe")))?;
            probe_monotonicity(probe.parse()?, *c, *grid, tol_rel)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub families: Vec<String>,
    pub trials: usize,
    pub dims: [usize; 2],
    pub cond_max: f64,
    pub seed: u64,
    /// `None` uses the per-check default.
    pub tol_rel: Option<f64>,
    pub weight_grid: usize,
    pub output_path: Option<String>,
    pub self_test_negative: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            families: vec!["S-*".into(), "M-*".into()],
            trials: 100,
            dims: [1, 8],
            cond_max: 1e4,
            seed: 0,
            tol_rel: None,
            weight_grid: si::DEFAULT_GRID,
            output_path: None,
            self_test_negative: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.families.is_empty() {
            return bad("no check families selected".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        let [lo, hi] = self.dims;
        if lo == 0 || lo > hi || hi > 16 {
            return bad(format!("dims {lo}..{hi} must satisfy 1 <= lo <= hi <= 16"));
        }
        if !(self.cond_max.is_finite() && self.cond_max >= 1.0) {
            return bad(format!("cond_max = {} must be finite and >= 1", self.cond_max));
        }
        if let Some(tol) = self.tol_rel {
            if !(tol.is_finite() && tol > 0.0) {
                return bad(format!("tol_rel = {tol} must be positive"));
            }
        }
        if self.weight_grid < 3 {
            return bad(format!("weight_grid = {} must be at least 3", self.weight_grid));
        }
        Ok(())
    }

    fn tol_for(&self, id: &str) -> f64 {
        self.tol_rel.unwrap_or_else(|| default_tol(id))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckSummary {
    pub check_id: String,
    pub trials: usize,
    pub failures: usize,
    /// Trials that raised an error instead of a verdict (counted in `failures`).
    pub errors: usize,
    pub worst_margin: f64,
    pub mean_margin: f64,
    pub worst_case_params: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_case_fixture: Option<Fixture>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema_version: String,
    pub version: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckSummary>,
    pub overall_pass: bool,
    pub wall_time_s: f64,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Range {
    Closed,
    Open,
}

fn sample_weight(rng: &mut RngState, grid: usize, range: Range) -> Weight {
    loop {
        let t = if rng.coin() {
            rng.index(grid) as f64 / (grid - 1) as f64
        } else {
            rng.uniform(0.0, 1.0)
        };
        if range == Range::Closed || (t > 0.0 && t < 1.0) {
            return Weight::new(t).expect("weight in [0, 1]");
        }
    }
}

// t in [0, r(tau)] or [R(tau), 1]
fn sample_outside_band(rng: &mut RngState, grid: usize, tau: Weight) -> Weight {
    let (r, _) = min_max_weight(tau);
    let u = sample_weight(rng, grid, Range::Closed).value() * r;
    let t = if rng.coin() { 1.0 - u } else { u };
    Weight::new(t).expect("weight in [0, 1]")
}

fn sample_pair(rng: &mut RngState) -> PositivePair {
    let (lo, hi) = SCALAR_RANGE;
    PositivePair::new(rng.log_uniform(lo, hi), rng.log_uniform(lo, hi)).expect("ratio within range")
}

fn sample_scalar(id: &str, grid: usize, rng: &mut RngState) -> ScalarCheckInput {
    use Range::*;
    let mut w = |range| Some(sample_weight(rng, grid, range));
    let (t, tau, nu) = match id {
        si::HH_QUAD => (w(Closed), w(Open), None),
        si::HH_MUL => (w(Open), w(Open), None),
        si::LOGQ => (w(Open), w(Closed), None),
        si::AH_QUAD => (None, w(Closed), w(Closed)),
        si::AH_KANTO => (w(Open), None, None),
        si::AH_SQ | si::GH_QUAD | si::GH_MUL => (None, w(Open), w(Open)),
        _ => (w(Closed), None, None),
    };
    let mut pair = sample_pair(rng);
    if id == si::LOGQ {
        while pair.is_degenerate() {
            pair = sample_pair(rng);
        }
    }
    let mut input = ScalarCheckInput { pair: Some(pair), t, tau, nu };
    if id == si::GH_QUAD {
        // the check is stated only for (tau - nu)(b - a) > 0
        loop {
            let (nu, tau) = (input.nu.unwrap().value(), input.tau.unwrap().value());
            let p = input.pair.unwrap();
            let s = (tau - nu) * (p.b() - p.a());
            if s > 0.0 {
                break;
            }
            if s < 0.0 {
                input.pair = Some(p.swapped());
            } else {
                input.pair = Some(sample_pair(rng));
                input.nu = Some(sample_weight(rng, grid, Open));
            }
        }
    }
    input
}

fn ensemble(rng: &mut RngState) -> Ensemble {
    if rng.coin() {
        Ensemble::Complex
    } else {
        Ensemble::Real
    }
}

fn sample_matrix(id: &str, cfg: &SuiteConfig, rng: &mut RngState) -> Result<MatrixCheckInput> {
    use Range::*;
    let [lo, hi] = cfg.dims;
    let dim = lo + rng.index(hi - lo + 1);
    let ens = ensemble(rng);
    let cond = cfg.cond_max;
    let grid = cfg.weight_grid;
    let independent = |rng: &mut RngState| -> Result<(PDMatrix, PDMatrix)> {
        Ok((random_pd(dim, cond, ens, rng)?, random_pd(dim, cond, ens, rng)?))
    };
    let mut input = match id {
        mi::HH_MUL | mi::AH_KANTO => {
            let (a, b) = random_commuting_pair(dim, cond, ens, rng)?;
            MatrixCheckInput { a, b: Some(b), x: None, t: None, tau: None, nu: None }
        }
        mi::AH | mi::AH_DET | mi::GH | mi::GH_DET => {
            let commuting = rng.coin();
            let (a, b) = random_ordered_pair(dim, cond, ens, commuting, rng)?;
            MatrixCheckInput { a, b: Some(b), x: None, t: None, tau: None, nu: None }
        }
        mi::MINK => {
            let half = 0.5 * cond.ln();
            let list = |rng: &mut RngState| -> Vec<f64> {
                (0..dim).map(|_| rng.uniform(-half, half).exp()).collect()
            };
            let (a, b) = (list(rng), list(rng));
            MatrixCheckInput { a: PDMatrix::diag(&a)?, b: Some(PDMatrix::diag(&b)?), x: None, t: None, tau: None, nu: None }
        }
        mi::INVN => MatrixCheckInput { a: random_pd(dim, cond, ens, rng)?, b: None, x: None, t: None, tau: None, nu: None },
        _ => {
            let (a, b) = independent(rng)?;
            MatrixCheckInput { a, b: Some(b), x: None, t: None, tau: None, nu: None }
        }
    };
    let mut w = |range| Some(sample_weight(rng, grid, range));
    match id {
        mi::SAND | mi::YH_ID => input.t = w(Closed),
        mi::HH_QUAD | mi::HH_TR => (input.t, input.tau) = (w(Closed), w(Open)),
        mi::HH_DET => {
            let tau = sample_weight(rng, grid, Open);
            input.tau = Some(tau);
            input.t = Some(sample_outside_band(rng, grid, tau));
        }
        mi::HH_MUL | mi::AH_KANTO => input.t = w(Open),
        mi::AH | mi::GH => (input.nu, input.tau) = (w(Closed), w(Closed)),
        mi::AH_DET | mi::GH_DET => (input.nu, input.tau) = (w(Open), w(Closed)),
        mi::YH_HS | mi::YH_GEO => {
            input.t = w(Closed);
            input.x = Some(random_matrix(dim, dim, ens, rng));
        }
        _ => {}
    }
    if matches!(id, mi::AH_DET | mi::GH | mi::GH_DET) {
        // orient the weights so that (tau - nu)(B - A) >= 0
        let b = input.b.as_ref().expect("pair");
        let up = loewner_sign(&input.a, b, cfg.tol_for(id))?;
        let (nu, tau) = (input.nu.unwrap(), input.tau.unwrap());
        let wrong = match up {
            std::cmp::Ordering::Greater => tau.value() < nu.value(),
            std::cmp::Ordering::Less => tau.value() > nu.value(),
            std::cmp::Ordering::Equal => false,
        };
        if wrong {
            if id == mi::GH {
                (input.nu, input.tau) = (Some(tau), Some(nu));
            } else {
                // nu must stay interior: reflect instead of swapping
                input.tau = Some(Weight::new(2.0 * nu.value() - tau.value()).unwrap_or(nu));
            }
        }
    }
    Ok(input)
}

/// Draw the instance of trial `index` of check `id`.
pub fn sample(id: &str, cfg: &SuiteConfig, root: &RngState, index: u64) -> Result<CheckInput> {
    let mut rng = root.child(id, index);
    if id.starts_with("M-") {
        return Ok(CheckInput::Matrix(sample_matrix(id, cfg, &mut rng)?));
    }
    if let Some(name) = id.strip_prefix("S-MONO-") {
        let probe: MonotoneFunctionId = name.parse()?;
        let (lo, hi) = SCALAR_RANGE;
        loop {
            let c = if probe.accepts(0.5) { rng.log_uniform(lo, hi) } else { rng.log_uniform(1.0, hi) };
            if probe.accepts(c) {
                return Ok(CheckInput::Probe { c, grid: cfg.weight_grid });
            }
        }
    }
    Ok(CheckInput::Scalar(sample_scalar(id, cfg.weight_grid, &mut rng)))
}

fn run_trial(id: &str, cfg: &SuiteConfig, root: &RngState, index: u64, negate: bool) -> Result<InequalityVerdict> {
    let input = sample(id, cfg, root, index)?;
    let v = evaluate(id, &input, cfg.tol_for(id))?;
    let v = if negate { v.flipped() } else { v };
    Ok(v.param("trial", index as f64))
}

fn fixture_of(input: &CheckInput) -> Option<Fixture> {
    match input {
        CheckInput::Matrix(m) => Some(Fixture::from_matrices(
            m.a.matrix(),
            m.b.as_ref().map(|b| b.matrix()),
            m.x.as_ref(),
        )),
        _ => None,
    }
}

fn summarize(id: &str, cfg: &SuiteConfig, root: &RngState, results: Vec<Result<InequalityVerdict>>) -> CheckSummary {
    let trials = results.len();
    let mut failures = 0;
    let mut errors = 0;
    let mut first_error = None;
    let mut margin_sum = 0.0;
    let mut verdicts = 0usize;
    let mut worst: Option<InequalityVerdict> = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => {
                if !v.holds {
                    failures += 1;
                }
                margin_sum += v.margin;
                verdicts += 1;
                if worst.as_ref().is_none_or(|w| v.slack() < w.slack()) {
                    worst = Some(v);
                }
            }
            Err(e) => {
                failures += 1;
                errors += 1;
                first_error.get_or_insert_with(|| format!("trial {i}: {e}"));
            }
        }
    }
    let (worst_margin, worst_case_params, worst_case_fixture) = match worst {
        Some(v) => {
            let index = v.params["trial"] as u64;
            let fixture = sample(id, cfg, root, index).ok().as_ref().and_then(fixture_of);
            (v.margin, v.params, fixture)
        }
        None => (f64::NAN, BTreeMap::new(), None),
    };
    CheckSummary {
        check_id: id.to_string(),
        trials,
        failures,
        errors,
        worst_margin,
        mean_margin: if verdicts > 0 { margin_sum / verdicts as f64 } else { f64::NAN },
        worst_case_params,
        worst_case_fixture,
        first_error,
    }
}

/// Run every selected check `cfg.trials` times. With `self_test_negative` the
/// first selected check is asserted in the wrong direction.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let ids = expand_families(&cfg.families)?;
    let start = Instant::now();
    let root = RngState::new(cfg.seed);
    let mut checks = Vec::with_capacity(ids.len());
    for (k, id) in ids.iter().enumerate() {
        let negate = cfg.self_test_negative && k == 0;
        let results: Vec<Result<InequalityVerdict>> = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|i| run_trial(id, cfg, &root, i, negate))
            .collect();
        checks.push(summarize(id, cfg, &root, results));
    }
    let overall_pass = checks.iter().all(|c| c.failures == 0);
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        checks,
        overall_pass,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(families: &[&str], trials: usize) -> SuiteConfig {
        SuiteConfig {
            families: families.iter().map(|s| s.to_string()).collect(),
            trials,
            dims: [1, 4],
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn family_expansion() {
        let ids = expand_families(&["S-MONO-*".into()]).unwrap();
        assert_eq!(ids.len(), 7);
        let ids = expand_families(&["M-*".into(), "M-SAND".into()]).unwrap();
        assert_eq!(ids.len(), 15);
        assert_eq!(expand_families(&["S-*".into()]).unwrap().len(), 16);
        assert!(expand_families(&["Q-*".into()]).is_err());
        assert!(expand_families(&["S-HH".into()]).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(config(&["S-*"], 0).validate().is_err());
        let mut c = config(&["S-*"], 1);
        c.dims = [2, 17];
        assert!(c.validate().is_err());
        c.dims = [3, 2];
        assert!(c.validate().is_err());
        c.dims = [1, 1];
        c.cond_max = 0.5;
        assert!(c.validate().is_err());
    }

    #[test]
    fn small_suite_passes_and_is_deterministic() {
        let cfg = config(&["S-*", "M-*"], 12);
        let r1 = run_suite(&cfg).unwrap();
        for c in &r1.checks {
            assert_eq!(c.failures, 0, "{c:?}");
        }
        assert!(r1.overall_pass);
        let r2 = run_suite(&cfg).unwrap();
        let strip = |r: &SuiteReport| serde_json::to_string(&r.checks).unwrap();
        assert_eq!(strip(&r1), strip(&r2));
    }

    #[test]
    fn minkowski_single_dimension() {
        let mut cfg = config(&["M-MINK"], 1);
        cfg.dims = [1, 1];
        let r = run_suite(&cfg).unwrap();
        assert!(r.overall_pass);
    }

    #[test]
    fn negative_control_fails() {
        let mut cfg = config(&["S-HH-QUAD", "S-CHAIN"], 20);
        cfg.self_test_negative = true;
        let r = run_suite(&cfg).unwrap();
        assert!(!r.overall_pass);
        assert!(r.checks[0].failures > 0);
        assert_eq!(r.checks[1].failures, 0);
    }
}
