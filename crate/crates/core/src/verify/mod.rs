//! Named verification checks, the runner and the JSON report.
//!
//! The registry is static. Each check receives a seeded RNG derived from the
//! global seed and its own name, so its result does not depend on which other
//! checks run or in which order.

mod checks;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value as Json};

use crate::domain::PrimeField;
use crate::error::{Error, Result};
use crate::grading::WEIGHTS;
use crate::modular::DEFAULT_PRIME;

pub const DEFAULT_SEED: u64 = 20_240_611;

/// Smallest accepted prime; keeps every probabilistic bound far below `2^-40`.
pub const MIN_PRIME: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Per-check settings. Keys in `extra` must be among the check's declared
/// parameter names.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckParams {
    pub slices: Option<Vec<Vec<u32>>>,
    pub trials: Option<usize>,
    #[serde(default)]
    pub extra: BTreeMap<String, String>,
}

/// A requested check and the status it is expected to reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSpec {
    pub name: String,
    pub params: CheckParams,
    pub expect: Status,
}

impl CheckSpec {
    pub fn new(name: &str) -> Self {
        CheckSpec { name: name.into(), params: CheckParams::default(), expect: Status::Pass }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.extra.insert(key.into(), value.to_string());
        self
    }

    /// Every registered check with default parameters.
    pub fn all() -> Vec<Self> {
        registry().iter().map(|c| Self::new(c.name)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub prime: u64,
    /// Worker threads; 0 uses one per core.
    pub workers: usize,
    /// Record wall-clock milliseconds; off keeps reports byte-reproducible.
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: DEFAULT_SEED, prime: DEFAULT_PRIME, workers: 0, timings: false }
    }
}

/// A discrepancy between a printed formula and the one the computation forces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Erratum {
    pub id: &'static str,
    pub printed: String,
    pub corrected: String,
    pub evidence: Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub witnesses: Json,
    pub millis: u64,
    pub errata: Vec<Erratum>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMeta {
    pub seed: u64,
    pub prime: u64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub meta: ReportMeta,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Witness collection for one check run. Failed expectations are kept with
/// both sides so a failing check always carries its evidence.
#[derive(Debug, Default)]
pub struct Outcome {
    witnesses: Map<String, Json>,
    failures: Vec<Json>,
    inconclusive: Vec<String>,
    errata: Vec<Erratum>,
}

impl Outcome {
    pub fn witness(&mut self, key: &str, value: impl Serialize) {
        self.witnesses.insert(key.into(), serde_json::to_value(value).expect("witness serializes"));
    }

    /// Records a failure with `detail` unless `ok`. Returns `ok`.
    pub fn expect(&mut self, what: &str, ok: bool, detail: impl Serialize) -> bool {
        if !ok {
            self.failures.push(serde_json::json!({ "expectation": what, "detail": detail }));
        }
        ok
    }

    pub fn expect_eq<T: Serialize + PartialEq>(&mut self, what: &str, got: T, want: T) -> bool {
        let ok = got == want;
        self.expect(what, ok, serde_json::json!({ "got": got, "want": want }))
    }

    pub fn inconclusive(&mut self, why: impl Into<String>) {
        self.inconclusive.push(why.into());
    }

    pub fn erratum(&mut self, e: Erratum) {
        self.errata.push(e);
    }

    fn finish(mut self, name: &str, millis: u64) -> CheckResult {
        let status = if !self.failures.is_empty() {
            self.witness("failures", &self.failures.clone());
            Status::Fail
        } else if !self.inconclusive.is_empty() {
            self.witness("inconclusive", &self.inconclusive.clone());
            Status::Inconclusive
        } else {
            Status::Pass
        };
        CheckResult { name: name.into(), status, witnesses: Json::Object(self.witnesses), millis, errata: self.errata }
    }
}

/// What a running check can see.
pub struct CheckContext<'a> {
    pub name: &'static str,
    pub seed: u64,
    pub field: PrimeField,
    pub params: &'a CheckParams,
}

impl CheckContext<'_> {
    /// Stream seeded by the global seed, the check name and `tag`.
    pub fn rng(&self, tag: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(self.name).rotate_left(17) ^ fnv1a(tag))
    }

    pub fn trials(&self, default: usize) -> usize {
        self.params.trials.unwrap_or(default)
    }

    pub fn int_param(&self, key: &str) -> Result<Option<i64>> {
        self.params
            .extra
            .get(key)
            .map(|v| v.trim().parse().map_err(|_| Error::Usage(format!("parameter {key}={v} is not an integer"))))
            .transpose()
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub type CheckFn = fn(&CheckContext, &mut Outcome) -> Result<()>;

pub struct CheckInfo {
    pub name: &'static str,
    pub summary: &'static str,
    /// Accepted keys of [`CheckParams::extra`].
    pub params: &'static [&'static str],
    pub uses_slices: bool,
    pub uses_trials: bool,
    run: CheckFn,
}

pub fn registry() -> &'static [CheckInfo] {
    checks::REGISTRY
}

pub fn find_check(name: &str) -> Option<&'static CheckInfo> {
    registry().iter().find(|c| c.name == name)
}

fn validate(specs: &[CheckSpec], opts: &RunOptions) -> Result<PrimeField> {
    let field = PrimeField::try_new(opts.prime)
        .filter(|_| opts.prime >= MIN_PRIME)
        .ok_or_else(|| Error::Usage(format!("--prime {} must be a prime in [2^16, 2^63)", opts.prime)))?;
    let mut seen = BTreeSet::new();
    for s in specs {
        let info = find_check(&s.name).ok_or_else(|| Error::Usage(format!("unknown check `{}`", s.name)))?;
        if !seen.insert(s.name.as_str()) {
            return Err(Error::Usage(format!("check `{}` requested twice", s.name)));
        }
        if let Some(k) = s.params.extra.keys().find(|k| !info.params.contains(&k.as_str())) {
            return Err(Error::Usage(format!("check `{}` takes no parameter `{k}`", s.name)));
        }
        if s.params.slices.is_some() && !info.uses_slices {
            return Err(Error::Usage(format!("check `{}` takes no slices", s.name)));
        }
        if s.params.trials.is_some() && !info.uses_trials {
            return Err(Error::Usage(format!("check `{}` takes no trial count", s.name)));
        }
        for sl in s.params.slices.iter().flatten() {
            if sl.is_empty() || sl.iter().any(|w| !WEIGHTS.contains(w)) {
                return Err(Error::Usage(format!("slice {sl:?} must list parameter weights")));
            }
        }
    }
    Ok(field)
}

fn run_one(info: &'static CheckInfo, spec: &CheckSpec, seed: u64, field: PrimeField, timings: bool) -> CheckResult {
    let ctx = CheckContext { name: info.name, seed, field, params: &spec.params };
    let start = Instant::now();
    let mut out = Outcome::default();
    let res = catch_unwind(AssertUnwindSafe(|| (info.run)(&ctx, &mut out)));
    match res {
        Ok(Ok(())) => {}
        Ok(Err(e)) => {
            out.expect("check ran to completion", false, e.to_string());
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            out.expect("check ran without panicking", false, msg);
        }
    }
    let millis = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    out.finish(info.name, millis)
}

/// Runs every requested check and never stops early. Results are listed in
/// registry order whatever the completion order.
pub fn run_checks(specs: &[CheckSpec], opts: &RunOptions) -> Result<VerificationReport> {
    let field = validate(specs, opts)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: BTreeMap<&str, CheckResult> = pool.install(|| {
        specs
            .par_iter()
            .map(|s| {
                let info = find_check(&s.name).expect("validated");
                (info.name, run_one(info, s, opts.seed, field, opts.timings))
            })
            .collect()
    });
    let checks = registry().iter().filter_map(|c| results.get(c.name).cloned()).collect();
    Ok(VerificationReport {
        meta: ReportMeta { seed: opts.seed, prime: opts.prime, version: env!("CARGO_PKG_VERSION").into() },
        checks,
    })
}

/// True when every check reached the status its spec expects.
pub fn meets_expectations(report: &VerificationReport, specs: &[CheckSpec]) -> bool {
    specs.iter().all(|s| report.get(&s.name).is_some_and(|r| r.status == s.expect))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique() {
        let names: BTreeSet<&str> = registry().iter().map(|c| c.name).collect();
        assert_eq!(names.len(), registry().len());
    }

    #[test]
    fn usage_errors() {
        let o = RunOptions::default();
        assert!(matches!(run_checks(&[CheckSpec::new("unknown")], &o), Err(Error::Usage(_))));
        let twice = [CheckSpec::new("degree-ledger"), CheckSpec::new("degree-ledger")];
        assert!(matches!(run_checks(&twice, &o), Err(Error::Usage(_))));
        let bad_key = CheckSpec::new("degree-ledger").with_param("n", 3);
        assert!(matches!(run_checks(&[bad_key], &o), Err(Error::Usage(_))));
        let small = RunOptions { prime: 101, ..RunOptions::default() };
        assert!(matches!(run_checks(&[CheckSpec::new("degree-ledger")], &small), Err(Error::Usage(_))));
    }

    #[test]
    fn degree_ledger_witnesses() {
        let rep = run_checks(&[CheckSpec::new("degree-ledger")], &RunOptions::default()).unwrap();
        let c = rep.get("degree-ledger").unwrap();
        assert_eq!(c.status, Status::Pass, "{}", c.witnesses);
        let mut got: Vec<u64> = c.witnesses["values"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).collect();
        got.sort_unstable();
        assert_eq!(got, vec![10, 14, 84, 196, 242, 504, 1092]);
    }

    #[test]
    fn lemma_order_with_parameters() {
        let spec = CheckSpec::new("lemma-order").with_param("n", 3).with_param("m", 2);
        let rep = run_checks(&[spec], &RunOptions::default()).unwrap();
        let c = rep.get("lemma-order").unwrap();
        assert_eq!(c.status, Status::Pass);
        assert_eq!(c.witnesses["order"], 3);
    }

    #[test]
    fn failures_carry_witnesses() {
        let mut out = Outcome::default();
        out.expect_eq("two", 1, 2);
        let r = out.finish("x", 0);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witnesses["failures"][0]["detail"]["got"], 1);
    }
}
