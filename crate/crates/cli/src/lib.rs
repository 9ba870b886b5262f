//! Certification suites and spectrum reports behind the `spinorlab` binary.
//!
//! Every suite draws seeded random data, checks one family of identities for
//! each `n` in a range and records the largest residual together with the
//! first counterexample it meets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use spinorlab::Sampler;

pub mod algebra;
pub mod analysis;
pub mod encode;
pub mod report;
pub mod spinors;

/// Version of every JSON document the binary prints.
pub const SCHEMA: u32 = 1;

/// Inclusive range of dimensions, written `a..b` or `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    pub fn new(start: usize, end: usize) -> Self {
        NRange { start, end }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a dimension: {t:?}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if start == 0 || start > end {
            return Err(format!("empty or invalid range {s:?}"));
        }
        Ok(NRange { start, end })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub range: NRange,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Fourier cutoff `K` for the flat-model suites; each suite has its own default.
    pub cutoff: Option<i64>,
}

impl SuiteConfig {
    pub fn new(range: NRange, trials: usize, seed: u64, tolerance: f64) -> Self {
        SuiteConfig { range, trials, seed, tolerance, cutoff: None }
    }

    pub fn with_cutoff(mut self, cutoff: Option<i64>) -> Self {
        self.cutoff = cutoff;
        self
    }

    /// Sampler for one `(suite, n)` cell, independent of the other cells.
    pub fn sampler(&self, suite: &str, n: usize) -> Sampler {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in suite.bytes() {
            h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
        Sampler::new(self.seed ^ h ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Outcome of comparing two values: exact equality and the largest
/// coefficient of the difference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Outcome {
    pub equal: bool,
    pub residual: f64,
}

impl Outcome {
    pub fn exact(equal: bool, residual: f64) -> Self {
        Outcome { equal, residual }
    }

    /// A floating-point comparison: passes when the residual is below the
    /// suite tolerance.
    pub fn approx(residual: f64) -> Self {
        Outcome { equal: true, residual }
    }

    pub fn and(self, other: Outcome) -> Outcome {
        Outcome { equal: self.equal && other.equal, residual: self.residual.max(other.residual) }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckSummary {
    pub evaluations: usize,
    pub failures: usize,
    pub max_residual: f64,
    /// Dimensions in which at least one evaluation failed.
    pub failing_n: Vec<usize>,
}

/// Accumulates check outcomes for one suite run.
pub struct Checker {
    tolerance: f64,
    checks: BTreeMap<String, CheckSummary>,
    counterexample: Option<Value>,
    notes: Vec<String>,
}

impl Checker {
    pub fn new(tolerance: f64) -> Self {
        Checker { tolerance, checks: BTreeMap::new(), counterexample: None, notes: Vec::new() }
    }

    /// Records one evaluation. `inputs` is only built on failure.
    pub fn record(
        &mut self,
        check: &str,
        n: usize,
        trial: usize,
        outcome: spinorlab::Result<Outcome>,
        inputs: impl FnOnce() -> Value,
    ) -> bool {
        let tolerance = self.tolerance;
        let entry = self.checks.entry(check.to_string()).or_default();
        entry.evaluations += 1;
        let (passed, detail) = match outcome {
            Ok(o) => {
                let residual = if o.residual.is_nan() { f64::INFINITY } else { o.residual };
                entry.max_residual = entry.max_residual.max(residual);
                (o.equal && residual < tolerance, json!({ "residual": residual, "equal": o.equal }))
            }
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        if !passed {
            entry.failures += 1;
            if !entry.failing_n.contains(&n) {
                entry.failing_n.push(n);
            }
            if self.counterexample.is_none() {
                self.counterexample =
                    Some(json!({ "check": check, "n": n, "trial": trial, "inputs": inputs(), "detail": detail }));
            }
        }
        passed
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    pub fn finish(self, suite: &str, config: &SuiteConfig, exact: bool) -> SuiteResult {
        let max_residual = self.checks.values().map(|c| c.max_residual).fold(0.0, f64::max);
        let pass = self.checks.values().all(|c| c.failures == 0) && !self.checks.is_empty();
        SuiteResult {
            schema: SCHEMA,
            suite: suite.to_string(),
            n_range: config.range,
            trials: config.trials,
            seed: config.seed,
            tolerance: config.tolerance,
            exact,
            max_residual,
            pass,
            checks: self.checks,
            notes: self.notes,
            counterexample: self.counterexample,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub schema: u32,
    pub suite: String,
    pub n_range: NRange,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Whether the suite compares exact values (residuals are then reported
    /// for information only).
    pub exact: bool,
    pub max_residual: f64,
    pub pass: bool,
    pub checks: BTreeMap<String, CheckSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl SuiteResult {
    pub fn failing_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, c)| c.failures > 0).map(|(k, _)| k.as_str()).collect()
    }
}

type SuiteFn = fn(&SuiteConfig) -> Result<SuiteResult, String>;

/// Suite identifiers with their runners and default dimension ranges.
pub const SUITES: &[(&str, SuiteFn, (usize, usize))] = &[
    ("eq1", algebra::spinor_module, (1, 6)),
    ("lemma1", algebra::real_structure, (1, 6)),
    ("eq4", algebra::tensor_isomorphism, (1, 6)),
    ("eq5", algebra::dual_pairing, (1, 6)),
    ("witt-frame", spinors::witt_frame, (1, 6)),
    ("eq6", spinors::ideal_isomorphism, (1, 6)),
    ("eq8", spinors::ideal_to_tensor, (1, 6)),
    ("eq9", spinors::ideal_to_forms, (1, 6)),
    ("kahler-action", spinors::kahler_action, (1, 6)),
    ("hermitian-normalization", spinors::hermitian_normalization, (1, 6)),
    ("killing", spinors::killing, (1, 5)),
    ("corollary10", analysis::twisted_dirac_euler, (1, 3)),
    ("eq12", analysis::square_identity, (1, 3)),
    ("remark-circle", analysis::circle_counterexample, (1, 1)),
    ("minmax", analysis::minmax, (1, 3)),
    ("sharpness", analysis::sharpness, (3, 21)),
    ("theorem12", analysis::eigenvalue_bound, (1, 9)),
];

pub fn suite_ids() -> Vec<&'static str> {
    SUITES.iter().map(|(id, _, _)| *id).collect()
}

pub fn default_range(suite: &str) -> Option<NRange> {
    SUITES.iter().find(|(id, _, _)| *id == suite).map(|(_, _, (a, b))| NRange::new(*a, *b))
}

/// Runs a suite. Unknown ids and unusable parameters are reported as `Err`.
pub fn certify(suite: &str, config: &SuiteConfig) -> Result<SuiteResult, String> {
    let (_, run, _) = SUITES
        .iter()
        .find(|(id, _, _)| *id == suite)
        .ok_or_else(|| format!("unknown suite {suite:?}; known suites: {}", suite_ids().join(", ")))?;
    if config.trials == 0 {
        return Err("trials must be positive".into());
    }
    if !(config.tolerance > 0.0) {
        return Err("tolerance must be positive".into());
    }
    run(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!("1..6".parse::<NRange>().unwrap(), NRange::new(1, 6));
        assert_eq!("1..=6".parse::<NRange>().unwrap(), NRange::new(1, 6));
        assert_eq!("4".parse::<NRange>().unwrap(), NRange::new(4, 4));
        assert!("0..3".parse::<NRange>().is_err());
        assert!("5..2".parse::<NRange>().is_err());
        assert!("x".parse::<NRange>().is_err());
    }

    #[test]
    fn unknown_suite_is_an_error() {
        let config = SuiteConfig::new(NRange::new(1, 1), 1, 0, 1e-10);
        assert!(certify("nope", &config).is_err());
    }

    #[test]
    fn checker_keeps_first_counterexample() {
        let mut c = Checker::new(1e-10);
        assert!(c.record("a", 1, 0, Ok(Outcome::exact(true, 0.0)), || json!(null)));
        assert!(!c.record("a", 2, 3, Ok(Outcome::approx(1.0)), || json!("first")));
        assert!(!c.record("b", 2, 4, Ok(Outcome::exact(false, 0.0)), || json!("second")));
        let config = SuiteConfig::new(NRange::new(1, 2), 5, 0, 1e-10);
        let r = c.finish("s", &config, true);
        assert!(!r.pass);
        assert_eq!(r.counterexample.unwrap()["inputs"], json!("first"));
        assert_eq!(r.checks["a"].failing_n, vec![2]);
    }
}
