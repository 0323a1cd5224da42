//! Runs the brute-force graph side against the species side and reports
//! every disagreement with a minimal witness.

pub mod fixtures;

mod checks;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::graphs::{enumerate_connected, reduce, Graph, GraphError, K2Policy};
use crate::species::CountTable;

/// Seed used by the sampled confluence tests unless overridden.
pub const DEFAULT_SEED: u64 = 1729;

/// Resource caps for one suite run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteConfig {
    /// Brute-force paths run for all `n <= max_n`.
    pub max_n: usize,
    /// Cumulative dual-path checks cover `s, t <= max_st` plus the
    /// unbounded sentinel.
    pub max_st: u32,
    /// Series identities are checked through this degree.
    pub max_degree: usize,
    /// Seed for sampled leaf subsets.
    pub seed: u64,
    /// Adds the n = 8 enumeration checks (minutes, not seconds).
    pub stretch: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 7,
            max_st: 6,
            max_degree: 12,
            seed: DEFAULT_SEED,
            stretch: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// graph6 string of the smallest counterexample, when one exists.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite: max_n={} max_st={} max_degree={} seed={} stretch={}",
            self.config.max_n,
            self.config.max_st,
            self.config.max_degree,
            self.config.seed,
            self.config.stretch
        )?;
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            write!(f, "{status}  {:<34} {}", c.name, c.detail)?;
            if let Some(w) = &c.witness {
                write!(f, "  [witness {w}]")?;
            }
            writeln!(f)?;
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Tallies `(sibling number, tuft number)` over one representative per
/// unlabeled connected graph on `n` vertices.
pub fn brute_joint_matrix(n: usize) -> Result<CountTable, GraphError> {
    let mut table = CountTable::new(n);
    for g in enumerate_connected(n)? {
        table.add(g.sibling_number() as u32, g.tuft_number() as u32, 1);
    }
    Ok(table)
}

/// Brute joint tables grouped by the canonical form of the reduction
/// (K2 reduces to the single vertex so the tables partition all graphs).
pub fn brute_by_reduction(
    n: usize,
) -> Result<BTreeMap<Vec<u8>, (Graph, CountTable)>, GraphError> {
    let mut map: BTreeMap<Vec<u8>, (Graph, CountTable)> = BTreeMap::new();
    for g in enumerate_connected(n)? {
        let r = reduce(&g, K2Policy::AsBullet)?;
        let key = crate::graphs::canonical_form(&r);
        let entry = map
            .entry(key)
            .or_insert_with(|| (crate::graphs::canonical_graph(&r), CountTable::new(n)));
        entry
            .1
            .add(g.sibling_number() as u32, g.tuft_number() as u32, 1);
    }
    Ok(map)
}

/// Runs every registered check; failures are reported, never thrown.  The
/// checks are independent and run in a parallel pool; the report lists them
/// sorted by name.
pub fn run_suite(config: SuiteConfig) -> VerificationReport {
    use rayon::prelude::*;
    let jobs = checks::all_checks();
    let mut results: Vec<CheckResult> = jobs
        .into_par_iter()
        .map(|(name, job)| {
            let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| job(&config)));
            match outcome {
                Ok(Ok(detail)) => CheckResult {
                    name: name.to_string(),
                    pass: true,
                    detail,
                    witness: None,
                },
                Ok(Err((detail, witness))) => CheckResult {
                    name: name.to_string(),
                    pass: false,
                    detail,
                    witness,
                },
                Err(panic) => {
                    let msg = panic
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".to_string());
                    CheckResult {
                        name: name.to_string(),
                        pass: false,
                        detail: format!("panicked: {msg}"),
                        witness: None,
                    }
                }
            }
        })
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    VerificationReport {
        config,
        checks: results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_joint_small_values() {
        // Only P3 (s=0, t=2) and K3 (s=2, t=0) exist on 3 vertices.
        let t3 = brute_joint_matrix(3).unwrap();
        assert_eq!(t3.get(0, 2), 1);
        assert_eq!(t3.get(2, 0), 1);
        assert_eq!(t3.total(), 2);
        let t2 = brute_joint_matrix(2).unwrap();
        assert_eq!(t2.get(1, 1), 1);
        assert_eq!(t2.total(), 1);
    }

    #[test]
    fn brute_by_reduction_partitions_the_total() {
        for n in 1..=5 {
            let by_r = brute_by_reduction(n).unwrap();
            let total: u64 = by_r.values().map(|(_, t)| t.total()).sum();
            assert_eq!(total, brute_joint_matrix(n).unwrap().total());
        }
        // On 5 vertices, exactly C5 reduces to C5.
        let by_r = brute_by_reduction(5).unwrap();
        let c5_key = crate::graphs::canonical_form(&Graph::cycle(5));
        let (_, table) = &by_r[&c5_key];
        assert_eq!(table.total(), 1);
        assert_eq!(table.get(0, 0), 1);
    }

    #[test]
    fn small_suite_run_passes() {
        let config = SuiteConfig {
            max_n: 5,
            max_st: 4,
            max_degree: 8,
            seed: DEFAULT_SEED,
            stretch: false,
        };
        let report = run_suite(config);
        for failure in report.failures() {
            eprintln!("FAIL {}: {}", failure.name, failure.detail);
        }
        assert!(report.all_pass(), "{report}");
    }
}
