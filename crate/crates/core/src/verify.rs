//! Verification suites run over the canonical invariants up to a maximum
//! index. Each check yields one [`CheckResult`].

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::coeffs::{table_closed, table_recursive};
use crate::error::{Error, Result};
use crate::golden::{self, GoldenOutcome};
use crate::invariant::{build_invariant, to_cartesian, InvariantSpec};
use crate::oracle::definition_invariant;
use crate::poly::Monomial;
use crate::solidharm::{laplacian, CartesianPoly, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Laplace,
    Oracle,
    Recursion,
    Golden,
    Symmetry,
}

impl Suite {
    pub const CHECKS: [Suite; 5] = [
        Suite::Laplace,
        Suite::Oracle,
        Suite::Recursion,
        Suite::Golden,
        Suite::Symmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Laplace => "laplace",
            Suite::Oracle => "oracle",
            Suite::Recursion => "recursion",
            Suite::Golden => "golden",
            Suite::Symmetry => "symmetry",
        }
    }

    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CHECKS.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::CHECKS)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Waived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub spec: [u32; 3],
    pub suite: Suite,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn new(spec: InvariantSpec, suite: Suite, outcome: Result<Option<String>>) -> Self {
        let (status, detail) = match outcome {
            Ok(None) => (Status::Pass, String::new()),
            Ok(Some(why)) => (Status::Fail, why),
            Err(e) => (Status::Fail, e.to_string()),
        };
        CheckResult {
            spec: spec.indices(),
            suite,
            status,
            detail,
        }
    }
}

/// Summary counts of a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub waived: usize,
}

pub fn tally(report: &[CheckResult]) -> Tally {
    let mut t = Tally::default();
    for r in report {
        match r.status {
            Status::Pass => t.pass += 1,
            Status::Fail => t.fail += 1,
            Status::Waived => t.waived += 1,
        }
    }
    t
}

fn harmonicity(spec: InvariantSpec) -> Result<Option<String>> {
    let [j, k, l] = spec.indices();
    let inv = build_invariant(j, k, l)?;
    let residuals = table_closed(spec.query(), spec.parity().kind()).laplace_residuals();
    if let Some(r) = residuals.first() {
        return Ok(Some(format!(
            "{} coefficient residuals, first {} at {:?}",
            residuals.len(),
            r.relation,
            r.index
        )));
    }
    let cart = to_cartesian(&inv);
    for slot in Slot::ALL {
        let lap = laplacian(&cart, slot);
        if !lap.is_zero() {
            return Ok(Some(format!("laplacian in {slot:?} has {} terms", lap.len())));
        }
    }
    Ok(None)
}

fn oracle(spec: InvariantSpec) -> Result<Option<String>> {
    let [j, k, l] = spec.indices();
    let ours = to_cartesian(&build_invariant(j, k, l)?);
    let reference = definition_invariant(spec);
    Ok(cartesian_difference(&ours, &reference))
}

fn cartesian_difference(a: &CartesianPoly, b: &CartesianPoly) -> Option<String> {
    if a == b {
        return None;
    }
    let diff = a.clone() - b.clone();
    Some(format!("{} Cartesian coefficients differ", diff.len()))
}

fn recursion(spec: InvariantSpec) -> Result<Option<String>> {
    let (q, kind) = (spec.query(), spec.parity().kind());
    let closed = table_closed(q, kind);
    let recursive = table_recursive(q, kind)?;
    for (idx, v) in closed.entries() {
        let (a, b, c) = idx;
        let r = recursive.get(a as i64, b as i64, c as i64);
        if &r != v {
            return Ok(Some(format!("entry {idx:?}: closed {v}, recursive {r}")));
        }
    }
    if closed.len() != recursive.len() {
        return Ok(Some(format!(
            "closed table has {} entries, recursive {}",
            closed.len(),
            recursive.len()
        )));
    }
    Ok(None)
}

/// Swap symmetry against the definition for every reordering of the
/// indices, and the parity of the Cartesian expansion.
fn symmetry(spec: InvariantSpec) -> Result<Option<String>> {
    let [j, k, l] = spec.indices();
    let base = to_cartesian(&build_invariant(j, k, l)?);
    let odd = spec.total() % 2 == 1;
    for (m, _) in base.iter() {
        if (m.total_degree() % 2 == 1) != odd {
            return Ok(Some(format!("monomial {m:?} has the wrong parity")));
        }
    }
    let orders = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = spec.indices();
    let mut seen = Vec::new();
    for p in orders {
        let perm = [idx[p[0]], idx[p[1]], idx[p[2]]];
        if seen.contains(&perm) {
            continue;
        }
        seen.push(perm);
        let ps = InvariantSpec::new(perm[0], perm[1], perm[2])?;
        let inv = to_cartesian(&build_invariant(perm[0], perm[1], perm[2])?);
        if let Some(why) = cartesian_difference(&inv, &definition_invariant(ps)) {
            return Ok(Some(format!("{ps}: {why}")));
        }
        // I with its vectors relabeled back equals ± the canonical one
        let back = inv.map_monomials(|m| {
            let e = m.exponents();
            let mut out = [0u32; 9];
            for slot in 0..3 {
                for axis in 0..3 {
                    out[3 * p[slot] + axis] = e[3 * slot + axis];
                }
            }
            Monomial::new(out)
        });
        let perm_odd = matches!(p, [1, 0, 2] | [0, 2, 1] | [2, 1, 0]);
        let expect = if perm_odd && odd { -base.clone() } else { base.clone() };
        if back != expect {
            return Ok(Some(format!("{ps} relabeled differs from {spec}")));
        }
    }
    Ok(None)
}

fn golden_checks(max_l: u32) -> Vec<CheckResult> {
    let entries = match golden::embedded() {
        Ok(e) => e,
        Err(e) => {
            return vec![CheckResult {
                spec: [0, 0, 0],
                suite: Suite::Golden,
                status: Status::Fail,
                detail: e.to_string(),
            }]
        }
    };
    let mut out = Vec::new();
    for e in entries {
        if e.spec.iter().any(|&x| x > max_l) {
            continue;
        }
        let [j, k, l] = e.spec;
        let outcome = build_invariant(j, k, l).and_then(|inv| golden::compare(&e, &inv));
        let (status, detail) = match outcome {
            Ok(GoldenOutcome::Match) => (Status::Pass, String::new()),
            Ok(GoldenOutcome::Waived(w)) => (Status::Waived, w),
            Ok(GoldenOutcome::Mismatch(w)) => (Status::Fail, w),
            Err(err) => (Status::Fail, err.to_string()),
        };
        out.push(CheckResult {
            spec: e.spec,
            suite: Suite::Golden,
            status,
            detail,
        });
    }
    out
}

fn run_check(suite: Suite, spec: InvariantSpec) -> CheckResult {
    let outcome = match suite {
        Suite::Laplace => harmonicity(spec),
        Suite::Oracle => oracle(spec),
        Suite::Recursion => recursion(spec),
        Suite::Symmetry => symmetry(spec),
        Suite::All | Suite::Golden => unreachable!("not a per-spec check"),
    };
    CheckResult::new(spec, suite, outcome)
}

/// Runs `suite` over every canonical invariant with all indices at most
/// `max_l`, spread over `threads` workers. Results come back in a fixed
/// order: suite, then spec.
pub fn run_with_threads(max_l: u32, suite: Suite, threads: usize) -> Vec<CheckResult> {
    let specs = InvariantSpec::canonical_up_to(max_l);
    let mut jobs = Vec::new();
    for s in suite.expand() {
        if s != Suite::Golden {
            jobs.extend(specs.iter().map(|&spec| (s, spec)));
        }
    }
    let slots: Vec<Mutex<Option<CheckResult>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(s, spec)) = jobs.get(i) else { break };
                *slots[i].lock().unwrap() = Some(run_check(s, spec));
            });
        }
    });
    let mut out: Vec<CheckResult> = slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every job ran"))
        .collect();
    if suite.expand().contains(&Suite::Golden) {
        out.extend(golden_checks(max_l));
    }
    out.sort_by_key(|r| Suite::CHECKS.iter().position(|s| *s == r.suite));
    out
}

pub fn run(max_l: u32, suite: Suite) -> Vec<CheckResult> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    run_with_threads(max_l, suite, threads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::All].into_iter().chain(Suite::CHECKS) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("fast".parse::<Suite>().is_err());
    }

    #[test]
    fn trivial_run() {
        let report = run(0, Suite::All);
        assert!(report.iter().all(|r| r.spec == [0, 0, 0] && r.status == Status::Pass));
        assert_eq!(report.len(), 5);
    }

    #[test]
    fn small_run_passes() {
        let report = run_with_threads(3, Suite::All, 2);
        let t = tally(&report);
        assert_eq!(t.fail, 0, "{report:?}");
        assert_eq!(t.waived, 0);
    }

    #[test]
    fn golden_suite_has_one_waiver() {
        let report = run(7, Suite::Golden);
        let t = tally(&report);
        assert_eq!((t.pass, t.fail, t.waived), (39, 0, 1));
        let waived = report.iter().find(|r| r.status == Status::Waived).unwrap();
        assert_eq!(waived.spec, [2, 6, 7]);
    }

    #[test]
    fn report_serializes() {
        let report = run(1, Suite::Recursion);
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v[0]["suite"], "recursion");
        assert_eq!(v[0]["status"], "pass");
        assert_eq!(v[0]["spec"], serde_json::json!([0, 0, 0]));
    }
}
