//! Tuple sweeps for equational laws over a finite carrier.
//!
//! A law is a predicate over `arity` carrier indices. Small carriers are swept
//! exhaustively; larger ones are sampled with a seeded generator. Either way
//! the reported counterexample is the first failing tuple in sweep order, so
//! results do not depend on how rayon splits the work.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::limits::Limits;

/// Outcome of one law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    pub tuples_checked: u64,
    pub sampled: bool,
    /// Rendered counterexample tuple, when the law failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// A list of law outcomes for one structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub laws: Vec<LawOutcome>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport {
            subject: subject.into(),
            laws: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawOutcome> {
        self.laws.iter().filter(|l| !l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawOutcome> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn is_sampled(&self) -> bool {
        self.laws.iter().any(|l| l.sampled)
    }

    pub(crate) fn push(&mut self, outcome: LawOutcome) {
        self.laws.push(outcome);
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for law in &self.laws {
            let status = if law.passed { "ok  " } else { "FAIL" };
            let mode = if law.sampled { "sampled" } else { "exhaustive" };
            write!(
                f,
                "  {status} {:<4} {:<36} {} tuples ({mode})",
                law.name, law.statement, law.tuples_checked
            )?;
            if let Some(cx) = &law.counterexample {
                write!(f, "  counterexample: {cx}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) struct SweepResult {
    pub tuples: u64,
    pub sampled: bool,
    pub counterexample: Option<Vec<usize>>,
}

fn salt(name: &str) -> u64 {
    // FNV-1a, so every law draws its own deterministic stream.
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

/// Sweeps `pred` over `arity`-tuples of `0..n`.
pub(crate) fn sweep<F>(name: &str, n: usize, arity: usize, limits: &Limits, pred: F) -> SweepResult
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let total = (n as u128).saturating_pow(arity as u32);
    let exhaustive = total <= limits.samples as u128 || (!limits.force_sampling && n <= limits.exhaustive_cap);
    if exhaustive {
        let cx = (0..n).into_par_iter().find_map_first(|x| {
            let mut t = vec![0usize; arity];
            if arity == 0 {
                return None;
            }
            t[0] = x;
            first_failure(&mut t, 1, n, &pred)
        });
        SweepResult {
            tuples: total as u64,
            sampled: false,
            counterexample: cx,
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(limits.seed ^ salt(name));
        let tuples: Vec<Vec<usize>> = (0..limits.samples)
            .map(|_| (0..arity).map(|_| rng.gen_range(0..n)).collect())
            .collect();
        let cx = tuples.par_iter().find_first(|t| !pred(t)).cloned();
        SweepResult {
            tuples: limits.samples as u64,
            sampled: true,
            counterexample: cx,
        }
    }
}

fn first_failure<F>(t: &mut Vec<usize>, pos: usize, n: usize, pred: &F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool,
{
    if pos == t.len() {
        return if pred(t) { None } else { Some(t.clone()) };
    }
    for v in 0..n {
        t[pos] = v;
        if let Some(cx) = first_failure(t, pos + 1, n, pred) {
            return Some(cx);
        }
    }
    None
}

/// Runs a sweep and records it in `report`, rendering any counterexample with `show`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn run_law<F, S>(
    report: &mut CheckReport,
    name: &str,
    statement: &str,
    n: usize,
    arity: usize,
    limits: &Limits,
    pred: F,
    show: S,
) where
    F: Fn(&[usize]) -> bool + Sync,
    S: Fn(usize) -> String,
{
    let r = sweep(name, n, arity, limits, pred);
    report.push(LawOutcome {
        name: name.to_string(),
        statement: statement.to_string(),
        passed: r.counterexample.is_none(),
        tuples_checked: r.tuples,
        sampled: r.sampled,
        counterexample: r.counterexample.map(|t| {
            let parts: Vec<String> = t.iter().map(|&i| show(i)).collect();
            format!("({})", parts.join(", "))
        }),
    });
}
