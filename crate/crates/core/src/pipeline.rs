//! End-to-end run: Weyl list, sieve and solve for each `R`, then merge.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::case::CaseDescriptor;
use crate::error::{Error, Result};
use crate::sieve::{sieve, RepresentativeSet};
use crate::solver::{solve_candidates, BetaCandidate, WeightSystem};
use crate::stratify::{dedup_and_classify, DedupStrategy, RankStats, StrataSet};
use crate::weyl::{weyl_list, InducedActionList};

/// Inclusive range of simplex sizes, written `A..B` in either order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankRange {
    pub lo: usize,
    pub hi: usize,
}

impl RankRange {
    pub fn full(case: &CaseDescriptor) -> Self {
        RankRange { lo: 1, hi: case.rank() }
    }

    /// `hi` down to 2, then 1 last if included.
    pub fn processing_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (self.lo.max(2)..=self.hi).rev().collect();
        if self.lo <= 1 && self.hi >= 1 {
            order.push(1);
        }
        order
    }
}

impl FromStr for RankRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("rank range {s:?}: expected A..B with positive integers"));
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || b == 0 {
            return Err(bad());
        }
        Ok(RankRange { lo: a.min(b), hi: a.max(b) })
    }
}

#[derive(Clone, Debug, Default)]
pub struct ComputeOptions {
    pub rank_range: Option<RankRange>,
    /// Solver threads; `None` uses the available parallelism.
    pub threads: Option<usize>,
    pub dedup: DedupStrategy,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub case: String,
    pub per_rank: Vec<RankStats>,
    pub cardinality: usize,
    pub timings: Vec<(String, Duration)>,
    pub output: Option<PathBuf>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {}", self.case)?;
        for s in &self.per_rank {
            writeln!(
                f,
                "  R={}: C(N,R)={} representatives={} accepted={}",
                s.r, s.combinations, s.representatives, s.accepted
            )?;
        }
        writeln!(f, "  cardinality {}", self.cardinality)?;
        for (stage, t) in &self.timings {
            writeln!(f, "  {stage}: {:.3}s", t.as_secs_f64())?;
        }
        if let Some(p) = &self.output {
            writeln!(f, "  output {}", p.display())?;
        }
        Ok(())
    }
}

/// Hooks for inspecting intermediate stages.
pub trait Observer {
    fn weyl(&mut self, _actions: &InducedActionList) {}
    fn representatives(&mut self, _reps: &RepresentativeSet) {}
}

impl Observer for () {}

pub fn compute(case: &CaseDescriptor, label: &str, opts: &ComputeOptions) -> Result<(StrataSet, RunReport)> {
    compute_observed(case, label, opts, &mut ())
}

pub fn compute_observed(
    case: &CaseDescriptor,
    label: &str,
    opts: &ComputeOptions,
    observer: &mut dyn Observer,
) -> Result<(StrataSet, RunReport)> {
    let range = opts.rank_range.unwrap_or_else(|| RankRange::full(case));
    if range.hi > case.rank() {
        return Err(Error::RankParameter { r: range.hi, max: case.rank() });
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = opts.threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let mut timings = Vec::new();
    let t = Instant::now();
    let system = WeightSystem::new(case);
    let actions = weyl_list(case)?;
    observer.weyl(&actions);
    timings.push(("weyl".to_string(), t.elapsed()));

    let mut stats = Vec::new();
    let mut candidates: Vec<BetaCandidate> = Vec::new();
    for r in range.processing_order() {
        let t = Instant::now();
        let reps = sieve(case, r, &actions)?;
        observer.representatives(&reps);
        timings.push((format!("sieve R={r}"), t.elapsed()));
        let t = Instant::now();
        let accepted = pool.install(|| solve_candidates(&system, &reps));
        timings.push((format!("solve R={r}"), t.elapsed()));
        stats.push(RankStats {
            r,
            combinations: crate::combinadic::binom_u64(case.n_coords(), r),
            representatives: reps.len(),
            accepted: accepted.len(),
        });
        candidates.extend(accepted);
    }

    let t = Instant::now();
    let records = pool.install(|| dedup_and_classify(&system, &candidates, opts.dedup));
    timings.push(("stratify".to_string(), t.elapsed()));

    let set = StrataSet {
        case: label.to_string(),
        records,
        stats: stats.clone(),
    };
    let report = RunReport {
        case: label.to_string(),
        per_rank: stats,
        cardinality: set.records.len(),
        timings,
        output: None,
    };
    Ok((set, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case::builtin_case;

    #[test]
    fn rank_range_parsing_and_order() {
        let r: RankRange = "7..7".parse().unwrap();
        assert_eq!(r.processing_order(), vec![7]);
        let r: RankRange = "1..5".parse().unwrap();
        assert_eq!(r.processing_order(), vec![5, 4, 3, 2, 1]);
        let r: RankRange = "3..1".parse().unwrap();
        assert_eq!(r, RankRange { lo: 1, hi: 3 });
        assert!("0..3".parse::<RankRange>().is_err());
        assert!("3".parse::<RankRange>().is_err());
        assert!("a..b".parse::<RankRange>().is_err());
    }

    #[test]
    fn case_one_end_to_end() {
        let c = builtin_case(1).unwrap();
        let (set, report) = compute(&c, "1", &ComputeOptions::default()).unwrap();
        assert_eq!(set.len(), 49);
        assert_eq!(report.cardinality, 49);
        assert_eq!(report.per_rank.iter().map(|s| s.r).collect::<Vec<_>>(), vec![5, 4, 3, 2, 1]);
        assert_eq!(report.per_rank[0].combinations, 8568);
        let last = report.per_rank.last().unwrap();
        assert_eq!((last.representatives, last.accepted), (1, 1));
    }

    #[test]
    fn rank_one_only() {
        let c = builtin_case(1).unwrap();
        let opts = ComputeOptions {
            rank_range: Some("1..1".parse().unwrap()),
            ..Default::default()
        };
        let (set, report) = compute(&c, "1", &opts).unwrap();
        assert_eq!(report.per_rank[0].accepted, 1);
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn rejects_range_beyond_rank() {
        let c = builtin_case(1).unwrap();
        let opts = ComputeOptions {
            rank_range: Some("1..6".parse().unwrap()),
            ..Default::default()
        };
        assert!(matches!(compute(&c, "1", &opts), Err(Error::RankParameter { r: 6, max: 5 })));
    }
}
