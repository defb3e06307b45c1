//! Merging candidates over all `R` into the set of distinct nonzero `β`, and
//! splitting the coordinates of `V` by the sign of `(β, γ_j) - (β, β)`.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::combinadic::Combination;
use crate::error::{Error, Result};
use crate::linalg::{dot_unchecked, RatVector, Rational};
use crate::solver::{BetaCandidate, WeightSystem};

pub fn veq(a: &RatVector, b: &RatVector) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(a == b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub r: usize,
    pub combination: Combination,
    pub coeffs: Vec<Rational>,
}

impl From<&BetaCandidate> for Witness {
    fn from(c: &BetaCandidate) -> Self {
        Witness {
            r: c.r,
            combination: c.witness.clone(),
            coeffs: c.coeffs.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRecord {
    /// Chamber form of `β`.
    pub beta: RatVector,
    /// Coordinates `j` with `(β, γ_j) = (β, β)`, ascending.
    pub z: Vec<usize>,
    /// Coordinates `j` with `(β, γ_j) > (β, β)`, ascending.
    pub w: Vec<usize>,
    /// Every candidate that produced this `β`, first occurrence first.
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankStats {
    pub r: usize,
    pub combinations: u64,
    pub representatives: usize,
    pub accepted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataSet {
    /// `"1"`..`"4"` for built-in cases, otherwise a caller-chosen label.
    pub case: String,
    pub records: Vec<StratumRecord>,
    pub stats: Vec<RankStats>,
}

impl StrataSet {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DedupStrategy {
    #[default]
    Hashed,
    /// Compares every candidate against all earlier survivors.
    Pairwise,
}

/// Splits `1..=N` by comparing `(β, γ_j)` against `(β, β)`; returns `(Z, W)`.
pub fn classify(system: &WeightSystem, beta: &RatVector) -> (Vec<usize>, Vec<usize>) {
    let norm = dot_unchecked(beta.as_slice(), beta.as_slice());
    let mut z = Vec::new();
    let mut w = Vec::new();
    for (j, g) in system.weights().iter().enumerate() {
        let k = dot_unchecked(beta.as_slice(), g.as_slice());
        match k.cmp(&norm) {
            std::cmp::Ordering::Greater => w.push(j + 1),
            std::cmp::Ordering::Equal => z.push(j + 1),
            std::cmp::Ordering::Less => {}
        }
    }
    (z, w)
}

/// First-occurrence deduplication of the chamber-sorted `β` over the
/// candidate stream (in the given order), dropping `β = 0`, followed by the
/// Z/W classification of each survivor.
pub fn dedup_and_classify<'a, I>(system: &WeightSystem, candidates: I, strategy: DedupStrategy) -> Vec<StratumRecord>
where
    I: IntoIterator<Item = &'a BetaCandidate>,
{
    let mut survivors: Vec<(RatVector, Vec<Witness>)> = Vec::new();
    let mut index: HashMap<RatVector, usize> = HashMap::new();
    for cand in candidates {
        if cand.beta.is_zero() {
            continue;
        }
        let found = match strategy {
            DedupStrategy::Hashed => index.get(&cand.beta).copied(),
            DedupStrategy::Pairwise => survivors.iter().position(|(b, _)| *b == cand.beta),
        };
        match found {
            Some(k) => survivors[k].1.push(cand.into()),
            None => {
                if strategy == DedupStrategy::Hashed {
                    index.insert(cand.beta.clone(), survivors.len());
                }
                survivors.push((cand.beta.clone(), vec![cand.into()]));
            }
        }
    }
    survivors
        .into_par_iter()
        .map(|(beta, witnesses)| {
            let (z, w) = classify(system, &beta);
            StratumRecord { beta, z, w, witnesses }
        })
        .collect()
}

impl fmt::Display for StratumRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} z={:?} w={:?}", self.beta, self.z, self.w)
    }
}
