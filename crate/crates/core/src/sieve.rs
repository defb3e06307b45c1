//! Orbit representatives of `W` acting on the `R`-subsets of weights.
//!
//! Ranks are scanned in ascending order; the first unvisited rank becomes a
//! representative and every Weyl image of it is marked visited. Each
//! representative is therefore the minimal-rank member of its orbit.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::case::CaseDescriptor;
use crate::combinadic::{Combination, RankTables};
use crate::error::{Error, Result};
use crate::weyl::InducedActionList;

/// One bit per combination rank. Bits are only ever set.
pub struct VisitedArray {
    words: Vec<u64>,
    len: u64,
}

impl VisitedArray {
    pub fn try_new(len: u64) -> Result<Self> {
        let n_words = len.div_ceil(64) as usize;
        let mut words = Vec::new();
        words.try_reserve_exact(n_words).map_err(|_| Error::Allocation {
            bytes: n_words * 8,
            count: len,
        })?;
        words.resize(n_words, 0);
        Ok(VisitedArray { words, len })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline(always)]
    pub fn set(&mut self, i: u64) {
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    pub fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize] & (1 << (i & 63)) != 0
    }

    /// First unset index `>= from`.
    pub fn next_unset(&self, from: u64) -> Option<u64> {
        if from >= self.len {
            return None;
        }
        let mut w = (from >> 6) as usize;
        let mut word = !self.words[w] & (!0u64 << (from & 63));
        loop {
            if word != 0 {
                let i = ((w as u64) << 6) + word.trailing_zeros() as u64;
                return (i < self.len).then_some(i);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = !self.words[w];
        }
    }

    pub fn count_set(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeSet {
    pub r: usize,
    pub n: usize,
    /// Combination rank (1-based) of each representative, strictly increasing.
    pub ranks: Vec<u64>,
    pub reps: Vec<Combination>,
}

impl RepresentativeSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// One representative per line, space-separated indices.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for c in &self.reps {
            writeln!(s, "{}", c.indices().iter().join(" ")).unwrap();
        }
        s
    }
}

pub fn sieve(case: &CaseDescriptor, r: usize, actions: &InducedActionList) -> Result<RepresentativeSet> {
    if r < 1 || r > case.rank() {
        return Err(Error::RankParameter { r, max: case.rank() });
    }
    let n = case.n_coords();
    assert_eq!(actions.degree(), n, "action list is for a different case");
    let tables = RankTables::build(n, r)?;
    let mut visited = VisitedArray::try_new(tables.count())?;

    let mut ranks = Vec::new();
    let mut reps = Vec::new();
    let mut rep = vec![0usize; r];
    let mut rep_bytes = [0u8; 16];
    let mut image = [0u8; 16];
    let mut next = 0u64;
    while let Some(i) = visited.next_unset(next) {
        tables.unrank_into(i + 1, &mut rep);
        for (b, &x) in rep_bytes.iter_mut().zip(&rep) {
            *b = x as u8;
        }
        visited.set(i);
        for row in actions.rows() {
            let img = &mut image[..r];
            for (dst, &src) in img.iter_mut().zip(&rep_bytes[..r]) {
                *dst = row[src as usize - 1];
            }
            img.sort_unstable();
            visited.set(tables.rank0_sorted(img));
        }
        ranks.push(i + 1);
        reps.push(Combination::new(rep.clone(), n)?);
        next = i + 1;
    }
    debug_assert_eq!(visited.count_set(), tables.count());
    Ok(RepresentativeSet { r, n, ranks, reps })
}
