//! Representations `V = (tensor product of slots)` of `G = GL_{n_1} x ... x GL_{n_k}`
//! where each slot is the standard representation, `wedge^2` or `wedge^3` of
//! one factor.
//!
//! Coordinates of `t*` are the concatenation of one block of `n_i` entries per
//! factor; every weight is traceless blockwise. Coordinates of `V` are numbered
//! with the last slot's index varying slowest and the remaining slots in
//! lexicographic order, the second-to-last slot fastest.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::combinadic::{binom_u64, RankTables};
use crate::error::{Error, Result};
use crate::linalg::{dot, rat, RatVector, Rational};

/// Largest supported `dim V`; coordinate indices are stored in a byte in the
/// sieve.
pub const MAX_COORDS: usize = 255;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotKind {
    Standard,
    Wedge2,
    Wedge3,
}

impl SlotKind {
    pub fn degree(self) -> usize {
        match self {
            SlotKind::Standard => 1,
            SlotKind::Wedge2 => 2,
            SlotKind::Wedge3 => 3,
        }
    }
}

impl fmt::Display for SlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlotKind::Standard => "standard",
            SlotKind::Wedge2 => "wedge2",
            SlotKind::Wedge3 => "wedge3",
        })
    }
}

/// One tensor factor of `V`: `kind` applied to the standard representation of
/// factor number `factor` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub factor: usize,
    pub kind: SlotKind,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseConfig {
    factors: Vec<usize>,
    slots: Vec<Slot>,
}

#[derive(Clone, Debug)]
pub struct CaseDescriptor {
    factors: Vec<usize>,
    slots: Vec<Slot>,
    n_coords: usize,
    dim: usize,
    rank: usize,
    weyl_order: u64,
    blocks: Vec<Range<usize>>,
    // per slot: combinadic context (n_factor, degree)
    slot_tables: Vec<RankTables>,
    // mixed-radix digit order, most significant first
    digit_order: Vec<usize>,
}

impl PartialEq for CaseDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.slots == other.slots
    }
}

impl Eq for CaseDescriptor {}

impl CaseDescriptor {
    pub fn new(factors: Vec<usize>, slots: Vec<Slot>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Config("empty factor list".into()));
        }
        if let Some(pos) = factors.iter().position(|&n| n == 0) {
            return Err(Error::Config(format!("factor {} has dimension 0", pos + 1)));
        }
        if slots.is_empty() {
            return Err(Error::Config("empty slot list".into()));
        }
        let mut slot_tables = Vec::with_capacity(slots.len());
        let mut n_coords: usize = 1;
        for (k, slot) in slots.iter().enumerate() {
            if slot.factor < 1 || slot.factor > factors.len() {
                return Err(Error::Config(format!(
                    "slot {} refers to factor {} but there are {} factors",
                    k + 1,
                    slot.factor,
                    factors.len()
                )));
            }
            let n = factors[slot.factor - 1];
            let w = slot.kind.degree();
            if w > n {
                return Err(Error::Config(format!(
                    "slot {}: {} of GL_{} has dimension C({n}, {w}) = 0",
                    k + 1,
                    slot.kind,
                    n
                )));
            }
            slot_tables.push(RankTables::build(n, w)?);
            n_coords = n_coords
                .checked_mul(binom_u64(n, w) as usize)
                .filter(|&c| c <= MAX_COORDS)
                .ok_or_else(|| Error::Config(format!("dim V exceeds {MAX_COORDS}")))?;
        }
        let mut blocks = Vec::with_capacity(factors.len());
        let mut start = 0;
        for &n in &factors {
            blocks.push(start..start + n);
            start += n;
        }
        let weyl_order = factors
            .iter()
            .try_fold(1u64, |acc, &n| (1..=n as u64).try_fold(acc, |a, k| a.checked_mul(k)))
            .ok_or_else(|| Error::Config("Weyl group order overflows".into()))?;
        let s = slots.len();
        let digit_order = std::iter::once(s - 1).chain(0..s - 1).collect();
        Ok(CaseDescriptor {
            dim: start,
            rank: factors.iter().map(|n| n - 1).sum(),
            factors,
            slots,
            n_coords,
            weyl_order,
            blocks,
            slot_tables,
            digit_order,
        })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// `N = dim V`.
    pub fn n_coords(&self) -> usize {
        self.n_coords
    }

    /// `D`, the number of ambient coordinates of `t*`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `r = dim t*`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    /// Per-factor coordinate ranges (0-based, contiguous, in factor order).
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub(crate) fn slot_tables(&self) -> &[RankTables] {
        &self.slot_tables
    }

    /// Splits a 1-based coordinate into 1-based per-slot sub-indices, in slot
    /// order.
    pub fn decode(&self, coord: usize) -> Vec<usize> {
        assert!((1..=self.n_coords).contains(&coord), "coordinate {coord} out of range");
        let mut rest = coord - 1;
        let mut out = vec![0; self.slots.len()];
        for &s in self.digit_order.iter().rev() {
            let radix = self.slot_tables[s].count() as usize;
            out[s] = rest % radix + 1;
            rest /= radix;
        }
        out
    }

    /// Inverse of [`decode`](Self::decode).
    pub fn encode(&self, sub: &[usize]) -> usize {
        let mut acc = 0;
        for &s in &self.digit_order {
            let radix = self.slot_tables[s].count() as usize;
            acc = acc * radix + (sub[s] - 1);
        }
        acc + 1
    }

    pub fn to_config_string(&self) -> String {
        let config = CaseConfig {
            factors: self.factors.clone(),
            slots: self.slots.clone(),
        };
        toml::to_string(&config).expect("case config serializes")
    }
}

pub fn builtin_case(id: u32) -> Result<CaseDescriptor> {
    use SlotKind::*;
    let slot = |factor, kind| Slot { factor, kind };
    match id {
        1 => CaseDescriptor::new(
            vec![3, 3, 2],
            vec![slot(1, Standard), slot(2, Standard), slot(3, Standard)],
        ),
        2 => CaseDescriptor::new(vec![6, 2], vec![slot(1, Wedge2), slot(2, Standard)]),
        3 => CaseDescriptor::new(vec![5, 4], vec![slot(1, Wedge2), slot(2, Standard)]),
        4 => CaseDescriptor::new(vec![8], vec![slot(1, Wedge3)]),
        other => Err(Error::UnknownCase(other)),
    }
}

/// Reads a TOML case description:
///
/// ```toml
/// factors = [3, 3, 2]
/// slots = [
///     { factor = 1, kind = "standard" },
///     { factor = 2, kind = "standard" },
///     { factor = 3, kind = "standard" },
/// ]
/// ```
///
/// `kind` is one of `standard`, `wedge2`, `wedge3`; `factor` is 1-based.
pub fn parse_case_config(text: &str) -> Result<CaseDescriptor> {
    let config: CaseConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    CaseDescriptor::new(config.factors, config.slots)
}

/// `gamma_1, ..., gamma_N` in coordinate order.
pub fn weights(case: &CaseDescriptor) -> Vec<RatVector> {
    let mut set = [0usize; 3];
    (1..=case.n_coords)
        .map(|coord| {
            let mut v = RatVector::zeros(case.dim);
            let entries = v.as_mut_slice();
            for (s, sub) in case.decode(coord).into_iter().enumerate() {
                let slot = case.slots[s];
                let n = case.factors[slot.factor - 1];
                let w = slot.kind.degree();
                let block = case.blocks[slot.factor - 1].clone();
                let shift = rat(w as i64, n as i64).expect("n > 0");
                for e in &mut entries[block.clone()] {
                    *e -= &shift;
                }
                case.slot_tables[s].unrank_into(sub as u64, &mut set[..w]);
                for &i in &set[..w] {
                    entries[block.start + i - 1] += Rational::from_integer(1.into());
                }
            }
            v
        })
        .collect()
}

/// The invariant form `(a, b)_*`: the coordinatewise dot product across all
/// factor blocks.
pub fn inner_product(case: &CaseDescriptor, a: &RatVector, b: &RatVector) -> Result<Rational> {
    check_dim(case, a)?;
    dot(a, b)
}

/// Moves `a` into the dominant chamber: each factor block sorted ascending.
pub fn chamber_sort(case: &CaseDescriptor, a: &RatVector) -> RatVector {
    assert_eq!(a.len(), case.dim, "vector length must equal D");
    let mut out = a.clone();
    for block in &case.blocks {
        out.as_mut_slice()[block.clone()].sort();
    }
    out
}

pub fn zero_vector(case: &CaseDescriptor) -> RatVector {
    RatVector::zeros(case.dim)
}

pub fn in_chamber(case: &CaseDescriptor, a: &RatVector) -> bool {
    case.blocks
        .iter()
        .all(|b| a.as_slice()[b.clone()].windows(2).all(|w| w[0] <= w[1]))
}

pub fn block_sums_vanish(case: &CaseDescriptor, a: &RatVector) -> bool {
    case.blocks.iter().all(|b| {
        a.as_slice()[b.clone()]
            .iter()
            .fold(Rational::from_integer(0.into()), |acc, x| acc + x)
            == Rational::from_integer(0.into())
    })
}

fn check_dim(case: &CaseDescriptor, a: &RatVector) -> Result<()> {
    if a.len() != case.dim {
        return Err(Error::LengthMismatch { left: a.len(), right: case.dim });
    }
    Ok(())
}
