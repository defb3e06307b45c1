//! Lexicographic ranking of `R`-combinations of `{1..N}`.
//!
//! Ranks and combination indices are 1-based at every public boundary.
//! Both directions are driven by two precomputed tables
//!
//! ```text
//! a[i][j] = C(N-i, R-i+1)   - C(N-j, R-i+1)
//! b[i][j] = C(N-i+1, R-i+1) - C(N-j, R-i+1)      (i = 1..R, j = i..N-R+i)
//! ```
//!
//! with the convention `C(n, n+1) = 0`. The rank of a sorted `c` is
//! `1 + sum_i a[i][c_i]`, and unranking picks `c_i` as the smallest `j` with
//! `b[i][j] >= m - sum_{l<i} a[l][c_l]`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient with `C(n, n+1) = 0`. Defined for `0 <= m <= n + 1`.
pub fn binom(n: i64, m: i64) -> Result<BigUint> {
    if n < 0 || m < 0 || m > n + 1 {
        return Err(Error::BinomialRange { n, m });
    }
    if m == n + 1 {
        return Ok(BigUint::zero());
    }
    let m = m.min(n - m) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for k in 0..m {
        acc = acc * BigUint::from(n - k) / BigUint::from(k + 1);
    }
    Ok(acc)
}

/// `C(n, m)` in 64 bits, zero when `m > n`. Panics on overflow.
pub(crate) fn binom_u64(n: usize, m: usize) -> u64 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for k in 0..m {
        // acc * (n - k) is divisible by k + 1 at every step
        let wide = acc as u128 * (n - k) as u128 / (k + 1) as u128;
        acc = u64::try_from(wide).expect("binomial coefficient overflows u64");
    }
    acc
}

/// A strictly increasing sequence `1 <= c_1 < ... < c_R <= N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Combination {
    indices: Vec<usize>,
    n: usize,
}

impl Combination {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        let r = indices.len();
        let invalid = |reason| Error::InvalidCombination {
            indices: indices.clone(),
            n,
            r,
            reason,
        };
        if r == 0 {
            return Err(invalid("empty"));
        }
        if indices.iter().any(|&c| c < 1 || c > n) {
            return Err(invalid("index out of range"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("not strictly increasing"));
        }
        Ok(Combination { indices, n })
    }

    /// Sorts first; rejects repeated indices.
    pub fn from_unsorted(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        Self::new(indices, n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl fmt::Display for Combination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug)]
pub struct RankTables {
    n: usize,
    r: usize,
    total: u64,
    // row-major R x (N + 1); column j holds the 1-based index j
    a: Vec<u64>,
    b: Vec<u64>,
}

impl RankTables {
    pub fn build(n: usize, r: usize) -> Result<Self> {
        if r < 1 || r > n {
            return Err(Error::CombinationContext { n, r });
        }
        let width = n + 1;
        let mut a = vec![0u64; r * width];
        let mut b = vec![0u64; r * width];
        for i in 1..=r {
            let k = r - i + 1;
            for j in i..=n - r + i {
                a[(i - 1) * width + j] = binom_u64(n - i, k) - binom_u64(n - j, k);
                b[(i - 1) * width + j] = binom_u64(n - i + 1, k) - binom_u64(n - j, k);
            }
        }
        Ok(RankTables {
            n,
            r,
            total: binom_u64(n, r),
            a,
            b,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `C(N, R)`, the largest rank.
    pub fn count(&self) -> u64 {
        self.total
    }

    /// `a_{i,j}` for `1 <= i <= R`, `i <= j <= N-R+i`.
    pub fn a(&self, i: usize, j: usize) -> u64 {
        self.check_entry(i, j);
        self.a[(i - 1) * (self.n + 1) + j]
    }

    /// `b_{i,j}` for `1 <= i <= R`, `i <= j <= N-R+i`.
    pub fn b(&self, i: usize, j: usize) -> u64 {
        self.check_entry(i, j);
        self.b[(i - 1) * (self.n + 1) + j]
    }

    fn check_entry(&self, i: usize, j: usize) {
        assert!(
            (1..=self.r).contains(&i) && (i..=self.n - self.r + i).contains(&j),
            "table entry ({i}, {j}) outside the defined range for N = {}, R = {}",
            self.n,
            self.r
        );
    }

    /// Rank of an arbitrary-order list of distinct indices.
    pub fn rank(&self, indices: &[usize]) -> Result<u64> {
        if indices.len() != self.r {
            return Err(Error::InvalidCombination {
                indices: indices.to_vec(),
                n: self.n,
                r: self.r,
                reason: "wrong length",
            });
        }
        let c = Combination::from_unsorted(indices.to_vec(), self.n)?;
        Ok(self.rank_combination(&c))
    }

    pub fn rank_combination(&self, c: &Combination) -> u64 {
        debug_assert_eq!(c.len(), self.r);
        let width = self.n + 1;
        1 + c
            .indices
            .iter()
            .enumerate()
            .map(|(i, &ci)| self.a[i * width + ci])
            .sum::<u64>()
    }

    /// Zero-based rank of an already sorted combination given as 1-based
    /// indices. No validation.
    #[inline(always)]
    pub(crate) fn rank0_sorted(&self, sorted: &[u8]) -> u64 {
        let width = self.n + 1;
        let mut acc = 0u64;
        for (i, &c) in sorted.iter().enumerate() {
            acc += self.a[i * width + c as usize];
        }
        acc
    }

    pub fn unrank(&self, m: u64) -> Result<Combination> {
        if m < 1 || m > self.total {
            return Err(Error::RankOutOfRange { rank: m, max: self.total });
        }
        let mut out = vec![0usize; self.r];
        self.unrank_into(m, &mut out);
        Ok(Combination { indices: out, n: self.n })
    }

    pub(crate) fn unrank_into(&self, m: u64, out: &mut [usize]) {
        let width = self.n + 1;
        let mut consumed = 0u64;
        for i in 1..=self.r {
            let target = m - consumed;
            let row = (i - 1) * width;
            let mut j = i;
            while self.b[row + j] < target {
                j += 1;
            }
            out[i - 1] = j;
            consumed += self.a[row + j];
        }
    }
}
