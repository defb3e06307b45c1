//! Closest point to the origin of the simplex spanned by a weight subset.
//!
//! For a witness `j_1 < ... < j_R` the candidate is `β' = Σ c_k γ_{j_k}` with
//! `Σ c_k = 1` and `β'` orthogonal to every `γ_{j_k} - γ_{j_1}`. That is the
//! square system `M c = e_1` with first row all ones and
//! `M[k][l] = (γ_{j_k} - γ_{j_1}, γ_{j_l})`. A candidate is kept only if `M`
//! is nonsingular and every `c_k > 0`, i.e. `β'` is interior to the simplex.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::case::{chamber_sort, weights, CaseDescriptor};
use crate::combinadic::Combination;
use crate::linalg::{dot_unchecked, is_positive, rref, RatMatrix, RatVector, Rational};
use crate::sieve::RepresentativeSet;

/// Weights of a case together with their Gram matrix under `( , )_*`.
pub struct WeightSystem {
    case: CaseDescriptor,
    weights: Vec<RatVector>,
    gram: Vec<Rational>,
}

impl WeightSystem {
    pub fn new(case: &CaseDescriptor) -> Self {
        let weights = weights(case);
        let n = weights.len();
        let mut gram = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let g = dot_unchecked(weights[i].as_slice(), weights[j].as_slice());
                gram[j * n + i] = g.clone();
                gram[i * n + j] = g;
            }
        }
        WeightSystem {
            case: case.clone(),
            weights,
            gram,
        }
    }

    pub fn case(&self) -> &CaseDescriptor {
        &self.case
    }

    pub fn weights(&self) -> &[RatVector] {
        &self.weights
    }

    /// 1-based weight `γ_i`.
    pub fn weight(&self, i: usize) -> &RatVector {
        &self.weights[i - 1]
    }

    /// `(γ_i, γ_j)_*`, 1-based.
    pub fn gram(&self, i: usize, j: usize) -> &Rational {
        &self.gram[(i - 1) * self.weights.len() + (j - 1)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Unique(Vec<Rational>),
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaCandidate {
    pub r: usize,
    pub witness: Combination,
    pub coeffs: Vec<Rational>,
    /// `Σ c_k γ_{j_k}` before moving into the chamber.
    pub beta_raw: RatVector,
    pub beta: RatVector,
}

/// The augmented `R x (R+1)` matrix `[M | e_1]`.
pub fn build_closest_matrix(system: &WeightSystem, witness: &Combination) -> RatMatrix {
    let idx = witness.indices();
    let r = idx.len();
    let mut m = RatMatrix::zeros(r, r + 1);
    for l in 0..=r {
        m.set(0, l, Rational::one());
    }
    for k in 1..r {
        for l in 0..r {
            let entry = system.gram(idx[k], idx[l]) - system.gram(idx[0], idx[l]);
            m.set(k, l, entry);
        }
    }
    m
}

pub fn beta_coefficient(system: &WeightSystem, witness: &Combination) -> Coefficients {
    let r = witness.len();
    let reduced = rref(&build_closest_matrix(system, witness));
    if reduced.get(r - 1, r - 1).is_one() {
        Coefficients::Unique((0..r).map(|i| reduced.get(i, r).clone()).collect())
    } else {
        Coefficients::Singular
    }
}

/// Runs the interior-closest-point test on one witness.
pub fn solve_witness(system: &WeightSystem, witness: &Combination) -> Option<BetaCandidate> {
    let Coefficients::Unique(coeffs) = beta_coefficient(system, witness) else {
        return None;
    };
    if !coeffs.iter().all(is_positive) {
        return None;
    }
    let mut beta_raw = RatVector::zeros(system.case.dim());
    for (c, &j) in coeffs.iter().zip(witness.indices()) {
        beta_raw
            .add_scaled(c, system.weight(j))
            .expect("weights have length D");
    }
    let beta = chamber_sort(&system.case, &beta_raw);
    Some(BetaCandidate {
        r: witness.len(),
        witness: witness.clone(),
        coeffs,
        beta_raw,
        beta,
    })
}

/// Accepted candidates in representative order. Runs on the current rayon
/// pool.
pub fn solve_candidates(system: &WeightSystem, reps: &RepresentativeSet) -> Vec<BetaCandidate> {
    reps.reps
        .par_iter()
        .map(|w| solve_witness(system, w))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
