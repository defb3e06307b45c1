//! The Weyl group `S_{n_1} x ... x S_{n_k}` of a case and its action on the
//! coordinates of `V`.

use std::fmt::Write as _;

use itertools::Itertools;

use crate::case::CaseDescriptor;
use crate::error::{Error, Result};

/// A bijection of `{1..k}`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k + 1];
        for &x in &images {
            if x < 1 || x > k || seen[x] {
                return Err(Error::Parse(format!("not a permutation of 1..={k}: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &x)| x == k + 1)
    }
}

/// All `n!` permutations of `{1..n}` in lexicographic order of their image
/// lists.
pub fn enumerate_sym(n: usize) -> Result<Vec<Permutation>> {
    if !(1..=8).contains(&n) {
        return Err(Error::SymmetricDegree(n));
    }
    Ok((1..=n).permutations(n).map(Permutation).collect())
}

fn check_degrees(case: &CaseDescriptor, g: &[Permutation]) -> Result<()> {
    if g.len() != case.factors().len() || g.iter().zip(case.factors()).any(|(p, &n)| p.degree() != n) {
        return Err(Error::WeylDegree {
            got: g.len(),
            degrees: g.iter().map(Permutation::degree).collect(),
            expected: case.factors().to_vec(),
        });
    }
    Ok(())
}

/// Precomputed per-slot index sets, so that inducing many group elements
/// doesn't re-unrank the same sub-coordinates.
struct CoordinateCodec {
    // per coordinate (0-based), per slot: the factor index set (1-based)
    index_sets: Vec<Vec<Vec<usize>>>,
}

impl CoordinateCodec {
    fn new(case: &CaseDescriptor) -> Self {
        let index_sets = (1..=case.n_coords())
            .map(|coord| {
                case.decode(coord)
                    .into_iter()
                    .zip(case.slot_tables())
                    .map(|(sub, t)| t.unrank(sub as u64).expect("sub-index in range").indices().to_vec())
                    .collect()
            })
            .collect();
        CoordinateCodec { index_sets }
    }

    fn induce(&self, case: &CaseDescriptor, g: &[Permutation], out: &mut Vec<usize>) {
        out.clear();
        let mut sub = vec![0usize; case.slots().len()];
        let mut buf = [0usize; 3];
        for sets in &self.index_sets {
            for (s, (set, slot)) in sets.iter().zip(case.slots()).enumerate() {
                let p = &g[slot.factor - 1];
                let mapped = &mut buf[..set.len()];
                for (m, &i) in mapped.iter_mut().zip(set) {
                    *m = p.apply(i);
                }
                sub[s] = case.slot_tables()[s].rank(mapped).expect("image is a valid combination") as usize;
            }
            out.push(case.encode(&sub));
        }
    }
}

/// The permutation of `{1..N}` induced by `g = (g_1, ..., g_k)`, one
/// permutation per factor: each coordinate's index sets are mapped factorwise,
/// re-sorted and re-encoded.
pub fn induced_action(case: &CaseDescriptor, g: &[Permutation]) -> Result<Permutation> {
    check_degrees(case, g)?;
    let mut out = Vec::with_capacity(case.n_coords());
    CoordinateCodec::new(case).induce(case, g, &mut out);
    Ok(Permutation(out))
}

/// Every Weyl group element's induced coordinate permutation, in the order of
/// the product of lexicographic symmetric-group listings (first factor
/// slowest). Different group elements may induce the same permutation.
#[derive(Clone, Debug)]
pub struct InducedActionList {
    n: usize,
    // row-major: element k occupies images[k*n..(k+1)*n], 1-based values
    images: Vec<u8>,
}

impl InducedActionList {
    pub fn len(&self) -> usize {
        self.images.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize) -> Permutation {
        Permutation(self.row(k).iter().map(|&x| x as usize).collect())
    }

    pub(crate) fn row(&self, k: usize) -> &[u8] {
        &self.images[k * self.n..(k + 1) * self.n]
    }

    pub(crate) fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.images.chunks_exact(self.n)
    }

    /// One permutation per line, space-separated 1-based images.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for row in self.rows() {
            let line = row.iter().map(u8::to_string).join(" ");
            writeln!(s, "{line}").unwrap();
        }
        s
    }
}

pub fn weyl_list(case: &CaseDescriptor) -> Result<InducedActionList> {
    let per_factor = case
        .factors()
        .iter()
        .map(|&n| enumerate_sym(n))
        .collect::<Result<Vec<_>>>()?;
    let codec = CoordinateCodec::new(case);
    let n = case.n_coords();
    let mut images = Vec::with_capacity(case.weyl_order() as usize * n);
    let mut buf = Vec::with_capacity(n);
    let mut push = |g: &[Permutation]| {
        codec.induce(case, g, &mut buf);
        images.extend(buf.iter().map(|&x| x as u8));
    };
    if per_factor.len() == 1 {
        for p in &per_factor[0] {
            push(std::slice::from_ref(p));
        }
    } else {
        for g in per_factor.iter().map(|v| v.iter().cloned()).multi_cartesian_product() {
            push(&g);
        }
    }
    Ok(InducedActionList { n, images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case::{builtin_case, chamber_sort, weights};
    use crate::linalg::RatVector;
    use proptest::prelude::*;

    /// Acts on a t*-vector by permuting each factor block.
    fn act_on_vector(case: &CaseDescriptor, g: &[Permutation], v: &RatVector) -> RatVector {
        let mut out = v.clone();
        for (block, p) in case.blocks().iter().zip(g) {
            for i in 1..=p.degree() {
                out.as_mut_slice()[block.start + p.apply(i) - 1] = v[block.start + i - 1].clone();
            }
        }
        out
    }

    fn random_element(case: &CaseDescriptor, seed: &[usize]) -> Vec<Permutation> {
        case.factors()
            .iter()
            .zip(seed)
            .map(|(&n, &s)| {
                let all = enumerate_sym(n).unwrap();
                all[s % all.len()].clone()
            })
            .collect()
    }

    #[test]
    fn sym_listings() {
        let s3 = enumerate_sym(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert!(s3[0].is_identity());
        assert_eq!(s3[5].images(), &[3, 2, 1]);
        assert_eq!(enumerate_sym(1).unwrap(), vec![Permutation::identity(1)]);
        let s8 = enumerate_sym(8).unwrap();
        assert_eq!(s8.len(), 40320);
        let distinct: std::collections::HashSet<_> = s8.iter().collect();
        assert_eq!(distinct.len(), 40320);
        assert!(enumerate_sym(0).is_err());
        assert!(enumerate_sym(9).is_err());
    }

    #[test]
    fn identity_induces_identity() {
        for id in 1..=4 {
            let c = builtin_case(id).unwrap();
            let e: Vec<_> = c.factors().iter().map(|&n| Permutation::identity(n)).collect();
            assert!(induced_action(&c, &e).unwrap().is_identity());
        }
    }

    #[test]
    fn case_one_matches_explicit_index_formula() {
        // coordinate 9(i-1) + 3(j-1) + k carries (GL_2 index i, first GL_3
        // index j, second GL_3 index k)
        let c = builtin_case(1).unwrap();
        for s1 in enumerate_sym(3).unwrap() {
            for s2 in [enumerate_sym(3).unwrap()[3].clone(), Permutation::identity(3)] {
                for s3 in enumerate_sym(2).unwrap() {
                    let g = vec![s1.clone(), s2.clone(), s3.clone()];
                    let induced = induced_action(&c, &g).unwrap();
                    for i in 1..=2 {
                        for j in 1..=3 {
                            for k in 1..=3 {
                                let from = 9 * (i - 1) + 3 * (j - 1) + k;
                                let to = 9 * (s3.apply(i) - 1) + 3 * (s1.apply(j) - 1) + s2.apply(k);
                                assert_eq!(induced.apply(from), to);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let c = builtin_case(3).unwrap();
        let bad = vec![Permutation::identity(4), Permutation::identity(5)];
        assert!(matches!(induced_action(&c, &bad), Err(Error::WeylDegree { .. })));
        assert!(induced_action(&c, &[Permutation::identity(5)]).is_err());
    }

    #[test]
    fn list_sizes() {
        for (id, n) in [(1, 72), (2, 1440), (3, 2880)] {
            let list = weyl_list(&builtin_case(id).unwrap()).unwrap();
            assert_eq!(list.len(), n);
            assert!(list.get(0).is_identity());
        }
    }

    #[test]
    fn list_entries_are_compatible_with_weights() {
        for id in 1..=3 {
            let c = builtin_case(id).unwrap();
            let ws = weights(&c);
            let list = weyl_list(&c).unwrap();
            let per_factor: Vec<_> = c.factors().iter().map(|&n| enumerate_sym(n).unwrap()).collect();
            for (k, g) in per_factor.iter().map(|v| v.iter().cloned()).multi_cartesian_product().enumerate() {
                let sigma = list.get(k);
                for i in 1..=c.n_coords() {
                    assert_eq!(ws[sigma.apply(i) - 1], act_on_vector(&c, &g, &ws[i - 1]));
                }
            }
        }
    }

    #[test]
    fn dump_format() {
        let list = weyl_list(&builtin_case(1).unwrap()).unwrap();
        let dump = list.dump();
        assert_eq!(dump.lines().count(), 72);
        assert_eq!(dump.lines().next().unwrap(), (1..=18).map(|x| x.to_string()).join(" "));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn induction_is_a_homomorphism(id in 1u32..=4, a in proptest::collection::vec(0usize..40320, 3), b in proptest::collection::vec(0usize..40320, 3)) {
            let c = builtin_case(id).unwrap();
            let g = random_element(&c, &a);
            let h = random_element(&c, &b);
            let gh: Vec<_> = g.iter().zip(&h).map(|(x, y)| x.compose(y)).collect();
            let lhs = induced_action(&c, &gh).unwrap();
            let rhs = induced_action(&c, &g).unwrap().compose(&induced_action(&c, &h).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn chamber_sort_is_orbit_invariant(id in 1u32..=4, a in proptest::collection::vec(0usize..40320, 3), coord in 1usize..=18, other in 1usize..=18) {
            let c = builtin_case(id).unwrap();
            let ws = weights(&c);
            let g = random_element(&c, &a);
            let mut v = ws[coord - 1].clone();
            v.add_scaled(&crate::linalg::rat(2, 7).unwrap(), &ws[other - 1]).unwrap();
            let moved = act_on_vector(&c, &g, &v);
            prop_assert_eq!(chamber_sort(&c, &moved), chamber_sort(&c, &v));
        }
    }
}
