//! Exact rational scalars, vectors and matrices.
//!
//! Everything downstream of the weight lists is computed over `Q` with
//! arbitrary-precision integers; there is no floating point anywhere in the
//! pipeline.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::ZeroDenominator { num: num.to_string() });
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, including `q = 1`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator { num: num.to_string() });
    }
    Ok(BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn zeros(len: usize) -> Self {
        RatVector(vec![Rational::zero(); len])
    }

    pub fn from_vec(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RatVector(entries.iter().map(|&x| int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.0
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [Rational] {
        &mut self.0
    }

    /// `self += coeff * other`.
    pub fn add_scaled(&mut self, coeff: &Rational, other: &RatVector) -> Result<()> {
        check_len(self.len(), other.len())?;
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += coeff * b;
            }
        }
        Ok(())
    }

    pub fn scaled(&self, coeff: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|x| x * coeff).collect())
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

pub fn dot(a: &RatVector, b: &RatVector) -> Result<Rational> {
    check_len(a.len(), b.len())?;
    Ok(dot_unchecked(a.as_slice(), b.as_slice()))
}

pub(crate) fn dot_unchecked(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Dense row-major rational matrix with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            check_len(row.len(), cols)?;
            data.extend(row);
        }
        Ok(RatMatrix { rows: nrows, cols, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> RatVector {
        RatVector((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn mul_vec(&self, v: &RatVector) -> Result<RatVector> {
        check_len(self.cols, v.len())?;
        Ok(RatVector(
            (0..self.rows).map(|r| dot_unchecked(self.row(r), v.as_slice())).collect(),
        ))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Reduced row echelon form by Gauss-Jordan elimination, pivoting on the first
/// nonzero entry of each column.
pub fn rref(m: &RatMatrix) -> RatMatrix {
    let mut a = m.clone();
    let cols = a.cols;
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == a.rows {
            break;
        }
        let Some(found) = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(pivot_row, found);

        let inv = a.get(pivot_row, col).recip();
        for c in col..cols {
            let idx = pivot_row * cols + c;
            if !a.data[idx].is_zero() {
                a.data[idx] *= &inv;
            }
        }

        for r in 0..a.rows {
            if r == pivot_row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..cols {
                let p = a.data[pivot_row * cols + c].clone();
                if !p.is_zero() {
                    a.data[r * cols + c] -= &factor * p;
                }
            }
        }
        pivot_row += 1;
    }
    a
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    /// Textbook Gauss-Jordan over (numerator, denominator) pairs of i128,
    /// independent of `rref` and of num-rational.
    fn naive_rref(rows: &[Vec<(i128, i128)>]) -> Vec<Vec<(i128, i128)>> {
        fn norm((n, d): (i128, i128)) -> (i128, i128) {
            fn gcd(a: i128, b: i128) -> i128 {
                if b == 0 { a.abs() } else { gcd(b, a % b) }
            }
            let g = gcd(n, d).max(1);
            let s = if d < 0 { -1 } else { 1 };
            (s * n / g, s * d / g)
        }
        let sub = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.1 - b.0 * a.1, a.1 * b.1));
        let mul = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.0, a.1 * b.1));
        let div = |a: (i128, i128), b: (i128, i128)| norm((a.0 * b.1, a.1 * b.0));
        let mut m: Vec<Vec<(i128, i128)>> =
            rows.iter().map(|row| row.iter().map(|&x| norm(x)).collect()).collect();
        let (nr, nc) = (m.len(), m[0].len());
        let mut lead = 0;
        for c in 0..nc {
            if lead >= nr {
                break;
            }
            let Some(p) = (lead..nr).find(|&i| m[i][c].0 != 0) else { continue };
            m.swap(lead, p);
            let pv = m[lead][c];
            for j in 0..nc {
                m[lead][j] = div(m[lead][j], pv);
            }
            for i in 0..nr {
                if i != lead {
                    let f = m[i][c];
                    for j in 0..nc {
                        m[i][j] = sub(m[i][j], mul(f, m[lead][j]));
                    }
                }
            }
            lead += 1;
        }
        m
    }

    #[test]
    fn rat_canonical_forms() {
        assert_eq!(format_rational(&r(2, 4)), "1/2");
        assert_eq!(format_rational(&r(3, -6)), "-1/2");
        assert_eq!(format_rational(&r(0, 7)), "0/1");
        assert!(matches!(rat(1, 0), Err(Error::ZeroDenominator { .. })));
    }

    #[test]
    fn parse_accepts_fraction_and_integer() {
        assert_eq!(parse_rational("-6/4").unwrap(), r(-3, 2));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rref_small_examples() {
        let id = RatMatrix::identity(3);
        assert_eq!(rref(&id), id);
        let m = RatMatrix::from_int_rows(&[&[2, 4], &[1, 2]]).unwrap();
        let expected = RatMatrix::from_int_rows(&[&[1, 2], &[0, 0]]).unwrap();
        assert_eq!(rref(&m), expected);
    }

    #[test]
    fn rref_leaves_input_untouched() {
        let m = RatMatrix::from_int_rows(&[&[0, 3, 1], &[2, 1, 0]]).unwrap();
        let copy = m.clone();
        let _ = rref(&m);
        assert_eq!(m, copy);
    }

    #[test]
    fn dot_examples() {
        let a = RatVector::from_ints(&[1, 0]);
        let b = RatVector::from_ints(&[0, 1]);
        assert_eq!(dot(&a, &b).unwrap(), int(0));
        let c = RatVector::from_vec(vec![r(1, 2), r(1, 3)]);
        let d = RatVector::from_ints(&[2, 3]);
        assert_eq!(dot(&c, &d).unwrap(), int(2));
        assert!(matches!(
            dot(&a, &RatVector::zeros(3)),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
    }

    fn small_rat() -> impl Strategy<Value = (i64, i64)> {
        (-9i64..=9, 1i64..=6)
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<(i64, i64)>>> {
        proptest::collection::vec(proptest::collection::vec(small_rat(), cols), rows)
    }

    fn to_matrix(m: &[Vec<(i64, i64)>]) -> RatMatrix {
        RatMatrix::from_rows(m.iter().map(|row| row.iter().map(|&(n, d)| r(n, d)).collect()).collect())
            .unwrap()
    }

    fn is_rref(m: &RatMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..m.rows() {
            let lead = (0..m.cols()).find(|&c| !m.get(i, c).is_zero());
            match lead {
                None => seen_zero_row = true,
                Some(c) => {
                    if seen_zero_row || last_pivot.is_some_and(|p| c <= p) || !m.get(i, c).is_one() {
                        return false;
                    }
                    if (0..m.rows()).any(|k| k != i && !m.get(k, c).is_zero()) {
                        return false;
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn rref_matches_naive_oracle(m in matrix(5, 6)) {
            let got = rref(&to_matrix(&m));
            let oracle = naive_rref(
                &m.iter().map(|row| row.iter().map(|&(n, d)| (n as i128, d as i128)).collect()).collect::<Vec<_>>(),
            );
            for i in 0..5 {
                for j in 0..6 {
                    let (n, d) = oracle[i][j];
                    prop_assert_eq!(got.get(i, j), &r(n as i64, d as i64));
                }
            }
        }

        #[test]
        fn rref_is_reduced_and_idempotent(m in matrix(4, 5)) {
            let once = rref(&to_matrix(&m));
            prop_assert!(is_rref(&once));
            prop_assert_eq!(rref(&once), once);
        }

        #[test]
        fn rref_preserves_row_space(m in matrix(3, 4)) {
            // Each row of rref(m) must be expressible from rows of m: solve
            // m^T x = row by reducing [m^T | row] and checking consistency.
            let a = to_matrix(&m);
            let reduced = rref(&a);
            for i in 0..reduced.rows() {
                let mut aug = RatMatrix::zeros(a.cols(), a.rows() + 1);
                for c in 0..a.cols() {
                    for rr in 0..a.rows() {
                        aug.set(c, rr, a.get(rr, c).clone());
                    }
                    aug.set(c, a.rows(), reduced.get(i, c).clone());
                }
                let sol = rref(&aug);
                let inconsistent = (0..sol.rows()).any(|k| {
                    (0..a.rows()).all(|c| sol.get(k, c).is_zero()) && !sol.get(k, a.rows()).is_zero()
                });
                prop_assert!(!inconsistent);
            }
        }

        #[test]
        fn augmented_unit_system_solves(m in matrix(4, 4)) {
            let a = to_matrix(&m);
            let mut aug = RatMatrix::zeros(4, 5);
            for i in 0..4 {
                for j in 0..4 {
                    aug.set(i, j, a.get(i, j).clone());
                }
            }
            aug.set(0, 4, int(1));
            let red = rref(&aug);
            if red.get(3, 3).is_one() {
                let d = red.column(4);
                let mut e1 = RatVector::zeros(4);
                e1.as_mut_slice()[0] = int(1);
                prop_assert_eq!(a.mul_vec(&d).unwrap(), e1);
            }
        }

        #[test]
        fn arithmetic_stays_canonical(xs in proptest::collection::vec((-50i64..50, 1i64..40), 1..12)) {
            let mut acc = int(1);
            for (k, &(n, d)) in xs.iter().enumerate() {
                let x = r(n, d);
                acc = match k % 3 {
                    0 => acc + x,
                    1 => acc * x,
                    _ => acc - x,
                };
                prop_assert!(acc.denom().is_positive());
                prop_assert!(num_integer::Integer::gcd(acc.numer(), acc.denom()).is_one());
            }
        }

        #[test]
        fn self_dot_is_positive_definite(v in proptest::collection::vec(small_rat(), 1..8)) {
            let v = RatVector::from_vec(v.iter().map(|&(n, d)| r(n, d)).collect());
            let s = dot(&v, &v).unwrap();
            prop_assert!(!s.is_negative());
            prop_assert_eq!(s.is_zero(), v.is_zero());
        }
    }
}
