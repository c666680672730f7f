//! Orbit labels: (N+1) x (N+1) matrices of naturals with total sum d.
//!
//! A [`ProfileMatrix`] classifies a GL(D)-orbit on a product of two partial
//! flag varieties (rows index the first flag's steps, columns the second's);
//! it doubles as the basis label of the convolution algebra, where the same
//! type is referred to as `MatrixIdx`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::flagcount::FlagType;

/// Intersection-increment matrix of a flag pair; also the standard-basis
/// label of the convolution algebra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProfileMatrix {
    entries: Vec<Vec<u32>>,
}

/// Basis labels of the convolution algebra share the profile-matrix encoding.
pub type MatrixIdx = ProfileMatrix;

impl ProfileMatrix {
    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::domain("profile matrix must be square and nonempty"));
        }
        Ok(ProfileMatrix { entries })
    }

    /// Diagonal matrix with the given increments.
    pub fn diagonal(incr: &[u32]) -> Self {
        let n = incr.len();
        let mut entries = vec![vec![0u32; n]; n];
        for (i, &v) in incr.iter().enumerate() {
            entries[i][i] = v;
        }
        ProfileMatrix { entries }
    }

    /// Side length N+1.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Number of flag steps N.
    pub fn n(&self) -> usize {
        self.size() - 1
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &Vec<Vec<u32>> {
        &self.entries
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().flatten().sum()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.size())
            .map(|j| self.entries.iter().map(|r| r[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let mut entries = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                entries[j][i] = self.entries[i][j];
            }
        }
        ProfileMatrix { entries }
    }

    /// Flag type whose increments are the row sums.
    pub fn row_type(&self) -> FlagType {
        FlagType::from_increments(&self.row_sums())
    }

    /// Flag type whose increments are the column sums.
    pub fn col_type(&self) -> FlagType {
        FlagType::from_increments(&self.col_sums())
    }

    /// Cumulative sum table M(i,j) = sum_{r<=i, s<=j} a_{rs}, 1-based corners.
    fn partial_sum(&self, i: usize, j: usize) -> u32 {
        let mut s = 0;
        for r in 0..=i {
            for c in 0..=j {
                s += self.entries[r][c];
            }
        }
        s
    }

    /// Orbit-closure order: `b <= a` iff every cumulative intersection of b
    /// dominates that of a (deeper degeneration has larger intersections).
    /// Requires equal margins.
    pub fn closure_leq(b: &ProfileMatrix, a: &ProfileMatrix) -> Result<bool> {
        if a.row_sums() != b.row_sums() || a.col_sums() != b.col_sums() {
            return Err(Error::domain("closure_leq: margin mismatch"));
        }
        let n = a.size();
        for i in 0..n {
            for j in 0..n {
                if b.partial_sum(i, j) < a.partial_sum(i, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All matrices with the given margins, in lexicographic order.
    pub fn with_margins(rows: &[u32], cols: &[u32]) -> Vec<ProfileMatrix> {
        assert_eq!(rows.len(), cols.len());
        let n = rows.len();
        let mut out = Vec::new();
        let mut acc: Vec<Vec<u32>> = Vec::new();
        fn rec(
            rows: &[u32],
            cols_rem: &mut Vec<u32>,
            n: usize,
            acc: &mut Vec<Vec<u32>>,
            out: &mut Vec<ProfileMatrix>,
        ) {
            if acc.len() == rows.len() {
                if cols_rem.iter().all(|&c| c == 0) {
                    out.push(ProfileMatrix { entries: acc.clone() });
                }
                return;
            }
            let target = rows[acc.len()];
            let mut row = vec![0u32; n];
            fn fill(
                j: usize,
                left: u32,
                row: &mut Vec<u32>,
                rows: &[u32],
                cols_rem: &mut Vec<u32>,
                n: usize,
                acc: &mut Vec<Vec<u32>>,
                out: &mut Vec<ProfileMatrix>,
            ) {
                if j == n - 1 {
                    if left > cols_rem[j] {
                        return;
                    }
                    row[j] = left;
                    cols_rem[j] -= left;
                    acc.push(row.clone());
                    rec(rows, cols_rem, n, acc, out);
                    acc.pop();
                    cols_rem[j] += left;
                    return;
                }
                for v in 0..=left.min(cols_rem[j]) {
                    row[j] = v;
                    cols_rem[j] -= v;
                    fill(j + 1, left - v, row, rows, cols_rem, n, acc, out);
                    cols_rem[j] += v;
                }
                row[j] = 0;
            }
            fill(0, target, &mut row, rows, cols_rem, n, acc, out);
        }
        let mut cols_rem = cols.to_vec();
        rec(rows, &mut cols_rem, n, &mut acc, &mut out);
        out
    }

    /// Closed-form first-projection fiber dimension: sum of a_{ij} a_{kl}
    /// over ordered position pairs with i >= k and j < l. Test oracle for the
    /// interpolated degree.
    pub fn fiber_dim_formula(&self) -> usize {
        let n = self.size();
        let mut tot = 0usize;
        for i in 0..n {
            for j in 0..n {
                if self.entries[i][j] == 0 {
                    continue;
                }
                for k in 0..=i {
                    for l in (j + 1)..n {
                        tot += (self.entries[i][j] * self.entries[k][l]) as usize;
                    }
                }
            }
        }
        tot
    }
}

impl fmt::Debug for ProfileMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{:?}", r)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ProfileMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(rows: &[&[u32]]) -> ProfileMatrix {
        ProfileMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn margins() {
        let a = pm(&[&[1, 0], &[1, 2]]);
        assert_eq!(a.row_sums(), vec![1, 3]);
        assert_eq!(a.col_sums(), vec![2, 2]);
        assert_eq!(a.total(), 4);
    }

    #[test]
    fn closure_order_basics() {
        let a = pm(&[&[0, 1], &[1, 0]]);
        let diag = pm(&[&[1, 0], &[0, 1]]);
        assert!(ProfileMatrix::closure_leq(&a, &a).unwrap());
        assert!(ProfileMatrix::closure_leq(&diag, &a).unwrap());
        assert!(!ProfileMatrix::closure_leq(&a, &diag).unwrap());
        let other = pm(&[&[1, 0], &[1, 1]]);
        assert!(ProfileMatrix::closure_leq(&a, &other).is_err());
    }

    #[test]
    fn diagonal_is_unique_minimum() {
        // among all matrices with margins (1,1,1)x(1,1,1) the identity is <= all
        let labels = ProfileMatrix::with_margins(&[1, 1, 1], &[1, 1, 1]);
        assert_eq!(labels.len(), 6);
        let diag = ProfileMatrix::diagonal(&[1, 1, 1]);
        for a in &labels {
            assert!(ProfileMatrix::closure_leq(&diag, a).unwrap());
        }
    }

    #[test]
    fn antichain_exists_at_n2_d3() {
        // exhaustive scan: some pair of distinct labels with common margins
        // is incomparable both ways
        let labels = ProfileMatrix::with_margins(&[1, 1, 1], &[1, 1, 1]);
        let mut found = false;
        for a in &labels {
            for b in &labels {
                if a != b
                    && !ProfileMatrix::closure_leq(a, b).unwrap()
                    && !ProfileMatrix::closure_leq(b, a).unwrap()
                {
                    found = true;
                }
            }
        }
        assert!(found, "expected an antichain in the N=2, d=3 poset");
    }

    #[test]
    fn with_margins_counts() {
        // 2x2 matrices with margins (2,2)x(2,2): entries determined by a11: 0..2
        let ms = ProfileMatrix::with_margins(&[2, 2], &[2, 2]);
        assert_eq!(ms.len(), 3);
        for m in &ms {
            assert_eq!(m.row_sums(), vec![2, 2]);
            assert_eq!(m.col_sums(), vec![2, 2]);
        }
    }
}
