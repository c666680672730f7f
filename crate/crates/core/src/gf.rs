//! Dense linear algebra over prime fields F_p, p < 2^31.
//!
//! Row-major matrices with reduced-row-echelon canonicalization; the RREF
//! basis is the canonical encoding of a subspace, so equal subspaces have
//! identical representations and can be compared bitwise.

use rand::Rng;

/// A matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GfMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl GfMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        GfMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = GfMat::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = GfMat::zero(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u64]) {
        debug_assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().map(|&v| v % self.p));
        self.rows += 1;
    }

    pub fn vstack(&self, other: &GfMat) -> GfMat {
        debug_assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        m.data.extend_from_slice(&other.data);
        m.rows += other.rows;
        m
    }

    pub fn transpose(&self) -> GfMat {
        let mut out = GfMat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &GfMat) -> GfMat {
        debug_assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = GfMat::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % p;
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        // p prime, a != 0
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (p, rows, cols) = (self.p, self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let piv = (r..rows).find(|&i| self.get(i, c) != 0);
            let Some(piv) = piv else { continue };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(r * cols + j, piv * cols + j);
                }
            }
            let inv = Self::inv_mod(self.get(r, c), p);
            for j in c..cols {
                let v = self.get(r, j) * inv % p;
                self.data[r * cols + j] = v;
            }
            for i in 0..rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in c..cols {
                        let v = (self.get(i, j) + (p - f) * self.get(r, j)) % p;
                        self.data[i * cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        // drop zero rows
        self.data.truncate(r * cols);
        self.rows = r;
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref();
        m.rows
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<GfMat> {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = GfMat::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = GfMat::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }

    /// A uniformly random invertible n x n matrix (rejection sampling).
    pub fn random_invertible(p: u64, n: usize, rng: &mut impl Rng) -> GfMat {
        loop {
            let mut m = GfMat::zero(p, n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, rng.gen_range(0..p));
                }
            }
            if m.rank() == n {
                return m;
            }
        }
    }
}

/// A subspace of F_p^d in canonical reduced-echelon encoding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    basis: GfMat,
}

impl Subspace {
    /// Canonicalize a spanning set.
    pub fn from_span(mut mat: GfMat) -> Subspace {
        mat.rref();
        Subspace { basis: mat }
    }

    pub fn zero(p: u64, ambient: usize) -> Subspace {
        Subspace { basis: GfMat::zero(p, 0, ambient) }
    }

    pub fn full(p: u64, ambient: usize) -> Subspace {
        Subspace { basis: GfMat::identity(p, ambient) }
    }

    pub fn p(&self) -> u64 {
        self.basis.p
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &GfMat {
        &self.basis
    }

    pub fn sum_dim(&self, other: &Subspace) -> usize {
        self.basis.vstack(&other.basis).rank()
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum_dim(other)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.sum_dim(other) == self.dim()
    }

    /// Span of self plus extra rows.
    pub fn extend_with(&self, extra: &[Vec<u64>]) -> Subspace {
        let mut m = self.basis.clone();
        for r in extra {
            m.push_row(r);
        }
        Subspace::from_span(m)
    }

    /// Rows of `within` completing this subspace's basis to a basis of
    /// `within`; the returned rows project to a basis of within/self.
    pub fn complement_in(&self, within: &Subspace) -> Vec<Vec<u64>> {
        debug_assert!(within.contains(self));
        let mut acc = self.basis.clone();
        let mut out = Vec::new();
        for i in 0..within.basis.rows {
            let cand = within.basis.row(i).to_vec();
            let mut test = acc.clone();
            test.push_row(&cand);
            if test.rank() > acc.rows {
                acc.push_row(&cand);
                acc.rref();
                out.push(cand);
            }
        }
        debug_assert_eq!(out.len(), within.dim() - self.dim());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rref_canonical() {
        let p = 5;
        let a = GfMat::from_rows(p, 3, &[vec![1, 2, 3], vec![2, 4, 1]]);
        let b = GfMat::from_rows(p, 3, &[vec![3, 6, 4], vec![1, 2, 3]]);
        assert_eq!(Subspace::from_span(a), Subspace::from_span(b));
    }

    #[test]
    fn intersection_dims() {
        let p = 3;
        let u = Subspace::from_span(GfMat::from_rows(p, 3, &[vec![1, 0, 0], vec![0, 1, 0]]));
        let w = Subspace::from_span(GfMat::from_rows(p, 3, &[vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(u.intersection_dim(&w), 1);
        assert_eq!(u.sum_dim(&w), 3);
        assert!(u.contains(&Subspace::from_span(GfMat::from_rows(p, 3, &[vec![1, 2, 0]]))));
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2u64, 3, 7] {
            for n in 1..=4 {
                let g = GfMat::random_invertible(p, n, &mut rng);
                let gi = g.inverse().unwrap();
                assert_eq!(g.mul(&gi), GfMat::identity(p, n));
            }
        }
    }

    #[test]
    fn complement_spans() {
        let p = 2;
        let s = Subspace::from_span(GfMat::from_rows(p, 4, &[vec![1, 1, 0, 0]]));
        let t = Subspace::from_span(GfMat::from_rows(
            p,
            4,
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]],
        ));
        let c = s.complement_in(&t);
        assert_eq!(c.len(), 2);
        let rebuilt = s.extend_with(&c);
        assert_eq!(rebuilt, t);
    }
}
