//! Compressed-row complex matrices used by the Fock-space and Pauli-sum oracles.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Square complex matrix in CSR layout with column indices sorted per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<Complex64>,
}

impl SparseMatrix {
    /// Assembles from `(row, col, value)` triplets; duplicates are summed and
    /// exact zeros removed.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet ({r},{c}) outside {dim}x{dim}");
            match rows[r].last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => rows[r].push((c, v)),
            }
        }
        Self::from_rows(dim, rows)
    }

    /// Rows must already be sorted by column without duplicates.
    pub(crate) fn from_rows(dim: usize, rows: Vec<Vec<(usize, Complex64)>>) -> Self {
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::new();
        let mut data = Vec::new();
        indptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v != Complex64::new(0.0, 0.0) {
                    indices.push(c);
                    data.push(v);
                }
            }
            indptr.push(indices.len());
        }
        SparseMatrix {
            dim,
            indptr,
            indices,
            data,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let row = self.indptr[r]..self.indptr[r + 1];
        match self.indices[row.clone()].binary_search(&c) {
            Ok(k) => self.data[row.start + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let row = self.indptr[r]..self.indptr[r + 1];
        self.indices[row.clone()]
            .iter()
            .copied()
            .zip(self.data[row].iter().copied())
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| self.row(r).map(|(c, a)| a * v[c]).sum())
            .collect()
    }

    pub fn adjoint(&self) -> SparseMatrix {
        let mut trips = Vec::with_capacity(self.nnz());
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                trips.push((c, r, v.conj()));
            }
        }
        SparseMatrix::from_triplets(self.dim, trips)
    }

    /// Largest entrywise `|A - B|`.
    pub fn max_abs_diff(&self, other: &SparseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            let (mut a, mut b) = (self.row(r).peekable(), other.row(r).peekable());
            loop {
                let d = match (a.peek(), b.peek()) {
                    (None, None) => break,
                    (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                        a.next();
                        b.next();
                        (va - vb).norm()
                    }
                    (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                        a.next();
                        va.norm()
                    }
                    (Some(&(_, va)), None) => {
                        a.next();
                        va.norm()
                    }
                    (_, Some(&(_, vb))) => {
                        b.next();
                        vb.norm()
                    }
                };
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Largest entrywise deviation from Hermiticity, `max |A - A†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Returns `P A P⁻¹` for the basis permutation `|j⟩ ↦ |perm[j]⟩`.
    pub fn permuted(&self, perm: &[usize]) -> SparseMatrix {
        assert_eq!(perm.len(), self.dim);
        let mut trips = Vec::with_capacity(self.nnz());
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                trips.push((perm[r], perm[c], v));
            }
        }
        SparseMatrix::from_triplets(self.dim, trips)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                m[(r, c)] = v;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(
            2,
            vec![(0, 1, c(1.0)), (0, 1, c(2.0)), (1, 0, c(1.0)), (1, 0, c(-1.0))],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 1), c(3.0));
        assert_eq!(m.get(1, 0), c(0.0));
    }

    #[test]
    fn adjoint_and_defect() {
        let m = SparseMatrix::from_triplets(2, vec![(0, 1, Complex64::new(0.0, 1.0))]);
        assert_eq!(m.adjoint().get(1, 0), Complex64::new(0.0, -1.0));
        assert!((m.hermiticity_defect() - 1.0).abs() < 1e-15);
        let h = SparseMatrix::from_triplets(
            2,
            vec![(0, 1, Complex64::new(0.0, 1.0)), (1, 0, Complex64::new(0.0, -1.0))],
        );
        assert_eq!(h.hermiticity_defect(), 0.0);
    }

    #[test]
    fn matvec_matches_dense() {
        let m = SparseMatrix::from_triplets(
            3,
            vec![(0, 0, c(1.0)), (0, 2, c(2.0)), (2, 1, Complex64::new(0.5, -1.0))],
        );
        let v = vec![c(1.0), c(2.0), c(3.0)];
        let d = m.to_dense() * nalgebra::DVector::from_vec(v.clone());
        let s = m.matvec(&v);
        for i in 0..3 {
            assert!((d[i] - s[i]).norm() < 1e-15);
        }
    }
}
