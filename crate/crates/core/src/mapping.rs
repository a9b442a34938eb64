//! Jordan-Wigner and Bravyi-Kitaev images of fermionic operators.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermion::{FermionOperator, FermionTerm};
use crate::pauli::{PauliAxis, PauliString, PauliTerm, QubitOperator, DROP_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MappingScheme {
    JordanWigner,
    BravyiKitaev,
}

impl MappingScheme {
    pub const ALL: [MappingScheme; 2] = [MappingScheme::JordanWigner, MappingScheme::BravyiKitaev];

    pub fn short_name(self) -> &'static str {
        match self {
            MappingScheme::JordanWigner => "jw",
            MappingScheme::BravyiKitaev => "bk",
        }
    }
}

impl fmt::Display for MappingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for MappingScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jw" | "jordan-wigner" | "jordanwigner" => Ok(MappingScheme::JordanWigner),
            "bk" | "bravyi-kitaev" | "bravyikitaev" => Ok(MappingScheme::BravyiKitaev),
            other => Err(Error::Argument(format!("unknown mapping '{other}'"))),
        }
    }
}

/// Square matrix over GF(2), one packed row per entry.
#[derive(Clone, PartialEq, Eq)]
pub struct TransformMatrix {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl TransformMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = TransformMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    fn zeros(n: usize) -> Self {
        TransformMatrix {
            n,
            rows: vec![vec![0; n.div_ceil(64)]; n],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.len();
        let mut m = TransformMatrix::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "row {i} has the wrong length");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i][j / 64] >> (j % 64)) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize, v: bool) {
        let m = 1u64 << (j % 64);
        if v {
            self.rows[i][j / 64] |= m;
        } else {
            self.rows[i][j / 64] &= !m;
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    /// `M · v (mod 2)`.
    pub fn apply(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| v[j] && self.get(i, j)).count() % 2 == 1)
            .collect()
    }

    pub fn is_unit_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) && (i + 1..self.n).all(|j| !self.get(i, j)))
    }

    /// Inverse over GF(2) by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<TransformMatrix> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv = TransformMatrix::identity(n).rows;
        for col in 0..n {
            let (w, b) = (col / 64, 1u64 << (col % 64));
            let pivot = (col..n).find(|&r| a[r][w] & b != 0)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r][w] & b != 0 {
                    let (src_a, src_i) = (a[col].clone(), inv[col].clone());
                    for (x, y) in a[r].iter_mut().zip(&src_a) {
                        *x ^= y;
                    }
                    for (x, y) in inv[r].iter_mut().zip(&src_i) {
                        *x ^= y;
                    }
                }
            }
        }
        Some(TransformMatrix { n, rows: inv })
    }
}

impl fmt::Debug for TransformMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_rows() {
            let s: String = r.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Bravyi-Kitaev encoding matrix taking orbital occupations to qubit states.
///
/// Built by binary-tree doubling, `β_2k = [[β_k, 0], [A, β_k]]` with `A` zero
/// except for an all-ones last row. Sizes that are not a power of two use the
/// top-left block of the next power of two.
pub fn bk_matrix(n: usize) -> TransformMatrix {
    let size = n.max(1).next_power_of_two();
    let mut m = TransformMatrix::identity(size);
    let mut block = 1;
    while block < size {
        for start in (0..size).step_by(2 * block) {
            // Last qubit of the upper half-block stores the parity of the whole lower half-block.
            let row = start + 2 * block - 1;
            for j in start..start + block {
                m.set(row, j, true);
            }
        }
        block *= 2;
    }
    let mut out = TransformMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            out.set(i, j, m.get(i, j));
        }
    }
    out
}

/// Qubit index sets used to build the Bravyi-Kitaev ladder operators of one orbital.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BkIndexSets {
    /// Qubits above `i` whose stored value includes orbital `i`.
    pub update: Vec<usize>,
    /// Qubits whose states sum to the parity of orbitals `0..i`.
    pub parity: Vec<usize>,
    /// Qubits below `i` that, with qubit `i`, sum to the occupation of orbital `i`.
    pub flip: Vec<usize>,
    /// `parity \ flip`.
    pub remainder: Vec<usize>,
}

/// All per-orbital index sets of an `n`-qubit Bravyi-Kitaev encoding.
#[derive(Debug, Clone)]
pub struct BkTables {
    pub matrix: TransformMatrix,
    pub inverse: TransformMatrix,
    pub sets: Vec<BkIndexSets>,
}

impl BkTables {
    pub fn new(n: usize) -> Self {
        let matrix = bk_matrix(n);
        let inverse = matrix.inverse().expect("unit lower-triangular matrices are invertible");
        let mut sets = Vec::with_capacity(n);
        let mut prefix = vec![false; n];
        for i in 0..n {
            let update = (i + 1..n).filter(|&k| matrix.get(k, i)).collect();
            let parity: Vec<usize> = (0..n).filter(|&k| prefix[k]).collect();
            let flip: Vec<usize> = (0..i).filter(|&k| inverse.get(i, k)).collect();
            let remainder = parity.iter().copied().filter(|k| !flip.contains(k)).collect();
            sets.push(BkIndexSets {
                update,
                parity,
                flip,
                remainder,
            });
            for (k, p) in prefix.iter_mut().enumerate() {
                *p ^= inverse.get(i, k);
            }
        }
        BkTables {
            matrix,
            inverse,
            sets,
        }
    }
}

pub fn bk_index_sets(i: usize, n: usize) -> Result<BkIndexSets> {
    if i >= n {
        return Err(Error::Dimension(format!("orbital {i} outside {n} modes")));
    }
    Ok(BkTables::new(n).sets.swap_remove(i))
}

/// Qubit-register state for the given orbital occupations.
pub fn occupation_to_qubits(occ: &[bool], scheme: MappingScheme, n: usize) -> Result<Vec<bool>> {
    if occ.len() != n {
        return Err(Error::Dimension(format!(
            "occupation vector of length {} for {n} modes",
            occ.len()
        )));
    }
    Ok(match scheme {
        MappingScheme::JordanWigner => occ.to_vec(),
        MappingScheme::BravyiKitaev => bk_matrix(n).apply(occ),
    })
}

/// The basis permutation `|occupation⟩ ↦ |qubit state⟩` of a scheme, as
/// indices with bit `j` for mode/qubit `j`.
pub fn basis_permutation(scheme: MappingScheme, n: usize) -> Vec<usize> {
    match scheme {
        MappingScheme::JordanWigner => (0..1usize << n).collect(),
        MappingScheme::BravyiKitaev => {
            let m = bk_matrix(n);
            let cols: Vec<usize> = (0..n)
                .map(|j| (0..n).filter(|&i| m.get(i, j)).map(|i| 1usize << i).sum())
                .collect();
            (0..1usize << n)
                .map(|b| {
                    cols.iter()
                        .enumerate()
                        .filter(|&(j, _)| b >> j & 1 == 1)
                        .fold(0, |acc, (_, &c)| acc ^ c)
                })
                .collect()
        }
    }
}

/// Precomputed qubit images `a†_j` and `a_j` for every mode of a register.
#[derive(Debug, Clone)]
pub struct LadderImages {
    n: usize,
    create: Vec<[PauliTerm; 2]>,
    annihilate: Vec<[PauliTerm; 2]>,
}

impl LadderImages {
    pub fn new(scheme: MappingScheme, n: usize) -> Self {
        let half = Complex64::new(0.5, 0.0);
        let half_i = Complex64::new(0.0, 0.5);
        let mut create = Vec::with_capacity(n);
        let mut annihilate = Vec::with_capacity(n);
        let tables = match scheme {
            MappingScheme::BravyiKitaev => Some(BkTables::new(n)),
            MappingScheme::JordanWigner => None,
        };
        for j in 0..n {
            // Real part: X on j, X on the update set, Z on the parity set.
            // Imaginary part: Y on j, X on the update set, Z on `rho`.
            let (update, parity, rho): (Vec<usize>, Vec<usize>, Vec<usize>) = match &tables {
                None => (vec![], (0..j).collect(), (0..j).collect()),
                Some(t) => {
                    let s = &t.sets[j];
                    // Z on the flip set recovers the orbital occupation from qubit j;
                    // combined with the parity set it leaves the symmetric difference.
                    let mut rho: Vec<usize> = s
                        .parity
                        .iter()
                        .copied()
                        .filter(|k| !s.flip.contains(k))
                        .chain(s.flip.iter().copied().filter(|k| !s.parity.contains(k)))
                        .collect();
                    rho.sort_unstable();
                    (s.update.clone(), s.parity.clone(), rho)
                }
            };
            let build = |centre: PauliAxis, zs: &[usize]| {
                let mut entries: Vec<(usize, PauliAxis)> =
                    update.iter().map(|&k| (k, PauliAxis::X)).collect();
                entries.extend(zs.iter().map(|&k| (k, PauliAxis::Z)));
                entries.push((j, centre));
                PauliString::from_sparse(n, &entries).expect("indices below n")
            };
            let real = build(PauliAxis::X, &parity);
            let imag = build(PauliAxis::Y, &rho);
            create.push([
                PauliTerm::new(half, real.clone()),
                PauliTerm::new(-half_i, imag.clone()),
            ]);
            annihilate.push([PauliTerm::new(half, real), PauliTerm::new(half_i, imag)]);
        }
        LadderImages {
            n,
            create,
            annihilate,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn image(&self, mode: usize, dagger: bool) -> &[PauliTerm; 2] {
        if dagger {
            &self.create[mode]
        } else {
            &self.annihilate[mode]
        }
    }

    /// Expands a product of ladder operators into `2^k` raw Pauli products,
    /// before any merging.
    pub fn expand(&self, term: &FermionTerm) -> Vec<PauliTerm> {
        let mut acc = vec![PauliTerm::new(term.coefficient, PauliString::identity(self.n))];
        for f in &term.factors {
            let img = self.image(f.mode, f.dagger);
            let mut next = Vec::with_capacity(acc.len() * 2);
            for a in &acc {
                for b in img {
                    let (phase, s) = a.string.multiply_unchecked(&b.string);
                    next.push(PauliTerm::new(
                        a.coefficient * b.coefficient * phase.to_complex(),
                        s,
                    ));
                }
            }
            acc = next;
        }
        acc
    }
}

const MAP_CHUNK: usize = 4096;

/// Qubit image of `op` under `scheme`, merged and simplified with [`DROP_TOLERANCE`].
pub fn map_operator(op: &FermionOperator, scheme: MappingScheme) -> Result<QubitOperator> {
    let n = op.n_modes();
    if let Some(f) = op
        .terms()
        .iter()
        .flat_map(|t| t.factors.iter())
        .find(|f| f.mode >= n)
    {
        return Err(Error::Dimension(format!("mode {} outside {n} modes", f.mode)));
    }
    let images = LadderImages::new(scheme, n);
    // Fixed-size chunks merged in order keep the floating-point sums independent of the thread count.
    let partials: Vec<QubitOperator> = op
        .terms()
        .par_chunks(MAP_CHUNK)
        .map(|chunk| {
            let mut part = QubitOperator::new(n);
            for t in chunk {
                for p in images.expand(t) {
                    part.add_term(p.coefficient, p.string)
                        .expect("images share the register size");
                }
            }
            part
        })
        .collect();
    let mut out = QubitOperator::new(n);
    for p in partials {
        out.merge(p);
    }
    Ok(out.simplify(DROP_TOLERANCE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::LadderOp;

    fn reference_bk8() -> Vec<Vec<u8>> {
        vec![
            vec![1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 0, 0],
            vec![1, 1, 1, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 0],
            vec![1, 1, 1, 1, 1, 1, 1, 1],
        ]
    }

    #[test]
    fn bk_matrix_small_sizes() {
        assert_eq!(bk_matrix(8).to_rows(), reference_bk8());
        assert_eq!(bk_matrix(1).to_rows(), vec![vec![1]]);
        assert_eq!(bk_matrix(2).to_rows(), vec![vec![1, 0], vec![1, 1]]);
        let m6 = bk_matrix(6).to_rows();
        for (i, row) in m6.iter().enumerate() {
            assert_eq!(row[..], reference_bk8()[i][..6]);
        }
    }

    #[test]
    fn index_set_examples() {
        let s0 = bk_index_sets(0, 8).unwrap();
        assert_eq!(s0.update, vec![1, 3, 7]);
        assert!(s0.parity.is_empty() && s0.flip.is_empty());
        assert_eq!(bk_index_sets(3, 8).unwrap().flip, vec![1, 2]);
        assert_eq!(bk_index_sets(2, 8).unwrap().parity, vec![1]);
        assert!(bk_index_sets(8, 8).is_err());
    }

    #[test]
    fn gf2_inverse_round_trip() {
        let m = bk_matrix(13);
        let inv = m.inverse().unwrap();
        for j in 0..13 {
            let mut e = vec![false; 13];
            e[j] = true;
            assert_eq!(inv.apply(&m.apply(&e)), e);
        }
    }

    #[test]
    fn occupation_examples() {
        let mut occ = vec![false; 8];
        occ[0] = true;
        let q = occupation_to_qubits(&occ, MappingScheme::BravyiKitaev, 8).unwrap();
        let as_u8: Vec<u8> = q.iter().map(|&b| b as u8).collect();
        assert_eq!(as_u8, vec![1, 1, 0, 1, 0, 0, 0, 1]);
        let zeros = vec![false; 8];
        for s in MappingScheme::ALL {
            assert_eq!(occupation_to_qubits(&zeros, s, 8).unwrap(), zeros);
        }
        let ones = vec![true; 8];
        let q = occupation_to_qubits(&ones, MappingScheme::BravyiKitaev, 8).unwrap();
        let as_u8: Vec<u8> = q.iter().map(|&b| b as u8).collect();
        assert_eq!(as_u8, vec![1, 0, 1, 0, 1, 0, 1, 0]);
        assert!(occupation_to_qubits(&ones, MappingScheme::JordanWigner, 7).is_err());
    }

    #[test]
    fn jw_creation_images() {
        let mut op = FermionOperator::new(1);
        op.add(Complex64::new(1.0, 0.0), &[LadderOp::create(0)]).unwrap();
        let q = map_operator(&op, MappingScheme::JordanWigner).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.coefficient(&PauliString::from_axes(&[PauliAxis::X])), Complex64::new(0.5, 0.0));
        assert_eq!(q.coefficient(&PauliString::from_axes(&[PauliAxis::Y])), Complex64::new(0.0, -0.5));

        let mut op = FermionOperator::new(3);
        op.add(Complex64::new(1.0, 0.0), &[LadderOp::create(2)]).unwrap();
        let q = map_operator(&op, MappingScheme::JordanWigner).unwrap();
        use PauliAxis::*;
        assert_eq!(q.coefficient(&PauliString::from_axes(&[Z, Z, X])), Complex64::new(0.5, 0.0));
        assert_eq!(q.coefficient(&PauliString::from_axes(&[Z, Z, Y])), Complex64::new(0.0, -0.5));
    }

    #[test]
    fn number_operator_raw_expansion() {
        let images = LadderImages::new(MappingScheme::JordanWigner, 1);
        let term = FermionTerm {
            coefficient: Complex64::new(1.0, 0.0),
            factors: [LadderOp::create(0), LadderOp::annihilate(0)].into_iter().collect(),
        };
        let raw = images.expand(&term);
        assert_eq!(raw.len(), 4);
        let op = QubitOperator::from_terms(1, raw).unwrap().simplify(DROP_TOLERANCE);
        assert_eq!(op.len(), 1);
        assert!((op.constant() - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        let z = op.coefficient(&PauliString::from_axes(&[PauliAxis::Z]));
        assert!((z - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unknown_scheme_name() {
        assert!("parity".parse::<MappingScheme>().is_err());
        assert_eq!("BK".parse::<MappingScheme>().unwrap(), MappingScheme::BravyiKitaev);
    }
}
