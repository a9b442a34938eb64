//! Molecular integrals, the second-quantized Hamiltonian built from them, and
//! the occupation-number matrix of fermionic operators.
//!
//! Spin-orbital `2p` is the alpha spin of spatial orbital `p` and `2p + 1` its
//! beta spin. Bit `j` of an occupation-basis index is the occupation of mode `j`.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// Tolerance used when validating integral permutational symmetry.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Largest register for which [`fock_matrix`] will build a matrix.
pub const FOCK_QUBIT_LIMIT: usize = 16;

/// One- and two-electron integrals over spatial orbitals, in Hartree.
///
/// Two-electron integrals use chemists' notation `(pq|rs)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSet {
    pub n_spatial: usize,
    pub n_electrons: usize,
    pub ms2: i64,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
    /// Nuclear repulsion plus any frozen-core contribution.
    pub core_energy: f64,
    /// Set when an FCIDUMP had no `0 0 0 0` row and the core energy defaulted to zero.
    pub core_energy_missing: bool,
}

impl IntegralSet {
    pub fn zeros(n_spatial: usize, n_electrons: usize) -> Self {
        IntegralSet {
            n_spatial,
            n_electrons,
            ms2: 0,
            one_body: vec![0.0; n_spatial.pow(2)],
            two_body: vec![0.0; n_spatial.pow(4)],
            core_energy: 0.0,
            core_energy_missing: false,
        }
    }

    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_spatial
    }

    fn idx2(&self, p: usize, q: usize) -> usize {
        p * self.n_spatial + q
    }

    fn idx4(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        let n = self.n_spatial;
        ((p * n + q) * n + r) * n + s
    }

    pub fn one_body(&self, p: usize, q: usize) -> f64 {
        self.one_body[self.idx2(p, q)]
    }

    pub fn two_body(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.two_body[self.idx4(p, q, r, s)]
    }

    /// Sets `h_pq` and `h_qp`.
    pub fn set_one_body(&mut self, p: usize, q: usize, v: f64) {
        let (a, b) = (self.idx2(p, q), self.idx2(q, p));
        self.one_body[a] = v;
        self.one_body[b] = v;
    }

    /// Sets `(pq|rs)` and its seven permutational images.
    pub fn set_two_body(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        for (a, b, c, d) in [
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ] {
            let i = self.idx4(a, b, c, d);
            self.two_body[i] = v;
        }
    }

    /// Largest deviation from the one-body and eight-fold two-body symmetries.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.n_spatial;
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((self.one_body(p, q) - self.one_body(q, p)).abs());
                for r in 0..n {
                    for s in 0..n {
                        let v = self.two_body(p, q, r, s);
                        for w in [
                            self.two_body(q, p, r, s),
                            self.two_body(p, q, s, r),
                            self.two_body(r, s, p, q),
                        ] {
                            worst = worst.max((v - w).abs());
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.symmetry_defect();
        if d > SYMMETRY_TOLERANCE {
            return Err(Error::Argument(format!(
                "integrals violate permutational symmetry by {d:e}"
            )));
        }
        Ok(())
    }
}

/// Pairs `(i, j)` with `i >= j`, the unique index pairs of a symmetric matrix.
fn unique_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).collect()
}

/// Unique two-body index quadruples `(ij|kl)` with `i>=j`, `k>=l`, `ij >= kl`.
fn unique_quads(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let pairs = unique_pairs(n);
    let mut out = Vec::with_capacity(pairs.len() * (pairs.len() + 1) / 2);
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[..=a] {
            out.push((i, j, k, l));
        }
    }
    out
}

#[derive(Debug, Default)]
struct FcidumpHeader {
    norb: Option<usize>,
    nelec: Option<usize>,
    ms2: Option<i64>,
}

fn parse_header_value<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad value '{v}' for {key}")))
}

/// Reads an FCIDUMP stream.
///
/// The `&FCI ... &END` namelist header is optional; without it the orbital
/// count is inferred from the largest index. Lines starting with `#` or `!`
/// are comments. Rows of the form `e i 0 0 0` (orbital energies) are ignored.
pub fn parse_fcidump<R: BufRead>(reader: R) -> Result<IntegralSet> {
    let mut header: Option<FcidumpHeader> = None;
    let mut in_header = false;
    let mut header_line = 0;
    let mut rows: Vec<(usize, f64, [usize; 4])> = Vec::new();

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('!') {
            continue;
        }
        if in_header || (header.is_none() && rows.is_empty() && t.to_ascii_uppercase().starts_with("&FCI")) {
            if !in_header {
                in_header = true;
                header_line = lineno;
                header = Some(FcidumpHeader::default());
            }
            let h = header.as_mut().expect("header started");
            let upper = t.to_ascii_uppercase();
            let mut body = upper.as_str();
            if let Some(rest) = body.strip_prefix("&FCI") {
                body = rest;
            }
            let mut done = false;
            if let Some(pos) = body.find("&END").or_else(|| body.find('/')) {
                body = &body[..pos];
                done = true;
            }
            for tok in body.split(',') {
                let tok = tok.trim();
                if let Some((k, v)) = tok.split_once('=') {
                    match k.trim() {
                        "NORB" => h.norb = Some(parse_header_value("NORB", v, lineno)?),
                        "NELEC" => h.nelec = Some(parse_header_value("NELEC", v, lineno)?),
                        "MS2" => h.ms2 = Some(parse_header_value("MS2", v, lineno)?),
                        _ => {}
                    }
                }
            }
            if done {
                in_header = false;
            }
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::parse(
                lineno,
                format!("expected 'value i j k l', found {} fields", fields.len()),
            ));
        }
        let value: f64 = fields[0]
            .replace(['D', 'd'], "e")
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad integral value '{}'", fields[0])))?;
        let mut idx = [0usize; 4];
        for (slot, f) in idx.iter_mut().zip(&fields[1..]) {
            *slot = f
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad orbital index '{f}'")))?;
        }
        rows.push((lineno, value, idx));
    }
    if in_header {
        return Err(Error::parse(header_line, "header is missing its &END terminator"));
    }

    let max_index = rows.iter().flat_map(|(_, _, ix)| ix.iter().copied()).max().unwrap_or(0);
    let (n, nelec, ms2) = match header {
        Some(h) => {
            let n = h
                .norb
                .ok_or_else(|| Error::parse(header_line, "header lacks NORB"))?;
            (n, h.nelec.unwrap_or(0), h.ms2.unwrap_or(0))
        }
        None => (max_index, 0, 0),
    };

    let mut ints = IntegralSet::zeros(n, nelec);
    ints.ms2 = ms2;
    let mut saw_core = false;
    for (lineno, v, [i, j, k, l]) in rows {
        if [i, j, k, l].iter().any(|&x| x > n) {
            return Err(Error::parse(
                lineno,
                format!("orbital index exceeds NORB={n}"),
            ));
        }
        match (i, j, k, l) {
            (0, 0, 0, 0) => {
                ints.core_energy = v;
                saw_core = true;
            }
            (i, j, 0, 0) if i > 0 && j > 0 => ints.set_one_body(i - 1, j - 1, v),
            (_, 0, 0, 0) => {}
            (i, j, k, l) if i > 0 && j > 0 && k > 0 && l > 0 => {
                ints.set_two_body(i - 1, j - 1, k - 1, l - 1, v)
            }
            _ => {
                return Err(Error::parse(
                    lineno,
                    format!("unsupported index pattern {i} {j} {k} {l}"),
                ))
            }
        }
    }
    ints.core_energy_missing = !saw_core;
    if !saw_core {
        log::warn!("FCIDUMP has no core-energy row; using 0");
    }
    Ok(ints)
}

pub fn parse_fcidump_str(text: &str) -> Result<IntegralSet> {
    parse_fcidump(text.as_bytes())
}

/// Writes the symmetry-unique non-zero integrals in FCIDUMP form.
pub fn write_fcidump<W: Write>(ints: &IntegralSet, mut w: W) -> Result<()> {
    writeln!(
        w,
        " &FCI NORB={},NELEC={},MS2={},",
        ints.n_spatial, ints.n_electrons, ints.ms2
    )?;
    writeln!(w, " &END")?;
    for (i, j, k, l) in unique_quads(ints.n_spatial) {
        let v = ints.two_body(i, j, k, l);
        if v != 0.0 {
            writeln!(w, "{:e} {} {} {} {}", v, i + 1, j + 1, k + 1, l + 1)?;
        }
    }
    for (i, j) in unique_pairs(ints.n_spatial) {
        let v = ints.one_body(i, j);
        if v != 0.0 {
            writeln!(w, "{:e} {} {} 0 0", v, i + 1, j + 1)?;
        }
    }
    writeln!(w, "{:e} 0 0 0 0", ints.core_energy)?;
    Ok(())
}

/// Reads a `# fci_energy: <value>` comment, the reference energy recorded in fixture files.
pub fn reference_energy(text: &str) -> Option<f64> {
    text.lines().find_map(|l| {
        l.trim()
            .strip_prefix('#')?
            .trim()
            .strip_prefix("fci_energy:")?
            .trim()
            .parse()
            .ok()
    })
}

/// Random integrals with the full permutational symmetry, for scaling studies.
///
/// A fraction `density` of the symmetry-unique one- and two-body elements is
/// drawn uniformly from `[-1, 1]`; the rest are zero. Deterministic in `seed`.
pub fn synthetic_integrals(n_spatial: usize, seed: u64, density: f64) -> Result<IntegralSet> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Argument(format!(
            "density must lie in (0, 1], got {density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ints = IntegralSet::zeros(n_spatial, n_spatial);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let v: f64 = rng.random_range(-1.0..=1.0);
        if v != 0.0 {
            return v;
        }
    };

    let mut pairs = unique_pairs(n_spatial);
    let keep = (density * pairs.len() as f64).ceil() as usize;
    pairs.shuffle(&mut rng);
    pairs.truncate(keep);
    pairs.sort_unstable();
    for (p, q) in pairs {
        let v = draw(&mut rng);
        ints.set_one_body(p, q, v);
    }

    let mut quads = unique_quads(n_spatial);
    let keep = (density * quads.len() as f64).ceil() as usize;
    quads.shuffle(&mut rng);
    quads.truncate(keep);
    quads.sort_unstable();
    for (p, q, r, s) in quads {
        let v = draw(&mut rng);
        ints.set_two_body(p, q, r, s, v);
    }
    Ok(ints)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LadderOp {
    pub mode: usize,
    /// `true` for a creation operator.
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        LadderOp { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        LadderOp { mode, dagger: false }
    }
}

pub type Factors = SmallVec<[LadderOp; 4]>;

/// `coefficient · f_1 f_2 ... f_k`, factors written left to right. An empty
/// product is a scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm {
    pub coefficient: Complex64,
    pub factors: Factors,
}

/// Sum of products of creation and annihilation operators on `n_modes` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionOperator {
    n_modes: usize,
    terms: Vec<FermionTerm>,
}

impl FermionOperator {
    pub fn new(n_modes: usize) -> Self {
        FermionOperator {
            n_modes,
            terms: Vec::new(),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn terms(&self) -> &[FermionTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, coefficient: Complex64, factors: &[LadderOp]) -> Result<()> {
        if let Some(f) = factors.iter().find(|f| f.mode >= self.n_modes) {
            return Err(Error::Dimension(format!(
                "mode {} outside a {}-mode operator",
                f.mode, self.n_modes
            )));
        }
        self.terms.push(FermionTerm {
            coefficient,
            factors: factors.iter().copied().collect(),
        });
        Ok(())
    }

    /// Formal adjoint: factor order reversed, daggers flipped, coefficients conjugated.
    pub fn adjoint(&self) -> FermionOperator {
        FermionOperator {
            n_modes: self.n_modes,
            terms: self
                .terms
                .iter()
                .map(|t| FermionTerm {
                    coefficient: t.coefficient.conj(),
                    factors: t
                        .factors
                        .iter()
                        .rev()
                        .map(|f| LadderOp {
                            mode: f.mode,
                            dagger: !f.dagger,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Spin-orbital index of spatial orbital `p` with spin `sigma` (0 = alpha, 1 = beta).
pub fn spin_orbital(p: usize, sigma: usize) -> usize {
    2 * p + sigma
}

/// Electronic Hamiltonian over `2 · n_spatial` spin-orbitals, without the core energy:
///
/// `Σ h_pq a†_pσ a_qσ + ½ Σ (pq|rs) a†_pσ a†_rτ a_sτ a_qσ`.
pub fn build_hamiltonian(ints: &IntegralSet) -> FermionOperator {
    let n = ints.n_spatial;
    let mut op = FermionOperator::new(2 * n);
    for p in 0..n {
        for q in 0..n {
            let h = ints.one_body(p, q);
            if h == 0.0 {
                continue;
            }
            for sigma in 0..2 {
                op.terms.push(FermionTerm {
                    coefficient: Complex64::new(h, 0.0),
                    factors: [
                        LadderOp::create(spin_orbital(p, sigma)),
                        LadderOp::annihilate(spin_orbital(q, sigma)),
                    ]
                    .into_iter()
                    .collect(),
                });
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let v = ints.two_body(p, q, r, s);
                    if v == 0.0 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (ps, qs) = (spin_orbital(p, sigma), spin_orbital(q, sigma));
                            let (rt, st) = (spin_orbital(r, tau), spin_orbital(s, tau));
                            if ps == rt || qs == st {
                                continue;
                            }
                            op.terms.push(FermionTerm {
                                coefficient: Complex64::new(0.5 * v, 0.0),
                                factors: [
                                    LadderOp::create(ps),
                                    LadderOp::create(rt),
                                    LadderOp::annihilate(st),
                                    LadderOp::annihilate(qs),
                                ]
                                .into_iter()
                                .collect(),
                            });
                        }
                    }
                }
            }
        }
    }
    op
}

/// Applies a product of ladder operators (rightmost first) to occupation state `b`.
fn apply_factors(factors: &[LadderOp], mut b: u64) -> Option<(f64, u64)> {
    let mut sign = 1.0;
    for f in factors.iter().rev() {
        let bit = 1u64 << f.mode;
        let occupied = b & bit != 0;
        if occupied == f.dagger {
            return None;
        }
        if (b & (bit - 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        b ^= bit;
    }
    Some((sign, b))
}

/// Matrix of `op` in the occupation-number basis of `n_modes` modes.
pub fn fock_matrix(op: &FermionOperator, n_modes: usize) -> Result<SparseMatrix> {
    if n_modes > FOCK_QUBIT_LIMIT {
        return Err(Error::Resource {
            what: "Fock-space matrix",
            requested: n_modes,
            limit: FOCK_QUBIT_LIMIT,
        });
    }
    if let Some(f) = op
        .terms
        .iter()
        .flat_map(|t| t.factors.iter())
        .find(|f| f.mode >= n_modes)
    {
        return Err(Error::Dimension(format!(
            "mode {} outside a {n_modes}-mode register",
            f.mode
        )));
    }
    let dim = 1usize << n_modes;
    let columns: Vec<Vec<(usize, Complex64)>> = (0..dim)
        .into_par_iter()
        .map(|b| {
            let mut col: Vec<(usize, Complex64)> = op
                .terms
                .iter()
                .filter_map(|t| {
                    apply_factors(&t.factors, b as u64)
                        .map(|(s, out)| (out as usize, t.coefficient * s))
                })
                .collect();
            col.sort_by_key(|&(r, _)| r);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(col.len());
            for (r, v) in col {
                match merged.last_mut() {
                    Some((lr, lv)) if *lr == r => *lv += v,
                    _ => merged.push((r, v)),
                }
            }
            merged
        })
        .collect();
    let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col {
            rows[r].push((c, v));
        }
    }
    Ok(SparseMatrix::from_rows(dim, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    const H2: &str = include_str!("../fixtures/h2_sto3g.fcidump");

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn header_fields() {
        let ints = parse_fcidump_str("&FCI NORB=2,NELEC=2,MS2=0\n&END\n").unwrap();
        assert_eq!(ints.n_spatial, 2);
        assert_eq!(ints.n_electrons, 2);
        assert!(ints.core_energy_missing);
    }

    #[test]
    fn scalar_row_is_core_energy() {
        let ints = parse_fcidump_str("&FCI NORB=1,NELEC=2,MS2=0\n&END\n0.7137 0 0 0 0\n").unwrap();
        assert_eq!(ints.core_energy, 0.7137);
        assert!(!ints.core_energy_missing);
    }

    #[test]
    fn minimal_headerless_file() {
        let ints = parse_fcidump_str("1.0 1 1 0 0\n").unwrap();
        assert_eq!(ints.n_spatial, 1);
        assert_eq!(ints.one_body(0, 0), 1.0);
        assert_eq!(ints.two_body(0, 0, 0, 0), 0.0);
        assert!(ints.core_energy_missing);
    }

    #[test]
    fn malformed_input_reports_line() {
        let err = parse_fcidump_str("# c\n&FCI NORB=x,NELEC=2\n&END\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_fcidump_str("&FCI NELEC=2\n&END\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_fcidump_str("&FCI NORB=1,NELEC=2\n&END\n1.0 2 1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_fcidump_str("&FCI NORB=1,\n1.0 1 1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
    }

    #[test]
    fn fixture_parses_with_symmetry() {
        let ints = parse_fcidump_str(H2).unwrap();
        assert_eq!(ints.n_spatial, 2);
        assert_eq!(ints.n_electrons, 2);
        assert!(ints.symmetry_defect() < SYMMETRY_TOLERANCE);
        assert!((ints.two_body(1, 0, 1, 0) - ints.two_body(0, 1, 0, 1)).abs() < 1e-15);
        assert!((reference_energy(H2).unwrap() + 1.137270174661).abs() < 1e-12);
    }

    #[test]
    fn fcidump_round_trip() {
        let ints = synthetic_integrals(3, 7, 0.6).unwrap();
        let mut buf = Vec::new();
        write_fcidump(&ints, &mut buf).unwrap();
        let back = parse_fcidump(buf.as_slice()).unwrap();
        assert_eq!(back.n_spatial, 3);
        for p in 0..3 {
            for q in 0..3 {
                assert!((back.one_body(p, q) - ints.one_body(p, q)).abs() < 1e-12);
                for r in 0..3 {
                    for s in 0..3 {
                        assert!((back.two_body(p, q, r, s) - ints.two_body(p, q, r, s)).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn synthetic_is_deterministic_and_dense_at_full_density() {
        let a = synthetic_integrals(2, 42, 1.0).unwrap();
        let b = synthetic_integrals(2, 42, 1.0).unwrap();
        assert_eq!(a, b);
        for (p, q) in unique_pairs(2) {
            assert_ne!(a.one_body(p, q), 0.0);
        }
        for (p, q, r, s) in unique_quads(2) {
            assert_ne!(a.two_body(p, q, r, s), 0.0);
        }
        assert_eq!(unique_pairs(2).len(), 3);
        assert_eq!(unique_quads(2).len(), 6);
        assert!(synthetic_integrals(2, 1, 0.0).is_err());
        assert!(synthetic_integrals(2, 1, 1.5).is_err());
    }

    #[test]
    fn single_orbital_hamiltonian() {
        let mut ints = IntegralSet::zeros(1, 1);
        ints.set_one_body(0, 0, -0.5);
        let h = build_hamiltonian(&ints);
        assert_eq!(h.n_modes(), 2);
        assert_eq!(h.len(), 2);
        assert_eq!(h.terms()[0].factors.as_slice(), &[LadderOp::create(0), LadderOp::annihilate(0)]);
        assert_eq!(h.terms()[1].factors.as_slice(), &[LadderOp::create(1), LadderOp::annihilate(1)]);
        assert!(h.terms().iter().all(|t| t.coefficient == c(-0.5)));
    }

    #[test]
    fn creation_on_one_mode() {
        let mut op = FermionOperator::new(1);
        op.add(c(1.0), &[LadderOp::create(0)]).unwrap();
        let m = fock_matrix(&op, 1).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), c(1.0));
    }

    #[test]
    fn number_operator_diagonal() {
        let mut op = FermionOperator::new(2);
        op.add(c(1.0), &[LadderOp::create(0), LadderOp::annihilate(0)]).unwrap();
        let m = fock_matrix(&op, 2).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| m.get(i, i).re).collect();
        assert_eq!(diag, vec![0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn fock_limit_is_resource_error() {
        let op = FermionOperator::new(20);
        assert!(matches!(fock_matrix(&op, 20), Err(Error::Resource { .. })));
    }

    #[test]
    fn out_of_range_mode_rejected() {
        let mut op = FermionOperator::new(2);
        assert!(op.add(c(1.0), &[LadderOp::create(2)]).is_err());
    }
}
