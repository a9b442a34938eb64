//! Pauli strings and weighted sums of them.
//!
//! A [`PauliString`] is stored as a pair of bit masks (`x`, `z`) with one bit
//! per qubit: `I = (0,0)`, `X = (1,0)`, `Y = (1,1)`, `Z = (0,1)`. Ordering and
//! the textual form use the base-4 digit assignment `I=0, X=1, Y=2, Z=3`, read
//! from qubit 0 upwards.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};

use num_complex::Complex64;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Coefficients at or below this magnitude are treated as zero.
pub const DROP_TOLERANCE: f64 = 1e-12;

type Words = SmallVec<[u64; 2]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum PauliAxis {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 4] = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn digit(self) -> u8 {
        self as u8
    }

    pub fn from_digit(d: u8) -> Option<Self> {
        PauliAxis::ALL.get(d as usize).copied()
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliAxis::I,
            (true, false) => PauliAxis::X,
            (true, true) => PauliAxis::Y,
            (false, true) => PauliAxis::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            PauliAxis::I => (false, false),
            PauliAxis::X => (true, false),
            PauliAxis::Y => (true, true),
            PauliAxis::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }
}

/// A power of `i`: `i^k` for `k` in `0..4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuarterPhase(u8);

impl QuarterPhase {
    pub const ONE: QuarterPhase = QuarterPhase(0);
    pub const I: QuarterPhase = QuarterPhase(1);
    pub const MINUS_ONE: QuarterPhase = QuarterPhase(2);
    pub const MINUS_I: QuarterPhase = QuarterPhase(3);

    pub fn from_exponent(k: i64) -> Self {
        QuarterPhase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for QuarterPhase {
    type Output = QuarterPhase;
    fn mul(self, rhs: Self) -> Self {
        QuarterPhase((self.0 + rhs.0) % 4)
    }
}

/// Tensor product of single-qubit Pauli operators on a fixed register.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Words,
    z: Words,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = word_count(n);
        PauliString {
            n,
            x: SmallVec::from_elem(0, w),
            z: SmallVec::from_elem(0, w),
        }
    }

    pub fn from_axes(axes: &[PauliAxis]) -> Self {
        let mut s = PauliString::identity(axes.len());
        for (q, &a) in axes.iter().enumerate() {
            s.put(q, a);
        }
        s
    }

    /// Builds a string from `(qubit, axis)` pairs; unlisted qubits are identity.
    pub fn from_sparse(n: usize, entries: &[(usize, PauliAxis)]) -> Result<Self> {
        let mut s = PauliString::identity(n);
        for &(q, a) in entries {
            if q >= n {
                return Err(Error::Dimension(format!(
                    "qubit {q} out of range for a {n}-qubit register"
                )));
            }
            s.put(q, a);
        }
        Ok(s)
    }

    /// Same as [`from_sparse`](Self::from_sparse) but with every listed qubit set to one axis.
    pub fn uniform(n: usize, qubits: impl IntoIterator<Item = usize>, axis: PauliAxis) -> Self {
        let mut s = PauliString::identity(n);
        for q in qubits {
            assert!(q < n, "qubit {q} out of range for a {n}-qubit register");
            s.put(q, axis);
        }
        s
    }

    fn put(&mut self, q: usize, a: PauliAxis) {
        let (xb, zb) = a.bits();
        let (w, b) = (q / 64, q % 64);
        let m = 1u64 << b;
        if xb {
            self.x[w] |= m;
        } else {
            self.x[w] &= !m;
        }
        if zb {
            self.z[w] |= m;
        } else {
            self.z[w] &= !m;
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn axis(&self, q: usize) -> PauliAxis {
        assert!(q < self.n, "qubit {q} out of range");
        let (w, b) = (q / 64, q % 64);
        PauliAxis::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn axes(&self) -> Vec<PauliAxis> {
        (0..self.n).map(|q| self.axis(q)).collect()
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Non-identity positions in ascending qubit order.
    pub fn support(&self) -> Vec<(usize, PauliAxis)> {
        let mut out = Vec::with_capacity(self.weight());
        for (w, (&x, &z)) in self.x.iter().zip(&self.z).enumerate() {
            let mut bits = x | z;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let q = w * 64 + b;
                out.push((q, self.axis(q)));
            }
        }
        out
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    /// Number of `Y` factors.
    pub fn y_count(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(x, z)| (x & z).count_ones()).sum()
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "Pauli strings of length {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Per-word counts of positions where `self * other` picks up `+i` and `-i`.
    fn phase_counts(&self, other: &PauliString) -> (u32, u32) {
        let mut plus = 0;
        let mut minus = 0;
        for w in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[w], self.z[w], other.x[w], other.z[w]);
            let (xa, ya, za) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (xb, yb, zb) = (x2 & !z2, x2 & z2, !x2 & z2);
            // XY = iZ, YZ = iX, ZX = iY and the reversed products carry -i.
            plus += ((xa & yb) | (ya & zb) | (za & xb)).count_ones();
            minus += ((ya & xb) | (za & yb) | (xa & zb)).count_ones();
        }
        (plus, minus)
    }

    /// Qubit-wise product `self · other = phase · product`.
    pub fn multiply(&self, other: &PauliString) -> Result<(QuarterPhase, PauliString)> {
        self.check_len(other)?;
        Ok(self.multiply_unchecked(other))
    }

    pub(crate) fn multiply_unchecked(&self, other: &PauliString) -> (QuarterPhase, PauliString) {
        let (plus, minus) = self.phase_counts(other);
        let phase = QuarterPhase::from_exponent(plus as i64 - minus as i64);
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        (phase, PauliString { n: self.n, x, z })
    }

    /// True iff the two strings commute, i.e. they differ non-trivially on an even number of qubits.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        let (plus, minus) = self.phase_counts(other);
        Ok((plus + minus) % 2 == 0)
    }

    /// Base-4 digit sequence from qubit 0 upwards.
    pub fn lex_key(&self) -> Vec<u8> {
        (0..self.n).map(|q| self.axis(q).digit()).collect()
    }
}

impl Ord for PauliString {
    /// Lexicographic order of [`lex_key`](PauliString::lex_key).
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.x.len().min(other.x.len());
        for w in 0..common {
            let diff = (self.x[w] ^ other.x[w]) | (self.z[w] ^ other.z[w]);
            if diff != 0 {
                let q = w * 64 + diff.trailing_zeros() as usize;
                if q < self.n.min(other.n) {
                    return self.axis(q).cmp(&other.axis(q));
                }
                break;
            }
        }
        self.n.cmp(&other.n)
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, a) in self.support() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}{}", a.symbol(), q)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.axes().into_iter().map(PauliAxis::symbol).collect();
        write!(f, "PauliString({s})")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: Complex64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coefficient: Complex64, string: PauliString) -> Self {
        PauliTerm {
            coefficient,
            string,
        }
    }

    pub fn real(coefficient: f64, string: PauliString) -> Self {
        PauliTerm::new(Complex64::new(coefficient, 0.0), string)
    }

    pub fn multiply(&self, other: &PauliTerm) -> Result<PauliTerm> {
        let (phase, string) = self.string.multiply(&other.string)?;
        Ok(PauliTerm::new(
            self.coefficient * other.coefficient * phase.to_complex(),
            string,
        ))
    }
}

/// Weighted sum of Pauli strings with merged duplicates.
///
/// The identity component lives in [`constant`](QubitOperator::constant) and
/// never appears among the stored terms.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitOperator {
    n_qubits: usize,
    constant: Complex64,
    terms: HashMap<PauliString, Complex64>,
}

impl QubitOperator {
    pub fn new(n_qubits: usize) -> Self {
        QubitOperator {
            n_qubits,
            constant: Complex64::new(0.0, 0.0),
            terms: HashMap::new(),
        }
    }

    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        let mut op = QubitOperator::new(n_qubits);
        for t in terms {
            op.add_term(t.coefficient, t.string)?;
        }
        Ok(op)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    pub fn add_constant(&mut self, c: Complex64) {
        self.constant += c;
    }

    /// Adds `coefficient · string`, merging with an existing entry for the same string.
    pub fn add_term(&mut self, coefficient: Complex64, string: PauliString) -> Result<()> {
        if string.len() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "term on {} qubits added to a {}-qubit operator",
                string.len(),
                self.n_qubits
            )));
        }
        if string.is_identity() {
            self.constant += coefficient;
        } else {
            *self.terms.entry(string).or_default() += coefficient;
        }
        Ok(())
    }

    pub(crate) fn merge(&mut self, other: QubitOperator) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        self.constant += other.constant;
        for (s, c) in other.terms {
            *self.terms.entry(s).or_default() += c;
        }
    }

    /// Number of stored non-identity terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        if s.is_identity() {
            return self.constant;
        }
        self.terms.get(s).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Non-identity terms sorted by lexicographic key.
    pub fn terms_sorted(&self) -> Vec<PauliTerm> {
        let mut v: Vec<PauliTerm> = self
            .terms
            .iter()
            .map(|(s, &c)| PauliTerm::new(c, s.clone()))
            .collect();
        v.sort_by(|a, b| a.string.cmp(&b.string));
        v
    }

    /// Drops terms with `|c| <= tol`; the constant is zeroed under the same rule.
    pub fn simplify(&self, tol: f64) -> QubitOperator {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(s, c)| (s.clone(), *c))
            .collect();
        let constant = if self.constant.norm() > tol {
            self.constant
        } else {
            Complex64::new(0.0, 0.0)
        };
        QubitOperator {
            n_qubits: self.n_qubits,
            constant,
            terms,
        }
    }

    /// Largest imaginary part among all coefficients, including the constant.
    pub fn max_imaginary(&self) -> f64 {
        self.terms
            .values()
            .chain(std::iter::once(&self.constant))
            .map(|c| c.im.abs())
            .fold(0.0, f64::max)
    }

    /// `Σ |c_j|` over non-identity terms; bounds the spectral radius of the traceless part.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Writes one `(re,im) X0 Z1 ...` line per term, constant first, then lexicographic order.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# qubits {}", self.n_qubits)?;
        if self.constant != Complex64::new(0.0, 0.0) {
            writeln!(w, "({},{})", self.constant.re, self.constant.im)?;
        }
        for t in self.terms_sorted() {
            writeln!(w, "({},{}) {}", t.coefficient.re, t.coefficient.im, t.string)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Reads the textual term format. The register size comes from a
    /// `# qubits <n>` line when present, otherwise from the largest index seen.
    pub fn read_text<R: BufRead>(r: R) -> Result<QubitOperator> {
        let mut declared: Option<usize> = None;
        let mut parsed: Vec<(Complex64, Vec<(usize, PauliAxis)>)> = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('#') {
                let mut it = rest.split_whitespace();
                if it.next() == Some("qubits") {
                    let n = it
                        .next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| Error::parse(lineno, "bad '# qubits' declaration"))?;
                    declared = Some(n);
                }
                continue;
            }
            parsed.push(parse_term_line(trimmed, lineno)?);
        }
        let needed = parsed
            .iter()
            .flat_map(|(_, f)| f.iter().map(|&(q, _)| q + 1))
            .max()
            .unwrap_or(0);
        let n = match declared {
            Some(n) if n < needed => {
                return Err(Error::Dimension(format!(
                    "term touches qubit {} but register declares {n} qubits",
                    needed - 1
                )))
            }
            Some(n) => n,
            None => needed,
        };
        let mut op = QubitOperator::new(n);
        for (c, factors) in parsed {
            op.add_term(c, PauliString::from_sparse(n, &factors)?)?;
        }
        Ok(op)
    }

    pub fn from_text(text: &str) -> Result<QubitOperator> {
        QubitOperator::read_text(text.as_bytes())
    }
}

fn parse_term_line(line: &str, lineno: usize) -> Result<(Complex64, Vec<(usize, PauliAxis)>)> {
    let rest = line
        .strip_prefix('(')
        .ok_or_else(|| Error::parse(lineno, "term must start with '(re,im)'"))?;
    let close = rest
        .find(')')
        .ok_or_else(|| Error::parse(lineno, "unterminated coefficient"))?;
    let (re, im) = rest[..close]
        .split_once(',')
        .ok_or_else(|| Error::parse(lineno, "coefficient must be '(re,im)'"))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| Error::parse(lineno, format!("bad real part '{re}'")))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| Error::parse(lineno, format!("bad imaginary part '{im}'")))?;
    let mut factors = Vec::new();
    for tok in rest[close + 1..].split_whitespace() {
        let mut chars = tok.chars();
        let axis = chars
            .next()
            .and_then(PauliAxis::from_symbol)
            .ok_or_else(|| Error::parse(lineno, format!("bad Pauli factor '{tok}'")))?;
        let q: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad qubit index in '{tok}'")))?;
        if factors.iter().any(|&(p, _)| p == q) {
            return Err(Error::parse(lineno, format!("qubit {q} repeated")));
        }
        factors.push((q, axis));
    }
    Ok((Complex64::new(re, im), factors))
}
