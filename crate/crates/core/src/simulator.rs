//! State-vector numerics: Pauli-sum matrices, ground states, Trotterized
//! evolution and Trotter-error estimates. Qubit 0 is the least significant
//! bit of a basis index.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::mapping::MappingScheme;
use crate::pauli::{PauliString, QuarterPhase, QubitOperator};
use crate::sparse::SparseMatrix;
use crate::trotter::{OrderingStrategy, TrotterPlan};

/// Default register limit for sparse operator matrices.
pub const MATRIX_QUBIT_LIMIT: usize = 16;
/// Register limit for dense circuit unitaries.
pub const UNITARY_QUBIT_LIMIT: usize = 10;
pub const EIGEN_RESIDUAL_TOLERANCE: f64 = 1e-9;
/// Overlaps below this make the phase estimate unreliable.
pub const OVERLAP_WARNING: f64 = 0.5;

const DENSE_EIGEN_LIMIT: usize = 256;
const KRYLOV_DIM: usize = 80;
const MAX_RESTARTS: usize = 200;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const IMAG: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << n_qubits];
        amplitudes[index] = ONE;
        StateVector {
            n_qubits,
            amplitudes,
        }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if !amplitudes.len().is_power_of_two() {
            return Err(Error::Dimension(format!(
                "{} amplitudes is not a power of two",
                amplitudes.len()
            )));
        }
        Ok(StateVector {
            n_qubits: amplitudes.len().trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        dot(&self.amplitudes, &other.amplitudes)
    }

    /// Applies `exp(-i(θ/2)P)` through `cos(θ/2)ψ - i sin(θ/2)Pψ`.
    pub fn rotate(&mut self, p: &PauliString, theta: f64) {
        let (x, z, yphase) = masks(p);
        let (s, c) = (theta / 2.0).sin_cos();
        let phase = |k: usize| -> Complex64 {
            if (k as u64 & z).count_ones() % 2 == 0 {
                yphase
            } else {
                -yphase
            }
        };
        let amp = &mut self.amplitudes;
        if x == 0 {
            for (k, a) in amp.iter_mut().enumerate() {
                *a *= Complex64::new(c, 0.0) - IMAG * s * phase(k);
            }
            return;
        }
        let low = 1u64 << x.trailing_zeros();
        let x = x as usize;
        for k in 0..amp.len() {
            if k as u64 & low != 0 {
                continue;
            }
            let j = k ^ x;
            let (a, b) = (amp[k], amp[j]);
            amp[k] = a * c - IMAG * s * phase(j) * b;
            amp[j] = b * c - IMAG * s * phase(k) * a;
        }
    }

    /// `P|ψ⟩`.
    pub fn apply_pauli(&self, p: &PauliString) -> StateVector {
        let (x, z, yphase) = masks(p);
        let mut out = vec![ZERO; self.amplitudes.len()];
        for (k, a) in self.amplitudes.iter().enumerate() {
            let ph = if (k as u64 & z).count_ones() % 2 == 0 {
                yphase
            } else {
                -yphase
            };
            out[k ^ x as usize] = ph * a;
        }
        StateVector {
            n_qubits: self.n_qubits,
            amplitudes: out,
        }
    }

    pub fn apply_gate(&mut self, g: &Gate) {
        let amp = &mut self.amplitudes;
        match *g {
            Gate::Cnot { control, target } => {
                let (cm, tm) = (1usize << control, 1usize << target);
                for k in 0..amp.len() {
                    if k & cm != 0 && k & tm == 0 {
                        amp.swap(k, k | tm);
                    }
                }
            }
            Gate::Cz(a, b) => {
                let m = (1usize << a) | (1usize << b);
                for (k, v) in amp.iter_mut().enumerate() {
                    if k & m == m {
                        *v = -*v;
                    }
                }
            }
            Gate::H(q) | Gate::YBasis(q) | Gate::YBasisDag(q) | Gate::X(q) | Gate::Rz { qubit: q, .. } => {
                let m = single_qubit_matrix(g);
                let bit = 1usize << q;
                for k in 0..amp.len() {
                    if k & bit == 0 {
                        let (a0, a1) = (amp[k], amp[k | bit]);
                        amp[k] = m[0][0] * a0 + m[0][1] * a1;
                        amp[k | bit] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
        }
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.width() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "{}-qubit circuit on a {}-qubit state",
                c.width(),
                self.n_qubits
            )));
        }
        for g in &c.gates {
            self.apply_gate(g);
        }
        Ok(())
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `(x mask, z mask, i^{#Y})` for a register of at most 64 qubits.
fn masks(p: &PauliString) -> (u64, u64, Complex64) {
    let x = p.x_words().first().copied().unwrap_or(0);
    let z = p.z_words().first().copied().unwrap_or(0);
    (x, z, QuarterPhase::from_exponent(p.y_count() as i64).to_complex())
}

fn single_qubit_matrix(g: &Gate) -> [[Complex64; 2]; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let re = |v: f64| Complex64::new(v, 0.0);
    let im = |v: f64| Complex64::new(0.0, v);
    match *g {
        Gate::H(_) => [[re(r), re(r)], [re(r), re(-r)]],
        Gate::YBasis(_) => [[re(r), im(-r)], [im(-r), re(r)]],
        Gate::YBasisDag(_) => [[re(r), im(r)], [im(r), re(r)]],
        Gate::X(_) => [[ZERO, ONE], [ONE, ZERO]],
        Gate::Rz { angle, .. } => [
            [Complex64::from_polar(1.0, -angle / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, angle / 2.0)],
        ],
        _ => unreachable!("two-qubit gate has no 2x2 matrix"),
    }
}

fn check_qubits(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Resource {
            what,
            requested: n,
            limit,
        });
    }
    Ok(())
}

/// Sparse matrix of `Σ c_j P_j` plus the identity coefficient.
pub fn operator_matrix(op: &QubitOperator) -> Result<SparseMatrix> {
    operator_matrix_limited(op, MATRIX_QUBIT_LIMIT)
}

pub fn operator_matrix_limited(op: &QubitOperator, limit: usize) -> Result<SparseMatrix> {
    let n = op.n_qubits();
    check_qubits("operator matrix", n, limit)?;
    let terms: Vec<(u64, u64, Complex64)> = op
        .terms_sorted()
        .iter()
        .map(|t| {
            let (x, z, yp) = masks(&t.string);
            (x, z, t.coefficient * yp)
        })
        .collect();
    let constant = op.constant();
    let rows: Vec<Vec<(usize, Complex64)>> = (0..1usize << n)
        .into_par_iter()
        .map(|r| {
            let mut row: Vec<(usize, Complex64)> = Vec::with_capacity(terms.len() + 1);
            row.push((r, constant));
            for &(x, z, c) in &terms {
                let col = r ^ x as usize;
                let v = if (col as u64 & z).count_ones() % 2 == 0 { c } else { -c };
                row.push((col, v));
            }
            row.sort_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
            for (c, v) in row {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged
        })
        .collect();
    Ok(SparseMatrix::from_rows(1 << n, rows))
}

fn residual(m: &SparseMatrix, energy: f64, v: &[Complex64]) -> f64 {
    let hv = m.matvec(v);
    hv.iter()
        .zip(v)
        .map(|(a, b)| (a - b * energy).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Lowest eigenpair of a Hermitian matrix, converged to a residual below
/// [`EIGEN_RESIDUAL_TOLERANCE`].
pub fn ground_state(m: &SparseMatrix) -> Result<(f64, StateVector)> {
    let defect = m.hermiticity_defect();
    if defect > 1e-10 {
        return Err(Error::Argument(format!(
            "matrix is not Hermitian (max |A - A†| = {defect:e})"
        )));
    }
    if !m.dim().is_power_of_two() {
        return Err(Error::Dimension(format!("dimension {} is not a power of two", m.dim())));
    }
    let (energy, v) = if m.dim() <= DENSE_EIGEN_LIMIT {
        dense_ground(m)
    } else {
        lanczos_ground(m)?
    };
    let r = residual(m, energy, &v);
    if r >= EIGEN_RESIDUAL_TOLERANCE {
        return Err(Error::Numeric {
            message: format!("ground-state residual {r:e} above tolerance"),
            iterations: 0,
        });
    }
    Ok((energy, StateVector::from_amplitudes(v)?))
}

fn dense_ground(m: &SparseMatrix) -> (f64, Vec<Complex64>) {
    let eig = SymmetricEigen::new(m.to_dense());
    let k = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .expect("non-empty spectrum");
    let v: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
    (eig.eigenvalues[k], v)
}

/// Restarted Lanczos with full reorthogonalization, restarting from the
/// current Ritz vector.
fn lanczos_ground(m: &SparseMatrix) -> Result<(f64, Vec<Complex64>)> {
    let dim = m.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut start: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let krylov = KRYLOV_DIM.min(dim);
    let mut last = f64::INFINITY;
    for restart in 0..MAX_RESTARTS {
        let n0 = norm(&start);
        let mut basis: Vec<Vec<Complex64>> = vec![start.iter().map(|a| a / n0).collect()];
        let mut alpha = Vec::with_capacity(krylov);
        let mut beta: Vec<f64> = Vec::with_capacity(krylov);
        for j in 0..krylov {
            let mut w = m.matvec(&basis[j]);
            alpha.push(dot(&basis[j], &w).re);
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
                }
            }
            let nb = norm(&w);
            if j + 1 == krylov || nb < 1e-13 {
                break;
            }
            beta.push(nb);
            basis.push(w.into_iter().map(|a| a / nb).collect());
        }
        let k = alpha.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (idx, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty Krylov space");
        let s: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
        let mut ritz = vec![ZERO; dim];
        for (b, &coef) in basis.iter().zip(s.iter()) {
            ritz.iter_mut().zip(b).for_each(|(r, bi)| *r += bi * coef);
        }
        let nr = norm(&ritz);
        ritz.iter_mut().for_each(|r| *r /= nr);
        let res = residual(m, theta, &ritz);
        log::debug!("lanczos restart {restart}: energy {theta:.14} residual {res:e}");
        if res < EIGEN_RESIDUAL_TOLERANCE * 0.1 || (res < EIGEN_RESIDUAL_TOLERANCE && theta == last) {
            return Ok((theta, ritz));
        }
        last = theta;
        start = ritz;
    }
    Err(Error::Numeric {
        message: "Lanczos did not reach the residual tolerance".into(),
        iterations: MAX_RESTARTS * krylov,
    })
}

/// Applies the plan's term rotations in order, `n_steps` times.
pub fn apply_trotterized(plan: &TrotterPlan, state: &StateVector) -> Result<StateVector> {
    if state.n_qubits != plan.n_qubits() {
        return Err(Error::Dimension(format!(
            "{}-qubit plan on a {}-qubit state",
            plan.n_qubits(),
            state.n_qubits
        )));
    }
    check_qubits("state vector", state.n_qubits, 30)?;
    let angles = plan.angles();
    let mut out = state.clone();
    for _ in 0..plan.n_steps {
        for (t, &theta) in plan.terms().iter().zip(&angles) {
            out.rotate(&t.string, theta);
        }
    }
    Ok(out)
}

/// Sum of `|c_j|` over the plan, an upper bound on the spectral radius of the
/// evolved (offset-free) operator.
pub fn spectral_bound(plan: &TrotterPlan) -> f64 {
    plan.terms().iter().map(|t| t.coefficient.norm()).sum()
}

/// `time` if the phase of `exp(-iEt)` cannot wrap for any eigenvalue within
/// [`spectral_bound`], otherwise a shorter time that guarantees it.
pub fn branch_safe_time(plan: &TrotterPlan, time: f64) -> f64 {
    let bound = spectral_bound(plan);
    if bound * time.abs() < std::f64::consts::PI {
        time
    } else {
        0.9 * std::f64::consts::PI / bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterErrorReport {
    pub exact_energy: f64,
    pub estimated_energy: f64,
    pub error: f64,
    pub ordering: Option<OrderingStrategy>,
    pub mapping: Option<MappingScheme>,
    pub n_steps: usize,
    /// Evolution time actually used after branch shrinking.
    pub time: f64,
    pub overlap: f64,
    pub low_overlap: bool,
}

/// Energy recovered from the phase of `⟨g|U|g⟩` for the Trotterized `U`.
/// The plan time is shortened when needed so the phase stays on one branch.
pub fn trotter_error(plan: &TrotterPlan, exact_energy: f64, ground: &StateVector) -> Result<TrotterErrorReport> {
    let time = branch_safe_time(plan, plan.time);
    if time == 0.0 {
        return Err(Error::Argument("evolution time must be non-zero".into()));
    }
    let plan = if time != plan.time {
        log::info!("evolution time shortened from {} to {time}", plan.time);
        plan.with_time(time)?
    } else {
        plan.clone()
    };
    let evolved = apply_trotterized(&plan, ground)?;
    let amp = ground.inner(&evolved);
    let estimated_energy = -amp.arg() / time + plan.scalar_offset;
    let overlap = amp.norm();
    if overlap < OVERLAP_WARNING {
        log::warn!("ground-state overlap {overlap:.3} is low; the energy estimate is unreliable");
    }
    Ok(TrotterErrorReport {
        exact_energy,
        estimated_energy,
        error: (estimated_energy - exact_energy).abs(),
        ordering: plan.ordering,
        mapping: None,
        n_steps: plan.n_steps,
        time,
        overlap,
        low_overlap: overlap < OVERLAP_WARNING,
    })
}

/// Dense unitary of a circuit, built column by column.
pub fn circuit_unitary(c: &Circuit) -> Result<DMatrix<Complex64>> {
    let w = c.width();
    check_qubits("circuit unitary", w, UNITARY_QUBIT_LIMIT)?;
    c.validate()?;
    let dim = 1usize << w;
    let mut u = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut s = StateVector::basis(w, col);
        s.apply_circuit(c)?;
        for (row, a) in s.amplitudes.iter().enumerate() {
            u[(row, col)] = *a;
        }
    }
    Ok(u)
}

/// Dense `Σ c_j P_j` for small registers.
pub fn dense_operator(op: &QubitOperator) -> Result<DMatrix<Complex64>> {
    check_qubits("dense operator", op.n_qubits(), UNITARY_QUBIT_LIMIT)?;
    Ok(operator_matrix(op)?.to_dense())
}

/// `min_φ max |A - e^{iφ}B|` estimated by aligning the phase on the largest
/// entry of `B`.
pub fn distance_up_to_phase(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    let (idx, _) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .expect("non-empty matrix");
    let phase = if b[idx].norm() == 0.0 || a[idx].norm() == 0.0 {
        ONE
    } else {
        let r = a[idx] / b[idx];
        r / r.norm()
    };
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliAxis::*;
    use crate::pauli::PauliTerm;
    use crate::trotter::build_plan;

    fn op(n: usize, terms: &[(f64, &[crate::pauli::PauliAxis])]) -> QubitOperator {
        QubitOperator::from_terms(
            n,
            terms.iter().map(|(c, a)| PauliTerm::real(*c, PauliString::from_axes(a))),
        )
        .unwrap()
    }

    #[test]
    fn z_and_x_matrices() {
        let z = operator_matrix(&op(1, &[(1.0, &[Z])])).unwrap();
        assert_eq!(z.get(0, 0), ONE);
        assert_eq!(z.get(1, 1), -ONE);
        let x = operator_matrix(&op(1, &[(0.5, &[X])])).unwrap();
        assert_eq!(x.get(0, 1), Complex64::new(0.5, 0.0));
        assert_eq!(x.get(1, 0), Complex64::new(0.5, 0.0));
        assert_eq!(x.get(0, 0), ZERO);
    }

    #[test]
    fn y_matrix_and_qubit_order() {
        let y = operator_matrix(&op(1, &[(1.0, &[Y])])).unwrap();
        assert_eq!(y.get(0, 1), -IMAG);
        assert_eq!(y.get(1, 0), IMAG);
        // Z on qubit 1 flips sign on indices 2 and 3.
        let z1 = operator_matrix(&op(2, &[(1.0, &[I, Z])])).unwrap();
        assert_eq!(z1.get(1, 1), ONE);
        assert_eq!(z1.get(2, 2), -ONE);
    }

    #[test]
    fn matrix_limit() {
        let big = QubitOperator::new(17);
        assert!(matches!(operator_matrix(&big), Err(Error::Resource { .. })));
    }

    #[test]
    fn small_ground_states() {
        let (e, v) = ground_state(&operator_matrix(&op(1, &[(1.0, &[Z])])).unwrap()).unwrap();
        assert!((e + 1.0).abs() < 1e-12);
        assert!((v.amplitudes()[1].norm() - 1.0).abs() < 1e-12);
        let (e, v) = ground_state(&operator_matrix(&op(1, &[(1.0, &[X])])).unwrap()).unwrap();
        assert!((e + 1.0).abs() < 1e-12);
        let a = v.amplitudes();
        assert!((a[0] + a[1]).norm() < 1e-12);
        assert!((a[0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = SparseMatrix::from_triplets(2, vec![(0, 1, ONE)]);
        assert!(matches!(ground_state(&m), Err(Error::Argument(_))));
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        // A 10-qubit transverse-field chain is large enough for the iterative path.
        let n = 10;
        let mut h = QubitOperator::new(n);
        for q in 0..n {
            h.add_term(Complex64::new(0.7, 0.0), PauliString::uniform(n, [q], X)).unwrap();
            if q + 1 < n {
                h.add_term(Complex64::new(-1.0 + 0.05 * q as f64, 0.0), PauliString::uniform(n, [q, q + 1], Z))
                    .unwrap();
            }
        }
        let m = operator_matrix(&h).unwrap();
        let (e, v) = ground_state(&m).unwrap();
        let (ed, _) = dense_ground(&m);
        assert!((e - ed).abs() < 1e-9, "{e} vs {ed}");
        assert!(residual(&m, e, v.amplitudes()) < 1e-9);
    }

    #[test]
    fn rotation_special_cases() {
        let z0 = PauliString::from_axes(&[Z]);
        let mut s = StateVector::basis(1, 0);
        s.rotate(&z0, 0.0);
        assert_eq!(s, StateVector::basis(1, 0));
        s.rotate(&z0, std::f64::consts::PI);
        assert!((s.amplitudes()[0] - Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_2)).norm() < 1e-15);
    }

    #[test]
    fn plan_dimension_mismatch() {
        let p = build_plan(vec![PauliTerm::real(1.0, PauliString::from_axes(&[Z, Z]))], 2, 1, 1.0, 0.0).unwrap();
        assert!(matches!(apply_trotterized(&p, &StateVector::basis(3, 0)), Err(Error::Dimension(_))));
    }

    #[test]
    fn commuting_hamiltonian_has_no_trotter_error() {
        let h = op(3, &[(0.4, &[Z, Z, I]), (-0.3, &[I, Z, Z]), (0.2, &[Z, I, I])]);
        let (e, g) = ground_state(&operator_matrix(&h).unwrap()).unwrap();
        for ordering in [OrderingStrategy::Magnitude, OrderingStrategy::Lexicographic, OrderingStrategy::Random(3)] {
            let plan = crate::trotter::plan_for(&h, ordering, Default::default(), 1, 1.0, 0.0).unwrap();
            let r = trotter_error(&plan, e, &g).unwrap();
            assert!(r.error < 1e-10);
            assert!(!r.low_overlap);
            // Halving the time leaves the estimate unchanged for a commuting sum.
            let r2 = trotter_error(&plan.with_time(0.5).unwrap(), e, &g).unwrap();
            assert!((r.estimated_energy - r2.estimated_energy).abs() < 1e-8);
        }
    }

    #[test]
    fn branch_time_shrinks() {
        let p = build_plan(vec![PauliTerm::real(4.0, PauliString::from_axes(&[Z]))], 1, 1, 1.0, 0.0).unwrap();
        let t = branch_safe_time(&p, 1.0);
        assert!(t < 1.0 && 4.0 * t < std::f64::consts::PI);
        assert_eq!(branch_safe_time(&p, 0.5), 0.5);
    }

    #[test]
    fn unitary_basics() {
        let empty = Circuit::new(1, false);
        let u = circuit_unitary(&empty).unwrap();
        assert_eq!(u, DMatrix::identity(2, 2));
        let mut h = Circuit::new(1, false);
        h.gates.push(Gate::H(0));
        let u = circuit_unitary(&h).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u[(1, 1)].re + r).abs() < 1e-15 && (u[(0, 1)].re - r).abs() < 1e-15);
        assert!(matches!(circuit_unitary(&Circuit::new(11, false)), Err(Error::Resource { .. })));
    }

    #[test]
    fn y_basis_change_conjugates_z_to_y() {
        let mut c = Circuit::new(1, false);
        c.gates.push(Gate::YBasis(0));
        let g = circuit_unitary(&c).unwrap();
        let z = dense_operator(&op(1, &[(1.0, &[Z])])).unwrap();
        let y = dense_operator(&op(1, &[(1.0, &[Y])])).unwrap();
        assert!((g.adjoint() * z * &g - y).norm() < 1e-14);
    }
}
