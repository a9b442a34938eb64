//! Independent dense oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use bkbench::circuit::{Circuit, Gate};
use bkbench::fermion::{FermionOperator, LadderOp};
use bkbench::{PauliAxis, PauliString};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).expect("fixture present")
}

pub fn pauli_2x2(a: PauliAxis) -> CMat {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match a {
        PauliAxis::I => CMat::from_row_slice(2, 2, &[o, z, z, o]),
        PauliAxis::X => CMat::from_row_slice(2, 2, &[z, o, o, z]),
        PauliAxis::Y => CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        PauliAxis::Z => CMat::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// Kronecker product with qubit 0 as the least significant factor.
pub fn kron_qubits(factors: &[CMat]) -> CMat {
    let mut m = CMat::identity(1, 1);
    for f in factors.iter().rev() {
        m = m.kronecker(f);
    }
    m
}

pub fn pauli_dense(p: &PauliString) -> CMat {
    kron_qubits(&p.axes().into_iter().map(pauli_2x2).collect::<Vec<_>>())
}

/// `exp(-i(θ/2)P)` through the matrix exponential.
pub fn pauli_exp(p: &PauliString, theta: f64) -> CMat {
    (pauli_dense(p) * c(0.0, -theta / 2.0)).exp()
}

fn embed_single(n: usize, q: usize, m: CMat) -> CMat {
    let mut f: Vec<CMat> = (0..n).map(|_| CMat::identity(2, 2)).collect();
    f[q] = m;
    kron_qubits(&f)
}

fn projector(bit: u8) -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(bit as usize, bit as usize)] = c(1.0, 0.0);
    m
}

/// Gate matrix built from Kronecker products, independent of the simulator.
pub fn gate_dense(n: usize, g: &Gate) -> CMat {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let x = pauli_2x2(PauliAxis::X);
    let z = pauli_2x2(PauliAxis::Z);
    let id = CMat::identity(2, 2);
    match *g {
        Gate::H(q) => embed_single(n, q, (&x + &z) * c(r, 0.0)),
        Gate::YBasis(q) => embed_single(n, q, (&id - &x * c(0.0, 1.0)) * c(r, 0.0)),
        Gate::YBasisDag(q) => embed_single(n, q, (&id + &x * c(0.0, 1.0)) * c(r, 0.0)),
        Gate::X(q) => embed_single(n, q, x),
        Gate::Rz { qubit, angle } => embed_single(n, qubit, (z * c(0.0, -angle / 2.0)).exp()),
        Gate::Cnot { control, target } => {
            let mut a: Vec<CMat> = (0..n).map(|_| CMat::identity(2, 2)).collect();
            a[control] = projector(0);
            let mut b: Vec<CMat> = (0..n).map(|_| CMat::identity(2, 2)).collect();
            b[control] = projector(1);
            b[target] = x;
            kron_qubits(&a) + kron_qubits(&b)
        }
        Gate::Cz(p, q) => {
            let full = CMat::identity(1 << n, 1 << n);
            let mut b: Vec<CMat> = (0..n).map(|_| CMat::identity(2, 2)).collect();
            b[p] = projector(1);
            b[q] = projector(1);
            full - kron_qubits(&b) * c(2.0, 0.0)
        }
    }
}

pub fn circuit_dense(circ: &Circuit) -> CMat {
    let n = circ.width();
    circ.gates
        .iter()
        .fold(CMat::identity(1 << n, 1 << n), |u, g| gate_dense(n, g) * u)
}

/// Largest entrywise `|A - e^{iφ}B|` after aligning φ on the largest entry.
pub fn phase_distance(a: &CMat, b: &CMat) -> f64 {
    let (idx, _) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .unwrap();
    let ratio = a[idx] / b[idx];
    let phase = ratio / ratio.norm();
    a.iter().zip(b.iter()).map(|(x, y)| (x - phase * y).norm()).fold(0.0, f64::max)
}

pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// The `|0⟩`-ancilla block of a unitary whose ancilla is the top qubit.
pub fn ancilla_zero_block(u: &CMat) -> (CMat, f64) {
    let half = u.nrows() / 2;
    let block = u.view((0, 0), (half, half)).into_owned();
    let leak = u.view((half, 0), (half, half)).iter().map(|v| v.norm()).fold(0.0, f64::max);
    (block, leak)
}

pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    loop {
        let axes: Vec<PauliAxis> = (0..n).map(|_| PauliAxis::ALL[rng.random_range(0..4)]).collect();
        let p = PauliString::from_axes(&axes);
        if !p.is_identity() {
            return p;
        }
    }
}

pub fn random_fermion_operator<R: Rng>(rng: &mut R, n: usize) -> FermionOperator {
    let mut op = FermionOperator::new(n);
    for _ in 0..rng.random_range(1..=6) {
        let k = rng.random_range(1..=4);
        let factors: Vec<LadderOp> = (0..k)
            .map(|_| {
                let mode = rng.random_range(0..n);
                if rng.random_bool(0.5) {
                    LadderOp::create(mode)
                } else {
                    LadderOp::annihilate(mode)
                }
            })
            .collect();
        let coef = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        op.add(coef, &factors).unwrap();
    }
    op
}
