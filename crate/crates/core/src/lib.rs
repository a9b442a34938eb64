//! Fermion-to-qubit mappings, Trotter circuit synthesis, peephole
//! optimization and gate-count benchmarking for molecular Hamiltonians.
//!
//! The pipeline runs integrals → [`fermion::FermionOperator`] →
//! [`pauli::QubitOperator`] (Jordan-Wigner or Bravyi-Kitaev) →
//! [`trotter::TrotterPlan`] → [`circuit::Circuit`] → optimized circuit, with
//! [`simulator`] providing exact numerics for small registers.

pub mod bench;
pub mod circuit;
pub mod error;
pub mod fermion;
pub mod mapping;
pub mod optimizer;
pub mod pauli;
pub mod simulator;
pub mod sparse;
pub mod trotter;

pub use circuit::{Circuit, Gate, GateCounts, SynthesisMode};
pub use error::{Error, Result};
pub use fermion::{FermionOperator, IntegralSet};
pub use num_complex::Complex64;
pub use mapping::{map_operator, MappingScheme};
pub use pauli::{PauliAxis, PauliString, PauliTerm, QubitOperator};
pub use trotter::{OrderingStrategy, TrotterPlan};
