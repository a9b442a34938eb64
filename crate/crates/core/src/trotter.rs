//! Term orderings and first-order Trotter plans.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliTerm, QubitOperator};

/// Imaginary parts above this are rejected when building a plan.
pub const HERMITICITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrderingStrategy {
    Magnitude,
    Lexicographic,
    Random(u64),
    LexoMag,
}

impl OrderingStrategy {
    pub fn name(self) -> &'static str {
        match self {
            OrderingStrategy::Magnitude => "magnitude",
            OrderingStrategy::Lexicographic => "lex",
            OrderingStrategy::Random(_) => "random",
            OrderingStrategy::LexoMag => "lexomag",
        }
    }

    pub fn seed(self) -> Option<u64> {
        match self {
            OrderingStrategy::Random(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for OrderingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingStrategy::Random(s) => write!(f, "random:{s}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for OrderingStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "magnitude" | "mag" => Ok(OrderingStrategy::Magnitude),
            "lex" | "lexicographic" => Ok(OrderingStrategy::Lexicographic),
            "lexomag" => Ok(OrderingStrategy::LexoMag),
            _ => match lower.strip_prefix("random:") {
                Some(seed) => seed
                    .parse()
                    .map(OrderingStrategy::Random)
                    .map_err(|_| Error::Argument(format!("bad random seed '{seed}'"))),
                None => Err(Error::Argument(format!("unknown ordering '{s}'"))),
            },
        }
    }
}

/// Direction of the magnitude ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MagnitudeDirection {
    #[default]
    Descending,
    Ascending,
}

impl FromStr for MagnitudeDirection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "descending" | "desc" => Ok(MagnitudeDirection::Descending),
            "ascending" | "asc" => Ok(MagnitudeDirection::Ascending),
            other => Err(Error::Argument(format!("unknown magnitude direction '{other}'"))),
        }
    }
}

fn lexicographic(op: &QubitOperator) -> Vec<PauliTerm> {
    op.terms_sorted()
}

fn by_magnitude(op: &QubitOperator, dir: MagnitudeDirection) -> Vec<PauliTerm> {
    // Stable sort on a lexicographic base breaks magnitude ties by key.
    let mut v = lexicographic(op);
    match dir {
        MagnitudeDirection::Descending => {
            v.sort_by(|a, b| b.coefficient.norm().total_cmp(&a.coefficient.norm()))
        }
        MagnitudeDirection::Ascending => {
            v.sort_by(|a, b| a.coefficient.norm().total_cmp(&b.coefficient.norm()))
        }
    }
    v
}

/// Non-identity terms of `op` in the order given by `strategy`, with the
/// magnitude ordering descending.
pub fn order_terms(op: &QubitOperator, strategy: OrderingStrategy) -> Vec<PauliTerm> {
    order_terms_directed(op, strategy, MagnitudeDirection::Descending)
}

pub fn order_terms_directed(
    op: &QubitOperator,
    strategy: OrderingStrategy,
    direction: MagnitudeDirection,
) -> Vec<PauliTerm> {
    match strategy {
        OrderingStrategy::Lexicographic => lexicographic(op),
        OrderingStrategy::Magnitude => by_magnitude(op, direction),
        OrderingStrategy::Random(seed) => {
            let mut v = lexicographic(op);
            v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            v
        }
        OrderingStrategy::LexoMag => {
            let lex = lexicographic(op);
            let mag = by_magnitude(op, direction);
            let position: HashMap<&PauliString, usize> =
                lex.iter().enumerate().map(|(i, t)| (&t.string, i)).collect();
            let mut emitted = vec![false; lex.len()];
            let mut out = Vec::with_capacity(lex.len());
            let (mut li, mut mi) = (0, 0);
            let mut from_lex = true;
            while out.len() < lex.len() {
                if from_lex {
                    while li < lex.len() && emitted[li] {
                        li += 1;
                    }
                    if li < lex.len() {
                        emitted[li] = true;
                        out.push(lex[li].clone());
                    }
                } else {
                    while mi < mag.len() && emitted[position[&mag[mi].string]] {
                        mi += 1;
                    }
                    if mi < mag.len() {
                        emitted[position[&mag[mi].string]] = true;
                        out.push(mag[mi].clone());
                    }
                }
                from_lex = !from_lex;
            }
            out
        }
    }
}

/// First-order product formula `(Π_j exp(-i c_j (t/n) P_j))^n` with the
/// identity component kept aside as a scalar energy offset.
#[derive(Debug, Clone, PartialEq)]
pub struct TrotterPlan {
    terms: Vec<PauliTerm>,
    n_qubits: usize,
    pub n_steps: usize,
    pub time: f64,
    pub scalar_offset: f64,
    pub ordering: Option<OrderingStrategy>,
}

impl TrotterPlan {
    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn step_time(&self) -> f64 {
        self.time / self.n_steps as f64
    }

    /// Rotation angle `θ_j = 2 c_j t / n` for the `Rz(θ) = exp(-iθZ/2)` convention.
    pub fn angle(&self, j: usize) -> f64 {
        2.0 * self.terms[j].coefficient.re * self.step_time()
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.terms.len()).map(|j| self.angle(j)).collect()
    }

    /// Same terms and steps over a different total time.
    pub fn with_time(&self, time: f64) -> Result<TrotterPlan> {
        build_plan(self.terms.clone(), self.n_qubits, self.n_steps, time, self.scalar_offset)
            .map(|p| TrotterPlan {
                ordering: self.ordering,
                ..p
            })
    }

    pub fn with_steps(&self, n_steps: usize) -> Result<TrotterPlan> {
        build_plan(self.terms.clone(), self.n_qubits, n_steps, self.time, self.scalar_offset)
            .map(|p| TrotterPlan {
                ordering: self.ordering,
                ..p
            })
    }
}

pub fn build_plan(
    ordered: Vec<PauliTerm>,
    n_qubits: usize,
    n_steps: usize,
    time: f64,
    offset: f64,
) -> Result<TrotterPlan> {
    if n_steps < 1 {
        return Err(Error::Argument("a Trotter plan needs at least one step".into()));
    }
    if !time.is_finite() {
        return Err(Error::Argument(format!("evolution time {time} is not finite")));
    }
    for t in &ordered {
        if t.string.len() != n_qubits {
            return Err(Error::Dimension(format!(
                "term on {} qubits in a {n_qubits}-qubit plan",
                t.string.len()
            )));
        }
        if t.string.is_identity() {
            return Err(Error::Argument(
                "identity terms belong in the scalar offset".into(),
            ));
        }
        if t.coefficient.im.abs() > HERMITICITY_TOLERANCE || !t.coefficient.re.is_finite() {
            return Err(Error::Argument(format!(
                "term {} has non-real coefficient {}",
                t.string, t.coefficient
            )));
        }
    }
    Ok(TrotterPlan {
        terms: ordered,
        n_qubits,
        n_steps,
        time,
        scalar_offset: offset,
        ordering: None,
    })
}

/// Orders the terms of a Hermitian operator and wraps them in a plan. The
/// offset is the operator's identity coefficient plus `extra_offset`.
pub fn plan_for(
    op: &QubitOperator,
    strategy: OrderingStrategy,
    direction: MagnitudeDirection,
    n_steps: usize,
    time: f64,
    extra_offset: f64,
) -> Result<TrotterPlan> {
    let ordered = order_terms_directed(op, strategy, direction);
    let mut plan = build_plan(
        ordered,
        op.n_qubits(),
        n_steps,
        time,
        op.constant().re + extra_offset,
    )?;
    plan.ordering = Some(strategy);
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliAxis::*;

    fn two_terms() -> QubitOperator {
        QubitOperator::from_terms(
            1,
            vec![
                PauliTerm::real(0.1, PauliString::from_axes(&[Z])),
                PauliTerm::real(0.9, PauliString::from_axes(&[X])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn magnitude_and_lex_examples() {
        let op = two_terms();
        let m = order_terms(&op, OrderingStrategy::Magnitude);
        assert_eq!(m[0].string, PauliString::from_axes(&[X]));
        assert_eq!(m[1].string, PauliString::from_axes(&[Z]));
        let l = order_terms(&op, OrderingStrategy::Lexicographic);
        assert_eq!(l[0].string, PauliString::from_axes(&[X]));
        let a = order_terms_directed(&op, OrderingStrategy::Magnitude, MagnitudeDirection::Ascending);
        assert_eq!(a[0].string, PauliString::from_axes(&[Z]));
    }

    #[test]
    fn magnitude_ties_fall_back_to_lex() {
        let op = QubitOperator::from_terms(
            2,
            vec![
                PauliTerm::real(0.5, PauliString::from_axes(&[Z, I])),
                PauliTerm::real(-0.5, PauliString::from_axes(&[X, I])),
                PauliTerm::real(0.5, PauliString::from_axes(&[I, Y])),
            ],
        )
        .unwrap();
        let m = order_terms(&op, OrderingStrategy::Magnitude);
        let keys: Vec<Vec<u8>> = m.iter().map(|t| t.string.lex_key()).collect();
        assert_eq!(keys, vec![vec![0, 2], vec![1, 0], vec![3, 0]]);
    }

    #[test]
    fn lexomag_interleaves_and_skips_duplicates() {
        let op = QubitOperator::from_terms(
            2,
            vec![
                PauliTerm::real(0.1, PauliString::from_axes(&[X, I])),
                PauliTerm::real(0.4, PauliString::from_axes(&[Y, I])),
                PauliTerm::real(0.3, PauliString::from_axes(&[Z, I])),
                PauliTerm::real(0.9, PauliString::from_axes(&[I, X])),
            ],
        )
        .unwrap();
        let lm = order_terms(&op, OrderingStrategy::LexoMag);
        let got: Vec<f64> = lm.iter().map(|t| t.coefficient.re).collect();
        // lex = [I X (0.9), X I (0.1), Y I (0.4), Z I (0.3)]
        // mag = [I X (0.9), Y I (0.4), Z I (0.3), X I (0.1)]
        // lex -> 0.9, mag skips 0.9 -> 0.4, lex -> 0.1, mag skips 0.4 -> 0.3
        assert_eq!(got, vec![0.9, 0.4, 0.1, 0.3]);
    }

    #[test]
    fn random_is_seeded() {
        let op = QubitOperator::from_terms(
            3,
            (1..20).map(|k| {
                let axes: Vec<_> = (0..3).map(|q| [I, X, Y, Z][(k >> (2 * q)) & 3]).collect();
                PauliTerm::real(k as f64, PauliString::from_axes(&axes))
            }),
        )
        .unwrap();
        let a = order_terms(&op, OrderingStrategy::Random(5));
        let b = order_terms(&op, OrderingStrategy::Random(5));
        let c = order_terms(&op, OrderingStrategy::Random(6));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [
            OrderingStrategy::Magnitude,
            OrderingStrategy::Lexicographic,
            OrderingStrategy::Random(17),
            OrderingStrategy::LexoMag,
        ] {
            assert_eq!(s.to_string().parse::<OrderingStrategy>().unwrap(), s);
        }
        assert!("random:x".parse::<OrderingStrategy>().is_err());
    }

    #[test]
    fn plan_rejects_bad_input() {
        let op = two_terms();
        let terms = order_terms(&op, OrderingStrategy::Lexicographic);
        assert!(matches!(build_plan(terms.clone(), 1, 0, 1.0, 0.0), Err(Error::Argument(_))));
        let mut complex = terms.clone();
        complex[0].coefficient.im = 0.1;
        assert!(build_plan(complex, 1, 1, 1.0, 0.0).is_err());
        let plan = build_plan(terms, 1, 4, 1.0, 0.0).unwrap();
        assert!((plan.angle(0) - 2.0 * 0.9 / 4.0).abs() < 1e-15);
    }
}
