//! Which-path basis vectors and the Pauli eigenbases.
//!
//! Ordering is fixed everywhere: `|L⟩ = e₀`, `|R⟩ = e₁`, and two-qubit
//! products use the first factor as the slow index, so
//! `(LL, LR, RL, RR) ↔ (0, 1, 2, 3)`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ComplexMatrix;

const O: Complex64 = Complex64::new(0.0, 0.0);
const I1: Complex64 = Complex64::new(1.0, 0.0);
const H: Complex64 = Complex64::new(FRAC_1_SQRT_2, 0.0);
const IH: Complex64 = Complex64::new(0.0, FRAC_1_SQRT_2);

pub type Qubit = [Complex64; 2];
pub type TwoQubit = [Complex64; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Arm {
    L,
    R,
}

impl Arm {
    pub const BOTH: [Arm; 2] = [Arm::L, Arm::R];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn ket(self) -> Qubit {
        match self {
            Arm::L => ket_l(),
            Arm::R => ket_r(),
        }
    }

    pub fn other(self) -> Arm {
        match self {
            Arm::L => Arm::R,
            Arm::R => Arm::L,
        }
    }
}

/// Joint arm configuration of the two systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WhichPath {
    LL,
    LR,
    RL,
    RR,
}

impl WhichPath {
    pub const ALL: [WhichPath; 4] = [WhichPath::LL, WhichPath::LR, WhichPath::RL, WhichPath::RR];

    pub fn new(first: Arm, second: Arm) -> Self {
        Self::from_index(2 * first.index() + second.index())
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn arms(self) -> (Arm, Arm) {
        let i = self.index();
        (Arm::BOTH[i / 2], Arm::BOTH[i % 2])
    }

    pub fn ket(self) -> TwoQubit {
        let mut v = [O; 4];
        v[self.index()] = I1;
        v
    }
}

impl fmt::Display for WhichPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn ket_l() -> Qubit {
    [I1, O]
}

pub fn ket_r() -> Qubit {
    [O, I1]
}

/// (|L⟩ + |R⟩)/√2
pub fn ket_plus() -> Qubit {
    [H, H]
}

/// (|L⟩ - |R⟩)/√2
pub fn ket_minus() -> Qubit {
    [H, -H]
}

/// (|L⟩ + i|R⟩)/√2
pub fn ket_up() -> Qubit {
    [H, IH]
}

/// (|L⟩ - i|R⟩)/√2
pub fn ket_down() -> Qubit {
    [H, -IH]
}

pub fn product(a: &Qubit, b: &Qubit) -> TwoQubit {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// |+⟩ ⊗ |+⟩, the standard interferometer input.
pub fn plus_plus() -> TwoQubit {
    product(&ket_plus(), &ket_plus())
}

/// |a⟩⟨b| for single-qubit arms.
pub fn arm_op(a: Arm, b: Arm) -> ComplexMatrix {
    ComplexMatrix::outer(&a.ket(), &b.ket())
}

/// |x⟩⟨y| in the two-qubit which-path basis.
pub fn path_op(x: WhichPath, y: WhichPath) -> ComplexMatrix {
    ComplexMatrix::outer(&x.ket(), &y.ket())
}

/// |L⟩⟨R| + |R⟩⟨L|
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![O, I1], vec![I1, O]])
}

pub fn pauli_y() -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    ComplexMatrix::from_rows(&[vec![O, -i], vec![i, O]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![I1, O], vec![O, -I1]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }

    #[test]
    fn library_is_orthonormal() {
        assert_eq!(inner(&ket_l(), &ket_r()), O);
        for v in [ket_l(), ket_r(), ket_plus(), ket_minus(), ket_up(), ket_down()] {
            assert!((inner(&v, &v).re - 1.0).abs() < 1e-15);
        }
        assert!(inner(&ket_plus(), &ket_minus()).norm() < 1e-15);
        assert!(inner(&ket_up(), &ket_down()).norm() < 1e-15);
    }

    #[test]
    fn product_ordering() {
        assert_eq!(product(&ket_l(), &ket_r()), WhichPath::LR.ket());
        assert_eq!(WhichPath::new(Arm::R, Arm::L), WhichPath::RL);
        assert_eq!(WhichPath::RL.arms(), (Arm::R, Arm::L));
        let pp = plus_plus();
        assert!(pp.iter().all(|z| (z.re - 0.5).abs() < 1e-15 && z.im == 0.0));
    }
}
