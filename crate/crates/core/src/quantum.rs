//! Two-qubit Marinatto-Weber quantization.
//!
//! All vectors and matrices use the basis order `|IW>, |IS>, |NW>, |NS>`;
//! the first qubit belongs to the employer and the second to the worker.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::game::{bilinear_table, BilinearPayoff, Outcome, PayoffMatrix2x2, Player, StrategyProfile};

/// Allowed deviation of the squared norm from 1 when a state is constructed.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

type Matrix4 = [[Complex64; 4]; 4];
type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Shared initial state `a|IW> + b|IS> + c|NW> + d|NS>`.
///
/// Construction accepts any state whose squared norm is within
/// [`NORMALIZATION_TOLERANCE`] of one and stores the exactly renormalized
/// amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumState {
    amplitudes: [Complex64; 4],
}

impl QuantumState {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("amplitudes must be finite".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr, tolerance: NORMALIZATION_TOLERANCE });
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(QuantumState { amplitudes: amplitudes.map(|z| z * scale) })
    }

    /// Amplitudes given as `[re, im]` pairs.
    pub fn from_pairs(pairs: [[f64; 2]; 4]) -> Result<Self> {
        QuantumState::new(pairs.map(|[re, im]| Complex64::new(re, im)))
    }

    /// Real nonnegative amplitudes with the given squared moduli.
    pub fn from_probabilities(probabilities: [f64; 4]) -> Result<Self> {
        if probabilities.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidState(format!(
                "probabilities must be finite and nonnegative, got {probabilities:?}"
            )));
        }
        QuantumState::new(probabilities.map(|x| Complex64::new(x.sqrt(), 0.0)))
    }

    pub fn basis(outcome: Outcome) -> Self {
        let mut amplitudes = [ZERO; 4];
        amplitudes[outcome.index()] = ONE;
        QuantumState { amplitudes }
    }

    pub fn amplitudes(&self) -> [Complex64; 4] {
        self.amplitudes
    }

    pub fn to_pairs(&self) -> [[f64; 2]; 4] {
        self.amplitudes.map(|z| [z.re, z.im])
    }

    /// `(|a|^2, |b|^2, |c|^2, |d|^2)`.
    pub fn probabilities(&self) -> [f64; 4] {
        self.amplitudes.map(|z| z.norm_sqr())
    }
}

/// A 4x4 density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    entries: Matrix4,
}

impl DensityMatrix {
    pub fn entries(&self) -> &Matrix4 {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// Real parts of the diagonal: the outcome probabilities.
    pub fn diagonal(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.entries[i][i].re)
    }

    pub fn is_hermitian(&self, tolerance: f64) -> bool {
        (0..4).all(|i| (0..4).all(|j| (self.entries[i][j] - self.entries[j][i].conj()).norm() <= tolerance))
    }

    /// `rho^2 == rho` entrywise within `tolerance`.
    pub fn is_pure(&self, tolerance: f64) -> bool {
        let square = matmul(&self.entries, &self.entries);
        (0..4).all(|i| (0..4).all(|j| (square[i][j] - self.entries[i][j]).norm() <= tolerance))
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    fn scaled(&self, factor: f64) -> Matrix4 {
        self.entries.map(|row| row.map(|z| z * factor))
    }
}

/// Diagonal payoff operator of one player.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffOperator {
    pub diagonal: [f64; 4],
}

impl PayoffOperator {
    pub fn matrix(&self) -> Matrix4 {
        let mut m = [[ZERO; 4]; 4];
        for (i, value) in self.diagonal.iter().enumerate() {
            m[i][i] = Complex64::new(*value, 0.0);
        }
        m
    }
}

fn matmul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

fn dagger(a: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].conj()))
}

fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i / 2][j / 2] * b[i % 2][j % 2]))
}

const IDENTITY2: Matrix2 = [[ONE, ZERO], [ZERO, ONE]];
/// Swaps `|I> <-> |N>` on the employer's qubit and `|W> <-> |S>` on the worker's.
const FLIP: Matrix2 = [[ZERO, ONE], [ONE, ZERO]];

/// The two-qubit operator `X_A (x) X_B` where each factor is the identity or
/// the flip.
pub fn local_operator(flip_a: bool, flip_b: bool) -> Matrix4 {
    let pick = |flip: bool| if flip { &FLIP } else { &IDENTITY2 };
    kron(pick(flip_a), pick(flip_b))
}

/// `|psi><psi|`.
pub fn density_from_state(state: &QuantumState) -> DensityMatrix {
    let a = state.amplitudes;
    DensityMatrix { entries: std::array::from_fn(|i| std::array::from_fn(|j| a[i] * a[j].conj())) }
}

/// Conjugates `density` by the chosen local flips.
pub fn apply_flip(density: &DensityMatrix, flip_a: bool, flip_b: bool) -> DensityMatrix {
    let u = local_operator(flip_a, flip_b);
    DensityMatrix { entries: matmul(&matmul(&u, &density.entries), &dagger(&u)) }
}

/// Density matrix after the employer applies the identity with probability
/// `p` (flip otherwise) and the worker the identity with probability `q`.
pub fn final_density(state: &QuantumState, profile: StrategyProfile) -> DensityMatrix {
    let rho = density_from_state(state);
    let StrategyProfile { p, q } = profile;
    let terms = [
        (false, false, p * q),
        (false, true, p * (1.0 - q)),
        (true, false, (1.0 - p) * q),
        (true, true, (1.0 - p) * (1.0 - q)),
    ];
    let mut entries = [[ZERO; 4]; 4];
    for (flip_a, flip_b, weight) in terms {
        let term = apply_flip(&rho, flip_a, flip_b).scaled(weight);
        for i in 0..4 {
            for j in 0..4 {
                entries[i][j] += term[i][j];
            }
        }
    }
    DensityMatrix { entries }
}

pub fn payoff_operator(matrix: &PayoffMatrix2x2, player: Player) -> PayoffOperator {
    PayoffOperator { diagonal: matrix.for_player(player) }
}

/// `Tr(P rho)`.
pub fn trace_payoff(density: &DensityMatrix, operator: &PayoffOperator) -> f64 {
    let product = matmul(&operator.matrix(), &density.entries);
    let trace: Complex64 = (0..4).map(|i| product[i][i]).sum();
    debug_assert!(trace.im.abs() <= 1e-10, "imaginary residue {}", trace.im);
    trace.re
}

/// Closed-form coefficients of the quantum payoff of `player`: only the
/// squared moduli of the amplitudes enter.
pub fn bilinear_coefficients(matrix: &PayoffMatrix2x2, state: &QuantumState, player: Player) -> BilinearPayoff {
    let weights = state.probabilities();
    let [alpha, beta, gamma, delta] =
        bilinear_table(&matrix.for_player(player)).map(|row| row.iter().zip(weights).map(|(c, x)| c * x).sum());
    BilinearPayoff { alpha, beta, gamma, delta }
}

/// Quantum payoffs of both players at `profile`, via the closed form.
pub fn quantum_payoffs(matrix: &PayoffMatrix2x2, state: &QuantumState, profile: StrategyProfile) -> (f64, f64) {
    (
        bilinear_coefficients(matrix, state, Player::A).eval_at(profile),
        bilinear_coefficients(matrix, state, Player::B).eval_at(profile),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{build_inspection_matrix, InspectionParams};

    fn inspection_matrix() -> PayoffMatrix2x2 {
        build_inspection_matrix(&InspectionParams::new(60.0, 15.0, 8.0, 20.0).unwrap())
    }

    fn bell() -> QuantumState {
        QuantumState::from_probabilities([0.5, 0.0, 0.0, 0.5]).unwrap()
    }

    fn profile(p: f64, q: f64) -> StrategyProfile {
        StrategyProfile::new(p, q).unwrap()
    }

    #[test]
    fn basis_projector() {
        let rho = density_from_state(&QuantumState::basis(Outcome::IW));
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == 0 && j == 0 { 1.0 } else { 0.0 };
                assert_eq!(rho.entry(i, j), Complex64::new(expected, 0.0));
            }
        }
        assert!(rho.is_pure(1e-10));
    }

    #[test]
    fn bell_projector() {
        let rho = density_from_state(&bell());
        for i in 0..4 {
            for j in 0..4 {
                let corner = (i == 0 || i == 3) && (j == 0 || j == 3);
                let expected = if corner { 0.5 } else { 0.0 };
                assert!((rho.entry(i, j) - Complex64::new(expected, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn global_phase_cancels() {
        let base = QuantumState::from_pairs([[0.6, 0.0], [0.0, 0.0], [0.0, 0.8], [0.0, 0.0]]).unwrap();
        let phase = Complex64::from_polar(1.0, 0.7);
        let rotated = QuantumState::new(base.amplitudes().map(|z| z * phase)).unwrap();
        let diff = density_from_state(&base).max_abs_diff(&density_from_state(&rotated));
        assert!(diff < 1e-15);
    }

    #[test]
    fn normalization_is_checked_and_restored() {
        let err = QuantumState::from_probabilities([0.5, 0.5, 0.1, 0.0]).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
        let s = QuantumState::from_probabilities([0.5 + 4e-10, 0.5, 0.0, 0.0]).unwrap();
        let total: f64 = s.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!(QuantumState::from_pairs([[f64::INFINITY, 0.0], [0.0; 2], [0.0; 2], [0.0; 2]]).is_err());
    }

    #[test]
    fn flips_permute_basis_states() {
        let iw = density_from_state(&QuantumState::basis(Outcome::IW));
        let ns = density_from_state(&QuantumState::basis(Outcome::NS));
        assert!(apply_flip(&iw, true, true).max_abs_diff(&ns) < 1e-15);
        assert_eq!(apply_flip(&iw, false, false), iw);

        let rho = density_from_state(
            &QuantumState::from_pairs([[0.1, 0.2], [0.3, -0.4], [0.5, 0.1], [0.0, 0.0]].map(|[r, i]| {
                let n = (0.01f64 + 0.04 + 0.09 + 0.16 + 0.25 + 0.01).sqrt();
                [r / n, i / n]
            }))
            .unwrap(),
        );
        let twice = apply_flip(&apply_flip(&rho, true, false), true, false);
        assert!(twice.max_abs_diff(&rho) < 1e-15);

        let is = density_from_state(&QuantumState::basis(Outcome::IS));
        let nw = density_from_state(&QuantumState::basis(Outcome::NW));
        assert!(apply_flip(&iw, false, true).max_abs_diff(&is) < 1e-15);
        assert!(apply_flip(&iw, true, false).max_abs_diff(&nw) < 1e-15);
    }

    #[test]
    fn final_density_extremes() {
        let iw = QuantumState::basis(Outcome::IW);
        let kept = final_density(&iw, profile(1.0, 1.0));
        assert!(kept.max_abs_diff(&density_from_state(&iw)) < 1e-15);
        let flipped = final_density(&iw, profile(0.0, 0.0));
        assert!(flipped.max_abs_diff(&density_from_state(&QuantumState::basis(Outcome::NS))) < 1e-15);

        let mixed = final_density(&bell(), profile(0.5, 0.5));
        for x in mixed.diagonal() {
            assert!((x - 0.25).abs() < 1e-15);
        }
        assert!((mixed.trace() - ONE).norm() < 1e-12);
        assert!(mixed.is_hermitian(1e-12));
        assert!(!mixed.is_pure(1e-6));
    }

    #[test]
    fn payoff_operators() {
        let m = inspection_matrix();
        assert_eq!(payoff_operator(&m, Player::A).diagonal, [32.0, -8.0, 40.0, -20.0]);
        assert_eq!(payoff_operator(&m, Player::B).diagonal, [5.0, 0.0, 5.0, 20.0]);
        assert_eq!(payoff_operator(&PayoffMatrix2x2::zero(), Player::A).diagonal, [0.0; 4]);
    }

    #[test]
    fn trace_payoffs() {
        let m = inspection_matrix();
        let pa = payoff_operator(&m, Player::A);
        let iw = QuantumState::basis(Outcome::IW);
        assert!((trace_payoff(&final_density(&iw, profile(1.0, 1.0)), &pa) - 32.0).abs() < 1e-12);
        let rho = final_density(&bell(), profile(0.5, 0.5));
        assert!((trace_payoff(&rho, &pa) - 11.0).abs() < 1e-12);
        let zero = payoff_operator(&PayoffMatrix2x2::zero(), Player::B);
        assert_eq!(trace_payoff(&rho, &zero), 0.0);
    }

    #[test]
    fn closed_form_coefficients() {
        let m = inspection_matrix();
        let iw = QuantumState::basis(Outcome::IW);
        assert_eq!(bilinear_coefficients(&m, &iw, Player::A), BilinearPayoff::new(-20.0, 12.0, 60.0, -20.0));
        assert_eq!(bilinear_coefficients(&m, &iw, Player::B), BilinearPayoff::new(20.0, -20.0, -15.0, 20.0));

        let is = QuantumState::basis(Outcome::IS);
        assert_eq!(bilinear_coefficients(&m, &is, Player::A), BilinearPayoff::new(20.0, -8.0, -60.0, 40.0));

        let uniform = QuantumState::from_probabilities([0.25; 4]).unwrap();
        let c = bilinear_coefficients(&m, &uniform, Player::A);
        assert!(c.alpha.abs() < 1e-12 && c.beta.abs() < 1e-12 && c.gamma.abs() < 1e-12);
        assert!((c.delta - 11.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_agrees_with_general_expansion() {
        // Coefficients printed for the inspection instance, as functions of the
        // squared moduli.
        let m = inspection_matrix();
        let x = [0.1, 0.2, 0.3, 0.4];
        let s = QuantumState::from_probabilities(x).unwrap();
        let [a, b, c, d] = x;
        let ca = bilinear_coefficients(&m, &s, Player::A);
        let cb = bilinear_coefficients(&m, &s, Player::B);
        let close = |u: f64, v: f64| (u - v).abs() < 1e-12;
        assert!(close(ca.alpha, 20.0 * b + 20.0 * c - 20.0 * a - 20.0 * d));
        assert!(close(ca.beta, 12.0 * a - 12.0 * c + 8.0 * d - 8.0 * b));
        assert!(close(ca.gamma, 60.0 * a - 60.0 * b + 40.0 * c - 40.0 * d));
        assert!(close(ca.delta, 40.0 * b - 20.0 * a - 8.0 * c + 32.0 * d));
        assert!(close(cb.alpha, 20.0 * a - 20.0 * b - 20.0 * c + 20.0 * d));
        assert!(close(cb.gamma, 15.0 * b - 15.0 * a + 5.0 * c - 5.0 * d));
        assert!(close(cb.beta, 20.0 * c - 20.0 * a));
        assert!(close(cb.delta, 20.0 * a + 5.0 * b + 5.0 * d));
    }
}
