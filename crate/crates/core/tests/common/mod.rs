#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use quantum_inspection::game::build_inspection_matrix;
use quantum_inspection::{InspectionParams, PayoffMatrix2x2, QuantumState};

pub fn inspection_matrix() -> PayoffMatrix2x2 {
    build_inspection_matrix(&InspectionParams::new(60.0, 15.0, 8.0, 20.0).unwrap())
}

/// Normalized states from eight raw components, avoiding tiny norms.
pub fn any_state() -> impl Strategy<Value = QuantumState> {
    prop::array::uniform8(-1.0f64..1.0)
        .prop_filter("norm too small", |x| x.iter().map(|v| v * v).sum::<f64>() > 0.05)
        .prop_map(|x| state_from_raw(&x))
}

pub fn state_from_raw(x: &[f64; 8]) -> QuantumState {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let amps = [0, 1, 2, 3].map(|k| Complex64::new(x[2 * k] / norm, x[2 * k + 1] / norm));
    QuantumState::new(amps).unwrap()
}

pub fn any_matrix() -> impl Strategy<Value = PayoffMatrix2x2> {
    prop::array::uniform4(prop::array::uniform2(-50.0f64..50.0)).prop_map(|cells| PayoffMatrix2x2::new(cells).unwrap())
}

/// Small-integer matrices, which often produce degenerate equilibrium sets.
pub fn degenerate_matrix() -> impl Strategy<Value = PayoffMatrix2x2> {
    prop::array::uniform4(prop::array::uniform2(-2i32..=2))
        .prop_map(|cells| PayoffMatrix2x2::new(cells.map(|c| c.map(f64::from))).unwrap())
}

pub fn reversed(state: &QuantumState) -> QuantumState {
    let mut a = state.amplitudes();
    a.reverse();
    QuantumState::new(a).unwrap()
}
