//! C ABI for the quantum inspection game solver.
//!
//! Every function returns a [`QiStatus`]. On failure a description is kept
//! per thread and can be read with [`qi_last_error_message`]. Objects are
//! opaque handles released with their matching `_free` function; strings
//! returned through `char **` are released with [`qi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quantum_inspection::equilibrium::{equilibria_for_state, NashEquilibriumSet, NeComponent};
use quantum_inspection::polytope::SamplingOptions;
use quantum_inspection::quantum::{bilinear_coefficients, quantum_payoffs};
use quantum_inspection::scenario::{reproduce_reference, run_scenario, ReproduceOptions, ScenarioConfig};
use quantum_inspection::{game, Error, InspectionParams, PayoffMatrix2x2, Player, QuantumState, StrategyProfile};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameters = 2,
    InvalidProfile = 3,
    NotNormalized = 4,
    InvalidState = 5,
    InfeasibleProgram = 6,
    ConfigParse = 7,
    InvalidUtf8 = 8,
    OutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QiPlayer {
    Employer = 0,
    Worker = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QiComponentKind {
    Point = 0,
    Segment = 1,
    FullSquare = 2,
}

/// One equilibrium component as the box `[p_lo, p_hi] x [q_lo, q_hi]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QiComponent {
    pub kind: QiComponentKind,
    pub p_lo: f64,
    pub p_hi: f64,
    pub q_lo: f64,
    pub q_hi: f64,
}

/// A 2x2 payoff game.
pub struct QiGame {
    matrix: PayoffMatrix2x2,
}

/// A normalized two-qubit state.
pub struct QiState {
    state: QuantumState,
}

/// The equilibrium set of a game and state.
pub struct QiEquilibria {
    set: NashEquilibriumSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_for(error: &Error) -> QiStatus {
    match error {
        Error::InvalidParameters(_) => QiStatus::InvalidParameters,
        Error::InvalidProfile(_) => QiStatus::InvalidProfile,
        Error::NotNormalized { .. } => QiStatus::NotNormalized,
        Error::InvalidState(_) | Error::InvalidProbabilityVector(_) => QiStatus::InvalidState,
        Error::TooManyConstraints { .. } | Error::InfeasibleProgram(_) => QiStatus::InfeasibleProgram,
        Error::ConfigParse(_) => QiStatus::ConfigParse,
    }
}

struct Failure(QiStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_for(&e), e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(QiStatus::NullPointer, format!("`{name}` is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> QiStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QiStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            QiStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(ptr: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| null(name))
}

unsafe fn in_ref<'a, T>(ptr: *const T, name: &str) -> Result<&'a T, Failure> {
    ptr.as_ref().ok_or_else(|| null(name))
}

unsafe fn in_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| Failure(QiStatus::InvalidUtf8, format!("`{name}`: {e}")))
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn player(p: QiPlayer) -> Player {
    match p {
        QiPlayer::Employer => Player::A,
        QiPlayer::Worker => Player::B,
    }
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qi_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds the inspection game from created wealth `v`, work cost `g`,
/// inspection cost `h` and wage `w`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qi_game_new_inspection(v: f64, g: f64, h: f64, w: f64, out: *mut *mut QiGame) -> QiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let params = InspectionParams::new(v, g, h, w)?;
        *out = Box::into_raw(Box::new(QiGame { matrix: game::build_inspection_matrix(&params) }));
        Ok(())
    })
}

/// Builds a game from eight payoffs `[A, B]` per outcome, in the order
/// IW, IS, NW, NS.
///
/// # Safety
/// `cells` must point to 8 doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qi_game_new_matrix(cells: *const f64, out: *mut *mut QiGame) -> QiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if cells.is_null() {
            return Err(null("cells"));
        }
        let flat = std::slice::from_raw_parts(cells, 8);
        let mut grid = [[0.0; 2]; 4];
        for (k, row) in grid.iter_mut().enumerate() {
            *row = [flat[2 * k], flat[2 * k + 1]];
        }
        *out = Box::into_raw(Box::new(QiGame { matrix: PayoffMatrix2x2::new(grid)? }));
        Ok(())
    })
}

/// # Safety
/// `game` must come from a `qi_game_new_*` call, or be null.
#[no_mangle]
pub unsafe extern "C" fn qi_game_free(game: *mut QiGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Builds a state from 8 doubles: `re, im` for IW, IS, NW, NS.
///
/// # Safety
/// `amplitudes` must point to 8 doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qi_state_new(amplitudes: *const f64, out: *mut *mut QiState) -> QiStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if amplitudes.is_null() {
            return Err(null("amplitudes"));
        }
        let flat = std::slice::from_raw_parts(amplitudes, 8);
        let mut pairs = [[0.0; 2]; 4];
        for (k, pair) in pairs.iter_mut().enumerate() {
            *pair = [flat[2 * k], flat[2 * k + 1]];
        }
        *out = Box::into_raw(Box::new(QiState { state: QuantumState::from_pairs(pairs)? }));
        Ok(())
    })
}

/// # Safety
/// `state` must come from `qi_state_new`, or be null.
#[no_mangle]
pub unsafe extern "C" fn qi_state_free(state: *mut QiState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Expected payoffs of both players at `(p, q)`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qi_quantum_payoff(
    game: *const QiGame,
    state: *const QiState,
    p: f64,
    q: f64,
    payoff_a: *mut f64,
    payoff_b: *mut f64,
) -> QiStatus {
    guard(|| {
        let game = in_ref(game, "game")?;
        let state = in_ref(state, "state")?;
        let out_a = out_ref(payoff_a, "payoff_a")?;
        let out_b = out_ref(payoff_b, "payoff_b")?;
        let (a, b) = quantum_payoffs(&game.matrix, &state.state, StrategyProfile::new(p, q)?);
        *out_a = a;
        *out_b = b;
        Ok(())
    })
}

/// Writes `alpha, beta, gamma, delta` of `alpha*p*q + beta*p + gamma*q + delta`
/// for one player into `out[0..4]`.
///
/// # Safety
/// `out` must point to space for 4 doubles; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qi_bilinear_coefficients(
    game: *const QiGame,
    state: *const QiState,
    who: QiPlayer,
    out: *mut f64,
) -> QiStatus {
    guard(|| {
        let game = in_ref(game, "game")?;
        let state = in_ref(state, "state")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = bilinear_coefficients(&game.matrix, &state.state, player(who));
        std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&[c.alpha, c.beta, c.gamma, c.delta]);
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qi_find_equilibria(
    game: *const QiGame,
    state: *const QiState,
    out: *mut *mut QiEquilibria,
) -> QiStatus {
    guard(|| {
        let game = in_ref(game, "game")?;
        let state = in_ref(state, "state")?;
        let out = out_ref(out, "out")?;
        let set = equilibria_for_state(&game.matrix, &state.state);
        *out = Box::into_raw(Box::new(QiEquilibria { set }));
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qi_equilibria_component_count(equilibria: *const QiEquilibria, count: *mut usize) -> QiStatus {
    guard(|| {
        let eq = in_ref(equilibria, "equilibria")?;
        *out_ref(count, "count")? = eq.set.components().len();
        Ok(())
    })
}

/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qi_equilibria_component(
    equilibria: *const QiEquilibria,
    index: usize,
    out: *mut QiComponent,
) -> QiStatus {
    guard(|| {
        let eq = in_ref(equilibria, "equilibria")?;
        let out = out_ref(out, "out")?;
        let components = eq.set.components();
        let component = components.get(index).ok_or_else(|| {
            Failure(QiStatus::OutOfRange, format!("index {index} out of range for {} components", components.len()))
        })?;
        *out = match component {
            NeComponent::Point(pt) => {
                QiComponent { kind: QiComponentKind::Point, p_lo: pt.p, p_hi: pt.p, q_lo: pt.q, q_hi: pt.q }
            }
            NeComponent::Segment(seg) => {
                let (from, to) = (seg.at(0.0), seg.at(1.0));
                QiComponent {
                    kind: QiComponentKind::Segment,
                    p_lo: from.p.min(to.p),
                    p_hi: from.p.max(to.p),
                    q_lo: from.q.min(to.q),
                    q_hi: from.q.max(to.q),
                }
            }
            NeComponent::FullSquare => {
                QiComponent { kind: QiComponentKind::FullSquare, p_lo: 0.0, p_hi: 1.0, q_lo: 0.0, q_hi: 1.0 }
            }
        };
        Ok(())
    })
}

/// # Safety
/// `equilibria` must come from `qi_find_equilibria`, or be null.
#[no_mangle]
pub unsafe extern "C" fn qi_equilibria_free(equilibria: *mut QiEquilibria) {
    if !equilibria.is_null() {
        drop(Box::from_raw(equilibria));
    }
}

/// Runs a JSON scenario and writes the JSON report to `*report`.
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `report` valid.
#[no_mangle]
pub unsafe extern "C" fn qi_run_scenario_json(
    config_json: *const c_char,
    tolerance: f64,
    report: *mut *mut c_char,
) -> QiStatus {
    guard(|| {
        let text = in_str(config_json, "config_json")?;
        let out = out_ref(report, "report")?;
        let config = ScenarioConfig::from_json(text)?;
        *out = into_c_string(run_scenario(&config, tolerance)?.to_json());
        Ok(())
    })
}

/// Runs the built-in reference battery. `samples == 0` keeps the default
/// sample count. `*all_pass` is set to whether every item passed.
///
/// # Safety
/// `report` and `all_pass` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qi_reproduce_json(
    seed: u64,
    samples: usize,
    tolerance: f64,
    report: *mut *mut c_char,
    all_pass: *mut bool,
) -> QiStatus {
    guard(|| {
        let out = out_ref(report, "report")?;
        let pass = out_ref(all_pass, "all_pass")?;
        let mut sampling = SamplingOptions { seed, ..SamplingOptions::default() };
        if samples > 0 {
            sampling.samples = samples;
        }
        let result = reproduce_reference(ReproduceOptions { sampling, tolerance, ..ReproduceOptions::default() });
        *pass = result.pass;
        *out = into_c_string(result.to_json());
        Ok(())
    })
}

/// # Safety
/// `text` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn qi_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
