use std::ffi::{CStr, CString};
use std::ptr;

use quantum_inspection_ffi::*;

unsafe fn inspection_game() -> *mut QiGame {
    let mut game = ptr::null_mut();
    assert_eq!(qi_game_new_inspection(60.0, 15.0, 8.0, 20.0, &mut game), QiStatus::Ok);
    game
}

unsafe fn state(x: [f64; 8]) -> *mut QiState {
    let mut s = ptr::null_mut();
    assert_eq!(qi_state_new(x.as_ptr(), &mut s), QiStatus::Ok);
    s
}

unsafe fn last_error() -> String {
    let p = qi_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn bell_state_payoffs() {
    unsafe {
        let game = inspection_game();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = state([h, 0.0, 0.0, 0.0, 0.0, 0.0, h, 0.0]);
        let (mut a, mut b) = (0.0, 0.0);
        assert_eq!(qi_quantum_payoff(game, bell, 0.5, 0.5, &mut a, &mut b), QiStatus::Ok);
        assert!((a - 11.0).abs() < 1e-9 && (b - 7.5).abs() < 1e-9);
        qi_state_free(bell);
        qi_game_free(game);
    }
}

#[test]
fn classical_coefficients_and_equilibrium() {
    unsafe {
        let game = inspection_game();
        let iw = state([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let mut coef = [0.0; 4];
        assert_eq!(qi_bilinear_coefficients(game, iw, QiPlayer::Employer, coef.as_mut_ptr()), QiStatus::Ok);
        assert_eq!(coef, [-20.0, 12.0, 60.0, -20.0]);
        assert_eq!(qi_bilinear_coefficients(game, iw, QiPlayer::Worker, coef.as_mut_ptr()), QiStatus::Ok);
        assert_eq!(coef, [20.0, -20.0, -15.0, 20.0]);

        let mut eq = ptr::null_mut();
        assert_eq!(qi_find_equilibria(game, iw, &mut eq), QiStatus::Ok);
        let mut count = 0;
        assert_eq!(qi_equilibria_component_count(eq, &mut count), QiStatus::Ok);
        assert_eq!(count, 1);
        let mut c = QiComponent { kind: QiComponentKind::FullSquare, p_lo: 0.0, p_hi: 0.0, q_lo: 0.0, q_hi: 0.0 };
        assert_eq!(qi_equilibria_component(eq, 0, &mut c), QiStatus::Ok);
        assert_eq!(c.kind, QiComponentKind::Point);
        assert!((c.p_lo - 0.75).abs() < 1e-12 && (c.q_lo - 0.6).abs() < 1e-12);
        assert_eq!(qi_equilibria_component(eq, 1, &mut c), QiStatus::OutOfRange);
        qi_equilibria_free(eq);
        qi_state_free(iw);
        qi_game_free(game);
    }
}

#[test]
fn edge_segment_component() {
    unsafe {
        let game = inspection_game();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = state([0.0, 0.0, 0.0, 0.0, h, 0.0, h, 0.0]);
        let mut eq = ptr::null_mut();
        assert_eq!(qi_find_equilibria(game, s, &mut eq), QiStatus::Ok);
        let mut c = QiComponent { kind: QiComponentKind::Point, p_lo: 9.0, p_hi: 9.0, q_lo: 9.0, q_hi: 9.0 };
        assert_eq!(qi_equilibria_component(eq, 0, &mut c), QiStatus::Ok);
        assert_eq!(c.kind, QiComponentKind::Segment);
        assert_eq!((c.p_lo, c.p_hi, c.q_lo, c.q_hi), (0.0, 0.0, 0.0, 1.0));
        qi_equilibria_free(eq);
        qi_state_free(s);
        qi_game_free(game);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut game = ptr::null_mut();
        assert_eq!(qi_game_new_inspection(10.0, 15.0, 8.0, 20.0, &mut game), QiStatus::InvalidParameters);
        assert!(game.is_null());
        assert!(!last_error().is_empty());

        let mut s = ptr::null_mut();
        let bad = [1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(qi_state_new(bad.as_ptr(), &mut s), QiStatus::NotNormalized);
        assert_eq!(qi_state_new(ptr::null(), &mut s), QiStatus::NullPointer);
        assert!(last_error().contains("amplitudes"));

        let game = inspection_game();
        let iw = state([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let (mut a, mut b) = (0.0, 0.0);
        assert_eq!(qi_quantum_payoff(game, iw, 1.5, 0.5, &mut a, &mut b), QiStatus::InvalidProfile);
        assert_eq!(qi_quantum_payoff(ptr::null(), iw, 0.5, 0.5, &mut a, &mut b), QiStatus::NullPointer);

        let cells = [32.0, 5.0, -8.0, 0.0, 40.0, 5.0, -20.0, f64::NAN];
        let mut m = ptr::null_mut();
        assert_eq!(qi_game_new_matrix(cells.as_ptr(), &mut m), QiStatus::InvalidParameters);
        qi_state_free(iw);
        qi_game_free(game);
        qi_game_free(ptr::null_mut());
    }
}

#[test]
fn scenario_json_round_trip() {
    unsafe {
        let config = CString::new(
            r#"{"matrix": [[32,5],[-8,0],[40,5],[-20,20]],
                "state": [[1,0],[0,0],[0,0],[0,0]],
                "analysis": {"find_ne": true}}"#,
        )
        .unwrap();
        let mut report = ptr::null_mut();
        assert_eq!(qi_run_scenario_json(config.as_ptr(), 1e-9, &mut report), QiStatus::Ok);
        let text = CStr::from_ptr(report).to_str().unwrap().to_owned();
        qi_string_free(report);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["equilibria"]["equilibria"]["p"], serde_json::json!(0.75));

        let broken = CString::new("{\"state\": 3}").unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(qi_run_scenario_json(broken.as_ptr(), 1e-9, &mut none), QiStatus::ConfigParse);
        assert!(none.is_null());
    }
}

#[test]
fn reproduce_reports_item_results() {
    unsafe {
        let mut report = ptr::null_mut();
        let mut pass = true;
        assert_eq!(qi_reproduce_json(7, 2000, 1e-9, &mut report, &mut pass), QiStatus::Ok);
        let text = CStr::from_ptr(report).to_str().unwrap().to_owned();
        qi_string_free(report);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let items = value["items"].as_array().unwrap();
        let ok = |id: &str| items.iter().find(|i| i["id"] == id).unwrap()["pass"].as_bool().unwrap();
        assert!(ok("classical.payoffs"));
        assert!(ok("pareto.C1"));
        assert_eq!(pass, items.iter().all(|i| i["pass"] == true));
    }
}
