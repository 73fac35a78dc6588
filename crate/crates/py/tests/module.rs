use std::ffi::CString;

use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<R>(f: impl FnOnce(Python<'_>, &Bound<'_, PyDict>) -> R) -> R {
    static INIT: std::sync::Once = std::sync::Once::new();
    INIT.call_once(|| {
        pyo3::append_to_inittab!(ptnc);
        Python::initialize();
    });
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals.set_item("ptnc", py.import("ptnc").unwrap()).unwrap();
        f(py, &globals)
    })
}

use ptnc::ptnc;

fn eval_f64(src: &str) -> f64 {
    with_module(|py, g| {
        let code = CString::new(src).unwrap();
        py.eval(&code, Some(g), None).unwrap().extract::<f64>().unwrap()
    })
}

#[test]
fn noiseless_concurrence_is_p() {
    let c = eval_f64("ptnc.concurrence(ptnc.bs_output(ptnc.QubitState(0.37, 0.2+0.1j)))");
    assert!((c - 0.37).abs() < 1e-9);
}

#[test]
fn pt_params_round_trip() {
    with_module(|py, g| {
        let run = |s: &str| py.eval(&CString::new(s).unwrap(), Some(g), None).unwrap();
        let p = run("ptnc.PTParams(2.0, 3.141592653589793, 0.5)");
        assert_eq!(p.getattr("phase").unwrap().extract::<String>().unwrap(), "PTS");
        assert!((p.getattr("j").unwrap().extract::<f64>().unwrap() - 3.0).abs() < 1e-12);
        let (e1, _e2): (num_complex::Complex64, num_complex::Complex64) =
            p.call_method0("eigenvalues").unwrap().extract().unwrap();
        assert!((e1.re - (9.0f64 - 0.25).sqrt()).abs() < 1e-12);
        let err = py.eval(c"ptnc.PTParams(1.0, 0.0, -1.0)", Some(g), None);
        assert!(err.is_err());
    });
}

#[test]
fn channels_and_closed_form_agree() {
    let d = eval_f64(
        "abs(ptnc.concurrence(ptnc.apply_two_arm(ptnc.ChannelSpec.amplitude_damping(0.3), \
         ptnc.ChannelSpec.amplitude_damping(0.3), 1.5, 2.0, ptnc.bs_output(ptnc.QubitState(0.8, 0.1)))) \
         - ptnc.concurrence_analytic(ptnc.QubitState(0.8, 0.1), ptnc.ChannelSpec.amplitude_damping(0.3), \
         ptnc.ChannelSpec.amplitude_damping(0.3), 1.5, 2.0))",
    );
    assert!(d < 1e-9);
}

#[test]
fn experiments_are_listed_and_run() {
    with_module(|py, g| {
        let ids: Vec<String> = py
            .eval(c"ptnc.list_experiments()", Some(g), None)
            .unwrap()
            .extract()
            .unwrap();
        assert_eq!(ids.len(), 6);
        let csv: String = py
            .eval(c"ptnc.run_experiment('measures-vs-time')", Some(g), None)
            .unwrap()
            .extract()
            .unwrap();
        assert!(csv.starts_with("t,label,Q,C,N\n"));
        assert_eq!(csv.lines().count(), 1 + 2 * 501);
    });
}
