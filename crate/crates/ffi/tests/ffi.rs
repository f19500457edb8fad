use std::ffi::{c_char, CStr};
use std::ptr;

use lambflux::bath::SpectralKind;
use lambflux::experiments::{self, SweepConfig};
use lambflux::model::SystemParams;
use lambflux_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lf_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

struct Model(*mut LfModel);

impl Model {
    fn fig3() -> Self {
        let mut m = ptr::null_mut();
        let s = unsafe {
            lf_model_new(
                3.0,
                2.0,
                0.5,
                LF_SPECTRAL_DRUDE,
                0.01,
                0.01,
                50.0,
                1.0,
                &mut m,
            )
        };
        assert_eq!(s, LfStatus::Ok, "{}", last_error());
        assert!(!m.is_null());
        Model(m)
    }
}

impl Drop for Model {
    fn drop(&mut self) {
        unsafe { lf_model_free(self.0) }
    }
}

#[test]
fn spectrum_matches_closed_form() {
    let m = Model::fig3();
    let mut s = LfSpectrum::default();
    assert_eq!(unsafe { lf_model_spectrum(m.0, &mut s) }, LfStatus::Ok);
    let beta = (2.5f64.powi(2) + 0.25).sqrt();
    let alpha = (0.5f64.powi(2) + 0.25).sqrt();
    assert!((s.beta - beta).abs() < 1e-14);
    assert!((s.alpha - alpha).abs() < 1e-14);
    assert!((s.omega1 - (beta - alpha)).abs() < 1e-14);
    assert!((s.omega2 - (beta + alpha)).abs() < 1e-14);
    assert_eq!(s.eigenvalues, [-s.beta, s.beta, s.alpha, -s.alpha]);
}

#[test]
fn invalid_model_reports_domain() {
    let mut m = ptr::null_mut();
    // epsilon1 must exceed epsilon2
    let s = unsafe {
        lf_model_new(
            2.0,
            3.0,
            0.5,
            LF_SPECTRAL_DRUDE,
            0.01,
            0.01,
            50.0,
            1.0,
            &mut m,
        )
    };
    assert_eq!(s, LfStatus::Domain);
    assert!(m.is_null());
    assert!(!last_error().is_empty());
    let s = unsafe { lf_model_new(3.0, 2.0, 0.5, 7, 0.01, 0.01, 50.0, 1.0, &mut m) };
    assert_eq!(s, LfStatus::InvalidArgument);
    assert!(last_error().contains("spectral kind"));
    let s = unsafe { lf_model_new(3.0, 2.0, 0.5, 0, 0.01, 0.01, 50.0, 1.0, ptr::null_mut()) };
    assert_eq!(s, LfStatus::NullPointer);
}

#[test]
fn null_handles_are_rejected() {
    let mut s = LfSpectrum::default();
    assert_eq!(
        unsafe { lf_model_spectrum(ptr::null(), &mut s) },
        LfStatus::NullPointer
    );
    let m = Model::fig3();
    assert_eq!(
        unsafe { lf_model_spectrum(m.0, ptr::null_mut()) },
        LfStatus::NullPointer
    );
    assert_eq!(
        unsafe { lf_model_steady_state(m.0, 1.0, ptr::null_mut()) },
        LfStatus::NullPointer
    );
    unsafe { lf_model_free(ptr::null_mut()) };
}

#[test]
fn success_clears_error() {
    let mut n = 0.0;
    assert_eq!(
        unsafe { lf_bose_occupation(1.0, -1.0, &mut n) },
        LfStatus::Domain
    );
    assert!(!last_error().is_empty());
    assert_eq!(
        unsafe { lf_bose_occupation(2f64.ln(), 1.0, &mut n) },
        LfStatus::Ok
    );
    assert!((n - 1.0).abs() < 1e-14);
    assert!(last_error().is_empty());
}

#[test]
fn gamma_rates_obey_detailed_balance() {
    let (w, t) = (1.3, 0.7);
    for kind in [LF_SPECTRAL_DRUDE, LF_SPECTRAL_HARD, LF_SPECTRAL_GAUSSIAN] {
        let (mut up, mut down) = (0.0, 0.0);
        assert_eq!(
            unsafe { lf_gamma_rate(kind, 0.01, 50.0, t, w, 1, &mut up) },
            LfStatus::Ok
        );
        assert_eq!(
            unsafe { lf_gamma_rate(kind, 0.01, 50.0, t, w, -1, &mut down) },
            LfStatus::Ok
        );
        assert!((down - (-w / t).exp() * up).abs() <= 1e-14 * up);
    }
    let mut x = 0.0;
    assert_eq!(
        unsafe { lf_gamma_rate(0, 0.01, 50.0, t, w, 0, &mut x) },
        LfStatus::InvalidArgument
    );
}

#[test]
fn lamb_shift_and_current_agree_with_library() {
    let m = Model::fig3();
    let cfg = SweepConfig::new(
        SystemParams::new(3.0, 2.0, 0.5).unwrap(),
        SpectralKind::Drude,
        0.01,
        50.0,
    );
    let row = experiments::evaluate_point(&cfg, 50.0, false).unwrap();

    let mut l = LfLambShift::default();
    assert_eq!(
        unsafe { lf_model_lamb_shift(m.0, 50.0, &mut l) },
        LfStatus::Ok
    );
    assert_eq!(l.increments, [row.delta1, row.delta2]);
    assert_eq!(l.margins, [row.margin1, row.margin2]);
    assert!((l.increments[0] - (l.level_shifts[1] - l.level_shifts[2])).abs() < 1e-14);
    assert_eq!([l.r[2], l.r[3]], [row.r21, row.r22]);

    let mut c = LfHeatCurrent::default();
    assert_eq!(
        unsafe { lf_model_heat_current(m.0, 50.0, &mut c) },
        LfStatus::Ok
    );
    assert_eq!(c.with_lamb, row.jdelta);
    assert_eq!(c.no_lamb, row.j0);
    assert_eq!(c.supremum, row.supremum);
    // bath 2 is hotter, so energy flows from the system into bath 1
    assert!(c.no_lamb < 0.0 && c.no_lamb.abs() < c.supremum);

    let mut p = [0.0; 4];
    assert_eq!(
        unsafe { lf_model_steady_state(m.0, 50.0, p.as_mut_ptr()) },
        LfStatus::Ok
    );
    assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    assert!(p.iter().all(|&x| x > 0.0));
}

#[test]
fn sweep_csv_buffer_protocol() {
    let m = Model::fig3();
    let mut needed = 0usize;
    let s = unsafe { lf_sweep_csv(m.0, 1.0, 100.0, 5, 1, 1, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(s, LfStatus::BufferTooSmall);
    assert!(needed > 1);

    let mut buf = vec![0 as c_char; needed];
    let mut written = 0usize;
    let s = unsafe {
        lf_sweep_csv(
            m.0,
            1.0,
            100.0,
            5,
            1,
            1,
            buf.as_mut_ptr(),
            buf.len(),
            &mut written,
        )
    };
    assert_eq!(s, LfStatus::Ok, "{}", last_error());
    assert_eq!(written, needed);
    let text = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
    assert_eq!(text.len() + 1, needed);

    let mut cfg = SweepConfig::new(
        SystemParams::new(3.0, 2.0, 0.5).unwrap(),
        SpectralKind::Drude,
        0.01,
        50.0,
    );
    cfg.grid = experiments::Grid {
        min: 1.0,
        max: 100.0,
        count: 5,
        spacing: experiments::Spacing::Log,
    };
    let expected = experiments::csv_string(&experiments::sweep(&cfg).unwrap()).unwrap();
    assert_eq!(text, expected);
    assert!(text.contains(experiments::SCHEMA));

    let s = unsafe {
        lf_sweep_csv(
            m.0,
            -1.0,
            100.0,
            5,
            0,
            1,
            buf.as_mut_ptr(),
            buf.len(),
            &mut written,
        )
    };
    assert_eq!(s, LfStatus::Domain);
    assert!(!last_error().is_empty());
}

#[test]
fn status_names_and_version() {
    let name = |s: i32| {
        unsafe { CStr::from_ptr(lf_status_name(s)) }
            .to_str()
            .unwrap()
            .to_owned()
    };
    assert_eq!(name(LfStatus::Ok as i32), "OK");
    assert_eq!(name(LfStatus::BufferTooSmall as i32), "BUFFER_TOO_SMALL");
    assert_eq!(name(LfStatus::CotPole as i32), "COT_POLE");
    assert_eq!(name(99), "UNKNOWN");
    let v = unsafe { CStr::from_ptr(lf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
