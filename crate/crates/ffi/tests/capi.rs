use std::ffi::{c_char, CStr, CString};
use std::ptr;

use beamsynth_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    unsafe {
        bs_last_error_message(buf.as_mut_ptr(), buf.len());
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn synth(method: &str, params: &BsSynthParams) -> (BsStatus, *mut BsExcitation) {
    let m = CString::new(method).unwrap();
    let mut h = ptr::null_mut();
    let st = unsafe { bs_synthesize(m.as_ptr(), params, &mut h) };
    (st, h)
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(bs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn chebyshev_round_trip_through_handles() {
    let params = bs_synth_params_default();
    let (st, exc) = synth("chebyshev", &params);
    assert_eq!(st, BsStatus::Ok);
    unsafe {
        let n = bs_excitation_len(exc);
        assert_eq!(n, 16);
        let mut a = vec![0.0; n];
        let mut p = vec![0.0; n];
        assert_eq!(bs_excitation_polar(exc, a.as_mut_ptr(), p.as_mut_ptr(), n), BsStatus::Ok);
        assert!((a.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for i in 0..n {
            assert_eq!(a[i], a[n - 1 - i]);
        }

        let mut pat = ptr::null_mut();
        assert_eq!(bs_pattern_compute(exc, 0.0, 180.0, 0.05, &mut pat), BsStatus::Ok);
        assert_eq!(bs_pattern_len(pat), 3601);
        let mut m = BsMetrics {
            peak_deg: 0.0,
            sll_db: 0.0,
            has_sll: false,
            hpbw_deg: 0.0,
        };
        assert_eq!(bs_pattern_metrics(pat, &mut m), BsStatus::Ok);
        assert!(m.has_sll);
        assert!((m.sll_db + 30.0).abs() < 0.5, "{m:?}");
        assert!((m.peak_deg - 90.0).abs() < 1e-9);

        let mut th = vec![0.0; 3601];
        let mut db = vec![0.0; 3601];
        assert_eq!(bs_pattern_values(pat, th.as_mut_ptr(), db.as_mut_ptr(), 3601), BsStatus::Ok);
        assert_eq!(db.iter().cloned().fold(f64::MIN, f64::max), 0.0);
        assert_eq!(
            bs_pattern_values(pat, th.as_mut_ptr(), db.as_mut_ptr(), 10),
            BsStatus::BufferTooSmall
        );
        bs_pattern_free(pat);
        bs_excitation_free(exc);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let params = bs_synth_params_default();
    let (st, h) = synth("nope", &params);
    assert_eq!(st, BsStatus::Argument);
    assert!(h.is_null());
    assert!(last_error().contains("unknown method"));

    let bad = BsSynthParams {
        n_elements: 1,
        ..params
    };
    assert_eq!(synth("fourier", &bad).0, BsStatus::Argument);

    let st = unsafe { bs_synthesize(ptr::null(), &params, &mut ptr::null_mut()) };
    assert_eq!(st, BsStatus::NullPointer);

    let m = CString::new("fourier").unwrap();
    let st = unsafe { bs_synthesize(m.as_ptr(), &params, ptr::null_mut()) };
    assert_eq!(st, BsStatus::NullPointer);

    // Success clears the previous error.
    let (st, h) = synth("taylor", &params);
    assert_eq!(st, BsStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe { bs_excitation_free(h) };
}

#[test]
fn error_message_truncates_and_reports_length() {
    let (st, _) = synth("definitely-not-a-method", &bs_synth_params_default());
    assert_eq!(st, BsStatus::Argument);
    let full = unsafe { bs_last_error_message(ptr::null_mut(), 0) };
    let mut buf = [0 as c_char; 8];
    let n = unsafe { bs_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert_eq!(n, full);
    let s = unsafe { CStr::from_ptr(buf.as_ptr()) };
    assert_eq!(s.to_bytes().len(), 7);
}

#[test]
fn polar_constructor_and_null_handles() {
    let a = [1.0; 4];
    let p = [0.0, 90.0, 180.0, -90.0];
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(bs_excitation_from_polar(4, 0.5, a.as_ptr(), p.as_ptr(), &mut h), BsStatus::Ok);
        assert_eq!(bs_excitation_len(h), 4);
        let mut a2 = [0.0; 4];
        let mut p2 = [0.0; 4];
        bs_excitation_polar(h, a2.as_mut_ptr(), p2.as_mut_ptr(), 4);
        for (x, y) in p2.iter().zip(&p) {
            assert!((x - y).abs() < 1e-9 || (x - y).abs() == 360.0);
        }
        bs_excitation_free(h);
        assert_eq!(bs_excitation_len(ptr::null()), 0);
        assert_eq!(bs_pattern_len(ptr::null()), 0);
        bs_excitation_free(ptr::null_mut());
        bs_pattern_free(ptr::null_mut());
        bs_mlp_free(ptr::null_mut());
        let neg = [-1.0; 4];
        assert_eq!(
            bs_excitation_from_polar(4, 0.5, neg.as_ptr(), p.as_ptr(), &mut h),
            BsStatus::Argument
        );
    }
}

#[test]
fn missing_model_file_is_an_io_error() {
    let path = CString::new("/nonexistent/model.json").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { bs_mlp_load(path.as_ptr(), &mut h) }, BsStatus::Io);
    assert!(h.is_null());
}

#[test]
fn model_prediction_through_handles() {
    use beamsynth::array::ArrayGeometry;
    use beamsynth::dataset::InputEncoding;
    use beamsynth::nn::{LayerSizes, Mlp, ModelFile};

    let dir = std::env::temp_dir().join(format!("bs-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("model.json");
    let mlp = Mlp::zeros(LayerSizes::REFERENCE, true);
    ModelFile::new(&mlp, &ArrayGeometry::reference(), &InputEncoding::reference())
        .save(&file)
        .unwrap();

    let path = CString::new(file.to_str().unwrap()).unwrap();
    let mut net = ptr::null_mut();
    unsafe {
        assert_eq!(bs_mlp_load(path.as_ptr(), &mut net), BsStatus::Ok);
        let mut exc = ptr::null_mut();
        assert_eq!(bs_mlp_predict(net, 90.0, &mut exc), BsStatus::Ok);
        assert_eq!(bs_excitation_len(exc), 16);
        bs_excitation_free(exc);
        assert_eq!(bs_mlp_predict(net, 20.0, &mut exc), BsStatus::OutOfDomain);
        bs_mlp_free(net);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/beamsynth.h");
    for name in [
        "BS_STATUS_OK",
        "typedef struct BsExcitation BsExcitation",
        "bs_synthesize",
        "bs_pattern_metrics",
        "bs_mlp_predict",
        "bs_last_error_message",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
