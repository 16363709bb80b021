use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use serde_json::Value;
use wavinv_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { wavinv_string_free(s) };
    out
}

fn construct(family: &str, n: u32) -> *mut WavinvFunction {
    let name = CString::new(family).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { wavinv_construct(name.as_ptr(), n, &mut f) },
        WavinvStatus::Ok
    );
    f
}

fn last_error() -> String {
    let p = wavinv_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn construct_verify_classify() {
    let f = construct("psi", 4);
    let mut overall = false;
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { wavinv_verify(f, &mut overall, &mut report) },
        WavinvStatus::Ok
    );
    assert!(overall);
    let report: Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(report["overall"], Value::Bool(true));

    let mut label = ptr::null_mut();
    assert_eq!(unsafe { wavinv_classify(f, &mut label) }, WavinvStatus::Ok);
    let label: Value = serde_json::from_str(&take_string(label)).unwrap();
    assert_eq!(label["class"], Value::String("M_2".into()));
    assert!(wavinv_last_error().is_null());
    unsafe { wavinv_free(f) };
}

#[test]
fn json_round_trip_through_handles() {
    let f = construct("w", 3);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { wavinv_to_json(f, &mut json) }, WavinvStatus::Ok);
    let text = take_string(json);
    let c = CString::new(text.clone()).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { wavinv_from_json(c.as_ptr(), &mut g) },
        WavinvStatus::Ok
    );
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { wavinv_to_json(g, &mut again) }, WavinvStatus::Ok);
    assert_eq!(take_string(again), text);

    let mut all_hold = false;
    assert_eq!(
        unsafe { wavinv_sncheck(g, 3, &mut all_hold, ptr::null_mut()) },
        WavinvStatus::Ok
    );
    assert!(all_hold);
    unsafe {
        wavinv_free(f);
        wavinv_free(g);
    }
}

#[test]
fn failures_map_to_status_codes() {
    let name = CString::new("psi").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { wavinv_construct(name.as_ptr(), 2, &mut f) },
        WavinvStatus::Domain
    );
    assert!(f.is_null());
    assert!(last_error().contains("n >= 3"));

    let bad = CString::new("{\"pieces\": 3}").unwrap();
    assert_eq!(
        unsafe { wavinv_from_json(bad.as_ptr(), &mut f) },
        WavinvStatus::Parse
    );

    let origin = CString::new(
        r#"{"pieces":[{"lo":{"pi_coeff":{"num":"-1","den":"1"}},"hi":{"pi_coeff":{"num":"1","den":"1"}},"value":{"a":{"num":"1","den":"1"},"b":{"num":"0","den":"1"}}}]}"#,
    )
    .unwrap();
    assert_eq!(
        unsafe { wavinv_from_json(origin.as_ptr(), &mut f) },
        WavinvStatus::Ok
    );
    let mut overall = true;
    assert_eq!(
        unsafe { wavinv_verify(f, &mut overall, ptr::null_mut()) },
        WavinvStatus::SupportTouchesOrigin
    );
    unsafe { wavinv_free(f) };

    assert_eq!(
        unsafe { wavinv_verify(ptr::null(), ptr::null_mut(), ptr::null_mut()) },
        WavinvStatus::NullPointer
    );
}

#[test]
fn non_wavelet_reports_and_refuses_classification() {
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { wavinv_construct_random(3, 4, 9, &mut f) },
        WavinvStatus::Ok
    );
    let mut json = ptr::null_mut();
    unsafe { wavinv_to_json(f, &mut json) };
    // halve every value: still a step function, no longer unit norm
    let mut doc: Value = serde_json::from_str(&take_string(json)).unwrap();
    for p in doc["pieces"].as_array_mut().unwrap() {
        for part in ["a", "b"] {
            let den = p["value"][part]["den"]
                .as_str()
                .unwrap()
                .parse::<i64>()
                .unwrap();
            p["value"][part]["den"] = Value::String((2 * den).to_string());
        }
    }
    let c = CString::new(doc.to_string()).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { wavinv_from_json(c.as_ptr(), &mut g) },
        WavinvStatus::Ok
    );
    let mut overall = true;
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { wavinv_verify(g, &mut overall, &mut report) },
        WavinvStatus::NotVerified
    );
    assert!(!overall);
    let report: Value = serde_json::from_str(&take_string(report)).unwrap();
    assert_eq!(report["norm_ok"], Value::Bool(false));

    let mut label = ptr::null_mut();
    assert_eq!(
        unsafe { wavinv_classify(g, &mut label) },
        WavinvStatus::NotVerified
    );
    assert!(label.is_null());
    unsafe {
        wavinv_free(f);
        wavinv_free(g);
    }
}

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps
    std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf()
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/wavinv.h"))
            .unwrap();
    for name in [
        "wavinv_construct(",
        "wavinv_construct_random(",
        "wavinv_from_json(",
        "wavinv_to_json(",
        "wavinv_verify(",
        "wavinv_classify(",
        "wavinv_hit_table(",
        "wavinv_sncheck(",
        "wavinv_last_error(",
        "wavinv_free(",
        "wavinv_string_free(",
        "typedef struct WavinvFunction WavinvFunction;",
        "WAVINV_STATUS_NOT_VERIFIED = 1",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libwavinv_ffi.a");
    let cc_available = Command::new("cc").arg("--version").output().is_ok();
    if !cc_available || !lib.exists() {
        eprintln!(
            "skipping: no C compiler or static library at {}",
            lib.display()
        );
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("wavinv_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke test failed to compile");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("M_1"));
}
