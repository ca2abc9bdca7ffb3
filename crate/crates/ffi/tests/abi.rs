use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use mapverba_ffi::*;

fn fixture(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.geojson"));
    CString::new(std::fs::read(path).expect("fixture exists")).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mv_last_error()) }
        .to_string_lossy()
        .into_owned()
}

/// Takes ownership of a library string.
fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { mv_string_free(s) };
    out
}

fn parse(json: &CString) -> *mut MvMap {
    let mut map = ptr::null_mut();
    assert_eq!(
        unsafe { mv_map_parse(json.as_ptr(), &mut map) },
        MvStatus::Ok,
        "{}",
        last_error()
    );
    map
}

#[test]
fn compile_then_evaluate_round_trip() {
    let map = parse(&fixture("four_rooms"));
    let mut count = 0;
    assert_eq!(unsafe { mv_map_feature_count(map, &mut count) }, MvStatus::Ok);
    assert_eq!(count, 4);

    for kind in ["audio-description", "mud-map", "alt-grid"] {
        let kind = CString::new(kind).unwrap();
        let (mut text, mut manifest) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            unsafe { mv_compile(map, kind.as_ptr(), &mut text, &mut manifest) },
            MvStatus::Ok
        );
        assert!(take(text).contains("Red"));
        let manifest = CString::new(take(manifest)).unwrap();

        let (mut report, mut all_pass) = (ptr::null_mut(), -1);
        let md = CString::new("md").unwrap();
        let status = unsafe { mv_evaluate(map, manifest.as_ptr(), md.as_ptr(), &mut report, &mut all_pass) };
        assert_eq!(status, MvStatus::Ok, "{}", last_error());
        assert_eq!(all_pass, 1);
        assert!(take(report).contains("Purpose: 100.00%; Equivalency: 100.00%"));
    }
    unsafe { mv_map_free(map) };
}

#[test]
fn legacy_manifest_reports_failures_without_an_error() {
    let map = parse(&fixture("pnw"));
    let kind = CString::new("table").unwrap();
    let (mut text, mut manifest) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(
        unsafe { mv_compile(map, kind.as_ptr(), &mut text, &mut manifest) },
        MvStatus::Ok
    );
    take(text);
    let manifest = CString::new(take(manifest)).unwrap();
    let json = CString::new("json-like").unwrap();
    let (mut report, mut all_pass) = (ptr::null_mut(), -1);
    assert_eq!(
        unsafe { mv_evaluate(map, manifest.as_ptr(), json.as_ptr(), &mut report, &mut all_pass) },
        MvStatus::Ok
    );
    assert_eq!(all_pass, 0);
    let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(v["purpose"]["pct"], "33.00%");
    unsafe { mv_map_free(map) };
}

#[test]
fn error_codes() {
    let mut map = ptr::null_mut();
    assert_eq!(unsafe { mv_map_parse(ptr::null(), &mut map) }, MvStatus::Null);
    assert!(map.is_null());
    assert_eq!(last_error(), "json is null");

    let garbage = CString::new("{not json").unwrap();
    assert_eq!(unsafe { mv_map_parse(garbage.as_ptr(), &mut map) }, MvStatus::Parse);
    assert!(last_error().contains("syntax error"));

    let latin1 = CString::new(vec![b'{', 0xe9, b'}']).unwrap();
    assert_eq!(unsafe { mv_map_parse(latin1.as_ptr(), &mut map) }, MvStatus::Utf8);

    let mut count = 0;
    assert_eq!(unsafe { mv_map_feature_count(ptr::null(), &mut count) }, MvStatus::Null);

    let map = parse(&fixture("four_rooms"));
    assert_eq!(last_error(), "", "success clears the message");
    let (mut text, mut manifest) = (ptr::null_mut(), ptr::null_mut());
    let unknown = CString::new("hieroglyphs").unwrap();
    assert_eq!(
        unsafe { mv_compile(map, unknown.as_ptr(), &mut text, &mut manifest) },
        MvStatus::Parse
    );
    assert!(text.is_null() && manifest.is_null());

    let tbt = CString::new("turn-by-turn").unwrap();
    assert_eq!(
        unsafe { mv_compile(map, tbt.as_ptr(), &mut text, &mut manifest) },
        MvStatus::Precondition
    );
    assert!(last_error().contains("route"));

    let stranger = CString::new(
        r#"{"schema_version":1,"kind":"external","title":"x","features":[{"id":"ghost","claims":{"name":"Ghost"}}]}"#,
    )
    .unwrap();
    let md = CString::new("md").unwrap();
    let mut report = ptr::null_mut();
    let status = unsafe { mv_evaluate(map, stranger.as_ptr(), md.as_ptr(), &mut report, ptr::null_mut()) };
    assert_eq!(status, MvStatus::UnknownId, "{}", last_error());
    assert!(last_error().contains("ghost"));
    assert!(report.is_null());
    unsafe { mv_map_free(map) };
}

#[test]
fn invalid_maps_parse_but_fail_validation() {
    let json = CString::new(
        r#"{"type":"FeatureCollection","features":[{"type":"Feature","id":"a","properties":{"name":" "},"geometry":{"type":"Point","coordinates":[0,0]}}]}"#,
    )
    .unwrap();
    let map = parse(&json);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mv_map_validate_json(map, &mut out) }, MvStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v[0]["code"], "missing-name");
    assert_eq!(v[0]["path"], "features[0].name");

    assert_eq!(unsafe { mv_export_bundle(map, &mut out) }, MvStatus::Validation);
    assert!(out.is_null());
    unsafe { mv_map_free(map) };
}

#[test]
fn bundle_and_version() {
    let map = parse(&fixture("four_rooms"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mv_export_bundle(map, &mut out) }, MvStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["mud"]["rooms"].as_array().unwrap().len(), 5);
    unsafe { mv_map_free(map) };

    let version = unsafe { CStr::from_ptr(mv_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
    unsafe {
        mv_map_free(ptr::null_mut());
        mv_string_free(ptr::null_mut());
    }
}

#[test]
fn last_error_is_per_thread() {
    let mut map = ptr::null_mut();
    assert_eq!(unsafe { mv_map_parse(ptr::null(), &mut map) }, MvStatus::Null);
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert_eq!(last_error(), "json is null");
}
