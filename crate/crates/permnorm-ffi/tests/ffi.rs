//! Exercises the C entry points from Rust: ownership handoff, status codes,
//! and agreement with the CLI report builders.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use permnorm::cli;
use permnorm::fixtures;
use permnorm::pipeline::PipelineConfig;
use permnorm_ffi::*;

unsafe fn parse(text: &str) -> *mut PnGroup {
    let c = CString::new(text).unwrap();
    let mut group: *mut PnGroup = ptr::null_mut();
    assert_eq!(pn_group_parse(c.as_ptr(), &mut group), PnStatus::Ok);
    assert!(!group.is_null());
    group
}

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let text = CStr::from_ptr(p).to_str().unwrap().to_owned();
    pn_string_free(p);
    text
}

#[test]
fn parse_degree_order_roundtrip() {
    unsafe {
        let g = parse("4\n(1 2 3 4)\n");
        let mut degree = 0usize;
        assert_eq!(pn_group_degree(g, &mut degree), PnStatus::Ok);
        assert_eq!(degree, 4);

        let mut order: *mut c_char = ptr::null_mut();
        assert_eq!(pn_group_order(g, &mut order), PnStatus::Ok);
        assert_eq!(take_string(order), "4");

        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(pn_group_text(g, &mut text), PnStatus::Ok);
        let rendered = take_string(text);
        let h = parse(&rendered);
        let mut order2: *mut c_char = ptr::null_mut();
        assert_eq!(pn_group_order(h, &mut order2), PnStatus::Ok);
        assert_eq!(take_string(order2), "4");
        pn_group_free(h);
        pn_group_free(g);
    }
}

#[test]
fn status_codes_cover_failure_modes() {
    unsafe {
        let mut group: *mut PnGroup = ptr::null_mut();
        assert_eq!(
            pn_group_parse(ptr::null(), &mut group),
            PnStatus::NullArgument
        );
        let c = CString::new("3\n(1 2 3)\n").unwrap();
        assert_eq!(pn_group_parse(c.as_ptr(), ptr::null_mut()), PnStatus::NullArgument);

        let invalid = [0xffu8, 0x00];
        assert_eq!(
            pn_group_parse(invalid.as_ptr() as *const c_char, &mut group),
            PnStatus::InvalidUtf8
        );

        let junk = CString::new("not a degree\n").unwrap();
        assert_eq!(pn_group_parse(junk.as_ptr(), &mut group), PnStatus::ParseError);

        let unknown = CString::new("m13").unwrap();
        assert_eq!(
            pn_group_fixture(unknown.as_ptr(), &mut group),
            PnStatus::ParseError
        );

        // Limits propagate: enumerating Sym(6) under a cap of 10 must fail.
        let name = CString::new("sym-6").unwrap();
        assert_eq!(pn_group_fixture(name.as_ptr(), &mut group), PnStatus::Ok);
        let mut json: *mut c_char = ptr::null_mut();
        let mut limits = pn_limits_default();
        limits.enum_limit = 10;
        assert_eq!(
            pn_classify_json(group, limits, &mut json),
            PnStatus::ResourceLimit
        );
        pn_group_free(group);

        // Frees tolerate null.
        pn_group_free(ptr::null_mut());
        pn_string_free(ptr::null_mut());
    }
}

#[test]
fn classify_json_matches_cli_report() {
    unsafe {
        let name = CString::new("cyclic-7").unwrap();
        let mut group: *mut PnGroup = ptr::null_mut();
        assert_eq!(pn_group_fixture(name.as_ptr(), &mut group), PnStatus::Ok);

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            pn_classify_json(group, pn_limits_default(), &mut json),
            PnStatus::Ok
        );
        let got = take_string(json);
        pn_group_free(group);

        let h = fixtures::fixture("cyclic-7").unwrap();
        let value = cli::classify_report(&h, &PipelineConfig::default()).unwrap();
        let expected = format!("{}\n", serde_json::to_string_pretty(&value).unwrap());
        assert_eq!(got, expected);
    }
}

#[test]
fn normalizer_defaults_to_symmetric_ambient() {
    unsafe {
        let name = CString::new("dihedral-4").unwrap();
        let mut group: *mut PnGroup = ptr::null_mut();
        assert_eq!(pn_group_fixture(name.as_ptr(), &mut group), PnStatus::Ok);

        let mut json: *mut c_char = ptr::null_mut();
        assert_eq!(
            pn_normalizer_json(group, ptr::null(), pn_limits_default(), &mut json),
            PnStatus::Ok
        );
        let got = take_string(json);
        assert!(got.contains("\"normaliser_order\": \"8\""), "{got}");
        assert!(got.contains("\"ambient_order\": \"24\""), "{got}");

        // Explicit ambient equal to the group echoes the group.
        let mut json2: *mut c_char = ptr::null_mut();
        assert_eq!(
            pn_normalizer_json(group, group, pn_limits_default(), &mut json2),
            PnStatus::Ok
        );
        let got2 = take_string(json2);
        assert!(got2.contains("\"normaliser_order\": \"8\""), "{got2}");
        pn_group_free(group);
    }
}
