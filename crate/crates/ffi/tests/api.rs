use std::ffi::{c_char, CStr, CString};
use std::ptr;

use artin_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn graph(text: &str) -> *mut ArtinGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { artin_graph_parse(c(text).as_ptr(), &mut g) }, ArtinStatus::Ok);
    g
}

fn oracle(text: &str) -> *mut ArtinOracle {
    let g = graph(text);
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { artin_oracle_new(g, &mut o) }, ArtinStatus::Ok);
    unsafe { artin_graph_free(g) };
    o
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    artin_string_free(s);
    out
}

#[test]
fn parse_errors_set_last_error() {
    let mut g = ptr::null_mut();
    let st = unsafe { artin_graph_parse(c("a b; a b 1").as_ptr(), &mut g) };
    assert_eq!(st, ArtinStatus::Parse);
    assert!(g.is_null());
    let msg = unsafe { CStr::from_ptr(artin_last_error()) }.to_str().unwrap();
    assert!(msg.contains("below 2"), "{msg}");
    assert_eq!(unsafe { artin_graph_parse(ptr::null(), &mut g) }, ArtinStatus::NullPointer);
}

#[test]
fn classify_and_sphericity() {
    let g = graph("a b c; a b 3; b c 3; a c 3");
    let mut rank = 0;
    assert_eq!(unsafe { artin_graph_rank(g, &mut rank) }, ArtinStatus::Ok);
    assert_eq!(rank, 3);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { artin_graph_classify(g, &mut json) }, ArtinStatus::Ok);
    assert_eq!(unsafe { take(json) }, r#"{"case":"LargeTriangle","witness":["a","b","c"]}"#);
    let mut sph = false;
    assert_eq!(unsafe { artin_graph_is_spherical(g, c("a b").as_ptr(), &mut sph) }, ArtinStatus::Ok);
    assert!(sph);
    assert_eq!(unsafe { artin_graph_is_spherical(g, c("a b c").as_ptr(), &mut sph) }, ArtinStatus::Ok);
    assert!(!sph);
    assert_eq!(unsafe { artin_graph_is_spherical(g, c("a z").as_ptr(), &mut sph) }, ArtinStatus::Parse);
    unsafe { artin_graph_free(g) };
}

#[test]
fn word_problem_calls() {
    let o = oracle("a b; a b 3");
    let mut eq = ArtinEquality::NotEqual;
    assert_eq!(unsafe { artin_words_equal(o, c("a b a").as_ptr(), c("b a b").as_ptr(), &mut eq) }, ArtinStatus::Ok);
    assert_eq!(eq, ArtinEquality::Equal);
    assert_eq!(unsafe { artin_words_equal(o, c("a b").as_ptr(), c("b a").as_ptr(), &mut eq) }, ArtinStatus::Ok);
    assert_eq!(eq, ArtinEquality::NotEqual);
    let mut geo = true;
    assert_eq!(unsafe { artin_is_geodesic(o, c("a b a'").as_ptr(), &mut geo) }, ArtinStatus::Ok);
    assert!(geo);
    assert_eq!(unsafe { artin_is_geodesic(o, c("a b a b'").as_ptr(), &mut geo) }, ArtinStatus::Ok);
    assert!(!geo);
    let mut len = 0;
    assert_eq!(unsafe { artin_geodesic_length(o, c("a b a b'").as_ptr(), &mut len) }, ArtinStatus::Ok);
    assert_eq!(len, 2);
    assert_eq!(unsafe { artin_monoidal_length(o, c("a b a' b").as_ptr(), &mut len) }, ArtinStatus::Ok);
    assert_eq!(len, 3);
    assert_eq!(unsafe { artin_is_geodesic(o, c("a q").as_ptr(), &mut geo) }, ArtinStatus::Parse);
    unsafe { artin_oracle_free(o) };
}

#[test]
fn distance_with_witness() {
    let o = oracle("s t;");
    let mut d = 0;
    let mut w = ptr::null_mut();
    let st = unsafe { artin_m_distance(o, c("").as_ptr(), c("s t' s t'").as_ptr(), 3, 0, &mut d, &mut w) };
    assert_eq!(st, ArtinStatus::Ok);
    assert_eq!(d, 4);
    assert_eq!(unsafe { take(w) }, "[s][t'][s][t']");
    let st = unsafe { artin_m_distance(o, c("").as_ptr(), c("s").as_ptr(), 0, 0, &mut d, ptr::null_mut()) };
    assert_eq!(st, ArtinStatus::Precondition);
    unsafe { artin_oracle_free(o) };
}

#[test]
fn null_handles_are_rejected() {
    let mut rank = 0;
    assert_eq!(unsafe { artin_graph_rank(ptr::null(), &mut rank) }, ArtinStatus::NullPointer);
    unsafe {
        artin_graph_free(ptr::null_mut());
        artin_oracle_free(ptr::null_mut());
        artin_string_free(ptr::null_mut());
    }
}
