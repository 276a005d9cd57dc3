//! C interface to `artin-core`.
//!
//! Graphs and oracles are opaque handles created and freed by this library.
//! Words and graphs cross the boundary as NUL-terminated UTF-8 text in the
//! same syntax the command line accepts. Every function returns an
//! [`ArtinStatus`]; on failure [`artin_last_error`] describes the error on
//! the calling thread. Strings returned through out parameters are owned
//! by the caller and released with [`artin_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use artin_core::cayley::MetricContext;
use artin_core::presentation::{classify_theorem_case, is_spherical};
use artin_core::{DefiningGraph, Error, GroupOracle, SignedWord};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    /// A search limit was reached before an answer was found.
    Budget = 5,
    Panic = 6,
}

/// Outcome of [`artin_words_equal`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtinEquality {
    NotEqual = 0,
    Equal = 1,
    /// Not shown equal within the search limits.
    NotEqualUpToBound = 2,
}

/// A parsed defining graph.
pub struct ArtinGraph {
    graph: DefiningGraph,
}

/// A word-problem oracle for one graph, with its caches.
pub struct ArtinOracle {
    oracle: Arc<GroupOracle>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs were removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ArtinStatus {
    match e {
        Error::Budget(_) => ArtinStatus::Budget,
        Error::Precondition(_) | Error::NotSpherical(_) | Error::SubsetNotInGraph | Error::NotFreelyReduced => {
            ArtinStatus::Precondition
        }
        _ => ArtinStatus::Parse,
    }
}

struct Fail(ArtinStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ArtinStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ArtinStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            ArtinStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(ArtinStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(ArtinStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(ArtinStatus::NullPointer, "null output pointer".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(ArtinStatus::NullPointer, "null handle".into()))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs were removed").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn artin_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn artin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a defining graph such as `"a b c; a b 3; b c 3"`.
///
/// # Safety
/// `text_ptr` must be a NUL-terminated string and `out_graph` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_graph_parse(text_ptr: *const c_char, out_graph: *mut *mut ArtinGraph) -> ArtinStatus {
    guard(|| {
        let slot = out(out_graph)?;
        *slot = ptr::null_mut();
        let graph = DefiningGraph::parse(text(text_ptr)?)?;
        *slot = Box::into_raw(Box::new(ArtinGraph { graph }));
        Ok(())
    })
}

/// Frees a graph. NULL is ignored.
///
/// # Safety
/// `graph` must come from [`artin_graph_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn artin_graph_free(graph: *mut ArtinGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of generators.
///
/// # Safety
/// `graph` must be a live handle and `out_rank` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_graph_rank(graph: *const ArtinGraph, out_rank: *mut usize) -> ArtinStatus {
    guard(|| {
        *out(out_rank)? = handle(graph)?.graph.rank();
        Ok(())
    })
}

/// Writes the covering case of the main theorem as JSON, e.g.
/// `{"case":"LargeTriangle","witness":["a","b","c"]}`.
///
/// # Safety
/// `graph` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_graph_classify(graph: *const ArtinGraph, out_json: *mut *mut c_char) -> ArtinStatus {
    guard(|| {
        let slot = out(out_json)?;
        let g = &handle(graph)?.graph;
        let case = classify_theorem_case(g);
        let witness: Vec<&str> = case.witness.iter().map(|&x| g.name(x)).collect();
        let json = serde_json::json!({ "case": format!("{:?}", case.case), "witness": witness });
        *slot = c_string(json.to_string());
        Ok(())
    })
}

/// Whether the special subgroup on the space-separated generator names is
/// of spherical type. An empty string names the trivial subgroup.
///
/// # Safety
/// `graph` must be a live handle, `names` a NUL-terminated string and
/// `out_spherical` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_graph_is_spherical(
    graph: *const ArtinGraph,
    names: *const c_char,
    out_spherical: *mut bool,
) -> ArtinStatus {
    guard(|| {
        let slot = out(out_spherical)?;
        let g = &handle(graph)?.graph;
        let list: Vec<&str> = text(names)?.split_whitespace().collect();
        *slot = is_spherical(g, g.subset_from_names(&list)?)?;
        Ok(())
    })
}

/// Creates an oracle with default search limits. The graph may be freed
/// afterwards.
///
/// # Safety
/// `graph` must be a live handle and `out_oracle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_oracle_new(graph: *const ArtinGraph, out_oracle: *mut *mut ArtinOracle) -> ArtinStatus {
    guard(|| {
        let slot = out(out_oracle)?;
        *slot = ptr::null_mut();
        let g = handle(graph)?.graph.clone();
        let oracle = Arc::new(GroupOracle::from_graph(g));
        *slot = Box::into_raw(Box::new(ArtinOracle { oracle }));
        Ok(())
    })
}

/// Frees an oracle. NULL is ignored.
///
/// # Safety
/// `oracle` must come from [`artin_oracle_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn artin_oracle_free(oracle: *mut ArtinOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}

unsafe fn word(o: &ArtinOracle, p: *const c_char) -> Result<SignedWord, Fail> {
    Ok(SignedWord::parse(o.oracle.graph(), text(p)?)?)
}

/// Decides whether two words spell the same element.
///
/// # Safety
/// `oracle` must be a live handle, `u` and `v` NUL-terminated strings and
/// `out_result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_words_equal(
    oracle: *const ArtinOracle,
    u: *const c_char,
    v: *const c_char,
    out_result: *mut ArtinEquality,
) -> ArtinStatus {
    guard(|| {
        let slot = out(out_result)?;
        let o = handle(oracle)?;
        let verdict = o.oracle.equal(&word(o, u)?, &word(o, v)?);
        *slot = match (verdict.equal, verdict.exact) {
            (Some(true), _) => ArtinEquality::Equal,
            (Some(false), true) => ArtinEquality::NotEqual,
            (Some(false), false) => ArtinEquality::NotEqualUpToBound,
            (None, _) => {
                return Err(Fail(ArtinStatus::Budget, verdict.reason.unwrap_or_else(|| "search stopped".into())))
            }
        };
        Ok(())
    })
}

/// Whether the word is geodesic over the standard generators.
///
/// # Safety
/// `oracle` must be a live handle, `w` a NUL-terminated string and
/// `out_geodesic` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_is_geodesic(
    oracle: *const ArtinOracle,
    w: *const c_char,
    out_geodesic: *mut bool,
) -> ArtinStatus {
    guard(|| {
        let slot = out(out_geodesic)?;
        let o = handle(oracle)?;
        *slot = o.oracle.geodesic(&word(o, w)?)?;
        Ok(())
    })
}

/// Length of a geodesic word for the element.
///
/// # Safety
/// `oracle` must be a live handle, `w` a NUL-terminated string and
/// `out_len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_geodesic_length(
    oracle: *const ArtinOracle,
    w: *const c_char,
    out_len: *mut usize,
) -> ArtinStatus {
    guard(|| {
        let slot = out(out_len)?;
        let o = handle(oracle)?;
        *slot = o.oracle.geodesic_length(&word(o, w)?)?;
        Ok(())
    })
}

/// Number of maximal same-sign blocks of the word as written.
///
/// # Safety
/// `oracle` must be a live handle, `w` a NUL-terminated string and
/// `out_len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn artin_monoidal_length(
    oracle: *const ArtinOracle,
    w: *const c_char,
    out_len: *mut usize,
) -> ArtinStatus {
    guard(|| {
        let slot = out(out_len)?;
        let o = handle(oracle)?;
        *slot = word(o, w)?.monoidal_length();
        Ok(())
    })
}

/// Distance from `g` to `h` in the Cayley graph whose generators are the
/// positive elements of word length at most `factor_bound`, searched up to
/// `cap` (0 for no cap). `out_witness`, if not NULL, receives a shortest
/// factorization such as `"[a b][c' a']"`. Returns `Budget` when the
/// distance was not settled.
///
/// # Safety
/// `oracle` must be a live handle, `g` and `h` NUL-terminated strings,
/// `out_distance` a valid pointer and `out_witness` NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn artin_m_distance(
    oracle: *const ArtinOracle,
    g: *const c_char,
    h: *const c_char,
    factor_bound: usize,
    cap: u32,
    out_distance: *mut u32,
    out_witness: *mut *mut c_char,
) -> ArtinStatus {
    guard(|| {
        let slot = out(out_distance)?;
        if !out_witness.is_null() {
            *out_witness = ptr::null_mut();
        }
        let o = handle(oracle)?;
        let ctx = MetricContext::new(o.oracle.clone(), factor_bound)?;
        let r = ctx.m_distance(&word(o, g)?, &word(o, h)?, (cap > 0).then_some(cap))?;
        let Some(d) = r.distance else {
            let mut msg = format!("distance not settled: at least {}", r.lower);
            if let Some(u) = r.upper {
                msg.push_str(&format!(", at most {u}"));
            }
            return Err(Fail(ArtinStatus::Budget, msg));
        };
        *slot = d;
        if !out_witness.is_null() {
            *out_witness = c_string(r.witness.unwrap_or_default());
        }
        Ok(())
    })
}
