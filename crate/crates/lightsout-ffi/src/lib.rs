//! C ABI for the lightsout library.
//!
//! Conventions:
//! - Every handle (`LoGraph`, `LoCatalog`, `LoSampler`) is opaque, created by
//!   a constructor that writes through an out-pointer, and released by the
//!   matching `_free` function (which tolerates null).
//! - Every fallible function returns an [`LoStatus`]; results travel through
//!   out-pointers that are written only on `LO_STATUS_OK`.
//! - Vertex sets cross the boundary as `u64` bitmasks (bit `v` = vertex `v`),
//!   matching the library's 64-vertex capacity.
//! - String outputs take a caller buffer plus capacity; the required size
//!   (including the NUL terminator) is always reported through `written`.
//!
//! The companion header `include/lightsout.h` is generated from this file by
//! cbindgen at build time.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use num_traits::ToPrimitive;

use lightsout::census::Catalog;
use lightsout::error::Error;
use lightsout::format;
use lightsout::graph::{Graph, VertexSet};
use lightsout::montecarlo::{run_experiment, trial_rng, ExperimentConfig};
use lightsout::sampler::WormaldSampler;
use lightsout::solver;

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoStatus {
    /// The call succeeded and all out-parameters are filled in.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A graph description could not be parsed.
    ParseError = 3,
    /// An argument was outside the supported range.
    RangeError = 4,
    /// A graph exceeded the 64-vertex capacity.
    CapacityExceeded = 5,
    /// The requested configuration has no solution for this graph.
    Unsolvable = 6,
    /// The provided buffer is too small; `written` holds the required size.
    BufferTooSmall = 7,
    /// An internal invariant failed (panic or numeric breakdown).
    InternalError = 8,
}

fn status_of(err: &Error) -> LoStatus {
    match err {
        Error::Capacity { .. } => LoStatus::CapacityExceeded,
        Error::Parse(_) => LoStatus::ParseError,
        Error::Range { .. } | Error::Dimension(_) => LoStatus::RangeError,
        Error::NoRoot { .. } => LoStatus::InternalError,
    }
}

/// Uniform wrapper: run the body, convert panics into `InternalError`
/// instead of unwinding across the C boundary.
fn guarded(body: impl FnOnce() -> LoStatus) -> LoStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(LoStatus::InternalError)
}

macro_rules! require {
    ($ptr:expr) => {
        if $ptr.is_null() {
            return LoStatus::NullPointer;
        }
    };
}

/// Copy `text` into a caller buffer, NUL-terminated. `written` always
/// receives the required buffer size in bytes, including the terminator.
unsafe fn write_string(
    text: &str,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> LoStatus {
    require!(written);
    let needed = text.len() + 1;
    *written = needed;
    if cap < needed {
        return LoStatus::BufferTooSmall;
    }
    require!(buf);
    let bytes = text.as_bytes();
    std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
    *buf.add(bytes.len()) = 0;
    LoStatus::Ok
}

/// An undirected graph handle.
pub struct LoGraph {
    inner: Graph,
}

/// A census/probability engine with internal memoization; reuse one handle
/// across calls to amortize enumeration work.
pub struct LoCatalog {
    inner: Catalog,
}

/// A uniform sampler over isomorphism classes with fixed vertex and edge
/// counts.
pub struct LoSampler {
    inner: WormaldSampler,
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static human-readable name for a status code.
#[no_mangle]
pub extern "C" fn lo_status_name(status: LoStatus) -> *const c_char {
    let name: &'static str = match status {
        LoStatus::Ok => "ok\0",
        LoStatus::NullPointer => "null pointer\0",
        LoStatus::InvalidUtf8 => "invalid utf-8\0",
        LoStatus::ParseError => "parse error\0",
        LoStatus::RangeError => "argument out of range\0",
        LoStatus::CapacityExceeded => "graph capacity exceeded\0",
        LoStatus::Unsolvable => "configuration unsolvable\0",
        LoStatus::BufferTooSmall => "buffer too small\0",
        LoStatus::InternalError => "internal error\0",
    };
    name.as_ptr().cast()
}

/// Parse a graph from either graph6 (`"DQc"`) or an edge list
/// (`"n=5; 0-1,1-2"`). On success `*out` owns a new graph handle.
///
/// # Safety
/// `text` must point to a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_parse(
    text: *const c_char,
    out: *mut *mut LoGraph,
) -> LoStatus {
    guarded(|| {
        require!(text);
        require!(out);
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return LoStatus::InvalidUtf8;
        };
        match format::parse_graph(text) {
            Ok(inner) => {
                *out = boxed(LoGraph { inner });
                LoStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Build a graph on `n` vertices from `pair_count` edges given as a flat
/// array `[u0, v0, u1, v1, ...]` of `2 * pair_count` vertex indices.
/// `endpoints` may be null when `pair_count` is zero.
///
/// # Safety
/// `endpoints` must point to `2 * pair_count` readable entries.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_from_edges(
    n: usize,
    endpoints: *const usize,
    pair_count: usize,
    out: *mut *mut LoGraph,
) -> LoStatus {
    guarded(|| {
        require!(out);
        let edges: Vec<(usize, usize)> = if pair_count == 0 {
            Vec::new()
        } else {
            require!(endpoints);
            slice::from_raw_parts(endpoints, 2 * pair_count)
                .chunks_exact(2)
                .map(|uv| (uv[0], uv[1]))
                .collect()
        };
        match Graph::from_edges(n, &edges) {
            Ok(inner) => {
                *out = boxed(LoGraph { inner });
                LoStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Copy a graph handle.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_clone(
    g: *const LoGraph,
    out: *mut *mut LoGraph,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(out);
        *out = boxed(LoGraph {
            inner: (*g).inner.clone(),
        });
        LoStatus::Ok
    })
}

/// Release a graph handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_free(g: *mut LoGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices.
///
/// # Safety
/// `g` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_vertex_count(
    g: *const LoGraph,
    out: *mut usize,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(out);
        *out = (*g).inner.n();
        LoStatus::Ok
    })
}

/// Number of edges.
///
/// # Safety
/// `g` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_edge_count(
    g: *const LoGraph,
    out: *mut usize,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(out);
        *out = (*g).inner.edge_count();
        LoStatus::Ok
    })
}

/// Whether vertices `u` and `v` are adjacent.
///
/// # Safety
/// `g` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_has_edge(
    g: *const LoGraph,
    u: usize,
    v: usize,
    out: *mut bool,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(out);
        let graph = &(*g).inner;
        if u >= graph.n() || v >= graph.n() {
            return LoStatus::RangeError;
        }
        *out = graph.has_edge(u, v);
        LoStatus::Ok
    })
}

/// Complement graph as a new handle.
///
/// # Safety
/// `g` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_complement(
    g: *const LoGraph,
    out: *mut *mut LoGraph,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(out);
        *out = boxed(LoGraph {
            inner: (*g).inner.complement(),
        });
        LoStatus::Ok
    })
}

/// Excess degree: (number of isolated vertices) + 2·(edges) − (vertices).
///
/// # Safety
/// `g` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_excess_degree(
    g: *const LoGraph,
    out: *mut usize,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(out);
        *out = (*g).inner.excess_degree();
        LoStatus::Ok
    })
}

/// Render the graph in graph6 format into a caller buffer.
/// `written` always receives the required size including the terminator;
/// when `cap` is too small nothing is written and the call returns
/// `LO_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `g` and `written` must be valid; `buf` must have `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_to_graph6(
    g: *const LoGraph,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> LoStatus {
    guarded(|| {
        require!(g);
        write_string(&format::to_graph6(&(*g).inner), buf, cap, written)
    })
}

/// Whether every lamp configuration on this graph can be switched off.
///
/// # Safety
/// `g` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_is_universally_solvable(
    g: *const LoGraph,
    out: *mut bool,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(out);
        *out = solver::is_universally_solvable(&(*g).inner);
        LoStatus::Ok
    })
}

/// Find a press set clearing the lamp configuration `lit` (bitmask).
/// Writes the press set to `presses` on success; returns
/// `LO_STATUS_UNSOLVABLE` when no press set works.
///
/// # Safety
/// `g` and `presses` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_solve(
    g: *const LoGraph,
    lit: u64,
    presses: *mut u64,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(presses);
        let graph = &(*g).inner;
        if graph.n() < 64 && lit >> graph.n() != 0 {
            return LoStatus::RangeError;
        }
        match solver::solve_configuration(graph, VertexSet::new(lit)) {
            Some(set) => {
                *presses = set.bits();
                LoStatus::Ok
            }
            None => LoStatus::Unsolvable,
        }
    })
}

/// Find an odd dominating set (a set whose closed neighborhoods cover every
/// vertex an odd number of times). `*found` reports existence; `*set` is the
/// bitmask, written only when found.
///
/// # Safety
/// `g`, `found`, and `set` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_graph_odd_dominating_set(
    g: *const LoGraph,
    found: *mut bool,
    set: *mut u64,
) -> LoStatus {
    guarded(|| {
        require!(g);
        require!(found);
        require!(set);
        match solver::odd_dominating_set(&(*g).inner) {
            Some(ods) => {
                *found = true;
                *set = ods.bits();
            }
            None => *found = false,
        }
        LoStatus::Ok
    })
}

/// Create a census/probability engine.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_catalog_new(out: *mut *mut LoCatalog) -> LoStatus {
    guarded(|| {
        require!(out);
        *out = boxed(LoCatalog {
            inner: Catalog::new(),
        });
        LoStatus::Ok
    })
}

/// Release a catalog handle. Null is ignored.
///
/// # Safety
/// `cat` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lo_catalog_free(cat: *mut LoCatalog) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// Number of isomorphism classes of graphs with `n` vertices and `e` edges.
/// Returns `LO_STATUS_RANGE_ERROR` when the count does not fit in 64 bits.
///
/// # Safety
/// `cat` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_catalog_class_count(
    cat: *const LoCatalog,
    n: usize,
    e: usize,
    out: *mut u64,
) -> LoStatus {
    guarded(|| {
        require!(cat);
        require!(out);
        match (*cat).inner.count_graphs(n, e) {
            Ok(count) => match count.to_u64() {
                Some(fits) => {
                    *out = fits;
                    LoStatus::Ok
                }
                None => LoStatus::RangeError,
            },
            Err(err) => status_of(&err),
        }
    })
}

/// Number of classes on `n` vertices with excess degree `d` whose complement
/// is universally solvable.
///
/// # Safety
/// `cat` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_catalog_excess_census_count(
    cat: *const LoCatalog,
    n: usize,
    d: usize,
    out: *mut u64,
) -> LoStatus {
    guarded(|| {
        require!(cat);
        require!(out);
        match (*cat).inner.compute_e(n, d) {
            Ok(classes) => {
                *out = classes.len() as u64;
                LoStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Number of universally solvable classes with `n` vertices and
/// `C(n,2) − floor(n/2) − m` edges.
///
/// # Safety
/// `cat` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_catalog_solvable_census_count(
    cat: *const LoCatalog,
    n: usize,
    m: usize,
    out: *mut u64,
) -> LoStatus {
    guarded(|| {
        require!(cat);
        require!(out);
        match (*cat).inner.compute_u(n, m) {
            Ok(classes) => {
                *out = classes.len() as u64;
                LoStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Exact probability that a uniformly random isomorphism class with `n`
/// vertices and `e` edges is universally solvable, rounded to f64.
///
/// # Safety
/// `cat` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_catalog_exact_probability(
    cat: *const LoCatalog,
    n: usize,
    e: usize,
    out: *mut f64,
) -> LoStatus {
    guarded(|| {
        require!(cat);
        require!(out);
        match (*cat).inner.exact_probability(n, e) {
            Ok(p) => match p.to_f64() {
                Some(value) => {
                    *out = value;
                    LoStatus::Ok
                }
                None => LoStatus::InternalError,
            },
            Err(err) => status_of(&err),
        }
    })
}

/// Exact probability as a reduced fraction string, e.g. `"1/2"`.
/// Buffer semantics match [`lo_graph_to_graph6`].
///
/// # Safety
/// `cat` and `written` must be valid; `buf` must have `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn lo_catalog_exact_probability_string(
    cat: *const LoCatalog,
    n: usize,
    e: usize,
    buf: *mut c_char,
    cap: usize,
    written: *mut usize,
) -> LoStatus {
    guarded(|| {
        require!(cat);
        match (*cat).inner.exact_probability(n, e) {
            Ok(p) => write_string(&p.to_string(), buf, cap, written),
            Err(err) => status_of(&err),
        }
    })
}

/// Create a uniform sampler over isomorphism classes with `n` vertices and
/// `e` edges.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_sampler_new(
    n: usize,
    e: usize,
    out: *mut *mut LoSampler,
) -> LoStatus {
    guarded(|| {
        require!(out);
        match WormaldSampler::new(n, e) {
            Ok(inner) => {
                *out = boxed(LoSampler { inner });
                LoStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Release a sampler handle. Null is ignored.
///
/// # Safety
/// `sampler` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lo_sampler_free(sampler: *mut LoSampler) {
    if !sampler.is_null() {
        drop(Box::from_raw(sampler));
    }
}

/// Draw one uniform sample as a new graph handle. Draws are deterministic in
/// `(seed, index)` and independent across indices, so a sequence of draws can
/// be reproduced or distributed in any order.
///
/// # Safety
/// `sampler` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_sampler_draw(
    sampler: *const LoSampler,
    seed: u64,
    index: u64,
    out: *mut *mut LoGraph,
) -> LoStatus {
    guarded(|| {
        require!(sampler);
        require!(out);
        let s = &(*sampler).inner;
        let mut rng = trial_rng(seed, s.n(), s.e(), index);
        let outcome = s.sample(&mut rng);
        *out = boxed(LoGraph {
            inner: outcome.graph,
        });
        LoStatus::Ok
    })
}

/// Monte Carlo estimate of the probability that a uniform isomorphism class
/// with `n` vertices and `e` edges is universally solvable. Writes the point
/// estimate and its 95% margin of error. `workers = 0` means one worker.
///
/// # Safety
/// `p_hat` and `moe95` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lo_estimate_probability(
    n: usize,
    e: usize,
    trials: u64,
    seed: u64,
    workers: usize,
    p_hat: *mut f64,
    moe95: *mut f64,
) -> LoStatus {
    guarded(|| {
        require!(p_hat);
        require!(moe95);
        let config = ExperimentConfig {
            n,
            edges: vec![e],
            trials,
            seed,
            workers: workers.max(1),
            quiet: true,
        };
        match run_experiment(&config) {
            Ok(estimates) => {
                let est = &estimates[0];
                *p_hat = est.p_hat;
                *moe95 = est.moe95;
                LoStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}
