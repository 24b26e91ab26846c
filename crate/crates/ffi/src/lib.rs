//! C ABI over the hyperstate crate.
//!
//! All functions communicate failure through [`HsStatus`] codes and leave a
//! human-readable explanation in a thread-local buffer readable via
//! [`hs_last_error_message`]. Heap objects cross the boundary as opaque
//! handles with explicit `hs_*_free` functions; strings returned by this
//! library must be released with [`hs_string_free`].
//!
//! Every function null-checks its pointer arguments, but cannot check that a
//! non-null pointer is valid: handles must originate from this library and
//! must not be used after being freed, and out-pointers must point to
//! writable memory of the right type.
//!
//! The generated header lives at `include/hyperstate.h`.

#![warn(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;

use hyperstate::entanglement::{
    geometric_measure_bruteforce_seeded, geometric_measure_m1, geometric_measure_m2_seeded,
    EntanglementError, EntanglementResult,
};
use hyperstate::grover::run_grover;
use hyperstate::hypergraph::{
    grover_m1_hypergraph, grover_m2_hypergraph, Hypergraph, HypergraphError,
};
use hyperstate::state::{SolutionSet, StateVector};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HsStatus {
    Ok = 0,
    InvalidArgument = 1,
    UnsupportedSize = 2,
    ParseError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
}

/// Opaque dense state vector.
pub struct HsState(StateVector);

/// Opaque hypergraph.
pub struct HsHypergraph(Hypergraph);

/// Opaque entanglement-measure result.
pub struct HsResult(EntanglementResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: HsStatus, message: String) -> HsStatus {
    let c = CString::new(message).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
    status
}

fn state_error(e: hyperstate::state::StateError) -> HsStatus {
    fail(HsStatus::InvalidArgument, e.to_string())
}

fn hypergraph_error(e: HypergraphError) -> HsStatus {
    let status = match e {
        HypergraphError::Parse { .. } => HsStatus::ParseError,
        _ => HsStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn entanglement_error(e: EntanglementError) -> HsStatus {
    let status = match e {
        EntanglementError::UnsupportedSize(_) => HsStatus::UnsupportedSize,
        _ => HsStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

unsafe fn slice_from<'a, T>(ptr: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(ptr, len) })
    }
}

fn null_pointer() -> HsStatus {
    fail(HsStatus::NullPointer, "null pointer argument".into())
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> HsStatus {
    unsafe { *out = Box::into_raw(Box::new(value)) };
    HsStatus::Ok
}

/// Message describing the most recent failure on this thread, or NULL if no
/// call has failed yet. The pointer stays valid until the next failing call
/// on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn hs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be a string obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe { drop(CString::from_raw(s)) };
    }
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

/// Equally weighted superposition of all 2^n basis states.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_uniform_superposition(n: usize, out: *mut *mut HsState) -> HsStatus {
    if out.is_null() {
        return null_pointer();
    }
    match StateVector::uniform_superposition(n) {
        Ok(state) => unsafe { emit(out, HsState(state)) },
        Err(e) => state_error(e),
    }
}

/// State after the first oracle call for the given solution indices:
/// amplitudes (−1)^{f(x)} / sqrt(2^n).
///
/// # Safety
/// `solutions` must point to `solution_count` readable values (or be unused
/// with a zero count) and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_rew_state(
    n: usize,
    solutions: *const usize,
    solution_count: usize,
    out: *mut *mut HsState,
) -> HsStatus {
    if out.is_null() {
        return null_pointer();
    }
    let Some(sols) = (unsafe { slice_from(solutions, solution_count) }) else {
        return null_pointer();
    };
    let result = SolutionSet::new(n, sols.to_vec())
        .and_then(|sols| StateVector::uniform_superposition(n)?.apply_oracle(&sols));
    match result {
        Ok(state) => unsafe { emit(out, HsState(state)) },
        Err(e) => state_error(e),
    }
}

/// Number of qubits of a state.
///
/// # Safety
/// `state` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_state_qubits(state: *const HsState, out: *mut usize) -> HsStatus {
    if state.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*state).0.n() };
    HsStatus::Ok
}

/// Amplitude of basis index `index` as a (re, im) pair.
///
/// # Safety
/// `state` must be a live handle from this library; `re` and `im` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hs_state_amplitude(
    state: *const HsState,
    index: usize,
    re: *mut f64,
    im: *mut f64,
) -> HsStatus {
    if state.is_null() || re.is_null() || im.is_null() {
        return null_pointer();
    }
    let state = unsafe { &(*state).0 };
    if index >= state.dim() {
        return fail(
            HsStatus::InvalidArgument,
            format!("basis index {index} out of range for {} qubits", state.n()),
        );
    }
    let a = state.amplitude(index);
    unsafe {
        *re = a.re;
        *im = a.im;
    }
    HsStatus::Ok
}

/// Negate the amplitudes of the given solution indices, returning a new state.
///
/// # Safety
/// `state` must be a live handle; `solutions` must point to
/// `solution_count` readable values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_state_apply_oracle(
    state: *const HsState,
    solutions: *const usize,
    solution_count: usize,
    out: *mut *mut HsState,
) -> HsStatus {
    if state.is_null() || out.is_null() {
        return null_pointer();
    }
    let Some(sols) = (unsafe { slice_from(solutions, solution_count) }) else {
        return null_pointer();
    };
    let state = unsafe { &(*state).0 };
    let result =
        SolutionSet::new(state.n(), sols.to_vec()).and_then(|sols| state.apply_oracle(&sols));
    match result {
        Ok(next) => unsafe { emit(out, HsState(next)) },
        Err(e) => state_error(e),
    }
}

/// Apply C^kZ on the index-bit mask, returning a new state.
///
/// # Safety
/// `state` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_state_apply_ckz(
    state: *const HsState,
    mask: usize,
    out: *mut *mut HsState,
) -> HsStatus {
    if state.is_null() || out.is_null() {
        return null_pointer();
    }
    match unsafe { &(*state).0 }.apply_ckz(mask) {
        Ok(next) => unsafe { emit(out, HsState(next)) },
        Err(e) => state_error(e),
    }
}

/// Release a state handle. NULL is ignored.
///
/// # Safety
/// `state` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hs_state_free(state: *mut HsState) {
    if !state.is_null() {
        unsafe { drop(Box::from_raw(state)) };
    }
}

// ---------------------------------------------------------------------------
// Hypergraphs
// ---------------------------------------------------------------------------

/// Hypergraph of the one-solution Grover state: a single order-n edge.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_grover_m1_hypergraph(
    n: usize,
    out: *mut *mut HsHypergraph,
) -> HsStatus {
    if out.is_null() {
        return null_pointer();
    }
    match grover_m1_hypergraph(n) {
        Ok(h) => unsafe { emit(out, HsHypergraph(h)) },
        Err(e) => hypergraph_error(e),
    }
}

/// Hypergraph of the canonical two-solution Grover state at Hamming
/// distance d.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_grover_m2_hypergraph(
    n: usize,
    d: usize,
    out: *mut *mut HsHypergraph,
) -> HsStatus {
    if out.is_null() {
        return null_pointer();
    }
    match grover_m2_hypergraph(n, d) {
        Ok(h) => unsafe { emit(out, HsHypergraph(h)) },
        Err(e) => hypergraph_error(e),
    }
}

/// Parse the canonical JSON form `{"n":..,"phase":±1,"edges":[[..],..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_from_json(
    json: *const c_char,
    out: *mut *mut HsHypergraph,
) -> HsStatus {
    if json.is_null() || out.is_null() {
        return null_pointer();
    }
    let text = match unsafe { CStr::from_ptr(json) }.to_str() {
        Ok(t) => t,
        Err(e) => return fail(HsStatus::InvalidUtf8, e.to_string()),
    };
    match Hypergraph::from_json(text) {
        Ok(h) => unsafe { emit(out, HsHypergraph(h)) },
        Err(e) => hypergraph_error(e),
    }
}

/// Canonical JSON serialization; release with hs_string_free.
///
/// # Safety
/// `hypergraph` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_to_json(
    hypergraph: *const HsHypergraph,
    out: *mut *mut c_char,
) -> HsStatus {
    if hypergraph.is_null() || out.is_null() {
        return null_pointer();
    }
    let json = unsafe { &(*hypergraph).0 }.to_json();
    let c = CString::new(json).expect("JSON contains no NUL bytes");
    unsafe { *out = c.into_raw() };
    HsStatus::Ok
}

/// Graphviz DOT rendering; release with hs_string_free.
///
/// # Safety
/// `hypergraph` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_to_dot(
    hypergraph: *const HsHypergraph,
    out: *mut *mut c_char,
) -> HsStatus {
    if hypergraph.is_null() || out.is_null() {
        return null_pointer();
    }
    let dot = unsafe { &(*hypergraph).0 }.to_dot();
    let c = CString::new(dot).expect("DOT contains no NUL bytes");
    unsafe { *out = c.into_raw() };
    HsStatus::Ok
}

/// Vertex count, edge count, and global phase (+1 or -1) of a hypergraph.
///
/// # Safety
/// `hypergraph` must be a live handle; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_info(
    hypergraph: *const HsHypergraph,
    n: *mut usize,
    edge_count: *mut usize,
    phase: *mut i8,
) -> HsStatus {
    if hypergraph.is_null() || n.is_null() || edge_count.is_null() || phase.is_null() {
        return null_pointer();
    }
    let h = unsafe { &(*hypergraph).0 };
    unsafe {
        *n = h.n();
        *edge_count = h.edge_masks().len();
        *phase = h.phase().to_i8();
    }
    HsStatus::Ok
}

/// Index-bit mask of edge `index` (edges are in canonical order).
///
/// # Safety
/// `hypergraph` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_edge_mask(
    hypergraph: *const HsHypergraph,
    index: usize,
    out: *mut usize,
) -> HsStatus {
    if hypergraph.is_null() || out.is_null() {
        return null_pointer();
    }
    let h = unsafe { &(*hypergraph).0 };
    match h.edge_masks().get(index) {
        Some(&mask) => {
            unsafe { *out = mask };
            HsStatus::Ok
        }
        None => fail(
            HsStatus::InvalidArgument,
            format!(
                "edge index {index} out of range ({} edges)",
                h.edge_masks().len()
            ),
        ),
    }
}

/// Synthesize the hypergraph state: phase · Π_e C^eZ ∣ψ₀⟩.
///
/// # Safety
/// `hypergraph` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_state(
    hypergraph: *const HsHypergraph,
    out: *mut *mut HsState,
) -> HsStatus {
    if hypergraph.is_null() || out.is_null() {
        return null_pointer();
    }
    let state = unsafe { &(*hypergraph).0 }.state_vector();
    unsafe { emit(out, HsState(state)) }
}

/// Release a hypergraph handle. NULL is ignored.
///
/// # Safety
/// `hypergraph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hs_hypergraph_free(hypergraph: *mut HsHypergraph) {
    if !hypergraph.is_null() {
        unsafe { drop(Box::from_raw(hypergraph)) };
    }
}

// ---------------------------------------------------------------------------
// Entanglement measures
// ---------------------------------------------------------------------------

/// E_n of the canonical one-solution state (β = 0 one-dimensional search).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_measure_m1(n: usize, out: *mut *mut HsResult) -> HsStatus {
    if out.is_null() {
        return null_pointer();
    }
    match geometric_measure_m1(n) {
        Ok(r) => unsafe { emit(out, HsResult(r)) },
        Err(e) => entanglement_error(e),
    }
}

/// E_n of the canonical two-solution state at Hamming distance d, with the
/// multi-start optimizer seeded by `seed`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_measure_m2(
    n: usize,
    d: usize,
    seed: u64,
    out: *mut *mut HsResult,
) -> HsStatus {
    if out.is_null() {
        return null_pointer();
    }
    match geometric_measure_m2_seeded(n, d, seed) {
        Ok(r) => unsafe { emit(out, HsResult(r)) },
        Err(e) => entanglement_error(e),
    }
}

/// Unrestricted E_n of an arbitrary state (at most 7 qubits).
///
/// # Safety
/// `state` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_measure_bruteforce(
    state: *const HsState,
    seed: u64,
    out: *mut *mut HsResult,
) -> HsStatus {
    if state.is_null() || out.is_null() {
        return null_pointer();
    }
    match geometric_measure_bruteforce_seeded(unsafe { &(*state).0 }, seed) {
        Ok(r) => unsafe { emit(out, HsResult(r)) },
        Err(e) => entanglement_error(e),
    }
}

/// E_n value of a result.
///
/// # Safety
/// `result` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_result_value(result: *const HsResult, out: *mut f64) -> HsStatus {
    if result.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*result).0.value };
    HsStatus::Ok
}

/// Maximal squared overlap of a result.
///
/// # Safety
/// `result` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_result_overlap(result: *const HsResult, out: *mut f64) -> HsStatus {
    if result.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*result).0.max_overlap_sq };
    HsStatus::Ok
}

/// Whether the best two optimizer starts agreed to 1e-9.
///
/// # Safety
/// `result` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_result_converged(result: *const HsResult, out: *mut bool) -> HsStatus {
    if result.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*result).0.converged };
    HsStatus::Ok
}

/// Number of blocks of the optimal product ansatz.
///
/// # Safety
/// `result` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_result_block_count(
    result: *const HsResult,
    out: *mut usize,
) -> HsStatus {
    if result.is_null() || out.is_null() {
        return null_pointer();
    }
    unsafe { *out = (*result).0.optimal.blocks().len() };
    HsStatus::Ok
}

/// Size and angles of ansatz block `index`.
///
/// # Safety
/// `result` must be a live handle; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hs_result_block(
    result: *const HsResult,
    index: usize,
    size: *mut usize,
    alpha: *mut f64,
    beta: *mut f64,
) -> HsStatus {
    if result.is_null() || size.is_null() || alpha.is_null() || beta.is_null() {
        return null_pointer();
    }
    let blocks = unsafe { &(*result).0 }.optimal.blocks();
    match blocks.get(index) {
        Some(b) => {
            unsafe {
                *size = b.size;
                *alpha = b.alpha;
                *beta = b.beta;
            }
            HsStatus::Ok
        }
        None => fail(
            HsStatus::InvalidArgument,
            format!("block index {index} out of range ({} blocks)", blocks.len()),
        ),
    }
}

/// Release a result handle. NULL is ignored.
///
/// # Safety
/// `result` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hs_result_free(result: *mut HsResult) {
    if !result.is_null() {
        unsafe { drop(Box::from_raw(result)) };
    }
}

// ---------------------------------------------------------------------------
// Grover traces
// ---------------------------------------------------------------------------

/// Success probabilities of a Grover run: writes `iterations + 1` values
/// (entry k is the probability after k full iterations) into
/// `probabilities`, which must have that capacity.
///
/// # Safety
/// `solutions` must point to `solution_count` readable values and
/// `probabilities` to `iterations + 1` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hs_grover_success_trace(
    n: usize,
    solutions: *const usize,
    solution_count: usize,
    iterations: usize,
    probabilities: *mut f64,
) -> HsStatus {
    if probabilities.is_null() {
        return null_pointer();
    }
    let Some(sols) = (unsafe { slice_from(solutions, solution_count) }) else {
        return null_pointer();
    };
    let sols = match SolutionSet::new(n, sols.to_vec()) {
        Ok(s) => s,
        Err(e) => return state_error(e),
    };
    match run_grover(n, &sols, iterations, false) {
        Ok(trace) => {
            let out = unsafe { std::slice::from_raw_parts_mut(probabilities, iterations + 1) };
            for (slot, step) in out.iter_mut().zip(&trace.steps) {
                *slot = step.success_probability;
            }
            HsStatus::Ok
        }
        Err(e) => fail(HsStatus::InvalidArgument, e.to_string()),
    }
}
