use crate::scalar::Scalar;

/// Finds `dv ∈ (0, dv_max]` with `g(dv) = 0` for `g` increasing and tending
/// to `−∞` as `dv → 0⁺`. Returns `None` when `g(dv_max) < 0`.
///
/// The bracket is first shrunk geometrically so that drops many decades below
/// `dv_max` are resolved to full relative precision.
pub(crate) fn solve_drop<S: Scalar>(g: impl Fn(S) -> S, dv_max: S) -> Option<S> {
    let mut hi = dv_max;
    if g(hi) < S::zero() {
        return None;
    }
    let mut lo = hi;
    loop {
        lo = lo * S::half();
        if !(lo > S::zero()) {
            return Some(hi);
        }
        if g(lo) < S::zero() {
            break;
        }
        hi = lo;
    }
    let tol = S::epsilon() * S::lit(4.0);
    for _ in 0..400 {
        let mid = (lo + hi) * S::half();
        if mid <= lo || mid >= hi || hi - lo <= tol * hi {
            break;
        }
        if g(mid) < S::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) * S::half())
}

/// Bisection for a decreasing function on `[lo, hi]` with `h(lo) > 0 > h(hi)`.
pub(crate) fn bisect_decreasing<S: Scalar>(h: impl Fn(S) -> S, mut lo: S, mut hi: S, rel_tol: S) -> S {
    for _ in 0..400 {
        let mid = (lo + hi) * S::half();
        if mid <= lo || mid >= hi || (hi - lo).abs() <= rel_tol * mid.abs().max(S::one()) {
            break;
        }
        if h(mid) > S::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * S::half()
}
