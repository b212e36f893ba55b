//! Adaptive composite Simpson quadrature for piecewise-smooth integrands.

use crate::num::{real, Real};

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` to the given absolute tolerance.
///
/// `breakpoints` seed the initial panel grid; pass the integrand's kinks and
/// the locations of any sharp features (for narrow peaks, a few points across
/// the peak) so the refinement cannot step over them. Points outside `(a, b)`
/// are ignored. Returns 0 when the interval is empty or inverted.
pub fn integrate<S: Real, F: Fn(S) -> S>(f: F, a: S, b: S, abs_tol: S, breakpoints: &[S]) -> S {
    // Negated so NaN bounds fall through to zero.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(b > a) {
        return S::zero();
    }
    let mut pts: Vec<S> = Vec::with_capacity(breakpoints.len() + 2);
    pts.push(a);
    for &p in breakpoints {
        if p > a && p < b {
            pts.push(p);
        }
    }
    pts.push(b);
    pts.sort_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    pts.dedup_by(|x, y| x == y);

    let n_panels = pts.len() - 1;
    let tol_each = abs_tol / real::<S>(n_panels as f64);
    let mut total = S::zero();
    for w in pts.windows(2) {
        total += panel(&f, w[0], w[1], tol_each);
    }
    total
}

fn midpoint<S: Real>(a: S, b: S) -> S {
    a + (b - a) * real::<S>(0.5)
}

fn simpson<S: Real>(a: S, b: S, fa: S, fm: S, fb: S) -> S {
    (b - a) / real::<S>(6.0) * (fa + real::<S>(4.0) * fm + fb)
}

fn panel<S: Real, F: Fn(S) -> S>(f: &F, a: S, b: S, tol: S) -> S {
    let m = midpoint(a, b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    refine(f, a, m, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn refine<S: Real, F: Fn(S) -> S>(
    f: &F,
    a: S,
    m: S,
    b: S,
    fa: S,
    fm: S,
    fb: S,
    whole: S,
    tol: S,
    depth: u32,
) -> S {
    let lm = midpoint(a, m);
    let rm = midpoint(m, b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = left + right - whole;
    if depth == 0 || err.abs() <= real::<S>(15.0) * tol {
        // Richardson extrapolation of the two Simpson estimates.
        left + right + err / real::<S>(15.0)
    } else {
        let half = tol * real::<S>(0.5);
        refine(f, a, lm, m, fa, flm, fm, left, half, depth - 1)
            + refine(f, m, rm, b, fm, frm, fb, right, half, depth - 1)
    }
}
