//! Coarse sign-change scan plus bisection.

use alloc::vec::Vec;

/// A bracket [lo, hi] with residual values of opposite sign at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Evaluates `f` on `points` (must be sorted) and returns every adjacent pair where
/// the sign changes. Non-finite evaluations break the chain.
pub fn scan_sign_changes<F: FnMut(f64) -> f64>(mut f: F, points: &[f64]) -> Vec<Bracket> {
    let vals: Vec<f64> = points.iter().map(|&x| f(x)).collect();
    scan_values(points, &vals)
}

/// Same as [`scan_sign_changes`] but on precomputed values.
pub fn scan_values(points: &[f64], vals: &[f64]) -> Vec<Bracket> {
    let mut out = Vec::new();
    for i in 1..points.len() {
        let (a, b) = (vals[i - 1], vals[i]);
        if !a.is_finite() || !b.is_finite() {
            continue;
        }
        if a == 0.0 || (a < 0.0) != (b < 0.0) {
            out.push(Bracket { lo: points[i - 1], hi: points[i], f_lo: a, f_hi: b });
        }
    }
    out
}

/// Bisects until the bracket is narrower than `width` (absolute). Returns the
/// midpoint of the final bracket.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket, width: f64) -> f64 {
    let Bracket { mut lo, mut hi, mut f_lo, .. } = bracket;
    if f_lo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        if (hi - lo).abs() <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `n` points uniformly spaced on the open interval (a, b), endpoints excluded.
pub fn interior_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let h = (b - a) / (n + 1) as f64;
    (1..=n).map(|k| a + h * k as f64).collect()
}
