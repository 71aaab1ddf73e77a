//! Fixed-order pairwise summation.
//!
//! The reduction tree depends only on the slice length, never on how work was
//! scheduled, so sums are bitwise reproducible across thread counts.

const BLOCK: usize = 16;

pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= BLOCK {
        return xs.iter().fold(0.0, |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Pairwise sum of `f(0) .. f(n-1)` without materializing a buffer.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(n: usize, f: &F) -> f64 {
    fn go<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
        if hi - lo <= BLOCK {
            return (lo..hi).fold(0.0, |acc, i| acc + f(i));
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, n, f)
}

/// Two simultaneous pairwise sums sharing one reduction tree.
pub fn pairwise_sum2_by<F: Fn(usize) -> (f64, f64)>(n: usize, f: &F) -> (f64, f64) {
    fn go<F: Fn(usize) -> (f64, f64)>(lo: usize, hi: usize, f: &F) -> (f64, f64) {
        if hi - lo <= BLOCK {
            return (lo..hi).fold((0.0, 0.0), |acc, i| {
                let (a, b) = f(i);
                (acc.0 + a, acc.1 + b)
            });
        }
        let mid = lo + (hi - lo) / 2;
        let (a0, b0) = go(lo, mid, f);
        let (a1, b1) = go(mid, hi, f);
        (a0 + a1, b0 + b1)
    }
    go(0, n, f)
}
