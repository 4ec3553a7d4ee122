use super::{gauss_rule, laguerre_basis, GaussRule};
use crate::error::Result;

/// Generalized Laguerre L_k^{(α)}(x) by the three-term recurrence.
pub fn laguerre_general(k: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - x) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// L_k(x) = (e^x/k!) d^k/dx^k (x^k e^{-x}).
pub fn laguerre_eval(k: usize, x: f64) -> f64 {
    laguerre_general(k, 0.0, x)
}

/// L_k'(x) = −L_{k−1}^{(1)}(x).
pub fn laguerre_deriv(k: usize, x: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        -laguerre_general(k - 1, 1.0, x)
    }
}

/// n-point Gauss–Laguerre rule for e^{-x} on [0, ∞).
pub fn gauss_laguerre(n: usize) -> Result<GaussRule> {
    gauss_rule(&laguerre_basis(n)?, n)
}
