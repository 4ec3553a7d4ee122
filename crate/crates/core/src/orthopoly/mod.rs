//! Orthogonal families: Meixner–Pollaczek P_k^{(ℓ)}, Laguerre, and bases
//! produced numerically from a discretized weight.
//!
//! Every basis is stored through its orthonormal Jacobi recurrence
//! `x p̃_k = b_{k+1} p̃_{k+1} + a_k p̃_k + b_k p̃_{k−1}` together with the squared
//! norms of the native normalization, so P_k = ±√h_k · p̃_k.

mod exact;
mod gauss;
mod laguerre;
mod stieltjes;

pub use exact::{generating_taylor, mp_exact, mp_norm_sq_exact, PolyExact, EXACT_DEGREE_BUDGET};
pub use gauss::{gauss_rule, gauss_rule_inverse_iteration, GaussRule};
pub use laguerre::{gauss_laguerre, laguerre_deriv, laguerre_eval, laguerre_general};
pub use stieltjes::{discretized_basis, two_sided_exp_basis};

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::dd::{ComplexDD, DoubleDouble};
use crate::error::{Error, Result};
use crate::measures::Weight;

/// Largest degree cap accepted for floating-point bases.
pub const FLOAT_DEGREE_BUDGET: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    MeixnerPollaczek(u32),
    Laguerre,
    /// Computed by the Stieltjes procedure from a discrete measure.
    Discretized(String),
}

/// Recurrence table and norms of an orthogonal family up to `degree_cap`.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    pub family: Family,
    pub degree_cap: usize,
    /// a_k for k = 0..=degree_cap.
    pub diag: Vec<f64>,
    /// b_k for k = 0..=degree_cap; b_0 = 0 and b_k couples p̃_{k−1} and p̃_k.
    pub off: Vec<f64>,
    /// Squared norms of the native polynomials.
    pub norms_sq: Vec<f64>,
    /// Native polynomials carry the sign (−1)^k relative to p̃_k.
    pub alternating: bool,
    pub weight: Weight,
}

/// MP(ℓ) basis: a_k = 0, b_k = √(k(k+ℓ−1)), h_k = binom(k+ℓ−1, k).
pub fn mp_recurrence(ell: u32, degree_cap: usize) -> Result<OrthoBasis> {
    if ell == 0 {
        return Err(Error::Domain("ℓ must be at least 1".into()));
    }
    if degree_cap < 1 {
        return Err(Error::Precondition("degree_cap must be at least 1".into()));
    }
    if degree_cap > FLOAT_DEGREE_BUDGET {
        return Err(Error::Resource(format!(
            "degree cap {degree_cap} exceeds {FLOAT_DEGREE_BUDGET}"
        )));
    }
    let n = degree_cap + 1;
    let l = ell as f64;
    let off: Vec<f64> = (0..n).map(|k| (k as f64 * (k as f64 + l - 1.0)).sqrt()).collect();
    let mut norms_sq = Vec::with_capacity(n);
    let mut h = 1.0;
    for k in 0..n {
        if k > 0 {
            h *= (k as f64 + l - 1.0) / k as f64;
        }
        norms_sq.push(h);
    }
    Ok(OrthoBasis {
        family: Family::MeixnerPollaczek(ell),
        degree_cap,
        diag: vec![0.0; n],
        off,
        norms_sq,
        alternating: false,
        weight: Weight::nu_ell(ell)?,
    })
}

/// Laguerre basis for e^{-x} on [0, ∞): a_k = 2k+1, b_k = k, unit norms.
pub fn laguerre_basis(degree_cap: usize) -> Result<OrthoBasis> {
    if degree_cap > FLOAT_DEGREE_BUDGET {
        return Err(Error::Resource(format!(
            "degree cap {degree_cap} exceeds {FLOAT_DEGREE_BUDGET}"
        )));
    }
    let n = degree_cap + 1;
    Ok(OrthoBasis {
        family: Family::Laguerre,
        degree_cap,
        diag: (0..n).map(|k| 2.0 * k as f64 + 1.0).collect(),
        off: (0..n).map(|k| k as f64).collect(),
        norms_sq: vec![1.0; n],
        alternating: true,
        weight: Weight::half_exp(),
    })
}

const RESCALE_HI: f64 = 1e150;
const LN_RESCALE: f64 = 345.387_763_949_107; // ln 1e150

impl OrthoBasis {
    /// (a_k, b_k) pairs for k = 0..=degree_cap.
    pub fn recurrence(&self) -> Vec<(f64, f64)> {
        self.diag.iter().copied().zip(self.off.iter().copied()).collect()
    }

    /// Sign relating native P_k to the orthonormal p̃_k.
    pub fn sign(&self, k: usize) -> f64 {
        if self.alternating && k % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// Native coefficient f_k from the orthonormal one ⟨f, p̃_k⟩.
    pub fn native_coefficient(&self, k: usize, orthonormal: f64) -> f64 {
        self.sign(k) * orthonormal / self.norms_sq[k].sqrt()
    }

    /// Jacobi matrix of order n: (diagonal, off-diagonal).
    pub fn jacobi(&self, n: usize) -> Result<(&[f64], &[f64])> {
        if n == 0 || n > self.degree_cap + 1 {
            return Err(Error::Precondition(format!(
                "Jacobi order {n} outside 1..={}",
                self.degree_cap + 1
            )));
        }
        Ok((&self.diag[..n], &self.off[1..n]))
    }

    /// Writes p̃_k(x)·e^{ln_factor} into `out[k]` for k < out.len().
    ///
    /// The recurrence runs on a rescaled mantissa so that huge polynomial
    /// values at large |x| combine with tiny weights without overflow.
    pub fn orthonormal_scaled(&self, x: f64, ln_factor: f64, out: &mut [f64]) {
        let n = out.len();
        if n == 0 {
            return;
        }
        debug_assert!(n <= self.degree_cap + 1);
        let mut s = ln_factor;
        let mut prev = 0.0;
        let mut cur = 1.0;
        let emit = |p: f64, s: f64| -> f64 {
            if s > -700.0 && s < 700.0 {
                p * s.exp()
            } else if p == 0.0 {
                0.0
            } else {
                p.signum() * (s + p.abs().ln()).exp()
            }
        };
        out[0] = emit(cur, s);
        for k in 0..n - 1 {
            let next = ((x - self.diag[k]) * cur - self.off[k] * prev) / self.off[k + 1];
            prev = cur;
            cur = next;
            if cur.abs() > RESCALE_HI {
                cur /= RESCALE_HI;
                prev /= RESCALE_HI;
                s += LN_RESCALE;
            }
            out[k + 1] = emit(cur, s);
        }
    }

    /// p̃_0(x), ..., p̃_{n−1}(x) without scaling.
    pub fn orthonormal_values(&self, x: f64, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        self.orthonormal_scaled(x, 0.0, &mut out);
        out
    }

    /// Native P_k(x).
    pub fn native_value(&self, k: usize, x: f64) -> f64 {
        let v = self.orthonormal_values(x, k + 1)[k];
        self.sign(k) * self.norms_sq[k].sqrt() * v
    }

    /// ln Σ_{k<n} p̃_k(x)², the reciprocal Christoffel function.
    pub fn ln_christoffel_sum(&self, x: f64, n: usize) -> f64 {
        let mut s = 0.0;
        let mut prev = 0.0;
        let mut cur = 1.0;
        let mut sum = 1.0;
        for k in 0..n - 1 {
            let next = ((x - self.diag[k]) * cur - self.off[k] * prev) / self.off[k + 1];
            prev = cur;
            cur = next;
            if cur.abs() > RESCALE_HI {
                cur /= RESCALE_HI;
                prev /= RESCALE_HI;
                sum /= RESCALE_HI * RESCALE_HI;
                s += LN_RESCALE;
            }
            sum += cur * cur;
        }
        sum.ln() + 2.0 * s
    }

    /// p̃_n(x) / p̃_n'(x), the Newton step for a zero of p̃_n.
    pub fn newton_ratio(&self, x: f64, n: usize) -> f64 {
        let (mut p0, mut p1) = (0.0, 1.0);
        let (mut d0, mut d1) = (0.0, 0.0);
        for k in 0..n {
            let p2 = ((x - self.diag[k]) * p1 - self.off[k] * p0) / self.off[k + 1];
            let d2 = ((x - self.diag[k]) * d1 + p1 - self.off[k] * d0) / self.off[k + 1];
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
            let m = p1.abs().max(d1.abs());
            if m > RESCALE_HI {
                p0 /= RESCALE_HI;
                p1 /= RESCALE_HI;
                d0 /= RESCALE_HI;
                d1 /= RESCALE_HI;
            }
        }
        p1 / d1
    }

    /// CSV table with columns k, a_k, b_k, norm_sq.
    pub fn recurrence_csv(&self) -> String {
        let mut s = String::from("k,a_k,b_k,norm_sq\n");
        for k in 0..=self.degree_cap {
            let _ = writeln!(
                s,
                "{k},{:.16e},{:.16e},{:.16e}",
                self.diag[k], self.off[k], self.norms_sq[k]
            );
        }
        s
    }
}

/// P_k^{(ℓ)}(z) by the forward recurrence in complex double-double arithmetic.
pub fn mp_eval(ell: u32, k: usize, z: Complex64) -> Complex64 {
    let x = ComplexDD::from_f64(z.re, z.im);
    let mut prev = ComplexDD::from_f64(1.0, 0.0);
    if k == 0 {
        return prev.to_c64();
    }
    let mut cur = x;
    for j in 1..k {
        // P_{j+1} = (x P_j − (j−1+ℓ) P_{j−1}) / (j+1)
        let inv = DoubleDouble::ONE / DoubleDouble::from(j as f64 + 1.0);
        let m = DoubleDouble::from((j as f64 - 1.0) + ell as f64);
        let next = (x * cur - prev.scale(m)).scale(inv);
        prev = cur;
        cur = next;
    }
    cur.to_c64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mp_basis_shape() {
        let b = mp_recurrence(2, 5).unwrap();
        assert_eq!(b.norms_sq[3], 4.0);
        assert!(b.diag.iter().all(|&a| a == 0.0));
        let b1 = mp_recurrence(1, 6).unwrap();
        for k in 0..=6 {
            assert_eq!(b1.off[k], k as f64);
        }
        assert!(mp_recurrence(1, 0).is_err());
    }

    #[test]
    fn recurrence_reproduces_exact_coefficients() {
        for ell in 1..=3u32 {
            let b = mp_recurrence(ell, 20).unwrap();
            let exact = mp_exact(ell, 20).unwrap();
            for &x in &[-3.5, -0.25, 0.0, 1.0, 4.75] {
                for (k, p) in exact.iter().enumerate() {
                    let v = b.native_value(k, x);
                    let e = p.eval(x);
                    assert!((v - e).abs() <= 1e-11 * (1.0 + e.abs()), "ℓ={ell} k={k} x={x}: {v} vs {e}");
                }
            }
        }
    }

    #[test]
    fn mp_eval_anchors() {
        let v = mp_eval(1, 2, Complex64::new(0.0, 1.0));
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((mp_eval(1, 1, Complex64::new(3.0, 0.0)) - Complex64::new(3.0, 0.0)).norm() < 1e-15);
        let p5 = &mp_exact(1, 5).unwrap()[5];
        assert_eq!(mp_eval(1, 5, Complex64::new(0.0, 0.0)).re, p5.eval(0.0));
    }

    #[test]
    fn mp_eval_matches_exact_horner_at_high_degree() {
        for ell in [1u32, 2] {
            let exact = mp_exact(ell, 60).unwrap();
            for &x in &[-50.0, -7.3, 0.1, 12.5, 50.0] {
                for k in [10usize, 33, 60] {
                    let e = exact[k].eval(x);
                    let v = mp_eval(ell, k, Complex64::new(x, 0.0)).re;
                    assert!((v - e).abs() <= 1e-12 * e.abs().max(f64::MIN_POSITIVE), "ℓ={ell} k={k} x={x}: {v} vs {e}");
                }
            }
        }
    }

    #[test]
    fn scaled_values_survive_extreme_arguments() {
        let b = mp_recurrence(1, 400).unwrap();
        let x = 600.0;
        let ln_w = -std::f64::consts::FRAC_PI_2 * x;
        let mut out = vec![0.0; 401];
        b.orthonormal_scaled(x, 0.5 * ln_w, &mut out);
        assert!(out.iter().all(|v| v.is_finite()));
        assert!(out[400].abs() > 0.0);
    }

    #[test]
    fn laguerre_basis_signs() {
        let b = laguerre_basis(5).unwrap();
        for k in 0..=5 {
            let v = b.native_value(k, 0.7);
            assert!((v - laguerre_eval(k, 0.7)).abs() < 1e-13, "k={k}");
        }
    }
}
