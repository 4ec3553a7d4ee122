//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.
//!
//! `diag` has length n, `off` has length n-1 (`off[i]` couples rows i and i+1).

use crate::error::{Error, Result};

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    let scale = gershgorin(diag, off).1.abs().max(1.0);
    let guard = f64::MIN_POSITIVE.sqrt() * scale;
    let mut count = 0;
    let mut q = diag[0] - x;
    for i in 0..n {
        if i > 0 {
            let prev = if q.abs() < guard { guard.copysign(q) } else { q };
            q = (diag[i] - x) - off[i - 1] * off[i - 1] / prev;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Interval containing the whole spectrum.
pub fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

/// The `k`-th smallest eigenvalue (0-based).
pub fn eigenvalue(diag: &[f64], off: &[f64], k: usize) -> Result<f64> {
    let n = diag.len();
    if off.len() + 1 != n.max(1) {
        return Err(Error::Precondition(format!(
            "off-diagonal length {} does not match diagonal length {n}",
            off.len()
        )));
    }
    if k >= n {
        return Err(Error::Precondition(format!("eigenvalue index {k} >= size {n}")));
    }
    let (lo, hi) = gershgorin(diag, off);
    let pad = 1e-12 * (hi - lo).abs().max(1.0);
    bisect(diag, off, k, lo - pad, hi + pad)
}

fn bisect(diag: &[f64], off: &[f64], k: usize, mut a: f64, mut b: f64) -> Result<f64> {
    // absolute floor well below the attainable accuracy eps·‖T‖
    let floor = 1e-4 * f64::EPSILON * gershgorin(diag, off).1.abs().max(1.0);
    for _ in 0..300 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b || b - a <= floor {
            return Ok(mid);
        }
        if sturm_count(diag, off, mid) <= k {
            a = mid;
        } else {
            b = mid;
        }
    }
    // 300 halvings exhaust any f64 interval; reaching here means NaN input.
    Err(Error::Numeric(format!(
        "bisection for eigenvalue {k} did not converge on [{a}, {b}]"
    )))
}

/// All eigenvalues in ascending order.
///
/// Each eigenvalue is bracketed by the previous one, so the total cost is
/// O(n² log(1/eps)).
pub fn eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if off.len() + 1 != n {
        return Err(Error::Precondition(format!(
            "off-diagonal length {} does not match diagonal length {n}",
            off.len()
        )));
    }
    let (lo, hi) = gershgorin(diag, off);
    let pad = 1e-12 * (hi - lo).abs().max(1.0);
    let mut out = Vec::with_capacity(n);
    let mut lower = lo - pad;
    for k in 0..n {
        let ev = bisect(diag, off, k, lower, hi + pad)?;
        out.push(ev);
        lower = ev - pad;
    }
    Ok(out)
}

/// Eigenvector for an (approximate) eigenvalue by inverse iteration,
/// normalized to unit Euclidean length with a nonnegative first entry.
pub fn inverse_iteration(diag: &[f64], off: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = gershgorin(diag, off).1.abs().max(1.0);
    let shift = lambda + 1e3 * f64::EPSILON * scale;
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..6 {
        v = solve_shifted(diag, off, shift, &v)?;
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Numeric("inverse iteration produced a degenerate vector".into()));
        }
        v.iter_mut().for_each(|x| *x /= norm);
    }
    if v[0] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(v)
}

/// Solve (T - shift I) x = rhs with partial pivoting (Gaussian elimination on the band).
fn solve_shifted(diag: &[f64], off: &[f64], shift: f64, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    // Rows carry up to three upper entries after pivoting: (u0, u1, u2).
    let mut u0: Vec<f64> = diag.iter().map(|d| d - shift).collect();
    let mut u1: Vec<f64> = (0..n).map(|i| if i + 1 < n { off[i] } else { 0.0 }).collect();
    let mut u2 = vec![0.0; n];
    let mut lower: Vec<f64> = (0..n).map(|i| if i > 0 { off[i - 1] } else { 0.0 }).collect();
    let mut b = rhs.to_vec();
    let tiny = f64::EPSILON * gershgorin(diag, off).1.abs().max(1.0);
    for i in 0..n.saturating_sub(1) {
        let sub = lower[i + 1];
        if sub.abs() > u0[i].abs() {
            // swap rows i and i+1
            let (a0, a1, a2) = (u0[i], u1[i], u2[i]);
            u0[i] = sub;
            u1[i] = u0[i + 1];
            u2[i] = u1[i + 1];
            let m = a0 / sub;
            u0[i + 1] = a1 - m * u1[i];
            u1[i + 1] = a2 - m * u2[i];
            b.swap(i, i + 1);
            b[i + 1] -= m * b[i];
        } else {
            let piv = if u0[i] == 0.0 { tiny } else { u0[i] };
            u0[i] = piv;
            let m = sub / piv;
            u0[i + 1] -= m * u1[i];
            u1[i + 1] -= m * u2[i];
            b[i + 1] -= m * b[i];
        }
        lower[i + 1] = 0.0;
    }
    if u0[n - 1] == 0.0 {
        u0[n - 1] = tiny;
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s -= u1[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= u2[i] * x[i + 2];
        }
        x[i] = s / u0[i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_counts() {
        // [[1, -1], [-1, 3]] has eigenvalues 2 ± √2
        let d = [1.0, 3.0];
        let e = [-1.0];
        assert_eq!(sturm_count(&d, &e, 0.0), 0);
        assert_eq!(sturm_count(&d, &e, 1.0), 1);
        assert_eq!(sturm_count(&d, &e, 4.0), 2);
        let ev = eigenvalues(&d, &e).unwrap();
        assert!((ev[0] - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!((ev[1] - (2.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn free_chain_matches_cosines() {
        let n = 60;
        let d = vec![0.0; n];
        let e = vec![1.0; n - 1];
        let ev = eigenvalues(&d, &e).unwrap();
        for (k, v) in ev.iter().enumerate() {
            let j = (n - k) as f64;
            let exact = 2.0 * (j * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((v - exact).abs() < 1e-13, "k={k}: {v} vs {exact}");
        }
    }

    #[test]
    fn inverse_iteration_gives_eigenvector() {
        let n = 12;
        let d: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let e: Vec<f64> = (1..n).map(|i| 0.5 * i as f64).collect();
        let ev = eigenvalues(&d, &e).unwrap();
        for &lam in &ev {
            let v = inverse_iteration(&d, &e, lam).unwrap();
            for i in 0..n {
                let mut tv = d[i] * v[i];
                if i > 0 {
                    tv += e[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    tv += e[i] * v[i + 1];
                }
                assert!((tv - lam * v[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(eigenvalues(&[1.0, 2.0], &[]).is_err());
        assert!(eigenvalue(&[1.0], &[], 1).is_err());
    }
}
