use super::{gauss_laguerre, Family, OrthoBasis};
use crate::error::{Error, Result};
use crate::measures::Weight;

/// Recurrence of the orthonormal family of a discrete measure by the
/// Stieltjes procedure, run on the weighted vectors q_k(i) = √w_i p̃_k(x_i).
pub fn discretized_basis(
    name: &str,
    nodes: &[f64],
    log_weights: &[f64],
    degree_cap: usize,
    weight: Weight,
) -> Result<OrthoBasis> {
    let m = nodes.len();
    if log_weights.len() != m {
        return Err(Error::Precondition("nodes and weights differ in length".into()));
    }
    if degree_cap + 1 > m {
        return Err(Error::Precondition(format!(
            "a {m}-point measure supports at most degree {}",
            m.saturating_sub(1)
        )));
    }
    let lmax = log_weights.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut q_prev = vec![0.0; m];
    let mut q: Vec<f64> = log_weights.iter().map(|l| (0.5 * (l - lmax)).exp()).collect();
    let norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
    q.iter_mut().for_each(|v| *v /= norm);

    let mut diag = Vec::with_capacity(degree_cap + 1);
    let mut off = vec![0.0];
    for k in 0..=degree_cap {
        let a: f64 = q.iter().zip(nodes).map(|(v, x)| x * v * v).sum();
        diag.push(a);
        if k == degree_cap {
            break;
        }
        let b = off[k];
        let mut next: Vec<f64> = (0..m).map(|i| (nodes[i] - a) * q[i] - b * q_prev[i]).collect();
        // one pass of reorthogonalization against the two previous vectors
        for basis in [&q, &q_prev] {
            let c: f64 = next.iter().zip(basis.iter()).map(|(u, v)| u * v).sum();
            next.iter_mut().zip(basis.iter()).for_each(|(u, v)| *u -= c * v);
        }
        let bn = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(bn > 0.0) {
            return Err(Error::Numeric(format!("Stieltjes breakdown at degree {}", k + 1)));
        }
        next.iter_mut().for_each(|v| *v /= bn);
        off.push(bn);
        q_prev = std::mem::replace(&mut q, next);
    }
    Ok(OrthoBasis {
        family: Family::Discretized(name.to_string()),
        degree_cap,
        diag,
        off,
        norms_sq: vec![1.0; degree_cap + 1],
        alternating: false,
        weight,
    })
}

/// Orthonormal basis of μ₁ = e^{-|x|}/2 from a mirrored Gauss–Laguerre measure.
pub fn two_sided_exp_basis(degree_cap: usize) -> Result<OrthoBasis> {
    let half = (4 * degree_cap).max(200);
    let rule = gauss_laguerre(half)?;
    let mut nodes = Vec::with_capacity(2 * half);
    let mut logw = Vec::with_capacity(2 * half);
    for i in (0..half).rev() {
        nodes.push(-rule.nodes[i]);
        logw.push(rule.log_weights[i] - std::f64::consts::LN_2);
    }
    for i in 0..half {
        nodes.push(rule.nodes[i]);
        logw.push(rule.log_weights[i] - std::f64::consts::LN_2);
    }
    let mut b = discretized_basis("two-sided-exp", &nodes, &logw, degree_cap, Weight::two_sided_exp())?;
    // the measure is even, so the diagonal vanishes identically
    b.diag.iter_mut().for_each(|a| *a = 0.0);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::Tolerance;

    #[test]
    fn reproduces_mp_recurrence_from_its_gauss_rule() {
        let mp = super::super::mp_recurrence(1, 120).unwrap();
        let rule = super::super::gauss_rule(&mp, 120).unwrap();
        let b = discretized_basis("check", &rule.nodes, &rule.log_weights, 40, Weight::sech()).unwrap();
        for k in 1..=40 {
            assert!((b.off[k] - k as f64).abs() < 1e-9 * k as f64, "k={k}: {}", b.off[k]);
        }
    }

    #[test]
    fn two_sided_exp_basis_is_orthonormal() {
        let b = two_sided_exp_basis(30).unwrap();
        // first recurrence coefficient: b_1² = ∫x² dμ₁ = 2
        assert!((b.off[1] - 2f64.sqrt()).abs() < 1e-12);
        let w = Weight::two_sided_exp();
        for (j, k) in [(0usize, 0usize), (3, 3), (5, 7), (12, 12), (20, 22)] {
            let v = w
                .expect(
                    |x| {
                        let p = b.orthonormal_values(x, 23);
                        p[j] * p[k]
                    },
                    &[],
                    Tolerance::new(1e-13, 1e-12),
                )
                .unwrap()
                .value;
            let e = if j == k { 1.0 } else { 0.0 };
            assert!((v - e).abs() < 1e-9, "({j},{k}): {v}");
        }
    }
}
