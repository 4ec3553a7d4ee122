use std::fmt::Write as _;

use super::OrthoBasis;
use crate::error::{Error, Result};
use crate::tridiag;

/// Gauss rule for the weight of a basis; total mass 1.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub family: super::Family,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// ln of each weight; finite even where `weights` underflows.
    pub log_weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut acc = crate::dd::Accumulator::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(*x));
        }
        acc.value()
    }

    /// CSV with columns node, weight.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("node,weight\n");
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let _ = writeln!(s, "{x:.16e},{w:.16e}");
        }
        s
    }
}

/// n-point Gauss rule from the Jacobi matrix of `basis`.
///
/// Nodes come from Sturm bisection followed by one Newton correction on p̃_n.
/// Weights are the Christoffel numbers 1/Σ_{k<n} p̃_k(x_i)², equal to the
/// squared first components of the normalized eigenvectors.
pub fn gauss_rule(basis: &OrthoBasis, n: usize) -> Result<GaussRule> {
    if n > basis.degree_cap {
        return Err(Error::Precondition(format!(
            "rule size {n} exceeds the basis degree cap {}",
            basis.degree_cap
        )));
    }
    let (d, e) = basis.jacobi(n)?;
    let mut nodes = tridiag::eigenvalues(d, e)?;
    let (lo, hi) = tridiag::gershgorin(d, e);
    let spread = (hi - lo).abs().max(1.0);
    for i in 0..n {
        let x = nodes[i];
        let step = basis.newton_ratio(x, n);
        let gap_lo = if i > 0 { x - nodes[i - 1] } else { spread };
        let gap_hi = if i + 1 < n { nodes[i + 1] - x } else { spread };
        if step.is_finite() && step.abs() < 1e-3 * gap_lo.min(gap_hi) {
            nodes[i] = x - step;
        }
    }
    for w in nodes.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::Numeric(format!(
                "Gauss nodes not strictly increasing near {} (n = {n})",
                w[0]
            )));
        }
    }
    let log_weights: Vec<f64> = nodes.iter().map(|&x| -basis.ln_christoffel_sum(x, n)).collect();
    let weights = log_weights.iter().map(|l| l.exp()).collect();
    Ok(GaussRule {
        family: basis.family.clone(),
        nodes,
        weights,
        log_weights,
    })
}

/// Same rule with weights from inverse-iteration eigenvectors; used as a cross-check.
pub fn gauss_rule_inverse_iteration(basis: &OrthoBasis, n: usize) -> Result<GaussRule> {
    if n > basis.degree_cap {
        return Err(Error::Precondition(format!(
            "rule size {n} exceeds the basis degree cap {}",
            basis.degree_cap
        )));
    }
    let (d, e) = basis.jacobi(n)?;
    let nodes = tridiag::eigenvalues(d, e)?;
    let mut weights = Vec::with_capacity(n);
    for &x in &nodes {
        let v = tridiag::inverse_iteration(d, e, x)?;
        weights.push(v[0] * v[0]);
    }
    let log_weights = weights.iter().map(|w: &f64| w.ln()).collect();
    Ok(GaussRule {
        family: basis.family.clone(),
        nodes,
        weights,
        log_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{laguerre_basis, mp_recurrence};
    use super::*;

    #[test]
    fn small_rules() {
        let b = mp_recurrence(1, 10).unwrap();
        let r1 = gauss_rule(&b, 1).unwrap();
        assert!(r1.nodes[0].abs() < 1e-15 && (r1.weights[0] - 1.0).abs() < 1e-15);
        let r2 = gauss_rule(&b, 2).unwrap();
        assert!((r2.nodes[0] + 1.0).abs() < 1e-14 && (r2.nodes[1] - 1.0).abs() < 1e-14);
        assert!((r2.weights[0] - 0.5).abs() < 1e-14 && (r2.weights[1] - 0.5).abs() < 1e-14);
        assert!(gauss_rule(&b, 11).is_err());
    }

    #[test]
    fn second_moment_with_forty_nodes() {
        let b = mp_recurrence(1, 40).unwrap();
        let r = gauss_rule(&b, 40).unwrap();
        assert!((r.integrate(|x| x * x) - 1.0).abs() < 1e-12);
        assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn christoffel_and_eigenvector_weights_agree() {
        let b = mp_recurrence(2, 30).unwrap();
        let a = gauss_rule(&b, 30).unwrap();
        let c = gauss_rule_inverse_iteration(&b, 30).unwrap();
        for i in 0..30 {
            assert!((a.nodes[i] - c.nodes[i]).abs() < 1e-11 * (1.0 + a.nodes[i].abs()));
            assert!((a.weights[i] - c.weights[i]).abs() < 1e-9 * a.weights[i] + 1e-300, "i={i}");
        }
    }

    #[test]
    fn laguerre_rule_integrates_factorial_moments() {
        let b = laguerre_basis(30).unwrap();
        let r = gauss_rule(&b, 20).unwrap();
        let mut fact = 1.0;
        for p in 0..=39 {
            if p > 0 {
                fact *= p as f64;
            }
            let m = r.integrate(|x| x.powi(p));
            assert!((m - fact).abs() < 1e-10 * fact, "p={p}");
        }
    }

    #[test]
    fn nodes_interlace() {
        let b = mp_recurrence(1, 80).unwrap();
        let r1 = gauss_rule(&b, 40).unwrap();
        let r2 = gauss_rule(&b, 41).unwrap();
        for i in 0..40 {
            assert!(r2.nodes[i] < r1.nodes[i] && r1.nodes[i] < r2.nodes[i + 1]);
        }
    }
}
