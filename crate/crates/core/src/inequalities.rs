//! Elementary hyperbolic inequalities as pointwise checks, and Poincaré
//! constants of one-dimensional weights by a finite-difference spectral gap.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::measures::{log_weight, Weight, WeightKind};
use crate::quad::Tolerance;
use crate::tridiag;

/// One pointwise inequality lhs ≤ rhs checked over a grid.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    /// Point with the smallest margin.
    pub worst_point: f64,
    /// min (rhs − lhs) over the grid.
    pub margin: f64,
    pub pass: bool,
}

fn run_check(name: &str, points: impl Iterator<Item = f64>, sides: impl Fn(f64) -> (f64, f64)) -> CheckRow {
    let mut worst = f64::INFINITY;
    let mut at = f64::NAN;
    for x in points {
        let (l, r) = sides(x);
        let m = r - l;
        if !(m >= worst) {
            worst = m;
            at = x;
        }
    }
    CheckRow {
        name: name.to_string(),
        worst_point: at,
        margin: worst,
        // equality cases (u = 0, x = 0) sit at rounding distance from zero
        pass: worst >= -4.0 * f64::EPSILON,
    }
}

/// (cosh α − 1)/(α sinh α) = tanh(α/2)/α, with the limit 1/2 at 0.
pub fn cosh_ratio(alpha: f64) -> f64 {
    let a = alpha.abs();
    if a < 1e-4 {
        0.5 - a * a / 24.0
    } else {
        (0.5 * a).tanh() / a
    }
}

/// (cosh α − 1)/α², with the limit 1/2 at 0.
pub fn cosh_minus_one_over_square(alpha: f64) -> f64 {
    let a = alpha.abs();
    if a < 1e-4 {
        0.5 + a * a / 24.0
    } else {
        // cosh a − 1 = 2 sinh²(a/2)
        let s = (0.5 * a).sinh() / a;
        2.0 * s * s
    }
}

/// Pointwise checks on the α grid, plus the trigonometric helpers on fixed grids.
pub fn hyperbolic_checks(grid: &[f64]) -> Vec<CheckRow> {
    let g = || grid.iter().copied();
    let m = grid.len().max(2);
    let us = move || (0..m).map(move |j| -FRAC_PI_4 + FRAC_PI_2 * j as f64 / (m - 1) as f64);
    let xs = move || (0..m).map(move |j| FRAC_PI_2 * j as f64 / (m - 1) as f64);
    vec![
        run_check("cosh_ratio_lower", g(), |a| (1.0 / (2.0 * (1.0 + a.abs())), cosh_ratio(a))),
        run_check("cosh_ratio_upper", g(), |a| (cosh_ratio(a), 0.5)),
        run_check("cosh_quadratic", g(), |a| {
            // both sides divided by cosh α
            let lhs = cosh_minus_one_over_square(a) / a.cosh();
            (lhs, 2.0 / (1.0 + a * a))
        }),
        run_check("cos_linear", us(), |u| (1.0 - 4.0 * u.abs() / PI, (2.0 * u).cos())),
        run_check("sin_jordan", xs(), |x| (2.0 * x / PI, x.sin())),
    ]
}

/// 10⁴ points on |α| ≤ 50 avoiding 0.
pub fn default_alpha_grid() -> Vec<f64> {
    (0..10_000).map(|j| -50.0 + 100.0 * (j as f64 + 0.5) / 10_000.0).collect()
}

pub fn checks_csv(rows: &[CheckRow]) -> String {
    let mut s = String::from("check_name,worst_point,margin,pass\n");
    for r in rows {
        let _ = writeln!(s, "{},{:.16e},{:.16e},{}", r.name, r.worst_point, r.margin, r.pass);
    }
    s
}

// ---------------------------------------------------------------------------
// Poincaré constants

#[derive(Debug, Clone)]
pub struct PoincareEstimate {
    pub weight: String,
    pub truncation: f64,
    pub points: usize,
    /// 1/λ₁ on [−X, X] with M points.
    pub raw: f64,
    /// 1/λ₁ on [−2X, 2X] with 2M − 1 points (same spacing).
    pub wide: f64,
    /// Extrapolation of the two in 1/X².
    pub estimate: f64,
    /// the extrapolation moves the wide value by at most 2%
    pub converged: bool,
}

pub const DEFAULT_TRUNCATION: f64 = 40.0;
pub const DEFAULT_POINTS: usize = 8001;

/// Second-smallest eigenvalue of the discretized form ∫(f′)²dw against Var_w(f).
fn spectral_gap(w: &Weight, x: f64, m: usize) -> Result<f64> {
    let h = 2.0 * x / (m - 1) as f64;
    let node = |i: usize| -x + i as f64 * h;
    let ld: Vec<f64> = (0..m).map(|i| w.log_density(node(i)).unwrap_or(f64::NEG_INFINITY)).collect();
    let lmid: Vec<f64> = (0..m - 1)
        .map(|i| w.log_density(node(i) + 0.5 * h).unwrap_or(f64::NEG_INFINITY))
        .collect();
    if ld.iter().any(|l| !l.is_finite()) {
        return Err(Error::Domain(format!(
            "weight '{}' vanishes inside [−{x}, {x}]",
            w.name()
        )));
    }
    let h2 = h * h;
    // B^{−1/2} A B^{−1/2} with A the stiffness form and B = diag(ρ_i h)
    let mut diag = vec![0.0; m];
    let mut off = vec![0.0; m - 1];
    for i in 0..m - 1 {
        let left = (lmid[i] - ld[i]).exp() / h2;
        let right = (lmid[i] - ld[i + 1]).exp() / h2;
        diag[i] += left;
        diag[i + 1] += right;
        off[i] = -(lmid[i] - 0.5 * (ld[i] + ld[i + 1])).exp() / h2;
    }
    tridiag::eigenvalue(&diag, &off, 1)
}

/// C_P(w) from the spectral gap on [−X, X] and [−2X, 2X].
///
/// For weights with exponential tails the gap can sit at the bottom of the
/// essential spectrum, where truncation converges only like 1/X²; the two
/// windows are combined by Richardson extrapolation in 1/X².
pub fn poincare_estimate(w: &Weight, x: f64, m: usize) -> Result<PoincareEstimate> {
    if !(x > 0.0) || m < 5 {
        return Err(Error::Precondition("need X > 0 and at least 5 grid points".into()));
    }
    let raw = 1.0 / spectral_gap(w, x, m)?;
    let wide = 1.0 / spectral_gap(w, 2.0 * x, 2 * m - 1)?;
    let estimate = (4.0 * wide - raw) / 3.0;
    Ok(PoincareEstimate {
        weight: w.name().to_string(),
        truncation: x,
        points: m,
        raw,
        wide,
        estimate,
        converged: ((estimate - wide) / estimate).abs() <= 0.02,
    })
}

/// 4C(1 + ½ log⁺(4C/e))².
pub fn perturbation_bound(cp: f64) -> f64 {
    let l = (4.0 * cp / std::f64::consts::E).ln().max(0.0);
    4.0 * cp * (1.0 + 0.5 * l).powi(2)
}

#[derive(Debug, Clone, Copy)]
pub struct PerturbationCheck {
    /// C_P(w)
    pub base: f64,
    /// C_P of the log²(e+|x|)-perturbed weight
    pub perturbed: f64,
    pub bound: f64,
    pub ok: bool,
}

/// The weight with density ∝ log²(e+|x|) ρ(x).
pub fn log_perturbation(w: &Weight) -> Result<Weight> {
    if w.kind() == WeightKind::Sech && w.scale() == 1.0 {
        return Ok(Weight::log_perturbed_sech());
    }
    let z = w.expect(log_weight, &w.breakpoints(), Tolerance::new(1e-300, 1e-13))?.value;
    let lz = z.ln();
    let base = w.clone();
    Ok(Weight::custom(
        &format!("log2-{}", w.name()),
        move |x| base.log_density(x).unwrap_or(f64::NEG_INFINITY) + log_weight(x).ln() - lz,
        w.support(),
        w.is_symmetric(),
    ))
}

pub fn poincare_perturbation_check(w: &Weight) -> Result<PerturbationCheck> {
    let base = poincare_estimate(w, DEFAULT_TRUNCATION, DEFAULT_POINTS)?.estimate;
    let tilde = log_perturbation(w)?;
    let perturbed = poincare_estimate(&tilde, DEFAULT_TRUNCATION, DEFAULT_POINTS)?.estimate;
    let bound = perturbation_bound(base);
    Ok(PerturbationCheck {
        base,
        perturbed,
        bound,
        ok: perturbed <= bound,
    })
}
