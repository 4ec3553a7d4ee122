//! Probability weights on the real line.
//!
//! Every density is evaluated through its logarithm so that tails far beyond
//! the f64 exponent range stay finite.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_line, Estimate, Tolerance};
use crate::special::{ln_cosh, ln_factorial, ln_gamma, ln_x_over_sinh};

/// Which weight of the family this is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// μ₁ = e^{-|x|}/2.
    TwoSidedExp,
    /// ν = 1/(2cosh(πx/2)).
    Sech,
    /// ν_ℓ, the ℓ-fold convolution of ν.
    NuEll(u32),
    /// μ̃₁ = e^{-x} on [0, ∞).
    HalfExp,
    /// ν̃ ∝ log²(e+|x|) ν.
    LogPerturbedSech,
    Custom,
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
struct CustomParts {
    log_density: Option<ScalarFn>,
    mgf: Option<(ScalarFn, f64, f64)>,
    symmetric: bool,
}

/// A probability weight, optionally dilated: density λρ(λx).
#[derive(Clone)]
pub struct Weight {
    kind: WeightKind,
    name: String,
    scale: f64,
    base_support: (f64, f64),
    custom: Option<CustomParts>,
    ln_normalizer: f64,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weight")
            .field("kind", &self.kind)
            .field("name", &self.name)
            .field("scale", &self.scale)
            .finish()
    }
}

const WHOLE_LINE: (f64, f64) = (f64::NEG_INFINITY, f64::INFINITY);

impl Weight {
    fn builtin(kind: WeightKind, name: &str, support: (f64, f64)) -> Self {
        Self {
            kind,
            name: name.to_string(),
            scale: 1.0,
            base_support: support,
            custom: None,
            ln_normalizer: 0.0,
        }
    }

    pub fn two_sided_exp() -> Self {
        Self::builtin(WeightKind::TwoSidedExp, "two-sided-exp", WHOLE_LINE)
    }

    pub fn sech() -> Self {
        Self::builtin(WeightKind::Sech, "sech", WHOLE_LINE)
    }

    pub fn nu_ell(ell: u32) -> Result<Self> {
        if ell == 0 {
            return Err(Error::Domain("ν_ℓ needs ℓ ≥ 1".into()));
        }
        Ok(Self::builtin(WeightKind::NuEll(ell), &format!("nu{ell}"), WHOLE_LINE))
    }

    pub fn half_exp() -> Self {
        Self::builtin(WeightKind::HalfExp, "half-exp", (0.0, f64::INFINITY))
    }

    /// ν̃ with its normalizer computed once here.
    pub fn log_perturbed_sech() -> Self {
        let mut w = Self::builtin(WeightKind::LogPerturbedSech, "log-perturbed-sech", WHOLE_LINE);
        let sech = Self::sech();
        let z = sech
            .expect(|x| log_weight(x), &[], Tolerance::new(1e-15, 1e-14))
            .expect("normalizer integral of a fixed smooth integrand")
            .value;
        w.ln_normalizer = z.ln();
        w
    }

    /// Weight from a log-density; `symmetric` declares ρ(x) = ρ(−x).
    pub fn custom(
        name: &str,
        log_density: impl Fn(f64) -> f64 + Send + Sync + 'static,
        support: (f64, f64),
        symmetric: bool,
    ) -> Self {
        Self {
            kind: WeightKind::Custom,
            name: name.to_string(),
            scale: 1.0,
            base_support: support,
            custom: Some(CustomParts {
                log_density: Some(Arc::new(log_density)),
                mgf: None,
                symmetric,
            }),
            ln_normalizer: 0.0,
        }
    }

    /// A custom weight known only through its moment generating function.
    pub fn custom_mgf_only(
        name: &str,
        mgf: impl Fn(f64) -> f64 + Send + Sync + 'static,
        alpha_range: (f64, f64),
    ) -> Self {
        Self {
            kind: WeightKind::Custom,
            name: name.to_string(),
            scale: 1.0,
            base_support: WHOLE_LINE,
            custom: Some(CustomParts {
                log_density: None,
                mgf: Some((Arc::new(mgf), alpha_range.0, alpha_range.1)),
                symmetric: false,
            }),
            ln_normalizer: 0.0,
        }
    }

    /// Attach a closed-form mgf valid on the open interval `alpha_range` (custom weights only).
    pub fn with_mgf(
        mut self,
        mgf: impl Fn(f64) -> f64 + Send + Sync + 'static,
        alpha_range: (f64, f64),
    ) -> Self {
        if let Some(c) = self.custom.as_mut() {
            c.mgf = Some((Arc::new(mgf), alpha_range.0, alpha_range.1));
        }
        self
    }

    /// Standard Gaussian as a custom weight.
    pub fn gaussian() -> Self {
        let c = 0.5 * (2.0 * PI).ln();
        Self::custom("gaussian", move |x| -0.5 * x * x - c, WHOLE_LINE, true)
            .with_mgf(|a| (0.5 * a * a).exp(), WHOLE_LINE)
    }

    /// Look a weight up by its command-line name.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "sech" | "nu" | "nu1" => Ok(Self::sech()),
            "two-sided-exp" | "mu1" => Ok(Self::two_sided_exp()),
            "half-exp" => Ok(Self::half_exp()),
            "log-perturbed-sech" => Ok(Self::log_perturbed_sech()),
            "gaussian" => Ok(Self::gaussian()),
            other => {
                if let Some(rest) = other.strip_prefix("nu") {
                    if let Ok(ell) = rest.parse::<u32>() {
                        return Self::nu_ell(ell);
                    }
                }
                Err(Error::Domain(format!("unknown weight '{other}'")))
            }
        }
    }

    /// The dilated weight with density λρ(λx).
    pub fn dilate(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Domain(format!("dilation factor {lambda} must be positive")));
        }
        let mut w = self.clone();
        w.scale *= lambda;
        w.name = format!("{}@{}", self.name, w.scale);
        Ok(w)
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn support(&self) -> (f64, f64) {
        (self.base_support.0 / self.scale, self.base_support.1 / self.scale)
    }

    pub fn is_symmetric(&self) -> bool {
        match self.kind {
            WeightKind::HalfExp => false,
            WeightKind::Custom => self.custom.as_ref().is_some_and(|c| c.symmetric),
            _ => true,
        }
    }

    /// Points where the density is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self.kind {
            WeightKind::TwoSidedExp | WeightKind::LogPerturbedSech | WeightKind::HalfExp => vec![0.0],
            _ => Vec::new(),
        }
    }

    fn base_log_density(&self, x: f64) -> Result<f64> {
        Ok(match self.kind {
            WeightKind::TwoSidedExp => -x.abs() - std::f64::consts::LN_2,
            WeightKind::Sech | WeightKind::NuEll(1) => -std::f64::consts::LN_2 - ln_cosh(FRAC_PI_2 * x),
            WeightKind::NuEll(2) => -PI.ln() + ln_x_over_sinh(FRAC_PI_2 * x),
            WeightKind::NuEll(ell) => {
                let l = ell as f64;
                let g = ln_gamma(Complex64::new(0.5 * l, 0.5 * x)).re;
                (l - 1.0) * std::f64::consts::LN_2 + 2.0 * g - (2.0 * PI).ln() - ln_factorial(ell as u64 - 1)
            }
            WeightKind::HalfExp => -x,
            WeightKind::LogPerturbedSech => {
                2.0 * (std::f64::consts::E + x.abs()).ln().ln() - std::f64::consts::LN_2
                    - ln_cosh(FRAC_PI_2 * x)
                    - self.ln_normalizer
            }
            WeightKind::Custom => {
                let c = self.custom.as_ref().expect("custom weight carries its parts");
                match &c.log_density {
                    Some(f) => f(x),
                    None => {
                        return Err(Error::Unsupported(format!(
                            "weight '{}' has no density",
                            self.name
                        )))
                    }
                }
            }
        })
    }

    pub fn has_density(&self) -> bool {
        !matches!(&self.custom, Some(CustomParts { log_density: None, .. }))
    }

    /// Natural log of the density at `x`.
    pub fn log_density(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.support();
        if x.is_nan() || x < lo || x > hi {
            return Err(Error::Domain(format!("x = {x} outside the support of {}", self.name)));
        }
        Ok(self.scale.ln() + self.base_log_density(self.scale * x)?)
    }

    pub fn density(&self, x: f64) -> Result<f64> {
        Ok(self.log_density(x)?.exp())
    }

    /// Density that is zero outside the support; for use inside integrands.
    pub fn density_or_zero(&self, x: f64) -> f64 {
        self.density(x).unwrap_or(0.0)
    }

    /// Closed-form ∫ e^{αx} dw.
    pub fn mgf(&self, alpha: f64) -> Result<f64> {
        let a = alpha / self.scale;
        let in_range = |lo: f64, hi: f64| -> Result<()> {
            if a > lo && a < hi {
                Ok(())
            } else {
                Err(Error::Domain(format!(
                    "α = {alpha} outside the mgf domain of {}",
                    self.name
                )))
            }
        };
        match self.kind {
            WeightKind::Sech => {
                in_range(-FRAC_PI_2, FRAC_PI_2)?;
                Ok(1.0 / a.cos())
            }
            WeightKind::NuEll(ell) => {
                in_range(-FRAC_PI_2, FRAC_PI_2)?;
                Ok(a.cos().powi(-(ell as i32)))
            }
            WeightKind::TwoSidedExp => {
                in_range(-1.0, 1.0)?;
                Ok(1.0 / (1.0 - a * a))
            }
            WeightKind::HalfExp => {
                in_range(f64::NEG_INFINITY, 1.0)?;
                Ok(1.0 / (1.0 - a))
            }
            WeightKind::LogPerturbedSech => Err(Error::Unsupported(format!(
                "no closed-form mgf for {}",
                self.name
            ))),
            WeightKind::Custom => match self.custom.as_ref().and_then(|c| c.mgf.clone()) {
                Some((m, lo, hi)) => {
                    in_range(lo, hi)?;
                    Ok(m(a))
                }
                None => Err(Error::Unsupported(format!("no closed-form mgf for {}", self.name))),
            },
        }
    }

    /// ∫ g dw over the support, truncated where the integrand has decayed.
    pub fn expect<F: Fn(f64) -> f64>(&self, g: F, breakpoints: &[f64], tol: Tolerance) -> Result<Estimate> {
        if !self.has_density() {
            return Err(Error::Unsupported(format!("weight '{}' has no density", self.name)));
        }
        let (lo, hi) = self.support();
        let mut br = self.breakpoints();
        br.extend_from_slice(breakpoints);
        let integrand = |x: f64| {
            let d = self.density_or_zero(x);
            if d == 0.0 {
                0.0
            } else {
                g(x) * d
            }
        };
        integrate_line(integrand, lo, hi, 4.0 / self.scale, &br, tol)
    }

    /// ∫ e^{αx} dw by quadrature, with the exponent folded into the log-density.
    pub fn mgf_numeric(&self, alpha: f64, tol: Tolerance) -> Result<Estimate> {
        if !self.has_density() {
            return Err(Error::Unsupported(format!("weight '{}' has no density", self.name)));
        }
        let (lo, hi) = self.support();
        let integrand = |x: f64| match self.log_density(x) {
            Ok(l) => (alpha * x + l).exp(),
            Err(_) => 0.0,
        };
        integrate_line(integrand, lo, hi, 4.0 / self.scale, &self.breakpoints(), tol)
    }

    /// ∫ x^p dw by quadrature; odd moments of symmetric weights are exactly 0.
    pub fn moment(&self, p: u32) -> Result<f64> {
        if p % 2 == 1 && self.is_symmetric() {
            return Ok(0.0);
        }
        let e = self.expect(|x| x.powi(p as i32), &[], Tolerance::new(0.0, 1e-13))?;
        if !e.value.is_finite() {
            return Err(Error::Integration {
                message: format!("moment {p} diverges"),
                estimate: e.value,
                error: e.error,
            });
        }
        Ok(e.value)
    }
}

/// log²(e + |x|).
pub fn log_weight(x: f64) -> f64 {
    let l = (std::f64::consts::E + x.abs()).ln();
    l * l
}

/// Pointwise check of 1/(2cosh x) ≤ e^{-|x|} ≤ 1/cosh x; returns the smallest
/// slack of the two inequalities in log space over the grid.
pub fn sandwich_margin(grid: &[f64]) -> f64 {
    let mut worst = f64::INFINITY;
    for &x in grid {
        let mid = -x.abs();
        let lower = -std::f64::consts::LN_2 - ln_cosh(x);
        let upper = -ln_cosh(x);
        worst = worst.min(mid - lower).min(upper - mid);
    }
    worst
}

/// Range of the density ratio μ₁ / σ over the grid, where σ is ν dilated so
/// that its density is 1/(π cosh x).
pub fn comparability_ratio(grid: &[f64]) -> Result<(f64, f64)> {
    let mu = Weight::two_sided_exp();
    let sigma = Weight::sech().dilate(2.0 / PI)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &x in grid {
        let r = (mu.log_density(x)? - sigma.log_density(x)?).exp();
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo, hi))
}
