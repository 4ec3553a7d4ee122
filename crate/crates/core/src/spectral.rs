//! Spectral expansions f = Σ f_k P_k, tail errors, weighted coefficient sums,
//! the Γ_φ machinery, and both sides of the log² coefficient inequality.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use crate::dd::Accumulator;
use crate::error::{Error, Result};
use crate::function::{Dilated, RealFunction};
use crate::measures::{log_weight, Weight};
use crate::orthopoly::{mp_recurrence, two_sided_exp_basis, Family, GaussRule, OrthoBasis};
use crate::quad::{find_cutoff, panel_nodes, tanh_sinh_unit, GaussLegendre, Tolerance};
use crate::special::harmonic;
use crate::tridiag;

/// Coefficients of a function in an orthogonal basis.
#[derive(Debug, Clone)]
pub struct SpectralExpansion {
    pub family: Family,
    /// Native coefficients f_k, k = 0..=N.
    pub coeffs: Vec<f64>,
    pub norms_sq: Vec<f64>,
    /// Number of quadrature nodes used for the coefficients.
    pub rule_size: usize,
    /// Half-width of the integration range actually covered.
    pub truncation: f64,
    /// ‖f‖² in L²(w), computed independently by adaptive quadrature.
    pub l2_norm_sq: f64,
}

impl SpectralExpansion {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// f_k² h_k.
    pub fn energy(&self, k: usize) -> f64 {
        self.coeffs[k] * self.coeffs[k] * self.norms_sq[k]
    }

    /// ‖f‖² − Σ_{k≤N} f_k² h_k: the mass not captured by the computed coefficients.
    pub fn parseval_gap(&self) -> f64 {
        let mut acc = Accumulator::new();
        acc.add(self.l2_norm_sq);
        for k in 0..self.coeffs.len() {
            acc.add(-self.energy(k));
        }
        acc.value()
    }

    /// E_n by the complement ‖f‖² − Σ_{k≤n} f_k² h_k (no truncation at N).
    pub fn tail_by_complement(&self, n: usize) -> f64 {
        let mut acc = Accumulator::new();
        acc.add(self.l2_norm_sq);
        for k in 0..=n.min(self.degree()) {
            acc.add(-self.energy(k));
        }
        acc.value()
    }

    /// CSV with columns k, f_k, tail (E_k).
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,f_k,tail\n");
        for k in 0..self.coeffs.len() {
            let _ = writeln!(s, "{k},{:.16e},{:.16e}", self.coeffs[k], self.tail_by_complement(k));
        }
        s
    }
}

fn l2_norm_sq(f: &dyn RealFunction, weight: &Weight) -> Result<f64> {
    let br = f.breakpoints();
    let e = weight.expect(
        |x| {
            let v = f.value(x);
            v * v
        },
        &br,
        Tolerance::new(1e-300, 1e-13),
    )?;
    Ok(e.value)
}

fn accumulate(
    f: &dyn RealFunction,
    basis: &OrthoBasis,
    n: usize,
    nodes: &[f64],
    ln_weights: &[f64],
) -> Result<Vec<f64>> {
    let mut acc = vec![Accumulator::new(); n + 1];
    let mut vals = vec![0.0; n + 1];
    for (&x, &lw) in nodes.iter().zip(ln_weights) {
        if lw == f64::NEG_INFINITY {
            continue;
        }
        let fx = f.value(x);
        if !fx.is_finite() {
            return Err(Error::Evaluation(x));
        }
        if fx == 0.0 {
            continue;
        }
        basis.orthonormal_scaled(x, lw, &mut vals);
        for (a, v) in acc.iter_mut().zip(&vals) {
            a.add_product(fx, *v);
        }
    }
    Ok(acc
        .iter()
        .enumerate()
        .map(|(k, a)| basis.native_coefficient(k, a.value()))
        .collect())
}

/// f_k for k = 0..=N by an n-point Gauss rule of the basis weight.
pub fn expand(f: &dyn RealFunction, basis: &OrthoBasis, n: usize, rule: &GaussRule) -> Result<SpectralExpansion> {
    if rule.len() < 2 * n {
        return Err(Error::Precondition(format!(
            "rule of size {} is too small for {} coefficients (needs ≥ {})",
            rule.len(),
            n + 1,
            2 * n
        )));
    }
    if n > basis.degree_cap {
        return Err(Error::Precondition(format!(
            "N = {n} exceeds the basis degree cap {}",
            basis.degree_cap
        )));
    }
    let coeffs = accumulate(f, basis, n, &rule.nodes, &rule.log_weights)?;
    let truncation = rule
        .nodes
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(SpectralExpansion {
        family: basis.family.clone(),
        coeffs,
        norms_sq: basis.norms_sq[..=n].to_vec(),
        rule_size: rule.len(),
        truncation,
        l2_norm_sq: l2_norm_sq(f, &basis.weight)?,
    })
}

/// Integration range for panel expansions on one side of the origin.
fn panel_extent(f: &dyn RealFunction, basis: &OrthoBasis, n: usize, direction: f64) -> Result<f64> {
    let w = &basis.weight;
    let (lo, hi) = w.support();
    let bound = if direction > 0.0 { hi } else { -lo };
    if bound == 0.0 {
        return Ok(0.0);
    }
    // |p̃_k| √ρ ≤ √(n+1) on the support, so |f| √ρ controls every integrand.
    let g = |x: f64| {
        let v = f.value(x).abs();
        if v == 0.0 {
            return 0.0;
        }
        (v.ln() + 0.5 * w.log_density(x).unwrap_or(f64::NEG_INFINITY)).exp()
    };
    let xf = find_cutoff(&g, 0.0, direction, 4.0, 1e-22)?.abs();
    // Beyond the largest zero of p̃_{n+1} every p̃_k² ρ decays.
    let (d, e) = basis.jacobi(n + 1)?;
    let top = if direction > 0.0 {
        tridiag::eigenvalue(d, e, n)?
    } else {
        -tridiag::eigenvalue(d, e, 0)?
    };
    let mut xb = top.abs() * 1.05 + 5.0;
    let mut vals = vec![0.0; n + 1];
    for _ in 0..200 {
        let x = direction * xb;
        let lr = match w.log_density(x) {
            Ok(l) => l,
            Err(_) => break,
        };
        basis.orthonormal_scaled(x, 0.5 * lr, &mut vals);
        let m = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if m < 1e-20 {
            break;
        }
        xb *= 1.1;
    }
    Ok(xf.min(xb).min(bound))
}

/// f_k for k = 0..=N by composite Gauss–Legendre panels against the weight
/// density; robust for kinks (breakpoints) and narrow features.
pub fn expand_panels(f: &dyn RealFunction, basis: &OrthoBasis, n: usize) -> Result<SpectralExpansion> {
    if n > basis.degree_cap {
        return Err(Error::Precondition(format!(
            "N = {n} exceeds the basis degree cap {}",
            basis.degree_cap
        )));
    }
    let w = &basis.weight;
    let right = panel_extent(f, basis, n, 1.0)?;
    let left = panel_extent(f, basis, n, -1.0)?;
    // local zero spacing of p̃_{n+1} near the origin
    let (d, e) = basis.jacobi(n + 1)?;
    let centre = if left == 0.0 { 0.5 * right.min(4.0) } else { 0.0 };
    let zeros = tridiag::sturm_count(d, e, centre + 1.0) - tridiag::sturm_count(d, e, centre - 1.0);
    let gap = 2.0 / (zeros.max(1) as f64);
    let width = 0.5f64.min(4.0 * gap).min(0.5 * f.scale_hint());
    let mut br = f.breakpoints();
    br.extend(w.breakpoints());
    br.push(0.0);
    let rule = GaussLegendre::panel_rule();
    let (xs, ws) = panel_nodes(-left, right, &br, width, rule);
    let lw: Vec<f64> = xs
        .iter()
        .zip(&ws)
        .map(|(&x, &q)| match w.log_density(x) {
            Ok(l) => q.ln() + l,
            Err(_) => f64::NEG_INFINITY,
        })
        .collect();
    let coeffs = accumulate(f, basis, n, &xs, &lw)?;
    Ok(SpectralExpansion {
        family: basis.family.clone(),
        coeffs,
        norms_sq: basis.norms_sq[..=n].to_vec(),
        rule_size: xs.len(),
        truncation: left.max(right),
        l2_norm_sq: l2_norm_sq(f, w)?,
    })
}

/// E_n = Σ_{k>n} f_k² h_k plus the uncaptured Parseval mass.
pub fn tail_error(e: &SpectralExpansion, n: usize) -> Result<f64> {
    if n >= e.degree() {
        return Err(Error::Precondition(format!(
            "tail index {n} must be below N = {}",
            e.degree()
        )));
    }
    let mut acc = Accumulator::new();
    for k in n + 1..=e.degree() {
        acc.add(e.energy(k));
    }
    Ok(acc.value() + e.parseval_gap().max(0.0))
}

/// Σ_{k≥k_min} seq(k) f_k² h_k over the computed coefficients.
#[derive(Debug, Clone, Copy)]
pub struct WeightedSum {
    pub value: f64,
    /// seq(N) times the uncaptured Parseval mass; a bound when seq is nondecreasing
    /// and the missing energy sits at indices with seq(k) ≤ seq(N)·(k/N)… only indicative otherwise.
    pub tail_estimate: f64,
}

pub fn weighted_sum(e: &SpectralExpansion, seq: &dyn Fn(usize) -> f64, k_min: usize) -> Result<WeightedSum> {
    let mut acc = Accumulator::new();
    for k in k_min..=e.degree() {
        let s = seq(k);
        if s < 0.0 {
            return Err(Error::Precondition(format!("sequence is negative at k = {k}")));
        }
        acc.add(s * e.energy(k));
    }
    Ok(WeightedSum {
        value: acc.value(),
        tail_estimate: seq(e.degree()) * e.parseval_gap().max(0.0),
    })
}

/// log²(e + k).
pub fn log2_seq(k: usize) -> f64 {
    log_weight(k as f64)
}

// ---------------------------------------------------------------------------
// Weight profiles

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileKind {
    /// φ ≡ 1.
    Constant,
    /// φ = log² ε.
    LogSquared,
    /// φ = ε^{−β}, 0 < β < 1.
    Power(f64),
    Custom,
}

type Phi = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A decreasing ε-weight φ on (0,1) with antiderivative Φ and the sequence Γ_φ.
#[derive(Clone)]
pub struct WeightProfile {
    kind: ProfileKind,
    name: String,
    phi: Option<Phi>,
    decreasing: bool,
    table: Arc<OnceLock<PhiTable>>,
}

impl std::fmt::Debug for WeightProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeightProfile").field("kind", &self.kind).field("name", &self.name).finish()
    }
}

impl WeightProfile {
    fn new(kind: ProfileKind, name: String, phi: Option<Phi>, decreasing: bool) -> Self {
        Self {
            kind,
            name,
            phi,
            decreasing,
            table: Arc::new(OnceLock::new()),
        }
    }

    pub fn constant() -> Self {
        Self::new(ProfileKind::Constant, "one".into(), None, true)
    }

    pub fn log_squared() -> Self {
        Self::new(ProfileKind::LogSquared, "log2".into(), None, true)
    }

    pub fn power(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::Domain(format!("ε^(−β) needs 0 < β < 1, got {beta}")));
        }
        Ok(Self::new(ProfileKind::Power(beta), format!("eps^-{beta}"), None, true))
    }

    /// Arbitrary φ; `decreasing` is the caller's declaration and is spot-checked.
    pub fn custom(name: &str, phi: impl Fn(f64) -> f64 + Send + Sync + 'static, decreasing: bool) -> Self {
        Self::new(ProfileKind::Custom, name.to_string(), Some(Arc::new(phi)), decreasing)
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// φ(ε), zero outside (0, 1).
    pub fn phi(&self, eps: f64) -> f64 {
        if !(eps > 0.0 && eps < 1.0) {
            return 0.0;
        }
        match self.kind {
            ProfileKind::Constant => 1.0,
            ProfileKind::LogSquared => {
                let l = eps.ln();
                l * l
            }
            ProfileKind::Power(b) => eps.powf(-b),
            ProfileKind::Custom => (self.phi.as_ref().expect("custom profile has φ"))(eps),
        }
    }

    /// Declared monotonicity, confirmed on a log-spaced sample.
    pub fn is_decreasing(&self) -> bool {
        if !self.decreasing {
            return false;
        }
        let mut prev = f64::INFINITY;
        for j in 0..=400 {
            let eps = (-(j as f64) * 0.1).exp() * (1.0 - 1e-9);
            let _ = eps;
            let e = 1e-12f64.powf(1.0 - j as f64 / 400.0) * (1.0 - 1e-9);
            let v = self.phi(e);
            if v > prev * (1.0 + 1e-12) + 1e-300 {
                return false;
            }
            prev = v;
        }
        true
    }

    /// Φ(t) = ∫_0^t φ, with Φ = 0 for t ≤ 0 and Φ(t) = Φ(1) for t ≥ 1.
    pub fn big_phi(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return 0.0;
        }
        let t = t.min(1.0);
        match self.kind {
            ProfileKind::Constant => t,
            ProfileKind::LogSquared => {
                let l = t.ln();
                t * (l * l - 2.0 * l + 2.0)
            }
            ProfileKind::Power(b) => t.powf(1.0 - b) / (1.0 - b),
            ProfileKind::Custom => self.table.get_or_init(|| PhiTable::build(self)).eval(t, self),
        }
    }

    /// Γ_φ(k) = 2k ∫_0^1 (1−ε)^{2k} φ(ε) dε.
    ///
    /// With t = (1−ε)^{2k} the integral becomes ∫_0^1 t^{1/(2k)} φ(1 − t^{1/(2k)}) dt,
    /// evaluated by tanh-sinh with the endpoint complement so that ε is formed
    /// without cancellation.
    pub fn gamma(&self, k: u64) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("Γ_φ(k) needs k ≥ 1".into()));
        }
        let two_k = 2.0 * k as f64;
        let integrand = |t: f64, c: f64| {
            let lt = if t < 0.5 { t.ln() } else { (-c).ln_1p() };
            let root = (lt / two_k).exp();
            let eps = -(lt / two_k).exp_m1();
            root * self.phi(eps)
        };
        let e = tanh_sinh_unit(integrand, 1e-13)?;
        Ok(e.value)
    }

    /// Closed-form Γ_φ(k) where one is known.
    pub fn gamma_closed(&self, k: u64) -> Option<f64> {
        let n = 2 * k;
        let nf = n as f64;
        match self.kind {
            ProfileKind::Constant => Some(nf / (nf + 1.0)),
            ProfileKind::LogSquared => {
                let h1 = harmonic(n + 1);
                let mut h2 = Accumulator::new();
                for j in (1..=n + 1).rev() {
                    h2.add(1.0 / (j as f64 * j as f64));
                }
                Some(nf / (nf + 1.0) * (h1 * h1 + h2.value()))
            }
            _ => None,
        }
    }
}

/// Tabulated Φ for custom profiles: Hermite interpolation of ln Φ in ln t.
struct PhiTable {
    ln_t: Vec<f64>,
    ln_big: Vec<f64>,
    slope: Vec<f64>,
}

const TABLE_LN_MIN: f64 = -300.0;
const TABLE_POINTS: usize = 6001;

impl PhiTable {
    fn build(p: &WeightProfile) -> Self {
        let h = -TABLE_LN_MIN / (TABLE_POINTS - 1) as f64;
        let t0 = TABLE_LN_MIN.exp();
        // ∫_0^{t0} φ = t0 ∫_0^1 φ(t0 s) ds
        let first = t0
            * tanh_sinh_unit(|s, _| p.phi(t0 * s), 1e-13)
                .map(|e| e.value)
                .unwrap_or(0.0);
        let gl = GaussLegendre::new(12);
        let mut ln_t = Vec::with_capacity(TABLE_POINTS);
        let mut ln_big = Vec::with_capacity(TABLE_POINTS);
        let mut slope = Vec::with_capacity(TABLE_POINTS);
        let mut acc = first;
        for j in 0..TABLE_POINTS {
            let lt = TABLE_LN_MIN + j as f64 * h;
            if j > 0 {
                // integrate over [t_{j−1}, t_j] in the variable ln t
                let a = lt - h;
                acc += gl.integrate(a, lt, |s| {
                    let t = s.exp();
                    t * p.phi(t)
                });
            }
            let t = lt.exp();
            ln_t.push(lt);
            ln_big.push(acc.ln());
            slope.push(t * p.phi(t) / acc);
        }
        Self { ln_t, ln_big, slope }
    }

    fn eval(&self, t: f64, p: &WeightProfile) -> f64 {
        let lt = t.ln();
        if lt < TABLE_LN_MIN {
            // below the table: ∫_0^t φ directly
            return t
                * tanh_sinh_unit(|s, _| p.phi(t * s), 1e-13)
                    .map(|e| e.value)
                    .unwrap_or(0.0);
        }
        let h = self.ln_t[1] - self.ln_t[0];
        let pos = ((lt - TABLE_LN_MIN) / h).min((TABLE_POINTS - 1) as f64 - 1e-9);
        let j = pos.floor() as usize;
        let j = j.min(TABLE_POINTS - 2);
        let s = (lt - self.ln_t[j]) / h;
        let (y0, y1) = (self.ln_big[j], self.ln_big[j + 1]);
        let (m0, m1) = (self.slope[j] * h, self.slope[j + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let v = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * m1;
        v.exp()
    }
}

/// Both sides of the bounds φ(1/k)/32 + (k/2)Φ(1/2k) ≤ Γ_φ(k) ≤ 2kΦ(1/k) + φ(1/k).
#[derive(Debug, Clone, Copy)]
pub struct GammaSandwich {
    pub gamma: f64,
    pub lower: f64,
    pub upper: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    pub holds: bool,
}

pub fn gamma_sandwich_check(p: &WeightProfile, k: u64) -> Result<GammaSandwich> {
    if !p.is_decreasing() {
        return Err(Error::Contract(format!("φ '{}' is not decreasing", p.name())));
    }
    let kf = k as f64;
    let g = p.gamma(k)?;
    let inv = 1.0 / kf;
    let lower = p.phi(inv) / 32.0 + 0.5 * kf * p.big_phi(0.5 * inv);
    let upper = 2.0 * kf * p.big_phi(inv) + p.phi(inv);
    Ok(GammaSandwich {
        gamma: g,
        lower,
        upper,
        lower_margin: g - lower,
        upper_margin: upper - g,
        holds: lower <= g && g <= upper,
    })
}

// ---------------------------------------------------------------------------
// Main theorem

/// lhs = Σ_{k≥1} log²(e+k) f_k²,
/// rhs59 = ∫ log²(e+|x|) f² dν + ∫ (f′)² dν,
/// rhs60 = ∫ log²(e+|x|) (f′)² dν.
#[derive(Debug, Clone, Copy)]
pub struct MainTheoremSides {
    pub lhs: f64,
    pub rhs59: f64,
    pub rhs60: f64,
    pub n: usize,
}

impl MainTheoremSides {
    /// lhs / rhs60 (0 when both vanish).
    pub fn ratio60(&self) -> f64 {
        ratio(self.lhs, self.rhs60)
    }

    pub fn ratio59(&self) -> f64 {
        ratio(self.lhs, self.rhs59)
    }
}

fn ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 && a.abs() < 1e-14 {
        0.0
    } else {
        a / b
    }
}

/// Evaluate both sides under ν with the MP(1) basis and N coefficients.
pub fn main_theorem_sides(f: &dyn RealFunction, n: usize) -> Result<MainTheoremSides> {
    if f.derivative(0.0).is_none() {
        return Err(Error::Unsupported("main theorem sides need a derivative".into()));
    }
    let basis = mp_recurrence(1, n + 1)?;
    let e = expand_panels(f, &basis, n)?;
    let lhs = weighted_sum(&e, &log2_seq, 1)?.value;
    let nu = Weight::sech();
    let br = f.breakpoints();
    let tol = Tolerance::new(1e-300, 1e-12);
    let a = nu.expect(|x| log_weight(x) * f.value(x).powi(2), &br, tol)?.value;
    let d = |x: f64| f.derivative(x).unwrap_or(0.0);
    let b = nu.expect(|x| d(x).powi(2), &br, tol)?.value;
    let c = nu.expect(|x| log_weight(x) * d(x).powi(2), &br, tol)?.value;
    Ok(MainTheoremSides {
        lhs,
        rhs59: a + b,
        rhs60: c,
        n,
    })
}

// ---------------------------------------------------------------------------
// Transfer between μ₁ and ν

/// Tail comparison c·Tail_σ(n) ≤ Tail_μ₁(n) ≤ C·Tail_σ(n), with σ the dilate of ν
/// of density 1/(π cosh x) and (c, C) = (π/4, π/2) the density-ratio bounds.
#[derive(Debug, Clone, Copy)]
pub struct TransferCheck {
    /// Σ_{k≥n} energy under μ₁.
    pub tail_mu: f64,
    /// Σ_{k≥n} energy under σ.
    pub tail_sigma: f64,
    pub ratio: f64,
    pub lower_const: f64,
    pub upper_const: f64,
    pub holds: bool,
}

pub const TRANSFER_CONSTANTS: (f64, f64) = (PI / 4.0, PI / 2.0);

pub fn measure_transfer_check(f: &dyn RealFunction, n: usize) -> Result<TransferCheck> {
    let cap = n.max(1);
    let mu_basis = two_sided_exp_basis(cap)?;
    let em = expand_panels(f, &mu_basis, cap)?;
    // E(f, σ) = E(g, ν) for g(y) = f(πy/2)
    let g = Dilated {
        inner: f,
        factor: PI / 2.0,
    };
    let nu_basis = mp_recurrence(1, cap + 1)?;
    let en = expand_panels(&g, &nu_basis, cap)?;
    let tail = |e: &SpectralExpansion| -> f64 {
        if n == 0 {
            e.l2_norm_sq
        } else {
            e.tail_by_complement(n - 1).max(0.0)
        }
    };
    let tail_mu = tail(&em);
    let tail_sigma = tail(&en);
    let (c, cc) = TRANSFER_CONSTANTS;
    let slack = 1e-12 * em.l2_norm_sq.max(en.l2_norm_sq) + 1e-14;
    let holds = c * tail_sigma <= tail_mu + slack && tail_mu <= cc * tail_sigma + slack;
    Ok(TransferCheck {
        tail_mu,
        tail_sigma,
        ratio: if tail_sigma > 0.0 { tail_mu / tail_sigma } else { f64::NAN },
        lower_const: c,
        upper_const: cc,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{ClippedAbs, Closure, Polynomial};
    use crate::orthopoly::gauss_rule;

    fn mp1(n: usize) -> (OrthoBasis, GaussRule) {
        let b = mp_recurrence(1, 2 * n + 2).unwrap();
        let r = gauss_rule(&b, 2 * n).unwrap();
        (b, r)
    }

    #[test]
    fn expansion_anchors() {
        let (b, r) = mp1(10);
        let one = expand(&Polynomial::new(vec![1.0]), &b, 10, &r).unwrap();
        assert!((one.coeffs[0] - 1.0).abs() < 1e-13);
        assert!(one.coeffs[1..].iter().all(|c| c.abs() < 1e-12));
        let x = expand(&Polynomial::monomial(1), &b, 10, &r).unwrap();
        assert!((x.coeffs[1] - 1.0).abs() < 1e-13 && x.coeffs[0].abs() < 1e-13);
        let x2 = expand(&Polynomial::monomial(2), &b, 10, &r).unwrap();
        assert!((x2.coeffs[0] - 1.0).abs() < 1e-12 && (x2.coeffs[2] - 2.0).abs() < 1e-12);
        assert!(x2.coeffs[3..].iter().all(|c| c.abs() < 1e-10));
        assert!((tail_error(&x2, 1).unwrap() - 4.0).abs() < 1e-10);
        assert!(tail_error(&x2, 2).unwrap().abs() < 1e-10);
        assert!(tail_error(&x, 1).unwrap().abs() < 1e-10);
        assert!(tail_error(&x, 10).is_err());
    }

    #[test]
    fn weighted_sum_anchors() {
        let (b, r) = mp1(8);
        let x = expand(&Polynomial::monomial(1), &b, 8, &r).unwrap();
        assert!((weighted_sum(&x, &|k| k as f64, 1).unwrap().value - 1.0).abs() < 1e-12);
        let x2 = expand(&Polynomial::monomial(2), &b, 8, &r).unwrap();
        assert!((weighted_sum(&x2, &|k| k as f64, 1).unwrap().value - 8.0).abs() < 1e-10);
        let v = weighted_sum(&x2, &log2_seq, 1).unwrap().value;
        assert!((v - 4.0 * log2_seq(2)).abs() < 1e-10 && (v - 9.62792).abs() < 1e-4);
    }

    #[test]
    fn rule_too_small_is_rejected() {
        let (b, r) = mp1(4);
        assert!(matches!(
            expand(&Polynomial::monomial(1), &b, 5, &r),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn non_finite_values_are_reported() {
        let (b, r) = mp1(4);
        let bad = Closure::new(|x| if x > 0.5 { f64::NAN } else { 1.0 });
        assert!(matches!(expand(&bad, &b, 4, &r), Err(Error::Evaluation(_))));
    }

    #[test]
    fn panels_and_gauss_agree_for_polynomial() {
        let n = 12;
        let (b, r) = mp1(n);
        let f = Polynomial::new(vec![0.5, -1.0, 0.0, 2.0, 0.0, 0.0, 0.25]);
        let a = expand(&f, &b, n, &r).unwrap();
        let p = expand_panels(&f, &b, n).unwrap();
        for k in 0..=n {
            assert!((a.coeffs[k] - p.coeffs[k]).abs() < 1e-9 * (1.0 + a.coeffs[k].abs()), "k={k}");
        }
    }

    #[test]
    fn gaussian_coefficients_by_panels() {
        // ⟨e^{-x²/2}, 1⟩ and ⟨e^{-x²/2}, (x²−1)/2⟩ under ν, from 30-digit quadrature
        let b = mp_recurrence(1, 64).unwrap();
        let f = Closure::new(|x| (-0.5 * x * x).exp());
        let p = expand_panels(&f, &b, 40).unwrap();
        assert!((p.coeffs[0] - 0.741_264_274_125_379_6).abs() < 1e-14);
        assert!((p.coeffs[2] + 0.219_352_742_803_328_4).abs() < 1e-14);
        let gap = p.parseval_gap();
        assert!(gap > -1e-14 && gap < 1e-3, "{gap}");
    }

    #[test]
    fn clipped_abs_parseval() {
        let b = mp_recurrence(1, 300).unwrap();
        let e = expand_panels(&ClippedAbs { c: 3.0 }, &b, 256).unwrap();
        let gap = e.parseval_gap();
        assert!(gap > -1e-12 && gap < 1e-2, "gap {gap}");
        for n in [4usize, 16, 64] {
            assert!(tail_error(&e, n).unwrap() >= tail_error(&e, n + 1).unwrap() - 1e-15);
        }
    }

    #[test]
    fn gamma_closed_forms() {
        let one = WeightProfile::constant();
        let log2 = WeightProfile::log_squared();
        for k in [1u64, 2, 7, 64, 1024, 16384] {
            let a = one.gamma(k).unwrap();
            assert!((a - one.gamma_closed(k).unwrap()).abs() < 1e-12, "k={k}");
            let b = log2.gamma(k).unwrap();
            let c = log2.gamma_closed(k).unwrap();
            assert!((b - c).abs() < 1e-9 * c, "k={k}: {b} vs {c}");
        }
        let half = WeightProfile::power(0.5).unwrap();
        let g = half.gamma(100).unwrap();
        assert!(g > 0.5 * (2.0 * 100f64.sqrt()) && g < 2.0 * (2.0 * 100f64.sqrt()));
    }

    #[test]
    fn sandwich_anchors() {
        assert!(gamma_sandwich_check(&WeightProfile::constant(), 10).unwrap().holds);
        assert!(gamma_sandwich_check(&WeightProfile::log_squared(), 100).unwrap().holds);
        assert!(gamma_sandwich_check(&WeightProfile::power(0.9).unwrap(), 1000).unwrap().holds);
        let up = WeightProfile::custom("increasing", |e| e, true);
        assert!(matches!(gamma_sandwich_check(&up, 3), Err(Error::Contract(_))));
    }

    #[test]
    fn custom_profile_table_matches_closed_form() {
        let c = WeightProfile::custom("log2-copy", |e: f64| e.ln().powi(2), true);
        let l = WeightProfile::log_squared();
        for &t in &[1e-200, 1e-40, 1e-7, 0.01, 0.3, 0.999, 1.0, 2.0] {
            let a = c.big_phi(t);
            let b = l.big_phi(t);
            assert!((a - b).abs() < 1e-9 * b, "t={t}: {a} vs {b}");
        }
    }

    #[test]
    fn main_theorem_anchors() {
        let x = main_theorem_sides(&Polynomial::monomial(1), 64).unwrap();
        assert!((x.lhs - log2_seq(1)).abs() < 1e-10);
        assert!(x.rhs60 > 0.0 && x.rhs60.is_finite());
        let c = main_theorem_sides(&Polynomial::new(vec![2.5]), 64).unwrap();
        assert!(c.lhs.abs() < 1e-12 && c.rhs60 == 0.0);
        let x2 = main_theorem_sides(&Polynomial::monomial(2), 64).unwrap();
        assert!((x2.lhs - 4.0 * log2_seq(2)).abs() < 1e-9);
        let no_deriv = Closure::new(|x| x);
        assert!(matches!(main_theorem_sides(&no_deriv, 8), Err(Error::Unsupported(_))));
    }

    #[test]
    fn transfer_examples() {
        let t = measure_transfer_check(&Polynomial::monomial(1), 2).unwrap();
        assert!(t.holds && t.tail_mu.abs() < 1e-10 && t.tail_sigma.abs() < 1e-10);
        let g = Closure::new(|x| (-0.5 * x * x).exp());
        for n in [4usize, 16, 64] {
            let t = measure_transfer_check(&g, n).unwrap();
            assert!(t.holds, "n={n}: {t:?}");
        }
        let t = measure_transfer_check(&ClippedAbs { c: 3.0 }, 32).unwrap();
        assert!(t.holds, "{t:?}");
    }
}
