//! The Gaussian family F_λ(x) = e^{−λ²x²/2}/√λ, the convex weight τ built from a
//! divergent sequence, and the divergence experiment.

use std::f64::consts::{E, PI};
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;

use crate::dd::Accumulator;
use crate::error::{Error, Result};
use crate::function::{RealFunction, StripFunction};
use crate::measures::{log_weight, Weight};
use crate::orthopoly::{gauss_rule, mp_recurrence, Family, OrthoBasis};
use crate::quad::{integrate_line, Tolerance};
use crate::spectral::{expand_panels, SpectralExpansion, WeightProfile};
use crate::strip::{identity_rhs, lemma22_bounds};

/// F_λ(z) = e^{−λ²z²/2}/√λ.
#[derive(Debug, Clone, Copy)]
pub struct FLambda {
    pub lambda: f64,
}

impl FLambda {
    pub fn new(lambda: f64) -> Self {
        Self { lambda }
    }
}

impl RealFunction for FLambda {
    fn value(&self, x: f64) -> f64 {
        let l = self.lambda;
        (-0.5 * l * l * x * x).exp() / l.sqrt()
    }

    fn derivative(&self, x: f64) -> Option<f64> {
        let l = self.lambda;
        Some(-l * l * x * self.value(x))
    }

    fn scale_hint(&self) -> f64 {
        1.0 / self.lambda
    }
}

impl StripFunction for FLambda {
    fn eval(&self, z: Complex64) -> Complex64 {
        let l = self.lambda;
        (-0.5 * l * l * z * z).exp() / l.sqrt()
    }

    fn growth_alpha(&self) -> f64 {
        0.0
    }
}

/// ∫(F_λ′)² log²(e+|x|) e^{−|x|} dx.
pub fn flambda_energy_budget(lambda: f64) -> Result<f64> {
    let f = FLambda::new(lambda);
    let g = |x: f64| {
        let d = f.derivative(x).unwrap_or(0.0);
        d * d * log_weight(x) * (-x.abs()).exp()
    };
    Ok(integrate_line(g, f64::NEG_INFINITY, f64::INFINITY, 1.0, &[0.0], Tolerance::new(1e-300, 1e-12))?.value)
}

/// MP(1) coefficients of F_λ by Gauss–Hermite quadrature after y = λx:
/// ⟨F_λ, p̃_k⟩_ν = √(2π) λ^{−3/2} E[p̃_k(Y/λ) ρ(Y/λ)], Y ~ N(0,1).
pub fn flambda_coefficients_hermite(lambda: f64, n: usize, rule_size: usize) -> Result<Vec<f64>> {
    let hermite = OrthoBasis {
        family: Family::Discretized("hermite".into()),
        degree_cap: rule_size,
        diag: vec![0.0; rule_size + 1],
        off: (0..=rule_size).map(|k| (k as f64).sqrt()).collect(),
        norms_sq: vec![1.0; rule_size + 1],
        alternating: false,
        weight: Weight::gaussian(),
    };
    let rule = gauss_rule(&hermite, rule_size)?;
    let basis = mp_recurrence(1, n + 1)?;
    let nu = Weight::sech();
    let mut acc = vec![Accumulator::new(); n + 1];
    let mut vals = vec![0.0; n + 1];
    for (&y, &lw) in rule.nodes.iter().zip(&rule.log_weights) {
        let x = y / lambda;
        basis.orthonormal_scaled(x, lw + nu.log_density(x)?, &mut vals);
        for (a, v) in acc.iter_mut().zip(&vals) {
            a.add(*v);
        }
    }
    let c = (2.0 * PI).sqrt() * lambda.powf(-1.5);
    Ok(acc
        .iter()
        .enumerate()
        .map(|(k, a)| basis.native_coefficient(k, c * a.value()))
        .collect())
}

/// A nondecreasing sequence a_k ≥ 1, given through a continuous extension a(t), t ≥ 0.
#[derive(Clone)]
pub struct Sequence {
    pub name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for Sequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sequence({})", self.name)
    }
}

impl Sequence {
    pub fn new(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.to_string(),
            f: Arc::new(f),
        }
    }

    pub fn constant() -> Self {
        Self::new("one", |_| 1.0)
    }

    /// log(e + k).
    pub fn log() -> Self {
        Self::new("log", |t| (E + t).ln())
    }

    /// log log(e^e + k).
    pub fn loglog() -> Self {
        Self::new("loglog", |t| (E.exp() + t).ln().ln())
    }

    pub fn at(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    /// φ_a(ε) = log²ε · a(1/ε), so that Γ_{φ_a}(k) is comparable to a_k log²(e+k).
    pub fn profile(&self) -> WeightProfile {
        let f = self.f.clone();
        WeightProfile::custom(&format!("log2*{}", self.name), move |e: f64| e.ln().powi(2) * f(1.0 / e), true)
    }
}

// ---------------------------------------------------------------------------
// τ

/// Piecewise-linear convex τ with τ(0) = 0 and slope i on [x_i, x_{i+1}).
#[derive(Debug, Clone)]
pub struct TauFunction {
    /// x_1 = 0 < x_2 < …
    pub breakpoints: Vec<f64>,
    /// k_i = min{k : a_k ≥ i}.
    pub levels: Vec<u64>,
    values: Vec<f64>,
}

impl TauFunction {
    fn segment(&self, x: f64) -> usize {
        self.breakpoints.partition_point(|&b| b <= x).saturating_sub(1)
    }

    pub fn value(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        let i = self.segment(x);
        self.values[i] + (i + 1) as f64 * (x - self.breakpoints[i])
    }

    /// Right derivative.
    pub fn derivative(&self, x: f64) -> f64 {
        (self.segment(x.max(0.0)) + 1) as f64
    }
}

/// Breakpoints x_{i} = max(16i², log²(e+k_i), x_{i−1}+1), x_1 = 0.
pub fn build_tau(a: &Sequence, k_max: u64) -> Result<TauFunction> {
    let mut prev = a.at(0.0);
    if prev < 1.0 {
        return Err(Error::Precondition(format!("a_0 = {prev} is below 1")));
    }
    let mut levels = vec![0u64];
    let mut breakpoints = vec![0.0];
    let mut level = 2.0;
    for k in 1..=k_max {
        let v = a.at(k as f64);
        if v < prev {
            return Err(Error::Precondition(format!("sequence decreases at k = {k}")));
        }
        prev = v;
        while v >= level {
            let i = level;
            let x = (16.0 * i * i).max(log_weight(k as f64)).max(breakpoints.last().unwrap() + 1.0);
            levels.push(k);
            breakpoints.push(x);
            level += 1.0;
        }
    }
    if levels.len() < 2 {
        return Err(Error::Construct(format!(
            "a_k stays below 2 for k ≤ {k_max}; τ needs a divergent sequence"
        )));
    }
    let mut values = vec![0.0];
    for i in 1..breakpoints.len() {
        let v = values[i - 1] + i as f64 * (breakpoints[i] - breakpoints[i - 1]);
        values.push(v);
    }
    Ok(TauFunction {
        breakpoints,
        levels,
        values,
    })
}

/// Result of checking the τ properties.
#[derive(Debug, Clone, Copy)]
pub struct TauReport {
    pub convex: bool,
    /// τ(x) ≤ 1 + x²
    pub quadratic: bool,
    /// τ(log²(e+k)) ≤ a_k log²(e+k)
    pub sequence: bool,
    /// τ′(x)/τ(x) ≤ 1/(4√x) for x > 16
    pub log_derivative: bool,
    /// largest τ′/τ · 4√x seen
    pub worst_log_derivative: f64,
}

impl TauReport {
    pub fn all(&self) -> bool {
        self.convex && self.quadratic && self.sequence && self.log_derivative
    }
}

pub fn check_tau(tau: &TauFunction, a: &Sequence, k_max: u64, x_max: f64) -> TauReport {
    let convex = tau.value(0.0) == 0.0
        && (1..tau.breakpoints.len()).all(|i| tau.derivative(tau.breakpoints[i]) >= tau.derivative(tau.breakpoints[i - 1]));
    let mut xs: Vec<f64> = (0..=4000).map(|j| x_max.powf(j as f64 / 4000.0)).collect();
    for &b in &tau.breakpoints {
        xs.extend([b, b + 1e-9, (b - 1e-9).max(0.0)]);
    }
    let quadratic = xs.iter().all(|&x| tau.value(x) <= 1.0 + x * x);
    let mut worst: f64 = 0.0;
    for &x in xs.iter().filter(|&&x| x > 16.0) {
        worst = worst.max(tau.derivative(x) / tau.value(x) * 4.0 * x.sqrt());
    }
    let sequence = (0..=k_max).all(|k| {
        let l = log_weight(k as f64);
        tau.value(l) <= a.at(k as f64) * l * (1.0 + 1e-14)
    });
    TauReport {
        convex,
        quadratic,
        sequence,
        log_derivative: worst <= 1.0 + 1e-12,
        worst_log_derivative: worst,
    }
}

// ---------------------------------------------------------------------------
// Weighted energies of F_λ

/// Σ_{k=1}^N seq(k)(F_λ)_k² with a bound on the omitted tail.
#[derive(Debug, Clone, Copy)]
pub struct WeightedEnergy {
    pub value: f64,
    /// (seq(N+1)/(N+1)) Σ_{k>N} k (F_λ)_k², valid when seq(k)/k is nonincreasing past N.
    pub tail_bound: f64,
    /// Σ k (F_λ)_k² from the strip identity.
    pub identity: f64,
    pub n: usize,
}

fn flambda_expansion(lambda: f64, n: usize) -> Result<SpectralExpansion> {
    if !(lambda >= 1.0) {
        return Err(Error::Domain(format!("λ must be at least 1, got {lambda}")));
    }
    let basis = mp_recurrence(1, n + 1)?;
    expand_panels(&FLambda::new(lambda), &basis, n)
}

/// Relative size of tail to head above which the energy is reported unresolved.
pub const TAIL_TOLERANCE: f64 = 1e-6;

pub fn flambda_weighted_energy(lambda: f64, seq: &dyn Fn(usize) -> f64, n: usize) -> Result<WeightedEnergy> {
    let e = flambda_expansion(lambda, n)?;
    let identity = identity_rhs(&FLambda::new(lambda))?.value;
    let mut head = Accumulator::new();
    let mut first = Accumulator::new();
    for k in 1..=n {
        let c2 = e.coeffs[k] * e.coeffs[k];
        head.add(seq(k) * c2);
        first.add(k as f64 * c2);
    }
    let rest = (identity - first.value()).max(0.0);
    let tail_bound = seq(n + 1) / (n + 1) as f64 * rest;
    let value = head.value();
    if tail_bound > TAIL_TOLERANCE * value {
        return Err(Error::Resolution {
            message: format!("N = {n} leaves too much of the F_{lambda} energy in the tail"),
            head: value,
            tail: tail_bound,
        });
    }
    Ok(WeightedEnergy {
        value,
        tail_bound,
        identity,
        n,
    })
}

// ---------------------------------------------------------------------------
// Divergence experiment

#[derive(Debug, Clone)]
pub struct DivergenceRow {
    pub lambda: f64,
    /// Σ Γ_{φ_a}(k)(F_λ)_k², comparable to Σ a_k log²(e+k)(F_λ)_k².
    pub weighted_sum: f64,
    /// Σ k (F_λ)_k².
    pub k_energy: f64,
    /// E_n(ν, F_λ) for each n of the table.
    pub tails: Vec<f64>,
    /// E_n · max(n e^{−λ²}, λ²).
    pub normalized: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct DivergenceReport {
    pub sequence: String,
    pub ns: Vec<usize>,
    pub rows: Vec<DivergenceRow>,
    /// weighted sums strictly increase along the λ grid
    pub increasing: bool,
    /// the reported constant bounding every normalized tail
    pub normalized_max: f64,
    /// least-squares slope of ln Σk(F_λ)_k² against λ²
    pub regression_slope: f64,
    pub coefficient_count: usize,
    pub rule_size: usize,
    pub truncation: f64,
}

impl DivergenceReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("lambda,weighted_sum,k_energy");
        for n in &self.ns {
            let _ = write!(s, ",e{n}");
        }
        s.push('\n');
        for r in &self.rows {
            let _ = write!(s, "{:.16e},{:.16e},{:.16e}", r.lambda, r.weighted_sum, r.k_energy);
            for t in &r.tails {
                let _ = write!(s, ",{t:.16e}");
            }
            s.push('\n');
        }
        s
    }
}

pub const DEFAULT_TAIL_INDICES: [usize; 4] = [2, 8, 32, 128];

pub fn divergence_experiment(a: &Sequence, lambdas: &[f64], ns: &[usize]) -> Result<DivergenceReport> {
    if lambdas.is_empty() || lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("λ grid must be nonempty and increasing".into()));
    }
    if lambdas.iter().any(|&l| !(1.0..=3.5).contains(&l)) {
        return Err(Error::Precondition("λ grid must lie within [1, 3.5]".into()));
    }
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let count = (4 * n_max).max(64);
    let profile = a.profile();
    let mut rows = Vec::new();
    let mut rule_size = 0;
    let mut truncation: f64 = 0.0;
    for &l in lambdas {
        let f = FLambda::new(l);
        let weighted_sum = lemma22_bounds(&f, &profile)?.middle;
        let k_energy = identity_rhs(&f)?.value;
        let e = flambda_expansion(l, count)?;
        rule_size = rule_size.max(e.rule_size);
        truncation = truncation.max(e.truncation);
        let tails: Vec<f64> = ns.iter().map(|&n| e.tail_by_complement(n).max(0.0)).collect();
        let normalized = ns
            .iter()
            .zip(&tails)
            .map(|(&n, t)| t * (n as f64 * (-l * l).exp()).max(l * l))
            .collect();
        rows.push(DivergenceRow {
            lambda: l,
            weighted_sum,
            k_energy,
            tails,
            normalized,
        });
    }
    let increasing = rows.windows(2).all(|w| w[1].weighted_sum > w[0].weighted_sum);
    let normalized_max = rows
        .iter()
        .flat_map(|r| r.normalized.iter().copied())
        .fold(0.0, f64::max);
    let xs: Vec<f64> = rows.iter().map(|r| r.lambda * r.lambda).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.k_energy.ln()).collect();
    Ok(DivergenceReport {
        sequence: a.name.clone(),
        ns: ns.to_vec(),
        rows,
        increasing,
        normalized_max,
        regression_slope: slope(&xs, &ys),
        coefficient_count: count,
        rule_size,
        truncation,
    })
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return f64::NAN;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
