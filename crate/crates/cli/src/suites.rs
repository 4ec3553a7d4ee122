//! The subcommands' check suites.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mpspec::function::{ClippedAbs, ClippedRamp, Polynomial, RealFunction};
use mpspec::inequalities::{default_alpha_grid, hyperbolic_checks, poincare_estimate, poincare_perturbation_check};
use mpspec::measures::{Weight, WeightKind};
use mpspec::orthopoly::{gauss_rule, laguerre_basis, mp_recurrence, two_sided_exp_basis, OrthoBasis};
use mpspec::spectral::{expand, gamma_sandwich_check, WeightProfile};
use mpspec::strip::{
    appendix_b_closed, appendix_b_numeric, identity_rhs, khat_closed, khat_numeric, strip_depth_a, DiskGeometry,
};
use mpspec::tensor::{
    laguerre_rate_check, one_dimensional_margin, product_expand, rate_comparison, tensorization_check, AxisRule,
};
use mpspec::tightness::{divergence_experiment, Sequence};
use mpspec::{Error, Result};

use crate::config::RunConfig;
use crate::report::{Report, Suite};

pub const RATE_FUNCTIONS: [&str; 3] = ["abs_clip", "abs_clip2", "square"];

pub fn run<'a>(cfg: &'a RunConfig) -> Result<Report<'a>> {
    use crate::config::Command::*;
    match cfg.command {
        Verify => verify(cfg),
        Rates => rates(cfg),
        Tightness => tightness(cfg),
        Tensor => tensor(cfg),
        Poincare => poincare(cfg),
    }
}

fn report(cfg: &RunConfig, suites: Vec<Suite>, table: Option<String>) -> Report<'_> {
    Report {
        config: cfg,
        suites,
        table,
    }
}

// ---------------------------------------------------------------------------
// verify

fn basis_for(w: &Weight, cap: usize) -> Result<OrthoBasis> {
    match w.kind() {
        WeightKind::Sech if w.scale() == 1.0 => mp_recurrence(1, cap),
        WeightKind::NuEll(ell) if w.scale() == 1.0 => mp_recurrence(ell, cap),
        WeightKind::TwoSidedExp if w.scale() == 1.0 => two_sided_exp_basis(cap),
        WeightKind::HalfExp if w.scale() == 1.0 => laguerre_basis(cap),
        _ => Err(Error::Unsupported(format!("no orthogonal family for weight '{}'", w.name()))),
    }
}

fn orthogonality(cfg: &RunConfig) -> Result<Suite> {
    let w = Weight::from_name(&cfg.weight)?;
    let n = cfg.degree;
    let basis = basis_for(&w, cfg.rule.max(n + 1))?;
    let rule = gauss_rule(&basis, cfg.rule)?;
    let mut gram = vec![0.0; (n + 1) * (n + 1)];
    let mut v = vec![0.0; n + 1];
    for (x, lw) in rule.nodes.iter().zip(&rule.log_weights) {
        basis.orthonormal_scaled(*x, 0.5 * lw, &mut v);
        for j in 0..=n {
            for k in 0..=j {
                gram[j * (n + 1) + k] += v[j] * v[k];
            }
        }
    }
    let mut worst: f64 = 0.0;
    for j in 0..=n {
        for k in 0..=j {
            let target = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((gram[j * (n + 1) + k] - target).abs());
        }
    }
    let mut s = Suite::new("orthogonality");
    s.at_most(format!("gram_error_{}_N{}_rule{}", cfg.weight, n, cfg.rule), worst, 1e-9);
    if let mpspec::orthopoly::Family::MeixnerPollaczek(ell) = basis.family {
        let mut norm_err: f64 = 0.0;
        for k in 0..=n.min(200) {
            // binom(k+ℓ−1, k)
            let e: f64 = (1..=k).map(|i| (i + ell as usize - 1) as f64 / i as f64).product();
            norm_err = norm_err.max((basis.norms_sq[k] / e - 1.0).abs());
        }
        s.at_most("norm_binomial_rel_error", norm_err, 1e-12);
    }
    Ok(s)
}

/// Seeded random polynomials with coefficients uniform in [−1, 1].
pub fn random_polynomials(seed: u64, count: usize, max_degree: usize) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let deg = rng.random_range(1..=max_degree);
            let mut c: Vec<f64> = (0..=deg).map(|_| rng.random_range(-1.0..=1.0)).collect();
            if c[deg] == 0.0 {
                c[deg] = 1.0;
            }
            Polynomial::new(c)
        })
        .collect()
}

fn k_energy_poly(p: &Polynomial) -> Result<f64> {
    let deg = p.degree().max(1);
    let basis = mp_recurrence(1, 2 * deg + 2)?;
    let rule = gauss_rule(&basis, 2 * deg + 2)?;
    let e = expand(p, &basis, deg, &rule)?;
    Ok((1..=deg).map(|k| k as f64 * e.energy(k)).sum())
}

fn identity(cfg: &RunConfig) -> Result<Suite> {
    let mut s = Suite::new("strip_identity");
    let anchors = [(Polynomial::monomial(1), 1.0), (Polynomial::monomial(2), 8.0)];
    for (p, exact) in &anchors {
        let lhs = k_energy_poly(p)?;
        let rhs = identity_rhs(p)?.value;
        s.at_most(format!("anchor_x{}_lhs", p.degree()), (lhs / exact - 1.0).abs(), 1e-10);
        s.at_most(format!("anchor_x{}_rhs", p.degree()), (rhs / exact - 1.0).abs(), 1e-9);
    }
    let max_deg = cfg.degree.clamp(1, 15);
    for (i, p) in random_polynomials(cfg.seed, 8, max_deg).iter().enumerate() {
        let lhs = k_energy_poly(p)?;
        let rhs = identity_rhs(p)?.value;
        s.at_most(format!("random_{i}_deg{}", p.degree()), ((lhs - rhs) / rhs).abs(), cfg.tol);
    }
    Ok(s)
}

fn kernel_transform() -> Result<Suite> {
    let mut s = Suite::new("kernel_transform");
    let anchor = 4.0 / (1.0 + 2f64.sqrt());
    s.at_most("khat0_anchor", (khat_closed(0.0) - anchor).abs(), 1e-15);
    let mut worst: f64 = 0.0;
    let mut worst_b: f64 = 0.0;
    for j in 0..=120 {
        let v = -6.0 + 0.1 * j as f64;
        worst = worst.max((khat_numeric(v)? - khat_closed(v)).abs());
        worst_b = worst_b.max((appendix_b_numeric(v)? - appendix_b_closed(v)).abs());
    }
    s.at_most("khat_max_error", worst, 1e-8);
    s.at_most("sinh_ratio_max_error", worst_b, 1e-8);
    Ok(s)
}

fn gamma_profiles() -> Result<Suite> {
    let mut s = Suite::new("gamma_sandwich");
    let profiles = [
        WeightProfile::constant(),
        WeightProfile::log_squared(),
        WeightProfile::power(0.5)?,
        WeightProfile::power(0.9)?,
    ];
    for p in &profiles {
        let mut worst = f64::INFINITY;
        for e in 0..=14 {
            let g = gamma_sandwich_check(p, 1 << e)?;
            let rel = (g.lower_margin / g.gamma).min(g.upper_margin / g.gamma);
            worst = worst.min(rel);
        }
        s.at_least(format!("{}_min_relative_margin", p.name()), worst, 0.0);
    }
    let log2 = WeightProfile::log_squared();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for e in 0..=14 {
        let k = 1u64 << e;
        let r = log2.gamma(k)? / (std::f64::consts::E + k as f64).ln().powi(2);
        lo = lo.min(r);
        hi = hi.max(r);
    }
    s.at_least("log2_band_min", lo, 1.0 / 64.0);
    s.at_most("log2_band_max", hi, 8.0);
    Ok(s)
}

fn appendix_a() -> Suite {
    let mut s = Suite::new("hyperbolic");
    for r in hyperbolic_checks(&default_alpha_grid()) {
        s.push(r.name, r.margin, 0.0, r.pass);
    }
    s
}

fn disk_geometry(cfg: &RunConfig) -> Result<Suite> {
    let mut s = Suite::new("disk_geometry");
    let g = DiskGeometry::new(1.0 / 3f64.sqrt())?;
    s.at_most("anchor_R_0", (g.radius(0.0)? - (2.0 + 3f64.sqrt())).abs(), 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    for &r in &[0.3, 0.7, 0.95] {
        let g = DiskGeometry::new(r)?;
        let mut violations = 0usize;
        let mut drawn = 0usize;
        while drawn < 10_000 {
            let z = Complex64::new(rng.random_range(-FRAC_PI_4..FRAC_PI_4), rng.random_range(-3.0..3.0));
            let t = z.tan().norm();
            // skip draws numerically on the boundary
            if (t - r).abs() < 1e-9 {
                continue;
            }
            drawn += 1;
            if g.contains(z) != (t < r) {
                violations += 1;
            }
        }
        s.at_most(format!("membership_violations_r{r}"), violations as f64, 0.0);
    }
    Ok(s)
}

fn depth_bound() -> Result<Suite> {
    let mut s = Suite::new("depth_bound");
    let mut violations = 0usize;
    let mut worst = f64::INFINITY;
    for i in 1..=41 {
        for j in 0..=40 {
            let u = -FRAC_PI_4 + 2.0 * FRAC_PI_4 * i as f64 / 42.0;
            let v = -4.0 + 8.0 * j as f64 / 40.0;
            let d = strip_depth_a(u, v)?;
            let m = (d.a - d.lower).min(d.upper - d.a);
            worst = worst.min(m);
            if m < -1e-12 {
                violations += 1;
            }
        }
    }
    s.at_most("grid_violations", violations as f64, 0.0);
    s.at_least("worst_margin", worst, -1e-12);
    Ok(s)
}

fn verify(cfg: &RunConfig) -> Result<Report<'_>> {
    let suites = vec![
        orthogonality(cfg)?,
        identity(cfg)?,
        kernel_transform()?,
        gamma_profiles()?,
        appendix_a(),
        disk_geometry(cfg)?,
        depth_bound()?,
    ];
    Ok(report(cfg, suites, None))
}

// ---------------------------------------------------------------------------
// rates

fn rate_functions(name: &str) -> Result<(Box<dyn RealFunction>, Box<dyn RealFunction>)> {
    Ok(match name {
        "abs_clip" => (Box::new(ClippedAbs { c: 1.0 }), Box::new(ClippedRamp { c: 1.0 })),
        "abs_clip2" => (Box::new(ClippedAbs { c: 2.0 }), Box::new(ClippedRamp { c: 2.0 })),
        "square" => (Box::new(Polynomial::monomial(2)), Box::new(Polynomial::monomial(2))),
        other => return Err(Error::Domain(format!("unknown test function '{other}'"))),
    })
}

fn rates(cfg: &RunConfig) -> Result<Report<'_>> {
    let (two, half) = rate_functions(&cfg.function)?;
    let r = rate_comparison(two.as_ref(), half.as_ref(), &cfg.n)?;
    let mut s = Suite::new("rates");
    if cfg.function.starts_with("abs_clip") {
        s.at_most("two_sided_log2_spread", r.two_sided_spread(), 3.0);
    }
    let lag_ns: Vec<usize> = cfg.n.iter().copied().filter(|&n| n <= 128).collect();
    if !lag_ns.is_empty() {
        let l = laguerre_rate_check(half.as_ref(), &lag_ns)?;
        let worst = l.rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
        s.push("laguerre_tail_over_bound", worst, 1.0 + 1e-8, l.holds(1e-8));
    }
    Ok(report(cfg, vec![s], Some(r.to_csv())))
}

// ---------------------------------------------------------------------------
// tightness

fn tightness(cfg: &RunConfig) -> Result<Report<'_>> {
    let seq = match cfg.sequence.as_str() {
        "constant" => Sequence::constant(),
        "log" => Sequence::log(),
        _ => Sequence::loglog(),
    };
    let d = divergence_experiment(&seq, &cfg.lambda, &cfg.n)?;
    let mut s = Suite::new("tightness");
    s.push("k_energy_slope_vs_lambda2", d.regression_slope, 1.0, true);
    s.push("weighted_sum_increasing", d.increasing as u8 as f64, 1.0, d.increasing || seq.name == "constant");
    s.push("normalized_tail_max", d.normalized_max, f64::INFINITY, d.normalized_max.is_finite());
    if let (Some(a), Some(b)) = (d.rows.first(), d.rows.last()) {
        s.push("weighted_sum_growth", b.weighted_sum / a.weighted_sum, 1.0, true);
    }
    Ok(report(cfg, vec![s], Some(d.to_csv())))
}

// ---------------------------------------------------------------------------
// tensor

type Grad = Box<dyn Fn(&[f64], &mut [f64])>;
type Field = Box<dyn Fn(&[f64]) -> f64>;

fn tensor_suite() -> Vec<(&'static str, Field, Grad, AxisRule)> {
    let gauss = |x: f64| (-0.5 * x * x).exp();
    vec![
        (
            "x_plus_y",
            Box::new(|p: &[f64]| p[0] + p[1]) as Field,
            Box::new(|_: &[f64], g: &mut [f64]| g.fill(1.0)) as Grad,
            AxisRule::Gauss,
        ),
        (
            "xy",
            Box::new(|p: &[f64]| p[0] * p[1]),
            Box::new(|p: &[f64], g: &mut [f64]| {
                g[0] = p[1];
                g[1] = p[0];
            }),
            AxisRule::Gauss,
        ),
        (
            "x2_plus_y2",
            Box::new(|p: &[f64]| p[0] * p[0] + p[1] * p[1]),
            Box::new(|p: &[f64], g: &mut [f64]| {
                g[0] = 2.0 * p[0];
                g[1] = 2.0 * p[1];
            }),
            AxisRule::Gauss,
        ),
        (
            "x2_y",
            Box::new(|p: &[f64]| p[0] * p[0] * p[1]),
            Box::new(|p: &[f64], g: &mut [f64]| {
                g[0] = 2.0 * p[0] * p[1];
                g[1] = p[0] * p[0];
            }),
            AxisRule::Gauss,
        ),
        (
            "gaussian",
            Box::new(move |p: &[f64]| gauss(p[0]) * gauss(p[1])),
            Box::new(move |p: &[f64], g: &mut [f64]| {
                g[0] = -p[0] * gauss(p[0]) * gauss(p[1]);
                g[1] = -p[1] * gauss(p[0]) * gauss(p[1]);
            }),
            AxisRule::Panels(vec![]),
        ),
    ]
}

fn tensor(cfg: &RunConfig) -> Result<Report<'_>> {
    let n = cfg.degree;
    let margin = one_dimensional_margin(128)?;
    let mut s = Suite::new("tensorization");
    for (name, f, g, rule) in tensor_suite() {
        let t = tensorization_check(f.as_ref(), Some(g.as_ref()), 2, n, &rule, margin)?;
        s.push(format!("{name}_lhs_over_rhs"), if t.rhs > 0.0 { t.lhs / t.rhs } else { 0.0 }, margin, t.ok);
    }
    // f(x, y) = g(x)h(y) has coefficients g_j h_k
    let gx = Polynomial::new(vec![1.0, 1.0, 1.0]);
    let hy = Polynomial::new(vec![0.0, -1.0, 0.0, 1.0]);
    let e = product_expand(&|p: &[f64]| gx.value(p[0]) * hy.value(p[1]), 2, n, &AxisRule::Gauss)?;
    let basis = mp_recurrence(1, 2 * n + 2)?;
    let rule = gauss_rule(&basis, 2 * n + 2)?;
    let eg = expand(&gx, &basis, n, &rule)?;
    let eh = expand(&hy, &basis, n, &rule)?;
    let mut worst: f64 = 0.0;
    for (alpha, c) in e.iter() {
        worst = worst.max((c - eg.coeffs[alpha[0]] * eh.coeffs[alpha[1]]).abs());
    }
    let mut sep = Suite::new("separable");
    sep.at_most("factorization_error", worst, 1e-9);
    sep.at_most("parseval_gap", e.parseval_gap().abs(), 1e-9);
    Ok(report(cfg, vec![s, sep], None))
}

// ---------------------------------------------------------------------------
// poincare

fn poincare(cfg: &RunConfig) -> Result<Report<'_>> {
    let w = Weight::from_name(&cfg.weight)?;
    let m = *cfg.n.last().unwrap_or(&8001);
    let mut s = Suite::new("poincare");
    let base = poincare_estimate(&w, 40.0, m)?;
    s.at_most(
        format!("{}_extrapolation_shift", w.name()),
        ((base.estimate - base.wide) / base.estimate).abs(),
        0.02,
    );
    for &l in &cfg.lambda {
        let d = poincare_estimate(&w.dilate(l)?, 40.0, m)?;
        s.at_most(format!("scaling_lambda_{l}"), (d.estimate * l * l / base.estimate - 1.0).abs(), 0.02);
    }
    let mut p = Suite::new("perturbation");
    let c = poincare_perturbation_check(&w)?;
    p.push("perturbed_constant", c.perturbed, c.bound, c.ok);
    Ok(report(cfg, vec![s, p], None))
}
