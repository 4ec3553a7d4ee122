//! Strip-analytic functionals: Δ_f, the kernels K_u and K, Fourier transforms,
//! the identity Σ k f_k² = ¼∫|Δ_f|² dν₂, the Γ_φ double integrals, the
//! geometry of arctan(D(0,r)) and the nested-disk integral.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;

use crate::dd::Accumulator;
use crate::error::{Error, Result};
use crate::function::{Polynomial, StripFunction};
use crate::measures::Weight;
use crate::orthopoly::{gauss_rule, mp_recurrence};
use crate::quad::{find_cutoff, integrate_segments, panel_nodes, tanh_sinh_unit, Estimate, GaussLegendre, Tolerance};
use crate::special::{ln_x_over_sinh, x_over_sinh};
use crate::spectral::{expand, WeightProfile};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Δ_f(x) = f(x+i) − f(x−i).
pub fn delta(f: &dyn StripFunction, x: f64) -> Complex64 {
    f.eval(Complex64::new(x, 1.0)) - f.eval(Complex64::new(x, -1.0))
}

/// K_u(x) = x e^{ux}/sinh(πx/2), with K_u(0) = 2/π.
pub fn kernel_ku(u: f64, x: f64) -> f64 {
    2.0 / PI * (ln_x_over_sinh(0.5 * PI * x) + u * x).exp()
}

/// K(x) = 2 sinh(πx/8)/sinh(πx/2) = ∫_{−π/8}^{π/8} K_u(x) du, with K(0) = 1/2.
pub fn kernel_k(x: f64) -> f64 {
    let a = PI * x / 8.0;
    0.5 * (ln_x_over_sinh(4.0 * a) - ln_x_over_sinh(a)).exp()
}

/// K̂(v) = ∫K(x)e^{ixv}dx = 4/(1 + √2 cosh 2v).
pub fn khat_closed(v: f64) -> f64 {
    let c = (2.0 * v).cosh();
    if c.is_finite() {
        4.0 / (1.0 + SQRT_2 * c)
    } else {
        4.0 * SQRT_2 * (-2.0 * v.abs()).exp()
    }
}

fn cosine_transform(g: impl Fn(f64) -> f64, v: f64, extent: f64) -> Result<f64> {
    let mut cuts = vec![0.0];
    let mut x = 0.0;
    while x < extent {
        x = (x + 1.0).min(extent);
        cuts.push(x);
    }
    let e = integrate_segments(|x| g(x) * (x * v).cos(), &cuts, Tolerance::new(1e-17, 1e-13), 20_000)?;
    Ok(2.0 * e.value)
}

/// ∫K(x)e^{ixv}dx by quadrature (K is even, so a cosine transform).
pub fn khat_numeric(v: f64) -> Result<f64> {
    cosine_transform(kernel_k, v, 120.0)
}

/// I(v) = 2π sinh(πv/4)/sinh(πv).
pub fn appendix_b_closed(v: f64) -> f64 {
    if v == 0.0 {
        return PI / 2.0;
    }
    2.0 * PI * (ln_x_over_sinh(PI * v) - ln_x_over_sinh(PI * v / 4.0)).exp() / 4.0
}

/// ∫e^{ixv}/(√2 cosh x + 1) dx by quadrature.
pub fn appendix_b_numeric(v: f64) -> Result<f64> {
    cosine_transform(|x| 1.0 / (SQRT_2 * x.cosh() + 1.0), v, 60.0)
}

/// CSV rows (v, K̂ numeric, K̂ closed form).
pub fn khat_csv(vs: &[f64]) -> Result<String> {
    use std::fmt::Write as _;
    let mut s = String::from("v,khat_numeric,khat_closed\n");
    for &v in vs {
        let _ = writeln!(s, "{v:.16e},{:.16e},{:.16e}", khat_numeric(v)?, khat_closed(v));
    }
    Ok(s)
}

/// Fourier transform ∫Δ_f(x)e^{ixv}dx, integrated along the line Im x = `shift`.
///
/// For entire f that decays in every horizontal strip the value does not
/// depend on `shift`; moving the line to the saddle of the integrand removes
/// the cancellation that limits real-line quadrature at large v.
pub fn delta_hat_numeric(f: &dyn StripFunction, v: f64, shift: f64) -> Result<Complex64> {
    let g = |x: f64| {
        let z = Complex64::new(x, shift);
        let d = f.eval(z + I) - f.eval(z - I);
        d * (I * z * v).exp()
    };
    let mag = |x: f64| g(x).norm();
    let hi = find_cutoff(&mag, 0.0, 1.0, 2.0, 1e-22)?;
    let lo = find_cutoff(&mag, 0.0, -1.0, 2.0, 1e-22)?;
    let width = 0.5 * f.scale_hint().min(1.0) / (1.0 + v.abs() * f.scale_hint()).max(1.0);
    let (xs, ws) = panel_nodes(lo, hi, &[0.0], width, GaussLegendre::panel_rule());
    let mut re = Accumulator::new();
    let mut im = Accumulator::new();
    for (x, w) in xs.iter().zip(&ws) {
        let val = g(*x);
        if !(val.re.is_finite() && val.im.is_finite()) {
            return Err(Error::Evaluation(*x));
        }
        re.add(w * val.re);
        im.add(w * val.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Closed form of ∫Δ_{F_λ}(x)e^{ixv}dx = 2√(2π) λ^{−3/2} e^{−v²/2λ²} sinh v.
pub fn delta_hat_gaussian(lambda: f64, v: f64) -> f64 {
    2.0 * (2.0 * PI).sqrt() * lambda.powf(-1.5) * (-v * v / (2.0 * lambda * lambda)).exp() * v.sinh()
}

fn check_growth(f: &dyn StripFunction) -> Result<()> {
    let a = f.growth_alpha();
    if !(a < FRAC_PI_4) {
        return Err(Error::Contract(format!(
            "growth exponent {a} is not below π/4; the strip identities need α < π/4"
        )));
    }
    Ok(())
}

/// Spot-check of the strip-function contract: conjugate symmetry on a grid
/// and |f(R+iv)| ≤ m·e^{α|R|} at R ∈ {±10, ±30}, |v| ≤ 1.
pub fn validate_strip_function(f: &dyn StripFunction, m: f64) -> Result<()> {
    check_growth(f)?;
    let alpha = f.growth_alpha();
    if f.real_on_real_line() {
        for i in -8..=8 {
            for j in -4..=4 {
                let z = Complex64::new(0.75 * i as f64, 0.25 * j as f64);
                let a = f.eval(z.conj());
                let b = f.eval(z).conj();
                if (a - b).norm() > 1e-12 * (1.0 + a.norm()) {
                    return Err(Error::Contract(format!("conjugate symmetry fails at {z}")));
                }
            }
        }
    }
    for &r in &[-30.0, -10.0, 10.0, 30.0f64] {
        for j in -4..=4 {
            let z = Complex64::new(r, 0.25 * j as f64);
            if f.eval(z).norm() > m * (alpha * r.abs()).exp() {
                return Err(Error::Contract(format!("growth bound fails at {z}")));
            }
        }
    }
    Ok(())
}

/// ¼∫|Δ_f|² dν₂ with its quadrature error estimate.
pub fn identity_rhs(f: &dyn StripFunction) -> Result<Estimate> {
    check_growth(f)?;
    let nu2 = Weight::nu_ell(2)?;
    let e = nu2.expect(|x| 0.25 * delta(f, x).norm_sqr(), &[], Tolerance::new(1e-300, 1e-12))?;
    Ok(e)
}

// ---------------------------------------------------------------------------
// Geometry of arctan(D(0, r))

/// C_r = (1+r²)/(1−r²) for the disk D(0, r).
#[derive(Debug, Clone, Copy)]
pub struct DiskGeometry {
    pub r: f64,
    pub c_r: f64,
}

impl DiskGeometry {
    pub fn new(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain(format!("disk radius must lie in (0,1), got {r}")));
        }
        let eps = 1.0 - r;
        Ok(Self {
            r,
            c_r: (1.0 + r * r) / (eps * (2.0 - eps)),
        })
    }

    /// arccos(1/C_r)/2: the largest |Re z| in the image.
    pub fn half_width(&self) -> f64 {
        0.5 * (1.0 / self.c_r).acos()
    }

    /// R_{θ,r} = C_r cos 2θ + √(C_r² cos² 2θ − 1).
    pub fn radius(&self, theta: f64) -> Result<f64> {
        Ok(self.radius_pair(theta)?.0)
    }

    /// (R_{θ,r}, C_r cos 2θ − √(C_r² cos² 2θ − 1)); the product is 1.
    pub fn radius_pair(&self, theta: f64) -> Result<(f64, f64)> {
        if theta.abs() > self.half_width() * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "θ = {theta} exceeds the angular half-width {}",
                self.half_width()
            )));
        }
        let c = self.c_r * (2.0 * theta).cos();
        let s = (c * c - 1.0).max(0.0).sqrt();
        let big = c + s;
        Ok((big, 1.0 / big))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        if z.re.abs() > self.half_width() {
            return false;
        }
        match self.radius(z.re) {
            Ok(big) => z.im.abs() <= 0.5 * big.ln(),
            Err(_) => false,
        }
    }
}

pub fn disk_image_radius(theta: f64, r: f64) -> Result<f64> {
    DiskGeometry::new(r)?.radius(theta)
}

/// z ∈ arctan(D(0, r)).
pub fn disk_image_contains(z: Complex64, r: f64) -> Result<bool> {
    Ok(DiskGeometry::new(r)?.contains(z))
}

/// Depth of the point u + iv: the greatest ε with u+iv ∈ arctan(D(0, 1−ε)).
#[derive(Debug, Clone, Copy)]
pub struct Depth {
    pub a: f64,
    pub feasible: bool,
    /// (π − 4|u|)e^{−2|v|}/(2π)
    pub lower: f64,
    /// (π − 4|u|)e^{−2|v|}
    pub upper: f64,
}

fn depth_feasible(u: f64, v: f64, eps: f64) -> bool {
    if eps <= 0.0 {
        return true;
    }
    if eps >= 1.0 {
        return false;
    }
    let r = 1.0 - eps;
    let c = (1.0 + r * r) / (eps * (2.0 - eps));
    let cu = (2.0 * u).cos();
    if cu < 1.0 / c {
        return false;
    }
    let cc = c * cu;
    let big = cc + (cc * cc - 1.0).max(0.0).sqrt();
    big >= (2.0 * v.abs()).exp()
}

/// a(u, v) by bisection on the two membership conditions, tolerance 1e−12 in ε.
pub fn strip_depth_a(u: f64, v: f64) -> Result<Depth> {
    if !(u.abs() < FRAC_PI_4) {
        return Err(Error::Domain(format!("|u| must be below π/4, got {u}")));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if depth_feasible(u, v, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = (PI - 4.0 * u.abs()) * (-2.0 * v.abs()).exp();
    Ok(Depth {
        a: lo,
        feasible: lo > 0.0,
        lower: b / (2.0 * PI),
        upper: b,
    })
}

/// a(u, v) = 1 − √((Q−1)/(Q+1)) with Q = cosh 2v / cos 2u.
pub fn strip_depth_closed(u: f64, v: f64) -> f64 {
    let cu = (2.0 * u).cos();
    if cu <= 0.0 {
        return 0.0;
    }
    let q = (2.0 * v).cosh() / cu;
    if !q.is_finite() {
        return 0.0;
    }
    // √(1 − 2/(Q+1)) = exp(½ ln(1 − 2/(Q+1)))
    -(0.5 * (-2.0 / (q + 1.0)).ln_1p()).exp_m1()
}

// ---------------------------------------------------------------------------
// Disk integral

/// ∫_0^1 φ(ε) ∫_{D(0,1−ε)} |G_f′|² dε for G_f(s) = Σ f_k s^k (MP(1) coefficients).
pub fn disk_integral_lhs(f: &dyn StripFunction, p: &WeightProfile) -> Result<f64> {
    let poly = f
        .as_polynomial()
        .ok_or_else(|| Error::Unsupported("the disk integral needs a polynomial".into()))?;
    let deg = poly.degree();
    if deg == 0 {
        return Ok(0.0);
    }
    let basis = mp_recurrence(1, 2 * deg + 2)?;
    let rule = gauss_rule(&basis, 2 * deg + 2)?;
    let e = expand(poly, &basis, deg, &rule)?;
    // G′(s) = Σ_{k≥1} k f_k s^{k−1}
    let dg: Vec<f64> = (1..=deg).map(|k| k as f64 * e.coeffs[k]).collect();
    let m = 2 * deg + 2;
    let gl = GaussLegendre::new(deg + 1);
    let inner = |r: f64| -> f64 {
        let mut acc = Accumulator::new();
        for (t, w) in gl.nodes.iter().zip(&gl.weights) {
            let rho = 0.5 * r * (t + 1.0);
            let mut ring = 0.0;
            for j in 0..m {
                let s = Complex64::from_polar(rho, 2.0 * PI * j as f64 / m as f64);
                let val = dg.iter().rev().fold(Complex64::new(0.0, 0.0), |a, &c| a * s + c);
                ring += val.norm_sqr();
            }
            acc.add(0.5 * r * w * rho * ring * 2.0 * PI / m as f64);
        }
        acc.value()
    };
    let est = tanh_sinh_unit(|eps, c| p.phi(eps) * inner(c), 1e-12)?;
    Ok(est.value)
}

// ---------------------------------------------------------------------------
// Double integrals over (u, v) ∈ (−π/4, π/4) × ℝ

/// The three double integrals (1/8π)∫∫|FT[K_uΔ_f](v)|² Φ(·) du dv with Φ evaluated at
/// (π−4|u|)e^{−2|v|} (upper), at the depth a(u,v) (middle) and at
/// (π−4|u|)e^{−2|v|}/(2π) (lower). The middle value equals Σ Γ_φ(k) f_k².
#[derive(Debug, Clone, Copy)]
pub struct StripBounds {
    pub upper: f64,
    pub middle: f64,
    pub lower: f64,
    /// Largest |v| reached before the integrand became negligible.
    pub v_extent: f64,
}

impl StripBounds {
    /// lower ≤ value ≤ upper, with a relative slack.
    pub fn brackets(&self, value: f64, rel: f64) -> bool {
        self.lower <= value * (1.0 + rel) && value <= self.upper * (1.0 + rel)
    }
}

fn u_grid() -> (Vec<f64>, Vec<f64>) {
    let gl = GaussLegendre::new(10);
    let mut us = Vec::new();
    let mut ws = Vec::new();
    // graded toward 0 (the depth has a cone point at u = v = 0) and toward π/4
    let mut edges: Vec<f64> = (1..=20).rev().map(|j| FRAC_PI_4 / 2.0 * 0.5f64.powi(j)).collect();
    edges.insert(0, 0.0);
    edges.push(FRAC_PI_4 / 2.0);
    for j in 2..=24 {
        edges.push(FRAC_PI_4 * (1.0 - 0.5f64.powi(j)));
    }
    for pair in edges.windows(2) {
        let mut xs = Vec::new();
        let mut w = Vec::new();
        gl.push_mapped(pair[0], pair[1], &mut xs, &mut w);
        for (x, q) in xs.into_iter().zip(w) {
            us.push(x);
            ws.push(q);
            us.push(-x);
            ws.push(q);
        }
    }
    (us, ws)
}

/// Derivatives tan^{(n)}(z), n = 1..=n_max.
fn tan_derivatives(z: Complex64, n_max: usize, tables: &[Vec<f64>]) -> Vec<Complex64> {
    if z.im.abs() <= 0.5 {
        let t = z.tan();
        (1..=n_max)
            .map(|n| tables[n].iter().rev().fold(Complex64::new(0.0, 0.0), |a, &c| a * t + c))
            .collect()
    } else if z.im < 0.0 {
        tan_derivatives(z.conj(), n_max, tables).into_iter().map(|c| c.conj()).collect()
    } else {
        // tan^{(n)}(z) = 2i Σ_{j≥1} (−1)^j (2ij)^n w^j, w = e^{2iz}
        let w = (2.0 * I * z).exp();
        let mut out = vec![Complex64::new(0.0, 0.0); n_max];
        let mut wj = Complex64::new(1.0, 0.0);
        let decay = w.norm();
        let mut j = 1usize;
        loop {
            wj *= w;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let base = 2.0 * I * j as f64;
            let mut pw = Complex64::new(1.0, 0.0);
            let mut biggest = 0.0f64;
            for slot in out.iter_mut() {
                pw *= base;
                let term = 2.0 * I * sign * pw * wj;
                biggest = biggest.max(term.norm());
                *slot += term;
            }
            let scale = out.iter().fold(0.0f64, |m, c| m.max(c.norm()));
            if (j as f64) * decay < 1.0 && biggest < 1e-18 * scale.max(1e-300) && j > n_max {
                break;
            }
            if j > 5000 {
                break;
            }
            j += 1;
        }
        out
    }
}

/// D_n with tan^{(n)} = D_n(tan z): D_0 = t, D_{n+1} = D_n′(t)(1 + t²).
fn tan_derivative_tables(n_max: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0, 1.0]];
    for n in 0..n_max {
        let d = &out[n];
        let dp: Vec<f64> = (1..d.len()).map(|i| i as f64 * d[i]).collect();
        let mut next = vec![0.0; dp.len() + 2];
        for (i, c) in dp.iter().enumerate() {
            next[i] += c;
            next[i + 2] += c;
        }
        out.push(next);
    }
    out
}

/// Source of FT[K_uΔ_f](v) for all u nodes at once.
trait TransformBlock {
    fn fill(&self, v: f64, us: &[f64], out: &mut [Complex64]);
}

/// Closed form for polynomials: ∫x^{m+1}e^{ax}/sinh(πx/2)dx = 2 tan^{(m+1)}(a).
struct PolynomialBlock {
    delta: Vec<Complex64>,
    tables: Vec<Vec<f64>>,
}

impl PolynomialBlock {
    fn new(p: &Polynomial) -> Self {
        let delta = p.strip_difference();
        let tables = tan_derivative_tables(delta.len() + 1);
        Self { delta, tables }
    }

    fn value(&self, u: f64, v: f64) -> Complex64 {
        let n_max = self.delta.len();
        let d = tan_derivatives(Complex64::new(u, v), n_max, &self.tables);
        self.delta
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (m, c)| acc + c * d[m] * 2.0)
    }
}

impl TransformBlock for PolynomialBlock {
    fn fill(&self, v: f64, us: &[f64], out: &mut [Complex64]) {
        for (o, &u) in out.iter_mut().zip(us) {
            *o = self.value(u, v);
        }
    }
}

/// Quadrature on fixed x panels with the e^{ux} factors tabulated.
struct GridBlock {
    xs: Vec<f64>,
    h: Vec<Complex64>,
    exp_ux: Vec<Vec<f64>>,
}

impl GridBlock {
    fn new(f: &dyn StripFunction, us: &[f64], v_est: f64) -> Result<Self> {
        let mag = |x: f64| {
            let d = delta(f, x).norm();
            if d == 0.0 {
                0.0
            } else {
                (d.ln() + ln_x_over_sinh(0.5 * PI * x) + FRAC_PI_4 * x.abs()).exp()
            }
        };
        let hi = find_cutoff(&mag, 0.0, 1.0, 2.0, 1e-22)?;
        let lo = find_cutoff(&mag, 0.0, -1.0, 2.0, 1e-22)?;
        let omega = 1.0 / (f.scale_hint() * f.scale_hint());
        let width = 0.5f64.min(16.0 / (omega + v_est));
        let (xs, ws) = panel_nodes(lo, hi, &[0.0], width, GaussLegendre::panel_rule());
        let mut h = Vec::with_capacity(xs.len());
        for (x, w) in xs.iter().zip(&ws) {
            let d = delta(f, *x);
            if !(d.re.is_finite() && d.im.is_finite()) {
                return Err(Error::Evaluation(*x));
            }
            h.push(d * (w * 2.0 / PI * x_over_sinh(0.5 * PI * x)));
        }
        let exp_ux = us.iter().map(|u| xs.iter().map(|x| (u * x).exp()).collect()).collect();
        Ok(Self { xs, h, exp_ux })
    }
}

impl TransformBlock for GridBlock {
    fn fill(&self, v: f64, _us: &[f64], out: &mut [Complex64]) {
        let hc: Vec<Complex64> = self
            .xs
            .iter()
            .zip(&self.h)
            .map(|(x, h)| h * Complex64::from_polar(1.0, x * v))
            .collect();
        for (o, row) in out.iter_mut().zip(&self.exp_ux) {
            let (mut re, mut im) = (0.0, 0.0);
            for (c, e) in hc.iter().zip(row) {
                re += c.re * e;
                im += c.im * e;
            }
            *o = Complex64::new(re, im);
        }
    }
}

fn double_integrals(block: &dyn TransformBlock, p: &WeightProfile, us: &[f64], uw: &[f64]) -> Result<StripBounds> {
    let gl = GaussLegendre::new(16);
    let width = 0.5;
    let mut upper = Accumulator::new();
    let mut middle = Accumulator::new();
    let mut lower = Accumulator::new();
    let mut ft = vec![Complex64::new(0.0, 0.0); us.len()];
    let mut quiet = 0;
    let mut v0 = 0.0;
    loop {
        let mut vs = Vec::new();
        let mut vw = Vec::new();
        if v0 == 0.0 {
            let mut edges: Vec<f64> = (1..=20).rev().map(|j| width * 0.5f64.powi(j)).collect();
            edges.insert(0, 0.0);
            edges.push(width);
            for pair in edges.windows(2) {
                gl.push_mapped(pair[0], pair[1], &mut vs, &mut vw);
            }
        } else {
            gl.push_mapped(v0, v0 + width, &mut vs, &mut vw);
        }
        let mut panel_upper = 0.0;
        for (&v, &wv) in vs.iter().zip(&vw) {
            block.fill(v, us, &mut ft);
            let ev = (-2.0 * v).exp();
            for (i, (&u, &wu)) in us.iter().zip(uw).enumerate() {
                let m = ft[i].norm_sqr() * wu * wv;
                if !m.is_finite() {
                    return Err(Error::Numeric(format!("transform is not finite at u = {u}, v = {v}")));
                }
                if m == 0.0 {
                    continue;
                }
                let b = (PI - 4.0 * u.abs()) * ev;
                let up = m * p.big_phi(b);
                panel_upper += up;
                upper.add(up);
                middle.add(m * p.big_phi(strip_depth_closed(u, v)));
                lower.add(m * p.big_phi(b / (2.0 * PI)));
            }
        }
        v0 += width;
        if panel_upper <= 1e-17 * upper.value() && v0 >= 4.0 {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        if v0 > 400.0 {
            return Err(Error::Integration {
                message: "v integral has not decayed by |v| = 400".into(),
                estimate: middle.value() / (4.0 * PI),
                error: f64::NAN,
            });
        }
    }
    // the integrand is even in v for functions real on the real line
    let scale = 2.0 / (8.0 * PI);
    Ok(StripBounds {
        upper: upper.value() * scale,
        middle: middle.value() * scale,
        lower: lower.value() * scale,
        v_extent: v0,
    })
}

/// The Γ_φ double integrals for f; see [`StripBounds`].
pub fn lemma22_bounds(f: &dyn StripFunction, p: &WeightProfile) -> Result<StripBounds> {
    check_growth(f)?;
    if !f.real_on_real_line() {
        return Err(Error::Unsupported("double integrals assume f real on the real line".into()));
    }
    let (us, uw) = u_grid();
    if let Some(poly) = f.as_polynomial() {
        let block = PolynomialBlock::new(poly);
        return double_integrals(&block, p, &us, &uw);
    }
    let omega = 1.0 / (f.scale_hint() * f.scale_hint());
    let v_est = omega + 12.0 * omega.sqrt() + 10.0;
    let block = GridBlock::new(f, &us, v_est)?;
    double_integrals(&block, p, &us, &uw)
}

/// FT[K_uΔ_f](v) by quadrature on the real line; a reference for the fast routes.
pub fn kernel_transform_numeric(f: &dyn StripFunction, u: f64, v: f64) -> Result<Complex64> {
    let g = |x: f64| delta(f, x) * kernel_ku(u, x) * Complex64::from_polar(1.0, x * v);
    let mag = |x: f64| g(x).norm();
    let hi = find_cutoff(&mag, 0.0, 1.0, 4.0, 1e-22)?;
    let lo = find_cutoff(&mag, 0.0, -1.0, 4.0, 1e-22)?;
    let width = 0.25 / (1.0 + v.abs());
    let (xs, ws) = panel_nodes(lo, hi, &[0.0], width, GaussLegendre::panel_rule());
    let mut re = Accumulator::new();
    let mut im = Accumulator::new();
    for (x, w) in xs.iter().zip(&ws) {
        let val = g(*x);
        re.add(w * val.re);
        im.add(w * val.im);
    }
    Ok(Complex64::new(re.value(), im.value()))
}
