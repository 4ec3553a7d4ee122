//! Product-measure expansions on ℝ^d, the tensorization inequality, and the
//! contrast between two-sided and half-line approximation rates.

use std::fmt::Write as _;

use crate::dd::Accumulator;
use crate::error::{Error, Result};
use crate::function::{ClippedAbs, Closure, Polynomial, RealFunction};
use crate::measures::{log_weight, Weight};
use crate::orthopoly::{gauss_rule, laguerre_basis, mp_recurrence, OrthoBasis};
use crate::quad::{panel_nodes, GaussLegendre, Tolerance};
use crate::spectral::{expand_panels, log2_seq, main_theorem_sides};

/// Largest per-axis degree for product expansions.
pub const AXIS_DEGREE_CAP: usize = 48;

/// Quadrature used along every axis.
#[derive(Debug, Clone)]
pub enum AxisRule {
    /// Gauss rule of the axis weight with 2N nodes.
    Gauss,
    /// Composite Gauss–Legendre panels with the given breakpoints.
    Panels(Vec<f64>),
}

/// Nodes and the matrix w_i ρ(x_i) p̃_k(x_i) (row i, column k) for one axis.
struct Axis {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// w_i ρ_i p̃_k(x_i), row-major with stride n+1
    full: Vec<f64>,
}

fn axis(basis: &OrthoBasis, n: usize, rule: &AxisRule) -> Result<Axis> {
    let (nodes, lw): (Vec<f64>, Vec<f64>) = match rule {
        AxisRule::Gauss => {
            let r = gauss_rule(basis, (2 * n).max(2))?;
            (r.nodes, r.log_weights)
        }
        AxisRule::Panels(breaks) => {
            let w = &basis.weight;
            let (lo, hi) = w.support();
            let mut vals = vec![0.0; n + 1];
            // extend until √ρ·max|p̃_k|·(1+x²)² is negligible
            let mut reach = |dir: f64, bound: f64| -> f64 {
                if bound == 0.0 {
                    return 0.0;
                }
                let mut x = 8.0;
                while x < 2000.0 {
                    let l = w.log_density(dir * x).unwrap_or(f64::NEG_INFINITY);
                    basis.orthonormal_scaled(dir * x, 0.5 * l, &mut vals);
                    let m = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                    if m * (1.0 + x * x).powi(2) < 1e-18 {
                        break;
                    }
                    x += 1.0;
                }
                x.min(bound.abs())
            };
            let right = reach(1.0, hi);
            let left = reach(-1.0, lo);
            let mut br = breaks.clone();
            br.extend(w.breakpoints());
            br.push(0.0);
            for k in -8..=8 {
                br.push(k as f64);
            }
            let (xs, ws) = panel_nodes(-left, right, &br, 2.0, GaussLegendre::panel_rule());
            let lw = xs
                .iter()
                .zip(&ws)
                .map(|(&x, &q)| q.ln() + w.log_density(x).unwrap_or(f64::NEG_INFINITY))
                .collect();
            (xs, lw)
        }
    };
    let m = n + 1;
    let mut full = vec![0.0; nodes.len() * m];
    for (i, (&x, &l)) in nodes.iter().zip(&lw).enumerate() {
        basis.orthonormal_scaled(x, l, &mut full[i * m..(i + 1) * m]);
    }
    Ok(Axis {
        weights: lw.iter().map(|l| l.exp()).collect(),
        nodes,
        full,
    })
}

/// Coefficients f_α of a d-variate function in a product orthonormal basis.
#[derive(Debug, Clone)]
pub struct MultiIndexExpansion {
    pub dimension: usize,
    /// Degree cap per axis.
    pub n: usize,
    /// Row-major over α ∈ {0..=N}^d.
    pub coeffs: Vec<f64>,
    /// ‖f‖² by the same tensor quadrature.
    pub l2_norm_sq: f64,
    pub nodes_per_axis: usize,
}

impl MultiIndexExpansion {
    fn index(&self, alpha: &[usize]) -> usize {
        alpha.iter().fold(0, |acc, &a| acc * (self.n + 1) + a)
    }

    pub fn get(&self, alpha: &[usize]) -> f64 {
        assert_eq!(alpha.len(), self.dimension, "multi-index has the wrong dimension");
        self.coeffs[self.index(alpha)]
    }

    /// Every multi-index with its coefficient.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let m = self.n + 1;
        (0..self.coeffs.len()).map(move |flat| {
            let mut alpha = vec![0; self.dimension];
            let mut r = flat;
            for slot in alpha.iter_mut().rev() {
                *slot = r % m;
                r /= m;
            }
            (alpha, self.coeffs[flat])
        })
    }

    pub fn parseval_gap(&self) -> f64 {
        let mut acc = Accumulator::new();
        acc.add(self.l2_norm_sq);
        for c in &self.coeffs {
            acc.add(-c * c);
        }
        acc.value()
    }

    /// E_n by total degree: ‖f‖² − Σ_{|α| ≤ n} f_α².
    pub fn tail_total_degree(&self, n: usize) -> f64 {
        let mut acc = Accumulator::new();
        acc.add(self.l2_norm_sq);
        for (alpha, c) in self.iter() {
            if alpha.iter().sum::<usize>() <= n {
                acc.add(-c * c);
            }
        }
        acc.value().max(0.0)
    }
}

/// Tensor-quadrature coefficients in the MP(1)^⊗d basis.
pub fn product_expand(f: &dyn Fn(&[f64]) -> f64, d: usize, n: usize, rule: &AxisRule) -> Result<MultiIndexExpansion> {
    let basis = mp_recurrence(1, (2 * n).max(2))?;
    product_expand_with(f, d, n, &basis, rule)
}

/// Tensor-quadrature coefficients for an arbitrary axis basis.
pub fn product_expand_with(
    f: &dyn Fn(&[f64]) -> f64,
    d: usize,
    n: usize,
    basis: &OrthoBasis,
    rule: &AxisRule,
) -> Result<MultiIndexExpansion> {
    if !(2..=3).contains(&d) || n > AXIS_DEGREE_CAP {
        return Err(Error::Resource(format!(
            "product rules are limited to d ∈ {{2, 3}} and N ≤ {AXIS_DEGREE_CAP} (got d = {d}, N = {n})"
        )));
    }
    let ax = axis(basis, n, rule)?;
    let q = ax.nodes.len();
    let m = n + 1;
    if q.pow(d as u32) > 50_000_000 {
        return Err(Error::Resource(format!("{q}^{d} tensor nodes exceed the budget")));
    }
    let mut coeffs = vec![0.0; m.pow(d as u32)];
    let mut norm = Accumulator::new();
    let mut point = vec![0.0; d];
    match d {
        2 => {
            // G[i][b] = Σ_j f(x_i, x_j) full[j][b]; c[a][b] = Σ_i full[i][a] G[i][b]
            let mut g = vec![0.0; m];
            for i in 0..q {
                g.iter_mut().for_each(|v| *v = 0.0);
                point[0] = ax.nodes[i];
                for j in 0..q {
                    point[1] = ax.nodes[j];
                    let v = eval(f, &point)?;
                    norm.add(ax.weights[i] * ax.weights[j] * v * v);
                    let row = &ax.full[j * m..(j + 1) * m];
                    for (gb, r) in g.iter_mut().zip(row) {
                        *gb += v * r;
                    }
                }
                let row = &ax.full[i * m..(i + 1) * m];
                for a in 0..m {
                    for b in 0..m {
                        coeffs[a * m + b] += row[a] * g[b];
                    }
                }
            }
        }
        _ => {
            let mut g2 = vec![0.0; m * m];
            for i in 0..q {
                g2.iter_mut().for_each(|v| *v = 0.0);
                point[0] = ax.nodes[i];
                for j in 0..q {
                    point[1] = ax.nodes[j];
                    let mut g1 = vec![0.0; m];
                    for k in 0..q {
                        point[2] = ax.nodes[k];
                        let v = eval(f, &point)?;
                        norm.add(ax.weights[i] * ax.weights[j] * ax.weights[k] * v * v);
                        let row = &ax.full[k * m..(k + 1) * m];
                        for (gc, r) in g1.iter_mut().zip(row) {
                            *gc += v * r;
                        }
                    }
                    let row = &ax.full[j * m..(j + 1) * m];
                    for b in 0..m {
                        for c in 0..m {
                            g2[b * m + c] += row[b] * g1[c];
                        }
                    }
                }
                let row = &ax.full[i * m..(i + 1) * m];
                for a in 0..m {
                    for bc in 0..m * m {
                        coeffs[a * m * m + bc] += row[a] * g2[bc];
                    }
                }
            }
        }
    }
    // native signs per axis
    let mut e = MultiIndexExpansion {
        dimension: d,
        n,
        coeffs,
        l2_norm_sq: norm.value(),
        nodes_per_axis: q,
    };
    let signs: Vec<f64> = e
        .iter()
        .map(|(alpha, _)| alpha.iter().map(|&a| basis.sign(a)).product())
        .collect();
    e.coeffs.iter_mut().zip(signs).for_each(|(c, s)| *c *= s);
    Ok(e)
}

fn eval(f: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> Result<f64> {
    let v = f(x);
    if !v.is_finite() {
        return Err(Error::Evaluation(x[0]));
    }
    Ok(v)
}

/// Both sides of Σ_{|α|≥1} φ(α) f_α² ≤ margin · ∫ Σ_i w_i(x_i)(∂_i f)² dμ with
/// φ(α) = Σ_i φ_i(α_i), φ_i(k) = log²(e+k) (φ_i(0) = 0) and w_i = log²(e+|x_i|).
#[derive(Debug, Clone, Copy)]
pub struct TensorCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub ok: bool,
}

pub fn tensorization_check(
    f: &dyn Fn(&[f64]) -> f64,
    grad: Option<&dyn Fn(&[f64], &mut [f64])>,
    d: usize,
    n: usize,
    rule: &AxisRule,
    margin: f64,
) -> Result<TensorCheck> {
    let grad = grad.ok_or_else(|| Error::Unsupported("tensorization needs the partial derivatives".into()))?;
    let e = product_expand(f, d, n, rule)?;
    let mut lhs = Accumulator::new();
    for (alpha, c) in e.iter() {
        let phi: f64 = alpha.iter().filter(|&&a| a > 0).map(|&a| log2_seq(a)).sum();
        lhs.add(phi * c * c);
    }
    // right side: the log weight is not polynomial, so in two dimensions the
    // integral always uses panels (with the caller's breakpoints, if any)
    let basis = mp_recurrence(1, (2 * n).max(2))?;
    let rhs_rule = match (d, rule) {
        (2, AxisRule::Gauss) => AxisRule::Panels(vec![]),
        _ => rule.clone(),
    };
    let ax = axis(&basis, n, &rhs_rule)?;
    let q = ax.nodes.len();
    let mut rhs = Accumulator::new();
    let mut point = vec![0.0; d];
    let mut g = vec![0.0; d];
    let total = q.pow(d as u32);
    for flat in 0..total {
        let mut r = flat;
        let mut w = 1.0;
        for slot in (0..d).rev() {
            let i = r % q;
            r /= q;
            point[slot] = ax.nodes[i];
            w *= ax.weights[i];
        }
        grad(&point, &mut g);
        let s: f64 = point.iter().zip(&g).map(|(x, gi)| log_weight(*x) * gi * gi).sum();
        rhs.add(w * s);
    }
    let (lhs, rhs) = (lhs.value(), rhs.value());
    Ok(TensorCheck {
        lhs,
        rhs,
        margin,
        ok: lhs <= margin * rhs * (1.0 + 1e-9) + 1e-12,
    })
}

/// Largest lhs/rhs of the one-dimensional log² inequality over the axis suite
/// {x, x², min(|x|,2), e^{−x²/2}}; the constant the tensorized check is held to.
pub fn one_dimensional_margin(n: usize) -> Result<f64> {
    let suite: Vec<Box<dyn RealFunction>> = vec![
        Box::new(Polynomial::monomial(1)),
        Box::new(Polynomial::monomial(2)),
        Box::new(ClippedAbs { c: 2.0 }),
        Box::new(Closure::new(|x| (-0.5 * x * x).exp()).with_derivative(|x| -x * (-0.5 * x * x).exp())),
    ];
    let mut worst: f64 = 0.0;
    for f in &suite {
        let s = main_theorem_sides(f.as_ref(), n)?;
        worst = worst.max(s.ratio60());
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// Half-line rates

#[derive(Debug, Clone, Copy)]
pub struct LaguerreRow {
    pub n: usize,
    pub tail: f64,
    /// ∫x(f′)²e^{−x}dx / (n+1)
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone)]
pub struct LaguerreReport {
    pub sobolev: f64,
    pub rows: Vec<LaguerreRow>,
}

impl LaguerreReport {
    pub fn holds(&self, rel: f64) -> bool {
        self.rows.iter().all(|r| r.tail <= r.bound * (1.0 + rel) + 1e-15)
    }
}

fn sobolev_half(f: &dyn RealFunction) -> Result<f64> {
    if f.derivative(1.0).is_none() {
        return Err(Error::Unsupported("the Laguerre bound needs f′".into()));
    }
    let w = Weight::half_exp();
    let br: Vec<f64> = f.breakpoints().into_iter().filter(|b| *b > 0.0).collect();
    let e = w
        .expect(|x| x * f.derivative(x).unwrap_or(0.0).powi(2), &br, Tolerance::new(1e-300, 1e-12))
        .map_err(|e| Error::Contract(format!("∫x(f′)²dμ̃₁ could not be evaluated: {e}")))?;
    if !e.value.is_finite() {
        return Err(Error::Contract("∫x(f′)²dμ̃₁ diverges".into()));
    }
    Ok(e.value)
}

/// E_n(f, μ̃₁) against ∫x(f′)²dμ̃₁/(n+1) in the Laguerre basis.
pub fn laguerre_rate_check(f: &dyn RealFunction, ns: &[usize]) -> Result<LaguerreReport> {
    let sobolev = sobolev_half(f)?;
    let n_max = ns.iter().copied().max().unwrap_or(0) + 1;
    let basis = laguerre_basis(n_max + 1)?;
    let e = expand_panels(f, &basis, n_max)?;
    let rows = ns
        .iter()
        .map(|&n| {
            let tail = e.tail_by_complement(n).max(0.0);
            let bound = sobolev / (n + 1) as f64;
            LaguerreRow {
                n,
                tail,
                bound,
                ratio: if bound > 0.0 { tail / bound } else { 0.0 },
            }
        })
        .collect();
    Ok(LaguerreReport { sobolev, rows })
}

#[derive(Debug, Clone, Copy)]
pub struct RateRow {
    pub n: usize,
    pub two_sided: f64,
    pub two_sided_scaled: f64,
    pub half: f64,
    pub half_scaled: f64,
}

#[derive(Debug, Clone)]
pub struct RateReport {
    pub rows: Vec<RateRow>,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len();
    if m == 0 {
        return f64::NAN;
    }
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

impl RateReport {
    /// max / median of the E_n·log²n column.
    pub fn two_sided_spread(&self) -> f64 {
        let col: Vec<f64> = self.rows.iter().map(|r| r.two_sided_scaled).collect();
        let mx = col.iter().copied().fold(0.0, f64::max);
        mx / median(col)
    }

    /// max / median of the E_n·(n+1) column.
    pub fn half_spread(&self) -> f64 {
        let col: Vec<f64> = self.rows.iter().map(|r| r.half_scaled).collect();
        let mx = col.iter().copied().fold(0.0, f64::max);
        mx / median(col)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,En_two_sided,En_times_log2n,En_half,En_times_n\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.n, r.two_sided, r.two_sided_scaled, r.half, r.half_scaled
            );
        }
        s
    }
}

/// Side-by-side E_n under ν (MP(1)) for `two` and under e^{−x} (Laguerre) for `half`.
pub fn rate_comparison(two: &dyn RealFunction, half: &dyn RealFunction, ns: &[usize]) -> Result<RateReport> {
    let n_max = ns.iter().copied().max().unwrap_or(0) + 1;
    let nu = mp_recurrence(1, n_max + 1)?;
    let e2 = expand_panels(two, &nu, n_max)?;
    let lag = laguerre_basis(n_max + 1)?;
    let eh = expand_panels(half, &lag, n_max)?;
    let rows = ns
        .iter()
        .map(|&n| {
            let t = e2.tail_by_complement(n).max(0.0);
            let h = eh.tail_by_complement(n).max(0.0);
            let l = (n.max(2) as f64).ln();
            RateRow {
                n,
                two_sided: t,
                two_sided_scaled: t * l * l,
                half: h,
                half_scaled: h * (n + 1) as f64,
            }
        })
        .collect();
    Ok(RateReport { rows })
}
