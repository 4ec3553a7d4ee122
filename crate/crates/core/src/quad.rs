//! Quadrature primitives shared by every module.
//!
//! * Gauss-Legendre rules of any size (Newton on the Legendre recurrence).
//! * Adaptive Gauss-Kronrod (7/15) with a global error budget.
//! * Tanh-sinh on (0, 1) with endpoint complements, for algebraic and
//!   logarithmic endpoint singularities.
//! * Real-line integration that locates its own truncation points from the
//!   decay of the integrand.

use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::dd::Accumulator;
use crate::error::{Error, Result};

/// Value plus an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Combined absolute/relative stopping rule.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-14, 1e-12)
    }
}

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        let nf = n as f64;
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 * x.abs().max(1e-3) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Shared 24-point rule used for composite panels.
    pub fn panel_rule() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(24))
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Accumulator::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * x));
        }
        half * acc.value()
    }

    /// Nodes and weights mapped to [a, b], appended to the output vectors.
    pub fn push_mapped(&self, a: f64, b: f64, xs: &mut Vec<f64>, ws: &mut Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            xs.push(mid + half * x);
            ws.push(half * w);
        }
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre nodes on [a, b].
///
/// The interval is cut at every breakpoint inside it and then into panels of
/// width at most `max_width`.
pub fn panel_nodes(
    a: f64,
    b: f64,
    breakpoints: &[f64],
    max_width: f64,
    rule: &GaussLegendre,
) -> (Vec<f64>, Vec<f64>) {
    let mut cuts = vec![a];
    let mut inner: Vec<f64> = breakpoints.iter().copied().filter(|&c| c > a && c < b).collect();
    inner.sort_by(f64::total_cmp);
    cuts.extend(inner);
    cuts.push(b);
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi <= lo {
            continue;
        }
        let pieces = ((hi - lo) / max_width).ceil().max(1.0) as usize;
        let h = (hi - lo) / pieces as f64;
        for j in 0..pieces {
            let p0 = lo + j as f64 * h;
            let p1 = if j + 1 == pieces { hi } else { p0 + h };
            rule.push_mapped(p0, p1, &mut xs, &mut ws);
        }
    }
    (xs, ws)
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);
    let fc = f(centr);
    if !fc.is_finite() {
        return Err(Error::Evaluation(centr));
    }
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = hlgth * XGK[j];
        let x1 = centr - dx;
        let x2 = centr + dx;
        let f1 = f(x1);
        let f2 = f(x2);
        if !f1.is_finite() {
            return Err(Error::Evaluation(x1));
        }
        if !f2.is_finite() {
            return Err(Error::Evaluation(x2));
        }
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let value = resk * hlgth;
    let err = ((resk - resg) * hlgth).abs();
    Ok((value, err, resabs * hlgth.abs()))
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    l1: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment> {
    let (value, error, l1) = gk15(f, a, b)?;
    Ok(Segment { a, b, value, error, l1 })
}

/// Adaptive Gauss-Kronrod over a list of initial segments.
///
/// Bisects the segment with the largest error until the global error meets
/// the tolerance or the segment budget is spent. Integrals that cancel to
/// (nearly) zero stop at a roundoff floor relative to ∫|f|.
pub fn integrate_segments<F: Fn(f64) -> f64>(
    f: F,
    cuts: &[f64],
    tol: Tolerance,
    max_segments: usize,
) -> Result<Estimate> {
    let mut heap = BinaryHeap::new();
    for pair in cuts.windows(2) {
        if pair[1] > pair[0] {
            heap.push(segment(&f, pair[0], pair[1])?);
        }
    }
    let totals = |heap: &BinaryHeap<Segment>| {
        let mut value = Accumulator::new();
        let mut err = 0.0;
        let mut l1 = 0.0;
        for s in heap.iter() {
            value.add(s.value);
            err += s.error;
            l1 += s.l1;
        }
        (value.value(), err, l1)
    };
    let (mut value, mut err, mut l1) = totals(&heap);
    let mut steps = 0usize;
    loop {
        let target = tol.target(value).max(50.0 * f64::EPSILON * l1);
        if err <= target {
            let (v, e, _) = totals(&heap);
            return Ok(Estimate { value: v, error: e });
        }
        if heap.len() >= max_segments {
            return Err(Error::Integration {
                message: format!("segment budget {max_segments} exhausted"),
                estimate: value,
                error: err,
            });
        }
        let worst = heap.pop().expect("heap is nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further; accept its contribution.
            err -= worst.error;
            heap.push(Segment { error: 0.0, ..worst });
            continue;
        }
        let left = segment(&f, worst.a, mid)?;
        let right = segment(&f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
        steps += 1;
        if steps % 512 == 0 {
            (value, err, l1) = totals(&heap);
        }
    }
}

/// Adaptive integral of `f` over [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    integrate_segments(f, &[a, b], tol, 20_000)
}

/// Tanh-sinh integral over (0, 1).
///
/// The integrand receives `(x, 1 - x)` with the complement computed without
/// cancellation, so integrands such as `log²(ε)` or `ε^{-0.9}` and functions of
/// `1 - x` near `x = 1` keep full relative accuracy.
pub fn tanh_sinh_unit<F: Fn(f64, f64) -> f64>(f: F, tol: f64) -> Result<Estimate> {
    use std::f64::consts::FRAC_PI_2;
    // abscissa x(t) = 1/(1 + exp(-π sinh t)), complement 1/(1 + exp(π sinh t))
    let node = |t: f64| -> (f64, f64, f64) {
        let s = FRAC_PI_2 * 2.0 * t.sinh();
        let e = (-s).exp();
        let x = 1.0 / (1.0 + e);
        let cx = e / (1.0 + e);
        let c = FRAC_PI_2 * 2.0 * t.cosh();
        // dx/dt = c * x * (1 - x)
        let w = c * x * cx;
        (x, cx, w)
    };
    let t_max = 6.5;
    let mut h = 0.5;
    let eval = |t: f64| -> Result<f64> {
        let (x, cx, w) = node(t);
        if w == 0.0 || x <= 0.0 || cx <= 0.0 {
            return Ok(0.0);
        }
        let v = f(x, cx);
        if !v.is_finite() {
            return Err(Error::Evaluation(x));
        }
        Ok(v * w)
    };
    let mut acc = Accumulator::new();
    acc.add(eval(0.0)?);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        acc.add(eval(t)?);
        acc.add(eval(-t)?);
        k += 1;
    }
    let mut prev = acc.value() * h;
    for _level in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= t_max {
            let t = k as f64 * h;
            acc.add(eval(t)?);
            acc.add(eval(-t)?);
            k += 2;
        }
        let cur = acc.value() * h;
        let diff = (cur - prev).abs();
        if diff <= tol * cur.abs().max(f64::MIN_POSITIVE) && _level >= 2 {
            return Ok(Estimate {
                value: cur,
                error: diff,
            });
        }
        prev = cur;
    }
    Err(Error::Integration {
        message: "tanh-sinh did not converge".into(),
        estimate: prev,
        error: f64::NAN,
    })
}

/// Walk outward from `start` until `|f|` stays below `rel * max|f|` for a
/// stretch of consecutive steps and at least `min_extent` has been covered.
/// Returns the cut-off abscissa.
pub fn find_cutoff<F: Fn(f64) -> f64>(
    f: &F,
    start: f64,
    direction: f64,
    min_extent: f64,
    rel: f64,
) -> Result<f64> {
    const MAX_EXTENT: f64 = 20_000.0;
    let mut peak: f64 = 0.0;
    let mut quiet = 0;
    let mut step = 0.25;
    let mut x = start;
    loop {
        let v = f(x).abs();
        if v.is_nan() {
            return Err(Error::Evaluation(x));
        }
        peak = peak.max(v);
        let covered = (x - start).abs();
        if v <= rel * peak && covered >= min_extent {
            quiet += 1;
            if quiet >= 6 {
                return Ok(x);
            }
        } else {
            quiet = 0;
        }
        if covered > MAX_EXTENT {
            return Err(Error::Integration {
                message: format!("integrand has not decayed by |x| = {MAX_EXTENT}"),
                estimate: f64::NAN,
                error: f64::INFINITY,
            });
        }
        if covered > 64.0 {
            step = (covered / 64.0).min(16.0);
        }
        x += direction * step;
    }
}

/// Integral of `f` over [lo, hi] where `lo` may be -inf and `hi` may be +inf;
/// infinite ends are truncated where the integrand has decayed below
/// 1e-20 of its peak, but never before `min_extent` from the origin side.
pub fn integrate_line<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    min_extent: f64,
    breakpoints: &[f64],
    tol: Tolerance,
) -> Result<Estimate> {
    let origin = if lo.is_finite() && hi.is_finite() {
        0.5 * (lo + hi)
    } else if lo.is_finite() {
        lo
    } else if hi.is_finite() {
        hi
    } else {
        0.0
    };
    let a = if lo.is_finite() {
        lo
    } else {
        find_cutoff(&f, origin, -1.0, min_extent, 1e-20)?
    };
    let b = if hi.is_finite() {
        hi
    } else {
        find_cutoff(&f, origin, 1.0, min_extent, 1e-20)?
    };
    let mut cuts = vec![a];
    let mut inner: Vec<f64> = breakpoints.iter().copied().filter(|&c| c > a && c < b).collect();
    inner.push(origin);
    inner.retain(|&c| c > a && c < b);
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    // Unit-scale seeding keeps narrow features from being skipped.
    let mut seeded = Vec::new();
    let mut prev = a;
    for c in inner.into_iter().chain(std::iter::once(b)) {
        let span = c - prev;
        let pieces = (span / 2.0).ceil().clamp(1.0, 4096.0) as usize;
        for j in 1..pieces {
            seeded.push(prev + span * j as f64 / pieces as f64);
        }
        seeded.push(c);
        prev = c;
    }
    cuts.extend(seeded);
    integrate_segments(f, &cuts, tol, 200_000)
}
