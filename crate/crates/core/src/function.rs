//! Function capabilities used by expansions and strip functionals.

use num_complex::Complex64;

/// A real function of a real variable, with optional derivative.
pub trait RealFunction: Send + Sync {
    fn value(&self, x: f64) -> f64;

    /// Classical derivative where it exists. `None` means the capability is absent.
    fn derivative(&self, _x: f64) -> Option<f64> {
        None
    }

    /// Points where the function or its derivative is not smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Width of the narrowest feature, used to size quadrature panels.
    fn scale_hint(&self) -> f64 {
        1.0
    }
}

/// A function holomorphic on a neighbourhood of the strip |Im z| ≤ 1.
pub trait StripFunction: RealFunction {
    fn eval(&self, z: Complex64) -> Complex64;

    /// Exponential type on the strip: |f(R + iv)| = O(e^{α|R|}) for this α.
    fn growth_alpha(&self) -> f64;

    fn real_on_real_line(&self) -> bool {
        true
    }

    /// Monomial coefficients if the function is a polynomial.
    fn as_polynomial(&self) -> Option<&Polynomial> {
        None
    }
}

/// Real polynomial in the monomial basis (index = power).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn monomial(power: usize) -> Self {
        let mut c = vec![0.0; power + 1];
        c[power] = 1.0;
        Self::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative_poly(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::new(vec![0.0]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    /// Coefficients of f(x+i) − f(x−i) as a polynomial in x.
    pub fn strip_difference(&self) -> Vec<Complex64> {
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n.max(1)];
        // (x+i)^p − (x−i)^p = Σ_m C(p,m) x^m i^{p−m} (1 − (−1)^{p−m})
        for (p, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let mut binom = 1.0;
            for m in 0..=p {
                if m > 0 {
                    binom = binom * (p + 1 - m) as f64 / m as f64;
                }
                let d = p - m;
                if d % 2 == 1 {
                    let ipow = match d % 4 {
                        1 => Complex64::new(0.0, 1.0),
                        _ => Complex64::new(0.0, -1.0),
                    };
                    out[m] += ipow * (2.0 * binom * c);
                }
            }
        }
        out
    }
}

impl RealFunction for Polynomial {
    fn value(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn derivative(&self, x: f64) -> Option<f64> {
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * x + k as f64 * c;
        }
        Some(acc)
    }
}

impl StripFunction for Polynomial {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    fn growth_alpha(&self) -> f64 {
        0.0
    }

    fn as_polynomial(&self) -> Option<&Polynomial> {
        Some(self)
    }
}

/// min(|x|, c): Lipschitz, kinks at 0 and ±c.
#[derive(Debug, Clone, Copy)]
pub struct ClippedAbs {
    pub c: f64,
}

impl RealFunction for ClippedAbs {
    fn value(&self, x: f64) -> f64 {
        x.abs().min(self.c)
    }

    fn derivative(&self, x: f64) -> Option<f64> {
        Some(if x.abs() < self.c { x.signum() } else { 0.0 })
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![-self.c, 0.0, self.c]
    }
}

/// min(x, c) on the half line.
#[derive(Debug, Clone, Copy)]
pub struct ClippedRamp {
    pub c: f64,
}

impl RealFunction for ClippedRamp {
    fn value(&self, x: f64) -> f64 {
        x.min(self.c)
    }

    fn derivative(&self, x: f64) -> Option<f64> {
        Some(if x < self.c { 1.0 } else { 0.0 })
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.c]
    }
}

type BoxedFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function given by closures.
pub struct Closure {
    f: BoxedFn,
    df: Option<BoxedFn>,
    breaks: Vec<f64>,
    scale: f64,
}

impl Closure {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            f: Box::new(f),
            df: None,
            breaks: Vec::new(),
            scale: 1.0,
        }
    }

    pub fn with_derivative(mut self, df: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.df = Some(Box::new(df));
        self
    }

    pub fn with_breakpoints(mut self, breaks: Vec<f64>) -> Self {
        self.breaks = breaks;
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }
}

impl RealFunction for Closure {
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn derivative(&self, x: f64) -> Option<f64> {
        self.df.as_ref().map(|d| d(x))
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }

    fn scale_hint(&self) -> f64 {
        self.scale
    }
}

/// x ↦ f(s·x).
pub struct Dilated<'a> {
    pub inner: &'a dyn RealFunction,
    pub factor: f64,
}

impl RealFunction for Dilated<'_> {
    fn value(&self, x: f64) -> f64 {
        self.inner.value(self.factor * x)
    }

    fn derivative(&self, x: f64) -> Option<f64> {
        self.inner.derivative(self.factor * x).map(|d| d * self.factor)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints().iter().map(|b| b / self.factor).collect()
    }

    fn scale_hint(&self) -> f64 {
        self.inner.scale_hint() / self.factor.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_difference_of_square() {
        // (x+i)² − (x−i)² = 4ix
        let p = Polynomial::new(vec![0.0, 0.0, 1.0]);
        let d = p.strip_difference();
        assert!(d[0].norm() < 1e-15);
        assert!((d[1] - Complex64::new(0.0, 4.0)).norm() < 1e-15);
        assert!(d[2].norm() < 1e-15);
    }

    #[test]
    fn strip_difference_matches_direct_evaluation() {
        let p = Polynomial::new(vec![0.3, -1.0, 0.5, 0.25, -0.7, 0.1]);
        let d = p.strip_difference();
        for &x in &[-2.0, 0.0, 0.7, 3.1] {
            let direct = p.eval(Complex64::new(x, 1.0)) - p.eval(Complex64::new(x, -1.0));
            let via = d
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c);
            assert!((direct - via).norm() < 1e-12);
        }
    }

    #[test]
    fn polynomial_derivative() {
        let p = Polynomial::new(vec![1.0, 2.0, 3.0]);
        assert_eq!(p.derivative(2.0), Some(14.0));
        assert_eq!(p.derivative_poly().coeffs, vec![2.0, 6.0]);
        assert_eq!(Polynomial::new(vec![1.0, 0.0, 0.0]).degree(), 0);
    }
}
