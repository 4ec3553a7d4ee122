//! Elementary and special functions evaluated without overflow.

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch-free log-gamma for complex arguments (Lanczos, g = 7).
///
/// Only the real part is relied on by callers (`ln |Γ(z)|`); the imaginary part
/// is correct modulo 2π.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Complex64::new(0.5 * (2.0 * PI).ln(), 0.0) + (z + 0.5) * t.ln() - t + x.ln()
}

/// ln n! for small nonnegative integers, exact summation.
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// ln cosh x without overflow.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// x / sinh x with the removable singularity at 0.
pub fn x_over_sinh(x: f64) -> f64 {
    let a = x.abs();
    if a < 1e-3 {
        let x2 = a * a;
        1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0
    } else if a > 700.0 {
        (ln_x_over_sinh(a)).exp()
    } else {
        a / a.sinh()
    }
}

/// ln(x / sinh x), finite for every real x.
pub fn ln_x_over_sinh(x: f64) -> f64 {
    let a = x.abs();
    if a < 1e-3 {
        x_over_sinh(a).ln()
    } else {
        // sinh a = e^a (1 - e^{-2a}) / 2
        a.ln() - a - (-(-2.0 * a).exp()).ln_1p() + LN_2
    }
}

/// Harmonic number H_n.
pub fn harmonic(n: u64) -> f64 {
    let mut acc = crate::dd::Accumulator::new();
    for j in (1..=n).rev() {
        acc.add(1.0 / j as f64);
    }
    acc.value()
}
