//! Exact rational coefficients of the Meixner–Pollaczek polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest degree handled in exact arithmetic.
pub const EXACT_DEGREE_BUDGET: usize = 400;

/// Polynomial with rational coefficients in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExact {
    pub coeffs: Vec<BigRational>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl PolyExact {
    pub fn constant(c: BigRational) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn leading(&self) -> &BigRational {
        &self.coeffs[self.degree()]
    }

    /// Horner evaluation in exact arithmetic at the rational value of `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let xr = BigRational::from_float(x).expect("finite evaluation point");
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &xr + c;
        }
        acc.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }
}

fn check_budget(degree_cap: usize) -> Result<()> {
    if degree_cap > EXACT_DEGREE_BUDGET {
        return Err(Error::Resource(format!(
            "exact arithmetic limited to degree {EXACT_DEGREE_BUDGET}, requested {degree_cap}"
        )));
    }
    Ok(())
}

/// P_0..P_cap from (k+1)P_{k+1} = xP_k − (k−1+ℓ)P_{k−1}.
pub fn mp_exact(ell: u32, degree_cap: usize) -> Result<Vec<PolyExact>> {
    if ell == 0 {
        return Err(Error::Domain("ℓ must be at least 1".into()));
    }
    check_budget(degree_cap)?;
    let mut out = vec![PolyExact::constant(BigRational::one())];
    if degree_cap == 0 {
        return Ok(out);
    }
    out.push(PolyExact {
        coeffs: vec![BigRational::zero(), BigRational::one()],
    });
    for k in 1..degree_cap {
        let mut next = vec![BigRational::zero(); k + 2];
        let inv = rat(1, k as i64 + 1);
        for (j, c) in out[k].coeffs.iter().enumerate() {
            next[j + 1] += c * &inv;
        }
        let m = rat(k as i64 - 1 + ell as i64, k as i64 + 1);
        for (j, c) in out[k - 1].coeffs.iter().enumerate() {
            next[j] -= c * &m;
        }
        out.push(PolyExact { coeffs: next }.trimmed());
    }
    Ok(out)
}

/// Coefficients of s^0..s^cap in e^{x·arctan s}(1+s²)^{−ℓ/2}, each a polynomial in x.
pub fn generating_taylor(ell: u32, degree_cap: usize) -> Result<Vec<PolyExact>> {
    if ell == 0 {
        return Err(Error::Domain("ℓ must be at least 1".into()));
    }
    check_budget(degree_cap)?;
    let n = degree_cap + 1;
    // arctan s = Σ (−1)^m s^{2m+1}/(2m+1)
    let mut atan = vec![BigRational::zero(); n];
    for (p, slot) in atan.iter_mut().enumerate() {
        if p % 2 == 1 {
            let m = (p / 2) as i64;
            *slot = rat(if m % 2 == 0 { 1 } else { -1 }, 2 * m + 1);
        }
    }
    // (1+s²)^{−ℓ/2} = Σ_m binom(−ℓ/2, m) s^{2m}
    let mut prefactor = vec![BigRational::zero(); n];
    let half_ell = rat(-(ell as i64), 2);
    let mut b = BigRational::one();
    let mut m = 0i64;
    while (2 * m as usize) < n {
        prefactor[2 * m as usize] = b.clone();
        b = b * (&half_ell - BigRational::from_integer(BigInt::from(m))) / BigRational::from_integer(BigInt::from(m + 1));
        m += 1;
    }
    let mul = |a: &[BigRational], c: &[BigRational]| -> Vec<BigRational> {
        let mut r = vec![BigRational::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, cj) in c.iter().enumerate().take(n - i) {
                if !cj.is_zero() {
                    r[i + j] += ai * cj;
                }
            }
        }
        r
    };
    // [s^k] Σ_j x^j/j! · A(s)^j B(s)
    let mut out: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    let mut power = prefactor.clone(); // A^j B
    let mut inv_fact = BigRational::one();
    for j in 0..n {
        if j > 0 {
            power = mul(&power, &atan);
            inv_fact = inv_fact / BigRational::from_integer(BigInt::from(j as i64));
        }
        for k in 0..n {
            if !power[k].is_zero() {
                out[k][j] += &power[k] * &inv_fact;
            }
        }
    }
    Ok(out.into_iter().map(|c| PolyExact { coeffs: c }.trimmed()).collect())
}

/// binom(k+ℓ−1, k) exactly.
pub fn mp_norm_sq_exact(ell: u32, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=k {
        num *= BigInt::from(i as u64 + ell as u64 - 1);
        den *= BigInt::from(i as u64);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_anchors() {
        let p1 = mp_exact(1, 5).unwrap();
        assert_eq!(p1[2].coeffs, vec![rat(-1, 2), rat(0, 1), rat(1, 2)]);
        assert_eq!(mp_exact(2, 2).unwrap()[2].coeffs, vec![rat(-1, 1), rat(0, 1), rat(1, 2)]);
        assert_eq!(mp_exact(3, 2).unwrap()[2].coeffs, vec![rat(-3, 2), rat(0, 1), rat(1, 2)]);
        let g = generating_taylor(1, 1).unwrap();
        assert_eq!(g[0].coeffs, vec![rat(1, 1)]);
        assert_eq!(g[1].coeffs, vec![rat(0, 1), rat(1, 1)]);
        // P_5(0) = 0 for the odd polynomial
        assert_eq!(p1[5].eval(0.0), 0.0);
    }

    #[test]
    fn recurrence_matches_generating_function() {
        for ell in 1..=4 {
            let a = mp_exact(ell, 30).unwrap();
            let b = generating_taylor(ell, 30).unwrap();
            assert_eq!(a, b, "ℓ = {ell}");
        }
    }

    #[test]
    fn leading_coefficient_is_inverse_factorial() {
        let p = mp_exact(2, 25).unwrap();
        let mut fact = BigInt::one();
        for (k, q) in p.iter().enumerate() {
            if k > 0 {
                fact *= BigInt::from(k as u64);
            }
            assert_eq!(q.degree(), k);
            assert_eq!(q.leading(), &BigRational::new(BigInt::one(), fact.clone()));
        }
    }

    #[test]
    fn norms_and_budget() {
        assert_eq!(mp_norm_sq_exact(2, 3), BigInt::from(4));
        assert_eq!(mp_norm_sq_exact(1, 17), BigInt::from(1));
        assert!(matches!(mp_exact(1, EXACT_DEGREE_BUDGET + 1), Err(Error::Resource(_))));
    }
}
