//! Truncated power series arithmetic.
//!
//! A [`Series`] holds `c[k] = f^(k)(0) / k!` for `k < len`. Products and
//! compositions with elementary functions use the usual coefficient
//! recurrences, so every coefficient is exact up to rounding.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<f64>,
}

impl Series {
    pub fn constant(value: f64, len: usize) -> Self {
        let mut coeffs = vec![0.0; len];
        if len > 0 {
            coeffs[0] = value;
        }
        Self { coeffs }
    }

    /// `value + slope·s`.
    pub fn linear(value: f64, slope: f64, len: usize) -> Self {
        let mut s = Self::constant(value, len);
        if len > 1 {
            s.coeffs[1] = slope;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add_constant(&self, k: f64) -> Self {
        let mut out = self.clone();
        if let Some(c0) = out.coeffs.first_mut() {
            *c0 += k;
        }
        out
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
    }

    /// `self^p` for real `p`; requires a positive constant term unless `p`
    /// is a non-negative integer.
    pub fn powf(&self, p: f64) -> Self {
        let n = self.len();
        let a = &self.coeffs;
        let mut b = vec![0.0; n];
        if n == 0 {
            return Self { coeffs: b };
        }
        let a0 = a[0];
        b[0] = a0.powf(p);
        for k in 1..n {
            let mut sum = 0.0;
            for j in 1..=k {
                sum += ((p + 1.0) * j as f64 - k as f64) * a[j] * b[k - j];
            }
            b[k] = sum / (k as f64 * a0);
        }
        Self { coeffs: b }
    }

    /// `(sin(self), cos(self))`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let n = self.len();
        let a = &self.coeffs;
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        if n == 0 {
            return (Self { coeffs: s }, Self { coeffs: c });
        }
        (s[0], c[0]) = a[0].sin_cos();
        for k in 1..n {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                let ja = j as f64 * a[j];
                ss += ja * c[k - j];
                cc += ja * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = -cc / k as f64;
        }
        (Self { coeffs: s }, Self { coeffs: c })
    }

    /// `asin(self)`, via `asin(a)' = a' / sqrt(1 − a²)`.
    pub fn asin(&self) -> Self {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let one_minus_sq = (&Series::constant(1.0, n) - &(self * self)).powf(-0.5);
        let rate = &self.derivative() * &one_minus_sq;
        let mut out = rate.integral(self.coeffs[0].asin());
        out.coeffs.truncate(n);
        out
    }

    /// Term-wise derivative, padded with a trailing zero to keep the length.
    pub fn derivative(&self) -> Self {
        let n = self.len();
        let mut d = vec![0.0; n];
        for k in 1..n {
            d[k - 1] = k as f64 * self.coeffs[k];
        }
        Self { coeffs: d }
    }

    /// Antiderivative with the given constant; drops the highest term to keep the length.
    pub fn integral(&self, constant: f64) -> Self {
        let n = self.len();
        let mut out = vec![0.0; n];
        if n == 0 {
            return Self { coeffs: out };
        }
        out[0] = constant;
        for k in 1..n {
            out[k] = self.coeffs[k - 1] / k as f64;
        }
        Self { coeffs: out }
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        assert_eq!(self.len(), rhs.len(), "series length mismatch");
        Series { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        assert_eq!(self.len(), rhs.len(), "series length mismatch");
        Series { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(-1.0)
    }
}

/// Cauchy product, truncated.
impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        assert_eq!(self.len(), rhs.len(), "series length mismatch");
        let n = self.len();
        let mut c = vec![0.0; n];
        for k in 0..n {
            let mut sum = 0.0;
            for j in 0..=k {
                sum += self.coeffs[j] * rhs.coeffs[k - j];
            }
            c[k] = sum;
        }
        Series { coeffs: c }
    }
}
