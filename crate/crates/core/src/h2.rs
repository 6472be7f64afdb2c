//! Truncated power-series engine for the Hardy space H²(𝔻).
//!
//! A function is carried as its Taylor coefficients c_0..c_N together with a
//! `tail_bound` ≥ Σ_{k>N} |c_k|², an upper bound on the squared ℓ²-mass of the
//! discarded tail. Exact polynomials have `tail_bound = 0` and every operation
//! on exact polynomials stays exact up to rounding. All values are immutable;
//! every operation is a pure function.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncated element of H²(𝔻): coefficients, a squared-tail bound, and an
/// optional "eventually bounded at 1" flag carried by constructors that know
/// the analytic answer.
#[derive(Debug, Clone, PartialEq)]
pub struct H2Function {
    coeffs: Vec<Complex64>,
    tail_bound: f64,
    eb: Option<bool>,
}

impl H2Function {
    /// Exact polynomial from coefficients (index k holds the coefficient of z^k).
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        Self::with_tail(coeffs, 0.0)
    }

    /// Truncated series with an explicit bound on Σ_{k>N} |c_k|².
    pub fn with_tail(coeffs: Vec<Complex64>, tail_bound: f64) -> Self {
        assert!(!coeffs.is_empty(), "a function needs at least the constant coefficient");
        assert!(tail_bound >= 0.0 && tail_bound.is_finite(), "tail bound must be finite and >= 0");
        Self { coeffs, tail_bound, eb: None }
    }

    /// Same function with the eventual-boundedness flag set by a constructor
    /// that knows it analytically.
    pub fn with_eb_flag(mut self, eb: bool) -> Self {
        self.eb = Some(eb);
        self
    }

    /// Real-coefficient convenience constructor.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The constant function c (degree 0, exact).
    pub fn constant(c: Complex64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial e_n(z) = z^n.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[n] = Complex64::ONE;
        Self::from_coeffs(coeffs)
    }

    /// The zero function at the given truncation degree.
    pub fn zero(degree: usize) -> Self {
        Self::from_coeffs(vec![Complex64::ZERO; degree + 1])
    }

    /// Truncation index N.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of z^k, zero beyond the truncation.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Upper bound on Σ_{k>N} |c_k|².
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// True when the representation is exact (tail bound 0).
    pub fn is_polynomial(&self) -> bool {
        self.tail_bound == 0.0
    }

    /// Eventual boundedness at 1, when a constructor pinned it; `None` means
    /// undecided. This is an analytic annotation, never inferred numerically.
    pub fn eb_flag(&self) -> Option<bool> {
        self.eb
    }

    /// Horner evaluation of the truncated series at |z| < 1.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= 1.0 {
            return Err(Error::PointOutsideDisk(z.norm()));
        }
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc)
    }

    /// Cauchy–Schwarz bound on the discarded-tail contribution to `eval`:
    /// sqrt(tail_bound) · |z|^{N+1} / sqrt(1 − |z|²).
    pub fn eval_error_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        if r >= 1.0 {
            return f64::INFINITY;
        }
        self.tail_bound.sqrt() * r.powi(self.degree() as i32 + 1) / (1.0 - r * r).sqrt()
    }

    /// Evaluation together with its tail error bound.
    pub fn eval_with_bound(&self, z: Complex64) -> Result<(Complex64, f64)> {
        Ok((self.eval(z)?, self.eval_error_bound(z)))
    }

    /// Σ_{k≤N} |c_k|²; the true squared norm lies in [value, value + tail_bound].
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// [computed squared norm, computed + tail_bound].
    pub fn norm_sq_interval(&self) -> (f64, f64) {
        let v = self.norm_sq();
        (v, v + self.tail_bound)
    }

    /// H² pairing Σ c_k · conj(d_k); conjugate-linear in the second argument.
    pub fn inner(&self, other: &H2Function) -> Complex64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(c, d)| c * d.conj())
            .sum()
    }

    /// Bound on the pairing error from both tails:
    /// sqrt(tail_f·tail_g) plus the Cauchy–Schwarz cross terms.
    pub fn inner_error_bound(&self, other: &H2Function) -> f64 {
        let (tf, tg) = (self.tail_bound, other.tail_bound);
        (tf * tg).sqrt() + tf.sqrt() * other.norm() + tg.sqrt() * self.norm()
    }

    /// Termwise derivative; coefficient k of the output is (k+1)·c_{k+1}.
    /// The tail bound is propagated by the crude factor (N+1)².
    pub fn derivative(&self) -> H2Function {
        let n = self.degree();
        let coeffs: Vec<Complex64> = if n == 0 {
            vec![Complex64::ZERO]
        } else {
            (1..=n).map(|k| self.coeffs[k] * k as f64).collect()
        };
        let factor = ((n + 1) as f64) * ((n + 1) as f64);
        H2Function::with_tail(coeffs, self.tail_bound * factor)
    }

    /// Truncated Cauchy product. Two exact polynomials multiply exactly at the
    /// summed degree; otherwise the product is truncated at the smallest degree
    /// among the inexact inputs and the tail bookkeeping is
    /// ‖f‖²·tail_g + ‖g‖²·tail_f + tail_f·tail_g.
    pub fn multiply(&self, other: &H2Function) -> H2Function {
        let out_degree = match (self.is_polynomial(), other.is_polynomial()) {
            (true, true) => self.degree() + other.degree(),
            (true, false) => other.degree(),
            (false, true) => self.degree(),
            (false, false) => self.degree().min(other.degree()),
        };
        let mut coeffs = vec![Complex64::ZERO; out_degree + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > out_degree {
                break;
            }
            let jmax = (out_degree - i).min(other.degree());
            for j in 0..=jmax {
                coeffs[i + j] += a * other.coeffs[j];
            }
        }
        let tail = self.norm_sq() * other.tail_bound
            + other.norm_sq() * self.tail_bound
            + self.tail_bound * other.tail_bound;
        let mut out = H2Function::with_tail(coeffs, tail);
        if self.eb == Some(true) && other.eb == Some(true) {
            out.eb = Some(true);
        }
        out
    }

    /// Scalar multiple; tail bound scales by |s|².
    pub fn scale(&self, s: Complex64) -> H2Function {
        let coeffs = self.coeffs.iter().map(|c| c * s).collect();
        let mut out = H2Function::with_tail(coeffs, self.tail_bound * s.norm_sqr());
        out.eb = self.eb;
        out
    }

    /// f - g, via linear_combine.
    pub fn sub(&self, other: &H2Function) -> H2Function {
        linear_combine(
            &[Complex64::ONE, -Complex64::ONE],
            &[self.clone(), other.clone()],
        )
        .expect("two scalars, two functions")
    }

    /// Same coefficients, re-truncated or zero-padded to the given degree.
    /// Shrinking folds the dropped coefficients into the tail bound.
    pub fn resized(&self, degree: usize) -> H2Function {
        let mut coeffs = self.coeffs.clone();
        let mut tail = self.tail_bound;
        if degree + 1 < coeffs.len() {
            tail += coeffs[degree + 1..].iter().map(|c| c.norm_sqr()).sum::<f64>();
            coeffs.truncate(degree + 1);
        } else {
            coeffs.resize(degree + 1, Complex64::ZERO);
        }
        let mut out = H2Function::with_tail(coeffs, tail);
        out.eb = self.eb;
        out
    }
}

/// Exact coefficientwise combination Σ s_i·f_i at the maximum degree; tail
/// bounds combine by the triangle inequality (Σ |s_i|·sqrt(tail_i))².
pub fn linear_combine(scalars: &[Complex64], fns: &[H2Function]) -> Result<H2Function> {
    if scalars.len() != fns.len() {
        return Err(Error::LengthMismatch { scalars: scalars.len(), functions: fns.len() });
    }
    let degree = fns.iter().map(H2Function::degree).max().unwrap_or(0);
    let mut coeffs = vec![Complex64::ZERO; degree + 1];
    let mut tail_root = 0.0;
    let mut eb: Option<bool> = Some(true);
    for (s, f) in scalars.iter().zip(fns) {
        for (k, &c) in f.coeffs.iter().enumerate() {
            coeffs[k] += s * c;
        }
        tail_root += s.norm() * f.tail_bound.sqrt();
        eb = match (eb, f.eb) {
            (Some(true), Some(true)) => Some(true),
            (Some(true), Some(false)) if s.norm() > 0.0 => Some(false),
            (Some(false), Some(true)) => Some(false),
            _ => None,
        };
    }
    let mut out = H2Function::with_tail(coeffs, tail_root * tail_root);
    out.eb = eb;
    Ok(out)
}
