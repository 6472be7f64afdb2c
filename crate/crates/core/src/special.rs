//! Constructors for the named functions of the theory: the eigenfunctions
//! f_s(z) = (1−z)^s of C_{φ_a} (eigenvalue a^s, in H² iff Re(s) > −1/2), the
//! reproducing kernels κ_α(z) = 1/(1−ᾱz), partial Blaschke products with zeros
//! along 1−aⁿ, the boundary sampling g(1−aⁿ), and the A/B/C case classifier.
//!
//! (1−z)^s uses the principal branch, which is single-valued on 𝔻 because
//! Re(1−z) > 0 there; the Taylor recurrence at 0 agrees with that branch.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::h2::H2Function;
use crate::symbols::AffineSymbol;

/// Exponent s of f_s(z) = (1−z)^s, gated at construction to H² membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenExponent(Complex64);

impl EigenExponent {
    /// Requires Re(s) > −1/2, the H² membership threshold.
    pub fn new(s: Complex64) -> Result<Self> {
        if !(s.re > -0.5) {
            return Err(Error::ExponentNotInH2(s.re));
        }
        Ok(Self(s))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    /// The purely imaginary exponent t = 2πi/log a, for which a^t = e^{2πi} = 1:
    /// f_t is a fixed vector of C_{φ_a} with f_t(1−aⁿ) = 1 for every n.
    pub fn oscillatory(sym: &AffineSymbol) -> Self {
        Self(Complex64::new(0.0, 2.0 * std::f64::consts::PI / sym.a().ln()))
    }

    /// Half the oscillatory exponent: f_{t/2}(1−aⁿ) = e^{πin} = (−1)ⁿ, the
    /// stock non-converging boundary sequence.
    pub fn half_oscillatory(sym: &AffineSymbol) -> Self {
        Self(Complex64::new(0.0, std::f64::consts::PI / sym.a().ln()))
    }

    /// The eigenvalue a^s of C_{φ_a} on f_s.
    pub fn eigenvalue(&self, sym: &AffineSymbol) -> Complex64 {
        Complex64::new(sym.a(), 0.0).powc(self.0)
    }
}

/// Whether (1−z)^s lies in H².
pub fn exponent_in_h2(s: Complex64) -> bool {
    s.re > -0.5
}

/// f_s(z) = (1−z)^s via the recurrence c₀ = 1, c_{k+1} = c_k·(k−s)/(k+1).
///
/// The recurrence terminates exactly for nonnegative integer s (polynomial,
/// tail 0). Otherwise |c_k| ~ C·k^{−1−Re(s)} and the tail bound is estimated
/// from the last retained term with an asymptotic safety margin.
pub fn eigenfunction(s: EigenExponent, degree: usize) -> Result<H2Function> {
    eigenfunction_raw(s.value(), degree)
}

/// Same as [`eigenfunction`] but gating the exponent here.
pub fn eigenfunction_raw(s: Complex64, degree: usize) -> Result<H2Function> {
    if !exponent_in_h2(s) {
        return Err(Error::ExponentNotInH2(s.re));
    }
    let mut coeffs = vec![Complex64::ZERO; degree + 1];
    coeffs[0] = Complex64::ONE;
    for k in 0..degree {
        let kf = k as f64;
        coeffs[k + 1] = coeffs[k] * (Complex64::new(kf, 0.0) - s) / (kf + 1.0);
    }
    let last = coeffs[degree].norm_sqr();
    let tail = if last == 0.0 {
        0.0
    } else {
        // Σ_{k>N} |c_k|² ≈ |c_N|²·N/(1+2Re s) for |c_k| ~ C·k^{-1-Re s};
        // the margin covers the pre-asymptotic regime at moderate N.
        let n = degree as f64;
        let margin = (1.0 + s.norm_sqr() / n) * 1.25;
        last * n / (1.0 + 2.0 * s.re) * margin
    };
    // |f_s| = |1−z|^{Re s}·e^{−Im(s)·arg(1−z)} is bounded near 1 iff Re(s) ≥ 0.
    Ok(H2Function::with_tail(coeffs, tail).with_eb_flag(s.re >= 0.0))
}

/// f_s′ (= −s·f_{s−1} termwise) with the analytic eventual-boundedness
/// answer attached: the derivative is bounded near 1 iff Re(s) ≥ 1, or
/// vanishes identically at s = 0. The generic `derivative()` cannot know
/// this and leaves the flag undecided.
pub fn eigenfunction_derivative(s: EigenExponent, degree: usize) -> Result<H2Function> {
    let value = s.value();
    let f = eigenfunction(s, degree + 1)?;
    Ok(f.derivative().with_eb_flag(value == Complex64::ZERO || value.re >= 1.0))
}

/// Reproducing kernel κ_α(z) = 1/(1−ᾱz): coefficients ᾱ^k, exact geometric
/// tail |α|^{2(N+1)}/(1−|α|²). Analytic across the unit circle, hence EB.
pub fn kernel(alpha: Complex64, degree: usize) -> Result<H2Function> {
    let r = alpha.norm();
    if r >= 1.0 {
        return Err(Error::KernelPointOutsideDisk(r));
    }
    let ac = alpha.conj();
    let mut coeffs = vec![Complex64::ONE; degree + 1];
    for k in 1..=degree {
        coeffs[k] = coeffs[k - 1] * ac;
    }
    let tail = r.powi(2 * (degree as i32 + 1)) / (1.0 - r * r);
    Ok(H2Function::with_tail(coeffs, tail).with_eb_flag(true))
}

/// Partial Blaschke product ∏_{n=n_start}^{n_start+n_terms−1} (1−aⁿ−z)/(1−(1−aⁿ)z),
/// the zeros being the backward orbit points 1−aⁿ ∈ (0,1). Each factor is the
/// numerator polynomial times a geometric series, accumulated with the
/// truncated Cauchy product. Factors have modulus ≤ 1 on 𝔻, so the partial
/// product is EB; the omitted factors contribute the analytic remainder
/// ∏_{n>M}(1−aⁿ) on compact subsets, which is documented, not computed.
pub fn blaschke_partial(sym: &AffineSymbol, n_start: u32, n_terms: u32, degree: usize) -> H2Function {
    assert!(n_start >= 2, "zeros start on the n >= 2 tail of the orbit");
    assert!(n_terms >= 1);
    let mut product: Option<H2Function> = None;
    for n in n_start..n_start + n_terms {
        let rho = 1.0 - sym.iterate_parameter(n);
        let numerator = H2Function::from_real(&[rho, -1.0]);
        let geometric = kernel(Complex64::new(rho, 0.0), degree)
            .expect("1 - a^n lies in (0,1)");
        let factor = numerator.multiply(&geometric);
        product = Some(match product {
            None => factor,
            Some(p) => p.multiply(&factor),
        });
    }
    product.expect("at least one factor").with_eb_flag(true)
}

/// One boundary-approach sample g(1−aⁿ) with its evaluation error bound.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySample {
    pub n: u32,
    pub point: f64,
    pub value: Complex64,
    pub error_bound: f64,
}

/// The sequence (g(1−aⁿ))_{n=1..n_max}, the raw data of the A/B/C trichotomy.
pub fn boundary_samples(g: &H2Function, sym: &AffineSymbol, n_max: u32) -> Vec<BoundarySample> {
    (1..=n_max)
        .map(|n| {
            let point = 1.0 - sym.iterate_parameter(n);
            let z = Complex64::new(point, 0.0);
            let (value, error_bound) = g
                .eval_with_bound(z)
                .expect("1 - a^n lies strictly inside the disk");
            BoundarySample { n, point, value, error_bound }
        })
        .collect()
}

/// The three boundary-behaviour cases along 1−aⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Sampled tail clusters at a single L ≠ 0.
    A,
    /// Sampled tail decays below tolerance.
    B,
    /// Neither: no single limit visible in the sample.
    C,
}

/// Classification outcome with the evidence attached. A finite sample cannot
/// certify a limit statement; this is labelled evidence, never proof.
#[derive(Debug, Clone)]
pub struct CaseLabel {
    pub label: Case,
    /// Mean of the tail window when the label is A.
    pub limit: Option<Complex64>,
    pub evidence: Vec<Complex64>,
}

/// Heuristic trichotomy on the last quarter of the samples: B if it decays
/// below `tol`, A if it clusters within `tol` around its own mean of modulus
/// ≥ 10·tol, C otherwise. Requires at least 8 samples.
pub fn classify_case(samples: &[Complex64], tol: f64) -> Result<CaseLabel> {
    const MIN_SAMPLES: usize = 8;
    if samples.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples { min: MIN_SAMPLES, got: samples.len() });
    }
    let tail = &samples[samples.len() - samples.len() / 4..];
    let evidence = samples.to_vec();
    if tail.iter().all(|v| v.norm() < tol) {
        return Ok(CaseLabel { label: Case::B, limit: None, evidence });
    }
    let mean = tail.iter().sum::<Complex64>() / tail.len() as f64;
    if mean.norm() >= 10.0 * tol && tail.iter().all(|v| (v - mean).norm() <= tol) {
        return Ok(CaseLabel { label: Case::A, limit: Some(mean), evidence });
    }
    Ok(CaseLabel { label: Case::C, limit: None, evidence })
}
