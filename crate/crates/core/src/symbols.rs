//! The affine symbol family φ_a(z) = az + 1 − a with 0 < a < 1, its iterates
//! φ_{aⁿ}(z) = aⁿz + 1 − aⁿ, the disks D_n = φ_{aⁿ}(𝔻) shrinking to 1, and the
//! exact coefficient-space action of the composition operator C_{φ_{aⁿ}}.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::h2::H2Function;

/// How far boundary sample points are pulled inside a disk that touches the
/// unit circle at 1, so evaluation preconditions stay valid.
pub const BOUNDARY_PULL_IN: f64 = 1e-9;

/// The parameter a ∈ (0,1) of φ_a(z) = az + 1 − a. The n-fold iterate is
/// φ_{aⁿ}, never a pre-multiplied parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineSymbol {
    a: f64,
}

/// Euclidean disk, returned for D_n = φ_{aⁿ}(𝔻).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

/// Sampled sup of |f| on a circle, with the evaluation error bound attached.
#[derive(Debug, Clone, Copy)]
pub struct SupEstimate {
    pub sup: f64,
    pub eval_error: f64,
}

impl AffineSymbol {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) || !a.is_finite() {
            return Err(Error::InvalidSymbol(a));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// The parameter of the n-fold iterate: aⁿ.
    pub fn iterate_parameter(&self, n: u32) -> f64 {
        self.a.powi(n as i32)
    }

    /// φ_{aⁿ}(z) = aⁿz + 1 − aⁿ.
    pub fn phi_point(&self, n: u32, z: Complex64) -> Complex64 {
        debug_assert!(n >= 1);
        let alpha = self.iterate_parameter(n);
        alpha * z + (1.0 - alpha)
    }

    /// The disk D_n = φ_{aⁿ}(𝔻): center 1 − aⁿ, radius aⁿ.
    pub fn disk(&self, n: u32) -> Disk {
        debug_assert!(n >= 1);
        let alpha = self.iterate_parameter(n);
        Disk { center: Complex64::new(1.0 - alpha, 0.0), radius: alpha }
    }

    /// Upper bound sqrt((2 − aⁿ)/aⁿ) on the operator norm of C_{φ_{aⁿ}},
    /// from ‖C_φ‖ ≤ sqrt((1 + |φ(0)|)/(1 − |φ(0)|)).
    pub fn operator_norm_bound(&self, n: u32) -> f64 {
        let alpha = self.iterate_parameter(n);
        ((2.0 - alpha) / alpha).sqrt()
    }

    /// f ∘ φ_{aⁿ} in coefficient space. Output coefficient m equals
    /// Σ_{k≥m} c_k·C(k,m)·αᵐ(1−α)^{k−m} with α = aⁿ; degree is preserved and
    /// the result is exact for polynomials. Computed by the Horner scheme
    /// h ← h·(αz + 1−α) + c_k whose coefficient update is a convex combination,
    /// so no factorials and no underflow for any k. Tail bounds scale by the
    /// squared operator-norm bound (2−α)/α.
    pub fn compose(&self, f: &H2Function, n: u32) -> H2Function {
        debug_assert!(n >= 1);
        let alpha = self.iterate_parameter(n);
        let beta = 1.0 - alpha;
        let n_deg = f.degree();
        let coeffs = f.coeffs();

        let mut h = vec![Complex64::ZERO; n_deg + 1];
        h[0] = coeffs[n_deg];
        let mut len = 1usize;
        for k in (0..n_deg).rev() {
            // h ← h·(αz + β), then absorb c_k into the constant term
            let top = len;
            if top <= n_deg {
                len += 1;
            }
            let mut carry = Complex64::ZERO;
            for (j, slot) in h.iter_mut().enumerate().take(len) {
                let current = if j < top { *slot } else { Complex64::ZERO };
                *slot = beta * current + alpha * carry;
                carry = current;
            }
            h[0] += coeffs[k];
        }

        let tail = f.tail_bound() * (2.0 - alpha) / alpha;
        let mut out = H2Function::with_tail(h, tail);
        if let Some(flag) = f.eb_flag() {
            out = out.with_eb_flag(flag);
        }
        out
    }

    /// Sampled maximum of |f| on the boundary circle of D_n, pulled inward by
    /// `BOUNDARY_PULL_IN` since D_n touches the unit circle at 1. A
    /// maximum-modulus heuristic: a finite sample can under-report the sup.
    pub fn sup_on_disk_boundary(&self, f: &H2Function, n: u32, samples: usize) -> SupEstimate {
        debug_assert!(n >= 1 && samples >= 1);
        let disk = self.disk(n);
        let rho = disk.radius * (1.0 - BOUNDARY_PULL_IN);
        let mut sup = 0.0f64;
        let mut err = 0.0f64;
        for j in 0..samples {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / samples as f64;
            let z = disk.center + Complex64::from_polar(rho, theta);
            let (value, bound) = f.eval_with_bound(z).expect("pulled-in samples stay inside the disk");
            sup = sup.max(value.norm());
            err = err.max(bound);
        }
        SupEstimate { sup, eval_error: err }
    }
}

/// Sampled maximum of |f| on the circle of radius 1 − `BOUNDARY_PULL_IN`,
/// the whole-disk analogue of `sup_on_disk_boundary`.
pub fn sup_on_unit_circle(f: &H2Function, samples: usize) -> SupEstimate {
    let rho = 1.0 - BOUNDARY_PULL_IN;
    let mut sup = 0.0f64;
    let mut err = 0.0f64;
    for j in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / samples as f64;
        let z = Complex64::from_polar(rho, theta);
        let (value, bound) = f.eval_with_bound(z).expect("radius below one");
        sup = sup.max(value.norm());
        err = err.max(bound);
    }
    SupEstimate { sup, eval_error: err }
}
