//! Area-integral identities for C_{φ_{aⁿ}} on H².
//!
//! Everything here lives over the normalized area measure dA = Lebesgue/π on
//! 𝔻 (total mass 1), calibrated so that the norm identity with the identity
//! symbol collapses exactly: ‖f‖² = 2∫|f′|²·log(1/|w|) dA + |f(0)|². Under
//! that convention ∫ |z|^{2j}·log(1/|z|) dA = 1/(2(j+1)²) for every j ≥ 0,
//! which is the only moment the coefficient formulas need.
//!
//! The norm identity for a symbol φ reads
//! ‖C_φ f‖² = 2∫ |f′(w)|² N_φ(w) dA(w) + |f(φ(0))|², with N_φ the counting
//! function; the change-of-variables form turns the integral into
//! ∫ |f′(φ(z))|²·|φ′(z)|²·log(1/|z|) dA(z), which for the univalent affine
//! iterates is an exact weighted coefficient sum. The production path is the
//! moment formula; Gauss–Legendre quadrature is the independent oracle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::h2::H2Function;
use crate::symbols::AffineSymbol;

/// The measure convention: dA is planar Lebesgue measure divided by π, total
/// mass one on 𝔻. Calibrated — not assumed — by requiring the identity-symbol
/// norm formula to collapse exactly (littlewood_paley_norm_sq(e₁) = 1 forces
/// this constant).
pub const AREA_NORMALIZATION: f64 = std::f64::consts::FRAC_1_PI;

/// ∫_𝔻 |z|^{2j} log(1/|z|) dA(z) = 1/(2(j+1)²) under the normalized measure.
pub fn log_weight_moment(j: usize) -> f64 {
    let jp1 = (j + 1) as f64;
    0.5 / (jp1 * jp1)
}

/// |c₀|² + 2·Σ_{k≥1} k²|c_k|²·moment(k−1). Equal to Σ|c_k|² identically,
/// since the moments collapse termwise; computed the long way on purpose so
/// the calibration is testable against `norm_sq`.
pub fn littlewood_paley_norm_sq(f: &H2Function) -> f64 {
    let mut acc = f.coeff(0).norm_sqr();
    for k in 1..=f.degree() {
        let kf = k as f64;
        acc += 2.0 * kf * kf * f.coeff(k).norm_sqr() * log_weight_moment(k - 1);
    }
    acc
}

/// Counting function of the univalent iterate φ_{aⁿ}:
/// log(aⁿ/|w−(1−aⁿ)|) inside D_n, 0 outside, undefined at the image of 0.
pub fn nevanlinna_affine(sym: &AffineSymbol, n: u32, w: Complex64) -> Result<f64> {
    let alpha = sym.iterate_parameter(n);
    let center = Complex64::new(1.0 - alpha, 0.0);
    if w == center {
        return Err(Error::ExcludedPoint);
    }
    let dist = (w - center).norm();
    if dist < alpha {
        Ok((alpha / dist).ln())
    } else {
        Ok(0.0)
    }
}

/// ‖C_{φ_{aⁿ}} f‖² through the counting-function identity, evaluated by the
/// change of variables: 2·a^{2n}·Σ_j |h_j|²·moment(j) + |f(1−aⁿ)|² with
/// h = (f′) ∘ φ_{aⁿ}. Exact for polynomials up to rounding.
pub fn stanton_norm_sq(f: &H2Function, sym: &AffineSymbol, n: u32) -> f64 {
    let alpha = sym.iterate_parameter(n);
    let boundary_value = f
        .eval(Complex64::new(1.0 - alpha, 0.0))
        .expect("1 - a^n lies inside the disk");
    2.0 * counting_integral(f, sym, n) + boundary_value.norm_sqr()
}

/// ∫ |g′(w)|² N_{φ_{aⁿ}}(w) dA(w) = a^{2n}·Σ_j |h_j|²·moment(j), h = (g′)∘φ_{aⁿ}.
/// Decays like a^{2n} when g′ is eventually bounded; stays of order one for
/// the oscillatory eigenfunctions whose derivative is not.
pub fn counting_integral(g: &H2Function, sym: &AffineSymbol, n: u32) -> f64 {
    let alpha = sym.iterate_parameter(n);
    let h = sym.compose(&g.derivative(), n);
    let weighted: f64 = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c.norm_sqr() * log_weight_moment(j))
        .sum();
    alpha * alpha * weighted
}

/// Result of the quadrature oracle with a node-doubling error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// Independent oracle: ∫_𝔻 g dA on the normalized measure by Gauss–Legendre
/// in the radius times a uniform (trapezoidal) angular grid. The returned
/// value uses the doubled grid; the error estimate is the difference against
/// the requested grid. NaN partial sums are reported as errors.
pub fn quadrature_disk_oracle<F>(integrand: F, radial_nodes: usize, angular_nodes: usize) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> f64,
{
    let coarse = disk_grid_sum(&integrand, radial_nodes, angular_nodes)?;
    let fine = disk_grid_sum(&integrand, 2 * radial_nodes, 2 * angular_nodes)?;
    Ok(QuadratureResult { value: fine, error_estimate: (fine - coarse).abs() })
}

fn disk_grid_sum<F>(integrand: &F, radial_nodes: usize, angular_nodes: usize) -> Result<f64>
where
    F: Fn(Complex64) -> f64,
{
    let (nodes, weights) = gauss_legendre_01(radial_nodes);
    let mut total = 0.0;
    for (&r, &wr) in nodes.iter().zip(&weights) {
        let mut ring = 0.0;
        for j in 0..angular_nodes {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / angular_nodes as f64;
            ring += integrand(Complex64::from_polar(r, theta));
        }
        // dA = AREA_NORMALIZATION·r dr dθ; the angular mean carries 2π, and
        // 2π·AREA_NORMALIZATION collapses to the exact factor 2
        total += wr * 2.0 * r * (ring / angular_nodes as f64);
        if total.is_nan() {
            return Err(Error::QuadratureNan);
        }
    }
    Ok(total)
}

/// Gauss–Legendre nodes and weights on [0, 1], by Newton iteration on the
/// Legendre polynomial from the Chebyshev initial guess.
pub fn gauss_legendre_01(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-angle starting point for the i-th root of P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        nodes[i] = 0.5 * (1.0 - x); // map [-1,1] → [0,1]
        weights[i] = 1.0 / ((1.0 - x * x) * d * d); // 2/((1-x²)P'²) halved for the unit interval
    }
    (nodes, weights)
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::kernel;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre_01(8);
        for p in 0..=15u32 {
            let quad: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(p as i32)).sum();
            assert_relative_eq!(quad, 1.0 / (p as f64 + 1.0), max_relative = 1e-13);
        }
        assert_relative_eq!(w.iter().sum::<f64>(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn log_weight_moment_matches_1d_quadrature() {
        // oracle: 2∫₀¹ r^{2j+1} log(1/r) dr
        let (x, w) = gauss_legendre_01(256);
        for j in 0..4usize {
            let quad: f64 = x
                .iter()
                .zip(&w)
                .map(|(&r, &wr)| wr * 2.0 * r.powi(2 * j as i32 + 1) * (1.0 / r).ln())
                .sum();
            assert!((quad - log_weight_moment(j)).abs() < 1e-8, "j = {j}: {quad}");
        }
        assert_eq!(log_weight_moment(0), 0.5);
        assert_eq!(log_weight_moment(1), 0.125);
        // monotone ~ 1/(2j²) for large j
        for j in 10..40 {
            assert!(log_weight_moment(j) < log_weight_moment(j - 1));
        }
        assert_relative_eq!(log_weight_moment(1000) * 2.0 * 1001.0 * 1001.0, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn littlewood_paley_collapses_to_norm() {
        let e1 = H2Function::monomial(1);
        assert_relative_eq!(littlewood_paley_norm_sq(&e1), 1.0, max_relative = 1e-15);

        let k = kernel(c(0.5, 0.0), 60).unwrap();
        assert_relative_eq!(littlewood_paley_norm_sq(&k), 4.0 / 3.0, max_relative = 1e-10);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let deg = rng.gen_range(1..=64);
            let coeffs: Vec<Complex64> =
                (0..=deg).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let p = H2Function::from_coeffs(coeffs);
            assert_relative_eq!(littlewood_paley_norm_sq(&p), p.norm_sq(), max_relative = 1e-10);
        }
    }

    #[test]
    fn nevanlinna_values() {
        let sym = AffineSymbol::new(0.5).unwrap();
        // outside D_n: zero
        assert_eq!(nevanlinna_affine(&sym, 1, c(-0.5, 0.0)).unwrap(), 0.0);
        assert_eq!(nevanlinna_affine(&sym, 2, c(0.0, 0.6)).unwrap(), 0.0);
        // w = φ_{aⁿ}(r) has the unique preimage r
        for n in 1..=4u32 {
            for r in [0.1, 0.5, 0.9] {
                let w = sym.phi_point(n, c(r, 0.0));
                let val = nevanlinna_affine(&sym, n, w).unwrap();
                assert_relative_eq!(val, (1.0 / r).ln(), max_relative = 1e-12);
            }
        }
        // the image of 0 is rejected; approaching it blows up
        let center = c(0.5, 0.0);
        assert!(matches!(nevanlinna_affine(&sym, 1, center), Err(Error::ExcludedPoint)));
        let mut last = 0.0;
        for k in 1..=6 {
            let w = center + c(10f64.powi(-k), 0.0);
            let v = nevanlinna_affine(&sym, 1, w).unwrap();
            assert!(v > last);
            last = v;
        }
        assert!(last > 12.0);
    }

    #[test]
    fn stanton_agrees_with_direct_composition_norm() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for &a in &[0.3, 0.5, 0.7] {
            let sym = AffineSymbol::new(a).unwrap();
            for _ in 0..40 {
                let deg = rng.gen_range(1..=32);
                let coeffs: Vec<Complex64> =
                    (0..=deg).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                let p = H2Function::from_coeffs(coeffs);
                for n in 1..=5u32 {
                    let lhs = stanton_norm_sq(&p, &sym, n);
                    let rhs = sym.compose(&p, n).norm_sq();
                    assert_relative_eq!(lhs, rhs, max_relative = 1e-8);
                }
            }
        }
    }

    #[test]
    fn stanton_constant_and_eigen_closed_forms() {
        let sym = AffineSymbol::new(0.5).unwrap();
        let constant = H2Function::constant(c(2.0, -1.0));
        for n in 1..=3 {
            assert_relative_eq!(stanton_norm_sq(&constant, &sym, n), 5.0, max_relative = 1e-14);
        }
        let e2 = H2Function::monomial(2);
        assert_relative_eq!(
            stanton_norm_sq(&e2, &sym, 1),
            sym.compose(&e2, 1).norm_sq(),
            max_relative = 1e-12
        );
        // f₁ = 1−z: ‖C^n f₁‖² = a^{2n}·2, split as a^{2n} + a^{2n}
        for n in 1..=6u32 {
            let f1 = H2Function::from_real(&[1.0, -1.0]);
            let expect = 2.0 * 0.25f64.powi(n as i32);
            assert_relative_eq!(stanton_norm_sq(&f1, &sym, n), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn counting_integral_monomial_and_decay() {
        // g = e₁: h ≡ 1, single moment: a^{2n}/2 exactly
        for &a in &[0.3, 0.5, 0.7] {
            let sym = AffineSymbol::new(a).unwrap();
            for n in 1..=6u32 {
                let v = counting_integral(&H2Function::monomial(1), &sym, n);
                assert_relative_eq!(v, 0.5 * a.powi(2 * n as i32), max_relative = 1e-13);
            }
        }
        // eventually bounded derivative: consecutive ratios → a²
        let sym = AffineSymbol::new(0.5).unwrap();
        let g = H2Function::from_real(&[2.0, 1.0, 1.0]);
        for n in 5..15u32 {
            let ratio = counting_integral(&g, &sym, n + 1) / counting_integral(&g, &sym, n);
            assert!((ratio / 0.25 - 1.0).abs() < 0.1, "n = {n}: ratio {ratio}");
        }
    }

    #[test]
    fn quadrature_total_mass_and_log_weight() {
        let total = quadrature_disk_oracle(|_| 1.0, 32, 64).unwrap();
        assert_relative_eq!(total.value, 1.0, max_relative = 1e-12);

        let logw = quadrature_disk_oracle(|z| (1.0 / z.norm()).ln(), 512, 16).unwrap();
        assert!((logw.value - 0.5).abs() < 1e-8, "got {}", logw.value);
    }

    #[test]
    fn quadrature_reports_nan() {
        let r = quadrature_disk_oracle(|z| if z.re > 0.0 { f64::NAN } else { 0.0 }, 8, 8);
        assert!(matches!(r, Err(Error::QuadratureNan)));
    }

    #[test]
    fn quadrature_matches_stanton_integral_term() {
        // direct N_φ integrand for f = e₂, a = 0.5, n = 1
        let sym = AffineSymbol::new(0.5).unwrap();
        let f = H2Function::monomial(2);
        let coefficient_term = counting_integral(&f, &sym, 1);
        let integrand = move |w: Complex64| {
            let d = (w - c(0.5, 0.0)).norm();
            if d < 0.5 && d > 0.0 {
                4.0 * w.norm_sqr() * (0.5 / d).ln()
            } else {
                0.0
            }
        };
        let quad = quadrature_disk_oracle(integrand, 1024, 2048).unwrap();
        assert!(
            (quad.value - coefficient_term).abs() <= 1e-6 * coefficient_term,
            "quad {} vs moment {}",
            quad.value,
            coefficient_term
        );

        // change-of-variables integrand agrees much faster
        let h = sym.compose(&f.derivative(), 1);
        let cov = move |z: Complex64| {
            let r = z.norm();
            if r == 0.0 {
                return 0.0;
            }
            let mut acc = Complex64::ZERO;
            for &ck in h.coeffs().iter().rev() {
                acc = acc * z + ck;
            }
            0.25 * acc.norm_sqr() * (1.0 / r).ln()
        };
        let quad2 = quadrature_disk_oracle(cov, 64, 128).unwrap();
        assert!((quad2.value - coefficient_term).abs() <= 1e-7 * coefficient_term);
    }
}
