//! The experiment implementations behind the registry.
//!
//! Conventions: `spec.m` is the orbit length / trial budget, `spec.degree`
//! the truncation degree N, `spec.seed` feeds every random draw through
//! ChaCha so identical specs give identical reports. Quantities whose
//! truncation uncertainty dominates the measured value are labelled
//! "uncertainty-dominated" in the notes rather than silently reported.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::h2::{linear_combine, H2Function};
use crate::integrals::{counting_integral, littlewood_paley_norm_sq, nevanlinna_affine, quadrature_disk_oracle, stanton_norm_sq};
use crate::krylov::{self, orbit, OrbitAnalysis};
use crate::opdiag::{self, MatrixOperator};
use crate::special::{
    blaschke_partial, boundary_samples, classify_case, eigenfunction, kernel, Case, EigenExponent,
};
use crate::symbols::{sup_on_unit_circle, AffineSymbol};

use super::{ExperimentReport, ExperimentSpec, Row};

/// Coarse rank tolerance for the oscillatory-eigenfunction orbit: the
/// truncation distorts the orbit at O(1) relative scale (the tail bounds say
/// so), and rank decisions below that distortion are not supported. Kept far
/// above the measured second/first Gram-eigenvalue ratio.
pub const OSCILLATORY_RANK_TOL: f64 = 0.5;

/// Float slack attached to rows computed by exact polynomial arithmetic.
const MACHINE_SLACK: f64 = 1e-13;

pub(super) fn dispatch(name: &str, spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    match name {
        "lp_identity" => lp_identity(spec, report),
        "stanton_identity" => stanton_identity(spec, report),
        "nevanlinna_affine" => nevanlinna(spec, report),
        "prop22_bounded" => prop22_bounded(spec, report),
        "prop24_pairing_decay" => prop24_pairing_decay(spec, report),
        "prop25_kernel_cyclic" => prop25_kernel_cyclic(spec, report),
        "thm31_constants" => thm31_constants(spec, report),
        "thm32_eigen_recovery" => thm32_eigen_recovery(spec, report),
        "rem33_polynomial_rank" => rem33_polynomial_rank(spec, report),
        "cor34_case_a" => cor34_case_a(spec, report),
        "ex35_counterexample" => ex35_counterexample(spec, report),
        "lemma36_decay" => lemma36_decay(spec, report),
        "thm37_case_ac" => thm37_case_ac(spec, report),
        "thm38_analytic_at_1" => thm38_analytic_at_1(spec, report),
        "thm39_slow_decay" => thm39_slow_decay(spec, report),
        "prop310_series" => prop310_series(spec, report),
        "prop41_finite_zero_rank" => prop41_finite_zero_rank(spec, report),
        "prop42_zero_orbit" => prop42_zero_orbit(spec, report),
        "ex43_blaschke" => ex43_blaschke(spec, report),
        "ex44_infinite_zero_eigen" => ex44_infinite_zero_eigen(spec, report),
        "prop45_orthogonal" => prop45_orthogonal(spec, report),
        "thm51_cyclic_codim" => thm51_cyclic_codim(spec, report),
        "caradus_pozzi_report" => caradus_pozzi(spec, report),
        other => Err(Error::UnknownExperiment(other.into())),
    }
}

fn symbol(spec: &ExperimentSpec) -> AffineSymbol {
    AffineSymbol::new(spec.a).expect("validated spec")
}

pub(crate) fn random_polynomial(rng: &mut ChaCha8Rng, max_degree: usize) -> H2Function {
    let degree = rng.gen_range(1..=max_degree.max(1));
    let coeffs = (0..=degree)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    H2Function::from_coeffs(coeffs)
}

/// g = 2 + z, the stock case-A workhorse.
fn two_plus_z() -> H2Function {
    H2Function::from_real(&[2.0, 1.0])
}

fn lp_identity(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let trials = spec.m.max(8);
    for trial in 0..trials {
        let p = random_polynomial(&mut rng, 64);
        let reference = p.norm_sq();
        let deviation = (littlewood_paley_norm_sq(&p) - reference).abs() / reference;
        report.push(Row::new(trial as i64, "relative deviation from coefficient norm", deviation, Some(1e-10), MACHINE_SLACK));
    }
    Ok(())
}

fn stanton_identity(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let sym = symbol(spec);
    let trials = spec.m.max(8);
    let mut index = 0i64;
    for _ in 0..trials {
        let p = random_polynomial(&mut rng, 32);
        for n in 1..=5u32 {
            let reference = sym.compose(&p, n).norm_sq();
            let deviation = (stanton_norm_sq(&p, &sym, n) - reference).abs() / reference.max(1e-300);
            report.push(Row::new(index, "relative deviation from composed norm", deviation, Some(1e-8), MACHINE_SLACK));
            index += 1;
        }
    }
    // independent quadrature of the change-of-variables integrand
    let p = random_polynomial(&mut rng, 16);
    let h = sym.compose(&p.derivative(), 1);
    let alpha = sym.iterate_parameter(1);
    let integrand = move |z: Complex64| {
        let r = z.norm();
        if r == 0.0 {
            return 0.0;
        }
        let mut acc = Complex64::ZERO;
        for &c in h.coeffs().iter().rev() {
            acc = acc * z + c;
        }
        alpha * alpha * acc.norm_sqr() * (1.0 / r).ln()
    };
    let quad = quadrature_disk_oracle(integrand, 64, 128)?;
    let coefficient_term = counting_integral(&p, &sym, 1);
    let deviation = (quad.value - coefficient_term).abs() / coefficient_term.max(1e-300);
    report.push(Row::new(index, "quadrature oracle relative deviation", deviation, Some(1e-6), quad.error_estimate / coefficient_term.max(1e-300)));
    Ok(())
}

fn nevanlinna(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let mut index = 0i64;
    for n in 1..=spec.m.min(8) as u32 {
        for r in [0.2, 0.5, 0.8] {
            let w = sym.phi_point(n, Complex64::new(r, 0.0));
            let value = nevanlinna_affine(&sym, n, w)?;
            report.push(Row::new(index, format!("N at the image of r={r}, n={n}"), value, Some((1.0 / r).ln()), MACHINE_SLACK));
            index += 1;
        }
        let outside = Complex64::new(-0.5, 0.4);
        report.push(Row::new(index, format!("N outside D_{n}"), nevanlinna_affine(&sym, n, outside)?, Some(0.0), 0.0));
        index += 1;
    }
    report.note("the image of 0 is an excluded (rejected) query point".to_string());
    Ok(())
}

fn prop22_bounded(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let alpha = Complex64::new(0.5, 0.0);
    let f = kernel(alpha, spec.degree)?;
    for n in 1..=spec.m.min(8) as u32 {
        let composed = sym.compose(&f, n);
        let est = sup_on_unit_circle(&composed, 512);
        // C^n kappa_alpha = c_n * kappa_{beta_n} with an explicit sup bound
        let an = sym.iterate_parameter(n);
        let denom = Complex64::ONE - alpha.conj() + alpha.conj() * an;
        let beta = alpha * an / (Complex64::ONE - alpha + alpha * an);
        let analytic_sup = denom.norm().recip() / (1.0 - beta.norm());
        report.push(Row::new(n as i64, format!("sampled sup |C^{n} f| on the disk"), est.sup, Some(analytic_sup), est.eval_error));
    }
    report.note(format!("seed function EB flag: {:?}", f.eb_flag()));
    Ok(())
}

fn prop24_pairing_decay(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let f = kernel(Complex64::new(0.5, 0.0), spec.degree)?;
    let mut index = 0i64;
    for m_idx in 1..=3usize {
        let e_m = H2Function::monomial(m_idx);
        for n in (4..=spec.m.min(40) as u32).step_by(4) {
            let value = sym.compose(&f, n).inner(&e_m).norm();
            // |<C^n f, e_m>| = a^{nm}|f^{(m)}(1-a^n)|/m! <= 2 a^{nm} here
            let bound = 2.0 * sym.iterate_parameter(n).powi(m_idx as i32);
            report.push(Row::new(index, format!("pairing with e_{m_idx} at n={n}"), value, Some(bound), MACHINE_SLACK));
            index += 1;
        }
    }
    Ok(())
}

fn prop25_kernel_cyclic(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let analysis = orbit(&kernel(Complex64::new(0.5, 0.0), spec.degree)?, &sym, 5);
    let eigs = analysis.gram_eigenvalues();
    for (i, &ev) in eigs.iter().enumerate() {
        report.push(Row::new(i as i64, format!("Gram eigenvalue {i} / largest"), ev / eigs[0], None, 1e-14));
    }
    report.push(Row::new(10, "rank at tol 1e-11", analysis.numerical_rank(1e-11) as f64, Some(6.0), 0.0));
    report.push(Row::new(11, "rank at tol 1e-10 (boundary case)", analysis.numerical_rank(1e-10) as f64, Some(5.0), 0.0));
    let trivial = orbit(&kernel(Complex64::ZERO, 16)?, &sym, 5);
    report.push(Row::new(12, "rank of the alpha = 0 orbit", trivial.numerical_rank(spec.tol) as f64, Some(1.0), 0.0));

    // composed-kernel identity residual
    let alpha = Complex64::new(0.5, 0.0);
    let k = kernel(alpha, spec.degree)?;
    let lhs = sym.compose(&k, 1);
    let a = Complex64::new(spec.a, 0.0);
    let denom = Complex64::ONE - alpha.conj() + alpha.conj() * a;
    let rhs = kernel(alpha * a / (Complex64::ONE - alpha + alpha * a), spec.degree)?.scale(denom.inv());
    report.push(Row::new(13, "composed-kernel identity residual", lhs.sub(&rhs).norm(), Some(1e-12), 1e-15));
    report.note("exact-spectrum conditioning fixes the rank tolerance at 1e-11: the smallest relative Gram eigenvalue is 8.59e-11".to_string());
    Ok(())
}

fn thm31_constants(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let g = two_plus_z();
    let analysis = orbit(&g, &sym, spec.m);
    let limit = H2Function::constant(Complex64::new(3.0, 0.0));
    let derivative_sup = sym.sup_on_disk_boundary(&g.derivative(), 1, 256).sup;
    for m in 0..=spec.m {
        let d = analysis.distance_to_span(&limit, m);
        let bound = 10.0 * spec.a.powi(m as i32) * derivative_sup;
        report.push(Row::new(m as i64, format!("distance of the limit constant to the span prefix {m}"), d, Some(bound), MACHINE_SLACK));
    }
    Ok(())
}

fn thm32_eigen_recovery(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let g = two_plus_z();
    let mut index = 0i64;
    for (s_re, sup_fs) in [(0.0, 1.0), (2.0, 4.0)] {
        let s = EigenExponent::new(Complex64::new(s_re, 0.0))?;
        // subsequence floor M for the proof-chain bound
        let floor = boundary_samples(&g, &sym, spec.m.min(20) as u32)
            .iter()
            .map(|b| b.value.norm())
            .fold(f64::INFINITY, f64::min);
        for n in 1..=spec.m.min(20) as u32 {
            let r = krylov::normalized_orbit_residual(&g, s, &sym, n, spec.degree)?;
            let chain = (2.0 * sup_fs * sup_fs / (floor * floor) * counting_integral(&g, &sym, n)).sqrt();
            report.push(Row::new(index, format!("normalized residual, s = {s_re}, n = {n}"), r.value, Some(chain), r.uncertainty));
            index += 1;
        }
    }
    Ok(())
}

fn rem33_polynomial_rank(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut index = 0i64;
    let mut cases: Vec<H2Function> = vec![
        H2Function::monomial(1),
        H2Function::from_real(&[-0.25, 0.0, 1.0]),
        H2Function::from_real(&[1.0, 1.0, 0.0, 1.0]),
    ];
    for _ in 0..3 {
        cases.push(random_polynomial(&mut rng, 6));
    }
    for p in cases {
        let analysis = orbit(&p, &sym, spec.m.min(12));
        let rank = analysis.numerical_rank(spec.tol);
        report.push(Row::new(index, format!("orbit rank of a degree-{} polynomial", p.degree()), rank as f64, Some((p.degree() + 1) as f64), 0.0));
        index += 1;
    }
    Ok(())
}

fn cor34_case_a(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let g = two_plus_z();
    let samples: Vec<Complex64> = boundary_samples(&g, &sym, 24).iter().map(|b| b.value).collect();
    let label = classify_case(&samples, 1e-6)?;
    report.push(Row::new(0, "case label (0=A, 1=B, 2=C)", case_code(label.label), Some(0.0), 0.0));
    if let Some(limit) = label.limit {
        report.push(Row::new(1, "clustered limit modulus", limit.norm(), None, 1e-12));
    }
    let s = EigenExponent::new(Complex64::ZERO)?;
    for n in 1..=spec.m.min(20) as u32 {
        let r = krylov::normalized_orbit_residual(&g, s, &sym, n, spec.degree)?;
        report.push(Row::new(1 + n as i64, format!("constant-recovery residual at n = {n}"), r.value, Some(spec.a.powi(n as i32)), r.uncertainty));
    }
    Ok(())
}

fn case_code(label: Case) -> f64 {
    match label {
        Case::A => 0.0,
        Case::B => 1.0,
        Case::C => 2.0,
    }
}

/// Largest n whose boundary point 1−aⁿ the truncation can still evaluate to
/// a relative resolution of 1e-12; orbit members beyond it are dominated by
/// truncation noise.
pub fn resolution_safe_window(f: &H2Function, sym: &AffineSymbol, hard_cap: u32) -> u32 {
    let scale = f.norm().max(1e-300);
    let mut safe = 0;
    for n in 1..=hard_cap {
        let z = Complex64::new(1.0 - sym.iterate_parameter(n), 0.0);
        if f.eval_error_bound(z) <= 1e-12 * scale {
            safe = n;
        } else {
            break;
        }
    }
    safe
}

fn ex35_counterexample(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let t = EigenExponent::oscillatory(&sym);
    let f = eigenfunction(t, spec.degree)?;
    let one = H2Function::constant(Complex64::ONE);

    let (ns_lo, ns_hi) = f.norm_sq_interval();
    let d_floor_lo = (1.0 - 1.0 / ns_lo).sqrt();
    let d_floor_hi = (1.0 - 1.0 / ns_hi).sqrt();
    let safe = resolution_safe_window(&f, &sym, spec.m as u32);

    let analysis = orbit(&f, &sym, spec.m);
    for m in 0..=spec.m {
        let d = analysis.distance_to_span(&one, m);
        // tail-induced span distortion: crude sum of member uncertainties
        let unc: f64 = analysis.members()[..=m]
            .iter()
            .map(|g| g.tail_bound().sqrt() / g.norm().max(1e-300))
            .sum();
        report.push(Row::new(m as i64, format!("distance of the constant 1 to the span prefix {m}"), d, Some(0.9 * d_floor_lo), unc.min(1.0)));
    }
    let base = 1000i64;
    report.push(Row::new(base, "projection floor d_inf (lower endpoint)", d_floor_lo, None, d_floor_hi - d_floor_lo));
    report.push(Row::new(base + 1, "resolution-safe window n_safe", safe as f64, None, 0.0));
    let safe_analysis = orbit(&f, &sym, safe as usize);
    report.push(Row::new(base + 2, format!("rank at the oscillatory tolerance {OSCILLATORY_RANK_TOL} over the safe window"), safe_analysis.numerical_rank(OSCILLATORY_RANK_TOL) as f64, Some(1.0), 0.0));
    report.push(Row::new(base + 3, "rank at tol 1e-10 over the safe window (truncation-noise directions included)", safe_analysis.numerical_rank(1e-10) as f64, None, 0.0));
    let eigs = safe_analysis.gram_eigenvalues();
    report.push(Row::new(base + 4, "second/first Gram eigenvalue over the safe window", eigs[1] / eigs[0], Some(OSCILLATORY_RANK_TOL), 1e-14));
    report.note("distance rows beyond n_safe are uncertainty-dominated: the truncated series cannot resolve phi_{a^n}(D) there".to_string());
    report.note("exact-arithmetic rank is 1; the 1e-10 rank counts truncation-noise directions, so the rank statement is made at the documented coarse tolerance".to_string());
    Ok(())
}

fn lemma36_decay(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let mut index = 0i64;
    let eb_cases: Vec<(&str, H2Function)> = vec![
        ("2+z", two_plus_z()),
        ("1+z+z^2", H2Function::from_real(&[1.0, 1.0, 1.0])),
        ("kernel 0.5", kernel(Complex64::new(0.5, 0.0), 200)?),
    ];
    let a2 = spec.a * spec.a;
    for (label, g) in &eb_cases {
        for n in 5..15u32 {
            let ratio = counting_integral(g, &sym, n + 1) / counting_integral(g, &sym, n);
            report.push(Row::new(index, format!("counting ratio for {label}, n = {n}"), ratio, Some(a2), MACHINE_SLACK));
            index += 1;
        }
    }
    // the no-decay contrast: f_t keeps its counting integral of order one,
    // but the truncated derivative's tail dominates the reported interval
    let t = EigenExponent::oscillatory(&sym);
    let f = eigenfunction(t, spec.degree)?;
    let derived_reference = (f.norm_sq() - 1.0) / 2.0;
    for n in 1..=6u32 {
        let value = counting_integral(&f, &sym, n);
        let unc = counting_uncertainty(&f, &sym, n);
        report.push(Row::new(index, format!("oscillatory counting integral, n = {n}"), value, Some(derived_reference), unc));
        index += 1;
    }
    report.note("oscillatory rows are uncertainty-dominated: f_t' is not square-summable, so its truncation carries an O(1) relative tail".to_string());
    Ok(())
}

/// Tail-induced uncertainty of the counting integral: the composed derivative
/// carries tail mass `tail_h`; its weighted leak is bounded through
/// Cauchy–Schwarz against the largest log moment 1/2.
pub fn counting_uncertainty(g: &H2Function, sym: &AffineSymbol, n: u32) -> f64 {
    let alpha = sym.iterate_parameter(n);
    let h = sym.compose(&g.derivative(), n);
    let weighted: f64 = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c.norm_sqr() * crate::integrals::log_weight_moment(j))
        .sum();
    let tail_mass = h.tail_bound() * 0.5;
    alpha * alpha * (2.0 * (weighted * tail_mass).sqrt() + tail_mass)
}

fn thm37_case_ac(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    // case A with the recovery pipeline
    let g = two_plus_z();
    let a_samples: Vec<Complex64> = boundary_samples(&g, &sym, 24).iter().map(|b| b.value).collect();
    let a_label = classify_case(&a_samples, 1e-6)?;
    report.push(Row::new(0, "case label of 2+z (0=A, 1=B, 2=C)", case_code(a_label.label), Some(0.0), 0.0));
    let s = EigenExponent::new(Complex64::ZERO)?;
    let mut index = 1i64;
    for n in [5u32, 10, 15, 20] {
        let r = krylov::normalized_orbit_residual(&g, s, &sym, n, spec.degree)?;
        report.push(Row::new(index, format!("case-A recovery residual at n = {n}"), r.value, Some(spec.a.powi(n as i32)), r.uncertainty));
        index += 1;
    }
    // case C by classification only: f_{t/2} has boundary values (−1)^n but
    // its derivative is not EB, so the recovery hypothesis fails for it
    let half = EigenExponent::half_oscillatory(&sym);
    let f = eigenfunction(half, spec.degree)?;
    let c_samples: Vec<Complex64> = boundary_samples(&f, &sym, 9).iter().map(|b| b.value).collect();
    let c_label = classify_case(&c_samples, 1e-6)?;
    report.push(Row::new(index, "case label of the half-period oscillator (0=A, 1=B, 2=C)", case_code(c_label.label), Some(2.0), 0.0));
    report.note("a bounded derivative on some D_n makes the boundary sequence Cauchy, so case C never has an EB derivative; the case-C instance is classification-only".to_string());
    Ok(())
}

fn thm38_analytic_at_1(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    // g~ = (1-z)^2 (2+z): analytic at 1, zero of order K = 2
    let g = two_plus_z();
    let k_exponent = EigenExponent::new(Complex64::new(2.0, 0.0))?;
    let f2 = eigenfunction(k_exponent, spec.degree.min(16))?;
    let gtilde = f2.multiply(&g);
    report.push(Row::new(0, "order of the zero at 1", 2.0, None, 0.0));
    report.push(Row::new(1, "|g~(1)| (vanishes)", gtilde.eval(Complex64::new(1.0 - 1e-9, 0.0))?.norm(), Some(1e-8), 1e-12));
    let mut index = 2i64;
    for n in 1..=spec.m.min(20) as u32 {
        let r = krylov::normalized_orbit_residual(&g, k_exponent, &sym, n, spec.degree)?;
        report.push(Row::new(index, format!("recovery residual toward f_2 at n = {n}"), r.value, Some(spec.a.powi(n as i32) * 3.0), r.uncertainty));
        index += 1;
    }
    Ok(())
}

fn thm39_slow_decay(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let g = two_plus_z();
    let eps = 0.5;
    // the boundary sequence dominates L·a^{n(1-eps)} with L from the window
    let window: Vec<u32> = (5..=spec.m.min(20) as u32).collect();
    let floor = window
        .iter()
        .map(|&n| {
            let v = g.eval(Complex64::new(1.0 - sym.iterate_parameter(n), 0.0)).unwrap().norm();
            v / sym.iterate_parameter(n).powf(1.0 - eps)
        })
        .fold(f64::INFINITY, f64::min);
    let sup_dg = sym.sup_on_disk_boundary(&g.derivative(), 1, 256).sup;
    let s = EigenExponent::new(Complex64::ZERO)?;
    let mut index = 0i64;
    let mut previous = f64::NAN;
    for &n in &window {
        let r = krylov::normalized_orbit_residual(&g, s, &sym, n, spec.degree)?;
        let squared = r.value * r.value;
        let chain = (sup_dg * sup_dg / (floor * floor)) * sym.iterate_parameter(n).powf(2.0 * eps);
        report.push(Row::new(index, format!("squared residual at n = {n}"), squared, Some(chain), 2.0 * r.value * r.uncertainty));
        index += 1;
        if !previous.is_nan() {
            report.push(Row::new(index, format!("squared-residual ratio at n = {n}"), squared / previous, Some(spec.a.powf(2.0 * eps)), MACHINE_SLACK));
            index += 1;
        }
        previous = squared;
    }
    Ok(())
}

fn prop310_series(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let g = H2Function::from_real(&[1.0, -1.0]);
    let sup_dg = sym.sup_on_disk_boundary(&g.derivative(), 1, 256).sup;
    let mut index = 0i64;
    // Cauchy increments of the partial sums vs the proof bound
    for m in 2..=spec.m.min(16) as u32 {
        let increment = sym.compose(&g, m).norm();
        let boundary = g.eval(Complex64::new(1.0 - sym.iterate_parameter(m), 0.0))?.norm();
        let bound = sym.iterate_parameter(m) * sup_dg + boundary;
        report.push(Row::new(index, format!("increment norm at m = {m}"), increment, Some(bound), MACHINE_SLACK));
        index += 1;
    }
    // h_k = tail sums: span data for the independence question (no verdict)
    let h_terms: Vec<H2Function> = (1..=6u32).map(|k| krylov::tail_sum(&g, &sym, k, 12)).collect();
    let h_analysis = OrbitAnalysis::from_functions(sym, h_terms, spec.tol);
    report.push(Row::new(index, "Gram rank of the tail sums h_1..h_6 (data only)", h_analysis.numerical_rank(spec.tol) as f64, None, 0.0));
    index += 1;
    // divergence contrast: each composed oscillatory term has the same norm
    let t = EigenExponent::oscillatory(&sym);
    let f = eigenfunction(t, spec.degree)?;
    let f_norm = f.norm();
    let mut partial: Option<H2Function> = None;
    for m in 1..=spec.m.min(10) as u32 {
        let term = sym.compose(&f, m);
        partial = Some(match partial {
            None => term,
            Some(p) => linear_combine(&[Complex64::ONE, Complex64::ONE], &[p, term]).expect("lengths"),
        });
        let sum = partial.as_ref().unwrap();
        let ratio = sum.norm() / (m as f64 * f_norm);
        let unc = sum.tail_bound().sqrt() / (m as f64 * f_norm);
        report.push(Row::new(index, format!("oscillatory partial-sum ratio at m = {m}"), ratio, Some(1.0), unc));
        index += 1;
    }
    report.note("oscillatory ratio rows are uncertainty-dominated: each composed truncation drifts at the percent scale, within the reported intervals".to_string());
    report.note("the tail-sum span data is reported without a verdict".to_string());
    Ok(())
}

fn prop41_finite_zero_rank(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let cases: Vec<(&str, H2Function)> = vec![
        ("z", H2Function::monomial(1)),
        ("z(2-z)", H2Function::from_real(&[0.0, 2.0, -1.0])),
        ("z^2 - 1/4", H2Function::from_real(&[-0.25, 0.0, 1.0])),
    ];
    for (i, (label, f)) in cases.iter().enumerate() {
        let analysis = orbit(f, &sym, spec.m.min(10));
        report.push(Row::new(i as i64, format!("orbit rank of {label}"), analysis.numerical_rank(spec.tol) as f64, Some(2.0), 0.0));
    }
    report.note("bound column is the lower bound 2 for seeds with finitely many zeros, at least one".to_string());
    Ok(())
}

fn prop42_zero_orbit(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let b = blaschke_partial(&sym, 2, 6, spec.degree.max(4096));
    let check = krylov::zero_orbit_check(&b, &sym, Complex64::ZERO, 2..=7, 1e-8)?;
    report.push(Row::new(0, "|B(w)| at w = 0", check.value_at_w.norm(), Some(0.1), 1e-12));
    for (i, (n, v)) in check.orbit_values.iter().enumerate() {
        report.push(Row::new(1 + i as i64, format!("|B(phi_a^{n}(0))|"), v.norm(), Some(1e-10), 1e-12));
    }
    report.push(Row::new(100, "non-minimality flag", if check.non_minimality_flag { 1.0 } else { 0.0 }, Some(1.0), 0.0));
    Ok(())
}

fn ex43_blaschke(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let degree = spec.degree.max(4096);
    let b = blaschke_partial(&sym, 2, 6, degree);
    let mut index = 0i64;
    for n in 2..=7u32 {
        let z = Complex64::new(1.0 - sym.iterate_parameter(n), 0.0);
        report.push(Row::new(index, format!("|B(1-a^{n})|"), b.eval(z)?.norm(), Some(1e-10), b.eval_error_bound(z)));
        index += 1;
    }
    report.push(Row::new(index, "|B(0)|", b.eval(Complex64::ZERO)?.norm(), Some(0.1), 1e-12));
    index += 1;
    // modulus on the pulled-in circle, away from the accumulation point 1
    for j in 0..16 {
        let theta = std::f64::consts::FRAC_PI_4 + (j as f64 / 15.0) * 1.5 * std::f64::consts::PI;
        let z = Complex64::from_polar(0.9999, theta);
        report.push(Row::new(index, format!("| |B| - 1 | on the circle, sample {j}"), (b.eval(z)?.norm() - 1.0).abs(), Some(1e-3), b.eval_error_bound(z)));
        index += 1;
    }
    report.note("six factors: a zero at 1-a^n needs N >> a^{-n} to resolve, so deeper zeros are out of reach at this degree".to_string());
    Ok(())
}

fn ex44_infinite_zero_eigen(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let t = EigenExponent::oscillatory(&sym);
    let f = linear_combine(
        &[Complex64::ONE, Complex64::ONE],
        &[H2Function::constant(Complex64::ONE), eigenfunction(t, spec.degree)?],
    )?;
    let w = Complex64::new(1.0 - 2.0f64.sqrt(), 0.0);
    report.push(Row::new(0, "|f(1 - sqrt 2)|", f.eval(w)?.norm(), Some(1e-8), f.eval_error_bound(w)));
    let r = krylov::eigen_residual(&f, &sym, Complex64::ONE);
    report.push(Row::new(1, "eigen residual at lambda = 1", r.value, Some(1e-8 + r.uncertainty), r.uncertainty));
    let check = krylov::zero_orbit_check(&f, &sym, w, 1..=6, 1e-6)?;
    for (i, (n, v)) in check.orbit_values.iter().enumerate() {
        report.push(Row::new(2 + i as i64, format!("|f(phi_a^{n}(1 - sqrt 2))|"), v.norm(), Some(1e-6), 1e-9));
    }
    report.push(Row::new(100, "non-minimality flag (not raised: f vanishes at w too)", if check.non_minimality_flag { 1.0 } else { 0.0 }, Some(0.0), 0.0));
    Ok(())
}

fn prop45_orthogonal(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let f = H2Function::monomial(1);
    let z0 = Complex64::ZERO;
    let g = krylov::orthogonal_element(&f, &sym, spec.m.min(5), z0)?;
    report.push(Row::new(0, "norm of the orthogonal element", g.norm(), Some(1.0), 1e-14));
    let analysis = orbit(&f, &sym, spec.m.min(5));
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // span vectors with h(z0) = 0: random combinations minus the value-matching member
    let pivot = analysis
        .members()
        .iter()
        .find(|mf| mf.eval(z0).unwrap().norm() > 1e-6)
        .expect("some member is nonzero at z0")
        .clone();
    let pivot_value = pivot.eval(z0)?;
    for trial in 0..20 {
        let coeffs: Vec<Complex64> = (0..analysis.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let v = linear_combine(&coeffs, analysis.members())?;
        let correction = -v.eval(z0)? / pivot_value;
        let h = linear_combine(&[Complex64::ONE, correction], &[v, pivot.clone()])?;
        let h_norm = h.norm().max(1e-300);
        report.push(Row::new(1 + trial as i64, format!("|<g, h_{trial}>| for a unit span vector vanishing at z0"), g.inner(&h).norm() / h_norm, Some(1e-12), 1e-16));
    }
    Ok(())
}

fn thm51_cyclic_codim(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let trials = spec.m.clamp(8, 200);
    for trial in 0..trials {
        let n = rng.gen_range(2..=20);
        let tail: Vec<Complex64> = (0..n).map(|_| opdiag::random_unit_disk(&mut rng)).collect();
        let companion = MatrixOperator::companion(&tail)?;
        let result = opdiag::cyclic_codim_check_seeded(&companion, 8, spec.tol, spec.seed.wrapping_add(trial as u64));
        let codim = result.range_codim as f64;
        report.push(Row::new(trial as i64, format!("range codim of a cyclic {n}x{n} companion matrix"), codim, Some(1.0), 0.0));
        debug_assert!(result.property_holds);
    }
    Ok(())
}

fn caradus_pozzi(spec: &ExperimentSpec, report: &mut ExperimentReport) -> Result<()> {
    let sym = symbol(spec);
    let mut index = 0i64;
    let mut push_case = |report: &mut ExperimentReport, label: &str, t: &MatrixOperator| {
        let r = opdiag::caradus_pozzi_check(t, spec.tol);
        report.push(Row::new(index, format!("kernel dim of {label}"), r.kernel_dim as f64, None, 0.0));
        report.push(Row::new(index + 1, format!("range codim of {label}"), r.range_codim as f64, None, 0.0));
        index += 2;
    };

    let n = 8;
    let mut block = nalgebra::DMatrix::zeros(n, n);
    for i in 0..n / 2 {
        block[(i, n / 2 + i)] = Complex64::ONE;
    }
    push_case(report, "the half-shift block", &MatrixOperator::new(block)?);

    let degree = 12;
    let m = opdiag::truncated_composition_matrix(&sym, degree);
    let shift = nalgebra::DMatrix::identity(degree + 1, degree + 1) * Complex64::new(spec.a * spec.a, 0.0);
    push_case(report, "the composition matrix minus a^2", &MatrixOperator::new(m.entries() - shift)?);

    push_case(report, "the identity", &MatrixOperator::identity(4));

    report.note(opdiag::FINITE_DIMENSION_DISCLAIMER.to_string());
    report.note("closed range is automatic at finite dimension; no universality verdict is emitted".to_string());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run_experiment, ExperimentSpec};

    fn quick_spec(name: &str) -> ExperimentSpec {
        let mut spec = ExperimentSpec::defaults(name).unwrap();
        spec.m = spec.m.min(12);
        if spec.degree > 1024 {
            spec.degree = 1024;
        }
        spec
    }

    #[test]
    fn every_registry_entry_runs_and_reports_intervals() {
        for info in crate::experiments::list_experiments() {
            // keep the heavy oscillatory scenarios at their true degree
            let spec = match info.name {
                "ex35_counterexample" | "lemma36_decay" | "prop310_series" | "ex44_infinite_zero_eigen"
                | "thm37_case_ac" | "ex43_blaschke" | "prop42_zero_orbit" => {
                    let mut s = ExperimentSpec::defaults(info.name).unwrap();
                    s.m = s.m.min(8);
                    s
                }
                _ => quick_spec(info.name),
            };
            let report = run_experiment(&spec).expect(info.name);
            assert!(!report.rows.is_empty(), "{} produced no rows", info.name);
            for row in &report.rows {
                assert!(row.err_lo <= row.value && row.value <= row.err_hi, "{} row {} has a malformed interval", info.name, row.index);
                assert!(row.value.is_finite());
            }
            assert_eq!(report.anchor, info.anchor);
        }
    }

    #[test]
    fn thm31_distances_fall_under_the_bound() {
        let mut spec = ExperimentSpec::defaults("thm31_constants").unwrap();
        spec.m = 40;
        let report = run_experiment(&spec).unwrap();
        for row in report.rows.iter().filter(|r| r.index >= 5) {
            assert!(row.value <= row.bound.unwrap(), "row {}: {} > {:?}", row.index, row.value, row.bound);
        }
        let last = report.rows.last().unwrap();
        assert!(last.value < 1e-8);
    }

    #[test]
    fn prop24_pairings_sit_below_their_bounds() {
        let spec = ExperimentSpec::defaults("prop24_pairing_decay").unwrap();
        let report = run_experiment(&spec).unwrap();
        for row in &report.rows {
            assert!(row.value <= row.bound.unwrap() * (1.0 + 1e-9), "row {}", row.index);
        }
        assert!(report.rows.iter().any(|r| r.value < 1e-8));
    }

    #[test]
    fn ex35_report_carries_floor_window_and_rank() {
        let mut spec = ExperimentSpec::defaults("ex35_counterexample").unwrap();
        spec.m = 10;
        let report = run_experiment(&spec).unwrap();
        let window = report.rows.iter().find(|r| r.index == 1001).unwrap();
        assert_eq!(window.value, 7.0);
        let rank = report.rows.iter().find(|r| r.index == 1002).unwrap();
        assert_eq!(rank.value, 1.0);
        let lam_ratio = report.rows.iter().find(|r| r.index == 1004).unwrap();
        assert!(lam_ratio.value < OSCILLATORY_RANK_TOL);
        for row in report.rows.iter().filter(|r| (r.index as usize) <= 7 && r.index >= 0) {
            assert!(row.value >= row.bound.unwrap(), "distance under the floor at {}", row.index);
        }
    }

    #[test]
    fn thm51_codims_never_exceed_one() {
        let mut spec = ExperimentSpec::defaults("thm51_cyclic_codim").unwrap();
        spec.m = 100;
        let report = run_experiment(&spec).unwrap();
        assert_eq!(report.rows.len(), 100);
        for row in &report.rows {
            assert!(row.value <= 1.0);
        }
    }
}
