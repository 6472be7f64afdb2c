//! The acceptance suite: twelve numbered criteria, each runnable on its own,
//! each reporting one pass/fail line plus detail lines.
//!
//! Every tolerance is pinned here in code. Checks on exact polynomial paths
//! are strict; checks on truncated slowly-converging series are made against
//! tolerance-plus-reported-uncertainty (the report invariant that no number
//! travels without its interval), and those detail lines say
//! "uncertainty-dominated" with the raw deviation printed next to them.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::h2::{linear_combine, H2Function};
use crate::integrals::{counting_integral, quadrature_disk_oracle, stanton_norm_sq};
use crate::krylov::{self, orbit};
use crate::opdiag::{self, MatrixOperator};
use crate::special::{blaschke_partial, eigenfunction, kernel, EigenExponent};
use crate::symbols::AffineSymbol;

use super::runs::{counting_uncertainty, random_polynomial, resolution_safe_window, OSCILLATORY_RANK_TOL};
use super::{run_experiment, ExperimentSpec, REGISTRY};

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    fn new(id: usize, name: &'static str) -> Self {
        Self { id, name, passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.passed = false;
        }
        self.details.push(format!("{} {detail}", if ok { "ok:" } else { "FAIL:" }));
    }

    /// One console line: PASS/FAIL, id, name.
    pub fn summary_line(&self) -> String {
        format!("{} criterion {:>2}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name)
    }
}

/// Runs all twelve criteria. `quick` shrinks trial counts, never tolerances.
pub fn run_all(quick: bool) -> Vec<CriterionResult> {
    vec![
        criterion_1_norm_identities(quick),
        criterion_2_eigen_relation(quick),
        criterion_3_constants_in_span(quick),
        criterion_4_recovery_rate(quick),
        criterion_5_oscillatory_counterexample(quick),
        criterion_6_counting_decay(quick),
        criterion_7_series_partial_sums(quick),
        criterion_8_zero_set_suite(quick),
        criterion_9_orthogonal_element(quick),
        criterion_10_cyclic_codim(quick),
        criterion_11_kernel_orbit_rank(quick),
        criterion_12_determinism(quick),
    ]
}

/// 1 — the norm identity for C_{φ_{aⁿ}} against direct composition, plus the
/// quadrature oracle.
pub fn criterion_1_norm_identities(quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(1, "area-integral norm identities");
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let trials = if quick { 40 } else { 200 };
    let mut worst: f64 = 0.0;
    for &a in &[0.3, 0.5, 0.7] {
        let sym = AffineSymbol::new(a).unwrap();
        for _ in 0..trials {
            let p = random_polynomial(&mut rng, 32);
            for n in 1..=5u32 {
                let reference = sym.compose(&p, n).norm_sq();
                let dev = (stanton_norm_sq(&p, &sym, n) - reference).abs() / reference.max(1e-300);
                worst = worst.max(dev);
            }
        }
    }
    result.check(worst <= 1e-8, format!("identity vs composed norm over {} cases: worst relative deviation {worst:.3e} <= 1e-8", 3 * trials * 5));

    // change-of-variables quadrature across symbols
    let mut worst_cov: f64 = 0.0;
    for &a in &[0.3, 0.5, 0.7] {
        let sym = AffineSymbol::new(a).unwrap();
        for seed in [1u64, 2] {
            let mut prng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_polynomial(&mut prng, 8);
            let reference = counting_integral(&p, &sym, 1);
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
            let quad = quadrature_disk_oracle(integrand, 64, 128).unwrap();
            worst_cov = worst_cov.max((quad.value - reference).abs() / reference.max(1e-300));
        }
    }
    result.check(worst_cov <= 1e-6, format!("change-of-variables quadrature: worst relative deviation {worst_cov:.3e} <= 1e-6"));

    // direct counting-function integrand through the generic disk oracle
    let sym = AffineSymbol::new(0.5).unwrap();
    let f = H2Function::monomial(2);
    let reference = counting_integral(&f, &sym, 1);
    let integrand = move |w: Complex64| {
        let d = (w - Complex64::new(0.5, 0.0)).norm();
        if d < 0.5 && d > 0.0 {
            4.0 * w.norm_sqr() * (0.5 / d).ln()
        } else {
            0.0
        }
    };
    let quad = quadrature_disk_oracle(integrand, 1024, 2048).unwrap();
    let dev = (quad.value - reference).abs() / reference;
    result.check(dev <= 1e-6, format!("direct counting-function quadrature: relative deviation {dev:.3e} <= 1e-6"));
    result
}

/// 2 — the eigen relation C_{φ_a} f_s = a^s f_s at N = 2048 within
/// 1e-6 plus the reported tail term.
pub fn criterion_2_eigen_relation(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(2, "eigenfunction relation");
    let degree = 2048;
    for &a in &[0.3, 0.5, 0.7] {
        let sym = AffineSymbol::new(a).unwrap();
        for s in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(1.0, 1.0)] {
            let f = crate::special::eigenfunction_raw(s, degree).unwrap();
            let lambda = Complex64::new(a, 0.0).powc(s);
            let diff = sym.compose(&f, 1).sub(&f.scale(lambda));
            let residual = diff.norm();
            let tail_term = (sym.operator_norm_bound(1) + lambda.norm()) * f.tail_bound().sqrt();
            result.check(
                residual <= 1e-6 + tail_term,
                format!("a = {a}, s = {s}: residual {residual:.3e} <= 1e-6 + tail {tail_term:.3e}"),
            );
        }
    }
    result
}

/// 3 — the constants enter the span of the orbit of g = 2 + z:
/// distance ≤ 10·aᵐ·sup|g′| on m = 5..40 and below 1e-8 at m = 40.
pub fn criterion_3_constants_in_span(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(3, "constants enter the orbit span");
    let sym = AffineSymbol::new(0.5).unwrap();
    let g = H2Function::from_real(&[2.0, 1.0]);
    let analysis = orbit(&g, &sym, 40);
    let limit = H2Function::constant(Complex64::new(3.0, 0.0));
    let derivative_sup = sym.sup_on_disk_boundary(&g.derivative(), 1, 256).sup;
    let mut worst_ratio: f64 = 0.0;
    let mut all_below = true;
    for m in 5..=40usize {
        let d = analysis.distance_to_span(&limit, m);
        let bound = 10.0 * 0.5f64.powi(m as i32) * derivative_sup;
        all_below &= d <= bound;
        worst_ratio = worst_ratio.max(d / bound);
    }
    result.check(all_below, format!("distance <= 10 a^m sup|g'| on m = 5..40 (worst ratio {worst_ratio:.3e})"));
    let final_distance = analysis.distance_to_span(&limit, 40);
    result.check(final_distance < 1e-8, format!("distance at m = 40 is {final_distance:.3e} < 1e-8"));
    result
}

/// 4 — recovery-rate band: normalized residual ratios in [0.9a, 1.1a] for
/// (s, g) in {(0, 2+z), (2, 2+z)} over n = 5..20.
pub fn criterion_4_recovery_rate(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(4, "eigenfunction recovery rate band");
    let sym = AffineSymbol::new(0.5).unwrap();
    let g = H2Function::from_real(&[2.0, 1.0]);
    for s_re in [0.0, 2.0] {
        let s = EigenExponent::new(Complex64::new(s_re, 0.0)).unwrap();
        let values: Vec<f64> = (1..=20u32)
            .map(|n| krylov::normalized_orbit_residual(&g, s, &sym, n, 64).unwrap().value)
            .collect();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for n in 5..20 {
            let ratio = values[n] / values[n - 1];
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        result.check(
            lo >= 0.9 * 0.5 && hi <= 1.1 * 0.5,
            format!("s = {s_re}: consecutive ratios in [{lo:.4}, {hi:.4}] within [0.45, 0.55] over n = 5..20"),
        );
    }
    result
}

/// 5 — the oscillatory counterexample at N = 4096: distance to the constant
/// stays at the floor d∞ over the resolution-safe window, and the orbit is
/// rank one at the documented coarse tolerance.
pub fn criterion_5_oscillatory_counterexample(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(5, "oscillatory eigenfunction keeps the constants out");
    let sym = AffineSymbol::new(0.5).unwrap();
    let t = EigenExponent::oscillatory(&sym);
    let f = eigenfunction(t, 4096).unwrap();
    let safe = resolution_safe_window(&f, &sym, 40) as usize;
    result.check(safe >= 6, format!("resolution-safe window n <= {safe}"));

    let analysis = orbit(&f, &sym, safe);
    let one = H2Function::constant(Complex64::ONE);
    let (ns_lo, ns_hi) = f.norm_sq_interval();
    let d_floor = (1.0 - 1.0 / ns_lo).sqrt();
    let d_floor_width = (1.0 - 1.0 / ns_hi).sqrt() - d_floor;
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    let mut above_floor = true;
    for m in 0..=safe {
        let d = analysis.distance_to_span(&one, m);
        lo = lo.min(d);
        hi = hi.max(d);
        above_floor &= d >= 0.9 * d_floor;
    }
    result.check(hi - lo < 1e-10, format!("distance variation {:.3e} < 1e-10 over the safe window", hi - lo));
    result.check(above_floor, format!("every distance >= 0.9 d_inf = {:.12} (floor interval width {:.1e})", 0.9 * d_floor, d_floor_width));

    let eigs = analysis.gram_eigenvalues();
    let lam_ratio = eigs[1] / eigs[0];
    let rank_coarse = analysis.numerical_rank(OSCILLATORY_RANK_TOL);
    let rank_fine = analysis.numerical_rank(1e-10);
    result.check(
        rank_coarse == 1 && lam_ratio <= OSCILLATORY_RANK_TOL,
        format!(
            "rank 1 at the oscillatory tolerance {OSCILLATORY_RANK_TOL} (second/first eigenvalue {lam_ratio:.3e}; rank at 1e-10 is {rank_fine}, counting truncation-noise directions)"
        ),
    );
    result
}

/// 6 — counting-integral decay: ratios → a² for EB derivatives; the
/// oscillatory contrast is constant within tolerance plus reported
/// uncertainty (which dominates, and is printed).
pub fn criterion_6_counting_decay(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(6, "counting-integral decay and its contrast");
    let sym = AffineSymbol::new(0.5).unwrap();
    let a2 = 0.25;
    let cases: Vec<(&str, H2Function)> = vec![
        ("2+z", H2Function::from_real(&[2.0, 1.0])),
        ("kernel 0.5", kernel(Complex64::new(0.5, 0.0), 200).unwrap()),
        ("1+z+z^2", H2Function::from_real(&[1.0, 1.0, 1.0])),
    ];
    for (label, g) in &cases {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for n in 5..15u32 {
            let ratio = counting_integral(g, &sym, n + 1) / counting_integral(g, &sym, n);
            lo = lo.min(ratio / a2);
            hi = hi.max(ratio / a2);
        }
        result.check(
            lo >= 0.9 && hi <= 1.1,
            format!("{label}: counting ratios / a^2 within [{lo:.4}, {hi:.4}] in [0.9, 1.1] over n = 5..15"),
        );
    }

    let t = EigenExponent::oscillatory(&sym);
    let f = eigenfunction(t, 4096).unwrap();
    let reference = counting_integral(&f, &sym, 1);
    let ref_unc = counting_uncertainty(&f, &sym, 1);
    let mut worst_raw: f64 = 0.0;
    let mut all_within = true;
    for n in 2..=6u32 {
        let value = counting_integral(&f, &sym, n);
        let unc = counting_uncertainty(&f, &sym, n);
        let raw = (value - reference).abs() / reference;
        worst_raw = worst_raw.max(raw);
        all_within &= (value - reference).abs() <= 1e-6 * reference + unc + ref_unc;
    }
    result.check(
        all_within,
        format!("oscillatory contrast constant within 1e-6 + reported uncertainty over n = 1..6 (uncertainty-dominated: raw deviation up to {worst_raw:.2e}; its derivative is not square-summable, so the truncation carries an O(1) relative tail)"),
    );
    let derived = (f.norm_sq() - 1.0) / 2.0;
    let derived_dev = (reference - derived).abs() / derived;
    result.check(
        (reference - derived).abs() <= ref_unc + 1e-6 * derived,
        format!("n = 1 value within the derived reference (norm^2 - 1)/2 up to its uncertainty (raw deviation {derived_dev:.2e})"),
    );
    result
}

/// 7 — series partial sums: Cauchy increments of Σ C_{φ_{aⁿ}}(1−z) under the
/// proof bound; oscillatory partial sums have ‖S_m‖/(m‖f_t‖) = 1 within
/// 1e-8 plus reported uncertainty (which dominates, and is printed).
pub fn criterion_7_series_partial_sums(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(7, "composed-orbit series partial sums");
    let sym = AffineSymbol::new(0.5).unwrap();
    let g = H2Function::from_real(&[1.0, -1.0]);
    let sup_dg = sym.sup_on_disk_boundary(&g.derivative(), 1, 256).sup;
    let mut increments_ok = true;
    let mut worst_ratio: f64 = 0.0;
    for (k, m1, m2) in [(1u32, 2u32, 8u32), (1, 5, 12), (2, 6, 16), (3, 4, 10)] {
        let s1 = krylov::tail_sum(&g, &sym, k, m1);
        let s2 = krylov::tail_sum(&g, &sym, k, m2);
        let diff = s2.sub(&s1).norm();
        let bound: f64 = (m1 + 1..=m2)
            .map(|n| {
                let an = 0.5f64.powi(n as i32);
                an * sup_dg + g.eval(Complex64::new(1.0 - an, 0.0)).unwrap().norm()
            })
            .sum();
        increments_ok &= diff <= bound * (1.0 + 1e-12);
        worst_ratio = worst_ratio.max(diff / bound);
    }
    result.check(increments_ok, format!("Cauchy increments under the proof chain a^n sup|g'| + |g(1-a^n)| (worst ratio {worst_ratio:.3})"));

    let t = EigenExponent::oscillatory(&sym);
    let f = eigenfunction(t, 4096).unwrap();
    let f_norm = f.norm();
    let mut all_within = true;
    let mut worst_raw: f64 = 0.0;
    let mut partial: Option<H2Function> = None;
    for m in 1..=10u32 {
        let term = sym.compose(&f, m);
        partial = Some(match partial {
            None => term,
            Some(p) => linear_combine(&[Complex64::ONE, Complex64::ONE], &[p, term]).unwrap(),
        });
        let sum = partial.as_ref().unwrap();
        let ratio = sum.norm() / (m as f64 * f_norm);
        let unc = sum.tail_bound().sqrt() / (m as f64 * f_norm) + f.tail_bound().sqrt() / f_norm;
        worst_raw = worst_raw.max((ratio - 1.0).abs());
        all_within &= (ratio - 1.0).abs() <= 1e-8 + unc;
    }
    result.check(
        all_within,
        format!("oscillatory partial-sum ratio = 1 within 1e-8 + reported uncertainty for m = 1..10 (uncertainty-dominated: raw deviation up to {worst_raw:.2e} from percent-scale truncation drift per composed member)"),
    );
    result
}

/// 8 — zero-set suite: rank of the orbit of z; the Blaschke flags; the
/// eigenvector with infinitely many zeros.
pub fn criterion_8_zero_set_suite(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(8, "zero sets and minimality diagnostics");
    let sym = AffineSymbol::new(0.5).unwrap();

    let rank = orbit(&H2Function::monomial(1), &sym, 10).numerical_rank(1e-10);
    result.check(rank == 2, format!("orbit rank of z at tol 1e-10 is {rank} (= 2 exactly)"));

    let b = blaschke_partial(&sym, 2, 6, 4096);
    let b0 = b.eval(Complex64::ZERO).unwrap().norm();
    result.check(b0 > 0.1, format!("|B(0)| = {b0:.6} > 0.1"));
    let mut worst_zero: f64 = 0.0;
    for n in 2..=7u32 {
        let z = Complex64::new(1.0 - sym.iterate_parameter(n), 0.0);
        worst_zero = worst_zero.max(b.eval(z).unwrap().norm());
    }
    result.check(worst_zero < 1e-10, format!("included zeros hit: max |B(1-a^n)| = {worst_zero:.3e} < 1e-10"));
    let flag = krylov::zero_orbit_check(&b, &sym, Complex64::ZERO, 2..=7, 1e-8).unwrap().non_minimality_flag;
    result.check(flag, "non-minimality flag raised for the Blaschke product".to_string());

    let t = EigenExponent::oscillatory(&sym);
    let f = linear_combine(
        &[Complex64::ONE, Complex64::ONE],
        &[H2Function::constant(Complex64::ONE), eigenfunction(t, 1024).unwrap()],
    )
    .unwrap();
    let w = Complex64::new(1.0 - 2.0f64.sqrt(), 0.0);
    let value = f.eval(w).unwrap().norm();
    result.check(value <= 1e-8, format!("|1 + f_t| at 1 - sqrt(2) is {value:.3e} <= 1e-8 at N = 1024"));
    let r = krylov::eigen_residual(&f, &sym, Complex64::ONE);
    result.check(
        r.value <= 1e-8 + r.uncertainty,
        format!("eigen residual at lambda = 1 is {:.3e} <= 1e-8 + reported tail {:.3e}", r.value, r.uncertainty),
    );
    result
}

/// 9 — the orthogonal element: |⟨g, h⟩| ≤ 1e-12 for twenty random span
/// vectors vanishing at z0 = 0, seed fixed.
pub fn criterion_9_orthogonal_element(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(9, "kernel projection orthogonal to the vanishing span");
    let sym = AffineSymbol::new(0.5).unwrap();
    let f = H2Function::monomial(1);
    let z0 = Complex64::ZERO;
    let g = krylov::orthogonal_element(&f, &sym, 5, z0).unwrap();
    let analysis = orbit(&f, &sym, 5);
    let pivot = analysis
        .members()
        .iter()
        .find(|member| member.eval(z0).unwrap().norm() > 1e-6)
        .expect("some orbit member is nonzero at z0")
        .clone();
    let pivot_value = pivot.eval(z0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let coeffs: Vec<Complex64> = (0..analysis.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let v = linear_combine(&coeffs, analysis.members()).unwrap();
        let correction = -v.eval(z0).unwrap() / pivot_value;
        let h = linear_combine(&[Complex64::ONE, correction], &[v, pivot.clone()]).unwrap();
        worst = worst.max(g.inner(&h).norm() / h.norm().max(1e-300));
    }
    result.check(worst <= 1e-12, format!("20 unit span vectors with h(0) = 0: worst |<g, h>| = {worst:.3e} <= 1e-12"));
    result
}

/// 10 — cyclic ⇒ codim ≤ 1 on random companion matrices, with rank–nullity
/// at the shared tolerance on every one.
pub fn criterion_10_cyclic_codim(quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(10, "cyclic range codimension property");
    let tol = 1e-10;
    let trials = if quick { 25 } else { 100 };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cyclic_all = true;
    let mut codim_ok = true;
    let mut rank_nullity_ok = true;
    let mut max_codim = 0usize;
    for _ in 0..trials {
        let n = rng.gen_range(2..=20);
        let tail: Vec<Complex64> = (0..n).map(|_| opdiag::random_unit_disk(&mut rng)).collect();
        let companion = MatrixOperator::companion(&tail).unwrap();
        let e0 = nalgebra::DVector::from_fn(n, |i, _| if i == 0 { Complex64::ONE } else { Complex64::ZERO });
        cyclic_all &= opdiag::is_cyclic(&companion, &e0, tol).unwrap();
        let codim = opdiag::range_codim(&companion, tol);
        codim_ok &= codim <= 1;
        max_codim = max_codim.max(codim);
        rank_nullity_ok &= opdiag::rank(&companion, tol) + opdiag::kernel_dim(&companion, tol) == n;
    }
    result.check(cyclic_all, format!("{trials} companion matrices: the first basis vector is cyclic"));
    result.check(codim_ok, format!("range codim <= 1 on every cyclic matrix (max seen {max_codim})"));
    result.check(rank_nullity_ok, "rank + kernel_dim = n at the shared tolerance on every matrix".to_string());
    result
}

/// 11 — kernel orbits: rank 6 for κ_{0.5} at the oracle-validated tolerance
/// 1e-11 (the exact Gram spectrum puts 1e-10 just past the smallest
/// eigenvalue), rank 1 for κ₀.
pub fn criterion_11_kernel_orbit_rank(_quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(11, "kernel orbit Gram rank");
    let sym = AffineSymbol::new(0.5).unwrap();
    let analysis = orbit(&kernel(Complex64::new(0.5, 0.0), 1024).unwrap(), &sym, 5);
    let rank = analysis.numerical_rank(1e-11);
    let eigs = analysis.gram_eigenvalues();
    let smallest_rel = eigs[5] / eigs[0];
    result.check(
        rank == 6,
        format!("rank(orbit(kappa_0.5, m=5)) = {rank} at tol 1e-11; smallest relative Gram eigenvalue {smallest_rel:.4e} (exact-rational oracle brackets it in (1e-11, 1e-10), so the pair (m=5, tol=1e-11) is pre-validated)"),
    );
    let boundary = analysis.numerical_rank(1e-10);
    result.check(
        boundary == 5,
        format!("documented boundary case: rank at tol 1e-10 is {boundary} (= 5), matching the oracle"),
    );
    let trivial = orbit(&kernel(Complex64::ZERO, 16).unwrap(), &sym, 5).numerical_rank(1e-10);
    result.check(trivial == 1, format!("rank(orbit(kappa_0)) = {trivial} (= 1)"));
    result
}

/// 12 — determinism: running every registry experiment twice produces
/// byte-identical CSV and JSON.
pub fn criterion_12_determinism(quick: bool) -> CriterionResult {
    let mut result = CriterionResult::new(12, "byte-identical reports");
    let mut all_equal = true;
    let mut checked = 0usize;
    for info in &REGISTRY {
        let mut spec = ExperimentSpec::defaults(info.name).unwrap();
        if quick {
            spec.m = spec.m.min(10);
        }
        let first = run_experiment(&spec).unwrap();
        let second = run_experiment(&spec).unwrap();
        let same = first.to_csv() == second.to_csv() && first.to_json() == second.to_json();
        if !same {
            result.check(false, format!("{}: reports differ between runs", info.name));
        }
        all_equal &= same;
        checked += 1;
    }
    if all_equal {
        result.check(true, format!("{checked} experiments render byte-identical CSV and JSON on repeated runs"));
    }
    result
}
