//! Exact-rational oracle for the kernel-orbit Gram conditioning.
//!
//! The orbit of κ_{1/2} under C_{φ_{1/2}} has closed form: member n equals
//! s_n·κ_{β_n} with s_n = 2^{n+1}/(2ⁿ+1) and β_n = 1/(2ⁿ+1), so the Gram
//! matrix G_ij = s_i·s_j/(1 − β_i·β_j) is exactly rational. This test builds
//! G over BigRational, takes its characteristic polynomial by
//! Faddeev–LeVerrier, and isolates eigenvalues with Sturm sequences — exact
//! arithmetic throughout, stronger than any fixed digit count — to certify
//! the rank tolerances the suite uses:
//!
//!   * all six eigenvalues are positive (full rank in exact arithmetic),
//!   * λ_min > 1e-11·λ_max  (rank 6 at tolerance 1e-11 is safe), and
//!   * λ_min ≤ 1e-10·λ_max  (tolerance 1e-10 undercounts to 5),
//!
//! then bisects λ_min to below 1e-50 relative width and checks the floating
//! pipeline against it.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use num_complex::Complex64;

use h2affine::krylov::orbit;
use h2affine::special::kernel;
use h2affine::AffineSymbol;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn pow2(n: u32) -> BigInt {
    BigInt::from(1) << n
}

/// Exact Gram matrix of the orbit members s_n·κ_{β_n}, n = 0..count.
fn exact_gram(count: usize) -> Vec<Vec<Q>> {
    let beta: Vec<Q> = (0..count as u32)
        .map(|n| Q::new(BigInt::one(), pow2(n) + 1))
        .collect();
    let scale: Vec<Q> = (0..count as u32)
        .map(|n| Q::new(pow2(n + 1), pow2(n) + 1))
        .collect();
    (0..count)
        .map(|i| {
            (0..count)
                .map(|j| {
                    let denom = Q::one() - &beta[i] * &beta[j];
                    &scale[i] * &scale[j] / denom
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn trace(a: &[Vec<Q>]) -> Q {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Characteristic polynomial coefficients (ascending powers, monic) by the
/// Faddeev–LeVerrier recurrence.
fn characteristic_polynomial(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = a.to_vec();
    let mut c = -trace(&m);
    coeffs[n - 1] = c.clone();
    for k in 2..=n {
        // M ← A·(M + c·I)
        let mut shifted = m.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] += &c;
        }
        m = mat_mul(a, &shifted);
        c = -trace(&m) / Q::from(BigInt::from(k as i64));
        coeffs[n - k] = c.clone();
    }
    coeffs
}

fn poly_eval(p: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative(p: &[Q]) -> Vec<Q> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Q::from(BigInt::from(k as i64)))
        .collect()
}

fn poly_trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Remainder of the polynomial division a / b.
fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let factor = r[dr].clone() / lead.clone();
        let shift = dr - db;
        for i in 0..=db {
            let adj = &b[i] * &factor;
            r[i + shift] -= adj;
        }
        r = poly_trim(r);
        if r.len() - 1 < db {
            break;
        }
        if r.iter().all(Zero::is_zero) {
            break;
        }
    }
    r
}

/// Sturm chain of p.
fn sturm_chain(p: &[Q]) -> Vec<Vec<Q>> {
    let mut chain = vec![poly_trim(p.to_vec()), poly_trim(poly_derivative(p))];
    loop {
        let last = &chain[chain.len() - 1];
        if last.len() == 1 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let rem = poly_rem(prev, last);
        if rem.iter().all(Zero::is_zero) {
            break;
        }
        chain.push(rem.iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[Vec<Q>], x: &Q) -> usize {
    let mut changes = 0;
    let mut last: i8 = 0;
    for p in chain {
        let v = poly_eval(p, x);
        let s: i8 = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of roots of p in the half-open interval (lo, hi].
fn roots_in(chain: &[Vec<Q>], lo: &Q, hi: &Q) -> usize {
    sign_changes(chain, lo) - sign_changes(chain, hi)
}

fn approx(x: &Q) -> f64 {
    // good enough for reporting: scale into integer range with guard digits
    let num = x.numer();
    let den = x.denom();
    let scale_int = BigInt::from(10u32).pow(30);
    let scaled = (num * scale_int / den).to_string();
    scaled.parse::<f64>().unwrap_or(f64::NAN) / 1e30
}

#[test]
fn kernel_orbit_gram_rank_tolerances_are_certified_exactly() {
    let count = 6;
    let g = exact_gram(count);
    let p = characteristic_polynomial(&g);
    let chain = sturm_chain(&p);

    // upper bound for the largest eigenvalue: the trace (all eigenvalues > 0)
    let upper = trace(&g);

    // lower bound for the largest eigenvalue: an exact Rayleigh quotient at a
    // rationalized approximation of the float principal eigenvector
    let sym = AffineSymbol::new(0.5).unwrap();
    let float_analysis = orbit(&kernel(Complex64::new(0.5, 0.0), 1024).unwrap(), &sym, count - 1);
    let float_eigs = float_analysis.gram_eigenvalues();
    let principal = principal_eigenvector(&float_analysis);
    let v: Vec<Q> = principal.iter().map(|&x| q((x * 1e6).round() as i64, 1_000_000)).collect();
    let gv: Vec<Q> = (0..count)
        .map(|i| (0..count).map(|j| &g[i][j] * &v[j]).sum())
        .collect();
    let rayleigh_num: Q = (0..count).map(|i| &v[i] * &gv[i]).sum();
    let rayleigh_den: Q = v.iter().map(|x| x * x).sum();
    let lower = rayleigh_num / rayleigh_den;
    assert!(lower <= upper);

    // positivity: six roots in (0, trace]
    let zero = Q::zero();
    assert_eq!(roots_in(&chain, &zero, &upper), 6, "Gram must have six positive eigenvalues");

    // rank 6 at tol 1e-11: no eigenvalue in (0, 1e-11·upper]
    let tol11 = q(1, 1) / Q::from(BigInt::from(10u64.pow(11)));
    let tau_11 = &tol11 * &upper;
    assert_eq!(
        roots_in(&chain, &zero, &tau_11),
        0,
        "an eigenvalue fell below 1e-11 x lambda_max; the rank-6 tolerance is not safe"
    );

    // rank 5 at tol 1e-10: at least one eigenvalue in (0, 1e-10·lower]
    let tol10 = q(1, 1) / Q::from(BigInt::from(10u64.pow(10)));
    let tau_10 = &tol10 * &lower;
    assert!(
        roots_in(&chain, &zero, &tau_10) >= 1,
        "the smallest eigenvalue is not below 1e-10 x lambda_max; the boundary case disappeared"
    );

    // bisect the smallest eigenvalue far past fifty digits
    let mut lo = zero.clone();
    let mut hi = tau_10.clone();
    for _ in 0..220 {
        let mid = (&lo + &hi) / Q::from(BigInt::from(2));
        if roots_in(&chain, &zero, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let lambda_min = approx(&hi);
    let width = approx(&(&hi - &lo));
    assert!(width / lambda_min < 1e-50, "bisection did not reach 50-digit relative width");

    // the floating pipeline agrees with the exact spectrum
    let float_min = float_eigs[count - 1];
    assert!(
        (float_min - lambda_min).abs() / lambda_min < 1e-6,
        "float lambda_min {float_min:.6e} vs exact {lambda_min:.6e}"
    );
    let ratio = lambda_min / approx(&upper);
    assert!(ratio > 1e-11 && ratio < 1e-10, "certified window: lambda_min/trace = {ratio:.3e}");

    // and the float Gram entries match the closed form to near machine level
    let fg = float_analysis.gram();
    for i in 0..count {
        for j in 0..count {
            let exact = approx(&g[i][j]);
            assert!(
                (fg[(i, j)].re - exact).abs() <= 1e-12 * exact.abs().max(1.0),
                "Gram entry ({i},{j}): {} vs exact {exact}",
                fg[(i, j)].re
            );
            assert!(fg[(i, j)].im.abs() < 1e-13);
        }
    }
}

/// Power iteration on the float Gram for the principal direction (only used
/// to seed the exact Rayleigh quotient).
fn principal_eigenvector(analysis: &h2affine::krylov::OrbitAnalysis) -> Vec<f64> {
    let g = analysis.gram();
    let n = g.nrows();
    let mut v = vec![1.0f64; n];
    for _ in 0..200 {
        let mut w = vec![0.0f64; n];
        for i in 0..n {
            for j in 0..n {
                w[i] += g[(i, j)].re * v[j];
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut w {
            *x /= norm;
        }
        v = w;
    }
    v
}
