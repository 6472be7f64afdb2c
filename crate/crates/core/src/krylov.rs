//! Orbit analysis for the cyclic subspaces K_f = span{f, C_{φ_a}f, C²_{φ_a}f, …}
//! (closure): orbit generation, Gram matrices and numerical rank, distances
//! from candidate limits to orbit spans, normalized orbit residuals, series
//! tails, and zero-set diagnostics.
//!
//! Everything happens inside the fixed degree-N coefficient space of the
//! seed function, which caps every rank; rank statements therefore always
//! carry the tolerance they were made at. Orthonormalization is modified
//! Gram–Schmidt with one reorthogonalization pass, since orbit vectors
//! converge directionally and become nearly parallel.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::h2::{linear_combine, H2Function};
use crate::special::{eigenfunction, kernel, EigenExponent};
use crate::symbols::AffineSymbol;

/// Division guard for normalized residuals: |g(1−aⁿ)| below this reports
/// "normalization vanishes" instead of dividing.
pub const NORMALIZATION_GUARD: f64 = 1e-14;

/// Default relative tolerance for Gram-eigenvalue rank decisions.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// A norm-valued measurement together with the tail-propagated uncertainty
/// of the truncated representation it was computed from.
#[derive(Debug, Clone, Copy)]
pub struct ResidualMeasurement {
    pub value: f64,
    pub uncertainty: f64,
}

/// One orthonormal basis vector of the orbit span with the orbit index it
/// came from.
#[derive(Debug, Clone)]
struct BasisVector {
    source_index: usize,
    vector: DVector<Complex64>,
}

/// Orbit member dropped during orthonormalization (numerically inside the
/// span of its predecessors).
#[derive(Debug, Clone, Copy)]
pub struct DroppedVector {
    pub source_index: usize,
    /// ‖residual‖ / ‖original‖ at the moment of the drop.
    pub residual_ratio: f64,
}

/// The computed face of K_f at finite truncation: the orbit C⁰f..Cᵐf, its
/// Gram matrix and eigenvalues, a rank decision, and an orthonormalized span
/// basis with a drop log.
#[derive(Debug, Clone)]
pub struct OrbitAnalysis {
    symbol: AffineSymbol,
    orbit: Vec<H2Function>,
    gram: DMatrix<Complex64>,
    /// Real Gram eigenvalues, descending.
    gram_eigenvalues: Vec<f64>,
    rank: usize,
    rank_tol: f64,
    basis: Vec<BasisVector>,
    dropped: Vec<DroppedVector>,
}

/// Builds the orbit f, C_{φ_a}f, …, C_{φ_{aᵐ}}f (member n composed in one
/// shot with parameter aⁿ) and analyzes it at the default rank tolerance.
pub fn orbit(f: &H2Function, sym: &AffineSymbol, m: usize) -> OrbitAnalysis {
    orbit_with_tol(f, sym, m, DEFAULT_RANK_TOL)
}

/// Orbit analysis at an explicit rank tolerance (also used as the
/// orthonormalization drop threshold on residual-norm ratios).
pub fn orbit_with_tol(f: &H2Function, sym: &AffineSymbol, m: usize, tol: f64) -> OrbitAnalysis {
    assert!(tol > 0.0);
    let mut members = Vec::with_capacity(m + 1);
    members.push(f.clone());
    for n in 1..=m {
        members.push(sym.compose(f, n as u32));
    }
    OrbitAnalysis::from_members(*sym, members, tol)
}

impl OrbitAnalysis {
    /// Analysis of an explicit function family under the same Gram/MGS
    /// machinery (used for the series-tail independence data).
    pub fn from_functions(sym: AffineSymbol, members: Vec<H2Function>, tol: f64) -> Self {
        Self::from_members(sym, members, tol)
    }

    fn from_members(symbol: AffineSymbol, orbit: Vec<H2Function>, rank_tol: f64) -> Self {
        assert!(!orbit.is_empty());
        let dim = orbit.iter().map(|f| f.degree() + 1).max().unwrap();
        let vectors: Vec<DVector<Complex64>> = orbit.iter().map(|f| to_vector(f, dim)).collect();

        // Hermitian Gram: fill the upper triangle, mirror the conjugates.
        let count = vectors.len();
        let mut gram = DMatrix::zeros(count, count);
        for i in 0..count {
            for j in i..count {
                let entry: Complex64 =
                    vectors[i].iter().zip(vectors[j].iter()).map(|(a, b)| a * b.conj()).sum();
                gram[(i, j)] = entry;
                if i != j {
                    gram[(j, i)] = entry.conj();
                }
            }
        }

        let mut gram_eigenvalues: Vec<f64> =
            gram.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
        gram_eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let rank = rank_from_eigenvalues(&gram_eigenvalues, rank_tol);

        // modified Gram–Schmidt, one reorthogonalization pass, drop log
        let mut basis: Vec<BasisVector> = Vec::new();
        let mut dropped = Vec::new();
        for (idx, v) in vectors.iter().enumerate() {
            let original_norm = v.norm();
            if original_norm == 0.0 {
                dropped.push(DroppedVector { source_index: idx, residual_ratio: 0.0 });
                continue;
            }
            let mut w = v.clone();
            for _ in 0..2 {
                for b in &basis {
                    let coeff: Complex64 =
                        w.iter().zip(b.vector.iter()).map(|(a, q)| a * q.conj()).sum();
                    w.zip_apply(&b.vector, |wi, qi| *wi -= coeff * qi);
                }
            }
            let residual = w.norm();
            if residual < rank_tol * original_norm {
                dropped.push(DroppedVector { source_index: idx, residual_ratio: residual / original_norm });
            } else {
                basis.push(BasisVector { source_index: idx, vector: w / Complex64::from(residual) });
            }
        }

        Self { symbol, orbit, gram, gram_eigenvalues, rank, rank_tol, basis, dropped }
    }

    pub fn symbol(&self) -> &AffineSymbol {
        &self.symbol
    }

    /// m + 1, the number of orbit members.
    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn member(&self, n: usize) -> &H2Function {
        &self.orbit[n]
    }

    pub fn members(&self) -> &[H2Function] {
        &self.orbit
    }

    pub fn gram(&self) -> &DMatrix<Complex64> {
        &self.gram
    }

    /// Real Gram eigenvalues in descending order.
    pub fn gram_eigenvalues(&self) -> &[f64] {
        &self.gram_eigenvalues
    }

    /// The rank decided at construction, with the tolerance it was made at.
    pub fn rank(&self) -> (usize, f64) {
        (self.rank, self.rank_tol)
    }

    /// Count of Gram eigenvalues above tol × (largest eigenvalue).
    pub fn numerical_rank(&self, tol: f64) -> usize {
        rank_from_eigenvalues(&self.gram_eigenvalues, tol)
    }

    pub fn dropped(&self) -> &[DroppedVector] {
        &self.dropped
    }

    /// Orthonormal basis size (below len() when members were dropped).
    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    /// ‖target − P target‖ where P projects onto span(orbit[0..=m_prefix]),
    /// via the orthonormalized prefix basis. Nonincreasing in m_prefix.
    pub fn distance_to_span(&self, target: &H2Function, m_prefix: usize) -> f64 {
        assert!(m_prefix < self.orbit.len());
        let dim = self.gram_dim();
        let mut w = to_vector(target, dim);
        for b in self.basis.iter().filter(|b| b.source_index <= m_prefix) {
            let coeff: Complex64 = w.iter().zip(b.vector.iter()).map(|(a, q)| a * q.conj()).sum();
            w.zip_apply(&b.vector, |wi, qi| *wi -= coeff * qi);
        }
        w.norm()
    }

    /// Worst deviation of the orthonormalized basis from exact
    /// orthonormality: max over pairs of |⟨q_i, q_j⟩ − δ_ij|.
    pub fn basis_orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, bi) in self.basis.iter().enumerate() {
            for (j, bj) in self.basis.iter().enumerate() {
                let pairing: Complex64 =
                    bi.vector.iter().zip(bj.vector.iter()).map(|(a, b)| a * b.conj()).sum();
                let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((pairing - target).norm());
            }
        }
        worst
    }

    /// Spectral-norm bound on the Gram perturbation induced by the members'
    /// truncation tails: max row sum of ‖f_i‖·√tail_j + ‖f_j‖·√tail_i +
    /// √(tail_i·tail_j). Rank decisions finer than this are not supported by
    /// the truncated data.
    pub fn gram_tail_uncertainty(&self) -> f64 {
        let norms: Vec<f64> = self.orbit.iter().map(H2Function::norm).collect();
        let tails: Vec<f64> = self.orbit.iter().map(|f| f.tail_bound().sqrt()).collect();
        let mut worst = 0.0f64;
        for i in 0..self.orbit.len() {
            let row: f64 = (0..self.orbit.len())
                .map(|j| norms[i] * tails[j] + norms[j] * tails[i] + tails[i] * tails[j])
                .sum();
            worst = worst.max(row);
        }
        worst
    }

    fn gram_dim(&self) -> usize {
        self.orbit.iter().map(|f| f.degree() + 1).max().unwrap()
    }
}

fn rank_from_eigenvalues(descending: &[f64], tol: f64) -> usize {
    let largest = descending.first().copied().unwrap_or(0.0).max(0.0);
    if largest == 0.0 {
        return 0;
    }
    descending.iter().filter(|&&ev| ev > tol * largest).count()
}

fn to_vector(f: &H2Function, dim: usize) -> DVector<Complex64> {
    DVector::from_fn(dim, |k, _| f.coeff(k))
}

/// ‖ C_{φ_a}ⁿ(f_s·g) / (a^{ns}·g(1−aⁿ)) − f_s ‖ with its tail interval.
/// Requires Re(s) ≥ 0 and a usable normalizer g(1−aⁿ).
pub fn normalized_orbit_residual(
    g: &H2Function,
    s: EigenExponent,
    sym: &AffineSymbol,
    n: u32,
    degree: usize,
) -> Result<ResidualMeasurement> {
    if s.value().re < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "normalized orbit residual needs Re(s) >= 0, got {}",
            s.value().re
        )));
    }
    let alpha = sym.iterate_parameter(n);
    let normalizer = g.eval(Complex64::new(1.0 - alpha, 0.0))?;
    if normalizer.norm() < NORMALIZATION_GUARD {
        return Err(Error::NormalizationVanishes(normalizer.norm()));
    }
    let f_s = eigenfunction(s, degree)?;
    let f = f_s.multiply(g);
    let composed = sym.compose(&f, n);
    let denominator = s.eigenvalue(sym).powu(n) * normalizer;
    let diff = composed.scale(denominator.inv()).sub(&f_s);
    // rounding floor: composing concentrates mass near the fixed point, so
    // coefficients of size |denominator| emerge from O(Σ|c_k|) cancellation
    let l1: f64 = f.coeffs().iter().map(|c| c.norm()).sum();
    let rounding = f64::EPSILON * l1 * ((f.degree() + 2) as f64).sqrt() / denominator.norm();
    Ok(ResidualMeasurement { value: diff.norm(), uncertainty: diff.tail_bound().sqrt() + rounding })
}

/// Σ_{n=k}^{m} C_{φ_{aⁿ}} g — a partial sum of the series whose membership in
/// H² is equivalent to Σ|g(1−aⁿ)| < ∞ when g′ is eventually bounded.
pub fn tail_sum(g: &H2Function, sym: &AffineSymbol, k: u32, m: u32) -> H2Function {
    assert!(k >= 1 && m >= k);
    let terms: Vec<H2Function> = (k..=m).map(|n| sym.compose(g, n)).collect();
    let ones = vec![Complex64::ONE; terms.len()];
    linear_combine(&ones, &terms).expect("matched lengths")
}

/// The span element orthogonal to every h in the orbit span with h(z0) = 0:
/// the normalized projection of κ_{z0} onto span(orbit[0..=m]). Errors when
/// the evaluation functional vanishes on the whole span.
pub fn orthogonal_element(
    f: &H2Function,
    sym: &AffineSymbol,
    m: usize,
    z0: Complex64,
) -> Result<H2Function> {
    if z0.norm() >= 1.0 {
        return Err(Error::PointOutsideDisk(z0.norm()));
    }
    let analysis = orbit(f, sym, m);
    let mut some_nonzero = false;
    for member in analysis.members() {
        let value = member.eval(z0)?;
        if value.norm() > 1e-12 * member.norm().max(1e-300) {
            some_nonzero = true;
            break;
        }
    }
    if !some_nonzero {
        return Err(Error::EvaluationFunctionalTrivial);
    }
    let dim = analysis.gram_dim();
    let kappa = to_vector(&kernel(z0, dim - 1)?, dim);
    let mut projection = DVector::from_element(dim, Complex64::ZERO);
    for b in &analysis.basis {
        let coeff: Complex64 = kappa.iter().zip(b.vector.iter()).map(|(a, q)| a * q.conj()).sum();
        projection.zip_apply(&b.vector, |p, q| *p += coeff * q);
    }
    let norm = projection.norm();
    if norm < 1e-14 {
        return Err(Error::EvaluationFunctionalTrivial);
    }
    let coeffs: Vec<Complex64> = projection.iter().map(|c| c / norm).collect();
    Ok(H2Function::from_coeffs(coeffs))
}

/// Evaluations of f at w and along φ_{aⁿ}(w); the non-minimality flag is
/// raised when f(w) is clearly nonzero while the whole forward orbit of w
/// evaluates to zero within tol.
#[derive(Debug, Clone)]
pub struct ZeroOrbitReport {
    pub value_at_w: Complex64,
    pub orbit_values: Vec<(u32, Complex64)>,
    pub non_minimality_flag: bool,
}

pub fn zero_orbit_check(
    f: &H2Function,
    sym: &AffineSymbol,
    w: Complex64,
    n_range: std::ops::RangeInclusive<u32>,
    tol: f64,
) -> Result<ZeroOrbitReport> {
    if w.norm() >= 1.0 {
        return Err(Error::PointOutsideDisk(w.norm()));
    }
    let value_at_w = f.eval(w)?;
    let mut orbit_values = Vec::new();
    for n in n_range {
        let point = sym.phi_point(n, w);
        orbit_values.push((n, f.eval(point)?));
    }
    let all_zero = orbit_values.iter().all(|(_, v)| v.norm() < tol);
    let non_minimality_flag = value_at_w.norm() > tol && all_zero;
    Ok(ZeroOrbitReport { value_at_w, orbit_values, non_minimality_flag })
}

/// ‖C_{φ_a} f − λf‖ with its tail interval; near zero exactly when (f, λ) is
/// numerically an eigenpair.
pub fn eigen_residual(f: &H2Function, sym: &AffineSymbol, lambda: Complex64) -> ResidualMeasurement {
    let diff = sym.compose(f, 1).sub(&f.scale(lambda));
    ResidualMeasurement { value: diff.norm(), uncertainty: diff.tail_bound().sqrt() }
}
