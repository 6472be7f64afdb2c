//! Finite-dimensional operator diagnostics: kernel dimension and range
//! codimension from singular values, cyclicity through Krylov rank, the
//! cyclic ⇒ codim(range) ≤ 1 property, structured kernel/codimension reports,
//! and the truncated matrix of the composition operator in the monomial basis.
//!
//! Closed range is automatic at finite dimension and reported as such. None
//! of these measurements can express an infinite-dimensional hypothesis; the
//! reports say so instead of emitting verdicts.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symbols::AffineSymbol;

/// Default trial count for the random cyclic-vector search.
pub const DEFAULT_CYCLIC_TRIALS: usize = 32;

/// Fixed default seed so reports are reproducible.
pub const DEFAULT_CYCLIC_SEED: u64 = 7;

/// Dense complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOperator {
    entries: DMatrix<Complex64>,
}

impl MatrixOperator {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() == 0
            || entries.nrows() != entries.ncols()
            || entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite())
        {
            return Err(Error::InvalidMatrix);
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self { entries: DMatrix::identity(n, n) }
    }

    /// Nilpotent Jordan block: ones on the superdiagonal.
    pub fn jordan_nilpotent(n: usize) -> Self {
        let mut entries = DMatrix::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            entries[(i, i + 1)] = Complex64::ONE;
        }
        Self { entries }
    }

    /// Companion matrix of the monic polynomial zⁿ + c_{n−1}z^{n−1} + … + c₀:
    /// ones on the subdiagonal, −c_k down the last column.
    pub fn companion(monic_tail: &[Complex64]) -> Result<Self> {
        let n = monic_tail.len();
        if n == 0 {
            return Err(Error::InvalidMatrix);
        }
        let mut entries = DMatrix::zeros(n, n);
        for i in 1..n {
            entries[(i, i - 1)] = Complex64::ONE;
        }
        for (k, &c) in monic_tail.iter().enumerate() {
            entries[(k, n - 1)] = -c;
        }
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.entries * v
    }

    fn singular_values_descending(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self
            .entries
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }
}

/// Count of singular values ≤ tol × (largest singular value).
pub fn kernel_dim(t: &MatrixOperator, tol: f64) -> usize {
    assert!(tol > 0.0);
    let sv = t.singular_values_descending();
    let largest = sv[0];
    if largest == 0.0 {
        return t.dim();
    }
    sv.iter().filter(|&&s| s <= tol * largest).count()
}

/// n − rank at the same singular-value tolerance; for square matrices this
/// coincides with the kernel dimension, which is the rank–nullity check.
pub fn range_codim(t: &MatrixOperator, tol: f64) -> usize {
    t.dim() - rank(t, tol)
}

/// Count of singular values above tol × (largest singular value).
pub fn rank(t: &MatrixOperator, tol: f64) -> usize {
    t.dim() - kernel_dim(t, tol)
}

/// True iff the Krylov matrix [f, Tf, …, T^{n−1}f] has full rank at tol.
/// Columns are normalized before the rank decision so the answer is invariant
/// under the growth or decay of the iterates.
pub fn is_cyclic(t: &MatrixOperator, f: &DVector<Complex64>, tol: f64) -> Result<bool> {
    if f.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let n = t.dim();
    let mut krylov = DMatrix::zeros(n, n);
    let mut current = f.clone();
    for j in 0..n {
        let norm = current.norm();
        if norm == 0.0 {
            return Ok(false);
        }
        let unit = &current / Complex64::from(norm);
        krylov.set_column(j, &unit);
        current = t.apply(&current);
    }
    let mut sv: Vec<f64> = krylov.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let largest = sv[0];
    Ok(largest > 0.0 && sv.iter().all(|&s| s > tol * largest))
}

/// Outcome of the random cyclic-vector search plus the codimension
/// measurement it is paired with.
#[derive(Debug, Clone)]
pub struct CyclicCodimReport {
    pub trials: usize,
    pub cyclic_found: bool,
    pub witness_trial: Option<usize>,
    pub range_codim: usize,
    /// cyclic_found ⇒ range_codim ≤ 1; vacuously true when no cyclic vector
    /// was found (reported, not asserted).
    pub property_holds: bool,
}

/// Searches seeded random unit vectors for a cyclic one and reports the pair
/// (cyclic?, codim). Deterministic for a fixed seed.
pub fn cyclic_codim_check(t: &MatrixOperator, trials: usize, tol: f64) -> CyclicCodimReport {
    cyclic_codim_check_seeded(t, trials, tol, DEFAULT_CYCLIC_SEED)
}

pub fn cyclic_codim_check_seeded(
    t: &MatrixOperator,
    trials: usize,
    tol: f64,
    seed: u64,
) -> CyclicCodimReport {
    assert!(trials >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codim = range_codim(t, tol);
    let mut witness = None;
    for trial in 0..trials {
        let v = random_unit_vector(&mut rng, t.dim());
        if is_cyclic(t, &v, tol).expect("unit vector is nonzero") {
            witness = Some(trial);
            break;
        }
    }
    let cyclic_found = witness.is_some();
    CyclicCodimReport {
        trials,
        cyclic_found,
        witness_trial: witness,
        range_codim: codim,
        property_holds: !cyclic_found || codim <= 1,
    }
}

/// Raw finite-dimensional measurements for the universality premises: kernel
/// dimension, range codimension, and closed range (automatic here). Carries a
/// disclaimer instead of any universality verdict, because the premises are
/// genuinely infinite-dimensional.
#[derive(Debug, Clone)]
pub struct CaradusPozziReport {
    pub dim: usize,
    pub kernel_dim: usize,
    pub range_codim: usize,
    pub closed_range: bool,
    pub disclaimer: &'static str,
}

pub const FINITE_DIMENSION_DISCLAIMER: &str = "finite-dimensional measurement only: an infinite-dimensional kernel cannot be expressed at finite size, so no universality verdict is implied";

pub fn caradus_pozzi_check(t: &MatrixOperator, tol: f64) -> CaradusPozziReport {
    CaradusPozziReport {
        dim: t.dim(),
        kernel_dim: kernel_dim(t, tol),
        range_codim: range_codim(t, tol),
        closed_range: true,
        disclaimer: FINITE_DIMENSION_DISCLAIMER,
    }
}

/// The (N+1)×(N+1) matrix of C_{φ_a} in the monomial basis: column k holds
/// the expansion of (az + 1 − a)^k, built by iterated multiplication. Upper
/// triangular with diagonal a^k.
pub fn truncated_composition_matrix(sym: &AffineSymbol, degree: usize) -> MatrixOperator {
    let n = degree + 1;
    let a = sym.a();
    let b = 1.0 - a;
    let mut entries = DMatrix::zeros(n, n);
    let mut column = vec![Complex64::ZERO; n];
    column[0] = Complex64::ONE;
    entries[(0, 0)] = Complex64::ONE;
    for k in 1..n {
        // column_k = column_{k-1} · (az + b)
        let mut next = vec![Complex64::ZERO; n];
        for m in 0..k {
            let v = column[m];
            next[m] += v * b;
            next[m + 1] += v * a;
        }
        for (m, &v) in next.iter().enumerate() {
            entries[(m, k)] = v;
        }
        column = next;
    }
    MatrixOperator { entries }
}

fn random_unit_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<Complex64> {
    loop {
        let v = DVector::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let norm = v.norm();
        if norm > 1e-3 {
            return v / Complex64::from(norm);
        }
    }
}

/// Uniform sample from the open unit disk (rejection from the square).
pub fn random_unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() < 1.0 {
            return z;
        }
    }
}
