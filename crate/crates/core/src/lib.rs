//! Coefficient-level workbench for the composition operator C_{φ_a}f = f∘φ_a
//! on the Hardy space H²(𝔻), with the affine symbol φ_a(z) = az + 1 − a,
//! 0 < a < 1.
//!
//! The crate carries truncated Taylor series with explicit tail bounds
//! ([`h2`]), the exact coefficient action of the iterates φ_{aⁿ} and the disks
//! D_n = φ_{aⁿ}(𝔻) ([`symbols`]), the named special functions — eigenfunctions
//! (1−z)^s, reproducing kernels, Blaschke products on the backward orbit
//! ([`special`]) — the counting-function norm identities with quadrature
//! oracles ([`integrals`]), cyclic-subspace analysis through orbit Gram
//! matrices ([`krylov`]), finite-dimensional cyclicity and codimension
//! diagnostics ([`opdiag`]), and a deterministic experiment registry with CSV
//! and JSON reporting plus the acceptance suite ([`experiments`]).

pub mod error;
pub mod experiments;
pub mod h2;
pub mod integrals;
pub mod krylov;
pub mod opdiag;
pub mod special;
pub mod symbols;

pub use error::{Error, Result};
pub use h2::{linear_combine, H2Function};
pub use special::{Case, CaseLabel, EigenExponent};
pub use symbols::{AffineSymbol, Disk};
