//! Exact integral (co)homology of balanced simplicial complexes.
//!
//! The crate builds the complexes `X(A) = Y^(k-1) ∪ A` inside a join
//! `G_0 * ... * G_k` of finite abelian groups, computes their integral
//! homology and cohomology with Smith normal forms over arbitrary-precision
//! integers, and checks the Fourier-side description of the integral
//! `k`-coboundaries. The [`cyclo_complex`] module specializes this to the
//! complexes `K_A` over `Z_{p_0} * ... * Z_{p_k}` whose homology is governed by
//! the coefficients of the cyclotomic polynomial `Φ_n`.
//!
//! Layout:
//!
//! * [`cyclo`] cyclotomic polynomials and exact arithmetic in `Z[ζ_N]`
//! * [`linalg`] integer matrices, Smith/Hermite forms, kernels and lattices
//! * [`fourier`] finite abelian groups, characters and the exact transform
//! * [`balanced`] balanced complexes, boundary matrices, homology, coboundary lattices
//! * [`cyclo_complex`] the `K_A` family and the cyclotomic homology formulas
//! * [`sweep`] seeded subset selection shared by the CLI and the test suites

pub mod balanced;
pub mod cyclo;
pub mod cyclo_complex;
pub mod fourier;
pub mod linalg;
pub mod sweep;

mod error;

pub use error::{Error, Result};

pub use balanced::{BalancedComplex, ColoredSimplex, Colors, HomologyReport};
pub use cyclo::{cyclotomic_poly, root_power, CycInt, CycloPoly};
pub use cyclo_complex::{CycloComplexSpec, TheoremReport};
pub use fourier::{Character, FiniteAbelianGroup, GroupElement, GroupFunction};
pub use linalg::{AbelianGroupStructure, HermiteForm, IntMatrix, SmithForm};

/// Version of the JSON report layout emitted by this crate.
pub const SCHEMA_VERSION: u32 = 1;
