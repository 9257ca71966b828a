//! Exact symbolic solving of parametric linear systems.
//!
//! A parametric linear system (PLS) is a linear system `A u = b` whose
//! coefficients are polynomials in symbolic parameters. The solver produces a
//! covering set of *solution regimes*: each regime carries a particular
//! solution, a nullspace basis, and a semialgebraic validity condition
//! (polynomials that must be nonzero, polynomials that must be zero).
//!
//! The engine behind it is the comprehensive triangular Smith normal form
//! (CTSNF): Hermite/triangular-Smith normal forms of the matrix over towers
//! of parameter fields, with branch regimes enumerated over the denominator
//! varieties and, for two-parameter problems, over curve intersection points.
//!
//! Layering, bottom up:
//!
//! * [`rat`] — arbitrary-precision rationals and a prime field (cross-checks).
//! * [`field`] — the coefficient-field abstraction shared by all layers.
//! * [`poly`] — dense univariate polynomials over any coefficient field:
//!   gcd, extended gcd, square-free part, resultant, discriminant.
//! * [`mpoly`] — multivariate parameter polynomials (recursive dense).
//! * [`factor`] — irreducible factorization over the rationals.
//! * [`tower`] — parameterized field extensions with dynamic splitting.
//! * [`matrix`] — matrices over `K[x]`, fraction-free elimination, minors.
//! * [`hermite`] — Hermite form, random preconditioning, triangular Smith.
//! * [`ctsnf`] — comprehensive triangular Smith regime enumeration.
//! * [`pls`] — the PLS pipeline (denominator clearing, regime expansion).
//! * [`eigen`] — Frobenius invariants and eigenvalue multiplicity analysis.
//! * [`oracle`] — independent verification: minor-gcd Smith diagonals,
//!   minor-defined regimes, randomized solution checking.
//! * [`text`] / [`doc`] — the polynomial grammar and JSON document model.

pub mod ctsnf;
pub mod doc;
pub mod eigen;
pub mod factor;
pub mod field;
pub mod fixtures;
pub mod hermite;
pub mod matrix;
pub mod mpoly;
pub mod oracle;
pub mod pls;
pub mod poly;
pub mod rat;
pub mod symbol;
pub mod text;
pub mod tower;

mod error;

pub use error::Error;
pub use field::{ArithError, Field};
pub use rat::{PrimeField, Rat, RationalField};
pub use symbol::Symbol;
