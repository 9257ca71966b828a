//! The coefficient-field abstraction.
//!
//! Every coefficient domain in the crate — the rationals, prime fields, and
//! parameterized extension towers — implements [`Field`]. Ring operations
//! (`add`, `sub`, `mul`, `neg`) are total; only `inv`/`div` can fail.
//!
//! Over extension towers the failure mode is richer than division by zero:
//! when a quotient layer has a merely square-free (reducible) modulus,
//! inverting a zero divisor surfaces a [`SplitSignal`] carrying a nontrivial
//! coprime factorization of the modulus. The caller forks the computation
//! into the two branch towers and reruns; each branch either succeeds or
//! splits further, and the branching terminates because modulus degrees
//! strictly decrease.

use std::fmt;

use crate::poly::Poly;
use crate::rat::Rat;
use crate::symbol::Symbol;
use crate::tower::TowerElem;

/// A nontrivial coprime splitting of a quotient-layer modulus, discovered
/// while inverting a zero divisor.
#[derive(Clone, Debug)]
pub struct SplitSignal {
    /// Index of the tower layer whose modulus splits.
    pub layer: usize,
    /// Parameter adjoined at that layer.
    pub param: Symbol,
    /// Coprime factors, ascending coefficients over the prefix tower;
    /// both are monic, nonconstant, and their product is the old modulus.
    pub f1: Vec<TowerElem>,
    pub f2: Vec<TowerElem>,
}

#[derive(Clone, Debug)]
pub enum ArithError {
    DivisionByZero,
    ZeroDivisorSplit(SplitSignal),
    VariableMismatch { left: Symbol, right: Symbol },
    ZeroPolynomial,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DivisionByZero => write!(f, "division by zero"),
            ArithError::ZeroDivisorSplit(s) => {
                write!(f, "zero divisor in layer {} ({})", s.layer, s.param)
            }
            ArithError::VariableMismatch { left, right } => {
                write!(f, "variable mismatch: {left} vs {right}")
            }
            ArithError::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
        }
    }
}

impl std::error::Error for ArithError {}

pub trait Field: Clone + fmt::Debug {
    type El: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Result<Self::El, ArithError>;
    /// Embed a rational constant.
    fn from_rat(&self, q: &Rat) -> Self::El;
    /// Canonical display form, used by debug output and serializers.
    fn el_string(&self, a: &Self::El) -> String;

    fn is_one(&self, a: &Self::El) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::El, b: &Self::El) -> Result<Self::El, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_i64(&self, n: i64) -> Self::El {
        self.from_rat(&Rat::from_i64(n))
    }

    /// Degree of the element in the tower parameters; 0 for base fields.
    /// Used by the matrix degree-bound bookkeeping.
    fn param_degree(&self, _a: &Self::El) -> usize {
        0
    }

    /// Monic gcd of univariate polynomials over this field. The default is a
    /// monic Euclidean remainder sequence; the rationals override it with a
    /// subresultant sequence over the integers to avoid coefficient blowup.
    fn poly_gcd(&self, f: &Poly<Self>, g: &Poly<Self>) -> Result<Poly<Self>, ArithError>
    where
        Self: Sized,
    {
        crate::poly::monic_euclid_gcd(f, g, self)
    }
}
