//! Dense univariate polynomials over an arbitrary coefficient field.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and otherwise ends with a nonzero coefficient. Every
//! operation takes the coefficient field as an explicit context argument, so
//! the same code runs over the rationals, prime fields, and extension towers.

use std::fmt;

use crate::field::{ArithError, Field};
use crate::rat::{Rat, RationalField};
use crate::symbol::Symbol;

#[derive(Clone)]
pub struct Poly<F: Field> {
    var: Symbol,
    coeffs: Vec<F::El>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.var == other.var || self.coeffs.len() <= 1)
    }
}

impl<F: Field> Poly<F> {
    pub fn zero(var: Symbol) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Symbol, c: F::El, f: &F) -> Self {
        let mut p = Poly { var, coeffs: vec![c] };
        p.trim(f);
        p
    }

    pub fn one(var: Symbol, f: &F) -> Self {
        Poly::constant(var, f.one(), f)
    }

    /// The monomial `x`.
    pub fn var(var: Symbol, f: &F) -> Self {
        Poly { var, coeffs: vec![f.zero(), f.one()] }
    }

    /// `c * x^k`.
    pub fn monomial(var: Symbol, c: F::El, k: usize, f: &F) -> Self {
        if f.is_zero(&c) {
            return Poly::zero(var);
        }
        let mut coeffs = vec![f.zero(); k + 1];
        coeffs[k] = c;
        Poly { var, coeffs }
    }

    pub fn from_coeffs(var: Symbol, coeffs: Vec<F::El>, f: &F) -> Self {
        let mut p = Poly { var, coeffs };
        p.trim(f);
        p
    }

    pub fn from_i64s(var: Symbol, coeffs: &[i64], f: &F) -> Self {
        Poly::from_coeffs(var, coeffs.iter().map(|&n| f.from_i64(n)).collect(), f)
    }

    fn trim(&mut self, f: &F) {
        while let Some(last) = self.coeffs.last() {
            if f.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn variable(&self) -> &Symbol {
        &self.var
    }

    pub fn coeffs(&self) -> &[F::El] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::El> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with zero mapped to 0, for bound bookkeeping.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self, f: &F) -> Option<F::El> {
        match self.coeffs.len() {
            0 => Some(f.zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn lc(&self) -> Option<&F::El> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize, f: &F) -> F::El {
        self.coeffs.get(k).cloned().unwrap_or_else(|| f.zero())
    }

    fn assert_same_var(&self, other: &Self) {
        assert!(
            self.var == other.var || self.is_constant() || other.is_constant(),
            "variable mismatch: {} vs {}",
            self.var,
            other.var
        );
    }

    /// Checked variant of the variable-compatibility rule, for fallible ops.
    fn check_same_var(&self, other: &Self) -> Result<(), ArithError> {
        if self.var == other.var || self.is_constant() || other.is_constant() {
            Ok(())
        } else {
            Err(ArithError::VariableMismatch {
                left: self.var.clone(),
                right: other.var.clone(),
            })
        }
    }

    fn result_var(&self, other: &Self) -> Symbol {
        if self.is_constant() && !other.is_constant() {
            other.var.clone()
        } else {
            self.var.clone()
        }
    }

    pub fn add(&self, other: &Self, f: &F) -> Self {
        self.assert_same_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(f.add(&self.coeff(k, f), &other.coeff(k, f)));
        }
        Poly::from_coeffs(self.result_var(other), coeffs, f)
    }

    pub fn sub(&self, other: &Self, f: &F) -> Self {
        self.assert_same_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(f.sub(&self.coeff(k, f), &other.coeff(k, f)));
        }
        Poly::from_coeffs(self.result_var(other), coeffs, f)
    }

    pub fn neg(&self, f: &F) -> Self {
        Poly {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self, f: &F) -> Self {
        self.assert_same_var(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.result_var(other));
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Poly::from_coeffs(self.result_var(other), coeffs, f)
    }

    pub fn scale(&self, c: &F::El, f: &F) -> Self {
        if f.is_zero(c) {
            return Poly::zero(self.var.clone());
        }
        Poly::from_coeffs(
            self.var.clone(),
            self.coeffs.iter().map(|a| f.mul(a, c)).collect(),
            f,
        )
    }

    /// Multiply by `x^k`.
    pub fn mul_xk(&self, k: usize, f: &F) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![f.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { var: self.var.clone(), coeffs }
    }

    pub fn pow(&self, k: usize, f: &F) -> Self {
        let mut acc = Poly::one(self.var.clone(), f);
        for _ in 0..k {
            acc = acc.mul(self, f);
        }
        acc
    }

    pub fn derivative(&self, f: &F) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.var.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| f.mul(c, &f.from_i64(k as i64)))
            .collect();
        Poly::from_coeffs(self.var.clone(), coeffs, f)
    }

    pub fn eval(&self, at: &F::El, f: &F) -> F::El {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, at), c);
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, var: Symbol, g: &G, mut m: impl FnMut(&F::El) -> G::El) -> Poly<G> {
        Poly::from_coeffs(var, self.coeffs.iter().map(|c| m(c)).collect(), g)
    }

    /// Quotient and remainder; requires a nonzero divisor. Coefficient
    /// inversion of the divisor's leading coefficient is the only fallible
    /// step (and the only source of zero-divisor splits over towers).
    pub fn divrem(&self, g: &Self, f: &F) -> Result<(Self, Self), ArithError> {
        self.check_same_var(g)?;
        if g.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let lc_inv = f.inv(g.lc().unwrap())?;
        Ok(self.divrem_with_lcinv(g, &lc_inv, f))
    }

    /// Quotient and remainder by a monic divisor; never fails.
    pub fn divrem_monic(&self, g: &Self, f: &F) -> (Self, Self) {
        debug_assert!(g.lc().map(|c| f.is_one(c)).unwrap_or(false), "divisor not monic");
        self.divrem_with_lcinv(g, &f.one(), f)
    }

    fn divrem_with_lcinv(&self, g: &Self, lc_inv: &F::El, f: &F) -> (Self, Self) {
        let dg = g.degree().expect("nonzero divisor");
        let var = self.result_var(g);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return (Poly::zero(var), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let c = f.mul(&rem[k], lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            quot[k - dg] = c.clone();
            for (j, gj) in g.coeffs.iter().enumerate() {
                rem[k - dg + j] = f.sub(&rem[k - dg + j], &f.mul(&c, gj));
            }
        }
        (
            Poly::from_coeffs(var.clone(), quot, f),
            Poly::from_coeffs(var, rem, f),
        )
    }

    /// Exact quotient. Panics when the division leaves a remainder: callers
    /// use this only where divisibility is a proven invariant.
    pub fn exact_div(&self, g: &Self, f: &F) -> Result<Self, ArithError> {
        let (q, r) = self.divrem(g, f)?;
        assert!(r.is_zero(), "exact division left a remainder");
        Ok(q)
    }

    pub fn monic(&self, f: &F) -> Result<Self, ArithError> {
        match self.lc() {
            None => Ok(self.clone()),
            Some(lc) => {
                if f.is_one(lc) {
                    Ok(self.clone())
                } else {
                    let inv = f.inv(lc)?;
                    Ok(self.scale(&inv, f))
                }
            }
        }
    }

    pub fn to_string(&self, f: &F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.el_string(c);
            let coeff = if cs.contains(['+', '-', ' ', '/']) && k > 0 {
                format!("({cs})")
            } else {
                cs
            };
            let term = match k {
                0 => coeff,
                1 if f.is_one(c) => format!("{}", self.var),
                1 => format!("{coeff}*{}", self.var),
                _ if f.is_one(c) => format!("{}^{k}", self.var),
                _ => format!("{coeff}*{}^{k}", self.var),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}; {:?}]", self.var, self.coeffs)
    }
}

/// Monic gcd by a Euclidean remainder sequence with monic normalization at
/// every step. gcd(f, 0) = monic(f); gcd(0, 0) = 0.
pub fn monic_euclid_gcd<F: Field>(f: &Poly<F>, g: &Poly<F>, field: &F) -> Result<Poly<F>, ArithError> {
    f.check_same_var(g)?;
    let mut a = f.monic(field)?;
    let mut b = g.monic(field)?;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let (_, r) = a.divrem_monic(&b, field);
        a = b;
        b = r.monic(field)?;
    }
    Ok(a)
}

/// Extended gcd: returns (g, s, t) with `s*f + t*g0... = g`, `g` monic, and
/// the Bezout cofactors degree-reduced (`deg s < deg(g/gcd)` when possible).
pub fn xgcd<F: Field>(
    f: &Poly<F>,
    g: &Poly<F>,
    field: &F,
) -> Result<(Poly<F>, Poly<F>, Poly<F>), ArithError> {
    f.check_same_var(g)?;
    let var = f.result_var(g);
    let zero = || Poly::zero(var.clone());
    let one = || Poly::one(var.clone(), field);

    // Invariant: s_a*f + t_a*g = a, s_b*f + t_b*g = b.
    let mut a = f.clone();
    let mut b = g.clone();
    let (mut s_a, mut t_a) = (one(), zero());
    let (mut s_b, mut t_b) = (zero(), one());
    while !b.is_zero() {
        let (q, r) = a.divrem(&b, field)?;
        let s_r = s_a.sub(&q.mul(&s_b, field), field);
        let t_r = t_a.sub(&q.mul(&t_b, field), field);
        a = b;
        s_a = std::mem::replace(&mut s_b, s_r);
        t_a = std::mem::replace(&mut t_b, t_r);
        b = r;
    }
    if a.is_zero() {
        return Ok((zero(), zero(), zero()));
    }
    let lc_inv = field.inv(a.lc().unwrap())?;
    let g0 = a.scale(&lc_inv, field);
    let mut s = s_a.scale(&lc_inv, field);
    let mut t = t_a.scale(&lc_inv, field);
    // Degree-normalize: s mod (g/g0) keeps the cofactors small; recompute t
    // exactly so the identity is preserved.
    if !g.is_zero() {
        let gq = g.exact_div(&g0, field)?;
        if gq.degree().map_or(false, |d| d > 0) && s.degree() >= gq.degree() {
            let (_, s_red) = s.divrem(&gq, field)?;
            s = s_red;
            let num = g0.sub(&s.mul(f, field), field);
            t = num.exact_div(g, field)?;
        }
    }
    Ok((g0, s, t))
}

/// Square-free part: `monic(f / gcd(f, f'))`. Errors on the zero polynomial;
/// a nonzero constant maps to 1.
pub fn squarefree_part<F: Field>(f: &Poly<F>, field: &F) -> Result<Poly<F>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Poly::one(f.variable().clone(), field));
    }
    let d = f.derivative(field);
    let g = field.poly_gcd(f, &d)?;
    let q = f.exact_div(&g, field)?;
    q.monic(field)
}

/// A square-free decomposition: pairwise coprime monic square-free factors
/// with multiplicities; the product reproduces the input up to a unit.
#[derive(Clone, Debug)]
pub struct SquarefreeDecomposition<F: Field> {
    pub unit: F::El,
    pub factors: Vec<(Poly<F>, usize)>,
}

/// Yun's algorithm (characteristic zero).
pub fn squarefree_decomposition<F: Field>(
    f: &Poly<F>,
    field: &F,
) -> Result<SquarefreeDecomposition<F>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let unit = f.lc().unwrap().clone();
    let fm = f.monic(field)?;
    if fm.is_constant() {
        return Ok(SquarefreeDecomposition { unit, factors: Vec::new() });
    }
    let df = fm.derivative(field);
    let a0 = field.poly_gcd(&fm, &df)?;
    let mut b = fm.exact_div(&a0, field)?;
    let mut c = df.exact_div(&a0, field)?;
    let mut d = c.sub(&b.derivative(field), field);
    let mut factors = Vec::new();
    let mut i = 1usize;
    while b.degree().map_or(false, |deg| deg > 0) {
        let a = field.poly_gcd(&b, &d)?;
        if a.degree().map_or(false, |deg| deg > 0) {
            factors.push((a.clone(), i));
        }
        b = b.exact_div(&a, field)?;
        c = d.exact_div(&a, field)?;
        d = c.sub(&b.derivative(field), field);
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, factors })
}

/// Resultant via a Euclidean polynomial remainder sequence with the standard
/// transition formula. Errors on zero input polynomials.
pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>, field: &F) -> Result<F::El, ArithError> {
    if f.is_zero() || g.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    f.check_same_var(g)?;
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = field.one();
    let mut sign_neg = false;
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if da < db {
            if da % 2 == 1 && db % 2 == 1 {
                sign_neg = !sign_neg;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        if db == 0 {
            // res(a, c) = c^deg(a)
            let mut c = field.one();
            for _ in 0..da {
                c = field.mul(&c, b.lc().unwrap());
            }
            acc = field.mul(&acc, &c);
            break;
        }
        let (_, r) = a.divrem(&b, field)?;
        if r.is_zero() {
            return Ok(field.zero());
        }
        let dr = r.degree().unwrap();
        // res(a,b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
        if da % 2 == 1 && db % 2 == 1 {
            sign_neg = !sign_neg;
        }
        let mut c = field.one();
        for _ in 0..(da - dr) {
            c = field.mul(&c, b.lc().unwrap());
        }
        acc = field.mul(&acc, &c);
        a = b;
        b = r;
    }
    Ok(if sign_neg { field.neg(&acc) } else { acc })
}

/// disc(f) = (-1)^(d(d-1)/2) * res(f, f') / lc(f), for deg f >= 1.
pub fn discriminant<F: Field>(f: &Poly<F>, field: &F) -> Result<F::El, ArithError> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(ArithError::ZeroPolynomial),
    };
    let df = f.derivative(field);
    if df.is_zero() {
        return Ok(field.zero());
    }
    let r = resultant(f, &df, field)?;
    let r = field.div(&r, f.lc().unwrap())?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { field.neg(&r) } else { r })
}

// ---------------------------------------------------------------------------
// Rational-coefficient specializations
// ---------------------------------------------------------------------------

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Clear denominators and content: returns the primitive integer coefficient
/// vector (ascending) with positive leading coefficient, ignoring the unit.
pub(crate) fn primitive_int_coeffs(p: &Poly<RationalField>) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = num_integer::gcd(content, c.clone());
    }
    if content.is_zero() {
        return Vec::new();
    }
    if ints.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut ints {
        *c /= &content;
    }
    ints
}

fn int_poly_deg(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Pseudo-remainder of integer polynomials (a power of lc(g) times f rem g).
fn pseudo_rem(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let dg = g.len() - 1;
    let lcg = g.last().unwrap().clone();
    let mut r: Vec<BigInt> = f.to_vec();
    while r.len() > dg {
        let k = r.len() - 1;
        let c = r[k].clone();
        if c.is_zero() {
            r.pop();
            continue;
        }
        // r := lcg*r - c*x^(k-dg)*g; the top coefficient cancels
        for item in r.iter_mut() {
            *item *= &lcg;
        }
        for (j, gj) in g.iter().enumerate() {
            r[k - dg + j] -= &c * gj;
        }
        debug_assert!(r[k].is_zero());
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// gcd over Q via a primitive pseudo-remainder sequence on integer
/// polynomials, avoiding rational coefficient blowup; result is monic.
pub fn subresultant_gcd_rational(f: &Poly<RationalField>, g: &Poly<RationalField>) -> Poly<RationalField> {
    let field = RationalField;
    let var = f.result_var(g);
    if f.is_zero() {
        return g.monic(&field).unwrap();
    }
    if g.is_zero() {
        return f.monic(&field).unwrap();
    }
    let mut a = primitive_int_coeffs(f);
    let mut b = primitive_int_coeffs(g);
    if int_poly_deg(&a) < int_poly_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            // nonzero constant
            b.clear();
            a = vec![BigInt::one()];
            break;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_ints(r);
    }
    let coeffs: Vec<Rat> = a.into_iter().map(Rat::from_int).collect();
    Poly::from_coeffs(var, coeffs, &field)
        .monic(&field)
        .unwrap()
}

fn primitive_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = num_integer::gcd(content, c.clone());
    }
    if v.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut v {
        *c /= &content;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{PrimeField, RationalField};

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn qp(coeffs: &[i64]) -> Poly<RationalField> {
        Poly::from_i64s(sym("x"), coeffs, &RationalField)
    }

    #[test]
    fn divrem_examples() {
        let f = RationalField;
        // (x^2 - 1) / (x - 1) = (x + 1, 0)
        let (q, r) = qp(&[-1, 0, 1]).divrem(&qp(&[-1, 1]), &f).unwrap();
        assert_eq!(q, qp(&[1, 1]));
        assert!(r.is_zero());
        // eval(x^2 + 1 at 2) = 5
        assert_eq!(qp(&[1, 0, 1]).eval(&Rat::from_i64(2), &f), Rat::from_i64(5));
        // derivative(x^3) = 3x^2
        assert_eq!(qp(&[0, 0, 0, 1]).derivative(&f), qp(&[0, 0, 3]));
        // division by zero
        assert!(qp(&[1]).divrem(&Poly::zero(sym("x")), &f).is_err());
    }

    #[test]
    fn variable_mismatch_is_reported() {
        let f = RationalField;
        let p = Poly::from_i64s(sym("x"), &[0, 1], &f);
        let q = Poly::from_i64s(sym("y"), &[0, 1], &f);
        assert!(matches!(
            p.divrem(&q, &f),
            Err(ArithError::VariableMismatch { .. })
        ));
        // constants unify with anything
        let c = Poly::from_i64s(sym("y"), &[3], &f);
        assert!(p.divrem(&c, &f).is_ok());
    }

    #[test]
    fn gcd_examples() {
        let f = RationalField;
        // gcd(x^2 - 1, x - 1) = x - 1
        let g = f.poly_gcd(&qp(&[-1, 0, 1]), &qp(&[-1, 1])).unwrap();
        assert_eq!(g, qp(&[-1, 1]));
        // gcd(f, 0) = monic(f)
        let g = f.poly_gcd(&qp(&[2, 4]), &Poly::zero(sym("x"))).unwrap();
        assert_eq!(g, qp(&[1, 2]).monic(&f).unwrap());
        // gcd(0, 0) = 0
        let z: Poly<RationalField> = Poly::zero(sym("x"));
        assert!(f.poly_gcd(&z, &z).unwrap().is_zero());
    }

    #[test]
    fn xgcd_examples() {
        let f = RationalField;
        // xgcd(x, x+1): -x + (x+1) = 1
        let (g, s, t) = xgcd(&qp(&[0, 1]), &qp(&[1, 1]), &f).unwrap();
        assert_eq!(g, qp(&[1]));
        let id = s.mul(&qp(&[0, 1]), &f).add(&t.mul(&qp(&[1, 1]), &f), &f);
        assert_eq!(id, qp(&[1]));
        // xgcd(x-1, 0) = (x-1, 1, 0)
        let (g, s, t) = xgcd(&qp(&[-1, 1]), &Poly::zero(sym("x")), &f).unwrap();
        assert_eq!(g, qp(&[-1, 1]));
        assert_eq!(s, qp(&[1]));
        assert!(t.is_zero());
        // xgcd(x^2+1, x) = (1, 1, -x): verify the identity by expansion
        let (g, s, t) = xgcd(&qp(&[1, 0, 1]), &qp(&[0, 1]), &f).unwrap();
        assert_eq!(g, qp(&[1]));
        let id = s.mul(&qp(&[1, 0, 1]), &f).add(&t.mul(&qp(&[0, 1]), &f), &f);
        assert_eq!(id, qp(&[1]));
        assert_eq!(s, qp(&[1]));
        assert_eq!(t, qp(&[0, -1]));
    }

    #[test]
    fn squarefree_examples() {
        let f = RationalField;
        // sqfr((x-1)^2 (x+2)) = (x-1)(x+2)
        let p = qp(&[-1, 1]).pow(2, &f).mul(&qp(&[2, 1]), &f);
        let s = squarefree_part(&p, &f).unwrap();
        assert_eq!(s, qp(&[-1, 1]).mul(&qp(&[2, 1]), &f));
        // sqfr(x^3) = x
        assert_eq!(squarefree_part(&qp(&[0, 0, 0, 1]), &f).unwrap(), qp(&[0, 1]));
        // sqfr(nonzero constant) = 1
        assert_eq!(squarefree_part(&qp(&[5]), &f).unwrap(), qp(&[1]));
        // zero polynomial errors
        assert!(squarefree_part(&Poly::zero(sym("x")), &f).is_err());
        // sqfr output is square-free: gcd(s, s') = 1
        let s = squarefree_part(&qp(&[0, 0, 1]).mul(&qp(&[-1, 1]).pow(3, &f), &f), &f).unwrap();
        let g = f.poly_gcd(&s, &s.derivative(&f)).unwrap();
        assert_eq!(g, qp(&[1]));
    }

    #[test]
    fn yun_reconstructs_input() {
        let f = RationalField;
        let p = qp(&[-1, 1])
            .pow(2, &f)
            .mul(&qp(&[2, 1]), &f)
            .mul(&qp(&[0, 1]).pow(3, &f), &f)
            .scale(&Rat::from_i64s(3, 2), &f);
        let d = squarefree_decomposition(&p, &f).unwrap();
        let mut prod = Poly::constant(sym("x"), d.unit.clone(), &f);
        for (q, m) in &d.factors {
            prod = prod.mul(&q.pow(*m, &f), &f);
        }
        assert_eq!(prod, p);
        // factors pairwise coprime
        for i in 0..d.factors.len() {
            for j in i + 1..d.factors.len() {
                let g = f.poly_gcd(&d.factors[i].0, &d.factors[j].0).unwrap();
                assert!(g.is_constant());
            }
        }
    }

    #[test]
    fn resultant_examples() {
        let f = RationalField;
        // res(x - 2, x - 5) = 2 - 5 = -3  (a - b with a=2, b=5)
        let r = resultant(&qp(&[-2, 1]), &qp(&[-5, 1]), &f).unwrap();
        assert_eq!(r, Rat::from_i64(-3));
        // res(f, f) = 0 for deg >= 1
        let p = qp(&[1, 2, 3]);
        assert_eq!(resultant(&p, &p, &f).unwrap(), Rat::zero());
        // zero polynomial rejected
        assert!(resultant(&p, &Poly::zero(sym("x")), &f).is_err());
        // cross-check a known value: res(x^2+1, x^2-1) = 4
        let r = resultant(&qp(&[1, 0, 1]), &qp(&[-1, 0, 1]), &f).unwrap();
        assert_eq!(r, Rat::from_i64(4));
    }

    #[test]
    fn discriminant_examples() {
        let f = RationalField;
        // disc(x^2 + p x + q) = p^2 - 4q, spot-checked at (p,q)=(3,5): 9-20
        let p = qp(&[5, 3, 1]);
        assert_eq!(discriminant(&p, &f).unwrap(), Rat::from_i64(-11));
        // disc((x-1)^2) = 0
        let p = qp(&[-1, 1]).pow(2, &f);
        assert_eq!(discriminant(&p, &f).unwrap(), Rat::zero());
        // disc of linear is 1
        assert_eq!(discriminant(&qp(&[7, 2]), &f).unwrap(), Rat::one());
    }

    #[test]
    fn prime_field_polynomials() {
        let f = PrimeField::new(13);
        let p = Poly::from_i64s(sym("x"), &[1, 0, 1], &f); // x^2 + 1
        let q = Poly::from_i64s(sym("x"), &[5, 1], &f); // x + 5
        // (x+5)^2 = x^2 + 10x + 25 = x^2 + 10x + 12 mod 13
        assert_eq!(q.pow(2, &f), Poly::from_i64s(sym("x"), &[12, 10, 1], &f));
        let (qq, r) = p.divrem(&q, &f).unwrap();
        let back = qq.mul(&q, &f).add(&r, &f);
        assert_eq!(back, p);
    }

    proptest::proptest! {
        #[test]
        fn divrem_reconstruction(fa in proptest::collection::vec(-20i64..20, 0..7),
                                 ga in proptest::collection::vec(-20i64..20, 1..5)) {
            let f = RationalField;
            let p = qp(&fa);
            let g = qp(&ga);
            proptest::prop_assume!(!g.is_zero());
            let (q, r) = p.divrem(&g, &f).unwrap();
            proptest::prop_assert!(r.degree() < g.degree() || r.is_zero());
            proptest::prop_assert_eq!(q.mul(&g, &f).add(&r, &f), p);
        }

        #[test]
        fn gcd_divides_both(fa in proptest::collection::vec(-9i64..9, 1..6),
                            ga in proptest::collection::vec(-9i64..9, 1..6),
                            ha in proptest::collection::vec(-9i64..9, 1..4)) {
            let f = RationalField;
            // plant a common factor h
            let h = qp(&ha);
            proptest::prop_assume!(!h.is_zero());
            let p = qp(&fa).mul(&h, &f);
            let g = qp(&ga).mul(&h, &f);
            proptest::prop_assume!(!p.is_zero() && !g.is_zero());
            let d = f.poly_gcd(&p, &g).unwrap();
            // d divides both, and the planted h divides d
            proptest::prop_assert!(p.divrem(&d, &f).unwrap().1.is_zero());
            proptest::prop_assert!(g.divrem(&d, &f).unwrap().1.is_zero());
            proptest::prop_assert!(d.divrem(&h, &f).unwrap().1.is_zero());
        }

        #[test]
        fn resultant_zero_iff_common_factor(fa in proptest::collection::vec(-5i64..5, 2..5),
                                            ga in proptest::collection::vec(-5i64..5, 2..5)) {
            let f = RationalField;
            let p = qp(&fa);
            let g = qp(&ga);
            proptest::prop_assume!(!p.is_zero() && !g.is_zero());
            proptest::prop_assume!(p.degree().unwrap_or(0) >= 1 && g.degree().unwrap_or(0) >= 1);
            let r = resultant(&p, &g, &f).unwrap();
            let d = f.poly_gcd(&p, &g).unwrap();
            let common = d.degree().map_or(false, |k| k > 0);
            proptest::prop_assert_eq!(r.is_zero(), common);
        }

        #[test]
        fn field_axioms_rationals(an in -50i64..50, ad in 1i64..20,
                                  bn in -50i64..50, bd in 1i64..20,
                                  cn in -50i64..50, cd in 1i64..20) {
            let a = Rat::from_i64s(an, ad);
            let b = Rat::from_i64s(bn, bd);
            let c = Rat::from_i64s(cn, cd);
            proptest::prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            proptest::prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            proptest::prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                proptest::prop_assert_eq!(&a * &a.inv().unwrap(), Rat::one());
            }
        }

        #[test]
        fn field_axioms_prime(a in 0u64..100, b in 0u64..100, c in 0u64..100) {
            let f = PrimeField::new(101);
            let (a, b, c) = (a % 101, b % 101, c % 101);
            proptest::prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            proptest::prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            proptest::prop_assert_eq!(f.mul(&a, &f.add(&b, &c)),
                                      f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if a != 0 {
                proptest::prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }
}
