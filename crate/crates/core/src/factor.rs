//! Irreducible factorization over the rationals: content extraction, Yun
//! square-free split, then modular factorization (distinct-degree plus
//! Cantor-Zassenhaus over a small prime), quadratic Hensel lifting past the
//! Mignotte bound, and subset recombination. The result is checked by
//! multiplication in the tests; callers rely on monic irreducible factors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{ArithError, Field};
use crate::poly::{primitive_int_coeffs, squarefree_decomposition, Poly};
use crate::rat::{is_prime_u64, PrimeField, Rat, RationalField};
use crate::symbol::Symbol;

/// Complete factorization over Q: `unit * prod(factor_i ^ mult_i)`, with
/// every factor monic and irreducible over the rationals.
#[derive(Clone, Debug)]
pub struct RationalFactorization {
    pub unit: Rat,
    pub factors: Vec<(Poly<RationalField>, usize)>,
}

impl RationalFactorization {
    pub fn product(&self) -> Poly<RationalField> {
        let f = RationalField;
        let var = self
            .factors
            .first()
            .map(|(p, _)| p.variable().clone())
            .unwrap_or_else(|| Symbol::new("x"));
        let mut acc = Poly::constant(var, self.unit.clone(), &f);
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m, &f), &f);
        }
        acc
    }
}

pub fn factor_rationals(f: &Poly<RationalField>) -> Result<RationalFactorization, ArithError> {
    let field = RationalField;
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let unit = f.lc().unwrap().clone();
    let fm = f.monic(&field)?;
    if fm.is_constant() {
        return Ok(RationalFactorization { unit, factors: Vec::new() });
    }
    let decomp = squarefree_decomposition(&fm, &field)?;
    let mut factors: Vec<(Poly<RationalField>, usize)> = Vec::new();
    for (part, mult) in decomp.factors {
        for irr in factor_squarefree_monic(&part) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| cmp_poly(&a.0, &b.0))
    });
    Ok(RationalFactorization { unit, factors })
}

fn cmp_poly(a: &Poly<RationalField>, b: &Poly<RationalField>) -> std::cmp::Ordering {
    let ac: Vec<&Rat> = a.coeffs().iter().collect();
    let bc: Vec<&Rat> = b.coeffs().iter().collect();
    ac.cmp(&bc)
}

/// Factor a monic square-free rational polynomial into monic irreducibles.
fn factor_squarefree_monic(g: &Poly<RationalField>) -> Vec<Poly<RationalField>> {
    let field = RationalField;
    let deg = g.degree().unwrap_or(0);
    if deg <= 1 {
        return vec![g.clone()];
    }
    let ints = primitive_int_coeffs(g);
    let p = choose_prime(&ints);
    let fp = PrimeField::new(p);
    let var = g.variable().clone();

    // monic image mod p
    let fbar: Poly<PrimeField> = Poly::from_coeffs(
        var.clone(),
        ints.iter().map(|c| fp.from_bigint(c)).collect(),
        &fp,
    );
    let lc_inv = fp.inv(fbar.lc().unwrap()).unwrap();
    let fbar = fbar.scale(&lc_inv, &fp);
    let modular = factor_mod_p(&fbar, &fp);
    if modular.len() == 1 {
        return vec![g.clone()];
    }

    // Hensel lift the monic factorization to p^k beyond twice the Mignotte
    // bound for coefficients of factors of `ints`.
    let bound = mignotte_bound(&ints);
    let target = {
        let two_b = &bound * 2 + 1;
        let mut k = 1u32;
        let mut m = BigInt::from(p);
        while m <= two_b {
            m = &m * &m;
            k *= 2;
        }
        (k, m)
    };
    let (_, big_m) = target;
    let lc = ints.last().unwrap().clone();
    let lc_inv_m = mod_inverse(&lc, &big_m).expect("p does not divide lc");
    let monic_ints: Vec<BigInt> = ints
        .iter()
        .map(|c| ((c * &lc_inv_m) % &big_m + &big_m) % &big_m)
        .collect();
    let modular_ints: Vec<Vec<BigInt>> = modular
        .iter()
        .map(|w| w.coeffs().iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let lifted = hensel_lift_tree(&monic_ints, &modular_ints, &BigInt::from(p), &big_m);

    // subset recombination
    let mut pool: Vec<Vec<BigInt>> = lifted;
    let mut remaining = ints;
    let mut out = Vec::new();
    let mut subset_size = 1usize;
    'outer: while 2 * subset_size <= pool.len() {
        let indices: Vec<usize> = (0..pool.len()).collect();
        for combo in combinations(&indices, subset_size) {
            let l = remaining.last().unwrap().clone();
            let mut cand = vec![((&l % &big_m) + &big_m) % &big_m];
            for &i in &combo {
                cand = zmod_mul(&cand, &pool[i], &big_m);
            }
            let cand = symmetric_rep(&cand, &big_m);
            let cand = primitive(&cand);
            if cand.len() < 2 {
                continue;
            }
            let cand_q = int_to_rational_poly(&var, &cand);
            let rem_q = int_to_rational_poly(&var, &remaining);
            if let Ok((quot, rem)) = rem_q.divrem(&cand_q, &field) {
                if rem.is_zero() {
                    out.push(cand_q.monic(&field).unwrap());
                    remaining = primitive_int_coeffs(&quot);
                    let combo_set: std::collections::BTreeSet<usize> = combo.into_iter().collect();
                    pool = pool
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !combo_set.contains(i))
                        .map(|(_, w)| w)
                        .collect();
                    if pool.is_empty() {
                        break 'outer;
                    }
                    continue 'outer;
                }
            }
        }
        subset_size += 1;
    }
    if remaining.len() >= 2 {
        out.push(int_to_rational_poly(&var, &remaining).monic(&field).unwrap());
    }
    out
}

fn int_to_rational_poly(var: &Symbol, coeffs: &[BigInt]) -> Poly<RationalField> {
    Poly::from_coeffs(
        var.clone(),
        coeffs.iter().map(|c| Rat::from_int(c.clone())).collect(),
        &RationalField,
    )
}

fn choose_prime(ints: &[BigInt]) -> u64 {
    let lc = ints.last().unwrap();
    let mut p = 3u64;
    loop {
        if is_prime_u64(p) && !(lc % BigInt::from(p)).is_zero() && mod_p_squarefree(ints, p) {
            return p;
        }
        p += 2;
    }
}

fn mod_p_squarefree(ints: &[BigInt], p: u64) -> bool {
    let fp = PrimeField::new(p);
    let var = Symbol::new("_t");
    let fbar: Poly<PrimeField> =
        Poly::from_coeffs(var, ints.iter().map(|c| fp.from_bigint(c)).collect(), &fp);
    if fbar.degree() != Some(ints.len() - 1) {
        return false;
    }
    let d = fbar.derivative(&fp);
    if d.is_zero() {
        return false;
    }
    let g = fp.poly_gcd(&fbar, &d).unwrap();
    g.is_constant()
}

/// Coefficient bound for factors of an integer polynomial (Mignotte-style,
/// deliberately generous).
fn mignotte_bound(ints: &[BigInt]) -> BigInt {
    let n = ints.len() - 1;
    let height = ints.iter().map(|c| c.abs()).max().unwrap();
    let lc = ints.last().unwrap().abs();
    (BigInt::one() << (n + 1)) * height * lc * BigInt::from(n as u64 + 1)
}

// ---------------------------------------------------------------------------
// Factorization over a prime field
// ---------------------------------------------------------------------------

/// Factor a monic square-free polynomial over F_p into monic irreducibles,
/// deterministic for fixed input (seeded internal randomness).
pub fn factor_mod_p(f: &Poly<PrimeField>, fp: &PrimeField) -> Vec<Poly<PrimeField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let var = f.variable().clone();
    let x = Poly::var(var.clone(), fp);
    let mut d = 1usize;
    while rest.degree().map_or(false, |k| k > 0) {
        let k = rest.degree().unwrap();
        if d > k / 2 {
            out.push(rest.clone());
            break;
        }
        // x^(p^d) mod rest
        let e = BigUint::from(fp.modulus()).pow(d as u32);
        let xq = powmod(&x, &e, &rest, fp);
        let diff = xq.sub(&x, fp);
        let g = fp.poly_gcd(&rest, &diff).unwrap();
        if g.degree().map_or(false, |k| k > 0) {
            for irr in equal_degree_split(&g, d, fp, &mut rng) {
                out.push(irr);
            }
            rest = rest.exact_div(&g, fp).unwrap();
        }
        d += 1;
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    out
}

fn powmod(
    base: &Poly<PrimeField>,
    e: &BigUint,
    m: &Poly<PrimeField>,
    fp: &PrimeField,
) -> Poly<PrimeField> {
    let mut acc = Poly::one(base.variable().clone(), fp);
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = acc.mul(&acc, fp).divrem(m, fp).unwrap().1;
        if e.bit(i) {
            acc = acc.mul(base, fp).divrem(m, fp).unwrap().1;
        }
    }
    acc
}

fn equal_degree_split(
    g: &Poly<PrimeField>,
    d: usize,
    fp: &PrimeField,
    rng: &mut ChaCha8Rng,
) -> Vec<Poly<PrimeField>> {
    let k = g.degree().unwrap();
    if k == d {
        return vec![g.clone()];
    }
    let var = g.variable().clone();
    // (p^d - 1) / 2
    let e = (BigUint::from(fp.modulus()).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..fp.modulus())).collect();
        let r = Poly::from_coeffs(var.clone(), coeffs, fp);
        if r.is_constant() {
            continue;
        }
        let h = powmod(&r, &e, g, fp);
        let h1 = h.sub(&Poly::one(var.clone(), fp), fp);
        let w = fp.poly_gcd(g, &h1).unwrap();
        if let Some(dw) = w.degree() {
            if dw > 0 && dw < k {
                let other = g.exact_div(&w, fp).unwrap();
                let mut out = equal_degree_split(&w, d, fp, rng);
                out.extend(equal_degree_split(&other, d, fp, rng));
                return out;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting (integer polynomials modulo p^k)
// ---------------------------------------------------------------------------

fn zmod_norm(v: &mut Vec<BigInt>, m: &BigInt) {
    for c in v.iter_mut() {
        *c = ((&*c % m) + m) % m;
    }
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn zmod_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut v = vec![BigInt::zero(); n];
    for (i, item) in v.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        *item = x + y;
    }
    zmod_norm(&mut v, m);
    v
}

fn zmod_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut v = vec![BigInt::zero(); n];
    for (i, item) in v.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        *item = x - y;
    }
    zmod_norm(&mut v, m);
    v
}

fn zmod_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    zmod_norm(&mut v, m);
    v
}

/// Division by a monic polynomial mod m.
fn zmod_divrem_monic(a: &[BigInt], g: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(g.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let dg = g.len() - 1;
    let mut rem: Vec<BigInt> = a.to_vec();
    if rem.len() <= dg {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dg];
    for k in (dg..rem.len()).rev() {
        let c = ((&rem[k] % m) + m) % m;
        if c.is_zero() {
            rem[k] = BigInt::zero();
            continue;
        }
        quot[k - dg] = c.clone();
        for (j, gj) in g.iter().enumerate() {
            rem[k - dg + j] = ((&rem[k - dg + j] - &c * gj) % m + m) % m;
        }
    }
    zmod_norm(&mut quot, m);
    let mut rem = rem[..dg.min(rem.len())].to_vec();
    zmod_norm(&mut rem, m);
    (quot, rem)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(((e.x % m) + m) % m)
    } else {
        None
    }
}

/// Extended gcd of coprime monic polynomials mod a prime p:
/// s*g + t*h = 1 (mod p).
fn zmod_xgcd_coprime(g: &[BigInt], h: &[BigInt], p: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    // Euclid over F_p with rational-free arithmetic
    let mut a = g.to_vec();
    let mut b = h.to_vec();
    zmod_norm(&mut a, p);
    zmod_norm(&mut b, p);
    let one = vec![BigInt::one()];
    let (mut sa, mut ta) = (one.clone(), Vec::new());
    let (mut sb, mut tb) = (Vec::new(), one);
    while !b.is_empty() {
        // make b monic for monic division
        let lc = b.last().unwrap().clone();
        let lc_inv = mod_inverse(&lc, p).expect("prime modulus");
        let bm: Vec<BigInt> = b.iter().map(|c| ((c * &lc_inv) % p + p) % p).collect();
        let (q, r) = zmod_divrem_monic(&a, &bm, p);
        // a = q*bm + r = (q*lc_inv)*b + r
        let q = zmod_mul(&q, &[lc_inv], p);
        let sr = zmod_sub(&sa, &zmod_mul(&q, &sb, p), p);
        let tr = zmod_sub(&ta, &zmod_mul(&q, &tb, p), p);
        a = std::mem::take(&mut b);
        b = r;
        sa = std::mem::replace(&mut sb, sr);
        ta = std::mem::replace(&mut tb, tr);
    }
    // a is a nonzero constant (inputs coprime); scale to 1
    assert_eq!(a.len(), 1, "inputs must be coprime mod p");
    let inv = mod_inverse(&a[0], p).unwrap();
    (zmod_mul(&sa, &[inv.clone()], p), zmod_mul(&ta, &[inv], p))
}

/// Lift `f = prod(factors)` from mod p to mod `target` (a power of p by
/// repeated squaring), monic f and monic factors. Splits the factor list in
/// halves and lifts the binary tree.
fn hensel_lift_tree(
    f: &[BigInt],
    factors: &[Vec<BigInt>],
    p: &BigInt,
    target: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let mut v = f.to_vec();
        zmod_norm(&mut v, target);
        return vec![v];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let mut g = vec![BigInt::one()];
    for w in left {
        g = zmod_mul(&g, w, p);
    }
    let mut h = vec![BigInt::one()];
    for w in right {
        h = zmod_mul(&h, w, p);
    }
    let (s, t) = zmod_xgcd_coprime(&g, &h, p);
    let (g, h) = hensel_lift_pair(f, &g, &h, &s, &t, p, target);
    let mut out = hensel_lift_tree(&g, left, p, target);
    out.extend(hensel_lift_tree(&h, right, p, target));
    out
}

/// Quadratic Hensel lifting of a coprime monic pair g*h = f (mod p) up to
/// the target modulus.
#[allow(clippy::too_many_arguments)]
fn hensel_lift_pair(
    f: &[BigInt],
    g0: &[BigInt],
    h0: &[BigInt],
    s0: &[BigInt],
    t0: &[BigInt],
    p: &BigInt,
    target: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut m = p.clone();
    let mut g = g0.to_vec();
    let mut h = h0.to_vec();
    let mut s = s0.to_vec();
    let mut t = t0.to_vec();
    while &m < target {
        let m2 = (&m * &m).min(target.clone());
        // e = f - g*h (mod m2)
        let e = zmod_sub(f, &zmod_mul(&g, &h, &m2), &m2);
        // g' = g + t*e + q*g, h' = h + r, where s*e = q*h + r
        let se = zmod_mul(&s, &e, &m2);
        let (q, r) = zmod_divrem_monic(&se, &h, &m2);
        let g_new = zmod_add(&zmod_add(&g, &zmod_mul(&t, &e, &m2), &m2), &zmod_mul(&q, &g, &m2), &m2);
        let h_new = zmod_add(&h, &r, &m2);
        // fix the Bezout pair: b = s*g' + t*h' - 1 (mod m2)
        let b = zmod_sub(
            &zmod_add(&zmod_mul(&s, &g_new, &m2), &zmod_mul(&t, &h_new, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let sb = zmod_mul(&s, &b, &m2);
        let (c, d) = zmod_divrem_monic(&sb, &h_new, &m2);
        let s_new = zmod_sub(&s, &d, &m2);
        let t_new = zmod_sub(
            &t,
            &zmod_add(&zmod_mul(&t, &b, &m2), &zmod_mul(&c, &g_new, &m2), &m2),
            &m2,
        );
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        m = m2;
    }
    (g, h)
}

fn symmetric_rep(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let c = ((c % m) + m) % m;
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut w: Vec<BigInt> = v.to_vec();
    while w.last().map_or(false, |c| c.is_zero()) {
        w.pop();
    }
    if w.is_empty() {
        return w;
    }
    let mut content = BigInt::zero();
    for c in &w {
        content = num_integer::gcd(content, c.clone());
    }
    if w.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut w {
        *c /= &content;
    }
    w
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn qp(coeffs: &[i64]) -> Poly<RationalField> {
        Poly::from_i64s(sym("x"), coeffs, &RationalField)
    }

    fn check_product(f: &Poly<RationalField>) {
        let fac = factor_rationals(f).unwrap();
        assert_eq!(fac.product(), f.clone(), "factorization reconstructs input");
    }

    #[test]
    fn basic_splits() {
        // x^2 - 1 = (x-1)(x+1)
        let fac = factor_rationals(&qp(&[-1, 0, 1])).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.factors.iter().all(|(_, m)| *m == 1));
        check_product(&qp(&[-1, 0, 1]));
        // x^2 + 1 irreducible
        let fac = factor_rationals(&qp(&[1, 0, 1])).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].0, qp(&[1, 0, 1]));
    }

    #[test]
    fn quadratic_with_nonsquare_discriminant_is_irreducible() {
        // z^2 + 14z + 1: discriminant 192 is not a perfect square
        let fac = factor_rationals(&qp(&[1, 14, 1])).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
    }

    #[test]
    fn multiplicities_and_units() {
        let f = RationalField;
        // 3/2 * (x-1)^2 * (2x+3)  -> monic factors (x-1)^2, (x+3/2)
        let p = qp(&[-1, 1])
            .pow(2, &f)
            .mul(&qp(&[3, 2]), &f)
            .scale(&Rat::from_i64s(3, 2), &f);
        let fac = factor_rationals(&p).unwrap();
        assert_eq!(fac.factors.len(), 2);
        let mults: Vec<usize> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
        assert_eq!(fac.product(), p);
        assert_eq!(fac.unit, Rat::from_i64(3));
    }

    #[test]
    fn cyclotomic_style_split() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let p = qp(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = factor_rationals(&p).unwrap();
        let degs: Vec<usize> = fac.factors.iter().map(|(q, _)| q.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        check_product(&p);
    }

    #[test]
    fn higher_degree_irreducible() {
        // x^4 + x + 1 is irreducible over Q
        let p = qp(&[1, 1, 0, 0, 1]);
        let fac = factor_rationals(&p).unwrap();
        assert_eq!(fac.factors.len(), 1);
        // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
        let p = qp(&[4, 0, 0, 0, 1]);
        let fac = factor_rationals(&p).unwrap();
        assert_eq!(fac.factors.len(), 2);
        check_product(&p);
    }

    #[test]
    fn no_rational_roots_in_irreducible_factors() {
        // spot-check irreducibility for low degrees: no rational roots
        let p = qp(&[-6, 1, -5, 1, 1, 1]);
        let fac = factor_rationals(&p).unwrap();
        check_product(&p);
        for (q, _) in &fac.factors {
            if q.degree().unwrap() <= 3 && q.degree().unwrap() >= 2 {
                // rational root test: roots must be p/q dividing constant/lc
                let ints = primitive_int_coeffs(q);
                let c0 = &ints[0];
                if c0.is_zero() {
                    continue;
                }
                for cand in [-2i64, -1, 1, 2] {
                    let at = q.eval(&Rat::from_i64(cand), &RationalField);
                    assert!(!at.is_zero(), "irreducible factor has rational root {cand}");
                }
            }
        }
    }

    #[test]
    fn modular_projection_consistency() {
        // factorization self-consistent under one modular projection:
        // degrees of irreducible factors mod p refine the rational ones
        let p = qp(&[2, 0, -3, 0, 1]); // (x^2-1)(x^2-2)
        let fac = factor_rationals(&p).unwrap();
        check_product(&p);
        let degsum: usize = fac
            .factors
            .iter()
            .map(|(q, m)| q.degree().unwrap() * m)
            .sum();
        assert_eq!(degsum, 4);
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(24))]
        #[test]
        fn product_reconstructs(a in proptest::collection::vec(-6i64..6, 2..4),
                                b in proptest::collection::vec(-6i64..6, 2..4),
                                m in 1usize..3) {
            let f = RationalField;
            let pa = qp(&a);
            let pb = qp(&b);
            proptest::prop_assume!(!pa.is_zero() && !pb.is_zero());
            proptest::prop_assume!(pa.degree().unwrap_or(0) >= 1);
            let p = pa.pow(m, &f).mul(&pb, &f);
            let fac = factor_rationals(&p).unwrap();
            proptest::prop_assert_eq!(fac.product(), p);
        }
    }
}
