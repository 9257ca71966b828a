//! Multivariate parameter polynomials over the rationals, in recursive dense
//! form: a polynomial in the last ring variable whose coefficients are
//! recursively polynomials in the earlier variables.
//!
//! The node tree always has full depth — a node at level `k` is a dense
//! coefficient list of level `k-1` nodes, with rationals only at level 0 and
//! no trailing zero coefficients anywhere — so structural equality is
//! mathematical equality and `Ord` is a deterministic canonical order.

use std::cmp::Ordering;
use std::fmt;

use crate::field::Field;
use crate::poly::Poly;
use crate::rat::{Rat, RationalField};
use crate::symbol::Symbol;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    C(Rat),
    P(Vec<Node>),
}

impl Node {
    fn zero(level: usize) -> Node {
        if level == 0 {
            Node::C(Rat::zero())
        } else {
            Node::P(Vec::new())
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Node::C(c) => c.is_zero(),
            Node::P(v) => v.is_empty(),
        }
    }

    fn lift(c: Rat, level: usize) -> Node {
        if c.is_zero() {
            return Node::zero(level);
        }
        let mut n = Node::C(c);
        for _ in 0..level {
            n = Node::P(vec![n]);
        }
        n
    }

    fn trim(v: &mut Vec<Node>) {
        while v.last().map_or(false, |n| n.is_zero()) {
            v.pop();
        }
    }

    fn add(&self, other: &Node) -> Node {
        match (self, other) {
            (Node::C(a), Node::C(b)) => Node::C(a + b),
            (Node::P(a), Node::P(b)) => {
                let n = a.len().max(b.len());
                let mut v = Vec::with_capacity(n);
                for k in 0..n {
                    v.push(match (a.get(k), b.get(k)) {
                        (Some(x), Some(y)) => x.add(y),
                        (Some(x), None) => x.clone(),
                        (None, Some(y)) => y.clone(),
                        (None, None) => unreachable!(),
                    });
                }
                Node::trim(&mut v);
                Node::P(v)
            }
            _ => unreachable!("level mismatch"),
        }
    }

    fn neg(&self) -> Node {
        match self {
            Node::C(c) => Node::C(-c),
            Node::P(v) => Node::P(v.iter().map(|n| n.neg()).collect()),
        }
    }

    fn mul(&self, other: &Node) -> Node {
        match (self, other) {
            (Node::C(a), Node::C(b)) => Node::C(a * b),
            (Node::P(a), Node::P(b)) => {
                if a.is_empty() || b.is_empty() {
                    return Node::P(Vec::new());
                }
                let child_zero = match &a[0] {
                    Node::C(_) => Node::C(Rat::zero()),
                    Node::P(_) => Node::P(Vec::new()),
                };
                let mut v = vec![child_zero; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        v[i + j] = v[i + j].add(&x.mul(y));
                    }
                }
                Node::trim(&mut v);
                Node::P(v)
            }
            _ => unreachable!("level mismatch"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<Symbol>,
    node: Node,
}

impl PartialOrd for MPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars
            .cmp(&other.vars)
            .then_with(|| self.node.cmp(&other.node))
    }
}

impl MPoly {
    pub fn zero(vars: &[Symbol]) -> Self {
        MPoly { vars: vars.to_vec(), node: Node::zero(vars.len()) }
    }

    pub fn constant(vars: &[Symbol], c: Rat) -> Self {
        MPoly { vars: vars.to_vec(), node: Node::lift(c, vars.len()) }
    }

    pub fn int(vars: &[Symbol], n: i64) -> Self {
        MPoly::constant(vars, Rat::from_i64(n))
    }

    pub fn one(vars: &[Symbol]) -> Self {
        MPoly::constant(vars, Rat::one())
    }

    pub fn var(vars: &[Symbol], sym: &Symbol) -> Self {
        let level = vars.iter().position(|v| v == sym).expect("variable not in ring");
        // the list [0, 1] at the variable's level, wrapped in singleton
        // lists up to the top
        let mut node = Node::P(vec![Node::zero(level), Node::lift(Rat::one(), level)]);
        for _ in level + 1..vars.len() {
            node = Node::P(vec![node]);
        }
        MPoly { vars: vars.to_vec(), node }
    }

    pub fn vars(&self) -> &[Symbol] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.node.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.as_rat().is_some()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        let mut n = &self.node;
        loop {
            match n {
                Node::C(c) => return Some(c.clone()),
                Node::P(v) => match v.len() {
                    0 => return Some(Rat::zero()),
                    1 => n = &v[0],
                    _ => return None,
                },
            }
        }
    }

    fn assert_same_vars(&self, other: &Self) {
        assert!(self.vars == other.vars, "mixed variable rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        MPoly { vars: self.vars.clone(), node: self.node.add(&other.node) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly { vars: self.vars.clone(), node: self.node.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        MPoly { vars: self.vars.clone(), node: self.node.mul(&other.node) }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul(&MPoly::constant(&self.vars, c.clone()))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = MPoly::one(&self.vars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree_in(&self, var: &Symbol) -> usize {
        match self.vars.iter().position(|v| v == var) {
            Some(level) => {
                let depth_from_top = self.vars.len() - 1 - level;
                degree_at(&self.node, depth_from_top)
            }
            None => 0,
        }
    }

    pub fn total_degree(&self) -> usize {
        self.monomials()
            .iter()
            .map(|(exps, _)| exps.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Monomial list as (exponent vector in `vars` order, coefficient),
    /// nonzero coefficients only, deterministic order.
    pub fn monomials(&self) -> Vec<(Vec<usize>, Rat)> {
        let mut out = Vec::new();
        let mut exps = vec![0usize; self.vars.len()];
        collect_monomials(&self.node, self.vars.len(), &mut exps, &mut out);
        out
    }

    pub fn from_monomials(vars: &[Symbol], items: &[(Vec<usize>, Rat)]) -> Self {
        let mut acc = MPoly::zero(vars);
        for (exps, c) in items {
            assert_eq!(exps.len(), vars.len());
            let mut term = MPoly::constant(vars, c.clone());
            for (k, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&MPoly::var(vars, &vars[k]).pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Rebase onto a variable list containing every variable this polynomial
    /// actually uses.
    pub fn reorder_vars(&self, new_vars: &[Symbol]) -> Self {
        let items: Vec<(Vec<usize>, Rat)> = self
            .monomials()
            .into_iter()
            .map(|(exps, c)| {
                let mut new_exps = vec![0usize; new_vars.len()];
                for (k, e) in exps.iter().enumerate() {
                    if *e > 0 {
                        let pos = new_vars
                            .iter()
                            .position(|v| *v == self.vars[k])
                            .expect("variable missing from new ring");
                        new_exps[pos] = *e;
                    }
                }
                (new_exps, c)
            })
            .collect();
        MPoly::from_monomials(new_vars, &items)
    }

    /// Full evaluation; `vals` in `vars` order.
    pub fn eval_rat(&self, vals: &[Rat]) -> Rat {
        assert_eq!(vals.len(), self.vars.len());
        eval_node(&self.node, self.vars.len(), vals)
    }

    /// Substitute rationals for a subset of the variables.
    pub fn subst(&self, map: &[(Symbol, Rat)]) -> Self {
        let items: Vec<(Vec<usize>, Rat)> = self
            .monomials()
            .into_iter()
            .map(|(mut exps, mut c)| {
                for (sym, val) in map {
                    if let Some(k) = self.vars.iter().position(|v| v == sym) {
                        c = &c * &val.pow(exps[k] as u32);
                        exps[k] = 0;
                    }
                }
                (exps, c)
            })
            .collect();
        MPoly::from_monomials(&self.vars, &items)
    }

    pub fn derivative_in(&self, var: &Symbol) -> Self {
        let k = match self.vars.iter().position(|v| v == var) {
            Some(k) => k,
            None => return MPoly::zero(&self.vars),
        };
        let items: Vec<(Vec<usize>, Rat)> = self
            .monomials()
            .into_iter()
            .filter_map(|(mut exps, c)| {
                if exps[k] == 0 {
                    return None;
                }
                let e = exps[k];
                exps[k] -= 1;
                Some((exps, &c * &Rat::from_i64(e as i64)))
            })
            .collect();
        MPoly::from_monomials(&self.vars, &items)
    }

    /// View as a univariate polynomial in `var` when no other variable
    /// occurs.
    pub fn as_univariate_in(&self, var: &Symbol) -> Option<Poly<RationalField>> {
        for v in &self.vars {
            if v != var && self.degree_in(v) > 0 {
                return None;
            }
        }
        let d = self.degree_in(var);
        let pos = self.vars.iter().position(|v| v == var);
        let mut coeffs = vec![Rat::zero(); d + 1];
        for (exps, c) in self.monomials() {
            let k = pos.map(|i| exps[i]).unwrap_or(0);
            coeffs[k] = &coeffs[k] + &c;
        }
        Some(Poly::from_coeffs(var.clone(), coeffs, &RationalField))
    }

    pub fn from_unipoly(vars: &[Symbol], p: &Poly<RationalField>) -> Self {
        let x = MPoly::var(vars, p.variable());
        let mut acc = MPoly::zero(vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            acc = acc.add(&MPoly::constant(vars, c.clone()).mul(&x.pow(k)));
        }
        acc
    }

    /// Variables that occur with positive degree, in ring order.
    pub fn present_vars(&self) -> Vec<Symbol> {
        self.vars
            .iter()
            .filter(|v| self.degree_in(v) > 0)
            .cloned()
            .collect()
    }

    /// Coefficients in `var`, ascending, each over the same ring with degree
    /// 0 in `var`; at least one entry, trailing zeros trimmed.
    pub fn coeffs_in(&self, var: &Symbol) -> Vec<MPoly> {
        let d = self.degree_in(var);
        let k = self.vars.iter().position(|v| v == var).expect("var not in ring");
        let mut out = vec![MPoly::zero(&self.vars); d + 1];
        for (exps, c) in self.monomials() {
            let e = exps[k];
            let mut rest = exps.clone();
            rest[k] = 0;
            out[e] = out[e].add(&MPoly::from_monomials(&self.vars, &[(rest, c)]));
        }
        while out.len() > 1 && out.last().unwrap().is_zero() {
            out.pop();
        }
        out
    }

    pub fn from_coeffs_in(vars: &[Symbol], var: &Symbol, coeffs: &[MPoly]) -> Self {
        let x = MPoly::var(vars, var);
        let mut acc = MPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&x.pow(k)));
        }
        acc
    }

    /// Canonical normalization for constraint sets: integer coefficients,
    /// primitive, positive leading coefficient in the monomial order.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let monos = self.monomials();
        let mut den = num_bigint::BigInt::from(1);
        for (_, c) in &monos {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<num_bigint::BigInt> = monos
            .iter()
            .map(|(_, c)| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = num_bigint::BigInt::from(0);
        for c in &ints {
            content = num_integer::gcd(content, c.clone());
        }
        let lead = monos
            .iter()
            .zip(&ints)
            .max_by(|a, b| mono_cmp(&a.0 .0, &b.0 .0))
            .unwrap();
        if num_traits::Signed::is_negative(lead.1) {
            content = -content;
        }
        let items: Vec<(Vec<usize>, Rat)> = monos
            .iter()
            .zip(&ints)
            .map(|((e, _), c)| (e.clone(), Rat::from_int(c / &content)))
            .collect();
        MPoly::from_monomials(&self.vars, &items)
    }

    /// Exact division; `None` when not divisible.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        self.assert_same_vars(g);
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = g.as_rat() {
            return Some(self.scale(&c.inv().ok()?));
        }
        let var = g.present_vars().pop().unwrap();
        let gc = g.coeffs_in(&var);
        let glc = gc.last().unwrap();
        let gd = gc.len() - 1;
        let mut rem = self.coeffs_in(&var);
        if rem.len() < gc.len() {
            return None;
        }
        let mut quot = vec![MPoly::zero(&self.vars); rem.len() - gd];
        for k in (gd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = rem[k].exact_div(glc)?;
            for (j, gj) in gc.iter().enumerate() {
                rem[k - gd + j] = rem[k - gd + j].sub(&q.mul(gj));
            }
            quot[k - gd] = q;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(MPoly::from_coeffs_in(&self.vars, &var, &quot))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Evaluate into any coefficient field via a full variable assignment.
    pub fn eval_generic<F: Field>(&self, f: &F, vals: &[F::El]) -> F::El {
        assert_eq!(vals.len(), self.vars.len());
        eval_node_generic(&self.node, self.vars.len(), vals, f)
    }
}

/// The shared monomial order: total degree first, then the later-declared
/// variable ranks higher. Both the canonical printer and the sign
/// normalization use it, so normalized polynomials print with a positive
/// leading term.
pub fn mono_cmp(a: &[usize], b: &[usize]) -> Ordering {
    let ta: usize = a.iter().sum();
    let tb: usize = b.iter().sum();
    ta.cmp(&tb).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    })
}

fn degree_at(node: &Node, depth_from_top: usize) -> usize {
    match node {
        Node::C(_) => 0,
        Node::P(v) => {
            if depth_from_top == 0 {
                v.len().saturating_sub(1)
            } else {
                v.iter()
                    .map(|n| degree_at(n, depth_from_top - 1))
                    .max()
                    .unwrap_or(0)
            }
        }
    }
}

fn collect_monomials(
    node: &Node,
    level: usize,
    exps: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Rat)>,
) {
    match node {
        Node::C(c) => {
            debug_assert_eq!(level, 0);
            if !c.is_zero() {
                out.push((exps.clone(), c.clone()));
            }
        }
        Node::P(v) => {
            for (k, n) in v.iter().enumerate() {
                exps[level - 1] = k;
                collect_monomials(n, level - 1, exps, out);
            }
            exps[level - 1] = 0;
        }
    }
}

fn eval_node(node: &Node, level: usize, vals: &[Rat]) -> Rat {
    match node {
        Node::C(c) => c.clone(),
        Node::P(v) => {
            let x = &vals[level - 1];
            let mut acc = Rat::zero();
            for n in v.iter().rev() {
                acc = &(&acc * x) + &eval_node(n, level - 1, vals);
            }
            acc
        }
    }
}

fn eval_node_generic<F: Field>(node: &Node, level: usize, vals: &[F::El], f: &F) -> F::El {
    match node {
        Node::C(c) => f.from_rat(c),
        Node::P(v) => {
            let x = &vals[level - 1];
            let mut acc = f.zero();
            for n in v.iter().rev() {
                acc = f.add(&f.mul(&acc, x), &eval_node_generic(n, level - 1, vals, f));
            }
            acc
        }
    }
}

// ---------------------------------------------------------------------------
// Multivariate gcd (primitive pseudo-remainder sequences)
// ---------------------------------------------------------------------------

/// gcd over Q[vars], normalized (integer-primitive, positive lead).
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.vars());
    }
    let var = a
        .vars()
        .iter()
        .rev()
        .find(|v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .cloned()
        .unwrap();
    let ac = a.coeffs_in(&var);
    let bc = b.coeffs_in(&var);
    let zero = MPoly::zero(a.vars());
    let cont_a = ac.iter().fold(zero.clone(), |g, c| mpoly_gcd(&g, c));
    let cont_b = bc.iter().fold(zero.clone(), |g, c| mpoly_gcd(&g, c));
    let cont = mpoly_gcd(&cont_a, &cont_b);
    let prim_a: Vec<MPoly> = ac.iter().map(|c| c.exact_div(&cont_a).unwrap()).collect();
    let prim_b: Vec<MPoly> = bc.iter().map(|c| c.exact_div(&cont_b).unwrap()).collect();

    let mut u = prim_a;
    let mut v = prim_b;
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        if v.len() == 1 {
            if !v[0].is_zero() {
                u = vec![MPoly::one(a.vars())];
            }
            break;
        }
        let r = pseudo_rem_mp(&u, &v);
        u = v;
        if r.is_empty() {
            break;
        }
        v = primitive_part_vec(&r, a.vars());
    }
    let prim_gcd = MPoly::from_coeffs_in(a.vars(), &var, &u);
    cont.mul(&prim_gcd).normalized()
}

/// Pseudo-remainder of coefficient vectors (ascending) in a common variable.
fn pseudo_rem_mp(f: &[MPoly], g: &[MPoly]) -> Vec<MPoly> {
    let dg = g.len() - 1;
    let lcg = g.last().unwrap();
    let mut r: Vec<MPoly> = f.to_vec();
    while r.len() > dg {
        let k = r.len() - 1;
        let c = r[k].clone();
        if c.is_zero() {
            r.pop();
            continue;
        }
        // r := lcg*r - c*x^(k-dg)*g  (top coefficient cancels)
        for item in r.iter_mut() {
            *item = item.mul(lcg);
        }
        for (j, gj) in g.iter().enumerate() {
            r[k - dg + j] = r[k - dg + j].sub(&c.mul(gj));
        }
        debug_assert!(r[k].is_zero());
        while r.last().map_or(false, |x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive_part_vec(v: &[MPoly], vars: &[Symbol]) -> Vec<MPoly> {
    let cont = v.iter().fold(MPoly::zero(vars), |g, c| mpoly_gcd(&g, c));
    v.iter().map(|c| c.exact_div(&cont).unwrap()).collect()
}

pub fn mpoly_lcm(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() || b.is_zero() {
        return MPoly::zero(a.vars());
    }
    let g = mpoly_gcd(a, b);
    a.mul(b).exact_div(&g).unwrap().normalized()
}

/// Square-free part with respect to every occurring variable, normalized.
pub fn mpoly_squarefree_part(f: &MPoly) -> MPoly {
    if f.is_zero() || f.is_constant() {
        return f.normalized();
    }
    let mut out = f.clone();
    for v in f.present_vars() {
        let d = out.derivative_in(&v);
        if d.is_zero() {
            continue;
        }
        let g = mpoly_gcd(&out, &d);
        out = out.exact_div(&g).unwrap();
    }
    out.normalized()
}

/// A matrix of parameter polynomials, the input form for problems.
#[derive(Clone, PartialEq)]
pub struct MMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<MPoly>,
}

impl MMat {
    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        MMat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &MPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn map(&self, mut f: impl FnMut(&MPoly) -> MPoly) -> Self {
        MMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| f(e)).collect(),
        }
    }

    pub fn max_degree_in(&self, var: &Symbol) -> usize {
        self.entries.iter().map(|e| e.degree_in(var)).max().unwrap_or(0)
    }
}

impl fmt::Debug for MMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| crate::text::mpoly_to_string(self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::mpoly_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Vec<Symbol> {
        vec![Symbol::new("y"), Symbol::new("z"), Symbol::new("x")]
    }

    fn v(name: &str) -> MPoly {
        MPoly::var(&ring(), &Symbol::new(name))
    }

    #[test]
    fn arithmetic_and_degrees() {
        let p = v("x").mul(&v("y")).add(&v("z").pow(2));
        assert_eq!(p.degree_in(&Symbol::new("x")), 1);
        assert_eq!(p.degree_in(&Symbol::new("y")), 1);
        assert_eq!(p.degree_in(&Symbol::new("z")), 2);
        assert_eq!(p.total_degree(), 2);
        assert!(p.sub(&p).is_zero());
        // canonical: x*y built two ways is structurally equal
        let q = v("y").mul(&v("x"));
        assert_eq!(q, v("x").mul(&v("y")));
    }

    #[test]
    fn eval_and_subst() {
        let p = v("x").mul(&v("y")).add(&v("z").pow(2));
        let val = p.eval_rat(&[Rat::from_i64(2), Rat::from_i64(3), Rat::from_i64(5)]);
        assert_eq!(val, Rat::from_i64(19));
        let q = p.subst(&[(Symbol::new("z"), Rat::from_i64(3))]);
        assert_eq!(q, v("x").mul(&v("y")).add(&MPoly::int(&ring(), 9)));
    }

    #[test]
    fn exact_division() {
        let p = v("x").add(&v("y"));
        let q = v("x").sub(&v("y"));
        let prod = p.mul(&q);
        assert_eq!(prod.exact_div(&p).unwrap(), q);
        assert!(prod.exact_div(&v("z")).is_none());
        assert!(p.divides(&prod));
    }

    #[test]
    fn gcd_multivariate() {
        let p = v("x").add(&v("y"));
        let a = p.mul(&v("x").sub(&v("z")));
        let b = p.mul(&v("y").add(&MPoly::one(&ring())));
        assert_eq!(mpoly_gcd(&a, &b), p.normalized());
        assert_eq!(mpoly_gcd(&v("x").sub(&v("y")), &v("x").add(&v("y"))), MPoly::one(&ring()));
        // gcd with zero
        assert_eq!(mpoly_gcd(&MPoly::zero(&ring()), &p), p.normalized());
    }

    #[test]
    fn lcm_and_squarefree() {
        let p = v("y");
        let q = v("y").sub(&MPoly::one(&ring()));
        let l = mpoly_lcm(&p, &q.mul(&p));
        assert_eq!(l, p.mul(&q).normalized());
        let s = mpoly_squarefree_part(&p.pow(2).mul(&q));
        assert_eq!(s, p.mul(&q).normalized());
    }

    #[test]
    fn normalized_is_integer_primitive() {
        let p = v("y")
            .scale(&Rat::from_i64s(-2, 3))
            .add(&v("z").scale(&Rat::from_i64s(1, 2)));
        let n = p.normalized();
        assert!(n.monomials().iter().all(|(_, c)| c.is_integer()));
        // idempotent
        assert_eq!(n.normalized(), n);
        // sign convention: same up to sign regardless of input sign
        assert_eq!(p.neg().normalized(), n);
    }

    #[test]
    fn reorder_roundtrip() {
        let p = v("x").mul(&v("y")).add(&v("z"));
        let new_ring = vec![Symbol::new("x"), Symbol::new("z"), Symbol::new("y")];
        let q = p.reorder_vars(&new_ring);
        assert_eq!(q.reorder_vars(&ring()), p);
    }

    #[test]
    fn univariate_view() {
        let p = v("y").pow(2).add(&MPoly::int(&ring(), 14).mul(&v("y"))).add(&MPoly::one(&ring()));
        let u = p.as_univariate_in(&Symbol::new("y")).unwrap();
        assert_eq!(u.degree(), Some(2));
        assert!(p.as_univariate_in(&Symbol::new("x")).is_none());
        let back = MPoly::from_unipoly(&ring(), &u);
        assert_eq!(back, p);
    }
}
