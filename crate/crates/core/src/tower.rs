//! Parameterized extension fields: towers over the rationals where each step
//! adjoins a parameter either as a transcendental (fraction field) or as an
//! algebraic element (quotient by a monic square-free modulus).
//!
//! Layout invariant: transcendental steps always precede algebraic steps.
//! Fractions therefore only ever live over all-transcendental prefixes,
//! which makes the ring operations (add/sub/mul/neg) total: the only
//! fallible operation is inversion, and its interesting failure is the
//! dynamic-evaluation split. A modulus is required to be monic, nonconstant,
//! and square-free, but not irreducible; when an inversion meets a zero
//! divisor, it reports the discovered coprime factorization of the modulus
//! as a [`SplitSignal`] and the caller forks the tower and reruns.
//!
//! Element representation (canonical, structural equality is equality):
//! * depth 0: a rational;
//! * transcendental layer: a reduced fraction of polynomials in the layer
//!   parameter with a monic denominator;
//! * algebraic layer: a polynomial representative of degree below the
//!   modulus, with denominator 1.

use crate::factor::factor_rationals;
use crate::field::{ArithError, Field, SplitSignal};
use crate::mpoly::{mpoly_gcd, mpoly_lcm, MPoly};
use crate::poly::{xgcd, Poly};
use crate::rat::Rat;
use crate::symbol::Symbol;

#[derive(Clone, PartialEq)]
pub enum TowerElem {
    Base(Rat),
    Ext(Box<Frac>),
}

#[derive(Clone, PartialEq)]
pub struct Frac {
    /// Ascending coefficients (over the prefix tower) in the layer
    /// parameter; empty means zero.
    pub num: Vec<TowerElem>,
    /// Monic; exactly `[1]` at algebraic layers.
    pub den: Vec<TowerElem>,
}

impl std::fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TowerElem::Base(q) => write!(f, "{q}"),
            TowerElem::Ext(fr) => write!(f, "({:?})/({:?})", fr.num, fr.den),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum StepKind {
    Transcendental,
    Algebraic { modulus: Vec<TowerElem> },
}

#[derive(Clone, PartialEq, Debug)]
pub struct Step {
    pub param: Symbol,
    pub kind: StepKind,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Tower {
    steps: Vec<Step>,
}

/// A borrowed prefix of a tower; the working field for layer arithmetic.
#[derive(Clone, Copy)]
pub(crate) struct Layer<'a>(pub &'a [Step]);

impl std::fmt::Debug for Layer<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Layer(depth {})", self.0.len())
    }
}

impl<'a> Layer<'a> {
    fn depth(&self) -> usize {
        self.0.len()
    }

    fn prefix(&self) -> Layer<'a> {
        Layer(&self.0[..self.0.len() - 1])
    }

    fn top(&self) -> &'a Step {
        self.0.last().unwrap()
    }

    fn num_poly(&self, e: &Frac) -> Poly<Layer<'a>> {
        Poly::from_coeffs(self.top().param.clone(), e.num.clone(), &self.prefix())
    }

    fn den_poly(&self, e: &Frac) -> Poly<Layer<'a>> {
        Poly::from_coeffs(self.top().param.clone(), e.den.clone(), &self.prefix())
    }

    fn modulus_poly(&self) -> Poly<Layer<'a>> {
        match &self.top().kind {
            StepKind::Algebraic { modulus } => {
                Poly::from_coeffs(self.top().param.clone(), modulus.clone(), &self.prefix())
            }
            StepKind::Transcendental => unreachable!("no modulus at transcendental layer"),
        }
    }

    fn wrap(&self, num: Poly<Layer<'a>>, den: Poly<Layer<'a>>) -> TowerElem {
        TowerElem::Ext(Box::new(Frac { num: num.into_coeffs(), den: den.into_coeffs() }))
    }

    /// Build a reduced fraction at a transcendental layer. The prefix of a
    /// transcendental layer is all-transcendental, so gcd and leading
    /// coefficient inversion cannot split.
    fn make_frac(&self, num: Poly<Layer<'a>>, den: Poly<Layer<'a>>) -> TowerElem {
        let pref = self.prefix();
        assert!(!den.is_zero(), "fraction with zero denominator");
        if num.is_zero() {
            return self.wrap(num, Poly::one(self.top().param.clone(), &pref));
        }
        let g = pref
            .poly_gcd(&num, &den)
            .expect("gcd below a transcendental layer cannot split");
        let (num, den) = if g.degree().map_or(false, |d| d > 0) {
            (
                num.exact_div(&g, &pref).expect("gcd divides"),
                den.exact_div(&g, &pref).expect("gcd divides"),
            )
        } else {
            (num, den)
        };
        let lc_inv = pref
            .inv(den.lc().unwrap())
            .expect("denominator lead is invertible below a transcendental layer");
        self.wrap(num.scale(&lc_inv, &pref), den.scale(&lc_inv, &pref))
    }

    /// Build a reduced representative at an algebraic layer.
    fn make_alg(&self, rep: Poly<Layer<'a>>) -> TowerElem {
        let pref = self.prefix();
        let m = self.modulus_poly();
        let rep = if rep.degree() >= m.degree() {
            rep.divrem_monic(&m, &pref).1
        } else {
            rep
        };
        self.wrap(rep, Poly::one(self.top().param.clone(), &pref))
    }

    fn frac<'e>(&self, e: &'e TowerElem) -> &'e Frac {
        match e {
            TowerElem::Ext(f) => f,
            TowerElem::Base(_) => panic!("element of wrong depth for this layer"),
        }
    }
}

impl<'a> Field for Layer<'a> {
    type El = TowerElem;

    fn zero(&self) -> TowerElem {
        self.from_rat(&Rat::zero())
    }

    fn one(&self) -> TowerElem {
        self.from_rat(&Rat::one())
    }

    fn from_rat(&self, q: &Rat) -> TowerElem {
        if self.depth() == 0 {
            return TowerElem::Base(q.clone());
        }
        let pref = self.prefix();
        let below = pref.from_rat(q);
        let num = if pref.is_zero(&below) { vec![] } else { vec![below] };
        TowerElem::Ext(Box::new(Frac { num, den: vec![pref.one()] }))
    }

    fn is_zero(&self, a: &TowerElem) -> bool {
        match a {
            TowerElem::Base(q) => q.is_zero(),
            TowerElem::Ext(f) => f.num.is_empty(),
        }
    }

    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        if self.depth() == 0 {
            return match (a, b) {
                (TowerElem::Base(x), TowerElem::Base(y)) => TowerElem::Base(x + y),
                _ => panic!("depth mismatch"),
            };
        }
        let pref = self.prefix();
        let (fa, fb) = (self.frac(a), self.frac(b));
        let (na, da) = (self.num_poly(fa), self.den_poly(fa));
        let (nb, db) = (self.num_poly(fb), self.den_poly(fb));
        match self.top().kind {
            StepKind::Transcendental => {
                let num = na.mul(&db, &pref).add(&nb.mul(&da, &pref), &pref);
                let den = da.mul(&db, &pref);
                self.make_frac(num, den)
            }
            StepKind::Algebraic { .. } => self.make_alg(na.add(&nb, &pref)),
        }
    }

    fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &TowerElem) -> TowerElem {
        match a {
            TowerElem::Base(q) => TowerElem::Base(-q),
            TowerElem::Ext(f) => {
                let pref = self.prefix();
                TowerElem::Ext(Box::new(Frac {
                    num: f.num.iter().map(|c| pref.neg(c)).collect(),
                    den: f.den.clone(),
                }))
            }
        }
    }

    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        if self.depth() == 0 {
            return match (a, b) {
                (TowerElem::Base(x), TowerElem::Base(y)) => TowerElem::Base(x * y),
                _ => panic!("depth mismatch"),
            };
        }
        let pref = self.prefix();
        let (fa, fb) = (self.frac(a), self.frac(b));
        let (na, nb) = (self.num_poly(fa), self.num_poly(fb));
        match self.top().kind {
            StepKind::Transcendental => {
                let (da, db) = (self.den_poly(fa), self.den_poly(fb));
                self.make_frac(na.mul(&nb, &pref), da.mul(&db, &pref))
            }
            StepKind::Algebraic { .. } => self.make_alg(na.mul(&nb, &pref)),
        }
    }

    fn inv(&self, a: &TowerElem) -> Result<TowerElem, ArithError> {
        if self.is_zero(a) {
            return Err(ArithError::DivisionByZero);
        }
        match a {
            TowerElem::Base(q) => Ok(TowerElem::Base(q.inv()?)),
            TowerElem::Ext(f) => {
                let pref = self.prefix();
                match self.top().kind {
                    StepKind::Transcendental => {
                        let num = self.den_poly(f);
                        let den = self.num_poly(f);
                        Ok(self.make_frac(num, den))
                    }
                    StepKind::Algebraic { .. } => {
                        let rep = self.num_poly(f);
                        let m = self.modulus_poly();
                        let (g, s, _t) = xgcd(&rep, &m, &pref)?;
                        let dg = g.degree().expect("gcd of nonzero inputs");
                        if dg == 0 {
                            // g = 1 (monic): s*rep = 1 mod m
                            return Ok(self.make_alg(s));
                        }
                        assert!(
                            dg < m.degree().unwrap(),
                            "reduced representative cannot be a multiple of the modulus"
                        );
                        let cof = m.divrem_monic(&g, &pref).0;
                        Err(ArithError::ZeroDivisorSplit(SplitSignal {
                            layer: self.depth() - 1,
                            param: self.top().param.clone(),
                            f1: g.into_coeffs(),
                            f2: cof.into_coeffs(),
                        }))
                    }
                }
            }
        }
    }

    fn el_string(&self, a: &TowerElem) -> String {
        let (num, den) = clear_elem(self.0, a);
        if den.as_rat().map_or(false, |c| c.is_one()) {
            crate::text::mpoly_to_string(&num)
        } else {
            format!(
                "({})/({})",
                crate::text::mpoly_to_string(&num),
                crate::text::mpoly_to_string(&den)
            )
        }
    }

    fn param_degree(&self, a: &TowerElem) -> usize {
        param_degree_elem(a)
    }
}

fn param_degree_elem(e: &TowerElem) -> usize {
    match e {
        TowerElem::Base(_) => 0,
        TowerElem::Ext(f) => {
            let own = f.num.len().max(f.den.len()).saturating_sub(1);
            let inner = f
                .num
                .iter()
                .chain(f.den.iter())
                .map(param_degree_elem)
                .max()
                .unwrap_or(0);
            own.max(inner)
        }
    }
}

impl Field for Tower {
    type El = TowerElem;

    fn zero(&self) -> TowerElem {
        Layer(&self.steps).zero()
    }
    fn one(&self) -> TowerElem {
        Layer(&self.steps).one()
    }
    fn is_zero(&self, a: &TowerElem) -> bool {
        Layer(&self.steps).is_zero(a)
    }
    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        Layer(&self.steps).add(a, b)
    }
    fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        Layer(&self.steps).sub(a, b)
    }
    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        Layer(&self.steps).mul(a, b)
    }
    fn neg(&self, a: &TowerElem) -> TowerElem {
        Layer(&self.steps).neg(a)
    }
    fn inv(&self, a: &TowerElem) -> Result<TowerElem, ArithError> {
        Layer(&self.steps).inv(a)
    }
    fn from_rat(&self, q: &Rat) -> TowerElem {
        Layer(&self.steps).from_rat(q)
    }
    fn el_string(&self, a: &TowerElem) -> String {
        Layer(&self.steps).el_string(a)
    }
    fn param_degree(&self, a: &TowerElem) -> usize {
        param_degree_elem(a)
    }
}

impl Tower {
    /// The empty tower: plain rationals.
    pub fn rationals() -> Tower {
        Tower { steps: Vec::new() }
    }

    pub(crate) fn from_steps(steps: Vec<Step>) -> Tower {
        Tower { steps }
    }

    /// A purely transcendental tower over the given parameters, in order.
    pub fn transcendental(params: &[Symbol]) -> Tower {
        Tower {
            steps: params
                .iter()
                .map(|p| Step { param: p.clone(), kind: StepKind::Transcendental })
                .collect(),
        }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn params(&self) -> Vec<Symbol> {
        self.steps.iter().map(|s| s.param.clone()).collect()
    }

    pub fn is_purely_transcendental(&self) -> bool {
        self.steps
            .iter()
            .all(|s| matches!(s.kind, StepKind::Transcendental))
    }

    /// Extend on top by an algebraic step. The modulus is given as ascending
    /// coefficients over the current tower; it must be monic and
    /// nonconstant, and the caller guarantees square-freeness.
    pub fn extended_algebraic(&self, param: Symbol, modulus: Vec<TowerElem>) -> Tower {
        assert!(modulus.len() >= 2, "algebraic modulus must be nonconstant");
        let layer = Layer(&self.steps);
        assert!(
            layer.is_one(modulus.last().unwrap()),
            "algebraic modulus must be monic"
        );
        assert!(
            !self.steps.iter().any(|s| s.param == param),
            "parameter already in tower"
        );
        let mut steps = self.steps.clone();
        steps.push(Step { param, kind: StepKind::Algebraic { modulus } });
        Tower { steps }
    }

    /// The canonical element representing the parameter at `index`.
    pub fn generator(&self, index: usize) -> TowerElem {
        assert!(index < self.steps.len());
        let layer = Layer(&self.steps[..=index]);
        let pref = layer.prefix();
        let var = layer.top().param.clone();
        let y = Poly::var(var.clone(), &pref);
        let mut e = match layer.top().kind {
            StepKind::Transcendental => layer.make_frac(y, Poly::one(var, &pref)),
            StepKind::Algebraic { .. } => layer.make_alg(y),
        };
        for d in index + 1..self.steps.len() {
            e = lift_once(&self.steps[..d], e);
        }
        e
    }

    pub fn generators(&self) -> Vec<TowerElem> {
        (0..self.steps.len()).map(|k| self.generator(k)).collect()
    }

    /// Evaluate a parameter polynomial (vars = tower params, in tower
    /// order) into the tower. Ring operations only; never splits.
    pub fn embed_mpoly(&self, p: &MPoly) -> TowerElem {
        let params = self.params();
        let q = p.reorder_vars(&params);
        q.eval_generic(self, &self.generators())
    }

    /// Evaluate a polynomial over params + `x` into `K[x]`.
    pub fn embed_as_poly(&self, p: &MPoly, x: &Symbol) -> Poly<Tower> {
        let params = self.params();
        let coeffs: Vec<TowerElem> = p
            .coeffs_in(x)
            .iter()
            .map(|c| {
                if params.is_empty() {
                    self.from_rat(&c.as_rat().expect("no parameters to carry"))
                } else {
                    self.embed_mpoly(&c.reorder_vars(&params))
                }
            })
            .collect();
        Poly::from_coeffs(x.clone(), coeffs, self)
    }

    /// Fork the tower along a split signal: two towers whose layer
    /// `sig.layer` moduli are the coprime factors, with all higher moduli
    /// re-reduced. Only algebraic representatives change, so this never
    /// fails.
    pub fn fork(&self, sig: &SplitSignal) -> (Tower, Tower) {
        (self.fork_one(sig, &sig.f1), self.fork_one(sig, &sig.f2))
    }

    fn fork_one(&self, sig: &SplitSignal, factor: &[TowerElem]) -> Tower {
        let mut steps: Vec<Step> = self.steps[..sig.layer].to_vec();
        steps.push(Step {
            param: sig.param.clone(),
            kind: StepKind::Algebraic { modulus: factor.to_vec() },
        });
        for j in sig.layer + 1..self.steps.len() {
            let step = &self.steps[j];
            let kind = match &step.kind {
                StepKind::Transcendental => StepKind::Transcendental,
                StepKind::Algebraic { modulus } => StepKind::Algebraic {
                    modulus: modulus.iter().map(|c| renorm(&steps, c)).collect(),
                },
            };
            steps.push(Step { param: step.param.clone(), kind });
        }
        Tower { steps }
    }

    /// Re-reduce an element of an equal-shape tower (same parameters and
    /// kinds, possibly smaller moduli) into this tower.
    pub fn migrate(&self, e: &TowerElem) -> TowerElem {
        renorm(&self.steps, e)
    }

    /// Whether the polynomial (over the tower parameters) reduces to zero
    /// in the tower, i.e. vanishes identically on the tower's variety.
    pub fn vanishes(&self, p: &MPoly) -> bool {
        self.is_zero(&self.embed_mpoly(p))
    }
}

fn lift_once(prefix: &[Step], e: TowerElem) -> TowerElem {
    let pref = Layer(prefix);
    let num = if pref.is_zero(&e) { vec![] } else { vec![e] };
    TowerElem::Ext(Box::new(Frac { num, den: vec![pref.one()] }))
}

/// Canonicalize an element against (possibly re-reduced) moduli. Uses only
/// monic division, so it is total.
fn renorm(steps: &[Step], e: &TowerElem) -> TowerElem {
    match e {
        TowerElem::Base(q) => TowerElem::Base(q.clone()),
        TowerElem::Ext(f) => {
            let layer = Layer(steps);
            let prefix_steps = &steps[..steps.len() - 1];
            let pref = layer.prefix();
            let num: Vec<TowerElem> = f.num.iter().map(|c| renorm(prefix_steps, c)).collect();
            let den: Vec<TowerElem> = f.den.iter().map(|c| renorm(prefix_steps, c)).collect();
            let var = layer.top().param.clone();
            let num = Poly::from_coeffs(var.clone(), num, &pref);
            match layer.top().kind {
                StepKind::Transcendental => {
                    let den = Poly::from_coeffs(var, den, &pref);
                    layer.make_frac(num, den)
                }
                StepKind::Algebraic { .. } => layer.make_alg(num),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Clearing to flat polynomials
// ---------------------------------------------------------------------------

/// Flatten a tower element to `(numerator, denominator)` over the flat
/// polynomial ring in the tower parameters. The denominator is normalized
/// (integer-primitive, positive lead); rational content stays in the
/// numerator.
pub fn clear_elem(steps: &[Step], e: &TowerElem) -> (MPoly, MPoly) {
    let vars: Vec<Symbol> = steps.iter().map(|s| s.param.clone()).collect();
    let (n, d) = clear_rec(steps, &vars, e);
    normalize_pair(n, d, &vars)
}

fn normalize_pair(n: MPoly, d: MPoly, vars: &[Symbol]) -> (MPoly, MPoly) {
    if n.is_zero() {
        return (MPoly::zero(vars), MPoly::one(vars));
    }
    let g = mpoly_gcd(&n, &d);
    let n = n.exact_div(&g).unwrap();
    let d = d.exact_div(&g).unwrap();
    // scale so the denominator is exactly its normalized form
    let dn = d.normalized();
    let ratio = ratio_of(&d, &dn);
    (n.scale(&ratio.inv().expect("nonzero ratio")), dn)
}

/// The rational `r` with `a = r * b`, for `a`, `b` nonzero rational
/// multiples of each other.
fn ratio_of(a: &MPoly, b: &MPoly) -> Rat {
    let ma = a.monomials();
    let mb = b.monomials();
    debug_assert_eq!(ma.len(), mb.len());
    &ma[0].1 * &mb[0].1.inv().expect("nonzero monomial")
}

fn clear_rec(steps: &[Step], vars: &[Symbol], e: &TowerElem) -> (MPoly, MPoly) {
    match e {
        TowerElem::Base(q) => (MPoly::constant(vars, q.clone()), MPoly::one(vars)),
        TowerElem::Ext(f) => {
            let prefix = &steps[..steps.len() - 1];
            let y = MPoly::var(vars, &steps.last().unwrap().param);
            let (num_mp, num_den) = clear_side(prefix, vars, &y, &f.num);
            let (den_mp, den_den) = clear_side(prefix, vars, &y, &f.den);
            // e = (num_mp/num_den) / (den_mp/den_den)
            (num_mp.mul(&den_den), num_den.mul(&den_mp))
        }
    }
}

/// Clear a coefficient list: returns (flat polynomial, common denominator).
fn clear_side(prefix: &[Step], vars: &[Symbol], y: &MPoly, coeffs: &[TowerElem]) -> (MPoly, MPoly) {
    let mut dens = Vec::with_capacity(coeffs.len());
    let mut nums = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let (n, d) = clear_rec(prefix, vars, c);
        nums.push(n);
        dens.push(d);
    }
    let common = dens
        .iter()
        .fold(MPoly::one(vars), |acc, d| mpoly_lcm(&acc, d));
    let mut acc = MPoly::zero(vars);
    let mut ypow = MPoly::one(vars);
    for (n, d) in nums.iter().zip(&dens) {
        let scale = common.exact_div(d).unwrap();
        acc = acc.add(&n.mul(&scale).mul(&ypow));
        ypow = ypow.mul(y);
    }
    (acc, common)
}

/// Flatten a polynomial in `x` over the tower: `(numerator over params+x,
/// denominator over params)`.
pub fn clear_poly(tower: &Tower, p: &Poly<Tower>, x: &Symbol) -> (MPoly, MPoly) {
    let mut vars: Vec<Symbol> = tower.params();
    vars.push(x.clone());
    if p.is_zero() {
        return (MPoly::zero(&vars), MPoly::one(&vars));
    }
    let cleared: Vec<(MPoly, MPoly)> = p
        .coeffs()
        .iter()
        .map(|c| {
            let (n, d) = clear_elem(tower.steps(), c);
            (n.reorder_vars(&vars), d.reorder_vars(&vars))
        })
        .collect();
    let common = cleared
        .iter()
        .fold(MPoly::one(&vars), |acc, (_, d)| mpoly_lcm(&acc, d));
    let xm = MPoly::var(&vars, x);
    let mut acc = MPoly::zero(&vars);
    let mut xpow = MPoly::one(&vars);
    for (n, d) in &cleared {
        let scale = common.exact_div(d).unwrap();
        acc = acc.add(&n.mul(&scale).mul(&xpow));
        xpow = xpow.mul(&xm);
    }
    (acc, common)
}

// ---------------------------------------------------------------------------
// Denominator support
// ---------------------------------------------------------------------------

/// The square-free factors (fully irreducible when univariate) of the
/// denominators of a collection of tower elements: polynomials in the
/// parameters whose nonvanishing guarantees every input evaluates.
/// Deterministically ordered.
pub fn denominator_support<'e>(
    tower: &Tower,
    elems: impl IntoIterator<Item = &'e TowerElem>,
) -> Vec<MPoly> {
    let mut out = std::collections::BTreeSet::new();
    for e in elems {
        let (_, den) = clear_elem(tower.steps(), e);
        for f in support_factors(&den) {
            out.insert(f);
        }
    }
    out.into_iter().collect()
}

/// Square-free factor split of a flat parameter polynomial: irreducible
/// factors where the polynomial is univariate, content recursion plus
/// square-free (Yun) classes in the main variable otherwise.
pub fn support_factors(d: &MPoly) -> Vec<MPoly> {
    let mut out = std::collections::BTreeSet::new();
    collect_support(d, &mut out);
    out.into_iter().collect()
}

fn collect_support(d: &MPoly, out: &mut std::collections::BTreeSet<MPoly>) {
    if d.is_zero() || d.is_constant() {
        return;
    }
    let present = d.present_vars();
    if present.len() == 1 {
        let u = d.as_univariate_in(&present[0]).unwrap();
        let fac = factor_rationals(&u).expect("nonzero");
        for (p, _) in fac.factors {
            if p.degree().map_or(false, |k| k > 0) {
                out.insert(MPoly::from_unipoly(d.vars(), &p).normalized());
            }
        }
        return;
    }
    // content split along any variable peels off factors in fewer variables
    for v in &present {
        let coeffs = d.coeffs_in(v);
        let content = coeffs
            .iter()
            .fold(MPoly::zero(d.vars()), |g, c| mpoly_gcd(&g, c));
        if !content.is_constant() {
            collect_support(&content, out);
            collect_support(&d.exact_div(&content).unwrap(), out);
            return;
        }
    }
    // content-free in every variable: Yun square-free classes in the last
    // present variable; each class recurses (distinct multiplicities may
    // still be split by content along another variable)
    let v = present.last().unwrap().clone();
    let db = d.derivative_in(&v);
    let a0 = mpoly_gcd(d, &db);
    if a0.is_constant() {
        // square-free and content-free: keep as a single support factor
        out.insert(d.normalized());
        return;
    }
    let mut b = d.exact_div(&a0).unwrap();
    let mut c = db.exact_div(&a0).unwrap();
    let mut dd = c.sub(&b.derivative_in(&v));
    while b.degree_in(&v) > 0 {
        let a = mpoly_gcd(&b, &dd);
        if !a.is_constant() {
            collect_support(&a, out);
        }
        b = b.exact_div(&a).unwrap();
        c = dd.exact_div(&a).unwrap();
        dd = c.sub(&b.derivative_in(&v));
    }
    if !b.is_constant() {
        collect_support(&b, out);
    }
}

// ---------------------------------------------------------------------------
// Split-and-rerun driver
// ---------------------------------------------------------------------------

/// Run a computation over a tower, forking on zero-divisor splits and
/// rerunning each branch from scratch. Returns one result per terminal
/// branch, in deterministic order. Branching terminates because fork
/// strictly decreases a modulus degree.
pub fn run_with_splits<T>(
    tower: Tower,
    f: &mut impl FnMut(&Tower) -> Result<T, crate::error::Error>,
) -> Result<Vec<(Tower, T)>, crate::error::Error> {
    let mut work = vec![tower];
    let mut out = Vec::new();
    let mut fuel = 10_000usize;
    while let Some(t) = work.pop() {
        fuel = fuel.checked_sub(1).expect("split branching did not terminate");
        match f(&t) {
            Ok(v) => out.push((t, v)),
            Err(crate::error::Error::Arith(ArithError::ZeroDivisorSplit(sig))) => {
                let (t1, t2) = t.fork(&sig);
                // push in reverse so t1 is processed first
                work.push(t2);
                work.push(t1);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn q_of_y() -> Tower {
        Tower::transcendental(&[sym("y")])
    }

    /// Q[y]/(y^2 + 14y + 1)
    fn quad_ext() -> Tower {
        let t = Tower::rationals();
        let m = vec![
            t.from_i64(1),
            t.from_i64(14),
            t.from_i64(1),
        ];
        t.extended_algebraic(sym("y"), m)
    }

    #[test]
    fn transcendental_inverse() {
        let t = q_of_y();
        let y = t.generator(0);
        let yp1 = t.add(&y, &t.one());
        // inv(y/(y+1)) = (y+1)/y
        let e = t.div(&y, &yp1).unwrap();
        let inv = t.inv(&e).unwrap();
        assert_eq!(inv, t.div(&yp1, &y).unwrap());
        assert!(t.is_one(&t.mul(&e, &inv)));
        assert!(matches!(t.inv(&t.zero()), Err(ArithError::DivisionByZero)));
    }

    #[test]
    fn algebraic_inverse() {
        // in Q[y]/(y^2+14y+1): inv(y) = -y - 14,  y*(-y-14) = -y^2-14y = 1
        let t = quad_ext();
        let y = t.generator(0);
        let inv = t.inv(&y).unwrap();
        let expected = t.sub(&t.neg(&y), &t.from_i64(14));
        assert_eq!(inv, expected);
        assert!(t.is_one(&t.mul(&y, &inv)));
    }

    #[test]
    fn zero_divisor_splits() {
        // in Q[y]/(y^2-1): y-1 is a zero divisor; modulus splits into
        // (y-1)(y+1)
        let t = Tower::rationals().extended_algebraic(
            sym("y"),
            vec![Rat::from_i64(-1), Rat::zero(), Rat::one()]
                .into_iter()
                .map(TowerElem::Base)
                .collect(),
        );
        let y = t.generator(0);
        let e = t.sub(&y, &t.one());
        match t.inv(&e) {
            Err(ArithError::ZeroDivisorSplit(sig)) => {
                let (t1, t2) = t.fork(&sig);
                // each branch has a degree-1 modulus and e becomes 0 or
                // invertible
                let e1 = t1.migrate(&e);
                let e2 = t2.migrate(&e);
                let z1 = t1.is_zero(&e1);
                let z2 = t2.is_zero(&e2);
                assert!(z1 ^ z2, "e vanishes in exactly one branch");
                let (alive_t, alive_e) = if z1 { (t2, e2) } else { (t1, e1) };
                let inv = alive_t.inv(&alive_e).unwrap();
                assert!(alive_t.is_one(&alive_t.mul(&alive_e, &inv)));
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn splits_rerun_to_completion() {
        // invert y - 1 over Q[y]/(y^3 - y): forks until every branch
        // resolves; y^3 - y = y(y-1)(y+1) so one branch dies (element is 0)
        // and the others invert
        let t = Tower::rationals().extended_algebraic(
            sym("y"),
            vec![Rat::zero(), Rat::from_i64(-1), Rat::zero(), Rat::one()]
                .into_iter()
                .map(TowerElem::Base)
                .collect(),
        );
        let results = run_with_splits(t, &mut |tt: &Tower| {
            let y = tt.generator(0);
            let e = tt.sub(&y, &tt.one());
            if tt.is_zero(&e) {
                return Ok(None);
            }
            match tt.inv(&e) {
                Ok(v) => Ok(Some(v)),
                Err(e) => Err(crate::error::Error::from(e)),
            }
        })
        .unwrap();
        let dead: usize = results.iter().filter(|(_, v)| v.is_none()).count();
        assert_eq!(dead, 1);
        assert!(results.len() >= 2);
        // total degree of branch moduli equals 3
        let deg_sum: usize = results
            .iter()
            .map(|(t, _)| match &t.steps()[0].kind {
                StepKind::Algebraic { modulus } => modulus.len() - 1,
                _ => unreachable!(),
            })
            .sum();
        assert_eq!(deg_sum, 3);
    }

    #[test]
    fn clear_examples() {
        let t = q_of_y();
        let y = t.generator(0);
        let yp1 = t.add(&y, &t.one());
        let e = t.div(&y, &yp1).unwrap();
        let (n, d) = clear_elem(t.steps(), &e);
        assert_eq!(crate::text::mpoly_to_string(&n), "y");
        assert_eq!(crate::text::mpoly_to_string(&d), "y + 1");
        // constant 3 -> (3, 1)
        let (n, d) = clear_elem(t.steps(), &t.from_i64(3));
        assert_eq!(crate::text::mpoly_to_string(&n), "3");
        assert_eq!(crate::text::mpoly_to_string(&d), "1");
    }

    #[test]
    fn clear_poly_common_denominator() {
        // (1/z)*x + 1 over Q(z)[x] -> (x + z, z)
        let t = Tower::transcendental(&[sym("z")]);
        let z = t.generator(0);
        let zinv = t.inv(&z).unwrap();
        let p = Poly::from_coeffs(sym("x"), vec![t.one(), zinv], &t);
        let (n, d) = clear_poly(&t, &p, &sym("x"));
        assert_eq!(crate::text::mpoly_to_string(&n), "x + z");
        assert_eq!(crate::text::mpoly_to_string(&d), "z");
    }

    #[test]
    fn clear_roundtrip() {
        // re-embedding num/den reproduces the element
        let t = q_of_y();
        let y = t.generator(0);
        let ym1 = t.sub(&y, &t.one());
        let e = t.div(&t.add(&y.clone(), &t.from_i64(2)), &t.mul(&ym1, &y)).unwrap();
        let (n, d) = clear_elem(t.steps(), &e);
        let back = t
            .div(&t.embed_mpoly(&n), &t.embed_mpoly(&d))
            .unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn denominator_support_examples() {
        let t = q_of_y();
        let y = t.generator(0);
        let ym1 = t.sub(&y, &t.one());
        // {1/y, x/(y-1)}: support {y, y-1} (x-free elements here)
        let e1 = t.inv(&y).unwrap();
        let e2 = t.inv(&ym1).unwrap();
        let sup = denominator_support(&t, [&e1, &e2]);
        let strs: Vec<String> = sup.iter().map(crate::text::mpoly_to_string).collect();
        assert_eq!(strs, vec!["y - 1", "y"]);
        // {1/y^2}: square-free support {y}
        let e3 = t.inv(&t.mul(&y, &y)).unwrap();
        let sup = denominator_support(&t, [&e3]);
        let strs: Vec<String> = sup.iter().map(crate::text::mpoly_to_string).collect();
        assert_eq!(strs, vec!["y"]);
    }

    #[test]
    fn support_factors_multivariate() {
        let vars = vec![sym("y"), sym("z")];
        let d = parse_polynomial("(y - z)^2*(y + z)*z^2", &vars).unwrap();
        let f = support_factors(&d);
        let strs: Vec<String> = f.iter().map(crate::text::mpoly_to_string).collect();
        assert!(strs.contains(&"z".to_string()));
        assert!(strs.contains(&"z - y".to_string()));
        assert!(strs.contains(&"z + y".to_string()));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn embed_mpoly_matches_generators() {
        let t = quad_ext();
        let vars = vec![sym("y")];
        let p = parse_polynomial("y^2 + 14*y + 1", &vars).unwrap();
        // the modulus vanishes in the tower
        assert!(t.vanishes(&p));
        let q = parse_polynomial("y + 1", &vars).unwrap();
        assert!(!t.vanishes(&q));
    }

    #[test]
    fn tower_field_axioms_spot() {
        let t = quad_ext();
        let y = t.generator(0);
        let a = t.add(&t.mul(&y, &y), &t.from_i64(3));
        let b = t.sub(&y, &t.from_i64(5));
        let c = t.add(&y, &t.from_rat(&Rat::from_i64s(1, 2)));
        let left = t.mul(&a, &t.add(&b, &c));
        let right = t.add(&t.mul(&a, &b), &t.mul(&a, &c));
        assert_eq!(left, right);
    }

    proptest::proptest! {
        #[test]
        fn nonzero_elements_invert(n0 in -6i64..6, n1 in -6i64..6,
                                   d0 in -6i64..6, d1 in -6i64..6) {
            let t = q_of_y();
            let y = t.generator(0);
            let num = t.add(&t.mul(&y, &t.from_i64(n1)), &t.from_i64(n0));
            let den = t.add(&t.mul(&y, &t.from_i64(d1)), &t.from_i64(d0));
            proptest::prop_assume!(!t.is_zero(&num) && !t.is_zero(&den));
            let e = t.div(&num, &den).unwrap();
            let inv = t.inv(&e).unwrap();
            proptest::prop_assert!(t.is_one(&t.mul(&e, &inv)));
        }
    }
}
