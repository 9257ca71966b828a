//! The parametric linear system pipeline: denominator clearing, expansion of
//! a triangular Smith form into rank regimes, and the full solve that runs
//! the comprehensive triangular Smith enumeration and expands every regime.
//!
//! A solution regime carries a particular solution (rational expressions in
//! the distinguished variable over the regime's tower), a polynomial
//! nullspace basis, and the semialgebraic validity condition. The nullspace
//! basis is R * [[-H_r^{-1} H_2], [I]] with columns cleared to polynomial
//! form; when the triangular Smith form has nothing above its trailing
//! columns this is exactly R's trailing columns.

use crate::ctsnf::{
    ctsnf, tower_layer_modulus_cleared, CtsnfProblem, CtsnfSolution, Provenance, PrunedRegime,
    Ring, SemiAlgSet, SmithRegime, SolveOptions,
};
use crate::error::Error;
use crate::field::{ArithError, Field};
use crate::matrix::PMat;
use crate::mpoly::{mpoly_lcm, MMat, MPoly};
use crate::poly::{squarefree_part, Poly};
use crate::symbol::Symbol;
use crate::tower::{clear_poly, run_with_splits, StepKind, Tower};

/// A rational-function entry, used by the denominator-clearing front end.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    pub num: MPoly,
    pub den: MPoly,
}

impl RatPoly {
    pub fn poly(p: MPoly) -> Self {
        let one = MPoly::one(p.vars());
        RatPoly { num: p, den: one }
    }
}

/// A reduced fraction in `K_Y(x)`: monic denominator, gcd-free.
#[derive(Clone, Debug, PartialEq)]
pub struct RatX {
    pub num: Poly<Tower>,
    pub den: Poly<Tower>,
}

impl RatX {
    pub fn from_poly(p: Poly<Tower>, t: &Tower) -> Self {
        let var = p.variable().clone();
        RatX { num: p, den: Poly::one(var, t) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(num: Poly<Tower>, den: Poly<Tower>, t: &Tower) -> Result<Self, ArithError> {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let var = num.variable().clone();
            return Ok(RatX { num, den: Poly::one(var, t) });
        }
        let g = t.poly_gcd(&num, &den)?;
        let (num, den) = if g.degree().map_or(false, |d| d > 0) {
            (num.exact_div(&g, t)?, den.exact_div(&g, t)?)
        } else {
            (num, den)
        };
        let lc_inv = t.inv(den.lc().unwrap())?;
        Ok(RatX { num: num.scale(&lc_inv, t), den: den.scale(&lc_inv, t) })
    }

    pub fn add(&self, other: &Self, t: &Tower) -> Result<Self, ArithError> {
        let num = self
            .num
            .mul(&other.den, t)
            .add(&other.num.mul(&self.den, t), t);
        RatX::reduced(num, self.den.mul(&other.den, t), t)
    }

    pub fn sub(&self, other: &Self, t: &Tower) -> Result<Self, ArithError> {
        let num = self
            .num
            .mul(&other.den, t)
            .sub(&other.num.mul(&self.den, t), t);
        RatX::reduced(num, self.den.mul(&other.den, t), t)
    }

    pub fn mul_poly(&self, p: &Poly<Tower>, t: &Tower) -> Result<Self, ArithError> {
        RatX::reduced(self.num.mul(p, t), self.den.clone(), t)
    }

    pub fn div_poly(&self, p: &Poly<Tower>, t: &Tower) -> Result<Self, ArithError> {
        RatX::reduced(self.num.clone(), self.den.mul(p, t), t)
    }

    pub fn scale_rat(&self, c: &crate::rat::Rat, t: &Tower) -> Self {
        RatX { num: self.num.scale(&t.from_rat(c), t), den: self.den.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct PlsProblem {
    pub ring: Ring,
    pub matrix: MMat,
    /// Right-hand side; all zeros for homogeneous (nullspace) problems.
    pub rhs: Vec<MPoly>,
    pub constraint: SemiAlgSet,
    pub options: SolveOptions,
}

#[derive(Clone, Debug)]
pub struct PlsRegime {
    pub provenance: Provenance,
    pub rank: usize,
    pub tower: Tower,
    /// Particular solution, one entry per unknown.
    pub particular: Vec<RatX>,
    /// Polynomial nullspace basis, `n x (n - rank)` over the tower.
    pub nullspace: PMat<Tower>,
    pub constraint: SemiAlgSet,
}

#[derive(Clone, Debug)]
pub struct PlsSolution {
    pub regimes: Vec<PlsRegime>,
    pub pruned: Vec<PrunedRegime>,
    pub incomplete_coverage: bool,
    /// The CTSNF layer underneath, kept for verification and reporting.
    pub ctsnf: CtsnfSolution,
}

// ---------------------------------------------------------------------------
// Denominator clearing
// ---------------------------------------------------------------------------

/// Scale each row by the lcm of its denominators, producing a polynomial
/// problem with the same solutions on V(N, Z). Every denominator factor
/// must already be implied nonzero by the constraint set N.
pub fn clear_denominators(
    ring: &Ring,
    a: &[Vec<RatPoly>],
    b: &[RatPoly],
    constraint: &SemiAlgSet,
) -> Result<(MMat, Vec<MPoly>), Error> {
    assert_eq!(a.len(), b.len(), "matrix and right-hand side row counts differ");
    let vars = ring.all_vars();
    let mut rows = Vec::with_capacity(a.len());
    let mut rhs = Vec::with_capacity(a.len());
    for (row, bi) in a.iter().zip(b) {
        let mut l = MPoly::one(&vars);
        for e in row.iter().chain(std::iter::once(bi)) {
            l = mpoly_lcm(&l, &e.den.reorder_vars(&vars));
        }
        for factor in crate::tower::support_factors(&l) {
            if !constraint.nonzero.contains(&factor.normalized()) {
                return Err(Error::IllPosed {
                    denominator: crate::text::mpoly_to_string(&factor),
                });
            }
        }
        let scaled = |e: &RatPoly| -> MPoly {
            let num = e.num.reorder_vars(&vars);
            let den = e.den.reorder_vars(&vars);
            num.mul(&l.exact_div(&den).expect("lcm divisible by denominator"))
        };
        rows.push(row.iter().map(&scaled).collect::<Vec<_>>());
        rhs.push(scaled(bi));
    }
    Ok((MMat::from_rows(rows), rhs))
}

// ---------------------------------------------------------------------------
// Algorithm: expansion of one triangular Smith regime into rank regimes
// ---------------------------------------------------------------------------

struct RankRegime {
    rank: usize,
    particular: Vec<RatX>,
    nullspace_pre: PMat<Tower>,
    added: SemiAlgSet,
}

/// Expand a triangular Smith system `H u' = Ub` into rank regimes, ranks
/// descending. `H` is m x n over the tower; the index set contains every
/// rank r where the square-free quotient f_r has positive degree or is
/// zero, with s_0 = 1 and s_i = 0 beyond the diagonal.
fn triangular_smith_expand(
    ring: &Ring,
    tower: &Tower,
    h: &PMat<Tower>,
    ub: &[Poly<Tower>],
) -> Result<Vec<RankRegime>, ArithError> {
    let m = h.rows();
    let n = h.cols();
    let var = ring.var.clone();
    let diag_len = m.min(n);
    let s = |i: usize| -> Poly<Tower> {
        if i == 0 {
            Poly::one(var.clone(), tower)
        } else if i <= diag_len {
            h.at(i - 1, i - 1).clone()
        } else {
            Poly::zero(var.clone())
        }
    };
    // square-free parts of the nonzero diagonal entries
    let mut sqfr: Vec<Poly<Tower>> = Vec::with_capacity(n + 2);
    for i in 0..=n + 1 {
        let si = s(i);
        if si.is_zero() {
            sqfr.push(Poly::zero(var.clone()));
        } else {
            sqfr.push(squarefree_part(&si, tower)?);
        }
    }

    let mut out = Vec::new();
    for r in (0..=n).rev() {
        let sr = s(r);
        if sr.is_zero() {
            continue;
        }
        // f_r = sqfr(s_{r+1}) / sqfr(s_r), taken as 0 when s_{r+1} = 0
        let f_r = if sqfr[r + 1].is_zero() {
            Poly::zero(var.clone())
        } else {
            let (q, rem) = sqfr[r + 1].divrem_monic(&sqfr[r], tower);
            debug_assert!(rem.is_zero(), "square-free parts form a divisibility chain");
            q
        };
        let in_index_set = f_r.is_zero() || f_r.degree().map_or(false, |d| d > 0);
        if !in_index_set {
            continue;
        }

        let mut added = SemiAlgSet::full();
        // validity: s_r stays nonzero
        if !sr.is_constant() {
            let (num, _) = clear_poly(tower, &sr, &ring.var);
            added.insert_nonzero(&num.reorder_vars(&ring.all_vars()));
        }
        // rank drop: f_r vanishes (omitted at full rank r = n)
        if r < n && !f_r.is_zero() {
            let (num, _) = clear_poly(tower, &f_r, &ring.var);
            added.insert_zero(&num.reorder_vars(&ring.all_vars()));
        }
        // consistency: right-hand side entries at and beyond the rank vanish
        for bj in ub.iter().take(m).skip(r) {
            if bj.is_zero() {
                continue;
            }
            let (num, _) = clear_poly(tower, bj, &ring.var);
            added.insert_zero(&num.reorder_vars(&ring.all_vars()));
        }

        // particular solution: back-substitution on the leading r x r block
        let particular = back_substitute(tower, h, ub, r, &var)?;

        // nullspace: columns (-H_r^{-1} H[.., k], e_k) for k >= r, cleared
        let nullspace_pre = nullspace_columns(tower, h, r, n, &var)?;

        out.push(RankRegime { rank: r, particular, nullspace_pre, added });
    }
    Ok(out)
}

fn back_substitute(
    tower: &Tower,
    h: &PMat<Tower>,
    rhs: &[Poly<Tower>],
    r: usize,
    var: &Symbol,
) -> Result<Vec<RatX>, ArithError> {
    let mut u: Vec<RatX> = vec![RatX::from_poly(Poly::zero(var.clone()), tower); h.cols()];
    for i in (0..r).rev() {
        let mut acc = RatX::from_poly(rhs[i].clone(), tower);
        for j in i + 1..r {
            let t = u[j].mul_poly(h.at(i, j), tower)?;
            acc = acc.sub(&t, tower)?;
        }
        u[i] = acc.div_poly(h.at(i, i), tower)?;
    }
    Ok(u)
}

/// Cleared polynomial nullspace basis of the triangular system at rank `r`:
/// for each trailing column k the vector (-H_r^{-1} H[0..r][k], e_k), scaled
/// by the lcm of its denominators.
fn nullspace_columns(
    tower: &Tower,
    h: &PMat<Tower>,
    r: usize,
    n: usize,
    var: &Symbol,
) -> Result<PMat<Tower>, ArithError> {
    let mut cols: Vec<Vec<Poly<Tower>>> = Vec::new();
    for k in r..n {
        let rhs: Vec<Poly<Tower>> = (0..r).map(|i| h.at(i, k).neg(tower)).collect();
        let top = back_substitute_dense(tower, h, &rhs, r, var)?;
        // common denominator of the top block
        let mut l = Poly::one(var.clone(), tower);
        for e in &top {
            l = poly_lcm(tower, &l, &e.den)?;
        }
        let mut col: Vec<Poly<Tower>> = vec![Poly::zero(var.clone()); n];
        for (i, e) in top.iter().enumerate() {
            let scale = l.exact_div(&e.den, tower)?;
            col[i] = e.num.mul(&scale, tower);
        }
        col[k] = l;
        cols.push(col);
    }
    let rows: Vec<Vec<Poly<Tower>>> = (0..n)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    Ok(PMat::from_rows(var.clone(), rows, tower))
}

fn back_substitute_dense(
    tower: &Tower,
    h: &PMat<Tower>,
    rhs: &[Poly<Tower>],
    r: usize,
    var: &Symbol,
) -> Result<Vec<RatX>, ArithError> {
    let mut u: Vec<RatX> = vec![RatX::from_poly(Poly::zero(var.clone()), tower); r];
    for i in (0..r).rev() {
        let mut acc = RatX::from_poly(rhs[i].clone(), tower);
        for j in i + 1..r {
            let t = u[j].mul_poly(h.at(i, j), tower)?;
            acc = acc.sub(&t, tower)?;
        }
        u[i] = acc.div_poly(h.at(i, i), tower)?;
    }
    Ok(u)
}

fn poly_lcm(tower: &Tower, a: &Poly<Tower>, b: &Poly<Tower>) -> Result<Poly<Tower>, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(a.variable().clone()));
    }
    let g = tower.poly_gcd(a, b)?;
    let q = b.exact_div(&g, tower)?;
    a.mul(&q, tower).monic(tower)
}

// ---------------------------------------------------------------------------
// The full solve
// ---------------------------------------------------------------------------

pub fn pls_via_ctsnf(problem: &PlsProblem) -> Result<PlsSolution, Error> {
    assert_eq!(problem.rhs.len(), problem.matrix.rows, "rhs length");
    let ctsnf_problem = CtsnfProblem {
        ring: problem.ring.clone(),
        matrix: problem.matrix.clone(),
        constraint: problem.constraint.clone(),
        options: problem.options.clone(),
    };
    let csol = ctsnf(&ctsnf_problem)?;
    let mut regimes = Vec::new();
    let mut pruned: Vec<PrunedRegime> = csol.pruned.clone();
    for regime in &csol.regimes {
        expand_smith_regime(problem, regime, &mut regimes, &mut pruned)?;
    }
    Ok(PlsSolution {
        regimes,
        pruned,
        incomplete_coverage: csol.incomplete_coverage,
        ctsnf: csol,
    })
}

/// Expand one triangular Smith regime into PLS rank regimes, forking on
/// zero-divisor splits discovered during back-substitution.
fn expand_smith_regime(
    problem: &PlsProblem,
    regime: &SmithRegime,
    regimes: &mut Vec<PlsRegime>,
    pruned: &mut Vec<PrunedRegime>,
) -> Result<(), Error> {
    let ring = &problem.ring;
    let parent_tower = regime.tower.clone();
    let expansions = run_with_splits(parent_tower, &mut |t: &Tower| {
        // re-reduce the regime data into the (possibly forked) tower
        let h = regime.result.h.map(t, |p| {
            Poly::from_coeffs(
                p.variable().clone(),
                p.coeffs().iter().map(|c| t.migrate(c)).collect(),
                t,
            )
        });
        let u_mat = regime.result.u.mat.map(t, |p| {
            Poly::from_coeffs(
                p.variable().clone(),
                p.coeffs().iter().map(|c| t.migrate(c)).collect(),
                t,
            )
        });
        let b: Vec<Poly<Tower>> = problem
            .rhs
            .iter()
            .map(|e| t.embed_as_poly(e, &ring.var))
            .collect();
        let ub = u_mat.mul_vec(&b, t);
        let ranks = triangular_smith_expand(ring, t, &h, &ub).map_err(Error::from)?;
        Ok(ranks)
    })?;

    for (t, ranks) in expansions {
        // constraints of the (possibly forked) tower: swap the parent's
        // cleared moduli for the refined ones
        let base_constraint = constraint_for_tower(ring, &regime.constraint, &regime.tower, &t);
        for rr in ranks {
            let constraint = base_constraint.merged(&rr.added);
            let provenance = regime.provenance.clone();
            if constraint.is_trivially_empty() {
                pruned.push(PrunedRegime {
                    provenance,
                    reason: format!("rank-{} regime constraints are contradictory", rr.rank),
                });
                continue;
            }
            // map back through the constant preconditioner: u = R u',
            // B = R B'
            let r_mat = &regime.result.r;
            let n = problem.matrix.cols;
            let mut particular = Vec::with_capacity(n);
            for i in 0..n {
                let mut acc = RatX::from_poly(Poly::zero(ring.var.clone()), &t);
                for (j, uj) in rr.particular.iter().enumerate() {
                    if uj.is_zero() || r_mat.at(i, j).is_zero() {
                        continue;
                    }
                    let term = uj.scale_rat(r_mat.at(i, j), &t);
                    acc = acc.add(&term, &t).map_err(Error::from)?;
                }
                particular.push(acc);
            }
            let nullspace = r_mat.embed(&ring.var, &t).mul(&rr.nullspace_pre, &t);
            regimes.push(PlsRegime {
                provenance,
                rank: rr.rank,
                tower: t.clone(),
                particular,
                nullspace,
                constraint,
            });
        }
    }
    Ok(())
}

/// Rebuild a regime constraint after a tower fork: parent layer moduli are
/// replaced by the refined ones.
fn constraint_for_tower(
    ring: &Ring,
    parent_constraint: &SemiAlgSet,
    parent_tower: &Tower,
    tower: &Tower,
) -> SemiAlgSet {
    if parent_tower == tower {
        return parent_constraint.clone();
    }
    let old_moduli: Vec<MPoly> = algebraic_moduli_cleared(ring, parent_tower);
    let mut out = SemiAlgSet::full();
    for n in &parent_constraint.nonzero {
        out.insert_nonzero(n);
    }
    for z in &parent_constraint.zero {
        if !old_moduli.contains(z) {
            out.insert_zero(z);
        }
    }
    for m in algebraic_moduli_cleared(ring, tower) {
        out.insert_zero(&m);
    }
    out
}

fn algebraic_moduli_cleared(ring: &Ring, tower: &Tower) -> Vec<MPoly> {
    tower
        .steps()
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s.kind, StepKind::Algebraic { .. }))
        .map(|(k, _)| tower_layer_modulus_cleared(ring, tower, k))
        .collect()
}
