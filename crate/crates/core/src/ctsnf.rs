//! Comprehensive triangular Smith normal form: enumerate a covering set of
//! triangular Smith regimes for matrices with up to two parameters besides
//! the distinguished variable.
//!
//! The construction follows the dimension of the parameter space:
//!
//! * no parameters: a single regime over `F[x]`;
//! * one parameter `y` (the bivariate case): a generic regime over
//!   `F(y)[x]` whose validity excludes the denominator variety, plus one
//!   branch regime over `F[y]/<f>` per irreducible denominator factor `f`;
//! * two parameters (the trivariate case): the generic regime, a curve
//!   regime per denominator factor (adjoining one parameter algebraically
//!   over the fraction field of the other), and point regimes at the
//!   finitely many intersections of each curve with its own denominator
//!   locus (Bezout-bounded).
//!
//! Branch moduli over extension layers are square-free but not necessarily
//! irreducible; computations fork on zero-divisor splits and rerun, so the
//! output regimes always carry valid towers. Three or more parameters yield
//! only the generic regime, flagged as incomplete coverage.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::factor::factor_rationals;
use crate::field::Field;
use crate::hermite::{hermite_form, triangular_smith, HermiteResult, TsOptions};
use crate::matrix::PMat;
use crate::mpoly::{mpoly_gcd, mpoly_lcm, MMat, MPoly};
use crate::poly::{squarefree_part, Poly};
use crate::rat::RationalField;
use crate::symbol::Symbol;
use crate::tower::{
    clear_elem, denominator_support, run_with_splits, support_factors, StepKind, Tower, TowerElem,
};

/// The polynomial ring of a problem: parameters plus the distinguished
/// variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring {
    pub params: Vec<Symbol>,
    pub var: Symbol,
}

impl Ring {
    pub fn new(params: &[&str], var: &str) -> Ring {
        Ring {
            params: params.iter().map(|p| Symbol::new(p)).collect(),
            var: Symbol::new(var),
        }
    }

    pub fn all_vars(&self) -> Vec<Symbol> {
        let mut v = self.params.clone();
        v.push(self.var.clone());
        v
    }
}

/// A semialgebraic condition V(N, Z): all polynomials in `nonzero` stay
/// nonzero, all polynomials in `zero` vanish. Entries are kept in canonical
/// normalized form; inserting contradictory data marks the set empty.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiAlgSet {
    pub nonzero: BTreeSet<MPoly>,
    pub zero: BTreeSet<MPoly>,
    empty: bool,
}

impl Default for SemiAlgSet {
    fn default() -> Self {
        SemiAlgSet::full()
    }
}

impl SemiAlgSet {
    /// No constraints: the full parameter space.
    pub fn full() -> Self {
        SemiAlgSet { nonzero: BTreeSet::new(), zero: BTreeSet::new(), empty: false }
    }

    pub fn insert_nonzero(&mut self, p: &MPoly) {
        if p.is_zero() {
            self.empty = true; // 0 != 0 is unsatisfiable
            return;
        }
        if p.is_constant() {
            return; // nonzero constants impose nothing
        }
        let n = p.normalized();
        if self.zero.contains(&n) {
            self.empty = true;
        }
        self.nonzero.insert(n);
    }

    pub fn insert_zero(&mut self, p: &MPoly) {
        if p.is_zero() {
            return; // the zero polynomial vanishes everywhere
        }
        if p.is_constant() {
            self.empty = true;
            return;
        }
        let n = p.normalized();
        if self.nonzero.contains(&n) {
            self.empty = true;
        }
        self.zero.insert(n);
    }

    pub fn is_trivially_empty(&self) -> bool {
        self.empty
    }

    pub fn merged(&self, other: &SemiAlgSet) -> SemiAlgSet {
        let mut out = self.clone();
        for p in &other.nonzero {
            out.insert_nonzero(p);
        }
        for p in &other.zero {
            out.insert_zero(p);
        }
        out.empty |= other.empty;
        out
    }

    /// The zero constraints not involving the distinguished variable.
    pub fn zero_in_params_only(&self, var: &Symbol) -> Vec<MPoly> {
        self.zero.iter().filter(|p| p.degree_in(var) == 0).cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Generic,
    /// Branch over the vanishing locus of a denominator (or constraint)
    /// factor.
    Branch { factor: MPoly },
    /// Point regime at an intersection of a curve with its denominator
    /// locus.
    Point { curve: MPoly, eliminant: MPoly, index: usize },
}

#[derive(Clone, Debug)]
pub struct SmithRegime {
    pub provenance: Provenance,
    pub tower: Tower,
    pub result: HermiteResult<Tower>,
    pub constraint: SemiAlgSet,
}

#[derive(Clone, Debug)]
pub struct PrunedRegime {
    pub provenance: Provenance,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct CtsnfSolution {
    pub regimes: Vec<SmithRegime>,
    pub pruned: Vec<PrunedRegime>,
    pub incomplete_coverage: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormMode {
    TriangularSmith,
    /// Comprehensive Hermite analysis: identity right cofactor, no
    /// divisibility requirement on the diagonal.
    Hermite,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    pub max_retries: u32,
    pub sample_bound: i64,
    pub mode: FormMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            max_retries: 8,
            sample_bound: 1_000_000,
            mode: FormMode::TriangularSmith,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CtsnfProblem {
    pub ring: Ring,
    pub matrix: MMat,
    pub constraint: SemiAlgSet,
    pub options: SolveOptions,
}

pub fn ctsnf(problem: &CtsnfProblem) -> Result<CtsnfSolution, Error> {
    if problem.constraint.is_trivially_empty() {
        return Ok(CtsnfSolution {
            regimes: Vec::new(),
            pruned: vec![PrunedRegime {
                provenance: Provenance::Generic,
                reason: "problem constraint set is empty".to_string(),
            }],
            incomplete_coverage: false,
        });
    }
    match problem.ring.params.len() {
        0 => ctsnf_univariate(problem),
        1 => ctsnf_bivariate(problem),
        2 => ctsnf_trivariate(problem),
        _ => {
            let mut sol = generic_only(problem)?;
            sol.incomplete_coverage = true;
            Ok(sol)
        }
    }
}

/// Embed the problem matrix into `K[x]` over the tower.
pub fn embed_matrix(tower: &Tower, ring: &Ring, m: &MMat) -> PMat<Tower> {
    PMat::from_fn(m.rows, m.cols, ring.var.clone(), tower, |i, j| {
        tower.embed_as_poly(m.at(i, j), &ring.var)
    })
}

fn compute_form(tower: &Tower, problem: &CtsnfProblem) -> Result<HermiteResult<Tower>, Error> {
    let a = embed_matrix(tower, &problem.ring, &problem.matrix);
    match problem.options.mode {
        FormMode::TriangularSmith => {
            let opts = TsOptions {
                seed: problem.options.seed,
                max_retries: problem.options.max_retries,
                sample_bound: problem.options.sample_bound,
            };
            triangular_smith(&a, tower, &opts)
        }
        FormMode::Hermite => hermite_form(&a, tower),
    }
}

/// Denominator support of a computed form: the parameter polynomials whose
/// nonvanishing keeps U and H evaluable.
fn form_denominators(tower: &Tower, res: &HermiteResult<Tower>) -> Vec<MPoly> {
    let elems = res
        .u
        .mat
        .entries()
        .iter()
        .chain(res.h.entries().iter())
        .flat_map(|p| p.coeffs().iter());
    denominator_support(tower, elems)
}

fn on_all_vars(ring: &Ring, p: &MPoly) -> MPoly {
    p.reorder_vars(&ring.all_vars())
}

// ---------------------------------------------------------------------------
// No parameters: a single regime over F[x]
// ---------------------------------------------------------------------------

fn ctsnf_univariate(problem: &CtsnfProblem) -> Result<CtsnfSolution, Error> {
    generic_only(problem)
}

fn generic_only(problem: &CtsnfProblem) -> Result<CtsnfSolution, Error> {
    let tower = Tower::transcendental(&problem.ring.params);
    let res = compute_form(&tower, problem)?;
    let dens = form_denominators(&tower, &res);
    let mut constraint = problem.constraint.clone();
    for d in &dens {
        constraint.insert_nonzero(&on_all_vars(&problem.ring, d));
    }
    Ok(CtsnfSolution {
        regimes: vec![SmithRegime {
            provenance: Provenance::Generic,
            tower,
            result: res,
            constraint,
        }],
        pruned: Vec::new(),
        incomplete_coverage: false,
    })
}

// ---------------------------------------------------------------------------
// One parameter besides x
// ---------------------------------------------------------------------------

fn ctsnf_bivariate(problem: &CtsnfProblem) -> Result<CtsnfSolution, Error> {
    let ring = &problem.ring;
    let y = ring.params[0].clone();

    // A nonempty parameter constraint Z trivializes the solution: the
    // variety of a univariate set is the variety of its gcd, one branch per
    // irreducible factor.
    let z_param = problem.constraint.zero_in_params_only(&ring.var);
    if !z_param.is_empty() {
        return bivariate_constrained(problem, &y, &z_param);
    }

    let mut regimes = Vec::new();
    let mut pruned = Vec::new();

    let tower0 = Tower::transcendental(&ring.params);
    let res0 = compute_form(&tower0, problem)?;
    let dens = form_denominators(&tower0, &res0);
    let mut generic_constraint = problem.constraint.clone();
    for d in &dens {
        generic_constraint.insert_nonzero(&on_all_vars(ring, d));
    }
    regimes.push(SmithRegime {
        provenance: Provenance::Generic,
        tower: tower0,
        result: res0,
        constraint: generic_constraint,
    });

    for f in &dens {
        let provenance = Provenance::Branch { factor: on_all_vars(ring, f) };
        let mut branch_constraint = problem.constraint.clone();
        branch_constraint.insert_zero(&on_all_vars(ring, f));
        for g in &dens {
            if g != f {
                branch_constraint.insert_nonzero(&on_all_vars(ring, g));
            }
        }
        if branch_constraint.is_trivially_empty() {
            pruned.push(PrunedRegime {
                provenance,
                reason: "branch locus is excluded by the nonzero constraints".to_string(),
            });
            continue;
        }
        let tower = algebraic_tower_univariate(&y, f);
        if let Some(reason) = vanishing_nonzero(&tower, ring, &branch_constraint) {
            pruned.push(PrunedRegime { provenance, reason });
            continue;
        }
        let res = compute_form(&tower, problem)?;
        debug_assert!(form_denominators(&tower, &res).is_empty());
        regimes.push(SmithRegime { provenance, tower, result: res, constraint: branch_constraint });
    }

    Ok(CtsnfSolution { regimes, pruned, incomplete_coverage: false })
}

/// Branches for a nonempty parameter-only constraint set in one parameter.
fn bivariate_constrained(
    problem: &CtsnfProblem,
    y: &Symbol,
    z_param: &[MPoly],
) -> Result<CtsnfSolution, Error> {
    let ring = &problem.ring;
    let field = RationalField;
    let mut g: Poly<RationalField> = Poly::zero(y.clone());
    for z in z_param {
        let u = z
            .reorder_vars(&ring.params)
            .as_univariate_in(y)
            .expect("single parameter");
        g = field.poly_gcd(&g, &u).map_err(Error::from)?;
    }
    if g.is_constant() {
        return Ok(CtsnfSolution {
            regimes: Vec::new(),
            pruned: vec![PrunedRegime {
                provenance: Provenance::Generic,
                reason: "coprime zero constraints have no common root".to_string(),
            }],
            incomplete_coverage: false,
        });
    }
    let sf = squarefree_part(&g, &field).map_err(Error::from)?;
    let fac = factor_rationals(&sf).map_err(Error::from)?;
    let mut regimes = Vec::new();
    let mut pruned = Vec::new();
    for (p, _) in &fac.factors {
        let f = MPoly::from_unipoly(&ring.params, p).normalized();
        let provenance = Provenance::Branch { factor: on_all_vars(ring, &f) };
        let mut constraint = problem.constraint.clone();
        constraint.insert_zero(&on_all_vars(ring, &f));
        if constraint.is_trivially_empty() {
            pruned.push(PrunedRegime {
                provenance,
                reason: "constraint factor is also required nonzero".to_string(),
            });
            continue;
        }
        let tower = algebraic_tower_univariate(y, &f);
        if let Some(reason) = vanishing_nonzero(&tower, ring, &constraint) {
            pruned.push(PrunedRegime { provenance, reason });
            continue;
        }
        let res = compute_form(&tower, problem)?;
        regimes.push(SmithRegime { provenance, tower, result: res, constraint });
    }
    Ok(CtsnfSolution { regimes, pruned, incomplete_coverage: false })
}

/// Q[y]/<f> for an irreducible univariate factor f.
fn algebraic_tower_univariate(y: &Symbol, f: &MPoly) -> Tower {
    let base = Tower::rationals();
    let u = f
        .reorder_vars(std::slice::from_ref(y))
        .as_univariate_in(y)
        .expect("univariate factor");
    let um = u.monic(&RationalField).expect("nonzero factor");
    let coeffs: Vec<TowerElem> = um.coeffs().iter().map(|c| base.from_rat(c)).collect();
    base.extended_algebraic(y.clone(), coeffs)
}

/// Does any nonzero-constrained polynomial vanish identically on the
/// tower's variety? Returns a pruning reason if so.
fn vanishing_nonzero(tower: &Tower, ring: &Ring, constraint: &SemiAlgSet) -> Option<String> {
    for n in &constraint.nonzero {
        if n.degree_in(&ring.var) > 0 {
            continue; // conditions involving x are not parameter loci
        }
        if tower.vanishes(&n.reorder_vars(&ring.params)) {
            return Some(format!(
                "required-nonzero polynomial {} vanishes on the branch locus",
                crate::text::mpoly_to_string(n)
            ));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Two parameters besides x
// ---------------------------------------------------------------------------

fn ctsnf_trivariate(problem: &CtsnfProblem) -> Result<CtsnfSolution, Error> {
    let ring = &problem.ring;
    let z_param = problem.constraint.zero_in_params_only(&ring.var);
    if !z_param.is_empty() {
        return trivariate_constrained(problem, &z_param);
    }

    let mut regimes = Vec::new();
    let mut pruned = Vec::new();

    let tower0 = Tower::transcendental(&ring.params);
    let res0 = compute_form(&tower0, problem)?;
    let dens = form_denominators(&tower0, &res0);
    let mut generic_constraint = problem.constraint.clone();
    for d in &dens {
        generic_constraint.insert_nonzero(&on_all_vars(ring, d));
    }
    regimes.push(SmithRegime {
        provenance: Provenance::Generic,
        tower: tower0,
        result: res0,
        constraint: generic_constraint,
    });

    for f in &dens {
        curve_and_point_regimes(problem, f, &mut regimes, &mut pruned)?;
    }

    Ok(CtsnfSolution { regimes, pruned, incomplete_coverage: false })
}

/// The curve regime over V(f) and the point regimes at the intersection of
/// V(f) with the curve regime's own denominator locus.
fn curve_and_point_regimes(
    problem: &CtsnfProblem,
    f: &MPoly,
    regimes: &mut Vec<SmithRegime>,
    pruned: &mut Vec<PrunedRegime>,
) -> Result<(), Error> {
    let ring = &problem.ring;
    let provenance = Provenance::Branch { factor: on_all_vars(ring, f) };
    {
        let mut probe = problem.constraint.clone();
        probe.insert_zero(&on_all_vars(ring, f));
        if probe.is_trivially_empty() {
            pruned.push(PrunedRegime {
                provenance,
                reason: "branch locus is excluded by the nonzero constraints".to_string(),
            });
            return Ok(());
        }
    }

    let (tower, lc_factors) = curve_tower(ring, f)?;
    // Monicizing the modulus divides by its leading coefficient in the
    // algebraic parameter, so that coefficient's factors join both the
    // validity set and the intersection locus.
    let mut curve_dens: BTreeSet<MPoly> = lc_factors.into_iter().collect();

    let branches = run_with_splits(tower, &mut |t: &Tower| compute_form(t, problem))?;
    for (t, res) in branches {
        // the (possibly split-refined) modulus defines the branch locus
        let branch_factor = tower_layer_modulus_cleared(ring, &t, t.depth() - 1);
        let provenance = Provenance::Branch { factor: branch_factor.clone() };
        let mut constraint = problem.constraint.clone();
        constraint.insert_zero(&branch_factor);
        let dens = form_denominators(&t, &res);
        for d in &dens {
            constraint.insert_nonzero(&on_all_vars(ring, d));
            curve_dens.insert(d.reorder_vars(&ring.params));
        }
        for d in modulus_coefficient_denominators(&t) {
            constraint.insert_nonzero(&on_all_vars(ring, &d));
            curve_dens.insert(d.reorder_vars(&ring.params));
        }
        if constraint.is_trivially_empty() {
            pruned.push(PrunedRegime {
                provenance,
                reason: "curve regime constraints are contradictory".to_string(),
            });
            continue;
        }
        if let Some(reason) = vanishing_nonzero(&t, ring, &constraint) {
            pruned.push(PrunedRegime { provenance, reason });
            continue;
        }
        regimes.push(SmithRegime { provenance, tower: t, result: res, constraint });
    }

    // intersection points of V(f) with the curve denominator locus
    if !curve_dens.is_empty() {
        let denominator = curve_dens
            .iter()
            .fold(MPoly::one(&ring.params), |acc, d| acc.mul(d));
        let ips = intersection_points(ring, f, &denominator)?;
        assert!(ips.count_bound_ok(), "Bezout cap violated");
        point_regimes(problem, &ips, regimes, pruned)?;
    }
    Ok(())
}

/// Tower for a curve factor: the later-declared parameter occurring in `f`
/// is adjoined algebraically over the fraction field of the other. Returns
/// the tower and the irreducible factors of the discarded leading
/// coefficient.
fn curve_tower(ring: &Ring, f: &MPoly) -> Result<(Tower, Vec<MPoly>), Error> {
    let fp = f.reorder_vars(&ring.params);
    let present = fp.present_vars();
    let alg = present.last().expect("nonconstant factor").clone();
    let others: Vec<Symbol> = ring.params.iter().filter(|p| **p != alg).cloned().collect();
    let prefix = Tower::transcendental(&others);
    let coeffs_mp = fp.coeffs_in(&alg);
    let coeffs: Vec<TowerElem> = coeffs_mp
        .iter()
        .map(|c| prefix.embed_mpoly(&c.reorder_vars(&others)))
        .collect();
    let p = Poly::from_coeffs(alg.clone(), coeffs, &prefix);
    let lc = p.lc().expect("nonzero factor").clone();
    let pm = p.monic(&prefix).map_err(Error::from)?;
    let tower = prefix.extended_algebraic(alg, pm.into_coeffs());
    let (lc_num, _) = clear_elem(&tower.steps()[..tower.depth() - 1], &lc);
    let lc_factors = support_factors(&lc_num)
        .into_iter()
        .map(|g| g.reorder_vars(&ring.params))
        .collect();
    Ok((tower, lc_factors))
}

/// The cleared polynomial form of an algebraic layer's modulus, over all
/// ring variables.
pub(crate) fn tower_layer_modulus_cleared(ring: &Ring, tower: &Tower, layer: usize) -> MPoly {
    let steps = tower.steps();
    let step = &steps[layer];
    let modulus = match &step.kind {
        StepKind::Algebraic { modulus } => modulus,
        StepKind::Transcendental => panic!("not an algebraic layer"),
    };
    let prefix = &steps[..layer];
    let vars: Vec<Symbol> = steps[..=layer].iter().map(|s| s.param.clone()).collect();
    let y = MPoly::var(&vars, &step.param);
    let mut terms: Vec<(MPoly, MPoly)> = Vec::new();
    let mut den_acc = MPoly::one(&vars);
    for c in modulus {
        let (n, d) = clear_elem(prefix, c);
        let n = n.reorder_vars(&vars);
        let d = d.reorder_vars(&vars);
        den_acc = mpoly_lcm(&den_acc, &d);
        terms.push((n, d));
    }
    let mut acc = MPoly::zero(&vars);
    let mut ypow = MPoly::one(&vars);
    for (n, d) in &terms {
        let scale = den_acc.exact_div(d).unwrap();
        acc = acc.add(&n.mul(&scale).mul(&ypow));
        ypow = ypow.mul(&y);
    }
    on_all_vars(ring, &acc.normalized())
}

fn modulus_coefficient_denominators(tower: &Tower) -> Vec<MPoly> {
    let steps = tower.steps();
    let mut out = BTreeSet::new();
    for (k, step) in steps.iter().enumerate() {
        if let StepKind::Algebraic { modulus } = &step.kind {
            for c in modulus {
                let (_, d) = clear_elem(&steps[..k], c);
                for g in support_factors(&d) {
                    out.insert(g);
                }
            }
        }
    }
    out.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Intersection points
// ---------------------------------------------------------------------------

/// A triangular description of the common zeros of a curve `f` and a
/// coprime denominator locus.
#[derive(Clone, Debug)]
pub struct IntersectionPointSet {
    pub curve: MPoly,
    pub denominator: MPoly,
    pub loci: Vec<PointLocus>,
}

#[derive(Clone, Debug)]
pub struct PointLocus {
    /// Irreducible eliminant in the transcendental-direction parameter.
    pub eliminant: MPoly,
    /// Description of the second coordinate over the eliminant's field.
    pub second: SecondCoordinate,
}

#[derive(Clone, Debug)]
pub enum SecondCoordinate {
    /// A linear modulus: the coordinate is its explicit root.
    ExplicitRoot(MPoly),
    /// A square-free modulus of degree two or more.
    Modulus(MPoly),
}

impl IntersectionPointSet {
    /// Number of represented points (counted over the algebraic closure).
    pub fn point_count(&self) -> usize {
        self.loci
            .iter()
            .map(|l| {
                let d1 = l.eliminant.total_degree();
                let d2 = match &l.second {
                    SecondCoordinate::ExplicitRoot(_) => 1,
                    SecondCoordinate::Modulus(m) => m.total_degree().max(1),
                };
                d1 * d2
            })
            .sum()
    }

    /// Bezout: at most deg(curve) * deg(denominator) common zeros.
    pub fn count_bound_ok(&self) -> bool {
        self.point_count() <= self.curve.total_degree() * self.denominator.total_degree()
            || self.loci.is_empty()
    }
}

/// Common zeros of the curve `f` and a coprime denominator polynomial.
/// The eliminant is the resultant with respect to the curve's algebraic
/// parameter; above each irreducible eliminant factor the second coordinate
/// runs over the common roots of the two reductions.
pub fn intersection_points(
    ring: &Ring,
    f: &MPoly,
    denominator: &MPoly,
) -> Result<IntersectionPointSet, Error> {
    let fp = f.reorder_vars(&ring.params);
    let alg = fp.present_vars().last().expect("nonconstant curve").clone();
    let evar = ring
        .params
        .iter()
        .find(|p| **p != alg)
        .expect("two parameters")
        .clone();
    let den = denominator.reorder_vars(&ring.params);
    let pref = Tower::transcendental(std::slice::from_ref(&evar));
    let embed = |p: &MPoly| -> Poly<Tower> {
        let coeffs: Vec<TowerElem> = p
            .coeffs_in(&alg)
            .iter()
            .map(|c| pref.embed_mpoly(&c.reorder_vars(std::slice::from_ref(&evar))))
            .collect();
        Poly::from_coeffs(alg.clone(), coeffs, &pref)
    };
    let fq = embed(&fp);
    let dq = embed(&den);
    let res = crate::poly::resultant(&fq, &dq, &pref).map_err(Error::from)?;
    if pref.is_zero(&res) {
        return Err(Error::Unsupported(
            "curve and denominator share a factor; intersection is not zero-dimensional"
                .to_string(),
        ));
    }
    let (res_num, _) = clear_elem(pref.steps(), &res);
    let mut loci = Vec::new();
    for elim in support_factors(&res_num) {
        let base = algebraic_tower_univariate(&evar, &elim);
        let reduce = |p: &MPoly| -> Poly<Tower> {
            let coeffs: Vec<TowerElem> = p
                .coeffs_in(&alg)
                .iter()
                .map(|c| base.embed_mpoly(&c.reorder_vars(std::slice::from_ref(&evar))))
                .collect();
            Poly::from_coeffs(alg.clone(), coeffs, &base)
        };
        let fbar = reduce(&fp);
        let dbar = reduce(&den);
        if fbar.is_zero() || fbar.is_constant() {
            // the curve misses (or fully contains) this line; either way no
            // isolated intersection points arise here
            continue;
        }
        // common roots: gcd with the reduced denominator, or all curve
        // roots where the denominator vanishes identically
        let m = if dbar.is_zero() {
            squarefree_part(&fbar.monic(&base).map_err(Error::from)?, &base)
                .map_err(Error::from)?
        } else {
            base.poly_gcd(&fbar, &dbar).map_err(Error::from)?
        };
        if m.degree().map_or(true, |d| d == 0) {
            continue; // no intersection above this locus
        }
        let cleared = poly_over_tower_cleared(ring, &base, &m, &alg);
        let second = if m.degree() == Some(1) {
            SecondCoordinate::ExplicitRoot(cleared)
        } else {
            SecondCoordinate::Modulus(cleared)
        };
        loci.push(PointLocus { eliminant: on_all_vars(ring, &elim), second });
    }
    Ok(IntersectionPointSet {
        curve: on_all_vars(ring, f),
        denominator: on_all_vars(ring, denominator),
        loci,
    })
}

fn poly_over_tower_cleared(ring: &Ring, tower: &Tower, p: &Poly<Tower>, var: &Symbol) -> MPoly {
    let (n, _) = crate::tower::clear_poly(tower, p, var);
    on_all_vars(ring, &n.normalized())
}

fn point_regimes(
    problem: &CtsnfProblem,
    ips: &IntersectionPointSet,
    regimes: &mut Vec<SmithRegime>,
    pruned: &mut Vec<PrunedRegime>,
) -> Result<(), Error> {
    let ring = &problem.ring;
    for locus in &ips.loci {
        let evar = locus
            .eliminant
            .present_vars()
            .first()
            .expect("nonconstant eliminant")
            .clone();
        let second_mp = match &locus.second {
            SecondCoordinate::ExplicitRoot(p) | SecondCoordinate::Modulus(p) => p.clone(),
        };
        let alg = ring
            .params
            .iter()
            .find(|p| **p != evar)
            .expect("two parameters")
            .clone();
        let base = algebraic_tower_univariate(&evar, &locus.eliminant);
        let coeffs: Vec<TowerElem> = second_mp
            .reorder_vars(&ring.params)
            .coeffs_in(&alg)
            .iter()
            .map(|c| base.embed_mpoly(&c.reorder_vars(std::slice::from_ref(&evar))))
            .collect();
        let h = Poly::from_coeffs(alg.clone(), coeffs, &base);
        let hm = h.monic(&base).map_err(Error::from)?;
        let tower = base.extended_algebraic(alg.clone(), hm.into_coeffs());

        let branches = run_with_splits(tower, &mut |t: &Tower| compute_form(t, problem))?;
        for (index, (t, res)) in branches.into_iter().enumerate() {
            let provenance = Provenance::Point {
                curve: ips.curve.clone(),
                eliminant: locus.eliminant.clone(),
                index,
            };
            let mut constraint = problem.constraint.clone();
            constraint.insert_zero(&locus.eliminant);
            constraint.insert_zero(&tower_layer_modulus_cleared(ring, &t, t.depth() - 1));
            if constraint.is_trivially_empty() {
                pruned.push(PrunedRegime {
                    provenance,
                    reason: "point constraints are contradictory".to_string(),
                });
                continue;
            }
            if let Some(reason) = vanishing_nonzero(&t, ring, &constraint) {
                pruned.push(PrunedRegime { provenance, reason });
                continue;
            }
            debug_assert!(form_denominators(&t, &res).is_empty());
            regimes.push(SmithRegime { provenance, tower: t, result: res, constraint });
        }
    }
    Ok(())
}

/// Two-parameter problems with a nonempty parameter-only constraint set:
/// the variety splits into the gcd's codimension-one part plus the
/// zero-dimensional residual system; both become branch towers.
fn trivariate_constrained(
    problem: &CtsnfProblem,
    z_param: &[MPoly],
) -> Result<CtsnfSolution, Error> {
    let ring = &problem.ring;
    let mut regimes = Vec::new();
    let mut pruned = Vec::new();
    let mut polys: Vec<MPoly> = z_param.iter().map(|p| p.reorder_vars(&ring.params)).collect();
    polys.sort();

    let mut g = MPoly::zero(&ring.params);
    for p in &polys {
        g = mpoly_gcd(&g, p);
    }
    if g.is_constant() {
        // coprime system: zero-dimensional (or empty)
        let towers = zero_dim_towers(ring, &polys)?;
        if towers.is_empty() {
            pruned.push(PrunedRegime {
                provenance: Provenance::Generic,
                reason: "zero constraints have no common solution".to_string(),
            });
        }
        for (index, t) in towers.into_iter().enumerate() {
            let provenance = Provenance::Point {
                curve: on_all_vars(ring, &polys[0]),
                eliminant: on_all_vars(ring, &polys[1.min(polys.len() - 1)]),
                index,
            };
            let sub = run_with_splits(t, &mut |tt: &Tower| compute_form(tt, problem))?;
            for (t2, res) in sub {
                let mut constraint = problem.constraint.clone();
                for (k, step) in t2.steps().iter().enumerate() {
                    if matches!(step.kind, StepKind::Algebraic { .. }) {
                        constraint.insert_zero(&tower_layer_modulus_cleared(ring, &t2, k));
                    }
                }
                if constraint.is_trivially_empty() {
                    pruned.push(PrunedRegime {
                        provenance: provenance.clone(),
                        reason: "point constraints are contradictory".to_string(),
                    });
                    continue;
                }
                if let Some(reason) = vanishing_nonzero(&t2, ring, &constraint) {
                    pruned.push(PrunedRegime { provenance: provenance.clone(), reason });
                    continue;
                }
                regimes.push(SmithRegime {
                    provenance: provenance.clone(),
                    tower: t2,
                    result: res,
                    constraint,
                });
            }
        }
        return Ok(CtsnfSolution { regimes, pruned, incomplete_coverage: false });
    }

    // V(Z) = V(g) union V(residual system)
    for f in support_factors(&g) {
        curve_and_point_regimes(problem, &f, &mut regimes, &mut pruned)?;
    }
    let residual: Vec<MPoly> = polys
        .iter()
        .map(|p| p.exact_div(&g).unwrap())
        .filter(|h| !h.is_constant())
        .collect();
    if residual.len() == polys.len() && !residual.is_empty() {
        let mut constraint = SemiAlgSet::full();
        for n in &problem.constraint.nonzero {
            constraint.insert_nonzero(n);
        }
        for h in &residual {
            constraint.insert_zero(&on_all_vars(ring, h));
        }
        if !constraint.is_trivially_empty() {
            let sub_problem = CtsnfProblem {
                ring: ring.clone(),
                matrix: problem.matrix.clone(),
                constraint,
                options: problem.options.clone(),
            };
            let sub = ctsnf_trivariate(&sub_problem)?;
            regimes.extend(sub.regimes);
            pruned.extend(sub.pruned);
        }
    }
    Ok(CtsnfSolution { regimes, pruned, incomplete_coverage: false })
}

/// Towers describing the common zeros of a coprime two-parameter system.
fn zero_dim_towers(ring: &Ring, polys: &[MPoly]) -> Result<Vec<Tower>, Error> {
    assert!(polys.len() >= 2, "a coprime single polynomial is not zero-dimensional");
    let p1 = &polys[0];
    let p2 = &polys[1];
    let alg = p1.present_vars().last().expect("nonconstant").clone();
    let other = ring
        .params
        .iter()
        .find(|p| **p != alg)
        .expect("two parameters")
        .clone();
    let pref = Tower::transcendental(std::slice::from_ref(&other));
    let embed = |p: &MPoly| -> Poly<Tower> {
        let coeffs: Vec<TowerElem> = p
            .coeffs_in(&alg)
            .iter()
            .map(|c| pref.embed_mpoly(&c.reorder_vars(std::slice::from_ref(&other))))
            .collect();
        Poly::from_coeffs(alg.clone(), coeffs, &pref)
    };
    let q1 = embed(p1);
    let q2 = embed(p2);
    let res = if q2.is_constant() {
        q2.coeff(0, &pref)
    } else if q1.is_constant() {
        q1.coeff(0, &pref)
    } else {
        crate::poly::resultant(&q1, &q2, &pref).map_err(Error::from)?
    };
    if pref.is_zero(&res) {
        return Err(Error::Unsupported(
            "coprime constraint system produced a zero resultant".to_string(),
        ));
    }
    let (res_num, _) = clear_elem(pref.steps(), &res);
    let mut towers = Vec::new();
    for elim in support_factors(&res_num) {
        let base = algebraic_tower_univariate(&other, &elim);
        let coeffs: Vec<TowerElem> = p1
            .coeffs_in(&alg)
            .iter()
            .map(|c| base.embed_mpoly(&c.reorder_vars(std::slice::from_ref(&other))))
            .collect();
        let h = Poly::from_coeffs(alg.clone(), coeffs, &base);
        if h.is_zero() || h.is_constant() {
            continue;
        }
        let hm = h.monic(&base).map_err(Error::from)?;
        let hs = squarefree_part(&hm, &base).map_err(Error::from)?;
        let cand = base.extended_algebraic(alg.clone(), hs.into_coeffs());
        let mut current = vec![cand];
        for p in polys.iter().skip(1) {
            let mut next = Vec::new();
            for t in current {
                next.extend(refine_tower_by_zero(&t, p)?);
            }
            current = next;
        }
        towers.extend(current);
    }
    Ok(towers)
}

/// Sub-towers of a zero-dimensional tower on which `p` vanishes. Splits the
/// top modulus by gcd; lower-layer splits are handled by rerunning.
pub fn refine_tower_by_zero(tower: &Tower, p: &MPoly) -> Result<Vec<Tower>, Error> {
    let p = p.clone();
    let out = run_with_splits(tower.clone(), &mut |t: &Tower| {
        let e = t.embed_mpoly(&p.reorder_vars(&t.params()));
        if t.is_zero(&e) {
            return Ok(Some(t.clone()));
        }
        let steps = t.steps();
        let top = steps.last().expect("algebraic tower");
        let modulus = match &top.kind {
            StepKind::Algebraic { modulus } => modulus.clone(),
            StepKind::Transcendental => return Ok(None),
        };
        let rep = match &e {
            TowerElem::Ext(f) => f.num.clone(),
            TowerElem::Base(_) => unreachable!("nonzero constant cannot vanish"),
        };
        let prefix = Tower::from_steps(steps[..steps.len() - 1].to_vec());
        let rep_p = Poly::from_coeffs(top.param.clone(), rep, &prefix);
        let mod_p = Poly::from_coeffs(top.param.clone(), modulus, &prefix);
        let g = prefix.poly_gcd(&rep_p, &mod_p).map_err(Error::from)?;
        if g.degree().map_or(true, |d| d == 0) {
            return Ok(None); // p vanishes nowhere on this cluster
        }
        let sub = prefix.extended_algebraic(top.param.clone(), g.into_coeffs());
        Ok(Some(sub))
    })?;
    Ok(out.into_iter().filter_map(|(_, t)| t).collect())
}

// ---------------------------------------------------------------------------
// Regime count bounds
// ---------------------------------------------------------------------------

/// Explicit (non-asymptotic) regime-count bound used by the tests.
///
/// Arity counts the distinguished variable: 1 means no parameters. The
/// bivariate constant comes from the exact `m^2 d e` bound on the common
/// denominator degree of the nonsingular embedding; the trivariate constants
/// are implementation-derived (each curve contributes at most its
/// denominator-degree worth of points) and validated by the acceptance
/// suite.
pub fn regime_count_bound(m: usize, n: usize, d: usize, e: usize, arity: usize) -> u64 {
    let s = m.max(n).max(1) as u64;
    let d = d as u64;
    let e = e as u64;
    match arity {
        1 => 1,
        2 => 1 + s * s * d * e,
        3 => {
            let f = 2 * s * s * d * e;
            1 + f + 2 * f * f
        }
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    fn mmat(ring: &Ring, rows: &[&[&str]]) -> MMat {
        let vars = ring.all_vars();
        MMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_polynomial(s, &vars).unwrap()).collect())
                .collect(),
        )
    }

    fn problem(ring: Ring, rows: &[&[&str]]) -> CtsnfProblem {
        let matrix = mmat(&ring, rows);
        CtsnfProblem { ring, matrix, constraint: SemiAlgSet::full(), options: SolveOptions::default() }
    }

    fn diag_strings(r: &SmithRegime) -> Vec<String> {
        r.result.h.diag().iter().map(|p| p.to_string(&r.tower)).collect()
    }

    #[test]
    fn univariate_single_regime() {
        let p = problem(Ring::new(&[], "x"), &[&["1", "0"], &["0", "1"]]);
        let sol = ctsnf(&p).unwrap();
        assert_eq!(sol.regimes.len(), 1);
        assert_eq!(diag_strings(&sol.regimes[0]), vec!["1", "1"]);
        // [[x, 1], [0, x]] -> diagonal (1, x^2)
        let p = problem(Ring::new(&[], "x"), &[&["x", "1"], &["0", "x"]]);
        let sol = ctsnf(&p).unwrap();
        assert_eq!(sol.regimes.len(), 1);
        assert_eq!(diag_strings(&sol.regimes[0]), vec!["1", "x^2"]);
        // zero matrix
        let p = problem(Ring::new(&[], "x"), &[&["0", "0"], &["0", "0"]]);
        let sol = ctsnf(&p).unwrap();
        assert_eq!(sol.regimes.len(), 1);
        assert!(sol.regimes[0].result.h.is_zero());
    }

    #[test]
    fn bivariate_scaled_identity() {
        // A = y*x*I: generic diag (x, x) off y = 0, plus the branch y = 0
        // where H = 0
        let p = problem(Ring::new(&["y"], "x"), &[&["y*x", "0"], &["0", "y*x"]]);
        let sol = ctsnf(&p).unwrap();
        assert_eq!(sol.regimes.len(), 2);
        let generic = &sol.regimes[0];
        assert!(matches!(generic.provenance, Provenance::Generic));
        assert_eq!(diag_strings(generic), vec!["x", "x"]);
        let n_strs: Vec<String> = generic
            .constraint
            .nonzero
            .iter()
            .map(crate::text::mpoly_to_string)
            .collect();
        assert_eq!(n_strs, vec!["y"]);
        let branch = &sol.regimes[1];
        assert!(matches!(branch.provenance, Provenance::Branch { .. }));
        assert!(branch.result.h.is_zero());
    }

    #[test]
    fn bivariate_matrix_log_specialized() {
        // lambda*I - [[2, b], [0, 2]]: generic diagonal (1, (l-2)^2);
        // branch b = 0 gives diag (l-2, l-2)
        let p = problem(Ring::new(&["b"], "l"), &[&["l - 2", "-b"], &["0", "l - 2"]]);
        let sol = ctsnf(&p).unwrap();
        assert_eq!(sol.regimes.len(), 2);
        let generic = &sol.regimes[0];
        let d = diag_strings(generic);
        assert_eq!(d[0], "1");
        assert!(d[1].contains("l^2"));
        let branch = &sol.regimes[1];
        let bd = diag_strings(branch);
        assert_eq!(bd.len(), 2);
        assert_eq!(bd[0], bd[1]);
        let z_strs: Vec<String> = branch
            .constraint
            .zero
            .iter()
            .map(crate::text::mpoly_to_string)
            .collect();
        assert_eq!(z_strs, vec!["b"]);
    }

    #[test]
    fn bivariate_nonempty_z_trivializes() {
        // Z = {(y-1)*(y-2)}: two branch regimes, no generic
        let ring = Ring::new(&["y"], "x");
        let vars = ring.all_vars();
        let mut constraint = SemiAlgSet::full();
        constraint.insert_zero(&parse_polynomial("(y - 1)*(y - 2)", &vars).unwrap());
        let matrix = mmat(&ring, &[&["x - y", "1"], &["0", "x"]]);
        let p = CtsnfProblem { ring, matrix, constraint, options: SolveOptions::default() };
        let sol = ctsnf(&p).unwrap();
        assert_eq!(sol.regimes.len(), 2);
        assert!(sol
            .regimes
            .iter()
            .all(|r| matches!(r.provenance, Provenance::Branch { .. })));
        // unsatisfiable: coprime univariate zero constraints
        let ring = Ring::new(&["y"], "x");
        let vars = ring.all_vars();
        let mut constraint = SemiAlgSet::full();
        constraint.insert_zero(&parse_polynomial("y", &vars).unwrap());
        constraint.insert_zero(&parse_polynomial("y - 1", &vars).unwrap());
        let matrix = mmat(&ring, &[&["x"]]);
        let p = CtsnfProblem { ring, matrix, constraint, options: SolveOptions::default() };
        let sol = ctsnf(&p).unwrap();
        assert!(sol.regimes.is_empty());
        assert!(!sol.pruned.is_empty());
    }

    #[test]
    fn trivariate_matrix_log_full() {
        // lambda*I - [[a, b], [0, a]]: generic diag (1, (l-a)^2);
        // branch b = 0: diag (l-a, l-a); no point regimes
        let p = problem(Ring::new(&["a", "b"], "l"), &[&["l - a", "-b"], &["0", "l - a"]]);
        let sol = ctsnf(&p).unwrap();
        assert_eq!(sol.regimes.len(), 2, "exactly two regimes: {:?}",
            sol.regimes.iter().map(|r| r.provenance.clone()).collect::<Vec<_>>());
        let generic = &sol.regimes[0];
        let d = diag_strings(generic);
        assert_eq!(d[0], "1");
        let branch = &sol.regimes[1];
        assert!(matches!(branch.provenance, Provenance::Branch { .. }));
        let bd = diag_strings(branch);
        assert_eq!(bd[0], bd[1]);
    }

    #[test]
    fn trivariate_intersection_points() {
        // f = y - z and denominator y + z meet at the origin only
        let ring = Ring::new(&["z", "y"], "x");
        let vars = ring.all_vars();
        let f = parse_polynomial("y - z", &vars).unwrap();
        let den = parse_polynomial("y + z", &vars).unwrap();
        let ips = intersection_points(&ring, &f, &den).unwrap();
        assert_eq!(ips.loci.len(), 1);
        assert_eq!(crate::text::mpoly_to_string(&ips.loci[0].eliminant), "z");
        match &ips.loci[0].second {
            SecondCoordinate::ExplicitRoot(p) => {
                assert_eq!(crate::text::mpoly_to_string(p), "y");
            }
            other => panic!("expected explicit root, got {other:?}"),
        }
        assert_eq!(ips.point_count(), 1);
        assert!(ips.count_bound_ok());
    }

    #[test]
    fn count_bounds() {
        assert_eq!(regime_count_bound(3, 3, 2, 1, 1), 1);
        assert!(regime_count_bound(2, 2, 1, 1, 2) >= 2);
        assert!(regime_count_bound(4, 4, 2, 2, 2) >= 5);
        assert!(regime_count_bound(3, 3, 2, 2, 3) > regime_count_bound(2, 2, 2, 2, 3));
    }

    #[test]
    fn empty_constraint_short_circuits() {
        let ring = Ring::new(&["y"], "x");
        let vars = ring.all_vars();
        let mut constraint = SemiAlgSet::full();
        let y = parse_polynomial("y", &vars).unwrap();
        constraint.insert_zero(&y);
        constraint.insert_nonzero(&y);
        assert!(constraint.is_trivially_empty());
        let matrix = mmat(&ring, &[&["x"]]);
        let p = CtsnfProblem { ring, matrix, constraint, options: SolveOptions::default() };
        let sol = ctsnf(&p).unwrap();
        assert!(sol.regimes.is_empty());
    }
}
