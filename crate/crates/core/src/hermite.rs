//! Hermite normal form over `K[x]` with a degree-bounded unimodular
//! cofactor, random right preconditioning to nice matrices, and the
//! triangular Smith form.
//!
//! The cofactor degree bounds require care for rank-deficient input, where
//! the cofactor is not unique. `hermite_form` therefore embeds the problem
//! in a nonsingular one: with a row permutation `P` making the leading
//! rank-block nonsingular, it reduces `B = [[A1, 0], [A3, I]]` (nonsingular
//! by construction), whose unique cofactor is degree-bounded, and assembles
//! `H = U1*P*A`. The bounds `deg_x(U) <= (m-1) d` and `deg_x(H) <= m d` are
//! theorems, so they are asserted at runtime: a violation is an
//! implementation bug, not an input condition.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::field::{ArithError, Field};
use crate::matrix::{mul_pmat_qmat, PMat, QMat, Unimodular};
use crate::poly::{xgcd, Poly};
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct HermiteResult<F: Field> {
    pub u: Unimodular<F>,
    pub h: PMat<F>,
    /// The right preconditioner (identity for plain Hermite form).
    pub r: QMat,
    pub is_triangular_smith: bool,
    pub seed: u64,
    pub attempts: u32,
}

#[derive(Clone, Debug)]
pub struct Preconditioner {
    pub mat: QMat,
    pub seed: u64,
    /// Size of the integer sample set the subdiagonal entries came from.
    pub sample_size: u64,
}

/// Unit lower triangular with subdiagonal entries drawn uniformly from
/// the integers in [-bound, bound]; deterministic for a fixed seed.
pub fn random_preconditioner(n: usize, seed: u64, sample_bound: i64) -> Preconditioner {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = n * n.saturating_sub(1) / 2;
    let entries: Vec<Rat> = (0..k)
        .map(|_| Rat::from_i64(rng.gen_range(-sample_bound..=sample_bound)))
        .collect();
    Preconditioner {
        mat: QMat::unit_lower(n, &entries),
        seed,
        sample_size: (2 * sample_bound + 1) as u64,
    }
}

#[derive(Clone, Debug)]
pub struct TsOptions {
    pub seed: u64,
    pub max_retries: u32,
    /// Sample bound S: subdiagonal entries are drawn from [-S, S].
    pub sample_bound: i64,
}

impl Default for TsOptions {
    fn default() -> Self {
        TsOptions { seed: 0, max_retries: 8, sample_bound: 1_000_000 }
    }
}

/// Reduced Hermite normal form `U*A = H` (no column operations).
///
/// Requires the leading columns of `A` to be independent up to its rank;
/// otherwise no Hermite form with diagonal pivots exists and the result is
/// `NotEchelonCompatible`.
pub fn hermite_form<F: Field>(a: &PMat<F>, f: &F) -> Result<HermiteResult<F>, Error> {
    let (u, h) = hermite_raw(a, f)?;
    let is_ts = is_triangular_smith_form(&h, f);
    Ok(HermiteResult {
        u,
        h,
        r: QMat::identity(a.cols()),
        is_triangular_smith: is_ts,
        seed: 0,
        attempts: 1,
    })
}

/// Triangular Smith form `U*A*R = H` by repeated right preconditioning.
///
/// The first attempt uses the identity (so inputs that are already nice come
/// back untouched), the next few use small subdiagonal entries (they keep
/// denominators small, which keeps comprehensive branch sets small), and the
/// remaining attempts draw from the full sample set.
pub fn triangular_smith<F: Field>(
    a: &PMat<F>,
    f: &F,
    opts: &TsOptions,
) -> Result<HermiteResult<F>, Error> {
    let n = a.cols();
    for attempt in 0..=opts.max_retries {
        let r = preconditioner_for_attempt(n, opts, attempt);
        match try_preconditioner(a, f, &r)? {
            Some((u, h)) => {
                return Ok(HermiteResult {
                    u,
                    h,
                    r,
                    is_triangular_smith: true,
                    seed: opts.seed,
                    attempts: attempt + 1,
                })
            }
            None => continue,
        }
    }
    Err(Error::RetriesExhausted { attempts: opts.max_retries + 1 })
}

fn preconditioner_for_attempt(n: usize, opts: &TsOptions, attempt: u32) -> QMat {
    if attempt == 0 {
        return QMat::identity(n);
    }
    let seed = opts
        .seed
        .wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let bound = if attempt <= 3 { 3 } else { opts.sample_bound };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = n * n.saturating_sub(1) / 2;
    let entries: Vec<Rat> = (0..k)
        .map(|_| {
            let mut v = rng.gen_range(-bound..=bound);
            if attempt <= 3 && v == 0 {
                v = 1; // small-entry attempts avoid degenerate zeros
            }
            Rat::from_i64(v)
        })
        .collect();
    QMat::unit_lower(n, &entries)
}

/// One preconditioning attempt: `None` when `A*R` is not nice.
pub fn try_preconditioner<F: Field>(
    a: &PMat<F>,
    f: &F,
    r: &QMat,
) -> Result<Option<(Unimodular<F>, PMat<F>)>, Error> {
    let ar = mul_pmat_qmat(a, r, f);
    match hermite_raw(&ar, f) {
        Ok((u, h)) => {
            if is_triangular_smith_form(&h, f) {
                Ok(Some((u, h)))
            } else {
                Ok(None)
            }
        }
        Err(Error::NotEchelonCompatible) => Ok(None),
        Err(e) => Err(e),
    }
}

/// The niceness check by itself (used by the preconditioner statistics).
pub fn is_nice<F: Field>(a: &PMat<F>, f: &F) -> Result<bool, Error> {
    match hermite_raw(a, f) {
        Ok((_, h)) => Ok(is_triangular_smith_form(&h, f)),
        Err(Error::NotEchelonCompatible) => Ok(false),
        Err(e) => Err(e),
    }
}

fn hermite_raw<F: Field>(a: &PMat<F>, f: &F) -> Result<(Unimodular<F>, PMat<F>), Error> {
    let m = a.rows();
    let var = a.variable().clone();
    if m == 0 {
        return Ok((Unimodular::identity(0, var, f), a.clone()));
    }
    let rank = a.rank(f).map_err(Error::from)?;
    if rank == 0 {
        return Ok((Unimodular::identity(m, var, f), a.clone()));
    }
    let lead_cols: Vec<usize> = (0..rank).collect();
    let all_rows: Vec<usize> = (0..m).collect();
    let lead = a.submatrix(&all_rows, &lead_cols, f);
    let elim = lead.bareiss(f).map_err(Error::from)?;
    if elim.rank < rank {
        return Err(Error::NotEchelonCompatible);
    }
    // row permutation: pivot rows first (in discovery order), the rest in
    // index order
    let mut perm: Vec<usize> = elim.row_perm[..rank].to_vec();
    let mut rest: Vec<usize> = (0..m).filter(|i| !perm.contains(i)).collect();
    rest.sort_unstable();
    perm.extend(rest);

    let all_cols: Vec<usize> = (0..a.cols()).collect();
    let pa = a.submatrix(&perm, &all_cols, f);

    // B = [[A1, 0], [A3, I]] is nonsingular with deg_x(B) <= deg_x(A)
    let mut b = PMat::zero(m, m, var.clone());
    for i in 0..m {
        for j in 0..rank {
            b.set(i, j, pa.at(i, j).clone(), f);
        }
    }
    for i in rank..m {
        b.set(i, i, Poly::one(var.clone(), f), f);
    }
    let (u1, _t) = hermite_sweep_nonsingular(&b, f).map_err(Error::from)?;
    let h = u1.mat.mul(&pa, f);

    // U = U1 * P: reorder the columns of U1 by the permutation
    let mut u_cols = vec![0usize; m];
    for (k, &p) in perm.iter().enumerate() {
        u_cols[p] = k;
    }
    let u_mat = u1.mat.submatrix(&all_rows, &u_cols, f);
    let det = perm_signed(&perm, f, &u1.det);

    // the rank forces the trailing rows of H to vanish
    for i in rank..m {
        for j in 0..h.cols() {
            assert!(h.at(i, j).is_zero(), "rows beyond the rank must vanish");
        }
    }
    assert_degree_bounds(a, &u_mat, &h);
    Ok((Unimodular { mat: u_mat, det }, h))
}

fn perm_signed<F: Field>(perm: &[usize], f: &F, det: &F::El) -> F::El {
    let mut seen = vec![false; perm.len()];
    let mut neg = false;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            neg = !neg;
        }
    }
    if neg {
        f.neg(det)
    } else {
        det.clone()
    }
}

fn assert_degree_bounds<F: Field>(a: &PMat<F>, u: &PMat<F>, h: &PMat<F>) {
    let m = a.rows();
    let d = a.deg_x();
    assert!(
        u.deg_x() <= (m - 1) * d,
        "deg_x(U) = {} exceeds the (m-1)d = {} bound",
        u.deg_x(),
        (m - 1) * d
    );
    assert!(
        h.deg_x() <= m * d,
        "deg_x(H) = {} exceeds the md = {} bound",
        h.deg_x(),
        m * d
    );
}

/// Kannan-Bachem style sweep for a nonsingular square matrix: pairwise
/// extended-gcd elimination below each diagonal pivot, monic normalization,
/// then reduction above the pivot.
fn hermite_sweep_nonsingular<F: Field>(
    b: &PMat<F>,
    f: &F,
) -> Result<(Unimodular<F>, PMat<F>), ArithError> {
    let n = b.rows();
    assert_eq!(n, b.cols());
    let var = b.variable().clone();
    let mut h = b.clone();
    let mut u = PMat::identity(n, var.clone(), f);
    let mut det = f.one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&i| !h.at(i, col).is_zero())
            .expect("nonsingular matrix has a pivot in every column");
        if pivot != col {
            h.swap_rows(pivot, col);
            u.swap_rows(pivot, col);
            det = f.neg(&det);
        }
        for j in col + 1..n {
            if h.at(j, col).is_zero() {
                continue;
            }
            let pa = h.at(col, col).clone();
            let pb = h.at(j, col).clone();
            let (g, s, t) = xgcd(&pa, &pb, f)?;
            let a_over = pa.exact_div(&g, f)?;
            let b_over = pb.exact_div(&g, f)?;
            // det [[s, t], [-b/g, a/g]] = 1
            h.row_transform_2x2(col, j, &s, &t, &b_over.neg(f), &a_over, f);
            u.row_transform_2x2(col, j, &s, &t, &b_over.neg(f), &a_over, f);
        }
        let lc = h.at(col, col).lc().expect("pivot nonzero").clone();
        if !f.is_one(&lc) {
            let inv = f.inv(&lc)?;
            h.scale_row(col, &inv, f);
            u.scale_row(col, &inv, f);
            det = f.mul(&det, &inv);
        }
        for i in 0..col {
            if h.at(i, col).is_zero() {
                continue;
            }
            let (q, _) = h.at(i, col).divrem_monic(h.at(col, col), f);
            if q.is_zero() {
                continue;
            }
            let nq = q.neg(f);
            h.addmul_row(i, col, &nq, f);
            u.addmul_row(i, col, &nq, f);
        }
    }
    Ok((Unimodular { mat: u, det }, h))
}

/// Triangular Smith check: upper triangular, monic diagonal up to the rank
/// then zero rows, degree-reduced above nonzero pivots, and each diagonal
/// entry divides every entry below and to the right.
pub fn is_triangular_smith_form<F: Field>(h: &PMat<F>, f: &F) -> bool {
    let m = h.rows();
    let n = h.cols();
    let k = m.min(n);
    for i in 0..m {
        for j in 0..i.min(n) {
            if !h.at(i, j).is_zero() {
                return false;
            }
        }
    }
    let mut rank_end = k;
    for i in 0..k {
        if h.at(i, i).is_zero() {
            rank_end = i;
            break;
        }
    }
    for i in rank_end..m {
        for j in 0..n {
            if !h.at(i, j).is_zero() {
                return false;
            }
        }
    }
    for i in 0..rank_end {
        let s = h.at(i, i);
        if !f.is_one(s.lc().unwrap()) {
            return false;
        }
        // row dominance: the pivot divides everything to its right
        for j in i + 1..n {
            let e = h.at(i, j);
            if !e.is_zero() {
                let (_, rem) = e.divrem_monic(s, f);
                if !rem.is_zero() {
                    return false;
                }
            }
        }
        // degree reduction above the pivot
        for r in 0..i {
            let e = h.at(r, i);
            if !e.is_zero() && e.deg0() >= s.deg0() {
                return false;
            }
        }
        // divisibility chain along the diagonal
        if i + 1 < rank_end {
            let (_, rem) = h.at(i + 1, i + 1).divrem_monic(s, f);
            if !rem.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Reduced Hermite form check (no divisibility requirement).
pub fn is_reduced_hermite_form<F: Field>(h: &PMat<F>, f: &F) -> bool {
    let m = h.rows();
    let n = h.cols();
    for i in 0..m {
        for j in 0..i.min(n) {
            if !h.at(i, j).is_zero() {
                return false;
            }
        }
    }
    let k = m.min(n);
    for i in 0..k {
        let s = h.at(i, i);
        if s.is_zero() {
            continue;
        }
        if !f.is_one(s.lc().unwrap()) {
            return false;
        }
        for r in 0..i {
            if !h.at(r, i).is_zero() && h.at(r, i).deg0() >= s.deg0() {
                return false;
            }
        }
    }
    true
}

/// Column elimination from triangular Smith to diagonal Smith form:
/// `S = diag(H)` and `V = R * E` with `E` the column-operation product, so
/// `U*A*V = S` and `det(V) = det(R)`. Monic divisions only, so no new
/// denominator factors arise.
pub fn diagonalize_smith<F: Field>(h: &PMat<F>, r: &QMat, f: &F) -> (PMat<F>, PMat<F>) {
    debug_assert!(is_triangular_smith_form(h, f));
    let m = h.rows();
    let n = h.cols();
    let var = h.variable().clone();
    let mut s = h.clone();
    let mut e = PMat::identity(n, var, f);
    for i in 0..m.min(n) {
        if s.at(i, i).is_zero() {
            break;
        }
        for j in i + 1..n {
            if s.at(i, j).is_zero() {
                continue;
            }
            let (q, rem) = s.at(i, j).divrem_monic(s.at(i, i), f);
            assert!(rem.is_zero(), "triangular Smith row divisibility");
            let nq = q.neg(f);
            s.addmul_col(j, i, &nq, f);
            e.addmul_col(j, i, &nq, f);
        }
    }
    let v = r.embed(h.variable(), f).mul(&e, f);
    (s, v)
}

/// Exactness check: `U*A*R == H`.
pub fn verify_uar<F: Field>(a: &PMat<F>, res: &HermiteResult<F>, f: &F) -> bool {
    let ua = res.u.mat.mul(a, f);
    let uar = mul_pmat_qmat(&ua, &res.r, f);
    uar == res.h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::RationalField;
    use crate::symbol::Symbol;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn qp(coeffs: &[i64]) -> Poly<RationalField> {
        Poly::from_i64s(sym("x"), coeffs, &RationalField)
    }

    fn m2(a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> PMat<RationalField> {
        PMat::from_rows(
            sym("x"),
            vec![vec![qp(a), qp(b)], vec![qp(c), qp(d)]],
            &RationalField,
        )
    }

    #[test]
    fn already_reduced_is_fixed_point() {
        let f = RationalField;
        // A = [[x, 1], [0, x]] is reduced Hermite (but not triangular Smith)
        let a = m2(&[0, 1], &[1], &[], &[0, 1]);
        let res = hermite_form(&a, &f).unwrap();
        assert_eq!(res.h, a);
        assert!(res.u.mat == PMat::identity(2, sym("x"), &f));
        assert!(!res.is_triangular_smith);
        assert!(verify_uar(&a, &res, &f));
        assert!(is_reduced_hermite_form(&res.h, &f));
    }

    #[test]
    fn preconditioner_shapes() {
        let p1 = random_preconditioner(1, 7, 1_000_000);
        assert!(p1.mat.is_identity());
        let p2 = random_preconditioner(2, 7, 1_000_000);
        assert_eq!(*p2.mat.at(0, 0), Rat::one());
        assert_eq!(*p2.mat.at(0, 1), Rat::zero());
        assert_eq!(*p2.mat.at(1, 1), Rat::one());
        assert_eq!(p2.mat.det(), Rat::one());
        // deterministic for a fixed seed
        let p2b = random_preconditioner(2, 7, 1_000_000);
        assert_eq!(p2.mat, p2b.mat);
    }

    #[test]
    fn forced_small_preconditioner_example() {
        let f = RationalField;
        // A = [[x,1],[0,x]] with subdiagonal r = 1: H = [[1, 1-x], [0, x^2]]
        let a = m2(&[0, 1], &[1], &[], &[0, 1]);
        let r = QMat::unit_lower(2, &[Rat::one()]);
        let (u, h) = try_preconditioner(&a, &f, &r).unwrap().expect("r=1 is nice");
        let expected = PMat::from_rows(
            sym("x"),
            vec![vec![qp(&[1]), qp(&[1, -1])], vec![Poly::zero(sym("x")), qp(&[0, 0, 1])]],
            &f,
        );
        assert_eq!(h, expected);
        let res = HermiteResult { u, h, r, is_triangular_smith: true, seed: 0, attempts: 1 };
        assert!(verify_uar(&a, &res, &f));
        assert!(res.u.verify(&f).unwrap());
    }

    #[test]
    fn triangular_smith_identity_first() {
        let f = RationalField;
        // diag(1, x) is already triangular Smith: R must stay the identity
        let a = m2(&[1], &[], &[], &[0, 1]);
        let res = triangular_smith(&a, &f, &TsOptions::default()).unwrap();
        assert!(res.r.is_identity());
        assert_eq!(res.h, a);
        assert_eq!(res.attempts, 1);
    }

    #[test]
    fn triangular_smith_diagonal_is_canonical() {
        let f = RationalField;
        let a = m2(&[0, 1], &[1], &[], &[0, 1]);
        let res = triangular_smith(&a, &f, &TsOptions::default()).unwrap();
        assert!(res.is_triangular_smith);
        let d = res.h.diag();
        assert_eq!(d[0], qp(&[1]));
        assert_eq!(d[1], qp(&[0, 0, 1]));
        assert!(verify_uar(&a, &res, &f));
        assert!(res.u.verify(&f).unwrap());
    }

    #[test]
    fn not_echelon_compatible_reported() {
        let f = RationalField;
        // first column zero but rank 1
        let a = m2(&[], &[1], &[], &[0, 1]);
        assert!(matches!(hermite_form(&a, &f), Err(Error::NotEchelonCompatible)));
        // triangular smith still works via preconditioning
        let res = triangular_smith(&a, &f, &TsOptions::default()).unwrap();
        assert!(res.is_triangular_smith);
        assert!(verify_uar(&a, &res, &f));
    }

    #[test]
    fn zero_and_rectangular() {
        let f = RationalField;
        let z: PMat<RationalField> = PMat::zero(2, 3, sym("x"));
        let res = hermite_form(&z, &f).unwrap();
        assert!(res.h.is_zero());
        assert!(res.is_triangular_smith);
        // rectangular: 3x2
        let a = PMat::from_rows(
            sym("x"),
            vec![
                vec![qp(&[0, 1]), qp(&[1])],
                vec![qp(&[1]), qp(&[0, 1])],
                vec![qp(&[1, 1]), qp(&[2, 1])],
            ],
            &f,
        );
        let res = triangular_smith(&a, &f, &TsOptions::default()).unwrap();
        assert!(verify_uar(&a, &res, &f));
        assert_eq!(res.h.rank(&f).unwrap(), a.rank(&f).unwrap());
    }

    #[test]
    fn diagonalize_examples() {
        let f = RationalField;
        // already diagonal: S = H, V = R
        let h = m2(&[1], &[], &[], &[0, 0, 1]);
        let r = QMat::identity(2);
        let (s, v) = diagonalize_smith(&h, &r, &f);
        assert_eq!(s, h);
        assert!(v == PMat::identity(2, sym("x"), &f));
        // H = [[1, 1-x], [0, x^2]] -> S = diag(1, x^2)
        let h = PMat::from_rows(
            sym("x"),
            vec![vec![qp(&[1]), qp(&[1, -1])], vec![Poly::zero(sym("x")), qp(&[0, 0, 1])]],
            &f,
        );
        let (s, v) = diagonalize_smith(&h, &r, &f);
        assert_eq!(s.diag(), vec![qp(&[1]), qp(&[0, 0, 1])]);
        assert!(s.at(0, 1).is_zero());
        let dv = v.det(&f).unwrap();
        assert_eq!(dv.as_constant(&f).unwrap(), Rat::one());
    }

    #[test]
    fn smith_diag_matches_minor_gcds_small() {
        let f = RationalField;
        let a = m2(&[2, 1], &[1, 1], &[0, 1], &[3]);
        let res = triangular_smith(&a, &f, &TsOptions::default()).unwrap();
        let gcd_of_minors = |k: usize| {
            let minors = a.all_minors(k, &f).unwrap();
            let mut g: Poly<RationalField> = Poly::zero(sym("x"));
            for (_, _, v) in minors {
                g = f.poly_gcd(&g, &v).unwrap();
            }
            g
        };
        let d1 = gcd_of_minors(1);
        let d2 = gcd_of_minors(2);
        let s1 = d1.clone();
        let s2 = d2.exact_div(&d1, &f).unwrap().monic(&f).unwrap();
        assert_eq!(res.h.diag(), vec![s1, s2]);
    }

    proptest::proptest! {
        #![proptest_config(proptest::test_runner::Config::with_cases(16))]
        #[test]
        fn uar_identity_holds(entries in proptest::collection::vec(
            proptest::collection::vec(-4i64..5, 0..4), 9)) {
            let f = RationalField;
            let polys: Vec<Poly<RationalField>> =
                entries.iter().map(|c| qp(c)).collect();
            let a = PMat::from_rows(
                sym("x"),
                vec![
                    polys[0..3].to_vec(),
                    polys[3..6].to_vec(),
                    polys[6..9].to_vec(),
                ],
                &f,
            );
            // Las Vegas contract: a result is always correct; degenerate
            // rank-deficient inputs may exhaust the retries, since no
            // constant column transform can make rows like (0, -1, x) nice.
            match triangular_smith(&a, &f, &TsOptions::default()) {
                Ok(res) => {
                    proptest::prop_assert!(verify_uar(&a, &res, &f));
                    proptest::prop_assert!(res.is_triangular_smith);
                    proptest::prop_assert!(res.u.verify(&f).unwrap());
                    let d = a.deg_x();
                    proptest::prop_assert!(res.u.mat.deg_x() <= 2 * d);
                    proptest::prop_assert!(res.h.deg_x() <= 3 * d);
                }
                Err(Error::RetriesExhausted { .. }) => {
                    proptest::prop_assert!(a.rank(&f).unwrap() < 3);
                }
                Err(e) => return Err(proptest::test_runner::TestCaseError::fail(
                    format!("unexpected error: {e}"))),
            }
        }
    }
}
