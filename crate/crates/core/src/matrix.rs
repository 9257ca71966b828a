//! Matrices over `K[x]` for an arbitrary coefficient field `K`, plus plain
//! rational matrices for preconditioners and nullspace bases.
//!
//! Rank and determinants use fraction-free (Bareiss) elimination with full
//! pivoting; the exact divisions are guaranteed by the Bareiss identity.
//! Matrices carry cached degree bounds (degree in `x`, degree in the tower
//! parameters) that every operation updates conservatively; debug builds
//! assert the bounds never underestimate the true degrees.

use crate::field::{ArithError, Field};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::symbol::Symbol;

#[derive(Clone)]
pub struct PMat<F: Field> {
    rows: usize,
    cols: usize,
    var: Symbol,
    entries: Vec<Poly<F>>,
    degx_bound: usize,
    pdeg_bound: usize,
}

impl<F: Field> PartialEq for PMat<F> {
    fn eq(&self, other: &Self) -> bool {
        // cached bounds are bookkeeping, not identity
        self.rows == other.rows
            && self.cols == other.cols
            && self.var == other.var
            && self.entries == other.entries
    }
}

impl<F: Field> std::fmt::Debug for PMat<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "PMat {}x{} in {} [", self.rows, self.cols, self.var)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> PMat<F> {
    pub fn zero(rows: usize, cols: usize, var: Symbol) -> Self {
        PMat {
            rows,
            cols,
            var: var.clone(),
            entries: (0..rows * cols).map(|_| Poly::zero(var.clone())).collect(),
            degx_bound: 0,
            pdeg_bound: 0,
        }
    }

    pub fn identity(n: usize, var: Symbol, f: &F) -> Self {
        let mut m = PMat::zero(n, n, var.clone());
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(var.clone(), f);
        }
        m
    }

    pub fn from_rows(var: Symbol, rows: Vec<Vec<Poly<F>>>, f: &F) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        let mut m = PMat {
            rows: r,
            cols: c,
            var,
            entries: rows.into_iter().flatten().collect(),
            degx_bound: 0,
            pdeg_bound: 0,
        };
        m.recompute_bounds(f);
        m
    }

    pub fn from_fn(rows: usize, cols: usize, var: Symbol, f: &F, mut gen: impl FnMut(usize, usize) -> Poly<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(gen(i, j));
            }
        }
        let mut m = PMat { rows, cols, var, entries, degx_bound: 0, pdeg_bound: 0 };
        m.recompute_bounds(f);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn variable(&self) -> &Symbol {
        &self.var
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<F>, f: &F) {
        self.degx_bound = self.degx_bound.max(p.deg0());
        self.pdeg_bound = self.pdeg_bound.max(poly_pdeg(&p, f));
        self.entries[i * self.cols + j] = p;
        self.check(f);
    }

    pub fn entries(&self) -> &[Poly<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Actual maximum degree in the matrix variable.
    pub fn deg_x(&self) -> usize {
        self.entries.iter().map(|p| p.deg0()).max().unwrap_or(0)
    }

    /// Actual maximum parameter degree of any coefficient.
    pub fn param_deg(&self, f: &F) -> usize {
        self.entries.iter().map(|p| poly_pdeg(p, f)).max().unwrap_or(0)
    }

    pub fn deg_x_bound(&self) -> usize {
        self.degx_bound
    }

    pub fn param_deg_bound(&self) -> usize {
        self.pdeg_bound
    }

    fn recompute_bounds(&mut self, f: &F) {
        self.degx_bound = self.deg_x();
        self.pdeg_bound = self.param_deg(f);
    }

    /// Cached bounds must never underestimate the true degrees.
    pub fn check(&self, f: &F) {
        debug_assert!(self.degx_bound >= self.deg_x(), "deg_x bound underestimates");
        debug_assert!(self.pdeg_bound >= self.param_deg(f), "param bound underestimates");
    }

    pub fn map(&self, f: &F, mut m: impl FnMut(&Poly<F>) -> Poly<F>) -> Self {
        let mut out = PMat {
            rows: self.rows,
            cols: self.cols,
            var: self.var.clone(),
            entries: self.entries.iter().map(|p| m(p)).collect(),
            degx_bound: 0,
            pdeg_bound: 0,
        };
        out.recompute_bounds(f);
        out
    }

    pub fn transpose(&self, f: &F) -> Self {
        let mut out = PMat::zero(self.cols, self.rows, self.var.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.at(i, j).clone();
            }
        }
        out.degx_bound = self.degx_bound;
        out.pdeg_bound = self.pdeg_bound;
        out.check(f);
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize], f: &F) -> Self {
        let mut out = PMat::zero(row_idx.len(), col_idx.len(), self.var.clone());
        for (a, &i) in row_idx.iter().enumerate() {
            for (b, &j) in col_idx.iter().enumerate() {
                out.entries[a * col_idx.len() + b] = self.at(i, j).clone();
            }
        }
        out.degx_bound = self.degx_bound;
        out.pdeg_bound = self.pdeg_bound;
        out.check(f);
        out
    }

    pub fn add(&self, other: &Self, f: &F) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b, f))
            .collect();
        let m = PMat {
            rows: self.rows,
            cols: self.cols,
            var: self.var.clone(),
            entries,
            degx_bound: self.degx_bound.max(other.degx_bound),
            pdeg_bound: self.pdeg_bound.max(other.pdeg_bound),
        };
        m.check(f);
        m
    }

    pub fn sub(&self, other: &Self, f: &F) -> Self {
        self.add(&other.neg(f), f)
    }

    pub fn neg(&self, f: &F) -> Self {
        let m = PMat {
            rows: self.rows,
            cols: self.cols,
            var: self.var.clone(),
            entries: self.entries.iter().map(|p| p.neg(f)).collect(),
            degx_bound: self.degx_bound,
            pdeg_bound: self.pdeg_bound,
        };
        m.check(f);
        m
    }

    pub fn mul(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = PMat::zero(self.rows, other.cols, self.var.clone());
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.var.clone());
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j), f), f);
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        out.degx_bound = self.degx_bound + other.degx_bound;
        out.pdeg_bound = self.pdeg_bound + other.pdeg_bound;
        out.check(f);
        out
    }

    pub fn mul_vec(&self, v: &[Poly<F>], f: &F) -> Vec<Poly<F>> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Poly::zero(self.var.clone());
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(&v[k], f), f);
                }
                acc
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i += q * row_j
    pub fn addmul_row(&mut self, i: usize, j: usize, q: &Poly<F>, f: &F) {
        for k in 0..self.cols {
            let t = self.at(j, k).mul(q, f);
            self.entries[i * self.cols + k] = self.at(i, k).add(&t, f);
        }
        self.degx_bound = self.degx_bound.max(self.degx_bound + q.deg0());
        self.pdeg_bound = self.pdeg_bound + poly_pdeg(q, f);
        self.check(f);
    }

    /// col_j += q * col_i
    pub fn addmul_col(&mut self, j: usize, i: usize, q: &Poly<F>, f: &F) {
        for k in 0..self.rows {
            let t = self.at(k, i).mul(q, f);
            self.entries[k * self.cols + j] = self.at(k, j).add(&t, f);
        }
        self.degx_bound = self.degx_bound.max(self.degx_bound + q.deg0());
        self.pdeg_bound = self.pdeg_bound + poly_pdeg(q, f);
        self.check(f);
    }

    pub fn scale_row(&mut self, i: usize, c: &F::El, f: &F) {
        for k in 0..self.cols {
            self.entries[i * self.cols + k] = self.at(i, k).scale(c, f);
        }
        self.pdeg_bound += f.param_degree(c);
        self.check(f);
    }

    /// Apply a 2x2 row transform: (row_a, row_b) <- (p*ra + q*rb, r*ra + s*rb).
    pub fn row_transform_2x2(
        &mut self,
        a: usize,
        b: usize,
        p: &Poly<F>,
        q: &Poly<F>,
        r: &Poly<F>,
        s: &Poly<F>,
        f: &F,
    ) {
        for k in 0..self.cols {
            let ra = self.at(a, k).clone();
            let rb = self.at(b, k).clone();
            self.entries[a * self.cols + k] = p.mul(&ra, f).add(&q.mul(&rb, f), f);
            self.entries[b * self.cols + k] = r.mul(&ra, f).add(&s.mul(&rb, f), f);
        }
        let tdeg = [p, q, r, s].iter().map(|t| t.deg0()).max().unwrap();
        let tp = [p, q, r, s].iter().map(|t| poly_pdeg(t, f)).max().unwrap();
        self.degx_bound += tdeg;
        self.pdeg_bound += tp;
        self.check(f);
    }

    pub fn hstack(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = PMat::zero(self.rows, self.cols + other.cols, self.var.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i * out.cols + j] = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                out.entries[i * out.cols + self.cols + j] = other.at(i, j).clone();
            }
        }
        out.recompute_bounds(f);
        out
    }

    pub fn vstack(&self, other: &Self, f: &F) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut rows = Vec::new();
        for i in 0..self.rows {
            rows.push((0..self.cols).map(|j| self.at(i, j).clone()).collect());
        }
        for i in 0..other.rows {
            rows.push((0..other.cols).map(|j| other.at(i, j).clone()).collect());
        }
        PMat::from_rows(self.var.clone(), rows, f)
    }

    /// Fraction-free Gaussian elimination with full pivoting.
    pub fn bareiss(&self, f: &F) -> Result<Elimination<F>, ArithError> {
        let n = self.rows;
        let m = self.cols;
        let mut w: Vec<Vec<Poly<F>>> = (0..n)
            .map(|i| (0..m).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..m).collect();
        let mut sign_neg = false;
        let mut prev: Option<Poly<F>> = None;
        let mut rank = 0usize;
        for k in 0..n.min(m) {
            // deterministic pivot: lowest degree, then smallest (i, j)
            let mut pivot: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..m {
                    if let Some(d) = w[i][j].degree() {
                        let better = match pivot {
                            None => true,
                            Some((pd, pi, pj)) => (d, i, j) < (pd, pi, pj),
                        };
                        if better {
                            pivot = Some((d, i, j));
                        }
                    }
                }
            }
            let (_, pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            if pi != k {
                w.swap(pi, k);
                row_perm.swap(pi, k);
                sign_neg = !sign_neg;
            }
            if pj != k {
                for row in w.iter_mut() {
                    row.swap(pj, k);
                }
                col_perm.swap(pj, k);
                sign_neg = !sign_neg;
            }
            for i in k + 1..n {
                for j in k + 1..m {
                    let t1 = w[k][k].mul(&w[i][j], f);
                    let t2 = w[i][k].mul(&w[k][j], f);
                    let num = t1.sub(&t2, f);
                    w[i][j] = match &prev {
                        None => num,
                        Some(p) => num.exact_div(p, f)?,
                    };
                }
                w[i][k] = Poly::zero(self.var.clone());
            }
            prev = Some(w[k][k].clone());
            rank = k + 1;
        }
        let det = if n == m {
            Some(if rank < n {
                Poly::zero(self.var.clone())
            } else {
                let d = w[n - 1][n - 1].clone();
                if sign_neg {
                    d.neg(f)
                } else {
                    d
                }
            })
        } else {
            None
        };
        Ok(Elimination { rank, det, row_perm, col_perm })
    }

    pub fn rank(&self, f: &F) -> Result<usize, ArithError> {
        Ok(self.bareiss(f)?.rank)
    }

    pub fn det(&self, f: &F) -> Result<Poly<F>, ArithError> {
        assert_eq!(self.rows, self.cols, "determinant of a nonsquare matrix");
        if self.rows == 0 {
            return Ok(Poly::one(self.var.clone(), f));
        }
        Ok(self.bareiss(f)?.det.unwrap())
    }

    /// Every k-by-k minor: (row set, column set, determinant value).
    pub fn all_minors(&self, k: usize, f: &F) -> Result<Vec<(Vec<usize>, Vec<usize>, Poly<F>)>, ArithError> {
        assert!(k <= self.rows.min(self.cols));
        let row_sets = index_combinations(self.rows, k);
        let col_sets = index_combinations(self.cols, k);
        let mut out = Vec::new();
        for rs in &row_sets {
            for cs in &col_sets {
                let d = self.submatrix(rs, cs, f).det(f)?;
                out.push((rs.clone(), cs.clone(), d));
            }
        }
        Ok(out)
    }

    pub fn diag(&self) -> Vec<Poly<F>> {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i).clone()).collect()
    }
}

fn poly_pdeg<F: Field>(p: &Poly<F>, f: &F) -> usize {
    p.coeffs().iter().map(|c| f.param_degree(c)).max().unwrap_or(0)
}

pub fn index_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug)]
pub struct Elimination<F: Field> {
    pub rank: usize,
    pub det: Option<Poly<F>>,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

/// A square polynomial matrix together with its determinant, which must be a
/// unit of the coefficient field (degree 0 in x, nonzero).
#[derive(Clone, Debug)]
pub struct Unimodular<F: Field> {
    pub mat: PMat<F>,
    pub det: F::El,
}

impl<F: Field> Unimodular<F> {
    pub fn identity(n: usize, var: Symbol, f: &F) -> Self {
        Unimodular { mat: PMat::identity(n, var, f), det: f.one() }
    }

    /// Exactness check: recompute the determinant and compare.
    pub fn verify(&self, f: &F) -> Result<bool, ArithError> {
        let d = self.mat.det(f)?;
        match d.as_constant(f) {
            Some(c) => Ok(!f.is_zero(&c) && c == self.det),
            None => Ok(false),
        }
    }
}

// ---------------------------------------------------------------------------
// Plain rational matrices
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl std::fmt::Debug for QMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        QMat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// Unit lower triangular with the given subdiagonal entries, row-major
    /// over pairs i > j.
    pub fn unit_lower(n: usize, subdiag: &[Rat]) -> Self {
        let mut m = QMat::identity(n);
        let mut it = subdiag.iter();
        for i in 0..n {
            for j in 0..i {
                m.entries[i * n + j] = it.next().expect("enough subdiagonal entries").clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.at(i, k) * other.at(k, j));
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.at(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut w: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut det = Rat::one();
        for k in 0..n {
            let piv = match (k..n).find(|&i| !w[i][k].is_zero()) {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if piv != k {
                w.swap(piv, k);
                det = -det;
            }
            det = &det * &w[k][k];
            let inv = w[k][k].inv().unwrap();
            for i in k + 1..n {
                let factor = &w[i][k] * &inv;
                for j in k..n {
                    let t = &factor * &w[k][j];
                    w[i][j] = &w[i][j] - &t;
                }
            }
        }
        det
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn embed<F: Field>(&self, var: &Symbol, f: &F) -> PMat<F> {
        PMat::from_fn(self.rows, self.cols, var.clone(), f, |i, j| {
            Poly::constant(var.clone(), f.from_rat(self.at(i, j)), f)
        })
    }
}

/// A * R with R rational, embedding R into the coefficient field.
pub fn mul_pmat_qmat<F: Field>(a: &PMat<F>, r: &QMat, f: &F) -> PMat<F> {
    let rm = r.embed(a.variable(), f);
    a.mul(&rm, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::RationalField;

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
    fn identity_and_row_ops() {
        let f = RationalField;
        let a = m2(&[0, 1], &[1], &[], &[0, 1]); // [[x, 1], [0, x]]
        let i3 = PMat::identity(2, sym("x"), &f);
        assert_eq!(i3.mul(&a, &f), a);
        let mut b = a.clone();
        b.swap_rows(0, 1);
        b.swap_rows(0, 1);
        assert_eq!(b, a);
    }

    #[test]
    fn minors_examples() {
        let f = RationalField;
        // 1x1 minors of [[x,1],[0,x]]: {x, 1, 0, x}; 2x2 minor: x^2
        let a = m2(&[0, 1], &[1], &[], &[0, 1]);
        let ones = a.all_minors(1, &f).unwrap();
        let vals: Vec<Poly<RationalField>> = ones.into_iter().map(|(_, _, d)| d).collect();
        assert!(vals.contains(&qp(&[0, 1])));
        assert!(vals.contains(&qp(&[1])));
        assert!(vals.contains(&Poly::zero(sym("x"))));
        let twos = a.all_minors(2, &f).unwrap();
        assert_eq!(twos.len(), 1);
        assert_eq!(twos[0].2, qp(&[0, 0, 1]));
        // gcd of leading-column 1x1 minors is x; gcd of all 1x1 minors is 1
        let lead: Vec<Poly<RationalField>> = (0..2).map(|i| a.at(i, 0).clone()).collect();
        let g_lead = f.poly_gcd(&lead[0], &lead[1]).unwrap();
        assert_eq!(g_lead, qp(&[0, 1]));
        let mut g_all: Poly<RationalField> = Poly::zero(sym("x"));
        for v in [a.at(0, 0), a.at(0, 1), a.at(1, 0), a.at(1, 1)] {
            g_all = f.poly_gcd(&g_all, v).unwrap();
        }
        assert_eq!(g_all, qp(&[1]));
    }

    #[test]
    fn rank_examples() {
        let f = RationalField;
        assert_eq!(PMat::<RationalField>::zero(3, 4, sym("x")).rank(&f).unwrap(), 0);
        assert_eq!(PMat::identity(4, sym("x"), &f).rank(&f).unwrap(), 4);
        // [[x, x], [x, x]] has rank 1
        let a = m2(&[0, 1], &[0, 1], &[0, 1], &[0, 1]);
        assert_eq!(a.rank(&f).unwrap(), 1);
    }

    #[test]
    fn determinant_multiplicative() {
        let f = RationalField;
        let a = m2(&[1, 1], &[2], &[0, 0, 1], &[3, 1]);
        let b = m2(&[5], &[0, 2], &[1, 1], &[0, 1]);
        let da = a.det(&f).unwrap();
        let db = b.det(&f).unwrap();
        let dab = a.mul(&b, &f).det(&f).unwrap();
        assert_eq!(da.mul(&db, &f), dab);
    }

    #[test]
    fn rank_invariant_under_row_ops() {
        let f = RationalField;
        let a = m2(&[1, 1], &[2], &[0, 0, 1], &[3, 1]);
        let r0 = a.rank(&f).unwrap();
        let mut b = a.clone();
        b.addmul_row(0, 1, &qp(&[7, 3]), &f);
        b.swap_rows(0, 1);
        assert_eq!(b.rank(&f).unwrap(), r0);
    }

    #[test]
    fn degree_bounds_never_underestimate() {
        let f = RationalField;
        let a = m2(&[1, 1], &[2], &[0, 0, 1], &[3, 1]);
        let b = a.mul(&a, &f);
        assert!(b.deg_x_bound() >= b.deg_x());
        let mut c = a.clone();
        c.addmul_col(1, 0, &qp(&[0, 0, 5]), &f);
        assert!(c.deg_x_bound() >= c.deg_x());
        c.check(&f);
    }

    #[test]
    fn qmat_basics() {
        let r = QMat::unit_lower(3, &[Rat::from_i64(2), Rat::from_i64(-1), Rat::from_i64(5)]);
        assert_eq!(r.det(), Rat::one());
        assert!(!r.is_identity());
        assert!(QMat::identity(3).is_identity());
        let f = RationalField;
        let a = PMat::identity(3, sym("x"), &f);
        let ar = mul_pmat_qmat(&a, &r, &f);
        assert_eq!(*ar.at(1, 0), Poly::constant(sym("x"), Rat::from_i64(2), &f));
    }
}
