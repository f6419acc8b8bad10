//! Exact dense/sparse linear algebra: matrices, echelon reduction, kernels,
//! linear solving, and quotient vector spaces with explicit projection and
//! section maps.
//!
//! Pivoting is deterministic: rows are processed in the order supplied and a
//! pivot is the first nonzero column of the reduced row. The resulting pivot
//! column set, canonical coset representatives, kernel vectors and particular
//! solutions depend only on the input data, not on internal row order.

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};

/// Dense matrix acting on column vectors: `y = M x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.cols)
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`, skipping zero entries of `self`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, x.len(), "matrix-vector shape mismatch");
        let mut y = vec![self.field.zero(); self.rows];
        // Column-major accumulation: cost scales with the support of x.
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.at(i, j);
                if !a.is_zero() {
                    y[i] = y[i].add(&a.mul(xj));
                }
            }
        }
        y
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut red = Reducer::new(self.field, self.cols);
        for r in self.rows_iter() {
            red.add_dense(r);
        }
        red.rank()
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn invert(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.at(col, j).clone(), a.at(pivot, j).clone());
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.at(col, j).clone(), inv.at(pivot, j).clone());
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let d = a.at(col, col).inv().expect("pivot is nonzero");
            for j in 0..n {
                a.set(col, j, a.at(col, j).mul(&d));
                inv.set(col, j, inv.at(col, j).mul(&d));
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let v = a.at(r, j).sub(&f.mul(a.at(col, j)));
                    a.set(r, j, v);
                    let v = inv.at(r, j).sub(&f.mul(inv.at(col, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }
}

/// Sparse row: (column, coefficient) pairs sorted by column, coefficients nonzero.
pub type SparseRow = Vec<(usize, Scalar)>;

pub fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

pub fn sparse_to_dense(field: FieldSpec, n: usize, row: &SparseRow) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    for (i, s) in row {
        v[*i] = s.clone();
    }
    v
}

/// Applies a column-sparse map to a sparse vector, returning a dense result.
pub fn apply_columns(
    field: FieldSpec,
    out_dim: usize,
    cols: &[SparseRow],
    x: &SparseRow,
) -> Vec<Scalar> {
    let mut y = vec![field.zero(); out_dim];
    for (j, c) in x {
        for (i, v) in &cols[*j] {
            y[*i] = y[*i].add(&c.mul(v));
        }
    }
    y
}

/// `target - c * source`, both sorted sparse rows.
pub(crate) fn sparse_sub_scaled(target: &SparseRow, source: &SparseRow, c: &Scalar) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let tc = target.get(i).map(|x| x.0);
        let sc = source.get(j).map(|x| x.0);
        match (tc, sc) {
            (Some(a), Some(b)) if a == b => {
                let v = target[i].1.sub(&c.mul(&source[j].1));
                if !v.is_zero() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(target[i].clone());
                let _ = a;
                i += 1;
            }
            (Some(_), Some(b)) => {
                let v = c.mul(&source[j].1).neg();
                if !v.is_zero() {
                    out.push((b, v));
                }
                j += 1;
            }
            (Some(_), None) => {
                out.push(target[i].clone());
                i += 1;
            }
            (None, Some(b)) => {
                let v = c.mul(&source[j].1).neg();
                if !v.is_zero() {
                    out.push((b, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental exact row reducer (echelon form, leading coefficient 1).
///
/// Rows are reduced against stored pivot rows as they arrive; independent
/// remainders become new pivot rows keyed by their first nonzero column.
#[derive(Debug, Clone)]
pub struct Reducer {
    field: FieldSpec,
    ncols: usize,
    pivots: std::collections::BTreeMap<usize, SparseRow>,
}

impl Reducer {
    pub fn new(field: FieldSpec, ncols: usize) -> Reducer {
        Reducer { field, ncols, pivots: std::collections::BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Reduces a row against the current pivots without storing it.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return row;
            };
            let Some(p) = self.pivots.get(&lead) else {
                return row;
            };
            row = sparse_sub_scaled(&row, p, &coeff);
        }
    }

    /// Adds a row; returns true if it was independent of the current span.
    pub fn add_sparse(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((lead, coeff)) = row.first().cloned() else {
            return false;
        };
        let inv = coeff.inv().expect("leading coefficient is nonzero");
        let normalized: SparseRow = row.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    pub fn add_dense(&mut self, row: &[Scalar]) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        self.add_sparse(dense_to_sparse(row))
    }

    /// Sparse canonical coset representative: zeroes every pivot coordinate.
    /// The leftmost remaining pivot coordinate strictly increases each round.
    pub fn canonical_rep_sparse(&self, x: &SparseRow) -> SparseRow {
        let mut cur = x.clone();
        loop {
            let hit = cur
                .iter()
                .find(|(col, _)| self.pivots.contains_key(col))
                .map(|(col, v)| (*col, v.clone()));
            let Some((col, c)) = hit else {
                return cur;
            };
            cur = sparse_sub_scaled(&cur, &self.pivots[&col], &c);
        }
    }

    /// Canonical coset representative: zeroes every pivot coordinate.
    pub fn canonical_rep(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut v = x.to_vec();
        // Ascending pivot order: clearing column p only touches columns > p.
        let pivot_cols: Vec<usize> = self.pivots.keys().copied().collect();
        for p in pivot_cols {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (col, coeff) in &self.pivots[&p] {
                v[*col] = v[*col].sub(&c.mul(coeff));
            }
        }
        v
    }

    /// Kernel basis of the row system, one vector per free column, ascending.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let free = self.free_cols();
        let mut out = Vec::with_capacity(free.len());
        for f in free {
            let mut x = vec![self.field.zero(); self.ncols];
            x[f] = self.field.one();
            self.back_substitute(&mut x);
            out.push(x);
        }
        out
    }

    // Solves pivot coordinates given fixed free coordinates (descending order).
    fn back_substitute(&self, x: &mut [Scalar]) {
        for (p, row) in self.pivots.iter().rev() {
            let mut acc = self.field.zero();
            for (col, coeff) in row {
                if col == p {
                    continue;
                }
                if !x[*col].is_zero() {
                    acc = acc.add(&coeff.mul(&x[*col]));
                }
            }
            x[*p] = acc.neg();
        }
    }
}

/// Kernel basis of `m` (solutions of `m x = 0`), deterministic order.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut red = Reducer::new(m.field, m.cols);
    for r in m.rows_iter() {
        red.add_dense(r);
    }
    red.kernel_basis()
}

/// Outcome of an exact linear solve.
#[derive(Debug, Clone)]
pub enum SolveOutcome {
    /// `particular` has every free variable zeroed; `kernel` spans the
    /// homogeneous solutions.
    Solution { particular: Vec<Scalar>, kernel: Vec<Vec<Scalar>> },
    Infeasible,
}

/// Solves `m x = b` exactly.
pub fn solve_linear(m: &Matrix, b: &[Scalar]) -> Result<SolveOutcome, Error> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but rhs has {} entries",
            m.rows,
            b.len()
        )));
    }
    let n = m.cols;
    // Augmented homogeneous system in (x, 1): row | -b.
    let mut red = Reducer::new(m.field, n + 1);
    for (i, r) in m.rows_iter().enumerate() {
        let mut s = dense_to_sparse(r);
        if !b[i].is_zero() {
            s.push((n, b[i].neg()));
        }
        red.add_sparse(s);
    }
    if red.pivots.contains_key(&n) {
        return Ok(SolveOutcome::Infeasible);
    }
    let mut particular = vec![m.field.zero(); n + 1];
    particular[n] = m.field.one();
    red.back_substitute(&mut particular);
    particular.truncate(n);
    let kernel = red
        .free_cols()
        .into_iter()
        .filter(|f| *f < n)
        .map(|f| {
            let mut x = vec![m.field.zero(); n + 1];
            x[f] = m.field.one();
            red.back_substitute(&mut x);
            x.truncate(n);
            x
        })
        .collect();
    Ok(SolveOutcome::Solution { particular, kernel })
}

/// A finite-dimensional quotient space V / span(relations) with explicit
/// projection and section.
///
/// The quotient basis is the set of non-pivot coordinates of the reduced
/// relation matrix; the section embeds those coordinates back into V. The
/// projection is stored column-sparse so large pair spaces stay affordable.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    pub field: FieldSpec,
    pub ambient_dim: usize,
    pub quotient_dim: usize,
    /// Ambient coordinates indexing the quotient basis (ascending).
    pub free_cols: Vec<usize>,
    /// Column j: quotient coordinates of the ambient basis vector e_j.
    proj_cols: Vec<SparseRow>,
    relations: Reducer,
}

impl QuotientSpace {
    /// Builds V / span(relations) from relation generators in ambient coords.
    pub fn new<I>(field: FieldSpec, ambient_dim: usize, relations: I) -> QuotientSpace
    where
        I: IntoIterator<Item = SparseRow>,
    {
        let mut red = Reducer::new(field, ambient_dim);
        for r in relations {
            red.add_sparse(r);
        }
        let free = red.free_cols();
        let qdim = free.len();
        let mut qindex = vec![usize::MAX; ambient_dim];
        for (qi, f) in free.iter().enumerate() {
            qindex[*f] = qi;
        }
        let mut proj_cols = Vec::with_capacity(ambient_dim);
        for j in 0..ambient_dim {
            let rep = red.canonical_rep_sparse(&vec![(j, field.one())]);
            proj_cols.push(rep.into_iter().map(|(c, v)| (qindex[c], v)).collect());
        }
        QuotientSpace {
            field,
            ambient_dim,
            quotient_dim: qdim,
            free_cols: free,
            proj_cols,
            relations: red,
        }
    }

    pub fn project(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut y = vec![self.field.zero(); self.quotient_dim];
        for (j, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, v) in &self.proj_cols[j] {
                y[*i] = y[*i].add(&c.mul(v));
            }
        }
        y
    }

    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let mut x = vec![self.field.zero(); self.ambient_dim];
        for (qi, f) in self.free_cols.iter().enumerate() {
            if !q[qi].is_zero() {
                x[*f] = q[qi].clone();
            }
        }
        x
    }

    /// Sparse quotient coordinates of the ambient basis vector e_j.
    pub fn proj_col(&self, j: usize) -> &SparseRow {
        &self.proj_cols[j]
    }

    /// The projection as a dense quotient_dim x ambient_dim matrix.
    pub fn projection_matrix(&self) -> Matrix {
        let mut p = Matrix::zeros(self.field, self.quotient_dim, self.ambient_dim);
        for (j, col) in self.proj_cols.iter().enumerate() {
            for (i, v) in col {
                p.set(*i, j, v.clone());
            }
        }
        p
    }

    /// The section as a dense ambient_dim x quotient_dim matrix.
    pub fn section_matrix(&self) -> Matrix {
        let mut s = Matrix::zeros(self.field, self.ambient_dim, self.quotient_dim);
        for (qi, f) in self.free_cols.iter().enumerate() {
            s.set(*f, qi, self.field.one());
        }
        s
    }

    /// True when the ambient vector lies in the relation span.
    pub fn annihilates(&self, x: &[Scalar]) -> bool {
        self.annihilates_sparse(&dense_to_sparse(x))
    }

    /// Echelonized spanning set of the relation span.
    pub fn relation_generators(&self) -> impl Iterator<Item = &SparseRow> {
        self.relations.pivots.values()
    }

    /// Quotient coordinates of a sparse ambient vector.
    pub fn project_sparse(&self, x: &SparseRow) -> Vec<Scalar> {
        let mut y = vec![self.field.zero(); self.quotient_dim];
        for (j, c) in x {
            for (i, v) in &self.proj_cols[*j] {
                y[*i] = y[*i].add(&c.mul(v));
            }
        }
        y
    }

    /// True when the sparse ambient vector lies in the relation span.
    pub fn annihilates_sparse(&self, x: &SparseRow) -> bool {
        self.relations.reduce(x.clone()).is_empty()
    }

    /// Pushes an ambient-to-ambient map down to the quotient, verifying that
    /// it maps the relation span of `self` into the relation span of `target`.
    pub fn descend_map(&self, target: &QuotientSpace, ambient_map: &Matrix) -> Result<Matrix, Error> {
        for row in self.relations.pivots.values() {
            let rel = sparse_to_dense(self.field, self.ambient_dim, row);
            let img = ambient_map.apply(&rel);
            if !target.annihilates(&img) {
                return Err(Error::DescentFailure(
                    "image of a relation generator is nonzero in the target quotient".into(),
                ));
            }
        }
        let mut out = Matrix::zeros(self.field, target.quotient_dim, self.quotient_dim);
        for (b, f) in self.free_cols.iter().enumerate() {
            let img = target.project(&ambient_map.col(*f));
            for (l, v) in img.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(l, b, v);
                }
            }
        }
        Ok(out)
    }

    /// descend_map for a map given by sparse columns, verifying the relation
    /// span as in descend_map.
    pub fn descend_columns(
        &self,
        target: &QuotientSpace,
        cols: &[SparseRow],
    ) -> Result<Matrix, Error> {
        for row in self.relations.pivots.values() {
            let mut img: std::collections::BTreeMap<usize, Scalar> = Default::default();
            for (j, c) in row {
                for (i, v) in &cols[*j] {
                    let e = img.entry(*i).or_insert_with(|| self.field.zero());
                    *e = e.add(&c.mul(v));
                }
            }
            let img: SparseRow = img.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !target.annihilates_sparse(&img) {
                return Err(Error::DescentFailure(
                    "image of a relation generator is nonzero in the target quotient".into(),
                ));
            }
        }
        let mut out = Matrix::zeros(self.field, target.quotient_dim, self.quotient_dim);
        for (b, f) in self.free_cols.iter().enumerate() {
            let img = target.project_sparse(&cols[*f]);
            for (l, v) in img.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(l, b, v);
                }
            }
        }
        Ok(out)
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| x.mul(c)).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// `target += c * source`.
pub fn vec_add_scaled(target: &mut [Scalar], c: &Scalar, source: &[Scalar]) {
    debug_assert_eq!(target.len(), source.len());
    if c.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t = t.add(&c.mul(s));
        }
    }
}

/// Dense rank-3 tensor of scalars, used for structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    pub field: FieldSpec,
    pub d0: usize,
    pub d1: usize,
    pub d2: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(field: FieldSpec, d0: usize, d1: usize, d2: usize) -> Tensor3 {
        Tensor3 { field, d0, d1, d2, data: vec![field.zero(); d0 * d1 * d2] }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.data[(i * self.d1 + j) * self.d2 + k] = v;
    }

    /// Slice `[i][j][.]` as a coefficient vector.
    pub fn fiber(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.d1 + j) * self.d2;
        &self.data[base..base + self.d2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn qv(vals: &[i64]) -> Vec<Scalar> {
        vals.iter().map(|v| q().from_i64(*v)).collect()
    }

    fn qm(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(q(), rows.iter().map(|r| qv(r)).collect())
    }

    #[test]
    fn solve_identity_system() {
        let m = qm(&[&[1, 0], &[0, 1]]);
        match solve_linear(&m, &qv(&[1, 0])).unwrap() {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(particular, qv(&[1, 0]));
                assert!(kernel.is_empty());
            }
            _ => panic!("expected a solution"),
        }
    }

    #[test]
    fn solve_zero_map() {
        let m = qm(&[&[0, 0]]);
        match solve_linear(&m, &qv(&[0])).unwrap() {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(particular, qv(&[0, 0]));
                assert_eq!(kernel.len(), 2);
            }
            _ => panic!("expected a solution"),
        }
    }

    #[test]
    fn solve_underdetermined_zeroes_free_variables() {
        let m = qm(&[&[1, 1]]);
        match solve_linear(&m, &qv(&[1])).unwrap() {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(particular, qv(&[1, 0]));
                assert_eq!(kernel, vec![qv(&[-1, 1])]);
            }
            _ => panic!("expected a solution"),
        }
    }

    #[test]
    fn solve_detects_infeasible() {
        let m = qm(&[&[1, 1], &[1, 1]]);
        match solve_linear(&m, &qv(&[1, 2])).unwrap() {
            SolveOutcome::Infeasible => {}
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&Matrix::identity(q(), 3)).is_empty());
    }

    #[test]
    fn kernel_of_zero_is_standard_basis() {
        let ker = kernel_basis(&Matrix::zeros(q(), 2, 2));
        assert_eq!(ker, vec![qv(&[1, 0]), qv(&[0, 1])]);
    }

    #[test]
    fn kernel_of_difference_row() {
        let ker = kernel_basis(&qm(&[&[1, -1]]));
        assert_eq!(ker, vec![qv(&[1, 1])]);
    }

    #[test]
    fn quotient_by_difference_relation() {
        let qs = QuotientSpace::new(q(), 2, vec![dense_to_sparse(&qv(&[1, -1]))]);
        assert_eq!(qs.quotient_dim, 1);
        // Both e0 and e1 map to the single class.
        assert_eq!(qs.project(&qv(&[1, 0])), qv(&[1]));
        assert_eq!(qs.project(&qv(&[0, 1])), qv(&[1]));
        assert_eq!(qs.project(&qv(&[2, 3])), qv(&[5]));
        let ps = qs.projection_matrix().mul(&qs.section_matrix());
        assert_eq!(ps, Matrix::identity(q(), 1));
    }

    #[test]
    fn quotient_by_full_space_is_zero() {
        let rels = vec![dense_to_sparse(&qv(&[1, 0])), dense_to_sparse(&qv(&[0, 1]))];
        let qs = QuotientSpace::new(q(), 2, rels);
        assert_eq!(qs.quotient_dim, 0);
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let qs = QuotientSpace::new(q(), 2, Vec::<SparseRow>::new());
        assert_eq!(qs.quotient_dim, 2);
        assert_eq!(qs.projection_matrix(), Matrix::identity(q(), 2));
    }

    #[test]
    fn invert_round_trips() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = m.invert().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
        assert_eq!(inv.mul(&m), Matrix::identity(q(), 2));
        assert!(qm(&[&[1, 2], &[2, 4]]).invert().is_none());
    }

    #[test]
    fn rank_over_prime_field() {
        let f = FieldSpec::prime(7).unwrap();
        // Row (7, 14) vanishes mod 7.
        let rows = vec![
            vec![f.from_i64(7), f.from_i64(14)],
            vec![f.from_i64(1), f.from_i64(2)],
        ];
        let m = Matrix::from_rows(f, rows);
        assert_eq!(m.rank(), 1);
    }
}
