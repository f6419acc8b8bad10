//! Elimination pipeline for braidings on the comodule category.
//!
//! A candidate braiding is cut down through its value on the pair
//! (A (x) A, A (x) A): first as a rank-3 parameter tensor s in A^(3), then as
//! an element R of A (x) A, then as a twist element alpha of A whose family
//! c^alpha must pass the braiding axioms themselves. Every stage returns an
//! affine solution set and the sets shrink as constraints accumulate; the
//! canonical parameters s = 1 (x) 1 (x) 1, R = 1 (x) 1, alpha = 1 survive
//! every stage.

use serde::Serialize;

use crate::algebra::Algebra;
use crate::braiding::{braid_component, cofree_braiding_from_r, cofree_r_pair_columns, BraidFamily};
use crate::comodule::{cofree, rho_as_morphism, splitting_muE, Comodule};
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{
    apply_columns, dense_to_sparse, Matrix, Reducer, SparseRow,
};
use crate::separability::{check_E, CentralMap};
use crate::tensor::{pair_space, tensor_of_morphisms, tensor_over_a, triple_tensor, TripleTensor};

/// Rank-3 parameter tensor s = sum s_{ijk} b_i (x) b_j (x) b_k, flattened at
/// (i n + j) n + k. It determines the candidate value on the probe pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaParam {
    pub coords: Vec<Scalar>,
}

impl DeltaParam {
    /// Multiplies the second and the third leg: R = sum s^1 (x) s^2 s^3.
    pub fn r_matrix(&self, a: &Algebra) -> RMatrix {
        let n = a.dim;
        let mut m = Matrix::zeros(a.field, n, n);
        for i in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let c = &self.coords[(i * n + p) * n + q];
                    if c.is_zero() {
                        continue;
                    }
                    for (j, v) in a.mult.fiber(p, q).iter().enumerate() {
                        if !v.is_zero() {
                            m.set(i, j, m.at(i, j).add(&c.mul(v)));
                        }
                    }
                }
            }
        }
        RMatrix { matrix: m }
    }

    /// Whether s equals R (x) 1 for the extracted R, entry by entry.
    pub fn is_r_tensor_unit(&self, a: &Algebra) -> bool {
        let n = a.dim;
        let r = self.r_matrix(a);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.coords[(i * n + j) * n + k] != r.matrix.at(i, j).mul(&a.unit[k]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Element R = sum R_{ij} b_i (x) b_j of A (x) A.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    pub matrix: Matrix,
}

impl RMatrix {
    /// Writes R as 1 (x) alpha when possible. Deterministic: alpha is read
    /// off the first unit coordinate that is nonzero.
    pub fn alpha(&self, a: &Algebra) -> Option<AlphaParam> {
        let n = a.dim;
        let i0 = (0..n).find(|i| !a.unit[*i].is_zero())?;
        let inv = a.unit[i0].inv()?;
        let coords: Vec<Scalar> = (0..n).map(|j| self.matrix.at(i0, j).mul(&inv)).collect();
        for i in 0..n {
            for j in 0..n {
                if *self.matrix.at(i, j) != a.unit[i].mul(&coords[j]) {
                    return None;
                }
            }
        }
        Some(AlphaParam { coords })
    }
}

/// Twist element alpha of A, the parameter of the family
/// c^alpha(m (x)_A n) = n_[0] (x)_A m (n_[1] alpha).
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaParam {
    pub coords: Vec<Scalar>,
}

/// particular + span(basis) inside k^ambient. The stage systems here are all
/// homogeneous, so particular stays zero; it is kept so the shape of a stage
/// result does not encode that fact.
#[derive(Debug, Clone)]
pub struct AffineSet {
    pub field: FieldSpec,
    pub ambient: usize,
    pub particular: Vec<Scalar>,
    pub basis: Vec<Vec<Scalar>>,
}

impl AffineSet {
    pub fn full(field: FieldSpec, ambient: usize) -> AffineSet {
        let mut basis = Vec::with_capacity(ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            basis.push(v);
        }
        AffineSet { field, ambient, particular: vec![field.zero(); ambient], basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut red = Reducer::new(self.field, self.ambient);
        for b in &self.basis {
            red.add_sparse(dense_to_sparse(b));
        }
        let diff: Vec<Scalar> = v
            .iter()
            .zip(self.particular.iter())
            .map(|(x, p)| x.sub(p))
            .collect();
        red.reduce(dense_to_sparse(&diff)).is_empty()
    }

    /// Intersects with the null space of homogeneous rows in ambient
    /// coordinates.
    pub fn cut(&self, rows: &[SparseRow]) -> AffineSet {
        debug_assert!(self.particular.iter().all(|p| p.is_zero()));
        let d = self.basis.len();
        let mut red = Reducer::new(self.field, d);
        for row in rows {
            let mut lrow: Vec<Scalar> = vec![self.field.zero(); d];
            for (c, v) in row {
                for (b, bas) in self.basis.iter().enumerate() {
                    if !bas[*c].is_zero() {
                        lrow[b] = lrow[b].add(&v.mul(&bas[*c]));
                    }
                }
            }
            red.add_sparse(dense_to_sparse(&lrow));
        }
        let mut basis = Vec::new();
        for combo in red.kernel_basis() {
            let mut v = vec![self.field.zero(); self.ambient];
            for (b, c) in combo.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (i, x) in self.basis[b].iter().enumerate() {
                    if !x.is_zero() {
                        v[i] = v[i].add(&c.mul(x));
                    }
                }
            }
            basis.push(v);
        }
        AffineSet {
            field: self.field,
            ambient: self.ambient,
            particular: self.particular.clone(),
            basis,
        }
    }
}

/// Stage 1: colinearity of the candidate at the unit of the probe. The
/// coaction of the image of 1 (x) 1 (x) 1 must equal s (x) 1, which reads
/// s_{ijk} u_l = s_{ijl} u_k over the last two legs.
pub fn stage_colinearity(a: &Algebra) -> AffineSet {
    let n = a.dim;
    let mut rows: Vec<SparseRow> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in (k + 1)..n {
                    let mut row: SparseRow = Vec::new();
                    if !a.unit[l].is_zero() {
                        row.push(((i * n + j) * n + k, a.unit[l].clone()));
                    }
                    if !a.unit[k].is_zero() {
                        row.push(((i * n + j) * n + l, a.unit[k].neg()));
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    AffineSet::full(a.field, n * n * n).cut(&rows)
}

/// Stage 2 output: the surviving set in s coordinates together with its
/// image in R coordinates under R = (id (x) mult)(s).
#[derive(Debug, Clone)]
pub struct RStage {
    pub set: AffineSet,
    pub r_set: AffineSet,
}

/// Stage 2: naturality against the left multiplications f_a (x) f_b. It
/// extends the candidate to delta(a (x) b) = sum b s^1 (x) a s^2 (x) s^3,
/// imposes colinearity of every instance, and imposes the normal form
/// s = R (x) 1 obtained by multiplying the second and the third leg. Each
/// surviving s is verified to reproduce delta(a (x) b) = sum b R^1 (x) a R^2
/// (x) 1 entry by entry.
pub fn stage_naturality_fa(a: &Algebra, prev: &AffineSet) -> Result<RStage, Error> {
    let n = a.dim;
    if prev.ambient != n * n * n {
        return Err(Error::DimensionMismatch("parameter tensor".into()));
    }
    let mut rows: Vec<SparseRow> = Vec::new();
    // Colinearity of delta(e_t (x) e_r): for every output (i, j) and legs
    // k < l, sum_{p,q} (s_{pql} u_k - s_{pqk} u_l) (e_r e_p)_i (e_t e_q)_j.
    for t in 0..n {
        for r in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut weights: Vec<(usize, usize, Scalar)> = Vec::new();
                    for p in 0..n {
                        let rp = a.mult.at(r, p, i);
                        if rp.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let tq = a.mult.at(t, q, j);
                            if !tq.is_zero() {
                                weights.push((p, q, rp.mul(tq)));
                            }
                        }
                    }
                    if weights.is_empty() {
                        continue;
                    }
                    for k in 0..n {
                        for l in (k + 1)..n {
                            let mut row: SparseRow = Vec::new();
                            for (p, q, w) in &weights {
                                if !a.unit[k].is_zero() {
                                    row.push(((p * n + q) * n + l, w.mul(&a.unit[k])));
                                }
                                if !a.unit[l].is_zero() {
                                    row.push(((p * n + q) * n + k, w.mul(&a.unit[l]).neg()));
                                }
                            }
                            rows.push(merge_row(row));
                        }
                    }
                }
            }
        }
    }
    // Normal form: s_{ijk} = u_k sum_{p,q} s_{ipq} (e_p e_q)_j.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row: SparseRow = vec![((i * n + j) * n + k, a.field.one())];
                if !a.unit[k].is_zero() {
                    for p in 0..n {
                        for q in 0..n {
                            let m = a.mult.at(p, q, j);
                            if !m.is_zero() {
                                row.push(((i * n + p) * n + q, m.mul(&a.unit[k]).neg()));
                            }
                        }
                    }
                }
                rows.push(merge_row(row));
            }
        }
    }
    let set = prev.cut(&rows);
    // Re-coordinatize to R. The normal form makes s -> R injective on the
    // set, which the rank of the images certifies.
    let mut r_basis: Vec<Vec<Scalar>> = Vec::new();
    let mut rank = Reducer::new(a.field, n * n);
    for v in &set.basis {
        let d = DeltaParam { coords: v.clone() };
        if !d.is_r_tensor_unit(a) {
            return Err(Error::CheckFailed("stage 2 survivor is not of the form R (x) 1".into()));
        }
        let r = d.r_matrix(a);
        if !delta_matches_r(a, v, &r) {
            return Err(Error::CheckFailed(
                "stage 2 survivor does not reproduce the R form of delta".into(),
            ));
        }
        let flat: Vec<Scalar> = (0..n * n).map(|e| r.matrix.at(e / n, e % n).clone()).collect();
        rank.add_sparse(dense_to_sparse(&flat));
        r_basis.push(flat);
    }
    if rank.rank() != set.basis.len() {
        return Err(Error::CheckFailed("R extraction collapsed the solution set".into()));
    }
    let r_set = AffineSet {
        field: a.field,
        ambient: n * n,
        particular: vec![a.field.zero(); n * n],
        basis: r_basis,
    };
    Ok(RStage { set, r_set })
}

fn merge_row(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|(c, _)| *c);
    let mut merged: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    merged
}

/// delta(e_t (x) e_r) computed from s equals sum e_r R^1 (x) e_t R^2 (x) 1.
fn delta_matches_r(a: &Algebra, s: &[Scalar], r: &RMatrix) -> bool {
    let n = a.dim;
    for t in 0..n {
        for rr in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let mut lhs = a.field.zero();
                        let mut rhs = a.field.zero();
                        for p in 0..n {
                            let rp = a.mult.at(rr, p, i);
                            if rp.is_zero() {
                                continue;
                            }
                            for q in 0..n {
                                let tq = a.mult.at(t, q, j);
                                if tq.is_zero() {
                                    continue;
                                }
                                let w = rp.mul(tq);
                                lhs = lhs.add(&w.mul(&s[(p * n + q) * n + k]));
                                rhs = rhs.add(&w.mul(&r.matrix.at(p, q).mul(&a.unit[k])));
                            }
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Stage 3 output: the surviving set in R coordinates, and whether every
/// surviving R satisfies R (x) 1 = 1 (x) 1 (x) (sum R^1 E(R^2)).
#[derive(Debug, Clone)]
pub struct SplitStage {
    pub r_set: AffineSet,
    pub consequence_ok: bool,
}

/// Stage 3: naturality of the coaction morphisms, split with E. The value of
/// the candidate on a pair (M, N) is forced to be
/// (mu_N (x)_A mu^E_M) o c_R o (rho_M (x)_A rho_N) through the cofree
/// resolutions; evaluating at M = N = A (x) A, where the component already is
/// c_R, yields linear constraints on R.
pub fn stage_coaction_naturality(
    a: &Algebra,
    e: &CentralMap,
    prev: &AffineSet,
) -> Result<SplitStage, Error> {
    if !check_E(a, e).passed() {
        return Err(Error::InvalidInput("central map fails its axioms".into()));
    }
    let n = a.dim;
    if prev.ambient != n * n {
        return Err(Error::DimensionMismatch("R coordinates".into()));
    }
    let aa = cofree(a, n);
    let probe = tensor_over_a(a, &aa, &aa)?;
    let fm = cofree(a, aa.dim);
    let fpair = pair_space(a, &fm, &fm);

    // rho (x)_A rho and mu (x)_A mu^E as columns on the ambient pair spaces.
    // The left splitting is the action of A (x) A, the right one is the
    // E-splitting; that orientation is what descends through (x)_A.
    let rho = rho_as_morphism(a, &aa);
    let mu_act = aa.action_full(n);
    let mu_e = splitting_muE(a, e, &aa)?;
    let rho_cols = kron_columns(&rho, &rho);
    let mu_cols = kron_columns(&mu_act, &mu_e);

    // Both R-independent layers descend; verified on every relation
    // generator before any constraint is derived from representatives.
    for rel in probe.space.relation_generators() {
        let img = sparse_image(a.field, fm.dim * fm.dim, &rho_cols, rel);
        if !fpair.annihilates_sparse(&img) {
            return Err(Error::DescentFailure(
                "coaction pair map does not descend to the probe".into(),
            ));
        }
    }
    for rel in fpair.relation_generators() {
        let img = sparse_image(a.field, aa.dim * aa.dim, &mu_cols, rel);
        if !probe.space.annihilates_sparse(&img) {
            return Err(Error::DescentFailure(
                "splitting pair map does not descend to the probe".into(),
            ));
        }
    }

    // Per basis element of A (x) A, the forced value minus the direct value,
    // entry by entry; the difference must vanish on the surviving R.
    let q3 = probe.space.quotient_dim;
    let mut diff_rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); q3 * q3];
    for r1 in 0..n {
        for r2 in 0..n {
            let mut rb = Matrix::zeros(a.field, n, n);
            rb.set(r1, r2, a.field.one());
            let ccols = cofree_r_pair_columns(a, &rb, &aa.action, &aa.action)?;
            let direct = cofree_braiding_from_r(a, &rb, &a.mult, &a.mult, &probe, &probe)?;
            for (b, f) in probe.space.free_cols.iter().enumerate() {
                let x0: SparseRow = vec![(*f, a.field.one())];
                let y1 = apply_columns(a.field, fm.dim * fm.dim, &rho_cols, &x0);
                let y2 = apply_columns(a.field, fm.dim * fm.dim, &ccols, &dense_to_sparse(&y1));
                let y3 = apply_columns(a.field, aa.dim * aa.dim, &mu_cols, &dense_to_sparse(&y2));
                let forced = probe.space.project_sparse(&dense_to_sparse(&y3));
                for (row, fv) in forced.into_iter().enumerate() {
                    let d = fv.sub(direct.matrix.at(row, b));
                    if !d.is_zero() {
                        diff_rows[row * q3 + b].push((r1 * n + r2, d));
                    }
                }
            }
        }
    }
    let rows: Vec<SparseRow> = diff_rows.into_iter().filter(|r| !r.is_empty()).collect();
    let r_set = prev.cut(&rows);

    // Every survivor collapses to R (x) 1 = 1 (x) 1 (x) (sum R^1 E(R^2)).
    let mut consequence_ok = true;
    'outer: for v in &r_set.basis {
        let mut w = vec![a.field.zero(); n];
        for p in 0..n {
            for q in 0..n {
                let c = &v[p * n + q];
                if c.is_zero() {
                    continue;
                }
                let eq = e.apply(&a.basis_el(q));
                let prod = a.multiply(&a.basis_el(p), &eq)?;
                for (k, x) in prod.iter().enumerate() {
                    w[k] = w[k].add(&c.mul(x));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = v[i * n + j].mul(&a.unit[k]);
                    let rhs = a.unit[i].mul(&a.unit[j]).mul(&w[k]);
                    if lhs != rhs {
                        consequence_ok = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(SplitStage { r_set, consequence_ok })
}

fn kron_columns(f: &Matrix, g: &Matrix) -> Vec<SparseRow> {
    // Columns of f (x) g with pair index (i, j) = i * g.cols + j mapping to
    // (ri, rj) = ri * g.rows + rj.
    let f_cols: Vec<SparseRow> = (0..f.cols).map(|j| dense_to_sparse(&f.col(j))).collect();
    let g_cols: Vec<SparseRow> = (0..g.cols).map(|j| dense_to_sparse(&g.col(j))).collect();
    let mut cols = Vec::with_capacity(f.cols * g.cols);
    for fc in &f_cols {
        for gc in &g_cols {
            let mut col: SparseRow = Vec::with_capacity(fc.len() * gc.len());
            for (fi, fv) in fc {
                for (gj, gv) in gc {
                    col.push((fi * g.rows + gj, fv.mul(gv)));
                }
            }
            cols.push(col);
        }
    }
    cols
}

fn sparse_image(
    field: FieldSpec,
    out_dim: usize,
    cols: &[SparseRow],
    x: &SparseRow,
) -> SparseRow {
    dense_to_sparse(&apply_columns(field, out_dim, cols, x))
}

/// Both sides of the second hexagon at the triple (A (x) A)^3, for the
/// family c^alpha, plus invertibility of the pair component. The left side
/// is linear in alpha and the right side quadratic, which the candidate
/// search exploits.
struct B2Sides {
    lhs: Matrix,
    rhs: Matrix,
    iso: bool,
}

struct ProbeTriple {
    aa: Comodule,
    t: TripleTensor,
}

impl ProbeTriple {
    fn new(a: &Algebra) -> Result<ProbeTriple, Error> {
        let aa = cofree(a, a.dim);
        let t = triple_tensor(a, &aa, &aa, &aa)?;
        Ok(ProbeTriple { aa, t })
    }

    /// None when a component fails to descend or a tensor of the component
    /// with an identity does, both of which already reject the candidate.
    fn sides(&self, a: &Algebra, alpha: &[Scalar]) -> Result<Option<B2Sides>, Error> {
        let fam = BraidFamily::Ca(alpha.to_vec());
        let c_pair = braid_component(a, &fam, &self.t.mn, &self.t.mn)?;
        let c_uvw = braid_component(a, &fam, &self.t.left, &self.t.right)?;
        if !c_pair.well_defined || !c_uvw.well_defined {
            return Ok(None);
        }
        let lhs = self
            .t
            .associator_inv
            .mul(&c_uvw.matrix)
            .mul(&self.t.associator_inv);
        let id_aa = Matrix::identity(a.field, self.aa.dim);
        let t3 = match tensor_of_morphisms(&self.t.right, &self.t.right, &id_aa, &c_pair.matrix) {
            Ok(m) => m,
            Err(Error::DescentFailure(_)) => return Ok(None),
            Err(err) => return Err(err),
        };
        let t4 = match tensor_of_morphisms(&self.t.left, &self.t.left, &c_pair.matrix, &id_aa) {
            Ok(m) => m,
            Err(Error::DescentFailure(_)) => return Ok(None),
            Err(err) => return Err(err),
        };
        let rhs = t4.mul(&self.t.associator_inv).mul(&t3);
        let iso = c_pair.matrix.invert().is_some();
        Ok(Some(B2Sides { lhs, rhs, iso }))
    }
}

/// Final stage: alpha is accepted exactly when the twisted component on the
/// probe pair is invertible and the second hexagon identity holds at the
/// triple (A (x) A, A (x) A, A (x) A). The checks are performed on the
/// matrices; nothing here relies on alpha being the unit, nor on the
/// untested remark that invertibility of the component should match
/// invertibility of alpha in A.
pub fn stage_lemma_abrad(a: &Algebra, alpha: &[Scalar]) -> Result<bool, Error> {
    if alpha.len() != a.dim {
        return Err(Error::DimensionMismatch("twist element".into()));
    }
    let probe = ProbeTriple::new(a)?;
    match probe.sides(a, alpha)? {
        None => Ok(false),
        Some(s) => Ok(s.iso && s.lhs == s.rhs),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageLog {
    pub name: String,
    pub dim: usize,
}

/// Outcome of the full pipeline. The JSON form carries the stage dimension
/// log, the surviving twist elements, and the oracle agreement flag when an
/// oracle comparison was run.
#[derive(Debug, Serialize)]
pub struct SolverReport {
    pub stages: Vec<StageLog>,
    pub survivors: Vec<String>,
    #[serde(skip)]
    pub survivor_alphas: Vec<Vec<Scalar>>,
    pub canonical_survives_stages: bool,
    pub exactly_canonical: bool,
    pub positive_dimensional_family: bool,
    pub notes: Vec<String>,
    pub oracle_agrees: Option<bool>,
}

impl SolverReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_else(|_| "{}".into())
    }
}

fn seed_delta(a: &Algebra) -> Vec<Scalar> {
    let n = a.dim;
    let mut s = vec![a.field.zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                s[(i * n + j) * n + k] = a.unit[i].mul(&a.unit[j]).mul(&a.unit[k]);
            }
        }
    }
    s
}

fn seed_r(a: &Algebra) -> Vec<Scalar> {
    let n = a.dim;
    let mut r = vec![a.field.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            r[i * n + j] = a.unit[i].mul(&a.unit[j]);
        }
    }
    r
}

fn scale_alpha(alpha: &[Scalar], by: &Scalar) -> Vec<Scalar> {
    alpha.iter().map(|x| x.mul(by)).collect()
}

/// Runs every stage and classifies the survivors. The stage dimension log is
/// monotone; the canonical parameters survive each stage whenever E is a
/// valid unitary central map.
pub fn enumerate_braidings(a: &Algebra, e: &CentralMap) -> Result<SolverReport, Error> {
    if !check_E(a, e).passed() {
        return Err(Error::InvalidInput("central map fails its axioms".into()));
    }
    let mut notes: Vec<String> = Vec::new();

    let st1 = stage_colinearity(a);
    let st2 = stage_naturality_fa(a, &st1)?;
    let st3 = stage_coaction_naturality(a, e, &st2.r_set)?;
    if !st3.consequence_ok {
        notes.push(
            "a stage 3 survivor escapes R (x) 1 = 1 (x) 1 (x) R^1 E(R^2)".into(),
        );
    }

    let canonical_survives_stages = st1.contains(&seed_delta(a))
        && st2.set.contains(&seed_delta(a))
        && st2.r_set.contains(&seed_r(a))
        && st3.r_set.contains(&seed_r(a));

    let mut survivors: Vec<String> = Vec::new();
    let mut survivor_alphas: Vec<Vec<Scalar>> = Vec::new();
    let mut positive_dimensional_family = false;

    match st3.r_set.dim() {
        0 => notes.push("no candidate survives the linear stages".into()),
        1 => {
            let n = a.dim;
            let flat = &st3.r_set.basis[0];
            let mut m = Matrix::zeros(a.field, n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, flat[i * n + j].clone());
                }
            }
            match (RMatrix { matrix: m }).alpha(a) {
                None => notes.push("the surviving line is not of the form 1 (x) alpha".into()),
                Some(alpha0) => {
                    let probe = ProbeTriple::new(a)?;
                    let mut candidates: Vec<Scalar> = Vec::new();
                    match a.field {
                        FieldSpec::Rationals => {
                            // c^alpha scales linearly with alpha, so along
                            // the line lambda alpha0 the second hexagon reads
                            // lambda L = lambda^2 Q; a nonzero solution needs
                            // L = lambda Q as matrices.
                            match probe.sides(a, &alpha0.coords)? {
                                None => notes.push(
                                    "the base candidate does not extend to the probe triple"
                                        .into(),
                                ),
                                Some(s) => {
                                    if s.rhs.is_zero() {
                                        if s.lhs.is_zero() {
                                            positive_dimensional_family = true;
                                            notes.push(
                                                "every scaling of the surviving line passes the hexagon"
                                                    .into(),
                                            );
                                        }
                                    } else {
                                        let mut lambda: Option<Scalar> = None;
                                        'scan: for i in 0..s.rhs.rows {
                                            for j in 0..s.rhs.cols {
                                                if !s.rhs.at(i, j).is_zero() {
                                                    lambda = Some(
                                                        s.lhs.at(i, j).div(s.rhs.at(i, j)),
                                                    );
                                                    break 'scan;
                                                }
                                            }
                                        }
                                        if let Some(l) = lambda {
                                            if !l.is_zero()
                                                && s.lhs == s.rhs.scale(&l)
                                            {
                                                candidates.push(l);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                        FieldSpec::Prime(p) => {
                            for v in 1..p {
                                candidates.push(a.field.from_i64(v as i64));
                            }
                        }
                    }
                    for l in candidates {
                        let alpha = scale_alpha(&alpha0.coords, &l);
                        if let Some(s) = probe.sides(a, &alpha)? {
                            if s.iso && s.lhs == s.rhs {
                                survivors.push(a.el_to_string(&alpha));
                                survivor_alphas.push(alpha);
                            }
                        }
                    }
                }
            }
        }
        d => {
            positive_dimensional_family = true;
            notes.push(format!("the linear stages leave a {}-dimensional family", d));
            if canonical_survives_stages && stage_lemma_abrad(a, &a.unit_el())? {
                survivors.push(a.el_to_string(&a.unit_el()));
                survivor_alphas.push(a.unit_el());
            }
        }
    }

    let exactly_canonical = !positive_dimensional_family
        && survivor_alphas.len() == 1
        && survivor_alphas[0] == a.unit_el();

    let stages = vec![
        StageLog { name: "unit colinearity".into(), dim: st1.dim() },
        StageLog { name: "left multiplication naturality".into(), dim: st2.r_set.dim() },
        StageLog { name: "coaction naturality with the splitting".into(), dim: st3.r_set.dim() },
        StageLog { name: "hexagon and invertibility".into(), dim: survivor_alphas.len() },
    ];

    Ok(SolverReport {
        stages,
        survivors,
        survivor_alphas,
        canonical_survives_stages,
        exactly_canonical,
        positive_dimensional_family,
        notes,
        oracle_agrees: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, cyclic_group_algebra, matrix_algebra, truncated_poly_algebra};
    use crate::field::FieldSpec;
    use crate::separability::{
        build_E_from_separability, build_E_unit_projection, find_separability_element,
    };

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn scalars(f: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|x| f.from_i64(*x)).collect()
    }

    #[test]
    fn base_field_has_no_colinearity_constraint() {
        let a = truncated_poly_algebra(q(), 1);
        assert_eq!(stage_colinearity(&a).dim(), 1);
    }

    #[test]
    fn dual_numbers_force_a_scalar_third_leg() {
        let a = truncated_poly_algebra(q(), 2);
        let st1 = stage_colinearity(&a);
        assert_eq!(st1.dim(), 4);
        // 1 (x) 1 (x) x has a nonscalar third leg.
        let mut bad = vec![q().zero(); 8];
        bad[1] = q().one();
        assert!(!st1.contains(&bad));
        assert!(st1.contains(&seed_delta(&a)));
    }

    #[test]
    fn matrix_algebra_stage_dimensions() {
        let a = matrix_algebra(q(), 2);
        let st1 = stage_colinearity(&a);
        assert_eq!(st1.dim(), 16);
        let st2 = stage_naturality_fa(&a, &st1).unwrap();
        assert_eq!(st2.r_set.dim(), 16);
        assert!(st2.set.contains(&seed_delta(&a)));
        assert!(st2.r_set.contains(&seed_r(&a)));
    }

    #[test]
    fn splitting_stage_collapses_the_group_algebra_to_a_line() {
        let a = cyclic_group_algebra(q(), 2);
        let e = build_E_from_separability(&a, &find_separability_element(&a).unwrap()).unwrap();
        let st1 = stage_colinearity(&a);
        let st2 = stage_naturality_fa(&a, &st1).unwrap();
        let st3 = stage_coaction_naturality(&a, &e, &st2.r_set).unwrap();
        assert_eq!(st3.r_set.dim(), 1);
        assert!(st3.consequence_ok);
        assert!(st3.r_set.contains(&seed_r(&a)));
    }

    #[test]
    fn lemma_stage_accepts_the_unit_and_rejects_a_doubling() {
        let a = truncated_poly_algebra(q(), 1);
        assert!(stage_lemma_abrad(&a, &scalars(q(), &[1])).unwrap());
        assert!(!stage_lemma_abrad(&a, &scalars(q(), &[2])).unwrap());
        assert!(!stage_lemma_abrad(&a, &scalars(q(), &[0])).unwrap());
    }

    #[test]
    fn lemma_stage_rejects_an_idempotent_twist() {
        let a = builtin(q(), "prod2").unwrap();
        assert!(!stage_lemma_abrad(&a, &scalars(q(), &[1, 0])).unwrap());
        assert!(stage_lemma_abrad(&a, &scalars(q(), &[1, 1])).unwrap());
    }

    #[test]
    fn base_field_enumeration_finds_exactly_the_flip() {
        let a = truncated_poly_algebra(q(), 1);
        let e = build_E_unit_projection(&a);
        let rep = enumerate_braidings(&a, &e).unwrap();
        assert!(rep.canonical_survives_stages);
        assert!(rep.exactly_canonical);
        assert_eq!(rep.survivors.len(), 1);
        let dims: Vec<usize> = rep.stages.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn dual_numbers_enumeration_is_exactly_canonical() {
        let a = truncated_poly_algebra(q(), 2);
        let e = build_E_unit_projection(&a);
        let rep = enumerate_braidings(&a, &e).unwrap();
        assert!(rep.canonical_survives_stages);
        assert!(rep.exactly_canonical);
        assert!(!rep.positive_dimensional_family);
        let dims: Vec<usize> = rep.stages.iter().map(|s| s.dim).collect();
        assert!(dims.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn product_algebra_enumeration_is_exactly_canonical() {
        let a = builtin(q(), "prod2").unwrap();
        let e = build_E_from_separability(&a, &find_separability_element(&a).unwrap()).unwrap();
        let rep = enumerate_braidings(&a, &e).unwrap();
        assert!(rep.exactly_canonical, "{}", rep.to_json());
    }

    #[test]
    fn prime_field_group_algebra_enumeration_is_exactly_canonical() {
        let f = FieldSpec::prime(7).unwrap();
        let a = cyclic_group_algebra(f, 2);
        let e = build_E_from_separability(&a, &find_separability_element(&a).unwrap()).unwrap();
        let rep = enumerate_braidings(&a, &e).unwrap();
        assert!(rep.canonical_survives_stages);
        assert!(rep.exactly_canonical, "{}", rep.to_json());
    }

    #[test]
    #[ignore = "heavy: full pipeline over a four-dimensional algebra"]
    fn matrix_algebra_enumeration_is_exactly_canonical() {
        let a = matrix_algebra(q(), 2);
        let e = build_E_from_separability(&a, &find_separability_element(&a).unwrap()).unwrap();
        let rep = enumerate_braidings(&a, &e).unwrap();
        assert!(rep.canonical_survives_stages);
        assert!(rep.exactly_canonical, "{}", rep.to_json());
        let dims: Vec<usize> = rep.stages.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![16, 16, 1, 1]);
    }

    #[test]
    fn reports_serialize_with_stage_dimensions() {
        let a = truncated_poly_algebra(q(), 1);
        let e = build_E_unit_projection(&a);
        let rep = enumerate_braidings(&a, &e).unwrap();
        let json = rep.to_json();
        assert!(json.contains("unit colinearity"));
        assert!(json.contains("\"oracle_agrees\": null"));
    }
}
