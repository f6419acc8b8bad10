//! The monoidal structure on comodules: M (x)_A N as an explicit quotient of
//! M (x) N, the tensor coaction, unit isomorphisms and associators.
//!
//! Every map through a quotient is verified to annihilate the relation span
//! before it is descended; nothing relies on the theorems that make the
//! formulas well-defined. Maps on pair spaces are kept as sparse columns so
//! the probe objects (dimension n^3 and up) stay cheap.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::comodule::{
    check_comodule, check_morphism, induced_left_action, left_action_matrix, Comodule,
};
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{dense_to_sparse, Matrix, QuotientSpace, SparseRow, Tensor3};

/// M (x)_A N: the pair, the quotient of M (x) N by the balancing relations
/// (m a) (x) n - m (x) (a n), and the induced comodule structure.
#[derive(Debug, Clone)]
pub struct TensorObject {
    pub left: Comodule,
    pub right: Comodule,
    pub space: QuotientSpace,
    pub comodule: Comodule,
}

impl TensorObject {
    /// Quotient coordinates of the pure tensor f_i (x) g_j.
    pub fn pure(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.space.project_sparse(&vec![(i * self.right.dim + j, self.space.field.one())])
    }

    /// Quotient coordinates of an element of M (x) N given by a coefficient
    /// matrix on the pair basis.
    pub fn project_pairs(&self, x: &Matrix) -> Vec<Scalar> {
        let mut amb: SparseRow = Vec::new();
        for i in 0..x.rows {
            for j in 0..x.cols {
                let v = x.at(i, j);
                if !v.is_zero() {
                    amb.push((i * self.right.dim + j, v.clone()));
                }
            }
        }
        self.space.project_sparse(&amb)
    }
}

/// The quotient of M (x) N by the balancing relations
/// (m a) (x) n - m (x) (a n), with pair index (i, j) = i * dim N + j.
pub fn pair_space(a: &Algebra, m: &Comodule, n: &Comodule) -> QuotientSpace {
    let na = a.dim;
    let (dm, dn) = (m.dim, n.dim);
    let left_n = induced_left_action(a, n);
    let mut relations: Vec<SparseRow> = Vec::with_capacity(dm * na * dn);
    for i in 0..dm {
        for t in 0..na {
            let ma = m.action.fiber(i, t);
            for j in 0..dn {
                let an = left_n.fiber(t, j);
                let mut row: SparseRow = Vec::new();
                for (l, v) in ma.iter().enumerate() {
                    if !v.is_zero() {
                        row.push((l * dn + j, v.clone()));
                    }
                }
                for (s, v) in an.iter().enumerate() {
                    if !v.is_zero() {
                        row.push((i * dn + s, v.neg()));
                    }
                }
                row.sort_by_key(|(c, _)| *c);
                // Merge duplicate columns (l * dn + j can meet i * dn + s).
                let mut merged: SparseRow = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                if !merged.is_empty() {
                    relations.push(merged);
                }
            }
        }
    }
    QuotientSpace::new(a.field, dm * dn, relations)
}

/// Builds M (x)_A N with the action (m (x)_A n) a = m (x)_A (n a) and the
/// coaction m_[0] (x)_A n_[0] (x) m_[1] n_[1]. All descents are verified.
pub fn tensor_over_a(a: &Algebra, m: &Comodule, n: &Comodule) -> Result<TensorObject, Error> {
    let na = a.dim;
    let (dm, dn) = (m.dim, n.dim);
    let ambient = dm * dn;
    let space = pair_space(a, m, n);
    let q = space.quotient_dim;

    let mut action = Tensor3::zeros(a.field, q, na, q);
    for t in 0..na {
        let mut cols: Vec<SparseRow> = Vec::with_capacity(ambient);
        for i in 0..dm {
            for j in 0..dn {
                let fib = n.action.fiber(j, t);
                let col: SparseRow = fib
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(s, v)| (i * dn + s, v.clone()))
                    .collect();
                cols.push(col);
            }
        }
        let desc = space.descend_columns(&space, &cols).map_err(|_| {
            Error::DescentFailure("right action does not descend to the tensor product".into())
        })?;
        for b in 0..q {
            for l in 0..q {
                let v = desc.at(l, b);
                if !v.is_zero() {
                    action.set(b, t, l, v.clone());
                }
            }
        }
    }

    // rho on the pair space as sparse columns, rows ((p, q), k) = (p*dn+q)*na + k.
    let mut rho_cols: Vec<SparseRow> = Vec::with_capacity(ambient);
    for i in 0..dm {
        for j in 0..dn {
            let mut entries: BTreeMap<usize, Scalar> = BTreeMap::new();
            for p in 0..dm {
                let mf = m.coaction.fiber(i, p);
                for (k1, v1) in mf.iter().enumerate() {
                    if v1.is_zero() {
                        continue;
                    }
                    for q_ in 0..dn {
                        let nf = n.coaction.fiber(j, q_);
                        for (k2, v2) in nf.iter().enumerate() {
                            if v2.is_zero() {
                                continue;
                            }
                            let c = v1.mul(v2);
                            for (k, w) in a.mult.fiber(k1, k2).iter().enumerate() {
                                if !w.is_zero() {
                                    let r = (p * dn + q_) * na + k;
                                    let e = entries.entry(r).or_insert_with(|| a.field.zero());
                                    *e = e.add(&c.mul(w));
                                }
                            }
                        }
                    }
                }
            }
            rho_cols.push(entries.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }

    // Well-definedness: the image of every relation lies in rel (x) A,
    // checked slice by slice on the A leg.
    for rel in space.relation_generators() {
        let mut img: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in rel {
            for (r, w) in &rho_cols[*c] {
                let e = img.entry(*r).or_insert_with(|| a.field.zero());
                *e = e.add(&v.mul(w));
            }
        }
        let mut slices: Vec<SparseRow> = vec![Vec::new(); na];
        for (r, v) in img {
            if !v.is_zero() {
                slices[r % na].push((r / na, v));
            }
        }
        if slices.iter().any(|s| !space.annihilates_sparse(s)) {
            return Err(Error::DescentFailure(
                "coaction does not descend to the tensor product".into(),
            ));
        }
    }
    let mut coaction = Tensor3::zeros(a.field, q, q, na);
    for (b, f) in space.free_cols.iter().enumerate() {
        let mut slices: Vec<SparseRow> = vec![Vec::new(); na];
        for (r, v) in &rho_cols[*f] {
            slices[r % na].push((r / na, v.clone()));
        }
        for (k, s) in slices.iter().enumerate() {
            if s.is_empty() {
                continue;
            }
            for (l, v) in space.project_sparse(s).into_iter().enumerate() {
                if !v.is_zero() {
                    coaction.set(b, l, k, v);
                }
            }
        }
    }

    let comodule = Comodule { dim: q, action, coaction };
    let axioms = check_comodule(a, &comodule);
    if !axioms.passed() {
        return Err(Error::DescentFailure(format!(
            "tensor product violates comodule axioms: {}",
            axioms.first_failure().map(|c| c.name.clone()).unwrap_or_default()
        )));
    }
    Ok(TensorObject { left: m.clone(), right: n.clone(), space, comodule })
}

/// f (x)_A g on tensor objects, descended and verified.
pub fn tensor_of_morphisms(
    src: &TensorObject,
    dst: &TensorObject,
    f: &Matrix,
    g: &Matrix,
) -> Result<Matrix, Error> {
    if f.cols != src.left.dim
        || g.cols != src.right.dim
        || f.rows != dst.left.dim
        || g.rows != dst.right.dim
    {
        return Err(Error::DimensionMismatch("tensor of morphisms".into()));
    }
    let f_cols: Vec<SparseRow> = (0..f.cols).map(|j| dense_to_sparse(&f.col(j))).collect();
    let g_cols: Vec<SparseRow> = (0..g.cols).map(|j| dense_to_sparse(&g.col(j))).collect();
    let dn_dst = dst.right.dim;
    let mut cols: Vec<SparseRow> = Vec::with_capacity(src.left.dim * src.right.dim);
    for fc in &f_cols {
        for gc in &g_cols {
            let mut col: SparseRow = Vec::with_capacity(fc.len() * gc.len());
            for (fi, fv) in fc {
                for (gj, gv) in gc {
                    col.push((fi * dn_dst + gj, fv.mul(gv)));
                }
            }
            cols.push(col);
        }
    }
    src.space.descend_columns(&dst.space, &cols)
}

/// The unit isomorphisms of the monoidal structure.
pub struct UnitIsos {
    /// A (x)_A M with the regular comodule on the left.
    pub left_object: TensorObject,
    /// a (x)_A m -> a m (induced left action).
    pub left_iso: Matrix,
    /// M (x)_A A with the regular comodule on the right.
    pub right_object: TensorObject,
    /// m (x)_A a -> m a.
    pub right_iso: Matrix,
}

/// Builds both unit isomorphisms and verifies that each is a comodule
/// isomorphism.
pub fn unit_isos(a: &Algebra, m: &Comodule) -> Result<UnitIsos, Error> {
    let reg = crate::comodule::regular_comodule(a);
    let na = a.dim;
    let trivial = QuotientSpace::new(a.field, m.dim, Vec::new());

    let left_object = tensor_over_a(a, &reg, m)?;
    let left_m = induced_left_action(a, m);
    let mut lmap = Matrix::zeros(a.field, m.dim, na * m.dim);
    for t in 0..na {
        let lt = left_action_matrix(&left_m, t);
        for i in 0..m.dim {
            for s in 0..m.dim {
                let v = lt.at(s, i);
                if !v.is_zero() {
                    lmap.set(s, t * m.dim + i, v.clone());
                }
            }
        }
    }
    let left_iso = left_object.space.descend_map(&trivial, &lmap)?;

    let right_object = tensor_over_a(a, m, &reg)?;
    let rmap = m.action_full(na);
    let right_iso = right_object.space.descend_map(&trivial, &rmap)?;

    for (obj, iso, name) in
        [(&left_object, &left_iso, "A (x)_A M -> M"), (&right_object, &right_iso, "M (x)_A A -> M")]
    {
        if iso.rows != iso.cols || iso.invert().is_none() {
            return Err(Error::CheckFailed(format!("unit map {name} is not invertible")));
        }
        if !check_morphism(a, &obj.comodule, m, iso).passed() {
            return Err(Error::CheckFailed(format!("unit map {name} is not a comodule morphism")));
        }
    }
    Ok(UnitIsos { left_object, left_iso, right_object, right_iso })
}

/// An associator and its inverse, each verified against both relation
/// layers, with the two composites checked to be identities.
pub struct AssociatorPair {
    /// (M (x)_A N) (x)_A P -> M (x)_A (N (x)_A P)
    pub forward: Matrix,
    pub inverse: Matrix,
}

/// Builds the associator between prebuilt iterated tensor objects by lifting
/// to M (x) N (x) P and projecting down the other side. Row-major flattening
/// makes ((i,j),l) and (i,(j,l)) the same index, so the reassociation on
/// M (x) N (x) P is the identity; quotient layers are crossed by index
/// arithmetic (sections embed free columns) and column projections.
pub fn associator_pair(
    a: &Algebra,
    mn: &TensorObject,
    np: &TensorObject,
    left: &TensorObject,
    right: &TensorObject,
) -> Result<AssociatorPair, Error> {
    let (dm, dn, dp) = (mn.left.dim, mn.right.dim, np.right.dim);
    let q_mn = mn.space.quotient_dim;
    let q_np = np.space.quotient_dim;

    let project_right = |v: &SparseRow| -> Vec<Scalar> {
        let mut mid = vec![a.field.zero(); dm * q_np];
        for (idx, c) in v {
            let x = idx / (dn * dp);
            let rest = idx % (dn * dp);
            for (r, w) in np.space.proj_col(rest) {
                mid[x * q_np + r] = mid[x * q_np + r].add(&c.mul(w));
            }
        }
        right.space.project(&mid)
    };
    let project_left = |v: &SparseRow| -> Vec<Scalar> {
        let mut mid = vec![a.field.zero(); q_mn * dp];
        for (idx, c) in v {
            let pair = idx / dp;
            let lp = idx % dp;
            for (r, w) in mn.space.proj_col(pair) {
                mid[r * dp + lp] = mid[r * dp + lp].add(&c.mul(w));
            }
        }
        left.space.project(&mid)
    };

    // Relations of the left iterated quotient, expressed in M (x) N (x) P:
    // mn-relations tensored with P, and left-relations lifted through mn.
    for rel in mn.space.relation_generators() {
        for lp in 0..dp {
            let vec: SparseRow = rel.iter().map(|(c, v)| (c * dp + lp, v.clone())).collect();
            if !project_right(&vec).iter().all(Scalar::is_zero) {
                return Err(Error::DescentFailure(
                    "associator is ill-defined on pair relations".into(),
                ));
            }
        }
    }
    for rel in left.space.relation_generators() {
        let vec: SparseRow = rel
            .iter()
            .map(|(g, v)| (mn.space.free_cols[g / dp] * dp + g % dp, v.clone()))
            .collect();
        if !project_right(&vec).iter().all(Scalar::is_zero) {
            return Err(Error::DescentFailure(
                "associator is ill-defined on iterated relations".into(),
            ));
        }
    }
    // Same in the other direction: np-relations under M, and right-relations
    // lifted through np.
    for rel in np.space.relation_generators() {
        for x in 0..dm {
            let vec: SparseRow = rel.iter().map(|(c, v)| (x * (dn * dp) + c, v.clone())).collect();
            if !project_left(&vec).iter().all(Scalar::is_zero) {
                return Err(Error::DescentFailure(
                    "inverse associator is ill-defined on pair relations".into(),
                ));
            }
        }
    }
    for rel in right.space.relation_generators() {
        let vec: SparseRow = rel
            .iter()
            .map(|(g, v)| ((g / q_np) * (dn * dp) + np.space.free_cols[g % q_np], v.clone()))
            .collect();
        if !project_left(&vec).iter().all(Scalar::is_zero) {
            return Err(Error::DescentFailure(
                "inverse associator is ill-defined on iterated relations".into(),
            ));
        }
    }

    let mut forward = Matrix::zeros(a.field, right.space.quotient_dim, left.space.quotient_dim);
    for (b, f) in left.space.free_cols.iter().enumerate() {
        let idx = mn.space.free_cols[f / dp] * dp + f % dp;
        for (l, v) in project_right(&vec![(idx, a.field.one())]).into_iter().enumerate() {
            if !v.is_zero() {
                forward.set(l, b, v);
            }
        }
    }
    let mut inverse = Matrix::zeros(a.field, left.space.quotient_dim, right.space.quotient_dim);
    for (b, g) in right.space.free_cols.iter().enumerate() {
        let idx = (g / q_np) * (dn * dp) + np.space.free_cols[g % q_np];
        for (l, v) in project_left(&vec![(idx, a.field.one())]).into_iter().enumerate() {
            if !v.is_zero() {
                inverse.set(l, b, v);
            }
        }
    }
    if forward.mul(&inverse) != Matrix::identity(a.field, right.space.quotient_dim)
        || inverse.mul(&forward) != Matrix::identity(a.field, left.space.quotient_dim)
    {
        return Err(Error::CheckFailed("associator is not invertible".into()));
    }
    if !check_morphism(a, &left.comodule, &right.comodule, &forward).passed() {
        return Err(Error::CheckFailed("associator is not a comodule morphism".into()));
    }
    Ok(AssociatorPair { forward, inverse })
}

/// Both iterated tensor products of a triple and the associator between them.
pub struct TripleTensor {
    pub mn: TensorObject,
    pub np: TensorObject,
    /// (M (x)_A N) (x)_A P
    pub left: TensorObject,
    /// M (x)_A (N (x)_A P)
    pub right: TensorObject,
    /// left -> right, induced by the identity of M (x) N (x) P.
    pub associator: Matrix,
    pub associator_inv: Matrix,
}

/// Builds both iterated tensor products of (M, N, P) and the associator.
pub fn triple_tensor(
    a: &Algebra,
    m: &Comodule,
    n: &Comodule,
    p: &Comodule,
) -> Result<TripleTensor, Error> {
    let mn = tensor_over_a(a, m, n)?;
    let np = tensor_over_a(a, n, p)?;
    let left = tensor_over_a(a, &mn.comodule, p)?;
    let right = tensor_over_a(a, m, &np.comodule)?;
    let pair = associator_pair(a, &mn, &np, &left, &right)?;
    Ok(TripleTensor {
        mn,
        np,
        left,
        right,
        associator: pair.forward,
        associator_inv: pair.inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_algebra, matrix_algebra, truncated_poly_algebra};
    use crate::comodule::{cofree, regular_comodule};
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn probe_object_tensor_square_has_dim_n_cubed() {
        for a in [matrix_algebra(q(), 2), cyclic_group_algebra(q(), 3), truncated_poly_algebra(q(), 2)]
        {
            let n = a.dim;
            let aa = cofree(&a, n);
            let t = tensor_over_a(&a, &aa, &aa).unwrap();
            assert_eq!(t.space.quotient_dim, n * n * n);
        }
    }

    #[test]
    fn tensor_with_unit_object_is_trivial_over_the_base_field() {
        let a = truncated_poly_algebra(q(), 1);
        let m = cofree(&a, 2);
        let n = cofree(&a, 3);
        let t = tensor_over_a(&a, &m, &n).unwrap();
        assert_eq!(t.space.quotient_dim, 6);
    }

    #[test]
    fn unit_isos_on_regular_and_cofree() {
        let a = matrix_algebra(q(), 2);
        for m in [regular_comodule(&a), cofree(&a, 2)] {
            let isos = unit_isos(&a, &m).unwrap();
            assert_eq!(isos.left_object.space.quotient_dim, m.dim);
            assert_eq!(isos.right_object.space.quotient_dim, m.dim);
        }
    }

    #[test]
    fn regular_tensor_regular_collapses_to_multiplication() {
        let a = matrix_algebra(q(), 2);
        let reg = regular_comodule(&a);
        let t = tensor_over_a(&a, &reg, &reg).unwrap();
        assert_eq!(t.space.quotient_dim, a.dim);
        // x (x)_A y and 1 (x)_A xy have the same image.
        for x in 0..a.dim {
            for y in 0..a.dim {
                let xy = a.multiply(&a.basis_el(x), &a.basis_el(y)).unwrap();
                let mut pairs = Matrix::zeros(q(), a.dim, a.dim);
                for (k, v) in xy.iter().enumerate() {
                    for (u, w) in a.unit.iter().enumerate() {
                        let c = v.mul(w);
                        if !c.is_zero() {
                            pairs.set(u, k, pairs.at(u, k).add(&c));
                        }
                    }
                }
                assert_eq!(t.pure(x, y), t.project_pairs(&pairs), "pair ({x},{y})");
            }
        }
    }

    #[test]
    fn associator_on_the_probe_triple() {
        let a = matrix_algebra(q(), 2);
        let aa = cofree(&a, a.dim);
        let t = triple_tensor(&a, &aa, &aa, &aa).unwrap();
        let n = a.dim;
        assert_eq!(t.left.space.quotient_dim, n * n * n * n);
        assert_eq!(t.right.space.quotient_dim, n * n * n * n);
    }

    #[test]
    fn associator_is_identity_reindexing_over_the_base_field() {
        let a = truncated_poly_algebra(q(), 1);
        let m = cofree(&a, 2);
        let t = triple_tensor(&a, &m, &m, &m).unwrap();
        assert_eq!(t.associator, Matrix::identity(q(), 8));
    }

    #[test]
    fn unit_coherence_triangle_commutes() {
        let a = matrix_algebra(q(), 2);
        let m = regular_comodule(&a);
        let n = cofree(&a, 1);
        let reg = regular_comodule(&a);
        let t = triple_tensor(&a, &m, &reg, &n).unwrap();
        let mn = tensor_over_a(&a, &m, &n).unwrap();
        let m_isos = unit_isos(&a, &m).unwrap();
        let n_isos = unit_isos(&a, &n).unwrap();
        // (r_M (x) id_N) against (id_M (x) l_N) after the associator. The
        // iterated objects share the quotients of M (x)_A A and A (x)_A N.
        let lhs = tensor_of_morphisms(&t.left, &mn, &m_isos.right_iso, &Matrix::identity(q(), n.dim))
            .unwrap();
        let rhs = tensor_of_morphisms(&t.right, &mn, &Matrix::identity(q(), m.dim), &n_isos.left_iso)
            .unwrap()
            .mul(&t.associator);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_products_pass_axioms_over_f7() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = cyclic_group_algebra(f7, 2);
        let aa = cofree(&a, 2);
        let t = tensor_over_a(&a, &aa, &regular_comodule(&a)).unwrap();
        assert_eq!(t.space.quotient_dim, aa.dim);
    }
}
