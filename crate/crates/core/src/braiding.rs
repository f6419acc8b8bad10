//! Braiding candidates on tensor products of comodules and the axiom
//! checker: componentwise descent, naturality against full morphism bases,
//! both hexagon identities through verified associators, and the symmetry.
//!
//! Components are descended without assuming well-definedness; a component
//! that is not constant on representatives is reported, not rejected early.

use std::collections::BTreeMap;
use std::rc::Rc;
use std::time::Instant;

use crate::algebra::Algebra;
use crate::comodule::{check_morphism, cofree, conjugate_comodule, regular_comodule, Comodule};
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{Matrix, QuotientSpace, Reducer, SparseRow, Tensor3};
use crate::report::Report;
use crate::tensor::{associator_pair, tensor_of_morphisms, tensor_over_a, AssociatorPair, TensorObject};

/// A family of candidate maps M (x)_A N -> N (x)_A M.
#[derive(Debug, Clone, PartialEq)]
pub enum BraidFamily {
    /// m (x) n -> n_[0] (x) m n_[1].
    Canonical,
    /// m (x) n -> n_[0] (x) m (n_[1] a) for a fixed element a.
    Ca(Vec<Scalar>),
    /// m (x) n -> n (x) m on representatives.
    Flip,
}

/// A candidate component on quotient bases. The matrix is computed on the
/// chosen representatives either way; well_defined records whether the
/// formula annihilates the balancing relations.
#[derive(Debug, Clone)]
pub struct BraidMap {
    pub matrix: Matrix,
    pub well_defined: bool,
}

/// The candidate on the pair space M (x) N, as sparse columns into N (x) M.
pub fn braid_pair_columns(
    a: &Algebra,
    family: &BraidFamily,
    m: &Comodule,
    n: &Comodule,
) -> Result<Vec<SparseRow>, Error> {
    let (dm, dn) = (m.dim, n.dim);
    let mut cols: Vec<SparseRow> = Vec::with_capacity(dm * dn);
    if let BraidFamily::Flip = family {
        for i in 0..dm {
            for j in 0..dn {
                cols.push(vec![(j * dm + i, a.field.one())]);
            }
        }
        return Ok(cols);
    }
    // w[i][k] = f_i (e_k a), the second factor of the image of f_i (x) g_j.
    let mut w: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(dm);
    for i in 0..dm {
        let mut per_k = Vec::with_capacity(a.dim);
        for k in 0..a.dim {
            let v = match family {
                BraidFamily::Canonical => m.action.fiber(i, k).to_vec(),
                BraidFamily::Ca(elt) => {
                    let eka = a.multiply(&a.basis_el(k), elt)?;
                    let mut fi = vec![a.field.zero(); dm];
                    fi[i] = a.field.one();
                    m.act(&fi, &eka)
                }
                BraidFamily::Flip => unreachable!(),
            };
            per_k.push(v);
        }
        w.push(per_k);
    }
    for i in 0..dm {
        for j in 0..dn {
            let mut entries: BTreeMap<usize, Scalar> = BTreeMap::new();
            for q in 0..dn {
                for (k, v) in n.coaction.fiber(j, q).iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for (s, x) in w[i][k].iter().enumerate() {
                        if !x.is_zero() {
                            let e = entries.entry(q * dm + s).or_insert_with(|| a.field.zero());
                            *e = e.add(&v.mul(x));
                        }
                    }
                }
            }
            cols.push(entries.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    Ok(cols)
}

/// Descends pair-space columns to the quotients, recording instead of
/// requiring well-definedness.
fn descend_component(src: &QuotientSpace, dst: &QuotientSpace, cols: &[SparseRow]) -> BraidMap {
    let mut well_defined = true;
    for rel in src.relation_generators() {
        let mut img: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in rel {
            for (r, w) in &cols[*c] {
                let e = img.entry(*r).or_insert_with(|| src.field.zero());
                *e = e.add(&v.mul(w));
            }
        }
        let img: SparseRow = img.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !dst.annihilates_sparse(&img) {
            well_defined = false;
            break;
        }
    }
    let mut matrix = Matrix::zeros(src.field, dst.quotient_dim, src.quotient_dim);
    for (b, f) in src.free_cols.iter().enumerate() {
        for (l, v) in dst.project_sparse(&cols[*f]).into_iter().enumerate() {
            if !v.is_zero() {
                matrix.set(l, b, v);
            }
        }
    }
    BraidMap { matrix, well_defined }
}

/// The component of a candidate family at (M, N), on the quotient bases of
/// the prebuilt tensor objects M (x)_A N and N (x)_A M.
pub fn braid_component(
    a: &Algebra,
    family: &BraidFamily,
    mn: &TensorObject,
    nm: &TensorObject,
) -> Result<BraidMap, Error> {
    if let BraidFamily::Ca(elt) = family {
        if elt.len() != a.dim {
            return Err(Error::DimensionMismatch("twist element".into()));
        }
    }
    if mn.left.dim != nm.right.dim || mn.right.dim != nm.left.dim {
        return Err(Error::DimensionMismatch("braiding component".into()));
    }
    let cols = braid_pair_columns(a, family, &mn.left, &mn.right)?;
    Ok(descend_component(&mn.space, &nm.space, &cols))
}

/// The canonical component; fails if the formula does not descend, which the
/// comodule axioms rule out.
pub fn canonical_braiding(
    a: &Algebra,
    mn: &TensorObject,
    nm: &TensorObject,
) -> Result<Matrix, Error> {
    let b = braid_component(a, &BraidFamily::Canonical, mn, nm)?;
    if !b.well_defined {
        return Err(Error::DescentFailure("canonical braiding does not descend".into()));
    }
    Ok(b.matrix)
}

/// The twisted component for a fixed element a, with well-definedness
/// reported in the result.
pub fn braiding_ca(
    a: &Algebra,
    elt: &[Scalar],
    mn: &TensorObject,
    nm: &TensorObject,
) -> Result<BraidMap, Error> {
    braid_component(a, &BraidFamily::Ca(elt.to_vec()), mn, nm)
}

/// Pair-space columns of the candidate attached to an element R of A (x) A,
/// for factors of the shape M (x) A and N (x) A (basis (u, b) = u*n + b)
/// where M and N are right modules with the given action tensors:
///   (m (x) 1) (x)_A (n (x) d)  ->  sum (n R^1 (x) 1) (x)_A (m R^2 (x) d).
/// R multiplies the module coordinates; the algebra legs pass through.
pub fn cofree_r_pair_columns(
    a: &Algebra,
    r: &Matrix,
    m_act: &Tensor3,
    n_act: &Tensor3,
) -> Result<Vec<SparseRow>, Error> {
    let na = a.dim;
    if r.rows != na || r.cols != na {
        return Err(Error::DimensionMismatch("R matrix".into()));
    }
    if m_act.d0 != m_act.d2 || n_act.d0 != n_act.d2 || m_act.d1 != na || n_act.d1 != na {
        return Err(Error::DimensionMismatch("module action".into()));
    }
    let (pm, pn) = (m_act.d0, n_act.d0);
    let dm = pm * na;
    let mut cols: Vec<SparseRow> = Vec::with_capacity(pm * pn * na * na);
    for u in 0..pm {
        for c in 0..na {
            for v in 0..pn {
                for b in 0..na {
                    // m_u (x) e_c (x)_A n_v (x) e_b = (m_u (x) 1) (x)_A (n_v (x) d).
                    let d = a.mult.fiber(c, b);
                    let mut entries: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for r1 in 0..na {
                        for r2 in 0..na {
                            let rv = r.at(r1, r2);
                            if rv.is_zero() {
                                continue;
                            }
                            for (vp, nv) in n_act.fiber(v, r1).iter().enumerate() {
                                if nv.is_zero() {
                                    continue;
                                }
                                for (k, uk) in a.unit.iter().enumerate() {
                                    if uk.is_zero() {
                                        continue;
                                    }
                                    let c0 = rv.mul(nv).mul(uk);
                                    for (up, mv) in m_act.fiber(u, r2).iter().enumerate() {
                                        if mv.is_zero() {
                                            continue;
                                        }
                                        let c1 = c0.mul(mv);
                                        for (kk, dv) in d.iter().enumerate() {
                                            if dv.is_zero() {
                                                continue;
                                            }
                                            let row =
                                                (vp * na + k) * dm + (up * na + kk);
                                            let e = entries
                                                .entry(row)
                                                .or_insert_with(|| a.field.zero());
                                            *e = e.add(&c1.mul(dv));
                                        }
                                    }
                                }
                            }
                        }
                    }
                    cols.push(entries.into_iter().filter(|(_, x)| !x.is_zero()).collect());
                }
            }
        }
    }
    Ok(cols)
}

/// The R-candidate component on prebuilt tensor objects whose factors have
/// the shape M (x) A with the given module actions on the coordinates. For
/// R = 1 (x) 1 this is the canonical component.
pub fn cofree_braiding_from_r(
    a: &Algebra,
    r: &Matrix,
    m_act: &Tensor3,
    n_act: &Tensor3,
    mn: &TensorObject,
    nm: &TensorObject,
) -> Result<BraidMap, Error> {
    let (dm, dn) = (mn.left.dim, mn.right.dim);
    if dm != m_act.d0 * a.dim
        || dn != n_act.d0 * a.dim
        || nm.left.dim != dn
        || nm.right.dim != dm
    {
        return Err(Error::DimensionMismatch("cofree braiding".into()));
    }
    let cols = cofree_r_pair_columns(a, r, m_act, n_act)?;
    Ok(descend_component(&mn.space, &nm.space, &cols))
}

/// A basis of the comodule morphisms M -> N, as matrices in the comodule
/// bases. Deterministic: kernel vectors of the constraint system in order.
pub fn hom_basis(a: &Algebra, m: &Comodule, n: &Comodule) -> Vec<Matrix> {
    let (dm, dn) = (m.dim, n.dim);
    let mut red = Reducer::new(a.field, dn * dm);
    // Right linearity: coefficient of g_w in F(f_i e_t) - F(f_i) e_t.
    for i in 0..dm {
        for t in 0..a.dim {
            for w in 0..dn {
                let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (s, v) in m.action.fiber(i, t).iter().enumerate() {
                    if !v.is_zero() {
                        let e = row.entry(w * dm + s).or_insert_with(|| a.field.zero());
                        *e = e.add(v);
                    }
                }
                for u in 0..dn {
                    let v = n.action.at(u, t, w);
                    if !v.is_zero() {
                        let e = row.entry(u * dm + i).or_insert_with(|| a.field.zero());
                        *e = e.sub(v);
                    }
                }
                let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                red.add_sparse(row);
            }
        }
    }
    // Colinearity: coefficient of g_p (x) e_k in rho(F(f_i)) - (F (x) id)(rho(f_i)).
    for i in 0..dm {
        for p in 0..dn {
            for k in 0..a.dim {
                let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                for u in 0..dn {
                    let v = n.coaction.at(u, p, k);
                    if !v.is_zero() {
                        let e = row.entry(u * dm + i).or_insert_with(|| a.field.zero());
                        *e = e.add(v);
                    }
                }
                for l in 0..dm {
                    let v = m.coaction.at(i, l, k);
                    if !v.is_zero() {
                        let e = row.entry(p * dm + l).or_insert_with(|| a.field.zero());
                        *e = e.sub(v);
                    }
                }
                let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                red.add_sparse(row);
            }
        }
    }
    red.kernel_basis()
        .into_iter()
        .map(|vec| {
            let mut f = Matrix::zeros(a.field, dn, dm);
            for (idx, val) in vec.into_iter().enumerate() {
                if !val.is_zero() {
                    f.set(idx / dm, idx % dm, val);
                }
            }
            f
        })
        .collect()
}

/// Caches the objects, tensor pairs and associators shared by the braiding
/// checks. Objects registered before seal() are persistent; composites
/// created afterwards can be evicted between triples to bound memory.
pub struct BraidScene<'a> {
    a: &'a Algebra,
    objects: Vec<Comodule>,
    watermark: usize,
    tensors: BTreeMap<(usize, usize), (usize, Rc<TensorObject>)>,
    assocs: BTreeMap<(usize, usize, usize), Rc<AssociatorPair>>,
}

impl<'a> BraidScene<'a> {
    pub fn new(a: &'a Algebra) -> BraidScene<'a> {
        BraidScene {
            a,
            objects: Vec::new(),
            watermark: 0,
            tensors: BTreeMap::new(),
            assocs: BTreeMap::new(),
        }
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.a
    }

    pub fn add_object(&mut self, m: Comodule) -> usize {
        self.objects.push(m);
        self.objects.len() - 1
    }

    pub fn object(&self, id: usize) -> &Comodule {
        &self.objects[id]
    }

    pub fn object_dim(&self, id: usize) -> usize {
        self.objects[id].dim
    }

    /// Marks every object registered so far as persistent.
    pub fn seal(&mut self) {
        self.watermark = self.objects.len();
    }

    /// The tensor object for the pair (i, j); the composite comodule is
    /// registered as an object so iterated pairs can be formed.
    pub fn tensor(&mut self, i: usize, j: usize) -> Result<(usize, Rc<TensorObject>), Error> {
        if let Some((id, t)) = self.tensors.get(&(i, j)) {
            return Ok((*id, Rc::clone(t)));
        }
        let t = tensor_over_a(self.a, &self.objects[i], &self.objects[j])?;
        let id = self.add_object(t.comodule.clone());
        let rc = Rc::new(t);
        self.tensors.insert((i, j), (id, Rc::clone(&rc)));
        Ok((id, rc))
    }

    /// The verified associator (u (x) v) (x) w -> u (x) (v (x) w), cached
    /// when the triple survives eviction.
    pub fn associator(
        &mut self,
        u: usize,
        v: usize,
        w: usize,
    ) -> Result<Rc<AssociatorPair>, Error> {
        if let Some(p) = self.assocs.get(&(u, v, w)) {
            return Ok(Rc::clone(p));
        }
        let (uv, mn) = self.tensor(u, v)?;
        let (vw, np) = self.tensor(v, w)?;
        let (_, left) = self.tensor(uv, w)?;
        let (_, right) = self.tensor(u, vw)?;
        let pair = Rc::new(associator_pair(self.a, &mn, &np, &left, &right)?);
        let wm = self.watermark;
        if wm == 0 || (u < wm && v < wm && w < wm) {
            self.assocs.insert((u, v, w), Rc::clone(&pair));
        }
        Ok(pair)
    }

    /// Drops objects and tensor pairs created after the last seal. Object
    /// ids above the watermark are reused afterwards. Associators keyed by
    /// persistent triples are kept; they hold no object ids.
    pub fn evict_composites(&mut self) {
        if self.watermark == 0 {
            return;
        }
        let wm = self.watermark;
        self.objects.truncate(wm);
        self.tensors.retain(|&(i, j), &mut (cid, _)| i < wm && j < wm && cid < wm);
    }
}

/// Options for verify_braiding. Triples whose iterated quotient dimension
/// d(U) d(V) d(W) / n^2 exceeds max_triple_quotient are skipped.
pub struct BraidingOptions {
    pub check_symmetry: bool,
    pub fail_fast: bool,
    pub max_triple_quotient: usize,
}

impl Default for BraidingOptions {
    fn default() -> BraidingOptions {
        BraidingOptions { check_symmetry: true, fail_fast: false, max_triple_quotient: 256 }
    }
}

fn component(
    scene: &mut BraidScene,
    memo: &mut BTreeMap<(usize, usize), Rc<BraidMap>>,
    family: &BraidFamily,
    i: usize,
    j: usize,
) -> Result<(Rc<BraidMap>, Rc<TensorObject>, Rc<TensorObject>), Error> {
    let (_, mn) = scene.tensor(i, j)?;
    let (_, nm) = scene.tensor(j, i)?;
    if let Some(c) = memo.get(&(i, j)) {
        return Ok((Rc::clone(c), mn, nm));
    }
    let c = Rc::new(braid_component(scene.algebra(), family, &mn, &nm)?);
    memo.insert((i, j), Rc::clone(&c));
    Ok((c, mn, nm))
}

fn components_check(
    scene: &mut BraidScene,
    memo: &mut BTreeMap<(usize, usize), Rc<BraidMap>>,
    family: &BraidFamily,
    names: &[String],
) -> Result<Option<String>, Error> {
    let a = scene.algebra();
    for i in 0..names.len() {
        for j in 0..names.len() {
            let (c, mn, nm) = component(scene, memo, family, i, j)?;
            if !c.well_defined {
                return Ok(Some(format!(
                    "({}, {}): the formula is not constant on representatives",
                    names[i], names[j]
                )));
            }
            if !check_morphism(a, &mn.comodule, &nm.comodule, &c.matrix).passed() {
                return Ok(Some(format!("({}, {}): not a comodule morphism", names[i], names[j])));
            }
            if c.matrix.rows != c.matrix.cols || c.matrix.invert().is_none() {
                return Ok(Some(format!("({}, {}): not invertible", names[i], names[j])));
            }
        }
    }
    Ok(None)
}

fn naturality_check(
    scene: &mut BraidScene,
    memo: &mut BTreeMap<(usize, usize), Rc<BraidMap>>,
    family: &BraidFamily,
    objects: &[(String, Comodule)],
) -> Result<Option<String>, Error> {
    let a = scene.algebra();
    let len = objects.len();
    let mut homs: BTreeMap<(usize, usize), Vec<Matrix>> = BTreeMap::new();
    for i in 0..len {
        for j in 0..len {
            homs.insert((i, j), hom_basis(a, &objects[i].1, &objects[j].1));
        }
    }
    for mi in 0..len {
        for ni in 0..len {
            for mj in 0..len {
                for nj in 0..len {
                    // The mirrored quadruple needs the same two tensored
                    // morphisms; visit each unordered pair once.
                    if (ni, mi, nj, mj) < (mi, ni, mj, nj) {
                        continue;
                    }
                    let mirrored = (ni, mi, nj, mj) != (mi, ni, mj, nj);
                    let (c_src, src_mn, src_nm) = component(scene, memo, family, mi, ni)?;
                    let (c_dst, dst_mn, dst_nm) = component(scene, memo, family, mj, nj)?;
                    let (c_src_m, _, _) = component(scene, memo, family, ni, mi)?;
                    let (c_dst_m, _, _) = component(scene, memo, family, nj, mj)?;
                    for f in &homs[&(mi, mj)] {
                        for g in &homs[&(ni, nj)] {
                            let fg = tensor_of_morphisms(&src_mn, &dst_mn, f, g)?;
                            let gf = tensor_of_morphisms(&src_nm, &dst_nm, g, f)?;
                            if c_dst.matrix.mul(&fg) != gf.mul(&c_src.matrix) {
                                return Ok(Some(format!(
                                    "({}, {}) -> ({}, {})",
                                    objects[mi].0, objects[ni].0, objects[mj].0, objects[nj].0
                                )));
                            }
                            if mirrored && c_dst_m.matrix.mul(&gf) != fg.mul(&c_src_m.matrix) {
                                return Ok(Some(format!(
                                    "({}, {}) -> ({}, {})",
                                    objects[ni].0, objects[mi].0, objects[nj].0, objects[mj].0
                                )));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn hexagon_one(
    scene: &mut BraidScene,
    memo: &mut BTreeMap<(usize, usize), Rc<BraidMap>>,
    family: &BraidFamily,
    names: &[String],
    u: usize,
    v: usize,
    w: usize,
) -> Result<Option<String>, Error> {
    let a = scene.algebra();
    let triple = format!("({}, {}, {})", names[u], names[v], names[w]);
    let asc_uvw = scene.associator(u, v, w)?;
    let (uv, _) = scene.tensor(u, v)?;
    let (vu, _) = scene.tensor(v, u)?;
    let (vw, _) = scene.tensor(v, w)?;
    let (uw, _) = scene.tensor(u, w)?;
    let (wu, _) = scene.tensor(w, u)?;
    let (_, p_u_vw) = scene.tensor(u, vw)?;
    let (_, p_vw_u) = scene.tensor(vw, u)?;
    let c_u_vw = braid_component(a, family, &p_u_vw, &p_vw_u)?;
    if !c_u_vw.well_defined {
        return Ok(Some(format!("{triple}: braiding out of the pair is not well defined")));
    }
    let asc_vwu = scene.associator(v, w, u)?;
    let lhs = asc_vwu.forward.mul(&c_u_vw.matrix).mul(&asc_uvw.forward);

    let (c_uv, _, _) = component(scene, memo, family, u, v)?;
    let (c_uw, _, _) = component(scene, memo, family, u, w)?;
    if !c_uv.well_defined || !c_uw.well_defined {
        return Ok(Some(format!("{triple}: a pair component is not well defined")));
    }
    let (_, src1) = scene.tensor(uv, w)?;
    let (_, dst1) = scene.tensor(vu, w)?;
    let id_w = Matrix::identity(a.field, scene.object_dim(w));
    let t1 = tensor_of_morphisms(&src1, &dst1, &c_uv.matrix, &id_w)?;
    let asc_vuw = scene.associator(v, u, w)?;
    let (_, src2) = scene.tensor(v, uw)?;
    let (_, dst2) = scene.tensor(v, wu)?;
    let id_v = Matrix::identity(a.field, scene.object_dim(v));
    let t2 = tensor_of_morphisms(&src2, &dst2, &id_v, &c_uw.matrix)?;
    let rhs = t2.mul(&asc_vuw.forward).mul(&t1);
    Ok(if lhs == rhs { None } else { Some(triple) })
}

fn hexagon_two(
    scene: &mut BraidScene,
    memo: &mut BTreeMap<(usize, usize), Rc<BraidMap>>,
    family: &BraidFamily,
    names: &[String],
    u: usize,
    v: usize,
    w: usize,
) -> Result<Option<String>, Error> {
    let a = scene.algebra();
    let triple = format!("({}, {}, {})", names[u], names[v], names[w]);
    let asc_uvw = scene.associator(u, v, w)?;
    let (uv, _) = scene.tensor(u, v)?;
    let (vw, _) = scene.tensor(v, w)?;
    let (wv, _) = scene.tensor(w, v)?;
    let (uw, _) = scene.tensor(u, w)?;
    let (wu, _) = scene.tensor(w, u)?;
    let (_, p_uv_w) = scene.tensor(uv, w)?;
    let (_, p_w_uv) = scene.tensor(w, uv)?;
    let c_uv_w = braid_component(a, family, &p_uv_w, &p_w_uv)?;
    if !c_uv_w.well_defined {
        return Ok(Some(format!("{triple}: braiding into the pair is not well defined")));
    }
    let asc_wuv = scene.associator(w, u, v)?;
    let lhs = asc_wuv.inverse.mul(&c_uv_w.matrix).mul(&asc_uvw.inverse);

    let (c_vw, _, _) = component(scene, memo, family, v, w)?;
    let (c_uw, _, _) = component(scene, memo, family, u, w)?;
    if !c_vw.well_defined || !c_uw.well_defined {
        return Ok(Some(format!("{triple}: a pair component is not well defined")));
    }
    let (_, src3) = scene.tensor(u, vw)?;
    let (_, dst3) = scene.tensor(u, wv)?;
    let id_u = Matrix::identity(a.field, scene.object_dim(u));
    let t3 = tensor_of_morphisms(&src3, &dst3, &id_u, &c_vw.matrix)?;
    let asc_uwv = scene.associator(u, w, v)?;
    let (_, src4) = scene.tensor(uw, v)?;
    let (_, dst4) = scene.tensor(wu, v)?;
    let id_v = Matrix::identity(a.field, scene.object_dim(v));
    let t4 = tensor_of_morphisms(&src4, &dst4, &c_uw.matrix, &id_v)?;
    let rhs = t4.mul(&asc_uwv.inverse).mul(&t3);
    Ok(if lhs == rhs { None } else { Some(triple) })
}

fn symmetry_check(
    scene: &mut BraidScene,
    memo: &mut BTreeMap<(usize, usize), Rc<BraidMap>>,
    family: &BraidFamily,
    names: &[String],
) -> Result<Option<String>, Error> {
    let field = scene.algebra().field;
    for i in 0..names.len() {
        for j in 0..names.len() {
            let (cij, _, _) = component(scene, memo, family, i, j)?;
            let (cji, _, _) = component(scene, memo, family, j, i)?;
            let dim = cij.matrix.cols;
            if cji.matrix.mul(&cij.matrix) != Matrix::identity(field, dim) {
                return Ok(Some(format!("({}, {})", names[i], names[j])));
            }
        }
    }
    Ok(None)
}

fn run_check(
    report: &mut Report,
    name: &str,
    fail_fast: bool,
    f: impl FnOnce() -> Result<Option<String>, Error>,
) -> bool {
    report.run(name, || match f() {
        Ok(None) => (true, None),
        Ok(Some(witness)) => (false, Some(witness)),
        Err(e) => (false, Some(e.to_string())),
    });
    !fail_fast || report.passed()
}

/// Checks that a candidate family is a braiding on the given objects:
/// components descend, are isomorphisms of comodules, are natural against
/// every pair of basis morphisms, and satisfy both hexagon identities
/// through verified associators. Optionally checks the symmetry.
pub fn verify_braiding(
    a: &Algebra,
    family: &BraidFamily,
    objects: &[(String, Comodule)],
    opts: &BraidingOptions,
) -> Report {
    let suite = match family {
        BraidFamily::Canonical => "braiding axioms (canonical family)".to_string(),
        BraidFamily::Ca(elt) => {
            format!("braiding axioms (family twisted by {})", a.el_to_string(elt))
        }
        BraidFamily::Flip => "braiding axioms (plain flip)".to_string(),
    };
    let mut report = Report::new(suite);
    if let BraidFamily::Ca(elt) = family {
        if elt.len() != a.dim {
            report.push(
                "twist element lives in the algebra",
                false,
                Some(format!("expected {} coordinates, got {}", a.dim, elt.len())),
            );
            return report;
        }
    }
    let mut scene = BraidScene::new(a);
    for (_, m) in objects {
        scene.add_object(m.clone());
    }
    let names: Vec<String> = objects.iter().map(|(n, _)| n.clone()).collect();
    let mut memo: BTreeMap<(usize, usize), Rc<BraidMap>> = BTreeMap::new();

    if !run_check(
        &mut report,
        "components descend, are comodule morphisms and are invertible",
        opts.fail_fast,
        || components_check(&mut scene, &mut memo, family, &names),
    ) {
        return report;
    }
    if !run_check(
        &mut report,
        "naturality in both arguments against all basis morphism pairs",
        opts.fail_fast,
        || naturality_check(&mut scene, &mut memo, family, objects),
    ) {
        return report;
    }

    scene.seal();
    let bound = opts.max_triple_quotient * a.dim * a.dim;
    let mut hex1_fail: Option<String> = None;
    let mut hex2_fail: Option<String> = None;
    let (mut hex1_ms, mut hex2_ms) = (0u128, 0u128);
    'triples: for u in 0..names.len() {
        for v in 0..names.len() {
            for w in 0..names.len() {
                let size = scene.object_dim(u) * scene.object_dim(v) * scene.object_dim(w);
                if size > bound {
                    continue;
                }
                if hex1_fail.is_none() {
                    let t = Instant::now();
                    match hexagon_one(&mut scene, &mut memo, family, &names, u, v, w) {
                        Ok(None) => {}
                        Ok(Some(wit)) => hex1_fail = Some(wit),
                        Err(e) => {
                            hex1_fail = Some(format!(
                                "({}, {}, {}): {e}",
                                names[u], names[v], names[w]
                            ))
                        }
                    }
                    hex1_ms += t.elapsed().as_millis();
                }
                if hex2_fail.is_none() {
                    let t = Instant::now();
                    match hexagon_two(&mut scene, &mut memo, family, &names, u, v, w) {
                        Ok(None) => {}
                        Ok(Some(wit)) => hex2_fail = Some(wit),
                        Err(e) => {
                            hex2_fail = Some(format!(
                                "({}, {}, {}): {e}",
                                names[u], names[v], names[w]
                            ))
                        }
                    }
                    hex2_ms += t.elapsed().as_millis();
                }
                scene.evict_composites();
                if hex1_fail.is_some() && hex2_fail.is_some() {
                    break 'triples;
                }
                if opts.fail_fast && (hex1_fail.is_some() || hex2_fail.is_some()) {
                    break 'triples;
                }
            }
        }
    }
    report.push_timed(
        "first hexagon identity on all object triples",
        hex1_fail.is_none(),
        hex1_fail,
        hex1_ms,
    );
    report.push_timed(
        "second hexagon identity on all object triples",
        hex2_fail.is_none(),
        hex2_fail,
        hex2_ms,
    );
    if opts.fail_fast && !report.passed() {
        return report;
    }

    if opts.check_symmetry {
        run_check(&mut report, "the braiding squares to the identity", false, || {
            symmetry_check(&mut scene, &mut memo, family, &names)
        });
    }
    report
}

/// The comparison map of cofree pairs, F(V) (x)_A F(W) -> F(V (x) W),
///   (v_u (x) e_c) (x)_A (w_v (x) e_b)  ->  (v_u (x) w_v) (x) e_c e_b,
/// with the target basis ((u, v), k) = (u*w_dim + v)*n + k.
fn pair_comparison(
    a: &Algebra,
    v_dim: usize,
    w_dim: usize,
    mn: &TensorObject,
) -> Result<Matrix, Error> {
    let na = a.dim;
    let target = QuotientSpace::new(a.field, v_dim * w_dim * na, Vec::new());
    let dn = w_dim * na;
    let mut cols: Vec<SparseRow> = Vec::with_capacity(v_dim * na * dn);
    for u in 0..v_dim {
        for c in 0..na {
            for v in 0..w_dim {
                for b in 0..na {
                    let col: SparseRow = a
                        .mult
                        .fiber(c, b)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| ((u * w_dim + v) * na + k, x.clone()))
                        .collect();
                    cols.push(col);
                }
            }
        }
    }
    mn.space.descend_columns(&target, &cols)
}

/// Checks that the cofree construction is monoidal and carries the canonical
/// braiding to the flip of the vector legs: the unit comparison map and both
/// pair comparison maps are comodule isomorphisms, and the comparison square
/// commutes. For ranks at least two it also checks that the square fails
/// with the identity in place of the flip.
pub fn check_cofree_monoidal(a: &Algebra, v_dim: usize, w_dim: usize) -> Report {
    let mut report = Report::new(format!("cofree comparison maps (ranks {v_dim}, {w_dim})"));
    let na = a.dim;
    report.run("unit comparison map is a comodule isomorphism", || {
        let reg = regular_comodule(a);
        let cf = cofree(a, 1);
        let rep = check_morphism(a, &reg, &cf, &Matrix::identity(a.field, na));
        (rep.passed(), rep.first_failure().map(|c| c.name.clone()))
    });
    let fv = cofree(a, v_dim);
    let fw = cofree(a, w_dim);
    let built = (|| -> Result<_, Error> {
        let mn = tensor_over_a(a, &fv, &fw)?;
        let nm = tensor_over_a(a, &fw, &fv)?;
        let phi_vw = pair_comparison(a, v_dim, w_dim, &mn)?;
        let phi_wv = pair_comparison(a, w_dim, v_dim, &nm)?;
        let c = canonical_braiding(a, &mn, &nm)?;
        Ok((mn, nm, phi_vw, phi_wv, c))
    })();
    let (mn, nm, phi_vw, phi_wv, c) = match built {
        Ok(x) => x,
        Err(e) => {
            report.push("pair comparison maps exist", false, Some(e.to_string()));
            return report;
        }
    };
    report.run("pair comparison maps are comodule isomorphisms", || {
        for (phi, src, rank) in
            [(&phi_vw, &mn, v_dim * w_dim), (&phi_wv, &nm, w_dim * v_dim)]
        {
            if phi.rows != phi.cols || phi.invert().is_none() {
                return (false, Some("comparison map is not invertible".into()));
            }
            let rep = check_morphism(a, &src.comodule, &cofree(a, rank), phi);
            if !rep.passed() {
                return (false, rep.first_failure().map(|c| c.name.clone()));
            }
        }
        (true, None)
    });
    let mut flip = Matrix::zeros(a.field, w_dim * v_dim * na, v_dim * w_dim * na);
    for u in 0..v_dim {
        for v in 0..w_dim {
            for k in 0..na {
                flip.set((v * v_dim + u) * na + k, (u * w_dim + v) * na + k, a.field.one());
            }
        }
    }
    report.run("comparison square carries the braiding to the flip of vector legs", || {
        (phi_wv.mul(&c) == flip.mul(&phi_vw), None)
    });
    if v_dim >= 2 && w_dim >= 2 {
        report.run("comparison square rejects the identity in place of the flip", || {
            (phi_wv.mul(&c) != phi_vw, None)
        });
    }
    report
}

/// The identification of (A (x) A) (x)_A (A (x) A) with A (x) A (x) A,
///   (e_x (x) e_y) (x)_A (e_x' (x) e_y')  ->  e_x (x) e_x' (x) y y',
/// as an invertible matrix from the quotient basis of a pair of objects in
/// cofree normal form of rank n. Rows are flattened (x*n + x')*n + k.
pub fn probe_transport(a: &Algebra, pair: &TensorObject) -> Result<Matrix, Error> {
    let na = a.dim;
    let d = na * na;
    if pair.left.dim != d || pair.right.dim != d {
        return Err(Error::DimensionMismatch("probe transport".into()));
    }
    let trivial = QuotientSpace::new(a.field, na * na * na, Vec::new());
    let mut cols: Vec<SparseRow> = Vec::with_capacity(d * d);
    for x in 0..na {
        for y in 0..na {
            for xp in 0..na {
                for yp in 0..na {
                    let col: SparseRow = a
                        .mult
                        .fiber(y, yp)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| ((x * na + xp) * na + k, v.clone()))
                        .collect();
                    cols.push(col);
                }
            }
        }
    }
    let theta = pair.space.descend_columns(&trivial, &cols)?;
    if theta.rows != theta.cols || theta.invert().is_none() {
        return Err(Error::CheckFailed("transport to the cube is not invertible".into()));
    }
    Ok(theta)
}

/// The flip of the first two legs of A (x) A (x) A, the transported form of
/// the canonical braiding at the probe pair.
pub fn cube_flip(a: &Algebra) -> Matrix {
    let na = a.dim;
    let mut out = Matrix::zeros(a.field, na * na * na, na * na * na);
    for x in 0..na {
        for y in 0..na {
            for z in 0..na {
                out.set((y * na + x) * na + z, (x * na + y) * na + z, a.field.one());
            }
        }
    }
    out
}

/// The standard object list: the regular comodule, the probe object A (x) A,
/// cofree objects of rank one and two, and (in dimension at least two) a
/// conjugated cofree object whose coaction is not in normal form.
pub fn default_test_objects(a: &Algebra) -> Result<Vec<(String, Comodule)>, Error> {
    let mut out = vec![
        ("A".to_string(), regular_comodule(a)),
        ("A (x) A".to_string(), cofree(a, a.dim)),
        ("F(V1)".to_string(), cofree(a, 1)),
        ("F(V2)".to_string(), cofree(a, 2)),
    ];
    if a.dim >= 2 {
        let mut s = Matrix::identity(a.field, a.dim);
        s.set(0, a.dim - 1, a.field.one());
        out.push(("F(V1) twisted".to_string(), conjugate_comodule(a, &cofree(a, 1), &s)?));
    }
    Ok(out)
}
