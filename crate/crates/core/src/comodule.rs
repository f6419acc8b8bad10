//! Right comodules over the canonical coring A (x) A: axioms, morphisms,
//! regular and cofree objects, the induced left action, coinvariants, the
//! descent equivalence and the left-linear splitting of the coaction.
//!
//! Conventions. A comodule of dimension m has action tensor act[i][j][l]
//! (f_i e_j = sum_l act[i][j][l] f_l) and coaction tensor coact[i][l][k]
//! (rho(f_i) = sum_{l,k} coact[i][l][k] f_l (x) e_k). Elements of M (x) A are
//! flattened as (l, k) = l*n + k.

use crate::algebra::Algebra;
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{dense_to_sparse, kernel_basis, Matrix, Reducer, Tensor3};
use crate::report::Report;
use crate::separability::CentralMap;

/// A linear map between comodules, stored on coordinates. Whether it is
/// actually a morphism is the business of check_morphism.
pub type ComoduleMorphism = Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct Comodule {
    pub dim: usize,
    /// act[i][j][l]: coefficient of f_l in f_i e_j.
    pub action: Tensor3,
    /// coact[i][l][k]: coefficient of f_l (x) e_k in rho(f_i).
    pub coaction: Tensor3,
}

impl Comodule {
    /// Matrix of the right action of the basis element e_j.
    pub fn action_matrix(&self, j: usize) -> Matrix {
        let m = self.dim;
        let mut out = Matrix::zeros(self.action.field(), m, m);
        for i in 0..m {
            for (l, v) in self.action.fiber(i, j).iter().enumerate() {
                if !v.is_zero() {
                    out.set(l, i, v.clone());
                }
            }
        }
        out
    }

    /// Matrix M (x) A -> M of the action, columns indexed by (i, j) = i*n + j.
    pub fn action_full(&self, n: usize) -> Matrix {
        let m = self.dim;
        let mut out = Matrix::zeros(self.action.field(), m, m * n);
        for i in 0..m {
            for j in 0..n {
                for (l, v) in self.action.fiber(i, j).iter().enumerate() {
                    if !v.is_zero() {
                        out.set(l, i * n + j, v.clone());
                    }
                }
            }
        }
        out
    }

    /// Matrix M -> M (x) A of the coaction, rows indexed by (l, k) = l*n + k.
    pub fn coaction_matrix(&self, n: usize) -> Matrix {
        let m = self.dim;
        let mut out = Matrix::zeros(self.coaction.field(), m * n, m);
        for i in 0..m {
            for l in 0..m {
                for (k, v) in self.coaction.fiber(i, l).iter().enumerate() {
                    if !v.is_zero() {
                        out.set(l * n + k, i, v.clone());
                    }
                }
            }
        }
        out
    }

    /// m a for coefficient vectors.
    pub fn act(&self, m: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let field = self.action.field();
        let mut out = vec![field.zero(); self.dim];
        for (i, mi) in m.iter().enumerate() {
            if mi.is_zero() {
                continue;
            }
            for (j, aj) in a.iter().enumerate() {
                if aj.is_zero() {
                    continue;
                }
                let c = mi.mul(aj);
                for (l, v) in self.action.fiber(i, j).iter().enumerate() {
                    if !v.is_zero() {
                        out[l] = out[l].add(&c.mul(v));
                    }
                }
            }
        }
        out
    }

    /// rho(m) flattened into M (x) A coordinates.
    pub fn coact(&self, m: &[Scalar], n: usize) -> Vec<Scalar> {
        let field = self.coaction.field();
        let mut out = vec![field.zero(); self.dim * n];
        for (i, mi) in m.iter().enumerate() {
            if mi.is_zero() {
                continue;
            }
            for l in 0..self.dim {
                for (k, v) in self.coaction.fiber(i, l).iter().enumerate() {
                    if !v.is_zero() {
                        out[l * n + k] = out[l * n + k].add(&mi.mul(v));
                    }
                }
            }
        }
        out
    }
}

/// Kronecker product f (x) g on flattened coordinates (row-major pairs).
pub fn kron(f: &Matrix, g: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(f.field, f.rows * g.rows, f.cols * g.cols);
    for i in 0..f.rows {
        for j in 0..f.cols {
            let v = f.at(i, j);
            if v.is_zero() {
                continue;
            }
            for p in 0..g.rows {
                for q in 0..g.cols {
                    let w = g.at(p, q);
                    if !w.is_zero() {
                        out.set(i * g.rows + p, j * g.cols + q, v.mul(w));
                    }
                }
            }
        }
    }
    out
}

/// Verifies the right-module axioms and the three comodule axioms as exact
/// matrix identities.
pub fn check_comodule(a: &Algebra, m: &Comodule) -> Report {
    let n = a.dim;
    let mut report = Report::new("comodule axioms");
    report.run("shape", || {
        let ok = m.action.d0 == m.dim
            && m.action.d1 == n
            && m.action.d2 == m.dim
            && m.coaction.d0 == m.dim
            && m.coaction.d1 == m.dim
            && m.coaction.d2 == n;
        (ok, None)
    });
    if !report.passed() {
        return report;
    }
    let act: Vec<Matrix> = (0..n).map(|j| m.action_matrix(j)).collect();
    report.run("module axiom: unit acts as identity", || {
        let mut sum = Matrix::zeros(a.field, m.dim, m.dim);
        for (j, u) in a.unit.iter().enumerate() {
            if !u.is_zero() {
                sum = sum.add(&act[j].scale(u));
            }
        }
        (sum == Matrix::identity(a.field, m.dim), None)
    });
    report.run("module axiom: associativity of the action", || {
        for j in 0..n {
            for t in 0..n {
                let lhs = act[t].mul(&act[j]);
                let mut rhs = Matrix::zeros(a.field, m.dim, m.dim);
                for k in 0..n {
                    let c = a.mult.at(j, t, k);
                    if !c.is_zero() {
                        rhs = rhs.add(&act[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return (false, Some(format!("fails on pair ({}, {})", a.basis[j], a.basis[t])));
                }
            }
        }
        (true, None)
    });
    report.run("counit: m_[0] m_[1] = m", || {
        for i in 0..m.dim {
            let mut diff = vec![a.field.zero(); m.dim];
            for l in 0..m.dim {
                for (k, v) in m.coaction.fiber(i, l).iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for (s, w) in m.action.fiber(l, k).iter().enumerate() {
                        if !w.is_zero() {
                            diff[s] = diff[s].add(&v.mul(w));
                        }
                    }
                }
            }
            diff[i] = diff[i].sub(&a.field.one());
            if !diff.iter().all(Scalar::is_zero) {
                return (false, Some(format!("fails on basis element {i}")));
            }
        }
        (true, None)
    });
    report.run("coassociativity: rho(m_[0]) (x) m_[1] = m_[0] (x) 1 (x) m_[1]", || {
        // Per basis element, both sides in M (x) A (x) A, index (p*n + q)*n + k.
        for i in 0..m.dim {
            let mut diff = vec![a.field.zero(); m.dim * n * n];
            for l in 0..m.dim {
                for (k, v) in m.coaction.fiber(i, l).iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for p in 0..m.dim {
                        for (q, w) in m.coaction.fiber(l, p).iter().enumerate() {
                            if !w.is_zero() {
                                let r = (p * n + q) * n + k;
                                diff[r] = diff[r].add(&v.mul(w));
                            }
                        }
                    }
                }
            }
            for p in 0..m.dim {
                for (k, v) in m.coaction.fiber(i, p).iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for (q, u) in a.unit.iter().enumerate() {
                        if !u.is_zero() {
                            let r = (p * n + q) * n + k;
                            diff[r] = diff[r].sub(&v.mul(u));
                        }
                    }
                }
            }
            if !diff.iter().all(Scalar::is_zero) {
                return (false, Some(format!("fails on basis element {i}")));
            }
        }
        (true, None)
    });
    report.run("right colinearity: rho(m a) = m_[0] (x) m_[1] a", || {
        for t in 0..n {
            for i in 0..m.dim {
                let mut diff = vec![a.field.zero(); m.dim * n];
                for (s, v) in m.action.fiber(i, t).iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for p in 0..m.dim {
                        for (k, w) in m.coaction.fiber(s, p).iter().enumerate() {
                            if !w.is_zero() {
                                diff[p * n + k] = diff[p * n + k].add(&v.mul(w));
                            }
                        }
                    }
                }
                for l in 0..m.dim {
                    for (k1, v) in m.coaction.fiber(i, l).iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        for (k, w) in a.mult.fiber(k1, t).iter().enumerate() {
                            if !w.is_zero() {
                                diff[l * n + k] = diff[l * n + k].sub(&v.mul(w));
                            }
                        }
                    }
                }
                if !diff.iter().all(Scalar::is_zero) {
                    return (false, Some(format!("fails on {}", a.basis[t])));
                }
            }
        }
        (true, None)
    });
    report
}

/// Coring comultiplication A (x) A -> A (x) A (x) A, a (x) b -> a (x) 1 (x) b,
/// on an element given by its coefficient matrix.
pub fn coring_delta(a: &Algebra, x: &Matrix) -> Tensor3 {
    let n = a.dim;
    let mut out = Tensor3::zeros(a.field, n, n, n);
    for p in 0..n {
        for r in 0..n {
            let v = x.at(p, r);
            if v.is_zero() {
                continue;
            }
            for (q, u) in a.unit.iter().enumerate() {
                if !u.is_zero() {
                    out.set(p, q, r, v.mul(u));
                }
            }
        }
    }
    out
}

/// Coring counit A (x) A -> A, a (x) b -> ab.
pub fn coring_counit(a: &Algebra, x: &Matrix) -> Vec<Scalar> {
    let mut out = a.zero_el();
    for i in 0..a.dim {
        for j in 0..a.dim {
            let c = x.at(i, j);
            if c.is_zero() {
                continue;
            }
            for (k, v) in a.mult.fiber(i, j).iter().enumerate() {
                if !v.is_zero() {
                    out[k] = out[k].add(&c.mul(v));
                }
            }
        }
    }
    out
}

/// Verifies that f is right A-linear and colinear,
/// rho_N(f(m)) = f(m_[0]) (x) m_[1].
pub fn check_morphism(a: &Algebra, m: &Comodule, n: &Comodule, f: &ComoduleMorphism) -> Report {
    let dim_a = a.dim;
    let mut report = Report::new("comodule morphism");
    report.run("shape", || {
        ((f.rows, f.cols) == (n.dim, m.dim), None)
    });
    if !report.passed() {
        return report;
    }
    report.run("right A-linearity", || {
        for j in 0..dim_a {
            if f.mul(&m.action_matrix(j)) != n.action_matrix(j).mul(f) {
                return (false, Some(format!("fails on {}", a.basis[j])));
            }
        }
        (true, None)
    });
    report.run("colinearity", || {
        // Per basis element, rho_N(F(m)) - (F (x) id) rho_M(m) in N (x) A.
        for i in 0..m.dim {
            let mut diff = vec![a.field.zero(); n.dim * dim_a];
            for u in 0..n.dim {
                let v = f.at(u, i);
                if v.is_zero() {
                    continue;
                }
                for p in 0..n.dim {
                    for (k, w) in n.coaction.fiber(u, p).iter().enumerate() {
                        if !w.is_zero() {
                            diff[p * dim_a + k] = diff[p * dim_a + k].add(&v.mul(w));
                        }
                    }
                }
            }
            for l in 0..m.dim {
                for (k, v) in m.coaction.fiber(i, l).iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    for p in 0..n.dim {
                        let w = f.at(p, l);
                        if !w.is_zero() {
                            diff[p * dim_a + k] = diff[p * dim_a + k].sub(&v.mul(w));
                        }
                    }
                }
            }
            if !diff.iter().all(Scalar::is_zero) {
                return (false, Some(format!("fails on basis element {i}")));
            }
        }
        (true, None)
    });
    report
}

/// A as a comodule over its own coring: regular right action, rho(a) = 1 (x) a.
pub fn regular_comodule(a: &Algebra) -> Comodule {
    let n = a.dim;
    let mut coaction = Tensor3::zeros(a.field, n, n, n);
    for i in 0..n {
        for (l, u) in a.unit.iter().enumerate() {
            if !u.is_zero() {
                coaction.set(i, l, i, u.clone());
            }
        }
    }
    Comodule { dim: n, action: a.mult.clone(), coaction }
}

/// Cofree comodule on a v_dim-dimensional space: V (x) A with right
/// multiplication and rho(v (x) a) = v (x) 1 (x) a. Basis (u, a) = u*n + a.
pub fn cofree(a: &Algebra, v_dim: usize) -> Comodule {
    let n = a.dim;
    let dim = v_dim * n;
    let mut action = Tensor3::zeros(a.field, dim, n, dim);
    let mut coaction = Tensor3::zeros(a.field, dim, dim, n);
    for u in 0..v_dim {
        for b in 0..n {
            for j in 0..n {
                for (c, v) in a.mult.fiber(b, j).iter().enumerate() {
                    if !v.is_zero() {
                        action.set(u * n + b, j, u * n + c, v.clone());
                    }
                }
            }
            for (w, uv) in a.unit.iter().enumerate() {
                if !uv.is_zero() {
                    coaction.set(u * n + b, u * n + w, b, uv.clone());
                }
            }
        }
    }
    Comodule { dim, action, coaction }
}

/// Transports the structure of m along an invertible change of basis
/// s: M' -> M, so that s becomes a comodule isomorphism from the result to m.
/// Useful for test objects whose coaction is not in cofree normal form.
pub fn conjugate_comodule(a: &Algebra, m: &Comodule, s: &Matrix) -> Result<Comodule, Error> {
    if s.rows != m.dim || s.cols != m.dim {
        return Err(Error::DimensionMismatch("change of basis".into()));
    }
    let s_inv = s
        .invert()
        .ok_or_else(|| Error::CheckFailed("change of basis is not invertible".into()))?;
    let n = a.dim;
    let mut action = Tensor3::zeros(a.field, m.dim, n, m.dim);
    for j in 0..n {
        let conj = s_inv.mul(&m.action_matrix(j)).mul(s);
        for i in 0..m.dim {
            for l in 0..m.dim {
                let v = conj.at(l, i);
                if !v.is_zero() {
                    action.set(i, j, l, v.clone());
                }
            }
        }
    }
    let mut coaction = Tensor3::zeros(a.field, m.dim, m.dim, n);
    for i in 0..m.dim {
        for j in 0..m.dim {
            let sji = s.at(j, i);
            if sji.is_zero() {
                continue;
            }
            for l in 0..m.dim {
                for (k, c) in m.coaction.fiber(j, l).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let w = sji.mul(c);
                    for p in 0..m.dim {
                        let v = s_inv.at(p, l);
                        if !v.is_zero() {
                            coaction.set(i, p, k, coaction.at(i, p, k).add(&w.mul(v)));
                        }
                    }
                }
            }
        }
    }
    let out = Comodule { dim: m.dim, action, coaction };
    let axioms = check_comodule(a, &out);
    if !axioms.passed() {
        return Err(Error::CheckFailed(format!(
            "transported structure violates comodule axioms: {}",
            axioms.first_failure().map(|c| c.name.clone()).unwrap_or_default()
        )));
    }
    Ok(out)
}

/// Left action a m = m_[0] (a m_[1]) as a tensor left[j][i][l]:
/// e_j f_i = sum_l left[j][i][l] f_l.
pub fn induced_left_action(a: &Algebra, m: &Comodule) -> Tensor3 {
    let n = a.dim;
    let mut out = Tensor3::zeros(a.field, n, m.dim, m.dim);
    for j in 0..n {
        for i in 0..m.dim {
            let mut img = vec![a.field.zero(); m.dim];
            for l in 0..m.dim {
                for (k, c) in m.coaction.fiber(i, l).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    // f_l (e_j e_k)
                    for (t, w) in a.mult.fiber(j, k).iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        let cw = c.mul(w);
                        for (s, v) in m.action.fiber(l, t).iter().enumerate() {
                            if !v.is_zero() {
                                img[s] = img[s].add(&cw.mul(v));
                            }
                        }
                    }
                }
            }
            for (l, v) in img.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(j, i, l, v);
                }
            }
        }
    }
    out
}

/// Matrix of the induced left action of e_j.
pub fn left_action_matrix(left: &Tensor3, j: usize) -> Matrix {
    let m = left.d1;
    let mut out = Matrix::zeros(left.field(), m, m);
    for i in 0..m {
        for (l, v) in left.fiber(j, i).iter().enumerate() {
            if !v.is_zero() {
                out.set(l, i, v.clone());
            }
        }
    }
    out
}

/// Left-module axioms and the bimodule law for the induced left action.
pub fn check_left_action(a: &Algebra, m: &Comodule, left: &Tensor3) -> Report {
    let n = a.dim;
    let mut report = Report::new("induced left action");
    let lact: Vec<Matrix> = (0..n).map(|j| left_action_matrix(left, j)).collect();
    report.run("unit acts as identity", || {
        let mut sum = Matrix::zeros(a.field, m.dim, m.dim);
        for (j, u) in a.unit.iter().enumerate() {
            if !u.is_zero() {
                sum = sum.add(&lact[j].scale(u));
            }
        }
        (sum == Matrix::identity(a.field, m.dim), None)
    });
    report.run("associativity of the left action", || {
        for i in 0..n {
            for j in 0..n {
                // (e_i e_j) m = e_i (e_j m)
                let mut lhs = Matrix::zeros(a.field, m.dim, m.dim);
                for (k, c) in a.mult.fiber(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        lhs = lhs.add(&lact[k].scale(c));
                    }
                }
                if lhs != lact[i].mul(&lact[j]) {
                    return (false, Some(format!("fails on ({}, {})", a.basis[i], a.basis[j])));
                }
            }
        }
        (true, None)
    });
    report.run("bimodule law (a m) b = a (m b)", || {
        for j in 0..n {
            for t in 0..n {
                let ract = m.action_matrix(t);
                if ract.mul(&lact[j]) != lact[j].mul(&ract) {
                    return (false, Some(format!("fails on a = {}, b = {}", a.basis[j], a.basis[t])));
                }
            }
        }
        (true, None)
    });
    report
}

/// Verifies rho(a m) = a rho(m), with the cofree left action on M (x) A.
pub fn check_rho_left_linear(a: &Algebra, m: &Comodule) -> Report {
    let n = a.dim;
    let left = induced_left_action(a, m);
    let rho = m.coaction_matrix(n);
    let mut report = Report::new("coaction left linearity");
    report.run("rho(a m) = a rho(m)", || {
        for j in 0..n {
            let lhs = rho.mul(&left_action_matrix(&left, j));
            let rhs = kron(&Matrix::identity(a.field, m.dim), &a.left_mult_matrix(&a.basis_el(j)))
                .mul(&rho);
            if lhs != rhs {
                return (false, Some(format!("fails on {}", a.basis[j])));
            }
        }
        (true, None)
    });
    report
}

/// Laws a splitting map mu: M (x) A -> M must satisfy: mu rho = Id and left
/// A-linearity for the cofree left action on M (x) A.
pub fn check_splitting(a: &Algebra, m: &Comodule, mu: &Matrix) -> Report {
    let n = a.dim;
    let mut report = Report::new("splitting of the coaction");
    report.run("shape", || {
        ((mu.rows, mu.cols) == (m.dim, m.dim * n), None)
    });
    if !report.passed() {
        return report;
    }
    report.run("mu rho = Id", || {
        (mu.mul(&m.coaction_matrix(n)) == Matrix::identity(a.field, m.dim), None)
    });
    report.run("left A-linearity", || {
        let left = induced_left_action(a, m);
        for j in 0..n {
            let lhs = left_action_matrix(&left, j).mul(mu);
            let rhs =
                mu.mul(&kron(&Matrix::identity(a.field, m.dim), &a.left_mult_matrix(&a.basis_el(j))));
            if lhs != rhs {
                return (false, Some(format!("fails on {}", a.basis[j])));
            }
        }
        (true, None)
    });
    report
}

/// Left A-linear splitting mu(m (x) a) = m_[0] E(m_[1]) a of the coaction.
#[allow(non_snake_case)]
pub fn splitting_muE(a: &Algebra, e: &CentralMap, m: &Comodule) -> Result<Matrix, Error> {
    let check = crate::separability::check_E(a, e);
    if !check.passed() {
        return Err(Error::InvalidInput(format!(
            "invalid central map: {}",
            check.first_failure().map(|c| c.name.clone()).unwrap_or_default()
        )));
    }
    let n = a.dim;
    let mut mu = Matrix::zeros(a.field, m.dim, m.dim * n);
    for i in 0..m.dim {
        for t in 0..n {
            // mu(f_i (x) e_t) = f_i_[0] (E(f_i_[1]) e_t)
            let mut img = vec![a.field.zero(); m.dim];
            for l in 0..m.dim {
                for (k, c) in m.coaction.fiber(i, l).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let ek = e.apply(&a.basis_el(k));
                    let scaled = a.multiply(&ek, &a.basis_el(t)).expect("dims");
                    for (p, w) in scaled.iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        let cw = c.mul(w);
                        for (s, v) in m.action.fiber(l, p).iter().enumerate() {
                            if !v.is_zero() {
                                img[s] = img[s].add(&cw.mul(v));
                            }
                        }
                    }
                }
            }
            for (s, v) in img.into_iter().enumerate() {
                if !v.is_zero() {
                    mu.set(s, i * n + t, v);
                }
            }
        }
    }
    let laws = check_splitting(a, m, &mu);
    if !laws.passed() {
        return Err(Error::CheckFailed(format!(
            "splitting laws fail: {}",
            laws.first_failure().map(|c| c.name.clone()).unwrap_or_default()
        )));
    }
    Ok(mu)
}

/// Basis of {m : rho(m) = m (x) 1}.
pub fn coinvariants(a: &Algebra, m: &Comodule) -> Vec<Vec<Scalar>> {
    let n = a.dim;
    let mut rows = Vec::with_capacity(m.dim * n);
    for p in 0..m.dim {
        for q in 0..n {
            let mut row: Vec<Scalar> = (0..m.dim).map(|i| m.coaction.at(i, p, q).clone()).collect();
            row[p] = row[p].sub(&a.unit[q]);
            rows.push(row);
        }
    }
    kernel_basis(&Matrix::from_rows(a.field, rows))
}

/// Verifies that V -> G(F(V)), v -> v (x) 1, and F(G(M)) -> M, m (x) a -> m a,
/// are isomorphisms. Over a field this is the descent equivalence for any
/// nonzero algebra.
pub fn check_descent_equivalence(a: &Algebra, v_dim: usize, m: &Comodule) -> Report {
    let n = a.dim;
    let mut report = Report::new("descent equivalence");
    report.run("unit V -> G(F(V)) is an isomorphism", || {
        let fv = cofree(a, v_dim);
        let coinv = coinvariants(a, &fv);
        if coinv.len() != v_dim {
            return (false, Some(format!("coinvariants of F(V) have dimension {}", coinv.len())));
        }
        // Express v_u (x) 1 in the coinvariant basis.
        let mut basis = Matrix::zeros(a.field, fv.dim, v_dim);
        for (c, vec) in coinv.iter().enumerate() {
            for (r, v) in vec.iter().enumerate() {
                if !v.is_zero() {
                    basis.set(r, c, v.clone());
                }
            }
        }
        let mut unit_map = Matrix::zeros(a.field, fv.dim, v_dim);
        for u in 0..v_dim {
            for (w, uv) in a.unit.iter().enumerate() {
                if !uv.is_zero() {
                    unit_map.set(u * n + w, u, uv.clone());
                }
            }
        }
        // Solve basis * X = unit_map column by column; X must be invertible.
        let mut x = Matrix::zeros(a.field, v_dim, v_dim);
        for u in 0..v_dim {
            match crate::linalg::solve_linear(&basis, &unit_map.col(u)) {
                Ok(crate::linalg::SolveOutcome::Solution { particular, .. }) => {
                    for (r, v) in particular.into_iter().enumerate() {
                        if !v.is_zero() {
                            x.set(r, u, v);
                        }
                    }
                }
                _ => return (false, Some("v (x) 1 is not coinvariant".into())),
            }
        }
        (x.invert().is_some(), None)
    });
    report.run("counit F(G(M)) -> M is an isomorphism", || {
        let coinv = coinvariants(a, m);
        if coinv.len() * n != m.dim {
            return (
                false,
                Some(format!("dim G(M) (x) A = {} but dim M = {}", coinv.len() * n, m.dim)),
            );
        }
        let mut counit = Matrix::zeros(a.field, m.dim, coinv.len() * n);
        for (c, g) in coinv.iter().enumerate() {
            for t in 0..n {
                let img = m.act(g, &a.basis_el(t));
                for (r, v) in img.into_iter().enumerate() {
                    if !v.is_zero() {
                        counit.set(r, c * n + t, v);
                    }
                }
            }
        }
        if counit.rank() != m.dim {
            return (false, Some("counit is not surjective".into()));
        }
        // The counit is a comodule morphism from the cofree object on G(M).
        let fgm = cofree(a, coinv.len());
        (check_morphism(a, &fgm, m, &counit).passed(), None)
    });
    report
}

/// Membership of a vector in the span of the coinvariants.
pub fn is_coinvariant(a: &Algebra, m: &Comodule, v: &[Scalar]) -> bool {
    let n = a.dim;
    let rho = m.coact(v, n);
    let mut expected = vec![a.field.zero(); m.dim * n];
    for (l, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, u) in a.unit.iter().enumerate() {
            if !u.is_zero() {
                expected[l * n + k] = c.mul(u);
            }
        }
    }
    rho == expected
}

/// Coaction viewed as a morphism M -> F(M) (used in tests and the braiding
/// machinery, where it is composed with other morphisms).
pub fn rho_as_morphism(a: &Algebra, m: &Comodule) -> ComoduleMorphism {
    m.coaction_matrix(a.dim)
}

/// Span check helper: every vector of `vectors` lies in span(`basis`).
pub fn spans_include(field: crate::field::FieldSpec, basis: &[Vec<Scalar>], vectors: &[Vec<Scalar>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let ncols = vectors[0].len();
    let mut reducer = Reducer::new(field, ncols);
    for b in basis {
        reducer.add_dense(b);
    }
    vectors.iter().all(|v| reducer.reduce(dense_to_sparse(v)).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        cyclic_group_algebra, matrix_algebra, quaternion_algebra, truncated_poly_algebra,
    };
    use crate::field::FieldSpec;
    use crate::separability::{
        build_E_from_separability, build_E_unit_projection, find_separability_element,
    };

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn m2() -> Algebra {
        matrix_algebra(q(), 2)
    }

    #[test]
    fn regular_and_cofree_pass_axioms() {
        for a in [
            m2(),
            quaternion_algebra(q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap(),
            cyclic_group_algebra(q(), 3),
            truncated_poly_algebra(q(), 2),
        ] {
            assert!(check_comodule(&a, &regular_comodule(&a)).passed());
            assert!(check_comodule(&a, &cofree(&a, 2)).passed());
        }
    }

    #[test]
    fn zero_coaction_fails_counit_axiom() {
        let a = m2();
        let mut m = regular_comodule(&a);
        m.coaction = Tensor3::zeros(q(), 4, 4, 4);
        let report = check_comodule(&a, &m);
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().name, "counit: m_[0] m_[1] = m");
    }

    #[test]
    fn coring_maps() {
        let a = m2();
        // delta(1 (x) 1) = 1 (x) 1 (x) 1
        let mut one_one = Matrix::zeros(q(), 4, 4);
        for i in 0..4 {
            for j in 0..4 {
                let v = a.unit[i].mul(&a.unit[j]);
                if !v.is_zero() {
                    one_one.set(i, j, v);
                }
            }
        }
        let delta = coring_delta(&a, &one_one);
        for p in 0..4 {
            for r in 0..4 {
                for (s, v) in delta.fiber(p, r).iter().enumerate() {
                    let expect = a.unit[p].mul(&a.unit[s]).mul(&a.unit[r]);
                    assert_eq!(*v, expect, "component ({p},{s},{r})");
                }
            }
        }
        // counit(E11 (x) E12) = E12
        let mut x = Matrix::zeros(q(), 4, 4);
        x.set(0, 1, q().one());
        assert_eq!(coring_counit(&a, &x), a.basis_el(1));
        // counit(a (x) 1) = a for a = E21
        let mut y = Matrix::zeros(q(), 4, 4);
        y.set(2, 0, q().one());
        y.set(2, 3, q().one());
        assert_eq!(coring_counit(&a, &y), a.basis_el(2));
    }

    #[test]
    fn rho_is_a_morphism_into_the_cofree_object() {
        let a = m2();
        for m in [regular_comodule(&a), cofree(&a, 2)] {
            let f = rho_as_morphism(&a, &m);
            let target = cofree(&a, m.dim);
            assert!(check_morphism(&a, &m, &target, &f).passed());
        }
    }

    #[test]
    fn left_multiplication_is_a_morphism_and_flip_is_not() {
        let a = m2();
        let aa = cofree(&a, a.dim);
        // f(x (x) y) = (E12 x) (x) y
        let f = kron(&a.left_mult_matrix(&a.basis_el(1)), &Matrix::identity(q(), 4));
        assert!(check_morphism(&a, &aa, &aa, &f).passed());
        // Flip x (x) y -> y (x) x fails colinearity on a noncommutative algebra.
        let mut flip = Matrix::zeros(q(), 16, 16);
        for x in 0..4 {
            for y in 0..4 {
                flip.set(y * 4 + x, x * 4 + y, q().one());
            }
        }
        let report = check_morphism(&a, &aa, &aa, &flip);
        assert!(!report.passed());
    }

    #[test]
    fn induced_left_action_on_regular_is_left_multiplication() {
        let a = m2();
        let m = regular_comodule(&a);
        let left = induced_left_action(&a, &m);
        assert_eq!(left, a.mult);
        assert!(check_left_action(&a, &m, &left).passed());
    }

    #[test]
    fn induced_left_action_on_cofree_touches_the_algebra_leg() {
        let a = m2();
        let m = cofree(&a, 2);
        let left = induced_left_action(&a, &m);
        // e_j (v_u (x) e_b) = v_u (x) (e_j e_b)
        for j in 0..4 {
            for u in 0..2 {
                for b in 0..4 {
                    for l in 0..8 {
                        let expect = if l / 4 == u {
                            a.mult.at(j, b, l % 4).clone()
                        } else {
                            q().zero()
                        };
                        assert_eq!(*left.at(j, u * 4 + b, l), expect);
                    }
                }
            }
        }
        assert!(check_left_action(&a, &m, &left).passed());
        assert!(check_rho_left_linear(&a, &m).passed());
    }

    #[test]
    fn rho_left_linear_on_regular_comodules() {
        for a in [m2(), quaternion_algebra(q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap()] {
            assert!(check_rho_left_linear(&a, &regular_comodule(&a)).passed());
        }
    }

    #[test]
    fn splitting_from_separability_on_m2() {
        let a = m2();
        let e = find_separability_element(&a).unwrap();
        let central = build_E_from_separability(&a, &e).unwrap();
        let m = regular_comodule(&a);
        let mu = splitting_muE(&a, &central, &m).unwrap();
        assert!(check_splitting(&a, &m, &mu).passed());
        // mu(x (x) y) = E(x) y on the regular comodule.
        let x = a.basis_el(0);
        let y = a.basis_el(1);
        let mut xy = vec![q().zero(); 16];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                xy[i * 4 + j] = xi.mul(yj);
            }
        }
        let img = mu.apply(&xy);
        // E(E11) = 1, so mu(E11 (x) E12) = E12.
        assert_eq!(img, a.basis_el(1));
    }

    #[test]
    fn splitting_with_unit_projection_on_every_test_algebra() {
        for a in [
            m2(),
            quaternion_algebra(q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap(),
            cyclic_group_algebra(q(), 2),
            truncated_poly_algebra(q(), 2),
        ] {
            let central = build_E_unit_projection(&a);
            for m in [regular_comodule(&a), cofree(&a, 2)] {
                let mu = splitting_muE(&a, &central, &m).unwrap();
                assert!(check_splitting(&a, &m, &mu).passed());
            }
        }
    }

    #[test]
    fn plain_multiplication_is_not_left_linear_on_m2() {
        let a = m2();
        let m = regular_comodule(&a);
        let mu = m.action_full(4);
        let report = check_splitting(&a, &m, &mu);
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().name, "left A-linearity");
    }

    #[test]
    fn coinvariants_of_regular_and_cofree() {
        for a in [m2(), cyclic_group_algebra(q(), 3), truncated_poly_algebra(q(), 2)] {
            let reg = regular_comodule(&a);
            let coinv = coinvariants(&a, &reg);
            assert_eq!(coinv.len(), 1);
            assert!(is_coinvariant(&a, &reg, &coinv[0]));
            // The span is exactly the line through 1_A.
            assert!(spans_include(q(), &[a.unit.clone()], &coinv));
            for v in [2, 3] {
                assert_eq!(coinvariants(&a, &cofree(&a, v)).len(), v);
            }
        }
    }

    #[test]
    fn descent_equivalence_checks() {
        let a = m2();
        assert!(check_descent_equivalence(&a, 3, &regular_comodule(&a)).passed());
        assert!(check_descent_equivalence(&a, 1, &cofree(&a, 2)).passed());
        let h = quaternion_algebra(q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap();
        assert!(check_descent_equivalence(&h, 2, &regular_comodule(&h)).passed());
        // One-dimensional algebra: everything is trivially an equivalence.
        let k = truncated_poly_algebra(q(), 1);
        assert!(check_descent_equivalence(&k, 2, &regular_comodule(&k)).passed());
    }

    #[test]
    fn comodule_axioms_over_f7() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = cyclic_group_algebra(f7, 2);
        assert!(check_comodule(&a, &regular_comodule(&a)).passed());
        assert!(check_comodule(&a, &cofree(&a, 3)).passed());
        assert_eq!(coinvariants(&a, &cofree(&a, 3)).len(), 3);
    }
}
