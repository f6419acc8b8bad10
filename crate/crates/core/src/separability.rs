//! Separability elements of an algebra and unitary central maps E: A -> Z(A).
//!
//! A separability element e = e1 (x) e2 in A (x) A satisfies
//! (a (x) 1) e = e (1 (x) a) for all a and e1 e2 = 1. Any such e yields the
//! central projection E(a) = e1 a e2. When no separability element exists,
//! E can still be built from a basis extension over a field or from an
//! augmentation character.

use crate::algebra::{center, Algebra};
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{solve_linear, Matrix, Reducer, SolveOutcome};
use crate::report::Report;

/// Element of A (x) A; entry (r, c) is the coefficient of b_r (x) b_c.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityElement {
    pub matrix: Matrix,
}

/// A k-linear map A -> A stored as a matrix on coordinates, intended to land
/// in the center and to fix the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralMap {
    pub matrix: Matrix,
}

impl CentralMap {
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(x)
    }
}

/// Product in A (x) A^op: (x (x) y)(x' (x) y') = xx' (x) y'y.
fn mul_aaop(a: &Algebra, e: &Matrix, f: &Matrix) -> Matrix {
    let n = a.dim;
    let mut out = Matrix::zeros(a.field, n, n);
    for i in 0..n {
        for j in 0..n {
            let eij = e.at(i, j);
            if eij.is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let c = eij.mul(f.at(k, l));
                    if c.is_zero() {
                        continue;
                    }
                    // b_i b_k in the first leg, b_l b_j in the second.
                    for p in 0..n {
                        let mp = a.mult.at(i, k, p);
                        if mp.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let mq = a.mult.at(l, j, q);
                            if mq.is_zero() {
                                continue;
                            }
                            let add = c.mul(mp).mul(mq);
                            out.set(p, q, out.at(p, q).add(&add));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Image of e under the multiplication map A (x) A -> A.
fn mult_image(a: &Algebra, e: &Matrix) -> Vec<Scalar> {
    let mut out = a.zero_el();
    for i in 0..a.dim {
        for j in 0..a.dim {
            let c = e.at(i, j);
            if c.is_zero() {
                continue;
            }
            for k in 0..a.dim {
                let m = a.mult.at(i, j, k);
                if !m.is_zero() {
                    out[k] = out[k].add(&c.mul(m));
                }
            }
        }
    }
    out
}

/// Checks both defining conditions of a separability element and the derived
/// idempotency in A (x) A^op.
pub fn check_separability_element(a: &Algebra, e: &SeparabilityElement) -> Report {
    let mut report = Report::new("separability element");
    let n = a.dim;
    report.run("shape", || {
        ((e.matrix.rows, e.matrix.cols) == (n, n), None)
    });
    if !report.passed() {
        return report;
    }
    report.run("(a (x) 1) e = e (1 (x) a) on basis", || {
        for t in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let mut lhs = a.field.zero();
                    for i in 0..n {
                        lhs = lhs.add(&a.mult.at(t, i, p).mul(e.matrix.at(i, q)));
                    }
                    let mut rhs = a.field.zero();
                    for j in 0..n {
                        rhs = rhs.add(&a.mult.at(j, t, q).mul(e.matrix.at(p, j)));
                    }
                    if lhs != rhs {
                        return (
                            false,
                            Some(format!(
                                "fails for a = {} at component {} (x) {}",
                                a.basis[t], a.basis[p], a.basis[q]
                            )),
                        );
                    }
                }
            }
        }
        (true, None)
    });
    report.run("e1 e2 = 1", || {
        let img = mult_image(a, &e.matrix);
        if img == a.unit {
            (true, None)
        } else {
            (false, Some(format!("multiplication image is {}", a.el_to_string(&img))))
        }
    });
    report.run("idempotent in A (x) A^op", || {
        let sq = mul_aaop(a, &e.matrix, &e.matrix);
        (sq == e.matrix, None)
    });
    report
}

/// Solves the linear system {(a (x) 1) e = e (1 (x) a) for basis a; e1 e2 = 1}
/// and returns the particular solution with free coordinates zeroed, or None
/// when the system is infeasible. Idempotency of the result is a consequence
/// of the two conditions and is asserted, not imposed.
pub fn find_separability_element(a: &Algebra) -> Option<SeparabilityElement> {
    let n = a.dim;
    let nn = n * n;
    // Unknowns e_{ij} flattened as i*n + j.
    let mut rows = Vec::with_capacity(n * nn + n);
    let mut rhs = Vec::with_capacity(n * nn + n);
    for t in 0..n {
        for p in 0..n {
            for q in 0..n {
                let mut row = vec![a.field.zero(); nn];
                for i in 0..n {
                    let c = a.mult.at(t, i, p);
                    if !c.is_zero() {
                        row[i * n + q] = row[i * n + q].add(c);
                    }
                }
                for j in 0..n {
                    let c = a.mult.at(j, t, q);
                    if !c.is_zero() {
                        row[p * n + j] = row[p * n + j].sub(c);
                    }
                }
                rows.push(row);
                rhs.push(a.field.zero());
            }
        }
    }
    for k in 0..n {
        let row: Vec<Scalar> = (0..nn).map(|x| a.mult.at(x / n, x % n, k).clone()).collect();
        rows.push(row);
        rhs.push(a.unit[k].clone());
    }
    let system = Matrix::from_rows(a.field, rows);
    match solve_linear(&system, &rhs).expect("system dimensions agree") {
        SolveOutcome::Infeasible => None,
        SolveOutcome::Solution { particular, .. } => {
            let mut m = Matrix::zeros(a.field, n, n);
            for i in 0..n {
                for j in 0..n {
                    let v = particular[i * n + j].clone();
                    if !v.is_zero() {
                        m.set(i, j, v);
                    }
                }
            }
            let e = SeparabilityElement { matrix: m };
            assert!(
                mul_aaop(a, &e.matrix, &e.matrix) == e.matrix,
                "separability element solving the linear system must be idempotent"
            );
            Some(e)
        }
    }
}

/// E(a) = e1 a e2 for a separability element e. Validates e first.
#[allow(non_snake_case)]
pub fn build_E_from_separability(
    a: &Algebra,
    e: &SeparabilityElement,
) -> Result<CentralMap, Error> {
    let report = check_separability_element(a, e);
    if !report.passed() {
        return Err(Error::InvalidInput(format!(
            "invalid separability element: {}",
            report.first_failure().map(|c| c.name.clone()).unwrap_or_default()
        )));
    }
    let n = a.dim;
    let mut m = Matrix::zeros(a.field, n, n);
    for t in 0..n {
        let mut img = a.zero_el();
        for i in 0..n {
            for j in 0..n {
                let c = e.matrix.at(i, j);
                if c.is_zero() {
                    continue;
                }
                let bit = a.multiply(&a.basis_el(i), &a.basis_el(t)).expect("dims");
                let full = a.multiply(&bit, &a.basis_el(j)).expect("dims");
                for (k, v) in full.into_iter().enumerate() {
                    if !v.is_zero() {
                        img[k] = img[k].add(&c.mul(&v));
                    }
                }
            }
        }
        for (k, v) in img.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(k, t, v);
            }
        }
    }
    Ok(CentralMap { matrix: m })
}

/// E projecting onto the unit coefficient in the basis {1_A} extended
/// greedily by standard basis vectors.
#[allow(non_snake_case)]
pub fn build_E_unit_projection(a: &Algebra) -> CentralMap {
    let n = a.dim;
    let mut chosen = Matrix::zeros(a.field, n, n);
    let mut reducer = Reducer::new(a.field, n);
    assert!(reducer.add_dense(&a.unit), "unit vector must be nonzero");
    for (k, v) in a.unit.iter().enumerate() {
        if !v.is_zero() {
            chosen.set(k, 0, v.clone());
        }
    }
    let mut col = 1;
    for i in 0..n {
        if col == n {
            break;
        }
        if reducer.add_dense(&a.basis_el(i)) {
            chosen.set(i, col, a.field.one());
            col += 1;
        }
    }
    assert!(col == n, "basis extension must fill the space over a field");
    let inv = chosen.invert().expect("chosen columns form a basis");
    // E = unit * (first row of the change of basis).
    let mut m = Matrix::zeros(a.field, n, n);
    for j in 0..n {
        let c = inv.at(0, j);
        if c.is_zero() {
            continue;
        }
        for (k, v) in a.unit.iter().enumerate() {
            if !v.is_zero() {
                m.set(k, j, c.mul(v));
            }
        }
    }
    CentralMap { matrix: m }
}

/// E(a) = eps(a) 1_A for an augmentation character eps, given by its values
/// on the basis. Rejects vectors that are not unital algebra morphisms to k.
#[allow(non_snake_case)]
pub fn build_E_from_augmentation(a: &Algebra, eps: &[Scalar]) -> Result<CentralMap, Error> {
    let n = a.dim;
    if eps.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "character of length {} on a {n}-dimensional algebra",
            eps.len()
        )));
    }
    if eps.iter().any(|v| !a.field.contains(v)) {
        return Err(Error::InvalidScalar("character entries from a different field".into()));
    }
    let on_unit: Scalar = a
        .unit
        .iter()
        .zip(eps)
        .fold(a.field.zero(), |acc, (u, e)| acc.add(&u.mul(e)));
    if !on_unit.is_one() {
        return Err(Error::InvalidInput("character does not send 1_A to 1".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let mut prod = a.field.zero();
            for k in 0..n {
                prod = prod.add(&a.mult.at(i, j, k).mul(&eps[k]));
            }
            if prod != eps[i].mul(&eps[j]) {
                return Err(Error::InvalidInput(format!(
                    "character is not multiplicative on {} * {}",
                    a.basis[i], a.basis[j]
                )));
            }
        }
    }
    let mut m = Matrix::zeros(a.field, n, n);
    for j in 0..n {
        if eps[j].is_zero() {
            continue;
        }
        for (k, v) in a.unit.iter().enumerate() {
            if !v.is_zero() {
                m.set(k, j, eps[j].mul(v));
            }
        }
    }
    Ok(CentralMap { matrix: m })
}

/// Verifies E(1_A) = 1_A and that E maps every basis element into the span
/// of the center.
#[allow(non_snake_case)]
pub fn check_E(a: &Algebra, e: &CentralMap) -> Report {
    let mut report = Report::new("central map E");
    report.run("shape", || {
        ((e.matrix.rows, e.matrix.cols) == (a.dim, a.dim), None)
    });
    if !report.passed() {
        return report;
    }
    report.run("E(1_A) = 1_A", || {
        let img = e.apply(&a.unit);
        if img == a.unit {
            (true, None)
        } else {
            (false, Some(format!("E(1_A) = {}", a.el_to_string(&img))))
        }
    });
    report.run("image contained in the center", || {
        let mut span = Reducer::new(a.field, a.dim);
        for z in center(a) {
            span.add_dense(&z);
        }
        for t in 0..a.dim {
            let img = e.apply(&a.basis_el(t));
            if !span.reduce(crate::linalg::dense_to_sparse(&img)).is_empty() {
                return (
                    false,
                    Some(format!("E({}) = {} is not central", a.basis[t], a.el_to_string(&img))),
                );
            }
        }
        (true, None)
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        cyclic_group_algebra, is_central, matrix_algebra, product_algebra, quaternion_algebra,
        truncated_poly_algebra,
    };
    use crate::field::FieldSpec;
    use crate::linalg::vec_is_zero;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn m2_separability_element_is_deterministic() {
        let a = matrix_algebra(q(), 2);
        let e = find_separability_element(&a).expect("M2 is separable");
        // E11 (x) E11 + E21 (x) E12, i.e. sum_i E_{i1} (x) E_{1i}.
        let mut expected = Matrix::zeros(q(), 4, 4);
        expected.set(0, 0, q().one());
        expected.set(2, 1, q().one());
        assert_eq!(e.matrix, expected);
        assert!(check_separability_element(&a, &e).passed());
    }

    #[test]
    fn group_algebra_separability_elements_are_the_known_ones() {
        let c2 = cyclic_group_algebra(q(), 2);
        let e = find_separability_element(&c2).expect("Q[C2] is separable");
        let half = q().parse("1/2").unwrap();
        let mut expected = Matrix::zeros(q(), 2, 2);
        expected.set(0, 0, half.clone());
        expected.set(1, 1, half);
        assert_eq!(e.matrix, expected);

        let c3 = cyclic_group_algebra(q(), 3);
        let e = find_separability_element(&c3).expect("Q[C3] is separable");
        let third = q().parse("1/3").unwrap();
        let mut expected = Matrix::zeros(q(), 3, 3);
        expected.set(0, 0, third.clone());
        expected.set(1, 2, third.clone());
        expected.set(2, 1, third);
        assert_eq!(e.matrix, expected);
    }

    #[test]
    fn product_of_fields_separability() {
        let k = truncated_poly_algebra(q(), 1);
        let a = product_algebra(&k, &k).unwrap();
        let e = find_separability_element(&a).expect("k x k is separable");
        let mut expected = Matrix::zeros(q(), 2, 2);
        expected.set(0, 0, q().one());
        expected.set(1, 1, q().one());
        assert_eq!(e.matrix, expected);
    }

    #[test]
    fn quaternions_are_separable() {
        let a = quaternion_algebra(q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap();
        let e = find_separability_element(&a).expect("H is separable");
        assert!(check_separability_element(&a, &e).passed());
        let central = build_E_from_separability(&a, &e).unwrap();
        assert!(check_E(&a, &central).passed());
    }

    #[test]
    fn dual_numbers_are_not_separable() {
        let a = truncated_poly_algebra(q(), 2);
        assert!(find_separability_element(&a).is_none());
    }

    #[test]
    fn e_from_separability_on_m2_projects_first_column() {
        let a = matrix_algebra(q(), 2);
        let e = find_separability_element(&a).unwrap();
        let central = build_E_from_separability(&a, &e).unwrap();
        assert!(check_E(&a, &central).passed());
        // E(a) = a_{11} 1 for e = sum_i E_{i1} (x) E_{1i}.
        assert_eq!(central.apply(&a.basis_el(0)), a.unit);
        assert!(vec_is_zero(&central.apply(&a.basis_el(1))));
        assert!(vec_is_zero(&central.apply(&a.basis_el(2))));
        assert!(vec_is_zero(&central.apply(&a.basis_el(3))));
    }

    #[test]
    fn e_from_separability_on_c2_is_identity() {
        let a = cyclic_group_algebra(q(), 2);
        let e = find_separability_element(&a).unwrap();
        let central = build_E_from_separability(&a, &e).unwrap();
        // Commutative algebra: E(g) = g.
        assert_eq!(central.apply(&a.basis_el(1)), a.basis_el(1));
        assert!(check_E(&a, &central).passed());
    }

    #[test]
    fn unit_projection_on_m2_uses_greedy_basis() {
        let a = matrix_algebra(q(), 2);
        let central = build_E_unit_projection(&a);
        assert!(check_E(&a, &central).passed());
        // Extended basis is {1, E11, E12, E21}; E22 = 1 - E11 has unit
        // coefficient 1, the others 0.
        assert_eq!(central.apply(&a.basis_el(3)), a.unit);
        assert!(vec_is_zero(&central.apply(&a.basis_el(0))));
        assert!(vec_is_zero(&central.apply(&a.basis_el(1))));
        assert!(vec_is_zero(&central.apply(&a.basis_el(2))));
    }

    #[test]
    fn unit_projection_on_dual_numbers_drops_nilpotents() {
        let a = truncated_poly_algebra(q(), 2);
        let central = build_E_unit_projection(&a);
        assert!(check_E(&a, &central).passed());
        assert_eq!(central.apply(&a.unit), a.unit);
        assert!(vec_is_zero(&central.apply(&a.basis_el(1))));
    }

    #[test]
    fn augmentation_builds_e_and_rejects_non_characters() {
        let a = cyclic_group_algebra(q(), 2);
        let central = build_E_from_augmentation(&a, &[q().one(), q().one()]).unwrap();
        assert!(check_E(&a, &central).passed());
        assert_eq!(central.apply(&a.basis_el(1)), a.unit);
        // g -> -1 is the sign character.
        let sign = build_E_from_augmentation(&a, &[q().one(), q().from_i64(-1)]).unwrap();
        let minus_unit: Vec<Scalar> = a.unit.iter().map(|v| v.neg()).collect();
        assert_eq!(sign.apply(&a.basis_el(1)), minus_unit);
        // g -> 2 is not multiplicative; 1 -> 0 is not unital.
        assert!(build_E_from_augmentation(&a, &[q().one(), q().from_i64(2)]).is_err());
        assert!(build_E_from_augmentation(&a, &[q().zero(), q().one()]).is_err());
    }

    #[test]
    fn check_e_rejects_identity_on_m2() {
        let a = matrix_algebra(q(), 2);
        let id = CentralMap { matrix: Matrix::identity(q(), 4) };
        let report = check_E(&a, &id);
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().name, "image contained in the center");
    }

    #[test]
    fn check_e_accepts_identity_on_commutative() {
        let a = cyclic_group_algebra(q(), 3);
        let id = CentralMap { matrix: Matrix::identity(q(), 3) };
        assert!(check_E(&a, &id).passed());
        assert!(is_central(&a, &a.basis_el(1)));
    }

    #[test]
    fn separability_over_f7() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = cyclic_group_algebra(f7, 2);
        let e = find_separability_element(&a).expect("2 is invertible mod 7");
        assert!(check_separability_element(&a, &e).passed());
        let dual = truncated_poly_algebra(f7, 2);
        assert!(find_separability_element(&dual).is_none());
    }
}
