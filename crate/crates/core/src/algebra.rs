//! Finite-dimensional unital associative algebras given by structure
//! constants, with builders for the standard examples: matrix algebras,
//! group algebras, quaternion algebras, truncated polynomial algebras and
//! finite products.

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{kernel_basis, vec_add_scaled, vec_is_zero, vec_sub, Matrix, Tensor3};
use crate::report::Report;

/// An algebra with basis `e_0 .. e_{n-1}`, multiplication tensor
/// `e_i e_j = sum_k mult[i][j][k] e_k` and a distinguished unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra {
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Scalar>,
    pub mult: Tensor3,
}

impl Algebra {
    pub fn new(
        field: FieldSpec,
        basis: Vec<String>,
        unit: Vec<Scalar>,
        mult: Tensor3,
    ) -> Result<Algebra, Error> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::InvalidInput("algebra must have positive dimension".into()));
        }
        if unit.len() != dim || mult.d0 != dim || mult.d1 != dim || mult.d2 != dim {
            return Err(Error::DimensionMismatch(format!(
                "algebra of dimension {dim} with unit of length {} and mult tensor {}x{}x{}",
                unit.len(),
                mult.d0,
                mult.d1,
                mult.d2
            )));
        }
        Ok(Algebra { field, dim, basis, unit, mult })
    }

    pub fn zero_el(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_el(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_el();
        v[i] = self.field.one();
        v
    }

    pub fn unit_el(&self) -> Vec<Scalar> {
        self.unit.clone()
    }

    /// Product of two coefficient vectors.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "elements of length {} and {} in a {}-dimensional algebra",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        let mut out = self.zero_el();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].mul(&y[j]);
                vec_add_scaled(&mut out, &c, self.mult.fiber(i, j));
            }
        }
        Ok(out)
    }

    /// Matrix of left multiplication by `a`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.multiply(a, &self.basis_el(j)).expect("dimensions agree");
            for (k, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(k, j, v);
                }
            }
        }
        m
    }

    /// Matrix of right multiplication by `a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.multiply(&self.basis_el(j), a).expect("dimensions agree");
            for (k, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(k, j, v);
                }
            }
        }
        m
    }

    pub fn el_to_string(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.basis[i].clone()
                } else {
                    format!("{c}*{}", self.basis[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Verifies associativity and the two-sided unit law on all basis triples.
pub fn check_algebra(a: &Algebra) -> Report {
    let mut report = Report::new(format!("algebra of dimension {} over {}", a.dim, a.field));
    report.run("associativity on basis triples", || {
        for i in 0..a.dim {
            for j in 0..a.dim {
                let ij = a.mult.fiber(i, j).to_vec();
                for l in 0..a.dim {
                    let jl = a.mult.fiber(j, l).to_vec();
                    let lhs = a.multiply(&ij, &a.basis_el(l)).expect("dims");
                    let rhs = a.multiply(&a.basis_el(i), &jl).expect("dims");
                    if lhs != rhs {
                        return (
                            false,
                            Some(format!(
                                "({} {}) {} != {} ({} {})",
                                a.basis[i], a.basis[j], a.basis[l], a.basis[i], a.basis[j], a.basis[l]
                            )),
                        );
                    }
                }
            }
        }
        (true, None)
    });
    report.run("unit law", || {
        for i in 0..a.dim {
            let e = a.basis_el(i);
            let left = a.multiply(&a.unit, &e).expect("dims");
            let right = a.multiply(&e, &a.unit).expect("dims");
            if left != e || right != e {
                return (false, Some(format!("unit fails on {}", a.basis[i])));
            }
        }
        (true, None)
    });
    report
}

/// Basis of the center, computed as the kernel of the stacked commutator
/// system `z e_j - e_j z = 0` over all basis elements `e_j`.
pub fn center(a: &Algebra) -> Vec<Vec<Scalar>> {
    let n = a.dim;
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            // Row over unknown coordinates i of z.
            let row: Vec<Scalar> = (0..n)
                .map(|i| a.mult.at(i, j, k).sub(a.mult.at(j, i, k)))
                .collect();
            rows.push(row);
        }
    }
    kernel_basis(&Matrix::from_rows(a.field, rows))
}

/// True when `z` commutes with every basis element (independent of `center`).
pub fn is_central(a: &Algebra, z: &[Scalar]) -> bool {
    (0..a.dim).all(|j| {
        let e = a.basis_el(j);
        let ze = a.multiply(z, &e).expect("dims");
        let ez = a.multiply(&e, z).expect("dims");
        vec_is_zero(&vec_sub(&ze, &ez))
    })
}

/// The full matrix algebra M_n(k); basis `E_{ij}` in row-major order.
pub fn matrix_algebra(field: FieldSpec, n: usize) -> Algebra {
    assert!(n > 0, "matrix algebra needs n > 0");
    let dim = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut mult = Tensor3::zeros(field, dim, dim, dim);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // E_ij E_jl = E_il
                mult.set(idx(i, j), idx(j, l), idx(i, l), field.one());
            }
        }
    }
    let mut unit = vec![field.zero(); dim];
    for i in 0..n {
        unit[idx(i, i)] = field.one();
    }
    let basis = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
        .collect();
    Algebra { field, dim, basis, unit, mult }
}

/// Group algebra k[G] from a Cayley table `table[i][j] = index of g_i g_j`.
pub fn group_algebra(
    field: FieldSpec,
    table: &[Vec<usize>],
    labels: Vec<String>,
) -> Result<Algebra, Error> {
    let n = table.len();
    if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("Cayley table must be square and labeled".into()));
    }
    if table.iter().flatten().any(|&v| v >= n) {
        return Err(Error::InvalidInput("Cayley table entry out of range".into()));
    }
    // Latin square: rows and columns are permutations.
    for i in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for j in 0..n {
            seen_row[table[i][j]] = true;
            seen_col[table[j][i]] = true;
        }
        if seen_row.contains(&false) || seen_col.contains(&false) {
            return Err(Error::InvalidInput("Cayley table is not a Latin square".into()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if table[table[i][j]][l] != table[i][table[j][l]] {
                    return Err(Error::InvalidInput(format!(
                        "Cayley table is not associative at ({i},{j},{l})"
                    )));
                }
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
        .ok_or_else(|| Error::InvalidInput("Cayley table has no identity".into()))?;
    let mut mult = Tensor3::zeros(field, n, n, n);
    for i in 0..n {
        for j in 0..n {
            mult.set(i, j, table[i][j], field.one());
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[identity] = field.one();
    Ok(Algebra { field, dim: n, basis: labels, unit, mult })
}

/// Group algebra of the cyclic group C_m.
pub fn cyclic_group_algebra(field: FieldSpec, m: usize) -> Algebra {
    let table: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
    let labels = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    group_algebra(field, &table, labels).expect("cyclic Cayley table is valid")
}

/// Quaternion algebra (a, b): basis 1, i, j, k with i^2 = a, j^2 = b, ij = k = -ji.
pub fn quaternion_algebra(field: FieldSpec, a: &Scalar, b: &Scalar) -> Result<Algebra, Error> {
    if field.characteristic() == 2 {
        return Err(Error::InvalidInput("quaternion algebra needs characteristic != 2".into()));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("quaternion parameters must be invertible".into()));
    }
    let one = field.one();
    let neg = |s: &Scalar| s.neg();
    let ab = a.mul(b);
    let mut mult = Tensor3::zeros(field, 4, 4, 4);
    let mut put = |i: usize, j: usize, k: usize, v: Scalar| mult.set(i, j, k, v);
    for t in 0..4 {
        put(0, t, t, one.clone()); // 1 x = x
        if t != 0 {
            put(t, 0, t, one.clone()); // x 1 = x
        }
    }
    put(1, 1, 0, a.clone()); // ii = a
    put(1, 2, 3, one.clone()); // ij = k
    put(1, 3, 2, a.clone()); // ik = a j
    put(2, 1, 3, neg(&one)); // ji = -k
    put(2, 2, 0, b.clone()); // jj = b
    put(2, 3, 1, neg(b)); // jk = -b i
    put(3, 1, 2, neg(a)); // ki = -a j
    put(3, 2, 1, b.clone()); // kj = b i
    put(3, 3, 0, neg(&ab)); // kk = -ab
    let mut unit = vec![field.zero(); 4];
    unit[0] = one;
    Algebra::new(
        field,
        vec!["1".into(), "i".into(), "j".into(), "k".into()],
        unit,
        mult,
    )
}

/// Truncated polynomial algebra k[x]/(x^d); `d = 1` is the base field,
/// `d = 2` the dual numbers.
pub fn truncated_poly_algebra(field: FieldSpec, d: usize) -> Algebra {
    assert!(d > 0, "truncation degree must be positive");
    let mut mult = Tensor3::zeros(field, d, d, d);
    for i in 0..d {
        for j in 0..d {
            if i + j < d {
                mult.set(i, j, i + j, field.one());
            }
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    let basis = (0..d)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    Algebra { field, dim: d, basis, unit, mult }
}

/// Direct product A x B with blockwise multiplication.
pub fn product_algebra(a: &Algebra, b: &Algebra) -> Result<Algebra, Error> {
    if a.field != b.field {
        return Err(Error::InvalidField("product factors over different fields".into()));
    }
    let dim = a.dim + b.dim;
    let mut mult = Tensor3::zeros(a.field, dim, dim, dim);
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let v = a.mult.at(i, j, k);
                if !v.is_zero() {
                    mult.set(i, j, k, v.clone());
                }
            }
        }
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            for k in 0..b.dim {
                let v = b.mult.at(i, j, k);
                if !v.is_zero() {
                    mult.set(a.dim + i, a.dim + j, a.dim + k, v.clone());
                }
            }
        }
    }
    let mut unit = Vec::with_capacity(dim);
    unit.extend(a.unit.iter().cloned());
    unit.extend(b.unit.iter().cloned());
    let mut basis: Vec<String> = a.basis.iter().map(|l| format!("({l},0)")).collect();
    basis.extend(b.basis.iter().map(|l| format!("(0,{l})")));
    Algebra::new(a.field, basis, unit, mult)
}

/// Named builtin algebras for the CLI and tests.
///
/// Accepted names: `q`, `dual-numbers`, `prod2`, `m2`, `m<n>`,
/// `group:c<m>`, `quaternion:<a>,<b>`, `truncpoly:<d>`.
pub fn builtin(field: FieldSpec, name: &str) -> Result<Algebra, Error> {
    let bad = |n: &str| Error::InvalidInput(format!("unknown builtin algebra: {n}"));
    if name == "q" {
        return Ok(truncated_poly_algebra(field, 1));
    }
    if name == "dual-numbers" {
        return Ok(truncated_poly_algebra(field, 2));
    }
    if name == "prod2" {
        let k = truncated_poly_algebra(field, 1);
        return product_algebra(&k, &k);
    }
    if let Some(rest) = name.strip_prefix('m') {
        if let Ok(n) = rest.parse::<usize>() {
            if n == 0 || n > 8 {
                return Err(Error::InvalidInput(format!("matrix algebra size {n} out of range")));
            }
            return Ok(matrix_algebra(field, n));
        }
    }
    if let Some(rest) = name.strip_prefix("group:c") {
        let m: usize = rest.parse().map_err(|_| bad(name))?;
        if m == 0 || m > 64 {
            return Err(Error::InvalidInput(format!("cyclic group order {m} out of range")));
        }
        return Ok(cyclic_group_algebra(field, m));
    }
    if let Some(rest) = name.strip_prefix("quaternion:") {
        let (a, b) = rest.split_once(',').ok_or_else(|| bad(name))?;
        let a = field.parse(a)?;
        let b = field.parse(b)?;
        return quaternion_algebra(field, &a, &b);
    }
    if let Some(rest) = name.strip_prefix("truncpoly:") {
        let d: usize = rest.parse().map_err(|_| bad(name))?;
        if d == 0 || d > 64 {
            return Err(Error::InvalidInput(format!("truncation degree {d} out of range")));
        }
        return Ok(truncated_poly_algebra(field, d));
    }
    Err(bad(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn matrix_algebra_structure() {
        let a = matrix_algebra(q(), 2);
        assert!(check_algebra(&a).passed());
        // E11 E12 = E12, E12 E12 = 0
        let e11 = a.basis_el(0);
        let e12 = a.basis_el(1);
        assert_eq!(a.multiply(&e11, &e12).unwrap(), e12);
        assert!(vec_is_zero(&a.multiply(&e12, &e12).unwrap()));
    }

    #[test]
    fn quaternion_structure() {
        let a = quaternion_algebra(q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap();
        assert!(check_algebra(&a).passed());
        let (i, j, k) = (a.basis_el(1), a.basis_el(2), a.basis_el(3));
        assert_eq!(a.multiply(&i, &j).unwrap(), k);
        let minus_k: Vec<Scalar> = k.iter().map(|v| v.neg()).collect();
        assert_eq!(a.multiply(&j, &i).unwrap(), minus_k);
        // i^2 = -1
        let unit_neg: Vec<Scalar> = a.unit.iter().map(|v| v.neg()).collect();
        assert_eq!(a.multiply(&i, &i).unwrap(), unit_neg);
    }

    #[test]
    fn quaternion_rejects_char_two_and_zero_params() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(quaternion_algebra(f2, &f2.one(), &f2.one()).is_err());
        assert!(quaternion_algebra(q(), &q().zero(), &q().one()).is_err());
    }

    #[test]
    fn tampered_multiplication_table_fails_associativity() {
        let mut a = matrix_algebra(q(), 2);
        // Corrupt E11 * E11.
        a.mult.set(0, 0, 3, q().one());
        let report = check_algebra(&a);
        assert!(!report.passed());
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.name, "associativity on basis triples");
    }

    #[test]
    fn group_algebra_validates_tables() {
        // Not a Latin square.
        let bad = vec![vec![0, 0], vec![1, 1]];
        assert!(group_algebra(q(), &bad, vec!["1".into(), "g".into()]).is_err());
        // No identity.
        let cyclic_shifted = vec![vec![1, 0], vec![0, 1]];
        assert!(group_algebra(q(), &cyclic_shifted, vec!["a".into(), "b".into()]).is_ok());
        // C2 is fine.
        assert!(check_algebra(&cyclic_group_algebra(q(), 2)).passed());
    }

    #[test]
    fn center_of_m2_is_scalars() {
        let a = matrix_algebra(q(), 2);
        let z = center(&a);
        assert_eq!(z.len(), 1);
        assert!(is_central(&a, &z[0]));
        // The basis vector is a scalar multiple of the identity.
        let c = &z[0];
        assert_eq!(c[0], c[3]);
        assert!(c[1].is_zero() && c[2].is_zero());
        assert!(!c[0].is_zero());
    }

    #[test]
    fn center_of_quaternions_is_scalars() {
        let a = quaternion_algebra(q(), &q().from_i64(-1), &q().from_i64(-1)).unwrap();
        let z = center(&a);
        assert_eq!(z.len(), 1);
        assert!(is_central(&a, &z[0]));
        assert!(!z[0][0].is_zero());
        assert!(z[0][1].is_zero() && z[0][2].is_zero() && z[0][3].is_zero());
    }

    #[test]
    fn center_of_commutative_algebra_is_everything() {
        let a = cyclic_group_algebra(q(), 3);
        assert_eq!(center(&a).len(), 3);
    }

    #[test]
    fn product_algebra_is_componentwise() {
        let k = truncated_poly_algebra(q(), 1);
        let a = product_algebra(&k, &k).unwrap();
        assert!(check_algebra(&a).passed());
        let e1 = a.basis_el(0);
        let e2 = a.basis_el(1);
        assert_eq!(a.multiply(&e1, &e1).unwrap(), e1);
        assert!(vec_is_zero(&a.multiply(&e1, &e2).unwrap()));
        assert_eq!(a.basis, vec!["(1,0)".to_string(), "(0,1)".to_string()]);
    }

    #[test]
    fn builtins_parse() {
        for name in ["q", "dual-numbers", "prod2", "m2", "group:c2", "group:c3", "quaternion:-1,-1"] {
            let a = builtin(q(), name).unwrap();
            assert!(check_algebra(&a).passed(), "builtin {name}");
        }
        assert!(builtin(q(), "nope").is_err());
    }
}
