//! JSON file formats for algebras and comodules. Scalars travel as plain
//! integers or `"p/q"` strings so nothing ever passes through a float.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::comodule::Comodule;
use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Tensor3;

/// A scalar as it appears in a file: an integer or an exact fraction string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Text(String),
}

impl ScalarRepr {
    pub fn to_scalar(&self, field: FieldSpec) -> Result<Scalar, Error> {
        match self {
            ScalarRepr::Int(n) => Ok(field.from_i64(*n)),
            ScalarRepr::Text(s) => field.parse(s),
        }
    }

    /// Canonical form: an integer when one suffices, a fraction string else.
    pub fn from_scalar(s: &Scalar) -> ScalarRepr {
        match s {
            Scalar::Rat(r) => {
                if r.denom() == &num_bigint::BigInt::from(1) {
                    if let Ok(n) = i64::try_from(r.numer().clone()) {
                        return ScalarRepr::Int(n);
                    }
                }
                ScalarRepr::Text(crate::field::scalar_to_string(s))
            }
            Scalar::Mod { v, .. } => match i64::try_from(*v) {
                Ok(n) => ScalarRepr::Int(n),
                Err(_) => ScalarRepr::Text(v.to_string()),
            },
        }
    }
}

/// The base field: `"Q"` or `{"Fp": p}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldRepr {
    Name(String),
    Prime { #[serde(rename = "Fp")] p: u64 },
}

impl FieldRepr {
    pub fn to_field(&self) -> Result<FieldSpec, Error> {
        match self {
            FieldRepr::Name(s) if s == "Q" => Ok(FieldSpec::Rationals),
            FieldRepr::Name(s) => Err(Error::InvalidField(format!(
                "unknown field name {s:?}; use \"Q\" or {{\"Fp\": p}}"
            ))),
            FieldRepr::Prime { p } => FieldSpec::prime(*p),
        }
    }

    pub fn from_field(f: FieldSpec) -> FieldRepr {
        match f {
            FieldSpec::Rationals => FieldRepr::Name("Q".into()),
            FieldSpec::Prime(p) => FieldRepr::Prime { p },
        }
    }
}

/// On-disk algebra: `mult[i][j]` lists the coordinates of `e_i e_j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldRepr,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<ScalarRepr>,
    pub mult: Vec<Vec<Vec<ScalarRepr>>>,
}

fn scalar_vec(
    field: FieldSpec,
    raw: &[ScalarRepr],
    expect: usize,
    what: &str,
) -> Result<Vec<Scalar>, Error> {
    if raw.len() != expect {
        return Err(Error::InvalidInput(format!(
            "{what} has {} entries, expected {expect}",
            raw.len()
        )));
    }
    raw.iter().map(|r| r.to_scalar(field)).collect()
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<Algebra, Error> {
        let field = self.field.to_field()?;
        let n = self.dim;
        if self.basis.len() != n {
            return Err(Error::InvalidInput(format!(
                "basis lists {} names, dim is {n}",
                self.basis.len()
            )));
        }
        let unit = scalar_vec(field, &self.unit, n, "unit")?;
        if self.mult.len() != n {
            return Err(Error::InvalidInput(format!(
                "mult has {} rows, expected {n}",
                self.mult.len()
            )));
        }
        let mut mult = Tensor3::zeros(field, n, n, n);
        for (i, row) in self.mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "mult[{i}] has {} columns, expected {n}",
                    row.len()
                )));
            }
            for (j, cell) in row.iter().enumerate() {
                let v = scalar_vec(field, cell, n, &format!("mult[{i}][{j}]"))?;
                for (k, s) in v.into_iter().enumerate() {
                    if !s.is_zero() {
                        mult.set(i, j, k, s);
                    }
                }
            }
        }
        Ok(Algebra { field, dim: n, basis: self.basis.clone(), unit, mult })
    }

    pub fn from_algebra(a: &Algebra) -> AlgebraFile {
        let n = a.dim;
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a.mult.fiber(i, j).iter().map(ScalarRepr::from_scalar).collect())
                    .collect()
            })
            .collect();
        AlgebraFile {
            field: FieldRepr::from_field(a.field),
            dim: n,
            basis: a.basis.clone(),
            unit: a.unit.iter().map(ScalarRepr::from_scalar).collect(),
            mult,
        }
    }
}

/// On-disk comodule over a given algebra: `action[i][j]` lists `f_i e_j`,
/// `coaction[i][l][k]` is the coefficient of `f_l (x) e_k` in `rho(f_i)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleFile {
    pub dim: usize,
    pub action: Vec<Vec<Vec<ScalarRepr>>>,
    pub coaction: Vec<Vec<Vec<ScalarRepr>>>,
}

impl ComoduleFile {
    pub fn to_comodule(&self, a: &Algebra) -> Result<Comodule, Error> {
        let field = a.field;
        let m = self.dim;
        let n = a.dim;
        if self.action.len() != m {
            return Err(Error::InvalidInput(format!(
                "action has {} rows, expected {m}",
                self.action.len()
            )));
        }
        let mut action = Tensor3::zeros(field, m, n, m);
        for (i, row) in self.action.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "action[{i}] has {} columns, expected the algebra dimension {n}",
                    row.len()
                )));
            }
            for (j, cell) in row.iter().enumerate() {
                let v = scalar_vec(field, cell, m, &format!("action[{i}][{j}]"))?;
                for (l, s) in v.into_iter().enumerate() {
                    if !s.is_zero() {
                        action.set(i, j, l, s);
                    }
                }
            }
        }
        if self.coaction.len() != m {
            return Err(Error::InvalidInput(format!(
                "coaction has {} rows, expected {m}",
                self.coaction.len()
            )));
        }
        let mut coaction = Tensor3::zeros(field, m, m, n);
        for (i, mat) in self.coaction.iter().enumerate() {
            if mat.len() != m {
                return Err(Error::InvalidInput(format!(
                    "coaction[{i}] has {} rows, expected {m}",
                    mat.len()
                )));
            }
            for (l, cell) in mat.iter().enumerate() {
                let v = scalar_vec(field, cell, n, &format!("coaction[{i}][{l}]"))?;
                for (k, s) in v.into_iter().enumerate() {
                    if !s.is_zero() {
                        coaction.set(i, l, k, s);
                    }
                }
            }
        }
        Ok(Comodule { dim: m, action, coaction })
    }

    pub fn from_comodule(a: &Algebra, c: &Comodule) -> ComoduleFile {
        let m = c.dim;
        let n = a.dim;
        let action = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| c.action.fiber(i, j).iter().map(ScalarRepr::from_scalar).collect())
                    .collect()
            })
            .collect();
        let coaction = (0..m)
            .map(|i| {
                (0..m)
                    .map(|l| c.coaction.fiber(i, l).iter().map(ScalarRepr::from_scalar).collect())
                    .collect()
            })
            .collect();
        ComoduleFile { dim: m, action, coaction }
    }
}

pub fn algebra_from_json(text: &str) -> Result<Algebra, Error> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.to_algebra()
}

pub fn algebra_to_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a))
        .expect("algebra serialization cannot fail")
}

pub fn comodule_from_json(a: &Algebra, text: &str) -> Result<Comodule, Error> {
    let file: ComoduleFile = serde_json::from_str(text)?;
    file.to_comodule(a)
}

pub fn comodule_to_json(a: &Algebra, c: &Comodule) -> String {
    serde_json::to_string_pretty(&ComoduleFile::from_comodule(a, c))
        .expect("comodule serialization cannot fail")
}

/// Loads and converts; the caller decides whether to run the axiom checks.
pub fn load_algebra(path: &str) -> Result<Algebra, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    algebra_from_json(&text).map_err(|e| locate(path, e))
}

pub fn load_comodule(a: &Algebra, path: &str) -> Result<Comodule, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{path}: {e}")))?;
    comodule_from_json(a, &text).map_err(|e| locate(path, e))
}

fn locate(path: &str, e: Error) -> Error {
    match e {
        Error::InvalidInput(m) => Error::InvalidInput(format!("{path}: {m}")),
        Error::InvalidScalar(m) => Error::InvalidScalar(format!("{path}: {m}")),
        Error::InvalidField(m) => Error::InvalidField(format!("{path}: {m}")),
        Error::Json(m) => Error::Json(format!("{path}: {m}")),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, check_algebra, matrix_algebra};
    use crate::comodule::{check_comodule, cofree, regular_comodule};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn algebra_round_trips_through_json() {
        let a = matrix_algebra(q(), 2);
        let text = algebra_to_json(&a);
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back, a);
        assert!(check_algebra(&back).passed());
    }

    #[test]
    fn prime_field_algebra_round_trips() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = crate::algebra::cyclic_group_algebra(f7, 2);
        let back = algebra_from_json(&algebra_to_json(&a)).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn fraction_strings_parse_exactly() {
        let text = r#"{
            "field": "Q",
            "dim": 1,
            "basis": ["e"],
            "unit": ["2/3"],
            "mult": [[["3/2"]]]
        }"#;
        let a = algebra_from_json(text).unwrap();
        assert_eq!(a.unit[0], q().parse("2/3").unwrap());
        assert!(check_algebra(&a).passed());
    }

    #[test]
    fn serialized_form_is_canonical() {
        let a = builtin(q(), "dual-numbers").unwrap();
        let once = algebra_to_json(&a);
        let twice = algebra_to_json(&algebra_from_json(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn shape_errors_are_reported_with_indices() {
        let text = r#"{
            "field": "Q",
            "dim": 2,
            "basis": ["a", "b"],
            "unit": [1, 0],
            "mult": [[[1, 0], [0, 1]], [[0, 1]]]
        }"#;
        match algebra_from_json(text) {
            Err(Error::InvalidInput(m)) => assert!(m.contains("mult[1]"), "{m}"),
            other => panic!("expected a shape error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_field_names_are_rejected() {
        let text = r#"{"field": "R", "dim": 1, "basis": ["e"], "unit": [1], "mult": [[[1]]]}"#;
        assert!(matches!(algebra_from_json(text), Err(Error::InvalidField(_))));
    }

    #[test]
    fn comodule_round_trips_over_its_algebra() {
        let a = builtin(q(), "prod2").unwrap();
        for c in [regular_comodule(&a), cofree(&a, 2)] {
            let text = comodule_to_json(&a, &c);
            let back = comodule_from_json(&a, &text).unwrap();
            assert_eq!(back, c);
            assert!(check_comodule(&a, &back).passed());
        }
    }

    #[test]
    fn comodule_shape_mismatch_is_rejected() {
        let a = builtin(q(), "dual-numbers").unwrap();
        let c = regular_comodule(&a);
        let mut file = ComoduleFile::from_comodule(&a, &c);
        file.coaction[1].pop();
        match file.to_comodule(&a) {
            Err(Error::InvalidInput(m)) => assert!(m.contains("coaction[1]"), "{m}"),
            other => panic!("expected a shape error, got {other:?}"),
        }
    }
}
