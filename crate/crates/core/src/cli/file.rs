//! JSON scenario files.
//!
//! Complex numbers are `[re, im]` pairs, matrices are lists of rows and
//! vectors are flat lists of pairs. Loading validates everything and names
//! the first offending object.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerance, Vector};
use crate::model::{Model, TimeGrid};
use crate::scenarios::{FamilySpec, Predicate, Scenario};

pub type MatrixFile = Vec<Vec<[f64; 2]>>;
pub type VectorFile = Vec<[f64; 2]>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    pub times: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyFile {
    Explicit(Vec<MatrixFile>),
    Closure {
        initial: Vec<VectorFile>,
        #[serde(default)]
        extras: BTreeMap<usize, Vec<VectorFile>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PredicateFile {
    Labels(Vec<usize>),
    System2Labels(Vec<usize>),
    Matrix(MatrixFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionFile {
    pub name: String,
    pub system2_labels: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceFile {
    pub eps_zero: f64,
    pub eps_eig: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub d1: usize,
    pub d2: usize,
    pub grid: GridFile,
    pub steps: Vec<MatrixFile>,
    pub family: FamilyFile,
    #[serde(default)]
    pub predicates: BTreeMap<String, PredicateFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub positions: Vec<PositionFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceFile>,
}

fn matrix_in(m: &MatrixFile, what: &str) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> = m.iter().map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()).collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| Error::Validation(format!("{what}: {e}")))
}

fn matrix_out(m: &ComplexMatrix) -> MatrixFile {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect()).collect()
}

fn vector_in(v: &VectorFile, dim: usize, what: &str) -> Result<Vector> {
    if v.len() != dim {
        return Err(Error::Validation(format!("{what}: length {} in dimension {dim}", v.len())));
    }
    if v.iter().any(|[re, im]| !re.is_finite() || !im.is_finite()) {
        return Err(Error::Validation(format!("{what}: non-finite entry")));
    }
    Ok(Vector::from_iterator(dim, v.iter().map(|[re, im]| Complex64::new(*re, *im))))
}

fn vector_out(v: &Vector) -> VectorFile {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl ScenarioFile {
    pub fn into_scenario(self) -> Result<Scenario> {
        let tol = match self.tolerance {
            Some(t) => Tolerance::new(t.eps_zero, t.eps_eig).map_err(|e| Error::Validation(format!("tolerance: {e}")))?,
            None => Tolerance::default(),
        };
        let labels = self.grid.labels.clone().unwrap_or_else(|| (0..self.grid.times.len()).map(|k| format!("t{k}")).collect());
        let grid = TimeGrid::with_labels(self.grid.times.clone(), labels).map_err(|e| Error::Validation(format!("grid: {e}")))?;
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(k, m)| matrix_in(m, &format!("step {}", k + 1)))
            .collect::<Result<Vec<_>>>()?;
        let model = Model::new(self.d1, self.d2, grid, steps, tol).map_err(|e| match e {
            Error::Validation(m) => Error::Validation(m),
            other => Error::Validation(other.to_string()),
        })?;
        let n = model.dim();
        let family_spec = match &self.family {
            FamilyFile::Explicit(ps) => FamilySpec::Explicit(
                ps.iter().enumerate().map(|(k, m)| matrix_in(m, &format!("family projector {k}"))).collect::<Result<_>>()?,
            ),
            FamilyFile::Closure { initial, extras } => FamilySpec::Closure {
                initial: initial
                    .iter()
                    .enumerate()
                    .map(|(i, v)| vector_in(v, n, &format!("initial state {i}")))
                    .collect::<Result<_>>()?,
                extras: extras
                    .iter()
                    .map(|(&k, vs)| {
                        let states = vs
                            .iter()
                            .enumerate()
                            .map(|(i, v)| vector_in(v, n, &format!("extra state {i} at index {k}")))
                            .collect::<Result<Vec<_>>>()?;
                        Ok((k, states))
                    })
                    .collect::<Result<_>>()?,
            },
        };
        if let FamilySpec::Explicit(ps) = &family_spec {
            for (k, p) in ps.iter().enumerate() {
                if p.rows() != n || p.cols() != n {
                    return Err(Error::Validation(format!("family projector {k}: must be {n}x{n}")));
                }
            }
        }
        let mut predicates = BTreeMap::new();
        for (name, p) in &self.predicates {
            let pred = match p {
                PredicateFile::Labels(l) => Predicate::Labels(l.clone()),
                PredicateFile::System2Labels(l) => Predicate::System2Labels(l.clone()),
                PredicateFile::Matrix(m) => Predicate::Matrix(matrix_in(m, &format!("predicate {name}"))?),
            };
            predicates.insert(name.clone(), pred);
        }
        let positions = self.positions.iter().map(|p| (p.name.clone(), p.system2_labels.clone())).collect();
        Scenario::new(&self.name, model, family_spec, predicates, positions).map_err(|e| match e {
            Error::Validation(m) => Error::Validation(m),
            other => Error::Validation(other.to_string()),
        })
    }

    pub fn from_scenario(sc: &Scenario) -> Self {
        let grid = sc.model.grid();
        let family = match &sc.family_spec {
            FamilySpec::Explicit(ps) => FamilyFile::Explicit(ps.iter().map(matrix_out).collect()),
            FamilySpec::Closure { initial, extras } => FamilyFile::Closure {
                initial: initial.iter().map(vector_out).collect(),
                extras: extras.iter().map(|(&k, vs)| (k, vs.iter().map(vector_out).collect())).collect(),
            },
        };
        let predicates = sc
            .predicates
            .iter()
            .map(|(n, p)| {
                let f = match p {
                    Predicate::Labels(l) => PredicateFile::Labels(l.clone()),
                    Predicate::System2Labels(l) => PredicateFile::System2Labels(l.clone()),
                    Predicate::Matrix(m) => PredicateFile::Matrix(matrix_out(m)),
                };
                (n.clone(), f)
            })
            .collect();
        let tol = sc.model.tol();
        ScenarioFile {
            name: sc.name.clone(),
            d1: sc.model.d1(),
            d2: sc.model.d2(),
            grid: GridFile { times: grid.times().to_vec(), labels: Some(grid.labels().to_vec()) },
            steps: sc.model.steps().iter().map(matrix_out).collect(),
            family,
            predicates,
            positions: sc.positions.iter().map(|(n, l)| PositionFile { name: n.clone(), system2_labels: l.clone() }).collect(),
            tolerance: (tol != Tolerance::default()).then_some(ToleranceFile { eps_zero: tol.eps_zero, eps_eig: tol.eps_eig }),
        }
    }

    /// JSON with one matrix row or vector per line.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("scenario files serialise");
        let mut out = String::new();
        write_value(&mut out, &value, 0);
        out.push('\n');
        out
    }
}

/// Reasons a scenario file could not be loaded.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read scenario: {0}")]
    Io(String),
    #[error("cannot parse scenario: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(Error),
}

pub fn parse_scenario(text: &str) -> std::result::Result<Scenario, LoadError> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| LoadError::Parse(e.to_string()))?;
    file.into_scenario().map_err(LoadError::Invalid)
}

pub fn load_scenario(path: &Path) -> std::result::Result<Scenario, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object() && (!i.is_array() || i.as_array().unwrap().iter().all(|x| !x.is_array() && !x.is_object()))),
        _ => true,
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, val)) in map.iter().enumerate() {
                indent(out, depth + 1);
                let _ = write!(out, "{}: ", Value::String(k.clone()));
                write_value(out, val, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            indent(out, depth);
            out.push('}');
        }
        Value::Array(items) if !is_flat(v) && !items.is_empty() => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                indent(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(out, depth);
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::builtin;

    #[test]
    fn builtins_round_trip() {
        for (name, _) in crate::scenarios::BUILTINS {
            let sc = builtin(name).unwrap();
            let text = ScenarioFile::from_scenario(&sc).to_json();
            let back = parse_scenario(&text).unwrap();
            assert_eq!(ScenarioFile::from_scenario(&back), ScenarioFile::from_scenario(&sc), "{name}");
            for (a, b) in sc.family.projectors().iter().zip(back.family.projectors()) {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn non_unitary_step_named() {
        let mut f = ScenarioFile::from_scenario(&builtin("double-slit").unwrap());
        f.steps[1][0][0] = [2.0, 0.0];
        let err = f.into_scenario().unwrap_err();
        assert!(matches!(&err, Error::Validation(m) if m.contains("step 2")), "{err}");
    }

    #[test]
    fn nesting_violation_named() {
        let mut f = ScenarioFile::from_scenario(&builtin("double-slit").unwrap());
        let mut small = vec![vec![[0.0, 0.0]; 4]; 4];
        small[0][0] = [1.0, 0.0];
        let mut other = vec![vec![[0.0, 0.0]; 4]; 4];
        other[1][1] = [1.0, 0.0];
        f.family = FamilyFile::Explicit(vec![small.clone(), other, small]);
        let err = f.into_scenario().unwrap_err();
        assert!(matches!(&err, Error::Validation(m) if m.contains("(0, 1)")), "{err}");
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_scenario("{\n  \"name\": 3\n}") {
            Err(LoadError::Parse(m)) => assert!(m.contains("line 2")),
            other => panic!("{other:?}"),
        }
    }
}
