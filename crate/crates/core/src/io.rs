//! Reading matrices (CSV or JSON) and instances (JSON).

use std::path::Path;

use serde_json::Value;

use crate::geometry::Ray;
use crate::lcp::{instance_from_matrix, LcpError, QInstance, RationalMatrix, INSTANCE_SCHEMA};
use crate::num::{parse_rational, Rat};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Lcp(#[from] LcpError),
}

/// Rows of comma separated rationals. Blank lines and lines starting with
/// `#` are skipped; columns are counted in characters from 1.
pub fn parse_matrix_csv(text: &str) -> Result<RationalMatrix, InputError> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut width: Option<usize> = None;
    for (ln, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        let mut col = 1;
        for field in line.split(',') {
            let lead = field.len() - field.trim_start().len();
            let value = parse_rational(field).map_err(|e| InputError::Syntax {
                line: ln + 1,
                column: col + lead,
                message: e.to_string(),
            })?;
            row.push(value);
            col += field.chars().count() + 1;
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(InputError::Syntax {
                    line: ln + 1,
                    column: 1,
                    message: format!("row has {} entries, expected {w}", row.len()),
                })
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(LcpError::Empty.into());
    }
    if rows.len() != rows[0].len() {
        return Err(InputError::Field {
            path: "matrix".into(),
            message: format!("{} rows of {} entries; the matrix must be square", rows.len(), rows[0].len()),
        });
    }
    Ok(RationalMatrix::new(rows)?)
}

fn json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn rational(v: &Value, path: &str) -> Result<Rat, InputError> {
    let bad = |m: String| InputError::Field {
        path: path.to_string(),
        message: m,
    };
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| bad(e.to_string())),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(i.into())),
            None => Err(bad(format!("{n} is not an integer; write non-integers as \"p/q\" strings"))),
        },
        other => Err(bad(format!("expected a rational, found {other}"))),
    }
}

fn rational_rows(v: &Value, path: &str) -> Result<Vec<Vec<Rat>>, InputError> {
    let rows = v.as_array().ok_or_else(|| InputError::Field {
        path: path.to_string(),
        message: "expected an array of rows".into(),
    })?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            let p = format!("{path}[{i}]");
            let items = r.as_array().ok_or_else(|| InputError::Field {
                path: p.clone(),
                message: "expected an array".into(),
            })?;
            items
                .iter()
                .enumerate()
                .map(|(j, x)| rational(x, &format!("{p}[{j}]")))
                .collect()
        })
        .collect()
}

/// Either a bare array of rows or `{"n": .., "entries": [..]}`.
pub fn parse_matrix_json(text: &str) -> Result<RationalMatrix, InputError> {
    let v = json(text)?;
    let rows = match &v {
        Value::Array(_) => rational_rows(&v, "matrix")?,
        Value::Object(o) => {
            let e = o.get("entries").ok_or_else(|| InputError::Field {
                path: "matrix".into(),
                message: "missing \"entries\"".into(),
            })?;
            let rows = rational_rows(e, "entries")?;
            if let Some(n) = o.get("n") {
                if n.as_u64() != Some(rows.len() as u64) {
                    return Err(InputError::Field {
                        path: "n".into(),
                        message: format!("declares {n} but there are {} rows", rows.len()),
                    });
                }
            }
            rows
        }
        _ => {
            return Err(InputError::Field {
                path: "matrix".into(),
                message: "expected an array or an object".into(),
            })
        }
    };
    Ok(RationalMatrix::new(rows)?)
}

/// Instance document with the current schema tag.
pub fn parse_instance_json(text: &str) -> Result<QInstance, InputError> {
    let v = json(text)?;
    let field = |k: &str| {
        v.get(k).ok_or_else(|| InputError::Field {
            path: k.to_string(),
            message: "missing".into(),
        })
    };
    let schema = field("schema")?;
    if schema.as_str() != Some(INSTANCE_SCHEMA) {
        return Err(InputError::Field {
            path: "schema".into(),
            message: format!("expected {INSTANCE_SCHEMA:?}, found {schema}"),
        });
    }
    let rays = |k: &str| -> Result<Vec<Ray>, InputError> {
        rational_rows(field(k)?, k)?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Ray::from_rationals(r).map_err(|e| InputError::Field {
                    path: format!("{k}[{i}]"),
                    message: e.to_string(),
                })
            })
            .collect()
    };
    let (s, t) = (rays("s")?, rays("t")?);
    if let Some(n) = v.get("n") {
        if n.as_u64() != Some(s.len() as u64) {
            return Err(InputError::Field {
                path: "n".into(),
                message: format!("declares {n} but there are {} rays in s", s.len()),
            });
        }
    }
    Ok(QInstance::new(s, t)?)
}

#[derive(Clone, Debug)]
pub enum Input {
    Matrix(RationalMatrix),
    Instance(QInstance),
}

impl Input {
    /// The instance of a matrix is `s_i = e_i`, `t_i = -M e_i`.
    pub fn instance(&self) -> Result<QInstance, InputError> {
        match self {
            Input::Matrix(m) => Ok(instance_from_matrix(m)?),
            Input::Instance(i) => Ok(i.clone()),
        }
    }

    pub fn matrix(&self) -> Option<&RationalMatrix> {
        match self {
            Input::Matrix(m) => Some(m),
            Input::Instance(_) => None,
        }
    }
}

/// JSON carrying a `schema` tag is an instance, other JSON a matrix, and
/// anything else is read as CSV.
pub fn parse_input(text: &str) -> Result<Input, InputError> {
    let start = text.trim_start();
    if start.starts_with('{') || start.starts_with('[') {
        let v = json(text)?;
        if v.get("schema").is_some() {
            return parse_instance_json(text).map(Input::Instance);
        }
        return parse_matrix_json(text).map(Input::Matrix);
    }
    parse_matrix_csv(text).map(Input::Matrix)
}

pub fn read_input(path: &Path) -> Result<Input, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_input(&text)
}

pub fn instance_to_json(inst: &QInstance) -> String {
    serde_json::to_string_pretty(inst).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn csv_matrices() {
        let m = parse_matrix_csv("# Q but not R0\n2,1,-1\n4, 0,-1\n3,0,-1\n").unwrap();
        assert_eq!(m.entry(1, 0), &rat(4, 1));
        let m = parse_matrix_csv("1/2,0\n0,-3/4\n").unwrap();
        assert_eq!(m.entry(1, 1), &rat(-3, 4));
    }

    #[test]
    fn csv_errors_have_positions() {
        let e = parse_matrix_csv("1,2\n3,x\n").unwrap_err();
        assert!(matches!(e, InputError::Syntax { line: 2, column: 3, .. }), "{e}");
        let e = parse_matrix_csv("1,2\n3\n").unwrap_err();
        assert!(matches!(e, InputError::Syntax { line: 2, .. }));
        let e = parse_matrix_csv("1, 1/0\n2,3\n").unwrap_err();
        assert!(matches!(e, InputError::Syntax { line: 1, column: 4, .. }), "{e}");
        assert!(parse_matrix_csv("1,2\n").is_err());
        assert!(parse_matrix_csv("\n").is_err());
    }

    #[test]
    fn json_matrices() {
        let m = parse_matrix_json("[[1, \"-1/2\"], [0, 2]]").unwrap();
        assert_eq!(m.entry(0, 1), &rat(-1, 2));
        let m = parse_matrix_json("{\"n\": 2, \"entries\": [[\"1\", \"0\"], [\"0\", \"1\"]]}").unwrap();
        assert_eq!(m, RationalMatrix::identity(2));
        let e = parse_matrix_json("[[1, 2],\n [3, ]]").unwrap_err();
        assert!(matches!(e, InputError::Syntax { line: 2, .. }));
        assert!(parse_matrix_json("[[1.5, 0], [0, 1]]").is_err());
    }

    #[test]
    fn instance_round_trip() {
        let inst = QInstance::from_i64(&[&[1, 0], &[0, 1]], &[&[-1, 2], &[3, -1]]);
        let text = instance_to_json(&inst);
        assert_eq!(parse_instance_json(&text).unwrap(), inst);
        match parse_input(&text).unwrap() {
            Input::Instance(i) => assert_eq!(i, inst),
            Input::Matrix(_) => panic!("expected an instance"),
        }
        let bad = text.replace(INSTANCE_SCHEMA, "other");
        assert!(parse_instance_json(&bad).is_err());
    }

    #[test]
    fn zero_columns_are_rejected() {
        let input = parse_input("1,0\n2,0\n").unwrap();
        let e = input.instance().unwrap_err();
        assert!(e.to_string().contains("vanishing generator"));
    }
}
