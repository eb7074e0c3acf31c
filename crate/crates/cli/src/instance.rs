//! Instance files: TOML with a `kind` discriminator.
//!
//! Rational entries are written as strings `"p"` or `"p/q"`; bare TOML
//! integers are accepted as well, floats never are.

use std::fmt;
use std::path::Path;

use dercheck_core::exact::{parse_rational, rat};
use dercheck_core::fixed::DEFAULT_ORDER_BOUND;
use dercheck_core::group::DEFAULT_GROUP_BOUND;
use dercheck_core::{HilbertTable, RationalMatrix, Window};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Integer(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpected {
    check: String,
    entries: Vec<[i64; 3]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    kind: String,
    n: usize,
    name: Option<String>,
    window: Option<[i64; 2]>,
    x_forms: Option<Vec<Vec<Entry>>>,
    y_forms: Option<Vec<Vec<Entry>>>,
    f_twists: Option<Vec<i64>>,
    g_twists: Option<Vec<i64>>,
    hkr_twists: Option<Vec<i64>>,
    phi: Option<Vec<Vec<Entry>>>,
    order_bound: Option<u32>,
    generators: Option<Vec<Vec<Vec<Entry>>>>,
    group_bound: Option<usize>,
    #[serde(default)]
    expected: Vec<RawExpected>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Intersection,
    FixedLocus,
    Orbifold,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Intersection => "intersection",
            Kind::FixedLocus => "fixed-locus",
            Kind::Orbifold => "orbifold",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Intersection {
        x_forms: RationalMatrix,
        y_forms: RationalMatrix,
        f_twists: Vec<i64>,
        g_twists: Vec<i64>,
        hkr_twists: Vec<i64>,
    },
    FixedLocus {
        phi: RationalMatrix,
        order_bound: u32,
    },
    Orbifold {
        generators: Vec<RationalMatrix>,
        group_bound: usize,
    },
}

/// A table the instance claims one of the checks will produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub check: String,
    pub entries: Vec<(i64, i64, u64)>,
}

impl Expected {
    pub fn table(&self, window: Window) -> HilbertTable {
        let mut table = HilbertTable::new(window);
        for &(i, t, d) in &self.entries {
            if window.contains(t) {
                table.add_to(i, t, d);
            }
        }
        table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: Option<String>,
    pub n: usize,
    pub window: Option<Window>,
    pub payload: Payload,
    pub expected: Vec<Expected>,
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self.payload {
            Payload::Intersection { .. } => Kind::Intersection,
            Payload::FixedLocus { .. } => Kind::FixedLocus,
            Payload::Orbifold { .. } => Kind::Orbifold,
        }
    }
}

fn invalid(field: &str, message: impl Into<String>) -> CliError {
    CliError::Invalid { field: field.to_string(), message: message.into() }
}

fn matrix(field: &str, rows: &[Vec<Entry>], cols: usize) -> Result<RationalMatrix, CliError> {
    let mut parsed = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(invalid(field, format!("row {} has {} entries, expected {cols}", r + 1, row.len())));
        }
        let mut out = Vec::with_capacity(cols);
        for (c, e) in row.iter().enumerate() {
            out.push(match e {
                Entry::Integer(v) => rat(*v),
                Entry::Text(s) => parse_rational(s).map_err(|e| invalid(field, format!("entry ({}, {}): {e}", r + 1, c + 1)))?,
            });
        }
        parsed.push(out);
    }
    Ok(RationalMatrix::from_rows(&parsed, cols).expect("row lengths checked"))
}

fn square(field: &str, rows: &[Vec<Entry>], n: usize) -> Result<RationalMatrix, CliError> {
    if rows.len() != n {
        return Err(invalid(field, format!("has {} rows, expected a square {n}x{n} matrix", rows.len())));
    }
    matrix(field, rows, n).map_err(|e| match e {
        CliError::Invalid { field, message } => CliError::Invalid { field, message: format!("{message} (expected a square {n}x{n} matrix)") },
        other => other,
    })
}

fn forbid(field: &str, present: bool, kind: &str) -> Result<(), CliError> {
    if present {
        return Err(invalid(field, format!("not allowed for kind {kind}")));
    }
    Ok(())
}

pub fn parse_instance_str(text: &str) -> Result<Instance, CliError> {
    let raw: RawInstance = toml::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))?;
    let n = raw.n;
    if n == 0 {
        return Err(invalid("n", "ambient dimension must be positive"));
    }
    let window = raw
        .window
        .map(|[lo, hi]| Window::new(lo, hi).map_err(|e| invalid("window", e.to_string())))
        .transpose()?;
    let payload = match raw.kind.as_str() {
        "intersection" => {
            forbid("phi", raw.phi.is_some(), &raw.kind)?;
            forbid("generators", raw.generators.is_some(), &raw.kind)?;
            let x = raw.x_forms.as_deref().ok_or_else(|| invalid("x_forms", "missing"))?;
            let y = raw.y_forms.as_deref().ok_or_else(|| invalid("y_forms", "missing"))?;
            Payload::Intersection {
                x_forms: matrix("x_forms", x, n)?,
                y_forms: matrix("y_forms", y, n)?,
                f_twists: raw.f_twists.unwrap_or_else(|| vec![0]),
                g_twists: raw.g_twists.unwrap_or_else(|| vec![0]),
                hkr_twists: raw.hkr_twists.unwrap_or_else(|| vec![0]),
            }
        }
        "fixed-locus" => {
            forbid("x_forms", raw.x_forms.is_some(), &raw.kind)?;
            forbid("generators", raw.generators.is_some(), &raw.kind)?;
            let phi = raw.phi.as_deref().ok_or_else(|| invalid("phi", "missing"))?;
            Payload::FixedLocus { phi: square("phi", phi, n)?, order_bound: raw.order_bound.unwrap_or(DEFAULT_ORDER_BOUND) }
        }
        "orbifold" => {
            forbid("x_forms", raw.x_forms.is_some(), &raw.kind)?;
            forbid("phi", raw.phi.is_some(), &raw.kind)?;
            let gens = raw.generators.as_deref().ok_or_else(|| invalid("generators", "missing"))?;
            if gens.is_empty() {
                return Err(invalid("generators", "at least one generator is required"));
            }
            let generators = gens
                .iter()
                .enumerate()
                .map(|(k, g)| square(&format!("generators[{k}]"), g, n))
                .collect::<Result<Vec<_>, _>>()?;
            Payload::Orbifold { generators, group_bound: raw.group_bound.unwrap_or(DEFAULT_GROUP_BOUND) }
        }
        other => return Err(invalid("kind", format!("unknown kind {other:?}; expected intersection, fixed-locus or orbifold"))),
    };
    let mut expected = Vec::with_capacity(raw.expected.len());
    for e in raw.expected {
        let mut entries = Vec::with_capacity(e.entries.len());
        for [i, t, d] in e.entries {
            let d = u64::try_from(d).map_err(|_| invalid("expected", format!("negative dimension {d}")))?;
            entries.push((i, t, d));
        }
        expected.push(Expected { check: e.check, entries });
    }
    Ok(Instance { name: raw.name, n, window, payload, expected })
}

pub fn parse_instance(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_instance_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transversal_lines() {
        let inst = parse_instance_str("kind = \"intersection\"\nn = 2\nx_forms = [[\"1\", \"0\"]]\ny_forms = [[0, 1]]\n").unwrap();
        assert_eq!(inst.kind(), Kind::Intersection);
        assert_eq!(inst.n, 2);
    }

    #[test]
    fn decimals_are_rejected() {
        let err = parse_instance_str("kind = \"fixed-locus\"\nn = 1\nphi = [[\"0.5\"]]\n").unwrap_err();
        assert!(matches!(err, CliError::Invalid { ref field, .. } if field == "phi"), "{err}");
        let err = parse_instance_str("kind = \"fixed-locus\"\nn = 1\nphi = [[0.5]]\n").unwrap_err();
        assert!(matches!(err, CliError::Syntax(_)));
    }

    #[test]
    fn non_square_matrix_is_a_dimension_error() {
        let err = parse_instance_str("kind = \"fixed-locus\"\nn = 2\nphi = [[\"1\", \"0\", \"0\"], [\"0\", \"1\", \"0\"]]\n").unwrap_err();
        assert!(err.to_string().contains("square"), "{err}");
    }

    #[test]
    fn fractions_parse() {
        let inst = parse_instance_str("kind = \"orbifold\"\nn = 1\ngenerators = [[[\"-2/2\"]]]\n").unwrap();
        let Payload::Orbifold { generators, .. } = inst.payload else { panic!() };
        assert_eq!(generators[0], RationalMatrix::from_i64(&[&[-1]]));
    }
}
