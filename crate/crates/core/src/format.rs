//! JSON file formats: marked fans (`markedfan/1`) and realizations.
//! Vertex indices are 1-based in files and 0-based in memory.

use serde::{Deserialize, Serialize};

use crate::exactfield::{Field, Scalar, Vector};
use crate::fan::MarkedFan;
use crate::realize::Realization;
use crate::simplicial::SimplicialComplex;

pub const FAN_SCHEMA: &str = "markedfan/1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

impl FormatError {
    fn invalid(msg: impl Into<String>) -> Self {
        FormatError::Invalid(msg.into())
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Quadratic { quadratic: u64 },
}

impl FieldSpec {
    pub fn from_field(field: Field) -> Self {
        match field {
            Field::Rational => FieldSpec::Named("Q".into()),
            Field::Quadratic(d) => FieldSpec::Quadratic { quadratic: d },
        }
    }

    pub fn to_field(&self) -> Result<Field, FormatError> {
        match self {
            FieldSpec::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldSpec::Named(s) => Err(FormatError::invalid(format!("unknown field `{s}`"))),
            FieldSpec::Quadratic { quadratic } => {
                Field::quadratic(*quadratic).map_err(|e| FormatError::invalid(e.to_string()))
            }
        }
    }
}

/// On-disk marked fan. `rays` has one entry per vertex, ghosts included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub schema: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub rays: Vec<Vector>,
    #[serde(default)]
    pub ghosts: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
    pub lattice_generators: Vec<Vector>,
}

fn zero_based(i: usize, what: &str) -> Result<usize, FormatError> {
    i.checked_sub(1)
        .ok_or_else(|| FormatError::invalid(format!("{what} index 0; indices are 1-based")))
}

impl FanFile {
    pub fn from_fan(fan: &MarkedFan) -> Self {
        let k = fan.complex();
        FanFile {
            schema: FAN_SCHEMA.into(),
            field: FieldSpec::from_field(fan.field()),
            dim: fan.dim(),
            rays: fan.markings().to_vec(),
            ghosts: k.ghosts().iter().map(|g| g + 1).collect(),
            facets: k
                .facets()
                .iter()
                .filter(|f| !f.is_empty())
                .map(|f| f.iter().map(|v| v + 1).collect())
                .collect(),
            lattice_generators: fan.lattice_generators().to_vec(),
        }
    }

    pub fn to_fan(&self) -> Result<MarkedFan, FormatError> {
        if self.schema != FAN_SCHEMA {
            return Err(FormatError::invalid(format!(
                "unsupported schema `{}`, expected `{FAN_SCHEMA}`",
                self.schema
            )));
        }
        let field = self.field.to_field()?;
        let stray = self
            .rays
            .iter()
            .chain(&self.lattice_generators)
            .flatten()
            .find(|x| field.join(x.field()) != Some(field));
        if let Some(x) = stray {
            return Err(FormatError::invalid(format!(
                "scalar `{x}` is outside the declared field"
            )));
        }
        let m = self.rays.len();
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&i| zero_based(i, "facet")).collect())
            .collect::<Result<_, _>>()?;
        let ghosts: Vec<usize> = self
            .ghosts
            .iter()
            .map(|&g| zero_based(g, "ghost"))
            .collect::<Result<_, _>>()?;
        let complex = SimplicialComplex::with_declared_ghosts(m, &facets, &ghosts)
            .map_err(|e| FormatError::invalid(e.to_string()))?;
        MarkedFan::new(
            self.dim,
            complex,
            self.rays.clone(),
            self.lattice_generators.clone(),
        )
        .map_err(|e| FormatError::invalid(e.to_string()))
    }
}

pub fn parse_fan(text: &str) -> Result<MarkedFan, FormatError> {
    serde_json::from_str::<FanFile>(text)?.to_fan()
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn rows<T: Serialize>(items: &[T]) -> String {
    if items.is_empty() {
        return "[]".to_string();
    }
    let lines: Vec<String> = items.iter().map(compact).collect();
    format!("[\n    {}\n  ]", lines.join(",\n    "))
}

/// Pretty JSON with one vector or facet per line.
pub fn fan_to_json(fan: &MarkedFan) -> String {
    let file = FanFile::from_fan(fan);
    let fields = [
        ("schema", compact(&file.schema)),
        ("field", compact(&file.field)),
        ("dim", file.dim.to_string()),
        ("rays", rows(&file.rays)),
        ("ghosts", compact(&file.ghosts)),
        ("facets", rows(&file.facets)),
        ("lattice_generators", rows(&file.lattice_generators)),
    ];
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("  \"{k}\": {v}"))
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationFile {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    pub ghosts: Vec<usize>,
    pub lambda: Vec<Vector>,
    pub kernel: Vec<Vector>,
    pub pairing: Vec<[usize; 2]>,
    pub rational: bool,
}

impl RealizationFile {
    pub fn from_realization(r: &Realization) -> Self {
        RealizationFile {
            m: r.m,
            facets: r
                .complex
                .facets()
                .iter()
                .filter(|f| !f.is_empty())
                .map(|f| f.iter().map(|v| v + 1).collect())
                .collect(),
            ghosts: r.complex.ghosts().iter().map(|g| g + 1).collect(),
            lambda: r.lambda.row_vectors(),
            kernel: r.kernel.clone(),
            pairing: r.pairing.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
            rational: r.rational,
        }
    }
}

pub fn realization_to_json(r: &Realization) -> String {
    let file = RealizationFile::from_realization(r);
    let fields = [
        ("m", file.m.to_string()),
        ("facets", rows(&file.facets)),
        ("ghosts", compact(&file.ghosts)),
        ("lambda", rows(&file.lambda)),
        ("kernel", rows(&file.kernel)),
        ("pairing", compact(&file.pairing)),
        ("rational", file.rational.to_string()),
    ];
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("  \"{k}\": {v}"))
        .collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

/// Scalars as exact strings, for report matrices.
pub fn matrix_strings(rows: &[Vector]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(Scalar::to_string).collect())
        .collect()
}
