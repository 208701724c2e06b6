//! The `trimat-doc/1` input schema: a JSON document of named algebras
//! (structure-constant or quiver form), bimodules, modules, triplets,
//! and integer matrices. Scalars are strings (`"3"`, `"-1/2"`) so that
//! exactness survives serialization.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use trimat_core::algebra::Algebra;
use trimat_core::bimodule::Bimodule;
use trimat_core::field::{FieldSpec, Scalar};
use trimat_core::glue::TriangularData;
use trimat_core::matrix::Matrix;
use trimat_core::module::RightModule;
use trimat_core::quiver::{Arrow, QuiverPresentation, RelationTerm};
use trimat_core::IntMatrix;

pub const SCHEMA: &str = "trimat-doc/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub field: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub triplets: BTreeMap<String, TripletDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AlgebraDoc {
    #[serde(rename = "structure-constants")]
    StructureConstants {
        basis: Vec<String>,
        unit: Vec<String>,
        /// `mult[i][j]` = coordinates of `b_i · b_j`
        mult: Vec<Vec<Vec<String>>>,
        idempotents: Vec<Vec<String>>,
    },
    #[serde(rename = "quiver")]
    Quiver {
        vertices: Vec<String>,
        arrows: Vec<ArrowDoc>,
        #[serde(default)]
        relations: Vec<Vec<RelationTermDoc>>,
        nilpotency_bound: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationTermDoc {
    pub coeff: String,
    pub path: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub algebra: String,
    pub dim: usize,
    /// one `dim × dim` matrix per algebra basis element
    pub action: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BimoduleDoc {
    pub left: String,
    pub right: String,
    pub dim: usize,
    pub left_action: Vec<Vec<Vec<String>>>,
    pub right_action: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripletDoc {
    pub r: String,
    pub s: String,
    pub m: String,
}

/// A document-level failure with enough context to act on.
#[derive(Debug)]
pub struct DocError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for DocError {}

fn err(location: impl Into<String>, message: impl fmt::Display) -> DocError {
    DocError {
        location: location.into(),
        message: message.to_string(),
    }
}

/// Everything in a document, resolved and validated over one scalar type.
pub struct Workspace<F: Scalar> {
    pub algebras: BTreeMap<String, Algebra<F>>,
    pub bimodules: BTreeMap<String, Bimodule<F>>,
    pub modules: BTreeMap<String, RightModule<F>>,
    pub triplets: BTreeMap<String, TriangularData<F>>,
    pub matrices: BTreeMap<String, IntMatrix>,
}

fn parse_scalar<F: Scalar>(s: &str, spec: &FieldSpec, at: &str) -> Result<F, DocError> {
    F::parse(s, spec).map_err(|e| err(at, e))
}

fn parse_vector<F: Scalar>(v: &[String], spec: &FieldSpec, at: &str) -> Result<Vec<F>, DocError> {
    v.iter().map(|s| parse_scalar(s, spec, at)).collect()
}

fn parse_matrix<F: Scalar>(
    rows: &[Vec<String>],
    spec: &FieldSpec,
    at: &str,
) -> Result<Matrix<F>, DocError> {
    let parsed: Result<Vec<Vec<F>>, DocError> = rows
        .iter()
        .map(|r| parse_vector(r, spec, at))
        .collect();
    let parsed = parsed?;
    let cols = parsed.first().map_or(0, |r| r.len());
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(err(at, "ragged matrix rows"));
    }
    Ok(Matrix::from_rows(parsed))
}

impl<F: Scalar> Workspace<F> {
    pub fn load(doc: &Document, spec: &FieldSpec) -> Result<Self, DocError> {
        if doc.schema != SCHEMA {
            return Err(err(
                "schema",
                format!("expected `{SCHEMA}`, found `{}`", doc.schema),
            ));
        }
        let mut ws = Workspace {
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            modules: BTreeMap::new(),
            triplets: BTreeMap::new(),
            matrices: BTreeMap::new(),
        };
        for (name, a) in &doc.algebras {
            let at = format!("algebras.{name}");
            let algebra = match a {
                AlgebraDoc::StructureConstants {
                    basis,
                    unit,
                    mult,
                    idempotents,
                } => {
                    let dim = basis.len();
                    if unit.len() != dim || mult.len() != dim {
                        return Err(err(&at, "tables do not match the basis length"));
                    }
                    let unit = parse_vector(unit, spec, &at)?;
                    let mut table = Vec::with_capacity(dim);
                    for row in mult {
                        if row.len() != dim {
                            return Err(err(&at, "mult table is not square"));
                        }
                        let mut out_row = Vec::with_capacity(dim);
                        for cell in row {
                            out_row.push(parse_vector(cell, spec, &at)?);
                        }
                        table.push(out_row);
                    }
                    let idems: Result<Vec<Vec<F>>, _> = idempotents
                        .iter()
                        .map(|e| parse_vector(e, spec, &at))
                        .collect();
                    Algebra::from_structure_constants(basis.clone(), unit, table, idems?)
                        .map_err(|e| err(&at, e))?
                }
                AlgebraDoc::Quiver {
                    vertices,
                    arrows,
                    relations,
                    nilpotency_bound,
                } => {
                    let mut rels = Vec::new();
                    for rel in relations {
                        let mut terms = Vec::new();
                        for t in rel {
                            terms.push(RelationTerm {
                                coeff: parse_scalar(&t.coeff, spec, &at)?,
                                path: t.path.clone(),
                            });
                        }
                        rels.push(terms);
                    }
                    let q = QuiverPresentation {
                        vertices: vertices.clone(),
                        arrows: arrows
                            .iter()
                            .map(|a| Arrow {
                                name: a.name.clone(),
                                source: a.source.clone(),
                                target: a.target.clone(),
                            })
                            .collect(),
                        relations: rels,
                        nilpotency_bound: *nilpotency_bound,
                    };
                    q.path_algebra().map_err(|e| err(&at, e))?
                }
            };
            ws.algebras.insert(name.clone(), algebra);
        }
        for (name, m) in &doc.modules {
            let at = format!("modules.{name}");
            let algebra = ws
                .algebras
                .get(&m.algebra)
                .ok_or_else(|| err(&at, format!("unknown algebra `{}`", m.algebra)))?
                .clone();
            if m.action.len() != algebra.dim() {
                return Err(err(&at, "one action matrix per algebra basis element"));
            }
            let action: Result<Vec<Matrix<F>>, _> = m
                .action
                .iter()
                .map(|rows| parse_matrix(rows, spec, &at))
                .collect();
            let module =
                RightModule::new(algebra, m.dim, action?).map_err(|e| err(&at, e))?;
            ws.modules.insert(name.clone(), module);
        }
        for (name, b) in &doc.bimodules {
            let at = format!("bimodules.{name}");
            let left = ws
                .algebras
                .get(&b.left)
                .ok_or_else(|| err(&at, format!("unknown algebra `{}`", b.left)))?
                .clone();
            let right = ws
                .algebras
                .get(&b.right)
                .ok_or_else(|| err(&at, format!("unknown algebra `{}`", b.right)))?
                .clone();
            let la: Result<Vec<Matrix<F>>, _> = b
                .left_action
                .iter()
                .map(|rows| parse_matrix(rows, spec, &at))
                .collect();
            let ra: Result<Vec<Matrix<F>>, _> = b
                .right_action
                .iter()
                .map(|rows| parse_matrix(rows, spec, &at))
                .collect();
            let bim = Bimodule::new(left, right, b.dim, la?, ra?).map_err(|e| err(&at, e))?;
            ws.bimodules.insert(name.clone(), bim);
        }
        for (name, t) in &doc.triplets {
            let at = format!("triplets.{name}");
            let r = ws
                .algebras
                .get(&t.r)
                .ok_or_else(|| err(&at, format!("unknown algebra `{}`", t.r)))?
                .clone();
            let s = ws
                .algebras
                .get(&t.s)
                .ok_or_else(|| err(&at, format!("unknown algebra `{}`", t.s)))?
                .clone();
            let m = ws
                .bimodules
                .get(&t.m)
                .ok_or_else(|| err(&at, format!("unknown bimodule `{}`", t.m)))?
                .clone();
            let data = TriangularData::new(r, s, m).map_err(|e| err(&at, e))?;
            ws.triplets.insert(name.clone(), data);
        }
        for (name, rows) in &doc.matrices {
            let at = format!("matrices.{name}");
            let cols = rows.first().map_or(0, |r| r.len());
            if rows.iter().any(|r| r.len() != cols) {
                return Err(err(&at, "ragged matrix rows"));
            }
            let m = IntMatrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&n| n.into()).collect())
                    .collect(),
            );
            ws.matrices.insert(name.clone(), m);
        }
        Ok(ws)
    }
}

// ---- serializers: core objects back into document form ----

fn scalar_string<F: Scalar>(x: &F) -> String {
    x.to_string()
}

fn vector_doc<F: Scalar>(v: &[F]) -> Vec<String> {
    v.iter().map(scalar_string).collect()
}

fn matrix_doc<F: Scalar>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(scalar_string).collect())
        .collect()
}

pub fn algebra_doc<F: Scalar>(a: &Algebra<F>) -> AlgebraDoc {
    AlgebraDoc::StructureConstants {
        basis: a.labels().to_vec(),
        unit: vector_doc(a.unit()),
        mult: a
            .dense_mult_table()
            .iter()
            .map(|row| row.iter().map(|v| vector_doc(v)).collect())
            .collect(),
        idempotents: a.idempotents().iter().map(|e| vector_doc(e)).collect(),
    }
}

pub fn module_doc<F: Scalar>(name_of_algebra: &str, m: &RightModule<F>) -> ModuleDoc {
    ModuleDoc {
        algebra: name_of_algebra.to_string(),
        dim: m.dim(),
        action: m.actions().iter().map(matrix_doc).collect(),
    }
}

pub fn bimodule_doc<F: Scalar>(left: &str, right: &str, b: &Bimodule<F>) -> BimoduleDoc {
    BimoduleDoc {
        left: left.to_string(),
        right: right.to_string(),
        dim: b.dim(),
        left_action: (0..b.left_algebra().dim())
            .map(|i| matrix_doc(b.left_action(i)))
            .collect(),
        right_action: (0..b.right_algebra().dim())
            .map(|i| matrix_doc(b.right_action(i)))
            .collect(),
    }
}

pub fn int_matrix_json(m: &IntMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|i| {
                serde_json::Value::Array(
                    (0..m.cols())
                        .map(|j| serde_json::Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}
