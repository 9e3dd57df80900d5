//! JSON exchange format for triangulations, gradings and curves.
//!
//! ```json
//! {
//!   "surface": {"genus": 0, "boundary": [4], "punctures": 1},
//!   "edges": [{"id": "r1", "kind": "arc"}, {"id": "b1", "kind": "boundary"}],
//!   "triangles": [["r1", "r2", "b1"]],
//!   "grading": {"T0.0": 1},
//!   "curve": ["r1", {"arc": "r2", "triangle": 3}]
//! }
//! ```
//!
//! Triangles list their sides counterclockwise. Grading keys are arrow names
//! of `Q(τ)`, `T<triangle>.<corner>`, and arrows left out have degree 0. A
//! curve crossing may name the triangle it enters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{ComplexError, SurfaceQuiver};
use crate::curves::{Crossing, Curve, CurveError, GradedTriangulation};
use crate::surface::{Edge, MarkedSurface, SurfaceError, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("document has no grading")]
    MissingGrading,
    #[error("grading names unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("curve crosses unknown arc `{0}`")]
    UnknownArc(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        DocumentError::Parse(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CrossingDoc {
    Arc(String),
    Detailed {
        arc: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        triangle: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub surface: MarkedSurface,
    pub edges: Vec<Edge>,
    pub triangles: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<Vec<CrossingDoc>>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Document of a triangulation, with a grading of `Q(τ)` when given.
    pub fn from_triangulation(t: &Triangulation, degrees: Option<&[i64]>) -> Result<Self, DocumentError> {
        let triangles = t.triangles().iter().map(|tri| tri.map(|e| t.edge_id(e).to_string())).collect();
        let grading = match degrees {
            Some(d) => {
                let sq = SurfaceQuiver::new(t)?;
                Some(sq.reduced.arrows.iter().zip(d).map(|(a, &x)| (a.name.clone(), x)).collect())
            }
            None => None,
        };
        Ok(Self { surface: t.surface().clone(), edges: t.edges().to_vec(), triangles, grading, curve: None })
    }

    pub fn triangulation(&self) -> Result<Triangulation, DocumentError> {
        let tris: Vec<[&str; 3]> =
            self.triangles.iter().map(|t| [t[0].as_str(), t[1].as_str(), t[2].as_str()]).collect();
        Ok(Triangulation::new(self.surface.clone(), self.edges.clone(), &tris)?)
    }

    /// The grading as a degree vector over the arrows of `Q(τ)`.
    pub fn degrees(&self, sq: &SurfaceQuiver) -> Result<Vec<i64>, DocumentError> {
        let grading = self.grading.as_ref().ok_or(DocumentError::MissingGrading)?;
        let mut out = vec![0; sq.reduced.arrows.len()];
        for (name, &d) in grading {
            let a = sq.reduced.arrow_index(name).ok_or_else(|| DocumentError::UnknownArrow(name.clone()))?;
            out[a] = d;
        }
        Ok(out)
    }

    pub fn graded(&self) -> Result<GradedTriangulation, DocumentError> {
        let t = self.triangulation()?;
        let sq = SurfaceQuiver::new(&t)?;
        let degrees = self.degrees(&sq)?;
        Ok(GradedTriangulation::new(t, degrees)?)
    }

    pub fn curve(&self, t: &Triangulation) -> Result<Option<Curve>, DocumentError> {
        let Some(crossings) = &self.curve else { return Ok(None) };
        let crossings = crossings
            .iter()
            .map(|c| {
                let (id, via) = match c {
                    CrossingDoc::Arc(id) => (id, None),
                    CrossingDoc::Detailed { arc, triangle } => (arc, *triangle),
                };
                let arc =
                    t.edge_by_id(id).filter(|&e| t.is_arc(e)).ok_or_else(|| DocumentError::UnknownArc(id.clone()))?;
                Ok(Crossing { arc, via })
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        Ok(Some(Curve { crossings }))
    }
}
