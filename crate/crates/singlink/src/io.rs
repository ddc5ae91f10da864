//! JSON and DOT exchange formats.
//!
//! The JSON graph schema is the stable contract:
//!
//! ```json
//! {"vertices":[{"id":"E1","genus":0,"euler":-3,"mult":16,"name":"E_1"}],
//!  "edges":[["E1","E2"]],
//!  "arrows":[{"at":"E2","label":"delta_1","mult":1}]}
//! ```
//!
//! `euler` and `mult` may be `null`. Branch input files look like
//!
//! ```json
//! {"branches":[{"terms":[[1,1],[2,-1]],"weight":1,"label":"delta_1"},
//!              {"axis":"x","tracked":true}]}
//! ```
//!
//! with exponents and coefficients given as integers or exact rational
//! strings such as `"34/13"`. Emission is deterministic: vertices, edges
//! and arrows are kept sorted. DOT output is for human inspection only and
//! may change; JSON is the contract.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{CoveringGraph, PipelineReport};
use crate::graph::{Arrow, FreeArrow, GraphError, PlumbingGraph, Vertex, VertexId};
use crate::moves::BlowDownCertificate;
use crate::puiseux::{parse_rational, rational_to_string, Axis, BranchError, PuiseuxBranch};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error("branch entry needs either terms or an axis")]
    BranchShape,
    #[error("unknown axis {0:?} (expected \"x\" or \"y\")")]
    BadAxis(String),
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<Vertex>,
    edges: Vec<(VertexId, VertexId)>,
    arrows: Vec<Arrow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    free_arrows: Vec<FreeArrow>,
}

impl From<&PlumbingGraph> for GraphJson {
    fn from(g: &PlumbingGraph) -> Self {
        GraphJson {
            vertices: g.vertices().cloned().collect(),
            edges: g.edges().to_vec(),
            arrows: g.arrows().to_vec(),
            free_arrows: g.free_arrows().to_vec(),
        }
    }
}

impl TryFrom<GraphJson> for PlumbingGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let mut g = PlumbingGraph::from_parts(j.vertices, j.edges, j.arrows)?;
        for f in j.free_arrows {
            g.add_free_arrow(f);
        }
        Ok(g)
    }
}

pub fn graph_to_json(g: &PlumbingGraph) -> String {
    serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph serializes")
}

pub fn graph_from_json(s: &str) -> Result<PlumbingGraph, IoError> {
    let j: GraphJson = serde_json::from_str(s)?;
    Ok(PlumbingGraph::try_from(j)?)
}

/// Exponents and coefficients accept integers or `"p/q"` strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RationalJson {
    Int(i64),
    Text(String),
}

impl RationalJson {
    fn to_rational(&self) -> Result<BigRational, IoError> {
        match self {
            RationalJson::Int(n) => Ok(BigRational::from_integer((*n).into())),
            RationalJson::Text(s) => {
                parse_rational(s).ok_or_else(|| IoError::BadRational(s.clone()))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BranchJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<(RationalJson, RationalJson)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    axis: Option<String>,
    #[serde(default = "default_weight")]
    weight: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default)]
    tracked: bool,
}

fn default_weight() -> u64 {
    1
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    branches: Vec<BranchJson>,
}

pub fn branches_from_json(s: &str) -> Result<Vec<PuiseuxBranch>, IoError> {
    let j: CurveJson = serde_json::from_str(s)?;
    let mut out = Vec::with_capacity(j.branches.len());
    for (i, b) in j.branches.iter().enumerate() {
        let label = b
            .label
            .clone()
            .unwrap_or_else(|| format!("delta_{}", i + 1));
        let mut branch = match (&b.terms, &b.axis) {
            (Some(terms), None) => {
                let mut t = Vec::with_capacity(terms.len());
                for (e, c) in terms {
                    t.push((e.to_rational()?, c.to_rational()?));
                }
                PuiseuxBranch::series(t, b.weight, label)?
            }
            (None, Some(axis)) => {
                let axis = match axis.as_str() {
                    "x" => Axis::X,
                    "y" => Axis::Y,
                    other => return Err(IoError::BadAxis(other.to_owned())),
                };
                PuiseuxBranch::axis(axis, b.weight, label)?
            }
            _ => return Err(IoError::BranchShape),
        };
        if b.tracked {
            branch = branch.tracked();
        }
        out.push(branch);
    }
    Ok(out)
}

pub fn branches_to_json(branches: &[PuiseuxBranch]) -> String {
    use crate::puiseux::BranchKind;
    let items: Vec<BranchJson> = branches
        .iter()
        .map(|b| {
            let (terms, axis) = match &b.kind {
                BranchKind::Series(terms) => (
                    Some(
                        terms
                            .iter()
                            .map(|(e, c)| {
                                (
                                    RationalJson::Text(rational_to_string(e)),
                                    RationalJson::Text(rational_to_string(c)),
                                )
                            })
                            .collect(),
                    ),
                    None,
                ),
                BranchKind::Axis(Axis::X) => (None, Some("x".to_owned())),
                BranchKind::Axis(Axis::Y) => (None, Some("y".to_owned())),
            };
            BranchJson {
                terms,
                axis,
                weight: b.weight,
                label: Some(b.label.clone()),
                tracked: b.tracked,
            }
        })
        .collect();
    serde_json::to_string_pretty(&CurveJson { branches: items }).expect("branches serialize")
}

#[derive(Serialize)]
struct ReportJson {
    degree: u64,
    base: GraphJson,
    covering: CoveringGraph,
    resolved: GraphJson,
    minimal: GraphJson,
    certificates: Vec<BlowDownCertificate>,
}

pub fn report_to_json(r: &PipelineReport) -> String {
    serde_json::to_string_pretty(&ReportJson {
        degree: r.covering.degree,
        base: GraphJson::from(&r.base.graph),
        covering: r.covering.clone(),
        resolved: GraphJson::from(&r.resolved),
        minimal: GraphJson::from(&r.minimal),
        certificates: r.certificates.clone(),
    })
    .expect("report serializes")
}

/// DOT rendering: one node per vertex labelled `id (euler[,genus])`, arrows
/// as box-shaped terminal nodes.
pub fn graph_to_dot(g: &PlumbingGraph) -> String {
    let mut out = String::from("graph plumbing {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let euler = match v.euler {
            Some(e) => e.to_string(),
            None => "?".to_owned(),
        };
        let label = if v.genus > 0 {
            format!("{} ({},{})", v.id, euler, v.genus)
        } else {
            format!("{} ({})", v.id, euler)
        };
        out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", v.id, label));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
    }
    for (i, a) in g.arrows().iter().enumerate() {
        let node = format!("arrow{}", i + 1);
        out.push_str(&format!(
            "  \"{node}\" [shape=box,label=\"{}\"];\n  \"{}\" -- \"{node}\";\n",
            a.label, a.at
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip_is_identity() {
        let mut g = PlumbingGraph::chain(&[-3, -2, -3]);
        g.vertex_mut(&VertexId::new("E1")).unwrap().mult = Some(16);
        g.add_arrow(Arrow {
            at: VertexId::new("E2"),
            label: "delta_1".into(),
            mult: Some(1),
        })
        .unwrap();
        let json = graph_to_json(&g);
        let back = graph_from_json(&json).unwrap();
        assert_eq!(back, g);
        // byte-identical re-emission
        assert_eq!(graph_to_json(&back), json);
    }

    #[test]
    fn schema_fields_match_the_contract() {
        let mut g = PlumbingGraph::new();
        g.add_vertex(Vertex::new("E1", 0, Some(-3)).with_mult(16))
            .unwrap();
        let json = graph_to_json(&g);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["vertices"][0]["id"], "E1");
        assert_eq!(v["vertices"][0]["genus"], 0);
        assert_eq!(v["vertices"][0]["euler"], -3);
        assert_eq!(v["vertices"][0]["mult"], 16);
    }

    #[test]
    fn unknown_euler_serializes_as_null() {
        let mut g = PlumbingGraph::new();
        g.add_vertex(Vertex::new("E1", 0, None)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&graph_to_json(&g)).unwrap();
        assert!(v["vertices"][0]["euler"].is_null());
        assert!(v["vertices"][0]["mult"].is_null());
    }

    #[test]
    fn branch_parsing() {
        let s = r#"{"branches":[
            {"terms":[[1,1],[2,-1]],"weight":1,"label":"delta_1"},
            {"terms":[["34/13","1"]],"label":"delta_3"},
            {"axis":"x","tracked":true}
        ]}"#;
        // exponent 34/13 alone is < 1 at no point: it is >= 1, fine
        let parsed = branches_from_json(s).unwrap();
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[0].label, "delta_1");
        assert!(parsed[2].tracked);
        // round trip through the emitter
        let emitted = branches_to_json(&parsed);
        let back = branches_from_json(&emitted).unwrap();
        assert_eq!(back, parsed);
    }

    #[test]
    fn free_arrows_survive_the_round_trip() {
        let mut g = PlumbingGraph::chain(&[-1]);
        g.add_arrow(Arrow {
            at: VertexId::new("E1"),
            label: "curve".into(),
            mult: Some(1),
        })
        .unwrap();
        let (min, _) = crate::moves::minimize(&g).unwrap();
        assert_eq!(min.free_arrows().len(), 1);
        let back = graph_from_json(&graph_to_json(&min)).unwrap();
        assert_eq!(back, min);
    }

    #[test]
    fn dangling_references_are_rejected() {
        let s = r#"{"vertices":[],"edges":[["A","B"]],"arrows":[]}"#;
        assert!(graph_from_json(s).is_err());
    }

    #[test]
    fn dot_contains_nodes_and_arrow_boxes() {
        let mut g = PlumbingGraph::chain(&[-2, -2]);
        g.add_arrow(Arrow {
            at: VertexId::new("E1"),
            label: "b".into(),
            mult: Some(1),
        })
        .unwrap();
        let dot = graph_to_dot(&g);
        assert!(dot.contains("\"E1\" [label=\"E1 (-2)\"]"));
        assert!(dot.contains("\"E1\" -- \"E2\""));
        assert!(dot.contains("shape=box"));
    }
}
