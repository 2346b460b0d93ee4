//! JSON interchange for graphs.

use serde::{Deserialize, Serialize};

use crate::rational::{format, parse};
use crate::{DecoratedGraph, Edge, GraphError, Vertex, VertexId, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: VertexId,
    pub kind: String,
    pub moment: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub a: VertexId,
    pub b: VertexId,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
}

impl From<&DecoratedGraph> for GraphDoc {
    fn from(g: &DecoratedGraph) -> Self {
        let vertices = g
            .vertices()
            .iter()
            .map(|v| match &v.kind {
                VertexKind::Point => VertexDoc {
                    id: v.id.clone(),
                    kind: "point".into(),
                    moment: format(&v.moment),
                    area: None,
                    genus: None,
                },
                VertexKind::Surface { area, genus } => VertexDoc {
                    id: v.id.clone(),
                    kind: "surface".into(),
                    moment: format(&v.moment),
                    area: Some(format(area)),
                    genus: Some(*genus),
                },
            })
            .collect();
        let edges = g.edges().iter().map(|e| EdgeDoc { a: e.a.clone(), b: e.b.clone(), k: e.weight }).collect();
        GraphDoc { vertices, edges }
    }
}

impl TryFrom<&GraphDoc> for DecoratedGraph {
    type Error = GraphError;

    fn try_from(doc: &GraphDoc) -> Result<Self, GraphError> {
        let mut vertices = Vec::new();
        for v in &doc.vertices {
            let moment = parse(&v.moment)?;
            let vertex = match v.kind.as_str() {
                "point" => {
                    if v.area.is_some() || v.genus.is_some() {
                        return Err(GraphError::Json(format!("point {} carries surface labels", v.id)));
                    }
                    Vertex::point(v.id.clone(), moment)
                }
                "surface" => {
                    let area =
                        v.area.as_deref().ok_or_else(|| GraphError::Json(format!("surface {} has no area", v.id)))?;
                    Vertex::surface(v.id.clone(), moment, parse(area)?, v.genus.unwrap_or(0))
                }
                other => return Err(GraphError::Json(format!("unknown vertex kind {:?}", other))),
            };
            vertices.push(vertex);
        }
        let edges = doc.edges.iter().map(|e| Edge::new(e.a.clone(), e.b.clone(), e.k)).collect();
        DecoratedGraph::new(vertices, edges)
    }
}

pub fn graph_to_json(g: &DecoratedGraph) -> String {
    serde_json::to_string_pretty(&GraphDoc::from(g)).expect("serializable")
}

pub fn graph_from_json(s: &str) -> Result<DecoratedGraph, GraphError> {
    let doc: GraphDoc = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
    DecoratedGraph::try_from(&doc)
}
