//! Splicing externally supplied covering data: for a general finite
//! morphism the sheet structure and the singular-point types are inputs,
//! and the library performs the bamboo replacement and minimization.
//!
//! ```sh
//! cargo run --example covering_input
//! ```

use singlink::cover::{
    resolve_from_covering, CoverEdge, CoverEdgeKind, CoverVertex, CoveringGraph, PipelineOptions,
};
use singlink::graph::{PlumbingGraph, Vertex};
use singlink::io::graph_to_dot;

fn main() {
    // base: a single edge U - V; the covering identifies each component
    // once and declares the double point upstairs to be of type (5, 3)
    let mut base = PlumbingGraph::new();
    base.add_vertex(Vertex::new("U", 0, None)).unwrap();
    base.add_vertex(Vertex::new("V", 0, None)).unwrap();
    base.add_edge(&"U".into(), &"V".into()).unwrap();

    let covering = CoveringGraph {
        degree: 5,
        vertices: vec![
            CoverVertex {
                id: "U".into(),
                base: "U".into(),
                sheet: 0,
                genus: 0,
                degree: 1,
                mult: None,
            },
            CoverVertex {
                id: "V".into(),
                base: "V".into(),
                sheet: 0,
                genus: 0,
                degree: 1,
                mult: None,
            },
        ],
        edges: vec![CoverEdge {
            from: "U".into(),
            to: "V".into(),
            index: 0,
            kind: CoverEdgeKind::Hj { n: 5, q: 3 },
            germ: None,
        }],
        arrows: vec![],
    };

    let (resolved, minimal, certs) =
        resolve_from_covering(&base, &covering, PipelineOptions::default()).unwrap();
    println!(
        "spliced graph has {} vertices (bamboo of 5/3 = [2,3] inserted):",
        resolved.vertex_count()
    );
    println!("{}", graph_to_dot(&resolved));
    println!(
        "minimization without euler data leaves it alone: {} vertices, {} certificates",
        minimal.vertex_count(),
        certs.len()
    );
}
