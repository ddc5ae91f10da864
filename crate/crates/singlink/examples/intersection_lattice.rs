//! Intersection matrices, determinants and definiteness of plumbing
//! graphs, including graph I/O.
//!
//! ```sh
//! cargo run --example intersection_lattice
//! ```

use singlink::graph::{Arrow, PlumbingGraph, Vertex};
use singlink::io::{graph_from_json, graph_to_json};

fn main() {
    let bamboo = PlumbingGraph::chain(&[-3, -2, -3]);
    println!("bamboo (-3,-2,-3):");
    for row in bamboo.intersection_matrix().unwrap() {
        println!("  {row:?}");
    }
    println!("  determinant {}", bamboo.determinant().unwrap());
    println!(
        "  negative definite: {}, bamboo: {}",
        bamboo.is_negative_definite().unwrap(),
        bamboo.is_bamboo()
    );

    // a star-shaped graph with a central rupture vertex
    let mut star = PlumbingGraph::chain(&[-2, -2, -2]);
    star.add_vertex(Vertex::new("E4", 0, Some(-3))).unwrap();
    star.add_edge(&"E2".into(), &"E4".into()).unwrap();
    star.add_arrow(Arrow {
        at: "E4".into(),
        label: "branch".into(),
        mult: Some(1),
    })
    .unwrap();
    println!(
        "\nstar: rupture at E2: {}, at E1: {}",
        star.is_rupture_vertex(&"E2".into()).unwrap(),
        star.is_rupture_vertex(&"E1".into()).unwrap()
    );

    // the JSON schema round-trips exactly
    let json = graph_to_json(&star);
    assert_eq!(graph_from_json(&json).unwrap(), star);
    println!("\nserialized:\n{json}");
}
