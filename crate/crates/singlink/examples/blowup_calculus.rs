//! Blow-up and blow-down rewriting, and reduction to the minimal model.
//!
//! ```sh
//! cargo run --example blowup_calculus
//! ```

use singlink::graph::PlumbingGraph;
use singlink::io::graph_to_json;
use singlink::moves::{blow_up_edge, blow_up_vertex, minimize};

fn main() {
    // start from the A_2 chain and scramble it with two blow-ups
    let a2 = PlumbingGraph::chain(&[-2, -2]);
    println!("start: det = {}", a2.determinant().unwrap());

    let (g, w1) = blow_up_edge(&a2, &"E1".into(), &"E2".into()).unwrap();
    println!(
        "after blowing up the edge: det = {}",
        g.determinant().unwrap()
    );

    let (g, _w2) = blow_up_vertex(&g, &w1).unwrap();
    println!("after blowing up {w1}: det = {}", g.determinant().unwrap());

    // reduce back down; the trail of certificates is replayable
    let (minimal, certificates) = minimize(&g).unwrap();
    println!(
        "minimize removed {} vertices; |det| is preserved: {}",
        certificates.len(),
        minimal.determinant().unwrap()
    );
    for c in &certificates {
        println!("  certificate: {}", serde_json::to_string(&c).unwrap());
    }
    println!("minimal graph:\n{}", graph_to_json(&minimal));
}
