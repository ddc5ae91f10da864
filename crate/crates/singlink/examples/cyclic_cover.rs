//! The full resolution pipeline for a double cover `z^2 = f(x, y)` with a
//! three-branch discriminant, stage by stage.
//!
//! ```sh
//! cargo run --example cyclic_cover
//! ```

use singlink::cover::{resolve_cyclic, CoverEdgeKind, PipelineOptions};
use singlink::puiseux::{parse_rational, Axis, PuiseuxBranch};

fn q(s: &str) -> num_rational::BigRational {
    parse_rational(s).unwrap()
}

fn main() {
    let branches = vec![
        PuiseuxBranch::series(vec![(q("1"), q("1")), (q("2"), q("-1"))], 1, "delta_1").unwrap(),
        PuiseuxBranch::series(vec![(q("1"), q("1")), (q("3"), q("-1"))], 1, "delta_2").unwrap(),
        PuiseuxBranch::series(vec![(q("1"), q("1")), (q("34/13"), q("1"))], 1, "delta_3").unwrap(),
        PuiseuxBranch::tracked_axis(Axis::X, "x_axis"),
    ];
    let report = resolve_cyclic(&branches, 2, PipelineOptions::default()).unwrap();

    println!("base resolution (multiplicities of the total transform):");
    for v in report.base.graph.vertices() {
        println!(
            "  {}: euler {}, mult {}",
            v.id,
            v.euler.unwrap(),
            v.mult.unwrap()
        );
    }

    println!(
        "\ncovering: {} sheets over {} base components",
        report.covering.vertices.len(),
        report.base.graph.vertex_count()
    );
    for e in &report.covering.edges {
        if let CoverEdgeKind::Hj { n, q } = e.kind {
            println!("  singular point over {}-{}: type ({n},{q})", e.from, e.to);
        }
    }
    for a in &report.covering.arrows {
        if let CoverEdgeKind::Hj { n, q } = a.kind {
            println!(
                "  singular point under arrow {} at {}: type ({n},{q})",
                a.label, a.at
            );
        }
    }

    println!("\nresolved cover:");
    for v in report.resolved.vertices() {
        println!("  {}: euler {}", v.id, v.euler.unwrap());
    }
    println!(
        "  {} vertices, one cycle: {}, negative definite: {}",
        report.resolved.vertex_count(),
        report.resolved.edge_count() == report.resolved.vertex_count(),
        report.resolved.is_negative_definite().unwrap(),
    );

    println!(
        "\nminimal model: {} vertices",
        report.minimal.vertex_count()
    );
    for c in &report.certificates {
        println!("  blow-down: {}", serde_json::to_string(c).unwrap());
    }
}
