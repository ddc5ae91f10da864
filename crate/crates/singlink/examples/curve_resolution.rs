//! Minimal embedded resolution of plane curve germs from Puiseux data.
//!
//! ```sh
//! cargo run --example curve_resolution
//! ```

use singlink::curve::{resolve_curve, CurveOptions};
use singlink::io::graph_to_dot;
use singlink::puiseux::{parse_rational, Axis, PuiseuxBranch};

fn q(s: &str) -> num_rational::BigRational {
    parse_rational(s).unwrap()
}

fn main() {
    // the cusp x^2 = y^3, entered as the branch x = y^(3/2)
    let cusp = PuiseuxBranch::series(vec![(q("3/2"), q("1"))], 1, "cusp").unwrap();
    let r = resolve_curve(&[cusp], CurveOptions::default()).unwrap();
    println!("cusp x^2 = y^3:");
    for v in r.graph.vertices() {
        println!(
            "  {}: euler {}, multiplicity {}",
            v.id,
            v.euler.unwrap(),
            v.mult.unwrap()
        );
    }
    println!(
        "  arrow at {} (transverse: {})",
        r.placements[0].at, r.placements[0].transverse
    );

    // three pairwise tangent branches plus the tracked x-axis
    let branches = vec![
        PuiseuxBranch::series(vec![(q("1"), q("1")), (q("2"), q("-1"))], 1, "delta_1").unwrap(),
        PuiseuxBranch::series(vec![(q("1"), q("1")), (q("3"), q("-1"))], 1, "delta_2").unwrap(),
        PuiseuxBranch::series(vec![(q("1"), q("1")), (q("34/13"), q("1"))], 1, "delta_3").unwrap(),
        PuiseuxBranch::tracked_axis(Axis::X, "x_axis"),
    ];
    let r = resolve_curve(&branches, CurveOptions::default()).unwrap();
    println!(
        "\nthree tangent branches: {} exceptional components, |det| = {}",
        r.graph.vertex_count(),
        r.graph.determinant().unwrap()
    );
    println!("{}", graph_to_dot(&r.graph));
}
