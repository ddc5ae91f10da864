//! Negative continued fractions and their bamboos.
//!
//! ```sh
//! cargo run --example hj_fractions
//! ```

use singlink::lens::{hj_evaluate, hj_expand, lens_of_bamboo};

fn main() {
    for (n, q) in [(12, 5), (7, 1), (5, 3), (12, 7), (25, 18)] {
        let bamboo = hj_expand(n, q).expect("coprime input");
        let (back_n, back_q) = hj_evaluate(&bamboo).unwrap();
        let lens = lens_of_bamboo(&bamboo).unwrap();
        println!(
            "{n}/{q} = {bamboo}  (evaluates back to {back_n}/{back_q}, plumbing boundary {lens})"
        );

        let graph = bamboo.to_graph();
        println!(
            "  as a graph: {} vertices, det = {}, negative definite: {}",
            graph.vertex_count(),
            graph.determinant().unwrap(),
            graph.is_negative_definite().unwrap(),
        );
    }
}
