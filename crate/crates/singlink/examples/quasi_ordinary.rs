//! Minimal resolutions and links of the quasi-ordinary family
//! `z^n = x y^q`.
//!
//! ```sh
//! cargo run --example quasi_ordinary
//! ```

use singlink::lens::{
    lens_equivalent, lens_of_quasi_ordinary, quasi_ordinary_line_blowup_length,
    resolve_quasi_ordinary,
};

fn main() {
    println!("singularity      bamboo          link        components by line blow-ups");
    for (n, q) in [(2, 1), (5, 1), (5, 4), (7, 5), (9, 7), (12, 5), (11, 4)] {
        let bamboo = resolve_quasi_ordinary(n, q).unwrap();
        let lens = lens_of_quasi_ordinary(n, q).unwrap();
        let count = quasi_ordinary_line_blowup_length(n, q).unwrap();
        println!(
            "z^{n:<2} = x y^{q:<2}   {:<15} {:<11} {count}",
            bamboo.to_string(),
            lens.to_string(),
        );
        assert_eq!(bamboo.len() as u64, count);
    }

    // the two classification edge cases
    let a = lens_of_quasi_ordinary(7, 5).unwrap(); // L(7,2)
    let b = singlink::lens::LensParams::new(7, 4).unwrap();
    println!(
        "\nL(7,2) vs L(7,4): oriented homeomorphic: {} (2*4 = 1 mod 7)",
        lens_equivalent(&a, &b, true)
    );
    let c = singlink::lens::LensParams::new(7, 5).unwrap();
    println!(
        "L(7,2) vs L(7,5): oriented {}, unoriented {}",
        lens_equivalent(&a, &c, true),
        lens_equivalent(&a, &c, false)
    );
}
