//! Curlings, identifications and pinched solid tori along a singular
//! locus.
//!
//! ```sh
//! cargo run --example normalization_links
//! ```

use singlink::normalization::{
    compose_curlings_and_identifications, hyperplane_branch_count, is_manifold_link,
    models_homeomorphic, pinched_model, BranchCoverData,
};

fn main() {
    // one branch upstairs of covering degree d: the d-curling
    for d in [1u64, 2, 4] {
        let data = BranchCoverData::new(vec![d]).unwrap();
        let model = pinched_model(&data);
        println!(
            "degree ({d}): k = {}, cycle type {:?}, quotient steps {}",
            model.k,
            model.cycle_type,
            serde_json::to_string(&compose_curlings_and_identifications(&data).steps).unwrap()
        );
    }

    // two components of degrees 2 and 3 over one branch
    let data = BranchCoverData::new(vec![2, 3]).unwrap();
    println!(
        "degrees (2,3): k = {}, steps {}",
        hyperplane_branch_count(&data),
        serde_json::to_string(&compose_curlings_and_identifications(&data).steps).unwrap()
    );

    // classification is by cycle type only
    let a = pinched_model(&BranchCoverData::new(vec![2, 3]).unwrap());
    let b = pinched_model(&BranchCoverData::new(vec![3, 2]).unwrap());
    let c = pinched_model(&BranchCoverData::new(vec![5]).unwrap());
    println!(
        "(2,3) vs (3,2): homeomorphic: {}",
        models_homeomorphic(&a, &b)
    );
    println!(
        "(2,3) vs (5):   homeomorphic: {}",
        models_homeomorphic(&a, &c)
    );

    // the link is a manifold iff every hyperplane section is irreducible
    let branches = [
        BranchCoverData::new(vec![1]).unwrap(),
        BranchCoverData::new(vec![2]).unwrap(),
    ];
    println!(
        "branches with section counts {:?}: manifold link: {}",
        branches
            .iter()
            .map(hyperplane_branch_count)
            .collect::<Vec<_>>(),
        is_manifold_link(&branches)
    );
}
