//! Independent oracles.
//!
//! The Hirzebruch-Jung reduction of local germs is validated against a
//! convex-hull walk over the actual lattice points: the resolution rays of
//! the cone are exactly the vertices of the boundary polyline of the convex
//! hull of the nonzero lattice points in the cone, and the weights are
//! forced by the chain relation between consecutive rays. The hull is
//! computed here from scratch, with no continued fractions involved.
//!
//! Exact linear algebra is validated against a naive cofactor determinant
//! and, for definiteness, against exhaustive principal-minor sign checks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singlink::graph::{PlumbingGraph, Vertex, VertexId};
use singlink::local_model::LocalModel;

/// Boundary polyline of the convex hull of the nonzero points of
/// `{(p, r) : pa + rb = 0 mod d}` in the first quadrant, from the x-side
/// primitive ray to the y-side primitive ray.
fn hull_polyline(d: i128, a: i128, b: i128) -> Vec<(i64, i64)> {
    let r_max = 2 * d + 2;
    let mut pts: Vec<(i128, i128)> = Vec::new();
    for p in 0..=r_max {
        for r in 0..=r_max {
            if (p, r) != (0, 0) && (p * a + r * b) % d == 0 {
                pts.push((p, r));
            }
        }
    }
    // Andrew monotone chain over the nonzero lattice points, keeping
    // collinear boundary points (they are resolution rays too); the
    // lexicographically smallest point is the y-side primitive ray, and
    // the lower hull runs from it through the inner polyline to the x-side
    // ray before shooting off along the p-axis.
    pts.sort();
    let cross = |o: (i128, i128), x: (i128, i128), y: (i128, i128)| -> i128 {
        (x.0 - o.0) * (y.1 - o.1) - (x.1 - o.1) * (y.0 - o.0)
    };
    let mut lower: Vec<(i128, i128)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) < 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut out = Vec::new();
    for p in lower {
        out.push((p.0 as i64, p.1 as i64));
        if p.1 == 0 {
            break;
        }
    }
    out.reverse();
    out
}

#[test]
fn hull_walk_reproduces_the_lattice_reduction() {
    for d in 1..=8u64 {
        for a in 1..=8u64 {
            for b in 1..=8u64 {
                let model = LocalModel::new(d, a, b).unwrap();
                let germ = model.resolve().unwrap();
                let c = model.component();
                let hull = hull_polyline(c.d as i128, c.a as i128, c.b as i128);

                // the hull walk must start and end at the primitive rays
                // and agree with the computed resolution rays in between
                assert_eq!(
                    germ.rays, hull,
                    "rays differ for z^{d} = x^{a} y^{b} (component z^{} = x^{} y^{})",
                    c.d, c.a, c.b
                );

                // weights forced by the chain relation must match the
                // continued-fraction bamboo
                let mut weights = Vec::new();
                for i in 1..hull.len().saturating_sub(1) {
                    let (px, rx) = hull[i - 1];
                    let (pm, rm) = hull[i];
                    let (py, ry) = hull[i + 1];
                    let w = if pm != 0 {
                        (px + py) / pm
                    } else {
                        (rx + ry) / rm
                    };
                    assert_eq!(px + py, w * pm);
                    assert_eq!(rx + ry, w * rm);
                    weights.push(w as u64);
                }
                assert_eq!(
                    weights,
                    germ.bamboo.weights(),
                    "weights differ for z^{d} = x^{a} y^{b}"
                );
            }
        }
    }
}

#[test]
fn hull_walk_on_tracked_germs() {
    // b = 0: the lattice is (d/gcd) Z x Z and the hull edge is straight
    for d in 2..=8u64 {
        for a in 1..=8u64 {
            let germ = LocalModel::new(d, a, 0).unwrap().resolve().unwrap();
            assert!(germ.hj.is_none());
            assert!(germ.bamboo.is_empty());
        }
    }
}

fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<BigInt>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det_cofactor(&sub);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_v: usize) -> PlumbingGraph {
    let n = rng.gen_range(1..=max_v);
    let mut g = PlumbingGraph::new();
    for i in 0..n {
        let genus = if rng.gen_bool(0.15) { 1 } else { 0 };
        let euler = rng.gen_range(-6..=-1);
        g.add_vertex(Vertex::new(format!("V{i}"), genus, Some(euler)))
            .unwrap();
    }
    // random spanning tree plus occasional extra edges
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(
            &VertexId::new(format!("V{i}")),
            &VertexId::new(format!("V{j}")),
        )
        .unwrap();
    }
    for _ in 0..n / 3 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            g.add_edge(
                &VertexId::new(format!("V{i}")),
                &VertexId::new(format!("V{j}")),
            )
            .unwrap();
        }
    }
    g
}

#[test]
fn bareiss_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let g = random_graph(&mut rng, 8);
        let m = g.intersection_matrix().unwrap();
        assert_eq!(g.determinant().unwrap(), det_cofactor(&m));
    }
}

#[test]
fn matrices_are_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 8);
        let m = g.intersection_matrix().unwrap();
        for i in 0..m.len() {
            for j in 0..m.len() {
                assert_eq!(m[i][j], m[j][i]);
            }
        }
    }
}

#[test]
fn definiteness_matches_exhaustive_minor_signs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..400 {
        let g = random_graph(&mut rng, 6);
        let m = g.intersection_matrix().unwrap();
        let n = m.len();
        // negative definite iff every principal minor of size k has sign
        // (-1)^k
        let mut expected = true;
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let sub: Vec<Vec<BigInt>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            let det = det_cofactor(&sub);
            let want_positive = idx.len() % 2 == 0;
            let ok = if want_positive {
                det.is_positive()
            } else {
                det.is_negative()
            };
            if !ok {
                expected = false;
                break;
            }
        }
        assert_eq!(
            g.is_negative_definite().unwrap(),
            expected,
            "disagreement on {:?}",
            m
        );
    }
}
