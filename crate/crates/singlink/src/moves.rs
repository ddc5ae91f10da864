//! Blow-up / blow-down rewriting on plumbing graphs and reduction to the
//! minimal good resolution.
//!
//! Blowing up a point on an exceptional component inserts a new genus-0,
//! euler -1 vertex and decrements the self-intersections of the components
//! through the point. Blowing down removes such a vertex again. Arrows count
//! toward the contractibility degree: the minimal *good* resolution keeps
//! the total transform a normal crossing divisor, so a (-1)-vertex carrying
//! an arrow and two edges is never contracted, and configurations whose
//! contraction would create a self-loop or merge two strict transforms into
//! a tangency are rejected rather than modelled.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Arrow, GraphError, PlumbingGraph, Vertex, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {0}-{1} does not exist")]
    UnknownEdge(VertexId, VertexId),
    #[error("no arrow with label {0:?}")]
    UnknownArrow(String),
    #[error("blow-up of a self-loop is not supported")]
    SelfLoopUnsupported,
    #[error("vertex {0} is not contractible")]
    NotContractible(VertexId),
    #[error("contracting {0} would create a self-loop")]
    SelfLoopWouldForm(VertexId),
    #[error("contracting {0} would merge transforms into a tangency")]
    TangencyWouldForm(VertexId),
    #[error("graph has {0} vertices, isomorphism search is limited to {1}")]
    TooLarge(usize, usize),
}

/// Replayable record of one blow-down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowDownCertificate {
    pub removed: VertexId,
    /// (vertex, new euler number) for every former neighbor.
    pub neighbor_updates: Vec<(VertexId, i64)>,
    /// Edge added between the two former neighbors, if there were two.
    pub added_edge: Option<(VertexId, VertexId)>,
}

fn fresh_vertex_id(g: &PlumbingGraph) -> VertexId {
    let mut k = g.vertex_count() + 1;
    loop {
        let id = VertexId::new(format!("N{k}"));
        if !g.contains(&id) {
            return id;
        }
        k += 1;
    }
}

fn decrement_euler(g: &mut PlumbingGraph, v: &VertexId) -> Result<(), MoveError> {
    let e = g.euler_of(v)?;
    g.vertex_mut(v).expect("checked").euler = Some(e - 1);
    Ok(())
}

/// Blow up a point of `v` away from the other components: new (-1)-vertex
/// joined to `v`, euler(v) drops by one. Returns the graph and the new id.
pub fn blow_up_vertex(
    g: &PlumbingGraph,
    v: &VertexId,
) -> Result<(PlumbingGraph, VertexId), MoveError> {
    let mut out = g.clone();
    out.euler_of(v)?;
    let w = fresh_vertex_id(&out);
    out.add_vertex(Vertex::new(w.as_str(), 0, Some(-1)))
        .expect("fresh id");
    decrement_euler(&mut out, v)?;
    out.add_edge(v, &w).expect("endpoints exist");
    Ok((out, w))
}

/// Blow up the intersection point represented by an edge `u - v`: the edge
/// is replaced by `u - w - v` with `w` a fresh (-1)-vertex, and both old
/// endpoints lose one from their euler numbers.
pub fn blow_up_edge(
    g: &PlumbingGraph,
    u: &VertexId,
    v: &VertexId,
) -> Result<(PlumbingGraph, VertexId), MoveError> {
    if u == v {
        return Err(MoveError::SelfLoopUnsupported);
    }
    if g.edges_between(u, v) == 0 {
        return Err(MoveError::UnknownEdge(u.clone(), v.clone()));
    }
    let mut out = g.clone();
    out.euler_of(u)?;
    out.euler_of(v)?;
    let w = fresh_vertex_id(&out);
    out.remove_one_edge(u, v);
    out.add_vertex(Vertex::new(w.as_str(), 0, Some(-1)))
        .expect("fresh id");
    decrement_euler(&mut out, u)?;
    decrement_euler(&mut out, v)?;
    out.add_edge(u, &w).expect("endpoints exist");
    out.add_edge(&w, v).expect("endpoints exist");
    Ok((out, w))
}

/// Blow up the point where the strict transform marked by `label` meets its
/// component: the arrow moves to a fresh (-1)-vertex joined to the old one.
pub fn blow_up_arrow(
    g: &PlumbingGraph,
    label: &str,
) -> Result<(PlumbingGraph, VertexId), MoveError> {
    let arrow = g
        .arrows()
        .iter()
        .find(|a| a.label == label)
        .cloned()
        .ok_or_else(|| MoveError::UnknownArrow(label.to_owned()))?;
    let mut out = g.clone();
    out.euler_of(&arrow.at)?;
    let w = fresh_vertex_id(&out);
    out.add_vertex(Vertex::new(w.as_str(), 0, Some(-1)))
        .expect("fresh id");
    decrement_euler(&mut out, &arrow.at)?;
    out.add_edge(&arrow.at, &w).expect("endpoints exist");
    // move the arrow
    let mut moved = arrow.clone();
    moved.at = w.clone();
    let arrows: Vec<Arrow> = out
        .arrows()
        .iter()
        .filter(|a| **a != arrow)
        .cloned()
        .collect();
    let mut rebuilt = PlumbingGraph::new();
    for v in out.vertices() {
        rebuilt.add_vertex(v.clone()).expect("copy");
    }
    for (a, b) in out.edges() {
        rebuilt.add_edge(a, b).expect("copy");
    }
    for a in arrows {
        rebuilt.add_arrow(a).expect("copy");
    }
    rebuilt.add_arrow(moved).expect("target exists");
    for f in out.free_arrows() {
        rebuilt.add_free_arrow(f.clone());
    }
    Ok((rebuilt, w))
}

/// Checks whether `v` may be blown down and reports the reason when not.
fn check_contractible(g: &PlumbingGraph, v: &VertexId) -> Result<(), MoveError> {
    let vx = g
        .vertex(v)
        .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
    let e = g.euler_of(v)?;
    let edge_deg = g.edge_degree(v);
    let arrows = g.arrow_count_at(v);
    if vx.genus != 0 || e != -1 || edge_deg + arrows > 2 {
        return Err(MoveError::NotContractible(v.clone()));
    }
    if g.self_loop_count(v) > 0 {
        return Err(MoveError::SelfLoopWouldForm(v.clone()));
    }
    if edge_deg == 2 {
        let n = g.neighbor_counts(v);
        if n.len() < 2 {
            return Err(MoveError::SelfLoopWouldForm(v.clone()));
        }
    }
    if arrows == 2 {
        return Err(MoveError::TangencyWouldForm(v.clone()));
    }
    Ok(())
}

/// Blow down a genus-0, euler -1 vertex of total degree at most two.
///
/// Every former neighbor gains one on its euler number; two edge-neighbors
/// get joined by a new edge; an arrow at the contracted vertex moves to the
/// edge-neighbor, or becomes a free arrow when there is none (a smooth germ
/// with a marked smooth curve).
pub fn blow_down(
    g: &PlumbingGraph,
    v: &VertexId,
) -> Result<(PlumbingGraph, BlowDownCertificate), MoveError> {
    check_contractible(g, v)?;
    let mut out = g.clone();
    let neighbors: Vec<VertexId> = out
        .neighbor_counts(v)
        .iter()
        .flat_map(|(id, n)| std::iter::repeat_n((*id).clone(), *n))
        .collect();
    let moved_arrows = out.remove_vertex(v).expect("exists");
    let mut updates = Vec::new();
    for n in &neighbors {
        let e = out.euler_of(n)?;
        out.vertex_mut(n).expect("neighbor").euler = Some(e + 1);
    }
    for n in &neighbors {
        let e = out.euler_of(n)?;
        if !updates.iter().any(|(id, _)| id == n) {
            updates.push((n.clone(), e));
        }
    }
    let added_edge = if neighbors.len() == 2 {
        out.add_edge(&neighbors[0], &neighbors[1])
            .expect("endpoints exist");
        Some((neighbors[0].clone(), neighbors[1].clone()))
    } else {
        None
    };
    for a in moved_arrows {
        match neighbors.first() {
            Some(n) => out
                .add_arrow(Arrow {
                    at: n.clone(),
                    label: a.label,
                    mult: a.mult,
                })
                .expect("neighbor exists"),
            None => out.add_free_arrow(crate::graph::FreeArrow {
                label: a.label,
                mult: a.mult,
            }),
        }
    }
    Ok((
        out,
        BlowDownCertificate {
            removed: v.clone(),
            neighbor_updates: updates,
            added_edge,
        },
    ))
}

/// Repeatedly blow down eligible vertices (lowest id first) until none
/// remains. Requires every euler number to be known.
pub fn minimize(g: &PlumbingGraph) -> Result<(PlumbingGraph, Vec<BlowDownCertificate>), MoveError> {
    for v in g.vertices() {
        if v.euler.is_none() {
            return Err(GraphError::UnknownEulerNumber(v.id.clone()).into());
        }
    }
    let mut cur = g.clone();
    let mut trail = Vec::new();
    loop {
        let candidate = cur
            .vertex_ids()
            .find(|v| check_contractible(&cur, v).is_ok())
            .cloned();
        match candidate {
            Some(v) => {
                let (next, cert) = blow_down(&cur, &v)?;
                cur = next;
                trail.push(cert);
            }
            None => return Ok((cur, trail)),
        }
    }
}

/// Options for [`are_isomorphic_ext`].
#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    pub compare_weights: bool,
    pub compare_arrow_labels: bool,
    pub max_vertices: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            compare_weights: false,
            compare_arrow_labels: false,
            max_vertices: 16,
        }
    }
}

/// Graph isomorphism preserving genus, edge multiplicities and per-vertex
/// arrow counts; euler numbers too when `compare_weights` is set.
pub fn are_isomorphic(
    g1: &PlumbingGraph,
    g2: &PlumbingGraph,
    compare_weights: bool,
) -> Result<bool, MoveError> {
    are_isomorphic_ext(
        g1,
        g2,
        IsoOptions {
            compare_weights,
            ..IsoOptions::default()
        },
    )
}

/// Per-vertex invariant used both for pruning and for the final check.
fn vertex_key(
    g: &PlumbingGraph,
    v: &VertexId,
    opts: &IsoOptions,
) -> (u32, usize, Vec<String>, Option<i64>) {
    let vx = g.vertex(v).expect("vertex exists");
    let mut arrow_labels: Vec<String> = g
        .arrows()
        .iter()
        .filter(|a| &a.at == v)
        .map(|a| {
            if opts.compare_arrow_labels {
                a.label.clone()
            } else {
                String::new()
            }
        })
        .collect();
    arrow_labels.sort();
    let euler = if opts.compare_weights { vx.euler } else { None };
    (vx.genus, g.edge_degree(v), arrow_labels, euler)
}

pub fn are_isomorphic_ext(
    g1: &PlumbingGraph,
    g2: &PlumbingGraph,
    opts: IsoOptions,
) -> Result<bool, MoveError> {
    let n = g1.vertex_count();
    if n.max(g2.vertex_count()) > opts.max_vertices {
        return Err(MoveError::TooLarge(
            n.max(g2.vertex_count()),
            opts.max_vertices,
        ));
    }
    if n != g2.vertex_count()
        || g1.edge_count() != g2.edge_count()
        || g1.arrows().len() != g2.arrows().len()
        || g1.free_arrows().len() != g2.free_arrows().len()
    {
        return Ok(false);
    }
    let ids1: Vec<VertexId> = g1.vertex_ids().cloned().collect();
    let ids2: Vec<VertexId> = g2.vertex_ids().cloned().collect();
    let keys1: Vec<_> = ids1.iter().map(|v| vertex_key(g1, v, &opts)).collect();
    let keys2: Vec<_> = ids2.iter().map(|v| vertex_key(g2, v, &opts)).collect();
    {
        let mut s1 = keys1.clone();
        let mut s2 = keys2.clone();
        s1.sort();
        s2.sort();
        if s1 != s2 {
            return Ok(false);
        }
    }

    // backtracking over key-compatible assignments, checking adjacency
    // multiplicities incrementally
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        pos: usize,
        ids1: &[VertexId],
        ids2: &[VertexId],
        keys1: &[(u32, usize, Vec<String>, Option<i64>)],
        keys2: &[(u32, usize, Vec<String>, Option<i64>)],
        g1: &PlumbingGraph,
        g2: &PlumbingGraph,
        assign: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == ids1.len() {
            return true;
        }
        for cand in 0..ids2.len() {
            if used[cand] || keys1[pos] != keys2[cand] {
                continue;
            }
            // adjacency with already assigned vertices must match
            let ok = (0..pos).all(|p| {
                let img = assign[p].expect("assigned");
                g1.edges_between(&ids1[pos], &ids1[p]) == g2.edges_between(&ids2[cand], &ids2[img])
            }) && g1.self_loop_count(&ids1[pos]) == g2.self_loop_count(&ids2[cand]);
            if !ok {
                continue;
            }
            assign[pos] = Some(cand);
            used[cand] = true;
            if backtrack(pos + 1, ids1, ids2, keys1, keys2, g1, g2, assign, used) {
                return true;
            }
            assign[pos] = None;
            used[cand] = false;
        }
        false
    }

    Ok(backtrack(
        0,
        &ids1,
        &ids2,
        &keys1,
        &keys2,
        g1,
        g2,
        &mut assign,
        &mut used,
    ))
}
