//! Resolution pipeline for cyclic covers `z^d = f(x, y)`: covering graph
//! over the embedded resolution of `f`, bamboo splicing at the singular
//! points upstairs, Euler number assignment, and minimization.
//!
//! Over a base component of multiplicity `m` the covering has
//! `gcd(d, m, all adjacent multiplicities)` sheets, each covering the
//! component with the complementary degree; this follows from the covering
//! of the punctured component being classified by the adjacent
//! multiplicities modulo `d`. Genera come from an exact Euler
//! characteristic count. A double point with multiplicities `(m_u, m_v)`
//! carries `gcd(d, m_u, m_v)` points upstairs, each an irreducible cyclic
//! germ `z^(d/t) = x^(m_u/t) y^(m_v/t)`; nontrivial germs are
//! Hirzebruch-Jung singularities and get replaced by their bamboos. Euler
//! numbers are then the unique solutions of the divisor balancing equations
//! `m_w e_w + sum of adjacent multiplicities = 0`, with any non-integral
//! solution reported as a hard error.
//!
//! Sheets and edge points carry canonical residue labels: sheet `j` over a
//! vertex is the class `j mod s_v`, the points over a double point are the
//! classes mod `gcd(d, m_u, m_v)`, and incidence is reduction of residues.
//! For a tree base (which is what the curve resolver produces) this is the
//! covering, with no residual gauge freedom.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{resolve_curve, CurveError, CurveOptions, CurveResolution};
use crate::graph::{Arrow, GraphError, PlumbingGraph, Vertex, VertexId};
use crate::local_model::{LocalModel, LocalModelError};
use crate::moves::{minimize, BlowDownCertificate, MoveError};
use crate::puiseux::PuiseuxBranch;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    LocalModel(#[from] LocalModelError),
    #[error("vertex {0} is missing a multiplicity")]
    MissingMultiplicity(VertexId),
    #[error("cover degree must be at least 2")]
    NonPositiveDegree,
    #[error("balancing at {vertex} gives the non-integral euler number {num}/{den}")]
    NonIntegralSolution {
        vertex: VertexId,
        num: i128,
        den: u64,
    },
    #[error("euler number at {0} overflows")]
    EulerOverflow(VertexId),
    #[error("invalid covering data: {0}")]
    InvalidCoveringData(String),
    #[error(
        "branch {label:?} of weight {weight} lifts to {upstairs} components but meets \
         the exceptional divisor in {at_corner}; the cover is not normal crossing there"
    )]
    BranchLiftNotNormalCrossing {
        label: String,
        weight: u64,
        upstairs: u64,
        at_corner: u64,
    },
    #[error("invalid Hirzebruch-Jung edge parameters ({0}, {1})")]
    InvalidHJParams(u64, u64),
    #[error("graph has a self-loop at {0}, balancing is not defined")]
    SelfLoop(VertexId),
}

/// How one point upstairs over a double point (or arrow point) looks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverEdgeKind {
    /// Normal crossing upstairs; splices to a plain edge.
    Smooth,
    /// Hirzebruch-Jung singularity of type `(n, q)`, read from the side of
    /// the `from` endpoint; splices to the bamboo of `n/q`.
    Hj { n: u64, q: u64 },
}

/// One sheet over a base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverVertex {
    pub id: VertexId,
    pub base: VertexId,
    pub sheet: u64,
    pub genus: u32,
    /// Degree of the covering of the base component by this sheet.
    pub degree: u64,
    /// Multiplicity of the pulled-back function along the sheet.
    pub mult: Option<u64>,
}

/// One point upstairs over a double point of the base divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEdge {
    pub from: VertexId,
    pub to: VertexId,
    /// Residue label of the point over the double point.
    pub index: u64,
    pub kind: CoverEdgeKind,
    /// The local germ `z^d = x^a y^b` (before component splitting), with
    /// `a` on the `from` side. Present when produced by [`cover_graph`];
    /// user-supplied coverings may omit it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub germ: Option<(u64, u64, u64)>,
}

/// A lift of a base arrow to one sheet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverArrow {
    pub at: VertexId,
    pub label: String,
    pub index: u64,
    pub kind: CoverEdgeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub germ: Option<(u64, u64, u64)>,
    /// Multiplicity of the pulled-back function along the lifted branch;
    /// `None` for tracked arrows.
    pub mult: Option<u64>,
}

/// Ramified covering of graphs over a base resolution graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringGraph {
    pub degree: u64,
    pub vertices: Vec<CoverVertex>,
    pub edges: Vec<CoverEdge>,
    pub arrows: Vec<CoverArrow>,
}

impl CoveringGraph {
    pub fn vertex(&self, id: &VertexId) -> Option<&CoverVertex> {
        self.vertices.iter().find(|v| &v.id == id)
    }
}

fn gcd_with(d: u64, x: u64) -> u64 {
    if x == 0 {
        d
    } else {
        d.gcd(&x)
    }
}

fn sheet_id(base: &VertexId, sheet: u64, sheets: u64) -> VertexId {
    if sheets == 1 {
        base.clone()
    } else {
        VertexId::new(format!("{}({})", base, sheet + 1))
    }
}

fn mult_of(g: &PlumbingGraph, v: &VertexId) -> Result<u64, PipelineError> {
    g.vertex(v)
        .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?
        .mult
        .ok_or_else(|| PipelineError::MissingMultiplicity(v.clone()))
}

/// Builds the covering graph of the `d`-fold cyclic cover branched along
/// the resolved divisor. Requires a tree base with multiplicities on every
/// vertex, which is what [`resolve_curve`] produces.
pub fn cover_graph(base: &CurveResolution, d: u64) -> Result<CoveringGraph, PipelineError> {
    if d < 2 {
        return Err(PipelineError::NonPositiveDegree);
    }
    let g = &base.graph;

    // adjacent multiplicities per vertex: edge neighbors and arrows
    // (tracked arrows contribute nothing, encoded as 0)
    let mut sheets: BTreeMap<VertexId, u64> = BTreeMap::new();
    let mut degrees: BTreeMap<VertexId, u64> = BTreeMap::new();
    for v in g.vertices() {
        let m = mult_of(g, &v.id)?;
        let mut s = d.gcd(&m);
        for n in g.neighbor_counts(&v.id).keys() {
            s = gcd_with(s, mult_of(g, n)?);
        }
        for a in g.arrows().iter().filter(|a| a.at == v.id) {
            s = gcd_with(s, a.mult.unwrap_or(0));
        }
        let ram = d.gcd(&m);
        degrees.insert(v.id.clone(), ram / s);
        sheets.insert(v.id.clone(), s);
    }

    // edge points upstairs
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if u == v {
            return Err(PipelineError::SelfLoop(u.clone()));
        }
        let (a, b) = (mult_of(g, u)?, mult_of(g, v)?);
        let t = d.gcd(&a).gcd(&b);
        let model = LocalModel::new(d, a, b)?;
        let germ = model.resolve()?;
        debug_assert_eq!(germ.components, t);
        let kind = match germ.hj {
            Some((n, q)) => CoverEdgeKind::Hj { n, q },
            None => CoverEdgeKind::Smooth,
        };
        for j in 0..t {
            edges.push(CoverEdge {
                from: sheet_id(u, j % sheets[u], sheets[u]),
                to: sheet_id(v, j % sheets[v], sheets[v]),
                index: j,
                kind: kind.clone(),
                germ: Some((d, a, b)),
            });
        }
    }

    // arrow lifts
    let mut arrows = Vec::new();
    for arrow in g.arrows() {
        let m = mult_of(g, &arrow.at)?;
        let w = arrow.mult.unwrap_or(0);
        let t = gcd_with(d.gcd(&m), w);
        // the strict transform upstairs has gcd(d, w) components; they are
        // plain arrows only when each passes through its own corner point
        if w > 0 && d.gcd(&w) != t {
            return Err(PipelineError::BranchLiftNotNormalCrossing {
                label: arrow.label.clone(),
                weight: w,
                upstairs: d.gcd(&w),
                at_corner: t,
            });
        }
        let model = LocalModel::new(d, m, w)?;
        let germ = model.resolve()?;
        debug_assert_eq!(germ.components, t);
        let kind = match germ.hj {
            Some((n, q)) => CoverEdgeKind::Hj { n, q },
            None => CoverEdgeKind::Smooth,
        };
        let lifted_mult = (w > 0).then(|| germ.y_side_mult(m, w));
        for j in 0..t {
            arrows.push(CoverArrow {
                at: sheet_id(&arrow.at, j % sheets[&arrow.at], sheets[&arrow.at]),
                label: if t == 1 {
                    arrow.label.clone()
                } else {
                    format!("{}({})", arrow.label, j + 1)
                },
                index: j,
                kind: kind.clone(),
                germ: Some((d, m, w)),
                mult: lifted_mult,
            });
        }
    }

    // sheets with genera from the Euler characteristic count
    let mut vertices = Vec::new();
    for v in g.vertices() {
        let m = mult_of(g, &v.id)?;
        let s = sheets[&v.id];
        let deg = degrees[&v.id];
        // punctures of the base component: one per incident edge endpoint
        // and arrow; each lifts to gcd(d, m, adjacent)/s points per sheet
        let mut punctures_base: i64 = 0;
        let mut lifted_per_sheet: i64 = 0;
        for (n, count) in g.neighbor_counts(&v.id) {
            let t = d.gcd(&m).gcd(&mult_of(g, n)?);
            punctures_base += count as i64;
            lifted_per_sheet += (count as u64 * t / s) as i64;
        }
        punctures_base += 2 * g.self_loop_count(&v.id) as i64;
        lifted_per_sheet += 2 * g.self_loop_count(&v.id) as i64; // not produced by curves
        for a in g.arrows().iter().filter(|a| a.at == v.id) {
            let t = gcd_with(d.gcd(&m), a.mult.unwrap_or(0));
            punctures_base += 1;
            lifted_per_sheet += (t / s) as i64;
        }
        let chi_open = (deg as i64) * (2 - punctures_base);
        let chi_closed = chi_open + lifted_per_sheet;
        if chi_closed > 2 || (2 - chi_closed) % 2 != 0 {
            return Err(PipelineError::InvalidCoveringData(format!(
                "euler characteristic {chi_closed} over {} is not of a closed surface",
                v.id
            )));
        }
        let genus = ((2 - chi_closed) / 2) as u32;
        let m_up = m * (d / d.gcd(&m));
        for j in 0..s {
            vertices.push(CoverVertex {
                id: sheet_id(&v.id, j, s),
                base: v.id.clone(),
                sheet: j,
                genus,
                degree: deg,
                mult: Some(m_up),
            });
        }
    }

    let cov = CoveringGraph {
        degree: d,
        vertices,
        edges,
        arrows,
    };
    validate_covering(&cov, g)?;
    Ok(cov)
}

/// Structural covering conditions: sheet and edge counts obey the gcd laws
/// and incidence projects onto the base graph.
pub fn validate_covering(cov: &CoveringGraph, base: &PlumbingGraph) -> Result<(), PipelineError> {
    let d = cov.degree;
    if d < 2 {
        return Err(PipelineError::NonPositiveDegree);
    }
    let mut per_base: BTreeMap<&VertexId, u64> = BTreeMap::new();
    for v in &cov.vertices {
        if !base.contains(&v.base) {
            return Err(PipelineError::InvalidCoveringData(format!(
                "sheet {} projects to unknown vertex {}",
                v.id, v.base
            )));
        }
        *per_base.entry(&v.base).or_insert(0) += 1;
    }
    for b in base.vertex_ids() {
        if !per_base.contains_key(b) {
            return Err(PipelineError::InvalidCoveringData(format!(
                "no sheet covers base vertex {b}"
            )));
        }
    }
    for (&b, &count) in &per_base {
        if let Some(m) = base.vertex(b).and_then(|v| v.mult) {
            let sheets: Vec<&CoverVertex> = cov.vertices.iter().filter(|v| &v.base == b).collect();
            let deg = sheets[0].degree;
            if sheets.iter().any(|s| s.degree != deg) || count * deg != d.gcd(&m) {
                return Err(PipelineError::InvalidCoveringData(format!(
                    "sheets over {b} do not multiply up to gcd(d, m)"
                )));
            }
        }
    }
    let mut edge_counts: BTreeMap<(&VertexId, &VertexId), u64> = BTreeMap::new();
    for e in &cov.edges {
        let vu = cov.vertex(&e.from).ok_or_else(|| {
            PipelineError::InvalidCoveringData(format!("edge endpoint {} missing", e.from))
        })?;
        let vv = cov.vertex(&e.to).ok_or_else(|| {
            PipelineError::InvalidCoveringData(format!("edge endpoint {} missing", e.to))
        })?;
        if base.edges_between(&vu.base, &vv.base) == 0 {
            return Err(PipelineError::InvalidCoveringData(format!(
                "cover edge {}-{} projects to a non-edge",
                e.from, e.to
            )));
        }
        let key = if vu.base <= vv.base {
            (&vu.base, &vv.base)
        } else {
            (&vv.base, &vu.base)
        };
        *edge_counts.entry(key).or_insert(0) += 1;
    }
    for ((u, v), count) in edge_counts {
        let mu = base.vertex(u).and_then(|x| x.mult);
        let mv = base.vertex(v).and_then(|x| x.mult);
        if let (Some(mu), Some(mv)) = (mu, mv) {
            let expect = d.gcd(&mu).gcd(&mv) * base.edges_between(u, v) as u64;
            if count != expect {
                return Err(PipelineError::InvalidCoveringData(format!(
                    "expected {expect} cover edges over {u}-{v}, found {count}"
                )));
            }
        }
    }
    for a in &cov.arrows {
        if cov.vertex(&a.at).is_none() {
            return Err(PipelineError::InvalidCoveringData(format!(
                "cover arrow at unknown sheet {}",
                a.at
            )));
        }
    }
    Ok(())
}

/// Splices every Hirzebruch-Jung point into its bamboo: smooth points
/// become plain edges, and a `(n, q)` point between `from` and `to` becomes
/// the chain of `hj_expand(n, q)` attached with its first vertex on the
/// `from` side. Bamboo vertices receive multiplicities by pairing the germ
/// monomial with the resolution rays when the germ is available.
pub fn splice_bamboos(cov: &CoveringGraph) -> Result<PlumbingGraph, PipelineError> {
    let mut g = PlumbingGraph::new();
    for v in &cov.vertices {
        let mut vert = Vertex::new(v.id.as_str(), v.genus, None);
        vert.mult = v.mult;
        g.add_vertex(vert)?;
    }

    let mut bamboo_counter = 0usize;
    let mut splice_chain = |g: &mut PlumbingGraph,
                            from: &VertexId,
                            to: Option<&VertexId>,
                            kind: &CoverEdgeKind,
                            germ: Option<(u64, u64, u64)>|
     -> Result<Option<VertexId>, PipelineError> {
        match kind {
            CoverEdgeKind::Smooth => {
                if let Some(to) = to {
                    g.add_edge(from, to)?;
                }
                Ok(to.cloned())
            }
            CoverEdgeKind::Hj { n, q } => {
                if *n < 2 || *q == 0 || q >= n || q.gcd(n) != 1 {
                    return Err(PipelineError::InvalidHJParams(*n, *q));
                }
                let resolution = match germ {
                    Some((d, a, b)) => {
                        let r = LocalModel::new(d, a, b)?.resolve()?;
                        if r.hj != Some((*n, *q)) {
                            return Err(PipelineError::InvalidCoveringData(format!(
                                "germ z^{d} = x^{a} y^{b} does not have type ({n}, {q})"
                            )));
                        }
                        Some(r)
                    }
                    None => None,
                };
                let weights = crate::lens::hj_expand(*n, *q)
                    .map_err(|_| PipelineError::InvalidHJParams(*n, *q))?;
                let mut prev = from.clone();
                let mut last = None;
                for (i, &w) in weights.weights().iter().enumerate() {
                    bamboo_counter += 1;
                    let id = VertexId::new(format!("B{bamboo_counter}"));
                    let mut vert = Vertex::new(id.as_str(), 0, Some(-(w as i64)));
                    if let (Some(r), Some((_, a, b))) = (&resolution, germ) {
                        vert.mult = Some(r.bamboo_mult(i, a, b));
                    }
                    g.add_vertex(vert)?;
                    g.add_edge(&prev, &id)?;
                    prev = id.clone();
                    last = Some(id);
                }
                if let Some(to) = to {
                    g.add_edge(&prev, to)?;
                }
                Ok(if to.is_some() { to.cloned() } else { last })
            }
        }
    };

    for e in &cov.edges {
        splice_chain(&mut g, &e.from, Some(&e.to), &e.kind, e.germ)?;
    }
    for a in &cov.arrows {
        let end = splice_chain(&mut g, &a.at, None, &a.kind, a.germ)?;
        let at = end.unwrap_or_else(|| a.at.clone());
        g.add_arrow(Arrow {
            at,
            label: a.label.clone(),
            mult: a.mult,
        })?;
    }
    Ok(g)
}

/// Assigns the unique Euler numbers balancing the pulled-back divisor:
/// for every vertex `w`, `m_w e_w + sum of neighbor mults (+ arrow mults)
/// = 0`. Fails on a missing multiplicity or a non-integral solution.
pub fn assign_euler_numbers(g: &PlumbingGraph) -> Result<PlumbingGraph, PipelineError> {
    let mut out = g.clone();
    for v in g.vertices() {
        if g.self_loop_count(&v.id) > 0 {
            return Err(PipelineError::SelfLoop(v.id.clone()));
        }
        let m = v
            .mult
            .ok_or_else(|| PipelineError::MissingMultiplicity(v.id.clone()))?;
        let mut sum: i128 = 0;
        for (n, count) in g.neighbor_counts(&v.id) {
            let mn = mult_of(g, n)?;
            sum += (mn as i128) * (count as i128);
        }
        for a in g.arrows().iter().filter(|a| a.at == v.id) {
            sum += a.mult.unwrap_or(0) as i128;
        }
        if m == 0 || sum % (m as i128) != 0 {
            return Err(PipelineError::NonIntegralSolution {
                vertex: v.id.clone(),
                num: -sum,
                den: m,
            });
        }
        let e = -(sum / (m as i128));
        let e = i64::try_from(e).map_err(|_| PipelineError::EulerOverflow(v.id.clone()))?;
        out.vertex_mut(&v.id).expect("copy of v").euler = Some(e);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub curve: CurveOptions,
    /// Solve for Euler numbers upstairs (on by default).
    pub assign_eulers: bool,
    /// Reduce to the minimal model afterwards (on by default).
    pub minimize: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            curve: CurveOptions::default(),
            assign_eulers: true,
            minimize: true,
        }
    }
}

/// Full report of one pipeline run; intermediate stages are kept for
/// inspection and serialization.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub base: CurveResolution,
    pub covering: CoveringGraph,
    /// The resolved graph upstairs, with Euler numbers when assigned.
    pub resolved: PlumbingGraph,
    /// Minimal model (equal to `resolved` when minimization is off).
    pub minimal: PlumbingGraph,
    pub certificates: Vec<BlowDownCertificate>,
}

/// Resolution pipeline for `z^d = f(x, y)` with `f` given by its Puiseux
/// branches: embedded resolution, covering graph, bamboo splicing, Euler
/// assignment, minimization.
pub fn resolve_cyclic(
    branches: &[PuiseuxBranch],
    d: u64,
    options: PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    let base = resolve_curve(branches, options.curve)?;
    resolve_over(base, d, options)
}

/// The pipeline from the covering stage on, for a base already resolved.
pub fn resolve_over(
    base: CurveResolution,
    d: u64,
    options: PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    let covering = cover_graph(&base, d)?;
    let spliced = splice_bamboos(&covering)?;
    let resolved = if options.assign_eulers {
        let with_eulers = assign_euler_numbers(&spliced)?;
        debug_assert!(bamboo_weights_consistent(&spliced, &with_eulers));
        with_eulers
    } else {
        spliced
    };
    let (minimal, certificates) = if options.minimize && options.assign_eulers {
        minimize(&resolved)?
    } else {
        (resolved.clone(), Vec::new())
    };
    Ok(PipelineReport {
        base,
        covering,
        resolved,
        minimal,
        certificates,
    })
}

/// Splicing and optional Euler assignment for externally supplied covering
/// data (a general finite morphism whose covering structure was computed
/// elsewhere).
pub fn resolve_from_covering(
    base: &PlumbingGraph,
    cov: &CoveringGraph,
    options: PipelineOptions,
) -> Result<(PlumbingGraph, PlumbingGraph, Vec<BlowDownCertificate>), PipelineError> {
    validate_covering(cov, base)?;
    let spliced = splice_bamboos(cov)?;
    let all_mults = spliced.vertices().all(|v| v.mult.is_some());
    let resolved = if options.assign_eulers && all_mults {
        assign_euler_numbers(&spliced)?
    } else {
        spliced
    };
    let all_eulers = resolved.vertices().all(|v| v.euler.is_some());
    let (minimal, certs) = if options.minimize && all_eulers {
        minimize(&resolved)?
    } else {
        (resolved.clone(), Vec::new())
    };
    Ok((resolved, minimal, certs))
}

/// The balancing solution must reproduce the continued-fraction weights
/// already present on spliced bamboo vertices.
fn bamboo_weights_consistent(spliced: &PlumbingGraph, solved: &PlumbingGraph) -> bool {
    spliced.vertices().all(|v| match v.euler {
        Some(w) => solved.vertex(&v.id).and_then(|s| s.euler) == Some(w),
        None => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::Axis;

    fn axes(wx: u64, wy: u64) -> Vec<PuiseuxBranch> {
        vec![
            PuiseuxBranch::axis(Axis::X, wx, "x").unwrap(),
            PuiseuxBranch::axis(Axis::Y, wy, "y").unwrap(),
        ]
    }

    fn chain_weights(g: &PlumbingGraph) -> Vec<i64> {
        // walk the chain from an end, for graphs known to be bamboos
        assert!(g.is_bamboo());
        let ends: Vec<VertexId> = g
            .vertex_ids()
            .filter(|v| g.edge_degree(v) <= 1)
            .cloned()
            .collect();
        let start = ends.first().expect("nonempty").clone();
        let mut order = vec![start.clone()];
        let mut prev: Option<VertexId> = None;
        let mut cur = start;
        loop {
            let next = g
                .neighbor_counts(&cur)
                .keys()
                .find(|n| Some((**n).clone()) != prev)
                .map(|n| (*n).clone());
            match next {
                Some(n) => {
                    order.push(n.clone());
                    prev = Some(cur);
                    cur = n;
                }
                None => break,
            }
        }
        order
            .iter()
            .map(|v| g.vertex(v).unwrap().euler.unwrap())
            .collect()
    }

    #[test]
    fn double_cover_of_two_lines_is_a1() {
        let report = resolve_cyclic(&axes(1, 1), 2, PipelineOptions::default()).unwrap();
        assert_eq!(report.minimal.vertex_count(), 1);
        let v = report.minimal.vertices().next().unwrap();
        assert_eq!(v.euler, Some(-2));
        assert_eq!(v.genus, 0);
    }

    #[test]
    fn cover_of_two_lines_is_the_a_chain() {
        for n in 2..=12u64 {
            let report = resolve_cyclic(&axes(1, 1), n, PipelineOptions::default()).unwrap();
            let w = chain_weights(&report.minimal);
            assert_eq!(w, vec![-2; (n - 1) as usize], "n={n}");
        }
    }

    #[test]
    fn monomial_cover_12_over_x5_y11() {
        let report = resolve_cyclic(&axes(5, 11), 12, PipelineOptions::default()).unwrap();
        let mut w = chain_weights(&report.minimal);
        if w.first() > w.last() {
            w.reverse();
        }
        assert_eq!(w, vec![-3, -2, -3]);
        // strict transforms of the two lines sit at the two ends
        assert_eq!(report.minimal.arrows().len(), 2);
    }

    #[test]
    fn single_line_with_high_tangency_minimizes_to_one_vertex() {
        for n in 2..=9u64 {
            let report = resolve_cyclic(&axes(1, n - 1), n, PipelineOptions::default()).unwrap();
            assert_eq!(report.minimal.vertex_count(), 1, "n={n}");
            let v = report.minimal.vertices().next().unwrap();
            assert_eq!(v.euler, Some(-(n as i64)));
        }
    }

    #[test]
    fn pipeline_matches_quasi_ordinary_bamboos() {
        use num_integer::Integer;
        for n in 2..=20u64 {
            for q in 1..n {
                if q.gcd(&n) != 1 {
                    continue;
                }
                let report = resolve_cyclic(&axes(1, q), n, PipelineOptions::default()).unwrap();
                let expect: Vec<i64> = crate::lens::resolve_quasi_ordinary(n, q)
                    .unwrap()
                    .weights()
                    .iter()
                    .map(|&w| -(w as i64))
                    .collect();
                let got = chain_weights(&report.minimal);
                let mut rev = expect.clone();
                rev.reverse();
                assert!(
                    got == expect || got == rev,
                    "n={n} q={q}: got {got:?}, expected {expect:?}"
                );
            }
        }
    }

    #[test]
    fn covering_counts_obey_gcd_laws() {
        let base = resolve_curve(&axes(5, 11), CurveOptions::default()).unwrap();
        let cov = cover_graph(&base, 12).unwrap();
        // one vertex of multiplicity 16: gcd(12,16) = 4, sheets gcd(...)=1
        assert_eq!(cov.vertices.len(), 1);
        assert_eq!(cov.vertices[0].degree, 4);
        assert_eq!(cov.vertices[0].genus, 0);
        assert_eq!(cov.vertices[0].mult, Some(48));
        assert_eq!(cov.arrows.len(), 2);
    }

    #[test]
    fn non_normal_branch_lifts_are_rejected() {
        // z^2 = x^2 y is singular along the x-branch; the strict transform
        // upstairs has two components through a single corner point
        let base = resolve_curve(&axes(2, 1), CurveOptions::default()).unwrap();
        let err = cover_graph(&base, 2).unwrap_err();
        assert!(matches!(
            err,
            PipelineError::BranchLiftNotNormalCrossing { weight: 2, .. }
        ));
    }

    #[test]
    fn euler_assignment_detects_inconsistency() {
        let mut g = PlumbingGraph::new();
        g.add_vertex(Vertex::new("A", 0, None).with_mult(2))
            .unwrap();
        g.add_vertex(Vertex::new("B", 0, None).with_mult(3))
            .unwrap();
        g.add_edge(&"A".into(), &"B".into()).unwrap();
        // balancing at A: 2e + 3 = 0 has no integral solution
        let err = assign_euler_numbers(&g).unwrap_err();
        assert!(matches!(err, PipelineError::NonIntegralSolution { .. }));
    }

    #[test]
    fn identity_covering_over_a_bamboo_splices_to_itself() {
        let base = crate::lens::HjBamboo::new(vec![2, 3, 2])
            .unwrap()
            .to_graph();
        let vertices: Vec<CoverVertex> = base
            .vertices()
            .map(|v| CoverVertex {
                id: v.id.clone(),
                base: v.id.clone(),
                sheet: 0,
                genus: 0,
                degree: 1,
                mult: None,
            })
            .collect();
        let edges: Vec<CoverEdge> = base
            .edges()
            .iter()
            .map(|(u, v)| CoverEdge {
                from: u.clone(),
                to: v.clone(),
                index: 0,
                kind: CoverEdgeKind::Smooth,
                germ: None,
            })
            .collect();
        let cov = CoveringGraph {
            degree: 2,
            vertices,
            edges,
            arrows: vec![],
        };
        let (resolved, _, _) =
            resolve_from_covering(&base, &cov, PipelineOptions::default()).unwrap();
        assert!(crate::moves::are_isomorphic(&resolved, &base, false).unwrap());
    }

    #[test]
    fn hand_supplied_hj_arrow_splices_toward_the_branch() {
        let mut base = PlumbingGraph::new();
        base.add_vertex(Vertex::new("U", 0, None)).unwrap();
        base.add_arrow(Arrow {
            at: "U".into(),
            label: "branch".into(),
            mult: None,
        })
        .unwrap();
        let cov = CoveringGraph {
            degree: 5,
            vertices: vec![CoverVertex {
                id: "U".into(),
                base: "U".into(),
                sheet: 0,
                genus: 0,
                degree: 1,
                mult: None,
            }],
            edges: vec![],
            arrows: vec![CoverArrow {
                at: "U".into(),
                label: "branch".into(),
                index: 0,
                kind: CoverEdgeKind::Hj { n: 5, q: 3 },
                germ: None,
                mult: None,
            }],
        };
        let (resolved, _, _) =
            resolve_from_covering(&base, &cov, PipelineOptions::default()).unwrap();
        // hj_expand(5,3) = [2,3]: U - B1(-2) - B2(-3) with the arrow at B2
        assert_eq!(resolved.vertex_count(), 3);
        assert_eq!(
            resolved.vertex(&VertexId::new("B1")).unwrap().euler,
            Some(-2)
        );
        assert_eq!(
            resolved.vertex(&VertexId::new("B2")).unwrap().euler,
            Some(-3)
        );
        assert_eq!(resolved.arrows()[0].at, VertexId::new("B2"));
    }

    #[test]
    fn hand_supplied_hj_edge_splices_its_bamboo() {
        let mut base = PlumbingGraph::new();
        base.add_vertex(Vertex::new("U", 0, None)).unwrap();
        base.add_vertex(Vertex::new("V", 0, None)).unwrap();
        base.add_edge(&"U".into(), &"V".into()).unwrap();
        let cov = CoveringGraph {
            degree: 12,
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
                kind: CoverEdgeKind::Hj { n: 12, q: 5 },
                germ: None,
            }],
            arrows: vec![],
        };
        let (resolved, _, _) =
            resolve_from_covering(&base, &cov, PipelineOptions::default()).unwrap();
        assert_eq!(resolved.vertex_count(), 5);
        let weights: Vec<i64> = ["B1", "B2", "B3"]
            .iter()
            .map(|b| resolved.vertex(&VertexId::new(*b)).unwrap().euler.unwrap())
            .collect();
        assert_eq!(weights, vec![-3, -2, -3]);

        // non-coprime parameters are rejected
        let mut bad = cov.clone();
        bad.edges[0].kind = CoverEdgeKind::Hj { n: 12, q: 4 };
        assert_eq!(
            resolve_from_covering(&base, &bad, PipelineOptions::default()).unwrap_err(),
            PipelineError::InvalidHJParams(12, 4)
        );

        // a missing sheet over a base vertex is invalid covering data
        let mut incomplete = cov.clone();
        incomplete.vertices.pop();
        incomplete.edges.clear();
        assert!(matches!(
            resolve_from_covering(&base, &incomplete, PipelineOptions::default()).unwrap_err(),
            PipelineError::InvalidCoveringData(_)
        ));
    }
}
