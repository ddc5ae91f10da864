//! Minimal embedded resolution of a plane curve germ given by Puiseux
//! branch data.
//!
//! The resolver blows up points, tracked exactly on branch
//! parameterizations `(x(t), y(t))`: a blow-up substitutes
//! `(x/y, y)` or `(x, y/x)` depending on which coordinate vanishes faster,
//! and infinitely near points are identified by comparing exact leading
//! coefficients. A point is blown up while the configuration through it is
//! not yet normal crossing: two or more branches meet there, a branch
//! passes through a double point of the divisor, or a branch is singular or
//! tangent to the exceptional component. The result is the minimal graph
//! with one arrow per input branch.
//!
//! Multiplicities follow the total-transform law: the new component's
//! multiplicity is the sum of the multiplicities of the divisor components
//! through the center plus the weighted local multiplicities of the
//! branches through it. Euler numbers start at -1 and drop by one for every
//! later blow-up on the component.
//!
//! Branches flagged as tracked ride along to place their arrows but carry
//! multiplicity zero and never cause a blow-up by themselves.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::graph::{Arrow, PlumbingGraph, Vertex, VertexId};
use crate::puiseux::{BranchError, PuiseuxBranch};
use crate::series::{SeriesOrd, TruncSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error("branches {0:?} and {1:?} describe the same germ")]
    NotReduced(String, String),
    #[error("branches {0:?} and {1:?} agree beyond their stored truncations")]
    InsufficientTruncation(String, String),
    #[error("truncation of branch {0:?} is too short to finish the resolution")]
    TruncationExhausted(String),
    #[error("blow-up budget of {0} exhausted; extend truncations or raise the budget")]
    BudgetExhausted(u64),
    #[error("no weighted branch in the input")]
    NoWeightedBranches,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CurveOptions {
    /// Blow-up budget; default is `10 * total ramification index * number
    /// of branch pairs` (at least one pair).
    pub budget: Option<u64>,
}

/// Where one input branch ended up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowPlacement {
    pub label: String,
    pub at: VertexId,
    pub transverse: bool,
    pub tracked: bool,
}

/// The weighted dual graph of the minimal embedded resolution, with
/// multiplicities of the total transform on every vertex and one arrow per
/// input branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveResolution {
    pub graph: PlumbingGraph,
    pub placements: Vec<ArrowPlacement>,
}

struct BranchState {
    weight: u64, // 0 when tracked
    tracked: bool,
    label: String,
    x: TruncSeries,
    y: TruncSeries,
}

struct Point {
    comp_x: Option<VertexId>,
    comp_y: Option<VertexId>,
    branches: Vec<usize>,
}

/// Position of a transformed branch on the new exceptional component.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Landing {
    OnStrictX,
    Finite(BigRational),
    OnStrictY,
}

/// Decides `ord(x) cmp ord(y)` as far as the truncations allow.
fn compare_orders(b: &BranchState) -> Result<std::cmp::Ordering, CurveError> {
    use std::cmp::Ordering::*;
    use SeriesOrd::*;
    match (b.x.ord(), b.y.ord()) {
        (Zero, Zero) => unreachable!("a branch is not the constant point"),
        (Zero, _) => Ok(Greater),
        (_, Zero) => Ok(Less),
        (Exact(a), Exact(c)) => Ok(a.cmp(&c)),
        (Exact(a), AtLeast(p)) if p > a => Ok(Less),
        (AtLeast(p), Exact(c)) if p > c => Ok(Greater),
        _ => Err(CurveError::TruncationExhausted(b.label.clone())),
    }
}

/// Exact local multiplicity `min(ord x, ord y)` of the branch at its point.
fn local_mult(b: &BranchState) -> Result<u64, CurveError> {
    use SeriesOrd::*;
    let m = match (b.x.ord(), b.y.ord()) {
        (Zero, Zero) => unreachable!("a branch is not the constant point"),
        (Zero, Exact(e)) | (Exact(e), Zero) => e,
        (Exact(a), Exact(c)) => a.min(c),
        (Exact(a), AtLeast(p)) | (AtLeast(p), Exact(a)) if p > a => a,
        _ => return Err(CurveError::TruncationExhausted(b.label.clone())),
    };
    debug_assert!(m >= 1);
    Ok(m as u64)
}

/// Intersection multiplicity of the branch with the component cut out by
/// the given coordinate: 1 means transverse. Errors when undecidable.
fn contact_with(coord: &TruncSeries, label: &str) -> Result<ContactKind, CurveError> {
    match coord.ord() {
        SeriesOrd::Exact(1) => Ok(ContactKind::Transverse),
        SeriesOrd::Exact(_) => Ok(ContactKind::Tangent),
        SeriesOrd::AtLeast(p) if p >= 2 => Ok(ContactKind::Tangent),
        SeriesOrd::Zero => unreachable!("branch lies inside an exceptional component"),
        _ => Err(CurveError::TruncationExhausted(label.to_owned())),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ContactKind {
    Transverse,
    Tangent,
}

struct Resolver {
    graph: PlumbingGraph,
    branches: Vec<BranchState>,
    points: Vec<Point>,
    next_vertex: usize,
    blowups_done: u64,
    budget: u64,
}

impl Resolver {
    fn comp_count(&self, p: &Point) -> usize {
        usize::from(p.comp_x.is_some()) + usize::from(p.comp_y.is_some())
    }

    /// Upgrades a truncation failure to a two-branch separation failure
    /// when the undecidable point carries several branches.
    fn ambiguity_context(&self, p: &Point, e: CurveError) -> CurveError {
        match e {
            CurveError::TruncationExhausted(l) if p.branches.len() >= 2 => {
                let other = p
                    .branches
                    .iter()
                    .map(|&i| self.branches[i].label.clone())
                    .find(|x| *x != l)
                    .unwrap_or_else(|| l.clone());
                CurveError::InsufficientTruncation(l, other)
            }
            e => e,
        }
    }

    fn needs_blow_up(&self, p: &Point) -> Result<bool, CurveError> {
        let real: Vec<usize> = p
            .branches
            .iter()
            .copied()
            .filter(|&i| !self.branches[i].tracked)
            .collect();
        match real.len() {
            0 => Ok(false),
            1 => {
                let b = &self.branches[real[0]];
                match self.comp_count(p) {
                    0 | 2 => Ok(true),
                    1 => {
                        let coord = if p.comp_x.is_some() { &b.x } else { &b.y };
                        Ok(contact_with(coord, &b.label)? == ContactKind::Tangent)
                    }
                    _ => unreachable!("at most two components through a point"),
                }
            }
            _ => Ok(true),
        }
    }

    fn fresh_vertex(&mut self) -> VertexId {
        self.next_vertex += 1;
        VertexId::new(format!("E{}", self.next_vertex))
    }

    fn blow_up(&mut self, point_idx: usize) -> Result<(), CurveError> {
        if self.blowups_done >= self.budget {
            return Err(CurveError::BudgetExhausted(self.budget));
        }
        self.blowups_done += 1;

        let point = self.points.remove(point_idx);
        let comps: Vec<VertexId> = [point.comp_x.clone(), point.comp_y.clone()]
            .into_iter()
            .flatten()
            .collect();

        let mut mult: u64 = comps
            .iter()
            .map(|c| {
                self.graph
                    .vertex(c)
                    .expect("component exists")
                    .mult
                    .unwrap_or(0)
            })
            .sum();
        for &i in &point.branches {
            if self.branches[i].weight > 0 {
                mult += self.branches[i].weight * local_mult(&self.branches[i])?;
            }
        }

        let new_id = self.fresh_vertex();
        self.graph
            .add_vertex(Vertex::new(new_id.as_str(), 0, Some(-1)).with_mult(mult))
            .expect("fresh id");
        for c in &comps {
            let e = self.graph.euler_of(c).expect("known euler");
            self.graph.vertex_mut(c).expect("component").euler = Some(e - 1);
            self.graph.add_edge(c, &new_id).expect("endpoints exist");
        }
        if comps.len() == 2 {
            self.graph.remove_one_edge(&comps[0], &comps[1]);
        }

        // transform the branches through the center and regroup them by
        // their landing point on the new component
        let mut groups: BTreeMap<Landing, Vec<usize>> = BTreeMap::new();
        for &i in &point.branches {
            let landing = {
                let b = &self.branches[i];
                use std::cmp::Ordering::*;
                match compare_orders(b)? {
                    Greater => Landing::OnStrictX,
                    Less => Landing::OnStrictY,
                    Equal => {
                        let ratio =
                            b.x.div(&b.y)
                                .map_err(|_| CurveError::TruncationExhausted(b.label.clone()))?;
                        let c0 = ratio
                            .coeff(0)
                            .map_err(|_| CurveError::TruncationExhausted(b.label.clone()))?;
                        debug_assert!(!num_traits::Zero::is_zero(&c0));
                        Landing::Finite(c0)
                    }
                }
            };
            let b = &mut self.branches[i];
            match &landing {
                Landing::OnStrictX => {
                    let nx = b.x.div(&b.y).expect("ord x > ord y");
                    b.x = nx;
                }
                Landing::OnStrictY => {
                    let ny = b.y.div(&b.x).expect("ord y > ord x");
                    b.y = ny;
                }
                Landing::Finite(c0) => {
                    let nx = b.x.div(&b.y).expect("equal orders").sub_const(c0);
                    b.x = nx;
                }
            }
            groups.entry(landing).or_default().push(i);
        }
        for (landing, branches) in groups {
            let (comp_x, comp_y) = match landing {
                Landing::OnStrictX => (point.comp_x.clone(), Some(new_id.clone())),
                Landing::Finite(_) => (None, Some(new_id.clone())),
                Landing::OnStrictY => (Some(new_id.clone()), point.comp_y.clone()),
            };
            self.points.push(Point {
                comp_x,
                comp_y,
                branches,
            });
        }
        Ok(())
    }

    fn place_arrows(&mut self) -> Result<Vec<ArrowPlacement>, CurveError> {
        let mut placements: Vec<Option<ArrowPlacement>> =
            (0..self.branches.len()).map(|_| None).collect();
        for p in &self.points {
            for &i in &p.branches {
                let b = &self.branches[i];
                // prefer the component the branch is transverse to
                let mut chosen: Option<(VertexId, bool)> = None;
                for (comp, coord) in [(&p.comp_x, &b.x), (&p.comp_y, &b.y)] {
                    let Some(c) = comp else { continue };
                    let transverse = contact_with(coord, &b.label)? == ContactKind::Transverse;
                    if chosen.as_ref().is_none_or(|(_, t)| !*t) {
                        chosen = Some((c.clone(), transverse));
                    }
                }
                let (at, transverse) =
                    chosen.expect("rested branch sits on at least one component");
                placements[i] = Some(ArrowPlacement {
                    label: b.label.clone(),
                    at,
                    transverse,
                    tracked: b.tracked,
                });
            }
        }
        Ok(placements
            .into_iter()
            .map(|p| p.expect("every branch rests"))
            .collect())
    }
}

/// Resolves the weighted divisor given by the branches. See the module
/// documentation for the exact stopping rule.
pub fn resolve_curve(
    branches: &[PuiseuxBranch],
    options: CurveOptions,
) -> Result<CurveResolution, CurveError> {
    for (i, a) in branches.iter().enumerate() {
        for b in branches.iter().skip(i + 1) {
            if a.germ_signature() == b.germ_signature() {
                return Err(CurveError::NotReduced(a.label.clone(), b.label.clone()));
            }
        }
    }
    if branches.iter().all(|b| b.tracked) {
        return Err(CurveError::NoWeightedBranches);
    }

    let mut states = Vec::with_capacity(branches.len());
    let mut total_ram: u64 = 0;
    for b in branches {
        let (x, y) = b.parameterize()?;
        total_ram += b.ramification_index()?;
        states.push(BranchState {
            weight: if b.tracked { 0 } else { b.weight },
            tracked: b.tracked,
            label: b.label.clone(),
            x,
            y,
        });
    }
    let n = branches.len() as u64;
    let pairs = (n * n.saturating_sub(1) / 2).max(1);
    let budget = options.budget.unwrap_or(10 * total_ram.max(1) * pairs);

    let mut resolver = Resolver {
        graph: PlumbingGraph::new(),
        branches: states,
        points: vec![Point {
            comp_x: None,
            comp_y: None,
            branches: (0..branches.len()).collect(),
        }],
        next_vertex: 0,
        blowups_done: 0,
        budget,
    };

    loop {
        let mut target = None;
        for (idx, p) in resolver.points.iter().enumerate() {
            let needed = resolver
                .needs_blow_up(p)
                .map_err(|e| resolver.ambiguity_context(p, e))?;
            if needed {
                target = Some(idx);
                break;
            }
        }
        match target {
            Some(idx) => {
                let labels: Vec<String> = resolver.points[idx]
                    .branches
                    .iter()
                    .map(|&i| resolver.branches[i].label.clone())
                    .collect();
                resolver.blow_up(idx).map_err(|e| match e {
                    CurveError::TruncationExhausted(l) if labels.len() >= 2 => {
                        let other = labels
                            .iter()
                            .find(|x| **x != l)
                            .cloned()
                            .unwrap_or_else(|| l.clone());
                        CurveError::InsufficientTruncation(l, other)
                    }
                    e => e,
                })?;
            }
            None => break,
        }
    }

    let placements = resolver.place_arrows()?;
    let mut graph = resolver.graph;
    for (p, b) in placements.iter().zip(branches) {
        debug_assert_eq!(p.label, b.label);
        graph
            .add_arrow(Arrow {
                at: p.at.clone(),
                label: p.label.clone(),
                mult: if p.tracked { None } else { Some(b.weight) },
            })
            .expect("arrow target exists");
    }

    check_output_invariants(&graph, &placements);
    Ok(CurveResolution { graph, placements })
}

/// Structural guarantees of iterated point blow-ups on a smooth surface;
/// violations are bugs, not input errors.
fn check_output_invariants(graph: &PlumbingGraph, placements: &[ArrowPlacement]) {
    use num_traits::Signed;
    assert!(graph.vertex_count() >= 1, "at least one blow-up happened");
    assert!(graph.is_connected(), "exceptional divisor is connected");
    assert_eq!(
        graph.edge_count(),
        graph.vertex_count() - 1,
        "dual graph of iterated point blow-ups is a tree"
    );
    assert!(
        graph.vertices().all(|v| v.genus == 0),
        "every component is rational"
    );
    assert!(
        graph.determinant().expect("all eulers set").abs().is_one(),
        "exceptional lattice is unimodular"
    );
    assert!(
        graph.is_negative_definite().expect("all eulers set"),
        "exceptional lattice is negative definite"
    );
    for p in placements {
        if !p.tracked {
            assert!(p.transverse, "weighted strict transforms end transverse");
        }
    }
    // minimality: contracting any arrowless vertex would re-create a
    // non-normal-crossing configuration, so none may be eligible
    for v in graph.vertex_ids() {
        if graph.arrow_count_at(v) == 0 {
            assert!(
                crate::moves::blow_down(graph, v).is_err(),
                "no arrowless vertex of the minimal resolution is contractible"
            );
        }
    }
}
