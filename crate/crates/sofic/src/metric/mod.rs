//! Systems of graphs, their itinerary metrics and certified distance
//! brackets.
//!
//! A system of graphs is a sequence of finite graphs `G_n`, each with a
//! self-loop at every vertex, and projections `G_{n+1} → G_n` that are graph
//! homomorphisms surjective on vertices. Points are rays. On a hyperbolic
//! system the cheapest itinerary metric is bracketed by truncated
//! itineraries.

mod bracket;
mod explicit;
mod shift;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::symbolic::EventuallyPeriodicPoint;

pub use bracket::{distance_bracket, distance_brackets, DistanceBracket};
pub use explicit::{ExplicitSystem, IntervalSystem};
pub use shift::{build_shift_graph_system, dimension_upper_bound, DimensionBound, ShiftGraphSystem};

/// One level of a graph system. Self-loops are implicit.
#[derive(Debug, Clone)]
pub struct Level {
    names: Vec<String>,
    index: HashMap<String, u32>,
    adj: Vec<Vec<u32>>,
    parent: Vec<u32>,
}

impl Level {
    /// A level from vertex names, undirected edges and parents in the
    /// previous level (empty at level 0). Loops and duplicates are dropped.
    pub fn new(names: Vec<String>, edges: &[(u32, u32)], parent: Vec<u32>) -> Self {
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let mut adj = vec![Vec::new(); names.len()];
        for &(u, v) in edges {
            if u != v {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Level {
            names,
            index,
            adj,
            parent,
        }
    }

    /// Vertex count.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Whether the level has no vertices.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Name of a vertex.
    pub fn name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    /// All names.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Vertex by name.
    pub fn vertex(&self, name: &str) -> Result<u32> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Neighbors other than the vertex itself, sorted.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    /// Whether `u` and `v` are equal or joined by an edge.
    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        u == v || self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Projection to the previous level (`None` at level 0).
    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent.get(v as usize).copied()
    }

    /// Parents of all vertices.
    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    /// Number of undirected non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Graph distances from `v`, with `d(v, v) = 1` (the self-loop) and
    /// `None` for unreachable vertices.
    pub fn distances_from(&self, v: u32) -> Vec<Option<u64>> {
        let mut dist = vec![None; self.len()];
        dist[v as usize] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].unwrap();
            for &w in &self.adj[u as usize] {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist[v as usize] = Some(1);
        dist
    }
}

/// A system of graphs with a way to locate points.
pub trait GraphSystem: Send + Sync {
    /// Level `n`.
    fn level(&self, n: usize) -> Result<Arc<Level>>;

    /// The level-`n` vertex of the ray denoted by `x`.
    fn point_vertex(&self, n: usize, x: &EventuallyPeriodicPoint) -> Result<u32>;

    /// Fails with `PointNotInSubshift` when `x` does not denote a point.
    fn check_point(&self, x: &EventuallyPeriodicPoint) -> Result<()> {
        self.point_vertex(0, x).map(|_| ())
    }

    /// A pair of level-`n` vertices that are not adjacent although they are
    /// projections of vertices at distance at most 2 in level `n + c`.
    fn hyperbolicity_counterexample(&self, n: usize, c: usize) -> Result<Option<(String, String)>> {
        let top = self.level(n)?;
        let deep = self.level(n + c)?;
        let mut proj: Vec<u32> = (0..deep.len() as u32).collect();
        for k in (n + 1..=n + c).rev() {
            let lk = self.level(k)?;
            for p in &mut proj {
                *p = lk.parent(*p).expect("level above 0 has parents");
            }
        }
        for u in 0..deep.len() as u32 {
            let mut ball: HashSet<u32> = HashSet::from([u]);
            for &w in deep.neighbors(u) {
                ball.insert(w);
                ball.extend(deep.neighbors(w).iter().copied());
            }
            let pu = proj[u as usize];
            for v in ball {
                let pv = proj[v as usize];
                if !top.adjacent(pu, pv) {
                    return Ok(Some((top.name(pu).to_string(), top.name(pv).to_string())));
                }
            }
        }
        Ok(None)
    }
}

/// Distance in level `n` between two named vertices; `None` is infinity.
pub fn graph_distance(g: &dyn GraphSystem, n: usize, u: &str, v: &str) -> Result<Option<u64>> {
    let l = g.level(n)?;
    let (a, b) = (l.vertex(u)?, l.vertex(v)?);
    Ok(l.distances_from(a)[b as usize])
}

/// Outcome of [`check_hyperbolicity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicityReport {
    /// Whether the condition held for every tested level.
    pub holds: bool,
    /// The tested constant.
    pub c: usize,
    /// Levels `0..=n_max` were tested.
    pub n_max: usize,
    /// First failure: level `n` and the non-adjacent projected pair.
    pub counterexample: Option<(usize, String, String)>,
}

/// Checks, for every `n ≤ n_max`, that vertices at distance at most 2 in
/// level `n + c` project to equal or adjacent vertices of level `n`.
pub fn check_hyperbolicity(g: &dyn GraphSystem, c: usize, n_max: usize) -> Result<HyperbolicityReport> {
    for n in 0..=n_max {
        if let Some((u, v)) = g.hyperbolicity_counterexample(n, c)? {
            return Ok(HyperbolicityReport {
                holds: false,
                c,
                n_max,
                counterexample: Some((n, u, v)),
            });
        }
    }
    Ok(HyperbolicityReport {
        holds: true,
        c,
        n_max,
        counterexample: None,
    })
}
