//! Certified distance brackets from truncated itineraries.
//!
//! All costs are dyadic; at depth `m` they are kept as integers in units of
//! `2^{-m}`. A pivot move at depth `p` costs `2^{m−p+1}` units, a teleport
//! between level-`m` vertices at distance `d` costs `d − 1` units.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::lcm;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::symbolic::EventuallyPeriodicPoint;

use super::{GraphSystem, Level};

/// Bracket `[lower, upper]` for the itinerary distance. `None` stands for
/// infinity.
///
/// The bracket with index `m` is computed from itineraries truncated at
/// depth `m + 1`, so that `d(x, y) ∈ [r_m, 5/2·r_m + 2^{-m}]`. At truncation
/// depth `m` alone the additive term must be `2^{-m+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceBracket {
    /// Index `m`, one less than the truncation depth.
    pub m: usize,
    /// Truncation depth `m + 1`.
    pub depth: usize,
    /// `r_m`: the largest truncated-itinerary lower cost over depths `1..=m+1`.
    pub lower: Option<BigRational>,
    /// `u_m = min(s_m, 5/2·r_m + 2^{-m})`.
    pub upper: Option<BigRational>,
    /// `s_m`: cheapest pivot-only itinerary with pivots down to depth `m + 1`.
    pub pivot_only: Option<BigRational>,
}

/// The bracket at truncation depth `depth`.
pub fn distance_bracket(
    g: &dyn GraphSystem,
    x: &EventuallyPeriodicPoint,
    y: &EventuallyPeriodicPoint,
    depth: usize,
) -> Result<DistanceBracket> {
    Ok(distance_brackets(g, x, y, depth)?.pop().unwrap())
}

/// The brackets at truncation depths `1..=depth`.
pub fn distance_brackets(
    g: &dyn GraphSystem,
    x: &EventuallyPeriodicPoint,
    y: &EventuallyPeriodicPoint,
    max_depth: usize,
) -> Result<Vec<DistanceBracket>> {
    if max_depth == 0 || max_depth > 60 {
        return Err(Error::HypothesisViolated(format!("depth {max_depth} must lie in 1..=60")));
    }
    g.check_point(x)?;
    g.check_point(y)?;
    let same = same_point(x, y);
    let mut levels: Vec<Arc<Level>> = Vec::new();
    let mut out: Vec<DistanceBracket> = Vec::new();
    let mut best: Option<BigRational> = Some(BigRational::from_integer(0.into()));
    for depth in 0..=max_depth {
        levels.push(g.level(depth)?);
        if depth == 0 {
            continue;
        }
        let (a, b) = (g.point_vertex(depth, x)?, g.point_vertex(depth, y)?);
        let search = Search::new(&levels, depth);
        let r = search.shortest(a, b, true).map(|u| dyadic(u, depth));
        let s = if a == b && !same {
            // One self-loop pivot at this depth.
            Some(dyadic(2, depth))
        } else {
            search.shortest(a, b, false).map(|u| dyadic(u, depth))
        };
        // The running maximum; an infinite raw value dominates.
        best = match (best, r) {
            (Some(p), Some(q)) => Some(p.max(q)),
            _ => None,
        };
        let blended = best
            .as_ref()
            .map(|r| r * BigRational::new(5.into(), 2.into()) + dyadic(2, depth));
        let upper = match (s.clone(), blended) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        };
        out.push(DistanceBracket {
            m: depth - 1,
            depth,
            lower: best.clone(),
            upper,
            pivot_only: s,
        });
    }
    Ok(out)
}

fn same_point(x: &EventuallyPeriodicPoint, y: &EventuallyPeriodicPoint) -> bool {
    let lo = match (x.left.len(), y.left.len()) {
        (0, 0) => 0,
        (a, b) => lcm(a.max(1), b.max(1)) as i64,
    };
    let hi = x.core.len().max(y.core.len()) + lcm(x.right.len(), y.right.len());
    x.side == y.side && x.window(-lo, hi as i64) == y.window(-lo, hi as i64)
}

fn dyadic(units: u64, m: usize) -> BigRational {
    BigRational::new(BigInt::from(units), BigInt::from(1u64) << m)
}

/// Node layout: `up(p, u)` and `down(p, u)` per level, two copies of each
/// level-`m` vertex tagged with whether the last move was a teleport, and a
/// walk copy of each level-`m` vertex for teleports in progress.
struct Search<'a> {
    levels: &'a [Arc<Level>],
    m: usize,
    offset: Vec<usize>,
    children: Vec<Vec<Vec<u32>>>,
    total: usize,
}

impl<'a> Search<'a> {
    fn new(levels: &'a [Arc<Level>], m: usize) -> Self {
        let mut offset = Vec::with_capacity(m + 2);
        let mut acc = 0;
        for l in &levels[..=m] {
            offset.push(acc);
            acc += l.len();
        }
        offset.push(acc);
        let children = (0..=m)
            .map(|p| {
                if p == m {
                    return Vec::new();
                }
                let mut ch = vec![Vec::new(); levels[p].len()];
                for (v, &q) in levels[p + 1].parents().iter().enumerate() {
                    ch[q as usize].push(v as u32);
                }
                ch
            })
            .collect();
        Search {
            levels,
            m,
            offset,
            children,
            total: acc,
        }
    }

    fn up(&self, p: usize, u: u32) -> usize {
        self.offset[p] + u as usize
    }

    fn down(&self, p: usize, u: u32) -> usize {
        self.total + self.offset[p] + u as usize
    }

    fn top(&self, v: u32, teleported: bool) -> usize {
        2 * self.total + 2 * v as usize + teleported as usize
    }

    /// Cheapest itinerary cost in units of `2^{-m}`. With `truncated`,
    /// pivots go up to depth `m − 1` and teleports are allowed (never
    /// twice in a row); otherwise pivots go up to depth `m`.
    fn shortest(&self, a: u32, b: u32, truncated: bool) -> Option<u64> {
        if a == b {
            return Some(0);
        }
        let m = self.m;
        let max_pivot = if truncated { m - 1 } else { m };
        let walk_base = 2 * self.total + 2 * self.levels[m].len();
        let mut dist = vec![u64::MAX; walk_base + self.levels[m].len()];
        let mut heap = BinaryHeap::new();
        let start = self.top(a, false);
        dist[start] = 0;
        heap.push(Reverse((0u64, start)));
        let relax = |dist: &mut Vec<u64>, heap: &mut BinaryHeap<Reverse<(u64, usize)>>, node: usize, d: u64| {
            if d < dist[node] {
                dist[node] = d;
                heap.push(Reverse((d, node)));
            }
        };
        while let Some(Reverse((d, node))) = heap.pop() {
            if d > dist[node] {
                continue;
            }
            if node >= walk_base {
                let v = (node - walk_base) as u32;
                relax(&mut dist, &mut heap, self.top(v, true), d);
                for &w in self.levels[m].neighbors(v) {
                    relax(&mut dist, &mut heap, walk_base + w as usize, d + 1);
                }
            } else if node >= 2 * self.total {
                let v = ((node - 2 * self.total) / 2) as u32;
                let teleported = (node - 2 * self.total) % 2 == 1;
                if v == b {
                    return Some(d);
                }
                relax(&mut dist, &mut heap, self.up(m, v), d);
                if truncated && !teleported {
                    // A teleport to w costs dist(v, w) − 1: the first edge
                    // of the walk is free. Walks back to v only reach the
                    // dominated node top(v, true).
                    for &w in self.levels[m].neighbors(v) {
                        relax(&mut dist, &mut heap, walk_base + w as usize, d);
                    }
                }
            } else if node >= self.total {
                let idx = node - self.total;
                let p = self.offset.partition_point(|&o| o <= idx) - 1;
                let u = (idx - self.offset[p]) as u32;
                if p == m {
                    relax(&mut dist, &mut heap, self.top(u, false), d);
                } else {
                    for &c in &self.children[p][u as usize] {
                        relax(&mut dist, &mut heap, self.down(p + 1, c), d);
                    }
                }
            } else {
                let p = self.offset.partition_point(|&o| o <= node) - 1;
                let u = (node - self.offset[p]) as u32;
                if p > 0 {
                    let q = self.levels[p].parent(u).unwrap();
                    relax(&mut dist, &mut heap, self.up(p - 1, q), d);
                }
                if p <= max_pivot {
                    let cost = 1u64 << (m - p + 1);
                    relax(&mut dist, &mut heap, self.down(p, u), d + cost);
                    for &w in self.levels[p].neighbors(u) {
                        relax(&mut dist, &mut heap, self.down(p, w), d + cost);
                    }
                }
            }
        }
        None
    }
}
