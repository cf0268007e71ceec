//! Explicitly listed graph systems and the interval subdivision system.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::symbolic::{EventuallyPeriodicPoint, Side};

use super::{GraphSystem, Level};

/// Binary subdivision of the interval: level `n` is the path on the `2^n`
/// binary words of length `n` in numeric order, projecting by dropping the
/// last bit. Rays are one-sided binary sequences.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntervalSystem;

impl GraphSystem for IntervalSystem {
    fn level(&self, n: usize) -> Result<Arc<Level>> {
        if n > 24 {
            return Err(Error::HypothesisViolated(format!("interval level {n} is too large")));
        }
        let size = 1u32 << n;
        let names = (0..size)
            .map(|i| if n == 0 { String::new() } else { format!("{i:0n$b}") })
            .collect();
        let edges: Vec<(u32, u32)> = (1..size).map(|i| (i - 1, i)).collect();
        let parent = if n == 0 { Vec::new() } else { (0..size).map(|i| i >> 1).collect() };
        Ok(Arc::new(Level::new(names, &edges, parent)))
    }

    fn point_vertex(&self, n: usize, x: &EventuallyPeriodicPoint) -> Result<u32> {
        if x.side != Side::N {
            return Err(Error::SideMismatch);
        }
        x.window(0, n as i64).iter().try_fold(0u32, |acc, &b| {
            if b > 1 {
                Err(Error::PointNotInSubshift)
            } else {
                Ok(acc << 1 | b)
            }
        })
    }
}

/// A graph system read from a leveled edge list. Vertex names are words of
/// one length per level; a one-sided point sits at the vertex named by its
/// prefix. With `period p`, level `n ≥ L` (for `L` listed levels) copies
/// level `n − p`, and the first copy projects onto level `L − 1` through the
/// `wrap` map (by default the vertex of the same name).
#[derive(Debug, Clone)]
pub struct ExplicitSystem {
    levels: Vec<Arc<Level>>,
    name_len: Vec<usize>,
    period: Option<(usize, Vec<u32>)>,
}

impl ExplicitSystem {
    /// Number of listed levels.
    pub fn listed_levels(&self) -> usize {
        self.levels.len()
    }

    /// Eventual period, if any.
    pub fn period(&self) -> Option<usize> {
        self.period.as_ref().map(|(p, _)| *p)
    }

    /// Parses the format
    ///
    /// ```text
    /// level 0
    /// vertex -
    /// level 1
    /// vertex 0 -
    /// vertex 1 -
    /// edge 0 1
    /// period 1
    /// wrap 0 0
    /// ```
    ///
    /// where `vertex NAME PARENT` lists a vertex with its projection, `-`
    /// is the empty name and `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        struct Raw {
            names: Vec<String>,
            parents: Vec<String>,
            edges: Vec<(String, String, usize)>,
        }
        let mut raws: Vec<Raw> = Vec::new();
        let mut period: Option<(usize, usize)> = None;
        let mut wraps: Vec<(String, String, usize)> = Vec::new();
        let unname = |s: &str| if s == "-" { String::new() } else { s.to_string() };
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[..] {
                ["level", k] => {
                    if period.is_some() {
                        return Err(Error::parse(ln, "level after period"));
                    }
                    let k: usize = k.parse().map_err(|_| Error::parse(ln, format!("bad level {k:?}")))?;
                    if k != raws.len() {
                        return Err(Error::parse(ln, format!("expected level {}, got {k}", raws.len())));
                    }
                    raws.push(Raw {
                        names: Vec::new(),
                        parents: Vec::new(),
                        edges: Vec::new(),
                    });
                }
                ["vertex", name, ref rest @ ..] => {
                    let r = raws.last_mut().ok_or_else(|| Error::parse(ln, "vertex before level"))?;
                    let parent = match rest {
                        [] => String::new(),
                        [p] => unname(p),
                        _ => return Err(Error::parse(ln, "expected 'vertex NAME [PARENT]'")),
                    };
                    r.names.push(unname(name));
                    r.parents.push(parent);
                }
                ["edge", a, b] => {
                    let r = raws.last_mut().ok_or_else(|| Error::parse(ln, "edge before level"))?;
                    r.edges.push((unname(a), unname(b), ln));
                }
                ["period", p] => {
                    let p: usize = p.parse().map_err(|_| Error::parse(ln, format!("bad period {p:?}")))?;
                    if p == 0 || p > raws.len() {
                        return Err(Error::parse(ln, format!("period {p} out of range")));
                    }
                    period = Some((p, ln));
                }
                ["wrap", child, parent] => {
                    if period.is_none() {
                        return Err(Error::parse(ln, "wrap before period"));
                    }
                    wraps.push((unname(child), unname(parent), ln));
                }
                _ => return Err(Error::parse(ln, format!("unrecognized line {line:?}"))),
            }
        }
        if raws.is_empty() {
            return Err(Error::parse(0, "no levels"));
        }
        let mut levels: Vec<Arc<Level>> = Vec::new();
        let mut name_len = Vec::new();
        for (k, r) in raws.iter().enumerate() {
            let len = r.names.first().map_or(0, |s| s.chars().count());
            if r.names.iter().any(|s| s.chars().count() != len) {
                return Err(Error::parse(0, format!("level {k}: vertex names differ in length")));
            }
            let probe = Level::new(r.names.clone(), &[], Vec::new());
            if probe.index.len() != r.names.len() {
                return Err(Error::parse(0, format!("level {k}: duplicate vertex name")));
            }
            let mut edges = Vec::new();
            for (a, b, ln) in &r.edges {
                let a = probe.vertex(a).map_err(|e| Error::parse(*ln, e.to_string()))?;
                let b = probe.vertex(b).map_err(|e| Error::parse(*ln, e.to_string()))?;
                edges.push((a, b));
            }
            let parent = if k == 0 {
                Vec::new()
            } else {
                let prev = &levels[k - 1];
                r.parents
                    .iter()
                    .map(|p| prev.vertex(p).map_err(|e| Error::parse(0, format!("level {k}: {e}"))))
                    .collect::<Result<Vec<u32>>>()?
            };
            let level = Level::new(r.names.clone(), &edges, parent);
            if k > 0 {
                check_projection(&level, &levels[k - 1], k)?;
            }
            levels.push(Arc::new(level));
            name_len.push(len);
        }
        let period = match period {
            None => None,
            Some((p, _)) => {
                let first = &levels[levels.len() - p];
                let last = levels.last().unwrap();
                let mut wrap: Vec<Option<u32>> = vec![None; first.len()];
                for (c, q, ln) in &wraps {
                    let c = first.vertex(c).map_err(|e| Error::parse(*ln, e.to_string()))?;
                    let q = last.vertex(q).map_err(|e| Error::parse(*ln, e.to_string()))?;
                    wrap[c as usize] = Some(q);
                }
                let wrap = wrap
                    .iter()
                    .enumerate()
                    .map(|(v, w)| match w {
                        Some(q) => Ok(*q),
                        None => last
                            .vertex(first.name(v as u32))
                            .map_err(|_| Error::parse(0, format!("no wrap for {:?}", first.name(v as u32)))),
                    })
                    .collect::<Result<Vec<u32>>>()?;
                let copy = Level::new(first.names.clone(), &edge_list(first), wrap.clone());
                check_projection(&copy, last, levels.len())?;
                Some((p, wrap))
            }
        };
        Ok(ExplicitSystem {
            levels,
            name_len,
            period,
        })
    }

    fn template(&self, n: usize) -> Result<usize> {
        let l = self.levels.len();
        if n < l {
            return Ok(n);
        }
        match &self.period {
            Some((p, _)) => Ok(l - p + (n - l) % p),
            None => Err(Error::HypothesisViolated(format!("level {n} is beyond the {l} listed levels"))),
        }
    }
}

fn edge_list(l: &Level) -> Vec<(u32, u32)> {
    (0..l.len() as u32)
        .flat_map(|u| l.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect()
}

fn check_projection(child: &Level, parent: &Level, k: usize) -> Result<()> {
    let mut hit = vec![false; parent.len()];
    for v in 0..child.len() as u32 {
        let p = child.parent(v).unwrap();
        hit[p as usize] = true;
        for &w in child.neighbors(v) {
            if !parent.adjacent(p, child.parent(w).unwrap()) {
                return Err(Error::parse(
                    0,
                    format!("level {k}: edge {}–{} does not project to an edge", child.name(v), child.name(w)),
                ));
            }
        }
    }
    if let Some(i) = hit.iter().position(|h| !h) {
        return Err(Error::parse(0, format!("level {k}: projection misses {:?}", parent.name(i as u32))));
    }
    Ok(())
}

impl GraphSystem for ExplicitSystem {
    fn level(&self, n: usize) -> Result<Arc<Level>> {
        let t = self.template(n)?;
        if n < self.levels.len() {
            return Ok(self.levels[n].clone());
        }
        let (p, wrap) = self.period.as_ref().unwrap();
        let tl = &self.levels[t];
        if t == self.levels.len() - p {
            Ok(Arc::new(Level::new(tl.names.clone(), &edge_list(tl), wrap.clone())))
        } else {
            Ok(tl.clone())
        }
    }

    fn point_vertex(&self, n: usize, x: &EventuallyPeriodicPoint) -> Result<u32> {
        if x.side != Side::N {
            return Err(Error::SideMismatch);
        }
        let t = self.template(n)?;
        let name: Option<String> = x
            .window(0, self.name_len[t] as i64)
            .iter()
            .map(|&s| char::from_digit(s, 36))
            .collect();
        name.and_then(|s| self.levels[t].vertex(&s).ok())
            .ok_or(Error::PointNotInSubshift)
    }
}
