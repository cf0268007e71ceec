//! Eventually periodic configurations and membership by lasso search.

use std::sync::Arc;

use num_integer::Integer;

use crate::automata::{Alphabet, Sym};
use crate::error::{Error, Result};

use super::{same_side, LabeledGraph, Side, SoficPresentation, SoficRelation};

/// The configuration `^∞(left) core (right)^∞` (side ℤ, `core` starting
/// at coordinate 0) or `core (right)^∞` (side ℕ).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicPoint {
    /// Index side.
    pub side: Side,
    /// Left period, repeated towards −∞ (side ℤ only).
    pub left: Vec<Sym>,
    /// Finite core starting at coordinate 0.
    pub core: Vec<Sym>,
    /// Right period, repeated towards +∞.
    pub right: Vec<Sym>,
}

impl EventuallyPeriodicPoint {
    /// A two-sided point.
    pub fn z(left: Vec<Sym>, core: Vec<Sym>, right: Vec<Sym>) -> Self {
        assert!(!left.is_empty() && !right.is_empty(), "periods must be nonempty");
        EventuallyPeriodicPoint {
            side: Side::Z,
            left,
            core,
            right,
        }
    }

    /// A one-sided point.
    pub fn n(core: Vec<Sym>, right: Vec<Sym>) -> Self {
        assert!(!right.is_empty(), "period must be nonempty");
        EventuallyPeriodicPoint {
            side: Side::N,
            left: Vec::new(),
            core,
            right,
        }
    }

    /// Symbol at a coordinate (negative coordinates only for side ℤ).
    pub fn symbol_at(&self, i: i64) -> Sym {
        if i < 0 {
            assert_eq!(self.side, Side::Z);
            self.left[i.rem_euclid(self.left.len() as i64) as usize]
        } else if (i as usize) < self.core.len() {
            self.core[i as usize]
        } else {
            self.right[(i as usize - self.core.len()) % self.right.len()]
        }
    }

    /// The window of coordinates `lo..hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Sym> {
        (lo..hi).map(|i| self.symbol_at(i)).collect()
    }

    /// Parses `left ; core ; right` (side ℤ) or `core ; right` (side ℕ).
    pub fn parse(s: &str, alphabet: &Arc<Alphabet>, side: Side) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        let w = |t: &str| alphabet.parse_word(t);
        match (side, parts.len()) {
            (Side::Z, 3) => {
                let (l, c, r) = (w(parts[0])?, w(parts[1])?, w(parts[2])?);
                if l.is_empty() || r.is_empty() {
                    return Err(Error::parse(0, "periods must be nonempty"));
                }
                Ok(Self::z(l, c, r))
            }
            (Side::N, 2) => {
                let (c, r) = (w(parts[0])?, w(parts[1])?);
                if r.is_empty() {
                    return Err(Error::parse(0, "period must be nonempty"));
                }
                Ok(Self::n(c, r))
            }
            _ => Err(Error::parse(0, format!("expected 'left;core;right' or 'core;right', got {s:?}"))),
        }
    }

    /// Formats in the syntax accepted by [`EventuallyPeriodicPoint::parse`].
    pub fn format(&self, alphabet: &Alphabet) -> String {
        let f = |w: &[Sym]| alphabet.format_word(w);
        match self.side {
            Side::Z => format!("{};{};{}", f(&self.left), f(&self.core), f(&self.right)),
            Side::N => format!("{};{}", f(&self.core), f(&self.right)),
        }
    }

    /// Coordinatewise pairing of two points over `pair`.
    pub fn zip(&self, other: &Self, pair: &Alphabet) -> Result<Self> {
        same_side(self.side, other.side)?;
        let c = self.core.len().max(other.core.len());
        let r = self.right.len().lcm(&other.right.len());
        let z = |i: i64| pair.join(self.symbol_at(i), other.symbol_at(i));
        let core: Vec<Sym> = (0..c as i64).map(z).collect();
        let right: Vec<Sym> = (c as i64..(c + r) as i64).map(z).collect();
        Ok(match self.side {
            Side::Z => {
                let l = self.left.len().lcm(&other.left.len()) as i64;
                let left: Vec<Sym> = (-l..0).map(z).collect();
                Self::z(left, core, right)
            }
            Side::N => Self::n(core, right),
        })
    }

    /// The left and right track of a point over a pair alphabet.
    pub fn unzip(&self, pair: &Alphabet) -> (Self, Self) {
        let l = |w: &[Sym]| w.iter().map(|&s| pair.split(s).0).collect::<Vec<_>>();
        let r = |w: &[Sym]| w.iter().map(|&s| pair.split(s).1).collect::<Vec<_>>();
        let mk = |f: &dyn Fn(&[Sym]) -> Vec<Sym>| EventuallyPeriodicPoint {
            side: self.side,
            left: f(&self.left),
            core: f(&self.core),
            right: f(&self.right),
        };
        (mk(&l), mk(&r))
    }
}

/// Appends a lasso graph whose infinite paths trace the orbit of `p`.
pub(crate) fn add_lasso(g: &mut LabeledGraph, p: &EventuallyPeriodicPoint) {
    let cycle = |g: &mut LabeledGraph, w: &[Sym]| -> Vec<u32> {
        let vs: Vec<u32> = (0..w.len()).map(|_| g.add_vertex()).collect();
        for i in 0..w.len() {
            g.add_edge(vs[i], w[i], vs[(i + 1) % w.len()]);
        }
        vs
    };
    let right = cycle(g, &p.right);
    let mut entry = right[0];
    for &s in p.core.iter().rev() {
        let v = g.add_vertex();
        g.add_edge(v, s, entry);
        entry = v;
    }
    if p.side == Side::Z {
        let left = cycle(g, &p.left);
        // Redirect the edge closing the left cycle into the core.
        let last = *left.last().unwrap();
        let mut extra = *g.edges.iter().find(|e| e.src == last && e.dst == left[0]).unwrap();
        extra.dst = entry;
        g.edges.push(extra);
    }
}

fn step_forward(x: &SoficPresentation, set: &[bool], w: &[Sym]) -> Vec<bool> {
    let g = x.graph();
    let mut cur = set.to_vec();
    for &s in w {
        let mut next = vec![false; g.num_vertices];
        for e in &g.edges {
            if e.label == s && cur[e.src as usize] {
                next[e.dst as usize] = true;
            }
        }
        cur = next;
    }
    cur
}

fn step_backward(x: &SoficPresentation, set: &[bool], w: &[Sym]) -> Vec<bool> {
    let g = x.graph();
    let mut cur = set.to_vec();
    for &s in w.iter().rev() {
        let mut prev = vec![false; g.num_vertices];
        for e in &g.edges {
            if e.label == s && cur[e.dst as usize] {
                prev[e.src as usize] = true;
            }
        }
        cur = prev;
    }
    cur
}

fn greatest_fixpoint(n: usize, f: impl Fn(&[bool]) -> Vec<bool>) -> Vec<bool> {
    let mut s = vec![true; n];
    loop {
        let t = f(&s);
        if t == s {
            return s;
        }
        s = t;
    }
}

/// Whether the configuration denoted by `p` lies in `x`.
pub fn membership(p: &EventuallyPeriodicPoint, x: &SoficPresentation) -> Result<bool> {
    same_side(p.side, x.side())?;
    let n = x.num_vertices();
    if let Some(&bad) = p.core.iter().chain(&p.left).chain(&p.right).find(|&&s| s as usize >= x.alphabet().len()) {
        return Err(Error::UnknownSymbol(bad.to_string()));
    }
    let tail = greatest_fixpoint(n, |s| step_backward(x, s, &p.right));
    let start: Vec<bool> = match p.side {
        Side::Z => greatest_fixpoint(n, |s| step_forward(x, s, &p.left)),
        Side::N => {
            let mut v = vec![false; n];
            for &i in &x.graph().initial {
                v[i as usize] = true;
            }
            v
        }
    };
    let end = step_forward(x, &start, &p.core);
    Ok(end.iter().zip(&tail).any(|(&a, &b)| a && b))
}

/// Whether the zipped pair `(p, q)` lies in the relation.
pub fn pair_membership(p: &EventuallyPeriodicPoint, q: &EventuallyPeriodicPoint, r: &SoficRelation) -> Result<bool> {
    let z = p.zip(q, r.presentation().alphabet())?;
    membership(&z, r.presentation())
}

#[cfg(test)]
mod tests {
    use super::super::tests::{bin, golden, xle1};
    use super::*;

    #[test]
    fn at_most_one_one_membership() {
        let x = xle1(Side::Z);
        let one = EventuallyPeriodicPoint::z(vec![0], vec![1], vec![0]);
        let two = EventuallyPeriodicPoint::z(vec![0], vec![1, 1], vec![0]);
        assert!(membership(&one, &x).unwrap());
        assert!(!membership(&two, &x).unwrap());
    }

    #[test]
    fn periodic_golden_point() {
        let p = EventuallyPeriodicPoint::z(vec![1, 0], vec![], vec![1, 0]);
        assert!(membership(&p, &golden(Side::Z)).unwrap());
        let q = EventuallyPeriodicPoint::z(vec![1, 0], vec![1], vec![1, 0]);
        assert!(!membership(&q, &golden(Side::Z)).unwrap());
    }

    #[test]
    fn lasso_orbit_closure() {
        let p = EventuallyPeriodicPoint::z(vec![0], vec![1], vec![0]);
        let x = SoficPresentation::orbit_closure(std::slice::from_ref(&p), bin(), Side::Z).unwrap();
        assert!(x.language_equal(&xle1(Side::Z)));
        assert!(membership(&p, &x).unwrap());
    }

    #[test]
    fn zip_and_unzip() {
        let pair = Alphabet::pair(&bin());
        let p = EventuallyPeriodicPoint::n(vec![1], vec![0]);
        let q = EventuallyPeriodicPoint::n(vec![], vec![0, 1]);
        let z = p.zip(&q, &pair).unwrap();
        for i in 0..10 {
            assert_eq!(pair.split(z.symbol_at(i)), (p.symbol_at(i), q.symbol_at(i)));
        }
        let (a, b) = z.unzip(&pair);
        for i in 0..10 {
            assert_eq!(a.symbol_at(i), p.symbol_at(i));
            assert_eq!(b.symbol_at(i), q.symbol_at(i));
        }
    }
}
