//! Brute-force oracles shared by the integration tests.
//!
//! A raw graph is a list of labeled edges. Its language is computed by
//! simulating sets of end vertices word by word: a word is a factor when it
//! labels a path from a vertex with an infinite past (side ℤ) or reachable
//! from an initial vertex (side ℕ) to a vertex with an infinite future.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use sofic::automata::{Alphabet, Sym};
use sofic::symbolic::{essentialize, LabeledGraph, Side, SoficPresentation, SoficRelation};

/// A labeled graph given by its edge list.
#[derive(Debug, Clone)]
pub struct Raw {
    pub side: Side,
    pub k: u32,
    pub n: usize,
    pub edges: Vec<(usize, Sym, usize)>,
    pub initial: Vec<usize>,
}

impl Raw {
    /// A random graph with `1..=max_n` vertices over `k` symbols; each
    /// possible edge is present with probability `p`.
    pub fn random(rng: &mut impl Rng, max_n: usize, k: u32, p: f64, side: Side) -> Raw {
        let n = rng.gen_range(1..=max_n);
        let mut edges = Vec::new();
        for s in 0..n {
            for a in 0..k {
                for t in 0..n {
                    if rng.gen_bool(p) {
                        edges.push((s, a, t));
                    }
                }
            }
        }
        let mut initial: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if initial.is_empty() {
            initial.push(0);
        }
        Raw {
            side,
            k,
            n,
            edges,
            initial,
        }
    }

    /// The same graph for the library.
    pub fn graph(&self, alphabet: &Arc<Alphabet>) -> LabeledGraph {
        let mut g = LabeledGraph::new(alphabet.clone());
        for _ in 0..self.n {
            g.add_vertex();
        }
        for &(s, a, t) in &self.edges {
            g.add_edge(s as u32, a, t as u32);
        }
        g.initial = self.initial.iter().map(|&v| v as u32).collect();
        g
    }

    /// Library presentation, `None` when the subshift is empty.
    pub fn presentation(&self, alphabet: &Arc<Alphabet>) -> Option<SoficPresentation> {
        essentialize(self.graph(alphabet), self.side).ok()
    }

    /// Library relation over `pair(base)`.
    pub fn relation(&self, base: &Arc<Alphabet>) -> Option<SoficRelation> {
        self.presentation(&Alphabet::pair(base)).map(|p| SoficRelation::from_presentation(p).unwrap())
    }

    fn start_ok(&self) -> Vec<bool> {
        match self.side {
            Side::Z => {
                // Paths of length n into v exist iff v has an infinite past.
                let mut ok = vec![true; self.n];
                for _ in 0..=self.n {
                    let mut next = vec![false; self.n];
                    for &(s, _, t) in &self.edges {
                        if ok[s] {
                            next[t] = true;
                        }
                    }
                    ok = next;
                }
                ok
            }
            Side::N => {
                let mut ok = vec![false; self.n];
                let mut stack = self.initial.clone();
                while let Some(v) = stack.pop() {
                    if !ok[v] {
                        ok[v] = true;
                        stack.extend(self.edges.iter().filter(|e| e.0 == v).map(|e| e.2));
                    }
                }
                ok
            }
        }
    }

    fn future_ok(&self) -> Vec<bool> {
        let mut ok = vec![true; self.n];
        for _ in 0..=self.n {
            let mut next = vec![false; self.n];
            for &(s, _, t) in &self.edges {
                if ok[t] {
                    next[s] = true;
                }
            }
            ok = next;
        }
        ok
    }

    /// Whether `w` is a factor of the subshift.
    pub fn contains(&self, w: &[Sym]) -> bool {
        let fut = self.future_ok();
        let mut cur = self.start_ok();
        for &a in w {
            let mut next = vec![false; self.n];
            for &(s, b, t) in &self.edges {
                if b == a && cur[s] {
                    next[t] = true;
                }
            }
            cur = next;
        }
        (0..self.n).any(|v| cur[v] && fut[v])
    }

    /// All factors of length at most `max_len`.
    pub fn words(&self, max_len: usize) -> BTreeSet<Vec<Sym>> {
        let fut = self.future_ok();
        let mut out = BTreeSet::new();
        let mut stack = vec![(Vec::new(), self.start_ok())];
        while let Some((w, cur)) = stack.pop() {
            if !(0..self.n).any(|v| cur[v] && fut[v]) {
                continue;
            }
            if w.len() < max_len {
                for a in 0..self.k {
                    let mut next = vec![false; self.n];
                    for &(s, b, t) in &self.edges {
                        if b == a && cur[s] {
                            next[t] = true;
                        }
                    }
                    let mut w2 = w.clone();
                    w2.push(a);
                    stack.push((w2, next));
                }
            }
            out.insert(w);
        }
        out
    }

    /// Synchronous product; edges combine when `combine` returns a label.
    pub fn product(&self, other: &Raw, k: u32, combine: impl Fn(Sym, Sym) -> Option<Sym>) -> Raw {
        let mut edges = Vec::new();
        for &(s1, a, t1) in &self.edges {
            for &(s2, b, t2) in &other.edges {
                if let Some(c) = combine(a, b) {
                    edges.push((s1 * other.n + s2, c, t1 * other.n + t2));
                }
            }
        }
        // ℕ-side operands denote their shift-invariant hulls: every vertex
        // reachable from an initial one starts a point.
        let (a, b) = (self.start_ok(), other.start_ok());
        let mut initial = Vec::new();
        for i in (0..self.n).filter(|&i| a[i]) {
            for j in (0..other.n).filter(|&j| b[j]) {
                initial.push(i * other.n + j);
            }
        }
        Raw {
            side: self.side,
            k,
            n: self.n * other.n,
            edges,
            initial,
        }
    }

    /// Disjoint union.
    pub fn union(&self, other: &Raw) -> Raw {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(s, a, t)| (s + self.n, a, t + self.n)));
        let mut initial = self.initial.clone();
        initial.extend(other.initial.iter().map(|&v| v + self.n));
        Raw {
            side: self.side,
            k: self.k,
            n: self.n + other.n,
            edges,
            initial,
        }
    }

    /// Relabels every edge.
    pub fn relabel(&self, k: u32, f: impl Fn(Sym) -> Sym) -> Raw {
        Raw {
            side: self.side,
            k,
            n: self.n,
            edges: self.edges.iter().map(|&(s, a, t)| (s, f(a), t)).collect(),
            initial: self.initial.clone(),
        }
    }
}

/// Pair index `(a, b) ↦ a·n + b` over an `n`-letter base.
pub fn join(n: u32, a: Sym, b: Sym) -> Sym {
    a * n + b
}

/// Inverse of [`join`].
pub fn split(n: u32, s: Sym) -> (Sym, Sym) {
    (s / n, s % n)
}

/// Composition `{(x, z) : ∃y (x, y) ∈ r, (y, z) ∈ s}` over an `n`-letter base.
pub fn compose(r: &Raw, s: &Raw, n: u32) -> Raw {
    r.product(s, n * n, |p, q| {
        let ((a, b), (b2, c)) = (split(n, p), split(n, q));
        (b == b2).then(|| join(n, a, c))
    })
}

/// Transpose over an `n`-letter base.
pub fn transpose(r: &Raw, n: u32) -> Raw {
    r.relabel(n * n, |p| {
        let (a, b) = split(n, p);
        join(n, b, a)
    })
}

/// `r ∩ (x × x)` over an `n`-letter base.
pub fn restrict(r: &Raw, x: &Raw, n: u32) -> Raw {
    let left = r.product(x, n * n, |p, a| (split(n, p).0 == a).then_some(p));
    left.product(x, n * n, |p, b| (split(n, p).1 == b).then_some(p))
}

/// The diagonal of `x`.
pub fn diagonal(x: &Raw, n: u32) -> Raw {
    x.relabel(n * n, |a| join(n, a, a))
}

/// Library block language as a word set.
pub fn library_words(x: &SoficPresentation, max_len: usize) -> BTreeSet<Vec<Sym>> {
    x.block_language().words_up_to(max_len).into_iter().collect()
}

/// Minimal forbidden words of length at most `max_len` from a factor set
/// closed under taking factors and containing all words up to `max_len`.
pub fn minimal_forbidden_oracle(raw: &Raw, max_len: usize) -> BTreeSet<Vec<Sym>> {
    let lang = raw.words(max_len);
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<Sym>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        for a in 0..raw.k {
            let mut w2 = w.clone();
            w2.push(a);
            if lang.contains(&w2) {
                if w2.len() < max_len {
                    stack.push(w2);
                }
            } else if lang.contains(&w2[1..]) {
                out.insert(w2);
            }
        }
    }
    out
}
