//! Sofic shifts and sofic relations over ℕ and ℤ.
//!
//! A [`SoficPresentation`] is an essential edge-labeled graph; the subshift
//! it denotes is the set of label sequences of its infinite paths (one-sided
//! paths for side ℕ, bi-infinite paths for side ℤ). Every vertex of an
//! essential ℕ-presentation is initial.
//! A [`SoficRelation`] is a presentation over a pair alphabet.

mod entropy;
mod expansive;
mod forbidden;
mod point;
mod relation;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use crate::automata::{determinize_minimize, Alphabet, Dfa, FiniteAutomaton, Sym};
use crate::error::{Error, Result};

pub use entropy::entropy;
pub use expansive::{is_expansive, is_expansive_with, sft_approximation_witness, ExpansivityCertificate, Verdict};
pub use forbidden::{is_sft, minimal_forbidden_words, MinimalForbidden};
pub use point::{membership, pair_membership, EventuallyPeriodicPoint};
pub use relation::{
    equivalence_check, transitive_closure_semialg, ClosureResult, EquivalenceReport, SoficRelation,
};

/// Index set of configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// One-sided configurations indexed by ℕ.
    N,
    /// Two-sided configurations indexed by ℤ.
    Z,
}

impl Side {
    /// Token used in files.
    pub fn token(self) -> &'static str {
        match self {
            Side::N => "N",
            Side::Z => "Z",
        }
    }
}

pub(crate) fn same_side(a: Side, b: Side) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SideMismatch)
    }
}

/// A labeled edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    /// Source vertex.
    pub src: u32,
    /// Label.
    pub label: Sym,
    /// Target vertex.
    pub dst: u32,
}

/// An edge-labeled directed multigraph, not necessarily essential.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    /// Edge label alphabet.
    pub alphabet: Arc<Alphabet>,
    /// Number of vertices.
    pub num_vertices: usize,
    /// Edges.
    pub edges: Vec<Edge>,
    /// Initial vertices (meaningful for side ℕ only).
    pub initial: Vec<u32>,
}

impl LabeledGraph {
    /// A graph without vertices.
    pub fn new(alphabet: Arc<Alphabet>) -> Self {
        LabeledGraph {
            alphabet,
            num_vertices: 0,
            edges: Vec::new(),
            initial: Vec::new(),
        }
    }

    /// Adds a vertex.
    pub fn add_vertex(&mut self) -> u32 {
        self.num_vertices += 1;
        (self.num_vertices - 1) as u32
    }

    /// Adds an edge.
    pub fn add_edge(&mut self, src: u32, label: Sym, dst: u32) {
        self.edges.push(Edge { src, label, dst });
    }

    /// Marks every vertex initial.
    pub fn all_initial(mut self) -> Self {
        self.initial = (0..self.num_vertices as u32).collect();
        self
    }

    /// Outgoing edge indices per vertex.
    pub fn out_lists(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.num_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src as usize].push(i as u32);
        }
        out
    }

    /// Incoming edge indices per vertex.
    pub fn in_lists(&self) -> Vec<Vec<u32>> {
        let mut inn = vec![Vec::new(); self.num_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            inn[e.dst as usize].push(i as u32);
        }
        inn
    }
}

/// An essential labeled graph denoting a sofic subshift.
#[derive(Debug, Clone)]
pub struct SoficPresentation {
    side: Side,
    graph: LabeledGraph,
    language: OnceLock<Dfa>,
}

/// Removes inessential vertices and renumbers the survivors.
///
/// Side ℤ keeps vertices lying on bi-infinite paths; side ℕ keeps vertices
/// reachable from an initial vertex with an infinite forward path and marks
/// all of them initial, so the result denotes the shift-invariant hull of
/// the input's one-sided path labels.
pub fn essentialize(g: LabeledGraph, side: Side) -> Result<SoficPresentation> {
    let n = g.num_vertices;
    let mut alive = vec![true; n];
    let mut outdeg = vec![0usize; n];
    let mut indeg = vec![0usize; n];
    for e in &g.edges {
        outdeg[e.src as usize] += 1;
        indeg[e.dst as usize] += 1;
    }
    let outl = g.out_lists();
    let inl = g.in_lists();
    let mut queue: VecDeque<u32> = VecDeque::new();
    for v in 0..n {
        if outdeg[v] == 0 || (side == Side::Z && indeg[v] == 0) {
            alive[v] = false;
            queue.push_back(v as u32);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &ei in &inl[v as usize] {
            let u = g.edges[ei as usize].src as usize;
            if alive[u] {
                outdeg[u] -= 1;
                if outdeg[u] == 0 {
                    alive[u] = false;
                    queue.push_back(u as u32);
                }
            }
        }
        if side == Side::Z {
            for &ei in &outl[v as usize] {
                let w = g.edges[ei as usize].dst as usize;
                if alive[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        alive[w] = false;
                        queue.push_back(w as u32);
                    }
                }
            }
        }
    }
    if side == Side::N {
        let mut reach = vec![false; n];
        let mut stack: Vec<u32> = g.initial.iter().copied().filter(|&v| alive[v as usize]).collect();
        for &v in &stack {
            reach[v as usize] = true;
        }
        while let Some(v) = stack.pop() {
            for &ei in &outl[v as usize] {
                let w = g.edges[ei as usize].dst;
                if alive[w as usize] && !reach[w as usize] {
                    reach[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        alive = reach;
    }
    let mut id = vec![u32::MAX; n];
    let mut m = 0u32;
    for v in 0..n {
        if alive[v] {
            id[v] = m;
            m += 1;
        }
    }
    if m == 0 {
        return Err(Error::EmptySubshift);
    }
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .filter(|e| alive[e.src as usize] && alive[e.dst as usize])
        .map(|e| Edge {
            src: id[e.src as usize],
            label: e.label,
            dst: id[e.dst as usize],
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let mut initial: Vec<u32> = match side {
        Side::N => (0..m).collect(),
        Side::Z => Vec::new(),
    };
    initial.sort_unstable();
    initial.dedup();
    Ok(SoficPresentation {
        side,
        graph: LabeledGraph {
            alphabet: g.alphabet,
            num_vertices: m as usize,
            edges,
            initial,
        },
        language: OnceLock::new(),
    })
}

impl SoficPresentation {
    /// Index side.
    pub fn side(&self) -> Side {
        self.side
    }

    /// Underlying essential graph.
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    /// Edge alphabet.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.graph.alphabet
    }

    /// Number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices
    }

    /// The full shift on an alphabet.
    pub fn full_shift(alphabet: Arc<Alphabet>, side: Side) -> Self {
        let mut g = LabeledGraph::new(alphabet.clone());
        let v = g.add_vertex();
        for s in 0..alphabet.len() as Sym {
            g.add_edge(v, s, v);
        }
        essentialize(g.all_initial(), side).expect("full shift is nonempty")
    }

    /// SFT whose admissible words are those for which `ok` holds on every
    /// prefix-extension `w·a` with `|w·a| ≤ k`, where `w` ranges over the
    /// last `k-1` symbols. Vertices are words of length at most `k-1`; for
    /// side ℕ the empty word is initial.
    pub fn sft_from_predicate(
        alphabet: Arc<Alphabet>,
        k: usize,
        side: Side,
        ok: impl Fn(&[Sym]) -> bool,
    ) -> Result<Self> {
        let keep = k.saturating_sub(1);
        let mut g = LabeledGraph::new(alphabet.clone());
        let mut ids: HashMap<Vec<Sym>, u32> = HashMap::new();
        let mut words: Vec<Vec<Sym>> = vec![Vec::new()];
        ids.insert(Vec::new(), g.add_vertex());
        g.initial.push(0);
        let mut i = 0;
        while i < words.len() {
            let w = words[i].clone();
            for a in 0..alphabet.len() as Sym {
                let mut wa = w.clone();
                wa.push(a);
                if !ok(&wa) {
                    continue;
                }
                let next: Vec<Sym> = wa[wa.len().saturating_sub(keep)..].to_vec();
                let next = if keep == 0 { Vec::new() } else { next };
                let t = match ids.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = g.add_vertex();
                        ids.insert(next.clone(), t);
                        words.push(next);
                        t
                    }
                };
                g.add_edge(ids[&w], a, t);
            }
            i += 1;
        }
        essentialize(g, side)
    }

    /// SFT forbidding exactly the given words.
    pub fn from_forbidden_words(words: &[Vec<Sym>], alphabet: Arc<Alphabet>, side: Side) -> Result<Self> {
        if words.iter().any(|w| w.is_empty()) {
            return Err(Error::HypothesisViolated("forbidden words must be nonempty".into()));
        }
        let k = words.iter().map(|w| w.len()).max().unwrap_or(1);
        Self::sft_from_predicate(alphabet, k, side, |wa| !words.iter().any(|f| wa.ends_with(f)))
    }

    /// SFT all of whose length-`k` windows lie in `blocks` (all of length `k`).
    pub fn from_allowed_blocks(blocks: &[Vec<Sym>], alphabet: Arc<Alphabet>, side: Side) -> Result<Self> {
        let k = blocks.first().map(|b| b.len()).unwrap_or(1);
        if blocks.iter().any(|b| b.len() != k) || k == 0 {
            return Err(Error::HypothesisViolated("allowed blocks must share a positive length".into()));
        }
        let set: std::collections::HashSet<&[Sym]> = blocks.iter().map(|b| b.as_slice()).collect();
        Self::sft_from_predicate(alphabet, k, side, |wa| {
            if wa.len() == k {
                set.contains(wa)
            } else {
                blocks.iter().any(|b| b.starts_with(wa))
            }
        })
    }

    /// Closure of the shift orbits of finitely many eventually periodic
    /// points, presented by one lasso per point.
    pub fn orbit_closure(points: &[EventuallyPeriodicPoint], alphabet: Arc<Alphabet>, side: Side) -> Result<Self> {
        let mut g = LabeledGraph::new(alphabet);
        for p in points {
            same_side(p.side, side)?;
            point::add_lasso(&mut g, p);
        }
        essentialize(g.all_initial(), side)
    }

    /// Presentation of the intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        same_side(self.side, other.side)?;
        crate::automata::same_alphabet(self.alphabet(), other.alphabet())?;
        let g = product_graph(&self.graph, &other.graph, self.alphabet().clone(), Some, Some, |a, _| a);
        essentialize(g, self.side)
    }

    /// Presentation of the union.
    pub fn union(&self, other: &Self) -> Result<Self> {
        same_side(self.side, other.side)?;
        crate::automata::same_alphabet(self.alphabet(), other.alphabet())?;
        let g = disjoint_union(&self.graph, &other.graph);
        essentialize(g, self.side)
    }

    /// Block language: labels of finite paths, all vertices initial and
    /// accepting. Memoized.
    pub fn block_language(&self) -> &Dfa {
        self.language.get_or_init(|| determinize_minimize(&self.path_automaton()))
    }

    /// The graph read as an automaton with every vertex initial and accepting.
    pub fn path_automaton(&self) -> FiniteAutomaton {
        let mut a = FiniteAutomaton::new(self.alphabet().clone());
        for v in 0..self.num_vertices() as u32 {
            a.add_state();
            a.set_initial(v);
            a.set_accepting(v, true);
        }
        for e in &self.graph.edges {
            a.add_edge(e.src, e.label, e.dst);
        }
        a
    }

    /// Language-equal presentation read off the canonical block-language
    /// DFA (its non-sink states).
    pub fn reduce(&self) -> Self {
        let d = self.block_language();
        let live = d.live_states();
        let mut g = LabeledGraph::new(self.alphabet().clone());
        g.num_vertices = d.num_states();
        for q in 0..d.num_states() as u32 {
            if !live[q as usize] {
                continue;
            }
            for s in 0..self.alphabet().len() as Sym {
                let t = d.next(q, s);
                if live[t as usize] {
                    g.add_edge(q, s, t);
                }
            }
        }
        g.initial = vec![0];
        let out = essentialize(g, self.side).expect("nonempty subshift");
        let _ = out.language.set(d.clone());
        out
    }

    /// Language equality of the denoted subshifts.
    pub fn language_equal(&self, other: &Self) -> bool {
        self.side == other.side && self.block_language() == other.block_language()
    }

    /// Admissible words of a given length, sorted.
    pub fn words_of_length(&self, n: usize) -> Vec<Vec<Sym>> {
        self.block_language().words_of_length(n)
    }

    /// Applies a letterwise map to labels.
    pub fn relabel(&self, target: Arc<Alphabet>, f: impl Fn(Sym) -> Sym) -> Result<Self> {
        let mut g = self.graph.clone();
        g.alphabet = target;
        for e in g.edges.iter_mut() {
            e.label = f(e.label);
        }
        essentialize(g, self.side)
    }

    /// Serializes to the presentation file format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "side {}", self.side.token());
        let toks = match self.alphabet().base() {
            Some(b) => b.tokens().join(" "),
            None => self.alphabet().tokens().join(" "),
        };
        let _ = writeln!(s, "alphabet {toks}");
        if self.alphabet().is_paired() {
            let _ = writeln!(s, "paired");
        }
        for v in 0..self.num_vertices() {
            let _ = writeln!(s, "state v{v}");
        }
        for &v in &self.graph.initial {
            let _ = writeln!(s, "initial v{v}");
        }
        for e in &self.graph.edges {
            let _ = writeln!(s, "edge v{} {} v{}", e.src, self.alphabet().token(e.label), e.dst);
        }
        s
    }

    /// Parses the presentation file format: `side Z|N`, `alphabet <tok>…`,
    /// optional `paired`, `state`, `initial`, `edge <src> <tok> <dst>`.
    /// Edge tokens of the form `a|b` also switch to the pair alphabet.
    /// Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut side = None;
        let mut base: Option<Vec<String>> = None;
        let mut paired = false;
        let mut names: HashMap<String, u32> = HashMap::new();
        let mut initial = Vec::new();
        let mut raw_edges = Vec::new();
        let mut count = 0u32;
        let mut intern = |n: &str, names: &mut HashMap<String, u32>| {
            *names.entry(n.to_string()).or_insert_with(|| {
                count += 1;
                count - 1
            })
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match (parts[0], parts.len()) {
                ("side", 2) => {
                    side = Some(match parts[1] {
                        "N" => Side::N,
                        "Z" => Side::Z,
                        other => return Err(Error::parse(i + 1, format!("unknown side {other}"))),
                    })
                }
                ("alphabet", n) if n >= 2 => base = Some(parts[1..].iter().map(|s| s.to_string()).collect()),
                ("paired", 1) => paired = true,
                ("state", 2) => {
                    intern(parts[1], &mut names);
                }
                ("initial", 2) => initial.push(intern(parts[1], &mut names)),
                ("edge", 4) => {
                    let a = intern(parts[1], &mut names);
                    let b = intern(parts[3], &mut names);
                    if parts[2].contains('|') {
                        paired = true;
                    }
                    raw_edges.push((a, parts[2].to_string(), b, i + 1));
                }
                _ => return Err(Error::parse(i + 1, format!("unrecognized line {line:?}"))),
            }
        }
        let side = side.ok_or_else(|| Error::parse(0, "missing side line"))?;
        let base = base.ok_or_else(|| Error::parse(0, "missing alphabet line"))?;
        let base = Alphabet::new(&base)?;
        let alphabet = if paired { Alphabet::pair(&base) } else { base };
        let mut g = LabeledGraph::new(alphabet.clone());
        g.num_vertices = names.len();
        for (a, t, b, line) in raw_edges {
            let s = alphabet.symbol(&t).map_err(|_| Error::parse(line, format!("unknown symbol {t:?}")))?;
            g.add_edge(a, s, b);
        }
        g.initial = if side == Side::N && initial.is_empty() {
            (0..g.num_vertices as u32).collect()
        } else {
            initial
        };
        essentialize(g, side)
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph sofic {\n  rankdir=LR;\n");
        for &v in &self.graph.initial {
            let _ = writeln!(s, "  v{v} [shape=doublecircle];");
        }
        for e in &self.graph.edges {
            let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.src, e.dst, self.alphabet().token(e.label));
        }
        s.push_str("}\n");
        s
    }
}

/// Synchronous product of two graphs. Edges `e1`, `e2` combine when
/// `key_a(e1.label) == key_b(e2.label)`, producing label `combine`.
pub(crate) fn product_graph<K: Eq + std::hash::Hash>(
    a: &LabeledGraph,
    b: &LabeledGraph,
    alphabet: Arc<Alphabet>,
    key_a: impl Fn(Sym) -> Option<K>,
    key_b: impl Fn(Sym) -> Option<K>,
    combine: impl Fn(Sym, Sym) -> Sym,
) -> LabeledGraph {
    let nb = b.num_vertices as u64;
    let mut by_key: HashMap<K, Vec<&Edge>> = HashMap::new();
    for e in &b.edges {
        if let Some(k) = key_b(e.label) {
            by_key.entry(k).or_default().push(e);
        }
    }
    let mut g = LabeledGraph::new(alphabet);
    let total = a.num_vertices as u64 * nb;
    assert!(total < u32::MAX as u64, "product graph too large");
    g.num_vertices = total as usize;
    for e1 in &a.edges {
        let Some(k) = key_a(e1.label) else { continue };
        if let Some(list) = by_key.get(&k) {
            for e2 in list {
                g.add_edge(
                    (e1.src as u64 * nb + e2.src as u64) as u32,
                    combine(e1.label, e2.label),
                    (e1.dst as u64 * nb + e2.dst as u64) as u32,
                );
            }
        }
    }
    for &i in &a.initial {
        for &j in &b.initial {
            g.initial.push((i as u64 * nb + j as u64) as u32);
        }
    }
    g
}

pub(crate) fn disjoint_union(a: &LabeledGraph, b: &LabeledGraph) -> LabeledGraph {
    let off = a.num_vertices as u32;
    let mut g = a.clone();
    g.num_vertices += b.num_vertices;
    for e in &b.edges {
        g.add_edge(e.src + off, e.label, e.dst + off);
    }
    g.initial.extend(b.initial.iter().map(|&v| v + off));
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn bin() -> Arc<Alphabet> {
        Alphabet::new(&["0", "1"]).unwrap()
    }

    pub(crate) fn golden(side: Side) -> SoficPresentation {
        SoficPresentation::from_forbidden_words(&[vec![1, 1]], bin(), side).unwrap()
    }

    #[test]
    fn dead_branch_is_removed() {
        let mut g = LabeledGraph::new(bin());
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(a, 0, a);
        g.add_edge(a, 1, b);
        let p = essentialize(g, Side::Z).unwrap();
        assert_eq!(p.num_vertices(), 1);
        assert_eq!(p.graph().edges.len(), 1);
    }

    #[test]
    fn lasso_graph_is_unchanged() {
        let mut g = LabeledGraph::new(bin());
        let (a, b, c) = (g.add_vertex(), g.add_vertex(), g.add_vertex());
        g.add_edge(a, 0, a);
        g.add_edge(a, 1, b);
        g.add_edge(b, 0, c);
        g.add_edge(c, 0, c);
        let p = essentialize(g, Side::Z).unwrap();
        assert_eq!(p.num_vertices(), 3);
        // Length-4 words: at most one 1, from the brute-force path labels.
        let words = p.words_of_length(4);
        assert_eq!(words.len(), 5);
        assert!(words.iter().all(|w| w.iter().filter(|&&s| s == 1).count() <= 1));
    }

    #[test]
    fn acyclic_graph_is_empty() {
        let mut g = LabeledGraph::new(bin());
        let (a, b) = (g.add_vertex(), g.add_vertex());
        g.add_edge(a, 0, b);
        assert_eq!(essentialize(g, Side::Z).unwrap_err(), Error::EmptySubshift);
    }

    #[test]
    fn forbidden_word_examples() {
        let g = golden(Side::Z);
        let d = g.block_language();
        assert!(d.accepts(&[1, 0, 1, 0]));
        assert!(!d.accepts(&[0, 1, 1]));
        let full = SoficPresentation::from_forbidden_words(&[], bin(), Side::Z).unwrap();
        assert!(full.language_equal(&SoficPresentation::full_shift(bin(), Side::Z)));
        let two = SoficPresentation::from_forbidden_words(&[vec![0, 0], vec![1, 1]], bin(), Side::Z).unwrap();
        assert_eq!(two.words_of_length(4), vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]);
    }

    #[test]
    fn at_most_one_one() {
        let x = xle1(Side::Z);
        for w in x.block_language().words_up_to(6) {
            assert!(w.iter().filter(|&&s| s == 1).count() <= 1);
        }
        assert_eq!(x.words_of_length(5).len(), 6);
    }

    pub(crate) fn xle1(side: Side) -> SoficPresentation {
        let mut g = LabeledGraph::new(bin());
        let (a, b) = (g.add_vertex(), g.add_vertex());
        g.add_edge(a, 0, a);
        g.add_edge(a, 1, b);
        g.add_edge(b, 0, b);
        essentialize(g.all_initial(), side).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let g = golden(Side::N);
        let back = SoficPresentation::parse(&g.to_text()).unwrap();
        assert!(g.language_equal(&back));
    }
}
