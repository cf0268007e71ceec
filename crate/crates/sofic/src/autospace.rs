//! Automatic spaces: finite simplicial complexes as quotients of closed
//! ω-automatic sets, and their suspensions as sofically presented systems.
//!
//! A closed set `Y ⊆ Σ^ℕ` is stored as the minimal DFA of its prefix
//! language (every accepted word extends to an accepted infinite word).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::automata::{determinize_minimize, inclusion_witness, Alphabet, Dfa, FiniteAutomaton, Sym};
use crate::beta::a_req_blocks;
use crate::error::{Error, Result};
use crate::symbolic::{essentialize, EquivalenceReport, LabeledGraph, Side, SoficPresentation, SoficRelation};

/// An abstract simplicial complex on vertices `1..=d`, stored by its
/// maximal facets as bitmasks (bit `j − 1` for vertex `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    d: usize,
    facets: Vec<u32>,
}

impl SimplicialComplex {
    /// The complex generated by `facets` (1-based vertex lists).
    pub fn new(d: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if d > 16 {
            return Err(Error::HypothesisViolated(format!("{d} vertices exceed the limit of 16")));
        }
        let mut masks = Vec::new();
        for f in facets {
            let mut m = 0u32;
            for &v in f {
                if v == 0 || v > d {
                    return Err(Error::HypothesisViolated(format!("vertex {v} is not in 1..={d}")));
                }
                m |= 1 << (v - 1);
            }
            if m != 0 {
                masks.push(m);
            }
        }
        let maximal: Vec<u32> = masks
            .iter()
            .copied()
            .filter(|&m| !masks.iter().any(|&n| n != m && n & m == m))
            .collect();
        let mut facets = maximal;
        facets.sort_unstable();
        facets.dedup();
        if facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(SimplicialComplex { d, facets })
    }

    /// Parses facets separated by commas; a facet is a digit string (`12`)
    /// or whitespace-separated numbers (`1 12`). `d` is the largest vertex.
    pub fn parse(s: &str) -> Result<Self> {
        let mut facets = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let verts: Option<Vec<usize>> = if part.contains(char::is_whitespace) {
                part.split_whitespace().map(|t| t.parse().ok()).collect()
            } else {
                part.chars().map(|c| c.to_digit(10).map(|v| v as usize)).collect()
            };
            facets.push(verts.ok_or_else(|| Error::parse(0, format!("bad facet {part:?}")))?);
        }
        let d = facets.iter().flatten().copied().max().ok_or(Error::EmptyComplex)?;
        Self::new(d, &facets)
    }

    /// The boundary of the `n`-simplex: all `n`-subsets of `n + 1` vertices.
    pub fn simplex_boundary(n: usize) -> Result<Self> {
        let d = n + 1;
        let facets: Vec<Vec<usize>> = (1..=d).map(|skip| (1..=d).filter(|&v| v != skip).collect()).collect();
        Self::new(d, &facets)
    }

    /// Vertex count.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Maximal facets as 1-based vertex lists.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|&m| (1..=self.d).filter(|v| m >> (v - 1) & 1 == 1).collect())
            .collect()
    }

    /// Whether a vertex set (bitmask) is a face.
    pub fn is_face(&self, mask: u32) -> bool {
        self.facets.iter().any(|&f| f & mask == mask)
    }

    /// Largest facet size.
    pub fn max_facet_size(&self) -> usize {
        self.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.d > 9 { " " } else { "" };
        let parts: Vec<String> = self
            .facets()
            .iter()
            .map(|fa| fa.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The alphabet `{0,1}^d`, tokens written as bit strings; symbol `s` has
/// coordinate `j` (1-based) equal to bit `d − j` of `s`.
pub fn bit_alphabet(d: usize) -> Arc<Alphabet> {
    if d == 1 {
        return Alphabet::digits(2);
    }
    let tokens: Vec<String> = (0..1u32 << d).map(|s| format!("{s:0d$b}")).collect();
    Alphabet::new(&tokens).expect("distinct tokens")
}

fn coord(s: Sym, j: usize, d: usize) -> Sym {
    (s >> (d - 1 - j)) & 1
}

/// A closed automatic space `Y/Z` with `Y ⊆ Σ^ℕ` given by its prefix DFA
/// and `Z` the coordinatewise equal-reals relation.
#[derive(Debug, Clone)]
pub struct AutomaticSpacePresentation {
    /// The complex it realizes.
    pub complex: SimplicialComplex,
    /// Prefix DFA of `Y` over `{0,1}^d`.
    pub y: Dfa,
    /// The relation `Z`.
    pub relation: EqualReals,
    z: OnceLock<Dfa>,
}

impl AutomaticSpacePresentation {
    /// The symbol alphabet `Σ`.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.y.alphabet()
    }

    /// Prefix DFA of `Z ∩ Y²`, built on first use.
    pub fn z(&self) -> Result<&Dfa> {
        if let Some(z) = self.z.get() {
            return Ok(z);
        }
        let z = self.relation.restricted_to(&self.y)?;
        Ok(self.z.get_or_init(|| z))
    }
}

/// Removes states without an infinite future or unreachable from the
/// initial states, marks the rest accepting and minimizes.
pub fn prefix_dfa(a: &FiniteAutomaton) -> Dfa {
    let n = a.num_states();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for q in 0..n {
            if alive[q] && !a.out(q as u32).iter().any(|&(_, t)| alive[t as usize]) {
                alive[q] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = FiniteAutomaton::new(a.alphabet().clone());
    for _ in 0..n {
        out.add_state();
    }
    for q in 0..n as u32 {
        if alive[q as usize] {
            out.set_accepting(q, true);
            for &(s, t) in a.out(q) {
                if alive[t as usize] {
                    out.add_edge(q, s, t);
                }
            }
        }
    }
    for &q in a.initial() {
        if alive[q as usize] {
            out.set_initial(q);
        }
    }
    determinize_minimize(&out)
}

/// Prefix DFA of the points of `Σ^ℕ` whose coordinate values
/// `bin(y_j) = Σ_i 2^{-i} y_{j,i}` lie in the standard embedding of the
/// complex: they sum to 1 and their support is a face. States are the
/// remainder `r = 2^k(1 − partial sum)` and the support so far; the
/// remainder never exceeds the largest facet size.
pub fn simplex_space(k: &SimplicialComplex) -> Result<AutomaticSpacePresentation> {
    let d = k.d;
    let sigma = bit_alphabet(d);
    let rmax = k.max_facet_size() as i64;
    let mut nfa = FiniteAutomaton::new(sigma.clone());
    let mut ids: HashMap<(i64, u32), u32> = HashMap::new();
    let mut queue = vec![(1i64, 0u32)];
    ids.insert((1, 0), nfa.add_state());
    nfa.set_initial(0);
    while let Some((r, t)) = queue.pop() {
        let src = ids[&(r, t)];
        for s in 0..sigma.len() as Sym {
            let mask = (0..d).fold(0u32, |m, j| m | (coord(s, j, d) << j));
            let t2 = t | mask;
            let r2 = 2 * r - mask.count_ones() as i64;
            if !(0..=rmax).contains(&r2) || !k.is_face(t2) {
                continue;
            }
            let dst = *ids.entry((r2, t2)).or_insert_with(|| {
                queue.push((r2, t2));
                nfa.add_state()
            });
            nfa.add_edge(src, s, dst);
        }
    }
    Ok(AutomaticSpacePresentation {
        complex: k.clone(),
        y: prefix_dfa(&nfa),
        relation: equal_reals_relation(d),
        z: OnceLock::new(),
    })
}

/// Largest `d` for which the `d`-fold relation is materialized.
pub const MAX_RELATION_DIM: usize = 5;

/// The relation on `({0,1}^d)^ℕ` identifying sequences whose coordinates
/// represent the same binary reals in `[0, 1]`: every 3-window of every
/// coordinate pair is an allowed block, and no coordinate pair starts with
/// the window `((1−a)³, a³)`. The `d`-fold product is evaluated lazily.
#[derive(Debug, Clone)]
pub struct EqualReals {
    d: usize,
    single: Dfa,
}

/// The equal-reals relation in dimension `d ≥ 1`.
pub fn equal_reals_relation(d: usize) -> EqualReals {
    assert!(d >= 1, "dimension must be positive");
    let pair1 = Alphabet::pair(&Alphabet::digits(2));
    let blocks: std::collections::HashSet<Vec<Sym>> = a_req_blocks().into_iter().collect();
    // One coordinate: states start, one symbol read, first window pending,
    // steady state; the last two pair symbols are remembered.
    let mut one = FiniteAutomaton::new(pair1.clone());
    let start = one.add_state();
    one.set_initial(start);
    let first: Vec<u32> = (0..4).map(|_| one.add_state()).collect();
    let pending: Vec<u32> = (0..16).map(|_| one.add_state()).collect();
    let steady: Vec<u32> = (0..16).map(|_| one.add_state()).collect();
    for p in 0..4u32 {
        one.add_edge(start, p, first[p as usize]);
        for q in 0..4u32 {
            one.add_edge(first[p as usize], q, pending[(4 * p + q) as usize]);
            for r in 0..4u32 {
                if !blocks.contains(&vec![p, q, r]) {
                    continue;
                }
                let w = [p, q, r].map(|s| pair1.split(s));
                let degenerate = w.iter().all(|&(a, b)| a == 1 - b && (a, b) == w[0]);
                if !degenerate {
                    one.add_edge(pending[(4 * p + q) as usize], r, steady[(4 * q + r) as usize]);
                }
                one.add_edge(steady[(4 * p + q) as usize], r, steady[(4 * q + r) as usize]);
            }
        }
    }
    EqualReals {
        d,
        single: prefix_dfa(&one),
    }
}

impl EqualReals {
    /// Dimension.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Prefix DFA of one coordinate over pairs of bits.
    pub fn coordinate(&self) -> &Dfa {
        &self.single
    }

    /// Whether the zipped prefixes `(u, v)` extend to a related pair.
    pub fn accepts(&self, u: &[Sym], v: &[Sym]) -> bool {
        let pair1 = self.single.alphabet();
        u.len() == v.len()
            && (0..self.d).all(|j| {
                let w: Vec<Sym> = u.iter().zip(v).map(|(&a, &b)| pair1.join(coord(a, j, self.d), coord(b, j, self.d))).collect();
                self.single.accepts(&w)
            })
    }

    /// Prefix DFA of the relation on the full shift.
    pub fn to_dfa(&self) -> Result<Dfa> {
        self.restricted_to(&prefix_dfa(&FiniteAutomaton::universal(bit_alphabet(self.d))))
    }

    /// Prefix DFA of the relation restricted to `Y²` for a prefix DFA `y`.
    pub fn restricted_to(&self, y: &Dfa) -> Result<Dfa> {
        let d = self.d;
        if d > MAX_RELATION_DIM {
            return Err(Error::HypothesisViolated(format!(
                "the {d}-fold relation exceeds the materialization limit {MAX_RELATION_DIM}"
            )));
        }
        let sigma = bit_alphabet(d);
        if y.alphabet().as_ref() != sigma.as_ref() {
            return Err(Error::AlphabetMismatch);
        }
        let pair1 = self.single.alphabet().clone();
        let pair = Alphabet::pair(&sigma);
        let mut nfa = FiniteAutomaton::new(pair.clone());
        // State: one coordinate state per dimension, then the two Y states.
        let init = vec![0u32; d + 2];
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::from([(init.clone(), nfa.add_state())]);
        nfa.set_initial(0);
        let mut queue = vec![init];
        while let Some(st) = queue.pop() {
            let src = ids[&st];
            for a in 0..sigma.len() as Sym {
                let ya = y.next(st[d], a);
                if !y.is_accepting(ya) {
                    continue;
                }
                for b in 0..sigma.len() as Sym {
                    let yb = y.next(st[d + 1], b);
                    if !y.is_accepting(yb) {
                        continue;
                    }
                    let mut next = Vec::with_capacity(d + 2);
                    for j in 0..d {
                        let q = self.single.next(st[j], pair1.join(coord(a, j, d), coord(b, j, d)));
                        if !self.single.is_accepting(q) {
                            break;
                        }
                        next.push(q);
                    }
                    if next.len() < d {
                        continue;
                    }
                    next.extend([ya, yb]);
                    let dst = *ids.entry(next.clone()).or_insert_with(|| {
                        queue.push(next);
                        nfa.add_state()
                    });
                    nfa.add_edge(src, pair.join(a, b), dst);
                }
            }
        }
        Ok(prefix_dfa(&nfa))
    }
}

/// Prefix DFA of `{(x, x) : x ∈ Y}`.
fn prefix_diagonal(y: &Dfa, pair: &Arc<Alphabet>) -> Dfa {
    let mut nfa = FiniteAutomaton::new(pair.clone());
    for _ in 0..y.num_states() {
        nfa.add_state();
    }
    nfa.set_initial(0);
    for q in 0..y.num_states() as u32 {
        if y.is_accepting(q) {
            for a in 0..y.alphabet().len() as Sym {
                let t = y.next(q, a);
                if y.is_accepting(t) {
                    nfa.add_edge(q, pair.join(a, a), t);
                }
            }
        }
    }
    prefix_dfa(&nfa)
}

/// Prefix DFA of the transpose.
fn prefix_transpose(z: &Dfa) -> Dfa {
    let pair = z.alphabet().clone();
    let mut nfa = FiniteAutomaton::new(pair.clone());
    for _ in 0..z.num_states() {
        nfa.add_state();
    }
    nfa.set_initial(0);
    for q in 0..z.num_states() as u32 {
        for s in 0..pair.len() as Sym {
            let (a, b) = pair.split(s);
            let t = z.next(q, s);
            if z.is_accepting(q) && z.is_accepting(t) {
                nfa.add_edge(q, pair.join(b, a), t);
            }
        }
    }
    prefix_dfa(&nfa)
}

/// Prefix DFA of the composition `{(x, y) : ∃w (x, w) ∈ r, (w, y) ∈ s}`.
/// The witness `w` must exist as an infinite sequence, which the trimming
/// of the triple product enforces.
pub fn compose_prefix_relations(r: &Dfa, s: &Dfa) -> Dfa {
    let pair = r.alphabet().clone();
    let k = pair.base().expect("pair alphabet").len() as Sym;
    let mut nfa = FiniteAutomaton::new(pair.clone());
    let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
    ids.insert((0, 0), nfa.add_state());
    nfa.set_initial(0);
    let mut queue = vec![(0u32, 0u32)];
    while let Some(st) = queue.pop() {
        let src = ids[&st];
        for a in 0..k {
            for b in 0..k {
                let p = r.next(st.0, pair.join(a, b));
                if !r.is_accepting(p) {
                    continue;
                }
                for c in 0..k {
                    let q = s.next(st.1, pair.join(b, c));
                    if !s.is_accepting(q) {
                        continue;
                    }
                    let dst = *ids.entry((p, q)).or_insert_with(|| {
                        queue.push((p, q));
                        nfa.add_state()
                    });
                    nfa.add_edge(src, pair.join(a, c), dst);
                }
            }
        }
    }
    prefix_dfa(&nfa)
}

/// Reflexivity, symmetry and transitivity of a closed relation `z` on a
/// closed set `y`, by prefix-language inclusions.
pub fn prefix_equivalence_check(z: &Dfa, y: &Dfa) -> Result<EquivalenceReport> {
    let pair = z.alphabet().clone();
    let mut witnesses = Vec::new();
    let refl = inclusion_witness(z, &prefix_diagonal(y, &pair))?;
    let zt = prefix_transpose(z);
    let sym = inclusion_witness(z, &zt)?;
    let trans = inclusion_witness(z, &compose_prefix_relations(z, z))?;
    for (name, w) in [("reflexive", &refl), ("symmetric", &sym), ("transitive", &trans)] {
        if let Some(w) = w {
            witnesses.push((name.to_string(), w.clone()));
        }
    }
    let (reflexive, symmetric, transitive) = (refl.is_none(), sym.is_none(), trans.is_none());
    Ok(EquivalenceReport {
        reflexive,
        symmetric,
        transitive,
        is_equivalence: reflexive && symmetric && transitive,
        witnesses,
    })
}

/// The suspension of a compact automatic space `X = Y/Z` over `Σ ∪ {#}`.
/// Points are `^∞# x` with `x ∈ Y` (one-sided: `#^k x`), plus the
/// degenerate points of `Σ^M` and `#^M`. The relation identifies all
/// degenerate points with each other, and `^∞# x` with `^∞# x'` when the
/// last `#` sits at the same coordinate and `(x, x') ∈ Z`.
pub fn suspension(space: &AutomaticSpacePresentation, side: Side) -> Result<(SoficPresentation, SoficRelation)> {
    let sigma = space.alphabet();
    let k = sigma.len() as Sym;
    let mut tokens: Vec<String> = sigma.tokens().to_vec();
    tokens.push("#".into());
    let full = Alphabet::new(&tokens)?;
    let hash = k;
    let pair = Alphabet::pair(&full);
    let zd = space.z()?;

    let mut g = LabeledGraph::new(full.clone());
    let h = g.add_vertex();
    g.add_edge(h, hash, h);
    let ys: Vec<u32> = (0..space.y.num_states()).map(|_| g.add_vertex()).collect();
    for a in 0..k {
        let t = space.y.next(0, a);
        if space.y.is_accepting(t) {
            g.add_edge(h, a, ys[t as usize]);
        }
        for q in 0..space.y.num_states() as u32 {
            let t = space.y.next(q, a);
            if space.y.is_accepting(q) && space.y.is_accepting(t) {
                g.add_edge(ys[q as usize], a, ys[t as usize]);
            }
        }
    }
    let free = g.add_vertex();
    for a in 0..k {
        g.add_edge(free, a, free);
    }
    let y = essentialize(g.all_initial(), side)?;

    let mut r = LabeledGraph::new(pair.clone());
    // Degenerate class: #^M and Σ^M in every combination.
    let dv: Vec<u32> = (0..4).map(|_| r.add_vertex()).collect();
    for a in 0..=k {
        for b in 0..=k {
            let v = 2 * (a == hash) as usize + (b == hash) as usize;
            r.add_edge(dv[v], pair.join(a, b), dv[v]);
        }
    }
    let hh = r.add_vertex();
    r.add_edge(hh, pair.join(hash, hash), hh);
    let zs: Vec<u32> = (0..zd.num_states()).map(|_| r.add_vertex()).collect();
    for a in 0..k {
        for b in 0..k {
            let s = pair.join(a, b);
            let zs_sym = zd.alphabet().join(a, b);
            let t = zd.next(0, zs_sym);
            if zd.is_accepting(t) {
                r.add_edge(hh, s, zs[t as usize]);
            }
            for q in 0..zd.num_states() as u32 {
                let t = zd.next(q, zs_sym);
                if zd.is_accepting(q) && zd.is_accepting(t) {
                    r.add_edge(zs[q as usize], s, zs[t as usize]);
                }
            }
        }
    }
    let rel = SoficRelation::from_presentation(essentialize(r.all_initial(), side)?)?;
    Ok((y, rel.reduce()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{equivalence_check, membership, pair_membership, EventuallyPeriodicPoint};

    fn circle() -> SimplicialComplex {
        SimplicialComplex::parse("12,13,23").unwrap()
    }

    #[test]
    fn complex_parsing() {
        let c = circle();
        assert_eq!(c.d(), 3);
        assert_eq!(c.facets(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(c, SimplicialComplex::simplex_boundary(2).unwrap());
        assert_eq!(SimplicialComplex::parse("123,12").unwrap().facets(), vec![vec![1, 2, 3]]);
        assert_eq!(SimplicialComplex::parse(""), Err(Error::EmptyComplex));
        assert_eq!(c.to_string(), "12,13,23");
    }

    #[test]
    fn equal_reals_examples() {
        let z = equal_reals_relation(1).to_dfa().unwrap();
        let p = Alphabet::pair(&Alphabet::digits(2));
        let word = |x: &[Sym], y: &[Sym]| -> Vec<Sym> { x.iter().zip(y).map(|(&a, &b)| p.join(a, b)).collect() };
        assert!(z.accepts(&word(&[1, 0, 0, 0, 0], &[0, 1, 1, 1, 1])));
        assert!(!z.accepts(&word(&[1, 0, 0, 0, 0], &[0, 0, 0, 0, 0])));
        assert!(!z.accepts(&word(&[0, 0, 0], &[1, 1, 1])));
        assert!(z.accepts(&word(&[0, 1, 1, 0], &[0, 1, 0, 1])));
        let full = prefix_dfa(&FiniteAutomaton::universal(Alphabet::digits(2)));
        assert!(prefix_equivalence_check(&z, &full).unwrap().is_equivalence);
    }

    #[test]
    fn single_vertex_is_a_point() {
        let s = simplex_space(&SimplicialComplex::parse("1").unwrap()).unwrap();
        assert!(s.y.accepts(&[1, 1, 1, 1]));
        assert!(!s.y.accepts(&[0]));
        assert!(!s.y.accepts(&[1, 0]));
    }

    #[test]
    fn circle_space_is_valid() {
        let s = simplex_space(&circle()).unwrap();
        assert!(prefix_equivalence_check(s.z().unwrap(), &s.y).unwrap().is_equivalence);
        // (1,0,0) and (0,1,0) are vertices; (1/2,1/2,0) an edge midpoint.
        assert!(s.y.accepts(&[0b100; 4]));
        assert!(s.y.accepts(&[0b010; 4]));
        assert!(s.y.accepts(&[0b110, 0, 0]));
        assert!(!s.y.accepts(&[0b100, 0, 0]));
        assert!(!s.y.accepts(&[0, 0b111]));
        let (y, z) = suspension(&s, Side::Z).unwrap();
        assert!(equivalence_check(&z, &y).unwrap().is_equivalence);
        let (y, z) = suspension(&s, Side::N).unwrap();
        assert!(equivalence_check(&z, &y).unwrap().is_equivalence);
    }

    fn bin_sum_gap(stream: &[Sym], d: usize) -> f64 {
        let mut total = 0.0;
        for (i, &s) in stream.iter().enumerate() {
            let ones = (0..d).filter(|&j| coord(s, j, d) == 1).count();
            total += ones as f64 * 0.5f64.powi(i as i32 + 1);
        }
        (total - 1.0).abs()
    }

    #[test]
    fn remainder_states_stay_small() {
        let k = circle();
        let s = simplex_space(&k).unwrap();
        // Every live state is reached; the brute-force closure of (r, T)
        // states from (1, ∅) keeps r in {0, 1, 2}.
        let mut seen = std::collections::HashSet::from([(1i64, 0u32)]);
        let mut stack = vec![(1i64, 0u32)];
        while let Some((r, t)) = stack.pop() {
            for col in 0..8u32 {
                let r2 = 2 * r - col.count_ones() as i64;
                let t2 = t | col;
                if (0..=2).contains(&r2) && k.is_face(t2) && seen.insert((r2, t2)) {
                    stack.push((r2, t2));
                }
            }
        }
        assert!(seen.iter().all(|&(r, _)| (0..=2).contains(&r)));
        assert!(s.y.num_states() <= seen.len() + 1);
    }

    #[test]
    fn partial_sums_track_one() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for facets in ["12,13,23", "123", "1", "12,23,34,41", "123,34"] {
            let k = SimplicialComplex::parse(facets).unwrap();
            let d = k.d();
            let s = simplex_space(&k).unwrap();
            for _ in 0..50 {
                let mut q = 0;
                let mut stream = Vec::new();
                for i in 1..=20 {
                    let next: Vec<Sym> = (0..1u32 << d).filter(|&a| s.y.is_accepting(s.y.next(q, a))).collect();
                    let a = next[rng.gen_range(0..next.len())];
                    q = s.y.next(q, a);
                    stream.push(a);
                    assert!(bin_sum_gap(&stream, d) <= d as f64 * 0.5f64.powi(i) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn six_simplex_boundary() {
        let k = SimplicialComplex::simplex_boundary(6).unwrap();
        assert_eq!(k.d(), 7);
        let s = simplex_space(&k).unwrap();
        assert!(s.y.accepts(&[0b1000000; 10]));
        let u = [0b1100000, 0, 0, 0];
        let v = [0b0100000, 0b1000000, 0b1000000, 0b1000000];
        assert!(s.y.accepts(&u) && s.y.accepts(&v));
        assert!(!s.y.accepts(&[0b1111111]));
        assert!(s.relation.accepts(&u, &v));
        assert!(!s.relation.accepts(&u, &[0b1000000; 4]));
        assert!(matches!(s.z(), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn one_point_suspension() {
        let s = simplex_space(&SimplicialComplex::parse("1").unwrap()).unwrap();
        let (y, z) = suspension(&s, Side::Z).unwrap();
        assert!(equivalence_check(&z, &y).unwrap().is_equivalence);
        // Points ^∞# 1^∞ at two positions are distinct; degenerate points
        // are identified.
        let al = y.alphabet().clone();
        let p = |l: &str, c: &str, r: &str| EventuallyPeriodicPoint::z(al.parse_word(l).unwrap(), al.parse_word(c).unwrap(), al.parse_word(r).unwrap());
        assert!(!pair_membership(&p("#", "#1", "1"), &p("#", "1", "1"), &z).unwrap());
        assert!(pair_membership(&p("#", "#1", "1"), &p("#", "#1", "1"), &z).unwrap());
        assert!(pair_membership(&p("#", "#", "#"), &p("1", "1", "1"), &z).unwrap());
    }

    #[test]
    fn degenerate_points_form_one_class() {
        let s = simplex_space(&circle()).unwrap();
        let (y, z) = suspension(&s, Side::Z).unwrap();
        let al = y.alphabet().clone();
        let p = |l: &str, c: &str, r: &str| EventuallyPeriodicPoint::z(al.parse_word(l).unwrap(), al.parse_word(c).unwrap(), al.parse_word(r).unwrap());
        let hash = p("#", "#", "#");
        for sigma in [p("000", "101", "011"), p("100", "100", "100"), p("111", "", "010")] {
            assert!(membership(&sigma, &y).unwrap());
            assert!(pair_membership(&hash, &sigma, &z).unwrap());
        }
        // Two representations of one circle point after the last #.
        let a = p("#", "# 110", "000");
        let b = p("#", "# 010", "100");
        assert!(membership(&a, &y).unwrap() && membership(&b, &y).unwrap());
        assert!(pair_membership(&a, &b, &z).unwrap());
        assert!(!pair_membership(&a, &p("#", "# 100", "100"), &z).unwrap());
    }

    #[test]
    fn circle_suspension_has_no_window() {
        let s = simplex_space(&circle()).unwrap();
        let (y, z) = suspension(&s, Side::Z).unwrap();
        let cert = crate::symbolic::is_expansive(&y, &z, 10).unwrap();
        assert!(!cert.ambient_is_sft);
        match cert.verdict {
            crate::symbolic::Verdict::UnknownWithinBound { k_max, witnesses } => {
                assert_eq!(k_max, 10);
                assert_eq!(witnesses.iter().map(|w| w.0).collect::<Vec<_>>(), (1..=10).collect::<Vec<_>>());
                assert!(witnesses.iter().all(|w| !w.1.is_empty()));
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }
}
