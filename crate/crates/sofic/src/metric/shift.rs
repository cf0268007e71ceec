//! Graph systems of sofic pairs `(Y, Z)`.
//!
//! Level `n` has the words of `L_{2n+1}(Y)` (side ℤ) or `L_{n+1}(Y)` (side ℕ)
//! as vertices, joined when the zipped pair lies in `L(Z)`. Projections
//! drop the outer symbols (ℤ) or the last symbol (ℕ).

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::automata::{Alphabet, Dfa, Sym};
use crate::error::{Error, Result};
use crate::symbolic::{entropy, equivalence_check, membership, EventuallyPeriodicPoint, Side};
use crate::symbolic::{SoficPresentation, SoficRelation};

use super::{GraphSystem, Level};

/// The graph system of a sofic pair, with levels built on demand.
#[derive(Debug)]
pub struct ShiftGraphSystem {
    y: SoficPresentation,
    z: SoficRelation,
    q: usize,
    c: usize,
    levels: Mutex<HashMap<usize, Arc<Level>>>,
}

/// Builds the system of `(y, z ∩ y²)`; the telescope constant is
/// `c = q² + 1` with `q` the number of live states of the minimal
/// block-language automaton of the kernel.
pub fn build_shift_graph_system(y: &SoficPresentation, z: &SoficRelation) -> Result<ShiftGraphSystem> {
    let z = z.restrict(y)?;
    let eq = equivalence_check(&z, y)?;
    if !eq.is_equivalence {
        let failed: Vec<String> = eq.witnesses.iter().map(|(p, _)| p.clone()).collect();
        return Err(Error::NotEquivalence(failed.join(", ")));
    }
    let d = z.presentation().block_language();
    let q = d.live_states().iter().filter(|&&l| l).count();
    Ok(ShiftGraphSystem {
        y: y.clone(),
        z,
        q,
        c: q * q + 1,
        levels: Mutex::new(HashMap::new()),
    })
}

impl ShiftGraphSystem {
    /// Telescope constant `q² + 1`.
    pub fn c(&self) -> usize {
        self.c
    }

    /// Live state count `q` of the kernel's block-language automaton.
    pub fn q(&self) -> usize {
        self.q
    }

    /// The numerator.
    pub fn numerator(&self) -> &SoficPresentation {
        &self.y
    }

    /// The kernel `z ∩ y²`.
    pub fn kernel(&self) -> &SoficRelation {
        &self.z
    }

    fn word_len(&self, n: usize) -> usize {
        match self.y.side() {
            Side::Z => 2 * n + 1,
            Side::N => n + 1,
        }
    }

    fn name(&self, w: &[Sym]) -> String {
        self.y.alphabet().format_word(w)
    }

    fn build_level(&self, n: usize) -> Result<Level> {
        let len = self.word_len(n);
        let words = self.y.block_language().words_of_length(len);
        let ids: HashMap<&[Sym], u32> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i as u32)).collect();
        let pair = self.z.pair_alphabet();
        let mut edges = Vec::new();
        for pw in self.z.presentation().block_language().words_of_length(len) {
            let (u, v): (Vec<Sym>, Vec<Sym>) = pw.iter().map(|&s| pair.split(s)).unzip();
            edges.push((ids[u.as_slice()], ids[v.as_slice()]));
        }
        let parent = if n == 0 {
            Vec::new()
        } else {
            let prev = self.level(n - 1)?;
            words
                .iter()
                .map(|w| {
                    let p = match self.y.side() {
                        Side::Z => &w[1..len - 1],
                        Side::N => &w[..len - 1],
                    };
                    prev.vertex(&self.name(p))
                })
                .collect::<Result<Vec<u32>>>()?
        };
        let names = words.iter().map(|w| self.name(w)).collect();
        Ok(Level::new(names, &edges, parent))
    }
}

impl GraphSystem for ShiftGraphSystem {
    fn level(&self, n: usize) -> Result<Arc<Level>> {
        if let Some(l) = self.levels.lock().unwrap().get(&n) {
            return Ok(l.clone());
        }
        let l = Arc::new(self.build_level(n)?);
        self.levels.lock().unwrap().insert(n, l.clone());
        Ok(l)
    }

    fn point_vertex(&self, n: usize, x: &EventuallyPeriodicPoint) -> Result<u32> {
        if x.side != self.y.side() {
            return Err(Error::SideMismatch);
        }
        let w = match x.side {
            Side::Z => x.window(-(n as i64), n as i64 + 1),
            Side::N => x.window(0, n as i64 + 1),
        };
        self.level(n)?.vertex(&self.name(&w)).map_err(|_| Error::PointNotInSubshift)
    }

    fn check_point(&self, x: &EventuallyPeriodicPoint) -> Result<()> {
        if x.side != self.y.side() {
            return Err(Error::SideMismatch);
        }
        if membership(x, &self.y)? {
            Ok(())
        } else {
            Err(Error::PointNotInSubshift)
        }
    }

    /// Decided on automata: triples `(u, w, v)` with `(u, w), (w, v)` in
    /// `L(Z)` are runs of the product of two copies of the kernel DFA, and
    /// the middle window of `(u, v)` is checked against `L(Z)`.
    fn hyperbolicity_counterexample(&self, n: usize, c: usize) -> Result<Option<(String, String)>> {
        let d = self.z.presentation().block_language();
        let base = self.y.alphabet().clone();
        let pair = self.z.pair_alphabet().clone();
        let (lead, mid) = match self.y.side() {
            Side::Z => (c, 2 * n + 1),
            Side::N => (0, n + 1),
        };
        let t = Triples::new(d, &base, &pair);
        let mut fwd: HashSet<u32> = HashSet::from([t.start]);
        for _ in 0..lead {
            fwd = fwd.iter().flat_map(|&s| t.succ[s as usize].iter().map(|e| e.1)).collect();
        }
        let mut back: Vec<bool> = vec![true; t.states.len()];
        for _ in 0..c {
            back = (0..t.states.len()).map(|s| t.succ[s].iter().any(|e| back[e.1 as usize])).collect();
        }
        let live = d.live_states();
        let mut seen: HashSet<(u32, u32, usize)> = HashSet::new();
        let mut path: Vec<(Sym, Sym)> = Vec::new();
        let mut starts: Vec<u32> = fwd.into_iter().collect();
        starts.sort_unstable();
        for s in starts {
            if let Some(()) = t.search(s, 0, 0, mid, d, &pair, &live, &back, &mut seen, &mut path) {
                let (u, v): (Vec<Sym>, Vec<Sym>) = path.iter().copied().unzip();
                return Ok(Some((self.name(&u), self.name(&v))));
            }
        }
        Ok(None)
    }
}

/// Product of two copies of a pair-language DFA read on triples
/// `(a, b, c)`: the first copy reads `(a, b)`, the second `(b, c)`.
struct Triples {
    states: Vec<(u32, u32)>,
    start: u32,
    /// Successors: `((a, c), target)`.
    succ: Vec<Vec<((Sym, Sym), u32)>>,
}

impl Triples {
    fn new(d: &Dfa, base: &Alphabet, pair: &Alphabet) -> Self {
        let live = d.live_states();
        let k = base.len() as Sym;
        let mut ids: HashMap<(u32, u32), u32> = HashMap::from([((0, 0), 0)]);
        let mut states = vec![(0u32, 0u32)];
        let mut succ: Vec<Vec<((Sym, Sym), u32)>> = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let (p, q) = states[i];
            let mut out = Vec::new();
            for a in 0..k {
                for b in 0..k {
                    let p2 = d.next(p, pair.join(a, b));
                    if !live[p2 as usize] {
                        continue;
                    }
                    for c in 0..k {
                        let q2 = d.next(q, pair.join(b, c));
                        if !live[q2 as usize] {
                            continue;
                        }
                        let id = *ids.entry((p2, q2)).or_insert_with(|| {
                            states.push((p2, q2));
                            states.len() as u32 - 1
                        });
                        out.push(((a, c), id));
                    }
                }
            }
            succ.push(out);
            i += 1;
        }
        Triples { states, start: 0, succ }
    }

    /// Depth-first search for a middle window of length `mid` ending in a
    /// state that extends by the trailing symbols, whose `(u, v)` word
    /// leaves `L(Z)`.
    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        s: u32,
        zq: u32,
        depth: usize,
        mid: usize,
        d: &Dfa,
        pair: &Alphabet,
        live: &[bool],
        back: &[bool],
        seen: &mut HashSet<(u32, u32, usize)>,
        path: &mut Vec<(Sym, Sym)>,
    ) -> Option<()> {
        if depth == mid {
            return (back[s as usize] && !live[zq as usize]).then_some(());
        }
        if !seen.insert((s, zq, depth)) {
            return None;
        }
        for &((a, c), t) in &self.succ[s as usize] {
            path.push((a, c));
            if self
                .search(t, d.next(zq, pair.join(a, c)), depth + 1, mid, d, pair, live, back, seen, path)
                .is_some()
            {
                return Some(());
            }
            path.pop();
        }
        None
    }
}

/// Upper bound `2·c·h(Y)/log 2` on the topological dimension of `Y/Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionBound {
    /// Telescope constant.
    pub c: usize,
    /// Entropy of `Y` (natural log).
    pub entropy: f64,
    /// The bound.
    pub bound: f64,
}

/// Dimension bound of a sofic pair.
pub fn dimension_upper_bound(y: &SoficPresentation, z: &SoficRelation) -> Result<DimensionBound> {
    let sys = build_shift_graph_system(y, z)?;
    let h = entropy(y);
    Ok(DimensionBound {
        c: sys.c,
        entropy: h,
        bound: 2.0 * sys.c as f64 * h / std::f64::consts::LN_2,
    })
}
