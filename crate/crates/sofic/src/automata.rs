//! Finite-word automata: alphabets, nondeterministic automata, canonical
//! minimal DFAs, boolean operations, letterwise projection and language
//! classification.
//!
//! Every language-valued result is a [`Dfa`] in canonical form: minimal,
//! complete, with states numbered in breadth-first order from the initial
//! state (symbols visited in alphabet order). Two canonical DFAs over the
//! same alphabet accept the same language exactly when they are equal.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A symbol, stored as an index into its [`Alphabet`].
pub type Sym = u32;

/// An ordered list of distinct string tokens, optionally the square of a
/// base alphabet.
///
/// A paired alphabet over a base of size `n` has the token `"a|b"` at index
/// `a * n + b`.
#[derive(Debug, Clone)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Sym>,
    base: Option<Arc<Alphabet>>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.tokens == other.tokens && self.base.is_some() == other.base.is_some()
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    /// Builds an alphabet from distinct, nonempty, whitespace-free tokens.
    pub fn new<S: AsRef<str>>(tokens: &[S]) -> Result<Arc<Self>> {
        let mut index = HashMap::new();
        let mut out = Vec::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            let t = t.as_ref();
            if t.is_empty() || t.chars().any(|c| c.is_whitespace() || c == ';') {
                return Err(Error::parse(0, format!("invalid token {t:?}")));
            }
            if index.insert(t.to_string(), i as Sym).is_some() {
                return Err(Error::parse(0, format!("duplicate token {t:?}")));
            }
            out.push(t.to_string());
        }
        if out.is_empty() {
            return Err(Error::parse(0, "empty alphabet"));
        }
        Ok(Arc::new(Alphabet {
            tokens: out,
            index,
            base: None,
        }))
    }

    /// The digit alphabet `{0, …, n-1}`.
    pub fn digits(n: usize) -> Arc<Self> {
        let toks: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Alphabet::new(&toks).expect("digit tokens are valid")
    }

    /// The pair alphabet `base × base` with tokens `"a|b"`.
    pub fn pair(base: &Arc<Alphabet>) -> Arc<Self> {
        assert!(base.base.is_none(), "pair alphabets of pair alphabets are not supported");
        let n = base.len();
        let mut tokens = Vec::with_capacity(n * n);
        let mut index = HashMap::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let t = format!("{}|{}", base.tokens[a], base.tokens[b]);
                index.insert(t.clone(), (a * n + b) as Sym);
                tokens.push(t);
            }
        }
        Arc::new(Alphabet {
            tokens,
            index,
            base: Some(base.clone()),
        })
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// Always false; alphabets are nonempty.
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Token of a symbol.
    pub fn token(&self, s: Sym) -> &str {
        &self.tokens[s as usize]
    }

    /// All tokens in order.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Symbol of a token.
    pub fn symbol(&self, tok: &str) -> Result<Sym> {
        self.index
            .get(tok)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))
    }

    /// Base alphabet when this is a pair alphabet.
    pub fn base(&self) -> Option<&Arc<Alphabet>> {
        self.base.as_ref()
    }

    /// True for pair alphabets.
    pub fn is_paired(&self) -> bool {
        self.base.is_some()
    }

    /// Splits a pair symbol into its left and right base symbols.
    pub fn split(&self, s: Sym) -> (Sym, Sym) {
        let n = self.base.as_ref().expect("paired alphabet").len() as Sym;
        (s / n, s % n)
    }

    /// Joins two base symbols into a pair symbol.
    pub fn join(&self, l: Sym, r: Sym) -> Sym {
        let n = self.base.as_ref().expect("paired alphabet").len() as Sym;
        l * n + r
    }

    fn single_char(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a word: whitespace separated tokens, or a plain character
    /// string when every token is one character long. Pair words may also
    /// be written as two rows `top/bottom` over a single-character base.
    pub fn parse_word(&self, s: &str) -> Result<Vec<Sym>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        if s.contains(char::is_whitespace) {
            return s.split_whitespace().map(|t| self.symbol(t)).collect();
        }
        if let Some(base) = &self.base {
            if let Some((top, bottom)) = s.split_once('/') {
                let t = base.parse_word(top)?;
                let b = base.parse_word(bottom)?;
                if t.len() != b.len() {
                    return Err(Error::parse(0, "rows of different length"));
                }
                return Ok(t.iter().zip(&b).map(|(&x, &y)| self.join(x, y)).collect());
            }
            if !s.contains('/') && !s.contains('|') {
                return Err(Error::parse(0, format!("cannot read pair word {s:?}")));
            }
            return self.symbol(s).map(|x| vec![x]);
        }
        if self.single_char() {
            return s.chars().map(|c| self.symbol(&c.to_string())).collect();
        }
        self.symbol(s).map(|x| vec![x])
    }

    /// Formats a word. Single-character alphabets concatenate; pair words
    /// over a single-character base print as `top/bottom`.
    pub fn format_word(&self, w: &[Sym]) -> String {
        if let Some(base) = &self.base {
            if base.single_char() && !w.is_empty() {
                let top: Vec<Sym> = w.iter().map(|&s| self.split(s).0).collect();
                let bot: Vec<Sym> = w.iter().map(|&s| self.split(s).1).collect();
                return format!("{}/{}", base.format_word(&top), base.format_word(&bot));
            }
        }
        if self.single_char() {
            w.iter().map(|&s| self.token(s)).collect()
        } else {
            w.iter().map(|&s| self.token(s)).collect::<Vec<_>>().join(" ")
        }
    }
}

/// Checks that two alphabets agree.
pub(crate) fn same_alphabet(a: &Alphabet, b: &Alphabet) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch)
    }
}

/// A nondeterministic finite automaton on finite words.
#[derive(Debug, Clone)]
pub struct FiniteAutomaton {
    alphabet: Arc<Alphabet>,
    trans: Vec<Vec<(Sym, u32)>>,
    initial: Vec<u32>,
    accepting: Vec<bool>,
}

impl FiniteAutomaton {
    /// An automaton with no states.
    pub fn new(alphabet: Arc<Alphabet>) -> Self {
        FiniteAutomaton {
            alphabet,
            trans: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
        }
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet: Arc<Alphabet>) -> Self {
        let mut a = FiniteAutomaton::new(alphabet.clone());
        let q = a.add_state();
        a.set_initial(q);
        a.set_accepting(q, true);
        for s in 0..alphabet.len() as Sym {
            a.add_edge(q, s, q);
        }
        a
    }

    /// The automaton accepting exactly the listed words.
    pub fn from_words(alphabet: Arc<Alphabet>, words: &[Vec<Sym>]) -> Self {
        let mut a = FiniteAutomaton::new(alphabet);
        let root = a.add_state();
        a.set_initial(root);
        let mut trie: HashMap<(u32, Sym), u32> = HashMap::new();
        for w in words {
            let mut q = root;
            for &s in w {
                q = match trie.get(&(q, s)) {
                    Some(&t) => t,
                    None => {
                        let t = a.add_state();
                        a.add_edge(q, s, t);
                        trie.insert((q, s), t);
                        t
                    }
                };
            }
            a.set_accepting(q, true);
        }
        a
    }

    /// Adds a state and returns its index.
    pub fn add_state(&mut self) -> u32 {
        self.trans.push(Vec::new());
        self.accepting.push(false);
        (self.trans.len() - 1) as u32
    }

    /// Adds a transition.
    pub fn add_edge(&mut self, src: u32, sym: Sym, dst: u32) {
        debug_assert!((sym as usize) < self.alphabet.len());
        self.trans[src as usize].push((sym, dst));
    }

    /// Marks a state initial.
    pub fn set_initial(&mut self, q: u32) {
        if !self.initial.contains(&q) {
            self.initial.push(q);
        }
    }

    /// Sets the accepting flag of a state.
    pub fn set_accepting(&mut self, q: u32, yes: bool) {
        self.accepting[q as usize] = yes;
    }

    /// The alphabet.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Number of states.
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    /// Initial states.
    pub fn initial(&self) -> &[u32] {
        &self.initial
    }

    /// Whether a state accepts.
    pub fn is_accepting(&self, q: u32) -> bool {
        self.accepting[q as usize]
    }

    /// Outgoing transitions of a state.
    pub fn out(&self, q: u32) -> &[(Sym, u32)] {
        &self.trans[q as usize]
    }

    /// Membership by direct simulation.
    pub fn accepts(&self, w: &[Sym]) -> bool {
        let mut cur: HashSet<u32> = self.initial.iter().copied().collect();
        for &s in w {
            let mut next = HashSet::new();
            for &q in &cur {
                for &(a, t) in &self.trans[q as usize] {
                    if a == s {
                        next.insert(t);
                    }
                }
            }
            cur = next;
        }
        cur.iter().any(|&q| self.accepting[q as usize])
    }

    /// Serializes to the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "alphabet {}", self.alphabet.tokens().join(" "));
        for q in 0..self.num_states() {
            let _ = writeln!(s, "state q{q}");
        }
        for &q in &self.initial {
            let _ = writeln!(s, "initial q{q}");
        }
        for q in 0..self.num_states() {
            if self.accepting[q] {
                let _ = writeln!(s, "accept q{q}");
            }
        }
        for q in 0..self.num_states() {
            for &(a, t) in &self.trans[q] {
                let _ = writeln!(s, "edge q{q} {} q{t}", self.alphabet.token(a));
            }
        }
        s
    }

    /// Parses the text format. Without an `alphabet` line the alphabet is
    /// the set of edge symbols in order of first appearance.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: HashMap<String, u32> = HashMap::new();
        let mut order: Vec<String> = Vec::new();
        let mut alphabet_line: Option<Vec<String>> = None;
        let mut seen_syms: Vec<String> = Vec::new();
        let mut initial = Vec::new();
        let mut accept = Vec::new();
        let mut edges = Vec::new();
        let intern = |n: &str, names: &mut HashMap<String, u32>, order: &mut Vec<String>| {
            if let Some(&q) = names.get(n) {
                q
            } else {
                let q = order.len() as u32;
                names.insert(n.to_string(), q);
                order.push(n.to_string());
                q
            }
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts[0] {
                "alphabet" => alphabet_line = Some(parts[1..].iter().map(|s| s.to_string()).collect()),
                "state" if parts.len() == 2 => {
                    intern(parts[1], &mut names, &mut order);
                }
                "initial" if parts.len() == 2 => initial.push(intern(parts[1], &mut names, &mut order)),
                "accept" if parts.len() == 2 => accept.push(intern(parts[1], &mut names, &mut order)),
                "edge" if parts.len() == 4 => {
                    let a = intern(parts[1], &mut names, &mut order);
                    let b = intern(parts[3], &mut names, &mut order);
                    if !seen_syms.iter().any(|s| s == parts[2]) {
                        seen_syms.push(parts[2].to_string());
                    }
                    edges.push((a, parts[2].to_string(), b));
                }
                _ => return Err(Error::parse(i + 1, format!("unrecognized line {line:?}"))),
            }
        }
        let alphabet = Alphabet::new(&alphabet_line.unwrap_or(seen_syms))?;
        let mut a = FiniteAutomaton::new(alphabet.clone());
        for _ in 0..order.len() {
            a.add_state();
        }
        for q in initial {
            a.set_initial(q);
        }
        for q in accept {
            a.set_accepting(q, true);
        }
        for (s, t, d) in edges {
            a.add_edge(s, alphabet.symbol(&t)?, d);
        }
        Ok(a)
    }
}

/// A complete deterministic automaton with initial state 0.
///
/// Values produced by [`determinize_minimize`] and the boolean operations
/// are canonical, so `==` decides language equality.
#[derive(Debug, Clone)]
pub struct Dfa {
    alphabet: Arc<Alphabet>,
    delta: Vec<u32>,
    accepting: Vec<bool>,
}

impl PartialEq for Dfa {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.delta == other.delta && self.accepting == other.accepting
    }
}

impl Eq for Dfa {}

impl Dfa {
    /// Builds a complete DFA from a transition table (row-major by state)
    /// and acceptance flags. The result is canonicalized.
    pub fn from_table(alphabet: Arc<Alphabet>, delta: Vec<u32>, accepting: Vec<bool>) -> Self {
        assert_eq!(delta.len(), accepting.len() * alphabet.len());
        minimize(&Dfa {
            alphabet,
            delta,
            accepting,
        })
    }

    /// The alphabet.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Number of states.
    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    /// Transition function.
    pub fn next(&self, q: u32, s: Sym) -> u32 {
        self.delta[q as usize * self.alphabet.len() + s as usize]
    }

    /// Whether a state accepts.
    pub fn is_accepting(&self, q: u32) -> bool {
        self.accepting[q as usize]
    }

    /// State reached from the initial state, if the run is defined.
    pub fn run(&self, w: &[Sym]) -> u32 {
        w.iter().fold(0, |q, &s| self.next(q, s))
    }

    /// Membership.
    pub fn accepts(&self, w: &[Sym]) -> bool {
        self.is_accepting(self.run(w))
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let k = self.alphabet.len();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for s in 0..k {
                rev[self.delta[q * k + s] as usize].push(q as u32);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Converts to a nondeterministic automaton.
    pub fn to_nfa(&self) -> FiniteAutomaton {
        let mut a = FiniteAutomaton::new(self.alphabet.clone());
        for _ in 0..self.num_states() {
            a.add_state();
        }
        a.set_initial(0);
        let k = self.alphabet.len();
        for q in 0..self.num_states() {
            a.set_accepting(q as u32, self.accepting[q]);
            for s in 0..k {
                a.add_edge(q as u32, s as Sym, self.delta[q * k + s]);
            }
        }
        a
    }

    /// Complement language.
    pub fn complement(&self) -> Dfa {
        Dfa::from_table(
            self.alphabet.clone(),
            self.delta.clone(),
            self.accepting.iter().map(|&b| !b).collect(),
        )
    }

    /// A shortest accepted word, ties broken by symbol order.
    pub fn shortest_word(&self) -> Option<Vec<Sym>> {
        let k = self.alphabet.len();
        let n = self.num_states();
        let mut parent: Vec<Option<(u32, Sym)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(q) = queue.pop_front() {
            if self.accepting[q as usize] {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur as usize] {
                    w.push(s);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            for s in 0..k {
                let t = self.delta[q as usize * k + s];
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((q, s as Sym));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Accepted words of length at most `max_len`, in length-lexicographic
    /// order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<Sym>> {
        let live = self.live_states();
        let k = self.alphabet.len();
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<Sym>, u32)> = if live[0] { vec![(Vec::new(), 0)] } else { Vec::new() };
        for len in 0..=max_len {
            for (w, q) in &layer {
                if self.accepting[*q as usize] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &layer {
                for s in 0..k {
                    let t = self.delta[*q as usize * k + s];
                    if live[t as usize] {
                        let mut w2 = w.clone();
                        w2.push(s as Sym);
                        next.push((w2, t));
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// Accepted words of exactly length `len`, in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> Vec<Vec<Sym>> {
        let live = self.live_states();
        let k = self.alphabet.len();
        let mut layer: Vec<(Vec<Sym>, u32)> = if live[0] { vec![(Vec::new(), 0)] } else { Vec::new() };
        for _ in 0..len {
            let mut next = Vec::new();
            for (w, q) in &layer {
                for s in 0..k {
                    let t = self.delta[*q as usize * k + s];
                    if live[t as usize] {
                        let mut w2 = w.clone();
                        w2.push(s as Sym);
                        next.push((w2, t));
                    }
                }
            }
            layer = next;
        }
        layer
            .into_iter()
            .filter(|(_, q)| self.accepting[*q as usize])
            .map(|(w, _)| w)
            .collect()
    }

    /// Exact number of accepted words of a given length.
    pub fn count_words(&self, len: usize) -> BigUint {
        let k = self.alphabet.len();
        let n = self.num_states();
        let mut v = vec![BigUint::zero(); n];
        v[0] = BigUint::one();
        for _ in 0..len {
            let mut nv = vec![BigUint::zero(); n];
            for q in 0..n {
                if v[q].is_zero() {
                    continue;
                }
                for s in 0..k {
                    let t = self.delta[q * k + s] as usize;
                    nv[t] += &v[q];
                }
            }
            v = nv;
        }
        (0..n).filter(|&q| self.accepting[q]).map(|q| v[q].clone()).sum()
    }
}

/// Subset construction. The result is complete but not minimized.
pub fn determinize(a: &FiniteAutomaton) -> Dfa {
    let k = a.alphabet.len();
    let mut start: Vec<u32> = a.initial.clone();
    start.sort_unstable();
    start.dedup();
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut sets: Vec<Vec<u32>> = Vec::new();
    ids.insert(start.clone(), 0);
    sets.push(start);
    let mut delta: Vec<u32> = Vec::new();
    let mut accepting: Vec<bool> = Vec::new();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut i = 0;
    while i < sets.len() {
        let set = sets[i].clone();
        accepting.push(set.iter().any(|&q| a.accepting[q as usize]));
        for b in buckets.iter_mut() {
            b.clear();
        }
        for &q in &set {
            for &(s, t) in &a.trans[q as usize] {
                buckets[s as usize].push(t);
            }
        }
        for b in buckets.iter_mut() {
            b.sort_unstable();
            b.dedup();
            let id = match ids.get(b.as_slice()) {
                Some(&id) => id,
                None => {
                    let id = sets.len() as u32;
                    ids.insert(b.clone(), id);
                    sets.push(b.clone());
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    Dfa {
        alphabet: a.alphabet.clone(),
        delta,
        accepting,
    }
}

/// Hopcroft minimization followed by canonical breadth-first renumbering.
pub fn minimize(d: &Dfa) -> Dfa {
    let k = d.alphabet.len();
    // Restrict to states reachable from 0.
    let n0 = d.num_states();
    let mut newid = vec![u32::MAX; n0];
    let mut order = vec![0u32];
    newid[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let q = order[i] as usize;
        for s in 0..k {
            let t = d.delta[q * k + s] as usize;
            if newid[t] == u32::MAX {
                newid[t] = order.len() as u32;
                order.push(t as u32);
            }
        }
        i += 1;
    }
    let n = order.len();
    let mut delta = vec![0u32; n * k];
    let mut acc = vec![false; n];
    for (new, &old) in order.iter().enumerate() {
        acc[new] = d.accepting[old as usize];
        for s in 0..k {
            delta[new * k + s] = newid[d.delta[old as usize * k + s] as usize];
        }
    }

    // Inverse transitions in CSR form, per symbol.
    let mut inv_start = vec![0usize; k * (n + 1) + 1];
    for q in 0..n {
        for s in 0..k {
            let t = delta[q * k + s] as usize;
            inv_start[s * (n + 1) + t + 1] += 1;
        }
    }
    for i in 1..inv_start.len() {
        inv_start[i] += inv_start[i - 1];
    }
    let mut fill = inv_start.clone();
    let mut inv = vec![0u32; n * k];
    for q in 0..n {
        for s in 0..k {
            let t = delta[q * k + s] as usize;
            let slot = &mut fill[s * (n + 1) + t];
            inv[*slot] = q as u32;
            *slot += 1;
        }
    }

    // Partition refinement.
    let mut elems: Vec<u32> = Vec::with_capacity(n);
    let mut bstart = Vec::new();
    let mut bend = Vec::new();
    let mut blk = vec![0u32; n];
    for flag in [true, false] {
        let members: Vec<u32> = (0..n as u32).filter(|&q| acc[q as usize] == flag).collect();
        if members.is_empty() {
            continue;
        }
        let b = bstart.len() as u32;
        bstart.push(elems.len());
        for &q in &members {
            blk[q as usize] = b;
            elems.push(q);
        }
        bend.push(elems.len());
    }
    let mut loc = vec![0usize; n];
    for (i, &q) in elems.iter().enumerate() {
        loc[q as usize] = i;
    }
    let mut bmid = bstart.clone();
    let mut inw: Vec<bool> = vec![false; bstart.len() * k];
    let mut work: Vec<(u32, Sym)> = Vec::new();
    {
        let b = if bstart.len() == 2 && bend[1] - bstart[1] < bend[0] - bstart[0] { 1 } else { 0 };
        for s in 0..k {
            inw[b * k + s] = true;
            work.push((b as u32, s as Sym));
        }
    }
    let mut touched: Vec<u32> = Vec::new();
    let mut splitter: Vec<u32> = Vec::new();
    while let Some((b, s)) = work.pop() {
        inw[b as usize * k + s as usize] = false;
        splitter.clear();
        splitter.extend_from_slice(&elems[bstart[b as usize]..bend[b as usize]]);
        for &q in &splitter {
            let lo = inv_start[s as usize * (n + 1) + q as usize];
            let hi = inv_start[s as usize * (n + 1) + q as usize + 1];
            for &p in &inv[lo..hi] {
                let c = blk[p as usize] as usize;
                let pos = loc[p as usize];
                if pos < bmid[c] {
                    continue;
                }
                if bmid[c] == bstart[c] {
                    touched.push(c as u32);
                }
                let other = elems[bmid[c]];
                elems.swap(pos, bmid[c]);
                loc[other as usize] = pos;
                loc[p as usize] = bmid[c];
                bmid[c] += 1;
            }
        }
        for c in touched.drain(..) {
            let c = c as usize;
            if bmid[c] == bend[c] {
                bmid[c] = bstart[c];
                continue;
            }
            let nb = bstart.len();
            bstart.push(bstart[c]);
            bend.push(bmid[c]);
            bmid.push(bstart[c]);
            let mid = bmid[c];
            bstart[c] = mid;
            bmid[c] = mid;
            for i in bstart[nb]..bend[nb] {
                blk[elems[i] as usize] = nb as u32;
            }
            inw.resize(bstart.len() * k, false);
            let small_new = bend[nb] - bstart[nb] <= bend[c] - bstart[c];
            for a in 0..k {
                if inw[c * k + a] {
                    inw[nb * k + a] = true;
                    work.push((nb as u32, a as Sym));
                } else {
                    let pick = if small_new { nb } else { c };
                    inw[pick * k + a] = true;
                    work.push((pick as u32, a as Sym));
                }
            }
        }
    }

    // Quotient, renumbered breadth-first from the initial block.
    let nb = bstart.len();
    let mut canon = vec![u32::MAX; nb];
    let mut border: Vec<u32> = vec![blk[0]];
    canon[blk[0] as usize] = 0;
    let mut i = 0;
    while i < border.len() {
        let b = border[i] as usize;
        let rep = elems[bstart[b]] as usize;
        for s in 0..k {
            let t = blk[delta[rep * k + s] as usize] as usize;
            if canon[t] == u32::MAX {
                canon[t] = border.len() as u32;
                border.push(t as u32);
            }
        }
        i += 1;
    }
    let m = border.len();
    let mut out_delta = vec![0u32; m * k];
    let mut out_acc = vec![false; m];
    for (ci, &b) in border.iter().enumerate() {
        let rep = elems[bstart[b as usize]] as usize;
        out_acc[ci] = acc[rep];
        for s in 0..k {
            out_delta[ci * k + s] = canon[blk[delta[rep * k + s] as usize] as usize];
        }
    }
    Dfa {
        alphabet: d.alphabet.clone(),
        delta: out_delta,
        accepting: out_acc,
    }
}

/// Canonical minimal complete DFA of an automaton's language.
pub fn determinize_minimize(a: &FiniteAutomaton) -> Dfa {
    minimize(&determinize(a))
}

/// Kinds of boolean combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    /// Intersection.
    And,
    /// Union.
    Or,
    /// Difference `a ∖ b`.
    Diff,
    /// Complement of `a`.
    Complement,
}

fn product(a: &Dfa, b: &Dfa, f: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
    same_alphabet(&a.alphabet, &b.alphabet)?;
    let k = a.alphabet.len();
    let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
    let mut pairs = vec![(0u32, 0u32)];
    ids.insert((0, 0), 0);
    let mut delta = Vec::new();
    let mut acc = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        acc.push(f(a.is_accepting(p), b.is_accepting(q)));
        for s in 0..k as Sym {
            let t = (a.next(p, s), b.next(q, s));
            let id = *ids.entry(t).or_insert_with(|| {
                pairs.push(t);
                (pairs.len() - 1) as u32
            });
            delta.push(id);
        }
        i += 1;
    }
    Ok(Dfa::from_table(a.alphabet.clone(), delta, acc))
}

/// Boolean combination of regular languages.
pub fn boolean(kind: BoolOp, a: &Dfa, b: Option<&Dfa>) -> Result<Dfa> {
    match (kind, b) {
        (BoolOp::Complement, _) => Ok(a.complement()),
        (BoolOp::And, Some(b)) => product(a, b, |x, y| x && y),
        (BoolOp::Or, Some(b)) => product(a, b, |x, y| x || y),
        (BoolOp::Diff, Some(b)) => product(a, b, |x, y| x && !y),
        (_, None) => Err(Error::HypothesisViolated("binary operation needs two operands".into())),
    }
}

/// Image of the language under a letterwise morphism into `target`.
pub fn project(a: &FiniteAutomaton, morphism: &[Sym], target: Arc<Alphabet>) -> FiniteAutomaton {
    assert_eq!(morphism.len(), a.alphabet.len(), "morphism must be total");
    let mut out = FiniteAutomaton::new(target);
    for q in 0..a.num_states() {
        out.add_state();
        out.set_accepting(q as u32, a.accepting[q]);
    }
    for &q in &a.initial {
        out.set_initial(q);
    }
    for q in 0..a.num_states() {
        for &(s, t) in &a.trans[q] {
            out.add_edge(q as u32, morphism[s as usize], t);
        }
    }
    out
}

/// Emptiness, finiteness and exact size of a regular language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageClass {
    /// No word is accepted.
    pub empty: bool,
    /// Finitely many words are accepted.
    pub finite: bool,
    /// Exact number of words when finite.
    pub word_count: Option<BigUint>,
}

/// Classifies a language as empty, finite (with exact count) or infinite.
pub fn classify_language(d: &Dfa) -> LanguageClass {
    let live = d.live_states();
    if !live[0] {
        return LanguageClass {
            empty: true,
            finite: true,
            word_count: Some(BigUint::zero()),
        };
    }
    let k = d.alphabet.len();
    let n = d.num_states();
    // Kahn's algorithm on the live subgraph reachable from 0.
    let mut indeg = vec![0usize; n];
    for q in 0..n {
        if !live[q] {
            continue;
        }
        for s in 0..k {
            let t = d.delta[q * k + s] as usize;
            if live[t] {
                indeg[t] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&q| live[q] && indeg[q] == 0).collect();
    let mut topo = Vec::new();
    while let Some(q) = stack.pop() {
        topo.push(q);
        for s in 0..k {
            let t = d.delta[q * k + s] as usize;
            if live[t] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
    }
    let live_count = live.iter().filter(|&&b| b).count();
    if topo.len() < live_count {
        return LanguageClass {
            empty: false,
            finite: false,
            word_count: None,
        };
    }
    let mut paths = vec![BigUint::zero(); n];
    paths[0] = BigUint::one();
    let mut total = BigUint::zero();
    for &q in &topo {
        if paths[q].is_zero() {
            continue;
        }
        if d.accepting[q] {
            total += &paths[q];
        }
        let pq = paths[q].clone();
        for s in 0..k {
            let t = d.delta[q * k + s] as usize;
            if live[t] {
                paths[t] += &pq;
            }
        }
    }
    LanguageClass {
        empty: false,
        finite: true,
        word_count: Some(total),
    }
}

/// Shortest word of `L(b) ∖ L(a)`, if any.
pub fn inclusion_witness(a: &Dfa, b: &Dfa) -> Result<Option<Vec<Sym>>> {
    Ok(boolean(BoolOp::Diff, b, Some(a))?.shortest_word())
}

/// True iff `L(b) ⊆ L(a)`.
pub fn includes(a: &Dfa, b: &Dfa) -> Result<bool> {
    Ok(inclusion_witness(a, b)?.is_none())
}
