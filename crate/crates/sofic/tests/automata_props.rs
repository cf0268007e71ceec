//! Property tests for the finite-automaton layer against direct simulation
//! of raw transition lists.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sofic::automata::{
    boolean, classify_language, determinize_minimize, includes, inclusion_witness, project, Alphabet, BoolOp, Dfa,
    FiniteAutomaton, Sym,
};

const K: u32 = 2;
const MAX_LEN: usize = 8;

#[derive(Debug, Clone)]
struct RawNfa {
    n: usize,
    edges: Vec<(usize, Sym, usize)>,
    initial: Vec<usize>,
    accepting: Vec<bool>,
}

impl RawNfa {
    fn random(seed: u64, max_n: usize, k: u32) -> RawNfa {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=max_n);
        let mut edges = Vec::new();
        for s in 0..n {
            for a in 0..k {
                for t in 0..n {
                    if rng.gen_bool(0.25) {
                        edges.push((s, a, t));
                    }
                }
            }
        }
        let initial = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let accepting = (0..n).map(|_| rng.gen_bool(0.4)).collect();
        RawNfa {
            n,
            edges,
            initial,
            accepting,
        }
    }

    fn build(&self, alphabet: &Arc<Alphabet>) -> FiniteAutomaton {
        let mut a = FiniteAutomaton::new(alphabet.clone());
        for q in 0..self.n {
            a.add_state();
            a.set_accepting(q as u32, self.accepting[q]);
        }
        for &q in &self.initial {
            a.set_initial(q as u32);
        }
        for &(s, x, t) in &self.edges {
            a.add_edge(s as u32, x, t as u32);
        }
        a
    }

    fn accepts(&self, w: &[Sym]) -> bool {
        let mut cur = vec![false; self.n];
        for &q in &self.initial {
            cur[q] = true;
        }
        for &x in w {
            let mut next = vec![false; self.n];
            for &(s, y, t) in &self.edges {
                if y == x && cur[s] {
                    next[t] = true;
                }
            }
            cur = next;
        }
        (0..self.n).any(|q| cur[q] && self.accepting[q])
    }
}

fn all_words(k: u32, max_len: usize) -> Vec<Vec<Sym>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..k {
                let mut w2: Vec<Sym> = w.clone();
                w2.push(a);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn bin() -> Arc<Alphabet> {
    Alphabet::digits(K as usize)
}

fn dfa(seed: u64) -> (RawNfa, Dfa) {
    let raw = RawNfa::random(seed, 5, K);
    let d = determinize_minimize(&raw.build(&bin()));
    (raw, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn determinization_preserves_membership(seed in any::<u64>()) {
        let raw = RawNfa::random(seed, 8, K);
        let d = determinize_minimize(&raw.build(&bin()));
        for w in all_words(K, MAX_LEN) {
            prop_assert_eq!(d.accepts(&w), raw.accepts(&w), "word {:?}", w);
        }
    }

    #[test]
    fn minimal_dfa_is_canonical(seed in any::<u64>()) {
        let raw = RawNfa::random(seed, 6, K);
        let a = raw.build(&bin());
        let d = determinize_minimize(&a);
        // Reversing edge insertion order must not change the canonical form.
        let mut rev = raw.clone();
        rev.edges.reverse();
        prop_assert_eq!(&d, &determinize_minimize(&rev.build(&bin())));
        prop_assert_eq!(&d, &determinize_minimize(&d.to_nfa()));
    }

    #[test]
    fn boolean_operations_match_simulation(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (ra, a) = dfa(s1);
        let (rb, b) = dfa(s2);
        let and = boolean(BoolOp::And, &a, Some(&b)).unwrap();
        let or = boolean(BoolOp::Or, &a, Some(&b)).unwrap();
        let diff = boolean(BoolOp::Diff, &a, Some(&b)).unwrap();
        let not = boolean(BoolOp::Complement, &a, None).unwrap();
        for w in all_words(K, MAX_LEN) {
            let (x, y) = (ra.accepts(&w), rb.accepts(&w));
            prop_assert_eq!(and.accepts(&w), x && y);
            prop_assert_eq!(or.accepts(&w), x || y);
            prop_assert_eq!(diff.accepts(&w), x && !y);
            prop_assert_eq!(not.accepts(&w), !x);
        }
    }

    #[test]
    fn de_morgan(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (_, a) = dfa(s1);
        let (_, b) = dfa(s2);
        let lhs = boolean(BoolOp::Or, &a, Some(&b)).unwrap().complement();
        let rhs = boolean(BoolOp::And, &a.complement(), Some(&b.complement())).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn inclusion_witnesses_are_genuine(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (ra, a) = dfa(s1);
        let (rb, b) = dfa(s2);
        match inclusion_witness(&a, &b).unwrap() {
            Some(w) => prop_assert!(rb.accepts(&w) && !ra.accepts(&w)),
            None => {
                for w in all_words(K, MAX_LEN) {
                    prop_assert!(!rb.accepts(&w) || ra.accepts(&w));
                }
            }
        }
        let union = boolean(BoolOp::Or, &a, Some(&b)).unwrap();
        prop_assert!(includes(&union, &a).unwrap() && includes(&union, &b).unwrap());
    }

    #[test]
    fn classification_matches_enumeration(seed in any::<u64>()) {
        let (raw, d) = dfa(seed);
        let class = classify_language(&d);
        let n = raw.n;
        // A finite language of an n-state automaton has only words shorter
        // than n; an infinite one has a word of length in [n, 2n).
        let short: usize = all_words(K, n.max(1) - 1).iter().filter(|w| raw.accepts(w)).count();
        let long = all_words(K, 2 * n).iter().any(|w| w.len() >= n && raw.accepts(w));
        prop_assert_eq!(class.empty, short == 0 && !long);
        prop_assert_eq!(class.finite, !long);
        if class.finite {
            prop_assert_eq!(class.word_count.unwrap(), short.into());
        }
        let empty = determinize_minimize(&FiniteAutomaton::new(bin()));
        prop_assert_eq!(class.empty, includes(&empty, &d).unwrap());
    }

    #[test]
    fn projection_contains_images(seed in any::<u64>(), map in prop::collection::vec(0u32..2, 4)) {
        let four = Alphabet::digits(4);
        let raw = RawNfa::random(seed, 5, 4);
        let a = raw.build(&four);
        let p = determinize_minimize(&project(&a, &map, bin()));
        let mut images = BTreeSet::new();
        for w in all_words(4, 5) {
            if raw.accepts(&w) {
                let img: Vec<Sym> = w.iter().map(|&s| map[s as usize]).collect();
                prop_assert!(p.accepts(&img));
                images.insert(img);
            }
        }
        for w in all_words(K, 5) {
            prop_assert_eq!(p.accepts(&w), images.contains(&w));
        }
    }
}
