//! Minimal forbidden words and the SFT test.

use crate::automata::{classify_language, determinize_minimize, Dfa, FiniteAutomaton, Sym};

use super::SoficPresentation;

/// The minimal forbidden words of a subshift.
#[derive(Debug, Clone)]
pub struct MinimalForbidden {
    /// Canonical DFA of the minimal forbidden words.
    pub automaton: Dfa,
    /// Explicit list sorted by (length, lexicographic) when finite.
    pub words: Option<Vec<Vec<Sym>>>,
}

/// Words outside the block language whose two maximal proper factors lie
/// inside it.
pub fn minimal_forbidden_words(x: &SoficPresentation) -> MinimalForbidden {
    let l = x.block_language();
    let k = l.alphabet().len();
    // One automaton for (Σ*∖L) ∩ ΣL ∩ LΣ, run as a product on the fly:
    // component 1 tracks w in L; component 2 tracks w[1..] in L after the
    // first letter; component 3 remembers whether w[..-1] was in L.
    let mut a = FiniteAutomaton::new(l.alphabet().clone());
    let mut ids = std::collections::HashMap::new();
    let start = (0u32, u32::MAX, false);
    let mut states = vec![start];
    ids.insert(start, a.add_state());
    a.set_initial(0);
    let mut i = 0;
    while i < states.len() {
        let (p, q, prev_in) = states[i];
        let here = i as u32;
        if q != u32::MAX && !l.is_accepting(p) && l.is_accepting(q) && prev_in {
            a.set_accepting(here, true);
        }
        for s in 0..k as Sym {
            let np = l.next(p, s);
            let nq = if q == u32::MAX { 0 } else { l.next(q, s) };
            let t = (np, nq, l.is_accepting(p));
            // Once the prefix left L, no extension can be minimal.
            if !l.is_accepting(p) {
                continue;
            }
            let id = *ids.entry(t).or_insert_with(|| {
                states.push(t);
                a.add_state()
            });
            a.add_edge(here, s, id);
        }
        i += 1;
    }
    let automaton = determinize_minimize(&a);
    let class = classify_language(&automaton);
    let words = if class.finite {
        let max = automaton.num_states();
        Some(automaton.words_up_to(max))
    } else {
        None
    };
    MinimalForbidden { automaton, words }
}

/// True iff the subshift has finitely many minimal forbidden words.
pub fn is_sft(x: &SoficPresentation) -> bool {
    classify_language(&minimal_forbidden_words(x).automaton).finite
}

#[cfg(test)]
mod tests {
    use super::super::tests::{bin, golden, xle1};
    use super::super::Side;
    use super::*;

    #[test]
    fn golden_mean_forbids_11() {
        let g = golden(Side::Z);
        assert!(is_sft(&g));
        assert_eq!(minimal_forbidden_words(&g).words, Some(vec![vec![1, 1]]));
    }

    #[test]
    fn full_shift_forbids_nothing() {
        let f = SoficPresentation::full_shift(bin(), Side::Z);
        assert!(is_sft(&f));
        assert_eq!(minimal_forbidden_words(&f).words, Some(vec![]));
    }

    #[test]
    fn at_most_one_one_is_proper_sofic() {
        let x = xle1(Side::Z);
        assert!(!is_sft(&x));
        let mf = minimal_forbidden_words(&x);
        assert!(mf.words.is_none());
        for n in 0..8 {
            let mut w = vec![1];
            w.extend(std::iter::repeat_n(0, n));
            w.push(1);
            assert!(mf.automaton.accepts(&w));
        }
        assert_eq!(mf.automaton.words_up_to(4), vec![vec![1, 1], vec![1, 0, 1], vec![1, 0, 0, 1]]);
    }

    #[test]
    fn one_sided_at_most_one_one_is_proper_sofic() {
        assert!(!is_sft(&xle1(Side::N)));
    }
}
