//! Property tests for β-shifts and β-kernels on random admissible `d*`.

use proptest::prelude::*;
use sofic::automata::Sym;
use sofic::beta::{beta_shift_automaton, classify_beta, greedy_dstar, validate_dstar, BetaClass, DStar};
use sofic::toral::QuadraticNumber;

fn dstar() -> impl Strategy<Value = DStar> {
    (prop::collection::vec(0u32..=2, 0..=3), prop::collection::vec(0u32..=2, 1..=3))
        .prop_filter_map("admissible", |(u, v)| validate_dstar(&u, &v).ok())
}

/// Every suffix of `w` is lexicographically at most the prefix of `d*` of
/// the same length.
fn admissible(d: &DStar, w: &[Sym]) -> bool {
    let prefix: Vec<Sym> = (0..w.len()).map(|i| d.digit(i)).collect();
    (0..w.len()).all(|p| w[p..] <= prefix[..w.len() - p])
}

fn words(k: u32, max_len: usize) -> Vec<Vec<Sym>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Sym>| (0..k).map(move |a| [w.as_slice(), &[a]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Whether `σ^p(d*) ≤ d*` for all `p`, compared on a long window.
fn self_dominating(u: &[Sym], v: &[Sym]) -> bool {
    let n = u.len() + 4 * v.len() + 4;
    let seq: Vec<Sym> = (0..2 * n).map(|i| if i < u.len() { u[i] } else { v[(i - u.len()) % v.len()] }).collect();
    (1..n).all(|p| seq[p..p + n] <= seq[..n])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shift_automaton_matches_lexicographic_oracle(d in dstar()) {
        let x = beta_shift_automaton(&d);
        let k = d.max_digit() + 1;
        for w in words(k, 7) {
            prop_assert_eq!(x.block_language().accepts(&w), admissible(&d, &w), "{} {:?}", d, w);
        }
    }

    #[test]
    fn validation_matches_definition(u in prop::collection::vec(0u32..=2, 0..=3), v in prop::collection::vec(0u32..=2, 1..=3)) {
        let ok = v.iter().any(|&a| a != 0) && self_dominating(&u, &v);
        prop_assert_eq!(validate_dstar(&u, &v).is_ok(), ok);
        if let Ok(d) = validate_dstar(&u, &v) {
            for i in 0..12 {
                let want = if i < u.len() { u[i] } else { v[(i - u.len()) % v.len()] };
                prop_assert_eq!(d.digit(i), want);
            }
        }
    }

    #[test]
    fn classification_is_consistent(d in dstar()) {
        let rep = classify_beta(&d).unwrap();
        let want = if d.is_constant() {
            BetaClass::SftOverSft
        } else if d.is_totally_periodic() {
            BetaClass::SftOverProperSofic
        } else {
            BetaClass::ProperSoficOverProperSofic
        };
        prop_assert_eq!(rep.class, want);
        prop_assert!(rep.equivalence.is_equivalence);
        prop_assert_eq!(rep.shift_is_sft, rep.shift_forbidden.is_some());
        prop_assert_eq!(rep.shift_is_sft, want != BetaClass::ProperSoficOverProperSofic);
    }

    /// For `β² = aβ + b` with `1 ≤ b ≤ a`, `d_β(1) = ab0^∞` and
    /// `d*_β(1) = (a(b−1))^∞`.
    #[test]
    fn simple_parry_quadratics(a in 1i64..=4, b in 1i64..=4) {
        prop_assume!(b <= a);
        let disc = a * a + 4 * b;
        let (sf, f) = sofic::toral::squarefree_part(disc);
        prop_assume!(sf != 1);
        let beta = QuadraticNumber::from_parts(a, 2, f, 2, sf);
        let g = greedy_dstar(&beta, 6).unwrap();
        prop_assert_eq!(&g.d1_prefix, &vec![a as Sym, b as Sym, 0, 0, 0, 0]);
        prop_assert_eq!(g.dstar, Some(validate_dstar(&[], &[a as Sym, (b - 1) as Sym]).unwrap()));
    }
}
