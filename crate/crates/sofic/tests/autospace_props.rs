//! Property tests for automatic spaces of simplicial complexes.
//!
//! The oracle works with dyadic boxes: after `n` symbols a stream pins its
//! point to `[P, P + 1]^d / 2^n` with `P` the integer partial sums, and a
//! prefix is viable when such a box meets the geometric realization.

use proptest::prelude::*;
use sofic::automata::{Alphabet, Sym};
use sofic::autospace::{equal_reals_relation, prefix_equivalence_check, simplex_space, suspension, SimplicialComplex};
use sofic::symbolic::{equivalence_check, Side};

#[derive(Debug, Clone)]
struct Complex {
    d: usize,
    facets: Vec<u32>,
}

impl Complex {
    fn build(&self) -> SimplicialComplex {
        let lists: Vec<Vec<usize>> =
            self.facets.iter().map(|&m| (0..self.d).filter(|j| m >> j & 1 == 1).map(|j| j + 1).collect()).collect();
        SimplicialComplex::new(self.d, &lists).unwrap()
    }

    /// Whether some point with `sum = 2^n`, support inside a facet and
    /// `lo ≤ X ≤ hi` coordinatewise exists.
    fn meets(&self, lo: &[i64], hi: &[i64], n: usize) -> bool {
        let total = 1i64 << n;
        self.facets.iter().any(|&f| {
            let inside = |j: usize| f >> j & 1 == 1;
            (0..self.d).all(|j| inside(j) || lo[j] == 0)
                && (0..self.d).all(|j| lo[j] <= hi[j])
                && (0..self.d).filter(|&j| inside(j)).map(|j| lo[j]).sum::<i64>() <= total
                && (0..self.d).filter(|&j| inside(j)).map(|j| hi[j]).sum::<i64>() >= total
        })
    }
}

fn complex(max_d: usize) -> impl Strategy<Value = Complex> {
    (1..=max_d).prop_flat_map(|d| {
        prop::collection::vec(1u32..(1 << d), 1..=3).prop_map(move |facets| Complex { d, facets })
    })
}

fn partial_sums(w: &[Sym], d: usize) -> Vec<i64> {
    let mut p = vec![0i64; d];
    for &s in w {
        for (j, pj) in p.iter_mut().enumerate() {
            *pj = 2 * *pj + ((s >> (d - 1 - j)) & 1) as i64;
        }
    }
    p
}

fn words(k: u32, len: usize) -> Vec<Vec<Sym>> {
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        layer = layer.iter().flat_map(|w: &Vec<Sym>| (0..k).map(move |a| [w.as_slice(), &[a]].concat())).collect();
    }
    layer
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn viable_prefixes_match_boxes(c in complex(3)) {
        let s = simplex_space(&c.build()).unwrap();
        let k = 1u32 << c.d;
        let max_len = if c.d == 3 { 4 } else { 6 };
        for n in 0..=max_len {
            for w in words(k, n) {
                let p = partial_sums(&w, c.d);
                let hi: Vec<i64> = p.iter().map(|x| x + 1).collect();
                prop_assert_eq!(s.y.accepts(&w), c.meets(&p, &hi, n), "{:?}", w);
            }
        }
    }

    #[test]
    fn equal_reals_prefixes_are_close(d in 1usize..=3, len in 0usize..=6, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rel = equal_reals_relation(d);
        let k = 1u32 << d;
        for _ in 0..64 {
            let u: Vec<Sym> = (0..len).map(|_| rng.gen_range(0..k)).collect();
            // Bias towards near pairs by perturbing u.
            let v: Vec<Sym> = u.iter().map(|&a| if rng.gen_bool(0.3) { rng.gen_range(0..k) } else { a }).collect();
            let (pu, pv) = (partial_sums(&u, d), partial_sums(&v, d));
            let close = pu.iter().zip(&pv).all(|(a, b)| (a - b).abs() <= 1);
            prop_assert_eq!(rel.accepts(&u, &v), close, "{:?} {:?}", u, v);
        }
    }

    #[test]
    fn relation_prefixes_share_a_point(c in complex(3)) {
        let s = simplex_space(&c.build()).unwrap();
        let z = s.z().unwrap();
        let pair = Alphabet::pair(s.alphabet());
        let k = 1u32 << c.d;
        let max_len = if c.d == 3 { 2 } else { 3 };
        for n in 0..=max_len {
            let ws = words(k, n);
            for u in &ws {
                for v in &ws {
                    let (pu, pv) = (partial_sums(u, c.d), partial_sums(v, c.d));
                    let lo: Vec<i64> = pu.iter().zip(&pv).map(|(a, b)| *a.max(b)).collect();
                    let hi: Vec<i64> = pu.iter().zip(&pv).map(|(a, b)| a.min(b) + 1).collect();
                    let w: Vec<Sym> = u.iter().zip(v).map(|(&a, &b)| pair.join(a, b)).collect();
                    prop_assert_eq!(z.accepts(&w), c.meets(&lo, &hi, n), "{:?} {:?}", u, v);
                }
            }
        }
    }

    #[test]
    fn spaces_and_suspensions_are_equivalences(c in complex(3), z_side in any::<bool>()) {
        let s = simplex_space(&c.build()).unwrap();
        let rep = prefix_equivalence_check(s.z().unwrap(), &s.y).unwrap();
        prop_assert!(rep.is_equivalence, "{:?}", rep);
        let side = if z_side { Side::Z } else { Side::N };
        let (y, z) = suspension(&s, side).unwrap();
        prop_assert!(equivalence_check(&z, &y).unwrap().is_equivalence);
    }
}
