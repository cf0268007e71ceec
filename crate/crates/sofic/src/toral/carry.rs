//! Carry automata recognizing digit representations `Σ_{i≥1} x_i β^{-i} = ξ`.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::QuadraticNumber;

/// Automaton with states in `ℤ[β]/q`, transitions `s →a βs + a`, initial
/// state `−ξ`. A digit stream is a representation of `ξ` exactly when it
/// labels an infinite path from the initial state.
#[derive(Debug, Clone)]
pub struct CarryAutomaton {
    /// Base.
    pub beta: QuadraticNumber,
    /// Represented value.
    pub xi: QuadraticNumber,
    /// Digit set.
    pub digits: Vec<i64>,
    /// States; index 0 is `−ξ`.
    pub states: Vec<QuadraticNumber>,
    /// Transitions `(source, digit, target)`.
    pub edges: Vec<(u32, i64, u32)>,
}

/// Breadth-first construction from `−ξ`, keeping states within the norm
/// bounds `|s| ≤ M/(|β|−1)` and `|s'| ≤ M/(1−|β'|) + |ξ'|` (primes denote
/// Galois conjugates, `M` the largest digit magnitude).
pub fn carry_automaton(beta: &QuadraticNumber, xi: &QuadraticNumber, digits: &[i64]) -> Result<CarryAutomaton> {
    let one = QuadraticNumber::one();
    let abs_beta = beta.abs();
    if abs_beta <= one {
        return Err(Error::HypothesisViolated(format!("|β| = |{beta}| must exceed 1")));
    }
    if !beta.is_algebraic_integer() {
        return Err(Error::HypothesisViolated(format!("{beta} is not an algebraic integer")));
    }
    let conj_bound = if beta.is_rational() {
        None
    } else {
        let c = beta.conjugate().abs();
        if c >= one {
            return Err(Error::HypothesisViolated(format!("conjugate of {beta} has modulus ≥ 1")));
        }
        Some(c)
    };
    let m = QuadraticNumber::int(digits.iter().map(|d| d.abs()).max().unwrap_or(0));
    let bound = &m / &(&abs_beta - &one);
    let cbound = conj_bound.map(|c| &(&m / &(&one - &c)) + &xi.conjugate().abs());
    let within = |s: &QuadraticNumber| {
        s.abs() <= bound && cbound.as_ref().is_none_or(|cb| s.conjugate().abs() <= *cb)
    };
    let start = -xi.clone();
    let mut states = vec![start.clone()];
    let mut ids: HashMap<QuadraticNumber, u32> = HashMap::from([(start, 0)]);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let s = states[i].clone();
        let bs = beta * &s;
        for &a in digits {
            let t = &bs + &QuadraticNumber::int(a);
            if !within(&t) {
                continue;
            }
            let id = match ids.get(&t) {
                Some(&id) => id,
                None => {
                    let id = states.len() as u32;
                    ids.insert(t.clone(), id);
                    states.push(t);
                    id
                }
            };
            edges.push((i as u32, a, id));
        }
        i += 1;
    }
    Ok(CarryAutomaton {
        beta: beta.clone(),
        xi: xi.clone(),
        digits: digits.to_vec(),
        states,
        edges,
    })
}

impl CarryAutomaton {
    /// States with an infinite forward path.
    pub fn live(&self) -> Vec<bool> {
        let n = self.states.len();
        let mut out = vec![0usize; n];
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &(s, _, t) in &self.edges {
            out[s as usize] += 1;
            rev[t as usize].push(s);
        }
        let mut alive = vec![true; n];
        let mut stack: Vec<u32> = (0..n as u32).filter(|&v| out[v as usize] == 0).collect();
        for &v in &stack {
            alive[v as usize] = false;
        }
        while let Some(v) = stack.pop() {
            for &u in &rev[v as usize] {
                if alive[u as usize] {
                    out[u as usize] -= 1;
                    if out[u as usize] == 0 {
                        alive[u as usize] = false;
                        stack.push(u);
                    }
                }
            }
        }
        alive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(w: &[i64], beta: &QuadraticNumber) -> QuadraticNumber {
        w.iter().fold(QuadraticNumber::int(0), |acc, &a| &(&acc * beta) + &QuadraticNumber::int(a))
    }

    #[test]
    fn binary_carries() {
        let two = QuadraticNumber::int(2);
        let c = carry_automaton(&two, &QuadraticNumber::int(0), &[-1, 0, 1]).unwrap();
        let mut vals: Vec<i64> = c.states.iter().map(|s| s.to_f64() as i64).collect();
        vals.sort();
        assert_eq!(vals, vec![-1, 0, 1]);
        // Words of length 3 leading 0 back to 0 are exactly the zero-sum words.
        let mut from_automaton = Vec::new();
        for a in [-1, 0, 1] {
            for b in [-1, 0, 1] {
                for d in [-1, 0, 1] {
                    let w = [a, b, d];
                    let mut s = Some(0u32);
                    for &x in &w {
                        s = s.and_then(|q| c.edges.iter().find(|e| e.0 == q && e.1 == x).map(|e| e.2));
                    }
                    if s.is_some_and(|q| c.states[q as usize].is_zero()) {
                        from_automaton.push(w);
                    }
                }
            }
        }
        let brute: Vec<[i64; 3]> = (0..27)
            .map(|i| [i / 9 - 1, (i / 3) % 3 - 1, i % 3 - 1])
            .filter(|w| 4 * w[0] + 2 * w[1] + w[2] == 0)
            .collect();
        assert_eq!(from_automaton, brute);
    }

    #[test]
    fn golden_path_identity() {
        let phi = QuadraticNumber::golden();
        let xi = QuadraticNumber::from_parts(1, 3, 1, 7, 5);
        let c = carry_automaton(&phi, &xi, &[-1, 0, 1]).unwrap();
        assert!(c.states.len() < 200);
        // Every path of length ≤ 6 satisfies ρ(w) = ξβ^|w| + s.
        let mut frontier: Vec<(Vec<i64>, u32)> = vec![(Vec::new(), 0)];
        for len in 0..=6u32 {
            for (w, q) in &frontier {
                assert_eq!(value(w, &phi), &(&xi * &phi.pow(len)) + &c.states[*q as usize]);
            }
            let mut next = Vec::new();
            for (w, q) in &frontier {
                for &(s, a, t) in &c.edges {
                    if s == *q {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, t));
                    }
                }
            }
            frontier = next;
        }
    }

    #[test]
    fn zero_digit_only() {
        let phi = QuadraticNumber::golden();
        let c = carry_automaton(&phi, &QuadraticNumber::int(0), &[0]).unwrap();
        assert_eq!(c.states.len(), 1);
        assert_eq!(c.edges, vec![(0, 0, 0)]);
    }

    #[test]
    fn rejects_contracting_base() {
        let half = QuadraticNumber::from_parts(1, 2, 0, 1, 5);
        assert!(carry_automaton(&half, &QuadraticNumber::int(0), &[0, 1]).is_err());
    }
}
