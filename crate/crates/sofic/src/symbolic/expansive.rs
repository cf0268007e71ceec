//! Expansivity of sofically presented systems via the relative-SFT test on
//! the kernel.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicBool, Ordering};

use crate::automata::Sym;
use crate::error::{Error, Result};

use super::{essentialize, equivalence_check, is_sft, minimal_forbidden_words, LabeledGraph, Side};
use super::{SoficPresentation, SoficRelation};

/// Expansivity verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The `k`-block SFT approximation of the kernel, intersected with
    /// `Y²`, equals the kernel.
    ExpansiveWithWindow(usize),
    /// The ambient is an SFT and the kernel is not.
    NotExpansive,
    /// Proper sofic ambient and no window up to `k_max` works; one
    /// witness pair word per window size.
    UnknownWithinBound {
        /// The bound.
        k_max: usize,
        /// `(k, word)` with `word` admissible for the `k`-approximation but
        /// not for the kernel.
        witnesses: Vec<(usize, Vec<Sym>)>,
    },
}

/// Verdict plus the facts it was derived from.
#[derive(Debug, Clone)]
pub struct ExpansivityCertificate {
    /// The verdict.
    pub verdict: Verdict,
    /// Whether the ambient `Y` is an SFT.
    pub ambient_is_sft: bool,
    /// Whether the kernel is an SFT (computed on the exact path only).
    pub kernel_is_sft: Option<bool>,
    /// The kernel `Z ∩ Y²`.
    pub kernel: SoficRelation,
}

/// Shortest word admissible for the `k`-block SFT approximation of
/// `kernel` inside `ambient` but not admissible for `kernel`; `None` when
/// the two subshifts coincide. `kernel ⊆ ambient` is assumed.
pub fn sft_approximation_witness(kernel: &SoficPresentation, ambient: &SoficPresentation, k: usize) -> Option<Vec<Sym>> {
    assert!(k >= 1);
    let d = kernel.block_language();
    let amb = ambient.graph();
    let outl = amb.out_lists();
    // States: (runs of the kernel DFA started at the last k-1 positions,
    // oldest first; ambient vertex).
    let mut ids: HashMap<(Vec<u32>, u32), u32> = HashMap::new();
    let mut states: Vec<(Vec<u32>, u32)> = Vec::new();
    let mut g = LabeledGraph::new(kernel.alphabet().clone());
    let starts: Vec<u32> = match ambient.side() {
        Side::Z => (0..amb.num_vertices as u32).collect(),
        Side::N => amb.initial.clone(),
    };
    for v in starts {
        let key = (Vec::new(), v);
        let id = g.add_vertex();
        ids.insert(key.clone(), id);
        states.push(key);
        g.initial.push(id);
    }
    let mut i = 0;
    while i < states.len() {
        let (runs, v) = states[i].clone();
        'edges: for &ei in &outl[v as usize] {
            let e = amb.edges[ei as usize];
            let mut next = Vec::with_capacity(runs.len() + 1);
            for &q in &runs {
                let t = d.next(q, e.label);
                if !d.is_accepting(t) {
                    continue 'edges;
                }
                next.push(t);
            }
            let t = d.next(0, e.label);
            if !d.is_accepting(t) {
                continue;
            }
            next.push(t);
            if next.len() >= k {
                next.remove(0);
            }
            let key = (next, e.dst);
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = g.add_vertex();
                    ids.insert(key.clone(), id);
                    states.push(key);
                    id
                }
            };
            g.add_edge(i as u32, e.label, id);
        }
        i += 1;
    }
    let approx = essentialize(g, ambient.side()).ok()?;
    // Shortest path label of the approximation leaving the kernel language.
    let ag = approx.graph();
    let aout = ag.out_lists();
    let mut seen: HashMap<(u32, u32), (u32, u32, Sym)> = HashMap::new();
    let mut queue = VecDeque::new();
    for v in 0..ag.num_vertices as u32 {
        seen.insert((v, 0), (u32::MAX, u32::MAX, 0));
        queue.push_back((v, 0u32));
    }
    while let Some((v, q)) = queue.pop_front() {
        for &ei in &aout[v as usize] {
            let e = ag.edges[ei as usize];
            let t = d.next(q, e.label);
            let key = (e.dst, t);
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, (v, q, e.label));
            if !d.is_accepting(t) {
                let mut w = vec![e.label];
                let mut cur = (v, q);
                while let Some(&(pv, pq, s)) = seen.get(&cur) {
                    if pv == u32::MAX {
                        break;
                    }
                    w.push(s);
                    cur = (pv, pq);
                }
                w.reverse();
                return Some(w);
            }
            queue.push_back(key);
        }
    }
    None
}

/// [`is_expansive_with`] without cancellation.
pub fn is_expansive(y: &SoficPresentation, z: &SoficRelation, k_max: usize) -> Result<ExpansivityCertificate> {
    is_expansive_with(y, z, k_max, None)
}

/// Decides expansivity of `Y / Z` exactly when `Y` is an SFT, and
/// semi-decides it up to window `k_max` otherwise. A set cancellation flag
/// stops the window search early with the witnesses found so far.
pub fn is_expansive_with(
    y: &SoficPresentation,
    z: &SoficRelation,
    k_max: usize,
    cancel: Option<&AtomicBool>,
) -> Result<ExpansivityCertificate> {
    let kernel = z.restrict(y)?.reduce();
    let eq = equivalence_check(&kernel, y)?;
    if !eq.is_equivalence {
        let failed: Vec<String> = eq.witnesses.iter().map(|(p, _)| p.clone()).collect();
        return Err(Error::NotEquivalence(failed.join(", ")));
    }
    let yy = SoficRelation::square(y);
    let ambient_is_sft = is_sft(y);
    let kp = kernel.presentation();
    if ambient_is_sft {
        let mf = minimal_forbidden_words(kp);
        let Some(words) = mf.words else {
            return Ok(ExpansivityCertificate {
                verdict: Verdict::NotExpansive,
                ambient_is_sft,
                kernel_is_sft: Some(false),
                kernel,
            });
        };
        let l = words.iter().map(|w| w.len()).max().unwrap_or(1).max(1);
        for k in 1..=l {
            if sft_approximation_witness(kp, yy.presentation(), k).is_none() {
                return Ok(ExpansivityCertificate {
                    verdict: Verdict::ExpansiveWithWindow(k),
                    ambient_is_sft,
                    kernel_is_sft: Some(true),
                    kernel,
                });
            }
        }
        return Err(Error::VerificationMismatch(format!(
            "kernel is an SFT with window {l} but its {l}-block approximation differs"
        )));
    }
    let mut witnesses = Vec::new();
    for k in 1..=k_max {
        if cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            break;
        }
        match sft_approximation_witness(kp, yy.presentation(), k) {
            None => {
                return Ok(ExpansivityCertificate {
                    verdict: Verdict::ExpansiveWithWindow(k),
                    ambient_is_sft,
                    kernel_is_sft: None,
                    kernel,
                })
            }
            Some(w) => witnesses.push((k, w)),
        }
    }
    Ok(ExpansivityCertificate {
        verdict: Verdict::UnknownWithinBound { k_max, witnesses },
        ambient_is_sft,
        kernel_is_sft: None,
        kernel,
    })
}
