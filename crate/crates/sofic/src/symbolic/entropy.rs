//! Topological entropy from a right-resolving presentation.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::SoficPresentation;

/// Natural logarithm of the spectral radius of the determinized
/// presentation (the live part of the block-language DFA).
pub fn entropy(x: &SoficPresentation) -> f64 {
    let d = x.block_language();
    let live = d.live_states();
    let k = d.alphabet().len();
    let n = d.num_states();
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for q in 0..n as u32 {
        if !live[q as usize] {
            continue;
        }
        for s in 0..k as u32 {
            let t = d.next(q, s);
            if live[t as usize] {
                g.add_edge(nodes[q as usize], nodes[t as usize], ());
            }
        }
    }
    let mut rho: f64 = 0.0;
    for comp in tarjan_scc(&g) {
        let idx: std::collections::HashMap<usize, usize> =
            comp.iter().enumerate().map(|(i, v)| (v.index(), i)).collect();
        let m = comp.len();
        let mut adj = vec![0.0f64; m * m];
        let mut any = false;
        for &v in &comp {
            for e in g.edges(v) {
                use petgraph::visit::EdgeRef;
                if let Some(&j) = idx.get(&e.target().index()) {
                    adj[idx[&v.index()] * m + j] += 1.0;
                    any = true;
                }
            }
        }
        if any {
            rho = rho.max(perron_root(&adj, m));
        }
    }
    if rho <= 1.0 {
        // Cycles exist (the subshift is nonempty); radius below 1 is rounding.
        rho = rho.max(1.0);
    }
    rho.ln()
}

/// Perron root of an irreducible nonnegative matrix, by power iteration on
/// `A + I` with Collatz–Wielandt bounds as the stopping rule.
fn perron_root(a: &[f64], m: usize) -> f64 {
    let mut v = vec![1.0f64; m];
    let mut est = 1.0;
    for _ in 0..200_000 {
        let mut w = v.clone();
        for i in 0..m {
            for j in 0..m {
                w[i] += a[i * m + j] * v[j];
            }
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..m {
            let r = w[i] / v[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        est = 0.5 * (lo + hi);
        let norm = w.iter().cloned().fold(0.0, f64::max);
        for x in w.iter_mut() {
            *x /= norm;
        }
        v = w;
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    est - 1.0
}
