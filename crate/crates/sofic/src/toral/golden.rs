//! The kernel of the golden-mean coding of `[[1,1],[1,0]]` as a composition
//! of two tail-exchange relations.
//!
//! Over the golden mean shift `X`, two points with a common left part have
//! the same λ-value exactly when their right tails are `10^∞` and `(01)^∞`
//! after a common prefix. Two points with a common right part have the same
//! μ-value exactly when their left tails are `^∞(10)100` and `^∞(01)001`.
//! `K_R` (resp. `K_L`) is the diagonal plus the right (resp. left) tail
//! exchanges, and the kernel is `closure(K_L) ∘ closure(K_R)` on `X²`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::automata::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::symbolic::{
    equivalence_check, essentialize, minimal_forbidden_words, EquivalenceReport, EventuallyPeriodicPoint,
    LabeledGraph, Side, SoficPresentation, SoficRelation,
};

fn bin() -> Arc<Alphabet> {
    Alphabet::digits(2)
}

/// The golden mean shift on `{0, 1}^ℤ`.
pub fn golden_mean() -> SoficPresentation {
    SoficPresentation::from_forbidden_words(&[vec![1, 1]], bin(), Side::Z).expect("nonempty")
}

/// Closure of `K_R` over the full 2-shift.
///
/// States `D` (diagonal), `A`, `B` and the swapped `A'`, `B'`:
/// `D` loops on `(0,0)`, `(1,1)`; `D →(1,0) A →(0,1) B →(0,0) A`, which reads
/// `(1,0)((0,1)(0,0))^∞`, the exchange of `10^∞` with `(01)^∞`.
pub fn closure_kr() -> SoficRelation {
    let p = Alphabet::pair(&bin());
    let mut g = LabeledGraph::new(p.clone());
    let d = g.add_vertex();
    g.add_edge(d, p.join(0, 0), d);
    g.add_edge(d, p.join(1, 1), d);
    for (x, y) in [(1, 0), (0, 1)] {
        let (a, b) = (g.add_vertex(), g.add_vertex());
        g.add_edge(d, p.join(x, y), a);
        g.add_edge(a, p.join(y, x), b);
        g.add_edge(b, p.join(0, 0), a);
    }
    SoficRelation::from_presentation(essentialize(g, Side::Z).expect("nonempty")).expect("pair alphabet")
}

/// Closure of `K_L` over the full 2-shift.
///
/// States `D`, the cycle `P →(1,0) Q →(0,1) P` with exit
/// `Q →(0,0) R →(0,1) D`, and the swapped copy. A path into `D` reads
/// `^∞((1,0)(0,1))(1,0)(0,0)(0,1)`, the exchange of `^∞(10)100` with
/// `^∞(01)001`.
pub fn closure_kl() -> SoficRelation {
    let p = Alphabet::pair(&bin());
    let mut g = LabeledGraph::new(p.clone());
    let d = g.add_vertex();
    g.add_edge(d, p.join(0, 0), d);
    g.add_edge(d, p.join(1, 1), d);
    for (x, y) in [(1, 0), (0, 1)] {
        let (pp, q, r) = (g.add_vertex(), g.add_vertex(), g.add_vertex());
        g.add_edge(pp, p.join(x, y), q);
        g.add_edge(q, p.join(y, x), pp);
        g.add_edge(q, p.join(0, 0), r);
        g.add_edge(r, p.join(y, x), d);
    }
    SoficRelation::from_presentation(essentialize(g, Side::Z).expect("nonempty")).expect("pair alphabet")
}

/// The orbit closure of the diagonal of the full shift together with all
/// tail exchanges `(w.u, w.v)` for `(u, v)` in `right`, and `(u.w, v.w)` for
/// `(u, v)` in `left`.
///
/// Right tails are one-sided points read from coordinate 0 rightwards; left
/// tails are one-sided points read from coordinate −1 leftwards.
pub fn swap_relation_from_tails(
    base: &Arc<Alphabet>,
    left: &[(EventuallyPeriodicPoint, EventuallyPeriodicPoint)],
    right: &[(EventuallyPeriodicPoint, EventuallyPeriodicPoint)],
) -> Result<SoficRelation> {
    let p = Alphabet::pair(base);
    let mut g = LabeledGraph::new(p.clone());
    let d = g.add_vertex();
    for a in 0..base.len() as Sym {
        g.add_edge(d, p.join(a, a), d);
    }
    for (tails, reversed) in [(left, true), (right, false)] {
        for (u, v) in tails {
            let z = u.zip(v, &p)?;
            if z.side != Side::N {
                return Err(Error::SideMismatch);
            }
            let edge = |g: &mut LabeledGraph, s: u32, a: Sym, t: u32| {
                if reversed {
                    g.add_edge(t, a, s)
                } else {
                    g.add_edge(s, a, t)
                }
            };
            // One unrolled period keeps the cycle away from `D`.
            let mut cur = d;
            for &a in z.core.iter().chain(&z.right) {
                let v = g.add_vertex();
                edge(&mut g, cur, a, v);
                cur = v;
            }
            let cycle: Vec<u32> = std::iter::once(cur).chain((1..z.right.len()).map(|_| g.add_vertex())).collect();
            for (i, &a) in z.right.iter().enumerate() {
                edge(&mut g, cycle[i], a, cycle[(i + 1) % cycle.len()]);
            }
        }
    }
    SoficRelation::from_presentation(essentialize(g, Side::Z)?)
}

/// Result of the golden-mean pipeline.
#[derive(Debug, Clone)]
pub struct GoldenPipeline {
    /// `closure(K_L)` on `X²`.
    pub l: SoficRelation,
    /// `closure(K_R)` on `X²`.
    pub r: SoficRelation,
    /// The kernel `closure(K_L) ∘ closure(K_R)` on `X²`.
    pub k: SoficRelation,
    /// Equivalence check of `k` on `X`.
    pub report: EquivalenceReport,
    /// Minimal forbidden patterns of `k` without an `11` on either track,
    /// as `(top, bottom)` rows sorted by width, then by the zipped word.
    pub patterns: Vec<(Vec<Sym>, Vec<Sym>)>,
}

/// Builds `K`, checks it is an equivalence relation and extracts its
/// minimal forbidden patterns.
pub fn golden_pipeline() -> Result<GoldenPipeline> {
    let x = golden_mean();
    let l = closure_kl().restrict(&x)?.reduce();
    let r = closure_kr().restrict(&x)?.reduce();
    let k = l.compose(&r)?.restrict(&x)?.reduce();
    let report = equivalence_check(&k, &x)?;
    let pair = k.pair_alphabet().clone();
    let mf = minimal_forbidden_words(k.presentation());
    let words = mf
        .words
        .ok_or_else(|| Error::VerificationMismatch("kernel is not an SFT".into()))?;
    let mut zipped: Vec<Vec<Sym>> = words
        .into_iter()
        .filter(|w| {
            let (t, b): (Vec<Sym>, Vec<Sym>) = w.iter().map(|&s| pair.split(s)).unzip();
            !has_11(&t) && !has_11(&b)
        })
        .collect();
    zipped.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let patterns = zipped.iter().map(|w| w.iter().map(|&s| pair.split(s)).unzip()).collect();
    Ok(GoldenPipeline {
        l,
        r,
        k,
        report,
        patterns,
    })
}

fn has_11(w: &[Sym]) -> bool {
    w.windows(2).any(|p| p == [1, 1])
}

/// Composition table of a finite family of relations on `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    /// Element names: the inputs followed by discovered products.
    pub names: Vec<String>,
    /// `table[i][j]` is the index of `names[i] ∘ names[j]`.
    pub table: Vec<Vec<usize>>,
}

impl MultiplicationTable {
    /// Name of `names[i] ∘ names[j]`.
    pub fn product(&self, i: &str, j: &str) -> Option<&str> {
        let a = self.names.iter().position(|n| n == i)?;
        let b = self.names.iter().position(|n| n == j)?;
        Some(&self.names[self.table[a][b]])
    }
}

impl fmt::Display for MultiplicationTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.table.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                writeln!(f, "{} ∘ {} = {}", self.names[i], self.names[j], self.names[k])?;
            }
        }
        writeln!(f)?;
        let w = self.names.iter().map(|n| n.chars().count()).max().unwrap_or(1).max(1) + 2;
        write!(f, "{:<w$}|", "∘")?;
        for n in &self.names {
            write!(f, " {n:<w$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}+{}", "-".repeat(w), "-".repeat((w + 1) * self.names.len()))?;
        for (i, row) in self.table.iter().enumerate() {
            write!(f, "{:<w$}|", self.names[i])?;
            for &k in row {
                write!(f, " {:<w$}", self.names[k])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Composes every ordered pair of relations (restricted to `X²`) and names
/// each product by language equality. Products outside the family are added
/// once; if the extended family is still not closed the call fails.
pub fn multiplication_table(relations: &[(String, SoficRelation)], x: &SoficPresentation) -> Result<MultiplicationTable> {
    let mut names: Vec<String> = relations.iter().map(|(n, _)| n.clone()).collect();
    let mut elems: Vec<SoficRelation> = relations.iter().map(|(_, r)| r.restrict(x)).collect::<Result<_>>()?;
    let find = |elems: &[SoficRelation], c: &SoficRelation| elems.iter().position(|e| e.language_equal(c));
    let mut table: Vec<Vec<Option<usize>>> = Vec::new();
    for round in 0..2 {
        let n = elems.len();
        table.resize(n, Vec::new());
        let mut fresh: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut products = Vec::new();
        for i in 0..n {
            table[i].resize(n, None);
            for j in 0..n {
                if table[i][j].is_some() {
                    continue;
                }
                let c = elems[i].compose(&elems[j])?.restrict(x)?.reduce();
                match find(&elems, &c).or_else(|| find(&products, &c).map(|p| n + p)) {
                    Some(k) => table[i][j] = Some(k),
                    None => {
                        if round == 1 {
                            return Err(Error::NotClosedUnderComposition(format!(
                                "{} ∘ {} is not in the family",
                                names[i], names[j]
                            )));
                        }
                        table[i][j] = Some(n + products.len());
                        products.push(c);
                        fresh.insert((i, j));
                    }
                }
            }
        }
        for (i, j) in fresh {
            let k = table[i][j].unwrap();
            if k >= names.len() {
                names.push(format!("({}∘{})", names[i], names[j]));
            }
        }
        if products.is_empty() {
            break;
        }
        elems.extend(products);
    }
    Ok(MultiplicationTable {
        names,
        table: table.into_iter().map(|r| r.into_iter().map(|k| k.unwrap()).collect()).collect(),
    })
}

/// The four golden relations `L`, `R`, `RR = R∘R`, `LR = L∘R` on `X`.
pub fn golden_relations() -> Result<Vec<(String, SoficRelation)>> {
    let x = golden_mean();
    let l = closure_kl().restrict(&x)?.reduce();
    let r = closure_kr().restrict(&x)?.reduce();
    let rr = r.compose(&r)?.restrict(&x)?.reduce();
    let lr = l.compose(&r)?.restrict(&x)?.reduce();
    Ok(vec![("L".into(), l), ("R".into(), r), ("RR".into(), rr), ("LR".into(), lr)])
}
