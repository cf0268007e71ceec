//! Sofic relations: presentations over a pair alphabet read as binary
//! relations on configurations.

use std::sync::Arc;

use crate::automata::{inclusion_witness, same_alphabet, Alphabet, Sym};
use crate::error::{Error, Result};

use super::{disjoint_union, essentialize, product_graph, same_side, Side, SoficPresentation};

/// A sofic subshift of `(Σ²)^M` read as a relation on `Σ^M`.
#[derive(Debug, Clone)]
pub struct SoficRelation {
    base: Arc<Alphabet>,
    pres: SoficPresentation,
}

impl SoficRelation {
    /// Wraps a presentation over a pair alphabet.
    pub fn from_presentation(pres: SoficPresentation) -> Result<Self> {
        let base = pres
            .alphabet()
            .base()
            .cloned()
            .ok_or_else(|| Error::HypothesisViolated("relation needs a pair alphabet".into()))?;
        Ok(SoficRelation { base, pres })
    }

    /// The underlying presentation over the pair alphabet.
    pub fn presentation(&self) -> &SoficPresentation {
        &self.pres
    }

    /// Track alphabet.
    pub fn base(&self) -> &Arc<Alphabet> {
        &self.base
    }

    /// Pair alphabet.
    pub fn pair_alphabet(&self) -> &Arc<Alphabet> {
        self.pres.alphabet()
    }

    /// Index side.
    pub fn side(&self) -> Side {
        self.pres.side()
    }

    /// Language-equal relation on the canonical deterministic presentation.
    pub fn reduce(&self) -> Self {
        SoficRelation {
            base: self.base.clone(),
            pres: self.pres.reduce(),
        }
    }

    /// Language equality.
    pub fn language_equal(&self, other: &Self) -> bool {
        self.pres.language_equal(&other.pres)
    }

    /// The diagonal `{(x, x) : x ∈ X}`.
    pub fn diagonal(x: &SoficPresentation) -> Self {
        let pair = Alphabet::pair(x.alphabet());
        let p = pair.clone();
        let pres = x.relabel(pair, move |a| p.join(a, a)).expect("relabeling keeps paths");
        SoficRelation {
            base: x.alphabet().clone(),
            pres,
        }
    }

    /// The full relation `X × X`.
    pub fn square(x: &SoficPresentation) -> Self {
        let pair = Alphabet::pair(x.alphabet());
        let p = pair.clone();
        let g = product_graph(x.graph(), x.graph(), pair, |_| Some(()), |_| Some(()), move |a, b| p.join(a, b));
        SoficRelation {
            base: x.alphabet().clone(),
            pres: essentialize(g, x.side()).expect("square of a nonempty shift is nonempty"),
        }
    }

    /// The transpose `{(y, x) : (x, y) ∈ R}`.
    pub fn transpose(&self) -> Self {
        let pair = self.pair_alphabet().clone();
        let p = pair.clone();
        let pres = self
            .pres
            .relabel(pair, move |s| {
                let (a, b) = p.split(s);
                p.join(b, a)
            })
            .expect("relabeling keeps paths");
        SoficRelation {
            base: self.base.clone(),
            pres,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        same_side(self.side(), other.side())?;
        same_alphabet(&self.base, &other.base)
    }

    fn check_shift(&self, x: &SoficPresentation) -> Result<()> {
        same_side(self.side(), x.side())?;
        same_alphabet(&self.base, x.alphabet())
    }

    fn wrap(&self, pres: Result<SoficPresentation>) -> Result<Self> {
        Ok(SoficRelation {
            base: self.base.clone(),
            pres: pres?,
        })
    }

    /// `R ∩ (X × X)`.
    pub fn restrict(&self, x: &SoficPresentation) -> Result<Self> {
        self.restrict_left(x)?.restrict_right(x)
    }

    /// `R ∩ (X × Σ^M)`.
    pub fn restrict_left(&self, x: &SoficPresentation) -> Result<Self> {
        self.check_shift(x)?;
        let p = self.pair_alphabet().clone();
        let g = product_graph(self.pres.graph(), x.graph(), p.clone(), |s| Some(p.split(s).0), Some, |s, _| s);
        self.wrap(essentialize(g, self.side()))
    }

    /// `R ∩ (Σ^M × X)`.
    pub fn restrict_right(&self, x: &SoficPresentation) -> Result<Self> {
        self.check_shift(x)?;
        let p = self.pair_alphabet().clone();
        let g = product_graph(self.pres.graph(), x.graph(), p.clone(), |s| Some(p.split(s).1), Some, |s, _| s);
        self.wrap(essentialize(g, self.side()))
    }

    /// `{(x, z) : ∃y, (x, y) ∈ self, (y, z) ∈ other}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.pair_alphabet().clone();
        let (p1, p2, p3) = (p.clone(), p.clone(), p.clone());
        let g = product_graph(
            self.pres.graph(),
            other.pres.graph(),
            p,
            move |s| Some(p1.split(s).1),
            move |s| Some(p2.split(s).0),
            move |a, b| p3.join(p3.split(a).0, p3.split(b).1),
        );
        self.wrap(essentialize(g, self.side()))
    }

    /// Union.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.wrap(essentialize(disjoint_union(self.pres.graph(), other.pres.graph()), self.side()))
    }

    /// Intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.wrap(self.pres.intersect(&other.pres))
    }

    /// Projection to the left track.
    pub fn domain(&self) -> SoficPresentation {
        let p = self.pair_alphabet().clone();
        self.pres
            .relabel(self.base.clone(), move |s| p.split(s).0)
            .expect("projection keeps paths")
    }

    /// Whether `(u, v)` (equal length words) is a word of the relation.
    pub fn accepts_pair(&self, u: &[Sym], v: &[Sym]) -> bool {
        let p = self.pair_alphabet();
        let w: Vec<Sym> = u.iter().zip(v).map(|(&a, &b)| p.join(a, b)).collect();
        u.len() == v.len() && self.pres.block_language().accepts(&w)
    }
}

/// Outcome of [`equivalence_check`], with a shortest counterexample word
/// for each failed property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// `Δ_X ⊆ R`.
    pub reflexive: bool,
    /// `R = R^T`.
    pub symmetric: bool,
    /// `(R ∘ R) ∩ X² ⊆ R`.
    pub transitive: bool,
    /// All three hold.
    pub is_equivalence: bool,
    /// Counterexample pair words, labeled by the failed property.
    pub witnesses: Vec<(String, Vec<Sym>)>,
}

/// Decides reflexivity, symmetry and transitivity of `r` on `x` by
/// block-language inclusion.
pub fn equivalence_check(r: &SoficRelation, x: &SoficPresentation) -> Result<EquivalenceReport> {
    r.check_shift(x)?;
    let r = &r.reduce();
    let lr = r.pres.block_language();
    let mut witnesses = Vec::new();
    let diag = SoficRelation::diagonal(x);
    let refl = inclusion_witness(lr, diag.pres.block_language())?;
    if let Some(w) = &refl {
        witnesses.push(("reflexive".to_string(), w.clone()));
    }
    let t = r.transpose();
    let sym = inclusion_witness(lr, t.pres.block_language())?;
    if let Some(w) = &sym {
        witnesses.push(("symmetric".to_string(), w.clone()));
    }
    let rr = r.compose(r).and_then(|c| c.reduce().restrict(x));
    let trans = match rr {
        Ok(c) => inclusion_witness(lr, c.pres.block_language())?,
        Err(Error::EmptySubshift) => None,
        Err(e) => return Err(e),
    };
    if let Some(w) = &trans {
        witnesses.push(("transitive".to_string(), w.clone()));
    }
    let (a, b, c) = (refl.is_none(), sym.is_none(), trans.is_none());
    Ok(EquivalenceReport {
        reflexive: a,
        symmetric: b,
        transitive: c,
        is_equivalence: a && b && c,
        witnesses,
    })
}

/// Result of the transitive-closure semi-algorithm.
#[derive(Debug, Clone)]
pub enum ClosureResult {
    /// `R^{≤m}` is transitive and hence the transitive closure.
    Closed {
        /// Number of factors needed.
        m: usize,
        /// The closure.
        relation: SoficRelation,
    },
    /// No fixpoint within the bound.
    Exhausted {
        /// The bound.
        m_max: usize,
        /// `R^{≤m_max}`.
        last: SoficRelation,
    },
}

/// Iterates `R^{≤m+1} = R^{≤m} ∪ (R^{≤m} ∘ R) ∩ X²` until transitive.
pub fn transitive_closure_semialg(r: &SoficRelation, x: &SoficPresentation, m_max: usize) -> Result<ClosureResult> {
    let base = r.restrict(x)?.reduce();
    let mut cur = base.clone();
    let mut m = 1;
    loop {
        let next = cur.compose(&base)?.restrict(x)?.reduce();
        if crate::automata::includes(cur.pres.block_language(), next.pres.block_language())? {
            return Ok(ClosureResult::Closed { m, relation: cur });
        }
        if m >= m_max {
            return Ok(ClosureResult::Exhausted { m_max, last: cur });
        }
        cur = cur.union(&next)?.reduce();
        m += 1;
    }
}
