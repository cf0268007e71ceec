//! Kernels of symbolic codings of hyperbolic 2×2 toral automorphisms.
//!
//! A point `x ∈ {0..n−1}^ℤ` is sent to
//! `real(x) = Σ_{i≥0} x_i λ^{-i} v_λ + Σ_{i<0} x_i μ^{-i} v_μ`, with
//! `v_λ − v_μ = (1, 0)`. Two points are identified when `real(x) − real(y)`
//! lies in `ℤ²`. Writing `c = x − y` and `k = α v_λ + γ v_μ ∈ ℤ²`, this means
//! `Σ_{i≥0} c_i λ^{-i} = α` and `Σ_{j≥1} c_{-j} μ^j = γ`, two carry conditions.

use num_traits::ToPrimitive;

use crate::automata::Alphabet;
use crate::error::{Error, Result};
use crate::symbolic::{essentialize, LabeledGraph, Side, SoficPresentation, SoficRelation};

use super::carry::carry_automaton;
use super::quadratic::{squarefree_part, QuadraticNumber};

/// A hyperbolic toral automorphism with its eigen data and digit count.
#[derive(Debug, Clone)]
pub struct ToralSpec {
    /// The matrix, row major.
    pub matrix: [[i64; 2]; 2],
    /// Expanding eigenvalue.
    pub lambda: QuadraticNumber,
    /// Contracting eigenvalue.
    pub mu: QuadraticNumber,
    /// Expanding eigenvector, `(A − μ)e₁/(λ − μ)`.
    pub v_lambda: [QuadraticNumber; 2],
    /// Contracting eigenvector, `(A − λ)e₁/(λ − μ)`.
    pub v_mu: [QuadraticNumber; 2],
    /// Number of digits of the cover alphabet `{0, …, n−1}`.
    pub digits: usize,
}

impl ToralSpec {
    /// Eigen data of `matrix`, with digit count `⌊|λ|⌋ + 1`.
    pub fn new(matrix: [[i64; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = matrix;
        let det = a * d - b * c;
        let tr = a + d;
        if det.abs() != 1 {
            return Err(Error::HypothesisViolated(format!("determinant {det} is not ±1")));
        }
        let disc = tr * tr - 4 * det;
        if disc <= 0 {
            return Err(Error::NotHyperbolic(format!("discriminant {disc} ≤ 0")));
        }
        let (sf, f) = squarefree_part(disc);
        if sf == 1 {
            return Err(Error::NotHyperbolic(format!("eigenvalues are rational (discriminant {disc})")));
        }
        let sign = if tr >= 0 { 1 } else { -1 };
        let lambda = QuadraticNumber::from_parts(tr, 2, sign * f, 2, sf);
        let mu = QuadraticNumber::from_parts(tr, 2, -sign * f, 2, sf);
        let gap = &lambda - &mu;
        let ai = QuadraticNumber::int(a);
        let ci = QuadraticNumber::int(c);
        let v_lambda = [&(&ai - &mu) / &gap, &ci / &gap];
        let v_mu = [&(&ai - &lambda) / &gap, &ci / &gap];
        let digits = lambda.abs().floor().to_usize().expect("small eigenvalue") + 1;
        Ok(ToralSpec {
            matrix,
            lambda,
            mu,
            v_lambda,
            v_mu,
            digits,
        })
    }

    /// Overrides the digit count.
    pub fn with_digits(mut self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::HypothesisViolated("digit count must be positive".into()));
        }
        self.digits = n;
        Ok(self)
    }

    /// Parses `a,b,c,d`.
    pub fn parse_matrix(s: &str) -> Result<[[i64; 2]; 2]> {
        let v: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(0, format!("bad matrix {s:?}")))?;
        match v[..] {
            [a, b, c, d] => Ok([[a, b], [c, d]]),
            _ => Err(Error::parse(0, format!("matrix needs 4 entries, got {}", v.len()))),
        }
    }

    fn max_digit(&self) -> i64 {
        self.digits as i64 - 1
    }

    /// Bounds `(B_λ, B_μ)` on `|α|` and `|γ|`.
    pub fn coefficient_bounds(&self) -> (QuadraticNumber, QuadraticNumber) {
        let m = QuadraticNumber::int(self.max_digit());
        let one = QuadraticNumber::one();
        let l = self.lambda.abs();
        let u = self.mu.abs();
        (&(&m * &l) / &(&l - &one), &(&m * &u) / &(&one - &u))
    }

    /// Coordinates `(α, γ)` of `k` in the eigenbasis.
    pub fn eigen_coordinates(&self, k: [i64; 2]) -> (QuadraticNumber, QuadraticNumber) {
        let [l0, l1] = &self.v_lambda;
        let [m0, m1] = &self.v_mu;
        let det = &(l0 * m1) - &(m0 * l1);
        let k0 = QuadraticNumber::int(k[0]);
        let k1 = QuadraticNumber::int(k[1]);
        let alpha = &(&(&k0 * m1) - &(&k1 * m0)) / &det;
        let gamma = &(&(l0 * &k1) - &(l1 * &k0)) / &det;
        (alpha, gamma)
    }

    /// The lattice points `k` with `|α| ≤ B_λ` and `|γ| ≤ B_μ`, in
    /// lexicographic order.
    pub fn lattice_window(&self) -> Vec<[i64; 2]> {
        let (bl, bm) = self.coefficient_bounds();
        let r = |j: usize| -> i64 {
            let x = bl.to_f64() * self.v_lambda[j].to_f64().abs() + bm.to_f64() * self.v_mu[j].to_f64().abs();
            x.ceil() as i64 + 1
        };
        let (r0, r1) = (r(0), r(1));
        let mut out = Vec::new();
        for k0 in -r0..=r0 {
            for k1 in -r1..=r1 {
                let (a, g) = self.eigen_coordinates([k0, k1]);
                if a.abs() <= bl && g.abs() <= bm {
                    out.push([k0, k1]);
                }
            }
        }
        out
    }
}

/// The kernel `{(x, y) : real(x) − real(y) ∈ ℤ²}` restricted to `cover²`
/// (default: the full shift on the digits).
pub fn toral_kernel(spec: &ToralSpec, cover: Option<&SoficPresentation>) -> Result<SoficRelation> {
    let base = Alphabet::digits(spec.digits);
    let pair = Alphabet::pair(&base);
    let m = spec.max_digit();
    let diffs: Vec<i64> = (-m..=m).collect();
    let mu_inv = spec.mu.inverse()?;
    let mut g = LabeledGraph::new(pair.clone());
    let add = |g: &mut LabeledGraph, s: u32, c: i64, t: u32| {
        for a in 0..=m {
            let b = a - c;
            if (0..=m).contains(&b) {
                g.add_edge(s, pair.join(a as u32, b as u32), t);
            }
        }
    };
    for k in spec.lattice_window() {
        let (alpha, gamma) = spec.eigen_coordinates(k);
        let right = carry_automaton(&spec.lambda, &(&alpha / &spec.lambda), &diffs)?;
        let left = carry_automaton(&mu_inv, &gamma, &diffs)?;
        let (rl, ll) = (right.live(), left.live());
        if !rl[0] || !ll[0] {
            continue;
        }
        let lid = place(&mut g, &ll);
        let rid = place(&mut g, &rl);
        for &(s, c, t) in &left.edges {
            if ll[s as usize] && ll[t as usize] {
                add(&mut g, lid[t as usize], c, lid[s as usize]);
            }
        }
        for &(s, c, t) in &right.edges {
            if rl[s as usize] && rl[t as usize] {
                add(&mut g, rid[s as usize], c, rid[t as usize]);
                if s == 0 {
                    add(&mut g, lid[0], c, rid[t as usize]);
                }
            }
        }
    }
    let pres = essentialize(g, Side::Z)?;
    let rel = SoficRelation::from_presentation(pres)?;
    let rel = match cover {
        Some(x) => rel.restrict(x)?,
        None => rel,
    };
    Ok(rel.reduce())
}

fn place(g: &mut LabeledGraph, live: &[bool]) -> Vec<u32> {
    live.iter().map(|&l| if l { g.add_vertex() } else { u32::MAX }).collect()
}
