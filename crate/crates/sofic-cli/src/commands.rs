//! One function per subcommand.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Result};
use num_rational::BigRational;
use serde_json::json;

use sofic::automata::{Alphabet, Sym};
use sofic::autospace::{simplex_space, suspension, SimplicialComplex};
use sofic::beta::{classify_beta, greedy_dstar, DStar};
use sofic::metric::{
    build_shift_graph_system, dimension_upper_bound, distance_brackets, DistanceBracket, ExplicitSystem, GraphSystem,
    IntervalSystem,
};
use sofic::symbolic::{
    entropy, equivalence_check, is_expansive, is_sft, minimal_forbidden_words, transitive_closure_semialg, ClosureResult,
    EquivalenceReport, EventuallyPeriodicPoint, Side, SoficPresentation, SoficRelation, Verdict,
};
use sofic::toral::{golden_mean, golden_pipeline, golden_relations, multiplication_table, toral_kernel, QuadraticNumber, ToralSpec};

use crate::report::{digest, read_input, InputDigest, Outcome, EXIT_BOUND};

/// Shared bounds from the global flags.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    /// Window bound for expansivity.
    pub kmax: usize,
    /// Factor bound for the transitive closure.
    pub mmax: usize,
    /// Truncation depth for brackets.
    pub depth: usize,
}

/// Inputs are recorded here as they are read.
pub struct Ctx {
    /// Global bounds.
    pub bounds: Bounds,
    /// Digests of everything read.
    pub inputs: Vec<InputDigest>,
}

impl Ctx {
    fn shift(&mut self, path: &Path) -> Result<SoficPresentation> {
        let text = read_input(path, &mut self.inputs)?;
        SoficPresentation::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
    }

    fn relation(&mut self, path: &Path) -> Result<SoficRelation> {
        let p = self.shift(path)?;
        SoficRelation::from_presentation(p).map_err(|e| anyhow!("{}: {e}", path.display()))
    }

    fn inline(&mut self, name: &str, value: &str) {
        self.inputs.push(digest(format!("inline:{name}"), value.as_bytes()));
    }
}

fn words(alphabet: &Alphabet, ws: &[Vec<Sym>]) -> Vec<String> {
    ws.iter().map(|w| alphabet.format_word(w)).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_or_print(text: String, out: Option<&Path>, summary: String) -> Result<String> {
    match out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| anyhow!("cannot write {}: {e}", p.display()))?;
            Ok(format!("{summary}\nwritten to {}\n", p.display()))
        }
        None => Ok(text),
    }
}

/// `check-sft`.
pub fn check_sft(ctx: &mut Ctx, file: &Path, list_len: usize) -> Result<Outcome> {
    let x = ctx.shift(file)?;
    let mf = minimal_forbidden_words(&x);
    Ok(match &mf.words {
        Some(ws) => {
            let list = words(x.alphabet(), ws);
            let shown = if list.is_empty() { "none".to_string() } else { list.join(", ") };
            Outcome::new(format!("SFT: yes; minimal forbidden: {shown}"))
                .witnesses(list)
                .details(json!({ "sft": true, "count": ws.len() }))
        }
        None => {
            let first = mf.automaton.words_up_to(list_len);
            let list = words(x.alphabet(), &first);
            Outcome::new(format!(
                "SFT: no; infinitely many minimal forbidden words, {} of length ≤ {list_len}: {}",
                list.len(),
                list.join(", ")
            ))
            .witnesses(list)
            .details(json!({ "sft": false }))
        }
    })
}

/// `min-forbidden`.
pub fn min_forbidden(ctx: &mut Ctx, file: &Path, list_len: usize) -> Result<Outcome> {
    let x = ctx.shift(file)?;
    let mf = minimal_forbidden_words(&x);
    let (finite, ws) = match mf.words {
        Some(ws) => (true, ws),
        None => (false, mf.automaton.words_up_to(list_len)),
    };
    let list = words(x.alphabet(), &ws);
    let head = if finite {
        format!("{} minimal forbidden words (finite)", list.len())
    } else {
        format!("{} minimal forbidden words of length ≤ {list_len} (infinite set)", list.len())
    };
    let mut text = head.clone() + "\n";
    for w in &list {
        text += w;
        text.push('\n');
    }
    Ok(Outcome::new(head)
        .text(text)
        .witnesses(list)
        .details(json!({ "finite": finite, "automaton_states": mf.automaton.num_states() })))
}

/// `compose`.
pub fn compose(ctx: &mut Ctx, r: &Path, s: &Path, restrict: Option<&Path>, out: Option<&Path>) -> Result<Outcome> {
    let a = ctx.relation(r)?;
    let b = ctx.relation(s)?;
    let mut c = a.compose(&b)?;
    if let Some(x) = restrict {
        c = c.restrict(&ctx.shift(x)?)?;
    }
    let c = c.reduce();
    let sft = is_sft(c.presentation());
    let summary = format!("composition: {} vertices; SFT: {}", c.presentation().num_vertices(), yes(sft));
    let text = write_or_print(c.presentation().to_text(), out, summary.clone())?;
    Ok(Outcome::new(summary)
        .text(text)
        .details(json!({ "vertices": c.presentation().num_vertices(), "sft": sft })))
}

/// `transitive-closure`.
pub fn transitive_closure(ctx: &mut Ctx, r: &Path, x: &Path, out: Option<&Path>) -> Result<Outcome> {
    let rel = ctx.relation(r)?;
    let x = ctx.shift(x)?;
    let mmax = ctx.bounds.mmax;
    Ok(match transitive_closure_semialg(&rel, &x, mmax)? {
        ClosureResult::Closed { m, relation } => {
            let summary = format!("closed after {m} factor(s): {} vertices", relation.presentation().num_vertices());
            let text = write_or_print(relation.presentation().to_text(), out, summary.clone())?;
            Outcome::new(summary).text(text).details(json!({ "closed": true, "m": m }))
        }
        ClosureResult::Exhausted { m_max, last } => {
            let summary = format!("not transitive within {m_max} factor(s)");
            let text = write_or_print(last.presentation().to_text(), out, summary.clone())?;
            Outcome::new(summary)
                .text(text)
                .details(json!({ "closed": false, "m_max": m_max }))
                .exit(EXIT_BOUND)
        }
    })
}

fn equivalence_outcome(rep: &EquivalenceReport, pair: &Alphabet) -> Outcome {
    let verdict = format!(
        "equivalence: {} (reflexive: {}, symmetric: {}, transitive: {})",
        yes(rep.is_equivalence),
        yes(rep.reflexive),
        yes(rep.symmetric),
        yes(rep.transitive)
    );
    let wit: Vec<String> = rep.witnesses.iter().map(|(p, w)| format!("{p}: {}", pair.format_word(w))).collect();
    let mut text = verdict.clone() + "\n";
    for w in &wit {
        let _ = writeln!(text, "  {w}");
    }
    Outcome::new(verdict).text(text).witnesses(wit).details(json!({
        "reflexive": rep.reflexive,
        "symmetric": rep.symmetric,
        "transitive": rep.transitive,
        "equivalence": rep.is_equivalence,
    }))
}

/// `equivalence`.
pub fn equivalence(ctx: &mut Ctx, r: &Path, x: &Path) -> Result<Outcome> {
    let rel = ctx.relation(r)?;
    let x = ctx.shift(x)?;
    let rep = equivalence_check(&rel, &x)?;
    Ok(equivalence_outcome(&rep, rel.pair_alphabet()))
}

/// `expansive`.
pub fn expansive(ctx: &mut Ctx, y: &Path, z: &Path) -> Result<Outcome> {
    let y = ctx.shift(y)?;
    let z = ctx.relation(z)?;
    let cert = is_expansive(&y, &z, ctx.bounds.kmax)?;
    let pair = z.pair_alphabet();
    Ok(match cert.verdict {
        Verdict::ExpansiveWithWindow(k) => Outcome::new(format!("expansive: yes (window {k})"))
            .details(json!({ "verdict": "ExpansiveWithWindow", "window": k, "ambient_sft": cert.ambient_is_sft })),
        Verdict::NotExpansive => Outcome::new("expansive: no (kernel is not a relative SFT)")
            .details(json!({ "verdict": "NotExpansive", "ambient_sft": cert.ambient_is_sft })),
        Verdict::UnknownWithinBound { k_max, witnesses } => {
            let wit: Vec<String> = witnesses.iter().map(|(k, w)| format!("k={k}: {}", pair.format_word(w))).collect();
            let verdict = format!("expansive: unknown within window bound {k_max}");
            let mut text = verdict.clone() + "\n";
            for w in &wit {
                let _ = writeln!(text, "  {w}");
            }
            Outcome::new(verdict)
                .text(text)
                .witnesses(wit)
                .details(json!({ "verdict": "UnknownWithinBound", "k_max": k_max, "ambient_sft": cert.ambient_is_sft }))
                .exit(EXIT_BOUND)
        }
    })
}

/// `entropy`.
pub fn entropy_cmd(ctx: &mut Ctx, file: &Path) -> Result<Outcome> {
    let x = ctx.shift(file)?;
    let h = entropy(&x);
    let bits = h / std::f64::consts::LN_2;
    Ok(Outcome::new(format!("entropy: {h:.12} nats = {bits:.12} bits")).details(json!({ "nats": h, "bits": bits })))
}

fn rat(q: &Option<BigRational>) -> String {
    q.as_ref().map_or("inf".to_string(), |q| q.to_string())
}

/// Graph system selected for `metric-bracket`.
pub enum SystemSource {
    /// Binary subdivision of the interval.
    Interval,
    /// An explicit system file.
    Explicit(PathBuf),
    /// A sofic pair.
    Pair(PathBuf, PathBuf),
}

/// `metric-bracket`.
pub fn metric_bracket(ctx: &mut Ctx, source: SystemSource, x: &str, y: &str) -> Result<Outcome> {
    let (system, alphabet, side): (Box<dyn GraphSystem>, _, _) = match source {
        SystemSource::Interval => (Box::new(IntervalSystem), Alphabet::digits(2), Side::N),
        SystemSource::Explicit(p) => {
            let text = read_input(&p, &mut ctx.inputs)?;
            (Box::new(ExplicitSystem::parse(&text)?), Alphabet::digits(10), Side::N)
        }
        SystemSource::Pair(yp, zp) => {
            let y = ctx.shift(&yp)?;
            let z = ctx.relation(&zp)?;
            let a = y.alphabet().clone();
            let side = y.side();
            (Box::new(build_shift_graph_system(&y, &z)?), a, side)
        }
    };
    ctx.inline("x", x);
    ctx.inline("y", y);
    let px = EventuallyPeriodicPoint::parse(x, &alphabet, side)?;
    let py = EventuallyPeriodicPoint::parse(y, &alphabet, side)?;
    let bs: Vec<DistanceBracket> = distance_brackets(system.as_ref(), &px, &py, ctx.bounds.depth)?;
    let last = bs.last().expect("depth ≥ 1");
    let verdict = format!("depth {}: distance in [{}, {}]", last.depth, rat(&last.lower), rat(&last.upper));
    let mut text = String::new();
    let mut rows = Vec::new();
    for b in &bs {
        let _ = writeln!(text, "depth={} m={} r={} s={} u={}", b.depth, b.m, rat(&b.lower), rat(&b.pivot_only), rat(&b.upper));
        rows.push(json!({ "depth": b.depth, "m": b.m, "lower": rat(&b.lower), "pivot_only": rat(&b.pivot_only), "upper": rat(&b.upper) }));
    }
    text += &verdict;
    text.push('\n');
    Ok(Outcome::new(verdict).text(text).details(json!({ "brackets": rows })))
}

/// `dimension-bound`.
pub fn dimension_bound(ctx: &mut Ctx, y: &Path, z: &Path) -> Result<Outcome> {
    let y = ctx.shift(y)?;
    let z = ctx.relation(z)?;
    let b = dimension_upper_bound(&y, &z)?;
    Ok(Outcome::new(format!(
        "dimension ≤ {:.12} (c = {}, entropy = {:.12} nats)",
        b.bound, b.c, b.entropy
    ))
    .details(json!({ "c": b.c, "entropy": b.entropy, "bound": b.bound })))
}

/// `toral-kernel`.
pub fn toral_kernel_cmd(
    ctx: &mut Ctx,
    matrix: &str,
    digits: Option<usize>,
    cover: Option<&Path>,
    out: Option<&Path>,
) -> Result<Outcome> {
    ctx.inline("matrix", matrix);
    let mut spec = ToralSpec::new(ToralSpec::parse_matrix(matrix)?)?;
    if let Some(n) = digits {
        spec = spec.with_digits(n)?;
    }
    let cover = cover.map(|p| ctx.shift(p)).transpose()?;
    let k = toral_kernel(&spec, cover.as_ref())?;
    let summary = format!(
        "λ = {}, μ = {}, {} digits; kernel: {} vertices; SFT: {}",
        spec.lambda,
        spec.mu,
        spec.digits,
        k.presentation().num_vertices(),
        yes(is_sft(k.presentation()))
    );
    let text = write_or_print(k.presentation().to_text(), out, summary.clone())?;
    Ok(Outcome::new(summary).text(text).details(json!({
        "lambda": spec.lambda.to_string(),
        "mu": spec.mu.to_string(),
        "digits": spec.digits,
        "vertices": k.presentation().num_vertices(),
    })))
}

/// `golden-pipeline`.
pub fn golden(emit_patterns: bool) -> Result<Outcome> {
    let g = golden_pipeline()?;
    let pair = g.k.pair_alphabet().clone();
    let base = pair.base().expect("pair alphabet").clone();
    let mut widths = std::collections::BTreeMap::new();
    for (t, _) in &g.patterns {
        *widths.entry(t.len()).or_insert(0usize) += 1;
    }
    let profile: Vec<String> = widths.iter().map(|(w, n)| format!("{n} of width {w}")).collect();
    let verdict = format!(
        "K: equivalence {}; {} minimal forbidden patterns ({})",
        yes(g.report.is_equivalence),
        g.patterns.len(),
        profile.join(", ")
    );
    let rows: Vec<String> = g
        .patterns
        .iter()
        .map(|(t, b)| format!("{} {}", base.format_word(t), base.format_word(b)))
        .collect();
    let mut text = verdict.clone() + "\n";
    if emit_patterns {
        for r in &rows {
            text += r;
            text.push('\n');
        }
    }
    Ok(Outcome::new(verdict).text(text).witnesses(if emit_patterns { rows } else { Vec::new() }).details(json!({
        "equivalence": g.report.is_equivalence,
        "patterns": g.patterns.len(),
        "widths": widths,
        "kernel_vertices": g.k.presentation().num_vertices(),
    })))
}

/// `mult-table`.
pub fn mult_table() -> Result<Outcome> {
    let t = multiplication_table(&golden_relations()?, &golden_mean())?;
    let n = t.names.len();
    let entries: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}∘{}={}", t.names[i], t.names[j], t.names[t.table[i][j]]))
        .collect();
    let verdict = format!("closed under composition: {n} elements, {} entries", n * n);
    Ok(Outcome::new(verdict.clone())
        .text(format!("{verdict}\n{t}"))
        .details(json!({ "names": t.names, "table": t.table, "entries": entries })))
}

/// `beta-classify`.
pub fn beta_classify(ctx: &mut Ctx, dstar: Option<&str>, beta: Option<&str>, prefix: usize) -> Result<Outcome> {
    let mut text = String::new();
    let mut details = serde_json::Map::new();
    let d = match (dstar, beta) {
        (Some(s), _) => {
            ctx.inline("dstar", s);
            DStar::parse(s)?
        }
        (None, Some(b)) => {
            ctx.inline("beta", b);
            let q = QuadraticNumber::parse(b)?;
            let g = greedy_dstar(&q, prefix)?;
            let fmt = |w: &[Sym]| w.iter().map(|d| d.to_string()).collect::<String>();
            let _ = writeln!(text, "d_β(1) prefix: {}", fmt(&g.d1_prefix));
            let _ = writeln!(text, "d*_β(1) prefix: {}", fmt(&g.dstar_prefix));
            details.insert("d1_prefix".into(), json!(fmt(&g.d1_prefix)));
            details.insert("dstar_prefix".into(), json!(fmt(&g.dstar_prefix)));
            match g.dstar {
                Some(d) => d,
                None => {
                    let verdict = format!("d*_β(1) is not eventually periodic within {prefix} digits");
                    text += &verdict;
                    text.push('\n');
                    return Ok(Outcome::new(verdict)
                        .text(text)
                        .details(serde_json::Value::Object(details))
                        .exit(EXIT_BOUND));
                }
            }
        }
        (None, None) => bail!("one of --dstar or --beta is required"),
    };
    let rep = classify_beta(&d)?;
    let verdict = format!("d* = {d}: {}", rep.class.name());
    let _ = writeln!(text, "{verdict}");
    let _ = writeln!(text, "S_β: {} vertices; SFT: {}", rep.shift.num_vertices(), yes(rep.shift_is_sft));
    if let Some(ws) = &rep.shift_forbidden {
        let _ = writeln!(text, "S_β minimal forbidden: {}", words(rep.shift.alphabet(), ws).join(", "));
    }
    let _ = writeln!(
        text,
        "K_β: {} vertices; equivalence: {}",
        rep.kernel.presentation().num_vertices(),
        yes(rep.equivalence.is_equivalence)
    );
    let v = match &rep.kernel_verdict {
        Verdict::ExpansiveWithWindow(k) => format!("expansive with window {k}"),
        Verdict::NotExpansive => "not expansive".into(),
        Verdict::UnknownWithinBound { k_max, .. } => format!("unknown within window bound {k_max}"),
    };
    let _ = writeln!(text, "S_β/K_β: {v}");
    details.insert("dstar".into(), json!(d.to_string()));
    details.insert("class".into(), json!(rep.class.name()));
    details.insert("shift_sft".into(), json!(rep.shift_is_sft));
    details.insert("kernel_equivalence".into(), json!(rep.equivalence.is_equivalence));
    details.insert("expansivity".into(), json!(v));
    Ok(Outcome::new(verdict).text(text).details(serde_json::Value::Object(details)))
}

/// Output of `simplicial`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    /// Counts only.
    Summary,
    /// The numerator and relation of the suspension.
    SoficPair,
}

/// `simplicial`.
pub fn simplicial(
    ctx: &mut Ctx,
    facets: Option<&str>,
    file: Option<&Path>,
    suspend: Option<Side>,
    emit: Emit,
    out: Option<&Path>,
) -> Result<Outcome> {
    let spec = match (facets, file) {
        (Some(f), _) => {
            ctx.inline("facets", f);
            f.to_string()
        }
        (None, Some(p)) => read_input(p, &mut ctx.inputs)?
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .collect::<Vec<_>>()
            .join(","),
        (None, None) => bail!("one of --facets or --file is required"),
    };
    let k = SimplicialComplex::parse(&spec)?;
    let space = simplex_space(&k)?;
    let mut text = format!("complex {k}: {} vertices; Y prefix automaton: {} states\n", k.d(), space.y.num_states());
    let mut details = serde_json::Map::new();
    details.insert("complex".into(), json!(k.to_string()));
    details.insert("y_states".into(), json!(space.y.num_states()));
    let Some(side) = suspend else {
        if emit == Emit::SoficPair {
            bail!("--emit sofic-pair needs --suspend");
        }
        let verdict = format!("automatic space for {k}");
        return Ok(Outcome::new(verdict).text(text).details(serde_json::Value::Object(details)));
    };
    let (y, z) = suspension(&space, side)?;
    let rep = equivalence_check(&z, &y)?;
    let verdict = format!(
        "suspension ({}): numerator {} vertices, relation {} vertices; equivalence: {}",
        side.token(),
        y.num_vertices(),
        z.presentation().num_vertices(),
        yes(rep.is_equivalence)
    );
    details.insert("numerator_vertices".into(), json!(y.num_vertices()));
    details.insert("relation_vertices".into(), json!(z.presentation().num_vertices()));
    details.insert("equivalence".into(), json!(rep.is_equivalence));
    match (emit, out) {
        (Emit::Summary, _) => {
            text += &verdict;
            text.push('\n');
        }
        (Emit::SoficPair, Some(prefix)) => {
            let yp = prefix.with_extension("sofic");
            let zp = prefix.with_extension("rel");
            std::fs::write(&yp, y.to_text()).map_err(|e| anyhow!("cannot write {}: {e}", yp.display()))?;
            std::fs::write(&zp, z.presentation().to_text()).map_err(|e| anyhow!("cannot write {}: {e}", zp.display()))?;
            let _ = writeln!(text, "{verdict}\nwritten to {} and {}", yp.display(), zp.display());
        }
        (Emit::SoficPair, None) => {
            text = format!("# numerator\n{}# relation\n{}", y.to_text(), z.presentation().to_text());
        }
    }
    Ok(Outcome::new(verdict).text(text).details(serde_json::Value::Object(details)))
}

/// `dot-export`.
pub fn dot_export(ctx: &mut Ctx, file: &Path) -> Result<Outcome> {
    let x = ctx.shift(file)?;
    Ok(Outcome::new(format!("{} vertices", x.num_vertices())).text(x.to_dot()))
}
