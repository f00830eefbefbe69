//! Seeded random presentations and property scans.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checkers::{build_report, normalize_property, theorem_suite, PropertyReport};
use crate::error::{Error, Result};
use crate::ladder::{LadderPoset, LadderPresentation, RelKind, RelStmt, MAX_LADDERS};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenConfig {
    pub seed: u64,
    pub max_base: u32,
    pub max_ladders: u32,
    /// Probability of each candidate order edge or rule.
    pub density: f64,
    pub max_constant: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 42, max_base: 4, max_ladders: 2, density: 0.3, max_constant: 3 }
    }
}

impl GenConfig {
    pub fn check(&self) -> Result<()> {
        let ok = self.max_base >= 1
            && (self.max_ladders as usize) <= MAX_LADDERS
            && self.density > 0.0
            && self.density <= 1.0
            && self.max_constant >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::PreconditionFailed(format!("invalid generator config {self:?}")))
        }
    }
}

/// The unvalidated presentation for `index`; one ChaCha stream per index.
pub fn random_source(cfg: &GenConfig, index: u64) -> LadderPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let nl = rng.gen_range(0..=cfg.max_ladders) as usize;
    let nb = rng.gen_range(usize::from(nl == 0)..=cfg.max_base as usize);
    let base: Vec<String> = (0..nb).map(|i| format!("b{i}")).collect();
    let ladders: Vec<String> = (0..nl).map(|i| format!("L{i}")).collect();
    // base edges and base-below-ladder rules follow one random node ranking
    let mut rank: Vec<usize> = (0..nb + nl).collect();
    rank.shuffle(&mut rng);
    let c = cfg.max_constant;
    let mut order = Vec::new();
    let mut rels = Vec::new();
    for u in 0..nb + nl {
        for v in 0..nb + nl {
            if u == v {
                continue;
            }
            let (ub, vb) = (u < nb, v < nb);
            // ladders may sit below any base point; that is where suprema come from
            let free = !ub;
            let p = match (ub, vb) {
                (false, false) => cfg.density / 2.0,
                (false, true) => (2.0 * cfg.density).min(1.0),
                _ => cfg.density,
            };
            if !(free || rank[u] < rank[v]) || !rng.gen_bool(p) {
                continue;
            }
            let name = |k: usize| if k < nb { base[k].clone() } else { ladders[k - nb].clone() };
            let kind = match (ub, vb) {
                (true, true) => {
                    order.push((name(u), name(v)));
                    continue;
                }
                (true, false) => RelKind::From(rng.gen_range(0..=c)),
                (false, true) => {
                    if rng.gen_bool(0.5) { RelKind::Always } else { RelKind::UpTo(rng.gen_range(0..=c)) }
                }
                (false, false) => {
                    if rng.gen_bool(0.5) {
                        RelKind::Shift(rng.gen_range(-(c as i64)..=c as i64))
                    } else {
                        RelKind::Tail(rng.gen_range(0..=c))
                    }
                }
            };
            rels.push(RelStmt { lhs: name(u), rhs: name(v), kind });
        }
    }
    LadderPresentation { name: format!("r{}_{index}", cfg.seed), base, ladders, order, rels }
}

/// Validated presentation for `index`, or `None` when validation rejects it.
pub fn random_presentation(cfg: &GenConfig, index: u64) -> Option<LadderPoset> {
    random_source(cfg, index).validate().ok()
}

// ---- queries ----------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyQuery {
    Prop(&'static str),
    Not(Box<PropertyQuery>),
    And(Box<PropertyQuery>, Box<PropertyQuery>),
    Or(Box<PropertyQuery>, Box<PropertyQuery>),
}

impl PropertyQuery {
    pub fn parse(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let mut pos = 0;
        let q = parse_or(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::QueryParse(format!("unexpected `{}`", toks[pos])));
        }
        Ok(q)
    }

    /// `n/a` values count as false.
    pub fn eval(&self, r: &PropertyReport) -> bool {
        match self {
            PropertyQuery::Prop(p) => r.get(p) == Some(true),
            PropertyQuery::Not(q) => !q.eval(r),
            PropertyQuery::And(a, b) => a.eval(r) && b.eval(r),
            PropertyQuery::Or(a, b) => a.eval(r) || b.eval(r),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() || ch == '_' || ch == '-' {
            cur.push(ch);
            continue;
        }
        if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
        match ch {
            '&' | '|' | '!' | '(' | ')' => out.push(ch.to_string()),
            c if c.is_whitespace() => {}
            c => return Err(Error::QueryParse(format!("unexpected character `{c}`"))),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_or(t: &[String], pos: &mut usize) -> Result<PropertyQuery> {
    let mut q = parse_and(t, pos)?;
    while t.get(*pos).is_some_and(|s| s == "|") {
        *pos += 1;
        q = PropertyQuery::Or(Box::new(q), Box::new(parse_and(t, pos)?));
    }
    Ok(q)
}

fn parse_and(t: &[String], pos: &mut usize) -> Result<PropertyQuery> {
    let mut q = parse_unary(t, pos)?;
    while t.get(*pos).is_some_and(|s| s == "&") {
        *pos += 1;
        q = PropertyQuery::And(Box::new(q), Box::new(parse_unary(t, pos)?));
    }
    Ok(q)
}

fn parse_unary(t: &[String], pos: &mut usize) -> Result<PropertyQuery> {
    let Some(tok) = t.get(*pos) else {
        return Err(Error::QueryParse("unexpected end of query".into()));
    };
    *pos += 1;
    match tok.as_str() {
        "!" => Ok(PropertyQuery::Not(Box::new(parse_unary(t, pos)?))),
        "(" => {
            let q = parse_or(t, pos)?;
            if t.get(*pos).map(String::as_str) != Some(")") {
                return Err(Error::QueryParse("missing `)`".into()));
            }
            *pos += 1;
            Ok(q)
        }
        "&" | "|" | ")" => Err(Error::QueryParse(format!("unexpected `{tok}`"))),
        name => normalize_property(name)
            .map(PropertyQuery::Prop)
            .map_err(|_| Error::QueryParse(format!("unknown property `{name}`"))),
    }
}

// ---- scanning ---------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanMatch {
    pub index: u64,
    /// Canonical DSL text of the presentation.
    pub source: String,
    pub report: PropertyReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub config: GenConfig,
    pub query: String,
    pub count: u64,
    /// Presentations rejected by validation.
    pub rejected: u64,
    pub dcpos: u64,
    pub matches: Vec<ScanMatch>,
}

impl ScanSummary {
    pub fn rejection_rate(&self) -> f64 {
        if self.count == 0 { 0.0 } else { self.rejected as f64 / self.count as f64 }
    }
}

enum Outcome {
    Rejected,
    Checked { dcpo: bool, hit: Option<ScanMatch> },
}

fn scan_one(cfg: &GenConfig, q: &PropertyQuery, index: u64) -> Result<Outcome> {
    let src = random_source(cfg, index);
    let Ok(p) = src.validate() else { return Ok(Outcome::Rejected) };
    let dcpo = p.is_dcpo();
    let report = if dcpo { theorem_suite(&p)? } else { build_report(&p, None) };
    let hit = q.eval(&report).then(|| ScanMatch { index, source: crate::dsl::print(&src), report });
    Ok(Outcome::Checked { dcpo, hit })
}

/// Checks indices `0..count` on `jobs` threads (`0` for rayon's default).
/// Every dcpo also runs the theorem suite, whose violations abort the scan;
/// results merge in index order, so output does not depend on `jobs`.
pub fn scan(cfg: &GenConfig, count: u64, query: &str, jobs: usize) -> Result<ScanSummary> {
    cfg.check()?;
    let q = PropertyQuery::parse(query)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::PreconditionFailed(e.to_string()))?;
    let outcomes: Vec<Result<Outcome>> =
        pool.install(|| (0..count).into_par_iter().map(|i| scan_one(cfg, &q, i)).collect());
    let mut s = ScanSummary { config: *cfg, query: query.to_owned(), count, rejected: 0, dcpos: 0, matches: Vec::new() };
    for o in outcomes {
        match o? {
            Outcome::Rejected => s.rejected += 1,
            Outcome::Checked { dcpo, hit } => {
                s.dcpos += u64::from(dcpo);
                s.matches.extend(hit);
            }
        }
    }
    Ok(s)
}
