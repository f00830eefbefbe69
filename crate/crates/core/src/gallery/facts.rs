//! Registry of expected facts about the gallery and their audit.
//!
//! A fact pairs a target with an atom and an expected boolean. Atoms:
//!
//! * a property name from [`PROPERTIES`](crate::checkers::PROPERTIES);
//! * `leq(a; b)`, `wwb(G; x)`, `wb(G; x)` with `G` a set literal or element;
//! * `wwb_down(x) == S`, `wb_down(x) == S`, `wwb_up(G) == S`, `wb_up(G) == S`;
//! * `wi_witness == (x, y, z, u)`;
//! * `wwb_iff_meets(x; L1 L2 ..; depth; size)`: over all finite `F` of the
//!   given size on the depth grid, `F ≪_w x` iff `F` meets every listed ladder;
//! * `equiv_forms`, `scott_in_wf`, `scott_in_wwb`, `wwb_eq_wf`;
//! * on products: `quasiexact`, `has_bottom`, `same_vector(P)`;
//! * on `J`: `partial_order`, `sup_basis`, `wwb_regions`, `wwb_down(p) == R`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::johnstone::{johnstone_wwb_down, Bounds, Certificate, JPoint, Johnstone, OraclePresentation, ORDER_GRID};
use super::product::{BottomPolicy, ProductPoset};
use super::{ladder_fixture, LADDER_FIXTURES};
use crate::checkers::{self, normalize_property};
use crate::error::{Error, Result};
use crate::finite::for_each_combination;
use crate::ladder::{LadderPoset, SymSet};
use crate::relations;
use crate::topology::{inclusion_check, TopologyTag};

const REGISTRY: &str = include_str!("../../data/facts.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub poset: String,
    pub property: String,
    pub expected: bool,
    /// Certificate to audit before reading the property (oracle targets).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    pub note: String,
}

/// Parses a registry and rejects facts without a note.
pub fn load_registry(text: &str) -> Result<Vec<Fact>> {
    let facts: Vec<Fact> =
        serde_json::from_str(text).map_err(|e| Error::PreconditionFailed(format!("fact registry: {e}")))?;
    if let Some(f) = facts.iter().find(|f| f.note.trim().is_empty()) {
        return Err(Error::PreconditionFailed(format!("fact `{}` on {} has no note", f.property, f.poset)));
    }
    Ok(facts)
}

/// The built-in registry.
pub fn registry() -> Vec<Fact> {
    load_registry(REGISTRY).expect("built-in registry parses")
}

pub const PRODUCT_TARGETS: [&str; 2] = ["P1xP3", "onexP2"];

/// Every name a fact may target.
pub fn target_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = LADDER_FIXTURES.to_vec();
    v.push("J");
    v.extend(PRODUCT_TARGETS);
    v
}

enum Target {
    Ladder(LadderPoset),
    Product(ProductPoset),
    Oracle(Johnstone),
}

fn resolve(name: &str) -> Result<Target> {
    match name {
        "J" => Ok(Target::Oracle(Johnstone)),
        "P1xP3" => Ok(Target::Product(ProductPoset::new(
            ladder_fixture("P1")?,
            ladder_fixture("P3")?,
            BottomPolicy::Waive,
        )?)),
        "onexP2" => Ok(Target::Product(ProductPoset::new(
            ladder_fixture("one")?,
            ladder_fixture("P2")?,
            BottomPolicy::Waive,
        )?)),
        n => ladder_fixture(n).map(Target::Ladder),
    }
}

/// `head(args) == rhs` split into its parts.
struct Atom<'a> {
    head: &'a str,
    args: Vec<&'a str>,
    rhs: Option<&'a str>,
}

fn split_atom(text: &str) -> Result<Atom<'_>> {
    let bad = || Error::PreconditionFailed(format!("malformed fact atom `{text}`"));
    let (lhs, rhs) = match text.split_once("==") {
        Some((l, r)) => (l.trim(), Some(r.trim())),
        None => (text.trim(), None),
    };
    match lhs.find('(') {
        None => Ok(Atom { head: lhs, args: Vec::new(), rhs }),
        Some(open) => {
            let inner = lhs[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            Ok(Atom { head: lhs[..open].trim(), args: inner.split(';').map(str::trim).collect(), rhs })
        }
    }
}

fn unknown_atom(text: &str, target: &str) -> Error {
    Error::PreconditionFailed(format!("atom `{text}` is not defined on {target}"))
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn set_arg(p: &LadderPoset, s: &str) -> Result<SymSet> {
    if s.starts_with('{') {
        p.parse_set(s)
    } else {
        Ok(p.singleton(p.parse_elem(s)?))
    }
}

fn arity(a: &Atom<'_>, n: usize, text: &str) -> Result<()> {
    if a.args.len() == n {
        Ok(())
    } else {
        Err(Error::PreconditionFailed(format!("`{text}` expects {n} arguments")))
    }
}

fn eval_ladder(p: &LadderPoset, text: &str) -> Result<bool> {
    let a = split_atom(text)?;
    let rhs_set = |r: Option<&str>| -> Result<SymSet> {
        p.parse_set(r.ok_or_else(|| unknown_atom(text, p.name()))?)
    };
    match a.head {
        "leq" => {
            arity(&a, 2, text)?;
            p.try_leq(p.parse_elem(a.args[0])?, p.parse_elem(a.args[1])?)
        }
        "wwb" | "wb" => {
            arity(&a, 2, text)?;
            let g = set_arg(p, a.args[0])?;
            let x = p.parse_elem(a.args[1])?;
            if a.head == "wwb" { relations::weak_way_below(p, &g, x) } else { relations::way_below(p, &g, x) }
        }
        "wwb_down" | "wb_down" => {
            arity(&a, 1, text)?;
            let x = p.parse_elem(a.args[0])?;
            let got = if a.head == "wwb_down" { relations::wwb_down(p, x)? } else { relations::wb_down(p, x)? };
            Ok(got == rhs_set(a.rhs)?)
        }
        "wwb_up" | "wb_up" => {
            arity(&a, 1, text)?;
            let g = set_arg(p, a.args[0])?;
            let got = if a.head == "wwb_up" { relations::wwb_up(p, &g)? } else { relations::wb_up(p, &g)? };
            Ok(got == rhs_set(a.rhs)?)
        }
        "wi_witness" => {
            let want = squash(a.rhs.ok_or_else(|| unknown_atom(text, p.name()))?);
            Ok(relations::weakly_increasing(p).is_some_and(|q| {
                let got = format!("({},{},{},{})", p.display(q.x), p.display(q.y), p.display(q.z), p.display(q.u));
                got == want
            }))
        }
        "wwb_iff_meets" => {
            arity(&a, 4, text)?;
            let x = p.parse_elem(a.args[0])?;
            let ladders = a.args[1]
                .split_whitespace()
                .map(|id| p.ladder_index(id).ok_or_else(|| Error::UnknownId(id.to_owned())))
                .collect::<Result<Vec<u32>>>()?;
            let depth: u64 = a.args[2].parse().map_err(|_| unknown_atom(text, p.name()))?;
            let size: usize = a.args[3].parse().map_err(|_| unknown_atom(text, p.name()))?;
            let grid = p.elems_upto(depth);
            let mut ok = true;
            for k in 1..=size {
                for_each_combination(grid.len(), k, |idx| {
                    let f = p.set_of(idx.iter().map(|&i| grid[i]));
                    let meets = ladders.iter().all(|&l| f.meets(&p.ladder_set(l)));
                    if relations::weak_way_below(p, &f, x).unwrap_or(false) != meets {
                        ok = false;
                        return true;
                    }
                    false
                });
            }
            Ok(ok)
        }
        "equiv_forms" => {
            let f = checkers::quasiexact_equiv_suite(p)?;
            Ok(f.iter().all(|&b| b == f[0]))
        }
        "scott_in_wf" => Ok(inclusion_check(p, TopologyTag::Scott, TopologyTag::Wf)?.holds),
        "scott_in_wwb" => Ok(inclusion_check(p, TopologyTag::Scott, TopologyTag::Wwb)?.holds),
        "wwb_eq_wf" => Ok(inclusion_check(p, TopologyTag::Wwb, TopologyTag::Wf)?.holds
            && inclusion_check(p, TopologyTag::Wf, TopologyTag::Wwb)?.holds),
        head if a.args.is_empty() && a.rhs.is_none() => {
            let name = normalize_property(head)?;
            checkers::build_report(p, Some(&[name]))
                .get(name)
                .ok_or_else(|| Error::NotADcpo(name.into()))
        }
        _ => Err(unknown_atom(text, p.name())),
    }
}

fn eval_product(q: &ProductPoset, text: &str) -> Result<bool> {
    let a = split_atom(text)?;
    match a.head {
        "quasiexact" => Ok(q.is_quasiexact()?.holds),
        "has_bottom" => Ok(q.bottom().is_some()),
        "same_vector" => {
            arity(&a, 1, text)?;
            super::product::flattened_matches(q, &ladder_fixture(a.args[0])?)
        }
        _ => Err(unknown_atom(text, q.name())),
    }
}

/// `(m,n)` or `(m,w)`.
pub fn parse_jpoint(s: &str) -> Result<JPoint> {
    let bad = || Error::UnknownElement(s.to_owned());
    let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (c, l) = inner.split_once(',').ok_or_else(bad)?;
    let col: u64 = c.trim().parse().map_err(|_| bad())?;
    match l.trim() {
        "w" | "ω" => Ok(JPoint::omega(col)),
        n => Ok(JPoint::fin(col, n.parse().map_err(|_| bad())?)),
    }
}

fn eval_oracle(j: &Johnstone, fact: &Fact, bounds: Bounds) -> Result<bool> {
    let text = fact.property.as_str();
    match fact.certificate.as_deref() {
        None => {}
        Some("column_escape") => j.audit_certificate(
            Certificate::ColumnEscape { anchor: JPoint::fin(0, 0) },
            bounds,
        )?,
        Some("column_chain") => j.audit_certificate(Certificate::ColumnChain, bounds)?,
        Some(other) => return Err(Error::CertificateRejected(format!("unknown certificate `{other}`"))),
    }
    let a = split_atom(text)?;
    let grid = ORDER_GRID.max(bounds.m);
    match a.head {
        "leq" => {
            arity(&a, 2, text)?;
            Ok(j.leq(parse_jpoint(a.args[0])?, parse_jpoint(a.args[1])?))
        }
        "partial_order" => j.audit_partial_order(grid).map(|_| true),
        "sup_basis" => j.audit_sup_basis(grid).map(|_| true),
        "wwb_regions" => j.audit_wwb_down(grid).map(|_| true),
        "wwb_down" => {
            arity(&a, 1, text)?;
            let want = squash(a.rhs.ok_or_else(|| unknown_atom(text, "J"))?);
            Ok(squash(&johnstone_wwb_down(parse_jpoint(a.args[0])?).to_string()) == want)
        }
        head if a.args.is_empty() && a.rhs.is_none() => {
            let name = normalize_property(head)?;
            j.report(bounds)?
                .get(name)
                .ok_or_else(|| unknown_atom(text, j.name()))
        }
        _ => Err(unknown_atom(text, j.name())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactOutcome {
    pub fact: Fact,
    /// The computed value, or the error that prevented computing it.
    pub actual: std::result::Result<bool, String>,
}

impl FactOutcome {
    pub fn passed(&self) -> bool {
        self.actual == Ok(self.fact.expected)
    }

    pub fn label(&self) -> String {
        format!("{}: {}", self.fact.poset, self.fact.property)
    }

    pub fn line(&self) -> String {
        let got = match &self.actual {
            Ok(b) => b.to_string(),
            Err(e) => format!("error ({e})"),
        };
        let status = if self.passed() { "ok" } else { "MISMATCH" };
        format!("{status:8} {} expected {} got {got}", self.label(), self.fact.expected)
    }
}

/// Runs the checker behind one fact. Errors (bad atoms, rejected
/// certificates) are captured in the outcome and count as mismatches.
pub fn audit_fact(fact: &Fact, bounds: Bounds) -> FactOutcome {
    let actual = resolve(&fact.poset).and_then(|t| match t {
        Target::Ladder(p) => eval_ladder(&p, &fact.property),
        Target::Product(q) => eval_product(&q, &fact.property),
        Target::Oracle(j) => eval_oracle(&j, fact, bounds),
    });
    FactOutcome { fact: fact.clone(), actual: actual.map_err(|e| e.to_string()) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub outcomes: Vec<FactOutcome>,
}

impl SuiteReport {
    pub fn failures(&self) -> Vec<String> {
        self.outcomes.iter().filter(|o| !o.passed()).map(FactOutcome::label).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s: String = self.outcomes.iter().map(|o| o.line() + "\n").collect();
        let bad = self.failures().len();
        s.push_str(&format!("{} facts, {} mismatches\n", self.outcomes.len(), bad));
        s
    }
}

/// Audits `facts` (restricted to one target if `only` is set) in parallel;
/// outcomes keep registry order.
pub fn evaluate(facts: &[Fact], only: Option<&str>, bounds: Bounds) -> Result<SuiteReport> {
    if let Some(name) = only {
        if !target_names().contains(&name) {
            return Err(Error::UnknownFixture(name.to_owned()));
        }
    }
    let outcomes = facts
        .par_iter()
        .filter(|f| only.is_none_or(|n| f.poset == n))
        .map(|f| audit_fact(f, bounds))
        .collect();
    Ok(SuiteReport { outcomes })
}

/// The built-in registry; any mismatch is a [`Error::SuiteFailure`].
pub fn run_fact_suite(only: Option<&str>, bounds: Bounds) -> Result<SuiteReport> {
    let r = evaluate(&registry(), only, bounds)?;
    let bad = r.failures();
    if bad.is_empty() { Ok(r) } else { Err(Error::SuiteFailure(bad)) }
}
