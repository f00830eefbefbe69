//! Property deciders over ladder presentations.
//!
//! Quantifiers over directed sets go through sup bases. For a tail shape `E`
//! with supremum `y` and a directed `D` dominating it, `↓E ∩ ↓x ⊆ ↓D ∩ ↓x`,
//! so closure conditions checked on basis shapes cover every `D`. Only
//! suprema of tail shapes carry nontrivial conditions; every other point `x`
//! satisfies `x ≪_w x`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ladder::{DirectedShape, Elem, LadderPoset, SymSet};
use crate::relations::{self, fin_spec, fin_w_spec, wb_down, wwb_down, WitnessQuadruple};
use crate::topology::{self, ClosureCtx, TopologyTag};

/// Evidence attached to a failed (or, for searches, successful) check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Elem(Elem),
    Shape { at: Elem, shape: DirectedShape },
    Quadruple(WitnessQuadruple),
    Set(SymSet),
    Note(String),
}

impl Witness {
    pub fn render(&self, p: &LadderPoset) -> Value {
        match self {
            Witness::Elem(e) => json!(p.display(*e)),
            Witness::Shape { at, shape } => json!({"at": p.display(*at), "shape": p.display_shape(shape)}),
            Witness::Quadruple(q) => json!([p.display(q.x), p.display(q.y), p.display(q.z), p.display(q.u)]),
            Witness::Set(s) => json!(p.display_set(s)),
            Witness::Note(n) => json!(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    pub fn fail(w: Witness) -> Self {
        Verdict { holds: false, witness: Some(w) }
    }

    fn from_first(found: Option<Witness>) -> Self {
        match found {
            None => Self::pass(),
            Some(w) => Self::fail(w),
        }
    }
}

/// Points at which pointwise properties are evaluated: the representatives
/// plus every supremum of a tail shape.
fn scan_points(p: &LadderPoset) -> Vec<Elem> {
    let mut pts = p.samples();
    pts.extend(p.sups());
    pts.sort();
    pts.dedup();
    pts
}

fn require_dcpo(p: &LadderPoset, what: &str) -> Result<()> {
    if p.is_dcpo() { Ok(()) } else { Err(Error::NotADcpo(what.into())) }
}

// ---- exactness ----------------------------------------------------------

/// Some directed subset of `↡_w x` has supremum `x`.
pub fn exact_at(p: &LadderPoset, x: Elem) -> bool {
    let w = wwb_down(p, x).expect("valid element");
    if w.contains(x) {
        return true;
    }
    p.tail_masks_of(x).into_iter().any(|m| {
        crate::ladder::ladders_of_mask(m)
            .into_iter()
            .all(|i| w.ladder_part(i).is_all())
    })
}

pub fn is_exact(p: &LadderPoset) -> Result<Verdict> {
    require_dcpo(p, "exact")?;
    Ok(Verdict::from_first(
        p.sups().into_iter().find(|&x| !exact_at(p, x)).map(Witness::Elem),
    ))
}

// ---- quasiexactness -------------------------------------------------------

/// Intersection and directedness conditions for a hitting family with the
/// given condition sets.
fn family_ok(p: &LadderPoset, x: Elem, conds: &[SymSet]) -> bool {
    let up_x = p.up_of(x);
    conds.iter().all(|c| {
        // a member refutes `y` unless `c ⊆ ↓y`
        let escapes = p.upper_bounds(c).is_subset(&up_x);
        escapes && p.lower_ideal(c).is_some()
    })
}

fn conds(spec: relations::HittingSpec) -> Vec<SymSet> {
    spec.conditions.into_iter().map(|(_, c)| c).collect()
}

fn restrict(p: &LadderPoset, x: Elem, cs: Vec<SymSet>) -> Vec<SymSet> {
    let dx = p.down_of(x);
    cs.into_iter().map(|c| c.intersect(&dx)).collect()
}

pub fn quasiexact_at(p: &LadderPoset, x: Elem) -> bool {
    let cs = conds(fin_w_spec(p, x).expect("valid element"));
    family_ok(p, x, &cs)
}

/// Same test with the family restricted to subsets of `↓x`.
pub fn quasiexact_bl_at(p: &LadderPoset, x: Elem) -> bool {
    let cs = restrict(p, x, conds(fin_w_spec(p, x).expect("valid element")));
    family_ok(p, x, &cs)
}

/// `⋂_N ↑F_N(x)`: the top ladder of each tail shape contributes its upper
/// bounds.
pub(crate) fn chain_limit(p: &LadderPoset, x: Elem) -> Option<SymSet> {
    let mut limit = p.up_of(x);
    for m in p.tail_masks_of(x) {
        limit = limit.union(p.ladder_ub(p.top_ladder(m)?));
    }
    Some(limit)
}

/// The chain `F_N` (with `N` at the representatives) lies in `fin_w(x)`, is
/// descending for the Smyth preorder, and its limit `⋂ ↑F_N` is `↑x`.
fn chain_form_at(p: &LadderPoset, x: Elem, below_only: bool) -> bool {
    let n = p.uniformity_threshold();
    let dx = p.down_of(x);
    let Some(limit) = chain_limit(p, x) else { return false };
    let fam = |k: u64| -> Option<SymSet> {
        let mut f = p.set_of(topology::chain_member(p, x, k));
        if below_only {
            f = f.intersect(&dx);
        }
        if f.is_empty() { None } else { Some(f) }
    };
    let (Some(f0), Some(f1)) = (fam(n), fam(n + 1)) else { return false };
    let in_family = |f: &SymSet| relations::weak_way_below(p, f, x).unwrap_or(false);
    in_family(&f0)
        && in_family(&f1)
        && p.up_set(&f1).is_subset(&p.up_set(&f0))
        && limit == p.up_of(x)
}

pub fn is_quasiexact(p: &LadderPoset) -> Verdict {
    Verdict::from_first(
        scan_points(p).into_iter().find(|&x| !quasiexact_at(p, x)).map(Witness::Elem),
    )
}

/// The four equivalent forms: full family, family below `x`, and directed
/// subfamilies of each.
pub fn quasiexact_equiv_suite(p: &LadderPoset) -> Result<[bool; 4]> {
    require_dcpo(p, "quasiexact_equiv_suite")?;
    let pts = scan_points(p);
    Ok([
        pts.iter().all(|&x| quasiexact_at(p, x)),
        pts.iter().all(|&x| quasiexact_bl_at(p, x)),
        pts.iter().all(|&x| chain_form_at(p, x, false)),
        pts.iter().all(|&x| chain_form_at(p, x, true)),
    ])
}

// ---- quasicontinuity and continuity ---------------------------------------

pub fn quasicontinuous_at(p: &LadderPoset, x: Elem) -> bool {
    let cs = conds(fin_spec(p, x).expect("valid element"));
    family_ok(p, x, &cs)
}

pub fn is_quasicontinuous(p: &LadderPoset) -> Result<Verdict> {
    require_dcpo(p, "quasicontinuous")?;
    Ok(Verdict::from_first(
        scan_points(p).into_iter().find(|&x| !quasicontinuous_at(p, x)).map(Witness::Elem),
    ))
}

pub fn continuous_at(p: &LadderPoset, x: Elem) -> bool {
    p.directed_sup(&wb_down(p, x).expect("valid element")) == Some(x)
}

pub fn is_continuous(p: &LadderPoset) -> Result<Verdict> {
    require_dcpo(p, "continuous")?;
    Ok(Verdict::from_first(
        scan_points(p).into_iter().find(|&x| !continuous_at(p, x)).map(Witness::Elem),
    ))
}

// ---- meet continuity ------------------------------------------------------

fn meet_continuity_in(p: &LadderPoset, ctx: &ClosureCtx<'_>) -> Verdict {
    for y in p.sups() {
        for m in p.tail_masks_of(y) {
            let shape = DirectedShape::tails_of_mask(m);
            let e_down = p.shape_down(&shape);
            for x in p.samples() {
                if !p.leq(x, y) {
                    continue;
                }
                let a = e_down.intersect(&p.down_of(x));
                if !ctx.in_closure(x, &a) {
                    return Verdict::fail(Witness::Shape { at: x, shape });
                }
            }
        }
    }
    Verdict::pass()
}

fn ctx_horizon(p: &LadderPoset) -> u64 {
    2 * p.uniformity_threshold() + 2
}

pub fn meet_continuous(p: &LadderPoset) -> Result<Verdict> {
    let ctx = ClosureCtx::new(p, TopologyTag::Scott, ctx_horizon(p))?;
    Ok(meet_continuity_in(p, &ctx))
}

pub fn moderately_meet_continuous(p: &LadderPoset) -> Result<Verdict> {
    let ctx = ClosureCtx::new(p, TopologyTag::Wf, ctx_horizon(p))?;
    Ok(meet_continuity_in(p, &ctx))
}

pub fn weakly_increasing(p: &LadderPoset) -> Verdict {
    Verdict::from_first(relations::weakly_increasing(p).map(Witness::Quadruple))
}

/// Antichains of a ladder presentation have at most this many points: each
/// ladder is a chain.
pub fn antichain_bound(p: &LadderPoset) -> u64 {
    p.n_base() as u64 + p.n_ladders() as u64
}

// ---- reports --------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropValue {
    Decided(bool),
    /// Established by a bounded certificate audit.
    Audited(bool),
    NotApplicable,
}

impl PropValue {
    pub fn truth(self) -> Option<bool> {
        match self {
            PropValue::Decided(b) | PropValue::Audited(b) => Some(b),
            PropValue::NotApplicable => None,
        }
    }
}

impl Serialize for PropValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PropValue::Decided(b) => s.serialize_bool(*b),
            PropValue::Audited(b) => json!({"audited": b}).serialize(s),
            PropValue::NotApplicable => s.serialize_str("n/a"),
        }
    }
}

pub const PROPERTIES: [&str; 9] = [
    "dcpo",
    "exact",
    "quasiexact",
    "quasicontinuous",
    "continuous",
    "meet_continuous",
    "moderately_meet_continuous",
    "weakly_increasing",
    "wwb_topology_exists",
];

/// Accepts `weakly-increasing` as well as `weakly_increasing`.
pub fn normalize_property(name: &str) -> Result<&'static str> {
    let n = name.trim().replace('-', "_");
    PROPERTIES
        .iter()
        .copied()
        .find(|&p| p == n)
        .ok_or_else(|| Error::UnknownId(name.to_owned()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub schema: u32,
    pub poset: String,
    pub properties: BTreeMap<String, PropValue>,
    pub witnesses: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub anomalies: Vec<String>,
}

impl PropertyReport {
    pub fn new(poset: &str) -> Self {
        PropertyReport {
            schema: 1,
            poset: poset.to_owned(),
            properties: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            anomalies: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.properties.get(name).and_then(|v| v.truth())
    }

    pub fn set(&mut self, name: &str, v: PropValue, witness: Option<Value>) {
        self.properties.insert(name.to_owned(), v);
        if let Some(w) = witness {
            self.witnesses.insert(name.to_owned(), w);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("poset {}\n", self.poset);
        for (k, v) in &self.properties {
            let val = match v {
                PropValue::Decided(b) => b.to_string(),
                PropValue::Audited(b) => format!("{b} (audited)"),
                PropValue::NotApplicable => "n/a".into(),
            };
            out.push_str(&format!("  {k} = {val}"));
            if let Some(w) = self.witnesses.get(k) {
                out.push_str(&format!("  witness: {w}"));
            }
            out.push('\n');
        }
        for a in &self.anomalies {
            out.push_str(&format!("  anomaly: {a}\n"));
        }
        out
    }
}

fn record(r: &mut PropertyReport, p: &LadderPoset, name: &str, v: Result<Verdict>) {
    match v {
        Ok(v) => {
            let w = if v.holds { None } else { v.witness.map(|w| w.render(p)) };
            r.set(name, PropValue::Decided(v.holds), w);
        }
        Err(_) => r.set(name, PropValue::NotApplicable, None),
    }
}

/// Computes the selected properties (all of them for `None`). Properties
/// whose definition presupposes a dcpo are `n/a` on other posets.
pub fn build_report(p: &LadderPoset, select: Option<&[&str]>) -> PropertyReport {
    let want = |n: &str| select.is_none_or(|s| s.contains(&n));
    let mut r = PropertyReport::new(p.name());
    let dcpo = p.is_dcpo();
    if want("dcpo") {
        let w = p.dcpo_witness().map(|s| json!(p.display_shape(&s)));
        r.set("dcpo", PropValue::Decided(dcpo), w);
    }
    let qe = is_quasiexact(p);
    if want("exact") {
        record(&mut r, p, "exact", is_exact(p));
    }
    if want("quasiexact") {
        record(&mut r, p, "quasiexact", Ok(qe.clone()));
    }
    if want("quasicontinuous") {
        record(&mut r, p, "quasicontinuous", is_quasicontinuous(p));
    }
    if want("continuous") {
        record(&mut r, p, "continuous", is_continuous(p));
    }
    if want("meet_continuous") {
        let v = if dcpo { meet_continuous(p) } else { Err(Error::NotADcpo("meet_continuous".into())) };
        record(&mut r, p, "meet_continuous", v);
    }
    if want("moderately_meet_continuous") {
        let v = if dcpo {
            moderately_meet_continuous(p)
        } else {
            Err(Error::NotADcpo("moderately_meet_continuous".into()))
        };
        record(&mut r, p, "moderately_meet_continuous", v);
    }
    if want("weakly_increasing") {
        record(&mut r, p, "weakly_increasing", Ok(weakly_increasing(p)));
    }
    if want("wwb_topology_exists") {
        r.set("wwb_topology_exists", PropValue::Decided(topology::wwb_topology_exists(p)), None);
    }
    r
}

/// Full property vector plus every implication that holds by theorem. A
/// violation signals a bug and is returned as an error.
pub fn theorem_suite(p: &LadderPoset) -> Result<PropertyReport> {
    let mut r = build_report(p, None);
    let name = p.name().to_owned();
    let violation = |imp: &str| Error::ImplicationViolation { poset: name.clone(), implication: imp.into() };
    let g = |k: &str| r.get(k);
    let dcpo = g("dcpo") == Some(true);
    let qe = g("quasiexact") == Some(true);
    let wwb = g("wwb_topology_exists") == Some(true);
    if dcpo {
        let exact = g("exact") == Some(true);
        let qc = g("quasicontinuous") == Some(true);
        let mc = g("meet_continuous") == Some(true);
        let mmc = g("moderately_meet_continuous") == Some(true);
        let wi = g("weakly_increasing") == Some(true);
        let cont = g("continuous") == Some(true);
        if !qe {
            return Err(violation("ladder dcpo => quasiexact"));
        }
        if exact && !qe {
            return Err(violation("exact => quasiexact"));
        }
        if qc && !qe {
            return Err(violation("quasicontinuous => quasiexact"));
        }
        if mmc && qe && !(exact && mc) {
            return Err(violation("mmc & quasiexact => exact & meet_continuous"));
        }
        if mmc && qe && wi && !cont {
            return Err(violation("mmc & quasiexact & weakly_increasing => continuous"));
        }
        let forms = quasiexact_equiv_suite(p)?;
        if forms.iter().any(|&f| f != forms[0]) {
            return Err(violation("four quasiexact forms agree"));
        }
        if exact && !topology::inclusion_check(p, TopologyTag::Scott, TopologyTag::Wf)?.holds {
            return Err(violation("exact => scott <= wf"));
        }
        if mmc && qe && !wwb {
            r.anomalies
                .push("moderately meet continuous and quasiexact without a wwb topology".into());
        }
        if mmc && qe && wwb {
            for (a, b) in [
                (TopologyTag::Scott, TopologyTag::Wwb),
                (TopologyTag::Wf, TopologyTag::Wwb),
            ] {
                if !topology::inclusion_check(p, a, b)?.holds {
                    return Err(violation(&format!("mmc & quasiexact => {} <= {}", a.name(), b.name())));
                }
            }
        }
    }
    if qe && wwb && !topology::inclusion_check(p, TopologyTag::Wwb, TopologyTag::Wf)?.holds {
        return Err(violation("wwb <= wf"));
    }
    Ok(r)
}
