//! Johnstone's dcpo `ℕ × (ℕ ∪ {ω})` as an oracle presentation.
//!
//! Order: `(j, k) ≤ (j, k')` for `k ≤ k'` (with `ω` on top of its column),
//! and `(j, k) ≤ (b, ω)` whenever `k ≤ b`. Infinitely many columns put it out
//! of reach of ladder presentations, so claims about it are audited on
//! bounded grids and carried by explicit certificates.

use std::fmt;

use serde_json::json;

use crate::checkers::{PropValue, PropertyReport};
use crate::error::{Error, Result};
use crate::finite::for_each_combination;

/// Capability contract for hand-coded infinite presentations.
pub trait OraclePresentation {
    type Point: Copy + Ord + fmt::Debug;
    type Shape: Clone + fmt::Debug;

    fn name(&self) -> &str;
    fn leq(&self, a: Self::Point, b: Self::Point) -> bool;
    /// Points with every parameter at most `bound`.
    fn grid(&self, bound: u64) -> Vec<Self::Point>;
    /// Declared sup basis of `y`.
    fn sup_basis(&self, y: Self::Point) -> Vec<Self::Shape>;
    /// Members of `shape` with parameters at most `bound`.
    fn shape_members(&self, shape: &Self::Shape, bound: u64) -> Vec<Self::Point>;
    /// Parameter beyond which order predicates along a shape are constant.
    fn uniformity_bound(&self) -> u64;
}

/// `(column, level)`; level `None` is `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JPoint {
    pub col: u64,
    pub level: Option<u64>,
}

impl JPoint {
    pub fn fin(col: u64, level: u64) -> Self {
        JPoint { col, level: Some(level) }
    }

    pub fn omega(col: u64) -> Self {
        JPoint { col, level: None }
    }

    fn max_coordinate(self) -> u64 {
        self.col.max(self.level.unwrap_or(0))
    }
}

impl fmt::Display for JPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            Some(k) => write!(f, "({},{})", self.col, k),
            None => write!(f, "({},w)", self.col),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JShape {
    Max(JPoint),
    /// Finite levels of one column.
    Column(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Johnstone;

impl OraclePresentation for Johnstone {
    type Point = JPoint;
    type Shape = JShape;

    fn name(&self) -> &str {
        "J"
    }

    fn leq(&self, a: JPoint, b: JPoint) -> bool {
        match (a.level, b.level) {
            (Some(k), Some(k2)) => a.col == b.col && k <= k2,
            (None, Some(_)) => false,
            (None, None) => a.col == b.col,
            (Some(k), None) => a.col == b.col || k <= b.col,
        }
    }

    fn grid(&self, bound: u64) -> Vec<JPoint> {
        let mut out = Vec::new();
        for c in 0..=bound {
            out.extend((0..=bound).map(|k| JPoint::fin(c, k)));
            out.push(JPoint::omega(c));
        }
        out
    }

    fn sup_basis(&self, y: JPoint) -> Vec<JShape> {
        match y.level {
            Some(_) => vec![JShape::Max(y)],
            None => vec![JShape::Max(y), JShape::Column(y.col)],
        }
    }

    fn shape_members(&self, shape: &JShape, bound: u64) -> Vec<JPoint> {
        match *shape {
            JShape::Max(p) => vec![p],
            JShape::Column(c) => (0..=bound).map(|k| JPoint::fin(c, k)).collect(),
        }
    }

    fn uniformity_bound(&self) -> u64 {
        0
    }
}

/// Audit bounds: `m` for grids, `s` for the size of finite sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub m: u64,
    pub s: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { m: 8, s: 3 }
    }
}

/// Claim-specific evidence checked by [`Johnstone::audit_certificate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Refutes `fin(anchor) ≠ ∅`: for each finite `F`, the column `c(F)` has
    /// supremum `(c, ω) ≥ anchor` and its tail misses `↑F`.
    ColumnEscape { anchor: JPoint },
    /// `{(m, k)}` for growing `k` is a chain in `fin_w((m, ω))` whose
    /// up-sets intersect to `↑(m, ω)`.
    ColumnChain,
}

impl Johnstone {
    /// `g ≪_w x` from the declared basis; a column tail meets `↑g` iff `g`
    /// lies below some finite level of that column.
    pub fn wwb(&self, g: &[JPoint], x: JPoint) -> bool {
        self.sup_basis(x).iter().all(|s| match *s {
            JShape::Max(y) => g.iter().any(|&h| self.leq(h, y)),
            JShape::Column(c) => g.iter().any(|h| h.col == c && h.level.is_some()),
        })
    }

    /// Escape column for `F` relative to `anchor`.
    pub fn escape_column(anchor: JPoint, f: &[JPoint]) -> u64 {
        let m = anchor.level.unwrap_or(anchor.col);
        let top = f.iter().map(|p| p.max_coordinate()).max().unwrap_or(0);
        m.max(top + 1).max(anchor.col + 1)
    }

    /// Exhaustive partial-order audit on the grid with bound `b`.
    pub fn audit_partial_order(&self, b: u64) -> Result<()> {
        if b < 2 {
            return Err(Error::BoundsTooSmall(format!("grid bound {b} < 2")));
        }
        let g = self.grid(b);
        let n = g.len();
        let leq: Vec<Vec<bool>> = g.iter().map(|&x| g.iter().map(|&y| self.leq(x, y)).collect()).collect();
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::CertificateRejected(format!("not reflexive at {}", g[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::CertificateRejected(format!("{} and {} collide", g[i], g[j])));
                }
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j][k] && !leq[i][k] {
                        return Err(Error::CertificateRejected(format!(
                            "not transitive at {} <= {} <= {}",
                            g[i], g[j], g[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Declared shapes are directed with the right supremum, and every
    /// directed subset of size at most two, or column prefix, of the grid
    /// dominates a declared shape of its supremum.
    pub fn audit_sup_basis(&self, b: u64) -> Result<()> {
        let g = self.grid(b);
        let lub = |d: &[JPoint]| -> Option<JPoint> {
            let ubs: Vec<JPoint> = g.iter().copied().filter(|&u| d.iter().all(|&x| self.leq(x, u))).collect();
            ubs.iter().copied().find(|&c| ubs.iter().all(|&u| self.leq(c, u)))
        };
        for &y in &g {
            for s in self.sup_basis(y) {
                if let JShape::Column(c) = s {
                    // the column's upper bounds in the grid: (c, ω) and (b', ω) for no b'
                    let members = self.shape_members(&s, b);
                    let ubs: Vec<JPoint> = g
                        .iter()
                        .copied()
                        .filter(|&u| (0..=2 * b + 2).all(|k| self.leq(JPoint::fin(c, k), u)))
                        .collect();
                    if ubs != vec![y] || members.windows(2).any(|w| !self.leq(w[0], w[1])) {
                        return Err(Error::CertificateRejected(format!("column {c} does not converge to {y}")));
                    }
                }
            }
        }
        let dominated = |d: &[JPoint], y: JPoint| {
            self.sup_basis(y).iter().any(|s| {
                self.shape_members(s, b)
                    .iter()
                    .all(|&e| d.iter().any(|&x| self.leq(e, x)))
            })
        };
        for i in 0..g.len() {
            for j in i..g.len() {
                let d = [g[i], g[j]];
                let directed = d.iter().any(|&u| d.iter().all(|&x| self.leq(x, u)));
                if !directed {
                    continue;
                }
                let y = lub(&d).expect("finite directed sets have a maximum");
                if !dominated(&d, y) {
                    return Err(Error::CertificateRejected(format!("{:?} escapes the basis", d)));
                }
            }
        }
        Ok(())
    }

    /// `↡_w (m, n) = ↓(m, n)` and `↡_w (m, ω)` = finite levels of column `m`,
    /// on the grid.
    pub fn audit_wwb_down(&self, b: u64) -> Result<()> {
        let g = self.grid(b);
        for &x in &g {
            for &h in &g {
                let got = self.wwb(&[h], x);
                let want = match x.level {
                    Some(_) => self.leq(h, x),
                    None => h.col == x.col && h.level.is_some(),
                };
                if got != want {
                    return Err(Error::CertificateRejected(format!("{h} vs {x}: wwb is {got}")));
                }
            }
        }
        Ok(())
    }

    /// Every grid point is the supremum of a declared shape inside its
    /// `↡_w`.
    pub fn audit_exact(&self, b: u64) -> Result<()> {
        for x in self.grid(b) {
            let ok = self.sup_basis(x).iter().any(|s| match *s {
                JShape::Max(y) => self.wwb(&[y], x),
                JShape::Column(_) => self.shape_members(s, b).iter().all(|&e| self.wwb(&[e], x)),
            });
            if !ok {
                return Err(Error::CertificateRejected(format!("not exact at {x}")));
            }
        }
        Ok(())
    }

    /// Weak increasingness on the grid, in `O(n³)` via a precomputed table.
    pub fn audit_weakly_increasing(&self, b: u64) -> Result<()> {
        let g = self.grid(b);
        let n = g.len();
        let w: Vec<Vec<bool>> = g.iter().map(|&x| g.iter().map(|&y| self.wwb(&[x], y)).collect()).collect();
        let has_above: Vec<bool> = (0..n).map(|z| w[z].iter().any(|&t| t)).collect();
        for x in 0..n {
            // points y with x ≪_w y, and everything above them
            let mut reach = vec![false; n];
            for y in 0..n {
                if w[x][y] {
                    for z in 0..n {
                        if self.leq(g[y], g[z]) {
                            reach[z] = true;
                        }
                    }
                }
            }
            for z in 0..n {
                if reach[z] && has_above[z] && !w[x][z] {
                    return Err(Error::CertificateRejected(format!(
                        "{} reaches {} without being weakly way below it",
                        g[x], g[z]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks a certificate over every `F` with coordinates at most `bounds.m`
    /// and `|F| <= bounds.s`.
    pub fn audit_certificate(&self, cert: Certificate, bounds: Bounds) -> Result<()> {
        if bounds.m < 1 || bounds.s < 1 {
            return Err(Error::BoundsTooSmall(format!("{bounds:?}")));
        }
        let g = self.grid(bounds.m);
        match cert {
            Certificate::ColumnEscape { anchor } => {
                for k in 1..=bounds.s {
                    let mut bad: Option<String> = None;
                    for_each_combination(g.len(), k, |idx| {
                        let f: Vec<JPoint> = idx.iter().map(|&i| g[i]).collect();
                        let c = Self::escape_column(anchor, &f);
                        let sup = JPoint::omega(c);
                        let declared = self.sup_basis(sup).contains(&JShape::Column(c));
                        // beyond level c + m no new comparisons appear: F has no point in column c
                        let horizon = c + bounds.m + 1;
                        let missed = (0..=horizon)
                            .all(|lv| f.iter().all(|&h| !self.leq(h, JPoint::fin(c, lv))))
                            && f.iter().all(|h| h.col != c);
                        if !(declared && self.leq(anchor, sup) && missed) {
                            bad = Some(format!("{f:?} with column {c}"));
                            return true;
                        }
                        false
                    });
                    if let Some(b) = bad {
                        return Err(Error::CertificateRejected(b));
                    }
                }
                Ok(())
            }
            Certificate::ColumnChain => {
                let big = bounds.m + 1;
                for m in 0..=bounds.m {
                    let x = JPoint::omega(m);
                    for k in 0..=big {
                        if !self.wwb(&[JPoint::fin(m, k)], x) {
                            return Err(Error::CertificateRejected(format!("({m},{k}) not in fin_w")));
                        }
                    }
                    for &y in &g {
                        let in_all = (0..=big).all(|k| self.leq(JPoint::fin(m, k), y));
                        if in_all != self.leq(x, y) {
                            return Err(Error::CertificateRejected(format!("chain limit differs at {y}")));
                        }
                    }
                }
                for &x in &g {
                    if x.level.is_some() && !self.wwb(&[x], x) {
                        return Err(Error::CertificateRejected(format!("{x} not weakly way below itself")));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Exact description of `↡_w x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JRegion {
    /// `↓x` for a finite-level point.
    Down(JPoint),
    /// Finite levels of one column.
    Column(u64),
}

impl JRegion {
    pub fn contains(&self, p: JPoint) -> bool {
        match *self {
            JRegion::Down(x) => Johnstone.leq(p, x),
            JRegion::Column(c) => p.col == c && p.level.is_some(),
        }
    }
}

impl fmt::Display for JRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JRegion::Down(x) => write!(f, "down{x}"),
            JRegion::Column(c) => write!(f, "column {c}"),
        }
    }
}

pub fn johnstone_wwb_down(x: JPoint) -> JRegion {
    match x.level {
        Some(_) => JRegion::Down(x),
        None => JRegion::Column(x.col),
    }
}

/// Grid bound used for the exhaustive order audit.
pub const ORDER_GRID: u64 = 12;

impl Johnstone {
    /// Runs every audit and reports the outcomes as audited values. Audit
    /// failures propagate as errors rather than turning into `false`.
    pub fn report(&self, bounds: Bounds) -> Result<PropertyReport> {
        let b = ORDER_GRID.max(bounds.m);
        self.audit_partial_order(b)?;
        self.audit_sup_basis(b)?;
        self.audit_wwb_down(b)?;
        self.audit_exact(b)?;
        self.audit_weakly_increasing(b)?;
        self.audit_certificate(Certificate::ColumnChain, bounds)?;
        let anchor = JPoint::fin(0, 0);
        self.audit_certificate(Certificate::ColumnEscape { anchor }, bounds)?;
        let mut r = PropertyReport::new(self.name());
        let t = PropValue::Audited(true);
        r.set("dcpo", t, None);
        r.set("exact", t, None);
        r.set("quasiexact", t, None);
        r.set("weakly_increasing", t, None);
        let escape = json!({"anchor": anchor.to_string(), "certificate": "column escape", "m": bounds.m, "s": bounds.s});
        r.set("quasicontinuous", PropValue::Audited(false), Some(escape.clone()));
        // the escape certificate with |F| = 1 also empties the way-below set
        r.set("continuous", PropValue::Audited(false), Some(escape));
        for n in ["meet_continuous", "moderately_meet_continuous", "wwb_topology_exists"] {
            r.set(n, PropValue::NotApplicable, None);
        }
        Ok(r)
    }
}
