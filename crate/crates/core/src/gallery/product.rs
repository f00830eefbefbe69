//! Binary products of ladder presentations.
//!
//! Sets are handled as rectangles and the sup basis of `(x, y)` is the set of
//! products `E1 × E2` of basis shapes. A directed `D` with supremum `(x, y)`
//! has directed projections; each dominates a factor shape, and directedness
//! of `D` lets the two witnesses be joined, so `D` dominates the product.

use crate::checkers::{self, chain_limit, Verdict, Witness};
use crate::error::{Error, Result};
use crate::ladder::{DirectedShape, Elem, LadderPoset, LadderPresentation, RelKind, RelStmt, SymSet};
use crate::topology::chain_member;

/// Whether a factor without a bottom is an error or an accepted exception.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BottomPolicy {
    Require,
    /// Finitely many factors may lack a bottom; with two factors that is
    /// always the case.
    Waive,
}

pub type Pair = (Elem, Elem);

#[derive(Debug, Clone)]
pub struct ProductPoset {
    left: LadderPoset,
    right: LadderPoset,
    name: String,
}

impl ProductPoset {
    pub fn new(left: LadderPoset, right: LadderPoset, policy: BottomPolicy) -> Result<Self> {
        if policy == BottomPolicy::Require {
            for f in [&left, &right] {
                if f.bottom().is_none() {
                    return Err(Error::MissingBottom(f.name().to_owned()));
                }
            }
        }
        let name = format!("{}x{}", left.name(), right.name());
        Ok(ProductPoset { left, right, name })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn left(&self) -> &LadderPoset {
        &self.left
    }

    pub fn right(&self) -> &LadderPoset {
        &self.right
    }

    pub fn display(&self, (x, y): Pair) -> String {
        format!("({}, {})", self.left.display(x), self.right.display(y))
    }

    pub fn leq(&self, a: Pair, b: Pair) -> bool {
        self.left.leq(a.0, b.0) && self.right.leq(a.1, b.1)
    }

    pub fn bottom(&self) -> Option<Pair> {
        Some((self.left.bottom()?, self.right.bottom()?))
    }

    pub fn is_dcpo(&self) -> bool {
        self.left.is_dcpo() && self.right.is_dcpo()
    }

    pub fn sup_basis(&self, (x, y): Pair) -> Result<Vec<(DirectedShape, DirectedShape)>> {
        let l = self.left.sup_basis(x)?;
        let r = self.right.sup_basis(y)?;
        Ok(l.iter().flat_map(|a| r.iter().map(move |b| (a.clone(), b.clone()))).collect())
    }

    /// `↓(E1 × E2)` as a rectangle.
    pub fn shape_down(&self, s: &(DirectedShape, DirectedShape)) -> (SymSet, SymSet) {
        (self.left.shape_down(&s.0), self.right.shape_down(&s.1))
    }

    /// Finite `G ≪_w (x, y)`: every product shape meets `↑G`.
    pub fn weak_way_below(&self, g: &[Pair], x: Pair) -> Result<bool> {
        if g.is_empty() {
            return Err(Error::EmptySet);
        }
        for &(a, b) in g {
            self.left.check_elem(a)?;
            self.right.check_elem(b)?;
        }
        Ok(self.sup_basis(x)?.iter().all(|s| {
            let (d1, d2) = self.shape_down(s);
            g.iter().any(|&(a, b)| d1.contains(a) && d2.contains(b))
        }))
    }

    fn chain(&self, (x, y): Pair, n: u64) -> Vec<Pair> {
        let l = chain_member(&self.left, x, n);
        let r = chain_member(&self.right, y, n);
        l.iter().flat_map(|&a| r.iter().map(move |&b| (a, b))).collect()
    }

    /// `F_N = F_N(x) × F_N(y)` lies in `fin_w((x, y))`, descends in the Smyth
    /// preorder, and its up-sets intersect to `↑(x, y)`. Up-sets of
    /// rectangles are rectangles, so the limit splits by factor.
    pub fn quasiexact_at(&self, x: Pair) -> bool {
        let n = self.left.uniformity_threshold().max(self.right.uniformity_threshold());
        let f0 = self.chain(x, n);
        let f1 = self.chain(x, n + 1);
        let member = |f: &[Pair]| self.weak_way_below(f, x).unwrap_or(false);
        let descends = f1.iter().all(|&b| f0.iter().any(|&a| self.leq(a, b)));
        let limit_ok = chain_limit(&self.left, x.0).is_some_and(|l| l == self.left.up_of(x.0))
            && chain_limit(&self.right, x.1).is_some_and(|r| r == self.right.up_of(x.1));
        member(&f0) && member(&f1) && descends && limit_ok
    }

    fn scan_points(&self) -> Vec<Pair> {
        let pts = |p: &LadderPoset| {
            let mut v = p.samples();
            v.extend(p.sups());
            v.sort();
            v.dedup();
            v
        };
        let l = pts(&self.left);
        let r = pts(&self.right);
        l.iter().flat_map(|&a| r.iter().map(move |&b| (a, b))).collect()
    }

    pub fn is_quasiexact(&self) -> Result<Verdict> {
        if !self.is_dcpo() {
            return Err(Error::NotADcpo(self.name.clone()));
        }
        Ok(match self.scan_points().into_iter().find(|&x| !self.quasiexact_at(x)) {
            None => Verdict::pass(),
            Some(x) => Verdict::fail(Witness::Note(self.display(x))),
        })
    }

    /// Ladder presentation of the product, available when one factor has no
    /// ladders. Node `(u, v)` is named `u_v`.
    pub fn flatten(&self) -> Result<LadderPoset> {
        let left_finite = self.left.n_ladders() == 0;
        if !left_finite && self.right.n_ladders() != 0 {
            return Err(Error::PreconditionFailed(
                "flattening needs a factor without ladders".into(),
            ));
        }
        let (fin, lad) = if left_finite { (&self.left, &self.right) } else { (&self.right, &self.left) };
        let join = |a: &str, u: &str| if left_finite { format!("{a}_{u}") } else { format!("{u}_{a}") };
        let node = |u: Elem| match u {
            Elem::Base(i) => (lad.base_ids()[i as usize].as_str(), true),
            Elem::Lad(i, _) => (lad.ladder_ids()[i as usize].as_str(), false),
        };
        let mut pres = LadderPresentation { name: self.name.clone(), ..Default::default() };
        for a in fin.base_ids() {
            pres.base.extend(lad.base_ids().iter().map(|u| join(a, u)));
            pres.ladders.extend(lad.ladder_ids().iter().map(|u| join(a, u)));
        }
        let rules = lad.closed_rules();
        for i in 0..fin.n_base() {
            for j in 0..fin.n_base() {
                if !fin.leq(Elem::Base(i), Elem::Base(j)) {
                    continue;
                }
                let (a, b) = (&fin.base_ids()[i as usize], &fin.base_ids()[j as usize]);
                if i != j {
                    for k in 0..lad.n_base() {
                        let u = &lad.base_ids()[k as usize];
                        pres.order.push((join(a, u), join(b, u)));
                    }
                    for k in 0..lad.n_ladders() {
                        let u = &lad.ladder_ids()[k as usize];
                        pres.rels.push(RelStmt { lhs: join(a, u), rhs: join(b, u), kind: RelKind::Shift(0) });
                    }
                }
                for &(u, v, kind) in &rules {
                    let ((un, ub), (vn, vb)) = (node(u), node(v));
                    if ub && vb {
                        pres.order.push((join(a, un), join(b, vn)));
                    } else {
                        pres.rels.push(RelStmt { lhs: join(a, un), rhs: join(b, vn), kind });
                    }
                }
            }
        }
        pres.validate()
    }
}

/// The same product and its flattening report identical property values.
pub fn flattened_matches(prod: &ProductPoset, reference: &LadderPoset) -> Result<bool> {
    let flat = prod.flatten()?;
    let a = checkers::build_report(&flat, None);
    let b = checkers::build_report(reference, None);
    Ok(a.properties == b.properties)
}
