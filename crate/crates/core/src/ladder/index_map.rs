//! Monotone index maps between ladders.
//!
//! A closed order relation between two ω-chains `u` and `v` is determined by
//! `f(n) = min { m : u(n) <= v(m) }`, which is nondecreasing in `n` and may be
//! infinite. Base points are treated as one-element chains, so every relation
//! between two nodes of a presentation is an `IndexMap`. Maps compose and take
//! pointwise minima, which is all the transitive closure needs.

/// Eventual behaviour of an index map past its explicit head.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Never,
    Const(u64),
    /// `f(n) = n + c`.
    Affine(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    head: Vec<Option<u64>>,
    tail: Tail,
}

impl IndexMap {
    pub fn never() -> Self {
        IndexMap { head: Vec::new(), tail: Tail::Never }
    }

    pub fn constant(c: u64) -> Self {
        IndexMap { head: Vec::new(), tail: Tail::Const(c) }
    }

    pub fn identity() -> Self {
        IndexMap { head: Vec::new(), tail: Tail::Affine(0) }
    }

    /// `f(n) = max(0, n + c)`.
    pub fn shift(c: i64) -> Self {
        let len = if c < 0 { (-c) as usize } else { 0 };
        IndexMap { head: vec![Some(0); len], tail: Tail::Affine(c) }.canonical()
    }

    /// `f(n) = 0` for `n <= theta`, infinite afterwards.
    pub fn up_to(theta: u64) -> Self {
        IndexMap { head: vec![Some(0); theta as usize + 1], tail: Tail::Never }.canonical()
    }

    pub fn from_parts(head: Vec<Option<u64>>, tail: Tail) -> Self {
        IndexMap { head, tail }.canonical()
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn head(&self) -> &[Option<u64>] {
        &self.head
    }

    fn tail_at(tail: Tail, n: u64) -> Option<u64> {
        match tail {
            Tail::Never => None,
            Tail::Const(c) => Some(c),
            Tail::Affine(c) => Some((n as i64 + c).max(0) as u64),
        }
    }

    pub fn eval(&self, n: u64) -> Option<u64> {
        match self.head.get(n as usize) {
            Some(v) => *v,
            None => Self::tail_at(self.tail, n),
        }
    }

    fn canonical(mut self) -> Self {
        while let Some(&last) = self.head.last() {
            let n = self.head.len() as u64 - 1;
            let tail_ok = match self.tail {
                Tail::Affine(c) => n as i64 + c >= 0,
                _ => true,
            };
            if tail_ok && last == Self::tail_at(self.tail, n) {
                self.head.pop();
            } else {
                break;
            }
        }
        self
    }

    /// First index from which the tail form is exact.
    fn tail_start(&self) -> u64 {
        self.head.len() as u64
    }

    /// `other ∘ self`: first follow `self`, then `other`.
    pub fn then(&self, other: &IndexMap) -> IndexMap {
        let (tail, from) = match self.tail {
            Tail::Never => (Tail::Never, self.tail_start()),
            Tail::Const(c) => (
                match other.eval(c) {
                    Some(v) => Tail::Const(v),
                    None => Tail::Never,
                },
                self.tail_start(),
            ),
            Tail::Affine(c) => {
                // for n >= start, self(n) = n + c >= other.tail_start()
                let need = other.tail_start() as i64 - c;
                let start = self.tail_start().max(need.max(0) as u64);
                let t = match other.tail {
                    Tail::Never => Tail::Never,
                    Tail::Const(d) => Tail::Const(d),
                    Tail::Affine(d) => Tail::Affine(c + d),
                };
                (t, start)
            }
        };
        let head = (0..from)
            .map(|n| self.eval(n).and_then(|m| other.eval(m)))
            .collect();
        IndexMap { head, tail }.canonical()
    }

    /// Pointwise minimum (`None` is infinity).
    pub fn min(&self, other: &IndexMap) -> IndexMap {
        let base = self.tail_start().max(other.tail_start());
        let (tail, from) = match (self.tail, other.tail) {
            (Tail::Never, t) | (t, Tail::Never) => (t, base),
            (Tail::Const(a), Tail::Const(b)) => (Tail::Const(a.min(b)), base),
            (Tail::Affine(a), Tail::Affine(b)) => (Tail::Affine(a.min(b)), base),
            (Tail::Const(a), Tail::Affine(b)) | (Tail::Affine(b), Tail::Const(a)) => {
                // n + b >= a once n >= a - b
                let start = (a as i64 - b).max(0) as u64;
                (Tail::Const(a), base.max(start))
            }
        };
        let head = (0..from)
            .map(|n| match (self.eval(n), other.eval(n)) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            })
            .collect();
        IndexMap { head, tail }.canonical()
    }

    /// Pointwise `self <= other`, infinity being the largest value.
    pub fn le(&self, other: &IndexMap) -> bool {
        self.min(other) == *self
    }

    pub fn is_never(&self) -> bool {
        self.head.iter().all(Option::is_none) && self.tail == Tail::Never
    }

    /// Largest `n` with `f(n)` finite: `None` if there is none, `Some(None)` if
    /// `f` is finite everywhere.
    pub fn finite_prefix(&self) -> Option<Option<u64>> {
        if self.tail != Tail::Never {
            return Some(None);
        }
        self.head
            .iter()
            .rposition(Option::is_some)
            .map(|i| Some(i as u64))
    }

    /// Largest `n` with `f(n) <= m`, with the same encoding as
    /// [`IndexMap::finite_prefix`].
    pub fn max_preimage_le(&self, m: u64) -> Option<Option<u64>> {
        let tail_all = match self.tail {
            Tail::Never => false,
            Tail::Const(c) => c <= m,
            Tail::Affine(_) => false,
        };
        if tail_all {
            return Some(None);
        }
        // f is nondecreasing: scan until the value exceeds m
        let limit = match self.tail {
            Tail::Affine(c) => self.tail_start().max((m as i64 - c + 1).max(0) as u64),
            _ => self.tail_start(),
        };
        let mut best = None;
        for n in 0..limit {
            match self.eval(n) {
                Some(v) if v <= m => best = Some(Some(n)),
                _ => break,
            }
        }
        best
    }

    /// Supremum of `f` when it is finite everywhere and bounded.
    pub fn bound(&self) -> Option<u64> {
        match self.tail {
            Tail::Const(c) => {
                let mut hi = c;
                for v in &self.head {
                    hi = hi.max((*v)?);
                }
                Some(hi)
            }
            _ => None,
        }
    }

    /// Some index `n` with `f(n) <= n` (used for cycle detection on loops).
    pub fn has_non_increasing_point(&self) -> bool {
        let hit_head = self
            .head
            .iter()
            .enumerate()
            .any(|(n, v)| matches!(v, Some(v) if *v <= n as u64));
        hit_head
            || match self.tail {
                Tail::Never => false,
                Tail::Const(_) => true,
                Tail::Affine(c) => c <= 0,
            }
    }

    /// Largest finite value mentioned in the representation.
    pub fn max_constant(&self) -> u64 {
        let h = self.head.iter().flatten().copied().max().unwrap_or(0);
        let t = match self.tail {
            Tail::Never => 0,
            Tail::Const(c) => c,
            Tail::Affine(c) => c.unsigned_abs(),
        };
        h.max(t).max(self.head.len() as u64)
    }
}
