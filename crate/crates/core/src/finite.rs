//! Explicit finite posets.
//!
//! Every directed subset of a finite poset has a maximum, so on this backend
//! way-below, weak way-below and the order itself coincide. The module is the
//! brute-force substrate the symbolic backend is checked against, and it hosts
//! the constructive version of Rudin's lemma for finite families.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A finite poset over opaque string identifiers.
///
/// Elements are stored in lexicographic order of their identifiers; subsets are
/// passed around as slices of element indices into that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    leq: Vec<Vec<bool>>,
}

/// A finite family of nonempty element subsets of one carrier poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFamily {
    sets: Vec<BTreeSet<usize>>,
}

impl FiniteFamily {
    pub fn new(p: &FinPoset, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(sets.len());
        for s in sets {
            if s.is_empty() {
                return Err(Error::EmptySet);
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= p.len()) {
                return Err(Error::UnknownElement(format!("#{bad}")));
            }
            out.push(s.into_iter().collect());
        }
        if out.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(FiniteFamily { sets: out })
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn union(&self) -> BTreeSet<usize> {
        self.sets.iter().flatten().copied().collect()
    }
}

impl FinPoset {
    /// Builds the reflexive-transitive closure of `cover_pairs` (each pair
    /// `(a, b)` meaning `a < b`) and rejects cycles.
    pub fn build<S: AsRef<str>>(elements: &[S], cover_pairs: &[(S, S)]) -> Result<Self> {
        let mut names: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(w[0].clone()));
        }
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in cover_pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_owned()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_owned()))?;
            leq[ia][ib] = true;
        }
        warshall(&mut leq);
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(FinPoset { names, index, leq })
    }

    /// Wraps an already closed order matrix. The matrix is checked for the
    /// partial-order axioms.
    pub fn from_closed(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        assert_eq!(leq.len(), n, "order matrix has wrong dimension");
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let sorted_names: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        if let Some(w) = sorted_names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(w[0].clone()));
        }
        let sorted: Vec<Vec<bool>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| leq[i][j]).collect())
            .collect();
        for i in 0..n {
            if !sorted[i][i] {
                return Err(Error::PreconditionFailed(format!(
                    "order is not reflexive at {}",
                    sorted_names[i]
                )));
            }
            for j in 0..n {
                if i != j && sorted[i][j] && sorted[j][i] {
                    return Err(Error::Cycle(sorted_names[i].clone(), sorted_names[j].clone()));
                }
                for k in 0..n {
                    if sorted[i][j] && sorted[j][k] && !sorted[i][k] {
                        return Err(Error::PreconditionFailed(format!(
                            "order is not transitive at {} <= {} <= {}",
                            sorted_names[i], sorted_names[j], sorted_names[k]
                        )));
                    }
                }
            }
        }
        let index = sorted_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Ok(FinPoset { names: sorted_names, index, leq: sorted })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub fn indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn up_set(&self, a: &[usize]) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&x| a.iter().any(|&y| self.leq[y][x]))
            .collect()
    }

    pub fn down_set(&self, a: &[usize]) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&x| a.iter().any(|&y| self.leq[x][y]))
            .collect()
    }

    /// `true` iff every two elements of `d` have an upper bound inside `d`.
    pub fn is_directed(&self, d: &[usize]) -> Result<bool> {
        if d.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(d.iter().all(|&x| {
            d.iter()
                .all(|&y| d.iter().any(|&z| self.leq[x][z] && self.leq[y][z]))
        }))
    }

    /// Least upper bound of `a` in the whole poset, if it exists.
    pub fn sup(&self, a: &[usize]) -> Option<usize> {
        let ubs: Vec<usize> = (0..self.len())
            .filter(|&u| a.iter().all(|&x| self.leq[x][u]))
            .collect();
        ubs.iter()
            .copied()
            .find(|&u| ubs.iter().all(|&v| self.leq[u][v]))
    }

    /// Smyth preorder: `g <= h` iff `up(h) ⊆ up(g)`.
    pub fn smyth_leq(&self, g: &[usize], h: &[usize]) -> Result<bool> {
        if g.is_empty() || h.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(h.iter().all(|&y| g.iter().any(|&x| self.leq[x][y])))
    }

    /// `g` way below `x`. Finite directed sets contain their suprema, so this
    /// reduces to `x ∈ ↑g`.
    pub fn way_below(&self, g: &[usize], x: usize) -> Result<bool> {
        if g.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(g.iter().any(|&y| self.leq[y][x]))
    }

    /// Directedness of a family in the Smyth preorder: any two members are
    /// refined by a third that lies in the intersection of their up-sets.
    pub fn family_is_directed(&self, fam: &FiniteFamily) -> Result<()> {
        let ups: Vec<BTreeSet<usize>> = fam
            .sets
            .iter()
            .map(|s| self.up_set(&s.iter().copied().collect::<Vec<_>>()))
            .collect();
        for i in 0..fam.sets.len() {
            for j in i..fam.sets.len() {
                let ok = fam
                    .sets
                    .iter()
                    .any(|f3| f3.iter().all(|x| ups[i].contains(x) && ups[j].contains(x)));
                if !ok {
                    return Err(Error::NotDirectedFamily(i, j));
                }
            }
        }
        Ok(())
    }

    /// Finds the smallest (then lexicographically least) directed subset of
    /// `⋃ fam` that meets every member of `fam`.
    pub fn rudin_extract(&self, fam: &FiniteFamily) -> Result<Vec<usize>> {
        self.family_is_directed(fam)?;
        let universe: Vec<usize> = fam.union().into_iter().collect();
        for size in 1..=universe.len() {
            let mut found = None;
            for_each_combination(universe.len(), size, |combo| {
                let d: Vec<usize> = combo.iter().map(|&k| universe[k]).collect();
                let meets_all = fam.sets.iter().all(|f| d.iter().any(|x| f.contains(x)));
                if meets_all && self.is_directed(&d).unwrap_or(false) {
                    found = Some(d);
                    true
                } else {
                    false
                }
            });
            if let Some(d) = found {
                return Ok(d);
            }
        }
        Err(Error::PreconditionFailed(
            "no directed transversal exists for the family".into(),
        ))
    }

    /// Strict covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq[a][b] {
                    continue;
                }
                let between = (0..n).any(|c| {
                    c != a && c != b && self.leq[a][c] && self.leq[c][b]
                });
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn warshall(m: &mut [Vec<bool>]) {
    let n = m.len();
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
}

/// Visits the `k`-combinations of `0..n` in lexicographic order until `f`
/// returns `true`.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> FinPoset {
        FinPoset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn closure_adds_transitive_pairs() {
        let p = chain();
        assert!(p.leq(p.index_of("a").unwrap(), p.index_of("c").unwrap()));
    }

    #[test]
    fn one_point() {
        let p = FinPoset::build::<&str>(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.leq(0, 0));
    }

    #[test]
    fn two_cycle_is_rejected() {
        let e = FinPoset::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(e, Error::Cycle(_, _)));
    }

    #[test]
    fn unknown_and_duplicate_ids() {
        assert!(matches!(
            FinPoset::build(&["a"], &[("a", "z")]),
            Err(Error::UnknownElement(_))
        ));
        assert!(matches!(
            FinPoset::build::<&str>(&["a", "a"], &[]),
            Err(Error::DuplicateId(_))
        ));
    }

    #[test]
    fn directedness() {
        let p = chain();
        assert!(p.is_directed(&p.indices(&["a", "c"]).unwrap()).unwrap());
        let q = FinPoset::build::<&str>(&["a", "b"], &[]).unwrap();
        assert!(!q.is_directed(&[0, 1]).unwrap());
        assert_eq!(q.is_directed(&[]), Err(Error::EmptySet));
    }

    #[test]
    fn sups() {
        let p = chain();
        assert_eq!(p.sup(&p.indices(&["a", "b"]).unwrap()), p.index_of("b").ok());
        let q = FinPoset::build::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(q.sup(&[0, 1]), None);
    }

    #[test]
    fn smyth() {
        let p = chain();
        let a = p.indices(&["a"]).unwrap();
        let b = p.indices(&["b"]).unwrap();
        assert!(p.smyth_leq(&a, &b).unwrap());
        assert!(!p.smyth_leq(&b, &a).unwrap());
        assert_eq!(p.smyth_leq(&[], &a), Err(Error::EmptySet));
    }

    #[test]
    fn way_below_collapses_to_order() {
        let p = chain();
        assert!(p.way_below(&[p.index_of("a").unwrap()], p.index_of("c").unwrap()).unwrap());
        let q = FinPoset::build::<&str>(&["a", "b"], &[]).unwrap();
        assert!(!q.way_below(&[0], 1).unwrap());
        for x in 0..p.len() {
            assert!(p.way_below(&[x], x).unwrap());
        }
    }

    #[test]
    fn rudin_on_chain_singletons() {
        let p = chain();
        let fam = FiniteFamily::new(&p, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(p.rudin_extract(&fam).unwrap(), vec![0, 1, 2]);
        let single = FiniteFamily::new(&p, vec![vec![0]]).unwrap();
        assert_eq!(p.rudin_extract(&single).unwrap(), vec![0]);
    }

    #[test]
    fn rudin_on_parallel_chains_breaks_ties_lexicographically() {
        let p = FinPoset::build(&["a0", "a1", "b0", "b1"], &[("a0", "a1"), ("b0", "b1")])
            .unwrap();
        let f1 = p.indices(&["a0", "b0"]).unwrap();
        let f2 = p.indices(&["a1", "b1"]).unwrap();
        let fam = FiniteFamily::new(&p, vec![f1, f2]).unwrap();
        let d = p.rudin_extract(&fam).unwrap();
        let names: Vec<&str> = d.iter().map(|&i| p.name(i)).collect();
        assert_eq!(names, ["a0", "a1"]);
    }

    #[test]
    fn rudin_rejects_undirected_family() {
        let q = FinPoset::build::<&str>(&["a", "b"], &[]).unwrap();
        let fam = FiniteFamily::new(&q, vec![vec![0], vec![1]]).unwrap();
        assert!(matches!(q.rudin_extract(&fam), Err(Error::NotDirectedFamily(_, _))));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }
}
