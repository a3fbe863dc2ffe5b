//! Finite fragments of prime spectra as posets under inclusion.
//!
//! Nodes are primes, `child < parent` means `child ⊊ parent`. Specialisation
//! closed subsets are exactly the up-sets. Heights are computed inside the
//! represented fragment, so a truncation can only under-report them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Posets larger than this are refused by [`SpecPoset::enumerate_closed`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPoset {
    labels: Vec<String>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    heights: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecClosedSet {
    members: BTreeSet<usize>,
}

impl SpecClosedSet {
    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}

impl SpecPoset {
    /// Builds the poset from labels and `(child, parent)` cover relations.
    pub fn new(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Input(format!("duplicate prime label {l:?}")));
            }
        }
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for &(c, p) in relations {
            if c >= n || p >= n {
                return Err(Error::Input(format!("relation ({c}, {p}) out of range")));
            }
            if c == p {
                return Err(Error::Input(format!("{} < {} is not strict", labels[c], labels[p])));
            }
            if !parents[c].contains(&p) {
                parents[c].push(p);
                children[p].push(c);
            }
        }
        // Kahn's algorithm from the bottom; leftover nodes lie on a cycle.
        let mut pending: Vec<usize> = children.iter().map(Vec::len).collect();
        let mut heights = vec![0usize; n];
        let mut ready: Vec<usize> = (0..n).filter(|&i| pending[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = ready.pop() {
            seen += 1;
            for &p in &parents[i] {
                heights[p] = heights[p].max(heights[i] + 1);
                pending[p] -= 1;
                if pending[p] == 0 {
                    ready.push(p);
                }
            }
        }
        if seen != n {
            return Err(Error::Input("containment relation has a cycle".into()));
        }
        Ok(SpecPoset {
            labels,
            parents,
            children,
            heights,
        })
    }

    /// Text format: one `child < parent` per line; a bare label declares an
    /// isolated node. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut relations = Vec::new();
        let intern = |l: &str, labels: &mut Vec<String>| -> usize {
            match labels.iter().position(|x| x == l) {
                Some(i) => i,
                None => {
                    labels.push(l.to_string());
                    labels.len() - 1
                }
            }
        };
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match line.split_once('<') {
                Some((c, p)) => {
                    let (c, p) = (c.trim(), p.trim());
                    if c.is_empty() || p.is_empty() || p.contains('<') {
                        return Err(Error::Parse(format!("line {}: bad relation {line:?}", no + 1)));
                    }
                    let ci = intern(c, &mut labels);
                    let pi = intern(p, &mut labels);
                    relations.push((ci, pi));
                }
                None => {
                    intern(line, &mut labels);
                }
            }
        }
        Self::new(labels, &relations)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Input(format!("unknown prime {label:?}")))
    }

    pub fn height(&self, i: usize) -> usize {
        self.heights[i]
    }

    pub fn dimension(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// Nodes strictly above `i`.
    pub fn above(&self, i: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = self.parents[i].clone();
        while let Some(p) = stack.pop() {
            if out.insert(p) {
                stack.extend(self.parents[p].iter().copied());
            }
        }
        out
    }

    pub fn indices(&self, labels: &[&str]) -> Result<BTreeSet<usize>> {
        labels.iter().map(|l| self.index(l)).collect()
    }

    pub fn specialisation_closure(&self, s: &BTreeSet<usize>) -> Result<SpecClosedSet> {
        let mut members = BTreeSet::new();
        for &i in s {
            if i >= self.len() {
                return Err(Error::Input(format!("node {i} out of range")));
            }
            members.insert(i);
            members.extend(self.above(i));
        }
        Ok(SpecClosedSet { members })
    }

    pub fn closure_of(&self, labels: &[&str]) -> Result<SpecClosedSet> {
        self.specialisation_closure(&self.indices(labels)?)
    }

    pub fn is_closed(&self, s: &BTreeSet<usize>) -> bool {
        s.iter()
            .all(|&i| i < self.len() && self.parents[i].iter().all(|p| s.contains(p)))
    }

    /// Wraps an up-set, rejecting anything that is not specialisation closed.
    pub fn closed_set(&self, s: BTreeSet<usize>) -> Result<SpecClosedSet> {
        if !self.is_closed(&s) {
            return Err(Error::Input("subset is not specialisation closed".into()));
        }
        Ok(SpecClosedSet { members: s })
    }

    pub fn minimal_primes(&self, v: &SpecClosedSet) -> BTreeSet<usize> {
        v.members
            .iter()
            .copied()
            .filter(|&i| self.children[i].iter().all(|c| !v.members.contains(c)))
            .collect()
    }

    /// True iff every minimal prime of `v` has height at most one.
    pub fn check_height_condition(&self, v: &SpecClosedSet) -> bool {
        self.minimal_primes(v).iter().all(|&i| self.heights[i] <= 1)
    }

    pub fn enumerate_closed(&self) -> Result<Vec<SpecClosedSet>> {
        self.enumerate_closed_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    /// All up-sets. Nodes are decided top-down so a node is only offered
    /// once all of its parents are decided.
    pub fn enumerate_closed_bounded(&self, bound: usize) -> Result<Vec<SpecClosedSet>> {
        if self.len() > bound {
            return Err(Error::SizeBound {
                size: self.len(),
                bound,
            });
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.heights[i]));
        let mut out = Vec::new();
        let mut included = vec![false; self.len()];
        self.enumerate_rec(&order, 0, &mut included, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate_rec(
        &self,
        order: &[usize],
        k: usize,
        included: &mut Vec<bool>,
        out: &mut Vec<SpecClosedSet>,
    ) {
        let Some(&node) = order.get(k) else {
            out.push(SpecClosedSet {
                members: (0..included.len()).filter(|&i| included[i]).collect(),
            });
            return;
        };
        self.enumerate_rec(order, k + 1, included, out);
        if self.parents[node].iter().all(|&p| included[p]) {
            included[node] = true;
            self.enumerate_rec(order, k + 1, included, out);
            included[node] = false;
        }
    }

    /// Whether `v` equals the union of the closures of the vanishing sets
    /// `V(s)`, one per denominator `s`.
    pub fn classical_support_check(&self, v: &SpecClosedSet, vanishing: &[BTreeSet<usize>]) -> bool {
        let mut union = BTreeSet::new();
        for z in vanishing {
            match self.specialisation_closure(z) {
                Ok(c) => union.extend(c.members),
                Err(_) => return false,
            }
        }
        union == v.members
    }

    pub fn labels_of(&self, s: &BTreeSet<usize>) -> Vec<String> {
        s.iter().map(|&i| self.labels[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_z() -> SpecPoset {
        SpecPoset::parse("(0) < (2)\n(0) < (3)\n(0) < (5)\n").unwrap()
    }

    fn height_two() -> SpecPoset {
        SpecPoset::parse("(0) < (x)\n(0) < (y)\n(x) < m\n(y) < m\n").unwrap()
    }

    #[test]
    fn closures() {
        let z = spec_z();
        assert!(z.specialisation_closure(&BTreeSet::new()).unwrap().is_empty());
        assert_eq!(z.closure_of(&["(0)"]).unwrap().len(), 4);
        assert_eq!(z.closure_of(&["(3)"]).unwrap().len(), 1);
        let chain = SpecPoset::parse("(0) < m").unwrap();
        assert_eq!(chain.closure_of(&["(0)"]).unwrap().len(), 2);
        assert!(matches!(z.closure_of(&["(7)"]), Err(Error::Input(_))));
    }

    #[test]
    fn counts() {
        assert_eq!(SpecPoset::parse("x").unwrap().enumerate_closed().unwrap().len(), 2);
        assert_eq!(SpecPoset::parse("a < b").unwrap().enumerate_closed().unwrap().len(), 3);
        assert_eq!(spec_z().enumerate_closed().unwrap().len(), 9);
    }

    #[test]
    fn height_condition() {
        let p = height_two();
        assert_eq!(p.height(p.index("m").unwrap()), 2);
        assert!(!p.check_height_condition(&p.closure_of(&["m"]).unwrap()));
        assert!(p.check_height_condition(&p.closure_of(&["(x)"]).unwrap()));
        assert!(p.check_height_condition(&SpecClosedSet::default()));
    }

    #[test]
    fn support_check() {
        let p = height_two();
        let vx = p.closure_of(&["(x)"]).unwrap();
        let zx = p.indices(&["(x)", "m"]).unwrap();
        assert!(p.classical_support_check(&vx, &[zx]));
        let zy = p.indices(&["(y)", "m"]).unwrap();
        assert!(!p.classical_support_check(&vx, &[zy]));
        assert!(p.classical_support_check(&SpecClosedSet::default(), &[]));
    }

    #[test]
    fn rejects_cycles_and_bad_lines() {
        assert!(SpecPoset::parse("a < b\nb < a").is_err());
        assert!(SpecPoset::parse("a < a").is_err());
        assert!(SpecPoset::parse("a < b < c").is_err());
        assert!(SpecPoset::parse(" < b").is_err());
    }

    #[test]
    fn size_bound() {
        let text: String = (0..25).map(|i| format!("n{i}\n")).collect();
        let p = SpecPoset::parse(&text).unwrap();
        assert!(matches!(
            p.enumerate_closed(),
            Err(Error::SizeBound { size: 25, bound: 20 })
        ));
    }
}
