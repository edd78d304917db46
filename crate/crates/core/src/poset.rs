//! Finite posets given by their Hasse diagram.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::IdealSet;
use crate::error::{Error, Result};

/// A finite partial order, stored as its cover relation plus the derived
/// down-set of every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    below: Vec<IdealSet>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

/// JSON interchange form: `{"elements": [..], "covers": [[lo, hi], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl Poset {
    /// Builds a poset from labelled elements and `(lower, upper)` cover pairs.
    ///
    /// The cover graph must be acyclic and transitively reduced.
    pub fn new(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n > IdealSet::CAPACITY {
            return Err(Error::TooManyElements(n));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return Err(Error::CoverOutOfRange(a, b));
            }
            if a == b {
                return Err(Error::CyclicCovers(labels[a].clone()));
            }
            if lower[b].contains(&a) {
                return Err(Error::RedundantCover {
                    lower: labels[a].clone(),
                    upper: labels[b].clone(),
                });
            }
            lower[b].push(a);
            upper[a].push(b);
        }
        for v in lower.iter_mut().chain(upper.iter_mut()) {
            v.sort_unstable();
        }

        // Kahn's algorithm; leftover vertices sit on a cycle.
        let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &w in &upper[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap_or(0);
            return Err(Error::CyclicCovers(labels[stuck].clone()));
        }

        let mut below = vec![IdealSet::empty(); n];
        for &v in &topo {
            let mut set = IdealSet::singleton(v);
            for &u in &lower[v] {
                set = set.union(below[u]);
            }
            below[v] = set;
        }
        for b in 0..n {
            for &a in &lower[b] {
                if lower[b].iter().any(|&c| c != a && below[c].contains(a)) {
                    return Err(Error::RedundantCover {
                        lower: labels[a].clone(),
                        upper: labels[b].clone(),
                    });
                }
            }
        }

        let mut covers = covers;
        covers.sort_unstable();
        Ok(Poset {
            labels,
            covers,
            below,
            lower,
            upper,
        })
    }

    /// Builds a poset from an order relation by transitive reduction.
    ///
    /// `leq` must be reflexive, antisymmetric and transitive on `0..labels.len()`.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let lt = |a: usize, b: usize| a != b && leq(a, b);
        for a in 0..n {
            for b in (a + 1)..n {
                if leq(a, b) && leq(b, a) {
                    return Err(Error::CyclicCovers(labels[a].clone()));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        Poset::new(labels, covers)
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        let index: HashMap<&str, usize> = file
            .elements
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let lookup = |l: &String| {
            index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownElement(l.clone()))
        };
        let covers = file
            .covers
            .iter()
            .map(|[lo, hi]| Ok((lookup(lo)?, lookup(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(file.elements.clone(), covers)
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.labels.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| [self.labels[a].clone(), self.labels[b].clone()])
                .collect(),
        }
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

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Principal down-set `{j : j <= i}`.
    pub fn down_set(&self, i: usize) -> IdealSet {
        self.below[i]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    /// Maximal elements of a subset.
    pub fn maximal_in(&self, set: IdealSet) -> Vec<usize> {
        set.iter()
            .filter(|&i| !set.iter().any(|j| self.lt(i, j)))
            .collect()
    }

    pub fn is_ideal(&self, set: IdealSet) -> bool {
        set.iter().all(|i| self.below[i].is_subset(set))
    }

    pub fn is_antichain(&self, set: IdealSet) -> bool {
        set.iter().all(|i| set.iter().all(|j| i == j || !self.leq(i, j)))
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.below[i].len(), i));
        order
    }

    /// All order ideals (down-closed subsets), including the empty one.
    pub fn ideals(&self) -> Vec<IdealSet> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        self.collect_ideals(&order, 0, IdealSet::empty(), &mut out);
        out
    }

    fn collect_ideals(&self, order: &[usize], pos: usize, acc: IdealSet, out: &mut Vec<IdealSet>) {
        if pos == order.len() {
            out.push(acc);
            return;
        }
        let v = order[pos];
        self.collect_ideals(order, pos + 1, acc, out);
        if self.below[v].without(v).is_subset(acc) {
            self.collect_ideals(order, pos + 1, acc.with(v), out);
        }
    }
}
