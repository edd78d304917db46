//! Finite distributive lattices realised as order ideals of their
//! join-irreducible poset (Birkhoff representation).
//!
//! Every lattice element is identified with the bitset `Spec(l)* = {m in J(L) :
//! m <= l, m != bottom}`. The bottom element is an implicit member of every
//! ideal, so the bottom itself is the empty bitset. `J(L)` includes the bottom;
//! `J(L)*` (the poset stored here) does not.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::IdealSet;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Index of a lattice element in the canonical order (bottom is 0, top is last).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub usize);

impl Elem {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An order ideal of `J(L)*`; the bottom element is implied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderIdeal(IdealSet);

impl OrderIdeal {
    pub fn members(self) -> IdealSet {
        self.0
    }

    /// Number of non-bottom members.
    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(self, irreducible: usize) -> bool {
        self.0.contains(irreducible)
    }
}

/// A saturated chain `bottom = c_0 < c_1 < ... < c_N = top`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalChain {
    elements: Vec<Elem>,
}

impl MaximalChain {
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    /// Number of steps, `N`.
    pub fn len(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elements.contains(&e)
    }

    pub fn get(&self, j: usize) -> Elem {
        self.elements[j]
    }
}

/// An order preserving enumeration `m_1, ..., m_N` of `J(L)*` (with `m_0` the
/// implicit bottom).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enumeration {
    order: Vec<Elem>,
}

impl Enumeration {
    pub fn order(&self) -> &[Elem] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `m_i` for `i` in `1..=N`.
    pub fn get(&self, i: usize) -> Elem {
        self.order[i - 1]
    }
}

/// JSON export of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeExport {
    pub elements: Vec<String>,
    pub join_irreducibles: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

#[derive(Clone, Debug)]
pub struct DistributiveLattice {
    irreducibles: Poset,
    ideals: Vec<IdealSet>,
    index: HashMap<IdealSet, usize>,
    labels: Vec<String>,
    principal: Vec<usize>,
    upper: Vec<Vec<usize>>,
}

impl DistributiveLattice {
    /// The lattice `(D(P), union, intersection)` of order ideals of `P`.
    pub fn from_poset(poset: Poset) -> Self {
        let mut ideals = poset.ideals();
        ideals.sort_by_key(|s| (s.len(), s.bits()));
        let index: HashMap<IdealSet, usize> =
            ideals.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let principal = (0..poset.len())
            .map(|p| index[&poset.down_set(p)])
            .collect();
        let upper = ideals
            .iter()
            .map(|&s| {
                let mut ups: Vec<usize> = (0..poset.len())
                    .filter(|&p| !s.contains(p) && poset.down_set(p).without(p).is_subset(s))
                    .map(|p| index[&s.with(p)])
                    .collect();
                ups.sort_unstable();
                ups
            })
            .collect();
        let labels = ideals
            .iter()
            .map(|&s| {
                if s.is_empty() {
                    "0".to_string()
                } else {
                    poset
                        .maximal_in(s)
                        .into_iter()
                        .map(|p| poset.label(p).to_string())
                        .collect::<Vec<_>>()
                        .join("+")
                }
            })
            .collect();
        DistributiveLattice {
            irreducibles: poset,
            ideals,
            index,
            labels,
            principal,
            upper,
        }
    }

    /// Reads an arbitrary finite order, checks that it is a distributive
    /// lattice, and returns its Birkhoff representation together with the image
    /// of every input element.
    pub fn from_order(order: &Poset) -> Result<(Self, Vec<Elem>)> {
        let n = order.len();
        if n == 0 {
            return Err(Error::NotALattice("empty order".into()));
        }
        let join = lattice_table(order, true)?;
        let meet = lattice_table(order, false)?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = meet[x][join[y][z]];
                    let rhs = join[meet[x][y]][meet[x][z]];
                    if lhs != rhs {
                        return Err(Error::NotDistributive(format!(
                            "{} ^ ({} v {})",
                            order.label(x),
                            order.label(y),
                            order.label(z)
                        )));
                    }
                }
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| order.leq(b, x))).unwrap();
        let mut reducible = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let j = join[a][b];
                if j != a && j != b {
                    reducible[j] = true;
                }
            }
        }
        let irr: Vec<usize> = (0..n).filter(|&m| !reducible[m] && m != bottom).collect();
        let labels: Vec<String> = irr.iter().map(|&m| order.label(m).to_string()).collect();
        let poset = Poset::from_relation(labels, |a, b| order.leq(irr[a], irr[b]))?;
        let mut lattice = DistributiveLattice::from_poset(poset);
        let image: Vec<Elem> = (0..n)
            .map(|x| {
                let set: IdealSet = (0..irr.len()).filter(|&k| order.leq(irr[k], x)).collect();
                Elem(lattice.index[&set])
            })
            .collect();
        let mut labels = vec![String::new(); lattice.len()];
        for (x, e) in image.iter().enumerate() {
            labels[e.0] = order.label(x).to_string();
        }
        if labels.iter().any(String::is_empty) {
            return Err(Error::NotALattice("Birkhoff map is not surjective".into()));
        }
        lattice.labels = labels;
        Ok((lattice, image))
    }

    /// Replaces the element labels (a codec for domain-specific names).
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `N = |J(L)*|`, the length of every maximal chain.
    pub fn rank(&self) -> usize {
        self.irreducibles.len()
    }

    /// The poset `J(L)*`.
    pub fn irreducible_poset(&self) -> &Poset {
        &self.irreducibles
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.len()).map(Elem)
    }

    pub fn bottom(&self) -> Elem {
        Elem(0)
    }

    pub fn top(&self) -> Elem {
        Elem(self.len() - 1)
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Result<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(Elem)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn check(&self, e: Elem) -> Result<Elem> {
        if e.0 < self.len() {
            Ok(e)
        } else {
            Err(Error::UnknownElement(format!("#{}", e.0)))
        }
    }

    pub fn ideal(&self, e: Elem) -> IdealSet {
        self.ideals[e.0]
    }

    pub fn element_of_ideal(&self, set: IdealSet) -> Option<Elem> {
        self.index.get(&set).map(|&i| Elem(i))
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.index[&self.ideals[a.0].union(self.ideals[b.0])])
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.index[&self.ideals[a.0].intersection(self.ideals[b.0])])
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.ideals[a.0].is_subset(self.ideals[b.0])
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn is_cover(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) && self.height(b) == self.height(a) + 1
    }

    pub fn upper_covers(&self, e: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.upper[e.0].iter().map(|&i| Elem(i))
    }

    /// The lattice element of a join-irreducible, given its index in `J(L)*`.
    pub fn irreducible(&self, p: usize) -> Elem {
        Elem(self.principal[p])
    }

    /// Inverse of [`Self::irreducible`].
    pub fn irreducible_index(&self, e: Elem) -> Option<usize> {
        self.principal.iter().position(|&i| i == e.0)
    }

    /// `J(L)` by the defining property: `m = a v b` forces `m in {a, b}`.
    /// Contains the bottom element.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        let mut reducible = vec![false; self.len()];
        for a in self.elements() {
            for b in self.elements() {
                let j = self.join(a, b);
                if j != a && j != b {
                    reducible[j.0] = true;
                }
            }
        }
        self.elements().filter(|e| !reducible[e.0]).collect()
    }

    pub fn spec(&self, e: Elem) -> OrderIdeal {
        OrderIdeal(self.ideals[e.0])
    }

    /// Maximal members of `Spec(e)`; `[bottom]` for the bottom element.
    pub fn max_spec(&self, e: Elem) -> Vec<Elem> {
        let s = self.ideals[e.0];
        if s.is_empty() {
            return vec![self.bottom()];
        }
        let mut out: Vec<Elem> = self
            .irreducibles
            .maximal_in(s)
            .into_iter()
            .map(|p| self.irreducible(p))
            .collect();
        out.sort();
        out
    }

    /// Birkhoff inverse: the join of the irreducibles of an ideal.
    pub fn join_of(&self, ideal: OrderIdeal) -> Elem {
        ideal
            .members()
            .iter()
            .map(|p| self.irreducible(p))
            .fold(self.bottom(), |acc, m| self.join(acc, m))
    }

    pub fn ideal_from_set(&self, set: IdealSet) -> Option<OrderIdeal> {
        self.irreducibles.is_ideal(set).then_some(OrderIdeal(set))
    }

    pub fn height(&self, e: Elem) -> usize {
        self.ideals[e.0].len()
    }

    /// Number of maximal chains, by counting cover paths.
    pub fn chain_count(&self) -> u128 {
        let mut paths = vec![0u128; self.len()];
        paths[0] = 1;
        let mut by_height: Vec<usize> = (0..self.len()).collect();
        by_height.sort_by_key(|&i| self.ideals[i].len());
        for i in by_height {
            for &j in &self.upper[i] {
                paths[j] = paths[j].saturating_add(paths[i]);
            }
        }
        paths[self.len() - 1]
    }

    /// Streams every maximal chain once, in depth-first order with covers
    /// visited by increasing element index.
    pub fn maximal_chains(&self) -> ChainIter<'_> {
        ChainIter {
            lattice: self,
            path: vec![0],
            cursor: vec![0],
            pending_pop: false,
        }
    }

    /// Checks that `elements` is a saturated chain from bottom to top.
    pub fn chain(&self, elements: Vec<Elem>) -> Result<MaximalChain> {
        for &e in &elements {
            self.check(e)?;
        }
        if elements.first() != Some(&self.bottom()) || elements.last() != Some(&self.top()) {
            return Err(Error::NotMaximalChain(
                "chain must start at the bottom and end at the top".into(),
            ));
        }
        for w in elements.windows(2) {
            if !self.is_cover(w[0], w[1]) {
                return Err(Error::NotMaximalChain(format!(
                    "{} -> {} is not a cover",
                    self.label(w[0]),
                    self.label(w[1])
                )));
            }
        }
        Ok(MaximalChain { elements })
    }

    /// `m_i` is the unique irreducible in `Spec(c_i) \ Spec(c_{i-1})`.
    pub fn chain_to_enumeration(&self, chain: &MaximalChain) -> Result<Enumeration> {
        let chain = self.chain(chain.elements.clone())?;
        let order = chain
            .elements
            .windows(2)
            .map(|w| {
                let diff = self.ideals[w[1].0].difference(self.ideals[w[0].0]);
                self.irreducible(diff.iter().next().unwrap())
            })
            .collect();
        Ok(Enumeration { order })
    }

    /// `c_j = m_1 v ... v m_j`.
    pub fn enumeration_to_chain(&self, enumeration: &Enumeration) -> Result<MaximalChain> {
        let e = self.enumeration(enumeration.order.clone())?;
        let mut elements = vec![self.bottom()];
        let mut acc = self.bottom();
        for &m in &e.order {
            acc = self.join(acc, m);
            elements.push(acc);
        }
        self.chain(elements)
    }

    /// Validates an order preserving enumeration of `J(L)*`.
    pub fn enumeration(&self, order: Vec<Elem>) -> Result<Enumeration> {
        if order.len() != self.rank() {
            return Err(Error::NotOrderPreserving(format!(
                "expected {} elements, found {}",
                self.rank(),
                order.len()
            )));
        }
        let mut seen = IdealSet::empty();
        for &m in &order {
            let p = self
                .irreducible_index(self.check(m)?)
                .ok_or_else(|| Error::NotOrderPreserving(format!("{} is not join-irreducible", self.label(m))))?;
            if seen.contains(p) {
                return Err(Error::NotOrderPreserving(format!("{} repeated", self.label(m))));
            }
            if !self.irreducibles.down_set(p).without(p).is_subset(seen) {
                return Err(Error::NotOrderPreserving(format!(
                    "{} listed before an element below it",
                    self.label(m)
                )));
            }
            seen.insert(p);
        }
        Ok(Enumeration { order })
    }

    /// Position `i` (1-based) of every irreducible index in the enumeration.
    pub fn positions(&self, enumeration: &Enumeration) -> Vec<usize> {
        let mut pos = vec![0; self.rank()];
        for (i, &m) in enumeration.order.iter().enumerate() {
            pos[self.irreducible_index(m).unwrap()] = i + 1;
        }
        pos
    }

    pub fn export(&self) -> LatticeExport {
        let mut covers = Vec::new();
        for a in self.elements() {
            for b in self.upper_covers(a) {
                covers.push([self.label(a).to_string(), self.label(b).to_string()]);
            }
        }
        LatticeExport {
            elements: self.labels.clone(),
            join_irreducibles: self
                .join_irreducibles()
                .into_iter()
                .map(|e| self.label(e).to_string())
                .collect(),
            covers,
        }
    }
}

fn lattice_table(order: &Poset, join: bool) -> Result<Vec<Vec<usize>>> {
    let n = order.len();
    let rel = |a: usize, b: usize| if join { order.leq(a, b) } else { order.leq(b, a) };
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let bounds: Vec<usize> = (0..n).filter(|&c| rel(a, c) && rel(b, c)).collect();
            let best = bounds
                .iter()
                .copied()
                .find(|&c| bounds.iter().all(|&u| rel(c, u)))
                .ok_or_else(|| {
                    Error::NotALattice(format!(
                        "{} and {} have no {}",
                        order.label(a),
                        order.label(b),
                        if join { "join" } else { "meet" }
                    ))
                })?;
            table[a][b] = best;
        }
    }
    Ok(table)
}

pub struct ChainIter<'a> {
    lattice: &'a DistributiveLattice,
    path: Vec<usize>,
    cursor: Vec<usize>,
    pending_pop: bool,
}

impl Iterator for ChainIter<'_> {
    type Item = MaximalChain;

    fn next(&mut self) -> Option<MaximalChain> {
        let top = self.lattice.len() - 1;
        if self.pending_pop {
            self.path.pop();
            self.cursor.pop();
            self.pending_pop = false;
        }
        while let Some(&v) = self.path.last() {
            if v == top {
                self.pending_pop = true;
                return Some(MaximalChain {
                    elements: self.path.iter().map(|&i| Elem(i)).collect(),
                });
            }
            let ups = &self.lattice.upper[v];
            let c = self.cursor.last_mut().unwrap();
            if *c < ups.len() {
                let w = ups[*c];
                *c += 1;
                self.path.push(w);
                self.cursor.push(0);
            } else {
                self.path.pop();
                self.cursor.pop();
            }
        }
        None
    }
}
