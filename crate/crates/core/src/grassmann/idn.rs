//! The lattice `I(d, n)` of increasing `d`-tuples, its join-irreducible
//! families, weights and the root poset `R(d, n)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DistributiveLattice, Elem};
use crate::poset::Poset;

/// A strictly increasing tuple `1 <= i_1 < ... < i_d <= n` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PluckerIndex(Vec<usize>);

impl PluckerIndex {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        let ok = !entries.is_empty()
            && entries[0] >= 1
            && entries.windows(2).all(|w| w[0] < w[1])
            && *entries.last().unwrap() <= n;
        if ok {
            Ok(PluckerIndex(entries))
        } else {
            Err(Error::InvalidIndex(entries))
        }
    }

    /// Accepts `[1,4]`, `1,4`, `1.4`, `1:4`, or (when `n <= 9`) `14`.
    pub fn parse(text: &str, d: usize, n: usize) -> Result<Self> {
        let body = text.trim().trim_start_matches('[').trim_end_matches(']');
        let bad = || Error::UnknownElement(text.to_string());
        let entries: Vec<usize> = if body.contains([',', '.', ':', ' ', '-']) {
            body.split([',', '.', ':', ' ', '-'])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else if n <= 9 {
            body.chars()
                .map(|c| c.to_digit(10).map(|v| v as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        } else {
            return Err(bad());
        };
        if entries.len() != d {
            return Err(bad());
        }
        PluckerIndex::new(entries, n)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    /// Componentwise comparison, the lattice order of `I(d, n)`.
    pub fn leq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Self) -> Self {
        PluckerIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Self) -> Self {
        PluckerIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl fmt::Display for PluckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Classification of an element of `I(d, n)` by join-irreducibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IrreducibleKind {
    /// `I_{0,k} = [k+1, ..., k+d]`.
    Consecutive(usize),
    /// `I_{s,t} = [1, ..., s, t+1, ..., t+d-s]`.
    OneDescent { s: usize, t: usize },
    NotIrreducible,
}

pub fn classify_irreducible(index: &PluckerIndex) -> IrreducibleKind {
    let e = index.entries();
    let d = e.len();
    if e.windows(2).all(|w| w[1] == w[0] + 1) {
        return IrreducibleKind::Consecutive(e[0] - 1);
    }
    let s = e.iter().enumerate().take_while(|(k, &v)| v == k + 1).count();
    let tail = &e[s..];
    if s >= 1 && s < d && tail.windows(2).all(|w| w[1] == w[0] + 1) {
        return IrreducibleKind::OneDescent { s, t: tail[0] - 1 };
    }
    IrreducibleKind::NotIrreducible
}

/// A positive root `alpha_{i,j} = eps_{j+1} - eps_i` of the root poset
/// `R(d, n)`, with `1 <= i <= d <= j <= n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootCell {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for RootCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{},{}", self.i, self.j)
    }
}

/// `I(d, n)` with its Birkhoff representation and domain codec.
#[derive(Clone, Debug)]
pub struct Grassmannian {
    d: usize,
    n: usize,
    lattice: DistributiveLattice,
    tuples: Vec<PluckerIndex>,
    lookup: HashMap<PluckerIndex, Elem>,
    kinds: Vec<(usize, usize)>,
}

impl Grassmannian {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 || d > n || n > 64 {
            return Err(Error::InvalidDimensions { d, n });
        }
        // J(L)* from the two families, labelled by (s, t) with s = 0 for the
        // consecutive family.
        let mut kinds = Vec::new();
        for k in 1..=(n - d) {
            kinds.push((0, k));
        }
        for s in 1..d {
            for t in (s + 1)..=(s + n - d) {
                kinds.push((s, t));
            }
        }
        let irr: Vec<PluckerIndex> = kinds.iter().map(|&(s, t)| family_member(d, s, t)).collect();
        let labels = irr.iter().map(ToString::to_string).collect();
        let poset = Poset::from_relation(labels, |a, b| irr[a].leq(&irr[b]))?;
        let lattice = DistributiveLattice::from_poset(poset);
        let bottom = PluckerIndex((1..=d).collect());
        let tuples: Vec<PluckerIndex> = lattice
            .elements()
            .map(|e| {
                lattice
                    .ideal(e)
                    .iter()
                    .fold(bottom.clone(), |acc, p| acc.join(&irr[p]))
            })
            .collect();
        let lattice = lattice.with_labels(tuples.iter().map(ToString::to_string).collect());
        let lookup = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), Elem(i)))
            .collect();
        Ok(Grassmannian {
            d,
            n,
            lattice,
            tuples,
            lookup,
            kinds,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> &DistributiveLattice {
        &self.lattice
    }

    pub fn tuple(&self, e: Elem) -> &PluckerIndex {
        &self.tuples[e.0]
    }

    pub fn element(&self, index: &PluckerIndex) -> Result<Elem> {
        self.lookup
            .get(index)
            .copied()
            .ok_or_else(|| Error::UnknownElement(index.to_string()))
    }

    /// Element from an entry list such as `&[1, 4]`.
    pub fn elem(&self, entries: &[usize]) -> Result<Elem> {
        self.element(&PluckerIndex::new(entries.to_vec(), self.n)?)
    }

    pub fn parse(&self, text: &str) -> Result<Elem> {
        self.element(&PluckerIndex::parse(text, self.d, self.n)?)
    }

    /// `(s, t)` family label of the `p`-th element of `J(L)*`.
    pub fn family_label(&self, p: usize) -> (usize, usize) {
        self.kinds[p]
    }

    /// `M = d (n - d)`.
    pub fn root_count(&self) -> usize {
        self.d * (self.n - self.d)
    }

    /// The cell of `R(d, n)` matched with the `p`-th join-irreducible:
    /// `I_{s,t} -> alpha_{d-s, d+t-s-1}`. This is an order isomorphism for the
    /// product order on `(i, j)`.
    pub fn cell_of_irreducible(&self, p: usize) -> RootCell {
        let (s, t) = self.kinds[p];
        RootCell {
            i: self.d - s,
            j: self.d + t - s - 1,
        }
    }

    /// Row-major coordinate of a cell in `R^M`.
    pub fn cell_coordinate(&self, cell: RootCell) -> usize {
        (cell.i - 1) * (self.n - self.d) + (cell.j - self.d)
    }

    pub fn cells(&self) -> Vec<RootCell> {
        let mut out = Vec::with_capacity(self.root_count());
        for i in 1..=self.d {
            for j in self.d..self.n {
                out.push(RootCell { i, j });
            }
        }
        out
    }

    /// The root poset `R(d, n)`: product order on `(i, j)`, covers
    /// `(i, j) -> (i+1, j)` and `(i, j) -> (i, j+1)`. Element `k` is the
    /// `k`-th cell in row-major order.
    pub fn root_poset(&self) -> Poset {
        let cells = self.cells();
        let labels = cells.iter().map(ToString::to_string).collect();
        let mut covers = Vec::new();
        for (a, ca) in cells.iter().enumerate() {
            for (b, cb) in cells.iter().enumerate() {
                if (cb.i == ca.i + 1 && cb.j == ca.j) || (cb.i == ca.i && cb.j == ca.j + 1) {
                    covers.push((a, b));
                }
            }
        }
        Poset::new(labels, covers).expect("grid is a valid Hasse diagram")
    }

    /// `wt(I) = eps_{i_1} + ... + eps_{i_d}` as a vector of length `n`.
    pub fn weight(&self, e: Elem) -> Vec<i64> {
        let mut w = vec![0; self.n];
        for &i in self.tuple(e).entries() {
            w[i - 1] += 1;
        }
        w
    }

    /// `omega(I_{s,t}) = eps_{t+1} - eps_t` for the `p`-th join-irreducible.
    pub fn omega(&self, p: usize) -> Vec<i64> {
        let (_, t) = self.kinds[p];
        let mut w = vec![0; self.n];
        w[t] += 1;
        w[t - 1] -= 1;
        w
    }

    /// `omega(Spec(I))`, summed over the non-bottom irreducibles below `I`.
    pub fn omega_spec(&self, e: Elem) -> Vec<i64> {
        self.omega_of(self.lattice.ideal(e))
    }

    pub fn omega_of(&self, set: crate::bits::IdealSet) -> Vec<i64> {
        let mut w = vec![0; self.n];
        for p in set.iter() {
            for (acc, v) in w.iter_mut().zip(self.omega(p)) {
                *acc += v;
            }
        }
        w
    }
}

fn family_member(d: usize, s: usize, t: usize) -> PluckerIndex {
    let mut v: Vec<usize> = (1..=s).collect();
    v.extend((t + 1)..=(t + d - s));
    PluckerIndex(v)
}

/// Coefficients of a weight in the simple-root basis `alpha_k = eps_{k+1} - eps_k`.
/// Returns `None` if the weight is not in the hyperplane `sum = 0`.
pub fn simple_root_coordinates(weight: &[i64]) -> Option<Vec<i64>> {
    if weight.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut out = Vec::with_capacity(weight.len().saturating_sub(1));
    let mut partial = 0;
    for &x in &weight[..weight.len() - 1] {
        partial += x;
        out.push(-partial);
    }
    Some(out)
}

/// The root `alpha_{i,j} = eps_{j+1} - eps_i` as a weight of length `n`.
pub fn root_weight(cell: RootCell, n: usize) -> Vec<i64> {
    let mut w = vec![0; n];
    w[cell.j] += 1;
    w[cell.i - 1] -= 1;
    w
}

/// Recognises a weight `eps_{j+1} - eps_i` with `i <= j` as a positive root.
pub fn as_positive_root(weight: &[i64]) -> Option<RootCell> {
    let neg: Vec<usize> = (0..weight.len()).filter(|&k| weight[k] == -1).collect();
    let pos: Vec<usize> = (0..weight.len()).filter(|&k| weight[k] == 1).collect();
    let nonzero = weight.iter().filter(|&&x| x != 0).count();
    if neg.len() == 1 && pos.len() == 1 && nonzero == 2 && neg[0] < pos[0] {
        Some(RootCell {
            i: neg[0] + 1,
            j: pos[0],
        })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let p = PluckerIndex::parse("14", 2, 4).unwrap();
        assert_eq!(p.entries(), &[1, 4]);
        assert_eq!(PluckerIndex::parse("[1,4]", 2, 4).unwrap(), p);
        assert_eq!(PluckerIndex::parse("1.4", 2, 4).unwrap(), p);
        assert_eq!(PluckerIndex::parse("2 10", 2, 12).unwrap().entries(), &[2, 10]);
        assert!(PluckerIndex::parse("41", 2, 4).is_err());
        assert!(PluckerIndex::parse("15", 2, 4).is_err());
        assert!(PluckerIndex::parse("123", 2, 4).is_err());
        assert_eq!(p.to_string(), "[1,4]");
    }

    #[test]
    fn invalid_dimensions() {
        assert!(matches!(
            Grassmannian::new(0, 3).unwrap_err(),
            Error::InvalidDimensions { .. }
        ));
        assert!(matches!(
            Grassmannian::new(4, 3).unwrap_err(),
            Error::InvalidDimensions { .. }
        ));
    }

    #[test]
    fn d_one_is_a_chain() {
        for n in 1..6 {
            let g = Grassmannian::new(1, n).unwrap();
            assert_eq!(g.lattice().len(), n);
            assert_eq!(g.lattice().maximal_chains().count(), 1);
        }
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_irreducible(&PluckerIndex(vec![1, 2, 3])),
            IrreducibleKind::Consecutive(0)
        );
        assert_eq!(
            classify_irreducible(&PluckerIndex(vec![1, 2, 5, 6])),
            IrreducibleKind::OneDescent { s: 2, t: 4 }
        );
        assert_eq!(
            classify_irreducible(&PluckerIndex(vec![2, 4])),
            IrreducibleKind::NotIrreducible
        );
        assert_eq!(
            classify_irreducible(&PluckerIndex(vec![3, 4])),
            IrreducibleKind::Consecutive(2)
        );
    }

    #[test]
    fn root_helpers() {
        assert_eq!(simple_root_coordinates(&[1, 1]), None);
        assert_eq!(simple_root_coordinates(&[-1, 0, 1]), Some(vec![1, 1]));
        let c = RootCell { i: 2, j: 3 };
        assert_eq!(as_positive_root(&root_weight(c, 5)), Some(c));
        assert_eq!(as_positive_root(&[1, -1, 0]), None);
    }
}
