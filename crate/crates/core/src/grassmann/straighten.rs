//! Exact degree-2 straightening of incomparable Plücker products.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::plucker::{expansion_matrix, Minors};
use super::Grassmannian;
use crate::error::{Error, Result};
use crate::lattice::Elem;
use crate::linalg::{solve, Solution};
use crate::qpoly::QPolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraighteningTerm {
    pub k1: Elem,
    pub k2: Elem,
    pub coeff: BigRational,
}

/// `p_{I_1} p_{I_2} = sum a_{K_1,K_2} p_{K_1} p_{K_2}` over standard pairs
/// `K_1 >= K_2`. The pair is stored with the smaller element index first;
/// the leading term `(I_1 v I_2, I_1 ^ I_2)` comes first in `terms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Straightening {
    pub pair: (Elem, Elem),
    pub terms: Vec<StraighteningTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermExport {
    pub k1: String,
    pub k2: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StraighteningExport {
    pub pair: [String; 2],
    pub terms: Vec<TermExport>,
}

impl Straightening {
    pub fn coefficient(&self, k1: Elem, k2: Elem) -> BigRational {
        self.terms
            .iter()
            .find(|t| t.k1 == k1 && t.k2 == k2)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self, g: &Grassmannian) -> (Elem, Elem) {
        let l = g.lattice();
        (l.join(self.pair.0, self.pair.1), l.meet(self.pair.0, self.pair.1))
    }

    pub fn leading_coefficient(&self, g: &Grassmannian) -> BigRational {
        let (j, m) = self.leading(g);
        self.coefficient(j, m)
    }

    pub fn nonleading(&self, g: &Grassmannian) -> impl Iterator<Item = &StraighteningTerm> {
        let lead = self.leading(g);
        self.terms.iter().filter(move |t| (t.k1, t.k2) != lead)
    }

    /// `p_{I_1} p_{I_2} - sum a p_{K_1} p_{K_2}` in the Plücker variables.
    pub fn relation(&self, g: &Grassmannian) -> QPolynomial {
        let nvars = g.lattice().len();
        let mut p = QPolynomial::zero(nvars);
        p.add_term(super::plucker::quadratic(g, self.pair.0, self.pair.1), BigRational::one());
        for t in &self.terms {
            p.add_term(super::plucker::quadratic(g, t.k1, t.k2), -t.coeff.clone());
        }
        p
    }

    /// Expands the relation on minors; zero means the identity holds.
    pub fn residual(&self, g: &Grassmannian, minors: &Minors) -> QPolynomial {
        minors.expand(&self.relation(g))
    }

    pub fn export(&self, g: &Grassmannian) -> StraighteningExport {
        let l = g.lattice();
        StraighteningExport {
            pair: [l.label(self.pair.0).to_string(), l.label(self.pair.1).to_string()],
            terms: self
                .terms
                .iter()
                .map(|t| TermExport {
                    k1: l.label(t.k1).to_string(),
                    k2: l.label(t.k2).to_string(),
                    coeff: t.coeff.to_string(),
                })
                .collect(),
        }
    }
}

fn same_multiset(g: &Grassmannian, a: &[Elem], b: &[Elem]) -> bool {
    let collect = |xs: &[Elem]| {
        let mut v: Vec<usize> = xs.iter().flat_map(|&e| g.tuple(e).entries().to_vec()).collect();
        v.sort_unstable();
        v
    };
    collect(a) == collect(b)
}

/// Standard pairs `K_1 >= K_2` with `K_1 >= I_1 v I_2`, `K_2 <= I_1 ^ I_2`
/// and the same index multiset as `I_1, I_2`.
pub fn candidates(g: &Grassmannian, a: Elem, b: Elem) -> Vec<(Elem, Elem)> {
    let l = g.lattice();
    let (j, m) = (l.join(a, b), l.meet(a, b));
    let mut out = Vec::new();
    for k1 in l.elements().filter(|&k| l.leq(j, k)) {
        for k2 in l.elements().filter(|&k| l.leq(k, m)) {
            if same_multiset(g, &[k1, k2], &[a, b]) {
                out.push((k1, k2));
            }
        }
    }
    out
}

pub fn straighten(g: &Grassmannian, minors: &Minors, a: Elem, b: Elem) -> Result<Straightening> {
    let l = g.lattice();
    l.check(a)?;
    l.check(b)?;
    if l.comparable(a, b) {
        return Err(Error::ComparablePair(l.label(a).into(), l.label(b).into()));
    }
    let pair = (a.min(b), a.max(b));
    let name = || format!("{} * {}", l.label(pair.0), l.label(pair.1));
    let cands = candidates(g, a, b);
    let target = minors.product(a, b);
    let mut columns: Vec<QPolynomial> = cands.iter().map(|&(k1, k2)| minors.product(k1, k2)).collect();
    columns.push(target);
    let mut system = expansion_matrix(&columns);
    let rhs: Vec<BigRational> = system.iter_mut().map(|row| row.pop().unwrap()).collect();
    let Solution::Unique(x) = solve(&system, &rhs) else {
        return Err(Error::SingularStraightening(name()));
    };
    let lead = (l.join(a, b), l.meet(a, b));
    let mut terms: Vec<StraighteningTerm> = cands
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .map(|((k1, k2), coeff)| StraighteningTerm { k1, k2, coeff })
        .collect();
    terms.sort_by_key(|t| ((t.k1, t.k2) != lead, std::cmp::Reverse(t.k1), t.k2));
    let s = Straightening { pair, terms };
    if !s.residual(g, minors).is_zero() {
        return Err(Error::SingularStraightening(name()));
    }
    Ok(s)
}

/// One straightening relation per incomparable pair.
#[derive(Clone, Debug)]
pub struct StraighteningTable {
    entries: BTreeMap<(Elem, Elem), Straightening>,
}

impl StraighteningTable {
    pub fn build(g: &Grassmannian) -> Result<Self> {
        let minors = Minors::new(g);
        let l = g.lattice();
        let pairs: Vec<(Elem, Elem)> = l
            .elements()
            .flat_map(|a| l.elements().filter(move |&b| b > a).map(move |b| (a, b)))
            .filter(|&(a, b)| !l.comparable(a, b))
            .collect();
        let entries = pairs
            .par_iter()
            .map(|&(a, b)| straighten(g, &minors, a, b).map(|s| ((a, b), s)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(StraighteningTable { entries })
    }

    pub fn from_entries(entries: impl IntoIterator<Item = Straightening>) -> Self {
        StraighteningTable {
            entries: entries.into_iter().map(|s| (s.pair, s)).collect(),
        }
    }

    pub fn get(&self, a: Elem, b: Elem) -> Option<&Straightening> {
        self.entries.get(&(a.min(b), a.max(b)))
    }

    pub fn entries(&self) -> impl Iterator<Item = &Straightening> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rewrites a product of Plücker variables into standard monomials by
    /// repeatedly straightening the first incomparable pair of factors.
    /// Factor lists in the result are weakly decreasing.
    pub fn expand_monomial(&self, g: &Grassmannian, factors: &[Elem]) -> Vec<(Vec<Elem>, BigRational)> {
        let l = g.lattice();
        let mut done: BTreeMap<Vec<Elem>, BigRational> = BTreeMap::new();
        let mut work = vec![(factors.to_vec(), BigRational::one())];
        while let Some((m, c)) = work.pop() {
            let pair = (0..m.len())
                .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
                .find(|&(i, j)| !l.comparable(m[i], m[j]));
            let Some((i, j)) = pair else {
                let key = crate::hibi::StandardMonomial::new(l, &m)
                    .expect("pairwise comparable factors form a multichain")
                    .factors()
                    .to_vec();
                *done.entry(key).or_insert_with(BigRational::zero) += c;
                continue;
            };
            let s = self.get(m[i], m[j]).expect("table covers every incomparable pair");
            for t in &s.terms {
                let mut next: Vec<Elem> = m
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, &e)| e)
                    .collect();
                next.push(t.k1);
                next.push(t.k2);
                work.push((next, &c * &t.coeff));
            }
        }
        done.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}
