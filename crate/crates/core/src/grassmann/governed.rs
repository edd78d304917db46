//! The "governed by a lattice" conditions on a degree-2 straightening table.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::plucker::{expansion_matrix, Minors};
use super::straighten::StraighteningTable;
use super::Grassmannian;
use crate::hibi::standard_basis;
use crate::lattice::Elem;
use crate::linalg::{rank, sparse_rank_mod_p};
use crate::qpoly::QPolynomial;

/// Which alternative of condition (b) held for one `(m_1, m_2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Case {
    /// `h > m_1` for some `h` in `maxSpec(K_1)`.
    Dominates { h: Elem },
    /// `h = m_1` and `h' > m_2` for distinct `h, h'` in `maxSpec(K_1)`.
    SharedCorner { h: Elem, h2: Elem },
    /// `h = m_1` in `maxSpec(K_1)` and `h' >= m_2` in `maxSpec(K_2)`.
    SecondFactor { h: Elem, h2: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub k1: Elem,
    pub k2: Elem,
    pub m1: Elem,
    pub m2: Elem,
    pub case: Option<Case>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub pair: (Elem, Elem),
    pub leading_coefficient: BigRational,
    pub checks: Vec<Check>,
}

impl PairReport {
    pub fn leading_ok(&self) -> bool {
        self.leading_coefficient.is_one()
    }

    pub fn passed(&self) -> bool {
        self.leading_ok() && self.checks.iter().all(|c| c.case.is_some())
    }
}

#[derive(Clone, Debug)]
pub struct GovernedReport {
    /// Degree-2 standard monomials are linearly independent on minors.
    pub basis_ok: bool,
    pub pairs: Vec<PairReport>,
}

impl GovernedReport {
    pub fn passed(&self) -> bool {
        self.basis_ok && self.pairs.iter().all(PairReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairReport> {
        self.pairs.iter().filter(|p| !p.passed())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessExport {
    pub k1: String,
    pub k2: String,
    pub m1: String,
    pub m2: String,
    pub case: &'static str,
    pub h: Option<String>,
    pub h2: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairExport {
    pub pair: [String; 2],
    pub status: &'static str,
    pub leading_coefficient: String,
    pub witnesses: Vec<WitnessExport>,
}

impl PairReport {
    pub fn export(&self, g: &Grassmannian) -> PairExport {
        let l = g.lattice();
        let name = |e: Elem| l.label(e).to_string();
        PairExport {
            pair: [name(self.pair.0), name(self.pair.1)],
            status: if self.passed() { "pass" } else { "fail" },
            leading_coefficient: self.leading_coefficient.to_string(),
            witnesses: self
                .checks
                .iter()
                .map(|c| {
                    let (case, h, h2) = match c.case {
                        Some(Case::Dominates { h }) => ("dominates", Some(name(h)), None),
                        Some(Case::SharedCorner { h, h2 }) => ("sharedCorner", Some(name(h)), Some(name(h2))),
                        Some(Case::SecondFactor { h, h2 }) => ("secondFactor", Some(name(h)), Some(name(h2))),
                        None => ("none", None, None),
                    };
                    WitnessExport {
                        k1: name(c.k1),
                        k2: name(c.k2),
                        m1: name(c.m1),
                        m2: name(c.m2),
                        case,
                        h,
                        h2,
                    }
                })
                .collect(),
        }
    }
}

/// Condition (b) for one nonleading term and one `(m_1, m_2)`, trying the
/// alternatives in order.
pub fn classify(g: &Grassmannian, k1: Elem, k2: Elem, m1: Elem, m2: Elem) -> Option<Case> {
    let l = g.lattice();
    let top = l.max_spec(k1);
    let bottom = l.max_spec(k2);
    if let Some(&h) = top.iter().find(|&&h| l.lt(m1, h)) {
        return Some(Case::Dominates { h });
    }
    if top.contains(&m1) {
        if let Some(&h2) = top.iter().find(|&&h2| h2 != m1 && l.lt(m2, h2)) {
            return Some(Case::SharedCorner { h: m1, h2 });
        }
        if let Some(&h2) = bottom.iter().find(|&&h2| l.leq(m2, h2)) {
            return Some(Case::SecondFactor { h: m1, h2 });
        }
    }
    None
}

pub fn check_pair(g: &Grassmannian, s: &super::straighten::Straightening) -> PairReport {
    let l = g.lattice();
    let (j, m) = s.leading(g);
    let mut checks = Vec::new();
    for t in s.nonleading(g) {
        for &m1 in &l.max_spec(j) {
            for &m2 in &l.max_spec(m) {
                if l.leq(m2, m1) {
                    checks.push(Check {
                        k1: t.k1,
                        k2: t.k2,
                        m1,
                        m2,
                        case: classify(g, t.k1, t.k2, m1, m2),
                    });
                }
            }
        }
    }
    PairReport {
        pair: s.pair,
        leading_coefficient: s.leading_coefficient(g),
        checks,
    }
}

/// Degree-2 standard monomials map to linearly independent polynomials.
/// Full rank modulo a prime is conclusive; otherwise the exact rank decides.
pub fn standard_monomials_independent(g: &Grassmannian, minors: &Minors) -> bool {
    let products: Vec<QPolynomial> = standard_basis(g.lattice(), 2)
        .iter()
        .map(|s| minors.product(s.factors()[0], s.factors()[1]))
        .collect();
    let mut index = HashMap::new();
    let rows: Vec<Vec<(usize, i64)>> = products
        .iter()
        .map(|p| {
            p.terms()
                .map(|(e, c)| {
                    let next = index.len();
                    let col = *index.entry(e.clone()).or_insert(next);
                    let c = c.to_integer().to_i64().expect("minor products have small integer coefficients");
                    (col, c)
                })
                .collect()
        })
        .collect();
    sparse_rank_mod_p(&rows) == rows.len() || rank(&expansion_matrix(&products)) == products.len()
}

pub fn governed_check(g: &Grassmannian, table: &StraighteningTable) -> GovernedReport {
    let minors = Minors::new(g);
    GovernedReport {
        basis_ok: standard_monomials_independent(g, &minors),
        pairs: table.entries().map(|s| check_pair(g, s)).collect(),
    }
}
