//! The Hibi ring of a distributive lattice: its binomial relations, the
//! monomial model in `y_0, ..., y_N`, and standard monomials.

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{DistributiveLattice, Elem, Enumeration, MaximalChain};

/// `X_a X_b - X_{a ^ b} X_{a v b}` for an incomparable pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HibiRelation {
    pub pair: (Elem, Elem),
    pub join: Elem,
    pub meet: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HibiRelationExport {
    pub pair: [String; 2],
    pub join: String,
    pub meet: String,
}

impl HibiRelation {
    pub fn export(&self, lattice: &DistributiveLattice) -> HibiRelationExport {
        HibiRelationExport {
            pair: [
                lattice.label(self.pair.0).to_string(),
                lattice.label(self.pair.1).to_string(),
            ],
            join: lattice.label(self.join).to_string(),
            meet: lattice.label(self.meet).to_string(),
        }
    }
}

/// One relation per unordered incomparable pair, ordered by element index.
pub fn hibi_ideal_generators(lattice: &DistributiveLattice) -> Vec<HibiRelation> {
    let mut out = Vec::new();
    for a in lattice.elements() {
        for b in lattice.elements().filter(|&b| b > a) {
            if !lattice.comparable(a, b) {
                out.push(HibiRelation {
                    pair: (a, b),
                    join: lattice.join(a, b),
                    meet: lattice.meet(a, b),
                });
            }
        }
    }
    out
}

/// Exponent vector over `y_0, ..., y_N`, where `y_i` belongs to the `i`-th
/// irreducible of some enumeration. Entries may be negative for Laurent
/// monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial {
    exps: Vec<i64>,
}

impl YMonomial {
    pub fn one(rank: usize) -> Self {
        YMonomial {
            exps: vec![0; rank + 1],
        }
    }

    pub fn from_exponents(exps: Vec<i64>) -> Self {
        YMonomial { exps }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> i64 {
        self.exps[i]
    }

    pub fn mul(&self, other: &Self) -> Self {
        YMonomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        YMonomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Image of `x_l` in `A(L)`: `y_0` times `y_i` for each `m_i` in `Spec(l)*`.
pub fn element_to_y(lattice: &DistributiveLattice, enumeration: &Enumeration, e: Elem) -> YMonomial {
    let spec = lattice.spec(e);
    let mut exps = vec![0; lattice.rank() + 1];
    exps[0] = 1;
    for (i, &m) in enumeration.order().iter().enumerate() {
        let p = lattice.irreducible_index(m).expect("enumeration lists irreducibles");
        if spec.contains(p) {
            exps[i + 1] = 1;
        }
    }
    YMonomial { exps }
}

/// `x_l / x_bottom` in the `y` variables of the chain's enumeration; for the
/// bottom element this returns `x_bottom = y_0` (the degree marker).
pub fn xhat(lattice: &DistributiveLattice, chain: &MaximalChain, e: Elem) -> Result<YMonomial> {
    let enumeration = lattice.chain_to_enumeration(chain)?;
    let y = element_to_y(lattice, &enumeration, e);
    if e == lattice.bottom() {
        return Ok(y);
    }
    let mut exps = y.exps;
    exps[0] = 0;
    Ok(YMonomial { exps })
}

/// `y`-image of a product of lattice variables.
pub fn y_image(lattice: &DistributiveLattice, enumeration: &Enumeration, factors: &[Elem]) -> YMonomial {
    factors
        .iter()
        .fold(YMonomial::one(lattice.rank()), |acc, &e| {
            acc.mul(&element_to_y(lattice, enumeration, e))
        })
}

/// A product `x_{l_1} ... x_{l_r}` with `l_1 >= ... >= l_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardMonomial {
    factors: Vec<Elem>,
}

impl StandardMonomial {
    /// Sorts the factors; returns `None` unless they form a multichain.
    pub fn new(lattice: &DistributiveLattice, factors: &[Elem]) -> Option<Self> {
        let mut f = factors.to_vec();
        f.sort_by(|a, b| b.cmp(a));
        f.windows(2)
            .all(|w| lattice.leq(w[1], w[0]))
            .then_some(StandardMonomial { factors: f })
    }

    pub fn empty() -> Self {
        StandardMonomial { factors: vec![] }
    }

    /// Weakly decreasing factor list.
    pub fn factors(&self) -> &[Elem] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn labels(&self, lattice: &DistributiveLattice) -> Vec<String> {
        self.factors.iter().map(|&e| lattice.label(e).to_string()).collect()
    }
}

pub fn is_standard(lattice: &DistributiveLattice, factors: &[Elem]) -> bool {
    StandardMonomial::new(lattice, factors).is_some()
}

/// All standard monomials of degree `r` (the `r`-multichains of `L`).
pub fn standard_basis(lattice: &DistributiveLattice, r: usize) -> Vec<StandardMonomial> {
    fn extend(
        lattice: &DistributiveLattice,
        r: usize,
        acc: &mut Vec<Elem>,
        out: &mut Vec<StandardMonomial>,
    ) {
        if acc.len() == r {
            out.push(StandardMonomial { factors: acc.clone() });
            return;
        }
        let candidates: Vec<Elem> = match acc.last() {
            None => lattice.elements().collect(),
            Some(&last) => lattice.elements().filter(|&e| lattice.leq(e, last)).collect(),
        };
        for e in candidates {
            acc.push(e);
            extend(lattice, r, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    extend(lattice, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// Every intermediate factor list (sorted by element index) produced while
/// replacing the leftmost incomparable adjacent pair `(a, b)` by
/// `(a ^ b, a v b)`. The last entry is a multichain.
pub fn rewrite_trace(lattice: &DistributiveLattice, factors: &[Elem]) -> Vec<Vec<Elem>> {
    let mut current = factors.to_vec();
    current.sort();
    let mut trace = vec![current.clone()];
    while let Some(k) = current
        .windows(2)
        .position(|w| !lattice.comparable(w[0], w[1]))
    {
        let (a, b) = (current[k], current[k + 1]);
        current[k] = lattice.meet(a, b);
        current[k + 1] = lattice.join(a, b);
        current.sort();
        trace.push(current.clone());
    }
    trace
}

pub fn rewrite_to_standard(lattice: &DistributiveLattice, factors: &[Elem]) -> StandardMonomial {
    let last = rewrite_trace(lattice, factors).pop().unwrap_or_default();
    StandardMonomial::new(lattice, &last).expect("rewriting ends in a multichain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Grassmannian;

    #[test]
    fn degree_zero_and_one() {
        let g = Grassmannian::new(2, 4).unwrap();
        let l = g.lattice();
        assert_eq!(standard_basis(l, 0), vec![StandardMonomial::empty()]);
        assert_eq!(standard_basis(l, 1).len(), l.len());
    }

    #[test]
    fn standard_input_is_fixed() {
        let g = Grassmannian::new(2, 4).unwrap();
        let l = g.lattice();
        let f = [g.elem(&[2, 4]).unwrap(), g.elem(&[1, 3]).unwrap()];
        assert_eq!(rewrite_to_standard(l, &f).factors(), &f);
        assert_eq!(rewrite_trace(l, &f).len(), 1);
    }

    #[test]
    fn xhat_of_bottom_is_the_degree_marker() {
        let g = Grassmannian::new(2, 4).unwrap();
        let l = g.lattice();
        let c = l.maximal_chains().next().unwrap();
        let y = xhat(l, &c, l.bottom()).unwrap();
        assert_eq!(y.exponents(), &[1, 0, 0, 0, 0]);
    }
}
