//! The lifted valuations `mu_{C,Spec}` on the homogeneous coordinate ring
//! and their minimum `mu_Spec`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::straighten::StraighteningTable;
use super::Grassmannian;
use crate::error::{Error, Result};
use crate::lattice::{Elem, MaximalChain};
use crate::valuation::{chain_valuation, ChainValuation, Family, Laurent, QuasiValue, ValueVector};

/// A linear combination of Pluecker monomials, keyed by weakly decreasing
/// factor lists.
pub type PluckerPoly = BTreeMap<Vec<Elem>, BigRational>;

/// Rewrites every monomial of `p` into standard monomials and collects terms.
pub fn to_standard(g: &Grassmannian, table: &StraighteningTable, p: &PluckerPoly) -> PluckerPoly {
    let mut out = PluckerPoly::new();
    for (m, c) in p {
        for (s, a) in table.expand_monomial(g, m) {
            *out.entry(s).or_insert_with(BigRational::zero) += c * a;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Product of two Pluecker polynomials, without straightening.
pub fn multiply(a: &PluckerPoly, b: &PluckerPoly) -> PluckerPoly {
    let mut out = PluckerPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m: Vec<Elem> = ma.iter().chain(mb).copied().collect();
            m.sort_unstable_by(|x, y| y.cmp(x));
            *out.entry(m).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn monomial(factors: &[Elem]) -> PluckerPoly {
    let mut m = factors.to_vec();
    m.sort_unstable_by(|x, y| y.cmp(x));
    PluckerPoly::from([(m, BigRational::from_integer(1.into()))])
}

/// `mu_{C,Spec}` for one maximal chain.
#[derive(Clone, Debug)]
pub struct LiftedValuation {
    nu: ChainValuation,
}

impl LiftedValuation {
    pub fn new(g: &Grassmannian, chain: &MaximalChain) -> Result<Self> {
        Ok(LiftedValuation {
            nu: chain_valuation(g.lattice(), chain, Family::Spec)?,
        })
    }

    pub fn chain(&self) -> &MaximalChain {
        self.nu.chain()
    }

    /// `r e_0 + nu_{C,Spec}(x_hat_{l_1} ... x_hat_{l_r})`.
    pub fn direct(&self, g: &Grassmannian, factors: &[Elem]) -> ValueVector {
        let nu = self.nu.valuate(&Laurent::product_of(g.lattice(), factors));
        let mut coords = Vec::with_capacity(nu.len() + 1);
        coords.push(factors.len() as i64);
        coords.extend_from_slice(nu.coords());
        ValueVector::graded(coords)
    }

    /// Minimum over the standard monomials of `p`, which must already be
    /// straightened.
    pub fn standard_poly(&self, g: &Grassmannian, p: &PluckerPoly) -> Result<ValueVector> {
        p.iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| self.direct(g, m))
            .min_by(|a, b| a.cmp_unchecked(b))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Straightens `p` and takes the minimal term.
    pub fn value(&self, g: &Grassmannian, table: &StraighteningTable, p: &PluckerPoly) -> Result<ValueVector> {
        self.standard_poly(g, &to_standard(g, table, p))
    }
}

/// `mu_{C,Spec}` for every maximal chain, in chain-stream order.
#[derive(Clone, Debug)]
pub struct MuFamily {
    valuations: Vec<LiftedValuation>,
}

impl MuFamily {
    pub fn new(g: &Grassmannian) -> Result<Self> {
        let chains: Vec<MaximalChain> = g.lattice().maximal_chains().collect();
        let valuations = chains
            .par_iter()
            .map(|c| LiftedValuation::new(g, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(MuFamily { valuations })
    }

    pub fn valuations(&self) -> &[LiftedValuation] {
        &self.valuations
    }

    pub fn len(&self) -> usize {
        self.valuations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valuations.is_empty()
    }

    /// `mu_Spec` of a polynomial: straighten once, then minimise over chains.
    pub fn quasi(&self, g: &Grassmannian, table: &StraighteningTable, p: &PluckerPoly) -> Result<QuasiValue> {
        let standard = to_standard(g, table, p);
        let values = self
            .valuations
            .par_iter()
            .map(|v| v.standard_poly(g, &standard))
            .collect::<Result<Vec<_>>>()?;
        let mut best: Option<QuasiValue> = None;
        for (i, v) in values.into_iter().enumerate() {
            match &mut best {
                None => best = Some(QuasiValue { value: v, argmin: vec![i] }),
                Some(b) => match v.cmp_unchecked(&b.value) {
                    Ordering::Less => *b = QuasiValue { value: v, argmin: vec![i] },
                    Ordering::Equal => b.argmin.push(i),
                    Ordering::Greater => {}
                },
            }
        }
        best.ok_or(Error::ZeroPolynomial)
    }

    pub fn quasi_monomial(&self, g: &Grassmannian, table: &StraighteningTable, factors: &[Elem]) -> Result<QuasiValue> {
        self.quasi(g, table, &monomial(factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bottom_has_value_e0() {
        let g = Grassmannian::new(2, 4).unwrap();
        let table = StraighteningTable::build(&g).unwrap();
        for c in g.lattice().maximal_chains() {
            let mu = LiftedValuation::new(&g, &c).unwrap();
            let v = mu.value(&g, &table, &monomial(&[g.lattice().bottom()])).unwrap();
            assert_eq!(v.coords(), &[1, 0, 0, 0, 0]);
        }
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let g = Grassmannian::new(2, 4).unwrap();
        let table = StraighteningTable::build(&g).unwrap();
        let mu = MuFamily::new(&g).unwrap();
        assert_eq!(mu.quasi(&g, &table, &PluckerPoly::new()).unwrap_err(), Error::ZeroPolynomial);
    }
}
