//! Chain valuations on the function field of a Hibi variety and the
//! min-quasi-valuations built from them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hibi::{StandardMonomial, YMonomial};
use crate::lattice::{DistributiveLattice, Elem, Enumeration, MaximalChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderTag {
    /// `a > b` iff the highest-index nonzero coordinate of `a - b` is positive.
    Revlex,
    /// Coordinate 0 first, then `Revlex` on the rest.
    GradedRevlex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ValueVector {
    coords: Vec<i64>,
    tag: OrderTag,
}

impl ValueVector {
    pub fn new(coords: Vec<i64>, tag: OrderTag) -> Self {
        ValueVector { coords, tag }
    }

    pub fn revlex(coords: Vec<i64>) -> Self {
        Self::new(coords, OrderTag::Revlex)
    }

    pub fn graded(coords: Vec<i64>) -> Self {
        Self::new(coords, OrderTag::GradedRevlex)
    }

    pub fn zero(len: usize, tag: OrderTag) -> Self {
        Self::new(vec![0; len], tag)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn tag(&self) -> OrderTag {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::IncomparableValues(format!("{:?} vs {:?}", self.tag, other.tag)));
        }
        if self.len() != other.len() {
            return Err(Error::IncomparableValues(format!(
                "lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.check(other)?;
        Ok(self.cmp_unchecked(other))
    }

    pub(crate) fn cmp_unchecked(&self, other: &Self) -> Ordering {
        let revlex = |a: &[i64], b: &[i64]| {
            a.iter()
                .zip(b)
                .rev()
                .map(|(x, y)| x.cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        };
        match self.tag {
            OrderTag::Revlex => revlex(&self.coords, &other.coords),
            OrderTag::GradedRevlex => self.coords[0]
                .cmp(&other.coords[0])
                .then_with(|| revlex(&self.coords[1..], &other.coords[1..])),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, k: i64) -> Self {
        ValueVector::new(self.coords.iter().map(|c| c * k).collect(), self.tag)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        ValueVector::new(
            self.coords.iter().zip(&other.coords).map(|(&a, &b)| f(a, b)).collect(),
            self.tag,
        )
    }
}

impl PartialOrd for ValueVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

pub fn compare(a: &ValueVector, b: &ValueVector) -> Result<Ordering> {
    a.compare(b)
}

impl fmt::Display for ValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            match (i, self.tag) {
                (0, _) => write!(f, "{c}")?,
                (1, OrderTag::GradedRevlex) => write!(f, " | {c}")?,
                _ => write!(f, ", {c}")?,
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Spec,
    MaxSpec,
    Height,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Spec, Family::MaxSpec, Family::Height];

    pub fn name(self) -> &'static str {
        match self {
            Family::Spec => "spec",
            Family::MaxSpec => "maxspec",
            Family::Height => "ht",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "spec" => Ok(Family::Spec),
            "maxspec" => Ok(Family::MaxSpec),
            "ht" | "height" => Ok(Family::Height),
            other => Err(format!("unknown family `{other}` (expected spec, maxspec or ht)")),
        }
    }
}

/// A Laurent monomial in the `x_hat` generators written independently of any
/// chain: entry `p` is the exponent of `y_p` for the irreducible with index
/// `p`, so `x_hat_l` is the indicator of `Spec(l)*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent(Vec<i64>);

impl Laurent {
    pub fn one(rank: usize) -> Self {
        Laurent(vec![0; rank])
    }

    pub fn from_exponents(exps: Vec<i64>) -> Self {
        Laurent(exps)
    }

    pub fn xhat(lattice: &DistributiveLattice, e: Elem) -> Self {
        let spec = lattice.ideal(e);
        Laurent((0..lattice.rank()).map(|p| spec.contains(p) as i64).collect())
    }

    /// `x_hat_{l_1} ... x_hat_{l_r}` for a list of factors with repetition.
    pub fn product_of(lattice: &DistributiveLattice, factors: &[Elem]) -> Self {
        factors
            .iter()
            .fold(Self::one(lattice.rank()), |acc, &e| acc.mul(&Self::xhat(lattice, e)))
    }

    /// `y` exponents in the order of `enumeration` (without `y_0`).
    pub fn from_y(lattice: &DistributiveLattice, enumeration: &Enumeration, y: &[i64]) -> Self {
        let mut exps = vec![0; lattice.rank()];
        for (i, &m) in enumeration.order().iter().enumerate() {
            exps[lattice.irreducible_index(m).unwrap()] = y[i];
        }
        Laurent(exps)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Laurent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Self) -> Self {
        Laurent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i64) -> Self {
        Laurent(self.0.iter().map(|a| a * k).collect())
    }
}

/// A finite linear combination of Laurent monomials with rational
/// coefficients; like terms are always combined and zeros dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Laurent, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Laurent) -> Self {
        let mut p = Self::zero();
        p.add_term(m, BigRational::from_integer(1.into()));
        p
    }

    pub fn add_term(&mut self, m: Laurent, c: BigRational) {
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Laurent, &BigRational)> {
        self.terms.iter()
    }
}

impl FromIterator<(Laurent, BigRational)> for LaurentPoly {
    fn from_iter<T: IntoIterator<Item = (Laurent, BigRational)>>(iter: T) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

/// `nu_{B,C}` for one maximal chain and one of the three families.
#[derive(Clone, Debug)]
pub struct ChainValuation {
    chain: MaximalChain,
    enumeration: Enumeration,
    positions: Vec<usize>,
    family: Family,
    columns: Vec<Vec<i64>>,
}

pub fn chain_valuation(
    lattice: &DistributiveLattice,
    chain: &MaximalChain,
    family: Family,
) -> Result<ChainValuation> {
    let enumeration = lattice.chain_to_enumeration(chain)?;
    let positions = lattice.positions(&enumeration);
    let n = lattice.rank();
    let columns: Vec<Vec<i64>> = (1..=n)
        .map(|j| {
            let c = chain.get(j);
            let mut col = vec![0; n];
            match family {
                Family::Spec => {
                    for p in lattice.ideal(c).iter() {
                        col[positions[p] - 1] = 1;
                    }
                }
                Family::MaxSpec => {
                    for m in lattice.max_spec(c) {
                        if let Some(p) = lattice.irreducible_index(m) {
                            col[positions[p] - 1] = 1;
                        }
                    }
                }
                Family::Height => col[j - 1] = 1,
            }
            col
        })
        .collect();
    if determinant(&columns) == 0 {
        let labels: Vec<&str> = chain.elements().iter().map(|&e| lattice.label(e)).collect();
        return Err(Error::SingularValuation(labels.join(" < ")));
    }
    Ok(ChainValuation {
        chain: chain.clone(),
        enumeration,
        positions,
        family,
        columns,
    })
}

/// Fraction-free Gaussian elimination.
pub fn determinant(columns: &[Vec<i64>]) -> i128 {
    let n = columns.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| columns[j][i] as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if pivot != k {
            a.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

impl ChainValuation {
    pub fn chain(&self) -> &MaximalChain {
        &self.chain
    }

    pub fn enumeration(&self) -> &Enumeration {
        &self.enumeration
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Column `j` (1-based): the value of `x_hat_{c_j}`.
    pub fn column(&self, j: usize) -> &[i64] {
        &self.columns[j - 1]
    }

    /// The matrix `B` as rows.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.columns[j][i]).collect()).collect()
    }

    pub fn determinant(&self) -> i128 {
        determinant(&self.columns)
    }

    /// Exponents in the chain's `y_1..y_N` (enumeration order).
    pub fn to_y(&self, w: &Laurent) -> Vec<i64> {
        let mut y = vec![0; self.rank()];
        for (p, &e) in w.exponents().iter().enumerate() {
            y[self.positions[p] - 1] = e;
        }
        y
    }

    /// `x_hat_{c_j} = y_1 ... y_j`, so the `x_hat` exponent of `c_j` is
    /// `y_j - y_{j+1}`.
    pub fn y_to_xhat(&self, y: &[i64]) -> Vec<i64> {
        (0..y.len())
            .map(|j| y[j] - y.get(j + 1).copied().unwrap_or(0))
            .collect()
    }

    /// `B n` for an exponent vector `n` in the chain's `x_hat` coordinates.
    pub fn valuate_xhat(&self, n: &[i64]) -> ValueVector {
        let mut v = vec![0; self.rank()];
        for (col, &k) in self.columns.iter().zip(n) {
            if k != 0 {
                for (vi, &b) in v.iter_mut().zip(col) {
                    *vi += k * b;
                }
            }
        }
        ValueVector::revlex(v)
    }

    /// Value of a Laurent monomial given by its `y` exponents in this chain's
    /// enumeration; a `y_0` entry, if present, is ignored.
    pub fn valuate_laurent(&self, y: &YMonomial) -> ValueVector {
        let exps = y.exponents();
        let exps = if exps.len() == self.rank() + 1 { &exps[1..] } else { exps };
        self.valuate_xhat(&self.y_to_xhat(exps))
    }

    pub fn valuate(&self, w: &Laurent) -> ValueVector {
        self.valuate_xhat(&self.y_to_xhat(&self.to_y(w)))
    }

    pub fn valuate_poly(&self, p: &LaurentPoly) -> Result<ValueVector> {
        p.terms()
            .map(|(m, _)| self.valuate(m))
            .min_by(|a, b| a.cmp_unchecked(b))
            .ok_or(Error::ZeroPolynomial)
    }
}

/// All chain valuations of one family, in chain-stream order.
#[derive(Clone, Debug)]
pub struct ValuationFamily {
    family: Family,
    valuations: Vec<ChainValuation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiValue {
    pub value: ValueVector,
    /// Indices (into the chain stream) of the chains attaining the minimum.
    pub argmin: Vec<usize>,
}

impl ValuationFamily {
    pub fn new(lattice: &DistributiveLattice, family: Family) -> Result<Self> {
        let chains: Vec<MaximalChain> = lattice.maximal_chains().collect();
        let valuations = chains
            .par_iter()
            .map(|c| chain_valuation(lattice, c, family))
            .collect::<Result<Vec<_>>>()?;
        Ok(ValuationFamily { family, valuations })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn valuations(&self) -> &[ChainValuation] {
        &self.valuations
    }

    pub fn len(&self) -> usize {
        self.valuations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valuations.is_empty()
    }

    fn fold_min(values: Vec<ValueVector>) -> QuasiValue {
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
        best.expect("a lattice has at least one maximal chain")
    }

    pub fn quasi_monomial(&self, w: &Laurent) -> QuasiValue {
        Self::fold_min(self.valuations.par_iter().map(|v| v.valuate(w)).collect())
    }

    pub fn quasi(&self, p: &LaurentPoly) -> Result<QuasiValue> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let values = self
            .valuations
            .par_iter()
            .map(|v| v.valuate_poly(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::fold_min(values))
    }
}

/// Minimum of the chain valuations of `family` over all maximal chains.
pub fn quasi_valuation(
    lattice: &DistributiveLattice,
    family: Family,
    p: &LaurentPoly,
) -> Result<QuasiValue> {
    ValuationFamily::new(lattice, family)?.quasi(p)
}

/// Multiplication in the associated graded algebra: the product of two
/// standard monomials survives exactly when their factors form a multichain.
pub fn graded_product(
    lattice: &DistributiveLattice,
    a: &StandardMonomial,
    b: &StandardMonomial,
) -> Option<StandardMonomial> {
    let factors: Vec<Elem> = a.factors().iter().chain(b.factors()).copied().collect();
    StandardMonomial::new(lattice, &factors)
}
