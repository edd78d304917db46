//! Property checks shared by the command line `verify` subcommand.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::grassmann::governed::governed_check;
use crate::grassmann::mu::{monomial, MuFamily};
use crate::grassmann::plucker::Minors;
use crate::grassmann::straighten::StraighteningTable;
use crate::grassmann::Grassmannian;
use crate::hibi::{is_standard, rewrite_to_standard, standard_basis};
use crate::lattice::{DistributiveLattice, Elem};
use crate::polytope::{
    beta, fflv_polytope, no_body, order_polytope, to_integer, to_rational, transfer_inverse, transfer_unchecked,
    triangulate, RationalPolytope,
};
use crate::valuation::{Family, Laurent, ValuationFamily, ValueVector};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Violation counts of the chain-minimum trichotomy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Tally {
    pub monomials: usize,
    /// The minimum exceeds some chain value.
    pub bound: usize,
    /// A standard monomial attains the minimum on a chain not containing its support.
    pub only_if: usize,
    /// A standard monomial whose value is not the sum of its factors' values.
    pub additive: usize,
    /// A nonstandard monomial whose value is not strictly above that sum.
    pub strict: usize,
}

impl Tally {
    pub fn clean(&self) -> bool {
        self.bound + self.only_if + self.additive + self.strict == 0
    }
}

/// Monomials `x_{l_1}^{n_1} ... x_{l_k}^{n_k}` with distinct `l_i`,
/// `k <= max_factors` and `1 <= n_i <= max_exp`.
pub fn monomials(l: &DistributiveLattice, max_factors: usize, max_exp: i64) -> Vec<Vec<(Elem, i64)>> {
    fn go(
        l: &DistributiveLattice,
        max_factors: usize,
        max_exp: i64,
        start: usize,
        acc: &mut Vec<(Elem, i64)>,
        out: &mut Vec<Vec<(Elem, i64)>>,
    ) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        if acc.len() == max_factors {
            return;
        }
        for i in start..l.len() {
            for k in 1..=max_exp {
                acc.push((Elem(i), k));
                go(l, max_factors, max_exp, i + 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(l, max_factors, max_exp, 0, &mut Vec::new(), &mut out);
    out
}

fn expand(m: &[(Elem, i64)]) -> Vec<Elem> {
    m.iter().flat_map(|&(e, k)| std::iter::repeat_n(e, k as usize)).collect()
}

/// Trichotomy counts for the `x_hat` quasi-valuation of one family.
pub fn trichotomy(l: &DistributiveLattice, family: Family, max_factors: usize, max_exp: i64) -> Result<Tally> {
    let fam = ValuationFamily::new(l, family)?;
    let single: Vec<ValueVector> = l.elements().map(|e| fam.quasi_monomial(&Laurent::xhat(l, e)).value).collect();
    let mut t = Tally::default();
    for m in monomials(l, max_factors, max_exp) {
        t.monomials += 1;
        let factors = expand(&m);
        let w = Laurent::product_of(l, &factors);
        let q = fam.quasi_monomial(&w);
        let standard = is_standard(l, &factors);
        for (i, v) in fam.valuations().iter().enumerate() {
            if q.value.compare(&v.valuate(&w))? == Ordering::Greater {
                t.bound += 1;
            }
            let on_chain = m.iter().all(|&(e, _)| v.chain().contains(e));
            if standard && q.argmin.contains(&i) && !on_chain {
                t.only_if += 1;
            }
        }
        let mut sum = ValueVector::zero(l.rank(), q.value.tag());
        for &(e, k) in &m {
            sum = sum.checked_add(&single[e.index()].scale(k))?;
        }
        let cmp = q.value.compare(&sum)?;
        if standard && cmp != Ordering::Equal {
            t.additive += 1;
        }
        if !standard && cmp != Ordering::Greater {
            t.strict += 1;
        }
    }
    Ok(t)
}

/// Trichotomy counts for `mu_Spec` on products of at most `max_factors`
/// Pluecker variables.
pub fn mu_trichotomy(g: &Grassmannian, table: &StraighteningTable, max_factors: usize) -> Result<Tally> {
    let l = g.lattice();
    let fam = MuFamily::new(g)?;
    let single: Vec<ValueVector> = l
        .elements()
        .map(|e| fam.quasi_monomial(g, table, &[e]).map(|q| q.value))
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    for m in monomials(l, max_factors, max_factors as i64) {
        let factors = expand(&m);
        if factors.len() > max_factors {
            continue;
        }
        t.monomials += 1;
        let q = fam.quasi(g, table, &monomial(&factors))?;
        let standard = is_standard(l, &factors);
        for (i, v) in fam.valuations().iter().enumerate() {
            if q.value.compare(&v.value(g, table, &monomial(&factors))?)? == Ordering::Greater {
                t.bound += 1;
            }
            let on_chain = m.iter().all(|&(e, _)| v.chain().contains(e));
            if standard && q.argmin.contains(&i) && !on_chain {
                t.only_if += 1;
            }
        }
        let mut sum = single[factors[0].index()].clone();
        for e in &factors[1..] {
            sum = sum.checked_add(&single[e.index()])?;
        }
        let cmp = q.value.compare(&sum)?;
        if standard && cmp != Ordering::Equal {
            t.additive += 1;
        }
        if !standard && cmp != Ordering::Greater {
            t.strict += 1;
        }
    }
    Ok(t)
}

fn tally_detail(t: &Tally) -> String {
    format!(
        "{} monomials; violations: bound {}, only-if {}, additivity {}, strictness {}",
        t.monomials, t.bound, t.only_if, t.additive, t.strict
    )
}

/// Checks that only need the lattice.
pub fn lattice_checks(l: &DistributiveLattice) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    let mut distributive = true;
    for a in l.elements() {
        for b in l.elements() {
            for c in l.elements() {
                if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) {
                    distributive = false;
                }
            }
        }
    }
    out.push(CheckResult::new("lattice.distributive", distributive, format!("{} elements", l.len())));

    let birkhoff = l.elements().all(|e| l.join_of(l.spec(e)) == e);
    out.push(CheckResult::new("lattice.birkhoff", birkhoff, "every element is the join of its spec"));

    let streamed = l.maximal_chains().count() as u128;
    out.push(CheckResult::new(
        "lattice.chain-count",
        streamed == l.chain_count(),
        format!("{streamed} chains streamed, {} counted", l.chain_count()),
    ));

    let mut rewrites = true;
    for a in l.elements() {
        for b in l.elements() {
            rewrites &= is_standard(l, rewrite_to_standard(l, &[a, b]).factors());
        }
    }
    out.push(CheckResult::new(
        "hibi.rewriting",
        rewrites,
        format!("{} standard monomials of degree 2", standard_basis(l, 2).len()),
    ));

    for family in Family::ALL {
        let t = trichotomy(l, family, 3, 2)?;
        out.push(CheckResult::new(format!("valuation.trichotomy.{family}"), t.clean(), tally_detail(&t)));
    }
    Ok(out)
}

fn same_points(p: &RationalPolytope, q: &BTreeSet<Vec<i64>>) -> Result<bool> {
    Ok(&p.lattice_points(1)?.into_iter().collect::<BTreeSet<_>>() == q)
}

/// The lattice checks plus straightening, governedness, `mu`, and the
/// polytope statements for `Gr(d, n)`.
pub fn grassmann_checks(g: &Grassmannian) -> Result<Vec<CheckResult>> {
    let l = g.lattice();
    let mut out = lattice_checks(l)?;

    let minors = Minors::new(g);
    let table = StraighteningTable::build(g)?;
    let exact = table
        .entries()
        .all(|s| s.residual(g, &minors).is_zero() && s.leading_coefficient(g).is_one());
    out.push(CheckResult::new(
        "grassmann.straightening",
        exact,
        format!("{} incomparable pairs", table.len()),
    ));

    let report = governed_check(g, &table);
    out.push(CheckResult::new(
        "grassmann.governed",
        report.passed(),
        format!("{} failing pairs", report.failures().count()),
    ));

    let t = mu_trichotomy(g, &table, 3)?;
    out.push(CheckResult::new("grassmann.mu-trichotomy", t.clean(), tally_detail(&t)));

    let order = order_polytope(g)?;
    let order_points: BTreeSet<Vec<i64>> = order.lattice_points(1)?.into_iter().collect();
    let mut bodies = true;
    for c in l.maximal_chains() {
        let body = no_body(g, &c)?;
        let gamma: BTreeSet<Vec<i64>> = body.points.iter().map(|p| body.to_cells(g, p)).collect();
        bodies &= gamma == order_points;
    }
    out.push(CheckResult::new(
        "polytope.no-body",
        bodies,
        format!("{} lattice points per body", order_points.len()),
    ));

    let simplices = triangulate(g);
    let volume: u128 = simplices.iter().map(|s| s.normalized_volume()).sum();
    let unimodular = simplices.iter().all(|s| s.is_unimodular());
    out.push(CheckResult::new(
        "polytope.triangulation",
        unimodular && volume == l.chain_count(),
        format!("{} simplices, total normalized volume {volume}", simplices.len()),
    ));

    let fflv = fflv_polytope(g)?;
    let fflv_points: BTreeSet<Vec<i64>> = fflv.lattice_points(1)?.into_iter().collect();
    let images: BTreeSet<Vec<i64>> = order_points
        .iter()
        .filter_map(|x| {
            let y = transfer_unchecked(g, &to_rational(x));
            (transfer_inverse(g, &y) == to_rational(x)).then(|| to_integer(&y)).flatten()
        })
        .collect();
    out.push(CheckResult::new(
        "polytope.transfer",
        images == fflv_points && same_points(&fflv, &images)?,
        format!("{} lattice points", fflv_points.len()),
    ));

    let betas: BTreeSet<Vec<i64>> = l.elements().map(|e| beta(g, e).chi).collect();
    out.push(CheckResult::new(
        "polytope.beta",
        betas.len() == l.len() && betas == fflv_points,
        format!("{} antichains", betas.len()),
    ));
    Ok(out)
}
