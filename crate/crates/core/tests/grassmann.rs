use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use semitoric::grassmann::governed::{classify, governed_check, Case};
use semitoric::grassmann::idn::{simple_root_coordinates, PluckerIndex};
use semitoric::grassmann::mu::{monomial, multiply, LiftedValuation, MuFamily};
use semitoric::grassmann::plucker::{
    expansion_matrix, plucker_relations, quadratic_monomials, quadratic_relation_dimension, relation_rank,
    Minors,
};
use semitoric::grassmann::straighten::{straighten, Straightening, StraighteningTable, StraighteningTerm};
use semitoric::grassmann::{classify_irreducible, Grassmannian, IrreducibleKind};
use semitoric::hibi::{is_standard, StandardMonomial};
use semitoric::linalg::nullspace;
use semitoric::qpoly::QPolynomial;
use semitoric::valuation::graded_product;
use semitoric::{Elem, Error};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn incomparable_pairs(g: &Grassmannian) -> Vec<(Elem, Elem)> {
    let l = g.lattice();
    l.elements()
        .flat_map(|a| l.elements().filter(move |&b| a < b && !l.comparable(a, b)).map(move |b| (a, b)))
        .collect()
}

/// Weakly decreasing factor lists of length `1..=k`.
fn factor_lists(g: &Grassmannian, k: usize) -> Vec<Vec<Elem>> {
    let mut out: Vec<Vec<Elem>> = g.lattice().elements().map(|e| vec![e]).collect();
    let mut frontier = out.clone();
    for _ in 1..k {
        let next: Vec<Vec<Elem>> = frontier
            .iter()
            .flat_map(|m| {
                let last = *m.last().unwrap();
                g.lattice().elements().filter(move |&e| e <= last).map(move |e| {
                    let mut m = m.clone();
                    m.push(e);
                    m
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn multiset(g: &Grassmannian, a: Elem, b: Elem) -> Vec<usize> {
    let mut v: Vec<usize> = g.tuple(a).entries().iter().chain(g.tuple(b).entries()).copied().collect();
    v.sort_unstable();
    v
}

#[test]
fn small_index_lattices() {
    for n in 1..6 {
        let g = Grassmannian::new(1, n).unwrap();
        assert_eq!(g.lattice().len(), n);
        assert_eq!(g.lattice().maximal_chains().count(), 1);
    }
    let g = Grassmannian::new(2, 4).unwrap();
    assert_eq!(g.lattice().len(), 6);
    assert_eq!(incomparable_pairs(&g).len(), 1);
    for (d, n) in [(2, 6), (3, 6), (3, 7)] {
        assert_eq!(Grassmannian::new(d, n).unwrap().lattice().len(), binomial(n, d));
    }
    assert!(Grassmannian::new(3, 2).is_err());
    assert!(Grassmannian::new(0, 2).is_err());
}

#[test]
fn irreducible_families() {
    let g = Grassmannian::new(4, 7).unwrap();
    let t = |v: &[usize]| PluckerIndex::new(v.to_vec(), 7).unwrap();
    assert_eq!(classify_irreducible(&t(&[1, 2, 3, 4])), IrreducibleKind::Consecutive(0));
    assert_eq!(classify_irreducible(&t(&[1, 2, 5, 6])), IrreducibleKind::OneDescent { s: 2, t: 4 });
    let g24 = Grassmannian::new(2, 4).unwrap();
    let x = g24.elem(&[2, 4]).unwrap();
    assert_eq!(classify_irreducible(g24.tuple(x)), IrreducibleKind::NotIrreducible);
    let l = g24.lattice();
    assert_eq!(l.join(g24.elem(&[2, 3]).unwrap(), g24.elem(&[1, 4]).unwrap()), x);

    for (d, n) in [(1, 4), (2, 4), (2, 6), (3, 6), (4, 7), (3, 8)] {
        let g = Grassmannian::new(d, n).unwrap();
        let l = g.lattice();
        let irreducible: BTreeSet<Elem> = l.join_irreducibles().into_iter().collect();
        for e in l.elements() {
            let kind = classify_irreducible(g.tuple(e));
            assert_eq!(kind != IrreducibleKind::NotIrreducible, irreducible.contains(&e), "{}", g.tuple(e));
        }
        assert_eq!(irreducible.len(), (n - d + 1) + (d - 1) * (n - d));
    }
    assert_eq!(g.lattice().join_irreducibles().len(), 13);
}

#[test]
fn omega_of_spec_is_a_weight_difference() {
    let g = Grassmannian::new(4, 7).unwrap();
    let bottom = g.lattice().bottom();
    assert!(g.omega_spec(bottom).iter().all(|&c| c == 0));
    let x = g.elem(&[2, 4, 5, 7]).unwrap();
    assert_eq!(simple_root_coordinates(&g.omega_spec(x)), Some(vec![1, 1, 2, 2, 1, 1]));

    for (d, n) in [(3, 6), (4, 7)] {
        let g = Grassmannian::new(d, n).unwrap();
        let base = g.weight(g.lattice().bottom());
        for e in g.lattice().elements() {
            let expected: Vec<i64> = g.weight(e).iter().zip(&base).map(|(a, b)| a - b).collect();
            assert_eq!(g.omega_spec(e), expected);
            assert_eq!(g.omega_spec(e).iter().sum::<i64>(), 0);
            assert_eq!(g.weight(e).iter().sum::<i64>(), d as i64);
        }
    }
}

#[test]
fn shuffle_relations_vanish_and_span_the_kernel() {
    for (d, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let g = Grassmannian::new(d, n).unwrap();
        let rels = plucker_relations(&g);
        assert!(rels.rejected.is_empty());
        let minors = Minors::new(&g);
        for r in &rels.relations {
            assert!(minors.expand(r).is_zero());
        }
        // oracle: kernel of the evaluation map on degree-2 monomials
        let products: Vec<QPolynomial> = quadratic_monomials(&g)
            .iter()
            .map(|&(a, b)| minors.product(a, b))
            .collect();
        let kernel = nullspace(&expansion_matrix(&products)).len();
        assert_eq!(quadratic_relation_dimension(&g), kernel);
        assert_eq!(relation_rank(&g, &rels.relations), kernel);
    }

    let g = Grassmannian::new(2, 4).unwrap();
    let rels = plucker_relations(&g).relations;
    assert_eq!(relation_rank(&g, &rels), 1);
    let nvars = g.lattice().len();
    let p = |v: &[usize]| QPolynomial::var(nvars, g.elem(v).unwrap().index());
    let classical = p(&[1, 2])
        .mul(&p(&[3, 4]))
        .sub(&p(&[1, 3]).mul(&p(&[2, 4])))
        .add(&p(&[1, 4]).mul(&p(&[2, 3])));
    let mut with = rels.clone();
    with.push(classical);
    assert_eq!(relation_rank(&g, &with), 1);

    let g = Grassmannian::new(2, 5).unwrap();
    assert_eq!(quadratic_relation_dimension(&g), 5);
}

#[test]
fn gr24_straightening() {
    let g = Grassmannian::new(2, 4).unwrap();
    let minors = Minors::new(&g);
    let e = |v: &[usize]| g.elem(v).unwrap();
    let s = straighten(&g, &minors, e(&[1, 4]), e(&[2, 3])).unwrap();
    assert_eq!(s.leading(&g), (e(&[2, 4]), e(&[1, 3])));
    assert_eq!(s.coefficient(e(&[2, 4]), e(&[1, 3])), q(1));
    assert_eq!(s.coefficient(e(&[3, 4]), e(&[1, 2])), q(-1));
    assert_eq!(s.terms.len(), 2);
    assert!(s.residual(&g, &minors).is_zero());

    let ex = s.export(&g);
    assert_eq!(ex.terms[0].coeff, "1");
    assert_eq!(ex.terms[1].coeff, "-1");

    assert!(matches!(
        straighten(&g, &minors, e(&[1, 2]), e(&[3, 4])),
        Err(Error::ComparablePair(..))
    ));
}

#[test]
fn gr25_straightening_conserves_indices() {
    let g = Grassmannian::new(2, 5).unwrap();
    let minors = Minors::new(&g);
    let e = |v: &[usize]| g.elem(v).unwrap();
    let s = straighten(&g, &minors, e(&[1, 4]), e(&[2, 3])).unwrap();
    assert_eq!(s.leading(&g), (e(&[2, 4]), e(&[1, 3])));
    assert_eq!(s.leading_coefficient(&g), q(1));
    for t in &s.terms {
        assert_eq!(multiset(&g, t.k1, t.k2), vec![1, 2, 3, 4]);
    }
}

#[test]
fn straightening_tables_are_exact() {
    for (d, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let g = Grassmannian::new(d, n).unwrap();
        let l = g.lattice();
        let minors = Minors::new(&g);
        let table = StraighteningTable::build(&g).unwrap();
        assert_eq!(table.len(), incomparable_pairs(&g).len());
        for (a, b) in incomparable_pairs(&g) {
            let s = table.get(a, b).unwrap();
            assert!(s.residual(&g, &minors).is_zero(), "({d},{n})");
            assert_eq!(s.leading_coefficient(&g), q(1));
            let (top, bot) = s.leading(&g);
            for t in &s.terms {
                assert!(l.leq(t.k2, t.k1));
                assert!(!t.coeff.is_zero());
                assert_eq!(multiset(&g, t.k1, t.k2), multiset(&g, a, b));
                if (t.k1, t.k2) != (top, bot) {
                    assert!(l.lt(top, t.k1) && l.lt(t.k2, bot));
                }
            }
            // oracle: direct minor expansion of the claimed identity
            let mut rhs = QPolynomial::zero(minors.nvars());
            for t in &s.terms {
                rhs = rhs.add(&minors.product(t.k1, t.k2).scale(&t.coeff));
            }
            assert_eq!(minors.product(a, b), rhs);
        }
    }
}

#[test]
fn expansion_reaches_standard_monomials() {
    let g = Grassmannian::new(2, 5).unwrap();
    let minors = Minors::new(&g);
    let table = StraighteningTable::build(&g).unwrap();
    for m in factor_lists(&g, 3) {
        let expansion = table.expand_monomial(&g, &m);
        let mut lhs = QPolynomial::constant(minors.nvars(), BigRational::one());
        for &e in &m {
            lhs = lhs.mul(minors.minor(e));
        }
        let mut rhs = QPolynomial::zero(minors.nvars());
        for (s, c) in &expansion {
            assert!(is_standard(g.lattice(), s));
            let mut term = QPolynomial::constant(minors.nvars(), c.clone());
            for &e in s {
                term = term.mul(minors.minor(e));
            }
            rhs = rhs.add(&term);
        }
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn governedness_holds_at_test_sizes() {
    for (d, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let g = Grassmannian::new(d, n).unwrap();
        let table = StraighteningTable::build(&g).unwrap();
        let report = governed_check(&g, &table);
        assert!(report.basis_ok);
        assert!(report.passed(), "({d},{n})");
        assert_eq!(report.failures().count(), 0);
    }
}

#[test]
fn gr24_is_governed_by_domination() {
    let g = Grassmannian::new(2, 4).unwrap();
    let e = |v: &[usize]| g.elem(v).unwrap();
    let table = StraighteningTable::build(&g).unwrap();
    let report = governed_check(&g, &table);
    let pair = &report.pairs[0];
    assert_eq!(pair.checks.len(), 2);
    for c in &pair.checks {
        assert_eq!(c.k1, e(&[3, 4]));
        assert_eq!(c.case, Some(Case::Dominates { h: e(&[3, 4]) }));
    }
    let ex = pair.export(&g);
    assert_eq!(ex.status, "pass");
    assert_eq!(ex.leading_coefficient, "1");
}

fn corrupted(g: &Grassmannian, edit: impl Fn(&mut Straightening)) -> StraighteningTable {
    let table = StraighteningTable::build(g).unwrap();
    StraighteningTable::from_entries(table.entries().cloned().map(|mut s| {
        edit(&mut s);
        s
    }))
}

#[test]
fn corrupted_tables_fail() {
    let g = Grassmannian::new(2, 4).unwrap();
    let e = |v: &[usize]| g.elem(v).unwrap();

    let extra = corrupted(&g, |s| {
        s.terms.push(StraighteningTerm {
            k1: e(&[1, 4]),
            k2: e(&[1, 2]),
            coeff: q(1),
        })
    });
    let report = governed_check(&g, &extra);
    assert!(!report.passed());
    let failing = report.failures().next().unwrap();
    assert!(failing.leading_ok());
    assert!(failing
        .checks
        .iter()
        .any(|c| c.k1 == e(&[1, 4]) && c.case.is_none()));
    assert_eq!(failing.export(&g).status, "fail");
    assert_eq!(classify(&g, e(&[1, 4]), e(&[1, 2]), e(&[1, 4]), e(&[2, 3])), None);

    let swapped = corrupted(&g, |s| {
        let (a, b) = (s.terms[0].coeff.clone(), s.terms[1].coeff.clone());
        s.terms[0].coeff = b;
        s.terms[1].coeff = a;
    });
    let report = governed_check(&g, &swapped);
    assert!(!report.passed());
    let failing = report.failures().next().unwrap();
    assert!(!failing.leading_ok());
    assert_eq!(failing.export(&g).leading_coefficient, "-1");
}

#[test]
fn mu_of_the_bottom_is_e0() {
    for (d, n) in [(2, 4), (3, 6)] {
        let g = Grassmannian::new(d, n).unwrap();
        let table = StraighteningTable::build(&g).unwrap();
        let bottom = g.lattice().bottom();
        for c in g.lattice().maximal_chains() {
            let mu = LiftedValuation::new(&g, &c).unwrap();
            let v = mu.value(&g, &table, &monomial(&[bottom])).unwrap();
            assert_eq!(v.coords()[0], 1);
            assert!(v.coords()[1..].iter().all(|&x| x == 0));
        }
    }
}

#[test]
fn mu_direct_and_expanded_routes_agree() {
    for (d, n) in [(2, 4), (2, 5)] {
        let g = Grassmannian::new(d, n).unwrap();
        let table = StraighteningTable::build(&g).unwrap();
        let family = MuFamily::new(&g).unwrap();
        for m in factor_lists(&g, 3) {
            for mu in family.valuations() {
                assert_eq!(mu.value(&g, &table, &monomial(&m)).unwrap(), mu.direct(&g, &m));
            }
        }
    }
}

#[test]
fn mu_of_the_gr24_relation() {
    let g = Grassmannian::new(2, 4).unwrap();
    let e = |v: &[usize]| g.elem(v).unwrap();
    let table = StraighteningTable::build(&g).unwrap();
    let chain = g
        .lattice()
        .maximal_chains()
        .find(|c| c.contains(e(&[2, 3])))
        .unwrap();
    let mu = LiftedValuation::new(&g, &chain).unwrap();
    let lhs = mu.value(&g, &table, &monomial(&[e(&[1, 4]), e(&[2, 3])])).unwrap();
    let rhs = mu.value(&g, &table, &monomial(&[e(&[2, 4]), e(&[1, 3])])).unwrap();
    let other = mu.value(&g, &table, &monomial(&[e(&[3, 4]), e(&[1, 2])])).unwrap();
    assert_eq!(lhs, rhs);
    assert!(other > rhs);
    assert_eq!(lhs, mu.direct(&g, &[e(&[1, 4]), e(&[2, 3])]));

    let family = MuFamily::new(&g).unwrap();
    let value = |m: &[Elem]| family.quasi_monomial(&g, &table, m).unwrap().value;
    let product = value(&[e(&[1, 4]), e(&[2, 3])]);
    let sum = value(&[e(&[1, 4])]).checked_add(&value(&[e(&[2, 3])])).unwrap();
    assert!(product > sum);
}

fn mu_trichotomy(d: usize, n: usize) {
    let g = Grassmannian::new(d, n).unwrap();
    let l = g.lattice();
    let table = StraighteningTable::build(&g).unwrap();
    let family = MuFamily::new(&g).unwrap();
    let single: Vec<_> = l
        .elements()
        .map(|e| family.quasi_monomial(&g, &table, &[e]).unwrap().value)
        .collect();
    for m in factor_lists(&g, 3) {
        let quasi = family.quasi_monomial(&g, &table, &m).unwrap().value;
        let mut sum = single[m[0].index()].clone();
        for e in &m[1..] {
            sum = sum.checked_add(&single[e.index()]).unwrap();
        }
        let standard = is_standard(l, &m);
        for mu in family.valuations() {
            let v = mu.value(&g, &table, &monomial(&m)).unwrap();
            assert!(quasi <= v);
            if standard && quasi == v {
                assert!(m.iter().all(|&e| mu.chain().contains(e)));
            }
            if standard && m.iter().all(|&e| mu.chain().contains(e)) {
                let mut along = mu.direct(&g, &m[..1]);
                for e in &m[1..] {
                    along = along.checked_add(&mu.direct(&g, &[*e])).unwrap();
                }
                assert_eq!(quasi, along);
            }
        }
        if standard {
            assert_eq!(quasi, sum, "{m:?}");
        } else {
            assert!(quasi > sum, "{m:?}");
        }
    }
}

#[test]
fn mu_trichotomy_gr24() {
    mu_trichotomy(2, 4);
}

#[test]
fn mu_trichotomy_gr25() {
    mu_trichotomy(2, 5);
}

#[test]
fn graded_product_vanishes_exactly_when_mu_jumps() {
    for (d, n) in [(2, 4), (2, 5)] {
        let g = Grassmannian::new(d, n).unwrap();
        let l = g.lattice();
        let table = StraighteningTable::build(&g).unwrap();
        let family = MuFamily::new(&g).unwrap();
        let basis: Vec<Vec<Elem>> = factor_lists(&g, 2).into_iter().filter(|m| is_standard(l, m)).collect();
        for a in basis.iter().filter(|m| m.len() == 1) {
            for b in &basis {
                let sa = StandardMonomial::new(l, a).unwrap();
                let sb = StandardMonomial::new(l, b).unwrap();
                let va = family.quasi(&g, &table, &monomial(a)).unwrap().value;
                let vb = family.quasi(&g, &table, &monomial(b)).unwrap().value;
                let vab = family.quasi(&g, &table, &multiply(&monomial(a), &monomial(b))).unwrap().value;
                let jump = vab > va.checked_add(&vb).unwrap();
                assert_eq!(graded_product(l, &sa, &sb).is_none(), jump);
            }
        }
    }
}
