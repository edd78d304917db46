use std::collections::HashSet;

use semitoric::grassmann::Grassmannian;
use semitoric::hibi::{
    element_to_y, hibi_ideal_generators, is_standard, rewrite_to_standard, rewrite_trace, standard_basis,
    xhat, y_image, StandardMonomial,
};
use semitoric::{DistributiveLattice, Elem, Poset};

fn chain_through(g: &Grassmannian, labels: &[&str]) -> semitoric::MaximalChain {
    let l = g.lattice();
    l.chain(labels.iter().map(|s| l.find(s).unwrap()).collect()).unwrap()
}

fn tuples_leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Multisets of size `r` drawn from the elements of `l`.
fn multisets(l: &DistributiveLattice, r: usize) -> Vec<Vec<Elem>> {
    fn go(l: &DistributiveLattice, r: usize, start: usize, acc: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if acc.len() == r {
            out.push(acc.clone());
            return;
        }
        for i in start..l.len() {
            acc.push(Elem(i));
            go(l, r, i, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(l, r, 0, &mut Vec::new(), &mut out);
    out
}

#[test]
fn relations_of_small_lattices() {
    let chain = Poset::new(vec!["a".into(), "b".into(), "c".into()], vec![(0, 1), (1, 2)]).unwrap();
    let (l, _) = DistributiveLattice::from_order(&chain).unwrap();
    assert!(hibi_ideal_generators(&l).is_empty());

    let g = Grassmannian::new(2, 4).unwrap();
    let rels = hibi_ideal_generators(g.lattice());
    assert_eq!(rels.len(), 1);
    let ex = rels[0].export(g.lattice());
    let mut pair = ex.pair.to_vec();
    pair.sort();
    assert_eq!(pair, ["[1,4]", "[2,3]"]);
    assert_eq!(ex.join, "[2,4]");
    assert_eq!(ex.meet, "[1,3]");

    for (d, n) in [(2, 5), (2, 6), (3, 6)] {
        let g = Grassmannian::new(d, n).unwrap();
        let l = g.lattice();
        let mut brute = 0;
        for a in l.elements() {
            for b in l.elements().filter(|&b| b > a) {
                let (ta, tb) = (g.tuple(a).entries(), g.tuple(b).entries());
                if !tuples_leq(ta, tb) && !tuples_leq(tb, ta) {
                    brute += 1;
                }
            }
        }
        assert_eq!(hibi_ideal_generators(l).len(), brute, "({d},{n})");
        if (d, n) == (2, 5) {
            assert_eq!(brute, 5);
        }
    }
}

#[test]
fn y_images_for_a_fixed_enumeration() {
    let g = Grassmannian::new(2, 4).unwrap();
    let l = g.lattice();
    let c = chain_through(&g, &["[1,2]", "[1,3]", "[2,3]", "[2,4]", "[3,4]"]);
    let e = l.chain_to_enumeration(&c).unwrap();
    assert_eq!(element_to_y(l, &e, l.bottom()).exponents(), &[1, 0, 0, 0, 0]);
    assert_eq!(element_to_y(l, &e, g.elem(&[1, 4]).unwrap()).exponents(), &[1, 1, 0, 1, 0]);
    for j in 0..=4 {
        let y = element_to_y(l, &e, c.get(j));
        let expected: Vec<i64> = (0..=4).map(|i| (i <= j) as i64).collect();
        assert_eq!(y.exponents(), expected.as_slice());
    }
}

#[test]
fn xhat_generators() {
    let g = Grassmannian::new(2, 4).unwrap();
    let l = g.lattice();
    let c = chain_through(&g, &["[1,2]", "[1,3]", "[2,3]", "[2,4]", "[3,4]"]);
    assert_eq!(xhat(l, &c, c.get(1)).unwrap().exponents(), &[0, 1, 0, 0, 0]);
    let x14 = xhat(l, &c, g.elem(&[1, 4]).unwrap()).unwrap();
    assert_eq!(x14.exponents(), &[0, 1, 0, 1, 0]);
    let via_chain = xhat(l, &c, c.get(1))
        .unwrap()
        .mul(&xhat(l, &c, c.get(3)).unwrap())
        .div(&xhat(l, &c, c.get(2)).unwrap());
    assert_eq!(x14, via_chain);
    assert_eq!(xhat(l, &c, l.top()).unwrap().exponents(), &[0, 1, 1, 1, 1]);

    let other = Grassmannian::new(2, 6).unwrap();
    let foreign = other.lattice().maximal_chains().next().unwrap();
    assert!(xhat(l, &foreign, l.top()).is_err());
}

#[test]
fn degree_two_standard_basis_of_i24() {
    let g = Grassmannian::new(2, 4).unwrap();
    let l = g.lattice();
    let basis = standard_basis(l, 2);
    let pairs = l
        .elements()
        .flat_map(|a| l.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| tuples_leq(g.tuple(b).entries(), g.tuple(a).entries()))
        .count();
    assert_eq!(basis.len(), pairs);
    assert_eq!(basis.len(), 20);
    let all = multisets(l, 2);
    assert_eq!(all.len(), 21);
    assert_eq!(all.iter().filter(|m| !is_standard(l, m)).count(), 1);
}

#[test]
fn rewriting_examples() {
    let g = Grassmannian::new(2, 4).unwrap();
    let l = g.lattice();
    let f = [g.elem(&[1, 4]).unwrap(), g.elem(&[2, 3]).unwrap()];
    let s = rewrite_to_standard(l, &f);
    assert_eq!(s.labels(l), ["[2,4]", "[1,3]"]);

    let g = Grassmannian::new(2, 5).unwrap();
    let l = g.lattice();
    let f = [g.elem(&[1, 4]).unwrap(), g.elem(&[2, 3]).unwrap(), g.elem(&[2, 5]).unwrap()];
    let s = rewrite_to_standard(l, &f);
    assert!(is_standard(l, s.factors()));
    let c = l.maximal_chains().next().unwrap();
    let e = l.chain_to_enumeration(&c).unwrap();
    assert_eq!(y_image(l, &e, &f), y_image(l, &e, s.factors()));
}

#[test]
fn y_image_is_injective_on_standard_monomials() {
    for (d, n) in [(2, 4), (2, 5)] {
        let g = Grassmannian::new(d, n).unwrap();
        let l = g.lattice();
        for c in l.maximal_chains() {
            let e = l.chain_to_enumeration(&c).unwrap();
            for r in 0..=3 {
                let basis = standard_basis(l, r);
                let images: HashSet<_> = basis.iter().map(|s| y_image(l, &e, s.factors())).collect();
                assert_eq!(images.len(), basis.len());
                // dimension of the degree r piece of the monomial model
                let all: HashSet<_> = multisets(l, r).iter().map(|m| y_image(l, &e, m)).collect();
                assert_eq!(all.len(), basis.len());
            }
        }
    }
}

#[test]
fn rewriting_preserves_images_and_terminates() {
    let incomparable_pairs = |l: &DistributiveLattice, m: &[Elem]| {
        let mut k = 0;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                k += !l.comparable(m[i], m[j]) as usize;
            }
        }
        k
    };
    for (d, n) in [(2, 4), (2, 5), (3, 6)] {
        let g = Grassmannian::new(d, n).unwrap();
        let l = g.lattice();
        let e = l.chain_to_enumeration(&l.maximal_chains().next().unwrap()).unwrap();
        for r in 1..=3 {
            for m in multisets(l, r) {
                let trace = rewrite_trace(l, &m);
                let image = y_image(l, &e, &m);
                for w in trace.windows(2) {
                    assert!(incomparable_pairs(l, &w[1]) <= incomparable_pairs(l, &w[0]));
                }
                for step in &trace {
                    assert_eq!(y_image(l, &e, step), image);
                }
                let s = rewrite_to_standard(l, &m);
                assert_eq!(StandardMonomial::new(l, trace.last().unwrap()).unwrap(), s);
            }
        }
    }
}
