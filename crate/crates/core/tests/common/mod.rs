#![allow(dead_code)]

use semitoric::valuation::Family;
use semitoric::{DistributiveLattice, Elem, MaximalChain};

/// `(l_1, n_1), ..., (l_k, n_k)` with distinct `l_i`, `k <= max_k` and
/// exponents in `1..=max_exp`.
pub fn monomials(l: &DistributiveLattice, max_k: usize, max_exp: i64) -> Vec<Vec<(Elem, i64)>> {
    fn go(
        l: &DistributiveLattice,
        max_k: usize,
        max_exp: i64,
        start: usize,
        acc: &mut Vec<(Elem, i64)>,
        out: &mut Vec<Vec<(Elem, i64)>>,
    ) {
        if !acc.is_empty() {
            out.push(acc.clone());
        }
        if acc.len() == max_k {
            return;
        }
        for i in start..l.len() {
            for k in 1..=max_exp {
                acc.push((Elem(i), k));
                go(l, max_k, max_exp, i + 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(l, max_k, max_exp, 0, &mut Vec::new(), &mut out);
    out
}

pub fn is_chain(l: &DistributiveLattice, support: &[Elem]) -> bool {
    support.iter().all(|&a| support.iter().all(|&b| l.comparable(a, b)))
}

/// Value of `x_hat_{c_j}` straight from the family's definition.
pub fn generator_value(l: &DistributiveLattice, chain: &MaximalChain, family: Family, j: usize) -> Vec<i64> {
    let n = l.rank();
    let mut v = vec![0; n];
    if j == 0 {
        return v;
    }
    let e = l.chain_to_enumeration(chain).unwrap();
    let pos_of = |m: Elem| e.order().iter().position(|&x| x == m).unwrap();
    let c = chain.get(j);
    match family {
        Family::Spec => {
            for m in l.join_irreducibles() {
                if m != l.bottom() && l.leq(m, c) {
                    v[pos_of(m)] += 1;
                }
            }
        }
        Family::MaxSpec => {
            for m in l.join_irreducibles() {
                let maximal = l.leq(m, c)
                    && l.join_irreducibles()
                        .into_iter()
                        .all(|k| k == m || !l.leq(k, c) || !l.leq(m, k));
                if maximal && m != l.bottom() {
                    v[pos_of(m)] += 1;
                }
            }
        }
        Family::Height => v[j - 1] = 1,
    }
    v
}

/// `x_hat_l = prod_{i : m_i <= l} x_hat_{c_i} / x_hat_{c_{i-1}}`, valued
/// additively.
pub fn oracle_value(l: &DistributiveLattice, chain: &MaximalChain, family: Family, e: Elem) -> Vec<i64> {
    let en = l.chain_to_enumeration(chain).unwrap();
    let mut v = vec![0; l.rank()];
    for (i, &m) in en.order().iter().enumerate() {
        if l.leq(m, e) {
            let hi = generator_value(l, chain, family, i + 1);
            let lo = generator_value(l, chain, family, i);
            for k in 0..v.len() {
                v[k] += hi[k] - lo[k];
            }
        }
    }
    v
}

/// Highest nonzero coordinate decides; positive means `a > b`.
pub fn revlex_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    for k in (0..a.len()).rev() {
        if a[k] != b[k] {
            return a[k].cmp(&b[k]);
        }
    }
    std::cmp::Ordering::Equal
}

pub fn add_scaled(acc: &mut [i64], v: &[i64], k: i64) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += k * b;
    }
}
