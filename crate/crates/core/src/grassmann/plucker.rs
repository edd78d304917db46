//! Plücker coordinates as maximal minors, and the quadratic shuffle
//! relations among them.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;

use super::Grassmannian;
use crate::lattice::Elem;
use crate::linalg::{rank, rational, Matrix};
use crate::qpoly::{Exponents, QPolynomial};

/// Sorts `entries`, returning the permutation sign, or `None` on a repeat.
pub fn sort_with_sign(entries: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = entries.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            match v[j].cmp(&v[j + 1]) {
                std::cmp::Ordering::Greater => {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

fn permutations(k: usize) -> Vec<(i64, Vec<usize>)> {
    fn go(rest: &mut Vec<usize>, acc: &mut Vec<usize>, sign: i64, out: &mut Vec<(i64, Vec<usize>)>) {
        if rest.is_empty() {
            out.push((sign, acc.clone()));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, if i % 2 == 0 { sign } else { -sign }, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..k).collect(), &mut Vec::new(), 1, &mut out);
    out
}

/// The maximal minors of a generic `d x n` matrix `Z = (z_{r,c})`; the
/// variable `z_{r,c}` has index `r n + c` (both 0-based).
#[derive(Clone, Debug)]
pub struct Minors {
    d: usize,
    n: usize,
    minors: Vec<QPolynomial>,
}

impl Minors {
    pub fn new(g: &Grassmannian) -> Self {
        let (d, n) = (g.d(), g.n());
        let perms = permutations(d);
        let minors = g
            .lattice()
            .elements()
            .map(|e| {
                let cols = g.tuple(e).entries();
                let mut p = QPolynomial::zero(d * n);
                for (sign, pi) in &perms {
                    let mut exps = vec![0; d * n];
                    for (r, &k) in pi.iter().enumerate() {
                        exps[r * n + cols[k] - 1] += 1;
                    }
                    p.add_term(exps, rational(*sign));
                }
                p
            })
            .collect();
        Minors { d, n, minors }
    }

    pub fn nvars(&self) -> usize {
        self.d * self.n
    }

    pub fn minor(&self, e: Elem) -> &QPolynomial {
        &self.minors[e.index()]
    }

    pub fn product(&self, a: Elem, b: Elem) -> QPolynomial {
        self.minor(a).mul(self.minor(b))
    }

    /// Image of a polynomial in the Plücker variables.
    pub fn expand(&self, p: &QPolynomial) -> QPolynomial {
        p.substitute(&self.minors)
    }
}

/// `p_a p_b` as a polynomial in the Plücker variables.
pub fn quadratic(g: &Grassmannian, a: Elem, b: Elem) -> Exponents {
    let mut e = vec![0; g.lattice().len()];
    e[a.index()] += 1;
    e[b.index()] += 1;
    e
}

/// `p` of an arbitrary tuple: zero on a repeat, otherwise the sorted
/// coordinate with the sorting sign.
fn signed_coordinate(g: &Grassmannian, entries: &[usize]) -> Option<(i64, Elem)> {
    let (sign, sorted) = sort_with_sign(entries)?;
    Some((sign, g.elem(&sorted).ok()?))
}

/// The shuffle relation for `(I, J, t)`: with `A = (i_1..i_t, j_t..j_d)`,
/// the sum over `t`-subsets `S` of positions of
/// `sign * p(A[S], i_{t+1..d}) * p(j_{1..t-1}, A[S^c])`.
pub fn shuffle_relation(g: &Grassmannian, i: Elem, j: Elem, t: usize) -> QPolynomial {
    let d = g.d();
    let (ii, jj) = (g.tuple(i).entries(), g.tuple(j).entries());
    let a: Vec<usize> = ii[..t].iter().chain(&jj[t - 1..]).copied().collect();
    let mut rel = QPolynomial::zero(g.lattice().len());
    for mask in 0u32..(1 << (d + 1)) {
        if mask.count_ones() as usize != t {
            continue;
        }
        let chosen: Vec<usize> = (0..=d).filter(|k| mask >> k & 1 == 1).collect();
        let rest: Vec<usize> = (0..=d).filter(|k| mask >> k & 1 == 0).collect();
        let inversions: usize = chosen.iter().enumerate().map(|(k, &s)| s - k).sum();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        let left: Vec<usize> = chosen.iter().map(|&k| a[k]).chain(ii[t..].iter().copied()).collect();
        let right: Vec<usize> = jj[..t - 1].iter().copied().chain(rest.iter().map(|&k| a[k])).collect();
        if let (Some((s1, p1)), Some((s2, p2))) = (signed_coordinate(g, &left), signed_coordinate(g, &right)) {
            rel.add_term(quadratic(g, p1, p2), rational(sign * s1 * s2));
        }
    }
    rel
}

/// Scales so that the first term has coefficient 1.
fn normalized(p: &QPolynomial) -> Vec<(Exponents, BigRational)> {
    let lead = p.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::one);
    p.terms().map(|(e, c)| (e.clone(), c / &lead)).collect()
}

#[derive(Clone, Debug)]
pub struct PluckerRelations {
    pub relations: Vec<QPolynomial>,
    /// Nonzero shuffle sums that did not vanish on minors (always expected
    /// to be empty).
    pub rejected: Vec<QPolynomial>,
}

/// All distinct nonzero shuffle relations for `1 <= t <= d`, each verified
/// to vanish under the minor substitution.
pub fn plucker_relations(g: &Grassmannian) -> PluckerRelations {
    let minors = Minors::new(g);
    let mut seen = BTreeSet::new();
    let mut out = PluckerRelations {
        relations: Vec::new(),
        rejected: Vec::new(),
    };
    for i in g.lattice().elements() {
        for j in g.lattice().elements() {
            for t in 1..=g.d() {
                let rel = shuffle_relation(g, i, j, t);
                if rel.is_zero() || !seen.insert(normalized(&rel)) {
                    continue;
                }
                if minors.expand(&rel).is_zero() {
                    out.relations.push(rel);
                } else {
                    out.rejected.push(rel);
                }
            }
        }
    }
    out
}

/// Degree-2 monomials `p_a p_b` with `a <= b` (by element index).
pub fn quadratic_monomials(g: &Grassmannian) -> Vec<(Elem, Elem)> {
    let l = g.lattice();
    l.elements()
        .flat_map(|a| l.elements().filter(move |&b| b >= a).map(move |b| (a, b)))
        .collect()
}

/// Coefficient matrix whose columns are the minor expansions of `columns`.
pub fn expansion_matrix(columns: &[QPolynomial]) -> Matrix {
    let rows: BTreeSet<&Exponents> = columns.iter().flat_map(|p| p.terms().map(|(e, _)| e)).collect();
    rows.into_iter()
        .map(|e| columns.iter().map(|p| p.coefficient(e)).collect())
        .collect()
}

/// Dimension of the kernel of `p_a p_b -> minor product` on degree 2.
pub fn quadratic_relation_dimension(g: &Grassmannian) -> usize {
    let minors = Minors::new(g);
    let monos = quadratic_monomials(g);
    let cols: Vec<QPolynomial> = monos.iter().map(|&(a, b)| minors.product(a, b)).collect();
    monos.len() - rank(&expansion_matrix(&cols))
}

/// Rank of a family of degree-2 relations inside the span of `p_a p_b`.
pub fn relation_rank(g: &Grassmannian, relations: &[QPolynomial]) -> usize {
    let monos = quadratic_monomials(g);
    let m: Matrix = relations
        .iter()
        .map(|r| monos.iter().map(|&(a, b)| r.coefficient(&quadratic(g, a, b))).collect())
        .collect();
    if m.is_empty() {
        0
    } else {
        rank(&m)
    }
}

/// Display names `p[1,4]` for the Plücker variables.
pub fn variable_names(g: &Grassmannian) -> Vec<String> {
    g.lattice().elements().map(|e| format!("p{}", g.tuple(e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        assert_eq!(sort_with_sign(&[2, 1]), Some((-1, vec![1, 2])));
        assert_eq!(sort_with_sign(&[3, 1, 2]), Some((1, vec![1, 2, 3])));
        assert_eq!(sort_with_sign(&[1, 1]), None);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3).iter().map(|p| p.0).sum::<i64>(), 0);
    }

    #[test]
    fn minors_of_gr24() {
        let g = Grassmannian::new(2, 4).unwrap();
        let m = Minors::new(&g);
        let p14 = m.minor(g.elem(&[1, 4]).unwrap());
        assert_eq!(p14.len(), 2);
        assert_eq!(m.nvars(), 8);
    }
}
