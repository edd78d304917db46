//! Exact linear algebra over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined,
}

/// Brings `m` to reduced row echelon form in place and returns the pivot
/// columns.
pub fn row_reduce(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (top, rest) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, y) in rest.iter_mut().zip(top) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    row_reduce(&mut m.clone()).len()
}

/// Solves `a x = b`.
pub fn solve(a: &Matrix, b: &[BigRational]) -> Solution {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    Solution::Unique(aug.iter().take(cols).map(|row| row[cols].clone()).collect())
}

/// A basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = m.clone();
    let pivots = row_reduce(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, PRIME - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Rank modulo the prime `2^61 - 1` of integer rows given sparsely as
/// `(column, value)` pairs. This never exceeds the rank over the
/// rationals, so a full modular rank certifies independence.
pub fn sparse_rank_mod_p(rows: &[Vec<(usize, i64)>]) -> usize {
    use std::collections::{BTreeMap, HashMap};
    let to_mod = |v: i64| (v as i128).rem_euclid(PRIME as i128) as u64;
    let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, u64> = BTreeMap::new();
        for &(c, v) in row {
            let e = r.entry(c).or_insert(0);
            *e = (*e + to_mod(v)) % PRIME;
        }
        r.retain(|_, v| *v != 0);
        while let Some((&c, &v)) = r.iter().next() {
            let Some(p) = pivots.get(&c) else {
                let inv = inv_mod(v);
                for x in r.values_mut() {
                    *x = mul_mod(*x, inv);
                }
                pivots.insert(c, r);
                break;
            };
            for (&pc, &pv) in p {
                let e = r.entry(pc).or_insert(0);
                *e = (*e + PRIME - mul_mod(v, pv)) % PRIME;
            }
            r.retain(|_, v| *v != 0);
        }
    }
    pivots.len()
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| rational(x)).collect()).collect()
    }

    #[test]
    fn unique_solution() {
        let a = mat(&[&[2, 1], &[1, 3]]);
        let b = [rational(3), rational(5)];
        let Solution::Unique(x) = solve(&a, &b) else { panic!() };
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
    }

    #[test]
    fn degenerate_systems() {
        let a = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[rational(1), rational(3)]), Solution::Inconsistent);
        assert_eq!(solve(&a, &[rational(1), rational(2)]), Solution::Underdetermined);
        assert_eq!(rank(&a), 1);
        let ns = nullspace(&a);
        assert_eq!(ns, vec![vec![rational(-1), rational(1)]]);
    }

    #[test]
    fn modular_rank() {
        let rows = vec![vec![(0, 1), (1, 1)], vec![(0, 2), (1, 2)], vec![(2, -5)], vec![(0, 1), (1, 1), (2, 3)]];
        assert_eq!(sparse_rank_mod_p(&rows), 2);
        assert_eq!(sparse_rank_mod_p(&[vec![(3, 7)], vec![(1, -1), (3, 2)]]), 2);
        assert_eq!(sparse_rank_mod_p(&[vec![(0, 0)]]), 0);
    }

    #[test]
    fn overdetermined_but_consistent() {
        let a = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            solve(&a, &[rational(1), rational(2), rational(3)]),
            Solution::Unique(vec![rational(1), rational(2)])
        );
    }
}
