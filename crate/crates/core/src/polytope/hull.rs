//! Exact convex hulls and vertex enumeration by the double description
//! method over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank, solve, Matrix, Solution};

type Ray = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Clears denominators of a rational vector.
fn integral(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(v.iter().map(|x| (x * &l).to_integer()).collect())
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Self) -> Self {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn contains_all(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

/// Extreme rays of the cone `{ y : a . y >= 0 }` over the given rows.
/// Returns `None` when the rows have rank below `dim` (the cone is not
/// pointed).
pub fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Option<Vec<Vec<BigInt>>> {
    let as_q = |r: &[BigInt]| -> Vec<BigRational> { r.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
    let mut basis: Vec<usize> = Vec::with_capacity(dim);
    let mut chosen: Matrix = Vec::with_capacity(dim);
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == dim {
            break;
        }
        chosen.push(as_q(r));
        if rank(&chosen) == chosen.len() {
            basis.push(i);
        } else {
            chosen.pop();
        }
    }
    if basis.len() < dim {
        return None;
    }

    let m = rows.len();
    let mut rays: Vec<(Ray, Bits)> = (0..dim)
        .map(|k| {
            let mut e = vec![BigRational::zero(); dim];
            e[k] = BigRational::one();
            let Solution::Unique(r) = solve(&chosen, &e) else {
                unreachable!("basis rows are independent")
            };
            let mut tight = Bits::new(m);
            for (kk, &i) in basis.iter().enumerate() {
                if kk != k {
                    tight.set(i);
                }
            }
            (integral(&r), tight)
        })
        .collect();

    let mut done = vec![false; m];
    for &i in &basis {
        done[i] = true;
    }
    for i in 0..m {
        if done[i] {
            continue;
        }
        done[i] = true;
        let a = &rows[i];
        let values: Vec<BigInt> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let mut next: Vec<(Ray, Bits)> = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (k, v) in values.iter().enumerate() {
            if v.is_positive() {
                pos.push(k);
                next.push(rays[k].clone());
            } else if v.is_negative() {
                neg.push(k);
            } else {
                let mut kept = rays[k].clone();
                kept.1.set(i);
                next.push(kept);
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, (_, z))| k == p || k == q || !z.contains_all(&common));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (&values[p], &values[q]);
                let r: Ray = rays[q]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(xq, xp)| vp * xq - vq * xp)
                    .collect();
                let mut tight = common;
                tight.set(i);
                next.push((primitive(r), tight));
            }
        }
        rays = next;
    }
    Some(rays.into_iter().map(|(r, _)| r).collect())
}

/// `normal . x <= rhs`, stored as a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Inequality {
    pub normal: Vec<BigInt>,
    pub rhs: BigInt,
}

impl Inequality {
    pub fn new(normal: Vec<BigRational>, rhs: BigRational) -> Self {
        let mut all = normal;
        all.push(rhs);
        let mut v = integral(&all);
        let rhs = v.pop().unwrap();
        Inequality { normal: v, rhs }
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self
            .normal
            .iter()
            .zip(x)
            .map(|(a, b)| b * BigRational::from_integer(a.clone()))
            .sum();
        lhs <= BigRational::from_integer(self.rhs.clone())
    }

    pub fn is_tight(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self
            .normal
            .iter()
            .zip(x)
            .map(|(a, b)| b * BigRational::from_integer(a.clone()))
            .sum();
        lhs == BigRational::from_integer(self.rhs.clone())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityExport {
    pub normal: Vec<String>,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PolytopeExport {
    pub ambient_dim: usize,
    pub vrep: Vec<Vec<String>>,
    pub hrep: Vec<InequalityExport>,
    pub lattice_points: Vec<Vec<i64>>,
}

/// A full-dimensional bounded polytope in `Q^M` with both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<Vec<BigRational>>,
    facets: Vec<Inequality>,
}

impl RationalPolytope {
    /// Convex hull of a finite point set.
    pub fn from_points(dim: usize, points: &[Vec<BigRational>]) -> Result<Self> {
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let rows: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| {
                let mut h = vec![BigRational::one()];
                h.extend(p.iter().cloned());
                integral(&h)
            })
            .collect();
        let Some(rays) = extreme_rays(&rows, dim + 1) else {
            let m: Matrix = rows
                .iter()
                .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
                .collect();
            return Err(Error::NotFullDimensional {
                rank: rank(&m).saturating_sub(1),
                dim,
            });
        };
        // a ray (b, a) encodes b + a . x >= 0
        let mut facets: Vec<Inequality> = rays
            .into_iter()
            .map(|r| Inequality {
                normal: r[1..].iter().map(|x| -x).collect(),
                rhs: r[0].clone(),
            })
            .collect();
        facets.sort();
        facets.dedup();
        let mut vertices: Vec<Vec<BigRational>> = points
            .iter()
            .filter(|p| is_vertex(p, &facets))
            .cloned()
            .collect();
        vertices.sort();
        vertices.dedup();
        Ok(RationalPolytope { dim, vertices, facets })
    }

    /// Vertex enumeration of `{ x : normal . x <= rhs }`; the result is
    /// rebuilt from its vertices so that the facet list is irredundant.
    pub fn from_inequalities(dim: usize, inequalities: &[Inequality]) -> Result<Self> {
        let mut rows: Vec<Vec<BigInt>> = inequalities
            .iter()
            .map(|f| {
                if f.normal.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: f.normal.len(),
                    });
                }
                let mut r = vec![f.rhs.clone()];
                r.extend(f.normal.iter().map(|x| -x));
                Ok(r)
            })
            .collect::<Result<_>>()?;
        let mut t = vec![BigInt::zero(); dim + 1];
        t[0] = BigInt::one();
        rows.push(t);
        let rays = extreme_rays(&rows, dim + 1).ok_or(Error::Unbounded)?;
        let mut vertices = Vec::new();
        for r in rays {
            if !r[0].is_positive() {
                return Err(Error::Unbounded);
            }
            let t = BigRational::from_integer(r[0].clone());
            vertices.push(r[1..].iter().map(|x| BigRational::from_integer(x.clone()) / &t).collect());
        }
        Self::from_points(dim, &vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    /// Facet inequalities in canonical order.
    pub fn facets(&self) -> &[Inequality] {
        &self.facets
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.dim && self.facets.iter().all(|f| f.holds(x))
    }

    pub fn contains_integer(&self, x: &[i64]) -> bool {
        let q: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        self.contains(&q)
    }

    /// Integer points of `k P`, in lexicographic order.
    pub fn lattice_points(&self, k: i64) -> Result<Vec<Vec<i64>>> {
        if k < 1 {
            return Err(Error::BadDilation);
        }
        let kq = BigRational::from_integer(k.into());
        let bound = |pick: fn(&BigRational, &BigRational) -> bool, round: fn(&BigRational) -> BigRational| {
            (0..self.dim)
                .map(|i| {
                    let best = self
                        .vertices
                        .iter()
                        .map(|v| &v[i])
                        .reduce(|a, b| if pick(b, a) { b } else { a })
                        .expect("a polytope has vertices");
                    round(&(best * &kq)).to_integer().to_i64().expect("bounding box fits in i64")
                })
                .collect::<Vec<i64>>()
        };
        let lo = bound(|a, b| a < b, |x| x.ceil());
        let hi = bound(|a, b| a > b, |x| x.floor());
        let facets: Vec<(Vec<i128>, i128)> = self
            .facets
            .iter()
            .map(|f| {
                let normal = f.normal.iter().map(|x| x.to_i128().expect("small facet normal")).collect();
                (normal, f.rhs.to_i128().expect("small facet bound") * k as i128)
            })
            .collect();
        let mut out = Vec::new();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Ok(out);
        }
        let mut x = lo.clone();
        loop {
            if facets
                .iter()
                .all(|(a, b)| a.iter().zip(&x).map(|(ai, &xi)| ai * xi as i128).sum::<i128>() <= *b)
            {
                out.push(x.clone());
            }
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if x[i] < hi[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = lo[i];
            }
        }
    }

    pub fn export(&self, points: Vec<Vec<i64>>) -> PolytopeExport {
        PolytopeExport {
            ambient_dim: self.dim,
            vrep: self
                .vertices
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect(),
            hrep: self
                .facets
                .iter()
                .map(|f| InequalityExport {
                    normal: f.normal.iter().map(ToString::to_string).collect(),
                    rhs: f.rhs.to_string(),
                })
                .collect(),
            lattice_points: points,
        }
    }
}

/// A point of the polytope is a vertex when its tight facet normals span.
fn is_vertex(p: &[BigRational], facets: &[Inequality]) -> bool {
    let tight: Matrix = facets
        .iter()
        .filter(|f| f.is_tight(p))
        .map(|f| f.normal.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    tight.len() >= p.len() && rank(&tight) == p.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn square_hull() {
        let pts = vec![q(&[0, 0]), q(&[2, 0]), q(&[0, 2]), q(&[2, 2]), q(&[1, 1])];
        let p = RationalPolytope::from_points(2, &pts).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert!(p.contains(&q(&[1, 2])));
        assert!(!p.contains(&q(&[3, 1])));
        assert_eq!(p.lattice_points(1).unwrap().len(), 9);
    }

    #[test]
    fn simplex_from_inequalities() {
        let f = |n: &[i64], r: i64| Inequality::new(q(n), BigRational::from_integer(r.into()));
        let ineqs = vec![f(&[-1, 0], 0), f(&[0, -1], 0), f(&[1, 1], 1), f(&[2, 2], 2)];
        let p = RationalPolytope::from_inequalities(2, &ineqs).unwrap();
        assert_eq!(p.vertices(), &[q(&[0, 0]), q(&[0, 1]), q(&[1, 0])]);
        assert_eq!(p.facets().len(), 3);
        assert_eq!(p.lattice_points(2).unwrap().len(), 6);
        assert_eq!(p.lattice_points(0), Err(Error::BadDilation));
    }

    #[test]
    fn unbounded_and_flat_inputs() {
        let f = |n: &[i64], r: i64| Inequality::new(q(n), BigRational::from_integer(r.into()));
        let quadrant = vec![f(&[-1, 0], 0), f(&[0, -1], 0)];
        assert_eq!(RationalPolytope::from_inequalities(2, &quadrant), Err(Error::Unbounded));
        let half = vec![f(&[-1, 0], 0)];
        assert_eq!(RationalPolytope::from_inequalities(2, &half), Err(Error::Unbounded));
        let segment = vec![q(&[0, 0]), q(&[1, 1])];
        assert!(matches!(
            RationalPolytope::from_points(2, &segment),
            Err(Error::NotFullDimensional { rank: 1, dim: 2 })
        ));
    }

    #[test]
    fn rational_vertices() {
        let half = BigRational::new(1.into(), 2.into());
        let zero = BigRational::zero();
        let pts = vec![
            vec![zero.clone(), zero.clone()],
            vec![half.clone(), zero.clone()],
            vec![zero.clone(), half.clone()],
        ];
        let p = RationalPolytope::from_points(2, &pts).unwrap();
        assert_eq!(p.facets().iter().find(|f| f.rhs.is_positive()).unwrap().rhs, BigInt::one());
        assert_eq!(p.lattice_points(1).unwrap(), vec![vec![0, 0]]);
        assert_eq!(p.lattice_points(2).unwrap().len(), 3);
    }

    #[test]
    fn unit_segment_dilations() {
        let p = RationalPolytope::from_points(1, &[q(&[0]), q(&[1])]).unwrap();
        assert_eq!(p.lattice_points(3).unwrap(), vec![vec![0], vec![1], vec![2], vec![3]]);
    }
}
