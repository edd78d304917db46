//! Gelfand-Tsetlin (order) and FFLV (chain) polytopes of the root poset
//! `R(d, n)`, the Newton-Okounkov bodies of the chain valuations, the
//! maximal-chain triangulation and the transfer map.
//!
//! Points live in `R^M`, `M = d (n - d)`, with the row-major cell coordinate
//! of [`Grassmannian::cell_coordinate`]. Lattice points of the order polytope
//! are characteristic vectors of order ideals (down-sets) of `R(d, n)`.

pub mod hull;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::idn::{as_positive_root, PluckerIndex, RootCell};
use crate::grassmann::Grassmannian;
use crate::lattice::{Elem, MaximalChain};
use crate::valuation::{chain_valuation, determinant, Family, Laurent};

pub use hull::{Inequality, PolytopeExport, RationalPolytope};

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn unit(dim: usize, k: usize, v: i64) -> Vec<BigRational> {
    let mut x = vec![BigRational::zero(); dim];
    x[k] = q(v);
    x
}

pub fn to_rational(x: &[i64]) -> Vec<BigRational> {
    x.iter().map(|&v| q(v)).collect()
}

/// Converts an integral rational vector back to integers.
pub fn to_integer(x: &[BigRational]) -> Option<Vec<i64>> {
    x.iter()
        .map(|v| v.is_integer().then(|| num_traits::ToPrimitive::to_i64(&v.to_integer())).flatten())
        .collect()
}

/// Cells `u` covering `t` in `R(d, n)`: `(i+1, j)` and `(i, j+1)`.
fn upper_covers(g: &Grassmannian, t: RootCell) -> Vec<RootCell> {
    let mut out = Vec::with_capacity(2);
    if t.i < g.d() {
        out.push(RootCell { i: t.i + 1, j: t.j });
    }
    if t.j + 1 < g.n() {
        out.push(RootCell { i: t.i, j: t.j + 1 });
    }
    out
}

/// `{ 0 <= x <= 1, x_u <= x_t whenever t < u }`: the Gelfand-Tsetlin polytope.
pub fn order_polytope(g: &Grassmannian) -> Result<RationalPolytope> {
    let m = g.root_count();
    let mut ineqs = Vec::new();
    for t in g.cells() {
        let k = g.cell_coordinate(t);
        ineqs.push(Inequality::new(unit(m, k, -1), q(0)));
        ineqs.push(Inequality::new(unit(m, k, 1), q(1)));
        for u in upper_covers(g, t) {
            let mut a = unit(m, g.cell_coordinate(u), 1);
            a[k] = q(-1);
            ineqs.push(Inequality::new(a, q(0)));
        }
    }
    RationalPolytope::from_inequalities(m, &ineqs)
}

/// `chi` of an order ideal of `J(L)*`, in cell coordinates.
pub fn ideal_point(g: &Grassmannian, e: Elem) -> Vec<i64> {
    let mut x = vec![0; g.root_count()];
    for p in g.lattice().ideal(e).iter() {
        x[g.cell_coordinate(g.cell_of_irreducible(p))] = 1;
    }
    x
}

/// The Newton-Okounkov body of `nu_{C,Spec}`: the hull of the values of the
/// degree-one standard monomials. Coordinate `i` is the chain's `m_{i+1}`.
#[derive(Clone, Debug)]
pub struct NoBody {
    pub chain: MaximalChain,
    /// `Gamma(R_1)`: one value per element of the lattice, in element order.
    pub points: Vec<Vec<i64>>,
    /// Cell of `R(d, n)` matched with each coordinate.
    pub cells: Vec<RootCell>,
    pub polytope: RationalPolytope,
}

impl NoBody {
    /// Moves a point from chain coordinates to cell coordinates.
    pub fn to_cells<T: Clone + Default>(&self, g: &Grassmannian, x: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); x.len()];
        for (k, v) in x.iter().enumerate() {
            out[g.cell_coordinate(self.cells[k])] = v.clone();
        }
        out
    }
}

pub fn no_body(g: &Grassmannian, chain: &MaximalChain) -> Result<NoBody> {
    let l = g.lattice();
    let nu = chain_valuation(l, chain, Family::Spec)?;
    let points: Vec<Vec<i64>> = l
        .elements()
        .map(|e| nu.valuate(&Laurent::xhat(l, e)).coords().to_vec())
        .collect();
    let cells = nu
        .enumeration()
        .order()
        .iter()
        .map(|&m| g.cell_of_irreducible(l.irreducible_index(m).expect("enumerations list irreducibles")))
        .collect();
    let rational: Vec<Vec<BigRational>> = points.iter().map(|p| to_rational(p)).collect();
    let polytope = RationalPolytope::from_points(g.root_count(), &rational)?;
    Ok(NoBody {
        chain: chain.clone(),
        points,
        cells,
        polytope,
    })
}

/// A maximal monotone path in `R(d, n)` from `alpha_{1,d}` to `alpha_{d,n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DyckPath {
    pub roots: Vec<RootCell>,
}

/// Maximal Dyck paths; every other Dyck path is a sub-path of one of these,
/// so their inequalities imply the rest on the nonnegative orthant.
pub fn dyck_paths(g: &Grassmannian) -> Vec<DyckPath> {
    fn go(g: &Grassmannian, path: &mut Vec<RootCell>, out: &mut Vec<DyckPath>) {
        let last = *path.last().unwrap();
        if last.i == g.d() && last.j == g.n() - 1 {
            out.push(DyckPath { roots: path.clone() });
            return;
        }
        for next in [RootCell { i: last.i, j: last.j + 1 }, RootCell { i: last.i + 1, j: last.j }] {
            if next.i <= g.d() && next.j < g.n() {
                path.push(next);
                go(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if g.root_count() > 0 {
        go(g, &mut vec![RootCell { i: 1, j: g.d() }], &mut out);
    }
    out
}

/// `{ x >= 0, sum over each Dyck path <= 1 }`: the FFLV polytope.
pub fn fflv_polytope(g: &Grassmannian) -> Result<RationalPolytope> {
    let m = g.root_count();
    let mut ineqs: Vec<Inequality> = (0..m).map(|k| Inequality::new(unit(m, k, -1), q(0))).collect();
    for path in dyck_paths(g) {
        let mut a = vec![BigRational::zero(); m];
        for &c in &path.roots {
            a[g.cell_coordinate(c)] = BigRational::one();
        }
        ineqs.push(Inequality::new(a, q(1)));
    }
    RationalPolytope::from_inequalities(m, &ineqs)
}

/// `p([1, ..., s, i_{s+1}, ..., i_d]) = [1, ..., s, s+1, i_{s+1}, ..., i_{d-1}]`
/// where `i_{s+1} != s + 1`.
pub fn pairing_map(g: &Grassmannian, e: Elem) -> Result<Elem> {
    let t = g.tuple(e).entries();
    let s = t.iter().enumerate().take_while(|(k, &v)| v == k + 1).count();
    if s == t.len() {
        return Err(Error::PairingOfBottom);
    }
    let mut next: Vec<usize> = (1..=s + 1).collect();
    next.extend_from_slice(&t[s..t.len() - 1]);
    g.element(&PluckerIndex::new(next, g.n())?)
}

/// The antichain `beta(I)` of `R(d, n)` with its characteristic vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntiChainPoint {
    pub roots: Vec<RootCell>,
    pub chi: Vec<i64>,
}

/// `beta_s = omega(Spec(I_{s-1}) \ Spec(I_s))` along the pairing sequence.
pub fn beta(g: &Grassmannian, e: Elem) -> AntiChainPoint {
    let l = g.lattice();
    let mut roots = Vec::new();
    let mut current = e;
    while current != l.bottom() {
        let next = pairing_map(g, current).expect("current is not the bottom");
        let diff = l.ideal(current).difference(l.ideal(next));
        let root = as_positive_root(&g.omega_of(diff)).expect("each pairing step removes one positive root");
        roots.push(root);
        current = next;
    }
    let mut chi = vec![0; g.root_count()];
    for &r in &roots {
        chi[g.cell_coordinate(r)] = 1;
    }
    AntiChainPoint { roots, chi }
}

/// A lattice simplex indexed by a maximal chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub chain: MaximalChain,
    pub vertices: Vec<Vec<i64>>,
}

impl Simplex {
    /// Determinant of the edge vectors `v_1 - v_0, ..., v_M - v_0`.
    pub fn edge_determinant(&self) -> i128 {
        let v0 = &self.vertices[0];
        let columns: Vec<Vec<i64>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        determinant(&columns)
    }

    /// `M!` times the Euclidean volume.
    pub fn normalized_volume(&self) -> u128 {
        self.edge_determinant().unsigned_abs()
    }

    pub fn is_unimodular(&self) -> bool {
        self.normalized_volume() == 1
    }
}

/// One simplex per maximal chain: the characteristic vectors of
/// `Spec(c_0), ..., Spec(c_N)` in cell coordinates.
pub fn triangulate(g: &Grassmannian) -> Vec<Simplex> {
    let chains: Vec<MaximalChain> = g.lattice().maximal_chains().collect();
    chains
        .into_par_iter()
        .map(|c| Simplex {
            vertices: c.elements().iter().map(|&e| ideal_point(g, e)).collect(),
            chain: c,
        })
        .collect()
}

/// Stanley's transfer map in the down-set convention:
/// `phi(x)_t = x_t - max { x_u : u covers t }`, with the empty max equal to 0.
pub fn transfer(g: &Grassmannian, order: &RationalPolytope, x: &[BigRational]) -> Result<Vec<BigRational>> {
    if x.len() != g.root_count() {
        return Err(Error::DimensionMismatch {
            expected: g.root_count(),
            found: x.len(),
        });
    }
    if !order.contains(x) {
        return Err(Error::OutsidePolytope);
    }
    Ok(transfer_unchecked(g, x))
}

pub fn transfer_unchecked(g: &Grassmannian, x: &[BigRational]) -> Vec<BigRational> {
    g.cells()
        .into_iter()
        .map(|t| {
            let k = g.cell_coordinate(t);
            let above = upper_covers(g, t)
                .into_iter()
                .map(|u| &x[g.cell_coordinate(u)])
                .max()
                .cloned()
                .unwrap_or_else(BigRational::zero);
            &x[k] - above
        })
        .collect()
}

/// Inverse of [`transfer`]: `x_t = y_t + max { x_u : u covers t }`, filled in
/// from the top of the poset down.
pub fn transfer_inverse(g: &Grassmannian, y: &[BigRational]) -> Vec<BigRational> {
    let mut x = vec![BigRational::zero(); y.len()];
    let mut cells = g.cells();
    cells.sort_by_key(|c| std::cmp::Reverse(c.i + c.j));
    for t in cells {
        let above = upper_covers(g, t)
            .into_iter()
            .map(|u| x[g.cell_coordinate(u)].clone())
            .max()
            .unwrap_or_else(BigRational::zero);
        let k = g.cell_coordinate(t);
        x[k] = &y[k] + above;
    }
    x
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SimplexExport {
    pub chain: Vec<String>,
    pub vertices: Vec<Vec<i64>>,
    pub normalized_volume: u128,
}

impl Simplex {
    pub fn export(&self, g: &Grassmannian) -> SimplexExport {
        SimplexExport {
            chain: self.chain.elements().iter().map(|&e| g.lattice().label(e).to_string()).collect(),
            vertices: self.vertices.clone(),
            normalized_volume: self.normalized_volume(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_map_steps() {
        let g = Grassmannian::new(4, 7).unwrap();
        let e = |v: &[usize]| g.elem(v).unwrap();
        assert_eq!(pairing_map(&g, e(&[2, 4, 5, 7])).unwrap(), e(&[1, 2, 4, 5]));
        assert_eq!(pairing_map(&g, e(&[1, 2, 4, 5])).unwrap(), e(&[1, 2, 3, 4]));
        assert_eq!(pairing_map(&g, e(&[1, 2, 3, 4])), Err(Error::PairingOfBottom));
    }

    #[test]
    fn transfer_roundtrip_on_a_point() {
        let g = Grassmannian::new(2, 4).unwrap();
        let x = to_rational(&ideal_point(&g, g.elem(&[2, 4]).unwrap()));
        let y = transfer_unchecked(&g, &x);
        assert_eq!(transfer_inverse(&g, &y), x);
    }
}
