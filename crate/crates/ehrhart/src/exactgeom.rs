//! Exact rational polyhedral primitives: facet enumeration, point
//! classification, normalized simplex volumes and lower hulls of weight lifts.
//!
//! Everything here is brute force over exact integers. Ambient dimensions in
//! this crate stay at desk scale (d <= 7), so hyperplane enumeration over
//! point subsets beats an incremental hull in both simplicity and
//! auditability.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{self, Int, Rat};
use crate::{Error, Result};

pub type LatticePoint = Vec<Int>;

pub fn lattice_point(coords: &[i64]) -> LatticePoint {
    coords.iter().map(|&c| Int::from(c)).collect()
}

/// A primitive facet inequality `normal . x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacetInequality {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl FacetInequality {
    /// Evaluates `offset - normal . x`; nonnegative iff `x` satisfies the inequality.
    pub fn slack(&self, x: &[Int]) -> Int {
        &self.offset - linalg::dot(&self.normal, x)
    }

    /// Slack against the `m`-th dilation: `m * offset - normal . x`.
    pub fn dilated_slack(&self, x: &[Int], m: &Int) -> Int {
        m * &self.offset - linalg::dot(&self.normal, x)
    }

    pub fn slack_rat(&self, x: &[Rat]) -> Rat {
        let mut acc = Rat::from_integer(self.offset.clone());
        for (a, xi) in self.normal.iter().zip(x) {
            acc -= Rat::from_integer(a.clone()) * xi;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    Interior,
    Boundary,
    Outside,
}

/// A full-dimensional lattice polytope given by its extreme points together
/// with the derived irredundant primitive facet description.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    pub dim: usize,
    pub vertices: Vec<LatticePoint>,
    pub facets: Vec<FacetInequality>,
}

/// Irredundant primitive facet inequalities of `conv(points)`, sorted
/// lexicographically by normal vector. Duplicate and interior input points
/// are harmless; the hull is unchanged.
pub fn facet_enumeration(points: &[LatticePoint]) -> Result<Vec<FacetInequality>> {
    let d = points.first().map(|p| p.len()).unwrap_or(0);
    if d == 0 || affine_rank(points) < d {
        return Err(Error::NotFullDimensional);
    }
    let mut seen: BTreeSet<(Vec<Int>, Int)> = BTreeSet::new();
    for combo in (0..points.len()).combinations(d) {
        let base = &points[combo[0]];
        let diffs: Vec<Vec<Int>> = combo[1..]
            .iter()
            .map(|&i| sub(&points[i], base))
            .collect();
        let mut normal = linalg::cross_normal(&diffs);
        if normal.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut offset = linalg::dot(&normal, base);
        match side_of_all(points, &normal, &offset) {
            Some(true) => {}
            Some(false) => {
                normal.iter_mut().for_each(|x| *x = -x.clone());
                offset = -offset;
            }
            None => continue,
        }
        let g = normal
            .iter()
            .fold(Int::zero(), |acc, x| acc.gcd(x));
        if g > Int::one() {
            normal.iter_mut().for_each(|x| *x = &*x / &g);
            offset = &offset / &g;
        }
        seen.insert((normal, offset));
    }
    Ok(seen
        .into_iter()
        .map(|(normal, offset)| FacetInequality { normal, offset })
        .collect())
}

/// `Some(true)` if all points satisfy `normal.x <= offset`, `Some(false)` if
/// all satisfy `>=`, `None` if the hyperplane separates.
fn side_of_all(points: &[LatticePoint], normal: &[Int], offset: &Int) -> Option<bool> {
    let mut below = false;
    let mut above = false;
    for p in points {
        match linalg::dot(normal, p).cmp(offset) {
            std::cmp::Ordering::Less => below = true,
            std::cmp::Ordering::Greater => above = true,
            std::cmp::Ordering::Equal => {}
        }
        if below && above {
            return None;
        }
    }
    if above {
        Some(false)
    } else {
        Some(true)
    }
}

fn sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn affine_rank(points: &[LatticePoint]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Vec<Int>> = points[1..].iter().map(|p| sub(p, base)).collect();
    linalg::rank(&diffs)
}

impl LatticePolytope {
    /// Builds the polytope from any spanning point set; non-extreme points are
    /// dropped and vertices are stored in lexicographic order.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self> {
        let facets = facet_enumeration(points)?;
        let d = points[0].len();
        let mut vertices: Vec<LatticePoint> = points
            .iter()
            .filter(|p| {
                let tight: Vec<Vec<Int>> = facets
                    .iter()
                    .filter(|f| f.slack(p).is_zero())
                    .map(|f| f.normal.clone())
                    .collect();
                tight.len() >= d && linalg::rank(&tight) == d
            })
            .cloned()
            .collect();
        vertices.sort();
        vertices.dedup();
        Ok(LatticePolytope {
            dim: d,
            vertices,
            facets,
        })
    }

    pub fn classify(&self, p: &[Rat]) -> Result<PointLocation> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        let mut on_boundary = false;
        for f in &self.facets {
            let s = f.slack_rat(p);
            if s.is_negative() {
                return Ok(PointLocation::Outside);
            }
            if s.is_zero() {
                on_boundary = true;
            }
        }
        Ok(if on_boundary {
            PointLocation::Boundary
        } else {
            PointLocation::Interior
        })
    }

    /// Classifies an integer point against the dilation `m * P`.
    pub fn classify_dilated(&self, x: &[Int], m: &Int) -> PointLocation {
        let mut on_boundary = false;
        for f in &self.facets {
            let s = f.dilated_slack(x, m);
            if s.is_negative() {
                return PointLocation::Outside;
            }
            if s.is_zero() {
                on_boundary = true;
            }
        }
        if on_boundary {
            PointLocation::Boundary
        } else {
            PointLocation::Interior
        }
    }

    /// Indices (into `pts`) of the points lying on facet `f`.
    pub fn tight_indices(&self, f: &FacetInequality, pts: &[LatticePoint]) -> Vec<usize> {
        pts.iter()
            .enumerate()
            .filter(|(_, p)| f.slack(p).is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Normalized volume `|det(p_1 - p_0, ..., p_d - p_0)|` of `d + 1` points in
/// dimension `d`; zero signals affine dependence.
pub fn simplex_normalized_volume(points: &[LatticePoint]) -> Int {
    let d = points[0].len();
    debug_assert_eq!(points.len(), d + 1);
    let base = &points[0];
    let diffs: Vec<Vec<Int>> = points[1..].iter().map(|p| sub(p, base)).collect();
    linalg::det(&diffs).abs()
}

/// Normalized volume of a (d-1)-simplex lying in the facet hyperplane
/// `normal . x = offset`, measured in the induced lattice of the hyperplane.
/// Extends the difference matrix by any lattice vector `z` with
/// `normal . z = 1` (exists since facet normals are primitive).
pub fn facet_simplex_normalized_volume(facet: &FacetInequality, points: &[LatticePoint]) -> Int {
    let d = points[0].len();
    debug_assert_eq!(points.len(), d);
    let z = linalg::unit_functional_point(&facet.normal)
        .expect("facet normals are primitive");
    let base = &points[0];
    let mut rows: Vec<Vec<Int>> = points[1..].iter().map(|p| sub(p, base)).collect();
    rows.push(z);
    linalg::det(&rows).abs()
}

/// Cells of the lower hull of the lifted configuration, as sorted index sets
/// into `lifted`, in deterministic (lexicographic) order. A cell lists every
/// input point lying on its lower facet, not only the vertices.
pub fn lower_hull(lifted: &[(LatticePoint, Rat)]) -> Result<Vec<Vec<usize>>> {
    let n = lifted.len();
    let d = lifted.first().map(|(p, _)| p.len()).unwrap_or(0);
    let projected: Vec<LatticePoint> = lifted.iter().map(|(p, _)| p.clone()).collect();
    if d == 0 || affine_rank(&projected) < d {
        return Err(Error::NotFullDimensional);
    }
    // clear height denominators; positive scaling of the last coordinate
    // does not change which facets are lower
    let denom_lcm = lifted
        .iter()
        .fold(Int::one(), |acc, (_, h)| acc.lcm(h.denom()));
    let lifted_pts: Vec<Vec<Int>> = lifted
        .iter()
        .map(|(p, h)| {
            let mut q = p.clone();
            q.push(h.numer() * (&denom_lcm / h.denom()));
            q
        })
        .collect();
    if affine_rank(&lifted_pts) == d {
        // the lift lies in a single non-vertical hyperplane: trivial subdivision
        return Ok(vec![(0..n).collect()]);
    }
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    for combo in (0..n).combinations(d + 1) {
        let base = &lifted_pts[combo[0]];
        let diffs: Vec<Vec<Int>> = combo[1..]
            .iter()
            .map(|&i| sub(&lifted_pts[i], base))
            .collect();
        let mut normal = linalg::cross_normal(&diffs);
        if normal.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut offset = linalg::dot(&normal, base);
        match side_of_all(&lifted_pts, &normal, &offset) {
            Some(true) => {}
            Some(false) => {
                normal.iter_mut().for_each(|x| *x = -x.clone());
                offset = -offset;
            }
            None => continue,
        }
        if !normal[d].is_negative() {
            continue; // not a lower facet
        }
        let cell: Vec<usize> = (0..n)
            .filter(|&i| linalg::dot(&normal, &lifted_pts[i]) == offset)
            .collect();
        cells.insert(cell);
    }
    Ok(cells.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn pts(v: &[&[i64]]) -> Vec<LatticePoint> {
        v.iter().map(|p| lattice_point(p)).collect()
    }

    fn rat(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    #[test]
    fn unit_simplex_facets() {
        let f = facet_enumeration(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let expected: Vec<(Vec<i64>, i64)> =
            vec![(vec![-1, 0], 0), (vec![0, -1], 0), (vec![1, 1], 1)];
        let got: Vec<(Vec<i64>, i64)> = f
            .iter()
            .map(|fi| {
                (
                    fi.normal.iter().map(|x| i64::try_from(x).unwrap()).collect(),
                    i64::try_from(&fi.offset).unwrap(),
                )
            })
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn pentagon_facets() {
        // polytope from the quadratic-generators example
        let f =
            facet_enumeration(&pts(&[&[0, 0], &[2, 0], &[2, 1], &[1, 2], &[0, 2]])).unwrap();
        assert_eq!(f.len(), 5);
        let as_pairs: Vec<(Vec<i64>, i64)> = f
            .iter()
            .map(|fi| {
                (
                    fi.normal.iter().map(|x| i64::try_from(x).unwrap()).collect(),
                    i64::try_from(&fi.offset).unwrap(),
                )
            })
            .collect();
        for expected in [
            (vec![-1, 0], 0),
            (vec![0, -1], 0),
            (vec![1, 0], 2),
            (vec![0, 1], 2),
            (vec![1, 1], 3),
        ] {
            assert!(as_pairs.contains(&expected), "missing {expected:?}");
        }
    }

    #[test]
    fn octahedron_facets() {
        let f = facet_enumeration(&pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]))
        .unwrap();
        assert_eq!(f.len(), 8);
        for fi in &f {
            assert!(fi.normal.iter().all(|x| x.abs() == Int::from(1)));
            assert_eq!(fi.offset, Int::from(1));
        }
    }

    #[test]
    fn facet_order_is_input_invariant() {
        let a = facet_enumeration(&pts(&[&[0, 0], &[2, 0], &[2, 1], &[1, 2], &[0, 2]])).unwrap();
        let b = facet_enumeration(&pts(&[&[1, 2], &[0, 2], &[0, 0], &[2, 1], &[2, 0]])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn not_full_dimensional() {
        assert!(matches!(
            facet_enumeration(&pts(&[&[0, 0], &[1, 1], &[2, 2]])),
            Err(Error::NotFullDimensional)
        ));
    }

    #[test]
    fn classify_points() {
        let oct = LatticePolytope::from_points(&pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]))
        .unwrap();
        assert_eq!(
            oct.classify(&[rat(0), rat(0), rat(0)]).unwrap(),
            PointLocation::Interior
        );
        assert_eq!(
            oct.classify(&[rat(1), rat(0), rat(0)]).unwrap(),
            PointLocation::Boundary
        );
        let tri = LatticePolytope::from_points(&pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(
            tri.classify(&[rat(1), rat(1)]).unwrap(),
            PointLocation::Outside
        );
        assert!(tri.classify(&[rat(0)]).is_err());
    }

    #[test]
    fn vertex_filtering_drops_non_extreme_points() {
        let p = LatticePolytope::from_points(&pts(&[
            &[0, 0],
            &[2, 0],
            &[1, 0], // edge midpoint
            &[1, 1], // interior-ish? actually boundary of hull conv{(0,0),(2,0),(0,2)}
            &[0, 2],
        ]))
        .unwrap();
        assert_eq!(p.vertices, pts(&[&[0, 0], &[0, 2], &[2, 0]]));
    }

    #[test]
    fn simplex_volumes() {
        assert_eq!(
            simplex_normalized_volume(&pts(&[&[0, 0], &[1, 0], &[0, 1]])),
            Int::from(1)
        );
        assert_eq!(
            simplex_normalized_volume(&pts(&[&[0, 0], &[1, 0], &[4, 5]])),
            Int::from(5)
        );
        assert!(simplex_normalized_volume(&pts(&[&[0, 0], &[1, 1], &[2, 2]])).is_zero());
        // invariance under permutation and translation
        assert_eq!(
            simplex_normalized_volume(&pts(&[&[5, 5], &[9, 10], &[6, 5]])),
            Int::from(5)
        );
    }

    #[test]
    fn lower_hull_square() {
        let square = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let flat: Vec<(LatticePoint, Rat)> =
            square.iter().map(|p| (p.clone(), rat(0))).collect();
        assert_eq!(lower_hull(&flat).unwrap(), vec![vec![0, 1, 2, 3]]);

        let tilted: Vec<(LatticePoint, Rat)> = square
            .iter()
            .map(|p| {
                let h = if p == &lattice_point(&[1, 1]) { rat(1) } else { rat(0) };
                (p.clone(), h)
            })
            .collect();
        let cells = lower_hull(&tilted).unwrap();
        assert_eq!(cells, vec![vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn lower_hull_simplex_any_heights() {
        let tri = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        let lift: Vec<(LatticePoint, Rat)> = tri
            .iter()
            .zip([rat(3), rat(-7), rat(2)])
            .map(|(p, h)| (p.clone(), h))
            .collect();
        assert_eq!(lower_hull(&lift).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn facet_volume_in_induced_lattice() {
        // edge of the square from (0,0) to (2,0) on facet y = 0 has lattice length 2
        let facet = FacetInequality {
            normal: vec![Int::zero(), -Int::from(1)],
            offset: Int::zero(),
        };
        let v = facet_simplex_normalized_volume(&facet, &pts(&[&[0, 0], &[2, 0]]));
        assert_eq!(v, Int::from(2));
    }
}
