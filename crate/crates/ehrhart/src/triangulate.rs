//! Regular subdivisions and triangulations from rational weight functions:
//! genericity, unimodularity, restriction to facets, tiebreak refinement and
//! boundary-compatible extension of weights given only on the boundary.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::exactgeom::{
    self, FacetInequality, LatticePoint, LatticePolytope, PointLocation,
};
use crate::lattice::enumerate_dilation;
use crate::linalg::{Int, Rat};
use crate::simplicial::{boundary_complex, SimplicialComplex};
use crate::{Error, Result};

/// All lattice points of a polytope in lexicographic order, with boundary
/// flags. These indices name both triangulation vertices and polynomial ring
/// variables downstream, so they must never be reordered.
#[derive(Debug, Clone)]
pub struct PointConfiguration {
    pub polytope: LatticePolytope,
    pub points: Vec<LatticePoint>,
    pub boundary_mask: Vec<bool>,
}

impl PointConfiguration {
    pub fn new(polytope: LatticePolytope) -> Self {
        let points = enumerate_dilation(&polytope, 1);
        let boundary_mask = points
            .iter()
            .map(|p| {
                polytope.classify_dilated(p, &Int::from(1)) == PointLocation::Boundary
            })
            .collect();
        PointConfiguration {
            polytope,
            points,
            boundary_mask,
        }
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn boundary_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.boundary_mask[i]).collect()
    }

    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.boundary_mask[i]).collect()
    }

    /// Indices of the configuration points lying on `facet`, ascending.
    pub fn facet_point_indices(&self, facet: &FacetInequality) -> Result<Vec<usize>> {
        if !self.polytope.facets.contains(facet) {
            return Err(Error::NotAFacet);
        }
        Ok(self.polytope.tight_indices(facet, &self.points))
    }

    /// Points of a facet with one coordinate dropped (any coordinate where
    /// the facet normal is nonzero). The drop is affine and injective on the
    /// facet hyperplane, so subdivision combinatorics are preserved; metric
    /// data (volumes) are not, and must be measured in the original lattice.
    pub fn facet_projection(&self, facet: &FacetInequality) -> Result<(Vec<usize>, Vec<LatticePoint>)> {
        let idx = self.facet_point_indices(facet)?;
        let drop = facet
            .normal
            .iter()
            .position(|a| !a.is_zero())
            .expect("facet normals are nonzero");
        let projected = idx
            .iter()
            .map(|&i| {
                self.points[i]
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != drop)
                    .map(|(_, c)| c.clone())
                    .collect()
            })
            .collect();
        Ok((idx, projected))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSupport {
    Full,
    Boundary,
}

/// A rational weight on every point of its support set (all configuration
/// points, or only the boundary ones).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    pub values: BTreeMap<usize, Rat>,
    pub support: WeightSupport,
}

impl WeightFunction {
    pub fn full(values: Vec<Rat>) -> Self {
        WeightFunction {
            values: values.into_iter().enumerate().collect(),
            support: WeightSupport::Full,
        }
    }

    pub fn boundary(config: &PointConfiguration, f: impl Fn(&LatticePoint) -> Rat) -> Self {
        WeightFunction {
            values: config
                .boundary_indices()
                .into_iter()
                .map(|i| (i, f(&config.points[i])))
                .collect(),
            support: WeightSupport::Boundary,
        }
    }

    pub fn full_from_fn(config: &PointConfiguration, f: impl Fn(&LatticePoint) -> Rat) -> Self {
        WeightFunction::full(config.points.iter().map(f).collect())
    }

    pub fn get(&self, i: usize) -> &Rat {
        self.values
            .get(&i)
            .expect("weight queried outside its support")
    }
}

/// A triangulation of the configuration's polytope by cells of `d + 1`
/// configuration indices each.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub cells: Vec<Vec<usize>>,
    pub config: PointConfiguration,
    pub inducing_weights: Option<WeightFunction>,
}

/// Cells of the regular subdivision induced by lifting each point to its
/// weight and projecting the lower hull back down. Every cell lists all
/// configuration points on its lower facet, so non-generic weights are
/// reported honestly as coarse cells.
pub fn regular_subdivision(config: &PointConfiguration, w: &WeightFunction) -> Result<Vec<Vec<usize>>> {
    assert_eq!(w.support, WeightSupport::Full, "subdivision needs weights on all points");
    let lifted: Vec<(LatticePoint, Rat)> = config
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), w.get(i).clone()))
        .collect();
    exactgeom::lower_hull(&lifted)
}

/// True iff every cell is a full-dimensional simplex on exactly d + 1 points.
pub fn is_triangulation(cells: &[Vec<usize>], config: &PointConfiguration) -> bool {
    let d = config.dim();
    cells.iter().all(|c| {
        c.len() == d + 1 && {
            let pts: Vec<LatticePoint> = c.iter().map(|&i| config.points[i].clone()).collect();
            !exactgeom::simplex_normalized_volume(&pts).is_zero()
        }
    })
}

pub fn is_unimodular(t: &Triangulation) -> bool {
    t.cells.iter().all(|c| {
        let pts: Vec<LatticePoint> = c.iter().map(|&i| t.config.points[i].clone()).collect();
        exactgeom::simplex_normalized_volume(&pts) == Int::from(1)
    })
}

/// Sum of normalized cell volumes; equals d! vol(P) for any triangulation.
pub fn total_normalized_volume(cells: &[Vec<usize>], config: &PointConfiguration) -> Int {
    cells
        .iter()
        .map(|c| {
            let pts: Vec<LatticePoint> = c.iter().map(|&i| config.points[i].clone()).collect();
            exactgeom::simplex_normalized_volume(&pts)
        })
        .sum()
}

/// Cells of a subdivision restricted to a facet: the (d-1)-dimensional
/// intersections, re-indexed by position in the facet's point list.
pub fn restrict_to_face(
    cells: &[Vec<usize>],
    config: &PointConfiguration,
    facet: &FacetInequality,
) -> Result<Vec<Vec<usize>>> {
    let face_idx = config.facet_point_indices(facet)?;
    let pos: BTreeMap<usize, usize> = face_idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let d = config.dim();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for cell in cells {
        let hit: Vec<usize> = cell.iter().copied().filter(|i| pos.contains_key(i)).collect();
        if hit.len() < d {
            continue;
        }
        let pts: Vec<LatticePoint> = hit.iter().map(|&i| config.points[i].clone()).collect();
        if exactgeom::affine_rank(&pts) == d - 1 {
            out.push(hit.iter().map(|i| pos[i]).collect());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Refines each non-simplex cell by a secondary weight, recursively. Used to
/// realize weight orders whose ties are broken by a generic tiebreak weight.
/// Fails if some cell's points are not separated by the secondary weight.
pub fn refine_by_secondary_weights(
    cells: &[Vec<usize>],
    config: &PointConfiguration,
    secondary: &[Rat],
) -> Result<Vec<Vec<usize>>> {
    let d = config.dim();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for cell in cells {
        if cell.len() == d + 1 {
            out.push(cell.clone());
            continue;
        }
        let lifted: Vec<(LatticePoint, Rat)> = cell
            .iter()
            .map(|&i| (config.points[i].clone(), secondary[i].clone()))
            .collect();
        let sub = exactgeom::lower_hull(&lifted)?;
        if sub.len() == 1 && sub[0].len() == cell.len() {
            return Err(Error::NonGenericWeights);
        }
        let sub_global: Vec<Vec<usize>> = sub
            .iter()
            .map(|c| c.iter().map(|&k| cell[k]).collect())
            .collect();
        out.extend(refine_by_secondary_weights(&sub_global, config, secondary)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The tiebreak weight vector realizing reverse-lexicographic comparison (in
/// the given variable order) on exponent vectors of total degree at most
/// `max_degree`: later variables get steeply more negative weights.
pub fn revlex_tiebreak_weights(n: usize, max_degree: usize, order: &[usize]) -> Vec<Rat> {
    let base = Int::from(max_degree as i64 + 2);
    let mut w = vec![Rat::zero(); n];
    let mut power = Int::from(1);
    for &v in order {
        power = &power * &base;
        w[v] = -Rat::from_integer(power.clone());
    }
    w
}

/// Boundary triangulation induced by weights on the boundary points: the
/// regular subdivision of every facet, required to be a triangulation, with
/// cells reported as global index sets.
pub fn boundary_triangulation(
    config: &PointConfiguration,
    w_bd: &WeightFunction,
) -> Result<SimplicialComplex> {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (fi, facet) in config.polytope.facets.iter().enumerate() {
        let (idx, projected) = config.facet_projection(facet)?;
        let lifted: Vec<(LatticePoint, Rat)> = idx
            .iter()
            .zip(&projected)
            .map(|(&i, p)| (p.clone(), w_bd.get(i).clone()))
            .collect();
        let sub = exactgeom::lower_hull(&lifted).map_err(|_| Error::BoundaryNotTriangulated(fi))?;
        let d = config.dim();
        for local in &sub {
            if local.len() != d {
                return Err(Error::BoundaryNotTriangulated(fi));
            }
            let pts: Vec<LatticePoint> = local.iter().map(|&k| config.points[idx[k]].clone()).collect();
            if exactgeom::affine_rank(&pts) != d - 1 {
                return Err(Error::BoundaryNotTriangulated(fi));
            }
            cells.push(local.iter().map(|&k| idx[k]).collect());
        }
    }
    Ok(SimplicialComplex::new(cells))
}

/// Extends weights given on the boundary points to all points so that the
/// induced regular triangulation restricts to the given boundary
/// triangulation. Interior points are pulled far below the boundary lift and
/// separated by small perturbations; if perturbation cannot produce a
/// triangulation (for example when there are no interior points to perturb),
/// the subdivision is refined by a generic tiebreak weight instead. The
/// result is re-verified, never trusted. Deterministic for a fixed seed.
pub fn extend_boundary_weights(
    config: &PointConfiguration,
    w_bd: &WeightFunction,
    seed: u64,
) -> Result<(WeightFunction, Triangulation)> {
    let delta = boundary_triangulation(config, w_bd)?;
    let interior = config.interior_indices();
    let n = config.len();
    // depth dominating every boundary weight and every perturbation
    let pull: Rat = w_bd
        .values
        .values()
        .map(|v| v.abs())
        .fold(Rat::from_integer(Int::from(1)), |a, b| a + b)
        * Rat::from_integer(Int::from(n as i64 + 2));

    let max_attempts = 16;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut first_failure: Option<(WeightFunction, Vec<Vec<usize>>)> = None;
    for attempt in 0..max_attempts {
        let mut values = vec![Rat::zero(); n];
        for (&i, v) in &w_bd.values {
            values[i] = v.clone();
        }
        for (k, &i) in interior.iter().enumerate() {
            let jitter: Rat = if attempt == 0 {
                Rat::new(Int::from(k as i64 + 1), Int::from(1000 * n as i64))
            } else {
                Rat::new(Int::from(rng.gen_range(1..1_000_000_i64)), Int::from(1_000_000_000_i64))
            };
            values[i] = -&pull + jitter;
        }
        let omega = WeightFunction::full(values);
        let cells = regular_subdivision(config, &omega)?;
        if is_triangulation(&cells, config) && boundary_complex(&cells) == delta {
            let t = Triangulation {
                cells,
                config: config.clone(),
                inducing_weights: Some(omega.clone()),
            };
            return Ok((omega, t));
        }
        if first_failure.is_none() {
            first_failure = Some((omega, cells));
        }
        if interior.is_empty() {
            break; // nothing to perturb; retries cannot change anything
        }
    }
    // refine the coarse subdivision by a generic tiebreak weight; the result
    // is still regular (it is induced by omega + epsilon * tiebreak)
    if let Some((omega, cells)) = first_failure {
        let order: Vec<usize> = (0..n).collect();
        let tiebreak = revlex_tiebreak_weights(n, n, &order);
        if let Ok(refined) = refine_by_secondary_weights(&cells, config, &tiebreak) {
            if is_triangulation(&refined, config) && boundary_complex(&refined) == delta {
                let t = Triangulation {
                    cells: refined,
                    config: config.clone(),
                    inducing_weights: Some(omega.clone()),
                };
                return Ok((omega, t));
            }
        }
    }
    Err(Error::ExtensionFailed(max_attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::lattice_point;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<LatticePoint> = v.iter().map(|p| lattice_point(p)).collect();
        LatticePolytope::from_points(&pts).unwrap()
    }

    fn rat(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    fn unit_square() -> PointConfiguration {
        PointConfiguration::new(poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]))
    }

    fn octahedron() -> PointConfiguration {
        PointConfiguration::new(poly(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]))
    }

    fn hexagon_polygon() -> PointConfiguration {
        // h* = (1, 13, 8); 16 lattice points, 10 on the boundary
        PointConfiguration::new(poly(&[
            &[0, 0],
            &[-1, 1],
            &[1, 3],
            &[4, 2],
            &[5, 1],
            &[2, 0],
        ]))
    }

    #[test]
    fn configuration_indexing() {
        let c = unit_square();
        assert_eq!(c.points, vec![
            lattice_point(&[0, 0]),
            lattice_point(&[0, 1]),
            lattice_point(&[1, 0]),
            lattice_point(&[1, 1]),
        ]);
        assert!(c.boundary_mask.iter().all(|&b| b));
        let o = octahedron();
        assert_eq!(o.len(), 7);
        assert_eq!(o.interior_indices(), vec![3]); // the origin
        let h = hexagon_polygon();
        assert_eq!(h.len(), 16);
        assert_eq!(h.boundary_indices().len(), 8);
    }

    #[test]
    fn zero_weights_give_trivial_subdivision() {
        let c = unit_square();
        let w = WeightFunction::full(vec![rat(0); 4]);
        let cells = regular_subdivision(&c, &w).unwrap();
        assert_eq!(cells, vec![vec![0, 1, 2, 3]]);
        assert!(!is_triangulation(&cells, &c));
    }

    #[test]
    fn square_splits_into_two_triangles() {
        let c = unit_square();
        let w = WeightFunction::full_from_fn(&c, |p| {
            if p == &lattice_point(&[1, 1]) { rat(1) } else { rat(0) }
        });
        let cells = regular_subdivision(&c, &w).unwrap();
        assert_eq!(cells, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(is_triangulation(&cells, &c));
        let t = Triangulation {
            cells,
            config: c,
            inducing_weights: Some(w),
        };
        assert!(is_unimodular(&t));
        assert_eq!(total_normalized_volume(&t.cells, &t.config), Int::from(2));
    }

    #[test]
    fn coned_octahedron() {
        let c = octahedron();
        let w = WeightFunction::full_from_fn(&c, |p| {
            if p.iter().all(|x| x.is_zero()) { rat(-1) } else { rat(0) }
        });
        let cells = regular_subdivision(&c, &w).unwrap();
        assert_eq!(cells.len(), 8);
        assert!(cells.iter().all(|cell| cell.contains(&3)));
        assert!(is_triangulation(&cells, &c));
        let t = Triangulation {
            cells: cells.clone(),
            config: c.clone(),
            inducing_weights: Some(w),
        };
        assert!(is_unimodular(&t));
        assert_eq!(total_normalized_volume(&cells, &c), Int::from(8));
        // boundary complex is the full octahedron boundary
        let b = boundary_complex(&cells);
        assert_eq!(b.facets.len(), 8);
        assert!(b.facets.iter().all(|f| !f.contains(&3)));
    }

    #[test]
    fn non_unimodular_cell_detected() {
        let c = PointConfiguration::new(poly(&[&[0, 0], &[1, 0], &[0, 2]]));
        let cells = vec![c
            .points
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                [lattice_point(&[0, 0]), lattice_point(&[1, 0]), lattice_point(&[0, 2])]
                    .contains(p)
            })
            .map(|(i, _)| i)
            .collect::<Vec<_>>()];
        let t = Triangulation {
            cells,
            config: c,
            inducing_weights: None,
        };
        assert!(!is_unimodular(&t));
    }

    #[test]
    fn restriction_to_facets() {
        let c = unit_square();
        let w = WeightFunction::full_from_fn(&c, |p| {
            if p == &lattice_point(&[1, 1]) { rat(1) } else { rat(0) }
        });
        let cells = regular_subdivision(&c, &w).unwrap();
        let bottom = c
            .polytope
            .facets
            .iter()
            .find(|f| f.normal == vec![Int::from(0), Int::from(-1)])
            .unwrap()
            .clone();
        // bottom facet points are (0,0) and (1,0): a single segment
        assert_eq!(restrict_to_face(&cells, &c, &bottom).unwrap(), vec![vec![0, 1]]);
        let bogus = FacetInequality {
            normal: vec![Int::from(1), Int::from(1)],
            offset: Int::from(7),
        };
        assert!(matches!(
            restrict_to_face(&cells, &c, &bogus),
            Err(Error::NotAFacet)
        ));
    }

    #[test]
    fn restriction_commutes_with_subdivision() {
        // subdividing then restricting equals restricting weights then subdividing
        let c = hexagon_polygon();
        for seed in 0..4u64 {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let w = WeightFunction::full(
                (0..c.len())
                    .map(|_| Rat::new(Int::from(rng.gen_range(-50..50_i64)), Int::from(7)))
                    .collect(),
            );
            let cells = regular_subdivision(&c, &w).unwrap();
            for facet in c.polytope.facets.clone() {
                let restricted = restrict_to_face(&cells, &c, &facet).unwrap();
                let (idx, projected) = c.facet_projection(&facet).unwrap();
                let lifted: Vec<(LatticePoint, Rat)> = idx
                    .iter()
                    .zip(&projected)
                    .map(|(&i, p)| (p.clone(), w.get(i).clone()))
                    .collect();
                let direct = exactgeom::lower_hull(&lifted).unwrap();
                assert_eq!(restricted, direct, "facet {facet:?} seed {seed}");
            }
        }
    }

    #[test]
    fn boundary_triangulation_of_square_diagonal_weights() {
        let c = unit_square();
        let w_bd = WeightFunction::boundary(&c, |p| {
            Rat::from_integer(p.iter().map(|x| x * x).sum())
        });
        let delta = boundary_triangulation(&c, &w_bd).unwrap();
        // each edge has two lattice points: four segments
        assert_eq!(
            delta,
            SimplicialComplex::new(vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]])
        );
    }

    #[test]
    fn extension_with_no_interior_points_uses_tiebreak() {
        // squared-norm weights on the square lift affinely: the subdivision
        // stays trivial and only tiebreak refinement can triangulate it
        let c = unit_square();
        let w_bd = WeightFunction::boundary(&c, |p| {
            Rat::from_integer(p.iter().map(|x| x * x).sum())
        });
        let (omega, t) = extend_boundary_weights(&c, &w_bd, 0).unwrap();
        for (&i, v) in &w_bd.values {
            assert_eq!(omega.get(i), v);
        }
        assert!(is_triangulation(&t.cells, &c));
        assert_eq!(
            boundary_complex(&t.cells),
            boundary_triangulation(&c, &w_bd).unwrap()
        );
        assert_eq!(total_normalized_volume(&t.cells, &c), Int::from(2));
    }

    #[test]
    fn extension_reproduces_coned_octahedron_shape() {
        let c = octahedron();
        let w_bd = WeightFunction::boundary(&c, |_| rat(0));
        let (omega, t) = extend_boundary_weights(&c, &w_bd, 0).unwrap();
        assert_eq!(t.cells.len(), 8);
        assert!(t.cells.iter().all(|cell| cell.contains(&3)));
        assert!(omega.get(3).is_negative());
        assert!(is_unimodular(&t));
    }

    #[test]
    fn extension_on_polygon_with_squared_norm_boundary_weights() {
        let c = hexagon_polygon();
        let w_bd = WeightFunction::boundary(&c, |p| {
            Rat::from_integer(p.iter().map(|x| x * x).sum())
        });
        let (omega, t) = extend_boundary_weights(&c, &w_bd, 0).unwrap();
        for (&i, v) in &w_bd.values {
            assert_eq!(omega.get(i), v);
        }
        assert!(is_triangulation(&t.cells, &c));
        assert_eq!(
            boundary_complex(&t.cells),
            boundary_triangulation(&c, &w_bd).unwrap()
        );
        // determinism under a fixed seed
        let (omega2, t2) = extend_boundary_weights(&c, &w_bd, 0).unwrap();
        assert_eq!(omega.values, omega2.values);
        assert_eq!(t.cells, t2.cells);
    }

    #[test]
    fn non_generic_boundary_weights_rejected() {
        // the bottom edge of conv{(0,0),(2,0),(0,1)} carries the midpoint
        // (1,0); zero weights cannot split it
        let c = PointConfiguration::new(poly(&[&[0, 0], &[2, 0], &[0, 1]]));
        let w_bd = WeightFunction::boundary(&c, |_| rat(0));
        assert!(matches!(
            boundary_triangulation(&c, &w_bd),
            Err(Error::BoundaryNotTriangulated(_))
        ));
        assert!(matches!(
            extend_boundary_weights(&c, &w_bd, 0),
            Err(Error::BoundaryNotTriangulated(_))
        ));
    }

    #[test]
    fn tiebreak_weights_realize_reverse_lexicographic_order() {
        let order: Vec<usize> = (0..3).collect();
        let w = revlex_tiebreak_weights(3, 2, &order);
        // among degree-2 monomials, x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
        let dot = |e: &[i64]| -> Rat {
            e.iter()
                .zip(&w)
                .map(|(&c, wi)| Rat::from_integer(Int::from(c)) * wi)
                .fold(Rat::zero(), |a, b| a + b)
        };
        let monomials: Vec<Vec<i64>> = vec![
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ];
        for pair in monomials.windows(2) {
            assert!(dot(&pair[0]) > dot(&pair[1]), "{:?} vs {:?}", pair[0], pair[1]);
        }
    }
}
