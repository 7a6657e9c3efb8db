//! Lattice point enumeration of polytope dilations and extraction of the
//! Ehrhart h*-data of P, of its boundary and of its interior.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactgeom::{LatticePoint, LatticePolytope, PointLocation};
use crate::linalg::{self, Int, Rat};
use crate::report::{json_ints, VerificationReport};
use crate::{Error, Result};

/// Dilation point counts of P, its boundary and its interior, for m = 0..=M.
/// Both `counts[0]` and `counts_boundary[0]` are 1 by the series convention.
#[derive(Debug, Clone)]
pub struct EhrhartProfile {
    pub d: usize,
    pub counts: Vec<Int>,
    pub counts_boundary: Vec<Int>,
    pub counts_interior: Vec<Int>,
    pub max_dilation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStarVector {
    pub coeffs: Vec<Int>,
    pub denominator_exponent: usize,
}

impl HStarVector {
    pub fn coeff(&self, i: isize) -> Int {
        if i < 0 || i as usize >= self.coeffs.len() {
            Int::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Degree of the numerator polynomial (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }
}

/// All points of `m * P` intersected with the integer lattice, in
/// lexicographic order, by bounding-box sweep with scaled facet offsets.
pub fn enumerate_dilation(p: &LatticePolytope, m: usize) -> Vec<LatticePoint> {
    let d = p.dim;
    if m == 0 {
        return vec![vec![Int::zero(); d]];
    }
    let mi = Int::from(m);
    let mut lo = vec![Int::zero(); d];
    let mut hi = vec![Int::zero(); d];
    for i in 0..d {
        lo[i] = p.vertices.iter().map(|v| &v[i] * &mi).min().unwrap();
        hi[i] = p.vertices.iter().map(|v| &v[i] * &mi).max().unwrap();
    }
    if let Some(points) = enumerate_box_i64(p, &mi, &lo, &hi) {
        return points;
    }
    // exact fallback for coordinates outside the fast-path range
    let mut out = Vec::new();
    let mut cursor: Vec<Int> = lo.clone();
    'outer: loop {
        if p.classify_dilated(&cursor, &mi) != PointLocation::Outside {
            out.push(cursor.clone());
        }
        for i in (0..d).rev() {
            cursor[i] += 1;
            if cursor[i] <= hi[i] {
                continue 'outer;
            }
            cursor[i] = lo[i].clone();
        }
        break;
    }
    out.sort();
    out
}

/// i64 sweep; bails out (returns None) if any value risks overflow.
fn enumerate_box_i64(
    p: &LatticePolytope,
    m: &Int,
    lo: &[Int],
    hi: &[Int],
) -> Option<Vec<LatticePoint>> {
    const LIMIT: i64 = 1 << 20;
    let d = p.dim;
    let small = |v: &Int| v.to_i64().filter(|x| x.abs() < LIMIT);
    let lo: Vec<i64> = lo.iter().map(small).collect::<Option<_>>()?;
    let hi: Vec<i64> = hi.iter().map(small).collect::<Option<_>>()?;
    let m64 = small(m)?;
    let facets: Vec<(Vec<i64>, i64)> = p
        .facets
        .iter()
        .map(|f| {
            let normal: Option<Vec<i64>> = f.normal.iter().map(small).collect();
            Some((normal?, small(&f.offset)? * m64))
        })
        .collect::<Option<_>>()?;
    let mut out = Vec::new();
    let mut cursor = lo.clone();
    'outer: loop {
        let inside = facets
            .iter()
            .all(|(a, b)| a.iter().zip(&cursor).map(|(ai, xi)| ai * xi).sum::<i64>() <= *b);
        if inside {
            out.push(cursor.iter().map(|&x| Int::from(x)).collect());
        }
        for i in (0..d).rev() {
            cursor[i] += 1;
            if cursor[i] <= hi[i] {
                continue 'outer;
            }
            cursor[i] = lo[i];
        }
        break;
    }
    Some(out)
}

/// Counts the points of each dilation up to `max_dilation`, split by the
/// facet classification.
pub fn ehrhart_profile(p: &LatticePolytope, max_dilation: usize) -> EhrhartProfile {
    let mut counts = vec![Int::one()];
    let mut counts_boundary = vec![Int::one()];
    let mut counts_interior = vec![Int::zero()];
    for m in 1..=max_dilation {
        let mi = Int::from(m);
        let pts = enumerate_dilation(p, m);
        let mut boundary = Int::zero();
        let mut interior = Int::zero();
        for x in &pts {
            match p.classify_dilated(x, &mi) {
                PointLocation::Boundary => boundary += 1,
                PointLocation::Interior => interior += 1,
                PointLocation::Outside => unreachable!("enumerated point outside dilation"),
            }
        }
        counts.push(Int::from(pts.len()));
        counts_boundary.push(boundary);
        counts_interior.push(interior);
    }
    EhrhartProfile {
        d: p.dim,
        counts,
        counts_boundary,
        counts_interior,
        max_dilation,
    }
}

impl EhrhartProfile {
    pub fn hstar_p(&self) -> Result<HStarVector> {
        hstar_from_counts(&self.counts, self.d + 1, self.d)
    }

    pub fn hstar_boundary(&self) -> Result<HStarVector> {
        hstar_from_counts(&self.counts_boundary, self.d, self.d)
    }

    pub fn hstar_interior(&self) -> Result<HStarVector> {
        hstar_from_counts(&self.counts_interior, self.d + 1, self.d + 1)
    }
}

pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Numerator coefficients of `(sum counts[m] z^m) * (1 - z)^e`, i.e. the
/// binomial transform `h_k = sum_j (-1)^j C(e, j) counts[k - j]`. Transform
/// values beyond `max_deg` must vanish; a nonzero one signals a wrong
/// exponent or wrong counts.
pub fn hstar_from_counts(counts: &[Int], e: usize, max_deg: usize) -> Result<HStarVector> {
    let mut coeffs = Vec::new();
    for k in 0..counts.len() {
        let mut h = Int::zero();
        for j in 0..=k.min(e) {
            let term = binomial(e, j) * &counts[k - j];
            if j % 2 == 0 {
                h += term;
            } else {
                h -= term;
            }
        }
        if k > max_deg {
            if !h.is_zero() {
                return Err(Error::InconsistentCounts);
            }
        } else {
            coeffs.push(h);
        }
    }
    Ok(HStarVector {
        coeffs,
        denominator_exponent: e,
    })
}

/// Re-expands an h*-vector into dilation counts: coefficients of
/// `h(z) / (1 - z)^e` up to `z^max_dilation`.
pub fn counts_from_hstar(h: &HStarVector, max_dilation: usize) -> Vec<Int> {
    let e = h.denominator_exponent;
    (0..=max_dilation)
        .map(|m| {
            let mut acc = Int::zero();
            for (i, c) in h.coeffs.iter().enumerate() {
                if i <= m {
                    // coefficient of z^{m-i} in (1-z)^{-e} is C(e-1+m-i, m-i)
                    acc += c * binomial(e - 1 + m - i, m - i);
                }
            }
            acc
        })
        .collect()
}

/// Ehrhart-Macdonald reciprocity at the h*-level:
/// `h*_i(interior) = h*_{d-i+1}(P)` for all i.
pub fn reciprocity_check(profile: &EhrhartProfile, instance: &str) -> Result<VerificationReport> {
    let d = profile.d as isize;
    let hp = profile.hstar_p()?;
    let hi = profile.hstar_interior()?;
    let residuals: Vec<Int> = (0..=d + 1)
        .map(|i| hi.coeff(i) - hp.coeff(d - i + 1))
        .collect();
    Ok(VerificationReport::new("reciprocity", instance)
        .with_sides(json_ints(&hi.coeffs), json_ints(&hp.coeffs))
        .with_residuals(&residuals))
}

/// Hibi's criterion: P is reflexive iff h*(P) is palindromic.
pub fn is_reflexive(hp: &HStarVector, d: usize) -> bool {
    (0..=d as isize).all(|j| hp.coeff(j) == hp.coeff(d as isize - j))
}

/// h*-vector of a lattice d-simplex by direct enumeration of the lattice
/// points in the half-open fundamental parallelepiped of the homogenized
/// vertex rays; entry k counts the points at height k.
///
/// This sidesteps bounding-box dilation sweeps, which are hopeless for thin
/// high-dimensional simplices.
pub fn simplex_hstar(vertices: &[LatticePoint]) -> Result<Vec<Int>> {
    let d = vertices[0].len();
    if vertices.len() != d + 1 {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            got: vertices.len(),
        });
    }
    // columns are the homogenized vertices (v_i, 1)
    let r: Vec<Vec<Int>> = (0..=d)
        .map(|row| {
            (0..=d)
                .map(|col| {
                    if row < d {
                        vertices[col][row].clone()
                    } else {
                        Int::one()
                    }
                })
                .collect()
        })
        .collect();
    let volume = linalg::det(&r).abs();
    if volume.is_zero() {
        return Err(Error::NotFullDimensional);
    }
    // column HNF: the column lattice of r equals that of the lower-triangular
    // transpose of the row HNF of r^T
    let rt: Vec<Vec<Int>> = (0..=d)
        .map(|i| (0..=d).map(|j| r[j][i].clone()).collect())
        .collect();
    let (h_rows, _) = linalg::row_hnf_with_transform(&rt);
    let diag: Vec<Int> = (0..=d).map(|i| h_rows[i][i].clone()).collect();
    let r_rat: Vec<Vec<Rat>> = r
        .iter()
        .map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let r_inv = linalg::invert(&r_rat).expect("nondegenerate simplex");
    let mut hstar = vec![Int::zero(); d + 1];
    // coset representatives of Z^{d+1} / (column lattice): one integer tuple
    // per box position below the HNF diagonal
    let mut t = vec![Int::zero(); d + 1];
    loop {
        // fractional barycentric coordinates of this representative
        let mut height = Rat::zero();
        for row in 0..=d {
            let mut lam = Rat::zero();
            for col in 0..=d {
                lam += &r_inv[row][col] * Rat::from_integer(t[col].clone());
            }
            height += &lam - lam.floor();
        }
        let k = height
            .to_integer()
            .to_usize()
            .expect("height of a parallelepiped point is a small integer");
        debug_assert!(height.is_integer());
        hstar[k] += 1;
        let mut carry = true;
        for i in (0..=d).rev() {
            if !carry {
                break;
            }
            t[i] += 1;
            if t[i] < diag[i] {
                carry = false;
            } else {
                t[i] = Int::zero();
            }
        }
        if carry {
            break;
        }
    }
    debug_assert_eq!(hstar.iter().sum::<Int>(), volume);
    Ok(hstar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::lattice_point;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<LatticePoint> = v.iter().map(|p| lattice_point(p)).collect();
        LatticePolytope::from_points(&pts).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn octahedron() -> LatticePolytope {
        poly(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ])
    }

    fn polygon_11() -> LatticePolytope {
        poly(&[&[0, 0], &[-1, 1], &[1, 3], &[4, 2], &[5, 1], &[2, 0]])
    }

    #[test]
    fn dilation_counts() {
        assert_eq!(enumerate_dilation(&octahedron(), 1).len(), 7);
        assert_eq!(enumerate_dilation(&polygon_11(), 1).len(), 16);
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(enumerate_dilation(&sq, 0), vec![lattice_point(&[0, 0])]);
        assert_eq!(enumerate_dilation(&sq, 2).len(), 9);
    }

    #[test]
    fn profile_polygon_11() {
        let prof = ehrhart_profile(&polygon_11(), 3);
        // L_P(m) = 11 m^2 + 4 m + 1 by Pick data
        assert_eq!(prof.counts, ints(&[1, 16, 53, 112]));
    }

    #[test]
    fn profile_boundary_quadrilateral() {
        let p = poly(&[&[0, 0], &[0, 2], &[2, 0], &[3, 3]]);
        let prof = ehrhart_profile(&p, 2);
        assert_eq!(prof.counts_boundary, ints(&[1, 6, 12]));
        assert_eq!(prof.hstar_boundary().unwrap().coeffs, ints(&[1, 4, 1]));
    }

    #[test]
    fn hstar_examples() {
        assert_eq!(
            hstar_from_counts(&ints(&[1, 16, 53]), 3, 2).unwrap().coeffs,
            ints(&[1, 13, 8])
        );
        assert_eq!(
            hstar_from_counts(&ints(&[1, 6, 12]), 2, 2).unwrap().coeffs,
            ints(&[1, 4, 1])
        );
        assert_eq!(
            hstar_from_counts(&ints(&[1, 4, 9]), 3, 2).unwrap().coeffs,
            ints(&[1, 1, 0])
        );
    }

    #[test]
    fn hstar_inconsistent_counts() {
        // square counts with a wrong denominator exponent
        assert!(matches!(
            hstar_from_counts(&ints(&[1, 4, 9, 16, 25]), 2, 2),
            Err(Error::InconsistentCounts)
        ));
    }

    #[test]
    fn hstar_roundtrip_counts() {
        let p = polygon_11();
        let prof = ehrhart_profile(&p, 4);
        let h = prof.hstar_p().unwrap();
        assert_eq!(counts_from_hstar(&h, 4), prof.counts);
    }

    #[test]
    fn reciprocity() {
        let prof = ehrhart_profile(&polygon_11(), 3);
        assert_eq!(prof.counts_interior[1], Int::from(8));
        let rep = reciprocity_check(&prof, "polygon").unwrap();
        assert!(rep.verdict, "{rep:?}");

        let oct = ehrhart_profile(&octahedron(), 4);
        let h = oct.hstar_p().unwrap();
        assert_eq!(h.coeffs, ints(&[1, 3, 3, 1]));
        assert!(reciprocity_check(&oct, "octahedron").unwrap().verdict);

        let tri = ehrhart_profile(&poly(&[&[0, 0], &[1, 0], &[0, 1]]), 3);
        let hi = tri.hstar_interior().unwrap();
        assert_eq!(hi.coeffs, ints(&[0, 0, 0, 1]));
        assert!(reciprocity_check(&tri, "simplex").unwrap().verdict);
    }

    #[test]
    fn reflexivity() {
        let oct = ehrhart_profile(&octahedron(), 3).hstar_p().unwrap();
        assert!(is_reflexive(&oct, 3));
        let poly11 = ehrhart_profile(&polygon_11(), 2).hstar_p().unwrap();
        assert!(!is_reflexive(&poly11, 2));
        let sq = ehrhart_profile(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]), 2)
            .hstar_p()
            .unwrap();
        assert!(!is_reflexive(&sq, 2));
        let diamond = ehrhart_profile(&poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]), 2);
        assert_eq!(diamond.counts, ints(&[1, 5, 13]));
        assert!(is_reflexive(&diamond.hstar_p().unwrap(), 2));
    }

    #[test]
    fn simplex_hstar_matches_counting() {
        let tri = [
            lattice_point(&[0, 0]),
            lattice_point(&[1, 0]),
            lattice_point(&[4, 5]),
        ];
        let h = simplex_hstar(&tri).unwrap();
        let p = LatticePolytope::from_points(&tri).unwrap();
        let counted = ehrhart_profile(&p, 2).hstar_p().unwrap().coeffs;
        assert_eq!(h, counted);
        assert_eq!(h.iter().sum::<Int>(), Int::from(5));

        let unit = [
            lattice_point(&[0, 0]),
            lattice_point(&[1, 0]),
            lattice_point(&[0, 1]),
        ];
        assert_eq!(simplex_hstar(&unit).unwrap(), ints(&[1, 0, 0]));
    }
}
