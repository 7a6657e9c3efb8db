//! Checks on h*-data: Dehn-Sommerville residuals for polytope boundaries,
//! g*-vectors, Macaulay growth (M-sequences), g-theorem transfer,
//! generalized-lower-bound equality detection, reflexivity propagation and
//! the upper/lower bounds on h*-asymmetry.
//!
//! Everything that needs a regular unimodular boundary triangulation takes
//! an explicit certificate; only the Dehn-Sommerville relation is
//! hypothesis-free.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::groebner;
use crate::lattice::HStarVector;
use crate::linalg::Int;
use crate::report::{json_ints, VerificationReport};
use crate::simplicial::{self, SimplicialComplex};
use crate::triangulate::{self, PointConfiguration, WeightFunction};
use crate::Result;

/// Binomial coefficient `C(top, k)`; zero when `top < k`, one when `k = 0`
/// (also for negative tops, which arise as `C(h1 - 2, 0)` with `h1 = 1`).
pub fn binomial_int(top: &Int, k: usize) -> Int {
    if k > 0 && top.is_negative() {
        return Int::zero();
    }
    let mut acc = Int::one();
    for j in 0..k {
        acc = acc * (top - Int::from(j as i64)) / Int::from(j as i64 + 1);
        if acc.is_zero() {
            return acc;
        }
    }
    acc
}

/// First differences of boundary h*-coefficients and, alternatively, the
/// top-heavy differences of the polytope h*-coefficients. The two agree
/// entrywise for every lattice polytope; callers assert rather than assume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GStarVector {
    pub entries: Vec<Int>,
    pub alt_entries: Vec<Int>,
}

impl GStarVector {
    pub fn new(hp: &HStarVector, hb: &HStarVector, d: usize) -> Self {
        let top = d / 2;
        let entries = (0..=top)
            .map(|i| hb.coeff(i as isize) - hb.coeff(i as isize - 1))
            .collect();
        let alt_entries = (0..=top)
            .map(|i| hp.coeff(i as isize) - hp.coeff((d - i + 1) as isize))
            .collect();
        GStarVector {
            entries,
            alt_entries,
        }
    }
}

/// Residuals of the boundary Dehn-Sommerville relation
/// `h*_i(P) - h*_{d-i+1}(P) = h*_i(bd P) - h*_{i-1}(bd P)` for `0 <= i <= d`.
/// Holds for every lattice polytope with no triangulation hypothesis.
pub fn dehn_sommerville(
    hp: &HStarVector,
    hb: &HStarVector,
    d: usize,
    instance: &str,
) -> VerificationReport {
    let residuals: Vec<Int> = (0..=d as isize)
        .map(|i| {
            (hp.coeff(i) - hp.coeff(d as isize - i + 1))
                - (hb.coeff(i) - hb.coeff(i - 1))
        })
        .collect();
    VerificationReport::new("dehn-sommerville", instance)
        .with_sides(json_ints(&hp.coeffs), json_ints(&hb.coeffs))
        .with_residuals(&residuals)
}

/// Boundary h*-vector forced by the Dehn-Sommerville relation; usable when
/// direct boundary counting is out of reach.
pub fn boundary_hstar_via_dehn_sommerville(hp: &HStarVector, d: usize) -> HStarVector {
    let mut coeffs = vec![Int::one()];
    for i in 1..=d as isize {
        let next = coeffs[(i - 1) as usize].clone() + hp.coeff(i)
            - hp.coeff(d as isize - i + 1);
        coeffs.push(next);
    }
    HStarVector {
        coeffs,
        denominator_exponent: d,
    }
}

/// Greedy i-binomial expansion of `nu`, all tops and bottoms shifted by one.
pub fn macaulay_pseudopower(nu: &Int, i: usize) -> Int {
    assert!(i >= 1);
    assert!(!nu.is_negative());
    let mut rem = nu.clone();
    let mut out = Int::zero();
    let mut j = i;
    while !rem.is_zero() && j >= 1 {
        let mut a = Int::from(j as i64);
        while binomial_int(&(&a + Int::one()), j) <= rem {
            a += 1;
        }
        rem -= binomial_int(&a, j);
        out += binomial_int(&(&a + Int::one()), j + 1);
        j -= 1;
    }
    debug_assert!(rem.is_zero());
    out
}

/// `v` starts with 1 and satisfies Macaulay's growth bound
/// `0 <= v[i+1] <= v[i]^<i>` at every step.
pub fn is_m_sequence(v: &[Int]) -> bool {
    if v.is_empty() || v[0] != Int::one() {
        return false;
    }
    if v.iter().any(|x| x.is_negative()) {
        return false;
    }
    for i in 1..v.len().saturating_sub(1) {
        if v[i + 1] > macaulay_pseudopower(&v[i], i) {
            return false;
        }
    }
    true
}

/// Evidence that the boundary of a polytope carries a regular unimodular
/// triangulation: the triangulation itself (regular by construction from
/// boundary weights), its unimodularity verdict, and a proper coloring of
/// its 1-skeleton when one exists.
#[derive(Debug, Clone)]
pub struct RutBoundaryCertificate {
    pub instance: String,
    pub delta: SimplicialComplex,
    pub unimodular: bool,
    pub balanced_coloring: Option<BTreeMap<usize, usize>>,
}

pub fn certify_rut_boundary(
    config: &PointConfiguration,
    w_bd: &WeightFunction,
    instance: &str,
) -> Result<RutBoundaryCertificate> {
    let delta = triangulate::boundary_triangulation(config, w_bd)?;
    let unimodular = groebner::boundary_is_unimodular(config, &delta);
    let balanced_coloring = simplicial::is_balanced(&delta);
    Ok(RutBoundaryCertificate {
        instance: instance.to_string(),
        delta,
        unimodular,
        balanced_coloring,
    })
}

fn skipped(check: &str, instance: &str, reason: &str) -> VerificationReport {
    VerificationReport::new(check, instance).note(&format!("skipped: {reason}"))
}

/// Palindromy, unimodality up to the middle, and the M-sequence property of
/// g*, for a boundary h*-vector whose polytope has a certified regular
/// unimodular boundary triangulation.
pub fn g_theorem_checks(
    hb: &HStarVector,
    d: usize,
    cert: &RutBoundaryCertificate,
    instance: &str,
) -> VerificationReport {
    if !cert.unimodular {
        return skipped(
            "g-theorem",
            instance,
            "boundary triangulation is not unimodular",
        );
    }
    let top = d / 2;
    let palindromic = (0..=d as isize).all(|j| hb.coeff(j) == hb.coeff(d as isize - j));
    let unimodal = (1..=top).all(|j| hb.coeff(j as isize - 1) <= hb.coeff(j as isize));
    let g: Vec<Int> = (0..=top)
        .map(|i| hb.coeff(i as isize) - hb.coeff(i as isize - 1))
        .collect();
    VerificationReport::new("g-theorem", instance)
        .with_sides(json_ints(&hb.coeffs), json_ints(&g))
        .require(palindromic, "boundary h*-vector is not palindromic")
        .require(unimodal, "boundary h*-vector is not unimodal up to the middle")
        .require(is_m_sequence(&g), "g*-vector is not an M-sequence")
}

/// Smallest `r <= floor(d/2)` such that `h*_j(bd P) = h*_{j-1}(bd P)` for
/// all `r <= j <= floor(d/2)`; equality at `r` certifies `(r-1)`-stackedness
/// of the boundary triangulation.
pub fn glbt_equality_r(hb: &HStarVector, d: usize) -> Option<usize> {
    let top = d / 2;
    (1..=top).find(|&r| {
        (r..=top).all(|j| hb.coeff(j as isize) == hb.coeff(j as isize - 1))
    })
}

/// For reflexive input: whenever the top-heavy equality
/// `h*_j = h*_{d-j+1}` holds, the h*-vector must stay constant on
/// `[j, d-j+1]`. Non-reflexive input is reported as skipped.
pub fn reflexive_propagation(
    hp: &HStarVector,
    d: usize,
    cert: &RutBoundaryCertificate,
    instance: &str,
) -> VerificationReport {
    if !crate::lattice::is_reflexive(hp, d) {
        return skipped("reflexive-propagation", instance, "polytope is not reflexive");
    }
    if !cert.unimodular {
        return skipped(
            "reflexive-propagation",
            instance,
            "boundary triangulation is not unimodular",
        );
    }
    let mut report = VerificationReport::new("reflexive-propagation", instance)
        .with_sides(json_ints(&hp.coeffs), serde_json::Value::Null);
    let mut applied = false;
    for j in 1..=d / 2 {
        let lo = j as isize;
        let hi = (d - j + 1) as isize;
        if hp.coeff(lo) == hp.coeff(hi) {
            applied = true;
            let constant = (lo..=hi).all(|t| hp.coeff(t) == hp.coeff(lo));
            report = report.require(
                constant,
                &format!("h* not constant on [{j}, {}] despite equality at the ends", d - j + 1),
            );
        }
    }
    if !applied {
        report = report.note("no top-heavy equality attained; vacuous");
    }
    report
}

/// Upper bound `0 <= g*_i <= C(h*_1(bd P)+i-2, i)` together with its summed
/// form, and, when a balanced coloring witness exists, the lower bound
/// `i * g*_i >= (d-2i+1) * h*_{i-1}(bd P)`.
pub fn bounds_check(
    hp: &HStarVector,
    hb: &HStarVector,
    d: usize,
    cert: &RutBoundaryCertificate,
    instance: &str,
) -> VerificationReport {
    if !cert.unimodular {
        return skipped("bounds", instance, "boundary triangulation is not unimodular");
    }
    let top = d / 2;
    let g = GStarVector::new(hp, hb, d);
    let h1 = hb.coeff(1);
    let uppers: Vec<Int> = (0..=top)
        .map(|i| binomial_int(&(&h1 + Int::from(i as i64) - Int::from(2)), i))
        .collect();
    let mut report = VerificationReport::new("bounds", instance)
        .with_sides(json_ints(&g.alt_entries), json_ints(&uppers))
        .require(
            g.entries == g.alt_entries,
            "boundary-difference and top-heavy g* definitions disagree",
        );
    for i in 1..=top {
        let gi = &g.alt_entries[i];
        report = report
            .require(!gi.is_negative(), &format!("g*_{i} is negative"))
            .require(gi <= &uppers[i], &format!("g*_{i} exceeds the Macaulay bound"));
    }
    for l in 1..=top {
        for k in l..=top {
            let sum: Int = (l..=k).map(|i| g.alt_entries[i].clone()).sum();
            let bound = binomial_int(&(&h1 + Int::from(k as i64) - Int::one()), k)
                - binomial_int(&(&h1 + Int::from(l as i64) - Int::from(2)), l - 1);
            report = report
                .require(!sum.is_negative(), &format!("summed g* on [{l}, {k}] is negative"))
                .require(
                    sum <= bound,
                    &format!("summed g* on [{l}, {k}] exceeds the telescoped bound"),
                );
        }
    }
    match &cert.balanced_coloring {
        Some(_) => {
            for i in 1..=top {
                let lhs = Int::from(i as i64) * &g.alt_entries[i];
                let rhs = Int::from(d as i64 - 2 * i as i64 + 1) * hb.coeff(i as isize - 1);
                report = report.require(
                    lhs >= rhs,
                    &format!("balanced lower bound fails at i = {i}"),
                );
            }
        }
        None => {
            report = report.note("no balanced coloring witness; lower bound not evaluated");
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{lattice_point, LatticePolytope};
    use crate::lattice::{ehrhart_profile, hstar_from_counts};
    use crate::linalg::Rat;

    fn hv(coeffs: &[i64], e: usize) -> HStarVector {
        HStarVector {
            coeffs: coeffs.iter().map(|&c| Int::from(c)).collect(),
            denominator_exponent: e,
        }
    }

    fn config(v: &[&[i64]]) -> PointConfiguration {
        let pts: Vec<_> = v.iter().map(|p| lattice_point(p)).collect();
        PointConfiguration::new(LatticePolytope::from_points(&pts).unwrap())
    }

    fn octahedron_cert() -> RutBoundaryCertificate {
        let c = config(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]);
        let w = WeightFunction::boundary(&c, |_| Rat::zero());
        certify_rut_boundary(&c, &w, "octahedron").unwrap()
    }

    #[test]
    fn dehn_sommerville_known_instances() {
        // hexagonal polygon with h* = (1,13,8), boundary (1,6,1)
        assert!(dehn_sommerville(&hv(&[1, 13, 8], 3), &hv(&[1, 6, 1], 2), 2, "p").verdict);
        assert!(dehn_sommerville(&hv(&[1, 3, 3, 1], 4), &hv(&[1, 3, 3, 1], 3), 3, "o").verdict);
        assert!(dehn_sommerville(&hv(&[1, 0, 0], 3), &hv(&[1, 1, 1], 2), 2, "s").verdict);
        // perturbed input must fail
        assert!(!dehn_sommerville(&hv(&[1, 13, 9], 3), &hv(&[1, 6, 1], 2), 2, "x").verdict);
    }

    #[test]
    fn dehn_sommerville_on_counted_profiles() {
        for pts in [
            vec![vec![0i64, 0], vec![-1, 1], vec![1, 3], vec![4, 2], vec![5, 1], vec![2, 0]],
            vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![3, 3]],
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2], vec![1, 1, 1]],
        ] {
            let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
            let c = config(&refs);
            let d = c.dim();
            let profile = ehrhart_profile(&c.polytope, d + 1);
            let hp = profile.hstar_p().unwrap();
            let hb = profile.hstar_boundary().unwrap();
            let r = dehn_sommerville(&hp, &hb, d, "counted");
            assert!(r.verdict, "{:?}", r.residuals);
            // the relation also reconstructs hb from hp
            assert_eq!(
                boundary_hstar_via_dehn_sommerville(&hp, d).coeffs,
                hb.coeffs
            );
        }
    }

    #[test]
    fn pseudopower_examples() {
        assert_eq!(macaulay_pseudopower(&Int::zero(), 3), Int::zero());
        assert_eq!(macaulay_pseudopower(&Int::from(3), 1), Int::from(6));
        assert_eq!(macaulay_pseudopower(&Int::from(4), 2), Int::from(5));
    }

    #[test]
    fn pseudopower_matches_expansion_oracle() {
        // brute-force the unique strictly decreasing expansion
        fn expansions(nu: i64, j: usize, max_a: i64, lo: usize) -> Vec<Vec<(i64, usize)>> {
            if nu == 0 {
                return vec![vec![]];
            }
            if j < lo {
                return vec![];
            }
            let mut out = Vec::new();
            for a in (j as i64..=max_a).rev() {
                let c = i64::try_from(&binomial_int(&Int::from(a), j)).unwrap();
                if c <= nu {
                    for mut rest in expansions(nu - c, j - 1, a - 1, lo) {
                        rest.insert(0, (a, j));
                        out.push(rest);
                    }
                }
            }
            out
        }
        for i in 1..=4usize {
            let mut last = Int::zero();
            for nu in 0..=30i64 {
                let exps = expansions(nu, i, nu + i as i64, 1);
                // the expansion exists and is unique
                assert_eq!(exps.len(), 1, "nu={nu} i={i}");
                let shifted: i64 = exps[0]
                    .iter()
                    .map(|&(a, j)| {
                        i64::try_from(&binomial_int(&Int::from(a + 1), j + 1)).unwrap()
                    })
                    .sum();
                let got = macaulay_pseudopower(&Int::from(nu), i);
                assert_eq!(got, Int::from(shifted), "nu={nu} i={i}");
                // monotone in nu
                assert!(got >= last);
                last = got;
            }
        }
    }

    #[test]
    fn m_sequence_examples() {
        let ints = |v: &[i64]| -> Vec<Int> { v.iter().map(|&x| Int::from(x)).collect() };
        assert!(is_m_sequence(&ints(&[1, 2, 0])));
        assert!(!is_m_sequence(&ints(&[1, 0, 1])));
        assert!(is_m_sequence(&ints(&[1, 3, 6, 10])));
        assert!(!is_m_sequence(&ints(&[1, 3, 7])));
        assert!(!is_m_sequence(&ints(&[2, 1])));
    }

    #[test]
    fn g_theorem_examples() {
        let cert = octahedron_cert();
        assert!(cert.unimodular);
        assert!(g_theorem_checks(&hv(&[1, 3, 3, 1], 3), 3, &cert, "octahedron").verdict);
        assert!(g_theorem_checks(&hv(&[1, 6, 1], 2), 2, &cert, "polygon").verdict);
        let bad = g_theorem_checks(&hv(&[1, 2, 5, 1], 3), 3, &cert, "synthetic");
        assert!(!bad.verdict);
    }

    #[test]
    fn glbt_examples() {
        assert_eq!(glbt_equality_r(&hv(&[1, 3, 3, 1], 3), 3), None);
        assert_eq!(glbt_equality_r(&hv(&[1, 1, 1], 2), 2), Some(1));
        // constant-after-one boundary vector in dimension 6
        assert_eq!(glbt_equality_r(&hv(&[1, 1, 1, 1, 1, 1, 1], 6), 6), Some(1));
        assert_eq!(glbt_equality_r(&hv(&[1, 2, 2, 2, 2, 2, 1], 6), 6), Some(2));
    }

    #[test]
    fn reflexive_propagation_examples() {
        let cert = octahedron_cert();
        // diamond: h* = (1,2,1), no equality attained, vacuous pass
        let r = reflexive_propagation(&hv(&[1, 2, 1], 3), 2, &cert, "diamond");
        assert!(r.verdict);
        // non-reflexive input is skipped
        let s = reflexive_propagation(&hv(&[1, 13, 8], 3), 2, &cert, "polygon");
        assert!(s.verdict && s.notes.iter().any(|n| n.contains("skipped")));
        // palindromic but inconsistent input is flagged
        let bad = reflexive_propagation(&hv(&[1, 1, 2, 1, 1], 5), 4, &cert, "synthetic");
        assert!(!bad.verdict);
    }

    #[test]
    fn bounds_examples() {
        let cert = octahedron_cert();
        // polygon: g*_1 = 5, bound C(6-1,1) = 5, tight
        let p = bounds_check(&hv(&[1, 13, 8], 3), &hv(&[1, 6, 1], 2), 2, &cert, "polygon");
        assert!(p.verdict, "{:?}", p.notes);
        // octahedron with its coordinate coloring: 1*2 >= 2*1, tight
        assert!(cert.balanced_coloring.is_some());
        let o = bounds_check(&hv(&[1, 3, 3, 1], 4), &hv(&[1, 3, 3, 1], 3), 3, &cert, "octahedron");
        assert!(o.verdict, "{:?}", o.notes);
        // unit triangle: its boundary 3-cycle is not 2-colorable, so the
        // certificate carries no coloring and the lower bound is not applied
        let c = config(&[&[0, 0], &[1, 0], &[0, 1]]);
        let w = WeightFunction::boundary(&c, |_| Rat::zero());
        let tri_cert = certify_rut_boundary(&c, &w, "triangle").unwrap();
        assert!(tri_cert.balanced_coloring.is_none());
        let s = bounds_check(&hv(&[1, 0, 0], 3), &hv(&[1, 1, 1], 2), 2, &tri_cert, "triangle");
        assert!(s.verdict, "{:?}", s.notes);
        // inflated asymmetry must violate the Macaulay bound
        let bad = bounds_check(&hv(&[1, 9, 1], 3), &hv(&[1, 2, 1], 2), 2, &cert, "synthetic");
        assert!(!bad.verdict);
    }

    #[test]
    fn gstar_definitions_agree_on_counted_profiles() {
        let c = config(&[&[0, 0], &[-1, 1], &[1, 3], &[4, 2], &[5, 1], &[2, 0]]);
        let profile = ehrhart_profile(&c.polytope, 3);
        let hp = profile.hstar_p().unwrap();
        let hb = profile.hstar_boundary().unwrap();
        let g = GStarVector::new(&hp, &hb, 2);
        assert_eq!(g.entries, g.alt_entries);
        assert_eq!(g.entries[0], Int::one());
    }

    #[test]
    fn hstar_vector_coeff_reads_zero_out_of_range() {
        let h = hstar_from_counts(
            &[Int::from(1), Int::from(16), Int::from(53)],
            3,
            2,
        )
        .unwrap();
        assert_eq!(h.coeff(-1), Int::zero());
        assert_eq!(h.coeff(5), Int::zero());
    }
}
