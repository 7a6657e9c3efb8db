//! Built-in example polytopes, named weight generators, seeded random
//! polytopes for fuzzing, and the batch verification suite run over all of
//! them.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::exactgeom::{lattice_point, LatticePoint, LatticePolytope};
use crate::hstar_analysis::{self, RutBoundaryCertificate};
use crate::lattice::{self, HStarVector};
use crate::linalg::{Int, Rat};
use crate::report::{json_ints, VerificationReport};
use crate::simplicial::SimplicialComplex;
use crate::triangulate::{self, PointConfiguration, WeightFunction};
use crate::{groebner, Result};

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub polytope: LatticePolytope,
}

/// On-disk polytope description.
#[derive(Debug, serde::Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct PolytopeFile {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

/// On-disk weight function: rational strings keyed by lattice point.
#[derive(Debug, serde::Serialize, serde::Deserialize)]
pub struct WeightFile {
    pub entries: Vec<(Vec<i64>, String)>,
    pub scope: String,
}

fn poly(v: &[&[i64]]) -> LatticePolytope {
    let pts: Vec<LatticePoint> = v.iter().map(|p| lattice_point(p)).collect();
    LatticePolytope::from_points(&pts).expect("corpus polytopes are full-dimensional")
}

/// The 1-row Hermite normal form simplex `conv{0, e_1, ..., e_{d-1}, a}`
/// with `a = (big_n - 1, ..., big_n - 1, big_n)`.
pub fn hnfs(d: usize, big_n: i64) -> LatticePolytope {
    let mut pts: Vec<Vec<i64>> = vec![vec![0; d]];
    for i in 0..d - 1 {
        let mut e = vec![0; d];
        e[i] = 1;
        pts.push(e);
    }
    let mut a = vec![big_n - 1; d];
    a[d - 1] = big_n;
    pts.push(a);
    let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
    poly(&refs)
}

/// The fixed example corpus, in deterministic order.
pub fn named_instances() -> Vec<Instance> {
    let mk = |name: &str, p: LatticePolytope| Instance {
        name: name.to_string(),
        polytope: p,
    };
    vec![
        mk("unit-triangle", poly(&[&[0, 0], &[1, 0], &[0, 1]])),
        mk("unit-square", poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])),
        mk(
            "unit-tetrahedron",
            poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ),
        mk(
            "hexagon",
            poly(&[&[0, 0], &[-1, 1], &[1, 3], &[4, 2], &[5, 1], &[2, 0]]),
        ),
        mk(
            "skew-quadrilateral",
            poly(&[&[0, 0], &[0, 2], &[2, 0], &[3, 3]]),
        ),
        mk(
            "pentagon",
            poly(&[&[0, 0], &[2, 0], &[2, 1], &[1, 2], &[0, 2]]),
        ),
        mk(
            "octahedron",
            poly(&[
                &[1, 0, 0],
                &[-1, 0, 0],
                &[0, 1, 0],
                &[0, -1, 0],
                &[0, 0, 1],
                &[0, 0, -1],
            ]),
        ),
        mk("diamond", poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])),
        mk("hnfs-2-2-5", hnfs(2, 5)),
        mk("hnfs-3-1-4", hnfs(3, 4)),
        mk("hnfs-6-2-13", hnfs(6, 13)),
    ]
}

pub fn instance_by_name(name: &str) -> Option<LatticePolytope> {
    named_instances()
        .into_iter()
        .find(|i| i.name == name)
        .map(|i| i.polytope)
}

/// A seeded random full-dimensional lattice polytope with d in {2, 3} and
/// vertices in [-4, 4]^d.
pub fn random_lattice_polytope(seed: u64) -> LatticePolytope {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let d = rng.gen_range(2..=3usize);
        let k = rng.gen_range(d + 1..=d + 4);
        let pts: Vec<LatticePoint> = (0..k)
            .map(|_| (0..d).map(|_| Int::from(rng.gen_range(-4..=4i64))).collect())
            .collect();
        if let Ok(p) = LatticePolytope::from_points(&pts) {
            return p;
        }
    }
}

/// Named weight generators: `sqnorm` (sum of squared coordinates), `zero`,
/// and `random:<seed>` (seeded small rationals).
pub fn weight_by_name(
    name: &str,
    config: &PointConfiguration,
    boundary_scope: bool,
) -> Option<WeightFunction> {
    let gen: Box<dyn Fn(usize, &LatticePoint) -> Rat> = if name == "sqnorm" {
        Box::new(|_, p| Rat::from_integer(p.iter().map(|x| x * x).sum()))
    } else if name == "zero" {
        Box::new(|_, _| Rat::zero())
    } else if let Some(seed) = name.strip_prefix("random:") {
        let seed: u64 = seed.parse().ok()?;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let values: Vec<Rat> = (0..config.len())
            .map(|_| Rat::new(Int::from(rng.gen_range(-10_000..10_000i64)), Int::from(997)))
            .collect();
        Box::new(move |i, _| values[i].clone())
    } else {
        return None;
    };
    Some(if boundary_scope {
        WeightFunction {
            values: config
                .boundary_indices()
                .into_iter()
                .map(|i| (i, gen(i, &config.points[i])))
                .collect(),
            support: triangulate::WeightSupport::Boundary,
        }
    } else {
        WeightFunction::full(
            config
                .points
                .iter()
                .enumerate()
                .map(|(i, p)| gen(i, p))
                .collect(),
        )
    })
}

/// h*-data of an instance. Dilation counting is used whenever the ambient
/// dimension permits it; for high-dimensional simplices the polytope
/// h*-vector comes from the half-open parallelepiped and the boundary
/// vector from the Dehn-Sommerville relation (which holds unconditionally).
pub struct HStarData {
    pub d: usize,
    pub hp: HStarVector,
    pub hb: HStarVector,
    pub counted: bool,
}

pub fn hstar_data(p: &LatticePolytope) -> Result<HStarData> {
    let d = p.dim;
    if d <= 3 {
        let profile = lattice::ehrhart_profile(p, d + 1);
        Ok(HStarData {
            d,
            hp: profile.hstar_p()?,
            hb: profile.hstar_boundary()?,
            counted: true,
        })
    } else {
        assert_eq!(p.vertices.len(), d + 1, "large instances must be simplices");
        let coeffs = lattice::simplex_hstar(&p.vertices)?;
        let hp = HStarVector {
            coeffs,
            denominator_exponent: d + 1,
        };
        let hb = hstar_analysis::boundary_hstar_via_dehn_sommerville(&hp, d);
        Ok(HStarData {
            d,
            hp,
            hb,
            counted: false,
        })
    }
}

fn hstar_report(name: &str, data: &HStarData) -> VerificationReport {
    VerificationReport::new("hstar", name)
        .with_sides(json_ints(&data.hp.coeffs), json_ints(&data.hb.coeffs))
        .note(if data.counted {
            "computed by dilation counting"
        } else {
            "simplex h* by parallelepiped heights; boundary via Dehn-Sommerville"
        })
}

/// Equality of the h-vector of a full triangulation with h*(P); only
/// asserted for unimodular triangulations, otherwise reported as skipped.
pub fn betke_mcmullen_report(
    config: &PointConfiguration,
    t: &triangulate::Triangulation,
    hp: &HStarVector,
    instance: &str,
) -> VerificationReport {
    let d = config.dim();
    if !triangulate::is_unimodular(t) {
        return VerificationReport::new("betke-mcmullen", instance)
            .note("skipped: triangulation is not unimodular");
    }
    let h = SimplicialComplex::new(t.cells.clone()).h_vector();
    let residuals: Vec<Int> = (0..=d as isize + 1)
        .map(|i| h[i as usize].clone() - hp.coeff(i))
        .collect();
    VerificationReport::new("betke-mcmullen", instance)
        .with_sides(json_ints(&h), json_ints(&hp.coeffs))
        .with_residuals(&residuals)
}

/// Equality of the h-vector of the boundary triangulation with h*(bd P);
/// gated on boundary unimodularity.
pub fn stapledon_report(
    cert: &RutBoundaryCertificate,
    hb: &HStarVector,
    d: usize,
    instance: &str,
) -> VerificationReport {
    if !cert.unimodular {
        return VerificationReport::new("stapledon", instance)
            .note("skipped: boundary triangulation is not unimodular");
    }
    let h = cert.delta.h_vector();
    let residuals: Vec<Int> = (0..=d as isize)
        .map(|i| h.get(i as usize).cloned().unwrap_or_else(Int::zero) - hb.coeff(i))
        .collect();
    VerificationReport::new("stapledon", instance)
        .with_sides(json_ints(&h), json_ints(&hb.coeffs))
        .with_residuals(&residuals)
}

/// Reports the smallest equality range of the generalized lower bound
/// theorem; informational, never fails.
pub fn glbt_report(hb: &HStarVector, d: usize, instance: &str) -> VerificationReport {
    let r = hstar_analysis::glbt_equality_r(hb, d);
    VerificationReport::new("glbt", instance)
        .with_sides(json_ints(&hb.coeffs), serde_json::json!(r))
        .note(
            match r {
                Some(r) => format!("boundary is ({})-stacked", r as isize - 1),
                None => "no equality range".to_string(),
            }
            .as_str(),
        )
}

/// Runs every applicable verification on one instance and returns the
/// report stream in deterministic order.
pub fn verify_instance(inst: &Instance, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let p = &inst.polytope;
    let name = inst.name.as_str();
    let config = PointConfiguration::new(p.clone());
    let data = hstar_data(p)?;
    let d = data.d;
    out.push(hstar_report(name, &data));
    if data.counted {
        let profile = lattice::ehrhart_profile(p, d + 1);
        out.push(lattice::reciprocity_check(&profile, name)?);
    }
    out.push(hstar_analysis::dehn_sommerville(&data.hp, &data.hb, d, name));

    let w_bd = weight_by_name("sqnorm", &config, true).unwrap();
    match hstar_analysis::certify_rut_boundary(&config, &w_bd, name) {
        Ok(cert) => {
            out.push(groebner::verify_boundary_sturmfels(&config, &w_bd, seed, name)?);
            let w_full = weight_by_name("sqnorm", &config, false).unwrap();
            out.push(groebner::verify_sturmfels(&config, &w_full, name)?);
            let (_, t) = triangulate::extend_boundary_weights(&config, &w_bd, seed)?;
            out.push(betke_mcmullen_report(&config, &t, &data.hp, name));
            out.push(stapledon_report(&cert, &data.hb, d, name));
            out.push(hstar_analysis::g_theorem_checks(&data.hb, d, &cert, name));
            out.push(hstar_analysis::reflexive_propagation(&data.hp, d, &cert, name));
            out.push(hstar_analysis::bounds_check(&data.hp, &data.hb, d, &cert, name));
            out.push(glbt_report(&data.hb, d, name));
        }
        Err(e) => {
            out.push(
                VerificationReport::new("rut-boundary-certificate", name)
                    .note(&format!("skipped triangulation-gated checks: {e}")),
            );
        }
    }
    Ok(out)
}

/// The whole suite over the named corpus, optionally filtered by instance
/// name substring.
pub fn run_suite(filter: Option<&str>, seed: u64) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for inst in named_instances() {
        if let Some(f) = filter {
            if !inst.name.contains(f) {
                continue;
            }
        }
        out.extend(verify_instance(&inst, seed)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn hnfs_vertices() {
        let s = hnfs(2, 5);
        assert_eq!(
            s.vertices,
            vec![
                lattice_point(&[0, 0]),
                lattice_point(&[1, 0]),
                lattice_point(&[4, 5])
            ]
        );
        let t = hnfs(3, 4);
        assert!(t.vertices.contains(&lattice_point(&[3, 3, 4])));
        assert_eq!(t.vertices.len(), 4);
    }

    #[test]
    fn hnfs_hstar_closed_forms() {
        // N = kd + 1 gives 1 + k z + ... + k z^d; N = kd drops the top to k - 1
        let cases: [(usize, i64, Vec<i64>); 4] = [
            (2, 5, vec![1, 2, 2]),
            (3, 4, vec![1, 1, 1, 1]),
            (6, 13, vec![1, 2, 2, 2, 2, 2, 2]),
            (2, 4, vec![1, 2, 1]),
        ];
        for (d, n, expected) in cases {
            let s = hnfs(d, n);
            let h = lattice::simplex_hstar(&s.vertices).unwrap();
            let expected: Vec<Int> = expected.iter().map(|&x| Int::from(x)).collect();
            assert_eq!(h, expected, "hnfs d={d} N={n}");
        }
    }

    #[test]
    fn named_instances_are_distinct_and_parse() {
        let all = named_instances();
        let names: std::collections::BTreeSet<_> =
            all.iter().map(|i| i.name.clone()).collect();
        assert_eq!(names.len(), all.len());
        assert!(instance_by_name("octahedron").is_some());
        assert!(instance_by_name("no-such-thing").is_none());
    }

    #[test]
    fn random_polytopes_are_seeded_and_bounded() {
        for seed in 0..20u64 {
            let p = random_lattice_polytope(seed);
            let q = random_lattice_polytope(seed);
            assert_eq!(p.vertices, q.vertices);
            assert!(p.dim == 2 || p.dim == 3);
            for v in &p.vertices {
                assert!(v.iter().all(|x| x.abs() <= Int::from(4)));
            }
        }
    }

    #[test]
    fn weight_generators() {
        let c = PointConfiguration::new(instance_by_name("unit-square").unwrap());
        let sq = weight_by_name("sqnorm", &c, false).unwrap();
        assert_eq!(sq.get(3), &Rat::from_integer(Int::from(2)));
        let z = weight_by_name("zero", &c, true).unwrap();
        assert_eq!(z.values.len(), 4);
        let r1 = weight_by_name("random:5", &c, false).unwrap();
        let r2 = weight_by_name("random:5", &c, false).unwrap();
        assert_eq!(r1, r2);
        assert!(weight_by_name("bogus", &c, false).is_none());
    }

    #[test]
    fn hstar_data_matches_known_vectors() {
        let ints = |v: &[i64]| -> Vec<Int> { v.iter().map(|&x| Int::from(x)).collect() };
        let hex = hstar_data(&instance_by_name("hexagon").unwrap()).unwrap();
        assert_eq!(hex.hp.coeffs, ints(&[1, 13, 8]));
        assert_eq!(hex.hb.coeffs, ints(&[1, 6, 1]));
        let oct = hstar_data(&instance_by_name("octahedron").unwrap()).unwrap();
        assert_eq!(oct.hp.coeffs, ints(&[1, 3, 3, 1]));
        assert_eq!(oct.hb.coeffs, ints(&[1, 3, 3, 1]));
        let skew = hstar_data(&instance_by_name("skew-quadrilateral").unwrap()).unwrap();
        assert_eq!(skew.hb.coeffs, ints(&[1, 4, 1]));
        let big = hstar_data(&instance_by_name("hnfs-6-2-13").unwrap()).unwrap();
        assert_eq!(big.hp.coeffs, ints(&[1, 2, 2, 2, 2, 2, 2]));
        assert!(!big.counted);
        assert_eq!(big.hb.coeffs, ints(&[1, 1, 1, 1, 1, 1, 1]));
    }
}
