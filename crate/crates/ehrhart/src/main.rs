//! Command-line front end: polytope/weight file formats, subcommand
//! dispatch, JSON-lines report emission.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use ehrhart::corpus::{self, PolytopeFile, WeightFile};
use ehrhart::exactgeom::LatticePolytope;
use ehrhart::groebner::{self, GbElem, TermOrder};
use ehrhart::hstar_analysis;
use ehrhart::lattice::{self, HStarVector};
use ehrhart::report::{json_ints, VerificationReport};
use ehrhart::simplicial::SimplicialComplex;
use ehrhart::triangulate::{self, PointConfiguration, WeightFunction, WeightSupport};
use ehrhart::{Int, Rat};

#[derive(Parser)]
#[command(name = "ehrhart", about = "Exact Ehrhart h*-data, regular triangulations and toric initial ideals of lattice polytopes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HStarPart {
    P,
    Boundary,
    Interior,
}

#[derive(Subcommand)]
enum Command {
    /// List the lattice points of a dilation of the polytope
    Points {
        poly: String,
        #[arg(long, default_value_t = 1)]
        dilation: usize,
    },
    /// Print the irredundant primitive facet inequalities
    Facets { poly: String },
    /// Print an h*-vector of the polytope, its boundary, or its interior
    Hstar {
        poly: String,
        #[arg(long, value_enum, default_value_t = HStarPart::P)]
        part: HStarPart,
    },
    /// Compute the regular triangulation induced by a weight function
    Triangulate {
        poly: String,
        #[arg(long, default_value = "sqnorm")]
        weights: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// h-vector of the triangulation induced by a weight function
    Hvector {
        poly: String,
        #[arg(long, default_value = "sqnorm")]
        weights: String,
        /// Use the boundary triangulation of boundary-supported weights
        #[arg(long)]
        boundary: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Generators of the toric ideal of the polytope's lattice points
    Toric {
        poly: String,
        /// Use the degree-truncated fiber construction instead of saturation
        #[arg(long)]
        truncate: Option<usize>,
    },
    /// Generators of the toric boundary ideal: binomials plus the interior
    /// monomial ideal
    BoundaryIdeal { poly: String },
    /// Minimal generators of the initial ideal under a weight term order
    Initial {
        poly: String,
        #[arg(long, default_value = "sqnorm")]
        weights: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run one verification check against a polytope
    Verify {
        check: String,
        poly: String,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Operate on the built-in example corpus
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Run the full verification suite over the corpus
    Run {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List corpus instance names
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn default_seed(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("EHRHART_SEED") {
        Ok(v) => v.parse().context("EHRHART_SEED must be an integer"),
        Err(_) => Ok(0),
    }
}

fn load_polytope(spec: &str) -> anyhow::Result<(String, LatticePolytope)> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        let file: PolytopeFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
        let pts: Vec<Vec<Int>> = file
            .vertices
            .iter()
            .map(|v| v.iter().map(|&x| Int::from(x)).collect())
            .collect();
        if pts.iter().any(|v| v.len() != file.dim) {
            bail!("{spec}: vertex length differs from declared dim {}", file.dim);
        }
        let p = LatticePolytope::from_points(&pts)
            .map_err(|e| anyhow!("{spec}: not a full-dimensional polytope ({e})"))?;
        Ok((file.name, p))
    } else if let Some(p) = corpus::instance_by_name(spec) {
        Ok((spec.to_string(), p))
    } else {
        bail!("no such file or corpus instance: {spec}")
    }
}

fn load_weights(
    spec: &str,
    config: &PointConfiguration,
    boundary_scope: bool,
) -> anyhow::Result<WeightFunction> {
    if let Some(w) = corpus::weight_by_name(spec, config, boundary_scope) {
        return Ok(w);
    }
    if !Path::new(spec).is_file() {
        bail!("weights must be sqnorm, zero, random:<seed>, or a weight file path: {spec}");
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    let file: WeightFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
    let support = match file.scope.as_str() {
        "boundary" => WeightSupport::Boundary,
        "full" => WeightSupport::Full,
        other => bail!("{spec}: scope must be \"boundary\" or \"full\", got {other:?}"),
    };
    let mut values: BTreeMap<usize, Rat> = BTreeMap::new();
    for (coords, rat) in &file.entries {
        let point: Vec<Int> = coords.iter().map(|&x| Int::from(x)).collect();
        let idx = config
            .points
            .iter()
            .position(|p| *p == point)
            .ok_or_else(|| anyhow!("{spec}: point {coords:?} is not a lattice point of the polytope"))?;
        if matches!(support, WeightSupport::Boundary) && !config.boundary_mask[idx] {
            bail!("{spec}: point {coords:?} is interior but scope is boundary");
        }
        let value = Rat::from_str(rat)
            .map_err(|_| anyhow!("{spec}: cannot parse rational {rat:?}"))?;
        values.insert(idx, value);
    }
    let expected = match support {
        WeightSupport::Boundary => config.boundary_indices(),
        WeightSupport::Full => (0..config.len()).collect(),
    };
    if values.keys().copied().collect::<Vec<_>>() != expected {
        bail!("{spec}: weight entries must cover the scope set exactly");
    }
    Ok(WeightFunction { values, support })
}

/// Prints JSON lines to stdout and a one-line human verdict per report to
/// stderr; returns the process exit code.
fn emit(reports: &[VerificationReport]) -> u8 {
    let mut failures = 0usize;
    for r in reports {
        println!("{}", r.to_json_line());
        let verdict = if r.verdict { "pass" } else { "fail" };
        eprintln!("{verdict}  {}  {}", r.check, r.instance);
        if !r.verdict {
            failures += 1;
        }
    }
    eprintln!("{} checks, {} failed", reports.len(), failures);
    if failures == 0 {
        0
    } else {
        1
    }
}

fn print_data(value: serde_json::Value) {
    println!("{value}");
}

fn ints_json(points: &[Vec<Int>]) -> serde_json::Value {
    serde_json::json!(points
        .iter()
        .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// A full triangulation from a weight function: full-scope weights go
/// through the weight-then-tiebreak order, boundary-scope weights through
/// the extension search.
fn full_triangulation(
    config: &PointConfiguration,
    w: &WeightFunction,
    seed: u64,
) -> anyhow::Result<triangulate::Triangulation> {
    match w.support {
        WeightSupport::Full => {
            let cells =
                groebner::order_matching_triangulation(config, w, config.dim() + 2)?;
            Ok(triangulate::Triangulation {
                cells,
                config: config.clone(),
                inducing_weights: Some(w.clone()),
            })
        }
        WeightSupport::Boundary => {
            let (_, t) = triangulate::extend_boundary_weights(config, w, seed)?;
            Ok(t)
        }
    }
}

fn interior_hstar_by_reciprocity(hp: &HStarVector, d: usize) -> HStarVector {
    let coeffs: Vec<Int> = (0..=d as isize + 1).map(|i| hp.coeff(d as isize + 1 - i)).collect();
    HStarVector {
        coeffs,
        denominator_exponent: d + 1,
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Points { poly, dilation } => {
            let (name, p) = load_polytope(&poly)?;
            let pts = lattice::enumerate_dilation(&p, dilation);
            print_data(serde_json::json!({
                "command": "points", "instance": name, "dilation": dilation,
                "count": pts.len(), "points": ints_json(&pts),
            }));
            Ok(0)
        }
        Command::Facets { poly } => {
            let (name, p) = load_polytope(&poly)?;
            let facets: Vec<serde_json::Value> = p
                .facets
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "normal": json_ints(&f.normal),
                        "offset": f.offset.to_string(),
                    })
                })
                .collect();
            print_data(serde_json::json!({
                "command": "facets", "instance": name, "facets": facets,
            }));
            Ok(0)
        }
        Command::Hstar { poly, part } => {
            let (name, p) = load_polytope(&poly)?;
            let data = corpus::hstar_data(&p)?;
            let (label, h) = match part {
                HStarPart::P => ("P", data.hp.clone()),
                HStarPart::Boundary => ("boundary", data.hb.clone()),
                HStarPart::Interior => {
                    let h = if data.counted {
                        lattice::ehrhart_profile(&p, data.d + 1).hstar_interior()?
                    } else {
                        interior_hstar_by_reciprocity(&data.hp, data.d)
                    };
                    ("interior", h)
                }
            };
            print_data(serde_json::json!({
                "command": "hstar", "instance": name, "part": label,
                "coefficients": json_ints(&h.coeffs),
                "denominator_exponent": h.denominator_exponent,
            }));
            Ok(0)
        }
        Command::Triangulate { poly, weights, seed } => {
            let (name, p) = load_polytope(&poly)?;
            let seed = default_seed(seed)?;
            let config = PointConfiguration::new(p);
            let w = load_weights(&weights, &config, false)
                .or_else(|_| load_weights(&weights, &config, true))?;
            let boundary_scope = matches!(w.support, WeightSupport::Boundary);
            let t = full_triangulation(&config, &w, seed)?;
            print_data(serde_json::json!({
                "command": "triangulate", "instance": name,
                "points": ints_json(&config.points),
                "cells": t.cells,
                "unimodular": triangulate::is_unimodular(&t),
                "boundary_scope": boundary_scope,
            }));
            Ok(0)
        }
        Command::Hvector { poly, weights, boundary, seed } => {
            let (name, p) = load_polytope(&poly)?;
            let seed = default_seed(seed)?;
            let config = PointConfiguration::new(p);
            let h = if boundary {
                let w = load_weights(&weights, &config, true)?;
                triangulate::boundary_triangulation(&config, &w)?.h_vector()
            } else {
                let w = load_weights(&weights, &config, false)
                    .or_else(|_| load_weights(&weights, &config, true))?;
                let t = full_triangulation(&config, &w, seed)?;
                SimplicialComplex::new(t.cells).h_vector()
            };
            print_data(serde_json::json!({
                "command": "hvector", "instance": name, "boundary": boundary,
                "h": json_ints(&h),
            }));
            Ok(0)
        }
        Command::Toric { poly, truncate } => {
            let (name, p) = load_polytope(&poly)?;
            let config = PointConfiguration::new(p);
            let gens = match truncate {
                Some(d) => groebner::fiber_generators(&config.points, d),
                None => groebner::toric_ideal_generators(&config),
            };
            print_data(serde_json::json!({
                "command": "toric", "instance": name,
                "points": ints_json(&config.points),
                "binomials": gens.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            }));
            Ok(0)
        }
        Command::BoundaryIdeal { poly } => {
            let (name, p) = load_polytope(&poly)?;
            let config = PointConfiguration::new(p);
            let (bins, mp) = groebner::boundary_ideal(&config);
            print_data(serde_json::json!({
                "command": "boundary-ideal", "instance": name,
                "points": ints_json(&config.points),
                "binomials": bins.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "interior_monomials": mp.display_generators(),
            }));
            Ok(0)
        }
        Command::Initial { poly, weights, seed } => {
            let (name, p) = load_polytope(&poly)?;
            let seed = default_seed(seed)?;
            let config = PointConfiguration::new(p);
            let w = load_weights(&weights, &config, false)
                .or_else(|_| load_weights(&weights, &config, true))?;
            let (omega, gens, which) = match w.support {
                WeightSupport::Full => (
                    w.clone(),
                    groebner::toric_ideal_generators(&config)
                        .into_iter()
                        .map(GbElem::Bin)
                        .collect::<Vec<_>>(),
                    "toric",
                ),
                WeightSupport::Boundary => {
                    let (omega, _) = triangulate::extend_boundary_weights(&config, &w, seed)?;
                    (omega, groebner::boundary_ideal_elems(&config), "toric-boundary")
                }
            };
            let order = TermOrder::from_weight_function(&omega, config.len());
            let gb = groebner::buchberger(&gens, &order, None);
            let ideal = groebner::initial_ideal(&gb);
            print_data(serde_json::json!({
                "command": "initial", "instance": name, "ideal": which,
                "points": ints_json(&config.points),
                "generators": ideal.display_generators(),
                "squarefree": ideal.is_squarefree(),
            }));
            Ok(0)
        }
        Command::Verify { check, poly, weights, seed } => {
            let (name, p) = load_polytope(&poly)?;
            let seed = default_seed(seed)?;
            let reports = run_verify(&check, &name, &p, weights.as_deref(), seed)?;
            Ok(emit(&reports))
        }
        Command::Corpus { action } => match action {
            CorpusAction::Run { filter, seed } => {
                let seed = default_seed(seed)?;
                let reports = corpus::run_suite(filter.as_deref(), seed)?;
                Ok(emit(&reports))
            }
            CorpusAction::List => {
                for inst in corpus::named_instances() {
                    println!("{}", inst.name);
                }
                Ok(0)
            }
        },
    }
}

fn run_verify(
    check: &str,
    name: &str,
    p: &LatticePolytope,
    weights: Option<&str>,
    seed: u64,
) -> anyhow::Result<Vec<VerificationReport>> {
    let config = PointConfiguration::new(p.clone());
    let wspec = weights.unwrap_or("sqnorm");
    let data = corpus::hstar_data(p)?;
    let d = data.d;
    let report = match check {
        "betke-mcmullen" => {
            let w = load_weights(wspec, &config, false)
                .or_else(|_| load_weights(wspec, &config, true))?;
            let t = full_triangulation(&config, &w, seed)?;
            corpus::betke_mcmullen_report(&config, &t, &data.hp, name)
        }
        "stapledon" => {
            let w = load_weights(wspec, &config, true)?;
            let cert = hstar_analysis::certify_rut_boundary(&config, &w, name)?;
            corpus::stapledon_report(&cert, &data.hb, d, name)
        }
        "sturmfels" => {
            let w = load_weights(wspec, &config, false)?;
            groebner::verify_sturmfels(&config, &w, name)?
        }
        "boundary-sturmfels" => {
            let w = load_weights(wspec, &config, true)?;
            groebner::verify_boundary_sturmfels(&config, &w, seed, name)?
        }
        "dehn-sommerville" => hstar_analysis::dehn_sommerville(&data.hp, &data.hb, d, name),
        "g-theorem" => {
            let w = load_weights(wspec, &config, true)?;
            let cert = hstar_analysis::certify_rut_boundary(&config, &w, name)?;
            hstar_analysis::g_theorem_checks(&data.hb, d, &cert, name)
        }
        "glbt" => corpus::glbt_report(&data.hb, d, name),
        "reflexive-propagation" => {
            let w = load_weights(wspec, &config, true)?;
            let cert = hstar_analysis::certify_rut_boundary(&config, &w, name)?;
            hstar_analysis::reflexive_propagation(&data.hp, d, &cert, name)
        }
        "bounds" => {
            let w = load_weights(wspec, &config, true)?;
            let cert = hstar_analysis::certify_rut_boundary(&config, &w, name)?;
            hstar_analysis::bounds_check(&data.hp, &data.hb, d, &cert, name)
        }
        "reciprocity" => {
            if data.counted {
                let profile = lattice::ehrhart_profile(p, d + 1);
                lattice::reciprocity_check(&profile, name)?
            } else {
                VerificationReport::new("reciprocity", name)
                    .note("skipped: dilation counting not attempted in this dimension")
            }
        }
        other => bail!(
            "unknown check {other:?}; expected one of betke-mcmullen, stapledon, sturmfels, \
             boundary-sturmfels, dehn-sommerville, g-theorem, glbt, reflexive-propagation, \
             bounds, reciprocity"
        ),
    };
    Ok(vec![report])
}
