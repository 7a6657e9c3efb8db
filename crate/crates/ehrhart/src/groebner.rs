//! Binomial/monomial ideal engine: toric ideals of lattice point
//! configurations, interior monomial ideals, toric boundary ideals,
//! weight-order Groebner bases, initial ideals, radicals, Hilbert functions,
//! and the correspondence between initial complexes and regular
//! (boundary) triangulations.
//!
//! All ideals here are generated by monomials and pure-difference binomials,
//! and that class is closed under S-polynomials and reductions, so the
//! engine never needs general polynomial arithmetic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use crate::exactgeom::{self, LatticePoint};
use crate::lattice::binomial as binomial_coeff;
use crate::linalg::{self, Int, Rat};
use crate::report::VerificationReport;
use crate::simplicial::SimplicialComplex;
use crate::triangulate::{
    self, PointConfiguration, Triangulation, WeightFunction, WeightSupport,
};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// monomials and binomials

/// A monomial in the variables indexed by configuration points, as a sparse
/// exponent map. Entries are always positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exponents: BTreeMap<usize, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn variable(i: usize) -> Self {
        Monomial {
            exponents: [(i, 1)].into_iter().collect(),
        }
    }

    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        Monomial {
            exponents: pairs.iter().copied().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn from_support(support: &[usize]) -> Self {
        Monomial {
            exponents: support.iter().map(|&i| (i, 1)).collect(),
        }
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents.get(&i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.exponents.values().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .all(|(&i, &e)| other.exponent(i) >= e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (&i, &e) in &other.exponents {
            *exponents.entry(i).or_insert(0) += e;
        }
        Monomial { exponents }
    }

    /// Quotient; the caller guarantees `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut exponents = self.exponents.clone();
        for (&i, &e) in &other.exponents {
            let v = exponents.get_mut(&i).unwrap();
            *v -= e;
            if *v == 0 {
                exponents.remove(&i);
            }
        }
        Monomial { exponents }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (&i, &e) in &other.exponents {
            let v = exponents.entry(i).or_insert(0);
            *v = (*v).max(e);
        }
        Monomial { exponents }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exponents
            .keys()
            .all(|i| !other.exponents.contains_key(i))
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    pub fn radical(&self) -> Monomial {
        Monomial {
            exponents: self.exponents.keys().map(|&i| (i, 1)).collect(),
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.exponents.keys().copied().collect()
    }

    /// Divides out a single power of variable `i` if present.
    pub fn colon_variable(&self, i: usize) -> Monomial {
        if self.exponent(i) == 0 {
            self.clone()
        } else {
            self.div(&Monomial::variable(i))
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(&i, &e)| {
                if e == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A pure-difference binomial `lead - trail`, oriented so that the lead is
/// larger in whatever term order is in force.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub lead: Monomial,
    pub trail: Monomial,
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.lead, self.trail)
    }
}

// ---------------------------------------------------------------------------
// term orders

/// Rational weights compared first, ties broken by total degree and then by
/// reverse lexicographic comparison in the given variable sequence (the last
/// variable of `order` is the smallest). With zero weights this is graded
/// reverse lexicographic order. Valid for homogeneous ideals even when
/// weights are negative, since comparisons then stay within one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct TermOrder {
    pub weights: Vec<Rat>,
    pub order: Vec<usize>,
}

impl TermOrder {
    pub fn new(weights: Vec<Rat>) -> Self {
        let n = weights.len();
        TermOrder {
            weights,
            order: (0..n).collect(),
        }
    }

    pub fn from_weight_function(w: &WeightFunction, n: usize) -> Self {
        assert_eq!(w.support, WeightSupport::Full);
        TermOrder::new((0..n).map(|i| w.get(i).clone()).collect())
    }

    /// Graded reverse lexicographic order in which variable `last` is the
    /// smallest; used for saturation by that variable.
    pub fn grevlex_with_last(n: usize, last: usize) -> Self {
        let mut order: Vec<usize> = (0..n).filter(|&i| i != last).collect();
        order.push(last);
        TermOrder {
            weights: vec![Rat::zero(); n],
            order,
        }
    }

    pub fn weight_of(&self, m: &Monomial) -> Rat {
        m.exponents
            .iter()
            .map(|(&i, &e)| &self.weights[i] * Rat::from_integer(Int::from(e)))
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.weight_of(a).cmp(&self.weight_of(b)) {
            Ordering::Equal => {}
            o => return o,
        }
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for &v in self.order.iter().rev() {
            let d = a.exponent(v) as i64 - b.exponent(v) as i64;
            if d > 0 {
                return Ordering::Less;
            }
            if d < 0 {
                return Ordering::Greater;
            }
        }
        Ordering::Equal
    }
}

// ---------------------------------------------------------------------------
// Groebner bases

/// A basis element: the class of monomials and binomials is closed under
/// S-polynomials and reduction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GbElem {
    Mono(Monomial),
    Bin(Binomial),
}

impl GbElem {
    pub fn lead(&self) -> &Monomial {
        match self {
            GbElem::Mono(m) => m,
            GbElem::Bin(b) => &b.lead,
        }
    }

    /// Orients a binomial by the order; `None` when the element is zero.
    pub fn normalize(&self, order: &TermOrder) -> Option<GbElem> {
        match self {
            GbElem::Mono(m) => Some(GbElem::Mono(m.clone())),
            GbElem::Bin(b) => match order.cmp(&b.lead, &b.trail) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(GbElem::Bin(b.clone())),
                std::cmp::Ordering::Less => Some(GbElem::Bin(Binomial {
                    lead: b.trail.clone(),
                    trail: b.lead.clone(),
                })),
            },
        }
    }
}

impl fmt::Display for GbElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GbElem::Mono(m) => write!(f, "{m}"),
            GbElem::Bin(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Poly {
    Zero,
    Mono(Monomial),
    Bin(Monomial, Monomial), // lead > trail
}

fn make_bin(a: Monomial, b: Monomial, order: &TermOrder) -> Poly {
    match order.cmp(&a, &b) {
        std::cmp::Ordering::Equal => Poly::Zero,
        std::cmp::Ordering::Greater => Poly::Bin(a, b),
        std::cmp::Ordering::Less => Poly::Bin(b, a),
    }
}

fn find_reducer<'a>(m: &Monomial, basis: &'a [GbElem], skip: Option<usize>) -> Option<&'a GbElem> {
    basis
        .iter()
        .enumerate()
        .find(|(i, g)| Some(*i) != skip && g.lead().divides(m))
        .map(|(_, g)| g)
}

/// Fully reduces `p` modulo the basis (leading and trailing terms). For
/// homogeneous input every reduction stays within one total degree, so the
/// strictly decreasing chains terminate even with negative weights.
fn normal_form(mut p: Poly, basis: &[GbElem], order: &TermOrder, skip: Option<usize>) -> Poly {
    loop {
        match &p {
            Poly::Zero => return p,
            Poly::Mono(m) => match find_reducer(m, basis, skip) {
                None => return p,
                Some(GbElem::Mono(_)) => return Poly::Zero,
                Some(GbElem::Bin(b)) => {
                    p = Poly::Mono(m.div(&b.lead).mul(&b.trail));
                }
            },
            Poly::Bin(lead, trail) => {
                if let Some(r) = find_reducer(lead, basis, skip) {
                    match r {
                        GbElem::Mono(_) => p = Poly::Mono(trail.clone()),
                        GbElem::Bin(b) => {
                            let q = lead.div(&b.lead).mul(&b.trail);
                            p = if &q == trail {
                                Poly::Zero
                            } else {
                                make_bin(q, trail.clone(), order)
                            };
                        }
                    }
                } else if let Some(r) = find_reducer(trail, basis, skip) {
                    match r {
                        GbElem::Mono(_) => p = Poly::Mono(lead.clone()),
                        GbElem::Bin(b) => {
                            let q = trail.div(&b.lead).mul(&b.trail);
                            p = if &q == lead {
                                Poly::Zero
                            } else {
                                Poly::Bin(lead.clone(), q)
                            };
                        }
                    }
                } else {
                    return p;
                }
            }
        }
    }
}

fn s_polynomial(f: &GbElem, g: &GbElem, order: &TermOrder) -> Poly {
    match (f, g) {
        (GbElem::Bin(a), GbElem::Bin(b)) => {
            let l = a.lead.lcm(&b.lead);
            let u = l.div(&a.lead).mul(&a.trail);
            let v = l.div(&b.lead).mul(&b.trail);
            if u == v {
                Poly::Zero
            } else {
                make_bin(u, v, order)
            }
        }
        (GbElem::Bin(a), GbElem::Mono(m)) | (GbElem::Mono(m), GbElem::Bin(a)) => {
            let l = a.lead.lcm(m);
            Poly::Mono(l.div(&a.lead).mul(&a.trail))
        }
        (GbElem::Mono(_), GbElem::Mono(_)) => Poly::Zero,
    }
}

fn poly_to_elem(p: Poly) -> Option<GbElem> {
    match p {
        Poly::Zero => None,
        Poly::Mono(m) => Some(GbElem::Mono(m)),
        Poly::Bin(lead, trail) => Some(GbElem::Bin(Binomial { lead, trail })),
    }
}

fn elem_to_poly(e: &GbElem) -> Poly {
    match e {
        GbElem::Mono(m) => Poly::Mono(m.clone()),
        GbElem::Bin(b) => Poly::Bin(b.lead.clone(), b.trail.clone()),
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub elements: Vec<GbElem>,
    pub order: TermOrder,
    pub degree_cap: Option<usize>,
}

impl GroebnerBasis {
    pub fn max_lead_degree(&self) -> usize {
        self.elements
            .iter()
            .map(|e| e.lead().degree())
            .max()
            .unwrap_or(0)
    }
}

/// Buchberger's algorithm for homogeneous monomial/binomial input, with a
/// deterministic pair queue ordered by (lcm degree, lcm, indices). With a
/// degree cap the result is valid for all initial-ideal and Hilbert queries
/// up to that degree: homogeneous S-pairs never drop in degree, so the queue
/// degree is monotone and the loop can stop at the cap.
pub fn buchberger(gens: &[GbElem], order: &TermOrder, degree_cap: Option<usize>) -> GroebnerBasis {
    let mut basis: Vec<GbElem> = Vec::new();
    let mut seen: BTreeSet<GbElem> = BTreeSet::new();
    for g in gens {
        if let Some(e) = g.normalize(order) {
            if seen.insert(e.clone()) {
                basis.push(e);
            }
        }
    }
    let mut queue: BTreeSet<(usize, Monomial, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..i {
            let l = basis[i].lead().lcm(basis[j].lead());
            queue.insert((l.degree(), l, j, i));
        }
    }
    while let Some(entry) = queue.pop_first() {
        let (deg, _, i, j) = entry;
        if let Some(cap) = degree_cap {
            if deg > cap {
                break;
            }
        }
        if basis[i].lead().coprime(basis[j].lead()) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(s, &basis, order, None);
        if let Some(e) = poly_to_elem(r) {
            if seen.insert(e.clone()) {
                let k = basis.len();
                for (idx, b) in basis.iter().enumerate() {
                    let l = e.lead().lcm(b.lead());
                    queue.insert((l.degree(), l, idx, k));
                }
                basis.push(e);
            }
        }
    }
    // minimalize: drop elements whose lead is divisible by another lead
    let mut kept: Vec<GbElem> = Vec::new();
    let mut by_degree: Vec<GbElem> = basis.clone();
    by_degree.sort_by(|a, b| {
        (a.lead().degree(), a.lead().clone())
            .cmp(&(b.lead().degree(), b.lead().clone()))
            .then_with(|| a.cmp(b))
    });
    for e in by_degree {
        if !kept.iter().any(|k: &GbElem| k.lead().divides(e.lead())) {
            kept.push(e);
        }
    }
    // autoreduce trails for a unique reduced basis
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let r = normal_form(elem_to_poly(&kept[i]), &kept, order, Some(i));
            let e = poly_to_elem(r);
            match e {
                Some(e) if e != kept[i] => {
                    kept[i] = e;
                    changed = true;
                }
                None => {
                    kept.remove(i);
                    changed = true;
                    break;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    kept.sort_by(|a, b| {
        (a.lead().degree(), a.lead().clone())
            .cmp(&(b.lead().degree(), b.lead().clone()))
            .then_with(|| a.cmp(b))
    });
    GroebnerBasis {
        elements: kept,
        order: order.clone(),
        degree_cap,
    }
}

/// True iff the element reduces to zero modulo the basis, i.e. lies in the
/// ideal (up to the basis' degree cap).
pub fn reduces_to_zero(e: &GbElem, gb: &GroebnerBasis) -> bool {
    normal_form(elem_to_poly(e), &gb.elements, &gb.order, None) == Poly::Zero
}

// ---------------------------------------------------------------------------
// monomial ideals

/// A monomial ideal stored by its unique minimal generating set, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut sorted: Vec<Monomial> = gens.into_iter().collect();
        sorted.sort_by(|a, b| (a.degree(), a.clone()).cmp(&(b.degree(), b.clone())));
        sorted.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in sorted {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        MonomialIdeal { generators: minimal }
    }

    pub fn zero() -> Self {
        MonomialIdeal { generators: vec![] }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.generators.iter().map(|g| g.radical()))
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(|g| g.is_squarefree())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn display_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

/// Minimal generators of the initial ideal (up to the basis' degree cap).
pub fn initial_ideal(gb: &GroebnerBasis) -> MonomialIdeal {
    MonomialIdeal::new(gb.elements.iter().map(|e| e.lead().clone()))
}

/// Number of degree-`m` monomials in `n_vars` variables avoiding the ideal,
/// by memoized splitting on a pivot variable: N(I, m) counts monomials not
/// divisible by `x_v` (drop one variable) plus those divisible (colon by
/// `x_v`, degree drops by one).
pub fn hilbert_function(ideal: &MonomialIdeal, n_vars: usize, m: usize) -> Int {
    type Key = (Vec<Monomial>, usize, usize);
    fn count(gens: &[Monomial], n_vars: usize, m: usize, memo: &mut HashMap<Key, Int>) -> Int {
        if gens.iter().any(|g| g.is_one()) {
            return Int::zero();
        }
        if m == 0 {
            return Int::from(1);
        }
        if gens.is_empty() {
            return binomial_coeff(n_vars + m - 1, m);
        }
        let key = (gens.to_vec(), n_vars, m);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let pivot = *gens[0].exponents.keys().next().unwrap();
        let without: Vec<Monomial> = gens
            .iter()
            .filter(|g| g.exponent(pivot) == 0)
            .cloned()
            .collect();
        let colon =
            MonomialIdeal::new(gens.iter().map(|g| g.colon_variable(pivot))).generators;
        let result = count(&without, n_vars - 1, m, memo)
            + count(&colon, n_vars, m - 1, memo);
        memo.insert(key, result.clone());
        result
    }
    let mut memo = HashMap::new();
    count(&ideal.generators, n_vars, m, &mut memo)
}

/// Hilbert function of the quotient by the initial ideal of a (possibly
/// truncated) basis; refuses queries beyond the truncation degree.
pub fn hilbert_from_basis(gb: &GroebnerBasis, n_vars: usize, m: usize) -> Result<Int> {
    if let Some(cap) = gb.degree_cap {
        if m > cap {
            return Err(Error::CapTooLowForQuery { query: m, cap });
        }
    }
    Ok(hilbert_function(&initial_ideal(gb), n_vars, m))
}

// ---------------------------------------------------------------------------
// toric and boundary ideals

/// Generators of the toric ideal of the homogenized configuration
/// {(p, 1) : p in points}: an integer kernel basis of the point matrix,
/// saturated by every variable in turn. Saturation by one variable divides
/// that variable out of a Groebner basis in which it is the smallest
/// (for homogeneous ideals such a basis has the property that the variable
/// divides an element whenever it divides its lead).
pub fn toric_ideal_from_points(points: &[LatticePoint]) -> Vec<Binomial> {
    let n = points.len();
    if n == 0 {
        return vec![];
    }
    let d = points[0].len();
    let mut matrix: Vec<Vec<Int>> = Vec::with_capacity(d + 1);
    for r in 0..d {
        matrix.push(points.iter().map(|p| p[r].clone()).collect());
    }
    matrix.push(vec![Int::from(1); n]);
    let kernel = linalg::integer_kernel(&matrix);
    let mut gens: Vec<GbElem> = Vec::new();
    for v in &kernel {
        let mut pos: Vec<(usize, u32)> = Vec::new();
        let mut neg: Vec<(usize, u32)> = Vec::new();
        for (i, c) in v.iter().enumerate() {
            let c = i64::try_from(c).expect("kernel entries are small");
            match c.cmp(&0) {
                std::cmp::Ordering::Greater => pos.push((i, c as u32)),
                std::cmp::Ordering::Less => neg.push((i, (-c) as u32)),
                std::cmp::Ordering::Equal => {}
            }
        }
        gens.push(GbElem::Bin(Binomial {
            lead: Monomial::from_pairs(&pos),
            trail: Monomial::from_pairs(&neg),
        }));
    }
    if gens.is_empty() {
        return vec![];
    }
    for var in 0..n {
        let order = TermOrder::grevlex_with_last(n, var);
        let gb = buchberger(&gens, &order, None);
        gens = gb
            .elements
            .iter()
            .map(|e| match e {
                GbElem::Bin(b) => {
                    let c = b.lead.exponent(var).min(b.trail.exponent(var));
                    if c == 0 {
                        e.clone()
                    } else {
                        let m = Monomial::from_pairs(&[(var, c)]);
                        GbElem::Bin(Binomial {
                            lead: b.lead.div(&m),
                            trail: b.trail.div(&m),
                        })
                    }
                }
                GbElem::Mono(_) => unreachable!("toric ideals contain no monomials"),
            })
            .collect();
    }
    let mut out: Vec<Binomial> = gens
        .into_iter()
        .map(|e| match e {
            GbElem::Bin(b) => b,
            GbElem::Mono(_) => unreachable!(),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn toric_ideal_generators(config: &PointConfiguration) -> Vec<Binomial> {
    toric_ideal_from_points(&config.points)
}

/// Independent low-degree oracle: for every degree `m <= max_degree` and
/// every point of `m * P`, connect all multisets of configuration points
/// with that sum to a fixed base representation. Spans the toric ideal in
/// degrees up to `max_degree`.
pub fn fiber_generators(points: &[LatticePoint], max_degree: usize) -> Vec<Binomial> {
    assert!(max_degree >= 2);
    let n = points.len();
    let mut out: Vec<Binomial> = Vec::new();
    for m in 2..=max_degree {
        let mut fibers: BTreeMap<Vec<Int>, Vec<Monomial>> = BTreeMap::new();
        for combo in (0..n).combinations_with_replacement(m) {
            let d = points[0].len();
            let mut sum = vec![Int::zero(); d];
            for &i in &combo {
                for (s, c) in sum.iter_mut().zip(&points[i]) {
                    *s += c;
                }
            }
            let mut pairs: BTreeMap<usize, u32> = BTreeMap::new();
            for &i in &combo {
                *pairs.entry(i).or_insert(0) += 1;
            }
            fibers
                .entry(sum)
                .or_default()
                .push(Monomial { exponents: pairs });
        }
        for (_, reps) in fibers {
            for other in &reps[1..] {
                out.push(Binomial {
                    lead: other.clone(),
                    trail: reps[0].clone(),
                });
            }
        }
    }
    out
}

/// The interior monomial ideal: squarefree generators supported on the
/// inclusion-minimal point subsets contained in no single facet. Every
/// generator is re-validated against the cone criterion: the homogenized sum
/// of its points must satisfy every facet inequality strictly.
pub fn interior_monomial_ideal(config: &PointConfiguration) -> MonomialIdeal {
    let n = config.len();
    let facet_sets: Vec<BTreeSet<usize>> = config
        .polytope
        .facets
        .iter()
        .map(|f| {
            config
                .polytope
                .tight_indices(f, &config.points)
                .into_iter()
                .collect()
        })
        .collect();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for k in 1..=n {
        for sigma in (0..n).combinations(k) {
            if supports
                .iter()
                .any(|s| s.iter().all(|i| sigma.contains(i)))
            {
                continue;
            }
            if !facet_sets
                .iter()
                .any(|fs| sigma.iter().all(|i| fs.contains(i)))
            {
                supports.push(sigma);
            }
        }
    }
    for sigma in &supports {
        let mut gamma = vec![Int::zero(); config.dim()];
        for &i in sigma {
            for (g, c) in gamma.iter_mut().zip(&config.points[i]) {
                *g += c;
            }
        }
        let k = Int::from(sigma.len() as i64);
        for f in &config.polytope.facets {
            assert!(
                linalg::dot(&f.normal, &gamma) < &f.offset * &k,
                "support test and cone criterion disagree on {sigma:?}"
            );
        }
    }
    MonomialIdeal::new(supports.iter().map(|s| Monomial::from_support(s)))
}

/// The toric boundary ideal as its two generating layers; their union
/// generates the vanishing ideal of the boundary semigroup algebra.
pub fn boundary_ideal(config: &PointConfiguration) -> (Vec<Binomial>, MonomialIdeal) {
    (
        toric_ideal_generators(config),
        interior_monomial_ideal(config),
    )
}

pub fn boundary_ideal_elems(config: &PointConfiguration) -> Vec<GbElem> {
    let (toric, mp) = boundary_ideal(config);
    toric
        .into_iter()
        .map(GbElem::Bin)
        .chain(mp.generators.into_iter().map(GbElem::Mono))
        .collect()
}

// ---------------------------------------------------------------------------
// Stanley-Reisner bridge and the triangulation correspondences

/// Stanley-Reisner ideal of a complex on ground set `0..n_vars`: one
/// squarefree generator per minimal non-face, including a variable for every
/// ground-set element that is not a vertex of the complex.
pub fn stanley_reisner_ideal(complex: &SimplicialComplex, n_vars: usize) -> MonomialIdeal {
    let used: BTreeSet<usize> = complex.vertices().into_iter().collect();
    let singletons = (0..n_vars)
        .filter(|i| !used.contains(i))
        .map(Monomial::variable);
    let nonfaces = complex
        .minimal_nonfaces()
        .into_iter()
        .map(|s| Monomial::from_support(&s));
    MonomialIdeal::new(singletons.chain(nonfaces))
}

/// The triangulation matching the term order "weights, then graded reverse
/// lexicographic": the regular subdivision of the weights, refined where
/// necessary by the tiebreak weight vector that realizes the reverse
/// lexicographic comparison.
pub fn order_matching_triangulation(
    config: &PointConfiguration,
    w: &WeightFunction,
    tiebreak_degree: usize,
) -> Result<Vec<Vec<usize>>> {
    let cells = triangulate::regular_subdivision(config, w)?;
    if triangulate::is_triangulation(&cells, config) {
        return Ok(cells);
    }
    let order: Vec<usize> = (0..config.len()).collect();
    let rho = triangulate::revlex_tiebreak_weights(config.len(), tiebreak_degree, &order);
    let refined = triangulate::refine_by_secondary_weights(&cells, config, &rho)?;
    if triangulate::is_triangulation(&refined, config) {
        Ok(refined)
    } else {
        Err(Error::NonGenericWeights)
    }
}

/// Unimodularity of a boundary triangulation, with cell volumes measured in
/// the induced lattice of the facet hyperplane each cell lies in.
pub fn boundary_is_unimodular(config: &PointConfiguration, delta: &SimplicialComplex) -> bool {
    delta.facets.iter().all(|cell| {
        let pts: Vec<LatticePoint> = cell.iter().map(|&i| config.points[i].clone()).collect();
        let facet = config
            .polytope
            .facets
            .iter()
            .find(|f| pts.iter().all(|p| f.slack(p).is_zero()))
            .expect("boundary cells lie in a facet");
        exactgeom::facet_simplex_normalized_volume(facet, &pts) == Int::from(1)
    })
}

/// Checks that the radical of the initial ideal of the toric ideal equals
/// the Stanley-Reisner ideal of the triangulation induced by the weights,
/// and that squarefreeness of the initial ideal matches unimodularity.
pub fn verify_sturmfels(
    config: &PointConfiguration,
    w: &WeightFunction,
    instance: &str,
) -> Result<VerificationReport> {
    let n = config.len();
    let toric: Vec<GbElem> = toric_ideal_from_points(&config.points)
        .into_iter()
        .map(GbElem::Bin)
        .collect();
    let order = TermOrder::from_weight_function(w, n);
    let gb = buchberger(&toric, &order, None);
    let in_ideal = initial_ideal(&gb);
    let radical = in_ideal.radical();
    let cells = order_matching_triangulation(config, w, gb.max_lead_degree().max(2))?;
    let complex = SimplicialComplex::new(cells.clone());
    let sr = stanley_reisner_ideal(&complex, n);
    let t = Triangulation {
        cells,
        config: config.clone(),
        inducing_weights: Some(w.clone()),
    };
    let unimodular = triangulate::is_unimodular(&t);
    let report = VerificationReport::new("initial-complex-is-triangulation", instance)
        .with_sides(
            serde_json::json!(radical.display_generators()),
            serde_json::json!(sr.display_generators()),
        )
        .require(radical == sr, "radical of initial ideal differs from Stanley-Reisner ideal")
        .require(
            in_ideal.is_squarefree() == unimodular,
            "squarefreeness does not match unimodularity",
        );
    Ok(report)
}

/// Boundary analogue: extends the boundary weights, computes the initial
/// ideal of the toric boundary ideal and compares its radical with the
/// Stanley-Reisner ideal of the boundary triangulation; also checks the
/// initial-ideal decomposition in(I + M) = in(I) + M and the facet
/// restriction law for every facet.
pub fn verify_boundary_sturmfels(
    config: &PointConfiguration,
    w_bd: &WeightFunction,
    seed: u64,
    instance: &str,
) -> Result<VerificationReport> {
    let n = config.len();
    let (omega, _t) = triangulate::extend_boundary_weights(config, w_bd, seed)?;
    let delta = triangulate::boundary_triangulation(config, w_bd)?;
    let (toric, mp) = boundary_ideal(config);
    let order = TermOrder::from_weight_function(&omega, n);
    let all_gens: Vec<GbElem> = toric
        .iter()
        .cloned()
        .map(GbElem::Bin)
        .chain(mp.generators.iter().cloned().map(GbElem::Mono))
        .collect();
    let gb_full = buchberger(&all_gens, &order, None);
    let in_boundary = initial_ideal(&gb_full);
    let radical = in_boundary.radical();
    let i_delta = stanley_reisner_ideal(&delta, n);

    // decomposition: in(I + M) = in(I) + M, as minimal generating sets
    let toric_elems: Vec<GbElem> = toric.iter().cloned().map(GbElem::Bin).collect();
    let gb_toric = buchberger(&toric_elems, &order, None);
    let assembled = MonomialIdeal::new(
        initial_ideal(&gb_toric)
            .generators
            .into_iter()
            .chain(mp.generators.iter().cloned()),
    );

    let unimodular = boundary_is_unimodular(config, &delta);

    let mut report = VerificationReport::new("boundary-initial-complex", instance)
        .with_sides(
            serde_json::json!(radical.display_generators()),
            serde_json::json!(i_delta.display_generators()),
        )
        .require(
            radical == i_delta,
            "radical of boundary initial ideal differs from Stanley-Reisner ideal",
        )
        .require(
            in_boundary.is_squarefree() == unimodular,
            "squarefreeness does not match boundary unimodularity",
        )
        .require(
            assembled == in_boundary,
            "initial ideal does not decompose as in(toric) + interior part",
        );
    if let Some(g) = mp.generators.iter().find(|g| g.degree() >= 3) {
        report = report.note(&format!(
            "interior ideal has a minimal generator of degree >= 3: {g}"
        ));
    }

    // facet restriction: generators supported on a facet generate the
    // initial ideal of that facet's toric ideal
    for facet in &config.polytope.facets {
        let (idx, projected) = config.facet_projection(facet)?;
        let facet_vars: BTreeSet<usize> = idx.iter().copied().collect();
        let lhs: Vec<Monomial> = in_boundary
            .generators
            .iter()
            .filter(|g| g.support().iter().all(|i| facet_vars.contains(i)))
            .cloned()
            .collect();
        let facet_toric: Vec<GbElem> = toric_ideal_from_points(&projected)
            .into_iter()
            .map(GbElem::Bin)
            .collect();
        let facet_order = TermOrder::new(idx.iter().map(|&i| omega.get(i).clone()).collect());
        let facet_gb = buchberger(&facet_toric, &facet_order, None);
        let rhs_local = initial_ideal(&facet_gb);
        let rhs = MonomialIdeal::new(rhs_local.generators.iter().map(|g| Monomial {
            exponents: g.exponents.iter().map(|(&k, &e)| (idx[k], e)).collect(),
        }));
        let lhs_ideal = MonomialIdeal::new(lhs);
        let ok = lhs_ideal.generators.iter().all(|g| rhs.contains(g))
            && rhs.generators.iter().all(|g| lhs_ideal.contains(g));
        report = report.require(
            ok,
            &format!("facet restriction law fails on facet {:?}", facet.normal),
        );
    }
    Ok(report)
}
