//! Abstract simplicial complexes stored by their maximal faces: f/h-vectors,
//! boundary complexes of triangulations, minimal non-faces (Stanley-Reisner
//! generators) and balancedness.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::linalg::Int;

/// A simplicial complex on integer vertex labels, represented by its maximal
/// faces (sorted index sets, none containing another). Two complexes are
/// equal iff they have the same labeled facet list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(faces: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut sets: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        sets.sort();
        sets.dedup();
        let maximal: Vec<Vec<usize>> = sets
            .iter()
            .filter(|f| {
                !sets
                    .iter()
                    .any(|g| g.len() > f.len() && is_subset(f, g))
            })
            .cloned()
            .collect();
        SimplicialComplex { facets: maximal }
    }

    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.facets.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_pure(&self) -> bool {
        self.facets
            .iter()
            .all(|f| f.len() as isize == self.dim() + 1)
    }

    pub fn is_face(&self, sigma: &[usize]) -> bool {
        if sigma.is_empty() {
            return true;
        }
        self.facets.iter().any(|f| is_subset(sigma, f))
    }

    /// `(f_{-1}, f_0, ..., f_dim)` by subset expansion of the facets.
    pub fn f_vector(&self) -> Vec<Int> {
        let dim = self.dim();
        if dim < 0 {
            return vec![Int::one()];
        }
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in &self.facets {
            for k in 1..=facet.len() {
                for sub in facet.iter().copied().combinations(k) {
                    faces.insert(sub);
                }
            }
        }
        let mut f = vec![Int::zero(); dim as usize + 2];
        f[0] = Int::one();
        for face in &faces {
            f[face.len()] += 1;
        }
        f
    }

    /// Coefficients of `sum_k f_k z^{k+1} (1-z)^{dim-k}`, length dim + 2.
    pub fn h_vector(&self) -> Vec<Int> {
        let f = self.f_vector();
        let dim = self.dim().max(0) as usize;
        let mut h = vec![Int::zero(); dim + 2];
        for (idx, fk) in f.iter().enumerate() {
            // term f_k z^{k+1} (1-z)^{dim-k} with k = idx - 1
            let shift = idx;
            let power = dim + 1 - idx;
            let mut coeff = vec![Int::zero(); power + 1];
            for (j, c) in coeff.iter_mut().enumerate() {
                let b = crate::lattice::binomial(power, j);
                *c = if j % 2 == 0 { b } else { -b };
            }
            for (j, c) in coeff.iter().enumerate() {
                h[shift + j] += fk * c;
            }
        }
        h
    }

    /// Inclusion-minimal subsets of the vertex set that are not faces, in
    /// lexicographic-by-cardinality order.
    pub fn minimal_nonfaces(&self) -> Vec<Vec<usize>> {
        let verts = self.vertices();
        let mut nonfaces: Vec<Vec<usize>> = Vec::new();
        for k in 1..=verts.len() {
            for sigma in verts.iter().copied().combinations(k) {
                if nonfaces.iter().any(|nf| is_subset(nf, &sigma)) {
                    continue;
                }
                if !self.is_face(&sigma) {
                    nonfaces.push(sigma);
                }
            }
        }
        nonfaces
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

/// Boundary complex of a triangulation given by its top cells: the complex
/// generated by the codimension-1 simplices lying in exactly one cell.
pub fn boundary_complex(cells: &[Vec<usize>]) -> SimplicialComplex {
    let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for cell in cells {
        let mut sorted = cell.clone();
        sorted.sort_unstable();
        for omit in 0..sorted.len() {
            let ridge: Vec<usize> = sorted
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, &v)| v)
                .collect();
            *ridge_count.entry(ridge).or_insert(0) += 1;
        }
    }
    SimplicialComplex::new(
        ridge_count
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r),
    )
}

/// Searches for a proper `(dim + 1)`-coloring of the 1-skeleton by exact
/// backtracking, highest degree first. Returns vertex -> color on success.
pub fn is_balanced(k: &SimplicialComplex) -> Option<BTreeMap<usize, usize>> {
    let colors = (k.dim() + 1).max(1) as usize;
    let verts = k.vertices();
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let mut adj = vec![BTreeSet::new(); n];
    for facet in &k.facets {
        for pair in facet.iter().combinations(2) {
            let (a, b) = (index[pair[0]], index[pair[1]]);
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(adj[i].len()));
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    fn backtrack(
        pos: usize,
        order: &[usize],
        adj: &[BTreeSet<usize>],
        colors: usize,
        assignment: &mut Vec<Option<usize>>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        'colors: for c in 0..colors {
            for &w in &adj[v] {
                if assignment[w] == Some(c) {
                    continue 'colors;
                }
            }
            assignment[v] = Some(c);
            if backtrack(pos + 1, order, adj, colors, assignment) {
                return true;
            }
            assignment[v] = None;
        }
        false
    }
    if backtrack(0, &order, &adj, colors, &mut assignment) {
        Some(
            verts
                .iter()
                .map(|&v| (v, assignment[index[&v]].unwrap()))
                .collect(),
        )
    } else {
        None
    }
}
