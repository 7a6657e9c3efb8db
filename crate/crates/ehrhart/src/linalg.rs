//! Exact integer and rational linear algebra used by the geometric modules:
//! Bareiss determinants, rank, row Hermite normal form with transform,
//! integer kernel bases and rational Gaussian elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut a: Vec<Vec<Int>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = Int::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Rank of an integer matrix over the rationals.
pub fn rank(m: &[Vec<Int>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let v = &a[i][j] - &f * &a[r][j];
                    a[i][j] = v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Row Hermite normal form with unimodular transform: returns `(h, u)` with
/// `u * m = h`, `u` unimodular and `h` in row echelon form with positive pivots.
pub fn row_hnf_with_transform(m: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut h: Vec<Vec<Int>> = m.to_vec();
    let mut u: Vec<Vec<Int>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut pivot = 0usize;
    for c in 0..cols {
        if pivot >= rows {
            break;
        }
        // euclidean elimination in column c over rows pivot..
        loop {
            let mut best: Option<usize> = None;
            for i in pivot..rows {
                if !h[i][c].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if h[i][c].abs() < h[b][c].abs() => Some(i),
                        Some(b) => Some(b),
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap(pivot, b);
            u.swap(pivot, b);
            let mut others = false;
            for i in pivot + 1..rows {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[pivot][c]);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let v = &h[i][j] - &q * &h[pivot][j];
                            h[i][j] = v;
                        }
                        for j in 0..rows {
                            let v = &u[i][j] - &q * &u[pivot][j];
                            u[i][j] = v;
                        }
                    }
                    if !h[i][c].is_zero() {
                        others = true;
                    }
                }
            }
            if !others {
                break;
            }
        }
        if h[pivot][c].is_zero() {
            continue;
        }
        if h[pivot][c].is_negative() {
            for j in 0..cols {
                h[pivot][j] = -h[pivot][j].clone();
            }
            for j in 0..rows {
                u[pivot][j] = -u[pivot][j].clone();
            }
        }
        // reduce entries above the pivot
        for i in 0..pivot {
            if !h[i][c].is_zero() {
                let q = h[i][c].div_floor(&h[pivot][c]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let v = &h[i][j] - &q * &h[pivot][j];
                        h[i][j] = v;
                    }
                    for j in 0..rows {
                        let v = &u[i][j] - &q * &u[pivot][j];
                        u[i][j] = v;
                    }
                }
            }
        }
        pivot += 1;
    }
    (h, u)
}

/// Basis of the integer kernel `{v : a v = 0}` of an integer matrix `a`
/// (rows are equations, columns are unknowns).
pub fn integer_kernel(a: &[Vec<Int>]) -> Vec<Vec<Int>> {
    if a.is_empty() {
        return Vec::new();
    }
    let rows = a.len();
    let cols = a[0].len();
    // transpose: kernel vectors are left-null rows of a^T
    let at: Vec<Vec<Int>> = (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j].clone()).collect())
        .collect();
    let (h, u) = row_hnf_with_transform(&at);
    let mut basis = Vec::new();
    for (i, row) in h.iter().enumerate() {
        if row.iter().all(|x| x.is_zero()) {
            basis.push(u[i].clone());
        }
    }
    basis
}

/// Solves the square rational system `a x = b`; `None` if `a` is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].clone();
        for j in c..=n {
            let v = &m[c][j] / &inv;
            m[c][j] = v;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let v = &m[i][j] - &f * &m[c][j];
                    m[i][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Inverse of a square rational matrix; `None` if singular.
pub fn invert(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rat> = (0..n)
            .map(|i| {
                if i == j {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        cols.push(solve(a, &e)?);
    }
    // cols[j] is the j-th column of the inverse
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Primitive normal of the hyperplane through the row span of `diffs`
/// (`k` rows, `k+1` columns): the generalized cross product via cofactors.
/// Returns the zero vector when the rows are linearly dependent.
pub fn cross_normal(diffs: &[Vec<Int>]) -> Vec<Int> {
    let k = diffs.len();
    let dim = k + 1;
    debug_assert!(diffs.iter().all(|r| r.len() == dim));
    let mut normal = Vec::with_capacity(dim);
    for i in 0..dim {
        let minor: Vec<Vec<Int>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let mut d = det(&minor);
        if i % 2 == 1 {
            d = -d;
        }
        normal.push(d);
    }
    normal
}

/// Divides an integer vector by the gcd of its entries; zero vectors pass through.
pub fn make_primitive(v: &mut [Int]) {
    let mut g = Int::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g > Int::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// An integer vector `z` with `a . z = 1` for primitive `a` (extended gcd).
pub fn unit_functional_point(a: &[Int]) -> Option<Vec<Int>> {
    // fold pairwise: gcd(a_0..a_k) with Bezout certificate
    let n = a.len();
    let mut z = vec![Int::zero(); n];
    let mut g = Int::zero();
    for (i, ai) in a.iter().enumerate() {
        if g.is_zero() {
            if !ai.is_zero() {
                g = ai.abs();
                z[i] = if ai.is_negative() { -Int::one() } else { Int::one() };
            }
            continue;
        }
        let e = g.extended_gcd(ai);
        // e.gcd = e.x * g + e.y * a_i
        for zj in z.iter_mut() {
            *zj = &*zj * &e.x;
        }
        z[i] = e.y.clone();
        g = e.gcd;
    }
    if g.is_one() {
        Some(z)
    } else {
        None
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
