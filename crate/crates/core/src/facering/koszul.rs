//! Gröbner-free computations on the face ring `R[K]`: graded dimensions of
//! `R[K]/J` and the Koszul homology of the linear forms acting on `R[K]`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::poly::Monomial;
use super::LinearSystemOfParameters;
use crate::exactfield::{Scalar, SparseEchelon};
use crate::exec::{self, Execution};
use crate::simplicial::{SimplicialComplex, VertexSet};

/// Monomials of `R[K]` (support a face of `K`), graded by internal degree.
pub struct FaceMonomials {
    by_degree: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl FaceMonomials {
    pub fn new(k: &SimplicialComplex, max_degree: usize) -> Self {
        let m = k.m();
        let mut by_degree = vec![vec![Monomial::one(m)]];
        for _ in 0..max_degree {
            let prev = by_degree.last().unwrap();
            let mut next = Vec::new();
            for x in prev {
                let start = x.last_var().unwrap_or(0);
                for v in start..m {
                    let y = x.mul_var(v);
                    let support: VertexSet = y.support().collect();
                    if k.is_face(&support) {
                        next.push(y);
                    }
                }
            }
            by_degree.push(next);
        }
        let index = by_degree
            .iter()
            .map(|xs| {
                xs.iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, x)| (x, i))
                    .collect()
            })
            .collect();
        FaceMonomials { by_degree, index }
    }

    pub fn degree(&self, d: usize) -> &[Monomial] {
        &self.by_degree[d]
    }

    pub fn position(&self, x: &Monomial) -> Option<usize> {
        self.index[x.degree()].get(x).copied()
    }

    /// `theta * x` in `R[K]` as (index, coefficient) pairs in degree `deg x + 1`.
    fn times_form(&self, row: &[Scalar], x: &Monomial) -> Vec<(usize, Scalar)> {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .filter_map(|(v, c)| self.position(&x.mul_var(v)).map(|p| (p, c.clone())))
            .collect()
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            cur.push(s);
            go(s + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Rank of the Koszul differential `d_i` restricted to internal degree
/// `degree`: `Λ^i ⊗ R[K]_{degree-i} -> Λ^{i-1} ⊗ R[K]_{degree-i+1}`.
fn differential_rank(
    faces: &FaceMonomials,
    lsop: &LinearSystemOfParameters,
    i: usize,
    degree: usize,
) -> usize {
    let n = lsop.n();
    if i == 0 || i > n || i > degree {
        return 0;
    }
    let source = faces.degree(degree - i);
    let target_len = faces.degree(degree - i + 1).len();
    let lower: HashMap<Vec<usize>, usize> = subsets(n, i - 1)
        .into_iter()
        .enumerate()
        .map(|(p, s)| (s, p))
        .collect();
    let rows = lsop.matrix.row_vectors();
    let mut echelon = SparseEchelon::new();
    for s in subsets(n, i) {
        for x in source {
            let mut image: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (t, &form) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(t);
                let offset = lower[&rest] * target_len;
                for (p, c) in faces.times_form(&rows[form], x) {
                    let c = if t % 2 == 0 { c } else { -c };
                    let e = image.entry(offset + p).or_insert_with(Scalar::zero);
                    *e = &*e + &c;
                }
            }
            echelon.insert(image.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    echelon.rank()
}

fn chain_dimension(faces: &FaceMonomials, n: usize, i: usize, degree: usize) -> usize {
    if i > n || i > degree {
        return 0;
    }
    crate::simplicial::binomial(n, i) as usize * faces.degree(degree - i).len()
}

/// Dimension of `(R[K]/J)_k` computed from face monomials and the rank of
/// multiplication by the linear forms, without Gröbner bases.
pub fn graded_dimension_oracle(
    k: &SimplicialComplex,
    lsop: &LinearSystemOfParameters,
    degree: usize,
) -> usize {
    let faces = FaceMonomials::new(k, degree);
    faces.degree(degree).len() - differential_rank(&faces, lsop, 1, degree)
}

/// `graded_dimension_oracle` for every degree `0..=max_degree`.
pub fn oracle_hilbert(
    k: &SimplicialComplex,
    lsop: &LinearSystemOfParameters,
    max_degree: usize,
    execution: Execution,
) -> Vec<usize> {
    let faces = FaceMonomials::new(k, max_degree);
    exec::map_range(execution, 0..max_degree + 1, |d| {
        faces.degree(d).len() - differential_rank(&faces, lsop, 1, d)
    })
}

/// Dimension of the Koszul homology `H_i` of the linear forms on `R[K]` in
/// internal degree `degree`.
pub fn koszul_homology(
    k: &SimplicialComplex,
    lsop: &LinearSystemOfParameters,
    i: usize,
    degree: usize,
) -> usize {
    let faces = FaceMonomials::new(k, degree);
    let n = lsop.n();
    chain_dimension(&faces, n, i, degree)
        - differential_rank(&faces, lsop, i, degree)
        - differential_rank(&faces, lsop, i + 1, degree)
}

/// Koszul homology dimensions `H_{i,k}` for `0 <= i <= n`, `0 <= k <= max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub n: usize,
    pub max_degree: usize,
    /// `entries[i][k]`.
    pub entries: Vec<Vec<usize>>,
}

impl KoszulReport {
    pub fn get(&self, i: usize, k: usize) -> usize {
        self.entries[i][k]
    }

    /// Nonzero entries with `i >= 1` as `(i, k, dim)`.
    pub fn higher_nonzero(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate().skip(1) {
            for (k, &d) in row.iter().enumerate() {
                if d != 0 {
                    out.push((i, k, d));
                }
            }
        }
        out
    }
}

pub fn koszul_table(
    k: &SimplicialComplex,
    lsop: &LinearSystemOfParameters,
    max_degree: usize,
    execution: Execution,
) -> KoszulReport {
    let n = lsop.n();
    let faces = FaceMonomials::new(k, max_degree);
    let cells: Vec<(usize, usize)> = (1..=n + 1)
        .flat_map(|i| (0..=max_degree).map(move |d| (i, d)))
        .collect();
    let ranks: HashMap<(usize, usize), usize> = cells
        .iter()
        .copied()
        .zip(exec::map(execution, &cells, |&(i, d)| {
            differential_rank(&faces, lsop, i, d)
        }))
        .collect();
    let rank = |i: usize, d: usize| ranks.get(&(i, d)).copied().unwrap_or(0);
    let entries = (0..=n)
        .map(|i| {
            (0..=max_degree)
                .map(|d| chain_dimension(&faces, n, i, d) - rank(i, d) - rank(i + 1, d))
                .collect()
        })
        .collect();
    KoszulReport {
        n,
        max_degree,
        entries,
    }
}
