//! Integer-lattice algorithms: Hermite and Smith normal forms, and
//! finitely generated Z-submodules of Q^n or Q(sqrt d)^n.
//!
//! Quadratic-field vectors are handled by coordinate splitting: each
//! coordinate `a + b*sqrt(d)` becomes the pair `(a, b)`, so one integer HNF
//! engine serves both fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Scalar};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn row_sub_mul(m: &mut IntMatrix, target: usize, source: usize, factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(&src) {
        *t -= factor * s;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for v in m[i].iter_mut() {
        *v = -&*v;
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * A`, `U`
/// unimodular, `H` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut h = a.clone();
    let mut u = identity(rows);
    let mut p = 0;
    for c in 0..cols {
        if p == rows {
            break;
        }
        loop {
            // Smallest nonzero entry in column c at or below row p.
            let best = (p..rows)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(best) = best else { break };
            h.swap(p, best);
            u.swap(p, best);
            let mut done = true;
            for i in p + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[p][c]);
                row_sub_mul(&mut h, i, p, &q);
                row_sub_mul(&mut u, i, p, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[p][c].is_zero() {
            continue;
        }
        if h[p][c].is_negative() {
            negate_row(&mut h, p);
            negate_row(&mut u, p);
        }
        for i in 0..p {
            let q = h[i][c].div_floor(&h[p][c]);
            row_sub_mul(&mut h, i, p, &q);
            row_sub_mul(&mut u, i, p, &q);
        }
        p += 1;
    }
    (h, u)
}

/// Diagonal of the Smith normal form: nonzero invariant factors
/// `d1 | d2 | ...` followed by zeros, `min(rows, cols)` entries in total.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.clone();
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_diagonal(&m, n);
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let pivot = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&pivot);
                row_sub_mul(&mut m, i, t, &q);
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&pivot);
                if !q.is_zero() {
                    for row in m.iter_mut() {
                        let s = row[t].clone();
                        row[j] -= &q * s;
                    }
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let src = m[i].clone();
                    for (d, s) in m[t].iter_mut().zip(&src) {
                        *d += s;
                    }
                }
                None => break,
            }
        }
    }
    finish_diagonal(&m, n)
}

fn finish_diagonal(m: &IntMatrix, n: usize) -> Vec<BigInt> {
    let mut diag: Vec<BigInt> = (0..n).map(|i| m[i][i].abs()).collect();
    let mut nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
    nonzero.sort();
    let zeros = n - nonzero.len();
    diag = nonzero;
    diag.extend(std::iter::repeat_n(BigInt::zero(), zeros));
    diag
}

/// Splits a vector into rational coordinates according to `layout`; `None`
/// if some entry does not live in the layout field.
pub fn split_coordinates(v: &[Scalar], layout: Field) -> Option<Vec<BigRational>> {
    let mut out = Vec::with_capacity(v.len() * 2);
    for x in v {
        match (layout, x) {
            (Field::Rational, Scalar::Rational(r)) => out.push(r.clone()),
            (Field::Rational, Scalar::Quadratic { .. }) => return None,
            (Field::Quadratic(d), Scalar::Quadratic { d: e, .. }) if d != *e => return None,
            (Field::Quadratic(_), _) => {
                let (a, b) = x.parts();
                out.push(a);
                out.push(b);
            }
        }
    }
    Some(out)
}

/// Finitely generated Z-submodule of `Field^dim`, stored as an echelon basis
/// of split rational coordinates.
#[derive(Clone, Debug)]
pub struct ZModule {
    dim: usize,
    layout: Field,
    basis: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl ZModule {
    /// Span of `generators` (vectors of length `dim`). Generators outside
    /// `layout` are not representable and yield `None`.
    pub fn new(dim: usize, generators: &[Vec<Scalar>], layout: Field) -> Option<Self> {
        let split: Vec<Vec<BigRational>> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "generator length mismatch");
                split_coordinates(g, layout)
            })
            .collect::<Option<_>>()?;
        let width = match layout {
            Field::Rational => dim,
            Field::Quadratic(_) => 2 * dim,
        };
        let scale = split
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: IntMatrix = split
            .iter()
            .map(|row| row.iter().map(|x| (x * &scale).to_integer()).collect())
            .collect();
        let (h, _) = hermite_normal_form(&ints);
        let scale_r = BigRational::from_integer(scale);
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for row in h {
            if let Some(p) = row.iter().position(|x| !x.is_zero()) {
                pivots.push(p);
                basis.push(
                    row.into_iter()
                        .map(|x| BigRational::from_integer(x) / &scale_r)
                        .collect(),
                );
            }
        }
        debug_assert!(basis.iter().all(|b: &Vec<BigRational>| b.len() == width));
        Some(ZModule {
            dim,
            layout,
            basis,
            pivots,
        })
    }

    /// Module spanned by vectors in whatever single field they share.
    pub fn spanned_by(dim: usize, generators: &[Vec<Scalar>]) -> Option<Self> {
        let layout = Field::join_all(generators.iter().flatten().map(Scalar::field))?;
        Self::new(dim, generators, layout)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn layout(&self) -> Field {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Integer coordinates of `v` in the echelon basis, if `v` is a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<BigInt>> {
        if v.len() != self.dim {
            return None;
        }
        let mut w = split_coordinates(v, self.layout)?;
        let mut coords = Vec::with_capacity(self.basis.len());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = &w[p] / &b[p];
            if !c.is_integer() {
                return None;
            }
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= &c * y;
                }
            }
            coords.push(c.to_integer());
        }
        w.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Elementary divisors of the submodule spanned by `vectors` inside this
    /// module (`None` if some vector is not a member).
    pub fn elementary_divisors(&self, vectors: &[Vec<Scalar>]) -> Option<Vec<BigInt>> {
        let coords: IntMatrix = vectors
            .iter()
            .map(|v| self.coordinates(v))
            .collect::<Option<_>>()?;
        if coords.is_empty() || self.rank() == 0 {
            return Some(vec![BigInt::zero(); self.rank()]);
        }
        let mut d = smith_diagonal(&coords);
        d.resize(self.rank(), BigInt::zero());
        Some(d)
    }

    /// Whether `v` is a primitive element: a member that is not `k * w` for
    /// any member `w` and integer `k >= 2`.
    pub fn is_primitive(&self, v: &[Scalar]) -> bool {
        match self.coordinates(v) {
            Some(c) => c.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one(),
            None => false,
        }
    }
}

/// True iff `v` is an integer combination of `generators`.
pub fn zmodule_membership(generators: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let Some(layout) = Field::join_all(
        generators
            .iter()
            .chain(std::iter::once(&v.to_vec()))
            .flatten()
            .map(Scalar::field),
    ) else {
        return false;
    };
    ZModule::new(v.len(), generators, layout).is_some_and(|m| m.contains(v))
}

/// True iff the two generator lists span the same Z-module.
pub fn zmodule_equal(dim: usize, gens1: &[Vec<Scalar>], gens2: &[Vec<Scalar>]) -> bool {
    let Some(layout) = Field::join_all(gens1.iter().chain(gens2).flatten().map(Scalar::field))
    else {
        return false;
    };
    let (Some(m1), Some(m2)) = (
        ZModule::new(dim, gens1, layout),
        ZModule::new(dim, gens2, layout),
    ) else {
        return false;
    };
    gens1.iter().all(|g| m2.contains(g)) && gens2.iter().all(|g| m1.contains(g))
}
