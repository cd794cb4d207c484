use std::fmt;

use serde::{Serialize, Serializer};

use super::{Field, FieldError, Scalar};

pub type Vector = Vec<Scalar>;

/// Dense row-major matrix over a single exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
    field: Field,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, FieldError> {
        if entries.len() != rows * cols {
            return Err(FieldError::Shape {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let field =
            Field::join_all(entries.iter().map(Scalar::field)).ok_or(FieldError::MixedFields)?;
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
            field,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
            field: Field::Rational,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(FieldError::Shape {
                expected: cols,
                found: r.len(),
            });
        }
        Self::new(rows.len(), cols, rows.iter().flatten().cloned().collect())
    }

    /// Columns given as vectors of length `rows`; needed separately for the
    /// zero-column case where the row count cannot be inferred.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, FieldError> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(FieldError::Shape {
                expected: rows,
                found: c.len(),
            });
        }
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for c in columns {
                entries.push(c[i].clone());
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn from_ints(rows: usize, cols: usize, values: &[i64]) -> Self {
        Self::new(
            rows,
            cols,
            values.iter().map(|&v| Scalar::from_int(v)).collect(),
        )
        .expect("shape mismatch in from_ints")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.field = self
            .field
            .join(value.field())
            .expect("mixed fields in matrix");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> ExactMatrix {
        let cols: Vec<Vector> = idx.iter().map(|&j| self.column(j)).collect();
        ExactMatrix::from_columns(self.rows, &cols).expect("consistent shape")
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            field: self.field,
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::Shape {
                expected: self.cols,
                found: other.rows,
            });
        }
        Field::join(self.field, other.field).ok_or(FieldError::MixedFields)?;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = &acc + &(a * other.get(k, j));
                    }
                }
                entries.push(acc);
            }
        }
        ExactMatrix::new(self.rows, other.cols, entries)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Scalar::zero(), |acc, (a, x)| &acc + &(a * x))
            })
            .collect()
    }

    /// Reduced row echelon form by exact Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.entries[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rj);
                    m.entries[i * m.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank over the field, by sparse incremental echelon insertion.
    pub fn rank(&self) -> usize {
        let mut echelon = SparseEchelon::new();
        for i in 0..self.rows {
            let row: Vec<(usize, Scalar)> = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            echelon.insert(row);
        }
        echelon.rank()
    }

    /// Basis of the right kernel in reduced echelon parameter form: one vector
    /// per free column, carrying a 1 there and zeros at the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug_entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, bi) in b.iter().enumerate() {
            aug_entries.extend_from_slice(self.row(i));
            aug_entries.push(bi.clone());
        }
        let aug = ExactMatrix::new(self.rows, self.cols + 1, aug_entries).ok()?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().unwrap();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.entries[i * n + j] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            aug.extend_from_slice(self.row(i));
            aug.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
        }
        let Rref { matrix, pivots } = ExactMatrix::new(n, 2 * n, aug).ok()?.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let entries = (0..n)
            .flat_map(|i| (n..2 * n).map(move |j| (i, j)))
            .map(|(i, j)| matrix.get(i, j).clone())
            .collect();
        ExactMatrix::new(n, n, entries).ok()
    }

    /// Entry-wise Galois conjugate.
    pub fn conjugate(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Scalar::conjugate).collect(),
            field: self.field,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.row_vectors())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.row_vectors().serialize(serializer)
    }
}

/// Incremental row echelon form over sparse rows, used where only the rank
/// (or span membership) is needed. Pivot rows are normalized to leading 1.
#[derive(Default)]
pub struct SparseEchelon {
    pivots: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots and keeps the remainder as a
    /// new pivot row. Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<(usize, Scalar)>) -> bool {
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = axpy(&row, &coeff, pivot),
                None => {
                    let inv = coeff.inverse().unwrap();
                    for (_, v) in row.iter_mut() {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

/// `row - coeff * pivot` on sorted sparse rows.
fn axpy(
    row: &[(usize, Scalar)],
    coeff: &Scalar,
    pivot: &[(usize, Scalar)],
) -> Vec<(usize, Scalar)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(coeff * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(coeff * &pivot[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Rank of a list of equal-length vectors.
pub fn vectors_rank(vs: &[Vector]) -> usize {
    let mut e = SparseEchelon::new();
    for v in vs {
        e.insert(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect(),
        );
    }
    e.rank()
}
