//! Exact feasibility of `{x >= 0 : A x = b}` by Gaussian elimination of the
//! equalities followed by Fourier-Motzkin elimination of the free variables.

use std::collections::HashSet;

use crate::exactfield::{ExactMatrix, Scalar};

/// `coeffs . t + constant >= 0` over the free variables `t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Inequality {
    coeffs: Vec<Scalar>,
    constant: Scalar,
}

impl Inequality {
    /// Scales so the first nonzero coefficient (or constant) has absolute
    /// value 1; makes duplicate detection effective.
    fn normalized(mut self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .or(Some(&self.constant).filter(|c| !c.is_zero()))
            .cloned();
        if let Some(lead) = lead {
            let inv = lead.abs().inverse().unwrap();
            for c in self.coeffs.iter_mut() {
                *c = &*c * &inv;
            }
            self.constant = &self.constant * &inv;
        }
        self
    }
}

pub fn nonnegative_solution_exists(a: &ExactMatrix, b: &[Scalar]) -> bool {
    let rows = a.rows();
    let cols = a.cols();
    let mut aug = Vec::with_capacity(rows * (cols + 1));
    for (i, bi) in b.iter().enumerate().take(rows) {
        aug.extend_from_slice(a.row(i));
        aug.push(bi.clone());
    }
    let rref = ExactMatrix::new(rows, cols + 1, aug)
        .expect("consistent field")
        .rref();
    if rref.pivots.last() == Some(&cols) {
        return false;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !rref.pivots.contains(c)).collect();
    let mut ineqs: Vec<Inequality> = Vec::new();
    // Pivot variable r: rhs_r - sum_f R[r][f] t_f >= 0.
    for (r, _) in rref.pivots.iter().enumerate() {
        ineqs.push(Inequality {
            coeffs: free.iter().map(|&f| -rref.matrix.get(r, f)).collect(),
            constant: rref.matrix.get(r, cols).clone(),
        });
    }
    // Free variables themselves are nonnegative.
    for k in 0..free.len() {
        let mut coeffs = vec![Scalar::zero(); free.len()];
        coeffs[k] = Scalar::one();
        ineqs.push(Inequality {
            coeffs,
            constant: Scalar::zero(),
        });
    }
    for var in 0..free.len() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in ineqs {
            match q.coeffs[var].signum() {
                1 => pos.push(q),
                -1 => neg.push(q),
                _ => rest.push(q),
            }
        }
        let mut seen: HashSet<Inequality> = rest.iter().cloned().collect();
        for p in &pos {
            for n in &neg {
                // p/p_v + n/(-n_v) eliminates the variable.
                let pi = p.coeffs[var].inverse().unwrap();
                let ni = (-&n.coeffs[var]).inverse().unwrap();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(x, y)| &(x * &pi) + &(y * &ni))
                    .collect();
                let constant = &(&p.constant * &pi) + &(&n.constant * &ni);
                let combined = Inequality { coeffs, constant }.normalized();
                if seen.insert(combined.clone()) {
                    rest.push(combined);
                }
            }
        }
        ineqs = rest;
    }
    ineqs.iter().all(|q| !q.constant.is_negative())
}
