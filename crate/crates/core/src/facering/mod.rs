//! The face ring `R[K] = Q[v_1..v_m]/I_K`, the linear ideal `J` of a marked
//! fan, and the graded quotient `R[v]/(I_K + J)` whose Hilbert function gives
//! the basic Betti numbers. Internally each `v_i` has degree 1; reported
//! degrees are doubled.

mod groebner;
mod koszul;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use groebner::{groebner_basis, normal_form};
pub use koszul::{
    graded_dimension_oracle, koszul_homology, koszul_table, oracle_hilbert, FaceMonomials,
    KoszulReport,
};
pub use poly::{Monomial, Polynomial};

use crate::exactfield::ExactMatrix;
use crate::fan::{validate_marked_fan, MarkedFan, ValidateOptions};
use crate::simplicial::{SimplicialComplex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FaceRingError {
    #[error("fan validation failed at {check}: {witness}")]
    Invalid { check: String, witness: String },
    #[error("marking matrix has rank {rank}, expected {n}")]
    DependentForms { rank: usize, n: usize },
    #[error("markings of facet {facet} are linearly dependent; not a linear system of parameters")]
    NotLsop { facet: VertexSet },
    #[error("quotient has dimension {dim} in internal degree {degree}; expected an Artinian quotient of top degree {n}")]
    NotArtinian { degree: usize, dim: usize, n: usize },
}

/// Generators `v_I` of the Stanley-Reisner ideal, one per minimal non-face
/// (ghost vertices contribute `v_i`).
pub fn stanley_reisner_ideal(k: &SimplicialComplex) -> Vec<Monomial> {
    k.minimal_nonfaces()
        .iter()
        .map(|s| Monomial::square_free(k.m(), s.iter()))
        .collect()
}

/// The `n` linear forms `theta_u = sum_i <u, a_i> v_i` for `u` the standard
/// dual basis, with ghost columns zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystemOfParameters {
    pub matrix: ExactMatrix,
    pub forms: Vec<Polynomial>,
}

impl LinearSystemOfParameters {
    pub fn from_matrix(matrix: ExactMatrix) -> Result<Self, FaceRingError> {
        let n = matrix.rows();
        let rank = matrix.rank();
        if rank != n {
            return Err(FaceRingError::DependentForms { rank, n });
        }
        let forms = matrix
            .row_vectors()
            .iter()
            .map(|r| Polynomial::linear(r))
            .collect();
        Ok(LinearSystemOfParameters { matrix, forms })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn m(&self) -> usize {
        self.matrix.cols()
    }
}

pub fn linear_ideal(fan: &MarkedFan) -> Result<LinearSystemOfParameters, FaceRingError> {
    LinearSystemOfParameters::from_matrix(fan.ray_matrix())
}

/// First facet of `k` whose markings are dependent.
pub fn lsop_violation(k: &SimplicialComplex, fan: &MarkedFan) -> Option<VertexSet> {
    k.facets()
        .iter()
        .find(|f| fan.facet_matrix(f).rank() != f.len())
        .cloned()
}

pub fn lsop_check(k: &SimplicialComplex, fan: &MarkedFan) -> bool {
    lsop_violation(k, fan).is_none()
}

/// `R[v]/(I_K + J)` with its reduced Gröbner basis and standard monomials.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    pub n: usize,
    pub m: usize,
    pub groebner: Vec<Polynomial>,
    /// Standard monomials by internal degree `0..=n`.
    pub std_monomials: Vec<Vec<Monomial>>,
    /// `hilbert[k] = |std_monomials[k]|`.
    pub hilbert: Vec<usize>,
}

impl GradedQuotient {
    pub fn new(
        k: &SimplicialComplex,
        lsop: &LinearSystemOfParameters,
    ) -> Result<Self, FaceRingError> {
        let (n, m) = (lsop.n(), k.m());
        let mut gens: Vec<Polynomial> = lsop.forms.clone();
        gens.extend(
            stanley_reisner_ideal(k)
                .into_iter()
                .map(Polynomial::monomial),
        );
        let groebner = groebner_basis(&gens);
        let leads: Vec<&Monomial> = groebner
            .iter()
            .filter_map(Polynomial::leading_monomial)
            .collect();
        let standard = |x: &Monomial| !leads.iter().any(|l| l.divides(x));

        let mut std_monomials: Vec<Vec<Monomial>> = vec![vec![Monomial::one(m)]
            .into_iter()
            .filter(standard)
            .collect()];
        for degree in 1..=n + 2 {
            let mut next = Vec::new();
            for x in &std_monomials[degree - 1] {
                for v in x.last_var().unwrap_or(0)..m {
                    let y = x.mul_var(v);
                    if standard(&y) {
                        next.push(y);
                    }
                }
            }
            next.sort_by(|a, b| b.cmp(a));
            std_monomials.push(next);
        }
        for degree in [n + 1, n + 2] {
            let dim = std_monomials[degree].len();
            if dim != 0 {
                return Err(FaceRingError::NotArtinian { degree, dim, n });
            }
        }
        std_monomials.truncate(n + 1);
        let hilbert = std_monomials.iter().map(Vec::len).collect();
        Ok(GradedQuotient {
            n,
            m,
            groebner,
            std_monomials,
            hilbert,
        })
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.groebner)
    }

    pub fn multiply(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        self.normal_form(&p.mul(q))
    }

    pub fn total_dimension(&self) -> usize {
        self.hilbert.iter().sum()
    }

    pub fn standard_basis(&self) -> impl Iterator<Item = &Monomial> {
        self.std_monomials.iter().flatten()
    }

    /// Normal forms of all products of pairs of standard monomials.
    pub fn cup_product_table(&self) -> CupTable {
        let basis: Vec<&Monomial> = self.standard_basis().collect();
        let mut entries = BTreeMap::new();
        for (i, x) in basis.iter().enumerate() {
            for y in &basis[i..] {
                let p = self.normal_form(&Polynomial::monomial(x.mul(y)));
                let key = if x <= y {
                    ((*x).clone(), (*y).clone())
                } else {
                    ((*y).clone(), (*x).clone())
                };
                entries.insert(key, p);
            }
        }
        CupTable { entries }
    }
}

/// Structure constants of the quotient ring on its standard monomial basis.
/// Keys are unordered pairs stored with the smaller monomial first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupTable {
    entries: BTreeMap<(Monomial, Monomial), Polynomial>,
}

impl CupTable {
    pub fn get(&self, x: &Monomial, y: &Monomial) -> Option<&Polynomial> {
        let key = if x <= y {
            (x.clone(), y.clone())
        } else {
            (y.clone(), x.clone())
        };
        self.entries.get(&key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Polynomial)> {
        self.entries.iter().map(|((x, y), p)| (x, y, p))
    }

    /// Rows `[x, y, x*y]` as strings, for reports.
    pub fn rows(&self) -> Vec<[String; 3]> {
        self.iter()
            .map(|(x, y, p)| [x.to_string(), y.to_string(), p.to_string()])
            .collect()
    }
}

/// Quotient ring of a marked fan, without validating the fan axioms.
pub fn face_ring_quotient(fan: &MarkedFan) -> Result<GradedQuotient, FaceRingError> {
    if let Some(facet) = lsop_violation(fan.complex(), fan) {
        return Err(FaceRingError::NotLsop { facet });
    }
    let lsop = linear_ideal(fan)?;
    GradedQuotient::new(fan.complex(), &lsop)
}

/// Validates `fan`, then returns the basic Betti numbers: entry `k` is the
/// dimension in cohomological degree `2k`.
pub fn basic_betti(fan: &MarkedFan) -> Result<Vec<usize>, FaceRingError> {
    basic_betti_with(fan, &ValidateOptions::default())
}

pub fn basic_betti_with(
    fan: &MarkedFan,
    opts: &ValidateOptions,
) -> Result<Vec<usize>, FaceRingError> {
    let report = validate_marked_fan(fan, opts);
    if let Some(c) = report.failures().first() {
        return Err(FaceRingError::Invalid {
            check: c.name.clone(),
            witness: c.witness.clone().unwrap_or_default(),
        });
    }
    Ok(face_ring_quotient(fan)?.hilbert)
}

/// Generators, relations and Betti numbers of the quotient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub generator_degree: usize,
    pub monomial_relations: Vec<String>,
    pub linear_relations: Vec<String>,
    /// Betti numbers in cohomological degrees `0, 2, 4, ...`.
    pub betti: Vec<usize>,
}

pub fn ring_presentation(fan: &MarkedFan) -> Result<Presentation, FaceRingError> {
    let quotient = face_ring_quotient(fan)?;
    let lsop = linear_ideal(fan)?;
    Ok(Presentation {
        generators: (1..=fan.m()).map(|i| format!("v{i}")).collect(),
        generator_degree: 2,
        monomial_relations: stanley_reisner_ideal(fan.complex())
            .iter()
            .map(|x| x.to_string())
            .collect(),
        linear_relations: lsop.forms.iter().map(|p| p.to_string()).collect(),
        betti: quotient.hilbert,
    })
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            ("generators", self.generators.join(", ")),
            ("degree", self.generator_degree.to_string()),
            ("monomial", self.monomial_relations.join(", ")),
            ("linear", self.linear_relations.join(", ")),
            ("betti", betti_string(&self.betti)),
        ];
        for (name, value) in rows {
            writeln!(f, "{name:<11} {value}")?;
        }
        Ok(())
    }
}

/// `b^0=1 b^2=1 b^4=1`.
pub fn betti_string(betti: &[usize]) -> String {
    betti
        .iter()
        .enumerate()
        .map(|(k, b)| format!("b^{}={b}", 2 * k))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Execution;
    use crate::fan::tests::{cp2, vecs};
    use crate::simplicial::tests::{octahedron, square};

    pub fn square_fan() -> MarkedFan {
        MarkedFan::new(
            2,
            square(),
            vecs(&[&["1", "0"], &["0", "1"], &["-1", "0"], &["0", "-1"]]),
            vecs(&[&["1", "0"], &["0", "1"]]),
        )
        .unwrap()
    }

    fn ghost2() -> MarkedFan {
        let k = SimplicialComplex::with_declared_ghosts(2, &[], &[0, 1]).unwrap();
        MarkedFan::new(0, k, vec![vec![], vec![]], vec![]).unwrap()
    }

    fn octahedron_fan() -> MarkedFan {
        MarkedFan::new(
            3,
            octahedron(),
            vecs(&[
                &["1", "0", "0"],
                &["0", "1", "0"],
                &["0", "0", "1"],
                &["-1", "0", "0"],
                &["0", "-1", "0"],
                &["0", "0", "-1"],
            ]),
            vecs(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]),
        )
        .unwrap()
    }

    fn strs<T: ToString>(xs: &[T]) -> Vec<String> {
        xs.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn stanley_reisner_examples() {
        assert_eq!(strs(&stanley_reisner_ideal(&square())), ["v1*v3", "v2*v4"]);
        assert_eq!(strs(&stanley_reisner_ideal(cp2().complex())), ["v1*v2*v3"]);
        assert_eq!(
            strs(&stanley_reisner_ideal(ghost2().complex())),
            ["v1", "v2"]
        );
    }

    #[test]
    fn linear_ideal_examples() {
        assert_eq!(
            strs(&linear_ideal(&cp2()).unwrap().forms),
            ["v1 - v3", "v2 - v3"]
        );
        assert_eq!(
            strs(&linear_ideal(&square_fan()).unwrap().forms),
            ["v1 - v3", "v2 - v4"]
        );
        assert!(linear_ideal(&ghost2()).unwrap().forms.is_empty());
    }

    #[test]
    fn lsop_examples() {
        assert!(lsop_check(cp2().complex(), &cp2()));
        assert!(lsop_check(ghost2().complex(), &ghost2()));
        let bad = MarkedFan::new(
            2,
            cp2().complex().clone(),
            vecs(&[&["1", "0"], &["1", "0"], &["-1", "-1"]]),
            vecs(&[&["1", "0"], &["0", "1"]]),
        )
        .unwrap();
        assert_eq!(
            lsop_violation(bad.complex(), &bad),
            Some(VertexSet::from_slice(&[0, 1]))
        );
    }

    #[test]
    fn betti_examples() {
        assert_eq!(basic_betti(&cp2()).unwrap(), [1, 1, 1]);
        assert_eq!(basic_betti(&square_fan()).unwrap(), [1, 2, 1]);
        assert_eq!(basic_betti(&ghost2()).unwrap(), [1]);
        assert_eq!(basic_betti(&octahedron_fan()).unwrap(), [1, 3, 3, 1]);
    }

    #[test]
    fn oracle_examples() {
        let f = cp2();
        let l = linear_ideal(&f).unwrap();
        assert_eq!(graded_dimension_oracle(f.complex(), &l, 0), 1);
        assert_eq!(graded_dimension_oracle(f.complex(), &l, 1), 1);
        let s = square_fan();
        assert_eq!(
            graded_dimension_oracle(s.complex(), &linear_ideal(&s).unwrap(), 1),
            2
        );
        for k in 0..=4 {
            assert_eq!(koszul_homology(f.complex(), &l, 1, k), 0);
        }
        assert_eq!(koszul_homology(f.complex(), &l, 0, 1), 1);
        assert_eq!(koszul_homology(f.complex(), &l, 0, 0), 1);
    }

    #[test]
    fn koszul_table_octahedron() {
        let f = octahedron_fan();
        let l = linear_ideal(&f).unwrap();
        for execution in [Execution::Sequential, Execution::Parallel] {
            let t = koszul_table(f.complex(), &l, 4, execution);
            assert_eq!(t.entries[0], [1, 3, 3, 1, 0]);
            assert!(t.higher_nonzero().is_empty());
        }
        assert_eq!(
            oracle_hilbert(f.complex(), &l, 4, Execution::Sequential),
            [1, 3, 3, 1, 0]
        );
    }

    #[test]
    fn koszul_detects_non_regular_forms() {
        // A single form v1 on the face ring of two isolated points is a zero
        // divisor (v1 * v2 = 0), so H_1 is nonzero in degree 2.
        let k = SimplicialComplex::from_facets(2, &[&[0], &[1]]).unwrap();
        let l =
            LinearSystemOfParameters::from_matrix(ExactMatrix::from_ints(1, 2, &[1, 0])).unwrap();
        assert_eq!(koszul_homology(&k, &l, 1, 1), 0);
        assert_eq!(koszul_homology(&k, &l, 1, 2), 1);
    }

    #[test]
    fn cup_products() {
        let q = face_ring_quotient(&cp2()).unwrap();
        let v3 = Monomial::var(3, 2);
        let v3sq = v3.mul(&v3);
        let t = q.cup_product_table();
        assert_eq!(t.get(&v3, &v3).unwrap().to_string(), "v3^2");
        assert!(t.get(&v3, &v3sq).unwrap().is_zero());
        let one = Monomial::one(3);
        for x in q.standard_basis() {
            assert_eq!(t.get(&one, x).unwrap(), &Polynomial::monomial(x.clone()));
        }

        let q = face_ring_quotient(&square_fan()).unwrap();
        let (v3, v4) = (Monomial::var(4, 2), Monomial::var(4, 3));
        let t = q.cup_product_table();
        assert_eq!(t.get(&v3, &v4).unwrap().to_string(), "v3*v4");
        assert!(t.get(&v3, &v3).unwrap().is_zero());
    }

    #[test]
    fn cup_product_associative() {
        let q = face_ring_quotient(&octahedron_fan()).unwrap();
        let basis: Vec<Polynomial> = q
            .standard_basis()
            .cloned()
            .map(Polynomial::monomial)
            .collect();
        for x in &basis {
            for y in &basis {
                assert_eq!(q.multiply(x, y), q.multiply(y, x));
                for z in &basis {
                    assert_eq!(
                        q.multiply(&q.multiply(x, y), z),
                        q.multiply(x, &q.multiply(y, z))
                    );
                }
            }
        }
    }

    #[test]
    fn presentations() {
        let p = ring_presentation(&cp2()).unwrap();
        assert_eq!(p.generators, ["v1", "v2", "v3"]);
        assert_eq!(p.monomial_relations, ["v1*v2*v3"]);
        assert_eq!(p.linear_relations, ["v1 - v3", "v2 - v3"]);
        assert_eq!(p.betti, [1, 1, 1]);
        assert!(p.to_string().contains("b^0=1 b^2=1 b^4=1"));
        let g = ring_presentation(&ghost2()).unwrap();
        assert_eq!(g.monomial_relations, ["v1", "v2"]);
        assert_eq!(g.betti, [1]);
        let s = ring_presentation(&square_fan()).unwrap();
        assert_eq!(
            (
                s.generators.len(),
                s.monomial_relations.len(),
                s.linear_relations.len()
            ),
            (4, 2, 2)
        );
    }

    #[test]
    fn hilbert_matches_h_vector() {
        for f in [cp2(), square_fan(), octahedron_fan(), ghost2()] {
            let q = face_ring_quotient(&f).unwrap();
            let h: Vec<usize> = f
                .complex()
                .h_vector(f.dim())
                .unwrap()
                .iter()
                .map(|&x| x as usize)
                .collect();
            assert_eq!(q.hilbert, h);
        }
    }
}
