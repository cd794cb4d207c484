//! Complete simplicial marked fans: the data, validation of the fan axioms
//! and completeness, ray location, and rationality detection.

mod fm;
mod validate;

pub use fm::nonnegative_solution_exists;
pub use validate::{checks, validate_marked_fan, Check, Mode, ValidateOptions, ValidationReport};

use crate::exactfield::{vectors_rank, ExactMatrix, Field, FieldError, Scalar, Vector, ZModule};
use crate::simplicial::{SimplicialComplex, SimplicialError, VertexMap, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("expected {expected} markings (one per vertex), found {found}")]
    MarkingCount { expected: usize, found: usize },
    #[error("{what} {index} has length {found}, expected dimension {expected}")]
    VectorLength {
        what: &'static str,
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Complex(#[from] SimplicialError),
}

/// A marked fan over Q or Q(sqrt d): an ambient dimension `n`, the
/// underlying complex `K` on `m` vertices, one marking per vertex (for ghost
/// vertices an arbitrary lattice element) and generators of the lattice
/// group. Structural consistency is enforced on construction; the fan axioms
/// are checked by [`validate_marked_fan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedFan {
    dim: usize,
    complex: SimplicialComplex,
    markings: Vec<Vector>,
    lattice_generators: Vec<Vector>,
    field: Field,
}

/// A facet whose cone contains a located direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeHit {
    pub facet: usize,
    pub interior: bool,
}

impl MarkedFan {
    pub fn new(
        dim: usize,
        complex: SimplicialComplex,
        markings: Vec<Vector>,
        lattice_generators: Vec<Vector>,
    ) -> Result<Self, FanError> {
        if markings.len() != complex.m() {
            return Err(FanError::MarkingCount {
                expected: complex.m(),
                found: markings.len(),
            });
        }
        for (what, list) in [
            ("marking", &markings),
            ("lattice generator", &lattice_generators),
        ] {
            if let Some((index, v)) = list.iter().enumerate().find(|(_, v)| v.len() != dim) {
                return Err(FanError::VectorLength {
                    what,
                    index,
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        let field = Field::join_all(
            markings
                .iter()
                .chain(&lattice_generators)
                .flatten()
                .map(Scalar::field),
        )
        .ok_or(FieldError::MixedFields)?;
        Ok(MarkedFan {
            dim,
            complex,
            markings,
            lattice_generators,
            field,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn m(&self) -> usize {
        self.complex.m()
    }

    pub fn markings(&self) -> &[Vector] {
        &self.markings
    }

    pub fn marking(&self, i: usize) -> &Vector {
        &self.markings[i]
    }

    pub fn lattice_generators(&self) -> &[Vector] {
        &self.lattice_generators
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Markings of the non-ghost vertices, in vertex order.
    pub fn ray_markings(&self) -> Vec<Vector> {
        self.complex
            .vertices()
            .into_iter()
            .map(|v| self.markings[v].clone())
            .collect()
    }

    /// `n x m` matrix whose column `i` is the marking of vertex `i`, with
    /// ghost columns zeroed.
    pub fn ray_matrix(&self) -> ExactMatrix {
        let zero = vec![Scalar::zero(); self.dim];
        let cols: Vec<Vector> = (0..self.m())
            .map(|i| {
                if self.complex.is_ghost(i) {
                    zero.clone()
                } else {
                    self.markings[i].clone()
                }
            })
            .collect();
        ExactMatrix::from_columns(self.dim, &cols).expect("validated shape")
    }

    /// `n x m` matrix of all markings, ghost slots included: the map
    /// `e_i -> a_i`.
    pub fn marking_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.dim, &self.markings).expect("validated shape")
    }

    pub fn facet_matrix(&self, facet: &VertexSet) -> ExactMatrix {
        let cols: Vec<Vector> = facet.iter().map(|v| self.markings[v].clone()).collect();
        ExactMatrix::from_columns(self.dim, &cols).expect("validated shape")
    }

    /// The lattice group as a Z-module in the fan's field.
    pub fn lattice(&self) -> ZModule {
        ZModule::new(self.dim, &self.lattice_generators, self.field)
            .expect("generators lie in the fan's field")
    }

    /// Applies the linear map `phi` (an `n' x n` matrix) to every marking
    /// and lattice generator.
    pub fn transform(&self, phi: &ExactMatrix) -> Result<MarkedFan, FanError> {
        assert_eq!(phi.cols(), self.dim, "transform dimension mismatch");
        MarkedFan::new(
            phi.rows(),
            self.complex.clone(),
            self.markings.iter().map(|a| phi.mul_vec(a)).collect(),
            self.lattice_generators
                .iter()
                .map(|g| phi.mul_vec(g))
                .collect(),
        )
    }

    /// Renames vertex `v` to `sigma[v]` (a permutation of `0..m`).
    pub fn relabel(&self, sigma: &[usize]) -> Result<MarkedFan, FanError> {
        let m = self.m();
        let map: VertexMap = sigma.iter().map(|&s| Some(s)).collect();
        let complex = self.complex.relabel(&map, m)?;
        let mut markings = vec![Vec::new(); m];
        for (v, &s) in sigma.iter().enumerate() {
            markings[s] = self.markings[v].clone();
        }
        MarkedFan::new(self.dim, complex, markings, self.lattice_generators.clone())
    }

    /// Appends `count` ghost vertices whose markings are the given lattice
    /// elements.
    pub fn with_ghosts(&self, extra: Vec<Vector>) -> Result<MarkedFan, FanError> {
        let complex = self.complex.add_ghost_vertices(extra.len());
        let mut markings = self.markings.clone();
        markings.extend(extra);
        MarkedFan::new(self.dim, complex, markings, self.lattice_generators.clone())
    }

    /// Facets whose cone contains `direction`, with an interior flag when
    /// every coefficient is strictly positive. Facets with dependent
    /// markings never report a hit.
    pub fn ray_locate(&self, direction: &[Scalar]) -> Vec<ConeHit> {
        assert_eq!(direction.len(), self.dim, "direction length mismatch");
        self.complex
            .facets()
            .iter()
            .enumerate()
            .filter_map(|(idx, facet)| {
                let a = self.facet_matrix(facet);
                if a.rank() != facet.len() {
                    return None;
                }
                let c = a.solve(direction)?;
                if c.iter().any(Scalar::is_negative) {
                    return None;
                }
                Some(ConeHit {
                    facet: idx,
                    interior: c.iter().all(Scalar::is_positive),
                })
            })
            .collect()
    }

    /// Whether the kernel of `e_i -> a_i` (all markings) is spanned by
    /// rational vectors, decided by comparing the kernel with its Galois
    /// conjugate.
    pub fn is_rational(&self) -> bool {
        is_rational_kernel(&self.marking_matrix())
    }
}

/// True iff `Ker lambda` admits a basis of rational vectors.
pub fn is_rational_kernel(lambda: &ExactMatrix) -> bool {
    if lambda.field() == Field::Rational {
        return true;
    }
    let kernel = lambda.kernel_basis();
    let mut both: Vec<Vector> = kernel.clone();
    both.extend(
        kernel
            .iter()
            .map(|v| v.iter().map(Scalar::conjugate).collect()),
    );
    vectors_rank(&both) == kernel.len()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn vecs(rows: &[&[&str]]) -> Vec<Vector> {
        rows.iter()
            .map(|r| r.iter().map(|x| x.parse().unwrap()).collect())
            .collect()
    }

    pub fn cp2() -> MarkedFan {
        let k = SimplicialComplex::from_facets(3, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap();
        MarkedFan::new(
            2,
            k,
            vecs(&[&["1", "0"], &["0", "1"], &["-1", "-1"]]),
            vecs(&[&["1", "0"], &["0", "1"]]),
        )
        .unwrap()
    }

    pub fn sqrt2_square() -> MarkedFan {
        let k = SimplicialComplex::from_facets(4, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]).unwrap();
        MarkedFan::new(
            2,
            k,
            vecs(&[&["1", "0"], &["0", "1"], &["-1", "0"], &["0", "-sqrt(2)"]]),
            vecs(&[&["1", "0"], &["0", "1"], &["0", "sqrt(2)"]]),
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn construction_errors() {
        let k = SimplicialComplex::from_facets(3, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap();
        assert!(matches!(
            MarkedFan::new(2, k.clone(), vecs(&[&["1", "0"]]), vec![]),
            Err(FanError::MarkingCount { .. })
        ));
        assert!(matches!(
            MarkedFan::new(
                2,
                k.clone(),
                vecs(&[&["1", "0"], &["0", "1"], &["1"]]),
                vec![]
            ),
            Err(FanError::VectorLength { .. })
        ));
        assert!(matches!(
            MarkedFan::new(
                2,
                k,
                vecs(&[&["sqrt(2)", "0"], &["0", "sqrt(3)"], &["1", "1"]]),
                vec![]
            ),
            Err(FanError::Field(FieldError::MixedFields))
        ));
    }

    #[test]
    fn ray_locate_examples() {
        let f = cp2();
        // facets sorted: {0,1}, {0,2}, {1,2}
        assert_eq!(
            f.ray_locate(&v(&[2, 1])),
            vec![ConeHit {
                facet: 0,
                interior: true
            }]
        );
        let hits = f.ray_locate(&v(&[1, 0]));
        assert_eq!(hits.iter().map(|h| h.facet).collect::<Vec<_>>(), vec![0, 1]);
        assert!(hits.iter().all(|h| !h.interior));
        // (-1,-2) = 1*(1,0) + 2*(-1,-1): interior of the cone on rays 1 and 3.
        assert_eq!(
            f.ray_locate(&v(&[-1, -2])),
            vec![ConeHit {
                facet: 1,
                interior: true
            }]
        );
    }

    #[test]
    fn rationality() {
        assert!(cp2().is_rational());
        assert!(!sqrt2_square().is_rational());
        // A fan over Q(sqrt 2) whose kernel is nonetheless rational.
        let k = SimplicialComplex::from_facets(4, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]).unwrap();
        let f = MarkedFan::new(
            2,
            k,
            vecs(&[
                &["1", "0"],
                &["0", "sqrt(2)"],
                &["-1", "0"],
                &["0", "-sqrt(2)"],
            ]),
            vecs(&[&["1", "0"], &["0", "sqrt(2)"]]),
        )
        .unwrap();
        assert!(f.is_rational());
    }

    #[test]
    fn transform_and_relabel() {
        let swap = ExactMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
        let f = cp2().transform(&swap).unwrap();
        assert_eq!(f.marking(0), &v(&[0, 1]));
        let g = cp2().relabel(&[1, 0, 2]).unwrap();
        assert_eq!(g.marking(1), &v(&[1, 0]));
        assert_eq!(g.complex(), cp2().complex());
    }
}
