//! Moment-angle data from a marked fan: padding of the markings to generate
//! the lattice group with an even-dimensional kernel, the map `Λ`, the
//! complex subspace `h` encoded by a paired real basis of `Ker Λ`, and the
//! checks that `(K, h)` is an admissible pair whose quotient fan recovers
//! the input.

use serde::Serialize;

use crate::equivalence::{marked_fan_isomorphic, verify_isomorphism, FanIsomorphism};
use crate::exactfield::{vectors_rank, zmodule_equal, ExactMatrix, Scalar, Vector};
use crate::fan::{
    checks, is_rational_kernel, validate_marked_fan, FanError, MarkedFan, ValidateOptions,
    ValidationReport,
};
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("kernel has odd dimension {0}; cannot pair into a complex subspace")]
    OddKernel(usize),
    #[error("malformed pairing: {0}")]
    Pairing(String),
    #[error("{stage} failed: {witness}")]
    Stage {
        stage: &'static str,
        witness: String,
    },
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Extra lattice elements appended to the markings: the shortest prefix of
/// the lattice generators completing generation of the lattice group, then
/// one more copy of the first generator if `m - n` is odd.
pub fn pad_generators(fan: &MarkedFan) -> Vec<Vector> {
    let n = fan.dim();
    let gens = fan.lattice_generators();
    let mut pool: Vec<Vector> = fan.markings().to_vec();
    let mut padding = Vec::new();
    for g in gens {
        if zmodule_equal(n, &pool, gens) {
            break;
        }
        pool.push(g.clone());
        padding.push(g.clone());
    }
    if (fan.m() + padding.len() - n) % 2 == 1 {
        padding.push(
            gens.first()
                .cloned()
                .unwrap_or_else(|| vec![Scalar::zero(); n]),
        );
    }
    padding
}

/// `n x m` matrix with columns the markings followed by the padding.
pub fn lambda_map(fan: &MarkedFan, padding: &[Vector]) -> ExactMatrix {
    let mut cols = fan.markings().to_vec();
    cols.extend_from_slice(padding);
    ExactMatrix::from_columns(fan.dim(), &cols).expect("vectors of the fan's dimension")
}

/// Pairs consecutive kernel vectors `(u_1,u_2), (u_3,u_4), ...`; pair `j`
/// encodes the complex line spanned by `u_{2j-1} - i u_{2j}`.
pub fn complex_structure_subspace(kernel: &[Vector]) -> Result<Vec<(usize, usize)>, RealizeError> {
    if kernel.len() % 2 == 1 {
        return Err(RealizeError::OddKernel(kernel.len()));
    }
    Ok((0..kernel.len() / 2).map(|j| (2 * j, 2 * j + 1)).collect())
}

/// Rows spanning the annihilator of `span(vectors)` in `Q^m`: a matrix `q`
/// with `Ker q = span(vectors)`.
pub fn annihilator(vectors: &[Vector], m: usize) -> ExactMatrix {
    let basis = if vectors.is_empty() {
        ExactMatrix::identity(m).row_vectors()
    } else {
        ExactMatrix::from_rows(vectors)
            .expect("kernel vectors share a field")
            .kernel_basis()
    };
    if basis.is_empty() {
        ExactMatrix::zeros(0, m)
    } else {
        ExactMatrix::from_rows(&basis).expect("kernel vectors share a field")
    }
}

/// A complex `K` on `m` vertices with a complex subspace `h` of `C^m`,
/// given by real vectors and a pairing.
#[derive(Clone, Debug)]
pub struct C2Object {
    pub complex: SimplicialComplex,
    pub kernel: Vec<Vector>,
    pub pairing: Vec<(usize, usize)>,
}

impl C2Object {
    pub fn m(&self) -> usize {
        self.complex.m()
    }

    /// Real parts `Re(h)`: every vector referenced by the pairing.
    pub fn real_parts(&self) -> Vec<Vector> {
        self.pairing
            .iter()
            .flat_map(|&(a, b)| [self.kernel[a].clone(), self.kernel[b].clone()])
            .collect()
    }

    /// Quotient by `Re(h)`.
    pub fn quotient_map(&self) -> ExactMatrix {
        annihilator(&self.real_parts(), self.m())
    }

    /// The marked fan `q(Σ_K)` in `Q^m / Re(h)`: markings `q(e_i)` and
    /// lattice group `q(Z^m)`.
    pub fn induced_fan(&self) -> Result<MarkedFan, FanError> {
        let q = self.quotient_map();
        let cols = q.columns();
        MarkedFan::new(q.rows(), self.complex.clone(), cols.clone(), cols)
    }

    fn check_pairing(&self) -> Result<(), RealizeError> {
        let mut seen = vec![false; self.kernel.len()];
        for &(a, b) in &self.pairing {
            for i in [a, b] {
                if i >= seen.len() || seen[i] {
                    return Err(RealizeError::Pairing(format!(
                        "index {} is out of range or repeated",
                        i + 1
                    )));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(RealizeError::Pairing(format!(
                "kernel vector {} is unpaired",
                i + 1
            )));
        }
        if let Some(v) = self.kernel.iter().find(|v| v.len() != self.m()) {
            return Err(RealizeError::Pairing(format!(
                "vector of length {} in C^{}",
                v.len(),
                self.m()
            )));
        }
        Ok(())
    }
}

pub mod c2_checks {
    pub const RE_INJECTIVE: &str = "re_injective";
    pub const IMAGE_FAN_COMPLETE: &str = "image_fan_complete";
    pub const CONE_BIJECTION: &str = "cone_bijection";
    pub const RE_IMAGE_IS_KERNEL: &str = "re_image_is_kernel";
    pub const EVEN_CODIMENSION: &str = "even_codimension";
    pub const ROUND_TRIP: &str = "round_trip";
}

/// Checks that `Re` is injective on `h` and that the quotient by `Re(h)`
/// maps the cones of `K` bijectively onto a complete simplicial fan.
pub fn validate_c2_object(
    obj: &C2Object,
    opts: &ValidateOptions,
) -> Result<ValidationReport, RealizeError> {
    obj.check_pairing()?;
    let mut report = ValidationReport::default();
    let re = obj.real_parts();
    let rank = vectors_rank(&re);
    report.push(
        c2_checks::RE_INJECTIVE,
        (rank != re.len()).then(|| {
            format!(
                "Re(h) has dimension {rank}, h has real dimension {}",
                re.len()
            )
        }),
    );
    let fan = obj.induced_fan()?;
    let inner = validate_marked_fan(&fan, opts);
    report.push(
        c2_checks::IMAGE_FAN_COMPLETE,
        inner
            .failures()
            .first()
            .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())),
    );
    let bijective = [checks::FACET_INDEPENDENCE, checks::DISTINCT_RAYS]
        .iter()
        .find_map(|name| inner.get(name).filter(|c| !c.passed))
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
    report.push(c2_checks::CONE_BIJECTION, bijective);
    report.notes.extend(inner.notes);
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub m: usize,
    pub complex: SimplicialComplex,
    pub padding: Vec<Vector>,
    pub lambda: ExactMatrix,
    pub kernel: Vec<Vector>,
    pub pairing: Vec<(usize, usize)>,
    pub rational: bool,
    pub report: ValidationReport,
    /// Isomorphism from the induced marked fan back to the input.
    pub round_trip: FanIsomorphism,
}

impl Realization {
    pub fn c2_object(&self) -> C2Object {
        C2Object {
            complex: self.complex.clone(),
            kernel: self.kernel.clone(),
            pairing: self.pairing.clone(),
        }
    }

    pub fn induced_fan(&self) -> MarkedFan {
        self.c2_object()
            .induced_fan()
            .expect("validated realization")
    }
}

fn stage(stage: &'static str, report: &ValidationReport) -> Result<(), RealizeError> {
    match report.failures().first() {
        Some(c) => Err(RealizeError::Stage {
            stage,
            witness: format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()),
        }),
        None => Ok(()),
    }
}

pub fn realize_moment_angle(
    fan: &MarkedFan,
    opts: &ValidateOptions,
) -> Result<Realization, RealizeError> {
    stage("fan validation", &validate_marked_fan(fan, opts))?;
    let n = fan.dim();
    let padding = pad_generators(fan);
    let complex = fan.complex().add_ghost_vertices(padding.len());
    let m = complex.m();
    let lambda = lambda_map(fan, &padding);
    let kernel = lambda.kernel_basis();
    let pairing = complex_structure_subspace(&kernel)?;
    let obj = C2Object {
        complex: complex.clone(),
        kernel: kernel.clone(),
        pairing: pairing.clone(),
    };
    let mut report = validate_c2_object(&obj, opts)?;

    let mut all: Vec<Vector> = lambda.columns();
    all.truncate(m);
    let generates = zmodule_equal(n, &all, fan.lattice_generators());
    report.push(
        c2_checks::EVEN_CODIMENSION,
        (m < n || (m - n) % 2 == 1 || !generates).then(|| {
            format!(
                "m - n = {} - {n}; columns generate the lattice group: {generates}",
                m
            )
        }),
    );
    let in_kernel = kernel
        .iter()
        .all(|u| lambda.mul_vec(u).iter().all(Scalar::is_zero));
    let full = vectors_rank(&obj.real_parts()) + lambda.rank() == m;
    report.push(
        c2_checks::RE_IMAGE_IS_KERNEL,
        (!(in_kernel && full))
            .then(|| format!("Re(h) inside Ker Λ: {in_kernel}; dimensions match: {full}")),
    );
    stage("moment-angle data", &report)?;

    let induced = obj.induced_fan()?;
    let round_trip = marked_fan_isomorphic(&induced, fan).ok_or(RealizeError::Stage {
        stage: "round trip",
        witness: "induced marked fan is not isomorphic to the input".into(),
    })?;
    let verified = verify_isomorphism(&induced, fan, &round_trip);
    report.push(c2_checks::ROUND_TRIP, verified.err());
    stage("round trip", &report)?;

    Ok(Realization {
        m,
        complex,
        padding,
        rational: is_rational_kernel(&lambda),
        lambda,
        kernel,
        pairing,
        report,
        round_trip,
    })
}

/// The real quotient `q = (e_i -> a_i)` and a basis of `h' = Ker q`, with
/// the rationality of `h'`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientData {
    pub q: ExactMatrix,
    pub h_prime: Vec<Vector>,
    pub rational: bool,
    pub note: String,
}

pub fn real_quotient_data(fan: &MarkedFan) -> QuotientData {
    let q = fan.marking_matrix();
    let h_prime = q.kernel_basis();
    let rational = is_rational_kernel(&q);
    let note = if h_prime.is_empty() {
        "h' = 0: the canonical foliation is by points".to_string()
    } else if rational {
        "h' is rational: the canonical foliation is a Seifert fibration over the toric orbifold of the fan".to_string()
    } else {
        "h' is not rational: the canonical foliation has non-closed leaves".to_string()
    };
    QuotientData {
        q,
        h_prime,
        rational,
        note,
    }
}
