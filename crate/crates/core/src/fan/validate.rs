use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{nonnegative_solution_exists, MarkedFan};
use crate::exactfield::{vectors_rank, ExactMatrix, Scalar, Vector};
use crate::exec::{self, Execution};
use crate::simplicial::VertexSet;

/// Names of the individual checks, in the order they are run.
pub mod checks {
    pub const FACET_INDEPENDENCE: &str = "facet_independence";
    pub const PURE_DIMENSION: &str = "pure_dimension";
    pub const PSEUDOMANIFOLD_WALLS: &str = "pseudomanifold_walls";
    pub const WALL_SEPARATION: &str = "wall_separation";
    pub const FACET_CONNECTIVITY: &str = "facet_connectivity";
    pub const COVER_ORACLE: &str = "cover_oracle";
    pub const PAIRWISE_INTERSECTION: &str = "pairwise_intersection";
    pub const MARKING_RANK: &str = "marking_rank";
    pub const DISTINCT_RAYS: &str = "distinct_rays";
    pub const LATTICE_MEMBERSHIP: &str = "lattice_membership";
    pub const LATTICE_SPANS: &str = "lattice_spans";
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Fast,
    Exact,
}

#[derive(Clone, Copy, Debug)]
pub struct ValidateOptions {
    pub mode: Mode,
    pub seed: u64,
    /// Number of generic sample directions for the cover oracle.
    pub samples: usize,
    pub execution: Execution,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            mode: Mode::Fast,
            seed: 0,
            samples: 200,
            execution: Execution::default(),
        }
    }
}

impl ValidateOptions {
    pub fn with_seed(seed: u64) -> Self {
        ValidateOptions {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Informational findings that do not fail validation.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn check_passed(&self, name: &str) -> Option<bool> {
        self.get(name).map(|c| c.passed)
    }
}

fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Runs every check on `fan` and records the outcomes. Structural errors
/// (dimension mismatches) are impossible here since [`MarkedFan::new`]
/// rejects them.
pub fn validate_marked_fan(fan: &MarkedFan, opts: &ValidateOptions) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = fan.dim();
    let facets = fan.complex().facets();
    let facet_mats: Vec<ExactMatrix> = facets.iter().map(|f| fan.facet_matrix(f)).collect();
    let independent: Vec<bool> = exec::map(opts.execution, &facet_mats, |a| a.rank() == a.cols());

    report.push(
        checks::FACET_INDEPENDENCE,
        facets
            .iter()
            .zip(&independent)
            .find(|(_, ok)| !**ok)
            .map(|(f, _)| format!("markings of facet {f} are linearly dependent")),
    );

    report.push(
        checks::PURE_DIMENSION,
        facets
            .iter()
            .find(|f| f.len() != n)
            .map(|f| format!("facet {f} has {} vertices, expected {n}", f.len())),
    );

    let walls = wall_table(facets, n);
    report.push(
        checks::PSEUDOMANIFOLD_WALLS,
        walls
            .iter()
            .find(|(_, owners)| owners.len() != 2)
            .map(|(w, owners)| {
                let count = owners.len();
                format!(
                    "wall {w} lies in {count} facet{}",
                    if count == 1 { "" } else { "s" }
                )
            }),
    );

    report.push(
        checks::WALL_SEPARATION,
        wall_separation(fan, &walls, opts.execution),
    );
    report.push(checks::FACET_CONNECTIVITY, connectivity(fan));
    report.push(
        checks::COVER_ORACLE,
        cover_oracle(fan, &facet_mats, &independent, opts),
    );
    if opts.mode == Mode::Exact {
        report.push(
            checks::PAIRWISE_INTERSECTION,
            pairwise_intersection(fan, opts.execution),
        );
    }

    let rays = fan.ray_markings();
    let rank = vectors_rank(&rays);
    report.push(
        checks::MARKING_RANK,
        (rank != n).then(|| {
            format!("ray markings span a {rank}-dimensional subspace of a {n}-dimensional space")
        }),
    );
    report.push(checks::DISTINCT_RAYS, proportional_pair(fan));

    let lattice = fan.lattice();
    report.push(
        checks::LATTICE_MEMBERSHIP,
        fan.markings()
            .iter()
            .enumerate()
            .find(|(_, a)| !lattice.contains(a))
            .map(|(i, a)| {
                format!(
                    "marking {} = {} is not in the lattice group",
                    i + 1,
                    fmt_vec(a)
                )
            }),
    );
    let span = vectors_rank(fan.lattice_generators());
    report.push(
        checks::LATTICE_SPANS,
        (span != n).then(|| format!("lattice generators span dimension {span}, expected {n}")),
    );

    for v in fan.complex().vertices() {
        let a = fan.marking(v);
        if lattice.contains(a) && !lattice.is_primitive(a) {
            report.notes.push(format!(
                "marking {} = {} is not primitive in the lattice group",
                v + 1,
                fmt_vec(a)
            ));
        }
    }
    report
}

/// Every (n-2)-face of a facet, with the facets containing it.
fn wall_table(facets: &[VertexSet], n: usize) -> Vec<(VertexSet, Vec<usize>)> {
    if n == 0 {
        return Vec::new();
    }
    let mut table: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for (idx, f) in facets.iter().enumerate() {
        if f.len() != n {
            continue;
        }
        for v in f.iter() {
            table.entry(f.without(v)).or_default().push(idx);
        }
    }
    let mut walls: Vec<_> = table.into_iter().collect();
    walls.sort();
    walls
}

/// For each wall shared by two facets, the opposite vertices must lie
/// strictly on opposite sides of the hyperplane spanned by the wall.
fn wall_separation(
    fan: &MarkedFan,
    walls: &[(VertexSet, Vec<usize>)],
    execution: Execution,
) -> Option<String> {
    let facets = fan.complex().facets();
    let shared: Vec<&(VertexSet, Vec<usize>)> =
        walls.iter().filter(|(_, o)| o.len() == 2).collect();
    let outcomes = exec::map(execution, &shared, |(wall, owners)| {
        let side = |facet: &VertexSet| {
            let apex = facet.iter().find(|v| !wall.contains(*v)).unwrap();
            let mut cols: Vec<Vector> = wall.iter().map(|v| fan.marking(v).clone()).collect();
            cols.push(fan.marking(apex).clone());
            (
                apex,
                ExactMatrix::from_columns(fan.dim(), &cols)
                    .unwrap()
                    .determinant()
                    .signum(),
            )
        };
        let (i, si) = side(&facets[owners[0]]);
        let (j, sj) = side(&facets[owners[1]]);
        (si * sj >= 0).then(|| {
            format!(
                "across wall {wall}, rays {} and {} are not strictly separated (signs {si}, {sj})",
                i + 1,
                j + 1
            )
        })
    });
    outcomes.into_iter().flatten().next()
}

fn connectivity(fan: &MarkedFan) -> Option<String> {
    let adj = fan.complex().facet_adjacency();
    let count = adj.len();
    let mut seen = vec![false; count];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    let reached = seen.iter().filter(|&&s| s).count();
    (reached != count).then(|| {
        let lost = seen.iter().position(|&s| !s).unwrap();
        format!(
            "facet adjacency graph is disconnected: {reached} of {count} facets reachable, {} is not",
            fan.complex().facets()[lost]
        )
    })
}

enum Sample {
    Generic,
    Boundary,
    Uncovered,
    Overlap(Vec<usize>),
}

/// Seeded random directions must each lie in the interior of exactly one
/// maximal cone. Directions on cone boundaries are redrawn.
fn cover_oracle(
    fan: &MarkedFan,
    facet_mats: &[ExactMatrix],
    independent: &[bool],
    opts: &ValidateOptions,
) -> Option<String> {
    let n = fan.dim();
    if n == 0 {
        return None;
    }
    let inverses: Vec<Option<ExactMatrix>> = facet_mats
        .iter()
        .zip(independent)
        .map(|(a, &ok)| {
            if ok && a.cols() == n {
                a.inverse()
            } else {
                None
            }
        })
        .collect();
    let classify = |dir: &Vector| -> Sample {
        let mut hits = Vec::new();
        let mut interior = 0;
        for (idx, inv) in inverses.iter().enumerate() {
            let Some(inv) = inv else { continue };
            let c = inv.mul_vec(dir);
            if c.iter().any(Scalar::is_negative) {
                continue;
            }
            if c.iter().all(Scalar::is_positive) {
                interior += 1;
            }
            hits.push(idx);
        }
        match (hits.len(), interior) {
            (0, _) => Sample::Uncovered,
            (1, 1) => Sample::Generic,
            (_, i) if i >= 1 => Sample::Overlap(hits),
            _ => Sample::Boundary,
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut generic = 0;
    let mut drawn = 0;
    let budget = 20 * opts.samples.max(1);
    while generic < opts.samples && drawn < budget {
        let batch: Vec<Vector> = (0..opts.samples - generic)
            .map(|_| loop {
                let d: Vec<i64> = (0..n).map(|_| rng.random_range(-10_000..=10_000)).collect();
                if d.iter().any(|&x| x != 0) {
                    break d.into_iter().map(Scalar::from_int).collect();
                }
            })
            .collect();
        drawn += batch.len();
        let outcomes = exec::map(opts.execution, &batch, classify);
        for (dir, outcome) in batch.iter().zip(outcomes) {
            match outcome {
                Sample::Generic => generic += 1,
                Sample::Boundary => {}
                Sample::Uncovered => {
                    return Some(format!(
                        "direction {} lies in no maximal cone",
                        fmt_vec(dir)
                    ));
                }
                Sample::Overlap(hits) => {
                    let names: Vec<String> = hits
                        .iter()
                        .map(|&h| fan.complex().facets()[h].to_string())
                        .collect();
                    return Some(format!(
                        "direction {} lies in several cones: {}",
                        fmt_vec(dir),
                        names.join(" ")
                    ));
                }
            }
        }
    }
    (generic < opts.samples).then(|| format!("only {generic} generic directions in {drawn} draws"))
}

/// For every facet pair, `cone(I) ∩ cone(J) = cone(I ∩ J)`: no point of the
/// intersection may use a ray of `I \ J` with positive weight.
fn pairwise_intersection(fan: &MarkedFan, execution: Execution) -> Option<String> {
    let facets = fan.complex().facets();
    let n = fan.dim();
    let pairs: Vec<(usize, usize)> = (0..facets.len())
        .flat_map(|i| {
            (0..facets.len())
                .filter(move |&j| j != i)
                .map(move |j| (i, j))
        })
        .collect();
    let outcomes = exec::map(execution, &pairs, |&(i, j)| {
        let (fi, fj) = (&facets[i], &facets[j]);
        let vi: Vec<usize> = fi.to_vec();
        let vj: Vec<usize> = fj.to_vec();
        let cols = vi.len() + vj.len();
        // Rows: A_I c - A_J d = 0, then sum_{I \ J} c = 1.
        let mut entries = Vec::with_capacity((n + 1) * cols);
        for r in 0..n {
            entries.extend(vi.iter().map(|&v| fan.marking(v)[r].clone()));
            entries.extend(vj.iter().map(|&v| -&fan.marking(v)[r]));
        }
        entries.extend(vi.iter().map(|&v| {
            if fj.contains(v) {
                Scalar::zero()
            } else {
                Scalar::one()
            }
        }));
        entries.extend(std::iter::repeat_n(Scalar::zero(), vj.len()));
        let a = ExactMatrix::new(n + 1, cols, entries).unwrap();
        let mut b = vec![Scalar::zero(); n];
        b.push(Scalar::one());
        nonnegative_solution_exists(&a, &b)
            .then(|| format!("cones {fi} and {fj} meet outside their common face"))
    });
    outcomes.into_iter().flatten().next()
}

/// Two distinct rays with positively proportional markings.
fn proportional_pair(fan: &MarkedFan) -> Option<String> {
    let verts = fan.complex().vertices();
    for (x, &i) in verts.iter().enumerate() {
        for &j in &verts[x + 1..] {
            let (a, b) = (fan.marking(i), fan.marking(j));
            if vectors_rank(&[a.clone(), b.clone()]) < 2 {
                let same_side = a.iter().zip(b).all(|(p, q)| p.signum() * q.signum() >= 0);
                if same_side {
                    return Some(format!(
                        "rays {} and {} have proportional markings",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::tests::{cp2, sqrt2_square, vecs};
    use crate::simplicial::SimplicialComplex;

    fn failing(report: &ValidationReport) -> Vec<String> {
        report.failures().iter().map(|c| c.name.clone()).collect()
    }

    fn exact() -> ValidateOptions {
        ValidateOptions {
            mode: Mode::Exact,
            ..ValidateOptions::default()
        }
    }

    #[test]
    fn cp2_passes_in_both_modes() {
        for seed in [0, 1, 42] {
            let r = validate_marked_fan(&cp2(), &ValidateOptions::with_seed(seed));
            assert!(r.passed(), "{r:?}");
        }
        let r = validate_marked_fan(&cp2(), &exact());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checks.len(), 11);
    }

    #[test]
    fn missing_cone_fails_walls() {
        let k = SimplicialComplex::from_facets(3, &[&[0, 1], &[0, 2]]).unwrap();
        let f = MarkedFan::new(
            2,
            k,
            cp2().markings().to_vec(),
            cp2().lattice_generators().to_vec(),
        )
        .unwrap();
        for opts in [ValidateOptions::default(), exact()] {
            let r = validate_marked_fan(&f, &opts);
            assert_eq!(r.check_passed(checks::PSEUDOMANIFOLD_WALLS), Some(false));
            assert_eq!(r.check_passed(checks::COVER_ORACLE), Some(false));
        }
    }

    #[test]
    fn overlapping_cones_fail_separation() {
        let k = SimplicialComplex::from_facets(3, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap();
        let f = MarkedFan::new(
            2,
            k,
            vecs(&[&["1", "0"], &["0", "1"], &["1", "1"]]),
            cp2().lattice_generators().to_vec(),
        )
        .unwrap();
        let r = validate_marked_fan(&f, &exact());
        assert_eq!(r.check_passed(checks::WALL_SEPARATION), Some(false));
        assert_eq!(r.check_passed(checks::PAIRWISE_INTERSECTION), Some(false));
        assert_eq!(r.check_passed(checks::PSEUDOMANIFOLD_WALLS), Some(true));
    }

    #[test]
    fn irrational_fan_passes() {
        let r = validate_marked_fan(&sqrt2_square(), &exact());
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn proportional_and_non_primitive() {
        let k = SimplicialComplex::from_facets(4, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]).unwrap();
        let f = MarkedFan::new(
            2,
            k,
            vecs(&[&["1", "0"], &["0", "2"], &["-1", "0"], &["0", "-2"]]),
            vecs(&[&["1", "0"], &["0", "1"]]),
        )
        .unwrap();
        let r = validate_marked_fan(&f, &ValidateOptions::default());
        assert!(r.passed());
        assert_eq!(r.notes.len(), 2);
    }

    #[test]
    fn deterministic_across_execution_modes() {
        let seq = ValidateOptions {
            execution: Execution::Sequential,
            ..exact()
        };
        let par = ValidateOptions {
            execution: Execution::Parallel,
            ..exact()
        };
        assert_eq!(
            validate_marked_fan(&cp2(), &seq),
            validate_marked_fan(&cp2(), &par)
        );
        let k = SimplicialComplex::from_facets(3, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap();
        let bad = MarkedFan::new(
            2,
            k,
            vecs(&[&["1", "0"], &["0", "1"], &["1", "1"]]),
            cp2().lattice_generators().to_vec(),
        )
        .unwrap();
        assert_eq!(
            validate_marked_fan(&bad, &seq),
            validate_marked_fan(&bad, &par)
        );
        assert!(failing(&validate_marked_fan(&bad, &seq))
            .contains(&checks::WALL_SEPARATION.to_string()));
    }
}
