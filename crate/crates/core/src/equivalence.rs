//! Marked-fan isomorphism: a vertex bijection of the underlying complexes
//! together with a linear map carrying markings to markings and lattice
//! group onto lattice group. Ghost vertices are ignored.

use serde::Serialize;

use crate::exactfield::{vectors_rank, zmodule_equal, ExactMatrix, Vector};
use crate::exec::{self, Execution};
use crate::fan::MarkedFan;
use crate::simplicial::{complex_isomorphisms, VertexMap, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanIsomorphism {
    /// `sigma[i]` is the image of vertex `i` of the first fan; `None` on ghosts.
    pub sigma: VertexMap,
    pub phi: ExactMatrix,
}

/// Isomorphism invariants; equal fingerprints are necessary for
/// isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub n: usize,
    pub f_vector: Vec<usize>,
    pub h_vector: Vec<i64>,
    /// Sorted degrees of the facet adjacency graph.
    pub adjacency_degrees: Vec<usize>,
    /// Elementary divisors of the ray markings' span inside the lattice
    /// group, as decimal strings; `None` if a marking is outside it.
    pub lattice_divisors: Option<Vec<String>>,
}

pub fn invariant_fingerprint(fan: &MarkedFan) -> Fingerprint {
    let k = fan.complex();
    let mut adjacency_degrees: Vec<usize> = k.facet_adjacency().iter().map(Vec::len).collect();
    adjacency_degrees.sort_unstable();
    Fingerprint {
        n: fan.dim(),
        f_vector: k.f_vector(),
        h_vector: k.h_vector(fan.dim()).unwrap_or_default(),
        adjacency_degrees,
        lattice_divisors: fan
            .lattice()
            .elementary_divisors(&fan.ray_markings())
            .map(|d| d.iter().map(|x| x.to_string()).collect()),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    /// Reject immediately when fingerprints differ.
    pub prefilter: bool,
    pub execution: Execution,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            prefilter: true,
            execution: Execution::default(),
        }
    }
}

/// Outcome of an isomorphism search.
#[derive(Clone, Debug)]
pub struct IsoSearch {
    pub witness: Option<FanIsomorphism>,
    /// Complex isomorphisms examined before stopping.
    pub candidates: usize,
    pub fingerprints_differ: bool,
}

const BATCH: usize = 256;

pub fn search_isomorphism(f1: &MarkedFan, f2: &MarkedFan, opts: &IsoOptions) -> IsoSearch {
    let mut out = IsoSearch {
        witness: None,
        candidates: 0,
        fingerprints_differ: false,
    };
    if f1.dim() != f2.dim() || f1.field().join(f2.field()).is_none() {
        return out;
    }
    if opts.prefilter && invariant_fingerprint(f1) != invariant_fingerprint(f2) {
        out.fingerprints_differ = true;
        return out;
    }
    let n = f1.dim();
    // first n independent ray markings of f1
    let mut basis: Vec<usize> = Vec::new();
    let mut picked: Vec<Vector> = Vec::new();
    for v in f1.complex().vertices() {
        if picked.len() == n {
            break;
        }
        picked.push(f1.marking(v).clone());
        if vectors_rank(&picked) == picked.len() {
            basis.push(v);
        } else {
            picked.pop();
        }
    }
    if basis.len() != n {
        return out;
    }
    let a1_inv = ExactMatrix::from_columns(n, &picked)
        .unwrap()
        .inverse()
        .expect("independent columns");

    let mut isos = complex_isomorphisms(f1.complex(), f2.complex());
    loop {
        let batch: Vec<VertexMap> = isos.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return out;
        }
        let hit = exec::position_first(opts.execution, &batch, |sigma| {
            candidate_map(f1, f2, sigma, &basis, &a1_inv).is_some()
        });
        match hit {
            Some(pos) => {
                out.candidates += pos + 1;
                let sigma = batch[pos].clone();
                let phi = candidate_map(f1, f2, &sigma, &basis, &a1_inv).unwrap();
                out.witness = Some(FanIsomorphism { sigma, phi });
                return out;
            }
            None => out.candidates += batch.len(),
        }
    }
}

/// The linear map determined by `sigma` on the basis markings, if it
/// satisfies every isomorphism condition.
fn candidate_map(
    f1: &MarkedFan,
    f2: &MarkedFan,
    sigma: &VertexMap,
    basis: &[usize],
    a1_inv: &ExactMatrix,
) -> Option<ExactMatrix> {
    let n = f1.dim();
    let images: Vec<Vector> = basis
        .iter()
        .map(|&v| f2.marking(sigma[v].unwrap()).clone())
        .collect();
    let phi = ExactMatrix::from_columns(n, &images)
        .ok()?
        .mul(a1_inv)
        .ok()?;
    check_map(f1, f2, sigma, &phi).then_some(phi)
}

fn check_map(f1: &MarkedFan, f2: &MarkedFan, sigma: &VertexMap, phi: &ExactMatrix) -> bool {
    let markings_match = f1
        .complex()
        .vertices()
        .into_iter()
        .all(|v| sigma[v].is_some_and(|w| &phi.mul_vec(f1.marking(v)) == f2.marking(w)));
    markings_match && phi.rank() == f1.dim() && {
        let image: Vec<Vector> = f1
            .lattice_generators()
            .iter()
            .map(|g| phi.mul_vec(g))
            .collect();
        zmodule_equal(f1.dim(), &image, f2.lattice_generators())
    }
}

pub fn marked_fan_isomorphic(f1: &MarkedFan, f2: &MarkedFan) -> Option<FanIsomorphism> {
    search_isomorphism(f1, f2, &IsoOptions::default()).witness
}

pub fn p_equivalent(f1: &MarkedFan, f2: &MarkedFan) -> bool {
    marked_fan_isomorphic(f1, f2).is_some()
}

/// Rechecks a witness from scratch: `sigma` is a bijection between the
/// non-ghost vertices carrying facets onto facets, `phi` is invertible,
/// matches markings, and maps lattice group onto lattice group.
pub fn verify_isomorphism(
    f1: &MarkedFan,
    f2: &MarkedFan,
    iso: &FanIsomorphism,
) -> Result<(), String> {
    let (k1, k2) = (f1.complex(), f2.complex());
    if iso.sigma.len() != k1.m() {
        return Err("vertex map has the wrong length".into());
    }
    let mut seen = VertexSet::empty();
    for v in k1.vertices() {
        match iso.sigma[v] {
            Some(w) if w < k2.m() && !k2.is_ghost(w) && !seen.contains(w) => seen.insert(w),
            _ => {
                return Err(format!(
                    "vertex {} is not mapped injectively to a ray",
                    v + 1
                ))
            }
        }
    }
    if seen.len() != k2.vertices().len() {
        return Err("vertex map is not onto the rays".into());
    }
    let mut images: Vec<VertexSet> = k1
        .facets()
        .iter()
        .map(|f| f.iter().map(|v| iso.sigma[v].unwrap()).collect())
        .collect();
    images.sort();
    if images != k2.facets() {
        return Err("facets are not carried onto facets".into());
    }
    if iso.phi.rows() != f1.dim() || iso.phi.cols() != f1.dim() || iso.phi.inverse().is_none() {
        return Err("linear map is not invertible".into());
    }
    for v in k1.vertices() {
        if &iso.phi.mul_vec(f1.marking(v)) != f2.marking(iso.sigma[v].unwrap()) {
            return Err(format!(
                "marking of vertex {} is not carried to its image",
                v + 1
            ));
        }
    }
    let image: Vec<Vector> = f1
        .lattice_generators()
        .iter()
        .map(|g| iso.phi.mul_vec(g))
        .collect();
    if !zmodule_equal(f1.dim(), &image, f2.lattice_generators()) {
        return Err("lattice groups do not correspond".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Scalar;
    use crate::fan::tests::{cp2, sqrt2_square, vecs};
    use crate::simplicial::tests::square;

    fn square_fan(scale: &str) -> MarkedFan {
        let neg = format!("-{scale}");
        MarkedFan::new(
            2,
            square(),
            vecs(&[&["1", "0"], &["0", scale], &["-1", "0"], &["0", &neg]]),
            vecs(&[&["1", "0"], &["0", "1"]]),
        )
        .unwrap()
    }

    fn cp2_swapped() -> MarkedFan {
        cp2()
            .transform(&ExactMatrix::from_ints(2, 2, &[0, 1, 1, 0]))
            .unwrap()
    }

    fn cp2_relabeled() -> MarkedFan {
        cp2_swapped().relabel(&[1, 2, 0]).unwrap()
    }

    #[test]
    fn relabeled_cp2() {
        let g = cp2_swapped();
        let iso = marked_fan_isomorphic(&cp2(), &g).unwrap();
        assert_eq!(iso.phi, ExactMatrix::from_ints(2, 2, &[0, 1, 1, 0]));
        verify_isomorphism(&cp2(), &g, &iso).unwrap();
        let g = cp2_relabeled();
        let iso = marked_fan_isomorphic(&cp2(), &g).unwrap();
        verify_isomorphism(&cp2(), &g, &iso).unwrap();
        verify_isomorphism(&g, &cp2(), &marked_fan_isomorphic(&g, &cp2()).unwrap()).unwrap();
        assert!(p_equivalent(&cp2(), &cp2()));
    }

    #[test]
    fn non_isomorphic_pairs() {
        let s = square_fan("1");
        assert!(!p_equivalent(&cp2(), &s));
        assert!(search_isomorphism(&cp2(), &s, &IsoOptions::default()).fingerprints_differ);
        let scaled = square_fan("2");
        assert!(!p_equivalent(&s, &scaled));
        let exhaustive = IsoOptions {
            prefilter: false,
            execution: Execution::Sequential,
        };
        let r = search_isomorphism(&s, &scaled, &exhaustive);
        assert!(r.witness.is_none());
        assert_eq!(r.candidates, 8);
    }

    #[test]
    fn fingerprints() {
        let f = invariant_fingerprint(&cp2());
        assert_eq!(
            (f.n, f.f_vector.clone(), f.h_vector.clone()),
            (2, vec![1, 3, 3], vec![1, 1, 1])
        );
        let s = invariant_fingerprint(&square_fan("1"));
        assert_eq!((s.f_vector, s.h_vector), (vec![1, 4, 4], vec![1, 2, 1]));
        assert_eq!(f, invariant_fingerprint(&cp2_relabeled()));
        assert_ne!(
            invariant_fingerprint(&square_fan("1")).lattice_divisors,
            invariant_fingerprint(&square_fan("2")).lattice_divisors
        );
    }

    #[test]
    fn ghosts_are_ignored() {
        let g = cp2().with_ghosts(vecs(&[&["1", "0"]])).unwrap();
        let iso = marked_fan_isomorphic(&g, &cp2()).unwrap();
        assert_eq!(iso.sigma[3], None);
        verify_isomorphism(&g, &cp2(), &iso).unwrap();
    }

    #[test]
    fn irrational_and_tampered_witnesses() {
        let f = sqrt2_square();
        let iso = marked_fan_isomorphic(&f, &f).unwrap();
        verify_isomorphism(&f, &f, &iso).unwrap();
        let mut bad = marked_fan_isomorphic(&cp2(), &cp2_relabeled()).unwrap();
        bad.phi.set(0, 0, Scalar::from_int(2));
        assert!(verify_isomorphism(&cp2(), &cp2_relabeled(), &bad).is_err());
    }

    #[test]
    fn execution_modes_agree() {
        let g = cp2_relabeled();
        for execution in [Execution::Sequential, Execution::Parallel] {
            let opts = IsoOptions {
                prefilter: true,
                execution,
            };
            assert_eq!(
                search_isomorphism(&cp2(), &g, &opts).witness,
                marked_fan_isomorphic(&cp2(), &g)
            );
        }
    }
}
