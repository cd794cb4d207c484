//! Abstract simplicial complexes on `[m]` with ghost vertices.
//!
//! Vertices are 0-based internally. Faces are bitsets that fit a single
//! machine word for `m <= 64` and grow word by word beyond that.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use smallvec::{smallvec, SmallVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("vertex {} out of range for m = {m}", .vertex + 1)]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("facet {0} is contained in another facet")]
    NonMaximalFacet(VertexSet),
    #[error("vertex {} is declared ghost but lies in a facet", .0 + 1)]
    GhostInFacet(usize),
    #[error("vertex {} lies in no facet but is not declared ghost", .0 + 1)]
    UndeclaredGhost(usize),
    #[error("complex has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: isize, found: isize },
}

/// A set of vertices stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet {
            words: smallvec![0],
        }
    }

    pub fn from_slice(vs: &[usize]) -> Self {
        let mut s = Self::empty();
        for &v in vs {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if let Some(word) = self.words.get_mut(v / 64) {
            *word &= !(1 << (v % 64));
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.words.len() > 1 && *self.words.last().unwrap() == 0 {
            self.words.pop();
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut words: SmallVec<[u64; 1]> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        if words.is_empty() {
            words.push(0);
        }
        let mut s = VertexSet { words };
        s.trim();
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| {
                self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0)
            })
            .collect();
        VertexSet { words }
    }

    pub fn with(&self, v: usize) -> VertexSet {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn without(&self, v: usize) -> VertexSet {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w & (1 << b) != 0)
                .map(move |b| i * 64 + b)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max(&self) -> Option<usize> {
        self.iter().last()
    }
}

impl Default for VertexSet {
    fn default() -> Self {
        Self::empty()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    /// Lexicographic order on the sorted element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

impl fmt::Display for VertexSet {
    /// 1-based, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Simplicial complex on `m` vertices given by its facets. Vertices in no
/// facet are ghost vertices. The complex `{∅}` has the single facet `∅`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<VertexSet>,
    ghosts: VertexSet,
}

impl SimplicialComplex {
    /// Builds a complex from its facets. An empty facet list means `{∅}`.
    pub fn new(m: usize, facets: Vec<VertexSet>) -> Result<Self, SimplicialError> {
        let mut facets = facets;
        facets.sort();
        facets.dedup();
        if facets.is_empty() {
            facets.push(VertexSet::empty());
        }
        for f in &facets {
            if let Some(v) = f.iter().find(|&v| v >= m) {
                return Err(SimplicialError::VertexOutOfRange { vertex: v, m });
            }
        }
        for (i, f) in facets.iter().enumerate() {
            if facets
                .iter()
                .enumerate()
                .any(|(j, g)| i != j && f.is_subset(g))
            {
                return Err(SimplicialError::NonMaximalFacet(f.clone()));
            }
        }
        let covered = facets
            .iter()
            .fold(VertexSet::empty(), |acc, f| acc.union(f));
        let ghosts = (0..m).filter(|&v| !covered.contains(v)).collect();
        Ok(SimplicialComplex { m, facets, ghosts })
    }

    /// Builds from 0-based index lists and checks a declared ghost set.
    pub fn with_declared_ghosts(
        m: usize,
        facets: &[Vec<usize>],
        ghosts: &[usize],
    ) -> Result<Self, SimplicialError> {
        let k = Self::new(m, facets.iter().map(|f| VertexSet::from_slice(f)).collect())?;
        for &g in ghosts {
            if g >= m {
                return Err(SimplicialError::VertexOutOfRange { vertex: g, m });
            }
            if !k.ghosts.contains(g) {
                return Err(SimplicialError::GhostInFacet(g));
            }
        }
        if let Some(v) = k.ghosts.iter().find(|v| !ghosts.contains(v)) {
            return Err(SimplicialError::UndeclaredGhost(v));
        }
        Ok(k)
    }

    pub fn from_facets(m: usize, facets: &[&[usize]]) -> Result<Self, SimplicialError> {
        Self::new(m, facets.iter().map(|f| VertexSet::from_slice(f)).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn ghosts(&self) -> &VertexSet {
        &self.ghosts
    }

    pub fn is_ghost(&self, v: usize) -> bool {
        self.ghosts.contains(v)
    }

    /// Non-ghost vertices in increasing order.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.m).filter(|&v| !self.is_ghost(v)).collect()
    }

    /// `max |facet| - 1`; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(VertexSet::len).max().unwrap_or(0) as isize - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == d)
    }

    pub fn is_face(&self, face: &VertexSet) -> bool {
        face.is_empty() || self.facets.iter().any(|f| face.is_subset(f))
    }

    /// All faces, including `∅`, sorted by size then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut all: HashSet<VertexSet> = HashSet::new();
        for f in &self.facets {
            let verts = f.to_vec();
            for mask in 0u64..(1u64 << verts.len()) {
                all.insert(
                    (0..verts.len())
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| verts[b])
                        .collect(),
                );
            }
        }
        let mut faces: Vec<VertexSet> = all.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        faces
    }

    /// Inclusion-minimal non-faces, ghost singletons included, sorted
    /// lexicographically. A minimal non-face has all its facets of size
    /// `s - 1` in the complex, so the scan stops at size `dim + 2`.
    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let faces = self.faces();
        let face_set: HashSet<&VertexSet> = faces.iter().collect();
        let mut out: Vec<VertexSet> = self
            .ghosts
            .iter()
            .map(|g| VertexSet::from_slice(&[g]))
            .collect();
        let max_size = (self.dim() + 2).max(0) as usize;
        for size in 2..=max_size {
            for f in faces.iter().filter(|f| f.len() == size - 1) {
                let top = f.max().unwrap_or(0);
                for v in (top + 1)..self.m {
                    if self.is_ghost(v) {
                        continue;
                    }
                    let cand = f.with(v);
                    if face_set.contains(&cand) {
                        continue;
                    }
                    if cand.iter().all(|u| face_set.contains(&cand.without(u))) {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// `(f_{-1}, f_0, ..., f_{dim})`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; (self.dim() + 2) as usize];
        for face in self.faces() {
            f[face.len()] += 1;
        }
        f
    }

    /// h-vector relative to `n`; requires `dim K = n - 1`.
    pub fn h_vector(&self, n: usize) -> Result<Vec<i64>, SimplicialError> {
        if self.dim() != n as isize - 1 {
            return Err(SimplicialError::DimensionMismatch {
                expected: n as isize - 1,
                found: self.dim(),
            });
        }
        let f = self.f_vector();
        Ok((0..=n)
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(n - j, i - j) as i64 * f[j] as i64
                    })
                    .sum()
            })
            .collect())
    }

    pub fn add_ghost_vertices(&self, count: usize) -> SimplicialComplex {
        let mut ghosts = self.ghosts.clone();
        for v in self.m..self.m + count {
            ghosts.insert(v);
        }
        SimplicialComplex {
            m: self.m + count,
            facets: self.facets.clone(),
            ghosts,
        }
    }

    /// Graph on facets, adjacent when they share `|facet| - 1` vertices.
    pub fn facet_adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.facets.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.facets[i], &self.facets[j]);
                if a.len() == b.len() && a.intersection(b).len() + 1 == a.len() {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        adj
    }

    /// Number of facets containing each vertex.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.m];
        for f in &self.facets {
            for v in f.iter() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Image under a vertex map defined on the non-ghost vertices.
    pub fn relabel(
        &self,
        sigma: &[Option<usize>],
        m: usize,
    ) -> Result<SimplicialComplex, SimplicialError> {
        let facets = self
            .facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| sigma[v].expect("vertex map undefined on a face"))
                    .collect()
            })
            .collect();
        SimplicialComplex::new(m, facets)
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// A bijection between the non-ghost vertices of two complexes: entry `v`
/// holds the image of vertex `v`, `None` for ghosts.
pub type VertexMap = Vec<Option<usize>>;

/// Lazy enumeration of vertex bijections carrying `K1` onto `K2`, by
/// backtracking over vertices ordered by decreasing facet degree.
pub struct Isomorphisms<'a> {
    k1: &'a SimplicialComplex,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    edges1: HashSet<(usize, usize)>,
    edges2: HashSet<(usize, usize)>,
    facets2: HashSet<VertexSet>,
    // Backtracking state: position in `order` -> index into its candidate list.
    cursor: Vec<usize>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    exhausted: bool,
}

fn edge_set(k: &SimplicialComplex) -> HashSet<(usize, usize)> {
    let mut e = HashSet::new();
    for f in k.facets() {
        let vs = f.to_vec();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                e.insert((a, b));
                e.insert((b, a));
            }
        }
    }
    e
}

/// Per-vertex invariant: facet degree and 1-skeleton degree.
fn vertex_fingerprints(
    k: &SimplicialComplex,
    edges: &HashSet<(usize, usize)>,
) -> Vec<(usize, usize)> {
    let deg = k.vertex_degrees();
    (0..k.m())
        .map(|v| (deg[v], edges.iter().filter(|(a, _)| *a == v).count()))
        .collect()
}

pub fn complex_isomorphisms<'a>(
    k1: &'a SimplicialComplex,
    k2: &'a SimplicialComplex,
) -> Isomorphisms<'a> {
    let edges1 = edge_set(k1);
    let edges2 = edge_set(k2);
    let fp1 = vertex_fingerprints(k1, &edges1);
    let fp2 = vertex_fingerprints(k2, &edges2);
    let v1 = k1.vertices();
    let v2 = k2.vertices();
    let mut order = v1.clone();
    order.sort_by(|&a, &b| fp1[b].cmp(&fp1[a]).then(a.cmp(&b)));
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| v2.iter().copied().filter(|&w| fp2[w] == fp1[v]).collect())
        .collect();
    let exhausted = v1.len() != v2.len()
        || k1.facets().len() != k2.facets().len()
        || k1.f_vector() != k2.f_vector()
        || {
            let mut a: Vec<_> = v1.iter().map(|&v| fp1[v]).collect();
            let mut b: Vec<_> = v2.iter().map(|&v| fp2[v]).collect();
            a.sort();
            b.sort();
            a != b
        };
    Isomorphisms {
        k1,
        candidates,
        edges1,
        edges2,
        facets2: k2.facets().iter().cloned().collect(),
        cursor: vec![0; order.len()],
        order,
        image: vec![None; k1.m()],
        used: vec![false; k2.m()],
        exhausted,
    }
}

impl Isomorphisms<'_> {
    fn consistent(&self, depth: usize, w: usize) -> bool {
        let v = self.order[depth];
        self.order[..depth].iter().all(|&u| {
            let iu = self.image[u].unwrap();
            self.edges1.contains(&(u, v)) == self.edges2.contains(&(iu, w))
        })
    }

    fn facets_match(&self) -> bool {
        self.k1.facets().iter().all(|f| {
            let img: VertexSet = f.iter().map(|v| self.image[v].unwrap()).collect();
            self.facets2.contains(&img)
        })
    }

    fn unassign(&mut self, depth: usize) {
        let v = self.order[depth];
        if let Some(w) = self.image[v].take() {
            self.used[w] = false;
        }
    }
}

impl Iterator for Isomorphisms<'_> {
    type Item = VertexMap;

    fn next(&mut self) -> Option<VertexMap> {
        if self.exhausted {
            return None;
        }
        let n = self.order.len();
        if n == 0 {
            self.exhausted = true;
            return Some(vec![None; self.k1.m()]);
        }
        // Resume: if a full assignment was just yielded, advance the last level.
        let mut depth = if self.image[self.order[n - 1]].is_some() {
            self.unassign(n - 1);
            self.cursor[n - 1] += 1;
            n - 1
        } else {
            0
        };
        loop {
            let mut placed = false;
            while self.cursor[depth] < self.candidates[depth].len() {
                let w = self.candidates[depth][self.cursor[depth]];
                if !self.used[w] && self.consistent(depth, w) {
                    self.image[self.order[depth]] = Some(w);
                    self.used[w] = true;
                    placed = true;
                    break;
                }
                self.cursor[depth] += 1;
            }
            if placed {
                if depth + 1 == n {
                    if self.facets_match() {
                        return Some(self.image.clone());
                    }
                    self.unassign(depth);
                    self.cursor[depth] += 1;
                } else {
                    depth += 1;
                    self.cursor[depth] = 0;
                }
            } else {
                self.cursor[depth] = 0;
                if depth == 0 {
                    self.exhausted = true;
                    return None;
                }
                depth -= 1;
                self.unassign(depth);
                self.cursor[depth] += 1;
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]).unwrap()
    }

    pub fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap()
    }

    pub fn octahedron() -> SimplicialComplex {
        // vertices 0..3 = +e1,+e2,+e3 ; 3..6 = -e1,-e2,-e3
        let mut facets = Vec::new();
        for signs in 0..8usize {
            facets.push(VertexSet::from_slice(&[
                if signs & 1 == 0 { 0 } else { 3 },
                if signs & 2 == 0 { 1 } else { 4 },
                if signs & 4 == 0 { 2 } else { 5 },
            ]));
        }
        SimplicialComplex::new(6, facets).unwrap()
    }

    fn sets(xs: &[&[usize]]) -> Vec<VertexSet> {
        xs.iter().map(|x| VertexSet::from_slice(x)).collect()
    }

    #[test]
    fn faces_and_nonfaces() {
        let k = square();
        assert!(k.is_face(&VertexSet::from_slice(&[0, 1])));
        assert!(!k.is_face(&VertexSet::from_slice(&[0, 2])));
        assert!(k.is_face(&VertexSet::empty()));
        assert_eq!(k.minimal_nonfaces(), sets(&[&[0, 2], &[1, 3]]));
        assert_eq!(triangle().minimal_nonfaces(), sets(&[&[0, 1, 2]]));
        let ghosts = SimplicialComplex::new(2, vec![]).unwrap();
        assert_eq!(ghosts.minimal_nonfaces(), sets(&[&[0], &[1]]));
        assert_eq!(ghosts.f_vector(), vec![1]);
        assert_eq!(ghosts.h_vector(0).unwrap(), vec![1]);
    }

    #[test]
    fn f_and_h_vectors() {
        assert_eq!(square().f_vector(), vec![1, 4, 4]);
        assert_eq!(triangle().f_vector(), vec![1, 3, 3]);
        assert_eq!(octahedron().f_vector(), vec![1, 6, 12, 8]);
        assert_eq!(square().h_vector(2).unwrap(), vec![1, 2, 1]);
        assert_eq!(triangle().h_vector(2).unwrap(), vec![1, 1, 1]);
        assert_eq!(octahedron().h_vector(3).unwrap(), vec![1, 3, 3, 1]);
        assert!(matches!(
            square().h_vector(3),
            Err(SimplicialError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn octahedron_faces_by_brute_force() {
        // Oracle: a subset of the six vertices is a face iff it has no antipodal pair.
        let k = octahedron();
        let mut f = [0usize; 4];
        for mask in 0u32..64 {
            let antipodal = (0..3).any(|i| mask & (1 << i) != 0 && mask & (1 << (i + 3)) != 0);
            let set: VertexSet = (0..6).filter(|b| mask & (1 << b) != 0).collect();
            assert_eq!(k.is_face(&set), !antipodal);
            if !antipodal {
                f[set.len()] += 1;
            }
        }
        assert_eq!(k.f_vector(), f.to_vec());
    }

    #[test]
    fn nonfaces_regenerate_complex() {
        for k in [square(), triangle(), octahedron()] {
            let mnf = k.minimal_nonfaces();
            for mask in 0u64..(1 << k.m()) {
                let set: VertexSet = (0..k.m()).filter(|b| mask & (1 << b) != 0).collect();
                let avoids = !mnf.iter().any(|n| n.is_subset(&set));
                assert_eq!(avoids, k.is_face(&set));
            }
        }
    }

    #[test]
    fn ghosts() {
        let k = square().add_ghost_vertices(0);
        assert_eq!(k, square());
        let g = SimplicialComplex::new(0, vec![])
            .unwrap()
            .add_ghost_vertices(2);
        assert_eq!(g.m(), 2);
        assert_eq!(g.ghosts().to_vec(), vec![0, 1]);
        let t = triangle().add_ghost_vertices(1);
        assert_eq!(t.m(), 4);
        assert!(t.is_ghost(3));
        assert!(t.minimal_nonfaces().contains(&VertexSet::from_slice(&[3])));
        assert!(SimplicialComplex::with_declared_ghosts(3, &[vec![0, 1]], &[]).is_err());
        assert!(SimplicialComplex::with_declared_ghosts(3, &[vec![0, 1]], &[2]).is_ok());
        assert!(SimplicialComplex::from_facets(3, &[&[0, 1], &[0]]).is_err());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(complex_isomorphisms(&square(), &square()).count(), 8);
        assert_eq!(complex_isomorphisms(&triangle(), &triangle()).count(), 6);
        assert_eq!(complex_isomorphisms(&square(), &triangle()).count(), 0);
        assert_eq!(
            complex_isomorphisms(&octahedron(), &octahedron()).count(),
            48
        );
    }

    #[test]
    fn automorphisms_match_exhaustive_permutations() {
        // Oracle: try all 4! permutations of the square's vertices.
        let k = square();
        let mut brute = 0;
        let perms = permutations(4);
        for p in &perms {
            let sigma: VertexMap = p.iter().map(|&x| Some(x)).collect();
            if k.relabel(&sigma, 4).unwrap() == k {
                brute += 1;
            }
        }
        assert_eq!(brute, 8);
        for sigma in complex_isomorphisms(&k, &k) {
            assert_eq!(k.relabel(&sigma, 4).unwrap(), k);
        }
    }

    pub fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn isomorphisms_with_ghosts_and_identity_first_class() {
        let k1 = square().add_ghost_vertices(1);
        let k2 = square();
        let all: Vec<_> = complex_isomorphisms(&k1, &k2).collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|s| s[4].is_none()));
        let id: VertexMap = (0..4).map(Some).collect();
        assert!(complex_isomorphisms(&k2, &k2).any(|s| s == id));
    }

    #[test]
    fn composition_closed() {
        let k1 = square();
        let sigma: VertexMap = vec![Some(2), Some(0), Some(3), Some(1)];
        // k2 = sigma(k1)? build relabeled copy and check compositions.
        let k2 = k1.relabel(&sigma, 4).unwrap();
        let k3 = k1.clone();
        let to3: Vec<VertexMap> = complex_isomorphisms(&k1, &k3).collect();
        for a in complex_isomorphisms(&k1, &k2) {
            for b in complex_isomorphisms(&k2, &k3) {
                let comp: VertexMap = a.iter().map(|x| x.and_then(|v| b[v])).collect();
                assert!(to3.contains(&comp));
            }
        }
    }

    #[test]
    fn big_vertex_sets() {
        let mut s = VertexSet::from_slice(&[1, 70, 130]);
        assert!(s.contains(130));
        assert_eq!(s.len(), 3);
        s.remove(130);
        assert_eq!(s.to_vec(), vec![1, 70]);
        assert!(VertexSet::from_slice(&[70]).is_subset(&s));
        assert!(!s.is_subset(&VertexSet::from_slice(&[1])));
        assert_eq!(
            s.intersection(&VertexSet::from_slice(&[1, 2])),
            VertexSet::from_slice(&[1])
        );
    }
}
