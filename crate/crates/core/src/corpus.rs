//! Built-in example fans: projective spaces, Hirzebruch surfaces,
//! cross-polytopes, seeded stacked spheres, an irrational 4-cycle, ghost
//! tori, and fixtures that each violate one fan axiom.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{ExactMatrix, Scalar, Vector};
use crate::fan::{checks, MarkedFan};
use crate::simplicial::{SimplicialComplex, VertexSet};

fn ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn unit(n: usize, i: usize, scale: i64) -> Vector {
    (0..n)
        .map(|j| Scalar::from_int(if i == j { scale } else { 0 }))
        .collect()
}

fn standard_basis(n: usize) -> Vec<Vector> {
    (0..n).map(|i| unit(n, i, 1)).collect()
}

fn complex(m: usize, facets: &[Vec<usize>]) -> SimplicialComplex {
    SimplicialComplex::new(m, facets.iter().map(|f| VertexSet::from_slice(f)).collect())
        .expect("valid complex")
}

fn build(n: usize, k: SimplicialComplex, rays: Vec<Vector>, lattice: Vec<Vector>) -> MarkedFan {
    MarkedFan::new(n, k, rays, lattice).expect("consistent corpus fan")
}

/// Fan of `CP^n`: rays `e_1..e_n, -(e_1+..+e_n)` over the boundary of the
/// `n`-simplex.
pub fn projective_space(n: usize) -> MarkedFan {
    let facets: Vec<Vec<usize>> = (0..=n)
        .map(|skip| (0..=n).filter(|&v| v != skip).collect())
        .collect();
    let mut rays = standard_basis(n);
    rays.push(ints(&vec![-1; n]));
    build(n, complex(n + 1, &facets), rays, standard_basis(n))
}

fn four_cycle() -> SimplicialComplex {
    complex(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]])
}

/// `CP^1 x CP^1`: rays `±e_1, ±e_2` around the 4-cycle.
pub fn square() -> MarkedFan {
    hirzebruch(0)
}

/// Hirzebruch surface `F_a`: rays `e_1, e_2, -e_1 + a e_2, -e_2`.
pub fn hirzebruch(a: i64) -> MarkedFan {
    build(
        2,
        four_cycle(),
        vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, a]), ints(&[0, -1])],
        standard_basis(2),
    )
}

/// Square with the second axis scaled by 2 and lattice group still `Z^2`.
pub fn square_scaled() -> MarkedFan {
    build(
        2,
        four_cycle(),
        vec![ints(&[1, 0]), ints(&[0, 2]), ints(&[-1, 0]), ints(&[0, -2])],
        standard_basis(2),
    )
}

/// Boundary of the `n`-dimensional cross-polytope with rays `±e_i`:
/// vertex `i` is `e_i` and vertex `n + i` is `-e_i`.
pub fn cross_polytope(n: usize) -> MarkedFan {
    let facets: Vec<Vec<usize>> = (0..1usize << n)
        .map(|signs| {
            (0..n)
                .map(|i| if signs >> i & 1 == 0 { i } else { n + i })
                .collect()
        })
        .collect();
    let mut rays = standard_basis(n);
    rays.extend((0..n).map(|i| unit(n, i, -1)));
    build(n, complex(2 * n, &facets), rays, standard_basis(n))
}

/// The 4-cycle with rays `e_1, e_2, -e_1, -sqrt(2) e_2`; its kernel is not
/// rational.
pub fn sqrt2_square() -> MarkedFan {
    let s = Scalar::sqrt(2);
    build(
        2,
        four_cycle(),
        vec![
            ints(&[1, 0]),
            ints(&[0, 1]),
            ints(&[-1, 0]),
            vec![Scalar::zero(), -&s],
        ],
        vec![ints(&[1, 0]), ints(&[0, 1]), vec![Scalar::zero(), s]],
    )
}

/// `n = 0` fan with `count` ghost vertices (marked by 0).
pub fn ghost_torus(count: usize) -> MarkedFan {
    let k = SimplicialComplex::new(count, vec![]).expect("empty complex");
    build(0, k, vec![vec![]; count], vec![])
}

/// `CP^2` with vertices cycled and coordinates swapped.
pub fn cp2_relabeled() -> MarkedFan {
    let swap = ExactMatrix::from_ints(2, 2, &[0, 1, 1, 0]);
    projective_space(2)
        .transform(&swap)
        .unwrap()
        .relabel(&[1, 2, 0])
        .unwrap()
}

/// Complete fan whose complex is a stacked `(n-1)`-sphere on `vertices`
/// vertices: starting from `CP^n`, repeatedly subdivide a random cone by a
/// ray in its interior. `seed` fixes the subdivision sequence and
/// `marking_seed` the positive coefficients of the new rays, so different
/// marking seeds give different markings of the same complex.
pub fn stacked_sphere(n: usize, vertices: usize, seed: u64, marking_seed: u64) -> MarkedFan {
    assert!(
        vertices > n,
        "a stacked sphere needs at least n + 1 vertices"
    );
    let mut shape = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = ChaCha8Rng::seed_from_u64(marking_seed);
    let base = projective_space(n);
    let mut rays: Vec<Vector> = base.markings().to_vec();
    let mut facets: Vec<Vec<usize>> = base
        .complex()
        .facets()
        .iter()
        .map(VertexSet::to_vec)
        .collect();
    while rays.len() < vertices {
        let idx = shape.random_range(0..facets.len());
        let facet = facets.swap_remove(idx);
        let mut ray = vec![Scalar::zero(); n];
        for &v in &facet {
            let c = Scalar::from_int(coeffs.random_range(1..=3));
            for (x, a) in ray.iter_mut().zip(&rays[v]) {
                *x = &*x + &(&c * a);
            }
        }
        let new = rays.len();
        rays.push(ray);
        for &v in &facet {
            facets.push(
                facet
                    .iter()
                    .map(|&w| if w == v { new } else { w })
                    .collect(),
            );
        }
    }
    build(n, complex(vertices, &facets), rays, standard_basis(n))
}

/// Octahedron fan with rays `s_i e_i` and `-t_i e_i` (`s_i, t_i` in 1..=4)
/// moved by a random invertible integer matrix; the lattice group is
/// spanned by the markings.
pub fn random_octahedron(seed: u64) -> MarkedFan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = cross_polytope(3);
    let scaled: Vec<Vector> = (0..6)
        .map(|v| {
            let s = Scalar::from_int(rng.random_range(1..=4));
            base.marking(v).iter().map(|x| x * &s).collect()
        })
        .collect();
    let phi = loop {
        let entries: Vec<i64> = (0..9).map(|_| rng.random_range(-3..=3)).collect();
        let phi = ExactMatrix::from_ints(3, 3, &entries);
        if !phi.determinant().is_zero() {
            break phi;
        }
    };
    let rays: Vec<Vector> = scaled.iter().map(|a| phi.mul_vec(a)).collect();
    build(3, base.complex().clone(), rays.clone(), rays)
}

/// A named corpus member.
pub struct Entry {
    pub name: &'static str,
    pub fan: MarkedFan,
}

/// Valid fans; every underlying complex is a sphere triangulation.
pub fn valid() -> Vec<Entry> {
    vec![
        Entry {
            name: "cp1",
            fan: projective_space(1),
        },
        Entry {
            name: "cp2",
            fan: projective_space(2),
        },
        Entry {
            name: "cp3",
            fan: projective_space(3),
        },
        Entry {
            name: "cp4",
            fan: projective_space(4),
        },
        Entry {
            name: "cp2-relabeled",
            fan: cp2_relabeled(),
        },
        Entry {
            name: "square",
            fan: square(),
        },
        Entry {
            name: "square-scaled",
            fan: square_scaled(),
        },
        Entry {
            name: "hirzebruch1",
            fan: hirzebruch(1),
        },
        Entry {
            name: "hirzebruch2",
            fan: hirzebruch(2),
        },
        Entry {
            name: "hirzebruch3",
            fan: hirzebruch(3),
        },
        Entry {
            name: "octahedron",
            fan: cross_polytope(3),
        },
        Entry {
            name: "16-cell",
            fan: cross_polytope(4),
        },
        Entry {
            name: "stacked2-s1",
            fan: stacked_sphere(3, 8, 1, 1),
        },
        Entry {
            name: "stacked3-s1",
            fan: stacked_sphere(4, 9, 1, 1),
        },
        Entry {
            name: "sqrt2-square",
            fan: sqrt2_square(),
        },
        Entry {
            name: "ghost2",
            fan: ghost_torus(2),
        },
    ]
}

/// A fixture violating one axiom, with the check expected to reject it.
pub struct Invalid {
    pub name: &'static str,
    pub fan: MarkedFan,
    pub check: &'static str,
}

pub fn invalid() -> Vec<Invalid> {
    let cp2 = projective_space(2);
    let triangle = cp2.complex().clone();
    vec![
        Invalid {
            name: "cp2-missing-cone",
            fan: build(
                2,
                complex(3, &[vec![0, 1], vec![0, 2]]),
                cp2.markings().to_vec(),
                standard_basis(2),
            ),
            check: checks::PSEUDOMANIFOLD_WALLS,
        },
        Invalid {
            name: "overlapping-cones",
            fan: build(
                2,
                triangle.clone(),
                vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[1, 1])],
                standard_basis(2),
            ),
            check: checks::WALL_SEPARATION,
        },
        Invalid {
            name: "dependent-facet",
            fan: build(
                2,
                four_cycle(),
                vec![ints(&[1, 0]), ints(&[2, 0]), ints(&[-1, 0]), ints(&[0, -1])],
                standard_basis(2),
            ),
            check: checks::FACET_INDEPENDENCE,
        },
        Invalid {
            name: "marking-outside-lattice",
            fan: build(
                2,
                triangle.clone(),
                cp2.markings().to_vec(),
                vec![ints(&[2, 0]), ints(&[0, 1])],
            ),
            check: checks::LATTICE_MEMBERSHIP,
        },
        Invalid {
            name: "odd-wall",
            fan: build(
                2,
                complex(4, &[vec![0, 1], vec![1, 2], vec![2, 0], vec![0, 3]]),
                vec![
                    ints(&[1, 0]),
                    ints(&[0, 1]),
                    ints(&[-1, -1]),
                    ints(&[1, -1]),
                ],
                standard_basis(2),
            ),
            check: checks::PSEUDOMANIFOLD_WALLS,
        },
        Invalid {
            name: "rank-deficient",
            fan: build(
                3,
                triangle,
                vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[-1, -1, 0])],
                standard_basis(3),
            ),
            check: checks::MARKING_RANK,
        },
    ]
}
