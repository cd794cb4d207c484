use proptest::prelude::*;
use toric_basic::corpus;
use toric_basic::equivalence::{invariant_fingerprint, marked_fan_isomorphic, verify_isomorphism};
use toric_basic::exactfield::{ExactMatrix, Scalar};
use toric_basic::facering::{
    basic_betti, face_ring_quotient, linear_ideal, stanley_reisner_ideal, Monomial, Polynomial,
};
use toric_basic::fan::{validate_marked_fan, MarkedFan, ValidateOptions};
use toric_basic::format::{fan_to_json, parse_fan};
use toric_basic::realize::realize_moment_angle;

fn sphere() -> impl Strategy<Value = MarkedFan> {
    (3usize..=4, 0usize..=6, any::<u64>(), any::<u64>())
        .prop_map(|(n, extra, seed, marks)| corpus::stacked_sphere(n, n + 1 + extra, seed, marks))
}

fn small_poly(m: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u16..=1, m), -3i64..=3), 1..5).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (exps, c) in terms {
            p.add_term(Monomial::from_exponents(&exps), Scalar::from_int(c));
        }
        p
    })
}

fn disguise(fan: &MarkedFan, shear: i64, shift: usize) -> MarkedFan {
    let n = fan.dim();
    let mut phi = ExactMatrix::identity(n);
    phi.set(0, n - 1, Scalar::from_int(shear));
    let m = fan.m();
    let sigma: Vec<usize> = (0..m).map(|v| (v + shift) % m).collect();
    fan.transform(&phi).unwrap().relabel(&sigma).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ideal_elements_reduce_to_zero(seed in 0u64..200, p in small_poly(6)) {
        let fan = corpus::random_octahedron(seed);
        let q = face_ring_quotient(&fan).unwrap();
        let mut gens = linear_ideal(&fan).unwrap().forms;
        gens.extend(stanley_reisner_ideal(fan.complex()).into_iter().map(Polynomial::monomial));
        for g in &gens {
            prop_assert!(q.normal_form(&p.mul(g)).is_zero());
        }
        let r = q.normal_form(&p);
        prop_assert_eq!(q.normal_form(&r), r.clone());
        let standard: Vec<&Monomial> = q.standard_basis().collect();
        prop_assert!(r.terms().all(|(x, _)| standard.contains(&x)));
    }

    #[test]
    fn sphere_betti_is_symmetric_h_vector(fan in sphere()) {
        prop_assert!(validate_marked_fan(&fan, &ValidateOptions::default()).passed());
        let betti = basic_betti(&fan).unwrap();
        let h: Vec<usize> = fan.complex().h_vector(fan.dim()).unwrap().into_iter().map(|x| x as usize).collect();
        prop_assert_eq!(&betti, &h);
        prop_assert!(betti.iter().eq(betti.iter().rev()));
    }

    #[test]
    fn disguised_copies_are_isomorphic(seed in 0u64..200, shear in -3i64..=3, shift in 0usize..6) {
        let fan = corpus::random_octahedron(seed);
        let other = disguise(&fan, shear, shift);
        prop_assert_eq!(invariant_fingerprint(&fan), invariant_fingerprint(&other));
        let w = marked_fan_isomorphic(&fan, &other).expect("isomorphic");
        prop_assert!(verify_isomorphism(&fan, &other, &w).is_ok());
    }

    #[test]
    fn realization_round_trips(seed in 0u64..200) {
        let fan = corpus::random_octahedron(seed);
        let r = realize_moment_angle(&fan, &ValidateOptions::default()).unwrap();
        prop_assert!(r.report.passed());
        prop_assert_eq!((r.m - fan.dim()) % 2, 0);
        prop_assert!(verify_isomorphism(&r.induced_fan(), &fan, &r.round_trip).is_ok());
    }

    #[test]
    fn fan_files_round_trip(fan in sphere()) {
        prop_assert_eq!(parse_fan(&fan_to_json(&fan)).unwrap(), fan);
    }
}

#[test]
fn bundled_corpus_matches_builders() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    for entry in corpus::valid() {
        let text = std::fs::read_to_string(dir.join(format!("{}.fan", entry.name))).unwrap();
        assert_eq!(parse_fan(&text).unwrap(), entry.fan, "{}", entry.name);
    }
    for bad in corpus::invalid() {
        let text =
            std::fs::read_to_string(dir.join("invalid").join(format!("{}.fan", bad.name))).unwrap();
        let fan = parse_fan(&text).unwrap();
        let report = validate_marked_fan(&fan, &ValidateOptions::default());
        assert_eq!(report.check_passed(bad.check), Some(false), "{}", bad.name);
    }
}
