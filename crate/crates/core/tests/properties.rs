use std::collections::BTreeSet;

use num_rational::Rational64;
use proptest::prelude::*;

use implodekit::basicaffine::embed_su_n;
use implodekit::chamber::{enumerate_faces, face_of, face_relations, star_membership};
use implodekit::implosion::{implode_equivalent_su_n, universal_strata};
use implodekit::numgeom::check_rng;
use implodekit::quantization::{cut_polytope, holomorphic_induct, n_invariants, tensor_decompose};
use implodekit::report::round_sig;
use implodekit::su::random_su;
use implodekit::suites::random_derived_levi;
use implodekit::{
    Face, GroupPointSUn, Isogeny, RootDatum, StarMembership, TCharacter, Weight, WeylCap,
};

fn datum() -> impl Strategy<Value = RootDatum> {
    prop::sample::select(vec![
        ("A", 1),
        ("A", 2),
        ("A", 3),
        ("B", 2),
        ("B", 3),
        ("C", 3),
        ("G", 2),
        ("D", 4),
    ])
    .prop_flat_map(|(s, r)| {
        prop::sample::select(vec![Isogeny::SimplyConnected, Isogeny::Adjoint])
            .prop_map(move |iso| RootDatum::build(s, r, iso).unwrap())
    })
}

fn small_datum() -> impl Strategy<Value = RootDatum> {
    prop::sample::select(vec![("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3)])
        .prop_map(|(s, r)| RootDatum::build(s, r, Isogeny::SimplyConnected).unwrap())
}

fn weight_for(d: &RootDatum, max: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(0..=max, d.rank_ss()).prop_map(Weight::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_order_is_reverse_inclusion(d in datum()) {
        let order = face_relations(&d);
        let r = d.rank_ss();
        prop_assert_eq!(order.faces.len(), 1 << r);
        let sets: BTreeSet<Vec<usize>> = order.faces.iter().map(|f| f.vanishing.clone()).collect();
        prop_assert_eq!(sets.len(), 1 << r);
        for (i, a) in order.faces.iter().enumerate() {
            for (j, b) in order.faces.iter().enumerate() {
                let superset = b.vanishing.iter().all(|x| a.vanishing.contains(x));
                prop_assert_eq!(order.leq.contains(&(i, j)), superset);
                if a.lt(b) {
                    prop_assert!(a.dim < b.dim);
                }
            }
        }
    }

    #[test]
    fn strata_dimensions(d in datum()) {
        let strata = universal_strata(&d).unwrap();
        let open: Vec<_> = strata.iter().filter(|s| s.face.vanishing.is_empty()).collect();
        prop_assert_eq!(open.len(), 1);
        prop_assert_eq!(open[0].real_dim, d.dim_group() + d.rank_ss() + d.central_rank());
        for s in &strata {
            for t in &strata {
                if s.face.lt(&t.face) {
                    prop_assert!(s.real_dim < t.real_dim);
                }
            }
        }
    }

    #[test]
    fn star_agrees_with_face_order(d in small_datum(), seed in any::<u64>()) {
        let faces = enumerate_faces(&d);
        let mut rng = check_rng(seed, 0);
        use rand::Rng;
        let lambda = Weight::new((0..d.rank_ss()).map(|_| rng.random_range(0..3)).collect());
        let face = face_of(&d, &lambda).unwrap();
        for sigma in &faces {
            let in_star = star_membership(sigma, &lambda.coeffs) == StarMembership::InStar;
            prop_assert_eq!(in_star, sigma.leq(&face));
        }
    }

    #[test]
    fn tensor_products_are_symmetric_and_conserve_dimension(
        (d, a, b) in small_datum().prop_flat_map(|d| {
            let a = weight_for(&d, 2);
            let b = weight_for(&d, 2);
            (Just(d), a, b)
        })
    ) {
        let ab = tensor_decompose(&d, &a, &b).unwrap();
        prop_assert_eq!(&ab, &tensor_decompose(&d, &b, &a).unwrap());
        let mut total = 0u64;
        for (nu, &m) in ab.iter() {
            prop_assert!(m > 0);
            total += m as u64 * d.weyl_dimension(&Weight::new(nu.clone())).unwrap();
        }
        prop_assert_eq!(total, d.weyl_dimension(&a).unwrap() * d.weyl_dimension(&b).unwrap());
    }

    #[test]
    fn induction_inverts_n_invariants_up_to_dot_action(
        (d, lambda, word) in small_datum().prop_flat_map(|d| {
            let r = d.rank_ss();
            (Just(d.clone()), weight_for(&d, 4), prop::collection::vec(0..r, 0..6))
        })
    ) {
        // w·λ = w(λ+ρ)-ρ induces to sign(w) V_λ
        let rho = d.rho();
        let mut shifted = lambda.add(&rho).coeffs;
        let mut sign = 1;
        for &i in &word {
            shifted = d.reflect(&shifted, i);
            sign = -sign;
        }
        let dotted: Vec<i64> = shifted.iter().zip(&rho.coeffs).map(|(a, b)| a - b).collect();
        let t: TCharacter = [(dotted, 1)].into_iter().collect();
        let v = holomorphic_induct(&d, &t).unwrap();
        prop_assert_eq!(v.len(), 1);
        prop_assert_eq!(v.get(&lambda.coeffs), sign);
        let highest = n_invariants(&v);
        prop_assert_eq!(&n_invariants(&holomorphic_induct(&d, &highest).unwrap()), &highest);
    }

    #[test]
    fn weyl_orbits_divide_group_order(d in small_datum(), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = check_rng(seed, 0);
        let lambda: Vec<i64> = (0..d.rank_ss()).map(|_| rng.random_range(-3..4)).collect();
        let (dom, _) = d.to_dominant(&lambda, WeylCap::default()).unwrap();
        prop_assert!(dom.iter().all(|&c| c >= 0));
        let orbit = d.weyl_orbit(&lambda, WeylCap::default()).unwrap();
        prop_assert!(orbit.contains(&lambda));
        let order = d.weyl_group_order(WeylCap::default()).unwrap();
        prop_assert_eq!(order % orbit.len(), 0);
    }

    #[test]
    fn cut_keeps_exactly_the_translated_face(
        pts in prop::collection::vec(prop::collection::vec(-3i64..4, 2), 0..20),
        l0 in prop::collection::vec(0i64..3, 2),
        tau_bits in 0usize..4,
    ) {
        let d = RootDatum::build("A", 2, Isogeny::SimplyConnected).unwrap();
        let vanishing: Vec<usize> = (0..2).filter(|i| tau_bits & (1 << i) != 0).collect();
        let tau = Face::new(&d, vanishing.clone()).unwrap();
        let l0: Vec<Rational64> = (0..2)
            .map(|i| if vanishing.contains(&i) { Rational64::from_integer(0) } else { Rational64::from_integer(l0[i]) })
            .collect();
        let pts: Vec<Vec<Rational64>> = pts.iter().map(|p| p.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
        let kept = cut_polytope(&pts, &l0, &tau).unwrap();
        for p in &pts {
            let inside = (0..2).all(|i| {
                if vanishing.contains(&i) { p[i] == l0[i] } else { p[i] >= l0[i] }
            });
            prop_assert_eq!(kept.contains(p), inside);
        }
    }

    #[test]
    fn rounding_is_idempotent(x in any::<f64>()) {
        let r = round_sig(x);
        if x.is_finite() {
            prop_assert_eq!(round_sig(r), r);
            prop_assert!((r - x).abs() <= 1e-11 * x.abs());
        }
    }
}

fn face_weights(n: usize) -> Vec<Weight> {
    (0..1usize << (n - 1))
        .map(|bits| Weight::new((0..n - 1).map(|p| if bits & (1 << p) != 0 { 0 } else { 1 + p as i64 }).collect()))
        .collect()
}

#[test]
fn implosion_equivalence_is_an_equivalence_relation() {
    let mut triples = 0;
    for n in [2usize, 3, 4] {
        for lambda in face_weights(n) {
            let d = RootDatum::build("A", n - 1, Isogeny::SimplyConnected).unwrap();
            let vanishing = face_of(&d, &lambda).unwrap().vanishing;
            for seed in 0..20u64 {
                let mut rng = check_rng(seed, n as u64);
                let k1 = random_su(n, &mut rng);
                // k2 equivalent to k1; k3 equivalent to k2 or random
                let k2 = &k1 * random_derived_levi(n, &vanishing, &mut rng);
                let k3 = if seed % 2 == 0 {
                    &k2 * random_derived_levi(n, &vanishing, &mut rng)
                } else {
                    random_su(n, &mut rng)
                };
                let m: Vec<GroupPointSUn> = [k1, k2, k3]
                    .into_iter()
                    .map(|k| GroupPointSUn::new(k, lambda.clone()).unwrap())
                    .collect();
                let eq = |i: usize, j: usize| implode_equivalent_su_n(&m[i], &m[j]).unwrap();
                for i in 0..3 {
                    assert!(eq(i, i));
                    for j in 0..3 {
                        assert_eq!(eq(i, j), eq(j, i));
                        for k in 0..3 {
                            if eq(i, j) && eq(j, k) {
                                assert!(eq(i, k));
                            }
                        }
                    }
                }
                assert!(eq(0, 1));
                assert_eq!(eq(1, 2), seed % 2 == 0 || vanishing.len() == n - 1);
                triples += 1;
            }
        }
    }
    assert!(triples >= 100, "{triples}");
}

#[test]
fn embedding_separates_classes() {
    for n in [2usize, 3, 4] {
        for lambda in face_weights(n) {
            let d = RootDatum::build("A", n - 1, Isogeny::SimplyConnected).unwrap();
            let vanishing = face_of(&d, &lambda).unwrap().vanishing;
            let pairings: Vec<f64> = lambda.coeffs.iter().map(|&c| c as f64).collect();
            for seed in 0..15u64 {
                let mut rng = check_rng(seed, 100 + n as u64);
                let k1 = random_su(n, &mut rng);
                let k2 = random_su(n, &mut rng);
                let f1 = embed_su_n(&k1, &pairings).unwrap();
                let f2 = embed_su_n(&k2, &pairings).unwrap();
                let m1 = GroupPointSUn::new(k1.clone(), lambda.clone()).unwrap();
                let m2 = GroupPointSUn::new(k2, lambda.clone()).unwrap();
                let dist = f1.sub(&f2).norm();
                if implode_equivalent_su_n(&m1, &m2).unwrap() {
                    assert!(dist < 1e-10, "equivalent points apart by {dist:e}");
                } else {
                    assert!(dist > 1e-6, "inequivalent points at distance {dist:e}");
                }
                let k3 = &k1 * random_derived_levi(n, &vanishing, &mut rng);
                assert!(f1.sub(&embed_su_n(&k3, &pairings).unwrap()).norm() < 1e-10);
            }
        }
    }
}
