//! Randomized structural properties of states, invariants, stabilizers and
//! normal forms.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{family_member, NAMED_TAGS};
use entangle3::classify::{classify3, ClassTag, DEFAULT_CLASS_TOL};
use entangle3::invariants::{
    entropy, hyperdeterminant, invariant_vector, reduce, reduce1, reduce2, tangles, three_tangle,
    two_tangle, two_tangle_from_density, Subsystem,
};
use entangle3::linalg::C64;
use entangle3::normalform::{lps, reconstruct};
use entangle3::random::{random_local_unitary, random_permutation};
use entangle3::stabilizer::{conjugation_check, element_residual, solve, DEFAULT_RANK_TOL};
use entangle3::state::{apply, make_named, permute, permute_unitary, PureState3};

fn state() -> impl Strategy<Value = PureState3> {
    prop::array::uniform16(-1.0f64..1.0)
        .prop_filter("away from zero", |x| {
            x.iter().map(|v| v * v).sum::<f64>() > 0.05
        })
        .prop_map(|x| PureState3::from_real_coords(&x).normalize().unwrap())
}

fn named() -> impl Strategy<Value = (ClassTag, PureState3)> {
    (0..NAMED_TAGS.len(), 0.02f64..0.98, 0.02f64..0.98).prop_map(|(k, u, v)| {
        let tag = NAMED_TAGS[k];
        (tag, make_named(&family_member(tag, u, v)).unwrap())
    })
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cayley's hyperdeterminant written out term by term.
fn cayley(s: &PureState3) -> C64 {
    let t = |i, j, k| s.amp(i, j, k);
    let sq = |z: C64| z * z;
    sq(t(0, 0, 0) * t(1, 1, 1))
        + sq(t(0, 0, 1) * t(1, 1, 0))
        + sq(t(0, 1, 0) * t(1, 0, 1))
        + sq(t(1, 0, 0) * t(0, 1, 1))
        - 2.0
            * (t(0, 0, 0) * t(0, 0, 1) * t(1, 1, 0) * t(1, 1, 1)
                + t(0, 0, 0) * t(0, 1, 0) * t(1, 0, 1) * t(1, 1, 1)
                + t(0, 0, 0) * t(1, 0, 0) * t(0, 1, 1) * t(1, 1, 1)
                + t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 1) * t(1, 1, 0)
                + t(0, 0, 1) * t(1, 0, 0) * t(0, 1, 1) * t(1, 1, 0)
                + t(0, 1, 0) * t(1, 0, 0) * t(0, 1, 1) * t(1, 0, 1))
        + 4.0
            * (t(0, 0, 0) * t(0, 1, 1) * t(1, 0, 1) * t(1, 1, 0)
                + t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 0) * t(1, 1, 1))
}

fn pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_undoes_action(s in state(), seed in any::<u64>()) {
        let g = random_local_unitary(&mut seeded(seed));
        let back = apply(&g.inverse(), &apply(&g, &s).unwrap()).unwrap();
        prop_assert!(back.distance(&s) < 1e-12);
    }

    #[test]
    fn action_is_a_homomorphism(s in state(), seed in any::<u64>()) {
        let mut r = seeded(seed);
        let (g, h) = (random_local_unitary(&mut r), random_local_unitary(&mut r));
        let two_step = apply(&g, &apply(&h, &s).unwrap()).unwrap();
        let one_step = apply(&g.compose(&h), &s).unwrap();
        prop_assert!(two_step.distance(&one_step) < 1e-12);
    }

    #[test]
    fn permutations_intertwine_the_action(s in state(), seed in any::<u64>()) {
        let mut r = seeded(seed);
        let (p, g) = (random_permutation(&mut r), random_local_unitary(&mut r));
        let lhs = permute(&p, &apply(&g, &s).unwrap());
        let rhs = apply(&permute_unitary(&p, &g), &permute(&p, &s)).unwrap();
        prop_assert!(lhs.distance(&rhs) < 1e-12);
        prop_assert!(permute(&p.inverse(), &permute(&p, &s)).distance(&s) < 1e-15);
    }

    #[test]
    fn hyperdeterminant_matches_cayley(s in state()) {
        let d = hyperdeterminant(&s) - cayley(&s);
        prop_assert!(d.norm() < 1e-12, "pencil and expanded forms differ by {}", d.norm());
    }

    #[test]
    fn three_tangle_is_four_det(s in state()) {
        let t = three_tangle(&s).unwrap();
        prop_assert!((t.tau - 4.0 * hyperdeterminant(&s).norm()).abs() < 1e-9);
        prop_assert!(t.max_discrepancy < 1e-9);
    }

    #[test]
    fn two_tangle_routes_agree(s in state(), a in 1usize..=3, b in 1usize..=3) {
        prop_assume!(a != b);
        let direct = two_tangle(&s, a, b).unwrap();
        let literal = two_tangle_from_density(&reduce2(&s, a.min(b), a.max(b))).unwrap();
        // ρ_ab has rank ≤ 2, so the square roots in the literal route act on
        // round-off-sized eigenvalues and keep only about half the digits.
        prop_assert!((direct - literal).abs() < 1e-6, "{direct} vs {literal}");
    }

    #[test]
    fn monogamy(s in state()) {
        let t = tangles(&s).unwrap();
        for (a, x, y) in [(1, t.tau12, t.tau13), (2, t.tau12, t.tau23), (3, t.tau13, t.tau23)] {
            let four_det = 4.0 * reduce1(&s, a).det().re;
            prop_assert!(x + y <= four_det + 1e-10);
        }
        prop_assert!(t.tau123 >= -1e-10 && t.tau123 <= 1.0 + 1e-10);
    }

    #[test]
    fn complementary_entropies_agree(s in state(), a in 1usize..=3) {
        let single = entropy(&reduce(&s, Subsystem::Single(a))).unwrap();
        let rest = Subsystem::new(&Subsystem::Single(a).complement()).unwrap();
        let double = entropy(&reduce(&s, rest)).unwrap();
        prop_assert!((single - double).abs() < 1e-9);
        prop_assert!((-1e-12..=std::f64::consts::LN_2 + 1e-12).contains(&single));
    }

    #[test]
    fn tangles_follow_relabelling(s in state(), seed in any::<u64>()) {
        let p = random_permutation(&mut seeded(seed));
        let q = permute(&p, &s);
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            let (x, y) = pair(p.image(a), p.image(b));
            let d = two_tangle(&q, x, y).unwrap() - two_tangle(&s, a, b).unwrap();
            prop_assert!(d.abs() < 1e-10);
        }
        let d = three_tangle(&q).unwrap().tau - three_tangle(&s).unwrap().tau;
        prop_assert!(d.abs() < 1e-10);
    }

    #[test]
    fn normal_form_lands_on_its_reconstruction(s in state()) {
        let f = lps(&s).unwrap();
        f.params.validate().unwrap();
        let target = reconstruct(&f.params).unwrap();
        prop_assert!(apply(&f.transform, &s).unwrap().distance(&target) < 1e-8);
        prop_assert!(invariant_vector(&target).max_abs_diff(&invariant_vector(&s)) < 1e-9);
    }

    #[test]
    fn normal_form_is_idempotent(s in state()) {
        let p = lps(&s).unwrap().params;
        let again = lps(&reconstruct(&p).unwrap()).unwrap().params;
        for (a, b) in p.invariants().iter().zip(again.invariants()) {
            prop_assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn normal_form_sees_through_local_unitaries(s in state(), seed in any::<u64>()) {
        let img = apply(&random_local_unitary(&mut seeded(seed)), &s).unwrap();
        let (a, b) = (lps(&s).unwrap().params, lps(&img).unwrap().params);
        for (x, y) in a.invariants().iter().zip(b.invariants()) {
            prop_assert!((x - y).abs() < 1e-7);
        }
        // With t and s both nonzero the phase of z is fixed as well.
        if a.t > 1e-3 && a.s > 1e-3 && a.z.norm() > 1e-3 {
            prop_assert!((a.z / b.z).arg().abs() < 1e-6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stabilizer_dimension_is_orbit_invariant((_, s) in named(), seed in any::<u64>()) {
        let mut r = seeded(seed);
        let g = random_local_unitary(&mut r);
        prop_assert!(conjugation_check(&s, &g).unwrap());
        let p = random_permutation(&mut r);
        prop_assert_eq!(solve(&permute(&p, &s), DEFAULT_RANK_TOL).unwrap().dim,
                        solve(&s, DEFAULT_RANK_TOL).unwrap().dim);
    }

    #[test]
    fn algebra_exponentiates_into_the_stabilizer((_, s) in named(), eps in -1.0f64..1.0) {
        let alg = solve(&s, DEFAULT_RANK_TOL).unwrap();
        prop_assert!(alg.residual < 1e-9);
        for x in &alg.basis {
            prop_assert!(element_residual(&x.exp(eps), &s).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn tangle_signature_matches_class((tag, s) in named()) {
        let c = classify3(&s, DEFAULT_CLASS_TOL).unwrap();
        prop_assert_eq!(c.tag, tag);
        let t = tangles(&s).unwrap();
        let zero = |x: f64| x.abs() < 1e-9;
        let pairs = [t.tau12, t.tau13, t.tau23];
        match tag {
            ClassTag::Product => prop_assert!(pairs.iter().all(|&x| zero(x)) && zero(t.tau123)),
            ClassTag::Bystander => {
                prop_assert!(zero(t.tau123));
                prop_assert_eq!(pairs.iter().filter(|&&x| zero(x)).count(), 2);
            }
            ClassTag::Slice | ClassTag::SliceRidge => {
                prop_assert!(t.tau123 > 1e-9);
                prop_assert_eq!(pairs.iter().filter(|&&x| zero(x)).count(), 2);
            }
            ClassTag::GeneralizedGhz | ClassTag::TrueGhz => {
                prop_assert!(t.tau123 > 1e-9 && pairs.iter().all(|&x| zero(x)));
            }
            ClassTag::Beechnut => {
                prop_assert!(zero(t.tau123) && pairs.iter().all(|&x| x > 1e-9));
            }
            ClassTag::Semigeneric | ClassTag::Generic => {}
        }
    }
}

#[test]
fn true_ghz_saturates_the_three_tangle() {
    let s = make_named(&entangle3::state::NamedState::TrueGhz).unwrap();
    let t = tangles(&s).unwrap();
    assert!((t.tau123 - 1.0).abs() < 1e-12);
    assert!((cayley(&s).norm() - 0.25).abs() < 1e-15);
}
