//! Named states against values computed independently in this file.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_8, LN_2};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use entangle3::classify::{classify3, ClassTag, DEFAULT_CLASS_TOL};
use entangle3::invariants::{
    entropy, invariant_vector, jacobian_rank, kempe, reduce, reduce1, DensityMatrix,
    ReducedDensity, Subsystem, DEFAULT_JACOBIAN_TOL,
};
use entangle3::linalg::{nullspace, C2x2, C4x4, RMatrix, C64};
use entangle3::normalform::{lps, reconstruct, LpsParams};
use entangle3::random::random_state;
use entangle3::stabilizer::{solve, DEFAULT_RANK_TOL};
use entangle3::state::{index, make_named, permute, Axis, NamedState, Permutation3, PureState3};

const ZERO: C64 = C64::new(0.0, 0.0);

fn ghz(p: f64, q: f64) -> PureState3 {
    make_named(&NamedState::Ghz { p, q }).unwrap()
}

/// `Σ_{ijk, i'j'} t_{ijk} t̄_{i'j'k} …` written as explicit sums over indices.
fn kempe_by_sums(s: &PureState3) -> f64 {
    let t = |i, j, k| s.amp(i, j, k);
    let rho1 = |a: usize, b: usize| -> C64 {
        (0..4)
            .map(|jk| t(a, jk / 2, jk % 2) * t(b, jk / 2, jk % 2).conj())
            .sum()
    };
    let rho2 = |a: usize, b: usize| -> C64 {
        (0..4)
            .map(|ik| t(ik / 2, a, ik % 2) * t(ik / 2, b, ik % 2).conj())
            .sum()
    };
    let rho12 = |i: usize, j: usize, k: usize, l: usize| -> C64 {
        (0..2).map(|m| t(i, j, m) * t(k, l, m).conj()).sum()
    };
    let mut acc = ZERO;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    acc += rho1(i, k) * rho2(j, l) * rho12(k, l, i, j);
                }
            }
        }
    }
    acc.re
}

#[test]
fn ghz_pair_density_is_diagonal() {
    let (p, q) = (0.8, 0.6);
    let rho = reduce(&ghz(p, q), Subsystem::Pair(1, 2));
    let DensityMatrix::Pair(m) = rho.matrix else {
        panic!("pair reduction expected")
    };
    let want = C4x4::from_real_diag([p * p, 0.0, 0.0, q * q]);
    assert!(m.max_abs_diff(&want) < 1e-15);
    let one = reduce1(&ghz(FRAC_1_SQRT_2, FRAC_1_SQRT_2), 1);
    assert!(one.max_abs_diff(&C2x2::from_real_diag([0.5, 0.5])) < 1e-15);
}

#[test]
fn entropy_of_a_diagonal_pair() {
    for beta in [0.1, FRAC_PI_8, 0.7] {
        let (c2, s2) = (beta.cos().powi(2), beta.sin().powi(2));
        let rho = ReducedDensity {
            subsystem: Subsystem::Single(1),
            matrix: DensityMatrix::Single(C2x2::from_real_diag([c2, s2])),
        };
        let want = -c2 * c2.ln() - s2 * s2.ln();
        assert!((entropy(&rho).unwrap() - want).abs() < 1e-14);
    }
    let mixed = ReducedDensity {
        subsystem: Subsystem::Single(2),
        matrix: DensityMatrix::Single(C2x2::from_real_diag([0.5, 0.5])),
    };
    assert!((entropy(&mixed).unwrap() - LN_2).abs() < 1e-15);
}

#[test]
fn kempe_matches_index_sums() {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..50 {
        let s = random_state(&mut r);
        assert!((kempe(&s) - kempe_by_sums(&s)).abs() < 1e-13);
    }
    assert!((kempe(&ghz(FRAC_1_SQRT_2, FRAC_1_SQRT_2)) - 0.25).abs() < 1e-15);
}

#[test]
fn invariant_vectors_of_named_states() {
    let v = invariant_vector(&PureState3::basis(0, 0, 0)).0;
    assert_eq!(v, [1.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
    let v = invariant_vector(&ghz(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).0;
    let want = [1.0, 0.5, 0.5, 0.5, 0.25, 1.0];
    for k in 0..6 {
        assert!((v[k] - want[k]).abs() < 1e-14, "{v:?}");
    }
}

#[test]
fn degenerate_states_lose_jacobian_rank() {
    for s in [
        ghz(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        PureState3::basis(0, 0, 0),
    ] {
        assert!(jacobian_rank(&s, DEFAULT_JACOBIAN_TOL).unwrap().rank <= 5);
    }
}

#[test]
fn classifier_on_normal_form_corners() {
    let s = reconstruct(&LpsParams {
        alpha: 0.5,
        beta: 0.0,
        t: 1.0,
        s: 0.0,
        z: ZERO,
    })
    .unwrap();
    assert_eq!(
        classify3(&s, DEFAULT_CLASS_TOL).unwrap().tag,
        ClassTag::GeneralizedGhz
    );
    let s = reconstruct(&LpsParams {
        alpha: FRAC_PI_4,
        beta: 0.0,
        t: 1.0,
        s: 0.0,
        z: ZERO,
    })
    .unwrap();
    assert_eq!(
        classify3(&s, DEFAULT_CLASS_TOL).unwrap().tag,
        ClassTag::TrueGhz
    );

    let mut amps = [ZERO; 8];
    amps[index(0, 0, 0)] = C64::new(FRAC_1_SQRT_2, 0.0);
    amps[index(1, 1, 1)] = C64::new(0.3, 0.4);
    amps[index(0, 1, 1)] = C64::new(0.0, (0.5f64 - 0.25).sqrt());
    let ridge = PureState3::new(amps).normalize().unwrap();
    assert_eq!(
        classify3(&ridge, DEFAULT_CLASS_TOL).unwrap().tag,
        ClassTag::SliceRidge
    );

    let mut r = ChaCha8Rng::seed_from_u64(22);
    let c = classify3(&random_state(&mut r), DEFAULT_CLASS_TOL).unwrap();
    assert_eq!((c.tag, c.stab_dim), (ClassTag::Generic, 0));
}

#[test]
fn normal_form_reference_points() {
    let f = lps(&make_named(&NamedState::Bystander { beta: 0.4 }).unwrap()).unwrap();
    assert!(f.params.alpha.abs() < 1e-12);

    let f = lps(&ghz(FRAC_1_SQRT_2, FRAC_1_SQRT_2)).unwrap().params;
    let got = f.invariants();
    let want = [FRAC_PI_4, 0.0, 1.0, 0.0, 0.0];
    for k in 0..5 {
        assert!((got[k] - want[k]).abs() < 1e-12, "{got:?}");
    }

    let origin = reconstruct(&LpsParams {
        alpha: 0.0,
        beta: 0.0,
        t: 0.6,
        s: 0.8,
        z: ZERO,
    })
    .unwrap();
    assert!(origin.distance(&PureState3::basis(0, 0, 0)) < 1e-15);
    let g = reconstruct(&LpsParams {
        alpha: FRAC_PI_4,
        beta: 0.0,
        t: 1.0,
        s: 0.0,
        z: ZERO,
    })
    .unwrap();
    assert!(g.distance(&ghz(FRAC_1_SQRT_2, FRAC_1_SQRT_2)) < 1e-15);

    let p = LpsParams {
        alpha: 0.3,
        beta: 0.2,
        t: 0.6,
        s: 0.48,
        z: C64::new(0.3, 0.56),
    };
    let n = p.t * p.t + p.s * p.s + p.z.norm_sqr();
    let p = LpsParams {
        t: p.t / n.sqrt(),
        s: p.s / n.sqrt(),
        z: p.z / n.sqrt(),
        ..p
    };
    assert!((reconstruct(&p).unwrap().norm_sq() - 1.0).abs() < 1e-12);
}

#[test]
fn partitions_follow_relabelling() {
    let mut r = ChaCha8Rng::seed_from_u64(23);
    let s = random_state(&mut r);
    for p in Permutation3::all() {
        let q = permute(&p, &s);
        for axis in Axis::ALL {
            let (row, col) = axis.others();
            let image = Axis::from_particle(p.image(axis.particle())).unwrap();
            let (before, after) = (s.partition(axis), q.partition(image));
            for sel in 0..2 {
                let want = if p.image(row) < p.image(col) {
                    *before.get(sel)
                } else {
                    before.get(sel).transpose()
                };
                assert_eq!(*after.get(sel), want);
            }
        }
    }
}

#[test]
fn stabilizer_of_a_normal_form_ghz() {
    let s = reconstruct(&LpsParams {
        alpha: 0.5,
        beta: 0.0,
        t: 1.0,
        s: 0.0,
        z: ZERO,
    })
    .unwrap();
    assert_eq!(solve(&s, DEFAULT_RANK_TOL).unwrap().dim, 2);
}

/// Central differences of `f` along the sixteen real coordinates, each
/// perturbed state renormalized.
fn sphere_jacobian<const K: usize>(
    s: &PureState3,
    f: impl Fn(&PureState3) -> [f64; K],
) -> Vec<Vec<f64>> {
    let h = 1e-6;
    let x0 = s.to_real_coords();
    let mut cols = vec![vec![0.0; 16]; K];
    for j in 0..16 {
        let (mut xp, mut xm) = (x0, x0);
        xp[j] += h;
        xm[j] -= h;
        let fp = f(&PureState3::from_real_coords(&xp).normalize().unwrap());
        let fm = f(&PureState3::from_real_coords(&xm).normalize().unwrap());
        for i in 0..K {
            cols[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    cols
}

fn rank(cols: &[Vec<f64>]) -> usize {
    nullspace(&RMatrix::from_cols(cols).unwrap(), 1e-5)
        .unwrap()
        .rank
}

// `t² + s² + |z|² = 1` ties three of the moduli together, so the five
// independent orbit coordinates are `(α, β, t, s, arg z)`; `arg z` is an
// invariant whenever `t` and `s` are both nonzero.
#[test]
fn normal_form_parameters_carry_five_independent_invariants() {
    let mut r = ChaCha8Rng::seed_from_u64(24);
    let moduli = |s: &PureState3| lps(s).unwrap().params.invariants();
    let coords = |s: &PureState3| {
        let p = lps(s).unwrap().params;
        [p.alpha, p.beta, p.t, p.s, p.z.arg()]
    };
    let nonnorm = |s: &PureState3| {
        let v = invariant_vector(s).0;
        [v[1], v[2], v[3], v[4], v[5]]
    };
    for _ in 0..10 {
        let s = random_state(&mut r);
        assert_eq!(rank(&sphere_jacobian(&s, moduli)), 4);
        let jp = sphere_jacobian(&s, coords);
        let ji = sphere_jacobian(&s, nonnorm);
        assert_eq!(rank(&jp), 5);
        assert_eq!(rank(&ji), 5);
        let both: Vec<Vec<f64>> = jp.iter().chain(&ji).cloned().collect();
        assert_eq!(
            rank(&both),
            5,
            "parameters and invariants span different directions"
        );
    }
}
