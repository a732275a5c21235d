//! Seeded randomized checks. The summary holds counts only, so equal seeds
//! give byte-identical output.

use std::f64::consts::FRAC_PI_4;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use entangle3::classify::{classify3_with, ClassTag, Tolerances};
use entangle3::invariants::{invariant_vector, tangles};
use entangle3::linalg::C64;
use entangle3::normalform::lps;
use entangle3::random::{random_local_unitary, random_permutation, random_state};
use entangle3::stabilizer::{self, GROUP_DIM};
use entangle3::state::{apply, make_named, permute, NamedState, PureState3};

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<SuiteResult>,
    pub all_passed: bool,
}

fn suite<F: FnMut(&mut ChaCha8Rng) -> bool>(
    name: &'static str,
    samples: usize,
    rng: &mut ChaCha8Rng,
    mut check: F,
) -> SuiteResult {
    let passed = (0..samples).filter(|_| check(rng)).count();
    SuiteResult {
        name,
        passed,
        failed: samples - passed,
    }
}

/// A named-family representative with random parameters, and its class.
fn random_member(rng: &mut ChaCha8Rng, k: usize) -> (NamedState, ClassTag) {
    let mut m = || rng.gen_range(0.2..1.0);
    match k % 8 {
        0 => (
            NamedState::Product {
                angles: [m(), m(), m()],
            },
            ClassTag::Product,
        ),
        1 => (
            NamedState::Bystander {
                beta: 0.9 * m() * FRAC_PI_4,
            },
            ClassTag::Bystander,
        ),
        2 => (
            NamedState::Slice {
                p: 1.2.into(),
                q: m().into(),
                r: (0.5 * m()).into(),
            },
            ClassTag::Slice,
        ),
        3 => (NamedState::SliceRidge { gamma: m() }, ClassTag::SliceRidge),
        4 => (
            NamedState::Ghz {
                p: 1.0,
                q: 0.9 * m(),
            },
            ClassTag::GeneralizedGhz,
        ),
        5 => (NamedState::TrueGhz, ClassTag::TrueGhz),
        6 => (
            NamedState::Beechnut {
                p: C64::from_polar(m(), 1.0),
                q: m().into(),
                r: m().into(),
            },
            ClassTag::Beechnut,
        ),
        _ => (
            NamedState::Semigeneric {
                p: m(),
                a: m().into(),
                b: m().into(),
                c: m().into(),
                d: m().into(),
            },
            ClassTag::Semigeneric,
        ),
    }
}

fn lps_agrees(s: &PureState3, t: &PureState3) -> bool {
    match (lps(s), lps(t)) {
        (Ok(a), Ok(b)) => a
            .params
            .invariants()
            .iter()
            .zip(b.params.invariants())
            .all(|(x, y)| (x - y).abs() < 1e-7),
        _ => false,
    }
}

pub fn run(samples: usize, seed: u64, tols: Tolerances) -> Summary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suites = Vec::new();

    suites.push(suite("genericity", samples, &mut rng, |rng| {
        stabilizer::solve(&random_state(rng), tols.rank).is_ok_and(|a| a.dim == 0)
    }));

    suites.push(suite("orbit-stabilizer", samples, &mut rng, |rng| {
        stabilizer::solve(&random_state(rng), tols.rank).is_ok_and(|a| a.dim + a.rank == GROUP_DIM)
    }));

    suites.push(suite("invariant-vector", samples, &mut rng, |rng| {
        let s = random_state(rng);
        let g = random_local_unitary(rng);
        apply(&g, &s).is_ok_and(|t| invariant_vector(&s).max_abs_diff(&invariant_vector(&t)) < 1e-9)
    }));

    suites.push(suite("tangle-permutation", samples, &mut rng, |rng| {
        let s = random_state(rng);
        let p = random_permutation(rng);
        let t = permute(&p, &s);
        match (tangles(&s), tangles(&t)) {
            (Ok(a), Ok(b)) => (a.tau123 - b.tau123).abs() < 1e-10,
            _ => false,
        }
    }));

    suites.push(suite("normal-form", samples, &mut rng, |rng| {
        let s = random_state(rng);
        let g = random_local_unitary(rng);
        apply(&g, &s).is_ok_and(|t| lps_agrees(&s, &t))
    }));

    let mut k = 0;
    suites.push(suite("family-invariance", samples, &mut rng, |rng| {
        let (family, tag) = random_member(rng, k);
        k += 1;
        let Ok(s) = make_named(&family) else {
            return false;
        };
        let g = random_local_unitary(rng);
        let p = random_permutation(rng);
        let Ok(image) = apply(&g, &s).map(|t| permute(&p, &t)) else {
            return false;
        };
        classify3_with(&image, tols).is_ok_and(|c| c.tag == tag)
    }));

    let all_passed = suites.iter().all(|s| s.failed == 0);
    Summary {
        seed,
        samples,
        suites,
        all_passed,
    }
}
