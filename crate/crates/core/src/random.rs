//! Random states and group elements for property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{C2x2, C64};
use crate::state::{LocalUnitary, Permutation3, PureState3};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// I.i.d. complex Gaussian amplitudes, normalized.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> PureState3 {
    loop {
        let s = PureState3::new(std::array::from_fn(|_| gaussian(rng)));
        if let Ok(s) = s.normalize() {
            return s;
        }
    }
}

/// Haar-distributed `SU(2)` from a uniform point on the 3-sphere.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> C2x2 {
    loop {
        let x: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-12 {
            let [a, b, c, d] = x.map(|v| v / n);
            return C2x2::new(
                C64::new(a, b),
                C64::new(c, d),
                C64::new(-c, d),
                C64::new(a, -b),
            );
        }
    }
}

pub fn random_local_unitary<R: Rng + ?Sized>(rng: &mut R) -> LocalUnitary {
    LocalUnitary {
        phase: rng.gen_range(0.0..std::f64::consts::TAU),
        u: haar_su2(rng),
        v: haar_su2(rng),
        w: haar_su2(rng),
    }
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R) -> Permutation3 {
    *Permutation3::all().choose(rng).expect("six permutations")
}
