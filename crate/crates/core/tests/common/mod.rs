#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use entangle3::classify::ClassTag;
use entangle3::linalg::C64;
use entangle3::state::NamedState;

/// A family representative at grid coordinates `u, v ∈ (0, 1)`, with the
/// class the classifier must report.
pub fn family_member(tag: ClassTag, u: f64, v: f64) -> NamedState {
    let c = |m: f64, a: f64| C64::from_polar(m, a);
    match tag {
        ClassTag::Product => NamedState::Product {
            angles: [u * PI, v * PI, (u - v) * FRAC_PI_2],
        },
        ClassTag::Bystander => NamedState::Bystander {
            beta: (0.05 + 0.9 * u) * FRAC_PI_4,
        },
        ClassTag::Slice => NamedState::Slice {
            p: c(1.0, 0.3),
            q: c(0.2 + 0.5 * u, 2.0 * v),
            r: c(0.15 + 0.3 * v, -1.3 * u),
        },
        ClassTag::SliceRidge => NamedState::SliceRidge {
            gamma: (0.05 + 0.9 * u) * FRAC_PI_2,
        },
        ClassTag::GeneralizedGhz => NamedState::Ghz {
            p: 1.0,
            q: 0.1 + 0.8 * u,
        },
        ClassTag::TrueGhz => NamedState::TrueGhz,
        ClassTag::Beechnut => NamedState::Beechnut {
            p: c(0.2 + u, 0.7 * v),
            q: c(0.3 + v, -2.0 * u),
            r: c(0.6, 1.1 * u + v),
        },
        ClassTag::Semigeneric => NamedState::Semigeneric {
            p: 0.5 + u,
            a: c(0.2 + 0.6 * v, 0.4),
            b: c(0.3 + 0.5 * u, -v),
            c: c(0.25 + 0.5 * u * v, 2.0),
            d: c(0.4 + 0.3 * v, 0.9 * u),
        },
        ClassTag::Generic => panic!("no named generic family"),
    }
}

pub const NAMED_TAGS: [ClassTag; 8] = [
    ClassTag::Product,
    ClassTag::Bystander,
    ClassTag::Slice,
    ClassTag::SliceRidge,
    ClassTag::GeneralizedGhz,
    ClassTag::TrueGhz,
    ClassTag::Beechnut,
    ClassTag::Semigeneric,
];

/// Grid coordinate `k` of `n`, strictly inside `(0, 1)`.
pub fn grid(k: usize, n: usize) -> f64 {
    (k as f64 + 0.5) / n as f64
}
