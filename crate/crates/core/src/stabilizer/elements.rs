//! Closed-form finite stabilizer elements of the exceptional families.
//!
//! Each constructor returns a `LocalUnitary` in `U(1) × SU(2)³`. Whether it
//! fixes a given state is for `verify_element` to decide; the constructors
//! only validate unitarity.

use std::f64::consts::FRAC_PI_2;

use crate::error::Result;
use crate::linalg::{C2x2, C64, ZERO};
use crate::state::LocalUnitary;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Phase angle of the sign, `0` or `π`.
    fn angle(self) -> f64 {
        match self {
            Sign::Plus => 0.0,
            Sign::Minus => std::f64::consts::PI,
        }
    }
}

fn ez(theta: f64) -> C2x2 {
    C2x2::z_rotation(theta)
}

/// `[[0, e^{iθ}], [−e^{−iθ}, 0]]`.
pub fn antidiagonal(theta: f64) -> C2x2 {
    C2x2::new(
        ZERO,
        C64::from_polar(1.0, theta),
        -C64::from_polar(1.0, -theta),
        ZERO,
    )
}

/// `iσ₂ e^{iθσ₃}`.
pub fn flip(theta: f64) -> C2x2 {
    antidiagonal(-theta)
}

/// `|↑↑↑⟩`: `(e^{iφ}, e^{iθ₁σ₃}, e^{iθ₂σ₃}, e^{−i(φ+θ₁+θ₂)σ₃})`.
pub fn product(phi: f64, theta1: f64, theta2: f64) -> Result<LocalUnitary> {
    LocalUnitary::new(phi, ez(theta1), ez(theta2), ez(-(phi + theta1 + theta2)))
}

/// `|↑⟩(cos β|↑↑⟩ + sin β|↓↓⟩)`: `(e^{iφ}, e^{−iφσ₃}, e^{iθσ₃}, e^{−iθσ₃})`.
pub fn bystander(phi: f64, theta: f64) -> Result<LocalUnitary> {
    LocalUnitary::new(phi, ez(-phi), ez(theta), ez(-theta))
}

/// Slice state `p|↑↑↑⟩ + q|↓↓↓⟩ + r|↓↓↑⟩`:
/// `(ε₁, e^{iθσ₃}, ε₂ e^{−iθσ₃}, ε₁ε₂ 1)`.
pub fn slice(eps1: Sign, eps2: Sign, theta: f64) -> Result<LocalUnitary> {
    let w = C2x2::identity().scale_re(eps1.value() * eps2.value());
    LocalUnitary::new(
        eps1.angle(),
        ez(theta),
        ez(-theta).scale_re(eps2.value()),
        w,
    )
}

/// Extra elements of a slice state on the ridge `|p|² = |q|² + |r|²`, with
/// `p > 0` and `χ = arg r`. `W` fails the unitarity check off the ridge.
pub fn slice_flip(
    p: f64,
    q: C64,
    r: C64,
    eps1: Sign,
    eps2: Sign,
    theta: f64,
) -> Result<LocalUnitary> {
    let chi = r.arg();
    let i = C64::i();
    let e = C64::from_polar(1.0, chi);
    let w = C2x2::new(
        -i * r.norm() / p,
        -i * q.conj() * e / p,
        -i * q * e.conj() / p,
        i * r.norm() / p,
    )
    .scale_re(eps1.value() * eps2.value());
    LocalUnitary::new(
        eps1.angle() + FRAC_PI_2,
        antidiagonal(theta),
        antidiagonal(-(theta + chi)).scale_re(eps2.value()),
        w,
    )
}

/// Extra elements of the ridge state `(|↑↑↑⟩ + cos γ|↓↓↓⟩ + sin γ|↓↓↑⟩)/√2`.
pub fn ridge_flip(gamma: f64, eps1: Sign, eps2: Sign, theta: f64) -> Result<LocalUnitary> {
    let (s, c) = gamma.sin_cos();
    let w = C2x2::real(s, c, c, -s).scale(C64::new(0.0, -eps1.value() * eps2.value()));
    LocalUnitary::new(
        eps1.angle() + FRAC_PI_2,
        antidiagonal(theta),
        antidiagonal(-theta).scale_re(eps2.value()),
        w,
    )
}

/// GHZ family `p|↑↑↑⟩ + q|↓↓↓⟩`: `(±1, e^{iθσ₃}, e^{iκσ₃}, e^{iησ₃})`.
/// Stabilizes iff `θ + κ + η ≡ 0` for `+1` and `≡ π` for `−1`, mod `2π`.
pub fn ghz_diagonal(sign: Sign, theta: f64, kappa: f64, eta: f64) -> Result<LocalUnitary> {
    LocalUnitary::new(sign.angle(), ez(theta), ez(kappa), ez(eta))
}

/// True GHZ state: `(±i, iσ₂e^{iθσ₃}, iσ₂e^{iκσ₃}, iσ₂e^{iησ₃})`.
/// Stabilizes iff `θ + κ + η ≡ ±π/2` (mod `2π`), the sign matching `±i`.
pub fn true_ghz_flip(sign: Sign, theta: f64, kappa: f64, eta: f64) -> Result<LocalUnitary> {
    LocalUnitary::new(
        sign.angle() + FRAC_PI_2,
        flip(theta),
        flip(kappa),
        flip(eta),
    )
}

/// `true_ghz_flip` with `η` chosen to satisfy the phase condition.
pub fn true_ghz_flip_on_shell(sign: Sign, theta: f64, kappa: f64) -> Result<LocalUnitary> {
    true_ghz_flip(sign, theta, kappa, sign.value() * FRAC_PI_2 - theta - kappa)
}

/// Beechnut `p|↑↓↓⟩ + q|↓↑↓⟩ + r|↓↓↑⟩`: `(e^{iφ}, e^{iφσ₃}, e^{iφσ₃}, e^{iφσ₃})`.
pub fn beechnut(phi: f64) -> Result<LocalUnitary> {
    LocalUnitary::new(phi, ez(phi), ez(phi), ez(phi))
}

/// Beechnut in the form `w|↑↑↑⟩ + b|↓↑↓⟩ + c|↓↓↑⟩`:
/// `(e^{iφ}, e^{iφσ₃}, e^{−iφσ₃}, e^{−iφσ₃})`.
pub fn beechnut_first_block(phi: f64) -> Result<LocalUnitary> {
    LocalUnitary::new(phi, ez(phi), ez(-phi), ez(-phi))
}
