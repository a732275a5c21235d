//! Two-qubit Schmidt form and the five-parameter three-qubit normal form
//!
//! ```text
//! cos α |↑⟩(cos β |↑↑⟩ + sin β |↓↓⟩)
//!   + sin α |↓⟩(−t sin β |↑↑⟩ + t cos β |↓↓⟩ + s |↑↓⟩ + z |↓↑⟩)
//! ```
//!
//! with `α, β ∈ [0, π/4]`, `t, s ≥ 0` and `s² + t² + |z|² = 1`.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{svd2, C2x2, HermitianEigen, C64, ZERO};
use crate::state::{apply, index, LocalUnitary, PureState3};

/// Below this a modulus counts as zero when fixing residual phases.
pub const PHASE_TOL: f64 = 1e-9;
/// Relative gap below which the two eigenvalues of `ρ₁` count as equal.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LpsParams {
    pub alpha: f64,
    pub beta: f64,
    pub t: f64,
    pub s: f64,
    pub z: C64,
}

impl LpsParams {
    /// `(α, β, t, s, |z|)`.
    pub fn invariants(&self) -> [f64; 5] {
        [self.alpha, self.beta, self.t, self.s, self.z.norm()]
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.alpha, self.beta, self.t, self.s, self.z.re, self.z.im];
        if vals.iter().any(|x| !x.is_finite()) {
            return Err(Error::BadParams(
                "normal form parameters must be finite".into(),
            ));
        }
        for (name, a) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !(-1e-12..=FRAC_PI_4 + 1e-12).contains(&a) {
                return Err(Error::BadParams(format!("{name} = {a} outside [0, π/4]")));
            }
        }
        if self.t < 0.0 || self.s < 0.0 {
            return Err(Error::BadParams(format!(
                "t and s must be nonnegative, got t = {}, s = {}",
                self.t, self.s
            )));
        }
        let n = self.t * self.t + self.s * self.s + self.z.norm_sqr();
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::BadParams(format!(
                "s² + t² + |z|² = {n}, expected 1"
            )));
        }
        Ok(())
    }
}

/// Normal form parameters plus the local unitary carrying the input onto
/// `reconstruct(&params)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpsForm {
    pub params: LpsParams,
    pub transform: LocalUnitary,
}

/// `t = x · diag(p, q) · yᵀ` with `p ≥ q ≥ 0` and `x, y` unitary.
pub fn schmidt2(t: &C2x2) -> (f64, f64, C2x2, C2x2) {
    let d = svd2(t);
    (d.singular[0], d.singular[1], d.left, d.right.conj())
}

/// The literal normal-form state.
pub fn reconstruct(p: &LpsParams) -> Result<PureState3> {
    p.validate()?;
    let (ca, sa) = (p.alpha.cos(), p.alpha.sin());
    let (cb, sb) = (p.beta.cos(), p.beta.sin());
    let mut amps = [ZERO; 8];
    amps[index(0, 0, 0)] = (ca * cb).into();
    amps[index(0, 1, 1)] = (ca * sb).into();
    amps[index(1, 0, 0)] = (-sa * p.t * sb).into();
    amps[index(1, 1, 1)] = (sa * p.t * cb).into();
    amps[index(1, 0, 1)] = (sa * p.s).into();
    amps[index(1, 1, 0)] = p.z * sa;
    PureState3::new(amps).normalize()
}

fn rho1(s: &PureState3) -> C2x2 {
    let mut r = C2x2::zeros();
    for a in 0..2 {
        for b in 0..2 {
            r[(a, b)] = (0..4).map(|jk| s[4 * a + jk] * s[4 * b + jk].conj()).sum();
        }
    }
    r
}

/// Phase of `z`, or zero when `z` vanishes.
fn arg_or_zero(z: C64) -> f64 {
    if z.norm() < PHASE_TOL {
        0.0
    } else {
        z.arg()
    }
}

fn diag_phase(a: f64, b: f64) -> C2x2 {
    C2x2::diag([C64::from_polar(1.0, a), C64::from_polar(1.0, b)])
}

/// Normal form with particle 1's basis fixed by the rows of `u1`.
fn lps_with_basis(s: &PureState3, u1: C2x2) -> Result<LpsForm> {
    let rotated = s.apply_single(&u1, 1);
    let blocks = rotated.partition(crate::state::Axis::First);
    let (n0, n1) = (blocks.t1.frob_norm(), blocks.t2.frob_norm());
    let alpha = n1.atan2(n0).min(FRAC_PI_4);

    let d = svd2(&blocks.t1);
    let beta = d.singular[1].atan2(d.singular[0]);
    let v = d.left.adjoint();
    let w = d.right.transpose();
    let x = v * blocks.t2 * w.transpose();

    // Entry (j, k) of the second block picks up ξ + δⱼ + εₖ; entry (j, j)
    // of the first block picks up δⱼ + εⱼ.
    let tight = alpha.sin() < PHASE_TOL;
    let [xi, delta1, delta2, eps1, eps2] = if tight {
        [0.0; 5]
    } else {
        let x = x.scale_re(1.0 / alpha.sin());
        let (x11, x12, x21, x22) = (x[(0, 0)], x[(0, 1)], x[(1, 0)], x[(1, 1)]);
        let (a12, a21) = (arg_or_zero(x12), arg_or_zero(x21));
        if beta > PHASE_TOL {
            // δⱼ + εⱼ = 0; write Δ = δ₁ − δ₂ with δ₂ = 0.
            let t_tilde = x22 * beta.cos() - x11 * beta.sin();
            let (xi, big_delta) = if t_tilde.norm() < PHASE_TOL {
                (-(a12 + a21) / 2.0, (a21 - a12) / 2.0)
            } else {
                let xi = -t_tilde.arg();
                let d = if x12.norm() >= PHASE_TOL {
                    -a12 - xi
                } else {
                    xi + a21
                };
                (xi, d)
            };
            [xi, big_delta, 0.0, -big_delta, 0.0]
        } else {
            // Only δ₁ + ε₁ = 0 is pinned; take δ₁ = 0 and make all three
            // remaining entries real.
            let a22 = arg_or_zero(x22);
            let xi = a22 - a12 - a21;
            [xi, 0.0, -a21 - xi, 0.0, -a12 - xi]
        }
    };
    let u = diag_phase(0.0, xi) * u1;
    let v = diag_phase(delta1, delta2) * v;
    let w = diag_phase(eps1, eps2) * w;
    let g = LocalUnitary::from_u2(u, v, w)?;
    let out = apply(&g, s)?;

    let (sa, sb, cb) = (alpha.sin(), beta.sin(), beta.cos());
    let params = if tight {
        LpsParams {
            alpha,
            beta,
            t: 1.0,
            s: 0.0,
            z: ZERO,
        }
    } else {
        let blk = out
            .partition(crate::state::Axis::First)
            .t2
            .scale_re(1.0 / sa);
        let t = (blk[(1, 1)] * cb - blk[(0, 0)] * sb).re.max(0.0);
        let sv = blk[(0, 1)].re.max(0.0);
        let mut z = blk[(1, 0)];
        let n = (t * t + sv * sv + z.norm_sqr()).sqrt();
        z /= n;
        LpsParams {
            alpha,
            beta,
            t: t / n,
            s: sv / n,
            z,
        }
    };
    Ok(LpsForm {
        params,
        transform: g,
    })
}

/// Constructive normal form of a normalized state.
pub fn lps(s: &PureState3) -> Result<LpsForm> {
    s.require_normalized()?;
    let (lam, vecs) = rho1(s).eig_herm()?;
    let basis = |first: usize| {
        let (e0, e1) = (vecs.col(first), vecs.col(1 - first));
        C2x2::new(e0[0].conj(), e0[1].conj(), e1[0].conj(), e1[1].conj())
    };
    let primary = lps_with_basis(s, basis(0))?;
    if (lam[0] - lam[1]).abs() > TIE_TOL {
        return Ok(primary);
    }
    let swapped = lps_with_basis(s, basis(1))?;
    Ok(if swapped.params.beta < primary.params.beta - PHASE_TOL {
        swapped
    } else {
        primary
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{make_named, NamedState};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn params(alpha: f64, beta: f64, t: f64, s: f64, z: C64) -> LpsParams {
        LpsParams {
            alpha,
            beta,
            t,
            s,
            z,
        }
    }

    fn sample_state() -> PureState3 {
        let amps = [
            C64::new(0.3, 0.1),
            C64::new(-0.2, 0.4),
            C64::new(0.5, -0.3),
            C64::new(0.1, 0.2),
            C64::new(-0.4, 0.0),
            C64::new(0.2, -0.1),
            C64::new(0.0, 0.3),
            C64::new(0.25, 0.15),
        ];
        PureState3::new(amps).normalize().unwrap()
    }

    #[test]
    fn reconstruct_corners() {
        let s = reconstruct(&params(0.0, 0.0, 1.0, 0.0, ZERO)).unwrap();
        assert!(s.distance(&PureState3::basis(0, 0, 0)) < 1e-15);
        let ghz = reconstruct(&params(FRAC_PI_4, 0.0, 1.0, 0.0, ZERO)).unwrap();
        assert!(ghz.distance(&make_named(&NamedState::TrueGhz).unwrap()) < 1e-15);
    }

    #[test]
    fn reconstruct_rejects_bad_params() {
        assert!(reconstruct(&params(1.0, 0.0, 1.0, 0.0, ZERO)).is_err());
        assert!(reconstruct(&params(0.1, 0.1, -1.0, 0.0, ZERO)).is_err());
        assert!(reconstruct(&params(0.1, 0.1, 0.5, 0.5, ZERO)).is_err());
    }

    #[test]
    fn schmidt_round_trip() {
        let bell = C2x2::real(0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0);
        let (p, q, x, y) = schmidt2(&bell);
        assert!((p - FRAC_1_SQRT_2).abs() < 1e-15 && (q - FRAC_1_SQRT_2).abs() < 1e-15);
        let back = x * C2x2::from_real_diag([p, q]) * y.transpose();
        assert!(back.max_abs_diff(&bell) < 1e-15);
    }

    #[test]
    fn ghz_normal_form() {
        let f = lps(&make_named(&NamedState::TrueGhz).unwrap()).unwrap();
        let [a, b, t, s, z] = f.params.invariants();
        assert!((a - FRAC_PI_4).abs() < 1e-12);
        assert!(b.abs() < 1e-12 && (t - 1.0).abs() < 1e-12);
        assert!(s.abs() < 1e-12 && z.abs() < 1e-12);
    }

    #[test]
    fn bystander_has_vanishing_alpha() {
        let f = lps(&make_named(&NamedState::Bystander { beta: 0.4 }).unwrap()).unwrap();
        assert!(f.params.alpha.abs() < 1e-12);
        assert!((f.params.beta - 0.4).abs() < 1e-12);
    }

    #[test]
    fn transform_lands_on_reconstruction() {
        let s = sample_state();
        let f = lps(&s).unwrap();
        let image = apply(&f.transform, &s).unwrap();
        assert!(image.distance(&reconstruct(&f.params).unwrap()) < 1e-10);
    }

    #[test]
    fn normal_form_is_idempotent() {
        let f = lps(&sample_state()).unwrap();
        let g = lps(&reconstruct(&f.params).unwrap()).unwrap();
        for (x, y) in f.params.invariants().iter().zip(g.params.invariants()) {
            assert!((x - y).abs() < 1e-10);
        }
        assert!((f.params.z - g.params.z).norm() < 1e-10);
    }

    #[test]
    fn beta_zero_makes_block_real() {
        let p = params(0.5, 0.0, 0.6, 0.0, C64::new(0.0, 0.8));
        let f = lps(&reconstruct(&p).unwrap()).unwrap();
        assert!(f.params.z.im.abs() < 1e-12 && (f.params.z.re - 0.8).abs() < 1e-12);
        assert!((f.params.t - 0.6).abs() < 1e-12);
    }
}
