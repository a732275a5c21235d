use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};
use crate::normalform::{self, LpsParams};

use super::{index, PureState3};

/// The named families of exceptional states, plus the two generic-adjacent
/// forms used as test fixtures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedState {
    /// `⊗ₐ (cos θₐ|↑⟩ + sin θₐ|↓⟩)`.
    Product {
        angles: [f64; 3],
    },
    /// `|↑⟩(cos β|↑↑⟩ + sin β|↓↓⟩)`, `β ∈ (0, π/4]`.
    Bystander {
        beta: f64,
    },
    /// `p|↑↑↑⟩ + q|↓↓↓⟩ + r|↓↓↑⟩`, all nonzero.
    Slice {
        p: C64,
        q: C64,
        r: C64,
    },
    /// Slice state with `|p|² = |q|² + |r|² = 1/2`:
    /// `(|↑↑↑⟩ + cos γ|↓↓↓⟩ + sin γ|↓↓↑⟩)/√2`, `γ ∈ (0, π/2)`.
    SliceRidge {
        gamma: f64,
    },
    /// `p|↑↑↑⟩ + q|↓↓↓⟩`, `p, q > 0`.
    Ghz {
        p: f64,
        q: f64,
    },
    TrueGhz,
    /// `p|↑↓↓⟩ + q|↓↑↓⟩ + r|↓↓↑⟩`, all nonzero.
    Beechnut {
        p: C64,
        q: C64,
        r: C64,
    },
    /// `T₁ = diag(p, 0)`, `T₂ = (a, b)ᵀ(c, d)` with `p > 0` and `a, b, c, d ≠ 0`.
    Semigeneric {
        p: f64,
        a: C64,
        b: C64,
        c: C64,
        d: C64,
    },
    Lps(LpsParams),
}

impl NamedState {
    pub fn family(&self) -> &'static str {
        match self {
            NamedState::Product { .. } => "product",
            NamedState::Bystander { .. } => "bystander",
            NamedState::Slice { .. } => "slice",
            NamedState::SliceRidge { .. } => "slice-ridge",
            NamedState::Ghz { .. } => "ghz",
            NamedState::TrueGhz => "true-ghz",
            NamedState::Beechnut { .. } => "beechnut",
            NamedState::Semigeneric { .. } => "semigeneric",
            NamedState::Lps(_) => "lps",
        }
    }
}

fn nonzero(name: &str, z: C64) -> Result<()> {
    if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::BadParams(format!(
            "{name} must be finite and nonzero, got {z}"
        )));
    }
    Ok(())
}

fn from_terms(terms: &[((usize, usize, usize), C64)]) -> Result<PureState3> {
    let mut amps = [ZERO; 8];
    for &((i, j, k), z) in terms {
        amps[index(i, j, k)] += z;
    }
    PureState3::new(amps).normalize()
}

/// Build the normalized representative of a named family.
pub fn make_named(family: &NamedState) -> Result<PureState3> {
    match *family {
        NamedState::Product { angles } => {
            if angles.iter().any(|a| !a.is_finite()) {
                return Err(Error::BadParams("product angles must be finite".into()));
            }
            let q = angles.map(|a| [a.cos(), a.sin()]);
            let mut amps = [ZERO; 8];
            for (idx, slot) in amps.iter_mut().enumerate() {
                let b = super::bits(idx);
                *slot = C64::new(q[0][b[0]] * q[1][b[1]] * q[2][b[2]], 0.0);
            }
            PureState3::new(amps).normalize()
        }
        NamedState::Bystander { beta } => {
            if !(beta > 0.0 && beta <= FRAC_PI_4 + 1e-12) {
                return Err(Error::BadParams(format!(
                    "bystander needs β in (0, π/4], got {beta}"
                )));
            }
            from_terms(&[
                ((0, 0, 0), beta.cos().into()),
                ((0, 1, 1), beta.sin().into()),
            ])
        }
        NamedState::Slice { p, q, r } => {
            nonzero("p", p)?;
            nonzero("q", q)?;
            nonzero("r", r)?;
            from_terms(&[((0, 0, 0), p), ((1, 1, 1), q), ((1, 1, 0), r)])
        }
        NamedState::SliceRidge { gamma } => {
            if !(gamma > 0.0 && gamma < std::f64::consts::FRAC_PI_2) {
                return Err(Error::BadParams(format!(
                    "slice ridge needs γ in (0, π/2), got {gamma}"
                )));
            }
            from_terms(&[
                ((0, 0, 0), 1.0.into()),
                ((1, 1, 1), gamma.cos().into()),
                ((1, 1, 0), gamma.sin().into()),
            ])
        }
        NamedState::Ghz { p, q } => {
            if !(p > 0.0 && q > 0.0 && p.is_finite() && q.is_finite()) {
                return Err(Error::BadParams(format!(
                    "GHZ needs p, q > 0, got ({p}, {q})"
                )));
            }
            from_terms(&[((0, 0, 0), p.into()), ((1, 1, 1), q.into())])
        }
        NamedState::TrueGhz => from_terms(&[((0, 0, 0), 1.0.into()), ((1, 1, 1), 1.0.into())]),
        NamedState::Beechnut { p, q, r } => {
            nonzero("p", p)?;
            nonzero("q", q)?;
            nonzero("r", r)?;
            from_terms(&[((0, 1, 1), p), ((1, 0, 1), q), ((1, 1, 0), r)])
        }
        NamedState::Semigeneric { p, a, b, c, d } => {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::BadParams(format!(
                    "semigeneric needs p > 0, got {p}"
                )));
            }
            for (n, z) in [("a", a), ("b", b), ("c", c), ("d", d)] {
                nonzero(n, z)?;
            }
            from_terms(&[
                ((0, 0, 0), p.into()),
                ((1, 0, 0), a * c),
                ((1, 0, 1), a * d),
                ((1, 1, 0), b * c),
                ((1, 1, 1), b * d),
            ])
        }
        NamedState::Lps(params) => normalform::reconstruct(&params),
    }
}
