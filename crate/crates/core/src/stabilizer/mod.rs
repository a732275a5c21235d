//! Infinitesimal stabilizers in `U(1) × SU(2)³` (and `U(1) × SU(2)²` for two
//! qubits), computed as the numerical kernel of the realified linear system
//!
//! ```text
//! (φ δᵢₗ + aᵢₗ) T_ℓ + B Tᵢ + Tᵢ Cᵀ = 0
//! ```
//!
//! with `A, B, C` written in Pauli coordinates. One code path serves every
//! state; no case analysis happens here.

pub mod elements;

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{nullspace, C2x2, RMatrix, C64, I};
use crate::state::{apply, LocalUnitary, PureState3};

pub const DEFAULT_RANK_TOL: f64 = 1e-8;
pub const DEFAULT_VERIFY_TOL: f64 = 1e-10;

/// Dimension of `U(1) × SU(2)³`.
pub const GROUP_DIM: usize = 10;
/// Dimension of `U(1) × SU(2)²`.
pub const GROUP_DIM_2: usize = 7;

/// Element `(φ; A, B, C)` of the Lie algebra, hermitian traceless `A, B, C`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LieElement {
    pub phi: f64,
    pub a: C2x2,
    pub b: C2x2,
    pub c: C2x2,
}

impl LieElement {
    /// From the ten real coordinates `(φ, a₁..a₃, b₁..b₃, c₁..c₃)`.
    pub fn from_coords(x: &[f64]) -> Self {
        assert_eq!(x.len(), GROUP_DIM);
        Self {
            phi: x[0],
            a: C2x2::from_pauli_coords([x[1], x[2], x[3]]),
            b: C2x2::from_pauli_coords([x[4], x[5], x[6]]),
            c: C2x2::from_pauli_coords([x[7], x[8], x[9]]),
        }
    }

    pub fn coords(&self) -> [f64; GROUP_DIM] {
        let [a1, a2, a3] = self.a.pauli_coords();
        let [b1, b2, b3] = self.b.pauli_coords();
        let [c1, c2, c3] = self.c.pauli_coords();
        [self.phi, a1, a2, a3, b1, b2, b3, c1, c2, c3]
    }

    /// `(e^{iεφ}, e^{iεA}, e^{iεB}, e^{iεC})`.
    pub fn exp(&self, eps: f64) -> LocalUnitary {
        let e = |m: &C2x2| C2x2::su2_exp(m.pauli_coords().map(|x| x * eps));
        LocalUnitary {
            phase: eps * self.phi,
            u: e(&self.a),
            v: e(&self.b),
            w: e(&self.c),
        }
    }

    /// First-order change `δt / (iε)` of the state under this generator.
    pub fn action(&self, s: &PureState3) -> PureState3 {
        generator_action(&self.coords(), s)
    }
}

fn generator_action(x: &[f64; GROUP_DIM], s: &PureState3) -> PureState3 {
    let a = C2x2::from_pauli_coords([x[1], x[2], x[3]]);
    let b = C2x2::from_pauli_coords([x[4], x[5], x[6]]);
    let c = C2x2::from_pauli_coords([x[7], x[8], x[9]]);
    let mut out = *s.amps();
    let parts = [
        s.apply_single(&a, 1),
        s.apply_single(&b, 2),
        s.apply_single(&c, 3),
    ];
    for (n, z) in out.iter_mut().enumerate() {
        *z = *z * x[0] + parts[0][n] + parts[1][n] + parts[2][n];
    }
    PureState3::new(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerAlgebra {
    pub dim: usize,
    /// Orthonormal in the ten (or seven) real coordinates.
    #[serde(skip)]
    pub basis: Vec<LieElement>,
    /// Largest `‖δt‖` produced by a basis element.
    pub residual: f64,
    /// Rank of the linearized action, i.e. the orbit tangent dimension.
    pub rank: usize,
    /// Singular values of the realified system, descending.
    pub singular: Vec<f64>,
}

impl StabilizerAlgebra {
    /// The three smallest singular values, ascending.
    pub fn smallest_singular(&self) -> Vec<f64> {
        self.singular.iter().rev().take(3).copied().collect()
    }
}

fn realify(cols: &[Vec<C64>]) -> Result<RMatrix> {
    let real: Vec<Vec<f64>> = cols
        .iter()
        .map(|c| c.iter().flat_map(|z| [z.re, z.im]).collect())
        .collect();
    RMatrix::from_cols(&real)
}

/// The 16×10 real matrix mapping Lie coordinates to `δt / ε`.
pub fn linearized_action(s: &PureState3) -> Result<RMatrix> {
    let cols: Vec<Vec<C64>> = (0..GROUP_DIM)
        .map(|k| {
            let mut e = [0.0; GROUP_DIM];
            e[k] = 1.0;
            generator_action(&e, s)
                .amps()
                .iter()
                .map(|z| I * z)
                .collect()
        })
        .collect();
    realify(&cols)
}

/// Stabilizer Lie algebra of a normalized three-qubit state.
pub fn solve(s: &PureState3, tol: f64) -> Result<StabilizerAlgebra> {
    s.require_normalized()?;
    let m = linearized_action(s)?;
    let ns = nullspace(&m, tol)?;
    let basis: Vec<LieElement> = ns
        .kernel
        .iter()
        .map(|k| LieElement::from_coords(k))
        .collect();
    let residual = ns
        .kernel
        .iter()
        .map(|k| m.mul_vec(k).iter().map(|x| x * x).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    Ok(StabilizerAlgebra {
        dim: basis.len(),
        basis,
        residual,
        rank: ns.rank,
        singular: ns.singular,
    })
}

/// Two-qubit analogue: kernel of `θT + AT + TBᵀ = 0` over seven real
/// coordinates `(θ, a₁..a₃, b₁..b₃)`. Basis elements are reported as
/// `LieElement`s with `c = 0`.
pub fn solve2(t: &C2x2, tol: f64) -> Result<StabilizerAlgebra> {
    let n = t.frob_norm_sq();
    if (n - 1.0).abs() > crate::state::NORM_TOL {
        return Err(crate::error::Error::NotNormalized { norm_sq: n });
    }
    let paulis = C2x2::paulis();
    let mut cols: Vec<C2x2> = vec![*t];
    cols.extend(paulis.iter().map(|p| *p * *t));
    cols.extend(paulis.iter().map(|p| *t * p.transpose()));
    let cols: Vec<Vec<C64>> = cols
        .iter()
        .map(|m| m.0.iter().flatten().map(|z| I * z).collect())
        .collect();
    let m = realify(&cols)?;
    let ns = nullspace(&m, tol)?;
    let residual = ns
        .kernel
        .iter()
        .map(|k| m.mul_vec(k).iter().map(|x| x * x).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let basis = ns
        .kernel
        .iter()
        .map(|k| LieElement {
            phi: k[0],
            a: C2x2::from_pauli_coords([k[1], k[2], k[3]]),
            b: C2x2::from_pauli_coords([k[4], k[5], k[6]]),
            c: C2x2::zeros(),
        })
        .collect::<Vec<_>>();
    Ok(StabilizerAlgebra {
        dim: basis.len(),
        basis,
        residual,
        rank: ns.rank,
        singular: ns.singular,
    })
}

/// `‖apply(g, s) − s‖`.
pub fn element_residual(g: &LocalUnitary, s: &PureState3) -> Result<f64> {
    Ok(apply(g, s)?.distance(s))
}

/// True iff `g` fixes `s` to within `tol`.
pub fn verify_element(g: &LocalUnitary, s: &PureState3, tol: f64) -> bool {
    element_residual(g, s).is_ok_and(|r| r <= tol)
}

/// Stabilizer dimensions agree on `s` and on its image under `g`.
pub fn conjugation_check(s: &PureState3, g: &LocalUnitary) -> Result<bool> {
    let before = solve(s, DEFAULT_RANK_TOL)?.dim;
    let after = solve(&apply(g, s)?, DEFAULT_RANK_TOL)?.dim;
    Ok(before == after)
}
