//! Local-unitary invariants: reductions, entropies, tangles and the Jacobian
//! rank of the six-invariant map.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{C2x2, C4x4, HermitianEigen, RMatrix, C64, ZERO};
use crate::state::{bits, PureState3};

/// Eigenvalues of a density matrix may dip this far below zero.
pub const EIGEN_SLACK: f64 = 1e-10;
pub const JACOBIAN_STEP: f64 = 1e-5;
pub const DEFAULT_JACOBIAN_TOL: f64 = 1e-6;

/// One particle or an ordered pair, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subsystem {
    Single(usize),
    Pair(usize, usize),
}

impl Subsystem {
    pub fn new(particles: &[usize]) -> Result<Self> {
        let ok = |p: usize| (1..=3).contains(&p);
        match *particles {
            [a] if ok(a) => Ok(Subsystem::Single(a)),
            [a, b] if ok(a) && ok(b) && a != b => Ok(Subsystem::Pair(a.min(b), a.max(b))),
            _ => Err(Error::BadParams(format!(
                "subsystem must be one particle or two distinct particles in 1..=3, got {particles:?}"
            ))),
        }
    }

    pub fn particles(&self) -> Vec<usize> {
        match *self {
            Subsystem::Single(a) => vec![a],
            Subsystem::Pair(a, b) => vec![a, b],
        }
    }

    /// The particle(s) traced out.
    pub fn complement(&self) -> Vec<usize> {
        let keep = self.particles();
        (1..=3).filter(|p| !keep.contains(p)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DensityMatrix {
    Single(C2x2),
    Pair(C4x4),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedDensity {
    pub subsystem: Subsystem,
    pub matrix: DensityMatrix,
}

impl ReducedDensity {
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(match &self.matrix {
            DensityMatrix::Single(m) => m.eig_herm()?.0.to_vec(),
            DensityMatrix::Pair(m) => m.eig_herm()?.0.to_vec(),
        })
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        match &self.matrix {
            DensityMatrix::Single(m) => m.frob_norm_sq(),
            DensityMatrix::Pair(m) => m.frob_norm_sq(),
        }
    }

    pub fn trace(&self) -> f64 {
        match &self.matrix {
            DensityMatrix::Single(m) => m.trace().re,
            DensityMatrix::Pair(m) => m.trace().re,
        }
    }
}

/// Single-particle reduction `ρ_a`.
pub fn reduce1(s: &PureState3, a: usize) -> C2x2 {
    let pos = a - 1;
    let mut r = C2x2::zeros();
    for (m, &x) in s.amps().iter().enumerate() {
        for (n, &y) in s.amps().iter().enumerate() {
            let (bm, bn) = (bits(m), bits(n));
            let rest_equal = (0..3).all(|p| p == pos || bm[p] == bn[p]);
            if rest_equal {
                r[(bm[pos], bn[pos])] += x * y.conj();
            }
        }
    }
    r
}

/// Conditional pair states `v_k`, one per value `k` of the traced
/// particle, indexed `2·i_a + i_b`. `ρ_ab = Σ_k v_k v_kᴴ`.
fn conditional_pair(s: &PureState3, a: usize, b: usize) -> [[C64; 4]; 2] {
    let c = 6 - a - b;
    let mut v = [[ZERO; 4]; 2];
    for (n, &x) in s.amps().iter().enumerate() {
        let bn = bits(n);
        v[bn[c - 1]][2 * bn[a - 1] + bn[b - 1]] = x;
    }
    v
}

/// Pair reduction `ρ_ab` with `a < b`, indexed `2·i_a + i_b`.
pub fn reduce2(s: &PureState3, a: usize, b: usize) -> C4x4 {
    let v = conditional_pair(s, a, b);
    let mut r = C4x4::zeros();
    for vk in &v {
        for i in 0..4 {
            for j in 0..4 {
                r[(i, j)] += vk[i] * vk[j].conj();
            }
        }
    }
    r
}

/// Partial trace over the complement of `sub`.
pub fn reduce(s: &PureState3, sub: Subsystem) -> ReducedDensity {
    let matrix = match sub {
        Subsystem::Single(a) => DensityMatrix::Single(reduce1(s, a)),
        Subsystem::Pair(a, b) => DensityMatrix::Pair(reduce2(s, a, b)),
    };
    ReducedDensity {
        subsystem: sub,
        matrix,
    }
}

/// `−Σ λ ln λ` in nats, `0 ln 0 = 0`.
pub fn entropy(rho: &ReducedDensity) -> Result<f64> {
    let lam = rho.eigenvalues()?;
    if let Some(bad) = lam
        .iter()
        .find(|&&l| !(-EIGEN_SLACK..=1.0 + EIGEN_SLACK).contains(&l))
    {
        return Err(Error::NotDensity(format!(
            "eigenvalue {bad} outside [0, 1]"
        )));
    }
    let s: f64 = lam
        .iter()
        .map(|&l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum();
    Ok(s.max(0.0))
}

/// Pair tangle for a normalized state.
///
/// With `S = Vᵀ (σ_y ⊗ σ_y) V` built from the two conditional pair states,
/// `ρ ρ̃ = V S̄ Vᵀ (σ_y ⊗ σ_y)` shares its nonzero spectrum with `SᴴS`, so
/// the square roots of its eigenvalues are the singular values of `S` and
/// `τ = (σ₁ − σ₂)² = ‖S‖² − 2|det S|`.
pub fn two_tangle(s: &PureState3, a: usize, b: usize) -> Result<f64> {
    s.require_normalized()?;
    let (a, b) = check_pair(a, b)?;
    let v = conditional_pair(s, a, b);
    // σ_y ⊗ σ_y maps (x₀, x₁, x₂, x₃) to (−x₃, x₂, x₁, −x₀).
    let flip = |x: &[C64; 4]| [-x[3], x[2], x[1], -x[0]];
    let mut m = C2x2::zeros();
    for k in 0..2 {
        let fk = flip(&v[k]);
        for l in 0..2 {
            m[(l, k)] = (0..4).map(|i| v[l][i] * fk[i]).sum();
        }
    }
    Ok((m.frob_norm_sq() - 2.0 * m.det().norm()).max(0.0))
}

fn check_pair(a: usize, b: usize) -> Result<(usize, usize)> {
    match Subsystem::new(&[a, b])? {
        Subsystem::Pair(a, b) => Ok((a, b)),
        Subsystem::Single(_) => unreachable!("two particles requested"),
    }
}

/// Tangle of a two-qubit density matrix from the spectrum of
/// `ρ (ρ − ρ_A ⊗ 1 − 1 ⊗ ρ_B + 1)`, evaluated as the spectrum of the
/// hermitian `√ρ ρ̃ √ρ`.
pub fn two_tangle_from_density(rho: &C4x4) -> Result<f64> {
    let (lam, vecs) = rho.eig_herm()?;
    let root = vecs * C4x4::from_real_diag(lam.map(|l| l.max(0.0).sqrt())) * vecs.adjoint();
    let (mut ra, mut rb) = (C2x2::zeros(), C2x2::zeros());
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                ra[(i, j)] += rho[(2 * i + k, 2 * j + k)];
                rb[(i, j)] += rho[(2 * k + i, 2 * k + j)];
            }
        }
    }
    let tilde = *rho - ra.kron(&C2x2::identity()) - C2x2::identity().kron(&rb) + C4x4::identity();
    let prod = root * tilde * root;
    let herm = (prod + prod.adjoint()).scale_re(0.5);
    let (mu, _) = herm.eig_herm()?;
    let r: Vec<f64> = mu.iter().map(|&m| m.max(0.0).sqrt()).collect();
    Ok((r[0] - r[1] - r[2] - r[3]).max(0.0).powi(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThreeTangle {
    /// `4 det ρ₁ − τ₁₂ − τ₁₃`.
    pub tau: f64,
    /// Largest spread between the values computed with each particle as `A`.
    pub max_discrepancy: f64,
}

/// `4 det ρ_A − τ_AB − τ_AC` for `A = 1`, cross-checked with `A = 2, 3`.
pub fn three_tangle(s: &PureState3) -> Result<ThreeTangle> {
    s.require_normalized()?;
    let mut vals = [0.0; 3];
    for (n, slot) in vals.iter_mut().enumerate() {
        let a = n + 1;
        let others: Vec<usize> = (1..=3).filter(|&p| p != a).collect();
        let det = reduce1(s, a).det().re;
        *slot = 4.0 * det - two_tangle(s, a, others[0])? - two_tangle(s, a, others[1])?;
    }
    let hi = vals.iter().copied().fold(f64::MIN, f64::max);
    let lo = vals.iter().copied().fold(f64::MAX, f64::min);
    Ok(ThreeTangle {
        tau: vals[0],
        max_discrepancy: hi - lo,
    })
}

/// Cayley hyperdeterminant via the pencil `det(T₀ + x T₁) = A + Bx + Cx²`:
/// `Det = B² − 4AC`. The 3-tangle equals `4|Det|`.
pub fn hyperdeterminant(s: &PureState3) -> C64 {
    let p = s.partition(crate::state::Axis::First);
    let a = p.t1.det();
    let c = p.t2.det();
    let b = (p.t1 + p.t2).det() - a - c;
    b * b - 4.0 * a * c
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangleSet {
    pub tau12: f64,
    pub tau13: f64,
    pub tau23: f64,
    pub tau123: f64,
}

pub fn tangles(s: &PureState3) -> Result<TangleSet> {
    Ok(TangleSet {
        tau12: two_tangle(s, 1, 2)?,
        tau13: two_tangle(s, 1, 3)?,
        tau23: two_tangle(s, 2, 3)?,
        tau123: three_tangle(s)?.tau,
    })
}

/// `tr[(ρ₁ ⊗ ρ₂) ρ₁₂]`.
pub fn kempe(s: &PureState3) -> f64 {
    let k = reduce1(s, 1).kron(&reduce1(s, 2)) * reduce2(s, 1, 2);
    k.trace().re
}

/// `(‖t‖², tr ρ₁², tr ρ₂², tr ρ₃², tr[(ρ₁⊗ρ₂)ρ₁₂], 4|Det|)`.
///
/// Every entry is a polynomial in `(t, t̄)`, so the vector is defined on
/// unnormalized states; on normalized ones the last entry is the 3-tangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvariantVector(pub [f64; 6]);

impl InvariantVector {
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn invariant_vector(s: &PureState3) -> InvariantVector {
    InvariantVector([
        s.norm_sq(),
        reduce1(s, 1).frob_norm_sq(),
        reduce1(s, 2).frob_norm_sq(),
        reduce1(s, 3).frob_norm_sq(),
        kempe(s),
        4.0 * hyperdeterminant(s).norm(),
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianRank {
    pub rank: usize,
    /// Descending.
    pub singular: Vec<f64>,
}

/// `∂I_i/∂x_j` over the sixteen real coordinates, as a 16×6 matrix.
pub fn jacobian(s: &PureState3, h: f64) -> Result<RMatrix> {
    let x0 = s.to_real_coords();
    let mut cols = vec![vec![0.0; 16]; 6];
    for j in 0..16 {
        let (mut xp, mut xm) = (x0, x0);
        xp[j] += h;
        xm[j] -= h;
        let ip = invariant_vector(&PureState3::from_real_coords(&xp)).0;
        let im = invariant_vector(&PureState3::from_real_coords(&xm)).0;
        for i in 0..6 {
            cols[i][j] = (ip[i] - im[i]) / (2.0 * h);
        }
    }
    RMatrix::from_cols(&cols)
}

/// Rank of the invariant Jacobian, thresholded at `tol · σ_max`.
pub fn jacobian_rank(s: &PureState3, tol: f64) -> Result<JacobianRank> {
    s.require_normalized()?;
    let ns = crate::linalg::nullspace(&jacobian(s, JACOBIAN_STEP)?, tol)?;
    Ok(JacobianRank {
        rank: ns.rank,
        singular: ns.singular,
    })
}
