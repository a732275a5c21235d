//! Fixed-shape complex matrices (2×2 and 4×4) and small real rectangular
//! matrices, with the factorizations the rest of the crate needs.
//!
//! Everything here is closed form or a short Jacobi iteration; no external
//! numeric backend is involved.

mod decomp;
mod real;

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

pub use decomp::{eig_herm2, eig_herm4, svd2, HermitianEigen, Svd2};
pub use real::{nullspace, Nullspace, RMatrix, RSvd, MAX_COLS, MAX_ROWS};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize>(pub [[C64; N]; N]);

pub type C2x2 = CMat<2>;
pub type C4x4 = CMat<4>;

impl<const N: usize> Default for CMat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn diag(d: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn from_real_diag(d: [f64; N]) -> Self {
        Self::diag(d.map(|x| C64::new(x, 0.0)))
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        CMat(self.0.map(|row| row.map(|z| z.conj())))
    }

    pub fn scale(&self, k: C64) -> Self {
        CMat(self.0.map(|row| row.map(|z| z * k)))
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(C64::new(k, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn frob_norm_sq(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.frob_norm_sq().sqrt()
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..N {
            for j in 0..N {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    /// Frobenius norm of `M − Mᴴ`.
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).frob_norm()
    }

    /// Frobenius norm of `MᴴM − 1`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Self::identity()).frob_norm()
    }

    pub fn col(&self, j: usize) -> [C64; N] {
        std::array::from_fn(|i| self.0[i][j])
    }

    pub fn set_col(&mut self, j: usize, v: [C64; N]) {
        for (i, z) in v.into_iter().enumerate() {
            self.0[i][j] = z;
        }
    }

    pub fn from_cols(cols: [[C64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for (j, c) in cols.into_iter().enumerate() {
            m.set_col(j, c);
        }
        m
    }

    pub fn mul_vec(&self, v: &[C64; N]) -> [C64; N] {
        std::array::from_fn(|i| (0..N).map(|k| self.0[i][k] * v[k]).sum())
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl C2x2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        CMat([[a, b], [c, d]])
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse via the adjugate; `None` when the determinant vanishes exactly.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == ZERO {
            return None;
        }
        let m = &self.0;
        Some(Self::new(m[1][1], -m[0][1], -m[1][0], m[0][0]).scale(d.inv()))
    }

    /// Kronecker product `self ⊗ other`, row index `2a + b`.
    pub fn kron(&self, other: &C2x2) -> C4x4 {
        let mut m = C4x4::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        m.0[2 * a + c][2 * b + d] = self.0[a][b] * other.0[c][d];
                    }
                }
            }
        }
        m
    }

    pub fn pauli_x() -> Self {
        Self::real(0.0, 1.0, 1.0, 0.0)
    }

    pub fn pauli_y() -> Self {
        Self::new(ZERO, -I, I, ZERO)
    }

    pub fn pauli_z() -> Self {
        Self::real(1.0, 0.0, 0.0, -1.0)
    }

    pub fn paulis() -> [Self; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    /// `a₁σ₁ + a₂σ₂ + a₃σ₃`.
    pub fn from_pauli_coords(a: [f64; 3]) -> Self {
        Self::new(
            C64::new(a[2], 0.0),
            C64::new(a[0], -a[1]),
            C64::new(a[0], a[1]),
            C64::new(-a[2], 0.0),
        )
    }

    /// Inverse of [`C2x2::from_pauli_coords`] on the hermitian traceless part.
    pub fn pauli_coords(&self) -> [f64; 3] {
        let m = &self.0;
        [
            0.5 * (m[0][1].re + m[1][0].re),
            0.5 * (m[1][0].im - m[0][1].im),
            0.5 * (m[0][0].re - m[1][1].re),
        ]
    }

    /// Closed-form `exp(iθ n̂·σ)` for the Pauli vector `a = θ n̂`.
    pub fn su2_exp(a: [f64; 3]) -> Self {
        let theta = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        if theta == 0.0 {
            return Self::identity();
        }
        let (s, c) = theta.sin_cos();
        let k = s / theta;
        Self::new(
            C64::new(c, k * a[2]),
            C64::new(k * a[1], k * a[0]),
            C64::new(-k * a[1], k * a[0]),
            C64::new(c, -k * a[2]),
        )
    }

    /// `exp(iθσ₃) = diag(e^{iθ}, e^{−iθ})`.
    pub fn z_rotation(theta: f64) -> Self {
        Self::diag([C64::from_polar(1.0, theta), C64::from_polar(1.0, -theta)])
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

pub(crate) fn vec_norm<const N: usize>(v: &[C64; N]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub(crate) fn inner<const N: usize>(a: &[C64; N], b: &[C64; N]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
