use super::{inner, vec_norm, C2x2, C4x4, CMat, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// `M = left · diag(singular) · rightᴴ`.
#[derive(Clone, Copy, Debug)]
pub struct Svd2 {
    pub left: C2x2,
    pub singular: [f64; 2],
    pub right: C2x2,
}

impl Svd2 {
    pub fn reconstruct(&self) -> C2x2 {
        self.left * C2x2::from_real_diag(self.singular) * self.right.adjoint()
    }
}

/// Orthonormal vector completing `u` to a basis of C².
fn complement(u: &[C64; 2]) -> [C64; 2] {
    [-u[1].conj(), u[0].conj()]
}

/// Closed-form SVD of a 2×2 complex matrix.
///
/// The right vectors come from the eigenvectors of `MᴴM`; the smaller
/// singular value is recovered as `|det M| / σ₁` so it keeps full relative
/// accuracy even when it is tiny.
pub fn svd2(m: &C2x2) -> Svd2 {
    let h = m.adjoint() * *m;
    let (lam, vecs) = eig_herm2_unchecked(&h);
    let s1 = lam[0].max(0.0).sqrt();
    if s1 == 0.0 {
        return Svd2 {
            left: C2x2::identity(),
            singular: [0.0, 0.0],
            right: C2x2::identity(),
        };
    }
    let s2 = (m.det().norm() / s1).min(s1);
    let v1 = vecs.col(0);
    let v2 = vecs.col(1);
    let mv1 = m.mul_vec(&v1);
    let n1 = vec_norm(&mv1);
    let u1 = mv1.map(|z| z / n1);
    let mut u2 = complement(&u1);
    let w = inner(&u2, &m.mul_vec(&v2));
    if w.norm() > 0.0 {
        let ph = w / w.norm();
        u2 = u2.map(|z| z * ph);
    }
    let mut out = Svd2 {
        left: C2x2::from_cols([u1, u2]),
        singular: [s1, s2],
        right: C2x2::from_cols([v1, v2]),
    };
    if s1 == s2 && out.right[(0, 1)].re > out.right[(0, 0)].re {
        out.left = C2x2::from_cols([u2, u1]);
        out.right = C2x2::from_cols([v2, v1]);
    }
    out
}

/// Eigen-decomposition of a hermitian matrix: real values in descending
/// order, eigenvectors as the columns of a unitary matrix.
pub trait HermitianEigen: Sized {
    type Values;
    fn eig_herm(&self) -> Result<(Self::Values, Self)>;
}

impl HermitianEigen for C2x2 {
    type Values = [f64; 2];
    fn eig_herm(&self) -> Result<([f64; 2], C2x2)> {
        eig_herm2(self)
    }
}

impl HermitianEigen for C4x4 {
    type Values = [f64; 4];
    fn eig_herm(&self) -> Result<([f64; 4], C4x4)> {
        eig_herm4(self)
    }
}

fn check_hermitian<const N: usize>(m: &CMat<N>) -> Result<()> {
    let dev = m.hermiticity_defect();
    if !m.is_finite() || dev > 1e-10 * m.frob_norm().max(f64::MIN_POSITIVE) {
        return Err(Error::NotHermitian { deviation: dev });
    }
    Ok(())
}

pub fn eig_herm2(m: &C2x2) -> Result<([f64; 2], C2x2)> {
    check_hermitian(m)?;
    Ok(eig_herm2_unchecked(m))
}

fn eig_herm2_unchecked(m: &C2x2) -> ([f64; 2], C2x2) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    // average the off-diagonal pair so slightly non-hermitian input is symmetrized
    let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = half.hypot(b.norm());
    let l1 = mean + r;
    let l2 = mean - r;
    if b.norm() == 0.0 {
        return if a >= d {
            ([a, d], C2x2::identity())
        } else {
            ([d, a], C2x2::from_cols([[ZERO, ONE], [ONE, ZERO]]))
        };
    }
    // (H − λ₁)v = 0: two candidate null vectors, keep the better conditioned one
    let c1 = [b, C64::new(l1 - a, 0.0)];
    let c2 = [C64::new(l1 - d, 0.0), b.conj()];
    let v = if vec_norm(&c1) >= vec_norm(&c2) {
        c1
    } else {
        c2
    };
    let n = vec_norm(&v);
    let v1 = v.map(|z| z / n);
    let v2 = complement(&v1);
    ([l1, l2], C2x2::from_cols([v1, v2]))
}

const JACOBI_MAX_SWEEPS: usize = 50;
const JACOBI_OFF_TOL: f64 = 1e-14;

fn off_norm<const N: usize>(a: &CMat<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi on a 4×4 hermitian matrix.
pub fn eig_herm4(m: &C4x4) -> Result<([f64; 4], C4x4)> {
    check_hermitian(m)?;
    Ok(jacobi(m))
}

fn jacobi<const N: usize>(m: &CMat<N>) -> ([f64; N], CMat<N>) {
    let mut a = (*m + m.adjoint()).scale_re(0.5);
    let mut v = CMat::<N>::identity();
    let scale = a.frob_norm();
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&a) <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag(1, e^{-iφ}) · [[c, s], [-s, c]] restricted to (p, q)
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..N {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                for k in 0..N {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                for k in 0..N {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| {
        let (li, lj) = (a[(i, i)].re, a[(j, j)].re);
        lj.total_cmp(&li)
            .then_with(|| v[(0, j)].re.total_cmp(&v[(0, i)].re))
    });
    let values = std::array::from_fn(|k| a[(order[k], order[k])].re);
    let mut vecs = CMat::<N>::zeros();
    for (k, &src) in order.iter().enumerate() {
        vecs.set_col(k, v.col(src));
    }
    (values, vecs)
}
