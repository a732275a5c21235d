use crate::error::{Error, Result};

pub const MAX_ROWS: usize = 16;
pub const MAX_COLS: usize = 10;

/// Dense real matrix, row-major, at most 16×10.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Thin SVD `M = U · diag(σ) · Vᵀ` with `U` rows×cols and `V` cols×cols.
#[derive(Clone, Debug)]
pub struct RSvd {
    pub u: RMatrix,
    pub singular: Vec<f64>,
    pub v: RMatrix,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || rows > MAX_ROWS || cols > MAX_COLS {
            return Err(Error::BadParams(format!(
                "real matrix shape {rows}x{cols} outside 1..={MAX_ROWS} x 1..={MAX_COLS}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::BadParams(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    /// Build from columns; every column must have the same length.
    pub fn from_cols(cols: &[Vec<f64>]) -> Result<Self> {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols.len())?;
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::BadParams("ragged columns".into()));
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// One-sided (Hestenes) Jacobi SVD.
    ///
    /// Requires `rows >= cols`, which holds for every system built in this
    /// crate (16×10, 8×7, 16×6, 16×5).
    pub fn svd(&self) -> Result<RSvd> {
        let (m, n) = (self.rows, self.cols);
        if m < n {
            return Err(Error::BadParams(format!(
                "svd needs rows >= cols, got {m}x{n}"
            )));
        }
        let mut a: Vec<Vec<f64>> = (0..n).map(|j| self.col(j)).collect();
        let mut v: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| f64::from(u8::from(i == j))).collect())
            .collect();
        let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
        for _ in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let alpha = dot(&a[p], &a[p]);
                    let beta = dot(&a[q], &a[q]);
                    let gamma = dot(&a[p], &a[q]);
                    if gamma == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for cols in [&mut a, &mut v] {
                        let (lo, hi) = cols.split_at_mut(q);
                        for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                            let (xp, yq) = (*x, *y);
                            *x = c * xp - s * yq;
                            *y = s * xp + c * yq;
                        }
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let norms: Vec<f64> = a.iter().map(|c| dot(c, c).sqrt()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
        let mut u = Self::zeros(m, n)?;
        let mut vm = Self::zeros(n, n)?;
        let mut singular = Vec::with_capacity(n);
        for (k, &src) in order.iter().enumerate() {
            let s = norms[src];
            singular.push(s);
            for i in 0..m {
                u.set(i, k, if s > 0.0 { a[src][i] / s } else { 0.0 });
            }
            for i in 0..n {
                vm.set(i, k, v[src][i]);
            }
        }
        Ok(RSvd { u, singular, v: vm })
    }
}

impl RSvd {
    pub fn reconstruct(&self) -> RMatrix {
        let (m, n) = (self.u.rows, self.v.rows);
        let mut out = RMatrix::zeros(m, n).expect("shape checked at construction");
        for i in 0..m {
            for j in 0..n {
                let x = (0..self.singular.len())
                    .map(|k| self.u.get(i, k) * self.singular[k] * self.v.get(j, k))
                    .sum();
                out.set(i, j, x);
            }
        }
        out
    }
}

/// Numerical rank and an orthonormal kernel basis.
#[derive(Clone, Debug)]
pub struct Nullspace {
    pub rank: usize,
    pub kernel: Vec<Vec<f64>>,
    /// All singular values, descending.
    pub singular: Vec<f64>,
}

/// Rank counts singular values above `tol · σ_max`; the kernel is spanned by
/// the remaining right singular vectors.
pub fn nullspace(m: &RMatrix, tol: f64) -> Result<Nullspace> {
    if !(tol > 0.0) {
        return Err(Error::BadParams(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let svd = m.svd()?;
    let smax = svd.singular.first().copied().unwrap_or(0.0);
    let rank = if smax == 0.0 {
        0
    } else {
        svd.singular.iter().filter(|&&s| s > tol * smax).count()
    };
    let kernel = (rank..m.cols).map(|k| svd.v.col(k)).collect();
    Ok(Nullspace {
        rank,
        kernel,
        singular: svd.singular,
    })
}
