//! Pure three-qubit states, their T-matrix partitions, local unitary action
//! and particle relabelling.
//!
//! Amplitudes are stored as `t[4i + 2j + k]` with `i` (particle 1) slowest
//! and `0 = ↑`, `1 = ↓`.

mod named;

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{C2x2, C64, ONE, ZERO};

pub use named::{make_named, NamedState};

/// Tolerance used when checking that a local unitary really is one.
pub const UNITARY_TOL: f64 = 1e-10;

/// Tolerance on `norm_sq` accepted by operations that require a unit vector.
pub const NORM_TOL: f64 = 1e-9;

#[inline]
pub fn index(i: usize, j: usize, k: usize) -> usize {
    4 * i + 2 * j + k
}

#[inline]
pub fn bits(idx: usize) -> [usize; 3] {
    [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState3 {
    amps: [C64; 8],
}

impl PureState3 {
    pub fn new(amps: [C64; 8]) -> Self {
        Self { amps }
    }

    pub fn from_real(amps: [f64; 8]) -> Self {
        Self::new(amps.map(|x| C64::new(x, 0.0)))
    }

    /// Computational basis state `|ijk⟩` with bits `0 = ↑`.
    pub fn basis(i: usize, j: usize, k: usize) -> Self {
        let mut amps = [ZERO; 8];
        amps[index(i, j, k)] = ONE;
        Self { amps }
    }

    pub fn amps(&self) -> &[C64; 8] {
        &self.amps
    }

    pub fn amp(&self, i: usize, j: usize, k: usize) -> C64 {
        self.amps[index(i, j, k)]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm_sq();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::BadParams(format!(
                "cannot normalize state with norm² {n}"
            )));
        }
        let inv = 1.0 / n.sqrt();
        Ok(Self::new(self.amps.map(|z| z * inv)))
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= NORM_TOL
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                norm_sq: self.norm_sq(),
            })
        }
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Interleaved real coordinates `[Re t₀, Im t₀, Re t₁, …]`.
    pub fn to_real_coords(&self) -> [f64; 16] {
        std::array::from_fn(|n| {
            let z = self.amps[n / 2];
            if n % 2 == 0 {
                z.re
            } else {
                z.im
            }
        })
    }

    pub fn from_real_coords(x: &[f64; 16]) -> Self {
        Self::new(std::array::from_fn(|m| C64::new(x[2 * m], x[2 * m + 1])))
    }

    pub fn partition(&self, axis: Axis) -> TMatrixPair {
        let mut t = [C2x2::zeros(), C2x2::zeros()];
        for (idx, &z) in self.amps.iter().enumerate() {
            let [i, j, k] = bits(idx);
            let (sel, r, c) = match axis {
                Axis::First => (i, j, k),
                Axis::Second => (j, i, k),
                Axis::Third => (k, i, j),
            };
            t[sel][(r, c)] = z;
        }
        TMatrixPair {
            t1: t[0],
            t2: t[1],
            axis,
        }
    }

    /// Apply a single-particle operator to particle `particle` (1-based).
    pub fn apply_single(&self, op: &C2x2, particle: usize) -> Self {
        let pos = particle - 1;
        let mut out = [ZERO; 8];
        for (idx, slot) in out.iter_mut().enumerate() {
            let b = bits(idx);
            for l in 0..2 {
                let mut src = b;
                src[pos] = l;
                *slot += op[(b[pos], l)] * self.amps[index(src[0], src[1], src[2])];
            }
        }
        Self::new(out)
    }

    /// `(e^{iφ} u ⊗ v ⊗ w)` applied without any unitarity check.
    pub(crate) fn apply_raw(&self, phase: C64, u: &C2x2, v: &C2x2, w: &C2x2) -> Self {
        let mut out = [ZERO; 8];
        for (idx, slot) in out.iter_mut().enumerate() {
            let [i, j, k] = bits(idx);
            let mut acc = ZERO;
            for (src, &t) in self.amps.iter().enumerate() {
                if t == ZERO {
                    continue;
                }
                let [l, m, n] = bits(src);
                acc += u[(i, l)] * v[(j, m)] * w[(k, n)] * t;
            }
            *slot = phase * acc;
        }
        Self::new(out)
    }

    pub fn scale(&self, k: C64) -> Self {
        Self::new(self.amps.map(|z| z * k))
    }
}

impl Index<usize> for PureState3 {
    type Output = C64;
    fn index(&self, idx: usize) -> &C64 {
        &self.amps[idx]
    }
}

impl fmt::Display for PureState3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, z) in self.amps.iter().enumerate() {
            if z.norm() < 1e-15 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let [i, j, k] = bits(idx);
            let s = |b| if b == 0 { '↑' } else { '↓' };
            write!(f, "({:.6}{:+.6}i)|{}{}{}⟩", z.re, z.im, s(i), s(j), s(k))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// JSON wire form: `{"amps": [[re, im], …]}` with eight entries.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StateJson {
    pub amps: Vec<[f64; 2]>,
}

impl TryFrom<StateJson> for PureState3 {
    type Error = Error;
    fn try_from(js: StateJson) -> Result<Self> {
        if js.amps.len() != 8 {
            return Err(Error::BadParams(format!(
                "state needs exactly 8 amplitudes, got {}",
                js.amps.len()
            )));
        }
        let mut amps = [ZERO; 8];
        for (slot, [re, im]) in amps.iter_mut().zip(js.amps) {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::BadParams("non-finite amplitude".into()));
            }
            *slot = C64::new(re, im);
        }
        Ok(Self::new(amps))
    }
}

impl From<&PureState3> for StateJson {
    fn from(s: &PureState3) -> Self {
        Self {
            amps: s.amps.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Particle index used to split `t_ijk` into a pair of 2×2 matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    First,
    Second,
    Third,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::First, Axis::Second, Axis::Third];

    pub fn from_particle(p: usize) -> Result<Self> {
        match p {
            1 => Ok(Axis::First),
            2 => Ok(Axis::Second),
            3 => Ok(Axis::Third),
            _ => Err(Error::BadParams(format!("particle label {p} not in 1..=3"))),
        }
    }

    pub fn particle(self) -> usize {
        match self {
            Axis::First => 1,
            Axis::Second => 2,
            Axis::Third => 3,
        }
    }

    /// Particles indexing the rows and columns of each T-matrix.
    pub fn others(self) -> (usize, usize) {
        match self {
            Axis::First => (2, 3),
            Axis::Second => (1, 3),
            Axis::Third => (1, 2),
        }
    }
}

/// `(T₁, T₂)`: the amplitude tensor split along one particle index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TMatrixPair {
    pub t1: C2x2,
    pub t2: C2x2,
    pub axis: Axis,
}

impl TMatrixPair {
    pub fn flatten(&self) -> PureState3 {
        let mut amps = [ZERO; 8];
        for (idx, slot) in amps.iter_mut().enumerate() {
            let [i, j, k] = bits(idx);
            let (sel, r, c) = match self.axis {
                Axis::First => (i, j, k),
                Axis::Second => (j, i, k),
                Axis::Third => (k, i, j),
            };
            *slot = [self.t1, self.t2][sel][(r, c)];
        }
        PureState3::new(amps)
    }

    pub fn get(&self, sel: usize) -> &C2x2 {
        if sel == 0 {
            &self.t1
        } else {
            &self.t2
        }
    }
}

/// `(e^{iφ}, U, V, W)` in `U(1) × SU(2)³`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalUnitary {
    pub phase: f64,
    pub u: C2x2,
    pub v: C2x2,
    pub w: C2x2,
}

fn check_su2(m: &C2x2, name: &str) -> Result<()> {
    let ud = m.unitarity_defect();
    if !m.is_finite() || ud > UNITARY_TOL {
        return Err(Error::NotUnitary(format!(
            "{name} has unitarity defect {ud:.3e}"
        )));
    }
    let dd = (m.det() - ONE).norm();
    if dd > UNITARY_TOL {
        return Err(Error::NotUnitary(format!(
            "{name} has det {} (distance {dd:.3e} from 1)",
            m.det()
        )));
    }
    Ok(())
}

impl LocalUnitary {
    pub fn new(phase: f64, u: C2x2, v: C2x2, w: C2x2) -> Result<Self> {
        let g = Self { phase, u, v, w };
        g.validate()?;
        Ok(g)
    }

    pub fn identity() -> Self {
        Self {
            phase: 0.0,
            u: C2x2::identity(),
            v: C2x2::identity(),
            w: C2x2::identity(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.phase.is_finite() {
            return Err(Error::NotUnitary("phase is not finite".into()));
        }
        check_su2(&self.u, "U")?;
        check_su2(&self.v, "V")?;
        check_su2(&self.w, "W")
    }

    /// Split three `U(2)` matrices into a global phase and `SU(2)` factors.
    pub fn from_u2(u: C2x2, v: C2x2, w: C2x2) -> Result<Self> {
        let mut phase = 0.0;
        let mut fix = |m: C2x2| {
            let half = 0.5 * m.det().arg();
            phase += half;
            m.scale(C64::from_polar(1.0, -half))
        };
        let (u, v, w) = (fix(u), fix(v), fix(w));
        Self::new(phase, u, v, w)
    }

    pub fn phase_factor(&self) -> C64 {
        C64::from_polar(1.0, self.phase)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            phase: self.phase + other.phase,
            u: self.u * other.u,
            v: self.v * other.v,
            w: self.w * other.w,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            phase: -self.phase,
            u: self.u.adjoint(),
            v: self.v.adjoint(),
            w: self.w.adjoint(),
        }
    }

    /// The factor acting on particle `p` (1-based).
    pub fn factor(&self, p: usize) -> &C2x2 {
        match p {
            1 => &self.u,
            2 => &self.v,
            _ => &self.w,
        }
    }
}

/// `t'_{ijk} = e^{iφ} Σ u_{il} v_{jm} w_{kn} t_{lmn}`.
pub fn apply(g: &LocalUnitary, s: &PureState3) -> Result<PureState3> {
    g.validate()?;
    Ok(s.apply_raw(g.phase_factor(), &g.u, &g.v, &g.w))
}

/// Relabelling of the three particles: particle `a` moves to slot `map[a-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Permutation3 {
    map: [usize; 3],
}

impl Permutation3 {
    pub fn new(map: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &m in &map {
            if !(1..=3).contains(&m) || seen[m - 1] {
                return Err(Error::BadParams(format!(
                    "{map:?} is not a permutation of 1..=3"
                )));
            }
            seen[m - 1] = true;
        }
        Ok(Self { map })
    }

    pub fn identity() -> Self {
        Self { map: [1, 2, 3] }
    }

    pub fn swap(a: usize, b: usize) -> Result<Self> {
        let mut map = [1, 2, 3];
        if !(1..=3).contains(&a) || !(1..=3).contains(&b) {
            return Err(Error::BadParams(format!("bad transposition ({a} {b})")));
        }
        map.swap(a - 1, b - 1);
        Ok(Self { map })
    }

    /// `1 → 2 → 3 → 1`.
    pub fn cycle() -> Self {
        Self { map: [2, 3, 1] }
    }

    pub fn all() -> [Self; 6] {
        [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ]
        .map(|map| Self { map })
    }

    /// Slot that particle `a` (1-based) is sent to.
    pub fn image(&self, a: usize) -> usize {
        self.map[a - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0; 3];
        for a in 1..=3 {
            inv[self.map[a - 1] - 1] = a;
        }
        Self { map: inv }
    }

    /// `self ∘ other`: relabel by `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            map: std::array::from_fn(|a| self.map[other.map[a] - 1]),
        }
    }

    pub fn map(&self) -> [usize; 3] {
        self.map
    }
}

pub fn permute(p: &Permutation3, s: &PureState3) -> PureState3 {
    let mut out = [ZERO; 8];
    for (idx, &z) in s.amps.iter().enumerate() {
        let b = bits(idx);
        let mut nb = [0; 3];
        for a in 0..3 {
            nb[p.map[a] - 1] = b[a];
        }
        out[index(nb[0], nb[1], nb[2])] = z;
    }
    PureState3::new(out)
}

/// Relabel a local unitary consistently with [`permute`].
pub fn permute_unitary(p: &Permutation3, g: &LocalUnitary) -> LocalUnitary {
    let f = [g.u, g.v, g.w];
    let mut out = [C2x2::identity(); 3];
    for a in 0..3 {
        out[p.map[a] - 1] = f[a];
    }
    LocalUnitary {
        phase: g.phase,
        u: out[0],
        v: out[1],
        w: out[2],
    }
}
