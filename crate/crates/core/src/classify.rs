//! Structural classification of two- and three-qubit pure states.
//!
//! The three-qubit decision procedure works on the determinant pencil
//! `q(x, y) = det(x T₁ + y T₂) = vᵀ Q v` of each axis. A unitary on the axis
//! particle rotates `v`, so properties of `Q` up to `Q ↦ Uᵀ Q U` are
//! independent of the input frame:
//!
//! * both T-matrices can be made singular at once iff `q` has two orthogonal
//!   roots, iff the singular values of `Q` coincide;
//! * `q` has a double root iff `det Q = 0`, i.e. the 3-tangle vanishes.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{svd2, C2x2, HermitianEigen, C64, ZERO};
use crate::stabilizer::{self, DEFAULT_RANK_TOL};
use crate::state::{bits, Axis, PureState3, NORM_TOL};

pub const DEFAULT_CLASS_TOL: f64 = 1e-7;
/// Zero tests accept values below `BAND · tol`; values in `[tol, BAND · tol)`
/// mark the verdict as borderline.
pub const BAND: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassTag {
    Generic,
    Semigeneric,
    Slice,
    SliceRidge,
    #[serde(rename = "generalized-ghz")]
    GeneralizedGhz,
    TrueGhz,
    Beechnut,
    Bystander,
    Product,
}

impl ClassTag {
    pub const ALL: [ClassTag; 9] = [
        ClassTag::Generic,
        ClassTag::Semigeneric,
        ClassTag::Slice,
        ClassTag::SliceRidge,
        ClassTag::GeneralizedGhz,
        ClassTag::TrueGhz,
        ClassTag::Beechnut,
        ClassTag::Bystander,
        ClassTag::Product,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Generic => "generic",
            ClassTag::Semigeneric => "semigeneric",
            ClassTag::Slice => "slice",
            ClassTag::SliceRidge => "slice-ridge",
            ClassTag::GeneralizedGhz => "generalized-ghz",
            ClassTag::TrueGhz => "true-ghz",
            ClassTag::Beechnut => "beechnut",
            ClassTag::Bystander => "bystander",
            ClassTag::Product => "product",
        }
    }

    /// Stabilizer dimension of the class; bystanders depend on whether the
    /// entangled pair is maximally entangled.
    pub fn expected_dim(self, maximal_pair: bool) -> usize {
        match self {
            ClassTag::Generic | ClassTag::Semigeneric => 0,
            ClassTag::Slice | ClassTag::SliceRidge | ClassTag::Beechnut => 1,
            ClassTag::GeneralizedGhz | ClassTag::TrueGhz => 2,
            ClassTag::Bystander if maximal_pair => 4,
            ClassTag::Bystander => 2,
            ClassTag::Product => 3,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoQubitTag {
    General,
    Unentangled,
    MaximallyEntangled,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoQubitClass {
    pub tag: TwoQubitTag,
    /// Schmidt coefficients, descending.
    pub schmidt: (f64, f64),
}

/// Two-qubit classes by Schmidt coefficients, `ε = tol`.
pub fn classify2_with(t: &C2x2, tol: f64) -> Result<TwoQubitClass> {
    let n = t.frob_norm_sq();
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq: n });
    }
    let [p, q] = svd2(t).singular;
    let tag = if q < tol {
        TwoQubitTag::Unentangled
    } else if p - q < tol {
        TwoQubitTag::MaximallyEntangled
    } else {
        TwoQubitTag::General
    };
    Ok(TwoQubitClass {
        tag,
        schmidt: (p, q),
    })
}

pub fn classify2(t: &C2x2) -> Result<TwoQubitClass> {
    classify2_with(t, DEFAULT_CLASS_TOL)
}

/// Particles and canonical parameters realizing a class.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Witness {
    /// The distinguished particle: the bystander, or the axis of the pencil
    /// in which the canonical form was read.
    pub particle: Option<usize>,
    /// Slice states: the particle sharing pair entanglement with `particle`.
    pub partner: Option<usize>,
    pub params: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PencilEvidence {
    pub axis: usize,
    /// Singular values of the pencil form `Q`, descending.
    pub q_singular: [f64; 2],
    /// Eigenvalues of `T₁T₂⁻¹` when `T₂` is invertible.
    pub ratio_eigenvalues: Option<[C64; 2]>,
    pub trace_zero: bool,
    pub scalar: bool,
    pub hermitian: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Evidence {
    /// Smallest singular value of each particle's 2×4 stack.
    pub factor_sigma: [f64; 3],
    pub hyperdet_abs: f64,
    pub pencils: Vec<PencilEvidence>,
    /// `(|a|, |b|, |c|, |d|)` scaled by the opposite factor, for the Type-1
    /// frame that decided the verdict.
    pub type1_moduli: Option<[f64; 4]>,
    /// `|T₂[0][0]|` in the double-root frame.
    pub nilpotent_corner: Option<f64>,
    /// The three smallest singular values of the stabilizer system.
    pub stab_singular: Vec<f64>,
    pub borderline: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntanglementClass {
    pub tag: ClassTag,
    pub witness: Witness,
    pub stab_dim: usize,
    pub evidence: Evidence,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Amplitude-scale zero test.
    pub class: f64,
    /// Relative rank cutoff of the stabilizer solver.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            class: DEFAULT_CLASS_TOL,
            rank: DEFAULT_RANK_TOL,
        }
    }
}

struct ZeroTest {
    tol: f64,
    borderline: Cell<bool>,
}

impl ZeroTest {
    fn is_zero(&self, v: f64) -> bool {
        if v >= self.tol && v < BAND * self.tol {
            self.borderline.set(true);
        }
        v < BAND * self.tol
    }
}

/// `[[A, B/2], [B/2, C]]` with `det(x T₁ + y T₂) = A x² + B xy + C y²`.
fn pencil_form(t1: &C2x2, t2: &C2x2) -> C2x2 {
    let a = t1.det();
    let c = t2.det();
    let b = (*t1 + *t2).det() - a - c;
    C2x2::new(a, b * 0.5, b * 0.5, c)
}

fn unit(v: [C64; 2]) -> [C64; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// A root of `A x² + B xy + C y²`, chosen for stability.
fn pencil_root(q: &C2x2) -> [C64; 2] {
    let (a, b, c) = (q[(0, 0)], q[(0, 1)] * 2.0, q[(1, 1)]);
    let disc = (b * b - 4.0 * a * c).sqrt();
    let num = if (b.conj() * disc).re >= 0.0 {
        -(b + disc)
    } else {
        -(b - disc)
    };
    let r1 = [num, 2.0 * a];
    let r2 = [2.0 * c, num];
    let n1 = r1[0].norm_sqr() + r1[1].norm_sqr();
    let n2 = r2[0].norm_sqr() + r2[1].norm_sqr();
    if n1 == 0.0 && n2 == 0.0 {
        return [C64::new(1.0, 0.0), ZERO];
    }
    unit(if n1 >= n2 { r1 } else { r2 })
}

/// Blocks after the axis unitary with first row `u`.
fn rotate_axis(t1: &C2x2, t2: &C2x2, u: [C64; 2]) -> (C2x2, C2x2) {
    let first = t1.scale(u[0]) + t2.scale(u[1]);
    let second = t1.scale(-u[1].conj()) + t2.scale(u[0].conj());
    (first, second)
}

/// `(σ₁, Lᴴ T₂ R)` where `T₁ = L diag(σ₁, σ₂) Rᴴ`.
fn singular_frame(t1: &C2x2, t2: &C2x2) -> (f64, C2x2) {
    let d = svd2(t1);
    (d.singular[0], d.left.adjoint() * *t2 * d.right)
}

fn row_norm(m: &C2x2, r: usize) -> f64 {
    (m[(r, 0)].norm_sqr() + m[(r, 1)].norm_sqr()).sqrt()
}

fn col_norm(m: &C2x2, c: usize) -> f64 {
    (m[(0, c)].norm_sqr() + m[(1, c)].norm_sqr()).sqrt()
}

/// Conditional state of the other two particles given the eigenvector `e`
/// of particle `a`'s reduction, as a 2×2 matrix ordered by particle label.
fn conditional_pair(s: &PureState3, a: usize, e: [C64; 2]) -> C2x2 {
    let others: Vec<usize> = (1..=3).filter(|&p| p != a).collect();
    let mut m = C2x2::zeros();
    for (idx, &x) in s.amps().iter().enumerate() {
        let b = bits(idx);
        m[(b[others[0] - 1], b[others[1] - 1])] += e[b[a - 1]].conj() * x;
    }
    m
}

struct Type1Verdict {
    tag: ClassTag,
    witness: Witness,
    moduli: [f64; 4],
}

fn rank(tag: ClassTag) -> u8 {
    match tag {
        ClassTag::Generic => 0,
        ClassTag::Semigeneric => 1,
        ClassTag::Beechnut => 2,
        ClassTag::Slice => 3,
        ClassTag::SliceRidge => 4,
        ClassTag::GeneralizedGhz => 5,
        ClassTag::TrueGhz => 6,
        ClassTag::Bystander => 7,
        ClassTag::Product => 8,
    }
}

/// Read `T₁ = diag(p, 0)`, `T₂ = (a, b)ᵀ(c, d)` and branch on the zeros.
fn read_type1(t1: &C2x2, t2: &C2x2, axis: Axis, z: &ZeroTest) -> Type1Verdict {
    let (p, t2) = singular_frame(t1, t2);
    let (row, col) = axis.others();
    // |a|·‖(c,d)‖, |b|·‖(c,d)‖, |c|·‖(a,b)‖, |d|·‖(a,b)‖
    let moduli = [
        row_norm(&t2, 0),
        row_norm(&t2, 1),
        col_norm(&t2, 0),
        col_norm(&t2, 1),
    ];
    let (a0, c0) = (z.is_zero(moduli[0]), z.is_zero(moduli[2]));
    let norm = t2.frob_norm();
    let mut params = BTreeMap::new();
    let (tag, partner) = match (a0, c0) {
        (true, true) => {
            let q = t2[(1, 1)].norm();
            let (hi, lo) = if p >= q { (p, q) } else { (q, p) };
            params.insert("p".to_string(), hi);
            params.insert("q".to_string(), lo);
            let tag = if z.is_zero(hi - lo) {
                ClassTag::TrueGhz
            } else {
                ClassTag::GeneralizedGhz
            };
            (tag, None)
        }
        (true, false) | (false, true) => {
            let q = t2[(1, 1)].norm();
            let (r, partner) = if a0 {
                (t2[(1, 0)].norm(), row)
            } else {
                (t2[(0, 1)].norm(), col)
            };
            params.insert("p".to_string(), p);
            params.insert("q".to_string(), q);
            params.insert("r".to_string(), r);
            let tag = if z.is_zero((p - norm).abs()) {
                ClassTag::SliceRidge
            } else {
                ClassTag::Slice
            };
            (tag, Some(partner))
        }
        (false, false) => {
            params.insert("p".to_string(), p);
            let scale = norm.sqrt();
            for (k, name) in ["a", "b", "c", "d"].iter().enumerate() {
                params.insert(name.to_string(), moduli[k] / scale);
            }
            (ClassTag::Semigeneric, None)
        }
    };
    Type1Verdict {
        tag,
        witness: Witness {
            particle: Some(axis.particle()),
            partner,
            params,
        },
        moduli,
    }
}

fn pencil_evidence(t1: &C2x2, t2: &C2x2, axis: Axis, q: &C2x2, tol: f64) -> PencilEvidence {
    let mut ev = PencilEvidence {
        axis: axis.particle(),
        q_singular: svd2(q).singular,
        ..Default::default()
    };
    if let Some(inv) = t2.inverse().filter(|_| t2.det().norm() > tol) {
        let x = *t1 * inv;
        let (tr, det) = (x.trace(), x.det());
        let disc = (tr * tr - 4.0 * det).sqrt();
        ev.ratio_eigenvalues = Some([(tr + disc) * 0.5, (tr - disc) * 0.5]);
        ev.trace_zero = tr.norm() < tol;
        ev.scalar = (x - C2x2::identity().scale(tr * 0.5)).frob_norm() < tol;
        ev.hermitian = x.hermiticity_defect() < tol;
    }
    ev
}

/// Classify with explicit tolerances.
pub fn classify3_with(s: &PureState3, tols: Tolerances) -> Result<EntanglementClass> {
    s.require_normalized()?;
    let alg = stabilizer::solve(s, tols.rank)?;
    let z = ZeroTest {
        tol: tols.class,
        borderline: Cell::new(false),
    };
    let mut evidence = Evidence {
        hyperdet_abs: crate::invariants::hyperdeterminant(s).norm(),
        stab_singular: alg.smallest_singular(),
        ..Default::default()
    };

    let mut verdict: Option<(ClassTag, Witness, bool)> = None;

    // Factorization of a single particle.
    let mut factored = None;
    for a in 1..=3 {
        let (_, vecs) = crate::invariants::reduce1(s, a).eig_herm()?;
        let sigma = conditional_pair(s, a, vecs.col(1)).frob_norm();
        evidence.factor_sigma[a - 1] = sigma;
        if factored.is_none() && z.is_zero(sigma) {
            factored = Some((a, vecs.col(0)));
        }
    }
    if let Some((a, e)) = factored {
        let pair = conditional_pair(s, a, e);
        let pair = pair.scale_re(1.0 / pair.frob_norm());
        let two = classify2_with(&pair, BAND * tols.class)?;
        let (p, q) = two.schmidt;
        if two.tag == TwoQubitTag::Unentangled {
            verdict = Some((ClassTag::Product, Witness::default(), false));
        } else {
            let maximal = two.tag == TwoQubitTag::MaximallyEntangled;
            let mut params = BTreeMap::new();
            params.insert("beta".to_string(), q.atan2(p));
            params.insert("maximal".to_string(), f64::from(u8::from(maximal)));
            let w = Witness {
                particle: Some(a),
                partner: None,
                params,
            };
            verdict = Some((ClassTag::Bystander, w, maximal));
        }
    }

    let mut forms = Vec::with_capacity(3);
    for axis in Axis::ALL {
        let blocks = s.partition(axis);
        let q = pencil_form(&blocks.t1, &blocks.t2);
        evidence.pencils.push(pencil_evidence(
            &blocks.t1, &blocks.t2, axis, &q, tols.class,
        ));
        forms.push((axis, blocks, q));
    }

    if verdict.is_none() {
        // Type 1: two orthogonal roots of the pencil.
        let mut best: Option<Type1Verdict> = None;
        for (axis, blocks, q) in &forms {
            let [s1, s2] = svd2(q).singular;
            if !z.is_zero(s1 - s2) {
                continue;
            }
            let u = pencil_root(q);
            let (f, g) = rotate_axis(&blocks.t1, &blocks.t2, u);
            let first = read_type1(&f, &g, *axis, &z);
            let second = read_type1(&g, &f, *axis, &z);
            let cand = match rank(second.tag).cmp(&rank(first.tag)) {
                std::cmp::Ordering::Greater => second,
                std::cmp::Ordering::Less => first,
                std::cmp::Ordering::Equal => {
                    let p1 = first.witness.params.get("p").copied().unwrap_or(0.0);
                    let p2 = second.witness.params.get("p").copied().unwrap_or(0.0);
                    if p2 > p1 {
                        second
                    } else {
                        first
                    }
                }
            };
            if best.as_ref().is_none_or(|b| rank(cand.tag) > rank(b.tag)) {
                best = Some(cand);
            }
        }
        if let Some(b) = best {
            evidence.type1_moduli = Some(b.moduli);
            verdict = Some((b.tag, b.witness, false));
        }
    }

    if verdict.is_none() {
        // Double root: the 3-tangle vanishes.
        let (axis, blocks, q) = forms
            .iter()
            .max_by(|x, y| svd2(&x.2).singular[0].total_cmp(&svd2(&y.2).singular[0]))
            .expect("three axes");
        let d = svd2(q);
        if z.is_zero(d.singular[1]) {
            let u1 = d.left.col(0);
            let root = unit([-u1[1], u1[0]]);
            let (f, g) = rotate_axis(&blocks.t1, &blocks.t2, root);
            let (sigma, t2) = singular_frame(&f, &g);
            let corner = t2[(0, 0)].norm();
            evidence.nilpotent_corner = Some(corner);
            if z.is_zero(corner) {
                let (row, col) = axis.others();
                let mut weights = [0.0; 3];
                weights[axis.particle() - 1] = sigma;
                weights[col - 1] = t2[(0, 1)].norm();
                weights[row - 1] = t2[(1, 0)].norm();
                let mut params = BTreeMap::new();
                for (k, w) in weights.iter().enumerate() {
                    params.insert(format!("w{}", k + 1), *w);
                }
                let w = Witness {
                    particle: Some(axis.particle()),
                    partner: None,
                    params,
                };
                verdict = Some((ClassTag::Beechnut, w, false));
            }
        }
    }

    let (tag, witness, maximal) = verdict.unwrap_or((ClassTag::Generic, Witness::default(), false));
    evidence.borderline = z.borderline.get();
    let expected = tag.expected_dim(maximal);
    if expected != alg.dim {
        return Err(Error::ClassifierInconsistency {
            class: tag.as_str().to_string(),
            expected_dim: expected,
            solver_dim: alg.dim,
        });
    }
    Ok(EntanglementClass {
        tag,
        witness,
        stab_dim: alg.dim,
        evidence,
    })
}

/// Classify with class tolerance `tol` and the default rank tolerance.
pub fn classify3(s: &PureState3, tol: f64) -> Result<EntanglementClass> {
    classify3_with(
        s,
        Tolerances {
            class: tol,
            ..Tolerances::default()
        },
    )
}
