//! Two-outcome questions and the rotation linking their eigenbases.
//!
//! A question `Q` is the projector-valued observable `0 |q0><q0| + 1 |q1><q1|`.
//! Its eigenvectors are written in the eigenbasis of a parent question through a
//! [`BasisRelation`] `(theta, phi)`:
//!
//! ```text
//! |q0> =  cos(theta)          |p0> - sin(theta) e^{i phi}  |p1>
//! |q1> =  sin(theta) e^{-i phi}|p0> + cos(theta)            |p1>
//! ```
//!
//! Under this convention a real state with angle `theta_a` in the parent basis has
//! angle `theta_a + theta` in the question's basis.

use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::error::{ensure_finite, Result};
use crate::qstate::{Complex, PureState};

/// Threshold for [`commutator_is_zero`].
pub const COMMUTATOR_TOL: f64 = 1e-12;

/// One of the two answers to a question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Zero = 0,
    One = 1,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Zero, Outcome::One];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn flipped(self) -> Outcome {
        match self {
            Outcome::Zero => Outcome::One,
            Outcome::One => Outcome::Zero,
        }
    }

    pub fn from_bit(bit: bool) -> Outcome {
        if bit {
            Outcome::One
        } else {
            Outcome::Zero
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// The `(theta, phi)` rotation taking one question's eigenbasis to another's.
///
/// Canonical form has `theta` in `[0, pi)` and `phi` in `[0, 2 pi)`; shifting
/// `theta` by `pi` only flips the sign of both eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisRelation {
    theta: f64,
    phi: f64,
}

impl BasisRelation {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        let theta = ensure_finite("theta", theta)?;
        let phi = ensure_finite("phi", phi)?;
        Ok(Self::canonical(theta, phi))
    }

    pub fn identity() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    fn canonical(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(PI);
        if theta >= PI {
            theta = 0.0;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The relation read in the opposite direction.
    pub fn inverse(&self) -> Self {
        Self::canonical(self.theta, self.phi + PI)
    }

    /// Eigenvectors `(|q0>, |q1>)` in the parent basis.
    pub fn eigenvectors(&self) -> (PureState, PureState) {
        let (s, c) = self.theta.sin_cos();
        let q0 = PureState::from_raw(Complex::new(c, 0.0), -Complex::from_polar(s, self.phi));
        let q1 = PureState::from_raw(Complex::from_polar(s, -self.phi), Complex::new(c, 0.0));
        (q0, q1)
    }

    /// Unitary whose column `j` holds `|q_j>` in the parent basis.
    pub fn unitary(&self) -> [[Complex; 2]; 2] {
        let (q0, q1) = self.eigenvectors();
        [[q0.amp0(), q1.amp0()], [q0.amp1(), q1.amp1()]]
    }

    /// Reads off the relation from `|q1>` given in the parent basis.
    ///
    /// Per-vector phases are discarded, so the result reproduces the projectors
    /// but not necessarily the exact vectors.
    pub fn from_second_eigenvector(q1: &PureState) -> Self {
        let (x, y) = (q1.amp0(), q1.amp1());
        let theta = x.norm().atan2(y.norm());
        let phi = if y.norm() > 0.0 && x.norm() > 0.0 {
            -(x * y.conj()).arg()
        } else {
            0.0
        };
        Self::canonical(theta, phi)
    }
}

impl Default for BasisRelation {
    fn default() -> Self {
        Self::identity()
    }
}

/// A named yes/no question, stored by its relation to the reference question.
#[derive(Debug, Clone, PartialEq)]
pub struct Question {
    name: String,
    relation: BasisRelation,
}

impl Question {
    /// A question whose eigenbasis is the reference basis.
    pub fn reference(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            relation: BasisRelation::identity(),
        }
    }

    /// A question related to the reference basis by `relation`.
    pub fn new(name: impl Into<String>, relation: BasisRelation) -> Self {
        Self {
            name: name.into(),
            relation,
        }
    }

    /// A question related to `parent`'s eigenbasis by `relation`.
    pub fn derived(name: impl Into<String>, parent: &Question, relation: BasisRelation) -> Self {
        if parent.relation == BasisRelation::identity() {
            return Self::new(name, relation);
        }
        let (p0, p1) = parent.relation.eigenvectors();
        let (_, local) = relation.eigenvectors();
        let q1 = PureState::from_raw(
            local.amp0() * p0.amp0() + local.amp1() * p1.amp0(),
            local.amp0() * p0.amp1() + local.amp1() * p1.amp1(),
        );
        Self::new(name, BasisRelation::from_second_eigenvector(&q1))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn relation_to_reference(&self) -> BasisRelation {
        self.relation
    }

    /// Eigenvectors `(|q0>, |q1>)` in the reference basis.
    pub fn eigenvectors(&self) -> (PureState, PureState) {
        self.relation.eigenvectors()
    }

    pub fn eigenvector(&self, outcome: Outcome) -> PureState {
        let (q0, q1) = self.eigenvectors();
        match outcome {
            Outcome::Zero => q0,
            Outcome::One => q1,
        }
    }

    /// Operator matrix `sum_i q_i |q_i><q_i| = |q1><q1|` in the reference basis.
    pub fn operator(&self) -> [[Complex; 2]; 2] {
        let v = self.eigenvector(Outcome::One).amplitudes();
        let mut m = [[Complex::new(0.0, 0.0); 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = v[r] * v[c].conj();
            }
        }
        m
    }

    /// Components of `s` in this question's eigenbasis.
    pub fn coordinates(&self, s: &PureState) -> PureState {
        let (q0, q1) = self.eigenvectors();
        PureState::from_raw(q0.inner(s), q1.inner(s))
    }

    /// Inverse of [`Question::coordinates`].
    pub fn from_coordinates(&self, local: &PureState) -> PureState {
        let (q0, q1) = self.eigenvectors();
        PureState::from_raw(
            local.amp0() * q0.amp0() + local.amp1() * q1.amp0(),
            local.amp0() * q0.amp1() + local.amp1() * q1.amp1(),
        )
    }

    /// The relation taking this question's eigenbasis to `other`'s.
    pub fn relation_to(&self, other: &Question) -> BasisRelation {
        if self.relation == BasisRelation::identity() {
            return other.relation;
        }
        let q1 = self.coordinates(&other.eigenvector(Outcome::One));
        BasisRelation::from_second_eigenvector(&q1)
    }
}

/// Components `(beta0, beta1)` of `s` in the basis related to its current basis by `rel`.
pub fn change_basis(s: &PureState, rel: &BasisRelation) -> PureState {
    let (sin, cos) = rel.theta().sin_cos();
    let e = Complex::from_polar(1.0, rel.phi());
    let (a0, a1) = (s.amp0(), s.amp1());
    PureState::from_raw(a0 * cos - a1 * e.conj() * sin, a0 * e * sin + a1 * cos)
}

/// `P(to_j | from_i) = |<to_j|from_i>|^2`, symmetric in its two arguments.
pub fn conditional_probability(from_q: &Question, i: Outcome, to_q: &Question, j: Outcome) -> f64 {
    let theta = from_q.relation_to(to_q).theta();
    if i == j {
        theta.cos().powi(2)
    } else {
        theta.sin().powi(2)
    }
}

/// Whether `[A, B] = AB - BA` vanishes entrywise below [`COMMUTATOR_TOL`].
pub fn commutator_is_zero(a: &Question, b: &Question) -> bool {
    let (ma, mb) = (a.operator(), b.operator());
    let mul = |x: &[[Complex; 2]; 2], y: &[[Complex; 2]; 2]| {
        let mut out = [[Complex::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = x[r][0] * y[0][c] + x[r][1] * y[1][c];
            }
        }
        out
    };
    let (ab, ba) = (mul(&ma, &mb), mul(&mb, &ma));
    let max = (0..4)
        .map(|k| (ab[k / 2][k % 2] - ba[k / 2][k % 2]).norm())
        .fold(0.0, f64::max);
    max < COMMUTATOR_TOL
}
