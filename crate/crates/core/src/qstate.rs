//! Opinion states: normalized qubit vectors and 2x2 density matrices.
//!
//! All amplitudes and matrix entries are expressed in the reference basis, the
//! eigenbasis of the reference question. Values are immutable once built.

use crate::error::{ensure_finite, Error, Result};

pub use num_complex::Complex64 as Complex;

/// Tolerance on the unit norm of pure states and the trace of density matrices.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance on the determinant when checking positive semidefiniteness.
pub const PSD_TOL: f64 = 1e-12;
/// Purity threshold used by [`MixedState::is_pure`].
pub const PURITY_TOL: f64 = 1e-9;
/// Tolerance on the sum of mixture weights.
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

fn finite_complex(name: &str, z: Complex) -> Result<Complex> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Validation(format!("{name} must be finite, got {z}")))
    }
}

/// A normalized two-component opinion vector `amp0 |0> + amp1 |1>`.
///
/// Equality up to global phase is tested with [`PureState::same_ray`]; the
/// derived `PartialEq` compares raw amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amp0: Complex,
    amp1: Complex,
}

impl PureState {
    /// Builds a state from amplitudes that are already normalized.
    pub fn new(amp0: Complex, amp1: Complex) -> Result<Self> {
        let amp0 = finite_complex("amp0", amp0)?;
        let amp1 = finite_complex("amp1", amp1)?;
        let norm = amp0.norm_sqr() + amp1.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Validation(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(Self { amp0, amp1 })
    }

    /// Rescales a non-zero vector to unit norm.
    pub fn normalized(amp0: Complex, amp1: Complex) -> Result<Self> {
        let amp0 = finite_complex("amp0", amp0)?;
        let amp1 = finite_complex("amp1", amp1)?;
        let norm = (amp0.norm_sqr() + amp1.norm_sqr()).sqrt();
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::Validation("cannot normalize a zero vector".into()));
        }
        Ok(Self {
            amp0: amp0 / norm,
            amp1: amp1 / norm,
        })
    }

    /// `cos(theta_a) |0> + sin(theta_a) e^{i phi_a} |1>`.
    pub fn from_angles(theta_a: f64, phi_a: f64) -> Result<Self> {
        let theta_a = ensure_finite("theta_a", theta_a)?;
        let phi_a = ensure_finite("phi_a", phi_a)?;
        Ok(Self {
            amp0: Complex::new(theta_a.cos(), 0.0),
            amp1: Complex::from_polar(theta_a.sin(), phi_a),
        })
    }

    /// The basis vector `|i>` of the reference basis.
    pub fn basis(i: usize) -> Self {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        match i {
            0 => Self {
                amp0: one,
                amp1: zero,
            },
            _ => Self {
                amp0: zero,
                amp1: one,
            },
        }
    }

    pub(crate) fn from_raw(amp0: Complex, amp1: Complex) -> Self {
        Self { amp0, amp1 }
    }

    pub fn amp0(&self) -> Complex {
        self.amp0
    }

    pub fn amp1(&self) -> Complex {
        self.amp1
    }

    pub fn amplitudes(&self) -> [Complex; 2] {
        [self.amp0, self.amp1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Complex {
        self.amp0.conj() * other.amp0 + self.amp1.conj() * other.amp1
    }

    /// `|<self|other>|`, 1 when both vectors describe the same ray.
    pub fn overlap(&self, other: &PureState) -> f64 {
        self.inner(other).norm()
    }

    /// Equality up to global phase.
    pub fn same_ray(&self, other: &PureState, tol: f64) -> bool {
        (self.overlap(other) - 1.0).abs() <= tol
    }

    /// The projector `|s><s|`.
    pub fn density(&self) -> MixedState {
        MixedState::from_pure(self)
    }
}

/// A 2x2 density matrix stored as its upper triangle.
///
/// `m10` is implied as `conj(m01)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedState {
    m00: f64,
    m11: f64,
    m01: Complex,
}

impl MixedState {
    /// Validates trace, hermiticity (implicit) and positivity.
    pub fn new(m00: f64, m11: f64, m01: Complex) -> Result<Self> {
        let m00 = ensure_finite("m00", m00)?;
        let m11 = ensure_finite("m11", m11)?;
        let m01 = finite_complex("m01", m01)?;
        let trace = m00 + m11;
        if (trace - 1.0).abs() > NORM_TOL {
            return Err(Error::Validation(format!("trace is {trace}, expected 1")));
        }
        if m00 < -PSD_TOL || m11 < -PSD_TOL {
            return Err(Error::Validation(format!(
                "diagonal entries ({m00}, {m11}) must be non-negative"
            )));
        }
        let det = m00 * m11 - m01.norm_sqr();
        if det < -PSD_TOL {
            return Err(Error::Validation(format!(
                "matrix is not positive semidefinite (determinant {det})"
            )));
        }
        Ok(Self { m00, m11, m01 })
    }

    pub fn from_pure(s: &PureState) -> Self {
        Self {
            m00: s.amp0.norm_sqr(),
            m11: s.amp1.norm_sqr(),
            m01: s.amp0 * s.amp1.conj(),
        }
    }

    /// `I / 2`: no knowledge about the answer to any question.
    pub fn maximally_mixed() -> Self {
        Self {
            m00: 0.5,
            m11: 0.5,
            m01: Complex::new(0.0, 0.0),
        }
    }

    /// Convex combination of density matrices.
    pub fn mix(components: &[(f64, MixedState)]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Validation("mixture has no components".into()));
        }
        let mut total = 0.0;
        for &(w, _) in components {
            let w = ensure_finite("mixture weight", w)?;
            if w < 0.0 {
                return Err(Error::Validation(format!("negative mixture weight {w}")));
            }
            total += w;
        }
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::Validation(format!(
                "mixture weights sum to {total}, expected 1"
            )));
        }
        let (m00, m11, m01) =
            components
                .iter()
                .fold((0.0, 0.0, Complex::new(0.0, 0.0)), |(a, d, c), (w, rho)| {
                    let w = w / total;
                    (a + w * rho.m00, d + w * rho.m11, c + rho.m01 * w)
                });
        Self::new(m00, m11, m01)
    }

    /// Diagonal mixture `(1 - p1) |v0><v0| + p1 |v1><v1|` of two orthonormal vectors.
    pub fn diagonal_in(v0: &PureState, v1: &PureState, p1: f64) -> Result<Self> {
        let p1 = ensure_finite("p1", p1)?;
        if !(0.0..=1.0).contains(&p1) {
            return Err(Error::Validation(format!("p1 = {p1} is not a probability")));
        }
        Self::mix(&[(1.0 - p1, v0.density()), (p1, v1.density())])
    }

    pub fn m00(&self) -> f64 {
        self.m00
    }

    pub fn m11(&self) -> f64 {
        self.m11
    }

    pub fn m01(&self) -> Complex {
        self.m01
    }

    pub fn m10(&self) -> Complex {
        self.m01.conj()
    }

    /// Full matrix, row-major.
    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        [
            [Complex::new(self.m00, 0.0), self.m01],
            [self.m01.conj(), Complex::new(self.m11, 0.0)],
        ]
    }

    pub fn trace(&self) -> f64 {
        self.m00 + self.m11
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.m00 * self.m00 + self.m11 * self.m11 + 2.0 * self.m01.norm_sqr()
    }

    pub fn is_pure(&self) -> bool {
        self.purity() >= 1.0 - PURITY_TOL
    }

    /// Matrix element `<u|rho|v>`.
    pub fn element(&self, u: &PureState, v: &PureState) -> Complex {
        let m = self.matrix();
        let [u0, u1] = u.amplitudes();
        let [v0, v1] = v.amplitudes();
        u0.conj() * (m[0][0] * v0 + m[0][1] * v1) + u1.conj() * (m[1][0] * v0 + m[1][1] * v1)
    }

    /// `<v|rho|v>`, the probability of finding the state along `v`.
    pub fn expectation(&self, v: &PureState) -> f64 {
        self.element(v, v).re
    }

    /// Eigenpairs sorted by descending eigenvalue.
    pub fn eigen(&self) -> [(f64, PureState); 2] {
        let half_sum = 0.5 * (self.m00 + self.m11);
        let half_diff = 0.5 * (self.m00 - self.m11);
        let radius = (half_diff * half_diff + self.m01.norm_sqr()).sqrt();
        let hi = half_sum + radius;
        let lo = half_sum - radius;
        if radius == 0.0 {
            return [(hi, PureState::basis(0)), (lo, PureState::basis(1))];
        }
        let vector = |lambda: f64| {
            // (rho - lambda) v = 0, pick the better-conditioned row
            let row0 = (self.m01, Complex::new(lambda - self.m00, 0.0));
            let row1 = (Complex::new(lambda - self.m11, 0.0), self.m01.conj());
            let n0 = row0.0.norm_sqr() + row0.1.norm_sqr();
            let n1 = row1.0.norm_sqr() + row1.1.norm_sqr();
            let (a, b) = if n0 >= n1 { row0 } else { row1 };
            PureState::normalized(a, b).expect("non-degenerate eigenvector")
        };
        [(hi, vector(hi)), (lo, vector(lo))]
    }
}
