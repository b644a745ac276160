//! Pure two-spinor states: construction from orientations, the joint
//! eigenbasis of the two projected spin operators, entanglement test and
//! reduction to the two-amplitude canonical form.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{self, Euler, Subsystem};
use crate::linalg::{dist_amps, inner, norm_amps, Amps, Vec3};
use crate::scalar::{c, wrap_two_pi, Real};

/// Default classification tolerance for [`canonical_form`].
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// Polar angles `(theta, phi)` of a spin-1/2 quantization axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpinorOrientation<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> SpinorOrientation<T> {
    /// Brings arbitrary angles into `theta in [0, pi]`, `phi in [0, 2pi)`
    /// describing the same axis.
    pub fn new(theta: T, phi: T) -> Self {
        let pi = T::PI();
        let mut th = wrap_two_pi(theta);
        let mut ph = phi;
        if th > pi {
            th = T::TAU() - th;
            ph = ph + pi;
        }
        Self {
            theta: th,
            phi: wrap_two_pi(ph),
        }
    }

    pub fn north() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Unit vector `(sin t cos p, sin t sin p, cos t)`.
    pub fn axis(&self) -> Vec3<T> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vec3::new(st * cp, st * sp, ct)
    }
}

/// Pure state of two spinors, amplitudes in the `(++, +-, -+, --)` basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoSpinorState<T> {
    amps: Amps<T>,
}

impl<T: Real> TwoSpinorState<T> {
    /// Accepts amplitudes that are already unit norm (within 1e-12).
    pub fn new(amps: Amps<T>) -> Result<Self> {
        let n2 = amps.iter().fold(T::zero(), |a, v| a + v.norm_sqr());
        if (n2 - T::one()).abs() > T::tol(1e-12, 64.0) {
            return Err(Error::NotNormalized {
                norm_sq: n2.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { amps })
    }

    /// Rescales to unit norm; rejects norms at or below 1e-9.
    pub fn normalized(amps: Amps<T>) -> Result<Self> {
        let n = norm_amps(&amps);
        if !(n > T::lit(1e-9)) {
            return Err(Error::ZeroNorm {
                norm: n.to_f64().unwrap_or(f64::NAN),
            });
        }
        let k = T::one() / n;
        Ok(Self {
            amps: amps.map(|a| a * k),
        })
    }

    /// Caller guarantees unit norm.
    pub(crate) fn from_amps_unchecked(amps: Amps<T>) -> Self {
        Self { amps }
    }

    pub fn from_real(a: [T; 4]) -> Result<Self> {
        Self::new(a.map(c))
    }

    pub fn amps(&self) -> &Amps<T> {
        &self.amps
    }

    pub fn norm(&self) -> T {
        norm_amps(&self.amps)
    }

    /// `a11 a22 - a12 a21`.
    pub fn det(&self) -> Complex<T> {
        let a = &self.amps;
        a[0] * a[3] - a[1] * a[2]
    }

    pub fn inner(&self, o: &Self) -> Complex<T> {
        inner(&self.amps, &o.amps)
    }

    pub fn distance(&self, o: &Self) -> T {
        dist_amps(&self.amps, &o.amps)
    }

    /// Distance after optimally aligning the global phase of `o`.
    pub fn distance_up_to_phase(&self, o: &Self) -> T {
        let ov = o.inner(self);
        let phase = if ov.norm() > T::zero() {
            ov / c(ov.norm())
        } else {
            c(T::one())
        };
        dist_amps(&self.amps, &o.amps.map(|a| a * phase))
    }

    pub fn with_phase(&self, phase: T) -> Self {
        let p = Complex::from_polar(T::one(), phase);
        Self {
            amps: self.amps.map(|a| a * p),
        }
    }

    /// Canonical state `(cos t/2, 0, 0, sin t/2)`.
    pub fn canonical(theta: T) -> Self {
        let (s, co) = (theta * T::half()).sin_cos();
        Self::from_amps_unchecked([c(co), c(T::zero()), c(T::zero()), c(s)])
    }

    /// The singlet `(0, 1/sqrt2, -1/sqrt2, 0)`.
    pub fn singlet() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self::from_amps_unchecked([c(T::zero()), c(h), c(-h), c(T::zero())])
    }
}

/// `(cos t/2, sin t/2 e^{i phi})`.
pub fn make_spinor<T: Real>(o: SpinorOrientation<T>) -> [Complex<T>; 2] {
    let (s, co) = (o.theta * T::half()).sin_cos();
    [c(co), Complex::from_polar(s, o.phi)]
}

fn kron2<T: Real>(u: [Complex<T>; 2], v: [Complex<T>; 2]) -> TwoSpinorState<T> {
    TwoSpinorState::from_amps_unchecked([u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]])
}

/// Spinor orthogonal to [`make_spinor`]: `(sin t/2, -cos t/2 e^{i phi})`.
fn anti_spinor<T: Real>(o: SpinorOrientation<T>) -> [Complex<T>; 2] {
    let (s, co) = (o.theta * T::half()).sin_cos();
    [c(s), -Complex::from_polar(co, o.phi)]
}

pub fn product_state<T: Real>(o1: SpinorOrientation<T>, o2: SpinorOrientation<T>) -> TwoSpinorState<T> {
    kron2(make_spinor(o1), make_spinor(o2))
}

/// Common eigenbasis `[a, b, c, d]` of `J1.Q1` and `J2.Q2` with eigenvalue
/// signs `(++, +-, -+, --)`.
pub fn eigenbasis_quadruple<T: Real>(
    o1: SpinorOrientation<T>,
    o2: SpinorOrientation<T>,
) -> [TwoSpinorState<T>; 4] {
    let (u1, d1) = (make_spinor(o1), anti_spinor(o1));
    let (u2, d2) = (make_spinor(o2), anti_spinor(o2));
    [kron2(u1, u2), kron2(u1, d2), kron2(d1, u2), kron2(d1, d2)]
}

/// Entanglement flag `|det| > tol` and the determinant itself.
pub fn is_entangled<T: Real>(s: &TwoSpinorState<T>, tol: T) -> (bool, Complex<T>) {
    let d = s.det();
    (d.norm() > tol, d)
}

/// Which pattern the Lakin-frame amplitudes fell into before reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionCase {
    /// `c12 = c21 = 0` directly.
    Diagonal,
    /// `c11 = c22 = 0`, mapped to the diagonal case by a local flip.
    OffDiagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CanonicalForm<T> {
    /// Schmidt-ordered angle, `cos(theta_c/2) >= sin(theta_c/2)`, in `(0, pi/2]`.
    pub theta_c: T,
    /// Angle in `(0, pi)` before ordering; see [`canonical_form`].
    pub theta_full: T,
    pub rot1: Euler<T>,
    pub rot2: Euler<T>,
    /// `e^{i global_phase} (rot1 (x) rot2) s` is the canonical state.
    pub global_phase: T,
    pub case: ReductionCase,
    /// Distance of `|det|` and the mean-spin norm from their case boundaries.
    pub margin: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Classification<T> {
    Product { margin: T },
    Singlet { margin: T },
    Canonical(CanonicalForm<T>),
}

impl<T: Real> Classification<T> {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Product { .. } => "product",
            Classification::Singlet { .. } => "singlet-equivalent",
            Classification::Canonical(_) => "canonical",
        }
    }

    pub fn margin(&self) -> T {
        match self {
            Classification::Product { margin } | Classification::Singlet { margin } => *margin,
            Classification::Canonical(cf) => cf.margin,
        }
    }
}

impl<T: Real> CanonicalForm<T> {
    /// Re-applies the stored rotations and phase to `s`.
    pub fn apply(&self, s: &TwoSpinorState<T>) -> TwoSpinorState<T> {
        frames::rotate_state(s, self.rot1, self.rot2).with_phase(self.global_phase)
    }

    /// Inverse of [`CanonicalForm::apply`] acting on the canonical state.
    pub fn restore(&self) -> TwoSpinorState<T> {
        let canon = TwoSpinorState::canonical(self.theta_c).with_phase(-self.global_phase);
        frames::unrotate_state(&canon, self.rot1, self.rot2)
    }
}

/// Classifies a normalized state and, when it is entangled with nonvanishing
/// mean spins, reduces it to `(cos t/2, 0, 0, sin t/2)` by local rotations.
///
/// `theta_full` equals `2 atan2(|a22|, |a11|)` when the input is already
/// diagonal (`|a12|, |a21| <= tol`), which keeps the `(pi/2, pi)` half of the
/// family distinguishable; otherwise it equals `theta_c`.
pub fn canonical_form<T: Real>(s: &TwoSpinorState<T>, tol: T) -> Result<Classification<T>> {
    let degenerate = T::lit(frames::DEGENERATE_MEAN);
    let det = s.det().norm();
    let m1 = frames::mean_spin(s, Subsystem::One).norm();
    let m2 = frames::mean_spin(s, Subsystem::Two).norm();
    let mean = m1.max(m2);

    let near_product = det <= tol;
    let near_singlet = mean < degenerate;
    if near_product && near_singlet {
        return Err(Error::AmbiguousCase {
            first: "product",
            second: "singlet-equivalent",
            margin: (tol - det).min(degenerate - mean).to_f64().unwrap_or(0.0),
        });
    }
    if near_singlet {
        return Ok(Classification::Singlet {
            margin: degenerate - mean,
        });
    }

    let (a1, a2) = match (
        frames::lakin_angles(s, Subsystem::One),
        frames::lakin_angles(s, Subsystem::Two),
    ) {
        (Some(a1), Some(a2)) => (a1, a2),
        _ => unreachable!("mean spins above the degeneracy threshold"),
    };
    let mut rot1 = Euler::new(a1.phi, a1.theta, T::zero());
    let mut rot2 = Euler::new(a2.phi, a2.theta, T::zero());
    let cc = *frames::rotate_state(s, rot1, rot2).amps();

    if near_product {
        // case 1: a single surviving amplitude, which in Lakin frames is c11
        let rest = cc[1].norm().max(cc[2].norm()).max(cc[3].norm());
        if rest > tol.sqrt() {
            return Err(Error::Unclassifiable {
                margin: rest.to_f64().unwrap_or(f64::NAN),
            });
        }
        return Ok(Classification::Product { margin: tol - det });
    }

    let off = cc[1].norm().max(cc[2].norm());
    let diag = cc[0].norm().max(cc[3].norm());
    let flip = Euler::new(T::zero(), T::PI(), T::zero());
    let (case, mut pair) = if off <= tol {
        (ReductionCase::Diagonal, (cc[0], cc[3]))
    } else if cc[0].norm().max(cc[3].norm()) <= tol {
        // (0, c12, c21, 0): flip one side so the larger amplitude lands on ++
        if cc[2].norm() >= cc[1].norm() {
            rot1 = rot1.then(flip);
            (ReductionCase::OffDiagonal, (cc[2], -cc[1]))
        } else {
            rot2 = rot2.then(flip);
            (ReductionCase::OffDiagonal, (cc[1], -cc[2]))
        }
    } else {
        return Err(Error::Unclassifiable {
            margin: off.min(diag).to_f64().unwrap_or(f64::NAN),
        });
    };
    if pair.0.norm() < pair.1.norm() {
        rot1 = rot1.then(flip);
        rot2 = rot2.then(flip);
        pair = (pair.1, pair.0);
    }

    let (l1, alpha) = pair.0.to_polar();
    let (l2, beta) = pair.1.to_polar();
    // A z-rotation by chi on subsystem 1 shifts the ++ phase by chi/2 and the
    // -- phase by -chi/2.
    let chi = beta - alpha;
    rot1.psi = rot1.psi + chi;
    let global_phase = -(alpha + beta) * T::half();
    let theta_c = T::lit(2.0) * l2.atan2(l1);

    let a = s.amps();
    let theta_full = if a[1].norm().max(a[2].norm()) <= tol {
        T::lit(2.0) * a[3].norm().atan2(a[0].norm())
    } else {
        theta_c
    };

    Ok(Classification::Canonical(CanonicalForm {
        theta_c,
        theta_full,
        rot1,
        rot2,
        global_phase,
        case,
        margin: (det - tol).min(mean - degenerate),
    }))
}
