//! Spin operators on the two-spinor space, expectation values, local
//! rotations and the per-subsystem Lakin frames.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{norm_amps, Mat2, Mat3, Op, Vec3};
use crate::scalar::{c, ci, Real};
use crate::spinor::{SpinorOrientation, TwoSpinorState};

/// Mean-spin norm below which the mean direction (and so the Lakin frame) is
/// treated as undefined.
pub const DEGENERATE_MEAN: f64 = 1e-9;

/// Transverse mean-spin magnitude treated as exactly zero when choosing the
/// azimuth of a Lakin rotation.
const TRANSVERSE_ZERO: f64 = 1e-15;

const ORIENTED_RESIDUAL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Subsystem {
    One,
    Two,
}

/// Half-spin generators `(Sx, Sy, Sz)` as 2x2 matrices.
pub fn half_spin<T: Real>() -> [Mat2<T>; 3] {
    let h = T::half();
    let z = c(T::zero());
    [
        Mat2([[z, c(h)], [c(h), z]]),
        Mat2([[z, ci(T::zero(), -h)], [ci(T::zero(), h), z]]),
        Mat2([[c(h), z], [z, c(-h)]]),
    ]
}

/// `S1 = s (x) 1` and `S2 = 1 (x) s` for each Cartesian component (hbar = 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinOperatorSet<T> {
    pub s1: [Op<T>; 3],
    pub s2: [Op<T>; 3],
}

impl<T: Real> SpinOperatorSet<T> {
    pub fn of(&self, which: Subsystem) -> &[Op<T>; 3] {
        match which {
            Subsystem::One => &self.s1,
            Subsystem::Two => &self.s2,
        }
    }

    /// `S_i . d`.
    pub fn along(&self, which: Subsystem, d: &Vec3<T>) -> Op<T> {
        let s = self.of(which);
        s[0].scale_re(d.0[0]) + s[1].scale_re(d.0[1]) + s[2].scale_re(d.0[2])
    }

    /// `S1 . a + S2 . b`.
    pub fn collective(&self, a: &Vec3<T>, b: &Vec3<T>) -> Op<T> {
        self.along(Subsystem::One, a) + self.along(Subsystem::Two, b)
    }
}

pub fn spin_operators<T: Real>() -> SpinOperatorSet<T> {
    let id = Mat2::identity();
    let s = half_spin::<T>();
    SpinOperatorSet {
        s1: s.map(|m| Op::kron(&m, &id)),
        s2: s.map(|m| Op::kron(&id, &m)),
    }
}

/// `<s|op|s>` without any checks on `op`.
pub fn expectation_complex<T: Real>(s: &TwoSpinorState<T>, op: &Op<T>) -> num_complex::Complex<T> {
    let v = op.apply(s.amps());
    s.amps()
        .iter()
        .zip(v.iter())
        .fold(c(T::zero()), |acc, (a, b)| acc + a.conj() * b)
}

/// `<s|op|s>` for Hermitian `op`.
pub fn expectation<T: Real>(s: &TwoSpinorState<T>, op: &Op<T>) -> Result<T> {
    let defect = (*op - op.dagger()).frobenius();
    if defect > T::tol(1e-12, 64.0) * op.frobenius().max(T::one()) {
        return Err(Error::NotHermitian {
            defect: defect.to_f64().unwrap_or(f64::NAN),
        });
    }
    let e = expectation_complex(s, op);
    debug_assert!(e.im.abs() < T::tol(1e-12, 64.0) * op.frobenius().max(T::one()));
    Ok(e.re)
}

pub(crate) fn expect_re<T: Real>(s: &TwoSpinorState<T>, op: &Op<T>) -> T {
    expectation_complex(s, op).re
}

/// Variance of a Hermitian operator.
pub fn variance<T: Real>(s: &TwoSpinorState<T>, op: &Op<T>) -> T {
    let m = expect_re(s, op);
    expect_re(s, &(*op * *op)) - m * m
}

/// `(<Sx>, <Sy>, <Sz>)` of one subsystem, unnormalized.
pub fn mean_spin<T: Real>(s: &TwoSpinorState<T>, which: Subsystem) -> Vec3<T> {
    let ops = spin_operators::<T>();
    let [x, y, z] = ops.of(which);
    Vec3::new(expect_re(s, x), expect_re(s, y), expect_re(s, z))
}

/// Euler triple of a z-y-z rotation `Rz(phi) Ry(theta) Rz(psi)`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Euler<T> {
    pub phi: T,
    pub theta: T,
    pub psi: T,
}

impl<T: Real> Euler<T> {
    pub fn new(phi: T, theta: T, psi: T) -> Self {
        Self { phi, theta, psi }
    }

    pub fn identity() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    /// Composes with a rotation by `theta` about the current frame's y axis.
    ///
    /// Only defined for `psi == 0`, where the result stays z-y-z.
    pub(crate) fn then(self, other: Self) -> Self {
        debug_assert!(self.psi == T::zero() && other.phi == T::zero() && other.psi == T::zero());
        Self::new(self.phi, self.theta + other.theta, T::zero())
    }

    /// Spatial rotation matrix; its columns are the rotated frame axes.
    pub fn rotation_matrix(&self) -> Mat3<T> {
        let rz = |a: T| {
            let (s, co) = a.sin_cos();
            Mat3([[co, -s, T::zero()], [s, co, T::zero()], [T::zero(), T::zero(), T::one()]])
        };
        let (s, co) = self.theta.sin_cos();
        let ry = Mat3([[co, T::zero(), s], [T::zero(), T::one(), T::zero()], [-s, T::zero(), co]]);
        rz(self.phi) * ry * rz(self.psi)
    }

    /// Half-spin representation `exp(-i phi Sz) exp(-i theta Sy) exp(-i psi Sz)`.
    pub fn spinor(&self) -> Mat2<T> {
        let h = T::half();
        let zrot = |a: T| {
            Mat2([
                [num_complex::Complex::from_polar(T::one(), -a * h), c(T::zero())],
                [c(T::zero()), num_complex::Complex::from_polar(T::one(), a * h)],
            ])
        };
        let (s, co) = (self.theta * h).sin_cos();
        let yrot = Mat2([[c(co), c(-s)], [c(s), c(co)]]);
        zrot(self.phi) * yrot * zrot(self.psi)
    }

    /// Inverse spinor matrix, which re-expresses amplitudes in the rotated frame.
    pub fn spinor_dagger(&self) -> Mat2<T> {
        let u = self.spinor().0;
        Mat2([[u[0][0].conj(), u[1][0].conj()], [u[0][1].conj(), u[1][1].conj()]])
    }
}

fn apply_local<T: Real>(s: &TwoSpinorState<T>, m1: &Mat2<T>, m2: &Mat2<T>) -> TwoSpinorState<T> {
    let out = Op::kron(m1, m2).apply(s.amps());
    // Unitary up to rounding; renormalize so the unit-norm invariant stays exact.
    let n = norm_amps(&out);
    TwoSpinorState::from_amps_unchecked(out.map(|a| a / c(n)))
}

/// Re-expresses `s` with each subsystem referred to its rotated frame
/// `R(e_i)`: afterwards `<S_k'> = <S> . (R e_k)`.
pub fn rotate_state<T: Real>(s: &TwoSpinorState<T>, e1: Euler<T>, e2: Euler<T>) -> TwoSpinorState<T> {
    apply_local(s, &e1.spinor_dagger(), &e2.spinor_dagger())
}

/// Inverse of [`rotate_state`].
pub fn unrotate_state<T: Real>(s: &TwoSpinorState<T>, e1: Euler<T>, e2: Euler<T>) -> TwoSpinorState<T> {
    apply_local(s, &e1.spinor(), &e2.spinor())
}

/// Euler angles `(phi, theta)` of the rotation `R(phi, theta, 0)` taking the
/// lab z axis onto a mean-spin direction.
///
/// Sign-preserving convention: `phi in (-pi/2, pi/2]`, `theta in (-pi, pi]`, so a
/// mean spin in the x-z plane is reached by a rotation about y by
/// `atan2(<Sx>, <Sz>)`. A vanishing transverse part gives `phi = 0`,
/// `theta in {0, pi}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LakinAngles<T> {
    pub phi: T,
    pub theta: T,
}

pub fn lakin_angles_of<T: Real>(mean: &Vec3<T>) -> Option<LakinAngles<T>> {
    let [x, y, z] = mean.0;
    if mean.norm() < T::lit(DEGENERATE_MEAN) {
        return None;
    }
    let rho = x.hypot(y);
    if rho <= T::lit(TRANSVERSE_ZERO) {
        let theta = if z >= T::zero() { T::zero() } else { T::PI() };
        return Some(LakinAngles { phi: T::zero(), theta });
    }
    let half_pi = T::FRAC_PI_2();
    let mut phi = y.atan2(x);
    let mut r = rho;
    if phi > half_pi {
        phi = phi - T::PI();
        r = -rho;
    } else if phi <= -half_pi {
        phi = phi + T::PI();
        r = -rho;
    }
    Some(LakinAngles {
        phi,
        theta: r.atan2(z),
    })
}

/// `None` when the subsystem's mean spin vanishes (norm < 1e-9).
pub fn lakin_angles<T: Real>(s: &TwoSpinorState<T>, which: Subsystem) -> Option<LakinAngles<T>> {
    lakin_angles_of(&mean_spin(s, which))
}

/// Orthonormal triad with `n` along the mean spin and `n_perp2 = n x n_perp`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LakinFrame<T> {
    pub n: Vec3<T>,
    pub n_perp: Vec3<T>,
    pub n_perp2: Vec3<T>,
    pub euler_phi: T,
    pub euler_theta: T,
    pub mean_norm: T,
}

impl<T: Real> LakinFrame<T> {
    pub fn from_angles(angles: LakinAngles<T>, mean_norm: T) -> Self {
        let r = Euler::new(angles.phi, angles.theta, T::zero()).rotation_matrix();
        Self {
            n: r.column(2),
            n_perp: r.column(0),
            n_perp2: r.column(1),
            euler_phi: angles.phi,
            euler_theta: angles.theta,
            mean_norm,
        }
    }

    /// Lab axes with zero mean, used where the mean direction is undefined.
    pub fn lab() -> Self {
        Self {
            n: Vec3::z_axis(),
            n_perp: Vec3::x_axis(),
            n_perp2: Vec3::y_axis(),
            euler_phi: T::zero(),
            euler_theta: T::zero(),
            mean_norm: T::zero(),
        }
    }

    /// Axes ordered `(x_i, y_i, z_i) = (n_perp, n_perp2, n)`.
    pub fn axes(&self) -> [Vec3<T>; 3] {
        [self.n_perp, self.n_perp2, self.n]
    }

    /// Rotates the transverse pair by `chi` about `n`.
    pub fn twisted(&self, chi: T) -> (Vec3<T>, Vec3<T>) {
        let (s, co) = chi.sin_cos();
        (
            self.n_perp.scale(co) + self.n_perp2.scale(s),
            self.n_perp2.scale(co) - self.n_perp.scale(s),
        )
    }
}

pub fn lakin_frame<T: Real>(s: &TwoSpinorState<T>, which: Subsystem) -> Option<LakinFrame<T>> {
    let m = mean_spin(s, which);
    lakin_angles_of(&m).map(|a| LakinFrame::from_angles(a, m.norm()))
}

/// Lakin frame, or the lab substitute when undefined.
pub fn frame_or_lab<T: Real>(f: Option<LakinFrame<T>>) -> LakinFrame<T> {
    f.unwrap_or_else(LakinFrame::lab)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JointEigenCheck<T> {
    pub resid1: T,
    pub resid2: T,
    /// Signs `m_i = +-1/2` attaining each residual.
    pub m1: T,
    pub m2: T,
    pub oriented: bool,
}

/// Residuals `min_sign ||(J_i . Q_i -+ 1/2) s||` and the oriented verdict.
pub fn verify_joint_eigenstate<T: Real>(
    s: &TwoSpinorState<T>,
    q1: SpinorOrientation<T>,
    q2: SpinorOrientation<T>,
) -> JointEigenCheck<T> {
    let ops = spin_operators::<T>();
    let resid = |which, q: SpinorOrientation<T>| {
        let op = ops.along(which, &q.axis());
        let v = op.apply(s.amps());
        let best = |m: T| {
            let r = [0, 1, 2, 3].map(|k| v[k] - s.amps()[k] * c(m));
            norm_amps(&r)
        };
        let (up, down) = (best(T::half()), best(-T::half()));
        if up <= down {
            (up, T::half())
        } else {
            (down, -T::half())
        }
    };
    let (resid1, m1) = resid(Subsystem::One, q1);
    let (resid2, m2) = resid(Subsystem::Two, q2);
    let lim = T::tol(ORIENTED_RESIDUAL, 64.0);
    JointEigenCheck {
        resid1,
        resid2,
        m1,
        m2,
        oriented: resid1 < lim && resid2 < lim,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::{eigenbasis_quadruple, product_state};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn eq29(theta: f64) -> TwoSpinorState<f64> {
        product_state(SpinorOrientation::new(theta, 0.0), SpinorOrientation::new(theta, PI))
    }

    #[test]
    fn operator_diagonals() {
        let ops = spin_operators::<f64>();
        let d1: Vec<f64> = (0..4).map(|i| ops.s1[2].0[i][i].re).collect();
        let d2: Vec<f64> = (0..4).map(|i| ops.s2[2].0[i][i].re).collect();
        assert_eq!(d1, vec![0.5, 0.5, -0.5, -0.5]);
        assert_eq!(d2, vec![0.5, -0.5, 0.5, -0.5]);
    }

    #[test]
    fn operator_traces() {
        let ops = spin_operators::<f64>();
        assert_abs_diff_eq!((ops.s1[0] * ops.s2[0]).trace().norm(), 0.0);
        assert_abs_diff_eq!((ops.s1[0] * ops.s1[0]).trace().re, 1.0, epsilon = 1e-15);
        for a in 0..3 {
            for b in 0..3 {
                assert!(ops.s1[a].commutator(&ops.s2[b]).frobenius() == 0.0);
            }
            assert!(ops.s1[a].is_hermitian(0.0) && ops.s2[a].is_hermitian(0.0));
        }
    }

    #[test]
    fn expectation_examples() {
        let ops = spin_operators::<f64>();
        let up = TwoSpinorState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(expectation(&up, &ops.s1[2]).unwrap(), 0.5);
        let xx = ops.s1[0] * ops.s2[0];
        assert_abs_diff_eq!(expectation(&TwoSpinorState::singlet(), &xx).unwrap(), -0.25, epsilon = 1e-15);
        for theta in [0.3, 1.2, 2.5] {
            let v = expectation(&TwoSpinorState::canonical(theta), &xx).unwrap();
            assert_abs_diff_eq!(v, theta.sin() / 4.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn expectation_rejects_non_hermitian() {
        let ops = spin_operators::<f64>();
        let up = TwoSpinorState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        let bad = ops.s1[0] * ops.s1[1];
        assert!(matches!(expectation(&up, &bad), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn mean_spin_examples() {
        let theta = 1.1;
        let m = mean_spin(&eq29(theta), Subsystem::One);
        assert_abs_diff_eq!(m.0[0], theta.sin() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.0[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.0[2], theta.cos() / 2.0, epsilon = 1e-15);
        assert!(mean_spin(&TwoSpinorState::<f64>::singlet(), Subsystem::Two).norm() < 1e-15);
        let m = mean_spin(&TwoSpinorState::canonical(theta), Subsystem::One);
        assert_abs_diff_eq!(m.0[2], theta.cos() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn lakin_angle_examples() {
        let up = TwoSpinorState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        let a = lakin_angles(&up, Subsystem::One).unwrap();
        assert_eq!((a.phi, a.theta), (0.0, 0.0));
        let a = lakin_angles(&eq29(1.1), Subsystem::One).unwrap();
        assert_abs_diff_eq!(a.phi, 0.0);
        assert_abs_diff_eq!(a.theta, 1.1, epsilon = 1e-14);
        // subsystem 2 leans to -x and is reached by the opposite tilt
        let a = lakin_angles(&eq29(1.1), Subsystem::Two).unwrap();
        assert_abs_diff_eq!(a.theta, -1.1, epsilon = 1e-14);
        assert!(lakin_angles(&TwoSpinorState::<f64>::singlet(), Subsystem::One).is_none());
    }

    #[test]
    fn lakin_rotation_aligns_mean_spin() {
        let s = TwoSpinorState::normalized([
            num_complex::Complex::new(0.3, 0.1),
            num_complex::Complex::new(-0.2, 0.5),
            num_complex::Complex::new(0.4, -0.3),
            num_complex::Complex::new(0.1, 0.6),
        ])
        .unwrap();
        let a1 = lakin_angles(&s, Subsystem::One).unwrap();
        let a2 = lakin_angles(&s, Subsystem::Two).unwrap();
        let r = rotate_state(&s, Euler::new(a1.phi, a1.theta, 0.0), Euler::new(a2.phi, a2.theta, 0.0));
        for which in [Subsystem::One, Subsystem::Two] {
            let before = mean_spin(&s, which).norm();
            let m = mean_spin(&r, which);
            assert_abs_diff_eq!(m.0[0], 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(m.0[1], 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(m.0[2], before, epsilon = 1e-12);
        }
    }

    #[test]
    fn rotate_examples() {
        let s = eq29(0.9);
        assert!(rotate_state(&s, Euler::identity(), Euler::identity()).distance(&s) < 1e-15);

        let a1 = lakin_angles(&s, Subsystem::One).unwrap();
        let a2 = lakin_angles(&s, Subsystem::Two).unwrap();
        let r = rotate_state(&s, Euler::new(a1.phi, a1.theta, 0.0), Euler::new(a2.phi, a2.theta, 0.0));
        let up = TwoSpinorState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(r.distance_up_to_phase(&up) < 1e-12);

        // the displayed flip: (0, c12, c21, 0) -> (c21, 0, 0, -c12)
        let (c12, c21) = (num_complex::Complex::new(0.6, 0.0), num_complex::Complex::new(0.0, 0.8));
        let xi = TwoSpinorState::new([c(0.0), c12, c21, c(0.0)]).unwrap();
        let out = rotate_state(&xi, Euler::new(0.0, PI, 0.0), Euler::identity());
        let want = TwoSpinorState::new([c21, c(0.0), c(0.0), -c12]).unwrap();
        assert!(out.distance_up_to_phase(&want) < 1e-15);
        assert!(out.distance(&want) < 1e-15);
    }

    #[test]
    fn rotation_spinor_represents_matrix() {
        // U S_k U^dagger = sum_j R_jk S_j
        let e = Euler::new(0.7, -1.9, 2.3);
        let u = e.spinor();
        let ud = e.spinor_dagger();
        let r = e.rotation_matrix();
        let s = half_spin::<f64>();
        for k in 0..3 {
            let lhs = u * s[k] * ud;
            for i in 0..2 {
                for j in 0..2 {
                    let rhs = (0..3).fold(c(0.0), |acc, m| acc + s[m].0[i][j] * r.0[m][k]);
                    assert!((lhs.0[i][j] - rhs).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn joint_eigenstate_examples() {
        let (q1, q2) = (SpinorOrientation::new(0.8, 2.0), SpinorOrientation::new(2.2, 5.1));
        let basis = eigenbasis_quadruple(q1, q2);
        let chk = verify_joint_eigenstate(&basis[0], q1, q2);
        assert!(chk.resid1 < 1e-14 && chk.resid2 < 1e-14 && chk.oriented);
        assert_eq!((chk.m1, chk.m2), (0.5, 0.5));
        let chk = verify_joint_eigenstate(&basis[2], q1, q2);
        assert_eq!((chk.m1, chk.m2), (-0.5, 0.5));

        let up = TwoSpinorState::from_real([1.0, 0.0, 0.0, 0.0]).unwrap();
        let chk = verify_joint_eigenstate(&up, SpinorOrientation::north(), SpinorOrientation::north());
        assert_eq!((chk.resid1, chk.resid2), (0.0, 0.0));
    }

    #[test]
    fn singlet_is_never_oriented() {
        // Brute-force scan: the residual is bounded away from zero everywhere.
        let s = TwoSpinorState::<f64>::singlet();
        let mut smallest = f64::INFINITY;
        for i in 0..20 {
            for j in 0..20 {
                let q1 = SpinorOrientation::new(PI * i as f64 / 19.0, 2.0 * PI * j as f64 / 20.0);
                let q2 = SpinorOrientation::new(PI * j as f64 / 19.0, 2.0 * PI * i as f64 / 20.0);
                let chk = verify_joint_eigenstate(&s, q1, q2);
                assert!(!chk.oriented);
                smallest = smallest.min(chk.resid1.max(chk.resid2));
            }
        }
        // ||(S.Q - m) singlet|| = 1/sqrt2 for every axis
        assert_abs_diff_eq!(smallest, FRAC_1_SQRT_2, epsilon = 1e-12);
    }
}
