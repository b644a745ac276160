//! Evolution of the tilted product state `(c, s) (x) (c, -s)` under
//! `H = i xi (S1+ S2+ - S1- S2-)`, in closed form and through a generic
//! matrix exponential, plus the closed-form mean spins, squeezing margins and
//! Lakin-frame correlations along the trajectory.

use num_complex::Complex;
use serde::Serialize;

use crate::correlations::{CorrelationTensor, FrameTag};
use crate::frames::{spin_operators, DEGENERATE_MEAN};
use crate::linalg::{expm, Op};
use crate::scalar::{c, ci, Real};
use crate::spinor::TwoSpinorState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvolutionParams<T> {
    pub theta: T,
    pub xi: T,
    pub t: T,
    pub tau: T,
}

impl<T: Real> EvolutionParams<T> {
    pub fn new(theta: T, xi: T, t: T) -> Self {
        Self {
            theta,
            xi,
            t,
            tau: xi * t,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DynObservables<T> {
    pub s1x0: T,
    pub s1y0: T,
    pub s1z0: T,
    pub s2x0: T,
    pub s2y0: T,
    pub s2z0: T,
    /// Tilt of each Lakin frame about y0; zero where the mean spin vanishes.
    pub alpha1: T,
    pub alpha2: T,
    pub a_coef: T,
    pub b_coef: T,
}

/// Closed-form squeezing quantities along the trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DynSqueezing<T> {
    pub var_sum_x: T,
    pub var_sum_y: T,
    pub mean_sum: T,
    pub q_x: T,
    pub q_y: T,
}

pub fn hamiltonian<T: Real>(xi: T) -> Op<T> {
    let ops = spin_operators::<T>();
    let i = ci(T::zero(), T::one());
    let raise = |s: &[Op<T>; 3]| s[0] + s[1].scale(i);
    let lower = |s: &[Op<T>; 3]| s[0] - s[1].scale(i);
    let pp = raise(&ops.s1) * raise(&ops.s2);
    let mm = lower(&ops.s1) * lower(&ops.s2);
    (pp - mm).scale(i * c(xi))
}

/// Initial product state, subsystem 1 tilted by `theta` towards +x, subsystem 2
/// towards -x.
pub fn initial_state<T: Real>(theta: T) -> TwoSpinorState<T> {
    evolve_closed(theta, T::zero())
}

pub fn evolve_closed<T: Real>(theta: T, tau: T) -> TwoSpinorState<T> {
    let (s, co) = (theta * T::half()).sin_cos();
    let (st, ct) = tau.sin_cos();
    TwoSpinorState::from_amps_unchecked([
        c(ct * co * co - st * s * s),
        c(-co * s),
        c(co * s),
        c(-st * co * co - ct * s * s),
    ])
}

/// `exp(-i H t) s` through the dense matrix exponential.
pub fn evolve_oracle<T: Real>(s: &TwoSpinorState<T>, xi: T, t: T) -> TwoSpinorState<T> {
    let gen = hamiltonian(xi).scale(Complex::new(T::zero(), -t));
    let u = expm(&gen);
    TwoSpinorState::from_amps_unchecked(u.apply(s.amps()))
}

fn tilt<T: Real>(x: T, z: T) -> T {
    if x.hypot(z) < T::lit(DEGENERATE_MEAN) {
        T::zero()
    } else {
        x.atan2(z)
    }
}

pub fn dyn_observables<T: Real>(theta: T, tau: T) -> DynObservables<T> {
    let half = T::half();
    let (st, ct) = theta.sin_cos();
    let (sn, cs) = tau.sin_cos();
    let (s2t, c2t) = (T::lit(2.0) * tau).sin_cos();
    let s1x0 = half * st * (cs + sn * ct);
    let s2x0 = -half * st * (cs + sn * ct);
    let s1z0 = half * (c2t * ct - half * s2t * st * st);
    let s2z0 = s1z0;
    DynObservables {
        s1x0,
        s1y0: T::zero(),
        s1z0,
        s2x0,
        s2y0: T::zero(),
        s2z0,
        alpha1: tilt(s1x0, s1z0),
        alpha2: tilt(s2x0, s2z0),
        a_coef: ct * s2t + st * st * cs * cs,
        b_coef: sn - ct * cs,
    }
}

/// `|<S1>| + |<S2>|` along the trajectory.
fn mean_sum<T: Real>(theta: T, tau: T) -> T {
    let (st, ct) = theta.sin_cos();
    let (sn, cs) = tau.sin_cos();
    let (s2t, c2t) = (T::lit(2.0) * tau).sin_cos();
    let a = cs + sn * ct;
    let b = ct * c2t - T::half() * s2t * st * st;
    (st * st * a * a + b * b).sqrt()
}

pub fn dyn_squeezing<T: Real>(theta: T, tau: T) -> DynSqueezing<T> {
    let o = dyn_observables(theta, tau);
    let (st, ct) = theta.sin_cos();
    let (sn, _) = tau.sin_cos();
    let s2t = (T::lit(2.0) * tau).sin();
    let (sa, ca) = o.alpha1.sin_cos();
    let s2a = (T::lit(2.0) * o.alpha1).sin();

    let bracket_x = T::one() - o.a_coef * ca * ca - o.b_coef * s2a * st - ct * ct * sa * sa;
    let bracket_y = T::one() + s2t * ct - st * st * sn * sn;
    let m = mean_sum(theta, tau);
    DynSqueezing {
        var_sum_x: T::half() * bracket_x,
        var_sum_y: T::half() * bracket_y,
        mean_sum: m,
        q_x: m - bracket_x,
        q_y: m - bracket_y,
    }
}

/// `(Q_x(t), Q_y(t))`.
pub fn q_dynamic<T: Real>(theta: T, tau: T) -> (T, T) {
    let d = dyn_squeezing(theta, tau);
    (d.q_x, d.q_y)
}

/// Lakin-frame correlation tensor along the trajectory.
///
/// The `z1 z2` entry subtracts the product of the two mean-spin magnitudes,
/// `(|<S1>| + |<S2>|)^2 / 4`; `D_z1x2 = -D_x1z2` and the remaining
/// off-diagonal entries vanish.
pub fn dyn_correlations<T: Real>(theta: T, tau: T) -> CorrelationTensor<T> {
    let o = dyn_observables(theta, tau);
    let q = T::quarter();
    let (st, ct) = theta.sin_cos();
    let (sn, _) = tau.sin_cos();
    let s2t = (T::lit(2.0) * tau).sin();
    let (sa, ca) = o.alpha1.sin_cos();
    let (s2a, c2a) = (T::lit(2.0) * o.alpha1).sin_cos();
    let (a, b) = (o.a_coef, o.b_coef);

    let dxx = -q * (a * ca * ca + b * s2a * st + ct * ct * sa * sa);
    let dyy = q * (s2t * ct - st * st * sn * sn);
    let m = mean_sum(theta, tau);
    let dzz = q * (a * sa * sa - b * st * s2a + ct * ct * ca * ca) - q * m * m;
    let dxz = -s2a / T::lit(8.0) * (b * b - st * st) - b * st * c2a * q;

    let mut t = CorrelationTensor::zero(FrameTag::Lakin);
    t.d[0][0] = dxx;
    t.d[1][1] = dyy;
    t.d[2][2] = dzz;
    t.d[0][2] = dxz;
    t.d[2][0] = -dxz;
    t
}
