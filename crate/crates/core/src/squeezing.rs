//! The bipartite squeezing criterion evaluated in the individual Lakin
//! frames, its closed form on the canonical family, and an optimizer over the
//! residual transverse azimuths.
//!
//! A state is squeezed along `S1.n1_perp + S2.n2_perp` when the variance of
//! that component is below `(|<S1>| + |<S2>|) / 2`. Reports carry the signed
//! margin `q = (|<S1>| + |<S2>|) - 2 var`, positive when squeezed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{self, frame_or_lab, spin_operators, LakinFrame, Subsystem};
use crate::linalg::Vec3;
use crate::scalar::Real;
use crate::spinor::TwoSpinorState;

/// Margin a `q` value must exceed before a state counts as squeezed.
pub fn squeeze_threshold<T: Real>() -> T {
    T::tol(1e-12, 1e4)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SqueezingReport<T> {
    pub q_x: T,
    pub q_y: T,
    pub var_sum_x: T,
    pub var_sum_y: T,
    pub cross_x: T,
    pub cross_y: T,
    pub mean1: T,
    pub mean2: T,
    pub squeezed_x: bool,
    pub squeezed_y: bool,
    /// `None` where the mean spin vanishes; lab axes were used instead.
    pub frames: [Option<LakinFrame<T>>; 2],
}

impl<T: Real> SqueezingReport<T> {
    pub fn squeezed(&self) -> bool {
        self.squeezed_x || self.squeezed_y
    }
}

fn check_unit<T: Real>(d: &Vec3<T>) -> Result<()> {
    let n = d.norm();
    if (n - T::one()).abs() > T::tol(1e-10, 64.0) {
        return Err(Error::NotUnit {
            norm: n.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Variance of `S1.d1 + S2.d2`.
pub fn variance_sum<T: Real>(s: &TwoSpinorState<T>, d1: &Vec3<T>, d2: &Vec3<T>) -> Result<T> {
    check_unit(d1)?;
    check_unit(d2)?;
    let op = spin_operators::<T>().collective(d1, d2);
    Ok(frames::variance(s, &op).max(T::zero()))
}

/// `<(S1.a) (S2.b)>`.
fn cross<T: Real>(s: &TwoSpinorState<T>, a: &Vec3<T>, b: &Vec3<T>) -> T {
    let ops = spin_operators::<T>();
    frames::expect_re(s, &(ops.along(Subsystem::One, a) * ops.along(Subsystem::Two, b)))
}

pub fn squeezing_report<T: Real>(s: &TwoSpinorState<T>) -> SqueezingReport<T> {
    let f1 = frames::lakin_frame(s, Subsystem::One);
    let f2 = frames::lakin_frame(s, Subsystem::Two);
    let (l1, l2) = (frame_or_lab(f1), frame_or_lab(f2));
    let ops = spin_operators::<T>();
    let var = |a: &Vec3<T>, b: &Vec3<T>| frames::variance(s, &ops.collective(a, b)).max(T::zero());

    let var_sum_x = var(&l1.n_perp, &l2.n_perp);
    let var_sum_y = var(&l1.n_perp2, &l2.n_perp2);
    let mean_sum = l1.mean_norm + l2.mean_norm;
    let two = T::lit(2.0);
    let q_x = mean_sum - two * var_sum_x;
    let q_y = mean_sum - two * var_sum_y;
    let thr = squeeze_threshold::<T>();
    SqueezingReport {
        q_x,
        q_y,
        var_sum_x,
        var_sum_y,
        cross_x: cross(s, &l1.n_perp, &l2.n_perp),
        cross_y: cross(s, &l1.n_perp2, &l2.n_perp2),
        mean1: l1.mean_norm,
        mean2: l2.mean_norm,
        squeezed_x: q_x > thr,
        squeezed_y: q_y > thr,
        frames: [f1, f2],
    }
}

/// `(|cos t| - sin t - 1, |cos t| + sin t - 1)` for `(cos t/2, 0, 0, sin t/2)`.
pub fn q_canonical<T: Real>(theta: T) -> (T, T) {
    let (s, co) = theta.sin_cos();
    (co.abs() - s - T::one(), co.abs() + s - T::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OptimizedQ<T> {
    pub best_q: T,
    /// Azimuths of `n_i_perp` about `n_i`, measured from the report's axes.
    pub angle1: T,
    pub angle2: T,
}

/// Maximizes `q` over rotations of both transverse axes about their mean
/// directions: a `grid_n x grid_n` scan followed by pattern-search refinement.
pub fn q_optimized<T: Real>(s: &TwoSpinorState<T>, grid_n: usize) -> Result<OptimizedQ<T>> {
    if grid_n < 8 {
        return Err(Error::Input(format!("grid_n must be at least 8, got {grid_n}")));
    }
    let l1 = frame_or_lab(frames::lakin_frame(s, Subsystem::One));
    let l2 = frame_or_lab(frames::lakin_frame(s, Subsystem::Two));
    let ops = spin_operators::<T>();
    let mean_sum = l1.mean_norm + l2.mean_norm;
    let q = |a: T, b: T| {
        let (u1, _) = l1.twisted(a);
        let (u2, _) = l2.twisted(b);
        mean_sum - T::lit(2.0) * frames::variance(s, &ops.collective(&u1, &u2))
    };

    // q has period pi in each azimuth up to the sign of the cross term, so the
    // full circle is scanned.
    let step = T::TAU() / T::lit(grid_n as f64);
    let mut best = (q(T::zero(), T::zero()), T::zero(), T::zero());
    for i in 0..grid_n {
        for j in 0..grid_n {
            let (a, b) = (step * T::lit(i as f64), step * T::lit(j as f64));
            let v = q(a, b);
            if v > best.0 {
                best = (v, a, b);
            }
        }
    }

    let mut h = step;
    let floor = T::tol(1e-12, 16.0);
    while h > floor {
        let mut improved = false;
        for (da, db) in [(h, T::zero()), (-h, T::zero()), (T::zero(), h), (T::zero(), -h), (h, h), (-h, -h), (h, -h), (-h, h)] {
            let (a, b) = (best.1 + da, best.2 + db);
            let v = q(a, b);
            if v > best.0 {
                best = (v, a, b);
                improved = true;
            }
        }
        if !improved {
            h = h * T::half();
        }
    }

    Ok(OptimizedQ {
        best_q: best.0,
        angle1: crate::scalar::wrap_two_pi(best.1),
        angle2: crate::scalar::wrap_two_pi(best.2),
    })
}
