//! Mutual spin-spin correlations `D_mu,nu = <S1mu S2nu> - <S1mu><S2nu>`.
//!
//! For two spinors the same-particle ("self") correlations carry no extra
//! information: `S_mu S_nu = (delta_mu,nu + 2 i eps_mu,nu,l S_l) / 4` for spin 1/2,
//! so [`SELF_CORRELATION`] is identically zero.

use serde::Serialize;

use crate::frames::{self, frame_or_lab, spin_operators, Subsystem};
use crate::linalg::Vec3;
use crate::scalar::Real;
use crate::spinor::TwoSpinorState;

/// Self-correlation between distinct spinors inside one spin-1/2 subsystem.
pub const SELF_CORRELATION: f64 = 0.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FrameTag {
    Lab,
    Lakin,
}

/// Rows are subsystem-1 axes, columns subsystem-2 axes, ordered `(x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrelationTensor<T> {
    pub d: [[T; 3]; 3],
    pub frame: FrameTag,
}

impl<T: Real> CorrelationTensor<T> {
    pub fn zero(frame: FrameTag) -> Self {
        Self {
            d: [[T::zero(); 3]; 3],
            frame,
        }
    }

    pub fn frobenius(&self) -> T {
        self.d.iter().flatten().fold(T::zero(), |a, v| a + *v * *v).sqrt()
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        self.d
            .iter()
            .flatten()
            .zip(o.d.iter().flatten())
            .fold(T::zero(), |a, (x, y)| a.max((*x - *y).abs()))
    }
}

fn tensor_in<T: Real>(s: &TwoSpinorState<T>, ax1: [Vec3<T>; 3], ax2: [Vec3<T>; 3], frame: FrameTag) -> CorrelationTensor<T> {
    let ops = spin_operators::<T>();
    let a: Vec<_> = ax1.iter().map(|v| ops.along(Subsystem::One, v)).collect();
    let b: Vec<_> = ax2.iter().map(|v| ops.along(Subsystem::Two, v)).collect();
    let ma: Vec<T> = a.iter().map(|o| frames::expect_re(s, o)).collect();
    let mb: Vec<T> = b.iter().map(|o| frames::expect_re(s, o)).collect();
    let mut d = [[T::zero(); 3]; 3];
    for (i, row) in d.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = frames::expect_re(s, &(a[i] * b[j])) - ma[i] * mb[j];
        }
    }
    CorrelationTensor { d, frame }
}

/// Full 3x3 tensor; in Lakin mode undefined frames fall back to lab axes.
pub fn mutual_correlations<T: Real>(s: &TwoSpinorState<T>, frame: FrameTag) -> CorrelationTensor<T> {
    let lab = [Vec3::x_axis(), Vec3::y_axis(), Vec3::z_axis()];
    match frame {
        FrameTag::Lab => tensor_in(s, lab, lab, frame),
        FrameTag::Lakin => {
            let f1 = frame_or_lab(frames::lakin_frame(s, Subsystem::One));
            let f2 = frame_or_lab(frames::lakin_frame(s, Subsystem::Two));
            tensor_in(s, f1.axes(), f2.axes(), frame)
        }
    }
}

/// Lakin-frame tensor of `(cos t/2, 0, 0, sin t/2)`: `diag(sin t, -sin t, sin^2 t) / 4`.
pub fn canonical_correlations<T: Real>(theta: T) -> CorrelationTensor<T> {
    let s = theta.sin();
    let q = T::quarter();
    let mut t = CorrelationTensor::zero(FrameTag::Lakin);
    t.d[0][0] = q * s;
    t.d[1][1] = -q * s;
    t.d[2][2] = q * s * s;
    t
}
