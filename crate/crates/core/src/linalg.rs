//! Small fixed-size complex linear algebra: 2x2 single-spin matrices, 4x4
//! two-spinor operators, real 3-vectors and the matrix exponential.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use num_complex::Complex;

use crate::scalar::{c, Real};

pub type Amps<T> = [Complex<T>; 4];

/// Real 3-vector.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Real> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self([x, y, z])
    }

    pub fn x_axis() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn y_axis() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn z_axis() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a, b, c] = self.0;
        let [x, y, z] = o.0;
        Self::new(b * z - c * y, c * x - a * z, a * y - b * x)
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.0[0] * k, self.0[1] * k, self.0[2] * k)
    }

    pub fn normalized(&self) -> Self {
        self.scale(T::one() / self.norm())
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2])
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2])
    }
}

/// Real 3x3 matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Real> Mat3<T> {
    pub fn identity() -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = T::one();
        }
        Self(m)
    }

    pub fn from_columns(a: Vec3<T>, b: Vec3<T>, cc: Vec3<T>) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for i in 0..3 {
            m[i][0] = a.0[i];
            m[i][1] = b.0[i];
            m[i][2] = cc.0[i];
        }
        Self(m)
    }

    pub fn column(&self, j: usize) -> Vec3<T> {
        Vec3::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn transpose(&self) -> Self {
        let mut m = self.0;
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[j][i];
            }
        }
        Self(m)
    }

    pub fn apply(&self, v: &Vec3<T>) -> Vec3<T> {
        let r = |i: usize| self.0[i][0] * v.0[0] + self.0[i][1] * v.0[1] + self.0[i][2] * v.0[2];
        Vec3::new(r(0), r(1), r(2))
    }
}

impl<T: Real> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = [[T::zero(); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).fold(T::zero(), |acc, k| acc + self.0[i][k] * o.0[k][j]);
            }
        }
        Self(m)
    }
}

/// 2x2 complex matrix acting on one spinor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2<T>(pub [[Complex<T>; 2]; 2]);

impl<T: Real> Mat2<T> {
    pub fn identity() -> Self {
        Self([[c(T::one()), c(T::zero())], [c(T::zero()), c(T::one())]])
    }

    pub fn apply(&self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = self.0;
        let b = o.0;
        Self([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }
}

/// 4x4 complex operator on the two-spinor space, basis `(++, +-, -+, --)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Op<T>(pub [[Complex<T>; 4]; 4]);

impl<T: Real> Op<T> {
    pub fn zero() -> Self {
        Self([[c(T::zero()); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = c(T::one());
        }
        m
    }

    /// `a (x) b` with subsystem 1 as the slow index.
    pub fn kron(a: &Mat2<T>, b: &Mat2<T>) -> Self {
        let mut m = Self::zero();
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        m.0[2 * i1 + i2][2 * j1 + j2] = a.0[i1][j1] * b.0[i2][j2];
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|v| *v = *v * k);
        m
    }

    pub fn scale_re(&self, k: T) -> Self {
        self.scale(c(k))
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn apply(&self, v: &Amps<T>) -> Amps<T> {
        let mut out = [c(T::zero()); 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).fold(c(T::zero()), |acc, j| acc + self.0[i][j] * v[j]);
        }
        out
    }

    pub fn trace(&self) -> Complex<T> {
        (0..4).fold(c(T::zero()), |acc, i| acc + self.0[i][i])
    }

    pub fn frobenius(&self) -> T {
        self.0
            .iter()
            .flatten()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr())
            .sqrt()
    }

    /// Induced 1-norm (max column sum).
    pub fn norm1(&self) -> T {
        (0..4)
            .map(|j| (0..4).fold(T::zero(), |acc, i| acc + self.0[i][j].norm()))
            .fold(T::zero(), T::max)
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        (*self - self.dagger()).frobenius() <= tol
    }

    pub fn commutator(&self, o: &Self) -> Self {
        *self * *o - *o * *self
    }
}

impl<T: Real> Add for Op<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = m.0[i][j] + o.0[i][j];
            }
        }
        m
    }
}

impl<T: Real> Sub for Op<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Neg for Op<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-T::one())
    }
}

impl<T: Real> Mul for Op<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = (0..4).fold(c(T::zero()), |acc, k| acc + self.0[i][k] * o.0[k][j]);
            }
        }
        m
    }
}

pub fn inner<T: Real>(a: &Amps<T>, b: &Amps<T>) -> Complex<T> {
    a.iter()
        .zip(b.iter())
        .fold(c(T::zero()), |acc, (x, y)| acc + x.conj() * y)
}

pub fn norm_amps<T: Real>(a: &Amps<T>) -> T {
    a.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr()).sqrt()
}

pub fn dist_amps<T: Real>(a: &Amps<T>, b: &Amps<T>) -> T {
    a.iter()
        .zip(b.iter())
        .fold(T::zero(), |acc, (x, y)| acc + (*x - *y).norm_sqr())
        .sqrt()
}

const PADE_ORDER: usize = 6;

/// Matrix exponential by Pade(6,6) approximation with scaling and squaring.
///
/// The argument is scaled so its 1-norm is at most 1/2, where the (6,6)
/// approximant's truncation error is below 1e-16 relative.
pub fn expm<T: Real>(a: &Op<T>) -> Op<T> {
    let norm = a.norm1();
    let half = T::half();
    let mut squarings = 0u32;
    if norm > half {
        squarings = (norm / half).log2().ceil().to_u32().unwrap_or(0);
    }
    let scaled = a.scale_re(T::one() / T::lit(2f64.powi(squarings as i32)));

    // c_k = (2m-k)! m! / ((2m)! k! (m-k)!)
    let m = PADE_ORDER;
    let mut coef = [T::one(); PADE_ORDER + 1];
    for k in 1..=m {
        let num = T::lit((m - k + 1) as f64);
        let den = T::lit((k * (2 * m - k + 1)) as f64);
        coef[k] = coef[k - 1] * num / den;
    }

    let mut numer = Op::zero();
    let mut denom = Op::zero();
    let mut power = Op::identity();
    for (k, ck) in coef.iter().enumerate() {
        let term = power.scale_re(*ck);
        numer = numer + term;
        denom = if k % 2 == 0 { denom + term } else { denom - term };
        power = power * scaled;
    }

    let mut result = solve(&denom, &numer).expect("Pade denominator is well conditioned");
    for _ in 0..squarings {
        result = result * result;
    }
    result
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve<T: Real>(a: &Op<T>, b: &Op<T>) -> Option<Op<T>> {
    let mut a = a.0;
    let mut b = b.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| {
                a[i][col]
                    .norm()
                    .partial_cmp(&a[j][col].norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[pivot][col].norm() == T::zero() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] = a[row][k] - f * a[col][k];
            }
            for k in 0..4 {
                b[row][k] = b[row][k] - f * b[col][k];
            }
        }
    }
    let mut x = [[c(T::zero()); 4]; 4];
    for row in (0..4).rev() {
        for k in 0..4 {
            let mut acc = b[row][k];
            for j in row + 1..4 {
                acc = acc - a[row][j] * x[j][k];
            }
            x[row][k] = acc / a[row][row];
        }
    }
    Some(Op(x))
}
