#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinor_squeeze::{Orientation, Rotation, State, Vec3};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn orientation(r: &mut impl Rng) -> Orientation {
    Orientation::new(r.gen_range(0.0..PI), r.gen_range(0.0..TAU))
}

pub fn euler(r: &mut impl Rng) -> Rotation {
    Rotation::new(r.gen_range(0.0..TAU), r.gen_range(0.0..PI), r.gen_range(0.0..TAU))
}

pub fn state(r: &mut impl Rng) -> State {
    loop {
        let amps = [0; 4].map(|_| Complex::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        if let Ok(s) = State::normalized(amps) {
            return s;
        }
    }
}

/// `(n_perp, n_perp2, n)` as the columns of a random rotation.
pub fn triad(r: &mut impl Rng) -> [Vec3<f64>; 3] {
    let m = euler(r).rotation_matrix();
    [m.column(0), m.column(1), m.column(2)]
}

/// Lattice `start + k (stop - start) / (n - 1)`.
pub fn lattice(start: f64, stop: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| start + (stop - start) * k as f64 / (n - 1) as f64)
}

/// The 25 x 49 `(theta, tau)` grid over `[0, pi] x [0, 2 pi]`.
pub fn dyn_grid() -> Vec<(f64, f64)> {
    lattice(0.0, PI, 25).flat_map(|th| lattice(0.0, TAU, 49).map(move |ta| (th, ta))).collect()
}

pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
