//! Shared helpers for the in-crate unit tests.

use crate::poly::Poly;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the square `[-scale, scale]^2`.
pub fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-scale..scale),
        rng.gen_range(-scale..scale),
    )
}

/// Random polynomial of the given ambient degree with a nonzero leading
/// coefficient, entries in the unit square.
pub fn random_poly(rng: &mut ChaCha8Rng, ambient: usize) -> Poly {
    let mut coeffs: Vec<Complex64> = (0..=ambient).map(|_| random_point(rng, 1.0)).collect();
    while coeffs[ambient].norm() < 0.1 {
        coeffs[ambient] = random_point(rng, 1.0);
    }
    Poly::new(coeffs).unwrap()
}

/// Random points in the annulus `rmin <= |z| <= rmax`.
pub fn random_roots(rng: &mut ChaCha8Rng, count: usize, rmin: f64, rmax: f64) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            let r = rng.gen_range(rmin..rmax);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, theta)
        })
        .collect()
}
