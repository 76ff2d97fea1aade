//! Helpers shared by the integration test targets.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rootperturb::poly::Poly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
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

/// Like `random_roots` but resamples until all pairwise separations reach
/// `min_sep`.
pub fn separated_roots(
    rng: &mut ChaCha8Rng,
    count: usize,
    rmin: f64,
    rmax: f64,
    min_sep: f64,
) -> Vec<Complex64> {
    loop {
        let zs = random_roots(rng, count, rmin, rmax);
        let ok = (0..count).all(|i| {
            ((i + 1)..count).all(|j| (zs[i] - zs[j]).norm() >= min_sep)
        });
        if ok {
            return zs;
        }
    }
}

/// Per-coefficient complex deviations with uniform phases, moduli rescaled
/// so the largest is exactly 1.
pub fn unit_perturbation(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    let mut moduli: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..1.0)).collect();
    let phases: Vec<f64> = (0..len)
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    let max = moduli.iter().copied().fold(0.0, f64::max).max(1e-300);
    for m in &mut moduli {
        *m /= max;
    }
    moduli
        .into_iter()
        .zip(phases)
        .map(|(m, ph)| Complex64::from_polar(m, ph))
        .collect()
}

/// Adds `scale * direction` to the coefficients of `q`.
pub fn perturbed(q: &Poly, direction: &[Complex64], scale: f64) -> Poly {
    let coeffs: Vec<Complex64> = q
        .coeffs()
        .iter()
        .zip(direction)
        .map(|(&c, &d)| c + d * scale)
        .collect();
    Poly::new(coeffs).expect("perturbed coefficients stay finite")
}

/// The worked-example pair: `q = z^3 - z^2 + z - 1` in ambient capacity 4
/// and its uniformly perturbed companion.
pub fn example1_q() -> Poly {
    Poly::from_real(&[-1.0, 1.0, -1.0, 1.0, 0.0]).unwrap()
}

pub fn example1_p(eta: f64) -> Poly {
    Poly::from_real(&[-1.0 + eta, 1.0 + eta, -1.0 + eta, 1.0 + eta, eta]).unwrap()
}
