//! Sparse multivariate polynomials, slicing to univariate with polynomial
//! coefficients, polydomain geometry, and the boundary-zero trichotomy
//! classifier for stable polynomials.
//!
//! A zero of a polynomial that never vanishes on an open polydomain
//! `B_1 x ... x B_m` but does vanish somewhere on the closure falls into one
//! of exactly two cases: either every coordinate sits on its factor's
//! boundary, or the polynomial vanishes identically once the boundary
//! coordinates are frozen. [`classify_boundary_zero`] decides which, and
//! reports a violation if neither certificate checks out (which, for a
//! genuinely stable input, can only mean a numerical failure).

use crate::error::Error;
use crate::poly::Poly;
use crate::rootfind::{self, SolverConfig};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Default tolerance band around factor boundaries: a point is "on the
/// boundary" when its signed distance has magnitude at most this, and
/// "open-interior" when the signed distance is below minus this.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Default relative tolerance for dropping residue coefficients when a
/// partial assignment is substituted symbolically.
pub const RESTRICT_COLLECT_TOL: f64 = 1e-12;

/// A sparse `m`-variable polynomial: exponent tuple -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl MultiPoly {
    /// Collects terms, summing duplicates and dropping exact zeros.
    pub fn new(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Complex64)>,
    ) -> Result<Self, Error> {
        let mut map: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (exp, coeff) in terms {
            if exp.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: exp.len(),
                });
            }
            if !coeff.re.is_finite() || !coeff.im.is_finite() {
                return Err(Error::NonFinite);
            }
            let entry = map.entry(exp).or_insert_with(|| Complex64::new(0.0, 0.0));
            *entry += coeff;
        }
        map.retain(|_, c| c.norm() != 0.0);
        Ok(MultiPoly { nvars, terms: map })
    }

    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Evaluates by direct monomial powering.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64, Error> {
        if z.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: z.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (exp, coeff) in &self.terms {
            let mut term = *coeff;
            for (j, &e) in exp.iter().enumerate() {
                term *= z[j].powu(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// `max { beta(j) : a_beta != 0 }`, `None` for the zero polynomial.
    pub fn deg_in_var(&self, j: usize) -> Result<Option<u32>, Error> {
        if j >= self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: j + 1,
            });
        }
        Ok(self.terms.keys().map(|exp| exp[j]).max())
    }

    /// The univariate polynomial in variable `j` with the other variables
    /// fixed at `w` (in increasing variable order, skipping `j`). The result
    /// has ambient degree `deg_in_var(j)` regardless of `w`, so the ambient
    /// capacity is preserved even where the leading coefficient polynomial
    /// vanishes.
    pub fn slice(&self, j: usize, w: &[Complex64]) -> Result<Poly, Error> {
        if j >= self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: j + 1,
            });
        }
        if w.len() + 1 != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars - 1,
                got: w.len(),
            });
        }
        let nj = self.deg_in_var(j)?.ok_or(Error::ZeroPolynomial)?;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); nj as usize + 1];
        for (exp, coeff) in &self.terms {
            let mut value = *coeff;
            let mut wi = 0;
            for (i, &e) in exp.iter().enumerate() {
                if i == j {
                    continue;
                }
                value *= w[wi].powu(e);
                wi += 1;
            }
            coeffs[exp[j] as usize] += value;
        }
        Poly::new(coeffs)
    }

    /// Substitutes the fixed coordinates symbolically and collects the
    /// result over the remaining variables (in increasing original order).
    /// Coefficients of magnitude at most `RESTRICT_COLLECT_TOL` relative to
    /// the largest input coefficient are dropped.
    pub fn restrict(&self, fixed: &BTreeMap<usize, Complex64>) -> Result<MultiPoly, Error> {
        self.restrict_with_tol(fixed, RESTRICT_COLLECT_TOL)
    }

    pub fn restrict_with_tol(
        &self,
        fixed: &BTreeMap<usize, Complex64>,
        rel_tol: f64,
    ) -> Result<MultiPoly, Error> {
        if let Some(&j) = fixed.keys().find(|&&j| j >= self.nvars) {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: j + 1,
            });
        }
        if fixed.len() >= self.nvars {
            return Err(Error::FullAssignment);
        }
        let free: Vec<usize> = (0..self.nvars).filter(|j| !fixed.contains_key(j)).collect();
        let mut map: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (exp, coeff) in &self.terms {
            let mut value = *coeff;
            for (&j, &alpha) in fixed {
                value *= alpha.powu(exp[j]);
            }
            let reduced: Vec<u32> = free.iter().map(|&j| exp[j]).collect();
            *map.entry(reduced).or_insert_with(|| Complex64::new(0.0, 0.0)) += value;
        }
        let cutoff = rel_tol * self.max_coeff_norm();
        map.retain(|_, c| c.norm() > cutoff);
        Ok(MultiPoly {
            nvars: free.len(),
            terms: map,
        })
    }

    /// Product of two polynomials over the same variables.
    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, Error> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut map: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *map.entry(exp).or_insert_with(|| Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        map.retain(|_, c| c.norm() != 0.0);
        Ok(MultiPoly {
            nvars: self.nvars,
            terms: map,
        })
    }
}

/// One planar factor of a polydomain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainFactor {
    /// Open disc `|z - center| < radius`.
    Disc { center: Complex64, radius: f64 },
    /// The rotated open half-plane `e^(i theta) { Re z > 0 }`.
    Halfplane { theta: f64 },
    /// Open axis-aligned rectangle, `re` and `im` as `(low, high)` pairs.
    Rect { re: (f64, f64), im: (f64, f64) },
}

impl DomainFactor {
    /// Negative inside, zero on the boundary, positive outside. For the
    /// rectangle this is the sup-norm signed distance, which has the same
    /// sign and the same zero set as the Euclidean one.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        match *self {
            DomainFactor::Disc { center, radius } => (z - center).norm() - radius,
            DomainFactor::Halfplane { theta } => {
                -(z * Complex64::from_polar(1.0, -theta)).re
            }
            DomainFactor::Rect { re, im } => {
                let dx = (re.0 - z.re).max(z.re - re.1);
                let dy = (im.0 - z.im).max(z.im - im.1);
                dx.max(dy)
            }
        }
    }

    pub fn contains_open(&self, z: Complex64, tol: f64) -> bool {
        self.signed_distance(z) < -tol
    }

    pub fn on_boundary(&self, z: Complex64, tol: f64) -> bool {
        self.signed_distance(z).abs() <= tol
    }

    pub fn in_closure(&self, z: Complex64, tol: f64) -> bool {
        self.signed_distance(z) <= tol
    }

    /// Deterministic interior sample. Half-planes are sampled on a bounded
    /// patch; the probe is evidence, not certification, so bounded coverage
    /// is acceptable.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Complex64 {
        let u: f64 = rng.gen_range(0.0..1.0);
        let v: f64 = rng.gen_range(0.0..1.0);
        match *self {
            DomainFactor::Disc { center, radius } => {
                let r = radius * (0.999 * u).sqrt();
                center + Complex64::from_polar(r, std::f64::consts::TAU * v)
            }
            DomainFactor::Halfplane { theta } => {
                let re = 1e-3 + 4.0 * u;
                let im = 8.0 * v - 4.0;
                Complex64::new(re, im) * Complex64::from_polar(1.0, theta)
            }
            DomainFactor::Rect { re, im } => {
                let x = re.0 + (0.0005 + 0.999 * u) * (re.1 - re.0);
                let y = im.0 + (0.0005 + 0.999 * v) * (im.1 - im.0);
                Complex64::new(x, y)
            }
        }
    }
}

/// Cartesian product of planar factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Polydomain {
    pub factors: Vec<DomainFactor>,
}

impl Polydomain {
    pub fn new(factors: Vec<DomainFactor>) -> Self {
        Polydomain { factors }
    }

    /// The open unit polydisc in `m` variables.
    pub fn polydisc(m: usize) -> Self {
        Polydomain {
            factors: vec![
                DomainFactor::Disc {
                    center: Complex64::new(0.0, 0.0),
                    radius: 1.0,
                };
                m
            ],
        }
    }

    /// The open right polyhalfplane in `m` variables.
    pub fn right_polyhalfplane(m: usize) -> Self {
        Polydomain {
            factors: vec![DomainFactor::Halfplane { theta: 0.0 }; m],
        }
    }

    pub fn nvars(&self) -> usize {
        self.factors.len()
    }

    pub fn contains_open(&self, z: &[Complex64], tol: f64) -> bool {
        z.len() == self.factors.len()
            && self
                .factors
                .iter()
                .zip(z)
                .all(|(f, &zi)| f.contains_open(zi, tol))
    }
}

/// Outcome kinds of the boundary-zero classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroKind {
    /// No zero on the closure was presented (reserved for probe reports).
    NoBoundaryZero,
    /// Every coordinate of the zero lies on its factor's boundary.
    CaseOne,
    /// The restriction fixing the boundary coordinates vanishes identically.
    CaseTwo,
    /// The restriction does not vanish: for a stable input this cannot
    /// happen, so it flags a numerical or stability-hypothesis failure.
    Violation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroClassification {
    pub kind: ZeroKind,
    pub alpha: Vec<Complex64>,
    /// Variables whose coordinate is interior to its factor (0-based).
    pub s: Vec<usize>,
    /// Largest coefficient magnitude of the restricted polynomial, for
    /// `CaseTwo` (must be small) and `Violation` (is not).
    pub certificate: Option<f64>,
}

/// Classifies a zero `alpha` of `f` on the closure of the polydomain.
///
/// `tol` is the zero test for `|f(alpha)|` and for the restriction
/// certificate; boundary membership uses the [`BOUNDARY_TOL`] band.
pub fn classify_boundary_zero(
    f: &MultiPoly,
    dom: &Polydomain,
    alpha: &[Complex64],
    tol: f64,
) -> Result<ZeroClassification, Error> {
    classify_boundary_zero_with(f, dom, alpha, tol, BOUNDARY_TOL)
}

pub fn classify_boundary_zero_with(
    f: &MultiPoly,
    dom: &Polydomain,
    alpha: &[Complex64],
    tol: f64,
    boundary_tol: f64,
) -> Result<ZeroClassification, Error> {
    if dom.nvars() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: dom.nvars(),
        });
    }
    if alpha.len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: alpha.len(),
        });
    }
    let value = f.eval(alpha)?.norm();
    if value > tol {
        return Err(Error::NotAZero { magnitude: value });
    }
    for (j, (factor, &aj)) in dom.factors.iter().zip(alpha).enumerate() {
        if !factor.in_closure(aj, boundary_tol) {
            return Err(Error::OutsideClosure { index: j });
        }
    }

    let s: Vec<usize> = dom
        .factors
        .iter()
        .zip(alpha)
        .enumerate()
        .filter(|(_, (factor, &aj))| factor.contains_open(aj, boundary_tol))
        .map(|(j, _)| j)
        .collect();

    if s.is_empty() {
        return Ok(ZeroClassification {
            kind: ZeroKind::CaseOne,
            alpha: alpha.to_vec(),
            s,
            certificate: None,
        });
    }

    // the interior coordinates stay free; everything else is frozen
    let restricted = if s.len() == f.nvars() {
        f.clone()
    } else {
        let fixed: BTreeMap<usize, Complex64> = (0..f.nvars())
            .filter(|j| !s.contains(j))
            .map(|j| (j, alpha[j]))
            .collect();
        f.restrict_with_tol(&fixed, 0.0)?
    };
    let certificate = restricted.max_coeff_norm();
    let kind = if certificate <= tol * (1.0 + f.max_coeff_norm()) {
        ZeroKind::CaseTwo
    } else {
        ZeroKind::Violation
    };
    Ok(ZeroClassification {
        kind,
        alpha: alpha.to_vec(),
        s,
        certificate: Some(certificate),
    })
}

/// Result of a stability probe. Evidence, not certification: a clean probe
/// does not prove stability, but any zero it reports is genuine up to the
/// root-finder tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub zero_found: Option<Vec<Complex64>>,
    pub min_abs: f64,
}

/// Searches the open polydomain for zeros of `f`: seeded interior sampling
/// plus, per variable, root-finding on univariate slices through sampled
/// anchors, which turns any slice root inside the domain into a genuine
/// zero certificate.
pub fn stability_probe(
    f: &MultiPoly,
    dom: &Polydomain,
    samples: u32,
    seed: u64,
) -> Result<ProbeReport, Error> {
    if dom.nvars() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: dom.nvars(),
        });
    }
    let m = f.nvars();
    let samples = samples.max(1);
    let mut min_abs = f64::INFINITY;
    let mut zero_found: Option<Vec<Complex64>> = None;

    for k in 0..samples {
        let mut rng = probe_rng(seed, 0, k);
        let point: Vec<Complex64> = dom.factors.iter().map(|fac| fac.sample(&mut rng)).collect();
        let v = f.eval(&point)?.norm();
        if v < min_abs {
            min_abs = v;
        }
        if v <= 1e-12 && zero_found.is_none() {
            zero_found = Some(point);
        }
    }

    if m >= 2 {
        let anchors = (samples / 4).clamp(1, 8);
        for j in 0..m {
            for k in 0..anchors {
                let mut rng = probe_rng(seed, 1 + j as u64, k);
                let w: Vec<Complex64> = dom
                    .factors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .map(|(_, fac)| fac.sample(&mut rng))
                    .collect();
                let sliced = match f.slice(j, &w) {
                    Ok(p) => p,
                    Err(_) => break,
                };
                if sliced.is_zero() {
                    // f vanishes on this whole line; any interior z_j is a zero
                    let mut rng2 = probe_rng(seed, 100 + j as u64, k);
                    let zj = dom.factors[j].sample(&mut rng2);
                    let point = insert_coordinate(&w, j, zj);
                    min_abs = 0.0;
                    if zero_found.is_none() {
                        zero_found = Some(point);
                    }
                    continue;
                }
                if sliced.formal_degree().is_none_or(|d| d == 0) {
                    continue;
                }
                let rs = match rootfind::roots_with(&sliced, &SolverConfig::default()) {
                    Ok(rs) => rs,
                    Err(_) => continue,
                };
                for &lam in &rs.roots {
                    if dom.factors[j].contains_open(lam, BOUNDARY_TOL) {
                        let point = insert_coordinate(&w, j, lam);
                        let v = f.eval(&point)?.norm();
                        if v < min_abs {
                            min_abs = v;
                        }
                        if zero_found.is_none() {
                            zero_found = Some(point);
                        }
                    }
                }
            }
        }
    }

    Ok(ProbeReport {
        zero_found,
        min_abs,
    })
}

fn probe_rng(seed: u64, stream: u64, index: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(
        seed ^ stream.wrapping_mul(0xA076_1D64_78BD_642F)
            ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    )
}

fn insert_coordinate(w: &[Complex64], j: usize, zj: Complex64) -> Vec<Complex64> {
    let mut point = Vec::with_capacity(w.len() + 1);
    point.extend_from_slice(&w[..j]);
    point.push(zj);
    point.extend_from_slice(&w[j..]);
    point
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{c, cr};

    /// `2 z_2 + 4 z_1 - 3`
    fn example3_linear() -> MultiPoly {
        MultiPoly::new(
            2,
            vec![
                (vec![0, 0], cr(-3.0)),
                (vec![1, 0], cr(4.0)),
                (vec![0, 1], cr(2.0)),
            ],
        )
        .unwrap()
    }

    /// `6 z_1^2 - 8 z_1 z_2`
    fn example3_quadratic() -> MultiPoly {
        MultiPoly::new(
            2,
            vec![(vec![2, 0], cr(6.0)), (vec![1, 1], cr(-8.0))],
        )
        .unwrap()
    }

    #[test]
    fn evaluates_the_notation_examples() {
        assert_eq!(
            example3_linear().eval(&[cr(1.0), cr(1.0)]).unwrap(),
            cr(3.0)
        );
        assert_eq!(
            example3_quadratic().eval(&[cr(1.0), cr(1.0)]).unwrap(),
            cr(-2.0)
        );
        assert_eq!(
            MultiPoly::zero(3).eval(&[cr(1.0), cr(2.0), cr(3.0)]).unwrap(),
            cr(0.0)
        );
    }

    #[test]
    fn eval_rejects_wrong_arity() {
        assert!(matches!(
            example3_linear().eval(&[cr(1.0)]),
            Err(Error::ArityMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn per_variable_degrees() {
        let f = example3_quadratic();
        assert_eq!(f.deg_in_var(0).unwrap(), Some(2));
        assert_eq!(f.deg_in_var(1).unwrap(), Some(1));
        let constant = MultiPoly::new(2, vec![(vec![0, 0], cr(5.0))]).unwrap();
        assert_eq!(constant.deg_in_var(0).unwrap(), Some(0));
        assert_eq!(MultiPoly::zero(2).deg_in_var(1).unwrap(), None);
    }

    #[test]
    fn slices_collect_coefficients() {
        let f = example3_linear();
        assert_eq!(
            f.slice(0, &[cr(0.0)]).unwrap(),
            Poly::from_real(&[-3.0, 4.0]).unwrap()
        );
        let g = example3_quadratic();
        assert_eq!(
            g.slice(1, &[cr(1.0)]).unwrap(),
            Poly::from_real(&[6.0, -8.0]).unwrap()
        );
        // f = z_2 - 1 sliced in z_1 at z_2 = 1 is the zero polynomial of ambient 0
        let h = MultiPoly::new(2, vec![(vec![0, 1], cr(1.0)), (vec![0, 0], cr(-1.0))]).unwrap();
        let sliced = h.slice(0, &[cr(1.0)]).unwrap();
        assert!(sliced.is_zero());
        assert_eq!(sliced.ambient_degree(), 0);
    }

    #[test]
    fn slice_preserves_ambient_capacity() {
        // leading coefficient in z_1 vanishes at w = 0 but the capacity stays
        let f = MultiPoly::new(2, vec![(vec![2, 1], cr(1.0)), (vec![0, 0], cr(1.0))]).unwrap();
        let sliced = f.slice(0, &[cr(0.0)]).unwrap();
        assert_eq!(sliced.ambient_degree(), 2);
        assert_eq!(sliced.formal_degree(), Some(0));
    }

    #[test]
    fn restriction_prototypes() {
        let h = MultiPoly::new(2, vec![(vec![0, 1], cr(1.0)), (vec![0, 0], cr(-1.0))]).unwrap();
        let fixed: BTreeMap<usize, Complex64> = [(1usize, cr(1.0))].into_iter().collect();
        assert!(h.restrict(&fixed).unwrap().is_zero());

        let sum = MultiPoly::new(2, vec![(vec![1, 0], cr(1.0)), (vec![0, 1], cr(1.0))]).unwrap();
        let fixed: BTreeMap<usize, Complex64> = [(1usize, c(0.0, 1.0))].into_iter().collect();
        let restricted = sum.restrict(&fixed).unwrap();
        let expected =
            MultiPoly::new(1, vec![(vec![1], cr(1.0)), (vec![0], c(0.0, 1.0))]).unwrap();
        assert_eq!(restricted, expected);
    }

    #[test]
    fn nonzero_restriction_is_case_one_material() {
        let f = MultiPoly::new(2, vec![(vec![0, 0], cr(1.0)), (vec![1, 1], cr(1.0))]).unwrap();
        let fixed: BTreeMap<usize, Complex64> = [(1usize, cr(-1.0))].into_iter().collect();
        let restricted = f.restrict(&fixed).unwrap();
        let expected = MultiPoly::new(1, vec![(vec![0], cr(1.0)), (vec![1], cr(-1.0))]).unwrap();
        assert_eq!(restricted, expected);
        // cross-check against direct evaluation
        let mut rng = crate::testutil::rng(3);
        for _ in 0..20 {
            let z1 = crate::testutil::random_point(&mut rng, 2.0);
            let lhs = restricted.eval(&[z1]).unwrap();
            let rhs = f.eval(&[z1, cr(-1.0)]).unwrap();
            assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn restrict_guards_full_assignments() {
        let f = example3_linear();
        let fixed: BTreeMap<usize, Complex64> =
            [(0usize, cr(1.0)), (1usize, cr(2.0))].into_iter().collect();
        assert_eq!(f.restrict(&fixed), Err(Error::FullAssignment));
    }

    #[test]
    fn classifier_case_two_prototype() {
        // f = z_2 - 1 on the bidisc, zero at (0, 1): z_1 is interior
        let f = MultiPoly::new(2, vec![(vec![0, 1], cr(1.0)), (vec![0, 0], cr(-1.0))]).unwrap();
        let dom = Polydomain::polydisc(2);
        let out = classify_boundary_zero(&f, &dom, &[cr(0.0), cr(1.0)], 1e-9).unwrap();
        assert_eq!(out.kind, ZeroKind::CaseTwo);
        assert_eq!(out.s, vec![0]);
        assert!(out.certificate.unwrap() <= 1e-10);
    }

    #[test]
    fn classifier_case_one_prototypes() {
        let f = MultiPoly::new(2, vec![(vec![0, 0], cr(1.0)), (vec![1, 1], cr(1.0))]).unwrap();
        let dom = Polydomain::polydisc(2);
        let out = classify_boundary_zero(&f, &dom, &[cr(1.0), cr(-1.0)], 1e-9).unwrap();
        assert_eq!(out.kind, ZeroKind::CaseOne);
        assert!(out.s.is_empty());

        let sum = MultiPoly::new(2, vec![(vec![1, 0], cr(1.0)), (vec![0, 1], cr(1.0))]).unwrap();
        let dom = Polydomain::right_polyhalfplane(2);
        let out = classify_boundary_zero(&sum, &dom, &[c(0.0, 1.0), c(0.0, -1.0)], 1e-9).unwrap();
        assert_eq!(out.kind, ZeroKind::CaseOne);
    }

    #[test]
    fn classifier_rejects_non_zeros_and_outside_points() {
        let f = example3_linear();
        let dom = Polydomain::polydisc(2);
        assert!(matches!(
            classify_boundary_zero(&f, &dom, &[cr(0.0), cr(0.0)], 1e-9),
            Err(Error::NotAZero { .. })
        ));
        let h = MultiPoly::new(2, vec![(vec![0, 1], cr(1.0)), (vec![0, 0], cr(-2.0))]).unwrap();
        assert!(matches!(
            classify_boundary_zero(&h, &dom, &[cr(0.0), cr(2.0)], 1e-9),
            Err(Error::OutsideClosure { index: 1 })
        ));
    }

    #[test]
    fn probe_clears_stable_examples() {
        let sum = MultiPoly::new(2, vec![(vec![1, 0], cr(1.0)), (vec![0, 1], cr(1.0))]).unwrap();
        let dom = Polydomain::right_polyhalfplane(2);
        let report = stability_probe(&sum, &dom, 64, 9).unwrap();
        assert!(report.zero_found.is_none());
        assert!(report.min_abs > 0.0);

        let f = MultiPoly::new(2, vec![(vec![0, 0], cr(1.0)), (vec![1, 1], cr(1.0))]).unwrap();
        let dom = Polydomain::polydisc(2);
        let report = stability_probe(&f, &dom, 64, 9).unwrap();
        assert!(report.zero_found.is_none());
    }

    #[test]
    fn rectangle_factors_classify_and_probe() {
        let rect = DomainFactor::Rect {
            re: (-1.0, 1.0),
            im: (-1.0, 1.0),
        };
        assert!(rect.contains_open(c(0.0, 0.0), 1e-9));
        assert!(rect.on_boundary(c(1.0, 0.5), 1e-9));
        assert!(!rect.in_closure(c(1.5, 0.0), 1e-9));

        let dom = Polydomain::new(vec![rect, rect]);
        // f = z_1 - z_2 has diagonal zeros inside the square product
        let f = MultiPoly::new(2, vec![(vec![1, 0], cr(1.0)), (vec![0, 1], cr(-1.0))]).unwrap();
        let report = stability_probe(&f, &dom, 64, 17).unwrap();
        assert!(report.zero_found.is_some());

        // a zero with both coordinates on the rectangle edge is case one
        let g = MultiPoly::new(
            2,
            vec![(vec![1, 0], cr(1.0)), (vec![0, 1], cr(1.0)), (vec![0, 0], cr(-2.0))],
        )
        .unwrap();
        let out = classify_boundary_zero(&g, &dom, &[cr(1.0), cr(1.0)], 1e-9).unwrap();
        assert_eq!(out.kind, ZeroKind::CaseOne);
    }

    #[test]
    fn probe_finds_diagonal_zeros_through_slices() {
        let f = MultiPoly::new(2, vec![(vec![1, 0], cr(1.0)), (vec![0, 1], cr(-1.0))]).unwrap();
        let dom = Polydomain::polydisc(2);
        let report = stability_probe(&f, &dom, 64, 9).unwrap();
        let point = report.zero_found.expect("z_1 = z_2 zeros exist inside");
        assert!(f.eval(&point).unwrap().norm() <= 1e-9);
        assert!(dom.contains_open(&point, 0.0));
    }

    #[test]
    fn slice_and_restrict_agree_with_eval() {
        let mut rng = crate::testutil::rng(77);
        for _ in 0..50 {
            let f = random_multipoly(&mut rng, 3, 4);
            if f.is_zero() {
                continue;
            }
            // slice consistency
            let j = rand::Rng::gen_range(&mut rng, 0..3usize);
            let w: Vec<Complex64> = (0..2)
                .map(|_| crate::testutil::random_point(&mut rng, 1.5))
                .collect();
            if f.deg_in_var(j).unwrap().is_some() {
                let sliced = f.slice(j, &w).unwrap();
                let t = crate::testutil::random_point(&mut rng, 1.5);
                let lhs = sliced.eval(t);
                let rhs = f.eval(&insert_coordinate(&w, j, t)).unwrap();
                assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
            }
            // restrict consistency
            let fixed: BTreeMap<usize, Complex64> =
                [(j, crate::testutil::random_point(&mut rng, 1.5))]
                    .into_iter()
                    .collect();
            let restricted = f.restrict(&fixed).unwrap();
            let zs: Vec<Complex64> = (0..2)
                .map(|_| crate::testutil::random_point(&mut rng, 1.5))
                .collect();
            let lhs = restricted.eval(&zs).unwrap();
            let rhs = f.eval(&insert_coordinate(&zs, j, fixed[&j])).unwrap();
            assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn stable_product_forces_zero_slice() {
        // f = (z_2 - 1) * (2 + z_1 z_2 / 4) is nonzero on the bidisc and
        // vanishes at (0, 1); freezing z_2 = 1 must kill the whole slice
        let left =
            MultiPoly::new(2, vec![(vec![0, 1], cr(1.0)), (vec![0, 0], cr(-1.0))]).unwrap();
        let right =
            MultiPoly::new(2, vec![(vec![0, 0], cr(2.0)), (vec![1, 1], cr(0.25))]).unwrap();
        let f = left.mul(&right).unwrap();
        let dom = Polydomain::polydisc(2);
        let probe = stability_probe(&f, &dom, 128, 4).unwrap();
        assert!(probe.zero_found.is_none());
        let out = classify_boundary_zero(&f, &dom, &[cr(0.0), cr(1.0)], 1e-9).unwrap();
        assert_eq!(out.kind, ZeroKind::CaseTwo);
        assert_eq!(out.s, vec![0]);
        let q = f.slice(0, &[cr(1.0)]).unwrap();
        assert!(q.is_zero());
    }

    pub(super) fn random_multipoly(
        rng: &mut rand_chacha::ChaCha8Rng,
        nvars: usize,
        max_terms: usize,
    ) -> MultiPoly {
        let count = rand::Rng::gen_range(rng, 1..=max_terms);
        let terms: Vec<(Vec<u32>, Complex64)> = (0..count)
            .map(|_| {
                let exp: Vec<u32> = (0..nvars)
                    .map(|_| rand::Rng::gen_range(rng, 0..=2u32))
                    .collect();
                (exp, crate::testutil::random_point(rng, 1.0))
            })
            .collect();
        MultiPoly::new(nvars, terms).unwrap()
    }
}
