//! Quantitative perturbation bounds for nonmonic polynomials.
//!
//! Everything here is driven by two constants computed from the reference
//! coefficient sequence `b_0, ..., b_n` with `b_0 != 0`:
//!
//! ```text
//! D = [ 1 + sum_{i=0..n} (2/|b_0|^2) (|b_0| + |b_i|) ] * sum_{i=0..n} |b_i / b_0|
//! C = sum_{i=1..n} (2/|b_0|^2) (|b_0| + |b_i|) * D^(n-i)
//! ```
//!
//! For a perturbed sequence within `max_dev` of the reference, every root of
//! the perturbed polynomial is within `C^(1/n) * max_dev^(1/n)` of some root
//! of the reference (in the appropriate coordinates). The two-regime
//! analysis applies this through the reciprocal construction, which is why
//! the unperturbed polynomial's ascending coefficients are fed to
//! [`cd_constants`] unreversed: index 0 (the value at the origin) plays the
//! leading role.

use crate::error::Error;
use crate::poly::Poly;
use crate::rootfind::{self, SolverConfig};
use num_complex::Complex64;

/// The constants of the minimum-distance estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundConstants {
    pub c: f64,
    pub d: f64,
    /// `sum_i |b_i / b_0|`, reused as the coarse perturbation ceiling.
    pub sum_ratio: f64,
}

/// Which hypothesis inequalities the supplied pair satisfies. Failures do
/// not abort the analysis; bounds are still computed and the caller decides
/// what the numbers are worth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypothesisReport {
    /// `|a_0 - b_0| <= |b_0| / 2` at the anchor index (the constant term in
    /// the two-regime analysis; the leading coefficient in the descending
    /// minimum-distance convention).
    pub constant_term: bool,
    /// `|a_degq - b_degq| < |b_degq|`, which pins the degree from below.
    pub leading_at_degq: bool,
    /// `max_dev <= sum_ratio`.
    pub global_small: bool,
    /// `max_dev` does not exceed the admissibility threshold; vacuously true
    /// when the unperturbed polynomial is constant.
    pub eps_admissible: bool,
    /// `max_{0<=i<=n} |a_i - b_i|`.
    pub max_dev: f64,
    /// The translation applied when the unperturbed polynomial vanished at
    /// the origin; root statements are translated back before reporting.
    pub shift_applied: Option<Complex64>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.constant_term && self.leading_at_degq && self.global_small && self.eps_admissible
    }
}

/// The two disjunct bounds: every root is either huge (`|l|^-1` small) or
/// close to a root of the unperturbed polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoRegimeBound {
    /// Bound on `|l|^-1`.
    pub infinity_bound: f64,
    /// Bound on `min_i |l - zeta_i|`; equals `2 (max |zeta_i|)^2` times the
    /// infinity bound.
    pub near_bound: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Near,
    Infinity,
    /// Neither disjunct holds. For hypothesis-passing inputs this falsifies
    /// the bound and signals a numerical bug, never expected behavior.
    Violation,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootRegime {
    pub root: Complex64,
    pub regime: Regime,
    /// Bound minus attained value for the satisfied disjunct (negative worst
    /// excess for violations).
    pub slack: f64,
}

/// Full output of the two-regime analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub constants: BoundConstants,
    /// Admissibility threshold `(1/C) (2 max |zeta_i|)^(-n)`; infinite when
    /// the unperturbed polynomial is constant.
    pub threshold: f64,
    pub hypotheses: HypothesisReport,
    pub bounds: TwoRegimeBound,
    pub per_root: Vec<RootRegime>,
}

/// Knobs for the analyses that need the root oracle.
#[derive(Clone, Copy, Debug)]
pub struct AnalyzeConfig {
    pub solver: SolverConfig,
    /// Multiplies the computed largest root modulus of the unperturbed
    /// polynomial before it enters the threshold and the near bound; set
    /// slightly above 1 to guard against root-finder under-estimation.
    pub zeta_inflation: f64,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            solver: SolverConfig::default(),
            zeta_inflation: 1.0,
        }
    }
}

/// Upper bound on the modulus of every root: after normalizing to monic,
/// `max { 1, sum of |non-leading coefficients| }`.
pub fn monic_root_bound(f: &Poly) -> Result<f64, Error> {
    let fd = f.formal_degree().ok_or(Error::ZeroPolynomial)?;
    if fd == 0 {
        return Err(Error::DegreeZero);
    }
    let lead = f.coeff(fd);
    let sum: f64 = (0..fd).map(|i| (f.coeff(i) / lead).norm()).sum();
    Ok(sum.max(1.0))
}

/// The constants `C`, `D` and `sum_ratio` from a coefficient sequence in the
/// descending positional convention: `b[0]` multiplies the highest power and
/// must be nonzero. The two-regime analysis passes ascending coefficients
/// unreversed, so `b[0]` is the value at the origin there.
pub fn cd_constants(b: &[Complex64], n: usize) -> Result<BoundConstants, Error> {
    if b.len() != n + 1 {
        return Err(Error::AmbientMismatch {
            left: b.len().saturating_sub(1),
            right: n,
        });
    }
    let b0 = b[0].norm();
    if b0 == 0.0 {
        return Err(Error::LeadingZero);
    }
    let sum_ratio: f64 = b.iter().map(|bi| bi.norm() / b0).sum();
    let pair_sum: f64 = b.iter().map(|bi| 2.0 / (b0 * b0) * (b0 + bi.norm())).sum();
    let d = (1.0 + pair_sum) * sum_ratio;
    let mut c = 0.0;
    for (i, bi) in b.iter().enumerate().skip(1) {
        c += 2.0 / (b0 * b0) * (b0 + bi.norm()) * d.powi((n - i) as i32);
    }
    Ok(BoundConstants { c, d, sum_ratio })
}

/// Minimum-distance estimate between the roots of `f` and the roots of `g`
/// (descending convention, shared ambient degree `n`, leading coefficient of
/// `g` at index `n` nonzero): every root `a` of `f` satisfies
/// `min_i |a - beta_i| <= C^(1/n) max_dev^(1/n)`.
///
/// The bound is returned together with the hypothesis flags; it is only
/// meaningful when they pass.
pub fn min_distance_bound(f: &Poly, g: &Poly) -> Result<(f64, HypothesisReport), Error> {
    let n = check_shared_ambient(f, g)?;
    // reverse into the descending positional convention
    let b: Vec<Complex64> = (0..=n).map(|k| g.coeff(n - k)).collect();
    let constants = cd_constants(&b, n)?;
    let max_dev = max_deviation(f, g)?;
    let report = HypothesisReport {
        constant_term: (f.coeff(n) - g.coeff(n)).norm() <= 0.5 * g.coeff(n).norm(),
        leading_at_degq: true,
        global_small: max_dev <= constants.sum_ratio,
        eps_admissible: true,
        max_dev,
        shift_applied: None,
    };
    let bound = constants.c.powf(1.0 / n as f64) * max_dev.powf(1.0 / n as f64);
    Ok((bound, report))
}

/// `(1/C) (2 max |zeta_i|)^(-n)` over the roots of `q`; the perturbation
/// ceiling under which the two-regime bound is guaranteed. Returns `+inf`
/// for constant `q` (the hypothesis is vacuous there).
pub fn admissibility_threshold(q: &Poly) -> Result<f64, Error> {
    admissibility_threshold_with(q, &AnalyzeConfig::default())
}

pub fn admissibility_threshold_with(q: &Poly, cfg: &AnalyzeConfig) -> Result<f64, Error> {
    let fd = q.formal_degree().ok_or(Error::ZeroPolynomial)?;
    let n = q.ambient_degree();
    if n == 0 && fd == 0 {
        return Ok(f64::INFINITY);
    }
    if q.eval(Complex64::new(0.0, 0.0)).norm() == 0.0 {
        return Err(Error::LeadingZero);
    }
    if fd == 0 {
        return Ok(f64::INFINITY);
    }
    let constants = cd_constants(q.coeffs(), n)?;
    let rs = rootfind::roots_with(q, &cfg.solver)?;
    let max_zeta = rs.roots.iter().map(|z| z.norm()).fold(0.0, f64::max) * cfg.zeta_inflation;
    Ok(1.0 / constants.c * (2.0 * max_zeta).powi(-(n as i32)))
}

/// The full two-regime analysis of a perturbed/unperturbed pair.
///
/// When `q(0) = 0` the pair is translated to a nonvanishing point first and
/// every reported root is translated back; the bounds and hypothesis flags
/// refer to the shifted coordinates, as recorded in `shift_applied`.
pub fn two_regime_analyze(p: &Poly, q: &Poly) -> Result<BoundReport, Error> {
    two_regime_analyze_with(p, q, &AnalyzeConfig::default())
}

pub fn two_regime_analyze_with(
    p: &Poly,
    q: &Poly,
    cfg: &AnalyzeConfig,
) -> Result<BoundReport, Error> {
    let n = check_shared_ambient(p, q)?;
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }

    let origin = Complex64::new(0.0, 0.0);
    let (pw, qw, shift) = if q.eval(origin).norm() == 0.0 {
        let z0 = q.find_nonvanishing_point()?;
        (p.shift(z0), q.shift(z0), Some(z0))
    } else {
        (p.clone(), q.clone(), None)
    };

    let constants = cd_constants(qw.coeffs(), n)?;
    let deg_q = qw.formal_degree().expect("qw is nonzero");

    let q_roots = if deg_q >= 1 {
        rootfind::roots_with(&qw, &cfg.solver)?.roots
    } else {
        Vec::new()
    };
    let max_zeta = q_roots.iter().map(|z| z.norm()).fold(0.0, f64::max) * cfg.zeta_inflation;
    let threshold = if deg_q == 0 {
        f64::INFINITY
    } else {
        1.0 / constants.c * (2.0 * max_zeta).powi(-(n as i32))
    };

    let max_dev = max_deviation(&pw, &qw)?;
    let hypotheses = HypothesisReport {
        constant_term: (pw.coeff(0) - qw.coeff(0)).norm() <= 0.5 * qw.coeff(0).norm(),
        leading_at_degq: (pw.coeff(deg_q) - qw.coeff(deg_q)).norm() < qw.coeff(deg_q).norm(),
        global_small: max_dev <= constants.sum_ratio,
        eps_admissible: deg_q == 0 || max_dev <= threshold,
        max_dev,
        shift_applied: shift,
    };

    let infinity_bound = constants.c.powf(1.0 / n as f64) * max_dev.powf(1.0 / n as f64);
    let near_bound = 2.0 * max_zeta * max_zeta * infinity_bound;
    let bounds = TwoRegimeBound {
        infinity_bound,
        near_bound,
    };

    let mut per_root = Vec::new();
    if pw.formal_degree().is_some_and(|d| d >= 1) {
        let p_roots = rootfind::roots_with(&pw, &cfg.solver)?.roots;
        for lam in p_roots {
            let near_dist = q_roots
                .iter()
                .map(|z| (lam - z).norm())
                .fold(f64::INFINITY, f64::min);
            let inv = 1.0 / lam.norm();
            let (regime, slack) = if near_dist <= near_bound {
                (Regime::Near, near_bound - near_dist)
            } else if inv <= infinity_bound {
                (Regime::Infinity, infinity_bound - inv)
            } else {
                let excess = (near_dist - near_bound).min(inv - infinity_bound);
                (Regime::Violation, -excess)
            };
            let reported = match shift {
                Some(z0) => lam + z0,
                None => lam,
            };
            per_root.push(RootRegime {
                root: reported,
                regime,
                slack,
            });
        }
    }

    Ok(BoundReport {
        constants,
        threshold,
        hypotheses,
        bounds,
        per_root,
    })
}

/// `max_{0<=i<=n} |a_i - b_i|` over a shared ambient range.
pub fn max_deviation(p: &Poly, q: &Poly) -> Result<f64, Error> {
    let n = check_shared_ambient(p, q)?;
    Ok((0..=n)
        .map(|i| (p.coeff(i) - q.coeff(i)).norm())
        .fold(0.0, f64::max))
}

fn check_shared_ambient(p: &Poly, q: &Poly) -> Result<usize, Error> {
    let n = p.ambient_degree();
    if n != q.ambient_degree() {
        return Err(Error::AmbientMismatch {
            left: n,
            right: q.ambient_degree(),
        });
    }
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{c, cr, rng};

    fn example1_q() -> Poly {
        Poly::from_real(&[-1.0, 1.0, -1.0, 1.0, 0.0]).unwrap()
    }

    fn example1_p(eta: f64) -> Poly {
        Poly::from_real(&[-1.0 + eta, 1.0 + eta, -1.0 + eta, 1.0 + eta, eta]).unwrap()
    }

    #[test]
    fn golden_constants_are_exact() {
        let bc = cd_constants(example1_q().coeffs(), 4).unwrap();
        assert_eq!(bc.sum_ratio, 4.0);
        assert_eq!(bc.d, 76.0);
        assert_eq!(bc.c, 1779314.0);
    }

    #[test]
    fn hand_evaluated_degree_one_constants() {
        let bc = cd_constants(&[cr(1.0), cr(0.0)], 1).unwrap();
        assert_eq!(bc.sum_ratio, 1.0);
        assert_eq!(bc.d, 7.0);
        assert_eq!(bc.c, 2.0);
    }

    #[test]
    fn sum_ratio_is_scale_invariant() {
        let b = [c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 3.0)];
        let doubled: Vec<_> = b.iter().map(|&x| x * 2.0).collect();
        let bc1 = cd_constants(&b, 2).unwrap();
        let bc2 = cd_constants(&doubled, 2).unwrap();
        assert!((bc1.sum_ratio - bc2.sum_ratio).abs() < 1e-14);
    }

    #[test]
    fn leading_zero_is_rejected() {
        assert_eq!(
            cd_constants(&[cr(0.0), cr(1.0)], 1),
            Err(Error::LeadingZero)
        );
    }

    #[test]
    fn golden_threshold() {
        let t = admissibility_threshold(&example1_q()).unwrap();
        let expected = 1.0 / 28469024.0;
        assert!(
            (t - expected).abs() <= 1e-15 * expected,
            "threshold {t} vs {expected}"
        );
    }

    #[test]
    fn threshold_of_linear_polynomial_by_hand() {
        // q = z - 1: C = 4 from the degree-one constants, max root modulus 1
        let q = Poly::from_real(&[-1.0, 1.0]).unwrap();
        let bc = cd_constants(q.coeffs(), 1).unwrap();
        assert_eq!((bc.sum_ratio, bc.d, bc.c), (2.0, 18.0, 4.0));
        assert_eq!(admissibility_threshold(&q).unwrap(), 1.0 / 8.0);
    }

    #[test]
    fn threshold_is_phase_invariant() {
        let q = example1_q();
        let rotated = q.scale(Complex64::from_polar(1.0, 0.83));
        let t1 = admissibility_threshold(&q).unwrap();
        let t2 = admissibility_threshold(&rotated).unwrap();
        assert!((t1 - t2).abs() <= 1e-12 * t1);
    }

    #[test]
    fn threshold_of_constant_is_infinite() {
        let q = Poly::from_real(&[3.0, 0.0]).unwrap();
        assert_eq!(admissibility_threshold(&q).unwrap(), f64::INFINITY);
    }

    #[test]
    fn monic_root_bound_examples() {
        let p = Poly::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(monic_root_bound(&p).unwrap(), 1.0);
        let p = Poly::from_real(&[-5.0, 1.0]).unwrap();
        assert_eq!(monic_root_bound(&p).unwrap(), 5.0);
        let q = Poly::from_real(&[-1.0, 1.0, -1.0, 1.0]).unwrap();
        assert_eq!(monic_root_bound(&q).unwrap(), 3.0);
        assert_eq!(monic_root_bound(&Poly::zero(2)), Err(Error::ZeroPolynomial));
        assert_eq!(
            monic_root_bound(&Poly::from_real(&[2.0]).unwrap()),
            Err(Error::DegreeZero)
        );
    }

    #[test]
    fn min_distance_zero_deviation_gives_zero_bound() {
        let g = Poly::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let (bound, report) = min_distance_bound(&g, &g).unwrap();
        assert_eq!(bound, 0.0);
        assert!(report.all_pass());
        assert_eq!(report.max_dev, 0.0);
    }

    #[test]
    fn min_distance_bound_contains_perturbed_roots() {
        let g = Poly::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let f = Poly::from_real(&[-1.0 + 1e-6, 0.0, 1.0]).unwrap();
        let (bound, report) = min_distance_bound(&f, &g).unwrap();
        assert!(report.all_pass());
        let bc = cd_constants(&[cr(1.0), cr(0.0), cr(-1.0)], 2).unwrap();
        let expected = bc.c.sqrt() * 1e-3;
        // the deviation itself is only accurate to ~3e-11 relative: it is
        // computed as (-1 + 1e-6) - (-1) in doubles
        assert!((bound - expected).abs() <= 1e-9 * expected);
        let f_roots = rootfind::roots(&f, 1e-12).unwrap();
        for a in &f_roots.roots {
            let dist = [cr(1.0), cr(-1.0)]
                .iter()
                .map(|b| (a - b).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(dist <= bound + 1e-9);
        }
    }

    #[test]
    fn min_distance_flags_violations_but_still_computes() {
        let g = Poly::from_real(&[-1.0, 0.0, 1.0]).unwrap();
        let f = Poly::from_real(&[-1.0, 0.0, 3.0]).unwrap();
        let (bound, report) = min_distance_bound(&f, &g).unwrap();
        assert!(!report.constant_term);
        assert!(bound > 0.0);
    }

    #[test]
    fn example1_two_regime_report() {
        let report = two_regime_analyze(&example1_p(1e-8), &example1_q()).unwrap();
        assert!(report.hypotheses.all_pass());
        assert!(report.hypotheses.shift_applied.is_none());
        assert!((report.bounds.infinity_bound - 0.36523).abs() < 1e-4);
        assert!((report.bounds.near_bound - 0.73045).abs() < 1e-4);
        let regimes: Vec<Regime> = report.per_root.iter().map(|r| r.regime).collect();
        let near = regimes.iter().filter(|r| **r == Regime::Near).count();
        let inf = regimes.iter().filter(|r| **r == Regime::Infinity).count();
        assert_eq!((near, inf), (3, 1));
        assert_eq!(report.threshold, 1.0 / 28469024.0);
    }

    #[test]
    fn identical_pair_is_all_near_with_zero_bounds() {
        let q = example1_q();
        let report = two_regime_analyze(&q, &q).unwrap();
        assert!(report.hypotheses.all_pass());
        assert_eq!(report.bounds.infinity_bound, 0.0);
        assert_eq!(report.bounds.near_bound, 0.0);
        for rr in &report.per_root {
            assert_eq!(rr.regime, Regime::Near);
            assert_eq!(rr.slack, 0.0);
        }
    }

    #[test]
    fn vanishing_origin_triggers_shift() {
        // q = z(z - 1), perturbed by 1e-12 on every coefficient
        let q = Poly::from_real(&[0.0, -1.0, 1.0]).unwrap();
        let p = Poly::from_real(&[1e-12, -1.0 + 1e-12, 1.0 + 1e-12]).unwrap();
        let report = two_regime_analyze(&p, &q).unwrap();
        let z0 = report.hypotheses.shift_applied.expect("shift applied");
        assert_eq!(z0, cr(-1.0));
        assert!(report.hypotheses.all_pass());
        for rr in &report.per_root {
            assert_ne!(rr.regime, Regime::Violation);
        }
        // reported roots are in original coordinates, near 0 and 1
        for rr in &report.per_root {
            let d = (rr.root - cr(0.0)).norm().min((rr.root - cr(1.0)).norm());
            assert!(d < 1e-6, "root {} far from {{0, 1}}", rr.root);
        }
    }

    #[test]
    fn zero_q_is_rejected() {
        let p = Poly::from_real(&[1.0, 1.0]).unwrap();
        assert_eq!(two_regime_analyze(&p, &Poly::zero(1)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn mismatched_ambient_is_rejected() {
        let p = Poly::from_real(&[1.0, 1.0]).unwrap();
        let q = Poly::from_real(&[1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            two_regime_analyze(&p, &q),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn bound_is_monotone_in_deviation() {
        let q = example1_q();
        let mut last = -1.0;
        for eta in [1e-12, 1e-10, 1e-8] {
            let report = two_regime_analyze(&example1_p(eta), &q).unwrap();
            assert!(report.bounds.infinity_bound >= last);
            last = report.bounds.infinity_bound;
        }
    }

    #[test]
    fn root_bound_holds_for_random_monic_polynomials(){
        let mut r = rng(17);
        for _ in 0..100 {
            let deg = 1 + rand::Rng::gen_range(&mut r, 0..10) as usize;
            let mut coeffs: Vec<Complex64> = (0..deg)
                .map(|_| crate::testutil::random_point(&mut r, 2.0))
                .collect();
            coeffs.push(cr(1.0));
            let p = Poly::new(coeffs).unwrap();
            let bound = monic_root_bound(&p).unwrap();
            let rs = rootfind::roots(&p, 1e-10).unwrap();
            for z in &rs.roots {
                assert!(z.norm() <= bound + 1e-9);
            }
        }
    }
}
