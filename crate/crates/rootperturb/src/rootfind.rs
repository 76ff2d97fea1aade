//! Numerical root oracle: all roots of a univariate polynomial, counting
//! multiplicities, via Aberth-Ehrlich simultaneous iteration with Newton
//! polishing.
//!
//! The solver normalizes the input to monic form, strips exact zero roots,
//! and starts every remaining iterate on a circle whose radius is the monic
//! root bound, so no root can be missed by under-estimating the search
//! region; retry attempts switch to per-root radii from the coefficient
//! Newton polygon, which rescues inputs whose root magnitudes span many
//! orders. A polynomial with a tiny leading coefficient (the degree-raising
//! perturbation shape, with roots near infinity) is solved through its
//! reciprocal, whose roots are the inverses: that orientation keeps every
//! evaluation in floating-point range no matter how large the outlying
//! roots are. Multiplicity is recovered afterwards by single-linkage
//! clustering, never from derivative vanishing: the separation statements
//! only ever need counts inside balls.

use crate::error::Error;
use crate::poly::Poly;
use num_complex::Complex64;

/// Default target for the scaled monic residual.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default Aberth sweep budget (one sweep updates every live iterate once).
pub const DEFAULT_MAX_SWEEPS: u32 = 200;
/// Default single-linkage radius for the distinct-root view.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    /// Requested bound on the scaled residual `|p(l)/a_deg| / max(1,|l|)^deg`.
    pub tol: f64,
    /// Sweep budget per attempt.
    pub max_sweeps: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: DEFAULT_TOL,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

/// The multiset of roots of one polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// All roots, multiplicities by repetition; length equals the formal degree.
    pub roots: Vec<Complex64>,
    /// Scaled monic residual `|p(l)/a_deg| / max(1,|l|)^deg` per root.
    pub residuals: Vec<f64>,
    /// The tolerance the solver actually certifies. Equals the requested
    /// tolerance unless the double-precision evaluation noise floor of this
    /// particular polynomial is larger, in which case that floor is declared.
    pub declared_tol: f64,
    /// `max_i |c_i - c'_i| / max_i |c_i|` between the input coefficients and
    /// the expansion of `a_deg * prod (z - root_k)`.
    pub reconstruction_defect: f64,
}

/// Distinct roots with multiplicities, the `(zeta_j, m_j)` view.
#[derive(Clone, Debug, PartialEq)]
pub struct DistinctRoots {
    pub points: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
}

impl DistinctRoots {
    /// Encodes "no roots" (a nonzero constant polynomial).
    pub fn empty() -> Self {
        DistinctRoots {
            points: Vec::new(),
            multiplicities: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Largest root modulus, `0.0` when there are no roots.
    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// All `deg p` roots of `p` at the default sweep budget.
pub fn roots(p: &Poly, tol: f64) -> Result<RootSet, Error> {
    roots_with(
        p,
        &SolverConfig {
            tol,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        },
    )
}

/// All `deg p` roots of `p`, counting multiplicities.
pub fn roots_with(p: &Poly, cfg: &SolverConfig) -> Result<RootSet, Error> {
    let fd = p.formal_degree().ok_or(Error::ZeroPolynomial)?;
    if fd == 0 {
        return Err(Error::DegreeZero);
    }
    let lead = p.coeff(fd);
    let monic: Vec<Complex64> = (0..=fd).map(|i| p.coeff(i) / lead).collect();

    // exact zero roots come off as a z^t factor before iterating
    let t = monic
        .iter()
        .position(|c| c.norm() != 0.0)
        .expect("monic polynomial has a nonzero coefficient");
    let reduced: Vec<Complex64> = monic[t..].to_vec();

    let mut all_roots = vec![Complex64::new(0.0, 0.0); t];
    if reduced.len() > 1 {
        all_roots.extend(solve_oriented(&reduced, cfg)?);
    }
    sort_roots(&mut all_roots);

    let residuals: Vec<f64> = all_roots
        .iter()
        .map(|&z| scaled_residual(&monic, z))
        .collect();

    let floor: Vec<f64> = all_roots.iter().map(|&z| residual_floor(&monic, z)).collect();
    let mut declared = cfg.tol;
    for (r, f) in residuals.iter().zip(&floor) {
        if *r > cfg.tol && *r > *f {
            return Err(Error::NoConvergence {
                best: all_roots,
                residuals,
            });
        }
        declared = declared.max(*r);
    }

    let reconstruction_defect = reconstruction_defect(p, lead, &all_roots, fd);
    Ok(RootSet {
        roots: all_roots,
        residuals,
        declared_tol: declared,
        reconstruction_defect,
    })
}

/// Single-linkage clustering of a root multiset at the given radius; each
/// cluster is reported at its centroid with multiplicity equal to its size.
pub fn cluster(rs: &RootSet, cluster_tol: f64) -> DistinctRoots {
    assert!(cluster_tol > 0.0, "cluster tolerance must be positive");
    let n = rs.roots.len();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    for i in 0..n {
        for j in (i + 1)..n {
            if (rs.roots[i] - rs.roots[j]).norm() <= cluster_tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }

    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    let mut group_of = vec![usize::MAX; n];
    let mut order: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push((Complex64::new(0.0, 0.0), 0));
            order.push(Vec::new());
        }
        let g = group_of[r];
        groups[g].0 += rs.roots[i];
        groups[g].1 += 1;
        order[g].push(i);
    }

    let mut out: Vec<(Complex64, usize)> = groups
        .into_iter()
        .map(|(sum, count)| (sum / count as f64, count))
        .collect();
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite roots")
    });

    DistinctRoots {
        points: out.iter().map(|g| g.0).collect(),
        multiplicities: out.iter().map(|g| g.1).collect(),
    }
}

/// Convenience: solve and cluster in one call.
pub fn distinct_roots(p: &Poly, cfg: &SolverConfig, cluster_tol: f64) -> Result<DistinctRoots, Error> {
    Ok(cluster(&roots_with(p, cfg)?, cluster_tol))
}

// ---------------------------------------------------------------------------
// solver internals
// ---------------------------------------------------------------------------

/// Evaluates `p(z)` and `p'(z)` in one Horner pass over ascending coefficients.
fn horner_both(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let d = coeffs.len() - 1;
    let mut acc = coeffs[d];
    let mut dacc = Complex64::new(0.0, 0.0);
    for i in (0..d).rev() {
        dacc = dacc * z + acc;
        acc = acc * z + coeffs[i];
    }
    (acc, dacc)
}

/// `|p(z)| / max(1,|z|)^deg` for a monic coefficient slice, computed with
/// incremental scaling so huge `|z|` underflows gracefully instead of
/// overflowing the numerator.
fn scaled_residual(monic: &[Complex64], z: Complex64) -> f64 {
    let d = monic.len() - 1;
    let m = z.norm().max(1.0);
    let u = z / m;
    let mut acc = monic[d];
    let mut scale = 1.0;
    for i in (0..d).rev() {
        scale /= m;
        acc = acc * u + monic[i] * scale;
    }
    acc.norm()
}

/// The double-precision noise floor of the scaled residual at `z`: a Horner
/// evaluation of `p` carries roundoff of order `eps * sum |c_i| |z|^i`, so no
/// computed residual below this level is meaningful.
fn residual_floor(monic: &[Complex64], z: Complex64) -> f64 {
    let d = monic.len() - 1;
    let m = z.norm().max(1.0);
    let u = z.norm() / m;
    let mut acc = monic[d].norm();
    let mut scale = 1.0;
    for i in (0..d).rev() {
        scale /= m;
        acc = acc * u + monic[i].norm() * scale;
    }
    4.0 * (d as f64 + 1.0) * f64::EPSILON * acc
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| {
        (a.norm(), a.arg())
            .partial_cmp(&(b.norm(), b.arg()))
            .expect("finite roots")
    });
}

/// Picks the better-conditioned orientation for the iteration. A monic
/// polynomial whose other coefficients are huge (a tiny leading coefficient
/// before normalization) has roots near infinity that direct evaluation may
/// not even reach in f64; its reversal has those roots near the origin
/// instead, so solve whichever side has the smaller coefficient spread and
/// invert back if it was the reversal.
fn solve_oriented(reduced: &[Complex64], cfg: &SolverConfig) -> Result<Vec<Complex64>, Error> {
    let spread = |c: &[Complex64]| c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let fwd_spread = spread(reduced);

    let tail = reduced[0];
    let reversed: Vec<Complex64> = reduced.iter().rev().map(|&c| c / tail).collect();
    let rev_spread = spread(&reversed);

    if fwd_spread > 1e12 && rev_spread < fwd_spread / 1e6 {
        match aberth_with_retries(&reversed, cfg) {
            Ok(rev_roots) if rev_roots.iter().all(|z| z.norm() > 0.0) => {
                return Ok(rev_roots.iter().map(|z| 1.0 / z).collect());
            }
            Ok(_) => {
                // an exact zero slipped in; fall through to direct orientation
            }
            Err(Error::NoConvergence { best, .. }) => {
                // report best iterates in the caller's orientation
                let inverted: Vec<Complex64> = best
                    .iter()
                    .map(|z| if z.norm() > 0.0 { 1.0 / z } else { *z })
                    .collect();
                let residuals = inverted.iter().map(|&z| scaled_residual(reduced, z)).collect();
                return Err(Error::NoConvergence {
                    best: inverted,
                    residuals,
                });
            }
            Err(e) => return Err(e),
        }
    }
    aberth_with_retries(reduced, cfg)
}

#[derive(Clone, Copy)]
enum InitScheme {
    /// All iterates on one circle at the monic root bound times `scale`.
    Circle { scale: f64 },
    /// Per-root radii from the upper convex hull of `(i, ln |c_i|)`.
    NewtonPolygon { scale: f64 },
}

/// Per-root starting radii from the coefficient Newton polygon: for each
/// upper-hull segment between indices `i1 < i2`, the `i2 - i1` roots it
/// accounts for start at radius `|c_i1 / c_i2|^(1/(i2-i1))`.
fn newton_polygon_radii(coeffs: &[Complex64]) -> Vec<f64> {
    let pts: Vec<(f64, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(i, c)| (i as f64, c.norm().ln()))
        .collect();
    // upper hull, scanning left to right
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut radii = Vec::with_capacity(coeffs.len() - 1);
    for seg in hull.windows(2) {
        let (i1, y1) = seg[0];
        let (i2, y2) = seg[1];
        let r = ((y1 - y2) / (i2 - i1)).exp();
        for _ in 0..(i2 - i1) as usize {
            radii.push(r);
        }
    }
    radii
}

/// Completeness gate on the monic reconstruction defect. Per-root residuals
/// cannot see a duplicated or missing root (a copy of a genuine root has a
/// tiny residual); the reconstruction mismatch is order 1 in that case, far
/// above this gate, while honest solves sit at rounding level even for
/// clustered roots.
const DEFECT_GATE: f64 = 1e-3;

/// `max_i |expand(roots)_i - c_i| / max_i |c_i|` for a monic slice.
fn monic_defect(coeffs: &[Complex64], roots: &[Complex64]) -> f64 {
    let expanded = Poly::from_roots(Complex64::new(1.0, 0.0), roots);
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (expanded.coeff(i) - c).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Aberth-Ehrlich with a small deterministic retry ladder. The first attempt
/// places all iterates on the monic-root-bound circle; retries switch to
/// Newton-polygon radii and vary the phase offset, which rescues both the
/// rare symmetric stall and root sets spanning many orders of magnitude.
/// An attempt is accepted only if every residual clears its target and the
/// reconstruction defect clears the completeness gate.
fn aberth_with_retries(reduced: &[Complex64], cfg: &SolverConfig) -> Result<Vec<Complex64>, Error> {
    let schemes = [
        (InitScheme::Circle { scale: 1.0 }, 0.4),
        (InitScheme::NewtonPolygon { scale: 1.0 }, 1.3),
        (InitScheme::NewtonPolygon { scale: 2.0 }, 2.2),
        (InitScheme::Circle { scale: 1.0 / 3.0 }, 3.1),
        (InitScheme::NewtonPolygon { scale: 0.5 }, 4.0),
    ];
    let mut best: Option<(Vec<Complex64>, Vec<f64>, f64)> = None;
    for (scheme, phase) in schemes {
        let mut iterates = aberth_sweeps(reduced, cfg, scheme, phase);
        for z in iterates.iter_mut() {
            *z = newton_polish(reduced, *z);
        }
        let residuals: Vec<f64> = iterates.iter().map(|&z| scaled_residual(reduced, z)).collect();
        let worst = residuals
            .iter()
            .zip(iterates.iter())
            .map(|(r, &z)| {
                let floor = residual_floor(reduced, z);
                if *r <= cfg.tol || *r <= floor {
                    0.0
                } else {
                    *r
                }
            })
            .fold(0.0, f64::max);
        let defect = monic_defect(reduced, &iterates);
        if worst == 0.0 && defect <= DEFECT_GATE {
            return Ok(iterates);
        }
        let badness = worst.max(defect);
        match &best {
            Some((_, _, w)) if *w <= badness => {}
            _ => best = Some((iterates, residuals, badness)),
        }
    }
    let (best, residuals, _) = best.expect("at least one attempt ran");
    Err(Error::NoConvergence { best, residuals })
}

fn aberth_sweeps(
    reduced: &[Complex64],
    cfg: &SolverConfig,
    scheme: InitScheme,
    phase: f64,
) -> Vec<Complex64> {
    let d = reduced.len() - 1;
    let bound_radius = {
        let sum: f64 = reduced[..d].iter().map(|c| c.norm()).sum();
        sum.max(1.0)
    };
    let radii: Vec<f64> = match scheme {
        InitScheme::Circle { scale } => vec![bound_radius * scale; d],
        InitScheme::NewtonPolygon { scale } => newton_polygon_radii(reduced)
            .into_iter()
            .map(|r| (r * scale).min(bound_radius))
            .collect(),
    };
    let mut z: Vec<Complex64> = radii
        .iter()
        .enumerate()
        .map(|(k, &r)| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / d as f64 + phase))
        .collect();
    let mut frozen = vec![false; d];

    for _ in 0..cfg.max_sweeps {
        let mut all_frozen = true;
        for k in 0..d {
            if frozen[k] {
                continue;
            }
            let (pv, dv) = horner_both(reduced, z[k]);
            let resid = scaled_residual(reduced, z[k]);
            if resid <= cfg.tol || pv.norm() == 0.0 || resid <= residual_floor(reduced, z[k]) {
                frozen[k] = true;
                continue;
            }
            all_frozen = false;

            let newton = if dv.norm() == 0.0 {
                // stationary point: step off it deterministically
                Complex64::new(1e-6 * (1.0 + z[k].norm()), 0.0)
            } else {
                pv / dv
            };
            let mut s = Complex64::new(0.0, 0.0);
            let mut collision = false;
            for j in 0..d {
                if j == k {
                    continue;
                }
                let diff = z[k] - z[j];
                if diff.norm() == 0.0 {
                    collision = true;
                    break;
                }
                s += 1.0 / diff;
            }
            if collision {
                let nudge = Complex64::new(1e-9, 1e-9) * (1.0 + z[k].norm());
                z[k] += nudge;
                continue;
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let w = if denom.norm() == 0.0 { newton } else { newton / denom };
            let next = z[k] - w;
            if next.re.is_finite() && next.im.is_finite() {
                if (next - z[k]).norm() <= 4.0 * f64::EPSILON * (1.0 + z[k].norm()) {
                    frozen[k] = true;
                }
                z[k] = next;
            } else {
                z[k] = Complex64::from_polar(radii[k] * 0.618, z[k].arg() + 0.7);
            }
        }
        if all_frozen {
            break;
        }
    }
    z
}

/// A few guarded Newton steps; keeps the lowest-residual iterate seen.
fn newton_polish(monic: &[Complex64], start: Complex64) -> Complex64 {
    // direct evaluation must stay in f64 range
    let d = (monic.len() - 1) as f64;
    let top = monic.iter().map(|c| c.norm()).fold(1.0, f64::max);
    if d * start.norm().max(1.0).ln() + top.ln() > 690.0 {
        return start;
    }
    let mut z = start;
    let mut best = z;
    let mut best_resid = scaled_residual(monic, z);
    for _ in 0..40 {
        let (pv, dv) = horner_both(monic, z);
        if pv.norm() == 0.0 || dv.norm() == 0.0 {
            break;
        }
        let step = pv / dv;
        let next = z - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        z = next;
        let resid = scaled_residual(monic, z);
        if resid < best_resid {
            best_resid = resid;
            best = z;
        }
        // relative stop: a root of magnitude 1e-26 needs its steps measured
        // against itself, not against 1
        if step.norm() <= f64::EPSILON * z.norm() {
            break;
        }
    }
    best
}

fn reconstruction_defect(p: &Poly, lead: Complex64, roots: &[Complex64], fd: usize) -> f64 {
    let expanded = Poly::from_roots(lead, roots);
    let scale = (0..=fd).map(|i| p.coeff(i).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    (0..=fd)
        .map(|i| (expanded.coeff(i) - p.coeff(i)).norm())
        .fold(0.0, f64::max)
        / scale
}
