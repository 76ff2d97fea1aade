//! Qualitative separation machinery: admissible radii, the partition of a
//! perturbed polynomial's roots into per-root clusters plus an infinity
//! group, and an empirical estimator for the perturbation size under which
//! the partition has the exact expected counts.

use crate::error::Error;
use crate::poly::Poly;
use crate::rootfind::{self, DistinctRoots, RootSet, SolverConfig};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The admissible epsilon range for exact grouping.
///
/// `omega` is the minimum pairwise distance between distinct unperturbed
/// roots, `psi` the reciprocal of the largest root modulus; both are
/// infinite in the degenerate cases (no roots; a single root; a single root
/// at the origin for `psi`). Exact grouping is guaranteed for
/// `0 < epsilon < eps_max = min(omega, psi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationRadii {
    pub omega: f64,
    pub psi: f64,
    pub eps_max: f64,
}

/// One epsilon-ball around a distinct unperturbed root.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub center: Complex64,
    /// Multiplicity of the unperturbed root, i.e. the expected member count.
    pub multiplicity: usize,
    /// Perturbed roots within `epsilon` of the center (nearest center wins
    /// when balls overlap).
    pub members: Vec<Complex64>,
}

/// Partition of the perturbed roots: per-center clusters, the group beyond
/// `1/epsilon` (the neighborhood of infinity), and whatever fits neither.
#[derive(Clone, Debug, PartialEq)]
pub struct RootGrouping {
    pub epsilon: f64,
    pub clusters: Vec<Cluster>,
    pub infinity_group: Vec<Complex64>,
    pub unassigned: Vec<Complex64>,
    /// True iff every cluster holds exactly its expected multiplicity, the
    /// infinity group holds exactly `deg p - deg q` roots, and nothing is
    /// unassigned.
    pub counts_valid: bool,
    /// Whether `epsilon < eps_max`; the grouping is still computed when this
    /// is false, the exact-count guarantee just no longer applies.
    pub epsilon_admissible: bool,
    pub deg_p: usize,
    pub deg_q: usize,
}

impl RootGrouping {
    pub fn total_roots(&self) -> usize {
        self.clusters.iter().map(|c| c.members.len()).sum::<usize>()
            + self.infinity_group.len()
            + self.unassigned.len()
    }

    /// The four ball statements of the separation picture, checked on the
    /// stored data: centers inside `B(0, 1/eps)`, centers outside each
    /// other's `eps`-balls, members inside the closed `1/eps`-ball, and
    /// infinity members strictly outside it.
    pub fn separation_chain_holds(&self) -> bool {
        let inv_eps = 1.0 / self.epsilon;
        let centers_inside = self.clusters.iter().all(|c| c.center.norm() < inv_eps);
        let centers_separated = self.clusters.iter().enumerate().all(|(i, ci)| {
            self.clusters
                .iter()
                .enumerate()
                .all(|(j, cj)| i == j || (ci.center - cj.center).norm() >= self.epsilon)
        });
        let members_bounded = self
            .clusters
            .iter()
            .flat_map(|c| c.members.iter())
            .all(|l| l.norm() <= inv_eps);
        let infinity_outside = self.infinity_group.iter().all(|l| l.norm() > inv_eps);
        centers_inside && centers_separated && members_bounded && infinity_outside
    }
}

/// Computes `omega`, `psi` and their minimum for the distinct unperturbed
/// roots. A constant unperturbed polynomial is encoded as an empty root set.
pub fn separation_radii(q_roots: &DistinctRoots) -> SeparationRadii {
    let d = q_roots.len();
    let omega = if d <= 1 {
        f64::INFINITY
    } else {
        let mut min = f64::INFINITY;
        for i in 0..d {
            for j in (i + 1)..d {
                min = min.min((q_roots.points[i] - q_roots.points[j]).norm());
            }
        }
        min
    };
    let psi = if d == 0 || (d == 1 && q_roots.points[0].norm() == 0.0) {
        f64::INFINITY
    } else {
        1.0 / q_roots.max_modulus()
    };
    SeparationRadii {
        omega,
        psi,
        eps_max: omega.min(psi),
    }
}

/// Partitions every root of the perturbed polynomial. A root goes to the
/// cluster of the nearest center within `epsilon`; failing that, to the
/// infinity group when `|l| > 1/epsilon`; otherwise it is unassigned. A root
/// exactly on the `1/epsilon` circle is unassigned: the boundary belongs to
/// the closure of the inner ball, not to the neighborhood of infinity.
pub fn group_roots(
    q_roots: &DistinctRoots,
    p_roots: &RootSet,
    epsilon: f64,
    deg_p: usize,
    deg_q: usize,
) -> Result<RootGrouping, Error> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon);
    }
    let radii = separation_radii(q_roots);
    let inv_eps = 1.0 / epsilon;

    let mut clusters: Vec<Cluster> = q_roots
        .points
        .iter()
        .zip(&q_roots.multiplicities)
        .map(|(&center, &multiplicity)| Cluster {
            center,
            multiplicity,
            members: Vec::new(),
        })
        .collect();
    let mut infinity_group = Vec::new();
    let mut unassigned = Vec::new();

    for &lam in &p_roots.roots {
        let nearest = clusters
            .iter()
            .enumerate()
            .map(|(j, c)| (j, (lam - c.center).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite distances"));
        match nearest {
            Some((j, dist)) if dist < epsilon => clusters[j].members.push(lam),
            _ => {
                if lam.norm() > inv_eps {
                    infinity_group.push(lam);
                } else {
                    unassigned.push(lam);
                }
            }
        }
    }

    let expected_inf = deg_p as i64 - deg_q as i64;
    let counts_valid = clusters
        .iter()
        .all(|c| c.members.len() == c.multiplicity)
        && infinity_group.len() as i64 == expected_inf
        && unassigned.is_empty();

    Ok(RootGrouping {
        epsilon,
        clusters,
        infinity_group,
        unassigned,
        counts_valid,
        epsilon_admissible: epsilon < radii.eps_max,
        deg_p,
        deg_q,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct DeltaSearchConfig {
    pub solver: SolverConfig,
    pub cluster_tol: f64,
    /// Geometric bisection refinements after the bracketing ladder.
    pub refine_steps: u32,
}

impl Default for DeltaSearchConfig {
    fn default() -> Self {
        DeltaSearchConfig {
            solver: SolverConfig::default(),
            cluster_tol: rootfind::DEFAULT_CLUSTER_TOL,
            refine_steps: 30,
        }
    }
}

/// Estimates, by geometric bisection, the largest perturbation size `delta`
/// for which every one of `trials` random perturbations with max deviation
/// exactly `delta` still yields a grouping with valid counts at the given
/// `epsilon`. Deterministic under `seed`; the perturbation directions are
/// drawn once per trial index and reused across candidate sizes. Returns a
/// conservative lower estimate, and `0` when even the smallest probe fails
/// (which signals a root-finding or tolerance problem, not a theory
/// failure).
pub fn find_delta_empirically(
    q: &Poly,
    epsilon: f64,
    trials: u32,
    seed: u64,
) -> Result<f64, Error> {
    find_delta_empirically_with(q, epsilon, trials, seed, &DeltaSearchConfig::default())
}

pub fn find_delta_empirically_with(
    q: &Poly,
    epsilon: f64,
    trials: u32,
    seed: u64,
    cfg: &DeltaSearchConfig,
) -> Result<f64, Error> {
    let deg_q = q.formal_degree().ok_or(Error::ZeroPolynomial)?;
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon);
    }
    let q_distinct = if deg_q >= 1 {
        rootfind::distinct_roots(q, &cfg.solver, cfg.cluster_tol)?
    } else {
        DistinctRoots::empty()
    };

    let scale = q.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let n = q.ambient_degree();

    // unit perturbation per trial: independent phases, moduli rescaled so
    // the max-norm sits exactly on the boundary
    let directions: Vec<Vec<Complex64>> = (0..trials.max(1))
        .map(|t| unit_perturbation(seed, t, n))
        .collect();

    let passes = |delta: f64| -> bool {
        directions.iter().all(|dir| {
            let coeffs: Vec<Complex64> = (0..=n)
                .map(|i| q.coeff(i) + dir[i] * delta)
                .collect();
            let p = match Poly::new(coeffs) {
                Ok(p) => p,
                Err(_) => return false,
            };
            let deg_p = match p.formal_degree() {
                Some(d) => d,
                None => return false,
            };
            let p_rs = match rootfind::roots_with(&p, &cfg.solver) {
                Ok(rs) => rs,
                Err(_) => return false,
            };
            group_roots(&q_distinct, &p_rs, epsilon, deg_p, deg_q)
                .map(|g| g.counts_valid)
                .unwrap_or(false)
        })
    };

    let mut lo = 1e-15 * scale;
    if !passes(lo) {
        return Ok(0.0);
    }
    let mut hi = lo;
    loop {
        let next = hi * 4.0;
        if next > 4.0 * scale {
            return Ok(hi);
        }
        if passes(next) {
            hi = next;
            lo = next;
        } else {
            hi = next;
            break;
        }
    }
    for _ in 0..cfg.refine_steps {
        let mid = (lo * hi).sqrt();
        if passes(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Per-coefficient complex deviations with independent uniform phases and
/// uniform moduli rescaled so that the largest is exactly 1.
fn unit_perturbation(seed: u64, trial: u32, n: usize) -> Vec<Complex64> {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut moduli: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let phases: Vec<f64> = (0..=n)
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    let max = moduli.iter().copied().fold(0.0, f64::max);
    if max < 1e-300 {
        moduli[0] = 1.0;
    } else {
        for m in &mut moduli {
            *m /= max;
        }
    }
    moduli
        .into_iter()
        .zip(phases)
        .map(|(m, ph)| Complex64::from_polar(m, ph))
        .collect()
}
