//! JSON wire formats for every type that crosses the process boundary.
//!
//! Complex numbers are `[re, im]` pairs. Serialization is deterministic:
//! field order is fixed, map-backed collections iterate in sorted key
//! order, and every float is printed with 17 significant digits (enough to
//! round-trip any f64 exactly). Non-finite values (the infinite threshold
//! sentinel) serialize as `null`.

use crate::bounds::{BoundReport, Regime};
use crate::error::Error;
use crate::grouping::RootGrouping;
use crate::multivar::{DomainFactor, MultiPoly, Polydomain, ProbeReport, ZeroClassification, ZeroKind};
use crate::poly::Poly;
use crate::rootfind::{DistinctRoots, RootSet};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub fn complex_to_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn pair_to_complex(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

// ---------------------------------------------------------------------------
// input formats
// ---------------------------------------------------------------------------

/// `{"n": <int>, "coeffs": [[re, im], ...]}`, ascending powers, length n+1.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PolyJson {
    pub n: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            n: p.ambient_degree(),
            coeffs: p.coeffs().iter().map(|&c| complex_to_pair(c)).collect(),
        }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;

    fn try_from(w: PolyJson) -> Result<Poly, Error> {
        if w.coeffs.len() != w.n + 1 {
            return Err(Error::Parse(format!(
                "coeffs must have length n+1 = {}, got {}",
                w.n + 1,
                w.coeffs.len()
            )));
        }
        Poly::new(w.coeffs.into_iter().map(pair_to_complex).collect())
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: [f64; 2],
}

/// `{"nvars": m, "terms": [{"exp": [...], "coeff": [re, im]}]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct MultiPolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl From<&MultiPoly> for MultiPolyJson {
    fn from(f: &MultiPoly) -> Self {
        MultiPolyJson {
            nvars: f.nvars(),
            terms: f
                .terms()
                .map(|(exp, &coeff)| TermJson {
                    exp: exp.clone(),
                    coeff: complex_to_pair(coeff),
                })
                .collect(),
        }
    }
}

impl TryFrom<MultiPolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(w: MultiPolyJson) -> Result<MultiPoly, Error> {
        MultiPoly::new(
            w.nvars,
            w.terms
                .into_iter()
                .map(|t| (t.exp, pair_to_complex(t.coeff))),
        )
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorJson {
    Disc { center: [f64; 2], radius: f64 },
    Halfplane { theta: f64 },
    Rect { re: [f64; 2], im: [f64; 2] },
}

/// `{"factors": [{"kind": "disc", ...} | {"kind": "halfplane", ...} | {"kind": "rect", ...}]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PolydomainJson {
    pub factors: Vec<FactorJson>,
}

impl From<&Polydomain> for PolydomainJson {
    fn from(dom: &Polydomain) -> Self {
        PolydomainJson {
            factors: dom
                .factors
                .iter()
                .map(|f| match *f {
                    DomainFactor::Disc { center, radius } => FactorJson::Disc {
                        center: complex_to_pair(center),
                        radius,
                    },
                    DomainFactor::Halfplane { theta } => FactorJson::Halfplane { theta },
                    DomainFactor::Rect { re, im } => FactorJson::Rect {
                        re: [re.0, re.1],
                        im: [im.0, im.1],
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<PolydomainJson> for Polydomain {
    type Error = Error;

    fn try_from(w: PolydomainJson) -> Result<Polydomain, Error> {
        let mut factors = Vec::with_capacity(w.factors.len());
        for f in w.factors {
            let factor = match f {
                FactorJson::Disc { center, radius } => {
                    if !radius.is_finite() || radius <= 0.0 {
                        return Err(Error::Parse("disc radius must be positive".into()));
                    }
                    DomainFactor::Disc {
                        center: pair_to_complex(center),
                        radius,
                    }
                }
                FactorJson::Halfplane { theta } => {
                    if !theta.is_finite() {
                        return Err(Error::Parse("halfplane angle must be finite".into()));
                    }
                    DomainFactor::Halfplane { theta }
                }
                FactorJson::Rect { re, im } => {
                    if re[0] >= re[1] || im[0] >= im[1] || re.iter().chain(&im).any(|x| x.is_nan()) {
                        return Err(Error::Parse(
                            "rect bounds must satisfy low < high".into(),
                        ));
                    }
                    DomainFactor::Rect {
                        re: (re[0], re[1]),
                        im: (im[0], im[1]),
                    }
                }
            };
            factors.push(factor);
        }
        Ok(Polydomain::new(factors))
    }
}

// ---------------------------------------------------------------------------
// report formats
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DistinctJson {
    pub point: [f64; 2],
    pub multiplicity: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RootsJson {
    pub converged: bool,
    pub roots: Vec<[f64; 2]>,
    pub residuals: Vec<f64>,
    pub declared_tol: Option<f64>,
    pub reconstruction_defect: Option<f64>,
    pub distinct: Vec<DistinctJson>,
}

impl RootsJson {
    pub fn converged(rs: &RootSet, distinct: &DistinctRoots) -> Self {
        RootsJson {
            converged: true,
            roots: rs.roots.iter().map(|&z| complex_to_pair(z)).collect(),
            residuals: rs.residuals.clone(),
            declared_tol: Some(rs.declared_tol),
            reconstruction_defect: Some(rs.reconstruction_defect),
            distinct: distinct
                .points
                .iter()
                .zip(&distinct.multiplicities)
                .map(|(&p, &m)| DistinctJson {
                    point: complex_to_pair(p),
                    multiplicity: m,
                })
                .collect(),
        }
    }

    pub fn failed(best: &[Complex64], residuals: &[f64]) -> Self {
        RootsJson {
            converged: false,
            roots: best.iter().map(|&z| complex_to_pair(z)).collect(),
            residuals: residuals.to_vec(),
            declared_tol: None,
            reconstruction_defect: None,
            distinct: Vec::new(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HypothesesJson {
    pub constant_term: bool,
    pub leading_at_degq: bool,
    pub global_small: bool,
    pub eps_admissible: bool,
    pub max_dev: f64,
    pub shift_applied: Option<[f64; 2]>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PerRootJson {
    pub root: [f64; 2],
    pub regime: String,
    pub slack: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BoundReportJson {
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub threshold: f64,
    pub infinity_bound: f64,
    pub near_bound: f64,
    pub hypotheses: HypothesesJson,
    pub per_root: Vec<PerRootJson>,
}

impl From<&BoundReport> for BoundReportJson {
    fn from(r: &BoundReport) -> Self {
        BoundReportJson {
            c: r.constants.c,
            d: r.constants.d,
            threshold: r.threshold,
            infinity_bound: r.bounds.infinity_bound,
            near_bound: r.bounds.near_bound,
            hypotheses: HypothesesJson {
                constant_term: r.hypotheses.constant_term,
                leading_at_degq: r.hypotheses.leading_at_degq,
                global_small: r.hypotheses.global_small,
                eps_admissible: r.hypotheses.eps_admissible,
                max_dev: r.hypotheses.max_dev,
                shift_applied: r.hypotheses.shift_applied.map(complex_to_pair),
            },
            per_root: r
                .per_root
                .iter()
                .map(|rr| PerRootJson {
                    root: complex_to_pair(rr.root),
                    regime: match rr.regime {
                        Regime::Near => "near".into(),
                        Regime::Infinity => "infinity".into(),
                        Regime::Violation => "violation".into(),
                    },
                    slack: rr.slack,
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ClusterJson {
    pub center: [f64; 2],
    pub multiplicity: usize,
    pub members: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GroupingJson {
    pub epsilon: f64,
    pub clusters: Vec<ClusterJson>,
    pub infinity_group: Vec<[f64; 2]>,
    pub unassigned: Vec<[f64; 2]>,
    pub counts_valid: bool,
}

impl From<&RootGrouping> for GroupingJson {
    fn from(g: &RootGrouping) -> Self {
        GroupingJson {
            epsilon: g.epsilon,
            clusters: g
                .clusters
                .iter()
                .map(|c| ClusterJson {
                    center: complex_to_pair(c.center),
                    multiplicity: c.multiplicity,
                    members: c.members.iter().map(|&z| complex_to_pair(z)).collect(),
                })
                .collect(),
            infinity_group: g
                .infinity_group
                .iter()
                .map(|&z| complex_to_pair(z))
                .collect(),
            unassigned: g.unassigned.iter().map(|&z| complex_to_pair(z)).collect(),
            counts_valid: g.counts_valid,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DeltaSearchJson {
    pub epsilon: f64,
    pub trials: u32,
    pub seed: u64,
    pub delta: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ClassificationJson {
    pub kind: String,
    pub alpha: Vec<[f64; 2]>,
    pub s: Vec<usize>,
    pub certificate: Option<f64>,
}

impl From<&ZeroClassification> for ClassificationJson {
    fn from(z: &ZeroClassification) -> Self {
        ClassificationJson {
            kind: match z.kind {
                ZeroKind::NoBoundaryZero => "no_boundary_zero".into(),
                ZeroKind::CaseOne => "case_one".into(),
                ZeroKind::CaseTwo => "case_two".into(),
                ZeroKind::Violation => "violation".into(),
            },
            alpha: z.alpha.iter().map(|&a| complex_to_pair(a)).collect(),
            s: z.s.clone(),
            certificate: z.certificate,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ProbeJson {
    pub zero_found: Option<Vec<[f64; 2]>>,
    pub min_abs: f64,
}

impl From<&ProbeReport> for ProbeJson {
    fn from(p: &ProbeReport) -> Self {
        ProbeJson {
            zero_found: p
                .zero_found
                .as_ref()
                .map(|pt| pt.iter().map(|&z| complex_to_pair(z)).collect()),
            min_abs: p.min_abs,
        }
    }
}

// ---------------------------------------------------------------------------
// serialization with fixed float formatting
// ---------------------------------------------------------------------------

/// Writes every f64 as `{:.16e}` (17 significant digits), which round-trips
/// any finite double exactly and keeps output byte-identical across runs.
struct SigFigFormatter;

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any wire struct with the fixed float format.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut ser)
        .expect("wire types serialize without error");
    String::from_utf8(out).expect("serializer emits utf8")
}

pub fn parse_poly(s: &str) -> Result<Poly, Error> {
    let wire: PolyJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial: {e}")))?;
    wire.try_into()
}

pub fn parse_multipoly(s: &str) -> Result<MultiPoly, Error> {
    let wire: MultiPolyJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("multivariate polynomial: {e}")))?;
    wire.try_into()
}

pub fn parse_polydomain(s: &str) -> Result<Polydomain, Error> {
    let wire: PolydomainJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("polydomain: {e}")))?;
    wire.try_into()
}

/// Parses a point in `C^m` given as a JSON array of `[re, im]` pairs.
pub fn parse_point(s: &str) -> Result<Vec<Complex64>, Error> {
    let pairs: Vec<[f64; 2]> =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("point: {e}")))?;
    Ok(pairs.into_iter().map(pair_to_complex).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::cr;

    #[test]
    fn poly_round_trip_is_identity() {
        let text = r#"{"n": 4, "coeffs": [[-1.0, 0.0], [1.0, 0.5], [-1.0, 0.0], [1.0, 0.0], [0.0, 0.0]]}"#;
        let p = parse_poly(text).unwrap();
        let serialized = to_json_string(&PolyJson::from(&p));
        let p2 = parse_poly(&serialized).unwrap();
        assert_eq!(p, p2);
        assert_eq!(serialized, to_json_string(&PolyJson::from(&p2)));
    }

    #[test]
    fn poly_length_mismatch_is_rejected() {
        let text = r#"{"n": 2, "coeffs": [[1.0, 0.0]]}"#;
        assert!(matches!(parse_poly(text), Err(Error::Parse(_))));
    }

    #[test]
    fn multipoly_round_trip_drops_nothing() {
        let text = r#"{"nvars": 2, "terms": [{"exp": [1, 0], "coeff": [4.0, 0.0]}, {"exp": [0, 1], "coeff": [2.0, 0.0]}, {"exp": [0, 0], "coeff": [-3.0, 0.0]}]}"#;
        let f = parse_multipoly(text).unwrap();
        assert_eq!(f.eval(&[cr(1.0), cr(1.0)]).unwrap(), cr(3.0));
        let serialized = to_json_string(&MultiPolyJson::from(&f));
        let f2 = parse_multipoly(&serialized).unwrap();
        assert_eq!(f, f2);
        assert_eq!(serialized, to_json_string(&MultiPolyJson::from(&f2)));
    }

    #[test]
    fn polydomain_variants_round_trip() {
        let text = r#"{"factors": [
            {"kind": "disc", "center": [0.0, 0.0], "radius": 1.0},
            {"kind": "halfplane", "theta": 1.5707963267948966},
            {"kind": "rect", "re": [-1.0, 2.0], "im": [0.5, 3.5]}
        ]}"#;
        let dom = parse_polydomain(text).unwrap();
        let serialized = to_json_string(&PolydomainJson::from(&dom));
        let dom2 = parse_polydomain(&serialized).unwrap();
        assert_eq!(dom, dom2);
    }

    #[test]
    fn polydomain_rejects_empty_factors() {
        let bad = r#"{"factors": [{"kind": "disc", "center": [0.0, 0.0], "radius": 0.0}]}"#;
        assert!(matches!(parse_polydomain(bad), Err(Error::Parse(_))));
        let bad = r#"{"factors": [{"kind": "rect", "re": [1.0, 1.0], "im": [0.0, 1.0]}]}"#;
        assert!(matches!(parse_polydomain(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn floats_print_with_seventeen_digits() {
        #[derive(serde::Serialize)]
        struct One {
            x: f64,
        }
        assert_eq!(to_json_string(&One { x: 0.1 }), r#"{"x":1.0000000000000001e-1}"#);
        assert_eq!(to_json_string(&One { x: 1.0 }), r#"{"x":1.0000000000000000e0}"#);
        let round: serde_json::Value =
            serde_json::from_str(&to_json_string(&One { x: 2.5e-9 })).unwrap();
        assert_eq!(round["x"].as_f64().unwrap(), 2.5e-9);
    }

    #[test]
    fn infinite_threshold_serializes_as_null() {
        #[derive(serde::Serialize)]
        struct One {
            x: f64,
        }
        assert_eq!(to_json_string(&One { x: f64::INFINITY }), r#"{"x":null}"#);
    }
}
