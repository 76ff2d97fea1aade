//! Dense univariate complex polynomials with an explicit ambient capacity.
//!
//! A `Poly` lives in the space of polynomials of degree at most `n` (its
//! ambient degree) and stores exactly `n + 1` coefficients in ascending
//! powers, zero-padded above the formal degree. The ambient capacity is
//! preserved through every operation because the quantitative bounds sum
//! coefficient deviations over the full index range `0..=n`, padded zeros
//! included.

use crate::error::Error;
use num_complex::Complex64;

/// Division guard for `log_derivative`: below this magnitude the value of
/// the polynomial is treated as a root hit rather than silently producing
/// an infinite quotient.
pub const LOG_DERIVATIVE_GUARD: f64 = 1e-300;

/// A univariate complex polynomial `c[0] + c[1] z + ... + c[n] z^n`.
///
/// The coefficient vector always has length `ambient_degree() + 1`. The zero
/// polynomial is representable (all coefficients exactly zero) and is
/// surfaced through [`Poly::is_zero`] and the `None` branch of
/// [`Poly::formal_degree`]; its degree is left undefined.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial from ascending-power coefficients.
    ///
    /// The ambient degree is `coeffs.len() - 1`. Rejects empty sequences and
    /// non-finite components.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPoly);
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Poly { coeffs })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self, Error> {
        Poly::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The constant polynomial `c` with ambient degree 0.
    pub fn constant(c: Complex64) -> Self {
        Poly { coeffs: vec![c] }
    }

    /// The zero polynomial with the given ambient degree.
    pub fn zero(ambient_degree: usize) -> Self {
        Poly {
            coeffs: vec![Complex64::new(0.0, 0.0); ambient_degree + 1],
        }
    }

    /// Expands `leading * prod_i (z - roots[i])`; ambient degree is the root count.
    pub fn from_roots(leading: Complex64, roots: &[Complex64]) -> Self {
        let mut acc = vec![leading];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (k, &a) in acc.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= r * a;
            }
            acc = next;
        }
        Poly { coeffs: acc }
    }

    pub fn ambient_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^i`; zero above the ambient degree.
    pub fn coeff(&self, i: usize) -> Complex64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// True iff every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// `max { i : c_i != 0 }`, or `None` for the zero polynomial.
    ///
    /// The zero test is exact equality; callers holding noisy floating-point
    /// data can use [`Poly::formal_degree_with_tol`].
    pub fn formal_degree(&self) -> Option<usize> {
        self.formal_degree_with_tol(0.0)
    }

    /// Formal degree with coefficients of magnitude `<= tol` treated as zero.
    pub fn formal_degree_with_tol(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.norm() > tol)
    }

    /// The coefficient at the formal degree, `None` for the zero polynomial.
    pub fn leading_coeff(&self) -> Option<Complex64> {
        self.formal_degree().map(|d| self.coeffs[d])
    }

    /// Horner evaluation; exact `0` for the zero polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Derivative; the ambient degree drops by one (floored at 0).
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as f64)
            .collect();
        Poly { coeffs }
    }

    /// `p'(z) / p(z)`, the sum of reciprocals `sum_i 1/(z - lambda_i)` over
    /// the roots of `p`.
    pub fn log_derivative(&self, z: Complex64) -> Result<Complex64, Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let value = self.eval(z);
        if value.norm() < LOG_DERIVATIVE_GUARD {
            return Err(Error::EvalAtRoot);
        }
        Ok(self.derivative().eval(z) / value)
    }

    /// The reciprocal (reflected) polynomial `z^(deg p) * p(1/z)`.
    ///
    /// Coefficients are reversed over `0..=formal_degree`, and the result's
    /// ambient degree equals the formal degree of `self`. Nonzero roots map
    /// to their inverses with matching multiplicities.
    pub fn reciprocal(&self) -> Result<Poly, Error> {
        let fd = self.formal_degree().ok_or(Error::ZeroPolynomial)?;
        let coeffs = (0..=fd).map(|k| self.coeffs[fd - k]).collect();
        Ok(Poly { coeffs })
    }

    /// Taylor shift: returns `r` with `r(z) = p(z + z0)`, same ambient degree.
    pub fn shift(&self, z0: Complex64) -> Poly {
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len() - 1;
        for k in 0..n {
            for j in (k..n).rev() {
                let step = z0 * coeffs[j + 1];
                coeffs[j] += step;
            }
        }
        Poly { coeffs }
    }

    /// The first point of the sequence `0, 1, -1, 2, -2, ...` where the
    /// polynomial does not vanish. At most `deg + 1` candidates are needed
    /// since a nonzero polynomial has at most `deg` roots.
    pub fn find_nonvanishing_point(&self) -> Result<Complex64, Error> {
        let fd = self.formal_degree().ok_or(Error::ZeroPolynomial)?;
        for k in 0..=4 * (fd + 1) {
            let x = if k == 0 {
                0.0
            } else if k % 2 == 1 {
                k.div_ceil(2) as f64
            } else {
                -((k / 2) as f64)
            };
            let z = Complex64::new(x, 0.0);
            if self.eval(z).norm() != 0.0 {
                return Ok(z);
            }
        }
        Err(Error::ZeroPolynomial)
    }

    /// Re-pads the coefficient vector up to ambient degree `n`.
    ///
    /// Panics if `n` is smaller than the current ambient degree.
    pub fn padded(&self, n: usize) -> Poly {
        assert!(
            n >= self.ambient_degree(),
            "cannot shrink the ambient degree"
        );
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, Complex64::new(0.0, 0.0));
        Poly { coeffs }
    }

    /// Scales every coefficient by `k`.
    pub fn scale(&self, k: Complex64) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }
}
