//! Truncated power series for holomorphic maps on the unit disk.
//!
//! A [`PowerSeries`] stores the Taylor coefficients `a_0 ... a_N` of a map
//! at the origin. All operations are pure; values are immutable after
//! construction. Truncation order is explicit: every operation declares the
//! order of its output and never reads coefficients beyond the input order.

use num_complex::Complex64;

use crate::{Error, Result, COEFF_EPS};

/// Default truncation order for convenience constructors. The maps treated
/// here are polynomials of low degree; 64 leaves headroom for derived
/// series such as square roots.
pub const DEFAULT_ORDER: usize = 64;

/// Truncated Taylor expansion `a_0 + a_1 z + ... + a_N z^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from its coefficient list; the order is `len - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "a power series needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The two-term map `a_0 + a_n z^n` with `n >= 1`.
    pub fn monomial(a0: Complex64, an: Complex64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "monomial exponent must be >= 1; use `new` for constants".into(),
            ));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[0] = a0;
        coeffs[n] = an;
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `a_k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Same series viewed at a (usually higher) truncation order.
    pub fn extended(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        coeffs.truncate(order + 1);
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Termwise derivative; constants map to the zero series of order 0.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self {
                coeffs: vec![Complex64::new(0.0, 0.0)],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect();
        Self { coeffs }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    /// Cauchy product truncated at `out_order`.
    pub fn multiply(&self, other: &Self, out_order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); out_order + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if i > out_order {
                break;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j > out_order {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Square root `g` of a series with nonzero constant term: `g^2` agrees
    /// with `self` to the same order, `b_0` the principal root of `a_0`.
    ///
    /// Recurrence: `b_k = (a_k - sum_{j=1}^{k-1} b_j b_{k-j}) / (2 b_0)`.
    pub fn sqrt_zero_free(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
        b[0] = a0.sqrt();
        for k in 1..=n {
            let mut conv = Complex64::new(0.0, 0.0);
            for j in 1..k {
                conv += b[j] * b[k - j];
            }
            b[k] = (self.coeff(k) - conv) / (2.0 * b[0]);
        }
        Ok(Self { coeffs: b })
    }

    /// Smallest index `k >= 1` with `|a_k|` above the classification
    /// threshold: the `n` of the Schwarz-type bounds.
    pub fn first_active_index(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, a)| a.norm() > COEFF_EPS)
            .map(|(k, _)| k)
    }

    /// `Some((n, a_n))` when the map has the form `a_0 + a_n z^n`, which is
    /// the equality class of the Schwarz-type bounds. The constant term is
    /// ignored; a constant map is not of this form.
    pub fn as_two_term(&self) -> Option<(usize, Complex64)> {
        let n = self.first_active_index()?;
        for (k, a) in self.coeffs.iter().enumerate().skip(n + 1) {
            if a.norm() > COEFF_EPS {
                let _ = k;
                return None;
            }
        }
        Some((n, self.coeffs[n]))
    }

    pub fn is_constant(&self) -> bool {
        self.first_active_index().is_none()
    }

    /// `a_0 + a_1 z` with every higher coefficient negligible.
    pub fn is_linear(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .skip(2)
            .all(|(_, a)| a.norm() <= COEFF_EPS)
    }
}

impl std::fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.norm() == 0.0 && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({a})")?,
                1 => write!(f, "({a})*z")?,
                _ => write!(f, "({a})*z^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_coeffs_close(s: &PowerSeries, want: &[f64], tol: f64) {
        assert_eq!(s.order() + 1, want.len(), "order mismatch for {s}");
        for (k, &w) in want.iter().enumerate() {
            assert!(
                (s.coeff(k) - c(w, 0.0)).norm() <= tol,
                "coeff {k}: got {}, want {w}",
                s.coeff(k)
            );
        }
    }

    #[test]
    fn construction() {
        let constant = PowerSeries::from_real(&[1.0]).unwrap();
        assert_eq!(constant.order(), 0);
        let ident = PowerSeries::from_real(&[0.0, 1.0]).unwrap();
        assert_eq!(ident.order(), 1);
        let f = PowerSeries::from_real(&[0.0, 1.0, 0.5]).unwrap();
        assert_eq!(f.order(), 2);
        assert!(PowerSeries::new(vec![]).is_err());
    }

    #[test]
    fn monomials() {
        let ident = PowerSeries::monomial(c(0.0, 0.0), c(1.0, 0.0), 1).unwrap();
        assert_coeffs_close(&ident, &[0.0, 1.0], 0.0);
        let m = PowerSeries::monomial(c(2.0, 0.0), c(3.0, 0.0), 4).unwrap();
        assert_coeffs_close(&m, &[2.0, 0.0, 0.0, 0.0, 3.0], 0.0);
        assert!(PowerSeries::monomial(c(1.0, 0.0), c(1.0, 0.0), 0).is_err());
        // (z+2)^3 is not a two-term map; it is built from the full list.
        let cube = PowerSeries::from_real(&[8.0, 12.0, 6.0, 1.0]).unwrap();
        assert_eq!(cube.as_two_term(), None);
    }

    #[test]
    fn derivatives() {
        let f = PowerSeries::from_real(&[0.0, 1.0, 0.5]).unwrap();
        assert_coeffs_close(&f.derivative(), &[1.0, 1.0], 0.0);
        let constant = PowerSeries::from_real(&[5.0]).unwrap();
        assert_coeffs_close(&constant.derivative(), &[0.0], 0.0);
        let cube = PowerSeries::from_real(&[8.0, 12.0, 6.0, 1.0]).unwrap();
        assert_coeffs_close(&cube.derivative(), &[12.0, 12.0, 3.0], 0.0);
    }

    #[test]
    fn evaluation() {
        let f = PowerSeries::from_real(&[0.0, 1.0, 0.5]).unwrap();
        assert_eq!(f.evaluate(c(0.0, 0.0)), c(0.0, 0.0));
        let cube = PowerSeries::from_real(&[8.0, 12.0, 6.0, 1.0]).unwrap();
        assert!((cube.evaluate(c(-1.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        let sq = PowerSeries::from_real(&[0.0, 0.0, 1.0]).unwrap();
        assert!((sq.evaluate(c(0.0, 0.5)) - c(-0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn products() {
        let a = PowerSeries::from_real(&[1.0, 1.0]).unwrap();
        let b = PowerSeries::from_real(&[1.0, -1.0]).unwrap();
        assert_coeffs_close(&a.multiply(&b, 2), &[1.0, 0.0, -1.0], 0.0);
        let z = PowerSeries::from_real(&[0.0, 1.0]).unwrap();
        assert_coeffs_close(&z.multiply(&z, 2), &[0.0, 0.0, 1.0], 0.0);
    }

    #[test]
    fn sqrt_of_constant() {
        let four = PowerSeries::from_real(&[4.0]).unwrap();
        assert_coeffs_close(&four.sqrt_zero_free().unwrap(), &[2.0], 0.0);
    }

    #[test]
    fn sqrt_matches_binomial_series() {
        // (1+z)^{1/2} = 1 + z/2 - z^2/8 + z^3/16 - ...
        let f = PowerSeries::from_real(&[1.0, 1.0]).unwrap().extended(3);
        let g = f.sqrt_zero_free().unwrap();
        assert_coeffs_close(&g, &[1.0, 0.5, -0.125, 0.0625], 1e-15);
    }

    #[test]
    fn sqrt_round_trip_on_cube_derivative() {
        // f'(z) = 12 + 12z + 3z^2 = 3(z+2)^2, so the root is sqrt(3)(2+z).
        let fp = PowerSeries::from_real(&[12.0, 12.0, 3.0]).unwrap();
        let g = fp.sqrt_zero_free().unwrap();
        assert!((g.coeff(0).re - 3.4641016151377546).abs() < 1e-14);
        let sq = g.multiply(&g, 2);
        assert_coeffs_close(&sq, &[12.0, 12.0, 3.0], 1e-12);
    }

    #[test]
    fn sqrt_requires_nonzero_constant_term() {
        let z = PowerSeries::from_real(&[0.0, 1.0]).unwrap();
        assert!(matches!(z.sqrt_zero_free(), Err(Error::ZeroConstantTerm)));
    }

    #[test]
    fn classification() {
        let f = PowerSeries::from_real(&[0.0, 1.0, 0.5]).unwrap();
        assert_eq!(f.first_active_index(), Some(1));
        assert_eq!(f.as_two_term(), None);
        let shifted = PowerSeries::monomial(c(2.0, 0.0), c(3.0, 0.0), 4).unwrap();
        assert_eq!(shifted.as_two_term(), Some((4, c(3.0, 0.0))));
        let constant = PowerSeries::from_real(&[7.0]).unwrap();
        assert!(constant.is_constant());
        assert!(constant.is_linear());
        assert_eq!(constant.as_two_term(), None);
        let lin = PowerSeries::from_real(&[1.0, 2.0]).unwrap();
        assert!(lin.is_linear() && !lin.is_constant());
    }
}
