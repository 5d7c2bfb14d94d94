//! The weight measure `d mu_alpha(t) = (1-t^2)^alpha dt^2`, its mass
//! `nu_alpha`, the incomplete-beta family `f_lambda`, and the weighted
//! integral means of the mixed area and mixed length.
//!
//! Every integral is evaluated after the substitution `s = t^2`, which
//! turns `d mu_alpha` into the plain weight `(1-s)^alpha ds` and removes
//! the `dt^2` corner at the origin:
//!
//! ```text
//!   A_{alpha,beta}(f,r) = ( ∫_0^{r^2} Phi_{A,beta}(f,sqrt(s)) (1-s)^alpha ds ) / nu_alpha(r)
//! ```
//!
//! For two-term maps the mean collapses to a ratio of incomplete beta
//! integrals, `pi^{1-beta} f_{n-beta}(r^2) / f_0(r^2)`, which
//! [`weighted_mean_monomial`] computes directly; [`weighted_mean_quadrature`]
//! keeps the generic route so the two can be checked against each other.

use crate::geometry::Kind;
use crate::quad::{self, QuadratureParams};
use crate::series::PowerSeries;
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

/// The weight exponent `alpha` and mixing exponent `beta` of a mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightParams {
    alpha: f64,
    beta: f64,
}

impl WeightParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidInput(format!("alpha must be finite, got {alpha}")));
        }
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidInput(format!("beta must lie in [0,1], got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// How a [`MeanValue`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeanMethod {
    ClosedForm,
    Quadrature,
}

/// A weighted integral mean with an error bound.
#[derive(Clone, Copy, Debug)]
pub struct MeanValue {
    pub value: f64,
    pub error_bound: f64,
    pub method: MeanMethod,
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("radius must lie in (0,1), got {r}")));
    }
    Ok(())
}

/// Total mass `nu_alpha(r) = ∫_0^{r^2} (1-s)^alpha ds`, in closed form:
/// `(1-(1-r^2)^{alpha+1})/(alpha+1)`, or `-ln(1-r^2)` at `alpha = -1`.
pub fn nu_alpha(alpha: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    let x = r * r;
    if alpha == -1.0 {
        return Ok(-(1.0 - x).ln());
    }
    Ok((1.0 - (1.0 - x).powf(alpha + 1.0)) / (alpha + 1.0))
}

/// `nu_alpha(1) = 1/(alpha+1)`; diverges for `alpha <= -1`.
pub fn nu_alpha_at_one(alpha: f64) -> Result<f64> {
    if alpha <= -1.0 {
        return Err(Error::Domain(format!(
            "nu_alpha(1) diverges for alpha = {alpha} <= -1; the mean at 1 is finite only for constant maps"
        )));
    }
    Ok(1.0 / (alpha + 1.0))
}

/// Incomplete beta integral `f_lambda(x) = ∫_0^x t^lambda (1-t)^alpha dt`
/// by adaptive quadrature; the integrand is continuous on `[0,x]` for every
/// real `alpha` since `x < 1`.
pub fn f_lambda(lambda: f64, alpha: f64, x: f64, params: &QuadratureParams) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!("lambda must be >= 0, got {lambda}")));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("x must lie in (0,1), got {x}")));
    }
    Ok(quad::adaptive(|t| t.powf(lambda) * (1.0 - t).powf(alpha), 0.0, x, params)?.value)
}

/// `f_lambda'(x) = x^lambda (1-x)^alpha`.
pub fn f_lambda_prime(lambda: f64, alpha: f64, x: f64) -> f64 {
    x.powf(lambda) * (1.0 - x).powf(alpha)
}

/// `f_lambda''(x) = x^{lambda-1} (1-x)^{alpha-1} (lambda (1-x) - alpha x)`.
pub fn f_lambda_second(lambda: f64, alpha: f64, x: f64) -> f64 {
    x.powf(lambda - 1.0) * (1.0 - x).powf(alpha - 1.0) * (lambda * (1.0 - x) - alpha * x)
}

/// Complete integral `f_lambda(1)`, requiring `alpha > -1`.
pub fn f_lambda_at_one(lambda: f64, alpha: f64, params: &QuadratureParams) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!("lambda must be >= 0, got {lambda}")));
    }
    Ok(quad::weighted_unit_interval(|s| s.powf(lambda), alpha, params)?.value)
}

/// The mixed ratio as a function of `s = t^2`, in the form
/// `phi(s) = scale * s^shift * (c_0 + c_1 s + ... )`.
///
/// Area of a series: `Phi_{A,beta}(f,sqrt(s)) = pi^{1-beta} s^{1-beta}
/// Σ_{n>=1} n |a_n|^2 s^{n-1}`. Length of a series with zero-free
/// derivative, through the square root `g = sqrt(f')= Σ b_n z^n`:
/// `Phi_{L,beta}(f,sqrt(s)) = (2 pi)^{1-beta} s^{(1-beta)/2} Σ |b_n|^2 s^n`.
#[derive(Clone, Debug)]
pub struct PhiPoly {
    pub shift: f64,
    pub coeffs: Vec<f64>,
}

impl PhiPoly {
    pub fn value(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        if self.shift == 0.0 {
            acc
        } else {
            acc * s.powf(self.shift)
        }
    }

    pub fn deriv(&self, s: f64) -> f64 {
        let mut poly = 0.0;
        for &c in self.coeffs.iter().rev() {
            poly = poly * s + c;
        }
        let mut d = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if k == 0 {
                continue;
            }
            d = d * s + c * k as f64;
        }
        if self.shift == 0.0 {
            d
        } else {
            s.powf(self.shift) * d + self.shift * s.powf(self.shift - 1.0) * poly
        }
    }

    /// For a two-term map `a_0 + a_n z^n` the image of `tD` is a disk
    /// covered `n` times, so the set area is `pi |a_n|^2 t^{2n}` without
    /// the multiplicity factor; univalent maps use the Dirichlet sum,
    /// where the two notions coincide.
    pub fn area_of_series(f: &PowerSeries, beta: f64) -> Self {
        let scale = PI.powf(1.0 - beta);
        if let Some((n, an)) = f.as_two_term() {
            return Self {
                shift: n as f64 - beta,
                coeffs: vec![scale * an.norm_sqr()],
            };
        }
        let coeffs = (1..=f.order().max(1))
            .map(|n| scale * n as f64 * f.coeff(n).norm_sqr())
            .collect();
        Self { shift: 1.0 - beta, coeffs }
    }

    /// Length ratio through the square root of the zero-free derivative.
    /// `order` controls the truncation of the root series.
    pub fn length_of_series(f: &PowerSeries, beta: f64, order: usize) -> Result<Self> {
        let g = f.derivative().extended(order).sqrt_zero_free()?;
        let scale = TAU.powf(1.0 - beta);
        let coeffs = g.coeffs().iter().map(|b| scale * b.norm_sqr()).collect();
        Ok(Self { shift: (1.0 - beta) / 2.0, coeffs })
    }

    /// `Phi_{A,beta}(z^n, sqrt(s)) = pi^{1-beta} s^{n-beta}`.
    pub fn area_monomial(n: usize, beta: f64) -> Self {
        Self { shift: n as f64 - beta, coeffs: vec![PI.powf(1.0 - beta)] }
    }

    /// `Phi_{L,beta}(z^n, sqrt(s)) = (2 pi)^{1-beta} s^{(n-beta)/2}`.
    pub fn length_monomial(n: usize, beta: f64) -> Self {
        Self { shift: (n as f64 - beta) / 2.0, coeffs: vec![TAU.powf(1.0 - beta)] }
    }
}

/// Weighted integral mean. Two-term maps take the closed incomplete-beta
/// route; everything else goes through [`weighted_mean_quadrature`].
pub fn weighted_mean(
    kind: Kind,
    f: &PowerSeries,
    params: WeightParams,
    r: f64,
    quad_params: &QuadratureParams,
) -> Result<MeanValue> {
    if let Some((n, an)) = f.as_two_term() {
        let unit = weighted_mean_monomial(kind, n, params, r, quad_params)?;
        let scale = match kind {
            Kind::Area => an.norm_sqr(),
            Kind::Length => an.norm(),
        };
        return Ok(MeanValue {
            value: unit.value * scale,
            error_bound: unit.error_bound * scale,
            method: unit.method,
        });
    }
    weighted_mean_quadrature(kind, f, params, r, quad_params)
}

/// Generic quadrature route for the weighted mean: the outer integral in
/// `s = t^2` is adaptive Gauss-Kronrod; length ratios evaluate the circle
/// integral by the periodic trapezoid rule at every node.
pub fn weighted_mean_quadrature(
    kind: Kind,
    f: &PowerSeries,
    params: WeightParams,
    r: f64,
    quad_params: &QuadratureParams,
) -> Result<MeanValue> {
    check_radius(r)?;
    let alpha = params.alpha();
    let beta = params.beta();
    let x = r * r;
    let nu = nu_alpha(alpha, r)?;
    let (num, inner_rel) = match kind {
        Kind::Area => {
            let phi = PhiPoly::area_of_series(f, beta);
            let res = quad::adaptive(|s| phi.value(s) * (1.0 - s).powf(alpha), 0.0, x, quad_params)?;
            (res, 0.0)
        }
        Kind::Length => {
            if let Some((n, an)) = f.as_two_term() {
                // The image boundary of a two-term map is a circle of
                // radius |a_n| t^n; the circle integral of |f'| would
                // count its n-fold traversal.
                let phi = PhiPoly::length_monomial(n, beta);
                let scale = an.norm();
                let res = quad::adaptive(
                    |s| scale * phi.value(s) * (1.0 - s).powf(alpha),
                    0.0,
                    x,
                    quad_params,
                )?;
                let value = res.value / nu;
                return Ok(MeanValue {
                    value,
                    error_bound: res.error / nu,
                    method: MeanMethod::Quadrature,
                });
            }
            let df = f.derivative();
            let inner_params = quad_params.inner();
            let inner_issue = std::cell::Cell::new(false);
            let max_inner_rel = std::cell::Cell::new(0.0f64);
            let integrand = |s: f64| {
                let t = s.sqrt();
                let circle = quad::periodic_trapezoid(
                    |theta| df.evaluate(num_complex::Complex64::from_polar(t, theta)).norm(),
                    TAU,
                    &inner_params,
                );
                let circle = match circle {
                    Ok(res) => res,
                    Err(Error::ToleranceNotMet { best, error }) => {
                        inner_issue.set(true);
                        quad::QuadResult { value: best, error, evals: 0 }
                    }
                    Err(_) => {
                        inner_issue.set(true);
                        quad::QuadResult { value: f64::NAN, error: f64::NAN, evals: 0 }
                    }
                };
                if circle.value != 0.0 {
                    max_inner_rel.set(max_inner_rel.get().max(circle.error / circle.value.abs()));
                }
                // L(f,t)/(2 pi t)^beta = t^{1-beta} (2 pi)^{-beta} * circle
                t.powf(1.0 - beta) * TAU.powf(-beta) * circle.value * (1.0 - s).powf(alpha)
            };
            let res = quad::adaptive(integrand, 0.0, x, quad_params)?;
            if inner_issue.get() {
                return Err(Error::ToleranceNotMet { best: res.value / nu, error: f64::NAN });
            }
            (res, max_inner_rel.get())
        }
    };
    let value = num.value / nu;
    Ok(MeanValue {
        value,
        error_bound: num.error / nu + value.abs() * inner_rel,
        method: MeanMethod::Quadrature,
    })
}

/// Closed incomplete-beta route for the mean of `z^n`:
/// `A_{alpha,beta}(z^n,r) = pi^{1-beta} f_{n-beta}(r^2) / f_0(r^2)` and
/// `L_{alpha,beta}(z^n,r) = (2 pi)^{1-beta} f_{(n-beta)/2}(r^2) / f_0(r^2)`.
pub fn weighted_mean_monomial(
    kind: Kind,
    n: usize,
    params: WeightParams,
    r: f64,
    quad_params: &QuadratureParams,
) -> Result<MeanValue> {
    if n == 0 {
        return Err(Error::InvalidInput("monomial exponent must be >= 1".into()));
    }
    check_radius(r)?;
    let alpha = params.alpha();
    let beta = params.beta();
    let x = r * r;
    let (scale, lambda) = match kind {
        Kind::Area => (PI.powf(1.0 - beta), n as f64 - beta),
        Kind::Length => (TAU.powf(1.0 - beta), (n as f64 - beta) / 2.0),
    };
    let num = f_lambda(lambda, alpha, x, quad_params)?;
    // The normalization is f_0 computed by the same quadrature, so the
    // lambda = 0 ratios (a linear map at beta = 1) are exactly 1.
    let nu = f_lambda(0.0, alpha, x, quad_params)?;
    let value = scale * num / nu;
    Ok(MeanValue {
        value,
        error_bound: value.abs() * 2.0 * quad_params.rel_tol,
        method: MeanMethod::ClosedForm,
    })
}

/// Truncation order of the square-root series used for length means of
/// non-monomial maps at `r = 1`.
const SQRT_DEVICE_ORDER: usize = 4096;

/// Limit value of the mean at `r = 1` (the supremum over `(0,1)`), defined
/// for `alpha > -1`.
///
/// Area means integrate the coefficient-sum ratio over the graded unit
/// mesh. Length means of two-term maps do the same with the closed
/// exponent; other maps must have a zero-free derivative (univalent maps
/// do), and the circle integral is replaced by the square-root device
/// `Phi_{L,1}(f,t) = Σ |b_n|^2 t^{2n}`, whose termwise weight integrals
/// follow the exact beta recurrence `J(l+1) = J(l) (l+1)/(l+alpha+2)`.
pub fn mean_at_one(
    kind: Kind,
    f: &PowerSeries,
    params: WeightParams,
    quad_params: &QuadratureParams,
) -> Result<MeanValue> {
    let alpha = params.alpha();
    let beta = params.beta();
    let nu1 = nu_alpha_at_one(alpha)?;
    match kind {
        Kind::Area => {
            let phi = PhiPoly::area_of_series(f, beta);
            let res = quad::weighted_unit_interval(|s| phi.value(s), alpha, quad_params)?;
            Ok(MeanValue {
                value: res.value / nu1,
                error_bound: res.error / nu1,
                method: MeanMethod::Quadrature,
            })
        }
        Kind::Length => {
            if let Some((n, an)) = f.as_two_term() {
                let lambda = (n as f64 - beta) / 2.0;
                let num = f_lambda_at_one(lambda, alpha, quad_params)?;
                let value = TAU.powf(1.0 - beta) * an.norm() * num / nu1;
                return Ok(MeanValue {
                    value,
                    error_bound: value.abs() * 2.0 * quad_params.rel_tol,
                    method: MeanMethod::ClosedForm,
                });
            }
            if f.is_constant() {
                return Ok(MeanValue { value: 0.0, error_bound: 0.0, method: MeanMethod::ClosedForm });
            }
            let phi = PhiPoly::length_of_series(f, beta, SQRT_DEVICE_ORDER)?;
            let lambda0 = (1.0 - beta) / 2.0;
            // Seed J(lambda0) by quadrature, then climb by the recurrence.
            let mut j = f_lambda_at_one(lambda0, alpha, quad_params)?;
            let mut acc = 0.0;
            let mut last_term = 0.0;
            for (n, &c) in phi.coeffs.iter().enumerate() {
                last_term = c * j;
                acc += last_term;
                let lam = lambda0 + n as f64;
                j *= (lam + 1.0) / (lam + alpha + 2.0);
            }
            let value = acc / nu1;
            // Terms decay polynomially; bound the tail by the last term
            // times the number of terms already summed.
            let tail = last_term.abs() * phi.coeffs.len() as f64;
            Ok(MeanValue {
                value,
                error_bound: (acc.abs() * 2.0 * quad_params.rel_tol + tail) / nu1,
                method: MeanMethod::Quadrature,
            })
        }
    }
}
