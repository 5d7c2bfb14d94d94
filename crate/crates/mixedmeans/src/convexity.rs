//! Log-log convexity machinery.
//!
//! A positive function `F` on `(0,1)` is convex in `log F` vs `log x`
//! exactly when `D(F)(x) = F'/F + x (F'/F)' >= 0` there; `x * D(F)(x)` is
//! the second derivative of `log F` with respect to `log x` and serves as
//! the pointwise indicator everywhere below.
//!
//! Three routes compute it:
//! * [`d_notation_numeric`] — Richardson-refined central differences of
//!   `log F`, for black-box positive functions;
//! * [`d_from_derivs`] / [`MeanCurve::indicator`] — analytic assembly from
//!   a value and two derivatives, so quadrature noise is never
//!   differentiated;
//! * [`RationalFunc::d_notation`](crate::rational::RationalFunc::d_notation)
//!   — exact rational arithmetic, whose numerator signs are certified by
//!   [`sign_changes`].

use num_traits::{Signed, Zero};

use crate::quad::{self, QuadratureParams};
use crate::rational::{rat_int, Rat, RatPoly};
use crate::weights::{self, PhiPoly};
use crate::{Error, Result};

/// Outcome of a convexity scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Convex,
    Concave,
    Neither,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Convex => "convex",
            Verdict::Concave => "concave",
            Verdict::Neither => "neither",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// One scan point: the estimate of `x * D(F)(x)`.
#[derive(Clone, Copy, Debug)]
pub struct GridIndicator {
    pub x: f64,
    pub indicator: f64,
}

/// A certified sign change of a polynomial: the sign is `sign_before` at
/// `lo`, `sign_after` at `hi`, and the polynomial changes sign exactly once
/// inside `(lo, hi)`.
#[derive(Clone, Debug)]
pub struct SignChange {
    pub lo: Rat,
    pub hi: Rat,
    pub sign_before: i8,
    pub sign_after: i8,
}

/// Result of a log-log convexity scan.
#[derive(Clone, Debug)]
pub struct ConvexityReport {
    pub grid: Vec<GridIndicator>,
    pub sign_changes: Vec<SignChange>,
    pub verdict: Verdict,
}

/// A verdict of `Neither` requires indicators certified on both sides,
/// i.e. beyond this multiple of the scan tolerance.
const CERTIFY_FACTOR: f64 = 10.0;

/// Default step for numeric D-notation at `x`, shrunk toward the ends so
/// the five-point stencil stays inside `(0,1)`.
pub fn default_step(x: f64) -> f64 {
    1e-4 * x * (1.0 - x)
}

/// `D(F)(x)` from five-point central differences of `log F` at spacings
/// `h` and `h/2`, combined by one Richardson step.
///
/// All seven samples must be strictly positive; callers choose `h` so the
/// stencil `[x-2h, x+2h]` stays inside the domain of `F`.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // deliberate: rejects NaN too
pub fn d_notation_numeric<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidInput(format!("step must be positive, got {h}")));
    }
    let sample = |t: f64| -> Result<f64> {
        let v = f(t);
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!(
                "log-log analysis needs positive samples; F({t}) = {v}"
            )));
        }
        Ok(v.ln())
    };
    let g_m2 = sample(x - 2.0 * h)?;
    let g_m1 = sample(x - h)?;
    let g_mh = sample(x - 0.5 * h)?;
    let g_0 = sample(x)?;
    let g_ph = sample(x + 0.5 * h)?;
    let g_p1 = sample(x + h)?;
    let g_p2 = sample(x + 2.0 * h)?;
    let d_at = |far_m: f64, near_m: f64, near_p: f64, far_p: f64, step: f64| {
        let g1 = (-far_p + 8.0 * near_p - 8.0 * near_m + far_m) / (12.0 * step);
        let g2 = (-far_p + 16.0 * near_p - 30.0 * g_0 + 16.0 * near_m - far_m) / (12.0 * step * step);
        g1 + x * g2
    };
    let d_h = d_at(g_m2, g_m1, g_p1, g_p2, h);
    let d_half = d_at(g_m1, g_mh, g_ph, g_p1, 0.5 * h);
    Ok((16.0 * d_half - d_h) / 15.0)
}

/// `D(F)(x)` assembled from `F(x)`, `F'(x)`, `F''(x)`.
pub fn d_from_derivs(value: f64, d1: f64, d2: f64, x: f64) -> f64 {
    let l = d1 / value;
    l + x * (d2 / value - l * l)
}

fn d_of_f_lambda(lambda: f64, alpha: f64, x: f64, params: &QuadratureParams) -> Result<f64> {
    let f = weights::f_lambda(lambda, alpha, x, params)?;
    let d1 = weights::f_lambda_prime(lambda, alpha, x);
    let d2 = weights::f_lambda_second(lambda, alpha, x);
    Ok(d_from_derivs(f, d1, d2, x))
}

/// `Delta(lambda, x) = D(f_lambda)(x) - D(f_0)(x)`, the quantity whose sign
/// decides log-log convexity of the means of `z^n` (with `lambda = n-beta`
/// for area, `(n-beta)/2` for length).
///
/// Only `f_lambda` itself needs quadrature; both derivatives have closed
/// forms, so no numerical differentiation is involved.
pub fn delta(lambda: f64, alpha: f64, x: f64, params: &QuadratureParams) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!("lambda must be >= 0, got {lambda}")));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    Ok(d_of_f_lambda(lambda, alpha, x, params)? - d_of_f_lambda(0.0, alpha, x, params)?)
}

/// Limit of `Delta(lambda, x)` as `x -> 1` for `alpha < -3` (also the
/// relevant boundary signal for nearby `alpha`):
/// `lambda (alpha+1)(lambda+2+alpha) / ((alpha+2)^2 (alpha+3))`.
pub fn delta_limit(lambda: f64, alpha: f64) -> Result<f64> {
    if lambda < 0.0 {
        return Err(Error::Domain(format!("lambda must be >= 0, got {lambda}")));
    }
    if alpha == -2.0 || alpha == -3.0 {
        return Err(Error::SingularParameter(format!(
            "the Delta limit formula has a pole at alpha = {alpha}"
        )));
    }
    Ok(lambda * (alpha + 1.0) * (lambda + 2.0 + alpha) / ((alpha + 2.0).powi(2) * (alpha + 3.0)))
}

fn verdict_from(indicators: &[GridIndicator], tol: f64) -> Verdict {
    let min = indicators.iter().map(|g| g.indicator).fold(f64::INFINITY, f64::min);
    let max = indicators.iter().map(|g| g.indicator).fold(f64::NEG_INFINITY, f64::max);
    if min >= -tol {
        Verdict::Convex
    } else if max <= tol {
        Verdict::Concave
    } else if max > CERTIFY_FACTOR * tol && min < -CERTIFY_FACTOR * tol {
        Verdict::Neither
    } else {
        Verdict::Inconclusive
    }
}

/// Scans `x * D(F)(x)` over a grid by numeric differentiation of a
/// black-box positive `F` and aggregates a verdict: convex if nothing is
/// certifiably negative, concave if nothing is certifiably positive,
/// neither if both signs appear beyond `10 * tol`, inconclusive otherwise.
pub fn loglog_convexity_scan<F: Fn(f64) -> f64>(f: F, grid: &[f64], tol: f64) -> Result<ConvexityReport> {
    loglog_scan_with_indicator(|x| Ok(x * d_notation_numeric(&f, x, default_step(x))?), grid, tol)
}

/// Same aggregation as [`loglog_convexity_scan`] over a caller-supplied
/// indicator for `x * D(F)(x)`.
pub fn loglog_scan_with_indicator<F: Fn(f64) -> Result<f64>>(
    indicator: F,
    grid: &[f64],
    tol: f64,
) -> Result<ConvexityReport> {
    let mut points = Vec::with_capacity(grid.len());
    for &x in grid {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("scan grid must lie in (0,1), got {x}")));
        }
        points.push(GridIndicator { x, indicator: indicator(x)? });
    }
    let verdict = verdict_from(&points, tol);
    Ok(ConvexityReport { grid: points, sign_changes: vec![], verdict })
}

/// A weighted-mean curve `F(x) = ( ∫_0^x phi(s) (1-s)^alpha ds ) / f_0(x)`
/// in the squared-radius variable `x = r^2`, carrying enough structure to
/// evaluate `x * D(F)(x)` with one quadrature per point.
pub struct MeanCurve {
    pub phi: PhiPoly,
    pub alpha: f64,
}

impl MeanCurve {
    pub fn area_of_series(f: &crate::series::PowerSeries, alpha: f64, beta: f64) -> Self {
        Self { phi: PhiPoly::area_of_series(f, beta), alpha }
    }

    pub fn length_of_series(
        f: &crate::series::PowerSeries,
        alpha: f64,
        beta: f64,
        order: usize,
    ) -> Result<Self> {
        Ok(Self { phi: PhiPoly::length_of_series(f, beta, order)?, alpha })
    }

    pub fn area_monomial(n: usize, alpha: f64, beta: f64) -> Self {
        Self { phi: PhiPoly::area_monomial(n, beta), alpha }
    }

    pub fn length_monomial(n: usize, alpha: f64, beta: f64) -> Self {
        Self { phi: PhiPoly::length_monomial(n, beta), alpha }
    }

    fn numerator(&self, x: f64, params: &QuadratureParams) -> Result<f64> {
        let alpha = self.alpha;
        Ok(quad::adaptive(|s| self.phi.value(s) * (1.0 - s).powf(alpha), 0.0, x, params)?.value)
    }

    /// `F(x)` itself.
    pub fn mean(&self, x: f64, params: &QuadratureParams) -> Result<f64> {
        let f0 = f0_closed(self.alpha, x);
        Ok(self.numerator(x, params)? / f0)
    }

    /// `x * D(F)(x)`, with the numerator's derivatives in closed form.
    pub fn indicator(&self, x: f64, params: &QuadratureParams) -> Result<f64> {
        let alpha = self.alpha;
        let w = (1.0 - x).powf(alpha);
        let m = self.numerator(x, params)?;
        let m1 = self.phi.value(x) * w;
        let m2 = w * (self.phi.deriv(x) - alpha * self.phi.value(x) / (1.0 - x));
        let d_m = d_from_derivs(m, m1, m2, x);
        let f0 = f0_closed(alpha, x);
        let d_f0 = d_from_derivs(f0, w, -alpha * (1.0 - x).powf(alpha - 1.0), x);
        Ok(x * (d_m - d_f0))
    }
}

/// `f_0(x) = ∫_0^x (1-s)^alpha ds` in closed form.
fn f0_closed(alpha: f64, x: f64) -> f64 {
    if alpha == -1.0 {
        -(1.0 - x).ln()
    } else {
        (1.0 - (1.0 - x).powf(alpha + 1.0)) / (alpha + 1.0)
    }
}

fn sign_of(v: &Rat) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Certified sign-change isolation for a rational-coefficient polynomial
/// on `(lo, hi)`.
///
/// Sign changes of `p'` are isolated recursively; between them `p` is
/// monotone, so endpoint signs decide existence and bisection (to width
/// `2^-40 (hi-lo)`) locates each change. Inside a derivative-change
/// interval, opposite end signs certify exactly one change (the derivative
/// turns once there); equal end signs require the value to dominate the
/// interval's Lipschitz bound, which rules out any root.
///
/// Everything is exact rational arithmetic; an input whose configuration
/// cannot be certified (a root at a probe point, or a root of `p` closer
/// than `2^-40 (hi-lo)` to a root of `p'`) returns
/// [`Error::CannotCertify`] rather than a guess.
pub fn sign_changes(p: &RatPoly, lo: &Rat, hi: &Rat) -> Result<Vec<SignChange>> {
    if lo >= hi {
        return Err(Error::InvalidInput("need lo < hi".into()));
    }
    if p.is_zero() {
        return Err(Error::InvalidInput("sign analysis of the zero polynomial".into()));
    }
    let width_budget = (hi - lo) / rat_int(1i64 << 40);
    isolate(p, lo, hi, &width_budget)
}

fn isolate(p: &RatPoly, lo: &Rat, hi: &Rat, width_budget: &Rat) -> Result<Vec<SignChange>> {
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    // Roots exactly at the endpoints lie outside the open interval but
    // would defeat the endpoint probes; divide them out. On (lo, hi) the
    // factors (x-lo)^k are positive and each factor (x-hi) is negative,
    // so only the latter flip the reported signs.
    let lin_lo = RatPoly::new(vec![-lo.clone(), Rat::from_integer(1.into())]);
    let lin_hi = RatPoly::new(vec![-hi.clone(), Rat::from_integer(1.into())]);
    let mut q = p.clone();
    let mut flip = 1i8;
    while q.degree() > Some(0) && q.eval(lo).is_zero() {
        q = q.div_exact(&lin_lo);
    }
    while q.degree() > Some(0) && q.eval(hi).is_zero() {
        q = q.div_exact(&lin_hi);
        flip = -flip;
    }
    if q.degree() == Some(0) {
        return Ok(vec![]);
    }
    let p = &q;
    let dp = p.derivative();
    let d_changes = isolate(&dp, lo, hi, width_budget)?;
    let mut out = Vec::new();
    let mut segments: Vec<(Rat, Rat)> = Vec::new();
    let mut gaps: Vec<(Rat, Rat)> = Vec::new();
    let mut prev = lo.clone();
    for ch in &d_changes {
        segments.push((prev.clone(), ch.lo.clone()));
        gaps.push((ch.lo.clone(), ch.hi.clone()));
        prev = ch.hi.clone();
    }
    segments.push((prev, hi.clone()));

    for (u, v) in segments {
        if u >= v {
            continue;
        }
        let su = sign_of(&p.eval(&u));
        let sv = sign_of(&p.eval(&v));
        if su == 0 || sv == 0 {
            return Err(Error::CannotCertify(format!(
                "polynomial vanishes exactly at a probe point in [{u}, {v}]"
            )));
        }
        if su != sv {
            out.push(bisect_monotone(p, u, v, su, sv, width_budget)?);
        }
    }
    for (a, b) in gaps {
        let sa = sign_of(&p.eval(&a));
        let sb = sign_of(&p.eval(&b));
        if sa == 0 || sb == 0 {
            return Err(Error::CannotCertify(
                "polynomial vanishes exactly at a derivative-change endpoint".into(),
            ));
        }
        if sa != sb {
            // The derivative turns exactly once inside, so p has at most
            // two roots here; opposite signs make it exactly one.
            out.push(SignChange { lo: a, hi: b, sign_before: sa, sign_after: sb });
        } else {
            // Same sign at both ends: rule out a root pair via |p| > width * max |p'|.
            let bound = poly_abs_bound(&dp, &a, &b);
            let margin = (b.clone() - a.clone()) * bound;
            let pa = p.eval(&a);
            let pb = p.eval(&b);
            if !(pa.abs() > margin && pb.abs() > margin) {
                return Err(Error::CannotCertify(format!(
                    "cannot exclude roots of p near a derivative root in [{a}, {b}]"
                )));
            }
        }
    }
    if flip == -1 {
        for ch in &mut out {
            ch.sign_before = -ch.sign_before;
            ch.sign_after = -ch.sign_after;
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Upper bound for `|p|` on `[a, b]`: sum of |coefficients| times the
/// larger endpoint magnitude's powers.
fn poly_abs_bound(p: &RatPoly, a: &Rat, b: &Rat) -> Rat {
    let m = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    let mut bound = Rat::zero();
    let mut pw = Rat::from_integer(1.into());
    for c in p.coeffs() {
        bound += c.abs() * pw.clone();
        pw *= m.clone();
    }
    bound
}

fn bisect_monotone(
    p: &RatPoly,
    mut u: Rat,
    mut v: Rat,
    su: i8,
    sv: i8,
    width_budget: &Rat,
) -> Result<SignChange> {
    let half = Rat::new(1.into(), 2.into());
    let quarter = Rat::new(1.into(), 4.into());
    while (v.clone() - u.clone()) > *width_budget {
        let mut mid = (u.clone() + v.clone()) * half.clone();
        let mut sm = sign_of(&p.eval(&mid));
        if sm == 0 {
            // Root exactly at the midpoint: probe off-center instead.
            mid = u.clone() + (v.clone() - u.clone()) * quarter.clone();
            sm = sign_of(&p.eval(&mid));
            if sm == 0 {
                return Err(Error::CannotCertify(
                    "two probe points are exact roots within one bisection interval".into(),
                ));
            }
        }
        if sm == su {
            u = mid;
        } else {
            v = mid;
        }
    }
    Ok(SignChange { lo: u, hi: v, sign_before: su, sign_after: sv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, RationalFunc};
    use crate::series::PowerSeries;

    type NamedFns = Vec<(&'static str, Box<dyn Fn(f64) -> f64>)>;

    fn tight() -> QuadratureParams {
        QuadratureParams::with_rel_tol(1e-12)
    }

    /// The area-example ratios as plain f64 functions of x.
    fn h0(x: f64) -> f64 {
        (12.0 * x - 4.0 * x * x - 3.0 * x * x * x) / (2.0 - x)
    }
    fn h1(x: f64) -> f64 {
        (12.0 - 3.0 * x - 2.0 * x * x) / (2.0 - x)
    }

    #[test]
    fn numeric_d_vanishes_on_powers() {
        for k in [1.0, 2.5, -0.5] {
            for x in [0.2, 0.5, 0.8] {
                let d = d_notation_numeric(|t: f64| t.powf(k), x, default_step(x)).unwrap();
                assert!(d.abs() < 1e-5, "k={k} x={x}: {d}");
            }
        }
    }

    #[test]
    fn numeric_d_matches_exact_rational_d() {
        // D(h_0) = 2 g_0 / ((12-4x-3x^2)^2 (2-x)^2) with
        // g_0 = 48 - 288x + 232x^2 - 72x^3 + 15x^4.
        let g0 = RatPoly::from_integers(&[48, -288, 232, -72, 15]);
        let s = RatPoly::from_integers(&[12, -4, -3]);
        let q = RatPoly::from_integers(&[2, -1]);
        for x in [0.15, 0.4, 0.85] {
            let exact = 2.0 * g0.eval_f64(x) / (s.eval_f64(x).powi(2) * q.eval_f64(x).powi(2));
            let numeric = d_notation_numeric(h0, x, default_step(x)).unwrap();
            assert!((numeric - exact).abs() < 1e-5 * exact.abs().max(1.0), "x={x}");
        }
        // D(2-x)(0.5) = -2/(1.5)^2 = -8/9.
        let numeric = d_notation_numeric(|t| 2.0 - t, 0.5, default_step(0.5)).unwrap();
        assert!((numeric + 8.0 / 9.0).abs() < 1e-7);
    }

    #[test]
    fn numeric_d_rejects_nonpositive_samples() {
        assert!(d_notation_numeric(|t| t - 0.5, 0.5, 1e-3).is_err());
    }

    #[test]
    fn indicator_matches_log_log_second_difference() {
        // Second difference of log F against log x on a geometric grid.
        let funcs: NamedFns = vec![
            ("h0", Box::new(h0)),
            ("h1", Box::new(h1)),
            ("exp", Box::new(|x: f64| x.exp())),
        ];
        let step = 1e-3;
        for (name, f) in funcs {
            for x in [0.3, 0.6, 0.9] {
                let ratio = 1.0 + step;
                let g = |t: f64| f(t).ln();
                let second = (g(x * ratio) - 2.0 * g(x) + g(x / ratio)) / ratio.ln().powi(2);
                let ind = x * d_notation_numeric(&f, x, default_step(x)).unwrap();
                assert!((second - ind).abs() < 1e-4, "{name} x={x}: {second} vs {ind}");
            }
        }
    }

    #[test]
    fn delta_is_zero_for_lambda_zero_and_alpha_zero() {
        let p = tight();
        assert_eq!(delta(0.0, -4.0, 0.5, &p).unwrap(), 0.0);
        // alpha = 0 makes every f_lambda a pure power, so Delta vanishes.
        for lambda in [0.5, 1.0, 3.0] {
            for x in [0.2, 0.7, 0.95] {
                let d = delta(lambda, 0.0, x, &p).unwrap();
                assert!(d.abs() < 1e-9, "lambda={lambda} x={x}: {d}");
            }
        }
    }

    #[test]
    fn delta_agrees_with_numeric_d_of_quadrature_output() {
        // Black-box route: numeric D of f_lambda evaluated by quadrature,
        // with a step large enough that quadrature noise (rel 1e-12)
        // stays below the 1e-6 agreement target after the 1/h^2 division.
        let p = tight();
        for &x in &[0.2, 0.5, 0.8] {
            for &alpha in &[-4.0, -1.0, 1.0] {
                for &lambda in &[0.5, 1.0, 2.0] {
                    let h = 0.02 * x * (1.0 - x);
                    let numeric_lam =
                        d_notation_numeric(|t| weights::f_lambda(lambda, alpha, t, &p).unwrap(), x, h).unwrap();
                    let numeric_0 =
                        d_notation_numeric(|t| weights::f_lambda(0.0, alpha, t, &p).unwrap(), x, h).unwrap();
                    let analytic = delta(lambda, alpha, x, &p).unwrap();
                    assert!(
                        (numeric_lam - numeric_0 - analytic).abs() <= 1e-6,
                        "x={x} a={alpha} l={lambda}: numeric {} vs analytic {analytic}",
                        numeric_lam - numeric_0
                    );
                }
            }
        }
    }

    #[test]
    fn delta_matches_exact_rational_oracle_at_alpha_one() {
        // alpha=1, lambda=1: f_1/f_0 = (x^2/2 - x^3/3)/(x - x^2/2), so
        // Delta(1,x) = D(f_1) - D(f_0) = -6/(3-2x)^2 + 2/(2-x)^2 exactly.
        let p = tight();
        for x in [0.2f64, 0.5, 0.8, 0.999] {
            let exact = -6.0 / (3.0 - 2.0 * x).powi(2) + 2.0 / (2.0 - x).powi(2);
            let got = delta(1.0, 1.0, x, &p).unwrap();
            assert!((got - exact).abs() < 1e-9, "x={x}: {got} vs {exact}");
        }
    }

    #[test]
    fn delta_approaches_its_limit_for_steep_weights() {
        let p = tight();
        // Frozen high-precision value of Delta(1, -4, 0.999).
        let got = delta(1.0, -4.0, 0.999, &p).unwrap();
        assert!((got - (-0.7432595621102522)).abs() < 1e-6, "got {got}");
        assert!((delta_limit(1.0, -4.0).unwrap() - (-0.75)).abs() < 1e-15);
    }

    #[test]
    fn delta_limit_values_and_poles() {
        assert_eq!(delta_limit(0.0, -5.0).unwrap(), 0.0);
        assert!(delta_limit(1.0, -2.0).is_err());
        assert!(delta_limit(1.0, -3.0).is_err());
        // Positive for lambda beyond beta - (2 + alpha): alpha=-4, lambda=3.
        assert!(delta_limit(3.0, -4.0).unwrap() > 0.0);
    }

    #[test]
    fn scan_verdicts_for_reference_functions() {
        let grid: Vec<f64> = (1..40).map(|k| k as f64 / 40.0).collect();
        // Constant: weakly convex.
        let r = loglog_convexity_scan(|_| 3.5, &grid, 1e-4).unwrap();
        assert_eq!(r.verdict, Verdict::Convex);
        // 2 - x: strictly concave in log-log.
        let r = loglog_convexity_scan(|x| 2.0 - x, &grid, 1e-4).unwrap();
        assert_eq!(r.verdict, Verdict::Concave);
        // The counterexample ratio h_0: certified both signs.
        let r = loglog_convexity_scan(h0, &grid, 1e-4).unwrap();
        assert_eq!(r.verdict, Verdict::Neither);
        // Sums of positive multiples of powers are log-log convex.
        let r = loglog_convexity_scan(|x| 1.0 + 0.5 * x + 2.0 * x * x * x, &grid, 1e-4).unwrap();
        assert_eq!(r.verdict, Verdict::Convex);
    }

    #[test]
    fn scan_verdict_is_invariant_under_square_substitution() {
        let grid: Vec<f64> = (1..30).map(|k| k as f64 / 30.0).collect();
        let fams: NamedFns = vec![
            ("x", Box::new(|x: f64| x)),
            ("x^3", Box::new(|x: f64| x * x * x)),
            ("h1", Box::new(h1)),
            ("2-x", Box::new(|x: f64| 2.0 - x)),
        ];
        for (name, f) in fams {
            let direct = loglog_convexity_scan(&f, &grid, 1e-4).unwrap().verdict;
            let squared = loglog_convexity_scan(|x| f(x * x), &grid, 1e-4).unwrap().verdict;
            assert_eq!(direct, squared, "substitution changes verdict for {name}");
        }
    }

    #[test]
    fn mean_curve_indicator_reduces_to_delta_for_monomials() {
        let p = tight();
        for (n, beta) in [(2usize, 1.0), (3, 0.5), (1, 0.0)] {
            for alpha in [-2.5, 1.0] {
                let curve = MeanCurve::area_monomial(n, alpha, beta);
                for x in [0.3, 0.9] {
                    let ind = curve.indicator(x, &p).unwrap();
                    let want = x * delta(n as f64 - beta, alpha, x, &p).unwrap();
                    assert!((ind - want).abs() < 1e-9 * want.abs().max(1.0), "n={n} b={beta} a={alpha} x={x}");
                }
            }
        }
    }

    #[test]
    fn mean_curve_value_matches_weighted_mean() {
        let p = tight();
        let f = PowerSeries::from_real(&[0.0, 1.0, 0.5]).unwrap();
        let curve = MeanCurve::area_of_series(&f, 1.0, 1.0);
        for r in [0.4f64, 0.8] {
            let params = crate::weights::WeightParams::new(1.0, 1.0).unwrap();
            let direct = crate::weights::weighted_mean_quadrature(crate::Kind::Area, &f, params, r, &p)
                .unwrap()
                .value;
            let via_curve = curve.mean(r * r, &p).unwrap();
            assert!((direct - via_curve).abs() < 1e-10 * direct);
        }
    }

    #[test]
    fn mean_curve_length_indicator_from_sqrt_device() {
        // (z+2)^3: Phi_{L,1} = 12 + 3 t^2 exactly; the mean curve indicator
        // must match an exact rational computation of D(M/f_0) at alpha=1.
        // M(x) = ∫ (12 + 3s)(1-s) ds = 12x - 9x^2/2 - x^3,
        // f_0(x) = x - x^2/2.
        let p = tight();
        let f = PowerSeries::from_real(&[8.0, 12.0, 6.0, 1.0]).unwrap();
        let curve = MeanCurve::length_of_series(&f, 1.0, 1.0, 16).unwrap();
        let m = RatPoly::new(vec![rat(0, 1), rat(12, 1), rat(-9, 2), rat(-1, 1)]);
        let f0 = RatPoly::new(vec![rat(0, 1), rat(1, 1), rat(-1, 2)]);
        let exact = RationalFunc::new(m, f0).unwrap().d_notation().unwrap();
        for x in [0.25, 0.6, 0.95] {
            let ind = curve.indicator(x, &p).unwrap();
            let want = x * exact.eval_f64(x);
            assert!((ind - want).abs() < 1e-9 * want.abs().max(1.0), "x={x}: {ind} vs {want}");
        }
    }

    #[test]
    fn certified_sign_changes_of_example_polynomials() {
        let zero = Rat::zero();
        let one = rat_int(1);
        let cases: Vec<(&str, Vec<i64>, i64, i64)> = vec![
            ("area g0", vec![48, -288, 232, -72, 15], 48, -65),
            ("area g1", vec![72, -192, 147, -48, 7], 72, -14),
            ("length g0", vec![3920, 0, -33600, 0, 28098, 0, -8400, 0, 1395], 3920, -8587),
            ("length g1", vec![144, -384, 297, -96, 13], 144, -26),
        ];
        for (name, coeffs, at0, at1) in cases {
            let p = RatPoly::from_integers(&coeffs);
            assert_eq!(p.eval(&zero), rat_int(at0), "{name} at 0");
            assert_eq!(p.eval(&one), rat_int(at1), "{name} at 1");
            let changes = sign_changes(&p, &zero, &one).unwrap();
            assert_eq!(changes.len(), 1, "{name} should change sign exactly once");
            let ch = &changes[0];
            assert_eq!((ch.sign_before, ch.sign_after), (1, -1), "{name} direction");
            let width = ch.hi.clone() - ch.lo.clone();
            assert!(width <= Rat::new(1.into(), (1i64 << 40).into()), "{name} width");
        }
    }

    #[test]
    fn sign_changes_counts_zero_and_two() {
        let zero = Rat::zero();
        let one = rat_int(1);
        // x^2 + 1: no real roots.
        let p = RatPoly::from_integers(&[1, 0, 1]);
        assert!(sign_changes(&p, &zero, &one).unwrap().is_empty());
        // (x - 1/4)(x - 3/4) = 3/16 - x + x^2: two changes.
        let p = RatPoly::new(vec![rat(3, 16), rat(-1, 1), rat(1, 1)]);
        let changes = sign_changes(&p, &zero, &one).unwrap();
        assert_eq!(changes.len(), 2);
        assert_eq!((changes[0].sign_before, changes[0].sign_after), (1, -1));
        assert_eq!((changes[1].sign_before, changes[1].sign_after), (-1, 1));
        // Roots are located correctly.
        assert!(changes[0].lo < rat(1, 4) && rat(1, 4) < changes[0].hi);
        assert!(changes[1].lo < rat(3, 4) && rat(3, 4) < changes[1].hi);
    }

    #[test]
    fn sign_changes_rejects_degenerate_input() {
        let zero = Rat::zero();
        let one = rat_int(1);
        assert!(sign_changes(&RatPoly::zero(), &zero, &one).is_err());
        assert!(sign_changes(&RatPoly::one(), &one, &zero).is_err());
    }
}
