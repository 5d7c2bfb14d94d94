//! Areas and lengths of holomorphic images of disks, and the mixed ratios
//! `Phi_{A,beta}(f,r) = A(f,r)/(pi r^2)^beta` and
//! `Phi_{L,beta}(f,r) = L(f,r)/(2 pi r)^beta`.
//!
//! Two area notions are exposed. [`area_dirichlet`] is the Dirichlet
//! integral `∫_{rD} |f'|^2 dA = pi Σ n |a_n|^2 r^{2n}`, which counts
//! multiplicity; it equals the area of the image set exactly when `f` is
//! univalent. [`area_image_raster`] measures the image *set* (no
//! multiplicity) by covering it with grid cells, with a
//! perimeter-proportional error bound. Keeping both makes the distinction
//! testable instead of silent.
//!
//! Boundary length is only defined here for univalent maps and for
//! two-term maps `a_0 + a_n z^n`, the classes the length results cover.

use num_complex::Complex64;

use crate::quad::{self, QuadratureParams};
use crate::series::PowerSeries;
use crate::{Error, Result};

/// Which geometric functional a computation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Area,
    Length,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Area => write!(f, "area"),
            Kind::Length => write!(f, "length"),
        }
    }
}

/// How a [`GeomValue`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeomMethod {
    CoefficientSum,
    Quadrature,
    Raster,
    ClosedForm,
}

/// A nonnegative geometric quantity with an error bound.
#[derive(Clone, Copy, Debug)]
pub struct GeomValue {
    pub value: f64,
    pub error_bound: f64,
    pub method: GeomMethod,
}

/// Uniform access to a map and its derivative on the disk, for maps not
/// backed by a coefficient list.
pub trait DiskMap {
    fn eval(&self, z: Complex64) -> Complex64;
    fn eval_deriv(&self, z: Complex64) -> Complex64;
}

impl DiskMap for PowerSeries {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.evaluate(z)
    }
    fn eval_deriv(&self, z: Complex64) -> Complex64 {
        self.derivative().evaluate(z)
    }
}

/// Closure-backed [`DiskMap`].
pub struct FnMap<F, G>
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(Complex64) -> Complex64,
{
    pub f: F,
    pub df: G,
}

impl<F, G> DiskMap for FnMap<F, G>
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(Complex64) -> Complex64,
{
    fn eval(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }
    fn eval_deriv(&self, z: Complex64) -> Complex64 {
        (self.df)(z)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("radius must lie in (0,1), got {r}")));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::Domain(format!("beta must lie in [0,1], got {beta}")));
    }
    Ok(())
}

/// Multiplicity-counting Riemannian area `pi Σ_{n>=1} n |a_n|^2 r^{2n}`.
///
/// Equals the area of `f(rD)` when `f` is univalent.
pub fn area_dirichlet(f: &PowerSeries, r: f64) -> Result<GeomValue> {
    check_radius(r)?;
    let r2 = r * r;
    let mut acc = 0.0;
    // Sum from the top so the smallest terms accumulate first.
    for n in (1..=f.order()).rev() {
        acc = acc * r2 + n as f64 * f.coeff(n).norm_sqr();
    }
    let value = std::f64::consts::PI * acc * r2;
    Ok(GeomValue {
        value,
        error_bound: value * 1e-15,
        method: GeomMethod::CoefficientSum,
    })
}

/// Area of the image *set* `f(rD)` by rasterization, multiplicity ignored.
///
/// Samples the disk on a polar grid (`8 * cells_per_axis` angles by
/// `2 * cells_per_axis` radii), marks covered cells of a uniform grid over
/// the image bounding box, and counts them. Cells adjacent to uncovered
/// territory are counted in full and reported in the error bound.
pub fn area_image_raster(f: &dyn DiskMap, r: f64, cells_per_axis: usize) -> Result<GeomValue> {
    check_radius(r)?;
    if cells_per_axis < 16 {
        return Err(Error::InvalidInput(format!(
            "cells_per_axis must be >= 16, got {cells_per_axis}"
        )));
    }
    let n_theta = 8 * cells_per_axis;
    let n_r = 2 * cells_per_axis;
    let mut points = Vec::with_capacity(n_theta * n_r);
    let (mut min_re, mut max_re) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_im, mut max_im) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n_r {
        let rho = r * (i as f64 + 0.5) / n_r as f64;
        for j in 0..n_theta {
            let theta = std::f64::consts::TAU * j as f64 / n_theta as f64;
            let w = f.eval(Complex64::from_polar(rho, theta));
            min_re = min_re.min(w.re);
            max_re = max_re.max(w.re);
            min_im = min_im.min(w.im);
            max_im = max_im.max(w.im);
            points.push(w);
        }
    }
    let width = max_re - min_re;
    let height = max_im - min_im;
    if width <= 0.0 || height <= 0.0 {
        // Degenerate image (a point or a segment): zero area.
        return Ok(GeomValue {
            value: 0.0,
            error_bound: 0.0,
            method: GeomMethod::Raster,
        });
    }
    let n = cells_per_axis;
    let cell_w = width / n as f64;
    let cell_h = height / n as f64;
    let mut covered = vec![false; n * n];
    for w in points {
        let ix = (((w.re - min_re) / cell_w) as usize).min(n - 1);
        let iy = (((w.im - min_im) / cell_h) as usize).min(n - 1);
        covered[iy * n + ix] = true;
    }
    let cell_area = cell_w * cell_h;
    let mut count = 0usize;
    let mut boundary = 0usize;
    for iy in 0..n {
        for ix in 0..n {
            if !covered[iy * n + ix] {
                continue;
            }
            count += 1;
            let at_edge = ix == 0 || iy == 0 || ix == n - 1 || iy == n - 1;
            let exposed = at_edge
                || !covered[iy * n + ix - 1]
                || !covered[iy * n + ix + 1]
                || !covered[(iy - 1) * n + ix]
                || !covered[(iy + 1) * n + ix];
            if exposed {
                boundary += 1;
            }
        }
    }
    Ok(GeomValue {
        value: count as f64 * cell_area,
        error_bound: boundary as f64 * cell_area,
        method: GeomMethod::Raster,
    })
}

/// Boundary length `L(f,r)`, defined for univalent maps (caller-asserted)
/// and two-term maps `a_0 + a_n z^n`.
///
/// Two-term maps use the closed form `2 pi |a_n| r^n`; otherwise the
/// integral `r ∫ |f'(r e^{i th})| d th` is computed by the periodic
/// trapezoid rule to the requested tolerance.
pub fn length_boundary(f: &PowerSeries, r: f64, params: &QuadratureParams) -> Result<GeomValue> {
    check_radius(r)?;
    if let Some((n, an)) = f.as_two_term() {
        return Ok(GeomValue {
            value: std::f64::consts::TAU * an.norm() * r.powi(n as i32),
            error_bound: 0.0,
            method: GeomMethod::ClosedForm,
        });
    }
    if f.is_constant() {
        return Ok(GeomValue {
            value: 0.0,
            error_bound: 0.0,
            method: GeomMethod::ClosedForm,
        });
    }
    length_boundary_quadrature(f, r, params)
}

/// The quadrature route of [`length_boundary`], with no closed-form fast
/// path; used where an independent numeric value is wanted.
pub fn length_boundary_quadrature(f: &PowerSeries, r: f64, params: &QuadratureParams) -> Result<GeomValue> {
    check_radius(r)?;
    let df = f.derivative();
    let map = FnMap {
        f: |z| z,
        df: move |z| df.evaluate(z),
    };
    length_boundary_map(&map, r, params)
}

/// Boundary length through a [`DiskMap`]; same hypotheses as
/// [`length_boundary`].
pub fn length_boundary_map(f: &dyn DiskMap, r: f64, params: &QuadratureParams) -> Result<GeomValue> {
    check_radius(r)?;
    let res = quad::periodic_trapezoid(
        |theta| f.eval_deriv(Complex64::from_polar(r, theta)).norm(),
        std::f64::consts::TAU,
        params,
    )?;
    Ok(GeomValue {
        value: r * res.value,
        error_bound: r * res.error,
        method: GeomMethod::Quadrature,
    })
}

/// Mixed ratio `Phi_{A,beta}` or `Phi_{L,beta}` at radius `r`, using the
/// best available method for the numerator.
///
/// For area the numerator is the image-set area: the closed form
/// `pi |a_n|^2 r^{2n}` for two-term maps (their image is a multiply
/// covered disk), the Dirichlet sum otherwise (exact for univalent maps).
pub fn mixed_ratio(kind: Kind, f: &PowerSeries, r: f64, beta: f64, params: &QuadratureParams) -> Result<GeomValue> {
    check_radius(r)?;
    check_beta(beta)?;
    let (num, denom) = match kind {
        Kind::Area => {
            let num = if let Some((n, an)) = f.as_two_term() {
                GeomValue {
                    value: std::f64::consts::PI * an.norm_sqr() * r.powi(2 * n as i32),
                    error_bound: 0.0,
                    method: GeomMethod::ClosedForm,
                }
            } else {
                area_dirichlet(f, r)?
            };
            (num, (std::f64::consts::PI * r * r).powf(beta))
        }
        Kind::Length => (length_boundary(f, r, params)?, (std::f64::consts::TAU * r).powf(beta)),
    };
    Ok(GeomValue {
        value: num.value / denom,
        error_bound: num.error_bound / denom,
        method: num.method,
    })
}

/// Limit of the mixed ratio as `r -> 0`: `|f'(0)|^2` (area) or `|f'(0)|`
/// (length) when `beta = 1`, and `0` when `beta < 1`.
pub fn phi_at_zero(kind: Kind, f: &PowerSeries, beta: f64) -> f64 {
    if beta < 1.0 {
        return 0.0;
    }
    let a1 = f.coeff(1).norm();
    match kind {
        Kind::Area => a1 * a1,
        Kind::Length => a1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive;

    const PI: f64 = std::f64::consts::PI;

    fn series(coeffs: &[f64]) -> PowerSeries {
        PowerSeries::from_real(coeffs).unwrap()
    }

    #[test]
    fn dirichlet_area_of_identity_is_disk_area() {
        let f = series(&[0.0, 1.0]);
        let a = area_dirichlet(&f, 0.5).unwrap();
        assert!((a.value - PI * 0.25).abs() < 1e-15);
    }

    #[test]
    fn dirichlet_area_of_example_map() {
        // f = z + z^2/2: A(f,t) = pi (t^2 + t^4/2).
        let f = series(&[0.0, 1.0, 0.5]);
        for t in [0.2, 0.5, 0.9] {
            let a = area_dirichlet(&f, t).unwrap();
            let want = PI * (t * t + t.powi(4) / 2.0);
            assert!((a.value - want).abs() < 1e-14, "t={t}");
        }
    }

    #[test]
    fn dirichlet_area_matches_2d_quadrature_oracle() {
        // Oracle: A = ∫_0^r ∫_0^2pi |f'(rho e^{i th})|^2 rho d th d rho,
        // with the angular integral done by dense trapezoid.
        let f = series(&[0.0, 0.0, 0.0, 0.0, 3.0]); // 3 z^4
        let fp = f.derivative();
        let r = 0.9;
        let angular = |rho: f64| {
            let m = 512;
            (0..m)
                .map(|j| {
                    let th = std::f64::consts::TAU * j as f64 / m as f64;
                    fp.evaluate(Complex64::from_polar(rho, th)).norm_sqr()
                })
                .sum::<f64>()
                * std::f64::consts::TAU
                / m as f64
        };
        let oracle = adaptive(|rho| angular(rho) * rho, 0.0, r, &QuadratureParams::with_rel_tol(1e-12))
            .unwrap()
            .value;
        let got = area_dirichlet(&f, r).unwrap().value;
        assert!((got - oracle).abs() < 1e-9 * oracle, "got {got}, oracle {oracle}");
        // Frozen closed form: pi * 4 * 9 * 0.9^8.
        assert!((got - 48.684694483702612).abs() < 1e-12);
    }

    #[test]
    fn raster_of_identity_matches_disk() {
        let f = series(&[0.0, 1.0]);
        let a = area_image_raster(&f, 0.5, 128).unwrap();
        assert!((a.value - PI * 0.25).abs() <= a.error_bound, "value {} err {}", a.value, a.error_bound);
        assert!(a.error_bound < 0.1);
    }

    #[test]
    fn raster_counts_set_area_not_multiplicity() {
        // z^2 covers the disk of radius r^2 twice; the set area has no
        // factor 2 while the Dirichlet area does.
        let f = series(&[0.0, 0.0, 1.0]);
        let r = 0.8f64;
        let a = area_image_raster(&f, r, 256).unwrap();
        let set_area = PI * r.powi(4);
        assert!((a.value - set_area).abs() <= a.error_bound);
        let dirichlet = area_dirichlet(&f, r).unwrap().value;
        assert!((dirichlet - 2.0 * set_area).abs() < 1e-12);
    }

    #[test]
    fn raster_agrees_with_dirichlet_for_univalent_maps() {
        let f = series(&[0.0, 1.0, 0.5]);
        let a_raster = area_image_raster(&f, 0.7, 256).unwrap();
        let a_dir = area_dirichlet(&f, 0.7).unwrap();
        assert!((a_raster.value - a_dir.value).abs() <= a_raster.error_bound + a_dir.error_bound);
    }

    #[test]
    fn raster_of_constant_map_is_zero() {
        let f = series(&[2.0]);
        let a = area_image_raster(&f, 0.5, 64).unwrap();
        assert_eq!(a.value, 0.0);
        assert_eq!(a.error_bound, 0.0);
    }

    #[test]
    fn length_of_identity() {
        let f = series(&[0.0, 1.0]);
        let l = length_boundary(&f, 0.3, &QuadratureParams::default()).unwrap();
        assert!((l.value - std::f64::consts::TAU * 0.3).abs() < 1e-15);
        assert_eq!(l.method, GeomMethod::ClosedForm);
    }

    #[test]
    fn length_of_cube_map_matches_closed_form() {
        // f = (z+2)^3: L(f,t) = 6 pi t (t^2 + 4).
        let f = series(&[8.0, 12.0, 6.0, 1.0]);
        for t in [0.25, 0.5, 0.9] {
            let l = length_boundary(&f, t, &QuadratureParams::with_rel_tol(1e-12)).unwrap();
            let want = 6.0 * PI * t * (t * t + 4.0);
            assert!((l.value - want).abs() < 1e-9 * want, "t={t}: {} vs {want}", l.value);
        }
    }

    #[test]
    fn length_matches_dense_trapezoid_oracle() {
        // Oracle: 10^6-node trapezoid of r |f'(r e^{i th})|.
        let f = series(&[0.0, 1.0, 0.5]);
        let fp = f.derivative();
        let r = 0.5;
        let m = 1_000_000usize;
        let oracle = (0..m)
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / m as f64;
                fp.evaluate(Complex64::from_polar(r, th)).norm()
            })
            .sum::<f64>()
            * std::f64::consts::TAU
            / m as f64
            * r;
        let got = length_boundary(&f, r, &QuadratureParams::with_rel_tol(1e-12)).unwrap();
        assert!((got.value - oracle).abs() < 1e-9 * oracle);
        // Frozen oracle value.
        assert!((got.value - 3.3412233051388146).abs() < 1e-12);
    }

    #[test]
    fn mixed_ratio_values() {
        let p = QuadratureParams::default();
        // Phi_{A,1}(z, r) = 1 for every r.
        let ident = series(&[0.0, 1.0]);
        for r in [0.1, 0.5, 0.9] {
            let v = mixed_ratio(Kind::Area, &ident, r, 1.0, &p).unwrap();
            assert!((v.value - 1.0).abs() < 1e-14);
        }
        // Phi_{A,beta}(z^n, r) = pi^{1-beta} r^{2(n-beta)}.
        let z3 = series(&[0.0, 0.0, 0.0, 1.0]);
        for (r, beta) in [(0.4, 0.0), (0.7, 0.5), (0.9, 1.0)] {
            let v = mixed_ratio(Kind::Area, &z3, r, beta, &p).unwrap();
            let want = PI.powf(1.0 - beta) * r.powf(2.0 * (3.0 - beta));
            assert!((v.value - want).abs() < 1e-13 * want.max(1.0));
        }
        // Phi_{L,1}((z+2)^3, 0.5) = 3 (0.25 + 4) = 12.75.
        let cube = series(&[8.0, 12.0, 6.0, 1.0]);
        let v = mixed_ratio(Kind::Length, &cube, 0.5, 1.0, &QuadratureParams::with_rel_tol(1e-12)).unwrap();
        assert!((v.value - 12.75).abs() < 1e-9);
    }

    #[test]
    fn radius_domain_is_enforced() {
        let f = series(&[0.0, 1.0]);
        assert!(area_dirichlet(&f, 0.0).is_err());
        assert!(area_dirichlet(&f, 1.0).is_err());
        assert!(length_boundary(&f, -0.5, &QuadratureParams::default()).is_err());
    }

    #[test]
    fn schwarz_lower_bounds_for_area_and_length() {
        // pi r^{2n} |a_n|^2 <= A(f,r) and 2 pi r^n |a_n| <= L(f,r) for the
        // image-set quantities, with equality exactly for two-term maps.
        let p = QuadratureParams::with_rel_tol(1e-12);
        let cases: Vec<(PowerSeries, bool)> = vec![
            (series(&[0.0, 1.0, 0.5]), false),
            (series(&[8.0, 12.0, 6.0, 1.0]), false),
            (PowerSeries::monomial(Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0), 4).unwrap(), true),
            (series(&[0.0, 0.0, 1.0]), true),
        ];
        for (f, is_two_term) in cases {
            let n = f.first_active_index().unwrap();
            let an = f.coeff(n).norm();
            for r in [0.3, 0.6, 0.9] {
                let area = mixed_ratio(Kind::Area, &f, r, 0.0, &p).unwrap().value;
                let lower_a = PI * r.powi(2 * n as i32) * an * an;
                assert!(lower_a <= area + 1e-12, "area bound fails for {f} at r={r}");
                let length = length_boundary(&f, r, &p).unwrap().value;
                let lower_l = std::f64::consts::TAU * r.powi(n as i32) * an;
                assert!(lower_l <= length + 1e-12, "length bound fails for {f} at r={r}");
                if is_two_term {
                    assert!((lower_a - area).abs() <= 1e-10 * area.max(1.0));
                    assert!((lower_l - length).abs() <= 1e-10 * length.max(1.0));
                } else {
                    assert!(area - lower_a > 1e-6, "area bound should be strict for {f}");
                    assert!(length - lower_l > 1e-6, "length bound should be strict for {f}");
                }
            }
        }
    }

    #[test]
    fn isoperimetric_inequality_on_grid() {
        // Phi_{A,1} <= Phi_{L,1}^2 for univalent maps.
        let p = QuadratureParams::with_rel_tol(1e-12);
        for f in [series(&[0.0, 1.0, 0.5]), series(&[8.0, 12.0, 6.0, 1.0])] {
            for k in 0..20 {
                let r = 0.04 + 0.05 * k as f64 * 0.95;
                let r = r.min(0.97);
                let pa = mixed_ratio(Kind::Area, &f, r, 1.0, &p).unwrap().value;
                let pl = mixed_ratio(Kind::Length, &f, r, 1.0, &p).unwrap().value;
                assert!(pa <= pl * pl + 1e-9, "isoperimetric fails for {f} at r={r}");
            }
        }
    }
}
