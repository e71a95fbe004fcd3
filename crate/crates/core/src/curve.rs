//! Solid angle of cones over closed curves.
//!
//! The cone over a closed curve `L(t)` (apex at the origin) subtends
//!
//! ```text
//! Ω = 2π − Σ δ_i − ∮ s·(L₁ × L₂) / |L₁|² dt
//! ```
//!
//! where `s = L/|L|`, `L₁` and `L₂` are the components of `L′` and `L″`
//! tangential to the sphere at `s`, and `δ_i` are the signed turn angles at
//! the corners of the curve. The integrand is the signed geodesic curvature
//! per unit parameter; it vanishes along great circles and does not depend on
//! the parameterization or on the distance of `L` from the origin.
//!
//! Curves must run counterclockwise as seen from outside around the region
//! whose solid angle is wanted; the opposite direction yields the complement.

use std::cell::RefCell;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::polycone::SphericalPolygon;
use crate::quadrature::{adaptive_simpson, QuadratureConfig};
use crate::sphere::{tangent_turn_angle, SolidAngle, UnitVector};
use crate::vec3::Vec3;

/// Relative offset (in units of the domain length) used to sample one-sided
/// tangents next to a corner.
pub const CORNER_OFFSET: f64 = 1e-7;

/// Closed curve in space given by analytic callbacks.
///
/// The curve is periodic on `domain()`: `position(t0) == position(t1)`.
/// Derivatives may be discontinuous only at the listed corner parameters.
/// Implementations must be safe to call from several threads if the caller
/// evaluates segments concurrently.
pub trait ParametricCurve {
    fn position(&self, t: f64) -> Vec3;
    fn first_derivative(&self, t: f64) -> Vec3;
    fn second_derivative(&self, t: f64) -> Vec3;
    fn domain(&self) -> (f64, f64);

    /// Parameters where the derivatives jump. Defaults to none.
    fn corner_params(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl<C: ParametricCurve + ?Sized> ParametricCurve for &C {
    fn position(&self, t: f64) -> Vec3 {
        (**self).position(t)
    }
    fn first_derivative(&self, t: f64) -> Vec3 {
        (**self).first_derivative(t)
    }
    fn second_derivative(&self, t: f64) -> Vec3 {
        (**self).second_derivative(t)
    }
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn corner_params(&self) -> Vec<f64> {
        (**self).corner_params()
    }
}

/// Circle of polar angle `theta` around +Z, scaled by `radius`, traversed
/// with increasing azimuth `t ∈ [0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleCurve {
    pub theta: f64,
    pub radius: f64,
}

impl CircleCurve {
    pub fn new(theta: f64) -> Self {
        Self { theta, radius: 1.0 }
    }
}

impl ParametricCurve for CircleCurve {
    fn position(&self, t: f64) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = t.sin_cos();
        Vec3::new(st * cp, st * sp, ct) * self.radius
    }

    fn first_derivative(&self, t: f64) -> Vec3 {
        let st = self.theta.sin();
        let (sp, cp) = t.sin_cos();
        Vec3::new(-st * sp, st * cp, 0.0) * self.radius
    }

    fn second_derivative(&self, t: f64) -> Vec3 {
        let st = self.theta.sin();
        let (sp, cp) = t.sin_cos();
        Vec3::new(-st * cp, -st * sp, 0.0) * self.radius
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, TAU)
    }
}

/// Signed geodesic-curvature density `s·(L₁ × L₂) / |L₁|²` at parameter `t`.
///
/// Its magnitude is `|L₁ × L₂| / |L₁|²`; for an arc-length parameterized
/// spherical curve that equals `√(u² − (s·u)²)` with `u` the second
/// derivative. Positive where the curve bends left (counterclockwise seen
/// from outside), zero on great circles.
pub fn integrand_at<C: ParametricCurve + ?Sized>(curve: &C, t: f64) -> Result<f64> {
    let l = curve.position(t);
    let r = l.norm();
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::OriginCrossing { t });
    }
    let s = l / r;
    let d1 = curve.first_derivative(t);
    let l1 = d1.reject_from(s);
    let l1_sq = l1.norm_squared();
    if !l1_sq.is_finite() || !d1.is_finite() || l1_sq == 0.0 || l1_sq <= 1e-24 * d1.norm_squared() {
        return Err(Error::StationaryPoint { t });
    }
    let l2 = curve.second_derivative(t).reject_from(s);
    Ok(s.dot(l1.cross(l2)) / l1_sq)
}

/// Solid angle of the cone over a closed parametric curve.
///
/// Smooth arcs between corners are integrated with adaptive Simpson, each
/// arc receiving an equal share of `quad.tolerance`. Corner turn angles use
/// one-sided tangents sampled at `CORNER_OFFSET · (t1 − t0)` and
/// `2 · CORNER_OFFSET · (t1 − t0)` from the corner, linearly extrapolated to
/// the corner and projected onto the tangent plane there.
pub fn curve_solid_angle<C: ParametricCurve + ?Sized>(curve: &C, quad: &QuadratureConfig) -> Result<SolidAngle> {
    let (t0, t1) = curve.domain();
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Err(Error::InvalidCurve(format!("empty or non-finite domain [{t0}, {t1}]")));
    }
    let period = t1 - t0;
    let start = UnitVector::from_direction(curve.position(t0)).map_err(|_| Error::OriginCrossing { t: t0 })?;
    let end = UnitVector::from_direction(curve.position(t1)).map_err(|_| Error::OriginCrossing { t: t1 })?;
    if start.chord(&end) > 1e-9 {
        return Err(Error::InvalidCurve(format!(
            "curve is not closed: directions at t0 and t1 differ by {:e}",
            start.chord(&end)
        )));
    }

    let corners = normalized_corners(curve.corner_params(), t0, t1)?;

    let mut turning = 0.0;
    for &c in &corners {
        turning += corner_turn(curve, c, t0, period)?;
    }

    // Breakpoints; ends sitting on a corner are pulled inward so the callbacks
    // are never asked for a derivative exactly at a jump.
    let shrink = 64.0 * f64::EPSILON * period.max(t0.abs()).max(t1.abs());
    let mut cuts: Vec<(f64, bool)> = Vec::with_capacity(corners.len() + 2);
    let t0_is_corner = corners.first() == Some(&t0);
    cuts.push((t0, t0_is_corner));
    cuts.extend(corners.iter().filter(|&&c| c > t0).map(|&c| (c, true)));
    cuts.push((t1, t0_is_corner));

    let segments = cuts.len() - 1;
    let seg_tol = quad.tolerance / segments as f64;
    let mut integral = 0.0;
    for w in cuts.windows(2) {
        let (mut lo, lo_corner) = w[0];
        let (mut hi, hi_corner) = w[1];
        if lo_corner {
            lo += shrink;
        }
        if hi_corner {
            hi -= shrink;
        }
        if hi <= lo {
            continue;
        }
        // The first failing evaluation is surfaced after quadrature.
        let failure = RefCell::new(None);
        let f = |t: f64| {
            integrand_at(curve, t).unwrap_or_else(|e| {
                failure.borrow_mut().get_or_insert(e);
                0.0
            })
        };
        let piece = adaptive_simpson(f, lo, hi, seg_tol, quad);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        integral += piece?;
    }

    Ok(SolidAngle::folded(TAU - turning - integral))
}

fn normalized_corners(raw: Vec<f64>, t0: f64, t1: f64) -> Result<Vec<f64>> {
    let mut corners = Vec::with_capacity(raw.len());
    for c in raw {
        if !(t0..=t1).contains(&c) {
            return Err(Error::InvalidCurve(format!(
                "corner parameter {c} outside [{t0}, {t1}]"
            )));
        }
        corners.push(if c == t1 { t0 } else { c });
    }
    corners.sort_by(f64::total_cmp);
    corners.dedup();
    Ok(corners)
}

fn wrap(t: f64, t0: f64, period: f64) -> f64 {
    if t < t0 {
        t + period
    } else if t >= t0 + period {
        t - period
    } else {
        t
    }
}

fn corner_turn<C: ParametricCurve + ?Sized>(curve: &C, c: f64, t0: f64, period: f64) -> Result<f64> {
    let eps = CORNER_OFFSET * period;
    let d = |t: f64| curve.first_derivative(wrap(t, t0, period));
    let tau_minus = d(c - eps) * 2.0 - d(c - 2.0 * eps);
    let tau_plus = d(c + eps) * 2.0 - d(c + 2.0 * eps);
    let s = UnitVector::from_direction(curve.position(c)).map_err(|_| Error::OriginCrossing { t: c })?;
    let s_vec = s.as_vec3();
    tangent_turn_angle(&s, tau_minus.reject_from(s_vec), tau_plus.reject_from(s_vec))
}

/// Closed curve given by dense samples; every sample is treated as a vertex
/// of a spherical polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    samples: Vec<Vec3>,
    corner_flags: Vec<bool>,
}

impl SampledCurve {
    /// Minimum number of samples (a spherical triangle).
    pub const MIN_SAMPLES: usize = 3;

    pub fn new(samples: Vec<Vec3>, corner_flags: Vec<bool>) -> Result<Self> {
        if samples.len() < Self::MIN_SAMPLES {
            return Err(Error::TooFewVertices { count: samples.len() });
        }
        if corner_flags.len() != samples.len() {
            return Err(Error::InvalidCurve(format!(
                "{} corner flags for {} samples",
                corner_flags.len(),
                samples.len()
            )));
        }
        let n = samples.len();
        for i in 0..n {
            if samples[i] == samples[(i + 1) % n] {
                return Err(Error::InvalidCurve(format!("samples {i} and {} coincide", (i + 1) % n)));
            }
        }
        Ok(Self { samples, corner_flags })
    }

    /// Samples with no corner flags set.
    pub fn smooth(samples: Vec<Vec3>) -> Result<Self> {
        let flags = vec![false; samples.len()];
        Self::new(samples, flags)
    }

    /// `n` samples of `curve` at equally spaced parameters; samples at corner
    /// parameters are flagged.
    pub fn from_curve<C: ParametricCurve + ?Sized>(curve: &C, n: usize) -> Result<Self> {
        let (t0, t1) = curve.domain();
        let corners = curve.corner_params();
        let h = (t1 - t0) / n as f64;
        let mut samples = Vec::with_capacity(n);
        let mut flags = Vec::with_capacity(n);
        for k in 0..n {
            let t = t0 + h * k as f64;
            samples.push(curve.position(t));
            flags.push(corners.iter().any(|&c| (c - t).abs() < 0.5 * h));
        }
        Self::new(samples, flags)
    }

    pub fn samples(&self) -> &[Vec3] {
        &self.samples
    }

    pub fn corner_flags(&self) -> &[bool] {
        &self.corner_flags
    }
}

/// Projects the samples onto the sphere and evaluates the resulting polygon.
pub fn sampled_curve_solid_angle(curve: &SampledCurve) -> Result<SolidAngle> {
    let polygon = SphericalPolygon::from_directions(curve.samples.iter().copied())?;
    Ok(polygon.solid_angle())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::spherical_cap_solid_angle;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn circle_integrand_is_cos_theta_per_radian() {
        for theta in [0.1, 0.7, 1.3, 2.2] {
            let c = CircleCurve::new(theta);
            for t in [0.0, 1.0, 4.0] {
                assert!((integrand_at(&c, t).unwrap() - theta.cos()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn equator_integrand_vanishes() {
        let c = CircleCurve::new(FRAC_PI_2);
        assert!(integrand_at(&c, 0.3).unwrap().abs() < 1e-15);
    }

    #[test]
    fn circle_matches_cap_formula() {
        let quad = QuadratureConfig::default();
        for theta in [0.1, 0.5, 1.0, 1.4, 2.5] {
            let got = curve_solid_angle(&CircleCurve::new(theta), &quad).unwrap().value();
            let want = spherical_cap_solid_angle(theta).unwrap().value();
            assert!((got - want).abs() < 1e-9, "theta={theta}: {got} vs {want}");
        }
    }

    #[test]
    fn scaled_circle_is_identical() {
        let quad = QuadratureConfig::default();
        let unit = curve_solid_angle(&CircleCurve::new(0.8), &quad).unwrap().value();
        let big = curve_solid_angle(
            &CircleCurve {
                theta: 0.8,
                radius: 37.5,
            },
            &quad,
        )
        .unwrap()
        .value();
        assert!((unit - big).abs() < 1e-12);
    }

    struct Radial;
    impl ParametricCurve for Radial {
        fn position(&self, t: f64) -> Vec3 {
            Vec3::new(0.0, 0.0, 1.0 + t)
        }
        fn first_derivative(&self, _: f64) -> Vec3 {
            Vec3::new(0.0, 0.0, 1.0)
        }
        fn second_derivative(&self, _: f64) -> Vec3 {
            Vec3::ZERO
        }
        fn domain(&self) -> (f64, f64) {
            (0.0, 1.0)
        }
    }

    #[test]
    fn stationary_and_origin_errors() {
        assert_eq!(integrand_at(&Radial, 0.5), Err(Error::StationaryPoint { t: 0.5 }));
        assert_eq!(
            integrand_at(
                &CircleCurve {
                    theta: 1.0,
                    radius: 0.0
                },
                0.5
            ),
            Err(Error::OriginCrossing { t: 0.5 })
        );
        let quad = QuadratureConfig::default();
        assert!(curve_solid_angle(
            &CircleCurve {
                theta: 1.0,
                radius: 0.0
            },
            &quad
        )
        .is_err());
    }

    #[test]
    fn open_curve_is_rejected() {
        struct Arc;
        impl ParametricCurve for Arc {
            fn position(&self, t: f64) -> Vec3 {
                CircleCurve::new(1.0).position(t)
            }
            fn first_derivative(&self, t: f64) -> Vec3 {
                CircleCurve::new(1.0).first_derivative(t)
            }
            fn second_derivative(&self, t: f64) -> Vec3 {
                CircleCurve::new(1.0).second_derivative(t)
            }
            fn domain(&self) -> (f64, f64) {
                (0.0, PI)
            }
        }
        let quad = QuadratureConfig::default();
        assert!(matches!(curve_solid_angle(&Arc, &quad), Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn sampled_octant_and_cube_face() {
        let oct = SampledCurve::smooth(vec![
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ])
        .unwrap();
        assert!((sampled_curve_solid_angle(&oct).unwrap().value() - FRAC_PI_2).abs() < 1e-15);

        let face = SampledCurve::smooth(vec![
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(-1.0, 1.0, 1.0),
            Vec3::new(-1.0, -1.0, 1.0),
            Vec3::new(1.0, -1.0, 1.0),
        ])
        .unwrap();
        assert!((sampled_curve_solid_angle(&face).unwrap().value() - 2.0 * PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn sampled_curve_validation() {
        assert!(SampledCurve::smooth(vec![Vec3::new(1.0, 0.0, 0.0); 2]).is_err());
        let p = Vec3::new(1.0, 0.0, 0.0);
        assert!(SampledCurve::smooth(vec![p, p, Vec3::new(0.0, 1.0, 0.0)]).is_err());
        assert!(SampledCurve::new(vec![p, Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0)], vec![true]).is_err());
    }

    #[test]
    fn sampled_circle_converges() {
        let want = spherical_cap_solid_angle(1.0).unwrap().value();
        let c = SampledCurve::from_curve(&CircleCurve::new(1.0), 1024).unwrap();
        let got = sampled_curve_solid_angle(&c).unwrap().value();
        assert!((got - want).abs() < 2e-5);
    }
}
