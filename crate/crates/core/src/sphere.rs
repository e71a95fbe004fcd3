//! Points on the unit sphere, spherical-triangle corner quantities and the
//! circular-cone closed form.
//!
//! Turn angles follow one sign convention throughout the crate: a boundary
//! traversed counterclockwise as seen from outside the sphere (region on the
//! left) has positive turn angles at convex corners. The sign comes from the
//! triple product with the outward normal.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::vec3::{Rotation, Vec3};

/// Largest norm deviation that [`UnitVector::new`] silently renormalizes.
pub const RENORMALIZE_TOLERANCE: f64 = 1e-6;

/// Full sphere, 4π steradians.
pub const FULL_SPHERE: f64 = 4.0 * PI;

/// Point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector(Vec3);

impl UnitVector {
    pub const X: UnitVector = UnitVector(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVector = UnitVector(Vec3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVector = UnitVector(Vec3::new(0.0, 0.0, 1.0));

    /// Accepts components that are already (nearly) unit length.
    ///
    /// Deviations up to [`RENORMALIZE_TOLERANCE`] are renormalized away; larger
    /// ones are rejected. Use [`UnitVector::from_direction`] for arbitrary rays.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        if !v.is_finite() {
            return Err(Error::ZeroVector);
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > RENORMALIZE_TOLERANCE {
            return Err(Error::NotUnit { norm });
        }
        Ok(UnitVector(v / norm))
    }

    /// Projects any finite nonzero vector onto the sphere.
    pub fn from_direction(v: Vec3) -> Result<Self> {
        let norm = v.norm();
        if !v.is_finite() || norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(UnitVector(v / norm))
    }

    /// Point at polar angle `theta` from +Z and azimuth `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        UnitVector(Vec3::new(st * cp, st * sp, ct))
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.0.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.0.y
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.0.z
    }

    #[inline]
    pub fn as_vec3(&self) -> Vec3 {
        self.0
    }

    #[inline]
    pub fn dot(&self, other: &UnitVector) -> f64 {
        self.0.dot(other.0)
    }

    #[inline]
    pub fn cross(&self, other: &UnitVector) -> Vec3 {
        self.0.cross(other.0)
    }

    /// Chord (straight-line) distance to `other`.
    #[inline]
    pub fn chord(&self, other: &UnitVector) -> f64 {
        (self.0 - other.0).norm()
    }

    /// Great-circle distance to `other`, in radians.
    pub fn angle_to(&self, other: &UnitVector) -> f64 {
        self.cross(other).norm().atan2(self.dot(other))
    }

    #[inline]
    pub fn antipode(&self) -> UnitVector {
        UnitVector(-self.0)
    }

    pub fn rotated(&self, rotation: &Rotation) -> UnitVector {
        let v = rotation.apply(self.0);
        UnitVector(v / v.norm())
    }
}

impl From<UnitVector> for Vec3 {
    fn from(u: UnitVector) -> Vec3 {
        u.0
    }
}

/// Solid angle in steradians, always within `[0, 4π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SolidAngle(f64);

impl SolidAngle {
    pub const ZERO: SolidAngle = SolidAngle(0.0);
    pub const FULL: SolidAngle = SolidAngle(FULL_SPHERE);

    /// Accepts values in `[0, 4π]`, allowing a few ulps of rounding at either end.
    pub fn new(steradians: f64) -> Result<Self> {
        let slack = 8.0 * f64::EPSILON * FULL_SPHERE;
        if !(-slack..=FULL_SPHERE + slack).contains(&steradians) {
            return Err(Error::Domain {
                name: "solid angle",
                value: steradians,
                domain: "[0, 4π]",
            });
        }
        Ok(SolidAngle(steradians.clamp(0.0, FULL_SPHERE)))
    }

    /// Folds a raw value into `[0, 4π)` by at most one shift of 4π, then clamps
    /// the rounding residue.
    pub fn folded(steradians: f64) -> Self {
        let v = if steradians < 0.0 {
            steradians + FULL_SPHERE
        } else if steradians >= FULL_SPHERE {
            steradians - FULL_SPHERE
        } else {
            steradians
        };
        SolidAngle(v.clamp(0.0, FULL_SPHERE))
    }

    pub(crate) fn clamped(steradians: f64) -> Self {
        SolidAngle(steradians.clamp(0.0, FULL_SPHERE))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Fraction of the full sphere.
    pub fn fraction(self) -> f64 {
        self.0 / FULL_SPHERE
    }

    /// Solid angle of the complementary region.
    pub fn complement(self) -> SolidAngle {
        SolidAngle(FULL_SPHERE - self.0)
    }
}

impl fmt::Display for SolidAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Cosines of the sides of the spherical triangle (prev, curr, next) and the
/// signed volume of the parallelepiped they span.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerQuantities {
    /// `prev · next`
    pub a: f64,
    /// `prev · curr`
    pub b: f64,
    /// `curr · next`
    pub c: f64,
    /// `prev · (curr × next)`
    pub d: f64,
}

impl CornerQuantities {
    /// `1 + 2abc − a² − b² − c²`, which equals `d²` for exact unit vectors.
    pub fn gram_determinant(&self) -> f64 {
        let Self { a, b, c, .. } = *self;
        1.0 + 2.0 * a * b * c - a * a - b * b - c * c
    }

    /// Real and imaginary parts of `bc − a + i·d`, whose argument is the turn angle.
    #[inline]
    pub fn turn_phasor(&self) -> (f64, f64) {
        (self.b * self.c - self.a, self.d)
    }
}

pub fn corner_quantities(prev: &UnitVector, curr: &UnitVector, next: &UnitVector) -> CornerQuantities {
    CornerQuantities {
        a: prev.dot(next),
        b: prev.dot(curr),
        c: curr.dot(next),
        d: prev.as_vec3().dot(curr.cross(next)),
    }
}

/// Signed turn angle at the middle vertex of a corner, in `(−π, π]`.
///
/// Fails when either adjacent side has (numerically) zero length, since the
/// direction of that side is then undefined.
pub fn corner_turn_angle(q: &CornerQuantities) -> Result<f64> {
    const SIDE_EPS: f64 = 4.0 * f64::EPSILON;
    if 1.0 - q.b.abs() <= SIDE_EPS || 1.0 - q.c.abs() <= SIDE_EPS {
        return Err(Error::DegenerateSide);
    }
    let (re, im) = q.turn_phasor();
    Ok(im.atan2(re))
}

/// Solid angle of a right circular cone with apex half-angle `theta`: `2π(1 − cos θ)`.
pub fn spherical_cap_solid_angle(theta: f64) -> Result<SolidAngle> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain {
            name: "theta",
            value: theta,
            domain: "[0, π]",
        });
    }
    Ok(SolidAngle::clamped(cap_area(theta)))
}

#[inline]
pub(crate) fn cap_area(theta: f64) -> f64 {
    // 1 − cos θ = 2 sin²(θ/2) avoids cancellation for narrow cones.
    let h = (0.5 * theta).sin();
    4.0 * PI * h * h
}

/// Signed angle between the incoming tangent `tau_minus` and the outgoing
/// tangent `tau_plus` at `point`. Positive for a left (counterclockwise seen
/// from outside) turn; `π` for a cusp.
pub fn tangent_turn_angle(point: &UnitVector, tau_minus: Vec3, tau_plus: Vec3) -> Result<f64> {
    let scale = tau_minus.norm() * tau_plus.norm();
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::ZeroTangent);
    }
    let sine = point.as_vec3().dot(tau_minus.cross(tau_plus));
    Ok(sine.atan2(tau_minus.dot(tau_plus)))
}
