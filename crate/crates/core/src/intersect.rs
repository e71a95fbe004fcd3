//! Solid angle of the intersection of two right circular cones sharing an apex.
//!
//! The boundary circles of the two caps meet in two points; the great circle
//! through them splits the intersection (a lens) into one cap segment per
//! cone. A segment of a cap with apex half-angle `θ`, cut by a plane through
//! the centre at angle `γ` from the cone axis, subtends
//!
//! ```text
//! Ω(θ, γ) = 2(β − φ cos θ),   cos φ = tan γ / tan θ,   cos β = sin γ / sin θ
//! ```
//!
//! with `φ` the half-angle of the circle arc and `β` the angle between the
//! circle and the great circle at the intersection points. The plane angle of
//! the first cone follows from `tan γ₁ = t_y / t_x` with
//! `t_y = cos θ₂ − cos α cos θ₁` and `t_x = sin α cos θ₁`.
//!
//! [`cones_intersection`] applies a ladder of special cases before the
//! general formula, in this order: inverted cones (`θ > π/2`), co-directed
//! axes, counter-directed axes, two hemispheres, one hemisphere, a narrow
//! cone, and finally the general case.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::sphere::{cap_area, SolidAngle, FULL_SPHERE};

/// Two right circular cones with apex half-angles `theta1`, `theta2` and
/// angle `alpha` between their axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePair {
    pub theta1: f64,
    pub theta2: f64,
    pub alpha: f64,
}

impl ConePair {
    pub fn new(theta1: f64, theta2: f64, alpha: f64) -> Result<Self> {
        for (name, theta) in [("theta1", theta1), ("theta2", theta2)] {
            if !(theta > 0.0 && theta < PI) {
                return Err(Error::Domain {
                    name,
                    value: theta,
                    domain: "(0, π)",
                });
            }
        }
        if !(0.0..=PI).contains(&alpha) {
            return Err(Error::Domain {
                name: "alpha",
                value: alpha,
                domain: "[0, π]",
            });
        }
        Ok(Self { theta1, theta2, alpha })
    }

    pub fn swapped(&self) -> Self {
        Self {
            theta1: self.theta2,
            theta2: self.theta1,
            alpha: self.alpha,
        }
    }

    /// Solid angle of the first cone.
    pub fn omega1(&self) -> f64 {
        cap_area(self.theta1)
    }

    /// Solid angle of the second cone.
    pub fn omega2(&self) -> f64 {
        cap_area(self.theta2)
    }
}

/// Thresholds for the special cases of [`cones_intersection_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderConfig {
    /// Axes closer than this to parallel or anti-parallel (radians).
    pub eps_alpha: f64,
    /// Half-angles within this of π/2 count as hemispheres.
    pub eps_hemisphere: f64,
    /// Half-angles at or below this count as narrow cones.
    pub eps_narrow: f64,
}

impl Default for LadderConfig {
    fn default() -> Self {
        Self {
            eps_alpha: 1e-9,
            eps_hemisphere: 1e-7,
            eps_narrow: 1e-5,
        }
    }
}

/// Angles describing one cap segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentParams {
    /// Apex half-angle of the cone.
    pub theta: f64,
    /// Angle between the cutting plane and the cone axis.
    pub gamma: f64,
    /// Half-angle at the circle's centre between the intersection points.
    pub phi: f64,
    /// Angle between the circle and the great circle at an intersection point.
    pub beta: f64,
}

impl SegmentParams {
    /// `2(β − φ cos θ)`.
    pub fn solid_angle(&self) -> f64 {
        2.0 * (self.beta - self.phi * self.theta.cos())
    }

    /// `cos φ cos γ − cos β cos θ`, zero for a consistent segment.
    pub fn identity_residual(&self) -> f64 {
        self.phi.cos() * self.gamma.cos() - self.beta.cos() * self.theta.cos()
    }
}

/// The two intermediate values from which the plane angle is extracted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneAngleIntermediates {
    pub t_y: f64,
    pub t_x: f64,
}

impl PlaneAngleIntermediates {
    /// Intermediates for the first cone of `pair`; swap the pair for the second.
    pub fn new(pair: &ConePair) -> Self {
        let (sa, ca) = pair.alpha.sin_cos();
        let c1 = pair.theta1.cos();
        Self {
            t_y: pair.theta2.cos() - ca * c1,
            t_x: sa * c1,
        }
    }

    pub fn gamma(&self) -> f64 {
        self.t_y.atan2(self.t_x)
    }
}

/// Which rule produced an intersection value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// The final value came through at least one complement substitution;
    /// the inner evaluation's rule is reported alongside.
    Inverted(InnerBranch),
    Direct(InnerBranch),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerBranch {
    CoDirected,
    CounterDirected,
    TwoHemispheres,
    OneHemisphere,
    NarrowCone,
    /// General branch, one cone entirely inside the other.
    Contained,
    /// General branch, cones do not overlap.
    Disjoint,
    /// General branch, the two cap segments summed.
    Lens,
}

impl Branch {
    pub fn inner(&self) -> InnerBranch {
        match *self {
            Branch::Inverted(b) | Branch::Direct(b) => b,
        }
    }
}

/// Result of [`cones_intersection_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intersection {
    pub omega: SolidAngle,
    pub branch: Branch,
    /// Segment parameters of both cones when the lens formula was used.
    pub segments: Option<[SegmentParams; 2]>,
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// Segment angles for a cap of half-angle `theta` cut at plane angle `gamma`.
/// `gamma` outside `[−θ, θ]` is clamped: the plane then misses the cap.
pub fn segment_params(theta: f64, gamma: f64) -> Result<SegmentParams> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::Domain {
            name: "theta",
            value: theta,
            domain: "(0, π/2)",
        });
    }
    if gamma.is_nan() {
        return Err(Error::Domain {
            name: "gamma",
            value: gamma,
            domain: "[−θ, θ]",
        });
    }
    let gamma = gamma.clamp(-theta, theta);
    let phi = clamp_unit(gamma.tan() / theta.tan()).acos();
    let beta = clamp_unit(gamma.sin() / theta.sin()).acos();
    Ok(SegmentParams {
        theta,
        gamma,
        phi,
        beta,
    })
}

/// Solid angle of the part of a cap (half-angle `theta`) lying beyond a plane
/// through the sphere centre at angle `gamma` from the axis.
///
/// `gamma = θ` gives 0 (tangent plane), `gamma = 0` half the cap and
/// `gamma = −θ` the whole cap.
pub fn segment_solid_angle(theta: f64, gamma: f64) -> Result<SolidAngle> {
    let p = segment_params(theta, gamma)?;
    Ok(SolidAngle::clamped(p.solid_angle().clamp(0.0, cap_area(theta))))
}

/// Plane angles `(γ₁, γ₂)` of both cones; `γ₁ + γ₂ = α`.
pub fn plane_angle(pair: &ConePair) -> Result<(f64, f64)> {
    if !(pair.alpha > 0.0 && pair.alpha < PI) {
        return Err(Error::Domain {
            name: "alpha",
            value: pair.alpha,
            domain: "(0, π)",
        });
    }
    for (name, theta) in [("theta1", pair.theta1), ("theta2", pair.theta2)] {
        if !(theta > 0.0 && theta < FRAC_PI_2) {
            return Err(Error::Domain {
                name,
                value: theta,
                domain: "(0, π/2)",
            });
        }
    }
    Ok((
        PlaneAngleIntermediates::new(pair).gamma(),
        PlaneAngleIntermediates::new(&pair.swapped()).gamma(),
    ))
}

/// Solid angle of the intersection of two cones with default thresholds.
pub fn cones_intersection(pair: &ConePair) -> Result<SolidAngle> {
    Ok(cones_intersection_with(pair, &LadderConfig::default())?.omega)
}

/// Solid angle of the intersection, reporting the rule that was applied.
pub fn cones_intersection_with(pair: &ConePair, config: &LadderConfig) -> Result<Intersection> {
    let pair = ConePair::new(pair.theta1, pair.theta2, pair.alpha)?;
    let (omega, inverted, inner, segments) = evaluate(&pair, config)?;
    let bound = pair.omega1().min(pair.omega2());
    Ok(Intersection {
        omega: SolidAngle::clamped(omega.clamp(0.0, bound)),
        branch: if inverted {
            Branch::Inverted(inner)
        } else {
            Branch::Direct(inner)
        },
        segments,
    })
}

type Evaluation = (f64, bool, InnerBranch, Option<[SegmentParams; 2]>);

fn evaluate(pair: &ConePair, config: &LadderConfig) -> Result<Evaluation> {
    let ConePair { theta1, theta2, alpha } = *pair;

    // Replace an obtuse cone by its complement (the opposite cone).
    if theta1 > FRAC_PI_2 {
        let flipped = ConePair::new(PI - theta1, theta2, PI - alpha)?;
        let (inner, _, branch, segments) = evaluate(&flipped, config)?;
        return Ok((pair.omega2() - inner, true, branch, segments));
    }
    if theta2 > FRAC_PI_2 {
        let flipped = ConePair::new(theta1, PI - theta2, PI - alpha)?;
        let (inner, _, branch, segments) = evaluate(&flipped, config)?;
        return Ok((pair.omega1() - inner, true, branch, segments));
    }

    let (omega1, omega2) = (pair.omega1(), pair.omega2());
    if alpha <= config.eps_alpha {
        return Ok((co_directed(omega1, omega2), false, InnerBranch::CoDirected, None));
    }
    if alpha >= PI - config.eps_alpha {
        return Ok((
            counter_directed(omega1, omega2),
            false,
            InnerBranch::CounterDirected,
            None,
        ));
    }

    let hemi1 = (theta1 - FRAC_PI_2).abs() <= config.eps_hemisphere;
    let hemi2 = (theta2 - FRAC_PI_2).abs() <= config.eps_hemisphere;
    if hemi1 && hemi2 {
        return Ok((two_hemispheres(alpha), false, InnerBranch::TwoHemispheres, None));
    }
    if hemi1 {
        return Ok((one_hemisphere(theta2, alpha)?, false, InnerBranch::OneHemisphere, None));
    }
    if hemi2 {
        return Ok((one_hemisphere(theta1, alpha)?, false, InnerBranch::OneHemisphere, None));
    }

    if theta1.min(theta2) <= config.eps_narrow {
        let value = if theta1 <= theta2 {
            narrow_cone(theta1, theta2, alpha)
        } else {
            narrow_cone(theta2, theta1, alpha)
        };
        return Ok((value, false, InnerBranch::NarrowCone, None));
    }

    let g = general_intersection(pair)?;
    Ok((g.omega.value(), false, g.branch.inner(), g.segments))
}

/// Co-directed axes: the smaller cone lies inside the larger.
pub fn co_directed(omega1: f64, omega2: f64) -> f64 {
    omega1.min(omega2)
}

/// Counter-directed axes: the overlap of the two caps, if any.
pub fn counter_directed(omega1: f64, omega2: f64) -> f64 {
    (omega1 + omega2 - FULL_SPHERE).max(0.0)
}

/// Two hemispheres whose poles are `alpha` apart: `2(π − α)`.
pub fn two_hemispheres(alpha: f64) -> f64 {
    2.0 * (PI - alpha)
}

/// A hemisphere and a cone of half-angle `theta_other`: the segment of the
/// other cap cut by the hemisphere's boundary plane, `Ω(θ, α − π/2)`.
pub fn one_hemisphere(theta_other: f64, alpha: f64) -> Result<f64> {
    Ok(segment_solid_angle(theta_other, alpha - FRAC_PI_2)?.value())
}

/// Linear approximation for a very narrow cone (`theta_narrow → 0`): the other
/// cone's boundary passes at signed distance `γ = α − θ_other` from the
/// narrow axis and the covered fraction varies linearly across `[−θ, θ]`.
pub fn narrow_cone(theta_narrow: f64, theta_other: f64, alpha: f64) -> f64 {
    let omega = cap_area(theta_narrow);
    let gamma = alpha - theta_other;
    if gamma > theta_narrow {
        0.0
    } else if gamma < -theta_narrow {
        omega
    } else {
        omega * (theta_narrow - gamma) / (2.0 * theta_narrow)
    }
}

/// The general lens formula, without the special-case ladder.
///
/// Requires `α ∈ (0, π)` and both half-angles in `(0, π/2)`. The cosines of
/// `φ` and `β` are clamped to `[−1, 1]`; a cone whose `cos φ` clamps at −1 lies
/// entirely inside the other, and both clamping at +1 means the cones are
/// disjoint.
pub fn general_intersection(pair: &ConePair) -> Result<Intersection> {
    let (gamma1, gamma2) = plane_angle(pair)?;
    let (omega1, omega2) = (pair.omega1(), pair.omega2());

    let raw = |p: &ConePair| {
        let PlaneAngleIntermediates { t_y, t_x } = PlaneAngleIntermediates::new(p);
        let (st, ct) = p.theta1.sin_cos();
        let cos_phi = t_y * ct / (t_x * st);
        let cos_beta = t_y / (st * t_x.hypot(t_y));
        (cos_phi, cos_beta)
    };
    let (cos_phi1, cos_beta1) = raw(pair);
    let (cos_phi2, cos_beta2) = raw(&pair.swapped());

    let direct = |omega: f64, inner: InnerBranch| Intersection {
        omega: SolidAngle::clamped(omega),
        branch: Branch::Direct(inner),
        segments: None,
    };
    if cos_phi1 <= -1.0 || cos_phi2 <= -1.0 {
        return Ok(direct(omega1.min(omega2), InnerBranch::Contained));
    }
    if cos_phi1 >= 1.0 && cos_phi2 >= 1.0 {
        return Ok(direct(0.0, InnerBranch::Disjoint));
    }

    let s1 = SegmentParams {
        theta: pair.theta1,
        gamma: gamma1,
        phi: clamp_unit(cos_phi1).acos(),
        beta: clamp_unit(cos_beta1).acos(),
    };
    let s2 = SegmentParams {
        theta: pair.theta2,
        gamma: gamma2,
        phi: clamp_unit(cos_phi2).acos(),
        beta: clamp_unit(cos_beta2).acos(),
    };
    let omega = s1.solid_angle() + s2.solid_angle();
    Ok(Intersection {
        omega: SolidAngle::clamped(omega.clamp(0.0, omega1.min(omega2))),
        branch: Branch::Direct(InnerBranch::Lens),
        segments: Some([s1, s2]),
    })
}
