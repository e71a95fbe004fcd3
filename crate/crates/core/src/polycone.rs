//! Solid angle of polyhedral cones.
//!
//! A polyhedral cone is the set of rays through a spherical polygon with
//! great-circle edges. Its solid angle is `2π − Σδ_j`, where `δ_j` is the
//! signed turn angle at vertex `j`. Each turn angle is the argument of the
//! phasor `b_j c_j − a_j + i d_j` built from the corner quantities, so the
//! whole sum is the argument of one running complex product: one arctangent
//! per polygon instead of one per vertex.
//!
//! The principal argument of the product only pins `Σδ_j` modulo 2π, while
//! for a simple polygon the sum can lie anywhere in `(−2π, 2π)`. The running
//! product therefore counts its crossings of the negative real axis
//! ([`WindingProduct`]) so the total is recovered exactly.
//!
//! Vertices must run counterclockwise as seen from outside the sphere around
//! the enclosed region. Reversing the order yields the complementary region.
//! Self-intersecting vertex lists are accepted; the result is then the
//! winding-weighted area folded into `[0, 4π)` and carries no geometric
//! guarantee.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::sphere::{corner_quantities, SolidAngle, UnitVector};
use crate::vec3::{Rotation, Vec3};

/// Consecutive vertices closer than this chord distance are merged.
pub const MERGE_DISTANCE: f64 = 1e-12;

/// Closed polygon on the unit sphere with great-circle edges.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    vertices: Vec<UnitVector>,
}

impl SphericalPolygon {
    /// Builds a polygon, merging coincident neighbours (including the
    /// closing pair) and rejecting antipodal neighbours.
    pub fn new(vertices: Vec<UnitVector>) -> Result<Self> {
        let mut kept: Vec<(usize, UnitVector)> = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.into_iter().enumerate() {
            match kept.last() {
                Some((_, last)) if last.chord(&v) < MERGE_DISTANCE => {}
                _ => kept.push((i, v)),
            }
        }
        while kept.len() > 1 && kept[kept.len() - 1].1.chord(&kept[0].1) < MERGE_DISTANCE {
            kept.pop();
        }
        if kept.len() < 3 {
            return Err(Error::TooFewVertices { count: kept.len() });
        }
        let n = kept.len();
        for j in 0..n {
            let (i0, v0) = kept[j];
            let (i1, v1) = kept[(j + 1) % n];
            if (v0.as_vec3() + v1.as_vec3()).norm() < MERGE_DISTANCE {
                return Err(Error::AntipodalEdge { index: i0, next: i1 });
            }
        }
        Ok(Self {
            vertices: kept.into_iter().map(|(_, v)| v).collect(),
        })
    }

    /// Builds a polygon from arbitrary (nonzero) ray directions.
    pub fn from_directions<I>(directions: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<Vec3>,
    {
        let vertices = directions
            .into_iter()
            .map(|d| UnitVector::from_direction(d.into()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[UnitVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Same boundary traversed the other way; encloses the complement.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    pub fn rotated(&self, rotation: &Rotation) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.rotated(rotation)).collect(),
        }
    }

    /// Same boundary starting at vertex `k`.
    pub fn cycled(&self, k: usize) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(k % self.len());
        Self { vertices }
    }

    pub fn solid_angle(&self) -> SolidAngle {
        polygon_solid_angle(self)
    }
}

/// Running unit-magnitude complex product with an exact count of how often
/// its argument has wrapped past ±π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingProduct {
    pub re: f64,
    pub im: f64,
    pub winding: i64,
}

impl Default for WindingProduct {
    fn default() -> Self {
        Self::new()
    }
}

impl WindingProduct {
    pub fn new() -> Self {
        Self {
            re: 1.0,
            im: 0.0,
            winding: 0,
        }
    }

    /// Principal argument lies in (0, π].
    #[inline]
    fn upper(re: f64, im: f64) -> bool {
        im > 0.0 || (im == 0.0 && re < 0.0)
    }

    /// Multiplies by the phasor `re + i·im`, whose principal argument is the
    /// rotation applied. A zero phasor contributes no rotation.
    #[inline]
    pub fn push(&mut self, re: f64, im: f64) {
        let pr = self.re * re - self.im * im;
        let pi = self.re * im + self.im * re;
        let mag = (pr * pr + pi * pi).sqrt();
        if mag == 0.0 {
            return;
        }
        let (nr, ni) = (pr / mag, pi / mag);

        let was_upper = Self::upper(self.re, self.im);
        if was_upper != Self::upper(nr, ni) {
            let through_pi = if re >= 0.0 {
                // Rotation of at most π/2: the chord midpoint tells which
                // half of the real axis was crossed.
                self.re + nr < 0.0
            } else {
                // Rotations beyond π/2 follow the phasor's own direction.
                (im >= 0.0) == was_upper
            };
            if through_pi {
                self.winding += if was_upper { 1 } else { -1 };
            }
        }
        self.re = nr;
        self.im = ni;
    }

    /// Unwrapped sum of all rotations pushed so far.
    pub fn total_argument(&self) -> f64 {
        // Keep −0.0 from turning a principal π into −π.
        let im = if self.im == 0.0 { 0.0 } else { self.im };
        im.atan2(self.re) + TAU * self.winding as f64
    }
}

/// Solid angle of the polyhedral cone through `polygon`, using a single
/// arctangent of the winding-tracked phasor product.
///
/// Each vertex costs three dot products and one cross product: `b_j` is the
/// previous vertex's `c_{j−1}`.
pub fn polygon_solid_angle(polygon: &SphericalPolygon) -> SolidAngle {
    let v = polygon.vertices();
    let n = v.len();
    let mut product = WindingProduct::new();
    let mut b = v[n - 1].dot(&v[0]);
    for j in 0..n {
        let prev = &v[(j + n - 1) % n];
        let curr = &v[j];
        let next = &v[(j + 1) % n];
        let a = prev.dot(next);
        let c = curr.dot(next);
        let d = prev.as_vec3().dot(curr.cross(next));
        product.push(b * c - a, d);
        b = c;
    }
    SolidAngle::folded(TAU - product.total_argument())
}

/// Baseline: one two-argument arctangent per vertex, summed with compensation.
pub fn polygon_solid_angle_naive(polygon: &SphericalPolygon) -> SolidAngle {
    let v = polygon.vertices();
    let n = v.len();
    let mut sum = 0.0;
    let mut carry = 0.0;
    for j in 0..n {
        let q = corner_quantities(&v[(j + n - 1) % n], &v[j], &v[(j + 1) % n]);
        let (re, im) = q.turn_phasor();
        let delta = im.atan2(re);
        // Neumaier summation
        let t = sum + delta;
        if sum.abs() >= delta.abs() {
            carry += (sum - t) + delta;
        } else {
            carry += (delta - t) + sum;
        }
        sum = t;
    }
    SolidAngle::folded(TAU - (sum + carry))
}

/// Solid angle of the spherical triangle `(v1, v2, v3)` from
/// `tan(Ω/2) = d / (1 + a + b + c)`.
///
/// Counterclockwise triangles (positive triple product) give the small
/// region; clockwise ones give its complement.
pub fn triangle_solid_angle(v1: &UnitVector, v2: &UnitVector, v3: &UnitVector) -> Result<SolidAngle> {
    let d = v1.as_vec3().dot(v2.cross(v3));
    let den = 1.0 + v1.dot(v2) + v2.dot(v3) + v3.dot(v1);
    if d == 0.0 && den <= 0.0 {
        return Err(Error::DegenerateTriangle);
    }
    let half = d.atan2(den);
    debug_assert!(half > -PI && half <= PI);
    Ok(SolidAngle::folded(2.0 * half))
}
