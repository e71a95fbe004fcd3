//! Random test geometry: points, rotations and simple spherical polygons.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::montecarlo::uniform_point;
use crate::polycone::SphericalPolygon;
use crate::sphere::UnitVector;
use crate::vec3::{Rotation, Vec3};

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> UnitVector {
    uniform_point(rng)
}

/// Rotation about a uniformly random axis by a uniformly random angle.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation {
    let axis = uniform_point(rng).as_vec3();
    Rotation::about_axis(axis, rng.random_range(0.0..TAU))
}

/// Orthonormal frame `(e1, e2)` with `e1 × e2 = center`.
fn tangent_frame(center: &UnitVector) -> (Vec3, Vec3) {
    let c = center.as_vec3();
    let helper = if c.x.abs() < 0.9 {
        Vec3::new(1.0, 0.0, 0.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    let e1 = helper.reject_from(c);
    let e1 = e1 / e1.norm();
    (e1, c.cross(e1))
}

/// Polygon with vertex `k` at geodesic distance `radii[k]` from `center` and
/// azimuth `azimuths[k]` around it (counterclockwise seen from outside).
///
/// With increasing azimuths, gaps below π and radii below π/2 the polygon is
/// simple and star-shaped around `center`.
pub fn star_polygon(center: &UnitVector, radii: &[f64], azimuths: &[f64]) -> SphericalPolygon {
    let (e1, e2) = tangent_frame(center);
    let c = center.as_vec3();
    let vertices = radii
        .iter()
        .zip(azimuths)
        .map(|(&rho, &phi)| {
            let (sr, cr) = rho.sin_cos();
            let (sp, cp) = phi.sin_cos();
            UnitVector::from_direction(c * cr + (e1 * cp + e2 * sp) * sr).expect("nonzero by construction")
        })
        .collect();
    SphericalPolygon::new(vertices).expect("star polygon is non-degenerate")
}

fn random_azimuths<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let gaps: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..1.0)).collect();
        let total: f64 = gaps.iter().sum();
        if gaps.iter().all(|g| g / total * TAU < 0.95 * PI) {
            let offset = rng.random_range(0.0..TAU);
            let mut acc = offset;
            return gaps
                .iter()
                .map(|g| {
                    let phi = acc;
                    acc += g / total * TAU;
                    phi
                })
                .collect();
        }
    }
}

/// Random simple, star-shaped (generally non-convex) polygon with `n ≥ 3`
/// vertices at geodesic radii in `[min_radius, max_radius]` around a random
/// centre. Requires `max_radius < π/2`.
pub fn random_star_polygon<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    min_radius: f64,
    max_radius: f64,
) -> SphericalPolygon {
    assert!(n >= 3 && min_radius > 0.0 && max_radius < 0.5 * PI && min_radius <= max_radius);
    let center = uniform_point(rng);
    let azimuths = random_azimuths(rng, n);
    let radii: Vec<f64> = (0..n).map(|_| rng.random_range(min_radius..=max_radius)).collect();
    star_polygon(&center, &radii, &azimuths)
}

/// Random convex polygon: `n` vertices on a circle of geodesic radius `radius`.
pub fn random_convex_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize, radius: f64) -> SphericalPolygon {
    assert!(n >= 3 && radius > 0.0 && radius < 0.5 * PI);
    let center = uniform_point(rng);
    let azimuths = random_azimuths(rng, n);
    star_polygon(&center, &vec![radius; n], &azimuths)
}
