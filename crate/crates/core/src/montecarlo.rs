//! Monte-Carlo solid-angle estimation.
//!
//! Points are drawn uniformly on the unit sphere (`z` uniform in `[−1, 1]`,
//! azimuth uniform in `[0, 2π)`) and tested against a [`Membership`]
//! predicate. The estimate `4π·hits/n` is unbiased with binomial standard
//! error `4π·√(p̂(1 − p̂)/n)`.
//!
//! The random source is xoshiro256++ seeded through SplitMix64. Worker `k`
//! of a parallel run uses the seeded stream advanced by `k` calls to
//! `jump()` (2¹²⁸ steps each), so a run is reproducible for a fixed seed and
//! worker count, and one worker reproduces the single-threaded stream.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::intersect::ConePair;
use crate::polycone::SphericalPolygon;
use crate::sphere::{UnitVector, FULL_SPHERE};
use crate::vec3::Vec3;

/// Name of the random generator, for run metadata.
pub const GENERATOR: &str = "xoshiro256++ (SplitMix64 seeding, jump() substreams)";

/// Smallest sample count accepted by the estimators.
pub const MIN_SAMPLES: u64 = 100;

/// Deterministic inside/outside test for points on the unit sphere.
pub trait Membership: Sync {
    fn contains(&self, p: &UnitVector) -> bool;
}

impl<F> Membership for F
where
    F: Fn(&UnitVector) -> bool + Sync,
{
    fn contains(&self, p: &UnitVector) -> bool {
        self(p)
    }
}

/// Every point of the sphere.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullSphere;

impl Membership for FullSphere {
    fn contains(&self, _: &UnitVector) -> bool {
        true
    }
}

/// Points inside a right circular cone: `p · axis ≥ cos θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapMembership {
    axis: UnitVector,
    cos_theta: f64,
}

impl CapMembership {
    pub fn new(axis: UnitVector, theta: f64) -> Self {
        Self {
            axis,
            cos_theta: theta.cos(),
        }
    }
}

impl Membership for CapMembership {
    #[inline]
    fn contains(&self, p: &UnitVector) -> bool {
        p.dot(&self.axis) >= self.cos_theta
    }
}

/// Points inside both cones of a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapIntersection {
    pub first: CapMembership,
    pub second: CapMembership,
}

impl CapIntersection {
    pub fn new(first: CapMembership, second: CapMembership) -> Self {
        Self { first, second }
    }

    /// First axis along +Z, second tilted by `alpha` towards +X.
    pub fn from_pair(pair: &ConePair) -> Self {
        let (sa, ca) = pair.alpha.sin_cos();
        let second_axis = UnitVector::from_direction(Vec3::new(sa, 0.0, ca)).expect("unit by construction");
        Self {
            first: CapMembership::new(UnitVector::Z, pair.theta1),
            second: CapMembership::new(second_axis, pair.theta2),
        }
    }
}

impl Membership for CapIntersection {
    #[inline]
    fn contains(&self, p: &UnitVector) -> bool {
        self.first.contains(p) && self.second.contains(p)
    }
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    start: Vec3,
    /// Unit normal of the edge's great circle, pointing to the left (inside).
    normal: Vec3,
    /// `normal × start` and `end × normal`: both non-negative exactly on the
    /// lune spanned by the edge.
    start_wall: Vec3,
    end_wall: Vec3,
}

/// Points inside a simple spherical polygon (region to the left of the
/// counterclockwise boundary).
///
/// The nearest boundary feature decides: if it is the interior of an edge,
/// the side of that edge's great circle; if it is a vertex, the sides of both
/// incident edges (both at a convex vertex, either at a reflex one). This
/// holds for any simple polygon, including ones larger than a hemisphere.
/// Points within rounding distance of the boundary are resolved arbitrarily.
#[derive(Debug, Clone)]
pub struct PolygonMembership {
    edges: Vec<Edge>,
    convex: Vec<bool>,
}

impl PolygonMembership {
    pub fn new(polygon: &SphericalPolygon) -> Self {
        let v = polygon.vertices();
        let n = v.len();
        let edges = (0..n)
            .map(|i| {
                let a = v[i].as_vec3();
                let b = v[(i + 1) % n].as_vec3();
                let c = a.cross(b);
                let normal = c / c.norm();
                Edge {
                    start: a,
                    normal,
                    start_wall: normal.cross(a),
                    end_wall: b.cross(normal),
                }
            })
            .collect();
        let convex = (0..n)
            .map(|j| {
                let prev = v[(j + n - 1) % n].as_vec3();
                prev.dot(v[j].cross(&v[(j + 1) % n])) >= 0.0
            })
            .collect();
        Self { edges, convex }
    }
}

impl Membership for PolygonMembership {
    fn contains(&self, p: &UnitVector) -> bool {
        let p = p.as_vec3();
        let n = self.edges.len();
        // Largest cosine of the angular distance wins.
        let mut best_cos = f64::NEG_INFINITY;
        let mut inside = false;
        for (i, e) in self.edges.iter().enumerate() {
            let side = p.dot(e.normal);
            if p.dot(e.start_wall) >= 0.0 && p.dot(e.end_wall) >= 0.0 {
                let cos = (1.0 - side * side).max(0.0).sqrt();
                if cos > best_cos {
                    best_cos = cos;
                    inside = side > 0.0;
                }
            }
            let cos = p.dot(e.start);
            if cos > best_cos {
                best_cos = cos;
                let left_in = p.dot(self.edges[(i + n - 1) % n].normal) > 0.0;
                let left_out = side > 0.0;
                inside = if self.convex[i] {
                    left_in && left_out
                } else {
                    left_in || left_out
                };
            }
        }
        inside
    }
}

/// Monte-Carlo estimate of a solid angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub omega_hat: f64,
    pub stderr: f64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
    pub workers: usize,
}

impl MonteCarloEstimate {
    fn from_tally(hits: u64, samples: u64, seed: u64, workers: usize) -> Self {
        let p = hits as f64 / samples as f64;
        Self {
            omega_hat: FULL_SPHERE * p,
            stderr: FULL_SPHERE * (p * (1.0 - p) / samples as f64).sqrt(),
            samples,
            hits,
            seed,
            workers,
        }
    }

    /// `|omega_hat − exact| ≤ k·stderr`.
    pub fn agrees_with(&self, exact: f64, k: f64) -> bool {
        (self.omega_hat - exact).abs() <= k * self.stderr
    }
}

/// Uniform points on the unit sphere from a seeded stream.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    rng: Xoshiro256PlusPlus,
    remaining: u64,
}

impl SphereSampler {
    fn from_rng(rng: Xoshiro256PlusPlus, count: u64) -> Self {
        Self { rng, remaining: count }
    }
}

impl Iterator for SphereSampler {
    type Item = UnitVector;

    fn next(&mut self) -> Option<UnitVector> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(uniform_point(&mut self.rng))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// Draws one uniform point on the sphere.
pub fn uniform_point<R: Rng + ?Sized>(rng: &mut R) -> UnitVector {
    let z = 2.0 * rng.random::<f64>() - 1.0;
    let phi = TAU * rng.random::<f64>();
    let r = (1.0 - z * z).max(0.0).sqrt();
    let (s, c) = phi.sin_cos();
    UnitVector::from_direction(Vec3::new(r * c, r * s, z)).expect("nonzero by construction")
}

/// `n` reproducible uniform points on the sphere.
pub fn sample_sphere(n: u64, seed: u64) -> SphereSampler {
    SphereSampler::from_rng(Xoshiro256PlusPlus::seed_from_u64(seed), n)
}

fn substream(seed: u64, worker: usize) -> Xoshiro256PlusPlus {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    for _ in 0..worker {
        rng.jump();
    }
    rng
}

/// Single-threaded estimate from `n` samples.
pub fn estimate<M: Membership + ?Sized>(membership: &M, n: u64, seed: u64) -> Result<MonteCarloEstimate> {
    estimate_parallel(membership, n, seed, 1)
}

/// Estimate with `n` samples split across `workers` threads, each on its own
/// substream. Reproducible for a fixed `(seed, workers)`.
pub fn estimate_parallel<M: Membership + ?Sized>(
    membership: &M,
    n: u64,
    seed: u64,
    workers: usize,
) -> Result<MonteCarloEstimate> {
    if n < MIN_SAMPLES {
        return Err(Error::Domain {
            name: "samples",
            value: n as f64,
            domain: "≥ 100",
        });
    }
    let workers = workers.max(1);
    let share = |k: usize| n / workers as u64 + u64::from((k as u64) < n % workers as u64);
    let tally = |k: usize| {
        SphereSampler::from_rng(substream(seed, k), share(k))
            .filter(|p| membership.contains(p))
            .count() as u64
    };
    let hits = if workers == 1 {
        tally(0)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|k| scope.spawn(move || tally(k))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
        })
    };
    Ok(MonteCarloEstimate::from_tally(hits, n, seed, workers))
}
