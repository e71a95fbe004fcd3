use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use solidangle::montecarlo::{CapMembership, PolygonMembership};
use solidangle::random::{random_convex_polygon, random_rotation, random_star_polygon, random_unit_vector};
use solidangle::{estimate, estimate_parallel, polygon_solid_angle, sample_sphere, Membership, UnitVector};

#[test]
fn random_polygons_agree_with_the_oracle() {
    let mut r = Xoshiro256PlusPlus::seed_from_u64(21);
    for case in 0..20u64 {
        let n = r.random_range(3..=40);
        let p = if case % 4 == 0 {
            let radius = r.random_range(0.2..1.4);
            random_convex_polygon(&mut r, n, radius)
        } else {
            random_star_polygon(&mut r, n, 0.2, 1.4)
        };
        let exact = polygon_solid_angle(&p).value();
        let mc = estimate_parallel(&PolygonMembership::new(&p), 1_000_000, 500 + case, 4).unwrap();
        assert!(
            mc.agrees_with(exact, 4.0),
            "case {case}: {exact} vs {} ± {}",
            mc.omega_hat,
            mc.stderr
        );

        // The reversed polygon covers the rest of the sphere.
        let back = p.reversed();
        let mc = estimate_parallel(&PolygonMembership::new(&back), 200_000, 900 + case, 4).unwrap();
        assert!(mc.agrees_with(polygon_solid_angle(&back).value(), 4.0));
    }
}

#[test]
fn two_sigma_coverage_is_calibrated() {
    let theta = 1.0f64;
    let exact = 2.0 * PI * (1.0 - theta.cos());
    let cap = CapMembership::new(UnitVector::Z, theta);
    let covered = (0..200u64)
        .filter(|&seed| estimate(&cap, 10_000, seed).unwrap().agrees_with(exact, 2.0))
        .count();
    assert!(covered >= 184, "{covered} of 200");
}

#[test]
fn rotated_predicates_change_estimates_only_by_noise() {
    let mut r = Xoshiro256PlusPlus::seed_from_u64(22);
    for seed in 0..5u64 {
        let p = random_star_polygon(&mut r, 12, 0.3, 1.2);
        let rot = random_rotation(&mut r);
        let a = estimate(&PolygonMembership::new(&p), 200_000, seed).unwrap();
        let b = estimate(&PolygonMembership::new(&p.rotated(&rot)), 200_000, seed).unwrap();
        assert!((a.omega_hat - b.omega_hat).abs() < 4.0 * a.stderr.max(b.stderr) * 2f64.sqrt());

        let axis = random_unit_vector(&mut r);
        let c = estimate(&CapMembership::new(axis, 0.8), 200_000, seed).unwrap();
        let d = estimate(&CapMembership::new(axis.rotated(&rot), 0.8), 200_000, seed).unwrap();
        assert!((c.omega_hat - d.omega_hat).abs() < 4.0 * c.stderr.max(d.stderr) * 2f64.sqrt());
    }
}

#[test]
fn polygon_membership_matches_half_spaces_on_convex_polygons() {
    let mut r = Xoshiro256PlusPlus::seed_from_u64(23);
    let mut checked = 0;
    for poly in 0..10u64 {
        let n = r.random_range(3..=12);
        let radius = r.random_range(0.1..1.5);
        let p = random_convex_polygon(&mut r, n, radius);
        let v = p.vertices();
        let normals: Vec<_> = (0..v.len()).map(|j| v[j].cross(&v[(j + 1) % v.len()])).collect();
        let normals: Vec<_> = normals.iter().map(|&m| m / m.norm()).collect();
        let membership = PolygonMembership::new(&p);
        for point in sample_sphere(10_000, poly) {
            let x = point.as_vec3();
            if normals.iter().any(|m| m.dot(x).abs() <= 1e-9) {
                continue;
            }
            let half_space = normals.iter().all(|m| m.dot(x) > 0.0);
            assert_eq!(membership.contains(&point), half_space, "{point:?}");
            checked += 1;
        }
    }
    assert!(checked > 99_000);
}

#[test]
fn worker_count_fixes_the_result() {
    let cap = CapMembership::new(UnitVector::X, 0.7);
    let a = estimate_parallel(&cap, 100_000, 9, 3).unwrap();
    let b = estimate_parallel(&cap, 100_000, 9, 3).unwrap();
    assert_eq!(a.hits, b.hits);
    let single = estimate(&cap, 100_000, 9).unwrap();
    assert_eq!(single, estimate_parallel(&cap, 100_000, 9, 1).unwrap());
}
