//! Seeded random generators for points and simplices, shared by the tests,
//! the property suites and the CLI.

use nalgebra::DVector;
use rand::Rng;

use crate::lorentz::{gram, LorentzVector};
use crate::models::{from_klein, BoundaryPoint, ExtendedPoint, KleinPoint};
use crate::simplex::{incentred_model, regular_simplex, Simplex};

/// Uniform direction on the unit sphere of R^n (rejection from the cube).
pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0f64));
        let norm = v.norm();
        if norm > 1e-3 && norm <= 1.0 {
            return v / norm;
        }
    }
}

pub fn random_boundary_point(rng: &mut impl Rng, n: usize) -> ExtendedPoint {
    let d = random_unit_vector(rng, n);
    let mut lift = LorentzVector::zeros(n + 1);
    lift.coords[0] = 1.0;
    for i in 0..n {
        lift.coords[i + 1] = d[i];
    }
    ExtendedPoint::Boundary(BoundaryPoint { lift })
}

/// Interior point at Klein radius up to `max_radius`.
pub fn random_interior_point(rng: &mut impl Rng, n: usize, max_radius: f64) -> ExtendedPoint {
    let d = random_unit_vector(rng, n);
    let r = rng.gen_range(0.0..max_radius);
    from_klein(&KleinPoint { affine: d * r }).expect("radius below 1")
}

/// Mix of interior and boundary points.
pub fn random_extended_points(rng: &mut impl Rng, n: usize, count: usize) -> Vec<ExtendedPoint> {
    (0..count)
        .map(|_| {
            if rng.gen_bool(0.5) {
                random_boundary_point(rng, n)
            } else {
                random_interior_point(rng, n, 0.9)
            }
        })
        .collect()
}

/// A random total simplex; all vertices ideal when `ideal` is set, otherwise
/// a per-vertex mix. Rejects badly conditioned vertex configurations so the
/// crate-wide tolerances stay meaningful.
pub fn random_total_simplex(rng: &mut impl Rng, n: usize, ideal: bool) -> Simplex {
    loop {
        let points: Vec<ExtendedPoint> = (0..=n)
            .map(|_| {
                if ideal || rng.gen_bool(0.3) {
                    random_boundary_point(rng, n)
                } else {
                    random_interior_point(rng, n, 0.85)
                }
            })
            .collect();
        let lifts: Vec<LorentzVector> = points.iter().map(|p| p.lift().clone()).collect();
        let g = gram(&lifts);
        let det = g.determinant();
        let mut scale = 1.0;
        for i in 0..g.nrows() {
            scale *= g.row(i).norm().max(1e-30);
        }
        if (det / scale).abs() < 1e-3 {
            continue;
        }
        if let Ok(s) = Simplex::new(&points) {
            return s;
        }
    }
}

/// Vertex directions of the regular ideal simplex in its incentred chart.
pub fn regular_ideal_directions(n: usize) -> Vec<DVector<f64>> {
    let s = regular_simplex(n, 1.0 / (n as f64 - 1.0)).expect("ideal parameter is valid");
    incentred_model(&s).expect("incentred model of a total simplex").euclidean_vertices
}

/// Regular ideal simplex with each vertex nudged on the sphere by the given
/// Klein scale (tangential perturbation, renormalized).
pub fn perturbed_regular_ideal(rng: &mut impl Rng, n: usize, scale: f64) -> Simplex {
    let dirs = regular_ideal_directions(n);
    loop {
        let points: Vec<ExtendedPoint> = dirs
            .iter()
            .map(|d| {
                let noise = DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0f64)) * scale;
                let mut v = d / d.norm() + noise;
                v /= v.norm();
                let mut lift = LorentzVector::zeros(n + 1);
                lift.coords[0] = 1.0;
                for i in 0..n {
                    lift.coords[i + 1] = v[i];
                }
                ExtendedPoint::Boundary(BoundaryPoint { lift })
            })
            .collect();
        if let Ok(s) = Simplex::new(&points) {
            return s;
        }
    }
}
