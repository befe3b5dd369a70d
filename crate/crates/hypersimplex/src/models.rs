//! The three models of H^n and its compactification, with the metric
//! primitives of the hyperboloid and Cayley-Klein pictures.
//!
//! Points of H^n are unit timelike lifts on the upper hyperboloid, boundary
//! points are height-normalized null lifts, hyperplanes are spacelike polars.
//! Distances, the configuration trichotomy for pairs of hyperplanes,
//! bisectors, orthogonal projections and the cross-ratio distance all reduce
//! to the scalar product.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::lorentz::{lorentz_form, LorentzVector, EPS_GRAM};

pub use crate::lorentz::HalfSpace;

/// Trichotomy tolerance around |<u,v>| = 1.
pub const EPS_CFG: f64 = 1e-9;

/// Clamping slack: inputs to acosh/asinh may sit below their domain by at
/// most this much before we call it a logic error rather than rounding.
const CLAMP_SLACK: f64 = 1e-7;

pub(crate) fn acosh_clamped(x: f64) -> f64 {
    assert!(
        x > 1.0 - CLAMP_SLACK,
        "acosh argument {x} below domain beyond rounding slack"
    );
    x.max(1.0).acosh()
}

/// A point of H^n: lift on the upper unit hyperboloid, `<p,p> = 1`, p0 >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint {
    pub lift: LorentzVector,
}

impl HPoint {
    /// Normalizes a positive-norm, positive-height vector onto the
    /// hyperboloid.
    pub fn from_lift(v: &LorentzVector) -> Result<Self> {
        let n2 = v.norm2();
        if n2 <= 0.0 {
            return Err(Error::InvalidInput(format!("lift has non-positive norm {n2}")));
        }
        if v.height() <= 0.0 {
            return Err(Error::InvalidInput("lift has non-positive height".into()));
        }
        Ok(Self { lift: v.scale(1.0 / n2.sqrt()) })
    }

    /// The point o = (1, 0, ..., 0).
    pub fn origin(n: usize) -> Self {
        let mut v = LorentzVector::zeros(n + 1);
        v.coords[0] = 1.0;
        Self { lift: v }
    }

    pub fn space_dim(&self) -> usize {
        self.lift.space_dim()
    }
}

/// A boundary point of H^n: null lift normalized to height 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub lift: LorentzVector,
}

impl BoundaryPoint {
    pub fn from_lift(v: &LorentzVector) -> Result<Self> {
        let n2 = v.norm2();
        let scale = v.euclidean_norm().powi(2).max(1.0);
        if n2.abs() > EPS_GRAM * scale {
            return Err(Error::InvalidInput(format!("lift is not null: norm {n2}")));
        }
        if v.height() <= 0.0 {
            return Err(Error::InvalidInput("null lift has non-positive height".into()));
        }
        Ok(Self { lift: v.scale(1.0 / v.height()) })
    }
}

/// A point of the compactified space H^n u dH^n.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedPoint {
    Interior(HPoint),
    Boundary(BoundaryPoint),
}

impl ExtendedPoint {
    pub fn lift(&self) -> &LorentzVector {
        match self {
            ExtendedPoint::Interior(p) => &p.lift,
            ExtendedPoint::Boundary(p) => &p.lift,
        }
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self, ExtendedPoint::Boundary(_))
    }
}

/// Relative position of two geodesic hyperplanes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HyperplaneConfig {
    /// Meet in H^n at the given dihedral angle (between co-oriented normals).
    Intersecting { angle: f64 },
    /// Disjoint with exactly one common asymptotic direction.
    Asymptotic,
    /// Separated by a positive distance along their common orthogeodesic.
    Ultraparallel { distance: f64 },
}

/// Affine chart coordinates at unit height; inside the unit ball for points
/// of H^n, on the unit sphere for boundary points.
#[derive(Debug, Clone, PartialEq)]
pub struct KleinPoint {
    pub affine: DVector<f64>,
}

impl KleinPoint {
    pub fn new(affine: Vec<f64>) -> Self {
        Self { affine: DVector::from_vec(affine) }
    }

    pub fn norm(&self) -> f64 {
        self.affine.norm()
    }
}

/// `d(x,y) = acosh(<x|y>)`.
pub fn dist_point_point(x: &HPoint, y: &HPoint) -> f64 {
    acosh_clamped(lorentz_form(&x.lift, &y.lift))
}

/// `sinh d(x, H_u) = |<x,u>|`; the sign locates x relative to the half-space
/// (0 when x lies on H_u).
pub fn dist_point_hyperplane(x: &HPoint, h: &HalfSpace) -> (f64, i8) {
    let v = h.eval(&x.lift);
    let sign = if v.abs() < EPS_GRAM {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    };
    (v.abs().asinh(), sign)
}

/// The configuration trichotomy on `|<u,v>|` vs 1.
pub fn classify_hyperplanes(hu: &HalfSpace, hv: &HalfSpace) -> Result<HyperplaneConfig> {
    let c = lorentz_form(&hu.u, &hv.u);
    if (c.abs() - 1.0).abs() < EPS_CFG {
        let diff = hu.u.sub(&hv.u).euclidean_norm().min(hu.u.add(&hv.u).euclidean_norm());
        if diff < 1e-7 * hu.u.euclidean_norm() {
            return Err(Error::SameHyperplane);
        }
        return Ok(HyperplaneConfig::Asymptotic);
    }
    if c.abs() < 1.0 {
        Ok(HyperplaneConfig::Intersecting { angle: c.acos() })
    } else {
        Ok(HyperplaneConfig::Ultraparallel { distance: c.abs().acosh() })
    }
}

/// Bisecting hyperplane(s): the polar of `u - sign(<u,v>) v` always, and of
/// `u + sign(<u,v>) v` when the pair intersects.
pub fn bisectors(hu: &HalfSpace, hv: &HalfSpace) -> Result<Vec<HalfSpace>> {
    let cfg = classify_hyperplanes(hu, hv)?;
    let c = lorentz_form(&hu.u, &hv.u);
    let sigma = if c >= 0.0 { 1.0 } else { -1.0 };
    let w = hu.u.axpy(-sigma, &hv.u);
    let mut out = vec![crate::lorentz::polar(&w, 1.0)?];
    if let HyperplaneConfig::Intersecting { .. } = cfg {
        let w2 = hu.u.axpy(sigma, &hv.u);
        out.push(crate::lorentz::polar(&w2, 1.0)?);
    }
    Ok(out)
}

/// Klein chart of a point of H^n: divide the lift by its height.
pub fn to_klein(p: &ExtendedPoint) -> KleinPoint {
    let lift = p.lift();
    let h = lift.height();
    let n = lift.space_dim();
    KleinPoint { affine: DVector::from_fn(n, |i, _| lift.coords[i + 1] / h) }
}

pub fn hpoint_to_klein(p: &HPoint) -> KleinPoint {
    to_klein(&ExtendedPoint::Interior(p.clone()))
}

/// Lift a Klein-chart point: interior points to the hyperboloid, unit-norm
/// points to height-1 null lifts.
pub fn from_klein(k: &KleinPoint) -> Result<ExtendedPoint> {
    let r = k.norm();
    if r > 1.0 + EPS_GRAM {
        return Err(Error::OutsideBall(r));
    }
    let n = k.affine.len();
    let mut lift = LorentzVector::zeros(n + 1);
    lift.coords[0] = 1.0;
    for i in 0..n {
        lift.coords[i + 1] = k.affine[i];
    }
    if r >= 1.0 - EPS_GRAM {
        // Renormalize onto the sphere so the lift is exactly null.
        for i in 0..n {
            lift.coords[i + 1] /= r;
        }
        Ok(ExtendedPoint::Boundary(BoundaryPoint { lift }))
    } else {
        let s = 1.0 / (1.0 - r * r).sqrt();
        Ok(ExtendedPoint::Interior(HPoint { lift: lift.scale(s) }))
    }
}

/// The polar point (outside the ball) of a hyperplane not through the
/// origin, in the Klein chart. Used by the figure emitter.
pub fn polar_of_halfspace_klein(h: &HalfSpace) -> Option<KleinPoint> {
    let height = h.u.height();
    if height.abs() < 1e-12 {
        return None;
    }
    let n = h.u.space_dim();
    Some(KleinPoint { affine: DVector::from_fn(n, |i, _| h.u.coords[i + 1] / height) })
}

/// Cross-ratio distance: find the ideal endpoints of the chord through x, y
/// in the Klein chart and evaluate `1/2 log|[x',x,y,y']|` in the 1D affine
/// coordinate along the line.
pub fn cross_ratio_distance(x: &HPoint, y: &HPoint) -> Result<f64> {
    let xk = hpoint_to_klein(x).affine;
    let yk = hpoint_to_klein(y).affine;
    let d = &yk - &xk;
    let a = d.norm_squared();
    if a < 1e-28 {
        return Err(Error::DegenerateInput("coincident points".into()));
    }
    let b = 2.0 * xk.dot(&d);
    let c = xk.norm_squared() - 1.0;
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    // Roots of a t^2 + b t + c = 0: t_minus <= 0 <= 1 <= t_plus since the
    // segment [x,y] = t in [0,1] lies inside the ball.
    let t_minus = (-b - disc) / (2.0 * a);
    let t_plus = (-b + disc) / (2.0 * a);
    // Quadruple (x', x, y, y') at 1D coordinates (t_minus, 0, 1, t_plus).
    let cr = ((t_minus - 1.0) * (0.0 - t_plus)) / ((t_minus - 0.0) * (1.0 - t_plus));
    Ok(0.5 * cr.abs().ln())
}

/// Orthogonal projection of x on H_u: normalize `x + <x,u> u`.
pub fn project_to_hyperplane(x: &HPoint, h: &HalfSpace) -> HPoint {
    let c = lorentz_form(&x.lift, &h.u);
    let foot = x.lift.axpy(c, &h.u);
    HPoint::from_lift(&foot).expect("projection of an interior point stays interior")
}

/// Distance to the complete geodesic with ideal endpoints a, b:
/// `cosh d = sqrt(2 <p,a><p,b> / <a,b>)`.
pub fn dist_point_to_geodesic(p: &HPoint, a: &BoundaryPoint, b: &BoundaryPoint) -> Result<f64> {
    let ab = lorentz_form(&a.lift, &b.lift);
    if ab <= 0.0 {
        return Err(Error::DegenerateInput("coincident boundary points".into()));
    }
    let pa = lorentz_form(&p.lift, &a.lift);
    let pb = lorentz_form(&p.lift, &b.lift);
    Ok(acosh_clamped((2.0 * pa * pb / ab).max(0.0).sqrt()))
}
