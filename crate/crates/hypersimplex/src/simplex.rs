//! Simplices and their Minkowski duality.
//!
//! A total simplex carries duality-normalized vertex lifts `v_k` and dual
//! lifts `v*_k` (the co-oriented face polars, norm -1) with
//! `<v_k | v*_k> = 1`, so the Gram matrix `G` and dual Gram matrix `G*` are
//! inverse to each other. On top of this sit the regular family, the
//! incenter/inradius, the inscribed dual simplex with its visual Gram
//! matrix, the inradius cosine law, and the incentred Euclidean model.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lorentz::{
    dual_basis, gram, isometry_from_gram, lorentz_form, vectors_from_gram, HalfSpace,
    LorentzVector, EPS_GRAM,
};
use crate::models::{from_klein, ExtendedPoint, HPoint, KleinPoint};

#[derive(Debug, Clone)]
pub struct Simplex {
    /// Duality-normalized vertex lifts in the closed upper cone.
    vertices: Vec<LorentzVector>,
    /// Face polars `v*_k`, norm -1, co-oriented so the simplex is the
    /// intersection of the half-spaces `H^+_{v*_k}`.
    duals: Vec<LorentzVector>,
    gram: DMatrix<f64>,
    dual_gram: DMatrix<f64>,
    ideal: Vec<bool>,
}

impl Simplex {
    /// Builds the Minkowski model of a simplex from `1+n` points of the
    /// compactified space.
    ///
    /// The duals of arbitrary lifts are rescaled to norm -1 and the vertex
    /// lifts rescaled to `<v_k | v*_k> = 1`; this fixes both normalizations
    /// and the co-orientation at once, since `<w_j, d_k> = 0` for `j != k`
    /// and `<w_k, d_k> = 1` by duality.
    pub fn new(points: &[ExtendedPoint]) -> Result<Self> {
        let n = points[0].lift().space_dim();
        if points.len() != n + 1 {
            return Err(Error::NotTotal(format!(
                "need {} vertices in H^{n}, got {}",
                n + 1,
                points.len()
            )));
        }
        let lifts: Vec<LorentzVector> = points.iter().map(|p| p.lift().clone()).collect();
        let raw_duals = dual_basis(&lifts).map_err(|_| {
            Error::NotTotal("vertex lifts are linearly dependent".into())
        })?;
        let mut vertices = Vec::with_capacity(n + 1);
        let mut duals = Vec::with_capacity(n + 1);
        for (w, d) in lifts.iter().zip(&raw_duals) {
            let n2 = d.norm2();
            if n2 >= -EPS_GRAM {
                return Err(Error::NotTotal(format!(
                    "face polar is not spacelike (norm {n2:.3e})"
                )));
            }
            let s = (-n2).sqrt();
            duals.push(d.scale(1.0 / s));
            vertices.push(w.scale(s));
        }
        let g = gram(&vertices);
        let gd = gram(&duals);
        let resid = (&g * &gd - DMatrix::<f64>::identity(n + 1, n + 1))
            .iter()
            .fold(0.0_f64, |a, &b| a.max(b.abs()));
        if resid > 1e-6 {
            return Err(Error::NumericalInconsistency(format!(
                "G(D) G(D*) deviates from identity by {resid:.3e}"
            )));
        }
        Ok(Self {
            vertices,
            duals,
            gram: g,
            dual_gram: gd,
            ideal: points.iter().map(|p| p.is_ideal()).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[LorentzVector] {
        &self.vertices
    }

    pub fn duals(&self) -> &[LorentzVector] {
        &self.duals
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn dual_gram(&self) -> &DMatrix<f64> {
        &self.dual_gram
    }

    pub fn is_ideal_vertex(&self, k: usize) -> bool {
        self.ideal[k]
    }

    pub fn is_ideal(&self) -> bool {
        self.ideal.iter().all(|&b| b)
    }

    /// The co-oriented face hyperplane opposite vertex k.
    pub fn face_halfspace(&self, k: usize) -> HalfSpace {
        HalfSpace { u: self.duals[k].clone() }
    }

    /// Orthogonal projection of `v_k` on the opposite face hyperplane:
    /// `h_k = v_k + v*_k`.
    pub fn altitude_foot(&self, k: usize) -> LorentzVector {
        self.vertices[k].add(&self.duals[k])
    }

    /// Dual Gram entries are cosines of dihedral angles up to the sign
    /// convention owned here: `cos(theta*_ij) = -<v*_i | v*_j>` for i != j.
    pub fn dihedral_cos(&self, i: usize, j: usize) -> f64 {
        -self.dual_gram[(i, j)]
    }

    /// Constant dual Gram structure within `tol`.
    pub fn is_regular(&self, tol: f64) -> bool {
        let k = self.dim() + 1;
        if self.dim() == 1 {
            return true;
        }
        let mut off = Vec::new();
        for i in 0..k {
            if (self.dual_gram[(i, i)] + 1.0).abs() > tol {
                return false;
            }
            for j in (i + 1)..k {
                off.push(self.dual_gram[(i, j)]);
            }
        }
        let mean = off.iter().sum::<f64>() / off.len() as f64;
        off.iter().all(|&c| (c - mean).abs() <= tol)
    }

    /// Barycentric (homogeneous) coordinates of a lift: `<p | v*_k>`.
    pub fn barycentric(&self, p: &LorentzVector) -> Vec<f64> {
        self.duals.iter().map(|d| lorentz_form(p, d)).collect()
    }

    /// The interior point with the given nonnegative weights on the vertex
    /// lifts, normalized to the hyperboloid.
    pub fn point_from_weights(&self, weights: &[f64]) -> Result<HPoint> {
        let mut v = LorentzVector::zeros(self.dim() + 1);
        for (w, vert) in weights.iter().zip(&self.vertices) {
            v = v.axpy(*w, vert);
        }
        HPoint::from_lift(&v)
    }
}

/// Outcome of the dual-Gram characterization of total simplices.
#[derive(Debug, Clone)]
pub struct DualGramDiagnostics {
    pub valid: bool,
    /// First failing condition, when invalid.
    pub failure: Option<String>,
}

/// Characterization of minus dual Gram matrices of total simplices:
/// `A = -M` must have diagonal +1, `det A < 0`, all entries of `A^{-1}`
/// nonpositive, and every diagonal n x n minor of `A` positive definite.
/// Tolerances allow the ideal boundary cases (zero entries in `A^{-1}`).
pub fn validate_dual_gram(m: &DMatrix<f64>) -> DualGramDiagnostics {
    let k = m.nrows();
    let a = -m;
    let tol = EPS_GRAM * a.iter().fold(1.0_f64, |acc, &x| acc.max(x.abs())) * 10.0;
    for i in 0..k {
        if (a[(i, i)] - 1.0).abs() > tol.max(1e-8) {
            return DualGramDiagnostics {
                valid: false,
                failure: Some(format!("diagonal entry {i} of -M is {} != 1", a[(i, i)])),
            };
        }
    }
    let det = a.determinant();
    if det >= 0.0 {
        return DualGramDiagnostics {
            valid: false,
            failure: Some(format!("det(-M) = {det:.6e} is not negative")),
        };
    }
    let inv = match a.clone().try_inverse() {
        Some(inv) => inv,
        None => {
            return DualGramDiagnostics {
                valid: false,
                failure: Some("-M is not invertible".into()),
            }
        }
    };
    for i in 0..k {
        for j in 0..k {
            if inv[(i, j)] > tol.max(1e-8) {
                return DualGramDiagnostics {
                    valid: false,
                    failure: Some(format!(
                        "entry ({i},{j}) of (-M)^(-1) is {:.6e} > 0",
                        inv[(i, j)]
                    )),
                };
            }
        }
    }
    for drop in 0..k {
        let minor = a.clone().remove_row(drop).remove_column(drop);
        let eig = minor.symmetric_eigenvalues();
        let min_eig = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        // Semidefinite within tolerance: ideal vertices make the opposite
        // minor exactly singular.
        if min_eig <= -tol.max(1e-8) {
            return DualGramDiagnostics {
                valid: false,
                failure: Some(format!(
                    "diagonal minor without index {drop} is not positive definite (min eigenvalue {min_eig:.6e})"
                )),
            };
        }
    }
    DualGramDiagnostics { valid: true, failure: None }
}

/// Member of the regular family: dual Gram `c J - (1+c) Id`, valid for
/// `c` in `(1/n, 1/(n-1)]`, ideal exactly at the right endpoint.
pub fn regular_simplex(n: usize, c: f64) -> Result<Simplex> {
    assert!(n >= 1);
    let k = n + 1;
    let dual_gram = DMatrix::from_fn(k, k, |i, j| if i == j { -1.0 } else { c });
    let diag = validate_dual_gram(&dual_gram);
    if !diag.valid {
        return Err(Error::InvalidParameter(format!(
            "c = {c} is outside (1/{n}, 1/{}]: {}",
            n.max(2) - 1,
            diag.failure.unwrap_or_default()
        )));
    }
    if n >= 2 && c > 1.0 / (n as f64 - 1.0) + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "c = {c} exceeds 1/(n-1); vertices would leave the closed cone"
        )));
    }
    simplex_from_dual_gram(&dual_gram)
}

/// Flips the time coordinate (a map in O(1,n)) when the synthesized cone
/// vectors landed on the lower sheet.
fn into_upper_cone(verts: &mut [LorentzVector]) {
    let total_height: f64 = verts.iter().map(|v| v.height()).sum();
    if total_height < 0.0 {
        for v in verts {
            v.coords[0] = -v.coords[0];
        }
    }
}

/// Eigen-synthesis of a simplex from a prescribed dual Gram matrix.
fn simplex_from_dual_gram(dual_gram: &DMatrix<f64>) -> Result<Simplex> {
    let duals = vectors_from_gram(dual_gram)?;
    let mut verts = dual_basis(&duals)
        .map_err(|_| Error::InvalidParameter("dual Gram matrix is singular".into()))?;
    into_upper_cone(&mut verts);
    let points = verts
        .iter()
        .map(lift_to_point)
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(&points)
}

/// Realizes a prescribed vertex Gram matrix (signature (1, n)) as a simplex.
/// Used to restate a face of a simplex intrinsically in its own span.
pub fn simplex_from_vertex_gram(g: &DMatrix<f64>) -> Result<Simplex> {
    let mut verts = vectors_from_gram(g)?;
    into_upper_cone(&mut verts);
    let points = verts
        .iter()
        .map(lift_to_point)
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(&points)
}

/// Classifies a closed-upper-cone lift as interior or boundary point.
fn lift_to_point(v: &LorentzVector) -> Result<ExtendedPoint> {
    let n2 = v.norm2();
    let scale = v.euclidean_norm().powi(2).max(1e-30);
    if n2 / scale > 1e-9 {
        Ok(ExtendedPoint::Interior(HPoint::from_lift(v)?))
    } else if n2 / scale > -1e-9 {
        Ok(ExtendedPoint::Boundary(crate::models::BoundaryPoint::from_lift(
            &v.scale(1.0 / v.height()),
        )?))
    } else {
        Err(Error::InvalidInput(format!("lift has negative norm {n2:.3e}")))
    }
}

/// Incenter, inradius, tangency points and visual Gram matrix.
#[derive(Debug, Clone)]
pub struct InscribedData {
    pub incenter: HPoint,
    pub inradius: f64,
    /// Tangency point of the inscribed sphere with each hyperface.
    pub tangency: Vec<HPoint>,
    /// Cosines of the visual angles at the incenter between the tangency
    /// directions; unit diagonal.
    pub visual_gram: DMatrix<f64>,
}

/// Incenter `o = (sum v_k)/s` with `s^2 = sum_ij G_ij`, inradius
/// `sinh(delta) = 1/s`, tangency points
/// `v'_k = o/cosh(delta) + tanh(delta) v*_k`.
pub fn incenter_inradius(simplex: &Simplex) -> InscribedData {
    let k = simplex.dim() + 1;
    let s2: f64 = simplex.gram().iter().sum();
    assert!(s2 > 0.0, "sum of Gram entries must be positive for a total simplex");
    let s = s2.sqrt();
    let mut sum = LorentzVector::zeros(simplex.dim() + 1);
    for v in simplex.vertices() {
        sum = sum.add(v);
    }
    let incenter = HPoint { lift: sum.scale(1.0 / s) };
    let delta = (1.0 / s).asinh();
    let (ch, th, sh) = (delta.cosh(), delta.tanh(), delta.sinh());
    let tangency: Vec<HPoint> = (0..k)
        .map(|i| HPoint {
            lift: incenter.lift.scale(1.0 / ch).axpy(th, &simplex.duals()[i]),
        })
        .collect();
    // Unit tangents at o towards the tangency points; the tangent-space
    // inner product is minus the ambient form.
    let tangents: Vec<LorentzVector> = tangency
        .iter()
        .map(|t| t.lift.axpy(-ch, &incenter.lift).scale(1.0 / sh))
        .collect();
    let visual_gram = DMatrix::from_fn(k, k, |i, j| -lorentz_form(&tangents[i], &tangents[j]));
    InscribedData { incenter, inradius: delta, tangency, visual_gram }
}

/// The Euclidean-ball picture of a simplex after moving its incenter to the
/// chart origin.
#[derive(Debug, Clone)]
pub struct IncentredModel {
    /// Ball-chart coordinates of the vertices (on the unit sphere for ideal
    /// vertices).
    pub euclidean_vertices: Vec<DVector<f64>>,
    pub euclidean_tangency: Vec<DVector<f64>>,
    /// Equals `tanh` of the hyperbolic inradius.
    pub euclidean_inradius: f64,
}

pub fn incentred_model(simplex: &Simplex) -> Result<IncentredModel> {
    let ins = incenter_inradius(simplex);
    let n = simplex.dim();
    let o_std = HPoint::origin(n);
    let map = isometry_from_gram(&[ins.incenter.lift.clone()], &[o_std.lift])?;
    let chart = |v: &LorentzVector| -> DVector<f64> {
        let w = map.apply(v);
        DVector::from_fn(n, |i, _| w.coords[i + 1] / w.coords[0])
    };
    Ok(IncentredModel {
        euclidean_vertices: simplex.vertices().iter().map(&chart).collect(),
        euclidean_tangency: ins.tangency.iter().map(|t| chart(&t.lift)).collect(),
        euclidean_inradius: ins.inradius.tanh(),
    })
}

/// Euclidean incenter of the simplex with the given vertices: facet-volume
/// weighted vertex average.
fn euclidean_incenter(points: &[DVector<f64>]) -> DVector<f64> {
    let n = points[0].len();
    let mut weights = Vec::with_capacity(points.len());
    for k in 0..points.len() {
        let facet: Vec<&DVector<f64>> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p)
            .collect();
        // Squared facet volume up to a common factorial factor.
        let m = facet.len() - 1;
        let mut g = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                g[(i, j)] = (facet[i + 1] - facet[0]).dot(&(facet[j + 1] - facet[0]));
            }
        }
        weights.push(g.determinant().max(0.0).sqrt());
    }
    let total: f64 = weights.iter().sum();
    let mut c = DVector::zeros(n);
    for (w, p) in weights.iter().zip(points) {
        c += p * (*w / total);
    }
    c
}

/// Inverse of `incentred_model` on ideal simplices: lifts unit-sphere points
/// whose Euclidean incenter is the origin to null vectors and rebuilds the
/// simplex.
pub fn from_inscribed_euclidean(points: &[DVector<f64>]) -> Result<Simplex> {
    let n = points[0].len();
    if points.len() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "need {} points in R^{n}, got {}",
            n + 1,
            points.len()
        )));
    }
    for (i, p) in points.iter().enumerate() {
        let r = p.norm();
        if (r - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidInput(format!(
                "point {i} is off the unit sphere by {:.3e}",
                (r - 1.0).abs()
            )));
        }
    }
    let offset = euclidean_incenter(points).norm();
    if offset > 1e-8 {
        return Err(Error::InvalidInput(format!(
            "Euclidean incenter is off the origin by {offset:.3e}"
        )));
    }
    let boundary = points
        .iter()
        .map(|p| {
            let mut v = LorentzVector::zeros(n + 1);
            v.coords[0] = 1.0;
            for i in 0..n {
                v.coords[i + 1] = p[i] / p.norm();
            }
            crate::models::BoundaryPoint::from_lift(&v).map(ExtendedPoint::Boundary)
        })
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(&boundary)
}

/// CLI interchange schema for simplices.
#[derive(Debug, Serialize, Deserialize)]
pub struct SimplexJson {
    pub n: usize,
    pub vertices: Vec<Vec<f64>>,
    pub model: String,
}

impl Simplex {
    pub fn to_json(&self) -> SimplexJson {
        SimplexJson {
            n: self.dim(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.coords.iter().cloned().collect())
                .collect(),
            model: "minkowski".into(),
        }
    }

    pub fn from_json(doc: &SimplexJson) -> Result<Self> {
        let points = match doc.model.as_str() {
            "klein" => doc
                .vertices
                .iter()
                .map(|v| {
                    if v.len() != doc.n {
                        return Err(Error::InvalidInput(format!(
                            "klein vertex has {} coordinates, expected n = {}",
                            v.len(),
                            doc.n
                        )));
                    }
                    from_klein(&KleinPoint::new(v.clone()))
                })
                .collect::<Result<Vec<_>>>()?,
            "minkowski" => doc
                .vertices
                .iter()
                .map(|v| {
                    if v.len() != doc.n + 1 {
                        return Err(Error::InvalidInput(format!(
                            "minkowski vertex has {} coordinates, expected 1+n = {}",
                            v.len(),
                            doc.n + 1
                        )));
                    }
                    lift_to_point(&LorentzVector::new(v.clone()))
                })
                .collect::<Result<Vec<_>>>()?,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown model '{other}', expected 'klein' or 'minkowski'"
                )))
            }
        };
        Simplex::new(&points)
    }
}
