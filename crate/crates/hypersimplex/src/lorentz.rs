//! Lorentzian linear algebra over R^{1,n}.
//!
//! The ambient space is R^{1+n} with the symmetric bilinear form of signature
//! (1,n): `<x,y> = x0*y0 - sum_{i>=1} xi*yi`. Coordinate 0 is the timelike
//! (height) coordinate. This module owns Gram matrices, signatures, dual
//! bases, homogeneous coordinates and the construction of form-preserving
//! maps realizing a prescribed Gram matrix.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative tolerance for Gram-matrix identities.
pub const EPS_GRAM: f64 = 1e-9;
/// Tolerance for eigenvalue sign classification.
pub const EPS_SIG: f64 = 1e-8;
/// Tolerance on the (Hadamard-normalized) determinant below which a basis
/// counts as degenerate.
pub const EPS_DET: f64 = 1e-10;

/// A vector of R^{1,n}, n >= 1. Carries points, ideal directions and
/// hyperplane polars alike; the geometric reading lives in `models`.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzVector {
    pub coords: DVector<f64>,
}

impl LorentzVector {
    pub fn new(coords: Vec<f64>) -> Self {
        assert!(coords.len() >= 2, "need at least R^{{1,1}}");
        assert!(coords.iter().all(|c| c.is_finite()), "non-finite coordinate");
        Self { coords: DVector::from_vec(coords) }
    }

    pub fn from_dvector(coords: DVector<f64>) -> Self {
        Self { coords }
    }

    pub fn zeros(ambient: usize) -> Self {
        Self { coords: DVector::zeros(ambient) }
    }

    /// Ambient dimension 1+n.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    /// The spatial dimension n.
    pub fn space_dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Height (timelike coordinate).
    pub fn height(&self) -> f64 {
        self.coords[0]
    }

    pub fn norm2(&self) -> f64 {
        lorentz_form(self, self)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { coords: &self.coords * s }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coords: &self.coords + &other.coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coords: &self.coords - &other.coords }
    }

    /// self + s * other
    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        Self { coords: &self.coords + &other.coords * s }
    }

    /// Euclidean norm of the coordinate vector (not the Lorentz norm).
    pub fn euclidean_norm(&self) -> f64 {
        self.coords.norm()
    }
}

/// The bilinear form `x0*y0 - sum_{i>=1} xi*yi`.
pub fn lorentz_form(x: &LorentzVector, y: &LorentzVector) -> f64 {
    assert_eq!(
        x.ambient_dim(),
        y.ambient_dim(),
        "lorentz_form: dimension mismatch"
    );
    let mut s = x.coords[0] * y.coords[0];
    for i in 1..x.ambient_dim() {
        s -= x.coords[i] * y.coords[i];
    }
    s
}

/// The matrix of the form, diag(1,-1,...,-1).
pub fn eta(ambient: usize) -> DMatrix<f64> {
    DMatrix::from_fn(ambient, ambient, |i, j| {
        if i != j {
            0.0
        } else if i == 0 {
            1.0
        } else {
            -1.0
        }
    })
}

/// Gram matrix of a sequence; exactly symmetric by construction.
pub fn gram(seq: &[LorentzVector]) -> DMatrix<f64> {
    let k = seq.len();
    let mut g = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = lorentz_form(&seq[i], &seq[j]);
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    g
}

/// Eigenvalue sign counts of a symmetric matrix at tolerance `eps_sig`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub s_plus: usize,
    pub s_zero: usize,
    pub s_minus: usize,
}

pub fn signature_of(g: &DMatrix<f64>, eps_sig: f64) -> Signature {
    let eig = g.clone().symmetric_eigenvalues();
    let scale = eig.iter().cloned().fold(1.0_f64, |a, b| a.max(b.abs()));
    let tol = eps_sig * scale.max(1.0);
    let mut sig = Signature { s_plus: 0, s_zero: 0, s_minus: 0 };
    for &l in eig.iter() {
        if l > tol {
            sig.s_plus += 1;
        } else if l < -tol {
            sig.s_minus += 1;
        } else {
            sig.s_zero += 1;
        }
    }
    sig
}

/// Hadamard-normalized determinant: det(G) / prod(row norms). Degeneracy
/// test that is insensitive to the overall scale of the basis.
fn normalized_det(g: &DMatrix<f64>) -> f64 {
    let det = g.determinant();
    let mut scale = 1.0;
    for i in 0..g.nrows() {
        scale *= g.row(i).norm().max(f64::MIN_POSITIVE);
    }
    det / scale
}

/// Dual basis `(v*_j)` of a basis, with `<v*_i | v_j> = delta_ij`.
///
/// Solved against the Gram matrix: `v*_j = sum_k (G^{-1})_{kj} v_k`.
pub fn dual_basis(basis: &[LorentzVector]) -> Result<Vec<LorentzVector>> {
    let g = gram(basis);
    if normalized_det(&g).abs() < EPS_DET {
        return Err(Error::DegenerateInput("basis Gram matrix is singular".into()));
    }
    let ginv = g
        .try_inverse()
        .ok_or_else(|| Error::DegenerateInput("Gram matrix not invertible".into()))?;
    let ambient = basis[0].ambient_dim();
    let mut duals = Vec::with_capacity(basis.len());
    for j in 0..basis.len() {
        let mut d = DVector::zeros(ambient);
        for k in 0..basis.len() {
            d += &basis[k].coords * ginv[(k, j)];
        }
        duals.push(LorentzVector::from_dvector(d));
    }
    Ok(duals)
}

/// Coordinates of `p` in `basis`: `lambda_k = <p | v*_k>`.
pub fn homogeneous_coordinates(p: &LorentzVector, basis: &[LorentzVector]) -> Result<Vec<f64>> {
    let duals = dual_basis(basis)?;
    Ok(duals.iter().map(|d| lorentz_form(p, d)).collect())
}

/// An element of GO(1,n), stored as its matrix.
#[derive(Debug, Clone)]
pub struct LorentzMap {
    pub matrix: DMatrix<f64>,
}

impl LorentzMap {
    pub fn identity(ambient: usize) -> Self {
        Self { matrix: DMatrix::identity(ambient, ambient) }
    }

    pub fn apply(&self, v: &LorentzVector) -> LorentzVector {
        LorentzVector::from_dvector(&self.matrix * &v.coords)
    }

    /// Max-entry residual of `M^T eta M - eta`.
    pub fn form_residual(&self) -> f64 {
        let e = eta(self.matrix.nrows());
        let r = self.matrix.transpose() * &e * &self.matrix - &e;
        r.iter().fold(0.0_f64, |a, &b| a.max(b.abs()))
    }
}

/// Extends `seq` to a basis of R^{1+n} by an eta-orthonormal basis of its
/// orthogonal complement. Complement units are ordered timelike first, then
/// spacelike, so two sequences with equal Gram matrices extend compatibly.
fn complete_frame(seq: &[LorentzVector]) -> Result<Vec<LorentzVector>> {
    let ambient = seq[0].ambient_dim();
    let k = seq.len();
    if k > ambient {
        return Err(Error::DegenerateInput("more vectors than ambient dimension".into()));
    }
    let mut frame: Vec<LorentzVector> = seq.to_vec();
    if k == ambient {
        return Ok(frame);
    }

    // Kernel of w -> (<seq_i, w>)_i via the small eigenvalues of M^T M.
    let mut m = DMatrix::zeros(k, ambient);
    for (i, v) in seq.iter().enumerate() {
        m[(i, 0)] = v.coords[0];
        for j in 1..ambient {
            m[(i, j)] = -v.coords[j];
        }
    }
    let mtm = m.transpose() * &m;
    let eig = nalgebra::SymmetricEigen::new(mtm);
    let lmax = eig.eigenvalues.iter().cloned().fold(1.0_f64, f64::max);
    let mut kernel: Vec<LorentzVector> = Vec::new();
    for (idx, &l) in eig.eigenvalues.iter().enumerate() {
        if l < 1e-12 * lmax {
            kernel.push(LorentzVector::from_dvector(eig.eigenvectors.column(idx).into_owned()));
        }
    }
    if kernel.len() != ambient - k {
        return Err(Error::DegenerateInput(format!(
            "span is degenerate: complement rank {} != {}",
            kernel.len(),
            ambient - k
        )));
    }

    // Eta-Gram-Schmidt of the complement, timelike pivot first.
    let mut units: Vec<(LorentzVector, f64)> = Vec::new();
    while !kernel.is_empty() {
        let mut residuals: Vec<LorentzVector> = Vec::new();
        for w in &kernel {
            let mut r = w.clone();
            for (u, s) in &units {
                let c = lorentz_form(&r, u) / s;
                r = r.axpy(-c, u);
            }
            residuals.push(r);
        }
        // Prefer a timelike pivot; otherwise largest |norm|.
        let mut best = 0;
        let mut best_key = f64::NEG_INFINITY;
        let mut found_timelike = false;
        for (i, r) in residuals.iter().enumerate() {
            let n2 = r.norm2();
            let timelike = n2 > EPS_SIG;
            let key = if timelike { n2 } else { n2.abs() };
            if (timelike && !found_timelike) || (timelike == found_timelike && key > best_key) {
                best = i;
                best_key = key;
                found_timelike = found_timelike || timelike;
            }
        }
        let r = residuals[best].clone();
        let n2 = r.norm2();
        if n2.abs() < 1e-12 {
            return Err(Error::DegenerateInput(
                "complement contains a null direction; span is degenerate".into(),
            ));
        }
        let s = n2.signum();
        units.push((r.scale(1.0 / n2.abs().sqrt()), s));
        kernel.remove(best);
    }
    // Timelike unit (at most one) first for a canonical ordering.
    units.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    frame.extend(units.into_iter().map(|(u, _)| u));
    Ok(frame)
}

/// The map M in GO(1,n) with `M src[i] = dst[i]`, given that the two
/// sequences have equal Gram matrices and nondegenerate span.
pub fn isometry_from_gram(src: &[LorentzVector], dst: &[LorentzVector]) -> Result<LorentzMap> {
    assert!(!src.is_empty() && src.len() == dst.len());
    let gs = gram(src);
    let gd = gram(dst);
    let scale = gs.iter().fold(1.0_f64, |a, &b| a.max(b.abs()));
    let mismatch = (&gs - &gd).iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    if mismatch > EPS_GRAM * scale * 10.0 {
        return Err(Error::GramMismatch(mismatch));
    }
    let fs = complete_frame(src)?;
    let fd = complete_frame(dst)?;
    let ambient = src[0].ambient_dim();
    let cols_s = DMatrix::from_fn(ambient, ambient, |i, j| fs[j].coords[i]);
    let cols_d = DMatrix::from_fn(ambient, ambient, |i, j| fd[j].coords[i]);
    let inv = cols_s
        .try_inverse()
        .ok_or_else(|| Error::DegenerateInput("completed frame not invertible".into()))?;
    Ok(LorentzMap { matrix: cols_d * inv })
}

/// Realizes a symmetric Gram matrix with one positive eigenvalue as a
/// sequence of vectors in R^{1,k}: eigen-synthesis with the positive
/// direction on coordinate 0.
pub fn vectors_from_gram(g: &DMatrix<f64>) -> Result<Vec<LorentzVector>> {
    let dim = g.nrows();
    let eig = nalgebra::SymmetricEigen::new(g.clone());
    let scale = eig.eigenvalues.iter().fold(1.0_f64, |a, &b| a.max(b.abs()));
    let tol = EPS_SIG * scale;
    let mut pos: Vec<usize> = Vec::new();
    let mut neg: Vec<usize> = Vec::new();
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l > tol {
            pos.push(i);
        } else if l < -tol {
            neg.push(i);
        }
    }
    if pos.len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "Gram matrix has {} positive eigenvalues, need exactly 1",
            pos.len()
        )));
    }
    if neg.len() > dim - 1 {
        return Err(Error::InvalidParameter("too many negative eigenvalues".into()));
    }
    let mut vectors = vec![LorentzVector::zeros(dim); dim];
    let lp = eig.eigenvalues[pos[0]].sqrt();
    for (k, v) in vectors.iter_mut().enumerate() {
        v.coords[0] = lp * eig.eigenvectors[(k, pos[0])];
        for (slot, &idx) in neg.iter().enumerate() {
            v.coords[1 + slot] = (-eig.eigenvalues[idx]).sqrt() * eig.eigenvectors[(k, idx)];
        }
    }
    Ok(vectors)
}

/// A co-oriented hyperplane `H_u = u^perp` with `<u,u> = -1`; the half-space
/// is `H_u^+ = { x : <u|x> >= 0 }`.
#[derive(Debug, Clone)]
pub struct HalfSpace {
    pub u: LorentzVector,
}

/// Normalizes a spacelike vector to norm -1, recording the co-orientation
/// through the overall sign.
pub fn polar(u: &LorentzVector, sign: f64) -> Result<HalfSpace> {
    let n2 = u.norm2();
    if n2 >= 0.0 {
        return Err(Error::NotSpacelike(n2));
    }
    Ok(HalfSpace { u: u.scale(sign.signum() / (-n2).sqrt()) })
}

impl HalfSpace {
    /// Signed evaluation `<u | x>`; nonnegative on the half-space.
    pub fn eval(&self, x: &LorentzVector) -> f64 {
        lorentz_form(&self.u, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn e(ambient: usize, i: usize) -> LorentzVector {
        let mut v = LorentzVector::zeros(ambient);
        v.coords[i] = 1.0;
        v
    }

    fn random_vector(rng: &mut impl Rng, ambient: usize) -> LorentzVector {
        LorentzVector::from_dvector(DVector::from_fn(ambient, |_, _| rng.gen_range(-1.0..1.0)))
    }

    #[test]
    fn form_on_frame_vectors() {
        let t = e(3, 0);
        assert_eq!(lorentz_form(&t, &t), 1.0);
        let null = LorentzVector::new(vec![1.0, 1.0, 0.0]);
        assert_eq!(lorentz_form(&null, &null), 0.0);
        let s = e(3, 1);
        assert_eq!(lorentz_form(&t, &s), 0.0);
        assert_eq!(lorentz_form(&s, &s), -1.0);
    }

    #[test]
    fn gram_of_orthonormal_frame_is_eta() {
        let frame: Vec<_> = (0..4).map(|i| e(4, i)).collect();
        assert_eq!(gram(&frame), eta(4));
    }

    #[test]
    fn gram_of_single_null_vector() {
        let null = LorentzVector::new(vec![1.0, 1.0]);
        let g = gram(&[null]);
        assert_eq!(g[(0, 0)], 0.0);
    }

    #[test]
    fn signature_basics() {
        let sig = signature_of(&eta(3), EPS_SIG);
        assert_eq!(sig, Signature { s_plus: 1, s_zero: 0, s_minus: 2 });
        let z = DMatrix::from_element(1, 1, 0.0);
        assert_eq!(signature_of(&z, EPS_SIG), Signature { s_plus: 0, s_zero: 1, s_minus: 0 });
    }

    #[test]
    fn dual_of_orthonormal_frame_is_eta_flip() {
        let frame: Vec<_> = (0..4).map(|i| e(4, i)).collect();
        let duals = dual_basis(&frame).unwrap();
        assert!((duals[0].coords[0] - 1.0).abs() < 1e-14);
        for i in 1..4 {
            assert!((duals[i].coords[i] + 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn dual_basis_residual_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6usize);
            let basis: Vec<_> = (0..=n).map(|_| random_vector(&mut rng, n + 1)).collect();
            let g = gram(&basis);
            // The dual set's Gram is G^{-1}, so both must clear the
            // degeneracy threshold for the involution to be well posed.
            let ginv_check = match g.clone().try_inverse() {
                Some(m) => m,
                None => continue,
            };
            if normalized_det(&g).abs() < 1e-4 || normalized_det(&ginv_check).abs() < 1e-4 {
                continue;
            }
            let duals = dual_basis(&basis).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((lorentz_form(&duals[i], &basis[j]) - want).abs() < 1e-9);
                }
            }
            // involution
            let back = dual_basis(&duals).unwrap();
            for i in 0..=n {
                let d = back[i].sub(&basis[i]).euclidean_norm();
                assert!(d < 1e-8 * basis[i].euclidean_norm().max(1.0));
            }
            // gram(duals) = gram(basis)^{-1}
            let ginv = g.clone().try_inverse().unwrap();
            let gd = gram(&duals);
            let resid = (&gd - &ginv).iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
            let scale = ginv.iter().fold(1.0_f64, |a, &b| a.max(b.abs()));
            assert!(resid < 1e-8 * scale, "residual {resid}");
        }
    }

    #[test]
    fn homogeneous_coordinates_trivial_and_determinant_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 3;
        let basis: Vec<_> = loop {
            let b: Vec<_> = (0..=n).map(|_| random_vector(&mut rng, n + 1)).collect();
            if normalized_det(&gram(&b)).abs() > 1e-3 {
                break b;
            }
        };
        let c = homogeneous_coordinates(&basis[0], &basis).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-9);
        for i in 1..=n {
            assert!(c[i].abs() < 1e-9);
        }
        let sum = basis.iter().skip(1).fold(basis[0].clone(), |a, b| a.add(b));
        let c = homogeneous_coordinates(&sum, &basis).unwrap();
        for i in 0..=n {
            assert!((c[i] - 1.0).abs() < 1e-9);
        }
        // Cramer's rule on the Gram system G lam = (<p, b_j>) as oracle.
        for _ in 0..20 {
            let p = random_vector(&mut rng, n + 1);
            let lam = homogeneous_coordinates(&p, &basis).unwrap();
            let g = gram(&basis);
            let denom = g.determinant();
            for k in 0..=n {
                let mut gk = g.clone();
                for j in 0..=n {
                    gk[(j, k)] = lorentz_form(&p, &basis[j]);
                }
                let num = gk.determinant();
                let by_det = num / denom;
                assert!(
                    (lam[k] - by_det).abs() < 1e-9 * by_det.abs().max(1.0),
                    "k={k}: {} vs {}",
                    lam[k],
                    by_det
                );
            }
        }
    }

    #[test]
    fn isometry_identity_on_equal_sequences() {
        let frame: Vec<_> = (0..3).map(|i| e(3, i)).collect();
        let m = isometry_from_gram(&frame, &frame).unwrap();
        let resid = (&m.matrix - DMatrix::<f64>::identity(3, 3))
            .iter()
            .fold(0.0_f64, |a, &b| a.max(b.abs()));
        assert!(resid < 1e-12);
    }

    #[test]
    fn isometry_recovers_random_lorentz_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 2..=4usize {
            // Build a random element of GO(1,n) by completing a random
            // timelike unit vector to a frame.
            let mut t = random_vector(&mut rng, n + 1);
            t.coords[0] = t.coords[0].abs() + 2.0;
            let t = t.scale(1.0 / t.norm2().sqrt());
            let frame = complete_frame(&[t]).unwrap();
            let m = DMatrix::from_fn(n + 1, n + 1, |i, j| frame[j].coords[i]);
            let g = LorentzMap { matrix: m };
            assert!(g.form_residual() < 1e-9);

            let src: Vec<_> = (0..=n).map(|_| random_vector(&mut rng, n + 1)).collect();
            if normalized_det(&gram(&src)).abs() < 1e-4 {
                continue;
            }
            let dst: Vec<_> = src.iter().map(|v| g.apply(v)).collect();
            let rec = isometry_from_gram(&src, &dst).unwrap();
            assert!(rec.form_residual() < 1e-9);
            for (s, d) in src.iter().zip(&dst) {
                let err = rec.apply(s).sub(d).euclidean_norm();
                assert!(err < 1e-9, "map error {err}");
            }
        }
    }

    #[test]
    fn isometry_partial_sequence_completion() {
        // A single timelike vector: the frame must be completed.
        let o = e(4, 0);
        let p = LorentzVector::new(vec![1.5, 0.5, 0.7, (1.5_f64 * 1.5 - 0.25 - 0.49 - 1.0).sqrt()]);
        let p = p.scale(1.0 / p.norm2().sqrt());
        let m = isometry_from_gram(&[p.clone()], &[o.clone()]).unwrap();
        assert!(m.form_residual() < 1e-9);
        assert!(m.apply(&p).sub(&o).euclidean_norm() < 1e-9);
    }

    #[test]
    fn isometry_gram_mismatch_rejected() {
        let a = e(3, 0);
        let b = e(3, 0).scale(2.0);
        assert!(matches!(isometry_from_gram(&[a], &[b]), Err(Error::GramMismatch(_))));
    }

    #[test]
    fn polar_normalizes_and_rejects() {
        let u = LorentzVector::new(vec![0.0, 2.0, 0.0]);
        let h = polar(&u, 1.0).unwrap();
        assert!((h.u.coords[1] - 1.0).abs() < 1e-14);
        let o = e(3, 0);
        assert!(h.eval(&o).abs() < 1e-14);
        assert!(matches!(polar(&o, 1.0), Err(Error::NotSpacelike(_))));
    }

    #[test]
    fn vectors_from_gram_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=5usize {
            let seq: Vec<_> = loop {
                let mut s: Vec<_> = (0..=n).map(|_| random_vector(&mut rng, n + 1)).collect();
                for v in &mut s {
                    v.coords[0] = v.coords[0].abs() + 1.5;
                }
                if normalized_det(&gram(&s)).abs() > 1e-3 {
                    break s;
                }
            };
            let g = gram(&seq);
            let rec = vectors_from_gram(&g).unwrap();
            let g2 = gram(&rec);
            let scale = g.iter().fold(1.0_f64, |a, &b| a.max(b.abs()));
            let resid = (&g - &g2).iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
            assert!(resid < 1e-8 * scale, "residual {resid}");
        }
    }

    #[test]
    fn bilinearity_of_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let x = random_vector(&mut rng, 4);
            let y = random_vector(&mut rng, 4);
            let z = random_vector(&mut rng, 4);
            let a: f64 = rng.gen_range(-2.0..2.0);
            let lhs = lorentz_form(&x.axpy(a, &y), &z);
            let rhs = lorentz_form(&x, &z) + a * lorentz_form(&y, &z);
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
            assert_eq!(lorentz_form(&x, &y), lorentz_form(&y, &x));
        }
    }
}
