//! Distances to faces and skeleta of a simplex.
//!
//! The distance from a point to an m-face reduces to orthogonal projection
//! onto the linear span of the face generators, with recursion into
//! sub-faces when the projection leaves the cone. On top of this sit the
//! one-sided Hausdorff distance from the simplex to its m-skeleton (a
//! maximin problem over barycentric coordinates), enumeration of its local
//! maximizers, the chained product bound through nested projections, the
//! Euclidean disphenoid census, and the convex-hull sampler for the
//! `log(1+sqrt(2))` skeleton bound.

use nalgebra::{DVector, Dyn};
use num_complex::Complex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lorentz::{gram, lorentz_form, LorentzVector};
use crate::models::{acosh_clamped, dist_point_point, from_klein, hpoint_to_klein, ExtendedPoint, HPoint, KleinPoint};
use crate::opt::{compass_polish, nelder_mead_polished, project_to_simplex, softmax};
use crate::simplex::{incenter_inradius, simplex_from_vertex_gram, Simplex};

/// `tanh` of the maximal inradius in dimension n is 1/n.
pub fn max_inradius_constant(n: usize) -> f64 {
    (1.0 / n as f64).atanh()
}

/// `tanh^2` of the maximal distance to the 1-skeleton is (n-1)/(2n).
pub fn mu_edge_constant(n: usize) -> f64 {
    ((n as f64 - 1.0) / (2.0 * n as f64)).sqrt().atanh()
}

/// Limit of `mu_edge_constant` as n grows: atanh(1/sqrt(2)) = log(1+sqrt(2)).
pub fn mu_edge_limit() -> f64 {
    (1.0 + 2.0_f64.sqrt()).ln()
}

/// An m-face of a simplex: the convex hull of a subset of 1+m vertices.
#[derive(Debug, Clone)]
pub struct Face<'a> {
    pub simplex: &'a Simplex,
    pub vertex_subset: Vec<usize>,
}

impl<'a> Face<'a> {
    pub fn new(simplex: &'a Simplex, vertex_subset: Vec<usize>) -> Result<Self> {
        let n = simplex.dim();
        if vertex_subset.is_empty() || vertex_subset.len() > n + 1 {
            return Err(Error::InvalidInput(format!(
                "face needs between 1 and {} vertices, got {}",
                n + 1,
                vertex_subset.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &k in &vertex_subset {
            if k > n || seen[k] {
                return Err(Error::InvalidInput(format!(
                    "vertex index {k} out of range or repeated"
                )));
            }
            seen[k] = true;
        }
        Ok(Self { simplex, vertex_subset })
    }

    pub fn m(&self) -> usize {
        self.vertex_subset.len() - 1
    }

    pub fn lifts(&self) -> Vec<LorentzVector> {
        self.vertex_subset
            .iter()
            .map(|&k| self.simplex.vertices()[k].clone())
            .collect()
    }
}

/// Distance from a point to a closed face, with the realizing point when it
/// exists in H^n. `boundary_limit` marks the degenerate case of a single
/// ideal vertex, whose distance contribution is +infinity.
#[derive(Debug, Clone)]
pub struct FaceDistance {
    pub value: f64,
    pub nearest: Option<HPoint>,
    pub boundary_limit: bool,
}

/// Precomputed face data: generator lifts, factored Gram matrix, and the
/// facet sub-faces for the recursion.
struct FaceCtx {
    lifts: Vec<LorentzVector>,
    lu: Option<nalgebra::LU<f64, Dyn, Dyn>>,
    children: Vec<FaceCtx>,
}

impl FaceCtx {
    fn new(lifts: Vec<LorentzVector>) -> Self {
        if lifts.len() == 1 {
            return Self { lifts, lu: None, children: Vec::new() };
        }
        let g = gram(&lifts);
        let children = (0..lifts.len())
            .map(|drop| {
                let sub: Vec<LorentzVector> = lifts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, v)| v.clone())
                    .collect();
                FaceCtx::new(sub)
            })
            .collect();
        Self { lifts, lu: Some(nalgebra::LU::new(g)), children }
    }

    /// Distance from the hyperboloid point with lift `p`.
    ///
    /// Projects onto the span of the generators by solving the Gram system
    /// `G a = (<p, w_i>)`; when all coefficients are nonnegative the foot
    /// lies in the cone over the face and realizes the distance, otherwise
    /// the minimum is attained on a facet and we recurse.
    fn distance(&self, p: &LorentzVector) -> FaceDistance {
        if self.lifts.len() == 1 {
            let v = &self.lifts[0];
            let n2 = v.norm2();
            if n2 <= 1e-9 * v.euclidean_norm().powi(2) {
                return FaceDistance { value: f64::INFINITY, nearest: None, boundary_limit: true };
            }
            let q = v.scale(1.0 / n2.sqrt());
            // Plain clamp, not the asserting one: optimizer probes run far
            // out on the hyperboloid, where cancellation in <p,q> scales
            // with p0*q0 and can exceed any fixed slack.
            return FaceDistance {
                value: lorentz_form(p, &q).max(1.0).acosh(),
                nearest: Some(HPoint { lift: q }),
                boundary_limit: false,
            };
        }
        let k = self.lifts.len();
        let b = DVector::from_fn(k, |i, _| lorentz_form(p, &self.lifts[i]));
        if let Some(alpha) = self.lu.as_ref().and_then(|lu| lu.solve(&b)) {
            if alpha.iter().all(|&a| a >= -1e-12) {
                let mut q = LorentzVector::zeros(p.ambient_dim());
                for (a, w) in alpha.iter().zip(&self.lifts) {
                    q = q.axpy(*a, w);
                }
                let n2 = q.norm2();
                if n2 > 1e-14 {
                    let qn = q.scale(1.0 / n2.sqrt());
                    return FaceDistance {
                        value: lorentz_form(p, &qn).max(1.0).acosh(),
                        nearest: Some(HPoint { lift: qn }),
                        boundary_limit: false,
                    };
                }
            }
        }
        let mut best: Option<FaceDistance> = None;
        for child in &self.children {
            let d = child.distance(p);
            if best.as_ref().map_or(true, |b| d.value < b.value) {
                best = Some(d);
            }
        }
        best.expect("faces with >= 2 generators have facets")
    }
}

/// Distance from a point of H^n to the closed face.
pub fn dist_to_face(p: &HPoint, face: &Face) -> FaceDistance {
    FaceCtx::new(face.lifts()).distance(&p.lift)
}

/// Distance to the closed segment between two cone lifts (interior or null).
pub fn dist_to_segment(p: &HPoint, a: &LorentzVector, b: &LorentzVector) -> FaceDistance {
    FaceCtx::new(vec![a.clone(), b.clone()]).distance(&p.lift)
}

/// Independent minimizer for the face distance: projected gradient descent
/// on the closed weight simplex for `t -> <p, w(t)> / sqrt(Q(t))`, with a
/// barrier rejecting the null region `Q(t) < 1e-12`. Returns the distance
/// and the minimizing weights.
pub fn dist_to_face_general(p: &HPoint, face: &Face) -> Result<(f64, Vec<f64>)> {
    let lifts = face.lifts();
    let k = lifts.len();
    let g = gram(&lifts);
    let b = DVector::from_fn(k, |i, _| lorentz_form(&p.lift, &lifts[i]));
    let fval = |t: &DVector<f64>| -> f64 {
        let q = t.dot(&(&g * t));
        if q < 1e-12 {
            return f64::INFINITY;
        }
        b.dot(t) / q.sqrt()
    };
    let mut t = DVector::from_element(k, 1.0 / k as f64);
    let mut ft = fval(&t);
    if !ft.is_finite() {
        return Err(Error::DegenerateInput("face barycenter is not timelike".into()));
    }
    let project = |v: &DVector<f64>| -> DVector<f64> {
        DVector::from_vec(project_to_simplex(v.as_slice()))
    };
    for _ in 0..200_000 {
        let gt = &g * &t;
        let q = t.dot(&gt);
        let bt = b.dot(&t);
        let sq = q.sqrt();
        let grad = DVector::from_fn(k, |i, _| b[i] / sq - bt * gt[i] / (q * sq));
        // Stationarity through the gradient mapping at unit reference step.
        let mapped = project(&(&t - &grad));
        if (&t - &mapped).norm() < 1e-10 {
            break;
        }
        let mut gamma = 1.0;
        let mut moved = false;
        while gamma > 1e-16 {
            let cand = project(&(&t - gamma * &grad));
            let fc = fval(&cand);
            let step2 = (&t - &cand).norm_squared();
            if fc <= ft - 1e-4 * step2 / gamma {
                t = cand;
                ft = fc;
                moved = true;
                break;
            }
            gamma *= 0.5;
        }
        if !moved {
            break;
        }
    }
    Ok((acosh_clamped(ft), t.iter().cloned().collect()))
}

/// All subsets of `{0, .., n-1}` of size k, in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for i in start..=(n - remaining) {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    if k >= 1 && k <= n {
        rec(0, n, k, &mut current, &mut out);
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Controls for the maximin searches. `restarts = None` means the default
/// `32 + 8n`. All randomness derives from `seed`.
#[derive(Debug, Clone)]
pub struct OptimizerOptions {
    pub restarts: Option<usize>,
    pub seed: u64,
    pub max_subsets: usize,
    pub max_iter: usize,
    pub eps_opt: f64,
    pub eps_dedup: f64,
    pub eps_val: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            restarts: None,
            seed: 0,
            max_subsets: 2000,
            max_iter: 800,
            eps_opt: 1e-9,
            eps_dedup: 1e-6,
            eps_val: 1e-7,
        }
    }
}

/// One reported local maximizer of the skeleton distance.
#[derive(Debug, Clone, Serialize)]
pub struct MaximizerRecord {
    pub point_klein: Vec<f64>,
    pub value: f64,
    pub nearest_faces: Vec<Vec<usize>>,
    #[serde(skip_serializing)]
    pub point: HPoint,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizerDiagnostics {
    pub iterations: usize,
    pub restarts: usize,
    pub achieved_tolerance: f64,
}

/// Result of a skeleton-distance maximization.
#[derive(Debug, Clone, Serialize)]
pub struct SkeletonDistanceReport {
    pub m: usize,
    pub value: f64,
    pub maximizers: Vec<MaximizerRecord>,
    pub global_count: usize,
    pub local_count: usize,
    pub diagnostics: OptimizerDiagnostics,
    pub partial_enumeration: bool,
}

/// Shared state of the maximin searches over one simplex.
struct SkeletonObjective<'a> {
    simplex: &'a Simplex,
    subsets: Vec<Vec<usize>>,
    ctxs: Vec<FaceCtx>,
}

impl<'a> SkeletonObjective<'a> {
    fn new(simplex: &'a Simplex, m: usize) -> Result<Self> {
        let n = simplex.dim();
        if m < 1 || m >= n {
            return Err(Error::InvalidParameter(format!(
                "skeleton dimension m = {m} must satisfy 1 <= m < n = {n}"
            )));
        }
        let subsets = combinations(n + 1, m + 1);
        let ctxs = subsets
            .iter()
            .map(|s| {
                FaceCtx::new(s.iter().map(|&k| simplex.vertices()[k].clone()).collect())
            })
            .collect();
        Ok(Self { simplex, subsets, ctxs })
    }

    /// Interior point with weights `softmax([x, 0])` on the vertex lifts.
    fn lift(&self, x: &[f64]) -> Option<LorentzVector> {
        let mut logits = x.to_vec();
        logits.push(0.0);
        let weights = softmax(&logits);
        let mut v = LorentzVector::zeros(self.simplex.dim() + 1);
        for (w, vert) in weights.iter().zip(self.simplex.vertices()) {
            v = v.axpy(*w, vert);
        }
        let n2 = v.norm2();
        if n2 <= 1e-12 {
            return None;
        }
        Some(v.scale(1.0 / n2.sqrt()))
    }

    fn min_face_distance(&self, p: &LorentzVector) -> f64 {
        self.ctxs
            .iter()
            .map(|c| c.distance(p).value)
            .fold(f64::INFINITY, f64::min)
    }

    /// Negated objective for the minimizers; large penalty off the cone.
    fn neg_value(&self, x: &[f64]) -> f64 {
        match self.lift(x) {
            Some(p) => -self.min_face_distance(&p),
            None => 1e3,
        }
    }
}

/// Distance from a point to the m-skeleton (minimum over all m-faces).
pub fn dist_to_skeleton(simplex: &Simplex, m: usize, p: &HPoint) -> Result<f64> {
    let obj = SkeletonObjective::new(simplex, m)?;
    Ok(obj.min_face_distance(&p.lift))
}

struct Raw {
    x: Vec<f64>,
    value: f64,
}

/// One local ascent: Nelder-Mead with restart polish, then direct-search
/// polish, then random-probe escapes from stalled points.
fn ascend(
    g: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    max_iter: usize,
    rng: &mut ChaCha8Rng,
    iterations: &mut usize,
) -> Raw {
    let res = nelder_mead_polished(g, x0, 1.0, max_iter);
    *iterations += res.iterations;
    let (mut x, mut fx) = compass_polish(g, &res.x, 1e-2, 1e-9);
    // Escape probes: a stalled point improves along some random direction.
    'outer: for _ in 0..4 {
        for _ in 0..6 * x.len() {
            let scale = if rng.gen_bool(0.5) { 1e-3 } else { 1e-5 };
            let cand: Vec<f64> = x
                .iter()
                .map(|&xi| xi + scale * rng.gen_range(-1.0..1.0f64))
                .collect();
            if g(&cand) < fx - 1e-10 {
                let res = nelder_mead_polished(g, &cand, 1e-2, max_iter);
                *iterations += res.iterations;
                let polished = compass_polish(g, &res.x, 1e-3, 1e-9);
                x = polished.0;
                fx = polished.1;
                continue 'outer;
            }
        }
        break;
    }
    Raw { x, value: -fx }
}

/// Start points: equal weights first, suppressed-vertex starts next, then
/// seeded Dirichlet draws up to `restarts`.
fn start_points(dim: usize, restarts: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut starts = Vec::with_capacity(restarts);
    starts.push(vec![0.0; dim]);
    for k in 0..=dim {
        if starts.len() >= restarts {
            break;
        }
        let mut x = vec![0.0; dim];
        if k < dim {
            x[k] = -8.0;
        } else {
            for v in &mut x {
                *v = 8.0;
            }
        }
        starts.push(x);
    }
    while starts.len() < restarts {
        let e: Vec<f64> = (0..=dim)
            .map(|_| -(rng.gen_range(1e-12..1.0f64)).ln())
            .collect();
        let x: Vec<f64> = (0..dim).map(|i| e[i].ln() - e[dim].ln()).collect();
        starts.push(x);
    }
    starts
}

/// Greedy merge of candidates: identical when closer than `eps_dedup`, or
/// when moderately close and the straight midpoint loses no value (same
/// plateau rather than two basins separated by a valley).
fn cluster_points(
    mut cands: Vec<(DVector<f64>, f64)>,
    dist: &mut dyn FnMut(&DVector<f64>, &DVector<f64>) -> f64,
    midval: &mut dyn FnMut(&DVector<f64>, &DVector<f64>) -> f64,
    eps_dedup: f64,
) -> Vec<(DVector<f64>, f64)> {
    cands.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let mut reps: Vec<(DVector<f64>, f64)> = Vec::new();
    'next: for (p, v) in cands {
        for (rp, rv) in &reps {
            let d = dist(rp, &p);
            if d < eps_dedup {
                continue 'next;
            }
            if d < 0.25 && midval(rp, &p) >= v.min(*rv) - 1e-9 {
                continue 'next;
            }
        }
        reps.push((p, v));
    }
    reps
}

fn build_report(
    obj: &SkeletonObjective,
    m: usize,
    raws: Vec<Raw>,
    opts: &OptimizerOptions,
    diagnostics: OptimizerDiagnostics,
    partial_enumeration: bool,
) -> Result<SkeletonDistanceReport> {
    let cands: Vec<(DVector<f64>, f64)> = raws
        .into_iter()
        .filter_map(|r| {
            obj.lift(&r.x).map(|p| {
                let k = hpoint_to_klein(&HPoint { lift: p });
                (k.affine, r.value)
            })
        })
        .collect();
    if cands.is_empty() {
        return Err(Error::NonConvergence { restarts: diagnostics.restarts, best: f64::NAN });
    }
    let interior = |k: &DVector<f64>| -> HPoint {
        match from_klein(&KleinPoint { affine: k.clone() }).expect("maximizers are interior") {
            ExtendedPoint::Interior(p) => p,
            ExtendedPoint::Boundary(_) => unreachable!("maximizers are interior"),
        }
    };
    let mut dist = |a: &DVector<f64>, b: &DVector<f64>| -> f64 {
        dist_point_point(&interior(a), &interior(b))
    };
    let mut midval = |a: &DVector<f64>, b: &DVector<f64>| -> f64 {
        let mid = (a + b) * 0.5;
        obj.min_face_distance(&interior(&mid).lift)
    };
    let reps = cluster_points(cands, &mut dist, &mut midval, opts.eps_dedup);
    let value = reps.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let maximizers: Vec<MaximizerRecord> = reps
        .iter()
        .map(|(k, v)| {
            let p = interior(k);
            let dists: Vec<f64> = obj.ctxs.iter().map(|c| c.distance(&p.lift).value).collect();
            let dmin = dists.iter().cloned().fold(f64::INFINITY, f64::min);
            let nearest_faces = obj
                .subsets
                .iter()
                .zip(&dists)
                .filter(|(_, &d)| d <= dmin + opts.eps_val)
                .map(|(s, _)| s.clone())
                .collect();
            MaximizerRecord {
                point_klein: k.iter().cloned().collect(),
                value: *v,
                nearest_faces,
                point: p,
            }
        })
        .collect();
    let global_count = maximizers.iter().filter(|r| r.value >= value - opts.eps_val).count();
    let local_count = maximizers.len();
    Ok(SkeletonDistanceReport {
        m,
        value,
        maximizers,
        global_count,
        local_count,
        diagnostics,
        partial_enumeration,
    })
}

/// One-sided Hausdorff distance from the simplex to its m-skeleton:
/// maximizes the minimum face distance over barycentric coordinates by
/// seeded multi-start ascent. Reports all distinct local maximizers found.
pub fn delta_n_m(
    simplex: &Simplex,
    m: usize,
    opts: &OptimizerOptions,
) -> Result<SkeletonDistanceReport> {
    let obj = SkeletonObjective::new(simplex, m)?;
    let n = simplex.dim();
    let restarts = opts.restarts.unwrap_or(32 + 8 * n).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xa0761d6478bd642f);
    let mut iterations = 0usize;
    let mut g = |x: &[f64]| obj.neg_value(x);
    let raws: Vec<Raw> = start_points(n, restarts, &mut rng)
        .iter()
        .map(|x0| ascend(&mut g, x0, opts.max_iter, &mut rng, &mut iterations))
        .collect();
    let diagnostics = OptimizerDiagnostics {
        iterations,
        restarts,
        achieved_tolerance: 1e-9,
    };
    build_report(&obj, m, raws, opts, diagnostics, false)
}

/// Enumerates local maximizers through the subset heuristic: for each
/// (n+1)-subset of m-faces, solve the maximin problem restricted to the
/// subset, keep candidates whose globally nearest faces lie in the subset,
/// then re-ascend on the full objective and merge with the plain
/// multi-start results.
pub fn enumerate_local_maximizers(
    simplex: &Simplex,
    m: usize,
    opts: &OptimizerOptions,
) -> Result<SkeletonDistanceReport> {
    let obj = SkeletonObjective::new(simplex, m)?;
    let n = simplex.dim();
    let face_count = obj.ctxs.len();
    let pick = (n + 1).min(face_count);
    let total = binomial(face_count, pick);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e3779b97f4a7c15);
    let (face_subsets, partial) = if total <= opts.max_subsets {
        (combinations(face_count, pick), false)
    } else {
        let mut sampled = Vec::with_capacity(opts.max_subsets);
        for _ in 0..opts.max_subsets {
            let mut idx: Vec<usize> = (0..face_count).collect();
            idx.partial_shuffle(&mut rng, pick);
            let mut s: Vec<usize> = idx[..pick].to_vec();
            s.sort_unstable();
            sampled.push(s);
        }
        (sampled, true)
    };

    let mut iterations = 0usize;
    let mut raws: Vec<Raw> = Vec::new();
    for fs in &face_subsets {
        let subset_min = |p: &LorentzVector| -> f64 {
            fs.iter().map(|&i| obj.ctxs[i].distance(p).value).fold(f64::INFINITY, f64::min)
        };
        let mut g_sub = |x: &[f64]| -> f64 {
            match obj.lift(x) {
                Some(p) => -subset_min(&p),
                None => 1e3,
            }
        };
        for x0 in start_points(n, 4, &mut rng) {
            let cand = ascend(&mut g_sub, &x0, opts.max_iter / 2, &mut rng, &mut iterations);
            let p = match obj.lift(&cand.x) {
                Some(p) => p,
                None => continue,
            };
            // Feasible when no face outside the subset comes closer.
            if subset_min(&p) - obj.min_face_distance(&p) > opts.eps_val {
                continue;
            }
            let mut g = |x: &[f64]| obj.neg_value(x);
            raws.push(ascend(&mut g, &cand.x, opts.max_iter, &mut rng, &mut iterations));
        }
    }
    let restarts = opts.restarts.unwrap_or(32 + 8 * n).max(1);
    let mut g = |x: &[f64]| obj.neg_value(x);
    for x0 in start_points(n, restarts, &mut rng) {
        raws.push(ascend(&mut g, &x0, opts.max_iter, &mut rng, &mut iterations));
    }
    let diagnostics = OptimizerDiagnostics {
        iterations,
        restarts: restarts + 4 * face_subsets.len(),
        achieved_tolerance: 1e-9,
    };
    build_report(&obj, m, raws, opts, diagnostics, partial)
}

/// Chained product bound: `cosh` of the skeleton distance on the left,
/// product over n' = m+1..n of `cosh` of the largest inradius among the
/// n'-faces on the right (each face restated intrinsically from its vertex
/// Gram matrix). The left side never exceeds the right, with equality for
/// the regular ideal simplex.
pub fn pythagorean_chain_bound(simplex: &Simplex, m: usize) -> Result<(f64, f64)> {
    let n = simplex.dim();
    if m < 1 || m >= n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= m < n, got m = {m}, n = {n}"
        )));
    }
    let opts = OptimizerOptions { restarts: Some(16 + 4 * n), ..Default::default() };
    let report = delta_n_m(simplex, m, &opts)?;
    let lhs = report.value.cosh();
    let mut rhs = 1.0;
    for np in (m + 1)..=n {
        let mut max_inradius = 0.0_f64;
        for subset in combinations(n + 1, np + 1) {
            let sub_gram = nalgebra::DMatrix::from_fn(np + 1, np + 1, |i, j| {
                simplex.gram()[(subset[i], subset[j])]
            });
            let face = simplex_from_vertex_gram(&sub_gram)?;
            max_inradius = max_inradius.max(incenter_inradius(&face).inradius);
        }
        rhs *= max_inradius.cosh();
    }
    Ok((lhs, rhs))
}

/// A Euclidean tetrahedron with four congruent acute faces, folded from the
/// triangle with vertices 1, z, -1 along its midlines.
#[derive(Debug, Clone)]
pub struct Disphenoid {
    pub z: Complex<f64>,
    pub vertices: [[f64; 3]; 4],
}

/// Builds the disphenoid of parameter z. The acuteness region is
/// `Im(z) > 0`, `|Re(z)| < 1`, `|z| > 1`; opposite edge pairs have lengths
/// `|z+1|`, `2`, `|z-1|`.
pub fn disphenoid(z: Complex<f64>) -> Result<Disphenoid> {
    if z.im <= 0.0 || z.re.abs() >= 1.0 || z.norm() <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "z = {z} is outside the acute-triangle region Im > 0, |Re| < 1, |z| > 1"
        )));
    }
    let l1 = (z + 1.0).norm_sqr();
    let l2 = 4.0;
    let l3 = (z - 1.0).norm_sqr();
    let x2 = (-l1 + l2 + l3) / 8.0;
    let y2 = (l1 - l2 + l3) / 8.0;
    let z2 = (l1 + l2 - l3) / 8.0;
    if x2 <= 0.0 || y2 <= 0.0 || z2 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "z = {z} does not give an acute triangle"
        )));
    }
    let (a, b, c) = (x2.sqrt(), y2.sqrt(), z2.sqrt());
    // Even sign patterns: each pair of vertices differs in two coordinates,
    // which makes opposite edges equal and all faces congruent.
    Ok(Disphenoid {
        z,
        vertices: [[a, b, c], [a, -b, -c], [-a, b, -c], [-a, -b, c]],
    })
}

fn euclid_segment_distance(p: &DVector<f64>, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let ab = b - a;
    let denom = ab.norm_squared();
    let t = if denom < 1e-30 { 0.0 } else { ((p - a).dot(&ab) / denom).clamp(0.0, 1.0) };
    (p - (a + ab * t)).norm()
}

/// Distinct local maximizers of the distance to the edge skeleton of the
/// disphenoid, in plain Euclidean geometry, with their values.
pub fn disphenoid_maximizers(
    z: Complex<f64>,
    opts: &OptimizerOptions,
) -> Result<Vec<(DVector<f64>, f64)>> {
    let d = disphenoid(z)?;
    let verts: Vec<DVector<f64>> = d.vertices.iter().map(|v| DVector::from_row_slice(v)).collect();
    let edges = combinations(4, 2);
    let min_edge_dist = |p: &DVector<f64>| -> f64 {
        edges
            .iter()
            .map(|e| euclid_segment_distance(p, &verts[e[0]], &verts[e[1]]))
            .fold(f64::INFINITY, f64::min)
    };
    let point_of = |x: &[f64]| -> DVector<f64> {
        let mut logits = x.to_vec();
        logits.push(0.0);
        let w = softmax(&logits);
        let mut p = DVector::zeros(3);
        for (wi, v) in w.iter().zip(&verts) {
            p += v * *wi;
        }
        p
    };
    let mut g = |x: &[f64]| -min_edge_dist(&point_of(x));
    let restarts = opts.restarts.unwrap_or(64).max(8);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xd1b54a32d192ed03);
    let mut iterations = 0usize;
    let cands: Vec<(DVector<f64>, f64)> = start_points(3, restarts, &mut rng)
        .iter()
        .map(|x0| {
            let raw = ascend(&mut g, x0, opts.max_iter, &mut rng, &mut iterations);
            (point_of(&raw.x), raw.value)
        })
        .collect();
    let mut dist = |a: &DVector<f64>, b: &DVector<f64>| (a - b).norm();
    let mut midval = |a: &DVector<f64>, b: &DVector<f64>| min_edge_dist(&((a + b) * 0.5));
    Ok(cluster_points(cands, &mut dist, &mut midval, opts.eps_dedup.max(1e-6)))
}

/// Counts the (local, global) maximizers of the edge-skeleton distance of
/// the disphenoid.
///
/// Every disphenoid is invariant under the three half-turns about the axes
/// joining opposite edge midpoints. A maximizer off those axes therefore
/// belongs to an orbit of four points sharing one value, so the counts are
/// (1, 1) for the regular tetrahedron (the centroid is the lone fixed
/// point) and (4, 4) otherwise, isoceles faces or not.
pub fn disphenoid_maximizer_census(
    z: Complex<f64>,
    opts: &OptimizerOptions,
) -> Result<(usize, usize)> {
    let reps = disphenoid_maximizers(z, opts)?;
    let best = reps.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    let global = reps.iter().filter(|r| r.1 >= best - opts.eps_val).count();
    Ok((reps.len(), global))
}

/// Samples random convex combinations of the given points (interior or
/// ideal) and returns the largest observed distance to the union of the
/// segments between the points. Always at most `log(1+sqrt(2))` up to
/// rounding.
pub fn hull_skeleton_bound_sampler(
    points: &[ExtendedPoint],
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidInput("need at least two points".into()));
    }
    let lifts: Vec<LorentzVector> = points.iter().map(|p| p.lift().clone()).collect();
    let pair_ctxs: Vec<FaceCtx> = combinations(lifts.len(), 2)
        .iter()
        .map(|e| FaceCtx::new(vec![lifts[e[0]].clone(), lifts[e[1]].clone()]))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_observed = 0.0_f64;
    let mut done = 0usize;
    while done < samples {
        let mut v = LorentzVector::zeros(lifts[0].ambient_dim());
        for lift in &lifts {
            let w = -(rng.gen_range(1e-12..1.0f64)).ln();
            v = v.axpy(w, lift);
        }
        let n2 = v.norm2();
        if n2 <= 1e-9 * v.euclidean_norm().powi(2) {
            continue;
        }
        let p = v.scale(1.0 / n2.sqrt());
        let d = pair_ctxs
            .iter()
            .map(|c| c.distance(&p).value)
            .fold(f64::INFINITY, f64::min);
        max_observed = max_observed.max(d);
        done += 1;
    }
    Ok(max_observed)
}
