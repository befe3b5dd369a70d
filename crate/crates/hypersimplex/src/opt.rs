//! Small in-crate optimization toolbox: Nelder-Mead with restart polish,
//! and Euclidean projection onto the standard weight simplex.

/// Result of a Nelder-Mead run.
pub struct NmResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
}

/// Downhill simplex minimization of `f`. Standard coefficients; terminates
/// on simplex diameter < `xtol` or value spread < `ftol`.
pub fn nelder_mead(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_iter: usize,
    ftol: f64,
    xtol: f64,
) -> NmResult {
    let dim = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    let mut iterations = 0;

    for _ in 0..max_iter {
        iterations += 1;
        // Order: best first.
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        let spread = values[worst] - values[best];
        let diam = simplex
            .iter()
            .map(|x| {
                x.iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0_f64, f64::max)
            })
            .fold(0.0_f64, f64::max);
        if spread < ftol && diam < xtol {
            break;
        }

        // Centroid of all but the worst.
        let mut centroid = vec![0.0; dim];
        for (i, x) in simplex.iter().enumerate() {
            if i == worst {
                continue;
            }
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }

        let mix = |a: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + a * (c - w))
                .collect()
        };

        let reflected = mix(1.0);
        let fr = f(&reflected);
        if fr < values[best] {
            let expanded = mix(2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if fr < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            let contracted = if fr < values[worst] { mix(0.5) } else { mix(-0.5) };
            let fc = f(&contracted);
            if fc < values[worst].min(fr) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                // Shrink towards the best vertex.
                let anchor = simplex[best].clone();
                for (i, x) in simplex.iter_mut().enumerate() {
                    if i == best {
                        continue;
                    }
                    for (xi, ai) in x.iter_mut().zip(&anchor) {
                        *xi = ai + 0.5 * (*xi - *ai);
                    }
                    values[i] = f(x);
                }
            }
        }
    }

    let (best, _) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    NmResult { x: simplex[best].clone(), fx: values[best], iterations }
}

/// Nelder-Mead followed by shrinking restarts from the incumbent; restarts
/// re-span the search simplex, which is what lets the method dig into
/// nonsmooth minima of max/min-type objectives.
pub fn nelder_mead_polished(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_iter: usize,
) -> NmResult {
    let mut res = nelder_mead(f, x0, step, max_iter, 1e-13, 1e-10);
    let mut total = res.iterations;
    let mut s = step;
    for _ in 0..4 {
        s *= 0.05;
        let next = nelder_mead(f, &res.x, s.max(1e-7), max_iter, 1e-14, 1e-11);
        total += next.iterations;
        if next.fx < res.fx {
            res = next;
        } else {
            break;
        }
    }
    res.iterations = total;
    res
}

/// Direct-search polish: axis and diagonal probes with shrinking radius.
/// Cleans up the last digits where the objective has min/max kinks and the
/// Nelder-Mead simplex collapses early.
pub fn compass_polish(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    h0: f64,
    h_min: f64,
) -> (Vec<f64>, f64) {
    let dim = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut h = h0;
    // Deterministic probe directions: axes plus lagged-diagonal mixes.
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..dim {
        let mut d = vec![0.0; dim];
        d[i] = 1.0;
        dirs.push(d.clone());
        d[i] = -1.0;
        dirs.push(d);
    }
    for k in 1..=dim.min(3) {
        let mut d = vec![0.0; dim];
        for i in 0..dim {
            d[i] = if (i + k) % 2 == 0 { 1.0 } else { -1.0 };
        }
        let norm = (dim as f64).sqrt();
        for v in &mut d {
            *v /= norm;
        }
        dirs.push(d.clone());
        for v in &mut d {
            *v = -*v;
        }
        dirs.push(d);
    }
    while h > h_min {
        let mut improved = false;
        for d in &dirs {
            let cand: Vec<f64> = x.iter().zip(d).map(|(xi, di)| xi + h * di).collect();
            let fc = f(&cand);
            if fc < fx {
                x = cand;
                fx = fc;
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (x, fx)
}

/// Euclidean projection onto `{ t >= 0, sum t = 1 }` (sort-based).
pub fn project_to_simplex(x: &[f64]) -> Vec<f64> {
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cum = 0.0;
    let mut theta = sorted[0] - 1.0;
    for (i, &v) in sorted.iter().enumerate() {
        cum += v;
        let t = (cum - 1.0) / (i as f64 + 1.0);
        if v - t > 0.0 {
            theta = t;
        }
    }
    x.iter().map(|&v| (v - theta).max(0.0)).collect()
}

/// Softmax onto the open weight simplex; shift-invariant.
pub fn softmax(x: &[f64]) -> Vec<f64> {
    let m = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = x.iter().map(|&v| (v - m).exp()).collect();
    let s: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_quadratic() {
        let mut f = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2);
        let res = nelder_mead_polished(&mut f, &[0.0, 0.0], 0.5, 2000);
        assert!((res.x[0] - 1.0).abs() < 1e-7);
        assert!((res.x[1] + 2.0).abs() < 1e-7);
    }

    #[test]
    fn minimizes_nonsmooth_max() {
        // min of max(|x-0.3|, |y+0.1|), kink at the solution.
        let mut f = |x: &[f64]| (x[0] - 0.3_f64).abs().max((x[1] + 0.1).abs());
        let res = nelder_mead_polished(&mut f, &[1.0, 1.0], 0.7, 4000);
        assert!(res.fx < 1e-7, "fx = {}", res.fx);
    }

    #[test]
    fn simplex_projection() {
        let p = project_to_simplex(&[0.2, 0.3, 0.5]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!((p[2] - 0.5).abs() < 1e-12);

        let p = project_to_simplex(&[2.0, -1.0, 0.0]);
        assert!((p[0] - 1.0).abs() < 1e-12);
        assert!(p[1] == 0.0 && p[2] == 0.0);

        let p = project_to_simplex(&[0.4, 0.4]);
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn softmax_sums_to_one() {
        let s = softmax(&[0.0, 1.0, -2.0]);
        assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(s.iter().all(|&v| v > 0.0));
    }
}
