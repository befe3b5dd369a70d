//! Deterministic SVG diagrams: Klein-disk pictures of hyperplane pairs and
//! of the incentred model in dimension 2, and orthographic projections of a
//! disphenoid with its edge-distance maximizers.
//!
//! All coordinates are printed with four decimals so identical inputs give
//! byte-identical files.

use num_complex::Complex;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lorentz::LorentzVector;
use crate::models::{bisectors, classify_hyperplanes, polar_of_halfspace_klein, HalfSpace};
use crate::simplex::{incentred_model, regular_simplex};
use crate::skeleton::{disphenoid, disphenoid_maximizers, OptimizerOptions};

const CANVAS: f64 = 800.0;
const CENTER: f64 = 400.0;
const RADIUS: f64 = 320.0;

/// Palette shared by all figures; also documented in the emitted header.
const COL_CIRCLE: &str = "#222222";
const COL_CHORD: &str = "#1f6fb2";
const COL_BISECTOR: &str = "#c23b22";
const COL_TANGENCY: &str = "#2e8540";
const COL_MARKER: &str = "#7a3ab8";

fn px(x: f64) -> f64 {
    CENTER + RADIUS * x
}

fn py(y: f64) -> f64 {
    CENTER - RADIUS * y
}

fn svg_open(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        CANVAS as i64
    ));
    out.push_str(
        "<!-- palette: background #ffffff, unit circle #222222, geodesic chords #1f6fb2,\n     bisectors #c23b22 (dashed), polar points #c23b22, tangency points #2e8540,\n     maximizer markers #7a3ab8 -->\n",
    );
    out.push_str("<rect width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n");
}

fn svg_close(out: &mut String) {
    out.push_str("</svg>\n");
}

fn unit_circle(out: &mut String) {
    let _ = writeln!(
        out,
        "<circle class=\"ball\" cx=\"{CENTER:.4}\" cy=\"{CENTER:.4}\" r=\"{RADIUS:.4}\" fill=\"none\" stroke=\"{COL_CIRCLE}\" stroke-width=\"2\"/>"
    );
}

fn line(out: &mut String, class: &str, a: (f64, f64), b: (f64, f64), color: &str, dashed: bool) {
    let dash = if dashed { " stroke-dasharray=\"8 6\"" } else { "" };
    let _ = writeln!(
        out,
        "<line class=\"{class}\" x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"{color}\" stroke-width=\"2\"{dash}/>",
        px(a.0),
        py(a.1),
        px(b.0),
        py(b.1)
    );
}

fn dot(out: &mut String, class: &str, p: (f64, f64), r: f64, color: &str) {
    let _ = writeln!(
        out,
        "<circle class=\"{class}\" cx=\"{:.4}\" cy=\"{:.4}\" r=\"{r:.4}\" fill=\"{color}\"/>",
        px(p.0),
        py(p.1)
    );
}

/// Ideal endpoints of the Klein chord of a hyperplane of H^2: directions
/// theta on the unit circle with `<(1, cos, sin), u> = 0`.
fn chord_endpoints(h: &HalfSpace) -> Result<((f64, f64), (f64, f64))> {
    let u = &h.u;
    if u.ambient_dim() != 3 {
        return Err(Error::InvalidParameter("chords require H^2 hyperplanes".into()));
    }
    let (u0, u1, u2) = (u.coords[0], u.coords[1], u.coords[2]);
    let r = (u1 * u1 + u2 * u2).sqrt();
    if r <= u0.abs() {
        return Err(Error::InvalidParameter("hyperplane vector is not spacelike".into()));
    }
    let phi = u2.atan2(u1);
    let half = (u0 / r).acos();
    let t1 = phi + half;
    let t2 = phi - half;
    Ok(((t1.cos(), t1.sin()), (t2.cos(), t2.sin())))
}

/// A canonical pair of hyperplanes for each configuration class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperplanePairCase {
    Intersecting,
    Asymptotic,
    Ultraparallel,
}

fn canonical_pair(case: HyperplanePairCase) -> (HalfSpace, HalfSpace) {
    let u = HalfSpace { u: LorentzVector::new(vec![0.0, 1.0, 0.0]) };
    let v = match case {
        HyperplanePairCase::Intersecting => {
            LorentzVector::new(vec![0.2, 0.5, (1.0 + 0.04 - 0.25_f64).sqrt()])
        }
        HyperplanePairCase::Asymptotic => LorentzVector::new(vec![1.0, 1.0, 1.0]),
        HyperplanePairCase::Ultraparallel => {
            LorentzVector::new(vec![1.0_f64.sinh(), 1.0_f64.cosh(), 0.0])
        }
    };
    (u, HalfSpace { u: v })
}

/// Klein diagram of a canonical hyperplane pair with its bisector(s) and
/// the polar points of the input hyperplanes.
pub fn config_hyperplanes_svg(case: HyperplanePairCase) -> Result<String> {
    let (hu, hv) = canonical_pair(case);
    classify_hyperplanes(&hu, &hv)?;
    let mut out = String::new();
    svg_open(&mut out);
    unit_circle(&mut out);
    for h in [&hu, &hv] {
        let (a, b) = chord_endpoints(h)?;
        line(&mut out, "chord", a, b, COL_CHORD, false);
        if h.u.coords[0].abs() > 1e-9 {
            if let Some(p) = polar_of_halfspace_klein(h) {
                dot(&mut out, "polar", (p.affine[0], p.affine[1]), 5.0, COL_BISECTOR);
            }
        }
    }
    for b in bisectors(&hu, &hv)? {
        let (p, q) = chord_endpoints(&b)?;
        line(&mut out, "bisector", p, q, COL_BISECTOR, true);
    }
    svg_close(&mut out);
    Ok(out)
}

/// Incentred picture of the regular family member with dual Gram parameter
/// `c` in H^2: the triangle in the Klein disk with its inscribed circle and
/// tangency points.
pub fn incentred_model_svg(c: f64) -> Result<String> {
    let s = regular_simplex(2, c)?;
    let model = incentred_model(&s)?;
    let mut out = String::new();
    svg_open(&mut out);
    unit_circle(&mut out);
    let verts = &model.euclidean_vertices;
    for i in 0..3 {
        let a = &verts[i];
        let b = &verts[(i + 1) % 3];
        line(&mut out, "edge", (a[0], a[1]), (b[0], b[1]), COL_CHORD, false);
    }
    let _ = writeln!(
        out,
        "<circle class=\"inscribed\" cx=\"{CENTER:.4}\" cy=\"{CENTER:.4}\" r=\"{:.4}\" fill=\"none\" stroke=\"{COL_TANGENCY}\" stroke-width=\"2\"/>",
        RADIUS * model.euclidean_inradius
    );
    for t in &model.euclidean_tangency {
        dot(&mut out, "tangency", (t[0], t[1]), 4.0, COL_TANGENCY);
    }
    for v in verts {
        dot(&mut out, "vertex", (v[0], v[1]), 4.0, COL_CHORD);
    }
    svg_close(&mut out);
    Ok(out)
}

/// Three orthographic projections (xy, xz, yz) of the disphenoid with the
/// maximizers of the distance to its edge skeleton marked.
pub fn disphenoid_maximizers_svg(z: Complex<f64>) -> Result<String> {
    let d = disphenoid(z)?;
    let opts = OptimizerOptions { restarts: Some(48), ..Default::default() };
    let maxima = disphenoid_maximizers(z, &opts)?;
    let mut out = String::new();
    svg_open(&mut out);
    // Panels centered at fixed anchors; model coordinates scaled by 90 px.
    let panels: [(usize, usize, f64, f64); 3] =
        [(0, 1, 210.0, 250.0), (0, 2, 590.0, 250.0), (1, 2, 400.0, 600.0)];
    let scale = 90.0;
    for &(i, j, cx, cy) in &panels {
        let proj = |v: &[f64; 3]| (cx + scale * v[i], cy - scale * v[j]);
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (a, b) in edges {
            let pa = proj(&d.vertices[a]);
            let pb = proj(&d.vertices[b]);
            let _ = writeln!(
                out,
                "<line class=\"edge\" x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"{COL_CHORD}\" stroke-width=\"2\"/>",
                pa.0, pa.1, pb.0, pb.1
            );
        }
        for (p, _) in &maxima {
            let m = [p[0], p[1], p[2]];
            let pm = proj(&m);
            let _ = writeln!(
                out,
                "<circle class=\"maximizer\" cx=\"{:.4}\" cy=\"{:.4}\" r=\"5.0000\" fill=\"{COL_MARKER}\"/>",
                pm.0, pm.1
            );
        }
    }
    svg_close(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(hay: &str, needle: &str) -> usize {
        hay.matches(needle).count()
    }

    #[test]
    fn ultraparallel_figure_element_counts() {
        let svg = config_hyperplanes_svg(HyperplanePairCase::Ultraparallel).unwrap();
        assert_eq!(count(&svg, "class=\"chord\""), 2);
        assert_eq!(count(&svg, "class=\"bisector\""), 1);
        assert_eq!(count(&svg, "class=\"polar\""), 1);
    }

    #[test]
    fn intersecting_figure_has_two_bisectors() {
        let svg = config_hyperplanes_svg(HyperplanePairCase::Intersecting).unwrap();
        assert_eq!(count(&svg, "class=\"bisector\""), 2);
    }

    #[test]
    fn asymptotic_figure_renders() {
        let svg = config_hyperplanes_svg(HyperplanePairCase::Asymptotic).unwrap();
        assert_eq!(count(&svg, "class=\"chord\""), 2);
        assert_eq!(count(&svg, "class=\"bisector\""), 1);
    }

    #[test]
    fn incentred_figure_of_the_ideal_triangle() {
        let svg = incentred_model_svg(1.0).unwrap();
        assert_eq!(count(&svg, "class=\"edge\""), 3);
        assert_eq!(count(&svg, "class=\"tangency\""), 3);
        // Inscribed circle radius is half the ball radius: tanh = 1/n = 1/2.
        assert!(svg.contains("r=\"160.0000\""), "{svg}");
    }

    #[test]
    fn figures_are_deterministic() {
        let a = config_hyperplanes_svg(HyperplanePairCase::Intersecting).unwrap();
        let b = config_hyperplanes_svg(HyperplanePairCase::Intersecting).unwrap();
        assert_eq!(a, b);
        let a = disphenoid_maximizers_svg(Complex::new(0.2, 1.3)).unwrap();
        let b = disphenoid_maximizers_svg(Complex::new(0.2, 1.3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("class=\"edge\"").count(), 18);
    }
}
