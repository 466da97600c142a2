//! SVG rendering of signed diagrams.
//!
//! The projective plane is drawn as a disk whose boundary is the line at
//! infinity (antipodal boundary points are the same point). Drawing uses
//! floating point; every decision about which strand is over is made
//! exactly, and the exact diagram data is embedded as a comment.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::algebra::{format_rational, rational_to_f64, UPoly};
use crate::curve::RationalSpaceCurve;
use crate::projection::LocusKind;
use crate::writhe::{crossing_height_order, Diagram, WritheError};

const SIZE: f64 = 480.0;
const RADIUS: f64 = 210.0;
const SAMPLES: usize = 1440;
const GAP: f64 = 9.0;

fn eval(p: &UPoly, t: Complex64) -> Complex64 {
    p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + rational_to_f64(c))
}

/// `(X, Y, W)` at the parameter `(u : v)`, `t = u / v`.
fn homogeneous(c: &RationalSpaceCurve, u: f64, v: f64) -> [f64; 3] {
    let d = c.degree() as i32;
    let at = |p: &UPoly| -> f64 {
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, a)| rational_to_f64(a) * u.powi(k as i32) * v.powi(d - k as i32))
            .sum()
    };
    [at(c.coord(0)), at(c.coord(1)), at(c.coord(3))]
}

struct Canvas {
    scale: f64,
}

impl Canvas {
    /// Disk coordinates of the plane point `(X : Y : W)` with `W >= 0`.
    fn map(&self, p: [f64; 3]) -> (f64, f64) {
        let s = if p[2] < 0.0 { -1.0 } else { 1.0 };
        let n = (p[0] * p[0] + p[1] * p[1] + (self.scale * p[2]).powi(2)).sqrt();
        (SIZE / 2.0 + RADIUS * s * p[0] / n, SIZE / 2.0 - RADIUS * s * p[1] / n)
    }

    fn affine(&self, x: f64, y: f64) -> (f64, f64) {
        self.map([x, y, 1.0])
    }
}

struct Marker {
    at: (f64, f64),
    /// Component and parameter angle of the under strand.
    under: Option<(usize, f64)>,
}

fn angle(t: f64) -> f64 {
    // t = tan(theta), theta in [0, pi)
    t.atan().rem_euclid(PI)
}

fn close_angle(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d) < 0.25
}

fn affine_point(c: &RationalSpaceCurve, t: Complex64) -> (f64, f64) {
    let w = eval(c.coord(3), t);
    ((eval(c.coord(0), t) / w).re, (eval(c.coord(1), t) / w).re)
}

/// `cmd_diagram_svg`: the diagram as a standalone SVG document.
pub fn render_svg(diagram: &Diagram) -> Result<String, WritheError> {
    let link = &diagram.projection.link;
    let mut markers = Vec::new();
    let mut labels = Vec::new();
    let mut solitary = Vec::new();

    // place loci in the affine chart first, to choose the scale
    let mut spots = Vec::new();
    for l in &diagram.loci {
        let (i, j) = l.locus.components;
        let (a, b) = (l.locus.first().to_f64(), l.locus.second().to_f64());
        match l.locus.kind {
            LocusKind::Crossing | LocusKind::InterComponentCrossing => {
                let (s, t) = if l.locus.kind == LocusKind::Crossing {
                    let r = (a * a - 4.0 * b).max(0.0).sqrt();
                    ((a - r) / 2.0, (a + r) / 2.0)
                } else {
                    (a, b)
                };
                let pos = affine_point(link.component(i), s.into());
                let under = match crossing_height_order(link, &l.locus)? {
                    crate::algebra::Sign::Negative => (j, t),
                    _ => (i, s),
                };
                spots.push((pos, Some(under), l.sign, None));
            }
            LocusKind::Solitary => {
                let r = (4.0 * b - a * a).max(0.0).sqrt();
                let t = Complex64::new(a / 2.0, r / 2.0);
                let c = link.component(i);
                let w = eval(c.coord(3), t);
                let dw = eval(&c.coord(3).derivative(), t);
                let u: Vec<Complex64> = (0..2)
                    .map(|k| (eval(&c.coord(k).derivative(), t) * w - eval(c.coord(k), t) * dw) / (w * w))
                    .collect();
                spots.push((affine_point(c, t), None, l.sign, Some(u)));
            }
        }
    }
    let extent = spots.iter().map(|((x, y), ..)| x.hypot(*y)).fold(1.0f64, f64::max);
    let canvas = Canvas { scale: 1.5 * extent };

    for ((x, y), under, sign, dirs) in &spots {
        let at = canvas.affine(*x, *y);
        let text = if *sign > 0 { "+1" } else { "\u{2212}1" };
        labels.push((at, text));
        match dirs {
            None => markers.push(Marker { at, under: under.map(|(k, t)| (k, angle(t))) }),
            Some(u) => {
                let h = 0.08 * canvas.scale;
                let strokes: Vec<((f64, f64), (f64, f64))> = [(u[0].re, u[1].re), (u[0].im, u[1].im)]
                    .iter()
                    .map(|(dx, dy)| {
                        let n = dx.hypot(*dy).max(1e-12);
                        (canvas.affine(x - h * dx / n, y - h * dy / n), canvas.affine(x + h * dx / n, y + h * dy / n))
                    })
                    .collect();
                solitary.push((at, strokes));
            }
        }
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    svg.push_str(&exact_comment(diagram));
    let _ = writeln!(
        svg,
        r##"<circle cx="{c:.2}" cy="{c:.2}" r="{RADIUS:.2}" fill="none" stroke="#bbbbbb" stroke-dasharray="2 4"/>"##,
        c = SIZE / 2.0
    );
    for (k, c) in link.components().iter().enumerate() {
        for path in strand_paths(&canvas, c, k, &markers) {
            let _ = writeln!(svg, r##"<polyline fill="none" stroke="#1f3b73" stroke-width="2" points="{path}"/>"##);
        }
    }
    for (at, strokes) in &solitary {
        for (a, b) in strokes {
            let _ = writeln!(
                svg,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f3b73" stroke-dasharray="3 3"/>"##,
                a.0, a.1, b.0, b.1
            );
        }
        let _ = writeln!(svg, r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#b22222"/>"##, at.0, at.1);
    }
    for (at, text) in &labels {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13">{text}</text>"#,
            at.0 + 8.0,
            at.1 - 8.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Polylines of one component, broken where `W` changes sign and where the
/// component passes under a crossing.
fn strand_paths(canvas: &Canvas, c: &RationalSpaceCurve, k: usize, markers: &[Marker]) -> Vec<String> {
    let mut paths = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    let mut last_w: Option<f64> = None;
    for n in 0..=SAMPLES {
        let theta = PI * n as f64 / SAMPLES as f64;
        let p = homogeneous(c, theta.sin(), theta.cos());
        let q = canvas.map(p);
        let hidden = markers.iter().any(|m| {
            m.under.is_some_and(|(comp, a)| comp == k && close_angle(a, theta))
                && (q.0 - m.at.0).hypot(q.1 - m.at.1) < GAP
        });
        let flipped = last_w.is_some_and(|w| w * p[2] < 0.0);
        if hidden || flipped {
            flush(&mut paths, &mut current);
        }
        if !hidden {
            current.push(q);
        }
        last_w = Some(p[2]);
    }
    flush(&mut paths, &mut current);
    paths
}

fn flush(paths: &mut Vec<String>, current: &mut Vec<(f64, f64)>) {
    if current.len() > 1 {
        let pts: Vec<String> = current.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        paths.push(pts.join(" "));
    }
    current.clear();
}

/// The exact diagram data. XML comments may not contain a double hyphen.
fn exact_comment(diagram: &Diagram) -> String {
    let mut s = String::from("<!--\n");
    let _ = writeln!(s, "center {}", diagram.center);
    let rows: Vec<String> = diagram
        .transform
        .matrix()
        .iter()
        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" "))
        .collect();
    let _ = writeln!(s, "transform [{}]", rows.join("; "));
    for l in &diagram.loci {
        let (a, b) = if l.locus.is_self() { ("e", "f") } else { ("s", "t") };
        let y = l.locus.second();
        let _ = writeln!(
            s,
            "{:?} components {:?} sign {}: {b} root of {} in [{}, {}], {a} = {}",
            l.locus.kind,
            l.locus.components,
            l.sign,
            y.defining().fmt_with(b),
            format_rational(y.lo()),
            format_rational(y.hi()),
            l.locus.point.x_repr.fmt_with(b),
        );
    }
    s.push_str("-->\n");
    let body = s[4..s.len() - 4].replace("--", "- -");
    format!("<!--{body}-->\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::curve::Link;
    use crate::projection::ProjectionCenter;
    use crate::writhe::build_diagram;

    fn svg_of(link: &Link) -> String {
        render_svg(&build_diagram(link, &ProjectionCenter::standard()).unwrap()).unwrap()
    }

    #[test]
    fn crossing_has_a_gap_and_label() {
        let s = svg_of(&Link::single(RationalSpaceCurve::model(&rat(-1))));
        assert!(s.contains("\u{2212}1"));
        assert!(s.matches("<polyline").count() >= 2);
        assert!(s.contains("Crossing components (0, 0) sign -1"));
        assert!(!s.contains("<circle cx=\"240.00\" cy=\"240.00\" r=\"4\""));
    }

    #[test]
    fn solitary_point_is_marked() {
        let s = svg_of(&Link::single(RationalSpaceCurve::model(&rat(1))));
        assert!(s.contains(r#"r="4""#));
        assert_eq!(s.matches("stroke-dasharray=\"3 3\"").count(), 2);
        assert!(s.contains("\u{2212}1"));
    }

    #[test]
    fn conic_is_a_plain_oval() {
        let c = RationalSpaceCurve::from_ints(&[1, 0, -1], &[0, 2], &[0, 0, 1], &[1, 0, 1]).unwrap();
        let s = svg_of(&Link::single(c));
        assert_eq!(s.matches("<polyline").count(), 1);
        assert!(!s.contains("<text"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let l = Link::single(RationalSpaceCurve::model(&rat(-1)));
        assert_eq!(svg_of(&l), svg_of(&l));
        let body = svg_of(&l);
        let comment = &body[body.find("<!--").unwrap() + 4..body.find("-->").unwrap()];
        assert!(!comment.contains("--"));
    }
}
