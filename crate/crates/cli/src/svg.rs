//! SVG rendering of planar chamber tilings.

use std::collections::HashMap;
use std::fmt::Write;

use coxwalls::enumerate::Layers;
use coxwalls::geometry::{crossing_word, hausdorff, EuclideanRealization, Gallery, GeometryError, Point, GEODESIC_TOL};
use coxwalls::parabolic::min_left_coset_rep;
use coxwalls::{Element, GeneratorSubset, Word};
use serde::Serialize;

/// Canvas side length in SVG user units.
const CANVAS: f64 = 600.0;

const PALETTE: [&str; 10] =
    ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd"];
const PLAIN_FILL: &str = "#f4f4f4";

/// Disc of the given radius about the basepoint.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Window {
    pub radius: f64,
}

#[derive(Clone, Copy, Debug)]
pub enum Coloring {
    Plain,
    /// One fill per left coset `w W_T`.
    Cosets(GeneratorSubset),
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlaySummary {
    pub w: Element,
    pub word: Word,
    pub gallery_vertices: usize,
    pub d_h: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct Tiling {
    pub svg: String,
    /// Chambers drawn, in ShortLex order of their elements.
    pub chambers: Vec<Element>,
    /// Fill of each drawn chamber.
    pub fills: Vec<&'static str>,
    pub overlay: Option<OverlaySummary>,
}

/// Elements whose chamber has a vertex inside the window. Every such chamber
/// is reached by a minimal gallery that stays in the disc, so the walk stops
/// at the first layer with no chamber in view.
fn chambers_in_window(real: &EuclideanRealization, window: Window) -> Result<Vec<Element>, GeometryError> {
    let system = real.system();
    let x0 = real.basepoint();
    let inside = |w: &Element| real.chamber_vertices(w).iter().any(|v| (v - x0).norm() <= window.radius);
    let mut out = vec![Element::identity(system)];
    let mut layers = Layers::new(system, system.all_generators());
    loop {
        let mut any = false;
        for nf in layers.next_layer()? {
            let w = Element::from_letters(system, &nf)?;
            if inside(&w) {
                out.push(w);
                any = true;
            }
        }
        if !any {
            return Ok(out);
        }
    }
}

fn ordered_polygon(mut vertices: Vec<Point>) -> Vec<Point> {
    let n = vertices.len() as f64;
    let c = vertices.iter().fold(Point::zeros(2), |acc, v| acc + v) / n;
    vertices.sort_by(|a, b| {
        let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
        let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
        ta.total_cmp(&tb)
    });
    vertices
}

struct Frame {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Frame {
    fn px(&self, p: &Point) -> (f64, f64) {
        (CANVAS / 2.0 + (p[0] - self.cx) * self.scale, CANVAS / 2.0 - (p[1] - self.cy) * self.scale)
    }

    fn points(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|p| {
                let (x, y) = self.px(p);
                format!("{x:.4},{y:.4}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Renders the chambers of a planar realization meeting `window`, optionally
/// coloured by coset and overlaid with `[x₀, w x₀]` and its gallery.
pub fn export_tiling(
    real: &EuclideanRealization,
    window: Window,
    coloring: Coloring,
    overlay: Option<(&Element, u64)>,
) -> Result<Tiling, GeometryError> {
    if real.dim() != 2 {
        return Err(GeometryError::DimensionNotTwo { dim: real.dim() });
    }
    if window.radius.is_nan() || window.radius <= 0.0 {
        return Err(GeometryError::Precondition("window radius must be positive".into()));
    }
    let x0 = real.basepoint();
    let frame = Frame { cx: x0[0], cy: x0[1], scale: CANVAS / (2.0 * window.radius) };
    let chambers = chambers_in_window(real, window)?;

    let mut cosets: HashMap<Word, usize> = HashMap::new();
    let mut fills = Vec::with_capacity(chambers.len());
    for w in &chambers {
        let fill = match coloring {
            Coloring::Plain => PLAIN_FILL,
            Coloring::Cosets(t) => {
                let rep = min_left_coset_rep(w, t)?.nf().clone();
                let next = cosets.len();
                PALETTE[*cosets.entry(rep).or_insert(next) % PALETTE.len()]
            }
        };
        fills.push(fill);
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>"#);
    let _ = writeln!(svg, r##"<g id="chambers" stroke="#555555" stroke-width="0.5">"##);
    for (w, fill) in chambers.iter().zip(&fills) {
        let poly = ordered_polygon(real.chamber_vertices(w));
        let nf: Vec<String> = w.letters().iter().map(usize::to_string).collect();
        let _ =
            writeln!(svg, r#"<polygon points="{}" fill="{fill}" data-nf="{}"/>"#, frame.points(&poly), nf.join(","));
    }
    let _ = writeln!(svg, "</g>");

    let overlay = match overlay {
        None => None,
        Some((w, seed)) => {
            let (word, base) = if w.is_identity() {
                (Word::empty(), x0.clone())
            } else {
                let c = crossing_word(real, w, seed)?;
                (c.word, Point::from_column_slice(&c.basepoint))
            };
            let end = real.apply(w, &base);
            let gallery = Gallery::new(real, &word, &base);
            let d_h = hausdorff(&base, &end, &gallery, real.diam() / 1000.0).value;
            let (ax, ay) = frame.px(&base);
            let (bx, by) = frame.px(&end);
            let _ = writeln!(svg, r#"<g id="overlay" fill="none">"#);
            let _ = writeln!(
                svg,
                r##"<polyline id="gallery" points="{}" stroke="#1f4e9e" stroke-width="2"/>"##,
                frame.points(&gallery.points())
            );
            let _ = writeln!(
                svg,
                r##"<line id="segment" x1="{ax:.4}" y1="{ay:.4}" x2="{bx:.4}" y2="{by:.4}" stroke="#c0392b" stroke-width="1.5"/>"##
            );
            let _ = writeln!(svg, "</g>");
            Some(OverlaySummary {
                w: w.clone(),
                word,
                gallery_vertices: gallery.vertices.len(),
                d_h,
                pass: d_h <= real.diam() + GEODESIC_TOL,
            })
        }
    };
    svg.push_str("</svg>\n");
    Ok(Tiling { svg, chambers, fills, overlay })
}

#[cfg(test)]
mod tests {
    use super::*;
    use coxwalls::geometry::build_realization;
    use coxwalls::named;
    use coxwalls::parabolic::is_member;

    #[test]
    fn rejects_non_planar_realizations() {
        let real = build_realization(&named::infinite_dihedral()).unwrap();
        let err = export_tiling(&real, Window { radius: 3.0 }, Coloring::Plain, None).unwrap_err();
        assert!(matches!(err, GeometryError::DimensionNotTwo { dim: 1 }));
    }

    #[test]
    fn subgroup_chambers_share_a_fill() {
        let sys = named::a2_tilde();
        let real = build_realization(&sys).unwrap();
        let t = GeneratorSubset::from_indices([0, 1]);
        let tiling = export_tiling(&real, Window { radius: 3.0 }, Coloring::Cosets(t), None).unwrap();
        let members: Vec<_> = tiling
            .chambers
            .iter()
            .zip(&tiling.fills)
            .filter(|(w, _)| is_member(w, t).unwrap())
            .map(|(_, f)| *f)
            .collect();
        assert_eq!(members.len(), 6);
        assert!(members.iter().all(|f| *f == members[0]));
        assert!(tiling.fills.iter().any(|f| *f != members[0]));
    }

    #[test]
    fn overlay_gallery_has_one_vertex_per_prefix() {
        let sys = named::a2_tilde();
        let real = build_realization(&sys).unwrap();
        let w = Element::from_letters(&sys, &[0, 1, 2, 0, 1, 2]).unwrap();
        assert_eq!(w.length(), 6);
        let tiling = export_tiling(&real, Window { radius: 5.0 }, Coloring::Plain, Some((&w, 0))).unwrap();
        let o = tiling.overlay.unwrap();
        assert_eq!(o.gallery_vertices, 7);
        assert!(o.pass);
        let line = tiling.svg.lines().find(|l| l.contains(r#"id="gallery""#)).unwrap();
        let pts = line.split('"').nth(3).unwrap();
        assert_eq!(pts.split(' ').count(), 7);
    }

    #[test]
    fn output_is_deterministic() {
        let real = build_realization(&named::c2_tilde()).unwrap();
        let w = Element::from_letters(real.system(), &[0, 1, 2, 1]).unwrap();
        let a = export_tiling(
            &real,
            Window { radius: 4.0 },
            Coloring::Cosets(GeneratorSubset::singleton(0)),
            Some((&w, 7)),
        )
        .unwrap();
        let b = export_tiling(
            &real,
            Window { radius: 4.0 },
            Coloring::Cosets(GeneratorSubset::singleton(0)),
            Some((&w, 7)),
        )
        .unwrap();
        assert_eq!(a.svg, b.svg);
        assert!(a.chambers.len() > 10);
    }
}
