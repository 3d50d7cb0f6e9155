//! Static SVG pictures: kites, sheaths, triangulated polygons and the
//! central projection of a three-dimensional sheath walk.
//!
//! Layouts are computed from the data alone, so the output is
//! byte-for-byte reproducible.

use std::collections::BTreeMap;
use std::fmt::Write;

use lotus_core::kite::SailShape;
use lotus_core::lotus2d::Triangulation;
use lotus_core::ndlotus::{central_projection, NdError, SheathWalk};
use lotus_core::{AstreId, Kite, LatticeVec, Point2Q, Rational, SheathResult};

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_owned()
    } else {
        s.to_owned()
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

struct Canvas {
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(width: f64, height: f64) -> Self {
        Canvas { width, height, body: String::new() }
    }

    fn polygon(&mut self, pts: &[(f64, f64)], style: &str) {
        let pts: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
        writeln!(self.body, "  <polygon points=\"{}\" {style}/>", pts.join(" ")).unwrap();
    }

    fn polyline(&mut self, pts: &[(f64, f64)], style: &str) {
        let pts: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
        writeln!(self.body, "  <polyline points=\"{}\" fill=\"none\" {style}/>", pts.join(" ")).unwrap();
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), style: &str) {
        writeln!(
            self.body,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>",
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        )
        .unwrap();
    }

    fn circle(&mut self, c: (f64, f64), r: f64, style: &str) {
        writeln!(self.body, "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/>", num(c.0), num(c.1), num(r)).unwrap();
    }

    fn text(&mut self, at: (f64, f64), s: &str) {
        writeln!(
            self.body,
            "  <text x=\"{}\" y=\"{}\" font-size=\"11\" font-family=\"sans-serif\">{s}</text>",
            num(at.0),
            num(at.1)
        )
        .unwrap();
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n  <rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = num(self.width),
            h = num(self.height),
        )
    }
}

const SAIL: &str = "fill=\"#f3e6c4\" stroke=\"#8a6d3b\" stroke-width=\"1\"";
const CORD: &str = "stroke=\"#1f4e9c\" stroke-width=\"2\"";

/// One panel per complete sail, left to right in construction order, after
/// a small panel holding the axis point `O`. Charts are sheared by
/// `(a, b) ↦ (a − b/2, b)` so that petals look like triangles. Satellite
/// cords are straight; free cords are quadratic curves between panels.
pub fn kite_to_svg(k: &Kite) -> String {
    const SCALE: f64 = 60.0;
    const PAD: f64 = 30.0;
    let shear = |x: f64, y: f64| (x - y / 2.0, y);

    let mut panels = Vec::new();
    let mut left = 2.0 * PAD;
    let mut top_extent: f64 = 1.0;
    for sail in k.complete_sails() {
        let pts: Vec<(f64, f64)> = sail.chart().values().map(|v| shear(v.a as f64, v.b as f64)).collect();
        let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let max_y = pts.iter().map(|p| p.1).fold(0.0, f64::max);
        top_extent = top_extent.max(max_y);
        panels.push((left, min_x));
        left += (max_x - min_x) * SCALE + 2.0 * PAD;
    }
    let height = top_extent * SCALE + 3.0 * PAD;
    let base_y = height - PAD;
    let mut canvas = Canvas::new(left, height);

    let place = |panel: usize, p: Point2Q| {
        let (offset, min_x) = panels[panel];
        let (x, y) = shear(to_f64(p.x), to_f64(p.y));
        (offset + (x - min_x) * SCALE, base_y - y * SCALE)
    };
    let axis = (PAD, base_y - SCALE / 2.0);
    let mut stars: BTreeMap<&AstreId, (f64, f64)> = BTreeMap::new();
    stars.insert(&k.astres()[0], axis);

    for (i, sail) in k.complete_sails().iter().enumerate() {
        for a in sail.members() {
            let es = k.elementary_sail(a).expect("member has a sail");
            let corner = |b: &AstreId| place(i, Point2Q::from_lattice(sail.vertex(b).expect("charted")));
            let pts = match &es.shape {
                SailShape::Half { base } => vec![corner(base), corner(a), place(i, es.star)],
                SailShape::Simple { first_base, second_base } => {
                    vec![corner(first_base), corner(second_base), corner(a)]
                }
            };
            canvas.polygon(&pts, SAIL);
            stars.insert(a, place(i, es.star));
        }
    }
    canvas.circle(axis, 4.0, "fill=\"black\"");
    canvas.text((axis.0 - 4.0, axis.1 + 16.0), "O");
    for cord in k.cords() {
        let (from, to) = (stars[&cord.from], stars[&cord.astre]);
        match cord.kind {
            lotus_core::kite::CordKind::Satellite => canvas.line(from, to, CORD),
            lotus_core::kite::CordKind::Libre => {
                let control = ((from.0 + to.0) / 2.0, from.1.min(to.1) - PAD);
                writeln!(
                    canvas.body,
                    "  <path d=\"M {} {} Q {} {} {} {}\" fill=\"none\" {CORD} stroke-dasharray=\"6 3\"/>",
                    num(from.0),
                    num(from.1),
                    num(control.0),
                    num(control.1),
                    num(to.0),
                    num(to.1)
                )
                .unwrap();
            }
        }
    }
    for (a, &p) in stars.iter().filter(|(a, _)| !a.is_base()) {
        canvas.circle(p, 3.0, "fill=\"#1f4e9c\"");
        canvas.text((p.0 + 4.0, p.1 - 4.0), a.as_str());
    }
    canvas.finish()
}

/// Petals, the two boundary polylines and the ray.
pub fn sheath_to_svg(s: &SheathResult) -> String {
    const SIZE: f64 = 400.0;
    const PAD: f64 = 20.0;
    let extent = s.endpoint.a.max(s.endpoint.b) as f64;
    let scale = SIZE / extent;
    let at = |v: LatticeVec| (PAD + v.a as f64 * scale, PAD + SIZE - v.b as f64 * scale);
    let mut canvas = Canvas::new(SIZE + 2.0 * PAD, SIZE + 2.0 * PAD);
    for p in &s.petals {
        canvas.polygon(&[at(p.u), at(p.w), at(p.apex())], SAIL);
    }
    let line = |pts: &[LatticeVec]| pts.iter().map(|&v| at(v)).collect::<Vec<_>>();
    canvas.polyline(&line(&s.p1), "stroke=\"#b22222\" stroke-width=\"2\"");
    canvas.polyline(&line(&s.p2), "stroke=\"#1f4e9c\" stroke-width=\"2\"");
    canvas.line(at(LatticeVec::ZERO), at(s.endpoint), "stroke=\"black\" stroke-dasharray=\"4 3\"");
    canvas.text(at(s.endpoint), &s.endpoint.to_string());
    canvas.finish()
}

/// The petals of a triangulated polygon, with the realizing vectors.
pub fn polygon_to_svg(vectors: &[LatticeVec], t: &Triangulation) -> String {
    const PAD: f64 = 30.0;
    let min_x = vectors.iter().map(|v| v.a).min().unwrap_or(0).min(0) as f64;
    let max_x = vectors.iter().map(|v| v.a).max().unwrap_or(0).max(0) as f64;
    let max_y = vectors.iter().map(|v| v.b).max().unwrap_or(0).max(1) as f64;
    let scale = (400.0 / (max_x - min_x).max(max_y)).min(60.0);
    let width = (max_x - min_x) * scale + 2.0 * PAD;
    let height = max_y * scale + 2.0 * PAD;
    let at = |v: LatticeVec| (PAD + (v.a as f64 - min_x) * scale, height - PAD - v.b as f64 * scale);
    let mut canvas = Canvas::new(width, height);
    for &[l, m, r] in &t.triangles {
        canvas.polygon(&[at(vectors[l]), at(vectors[m]), at(vectors[r])], SAIL);
    }
    let origin = at(LatticeVec::ZERO);
    for (k, &v) in vectors.iter().enumerate() {
        canvas.line(origin, at(v), "stroke=\"#999\" stroke-width=\"0.5\"");
        canvas.circle(at(v), 2.5, "fill=\"black\"");
        canvas.text((at(v).0 + 4.0, at(v).1 - 4.0), &format!("v{k}"));
    }
    canvas.circle(origin, 2.5, "fill=\"#b22222\"");
    canvas.text((origin.0 + 4.0, origin.1 + 14.0), "0");
    canvas.finish()
}

/// Barycentric picture of a three-dimensional walk: each base is drawn
/// through the central projection onto `x₁ + x₂ + x₃ = 1`, until the walk
/// stops or leaves the full dimension.
pub fn nd_sheath_to_svg(w: &[i64], depth: usize) -> Result<String, NdError> {
    if w.len() != 3 {
        return Err(NdError::NotABasis);
    }
    const SIDE: f64 = 400.0;
    const PAD: f64 = 20.0;
    let height = SIDE * 3f64.sqrt() / 2.0;
    let corners = [(PAD, PAD + height), (PAD + SIDE, PAD + height), (PAD + SIDE / 2.0, PAD)];
    let project = |v: &[i64]| {
        let l = central_projection(v);
        let mut p = (0.0, 0.0);
        for (c, li) in corners.iter().zip(&l) {
            p.0 += c.0 * to_f64(*li);
            p.1 += c.1 * to_f64(*li);
        }
        p
    };
    let mut canvas = Canvas::new(SIDE + 2.0 * PAD, height + 2.0 * PAD);
    let mut walk = SheathWalk::new(w)?;
    let mut bases = vec![walk.base()];
    for _ in 0..depth {
        if walk.next().is_none() || walk.base().entries().len() < 3 {
            break;
        }
        bases.push(walk.base());
    }
    for b in &bases {
        let pts: Vec<(f64, f64)> = b.entries().iter().map(|(_, v)| project(v)).collect();
        canvas.polygon(&pts, "fill=\"#f3e6c4\" fill-opacity=\"0.5\" stroke=\"#8a6d3b\"");
    }
    for (k, c) in corners.iter().enumerate() {
        canvas.text((c.0 - 4.0, c.1 + if k == 2 { -6.0 } else { 14.0 }), &format!("e{}", k + 1));
    }
    canvas.circle(project(w), 3.0, "fill=\"#b22222\"");
    Ok(canvas.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(2.5), "2.5");
        assert_eq!(num(-0.001), "0");
        assert_eq!(num(1.234), "1.23");
    }
}
