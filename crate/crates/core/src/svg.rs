//! SVG 1.1 pictures of 𝒟(G): the strip, every candidate arc, the lower
//! boundary in bold and optional zero markers.

use std::fmt::Write as _;

use rug::Rational;

use crate::error::Result;
use crate::fundomain::{candidate_arc_list, lower_boundary};
use crate::groups::GroupSpec;
use crate::zerocert::ZeroCertificate;

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Output width in pixels; the height follows from the aspect ratio.
    pub width: u32,
    /// Real-part brackets of located zeros, drawn on the lower boundary.
    pub zeros: Vec<(Rational, Rational)>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 640, zeros: Vec::new() }
    }
}

impl SvgOptions {
    pub fn with_certificate(cert: &ZeroCertificate) -> Self {
        SvgOptions { zeros: cert.brackets(), ..Default::default() }
    }
}

struct Frame {
    x0: f64,
    y_top: f64,
    scale: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        (x - self.x0) * self.scale
    }
    fn py(&self, y: f64) -> f64 {
        (self.y_top - y) * self.scale
    }
}

fn f(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Renders 𝒟(G). Exact groups show `h` translated copies of the parent's domain.
pub fn render_domain_svg(g: &GroupSpec, opts: &SvgOptions) -> Result<String> {
    let boundary = lower_boundary(g)?;
    let arcs = candidate_arc_list(g)?;
    let half = if g.is_exact() { 0.5 } else { 0.5 / g.h() as f64 };
    let low = boundary
        .iter()
        .map(|b| b.point_at(b.x_lo.clone()).map(|p| p.y2.to_f64().sqrt()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let top = boundary.iter().map(|b| b.sq_radius().to_f64().sqrt()).fold(0.0, f64::max);
    let pad = 0.15 * half;
    let y_top = (top * 1.6).max(top + 2.0 * half);
    let width = opts.width.max(64) as f64;
    let fr = Frame { x0: -half - pad, y_top, scale: width / (2.0 * (half + pad)) };
    let height = y_top * fr.scale + 1.0;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(width),
        f(height),
        f(width),
        f(height)
    );
    let _ = writeln!(s, "  <title>Fundamental domain of {}</title>", g.label());
    let (sl, sr) = (fr.px(-half), fr.px(half));
    let _ = writeln!(
        s,
        r#"  <defs><clipPath id="strip"><rect x="{}" y="0" width="{}" height="{}"/></clipPath></defs>"#,
        f(sl),
        f(sr - sl),
        f(height)
    );
    let _ = writeln!(s, r##"  <rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##, f(width), f(height));
    let _ = writeln!(
        s,
        r##"  <line x1="0" y1="{0}" x2="{1}" y2="{0}" stroke="#888888" stroke-width="1"/>"##,
        f(fr.py(0.0)),
        f(width)
    );
    for x in [-half, half] {
        let _ = writeln!(
            s,
            r##"  <line x1="{0}" y1="0" x2="{0}" y2="{1}" stroke="#000000" stroke-width="1.5"/>"##,
            f(fr.px(x)),
            f(fr.py(low))
        );
    }

    let _ = writeln!(s, r##"  <g clip-path="url(#strip)" fill="none" stroke="#9aa7b8" stroke-width="0.8">"##);
    for (arc, class) in &arcs {
        let (p, r2) = arc.center_sq().expect("finite arc");
        let (cx, r) = (p.to_f64(), r2.to_f64().sqrt());
        let _ = writeln!(
            s,
            r#"    <path d="M {} {} A {} {} 0 0 1 {} {}"><title>{}</title></path>"#,
            f(fr.px(cx - r)),
            f(fr.py(0.0)),
            f(r * fr.scale),
            f(r * fr.scale),
            f(fr.px(cx + r)),
            f(fr.py(0.0)),
            class
        );
    }
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(s, r##"  <g fill="none" stroke="#000000" stroke-width="3" stroke-linecap="round">"##);
    for b in &boundary {
        let a = b.point_at(b.x_lo.clone())?;
        let e = b.point_at(b.x_hi.clone())?;
        let r = b.sq_radius().to_f64().sqrt() * fr.scale;
        let _ = writeln!(
            s,
            r#"    <path d="M {} {} A {} {} 0 0 1 {} {}"/>"#,
            f(fr.px(a.x.to_f64())),
            f(fr.py(a.y2.to_f64().sqrt())),
            f(r),
            f(r),
            f(fr.px(e.x.to_f64())),
            f(fr.py(e.y2.to_f64().sqrt()))
        );
    }
    let _ = writeln!(s, "  </g>");

    if !opts.zeros.is_empty() {
        let _ = writeln!(s, r##"  <g fill="#c0392b" stroke="none">"##);
        for (lo, hi) in &opts.zeros {
            let mid: Rational = Rational::from(lo + hi) / 2u32;
            for x in [mid.clone(), -mid] {
                if let Some(b) = boundary.iter().find(|b| b.x_lo <= x && x <= b.x_hi) {
                    let p = b.point_at(x.clone())?;
                    let _ = writeln!(
                        s,
                        r#"    <circle cx="{}" cy="{}" r="3"/>"#,
                        f(fr.px(p.x.to_f64())),
                        f(fr.py(p.y2.to_f64().sqrt()))
                    );
                }
            }
        }
        let _ = writeln!(s, "  </g>");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bold_paths(svg: &str) -> usize {
        let start = svg.find(r#"stroke-width="3""#).unwrap();
        let end = start + svg[start..].find("</g>").unwrap();
        svg[start..end].matches("<path").count()
    }

    #[test]
    fn bold_arc_counts() {
        let two = render_domain_svg(&GroupSpec::parse("2+").unwrap(), &SvgOptions::default()).unwrap();
        assert!(two.starts_with("<?xml") && two.contains(r#"version="1.1""#));
        assert_eq!(bold_paths(&two), 1);
        let six = render_domain_svg(&GroupSpec::parse("6+").unwrap(), &SvgOptions::default()).unwrap();
        assert_eq!(bold_paths(&six), 2);
        let nonexact = render_domain_svg(&GroupSpec::parse("3|3").unwrap(), &SvgOptions::default()).unwrap();
        let exact = render_domain_svg(&GroupSpec::parse("3||3").unwrap(), &SvgOptions::default()).unwrap();
        assert_eq!(bold_paths(&exact), 3 * bold_paths(&nonexact));
    }
}
