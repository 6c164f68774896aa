//! SVG rendering of a placement.

use std::fmt::Write as _;

use crate::io::text::{truncate_or_flow_labels, FitPolicy, TextMetrics};
use crate::io::xml::escape;
use crate::model::Feature;
use crate::select::{Outcome, PlacementResult};
use crate::trellis::Trellis;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Draw the trellis cell grid under everything else.
    pub show_trellis: bool,
    pub point_radius: f64,
    pub text: TextMetrics,
    pub fit: FitPolicy,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { show_trellis: false, point_radius: 1.5, text: TextMetrics::default(), fit: FitPolicy::Truncate }
    }
}

/// Layers, bottom to top: optional trellis grid, feature points (unlabeled
/// ones dimmed), then one `<g>` per label holding its box and text.
pub fn emit_svg(result: &PlacementResult, features: &[Feature], opts: &SvgOptions) -> String {
    let (w, h) = (result.viewport.width_px, result.viewport.height_px);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);

    if opts.show_trellis {
        let t = Trellis::new(w as f64, h as f64, result.conflict_dims);
        let _ = writeln!(s, r##"<g id="trellis" stroke="#e4e4ee" stroke-width="0.5">"##);
        for c in 1..t.n_cols {
            let x = c as f64 * t.cell_w;
            let _ = writeln!(s, r#"<line x1="{x:.3}" y1="0" x2="{x:.3}" y2="{h}"/>"#);
        }
        for r in 1..t.n_rows {
            let y = r as f64 * t.cell_h;
            let _ = writeln!(s, r#"<line x1="0" y1="{y:.3}" x2="{w}" y2="{y:.3}"/>"#);
        }
        s.push_str("</g>\n");
    }

    let _ = writeln!(s, r#"<g id="points">"#);
    for (i, p) in result.projected.iter().enumerate() {
        if !p.on_screen {
            continue;
        }
        let (fill, opacity) = match result.outcomes[i] {
            Outcome::Labeled { .. } => ("#1f3b73", 1.0),
            Outcome::Unlabeled(_) => ("#9aa4b8", 0.45),
        };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{}" fill="{fill}" fill-opacity="{opacity}"/>"#,
            p.x, p.y, opts.point_radius
        );
    }
    s.push_str("</g>\n");

    let texts: Vec<&str> = features.iter().map(|f| f.primary_text.as_str()).collect();
    let fitted = truncate_or_flow_labels(&texts, result.dims.width, opts.text, opts.fit);
    let font = (result.dims.height * 0.8).max(1.0);
    let _ = writeln!(s, r#"<g id="labels" font-family="monospace" font-size="{font:.2}">"#);
    for (i, outcome) in result.outcomes.iter().enumerate() {
        let Outcome::Labeled { rect, .. } = outcome else { continue };
        let _ = writeln!(
            s,
            r##"<g class="label"><rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="#ffffff" fill-opacity="0.7" stroke="#b0b8c8" stroke-width="0.5"/><text x="{:.3}" y="{:.3}">{}</text></g>"##,
            rect.left,
            rect.top,
            rect.width,
            rect.height,
            rect.left + opts.text.padding,
            rect.top + rect.height * 0.8,
            escape(&fitted[i])
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}
