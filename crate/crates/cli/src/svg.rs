//! Wall diagrams for two ideals.
//!
//! The box `[0, x] × [0, y]` is mapped affinely onto a fixed viewBox.
//! Constancy regions are hatched, every C-facet is drawn as one solid
//! polyline (clipped to the box) and labelled with its wall. Floating point
//! appears only here, for drawing coordinates.

use std::fmt::Write;

use num_traits::ToPrimitive;

use mmi_core::enumerate::Cell;
use mmi_core::rational::{self, Rational};
use mmi_core::{Enumeration, Error, OrthantPoint, Resolution};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 50.0;

struct Frame {
    x: f64,
    y: f64,
}

impl Frame {
    fn map(&self, px: &Rational, py: &Rational) -> (f64, f64) {
        let span = SIZE - 2.0 * MARGIN;
        let fx = px.to_f64().unwrap_or(0.0) / self.x;
        let fy = py.to_f64().unwrap_or(0.0) / self.y;
        (MARGIN + fx * span, SIZE - MARGIN - fy * span)
    }

    fn map_point(&self, p: &OrthantPoint) -> (f64, f64) {
        self.map(&p.coords()[0], &p.coords()[1])
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(res: &Resolution, run: &Enumeration) -> Result<String, Error> {
    if run.corner.dim() != 2 {
        return Err(Error::GeometryUnsupported(run.corner.dim()));
    }
    let frame = Frame {
        x: run.corner.coords()[0].to_f64().unwrap_or(1.0),
        y: run.corner.coords()[1].to_f64().unwrap_or(1.0),
    };
    let (x0, y1) = frame.map(&rational::int(0), &run.corner.coords()[1]);
    let (x1, y0) = frame.map(&run.corner.coords()[0], &rational::int(0));

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">"#
    )
    .unwrap();
    s.push_str(
        r##"<defs>
<pattern id="hatch" patternUnits="userSpaceOnUse" width="8" height="8" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="8" stroke="#999" stroke-width="1"/></pattern>
"##,
    );
    writeln!(
        s,
        r#"<clipPath id="box"><rect x="{x0:.3}" y="{y1:.3}" width="{:.3}" height="{:.3}"/></clipPath>"#,
        x1 - x0,
        y0 - y1
    )
    .unwrap();
    s.push_str("</defs>\n");
    writeln!(
        s,
        r#"<rect class="box" x="{x0:.3}" y="{y1:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    )
    .unwrap();

    s.push_str("<g class=\"regions\" clip-path=\"url(#box)\">\n");
    for record in &run.records {
        if let Cell::Plane(components) = &record.cell {
            for piece in components.iter().flatten() {
                let pts: Vec<String> = piece
                    .vertices()
                    .iter()
                    .map(|v| {
                        let (a, b) = frame.map(&v[0], &v[1]);
                        format!("{a:.3},{b:.3}")
                    })
                    .collect();
                writeln!(
                    s,
                    r#"<polygon data-record="{}" points="{}" fill="url(#hatch)" fill-opacity="{:.2}" stroke="none"/>"#,
                    record.id,
                    pts.join(" "),
                    0.25 + 0.5 * (record.id % 2) as f64
                )
                .unwrap();
            }
        }
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"walls\" clip-path=\"url(#box)\">\n");
    for record in &run.records {
        for facet in &record.facets {
            let (a, b) = frame.map_point(&facet.from);
            let (c, d) = frame.map_point(&facet.to);
            writeln!(
                s,
                r#"<polyline data-record="{}" data-component="{}" points="{a:.3},{b:.3} {c:.3},{d:.3}" fill="none" stroke="black" stroke-width="2"/>"#,
                record.id,
                escape(res.graph().id(facet.component)),
            )
            .unwrap();
        }
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"labels\" clip-path=\"url(#box)\" font-family=\"monospace\" font-size=\"10\">\n");
    for record in &run.records {
        for facet in &record.facets {
            let h = record
                .region
                .halfspaces()
                .iter()
                .find(|h| h.component == facet.component)
                .expect("facet lies on a wall");
            let (a, b) = frame.map_point(&facet.midpoint);
            writeln!(
                s,
                r#"<text x="{:.3}" y="{:.3}">{} = {}</text>"#,
                a + 3.0,
                b - 3.0,
                escape(res.graph().id(facet.component)),
                escape(&rational::format(&h.rhs))
            )
            .unwrap();
        }
    }
    s.push_str("</g>\n");

    let corner = &run.corner;
    writeln!(
        s,
        r#"<text x="{x0:.3}" y="{:.3}" font-size="12">0</text><text x="{:.3}" y="{:.3}" font-size="12">{}</text><text x="{:.3}" y="{:.3}" font-size="12">{}</text>"#,
        y0 + 15.0,
        x1 - 10.0,
        y0 + 15.0,
        escape(&rational::format(&corner.coords()[0])),
        x0 - 30.0,
        y1 + 4.0,
        escape(&rational::format(&corner.coords()[1]))
    )
    .unwrap();
    s.push_str("</svg>\n");
    Ok(s)
}
