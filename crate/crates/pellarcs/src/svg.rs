//! Figure of the inverse image: interval, arc, real preimage, extremal points.

use std::fmt::Write;

use num_complex::Complex64;

use pellarcs_core::geometry::{ExtremalReport, Polyline, Window};

const WIDTH: f64 = 800.0;

struct Frame {
    window: Window,
    scale: f64,
    height: f64,
}

impl Frame {
    fn new(window: Window) -> Self {
        let scale = WIDTH / (window.re_max - window.re_min);
        let height = scale * (window.im_max - window.im_min);
        Frame { window, scale, height }
    }

    fn point(&self, z: Complex64) -> (f64, f64) {
        (
            (z.re - self.window.re_min) * self.scale,
            (self.window.im_max - z.im) * self.scale,
        )
    }

    fn points(&self, zs: &[Complex64]) -> String {
        let mut s = String::new();
        for &z in zs {
            let (x, y) = self.point(z);
            let _ = write!(s, "{x:.3},{y:.3} ");
        }
        s.trim_end().to_string()
    }
}

/// One SVG document with layers `preimage`, `interval`, `arc`, `extremals`.
///
/// The `extremals` layer holds one marker per reported extremal point.
pub fn render(window: Window, arc: &[Complex64], preimage: &[Polyline], report: &ExtremalReport) -> String {
    let f = Frame::new(window);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = WIDTH,
        h = f.height
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    let _ = writeln!(
        s,
        r##"<g id="preimage" fill="none" stroke="#888888" stroke-width="1" stroke-dasharray="2 3">"##
    );
    for line in preimage {
        let _ = writeln!(s, r#"<polyline points="{}"/>"#, f.points(line));
    }
    let _ = writeln!(s, "</g>");

    let (x0, y0) = f.point(Complex64::new(-1.0, 0.0));
    let (x1, y1) = f.point(Complex64::new(1.0, 0.0));
    let _ = writeln!(s, r##"<g id="interval" stroke="#000000" stroke-width="2.5">"##);
    let _ = writeln!(s, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}"/>"#);
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="arc" fill="none" stroke="#c62828" stroke-width="2.5">"##);
    let _ = writeln!(s, r#"<polyline points="{}"/>"#, f.points(arc));
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g id="extremals" fill="#1565c0">"##);
    let markers = report
        .on_interval
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .chain(report.on_arc.iter().copied());
    for z in markers {
        let (x, y) = f.point(z);
        let _ = writeln!(s, r#"<circle class="extremal" cx="{x:.3}" cy="{y:.3}" r="4"/>"#);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}
