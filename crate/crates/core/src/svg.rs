//! Minimal deterministic SVG writer. Numbers are printed with a fixed
//! precision so output is byte-stable.

use std::fmt::Write;

pub struct Svg {
    body: String,
    width: f64,
    height: f64,
}

pub fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        Svg {
            body: String::new(),
            width,
            height,
        }
    }

    pub fn raw(&mut self, s: &str) {
        self.body.push_str(s);
        self.body.push('\n');
    }

    pub fn line(&mut self, class: &str, x1: f64, y1: f64, x2: f64, y2: f64, extra: &str) {
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"{extra}/>"#
        );
    }

    pub fn circle(&mut self, class: &str, cx: f64, cy: f64, r: f64, title: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle class="{class}" cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}"><title>{}</title></circle>"#,
            esc(title)
        );
    }

    pub fn rect(&mut self, class: &str, x: f64, y: f64, w: f64, h: f64) {
        let _ = writeln!(
            self.body,
            r#"<rect class="{class}" x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}"/>"#
        );
    }

    pub fn text(&mut self, class: &str, x: f64, y: f64, anchor: &str, s: &str) {
        let _ = writeln!(
            self.body,
            r#"<text class="{class}" x="{x:.2}" y="{y:.2}" text-anchor="{anchor}">{}</text>"#,
            esc(s)
        );
    }

    pub fn path(&mut self, class: &str, d: &str, extra: &str) {
        let _ = writeln!(self.body, r#"<path class="{class}" d="{d}"{extra}/>"#);
    }

    pub fn finish(self, style: &str) -> Vec<u8> {
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
            w = self.width,
            h = self.height
        );
        let _ = writeln!(out, "<style>{style}</style>");
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out.into_bytes()
    }
}
