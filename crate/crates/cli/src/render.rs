//! Deterministic pictures of an arm in its tunnel.

use std::fmt::Write;

use cubeplan::{ArmSpec, ArmState};

/// Pixels per lattice unit.
pub const UNIT: i32 = 40;
const MARGIN: i32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Svg,
    Ascii,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Svg => "svg",
            Format::Ascii => "txt",
        }
    }
}

pub fn render(spec: ArmSpec, state: &ArmState, format: Format) -> String {
    match format {
        Format::Svg => svg(spec, state),
        Format::Ascii => ascii(spec, state),
    }
}

/// The tunnel as a grid of `length × height` unit cells, the arm as a
/// polyline, and the base as a filled dot.
pub fn svg(spec: ArmSpec, state: &ArmState) -> String {
    let (w, h) = (spec.length as i32, spec.height as i32);
    let px = |x: i32| MARGIN + UNIT * x;
    let py = |y: i32| MARGIN + UNIT * (h - y);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {0} {1}">"#,
        2 * MARGIN + UNIT * w,
        2 * MARGIN + UNIT * h
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(out, r##"<g stroke="#cccccc" stroke-width="1">"##);
    for x in 0..=w {
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{0}" y2="{}"/>"#,
            px(x),
            py(h),
            py(0)
        );
    }
    for y in 1..h {
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{1}"/>"#,
            px(0),
            py(y),
            px(w)
        );
    }
    let _ = writeln!(out, "</g>");
    for y in [0, h] {
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{1}" stroke="#333333" stroke-width="3"/>"##,
            px(0),
            py(y),
            px(w)
        );
    }
    let points: Vec<String> = state
        .points()
        .iter()
        .map(|&(x, y)| format!("{},{}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f77b4" stroke-width="6" stroke-linecap="round" stroke-linejoin="round"/>"##,
        points.join(" ")
    );
    let _ = writeln!(
        out,
        r##"<circle cx="{}" cy="{}" r="8" fill="#d62728"/>"##,
        px(0),
        py(0)
    );
    out.push_str("</svg>\n");
    out
}

/// Lattice points at even columns and rows: `+` on the arm, `.` elsewhere;
/// links drawn as `-` and `|`. The top row is the ceiling.
pub fn ascii(spec: ArmSpec, state: &ArmState) -> String {
    let (w, h) = (spec.length, spec.height);
    let mut grid = vec![vec![' '; 2 * w + 1]; 2 * h + 1];
    for y in 0..=h {
        for x in 0..=w {
            grid[2 * (h - y)][2 * x] = '.';
        }
    }
    let row = |y: i32| (2 * (h as i32 - y)) as usize;
    let points = state.points();
    for &(x, y) in &points {
        grid[row(y)][2 * x as usize] = '+';
    }
    for pair in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
        if y0 == y1 {
            grid[row(y0)][(x0 + x1) as usize] = '-';
        } else {
            grid[(row(y0) + row(y1)) / 2][2 * x0 as usize] = '|';
        }
    }
    let mut out = String::new();
    for line in grid {
        let line: String = line.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
