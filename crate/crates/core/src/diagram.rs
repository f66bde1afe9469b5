//! Staircase pictures of value semigroups along a normalization chain.
//!
//! Cells: `#` element of the semigroup, `.` gap, `G` the conductor vector,
//! `T` / `t` the point `tau` when it is an element / a gap.

use std::fmt::Write as _;

use crate::chain::ChainReport;
use crate::error::{Error, Result};
use crate::semigroup::ValueSemigroup;

fn cell(sg: &ValueSemigroup, alpha: &[u32]) -> char {
    let tau = sg.tau();
    let member = sg.contains_nat(alpha);
    if alpha == sg.gamma() {
        'G'
    } else if alpha.iter().zip(&tau).all(|(&a, &t)| a as i64 == t) {
        if member {
            'T'
        } else {
            't'
        }
    } else if member {
        '#'
    } else {
        '.'
    }
}

fn axis(width: u32) -> String {
    (0..=width).map(|i| char::from_digit(i % 10, 10).unwrap()).collect()
}

fn grid(out: &mut String, sg: &ValueSemigroup, frame: (u32, u32), point: impl Fn(u32, u32) -> Vec<u32>, labels: (&str, &str)) {
    for row in (0..=frame.1).rev() {
        let line: String = (0..=frame.0).map(|col| cell(sg, &point(col, row))).collect();
        let _ = writeln!(out, "{row:>4} |{line}");
    }
    let _ = writeln!(out, "     +{}", "-".repeat(frame.0 as usize + 1));
    let _ = writeln!(out, "      {}  {} right, {} up", axis(frame.0), labels.0, labels.1);
}

fn coords(v: impl IntoIterator<Item = impl std::fmt::Display>) -> String {
    let parts: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Text picture of `sg` inside the box `[0, frame]`.
pub fn render_semigroup_text(sg: &ValueSemigroup, frame: &[u32]) -> Result<String> {
    let s = sg.branch_count();
    if frame.len() != s {
        return Err(Error::BranchCountMismatch { left: s, right: frame.len() });
    }
    let mut out = String::new();
    match s {
        1 => {
            let line: String = (0..=frame[0]).map(|a| cell(sg, &[a])).collect();
            let _ = writeln!(out, "     |{line}");
            let _ = writeln!(out, "      {}  a1", axis(frame[0]));
        }
        2 => grid(&mut out, sg, (frame[0], frame[1]), |c, r| vec![c, r], ("a1", "a2")),
        3 => {
            for first in 0..=frame[0] {
                let _ = writeln!(out, "  slice a1 = {first}");
                grid(&mut out, sg, (frame[1], frame[2]), |c, r| vec![first, c, r], ("a2", "a3"));
            }
        }
        _ => return Err(Error::Unsupported(format!("staircase pictures with {s} branches"))),
    }
    Ok(out)
}

/// Common frame for all rings of a chain: `gamma(A_0) + 1` in each coordinate.
pub fn chain_frame(report: &ChainReport) -> Vec<u32> {
    report.steps[0].ring.gamma().iter().map(|g| g + 1).collect()
}

/// One panel per ring of the chain, all drawn in the same frame.
pub fn render_chain_text(name: &str, report: &ChainReport) -> Result<String> {
    let frame = chain_frame(report);
    let mut out = String::new();
    let _ = writeln!(out, "{name}: n = {}", report.n);
    for step in &report.steps {
        let ring = &step.ring;
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "A{}  type {}  gamma={}  tau={}  delta={}",
            step.index,
            step.recognized,
            coords(ring.gamma()),
            coords(ring.tau()),
            step.delta
        );
        out.push_str(&render_semigroup_text(ring.semigroup(), &frame)?);
    }
    Ok(out)
}

const UNIT: u32 = 14;

fn svg_panel(out: &mut String, sg: &ValueSemigroup, frame: &[u32], x0: u32, y0: u32, title: &str) -> (u32, u32) {
    let (w, h) = (frame[0] + 1, frame.get(1).map_or(1, |f| f + 1));
    let point = |c: u32, r: u32| if frame.len() == 1 { vec![c] } else { vec![c, r] };
    let _ = writeln!(out, r#"<text x="{x0}" y="{}" font-size="11">{title}</text>"#, y0 + 10);
    let top = y0 + 16;
    for r in 0..h {
        for c in 0..w {
            let alpha = point(c, r);
            let fill = match cell(sg, &alpha) {
                '#' => "#333",
                'G' => "#c33",
                'T' => "#36c",
                't' => "#9bd",
                _ => "#fff",
            };
            let x = x0 + c * UNIT;
            let y = top + (h - 1 - r) * UNIT;
            let _ = writeln!(
                out,
                r##"<rect x="{x}" y="{y}" width="{UNIT}" height="{UNIT}" fill="{fill}" stroke="#999"/>"##
            );
        }
    }
    (w * UNIT, h * UNIT + 20)
}

/// Vector version of [`render_chain_text`]; supports one and two branches.
pub fn render_chain_svg(name: &str, report: &ChainReport) -> Result<String> {
    let frame = chain_frame(report);
    if frame.len() > 2 {
        return Err(Error::Unsupported(format!("vector pictures with {} branches", frame.len())));
    }
    let mut body = String::new();
    let (mut x, mut width, mut height) = (8, 8, 0);
    for step in &report.steps {
        let title = format!("A{} {}", step.index, step.recognized);
        let (w, h) = svg_panel(&mut body, step.ring.semigroup(), &frame, x, 24, &title);
        x += w + 24;
        width = x;
        height = height.max(h + 32);
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace">"#
    );
    let _ = writeln!(out, r#"<text x="8" y="14" font-size="12">{name}: n = {}</text>"#, report.n);
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}
