//! SVG drawings of cascade codes.
//!
//! Both styles share one layout: level `i` holds one crossing, and the band
//! below it holds the `w_i` strands that leave it. The cascade style stacks
//! levels top to bottom; the disk style nests them as rings around the start
//! crossing, with the legs ending on the outer circle.

use std::f64::consts::PI;
use std::fmt::Write;

use tangle_core::{CascadeCode, Pattern, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Style {
    Cascade,
    Disk,
}

/// Where a strand of a band comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    /// The `t`-th down strand of the level's crossing.
    Crossing,
    /// Strand `j` of the band above, passing by.
    Pass(usize),
}

struct Level {
    pattern: Option<Pattern>,
    /// Indices into the band above; empty for the start crossing.
    grabbed: Vec<usize>,
    band: Vec<Source>,
}

fn layout(code: &CascadeCode) -> Result<Vec<Level>> {
    code.validate()?;
    let mut levels = vec![Level {
        pattern: None,
        grabbed: Vec::new(),
        band: vec![Source::Crossing; 4],
    }];
    let mut reference = 0;
    for s in &code.steps {
        let w = levels.last().map_or(4, |l| l.band.len());
        let up = s.pattern.up_degree();
        let down = s.pattern.down_degree();
        let p = (reference + s.shift) % w;
        let grabbed: Vec<usize> = (0..up).map(|j| (p + j) % w).collect();
        let mut band = Vec::with_capacity(w - up + down);
        let first;
        if p + up <= w {
            band.extend((0..p).map(Source::Pass));
            first = band.len();
            band.extend(std::iter::repeat(Source::Crossing).take(down));
            band.extend((p + up..w).map(Source::Pass));
        } else {
            band.extend((p + up - w..p).map(Source::Pass));
            first = band.len();
            band.extend(std::iter::repeat(Source::Crossing).take(down));
        }
        reference = first + s.pattern.reference_offset();
        levels.push(Level {
            pattern: Some(s.pattern),
            grabbed,
            band,
        });
    }
    Ok(levels)
}

/// Maps (fractional strand index, band width, depth) to the page.
trait Placement {
    fn place(&self, index: f64, width: usize, depth: f64) -> (f64, f64);
    fn size(&self) -> (f64, f64);
    /// Path data for a strand between two points.
    fn strand(&self, from: (f64, f64), to: (f64, f64)) -> String;
}

struct Columns {
    width: f64,
    step: f64,
    depth: usize,
}

impl Placement for Columns {
    fn place(&self, index: f64, width: usize, depth: f64) -> (f64, f64) {
        let x = 20.0 + (self.width - 40.0) * (index.rem_euclid(width as f64) + 0.5) / width as f64;
        (x, 30.0 + (depth - 1.0) * self.step)
    }

    fn size(&self) -> (f64, f64) {
        (self.width, 60.0 + self.depth as f64 * self.step)
    }

    fn strand(&self, from: (f64, f64), to: (f64, f64)) -> String {
        let my = (from.1 + to.1) / 2.0;
        format!("M {} C {} {} {}", pt(from.0, from.1), pt(from.0, my), pt(to.0, my), pt(to.0, to.1))
    }
}

struct Rings {
    step: f64,
    depth: usize,
}

impl Rings {
    fn center(&self) -> f64 {
        20.0 + self.depth as f64 * self.step
    }
}

impl Placement for Rings {
    fn place(&self, index: f64, width: usize, depth: f64) -> (f64, f64) {
        let r = (depth - 1.0) * self.step;
        let a = 2.0 * PI * (index + 0.5) / width as f64;
        // Counterclockwise on the page: y grows downwards.
        (self.center() + r * a.cos(), self.center() - r * a.sin())
    }

    fn size(&self) -> (f64, f64) {
        let s = 2.0 * self.center();
        (s, s)
    }

    /// Interpolates radius and angle so the strand stays inside its ring.
    fn strand(&self, from: (f64, f64), to: (f64, f64)) -> String {
        let c = self.center();
        let polar = |(x, y): (f64, f64)| (((x - c).powi(2) + (y - c).powi(2)).sqrt(), (c - y).atan2(x - c));
        let (r0, mut a0) = polar(from);
        let (r1, mut a1) = polar(to);
        if r0 < 1e-9 {
            a0 = a1;
        }
        if r1 < 1e-9 {
            a1 = a0;
        }
        let mut da = a1 - a0;
        if da > PI {
            da -= 2.0 * PI;
        } else if da < -PI {
            da += 2.0 * PI;
        }
        let mut d = format!("M {}", pt(from.0, from.1));
        const STEPS: usize = 12;
        for i in 1..=STEPS {
            let t = i as f64 / STEPS as f64;
            // Turn early, then run outwards.
            let turn = (2.0 * t).min(1.0);
            let r = r0 + (r1 - r0) * t;
            let a = a0 + da * turn;
            d.push_str(&format!(" L {}", pt(c + r * a.cos(), c - r * a.sin())));
        }
        d
    }
}

fn pattern_name(p: Option<Pattern>) -> char {
    p.map_or('O', Pattern::symbol)
}

/// Renders `code` as a standalone SVG 1.1 document.
pub fn render(code: &CascadeCode, style: Style) -> Result<String> {
    let levels = layout(code)?;
    let n = levels.len();
    let max_w = levels.iter().map(|l| l.band.len()).max().unwrap_or(4);
    match style {
        Style::Cascade => draw(
            code,
            &levels,
            &Columns {
                width: (max_w as f64 * 40.0).max(200.0),
                step: 60.0,
                depth: n,
            },
            None,
        ),
        Style::Disk => {
            let rings = Rings { step: 50.0, depth: n };
            let c = rings.center();
            draw(code, &levels, &rings, Some((c, rings.step)))
        }
    }
}

fn pt(x: f64, y: f64) -> String {
    format!("{x:.2} {y:.2}")
}

fn draw(code: &CascadeCode, levels: &[Level], at: &dyn Placement, rings: Option<(f64, f64)>) -> Result<String> {
    let n = levels.len();
    let (w, h) = at.size();
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(s, "<title>{code}</title>");
    let _ = writeln!(
        s,
        r#"<style>.strand{{fill:none;stroke:#222;stroke-width:2}}.crossing{{fill:#fff;stroke:#c22;stroke-width:2}}.ring{{fill:none;stroke:#bbb;stroke-dasharray:4 4}}.boundary{{fill:none;stroke:#222}}text{{font:12px sans-serif;text-anchor:middle}}</style>"#
    );
    if let Some((c, step)) = rings {
        for i in 1..n {
            let _ = writeln!(s, r#"<circle class="ring" cx="{c:.2}" cy="{c:.2}" r="{:.2}"/>"#, (i as f64 - 0.5) * step);
        }
        let _ = writeln!(s, r#"<circle class="boundary" cx="{c:.2}" cy="{c:.2}" r="{:.2}"/>"#, n as f64 * step);
    }
    // Crossing centres: the start crossing sits at depth 1 in the middle.
    let mut centers = Vec::with_capacity(n);
    for (i, level) in levels.iter().enumerate() {
        let depth = (i + 1) as f64;
        let c = if i == 0 {
            match rings {
                Some((c, _)) => (c, c),
                None => at.place(1.5, 4, depth),
            }
        } else {
            let above = levels[i - 1].band.len();
            let first = level.grabbed[0] as f64;
            let mid = first + (level.grabbed.len() - 1) as f64 / 2.0;
            at.place(mid, above, depth)
        };
        centers.push(c);
    }
    for (i, level) in levels.iter().enumerate() {
        let width = level.band.len();
        let _ = writeln!(
            s,
            r#"<g class="level" data-level="{}" data-pattern="{}" data-width="{width}">"#,
            i + 1,
            pattern_name(level.pattern)
        );
        let top = (i + 1) as f64;
        let bottom = top + 1.0;
        let next = levels.get(i + 1);
        for (j, src) in level.band.iter().enumerate() {
            let start = match *src {
                Source::Crossing => centers[i],
                Source::Pass(k) => at.place(k as f64, levels[i - 1].band.len(), top),
            };
            let end = match next {
                Some(l) if l.grabbed.contains(&j) => centers[i + 1],
                _ => at.place(j as f64, width, bottom),
            };
            let d = at.strand(start, end);
            let _ = writeln!(s, r#"<path class="strand" data-index="{j}" d="{d}"/>"#);
        }
        let (cx, cy) = centers[i];
        let _ = writeln!(s, r#"<circle class="crossing" cx="{cx:.2}" cy="{cy:.2}" r="9"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{cx:.2}" y="{:.2}">{}</text>"#,
            cy + 4.0,
            pattern_name(level.pattern)
        );
        s.push_str("</g>\n");
    }
    let legs = levels[n - 1].band.len();
    s.push_str("<g class=\"legs\">\n");
    for j in 0..legs {
        let (x, y) = at.place(j as f64, legs, n as f64 + 1.0);
        let (dx, dy) = match rings {
            Some((c, _)) => {
                let (vx, vy) = (x - c, y - c);
                let len = (vx * vx + vy * vy).sqrt().max(1.0);
                (12.0 * vx / len, 12.0 * vy / len + 4.0)
            }
            None => (0.0, 16.0),
        };
        let _ = writeln!(s, r#"<text class="leg" x="{:.2}" y="{:.2}">{j}</text>"#, x + dx, y + dy);
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
