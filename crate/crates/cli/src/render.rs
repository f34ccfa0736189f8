//! SVG pictures of rank-two galleries.
//!
//! Level coordinates are solved against a Cartesian realization of the
//! simple roots built from the Cartan matrix. Everything before the final
//! `f64` conversion is exact and numbers are printed with four decimals,
//! so the output depends only on the input.

use std::fmt::Write;

use foldkit::arith::to_f64;
use foldkit::{Gallery, Point, RootSystem};

const SCALE: f64 = 80.0;
const MARGIN: f64 = 0.75;
const COLORS: [&str; 6] = ["#1f5fa8", "#b8412c", "#2d8a3e", "#8a4fb0", "#b07d1a", "#2a8c8c"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankUnsupported(pub usize);

impl std::fmt::Display for RankUnsupported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RankUnsupported: rendering needs rank 2, got rank {}", self.0)
    }
}

impl std::error::Error for RankUnsupported {}

/// Cartesian vectors `a_i` with `a_i · a_j` proportional to `(α_i, α_j)`.
fn simple_roots(rs: &RootSystem) -> [[f64; 2]; 2] {
    let c = |i, j| rs.cartan(i, j) as f64;
    // |α_1|² = 2 and A_ij |α_j|² = A_ji |α_i|²
    let l0 = 2.0;
    let l1 = if rs.cartan(0, 1) == 0 { 2.0 } else { c(1, 0) * l0 / c(0, 1) };
    let g00 = l0;
    let g01 = c(0, 1) * l1 / 2.0;
    let g11 = l1;
    let a0 = [g00.sqrt(), 0.0];
    let a1 = [g01 / a0[0], (g11 - g01 * g01 / g00).sqrt()];
    [a0, a1]
}

struct Frame {
    roots: [[f64; 2]; 2],
}

impl Frame {
    /// The vector `X` with `X · a_i = x_i`.
    fn cart(&self, x: &Point) -> [f64; 2] {
        let (u, v) = (to_f64(&x.coords()[0]), to_f64(&x.coords()[1]));
        let [a0, a1] = self.roots;
        let x0 = u / a0[0];
        let x1 = (v - a1[0] * x0) / a1[1];
        [x0, x1]
    }

    fn normal(&self, coeffs: &[i64]) -> [f64; 2] {
        let [a0, a1] = self.roots;
        let (c0, c1) = (coeffs[0] as f64, coeffs[1] as f64);
        [c0 * a0[0] + c1 * a1[0], c0 * a0[1] + c1 * a1[1]]
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Where the line `n · X = m` meets the box, if it crosses the interior.
fn clip(n: [f64; 2], m: f64, lo: [f64; 2], hi: [f64; 2]) -> Option<([f64; 2], [f64; 2])> {
    let mut pts: Vec<[f64; 2]> = Vec::new();
    let eps = 1e-9;
    if n[1].abs() > eps {
        for x in [lo[0], hi[0]] {
            let y = (m - n[0] * x) / n[1];
            if y >= lo[1] - eps && y <= hi[1] + eps {
                pts.push([x, y]);
            }
        }
    }
    if n[0].abs() > eps {
        for y in [lo[1], hi[1]] {
            let x = (m - n[1] * y) / n[0];
            if x >= lo[0] - eps && x <= hi[0] + eps {
                pts.push([x, y]);
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < eps && (a[1] - b[1]).abs() < eps);
    match pts.as_slice() {
        [p, .., q] => Some((*p, *q)),
        _ => None,
    }
}

pub fn render_svg(rs: &RootSystem, galleries: &[Gallery]) -> Result<String, RankUnsupported> {
    if rs.rank() != 2 {
        return Err(RankUnsupported(rs.rank()));
    }
    let frame = Frame { roots: simple_roots(rs) };

    // exact bounding box in level coordinates over all vertices, then the
    // Cartesian box of its corners
    let mut pts: Vec<&Point> = galleries.iter().flat_map(|g| g.faces()).flat_map(|f| f.vertices()).collect();
    let origin = Point::origin(2);
    pts.push(&origin);
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in &pts {
        let c = frame.cart(p);
        for k in 0..2 {
            lo[k] = lo[k].min(c[k]);
            hi[k] = hi[k].max(c[k]);
        }
    }
    for k in 0..2 {
        lo[k] -= MARGIN;
        hi[k] += MARGIN;
    }
    let width = (hi[0] - lo[0]) * SCALE;
    let height = (hi[1] - lo[1]) * SCALE;
    let px = |c: [f64; 2]| ((c[0] - lo[0]) * SCALE, (hi[1] - c[1]) * SCALE);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    // walls: every level reached by a corner of the box
    let corners = [[lo[0], lo[1]], [lo[0], hi[1]], [hi[0], lo[1]], [hi[0], hi[1]]];
    writeln!(out, r##"<g id="walls" stroke="#c8c8c8" stroke-width="1">"##).unwrap();
    for (k, root) in rs.positive_roots().iter().enumerate() {
        let n = frame.normal(root.coeffs());
        let vals: Vec<f64> = corners.iter().map(|c| n[0] * c[0] + n[1] * c[1]).collect();
        let vmin = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let vmax = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for m in (vmin.floor() as i64)..=(vmax.ceil() as i64) {
            if let Some((p, q)) = clip(n, m as f64, lo, hi) {
                let (x1, y1) = px(p);
                let (x2, y2) = px(q);
                let wide = if m == 0 { r##" stroke="#888888""## } else { "" };
                writeln!(
                    out,
                    r#"<line data-wall="{} {m}" x1="{}" y1="{}" x2="{}" y2="{}"{wide}/>"#,
                    k + 1,
                    num(x1),
                    num(y1),
                    num(x2),
                    num(y2)
                )
                .unwrap();
            }
        }
    }
    writeln!(out, "</g>").unwrap();

    for (gi, g) in galleries.iter().enumerate() {
        let color = COLORS[gi % COLORS.len()];
        writeln!(out, r#"<g id="gallery-{gi}">"#).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for c in g.alcoves() {
            if !seen.insert(c) {
                continue;
            }
            let poly: Vec<String> = c
                .vertices()
                .iter()
                .map(|v| {
                    let (x, y) = px(frame.cart(v));
                    format!("{},{}", num(x), num(y))
                })
                .collect();
            writeln!(
                out,
                r#"<polygon class="alcove" points="{}" fill="{color}" fill-opacity="0.12" stroke="none"/>"#,
                poly.join(" ")
            )
            .unwrap();
        }
        let mut line = vec![g.start().barycenter()];
        line.extend(g.alcoves().iter().map(|c| c.barycenter()));
        line.push(g.end().barycenter());
        let path: Vec<String> = line
            .iter()
            .map(|p| {
                let (x, y) = px(frame.cart(p));
                format!("{},{}", num(x), num(y))
            })
            .collect();
        writeln!(
            out,
            r#"<polyline class="gallery" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            path.join(" ")
        )
        .unwrap();
        for i in g.fold_positions() {
            let (x, y) = px(frame.cart(&g.panels()[i].barycenter()));
            writeln!(
                out,
                r#"<circle class="fold" data-panel="{i}" cx="{}" cy="{}" r="4" fill="{color}"/>"#,
                num(x),
                num(y)
            )
            .unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use foldkit::build_root_system;

    #[test]
    fn realization_reproduces_the_cartan_matrix() {
        for t in ["A2", "B2", "C2", "G2"] {
            let rs = build_root_system(t).unwrap();
            let a = simple_roots(&rs);
            let dot = |u: [f64; 2], v: [f64; 2]| u[0] * v[0] + u[1] * v[1];
            for i in 0..2 {
                for j in 0..2 {
                    let cartan = 2.0 * dot(a[i], a[j]) / dot(a[j], a[j]);
                    assert!((cartan - rs.cartan(i, j) as f64).abs() < 1e-12, "{t} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn rank_one_is_refused() {
        let rs = build_root_system("A1").unwrap();
        assert_eq!(render_svg(&rs, &[]), Err(RankUnsupported(1)));
    }
}
