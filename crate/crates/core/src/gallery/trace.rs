//! Walking a straight segment through the complex.
//!
//! The segment `a + t(b−a)` is perturbed lexicographically by a basis of
//! directions, so that it crosses one wall at a time. Each crossing is keyed
//! by its parameter followed by the infinitesimal corrections; the cells
//! between consecutive keys form the gallery.

use num_traits::Zero;

use crate::arith::{floor_i64, int, nullspace, Rational};
use crate::gallery::{Face, Gallery};
use crate::root_geometry::{Point, RootSystem, SymPoint};

/// A gallery traced along a segment, with the parameter interval each alcove
/// covers (`None` for alcoves visited only at a single instant).
#[derive(Clone, Debug)]
pub struct SegmentTrace {
    pub gallery: Gallery,
    pub spans: Vec<Option<(Rational, Rational)>>,
}

fn standard_basis(n: usize) -> Vec<Point> {
    (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = int(1);
            Point::new(e)
        })
        .collect()
}

fn crossing_keys(rs: &RootSystem, a: &Point, b: &Point, dirs: &[Point]) -> Vec<Vec<Rational>> {
    let mut keys = Vec::new();
    for (k, root) in rs.positive_roots().iter().enumerate() {
        let la = rs.level(a, k);
        let lb = rs.level(b, k);
        if la == lb {
            continue;
        }
        let delta = &lb - &la;
        let (lo, hi) = if la < lb { (&la, &lb) } else { (&lb, &la) };
        let mut m = floor_i64(lo) + 1;
        while int(m) < *hi {
            let mut key = vec![(int(m) - &la) / &delta];
            for d in dirs {
                key.push(-d.dot_ints(root.coeffs()) / &delta);
            }
            keys.push(key);
            m += 1;
        }
    }
    keys.sort();
    keys.dedup();
    keys
}

/// Cells met along the perturbed segment from `a` to `b`, with spans.
fn trace_cells(
    rs: &RootSystem,
    a: &Point,
    b: &Point,
    dirs: &[Point],
) -> (Vec<Face>, Vec<Option<(Rational, Rational)>>) {
    let v = b - a;
    let keys = crossing_keys(rs, a, b, dirs);
    let with_dirs = |first: Point| {
        let mut all = vec![first];
        all.extend(dirs.iter().cloned());
        all
    };
    let mut cells = vec![rs.support_face(&SymPoint::with_dirs(a.clone(), with_dirs(v.clone())))];
    let mut spans = vec![Some((
        int(0),
        keys.first().map_or_else(|| int(1), |k| k[0].clone()),
    ))];
    for pair in keys.windows(2) {
        let (k0, k1) = (&pair[0], &pair[1]);
        let tau: Vec<Rational> = k0
            .iter()
            .zip(k1)
            .map(|(x, y)| (x + y) / int(2))
            .collect();
        let base = a + &v.scale(&tau[0]);
        let shifted: Vec<Point> = dirs
            .iter()
            .zip(&tau[1..])
            .map(|(d, t)| d + &v.scale(t))
            .collect();
        cells.push(rs.support_face(&SymPoint::with_dirs(base, shifted)));
        spans.push((k0[0] != k1[0]).then(|| (k0[0].clone(), k1[0].clone())));
    }
    if let Some(last) = keys.last() {
        let back = v.scale(&int(-1));
        cells.push(rs.support_face(&SymPoint::with_dirs(b.clone(), with_dirs(back))));
        spans.push(Some((last[0].clone(), int(1))));
    }
    (cells, spans)
}

fn assemble(start: Face, cells: Vec<Face>, end: Face) -> Gallery {
    let mut panels = vec![start];
    for pair in cells.windows(2) {
        panels.push(
            pair[0]
                .intersection(&pair[1])
                .expect("consecutive cells of a trace share a panel"),
        );
    }
    panels.push(end);
    Gallery::new(panels, cells).expect("shape")
}

/// A minimal gallery of alcoves from `start` to `end`, traced along the
/// segment between their barycenters.
pub fn minimal_gallery(rs: &RootSystem, start: &Face, end: &Face) -> Gallery {
    if start == end {
        return Gallery::trivial(start.clone());
    }
    let dirs = standard_basis(rs.rank());
    let (cells, _) = trace_cells(rs, &start.barycenter(), &end.barycenter(), &dirs);
    assemble(start.clone(), cells, end.clone())
}

/// A minimal gallery from the support of `x` to the support of `y` whose
/// closed faces cover the segment `[x, y]`. The perturbation stays inside
/// every wall containing both endpoints, so a segment lying in a wall gives
/// a gallery inside that wall.
pub fn embed_trace(rs: &RootSystem, x: &Point, y: &Point) -> SegmentTrace {
    let start = rs.support_face(&SymPoint::new(x.clone()));
    if x == y {
        return SegmentTrace {
            gallery: Gallery::trivial(start),
            spans: Vec::new(),
        };
    }
    let fixed: Vec<Vec<Rational>> = (0..rs.positive_roots().len())
        .filter(|&k| {
            let la = rs.level(x, k);
            la.is_integer() && la == rs.level(y, k)
        })
        .map(|k| rs.positive_roots()[k].coeffs().iter().map(|&c| int(c)).collect())
        .collect();
    let dirs: Vec<Point> = nullspace(&fixed, rs.rank()).into_iter().map(Point::new).collect();
    let (cells, spans) = trace_cells(rs, x, y, &dirs);
    let end = rs.support_face(&SymPoint::new(y.clone()));
    SegmentTrace {
        gallery: assemble(start, cells, end),
        spans,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::a1_gallery;
    use crate::root_geometry::build_root_system;

    #[test]
    fn a1_descending() {
        let a1 = build_root_system("A1").unwrap();
        let g = minimal_gallery(
            &a1,
            &Face::vertex(Point::origin(1)),
            &Face::vertex(Point::from_ints(&[-2])),
        );
        assert_eq!(g, a1_gallery(&[0, -1, -2], &[(-1, 0), (-2, -1)]));
    }

    #[test]
    fn trivial_when_equal() {
        let a1 = build_root_system("A1").unwrap();
        let o = Face::vertex(Point::origin(1));
        assert!(minimal_gallery(&a1, &o, &o).is_trivial());
        assert!(embed_trace(&a1, &Point::origin(1), &Point::origin(1)).gallery.is_trivial());
    }

    #[test]
    fn a2_through_a_panel() {
        let a2 = build_root_system("A2").unwrap();
        let g = minimal_gallery(
            &a2,
            &Face::vertex(Point::origin(2)),
            &Face::vertex(Point::from_ints(&[1, 1])),
        );
        assert_eq!(g.len(), 2);
        assert!(g.is_valid(&a2));
        assert_eq!(g.alcoves()[0], a2.fundamental_alcove());
    }

    #[test]
    fn segment_in_a_wall_stays_in_it() {
        let a2 = build_root_system("A2").unwrap();
        // H_{α1,0} is x_1 = 0
        let t = embed_trace(&a2, &Point::origin(2), &Point::from_ints(&[0, 3]));
        assert!(t.gallery.is_valid(&a2));
        for f in t.gallery.faces() {
            assert!(f.vertices().iter().all(|v| v.coords()[0].is_zero()), "{f}");
        }
        assert_eq!(t.gallery.len(), 3);
    }
}
