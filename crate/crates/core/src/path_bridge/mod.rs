//! Straight segments as galleries, and their images under root operators.

use crate::arith::Rational;
use crate::folding::{apply_operator, FoldingError, Mode, Operator};
use crate::gallery::{embed_trace, Gallery};
use crate::root_geometry::{AffineIsometry, Point, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Self {
        Segment { start, end }
    }

    pub fn at(&self, t: &Rational) -> Point {
        &self.start + &(&self.end - &self.start).scale(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error(transparent)]
    Folding(#[from] FoldingError),
    #[error("pieces {0} and {} do not meet", .0 + 1)]
    Discontinuous(usize),
}

/// A minimal gallery whose closed faces cover the segment.
pub fn embed_segment(rs: &RootSystem, pi: &Segment) -> Gallery {
    embed_trace(rs, &pi.start, &pi.end).gallery
}

/// The image of the sub-segment `π([t0, t1])` lying in alcove `alcove`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub alcove: usize,
    pub t0: Rational,
    pub t1: Rational,
    pub start: Point,
    pub end: Point,
}

#[derive(Clone, Debug)]
pub struct PushedPath {
    pub gallery: Gallery,
    pub pieces: Vec<Piece>,
}

impl PushedPath {
    pub fn endpoint(&self) -> Option<&Point> {
        self.pieces.last().map(|p| &p.end)
    }

    /// Points `k/(n−1)` of the way along each piece, for `k < n`.
    pub fn samples(&self, n: usize) -> Vec<(usize, Point)> {
        let mut out = Vec::new();
        for p in &self.pieces {
            for k in 0..n {
                let s = Rational::new((k as i64).into(), ((n.max(2) - 1) as i64).into());
                out.push((p.alcove, &p.start + &(&p.end - &p.start).scale(&s)));
            }
        }
        out
    }

    /// Whether every sample lies in the closed alcove it is assigned to.
    pub fn contained(&self, n: usize) -> bool {
        self.samples(n)
            .iter()
            .all(|(i, x)| self.gallery.alcoves()[*i].contains_point(x))
    }
}

/// Applies `ops` in order to the embedding gallery of `pi` and maps each
/// linear piece of `pi` by the accumulated isometry of its alcove.
pub fn push_through(rs: &RootSystem, pi: &Segment, ops: &[(Operator, usize)]) -> Result<PushedPath, PathError> {
    let trace = embed_trace(rs, &pi.start, &pi.end);
    let mut gallery = trace.gallery;
    let mut maps = vec![AffineIsometry::identity(rs.rank()); gallery.len()];
    for &(op, root) in ops {
        let folded = apply_operator(rs, &gallery, root, op, Mode::Corrected)?;
        for (acc, w) in maps.iter_mut().zip(&folded.maps) {
            *acc = w.compose(acc);
        }
        gallery = folded.gallery;
    }
    let mut pieces = Vec::new();
    for (i, span) in trace.spans.iter().enumerate() {
        let Some((t0, t1)) = span else { continue };
        pieces.push(Piece {
            alcove: i,
            start: maps[i].apply(&pi.at(t0)),
            end: maps[i].apply(&pi.at(t1)),
            t0: t0.clone(),
            t1: t1.clone(),
        });
    }
    for (n, w) in pieces.windows(2).enumerate() {
        if w[0].end != w[1].start {
            return Err(PathError::Discontinuous(n));
        }
    }
    Ok(PushedPath { gallery, pieces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::a1_gallery;
    use crate::root_geometry::build_root_system;

    #[test]
    fn embed_a1() {
        let rs = build_root_system("A1").unwrap();
        let pi = Segment::new(Point::origin(1), Point::from_ints(&[-2]));
        let g = embed_segment(&rs, &pi);
        assert_eq!(g, a1_gallery(&[0, -1, -2], &[(-1, 0), (-2, -1)]));
        for k in 0..10 {
            let x = pi.at(&Rational::new(k.into(), 9.into()));
            assert!(g.alcoves().iter().any(|c| c.contains_point(&x)));
        }
        assert!(embed_segment(&rs, &Segment::new(Point::origin(1), Point::origin(1))).is_trivial());
    }

    #[test]
    fn push_with_and_without_operators() {
        let rs = build_root_system("A1").unwrap();
        let pi = Segment::new(Point::origin(1), Point::from_ints(&[-2]));
        let same = push_through(&rs, &pi, &[]).unwrap();
        assert_eq!(same.endpoint(), Some(&Point::from_ints(&[-2])));
        let pushed = push_through(&rs, &pi, &[(Operator::E, 0)]).unwrap();
        let turns: Vec<Point> = pushed.pieces.iter().map(|p| p.end.clone()).collect();
        assert_eq!(turns, vec![Point::from_ints(&[-1]), Point::from_ints(&[0])]);
        assert_eq!(pushed.endpoint(), Some(&pushed.gallery.weight().unwrap()));
        assert!(pushed.contained(10));
    }
}
