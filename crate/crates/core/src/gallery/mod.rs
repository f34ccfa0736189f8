//! Faces and combinatorial galleries of the standard apartment.

mod random;
mod trace;

use std::collections::HashMap;
use std::fmt;

use crate::arith::{int, solve_unique, Rational};
use crate::root_geometry::{no_wall_separates, AffineIsometry, Hyperplane, Point, RootSystem, Sign};

pub use random::{build_corpus, generate_random_folded, Corpus, CorpusItem, FoldPolicy};
pub use trace::{embed_trace, minimal_gallery, SegmentTrace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GalleryError {
    #[error("a face needs at least one vertex")]
    EmptyFace,
    #[error("repeated vertex {0} in face")]
    DuplicateVertex(Point),
    #[error("gallery needs one more panel than alcoves (got {panels} panels, {alcoves} alcoves)")]
    Shape { panels: usize, alcoves: usize },
    #[error("split index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("junction mismatch: {left} vs {right}")]
    JunctionMismatch { left: Face, right: Face },
    #[error("gallery ends at {0}, which is not a vertex")]
    EndpointNotVertex(Face),
    #[error("gallery type is not the type of an alcove gallery: {0}")]
    BadType(String),
}

/// A simplex given by its vertex set, kept sorted so that equality of faces
/// is equality of vertex sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    vertices: Vec<Point>,
}

impl Face {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, GalleryError> {
        if vertices.is_empty() {
            return Err(GalleryError::EmptyFace);
        }
        vertices.sort();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(GalleryError::DuplicateVertex(w[0].clone()));
        }
        Ok(Face { vertices })
    }

    pub fn vertex(p: Point) -> Self {
        Face { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn barycenter(&self) -> Point {
        let n = self.vertices[0].dim();
        let mut acc = Point::origin(n);
        for v in &self.vertices {
            acc = &acc + v;
        }
        acc.scale(&Rational::new(1.into(), (self.vertices.len() as i64).into()))
    }

    pub fn map(&self, w: &AffineIsometry) -> Face {
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| w.apply(v)).collect();
        vertices.sort();
        Face { vertices }
    }

    /// Vertex-set inclusion.
    pub fn is_face_of(&self, other: &Face) -> bool {
        self.vertices
            .iter()
            .all(|v| other.vertices.binary_search(v).is_ok())
    }

    pub fn intersection(&self, other: &Face) -> Option<Face> {
        let vertices: Vec<Point> = self
            .vertices
            .iter()
            .filter(|v| other.vertices.binary_search(v).is_ok())
            .cloned()
            .collect();
        (!vertices.is_empty()).then_some(Face { vertices })
    }

    /// Whether `x` lies in the closed simplex.
    pub fn contains_point(&self, x: &Point) -> bool {
        let n = x.dim();
        let k = self.vertices.len();
        // rows: coordinates, then the affine constraint Σ λ = 1
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| self.vertices.iter().map(|v| v.coords()[i].clone()).collect())
            .collect();
        a.push(vec![int(1); k]);
        let mut b: Vec<Rational> = x.coords().to_vec();
        b.push(int(1));
        match solve_unique(&a, &b) {
            Some(lambda) => lambda.iter().all(|l| l >= &int(0)),
            None => false,
        }
    }

    /// The common sign of the vertices with respect to `h`, treating
    /// vertices on `h` as neutral: `Zero` if the face lies in `h`, and
    /// `None` if it meets both open sides.
    pub fn side(&self, rs: &RootSystem, h: Hyperplane) -> Option<Sign> {
        let mut side = Sign::Zero;
        for v in &self.vertices {
            match (side, rs.position_sign(v, h)) {
                (_, Sign::Zero) => {}
                (Sign::Zero, s) => side = s,
                (a, b) if a == b => {}
                _ => return None,
            }
        }
        Some(side)
    }

    /// Weakly in the closed half-space `H⁺` (or `H⁻` for `Negative`).
    pub fn weakly_in(&self, rs: &RootSystem, h: Hyperplane, sign: Sign) -> bool {
        matches!(self.side(rs, h), Some(s) if s == sign || s == Sign::Zero)
    }

    pub fn lies_in(&self, rs: &RootSystem, h: Hyperplane) -> bool {
        self.side(rs, h) == Some(Sign::Zero)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [v] = self.vertices.as_slice() {
            return write!(f, "{v}");
        }
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Which slot of a gallery a face occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceRole {
    Panel,
    Alcove,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotSimplex { role: FaceRole, index: usize },
    AlcoveDimension { index: usize },
    /// `p_index` is not contained in a neighbouring alcove.
    PanelNotFace { index: usize },
    PanelCodimension { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSimplex { role, index } => {
                let r = if *role == FaceRole::Panel { "p" } else { "c" };
                write!(f, "NotSimplex at {r}_{index}")
            }
            Violation::AlcoveDimension { index } => {
                write!(f, "AlcoveDimension at c_{index}: differs from c_0")
            }
            Violation::PanelNotFace { index } => {
                write!(f, "PanelNotFace at p_{index}: not a face of an adjacent alcove")
            }
            Violation::PanelCodimension { index } => {
                write!(f, "PanelCodimension at p_{index}: not of codimension one")
            }
        }
    }
}

/// `p_0 ⊂ c_0 ⊃ p_1 ⊂ c_1 ⊃ … ⊂ c_l ⊃ p_{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gallery {
    panels: Vec<Face>,
    alcoves: Vec<Face>,
}

/// Sequence of orbit labels `p_0, c_0, p_1, …, c_l, p_{l+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GalleryType(pub Vec<Face>);

impl Gallery {
    pub fn new(panels: Vec<Face>, alcoves: Vec<Face>) -> Result<Self, GalleryError> {
        if panels.len() != alcoves.len() + 1 {
            return Err(GalleryError::Shape {
                panels: panels.len(),
                alcoves: alcoves.len(),
            });
        }
        Ok(Gallery { panels, alcoves })
    }

    pub fn trivial(face: Face) -> Self {
        Gallery {
            panels: vec![face],
            alcoves: Vec::new(),
        }
    }

    pub fn panels(&self) -> &[Face] {
        &self.panels
    }

    pub fn alcoves(&self) -> &[Face] {
        &self.alcoves
    }

    /// Number of alcoves `l + 1`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.alcoves.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.alcoves.is_empty()
    }

    pub fn start(&self) -> &Face {
        &self.panels[0]
    }

    pub fn end(&self) -> &Face {
        self.panels.last().expect("galleries have a panel")
    }

    /// Interleaved faces `p_0, c_0, p_1, …`.
    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        let mut out = Vec::with_capacity(2 * self.panels.len());
        for (i, p) in self.panels.iter().enumerate() {
            out.push(p);
            if let Some(c) = self.alcoves.get(i) {
                out.push(c);
            }
        }
        out.into_iter()
    }

    pub fn validate(&self, rs: &RootSystem) -> Vec<Violation> {
        let mut levels = HashMap::new();
        let mut simplex = |f| cached_is_simplex(rs, f, &mut levels);
        let mut out = Vec::new();
        for (index, p) in self.panels.iter().enumerate() {
            if !simplex(p) {
                out.push(Violation::NotSimplex {
                    role: FaceRole::Panel,
                    index,
                });
            }
        }
        for (index, c) in self.alcoves.iter().enumerate() {
            if !simplex(c) {
                out.push(Violation::NotSimplex {
                    role: FaceRole::Alcove,
                    index,
                });
            }
            if c.dim() != self.alcoves[0].dim() {
                out.push(Violation::AlcoveDimension { index });
            }
        }
        let l1 = self.alcoves.len();
        for (index, p) in self.panels.iter().enumerate() {
            let before = index.checked_sub(1).and_then(|i| self.alcoves.get(i));
            let after = self.alcoves.get(index);
            if [before, after].into_iter().flatten().any(|c| !p.is_face_of(c)) {
                out.push(Violation::PanelNotFace { index });
                continue;
            }
            if index > 0 && index < l1 && p.dim() + 1 != self.alcoves[index].dim() {
                out.push(Violation::PanelCodimension { index });
            }
        }
        out
    }

    pub fn is_valid(&self, rs: &RootSystem) -> bool {
        self.validate(rs).is_empty()
    }

    /// `(γ_k⁻, γ_k⁺)` with `γ_k⁻` ending and `γ_k⁺` starting at `p_k`.
    pub fn split(&self, k: usize) -> Result<(Gallery, Gallery), GalleryError> {
        let max = self.alcoves.len();
        if k > max {
            return Err(GalleryError::IndexOutOfRange { index: k, max });
        }
        let left = Gallery {
            panels: self.panels[..=k].to_vec(),
            alcoves: self.alcoves[..k].to_vec(),
        };
        let right = Gallery {
            panels: self.panels[k..].to_vec(),
            alcoves: self.alcoves[k..].to_vec(),
        };
        Ok((left, right))
    }

    pub fn concat(&self, other: &Gallery) -> Result<Gallery, GalleryError> {
        if self.end() != other.start() {
            return Err(GalleryError::JunctionMismatch {
                left: self.end().clone(),
                right: other.start().clone(),
            });
        }
        let mut panels = self.panels.clone();
        panels.extend(other.panels[1..].iter().cloned());
        let mut alcoves = self.alcoves.clone();
        alcoves.extend(other.alcoves.iter().cloned());
        Ok(Gallery { panels, alcoves })
    }

    pub fn apply_map(&self, w: &AffineIsometry) -> Gallery {
        Gallery {
            panels: self.panels.iter().map(|f| f.map(w)).collect(),
            alcoves: self.alcoves.iter().map(|f| f.map(w)).collect(),
        }
    }

    pub fn weight(&self) -> Result<Point, GalleryError> {
        match self.end().vertices() {
            [v] => Ok(v.clone()),
            _ => Err(GalleryError::EndpointNotVertex(self.end().clone())),
        }
    }

    pub fn gallery_type(&self, rs: &RootSystem) -> GalleryType {
        GalleryType(self.faces().map(|f| rs.orbit_label(f)).collect())
    }

    /// Indices `i` (`1 ≤ i ≤ l`) with `c_{i−1} = c_i`: the gallery is folded at `p_i`.
    pub fn fold_positions(&self) -> Vec<usize> {
        (1..self.alcoves.len())
            .filter(|&i| self.alcoves[i - 1] == self.alcoves[i])
            .collect()
    }

    /// Every fold at a panel spanning the wall `H` has its folded alcove in `H⁺`.
    pub fn is_positively_folded(&self, rs: &RootSystem) -> bool {
        self.fold_positions()
            .into_iter()
            .all(|i| is_positive_fold(rs, &self.panels[i], &self.alcoves[i]))
    }
}

/// `RootSystem::is_simplex` with root levels memoized per vertex.
fn cached_is_simplex<'a>(
    rs: &RootSystem,
    f: &'a Face,
    cache: &mut HashMap<&'a Point, Option<Vec<Rational>>>,
) -> bool {
    let mut rows = Vec::with_capacity(f.vertices().len());
    for v in f.vertices() {
        let entry = cache.entry(v).or_insert_with(|| {
            (v.dim() == rs.rank())
                .then(|| rs.levels(v))
                .filter(|l| rs.is_vertex_levels(l))
        });
        match entry {
            Some(l) => rows.push(l.clone()),
            None => return false,
        }
    }
    no_wall_separates(&rows)
}

/// A fold of `alcove` at `panel` is positive when the alcove lies on the
/// positive side of the panel's wall.
pub fn is_positive_fold(rs: &RootSystem, panel: &Face, alcove: &Face) -> bool {
    match rs.walls_containing(panel).first() {
        Some(&h) => alcove.side(rs, h) == Some(Sign::Positive),
        None => false,
    }
}

impl fmt::Display for Gallery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.panels[0])?;
        for (c, p) in self.alcoves.iter().zip(&self.panels[1..]) {
            write!(f, " ⊂ {c} ⊃ {p}")?;
        }
        write!(f, ")")
    }
}

/// Builds a rank-one gallery from integer vertex levels: `panels` are
/// vertices and each alcove is the pair of its levels. Handy in tests and
/// examples.
pub fn a1_gallery(panels: &[i64], alcoves: &[(i64, i64)]) -> Gallery {
    let v = |x: i64| Point::from_ints(&[x]);
    Gallery::new(
        panels.iter().map(|&p| Face::vertex(v(p))).collect(),
        alcoves
            .iter()
            .map(|&(a, b)| Face::new(vec![v(a), v(b)]).expect("distinct levels"))
            .collect(),
    )
    .expect("shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_geometry::build_root_system;

    fn descending() -> Gallery {
        a1_gallery(&[0, -1, -2], &[(-1, 0), (-2, -1)])
    }

    #[test]
    fn validate_examples() {
        let a1 = build_root_system("A1").unwrap();
        assert!(descending().is_valid(&a1));
        let broken = a1_gallery(&[0, 1, -2], &[(-1, 0), (-2, -1)]);
        assert_eq!(
            broken.validate(&a1),
            vec![Violation::PanelNotFace { index: 1 }]
        );
        assert!(Gallery::trivial(Face::vertex(Point::origin(1))).is_valid(&a1));
        let not_simplex = Gallery::trivial(Face::new(vec![Point::from_ints(&[0]), Point::from_ints(&[3])]).unwrap());
        assert!(!not_simplex.is_valid(&a1));
    }

    #[test]
    fn split_and_concat() {
        let g = descending();
        let (l, r) = g.split(0).unwrap();
        assert!(l.is_trivial());
        assert_eq!(r, g);
        let (l, r) = g.split(2).unwrap();
        assert_eq!(l, g);
        assert!(r.is_trivial());
        let (l, r) = g.split(1).unwrap();
        assert_eq!(l.end(), &Face::vertex(Point::from_ints(&[-1])));
        assert_eq!(r.start(), l.end());
        assert_eq!(l.concat(&r).unwrap(), g);
        assert!(matches!(g.split(3), Err(GalleryError::IndexOutOfRange { .. })));
        assert!(matches!(
            r.concat(&l),
            Err(GalleryError::JunctionMismatch { .. })
        ));
        let t = Gallery::trivial(g.start().clone());
        assert_eq!(t.concat(&g).unwrap(), g);
    }

    #[test]
    fn apply_map_examples() {
        let a1 = build_root_system("A1").unwrap();
        let g = a1_gallery(&[0, 1], &[(0, 1)]);
        let t = a1.coroot_translation(0, true);
        assert_eq!(g.apply_map(&t), a1_gallery(&[2, 3], &[(2, 3)]));
        let s = a1.simple_reflection(0, 0);
        assert_eq!(g.apply_map(&s), a1_gallery(&[0, -1], &[(-1, 0)]));
        assert_eq!(g.apply_map(&AffineIsometry::identity(1)), g);
    }

    #[test]
    fn weight_and_type() {
        let a1 = build_root_system("A1").unwrap();
        let g = a1_gallery(&[0, 1, 2], &[(0, 1), (1, 2)]);
        assert_eq!(g.weight().unwrap(), Point::from_ints(&[2]));
        let t = g.gallery_type(&a1);
        assert_eq!(t.0.len(), 5);
        assert_eq!(g.apply_map(&a1.simple_reflection(0, 3)).gallery_type(&a1), t);
        let edge_end = Gallery::trivial(a1.fundamental_alcove());
        assert!(matches!(edge_end.weight(), Err(GalleryError::EndpointNotVertex(_))));
    }

    #[test]
    fn positive_folds() {
        let a1 = build_root_system("A1").unwrap();
        let up = a1_gallery(&[0, -1, 0], &[(-1, 0), (-1, 0)]);
        assert_eq!(up.fold_positions(), vec![1]);
        assert!(up.is_positively_folded(&a1));
        let down = a1_gallery(&[0, 1, 0], &[(0, 1), (0, 1)]);
        assert!(!down.is_positively_folded(&a1));
    }

    #[test]
    fn closed_face_containment() {
        let f = Face::new(vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0])]).unwrap();
        assert!(f.contains_point(&Point::new(vec![crate::arith::frac(1, 3), int(0)])));
        assert!(!f.contains_point(&Point::from_ints(&[2, 0])));
        assert!(!f.contains_point(&Point::new(vec![int(0), crate::arith::frac(1, 3)])));
    }
}
