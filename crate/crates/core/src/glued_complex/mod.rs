//! Several apartments glued along half-apartments, each coordinatized as
//! a copy of the standard one.
//!
//! For a simple root `α` and level `k`, the chart `Lower(α,k)` shares the
//! closed half `H⁻_{α,k}` with `Base` and branches off above the wall.
//! `Folded(α,k)` is that branch glued to the upper half of `Base`; its
//! branch is seen in `Folded` coordinates through `s_{α,k}`. Faces are kept
//! normalized: a face that also lives in `Base` is labeled `Base`, and
//! branch faces are labeled `Lower`.

use std::fmt;

use crate::folding::{operator_indices, FoldingError, Operator};
use crate::gallery::{Face, Gallery, GalleryError, Violation};
use crate::root_geometry::{Hyperplane, RootSystem, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChartId {
    Base,
    Lower { root: usize, level: i64 },
    Folded { root: usize, level: i64 },
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartId::Base => write!(f, "A"),
            ChartId::Lower { root, level } => write!(f, "A[{}, {level}]", root + 1),
            ChartId::Folded { root, level } => write!(f, "B[{}, {level}]", root + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledFace {
    chart: ChartId,
    face: Face,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GluedError {
    #[error(transparent)]
    Folding(#[from] FoldingError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error("{0} is outside the domain of the map")]
    OutsideDomain(Face),
    #[error("face in chart {found} cannot be moved by a map attached to {expected}")]
    ChartMismatch { expected: ChartId, found: ChartId },
    #[error("regularity fails at alcove c_{index}")]
    RegularityViolated { index: usize },
    #[error("assembled gallery is invalid: {0:?}")]
    InvalidResult(Vec<Violation>),
}

fn wall(root: usize, level: i64) -> Hyperplane {
    Hyperplane { root, level }
}

fn weakly_below(rs: &RootSystem, f: &Face, root: usize, level: i64) -> bool {
    f.weakly_in(rs, wall(root, level), Sign::Negative)
}

fn weakly_above(rs: &RootSystem, f: &Face, root: usize, level: i64) -> bool {
    f.weakly_in(rs, wall(root, level), Sign::Positive)
}

impl LabeledFace {
    /// Labels `face` (given in the coordinates of `chart`) and normalizes.
    pub fn new(rs: &RootSystem, chart: ChartId, face: Face) -> Self {
        match chart {
            ChartId::Base => LabeledFace { chart, face },
            ChartId::Lower { root, level } => {
                if weakly_below(rs, &face, root, level) {
                    LabeledFace::base(face)
                } else {
                    LabeledFace { chart, face }
                }
            }
            ChartId::Folded { root, level } => {
                if weakly_above(rs, &face, root, level) {
                    LabeledFace::base(face)
                } else {
                    LabeledFace {
                        chart: ChartId::Lower { root, level },
                        face: face.map(&rs.simple_reflection(root, level)),
                    }
                }
            }
        }
    }

    pub fn base(face: Face) -> Self {
        LabeledFace {
            chart: ChartId::Base,
            face,
        }
    }

    pub fn chart(&self) -> ChartId {
        self.chart
    }

    pub fn face(&self) -> &Face {
        &self.face
    }

    pub fn is_branch(&self) -> bool {
        self.chart != ChartId::Base
    }

    /// Coordinates of this face in `chart`, if the face lives in it.
    pub fn coords_in(&self, rs: &RootSystem, chart: ChartId) -> Option<Face> {
        match (self.chart, chart) {
            (ChartId::Base, ChartId::Base) => Some(self.face.clone()),
            (ChartId::Base, ChartId::Lower { root, level }) => {
                weakly_below(rs, &self.face, root, level).then(|| self.face.clone())
            }
            (ChartId::Base, ChartId::Folded { root, level }) => {
                weakly_above(rs, &self.face, root, level).then(|| self.face.clone())
            }
            (own @ ChartId::Lower { root, level }, target) => match target {
                t if t == own => Some(self.face.clone()),
                ChartId::Folded { root: r, level: l } if (r, l) == (root, level) => {
                    Some(self.face.map(&rs.simple_reflection(root, level)))
                }
                _ => None,
            },
            (ChartId::Folded { .. }, _) => unreachable!("faces are normalized"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Retraction from the antidominant chamber at infinity; sees `Base`
    /// and the `Lower` charts.
    Antidominant,
    /// Retraction from the dominant chamber at infinity; sees `Base` and
    /// the `Folded` charts.
    Dominant,
}

/// `ρ_m^{-1}`: the `Lower(α,m)` face with the same coordinates.
pub fn lift(rs: &RootSystem, x: &Face, root: usize, m: i64) -> LabeledFace {
    LabeledFace::new(rs, ChartId::Lower { root, level: m }, x.clone())
}

pub fn retract(rs: &RootSystem, x: &LabeledFace, direction: Direction) -> Face {
    match (x.chart, direction) {
        (ChartId::Base, _) | (ChartId::Lower { .. }, Direction::Antidominant) => x.face.clone(),
        (ChartId::Lower { root, level }, Direction::Dominant) => {
            x.face.map(&rs.simple_reflection(root, level))
        }
        (ChartId::Folded { .. }, _) => unreachable!("faces are normalized"),
    }
}

/// `(ρ^op_k)^{-1} ∘ ρ^op_l` for walls of direction `α`. The domain is the
/// apartment `B_l`: `Base` faces weakly above `H_{α,l}` and the branch of
/// `Lower(α,l)`. With `extended`, `Base` faces below `H_{α,l}` are accepted
/// too and pass through unchanged before lifting.
pub fn iota(
    rs: &RootSystem,
    x: &LabeledFace,
    root: usize,
    from: i64,
    to: i64,
    extended: bool,
) -> Result<LabeledFace, GluedError> {
    let y = match x.chart {
        ChartId::Base => {
            if !extended && !weakly_above(rs, &x.face, root, from) {
                return Err(GluedError::OutsideDomain(x.face.clone()));
            }
            x.face.clone()
        }
        ChartId::Lower { root: r, level } if (r, level) == (root, from) => {
            retract(rs, x, Direction::Dominant)
        }
        found => {
            return Err(GluedError::ChartMismatch {
                expected: ChartId::Lower { root, level: from },
                found,
            })
        }
    };
    Ok(LabeledFace::new(rs, ChartId::Folded { root, level: to }, y))
}

/// A root-group element modeled by its fixed half-apartment `H^±_{α,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldingAutomorphism {
    pub root: usize,
    pub level: i64,
    /// `Negative` fixes `H⁻_{α,k}` and exchanges `Base` with `Lower(α,k)`;
    /// `Positive` fixes `H⁺_{α,k}` and exchanges `Base` with `Folded(α,k)`.
    pub fixed: Sign,
}

impl FoldingAutomorphism {
    pub fn opposite(self) -> Self {
        FoldingAutomorphism {
            fixed: self.fixed.opposite(),
            ..self
        }
    }

    pub fn apply(&self, rs: &RootSystem, x: &LabeledFace) -> Result<LabeledFace, GluedError> {
        let (root, level) = (self.root, self.level);
        let branch = ChartId::Lower { root, level };
        match (self.fixed, x.chart) {
            (Sign::Negative, ChartId::Base) => Ok(LabeledFace::new(rs, branch, x.face.clone())),
            (Sign::Negative, c) if c == branch => Ok(LabeledFace::base(x.face.clone())),
            (Sign::Positive, ChartId::Base) => Ok(LabeledFace::new(
                rs,
                ChartId::Folded { root, level },
                x.face.clone(),
            )),
            (Sign::Positive, c) if c == branch => Ok(LabeledFace::base(
                x.face.map(&rs.simple_reflection(root, level)),
            )),
            (Sign::Zero, _) => panic!("a folding automorphism fixes a half-apartment"),
            (_, found) => Err(GluedError::ChartMismatch {
                expected: branch,
                found,
            }),
        }
    }

    /// `u ∘ u' ∘ u` with `u'` the element fixing the opposite half.
    pub fn m_composite(&self, rs: &RootSystem, x: &LabeledFace) -> Result<LabeledFace, GluedError> {
        let once = self.apply(rs, x)?;
        let twice = self.opposite().apply(rs, &once)?;
        self.apply(rs, &twice)
    }
}

/// How the theorem evaluators treat galleries outside the regular scope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Regular,
    /// Skip the regularity gate and extend `ι` to all of `Base`.
    Experiment,
}

/// Whether the `e`/`f` theorem applies to `g` for the simple root `root`.
pub fn check_regular(rs: &RootSystem, g: &Gallery, root: usize, op: Operator) -> Result<(), GluedError> {
    let ix = operator_indices(rs, g, root, op)?;
    for (i, c) in g.alcoves().iter().enumerate() {
        let strip_side = match op {
            Operator::E => i < ix.j,
            _ => i >= ix.k,
        };
        let ok = weakly_above(rs, c, root, ix.m) && (!strip_side || weakly_above(rs, c, root, ix.m + 1));
        if !ok {
            return Err(GluedError::RegularityViolated { index: i });
        }
    }
    Ok(())
}

fn assemble(rs: &RootSystem, head: Vec<Face>, tail: Vec<Face>) -> Result<Gallery, GluedError> {
    // `head` and `tail` are interleaved face lists sharing the junction face.
    let mut faces = head;
    if faces.last() != tail.first() {
        return Err(GalleryError::JunctionMismatch {
            left: faces.last().cloned().expect("non-empty"),
            right: tail.first().cloned().expect("non-empty"),
        }
        .into());
    }
    faces.extend(tail.into_iter().skip(1));
    let panels = faces.iter().step_by(2).cloned().collect();
    let alcoves = faces.iter().skip(1).step_by(2).cloned().collect();
    let g = Gallery::new(panels, alcoves)?;
    let violations = g.validate(rs);
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(GluedError::InvalidResult(violations))
    }
}

/// Right-hand side of the retraction formula for `e_α` or `f_α`: split at
/// `k` (for `e`) or `j` (for `f`), lift the tail to `Lower(α,m)`, move
/// everything by `ι_{m→m±1}` facewise and retract from the antidominant
/// direction.
pub fn theorem_ef_rhs(
    rs: &RootSystem,
    g: &Gallery,
    root: usize,
    op: Operator,
    scope: Scope,
) -> Result<Gallery, GluedError> {
    assert!(op != Operator::ETilde, "use theorem_etilde_rhs");
    let ix = operator_indices(rs, g, root, op)?;
    if scope == Scope::Regular {
        check_regular(rs, g, root, op)?;
    }
    let (cut, to) = match op {
        Operator::E => (ix.k, ix.m + 1),
        _ => (ix.j, ix.m - 1),
    };
    let (head, tail) = g.split(cut)?;
    let extended = scope == Scope::Experiment;
    let push = |x: LabeledFace| -> Result<Face, GluedError> {
        let moved = iota(rs, &x, root, ix.m, to, extended)?;
        Ok(retract(rs, &moved, Direction::Antidominant))
    };
    let head = head
        .faces()
        .map(|f| push(LabeledFace::base(f.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let tail = tail
        .faces()
        .map(|f| push(lift(rs, f, root, ix.m)))
        .collect::<Result<Vec<_>, _>>()?;
    assemble(rs, head, tail)
}

/// Right-hand side of the formula for `ẽ_α`: the block `γ_jk` is read in the
/// `Folded(α,m)` chart and retracted from the antidominant direction, which
/// reflects it in `H_{α,m}`; prefix and suffix are kept.
pub fn theorem_etilde_rhs(rs: &RootSystem, g: &Gallery, root: usize) -> Result<Gallery, GluedError> {
    let ix = operator_indices(rs, g, root, Operator::ETilde)?;
    let (prefix, rest) = g.split(ix.j)?;
    let (block, suffix) = rest.split(ix.k - ix.j)?;
    let chart = ChartId::Folded { root, level: ix.m };
    let moved: Vec<Face> = block
        .faces()
        .map(|f| retract(rs, &LabeledFace::new(rs, chart, f.clone()), Direction::Antidominant))
        .collect();
    let left: Vec<Face> = prefix.faces().cloned().collect();
    let joined = assemble(rs, left, moved)?;
    let right: Vec<Face> = suffix.faces().cloned().collect();
    assemble(rs, joined.faces().cloned().collect(), right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::{e_alpha, e_tilde_alpha, f_alpha};
    use crate::gallery::a1_gallery;
    use crate::root_geometry::{build_root_system, Point};

    fn edge(a: i64, b: i64) -> Face {
        Face::new(vec![Point::from_ints(&[a]), Point::from_ints(&[b])]).unwrap()
    }

    #[test]
    fn lift_and_retract() {
        let rs = build_root_system("A1").unwrap();
        let x = edge(-2, -1);
        let l = lift(&rs, &x, 0, -2);
        assert_eq!(l.chart(), ChartId::Lower { root: 0, level: -2 });
        assert_eq!(retract(&rs, &l, Direction::Antidominant), x);
        let shared = lift(&rs, &edge(-3, -2), 0, -2);
        assert_eq!(shared, LabeledFace::base(edge(-3, -2)));
    }

    #[test]
    fn retract_examples() {
        let rs = build_root_system("A1").unwrap();
        let b = LabeledFace::new(&rs, ChartId::Lower { root: 0, level: -1 }, edge(-1, 0));
        assert_eq!(retract(&rs, &b, Direction::Antidominant), edge(-1, 0));
        assert_eq!(retract(&rs, &b, Direction::Dominant), edge(-2, -1));
        let base = LabeledFace::base(edge(4, 5));
        assert_eq!(retract(&rs, &base, Direction::Dominant), edge(4, 5));
    }

    #[test]
    fn iota_examples() {
        let rs = build_root_system("A1").unwrap();
        let up = LabeledFace::base(edge(0, 1));
        assert_eq!(iota(&rs, &up, 0, -2, -1, false).unwrap(), up);
        let strip = LabeledFace::base(edge(-2, -1));
        let moved = iota(&rs, &strip, 0, -2, -1, false).unwrap();
        assert_eq!(moved.chart(), ChartId::Lower { root: 0, level: -1 });
        assert_eq!(moved.face(), &edge(-1, 0));
        let branch = lift(&rs, &edge(-2, -1), 0, -2);
        let moved = iota(&rs, &branch, 0, -2, -1, false).unwrap();
        assert_eq!(moved.face(), &edge(0, 1));
        assert_eq!(
            retract(&rs, &moved, Direction::Antidominant),
            edge(-2, -1).map(&rs.coroot_translation(0, true))
        );
        let low = LabeledFace::base(edge(-4, -3));
        assert!(matches!(
            iota(&rs, &low, 0, -2, -1, false),
            Err(GluedError::OutsideDomain(_))
        ));
    }

    #[test]
    fn automorphism_examples() {
        let rs = build_root_system("A1").unwrap();
        let u = FoldingAutomorphism {
            root: 0,
            level: -2,
            fixed: Sign::Negative,
        };
        let moved = u.apply(&rs, &LabeledFace::base(edge(-2, -1))).unwrap();
        assert_eq!(moved.chart(), ChartId::Lower { root: 0, level: -2 });
        assert_eq!(retract(&rs, &moved, Direction::Antidominant), edge(-2, -1));
        let inside = LabeledFace::base(edge(-4, -3));
        assert_eq!(u.apply(&rs, &inside).unwrap(), inside);
        for a in -6..6 {
            let x = LabeledFace::base(edge(a, a + 1));
            let img = u.m_composite(&rs, &x).unwrap();
            assert_eq!(img, LabeledFace::base(edge(a, a + 1).map(&rs.simple_reflection(0, -2))));
        }
        let stranger = LabeledFace::new(&rs, ChartId::Lower { root: 0, level: 3 }, edge(4, 5));
        assert!(matches!(u.apply(&rs, &stranger), Err(GluedError::ChartMismatch { .. })));
    }

    #[test]
    fn theorems_on_a1_examples() {
        let rs = build_root_system("A1").unwrap();
        let down = a1_gallery(&[0, -1, -2], &[(-1, 0), (-2, -1)]);
        assert_eq!(
            theorem_ef_rhs(&rs, &down, 0, Operator::E, Scope::Regular).unwrap(),
            e_alpha(&rs, &down, 0).unwrap()
        );
        let up = a1_gallery(&[0, 1, 2], &[(0, 1), (1, 2)]);
        assert_eq!(
            theorem_ef_rhs(&rs, &up, 0, Operator::F, Scope::Regular).unwrap(),
            f_alpha(&rs, &up, 0).unwrap()
        );
        let dip = a1_gallery(&[0, 0, 1], &[(-1, 0), (0, 1)]);
        assert_eq!(
            theorem_etilde_rhs(&rs, &dip, 0).unwrap(),
            e_tilde_alpha(&rs, &dip, 0).unwrap()
        );
    }
}
