use std::fmt;

use crate::arith::{int, Rational};
use crate::root_geometry::{Point, Root};

/// Provenance of an isometry; the map itself is the matrix form.
#[derive(Clone, Debug)]
pub enum IsometryKind {
    Identity,
    Reflection { root: Root, level: i64 },
    /// Translation by a coweight, recorded by its level coordinates.
    Translation { offset: Vec<i64> },
    Composition(Vec<IsometryKind>),
}

/// An affine isometry of the apartment written as `x ↦ Lx + b` in level
/// coordinates. For the affine Weyl group extended by coroot translations
/// both `L` and `b` are integral.
///
/// Equality compares the map, not its provenance.
#[derive(Clone, Debug)]
pub struct AffineIsometry {
    linear: Vec<Vec<i64>>,
    offset: Vec<i64>,
    kind: IsometryKind,
}

impl AffineIsometry {
    pub fn identity(rank: usize) -> Self {
        let linear = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        AffineIsometry {
            linear,
            offset: vec![0; rank],
            kind: IsometryKind::Identity,
        }
    }

    /// `s_{α,m}(x) = x − (⟨x,α⟩ − m)·α∨` with `coroot_levels` the level
    /// coordinates of `α∨` and `root` the coefficients of `α`.
    pub(crate) fn reflection(root: &Root, coroot_levels: &[i64], level: i64) -> Self {
        let n = coroot_levels.len();
        let c = root.coeffs();
        let linear = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| i64::from(i == j) - coroot_levels[i] * c[j])
                    .collect()
            })
            .collect();
        let offset = coroot_levels.iter().map(|v| level * v).collect();
        AffineIsometry {
            linear,
            offset,
            kind: IsometryKind::Reflection {
                root: root.clone(),
                level,
            },
        }
    }

    pub(crate) fn translation(offset: Vec<i64>) -> Self {
        let mut t = AffineIsometry::identity(offset.len());
        t.offset = offset.clone();
        t.kind = IsometryKind::Translation { offset };
        t
    }

    pub fn rank(&self) -> usize {
        self.offset.len()
    }

    pub fn linear(&self) -> &[Vec<i64>] {
        &self.linear
    }

    pub fn offset(&self) -> &[i64] {
        &self.offset
    }

    pub fn kind(&self) -> &IsometryKind {
        &self.kind
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineIsometry::identity(self.rank())
    }

    pub fn is_translation(&self) -> bool {
        self.linear == AffineIsometry::identity(self.rank()).linear
    }

    pub fn apply(&self, x: &Point) -> Point {
        let coords = x.coords();
        let out = (0..self.rank())
            .map(|i| {
                let mut acc = int(self.offset[i]);
                for (j, c) in coords.iter().enumerate() {
                    let l = self.linear[i][j];
                    if l != 0 {
                        acc += c * int(l);
                    }
                }
                acc
            })
            .collect();
        Point::new(out)
    }

    /// Applies only the linear part (maps direction vectors).
    pub fn apply_linear(&self, v: &Point) -> Point {
        let coords = v.coords();
        let out = (0..self.rank())
            .map(|i| {
                let mut acc = Rational::from_integer(0.into());
                for (j, c) in coords.iter().enumerate() {
                    let l = self.linear[i][j];
                    if l != 0 {
                        acc += c * int(l);
                    }
                }
                acc
            })
            .collect();
        Point::new(out)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &AffineIsometry) -> AffineIsometry {
        let n = self.rank();
        let linear = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.linear[i][k] * inner.linear[k][j]).sum())
                    .collect()
            })
            .collect();
        let offset = (0..n)
            .map(|i| {
                self.offset[i]
                    + (0..n)
                        .map(|k| self.linear[i][k] * inner.offset[k])
                        .sum::<i64>()
            })
            .collect();
        let mut parts = Vec::new();
        for k in [&inner.kind, &self.kind] {
            match k {
                IsometryKind::Identity => {}
                IsometryKind::Composition(v) => parts.extend(v.iter().cloned()),
                other => parts.push(other.clone()),
            }
        }
        let kind = match parts.len() {
            0 => IsometryKind::Identity,
            1 => parts.pop().unwrap(),
            _ => IsometryKind::Composition(parts),
        };
        AffineIsometry {
            linear,
            offset,
            kind,
        }
    }
}

impl PartialEq for AffineIsometry {
    fn eq(&self, other: &Self) -> bool {
        self.linear == other.linear && self.offset == other.offset
    }
}

impl Eq for AffineIsometry {}

impl std::hash::Hash for AffineIsometry {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.linear.hash(state);
        self.offset.hash(state);
    }
}

impl fmt::Display for AffineIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            IsometryKind::Identity => write!(f, "id"),
            IsometryKind::Reflection { root, level } => write!(f, "s[{root},{level}]"),
            IsometryKind::Translation { offset } => write!(f, "t{offset:?}"),
            IsometryKind::Composition(parts) => write!(f, "composite of {} maps", parts.len()),
        }
    }
}
