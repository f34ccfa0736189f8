//! The root operators `e_α`, `f_α` and `ẽ_α` on galleries starting at the
//! origin, as piecewise isometries of the alcove sequence.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::arith::{as_i64, format_rational, int, Rational};
use crate::gallery::{Face, Gallery, GalleryError, Violation};
use crate::root_geometry::{AffineIsometry, Hyperplane, Point, RootSystem, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    E,
    F,
    ETilde,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::E => "e",
            Operator::F => "f",
            Operator::ETilde => "etilde",
        }
    }
}

impl std::str::FromStr for Operator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "e" => Ok(Operator::E),
            "f" => Ok(Operator::F),
            "etilde" => Ok(Operator::ETilde),
            other => Err(format!("unknown operator {other:?} (expected e, f or etilde)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    I,
    II,
    III,
}

/// Which reflection the `f` and `ẽ` blocks use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// `s_{α,m}` for the `f` and `ẽ` blocks.
    #[default]
    Corrected,
    /// The printed `s_{α,m+1}` everywhere; outputs are validated and
    /// failures reported instead of asserted.
    AsPrinted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorIndices {
    pub case: Case,
    /// Index of the simple root.
    pub root: usize,
    pub m: i64,
    pub j: usize,
    pub k: usize,
}

/// Why an operator does not apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Undefined {
    CaseI { m: i64 },
    CaseII { m: i64, bound: Rational },
    CaseIII,
}

impl fmt::Display for Undefined {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Undefined::CaseI { m } => write!(f, "case (I) requires m ≤ −1 (m = {m})"),
            Undefined::CaseII { m, bound } => write!(
                f,
                "case (II) requires m ≤ ⟨ν,α⟩ − 1 (m = {m}, ⟨ν,α⟩ − 1 = {})",
                format_rational(bound)
            ),
            Undefined::CaseIII => write!(
                f,
                "case (III) requires an alcove below H_(α,m) entered from a panel on it"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoldingError {
    #[error("root index {0} is not a simple root")]
    NotSimpleRoot(usize),
    #[error("operators need a gallery starting at the origin")]
    NotAtOrigin,
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error("operator undefined: {0}")]
    Undefined(Undefined),
    #[error("block maps disagree on panel p_{index}")]
    BoundaryMismatch { index: usize },
    #[error("result is not a gallery: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidResult {
        gallery: Box<Gallery>,
        violations: Vec<Violation>,
    },
    #[error("orbit exceeds the budget of {0} galleries")]
    BudgetExceeded(usize),
}

/// Integer level `m` with `p ⊂ H_{α,m}`, if any.
pub fn panel_level(rs: &RootSystem, p: &Face, root: usize) -> Option<i64> {
    let mut levels = p.vertices().iter().map(|v| rs.level(v, root));
    let first = levels.next()?;
    let m = as_i64(&first)?;
    levels.all(|l| l == first).then_some(m)
}

pub fn operator_indices(
    rs: &RootSystem,
    g: &Gallery,
    root: usize,
    which: Operator,
) -> Result<OperatorIndices, FoldingError> {
    if root >= rs.rank() {
        return Err(FoldingError::NotSimpleRoot(root));
    }
    if g.start() != &Face::vertex(Point::origin(rs.rank())) {
        return Err(FoldingError::NotAtOrigin);
    }
    let levels: Vec<Option<i64>> = g.panels().iter().map(|p| panel_level(rs, p, root)).collect();
    let m = levels.iter().flatten().copied().min().expect("p_0 lies on H_(α,0)");
    let at = |q: usize, level: i64| levels[q] == Some(level);
    let undefined = |u| Err(FoldingError::Undefined(u));
    match which {
        Operator::E => {
            if m > -1 {
                return undefined(Undefined::CaseI { m });
            }
            let k = (0..levels.len()).find(|&q| at(q, m)).expect("m is attained");
            let Some(j) = (0..=k).rev().find(|&q| at(q, m + 1)) else {
                return undefined(Undefined::CaseI { m });
            };
            Ok(OperatorIndices {
                case: Case::I,
                root,
                m,
                j,
                k,
            })
        }
        Operator::F => {
            let nu = g.weight()?;
            let bound = rs.level(&nu, root) - int(1);
            if int(m) > bound {
                return undefined(Undefined::CaseII { m, bound });
            }
            let j = (0..levels.len()).rev().find(|&q| at(q, m)).expect("m is attained");
            let Some(k) = (j..levels.len()).find(|&q| at(q, m + 1)) else {
                return undefined(Undefined::CaseII { m, bound });
            };
            Ok(OperatorIndices {
                case: Case::II,
                root,
                m,
                j,
                k,
            })
        }
        Operator::ETilde => {
            let h = Hyperplane { root, level: m };
            let below = |i: usize| g.alcoves()[i].weakly_in(rs, h, Sign::Negative);
            let dips = |i: usize| below(i) && !g.alcoves()[i].lies_in(rs, h);
            let Some(j) = (0..g.len()).find(|&q| at(q, m) && dips(q)) else {
                return undefined(Undefined::CaseIII);
            };
            let mut k = None;
            let mut q = j + 1;
            while q <= g.len() && below(q - 1) {
                if at(q, m) {
                    k = Some(q);
                }
                q += 1;
            }
            let Some(k) = k else {
                return undefined(Undefined::CaseIII);
            };
            Ok(OperatorIndices {
                case: Case::III,
                root,
                m,
                j,
                k,
            })
        }
    }
}

/// An operator application: the result, its indices and the isometry
/// applied to each alcove.
#[derive(Clone, Debug)]
pub struct Folded {
    pub gallery: Gallery,
    pub indices: OperatorIndices,
    pub maps: Vec<AffineIsometry>,
}

fn block_maps(rs: &RootSystem, g: &Gallery, ix: &OperatorIndices, op: Operator, mode: Mode) -> Vec<AffineIsometry> {
    let a = ix.root;
    let n = rs.rank();
    let block_level = match (op, mode) {
        (Operator::E, _) | (_, Mode::AsPrinted) => ix.m + 1,
        _ => ix.m,
    };
    let block = rs.simple_reflection(a, block_level);
    let tail = match op {
        Operator::E => rs.coroot_translation(a, true),
        Operator::F => rs.coroot_translation(a, false),
        Operator::ETilde => AffineIsometry::identity(n),
    };
    (0..g.len())
        .map(|i| {
            if i < ix.j {
                AffineIsometry::identity(n)
            } else if i < ix.k {
                block.clone()
            } else {
                tail.clone()
            }
        })
        .collect()
}

pub fn apply_operator(
    rs: &RootSystem,
    g: &Gallery,
    root: usize,
    op: Operator,
    mode: Mode,
) -> Result<Folded, FoldingError> {
    let indices = operator_indices(rs, g, root, op)?;
    let maps = block_maps(rs, g, &indices, op, mode);
    let l1 = g.len();
    let alcoves: Vec<Face> = g.alcoves().iter().zip(&maps).map(|(c, w)| c.map(w)).collect();
    let mut panels = vec![g.start().clone()];
    for i in 1..l1 {
        let p = &g.panels()[i];
        let image = p.map(&maps[i]);
        if mode == Mode::Corrected && p.map(&maps[i - 1]) != image {
            return Err(FoldingError::BoundaryMismatch { index: i });
        }
        panels.push(image);
    }
    panels.push(g.end().map(&maps[l1 - 1]));
    if mode == Mode::Corrected && g.start().map(&maps[0]) != *g.start() {
        return Err(FoldingError::BoundaryMismatch { index: 0 });
    }
    let gallery = Gallery::new(panels, alcoves)?;
    let violations = gallery.validate(rs);
    if !violations.is_empty() {
        return Err(FoldingError::InvalidResult {
            gallery: Box::new(gallery),
            violations,
        });
    }
    Ok(Folded {
        gallery,
        indices,
        maps,
    })
}

pub fn e_alpha(rs: &RootSystem, g: &Gallery, root: usize) -> Result<Gallery, FoldingError> {
    apply_operator(rs, g, root, Operator::E, Mode::Corrected).map(|f| f.gallery)
}

pub fn f_alpha(rs: &RootSystem, g: &Gallery, root: usize) -> Result<Gallery, FoldingError> {
    apply_operator(rs, g, root, Operator::F, Mode::Corrected).map(|f| f.gallery)
}

pub fn e_tilde_alpha(rs: &RootSystem, g: &Gallery, root: usize) -> Result<Gallery, FoldingError> {
    apply_operator(rs, g, root, Operator::ETilde, Mode::Corrected).map(|f| f.gallery)
}

/// The operator rebuilt as `γ_j ⋆ r(γ_jk) ⋆ r'(γ_k⁺)`, where `r` is the
/// block reflection and `r'` the composite of the two parallel reflections
/// (the identity for `ẽ`).
pub fn reflection_normal_form(
    rs: &RootSystem,
    g: &Gallery,
    root: usize,
    op: Operator,
) -> Result<Gallery, FoldingError> {
    let ix = operator_indices(rs, g, root, op)?;
    let (prefix, rest) = g.split(ix.j)?;
    let (block, suffix) = rest.split(ix.k - ix.j)?;
    let (r, tail) = match op {
        Operator::E => {
            let r = rs.simple_reflection(root, ix.m + 1);
            let t = r.compose(&rs.simple_reflection(root, ix.m));
            (r, t)
        }
        Operator::F => {
            let r = rs.simple_reflection(root, ix.m);
            let t = r.compose(&rs.simple_reflection(root, ix.m + 1));
            (r, t)
        }
        Operator::ETilde => (
            rs.simple_reflection(root, ix.m),
            AffineIsometry::identity(rs.rank()),
        ),
    };
    Ok(prefix
        .concat(&block.apply_map(&r))?
        .concat(&suffix.apply_map(&tail))?)
}

/// Breadth-first closure of `start` under the given `(operator, simple
/// root)` pairs. Each layer is sorted, so the order is deterministic.
pub fn orbit(
    rs: &RootSystem,
    start: &Gallery,
    ops: &[(Operator, usize)],
    budget: usize,
) -> Result<Vec<Gallery>, FoldingError> {
    let mut seen: HashSet<Gallery> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut layer = vec![start.clone()];
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for g in &layer {
            for &(op, root) in ops {
                match apply_operator(rs, g, root, op, Mode::Corrected) {
                    Ok(f) => {
                        if !seen.contains(&f.gallery) {
                            next.insert(f.gallery);
                        }
                    }
                    Err(FoldingError::Undefined(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        for g in &next {
            seen.insert(g.clone());
            order.push(g.clone());
            if order.len() > budget {
                return Err(FoldingError::BudgetExceeded(budget));
            }
        }
        layer = next.into_iter().collect();
    }
    Ok(order)
}
