//! Root systems of rank at most three and the exact geometry of the standard
//! apartment: level coordinates, walls, affine reflections and coroot
//! translations, alcoves, and folding into the fundamental alcove.
//!
//! Points are stored in level coordinates `x_i = ⟨x, α_i⟩`, so a wall test
//! for `α = Σ c_i α_i` is the linear form `Σ c_i x_i`.

mod isometry;
mod point;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::arith::{as_i64, floor_i64, frac, int, solve_unique, Rational};
use crate::gallery::Face;

pub use isometry::{AffineIsometry, IsometryKind};
pub use point::{Hyperplane, Point, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported root system type {0:?} (expected one of A1, A2, B2, C2, G2, A3)")]
    UnsupportedType(String),
    #[error("{0:?} is not a root of this system")]
    ForeignRoot(Vec<i64>),
    #[error("{0} is not an integral combination of coroots")]
    NotCoweight(Point),
    #[error("expected a point of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Supported irreducible types. `B2` and `C2` differ by which simple root is
/// long (Bourbaki numbering: in `B2` the first root is long, in `C2` the
/// first root is short).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A1,
    A2,
    B2,
    C2,
    G2,
    A3,
}

impl CartanType {
    pub const ALL: [CartanType; 6] = [
        CartanType::A1,
        CartanType::A2,
        CartanType::B2,
        CartanType::C2,
        CartanType::G2,
        CartanType::A3,
    ];

    /// `cartan[i][j] = ⟨α_j∨, α_i⟩`.
    fn cartan_matrix(self) -> Vec<Vec<i64>> {
        match self {
            CartanType::A1 => vec![vec![2]],
            CartanType::A2 => vec![vec![2, -1], vec![-1, 2]],
            CartanType::B2 => vec![vec![2, -2], vec![-1, 2]],
            CartanType::C2 => vec![vec![2, -1], vec![-2, 2]],
            CartanType::G2 => vec![vec![2, -1], vec![-3, 2]],
            CartanType::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        }
    }
}

impl FromStr for CartanType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A1" => Ok(CartanType::A1),
            "A2" => Ok(CartanType::A2),
            "B2" => Ok(CartanType::B2),
            "C2" => Ok(CartanType::C2),
            "G2" => Ok(CartanType::G2),
            "A3" => Ok(CartanType::A3),
            other => Err(RootError::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A1 => "A1",
            CartanType::A2 => "A2",
            CartanType::B2 => "B2",
            CartanType::C2 => "C2",
            CartanType::G2 => "G2",
            CartanType::A3 => "A3",
        };
        f.write_str(s)
    }
}

/// A root written over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Root(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite crystallographic root system with its coroot data.
#[derive(Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    /// Coefficients of each positive coroot over the simple coroots.
    coroot_coeffs: Vec<Vec<i64>>,
    /// Level coordinates of each positive coroot.
    coroot_levels: Vec<Vec<i64>>,
    highest: usize,
    index: BTreeMap<Vec<i64>, usize>,
    weyl: OnceLock<Vec<AffineIsometry>>,
}

/// Builds the root system for a type label such as `"C2"`.
pub fn build_root_system(label: &str) -> Result<RootSystem, RootError> {
    Ok(RootSystem::new(label.parse()?))
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let n = cartan.len();
        // Reflection closure on (root, coroot) pairs:
        //   s_i(β)  = β  − ⟨α_i∨, β⟩ α_i
        //   s_i(β∨) = β∨ − ⟨β∨, α_i⟩ α_i∨
        let mut seen: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone(), e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            let beta_co = seen[&beta].clone();
            for i in 0..n {
                let pair_co_i: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let pair_i: i64 = (0..n).map(|j| beta_co[j] * cartan[i][j]).sum();
                let mut image = beta.clone();
                image[i] -= pair_co_i;
                let mut image_co = beta_co.clone();
                image_co[i] -= pair_i;
                match seen.get(&image) {
                    Some(existing) => assert_eq!(
                        existing, &image_co,
                        "inconsistent coroot for {image:?} in {cartan_type}"
                    ),
                    None => {
                        seen.insert(image.clone(), image_co);
                        queue.push_back(image);
                    }
                }
            }
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = seen
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&c| c >= 0))
            .collect();
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let coroot_levels: Vec<Vec<i64>> = positive
            .iter()
            .map(|(_, co)| (0..n).map(|i| (0..n).map(|j| co[j] * cartan[i][j]).sum()).collect())
            .collect();
        let index = positive
            .iter()
            .enumerate()
            .map(|(k, (r, _))| (r.clone(), k))
            .collect();
        let highest = positive.len() - 1;
        RootSystem {
            cartan_type,
            cartan,
            coroot_coeffs: positive.iter().map(|(_, c)| c.clone()).collect(),
            positive: positive.into_iter().map(|(r, _)| Root(r)).collect(),
            coroot_levels,
            highest,
            index,
            weyl: OnceLock::new(),
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `⟨α_j∨, α_i⟩`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Positive roots; the first `rank` entries are the simple roots in order
    /// and the last entry is the highest root.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive[self.highest]
    }

    pub fn highest_index(&self) -> usize {
        self.highest
    }

    /// Coefficients of the positive coroot with index `k` over the simple coroots.
    pub fn coroot_coeffs(&self, k: usize) -> &[i64] {
        &self.coroot_coeffs[k]
    }

    /// Level coordinates of the positive coroot with index `k`.
    pub fn coroot_levels(&self, k: usize) -> &[i64] {
        &self.coroot_levels[k]
    }

    /// Index of `±root` in the positive table and whether `root` is positive.
    pub fn locate(&self, root: &Root) -> Result<(usize, bool), RootError> {
        if let Some(&k) = self.index.get(root.coeffs()) {
            return Ok((k, true));
        }
        self.index
            .get(root.neg().coeffs())
            .map(|&k| (k, false))
            .ok_or_else(|| RootError::ForeignRoot(root.coeffs().to_vec()))
    }

    pub fn contains_root(&self, root: &Root) -> bool {
        self.locate(root).is_ok()
    }

    /// All roots, positive ones first.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(Root::neg));
        out
    }

    pub fn coroot(&self, root: &Root) -> Result<Point, RootError> {
        let (k, pos) = self.locate(root)?;
        let sign = if pos { 1 } else { -1 };
        Ok(Point::from_ints(
            &self.coroot_levels[k].iter().map(|v| sign * v).collect::<Vec<_>>(),
        ))
    }

    fn check_dim(&self, x: &Point) -> Result<(), RootError> {
        if x.dim() != self.rank() {
            return Err(RootError::DimensionMismatch {
                expected: self.rank(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// `⟨x, α⟩`.
    pub fn pairing(&self, x: &Point, root: &Root) -> Result<Rational, RootError> {
        self.locate(root)?;
        self.check_dim(x)?;
        Ok(x.dot_ints(root.coeffs()))
    }

    /// `⟨x, α⟩` for the positive root with index `k`.
    pub fn level(&self, x: &Point, k: usize) -> Rational {
        x.dot_ints(self.positive[k].coeffs())
    }

    /// Normalized wall `H_{α,m}`; `H_{−α,m}` becomes `H_{α,−m}`.
    pub fn hyperplane(&self, root: &Root, level: i64) -> Result<Hyperplane, RootError> {
        let (k, pos) = self.locate(root)?;
        Ok(Hyperplane {
            root: k,
            level: if pos { level } else { -level },
        })
    }

    pub fn affine_reflection(&self, root: &Root, level: i64) -> Result<AffineIsometry, RootError> {
        let h = self.hyperplane(root, level)?;
        Ok(self.reflection_at(h))
    }

    pub fn reflection_at(&self, h: Hyperplane) -> AffineIsometry {
        AffineIsometry::reflection(&self.positive[h.root], &self.coroot_levels[h.root], h.level)
    }

    /// Reflection in the wall `H_{α_i, m}` for the simple root `α_i`.
    pub fn simple_reflection(&self, i: usize, level: i64) -> AffineIsometry {
        self.reflection_at(Hyperplane { root: i, level })
    }

    /// Translation `x ↦ x + λ`; `λ` must lie in the coroot lattice.
    pub fn translate(&self, lambda: &Point) -> Result<AffineIsometry, RootError> {
        self.check_dim(lambda)?;
        let n = self.rank();
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| int(self.cartan[i][j])).collect())
            .collect();
        let d = solve_unique(&a, lambda.coords()).expect("Cartan matrix is invertible");
        if !d.iter().all(|c| c.is_integer()) {
            return Err(RootError::NotCoweight(lambda.clone()));
        }
        let offset = lambda
            .coords()
            .iter()
            .map(|c| as_i64(c).expect("integral"))
            .collect();
        Ok(AffineIsometry::translation(offset))
    }

    /// `t_{±α∨}` for the positive root with index `k`.
    pub fn coroot_translation(&self, k: usize, positive: bool) -> AffineIsometry {
        let sign = if positive { 1 } else { -1 };
        AffineIsometry::translation(self.coroot_levels[k].iter().map(|v| sign * v).collect())
    }

    pub fn position_sign(&self, x: &Point, h: Hyperplane) -> Sign {
        Sign::of(&(self.level(x, h.root) - int(h.level)))
    }

    /// The fundamental alcove `{0 ≤ ⟨x,α⟩ ≤ 1 ∀α}`: the origin and, for each
    /// `i`, the point with `x_i = 1/a_i` where `α̃ = Σ a_i α_i`.
    pub fn fundamental_alcove(&self) -> Face {
        let n = self.rank();
        let top = self.highest_root().coeffs();
        let mut vertices = vec![Point::origin(n)];
        for i in 0..n {
            let mut c = vec![Rational::zero(); n];
            c[i] = frac(1, top[i]);
            vertices.push(Point::new(c));
        }
        Face::new(vertices).expect("fundamental alcove vertices are distinct")
    }

    /// Elements of the spherical Weyl group, as linear isometries, in
    /// breadth-first order from the identity over simple reflections.
    pub fn weyl_group(&self) -> &[AffineIsometry] {
        self.weyl.get_or_init(|| {
            let n = self.rank();
            let gens: Vec<AffineIsometry> = (0..n).map(|i| self.simple_reflection(i, 0)).collect();
            let id = AffineIsometry::identity(n);
            let mut seen = HashSet::new();
            seen.insert(id.clone());
            let mut order = vec![id.clone()];
            let mut queue = VecDeque::from([id]);
            while let Some(w) = queue.pop_front() {
                for g in &gens {
                    let next = g.compose(&w);
                    if seen.insert(next.clone()) {
                        order.push(next.clone());
                        queue.push_back(next);
                    }
                }
            }
            order
        })
    }

    /// Generators `s_1, …, s_n` (walls `H_{α_i,0}`) followed by `s_0` (the
    /// wall `H_{α̃,1}`).
    pub fn affine_generators(&self) -> Vec<AffineIsometry> {
        let mut g: Vec<AffineIsometry> = (0..self.rank()).map(|i| self.simple_reflection(i, 0)).collect();
        g.push(self.reflection_at(Hyperplane {
            root: self.highest,
            level: 1,
        }));
        g
    }

    /// Walls containing every vertex of `face`.
    pub fn walls_containing(&self, face: &Face) -> Vec<Hyperplane> {
        (0..self.positive.len())
            .filter_map(|k| {
                let mut levels = face.vertices().iter().map(|v| self.level(v, k));
                let first = levels.next()?;
                let m = as_i64(&first)?;
                levels.all(|l| l == first).then_some(Hyperplane { root: k, level: m })
            })
            .collect()
    }

    /// Folds a (possibly infinitesimally perturbed) point into the closed
    /// fundamental alcove by repeatedly reflecting in a violated wall, always
    /// choosing the violated wall of smallest (root index, level).
    pub fn fold(&self, point: &SymPoint) -> Folding {
        let n = self.rank();
        // a coroot translation first brings the point near the origin
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| int(self.cartan[i][j])).collect())
            .collect();
        let c = solve_unique(&a, point.base.coords()).expect("Cartan matrix is invertible");
        let near: Vec<i64> = c.iter().map(floor_i64).collect();
        let lambda = self.coroot_point(&near);
        let shift: Vec<i64> = lambda.coords().iter().map(|x| as_i64(x).expect("integral")).collect();
        let mut w = AffineIsometry::translation(shift.iter().map(|x| -x).collect());
        let mut w_inv = AffineIsometry::translation(shift);
        let mut p = point.mapped(&w);
        for _ in 0..100_000 {
            let violated = (0..n)
                .map(|i| Hyperplane { root: i, level: 0 })
                .find(|&h| self.sym_sign(&p, h) == Sign::Negative)
                .or_else(|| {
                    let h = Hyperplane {
                        root: self.highest,
                        level: 1,
                    };
                    (self.sym_sign(&p, h) == Sign::Positive).then_some(h)
                });
            let Some(h) = violated else {
                return Folding { w, w_inv, image: p };
            };
            let r = self.reflection_at(h);
            p = p.mapped(&r);
            w = r.compose(&w);
            w_inv = w_inv.compose(&r);
        }
        panic!("folding did not terminate for {point:?}");
    }

    /// Sign of `⟨p, α⟩ − m` with infinitesimals compared lexicographically.
    pub fn sym_sign(&self, p: &SymPoint, h: Hyperplane) -> Sign {
        let c = self.positive[h.root].coeffs();
        let base = p.base.dot_ints(c) - int(h.level);
        let s = Sign::of(&base);
        if s != Sign::Zero {
            return s;
        }
        for d in &p.dirs {
            let s = Sign::of(&d.dot_ints(c));
            if s != Sign::Zero {
                return s;
            }
        }
        Sign::Zero
    }

    /// The alcove containing `p` after completing its perturbation to a
    /// generic one (appending the standard basis directions).
    pub fn alcove_containing(&self, p: &SymPoint) -> Face {
        let generic = p.completed(self.rank());
        let folding = self.fold(&generic);
        self.fundamental_alcove().map(&folding.w_inv)
    }

    /// The smallest face containing `p` (with its own perturbation) in its
    /// relative interior.
    pub fn support_face(&self, p: &SymPoint) -> Face {
        let alcove = self.alcove_containing(p);
        let walls: Vec<Hyperplane> = (0..self.positive.len())
            .filter_map(|k| {
                let c = self.positive[k].coeffs();
                let m = as_i64(&p.base.dot_ints(c))?;
                p.dirs
                    .iter()
                    .all(|d| d.dot_ints(c).is_zero())
                    .then_some(Hyperplane { root: k, level: m })
            })
            .collect();
        let vertices: Vec<Point> = alcove
            .vertices()
            .iter()
            .filter(|v| walls.iter().all(|&h| self.position_sign(v, h) == Sign::Zero))
            .cloned()
            .collect();
        Face::new(vertices).expect("support face is a sub-face of an alcove")
    }

    /// `⟨x, β⟩` for every positive root `β`, in table order.
    pub fn levels(&self, x: &Point) -> Vec<Rational> {
        (0..self.positive.len()).map(|k| self.level(x, k)).collect()
    }

    /// Whether `x` is a vertex of the complex: the walls through it meet in
    /// a single point.
    pub fn is_complex_vertex(&self, x: &Point) -> bool {
        x.dim() == self.rank() && self.is_vertex_levels(&self.levels(x))
    }

    /// [`is_complex_vertex`](Self::is_complex_vertex) on precomputed levels.
    pub fn is_vertex_levels(&self, levels: &[Rational]) -> bool {
        let rows: Vec<Vec<i64>> = levels
            .iter()
            .zip(&self.positive)
            .filter(|(l, _)| l.is_integer())
            .map(|(_, r)| r.coeffs().to_vec())
            .collect();
        crate::arith::int_rank(&rows) == self.rank()
    }

    /// Whether the vertex set spans a simplex of the complex. Complex
    /// vertices lie on a common closed alcove exactly when no wall strictly
    /// separates two of them.
    pub fn is_simplex(&self, face: &Face) -> bool {
        if face.vertices().iter().any(|v| v.dim() != self.rank()) {
            return false;
        }
        let levels: Vec<Vec<Rational>> = face.vertices().iter().map(|v| self.levels(v)).collect();
        levels.iter().all(|l| self.is_vertex_levels(l)) && no_wall_separates(&levels)
    }

    /// The same predicate computed by locating the alcove around the
    /// barycenter; slower, kept as a cross-check.
    pub fn is_simplex_by_folding(&self, face: &Face) -> bool {
        if face.vertices().iter().any(|v| v.dim() != self.rank()) {
            return false;
        }
        let alcove = self.alcove_containing(&SymPoint::new(face.barycenter()));
        face.is_face_of(&alcove)
    }

    pub fn is_alcove(&self, face: &Face) -> bool {
        face.vertices().len() == self.rank() + 1 && self.is_simplex(face)
    }

    /// The canonical representative of the affine Weyl orbit of `face`
    /// inside the closed fundamental alcove.
    pub fn orbit_label(&self, face: &Face) -> Face {
        let folding = self.fold(&SymPoint::new(face.barycenter()));
        face.map(&folding.w)
    }

    /// The isometry `w` with `w(alcove) = ∆_f`, and its inverse.
    pub fn alcove_chart(&self, alcove: &Face) -> Folding {
        self.fold(&SymPoint::new(alcove.barycenter()))
    }

    /// `ρ∨`-like direction `(1, …, 1)` in level coordinates; pairs positively
    /// with every positive root.
    pub fn dominant_direction(&self) -> Point {
        Point::from_ints(&vec![1; self.rank()])
    }

    /// Whether `x` lies in the closed dominant chamber.
    pub fn is_dominant(&self, x: &Point) -> bool {
        x.coords().iter().all(|c| c >= &Rational::zero())
    }

    /// Whether `x` lies in the coroot lattice.
    pub fn in_coroot_lattice(&self, x: &Point) -> bool {
        self.translate(x).is_ok()
    }

    pub fn coroot_point(&self, coeffs: &[i64]) -> Point {
        let n = self.rank();
        Point::from_ints(
            &(0..n)
                .map(|i| (0..n).map(|j| coeffs[j] * self.cartan[i][j]).sum())
                .collect::<Vec<i64>>(),
        )
    }
}

/// Given the root levels of some complex vertices, whether no wall passes
/// strictly between two of them.
pub fn no_wall_separates(levels: &[Vec<Rational>]) -> bool {
    let Some(first) = levels.first() else {
        return true;
    };
    (0..first.len()).all(|k| {
        let lo = levels.iter().map(|l| &l[k]).min().expect("non-empty");
        let hi = levels.iter().map(|l| &l[k]).max().expect("non-empty");
        // the first integer above `lo` must not lie below `hi`
        hi <= &(lo.floor() + Rational::one())
    })
}

/// A point `base + δ·d_1 + δ²·d_2 + …` with `δ` a positive infinitesimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoint {
    pub base: Point,
    pub dirs: Vec<Point>,
}

impl SymPoint {
    pub fn new(base: Point) -> Self {
        SymPoint {
            base,
            dirs: Vec::new(),
        }
    }

    pub fn with_dirs(base: Point, dirs: Vec<Point>) -> Self {
        SymPoint { base, dirs }
    }

    fn completed(&self, rank: usize) -> SymPoint {
        let mut out = self.clone();
        for i in 0..rank {
            let mut e = vec![Rational::zero(); rank];
            e[i] = Rational::one();
            out.dirs.push(Point::new(e));
        }
        out
    }

    fn mapped(&self, w: &AffineIsometry) -> SymPoint {
        SymPoint {
            base: w.apply(&self.base),
            dirs: self.dirs.iter().map(|d| w.apply_linear(d)).collect(),
        }
    }
}

/// Result of folding a point into the fundamental alcove.
#[derive(Clone, Debug)]
pub struct Folding {
    /// Maps the input into the closed fundamental alcove.
    pub w: AffineIsometry,
    pub w_inv: AffineIsometry,
    pub image: SymPoint,
}
