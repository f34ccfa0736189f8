//! A truncated `(q+1)`-regular tree: the thick building of type `Ã₁`, with
//! vertices as panels and edges as alcoves.
//!
//! Vertex `0` is `a_0` and vertex `1` is `a_1`; together they form the base
//! edge. The standard apartment `A = (a_{−R}, …, a_{R+1})` follows first
//! children away from the base edge in both directions. `ξ⁻` is the end of
//! `A` through `a_{−R}` and `ξ⁺` the end through `a_{R+1}`.

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("branching parameter q = {0} must be at least 2")]
    InvalidBranching(usize),
    #[error("tree of radius {radius} with q = {q} exceeds the size budget")]
    BudgetExceeded { q: usize, radius: usize },
    #[error("vertex {0} is too close to the truncation boundary")]
    MarginExceeded(usize),
    #[error("no compatible alcove of A for vertex {0}")]
    NoWitness(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("{0} is not an edge of the standard apartment")]
    NotApartmentEdge(i64),
}

pub const MAX_RADIUS: usize = 12;
const MAX_VERTICES: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    /// Through `a_{−R}`.
    Minus,
    /// Through `a_{R+1}`.
    Plus,
}

/// A vertex or an edge of the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simplex {
    Vertex(usize),
    Edge(usize, usize),
}

impl Simplex {
    fn vertices(self) -> Vec<usize> {
        match self {
            Simplex::Vertex(v) => vec![v],
            Simplex::Edge(a, b) => vec![a, b],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// The edge `(a_i, a_{i+1})` of `A`.
    Alcove(i64),
    End(End),
}

/// A truncated geodesic, leaf to leaf or leaf to the end of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeApartment(pub Vec<usize>);

impl TreeApartment {
    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.iter().position(|&w| w == v)
    }
}

#[derive(Clone, Debug)]
pub struct TreeBuilding {
    q: usize,
    radius: usize,
    /// Rooted at vertex 0; vertex 1 is its first neighbour.
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// Distance from vertex 0.
    depth0: Vec<usize>,
    /// Distance from the base edge.
    depth: Vec<usize>,
    /// `apartment[i + R] = a_i`.
    apartment: Vec<usize>,
    index_in_a: Vec<Option<i64>>,
}

pub fn build_tree(q: usize, radius: usize) -> Result<TreeBuilding, TreeError> {
    if q < 2 {
        return Err(TreeError::InvalidBranching(q));
    }
    let count = (0..=radius).try_fold(0usize, |acc, d| {
        q.checked_pow(d as u32).and_then(|p| acc.checked_add(2 * p))
    });
    if radius > MAX_RADIUS || count.is_none_or(|c| c > MAX_VERTICES) {
        return Err(TreeError::BudgetExceeded { q, radius });
    }
    let mut t = TreeBuilding {
        q,
        radius,
        parent: vec![None, Some(0)],
        children: vec![vec![1], Vec::new()],
        depth0: vec![0, 1],
        depth: vec![0, 0],
        apartment: Vec::new(),
        index_in_a: Vec::new(),
    };
    let mut frontier = vec![0, 1];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &v in &frontier {
            for _ in 0..q {
                let w = t.parent.len();
                t.parent.push(Some(v));
                t.children.push(Vec::new());
                t.children[v].push(w);
                t.depth0.push(t.depth0[v] + 1);
                t.depth.push(d);
                next.push(w);
            }
        }
        frontier = next;
    }
    // first children away from the base edge, skipping vertex 1 at the root
    let first_child = |t: &TreeBuilding, v: usize| t.children[v].iter().copied().find(|&c| c != 1);
    let mut minus = vec![0];
    while let Some(c) = first_child(&t, *minus.last().expect("non-empty")) {
        minus.push(c);
    }
    let mut plus = vec![1];
    while let Some(c) = first_child(&t, *plus.last().expect("non-empty")) {
        plus.push(c);
    }
    minus.reverse();
    t.apartment = minus.into_iter().chain(plus).collect();
    t.index_in_a = vec![None; t.parent.len()];
    for (k, &v) in t.apartment.iter().enumerate() {
        t.index_in_a[v] = Some(k as i64 - radius as i64);
    }
    Ok(t)
}

impl TreeBuilding {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.parent[v].into_iter().collect();
        out.extend(self.children[v].iter().copied());
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Distance from the base edge.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.depth[v] == self.radius
    }

    /// `a_i`, for `−R ≤ i ≤ R+1`.
    pub fn a(&self, i: i64) -> Option<usize> {
        usize::try_from(i + self.radius as i64)
            .ok()
            .and_then(|k| self.apartment.get(k).copied())
    }

    pub fn apartment(&self) -> TreeApartment {
        TreeApartment(self.apartment.clone())
    }

    pub fn index_in_a(&self, v: usize) -> Option<i64> {
        self.index_in_a[v]
    }

    /// Indices `i` of the edges `(a_i, a_{i+1})` of `A`.
    pub fn apartment_edges(&self) -> std::ops::RangeInclusive<i64> {
        -(self.radius as i64)..=self.radius as i64
    }

    fn edge_of_a(&self, i: i64) -> Result<(usize, usize), TreeError> {
        match (self.a(i), self.a(i + 1)) {
            (Some(x), Some(y)) => Ok((x, y)),
            _ => Err(TreeError::NotApartmentEdge(i)),
        }
    }

    fn check(&self, v: usize) -> Result<(), TreeError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(TreeError::UnknownVertex(v))
        }
    }

    pub fn path(&self, u: usize, w: usize) -> Vec<usize> {
        let (mut x, mut y) = (u, w);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while self.depth0[x] > self.depth0[y] {
            left.push(x);
            x = self.parent[x].expect("deeper vertex has a parent");
        }
        while self.depth0[y] > self.depth0[x] {
            right.push(y);
            y = self.parent[y].expect("deeper vertex has a parent");
        }
        while x != y {
            left.push(x);
            right.push(y);
            x = self.parent[x].expect("not the root");
            y = self.parent[y].expect("not the root");
        }
        left.push(x);
        left.extend(right.into_iter().rev());
        left
    }

    pub fn distance(&self, u: usize, w: usize) -> usize {
        self.path(u, w).len() - 1
    }

    /// The vertex `a_j` of `A` nearest to `v`, as `(j, distance)`.
    pub fn branch_point(&self, v: usize) -> (i64, usize) {
        let mut x = v;
        let mut d = 0;
        loop {
            if let Some(j) = self.index_in_a[x] {
                return (j, d);
            }
            x = self.parent[x].expect("the root lies on A");
            d += 1;
        }
    }

    /// Extends a geodesic at its last vertex without backtracking until a leaf.
    fn extend_to_leaf(&self, path: &mut Vec<usize>) {
        loop {
            let last = *path.last().expect("non-empty");
            let prev = path.len().checked_sub(2).map(|k| path[k]);
            let Some(next) = self
                .neighbors(last)
                .into_iter()
                .filter(|&w| Some(w) != prev)
                .min()
            else {
                return;
            };
            path.push(next);
        }
    }

    /// An apartment containing `x` and the anchor, if one exists in the
    /// truncation.
    pub fn apartment_through(&self, x: Simplex, anchor: Anchor) -> Result<Option<TreeApartment>, TreeError> {
        let mut pts = x.vertices();
        for &v in &pts {
            self.check(v)?;
        }
        if let Simplex::Edge(a, b) = x {
            if !self.neighbors(a).contains(&b) {
                return Ok(None);
            }
        }
        let target = match anchor {
            Anchor::Alcove(i) => {
                let (a, b) = self.edge_of_a(i)?;
                pts.push(a);
                pts.push(b);
                None
            }
            Anchor::End(End::Minus) => Some(self.apartment[0]),
            Anchor::End(End::Plus) => Some(*self.apartment.last().expect("non-empty")),
        };
        let (u, w) = match target {
            Some(t) => {
                let u = *pts
                    .iter()
                    .max_by_key(|&&p| (self.distance(p, t), std::cmp::Reverse(p)))
                    .expect("non-empty");
                (u, t)
            }
            None => {
                let mut best = (pts[0], pts[0], 0);
                for &p in &pts {
                    for &r in &pts {
                        let d = self.distance(p, r);
                        if d > best.2 {
                            best = (p, r, d);
                        }
                    }
                }
                (best.0, best.1)
            }
        };
        let mut path = self.path(u, w);
        if !pts.iter().all(|p| path.contains(p)) {
            return Ok(None);
        }
        if target.is_none() {
            self.extend_to_leaf(&mut path);
        }
        path.reverse();
        self.extend_to_leaf(&mut path);
        Ok(Some(TreeApartment(path)))
    }

    /// `r_{A,c}` for `c = (a_i, a_{i+1})`.
    pub fn retract_at_alcove(&self, i: i64, x: usize) -> Result<usize, TreeError> {
        self.edge_of_a(i)?;
        self.check(x)?;
        let (j, d) = self.branch_point(x);
        let d = d as i64;
        let k = if j > i { j + d } else { j - d };
        Ok(self.a(k).expect("images stay inside the truncation"))
    }

    /// Whether `x` is far enough from the truncation boundary for end-based
    /// maps.
    pub fn within_margin(&self, x: usize) -> bool {
        self.depth[x] + 2 <= self.radius
    }

    /// `ρ_{A,ξ}`.
    pub fn retract_from_end(&self, end: End, x: usize) -> Result<usize, TreeError> {
        self.check(x)?;
        if !self.within_margin(x) {
            return Err(TreeError::MarginExceeded(x));
        }
        let (j, d) = self.branch_point(x);
        let d = d as i64;
        let k = match end {
            End::Minus => j + d,
            End::Plus => j - d,
        };
        Ok(self.a(k).expect("images stay inside the truncation"))
    }

    /// Busemann level of `x` for the end, normalized so that `a_i` has level `i`.
    pub fn busemann(&self, end: End, x: usize) -> i64 {
        let r = self.radius as i64;
        match end {
            End::Minus => self.distance(x, self.apartment[0]) as i64 - r,
            End::Plus => r + 1 - self.distance(x, *self.apartment.last().expect("non-empty")) as i64,
        }
    }

    /// An edge `c` of `A` with `r_{A,c}(d) = ρ_{A,ξ}(d)`, searching outward
    /// from the base edge.
    pub fn compat_witness(&self, end: End, d: usize) -> Result<i64, TreeError> {
        let target = self.retract_from_end(end, d)?;
        let r = self.radius as i64;
        let order = std::iter::once(0).chain((1..=r).flat_map(|s| [-s, s]));
        for i in order {
            if self.retract_at_alcove(i, d)? == target {
                return Ok(i);
            }
        }
        Err(TreeError::NoWitness(d))
    }

    /// Vertices grouped by their image under a retraction. End retractions
    /// only see vertices within the margin.
    pub fn fiber_partition(&self, anchor: Anchor) -> Result<BTreeMap<i64, Vec<usize>>, TreeError> {
        let mut parts: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for x in 0..self.vertex_count() {
            let image = match anchor {
                Anchor::Alcove(i) => self.retract_at_alcove(i, x)?,
                Anchor::End(e) => {
                    if !self.within_margin(x) {
                        continue;
                    }
                    self.retract_from_end(e, x)?
                }
            };
            parts
                .entry(self.index_in_a[image].expect("images lie on A"))
                .or_default()
                .push(x);
        }
        Ok(parts)
    }

    /// Image of `x` under the isomorphism from `apt` onto `A` fixing the
    /// edge `(a_i, a_{i+1})`, which `apt` must contain.
    pub fn isomorphism_image(&self, apt: &TreeApartment, i: i64, x: usize) -> Option<usize> {
        let (a, b) = self.edge_of_a(i).ok()?;
        let pa = apt.position(a)? as i64;
        let pb = apt.position(b)? as i64;
        let px = apt.position(x)? as i64;
        let orient = pb - pa;
        if orient.abs() != 1 {
            return None;
        }
        self.a(i + (px - pa) * orient)
    }

    /// Every leaf-to-leaf geodesic containing all of `vertices`.
    pub fn all_apartments_containing(&self, vertices: &[usize]) -> Vec<TreeApartment> {
        let leaves: Vec<usize> = (0..self.vertex_count()).filter(|&v| self.is_leaf(v)).collect();
        let mut out = Vec::new();
        for (n, &u) in leaves.iter().enumerate() {
            for &w in &leaves[n + 1..] {
                let p = self.path(u, w);
                if vertices.iter().all(|v| p.contains(v)) {
                    out.push(TreeApartment(p));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn bfs_count(t: &TreeBuilding) -> usize {
        let mut seen = HashSet::from([0usize]);
        let mut q = VecDeque::from([0usize]);
        while let Some(v) = q.pop_front() {
            for w in t.neighbors(v) {
                if seen.insert(w) {
                    q.push_back(w);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn sizes() {
        let t = build_tree(2, 1).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(bfs_count(&t), 6);
        for (q, r) in [(2, 4), (3, 3), (2, 8)] {
            let t = build_tree(q, r).unwrap();
            assert_eq!(bfs_count(&t), t.vertex_count());
            assert_eq!(t.apartment().0.len(), 2 * r + 2);
            for v in 0..t.vertex_count() {
                let expected = if t.is_leaf(v) { 1 } else { q + 1 };
                assert_eq!(t.degree(v), expected, "vertex {v}");
            }
        }
        assert_eq!(build_tree(2, 13).unwrap_err(), TreeError::BudgetExceeded { q: 2, radius: 13 });
        assert_eq!(build_tree(1, 3).unwrap_err(), TreeError::InvalidBranching(1));
    }

    #[test]
    fn apartment_is_a_geodesic() {
        let t = build_tree(2, 5).unwrap();
        let a = t.apartment().0;
        for w in a.windows(2) {
            assert!(t.neighbors(w[0]).contains(&w[1]));
        }
        assert_eq!(t.distance(a[0], *a.last().unwrap()), a.len() - 1);
        assert_eq!(t.a(0), Some(0));
        assert_eq!(t.a(1), Some(1));
    }

    #[test]
    fn alcove_retraction_walk() {
        let t = build_tree(2, 6).unwrap();
        // a vertex two steps off A at u = a_2, with c = (a_0, a_1) on the other side
        let u = t.a(2).unwrap();
        let off = *t.children[u].iter().find(|&&c| t.index_in_a(c).is_none()).unwrap();
        let x = t.children[off][0];
        assert_eq!(t.distance(x, u), 2);
        assert_eq!(t.retract_at_alcove(0, x).unwrap(), t.a(4).unwrap());
        for v in t.apartment().0 {
            assert_eq!(t.retract_at_alcove(0, v).unwrap(), v);
            assert_eq!(t.retract_from_end(End::Minus, v).ok().unwrap_or(v), v);
        }
    }

    #[test]
    fn witness_independence_small() {
        let t = build_tree(2, 4).unwrap();
        for i in t.apartment_edges() {
            let (a, b) = t.edge_of_a(i).unwrap();
            for x in 0..t.vertex_count() {
                let expected = t.retract_at_alcove(i, x).unwrap();
                let apts = t.all_apartments_containing(&[a, b, x]);
                assert!(!apts.is_empty());
                for apt in apts {
                    assert_eq!(t.isomorphism_image(&apt, i, x), Some(expected));
                }
            }
        }
    }

    #[test]
    fn end_retraction_is_busemann() {
        let t = build_tree(2, 7).unwrap();
        for x in (0..t.vertex_count()).filter(|&x| t.within_margin(x)) {
            for e in [End::Minus, End::Plus] {
                let img = t.retract_from_end(e, x).unwrap();
                assert_eq!(t.index_in_a(img), Some(t.busemann(e, x)));
            }
        }
        let leaf = t.vertex_count() - 1;
        assert_eq!(t.retract_from_end(End::Plus, leaf), Err(TreeError::MarginExceeded(leaf)));
    }

    #[test]
    fn base_edge_fibers() {
        let t = build_tree(2, 6).unwrap();
        let parts = t.fiber_partition(Anchor::Alcove(0)).unwrap();
        for n in 0..=6i64 {
            assert_eq!(parts[&(1 + n)].len(), 1 << n);
            assert_eq!(parts[&(-n)].len(), 1 << n);
        }
    }

    #[test]
    fn compat_witness_far_out() {
        let t = build_tree(2, 8).unwrap();
        for d in (0..t.vertex_count()).filter(|&x| t.within_margin(x)) {
            let (j, _) = t.branch_point(d);
            let target = t.retract_from_end(End::Minus, d).unwrap();
            let i = t.compat_witness(End::Minus, d).unwrap();
            assert_eq!(t.retract_at_alcove(i, d).unwrap(), target);
            // every alcove beyond the branch point towards ξ⁻ works
            for far in -(t.radius() as i64)..j {
                assert_eq!(t.retract_at_alcove(far, d).unwrap(), target);
            }
        }
    }
}
