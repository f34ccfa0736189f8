use std::collections::{BTreeMap, VecDeque};

use foldkit::folding::{apply_operator, FoldingError, Mode, Operator};
use foldkit::gallery::{build_corpus, generate_random_folded, minimal_gallery, FoldPolicy};
use foldkit::path_bridge::{push_through, Segment};
use foldkit::{build_root_system, CartanType, Face, Point, Rational, RootSystem, Sign};
use proptest::prelude::*;

fn system(t: usize) -> RootSystem {
    RootSystem::new(CartanType::ALL[t % CartanType::ALL.len()])
}

fn point(coords: &[(i64, i64)]) -> Point {
    Point::new(coords.iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect())
}

fn rational_coords(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, 1i64..7), n)
}

/// Walls strictly between the barycenters of two alcoves.
fn separating_walls(rs: &RootSystem, a: &Face, b: &Face) -> usize {
    let (x, y) = (a.barycenter(), b.barycenter());
    (0..rs.positive_roots().len())
        .map(|k| {
            let (la, lb) = (rs.level(&x, k), rs.level(&y, k));
            let (lo, hi) = if la < lb { (la, lb) } else { (lb, la) };
            let lo = lo.floor().to_integer();
            let hi = hi.ceil().to_integer();
            usize::try_from(hi - lo - 1).unwrap()
        })
        .sum()
}

/// Alcoves by gallery distance from the fundamental alcove, found by
/// reflecting across panels.
fn alcove_ball(rs: &RootSystem, radius: usize) -> BTreeMap<Face, usize> {
    let start = rs.fundamental_alcove();
    let mut dist = BTreeMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        if d == radius {
            continue;
        }
        for drop in 0..c.vertices().len() {
            let mut vs = c.vertices().to_vec();
            vs.remove(drop);
            let panel = Face::new(vs).unwrap();
            let walls = rs.walls_containing(&panel);
            assert_eq!(walls.len(), 1);
            let next = c.map(&rs.reflection_at(walls[0]));
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

#[test]
fn minimal_gallery_length_matches_bfs() {
    for name in ["A2", "C2", "G2", "A3"] {
        let rs = build_root_system(name).unwrap();
        let fa = rs.fundamental_alcove();
        for (c, d) in alcove_ball(&rs, 4) {
            assert_eq!(separating_walls(&rs, &fa, &c), d, "{name} {c}");
            let g = minimal_gallery(&rs, &fa, &c);
            assert!(g.is_valid(&rs));
            if d == 0 {
                assert!(g.is_trivial());
                continue;
            }
            assert_eq!(g.len(), d + 1, "{name} {c}");
            assert_eq!(g.alcoves().first(), Some(&fa));
            assert_eq!(g.alcoves().last(), Some(&c));
        }
    }
}

#[test]
fn reflection_lemma_in_a_ball() {
    use foldkit::glued_complex::{lift, retract, Direction};
    for name in ["A2", "C2", "G2"] {
        let rs = build_root_system(name).unwrap();
        let mut branches = 0;
        for c in alcove_ball(&rs, 4).keys() {
            for a in 0..rs.rank() {
                for k in -3..=3 {
                    let x = lift(&rs, c, a, k);
                    let dom = retract(&rs, &x, Direction::Dominant);
                    let anti = retract(&rs, &x, Direction::Antidominant);
                    if x.is_branch() {
                        branches += 1;
                        assert_eq!(dom, anti.map(&rs.simple_reflection(a, k)));
                    } else {
                        assert_eq!(dom, anti);
                    }
                }
            }
        }
        assert!(branches > 0);
    }
}

#[test]
fn a2_crystal_orbit_has_eight_elements() {
    let rs = build_root_system("A2").unwrap();
    let top = rs.coroot_point(&[1, 1]);
    let g = minimal_gallery(&rs, &Face::vertex(Point::origin(2)), &Face::vertex(top));
    let orbit = foldkit::folding::orbit(&rs, &g, &[(Operator::F, 0), (Operator::F, 1)], 1000).unwrap();
    assert_eq!(orbit.len(), 8);
    let mut weights = BTreeMap::new();
    for x in &orbit {
        *weights.entry(x.weight().unwrap()).or_insert(0) += 1;
    }
    assert_eq!(weights.len(), 7);
    assert_eq!(weights[&Point::origin(2)], 2);
}

#[test]
fn corpus_is_reproducible() {
    let rs = build_root_system("C2").unwrap();
    let a = build_corpus(&rs, 30, 11, 8);
    let b = build_corpus(&rs, 30, 11, 8);
    for (x, y) in a.items.iter().zip(&b.items) {
        assert_eq!(x.gallery, y.gallery);
        assert!(x.gallery.len() <= 8);
        assert_eq!(x.gallery.gallery_type(&rs), x.minimal.gallery_type(&rs));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_linear(t in 0usize..6, coords in rational_coords(3)) {
        let rs = system(t);
        let x = point(&coords[..rs.rank()]);
        for (k, root) in rs.positive_roots().iter().enumerate() {
            let direct = rs.pairing(&x, root).unwrap();
            prop_assert_eq!(&direct, &x.dot_ints(root.coeffs()));
            prop_assert_eq!(&direct, &rs.level(&x, k));
            prop_assert_eq!(rs.pairing(&x, &root.neg()).unwrap(), -direct);
        }
    }

    #[test]
    fn reflections_are_involutions_fixing_their_wall(t in 0usize..6, coords in rational_coords(3), m in -4i64..5) {
        let rs = system(t);
        let x = point(&coords[..rs.rank()]);
        for root in rs.positive_roots() {
            let s = rs.affine_reflection(root, m).unwrap();
            let h = rs.hyperplane(root, m).unwrap();
            let y = s.apply(&x);
            prop_assert_eq!(s.apply(&y), x.clone());
            prop_assert_eq!(rs.position_sign(&y, h), rs.position_sign(&x, h).opposite());
            // the midpoint lies on the wall
            let mid = (&x + &y).scale(&Rational::new(1.into(), 2.into()));
            prop_assert_eq!(rs.position_sign(&mid, h), Sign::Zero);
        }
    }

    #[test]
    fn consecutive_reflections_translate(t in 0usize..6, m in -5i64..6, coords in rational_coords(3)) {
        let rs = system(t);
        let x = point(&coords[..rs.rank()]);
        for a in 0..rs.rank() {
            let composite = rs.simple_reflection(a, m + 1).compose(&rs.simple_reflection(a, m));
            prop_assert_eq!(&composite, &rs.coroot_translation(a, true));
            let shifted = composite.apply(&x);
            let coroot = rs.coroot(rs.simple_root(a)).unwrap();
            prop_assert_eq!(shifted, &x + &coroot);
        }
    }

    #[test]
    fn fast_simplex_test_agrees_with_folding(t in 0usize..6, walk in prop::collection::vec(0usize..4, 0..6), pick in prop::collection::vec(any::<bool>(), 8), extra in rational_coords(3)) {
        let rs = system(t);
        let gens = rs.affine_generators();
        let mut a = rs.fundamental_alcove();
        let mut b = a.clone();
        for (n, &g) in walk.iter().enumerate() {
            let w = &gens[g % gens.len()];
            if n % 2 == 0 { a = a.map(w) } else { b = b.map(w) }
        }
        let mut vs: Vec<Point> = a.vertices().iter().chain(b.vertices())
            .zip(&pick).filter(|(_, &p)| p).map(|(v, _)| v.clone()).collect();
        if pick[7] {
            vs.push(point(&extra[..rs.rank()]));
        }
        vs.sort();
        vs.dedup();
        if let Ok(f) = Face::new(vs) {
            prop_assert_eq!(rs.is_simplex(&f), rs.is_simplex_by_folding(&f), "{}", f);
        }
    }

    #[test]
    fn random_galleries_are_positively_folded(t in 1usize..6, target in 0usize..40, seed in any::<u64>()) {
        let rs = system(t);
        let corpus = build_corpus(&rs, target + 1, 3, 7);
        let ty = corpus.items[target].minimal.gallery_type(&rs);
        let g = generate_random_folded(&rs, &ty, seed, FoldPolicy::PositiveOnly).unwrap();
        prop_assert!(g.validate(&rs).is_empty());
        prop_assert!(g.is_positively_folded(&rs));
        prop_assert_eq!(g.gallery_type(&rs), ty);
        prop_assert!(g.start().is_vertex() && g.start().vertices()[0].is_origin());
        prop_assert!(rs.in_coroot_lattice(&g.weight().unwrap()));
    }

    #[test]
    fn operator_laws(t in 1usize..6, seed in any::<u64>()) {
        let rs = system(t);
        let corpus = build_corpus(&rs, 3, seed, 9);
        for item in &corpus.items {
            let g = &item.gallery;
            let wt = g.weight().unwrap();
            for a in 0..rs.rank() {
                let coroot = rs.coroot(rs.simple_root(a)).unwrap();
                for op in [Operator::E, Operator::F, Operator::ETilde] {
                    let out = match apply_operator(&rs, g, a, op, Mode::Corrected) {
                        Ok(out) => out.gallery,
                        Err(FoldingError::Undefined(_)) => continue,
                        Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
                    };
                    prop_assert!(out.validate(&rs).is_empty());
                    prop_assert_eq!(out.gallery_type(&rs), g.gallery_type(&rs));
                    let expected = match op {
                        Operator::E => &wt + &coroot,
                        Operator::F => &wt - &coroot,
                        Operator::ETilde => wt.clone(),
                    };
                    prop_assert_eq!(out.weight().unwrap(), expected);
                    let back = match op {
                        Operator::E => Some(Operator::F),
                        Operator::F => Some(Operator::E),
                        Operator::ETilde => None,
                    };
                    if let Some(b) = back {
                        let r = apply_operator(&rs, &out, a, b, Mode::Corrected).unwrap();
                        prop_assert_eq!(&r.gallery, g);
                    }
                }
            }
        }
    }

    #[test]
    fn pushed_paths_follow_the_gallery(t in 1usize..4, lam in prop::collection::vec(-3i64..4, 2), ops in prop::collection::vec((0usize..3, 0usize..2), 0..3)) {
        let rs = system(t);
        let y = rs.coroot_point(&lam);
        let pi = Segment::new(Point::origin(2), y.clone());
        let mut seq = Vec::new();
        for (o, a) in ops {
            let op = [Operator::E, Operator::F, Operator::ETilde][o];
            seq.push((op, a));
            if push_through(&rs, &pi, &seq).is_err() {
                seq.pop();
            }
        }
        let pushed = push_through(&rs, &pi, &seq).unwrap();
        prop_assert!(pushed.contained(10));
        if !y.is_origin() {
            prop_assert_eq!(pushed.pieces[0].start.clone(), Point::origin(2));
            prop_assert_eq!(pushed.endpoint(), Some(&pushed.gallery.weight().unwrap()));
        }
        if seq.is_empty() && rs.is_dominant(&y) {
            for p in &pushed.pieces {
                prop_assert_eq!(p.start.clone(), pi.at(&p.t0));
                prop_assert_eq!(p.end.clone(), pi.at(&p.t1));
            }
        }
    }
}
