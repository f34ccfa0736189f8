use std::collections::BTreeMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gallery::{is_positive_fold, minimal_gallery, Face, Gallery, GalleryError, GalleryType};
use crate::root_geometry::{Point, RootSystem};

/// Which folds the generator may choose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldPolicy {
    Any,
    /// Only folds whose folded alcove lies on the positive side of the wall.
    PositiveOnly,
}

/// A random gallery of the given alcove type starting in a random Weyl
/// chamber at the origin. At every interior panel the walk either crosses
/// the panel or folds back at it.
pub fn generate_random_folded(
    rs: &RootSystem,
    ty: &GalleryType,
    seed: u64,
    policy: FoldPolicy,
) -> Result<Gallery, GalleryError> {
    let labels = &ty.0;
    if labels.len().is_multiple_of(2) || labels.len() < 3 {
        return Err(GalleryError::BadType(format!("{} labels", labels.len())));
    }
    let fa = rs.fundamental_alcove();
    if labels.iter().skip(1).step_by(2).any(|c| c != &fa) {
        return Err(GalleryError::BadType("alcove labels must be the fundamental alcove".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weyl = rs.weyl_group();
    let mut chart = weyl[rng.gen_range(0..weyl.len())].clone();
    let l1 = labels.len() / 2;
    let mut panels = vec![labels[0].map(&chart)];
    let mut alcoves = vec![fa.map(&chart)];
    for i in 1..l1 {
        let prev = alcoves[i - 1].clone();
        let panel = labels[2 * i].map(&chart);
        let walls = rs.walls_containing(&panel);
        if panel.dim() + 1 != prev.dim() || walls.len() != 1 {
            return Err(GalleryError::BadType(format!("label {i} is not a panel")));
        }
        let may_fold = policy == FoldPolicy::Any || is_positive_fold(rs, &panel, &prev);
        let fold = may_fold && rng.gen_bool(0.5);
        if !fold {
            chart = rs.reflection_at(walls[0]).compose(&chart);
        }
        panels.push(panel);
        alcoves.push(fa.map(&chart));
    }
    panels.push(labels[2 * l1].map(&chart));
    Gallery::new(panels, alcoves)
}

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub serial: usize,
    pub seed: u64,
    pub minimal: Gallery,
    pub gallery: Gallery,
}

/// A seeded sample of positively folded galleries from the origin towards
/// dominant coroot-lattice points.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub items: Vec<CorpusItem>,
}

/// Dominant coroot-lattice points whose minimal gallery from the origin has
/// between one and `max_len` alcoves, in lexicographic order.
fn dominant_targets(rs: &RootSystem, max_len: usize) -> Vec<Point> {
    let n = rs.rank();
    let bound = max_len as i64;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        let p = Point::from_ints(&x);
        if !p.is_origin() && rs.in_coroot_lattice(&p) {
            // one alcove plus one per wall strictly between the endpoints
            let walls: i64 = (0..rs.positive_roots().len())
                .map(|k| {
                    let l: i64 = rs.positive_roots()[k]
                        .coeffs()
                        .iter()
                        .zip(&x)
                        .map(|(c, v)| c * v)
                        .sum();
                    (l - 1).max(0)
                })
                .sum();
            if walls < bound {
                out.push(p);
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = 0;
        }
    }
}

pub fn build_corpus(rs: &RootSystem, samples: usize, seed: u64, max_len: usize) -> Corpus {
    let targets = dominant_targets(rs, max_len);
    assert!(!targets.is_empty(), "no targets of length ≤ {max_len}");
    let origin = Face::vertex(Point::origin(rs.rank()));
    let mut cache: BTreeMap<usize, (Gallery, GalleryType)> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items = (0..samples)
        .map(|serial| {
            let t = rng.gen_range(0..targets.len());
            let item_seed = rng.next_u64();
            let (minimal, ty) = cache
                .entry(t)
                .or_insert_with(|| {
                    let g = minimal_gallery(rs, &origin, &Face::vertex(targets[t].clone()));
                    let ty = g.gallery_type(rs);
                    (g, ty)
                })
                .clone();
            let gallery = generate_random_folded(rs, &ty, item_seed, FoldPolicy::PositiveOnly)
                .expect("minimal galleries have alcove types");
            CorpusItem {
                serial,
                seed: item_seed,
                minimal,
                gallery,
            }
        })
        .collect();
    Corpus { items }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_geometry::build_root_system;

    #[test]
    fn replay_is_identical() {
        let c2 = build_root_system("C2").unwrap();
        let a = build_corpus(&c2, 20, 3, 12);
        let b = build_corpus(&c2, 20, 3, 12);
        for (x, y) in a.items.iter().zip(&b.items) {
            assert_eq!(x.gallery, y.gallery);
        }
    }

    #[test]
    fn targets_fit_the_length_bound() {
        let c2 = build_root_system("C2").unwrap();
        let origin = Face::vertex(Point::origin(2));
        for t in dominant_targets(&c2, 12) {
            let g = minimal_gallery(&c2, &origin, &Face::vertex(t));
            assert!((1..=12).contains(&g.len()));
        }
    }

    #[test]
    fn all_cross_keeps_the_type() {
        let g2 = build_root_system("G2").unwrap();
        let corpus = build_corpus(&g2, 30, 11, 12);
        for item in &corpus.items {
            let ty = item.minimal.gallery_type(&g2);
            assert_eq!(item.gallery.gallery_type(&g2), ty);
            assert!(item.gallery.is_valid(&g2));
            assert!(item.gallery.is_positively_folded(&g2));
        }
    }
}
