//! Seeded verification suites with deterministic JSON reports.

use std::collections::{BTreeMap, VecDeque};

use foldkit::folding::{apply_operator, orbit, FoldingError, Mode, Operator};
use foldkit::gallery::{build_corpus, minimal_gallery, CorpusItem};
use foldkit::glued_complex::{lift, retract, theorem_ef_rhs, theorem_etilde_rhs, Direction, GluedError, Scope};
use foldkit::path_bridge::{embed_segment, push_through, Segment};
use foldkit::tree_building::{build_tree, Anchor, End, Simplex, TreeBuilding};
use foldkit::{CartanType, Face, Gallery, Point, RootSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

const MAX_LEN: usize = 12;
const EXEMPLARS: usize = 10;
const OPS: [Operator; 3] = [Operator::E, Operator::F, Operator::ETilde];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Operators,
    Theorems,
    Tree,
    Crystal,
    Path,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "operators" => Suite::Operators,
            "theorems" => Suite::Theorems,
            "tree" => Suite::Tree,
            "crystal" => Suite::Crystal,
            "path" => Suite::Path,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub suite: Suite,
    /// Empty means the suite's default types.
    pub types: Vec<CartanType>,
    pub samples: usize,
    pub path_samples: usize,
    pub seed: u64,
    pub q: usize,
    pub depth: usize,
    pub jobs: usize,
    pub experiment: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            suite: Suite::All,
            types: Vec::new(),
            samples: 1000,
            path_samples: 100,
            seed: 7,
            q: 2,
            depth: 8,
            jobs: 1,
            experiment: false,
        }
    }
}

impl Options {
    fn types_or(&self, default: &[CartanType]) -> Vec<CartanType> {
        if self.types.is_empty() {
            default.to_vec()
        } else {
            self.types.clone()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub passed: bool,
    pub value: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("reports serialize")
    }
}

/// A tally of checks with the first few failures.
#[derive(Default, Clone, Debug)]
struct Tally {
    checked: usize,
    passed: usize,
    failures: Vec<Value>,
}

impl Tally {
    fn record(&mut self, ok: bool, exemplar: impl FnOnce() -> Value) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < EXEMPLARS {
            self.failures.push(exemplar());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.passed += other.passed;
        for f in other.failures {
            if self.failures.len() < EXEMPLARS {
                self.failures.push(f);
            }
        }
    }

    fn ok(&self) -> bool {
        self.checked == self.passed
    }

    fn value(&self) -> Value {
        json!({"checked": self.checked, "passed": self.passed, "failures": self.failures})
    }
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Runs `f` on every item and returns the results in item order.
fn per_item<T: Send>(jobs: usize, items: &[CorpusItem], f: impl Fn(&CorpusItem) -> T + Sync) -> Vec<T> {
    pool(jobs).install(|| items.par_iter().map(&f).collect())
}

fn exemplar(item: &CorpusItem, op: Operator, root: usize, detail: impl std::fmt::Display) -> Value {
    json!({"serial": item.serial, "op": op.name(), "root": root + 1, "detail": detail.to_string()})
}

fn rate(num: usize, den: usize) -> Value {
    if den == 0 {
        Value::Null
    } else {
        json!(((num as f64 / den as f64) * 10_000.0).round() / 10_000.0)
    }
}

#[derive(Default)]
struct OperatorTallies {
    defined: [usize; 3],
    undefined: [usize; 3],
    validity: Tally,
    weight: Tally,
    inverse: Tally,
    inverse_undefined: usize,
    errors: Tally,
}

fn operator_item(rs: &RootSystem, item: &CorpusItem) -> OperatorTallies {
    let mut t = OperatorTallies::default();
    let g = &item.gallery;
    let wt = g.weight().expect("corpus galleries end at vertices");
    for root in 0..rs.rank() {
        let coroot = rs.coroot(rs.simple_root(root)).expect("simple roots belong to the system");
        for (n, op) in OPS.into_iter().enumerate() {
            let out = match apply_operator(rs, g, root, op, Mode::Corrected) {
                Ok(out) => out.gallery,
                Err(FoldingError::Undefined(_)) => {
                    t.undefined[n] += 1;
                    continue;
                }
                Err(e) => {
                    t.errors.record(false, || exemplar(item, op, root, e));
                    continue;
                }
            };
            t.defined[n] += 1;
            let violations = out.validate(rs);
            t.validity.record(violations.is_empty(), || exemplar(item, op, root, format!("{violations:?}")));
            let expected = match op {
                Operator::E => &wt + &coroot,
                Operator::F => &wt - &coroot,
                Operator::ETilde => wt.clone(),
            };
            let got = out.weight();
            t.weight.record(got.as_ref() == Ok(&expected), || {
                exemplar(item, op, root, format!("weight {got:?}, expected {expected}"))
            });
            let back = match op {
                Operator::E => Operator::F,
                Operator::F => Operator::E,
                Operator::ETilde => continue,
            };
            match apply_operator(rs, &out, root, back, Mode::Corrected) {
                Ok(r) => t
                    .inverse
                    .record(&r.gallery == g, || exemplar(item, op, root, "inverse does not return")),
                Err(FoldingError::Undefined(_)) => t.inverse_undefined += 1,
                Err(e) => t.errors.record(false, || exemplar(item, op, root, e)),
            }
        }
    }
    t
}

fn operators_for(rs: &RootSystem, opts: &Options) -> (bool, Value) {
    let corpus = build_corpus(rs, opts.samples, opts.seed, MAX_LEN);
    let mut all = OperatorTallies::default();
    for t in per_item(opts.jobs, &corpus.items, |item| operator_item(rs, item)) {
        for n in 0..3 {
            all.defined[n] += t.defined[n];
            all.undefined[n] += t.undefined[n];
        }
        all.validity.merge(t.validity);
        all.weight.merge(t.weight);
        all.inverse.merge(t.inverse);
        all.inverse_undefined += t.inverse_undefined;
        all.errors.merge(t.errors);
    }
    let passed = all.validity.ok()
        && all.weight.ok()
        && all.inverse.ok()
        && all.errors.checked == 0;
    let apps: serde_json::Map<String, Value> = OPS
        .iter()
        .enumerate()
        .map(|(n, op)| {
            (
                op.name().to_string(),
                json!({"defined": all.defined[n], "undefined": all.undefined[n]}),
            )
        })
        .collect();
    let value = json!({
        "type": rs.cartan_type().to_string(),
        "samples": opts.samples,
        "passed": passed,
        "applications": apps,
        "validity": all.validity.value(),
        "weight_law": all.weight.value(),
        "inverse_law": {
            "checked": all.inverse.checked,
            "passed": all.inverse.passed,
            "inverse_undefined": all.inverse_undefined,
            "failures": all.inverse.failures,
        },
        "errors": all.errors.failures,
    });
    (passed, value)
}

#[derive(Default)]
struct TheoremTallies {
    defined: usize,
    regular: Tally,
    nonregular: usize,
    experiment_matched: usize,
    experiment_mismatched: usize,
    experiment_errors: usize,
    etilde: Tally,
}

fn theorem_item(rs: &RootSystem, item: &CorpusItem, experiment: bool) -> TheoremTallies {
    let mut t = TheoremTallies::default();
    let g = &item.gallery;
    for root in 0..rs.rank() {
        for op in [Operator::E, Operator::F] {
            let Ok(lhs) = apply_operator(rs, g, root, op, Mode::Corrected) else {
                continue;
            };
            t.defined += 1;
            match theorem_ef_rhs(rs, g, root, op, Scope::Regular) {
                Ok(rhs) => t
                    .regular
                    .record(rhs == lhs.gallery, || exemplar(item, op, root, "retraction side differs")),
                Err(GluedError::RegularityViolated { .. }) => {
                    t.nonregular += 1;
                    if experiment {
                        match theorem_ef_rhs(rs, g, root, op, Scope::Experiment) {
                            Ok(rhs) if rhs == lhs.gallery => t.experiment_matched += 1,
                            Ok(_) => t.experiment_mismatched += 1,
                            Err(_) => t.experiment_errors += 1,
                        }
                    }
                }
                Err(e) => t.regular.record(false, || exemplar(item, op, root, e)),
            }
        }
        if let Ok(lhs) = apply_operator(rs, g, root, Operator::ETilde, Mode::Corrected) {
            let rhs = theorem_etilde_rhs(rs, g, root);
            t.etilde.record(rhs.as_ref() == Ok(&lhs.gallery), || {
                let detail = match &rhs {
                    Ok(_) => "retraction side differs".to_string(),
                    Err(e) => e.to_string(),
                };
                exemplar(item, Operator::ETilde, root, detail)
            });
        }
    }
    t
}

/// Alcoves reachable from the fundamental alcove by crossing at most
/// `radius` walls.
pub fn alcove_ball(rs: &RootSystem, radius: usize) -> Vec<Face> {
    let start = rs.fundamental_alcove();
    let mut dist = BTreeMap::from([(start.clone(), 0usize)]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        if d == radius {
            continue;
        }
        for drop in 0..c.vertices().len() {
            let mut vs = c.vertices().to_vec();
            vs.remove(drop);
            let panel = Face::new(vs).expect("sub-face of an alcove");
            for h in rs.walls_containing(&panel) {
                let next = c.map(&rs.reflection_at(h));
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    dist.into_keys().collect()
}

fn reflection_lemma(rs: &RootSystem) -> Tally {
    let mut t = Tally::default();
    for c in alcove_ball(rs, 4) {
        for a in 0..rs.rank() {
            for k in -3..=3 {
                let x = lift(rs, &c, a, k);
                if !x.is_branch() {
                    continue;
                }
                let dom = retract(rs, &x, Direction::Dominant);
                let anti = retract(rs, &x, Direction::Antidominant);
                t.record(dom == anti.map(&rs.simple_reflection(a, k)), || {
                    json!({"alcove": c.to_string(), "root": a + 1, "k": k})
                });
            }
        }
    }
    t
}

fn affine_identity(rs: &RootSystem) -> Tally {
    let mut t = Tally::default();
    for a in 0..rs.rank() {
        for m in -5..=5 {
            let composite = rs.simple_reflection(a, m + 1).compose(&rs.simple_reflection(a, m));
            t.record(composite == rs.coroot_translation(a, true), || json!({"root": a + 1, "m": m}));
        }
    }
    t
}

fn theorems_for(rs: &RootSystem, opts: &Options) -> (bool, Value) {
    let corpus = build_corpus(rs, opts.samples, opts.seed, MAX_LEN);
    let mut all = TheoremTallies::default();
    for t in per_item(opts.jobs, &corpus.items, |item| theorem_item(rs, item, opts.experiment)) {
        all.defined += t.defined;
        all.regular.merge(t.regular);
        all.nonregular += t.nonregular;
        all.experiment_matched += t.experiment_matched;
        all.experiment_mismatched += t.experiment_mismatched;
        all.experiment_errors += t.experiment_errors;
        all.etilde.merge(t.etilde);
    }
    let lemma = reflection_lemma(rs);
    let identity = affine_identity(rs);
    let passed = all.regular.ok() && all.etilde.ok() && lemma.ok() && identity.ok();
    let mut value = json!({
        "type": rs.cartan_type().to_string(),
        "samples": opts.samples,
        "passed": passed,
        "ef": {
            "defined": all.defined,
            "regular": all.regular.checked,
            "regularity_rate": rate(all.regular.checked, all.defined),
            "matched": all.regular.passed,
            "mismatches": all.regular.checked - all.regular.passed,
            "failures": all.regular.failures,
        },
        "etilde": {
            "checked": all.etilde.checked,
            "matched": all.etilde.passed,
            "mismatches": all.etilde.checked - all.etilde.passed,
            "failures": all.etilde.failures,
        },
        "reflection_lemma": lemma.value(),
        "affine_identity": identity.value(),
    });
    if opts.experiment {
        value["experiment"] = json!({
            "nonregular": all.nonregular,
            "matched": all.experiment_matched,
            "mismatched": all.experiment_mismatched,
            "errors": all.experiment_errors,
            "agreement_rate": rate(all.experiment_matched, all.nonregular),
        });
    }
    (passed, value)
}

fn is_geodesic(t: &TreeBuilding, path: &[usize]) -> bool {
    path.windows(2).all(|w| t.neighbors(w[0]).contains(&w[1]))
        && t.distance(path[0], *path.last().expect("non-empty")) + 1 == path.len()
}

/// `r_{A,c}(x)` recovered from distances alone: the vertex of `A` at the
/// same distances from both ends of `c` as `x`.
fn retraction_oracle(t: &TreeBuilding, i: i64, x: usize) -> Option<i64> {
    let a = t.a(i)?;
    let b = t.a(i + 1)?;
    let (da, db) = (t.distance(x, a), t.distance(x, b));
    let r = t.radius() as i64;
    (-r..=r + 1).find(|&k| {
        let v = t.a(k).expect("k is on A");
        t.distance(v, a) == da && t.distance(v, b) == db
    })
}

pub fn tree_report(q: usize, depth: usize) -> Report {
    let t = match build_tree(q, depth) {
        Ok(t) => t,
        Err(e) => {
            return Report {
                passed: false,
                value: json!({"q": q, "radius": depth, "passed": false, "error": e.to_string()}),
            }
        }
    };
    let anchors: Vec<Anchor> = t
        .apartment_edges()
        .map(Anchor::Alcove)
        .chain([Anchor::End(End::Minus), Anchor::End(End::Plus)])
        .collect();

    // apartments through every simplex and anchor
    let mut simplices: Vec<Simplex> = Vec::new();
    for v in 0..t.vertex_count() {
        if t.depth(v) < depth {
            simplices.push(Simplex::Vertex(v));
            for w in t.neighbors(v) {
                if v < w && t.depth(w) < depth {
                    simplices.push(Simplex::Edge(v, w));
                }
            }
        }
    }
    let mut witnesses = Tally::default();
    for &x in &simplices {
        let pts = match x {
            Simplex::Vertex(v) => vec![v],
            Simplex::Edge(a, b) => vec![a, b],
        };
        for &anchor in &anchors {
            let found = t.apartment_through(x, anchor).ok().flatten();
            let ok = found.as_ref().is_some_and(|apt| {
                let anchor_pts = match anchor {
                    Anchor::Alcove(i) => vec![t.a(i).unwrap(), t.a(i + 1).unwrap()],
                    Anchor::End(End::Minus) => vec![t.a(-(depth as i64)).unwrap()],
                    Anchor::End(End::Plus) => vec![t.a(depth as i64 + 1).unwrap()],
                };
                is_geodesic(&t, &apt.0) && pts.iter().chain(&anchor_pts).all(|&p| apt.contains(p))
            });
            witnesses.record(ok, || json!({"simplex": format!("{x:?}"), "anchor": format!("{anchor:?}")}));
        }
    }

    // compatible alcoves and Busemann levels inside the margin
    let mut compat = Tally::default();
    let mut busemann = Tally::default();
    for x in (0..t.vertex_count()).filter(|&x| t.within_margin(x)) {
        for end in [End::Minus, End::Plus] {
            let target = t.retract_from_end(end, x).expect("within margin");
            let ok = t
                .compat_witness(end, x)
                .is_ok_and(|i| t.retract_at_alcove(i, x) == Ok(target));
            compat.record(ok, || json!({"vertex": x, "end": format!("{end:?}")}));
            busemann.record(t.index_in_a(target) == Some(t.busemann(end, x)), || {
                json!({"vertex": x, "end": format!("{end:?}")})
            });
        }
    }

    // fibers against horospheres and the distance oracle
    let mut fibers = Tally::default();
    for &anchor in &anchors {
        let parts = t.fiber_partition(anchor).expect("anchors lie on A");
        let mut oracle: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for x in 0..t.vertex_count() {
            let level = match anchor {
                Anchor::Alcove(i) => retraction_oracle(&t, i, x),
                Anchor::End(e) => t.within_margin(x).then(|| t.busemann(e, x)),
            };
            if let Some(k) = level {
                oracle.entry(k).or_default().push(x);
            }
        }
        let sizes = |m: &BTreeMap<i64, Vec<usize>>| m.iter().map(|(k, v)| (*k, v.len())).collect::<Vec<_>>();
        fibers.record(parts == oracle, || {
            json!({"anchor": format!("{anchor:?}"), "sizes": format!("{:?}", sizes(&parts)), "oracle": format!("{:?}", sizes(&oracle))})
        });
    }
    let base_sizes: BTreeMap<String, usize> = t
        .fiber_partition(Anchor::Alcove(0))
        .expect("base edge")
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.len()))
        .collect();

    let passed = witnesses.ok() && compat.ok() && busemann.ok() && fibers.ok();
    Report {
        passed,
        value: json!({
            "q": q,
            "radius": depth,
            "vertices": t.vertex_count(),
            "passed": passed,
            "apartment_witnesses": witnesses.value(),
            "compatibility_witnesses": compat.value(),
            "busemann_levels": busemann.value(),
            "fibers": fibers.value(),
            "base_edge_fiber_sizes": base_sizes,
        }),
    }
}

/// Weyl's dimension formula for the dual group at the coweight `lambda`:
/// the product over positive roots of `⟨λ+ρ∨,β⟩ / ⟨ρ∨,β⟩`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Point) -> usize {
    let mut num = foldkit::Rational::from_integer(1.into());
    for (k, root) in rs.positive_roots().iter().enumerate() {
        let h = foldkit::arith::int(root.height());
        num *= (rs.level(lambda, k) + &h) / h;
    }
    assert!(num.is_integer(), "dimension formula gives an integer");
    foldkit::arith::as_i64(&num).expect("small dimension") as usize
}

fn crystal_for(rs: &RootSystem) -> (bool, Value) {
    let lambda = rs.coroot(rs.highest_root()).expect("highest root");
    let origin = Face::vertex(Point::origin(rs.rank()));
    let start = minimal_gallery(rs, &origin, &Face::vertex(lambda.clone()));
    let ops: Vec<(Operator, usize)> = (0..rs.rank()).map(|a| (Operator::F, a)).collect();
    let expected = weyl_dimension(rs, &lambda);
    let found = orbit(rs, &start, &ops, 10_000);
    let size = found.as_ref().map(|o| o.len()).ok();
    let passed = size == Some(expected);
    let value = json!({
        "type": rs.cartan_type().to_string(),
        "lambda": lambda.to_string(),
        "orbit_size": size,
        "dimension_formula": expected,
        "passed": passed,
        "error": found.err().map(|e| e.to_string()),
    });
    (passed, value)
}

fn path_for(rs: &RootSystem, opts: &Options) -> (bool, Value) {
    let n = rs.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let candidates: Vec<(Operator, usize)> = OPS.iter().flat_map(|&op| (0..n).map(move |a| (op, a))).collect();
    let mut endpoint = Tally::default();
    let mut contained = Tally::default();
    let mut identity = Tally::default();
    let mut errors = Tally::default();
    let mut applied = 0;
    for serial in 0..opts.path_samples {
        let lambda = loop {
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let p = rs.coroot_point(&coeffs);
            if !p.is_origin() {
                break p;
            }
        };
        let pi = Segment::new(Point::origin(n), lambda.clone());
        let steps = rng.gen_range(0..=3);
        let mut seq = Vec::new();
        let mut current = embed_segment(rs, &pi);
        for _ in 0..steps {
            let mut defined: Vec<((Operator, usize), Gallery)> = candidates
                .iter()
                .filter_map(|&(op, a)| {
                    let out = apply_operator(rs, &current, a, op, Mode::Corrected).ok()?;
                    Some(((op, a), out.gallery))
                })
                .collect();
            if defined.is_empty() {
                break;
            }
            let (c, next) = defined.swap_remove(rng.gen_range(0..defined.len()));
            seq.push(c);
            current = next;
        }
        applied += seq.len();
        let label = || {
            json!({
                "serial": serial,
                "end": lambda.to_string(),
                "ops": seq.iter().map(|(op, a)| format!("{}{}", op.name(), a + 1)).collect::<Vec<_>>(),
            })
        };
        let pushed = match push_through(rs, &pi, &seq) {
            Ok(p) => p,
            Err(e) => {
                errors.record(false, || {
                    let mut l = label();
                    l["detail"] = json!(e.to_string());
                    l
                });
                continue;
            }
        };
        endpoint.record(pushed.endpoint() == pushed.gallery.weight().as_ref().ok(), label);
        contained.record(pushed.contained(10), label);
        if seq.is_empty() && rs.is_dominant(&lambda) {
            let same = pushed
                .pieces
                .iter()
                .all(|p| p.start == pi.at(&p.t0) && p.end == pi.at(&p.t1));
            identity.record(same, label);
        }
    }
    let passed = endpoint.ok() && contained.ok() && identity.ok() && errors.checked == 0;
    let value = json!({
        "type": rs.cartan_type().to_string(),
        "samples": opts.path_samples,
        "operators_applied": applied,
        "passed": passed,
        "endpoint_law": endpoint.value(),
        "containment": contained.value(),
        "dominant_identity": identity.value(),
        "errors": errors.failures,
    });
    (passed, value)
}

fn per_type(types: &[CartanType], f: impl Fn(&RootSystem) -> (bool, Value)) -> (bool, Value) {
    let mut passed = true;
    let mut out = Vec::new();
    for &t in types {
        let (ok, v) = f(&RootSystem::new(t));
        passed &= ok;
        out.push(v);
    }
    (passed, Value::Array(out))
}

const CORPUS_TYPES: [CartanType; 3] = [CartanType::A2, CartanType::C2, CartanType::G2];

pub fn run(opts: &Options) -> Report {
    let mut value = serde_json::Map::new();
    let mut passed = true;
    let wants = |s: Suite| opts.suite == s || opts.suite == Suite::All;
    value.insert("seed".into(), json!(opts.seed));
    if wants(Suite::Operators) {
        let (ok, v) = per_type(&opts.types_or(&CORPUS_TYPES), |rs| operators_for(rs, opts));
        passed &= ok;
        value.insert("operators".into(), v);
    }
    if wants(Suite::Theorems) {
        let (ok, v) = per_type(&opts.types_or(&CORPUS_TYPES), |rs| theorems_for(rs, opts));
        passed &= ok;
        value.insert("theorems".into(), v);
    }
    if wants(Suite::Tree) {
        let r = tree_report(opts.q, opts.depth);
        passed &= r.passed;
        value.insert("tree".into(), r.value);
    }
    if wants(Suite::Crystal) {
        let (ok, v) = per_type(&opts.types_or(&[CartanType::A2]), crystal_for);
        passed &= ok;
        value.insert("crystal".into(), v);
    }
    if wants(Suite::Path) {
        let (ok, v) = per_type(&opts.types_or(&CORPUS_TYPES), |rs| path_for(rs, opts));
        passed &= ok;
        value.insert("path".into(), v);
    }
    value.insert("passed".into(), json!(passed));
    Report {
        passed,
        value: Value::Object(value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use foldkit::build_root_system;

    #[test]
    fn dimension_formula() {
        let a2 = build_root_system("A2").unwrap();
        assert_eq!(weyl_dimension(&a2, &Point::from_ints(&[1, 1])), 8);
        assert_eq!(weyl_dimension(&a2, &Point::from_ints(&[1, 0])), 3);
        assert_eq!(weyl_dimension(&a2, &Point::origin(2)), 1);
        let g2 = build_root_system("G2").unwrap();
        // α_1 is the short simple root
        assert_eq!(weyl_dimension(&g2, &Point::from_ints(&[1, 0])), 14);
        assert_eq!(weyl_dimension(&g2, &Point::from_ints(&[0, 1])), 7);
        let a1 = build_root_system("A1").unwrap();
        assert_eq!(weyl_dimension(&a1, &Point::from_ints(&[4])), 5);
    }

    #[test]
    fn small_runs_pass() {
        let opts = Options {
            samples: 40,
            path_samples: 10,
            depth: 5,
            ..Options::default()
        };
        let r = run(&opts);
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.to_json(), run(&Options { jobs: 3, ..opts }).to_json());
    }
}
