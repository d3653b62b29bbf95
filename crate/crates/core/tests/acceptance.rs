//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::{BTreeMap, HashMap};
use std::io::Write as _;
use std::time::Instant;

use num::{BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use intcx::complex::RandomParams;
use intcx::homology::{self, boundary, boundary_chain, FormalChain, Signature};
use intcx::interaction::enumerate_interactions;
use intcx::persistence::{self, Bar, Filtration, PersistenceDiagram, PersistentHomology};
use intcx::{examples, experiments, IntComplex, Interaction, Matrix, PrimeField, Rationals, Vertex, WeightedIntComplex};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn r(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

struct Outcome {
    ok: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            detail: String::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if !cond {
            self.ok = false;
            self.notes.push(what());
        }
    }
}

// ---------------------------------------------------------------------------
// Independent oracle: trees, faces and elimination written from scratch.

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Tree {
    Leaf(String),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn parse(s: &str) -> Tree {
        fn go(b: &[u8], i: &mut usize) -> Tree {
            if b[*i] == b'(' {
                *i += 1;
                let l = go(b, i);
                assert_eq!(b[*i], b',');
                *i += 1;
                let r = go(b, i);
                assert_eq!(b[*i], b')');
                *i += 1;
                Tree::Node(Box::new(l), Box::new(r))
            } else {
                let start = *i;
                while *i < b.len() && (b[*i] as char).is_ascii_alphanumeric() {
                    *i += 1;
                }
                Tree::Leaf(String::from_utf8(b[start..*i].to_vec()).unwrap())
            }
        }
        let mut i = 0;
        go(s.as_bytes(), &mut i)
    }

    fn size(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => l.size() + r.size(),
        }
    }

    /// Drop leaf `j` (0-based); a node left with one child is replaced by it.
    fn face(&self, j: usize) -> Tree {
        match self {
            Tree::Leaf(_) => unreachable!(),
            Tree::Node(l, r) => {
                let n = l.size();
                if j < n {
                    match **l {
                        Tree::Leaf(_) => (**r).clone(),
                        _ => Tree::Node(Box::new(l.face(j)), r.clone()),
                    }
                } else {
                    match **r {
                        Tree::Leaf(_) => (**l).clone(),
                        _ => Tree::Node(l.clone(), Box::new(r.face(j - n))),
                    }
                }
            }
        }
    }

    fn text(&self) -> String {
        match self {
            Tree::Leaf(s) => s.clone(),
            Tree::Node(l, r) => format!("({},{})", l.text(), r.text()),
        }
    }
}

fn oracle_boundary(s: &str) -> BTreeMap<String, i64> {
    let t = Tree::parse(s);
    let mut out = BTreeMap::new();
    if t.size() == 1 {
        return out;
    }
    for j in 0..t.size() {
        *out.entry(t.face(j).text()).or_insert(0) += if j % 2 == 0 { 1 } else { -1 };
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Reduced row echelon form in place; returns pivot columns.
fn oracle_rref(m: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Q::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for k in 0..cols {
                    let v = &m[row][k] * &f;
                    m[i][k] = &m[i][k] - v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn oracle_rank(vectors: &[Vec<Q>]) -> usize {
    let mut m = vectors.to_vec();
    oracle_rref(&mut m).len()
}

/// Null space of a `rows x cols` matrix.
fn oracle_kernel(mut m: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let pivots = oracle_rref(&mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][free].clone();
            }
            v
        })
        .collect()
}

/// Cycle space and boundary space of degree `p` for the complex `members`,
/// both in coordinates of `global` (the degree-`p` generators of the largest
/// complex).
fn oracle_spaces(members: &[String], p: usize, global: &[String]) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    let layer = |k: usize| -> Vec<String> {
        members.iter().filter(|s| Tree::parse(s).size() == k).cloned().collect()
    };
    let embed = |local: &[String], v: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); global.len()];
        for (s, x) in local.iter().zip(v) {
            let k = global.iter().position(|g| g == s).unwrap();
            out[k] = x.clone();
        }
        out
    };
    let gens = layer(p);
    let cycles: Vec<Vec<Q>> = if p == 1 {
        (0..gens.len())
            .map(|i| {
                let mut e = vec![Q::zero(); gens.len()];
                e[i] = Q::one();
                embed(&gens, &e)
            })
            .collect()
    } else {
        let faces: Vec<String> = {
            let mut f: Vec<String> = gens.iter().flat_map(|s| oracle_boundary(s).into_keys()).collect();
            f.sort();
            f.dedup();
            f
        };
        let m: Vec<Vec<Q>> = faces
            .iter()
            .map(|f| gens.iter().map(|s| q(*oracle_boundary(s).get(f).unwrap_or(&0))).collect())
            .collect();
        oracle_kernel(m, gens.len()).iter().map(|v| embed(&gens, v)).collect()
    };
    let upper = layer(p + 1);
    let lower: Vec<String> = gens.clone();
    let outside: Vec<String> = {
        let mut f: Vec<String> = upper
            .iter()
            .flat_map(|s| oracle_boundary(s).into_keys())
            .filter(|f| !lower.contains(f))
            .collect();
        f.sort();
        f.dedup();
        f
    };
    let m: Vec<Vec<Q>> = outside
        .iter()
        .map(|f| upper.iter().map(|s| q(*oracle_boundary(s).get(f).unwrap_or(&0))).collect())
        .collect();
    let omega = oracle_kernel(m, upper.len());
    let boundaries: Vec<Vec<Q>> = omega
        .iter()
        .map(|w| {
            let v: Vec<Q> = lower
                .iter()
                .map(|g| {
                    upper
                        .iter()
                        .zip(w)
                        .map(|(s, c)| c * q(*oracle_boundary(s).get(g).unwrap_or(&0)))
                        .fold(Q::zero(), |a, b| a + b)
                })
                .collect();
            embed(&lower, &v)
        })
        .collect();
    (cycles, boundaries)
}

/// Bars as `(birth, death)` text pairs from a weighted list, by the rank
/// function and inclusion-exclusion.
fn oracle_diagram(weighted: &[(&str, i64)], p: usize) -> Vec<(i64, Option<i64>)> {
    let mut values: Vec<i64> = weighted.iter().map(|(_, w)| *w).collect();
    values.sort();
    values.dedup();
    let steps: Vec<Vec<String>> = values
        .iter()
        .map(|v| weighted.iter().filter(|(_, w)| w <= v).map(|(s, _)| s.to_string()).collect())
        .collect();
    let mut global: Vec<String> = steps
        .last()
        .unwrap()
        .iter()
        .filter(|s| Tree::parse(s).size() == p)
        .cloned()
        .collect();
    global.sort();
    let spaces: Vec<(Vec<Vec<Q>>, Vec<Vec<Q>>)> = steps.iter().map(|s| oracle_spaces(s, p, &global)).collect();
    let n = values.len();
    let rank = |i: usize, j: usize| -> i64 {
        if i == 0 {
            return 0;
        }
        let (z, _) = &spaces[i - 1];
        let (_, b) = &spaces[j - 1];
        let mut both = z.clone();
        both.extend(b.iter().cloned());
        (oracle_rank(&both) - oracle_rank(b)) as i64
    };
    let mut bars = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mu = rank(i, j - 1) - rank(i, j) - rank(i - 1, j - 1) + rank(i - 1, j);
            assert!(mu >= 0);
            for _ in 0..mu {
                bars.push((values[i - 1], Some(values[j - 1])));
            }
        }
        for _ in 0..rank(i, n) - rank(i - 1, n) {
            bars.push((values[i - 1], None));
        }
    }
    bars.sort_by_key(|(b, d)| (*b, d.unwrap_or(i64::MAX)));
    bars
}

/// Elder-rule union-find over vertices and edges of a weighted list.
fn union_find_diagram(weighted: &[(&str, i64)]) -> Vec<(i64, Option<i64>)> {
    let mut values: Vec<i64> = weighted.iter().map(|(_, w)| *w).collect();
    values.sort();
    values.dedup();
    let vertices: Vec<(String, i64)> = weighted
        .iter()
        .filter(|(s, _)| !s.starts_with('('))
        .map(|(s, w)| (s.to_string(), *w))
        .collect();
    let edges: Vec<(String, String, i64)> = weighted
        .iter()
        .filter_map(|(s, w)| match Tree::parse(s) {
            Tree::Node(l, r) => match (*l, *r) {
                (Tree::Leaf(a), Tree::Leaf(b)) => Some((a, b, *w)),
                _ => None,
            },
            _ => None,
        })
        .collect();
    let mut parent: HashMap<String, String> = HashMap::new();
    let mut birth: HashMap<String, i64> = HashMap::new();
    fn find(parent: &mut HashMap<String, String>, x: &str) -> String {
        let p = parent[x].clone();
        if p == x {
            return p;
        }
        let root = find(parent, &p);
        parent.insert(x.to_string(), root.clone());
        root
    }
    let mut bars = Vec::new();
    for &v in &values {
        for (name, w) in &vertices {
            if *w == v {
                parent.insert(name.clone(), name.clone());
                birth.insert(name.clone(), v);
            }
        }
        for (a, b, w) in &edges {
            if *w > v || !parent.contains_key(a) || !parent.contains_key(b) {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                continue;
            }
            let (old, young) = if birth[&ra] <= birth[&rb] { (ra, rb) } else { (rb, ra) };
            bars.push((birth[&young], Some(v)));
            parent.insert(young, old);
        }
    }
    let roots: Vec<String> = parent.keys().cloned().collect();
    let mut seen = std::collections::HashSet::new();
    for x in roots {
        let root = find(&mut parent, &x);
        if seen.insert(root.clone()) {
            bars.push((birth[&root], None));
        }
    }
    bars.retain(|(b, d)| d.map_or(true, |d| d > *b));
    bars.sort_by_key(|(b, d)| (*b, d.unwrap_or(i64::MAX)));
    bars
}

fn integer_bars(d: &PersistenceDiagram) -> Vec<(i64, Option<i64>)> {
    let int = |x: &Q| {
        assert!(x.is_integer());
        i64::try_from(x.to_integer()).unwrap()
    };
    let mut v: Vec<_> = d.bars().iter().map(|b| (int(&b.birth), b.death.as_ref().map(int))).collect();
    v.sort_by_key(|(b, d)| (*b, d.unwrap_or(i64::MAX)));
    v
}

/// Minimum over every partial matching of the largest cost; `None` is
/// infinite.
fn exhaustive_bottleneck(a: &[Bar], b: &[Bar]) -> Option<Q> {
    fn diag(x: &Bar) -> Option<Q> {
        x.death.as_ref().map(|d| (d - &x.birth) / q(2))
    }
    fn pair(x: &Bar, y: &Bar) -> Option<Q> {
        let db = (&x.birth - &y.birth).abs();
        match (&x.death, &y.death) {
            (Some(u), Some(v)) => Some(if (u - v).abs() > db { (u - v).abs() } else { db }),
            (None, None) => Some(db),
            _ => None,
        }
    }
    fn worse(x: Option<Q>, y: Option<Q>) -> Option<Q> {
        match (x, y) {
            (Some(x), Some(y)) => Some(if x > y { x } else { y }),
            _ => None,
        }
    }
    fn better(x: Option<Q>, y: Option<Q>) -> Option<Q> {
        match (x, y) {
            (Some(x), Some(y)) => Some(if x < y { x } else { y }),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }
    fn go(i: usize, a: &[Bar], b: &[Bar], used: &mut Vec<bool>) -> Option<Q> {
        if i == a.len() {
            return b
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .fold(Some(Q::zero()), |acc, (y, _)| worse(acc, diag(y)));
        }
        let mut best = worse(diag(&a[i]), go(i + 1, a, b, used));
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                best = better(best, worse(pair(&a[i], &b[j]), go(i + 1, a, b, used)));
                used[j] = false;
            }
        }
        best
    }
    go(0, a, b, &mut vec![false; b.len()])
}

// ---------------------------------------------------------------------------
// Criteria.

fn c1() -> Outcome {
    let mut o = Outcome::new();
    let sq = examples::square();
    let s = Signature::compute(&Rationals, &sq, Some(5));
    o.check(s.betti == [1, 1, 0, 0, 0], || format!("square betti {:?}", s.betti));
    o.check(s.layer == BTreeMap::from([(2, (1, 1))]), || format!("square layers {:?}", s.layer));
    let mut count = 0;
    for n in 3..=8usize {
        for flips in 0..1u64 << n {
            let c = examples::cycle(n, flips);
            let s = Signature::compute(&Rationals, &c, Some(4));
            o.check(s.betti == [1, 1, 0, 0] && s.layer == BTreeMap::from([(2, (1, 1))]), || {
                format!("{n}-cycle flips {flips:b}: {s:?}")
            });
            count += 1;
        }
    }
    o.detail = format!("square and {count} oriented n-cycles (n = 3..8): betti (1,1,0,..), layer {{2: (1,1)}}");
    o
}

fn c2() -> Outcome {
    let mut o = Outcome::new();
    let s = Signature::compute(&Rationals, &examples::cone(), Some(5));
    o.check(s.betti == [3, 0, 1, 0, 0], || format!("betti {:?}", s.betti));
    o.check(s.layer == BTreeMap::from([(2, (1, 1)), (3, (1, 1))]), || format!("layers {:?}", s.layer));
    o.detail = format!("betti {:?}, layer {:?}", s.betti, s.layer);
    o
}

fn c3() -> Outcome {
    let mut o = Outcome::new();
    let c = examples::two_pairs();
    let s = Signature::compute(&Rationals, &c, None);
    o.check(s.betti == [2, 0, 0, 0], || format!("betti {:?}", s.betti));
    o.check(s.layer == BTreeMap::from([(2, (2, 0)), (4, (1, 1))]), || format!("layers {:?}", s.layer));
    o.check(homology::layer_betti(&Rationals, &c, 3).is_err(), || "layer 3 should be absent".into());
    o.detail = format!("betti {:?}, layer {:?}, layer 3 absent", s.betti, s.layer);
    o
}

fn c4() -> Outcome {
    let mut o = Outcome::new();
    let c = examples::mixed_loops();
    let all = homology::multilayer_betti(&Rationals, &c, &c.higher_order()).unwrap();
    let first = homology::multilayer_betti(&Rationals, &c, &examples::mixed_loops_first_loop()).unwrap();
    let second = homology::multilayer_betti(&Rationals, &c, &examples::mixed_loops_second_loop()).unwrap();
    o.check(all == 2, || format!("S = I gives {all}"));
    o.check(first == 1 && second == 1, || format!("loops give {first}, {second}"));
    o.detail = format!("S = I: {all}; quoted loops: {first}, {second}");
    o
}

fn c5() -> Outcome {
    let mut o = Outcome::new();
    let report = experiments::distinguishability_report(&Rationals);
    o.check(report.shared_groups_hold, || {
        format!("classes {:?}", report.unaugmented_classes)
    });
    let f2 = experiments::distinguishability_report(&PrimeField::new(2).unwrap());
    o.check(f2.unaugmented == report.unaugmented, || "GF(2) signatures differ".into());
    let classes: Vec<String> = report.unaugmented_classes.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
    o.detail = format!("classes {}", classes.join(" "));
    o
}

fn c6() -> Outcome {
    let mut o = Outcome::new();
    let report = experiments::distinguishability_report(&Rationals);
    o.check(report.augmented_distinct, || {
        let classes: Vec<String> = report.augmented_classes.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
        format!(
            "{} classes for 15 graphs: {}; every augmented signature has betti (_,0,3) and layer 3 = (1,3), so only beta_1 and layer 2 vary",
            report.augmented_classes.len(),
            classes.join(" ")
        )
    });
    let f2 = experiments::distinguishability_report(&PrimeField::new(2).unwrap());
    o.check(f2.augmented == report.augmented, || "GF(2) signatures differ".into());
    o.detail = format!("{} distinct augmented signatures", report.augmented_classes.len());
    o
}

fn c7() -> Outcome {
    let mut o = Outcome::new();
    let list: Vec<(&str, i64)> = vec![
        ("1", 1),
        ("2", 1),
        ("3", 1),
        ("4", 1),
        ("(1,2)", 2),
        ("(2,3)", 3),
        ("(3,2)", 4),
        ("(4,1)", 5),
        ("((1,2),3)", 6),
        ("((2,1),3)", 7),
        ("((1,2),4)", 8),
        ("((2,1),4)", 8),
    ];
    let w = WeightedIntComplex::new(list.iter().map(|(s, x)| (Interaction::parse(s).unwrap(), q(*x)))).unwrap();
    let ph = PersistentHomology::new(&Rationals, &Filtration::from_weights(&w));
    let d1 = integer_bars(&ph.diagram(1).unwrap());
    let expected1 = vec![(1, Some(2)), (1, Some(3)), (1, Some(5)), (1, None)];
    o.check(d1 == expected1, || format!("degree 1: {d1:?}"));
    let uf = union_find_diagram(&list);
    o.check(d1 == uf, || format!("union-find oracle: {uf:?}"));
    for p in 2..=4 {
        let got = integer_bars(&ph.diagram(p).unwrap());
        let oracle = oracle_diagram(&list, p);
        o.check(got == oracle, || format!("degree {p}: {got:?} vs oracle {oracle:?}"));
    }
    let d2 = integer_bars(&ph.diagram(2).unwrap());
    let d3 = integer_bars(&ph.diagram(3).unwrap());
    o.check(d2 == [(4, None)] && d3 == [(8, None)], || format!("degree 2 {d2:?}, degree 3 {d3:?}"));
    o.detail = "degree 1 {[1,2),[1,3),[1,5),[1,inf)}, degree 2 {[4,inf)}, degree 3 {[8,inf)} match both oracles".into();
    o
}

fn labels(names: &[&str]) -> Vec<Vertex> {
    names.iter().map(|s| Vertex::new(s).unwrap()).collect()
}

fn unit(sigma: &Interaction) -> FormalChain<Q> {
    FormalChain::from_terms(&Rationals, sigma.order(), [(sigma.clone(), q(1))])
}

/// `(boundary sigma_p, sigma_q) + (-1)^p (sigma_p, boundary sigma_q)`, where
/// the boundary of a vertex joins as the empty interaction.
fn product_expansion(a: &Interaction, b: &Interaction) -> FormalChain<Q> {
    let left = if a.order() == 1 {
        unit(b)
    } else {
        boundary(&Rationals, a).join_right(&Rationals, b)
    };
    let right = if b.order() == 1 {
        unit(a)
    } else {
        boundary(&Rationals, b).join_left(&Rationals, a)
    };
    let sign = if a.order() % 2 == 0 { q(1) } else { q(-1) };
    left.add(&Rationals, &right.scale(&Rationals, &sign))
}

fn random_corpus(count: u64, salt: u64) -> Vec<IntComplex> {
    (0..count)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
            let params = RandomParams {
                vertices: rng.gen_range(2..=5),
                max_order: rng.gen_range(2..=4),
                layer_size: rng.gen_range(1..=5),
                drop_vertex_probability: 0.0,
            };
            IntComplex::random(seed ^ salt, &params)
        })
        .collect()
}

fn same_profile(a: &[usize], b: &[usize]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|k| a.get(k).unwrap_or(&0) == b.get(k).unwrap_or(&0))
}

fn c8(o: &mut Outcome) -> Vec<String> {
    let mut parts = Vec::new();
    let three = labels(&["a", "b", "c"]);

    // boundary squared and face commutation, all shapes up to order 7
    let mut count = 0;
    for n in 1..=7 {
        for sigma in enumerate_interactions(&three, n) {
            count += 1;
            let d = boundary(&Rationals, &sigma);
            if !boundary_chain(&Rationals, &d).is_zero() {
                o.check(false, || format!("boundary squared nonzero on {sigma}"));
            }
            for j in 2..=if n >= 3 { n } else { 0 } {
                for i in 1..j {
                    let lhs = sigma.face(j).unwrap().face(i).unwrap();
                    let rhs = sigma.face(i).unwrap().face(j - 1).unwrap();
                    if lhs != rhs {
                        o.check(false, || format!("face commutation fails on {sigma} ({i},{j})"));
                    }
                }
            }
        }
    }
    parts.push(format!("boundary^2 = 0 and face commutation on {count} interactions"));

    // product rule
    let two = labels(&["a", "b"]);
    let by_order: Vec<Vec<Interaction>> = (0..=7).map(|n| enumerate_interactions(&two, n)).collect();
    let mut pairs = 0;
    for p in 1..=7 {
        for qq in 1..=8 - p {
            for a in &by_order[p] {
                for b in &by_order[qq] {
                    pairs += 1;
                    let lhs = boundary(&Rationals, &Interaction::join(a.clone(), b.clone()));
                    if lhs != product_expansion(a, b) {
                        o.check(false, || format!("product rule fails on ({a}, {b})"));
                    }
                }
            }
        }
    }
    parts.push(format!("product rule on {pairs} pairs"));

    // roundtrips
    let five = labels(&["a", "b", "c", "d", "e"]);
    let mut trips = 0;
    let sets: Vec<(Vec<Vertex>, usize)> = vec![(two.clone(), 8), (three.clone(), 6), (five.clone(), 5)];
    for (set, top) in sets {
        for n in 1..=top {
            for sigma in enumerate_interactions(&set, n) {
                trips += 1;
                let np = sigma.to_np();
                let ok = np.validate().is_ok()
                    && Interaction::from_np(&np).as_ref() == Ok(&sigma)
                    && Interaction::parse(&sigma.to_string()).as_ref() == Ok(&sigma);
                if !ok {
                    o.check(false, || format!("roundtrip fails on {sigma}"));
                }
            }
        }
    }
    parts.push(format!("NP and text roundtrips on {trips} interactions"));

    // chain maps and functoriality
    let mut maps = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let source = IntComplex::random(seed, &RandomParams::default());
        let k1 = rng.gen_range(2..=4usize);
        let k2 = rng.gen_range(2..=4usize);
        let f_table: HashMap<String, String> =
            (0..4).map(|i| (i.to_string(), rng.gen_range(0..k1).to_string())).collect();
        let g_table: HashMap<String, String> =
            (0..k1).map(|i| (i.to_string(), rng.gen_range(0..k2).to_string())).collect();
        let f = |v: &Vertex| f_table.get(v.label()).map(|s| Vertex::new(s).unwrap());
        let g = |v: &Vertex| g_table.get(v.label()).map(|s| Vertex::new(s).unwrap());
        let gf = |v: &Vertex| f(v).and_then(|w| g(&w));
        let extra = |s: u64, k: usize| {
            IntComplex::random(s, &RandomParams { vertices: k, max_order: 3, layer_size: 2, drop_vertex_probability: 0.0 })
        };
        let middle = source.map_vertices(&f).unwrap().with(extra(5000 + seed, k1).iter().cloned());
        let target = middle.map_vertices(&g).unwrap().with(extra(9000 + seed, k2).iter().cloned());
        maps += 1;
        for sigma in source.iter() {
            let pushed = unit(sigma).map_vertices(&Rationals, &f).unwrap();
            let lhs = boundary_chain(&Rationals, &pushed);
            let rhs = boundary(&Rationals, sigma).map_vertices(&Rationals, &f).unwrap();
            if lhs != rhs {
                o.check(false, || format!("chain map law fails on {sigma} (seed {seed})"));
            }
        }
        let id = |v: &Vertex| Some(v.clone());
        for p in 1..=source.max_order() {
            let mf = homology::induced_map(&Rationals, &f, &source, &middle, p).unwrap();
            let mg = homology::induced_map(&Rationals, &g, &middle, &target, p).unwrap();
            let mgf = homology::induced_map(&Rationals, &gf, &source, &target, p).unwrap();
            if mgf != mg.mul(&Rationals, &mf) {
                o.check(false, || format!("functoriality fails (seed {seed}, p {p})"));
            }
            let mid = homology::induced_map(&Rationals, &id, &source, &source, p).unwrap();
            if mid != Matrix::identity(&Rationals, mid.rows()) {
                o.check(false, || format!("identity not identity (seed {seed}, p {p})"));
            }
        }
    }
    parts.push(format!("chain map law and functoriality on {maps} interaction maps"));

    // additivity and components
    let corpus = random_corpus(200, 0xadd);
    for (k, a) in corpus.iter().enumerate() {
        let b = &corpus[(k * 7 + 3) % corpus.len()];
        let (pa, pb) = (homology::betti_profile(&Rationals, a), homology::betti_profile(&Rationals, b));
        let union = a.disjoint_union(b);
        let pu = homology::betti_profile(&Rationals, &union);
        let n = pu.len().max(pa.len()).max(pb.len());
        let at = |v: &[usize], i: usize| *v.get(i).unwrap_or(&0);
        if !(0..n).all(|i| at(&pu, i) == at(&pa, i) + at(&pb, i)) {
            o.check(false, || format!("additivity fails: {pa:?} + {pb:?} vs {pu:?}"));
        }
        if pa[0] != a.connected_components().len() {
            o.check(false, || format!("beta_1 {} vs {} components for {a}", pa[0], a.connected_components().len()));
        }
    }
    parts.push("additivity and beta_1 = components on 200 complexes".into());
    parts
}

fn c8_collapse() -> Outcome {
    let mut o = Outcome::new();
    let corpus = random_corpus(100, 0xc011);
    let (mut total, mut changed) = (0, 0);
    let mut first = None;
    for c in &corpus {
        let before = homology::betti_profile(&Rationals, c);
        for pair in c.free_pairs() {
            let Ok(after) = c.collapse(&pair) else { continue };
            total += 1;
            let after_profile = homology::betti_profile(&Rationals, &after);
            if !same_profile(&before, &after_profile) {
                changed += 1;
                first.get_or_insert_with(|| {
                    format!(
                        "collapsing ({}, {}) in {c} takes betti {before:?} to {after_profile:?}",
                        pair.sigma, pair.tau
                    )
                });
            }
        }
    }
    o.check(changed == 0, || {
        format!("collapse invariance: {changed} of {total} free pairs change the betti numbers; first: {}", first.clone().unwrap_or_default())
    });
    let (mut closed_total, mut closed_changed) = (0, 0);
    for c in corpus.iter().filter_map(face_closure) {
        let before = homology::betti_profile(&Rationals, &c);
        for pair in c.free_pairs() {
            closed_total += 1;
            let after = homology::betti_profile(&Rationals, &c.collapse(&pair).unwrap());
            if !same_profile(&before, &after) {
                closed_changed += 1;
            }
        }
    }
    o.detail = format!(
        "collapse invariance on {total} free pairs of 100 complexes; on face-closed complexes with distinct labels {} of {closed_total} pairs change betti",
        closed_changed
    );
    o
}

/// Members with distinct leaf labels, together with all their iterated faces.
fn face_closure(c: &IntComplex) -> Option<IntComplex> {
    let mut stack: Vec<Interaction> = c
        .iter()
        .filter(|s| {
            let leaves = s.leaves();
            leaves.iter().collect::<std::collections::BTreeSet<_>>().len() == leaves.len()
        })
        .cloned()
        .collect();
    let mut set = std::collections::BTreeSet::new();
    while let Some(s) = stack.pop() {
        if s.order() >= 2 {
            stack.extend(s.faces().unwrap());
        }
        set.insert(s);
    }
    IntComplex::new(set).ok()
}

fn random_weighted(seed: u64) -> WeightedIntComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomParams {
        vertices: rng.gen_range(2..=4),
        max_order: rng.gen_range(2..=3),
        layer_size: rng.gen_range(1..=4),
        drop_vertex_probability: 0.2,
    };
    let c = IntComplex::random(seed, &params);
    WeightedIntComplex::new(c.iter().map(|s| (s.clone(), r(rng.gen_range(0..=12), 2)))).unwrap()
}

fn c9() -> Outcome {
    let mut o = Outcome::new();
    let mut compared = 0;
    let mut checked = 0;
    for seed in 0..200u64 {
        let f = random_weighted(7000 + seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = f.reweighted(|_, w| w + r(rng.gen_range(-3..=3), 4));
        let eps = f.sup_distance(&g).unwrap();
        let top = f.complex().max_order();
        let df = persistence::diagrams(&Rationals, &f, top).unwrap();
        let dg = persistence::diagrams(&Rationals, &g, top).unwrap();
        for (a, b) in df.iter().zip(&dg) {
            checked += 1;
            let d = persistence::bottleneck(a, b).unwrap();
            match &d {
                Some(d) if *d <= eps => {}
                _ => o.check(false, || format!("seed {seed} degree {}: distance {d:?} exceeds {eps}", a.degree())),
            }
            if a.len() <= 5 && b.len() <= 5 {
                compared += 1;
                let oracle = exhaustive_bottleneck(a.bars(), b.bars());
                if oracle != d {
                    o.check(false, || format!("seed {seed}: bottleneck {d:?} vs exhaustive {oracle:?}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let diagram = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(0..=5);
            let bars = (0..n)
                .map(|_| {
                    let b = rng.gen_range(0..10);
                    let death = (!rng.gen_bool(0.2)).then(|| r(b + rng.gen_range(1..8), 2));
                    Bar::new(r(b, 2), death)
                })
                .collect();
            PersistenceDiagram::new(1, bars)
        };
        let (a, b) = (diagram(&mut rng), diagram(&mut rng));
        compared += 1;
        let d = persistence::bottleneck(&a, &b).unwrap();
        let oracle = exhaustive_bottleneck(a.bars(), b.bars());
        if d != oracle {
            o.check(false, || format!("{a} vs {b}: {d:?} vs exhaustive {oracle:?}"));
        }
    }
    o.detail = format!("{checked} diagram pairs within the weight perturbation; {compared} distances match exhaustive matching");
    o
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let started = Instant::now();
    let mut failed = 0;
    let mut emit = |label: &str, o: &Outcome| {
        let mut out = std::io::stdout().lock();
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {label}: {verdict} - {}", o.detail).unwrap();
        for note in o.notes.iter().take(5) {
            writeln!(out, "    {note}").unwrap();
        }
        if o.notes.len() > 5 {
            writeln!(out, "    ... {} more", o.notes.len() - 5).unwrap();
        }
        if !o.ok {
            failed += 1;
        }
    };
    emit("1", &c1());
    emit("2", &c2());
    emit("3", &c3());
    emit("4", &c4());
    emit("5", &c5());
    emit("6", &c6());
    emit("7", &c7());
    let mut props = Outcome::new();
    let parts = c8(&mut props);
    let collapse = c8_collapse();
    props.detail = format!("{}; {}", parts.join("; "), collapse.detail);
    props.ok &= collapse.ok;
    props.notes.extend(collapse.notes);
    emit("8", &props);
    emit("9", &c9());
    println!("acceptance finished in {:.1}s, {failed} criterion(s) failed", started.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
