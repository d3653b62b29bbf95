//! IntComplexes: finite collections of interactions grouped by order.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::interaction::{Interaction, InteractionError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("an IntComplex must contain at least one interaction")]
    Empty,
    #[error("layer {0} is empty")]
    EmptyLayer(usize),
    #[error("layer graphs are defined for p >= 2, got {0}")]
    LayerOutOfRange(usize),
    #[error("interaction subset is empty")]
    EmptySubset,
    #[error("{0} is a 1-interaction and has no daughters")]
    VertexInSubset(Interaction),
    #[error("{0} is not a member of the complex")]
    NotMember(Interaction),
    #[error("({sigma}, {tau}) is not a free pair")]
    NotFree { sigma: Interaction, tau: Interaction },
    #[error("arc ({0}, {1}) references an unknown vertex")]
    DanglingArc(Vertex, Vertex),
    #[error(transparent)]
    Interaction(#[from] InteractionError),
}

/// A nonempty finite set of interactions, bucketed by order. Within a layer
/// interactions are kept sorted by their canonical text.
#[derive(Clone, PartialEq, Eq)]
pub struct IntComplex {
    layers: BTreeMap<usize, Vec<Interaction>>,
    members: HashSet<Interaction>,
}

/// `(sigma, tau)` with `sigma` a face of `tau` and of no other interaction of
/// the same order as `tau`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreePair {
    pub sigma: Interaction,
    pub tau: Interaction,
}

impl IntComplex {
    pub fn new<I>(items: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Interaction>,
    {
        let mut buckets: BTreeMap<usize, BTreeMap<String, Interaction>> = BTreeMap::new();
        let mut members = HashSet::new();
        for sigma in items {
            if members.insert(sigma.clone()) {
                buckets
                    .entry(sigma.order())
                    .or_default()
                    .insert(sigma.to_string(), sigma);
            }
        }
        if members.is_empty() {
            return Err(ComplexError::Empty);
        }
        let layers = buckets
            .into_iter()
            .map(|(p, layer)| (p, layer.into_values().collect()))
            .collect();
        Ok(IntComplex { layers, members })
    }

    /// Parses each item with the interaction grammar.
    pub fn parse_all<S: AsRef<str>>(items: &[S]) -> Result<Self, ComplexError> {
        let parsed = items
            .iter()
            .map(|s| Interaction::parse(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parsed)
    }

    /// The `p`-th layer, possibly empty.
    pub fn layer(&self, p: usize) -> &[Interaction] {
        self.layers.get(&p).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertices(&self) -> Vec<&Vertex> {
        self.layer(1).iter().filter_map(Interaction::as_vertex).collect()
    }

    pub fn contains(&self, sigma: &Interaction) -> bool {
        self.members.contains(sigma)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_order(&self) -> usize {
        self.layers.keys().next_back().copied().unwrap_or(0)
    }

    /// Orders with a nonempty layer, ascending.
    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.layers.keys().copied()
    }

    /// All interactions, by order and then canonical text.
    pub fn iter(&self) -> impl Iterator<Item = &Interaction> {
        self.layers.values().flatten()
    }

    /// Every member of order at least 2.
    pub fn higher_order(&self) -> Vec<Interaction> {
        self.iter().filter(|s| s.order() >= 2).cloned().collect()
    }

    pub fn is_subcomplex_of(&self, other: &IntComplex) -> bool {
        self.members.iter().all(|s| other.contains(s))
    }

    /// A new complex with `extra` added.
    pub fn with<I>(&self, extra: I) -> IntComplex
    where
        I: IntoIterator<Item = Interaction>,
    {
        IntComplex::new(self.iter().cloned().chain(extra)).expect("nonempty")
    }

    /// A new complex keeping only members accepted by `keep`.
    pub fn filter<P>(&self, keep: P) -> Result<IntComplex, ComplexError>
    where
        P: Fn(&Interaction) -> bool,
    {
        IntComplex::new(self.iter().filter(|s| keep(s)).cloned())
    }

    /// Applies a vertex map to every member.
    pub fn map_vertices<F>(&self, f: &F) -> Result<IntComplex, ComplexError>
    where
        F: Fn(&Vertex) -> Option<Vertex>,
    {
        let mapped = self
            .iter()
            .map(|s| s.map_vertices(f))
            .collect::<Result<Vec<_>, _>>()?;
        IntComplex::new(mapped)
    }

    /// Every label occurring in some leaf of some member.
    pub fn labels(&self) -> BTreeSet<Vertex> {
        self.iter()
            .flat_map(|s| s.leaves().into_iter().cloned())
            .collect()
    }

    /// Daughters of members that are not themselves members. Informational:
    /// an IntComplex need not be closed under daughters.
    pub fn missing_daughters(&self) -> Vec<Interaction> {
        let missing: BTreeMap<String, Interaction> = self
            .iter()
            .filter_map(Interaction::daughters)
            .flat_map(|(l, r)| [l, r])
            .filter(|d| !self.contains(d))
            .map(|d| (d.to_string(), d.clone()))
            .collect();
        missing.into_values().collect()
    }

    /// Disjoint union. Labels of `other` that also occur in `self` are renamed
    /// with a `_<k>` suffix that is fresh for both complexes.
    pub fn disjoint_union(&self, other: &IntComplex) -> IntComplex {
        let ours = self.labels();
        let theirs = other.labels();
        let mut taken: HashSet<String> = ours
            .iter()
            .chain(&theirs)
            .map(|v| v.label().to_string())
            .collect();
        let mut rename: HashMap<Vertex, Vertex> = HashMap::new();
        for v in &theirs {
            if !ours.contains(v) {
                continue;
            }
            let fresh = (1..)
                .map(|k| format!("{}_{k}", v.label()))
                .find(|c| !taken.contains(c))
                .expect("unbounded suffixes");
            taken.insert(fresh.clone());
            rename.insert(v.clone(), Vertex::opaque(fresh));
        }
        let f = |v: &Vertex| Some(rename.get(v).cloned().unwrap_or_else(|| v.clone()));
        let renamed = other.map_vertices(&f).expect("total vertex map");
        self.with(renamed.iter().cloned())
    }

    /// Classes of vertices joined by paths of 2-interactions (in either
    /// direction) between vertices.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let vertices = self.vertices();
        let index: HashMap<&Vertex, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::new(vertices.len());
        for edge in self.layer(2) {
            let (l, r) = edge.daughters().expect("2-interaction");
            let (Some(a), Some(b)) = (l.as_vertex(), r.as_vertex()) else {
                continue;
            };
            if let (Some(&i), Some(&j)) = (index.get(a), index.get(b)) {
                uf.union(i, j);
            }
        }
        let mut classes: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            classes.entry(uf.find(i)).or_default().push((*v).clone());
        }
        let mut out: Vec<Vec<Vertex>> = classes.into_values().collect();
        out.sort();
        out
    }

    /// `G_p`: daughters of the `p`-interactions as vertices and one
    /// 2-interaction per `p`-interaction.
    pub fn layer_graph(&self, p: usize) -> Result<IntComplex, ComplexError> {
        Ok(self.layer_graph_with_sources(p)?.complex)
    }

    pub(crate) fn layer_graph_with_sources(&self, p: usize) -> Result<DaughterGraph, ComplexError> {
        if p < 2 {
            return Err(ComplexError::LayerOutOfRange(p));
        }
        let layer = self.layer(p);
        if layer.is_empty() {
            return Err(ComplexError::EmptyLayer(p));
        }
        Ok(DaughterGraph::build(layer))
    }

    /// `G_S` for a subset of members of order at least 2.
    pub fn subset_graph(&self, subset: &[Interaction]) -> Result<IntComplex, ComplexError> {
        if subset.is_empty() {
            return Err(ComplexError::EmptySubset);
        }
        for s in subset {
            if s.order() < 2 {
                return Err(ComplexError::VertexInSubset(s.clone()));
            }
            if !self.contains(s) {
                return Err(ComplexError::NotMember(s.clone()));
            }
        }
        Ok(DaughterGraph::build(subset).complex)
    }

    pub fn free_pairs(&self) -> Vec<FreePair> {
        let mut out = Vec::new();
        for (&q, upper) in &self.layers {
            if q < 2 {
                continue;
            }
            // distinct faces of each tau, then count cofaces per face
            let mut cofaces: HashMap<Interaction, Vec<&Interaction>> = HashMap::new();
            for tau in upper {
                let faces: HashSet<Interaction> =
                    tau.faces().expect("order >= 2").into_iter().collect();
                for f in faces {
                    cofaces.entry(f).or_default().push(tau);
                }
            }
            for sigma in self.layer(q - 1) {
                if let Some(taus) = cofaces.get(sigma) {
                    if let [tau] = taus.as_slice() {
                        out.push(FreePair {
                            sigma: sigma.clone(),
                            tau: (*tau).clone(),
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_free(&self, pair: &FreePair) -> bool {
        let FreePair { sigma, tau } = pair;
        if !self.contains(sigma) || !self.contains(tau) || tau.order() != sigma.order() + 1 {
            return false;
        }
        self.layer(tau.order()).iter().all(|other| {
            let has = other.faces().expect("order >= 2").contains(sigma);
            if other == tau {
                has
            } else {
                !has
            }
        })
    }

    /// `I \ {sigma, tau}` for a free pair.
    pub fn collapse(&self, pair: &FreePair) -> Result<IntComplex, ComplexError> {
        if !self.is_free(pair) {
            return Err(ComplexError::NotFree {
                sigma: pair.sigma.clone(),
                tau: pair.tau.clone(),
            });
        }
        self.filter(|s| s != &pair.sigma && s != &pair.tau)
    }

    /// Layer 1 = `vertices`, layer 2 = `arcs`.
    pub fn from_digraph(vertices: &[Vertex], arcs: &[(Vertex, Vertex)]) -> Result<Self, ComplexError> {
        let known: HashSet<&Vertex> = vertices.iter().collect();
        let mut items: Vec<Interaction> = vertices.iter().cloned().map(Interaction::leaf).collect();
        for (a, b) in arcs {
            if !known.contains(a) || !known.contains(b) {
                return Err(ComplexError::DanglingArc(a.clone(), b.clone()));
            }
            items.push(Interaction::join(
                Interaction::leaf(a.clone()),
                Interaction::leaf(b.clone()),
            ));
        }
        IntComplex::new(items)
    }

    /// A random complex over vertices `0..vertices`. Each layer `p >= 2` gets
    /// up to `layer_size` joins of previously generated interactions whose
    /// orders sum to `p`.
    pub fn random(seed: u64, params: &RandomParams) -> IntComplex {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = params.vertices.max(1);
        let mut by_order: Vec<Vec<Interaction>> = vec![Vec::new(); params.max_order.max(1) + 1];
        by_order[1] = (0..n)
            .map(|i| Interaction::leaf(Vertex::opaque(i.to_string())))
            .collect();
        for p in 2..=params.max_order {
            let mut seen = HashSet::new();
            let attempts = params.layer_size * 4;
            for _ in 0..attempts {
                if seen.len() == params.layer_size {
                    break;
                }
                let splits: Vec<usize> = (1..p)
                    .filter(|&q| !by_order[q].is_empty() && !by_order[p - q].is_empty())
                    .collect();
                let Some(&q) = splits.choose(&mut rng) else {
                    break;
                };
                let left = by_order[q].choose(&mut rng).expect("nonempty").clone();
                let right = by_order[p - q].choose(&mut rng).expect("nonempty").clone();
                seen.insert(Interaction::join(left, right));
            }
            let mut layer: Vec<Interaction> = seen.into_iter().collect();
            layer.sort_by_cached_key(|s| s.to_string());
            by_order[p] = layer;
        }
        // occasionally drop a vertex so that not every leaf is a member
        if params.drop_vertex_probability > 0.0 && n > 1 {
            let keep: Vec<Interaction> = by_order[1]
                .iter()
                .filter(|_| !rng.gen_bool(params.drop_vertex_probability))
                .cloned()
                .collect();
            if !keep.is_empty() {
                by_order[1] = keep;
            }
        }
        IntComplex::new(by_order.into_iter().flatten()).expect("vertices are present")
    }

    /// Checks the structural invariants; used by tests over generated corpora.
    pub fn validate(&self) -> Result<(), String> {
        if self.members.is_empty() {
            return Err("empty complex".into());
        }
        let mut count = 0;
        for (&p, layer) in &self.layers {
            if layer.is_empty() {
                return Err(format!("empty layer {p} stored"));
            }
            for pair in layer.windows(2) {
                if pair[0].to_string() >= pair[1].to_string() {
                    return Err(format!("layer {p} not strictly sorted"));
                }
            }
            for s in layer {
                if s.order() != p {
                    return Err(format!("{s} stored in layer {p}"));
                }
                if !self.members.contains(s) {
                    return Err(format!("{s} missing from the member index"));
                }
            }
            count += layer.len();
        }
        if count != self.members.len() {
            return Err("member index out of sync".into());
        }
        Ok(())
    }
}

impl fmt::Debug for IntComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.layers.iter())
            .finish()
    }
}

impl fmt::Display for IntComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    pub vertices: usize,
    pub max_order: usize,
    pub layer_size: usize,
    pub drop_vertex_probability: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            vertices: 4,
            max_order: 4,
            layer_size: 4,
            drop_vertex_probability: 0.0,
        }
    }
}

/// A daughter graph together with the interaction each edge came from.
pub(crate) struct DaughterGraph {
    pub complex: IntComplex,
    /// `(edge in the graph, source interaction)`
    pub edges: Vec<(Interaction, Interaction)>,
}

impl DaughterGraph {
    fn build(sources: &[Interaction]) -> Self {
        let node = |d: &Interaction| Interaction::leaf(Vertex::opaque(d.to_string()));
        let mut items = Vec::new();
        let mut edges = Vec::new();
        for sigma in sources {
            let (l, r) = sigma.daughters().expect("order >= 2");
            let (a, b) = (node(l), node(r));
            let edge = Interaction::join(a.clone(), b.clone());
            items.extend([a, b, edge.clone()]);
            edges.push((edge, sigma.clone()));
        }
        DaughterGraph {
            complex: IntComplex::new(items).expect("nonempty"),
            edges,
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}
