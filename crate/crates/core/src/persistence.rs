//! Weighted complexes, sublevel filtrations, persistence diagrams and the
//! bottleneck distance.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use num::{BigRational, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{self, Field, FieldSpec, PrimeField, Rationals};
use crate::complex::{ComplexError, IntComplex};
use crate::homology::ChainSpaces;
use crate::interaction::Interaction;
use crate::numeric;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PersistenceError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error("{0} has two different weights")]
    ConflictingWeight(Interaction),
    #[error("filtration is empty")]
    EmptyFiltration,
    #[error("step {0} is not contained in step {next}", next = .0 + 1)]
    NotNested(usize),
    #[error("filtration values must strictly increase (step {0})")]
    NotIncreasing(usize),
    #[error("step count {steps} does not match value count {values}")]
    StepValueMismatch { steps: usize, values: usize },
    #[error("step index {index} out of range for {steps} steps")]
    StepOutOfRange { index: usize, steps: usize },
    #[error("rank query needs i <= j, got ({i}, {j})")]
    InvertedRange { i: usize, j: usize },
    #[error("negative multiplicity {value} for degree {degree} bar [{birth}, {death}): not interval decomposable")]
    NegativeMultiplicity {
        degree: usize,
        birth: String,
        death: String,
        value: i64,
    },
    #[error("diagrams have different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

/// An IntComplex with a rational weight on every member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedIntComplex {
    complex: IntComplex,
    weights: HashMap<Interaction, BigRational>,
}

impl WeightedIntComplex {
    pub fn new<I>(items: I) -> Result<Self, PersistenceError>
    where
        I: IntoIterator<Item = (Interaction, BigRational)>,
    {
        let mut weights: HashMap<Interaction, BigRational> = HashMap::new();
        for (sigma, w) in items {
            if let Some(old) = weights.get(&sigma) {
                if *old != w {
                    return Err(PersistenceError::ConflictingWeight(sigma));
                }
            }
            weights.insert(sigma, w);
        }
        let complex = IntComplex::new(weights.keys().cloned())?;
        Ok(WeightedIntComplex { complex, weights })
    }

    /// Same complex, weights replaced by `f(sigma, old weight)`.
    pub fn reweighted<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Interaction, &BigRational) -> BigRational,
    {
        let weights = self
            .complex
            .iter()
            .map(|s| (s.clone(), f(s, &self.weights[s])))
            .collect();
        WeightedIntComplex {
            complex: self.complex.clone(),
            weights,
        }
    }

    pub fn complex(&self) -> &IntComplex {
        &self.complex
    }

    pub fn weight(&self, sigma: &Interaction) -> Option<&BigRational> {
        self.weights.get(sigma)
    }

    /// Members in complex order with their weights.
    pub fn iter(&self) -> impl Iterator<Item = (&Interaction, &BigRational)> {
        self.complex.iter().map(|s| (s, &self.weights[s]))
    }

    /// Distinct weights in increasing order.
    pub fn values(&self) -> Vec<BigRational> {
        let set: BTreeSet<&BigRational> = self.weights.values().collect();
        set.into_iter().cloned().collect()
    }

    /// `{sigma : f(sigma) <= r}`, or `None` when nothing qualifies.
    pub fn sublevel(&self, r: &BigRational) -> Option<IntComplex> {
        self.complex.filter(|s| self.weights[s] <= *r).ok()
    }

    /// `max |f - g|` over the common support.
    pub fn sup_distance(&self, other: &WeightedIntComplex) -> Option<BigRational> {
        if self.complex != other.complex {
            return None;
        }
        Some(
            self.complex
                .iter()
                .map(|s| (&self.weights[s] - &other.weights[s]).abs())
                .max()
                .unwrap_or_else(BigRational::zero),
        )
    }
}

impl fmt::Display for WeightedIntComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, w)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}:{}", numeric::format_rational(w))?;
        }
        f.write_str("}")
    }
}

/// Nested complexes indexed by strictly increasing values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<IntComplex>,
    values: Vec<BigRational>,
}

impl Filtration {
    pub fn new(steps: Vec<IntComplex>, values: Vec<BigRational>) -> Result<Self, PersistenceError> {
        if steps.len() != values.len() {
            return Err(PersistenceError::StepValueMismatch {
                steps: steps.len(),
                values: values.len(),
            });
        }
        if steps.is_empty() {
            return Err(PersistenceError::EmptyFiltration);
        }
        for k in 1..steps.len() {
            if !steps[k - 1].is_subcomplex_of(&steps[k]) {
                return Err(PersistenceError::NotNested(k - 1));
            }
            if values[k - 1] >= values[k] {
                return Err(PersistenceError::NotIncreasing(k));
            }
        }
        Ok(Filtration { steps, values })
    }

    /// One step per distinct weight.
    pub fn from_weights(weighted: &WeightedIntComplex) -> Self {
        let values = weighted.values();
        let steps = values
            .iter()
            .map(|v| weighted.sublevel(v).expect("some weight equals v"))
            .collect();
        Filtration { steps, values }
    }

    pub fn steps(&self) -> &[IntComplex] {
        &self.steps
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> &IntComplex {
        self.steps.last().expect("nonempty")
    }
}

/// Weighted `p`-layer graph: each edge carries the weight of its
/// `p`-interaction and each daughter vertex the least weight among the
/// `p`-interactions it belongs to.
pub fn layer_graph_weights(weighted: &WeightedIntComplex, p: usize) -> Result<WeightedIntComplex, PersistenceError> {
    let graph = weighted.complex.layer_graph_with_sources(p)?;
    let mut items: HashMap<Interaction, BigRational> = HashMap::new();
    for (edge, source) in &graph.edges {
        let w = weighted.weights[source].clone();
        let (l, r) = edge.daughters().expect("edge");
        for v in [l, r] {
            items
                .entry(v.clone())
                .and_modify(|x| {
                    if w < *x {
                        *x = w.clone();
                    }
                })
                .or_insert_with(|| w.clone());
        }
        items.insert(edge.clone(), w);
    }
    WeightedIntComplex::new(items)
}

/// Sublevel filtration of the weighted `p`-layer graph.
pub fn layer_filtration(weighted: &WeightedIntComplex, p: usize) -> Result<Filtration, PersistenceError> {
    Ok(Filtration::from_weights(&layer_graph_weights(weighted, p)?))
}

/// Persistent ranks of a filtration in every degree.
///
/// Cycle and boundary spaces of each step are embedded into the generator
/// coordinates of the last step, where
/// `r(i, j) = dim(Z(i) + B(j)) - dim B(j)`.
pub struct PersistentHomology<F: Field> {
    field: F,
    values: Vec<BigRational>,
    spaces: Vec<ChainSpaces<F>>,
    top: ChainSpaces<F>,
}

impl<F: Field> PersistentHomology<F> {
    pub fn new(field: &F, filtration: &Filtration) -> Self {
        let spaces: Vec<ChainSpaces<F>> = filtration
            .steps()
            .iter()
            .map(|s| ChainSpaces::new(field, s))
            .collect();
        let top = spaces.last().expect("nonempty").clone();
        PersistentHomology {
            field: field.clone(),
            values: filtration.values().to_vec(),
            spaces,
            top,
        }
    }

    pub fn steps(&self) -> usize {
        self.spaces.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    fn embed(&self, step: usize, p: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let global = self.top.generators(p);
        let index: HashMap<&Interaction, usize> =
            global.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let local = self.spaces[step].generators(p);
        vectors
            .iter()
            .map(|v| {
                let mut out = vec![self.field.zero(); global.len()];
                for (s, x) in local.iter().zip(v) {
                    out[index[s]] = x.clone();
                }
                out
            })
            .collect()
    }

    fn check(&self, i: usize, j: usize) -> Result<(), PersistenceError> {
        let steps = self.steps();
        for index in [i, j] {
            if index >= steps {
                return Err(PersistenceError::StepOutOfRange { index, steps });
            }
        }
        if i > j {
            return Err(PersistenceError::InvertedRange { i, j });
        }
        Ok(())
    }

    /// Rank of `H_p(step i) -> H_p(step j)`, steps counted from 0.
    pub fn rank(&self, p: usize, i: usize, j: usize) -> Result<usize, PersistenceError> {
        self.check(i, j)?;
        let len = self.top.generators(p).len();
        let cycles = self.embed(i, p, self.spaces[i].cycles(p));
        let boundaries = self.embed(j, p, &self.spaces[j].boundaries(p));
        let dims = algebra::subspace_dims(&self.field, &cycles, &boundaries, len)?;
        Ok(dims.dim_sum - dims.dim_w)
    }

    pub fn rank_function(&self, p: usize) -> RankFunction {
        let n = self.steps();
        let table = (0..n)
            .map(|i| (i..n).map(|j| self.rank(p, i, j).expect("valid range")).collect())
            .collect();
        RankFunction {
            degree: p,
            values: self.values.clone(),
            table,
        }
    }

    pub fn diagram(&self, p: usize) -> Result<PersistenceDiagram, PersistenceError> {
        self.rank_function(p).diagram()
    }
}

/// `r_p(i, j)` for `i <= j`, steps counted from 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    degree: usize,
    values: Vec<BigRational>,
    table: Vec<Vec<usize>>,
}

impl RankFunction {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn steps(&self) -> usize {
        self.table.len()
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j < self.steps(), "rank query ({i}, {j})");
        self.table[i][j - i]
    }

    /// Same as [`get`](Self::get) with 1-based steps and `r(0, _) = 0`.
    fn r(&self, i: usize, j: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.get(i - 1, j - 1) as i64
        }
    }

    /// Interval decomposition by inclusion-exclusion.
    pub fn diagram(&self) -> Result<PersistenceDiagram, PersistenceError> {
        let n = self.steps();
        let mut bars = Vec::new();
        let mut push = |i: usize, death: Option<usize>, mu: i64| -> Result<(), PersistenceError> {
            let birth = self.values[i - 1].clone();
            let death = death.map(|j| self.values[j - 1].clone());
            if mu < 0 {
                return Err(PersistenceError::NegativeMultiplicity {
                    degree: self.degree,
                    birth: numeric::format_rational(&birth),
                    death: death.as_ref().map_or("inf".into(), numeric::format_rational),
                    value: mu,
                });
            }
            for _ in 0..mu {
                bars.push(Bar::new(birth.clone(), death.clone()));
            }
            Ok(())
        };
        for i in 1..=n {
            for j in i + 1..=n {
                let mu = self.r(i, j - 1) - self.r(i, j) - self.r(i - 1, j - 1) + self.r(i - 1, j);
                push(i, Some(j), mu)?;
            }
            push(i, None, self.r(i, n) - self.r(i - 1, n))?;
        }
        Ok(PersistenceDiagram::new(self.degree, bars))
    }
}

/// `[birth, death)`; `death = None` is an essential class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bar {
    pub birth: BigRational,
    pub death: Option<BigRational>,
}

impl Bar {
    pub fn new(birth: BigRational, death: Option<BigRational>) -> Self {
        Bar { birth, death }
    }

    pub fn finite(birth: BigRational, death: BigRational) -> Self {
        Bar::new(birth, Some(death))
    }

    pub fn essential(birth: BigRational) -> Self {
        Bar::new(birth, None)
    }

    /// `(death - birth) / 2`; `None` for an essential bar.
    pub fn diagonal_cost(&self) -> Option<BigRational> {
        self.death
            .as_ref()
            .map(|d| (d - &self.birth) / BigRational::from_integer(2.into()))
    }
}

impl PartialOrd for Bar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |b: &Bar| (b.birth.clone(), b.death.is_none(), b.death.clone());
        key(self).cmp(&key(other))
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let death = self.death.as_ref().map_or("inf".to_string(), numeric::format_rational);
        write!(f, "[{}, {death})", numeric::format_rational(&self.birth))
    }
}

/// Multiset of bars in one degree, kept sorted by `(birth, death)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceDiagram {
    degree: usize,
    bars: Vec<Bar>,
}

impl PersistenceDiagram {
    pub fn new(degree: usize, mut bars: Vec<Bar>) -> Self {
        bars.sort();
        PersistenceDiagram { degree, bars }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn to_json_value(&self) -> Value {
        let number = |x: &BigRational| match numeric::terminating_decimal(x) {
            Some(s) => Value::Number(serde_json::from_str(&s).expect("decimal literal")),
            None => Value::String(numeric::format_rational(x)),
        };
        let bars: Vec<Value> = self
            .bars
            .iter()
            .map(|b| {
                json!({
                    "birth": number(&b.birth),
                    "death": b.death.as_ref().map_or(Value::Null, number),
                })
            })
            .collect();
        json!({ "dim": self.degree, "bars": bars })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json_value(value: &Value) -> Result<Self, PersistenceError> {
        let bad = |m: &str| PersistenceError::InvalidDiagram(m.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        let degree = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("\"dim\" must be a nonnegative integer"))? as usize;
        let bars = obj
            .get("bars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("\"bars\" must be an array"))?;
        let number = |v: &Value, what: &str| -> Result<BigRational, PersistenceError> {
            let parsed = match v {
                Value::Number(n) => numeric::parse_decimal(&n.to_string()),
                Value::String(s) => numeric::parse_rational(s),
                _ => None,
            };
            parsed.ok_or_else(|| bad(&format!("{what} must be a number or \"p/q\" string")))
        };
        let mut out = Vec::with_capacity(bars.len());
        for bar in bars {
            let birth = number(bar.get("birth").ok_or_else(|| bad("bar without birth"))?, "birth")?;
            let death = match bar.get("death") {
                None | Some(Value::Null) => None,
                Some(v) => Some(number(v, "death")?),
            };
            if let Some(d) = &death {
                if *d <= birth {
                    return Err(bad("death must exceed birth"));
                }
            }
            out.push(Bar::new(birth, death));
        }
        Ok(PersistenceDiagram::new(degree, out))
    }

    pub fn from_json(text: &str) -> Result<Self, PersistenceError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| PersistenceError::InvalidDiagram(e.to_string()))?;
        Self::from_json_value(&value)
    }

    /// One line per bar; `-` runs span the bar on a common axis and `>`
    /// marks an essential class.
    pub fn to_text(&self) -> String {
        const WIDTH: usize = 40;
        let mut out = format!("degree {}: {} bar(s)\n", self.degree, self.bars.len());
        if self.bars.is_empty() {
            return out;
        }
        let lo = self.bars.iter().map(|b| &b.birth).min().expect("nonempty").clone();
        let hi = self
            .bars
            .iter()
            .flat_map(|b| [Some(&b.birth), b.death.as_ref()])
            .flatten()
            .max()
            .expect("nonempty")
            .clone();
        let span = &hi - &lo;
        let column = |x: &BigRational| -> usize {
            if span.is_zero() {
                return 0;
            }
            let c = (x - &lo) * BigRational::from_integer((WIDTH as i64).into()) / &span;
            c.round().to_integer().try_into().unwrap_or(0)
        };
        let labels: Vec<String> = self.bars.iter().map(Bar::to_string).collect();
        let pad = labels.iter().map(String::len).max().unwrap_or(0);
        for (bar, label) in self.bars.iter().zip(&labels) {
            let start = column(&bar.birth);
            let (end, tip) = match &bar.death {
                Some(d) => (column(d), ""),
                None => (WIDTH, ">"),
            };
            let dashes = end.saturating_sub(start).max(1);
            writeln!(out, "{label:<pad$} |{}{}{tip}", " ".repeat(start), "-".repeat(dashes))
                .expect("string write");
        }
        out
    }

    /// Horizontal bars over a weight axis.
    pub fn to_svg(&self) -> String {
        const WIDTH: f64 = 400.0;
        const ROW: f64 = 14.0;
        const MARGIN: f64 = 20.0;
        let lo = self.bars.iter().map(|b| numeric::to_f64(&b.birth)).fold(f64::INFINITY, f64::min);
        let hi = self
            .bars
            .iter()
            .flat_map(|b| [Some(&b.birth), b.death.as_ref()])
            .flatten()
            .map(numeric::to_f64)
            .fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if self.bars.is_empty() { (0.0, 1.0) } else { (lo, hi) };
        let span = if hi > lo { hi - lo } else { 1.0 };
        let usable = WIDTH - 2.0 * MARGIN;
        let x = |v: f64| MARGIN + (v - lo) / span * usable * 0.9;
        let height = 2.0 * MARGIN + ROW * self.bars.len() as f64 + 10.0;
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
        )
        .expect("string write");
        writeln!(out, r#"<title>degree {} barcode</title>"#, self.degree).expect("string write");
        for (k, bar) in self.bars.iter().enumerate() {
            let y = MARGIN + ROW * k as f64;
            let x0 = x(numeric::to_f64(&bar.birth));
            let x1 = match &bar.death {
                Some(d) => x(numeric::to_f64(d)),
                None => WIDTH - MARGIN,
            };
            let class = if bar.death.is_some() { "finite" } else { "essential" };
            writeln!(
                out,
                r#"<rect class="{class}" x="{x0:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}"><title>{bar}</title></rect>"#,
                (x1 - x0).max(1.0),
                ROW * 0.7,
                if bar.death.is_some() { "#3366cc" } else { "#cc3333" },
            )
            .expect("string write");
        }
        let axis_y = MARGIN + ROW * self.bars.len() as f64 + 4.0;
        writeln!(
            out,
            r##"<line x1="{MARGIN}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="#000"/>"##,
            WIDTH - MARGIN
        )
        .expect("string write");
        for v in [lo, hi] {
            writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="10">{v}</text>"#,
                x(v),
                axis_y + 12.0
            )
            .expect("string write");
        }
        out.push_str("</svg>\n");
        out
    }

    pub fn render(&self, format: &str) -> Result<String, PersistenceError> {
        match format {
            "text" => Ok(self.to_text()),
            "json" => Ok(self.to_json()),
            "svg" => Ok(self.to_svg()),
            other => Err(PersistenceError::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for PersistenceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.bars.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

/// Diagrams of a weighted complex in degrees `1..=max_degree`.
pub fn diagrams<F: Field>(
    field: &F,
    weighted: &WeightedIntComplex,
    max_degree: usize,
) -> Result<Vec<PersistenceDiagram>, PersistenceError> {
    let ph = PersistentHomology::new(field, &Filtration::from_weights(weighted));
    (1..=max_degree).map(|p| ph.diagram(p)).collect()
}

pub fn diagram_with(
    spec: FieldSpec,
    filtration: &Filtration,
    p: usize,
) -> Result<PersistenceDiagram, PersistenceError> {
    match spec {
        FieldSpec::Rational => PersistentHomology::new(&Rationals, filtration).diagram(p),
        FieldSpec::Prime(q) => PersistentHomology::new(&PrimeField::new(q)?, filtration).diagram(p),
    }
}

fn pair_cost(a: &Bar, b: &Bar) -> Option<BigRational> {
    let db = (&a.birth - &b.birth).abs();
    match (&a.death, &b.death) {
        (Some(x), Some(y)) => Some(db.max((x - y).abs())),
        (None, None) => Some(db),
        _ => None,
    }
}

/// Kuhn's augmenting-path matching; true when every left node is matched.
fn perfect_matching(adjacency: &[Vec<usize>], right: usize) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    if adjacency.len() != right {
        return false;
    }
    let mut owner = vec![None; right];
    (0..adjacency.len()).all(|u| augment(u, adjacency, &mut vec![false; right], &mut owner))
}

/// Whether a partial matching exists whose matched pairs and unmatched bars
/// all cost at most `delta`.
pub fn delta_matching_exists(d1: &PersistenceDiagram, d2: &PersistenceDiagram, delta: &BigRational) -> bool {
    let (a, b) = (d1.bars(), d2.bars());
    let (n, m) = (a.len(), b.len());
    // left: a_0..a_n, then diagonal copies of b; right: b_0..b_m, then diagonal copies of a
    let within = |c: Option<BigRational>| c.is_some_and(|c| c <= *delta);
    let mut adjacency = vec![Vec::new(); n + m];
    for i in 0..n {
        for j in 0..m {
            if within(pair_cost(&a[i], &b[j])) {
                adjacency[i].push(j);
            }
        }
        if within(a[i].diagonal_cost()) {
            adjacency[i].push(m + i);
        }
    }
    for j in 0..m {
        if within(b[j].diagonal_cost()) {
            adjacency[n + j].push(j);
        }
        adjacency[n + j].extend(m..m + n);
    }
    perfect_matching(&adjacency, n + m)
}

/// Bottleneck distance; `None` when the essential bar counts differ.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<Option<BigRational>, PersistenceError> {
    if d1.degree() != d2.degree() {
        return Err(PersistenceError::DegreeMismatch(d1.degree(), d2.degree()));
    }
    let essential = |d: &PersistenceDiagram| d.bars().iter().filter(|b| b.death.is_none()).count();
    if essential(d1) != essential(d2) {
        return Ok(None);
    }
    let mut candidates: BTreeSet<BigRational> = BTreeSet::new();
    candidates.insert(BigRational::zero());
    for a in d1.bars() {
        candidates.extend(a.diagonal_cost());
        for b in d2.bars() {
            candidates.extend(pair_cost(a, b));
        }
    }
    for b in d2.bars() {
        candidates.extend(b.diagonal_cost());
    }
    let candidates: Vec<BigRational> = candidates.into_iter().collect();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    debug_assert!(delta_matching_exists(d1, d2, &candidates[hi]));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if delta_matching_exists(d1, d2, &candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(candidates[lo].clone()))
}
