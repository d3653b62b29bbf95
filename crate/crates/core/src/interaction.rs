//! Interactions: leaf-labelled proper binary trees over a vertex set.
//!
//! An interaction of order 1 is a vertex; an interaction of order `p + q` is
//! an ordered pair of a `p`-interaction (the left daughter) and a
//! `q`-interaction (the right daughter). The tree is the canonical form; the
//! number-pair view ([`NpRep`]) lists the vertices left to right together with
//! the gap positions of every bracket.
//!
//! Leaf indices are 1-based throughout.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InteractionError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid vertex label {0:?}")]
    InvalidLabel(String),
    #[error("invalid number-pair representation: {0}")]
    InvalidPairs(String),
    #[error("leaf index {index} out of range for an interaction of order {order}")]
    LeafOutOfRange { index: usize, order: usize },
    #[error("a 1-interaction has no faces")]
    NoFaces,
    #[error("vertex map is undefined on {0}")]
    UnmappedVertex(Vertex),
}

/// A vertex label.
///
/// Labels built through [`Vertex::new`] are tokens over `[A-Za-z0-9_]`. Layer
/// and subset graphs use whole daughter interactions as vertices; those carry
/// the daughter's canonical text as an opaque label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Arc<str>);

impl Vertex {
    pub fn new(label: &str) -> Result<Self, InteractionError> {
        if is_token(label) {
            Ok(Vertex(Arc::from(label)))
        } else {
            Err(InteractionError::InvalidLabel(label.to_string()))
        }
    }

    pub(crate) fn opaque(label: String) -> Self {
        Vertex(Arc::from(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

fn is_token_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_'
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(is_token_byte)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Leaf(Vertex),
    Node {
        order: usize,
        left: Arc<Interaction>,
        right: Arc<Interaction>,
    },
}

/// An interaction, stored as an immutable binary tree with shared subtrees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interaction(Repr);

impl Interaction {
    pub fn leaf(vertex: Vertex) -> Self {
        Interaction(Repr::Leaf(vertex))
    }

    /// Shorthand for a leaf with a validated label.
    pub fn vertex(label: &str) -> Result<Self, InteractionError> {
        Vertex::new(label).map(Interaction::leaf)
    }

    /// The join `(left, right)`.
    pub fn join(left: Interaction, right: Interaction) -> Self {
        let order = left.order() + right.order();
        Interaction(Repr::Node {
            order,
            left: Arc::new(left),
            right: Arc::new(right),
        })
    }

    pub fn order(&self) -> usize {
        match &self.0 {
            Repr::Leaf(_) => 1,
            Repr::Node { order, .. } => *order,
        }
    }

    pub fn as_vertex(&self) -> Option<&Vertex> {
        match &self.0 {
            Repr::Leaf(v) => Some(v),
            Repr::Node { .. } => None,
        }
    }

    /// Left and right daughters, or `None` for a 1-interaction.
    pub fn daughters(&self) -> Option<(&Interaction, &Interaction)> {
        match &self.0 {
            Repr::Leaf(_) => None,
            Repr::Node { left, right, .. } => Some((left, right)),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<&Vertex> {
        let mut out = Vec::with_capacity(self.order());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Vertex>) {
        match &self.0 {
            Repr::Leaf(v) => out.push(v),
            Repr::Node { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    /// The `j`-th face: the minimal subtree containing leaf `j` is replaced by
    /// its other daughter.
    pub fn face(&self, j: usize) -> Result<Interaction, InteractionError> {
        let order = self.order();
        if order < 2 {
            return Err(InteractionError::NoFaces);
        }
        if j == 0 || j > order {
            return Err(InteractionError::LeafOutOfRange { index: j, order });
        }
        Ok(self.face_unchecked(j))
    }

    fn face_unchecked(&self, j: usize) -> Interaction {
        let (left, right) = self.daughters().expect("face of a leaf");
        let split = left.order();
        if j <= split {
            if split == 1 {
                right.clone()
            } else {
                Interaction::join(left.face_unchecked(j), right.clone())
            }
        } else if right.order() == 1 {
            left.clone()
        } else {
            Interaction::join(left.clone(), right.face_unchecked(j - split))
        }
    }

    /// All faces `[F_1, ..., F_n]` in leaf order.
    pub fn faces(&self) -> Result<Vec<Interaction>, InteractionError> {
        let order = self.order();
        if order < 2 {
            return Err(InteractionError::NoFaces);
        }
        Ok((1..=order).map(|j| self.face_unchecked(j)).collect())
    }

    /// Index into `self.to_np().pairs` of the smallest pair `(l, r)` with
    /// `l <= j < r`.
    pub fn minimal_pair(&self, j: usize) -> Result<usize, InteractionError> {
        let order = self.order();
        if order < 2 {
            return Err(InteractionError::NoFaces);
        }
        if j == 0 || j > order {
            return Err(InteractionError::LeafOutOfRange { index: j, order });
        }
        let np = self.to_np();
        Ok(np.minimal_pair(j))
    }

    /// Relabels every leaf through `f`, keeping the tree shape.
    pub fn map_vertices<F>(&self, f: &F) -> Result<Interaction, InteractionError>
    where
        F: Fn(&Vertex) -> Option<Vertex>,
    {
        match &self.0 {
            Repr::Leaf(v) => f(v)
                .map(Interaction::leaf)
                .ok_or_else(|| InteractionError::UnmappedVertex(v.clone())),
            Repr::Node { left, right, .. } => Ok(Interaction::join(
                left.map_vertices(f)?,
                right.map_vertices(f)?,
            )),
        }
    }

    pub fn to_np(&self) -> NpRep {
        let mut vertices = Vec::with_capacity(self.order());
        let mut pairs = Vec::with_capacity(self.order() - 1);
        self.collect_np(&mut vertices, &mut pairs);
        NpRep { vertices, pairs }
    }

    // Post-order: daughters' brackets precede the parent's.
    fn collect_np(&self, vertices: &mut Vec<Vertex>, pairs: &mut Vec<(usize, usize)>) {
        match &self.0 {
            Repr::Leaf(v) => vertices.push(v.clone()),
            Repr::Node { left, right, .. } => {
                let start = vertices.len() + 1;
                left.collect_np(vertices, pairs);
                right.collect_np(vertices, pairs);
                pairs.push((start, vertices.len() + 1));
            }
        }
    }

    pub fn from_np(rep: &NpRep) -> Result<Interaction, InteractionError> {
        rep.validate()?;
        let n = rep.vertices.len();
        let pairs: std::collections::HashSet<(usize, usize)> = rep.pairs.iter().copied().collect();
        build_from_pairs(rep, &pairs, 1, n + 1)
    }

    /// Parses the parenthesised notation, e.g. `((b,a),c)`.
    pub fn parse(text: &str) -> Result<Interaction, InteractionError> {
        let (sigma, end) = Self::parse_prefix(text)?;
        let mut p = Parser::new(text);
        p.pos = end;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(sigma)
    }

    /// Parses one interaction at the start of `text` (after optional
    /// whitespace) and returns it with the byte offset where it ends.
    pub fn parse_prefix(text: &str) -> Result<(Interaction, usize), InteractionError> {
        let mut p = Parser::new(text);
        let sigma = p.interaction()?;
        Ok((sigma, p.pos))
    }
}

fn build_from_pairs(
    rep: &NpRep,
    pairs: &std::collections::HashSet<(usize, usize)>,
    l: usize,
    r: usize,
) -> Result<Interaction, InteractionError> {
    if r - l == 1 {
        return Ok(Interaction::leaf(rep.vertices[l - 1].clone()));
    }
    // Left child is the widest pair starting at l other than (l, r), or the leaf at l.
    let split = (l + 2..r)
        .rev()
        .find(|&m| pairs.contains(&(l, m)))
        .unwrap_or(l + 1);
    if r - split > 1 && !pairs.contains(&(split, r)) {
        return Err(InteractionError::InvalidPairs(format!(
            "bracket ({l},{r}) does not split into two daughters"
        )));
    }
    Ok(Interaction::join(
        build_from_pairs(rep, pairs, l, split)?,
        build_from_pairs(rep, pairs, split, r)?,
    ))
}

impl fmt::Display for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Leaf(v) => f.write_str(v.label()),
            Repr::Node { left, right, .. } => write!(f, "({left},{right})"),
        }
    }
}

impl fmt::Debug for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Interaction {
    type Err = InteractionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Interaction::parse(s)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn error(&self, message: &str) -> InteractionError {
        InteractionError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8, message: &str) -> Result<(), InteractionError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(message))
        }
    }

    fn interaction(&mut self) -> Result<Interaction, InteractionError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let left = self.interaction()?;
                self.expect(b',', "expected ','")?;
                let right = self.interaction()?;
                self.expect(b')', "expected ')'")?;
                Ok(Interaction::join(left, right))
            }
            Some(b) if is_token_byte(b) => {
                let start = self.pos;
                let bytes = self.text.as_bytes();
                while self.pos < bytes.len() && is_token_byte(bytes[self.pos]) {
                    self.pos += 1;
                }
                Ok(Interaction::leaf(Vertex(Arc::from(&self.text[start..self.pos]))))
            }
            Some(b')') => Err(self.error("unbalanced ')'")),
            None => Err(self.error("unexpected end of input")),
            Some(_) => Err(self.error("expected a vertex or '('")),
        }
    }
}

/// Number-pair representation: vertices left to right and one bracket per
/// internal node, given by its gap positions `(l, r)` with gaps numbered
/// `1..=n+1`. Pairs are listed in post-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpRep {
    pub vertices: Vec<Vertex>,
    pub pairs: Vec<(usize, usize)>,
}

impl NpRep {
    /// Checks the bracket conditions: `n - 1` distinct pairs inside `1..=n+1`,
    /// each spanning at least two vertices, pairwise nested or meeting in at
    /// most one endpoint, and the spanning pair `(1, n+1)` present.
    pub fn validate(&self) -> Result<(), InteractionError> {
        let n = self.vertices.len();
        let bad = |msg: String| Err(InteractionError::InvalidPairs(msg));
        if n == 0 {
            return bad("no vertices".into());
        }
        if self.pairs.len() != n - 1 {
            return bad(format!("{} vertices need {} pairs, got {}", n, n - 1, self.pairs.len()));
        }
        for &(l, r) in &self.pairs {
            if l < 1 || r > n + 1 || r < l + 2 {
                return bad(format!("pair ({l},{r}) out of range"));
            }
        }
        for (i, &(l1, r1)) in self.pairs.iter().enumerate() {
            for &(l2, r2) in &self.pairs[i + 1..] {
                if (l1, r1) == (l2, r2) {
                    return bad(format!("duplicate pair ({l1},{r1})"));
                }
                let nested = (l1 <= l2 && r2 <= r1) || (l2 <= l1 && r1 <= r2);
                let apart = r1 <= l2 || r2 <= l1;
                if !nested && !apart {
                    return bad(format!("pairs ({l1},{r1}) and ({l2},{r2}) overlap"));
                }
            }
        }
        if n > 1 && !self.pairs.contains(&(1, n + 1)) {
            return bad(format!("missing spanning pair (1,{})", n + 1));
        }
        Ok(())
    }

    /// Index of the smallest pair `(l, r)` with `l <= j < r`. Requires a
    /// valid representation with `n > 1` and `1 <= j <= n`.
    pub fn minimal_pair(&self, j: usize) -> usize {
        self.pairs
            .iter()
            .enumerate()
            .filter(|(_, &(l, r))| l <= j && j < r)
            .min_by_key(|(_, &(l, r))| r - l)
            .map(|(i, _)| i)
            .expect("a spanning pair contains every leaf")
    }

    /// The `j`-th face computed on pairs: drop vertex `j` and its minimal
    /// pair, and shift every position greater than `j` down by one.
    pub fn face(&self, j: usize) -> Result<NpRep, InteractionError> {
        let n = self.vertices.len();
        if n < 2 {
            return Err(InteractionError::NoFaces);
        }
        if j == 0 || j > n {
            return Err(InteractionError::LeafOutOfRange { index: j, order: n });
        }
        let drop = self.minimal_pair(j);
        let shift = |x: usize| if x > j { x - 1 } else { x };
        let pairs = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, &(l, r))| (shift(l), shift(r)))
            .collect();
        let mut vertices = self.vertices.clone();
        vertices.remove(j - 1);
        Ok(NpRep { vertices, pairs })
    }

    /// Same vertices and pairs up to the order the pairs are listed in.
    pub fn same_as(&self, other: &NpRep) -> bool {
        let mut a = self.pairs.clone();
        let mut b = other.pairs.clone();
        a.sort_unstable();
        b.sort_unstable();
        self.vertices == other.vertices && a == b
    }
}

impl fmt::Display for NpRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for v in &self.vertices {
            f.write_str(v.label())?;
        }
        f.write_str(", {")?;
        for (i, (l, r)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({l},{r})")?;
        }
        f.write_str("}]")
    }
}

/// Every interaction shape with `order` leaves, leaves drawn from `labels`.
/// Used for exhaustive checks; the count grows as Catalan(order-1) * |labels|^order.
pub fn enumerate_interactions(labels: &[Vertex], order: usize) -> Vec<Interaction> {
    if order == 0 {
        return Vec::new();
    }
    if order == 1 {
        return labels.iter().cloned().map(Interaction::leaf).collect();
    }
    let mut out = Vec::new();
    for split in 1..order {
        let lefts = enumerate_interactions(labels, split);
        let rights = enumerate_interactions(labels, order - split);
        for l in &lefts {
            for r in &rights {
                out.push(Interaction::join(l.clone(), r.clone()));
            }
        }
    }
    out
}
