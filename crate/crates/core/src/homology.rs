//! Chains, the boundary operator and homology of IntComplexes.
//!
//! `A_p` is spanned by the `p`-layer. `Omega_p` is the subspace of `A_p`
//! whose boundary lands in `A_{p-1}`, and homology is taken on
//! `(Omega_*, boundary)`. The cycle space `Z_p` is the kernel of the full
//! boundary on `A_p`: a chain with zero boundary trivially has its boundary in
//! `A_{p-1}`, so this kernel already lies in `Omega_p`. The boundary space
//! `B_p` is the image of `Omega_{p+1}`.
//!
//! Degrees start at 1. The boundary of a 1-interaction is zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, Field, FieldSpec, Matrix, PrimeField, Rationals};
use crate::complex::{ComplexError, IntComplex};
use crate::interaction::{Interaction, InteractionError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Interaction(#[from] InteractionError),
    #[error("not an interaction map: image of {0} is not in the target complex")]
    NotInteractionMap(Interaction),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
}

/// A finite linear combination of interactions of one order. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct FormalChain<E> {
    degree: usize,
    terms: BTreeMap<Interaction, E>,
}

impl<E: Clone + PartialEq + fmt::Display> FormalChain<E> {
    pub fn zero(degree: usize) -> Self {
        FormalChain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<F, I>(field: &F, degree: usize, terms: I) -> Self
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = (Interaction, E)>,
    {
        let mut chain = Self::zero(degree);
        for (sigma, c) in terms {
            chain.add_term(field, sigma, &c);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, sigma: &Interaction) -> Option<&E> {
        self.terms.get(sigma)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Interaction, &E)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Interaction> {
        self.terms.keys()
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, sigma: Interaction, c: &E) {
        assert_eq!(sigma.order(), self.degree, "{sigma} has the wrong order");
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&sigma) {
            Some(existing) => {
                let sum = field.add(existing, c);
                if field.is_zero(&sum) {
                    self.terms.remove(&sigma);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(sigma, c.clone());
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (sigma, c) in &other.terms {
            out.add_term(field, sigma.clone(), c);
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Self::from_terms(
            field,
            self.degree,
            self.terms.iter().map(|(s, x)| (s.clone(), field.mul(x, c))),
        )
    }

    /// `(chain, right)`, extended linearly.
    pub fn join_right<F: Field<Elem = E>>(&self, field: &F, right: &Interaction) -> Self {
        Self::from_terms(
            field,
            self.degree + right.order(),
            self.terms
                .iter()
                .map(|(s, c)| (Interaction::join(s.clone(), right.clone()), c.clone())),
        )
    }

    /// `(left, chain)`, extended linearly.
    pub fn join_left<F: Field<Elem = E>>(&self, field: &F, left: &Interaction) -> Self {
        Self::from_terms(
            field,
            self.degree + left.order(),
            self.terms
                .iter()
                .map(|(s, c)| (Interaction::join(left.clone(), s.clone()), c.clone())),
        )
    }

    /// Pushes the chain forward along a vertex map, combining like terms.
    pub fn map_vertices<F, M>(&self, field: &F, f: &M) -> Result<Self, InteractionError>
    where
        F: Field<Elem = E>,
        M: Fn(&Vertex) -> Option<Vertex>,
    {
        let mut out = Self::zero(self.degree);
        for (s, c) in &self.terms {
            out.add_term(field, s.map_vertices(f)?, c);
        }
        Ok(out)
    }

    /// Coordinates with respect to `basis`; `None` if the support leaves it.
    pub fn coordinates<F: Field<Elem = E>>(&self, field: &F, basis: &[Interaction]) -> Option<Vec<E>> {
        let index: HashMap<&Interaction, usize> =
            basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut v = vec![field.zero(); basis.len()];
        for (s, c) in &self.terms {
            v[*index.get(s)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coordinates<F: Field<Elem = E>>(
        field: &F,
        degree: usize,
        basis: &[Interaction],
        coords: &[E],
    ) -> Self {
        Self::from_terms(field, degree, basis.iter().cloned().zip(coords.iter().cloned()))
    }
}

impl<E: fmt::Display> fmt::Display for FormalChain<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let c = c.to_string();
            let (sign, mag) = match c.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => ("+", c),
            };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl<E: fmt::Display> fmt::Debug for FormalChain<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `sum_j (-1)^(j+1) F_j(sigma)`; zero for a 1-interaction.
pub fn boundary<F: Field>(field: &F, sigma: &Interaction) -> FormalChain<F::Elem> {
    let n = sigma.order();
    if n == 1 {
        return FormalChain::zero(0);
    }
    let faces = sigma.faces().expect("order >= 2");
    FormalChain::from_terms(
        field,
        n - 1,
        faces.into_iter().enumerate().map(|(i, face)| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            (face, field.from_i64(sign))
        }),
    )
}

/// Linear extension of [`boundary`].
pub fn boundary_chain<F: Field>(field: &F, chain: &FormalChain<F::Elem>) -> FormalChain<F::Elem> {
    let mut out = FormalChain::zero(chain.degree().saturating_sub(1));
    if chain.degree() <= 1 {
        return out;
    }
    for (sigma, c) in chain.terms() {
        for (face, d) in boundary(field, sigma).terms() {
            out.add_term(field, face.clone(), &field.mul(c, d));
        }
    }
    out
}

/// Matrices and subspaces for one degree `p`.
#[derive(Debug, Clone)]
pub struct DegreeSpaces<E> {
    /// Ordered basis of `A_p`: the `p`-layer.
    pub generators: Vec<Interaction>,
    /// Basis of the touched slice of `Lambda_{p-1}`: the `(p-1)`-layer first,
    /// then faces of `p`-interactions outside it.
    pub ambient: Vec<Interaction>,
    /// Number of leading `ambient` entries that belong to the `(p-1)`-layer.
    pub inside: usize,
    /// `ambient.len() x generators.len()`.
    pub boundary: Matrix<E>,
    /// Basis of `Omega_p` in `A_p` coordinates.
    pub omega: Vec<Vec<E>>,
    /// Basis of `Z_p` in `A_p` coordinates.
    pub cycles: Vec<Vec<E>>,
}

/// The chain spaces of a complex for degrees `1..=max_order + 1`.
#[derive(Debug, Clone)]
pub struct ChainSpaces<F: Field> {
    field: F,
    degrees: BTreeMap<usize, DegreeSpaces<F::Elem>>,
}

impl<F: Field> ChainSpaces<F> {
    pub fn new(field: &F, complex: &IntComplex) -> Self {
        let top = complex.max_order() + 1;
        let degrees = (1..=top)
            .map(|p| (p, degree_spaces(field, complex, p)))
            .collect();
        ChainSpaces {
            field: field.clone(),
            degrees,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.keys().next_back().copied().unwrap_or(0)
    }

    pub fn degree(&self, p: usize) -> Option<&DegreeSpaces<F::Elem>> {
        self.degrees.get(&p)
    }

    pub fn generators(&self, p: usize) -> &[Interaction] {
        self.degrees.get(&p).map(|d| d.generators.as_slice()).unwrap_or(&[])
    }

    pub fn omega(&self, p: usize) -> &[Vec<F::Elem>] {
        self.degrees.get(&p).map(|d| d.omega.as_slice()).unwrap_or(&[])
    }

    pub fn cycles(&self, p: usize) -> &[Vec<F::Elem>] {
        self.degrees.get(&p).map(|d| d.cycles.as_slice()).unwrap_or(&[])
    }

    /// Spanning set of `B_p = boundary(Omega_{p+1})` in `A_p` coordinates.
    pub fn boundaries(&self, p: usize) -> Vec<Vec<F::Elem>> {
        let Some(upper) = self.degrees.get(&(p + 1)) else {
            return Vec::new();
        };
        upper
            .omega
            .iter()
            .map(|w| {
                let mut image = upper.boundary.mul_vec(&self.field, w);
                debug_assert!(image[upper.inside..].iter().all(|x| self.field.is_zero(x)));
                image.truncate(upper.inside);
                image
            })
            .collect()
    }

    pub fn betti(&self, p: usize) -> usize {
        if p == 0 {
            return 0;
        }
        let z = self.cycles(p).len();
        let b = algebra::span_rank(&self.field, &self.boundaries(p), self.generators(p).len());
        z - b
    }

    /// `beta_1..beta_max_order`.
    pub fn betti_profile(&self) -> Vec<usize> {
        (1..self.max_degree()).map(|p| self.betti(p)).collect()
    }

    /// Cycles whose classes form a basis of `H_p`: a basis of `B_p` is
    /// extended by cycle-space vectors and the added vectors are returned.
    pub fn cycle_representative_vectors(&self, p: usize) -> Vec<Vec<F::Elem>> {
        let len = self.generators(p).len();
        let mut span = algebra::span_basis(&self.field, &self.boundaries(p), len);
        let mut rank = span.len();
        let mut reps = Vec::new();
        for z in self.cycles(p) {
            span.push(z.clone());
            let r = algebra::span_rank(&self.field, &span, len);
            if r > rank {
                rank = r;
                reps.push(z.clone());
            } else {
                span.pop();
            }
        }
        reps
    }

    pub fn to_chain(&self, p: usize, coords: &[F::Elem]) -> FormalChain<F::Elem> {
        FormalChain::from_coordinates(&self.field, p, self.generators(p), coords)
    }
}

fn degree_spaces<F: Field>(field: &F, complex: &IntComplex, p: usize) -> DegreeSpaces<F::Elem> {
    let generators = complex.layer(p).to_vec();
    let n = generators.len();
    if p == 1 {
        let identity: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut e = vec![field.zero(); n];
                e[i] = field.one();
                e
            })
            .collect();
        return DegreeSpaces {
            generators,
            ambient: Vec::new(),
            inside: 0,
            boundary: Matrix::zeros(field, 0, n),
            omega: identity.clone(),
            cycles: identity,
        };
    }
    let lower = complex.layer(p - 1);
    let mut ambient: Vec<Interaction> = lower.to_vec();
    let mut index: HashMap<Interaction, usize> =
        ambient.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let inside = ambient.len();
    let chains: Vec<FormalChain<F::Elem>> = generators.iter().map(|s| boundary(field, s)).collect();
    let mut extra: Vec<Interaction> = chains
        .iter()
        .flat_map(|c| c.support().cloned())
        .filter(|f| !index.contains_key(f))
        .collect();
    extra.sort_by_cached_key(|s| s.to_string());
    extra.dedup();
    for f in extra {
        index.insert(f.clone(), ambient.len());
        ambient.push(f);
    }
    let mut matrix = Matrix::zeros(field, ambient.len(), n);
    for (col, chain) in chains.iter().enumerate() {
        for (face, c) in chain.terms() {
            matrix.set(index[face], col, c.clone());
        }
    }
    let outside_rows: Vec<Vec<F::Elem>> = (inside..ambient.len())
        .map(|r| matrix.row(r).to_vec())
        .collect();
    let omega = algebra::kernel_basis(field, &Matrix::from_rows(n, outside_rows));
    let cycles = algebra::kernel_basis(field, &matrix);
    DegreeSpaces {
        generators,
        ambient,
        inside,
        boundary: matrix,
        omega,
        cycles,
    }
}

/// Basis of `Omega_p` as chains.
pub fn omega_basis<F: Field>(field: &F, complex: &IntComplex, p: usize) -> Vec<FormalChain<F::Elem>> {
    if p == 0 {
        return Vec::new();
    }
    let spaces = degree_spaces(field, complex, p);
    spaces
        .omega
        .iter()
        .map(|w| FormalChain::from_coordinates(field, p, &spaces.generators, w))
        .collect()
}

pub fn betti<F: Field>(field: &F, complex: &IntComplex, p: usize) -> usize {
    ChainSpaces::new(field, complex).betti(p)
}

pub fn betti_profile<F: Field>(field: &F, complex: &IntComplex) -> Vec<usize> {
    ChainSpaces::new(field, complex).betti_profile()
}

pub fn cycle_representatives<F: Field>(
    field: &F,
    complex: &IntComplex,
    p: usize,
) -> Vec<FormalChain<F::Elem>> {
    let spaces = ChainSpaces::new(field, complex);
    spaces
        .cycle_representative_vectors(p)
        .iter()
        .map(|z| spaces.to_chain(p, z))
        .collect()
}

/// `(beta_1, beta_2)` of the `p`-layer graph.
pub fn layer_betti<F: Field>(
    field: &F,
    complex: &IntComplex,
    p: usize,
) -> Result<(usize, usize), HomologyError> {
    let graph = complex.layer_graph(p)?;
    let spaces = ChainSpaces::new(field, &graph);
    Ok((spaces.betti(1), spaces.betti(2)))
}

/// `beta_2` of the graph built from the subset `S`.
pub fn multilayer_betti<F: Field>(
    field: &F,
    complex: &IntComplex,
    subset: &[Interaction],
) -> Result<usize, HomologyError> {
    let graph = complex.subset_graph(subset)?;
    Ok(ChainSpaces::new(field, &graph).betti(2))
}

/// Matrix of the map on `H_p` induced by a vertex map `f: source -> target`,
/// in the cycle-representative bases of both sides (columns index the
/// source basis).
pub fn induced_map<F, M>(
    field: &F,
    f: &M,
    source: &IntComplex,
    target: &IntComplex,
    p: usize,
) -> Result<Matrix<F::Elem>, HomologyError>
where
    F: Field,
    M: Fn(&Vertex) -> Option<Vertex>,
{
    for sigma in source.iter() {
        let image = sigma.map_vertices(f)?;
        if !target.contains(&image) {
            return Err(HomologyError::NotInteractionMap(sigma.clone()));
        }
    }
    let src = ChainSpaces::new(field, source);
    let dst = ChainSpaces::new(field, target);
    let src_reps = src.cycle_representative_vectors(p);
    let dst_reps = dst.cycle_representative_vectors(p);
    let dst_gens = dst.generators(p);
    let len = dst_gens.len();
    let mut columns: Vec<Vec<F::Elem>> = dst_reps.clone();
    columns.extend(algebra::span_basis(field, &dst.boundaries(p), len));
    let system = Matrix::from_columns(field, len, &columns);
    let mut out = Matrix::zeros(field, dst_reps.len(), src_reps.len());
    for (j, z) in src_reps.iter().enumerate() {
        let pushed = src.to_chain(p, z).map_vertices(field, f)?;
        let coords = pushed
            .coordinates(field, dst_gens)
            .expect("interaction map keeps chains inside the target");
        let x = algebra::solve(field, &system, &coords)
            .expect("image of a cycle is a cycle of the target");
        for i in 0..dst_reps.len() {
            out.set(i, j, x[i].clone());
        }
    }
    Ok(out)
}

/// Betti numbers and layer betti numbers of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    /// `beta_1, beta_2, ...`
    pub betti: Vec<usize>,
    /// `p -> (beta_p^L1, beta_p^L2)` for every nonempty layer `p >= 2`.
    pub layer: BTreeMap<usize, (usize, usize)>,
}

impl Signature {
    /// Betti numbers through `max_degree` (default: the top nonempty layer)
    /// and layer betti numbers of every nonempty layer `p >= 2` up to the
    /// same bound.
    pub fn compute<F: Field>(field: &F, complex: &IntComplex, max_degree: Option<usize>) -> Self {
        let spaces = ChainSpaces::new(field, complex);
        let top = max_degree.unwrap_or(complex.max_order());
        let betti = (1..=top).map(|p| spaces.betti(p)).collect();
        let layer = complex
            .orders()
            .filter(|&p| p >= 2 && p <= top)
            .map(|p| (p, layer_betti(field, complex, p).expect("nonempty layer")))
            .collect();
        Signature { betti, layer }
    }

    pub fn compute_with(spec: FieldSpec, complex: &IntComplex, max_degree: Option<usize>) -> Result<Self, HomologyError> {
        Ok(match spec {
            FieldSpec::Rational => Self::compute(&Rationals, complex, max_degree),
            FieldSpec::Prime(q) => Self::compute(&PrimeField::new(q)?, complex, max_degree),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}
