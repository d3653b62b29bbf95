//! IntComplexes: collections of binary-tree interactions, their homology,
//! layer and multilayer homology, persistent homology over weight
//! filtrations and bottleneck distances between persistence diagrams.
//!
//! All linear algebra is exact, over the rationals by default or over a
//! prime field.
//!
//! ```
//! use intcx::{homology, IntComplex, Rationals};
//!
//! let square = IntComplex::parse_all(&["1", "2", "3", "4", "(1,2)", "(2,3)", "(3,4)", "(1,4)"]).unwrap();
//! assert_eq!(homology::betti_profile(&Rationals, &square), vec![1, 1]);
//! ```

pub mod algebra;
pub mod complex;
pub mod examples;
pub mod experiments;
pub mod format;
pub mod homology;
pub mod interaction;
pub mod numeric;
pub mod persistence;

pub use algebra::{Field, FieldSpec, Matrix, PrimeField, Rationals};
pub use complex::{ComplexError, FreePair, IntComplex, RandomParams};
pub use format::{parse_complex_file, ComplexFile, FormatError};
pub use homology::{FormalChain, Signature};
pub use interaction::{Interaction, InteractionError, NpRep, Vertex};
pub use persistence::{
    bottleneck, Bar, Filtration, PersistenceDiagram, PersistenceError, PersistentHomology, WeightedIntComplex,
};
