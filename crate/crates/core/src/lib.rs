//! Analysis, bounds, and exhaustive construction of linear unequal-data-demand
//! (UDD) PIR codes over small finite fields.
//!
//! A k x n generator matrix `G` over GF(q) stores k data symbols on n servers.
//! `G` is a T-PIR code for a demand vector T = (t_1 >= ... >= t_k) when data
//! symbol j can be read from t_j pairwise disjoint groups of servers. The crate
//! provides
//!
//! - [`algebra`]: GF(q) arithmetic for q <= 256 and dense linear algebra;
//! - [`codes`]: minimum distance, separation vectors, and the greedy optimal
//!   generator of a UEP code;
//! - [`pir`]: recovery sets, exact disjoint packings, and T-PIR certificates;
//! - [`bounds`]: hyperplane normals, the Griesmer sum and its fractional
//!   relaxation, and the per-hyperplane column inequalities;
//! - [`ilp`]: the column-multiplicity integer program and its exact solver;
//! - [`search`]: exhaustive searches for shortest codes and the concatenation
//!   baseline;
//! - [`cli`]: the text formats and report builders behind the `uddpir` binary.
//!
//! ```
//! use uddpir::{FieldSpec, Matrix, DemandVector, pir, bounds};
//!
//! let gf2 = FieldSpec::new(2, 1, None).unwrap();
//! let g = Matrix::from_rows(&gf2, &[[1, 0, 1, 1], [0, 1, 1, 0]]).unwrap();
//! assert_eq!(pir::pir_level(&g).unwrap(), vec![3, 2]);
//!
//! let t = DemandVector::new(vec![3, 2]).unwrap();
//! assert!(pir::verify_t_pir(&g, &t).unwrap().is_satisfied());
//! assert_eq!(bounds::griesmer_sum(&t, 2), 4);
//! ```

pub mod algebra;
pub mod bounds;
pub mod cli;
pub mod codes;
mod error;
pub mod ilp;
pub mod pir;
pub mod search;

pub use algebra::{FieldSpec, GfElement, GfVector, Matrix, Rref};
pub use bounds::{ColumnCounts, ProjectivePoint, Rational};
pub use codes::{LinearCode, SeparationVector};
pub use error::{Error, Result};
pub use ilp::{IlpModel, IlpSolution};
pub use pir::{DemandVector, PirCertificate, RecoverySet, Verdict};
pub use search::{SearchResult, SearchStatus};
