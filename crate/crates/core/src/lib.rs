//! Exact cyclic A∞ algebras over a truncated Novikov ring, their Hochschild
//! and cyclic chain complexes, the m⁺ functional, the Clifford torus model in
//! CP², and the three-point disc census on the Clifford torus.

pub mod ainfty;
pub mod basis;
pub mod census;
pub mod chain;
pub mod clifford;
pub mod document;
pub mod element;
pub mod error;
pub mod field;
pub mod hochschild;
pub mod linsolve;
pub mod morphism;
pub mod novikov;
pub mod pairing;
pub mod report;
pub mod sample;
pub mod sign;

pub use ainfty::{AInfinityStructure, ClassIndex, FiltrationMonoid};
pub use basis::{GradedBasis, Letter};
pub use census::{census, CensusReport, TorusPoint};
pub use chain::{ChainElement, TensorWord};
pub use clifford::{CliffordModel, DiscClassTable};
pub use document::{AlgebraDocument, ChainDocument};
pub use element::{GradedElement, Vector};
pub use error::{Error, Result};
pub use field::FieldValue;
pub use morphism::MorphismData;
pub use novikov::{Energy, NovikovScalar};
pub use pairing::CyclicPairing;
pub use report::Report;
pub use sign::{koszul_sign, Sign};
