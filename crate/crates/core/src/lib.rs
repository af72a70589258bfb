//! Exact computations in the Heisenberg vertex operator algebra M(1), its
//! fixed-point subalgebra M(1)^+ and the Whittaker-type weak modules
//! `M(1, zeta)` and `M(1, zeta)(theta)`.

pub mod determinant;
pub mod error;
pub mod fock;
pub mod grammar;
pub mod identities;
pub mod rational;
pub mod vertex;
pub mod weak_modules;
pub mod whittaker;

pub use error::{Error, Result};
pub use fock::{graded_dim, FockMonomial, FockVector, Index, Parity, Sector};
pub use grammar::{format_element, parse_element};
pub use identities::{jay, omega, RelationReport, Value};
pub use rational::Rational;
pub use vertex::{commutator_expansion, nth_product, verify_borcherds, CommutatorExpansion};
pub use weak_modules::{module_mode_action, ModuleVector, WhittakerParams};
pub use whittaker::{classify, ModuleDescriptor, WhittakerType};
