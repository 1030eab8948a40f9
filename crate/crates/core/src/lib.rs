//! Exact operator algebra for a superintegrable model with reflections on the
//! sphere: Dunkl-type osp(1|2) realizations, their intermediate Casimirs
//! (a higher rank Bannai-Ito algebra), the Hamiltonian, and the separated
//! wavefunctions built by Cauchy-Kovalevskaia extension.

pub mod ckfischer;
pub mod error;
pub mod hiprec;
pub mod integrals;
pub mod jacobi;
pub mod linalg;
pub mod model;
pub mod operator;
pub mod poly;
pub mod rational;
pub mod verify;
pub mod wavefn;

pub use error::{Error, Result};
pub use model::{Model, ModelParams, ReflectionPrefix, Subset, Transcription};
pub use operator::{anticommutator, commutator, equal_on_degree, gauge_conjugate, EqualityWitness, OperatorExpr};
pub use poly::{ExponentVector, LaurentPoly};
pub use rational::Rational;
pub use verify::{run, CheckRecord, Suite, SuiteConfig, SuiteReport};
pub use wavefn::WavefunctionLabel;
