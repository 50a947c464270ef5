//! Exact-arithmetic engine for generalized Casimir operators, Gelfand
//! invariants and their orthogonal/symplectic analogues on evaluation
//! modules of loop algebras `g ⊗ ℚ[t, t⁻¹]`.

pub mod centralops;
pub mod decomp;
pub mod error;
pub mod evalmod;
pub mod exactla;
pub mod interp;
pub mod liealg;
pub mod reps;
pub mod tensor;

pub use error::{Error, Result};
pub use exactla::{Matrix, Scalar};
pub use interp::{EvaluationPoints, IdempotentBasis, LaurentPoly};
pub use liealg::{AlgebraKind, Element, LieAlgebra, Weight};
pub use reps::Representation;
pub use evalmod::{EvaluationModule, ModuleVector, WeightSpace};
pub use centralops::{Coeff, Domain, Evaluator, OperatorMatrix, OperatorSpec};
