//! Exact homological algebra over prime fields.

pub mod algebra;
pub mod dualize;
pub mod error;
pub mod exactla;
pub mod hochschild;
pub mod isocheck;
pub mod module;
pub mod random;
pub mod report;
pub mod resolve;

pub use algebra::{Algebra, AlgebraMorphism, Builtin};
pub use dualize::{rigid_dualizing, DualizingData};
pub use error::{Error, Result};
pub use exactla::{Mat, PrimeField, Subquotient};
pub use report::{Outcome, Verdict, VerificationReport};
pub use resolve::{Complex, GradedModule, Resolution};
pub use module::{Bimodule, CommutingAction, LeftModule, ModuleMorphism, RightModule};
