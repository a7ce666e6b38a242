//! Verification library for quantizations of groups `G = Q ⋉ V` whose dual
//! group `V̂` carries a free `Q`-orbit of full measure (the *dual orbit
//! condition*).
//!
//! Everything the library checks is reduced to one of two normal forms:
//!
//! * **Weighted point transformations** ([`symop::SymOp`]): operators
//!   `(Tf)(x) = w(x)·f(σ(x))`, optionally composed with complex conjugation,
//!   acting on functions of finitely many "legs" `x ∈ (Q × V̂)ⁿ`. Operator
//!   identities (cocycle, pentagon, factorizations, …) become exact,
//!   randomly-sampled pointwise equalities of `σ` and `w`.
//! * **Discretized L² statements** ([`numgrid`]): unitarity of the
//!   Kohn–Nirenberg quantization, the twisted star product, covariance,
//!   and related operator claims, checked on explicit grids with stated
//!   convergence behavior.
//!
//! Concrete group models live in [`instances`]; the operator constructors in
//! [`qgops`]; the matched-pair / bicrossed-product reconstruction in
//! [`matchedpair`]; suite orchestration (shared with the CLI) in [`suites`].

pub mod elem;
pub mod error;
pub mod instances;
pub mod matchedpair;
pub mod model;
pub mod numgrid;
pub mod qgops;
pub mod report;
pub mod sampling;
pub mod suites;
pub mod symop;

pub use elem::{rel_dist, rel_dist_c, AffDualElem, DualElem, GroupElem, QElem, VElem, XPoint};
pub use error::CoreError;
pub use model::{ArcModel, DualOrbitModel};
pub use report::{SamplePlan, VerificationReport};
pub use symop::SymOp;
