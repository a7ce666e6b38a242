//! Discretized `L²` layer for the `ax+b` model.
//!
//! Everything here lives on FFT-compatible grids: a uniform `v`-window, a
//! half-cell-offset `ξ`-grid whose `φ⁻¹`-image provides the `q`-nodes (so
//! the measure pushforward is exact and the star product closes on the
//! lattice), plus a half-spacing refinement on which point lookups such as
//! `φ(q) − ξ'` land exactly. The modules verify the operator-level
//! statements the exact layer cannot see: unitarity of the quantization,
//! the twisted star product, equivariance, the Duflo–Moore identity, the
//! `T_z` commutation, grid deformation norms, and the scaling-flow oracle.

pub mod grid;
pub mod kn;
pub mod oracle;
pub mod reps;
pub mod star;
pub mod symgrid;
pub mod testfam;
pub mod tz;

pub use grid::Grid;
pub use testfam::{test_family, TestMember};
