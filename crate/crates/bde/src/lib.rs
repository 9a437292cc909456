//! Exact symbolic engine and numeric renderer for symmetric binary
//! differential equations (BDEs) on the plane.
//!
//! A BDE is the implicit equation a·dy² + 2b·dxdy + c·dx² = 0. This crate
//! checks and detects the compact symmetry groups Γ_η ≤ O(2) of such
//! equations with exact rational arithmetic, computes generator sets of the
//! modules of equivariant quadratic forms by Reynolds-operator projections,
//! reproduces and verifies the catalog of general forms for every compact
//! subgroup of O(2), and renders configurations (the pair of foliations on
//! the region where the discriminant is positive) numerically.

pub mod algebra;
pub mod equivariance;
pub mod groups;
pub mod invariants;
pub mod parse;
pub mod rational;
pub mod render;

pub use algebra::{
    complex_form_to_triple, complex_to_real, real_to_complex, triple_to_complex_form,
    ComplexMapForm, ComplexPoly, RealPoly,
};
pub use equivariance::{
    check_equivariance, detect_symmetries, discriminant_invariance, morse_symmetry_candidates,
    morse_value, Bde, DetectionReport,
};
pub use groups::{Angle, Axis, EtaSpec, GroupElement, GroupSpec, SymmetryGroup};
pub use rational::{Gaussian, Rat};
