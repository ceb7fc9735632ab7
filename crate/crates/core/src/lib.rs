//! First-order atomic energy shifts from the CPT-even photon-sector
//! coefficient `(K_F)_{κλμν}` of the Lorentz-violating Maxwell theory.
//!
//! The coefficient modifies the static potential of a point charge to
//! `A₀ = q/(4π|X|)·(1 − κ_{jk}X̂^jX̂^k)` with `κ_{jk} = (K_F)_{0j0k}`. This crate
//! evaluates that potential and its field, treats the correction as a
//! perturbation of hydrogen-like levels and of the helium ground state, and
//! turns measurement accuracy into upper bounds on the coefficient.
//!
//! Modules:
//! - [`tensor`]: symmetry-reduced storage of `K_F` and its `κ` slice
//! - [`fields`]: Green function, potentials, electric field
//! - [`hydrogenic`]: wavefunctions, radial moments, angular elements
//! - [`perturbation`]: diagonal, degenerate-shell, Stark-like and spin-orbit shifts
//! - [`helium`]: helium ground-state shift
//! - [`bounds`]: coefficient bounds from accuracy
//! - [`numerics`]: quadrature and Monte Carlo oracles
//! - [`cli`]: the `livshift` command-line front end

pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod fields;
pub mod helium;
pub mod hydrogenic;
pub mod numerics;
pub mod perturbation;
pub mod special;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::{KappaMatrix, KfTensor};
