//! Closed-form wave packets for a particle in a time-dependent linear
//! potential `H = p²/2m − F(t)x`, built from the linear invariant
//! `I(t) = A(t)p̂ + B(t)x̂ + C(t)`.
//!
//! The crate is `no_std` and only needs `alloc`. Sampling on grids and all
//! FFT-based operations live in the `lrwp` crate.

#![no_std]
// `!(x > 0.0)` style guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod classical;
pub mod error;
pub mod field;
pub mod forcing;
pub mod invariant;
pub mod quadrature;
pub mod wavepacket;

pub use num_complex::Complex64;

pub use classical::{ActionTable, ClassicalState};
pub use error::{Error, PacketMode, Result};
pub use field::{Moments, Space, UniformGrid, WaveField};
pub use forcing::{ForceProfile, QuadratureMethod, Quadratures};
pub use invariant::{classify_ratio, InvariantCoefficients, InvariantSpec};
pub use quadrature::AdaptiveSimpson;
pub use wavepacket::{
    continuous_sqrt_scale, momentum_solution, normalized_alpha0, GaussianMomentumParams, GtwpSnapshot,
    MatchedParameters, MomentumSnapshot, PacketState, PlaneWaveSnapshot, PlaneWaveSuperposition, SuperpositionSnapshot,
};
