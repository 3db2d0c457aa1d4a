//! Gaussian-state workbench for nonlinear (SU(1,1)) and Mach-Zehnder
//! interferometry.
//!
//! The crate propagates two-mode Gaussian states through parametric-amplifier
//! and beam-splitter interferometers, evaluates parity / homodyne / intensity
//! detection signals and the phase sensitivities they induce, and computes
//! quantum Fisher information and Cramér-Rao bounds — with every closed form
//! cross-validated against an independent truncated Fock-space simulator.
//!
//! Module map:
//!
//! * [`numerics`] — small dense real/complex matrix kernels, derivatives;
//! * [`gaussian`] — states, Wigner values, marginals, ladder-basis moments;
//! * [`transforms`] — symplectic optics and interferometer composition;
//! * [`detection`] — signals, noises, and phase sensitivities;
//! * [`metrology`] — Fisher information, benchmark limits, bound catalog;
//! * [`fock`] — the brute-force truncated Fock-basis oracle.

pub mod detection;
pub mod fock;
pub mod gaussian;
pub mod metrology;
pub mod numerics;
pub mod transforms;
pub mod verification;

pub use detection::{DetectionScheme, SensitivityResult};
pub use gaussian::{GaussianState, Mode};
pub use num_complex::Complex64;
pub use transforms::{IfoSpec, InputParams, MziSpec, Su11Spec, SymplecticTransform};
