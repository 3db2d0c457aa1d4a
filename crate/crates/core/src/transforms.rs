//! Symplectic transfer matrices for the optical elements (OPA two-mode
//! squeezers, phase shifters, beam splitters), their composition into
//! SU(1,1) and Mach-Zehnder interferometers, and the closed-form complex
//! amplitude transfer of the balanced SU(1,1) configuration.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

use crate::gaussian::GaussianState;
use crate::numerics::RealMatrix;

#[derive(Debug, Clone, Error)]
pub enum TransformError {
    #[error("matrix must be 4x4, got {0}x{1}")]
    BadDimensions(usize, usize),
    #[error("closed form requires a balanced spec (θ₁=0, θ₂=π, g₁=g₂); got g₁={g1}, g₂={g2}, θ₁={theta1}, θ₂={theta2}")]
    UnbalancedSpec {
        g1: f64,
        g2: f64,
        theta1: f64,
        theta2: f64,
    },
}

/// Linear quadrature map X → S·X preserving the canonical form J.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform {
    m: RealMatrix,
}

impl SymplecticTransform {
    pub fn identity() -> Self {
        SymplecticTransform {
            m: RealMatrix::identity(4),
        }
    }

    pub fn from_matrix(m: RealMatrix) -> Result<Self, TransformError> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(TransformError::BadDimensions(m.rows(), m.cols()));
        }
        Ok(SymplecticTransform { m })
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.m
    }

    /// `self` applied after `earlier` (matrix product self·earlier).
    pub fn after(&self, earlier: &SymplecticTransform) -> SymplecticTransform {
        SymplecticTransform {
            m: self.m.mul(&earlier.m),
        }
    }

    /// Product of an ordered pipeline: the first element acts first.
    pub fn compose(pipeline: &[SymplecticTransform]) -> SymplecticTransform {
        pipeline
            .iter()
            .fold(Self::identity(), |acc, s| s.after(&acc))
    }

    /// Propagate a Gaussian state: X̄ → SX̄, Γ → SΓSᵀ.
    pub fn apply(&self, state: &GaussianState) -> GaussianState {
        let mean_v = self.m.mul_vec(&state.mean());
        let mean = [mean_v[0], mean_v[1], mean_v[2], mean_v[3]];
        let cov = self.m.mul(state.cov()).mul(&self.m.transpose());
        GaussianState::new(mean, cov).expect("4x4 covariance stays 4x4")
    }

    /// Largest entry of S·J·Sᵀ − J; zero for exact symplectic matrices.
    pub fn symplectic_defect(&self) -> f64 {
        let j = crate::gaussian::commutation_form();
        self.m.mul(&j).mul(&self.m.transpose()).sub(&j).max_abs()
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }
}

/// Two-mode squeezer (optical parametric amplifier) of strength g and pump
/// phase θ, the quadrature form of â → â cosh g + e^{iθ} b̂† sinh g. θ = 0
/// and θ = π give the two recombination conventions of the balanced
/// interferometer.
pub fn opa(g: f64, theta: f64) -> SymplecticTransform {
    let (c, s) = (g.cosh(), g.sinh());
    let (ct, st) = (theta.cos(), theta.sin());
    SymplecticTransform {
        m: RealMatrix::from_array([
            [c, 0.0, s * ct, s * st],
            [0.0, c, s * st, -s * ct],
            [s * ct, s * st, c, 0.0],
            [s * st, -s * ct, 0.0, c],
        ]),
    }
}

/// Where the unknown phase φ sits in the interferometer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhasePlacement {
    /// φ entirely on mode a (the SU(1,1) layout).
    ModeAOnly,
    /// +φ/2 on mode a and −φ/2 on mode b (the MZI layout).
    BothArmsHalf,
}

pub fn phase_shifter(phi: f64, placement: PhasePlacement) -> SymplecticTransform {
    fn rot(chi: f64) -> [[f64; 2]; 2] {
        [[chi.cos(), -chi.sin()], [chi.sin(), chi.cos()]]
    }
    let (ra, rb) = match placement {
        PhasePlacement::ModeAOnly => (rot(phi), rot(0.0)),
        PhasePlacement::BothArmsHalf => (rot(phi / 2.0), rot(-phi / 2.0)),
    };
    let mut m = RealMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = ra[i][j];
            m[(2 + i, 2 + j)] = rb[i][j];
        }
    }
    SymplecticTransform { m }
}

/// Beam splitter with mixing angle θ_bs (transmittance cos²θ_bs); π/4 is the
/// 50-50 splitter. Real orthogonal convention: â → â cosθ + b̂ sinθ.
pub fn beam_splitter(theta_bs: f64) -> SymplecticTransform {
    let (c, s) = (theta_bs.cos(), theta_bs.sin());
    SymplecticTransform {
        m: RealMatrix::from_array([
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, s],
            [-s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ]),
    }
}

/// Canonical input parameters: coherent amplitude |α₀|e^{iθ_α} on mode a and
/// squeezed vacuum ξ = r e^{iθ_s} on mode b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputParams {
    pub alpha_mag: f64,
    pub theta_alpha: f64,
    pub r: f64,
    pub theta_s: f64,
}

impl InputParams {
    pub fn vacuum() -> Self {
        InputParams::coherent_squeezed(0.0, 0.0)
    }

    /// Coherent ⊗ squeezed-vacuum input with both phases at zero.
    pub fn coherent_squeezed(alpha_mag: f64, r: f64) -> Self {
        InputParams::coherent_squeezed(alpha_mag, r)
    }

    pub fn state(&self) -> GaussianState {
        GaussianState::prepare_input(self.alpha_mag, self.theta_alpha, self.r, self.theta_s)
    }
}

impl Default for InputParams {
    fn default() -> Self {
        Self::vacuum()
    }
}

/// Full SU(1,1) interferometer description: OPA1 → phase on mode a → OPA2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Spec {
    pub g1: f64,
    pub theta1: f64,
    pub g2: f64,
    pub theta2: f64,
    pub phi: f64,
    pub input: InputParams,
}

impl Su11Spec {
    /// The balanced configuration: θ₁ = 0, θ₂ = π, equal strengths.
    pub fn balanced(g: f64, phi: f64, input: InputParams) -> Self {
        Su11Spec {
            g1: g,
            theta1: 0.0,
            g2: g,
            theta2: PI,
            phi,
            input,
        }
    }

    pub fn is_balanced(&self) -> bool {
        const TOL: f64 = 1e-12;
        (self.g1 - self.g2).abs() < TOL && self.theta1.abs() < TOL && (self.theta2 - PI).abs() < TOL
    }

    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    /// Spontaneous photon number of one OPA on vacuum, N_OPA = 2 sinh²g₁.
    pub fn n_opa(&self) -> f64 {
        2.0 * self.g1.sinh().powi(2)
    }

    pub fn transform_at(&self, phi: f64) -> SymplecticTransform {
        SymplecticTransform::compose(&[
            opa(self.g1, self.theta1),
            phase_shifter(phi, PhasePlacement::ModeAOnly),
            opa(self.g2, self.theta2),
        ])
    }

    pub fn transform(&self) -> SymplecticTransform {
        self.transform_at(self.phi)
    }

    pub fn input_state(&self) -> GaussianState {
        self.input.state()
    }

    pub fn output_at(&self, phi: f64) -> GaussianState {
        self.transform_at(phi).apply(&self.input_state())
    }

    pub fn output_state(&self) -> GaussianState {
        self.output_at(self.phi)
    }
}

/// General two-mode input: coherent amplitudes on both modes plus squeezed
/// vacuum on mode b. Used by the MZI and by the catalog's two-coherent rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeInput {
    pub alpha_a: Complex64,
    pub alpha_b: Complex64,
    pub r: f64,
    pub theta_s: f64,
}

impl TwoModeInput {
    pub fn coherent(alpha_a: Complex64, alpha_b: Complex64) -> Self {
        TwoModeInput {
            alpha_a,
            alpha_b,
            r: 0.0,
            theta_s: 0.0,
        }
    }

    pub fn state(&self) -> GaussianState {
        GaussianState::coherent_squeezed(self.alpha_a, self.alpha_b, self.r, self.theta_s)
    }
}

/// Mach-Zehnder interferometer: 50-50 splitter, ±φ/2 arm phases, 50-50
/// recombiner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MziSpec {
    pub phi: f64,
    pub input: TwoModeInput,
}

impl MziSpec {
    pub fn transform_at(phi: f64) -> SymplecticTransform {
        SymplecticTransform::compose(&[
            beam_splitter(PI / 4.0),
            phase_shifter(phi, PhasePlacement::BothArmsHalf),
            beam_splitter(PI / 4.0),
        ])
    }

    pub fn input_state(&self) -> GaussianState {
        self.input.state()
    }

    pub fn output_at(&self, phi: f64) -> GaussianState {
        Self::transform_at(phi).apply(&self.input_state())
    }
}

/// Either interferometer, for detection code that handles both.
#[derive(Debug, Clone, PartialEq)]
pub enum IfoSpec {
    Su11(Su11Spec),
    Mzi(MziSpec),
}

impl IfoSpec {
    pub fn output_at(&self, phi: f64) -> GaussianState {
        match self {
            IfoSpec::Su11(s) => s.output_at(phi),
            IfoSpec::Mzi(m) => m.output_at(phi),
        }
    }
}

/// Bogoliubov coefficients of the balanced SU(1,1) transfer in the
/// (α_f, β_f*) representation: the inverse map α_i = G α_f + R β_f*,
/// β_i* = −R α_f + H β_f*, with A = cos(φ/2)e^{−iφ/2}, B = sin(φ/2)e^{−iφ/2}.
#[derive(Debug, Clone, Copy)]
pub struct ComplexTransfer {
    pub u1: Complex64,
    pub v1: Complex64,
    pub u2: Complex64,
    pub v2: Complex64,
    pub a_coef: Complex64,
    pub b_coef: Complex64,
    pub g_coef: Complex64,
    pub h_coef: Complex64,
    pub r_coef: Complex64,
}

pub fn su11_transfer(spec: &Su11Spec) -> Result<ComplexTransfer, TransformError> {
    if !spec.is_balanced() {
        return Err(TransformError::UnbalancedSpec {
            g1: spec.g1,
            g2: spec.g2,
            theta1: spec.theta1,
            theta2: spec.theta2,
        });
    }
    let g = spec.g1;
    let phi = spec.phi;
    let half = Complex64::from_polar(1.0, -phi / 2.0);
    let a = (phi / 2.0).cos() * half;
    let b = (phi / 2.0).sin() * half;
    let i = Complex64::new(0.0, 1.0);
    let c2g = (2.0 * g).cosh();
    let s2g = (2.0 * g).sinh();
    Ok(ComplexTransfer {
        u1: Complex64::new(g.cosh(), 0.0),
        v1: Complex64::from_polar(g.sinh(), spec.theta1),
        u2: Complex64::new(g.cosh(), 0.0),
        v2: Complex64::from_polar(g.sinh(), spec.theta2),
        a_coef: a,
        b_coef: b,
        g_coef: a - i * b * c2g,
        h_coef: a + i * b * c2g,
        r_coef: -i * b * s2g,
    })
}
