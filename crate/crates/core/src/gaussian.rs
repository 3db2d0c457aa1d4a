//! Two-mode Gaussian states over the quadrature convention x̂ = â + â†,
//! p̂ = −i(â − â†), so the vacuum covariance is the identity.
//!
//! A state is a mean vector X̄ = (x_a, p_a, x_b, p_b) and a symmetrized
//! covariance Γ. The module prepares the standard interferometer input
//! (coherent light on mode a, squeezed vacuum on mode b), evaluates Wigner
//! densities, restricts to single-mode marginals, and converts to the
//! ladder-operator basis d = (â, â†, b̂, b̂†) used by the Fisher-information
//! machinery.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

use crate::numerics::{ComplexMatrix, NumericsError, RealMatrix};

/// Which of the two optical modes an operation addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
}

impl Mode {
    fn offset(self) -> usize {
        match self {
            Mode::A => 0,
            Mode::B => 2,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum GaussianError {
    #[error("covariance must be 4x4, got {0}x{1}")]
    BadDimensions(usize, usize),
    #[error("singular covariance: det = {det:.3e}")]
    SingularCovariance { det: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Two-mode Gaussian state: quadrature mean and symmetrized covariance.
///
/// The covariance is made exactly symmetric at construction; all other
/// invariants (uncertainty relation, purity) are properties of how states
/// are produced and are checked in tests rather than on every build.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: [f64; 4],
    cov: RealMatrix,
}

impl GaussianState {
    pub fn new(mean: [f64; 4], cov: RealMatrix) -> Result<Self, GaussianError> {
        if cov.rows() != 4 || cov.cols() != 4 {
            return Err(GaussianError::BadDimensions(cov.rows(), cov.cols()));
        }
        let sym = RealMatrix::from_fn(4, 4, |i, j| 0.5 * (cov[(i, j)] + cov[(j, i)]));
        Ok(GaussianState { mean, cov: sym })
    }

    pub fn vacuum() -> Self {
        GaussianState {
            mean: [0.0; 4],
            cov: RealMatrix::identity(4),
        }
    }

    /// The interferometer input |α₀⟩ ⊗ |0, ξ = r e^{iθ_s}⟩: coherent light on
    /// mode a, squeezed vacuum on mode b. With θ_s = 0 the mode-b covariance
    /// is diag(e^{2r}, e^{−2r}) (x̂ anti-squeezed); nonzero θ_s rotates the
    /// squeezing axes by θ_s/2.
    pub fn prepare_input(alpha_mag: f64, theta_alpha: f64, r: f64, theta_s: f64) -> Self {
        let alpha = Complex64::from_polar(alpha_mag, theta_alpha);
        Self::coherent_squeezed(alpha, Complex64::new(0.0, 0.0), r, theta_s)
    }

    /// Coherent amplitudes on both modes plus squeezed vacuum noise on mode b.
    /// This is the general input the bound catalog sweeps over; the canonical
    /// interferometer input has `beta = 0`.
    pub fn coherent_squeezed(alpha: Complex64, beta: Complex64, r: f64, theta_s: f64) -> Self {
        let mean = [2.0 * alpha.re, 2.0 * alpha.im, 2.0 * beta.re, 2.0 * beta.im];
        let mut cov = RealMatrix::identity(4);
        let sq = squeeze_block(r, theta_s);
        for i in 0..2 {
            for j in 0..2 {
                cov[(2 + i, 2 + j)] = sq[(i, j)];
            }
        }
        GaussianState { mean, cov }
    }

    /// Product of two coherent states (unit covariance).
    pub fn two_mode_coherent(alpha: Complex64, beta: Complex64) -> Self {
        Self::coherent_squeezed(alpha, beta, 0.0, 0.0)
    }

    pub fn mean(&self) -> [f64; 4] {
        self.mean
    }

    pub fn cov(&self) -> &RealMatrix {
        &self.cov
    }

    /// Restriction to one mode: Gaussian marginalization is just picking the
    /// sub-vector and sub-block.
    pub fn marginal(&self, mode: Mode) -> ([f64; 2], RealMatrix) {
        let o = mode.offset();
        let mu = [self.mean[o], self.mean[o + 1]];
        let cov = RealMatrix::from_fn(2, 2, |i, j| self.cov[(o + i, o + j)]);
        (mu, cov)
    }

    /// Wigner density at the phase-space point (α, β), i.e. at quadratures
    /// (2Reα, 2Imα, 2Reβ, 2Imβ). Normalized so ∫W d²α d²β = 1, which puts the
    /// per-mode vacuum peak at 2/π.
    pub fn wigner_value(&self, alpha: Complex64, beta: Complex64) -> Result<f64, GaussianError> {
        self.wigner_at([2.0 * alpha.re, 2.0 * alpha.im, 2.0 * beta.re, 2.0 * beta.im])
    }

    /// Wigner density as a function of the quadrature point X. Carries the
    /// Jacobian-free quadrature form W = 4/(π²√detΓ)·exp(−½ ΔᵀΓ⁻¹Δ); when
    /// integrating over quadratures instead of (α, β), divide the volume
    /// element by 16.
    pub fn wigner_at(&self, point: [f64; 4]) -> Result<f64, GaussianError> {
        let det = self.cov.determinant();
        if det < 1e-14 {
            return Err(GaussianError::SingularCovariance { det });
        }
        let delta = RealMatrix::from_fn(4, 1, |i, _| point[i] - self.mean[i]);
        let solved = self.cov.solve(&delta)?;
        let quad: f64 = (0..4).map(|i| delta[(i, 0)] * solved[(i, 0)]).sum();
        Ok(4.0 / (PI * PI * det.sqrt()) * (-0.5 * quad).exp())
    }

    /// Mean photon number of one mode, ⟨â†â⟩ = (Γ_xx + Γ_pp + μ_x² + μ_p² − 2)/4.
    pub fn mean_photon(&self, mode: Mode) -> f64 {
        let (mu, cov) = self.marginal(mode);
        (cov[(0, 0)] + cov[(1, 1)] + mu[0] * mu[0] + mu[1] * mu[1] - 2.0) / 4.0
    }

    pub fn total_photon(&self) -> f64 {
        self.mean_photon(Mode::A) + self.mean_photon(Mode::B)
    }

    /// det Γ; equals 1 for pure states in this convention.
    pub fn cov_determinant(&self) -> f64 {
        self.cov.determinant()
    }

    /// Smallest eigenvalue of the Hermitian matrix Γ + iJ. The uncertainty
    /// relation is Γ + iJ ⪰ 0, so valid states return ≥ 0 up to roundoff.
    pub fn uncertainty_min_eigenvalue(&self) -> f64 {
        let j = commutation_form();
        let m = ComplexMatrix::from_fn(4, 4, |i, k| Complex64::new(self.cov[(i, k)], j[(i, k)]));
        crate::numerics::hermitian_eigenvalues(&m)[0]
    }

    /// Symplectic eigenvalues (ν₋, ν₊) from the two-mode invariants. The
    /// uncertainty relation Γ + iJ ⪰ 0 is equivalent to ν₋ ≥ 1 here, though
    /// near-degenerate spectra resolve it only to ~√ε; use
    /// [`Self::uncertainty_min_eigenvalue`] for tight checks.
    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        let block =
            |ro: usize, co: usize| RealMatrix::from_fn(2, 2, |i, j| self.cov[(ro + i, co + j)]);
        let det_a = block(0, 0).determinant();
        let det_b = block(2, 2).determinant();
        let det_c = block(0, 2).determinant();
        let delta = det_a + det_b + 2.0 * det_c;
        let det_g = self.cov.determinant();
        let disc = (delta * delta - 4.0 * det_g).max(0.0).sqrt();
        let lo = ((delta - disc) / 2.0).max(0.0).sqrt();
        let hi = ((delta + disc) / 2.0).sqrt();
        (lo, hi)
    }

    /// Ladder-operator first and second moments of the state.
    pub fn to_complex(&self) -> ComplexMoments {
        let h = basis_change();
        let dbar_m = h.mul(&RealMatrix::from_fn(4, 1, |i, _| self.mean[i]).to_complex());
        let dbar = [
            dbar_m[(0, 0)],
            dbar_m[(1, 0)],
            dbar_m[(2, 0)],
            dbar_m[(3, 0)],
        ];
        let sigma = h.mul(&self.cov.to_complex()).mul(&h.transpose());
        ComplexMoments { dbar, sigma }
    }
}

/// Single-mode squeezed-vacuum covariance block. For ξ = r e^{iθ} the block is
/// M² with M = cosh r·I + sinh r·[[cosθ, sinθ], [sinθ, −cosθ]]; θ = 0 gives
/// diag(e^{2r}, e^{−2r}).
fn squeeze_block(r: f64, theta: f64) -> RealMatrix {
    let (ch, sh) = (r.cosh(), r.sinh());
    let m = RealMatrix::from_array([
        [ch + sh * theta.cos(), sh * theta.sin()],
        [sh * theta.sin(), ch - sh * theta.cos()],
    ]);
    m.mul(&m)
}

/// Mean vector d̄ = (⟨â⟩, ⟨â†⟩, ⟨b̂⟩, ⟨b̂†⟩) and symmetrized covariance
/// Σᵘᵛ = ½⟨{δd_u, δd_v}⟩ in the ladder-operator basis.
///
/// Σ is complex symmetric (Σ = Σᵀ, not Hermitian) and the commutators satisfy
/// [d_u, d_v] = Ω^{uv} with the block form [[0,1],[−1,0]] per mode. For the
/// vacuum the per-mode Σ blocks are [[0,½],[½,0]].
#[derive(Debug, Clone)]
pub struct ComplexMoments {
    dbar: [Complex64; 4],
    sigma: ComplexMatrix,
}

impl ComplexMoments {
    pub fn dbar(&self) -> [Complex64; 4] {
        self.dbar
    }

    pub fn sigma(&self) -> &ComplexMatrix {
        &self.sigma
    }

    /// The commutation matrix Ω.
    pub fn omega() -> ComplexMatrix {
        let i = |x: f64| Complex64::new(x, 0.0);
        ComplexMatrix::from_array([
            [i(0.0), i(1.0), i(0.0), i(0.0)],
            [i(-1.0), i(0.0), i(0.0), i(0.0)],
            [i(0.0), i(0.0), i(0.0), i(1.0)],
            [i(0.0), i(0.0), i(-1.0), i(0.0)],
        ])
    }

    /// Mean photon number of one mode computed in this basis,
    /// ⟨â†â⟩ = Σ^{a a†} + |d̄_a|² − ½.
    pub fn mean_photon(&self, mode: Mode) -> f64 {
        let o = mode.offset();
        (self.sigma[(o, o + 1)] + self.dbar[o] * self.dbar[o + 1]).re - 0.5
    }

    /// Invert the basis change back to quadratures.
    pub fn to_quadrature(&self) -> Result<GaussianState, GaussianError> {
        let h = basis_change();
        let h_inv = h.inverse()?;
        let d = ComplexMatrix::from_fn(4, 1, |i, _| self.dbar[i]);
        let x = h_inv.mul(&d);
        let mut mean = [0.0; 4];
        for (i, m) in mean.iter_mut().enumerate() {
            *m = x[(i, 0)].re;
        }
        let gam = h_inv.mul(&self.sigma).mul(&h_inv.transpose());
        let cov = RealMatrix::from_fn(4, 4, |i, j| gam[(i, j)].re);
        GaussianState::new(mean, cov)
    }
}

/// The canonical commutation form J = diag([[0,1],[−1,0]], [[0,1],[−1,0]]):
/// [X̂_k, X̂_l] = 2i·J_kl in this quadrature scaling.
pub fn commutation_form() -> RealMatrix {
    RealMatrix::from_array([
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ])
}

/// The quadrature → ladder-operator change of basis, d = H·X with rows
/// ½(1, i), ½(1, −i) per mode, so ⟨â⟩ = (⟨x̂⟩ + i⟨p̂⟩)/2.
pub fn basis_change() -> ComplexMatrix {
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, 0.5);
    let zero = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_array([
        [half, half_i, zero, zero],
        [half, -half_i, zero, zero],
        [zero, zero, half, half_i],
        [zero, zero, half, -half_i],
    ])
}

/// Centered ladder moments of one mode read off the quadrature marginal:
/// m = ⟨â⟩, n_c = ⟨δâ†δâ⟩, s = ⟨δâ²⟩. These feed the photon-statistics
/// formulas in the detection module.
pub fn mode_ladder_moments(state: &GaussianState, mode: Mode) -> (Complex64, f64, Complex64) {
    let (mu, cov) = state.marginal(mode);
    let m = Complex64::new(mu[0], mu[1]) / 2.0;
    let n_c = (cov[(0, 0)] + cov[(1, 1)] - 2.0) / 4.0;
    let s = Complex64::new(cov[(0, 0)] - cov[(1, 1)], 2.0 * cov[(0, 1)]) / 4.0;
    (m, n_c, s)
}

/// Cross-mode centered moments (⟨δâδb̂⟩, ⟨δâδb̂†⟩) from the off-diagonal
/// covariance block; needed for the photon covariance of the two outputs.
pub fn cross_ladder_moments(state: &GaussianState) -> (Complex64, Complex64) {
    let c = state.cov();
    let dadb = Complex64::new(c[(0, 2)] - c[(1, 3)], c[(0, 3)] + c[(1, 2)]) / 4.0;
    let dadb_dag = Complex64::new(c[(0, 2)] + c[(1, 3)], c[(1, 2)] - c[(0, 3)]) / 4.0;
    (dadb, dadb_dag)
}
