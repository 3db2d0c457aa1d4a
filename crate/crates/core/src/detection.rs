//! Detection signals (parity, homodyne, intensity) on Gaussian interferometer
//! outputs, and the phase sensitivities they induce.
//!
//! The sensitivity of any scheme is the noise-to-slope ratio
//! Δφ = ⟨ΔÔ⟩ / |∂⟨Ô⟩/∂φ|. The scheme observables are:
//!
//! * parity — (−1)^{n̂} on output mode b; noise √(1 − ⟨Π⟩²);
//! * homodyne — the p̂ quadrature of output mode b;
//! * intensity — the total output photon number n̂_a + n̂_b.
//!
//! Parity (and intensity on vacuum input) has a 0/0 stationary point at the
//! balanced interferometer's working point; the limit there is taken either
//! from the closed form or by Richardson extrapolation.

use thiserror::Error;

use crate::gaussian::{
    cross_ladder_moments, mode_ladder_moments, GaussianError, GaussianState, Mode,
};
use crate::numerics::{self, NumericsError, DEFAULT_DIFF_STEP};
use crate::transforms::IfoSpec;

#[derive(Debug, Clone, Error)]
pub enum DetectionError {
    #[error("singular marginal covariance: det = {det:.3e}")]
    SingularMarginal { det: f64 },
    #[error("no interferometer: N_OPA must be positive, got {n_opa}")]
    NoInterferometer { n_opa: f64 },
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Measurement schemes whose sensitivity the workbench evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionScheme {
    Parity,
    Homodyne,
    Intensity,
}

impl DetectionScheme {
    pub fn name(&self) -> &'static str {
        match self {
            DetectionScheme::Parity => "parity",
            DetectionScheme::Homodyne => "homodyne",
            DetectionScheme::Intensity => "intensity",
        }
    }
}

/// Signal, noise, slope, and the resulting sensitivity at one phase.
/// `delta_phi` is `f64::INFINITY` when the signal carries no phase
/// information at this point (zero slope with finite noise).
#[derive(Debug, Clone, Copy)]
pub struct SensitivityResult {
    pub phi: f64,
    pub signal: f64,
    pub noise: f64,
    pub d_signal_d_phi: f64,
    pub delta_phi: f64,
}

/// ⟨(−1)^{n̂}⟩ of one output mode: (det Γ_m)^{−1/2} exp(−½ μᵀΓ_m⁻¹μ) over the
/// mode's marginal, the closed Gaussian evaluation of the Wigner-origin
/// parity rule.
pub fn parity_expectation(state: &GaussianState, mode: Mode) -> Result<f64, DetectionError> {
    let (mu, cov) = state.marginal(mode);
    let det = cov.determinant();
    if det < 1e-14 {
        return Err(DetectionError::SingularMarginal { det });
    }
    let rhs = crate::numerics::RealMatrix::from_fn(2, 1, |i, _| mu[i]);
    let solved = cov.solve(&rhs)?;
    let quad = mu[0] * solved[(0, 0)] + mu[1] * solved[(1, 0)];
    // det Γ_m ≥ 1 for physical states, so the exact value is ≤ 1; roundoff
    // in det can push it out by an ulp at the balanced point.
    Ok(((-0.5 * quad).exp() / det.sqrt()).min(1.0))
}

/// Closed-form SU(1,1) parity signal in the T₁, T₂, T₃ polynomial form,
/// ⟨Π̂_b⟩ = (T₁/64)^{−1/2} e^{−T₂/T₃}, for the balanced interferometer with
/// coherent ⊗ squeezed-vacuum input.
///
/// Kept as a cross-check fixture: [`parity_expectation`] on the Gaussian
/// marginal is the implementation of record. The 1/64 normalization makes the
/// amplifier-free limit exact (T₁ = 64 at g = 0, matching T₃'s +64e^{2r}
/// structure); the T₁ polynomial itself is still inconsistent with the
/// Gaussian evaluation away from φ = 0 — its cosφ coefficient would have to
/// be −32sinh²2g·cosh²2g rather than −8sinh⁴2g — and the comparison suite
/// reports every point of disagreement rather than hiding it.
pub fn parity_closed_form_su11(alpha_mag: f64, theta_alpha: f64, r: f64, g: f64, phi: f64) -> f64 {
    let (th, e2r, e4r) = (theta_alpha, (2.0 * r).exp(), (4.0 * r).exp());
    let s2g = (2.0 * g).sinh();
    let (c2g, c4g, c8g) = ((2.0 * g).cosh(), (4.0 * g).cosh(), (8.0 * g).cosh());
    let sh = (phi / 2.0).sin();
    let t1 = (-2.0 * r).exp()
        * (e2r + 1.0).powi(2)
        * (8.0 * s2g.powi(4) * ((2.0 * phi).cos() - phi.cos()) + 4.0 * c4g + 3.0 * c8g - 7.0)
        + 64.0;
    let t2 = 4.0
        * alpha_mag.powi(2)
        * s2g.powi(2)
        * (8.0 * c4g * (2.0 * th).cos() * sh.powi(4)
            - 8.0 * c2g * (2.0 * th).sin() * phi.sin() * (phi.cos() - 1.0)
            + 8.0 * e4r * (th.cos() * phi.sin() - 2.0 * c2g * th.sin() * sh.powi(2)).powi(2)
            + 32.0 * e2r * s2g.powi(2) * sh.powi(4)
            + 8.0 * c4g * sh.powi(4)
            - 8.0 * th.cos().powi(2) * phi.cos()
            + (3.0 * (2.0 * th).cos() - 1.0) * (2.0 * phi).cos()
            + (2.0 * th).cos()
            + 5.0);
    let t3 = (e2r + 1.0).powi(2)
        * (8.0 * c8g * sh.powi(4)
            + 8.0 * c4g * phi.sin().powi(2)
            + 4.0 * phi.cos()
            + 3.0 * (2.0 * phi).cos()
            - 7.0)
        + 64.0 * e2r;
    (1.0 / (t1 / 64.0).sqrt()) * (-t2 / t3).exp()
}

/// Mean and variance of the rotated quadrature cosθ·x̂ + sinθ·p̂ on one mode.
pub fn homodyne_signal(state: &GaussianState, mode: Mode, quadrature_angle: f64) -> (f64, f64) {
    let (mu, cov) = state.marginal(mode);
    let (c, s) = (quadrature_angle.cos(), quadrature_angle.sin());
    let mean = c * mu[0] + s * mu[1];
    let var = c * c * cov[(0, 0)] + 2.0 * c * s * cov[(0, 1)] + s * s * cov[(1, 1)];
    (mean, var)
}

/// Mean and variance of n̂ on one mode, from the Gaussian moment expansion
/// Var(n̂) = 2Re(m²s̄) + 2|m|²n_c + |s|² + n_c² + |m|² + n_c.
pub fn intensity_signal(state: &GaussianState, mode: Mode) -> (f64, f64) {
    let (m, n_c, s) = mode_ladder_moments(state, mode);
    let mean = m.norm_sqr() + n_c;
    let var = 2.0 * (m * m * s.conj()).re
        + 2.0 * m.norm_sqr() * n_c
        + s.norm_sqr()
        + n_c * n_c
        + m.norm_sqr()
        + n_c;
    (mean, var)
}

/// Mean and variance of the total photon number n̂_a + n̂_b, including the
/// cross-mode photon covariance.
pub fn total_intensity_signal(state: &GaussianState) -> (f64, f64) {
    let (mean_a, var_a) = intensity_signal(state, Mode::A);
    let (mean_b, var_b) = intensity_signal(state, Mode::B);
    let (ma, _, _) = mode_ladder_moments(state, Mode::A);
    let (mb, _, _) = mode_ladder_moments(state, Mode::B);
    let (dadb, dadb_dag) = cross_ladder_moments(state);
    let cov = 2.0 * (ma.conj() * mb.conj() * dadb + ma.conj() * mb * dadb_dag).re
        + dadb.norm_sqr()
        + dadb_dag.norm_sqr();
    (mean_a + mean_b, var_a + var_b + 2.0 * cov)
}

/// Signal and noise of a scheme on a concrete output state.
pub fn scheme_signal_noise(
    scheme: DetectionScheme,
    state: &GaussianState,
) -> Result<(f64, f64), DetectionError> {
    match scheme {
        DetectionScheme::Parity => {
            let p = parity_expectation(state, Mode::B)?;
            Ok((p, (1.0 - p * p).max(0.0).sqrt()))
        }
        DetectionScheme::Homodyne => {
            let (mean, var) = homodyne_signal(state, Mode::B, std::f64::consts::FRAC_PI_2);
            Ok((mean, var.max(0.0).sqrt()))
        }
        DetectionScheme::Intensity => {
            let (mean, var) = total_intensity_signal(state);
            Ok((mean, var.max(0.0).sqrt()))
        }
    }
}

/// Noise-to-slope sensitivity for an arbitrary φ ↦ state family.
pub fn sensitivity_from_family(
    scheme: DetectionScheme,
    family: impl Fn(f64) -> GaussianState,
    phi: f64,
    step: f64,
) -> Result<SensitivityResult, DetectionError> {
    let (signal, noise) = scheme_signal_noise(scheme, &family(phi))?;
    let d_signal = numerics::try_central_difference(
        |p| scheme_signal_noise(scheme, &family(p)).map(|(s, _)| s),
        phi,
        step,
    )?;
    // A vanishing noise together with a slope at the differencing noise floor
    // is the 0/0 working point, not an infinitely precise measurement.
    let stationary = d_signal.abs() < ZERO_SLOPE_TOL || (noise < 1e-6 && d_signal.abs() < 1e-4);
    let delta_phi = if stationary {
        f64::INFINITY
    } else {
        noise / d_signal.abs()
    };
    Ok(SensitivityResult {
        phi,
        signal,
        noise,
        d_signal_d_phi: d_signal,
        delta_phi,
    })
}

/// Slopes below this are treated as stationary rather than divided through.
const ZERO_SLOPE_TOL: f64 = 1e-9;

/// Phase sensitivity of a scheme on an interferometer at phase φ.
///
/// At a stationary point the division would be 0/0; the one case with an
/// exact closed-form limit — parity on the balanced SU(1,1) at φ = 0 —
/// returns that limit. Every other stationary point yields `delta_phi =
/// +∞` with the (tiny) slope reported in `d_signal_d_phi`. Use
/// [`sensitivity_limit`] to evaluate stationary limits numerically.
pub fn phase_sensitivity(
    scheme: DetectionScheme,
    spec: &IfoSpec,
    phi: f64,
) -> Result<SensitivityResult, DetectionError> {
    let result = sensitivity_from_family(scheme, |p| spec.output_at(p), phi, DEFAULT_DIFF_STEP)?;
    if result.delta_phi.is_finite() {
        return Ok(result);
    }
    if scheme == DetectionScheme::Parity && phi.abs() < 1e-12 {
        if let IfoSpec::Su11(su11) = spec {
            if su11.is_balanced() && su11.n_opa() > 0.0 {
                let n_alpha = su11.input.alpha_mag.powi(2);
                let n_s = su11.input.r.sinh().powi(2);
                let limit =
                    parity_sensitivity_phi0(n_alpha, n_s, su11.n_opa(), su11.input.theta_alpha)?;
                return Ok(SensitivityResult {
                    delta_phi: limit,
                    ..result
                });
            }
        }
    }
    Ok(result)
}

/// The φ→0 parity sensitivity of the balanced SU(1,1) interferometer,
/// Δφ = 1/√({N_α[sinh2r·cos2θ_α + cosh2r] + N_s + 1}·N_OPA(N_OPA+2)),
/// with r recovered from N_s = sinh²r.
pub fn parity_sensitivity_phi0(
    n_alpha: f64,
    n_s: f64,
    n_opa: f64,
    theta_alpha: f64,
) -> Result<f64, DetectionError> {
    if n_opa <= 0.0 {
        return Err(DetectionError::NoInterferometer { n_opa });
    }
    let r = n_s.max(0.0).sqrt().asinh();
    let input_factor =
        n_alpha * ((2.0 * r).sinh() * (2.0 * theta_alpha).cos() + (2.0 * r).cosh()) + n_s + 1.0;
    Ok(1.0 / (input_factor * n_opa * (n_opa + 2.0)).sqrt())
}

/// Numeric φ→φ₀ limit of a scheme's sensitivity at a stationary point.
///
/// For parity at a signal maximum (⟨Π⟩(φ₀) = 1) the limit is 1/√(2a) with a
/// the signal's quadratic decay coefficient, estimated by symmetric second
/// differences with two Richardson stages. Other schemes extrapolate the
/// symmetrized sensitivity itself in powers of (φ−φ₀)².
pub fn sensitivity_limit(
    scheme: DetectionScheme,
    family: impl Fn(f64) -> GaussianState,
    phi0: f64,
) -> Result<f64, DetectionError> {
    if scheme == DetectionScheme::Parity {
        let center = scheme_signal_noise(scheme, &family(phi0))?.0;
        if (center - 1.0).abs() < 1e-9 {
            let a_at = |h: f64| -> Result<f64, DetectionError> {
                let plus = scheme_signal_noise(scheme, &family(phi0 + h))?.0;
                let minus = scheme_signal_noise(scheme, &family(phi0 - h))?.0;
                Ok((2.0 - plus - minus) / (2.0 * h * h))
            };
            let h = 2e-2;
            let (a1, a2, a3) = (a_at(h)?, a_at(h / 2.0)?, a_at(h / 4.0)?);
            let r1 = (4.0 * a2 - a1) / 3.0;
            let r2 = (4.0 * a3 - a2) / 3.0;
            let a = (16.0 * r2 - r1) / 15.0;
            return Ok(1.0 / (2.0 * a).sqrt());
        }
    }
    let sens_at = |h: f64| -> Result<f64, DetectionError> {
        let plus = sensitivity_from_family(scheme, &family, phi0 + h, DEFAULT_DIFF_STEP)?;
        let minus = sensitivity_from_family(scheme, &family, phi0 - h, DEFAULT_DIFF_STEP)?;
        Ok(0.5 * (plus.delta_phi + minus.delta_phi))
    };
    let h = 1e-2;
    let (s1, s2) = (sens_at(h)?, sens_at(h / 2.0)?);
    Ok((4.0 * s2 - s1) / 3.0)
}
