//! Quantum Fisher information and the quantum Cramér-Rao bound for Gaussian
//! phase families, benchmark limits (shot-noise and Heisenberg), photon
//! accounting, the optimal coherent-amplitude coupling, and the closed-form
//! bound catalog for both interferometer types.

use num_complex::Complex64;
use thiserror::Error;

use crate::gaussian::{ComplexMoments, GaussianState};
use crate::numerics::{ComplexMatrix, NumericsError, DEFAULT_DIFF_STEP};

#[derive(Debug, Clone, Error)]
pub enum MetrologyError {
    #[error("∂Σ/∂φ is singular at φ = {phi}; retry at a shifted phase")]
    SingularDerivative { phi: f64 },
    #[error("ill-conditioned Fisher solve: condition estimate {cond:.3e}")]
    IllConditioned { cond: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Quantum Fisher information of a Gaussian phase family, evaluated from the
/// ladder-basis moments:
///
/// F = ½ Tr{∂Σ [Σ(∂Σ)⁻¹Σᵀ + ¼Ω(∂Σ)⁻¹Ωᵀ]⁻¹} + (∂d̄)ᵀ Σ⁻¹ (∂d̄).
///
/// Derivatives are central differences with step `DEFAULT_DIFF_STEP`. When
/// the covariance does not move with φ at all (coherent light through
/// passive optics) the trace term vanishes in the limit and only the
/// displacement term is returned; a ∂Σ that is nonzero but singular is
/// reported as [`MetrologyError::SingularDerivative`].
pub fn qfi_gaussian(
    family: impl Fn(f64) -> GaussianState,
    phi: f64,
) -> Result<f64, MetrologyError> {
    qfi_gaussian_with_step(family, phi, DEFAULT_DIFF_STEP)
}

pub fn qfi_gaussian_with_step(
    family: impl Fn(f64) -> GaussianState,
    phi: f64,
    step: f64,
) -> Result<f64, MetrologyError> {
    let moments = |p: f64| -> ComplexMoments { family(p).to_complex() };
    let center = moments(phi);
    let sigma = center.sigma().clone();
    let plus = moments(phi + step);
    let minus = moments(phi - step);
    let inv_2h = Complex64::new(1.0 / (2.0 * step), 0.0);
    let d_sigma = plus.sigma().sub(minus.sigma()).scale(inv_2h);
    let d_dbar: Vec<Complex64> = (0..4)
        .map(|i| (plus.dbar()[i] - minus.dbar()[i]) * inv_2h)
        .collect();

    let mut fisher = Complex64::new(0.0, 0.0);

    let dbar_moves = d_dbar.iter().any(|d| d.norm() > 1e-12);
    if dbar_moves {
        let rhs = ComplexMatrix::from_fn(4, 1, |i, _| d_dbar[i]);
        let solved = sigma.solve(&rhs)?;
        for i in 0..4 {
            fisher += d_dbar[i] * solved[(i, 0)];
        }
    }

    let scale = sigma.max_abs().max(1.0);
    if d_sigma.max_abs() > 1e-9 * scale {
        // Solve against ∂Σ instead of forming its inverse.
        let cond = d_sigma.condition_estimate();
        if !cond.is_finite() {
            return Err(MetrologyError::SingularDerivative { phi });
        }
        if cond > 1e12 {
            return Err(MetrologyError::IllConditioned { cond });
        }
        let ds_inv_sigma_t = d_sigma
            .solve(&sigma.transpose())
            .map_err(|_| MetrologyError::SingularDerivative { phi })?;
        let omega = ComplexMoments::omega();
        let ds_inv_omega_t = d_sigma
            .solve(&omega.transpose())
            .map_err(|_| MetrologyError::SingularDerivative { phi })?;
        let bracket = sigma
            .mul(&ds_inv_sigma_t)
            .add(&omega.mul(&ds_inv_omega_t).scale(Complex64::new(0.25, 0.0)));
        let bracket_cond = bracket.condition_estimate();
        if !bracket_cond.is_finite() || bracket_cond > 1e12 {
            return Err(MetrologyError::IllConditioned { cond: bracket_cond });
        }
        let solved = bracket.solve(&d_sigma)?;
        fisher += solved.trace() * Complex64::new(0.5, 0.0);
    }

    debug_assert!(
        fisher.im.abs() < 1e-6 * fisher.re.abs().max(1.0),
        "Fisher information should be real, got {fisher}"
    );
    Ok(fisher.re)
}

/// Δφ_QCRB = 1/√F.
pub fn qcrb(fisher: f64) -> Result<f64, MetrologyError> {
    if fisher <= 0.0 {
        return Err(MetrologyError::Domain(format!(
            "Fisher information must be positive, got {fisher}"
        )));
    }
    Ok(1.0 / fisher.sqrt())
}

/// Closed-form QCRB of the balanced SU(1,1) interferometer with coherent ⊗
/// squeezed-vacuum input, in the (N_α, N_s, N_OPA) parametrization.
pub fn qcrb_su11_closed(n_alpha: f64, n_s: f64, n_opa: f64) -> Result<f64, MetrologyError> {
    if n_opa <= 0.0 {
        return Err(MetrologyError::Domain(format!(
            "N_OPA must be positive, got {n_opa}"
        )));
    }
    let fisher = n_opa * (n_opa * (2.0 * n_s + 1.0) + 2.0) * (n_s + 1.0)
        + 2.0 * (n_opa + 2.0) * n_alpha * (n_opa * (n_s + (n_s * (n_s + 1.0)).sqrt() + 1.0) + 1.0);
    Ok(1.0 / fisher.sqrt())
}

/// The same bound in hyperbolic form, parametrized by the squeeze parameter r
/// instead of N_s; identical to [`qcrb_su11_closed`] under N_s = sinh²r.
pub fn qcrb_su11_hyperbolic(n_alpha: f64, r: f64, n_opa: f64) -> Result<f64, MetrologyError> {
    if n_opa <= 0.0 {
        return Err(MetrologyError::Domain(format!(
            "N_OPA must be positive, got {n_opa}"
        )));
    }
    let (ch, sh) = (r.cosh(), r.sinh());
    let fisher = 2.0 * (n_opa + 2.0) * (n_opa * (ch * ch + ch * sh) + 1.0) * n_alpha
        + n_opa * (n_opa * (ch * ch + sh * sh) + 2.0) * ch * ch;
    Ok(1.0 / fisher.sqrt())
}

/// Spontaneous photon number of one OPA on vacuum, N_OPA = 2 sinh²g.
pub fn n_opa(g: f64) -> f64 {
    2.0 * g.sinh().powi(2)
}

/// Total photon number inside the interferometer,
/// N_Tot = (N_OPA + 1)(N_α + N_s) + N_OPA.
pub fn n_total(n_alpha: f64, n_s: f64, n_opa: f64) -> f64 {
    (n_opa + 1.0) * (n_alpha + n_s) + n_opa
}

/// Heisenberg and shot-noise limits referenced to the inside photon number.
pub fn hl_snl(n_total: f64) -> Result<(f64, f64), MetrologyError> {
    if n_total <= 0.0 {
        return Err(MetrologyError::Domain(format!(
            "benchmark limits need N_Tot > 0, got {n_total}"
        )));
    }
    Ok((1.0 / n_total, 1.0 / n_total.sqrt()))
}

/// The coherent amplitude that lets parity detection track the Heisenberg
/// limit: |α₀| ≈ tanh(2g)·e^r/2.
pub fn optimal_alpha(g: f64, r: f64) -> f64 {
    (2.0 * g).tanh() * r.exp() / 2.0
}

/// Benchmark bundle for one interferometer configuration.
#[derive(Debug, Clone, Copy)]
pub struct BenchmarkSet {
    pub n_total: f64,
    pub snl: f64,
    pub hl: f64,
    pub qcrb: f64,
    pub delta_phi_detection: Option<f64>,
}

impl BenchmarkSet {
    /// Benchmarks of the balanced SU(1,1) with the canonical input.
    pub fn su11(
        g: f64,
        r: f64,
        alpha_mag: f64,
        delta_phi_detection: Option<f64>,
    ) -> Result<Self, MetrologyError> {
        let n_alpha = alpha_mag * alpha_mag;
        let n_s = r.sinh().powi(2);
        let n_pump = n_opa(g);
        let n_tot = n_total(n_alpha, n_s, n_pump);
        let (hl, snl) = hl_snl(n_tot)?;
        Ok(BenchmarkSet {
            n_total: n_tot,
            snl,
            hl,
            qcrb: qcrb_su11_closed(n_alpha, n_s, n_pump)?,
            delta_phi_detection,
        })
    }
}

/// Which interferometer a catalog entry refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interferometer {
    Su11,
    Mzi,
}

/// The four input classes the bound catalog covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Vacuum,
    OneCoherent,
    TwoCoherent,
    CoherentSqueezed,
}

impl InputKind {
    pub fn label(&self) -> &'static str {
        match self {
            InputKind::Vacuum => "vacuum",
            InputKind::OneCoherent => "one-coherent",
            InputKind::TwoCoherent => "two-coherent",
            InputKind::CoherentSqueezed => "coherent+squeezed",
        }
    }
}

/// One table cell: a closed-form value, an entry the source marks as not
/// exactly known, an uninformative scheme (constant signal, infinite Δφ),
/// or a value the source itself marks approximate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogCell {
    Value(f64),
    Nek,
    AlwaysBad,
    Approximate(f64),
}

/// Parameters a catalog row is evaluated at. `n_opa` is ignored for the MZI.
#[derive(Debug, Clone, Copy)]
pub struct CatalogParams {
    pub n_alpha: f64,
    pub n_s: f64,
    pub n_opa: f64,
}

/// QCRB and parity-detection columns of the bound tables.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub qcrb: f64,
    pub parity: CatalogCell,
}

/// Closed-form bound catalog (QCRB and parity columns) for the supported
/// interferometer/input combinations. 𝒦 = N_OPA(N_OPA + 2) throughout.
pub fn bound_catalog(
    ifo: Interferometer,
    kind: InputKind,
    params: &CatalogParams,
) -> Result<CatalogEntry, MetrologyError> {
    let CatalogParams {
        n_alpha,
        n_s,
        n_opa,
    } = *params;
    match ifo {
        Interferometer::Su11 => {
            if n_opa <= 0.0 {
                return Err(MetrologyError::Domain(format!(
                    "SU(1,1) catalog needs N_OPA > 0, got {n_opa}"
                )));
            }
            let kk = n_opa * (n_opa + 2.0);
            let r = n_s.max(0.0).sqrt().asinh();
            let entry = match kind {
                InputKind::Vacuum => CatalogEntry {
                    qcrb: 1.0 / kk.sqrt(),
                    parity: CatalogCell::Value(1.0 / kk.sqrt()),
                },
                InputKind::OneCoherent => CatalogEntry {
                    qcrb: 1.0 / (2.0 * n_alpha * (kk + n_opa + 2.0) + kk).sqrt(),
                    parity: CatalogCell::Value(1.0 / (kk * (n_alpha + 1.0)).sqrt()),
                },
                InputKind::TwoCoherent => CatalogEntry {
                    qcrb: 1.0
                        / (2.0 * n_alpha * (kk + (n_opa + 1.0) * kk.sqrt() + 1.0) + kk).sqrt(),
                    parity: CatalogCell::Nek,
                },
                InputKind::CoherentSqueezed => CatalogEntry {
                    qcrb: qcrb_su11_closed(n_alpha, n_s, n_opa)?,
                    parity: CatalogCell::Value(
                        1.0 / (kk * (n_alpha * (2.0 * r).exp() + r.cosh().powi(2))).sqrt(),
                    ),
                },
            };
            Ok(entry)
        }
        Interferometer::Mzi => {
            if n_alpha <= 0.0 {
                return Err(MetrologyError::Domain(format!(
                    "MZI catalog rows need N_α > 0, got {n_alpha}"
                )));
            }
            let r = n_s.max(0.0).sqrt().asinh();
            let entry = match kind {
                InputKind::OneCoherent => CatalogEntry {
                    qcrb: 1.0 / n_alpha.sqrt(),
                    parity: CatalogCell::Value(1.0 / n_alpha.sqrt()),
                },
                InputKind::TwoCoherent => CatalogEntry {
                    qcrb: 1.0 / n_alpha.sqrt(),
                    parity: CatalogCell::AlwaysBad,
                },
                InputKind::CoherentSqueezed => CatalogEntry {
                    qcrb: 1.0 / (n_alpha * (2.0 * r).exp() + n_s).sqrt(),
                    parity: CatalogCell::Value(1.0 / (n_alpha * (2.0 * r).exp() + n_s).sqrt()),
                },
                InputKind::Vacuum => {
                    return Err(MetrologyError::Domain(
                        "the MZI tables do not cover vacuum input".into(),
                    ))
                }
            };
            Ok(entry)
        }
    }
}

/// Parity, homodyne, and intensity sensitivity columns for the SU(1,1)
/// detection-method table.
#[derive(Debug, Clone, Copy)]
pub struct DetectionRow {
    pub parity: CatalogCell,
    pub homodyne: CatalogCell,
    pub intensity: CatalogCell,
}

pub fn detection_catalog_su11(
    kind: InputKind,
    params: &CatalogParams,
) -> Result<DetectionRow, MetrologyError> {
    let CatalogParams {
        n_alpha,
        n_s,
        n_opa,
    } = *params;
    if n_opa <= 0.0 {
        return Err(MetrologyError::Domain(format!(
            "SU(1,1) catalog needs N_OPA > 0, got {n_opa}"
        )));
    }
    let kk = n_opa * (n_opa + 2.0);
    let r = n_s.max(0.0).sqrt().asinh();
    let row = match kind {
        InputKind::Vacuum => DetectionRow {
            parity: CatalogCell::Value(1.0 / kk.sqrt()),
            homodyne: CatalogCell::AlwaysBad,
            intensity: CatalogCell::Value(1.0 / kk.sqrt()),
        },
        InputKind::OneCoherent => DetectionRow {
            parity: CatalogCell::Value(1.0 / (kk * (n_alpha + 1.0)).sqrt()),
            homodyne: CatalogCell::Value(1.0 / (kk * n_alpha).sqrt()),
            intensity: CatalogCell::Nek,
        },
        InputKind::TwoCoherent => DetectionRow {
            parity: CatalogCell::Nek,
            homodyne: CatalogCell::Approximate(1.0 / (2.0 * kk * n_alpha).sqrt()),
            intensity: CatalogCell::Value(1.0 / (kk * n_alpha).sqrt()),
        },
        InputKind::CoherentSqueezed => DetectionRow {
            parity: CatalogCell::Value(
                1.0 / (kk * (n_alpha * (2.0 * r).exp() + r.cosh().powi(2))).sqrt(),
            ),
            homodyne: CatalogCell::Value(1.0 / (kk * n_alpha * (2.0 * r).exp()).sqrt()),
            intensity: CatalogCell::Nek,
        },
    };
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::{InputParams, MziSpec, Su11Spec, TwoModeInput};

    fn su11_family(g: f64, alpha: f64, r: f64) -> impl Fn(f64) -> GaussianState {
        move |phi| {
            Su11Spec::balanced(g, phi, InputParams::coherent_squeezed(alpha, r)).output_state()
        }
    }

    #[test]
    fn qfi_vacuum_matches_pump_formula() {
        let f = qfi_gaussian(su11_family(1.0, 0.0, 0.0), 0.7).unwrap();
        let k = n_opa(1.0) * (n_opa(1.0) + 2.0);
        assert!((f - k).abs() / k < 1e-7, "F = {f}, K = {k}");
    }

    #[test]
    fn qfi_coherent_only_matches_table() {
        let f = qfi_gaussian(su11_family(1.0, 1.0, 0.0), 0.7).unwrap();
        let n = n_opa(1.0);
        let k = n * (n + 2.0);
        let want = 2.0 * (k + n + 2.0) + k; // N_α = 1
        assert!((f - want).abs() / want < 1e-7, "F = {f}, want {want}");
        assert!((want - 48.986_740_636_191_99).abs() < 1e-9);
    }

    #[test]
    fn qfi_phi_independent_for_su11() {
        let fam = su11_family(1.0, 1.0, 0.5);
        let values: Vec<f64> = [0.1, 0.7, 1.3]
            .iter()
            .map(|&p| qfi_gaussian(&fam, p).unwrap())
            .collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        for v in values {
            assert!((v - mean).abs() / mean < 1e-6);
        }
    }

    #[test]
    fn qfi_mzi_coherent_displacement_only() {
        // covariance is φ-independent; QFI must equal N_α
        let fam = |phi: f64| {
            MziSpec {
                phi,
                input: TwoModeInput::coherent(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            }
            .output_at(phi)
        };
        let f = qfi_gaussian(fam, 0.7).unwrap();
        assert!((f - 1.0).abs() < 1e-9, "F = {f}");
    }

    #[test]
    fn qcrb_examples() {
        assert!((qcrb(13.154_116_418_008_241).unwrap() - 0.275_720_564_771_783_25).abs() < 1e-12);
        assert_eq!(qcrb(1.0).unwrap(), 1.0);
        assert_eq!(qcrb(4.0).unwrap(), 0.5);
        assert!(qcrb(0.0).is_err());
    }

    #[test]
    fn closed_forms_agree_with_each_other() {
        for (na, r, g) in [(0.0f64, 0.0f64, 1.0f64), (1.0, 0.5, 0.8), (2.5, 1.2, 1.7)] {
            let n = n_opa(g);
            let ns = r.sinh().powi(2);
            let a = qcrb_su11_closed(na, ns, n).unwrap();
            let b = qcrb_su11_hyperbolic(na, r, n).unwrap();
            assert!((a - b).abs() < 1e-12 * a, "{a} vs {b}");
        }
    }

    #[test]
    fn closed_form_vacuum_reduction() {
        let n = n_opa(1.0);
        let v = qcrb_su11_closed(0.0, 0.0, n).unwrap();
        assert!((v - 1.0 / (n * (n + 2.0)).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn photon_accounting() {
        let n = n_opa(1.0);
        assert!((n - 2.762_195_691_083_631).abs() < 1e-12);
        let tot = n_total(0.0, 0.0, n);
        assert!((tot - n).abs() < 1e-15);
        let (hl, snl) = hl_snl(tot).unwrap();
        assert!((hl - 0.362_030_830_483_155_3).abs() < 1e-12, "{hl}");
        assert!((snl - 0.601_689_978_712_588_6).abs() < 1e-12, "{snl}");
        // Fig. 2(b) anchor
        let alpha = optimal_alpha(2.0, 2.0);
        let tot2 = n_total(alpha * alpha, 2.0f64.sinh().powi(2), n_opa(2.0));
        assert!((tot2 - 757.768_822_786_334).abs() < 1e-6, "{tot2}");
        assert!(hl_snl(0.0).is_err());
    }

    #[test]
    fn benchmark_set_invariants() {
        let spec_delta = parity_like_delta(1.0, 0.5, 1.0);
        let b = BenchmarkSet::su11(1.0, 0.5, 1.0, Some(spec_delta)).unwrap();
        assert!((b.hl - 1.0 / b.n_total).abs() < 1e-15);
        assert!((b.snl - 1.0 / b.n_total.sqrt()).abs() < 1e-15);
        // information inequality against the attached detection sensitivity
        assert!(b.qcrb <= b.delta_phi_detection.unwrap() + 1e-9);
        assert!(BenchmarkSet::su11(0.0, 0.0, 0.0, None).is_err());
    }

    fn parity_like_delta(g: f64, r: f64, alpha: f64) -> f64 {
        let n = n_opa(g);
        let n_s = r.sinh().powi(2);
        let input = alpha * alpha * (2.0 * r).exp() + n_s + 1.0;
        1.0 / (input * n * (n + 2.0)).sqrt()
    }

    #[test]
    fn snl_equals_hl_at_unit_photon() {
        // 2 sinh²g* = 1
        let g_star = (0.5f64).sqrt().asinh();
        assert!((g_star - 0.658_478_948_462_408_4).abs() < 1e-12);
        let (hl, snl) = hl_snl(n_total(0.0, 0.0, n_opa(g_star))).unwrap();
        assert!((hl - snl).abs() < 1e-12);
    }

    #[test]
    fn optimal_alpha_examples() {
        assert!((optimal_alpha(2.0, 2.0) - 3.692_050_128_538_524_8).abs() < 1e-12);
        assert_eq!(optimal_alpha(0.0, 1.0), 0.0);
        // g → ∞ saturates at e^r/2
        assert!((optimal_alpha(20.0, 1.0) - 1.0f64.exp() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn catalog_su11_rows() {
        let n = n_opa(1.0);
        let kk = n * (n + 2.0);
        let p = CatalogParams {
            n_alpha: 1.0,
            n_s: 0.5f64.sinh().powi(2),
            n_opa: n,
        };
        let vac = bound_catalog(Interferometer::Su11, InputKind::Vacuum, &p).unwrap();
        assert_eq!(vac.parity, CatalogCell::Value(vac.qcrb));
        assert!((vac.qcrb - 1.0 / kk.sqrt()).abs() < 1e-15);
        let two = bound_catalog(Interferometer::Su11, InputKind::TwoCoherent, &p).unwrap();
        assert_eq!(two.parity, CatalogCell::Nek);
        let want = 1.0 / (2.0 * (kk + (n + 1.0) * kk.sqrt() + 1.0) + kk).sqrt();
        assert!((two.qcrb - want).abs() < 1e-15);
    }

    #[test]
    fn catalog_mzi_rows() {
        let p = CatalogParams {
            n_alpha: 1.0,
            n_s: 0.5f64.sinh().powi(2),
            n_opa: 0.0,
        };
        let row = bound_catalog(Interferometer::Mzi, InputKind::CoherentSqueezed, &p).unwrap();
        let want = 1.0 / (1.0f64.exp() + p.n_s).sqrt();
        assert!((row.qcrb - want).abs() < 1e-15);
        assert_eq!(row.parity, CatalogCell::Value(want));
        assert!(matches!(
            bound_catalog(Interferometer::Mzi, InputKind::Vacuum, &p),
            Err(MetrologyError::Domain(_))
        ));
    }

    #[test]
    fn detection_catalog_markers() {
        let p = CatalogParams {
            n_alpha: 1.0,
            n_s: 0.0,
            n_opa: n_opa(1.0),
        };
        let vac = detection_catalog_su11(InputKind::Vacuum, &p).unwrap();
        assert_eq!(vac.homodyne, CatalogCell::AlwaysBad);
        let two = detection_catalog_su11(InputKind::TwoCoherent, &p).unwrap();
        assert!(matches!(two.homodyne, CatalogCell::Approximate(_)));
        assert_eq!(two.parity, CatalogCell::Nek);
    }
}
