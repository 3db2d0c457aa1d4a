//! Cross-validation machinery: the Gaussian-vs-Fock parity grid, the
//! closed-form parity comparison, and numeric reproduction of the bound
//! catalog. The acceptance suite and the CLI `verify`/`tables` commands both
//! run through these functions so they check exactly the same things.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::detection::{
    self, parity_closed_form_su11, parity_expectation, sensitivity_from_family, sensitivity_limit,
    DetectionError, DetectionScheme,
};
use crate::fock::{self, FockError, Observable};
use crate::gaussian::{GaussianState, Mode};
use crate::metrology::{
    bound_catalog, detection_catalog_su11, n_opa, qfi_gaussian, CatalogCell, CatalogParams,
    InputKind, Interferometer, MetrologyError,
};
use crate::numerics::DEFAULT_DIFF_STEP;
use crate::transforms::{InputParams, MziSpec, Su11Spec, TwoModeInput};

/// The standard small-photon-number acceptance grid.
pub fn default_grid() -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
    (
        vec![0.2, 0.5, 0.8],
        vec![0.0, 0.3, 0.5],
        vec![0.0, 0.5, 1.0],
        vec![0.1, 0.5, 1.0],
    )
}

#[derive(Debug, Clone)]
pub struct OracleGridPoint {
    pub g: f64,
    pub r: f64,
    pub alpha: f64,
    pub phi: f64,
    pub gaussian_parity: f64,
    pub fock_parity: f64,
    pub deviation: f64,
    pub cutoff: usize,
    pub norm_defect: f64,
}

/// Run the Gaussian-vs-Fock parity comparison over a parameter grid,
/// adaptively doubling the oracle cutoff where the boundary shells fill up.
pub fn parity_oracle_grid(
    gs: &[f64],
    rs: &[f64],
    alphas: &[f64],
    phis: &[f64],
    start_cutoff: usize,
    max_cutoff: usize,
) -> Result<Vec<OracleGridPoint>, FockError> {
    let mut points = Vec::new();
    for &g in gs {
        for &r in rs {
            for &alpha in alphas {
                for &phi in phis {
                    let spec = Su11Spec::balanced(g, phi, InputParams::coherent_squeezed(alpha, r));
                    let gaussian_parity =
                        parity_expectation(&spec.output_state(), Mode::B).expect("valid marginal");
                    let state = fock::simulate_su11_adaptive(&spec, start_cutoff, max_cutoff)?;
                    let fock_parity = fock::expectation(&state, Observable::ParityB);
                    points.push(OracleGridPoint {
                        g,
                        r,
                        alpha,
                        phi,
                        gaussian_parity,
                        fock_parity,
                        deviation: (gaussian_parity - fock_parity).abs(),
                        cutoff: state.cutoff(),
                        norm_defect: (1.0 - state.norm_sq()).abs(),
                    });
                }
            }
        }
    }
    Ok(points)
}

#[derive(Debug, Clone)]
pub struct ClosedFormPoint {
    pub g: f64,
    pub r: f64,
    pub alpha: f64,
    pub phi: f64,
    pub closed: f64,
    pub gaussian: f64,
    pub deviation: f64,
}

/// Compare the T₁/T₂/T₃ closed-form parity signal against the general
/// Gaussian evaluation over a grid. Disagreements are expected away from
/// φ = 0 (the closed form's T₁ is inconsistent there) and must be reported
/// by callers, with the Gaussian+Fock pair as the authority.
pub fn parity_closed_form_grid(
    gs: &[f64],
    rs: &[f64],
    alphas: &[f64],
    phis: &[f64],
) -> Vec<ClosedFormPoint> {
    let mut points = Vec::new();
    for &g in gs {
        for &r in rs {
            for &alpha in alphas {
                for &phi in phis {
                    let spec = Su11Spec::balanced(g, phi, InputParams::coherent_squeezed(alpha, r));
                    let gaussian =
                        parity_expectation(&spec.output_state(), Mode::B).expect("valid marginal");
                    let closed = parity_closed_form_su11(alpha, 0.0, r, g, phi);
                    points.push(ClosedFormPoint {
                        g,
                        r,
                        alpha,
                        phi,
                        closed,
                        gaussian,
                        deviation: (closed - gaussian).abs(),
                    });
                }
            }
        }
    }
    points
}

/// Out-of-band QFI evaluation that retries at shifted phases when ∂Σ happens
/// to be singular at the first choice.
pub fn qfi_with_retry(
    family: impl Fn(f64) -> GaussianState,
    phi: f64,
) -> Result<f64, MetrologyError> {
    let mut last = None;
    for shift in [0.0, 0.13, 0.29, -0.17] {
        match qfi_gaussian(&family, phi + shift) {
            Ok(f) => return Ok(f),
            Err(e @ MetrologyError::SingularDerivative { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or(MetrologyError::SingularDerivative { phi }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    /// Closed form reproduced numerically within the gate.
    Ok,
    /// Closed form missed the numeric value.
    Fail,
    /// Entry has no exact closed form; numeric reference reported only.
    Nek,
    /// Entry is explicitly approximate; compared against a loose band only.
    Approx,
    /// Scheme carries no phase information here; reported as `inf`.
    Inf,
}

#[derive(Debug, Clone)]
pub struct CellCheck {
    pub table: &'static str,
    pub row: &'static str,
    pub column: &'static str,
    pub closed: Option<f64>,
    pub numeric: Option<f64>,
    pub rel_dev: Option<f64>,
    pub status: CellStatus,
}

/// Relative gate for exact catalog cells.
pub const CELL_TOL: f64 = 1e-6;

fn cell_from_value(
    table: &'static str,
    row: &'static str,
    column: &'static str,
    closed: f64,
    numeric: f64,
) -> CellCheck {
    let rel = (closed - numeric).abs() / closed.abs().max(f64::MIN_POSITIVE);
    CellCheck {
        table,
        row,
        column,
        closed: Some(closed),
        numeric: Some(numeric),
        rel_dev: Some(rel),
        status: if rel <= CELL_TOL {
            CellStatus::Ok
        } else {
            CellStatus::Fail
        },
    }
}

/// Reference parameters the tables are evaluated at.
#[derive(Debug, Clone, Copy)]
pub struct TableParams {
    pub g: f64,
    pub alpha_mag: f64,
    pub r: f64,
}

impl Default for TableParams {
    fn default() -> Self {
        TableParams {
            g: 1.0,
            alpha_mag: 1.0,
            r: 0.5,
        }
    }
}

fn su11_family(g: f64, input: GaussianState) -> impl Fn(f64) -> GaussianState + Clone {
    move |phi: f64| {
        Su11Spec::balanced(g, phi, InputParams::vacuum())
            .transform_at(phi)
            .apply(&input)
    }
}

fn mzi_family(input: GaussianState) -> impl Fn(f64) -> GaussianState + Clone {
    move |phi: f64| MziSpec::transform_at(phi).apply(&input)
}

/// Is the scheme's signal flat in φ (no phase information at all)?
fn signal_is_flat(
    scheme: DetectionScheme,
    family: impl Fn(f64) -> GaussianState,
) -> Result<bool, DetectionError> {
    for phi in [0.4, 1.0, 1.7, 2.4] {
        let res = sensitivity_from_family(scheme, &family, phi, DEFAULT_DIFF_STEP)?;
        if res.d_signal_d_phi.abs() > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Best sensitivity over a φ scan; the numeric reference for entries with no
/// exact closed form.
fn scan_best_sensitivity(
    scheme: DetectionScheme,
    family: impl Fn(f64) -> GaussianState,
) -> Result<f64, DetectionError> {
    let mut best = f64::INFINITY;
    for k in 1..60 {
        let phi = 0.05 + (PI - 0.1) * (k as f64) / 60.0;
        let res = sensitivity_from_family(scheme, &family, phi, DEFAULT_DIFF_STEP)?;
        if res.delta_phi < best {
            best = res.delta_phi;
        }
    }
    Ok(best)
}

/// Best single-quadrature homodyne sensitivity over mode, angle, and φ.
fn scan_best_quadrature_sensitivity(
    family: impl Fn(f64) -> GaussianState,
) -> Result<f64, DetectionError> {
    let mut best = f64::INFINITY;
    for mode in [Mode::A, Mode::B] {
        for na in 0..8 {
            let angle = PI * (na as f64) / 8.0;
            for k in 1..60 {
                let phi = 0.02 + (PI - 0.04) * (k as f64) / 60.0;
                let mean_at = |p: f64| detection::homodyne_signal(&family(p), mode, angle).0;
                let (_, var) = detection::homodyne_signal(&family(phi), mode, angle);
                let slope = crate::numerics::central_difference(mean_at, phi, DEFAULT_DIFF_STEP);
                if slope.abs() > 1e-9 {
                    let dp = var.max(0.0).sqrt() / slope.abs();
                    if dp < best {
                        best = dp;
                    }
                }
            }
        }
    }
    Ok(best)
}

#[derive(Debug, thiserror::Error)]
pub enum VerificationError {
    #[error(transparent)]
    Metrology(#[from] MetrologyError),
    #[error(transparent)]
    Detection(#[from] DetectionError),
}

/// Numerically reproduce every cell of the three bound/sensitivity tables at
/// the given reference parameters.
pub fn check_table_cells(params: TableParams) -> Result<Vec<CellCheck>, VerificationError> {
    let TableParams { g, alpha_mag, r } = params;
    let n_alpha = alpha_mag * alpha_mag;
    let n_s = r.sinh().powi(2);
    let pump = n_opa(g);
    let catalog_params = CatalogParams {
        n_alpha,
        n_s,
        n_opa: pump,
    };
    let root_half = Complex64::new(alpha_mag / 2f64.sqrt(), 0.0);
    let i_root_half = Complex64::new(0.0, alpha_mag / 2f64.sqrt());
    let zero = Complex64::new(0.0, 0.0);

    let su11_input = |kind: InputKind| -> GaussianState {
        match kind {
            InputKind::Vacuum => GaussianState::vacuum(),
            InputKind::OneCoherent => GaussianState::prepare_input(alpha_mag, 0.0, 0.0, 0.0),
            // equal phases realize the tabulated Fisher information
            InputKind::TwoCoherent => GaussianState::two_mode_coherent(root_half, root_half),
            InputKind::CoherentSqueezed => GaussianState::prepare_input(alpha_mag, 0.0, r, 0.0),
        }
    };
    let mzi_input = |kind: InputKind| -> GaussianState {
        match kind {
            InputKind::OneCoherent => {
                TwoModeInput::coherent(Complex64::new(alpha_mag, 0.0), zero).state()
            }
            // equal phases are the parity-blind configuration in the
            // real beam-splitter convention used here
            InputKind::TwoCoherent => GaussianState::two_mode_coherent(root_half, root_half),
            InputKind::CoherentSqueezed => TwoModeInput {
                alpha_a: Complex64::new(alpha_mag, 0.0),
                alpha_b: zero,
                r,
                theta_s: 0.0,
            }
            .state(),
            InputKind::Vacuum => GaussianState::vacuum(),
        }
    };

    let mut cells = Vec::new();

    // ---- SU(1,1) bound table: QCRB and parity columns
    for kind in [
        InputKind::Vacuum,
        InputKind::OneCoherent,
        InputKind::TwoCoherent,
        InputKind::CoherentSqueezed,
    ] {
        let entry = bound_catalog(Interferometer::Su11, kind, &catalog_params)?;
        let family = su11_family(g, su11_input(kind));
        let fisher = qfi_with_retry(&family, 0.7)?;
        cells.push(cell_from_value(
            "su11-bounds",
            kind.label(),
            "qcrb",
            entry.qcrb,
            1.0 / fisher.sqrt(),
        ));
        match entry.parity {
            CatalogCell::Value(v) => {
                let numeric = sensitivity_limit(DetectionScheme::Parity, &family, 0.0)?;
                cells.push(cell_from_value(
                    "su11-bounds",
                    kind.label(),
                    "parity",
                    v,
                    numeric,
                ));
            }
            CatalogCell::Nek => {
                let reference = scan_best_sensitivity(DetectionScheme::Parity, &family)?;
                cells.push(CellCheck {
                    table: "su11-bounds",
                    row: kind.label(),
                    column: "parity",
                    closed: None,
                    numeric: Some(reference),
                    rel_dev: None,
                    status: CellStatus::Nek,
                });
            }
            _ => unreachable!("SU(1,1) parity column holds values or NEK"),
        }
    }

    // ---- MZI bound table
    for kind in [
        InputKind::OneCoherent,
        InputKind::TwoCoherent,
        InputKind::CoherentSqueezed,
    ] {
        let entry = bound_catalog(Interferometer::Mzi, kind, &catalog_params)?;
        let family = mzi_family(mzi_input(kind));
        let fisher = qfi_with_retry(&family, 0.7)?;
        cells.push(cell_from_value(
            "mzi-bounds",
            kind.label(),
            "qcrb",
            entry.qcrb,
            1.0 / fisher.sqrt(),
        ));
        match entry.parity {
            CatalogCell::Value(v) => {
                // the parity working point of this MZI convention is φ = π
                let numeric = sensitivity_limit(DetectionScheme::Parity, &family, PI)?;
                cells.push(cell_from_value(
                    "mzi-bounds",
                    kind.label(),
                    "parity",
                    v,
                    numeric,
                ));
            }
            CatalogCell::AlwaysBad => {
                let flat = signal_is_flat(DetectionScheme::Parity, &family)?;
                cells.push(CellCheck {
                    table: "mzi-bounds",
                    row: kind.label(),
                    column: "parity",
                    closed: None,
                    numeric: None,
                    rel_dev: None,
                    status: if flat {
                        CellStatus::Inf
                    } else {
                        CellStatus::Fail
                    },
                });
            }
            _ => unreachable!("MZI parity column holds values or always-bad"),
        }
    }

    // ---- SU(1,1) detection-method table: parity, homodyne, intensity
    for kind in [
        InputKind::Vacuum,
        InputKind::OneCoherent,
        InputKind::TwoCoherent,
        InputKind::CoherentSqueezed,
    ] {
        let row = detection_catalog_su11(kind, &catalog_params)?;
        let family = su11_family(g, su11_input(kind));
        // intensity for the two-coherent row realizes its optimum with a
        // ±π/2 relative input phase, where the fringe is linear at φ = 0
        let intensity_family = if kind == InputKind::TwoCoherent {
            su11_family(g, GaussianState::two_mode_coherent(i_root_half, root_half))
        } else {
            family.clone()
        };

        match row.parity {
            CatalogCell::Value(v) => {
                let numeric = sensitivity_limit(DetectionScheme::Parity, &family, 0.0)?;
                cells.push(cell_from_value(
                    "su11-detection",
                    kind.label(),
                    "parity",
                    v,
                    numeric,
                ));
            }
            CatalogCell::Nek => {
                let reference = scan_best_sensitivity(DetectionScheme::Parity, &family)?;
                cells.push(CellCheck {
                    table: "su11-detection",
                    row: kind.label(),
                    column: "parity",
                    closed: None,
                    numeric: Some(reference),
                    rel_dev: None,
                    status: CellStatus::Nek,
                });
            }
            _ => unreachable!(),
        }

        match row.homodyne {
            CatalogCell::Value(v) => {
                let numeric = sensitivity_from_family(
                    DetectionScheme::Homodyne,
                    &family,
                    0.0,
                    DEFAULT_DIFF_STEP,
                )?
                .delta_phi;
                cells.push(cell_from_value(
                    "su11-detection",
                    kind.label(),
                    "homodyne",
                    v,
                    numeric,
                ));
            }
            CatalogCell::AlwaysBad => {
                let flat = signal_is_flat(DetectionScheme::Homodyne, &family)?;
                cells.push(CellCheck {
                    table: "su11-detection",
                    row: kind.label(),
                    column: "homodyne",
                    closed: None,
                    numeric: None,
                    rel_dev: None,
                    status: if flat {
                        CellStatus::Inf
                    } else {
                        CellStatus::Fail
                    },
                });
            }
            CatalogCell::Approximate(v) => {
                let numeric = scan_best_quadrature_sensitivity(&family)?;
                let ratio = numeric / v;
                cells.push(CellCheck {
                    table: "su11-detection",
                    row: kind.label(),
                    column: "homodyne",
                    closed: Some(v),
                    numeric: Some(numeric),
                    rel_dev: Some((numeric - v).abs() / v),
                    status: if (0.3..=3.0).contains(&ratio) {
                        CellStatus::Approx
                    } else {
                        CellStatus::Fail
                    },
                });
            }
            CatalogCell::Nek => unreachable!(),
        }

        match row.intensity {
            CatalogCell::Value(v) => {
                let numeric = if kind == InputKind::Vacuum {
                    sensitivity_limit(DetectionScheme::Intensity, &intensity_family, 0.0)?
                } else {
                    sensitivity_from_family(
                        DetectionScheme::Intensity,
                        &intensity_family,
                        0.0,
                        DEFAULT_DIFF_STEP,
                    )?
                    .delta_phi
                };
                cells.push(cell_from_value(
                    "su11-detection",
                    kind.label(),
                    "intensity",
                    v,
                    numeric,
                ));
            }
            CatalogCell::Nek => {
                let reference =
                    scan_best_sensitivity(DetectionScheme::Intensity, &intensity_family)?;
                cells.push(CellCheck {
                    table: "su11-detection",
                    row: kind.label(),
                    column: "intensity",
                    closed: None,
                    numeric: Some(reference),
                    rel_dev: None,
                    status: CellStatus::Nek,
                });
            }
            _ => unreachable!(),
        }
    }

    Ok(cells)
}
