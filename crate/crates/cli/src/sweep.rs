//! The sweep engine: grid evaluation, deterministic CSV emission, and the
//! figure presets.

use anyhow::{Context, Result};
use std::fmt::Write as _;
use std::path::Path;
use su11::Complex64;

use su11::detection::{phase_sensitivity, DetectionScheme};
use su11::metrology::{hl_snl, optimal_alpha, BenchmarkSet};
use su11::transforms::{InputParams, MziSpec, Su11Spec, TwoModeInput};
use su11::verification::qfi_with_retry;
use su11::IfoSpec;

use crate::config::{Coupling, Ifo, Scheme, SweepConfig};

/// CSV cell with 17 significant digits; infinities as the literal `inf`.
fn fmt_value(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{x:.16e}")
    }
}

struct RowResult {
    n_total: f64,
    snl: f64,
    hl: f64,
    qcrb: f64,
    delta_phi: f64,
}

fn eval_row(cfg: &SweepConfig, g: f64, r: f64, alpha: f64, phi: f64) -> Result<RowResult> {
    let n_alpha = alpha * alpha;
    let n_s = r.sinh().powi(2);
    match cfg.interferometer {
        Ifo::Su11 => {
            let spec = IfoSpec::Su11(Su11Spec::balanced(
                g,
                phi,
                InputParams::coherent_squeezed(alpha, r),
            ));
            let bench = BenchmarkSet::su11(g, r, alpha, None)?;
            let delta_phi = match cfg.scheme {
                Scheme::Qcrb => bench.qcrb,
                Scheme::Parity => phase_sensitivity(DetectionScheme::Parity, &spec, phi)?.delta_phi,
                Scheme::Homodyne => {
                    phase_sensitivity(DetectionScheme::Homodyne, &spec, phi)?.delta_phi
                }
                Scheme::Intensity => {
                    phase_sensitivity(DetectionScheme::Intensity, &spec, phi)?.delta_phi
                }
            };
            Ok(RowResult {
                n_total: bench.n_total,
                snl: bench.snl,
                hl: bench.hl,
                qcrb: bench.qcrb,
                delta_phi,
            })
        }
        Ifo::Mzi => {
            let n_tot = n_alpha + n_s;
            let (hl, snl) = hl_snl(n_tot)?;
            let input = TwoModeInput {
                alpha_a: Complex64::new(alpha, 0.0),
                alpha_b: Complex64::new(0.0, 0.0),
                r,
                theta_s: 0.0,
            };
            let fisher = qfi_with_retry(|p| MziSpec { phi: p, input }.output_at(p), 0.7)?;
            let qcrb = su11::metrology::qcrb(fisher)?;
            let spec = IfoSpec::Mzi(MziSpec { phi, input });
            let delta_phi = match cfg.scheme {
                Scheme::Qcrb => qcrb,
                Scheme::Parity => phase_sensitivity(DetectionScheme::Parity, &spec, phi)?.delta_phi,
                Scheme::Homodyne => {
                    phase_sensitivity(DetectionScheme::Homodyne, &spec, phi)?.delta_phi
                }
                Scheme::Intensity => {
                    phase_sensitivity(DetectionScheme::Intensity, &spec, phi)?.delta_phi
                }
            };
            Ok(RowResult {
                n_total: n_tot,
                snl,
                hl,
                qcrb,
                delta_phi,
            })
        }
    }
}

/// Run the sweep and return the CSV text. Grid order is lexicographic over
/// (g, r, α, φ); numerical failures land in the `error` column of their row.
pub fn run_sweep_to_string(cfg: &SweepConfig) -> String {
    let mut csv = String::new();
    writeln!(
        csv,
        "g,r,alpha_mag,phi,n_total,snl,hl,qcrb,delta_phi_{},error",
        cfg.scheme.name()
    )
    .unwrap();
    for &g in &cfg.g.values() {
        for &r in &cfg.r.values() {
            let alphas = match cfg.coupling {
                Coupling::Independent => cfg.alpha.values(),
                Coupling::OptimalAlpha => vec![optimal_alpha(g, r)],
            };
            for &alpha in &alphas {
                for &phi in &cfg.phi.values() {
                    let row = eval_row(cfg, g, r, alpha, phi);
                    match row {
                        Ok(v) => writeln!(
                            csv,
                            "{},{},{},{},{},{},{},{},{},",
                            fmt_value(g),
                            fmt_value(r),
                            fmt_value(alpha),
                            fmt_value(phi),
                            fmt_value(v.n_total),
                            fmt_value(v.snl),
                            fmt_value(v.hl),
                            fmt_value(v.qcrb),
                            fmt_value(v.delta_phi),
                        )
                        .unwrap(),
                        Err(e) => writeln!(
                            csv,
                            "{},{},{},{},nan,nan,nan,nan,nan,{}",
                            fmt_value(g),
                            fmt_value(r),
                            fmt_value(alpha),
                            fmt_value(phi),
                            e.to_string().replace(',', ";"),
                        )
                        .unwrap(),
                    }
                }
            }
        }
    }
    csv
}

/// Write the CSV plus the run-metadata sidecar (`<out>.meta.txt`).
pub fn run_sweep(cfg: &SweepConfig) -> Result<()> {
    let csv = run_sweep_to_string(cfg);
    std::fs::write(&cfg.out, csv).with_context(|| format!("writing {}", cfg.out.display()))?;
    let sidecar = sidecar_path(&cfg.out);
    let meta = format!("tool = su11 {}\n{}", env!("CARGO_PKG_VERSION"), cfg.echo());
    std::fs::write(&sidecar, meta).with_context(|| format!("writing {}", sidecar.display()))?;
    println!("wrote {} (+ {})", cfg.out.display(), sidecar.display());
    Ok(())
}

pub fn sidecar_path(out: &Path) -> std::path::PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".meta.txt");
    std::path::PathBuf::from(name)
}

/// Vacuum-input panel: sensitivity vs pump strength.
pub fn fig2a_config(out: Option<std::path::PathBuf>) -> SweepConfig {
    let mut cfg = SweepConfig {
        scheme: Scheme::Parity,
        ..SweepConfig::default()
    };
    cfg.g = crate::config::Range {
        start: 0.1,
        stop: 3.0,
        count: 100,
    };
    cfg.out = out.unwrap_or_else(|| "fig2a.csv".into());
    cfg
}

/// Strong-squeezing panel: r = 2 with the optimally coupled coherent drive.
pub fn fig2b_config(out: Option<std::path::PathBuf>) -> SweepConfig {
    let mut cfg = fig2a_config(None);
    cfg.g = crate::config::Range {
        start: 0.5,
        stop: 3.0,
        count: 100,
    };
    cfg.r = crate::config::Range::fixed(2.0);
    cfg.coupling = Coupling::OptimalAlpha;
    cfg.out = out.unwrap_or_else(|| "fig2b.csv".into());
    cfg
}

/// Squeezing sweep at fixed pump: g = 2 across r with optimal coupling.
pub fn fig2c_config(out: Option<std::path::PathBuf>) -> SweepConfig {
    let mut cfg = fig2a_config(None);
    cfg.g = crate::config::Range::fixed(2.0);
    cfg.r = crate::config::Range {
        start: 0.0,
        stop: 3.0,
        count: 100,
    };
    cfg.coupling = Coupling::OptimalAlpha;
    cfg.out = out.unwrap_or_else(|| "fig2c.csv".into());
    cfg
}
