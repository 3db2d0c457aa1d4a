//! The `verify` command: run the Gaussian-vs-Fock oracle grid and report
//! pass/fail per check. Exit status is nonzero on any failure.

use anyhow::Result;
use su11::detection::parity_expectation;
use su11::fock::{self, Observable};
use su11::gaussian::Mode;
use su11::transforms::{InputParams, Su11Spec};
use su11::verification::{default_grid, parity_oracle_grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    Default,
    Extended,
}

pub struct VerifyOutcome {
    pub report: String,
    pub passed: bool,
}

pub fn run(grid: Grid) -> Result<VerifyOutcome> {
    let mut report = String::new();
    let mut passed = true;
    let mut check = |name: &str, ok: bool, detail: String| {
        report.push_str(&format!(
            "{}: {name} — {detail}\n",
            if ok { "PASS" } else { "FAIL" }
        ));
        passed &= ok;
    };

    let (gs, rs, alphas, phis) = default_grid();

    // parity agreement with adaptive cutoffs
    let points = parity_oracle_grid(&gs, &rs, &alphas, &phis, 40, 160)?;
    let worst_dev = points.iter().map(|p| p.deviation).fold(0.0f64, f64::max);
    let worst_norm = points.iter().map(|p| p.norm_defect).fold(0.0f64, f64::max);
    check(
        "oracle parity agreement",
        worst_dev <= 1e-6,
        format!(
            "{} points, max |Gauss−Fock| = {worst_dev:.3e}",
            points.len()
        ),
    );
    check(
        "oracle norm leakage",
        worst_norm < 1e-10,
        format!("max norm defect = {worst_norm:.3e}"),
    );

    // φ = 0 rows: parity exactly 1
    let mut worst_zero = 0.0f64;
    for &g in &gs {
        for &r in &rs {
            for &alpha in &alphas {
                let spec = Su11Spec::balanced(g, 0.0, InputParams::coherent_squeezed(alpha, r));
                let gauss = parity_expectation(&spec.output_state(), Mode::B)?;
                worst_zero = worst_zero.max((gauss - 1.0).abs());
                let state = fock::simulate_su11_adaptive(&spec, 40, 160)?;
                worst_zero =
                    worst_zero.max((fock::expectation(&state, Observable::ParityB) - 1.0).abs());
            }
        }
    }
    check(
        "balanced zero-phase parity = 1",
        worst_zero <= 1e-10,
        format!("max |parity − 1| = {worst_zero:.3e}"),
    );

    if grid == Grid::Extended {
        // cutoff-doubling convergence on the φ = 0.5 sub-grid
        let mut worst_shift = 0.0f64;
        for &g in &gs {
            for &r in &rs {
                for &alpha in &alphas {
                    let spec = Su11Spec::balanced(g, 0.5, InputParams::coherent_squeezed(alpha, r));
                    let base = fock::simulate_su11_adaptive(&spec, 40, 160)?;
                    let doubled = fock::simulate_su11(&spec, base.cutoff() * 2)?;
                    for obs in [Observable::ParityB, Observable::NumA, Observable::NumB] {
                        let shift = (fock::expectation(&base, obs)
                            - fock::expectation(&doubled, obs))
                        .abs();
                        worst_shift = worst_shift.max(shift);
                    }
                }
            }
        }
        check(
            "cutoff-doubling convergence",
            worst_shift < 1e-8,
            format!("max expectation shift = {worst_shift:.3e}"),
        );
    }

    Ok(VerifyOutcome { report, passed })
}
