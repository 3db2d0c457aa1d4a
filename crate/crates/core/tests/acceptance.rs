//! Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them all).

use num_complex::Complex64;
use su11::detection::{
    parity_sensitivity_phi0, phase_sensitivity, sensitivity_limit, DetectionScheme,
};
use su11::fock;

use su11::metrology::{
    hl_snl, n_opa, n_total, optimal_alpha, qcrb_su11_closed, qcrb_su11_hyperbolic, qfi_gaussian,
};
use su11::transforms::{
    beam_splitter, opa, phase_shifter, InputParams, MziSpec, PhasePlacement, Su11Spec,
};
use su11::verification::{
    check_table_cells, default_grid, parity_closed_form_grid, parity_oracle_grid, qfi_with_retry,
    CellStatus, TableParams,
};
use su11::IfoSpec;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {}: {} — {}",
        criterion,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| a + (b - a) * (k as f64) / ((n - 1) as f64))
        .collect()
}

fn canonical(g: f64, phi: f64, alpha: f64, r: f64) -> Su11Spec {
    Su11Spec::balanced(g, phi, InputParams::coherent_squeezed(alpha, r))
}

/// 1. Gaussian parity equals the Fock-oracle parity to 1e-6 over the
///    small-photon grid, with oracle norm leakage below 1e-10.
#[test]
fn criterion_1_oracle_parity_grid() {
    let (gs, rs, alphas, phis) = default_grid();
    let points = parity_oracle_grid(&gs, &rs, &alphas, &phis, 40, 160).expect("oracle healthy");
    let worst = points
        .iter()
        .max_by(|a, b| a.deviation.partial_cmp(&b.deviation).unwrap())
        .unwrap();
    let worst_norm = points.iter().map(|p| p.norm_defect).fold(0.0f64, f64::max);
    let pass = worst.deviation <= 1e-6 && worst_norm < 1e-10;
    report(
        "1 (oracle parity grid)",
        pass,
        &format!(
            "{} points, max |Gauss−Fock| = {:.2e} at (g={}, r={}, α={}, φ={}, cutoff={}), max norm defect {:.2e}",
            points.len(),
            worst.deviation,
            worst.g,
            worst.r,
            worst.alpha,
            worst.phi,
            worst.cutoff,
            worst_norm
        ),
    );
}

/// 2. The T₁/T₂/T₃ closed-form parity signal against the general Gaussian
///    parity on the same grid; disagreements are reported point by point with
///    both values, and at every such point the Gaussian+oracle pair must
///    agree (that pair is authoritative; the closed form's T₁ is known to be
///    inconsistent away from φ = 0).
#[test]
fn criterion_2_closed_form_comparison() {
    let (gs, rs, alphas, phis) = default_grid();
    let closed_points = parity_closed_form_grid(&gs, &rs, &alphas, &phis);
    let mut disagreements = 0usize;
    let mut unresolved = Vec::new();
    for p in &closed_points {
        if p.deviation <= 1e-10 {
            continue;
        }
        disagreements += 1;
        println!(
            "  closed-form disagreement at (g={}, r={}, α={}, φ={}): closed {:.12} vs gaussian {:.12}",
            p.g, p.r, p.alpha, p.phi, p.closed, p.gaussian
        );
        let oracle = parity_oracle_grid(&[p.g], &[p.r], &[p.alpha], &[p.phi], 40, 160)
            .expect("oracle healthy");
        if oracle[0].deviation > 1e-6 {
            unresolved.push((p.g, p.r, p.alpha, p.phi));
        }
    }
    let pass = unresolved.is_empty();
    report(
        "2 (closed-form comparison)",
        pass,
        &format!(
            "{} grid points, {} disagreements reported (T₁ inconsistency), Gaussian+oracle authoritative at every one: {}",
            closed_points.len(),
            disagreements,
            pass
        ),
    );
}

/// 3. Vacuum-input parity sensitivity: closed form, small-φ numeric limit,
///    and QCRB all coincide at g = 1 (value 1/√(N_OPA(N_OPA+2))).
#[test]
fn criterion_3_vacuum_reduction() {
    let pump = n_opa(1.0);
    let expected = 1.0 / (pump * (pump + 2.0)).sqrt();
    let closed = parity_sensitivity_phi0(0.0, 0.0, pump, 0.0).unwrap();
    let spec = canonical(1.0, 0.0, 0.0, 0.0);
    let at_zero = phase_sensitivity(DetectionScheme::Parity, &IfoSpec::Su11(spec), 0.0)
        .unwrap()
        .delta_phi;
    let numeric_limit =
        sensitivity_limit(DetectionScheme::Parity, |p| spec.output_at(p), 0.0).unwrap();
    let bound = qcrb_su11_closed(0.0, 0.0, pump).unwrap();
    let pass = (closed - expected).abs() < 1e-14
        && (closed - 0.275_720_564_771_783_2).abs() < 1e-12
        && (at_zero - closed).abs() < 1e-14
        && (numeric_limit - closed).abs() / closed < 1e-3
        && (bound - closed).abs() / closed < 1e-12;
    report(
        "3 (vacuum reduction at g=1)",
        pass,
        &format!(
            "closed {:.9}, numeric limit {:.9} (dev {:.2e}), QCRB {:.9}",
            closed,
            numeric_limit,
            (numeric_limit - closed).abs() / closed,
            bound
        ),
    );
}

/// 4. Numeric Fisher information equals the closed-form bound over the
///    (g, r, α) grid to relative 1e-6, and is φ-independent to 1e-6.
#[test]
fn criterion_4_qfi_consistency() {
    let mut worst_closed = 0.0f64;
    let mut worst_spread = 0.0f64;
    for g in [0.5, 1.0, 2.0] {
        for r in [0.0, 0.5, 1.0] {
            for alpha in [0.0, 1.0, 2.0] {
                let spec = canonical(g, 0.0, alpha, r);
                let family = |p: f64| spec.output_at(p);
                let fisher = qfi_with_retry(family, 0.7).unwrap();
                let closed = qcrb_su11_closed(alpha * alpha, r.sinh().powi(2), n_opa(g)).unwrap();
                let closed_fisher = 1.0 / (closed * closed);
                worst_closed = worst_closed.max((fisher - closed_fisher).abs() / closed_fisher);
                let mut values = Vec::new();
                for phi in [0.1, 0.7, 1.3] {
                    values.push(qfi_gaussian(family, phi).unwrap());
                }
                let mean = values.iter().sum::<f64>() / values.len() as f64;
                for v in values {
                    worst_spread = worst_spread.max((v - mean).abs() / mean);
                }
            }
        }
    }
    // the two closed forms also coincide as an algebraic identity
    let mut worst_identity = 0.0f64;
    for (alpha, r, g) in [(0.7f64, 0.4f64, 0.9f64), (2.0, 1.5, 1.3), (0.1, 2.0, 2.2)] {
        let a = qcrb_su11_closed(alpha * alpha, r.sinh().powi(2), n_opa(g)).unwrap();
        let b = qcrb_su11_hyperbolic(alpha * alpha, r, n_opa(g)).unwrap();
        worst_identity = worst_identity.max((a - b).abs() / a);
    }
    let pass = worst_closed <= 1e-6 && worst_spread <= 1e-6 && worst_identity <= 1e-12;
    report(
        "4 (QFI consistency)",
        pass,
        &format!(
            "27 configurations: max closed-form deviation {:.2e}, max φ-spread {:.2e}, closed-form identity {:.2e}",
            worst_closed, worst_spread, worst_identity
        ),
    );
}

/// 5. Every exact cell of the three tables reproduced numerically to 1e-6;
///    not-exactly-known cells are skipped with a numeric reference; the
///    uninformative homodyne/parity entries report as infinite.
#[test]
fn criterion_5_table_catalog() {
    let cells = check_table_cells(TableParams::default()).unwrap();
    let mut failed = Vec::new();
    let mut exact = 0usize;
    let mut worst = 0.0f64;
    for c in &cells {
        match c.status {
            CellStatus::Ok => {
                exact += 1;
                worst = worst.max(c.rel_dev.unwrap_or(0.0));
            }
            CellStatus::Fail => failed.push(format!("{}/{}/{}", c.table, c.row, c.column)),
            _ => {}
        }
    }
    let vacuum_homodyne_inf = cells.iter().any(|c| {
        c.table == "su11-detection"
            && c.row == "vacuum"
            && c.column == "homodyne"
            && c.status == CellStatus::Inf
    });
    let pass = failed.is_empty() && vacuum_homodyne_inf;
    report(
        "5 (table catalog)",
        pass,
        &format!(
            "{} cells: {} exact (worst rel dev {:.2e}), homodyne-on-vacuum = inf: {}, failures: {:?}",
            cells.len(),
            exact,
            worst,
            vacuum_homodyne_inf,
            failed
        ),
    );
}

/// 6. Figure-level behavior: (a) vacuum parity beats the Heisenberg limit
///    with the SNL/HL crossing at g* = arcsinh(√½); (b) the optimally coupled
///    parity sensitivity tracks the HL for g ≥ 2 at r = 2; (c) it stays below
///    the SNL across r at g = 2.
#[test]
fn criterion_6_figure_behavior() {
    // (a) vacuum input
    let mut a_ok = true;
    for g in linspace(0.1, 3.0, 100) {
        let pump = n_opa(g);
        let dp = parity_sensitivity_phi0(0.0, 0.0, pump, 0.0).unwrap();
        let (hl, _) = hl_snl(n_total(0.0, 0.0, pump)).unwrap();
        if dp >= hl {
            a_ok = false;
        }
    }
    // SNL = HL exactly where N_Tot = 1; bisect 2sinh²g = 1
    let (mut lo, mut hi) = (0.1f64, 3.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if n_total(0.0, 0.0, n_opa(mid)) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let g_star = 0.5 * (lo + hi);
    let g_star_expected = 0.658_478_948_462_408_4;
    let crossing_ok = (g_star - g_star_expected).abs() <= 1e-6;

    // (b) r = 2, optimally coupled
    let ratio_at = |g: f64| {
        let r = 2.0;
        let alpha = optimal_alpha(g, r);
        let (n_a, n_s) = (alpha * alpha, r.sinh().powi(2));
        let dp = parity_sensitivity_phi0(n_a, n_s, n_opa(g), 0.0).unwrap();
        let (hl, _) = hl_snl(n_total(n_a, n_s, n_opa(g))).unwrap();
        dp / hl
    };
    let ratio_at_2 = ratio_at(2.0);
    let mut b_ok = (ratio_at_2 - 1.0083).abs() <= 0.0005;
    for g in linspace(2.0, 3.0, 21) {
        let ratio = ratio_at(g);
        if !(0.98..=1.02).contains(&ratio) {
            b_ok = false;
        }
    }

    // (c) g = 2 across r
    let mut c_ok = true;
    for r in linspace(0.0, 3.0, 100) {
        let alpha = optimal_alpha(2.0, r);
        let (n_a, n_s) = (alpha * alpha, r.sinh().powi(2));
        let dp = parity_sensitivity_phi0(n_a, n_s, n_opa(2.0), 0.0).unwrap();
        let (_, snl) = hl_snl(n_total(n_a, n_s, n_opa(2.0))).unwrap();
        if dp >= snl {
            c_ok = false;
        }
        // information inequality alongside
        let bound = qcrb_su11_closed(n_a, n_s, n_opa(2.0)).unwrap();
        if bound > dp + 1e-9 {
            c_ok = false;
        }
    }
    let pass = a_ok && crossing_ok && b_ok && c_ok;
    report(
        "6 (figure behavior)",
        pass,
        &format!(
            "(a) parity<HL: {}, crossing g* = {:.9} (expected {:.9}); (b) ratio(g=2) = {:.5}; (c) parity<SNL across r: {}",
            a_ok, g_star, g_star_expected, ratio_at_2, c_ok
        ),
    );
}

/// 7. Balanced interferometer at φ = 0 returns every input unchanged: means
///    and covariances to 1e-12 in the Gaussian pipeline, fidelity above
///    1 − 1e-10 in the Fock oracle.
#[test]
fn criterion_7_balanced_undo() {
    let mut worst_gauss = 0.0f64;
    for g in [0.3, 0.8, 1.4] {
        for (alpha, theta, r) in [(0.0, 0.0, 0.0), (1.0, 0.7, 0.5), (0.5, 2.1, 0.3)] {
            let spec = Su11Spec::balanced(
                g,
                0.0,
                InputParams {
                    alpha_mag: alpha,
                    theta_alpha: theta,
                    r,
                    theta_s: 0.0,
                },
            );
            let input = spec.input_state();
            let output = spec.output_state();
            for i in 0..4 {
                worst_gauss = worst_gauss.max((output.mean()[i] - input.mean()[i]).abs());
                for j in 0..4 {
                    worst_gauss =
                        worst_gauss.max((output.cov()[(i, j)] - input.cov()[(i, j)]).abs());
                }
            }
        }
    }
    let mut worst_fock = 0.0f64;
    for (g, alpha, r) in [(0.5, 0.5, 0.3), (0.8, 1.0, 0.5)] {
        let spec = canonical(g, 0.0, alpha, r);
        let out = fock::simulate_su11_adaptive(&spec, 40, 160).unwrap();
        let reference = fock::prepare(Complex64::new(alpha, 0.0), r, 0.0, out.cutoff()).unwrap();
        worst_fock = worst_fock.max(1.0 - out.fidelity(&reference));
    }
    let pass = worst_gauss <= 1e-12 && worst_fock <= 1e-10;
    report(
        "7 (balanced undo)",
        pass,
        &format!(
            "max Gaussian moment deviation {:.2e}, max Fock infidelity {:.2e}",
            worst_gauss, worst_fock
        ),
    );
}

/// 8. Every emitted transform is symplectic with unit determinant to 1e-10,
///    and every propagated state on the acceptance grid satisfies the
///    uncertainty relation.
#[test]
fn criterion_8_symplectic_suite() {
    let mut worst_defect = 0.0f64;
    let mut worst_det = 0.0f64;
    let mut transforms = Vec::new();
    for g in [0.0, 0.5, 1.0, 2.0, 3.0] {
        for phi in [-2.0, 0.0, 0.7, 2.5] {
            transforms.push(opa(g, 0.0));
            transforms.push(opa(g, std::f64::consts::PI));
            transforms.push(opa(g, 1.3));
            transforms.push(phase_shifter(phi, PhasePlacement::ModeAOnly));
            transforms.push(phase_shifter(phi, PhasePlacement::BothArmsHalf));
            transforms.push(beam_splitter(std::f64::consts::FRAC_PI_4));
            transforms.push(canonical(g, phi, 0.0, 0.0).transform());
            transforms.push(MziSpec::transform_at(phi));
        }
    }
    for s in &transforms {
        worst_defect = worst_defect.max(s.symplectic_defect());
        worst_det = worst_det.max((s.determinant() - 1.0).abs());
    }
    let (gs, rs, alphas, phis) = default_grid();
    let mut worst_uncertainty = 0.0f64;
    for &g in &gs {
        for &r in &rs {
            for &alpha in &alphas {
                for &phi in &phis {
                    let out = canonical(g, phi, alpha, r).output_state();
                    worst_uncertainty = worst_uncertainty.max(-out.uncertainty_min_eigenvalue());
                    let mzi = MziSpec {
                        phi,
                        input: su11::transforms::TwoModeInput {
                            alpha_a: Complex64::new(alpha, 0.0),
                            alpha_b: Complex64::new(0.0, 0.0),
                            r,
                            theta_s: 0.0,
                        },
                    };
                    worst_uncertainty =
                        worst_uncertainty.max(-mzi.output_at(phi).uncertainty_min_eigenvalue());
                }
            }
        }
    }
    let pass = worst_defect <= 1e-10 && worst_det <= 1e-10 && worst_uncertainty <= 1e-10;
    report(
        "8 (symplectic suite)",
        pass,
        &format!(
            "{} transforms: max SJSᵀ−J defect {:.2e}, max |det−1| {:.2e}; max uncertainty violation {:.2e}",
            transforms.len(),
            worst_defect,
            worst_det,
            worst_uncertainty
        ),
    );
}
