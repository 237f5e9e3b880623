//! Finite-difference substitution checks: every assembled field must satisfy
//! the governing equations it claims to solve, and deliberately inconsistent
//! fields must be flagged. The stencil scale halves must also shrink the
//! residual at the second-order rate, which validates the checker itself.

use elastics_core::model::Material;
use elastics_core::sov::{sov_chi, AngularMode, ChiCoeffs};
use elastics_core::sweep::{random_families, standard_domain};
use elastics_core::verify::{
    chi_wave_residual, nl_residual, nl_residual_like, potential_system_residuals,
    residual_report, sample_points, DEFAULT_FD_SCALE,
};

#[test]
fn rotational_equation_holds_for_all_sign_combinations() {
    let mat = Material::new(1.6, 1.1, 0.9).unwrap();
    let coeffs = ChiCoeffs {
        radial: [0.8, 0.5],
        angular: [0.7, 0.4],
        axial: [0.9, 0.3],
        temporal: [1.0, -0.5],
    };
    for &eta_t in &[-1.3, 0.0, 1.7] {
        for &eta_z in &[-0.8, 0.0, 1.1] {
            for &eta_theta in &[-2.2, 0.0, 2.6] {
                let chi = sov_chi(&mat, eta_t, eta_z, eta_theta, &coeffs, AngularMode::Free)
                    .unwrap_or_else(|e| {
                        panic!("separation failed for ({eta_t},{eta_z},{eta_theta}): {e}")
                    });
                for &(r, th, z, t) in &[(0.9, 0.5, 0.3, 0.4), (1.4, 2.1, -0.4, 0.8)] {
                    let res =
                        chi_wave_residual(&mat, &chi, r, th, z, t, DEFAULT_FD_SCALE).unwrap();
                    assert!(
                        res < 1e-5,
                        "residual {res:e} for etas ({eta_t},{eta_z},{eta_theta}) at r={r}"
                    );
                }
            }
        }
    }
}

#[test]
fn potential_system_holds_across_the_sweep() {
    for (i, family) in random_families(18, 5).unwrap().iter().enumerate() {
        for &(r, th, z, t) in &[(1.0, 0.7, 0.25, 0.35), (1.5, 2.2, -0.4, 0.5)] {
            let res = potential_system_residuals(family, r, th, z, t, DEFAULT_FD_SCALE).unwrap();
            for (eq, value) in res.iter().enumerate() {
                assert!(
                    *value < 1e-5,
                    "family {i}, equation {eq}: residual {value:e} (mode {:?})",
                    family.mode()
                );
            }
        }
    }
}

#[test]
fn displacement_equation_holds_and_detuning_is_flagged() {
    let domain = standard_domain();
    for (i, family) in random_families(27, 12).unwrap().iter().enumerate() {
        let report = residual_report(family, &domain, 3, 1000 + i as u64, DEFAULT_FD_SCALE)
            .unwrap();
        assert!(
            report.max_direct <= 1e-5 && report.max_decomposed <= 1e-5,
            "family {i}: direct {:e}, decomposed {:e} (mode {:?})",
            report.max_direct,
            report.max_decomposed,
            family.mode()
        );

        // A smoothly modulated copy of the field solves nothing and must be
        // flagged at every sampled point scale.
        let perturbed = |r: f64, th: f64, z: f64, t: f64| {
            let u = family.displacement(r, th, z, t)?;
            let g = 1.0 + 0.05 * f64::sin(1.3 * r + 0.7 * th + 0.9 * z - 1.1 * t);
            Ok([u.u_r * g, u.u_theta * g, u.u_z * g])
        };
        let mut worst = 0.0_f64;
        for p in sample_points(&domain, 3, 1000 + i as u64).unwrap() {
            let res = nl_residual_like(family, perturbed, p[0], p[1], p[2], p[3], DEFAULT_FD_SCALE)
                .unwrap();
            worst = worst.max(res.max());
        }
        assert!(
            worst > 1e-3,
            "family {i}: modulated-field residual {worst:e} should be flagged"
        );

        // Scaling one branch of the coupled pair breaks the inter-potential
        // balance; only meaningful where the pair really is coupled.
        if family.diagnostics().coupled {
            let detuned = family.with_coupling_weight(0, 1.5);
            let report = residual_report(&detuned, &domain, 3, 1000 + i as u64, DEFAULT_FD_SCALE)
                .unwrap();
            assert!(
                report.max() > 1e-3,
                "family {i}: detuned residual {:e} should be flagged",
                report.max()
            );
        }
    }
}

#[test]
fn residual_shrinks_at_second_order_until_the_floor() {
    let family = &random_families(3, 77).unwrap()[1];
    let point = (1.1, 0.8, 0.4, 0.45);
    let mut scale = 1e-2;
    let mut prev = nl_residual(family, point.0, point.1, point.2, point.3, scale).unwrap();
    for _ in 0..5 {
        scale *= 0.5;
        let next = nl_residual(family, point.0, point.1, point.2, point.3, scale).unwrap();
        for (p, n, route) in [
            (prev.direct, next.direct, "direct"),
            (prev.decomposed, next.decomposed, "decomposed"),
        ] {
            if p < 1e-9 {
                continue; // below the floor the ratio is roundoff noise
            }
            let ratio = p / n;
            assert!(
                (3.5..=4.5).contains(&ratio),
                "{route} ratio {ratio} at scale {scale:e} (residuals {p:e} -> {n:e})"
            );
        }
        prev = next;
    }
}
