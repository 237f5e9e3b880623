//! Grid-level checks of the forced-relaxation closed form: the uniaxial
//! displacement shape, the stress proportionalities, the end-data acceptance
//! boundary, and the invariants of the solvability surface.

use elastics_core::error::Error;
use elastics_core::model::Material;
use elastics_core::relaxation::{
    check_end_data, solvable_duration, solve, EndData, RelaxationProblem,
};

fn problem() -> RelaxationProblem {
    let mat = Material::new(2.0, 0.8, 1.1).unwrap();
    let (length, k, b, c) = (3.0, 2.0, std::f64::consts::E, 1.3);
    RelaxationProblem {
        material: mat,
        radius: 0.9,
        length,
        axial_parameter: k,
        amplitude: -0.7,
        decay_base: b,
        decay_rate: c,
        duration: solvable_duration(&mat, length, k, b, c).unwrap(),
    }
}

#[test]
fn interior_fields_match_the_closed_form_on_a_grid() {
    let p = problem();
    let sol = solve(&p).unwrap();
    let rate = sol.decay_rate_per_time;
    let ratio = p.material.p_modulus() / p.material.lambda();
    for ir in 0..6 {
        for iz in 0..5 {
            for it in 0..4 {
                let r = p.radius * ir as f64 / 5.0;
                let z = p.length * iz as f64 / 4.0;
                let t = p.duration * it as f64 / 3.0;
                let decay = (-rate * t).exp();

                let u = sol.family.displacement(r, 0.0, z, t).unwrap();
                let want_uz =
                    sol.surface_amplitude * (p.axial_parameter * z / p.length).sinh() * decay;
                let uz_scale = sol.surface_amplitude.abs();
                assert!(u.u_r.abs() <= 1e-12 * uz_scale, "u_r = {}", u.u_r);
                assert!(u.u_theta.abs() <= 1e-12 * uz_scale);
                assert!(
                    (u.u_z - want_uz).abs() <= 1e-12 * uz_scale,
                    "u_z {} vs {want_uz} at (r,z,t)=({r},{z},{t})",
                    u.u_z
                );

                let s = sol.family.stress(r, 0.0, z, t).unwrap();
                let want_rr =
                    p.amplitude * (p.axial_parameter * z / p.length).cosh() * decay;
                let s_scale = want_rr.abs().max(p.amplitude.abs());
                assert!((s.rr - want_rr).abs() <= 1e-12 * s_scale);
                assert!((s.theta_theta - s.rr).abs() <= 1e-12 * s_scale);
                assert!((s.zz - ratio * s.rr).abs() <= 1e-12 * ratio.abs() * s_scale);
                assert!(s.rz.abs() <= 1e-12 * s_scale, "sigma_rz = {}", s.rz);
            }
        }
    }
}

#[test]
fn every_end_data_kind_accepts_the_solution_and_rejects_perturbations() {
    let sol = solve(&problem()).unwrap();
    let p = &sol.problem;
    let k = p.axial_parameter;
    let ratio = p.material.p_modulus() / p.material.lambda();
    let u_upper = sol.surface_amplitude * k.sinh();
    let n_lower = ratio * p.amplitude;
    let n_upper = ratio * p.amplitude * k.cosh();

    let exact: Vec<EndData> = vec![
        EndData::Displacements {
            lower: 0.0,
            upper: u_upper,
        },
        EndData::Stresses {
            shear: 0.0,
            normal_lower: n_lower,
            normal_upper: n_upper,
        },
        EndData::NormalStresses {
            normal_lower: n_lower,
            normal_upper: n_upper,
        },
        EndData::DisplacementAndShear {
            upper: u_upper,
            shear: 0.0,
        },
    ];
    for data in &exact {
        assert!(check_end_data(&sol, data).is_ok(), "{data:?}");
    }

    // A part-per-million disturbance of any single amplitude must be caught.
    let bad: Vec<EndData> = vec![
        EndData::Displacements {
            lower: 1e-6 * u_upper,
            upper: u_upper,
        },
        EndData::Displacements {
            lower: 0.0,
            upper: u_upper * (1.0 + 1e-6),
        },
        EndData::Stresses {
            shear: 1e-6 * n_upper,
            normal_lower: n_lower,
            normal_upper: n_upper,
        },
        EndData::NormalStresses {
            normal_lower: n_lower * (1.0 - 1e-6),
            normal_upper: n_upper,
        },
        EndData::DisplacementAndShear {
            upper: u_upper,
            shear: 1e-6 * n_upper,
        },
    ];
    for data in &bad {
        assert!(
            matches!(check_end_data(&sol, data), Err(Error::IncompatibleEndData(_))),
            "{data:?} should be rejected"
        );
    }
}

#[test]
fn amplitude_per_duration_is_a_material_invariant() {
    // On the solvability surface both the surface displacement amplitude and
    // the duration grow linearly with length, so their ratio depends only on
    // material, decay and forcing: A / T = amp sqrt((lambda+2mu)/rho) / (lambda c ln b).
    let base = problem();
    let mat = base.material;
    let want = base.amplitude * (mat.p_modulus() / mat.rho()).sqrt()
        / (mat.lambda() * base.decay_rate * base.decay_base.ln());
    for length in [0.7, 1.4, 2.8, 5.6, 11.2] {
        let p = RelaxationProblem {
            length,
            duration: solvable_duration(
                &mat,
                length,
                base.axial_parameter,
                base.decay_base,
                base.decay_rate,
            )
            .unwrap(),
            ..base
        };
        let sol = solve(&p).unwrap();
        let ratio = sol.surface_amplitude / p.duration;
        assert!(
            (ratio - want).abs() <= 1e-12 * want.abs(),
            "L = {length}: ratio {ratio} vs {want}"
        );
    }
}

#[test]
fn off_surface_and_excluded_materials_are_reported() {
    for factor in [0.97, 1.03] {
        let mut p = problem();
        p.duration *= factor;
        match solve(&p) {
            Err(Error::NotClosedForm { report }) => {
                assert!(report.contains("solvability"), "{report}");
                assert!(report.contains("balancing duration"), "{report}");
            }
            other => panic!("expected NotClosedForm, got {other:?}"),
        }
    }

    // lambda < -mu keeps both moduli positive-definite combinations valid for
    // the operator but breaks the shear-branch admissibility bound.
    let mat = Material::new(-1.5, 1.0, 1.1).unwrap();
    let p = RelaxationProblem {
        material: mat,
        duration: solvable_duration(&mat, 3.0, 2.0, std::f64::consts::E, 1.3).unwrap(),
        ..problem()
    };
    match solve(&p) {
        Err(Error::NotClosedForm { report }) => {
            assert!(report.contains("admissibility"), "{report}")
        }
        other => panic!("expected NotClosedForm, got {other:?}"),
    }

    let mat = Material::new(0.0, 1.0, 1.0).unwrap();
    let p = RelaxationProblem {
        material: mat,
        duration: solvable_duration(&mat, 3.0, 2.0, std::f64::consts::E, 1.3).unwrap(),
        ..problem()
    };
    assert!(matches!(solve(&p), Err(Error::LambdaZeroExcluded(_))));
}
