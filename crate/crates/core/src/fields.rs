//! Assembly of a full solution family from its separation constants and free
//! coefficients, and evaluation of displacement, stress and strain fields.
//!
//! The displacement derives from three scalar potentials (two coupled, one
//! rotational):
//!   u_r     = d(phi)/dr + (1/r) d(chi)/d(theta)
//!   u_theta = (1/r) d(phi)/d(theta) - d(chi)/dr
//!   u_z     = d(psi)/dz
//! For nonzero axial constant the second potential shares the transverse
//! factors of the first with per-branch coupling weights; for zero axial
//! constant the pair decouples and the second potential gains an independent
//! shear-type term.

use crate::error::{Error, Result};
use crate::model::{alpha_gamma, helmholtz_roots, Material, ModeParams, RadialKind};
use crate::potentials::{
    build_axial, build_temporal, AngularFactor, Coefficients, Potential, PotentialTerm,
    RadialFactor,
};
use serde::Serialize;

/// Displacement components in cylindrical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub u_r: f64,
    pub u_theta: f64,
    pub u_z: f64,
}

/// The four stress components that survive axisymmetry (plus torsion-free
/// shear); evaluated only for angular order 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StressSample {
    pub rr: f64,
    pub theta_theta: f64,
    pub zz: f64,
    pub rz: f64,
}

/// Diagonal strain components for angular order 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrainSample {
    pub rr: f64,
    pub theta_theta: f64,
    pub zz: f64,
}

impl StrainSample {
    pub fn volumetric(&self) -> f64 {
        self.rr + self.theta_theta + self.zz
    }
}

/// Classification summary recorded with every family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyDiagnostics {
    /// True when the axial constant is nonzero and the pair is coupled.
    pub coupled: bool,
    /// Radial wavenumbers for the two transverse branches and the
    /// rotational potential (which always shares the shear branch).
    pub alpha: [f64; 3],
    pub kind: [RadialKind; 3],
    /// Weights of the two branches inside the second potential.
    pub gamma: [f64; 2],
    /// Factor roots [pressure-type, shear-type].
    pub roots: [f64; 2],
}

/// A complete separable solution of the displacement equations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionFamily {
    material: Material,
    mode: ModeParams,
    coefficients: Coefficients,
    diagnostics: FamilyDiagnostics,
    phi: Potential,
    psi: Potential,
    chi: Potential,
}

impl SolutionFamily {
    pub fn new(material: Material, mode: ModeParams, coefficients: Coefficients) -> Result<Self> {
        let n = mode.n();
        let axial = build_axial(mode.kappa(), coefficients.axial[0], coefficients.axial[1]);
        let temporal = build_temporal(mode.tau(), coefficients.temporal[0], coefficients.temporal[1])?;
        let chi_axial = build_axial(
            mode.kappa(),
            coefficients.chi_axial[0],
            coefficients.chi_axial[1],
        );
        let chi_temporal = build_temporal(
            mode.tau(),
            coefficients.chi_temporal[0],
            coefficients.chi_temporal[1],
        )?;

        let term = |kind: RadialKind, alpha: f64, idx: usize, weight: f64| -> Result<PotentialTerm> {
            Ok(PotentialTerm {
                weight,
                radial: RadialFactor::new(
                    kind,
                    n,
                    alpha,
                    coefficients.radial_first[idx],
                    coefficients.radial_second[idx],
                )?,
                angular: AngularFactor {
                    order: n,
                    c_cos: coefficients.angular_cos[idx],
                    c_sin: coefficients.angular_sin[idx],
                },
            })
        };

        let (diagnostics, phi_terms, psi_terms, chi_term) = if mode.kappa() != 0.0 {
            let d = alpha_gamma(&material, &mode)?;
            let phi_terms = vec![term(d.kind[0], d.alpha[0], 0, 1.0)?, term(d.kind[1], d.alpha[1], 1, 1.0)?];
            let psi_terms = vec![
                term(d.kind[0], d.alpha[0], 0, d.gamma[0])?,
                term(d.kind[1], d.alpha[1], 1, d.gamma[1])?,
            ];
            let chi_term = term(d.kind[1], d.alpha[1], 2, 1.0)?;
            let diag = FamilyDiagnostics {
                coupled: true,
                alpha: [d.alpha[0], d.alpha[1], d.alpha[1]],
                kind: [d.kind[0], d.kind[1], d.kind[1]],
                gamma: d.gamma,
                roots: d.roots,
            };
            (diag, phi_terms, psi_terms, chi_term)
        } else {
            // Decoupled branch: the first potential carries the pressure-type
            // factor alone, the second adds an independent shear-type term,
            // and there are no coupling weights.
            let roots = helmholtz_roots(&material, &mode);
            let classify = |root: f64| -> (RadialKind, f64) {
                if root < 0.0 {
                    (RadialKind::Oscillatory, (-root).sqrt())
                } else {
                    (RadialKind::Modified, root.sqrt())
                }
            };
            let (kind1, alpha1) = classify(roots[0]);
            let (kind2, alpha2) = classify(roots[1]);
            let phi_terms = vec![term(kind1, alpha1, 0, 1.0)?];
            let psi_terms = vec![term(kind1, alpha1, 0, 1.0)?, term(kind2, alpha2, 1, 1.0)?];
            let chi_term = term(kind2, alpha2, 2, 1.0)?;
            let diag = FamilyDiagnostics {
                coupled: false,
                alpha: [alpha1, alpha2, alpha2],
                kind: [kind1, kind2, kind2],
                gamma: [1.0, 1.0],
                roots,
            };
            (diag, phi_terms, psi_terms, chi_term)
        };

        Ok(Self {
            material,
            mode,
            coefficients,
            diagnostics,
            phi: Potential {
                terms: phi_terms,
                axial,
                temporal,
            },
            psi: Potential {
                terms: psi_terms,
                axial,
                temporal,
            },
            chi: Potential {
                terms: vec![chi_term],
                axial: chi_axial,
                temporal: chi_temporal,
            },
        })
    }

    pub fn material(&self) -> &Material {
        &self.material
    }

    pub fn mode(&self) -> &ModeParams {
        &self.mode
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn diagnostics(&self) -> &FamilyDiagnostics {
        &self.diagnostics
    }

    pub fn phi(&self) -> &Potential {
        &self.phi
    }

    pub fn psi(&self) -> &Potential {
        &self.psi
    }

    pub fn chi(&self) -> &Potential {
        &self.chi
    }

    pub fn finite_at_axis(&self) -> bool {
        self.phi.finite_at_axis() && self.psi.finite_at_axis() && self.chi.finite_at_axis()
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::Domain(format!("radius must be finite and >= 0, got {r}")));
        }
        if r == 0.0 && !self.finite_at_axis() {
            return Err(Error::AxisSingularity);
        }
        Ok(())
    }

    pub fn displacement(&self, r: f64, theta: f64, z: f64, t: f64) -> Result<FieldSample> {
        self.check_radius(r)?;
        Ok(FieldSample {
            u_r: self.phi.d_r(r, theta, z, t) + self.chi.d_theta_over_r(r, theta, z, t),
            u_theta: self.phi.d_theta_over_r(r, theta, z, t) - self.chi.d_r(r, theta, z, t),
            u_z: self.psi.d_z(r, theta, z, t),
        })
    }

    fn require_axisymmetric(&self) -> Result<()> {
        if self.mode.n() != 0 {
            return Err(Error::NotAxisymmetric { n: self.mode.n() });
        }
        Ok(())
    }

    /// Stress components for angular order 0. The rotational potential can
    /// still carry a torsional motion; it does not enter these components.
    pub fn stress(&self, r: f64, theta: f64, z: f64, t: f64) -> Result<StressSample> {
        self.require_axisymmetric()?;
        self.check_radius(r)?;
        let (lam, mu) = (self.material.lambda(), self.material.mu());
        let du_r_dr = self.phi.d_rr(r, theta, z, t);
        let u_r_over_r = self.phi.d_r_over_r(r, theta, z, t);
        let du_z_dz = self.psi.d_zz(r, theta, z, t);
        let du_r_dz = self.phi.d_rz(r, theta, z, t);
        let du_z_dr = self.psi.d_rz(r, theta, z, t);
        let pm = lam + 2.0 * mu;
        Ok(StressSample {
            rr: pm * du_r_dr + lam * u_r_over_r + lam * du_z_dz,
            theta_theta: lam * du_r_dr + pm * u_r_over_r + lam * du_z_dz,
            zz: lam * du_r_dr + lam * u_r_over_r + pm * du_z_dz,
            rz: mu * (du_r_dz + du_z_dr),
        })
    }

    /// Diagonal strain components for angular order 0; the hoop strain uses
    /// its exact axis limit at r = 0.
    pub fn strain(&self, r: f64, theta: f64, z: f64, t: f64) -> Result<StrainSample> {
        self.require_axisymmetric()?;
        self.check_radius(r)?;
        Ok(StrainSample {
            rr: self.phi.d_rr(r, theta, z, t),
            theta_theta: self.phi.d_r_over_r(r, theta, z, t),
            zz: self.psi.d_zz(r, theta, z, t),
        })
    }

    pub fn volumetric_strain(&self, r: f64, theta: f64, z: f64, t: f64) -> Result<f64> {
        Ok(self.strain(r, theta, z, t)?.volumetric())
    }

    /// Copy of this family with the weight of branch `s` inside the second
    /// potential replaced. The assembled weights are the only ones
    /// compatible with the governing equations, so any other value yields a
    /// deliberately inconsistent field; residual checks must flag it.
    pub fn with_coupling_weight(&self, s: usize, weight: f64) -> SolutionFamily {
        let mut out = self.clone();
        if let Some(term) = out.psi.terms.get_mut(s) {
            term.weight = weight;
        }
        out.diagnostics.gamma[s.min(1)] = weight;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn material() -> Material {
        Material::new(1.4, 0.8, 1.2).unwrap()
    }

    fn coeffs_full() -> Coefficients {
        Coefficients {
            radial_first: [0.9, -0.6, 0.4],
            radial_second: [0.3, 0.2, -0.5],
            angular_cos: [1.0, 0.7, 0.5],
            angular_sin: [-0.2, 0.4, 1.1],
            axial: [0.8, 0.3],
            temporal: [1.0, -0.6],
            chi_axial: [0.5, -0.9],
            chi_temporal: [0.7, 0.2],
        }
    }

    #[test]
    fn displacement_matches_potential_gradients() {
        let mode = ModeParams::new(0.9, -1.3, 2).unwrap();
        let fam = SolutionFamily::new(material(), mode, coeffs_full()).unwrap();
        let (r, th, z, t) = (1.15, 0.7, 0.4, 0.9);
        let h = 1e-6;
        let u = fam.displacement(r, th, z, t).unwrap();

        let phi = |r: f64, th: f64, z: f64, t: f64| fam.phi().value(r, th, z, t);
        let psi = |r: f64, th: f64, z: f64, t: f64| fam.psi().value(r, th, z, t);
        let chi = |r: f64, th: f64, z: f64, t: f64| fam.chi().value(r, th, z, t);

        let ur_fd = (phi(r + h, th, z, t) - phi(r - h, th, z, t)) / (2.0 * h)
            + (chi(r, th + h, z, t) - chi(r, th - h, z, t)) / (2.0 * h * r);
        let ut_fd = (phi(r, th + h, z, t) - phi(r, th - h, z, t)) / (2.0 * h * r)
            - (chi(r + h, th, z, t) - chi(r - h, th, z, t)) / (2.0 * h);
        let uz_fd = (psi(r, th, z + h, t) - psi(r, th, z - h, t)) / (2.0 * h);

        assert!((u.u_r - ur_fd).abs() < 1e-8 * (1.0 + ur_fd.abs()), "u_r");
        assert!((u.u_theta - ut_fd).abs() < 1e-8 * (1.0 + ut_fd.abs()), "u_theta");
        assert!((u.u_z - uz_fd).abs() < 1e-8 * (1.0 + uz_fd.abs()), "u_z");
    }

    #[test]
    fn stress_matches_displacement_gradients() {
        let mode = ModeParams::new(-0.8, -1.1, 0).unwrap();
        let fam = SolutionFamily::new(material(), mode, coeffs_full()).unwrap();
        let (r, th, z, t) = (0.9, 0.0, 0.6, 0.5);
        let h = 1e-6;
        let s = fam.stress(r, th, z, t).unwrap();
        let u = |r: f64, z: f64| fam.displacement(r, th, z, t).unwrap();

        let du_r_dr = (u(r + h, z).u_r - u(r - h, z).u_r) / (2.0 * h);
        let u_r_over_r = u(r, z).u_r / r;
        let du_z_dz = (u(r, z + h).u_z - u(r, z - h).u_z) / (2.0 * h);
        let du_r_dz = (u(r, z + h).u_r - u(r, z - h).u_r) / (2.0 * h);
        let du_z_dr = (u(r + h, z).u_z - u(r - h, z).u_z) / (2.0 * h);

        let (lam, mu) = (material().lambda(), material().mu());
        let pm = lam + 2.0 * mu;
        let rr = pm * du_r_dr + lam * u_r_over_r + lam * du_z_dz;
        let tt = lam * du_r_dr + pm * u_r_over_r + lam * du_z_dz;
        let zz = lam * du_r_dr + lam * u_r_over_r + pm * du_z_dz;
        let rz = mu * (du_r_dz + du_z_dr);

        for (got, want, name) in [
            (s.rr, rr, "rr"),
            (s.theta_theta, tt, "tt"),
            (s.zz, zz, "zz"),
            (s.rz, rz, "rz"),
        ] {
            assert!((got - want).abs() < 1e-7 * (1.0 + want.abs()), "{name}");
        }
    }

    #[test]
    fn axis_limits_and_singularities() {
        let mode = ModeParams::new(-0.8, -1.1, 0).unwrap();
        // Regular family: no second-kind radial parts.
        let mut c = coeffs_full();
        c.radial_second = [0.0; 3];
        let fam = SolutionFamily::new(material(), mode, c).unwrap();
        assert!(fam.finite_at_axis());
        let s0 = fam.strain(0.0, 0.0, 0.4, 0.7).unwrap();
        assert!(
            (s0.rr - s0.theta_theta).abs() < 1e-14 * (1.0 + s0.rr.abs()),
            "hoop strain must equal radial strain on the axis"
        );
        let near = fam.strain(1e-6, 0.0, 0.4, 0.7).unwrap();
        assert!((s0.theta_theta - near.theta_theta).abs() < 1e-6 * (1.0 + s0.theta_theta.abs()));

        // Singular family errors at the axis but evaluates off it.
        let fam = SolutionFamily::new(material(), mode, coeffs_full()).unwrap();
        assert!(matches!(
            fam.displacement(0.0, 0.0, 0.4, 0.7),
            Err(Error::AxisSingularity)
        ));
        assert!(fam.displacement(0.5, 0.0, 0.4, 0.7).is_ok());
    }

    #[test]
    fn decoupled_branch_assembles_independent_shear_term() {
        let mode = ModeParams::new(0.0, -1.5, 0).unwrap();
        let fam = SolutionFamily::new(material(), mode, coeffs_full()).unwrap();
        let d = fam.diagnostics();
        assert!(!d.coupled);
        // Negative roots (tau < 0) give oscillatory kinds at
        // alpha = sqrt(rho |tau| / modulus).
        assert_eq!(d.kind[0], RadialKind::Oscillatory);
        assert_eq!(d.kind[1], RadialKind::Oscillatory);
        let m = material();
        assert!((d.alpha[0] - (m.rho() * 1.5 / m.p_modulus()).sqrt()).abs() < 1e-15);
        assert!((d.alpha[1] - (m.rho() * 1.5 / m.mu()).sqrt()).abs() < 1e-15);
        assert_eq!(fam.phi().terms.len(), 1);
        assert_eq!(fam.psi().terms.len(), 2);

        // Positive tau flips both kinds to modified.
        let mode = ModeParams::new(0.0, 2.0, 0).unwrap();
        let fam = SolutionFamily::new(material(), mode, coeffs_full()).unwrap();
        assert_eq!(fam.diagnostics().kind[0], RadialKind::Modified);
        assert_eq!(fam.diagnostics().kind[1], RadialKind::Modified);
    }

    #[test]
    fn stress_requires_axisymmetry() {
        let mode = ModeParams::new(0.9, -1.3, 2).unwrap();
        let fam = SolutionFamily::new(material(), mode, coeffs_full()).unwrap();
        assert!(matches!(
            fam.stress(1.0, 0.0, 0.0, 0.0),
            Err(Error::NotAxisymmetric { n: 2 })
        ));
        assert!(matches!(
            fam.strain(1.0, 0.0, 0.0, 0.0),
            Err(Error::NotAxisymmetric { n: 2 })
        ));
    }

    #[test]
    fn volumetric_strain_matches_divergence() {
        let mode = ModeParams::new(-0.8, -1.1, 0).unwrap();
        let fam = SolutionFamily::new(material(), mode, coeffs_full()).unwrap();
        let (r, z, t) = (1.2, 0.5, 0.8);
        let h = 1e-6;
        let u = |r: f64, z: f64| fam.displacement(r, 0.0, z, t).unwrap();
        let div = (u(r + h, z).u_r - u(r - h, z).u_r) / (2.0 * h)
            + u(r, z).u_r / r
            + (u(r, z + h).u_z - u(r, z - h).u_z) / (2.0 * h);
        let got = fam.volumetric_strain(r, 0.0, z, t).unwrap();
        assert!((got - div).abs() < 1e-7 * (1.0 + div.abs()));
    }
}
