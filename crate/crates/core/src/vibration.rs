//! Forced vibration of a solid cylinder with a standing harmonic pressure on
//! its lateral surface.
//!
//! The drive is sigma_rr(R, z, t) = A cos(w z) sin(omega t) with
//! w = 2 pi k / L, together with zero lateral shear and shear-free,
//! axially clamped ends (the latter two hold identically for the chosen
//! axial factor). The response is an axisymmetric family with axial
//! constant -w^2 and temporal constant -omega^2; the two radial branch
//! coefficients follow from a 2x2 system on the lateral boundary.
//!
//! The character of the radial branches changes with omega: each branch is
//! modified, oscillatory, or degenerate according to w^2 against
//! rho omega^2 / (lambda + 2 mu) and rho omega^2 / mu. Degeneracy of the
//! shear-type branch kills its contribution to the boundary system and no
//! forced solution exists; degeneracy of the pressure-type branch admits a
//! uniaxial closed form, plus a one-parameter freedom when the shear branch
//! sits exactly on a zero of its boundary shear factor.

use crate::error::{Error, Result};
use crate::fields::SolutionFamily;
use crate::model::{alpha_gamma, Material, ModeParams, RadialKind};
use crate::potentials::Coefficients;
use crate::specfun::{self, j1_zero, MAX_J1_ZERO};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// Absolute/relative tolerance for recognizing that the shear branch sits on
/// a zero of its boundary shear factor in the pressure-degenerate regime.
pub const RESONANCE_ATOL: f64 = 1e-9;

/// Relative determinant threshold below which the boundary system is
/// reported ill-conditioned instead of solved.
pub const CONDITION_RTOL: f64 = 1e-12;

/// Cylinder geometry, drive and material for the forced-vibration problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VibrationProblem {
    pub material: Material,
    pub radius: f64,
    pub length: f64,
    /// Number of full axial periods of the drive along the length.
    pub axial_index: u32,
    /// Drive amplitude A.
    pub amplitude: f64,
    /// Drive angular frequency omega > 0.
    pub omega: f64,
}

impl VibrationProblem {
    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::Domain(format!(
                "radius must be finite and > 0, got {}",
                self.radius
            )));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::Domain(format!(
                "length must be finite and > 0, got {}",
                self.length
            )));
        }
        if self.axial_index == 0 {
            return Err(Error::Domain("axial index must be >= 1".into()));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::Domain(format!(
                "drive frequency must be finite and > 0, got {}",
                self.omega
            )));
        }
        if !self.amplitude.is_finite() {
            return Err(Error::Domain("amplitude must be finite".into()));
        }
        Ok(())
    }

    /// w = 2 pi k / L.
    pub fn axial_wavenumber(&self) -> f64 {
        2.0 * PI * self.axial_index as f64 / self.length
    }

    /// The separation constants of the responding family.
    pub fn mode(&self) -> Result<ModeParams> {
        let w = self.axial_wavenumber();
        ModeParams::new(-w * w, -self.omega * self.omega, 0)
    }
}

/// Frequency regime of the two radial branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VibrationRegime {
    /// Both branches modified (low frequency).
    BothModified,
    /// Shear-type branch degenerate: no forced solution.
    ShearDegenerate,
    /// One branch modified, the other oscillatory.
    Mixed,
    /// Pressure-type branch degenerate: uniaxial closed form.
    PressureDegenerate,
    /// Both branches oscillatory (high frequency).
    BothOscillatory,
}

impl fmt::Display for VibrationRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VibrationRegime::BothModified => "both-modified",
            VibrationRegime::ShearDegenerate => "shear-degenerate",
            VibrationRegime::Mixed => "mixed",
            VibrationRegime::PressureDegenerate => "pressure-degenerate",
            VibrationRegime::BothOscillatory => "both-oscillatory",
        };
        f.write_str(s)
    }
}

/// The 2x2 lateral boundary system: row 0 matches the normal stress
/// amplitude, row 1 annihilates the lateral shear.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryMatrix {
    pub rows: [[f64; 2]; 2],
    pub rhs: [f64; 2],
    pub det: f64,
    /// Hadamard scale of the determinant, for conditioning checks.
    pub scale: f64,
}

/// A solved forced-vibration problem.
#[derive(Debug, Clone, Serialize)]
pub struct VibrationSolution {
    pub problem: VibrationProblem,
    pub regime: VibrationRegime,
    pub axial_wavenumber: f64,
    /// Radial coefficients of the two branches.
    pub a: [f64; 2],
    /// True when the pressure-degenerate regime carries a free shear-branch
    /// constant (its boundary shear factor vanishes).
    pub resonant: bool,
    /// The free constant actually used when `resonant`.
    pub free_constant: Option<f64>,
    /// Index of the matched zero of the shear boundary factor, if resonant.
    pub resonant_zero_index: Option<u32>,
    pub boundary: BoundaryMatrix,
    pub family: SolutionFamily,
}

/// Classify the frequency regime without solving.
pub fn classify(problem: &VibrationProblem) -> Result<VibrationRegime> {
    problem.validate()?;
    let diag = alpha_gamma(&problem.material, &problem.mode()?)?;
    Ok(regime_of(diag.kind))
}

fn regime_of(kind: [RadialKind; 2]) -> VibrationRegime {
    match kind {
        [RadialKind::LaplaceDegenerate, _] => VibrationRegime::PressureDegenerate,
        [_, RadialKind::LaplaceDegenerate] => VibrationRegime::ShearDegenerate,
        [RadialKind::Modified, RadialKind::Modified] => VibrationRegime::BothModified,
        [RadialKind::Oscillatory, RadialKind::Oscillatory] => VibrationRegime::BothOscillatory,
        _ => VibrationRegime::Mixed,
    }
}

/// Boundary-system coefficients of one branch with unit radial constant:
/// [normal-stress factor, shear factor]. The normal factor multiplies
/// cos(wz) sin(omega t) in sigma_rr at r = R; the shear factor multiplies
/// -mu w sin(wz) sin(omega t) in sigma_rz at r = R.
fn boundary_entries(
    mat: &Material,
    w2: f64,
    gamma: f64,
    kind: RadialKind,
    alpha: f64,
    radius: f64,
) -> [f64; 2] {
    let (lam, mu) = (mat.lambda(), mat.mu());
    let a2 = alpha * alpha;
    match kind {
        RadialKind::Modified => {
            let x = alpha * radius;
            let (i0, i1) = (specfun::bessel_i(0, x), specfun::bessel_i(1, x));
            [
                ((lam + 2.0 * mu) * a2 - lam * gamma * w2) * i0 - 2.0 * mu * alpha * i1 / radius,
                (1.0 + gamma) * alpha * i1,
            ]
        }
        RadialKind::Oscillatory => {
            let x = alpha * radius;
            let (j0, j1) = (specfun::j0(x), specfun::j1(x));
            [
                -((lam + 2.0 * mu) * a2 + lam * gamma * w2) * j0 + 2.0 * mu * alpha * j1 / radius,
                -(1.0 + gamma) * alpha * j1,
            ]
        }
        // Constant transverse factor: no radial motion, only the axial
        // coupling survives in the normal stress.
        RadialKind::LaplaceDegenerate => [-lam * gamma * w2, 0.0],
    }
}

fn nearest_j1_zero(x: f64) -> Option<(u32, f64)> {
    if x <= 0.0 || x.is_nan() {
        return None;
    }
    let est = (x / PI - 0.25).round();
    let mut best: Option<(u32, f64)> = None;
    for m in [est - 1.0, est, est + 1.0] {
        if m < 1.0 || m > MAX_J1_ZERO as f64 {
            continue;
        }
        let m = m as u32;
        let z = j1_zero(m).expect("zero index within range");
        if best.is_none_or(|(_, bz)| (x - z).abs() < (x - bz).abs()) {
            best = Some((m, z));
        }
    }
    best
}

fn zero_coefficients() -> Coefficients {
    Coefficients {
        angular_cos: [1.0, 1.0, 0.0],
        axial: [1.0, 0.0],
        temporal: [0.0, 1.0],
        chi_axial: [1.0, 0.0],
        chi_temporal: [0.0, 1.0],
        ..Coefficients::default()
    }
}

fn build_family(problem: &VibrationProblem, a: [f64; 2]) -> Result<SolutionFamily> {
    let mut coeffs = zero_coefficients();
    coeffs.radial_first = [a[0], a[1], 0.0];
    SolutionFamily::new(problem.material, problem.mode()?, coeffs)
}

/// Solve the forced-vibration problem. `free_constant` is consulted only in
/// the resonant pressure-degenerate subcase, where the shear branch carries
/// an arbitrary constant; `None` defaults it to radius^2.
pub fn solve(problem: &VibrationProblem, free_constant: Option<f64>) -> Result<VibrationSolution> {
    problem.validate()?;
    let mat = &problem.material;
    let mode = problem.mode()?;
    let diag = alpha_gamma(mat, &mode)?;
    let regime = regime_of(diag.kind);
    let w = problem.axial_wavenumber();
    let w2 = w * w;

    let col = |s: usize| {
        boundary_entries(
            mat,
            w2,
            diag.gamma[s],
            diag.kind[s],
            diag.alpha[s],
            problem.radius,
        )
    };
    let (c1, c2) = (col(0), col(1));
    let rows = [[c1[0], c2[0]], [c1[1], c2[1]]];
    let det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    let norm = |r: [f64; 2]| (r[0] * r[0] + r[1] * r[1]).sqrt();
    let boundary = BoundaryMatrix {
        rows,
        rhs: [problem.amplitude, 0.0],
        det,
        scale: norm(rows[0]) * norm(rows[1]),
    };

    let mut resonant = false;
    let mut used_constant = None;
    let mut zero_index = None;

    let a: [f64; 2] = match regime {
        VibrationRegime::ShearDegenerate => {
            if problem.amplitude != 0.0 {
                return Err(Error::NoSolution {
                    reason: format!(
                        "the shear-type branch is degenerate at omega = {} (w^2 = rho omega^2 / mu): \
                         the lateral shear condition forces the pressure branch to vanish, leaving \
                         nothing to carry the normal-stress drive",
                        problem.omega
                    ),
                });
            }
            [0.0, 0.0]
        }
        VibrationRegime::PressureDegenerate => {
            let lam = mat.lambda();
            if lam == 0.0 {
                return Err(Error::LambdaZeroExcluded(
                    "the pressure-degenerate closed form scales as 1/lambda; \
                     a material with lambda = 0 admits no such solution"
                        .into(),
                ));
            }
            // Shear-branch boundary shear factor: zero only for the
            // oscillatory kind, on a zero of its order-1 function.
            if diag.kind[1] == RadialKind::Oscillatory {
                let x = diag.alpha[1] * problem.radius;
                if let Some((m, z)) = nearest_j1_zero(x) {
                    if (x - z).abs() <= RESONANCE_ATOL * x.max(1.0) {
                        resonant = true;
                        zero_index = Some(m);
                    }
                }
            }
            if resonant {
                let c = free_constant.unwrap_or(problem.radius * problem.radius);
                used_constant = Some(c);
                // Normal-stress row with the shear branch pinned to c:
                // a1 * (-lambda w^2) + c * rows[0][1] = amplitude.
                let a1 = -(problem.amplitude - c * rows[0][1]) / (lam * w2);
                [a1, c]
            } else {
                [-problem.amplitude / (lam * w2), 0.0]
            }
        }
        _ => {
            if det.abs() <= CONDITION_RTOL * boundary.scale || boundary.scale == 0.0 {
                return Err(Error::IllConditioned {
                    det,
                    scale: boundary.scale,
                });
            }
            [
                problem.amplitude * rows[1][1] / det,
                -problem.amplitude * rows[1][0] / det,
            ]
        }
    };

    Ok(VibrationSolution {
        problem: *problem,
        regime,
        axial_wavenumber: w,
        a,
        resonant,
        free_constant: used_constant,
        resonant_zero_index: zero_index,
        boundary,
        family: build_family(problem, a)?,
    })
}

/// Closed-form volumetric strain in the both-modified regime:
/// sum over branches of a_s (alpha_s^2 - gamma_s w^2) I_0(alpha_s r)
/// cos(wz) sin(omega t). Independent of the strain-tensor assembly, which
/// makes it a useful cross-check.
pub fn volumetric_strain_closed_form(
    sol: &VibrationSolution,
    r: f64,
    z: f64,
    t: f64,
) -> Result<f64> {
    if sol.regime != VibrationRegime::BothModified {
        return Err(Error::Domain(format!(
            "closed-form volumetric strain applies to the both-modified regime, not {}",
            sol.regime
        )));
    }
    let diag = sol.family.diagnostics();
    let w = sol.axial_wavenumber;
    let mut perp = 0.0;
    for s in 0..2 {
        let alpha = diag.alpha[s];
        perp += sol.a[s]
            * (alpha * alpha - diag.gamma[s] * w * w)
            * specfun::bessel_i(0, alpha * r);
    }
    Ok(perp * (w * z).cos() * (sol.problem.omega * t).sin())
}

/// Worst-case boundary mismatches over a sampling grid: lateral normal
/// stress against the drive, lateral shear, and the end conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub amplitude: f64,
    pub max_lateral_normal_error: f64,
    pub max_lateral_shear: f64,
    pub max_end_axial_displacement: f64,
    pub max_end_shear: f64,
}

/// Evaluate the boundary conditions on an (nr x nz x nt) grid: the lateral
/// checks run over z and t at r = R, the end checks over r and t at
/// z in {0, L}.
pub fn boundary_report(
    sol: &VibrationSolution,
    nr: usize,
    nz: usize,
    nt: usize,
) -> Result<BoundaryReport> {
    let p = &sol.problem;
    let w = sol.axial_wavenumber;
    let lin = |lo: f64, hi: f64, count: usize| -> Vec<f64> {
        if count <= 1 {
            return vec![lo];
        }
        (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect()
    };
    let rs = lin(0.0, p.radius, nr.max(1));
    let zs = lin(0.0, p.length, nz.max(1));
    let ts = lin(0.0, 2.0 * PI / p.omega, nt.max(1));

    let mut rep = BoundaryReport {
        amplitude: p.amplitude,
        max_lateral_normal_error: 0.0,
        max_lateral_shear: 0.0,
        max_end_axial_displacement: 0.0,
        max_end_shear: 0.0,
    };
    for &z in &zs {
        for &t in &ts {
            let s = sol.family.stress(p.radius, 0.0, z, t)?;
            let drive = p.amplitude * (w * z).cos() * (p.omega * t).sin();
            rep.max_lateral_normal_error = rep.max_lateral_normal_error.max((s.rr - drive).abs());
            rep.max_lateral_shear = rep.max_lateral_shear.max(s.rz.abs());
        }
    }
    for &r in &rs {
        for &t in &ts {
            for z in [0.0, p.length] {
                let u = sol.family.displacement(r, 0.0, z, t)?;
                let s = sol.family.stress(r, 0.0, z, t)?;
                rep.max_end_axial_displacement = rep.max_end_axial_displacement.max(u.u_z.abs());
                rep.max_end_shear = rep.max_end_shear.max(s.rz.abs());
            }
        }
    }
    Ok(rep)
}
