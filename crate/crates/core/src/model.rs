//! Material and mode parameters, and classification of the radial branches.
//!
//! Separable solutions factor through a fourth-order radial operator that
//! splits into two Helmholtz/Laplace factors. Everything downstream keys off
//! the two factor roots: their signs pick ordinary versus modified Bessel
//! radial parts, and a vanishing root collapses a factor to the Laplace
//! operator whose radial solutions are the degenerate log/power pair.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative tolerance for deciding that a factor root vanishes.
pub const DEGENERACY_RTOL: f64 = 1e-12;

/// Isotropic linear-elastic material: Lame parameters and density.
///
/// mu > 0, rho > 0 and lambda + 2 mu > 0 are enforced; lambda itself may be
/// zero or negative (auxetic-like regimes), which downstream solvers treat
/// specially where their closed forms divide by it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Material {
    lambda: f64,
    mu: f64,
    rho: f64,
}

impl Material {
    pub fn new(lambda: f64, mu: f64, rho: f64) -> Result<Self> {
        if !(lambda.is_finite() && mu.is_finite() && rho.is_finite()) {
            return Err(Error::InvalidMaterial("parameters must be finite".into()));
        }
        if mu <= 0.0 {
            return Err(Error::InvalidMaterial(format!("mu must be > 0, got {mu}")));
        }
        if rho <= 0.0 {
            return Err(Error::InvalidMaterial(format!(
                "rho must be > 0, got {rho}"
            )));
        }
        if lambda + 2.0 * mu <= 0.0 {
            return Err(Error::InvalidMaterial(format!(
                "lambda + 2 mu must be > 0, got {}",
                lambda + 2.0 * mu
            )));
        }
        Ok(Self { lambda, mu, rho })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// The P-wave modulus lambda + 2 mu.
    pub fn p_modulus(&self) -> f64 {
        self.lambda + 2.0 * self.mu
    }

    pub fn pressure_speed(&self) -> f64 {
        (self.p_modulus() / self.rho).sqrt()
    }

    pub fn shear_speed(&self) -> f64 {
        (self.mu / self.rho).sqrt()
    }
}

impl<'de> Deserialize<'de> for Material {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lambda: f64,
            mu: f64,
            rho: f64,
        }
        let raw = Raw::deserialize(d)?;
        Material::new(raw.lambda, raw.mu, raw.rho).map_err(serde::de::Error::custom)
    }
}

/// Separation constants of one solution family: axial (kappa), temporal
/// (tau, nonzero) and the angular integer order n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeParams {
    kappa: f64,
    tau: f64,
    n: u32,
}

impl ModeParams {
    pub fn new(kappa: f64, tau: f64, n: u32) -> Result<Self> {
        if !kappa.is_finite() || !tau.is_finite() {
            return Err(Error::Domain(
                "separation constants must be finite".into(),
            ));
        }
        if tau == 0.0 {
            return Err(Error::TauZero);
        }
        Ok(Self { kappa, tau, n })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

impl<'de> Deserialize<'de> for ModeParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kappa: f64,
            tau: f64,
            n: u32,
        }
        let raw = Raw::deserialize(d)?;
        ModeParams::new(raw.kappa, raw.tau, raw.n).map_err(serde::de::Error::custom)
    }
}

/// Which two-parameter radial basis a factor contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadialKind {
    /// J_n / Y_n: the factor root is negative (oscillatory radial part).
    Oscillatory,
    /// I_n / K_n: the factor root is positive (monotone radial part).
    Modified,
    /// Vanishing root: {1, ln r} for n = 0, {r^n, r^-n} otherwise.
    LaplaceDegenerate,
}

/// Everything the potential builders need to know about the two factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchDiagnostics {
    /// Radial wavenumbers alpha_s = sqrt(|kappa - rho tau / M_s|), zero in
    /// the degenerate case; M_1 = lambda + 2 mu, M_2 = mu.
    pub alpha: [f64; 2],
    pub kind: [RadialKind; 2],
    /// Coupling weights carried by the second potential: gamma_1 = 1,
    /// gamma_2 = (kappa - rho tau / mu) / kappa.
    pub gamma: [f64; 2],
    /// The two factor roots Lambda_s = -(kappa - rho tau / M_s).
    pub roots: [f64; 2],
}

/// Coefficients [a2, a1, a0] of the quadratic (in the transverse Laplacian)
/// that the coupled potential pair must annihilate:
/// a2 = mu (lambda + 2 mu),
/// a1 = 2 mu (lambda + 2 mu) kappa - (lambda + 3 mu) rho tau,
/// a0 = (mu kappa - rho tau)((lambda + 2 mu) kappa - rho tau).
pub fn quartic_coefficients(mat: &Material, mode: &ModeParams) -> [f64; 3] {
    let (lam, mu, rho) = (mat.lambda(), mat.mu(), mat.rho());
    let (kappa, tau) = (mode.kappa(), mode.tau());
    let pm = lam + 2.0 * mu;
    [
        mu * pm,
        2.0 * mu * pm * kappa - (lam + 3.0 * mu) * rho * tau,
        (mu * kappa - rho * tau) * (pm * kappa - rho * tau),
    ]
}

/// Roots of the factored operator: Lambda_- = -(kappa - rho tau/(lambda+2mu)),
/// Lambda_+ = -(kappa - rho tau/mu). Ordered as [pressure-type, shear-type].
pub fn helmholtz_roots(mat: &Material, mode: &ModeParams) -> [f64; 2] {
    [
        -(mode.kappa() - mat.rho() * mode.tau() / mat.p_modulus()),
        -(mode.kappa() - mat.rho() * mode.tau() / mat.mu()),
    ]
}

fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs())
}

/// Radial wavenumbers, kinds and coupling weights for kappa != 0.
///
/// The kind comparison is relative with tolerance [`DEGENERACY_RTOL`]:
/// kappa above the threshold rho tau / M_s gives the oscillatory pair,
/// below gives the modified pair, and within tolerance the factor
/// degenerates to the Laplace radial solutions with alpha_s = 0.
pub fn alpha_gamma(mat: &Material, mode: &ModeParams) -> Result<BranchDiagnostics> {
    if mode.kappa() == 0.0 {
        return Err(Error::KappaZero);
    }
    let roots = helmholtz_roots(mat, mode);
    let moduli = [mat.p_modulus(), mat.mu()];
    let mut alpha = [0.0; 2];
    let mut kind = [RadialKind::LaplaceDegenerate; 2];
    for s in 0..2 {
        let threshold = mat.rho() * mode.tau() / moduli[s];
        if rel_close(mode.kappa(), threshold, DEGENERACY_RTOL) {
            alpha[s] = 0.0;
            kind[s] = RadialKind::LaplaceDegenerate;
        } else {
            alpha[s] = (mode.kappa() - threshold).abs().sqrt();
            kind[s] = if mode.kappa() > threshold {
                RadialKind::Oscillatory
            } else {
                RadialKind::Modified
            };
        }
    }
    let gamma2 = if kind[1] == RadialKind::LaplaceDegenerate {
        0.0
    } else {
        (mode.kappa() - mat.rho() * mode.tau() / mat.mu()) / mode.kappa()
    };
    Ok(BranchDiagnostics {
        alpha,
        kind,
        gamma: [1.0, gamma2],
        roots,
    })
}
