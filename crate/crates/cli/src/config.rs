//! Run configuration: one file per invocation, TOML primary with JSON
//! accepted, split into tables so the same file can drive several
//! subcommands.

use anyhow::{bail, Context, Result};
use elastics_core::model::Material;
use elastics_core::potentials::Coefficients;
use elastics_core::relaxation::{solvable_duration, EndData, RelaxationProblem};
use elastics_core::sov::{AngularMode, ChiCoeffs};
use elastics_core::vibration::VibrationProblem;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub material: Option<MaterialConfig>,
    pub vibration: Option<VibrationConfig>,
    pub relaxation: Option<RelaxationConfig>,
    pub family: Option<FamilyConfig>,
    pub sov_chi: Option<SovChiConfig>,
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub verify: VerifySettings,
    pub sweep: Option<SweepConfig>,
}

/// Parse a config file; the extension (or a leading brace) selects JSON,
/// anything else is read as TOML.
pub fn load(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let looks_json = path.extension().is_some_and(|e| e == "json")
        || text.trim_start().starts_with('{');
    if looks_json {
        serde_json::from_str(&text)
            .with_context(|| format!("invalid JSON config {}", path.display()))
    } else {
        toml::from_str(&text)
            .with_context(|| format!("invalid TOML config {}", path.display()))
    }
}

impl RunConfig {
    pub fn material(&self) -> Result<Material> {
        let m = self
            .material
            .as_ref()
            .context("config needs a [material] table with lambda, mu, rho")?;
        Ok(Material::new(m.lambda, m.mu, m.rho)?)
    }

    pub fn vibration(&self) -> Result<&VibrationConfig> {
        self.vibration
            .as_ref()
            .context("config needs a [vibration] table")
    }

    pub fn relaxation(&self) -> Result<&RelaxationConfig> {
        self.relaxation
            .as_ref()
            .context("config needs a [relaxation] table")
    }

    pub fn family(&self) -> Result<&FamilyConfig> {
        self.family.as_ref().context("config needs a [family] table")
    }

    pub fn sov_chi(&self) -> Result<&SovChiConfig> {
        self.sov_chi
            .as_ref()
            .context("config needs a [sov_chi] table")
    }

    pub fn grid(&self) -> Result<&GridConfig> {
        self.grid
            .as_ref()
            .context("config needs a [grid] table with r, theta, z, t axes")
    }

    pub fn sweep(&self) -> Result<&SweepConfig> {
        self.sweep.as_ref().context("config needs a [sweep] table")
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    pub lambda: f64,
    pub mu: f64,
    pub rho: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VibrationConfig {
    pub radius: f64,
    pub length: f64,
    pub axial_index: u32,
    pub amplitude: f64,
    /// Angular frequency; exactly one of `omega` / `omega_squared`.
    pub omega: Option<f64>,
    pub omega_squared: Option<f64>,
    /// Free shear-branch constant for the resonant subcase.
    pub free_constant: Option<f64>,
}

impl VibrationConfig {
    pub fn to_problem(&self, material: Material) -> Result<VibrationProblem> {
        let omega = match (self.omega, self.omega_squared) {
            (Some(w), None) => w,
            (None, Some(w2)) => {
                if !(w2.is_finite() && w2 > 0.0) {
                    bail!("omega_squared must be finite and > 0, got {w2}");
                }
                w2.sqrt()
            }
            (Some(_), Some(_)) => bail!("give either omega or omega_squared, not both"),
            (None, None) => bail!("the [vibration] table needs omega or omega_squared"),
        };
        Ok(VibrationProblem {
            material,
            radius: self.radius,
            length: self.length,
            axial_index: self.axial_index,
            amplitude: self.amplitude,
            omega,
        })
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelaxationConfig {
    pub radius: f64,
    pub length: f64,
    pub axial_parameter: f64,
    pub amplitude: f64,
    pub decay_base: f64,
    pub decay_rate: f64,
    /// Process duration; omitted means the balancing duration for which the
    /// closed form exists.
    pub duration: Option<f64>,
    /// Prescribed end conditions to check against the interior solution.
    pub end_data: Option<EndData>,
}

impl RelaxationConfig {
    pub fn to_problem(&self, material: Material) -> Result<RelaxationProblem> {
        let duration = match self.duration {
            Some(t) => t,
            None => solvable_duration(
                &material,
                self.length,
                self.axial_parameter,
                self.decay_base,
                self.decay_rate,
            )?,
        };
        Ok(RelaxationProblem {
            material,
            radius: self.radius,
            length: self.length,
            axial_parameter: self.axial_parameter,
            amplitude: self.amplitude,
            decay_base: self.decay_base,
            decay_rate: self.decay_rate,
            duration,
        })
    }
}

/// Coefficient block with every slot defaulting to zero so configs only
/// spell out the terms they use.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CoefficientsConfig {
    pub radial_first: [f64; 3],
    pub radial_second: [f64; 3],
    pub angular_cos: [f64; 3],
    pub angular_sin: [f64; 3],
    pub axial: [f64; 2],
    pub temporal: [f64; 2],
    pub chi_axial: [f64; 2],
    pub chi_temporal: [f64; 2],
}

impl From<CoefficientsConfig> for Coefficients {
    fn from(c: CoefficientsConfig) -> Self {
        Coefficients {
            radial_first: c.radial_first,
            radial_second: c.radial_second,
            angular_cos: c.angular_cos,
            angular_sin: c.angular_sin,
            axial: c.axial,
            temporal: c.temporal,
            chi_axial: c.chi_axial,
            chi_temporal: c.chi_temporal,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub kappa: f64,
    pub tau: f64,
    #[serde(default)]
    pub angular_order: u32,
    #[serde(default)]
    pub coefficients: CoefficientsConfig,
    /// Per-branch scaling of the second potential's coupling weights;
    /// anything other than 1.0 detunes the family off the solution manifold.
    pub coupling_weights: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum AngularModeConfig {
    Periodic,
    Free,
}

impl From<AngularModeConfig> for AngularMode {
    fn from(m: AngularModeConfig) -> Self {
        match m {
            AngularModeConfig::Periodic => AngularMode::Periodic,
            AngularModeConfig::Free => AngularMode::Free,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChiCoeffsConfig {
    pub radial: [f64; 2],
    pub angular: [f64; 2],
    pub axial: [f64; 2],
    pub temporal: [f64; 2],
}

impl From<ChiCoeffsConfig> for ChiCoeffs {
    fn from(c: ChiCoeffsConfig) -> Self {
        ChiCoeffs {
            radial: c.radial,
            angular: c.angular,
            axial: c.axial,
            temporal: c.temporal,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SovChiConfig {
    pub eta_t: f64,
    pub eta_z: f64,
    pub eta_theta: f64,
    #[serde(default = "default_angular_mode")]
    pub angular: AngularModeConfig,
    #[serde(default)]
    pub coefficients: ChiCoeffsConfig,
}

fn default_angular_mode() -> AngularModeConfig {
    AngularModeConfig::Periodic
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn validate(&self, name: &str) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.stop >= self.start) {
            bail!("{name} axis must have finite start <= stop");
        }
        if self.count == 0 {
            bail!("{name} axis needs count >= 1");
        }
        if self.count == 1 && self.stop != self.start {
            bail!("{name} axis with count = 1 must have stop == start");
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub r: AxisSpec,
    pub theta: AxisSpec,
    pub z: AxisSpec,
    pub t: AxisSpec,
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        self.r.validate("r")?;
        self.theta.validate("theta")?;
        self.z.validate("z")?;
        self.t.validate("t")?;
        if self.r.start < 0.0 {
            bail!("r axis must start at >= 0");
        }
        Ok(())
    }
}

/// Settings for the finite-difference residual check attached to every grid
/// artifact; the verify subcommand replays them.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySettings {
    /// Number of random sample points.
    pub points: usize,
    pub seed: u64,
    /// Step scale relative to the local characteristic lengths.
    pub scale: f64,
    /// Relative residual bound for the pass verdict.
    pub tolerance: f64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            points: 50,
            seed: 0,
            scale: 1e-4,
            tolerance: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SweepConfig {
    /// Amplitude-vs-frequency study: solve the forced vibration across a
    /// range of squared frequencies and tabulate regime, coefficients and
    /// response size.
    VibrationFrequency {
        radius: f64,
        length: f64,
        axial_index: u32,
        amplitude: f64,
        omega_squared: AxisSpec,
    },
    /// Amplitude-vs-duration study: walk the solvability surface by length
    /// and tabulate the surface displacement amplitude per duration.
    RelaxationDuration {
        radius: f64,
        axial_parameter: f64,
        amplitude: f64,
        decay_base: f64,
        decay_rate: f64,
        lengths: Vec<f64>,
    },
    /// Randomly parameterized solution families, each re-verified through
    /// the finite-difference residual of the displacement equation.
    Families {
        count: usize,
        seed: u64,
        #[serde(default = "default_family_points")]
        points: usize,
    },
}

fn default_family_points() -> usize {
    12
}
