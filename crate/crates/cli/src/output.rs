//! Artifact documents and writers. Every JSON document carries a
//! `schema_version`; every CSV file carries a header row. Floats serialize
//! as the shortest decimal that round-trips in both encodings, so the CSV
//! and JSON forms of a grid decode to bit-identical values.

use anyhow::{Context, Result};
use elastics_core::model::Material;
use elastics_core::potentials::Coefficients;
use elastics_core::verify::SampleDomain;
use elastics_core::{ModeParams, SolutionFamily};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<()> {
    let file = File::create(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, doc)
        .with_context(|| format!("cannot serialize {}", path.display()))?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path)
        .with_context(|| format!("cannot open {}", path.display()))?;
    serde_json::from_reader(BufReader::new(file))
        .with_context(|| format!("cannot parse {}", path.display()))
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn artifact_path(out: &Path, name: &str) -> PathBuf {
    out.join(name)
}

/// Everything needed to rebuild a solution family bit-for-bit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub lambda: f64,
    pub mu: f64,
    pub rho: f64,
    pub kappa: f64,
    pub tau: f64,
    pub angular_order: u32,
    pub coefficients: Coefficients,
    pub coupling_weights: [f64; 2],
}

impl FamilySpec {
    pub fn from_family(family: &SolutionFamily) -> Self {
        FamilySpec {
            lambda: family.material().lambda(),
            mu: family.material().mu(),
            rho: family.material().rho(),
            kappa: family.mode().kappa(),
            tau: family.mode().tau(),
            angular_order: family.mode().n(),
            coefficients: *family.coefficients(),
            coupling_weights: [1.0, 1.0],
        }
    }

    pub fn build(&self) -> Result<SolutionFamily> {
        let material = Material::new(self.lambda, self.mu, self.rho)?;
        let mode = ModeParams::new(self.kappa, self.tau, self.angular_order)?;
        let mut family = SolutionFamily::new(material, mode, self.coefficients)?;
        for s in 0..2 {
            if self.coupling_weights[s] != 1.0 {
                family = family.with_coupling_weight(s, self.coupling_weights[s]);
            }
        }
        Ok(family)
    }
}

/// The residual check attached to a grid artifact: its sampling parameters
/// and the maxima it produced, replayable by the verify subcommand.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub points: usize,
    pub seed: u64,
    pub scale: f64,
    pub tolerance: f64,
    pub domain: SampleDomain,
    pub max_direct: f64,
    pub max_decomposed: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridAxes {
    pub r: Vec<f64>,
    pub theta: Vec<f64>,
    pub z: Vec<f64>,
    pub t: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct GridRow {
    pub r: f64,
    pub theta: f64,
    pub z: f64,
    pub t: f64,
    pub u_r: f64,
    pub u_theta: f64,
    pub u_z: f64,
}

/// Self-describing displacement grid: metadata sufficient to reproduce the
/// run, the axes, and the flattened samples (t outermost, r innermost).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridDoc {
    pub schema_version: u32,
    pub kind: String,
    pub family: FamilySpec,
    pub diagnostics: serde_json::Value,
    pub verify: VerifyRecord,
    pub axes: GridAxes,
    pub samples: Vec<GridRow>,
}

pub const GRID_DOC_KIND: &str = "displacement-grid";

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct ChiGridRow {
    pub r: f64,
    pub theta: f64,
    pub z: f64,
    pub t: f64,
    pub chi: f64,
}
