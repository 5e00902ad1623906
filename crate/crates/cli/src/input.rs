//! JSON input formats: net specifications and projection datasets.
//!
//! Matrix and vector entries are exact: either a rational string such as
//! `"-3/4"` or a `[re, im]` pair of rational strings.

use bohrnet::algebra::GeneratorDecl;
use bohrnet::net::{DerivedDecl, Family, NetSpec, SiteDecl};
use bohrnet::{Mat, Scalar};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(String),
    Complex([String; 2]),
}

impl Entry {
    pub fn to_scalar(&self) -> Result<Scalar, CliError> {
        let parsed = match self {
            Entry::Real(s) => s.parse::<Scalar>(),
            Entry::Complex([re, im]) => Scalar::parse_pair(re, im),
        };
        parsed.map_err(|e| CliError::Schema(e.to_string()))
    }
}

fn matrix(rows: &[Vec<Entry>]) -> Result<Mat, CliError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(Entry::to_scalar).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Mat::from_rows(rows).map_err(|e| CliError::Schema(e.to_string()))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub label: String,
    pub entries: Vec<Vec<Entry>>,
    pub spectrum: Vec<Entry>,
}

impl GeneratorFile {
    pub fn to_decl(&self) -> Result<GeneratorDecl, CliError> {
        let m = matrix(&self.entries)?;
        let spectrum = self.spectrum.iter().map(Entry::to_scalar).collect::<Result<Vec<_>, _>>()?;
        GeneratorDecl::new(self.label.clone(), m, spectrum).map_err(|e| CliError::Schema(e.to_string()))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteFile {
    pub label: String,
    pub dim: usize,
    #[serde(default)]
    pub generators: Vec<GeneratorFile>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivedFile {
    /// first and last slice site of the diamond the generator lives on
    pub interval: [usize; 2],
    pub generator: GeneratorFile,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowFile {
    pub slice_radius: u32,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsFile {
    pub include_trivial_context: Option<bool>,
    pub cover_cap: Option<usize>,
    pub section_cap: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetSpecFile {
    pub window: WindowFile,
    pub family: String,
    #[serde(default)]
    pub sites: Vec<SiteFile>,
    #[serde(default)]
    pub derived_generators: Vec<DerivedFile>,
    #[serde(default)]
    pub shared_generators: Option<Vec<GeneratorFile>>,
    #[serde(default)]
    pub flags: FlagsFile,
}

impl NetSpecFile {
    pub fn to_spec(&self) -> Result<NetSpec, CliError> {
        let family: Family = self.family.parse().map_err(|e: bohrnet::error::NetError| CliError::Schema(e.to_string()))?;
        let sites = self
            .sites
            .iter()
            .map(|s| {
                Ok(SiteDecl {
                    label: s.label.clone(),
                    dim: s.dim,
                    generators: s.generators.iter().map(GeneratorFile::to_decl).collect::<Result<_, CliError>>()?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let derived = self
            .derived_generators
            .iter()
            .map(|d| Ok(DerivedDecl { first: d.interval[0], last: d.interval[1], generator: d.generator.to_decl()? }))
            .collect::<Result<Vec<_>, CliError>>()?;
        let shared = self
            .shared_generators
            .as_ref()
            .map(|gs| gs.iter().map(GeneratorFile::to_decl).collect::<Result<Vec<_>, _>>())
            .transpose()?;
        Ok(NetSpec { slice_radius: self.window.slice_radius, family, sites, derived, shared })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionFile {
    pub label: String,
    #[serde(default)]
    pub vector: Option<Vec<Entry>>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Entry>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KsFile {
    pub dim: usize,
    pub projections: Vec<ProjectionFile>,
}

impl KsFile {
    pub fn to_projections(&self) -> Result<Vec<GeneratorDecl>, CliError> {
        self.projections
            .iter()
            .map(|p| {
                let m = match (&p.vector, &p.matrix) {
                    (Some(v), None) => {
                        let v = v.iter().map(Entry::to_scalar).collect::<Result<Vec<_>, _>>()?;
                        Mat::projector_onto(&v).map_err(|e| CliError::Schema(format!("{}: {e}", p.label)))?
                    }
                    (None, Some(rows)) => matrix(rows)?,
                    _ => {
                        return Err(CliError::Schema(format!(
                            "projection {} needs exactly one of \"vector\" or \"matrix\"",
                            p.label
                        )))
                    }
                };
                if m.dim() != self.dim {
                    return Err(CliError::Schema(format!(
                        "projection {} has dimension {}, dataset declares {}",
                        p.label,
                        m.dim(),
                        self.dim
                    )));
                }
                GeneratorDecl::projection(p.label.clone(), m).map_err(|e| CliError::Schema(e.to_string()))
            })
            .collect()
    }
}

/// Parses JSON, separating syntax errors from schema violations.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Data => CliError::Schema(format!("{path}: {e}")),
            _ => CliError::Json { path: path.to_string(), message: e.to_string() },
        }
    })
}
