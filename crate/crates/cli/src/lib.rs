//! Driver for the `bohrnet` command: reads net specifications and projection
//! datasets, runs the checkers and assembles deterministic JSON reports.

pub mod input;
pub mod report;

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use bohrnet::contexts::ContextConfig;
use bohrnet::descent::{self, Biconditional, BohrifiedNet, Cover, DEFAULT_COVER_CAP};
use bohrnet::error::{ContextError, NetError, SpacetimeError};
use bohrnet::net::Net;
use bohrnet::spectra::{self, KsVerdict};
use serde_json::Value;
use thiserror::Error;

use crate::input::{KsFile, NetSpecFile};

/// Default bound on counted global sections.
pub const DEFAULT_SECTION_CAP: u64 = 1 << 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("malformed JSON in {path}: {message}")]
    Json { path: String, message: String },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("cap exceeded: {0}")]
    Cap(String),

    #[error("invalid net: {0}")]
    Net(NetError),

    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl From<NetError> for CliError {
    fn from(e: NetError) -> Self {
        match &e {
            NetError::Context(ContextError::CapExceeded { .. }) | NetError::Spacetime(SpacetimeError::CapExceeded { .. }) => {
                CliError::Cap(e.to_string())
            }
            NetError::Spacetime(SpacetimeError::WindowTooLarge { .. }) => CliError::Cap(e.to_string()),
            _ => CliError::Net(e),
        }
    }
}

impl From<ContextError> for CliError {
    fn from(e: ContextError) -> Self {
        NetError::from(e).into()
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub cover_cap: Option<usize>,
    pub no_trivial_context: bool,
}

#[derive(Debug, Clone, Default)]
pub struct KsOptions {
    pub section_cap: Option<u64>,
}

/// A finished command: the JSON report, a human summary and the exit code.
pub struct Outcome {
    pub report: Value,
    pub summary: String,
    pub exit_code: i32,
}

fn read(path: &Path) -> Result<(String, Vec<u8>), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| CliError::Json { path: path.display().to_string(), message: e.to_string() })?;
    Ok((text, bytes))
}

/// Reads and validates a net specification file.
pub fn load_spec(path: &Path) -> Result<bohrnet::net::NetSpec, CliError> {
    let (text, _) = read(path)?;
    input::parse_json::<NetSpecFile>(&text, &path.display().to_string())?.to_spec()
}

/// Reads a projection dataset, returning its dimension and projections.
pub fn load_projections(path: &Path) -> Result<(usize, Vec<bohrnet::GeneratorDecl>), CliError> {
    let (text, _) = read(path)?;
    let file: KsFile = input::parse_json(&text, &path.display().to_string())?;
    Ok((file.dim, file.to_projections()?))
}

struct Loaded {
    net: Net,
    bohr: BohrifiedNet,
    config: ContextConfig,
    cover_cap: usize,
    input_digest: String,
}

fn load_net(path: &Path, opts: &CheckOptions) -> Result<Loaded, CliError> {
    let (text, bytes) = read(path)?;
    let file: NetSpecFile = input::parse_json(&text, &path.display().to_string())?;
    let spec = file.to_spec()?;
    let include_trivial = !opts.no_trivial_context && file.flags.include_trivial_context.unwrap_or(true);
    let config = ContextConfig { include_trivial_context: include_trivial, ..ContextConfig::default() };
    let cover_cap = opts.cover_cap.or(file.flags.cover_cap).unwrap_or(DEFAULT_COVER_CAP);
    let net = Net::new(&spec)?;
    let bohr = BohrifiedNet::build(&net, &config)?;
    Ok(Loaded { net, bohr, config, cover_cap, input_digest: report::sha256_hex(&bytes) })
}

/// `check`: every axiom checker plus the descent theorem on one net.
pub fn run_check(path: &Path, opts: &CheckOptions) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let Loaded { net, bohr, config, cover_cap, input_digest } = load_net(path, opts)?;
    let isotony = net.check_isotony()?;
    let causal = net.check_causal_locality();
    let slice = net.check_slice_locality();
    let einstein = net.check_einstein_causality()?;
    let functorial = bohr.is_functorial(&net);
    let theorem = descent::theorem_check(&net, &bohr, cover_cap)?;

    let results = report::check_results(
        &net,
        &config,
        cover_cap,
        &isotony,
        &causal,
        &slice,
        &einstein,
        functorial,
        &theorem,
    );
    let exit_code = if theorem.verdict == Biconditional::Inconsistent { 1 } else { 0 };
    let mut summary = String::new();
    let pf = |b: bool| if b { "pass" } else { "fail" };
    let _ = writeln!(
        summary,
        "net {} with {} slice sites, {} complete regions, ambient dimension {}",
        net.family(),
        net.window().sites(),
        net.regions().len(),
        net.ambient_dim()
    );
    let _ = writeln!(summary, "  isotony              {}", pf(isotony.holds));
    let _ = writeln!(summary, "  causal locality      {}", pf(causal.holds));
    let _ = writeln!(summary, "  additivity           {}", pf(theorem.additivity.holds));
    let _ = writeln!(summary, "  strong locality      {}", pf(theorem.strong_locality.holds()));
    let _ = writeln!(summary, "  einstein causality   {}", pf(einstein.holds()));
    let nonlocal = theorem.descent.iter().filter(|r| !r.local).count();
    let _ = writeln!(
        summary,
        "  descent              {} covers{}, {} not local",
        theorem.descent.len(),
        if theorem.covers_truncated { " (truncated)" } else { "" },
        nonlocal
    );
    if let Some(r) = theorem.first_nonlocal() {
        let _ = writeln!(summary, "    first failure: cover {} ({})", r.cover, r.reason());
    }
    let _ = writeln!(summary, "  theorem              {}", theorem.verdict.as_str());
    let report = report::envelope(input_digest, results, start.elapsed());
    Ok(Outcome { report, summary, exit_code })
}

/// `ks`: counts global sections of the spectral presheaf of a projection
/// family.
pub fn run_ks(path: &Path, opts: &KsOptions) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (text, bytes) = read(path)?;
    let file: KsFile = input::parse_json(&text, &path.display().to_string())?;
    let projections = file.to_projections()?;
    let cap = opts.section_cap.unwrap_or(DEFAULT_SECTION_CAP);
    let ks = spectra::ks_check(file.dim, &projections, cap)?;
    let results = report::ks_results(&ks, cap);
    let verdict = match ks.verdict {
        KsVerdict::Contextual => "contextual",
        KsVerdict::NonContextual => "non-contextual",
    };
    let count = if ks.sections.exact {
        ks.sections.count.to_string()
    } else {
        format!("at least {}", ks.sections.count)
    };
    let summary = format!(
        "dimension {}, {} projections, {} maximal contexts\n  global sections  {count}\n  verdict          {verdict}\n",
        ks.dim, ks.projections, ks.maximal_contexts
    );
    let report = report::envelope(report::sha256_hex(&bytes), results, start.elapsed());
    Ok(Outcome { report, summary, exit_code: 0 })
}

/// `explain`: poset listings and the f, L and adjunction tables for one cover.
pub fn run_explain(path: &Path, cover: &str, opts: &CheckOptions) -> Result<String, CliError> {
    let Loaded { net, bohr, .. } = load_net(path, opts)?;
    let cover = Cover::parse(cover, net.window().sites()).map_err(|e| CliError::Usage(e.to_string()))?;
    let a = descent::analyze_cover(&net, &bohr, &cover)?;
    Ok(report::explain_text(&a))
}
