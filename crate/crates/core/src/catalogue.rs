//! Batch runner: every requested check over every system and parabolic.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::billey::BilleyCache;
use crate::cohomology::Gkm;
use crate::error::Result;
use crate::root_system::{RootSystem, RootSystemSpec};
use crate::verify::{run_check, Check};
use crate::weyl::{ParabolicSubset, DEFAULT_GROUP_CAP};

pub const DEFAULT_DET_CAP: usize = 24;
pub const DEFAULT_SYSTEMS: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A2xA1"];

fn default_max_group_order() -> u64 {
    DEFAULT_GROUP_CAP
}

fn default_det_cap() -> usize {
    DEFAULT_DET_CAP
}

fn default_checks() -> Vec<Check> {
    Check::ALL.to_vec()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogueConfig {
    pub systems: Vec<String>,
    #[serde(default = "default_max_group_order")]
    pub max_group_order: u64,
    #[serde(default = "default_det_cap")]
    pub det_cap: usize,
    #[serde(default = "default_checks")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl Default for CatalogueConfig {
    fn default() -> Self {
        CatalogueConfig {
            systems: DEFAULT_SYSTEMS.iter().map(|s| s.to_string()).collect(),
            max_group_order: DEFAULT_GROUP_CAP,
            det_cap: DEFAULT_DET_CAP,
            checks: default_checks(),
            output: None,
        }
    }
}

impl CatalogueConfig {
    /// Parses and validates a JSON config; system specs must parse.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut cfg: CatalogueConfig = serde_json::from_str(text)?;
        for s in &cfg.systems {
            s.parse::<RootSystemSpec>()?;
        }
        if cfg.max_group_order == 0 || cfg.det_cap == 0 {
            return Err(crate::GkmError::Parse(
                "max_group_order and det_cap must be positive".into(),
            ));
        }
        cfg.checks.sort();
        cfg.checks.dedup();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub ok: bool,
    pub report: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemReport {
    pub root_system: String,
    pub group_order: u64,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogueReport {
    pub ok: bool,
    pub max_group_order: u64,
    pub det_cap: usize,
    pub checks: Vec<Check>,
    pub systems: Vec<SystemReport>,
}

impl CatalogueReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn run_system(cfg: &CatalogueConfig, spec: &str, cache: Option<&BilleyCache>) -> Result<SystemReport> {
    let rs = RootSystem::parse(spec)?;
    let root_system = rs.spec().to_string();
    let group_order = rs.weyl_order();
    if group_order > cfg.max_group_order {
        return Ok(SystemReport {
            root_system,
            group_order,
            status: "skipped",
            reason: Some(format!(
                "|W| = {group_order} exceeds max_group_order = {}",
                cfg.max_group_order
            )),
            checks: Vec::new(),
        });
    }
    let gkm = Gkm::with_options(rs, cfg.max_group_order, cache)?;
    let parabolics = ParabolicSubset::all(gkm.root_system());
    let checks = cfg
        .checks
        .par_iter()
        .map(|&c| {
            let out = run_check(&gkm, c, &parabolics, None, cfg.det_cap)?;
            Ok(CheckResult {
                check: c,
                ok: out.ok,
                report: out.report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = checks.iter().all(|c| c.ok);
    Ok(SystemReport {
        root_system,
        group_order,
        status: if ok { "ok" } else { "fail" },
        reason: None,
        checks,
    })
}

/// Runs the catalogue. Output depends only on the config.
pub fn run_catalogue(cfg: &CatalogueConfig, cache: Option<&BilleyCache>) -> Result<CatalogueReport> {
    let systems = cfg
        .systems
        .par_iter()
        .map(|s| run_system(cfg, s, cache))
        .collect::<Result<Vec<_>>>()?;
    Ok(CatalogueReport {
        ok: systems.iter().all(|s| s.status != "fail"),
        max_group_order: cfg.max_group_order,
        det_cap: cfg.det_cap,
        checks: cfg.checks.clone(),
        systems,
    })
}
