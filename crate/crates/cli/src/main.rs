use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gkm_core::billey::BilleyCache;
use gkm_core::catalogue::{run_catalogue, CatalogueConfig, DEFAULT_DET_CAP};
use gkm_core::cohomology::{EquivariantClass, Flavor, Gkm};
use gkm_core::io::{character_to_json, class_to_json, parse_class, FileStore};
use gkm_core::parabolic::{certify_basis, ParabolicBasis, ParabolicExpander};
use gkm_core::root_system::RootSystem;
use gkm_core::springer::character;
use gkm_core::verify::{run_check, Check};
use gkm_core::weyl::{ParabolicSubset, DEFAULT_GROUP_CAP};

/// Equivariant Schubert calculus on flag varieties.
#[derive(Parser)]
#[command(name = "gkm", version)]
struct Cli {
    /// Do not read or write the on-disk Billey cache (`GKM_CACHE_DIR`).
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisKind {
    Schubert,
    Parabolic,
}

#[derive(Subcommand)]
enum Command {
    /// Localization σ_v(u) by Billey's formula.
    Billey {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        json: bool,
    },
    /// Localization table of one Schubert class.
    Schubert {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        w: String,
        /// GB, GP or PB
        #[arg(long, default_value = "GB")]
        flavor: String,
        #[arg(long, default_value = "")]
        parabolic: String,
    },
    /// Expand a product of Schubert classes, e.g. `--expr "1|2"`.
    Expand {
        #[arg(long = "type")]
        ty: String,
        /// `|`-separated words; exclusive with `--class`
        #[arg(long, conflicts_with = "class", required_unless_present = "class")]
        expr: Option<String>,
        /// class JSON file on GB
        #[arg(long)]
        class: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "schubert")]
        basis: BasisKind,
        #[arg(long, default_value = "")]
        parabolic: String,
        #[arg(long)]
        json: bool,
    },
    /// Certificate for the parabolic basis B_P.
    Basis {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value = "")]
        parabolic: String,
        #[arg(long, default_value_t = DEFAULT_DET_CAP)]
        det_cap: usize,
    },
    /// Character of the W_P action on GB (χ_P) or PB (χ).
    Character {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value = "")]
        parabolic: String,
        #[arg(long, default_value = "PB")]
        space: String,
    },
    /// Run one named check; exit status 1 when a hard assertion fails.
    Verify {
        check: Check,
        #[arg(long = "type")]
        ty: String,
        /// restrict to one parabolic (default: all)
        #[arg(long)]
        parabolic: Option<String>,
        /// first parabolic of a distinctness pair
        #[arg(long, requires = "q")]
        p: Option<String>,
        #[arg(long, requires = "p")]
        q: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DET_CAP)]
        det_cap: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run checks over a catalogue of systems.
    Catalogue {
        /// JSON config (default: the standard catalogue, all checks)
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct Ctx {
    cache: Option<BilleyCache>,
}

impl Ctx {
    fn gkm(&self, ty: &str) -> Result<Gkm> {
        let rs = RootSystem::parse(ty)?;
        Ok(Gkm::with_options(rs, DEFAULT_GROUP_CAP, self.cache.as_ref())?)
    }
}

fn parabolic(gkm: &Gkm, s: &str) -> Result<ParabolicSubset> {
    Ok(ParabolicSubset::parse(gkm.root_system(), s)?)
}

/// `1|2,1` is σ_{s_1}·σ_{s_2s_1}.
fn product(gkm: &Gkm, expr: &str) -> Result<EquivariantClass> {
    let gb = gkm.gb();
    let mut out = gkm.constant(&gb, gkm_core::polyring::RootPolynomial::one(gkm.nvars()));
    for word in expr.split('|') {
        let word = word.trim();
        if word.is_empty() {
            bail!("empty factor in expression `{expr}`");
        }
        let w = gkm
            .parse_element(word)
            .with_context(|| format!("in expression `{expr}`"))?;
        out = out.mul(&gkm.schubert_class(&gb, w)?)?;
    }
    Ok(out)
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let ctx = Ctx {
        cache: (!cli.no_cache).then(|| BilleyCache::with_store(Box::new(FileStore::from_env()))),
    };
    match cli.command {
        Command::Billey { ty, v, u, json } => {
            let gkm = ctx.gkm(&ty)?;
            let (vi, ui) = (gkm.parse_element(&v)?, gkm.parse_element(&u)?);
            let value = gkm.sigma(vi, ui);
            if json {
                let out = json!({
                    "root_system": gkm.root_system().spec().to_string(),
                    "v": gkm.word(vi),
                    "localizations": { gkm.word(ui): value.to_string() },
                });
                emit(&out, None)?;
            } else {
                println!("{value}");
            }
        }
        Command::Schubert {
            ty,
            w,
            flavor,
            parabolic: p,
        } => {
            let gkm = ctx.gkm(&ty)?;
            let space = gkm.space(Flavor::parse(&flavor)?, &parabolic(&gkm, &p)?);
            let class = gkm.schubert_class(&space, gkm.parse_element(&w)?)?;
            emit(&serde_json::to_value(class_to_json(&gkm, &class))?, None)?;
        }
        Command::Expand {
            ty,
            expr,
            class,
            basis,
            parabolic: p,
            json,
        } => {
            let gkm = ctx.gkm(&ty)?;
            let class = match (expr, class) {
                (Some(e), _) => product(&gkm, &e)?,
                (None, Some(path)) => parse_class(&gkm, &fs::read_to_string(&path)?)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let lines: Vec<String> = match basis {
                BasisKind::Schubert => gkm.format_expansion(&gkm.expand_in_schubert(&class)?),
                BasisKind::Parabolic => {
                    let b = ParabolicBasis::new(&gkm, &parabolic(&gkm, &p)?);
                    let ex = ParabolicExpander::new(&gkm, &b)?;
                    ex.expand(&class)?
                        .coeffs
                        .iter()
                        .map(|((v, w), c)| format!("{}|{}: {c}", gkm.word(*v), gkm.word(*w)))
                        .collect()
                }
            };
            if json {
                emit(&json!(lines), None)?;
            } else {
                for l in lines {
                    println!("{l}");
                }
            }
        }
        Command::Basis {
            ty,
            parabolic: p,
            det_cap,
        } => {
            let gkm = ctx.gkm(&ty)?;
            let b = ParabolicBasis::new(&gkm, &parabolic(&gkm, &p)?);
            let cert = certify_basis(&gkm, &b, det_cap);
            let elements: Vec<Value> = b
                .pairs()
                .iter()
                .zip(b.classes())
                .map(|(&(v, w), c)| {
                    Ok(json!({
                        "v": gkm.word(v),
                        "w": gkm.word(w),
                        "schubert_expansion": gkm.format_expansion(&gkm.expand_in_schubert(c)?),
                    }))
                })
                .collect::<Result<_>>()?;
            let mut out = serde_json::to_value(&cert)?;
            out["elements"] = Value::Array(elements);
            emit(&out, None)?;
            return Ok(cert.is_ok());
        }
        Command::Character {
            ty,
            parabolic: p,
            space,
        } => {
            let gkm = ctx.gkm(&ty)?;
            let table = character(&gkm, &parabolic(&gkm, &p)?, Flavor::parse(&space)?)?;
            emit(&character_to_json(&table), None)?;
        }
        Command::Verify {
            check,
            ty,
            parabolic: p,
            p: pp,
            q,
            det_cap,
            output,
        } => {
            let gkm = ctx.gkm(&ty)?;
            let parabolics = match &p {
                Some(s) => vec![parabolic(&gkm, s)?],
                None => ParabolicSubset::all(gkm.root_system()),
            };
            let pair = match (pp, q) {
                (Some(a), Some(b)) => Some(vec![(parabolic(&gkm, &a)?, parabolic(&gkm, &b)?)]),
                _ => None,
            };
            let out = run_check(&gkm, check, &parabolics, pair.as_deref(), det_cap)?;
            let report = json!({
                "check": check,
                "root_system": gkm.root_system().spec().to_string(),
                "ok": out.ok,
                "report": out.report,
            });
            emit(&report, output.as_ref())?;
            eprintln!(
                "{check} {}: {}",
                gkm.root_system().spec(),
                if out.ok { "ok" } else { "FAIL" }
            );
            return Ok(out.ok);
        }
        Command::Catalogue { config, output } => {
            let cfg = match &config {
                Some(path) => CatalogueConfig::load(path)?,
                None => CatalogueConfig::default(),
            };
            let report = run_catalogue(&cfg, ctx.cache.as_ref())?;
            let text = report.to_json_string() + "\n";
            match output.or(cfg.output.clone()) {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            for s in &report.systems {
                eprintln!("{} {}", s.root_system, s.status);
            }
            return Ok(report.ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
