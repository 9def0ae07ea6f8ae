//! JSON forms of classes and characters, and the on-disk Billey row store.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::billey::{BilleyRow, RowStore};
use crate::cohomology::{EquivariantClass, Flavor, Gkm};
use crate::error::{GkmError, Result};
use crate::polyring::RootPolynomial;
use crate::root_system::RootSystem;
use crate::springer::CharacterTable;
use crate::weyl::{ParabolicSubset, Word};

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "GKM_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".gkm-cache";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub root_system: String,
    pub flavor: Flavor,
    pub parabolic: Vec<usize>,
    pub localizations: Map<String, Value>,
}

/// Zero localizations are omitted; keys follow canonical element order.
pub fn class_to_json(gkm: &Gkm, class: &EquivariantClass) -> ClassJson {
    let localizations = class
        .iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| (gkm.word(k), Value::String(p.to_string())))
        .collect();
    ClassJson {
        root_system: gkm.root_system().spec().to_string(),
        flavor: class.space().flavor(),
        parabolic: class.space().parabolic().to_vec(),
        localizations,
    }
}

pub fn class_from_json(gkm: &Gkm, json: &ClassJson) -> Result<EquivariantClass> {
    let spec = gkm.root_system().spec().to_string();
    if json
        .root_system
        .parse::<crate::root_system::RootSystemSpec>()?
        .to_string()
        != spec
    {
        return Err(GkmError::SpaceMismatch(format!(
            "class is on {}, context is {spec}",
            json.root_system
        )));
    }
    let p = ParabolicSubset::new(gkm.root_system(), json.parabolic.iter().copied())?;
    let space = gkm.space(json.flavor, &p);
    let n = gkm.nvars();
    let mut values = vec![RootPolynomial::zero(n); space.points().len()];
    for (word, value) in &json.localizations {
        let k = gkm.parse_element(word)?;
        let slot = space
            .position(k)
            .ok_or_else(|| GkmError::NotInIndexSet(format!("{word} is not a fixed point of this space")))?;
        let text = value
            .as_str()
            .ok_or_else(|| GkmError::Parse(format!("localization at {word} is not a string")))?;
        values[slot] = RootPolynomial::parse(n, text)?;
    }
    EquivariantClass::new(space, values)
}

pub fn parse_class(gkm: &Gkm, text: &str) -> Result<EquivariantClass> {
    class_from_json(gkm, &serde_json::from_str(text)?)
}

/// `{"root_system", "parabolic", "space", "values": {word: poly}}`.
pub fn character_to_json(table: &CharacterTable) -> Value {
    let values: Map<String, Value> = table
        .values
        .iter()
        .map(|(w, p)| (w.clone(), Value::String(p.to_string())))
        .collect();
    serde_json::json!({
        "root_system": table.root_system,
        "parabolic": table.parabolic,
        "space": table.space,
        "values": values,
    })
}

/// Billey rows as `<dir>/<spec>/<word of u>.json`.
///
/// Unreadable or mismatched files are treated as misses. Writes go to a
/// temporary file first and are renamed into place, so concurrent writers of
/// the same row never leave a torn file.
#[derive(Debug, Clone)]
pub struct FileStore {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct RowFile {
    root_system: String,
    u: String,
    values: Map<String, Value>,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl FileStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FileStore { dir: dir.into() }
    }

    /// Directory from `GKM_CACHE_DIR`, else `.gkm-cache`.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os(CACHE_DIR_ENV).map_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR), PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, rs: &RootSystem, u: &Word) -> PathBuf {
        self.dir.join(rs.spec().to_string()).join(format!("{u}.json"))
    }

    fn read(&self, rs: &RootSystem, u: &Word) -> Option<BilleyRow> {
        let file: RowFile = serde_json::from_str(&fs::read_to_string(self.path(rs, u)).ok()?).ok()?;
        if file.root_system != rs.spec().to_string() || file.u != u.to_string() {
            return None;
        }
        file.values
            .iter()
            .map(|(w, p)| Some((w.parse().ok()?, RootPolynomial::parse(rs.rank(), p.as_str()?).ok()?)))
            .collect()
    }

    fn write(&self, rs: &RootSystem, u: &Word, row: &BilleyRow) -> std::io::Result<()> {
        let path = self.path(rs, u);
        let parent = path.parent().expect("file has a parent");
        fs::create_dir_all(parent)?;
        let file = RowFile {
            root_system: rs.spec().to_string(),
            u: u.to_string(),
            values: row
                .iter()
                .map(|(w, p)| (w.to_string(), Value::String(p.to_string())))
                .collect(),
        };
        let tmp = parent.join(format!(
            ".{u}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_vec(&file).map_err(std::io::Error::other)?)?;
        fs::rename(&tmp, &path)
    }
}

impl RowStore for FileStore {
    fn load(&self, rs: &RootSystem, u: &Word) -> Option<BilleyRow> {
        self.read(rs, u)
    }

    fn store(&self, rs: &RootSystem, u: &Word, row: &BilleyRow) {
        // a failed write only costs a recomputation later
        let _ = self.write(rs, u, row);
    }
}
