use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classchar::classes::ConjClasses;
use crate::classchar::table::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::matgrp::{Family, GaloisDatum, Mat};

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Which group of a datum a table belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSel {
    Ge,
    Gf,
    Gop,
}

impl GroupSel {
    pub fn name(self) -> &'static str {
        match self {
            GroupSel::Ge => "ge",
            GroupSel::Gf => "gf",
            GroupSel::Gop => "gop",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableKey {
    pub family: Family,
    pub n: usize,
    pub q: usize,
    pub group: GroupSel,
    pub seed: u64,
}

impl TableKey {
    pub fn file_name(&self) -> String {
        format!(
            "chartable-{}-n{}-q{}-{}-s{}-v{}.json",
            self.family,
            self.n,
            self.q,
            self.group.name(),
            self.seed,
            CACHE_FORMAT_VERSION
        )
    }
}

#[derive(Serialize, Deserialize)]
struct CachedTable {
    version: u32,
    key: TableKey,
    field: (u32, u32, Vec<u32>),
    reps: Vec<String>,
    sizes: Vec<usize>,
    degrees: Vec<usize>,
    chars: Vec<Vec<(f64, f64)>>,
}

fn to_doc(d: &GaloisDatum, key: &TableKey, classes: &ConjClasses, t: &CharacterTable) -> CachedTable {
    let spec = d.ext().spec();
    CachedTable {
        version: CACHE_FORMAT_VERSION,
        key: key.clone(),
        field: (spec.p, spec.k, spec.modulus.clone()),
        reps: classes.reps.iter().map(|g| g.encode(d.ext())).collect(),
        sizes: classes.sizes.clone(),
        degrees: t.degrees.clone(),
        chars: t.chars.iter().map(|r| r.iter().map(|v| (v.re, v.im)).collect()).collect(),
    }
}

fn from_doc(d: &GaloisDatum, key: &TableKey, classes: &ConjClasses, doc: CachedTable) -> Result<CharacterTable> {
    let spec = d.ext().spec();
    if doc.version != CACHE_FORMAT_VERSION || doc.key != *key {
        return Err(Error::Cache("key or version mismatch".into()));
    }
    if doc.field != (spec.p, spec.k, spec.modulus.clone()) {
        return Err(Error::Cache("field mismatch".into()));
    }
    let reps: Vec<Mat> = doc.reps.iter().map(|s| Mat::decode(s, d.ext())).collect::<Result<_>>()?;
    if reps != classes.reps || doc.sizes != classes.sizes {
        return Err(Error::Cache("class data mismatch".into()));
    }
    let table = CharacterTable {
        chars: doc
            .chars
            .into_iter()
            .map(|r| r.into_iter().map(|(re, im)| num_complex::Complex64::new(re, im)).collect())
            .collect(),
        degrees: doc.degrees,
        sizes: doc.sizes,
        seed: key.seed,
    };
    table.verify().map_err(|e| Error::Cache(format!("cached table failed verification: {e}")))?;
    Ok(table)
}

/// Loads a table from `dir` if present and valid, otherwise computes and stores it.
/// Without a directory the table is always computed.
pub fn load_or_compute(
    d: &GaloisDatum,
    key: &TableKey,
    classes: &ConjClasses,
    cap: usize,
    dir: Option<&Path>,
) -> Result<CharacterTable> {
    let path: Option<PathBuf> = dir.map(|p| p.join(key.file_name()));
    if let Some(path) = &path {
        if path.exists() {
            let text = fs::read_to_string(path)?;
            match serde_json::from_str::<CachedTable>(&text).map_err(Error::from).and_then(|doc| from_doc(d, key, classes, doc)) {
                Ok(t) => {
                    log::info!("loaded character table from {}", path.display());
                    return Ok(t);
                }
                Err(e) => log::warn!("ignoring cache file {}: {e}", path.display()),
            }
        }
    }
    let table = character_table(d.ops(), classes, key.seed, cap)?;
    if let Some(path) = &path {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, serde_json::to_string(&to_doc(d, key, classes, &table))?)?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classchar::classes::conj_classes;
    use crate::classchar::table::DEFAULT_TABLE_CAP;
    use crate::matgrp::{datum_build, Selector};

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let d = datum_build(Family::Gl, 2, 2).unwrap();
        let cl = conj_classes(d.ops(), d.enumerate(Selector::GE).unwrap()).unwrap();
        let key = TableKey { family: Family::Gl, n: 2, q: 2, group: GroupSel::Ge, seed: 3 };
        let a = load_or_compute(&d, &key, &cl, DEFAULT_TABLE_CAP, Some(dir.path())).unwrap();
        let path = dir.path().join(key.file_name());
        assert!(path.exists());
        let b = load_or_compute(&d, &key, &cl, DEFAULT_TABLE_CAP, Some(dir.path())).unwrap();
        assert_eq!(a, b);
        let text = fs::read_to_string(&path).unwrap().replacen("[1.0,0.0]", "[1.5,0.0]", 1);
        fs::write(&path, text).unwrap();
        let c = load_or_compute(&d, &key, &cl, DEFAULT_TABLE_CAP, Some(dir.path())).unwrap();
        assert_eq!(a, c);
    }
}
