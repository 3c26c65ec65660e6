//! Content-addressed disk cache for character tables. Sp6(2)-scale Dixon
//! runs happen once; later runs load and re-validate the class fingerprint.

use std::fs;
use std::path::PathBuf;

use crate::matgrp::Group;

use super::classfun::{CharacterTable, CharacterTableJson, ChartabError};
use super::dixon::character_table;

/// Cache directory: $ORTHOCHAR_CACHE if set, else ~/.cache/orthochar, else a
/// directory under the system temp dir.
pub fn cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("ORTHOCHAR_CACHE") {
        return PathBuf::from(dir);
    }
    if let Ok(home) = std::env::var("HOME") {
        return PathBuf::from(home).join(".cache").join("orthochar");
    }
    std::env::temp_dir().join("orthochar-cache")
}

fn fnv64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}

/// Content hash over the construction-independent group fingerprint.
fn group_hash(g: &Group) -> u64 {
    let classes = g.classes();
    let mut s = format!("v1|n={}|q={}|o={}|", g.store.n, g.field().q, g.order);
    for c in &classes.classes {
        s.push_str(&format!(
            "{}:{}:{};",
            c.size,
            c.elem_order,
            g.mat(c.rep).digits()
        ));
    }
    fnv64(s.as_bytes())
}

/// Like `character_table`, but backed by the disk cache.
pub fn character_table_cached(g: &Group) -> Result<CharacterTable, ChartabError> {
    let dir = cache_dir();
    let path = dir.join(format!("chartab-{:016x}.json", group_hash(g)));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(json) = serde_json::from_str::<CharacterTableJson>(&text) {
            if let Ok(table) = CharacterTable::from_json(g, json) {
                return Ok(table);
            }
        }
        // stale or corrupted cache entry: fall through and recompute
    }
    let table = character_table(g)?;
    if fs::create_dir_all(&dir).is_ok() {
        let json = serde_json::to_string(&table.to_json())
            .map_err(|e| ChartabError::Other(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, json).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(table)
}
