//! The point cache: a JSON array of `{"u", "v", "height", "provenance"}`.
//! Every entry is re-verified on load.

use std::fs;
use std::io::ErrorKind;
use std::path::Path;

use dtuple_core::search::{finalize_points, CPoint, Provenance};
use dtuple_core::UVPair;

use crate::error::{AppError, Result};
use crate::formats::{parse_rat, CacheEntry};

fn corrupt(path: &Path, reason: String) -> AppError {
    AppError::CorruptCache {
        path: path.to_path_buf(),
        reason,
    }
}

/// Loads and re-verifies a cache. A missing or empty file is an empty cache.
pub fn cache_load(path: &Path) -> Result<Vec<CPoint>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Vec::new()),
        Err(source) => {
            return Err(AppError::Io {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let entries: Vec<CacheEntry> = serde_json::from_str(&text).map_err(|source| AppError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    let mut pts = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let u = parse_rat(&e.u).map_err(|err| corrupt(path, format!("entry {i}: {err}")))?;
        let v = parse_rat(&e.v).map_err(|err| corrupt(path, format!("entry {i}: {err}")))?;
        let prov = Provenance::parse(&e.provenance)
            .ok_or_else(|| corrupt(path, format!("entry {i}: unknown provenance {:?}", e.provenance)))?;
        let cp = CPoint::new(UVPair::new(u, v), prov).map_err(|_| {
            corrupt(path, format!("entry {i}: ({}, {}) is not on the curve", e.u, e.v))
        })?;
        if u64::try_from(&cp.height).ok() != Some(e.height) {
            return Err(corrupt(
                path,
                format!("entry {i}: recorded height {} but the point has height {}", e.height, cp.height),
            ));
        }
        pts.push(cp);
    }
    Ok(finalize_points(pts))
}

pub fn cache_store(path: &Path, pts: &[CPoint]) -> Result<()> {
    let entries = pts.iter().map(CacheEntry::from_point).collect::<Result<Vec<_>>>()?;
    let mut text = serde_json::to_string_pretty(&entries).expect("plain data");
    text.push('\n');
    // write-then-rename so an interrupted run never leaves half a cache
    let tmp = path.with_extension("json.tmp");
    let io_err = |source| AppError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::write(&tmp, text).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

/// Union by `(u, v)`; for points present in both, the earlier provenance in
/// `searched < orbit < seeded` order wins.
pub fn merge_points(old: Vec<CPoint>, new: Vec<CPoint>) -> Vec<CPoint> {
    let mut all: Vec<CPoint> = old.into_iter().chain(new).collect();
    all.sort_by(|a, b| a.uv.cmp(&b.uv).then(a.provenance.cmp(&b.provenance)));
    all.dedup_by(|a, b| a.uv == b.uv);
    finalize_points(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn seed_point() -> CPoint {
        let uv = UVPair::new("-119/128".parse().unwrap(), "-135/169".parse().unwrap());
        let mut p = CPoint::new(uv, Provenance::Searched).unwrap();
        p.orbit = Some(0);
        p
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cpoints.json");
        cache_store(&path, &[seed_point()]).unwrap();
        assert_eq!(cache_load(&path).unwrap(), vec![seed_point()]);
    }

    #[test]
    fn empty_and_missing_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.json");
        fs::File::create(&path).unwrap();
        assert!(cache_load(&path).unwrap().is_empty());
        assert!(cache_load(&dir.path().join("absent.json")).unwrap().is_empty());
    }

    #[test]
    fn off_curve_entry_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        let mut f = fs::File::create(&path).unwrap();
        write!(f, r#"[{{"u": "1/2", "v": "1/3", "height": 3, "provenance": "searched"}}]"#).unwrap();
        assert!(matches!(cache_load(&path), Err(AppError::CorruptCache { .. })));
    }

    #[test]
    fn wrong_height_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        fs::write(&path, r#"[{"u": "-119/128", "v": "-135/169", "height": 7, "provenance": "searched"}]"#).unwrap();
        assert!(matches!(cache_load(&path), Err(AppError::CorruptCache { .. })));
    }

    #[test]
    fn merge_prefers_searched() {
        let mut orbit = seed_point();
        orbit.provenance = Provenance::Orbit;
        let merged = merge_points(vec![orbit], vec![seed_point()]);
        assert_eq!(merged, vec![seed_point()]);
    }
}
