//! Basis cache: JSON snapshots of the connected-subgraph list and the
//! graded bases of one host graph, keyed by its content hash. The cache
//! is advisory: a missing, stale, or structurally invalid file is
//! ignored and the bases recomputed, never trusted partially.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::enumerate::{BasisTable, GradedBasis};
use crate::graph::{ConnectedSubgraph, Graph};
use crate::hopf::Monomial;
use crate::records::{MonomialRecord, SubgraphRecord};

/// On-disk shape: {graph_hash, max_degree, calG, bases}. Degrees key
/// the `bases` object as decimal strings, covering 0..=max_degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheFile {
    pub graph_hash: String,
    pub max_degree: usize,
    #[serde(rename = "calG")]
    pub cal_g: Vec<SubgraphRecord>,
    pub bases: BTreeMap<usize, Vec<MonomialRecord>>,
}

/// Cache file location for one host graph inside `dir`.
pub fn cache_path(dir: &Path, host: &Graph) -> PathBuf {
    dir.join(format!("{}.json", host.content_hash()))
}

/// Writes the generating set plus the bases for degrees 0..=max_degree,
/// computing whatever the table has not filled yet. Returns the path
/// written.
pub fn save(dir: &Path, table: &BasisTable, max_degree: usize) -> io::Result<PathBuf> {
    let host = table.host();
    let cal_g = table
        .generators()
        .iter()
        .map(SubgraphRecord::from_subgraph)
        .collect();
    let mut bases = BTreeMap::new();
    for n in 0..=max_degree {
        bases.insert(
            n,
            table
                .basis(n)
                .iter()
                .map(MonomialRecord::from_monomial)
                .collect(),
        );
    }
    let file = CacheFile {
        graph_hash: host.content_hash(),
        max_degree,
        cal_g,
        bases,
    };
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, host);
    fs::write(&path, serde_json::to_string_pretty(&file).expect("cache serializes"))?;
    Ok(path)
}

/// A cache that survived validation against its host graph.
pub struct LoadedCache {
    max_degree: usize,
    generators: Vec<ConnectedSubgraph>,
    bases: Vec<GradedBasis>,
}

impl LoadedCache {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Installs the cached generators and bases into `table`. Entries
    /// the table already computed win.
    pub fn seed_into(self, table: &BasisTable) {
        table.seed(Some(self.generators), self.bases);
    }
}

/// Reads and validates the cache for `host`. Every defect (missing or
/// unreadable file, parse error, hash mismatch, malformed subgraph,
/// out-of-host subgraph, unsorted or mis-graded basis) rejects the
/// whole file.
pub fn load(dir: &Path, host: &Graph) -> Option<LoadedCache> {
    let text = fs::read_to_string(cache_path(dir, host)).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    validate(file, host)
}

fn validate(file: CacheFile, host: &Graph) -> Option<LoadedCache> {
    if file.graph_hash != host.content_hash() {
        return None;
    }

    let mut generators = Vec::with_capacity(file.cal_g.len());
    for record in &file.cal_g {
        let c = record.to_subgraph().ok()?;
        if !c.graph().is_subgraph_of(host) {
            return None;
        }
        generators.push(c);
    }
    if !generators.windows(2).all(|w| w[0] < w[1]) {
        return None;
    }
    let known: BTreeSet<&ConnectedSubgraph> = generators.iter().collect();

    let degrees: Vec<usize> = file.bases.keys().copied().collect();
    if degrees != (0..=file.max_degree).collect::<Vec<_>>() {
        return None;
    }
    let mut bases = Vec::with_capacity(file.bases.len());
    for (&degree, records) in &file.bases {
        let mut monomials: Vec<Monomial> = Vec::with_capacity(records.len());
        for record in records {
            let m = record.to_monomial().ok()?;
            if m.degree() != degree || !m.factors().iter().all(|f| known.contains(f)) {
                return None;
            }
            monomials.push(m);
        }
        if !monomials.windows(2).all(|w| w[0] < w[1]) {
            return None;
        }
        bases.push(GradedBasis::from_sorted(degree, monomials));
    }

    Some(LoadedCache {
        max_degree: file.max_degree,
        generators,
        bases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Graph {
        Graph::from_parts([], [(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap()
    }

    fn saved_dir(max_degree: usize) -> (tempfile::TempDir, Graph) {
        let dir = tempfile::tempdir().unwrap();
        let host = square();
        let table = BasisTable::new(host.clone());
        save(dir.path(), &table, max_degree).unwrap();
        (dir, host)
    }

    #[test]
    fn save_then_load_roundtrips() {
        let (dir, host) = saved_dir(3);
        let loaded = load(dir.path(), &host).expect("fresh cache validates");
        assert_eq!(loaded.max_degree(), 3);

        let seeded = BasisTable::new(host.clone());
        loaded.seed_into(&seeded);
        let cold = BasisTable::new(host);
        for n in 0..=3 {
            assert_eq!(seeded.basis(n).monomials(), cold.basis(n).monomials());
        }
        assert_eq!(*seeded.generators(), *cold.generators());
    }

    #[test]
    fn load_rejects_other_graph() {
        let (dir, _) = saved_dir(2);
        let other = Graph::from_parts([], [(1, 2)]).unwrap();
        assert!(load(dir.path(), &other).is_none());
    }

    #[test]
    fn load_rejects_missing_file_and_bad_json() {
        let dir = tempfile::tempdir().unwrap();
        let host = square();
        assert!(load(dir.path(), &host).is_none());
        fs::write(cache_path(dir.path(), &host), "not json").unwrap();
        assert!(load(dir.path(), &host).is_none());
    }

    fn tamper(dir: &Path, host: &Graph, change: impl FnOnce(&mut CacheFile)) {
        let path = cache_path(dir, host);
        let mut file: CacheFile =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        change(&mut file);
        fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    }

    #[test]
    fn load_rejects_structural_damage() {
        // Hash swapped out.
        let (dir, host) = saved_dir(2);
        tamper(dir.path(), &host, |f| f.graph_hash = "0".repeat(64));
        assert!(load(dir.path(), &host).is_none());

        // A generator outside the host.
        let (dir, host) = saved_dir(2);
        tamper(dir.path(), &host, |f| {
            f.cal_g.push(SubgraphRecord {
                vertices: vec![9],
                edges: vec![],
            })
        });
        assert!(load(dir.path(), &host).is_none());

        // Basis entry in the wrong degree slot.
        let (dir, host) = saved_dir(2);
        tamper(dir.path(), &host, |f| {
            let moved = f.bases[&1][0].clone();
            f.bases.get_mut(&2).unwrap().push(moved);
        });
        assert!(load(dir.path(), &host).is_none());

        // A degree slot missing.
        let (dir, host) = saved_dir(2);
        tamper(dir.path(), &host, |f| {
            f.bases.remove(&1);
        });
        assert!(load(dir.path(), &host).is_none());

        // Unsorted basis slot.
        let (dir, host) = saved_dir(2);
        tamper(dir.path(), &host, |f| {
            f.bases.get_mut(&2).unwrap().swap(0, 1);
        });
        assert!(load(dir.path(), &host).is_none());
    }

    #[test]
    fn bases_keys_serialize_as_strings() {
        let (dir, host) = saved_dir(1);
        let text = fs::read_to_string(cache_path(dir.path(), &host)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(value["bases"]["0"].is_array());
        assert!(value["bases"]["1"].is_array());
        assert_eq!(value["max_degree"], 1);
        assert!(value["calG"].is_array());
    }
}
