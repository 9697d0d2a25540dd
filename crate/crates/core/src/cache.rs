//! File-backed cache of graph exports, one JSON file per `(p, ℓ)`.
//!
//! File names carry [`FORMAT_VERSION`]; files written by other versions are
//! simply never looked at. Writes go to a temporary file in the same
//! directory which is then renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::export::{GraphExport, FORMAT_VERSION};
use crate::ssgraph::{build_graph, IsogenyGraph};

#[derive(Clone, Debug)]
pub struct GraphCache {
    dir: PathBuf,
}

impl GraphCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GraphCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, p: u64, ell: u64) -> PathBuf {
        self.dir
            .join(format!("graph-v{FORMAT_VERSION}-p{p}-l{ell}.json"))
    }

    /// The cached graph, or `None` if absent or unreadable.
    pub fn load(&self, p: u64, ell: u64) -> Option<IsogenyGraph> {
        let text = fs::read_to_string(self.path_for(p, ell)).ok()?;
        let export = GraphExport::from_json(&text).ok()?;
        let g = export.to_graph().ok()?;
        (g.p() == p && g.ell() == ell).then_some(g)
    }

    pub fn store(&self, g: &IsogenyGraph) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(g.p(), g.ell());
        let json = GraphExport::from_graph(g)?.to_json()?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(json.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }

    /// Load `Λ_p(ℓ)` from the cache, or build and store it.
    pub fn get_or_build(&self, p: u64, ell: u64, seed: u64) -> Result<IsogenyGraph> {
        if let Some(g) = self.load(p, ell) {
            return Ok(g);
        }
        let g = build_graph(p, ell, seed)?;
        self.store(&g)?;
        Ok(g)
    }
}
