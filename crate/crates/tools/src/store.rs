//! Indexed image stores backed by a JSON manifest.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use mission_core::SceneImage;
use serde::Deserialize;

use crate::error::ToolsError;

#[derive(Debug, Clone)]
struct StoreEntry {
    id: String,
    path: PathBuf,
}

/// An ordered collection of scene images, loaded lazily and cached.
///
/// Manifest format: `{"images": [{"id": "...", "path": "..."}]}` with
/// paths resolved relative to the manifest's directory. Ids must be
/// unique and non-empty.
pub struct ImageStore {
    entries: Vec<StoreEntry>,
    cache: Mutex<HashMap<usize, Arc<SceneImage>>>,
}

#[derive(Deserialize)]
struct RawManifest {
    images: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    path: String,
}

impl ImageStore {
    pub fn from_manifest(path: impl AsRef<Path>) -> Result<Self, ToolsError> {
        let path = path.as_ref();
        let err = |detail: String| ToolsError::StoreManifest {
            path: path.to_path_buf(),
            detail,
        };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        let raw: RawManifest = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));

        let mut seen = std::collections::HashSet::new();
        let mut entries = Vec::with_capacity(raw.images.len());
        for e in raw.images {
            if e.id.is_empty() {
                return Err(err("image id must be non-empty".into()));
            }
            if !seen.insert(e.id.clone()) {
                return Err(err(format!("duplicate image id '{}'", e.id)));
            }
            let p = PathBuf::from(&e.path);
            let resolved = if p.is_absolute() { p } else { base.join(p) };
            entries.push(StoreEntry {
                id: e.id,
                path: resolved,
            });
        }
        Ok(Self {
            entries,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// A store holding exactly one image file; its id is the file stem.
    pub fn single(path: impl AsRef<Path>) -> Result<Self, ToolsError> {
        let path = path.as_ref();
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("image")
            .to_string();
        Ok(Self {
            entries: vec![StoreEntry {
                id,
                path: path.to_path_buf(),
            }],
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// An empty store (for missions that never touch a category of image).
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.id.as_str()).collect()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.id == id)
    }

    /// Load (or fetch from cache) the image at `index`.
    pub fn get(&self, index: i64) -> Result<Arc<SceneImage>, ToolsError> {
        let idx: usize = usize::try_from(index).map_err(|_| ToolsError::IndexOutOfRange {
            index,
            len: self.entries.len(),
        })?;
        let entry = self
            .entries
            .get(idx)
            .ok_or(ToolsError::IndexOutOfRange {
                index,
                len: self.entries.len(),
            })?;
        let mut cache = self.cache.lock().unwrap();
        if let Some(img) = cache.get(&idx) {
            return Ok(Arc::clone(img));
        }
        let img = Arc::new(SceneImage::from_path(entry.id.clone(), &entry.path)?);
        cache.insert(idx, Arc::clone(&img));
        Ok(img)
    }

    pub fn get_by_id(&self, id: &str) -> Result<Arc<SceneImage>, ToolsError> {
        let idx = self
            .index_of(id)
            .ok_or_else(|| ToolsError::UnknownImageId(id.to_string()))?;
        self.get(idx as i64)
    }
}
