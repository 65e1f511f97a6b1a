use std::path::{Path, PathBuf};

use image::RgbImage;

use crate::error::CoreError;
use crate::geometry::PixelPoint;

/// A raster scene — the unit of perception for every agent.
///
/// The pixel format is fixed to 8-bit RGB; inputs in other formats are
/// converted on load so crop and annotation logic deal with exactly one
/// canonical raster. Instances are immutable after construction.
#[derive(Clone)]
pub struct SceneImage {
    id: String,
    pixels: RgbImage,
    source_path: Option<PathBuf>,
}

impl SceneImage {
    pub fn new(id: impl Into<String>, pixels: RgbImage) -> Result<Self, CoreError> {
        let id = id.into();
        if id.is_empty() {
            return Err(CoreError::EmptyImageId);
        }
        if pixels.width() == 0 || pixels.height() == 0 {
            return Err(CoreError::EmptyImage {
                id,
                width: pixels.width(),
                height: pixels.height(),
            });
        }
        Ok(Self {
            id,
            pixels,
            source_path: None,
        })
    }

    /// Load from disk, converting whatever format is found to RGB8.
    pub fn from_path(id: impl Into<String>, path: impl AsRef<Path>) -> Result<Self, CoreError> {
        let path = path.as_ref();
        let dynamic = image::open(path).map_err(|source| CoreError::ImageLoad {
            path: path.to_path_buf(),
            source,
        })?;
        let mut scene = Self::new(id, dynamic.to_rgb8())?;
        scene.source_path = Some(path.to_path_buf());
        Ok(scene)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn width(&self) -> u32 {
        self.pixels.width()
    }

    pub fn height(&self) -> u32 {
        self.pixels.height()
    }

    pub fn pixels(&self) -> &RgbImage {
        &self.pixels
    }

    pub fn source_path(&self) -> Option<&Path> {
        self.source_path.as_deref()
    }

    pub fn contains(&self, p: PixelPoint) -> bool {
        p.in_bounds(self.width(), self.height())
    }

    /// Geometric center of the raster.
    pub fn center(&self) -> PixelPoint {
        PixelPoint::new(f64::from(self.width()) / 2.0, f64::from(self.height()) / 2.0)
            .expect("image dimensions are finite")
    }

    /// PNG-encode the raster. Deterministic for identical pixels.
    pub fn to_png_bytes(&self) -> Result<Vec<u8>, CoreError> {
        let mut out = std::io::Cursor::new(Vec::new());
        image::DynamicImage::ImageRgb8(self.pixels.clone())
            .write_to(&mut out, image::ImageFormat::Png)
            .map_err(|source| CoreError::ImageEncode {
                id: self.id.clone(),
                source,
            })?;
        Ok(out.into_inner())
    }

    /// Copy with a different id, keeping pixels and provenance.
    pub fn with_id(&self, id: impl Into<String>) -> Result<Self, CoreError> {
        let mut copy = Self::new(id, self.pixels.clone())?;
        copy.source_path = self.source_path.clone();
        Ok(copy)
    }
}

impl std::fmt::Debug for SceneImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SceneImage")
            .field("id", &self.id)
            .field("width", &self.width())
            .field("height", &self.height())
            .field("source_path", &self.source_path)
            .finish()
    }
}
