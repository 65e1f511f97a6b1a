//! View cropping and the crop/scene coordinate mapping.

use mission_core::{PixelPoint, SceneImage};

use crate::config::SimConfig;

/// A square scene-space window, pre-resize. `size` may be smaller than
/// the configured crop when the scene itself is smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CropWindow {
    pub origin_x: u32,
    pub origin_y: u32,
    pub size: u32,
}

/// Compute the crop window for a view centered at `center`.
///
/// The window is `crop_size` on a side, centered at `round(center)`;
/// near the borders it shifts inward so it stays fully inside the scene
/// (every frame holds real scene pixels — no padding).
pub fn crop_window(scene_w: u32, scene_h: u32, center: PixelPoint, crop_size: u32) -> CropWindow {
    let size = crop_size.min(scene_w).min(scene_h);
    let half = i64::from(size / 2);
    let cx = center.x().round() as i64;
    let cy = center.y().round() as i64;
    let origin_x = (cx - half).clamp(0, i64::from(scene_w - size)) as u32;
    let origin_y = (cy - half).clamp(0, i64::from(scene_h - size)) as u32;
    CropWindow {
        origin_x,
        origin_y,
        size,
    }
}

/// Extract the view around `center` and resize it to the configured
/// output size. The input scene is left untouched.
pub fn crop_view(scene: &SceneImage, center: PixelPoint, config: &SimConfig) -> SceneImage {
    let window = crop_window(scene.width(), scene.height(), center, config.crop_size);
    let cropped = image::imageops::crop_imm(
        scene.pixels(),
        window.origin_x,
        window.origin_y,
        window.size,
        window.size,
    )
    .to_image();
    let resized = if window.size == config.output_size {
        cropped
    } else {
        image::imageops::resize(
            &cropped,
            config.output_size,
            config.output_size,
            image::imageops::FilterType::Triangle,
        )
    };
    let id = format!(
        "{}:view:{}x{}@{},{}",
        scene.id(),
        window.size,
        window.size,
        window.origin_x,
        window.origin_y
    );
    SceneImage::new(id, resized).expect("crop dimensions are positive")
}

/// Map an in-crop coordinate (in output-image pixels) back to scene
/// coordinates for the given window.
pub fn crop_to_scene(in_crop: PixelPoint, window: &CropWindow, output_size: u32) -> PixelPoint {
    let scale = f64::from(window.size) / f64::from(output_size);
    PixelPoint::new(
        f64::from(window.origin_x) + in_crop.x() * scale,
        f64::from(window.origin_y) + in_crop.y() * scale,
    )
    .expect("finite affine image of a finite point")
}

/// Inverse of [`crop_to_scene`].
pub fn scene_to_crop(scene_pt: PixelPoint, window: &CropWindow, output_size: u32) -> PixelPoint {
    let scale = f64::from(window.size) / f64::from(output_size);
    PixelPoint::new(
        (scene_pt.x() - f64::from(window.origin_x)) / scale,
        (scene_pt.y() - f64::from(window.origin_y)) / scale,
    )
    .expect("finite affine image of a finite point")
}
