use image::Rgb;
use mission_core::raster::{draw_text, fill_rect, text_width, GLYPH_H};
use mission_core::SceneImage;

use crate::error::SimError;

const PAD: u32 = 2;
const STRIP_BG: Rgb<u8> = Rgb([0, 0, 0]);
const STRIP_FG: Rgb<u8> = Rgb([255, 255, 255]);

/// Stamp the segment label onto a copy of the crop: white text over a
/// black strip anchored to the top-left corner. Deterministic — the same
/// crop and label always produce bit-identical output.
pub fn annotate_frame(crop: &SceneImage, label: &str) -> Result<SceneImage, SimError> {
    if label.is_empty() {
        return Err(SimError::EmptyLabel);
    }
    let mut pixels = crop.pixels().clone();
    let strip_w = (text_width(label) + 2 * PAD).min(pixels.width());
    let strip_h = (GLYPH_H + 2 * PAD).min(pixels.height());
    fill_rect(&mut pixels, 0, 0, strip_w, strip_h, STRIP_BG);
    draw_text(&mut pixels, i64::from(PAD), i64::from(PAD), label, STRIP_FG);
    Ok(SceneImage::new(format!("{}:label", crop.id()), pixels)?)
}

/// Pixel extent of the label strip for a given label, `(width, height)`.
/// Tests use this to bound where annotation may touch the image.
pub fn strip_extent(label: &str) -> (u32, u32) {
    (text_width(label) + 2 * PAD, GLYPH_H + 2 * PAD)
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::RgbImage;

    fn crop() -> SceneImage {
        let mut img = RgbImage::new(64, 64);
        for (x, y, px) in img.enumerate_pixels_mut() {
            *px = image::Rgb([x as u8, y as u8, 77]);
        }
        SceneImage::new("crop", img).unwrap()
    }

    #[test]
    fn changes_confined_to_strip_region() {
        let input = crop();
        let out = annotate_frame(&input, "lake").unwrap();
        let (sw, sh) = strip_extent("lake");
        for (x, y, px) in out.pixels().enumerate_pixels() {
            if input.pixels().get_pixel(x, y) != px {
                assert!(x < sw && y < sh, "unexpected change at ({x},{y})");
            }
        }
        // and something did change
        assert_ne!(input.pixels().as_raw(), out.pixels().as_raw());
    }

    #[test]
    fn annotation_is_deterministic() {
        let input = crop();
        let a = annotate_frame(&input, "road").unwrap();
        let b = annotate_frame(&input, "road").unwrap();
        assert_eq!(a.pixels().as_raw(), b.pixels().as_raw());
    }

    #[test]
    fn empty_label_is_rejected() {
        assert!(matches!(annotate_frame(&crop(), ""), Err(SimError::EmptyLabel)));
    }

    #[test]
    fn input_is_not_mutated() {
        let input = crop();
        let before = input.pixels().as_raw().clone();
        let _ = annotate_frame(&input, "farm").unwrap();
        assert_eq!(input.pixels().as_raw(), &before);
    }
}
