//! Keypoint rendering onto scene images.

use image::Rgb;
use mission_core::raster::{draw_text, fill_rect, filled_circle, rect_outline, text_width, GLYPH_H};
use mission_core::{LabeledKeypoint, SceneImage};

/// Rendering style for markers, boxes and labels.
#[derive(Debug, Clone, Copy)]
pub struct MarkerStyle {
    pub radius: u32,
    pub marker: Rgb<u8>,
    pub box_color: Rgb<u8>,
    pub text: Rgb<u8>,
    pub text_bg: Rgb<u8>,
}

impl Default for MarkerStyle {
    fn default() -> Self {
        Self {
            radius: 4,
            marker: Rgb([220, 20, 60]),
            box_color: Rgb([220, 20, 60]),
            text: Rgb([255, 255, 255]),
            text_bg: Rgb([0, 0, 0]),
        }
    }
}

/// Render keypoints onto a copy of the image: a filled marker per point,
/// the bounding box outline when present, and the label text beside the
/// marker on a contrasting strip. The input image is never mutated and
/// dimensions are preserved; an empty keypoint list returns a
/// pixel-identical copy.
pub fn visualize_keypoints(
    image: &SceneImage,
    keypoints: &[LabeledKeypoint],
    style: &MarkerStyle,
) -> SceneImage {
    let mut pixels = image.pixels().clone();
    for kp in keypoints {
        let cx = kp.point().x().round() as i64;
        let cy = kp.point().y().round() as i64;
        if let Some(bbox) = kp.bbox() {
            rect_outline(
                &mut pixels,
                bbox.x1().round() as i64,
                bbox.y1().round() as i64,
                bbox.x2().round() as i64,
                bbox.y2().round() as i64,
                style.box_color,
            );
        }
        filled_circle(&mut pixels, cx, cy, style.radius, style.marker);

        let label_x = cx + i64::from(style.radius) + 2;
        let label_y = (cy - i64::from(GLYPH_H / 2)).max(0);
        fill_rect(
            &mut pixels,
            label_x,
            label_y,
            text_width(kp.label()) + 2,
            GLYPH_H + 2,
            style.text_bg,
        );
        draw_text(&mut pixels, label_x + 1, label_y + 1, kp.label(), style.text);
    }
    SceneImage::new(format!("{}:annotated", image.id()), pixels)
        .expect("copy of a valid image stays valid")
}

/// Pixel rectangle that rendering one keypoint may touch:
/// `(x0, y0, x1, y1)` inclusive. Tests bound pixel diffs with this.
pub fn touch_region(kp: &LabeledKeypoint, style: &MarkerStyle) -> (i64, i64, i64, i64) {
    let cx = kp.point().x().round() as i64;
    let cy = kp.point().y().round() as i64;
    let r = i64::from(style.radius);
    let mut x0 = cx - r;
    let mut y0 = (cy - i64::from(GLYPH_H / 2)).max(0).min(cy - r);
    let mut x1 = cx + r + 2 + i64::from(text_width(kp.label()) + 2);
    let mut y1 = (cy + r).max((cy - i64::from(GLYPH_H / 2)).max(0) + i64::from(GLYPH_H) + 1);
    if let Some(b) = kp.bbox() {
        x0 = x0.min(b.x1().round() as i64);
        y0 = y0.min(b.y1().round() as i64);
        x1 = x1.max(b.x2().round() as i64);
        y1 = y1.max(b.y2().round() as i64);
    }
    (x0, y0, x1, y1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::RgbImage;
    use mission_core::{BoundingBox, PixelPoint};

    fn scene() -> SceneImage {
        let mut img = RgbImage::new(100, 100);
        for (x, y, px) in img.enumerate_pixels_mut() {
            *px = image::Rgb([(x % 251) as u8, (y % 241) as u8, 30]);
        }
        SceneImage::new("scene", img).unwrap()
    }

    fn kp(x: f64, y: f64) -> LabeledKeypoint {
        LabeledKeypoint::new("x", PixelPoint::new(x, y).unwrap(), None, None).unwrap()
    }

    #[test]
    fn empty_list_returns_pixel_identical_copy() {
        let input = scene();
        let out = visualize_keypoints(&input, &[], &MarkerStyle::default());
        assert_eq!(input.pixels().as_raw(), out.pixels().as_raw());
        assert_eq!((out.width(), out.height()), (input.width(), input.height()));
    }

    #[test]
    fn single_marker_changes_only_its_neighborhood() {
        let input = scene();
        let style = MarkerStyle::default();
        let keypoint = kp(10.0, 10.0);
        let out = visualize_keypoints(&input, &[keypoint.clone()], &style);
        let (x0, y0, x1, y1) = touch_region(&keypoint, &style);
        let mut changed = 0;
        for (x, y, px) in out.pixels().enumerate_pixels() {
            if input.pixels().get_pixel(x, y) != px {
                changed += 1;
                let (x, y) = (i64::from(x), i64::from(y));
                assert!(
                    x >= x0 && x <= x1 && y >= y0 && y <= y1,
                    "change at ({x},{y}) outside expected region"
                );
            }
        }
        assert!(changed > 0);
    }

    #[test]
    fn bbox_edges_carry_box_color() {
        let input = scene();
        let style = MarkerStyle::default();
        let bbox = BoundingBox::new(20.0, 30.0, 60.0, 70.0).unwrap();
        let keypoint =
            LabeledKeypoint::new("barn", PixelPoint::new(40.0, 50.0).unwrap(), Some(bbox), None)
                .unwrap();
        let out = visualize_keypoints(&input, &[keypoint], &style);
        // one probe pixel per edge
        for (x, y) in [(40, 30), (40, 70), (20, 50), (60, 50)] {
            assert_eq!(*out.pixels().get_pixel(x, y), style.box_color, "edge at ({x},{y})");
        }
    }

    #[test]
    fn input_is_never_mutated_and_dimensions_survive() {
        let input = scene();
        let before = input.pixels().as_raw().clone();
        let out = visualize_keypoints(&input, &[kp(50.0, 50.0)], &MarkerStyle::default());
        assert_eq!(input.pixels().as_raw(), &before);
        assert_eq!((out.width(), out.height()), (100, 100));
    }
}
