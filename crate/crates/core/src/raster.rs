//! Small deterministic drawing helpers shared by the renderer and the
//! simulator: filled shapes, outlines, and 8x8 bitmap text.

use font8x8::legacy::BASIC_LEGACY;
use image::{Rgb, RgbImage};

/// Glyph cell width in pixels.
pub const GLYPH_W: u32 = 8;
/// Glyph cell height in pixels.
pub const GLYPH_H: u32 = 8;

/// Fill an axis-aligned rectangle, silently clipped to the image.
pub fn fill_rect(img: &mut RgbImage, x: i64, y: i64, w: u32, h: u32, color: Rgb<u8>) {
    let (iw, ih) = (i64::from(img.width()), i64::from(img.height()));
    let x0 = x.max(0);
    let y0 = y.max(0);
    let x1 = (x + i64::from(w)).min(iw);
    let y1 = (y + i64::from(h)).min(ih);
    for yy in y0..y1 {
        for xx in x0..x1 {
            img.put_pixel(xx as u32, yy as u32, color);
        }
    }
}

/// One-pixel rectangle outline, clipped to the image.
pub fn rect_outline(img: &mut RgbImage, x0: i64, y0: i64, x1: i64, y1: i64, color: Rgb<u8>) {
    if x1 < x0 || y1 < y0 {
        return;
    }
    fill_rect(img, x0, y0, (x1 - x0 + 1) as u32, 1, color);
    fill_rect(img, x0, y1, (x1 - x0 + 1) as u32, 1, color);
    fill_rect(img, x0, y0, 1, (y1 - y0 + 1) as u32, color);
    fill_rect(img, x1, y0, 1, (y1 - y0 + 1) as u32, color);
}

/// Filled disc centered on `(cx, cy)`, clipped to the image.
pub fn filled_circle(img: &mut RgbImage, cx: i64, cy: i64, radius: u32, color: Rgb<u8>) {
    let r = i64::from(radius);
    let r2 = r * r;
    for dy in -r..=r {
        for dx in -r..=r {
            if dx * dx + dy * dy <= r2 {
                let (x, y) = (cx + dx, cy + dy);
                if x >= 0 && y >= 0 && (x as u32) < img.width() && (y as u32) < img.height() {
                    img.put_pixel(x as u32, y as u32, color);
                }
            }
        }
    }
}

/// Pixel width of `text` when rendered with the bitmap font.
pub fn text_width(text: &str) -> u32 {
    text.chars().count() as u32 * GLYPH_W
}

/// Draw `text` with the 8x8 bitmap font, top-left corner at `(x, y)`.
/// Non-ASCII characters render as `?`. Clipped to the image.
pub fn draw_text(img: &mut RgbImage, x: i64, y: i64, text: &str, color: Rgb<u8>) {
    let mut cx = x;
    for ch in text.chars() {
        let code = if ch.is_ascii() { ch as usize } else { b'?' as usize };
        let glyph = BASIC_LEGACY[code];
        for (row, bits) in glyph.iter().enumerate() {
            for col in 0..GLYPH_W {
                if bits & (1 << col) != 0 {
                    let (px, py) = (cx + i64::from(col), y + row as i64);
                    if px >= 0 && py >= 0 && (px as u32) < img.width() && (py as u32) < img.height()
                    {
                        img.put_pixel(px as u32, py as u32, color);
                    }
                }
            }
        }
        cx += i64::from(GLYPH_W);
    }
}
