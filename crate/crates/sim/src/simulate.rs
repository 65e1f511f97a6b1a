use std::collections::BTreeMap;

use image::codecs::gif::{GifEncoder, Repeat};
use image::{Delay, Frame};
use mission_core::{LabeledKeypoint, PixelPoint, SceneImage};

use crate::annotate::annotate_frame;
use crate::config::SimConfig;
use crate::error::SimError;
use crate::path::interpolate_path;
use crate::view::crop_view;

/// One simulated camera view: the annotated crop, its scene-space center,
/// and the label of the waypoint being approached.
#[derive(Debug, Clone)]
pub struct FrameRecord {
    frame_id: String,
    crop: SceneImage,
    center: PixelPoint,
    label: String,
}

impl FrameRecord {
    pub fn frame_id(&self) -> &str {
        &self.frame_id
    }

    pub fn crop(&self) -> &SceneImage {
        &self.crop
    }

    pub fn center(&self) -> PixelPoint {
        self.center
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// The simulator's output: frames keyed by id plus the encoded GIF trace.
pub struct SimOutput {
    pub frames: BTreeMap<String, FrameRecord>,
    pub animation: Vec<u8>,
}

/// Fly the labeled waypoints over the scene.
///
/// Positions come from [`interpolate_path`]; each position yields a
/// cropped, resized, label-annotated frame. Frame ids are zero-padded
/// sequence numbers ("0000", "0001", ...) and the GIF contains exactly
/// one animation frame per record at the configured frame rate.
pub fn uav_simulation(
    scene: &SceneImage,
    labeled_points: &[LabeledKeypoint],
    config: &SimConfig,
) -> Result<SimOutput, SimError> {
    let config = config.validated()?;
    let samples = interpolate_path(labeled_points, &config)?;

    let mut frames = BTreeMap::new();
    let mut gif_bytes = Vec::new();
    {
        let mut encoder = GifEncoder::new_with_speed(&mut gif_bytes, 10);
        encoder
            .set_repeat(Repeat::Infinite)
            .map_err(|e| SimError::GifEncode(e.to_string()))?;
        let delay = frame_delay(config.frame_rate);
        for (i, sample) in samples.iter().enumerate() {
            let frame_id = format!("{i:04}");
            let center = sample.position.clamped(scene.width(), scene.height());
            let view = crop_view(scene, center, &config);
            let annotated = annotate_frame(&view, &sample.label)?;
            let crop = annotated.with_id(format!("frame-{frame_id}"))?;

            let rgba = image::DynamicImage::ImageRgb8(crop.pixels().clone()).to_rgba8();
            encoder
                .encode_frame(Frame::from_parts(rgba, 0, 0, delay))
                .map_err(|e| SimError::GifEncode(e.to_string()))?;

            frames.insert(
                frame_id.clone(),
                FrameRecord {
                    frame_id,
                    crop,
                    center,
                    label: sample.label.clone(),
                },
            );
        }
    }
    Ok(SimOutput {
        frames,
        animation: gif_bytes,
    })
}

fn frame_delay(fps: f64) -> Delay {
    // numerator/denominator form keeps fractional rates exact enough
    let denom = (fps * 1000.0).round().max(1.0) as u32;
    Delay::from_numer_denom_ms(1_000_000, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Density;
    use image::AnimationDecoder;
    use image::RgbImage;

    fn scene() -> SceneImage {
        let mut img = RgbImage::new(128, 128);
        for (x, y, px) in img.enumerate_pixels_mut() {
            *px = image::Rgb([x as u8, y as u8, (x ^ y) as u8]);
        }
        SceneImage::new("scene", img).unwrap()
    }

    fn kp(label: &str, x: f64, y: f64) -> LabeledKeypoint {
        LabeledKeypoint::new(label, PixelPoint::new(x, y).unwrap(), None, None).unwrap()
    }

    fn cfg() -> SimConfig {
        SimConfig {
            density: Density::StepsPerSegment(5),
            crop_size: 32,
            output_size: 32,
            frame_rate: 5.0,
        }
    }

    #[test]
    fn two_waypoints_five_steps_give_six_frames() {
        let out = uav_simulation(&scene(), &[kp("a", 10.0, 10.0), kp("b", 60.0, 10.0)], &cfg())
            .unwrap();
        assert_eq!(out.frames.len(), 6);
        let ids: Vec<&str> = out.frames.keys().map(String::as_str).collect();
        assert_eq!(ids, vec!["0000", "0001", "0002", "0003", "0004", "0005"]);

        let decoder =
            image::codecs::gif::GifDecoder::new(std::io::Cursor::new(&out.animation)).unwrap();
        assert_eq!(decoder.into_frames().count(), 6);
    }

    #[test]
    fn single_waypoint_gives_one_frame_gif() {
        let out = uav_simulation(&scene(), &[kp("solo", 64.0, 64.0)], &cfg()).unwrap();
        assert_eq!(out.frames.len(), 1);
        let decoder =
            image::codecs::gif::GifDecoder::new(std::io::Cursor::new(&out.animation)).unwrap();
        assert_eq!(decoder.into_frames().count(), 1);
    }

    #[test]
    fn frame_centers_match_interpolated_positions() {
        let waypoints = [kp("a", 10.0, 10.0), kp("b", 60.0, 10.0)];
        let out = uav_simulation(&scene(), &waypoints, &cfg()).unwrap();
        let samples = interpolate_path(&waypoints, &cfg()).unwrap();
        // frame "0003" center equals the 4th interpolated position exactly
        assert_eq!(out.frames["0003"].center(), samples[3].position);
        for (i, s) in samples.iter().enumerate() {
            assert_eq!(out.frames[&format!("{i:04}")].center(), s.position);
        }
    }

    #[test]
    fn simulation_is_bit_deterministic() {
        let waypoints = [kp("a", 10.0, 10.0), kp("b", 100.0, 90.0), kp("c", 30.0, 110.0)];
        let one = uav_simulation(&scene(), &waypoints, &cfg()).unwrap();
        let two = uav_simulation(&scene(), &waypoints, &cfg()).unwrap();
        assert_eq!(one.animation, two.animation);
        assert_eq!(one.frames.len(), two.frames.len());
        for (id, f) in &one.frames {
            let g = &two.frames[id];
            assert_eq!(f.center(), g.center());
            assert_eq!(f.label(), g.label());
            assert_eq!(f.crop().pixels().as_raw(), g.crop().pixels().as_raw());
        }
    }

    #[test]
    fn empty_waypoints_error() {
        assert!(matches!(
            uav_simulation(&scene(), &[], &cfg()),
            Err(SimError::EmptyPath)
        ));
    }

    #[test]
    fn frames_have_configured_output_size() {
        let cfg = SimConfig {
            density: Density::StepsPerSegment(2),
            crop_size: 48,
            output_size: 64,
            frame_rate: 2.0,
        };
        let out = uav_simulation(&scene(), &[kp("a", 0.0, 0.0), kp("b", 127.0, 127.0)], &cfg)
            .unwrap();
        for f in out.frames.values() {
            assert_eq!((f.crop().width(), f.crop().height()), (64, 64));
        }
    }
}
