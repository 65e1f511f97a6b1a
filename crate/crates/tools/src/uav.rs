//! Flight-agent tools: simulation image reading, the flight simulation
//! itself, and per-frame fire detection.

use std::sync::Arc;

use agent_runtime::{ArgSpec, RuntimeError, ToolError, ToolRegistry, ToolSpec};
use flight_sim::uav_simulation;
use mission_core::LabeledKeypoint;
use model_gateway::ModelBackend;
use serde_json::{json, Value};

use crate::ama::final_answer_spec;
use crate::context::{FrameSet, MissionContext};
use crate::detect::{detect_and_display, CropGeometry};
use crate::error::ToolsError;

/// Build the flight agent's registry.
pub fn uav_registry(
    ctx: Arc<MissionContext>,
    gateway: Arc<dyn ModelBackend>,
) -> Result<ToolRegistry, RuntimeError> {
    let mut registry = ToolRegistry::new();

    {
        let ctx = Arc::clone(&ctx);
        registry.register(ToolSpec::new(
            "read_image_for_simulation",
            "Load an image from the simulation store and make it the current scene",
            vec![ArgSpec {
                name: "i".into(),
                semantic: "integer simulation index".into(),
                required: true,
            }],
            Arc::new(move |args: &Value| {
                let i = args
                    .get("i")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| ToolError::msg("argument 'i' must be an integer"))?;
                let image = ctx
                    .sim_store
                    .get(i)
                    .map_err(|e| ToolError::msg(e.to_string()))?;
                ctx.bind_scene(Arc::clone(&image));
                Ok(json!({
                    "image_id": image.id(),
                    "width": image.width(),
                    "height": image.height(),
                }))
            }),
        )?)?;
    }

    {
        let ctx = Arc::clone(&ctx);
        registry.register(ToolSpec::new(
            "uav_simulation",
            "Fly the waypoint sequence over the scene, collecting frames and a GIF trace",
            vec![
                ArgSpec {
                    name: "labeled_points".into(),
                    semantic: "waypoint list (defaults to the assigned task)".into(),
                    required: false,
                },
                ArgSpec {
                    name: "image_id".into(),
                    semantic: "image id (defaults to the assigned task's image)".into(),
                    required: false,
                },
            ],
            Arc::new(move |args: &Value| run_simulation_tool(&ctx, args)),
        )?)?;
    }

    {
        let ctx = Arc::clone(&ctx);
        let gateway = Arc::clone(&gateway);
        registry.register(ToolSpec::new(
            "detect_and_display",
            "Examine collected frames for fire and report scene-space locations",
            vec![ArgSpec {
                name: "frames_id".into(),
                semantic: "frame set id (defaults to the latest simulation)".into(),
                required: false,
            }],
            Arc::new(move |args: &Value| run_detection_tool(&ctx, gateway.as_ref(), args)),
        )?)?;
    }

    registry.register(final_answer_spec())?;
    Ok(registry)
}

fn run_simulation_tool(ctx: &MissionContext, args: &Value) -> Result<Value, ToolError> {
    let task = ctx.task();
    let image_id = args
        .get("image_id")
        .and_then(Value::as_str)
        .map(String::from)
        .or_else(|| task.as_ref().map(|t| t.image_id.clone()));
    let image = ctx
        .resolve_image(image_id.as_deref())
        .map_err(|e| ToolError::msg(e.to_string()))?;

    let waypoints: Vec<LabeledKeypoint> = match args.get("labeled_points") {
        Some(v) => serde_json::from_value(v.clone())
            .map_err(|e| ToolError::msg(format!("bad labeled_points argument: {e}")))?,
        None => match &task {
            Some(t) => t.waypoints.clone(),
            None => ctx.keypoints(),
        },
    };
    if waypoints.is_empty() {
        return Err(ToolError::msg("no waypoints available to fly"));
    }

    let output = uav_simulation(&image, &waypoints, &ctx.sim_config)
        .map_err(|e| ToolError::msg(e.to_string()))?;
    let frames_id = format!("sim-{}", ctx.frame_set_count());
    let frame_count = output.frames.len();
    let frame_ids: Vec<String> = output.frames.keys().cloned().collect();
    ctx.set_animation(output.animation);
    ctx.insert_frame_set(
        frames_id.clone(),
        FrameSet {
            frames: output.frames,
            scene_id: image.id().to_string(),
            scene_width: image.width(),
            scene_height: image.height(),
            config: ctx.sim_config,
        },
    );
    Ok(json!({
        "frames_id": frames_id,
        "frame_count": frame_count,
        "first_frame": frame_ids.first(),
        "last_frame": frame_ids.last(),
    }))
}

fn run_detection_tool(
    ctx: &MissionContext,
    gateway: &dyn ModelBackend,
    args: &Value,
) -> Result<Value, ToolError> {
    let set = match args.get("frames_id").and_then(Value::as_str) {
        Some(id) => ctx.frame_set(id).map_err(|e| ToolError::msg(e.to_string()))?,
        None => {
            ctx.latest_frame_set()
                .map(|(_, set)| set)
                .ok_or_else(|| ToolError::msg(ToolsError::EmptyFrames.to_string()))?
        }
    };
    let geometry = CropGeometry {
        crop_size: set.config.crop_size,
        output_size: set.config.output_size,
        scene_width: set.scene_width,
        scene_height: set.scene_height,
    };
    let results = detect_and_display(
        &set.frames,
        &geometry,
        gateway,
        &ctx.vision,
        ctx.clock.as_ref(),
    )
    .map_err(|e| ToolError::msg(e.to_string()))?;
    ctx.record_detections(results.clone());
    let fires = results.iter().filter(|r| r.fire_detected).count();
    Ok(json!({
        "detections": serde_json::to_value(&results).expect("results serialize"),
        "frames_examined": results.len(),
        "fires_found": fires,
    }))
}
