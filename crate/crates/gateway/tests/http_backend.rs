//! HTTP backend tests against a local single-purpose server.

use std::io::{Read, Write};
use std::net::TcpListener;
use std::sync::Arc;
use std::thread::JoinHandle;
use std::time::Duration;

use image::RgbImage;
use mission_core::SceneImage;
use model_gateway::{
    GatewayError, HttpBackend, HttpConfig, ModelBackend, ModelMessage, ModelRequest, RetryPolicy,
    Role,
};

fn completion_body(content: &str) -> String {
    serde_json::json!({
        "choices": [{"message": {"role": "assistant", "content": content}}]
    })
    .to_string()
}

/// Accept `plan.len()` connections; answer connection k with status/body
/// `plan[k]`. Returns the captured request bodies.
fn serve(listener: TcpListener, plan: Vec<(u16, String)>) -> JoinHandle<Vec<String>> {
    std::thread::spawn(move || {
        let mut bodies = Vec::new();
        for (status, body) in plan {
            let (mut stream, _) = listener.accept().unwrap();
            let mut raw = Vec::new();
            let mut buf = [0u8; 4096];
            let header_end = loop {
                let n = stream.read(&mut buf).unwrap();
                raw.extend_from_slice(&buf[..n]);
                if let Some(pos) = raw.windows(4).position(|w| w == b"\r\n\r\n") {
                    break pos + 4;
                }
            };
            let headers = String::from_utf8_lossy(&raw[..header_end]).to_string();
            let content_length: usize = headers
                .lines()
                .find_map(|l| {
                    let (k, v) = l.split_once(':')?;
                    k.eq_ignore_ascii_case("content-length")
                        .then(|| v.trim().parse().ok())?
                })
                .unwrap_or(0);
            while raw.len() < header_end + content_length {
                let n = stream.read(&mut buf).unwrap();
                raw.extend_from_slice(&buf[..n]);
            }
            bodies.push(String::from_utf8_lossy(&raw[header_end..]).to_string());
            let resp = format!(
                "HTTP/1.1 {status} X\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{}",
                body.len(),
                body
            );
            stream.write_all(resp.as_bytes()).unwrap();
        }
        bodies
    })
}

fn backend_for(addr: std::net::SocketAddr) -> HttpBackend {
    let mut config = HttpConfig::new(format!("http://{addr}"), "GATEWAY_TEST_NO_SUCH_VAR");
    config.retry = RetryPolicy {
        max_retries: 2,
        base_delay: Duration::from_millis(5),
    };
    config.timeout = Duration::from_secs(5);
    HttpBackend::new(config)
}

fn text_request(temperature: f64) -> ModelRequest {
    ModelRequest::new(
        vec![ModelMessage::text(Role::User, "hello")],
        temperature,
        64,
        "test-model",
    )
    .unwrap()
}

#[test]
fn temperature_is_transmitted_bit_exact() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let server = serve(listener, vec![(200, completion_body("ok"))]);

    let backend = backend_for(addr);
    let resp = backend.complete(&text_request(0.5)).unwrap();
    assert_eq!(resp.text, "ok");

    let bodies = server.join().unwrap();
    let body: serde_json::Value = serde_json::from_str(&bodies[0]).unwrap();
    // bit-exact: the wire value must round-trip to exactly 0.5
    assert_eq!(body["temperature"], serde_json::json!(0.5));
    assert_eq!(body["model"], serde_json::json!("test-model"));
}

#[test]
fn image_parts_become_inline_base64_data_urls() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let server = serve(listener, vec![(200, completion_body("seen"))]);

    let image = Arc::new(SceneImage::new("scene-1", RgbImage::new(4, 4)).unwrap());
    let request = ModelRequest::new(
        vec![ModelMessage::user_with_image("describe", image)],
        0.5,
        64,
        "test-model",
    )
    .unwrap();

    let backend = backend_for(addr);
    backend.complete(&request).unwrap();

    let bodies = server.join().unwrap();
    assert!(bodies[0].contains("data:image/png;base64,"));
    let body: serde_json::Value = serde_json::from_str(&bodies[0]).unwrap();
    let parts = body["messages"][0]["content"].as_array().unwrap();
    assert_eq!(parts[0]["type"], serde_json::json!("text"));
    assert_eq!(parts[1]["type"], serde_json::json!("image_url"));
}

#[test]
fn transient_failures_are_retried_until_success() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let server = serve(
        listener,
        vec![
            (500, "{}".to_string()),
            (503, "{}".to_string()),
            (200, completion_body("recovered")),
        ],
    );

    let backend = backend_for(addr);
    let resp = backend.complete(&text_request(0.7)).unwrap();
    assert_eq!(resp.text, "recovered");
    server.join().unwrap();
}

#[test]
fn auth_rejection_is_immediate_and_typed() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let server = serve(listener, vec![(401, "{}".to_string())]);

    let backend = backend_for(addr);
    let err = backend.complete(&text_request(0.5)).unwrap_err();
    assert!(matches!(err, GatewayError::AuthRejected { status: 401, .. }));
    server.join().unwrap();
}

#[test]
fn unreachable_endpoint_errors_after_retries() {
    // bind then drop to get a port with no listener
    let addr = {
        let l = TcpListener::bind("127.0.0.1:0").unwrap();
        l.local_addr().unwrap()
    };
    let backend = backend_for(addr);
    let err = backend.complete(&text_request(0.5)).unwrap_err();
    match err {
        GatewayError::EndpointUnreachable { request_id, .. } => {
            assert!(request_id.starts_with("req-"));
        }
        other => panic!("expected EndpointUnreachable, got {other:?}"),
    }
}
