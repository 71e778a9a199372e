//! Pins the HTTP wire protocol to the fixtures under
//! `tests/fixtures/protocol/` (the same ones documented in
//! `docs/protocol.md`). A capturing transport records exactly what the
//! clients send; responses are replayed from the fixture files.

use std::path::Path;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use popcmt_core::backends::{
    BackendConfig, BackendKind, EmbedderBackend, GenParams, GeneratorBackend, HttpChatBackend,
    HttpEmbedBackend, HttpResponse, Transport,
};

fn fixture(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/protocol")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap())
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

struct CapturingTransport {
    reply: String,
    captured: Arc<Mutex<Vec<serde_json::Value>>>,
}

impl CapturingTransport {
    fn new(reply: String) -> (Self, Arc<Mutex<Vec<serde_json::Value>>>) {
        let captured = Arc::new(Mutex::new(Vec::new()));
        (
            CapturingTransport {
                reply,
                captured: captured.clone(),
            },
            captured,
        )
    }
}

impl Transport for CapturingTransport {
    fn post_json(
        &self,
        _url: &str,
        _token: Option<&str>,
        body: &serde_json::Value,
        _timeout: Duration,
    ) -> popcmt_core::Result<HttpResponse> {
        self.captured.lock().unwrap().push(body.clone());
        Ok(HttpResponse {
            status: 200,
            body: self.reply.clone(),
        })
    }
}

fn http_cfg(kind: BackendKind, model: &str) -> BackendConfig {
    let mut cfg = BackendConfig::stub_template();
    cfg.kind = kind;
    cfg.endpoint = Some("https://gateway.invalid/v1".into());
    cfg.model_name = Some(model.into());
    cfg
}

#[test]
fn chat_request_matches_the_pinned_fixture() {
    let expected_request = fixture("chat_request.json");
    let response = fixture("chat_response.json");
    let (transport, captured) = CapturingTransport::new(response.to_string());
    let backend = HttpChatBackend::with_transport(
        &http_cfg(BackendKind::HttpChat, "example-chat-model"),
        Box::new(transport),
    )
    .unwrap();

    let params = GenParams {
        temperature: 0.7,
        max_tokens: 256,
        seed: Some(42),
    };
    let reply = backend.complete("Say hello.", &params).unwrap();
    assert_eq!(reply, "Hello there.");

    let sent = captured.lock().unwrap();
    assert_eq!(sent.len(), 1);
    assert_eq!(sent[0], expected_request, "chat request drifted from docs/protocol.md");
}

#[test]
fn embed_request_matches_the_pinned_fixture() {
    let expected_request = fixture("embed_request.json");
    let response = fixture("embed_response.json");
    let (transport, captured) = CapturingTransport::new(response.to_string());
    let backend = HttpEmbedBackend::with_transport(
        &http_cfg(BackendKind::HttpEmbed, "example-embed-model"),
        Box::new(transport),
    )
    .unwrap();

    let vectors = backend
        .embed(&["first text".to_string(), "second text".to_string()])
        .unwrap();
    assert_eq!(vectors, vec![vec![0.1, 0.2, 0.3], vec![0.4, 0.5, 0.6]]);
    assert_eq!(backend.dimension(), 3);

    let sent = captured.lock().unwrap();
    assert_eq!(sent.len(), 1);
    assert_eq!(sent[0], expected_request, "embed request drifted from docs/protocol.md");
}
