//! Run manifest embedded verbatim in every JSON output.

use serde_json::{json, Value};

/// Subcommand name, resolved flags, tool version, timestamp and seed
/// (null when the run is deterministic without one).
pub fn manifest(subcommand: &str, flags: Value, seed: Option<u64>) -> Value {
    json!({
        "subcommand": subcommand,
        "flags": flags,
        "version": env!("CARGO_PKG_VERSION"),
        "timestamp": chrono::Utc::now().to_rfc3339(),
        "seed": seed,
    })
}

/// Attach a manifest to a payload object.
pub fn with_manifest(manifest: Value, mut payload: Value) -> Value {
    if let Value::Object(ref mut map) = payload {
        map.insert("manifest".to_string(), manifest);
        payload
    } else {
        json!({ "manifest": manifest, "result": payload })
    }
}
