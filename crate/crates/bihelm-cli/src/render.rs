//! Deterministic output helpers: floats are quantized to 15 significant
//! digits before formatting, and JSON objects serialize with sorted keys
//! (serde_json's default map), so identical inputs yield identical bytes.

use serde_json::Value;

/// Round to 15 significant digits through a decimal round-trip.
pub fn sig15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// JSON number carrying the quantized value.
pub fn fnum(x: f64) -> Value {
    Value::from(sig15(x))
}

/// Shortest decimal form of the quantized value, for text and CSV.
/// Magnitudes outside [1e-4, 1e16) switch to scientific notation.
pub fn fmt_f(x: f64) -> String {
    let q = sig15(x);
    if q != 0.0 && q.is_finite() && !(1e-4..1e16).contains(&q.abs()) {
        format!("{q:e}")
    } else {
        format!("{q}")
    }
}

/// Serialize a JSON document; pretty, trailing newline.
pub fn emit_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serializes");
    s.push('\n');
    s
}
