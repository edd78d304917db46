use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

const SAFE_INTEGER: u64 = 1 << 53;

/// Integers outside the 53-bit safe range become strings.
fn clamp_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => {
            let unsafe_int = match (n.as_u64(), n.as_i64()) {
                (Some(u), _) => u > SAFE_INTEGER,
                (None, Some(i)) => i.unsigned_abs() > SAFE_INTEGER,
                _ => false,
            };
            if unsafe_int {
                Value::String(n.to_string())
            } else {
                Value::Number(n)
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(clamp_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, clamp_numbers(v))).collect()),
        other => other,
    }
}

/// Serializes through `Value` so that object keys come out sorted.
pub fn render<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let v = clamp_numbers(serde_json::to_value(value)?);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// `u128` counts as JSON numbers when small enough.
pub fn count(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) if v <= SAFE_INTEGER => Value::from(v),
        _ => Value::String(n.to_string()),
    }
}
