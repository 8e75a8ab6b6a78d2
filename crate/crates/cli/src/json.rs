//! JSON helpers: portable integers and the report envelope.

use serde::{Serialize, Serializer};

use crate::config::ConfigEcho;

/// Largest integer that every JSON reader represents exactly.
pub const SAFE_INT: u128 = 1 << 53;

/// An integer written as a number below `2^53` and as a decimal string otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Int(pub u128);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 < SAFE_INT {
            s.serialize_u64(self.0 as u64)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

/// Top-level shape of every JSON artifact. Field order is the key order.
#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub config: ConfigEcho,
    pub results: T,
    pub anchors: Vec<String>,
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
