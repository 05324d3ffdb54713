//! Small helpers for the JSON report fragments.
//!
//! Lattice counts are big integers; they are emitted as JSON numbers while
//! they fit in `i64` and as decimal strings beyond that, so reports stay
//! loss-free and byte-stable.

use num::bigint::BigInt;
use num::ToPrimitive;
use serde_json::Value;

pub fn int_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(b.to_string()),
    }
}
