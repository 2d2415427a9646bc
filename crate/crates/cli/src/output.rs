//! Deterministic JSON: compact layout, sorted object keys, and every float
//! printed with 17 significant digits.

use std::io;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::{json, Value};

struct FixedFloat;

impl Formatter for FixedFloat {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn write_null<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        CompactFormatter.write_null(writer)
    }
}

/// Serializes through [`Value`] (which sorts keys) and then with fixed floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let tree = serde_json::to_value(value).expect("output types serialize");
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloat);
    tree.serialize(&mut ser)
        .expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}
