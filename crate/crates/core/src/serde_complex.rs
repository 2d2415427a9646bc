//! `{"re": .., "im": ..}` encoding for complex values.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::Serializer;

pub fn serialize<S: Serializer>(z: &Complex64, serializer: S) -> Result<S::Ok, S::Error> {
    let mut s = serializer.serialize_struct("Complex", 2)?;
    s.serialize_field("re", &z.re)?;
    s.serialize_field("im", &z.im)?;
    s.end()
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(
        z: &Option<Complex64>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match z {
            Some(z) => super::serialize(z, serializer),
            None => serializer.serialize_none(),
        }
    }
}
