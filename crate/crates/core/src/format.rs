//! Float formatting shared by the JSON and CSV writers: 17 significant digits.

use serde::de::Deserializer;
use serde::ser::{Error as _, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

/// `v` in scientific notation with 17 significant digits.
pub fn sig17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

/// Serializes as a bare JSON number with 17 significant digits; non-finite values become `null`.
pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !v.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(sig17(*v)).map_err(S::Error::custom)?;
    raw.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super")] f64);

    #[test]
    fn seventeen_digits_round_trip() {
        for v in [0.1, -2.0 / 3.0, 1e-300, 123456789.12345679, std::f64::consts::PI] {
            let text = serde_json::to_string(&Wrap(v)).unwrap();
            let back: Wrap = serde_json::from_str(&text).unwrap();
            assert_eq!(back.0.to_bits(), v.to_bits(), "{text}");
            assert_eq!(sig17(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
        assert_eq!(serde_json::to_string(&Wrap(f64::NAN)).unwrap(), "null");
        assert!(serde_json::from_str::<Wrap>("null").unwrap().0.is_nan());
        assert_eq!(sig17(1.5), "1.5000000000000000e0");
    }
}
