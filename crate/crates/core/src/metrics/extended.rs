use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Nonnegative real or `+inf`.
///
/// Serializes as a number, or as the string `"inf"` since JSON has no
/// infinity literal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedReal::Infinite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinite => None,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    pub fn exp(self) -> Self {
        self.map(f64::exp)
    }

    pub fn ln(self) -> Self {
        self.map(f64::ln)
    }

    pub fn sqrt(self) -> Self {
        self.map(f64::sqrt)
    }

    fn map(self, f: impl Fn(f64) -> f64) -> Self {
        match self {
            ExtendedReal::Finite(x) => ExtendedReal::Finite(f(x)),
            ExtendedReal::Infinite => ExtendedReal::Infinite,
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        if x == f64::INFINITY {
            ExtendedReal::Infinite
        } else {
            ExtendedReal::Finite(x)
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(x) => write!(f, "{x}"),
            ExtendedReal::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(x) => s.serialize_f64(*x),
            ExtendedReal::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtendedReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, x: f64) -> Result<ExtendedReal, E> {
                Ok(ExtendedReal::from(x))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> Result<ExtendedReal, E> {
                Ok(ExtendedReal::Finite(x as f64))
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> Result<ExtendedReal, E> {
                Ok(ExtendedReal::Finite(x as f64))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<ExtendedReal, E> {
                if s == "inf" {
                    Ok(ExtendedReal::Infinite)
                } else {
                    // CSV hands every field over as a string.
                    s.parse::<f64>()
                        .map(ExtendedReal::from)
                        .map_err(|_| E::invalid_value(de::Unexpected::Str(s), &self))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        assert_eq!(
            serde_json::to_string(&ExtendedReal::Infinite).unwrap(),
            "\"inf\""
        );
        assert_eq!(
            serde_json::to_string(&ExtendedReal::Finite(0.5)).unwrap(),
            "0.5"
        );
        let back: ExtendedReal = serde_json::from_str("\"inf\"").unwrap();
        assert!(back.is_infinite());
        let back: ExtendedReal = serde_json::from_str("2").unwrap();
        assert_eq!(back, ExtendedReal::Finite(2.0));
        assert!(serde_json::from_str::<ExtendedReal>("\"nan-ish\"").is_err());
    }

    #[test]
    fn arithmetic_passes_infinity_through() {
        assert!(ExtendedReal::Infinite.exp().is_infinite());
        assert_eq!(ExtendedReal::Finite(0.0).exp(), ExtendedReal::Finite(1.0));
        assert_eq!(ExtendedReal::Infinite.to_string(), "inf");
        assert_eq!(ExtendedReal::Infinite.to_f64(), f64::INFINITY);
    }
}
