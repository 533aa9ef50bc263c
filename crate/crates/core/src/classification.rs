use std::fmt;

/// Prediction for a joint measurement: a certain `±1` or a fair coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Deterministic(i8),
    Random,
}

impl Classification {
    pub fn is_deterministic(self) -> bool {
        matches!(self, Classification::Deterministic(_))
    }

    pub fn value(self) -> Option<i8> {
        match self {
            Classification::Deterministic(v) => Some(v),
            Classification::Random => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Deterministic(v) => write!(f, "Deterministic({v:+})"),
            Classification::Random => f.write_str("Random"),
        }
    }
}
