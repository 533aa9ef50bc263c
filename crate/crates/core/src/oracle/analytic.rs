use crate::classification::Classification;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

/// Classifies `p` on the GHZ state from the closed-form description of its
/// stabilizer: products of I's with an even number of Z's, and products of
/// X's and Y's only with an even number of Y's (negated unless the Y count is
/// a multiple of 4).
pub fn ghz_classify(p: &PauliString) -> Result<Classification> {
    let sign = p
        .phase()
        .sign()
        .ok_or_else(|| Error::NotObservable(p.to_string()))?;
    let (x, y, z) = (p.count(Pauli::X), p.count(Pauli::Y), p.count(Pauli::Z));
    let n = p.len();
    if x + y == 0 && z % 2 == 0 {
        return Ok(Classification::Deterministic(sign));
    }
    if x + y == n && y % 2 == 0 {
        let y_sign = if y % 4 == 0 { 1 } else { -1 };
        return Ok(Classification::Deterministic(sign * y_sign));
    }
    Ok(Classification::Random)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(s: &str) -> Classification {
        ghz_classify(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(classify("ZZII"), Classification::Deterministic(1));
        assert_eq!(classify("XXYY"), Classification::Deterministic(-1));
        assert_eq!(classify("YYYY"), Classification::Deterministic(1));
        assert_eq!(classify("ZYZ"), Classification::Random);
        assert_eq!(classify("-XYY"), Classification::Deterministic(1));
        assert_eq!(classify("III"), Classification::Deterministic(1));
        assert_eq!(classify("-ZZI"), Classification::Deterministic(-1));
        assert_eq!(classify("ZII"), Classification::Random);
        assert_eq!(classify("XXXY"), Classification::Random);
        assert!(ghz_classify(&"+iXX".parse().unwrap()).is_err());
    }
}
