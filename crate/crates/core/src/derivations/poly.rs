use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A polynomial in `u` with nonnegative integer coefficients, stored sparsely.
///
/// Text form lists exponents in ascending order and omits zero terms:
/// `45 + 176u + 45u^2 + 3u^6 + 15u^10`. JSON form is
/// `{"coeffs": {"0": 45, "1": 176, ...}}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivationPolynomial {
    coeffs: BTreeMap<u32, u64>,
}

impl DerivationPolynomial {
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut p = Self::default();
        for (k, c) in coeffs {
            p.add(k, c);
        }
        p
    }

    pub fn add(&mut self, exponent: u32, count: u64) {
        if count > 0 {
            *self.coeffs.entry(exponent).or_default() += count;
        }
    }

    pub fn coeff(&self, exponent: u32) -> u64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    /// Nonzero coefficients in ascending exponent order.
    pub fn coeffs(&self) -> &BTreeMap<u32, u64> {
        &self.coeffs
    }

    /// Sum of the coefficients of positive powers: the number of nontrivial
    /// actions.
    pub fn nontrivial_total(&self) -> u64 {
        self.coeffs.range(1..).map(|(_, &c)| c).sum()
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }
}

impl fmt::Display for DerivationPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "u".to_string(),
                (1, c) => format!("{c}u"),
                (k, 1) => format!("u^{k}"),
                (k, c) => format!("{c}u^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial term {0:?}")]
pub struct ParsePolynomialError(pub String);

impl FromStr for DerivationPolynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = DerivationPolynomial::default();
        if compact == "0" {
            return Ok(p);
        }
        for term in compact.split('+') {
            let err = || ParsePolynomialError(term.to_string());
            let (coeff, exp) = match term.find('u') {
                None => (term, 0),
                Some(i) => {
                    let rest = &term[i + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                    };
                    (&term[..i], exp)
                }
            };
            let c: u64 = if coeff.is_empty() && exp > 0 { 1 } else { coeff.parse().map_err(|_| err())? };
            p.add(exp, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in ["45 + 176u + 45u^2 + 3u^6 + 15u^10", "3 + 2u + 3u^2", "11 + u + u^4", "0", "7"] {
            let p: DerivationPolynomial = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!("3 + x".parse::<DerivationPolynomial>().is_err());
    }

    #[test]
    fn json_shape() {
        let p = DerivationPolynomial::from_coeffs([(0, 11), (1, 120), (2, 209)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"coeffs":{"0":11,"1":120,"2":209}}"#);
        assert_eq!(serde_json::from_str::<DerivationPolynomial>(&json).unwrap(), p);
        assert_eq!(p.nontrivial_total(), 329);
    }
}
