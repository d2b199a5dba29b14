use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact weight distribution `A_0..A_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightSpectrum {
    coeffs: Vec<BigUint>,
}

impl WeightSpectrum {
    pub fn zeros(n: usize) -> Self {
        WeightSpectrum {
            coeffs: vec![BigUint::zero(); n + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Self {
        assert!(!coeffs.is_empty(), "a spectrum has at least A_0");
        WeightSpectrum { coeffs }
    }

    /// Spectrum from `(weight, count)` pairs; unlisted weights are zero.
    pub fn from_pairs<I, T>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, T)>,
        T: Into<BigUint>,
    {
        let mut s = Self::zeros(n);
        for (w, c) in pairs {
            s.coeffs[w] = c.into();
        }
        s
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, w: usize) -> &BigUint {
        &self.coeffs[w]
    }

    pub fn set(&mut self, w: usize, value: BigUint) {
        self.coeffs[w] = value;
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Nonzero `(weight, count)` pairs in increasing weight.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn support(&self) -> SupportSpectrum {
        SupportSpectrum::from_bits(self.coeffs.iter().map(|c| !c.is_zero()).collect())
    }

    /// Smallest nonzero weight, if the code has any nonzero word.
    pub fn min_weight(&self) -> Option<usize> {
        self.nonzero().map(|(w, _)| w).find(|&w| w > 0)
    }

    pub fn to_file(&self) -> SpectrumFile {
        SpectrumFile {
            n: self.n(),
            coeffs: self.nonzero().map(|(w, c)| (w, c.to_string())).collect(),
        }
    }

    pub fn from_file(file: &SpectrumFile) -> Result<Self> {
        let mut s = Self::zeros(file.n);
        for (&w, text) in &file.coeffs {
            if w > file.n {
                return Err(Error::Parse(format!("weight {w} exceeds length {}", file.n)));
            }
            s.coeffs[w] = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad count {text:?} at weight {w}")))?;
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("spectrum serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpectrumFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}

impl fmt::Debug for WeightSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSpectrum(n={}", self.n())?;
        for (w, c) in self.nonzero() {
            write!(f, ", {w}: {c}")?;
        }
        f.write_str(")")
    }
}

/// On-disk spectrum: `{"n": 24, "coeffs": {"0": "1", "8": "759"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub n: usize,
    pub coeffs: BTreeMap<usize, String>,
}

/// Which weights occur: `P_i = 1` iff some codeword has weight `i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportSpectrum {
    bits: Vec<bool>,
}

impl SupportSpectrum {
    /// Only `P_0` set.
    pub fn trivial(n: usize) -> Self {
        let mut bits = vec![false; n + 1];
        bits[0] = true;
        SupportSpectrum { bits }
    }

    pub fn empty(n: usize) -> Self {
        SupportSpectrum {
            bits: vec![false; n + 1],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        assert!(!bits.is_empty());
        SupportSpectrum { bits }
    }

    pub fn from_weights(n: usize, weights: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for w in weights {
            s.bits[w] = true;
        }
        s
    }

    pub fn n(&self) -> usize {
        self.bits.len() - 1
    }

    pub fn get(&self, w: usize) -> bool {
        self.bits[w]
    }

    pub fn set(&mut self, w: usize) {
        self.bits[w] = true;
    }

    pub fn weights(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&w| self.bits[w]).collect()
    }
}

impl fmt::Debug for SupportSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SupportSpectrum(n={}, {:?})", self.n(), self.weights())
    }
}

pub(crate) fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_uses_decimal_strings() {
        let s = WeightSpectrum::from_pairs(24, [(0, 1u32), (8, 759), (12, 2576), (16, 759), (24, 1)]);
        let text = s.to_json();
        assert!(text.contains("\"8\": \"759\""));
        assert_eq!(WeightSpectrum::from_json(&text).unwrap(), s);
        assert_eq!(s.total(), BigUint::from(4096u32));
        assert_eq!(s.min_weight(), Some(8));
        assert_eq!(s.support().weights(), vec![0, 8, 12, 16, 24]);
    }

    #[test]
    fn rejects_out_of_range_weight() {
        let bad = r#"{"n": 3, "coeffs": {"5": "1"}}"#;
        assert!(WeightSpectrum::from_json(bad).is_err());
    }
}
