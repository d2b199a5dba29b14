use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::spectrum::{pow2, WeightSpectrum};
use crate::error::{Error, Result};

/// Binary Krawtchouk values `K_j(i) = sum_l (-1)^l C(i,l) C(n-i, j-l)` for
/// one length `n`, built with the three-term recurrence in `j`.
#[derive(Clone, Debug)]
pub struct KrawtchoukTable {
    n: usize,
    /// `values[j][i]`
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(n: usize) -> Self {
        let mut values: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        values.push(vec![BigInt::from(1); n + 1]);
        if n >= 1 {
            values.push((0..=n).map(|i| BigInt::from(n as i64 - 2 * i as i64)).collect());
        }
        // (j+1) K_{j+1}(i) = (n - 2i) K_j(i) - (n - j + 1) K_{j-1}(i)
        for j in 1..n {
            let row: Vec<BigInt> = (0..=n)
                .map(|i| {
                    let num = BigInt::from(n as i64 - 2 * i as i64) * &values[j][i]
                        - BigInt::from((n - j + 1) as i64) * &values[j - 1][i];
                    let (q, r) = num.div_rem(&BigInt::from(j as i64 + 1));
                    debug_assert!(r.is_zero());
                    q
                })
                .collect();
            values.push(row);
        }
        KrawtchoukTable { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, j: usize, i: usize) -> &BigInt {
        &self.values[j][i]
    }

    /// `sum_i coeffs[i] * K_j(i)` for every `j`, unscaled.
    pub fn transform(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coeffs.len(), self.n + 1);
        (0..=self.n)
            .map(|j| {
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| c * &self.values[j][i])
                    .sum()
            })
            .collect()
    }
}

/// MacWilliams transform. `b` is the spectrum of the dual of a code of
/// dimension `k`; the result is that code's spectrum
/// `A_j = 2^{-(n-k)} sum_i B_i K_j(i)` (the divisor is `|dual| = sum_i B_i`).
pub fn macwilliams(b: &WeightSpectrum, k: usize) -> Result<WeightSpectrum> {
    macwilliams_with(&KrawtchoukTable::new(b.n()), b, k)
}

pub fn macwilliams_with(table: &KrawtchoukTable, b: &WeightSpectrum, k: usize) -> Result<WeightSpectrum> {
    let n = b.n();
    if table.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "Krawtchouk table for n = {} applied to a length-{n} spectrum",
            table.n()
        )));
    }
    if k > n {
        return Err(Error::DimensionMismatch(format!("dimension {k} exceeds length {n}")));
    }
    let signed: Vec<BigInt> = b
        .coeffs()
        .iter()
        .map(|c| BigInt::from_biguint(Sign::Plus, c.clone()))
        .collect();
    let divisor = BigInt::from_biguint(Sign::Plus, pow2(n - k));
    let coeffs = table
        .transform(&signed)
        .into_iter()
        .enumerate()
        .map(|(j, s)| {
            let (q, r) = s.div_rem(&divisor);
            if !r.is_zero() {
                return Err(Error::NonIntegerResult { weight: j });
            }
            if q.is_negative() {
                return Err(Error::NegativeCoefficient { weight: j });
            }
            Ok(q.to_biguint().expect("nonnegative"))
        })
        .collect::<Result<Vec<BigUint>>>()?;
    Ok(WeightSpectrum::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    /// Direct double-sum evaluation, independent of the recurrence.
    fn krawtchouk_direct(n: usize, j: usize, i: usize) -> BigInt {
        (0..=j)
            .map(|l| {
                if l > i || j - l > n - i {
                    return BigInt::zero();
                }
                let t = binomial(BigInt::from(i), BigInt::from(l))
                    * binomial(BigInt::from(n - i), BigInt::from(j - l));
                if l % 2 == 1 {
                    -t
                } else {
                    t
                }
            })
            .sum()
    }

    #[test]
    fn recurrence_matches_double_sum() {
        for n in [1usize, 2, 7, 24, 61] {
            let t = KrawtchoukTable::new(n);
            for j in 0..=n {
                for i in 0..=n {
                    assert_eq!(t.get(j, i), &krawtchouk_direct(n, j, i), "n={n} j={j} i={i}");
                }
            }
        }
    }

    #[test]
    fn dual_of_zero_code_is_full_space() {
        let b = WeightSpectrum::from_pairs(2, [(0, 1u32)]);
        let a = macwilliams(&b, 2).unwrap();
        assert_eq!(a, WeightSpectrum::from_pairs(2, [(0, 1u32), (1, 2), (2, 1)]));
    }

    #[test]
    fn simplex_to_hamming() {
        let b = WeightSpectrum::from_pairs(7, [(0, 1u32), (4, 7)]);
        let a = macwilliams(&b, 4).unwrap();
        assert_eq!(a, WeightSpectrum::from_pairs(7, [(0, 1u32), (3, 7), (4, 7), (7, 1)]));
    }

    #[test]
    fn inconsistent_input_is_rejected() {
        let b = WeightSpectrum::from_pairs(7, [(0, 1u32), (4, 6)]);
        assert!(matches!(macwilliams(&b, 4), Err(Error::NonIntegerResult { .. })));
        assert!(macwilliams(&b, 8).is_err());
    }
}
