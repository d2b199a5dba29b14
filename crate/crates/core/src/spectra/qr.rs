//! Identities tying a QR(n) spectrum to itself (Pless pairs) and to its
//! parity extension.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use super::spectrum::WeightSpectrum;
use crate::error::{Error, Result};

fn exact_div(num: BigUint, den: u64, weight: usize) -> Result<BigUint> {
    let (q, r) = num.div_rem(&BigUint::from(den));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::NonIntegerResult { weight })
    }
}

/// Completes a partial QR(n) spectrum with `2j A_{2j} = (n - 2j + 1) A_{2j-1}`
/// for `1 <= j <= (n-1)/2`. Each pair needs at least one known member;
/// `A_0` and `A_n` sit outside the pairs and must be given.
pub fn pless_fill(n: usize, partial: &[Option<BigUint>]) -> Result<WeightSpectrum> {
    if n % 2 == 0 || partial.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "partial spectrum of {} entries for odd length {n}",
            partial.len()
        )));
    }
    let mut out = WeightSpectrum::zeros(n);
    for w in [0, n] {
        let v = partial[w].clone().ok_or(Error::MissingCoefficient { weight: w })?;
        out.set(w, v);
    }
    for j in 1..=(n - 1) / 2 {
        let (odd, even) = (2 * j - 1, 2 * j);
        let odd_factor = (n - odd) as u64;
        let even_factor = even as u64;
        let (a_odd, a_even) = match (&partial[odd], &partial[even]) {
            (Some(o), Some(e)) => {
                if e * even_factor != o * odd_factor {
                    return Err(Error::Inconsistent(format!(
                        "A_{odd} = {o} and A_{even} = {e} violate the Pless identity"
                    )));
                }
                (o.clone(), e.clone())
            }
            (Some(o), None) => (o.clone(), exact_div(o * odd_factor, even_factor, even)?),
            (None, Some(e)) => (exact_div(e * even_factor, odd_factor, odd)?, e.clone()),
            (None, None) => return Err(Error::MissingCoefficient { weight: odd }),
        };
        out.set(odd, a_odd);
        out.set(even, a_even);
    }
    Ok(out)
}

/// EQR(n+1) spectrum from QR(n): `E_{2j} = A_{2j-1} + A_{2j}`, with both
/// `E_{2j} = (n+1)/(n+1-2j) A_{2j}` and `E_{2j} = (n+1)/(2j) A_{2j-1}`
/// checked exactly where they apply.
pub fn extend_spectrum_qr(a: &WeightSpectrum) -> Result<WeightSpectrum> {
    let n = a.n();
    if n % 2 == 0 {
        return Err(Error::DimensionMismatch(format!("QR length {n} must be odd")));
    }
    let mut e = WeightSpectrum::zeros(n + 1);
    e.set(0, a.get(0).clone());
    for j in 1..=(n + 1) / 2 {
        let w = 2 * j;
        let value = if w > n { a.get(n).clone() } else { a.get(w - 1) + a.get(w) };
        if j <= (n - 1) / 2 {
            let n1 = (n + 1) as u64;
            if &value * (n + 1 - w) as u64 != a.get(w) * n1 {
                return Err(Error::Inconsistent(format!(
                    "E_{w} = {value} disagrees with (n+1)/(n+1-{w}) A_{w}"
                )));
            }
            if &value * w as u64 != a.get(w - 1) * n1 {
                return Err(Error::Inconsistent(format!(
                    "E_{w} = {value} disagrees with (n+1)/{w} A_{}",
                    w - 1
                )));
            }
        }
        e.set(w, value);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partial(n: usize, known: &[(usize, u64)]) -> Vec<Option<BigUint>> {
        let mut p = vec![None; n + 1];
        for &(w, v) in known {
            p[w] = Some(BigUint::from(v));
        }
        p
    }

    #[test]
    fn golay_pairs() {
        let known = [(0, 1), (1, 0), (3, 0), (5, 0), (7, 253), (9, 0), (11, 1288), (13, 0), (15, 506), (17, 0), (19, 0), (21, 0), (23, 1)];
        let a = pless_fill(23, &partial(23, &known)).unwrap();
        assert_eq!(a.get(8), &BigUint::from(506u32));
        assert_eq!(a.get(12), &BigUint::from(1288u32));
        assert_eq!(a.get(16), &BigUint::from(253u32));
        assert_eq!(a.get(2), &BigUint::zero());
        let e = extend_spectrum_qr(&a).unwrap();
        assert_eq!(e.get(8), &BigUint::from(759u32));
        assert_eq!(e.get(12), &BigUint::from(2576u32));
        assert_eq!(e.get(0), &BigUint::from(1u32));
        assert_eq!(e.get(24), &BigUint::from(1u32));
    }

    #[test]
    fn violation_detected() {
        let mut p = partial(7, &[(0, 1), (1, 0), (2, 0), (3, 7), (4, 6), (5, 0), (7, 1)]);
        assert!(matches!(pless_fill(7, &p), Err(Error::Inconsistent(_))));
        p[4] = None;
        p[6] = Some(BigUint::zero());
        assert_eq!(pless_fill(7, &p).unwrap().get(4), &BigUint::from(7u32));
        p[7] = None;
        assert_eq!(pless_fill(7, &p).unwrap_err(), Error::MissingCoefficient { weight: 7 });
    }

    #[test]
    fn non_integer_fill() {
        let p = partial(7, &[(0, 1), (1, 0), (3, 0), (5, 1), (7, 1)]);
        assert_eq!(pless_fill(7, &p).unwrap_err(), Error::NonIntegerResult { weight: 6 });
    }
}
