//! The linear system tying a code's support to its dual's support through
//! the MacWilliams transform.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::affine::{parameterize, rat, AffineForm, AffineSpectrum, LinearSystem, Rational};
use super::macwilliams::KrawtchoukTable;
use super::spectrum::{pow2, SupportSpectrum};
use crate::error::{Error, Result};

/// Solves for every spectrum supported on `p` whose MacWilliams transform
/// vanishes wherever `q` does, with `A_0 = 1` and `sum A_i = 2^k`.
///
/// With `symmetric`, `A_i = A_{n-i}` is imposed as well. A coefficient in
/// the support that the system forces to zero is reported as
/// [`Error::Inconsistent`]; a forced negative value as [`Error::Underflow`].
pub fn build_system(
    p: &SupportSpectrum,
    q: &SupportSpectrum,
    n: usize,
    k: usize,
    symmetric: bool,
) -> Result<AffineSpectrum> {
    if p.n() != n || q.n() != n || k > n {
        return Err(Error::DimensionMismatch(format!(
            "supports of length {} and {} for an [{n}, {k}] code",
            p.n(),
            q.n()
        )));
    }
    if !p.get(0) || !q.get(0) {
        return Err(Error::Inconsistent("P_0 and Q_0 must both be set".into()));
    }
    let weights: Vec<usize> = (1..=n).filter(|&w| p.get(w)).collect();
    let m = weights.len();
    let observable: Vec<AffineForm> = (0..=n)
        .map(|w| {
            let mut f = AffineForm::constant(Rational::zero(), m);
            if w == 0 {
                f.constant = rat(BigInt::from(1));
            } else if let Some(u) = weights.iter().position(|&x| x == w) {
                f.coeffs[u] = rat(BigInt::from(1));
            }
            f
        })
        .collect();

    let table = KrawtchoukTable::new(n);
    let mut system = LinearSystem::new(m);
    for j in (0..=n).filter(|&j| !q.get(j)) {
        let coeffs = weights.iter().map(|&w| rat(table.get(j, w).clone())).collect();
        system.add(coeffs, rat(-table.get(j, 0).clone()))?;
    }
    system.add(vec![rat(BigInt::from(1)); m], rat(BigInt::from(pow2(k)) - 1))?;
    if symmetric {
        for w in 0..=n / 2 {
            let (a, b) = (&observable[w], &observable[n - w]);
            let coeffs: Vec<Rational> = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
            system.add(coeffs, &b.constant - &a.constant)?;
        }
    }

    let (family, _) = parameterize(n, &system.solve(), &observable);
    for w in 0..=n {
        let row = family.row(w);
        if !row.is_constant() {
            continue;
        }
        if row.constant.is_negative() {
            return Err(Error::Underflow { weight: w });
        }
        if p.get(w) && row.constant.is_zero() {
            return Err(Error::Inconsistent(format!(
                "A_{w} is forced to zero although weight {w} occurs"
            )));
        }
    }
    Ok(family)
}

/// Support of a doubly-even self-dual code of length `n` and minimum weight
/// `d`: `{0, n}` and every multiple of 4 in `[d, n-d]`.
pub fn doubly_even_support(n: usize, d: usize) -> SupportSpectrum {
    let mut s = SupportSpectrum::from_weights(n, [0, n]);
    for w in (d..=n.saturating_sub(d)).filter(|w| w % 4 == 0) {
        s.set(w);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_two_self_dual() {
        let p = SupportSpectrum::from_weights(2, [0, 2]);
        let f = build_system(&p, &p, 2, 1, false).unwrap();
        assert!(f.params().is_empty());
        let s = f.substitute(&[]).unwrap();
        assert_eq!(s.get(2).to_string(), "1");
        assert_eq!(f.semi_local_threshold(), 0);
    }

    #[test]
    fn golay_support_is_rigid() {
        let p = doubly_even_support(24, 8);
        assert_eq!(p.weights(), vec![0, 8, 12, 16, 24]);
        let f = build_system(&p, &p, 24, 12, false).unwrap();
        let s = f.substitute(&[]).unwrap();
        assert_eq!(s.get(8).to_string(), "759");
        assert_eq!(s.get(12).to_string(), "2576");
    }

    #[test]
    fn forced_zero_is_inconsistent() {
        // A [3,1] code cannot have weight 1 words and a dual of weight only 2.
        let p = SupportSpectrum::from_weights(3, [0, 1]);
        let q = SupportSpectrum::from_weights(3, [0, 2]);
        assert!(build_system(&p, &q, 3, 1, false).is_err());
    }
}
