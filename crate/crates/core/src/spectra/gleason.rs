//! Gleason bases for the weight enumerators of formally self-dual and
//! doubly-even self-dual codes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::affine::{parameterize, rat, AffineForm, AffineSpectrum, LinearSystem, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GleasonMode {
    /// Even formally self-dual: basis `(1+x^2)^{n/2-4i} (x^2-2x^4+x^6)^i`.
    Fsd,
    /// Doubly-even self-dual: basis `(1+14x^4+x^8)^{n/8-3i} (x^4(1-x^4)^4)^i`.
    DoublyEven,
}

impl fmt::Display for GleasonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GleasonMode::Fsd => "fsd",
            GleasonMode::DoublyEven => "doubly_even",
        })
    }
}

impl FromStr for GleasonMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fsd" => Ok(GleasonMode::Fsd),
            "doubly_even" | "doubly-even" => Ok(GleasonMode::DoublyEven),
            _ => Err(Error::Parse(format!("unknown Gleason mode {s:?}"))),
        }
    }
}

/// Dense integer polynomial, lowest degree first.
type Poly = Vec<BigInt>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(base: &Poly, mut e: usize) -> Poly {
    let mut acc: Poly = vec![BigInt::one()];
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mul(&b, &b);
        }
    }
    acc
}

fn sparse(terms: &[(usize, i64)]) -> Poly {
    let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut p = vec![BigInt::zero(); deg + 1];
    for &(d, c) in terms {
        p[d] += c;
    }
    p
}

/// Basis polynomials for length `n`, each padded to `n + 1` coefficients.
pub fn gleason_basis(n: usize, mode: GleasonMode) -> Result<Vec<Vec<BigInt>>> {
    let (count, first, second, step_first): (usize, Poly, Poly, usize) = match mode {
        GleasonMode::Fsd => {
            if n % 2 != 0 {
                return Err(Error::DimensionMismatch(format!("fsd basis needs even n, got {n}")));
            }
            (n / 8 + 1, sparse(&[(0, 1), (2, 1)]), sparse(&[(2, 1), (4, -2), (6, 1)]), 4)
        }
        GleasonMode::DoublyEven => {
            if n % 8 != 0 {
                return Err(Error::DimensionMismatch(format!(
                    "doubly-even basis needs 8 | n, got {n}"
                )));
            }
            // x^4 (1 - x^4)^4 = x^4 - 4x^8 + 6x^12 - 4x^16 + x^20
            let second = sparse(&[(4, 1), (8, -4), (12, 6), (16, -4), (20, 1)]);
            (n / 24 + 1, sparse(&[(0, 1), (4, 14), (8, 1)]), second, 3)
        }
    };
    let top = match mode {
        GleasonMode::Fsd => n / 2,
        GleasonMode::DoublyEven => n / 8,
    };
    Ok((0..count)
        .map(|i| {
            let mut p = poly_mul(&poly_pow(&first, top - step_first * i), &poly_pow(&second, i));
            p.resize(n + 1, BigInt::zero());
            p
        })
        .collect())
}

/// Result of fitting Gleason coefficients to known spectrum values.
#[derive(Clone, Debug)]
pub struct GleasonFit {
    pub mode: GleasonMode,
    /// `K_i` as affine forms in the family's parameters.
    pub k_forms: Vec<AffineForm>,
    pub family: AffineSpectrum,
}

impl GleasonFit {
    /// The coefficients, when the constraints pin them down.
    pub fn k_values(&self) -> Option<Vec<Rational>> {
        self.family
            .params()
            .is_empty()
            .then(|| self.k_forms.iter().map(|f| f.constant.clone()).collect())
    }
}

pub fn gleason_fit(n: usize, mode: GleasonMode, constraints: &[(usize, BigInt)]) -> Result<GleasonFit> {
    let basis = gleason_basis(n, mode)?;
    let d = basis.len();
    let mut system = LinearSystem::new(d);
    for (w, value) in constraints {
        if *w > n {
            return Err(Error::DimensionMismatch(format!("constraint weight {w} exceeds {n}")));
        }
        system.add(basis.iter().map(|b| rat(b[*w].clone())).collect(), rat(value.clone()))?;
    }
    let observable: Vec<AffineForm> = (0..=n)
        .map(|w| AffineForm {
            constant: Rational::zero(),
            coeffs: basis.iter().map(|b| rat(b[w].clone())).collect(),
        })
        .collect();
    let (family, k_forms) = parameterize(n, &system.solve(), &observable);
    Ok(GleasonFit { mode, k_forms, family })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        rat(BigInt::from(v))
    }

    #[test]
    fn length_two_fsd() {
        let fit = gleason_fit(2, GleasonMode::Fsd, &[(0, BigInt::from(1))]).unwrap();
        assert_eq!(fit.k_values(), Some(vec![q(1)]));
        let s = fit.family.substitute(&[]).unwrap();
        assert_eq!(s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["1", "0", "1"]);
    }

    #[test]
    fn golay_from_two_constraints() {
        let fit = gleason_fit(
            24,
            GleasonMode::DoublyEven,
            &[(0, BigInt::from(1)), (4, BigInt::from(0))],
        )
        .unwrap();
        assert_eq!(fit.k_values(), Some(vec![q(1), q(-42)]));
        let s = fit.family.substitute(&[]).unwrap();
        assert_eq!(s.get(8).to_string(), "759");
        assert_eq!(s.get(12).to_string(), "2576");
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(gleason_basis(192, GleasonMode::DoublyEven).unwrap().len(), 9);
        assert_eq!(gleason_basis(24, GleasonMode::Fsd).unwrap().len(), 4);
        assert!(gleason_basis(12, GleasonMode::DoublyEven).is_err());
        assert!(gleason_basis(7, GleasonMode::Fsd).is_err());
    }

    #[test]
    fn inconsistent_constraints() {
        let r = gleason_fit(2, GleasonMode::Fsd, &[(0, BigInt::from(1)), (2, BigInt::from(3))]);
        assert!(matches!(r, Err(Error::Inconsistent(_))));
    }
}
