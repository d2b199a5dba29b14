use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use super::word::BitWord;
use crate::error::{Error, Result};

/// Polynomial over GF(2); bit `i` of the limb vector is the coefficient of
/// `x^i`. Trailing zero limbs are trimmed so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    limbs: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { limbs: vec![1] }
    }

    pub fn monomial(deg: usize) -> Self {
        let mut p = Gf2Poly::zero();
        p.set_coeff(deg, true);
        p
    }

    /// `x^n + 1`.
    pub fn x_n_plus_one(n: usize) -> Self {
        Gf2Poly::monomial(n) + Gf2Poly::one()
    }

    pub fn from_coeffs(coeffs: &[bool]) -> Self {
        let mut p = Gf2Poly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c {
                p.set_coeff(i, true);
            }
        }
        p
    }

    /// Builds from the low bits of an integer (bit `i` = coefficient of `x^i`).
    pub fn from_u128(bits: u128) -> Self {
        let mut p = Gf2Poly {
            limbs: vec![bits as u64, (bits >> 64) as u64],
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|l| (l >> (i % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        if i / 64 >= self.limbs.len() {
            if !value {
                return;
            }
            self.limbs.resize(i / 64 + 1, 0);
        }
        if value {
            self.limbs[i / 64] |= 1 << (i % 64);
        } else {
            self.limbs[i / 64] &= !(1 << (i % 64));
            self.trim();
        }
    }

    fn shifted(&self, s: usize) -> Gf2Poly {
        if self.is_zero() {
            return Gf2Poly::zero();
        }
        let (ls, bs) = (s / 64, s % 64);
        let mut limbs = vec![0u64; self.limbs.len() + ls + 1];
        for (i, &l) in self.limbs.iter().enumerate() {
            limbs[i + ls] |= l << bs;
            if bs != 0 {
                limbs[i + ls + 1] |= l >> (64 - bs);
            }
        }
        let mut p = Gf2Poly { limbs };
        p.trim();
        p
    }

    fn xor_assign(&mut self, other: &Gf2Poly) {
        if other.limbs.len() > self.limbs.len() {
            self.limbs.resize(other.limbs.len(), 0);
        }
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
        self.trim();
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> (Gf2Poly, Gf2Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Gf2Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            quot.set_coeff(rd - dd, true);
            rem.xor_assign(&divisor.shifted(rd - dd));
        }
        (quot, rem)
    }

    pub fn divides(&self, other: &Gf2Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    /// Coefficient vector as a word of length `n` (coordinate `j` holds the
    /// coefficient of `x^j`).
    pub fn to_word(&self, n: usize) -> Result<BitWord> {
        if self.degree().is_some_and(|d| d >= n) {
            return Err(Error::DimensionMismatch(format!(
                "polynomial of degree {:?} does not fit in length {n}",
                self.degree()
            )));
        }
        Ok(BitWord::from_positions(n, (0..n).filter(|&i| self.coeff(i))))
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;
    fn add(mut self, rhs: Gf2Poly) -> Gf2Poly {
        self.xor_assign(&rhs);
        self
    }
}

impl Mul for &Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        if let Some(d) = rhs.degree() {
            for i in (0..=d).filter(|&i| rhs.coeff(i)) {
                out.xor_assign(&self.shifted(i));
            }
        }
        out
    }
}

impl fmt::Display for Gf2Poly {
    /// Coefficient string, lowest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree() {
            None => f.write_str("0"),
            Some(d) => {
                for i in 0..=d {
                    f.write_str(if self.coeff(i) { "1" } else { "0" })?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let w: BitWord = s.parse()?;
        Ok(Gf2Poly::from_coeffs(&w.to_bits()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_display() {
        let p: Gf2Poly = "1101".parse().unwrap();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_string(), "1101");
        assert_eq!("1100".parse::<Gf2Poly>().unwrap().to_string(), "11");
        assert_eq!(Gf2Poly::zero().degree(), None);
    }

    #[test]
    fn hamming_generator_divides_x7_plus_1() {
        let g: Gf2Poly = "1101".parse().unwrap();
        let (q, r) = Gf2Poly::x_n_plus_one(7).div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(&q * &g, Gf2Poly::x_n_plus_one(7));
    }

    #[test]
    fn wide_multiplication() {
        let a = Gf2Poly::monomial(100) + Gf2Poly::one();
        let b = Gf2Poly::monomial(70) + Gf2Poly::one();
        let c = &a * &b;
        assert_eq!(c.degree(), Some(170));
        assert!(c.coeff(100) && c.coeff(70) && c.coeff(0));
        assert_eq!(c.div_rem(&a), (b, Gf2Poly::zero()));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a: Gf2Poly = "1101".parse().unwrap();
        let b: Gf2Poly = "1011".parse().unwrap();
        assert_eq!(a.gcd(&b), Gf2Poly::one());
        assert_eq!((&a * &b).gcd(&a), a);
    }
}
