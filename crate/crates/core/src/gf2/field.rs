//! GF(2^m) for m <= 128 and minimal polynomials of n-th roots of unity.
//!
//! The field modulus is the lowest irreducible polynomial of degree `m`,
//! ordered by the integer value of its coefficient bits. The primitive
//! element `g` is the smallest element (same ordering) of full
//! multiplicative order, and the fixed primitive n-th root of unity is
//! `beta = g^((2^m - 1) / n)`. Together these pin down which of two
//! conjugate QR codes a construction yields.

use std::collections::BTreeSet;

use super::poly::Gf2Poly;
use crate::arith::{factorize, multiplicative_order_of_two};
use crate::error::{Error, Result};

/// GF(2^m) in a polynomial basis; elements are `u128` bit patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2m {
    m: u32,
    /// Modulus minus its leading term `x^m`.
    reduction: u128,
}

impl Gf2m {
    pub fn new(m: u32) -> Self {
        assert!((1..=128).contains(&m), "extension degree {m} out of range 1..=128");
        let reduction = if m == 1 {
            0
        } else {
            (1u128..)
                .step_by(2)
                .find(|&r| is_irreducible(m, r))
                .expect("irreducible polynomials exist in every degree")
        };
        Gf2m { m, reduction }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// The modulus as a polynomial.
    pub fn modulus(&self) -> Gf2Poly {
        Gf2Poly::monomial(self.m as usize) + Gf2Poly::from_u128(self.reduction)
    }

    /// `2^m - 1`.
    pub fn group_order(&self) -> u128 {
        if self.m == 128 {
            u128::MAX
        } else {
            (1u128 << self.m) - 1
        }
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        ring_mul(self.m, self.reduction, a, b)
    }

    pub fn pow(&self, mut base: u128, mut exp: u128) -> u128 {
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Smallest element of full multiplicative order.
    pub fn primitive_element(&self) -> u128 {
        let order = self.group_order();
        if order == 1 {
            return 1;
        }
        let primes: Vec<u128> = factorize(order).into_iter().map(|(p, _)| p).collect();
        (2u128..)
            .find(|&g| primes.iter().all(|&p| self.pow(g, order / p) != 1))
            .expect("the multiplicative group is cyclic")
    }

    #[cfg(test)]
    fn x(&self) -> u128 {
        ring_times_x(self.m, self.reduction, 1)
    }
}

fn ring_times_x(m: u32, reduction: u128, a: u128) -> u128 {
    let carry = (a >> (m - 1)) & 1 == 1;
    let shifted = if m == 128 { a << 1 } else { (a << 1) & ((1u128 << m) - 1) };
    if carry {
        shifted ^ reduction
    } else {
        shifted
    }
}

fn ring_mul(m: u32, reduction: u128, mut a: u128, mut b: u128) -> u128 {
    let mut acc = 0u128;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a = ring_times_x(m, reduction, a);
    }
    acc
}

/// Rabin's test for `x^m + reduction`.
fn is_irreducible(m: u32, reduction: u128) -> bool {
    if reduction & 1 == 0 {
        return false;
    }
    let f = Gf2Poly::monomial(m as usize) + Gf2Poly::from_u128(reduction);
    let x = ring_times_x(m, reduction, 1);
    // frob[i] = x^(2^i) mod f
    let mut frob = Vec::with_capacity(m as usize + 1);
    let mut cur = x;
    frob.push(cur);
    for _ in 0..m {
        cur = ring_mul(m, reduction, cur, cur);
        frob.push(cur);
    }
    if frob[m as usize] != x {
        return false;
    }
    factorize(m as u128).into_iter().all(|(p, _)| {
        let e = (m as u128 / p) as usize;
        let h = Gf2Poly::from_u128(frob[e] ^ x);
        h.gcd(&f) == Gf2Poly::one()
    })
}

/// Field context for the n-th roots of unity over GF(2).
#[derive(Clone, Debug)]
pub struct RootsOfUnity {
    n: u64,
    field: Gf2m,
    beta: u128,
}

impl RootsOfUnity {
    pub fn new(n: u64) -> Result<Self> {
        if n % 2 == 0 {
            return Err(Error::InvalidModulus(n));
        }
        let m = multiplicative_order_of_two(n);
        if m > 128 {
            return Err(Error::DimensionMismatch(format!(
                "GF(2^{m}) needed for n = {n} exceeds the supported degree 128"
            )));
        }
        let field = Gf2m::new(m);
        let g = field.primitive_element();
        let beta = field.pow(g, field.group_order() / n as u128);
        Ok(RootsOfUnity { n, field, beta })
    }

    pub fn field(&self) -> &Gf2m {
        &self.field
    }

    pub fn beta(&self) -> u128 {
        self.beta
    }

    pub fn beta_pow(&self, e: u64) -> u128 {
        self.field.pow(self.beta, (e % self.n) as u128)
    }

    /// `prod_{e in exponents} (x - beta^e)`, which must land in GF(2)[x].
    pub fn product_of_roots(&self, exponents: &BTreeSet<u64>) -> Result<Gf2Poly> {
        let mut coeffs: Vec<u128> = vec![1];
        for &e in exponents {
            let r = self.beta_pow(e);
            let mut next = vec![0u128; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] ^= c;
                next[i] ^= self.field.mul(r, c);
            }
            coeffs = next;
        }
        if let Some(i) = coeffs.iter().position(|&c| c > 1) {
            return Err(Error::Inconsistent(format!(
                "root set is not closed under conjugation (coefficient of x^{i} outside GF(2))"
            )));
        }
        Ok(Gf2Poly::from_coeffs(
            &coeffs.iter().map(|&c| c == 1).collect::<Vec<_>>(),
        ))
    }

    /// Evaluates a binary polynomial at `beta^e`.
    pub fn eval_at_power(&self, p: &Gf2Poly, e: u64) -> u128 {
        let r = self.beta_pow(e);
        let Some(d) = p.degree() else { return 0 };
        (0..=d)
            .rev()
            .fold(0u128, |acc, i| self.field.mul(acc, r) ^ u128::from(p.coeff(i)))
    }
}

/// Cyclotomic coset of `s` modulo odd `n` under multiplication by 2.
pub fn cyclotomic_coset(n: u64, s: u64) -> BTreeSet<u64> {
    let mut coset = BTreeSet::new();
    let mut x = s % n;
    while coset.insert(x) {
        x = x * 2 % n;
    }
    coset
}

/// Minimal polynomial of `beta^s` over GF(2) under the fixed root
/// convention described in the module docs.
pub fn min_poly(n: u64, s: u64) -> Result<Gf2Poly> {
    let roots = RootsOfUnity::new(n)?;
    roots.product_of_roots(&cyclotomic_coset(n, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_irreducibles() {
        assert_eq!(Gf2m::new(2).modulus().to_string(), "111");
        assert_eq!(Gf2m::new(3).modulus().to_string(), "1101");
        assert_eq!(Gf2m::new(4).modulus().to_string(), "11001");
        assert_eq!(Gf2m::new(8).modulus().to_string(), "110110001");
    }

    #[test]
    fn primitive_element_small() {
        let f = Gf2m::new(4);
        assert_eq!(f.primitive_element(), f.x());
        assert_eq!(f.pow(2, 15), 1);
        assert_ne!(f.pow(2, 5), 1);
        assert_ne!(f.pow(2, 3), 1);
    }

    #[test]
    fn field_of_degree_128_is_consistent() {
        let f = Gf2m::new(128);
        let a = 0x1234_5678_9abc_def0_u128 << 60 | 7;
        assert_eq!(f.pow(a, f.group_order()), 1);
        assert_eq!(f.mul(a, f.pow(a, f.group_order() - 1)), 1);
    }

    #[test]
    fn min_poly_n7() {
        assert_eq!(min_poly(7, 0).unwrap().to_string(), "11");
        assert_eq!(min_poly(7, 1).unwrap().to_string(), "1101");
        assert_eq!(min_poly(7, 3).unwrap().to_string(), "1011");
        assert_eq!(min_poly(8, 1).unwrap_err(), Error::InvalidModulus(8));
    }

    #[test]
    fn min_poly_n23_divides() {
        let p = min_poly(23, 1).unwrap();
        assert_eq!(p.degree(), Some(11));
        assert!(p.divides(&Gf2Poly::x_n_plus_one(23)));
    }

    #[test]
    fn beta_has_order_n() {
        for n in [7u64, 15, 17, 23, 191] {
            let r = RootsOfUnity::new(n).unwrap();
            assert_eq!(r.beta_pow(n), 1);
            let f = r.field();
            for (p, _) in factorize(n as u128) {
                assert_ne!(f.pow(r.beta(), n as u128 / p), 1, "n = {n}");
            }
        }
    }
}
