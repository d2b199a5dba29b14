//! Small-integer number theory: primality, factorisation, primitive roots.

use num_integer::Integer;

pub fn is_prime_u64(n: u64) -> bool {
    is_prime_u128(n as u128)
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // Double-and-add keeps every intermediate below 2m without overflow.
    let (mut a, mut b, mut acc) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const SMALL_PRIMES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first twenty prime bases; deterministic below
/// 3.3e24 and overwhelmingly reliable above.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// 256-bit product as `(hi, lo)`.
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a0, a1) = (a & MASK, a >> 64);
    let (b0, b1) = (b & MASK, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Montgomery arithmetic modulo an odd `n` with `R = 2^128`.
struct Montgomery {
    n: u128,
    n_neg_inv: u128,
}

impl Montgomery {
    fn new(n: u128) -> Self {
        debug_assert!(n % 2 == 1);
        // Newton iteration for n^-1 mod 2^128.
        let mut inv: u128 = 1;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        Montgomery {
            n,
            n_neg_inv: inv.wrapping_neg(),
        }
    }

    /// `a * b * R^-1 mod n` for `a, b < n`.
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mhi, mlo) = mul_wide(m, self.n);
        let (_, carry) = lo.overflowing_add(mlo);
        let (sum, o1) = hi.overflowing_add(mhi);
        let (sum, o2) = sum.overflowing_add(u128::from(carry));
        if o1 || o2 || sum >= self.n {
            sum.wrapping_sub(self.n)
        } else {
            sum
        }
    }
}

fn pollard_brent(n: u128, c: u128) -> Option<u128> {
    // Iterating x -> x^2 R^-1 + c in Montgomery form is still a
    // pseudo-random polynomial map, and differences keep their gcd with n.
    let mont = Montgomery::new(n);
    let f = |x: u128| add_mod(mont.mul(x, x), c % n, n);
    let (mut y, m) = (2u128 % n, 128u64);
    let (mut g, mut r, mut q) = (1u128, 1u64, 1u128);
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mont.mul(q, x.abs_diff(y));
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Prime factorisation as sorted `(prime, exponent)` pairs.
pub fn factorize(n: u128) -> Vec<(u128, u32)> {
    let mut primes = Vec::new();
    let mut n = n;
    for p in 2u128..1000 {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            primes.push(m);
            continue;
        }
        let d = (1u128..)
            .find_map(|c| pollard_brent(m, c))
            .expect("pollard rho always finds a factor of a composite eventually");
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    factorize(n as u128)
        .into_iter()
        .map(|(p, e)| (p as u64, e))
        .collect()
}

/// Smallest `m >= 1` with `2^m = 1 (mod n)`, for odd `n`.
pub fn multiplicative_order_of_two(n: u64) -> u32 {
    assert!(n % 2 == 1, "order of 2 needs an odd modulus");
    if n == 1 {
        return 1;
    }
    let mut x = 2 % n;
    let mut m = 1;
    while x != 1 {
        x = x * 2 % n;
        m += 1;
    }
    m
}

/// Smallest primitive root modulo an odd prime.
pub fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factorize_u64(p - 1);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&(q, _)| pow_mod(g as u128, ((p - 1) / q) as u128, p as u128) != 1)
        })
        .expect("every prime has a primitive root")
}

pub fn inverse_mod(a: u64, p: u64) -> u64 {
    pow_mod(a as u128, (p - 2) as u128, p as u128) as u64
}

/// 2-adic valuation.
pub fn v2(n: u64) -> u32 {
    if n == 0 {
        0
    } else {
        n.trailing_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime_u128((1u128 << 127) - 1));
        assert!(!is_prime_u128((1u128 << 101) - 1));
    }

    #[test]
    fn mersenne_factorisations() {
        let f = factorize((1u128 << 95) - 1);
        let primes: Vec<u128> = f.iter().map(|p| p.0).collect();
        assert_eq!(primes, vec![31, 191, 524287, 420778751, 30327152671]);
        let f = factorize((1u128 << 101) - 1);
        assert_eq!(f, vec![(7432339208719, 1), (341117531003194129, 1)]);
        let product: u128 = factorize(u128::MAX)
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product();
        assert_eq!(product, u128::MAX);
    }

    #[test]
    fn group_order_factorisations() {
        assert_eq!(factorize_u64(3483840), vec![(2, 6), (3, 1), (5, 1), (19, 1), (191, 1)]);
        assert_eq!(factorize_u64(3940200), vec![(2, 3), (3, 2), (5, 2), (11, 1), (199, 1)]);
    }

    #[test]
    fn primitive_roots_and_orders() {
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(smallest_primitive_root(23), 5);
        assert_eq!(smallest_primitive_root(191), 19);
        assert_eq!(multiplicative_order_of_two(7), 3);
        assert_eq!(multiplicative_order_of_two(23), 11);
        assert_eq!(multiplicative_order_of_two(15), 4);
        assert_eq!(inverse_mod(5, 23), 14);
    }
}
