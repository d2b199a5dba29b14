use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const LIMB_BITS: usize = 64;

/// A fixed-length binary word packed into 64-bit limbs.
///
/// Bits past `len` in the last limb are always zero, so equality, hashing
/// and ordering can work on the raw limbs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    len: usize,
    limbs: Vec<u64>,
}

fn limbs_for(len: usize) -> usize {
    len.div_ceil(LIMB_BITS)
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        BitWord {
            len,
            limbs: vec![0; limbs_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = BitWord {
            len,
            limbs: vec![u64::MAX; limbs_for(len)],
        };
        w.clear_tail();
        w
    }

    /// Word of length `len` with ones exactly at `positions`.
    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut w = Self::zeros(len);
        for p in positions {
            w.set(p, true);
        }
        w
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_positions(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    fn clear_tail(&mut self) {
        let rem = self.len % LIMB_BITS;
        if rem != 0 {
            if let Some(last) = self.limbs.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.limbs[i / LIMB_BITS] >> (i % LIMB_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % LIMB_BITS);
        if value {
            self.limbs[i / LIMB_BITS] |= mask;
        } else {
            self.limbs[i / LIMB_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.limbs[i / LIMB_BITS] ^= 1u64 << (i % LIMB_BITS);
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitWord) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitWord) -> BitWord {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitWord) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.limbs.iter().zip(&other.limbs) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(li, &limb)| {
            let mut l = limb;
            std::iter::from_fn(move || {
                if l == 0 {
                    None
                } else {
                    let tz = l.trailing_zeros() as usize;
                    l &= l - 1;
                    Some(li * LIMB_BITS + tz)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Sub-word on the given coordinates, in the order given.
    pub fn restrict(&self, coords: &[usize]) -> BitWord {
        let mut out = BitWord::zeros(coords.len());
        for (j, &c) in coords.iter().enumerate() {
            if self.get(c) {
                out.set(j, true);
            }
        }
        out
    }

    /// Appends one bit, returning a word of length `len + 1`.
    pub fn appended(&self, bit: bool) -> BitWord {
        let mut out = BitWord::zeros(self.len + 1);
        out.limbs[..self.limbs.len()].copy_from_slice(&self.limbs);
        if bit {
            out.set(self.len, true);
        }
        out
    }

    /// Drops the last coordinate.
    pub fn truncated(&self) -> BitWord {
        assert!(self.len > 0);
        let mut out = BitWord {
            len: self.len - 1,
            limbs: self.limbs[..limbs_for(self.len - 1)].to_vec(),
        };
        out.clear_tail();
        out
    }

    /// Cyclic shift: coordinate `i` moves to `(i + s) mod len`.
    pub fn rotated(&self, s: usize) -> BitWord {
        let n = self.len;
        if n == 0 {
            return self.clone();
        }
        let s = s % n;
        let mut out = BitWord::zeros(n);
        for i in self.iter_ones() {
            out.set((i + s) % n, true);
        }
        out
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut w = BitWord::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => w.set(i, true),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(w)
    }
}
