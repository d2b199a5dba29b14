//! Exact codeword counting: exhaustive enumeration, and the systematic
//! (M1), half-rate (M2) and cyclic (M3) methods for a single weight.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitWord;
use crate::spectra::WeightSpectrum;

/// Largest dimension enumerated exhaustively under the default budget.
pub const DEFAULT_MAX_DIMENSION: u32 = 26;

/// Caps the number of codewords a counting call may enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountBudget {
    limit: BigUint,
    spent: BigUint,
}

impl CountBudget {
    pub fn new(limit: BigUint) -> Self {
        CountBudget {
            limit,
            spent: BigUint::zero(),
        }
    }

    pub fn limit(&self) -> &BigUint {
        &self.limit
    }

    pub fn spent(&self) -> &BigUint {
        &self.spent
    }

    /// Reserves `work` codewords, or fails without reserving anything.
    pub fn charge(&mut self, work: &BigUint) -> Result<()> {
        let total = &self.spent + work;
        if total > self.limit {
            return Err(Error::BudgetExceeded {
                needed: total.to_string(),
                limit: self.limit.to_string(),
            });
        }
        self.spent = total;
        Ok(())
    }
}

impl Default for CountBudget {
    fn default() -> Self {
        CountBudget::new(BigUint::one() << DEFAULT_MAX_DIMENSION)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Exhaustive,
    M1,
    M2,
    M3,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::Exhaustive => "exhaustive",
            CountMethod::M1 => "m1",
            CountMethod::M2 => "m2",
            CountMethod::M3 => "m3",
        })
    }
}

impl FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(CountMethod::Exhaustive),
            "m1" => Ok(CountMethod::M1),
            "m2" => Ok(CountMethod::M2),
            "m3" => Ok(CountMethod::M3),
            _ => Err(Error::Parse(format!("unknown counting method {s:?}"))),
        }
    }
}

/// Exact `A_w` together with the number of codewords enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub weight: usize,
    pub count: BigUint,
    pub work: BigUint,
    pub method: CountMethod,
}

impl CountResult {
    pub fn fragment(&self) -> CountFragment {
        CountFragment {
            weight: self.weight,
            count: self.count.to_string(),
            method: self.method,
        }
    }
}

/// Serialised form `{"weight": 8, "count": "759", "method": "m2"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountFragment {
    pub weight: usize,
    pub count: String,
    pub method: CountMethod,
}

fn gray_walk(rows: &[BitWord], start: BitWord, counts: &mut [u64]) {
    let mut c = start;
    counts[c.weight()] += 1;
    for i in 1u64..(1u64 << rows.len()) {
        c.xor_assign(&rows[i.trailing_zeros() as usize]);
        counts[c.weight()] += 1;
    }
}

/// Spectrum by enumerating all `2^k` codewords in Gray-code order, one row
/// addition per codeword. With `threads > 1` the space is split by the
/// values of the last few information bits; the merged counts do not depend
/// on the schedule.
pub fn exhaustive_spectrum(code: &LinearCode, budget: &mut CountBudget, threads: usize) -> Result<WeightSpectrum> {
    let (n, k) = (code.n(), code.k());
    if k >= 64 {
        return Err(Error::BudgetExceeded {
            needed: format!("2^{k}"),
            limit: budget.limit().to_string(),
        });
    }
    budget.charge(&(BigUint::one() << k))?;
    let rows = code.generator().rows();
    let prefix_bits = (threads.max(1).next_power_of_two().trailing_zeros() as usize).min(k);
    let (free, fixed) = rows.split_at(k - prefix_bits);
    let chunks = 1usize << prefix_bits;
    let start = |chunk: usize| {
        let mut s = BitWord::zeros(n);
        for (b, row) in fixed.iter().enumerate() {
            if chunk >> b & 1 == 1 {
                s.xor_assign(row);
            }
        }
        s
    };
    let mut totals = vec![0u64; n + 1];
    if chunks == 1 {
        gray_walk(free, start(0), &mut totals);
    } else {
        let workers = threads.min(chunks);
        let partial: Vec<Vec<u64>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|t| {
                    let start = &start;
                    s.spawn(move || {
                        let mut counts = vec![0u64; n + 1];
                        for chunk in (t..chunks).step_by(workers) {
                            gray_walk(free, start(chunk), &mut counts);
                        }
                        counts
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for counts in partial {
            for (t, c) in totals.iter_mut().zip(counts) {
                *t += c;
            }
        }
    }
    Ok(WeightSpectrum::from_coeffs(totals.into_iter().map(BigUint::from).collect()))
}

/// `sum_{i=lo}^{hi} C(k, i)`
fn binomial_sum(k: usize, lo: usize, hi: usize) -> BigUint {
    (lo..=hi.min(k))
        .map(|i| binomial(BigUint::from(k), BigUint::from(i)))
        .sum()
}

/// Visits the XOR of every set of `lo..=hi` rows, choosing rows in
/// increasing index order.
fn for_each_combination(rows: &[BitWord], n: usize, lo: usize, hi: usize, visit: &mut impl FnMut(&BitWord)) {
    fn go(rows: &[BitWord], from: usize, depth: usize, lo: usize, hi: usize, acc: &mut BitWord, visit: &mut impl FnMut(&BitWord)) {
        if depth >= lo {
            visit(acc);
        }
        if depth == hi {
            return;
        }
        for i in from..rows.len() {
            acc.xor_assign(&rows[i]);
            go(rows, i + 1, depth + 1, lo, hi, acc, visit);
            acc.xor_assign(&rows[i]);
        }
    }
    go(rows, 0, 0, lo, hi, &mut BitWord::zeros(n), visit);
}

fn count_weight(rows: &[BitWord], n: usize, w: usize, lo: usize, hi: usize) -> u64 {
    let mut count = 0u64;
    for_each_combination(rows, n, lo, hi, &mut |c| {
        if c.weight() == w {
            count += 1;
        }
    });
    count
}

/// M1: in systematic form a codeword's information weight never exceeds its
/// weight, so encoding the information words of weight `1..=w` reaches
/// every weight-`w` codeword exactly once.
pub fn count_m1(code: &LinearCode, w: usize, budget: &mut CountBudget) -> Result<CountResult> {
    if w > code.n() {
        return Err(Error::DimensionMismatch(format!("weight {w} exceeds length {}", code.n())));
    }
    if w == 0 {
        return Ok(CountResult {
            weight: 0,
            count: BigUint::one(),
            work: BigUint::zero(),
            method: CountMethod::M1,
        });
    }
    let work = binomial_sum(code.k(), 1, w);
    budget.charge(&work)?;
    let count = count_weight(code.systematic().reduced.rows(), code.n(), w, 1, w);
    Ok(CountResult {
        weight: w,
        count: count.into(),
        work,
        method: CountMethod::M1,
    })
}

/// M2 for `[2k, k]` codes with two systematic forms on complementary
/// information sets `I'` and `I''`. A weight-`w` codeword has weight at most
/// `w/2` on one of them; the first form counts those with `wt_I' <= w/2`,
/// the second those with `wt_I'' < w - w/2`, so each is counted once. For
/// odd `w` both bounds are `(w-1)/2`.
pub fn count_m2(code: &LinearCode, w: usize, budget: &mut CountBudget) -> Result<CountResult> {
    let (n, k) = (code.n(), code.k());
    if n != 2 * k {
        return Err(Error::DimensionMismatch(format!("M2 needs n = 2k, got [{n}, {k}]")));
    }
    if w > n {
        return Err(Error::DimensionMismatch(format!("weight {w} exceeds length {n}")));
    }
    if w == 0 {
        return Ok(CountResult {
            weight: 0,
            count: BigUint::one(),
            work: BigUint::zero(),
            method: CountMethod::M2,
        });
    }
    let first = code.systematic().clone();
    let mut in_first = vec![false; n];
    for &c in &first.info_set {
        in_first[c] = true;
    }
    let complement: Vec<usize> = (0..n).filter(|&c| !in_first[c]).collect();
    let second = code.generator().systematic_on(&complement).ok_or(Error::NoDisjointForms)?;

    let half = w / 2;
    let second_max = if w % 2 == 0 { half - 1 } else { half };
    let work = binomial_sum(k, 0, half) + binomial_sum(k, 0, second_max);
    budget.charge(&work)?;
    let count = count_weight(first.reduced.rows(), n, w, 0, half)
        + count_weight(second.reduced.rows(), n, w, 0, second_max);
    Ok(CountResult {
        weight: w,
        count: count.into(),
        work,
        method: CountMethod::M2,
    })
}

/// Start of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation(bits: &[bool]) -> usize {
    let n = bits.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| bits[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if !sj && at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if !sj && at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k
}

/// The least rotation of `c` and its period (the size of its cyclic orbit).
pub fn canonical_rotation(c: &BitWord) -> (BitWord, usize) {
    let n = c.len();
    let s = least_rotation(&c.to_bits());
    let canon = c.rotated((n - s) % n);
    let period = (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| canon.rotated(p) == canon)
        .unwrap_or(n);
    (canon, period)
}

fn m3_count(rows: &[BitWord], n: usize, w: usize, r: usize) -> BigUint {
    let mut orbits: HashSet<BitWord> = HashSet::new();
    let mut total = BigUint::zero();
    for_each_combination(rows, n, r, r, &mut |c| {
        if c.weight() == w {
            let (canon, period) = canonical_rotation(c);
            if orbits.insert(canon) {
                total += period;
            }
        }
    });
    total
}

/// M3 for cyclic codes: some cyclic shift of every weight-`w` codeword has
/// exactly `r = floor(k w / n)` ones on the first `k` coordinates, which
/// form an information set. Encoding the weight-`r` information words and
/// closing under rotation finds every such codeword; orbits are
/// deduplicated by their least rotation.
pub fn count_m3(code: &LinearCode, w: usize, budget: &mut CountBudget) -> Result<CountResult> {
    let (n, k) = (code.n(), code.k());
    if code.cyclic_gen().is_none() {
        return Err(Error::NotCyclic);
    }
    if w > n {
        return Err(Error::DimensionMismatch(format!("weight {w} exceeds length {n}")));
    }
    if w == 0 {
        return Ok(CountResult {
            weight: 0,
            count: BigUint::one(),
            work: BigUint::zero(),
            method: CountMethod::M3,
        });
    }
    let first: Vec<usize> = (0..k).collect();
    let form = code.generator().systematic_on(&first).ok_or(Error::NotCyclic)?;
    let r = k * w / n;
    let work = binomial(BigUint::from(k), BigUint::from(r));
    budget.charge(&work)?;
    Ok(CountResult {
        weight: w,
        count: m3_count(form.reduced.rows(), n, w, r),
        work,
        method: CountMethod::M3,
    })
}

/// `2^{-mt} C(n, j)` for a primitive length `n = 2^m - 1`. The relative error
/// of this estimate is bounded only asymptotically; it is advisory.
pub fn sidelnikov_approx(n: u64, t: u32, j: u64) -> Result<BigRational> {
    if n == 0 || !(n + 1).is_power_of_two() {
        return Err(Error::NotPrimitiveLength(n));
    }
    let m = (n + 1).trailing_zeros();
    let c = if j > n { BigUint::zero() } else { binomial(BigUint::from(n), BigUint::from(j)) };
    let den = BigUint::one() << (m as usize * t as usize);
    Ok(BigRational::new(c.into(), den.into()))
}

/// Decimal rendering of a rational to `digits` places, for display.
pub fn rational_to_decimal(q: &BigRational, digits: usize) -> String {
    let scale = num_bigint::BigInt::from(10u32).pow(digits as u32);
    let scaled = (q * BigRational::from_integer(scale.clone())).round().to_integer();
    let sign = if scaled < num_bigint::BigInt::zero() { "-" } else { "" };
    let mag = num_traits::Signed::abs(&scaled);
    let int = &mag / &scale;
    let frac = &mag % &scale;
    if digits == 0 {
        return format!("{sign}{int}");
    }
    let frac = format!("{:0>width$}", frac.to_string(), width = digits);
    format!("{sign}{int}.{frac}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{extend_code, qr_code};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_least_rotation(bits: &[bool]) -> Vec<bool> {
        let n = bits.len();
        (0..n)
            .map(|s| (0..n).map(|i| bits[(s + i) % n]).collect::<Vec<_>>())
            .min()
            .unwrap()
    }

    #[test]
    fn booth_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..20 {
            for _ in 0..50 {
                let bits: Vec<bool> = (0..n).map(|_| rand::Rng::gen_bool(&mut rng, 0.4)).collect();
                let s = least_rotation(&bits);
                let got: Vec<bool> = (0..n).map(|i| bits[(s + i) % n]).collect();
                assert_eq!(got, brute_least_rotation(&bits));
            }
        }
    }

    #[test]
    fn period_of_periodic_word() {
        let c: BitWord = "011011011".parse().unwrap();
        let (canon, period) = canonical_rotation(&c);
        assert_eq!(period, 3);
        assert_eq!(canon.to_string(), "011011011");
    }

    #[test]
    fn hamming_counts() {
        let h = qr_code(7).unwrap();
        let mut b = CountBudget::default();
        assert_eq!(count_m1(&h, 3, &mut b).unwrap().count, BigUint::from(7u32));
        assert_eq!(count_m3(&h, 3, &mut b).unwrap().count, BigUint::from(7u32));
        assert_eq!(count_m1(&h, 0, &mut b).unwrap().count, BigUint::one());
        let e = extend_code(&h);
        let r = count_m2(&e, 4, &mut b).unwrap();
        assert_eq!(r.count, BigUint::from(14u32));
        assert_eq!(r.fragment().count, "14");
    }

    #[test]
    fn m2_work_formula() {
        let e = extend_code(&qr_code(23).unwrap());
        let r = count_m2(&e, 8, &mut CountBudget::default()).unwrap();
        assert_eq!(r.count, BigUint::from(759u32));
        assert_eq!(r.work, BigUint::from(1093u32));
    }

    #[test]
    fn m3_independent_of_order() {
        let g = qr_code(23).unwrap();
        let first: Vec<usize> = (0..12).collect();
        let form = g.generator().systematic_on(&first).unwrap();
        let mut rows = form.reduced.rows().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            rows.shuffle(&mut rng);
            assert_eq!(m3_count(&rows, 23, 7, 3), BigUint::from(253u32));
            assert_eq!(m3_count(&rows, 23, 8, 4), BigUint::from(506u32));
        }
    }

    #[test]
    fn budget_is_checked_before_work() {
        let g = qr_code(23).unwrap();
        let mut b = CountBudget::new(BigUint::from(100u32));
        assert!(matches!(exhaustive_spectrum(&g, &mut b, 1), Err(Error::BudgetExceeded { .. })));
        assert!(b.spent().is_zero());
        assert!(matches!(count_m1(&g, 7, &mut b), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn threads_do_not_change_counts() {
        let g = qr_code(23).unwrap();
        let one = exhaustive_spectrum(&g, &mut CountBudget::default(), 1).unwrap();
        let four = exhaustive_spectrum(&g, &mut CountBudget::default(), 4).unwrap();
        let three = exhaustive_spectrum(&g, &mut CountBudget::default(), 3).unwrap();
        assert_eq!(one, four);
        assert_eq!(one, three);
        assert_eq!(one.get(7), &BigUint::from(253u32));
    }

    #[test]
    fn sidelnikov_values() {
        let q = sidelnikov_approx(15, 2, 8).unwrap();
        assert_eq!(q, BigRational::new(6435.into(), 256.into()));
        assert_eq!(rational_to_decimal(&q, 3), "25.137");
        let tail = sidelnikov_approx(255, 6, 255).unwrap();
        assert_eq!(tail, BigRational::new(1.into(), num_bigint::BigInt::one() << 48usize));
        assert!(sidelnikov_approx(23, 1, 0).is_err());
    }
}
