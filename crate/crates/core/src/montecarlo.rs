//! Probabilistic estimate of a single weight count: GA witnesses are
//! spread by the automorphism group into a multiset archive, its distinct
//! size and its coverage of all weight-`w` words are estimated by sampling,
//! and the count is their product.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autgroup::{PermGroup, Permutation};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::ga::{map_ordered, wga_a1, GaConfig, SearchState};
use crate::gf2::BitWord;

/// Images computed per RNG stream during orbit expansion.
const CHUNK: u64 = 4096;
/// Generator steps taken before a chunk's first image, and between images.
const BURN_IN: usize = 256;
const STRIDE: usize = 16;

/// Multiset of weight-`w` codewords with exact multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitArchive {
    w: usize,
    seed: u64,
    sources: Vec<BitWord>,
    counts: HashMap<BitWord, u64>,
    total: u64,
}

#[derive(Serialize, Deserialize)]
struct ArchiveEntry {
    word: String,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct ArchiveFile {
    w: usize,
    entries: Vec<ArchiveEntry>,
    seed: u64,
    #[serde(default)]
    sources: Vec<String>,
}

impl OrbitArchive {
    pub fn new(w: usize, seed: u64) -> Self {
        OrbitArchive {
            w,
            seed,
            sources: Vec::new(),
            counts: HashMap::new(),
            total: 0,
        }
    }

    pub fn weight(&self) -> usize {
        self.w
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The GA-found words the archive was expanded from.
    pub fn sources(&self) -> &[BitWord] {
        &self.sources
    }

    /// `|S2|`, counting copies.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `|S3|`, the exact number of distinct words.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn multiplicity(&self, c: &BitWord) -> u64 {
        self.counts.get(c).copied().unwrap_or(0)
    }

    pub fn contains(&self, c: &BitWord) -> bool {
        self.counts.contains_key(c)
    }

    fn check(&self, code: &LinearCode, c: &BitWord) -> Result<()> {
        if c.weight() != self.w || !code.contains(c) {
            return Err(Error::Inconsistent(format!("{c} is not a weight-{} codeword", self.w)));
        }
        Ok(())
    }

    /// Adds `mult` copies of `c`; new words are checked against `code`.
    pub fn insert(&mut self, code: &LinearCode, c: &BitWord, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        match self.counts.get_mut(c) {
            Some(m) => *m += mult,
            None => {
                self.check(code, c)?;
                self.counts.insert(c.clone(), mult);
            }
        }
        self.total += mult;
        Ok(())
    }

    /// Entries sorted by word, so that output does not depend on hashing.
    pub fn entries(&self) -> Vec<(&BitWord, u64)> {
        let mut v: Vec<_> = self.counts.iter().map(|(c, &m)| (c, m)).collect();
        v.sort_by(|a, b| a.0.to_string().cmp(&b.0.to_string()));
        v
    }

    pub fn to_json(&self) -> String {
        let file = ArchiveFile {
            w: self.w,
            entries: self
                .entries()
                .into_iter()
                .map(|(c, mult)| ArchiveEntry {
                    word: c.to_string(),
                    mult,
                })
                .collect(),
            seed: self.seed,
            sources: self.sources.iter().map(|c| c.to_string()).collect(),
        };
        serde_json::to_string_pretty(&file).expect("archive serialises")
    }

    /// Parses an archive and rechecks every word against `code`.
    pub fn from_json(code: &LinearCode, text: &str) -> Result<Self> {
        let file: ArchiveFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut arch = OrbitArchive::new(file.w, file.seed);
        for e in &file.entries {
            if e.mult == 0 {
                return Err(Error::Parse(format!("zero multiplicity for {}", e.word)));
            }
            arch.insert(code, &e.word.parse()?, e.mult)?;
        }
        for s in &file.sources {
            let c: BitWord = s.parse()?;
            arch.check(code, &c)?;
            arch.sources.push(c);
        }
        Ok(arch)
    }
}

/// Applies `budget` random group elements to random members of `s1`.
///
/// Elements come from a random walk on the generators that is continued
/// between images. Its marginal distribution is close to uniform on the
/// group, which keeps multiplicities even; short independent generator
/// words concentrate on few elements and bias the distinct-count estimate.
pub fn expand_orbit(
    code: &LinearCode,
    s1: &[BitWord],
    group: &PermGroup,
    budget: u64,
    seed: u64,
    threads: usize,
) -> Result<OrbitArchive> {
    let first = s1.first().ok_or(Error::EmptySeedSet)?;
    let mut arch = OrbitArchive::new(first.weight(), seed);
    for c in s1 {
        arch.check(code, c)?;
    }
    arch.sources = s1.to_vec();
    expand_into(&mut arch, code, group, budget, seed, threads)?;
    Ok(arch)
}

/// Grows an archive from its own sources; a different `seed` gives fresh
/// images, so repeated calls only ever add words.
pub fn expand_into(
    arch: &mut OrbitArchive,
    code: &LinearCode,
    group: &PermGroup,
    budget: u64,
    seed: u64,
    threads: usize,
) -> Result<()> {
    if arch.sources.is_empty() {
        return Err(Error::EmptySeedSet);
    }
    if group.degree() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "group of degree {} on a code of length {}",
            group.degree(),
            code.n()
        )));
    }
    let sources = &arch.sources;
    let chunks: Vec<u64> = (0..budget.div_ceil(CHUNK)).collect();
    let images = map_ordered(&chunks, threads, |&chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let len = CHUNK.min(budget - chunk * CHUNK);
        let mut g = Permutation::identity(group.degree());
        let mut step = |g: &mut Permutation, steps: usize| {
            for _ in 0..steps {
                let s = &group.generators[rng.gen_range(0..group.generators.len())];
                *g = if rng.gen_bool(0.5) { g.compose(s) } else { g.compose(&s.inverse()) };
            }
        };
        step(&mut g, BURN_IN);
        let mut out = Vec::with_capacity(len as usize);
        for _ in 0..len {
            step(&mut g, STRIDE);
            out.push(g.clone());
        }
        out.into_iter()
            .map(|g| g.apply(&sources[rng.gen_range(0..sources.len())]))
            .collect::<Vec<_>>()
    });
    for c in images.into_iter().flatten() {
        arch.insert(code, &c, 1)?;
    }
    Ok(())
}

/// Batched sampling that stops once the running estimate has moved by less
/// than `tolerance` (relative) over the last `window` batches, or after
/// `max_samples`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stability {
    pub batch: usize,
    pub window: usize,
    pub tolerance: f64,
    pub max_samples: usize,
}

impl Default for Stability {
    fn default() -> Self {
        Stability {
            batch: 100,
            window: 10,
            tolerance: 0.01,
            max_samples: 1_000_000,
        }
    }
}

impl Stability {
    fn validate(&self) -> Result<()> {
        if self.batch == 0 || self.window == 0 || self.max_samples == 0 || !(self.tolerance >= 0.0) {
            return Err(Error::InvalidConfig(format!("bad stopping rule {self:?}")));
        }
        Ok(())
    }

    fn settled(&self, history: &[f64]) -> bool {
        let Some(&now) = history.last() else { return false };
        if history.len() <= self.window {
            return false;
        }
        let then = history[history.len() - 1 - self.window];
        (now - then).abs() <= self.tolerance * then.abs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctEstimate {
    /// `|S2| j / t`, rounded to the nearest integer.
    pub estimate: BigUint,
    /// Samples drawn.
    pub j: u64,
    /// Sum of the sampled multiplicities.
    pub t: u64,
    /// Exact distinct count of the archive, for comparison.
    pub exact: usize,
}

fn round_ratio(num: u128, den: u128) -> u128 {
    (2 * num + den) / (2 * den)
}

/// Size-biased sampling of the archive: draws members with probability
/// proportional to their multiplicity and estimates `|S3| = |S2| j / t`.
pub fn estimate_distinct(arch: &OrbitArchive, rule: &Stability, seed: u64) -> Result<DistinctEstimate> {
    rule.validate()?;
    if arch.is_empty() {
        return Err(Error::EmptySeedSet);
    }
    let entries = arch.entries();
    let mut cumulative = Vec::with_capacity(entries.len());
    let mut acc = 0u64;
    for (_, m) in &entries {
        acc += m;
        cumulative.push(acc);
    }
    let total = arch.total();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut j, mut t) = (0u64, 0u64);
    let mut history = Vec::new();
    while (j as usize) < rule.max_samples {
        for _ in 0..rule.batch.min(rule.max_samples - j as usize) {
            let r = rng.gen_range(0..total);
            let idx = cumulative.partition_point(|&c| c <= r);
            t += entries[idx].1;
            j += 1;
        }
        history.push(total as f64 * j as f64 / t as f64);
        if rule.settled(&history) {
            break;
        }
    }
    Ok(DistinctEstimate {
        estimate: BigUint::from(round_ratio(total as u128 * j as u128, t as u128)),
        j,
        t,
        exact: arch.distinct(),
    })
}

/// Source of independent weight-`w` codewords; `run` selects the run.
pub trait Sampler: Sync {
    fn sample(&self, run: u64) -> Result<BitWord>;
}

/// Fresh A1 searches, each returning the first weight-`w` word it meets.
pub struct GaSampler<'a> {
    pub code: &'a LinearCode,
    pub w: usize,
    pub cfg: GaConfig,
}

impl Sampler for GaSampler<'_> {
    fn sample(&self, run: u64) -> Result<BitWord> {
        let mut state = SearchState::with_cap(self.code.n(), 1);
        let cfg = GaConfig {
            threads: 1,
            ..self.cfg.with_seed(run)
        };
        if !wga_a1(self.code, self.w, &cfg, &mut state)? {
            return Err(Error::SamplerFailure(self.w));
        }
        Ok(state.witnesses(self.w)[0].clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceEstimate {
    /// `(1 + i) / s`
    pub rate: BigRational,
    pub i: u64,
    /// One plus the number of samples already in the archive.
    pub s: u64,
}

/// Dominance rate of the archive: the factor by which all weight-`w` words
/// outnumber its distinct members, from the hit rate of fresh samples.
pub fn estimate_dominance(
    arch: &OrbitArchive,
    sampler: &dyn Sampler,
    rule: &Stability,
    seed: u64,
    threads: usize,
) -> Result<DominanceEstimate> {
    rule.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut i, mut s) = (0u64, 1u64);
    let mut history = Vec::new();
    while (i as usize) < rule.max_samples {
        let runs: Vec<u64> = (0..rule.batch.min(rule.max_samples - i as usize)).map(|_| rng.gen()).collect();
        for c in map_ordered(&runs, threads, |&r| sampler.sample(r)) {
            let c = c?;
            if c.weight() != arch.weight() {
                return Err(Error::SamplerFailure(arch.weight()));
            }
            i += 1;
            if arch.contains(&c) {
                s += 1;
            }
        }
        history.push((1 + i) as f64 / s as f64);
        if rule.settled(&history) {
            break;
        }
    }
    Ok(DominanceEstimate {
        rate: BigRational::new(BigInt::from(1 + i), BigInt::from(s)),
        i,
        s,
    })
}

/// `round(distinct * rate)`, halves rounded up.
pub fn approximate_count(distinct: &BigUint, rate: &BigRational) -> Result<BigUint> {
    let product = BigRational::from_integer(BigInt::from(distinct.clone())) * rate;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = (product + half).floor().to_integer();
    rounded
        .to_biguint()
        .ok_or_else(|| Error::InvalidConfig(format!("negative rate {rate}")))
}

/// Exact rational value of a decimal such as `"1.639"`.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad decimal {text:?}"));
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len() + 1);
    Ok(BigRational::new(digits * sign, scale))
}

/// Full estimate of `A_w` from an archive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountEstimate {
    pub distinct: DistinctEstimate,
    pub dominance: DominanceEstimate,
    pub count: BigUint,
}

pub fn estimate_count(
    arch: &OrbitArchive,
    sampler: &dyn Sampler,
    rule: &Stability,
    seed: u64,
    threads: usize,
) -> Result<CountEstimate> {
    let distinct = estimate_distinct(arch, rule, seed)?;
    let dominance = estimate_dominance(arch, sampler, rule, seed.wrapping_add(1), threads)?;
    let count = approximate_count(&distinct.estimate, &dominance.rate)?;
    if count.is_zero() {
        return Err(Error::SamplerFailure(arch.weight()));
    }
    Ok(CountEstimate {
        distinct,
        dominance,
        count,
    })
}
