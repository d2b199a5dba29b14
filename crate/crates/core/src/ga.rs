//! Genetic search for codewords of a prescribed weight.
//!
//! Two variants share one generational loop. A1 evolves information words
//! and encodes them; A2 evolves words of length `n` and fixed weight and
//! maps them into the code with a decoder. Every codeword met along the way
//! marks its weight in the support and is archived as a witness.

use std::collections::HashSet;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand::seq::index;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitWord};
use crate::spectra::SupportSpectrum;

/// Default number of distinct witnesses kept per weight.
pub const DEFAULT_WITNESS_CAP: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    /// Population size.
    pub ni: usize,
    /// Elite count.
    pub ne: usize,
    /// Maximum number of generations.
    pub ngmax: usize,
    /// Crossover probability.
    pub pc: f64,
    /// Probability that an offspring is mutated at all.
    pub pm: f64,
    /// Per-gene flip probability of a mutated offspring.
    pub mr: f64,
    pub seed: u64,
    #[serde(default = "one")]
    pub threads: usize,
}

fn one() -> usize {
    1
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            ni: 1000,
            ne: 500,
            ngmax: 100,
            pc: 0.9,
            pm: 0.15,
            mr: 0.25,
            seed: 0,
            threads: 1,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ne == 0 || self.ne > self.ni {
            return Err(Error::InvalidConfig(format!("need 0 < ne <= ni, got ne={} ni={}", self.ne, self.ni)));
        }
        if self.ngmax == 0 {
            return Err(Error::InvalidConfig("ngmax must be at least 1".into()));
        }
        for (name, p) in [("pc", self.pc), ("pm", self.pm), ("mr", self.mr)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} = {p} is not a probability")));
            }
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GaConfig { seed, ..self.clone() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: GaConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    fn rng_for(&self, w: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(w as u64);
        rng
    }
}

/// Weights found so far, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchState {
    support: SupportSpectrum,
    witnesses: Vec<Vec<BitWord>>,
    seen: Vec<HashSet<BitWord>>,
    cap: usize,
    pub generations: u64,
    pub evaluations: u64,
}

/// One archived codeword: `{"weight": 7, "codeword": "0110..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub weight: usize,
    pub codeword: String,
}

impl SearchState {
    pub fn new(n: usize) -> Self {
        Self::with_cap(n, DEFAULT_WITNESS_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Self {
        SearchState {
            support: SupportSpectrum::empty(n),
            witnesses: vec![Vec::new(); n + 1],
            seen: vec![HashSet::new(); n + 1],
            cap: cap.max(1),
            generations: 0,
            evaluations: 0,
        }
    }

    pub fn support(&self) -> &SupportSpectrum {
        &self.support
    }

    pub fn found(&self, w: usize) -> bool {
        self.support.get(w)
    }

    /// Distinct witnesses of weight `w` in the order they were met.
    pub fn witnesses(&self, w: usize) -> &[BitWord] {
        &self.witnesses[w]
    }

    pub fn record(&mut self, c: &BitWord) {
        let w = c.weight();
        self.support.set(w);
        if self.witnesses[w].len() < self.cap && self.seen[w].insert(c.clone()) {
            self.witnesses[w].push(c.clone());
        }
    }

    /// Every marked weight has a witness of that weight lying in `code`.
    pub fn verify(&self, code: &LinearCode) -> bool {
        self.support.weights().into_iter().all(|w| {
            !self.witnesses[w].is_empty()
                && self.witnesses[w].iter().all(|c| c.weight() == w && code.contains(c))
        })
    }

    pub fn witness_entries(&self) -> Vec<WitnessEntry> {
        self.witnesses
            .iter()
            .enumerate()
            .flat_map(|(w, list)| {
                list.iter().map(move |c| WitnessEntry {
                    weight: w,
                    codeword: c.to_string(),
                })
            })
            .collect()
    }

    /// Rebuilds a state from archived witnesses, checking each against `code`.
    pub fn from_entries(code: &LinearCode, entries: &[WitnessEntry]) -> Result<Self> {
        let mut state = Self::new(code.n());
        for e in entries {
            let c: BitWord = e.codeword.parse()?;
            if c.weight() != e.weight || !code.contains(&c) {
                return Err(Error::Inconsistent(format!(
                    "archived word {} is not a weight-{} codeword",
                    e.codeword, e.weight
                )));
            }
            state.record(&c);
        }
        Ok(state)
    }
}

/// Maps a word of length `n` to a codeword.
pub trait Decoder: Sync {
    fn decode(&self, word: &BitWord) -> BitWord;
}

/// Keeps the received symbols on an information set and re-encodes.
#[derive(Clone, Debug)]
pub struct InformationSetDecoder {
    reduced: BinaryMatrix,
    info_set: Vec<usize>,
}

impl InformationSetDecoder {
    pub fn new(code: &LinearCode) -> Self {
        let form = code.systematic();
        InformationSetDecoder {
            reduced: form.reduced.clone(),
            info_set: form.info_set.clone(),
        }
    }
}

impl Decoder for InformationSetDecoder {
    fn decode(&self, word: &BitWord) -> BitWord {
        let mut out = BitWord::zeros(self.reduced.ncols());
        for (i, &c) in self.info_set.iter().enumerate() {
            if word.get(c) {
                out.xor_assign(self.reduced.row(i));
            }
        }
        out
    }
}

/// Coset-leader table decoding, for codes with `n <= 31`.
#[derive(Clone, Debug)]
pub struct SyndromeDecoder {
    parity_check: BinaryMatrix,
    leaders: Vec<BitWord>,
}

impl SyndromeDecoder {
    pub const MAX_LENGTH: usize = 31;

    pub fn new(code: &LinearCode) -> Result<Self> {
        let n = code.n();
        if n > Self::MAX_LENGTH {
            return Err(Error::DimensionMismatch(format!(
                "syndrome tables are limited to n <= {}, got {n}",
                Self::MAX_LENGTH
            )));
        }
        let h = code.parity_check().clone();
        let size = 1usize << h.nrows();
        let mut leaders: Vec<Option<BitWord>> = vec![None; size];
        let mut filled = 0;
        'weights: for t in 0..=n {
            for positions in combinations(n, t) {
                let e = BitWord::from_positions(n, positions);
                let s = syndrome_index(&h, &e);
                if leaders[s].is_none() {
                    leaders[s] = Some(e);
                    filled += 1;
                    if filled == size {
                        break 'weights;
                    }
                }
            }
        }
        Ok(SyndromeDecoder {
            parity_check: h,
            leaders: leaders.into_iter().map(|l| l.expect("every syndrome has a leader")).collect(),
        })
    }
}

fn syndrome_index(h: &BinaryMatrix, v: &BitWord) -> usize {
    h.rows()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.dot(v))
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// All `t`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, t: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (t <= n).then(|| (0..t).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut c = current.clone();
        let mut i = t;
        while i > 0 {
            i -= 1;
            if c[i] < n - t + i {
                c[i] += 1;
                for j in i + 1..t {
                    c[j] = c[j - 1] + 1;
                }
                next = Some(c);
                break;
            }
        }
        Some(current)
    })
}

impl Decoder for SyndromeDecoder {
    fn decode(&self, word: &BitWord) -> BitWord {
        word.xor(&self.leaders[syndrome_index(&self.parity_check, word)])
    }
}

/// Which WGA variant a sweep uses.
#[derive(Clone, Copy)]
pub enum Variant<'a> {
    A1,
    A2(&'a dyn Decoder),
}

/// Called once per generation with the evaluated population, sorted by
/// fitness: `(generation, [(fitness, individual)])`.
pub type Observer<'a> = &'a mut dyn FnMut(usize, &[(usize, BitWord)]);

pub(crate) fn map_ordered<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if threads <= 1 || items.len() < 2 * threads {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let f = &f;
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn distance(a: usize, b: usize) -> usize {
    a.abs_diff(b)
}

/// Information word uniform over all words of weight at most `max_weight`.
fn bounded_weight_word(rng: &mut ChaCha8Rng, k: usize, sampler: &WeightedIndex<f64>) -> BitWord {
    let j = sampler.sample(rng);
    BitWord::from_positions(k, index::sample(rng, k, j))
}

/// Weights proportional to `C(k, j)` for `j <= max`, scaled to avoid
/// overflow.
fn binomial_weights(k: usize, max: usize) -> WeightedIndex<f64> {
    let mut logs = vec![0.0f64; max + 1];
    for j in 0..max {
        logs[j + 1] = logs[j] + ((k - j) as f64 / (j + 1) as f64).ln();
    }
    let top = logs.iter().cloned().fold(f64::MIN, f64::max);
    WeightedIndex::new(logs.iter().map(|l| (l - top).exp())).expect("positive weights")
}

fn crossover(a: &BitWord, b: &BitWord, cut: usize) -> BitWord {
    let bits: Vec<bool> = (0..a.len()).map(|i| if i < cut { a.get(i) } else { b.get(i) }).collect();
    BitWord::from_bits(&bits)
}

fn mutate(rng: &mut ChaCha8Rng, c: &mut BitWord, cfg: &GaConfig) {
    if rng.gen_bool(cfg.pm) {
        for i in 0..c.len() {
            if rng.gen_bool(cfg.mr) {
                c.flip(i);
            }
        }
    }
}

fn sort_population(pop: &mut [(usize, BitWord)]) {
    pop.sort_by_key(|(f, _)| *f);
}

/// Algorithm A1 for target weight `w`; returns whether `w` was found.
pub fn wga_a1(code: &LinearCode, w: usize, cfg: &GaConfig, state: &mut SearchState) -> Result<bool> {
    wga_a1_observed(code, w, cfg, state, &mut |_, _| {})
}

pub fn wga_a1_observed(
    code: &LinearCode,
    w: usize,
    cfg: &GaConfig,
    state: &mut SearchState,
    observer: Observer<'_>,
) -> Result<bool> {
    cfg.validate()?;
    let (n, k) = (code.n(), code.k());
    if w > n {
        return Err(Error::DimensionMismatch(format!("target weight {w} exceeds {n}")));
    }
    let reduced = &code.systematic().reduced;
    let encode = |u: &BitWord| -> BitWord {
        let mut out = BitWord::zeros(n);
        for i in u.iter_ones() {
            out.xor_assign(reduced.row(i));
        }
        out
    };
    let mut rng = cfg.rng_for(w);
    let sampler = binomial_weights(k, w.min(k));
    let mut individuals = vec![BitWord::zeros(k)];
    individuals.extend((1..cfg.ni).map(|_| bounded_weight_word(&mut rng, k, &sampler)));

    let codewords = map_ordered(&individuals, cfg.threads, encode);
    let mut pop: Vec<(usize, BitWord)> = Vec::with_capacity(cfg.ni);
    for (ind, c) in individuals.into_iter().zip(&codewords) {
        state.record(c);
        pop.push((distance(c.weight(), w), ind));
    }
    state.evaluations += cfg.ni as u64;
    state.generations += 1;
    let mut generation = 1;
    sort_population(&mut pop);
    observer(generation, &pop);

    while !state.found(w) && generation < cfg.ngmax {
        let children: Vec<(BitWord, BitWord)> = (cfg.ne..cfg.ni)
            .map(|_| {
                let p1 = &pop[rng.gen_range(0..cfg.ne)].1;
                let p2 = &pop[rng.gen_range(0..cfg.ne)].1;
                let (mut c1, mut c2) = if k >= 2 && rng.gen_bool(cfg.pc) {
                    let cut = rng.gen_range(1..k);
                    (crossover(p1, p2, cut), crossover(p2, p1, cut))
                } else {
                    (p1.clone(), p2.clone())
                };
                mutate(&mut rng, &mut c1, cfg);
                mutate(&mut rng, &mut c2, cfg);
                (c1, c2)
            })
            .collect();
        let encoded = map_ordered(&children, cfg.threads, |(a, b)| (encode(a), encode(b)));
        pop.truncate(cfg.ne);
        for ((c1, c2), (e1, e2)) in children.into_iter().zip(encoded) {
            state.record(&e1);
            state.record(&e2);
            let (f1, f2) = (distance(e1.weight(), w), distance(e2.weight(), w));
            pop.push(if f1 < f2 { (f1, c1) } else { (f2, c2) });
        }
        state.evaluations += 2 * (cfg.ni - cfg.ne) as u64;
        state.generations += 1;
        generation += 1;
        sort_population(&mut pop);
        observer(generation, &pop);
    }
    Ok(state.found(w))
}

/// Algorithm A2 for target weight `w`; returns whether `w` was found.
pub fn wga_a2(
    code: &LinearCode,
    w: usize,
    cfg: &GaConfig,
    decoder: &dyn Decoder,
    state: &mut SearchState,
) -> Result<bool> {
    wga_a2_observed(code, w, cfg, decoder, state, &mut |_, _| {})
}

pub fn wga_a2_observed(
    code: &LinearCode,
    w: usize,
    cfg: &GaConfig,
    decoder: &dyn Decoder,
    state: &mut SearchState,
    observer: Observer<'_>,
) -> Result<bool> {
    cfg.validate()?;
    let n = code.n();
    if w > n {
        return Err(Error::DimensionMismatch(format!("target weight {w} exceeds {n}")));
    }
    let mut rng = cfg.rng_for(w);
    let decode = |v: &BitWord| decoder.decode(v);
    let absorb = |state: &mut SearchState, d: &BitWord| -> Result<usize> {
        if !code.contains(d) {
            return Err(Error::DecoderViolation);
        }
        state.record(d);
        Ok(distance(d.weight(), w))
    };

    let individuals: Vec<BitWord> = (0..cfg.ni)
        .map(|_| BitWord::from_positions(n, index::sample(&mut rng, n, w)))
        .collect();
    let decoded = map_ordered(&individuals, cfg.threads, decode);
    let mut pop: Vec<(usize, BitWord)> = Vec::with_capacity(cfg.ni);
    for (ind, d) in individuals.into_iter().zip(&decoded) {
        pop.push((absorb(state, d)?, ind));
    }
    state.evaluations += cfg.ni as u64;
    state.generations += 1;
    let mut generation = 1;
    sort_population(&mut pop);
    observer(generation, &pop);

    while !state.found(w) && generation < cfg.ngmax {
        let offspring: Vec<(usize, BitWord)> = (cfg.ne..cfg.ni)
            .map(|_| {
                let pick = rng.gen_range(0..cfg.ne);
                let parent = &pop[pick].1;
                let gamma: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                let mut sigma = gamma.clone();
                sigma.shuffle(&mut rng);
                let mut child = parent.clone();
                for (&j, &s) in gamma.iter().zip(&sigma) {
                    child.set(j, parent.get(s));
                }
                (pick, child)
            })
            .collect();
        let decoded = map_ordered(&offspring, cfg.threads, |(_, c)| decode(c));
        let mut next: Vec<(usize, BitWord)> = pop[..cfg.ne].to_vec();
        for ((pick, child), d) in offspring.into_iter().zip(&decoded) {
            let f_child = absorb(state, d)?;
            let (f_parent, parent) = &pop[pick];
            next.push(if *f_parent < f_child {
                (*f_parent, parent.clone())
            } else {
                (f_child, child)
            });
        }
        pop = next;
        state.evaluations += (cfg.ni - cfg.ne) as u64;
        state.generations += 1;
        generation += 1;
        sort_population(&mut pop);
        observer(generation, &pop);
    }
    Ok(state.found(w))
}

/// Sweeps every weight not yet marked, running one WGA per weight.
pub fn bega(code: &LinearCode, cfg: &GaConfig, variant: Variant<'_>) -> Result<SearchState> {
    let mut state = SearchState::new(code.n());
    bega_into(code, cfg, variant, &mut state)?;
    Ok(state)
}

pub fn bega_into(code: &LinearCode, cfg: &GaConfig, variant: Variant<'_>, state: &mut SearchState) -> Result<()> {
    for i in 0..=code.n() {
        if state.found(i) {
            continue;
        }
        match variant {
            Variant::A1 => wga_a1(code, i, cfg, state)?,
            Variant::A2(decoder) => wga_a2(code, i, cfg, decoder, state)?,
        };
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{extend_code, qr_code};

    fn small_cfg(seed: u64) -> GaConfig {
        GaConfig {
            ni: 200,
            ne: 100,
            ngmax: 30,
            seed,
            ..GaConfig::default()
        }
    }

    #[test]
    fn zero_weight_found_immediately() {
        let g = qr_code(23).unwrap();
        let mut s = SearchState::new(23);
        assert!(wga_a1(&g, 0, &small_cfg(1), &mut s).unwrap());
        assert_eq!(s.generations, 1);
        let mut s = SearchState::new(23);
        let dec = InformationSetDecoder::new(&g);
        assert!(wga_a2(&g, 0, &small_cfg(1), &dec, &mut s).unwrap());
    }

    #[test]
    fn a1_finds_golay_minimum_weight() {
        let g = qr_code(23).unwrap();
        let mut s = SearchState::new(23);
        assert!(wga_a1(&g, 7, &small_cfg(3), &mut s).unwrap());
        assert!(s.verify(&g));
        assert_eq!(s.witnesses(7)[0].weight(), 7);
    }

    #[test]
    fn impossible_weight_exhausts_generations() {
        let g = qr_code(23).unwrap();
        let mut s = SearchState::new(23);
        let cfg = small_cfg(4);
        assert!(!wga_a1(&g, 1, &cfg, &mut s).unwrap());
        assert_eq!(s.generations, cfg.ngmax as u64);
        assert!(!s.found(2));
    }

    #[test]
    fn a1_initial_weights_respect_target() {
        let g = qr_code(23).unwrap();
        let mut s = SearchState::new(23);
        let mut first = None;
        wga_a1_observed(&g, 3, &small_cfg(9), &mut s, &mut |gen, pop| {
            if gen == 1 {
                first = Some(pop.iter().map(|(_, ind)| ind.weight()).max().unwrap());
            }
        })
        .unwrap();
        assert!(first.unwrap() <= 3);
    }

    #[test]
    fn elites_never_worsen() {
        let g = qr_code(23).unwrap();
        let mut s = SearchState::new(23);
        let cfg = small_cfg(6);
        let mut previous: Option<Vec<usize>> = None;
        wga_a1_observed(&g, 2, &cfg, &mut s, &mut |_, pop| {
            let elite: Vec<usize> = pop[..cfg.ne].iter().map(|p| p.0).collect();
            if let Some(prev) = &previous {
                assert!(elite.iter().zip(prev).all(|(a, b)| a <= b));
            }
            previous = Some(elite);
        })
        .unwrap();
    }

    #[test]
    fn a2_keeps_weight_and_finds_octads() {
        let e = extend_code(&qr_code(23).unwrap());
        let dec = InformationSetDecoder::new(&e);
        let mut s = SearchState::new(24);
        let found = wga_a2_observed(&e, 8, &small_cfg(2), &dec, &mut s, &mut |_, pop| {
            assert!(pop.iter().all(|(_, ind)| ind.weight() == 8));
        })
        .unwrap();
        assert!(found);
        assert!(s.verify(&e));
    }

    #[test]
    fn syndrome_decoder_corrects_three_errors() {
        let g = qr_code(23).unwrap();
        let dec = SyndromeDecoder::new(&g).unwrap();
        let c = g.generator().row(0).clone();
        let mut v = c.clone();
        for i in [0, 5, 17] {
            v.flip(i);
        }
        assert_eq!(dec.decode(&v), c);
        let long = qr_code(47).unwrap();
        assert!(SyndromeDecoder::new(&long).is_err());
    }

    struct Broken;
    impl Decoder for Broken {
        fn decode(&self, word: &BitWord) -> BitWord {
            BitWord::from_positions(word.len(), [0])
        }
    }

    #[test]
    fn decoder_output_is_checked() {
        let g = qr_code(23).unwrap();
        let mut s = SearchState::new(23);
        assert_eq!(wga_a2(&g, 5, &small_cfg(1), &Broken, &mut s).unwrap_err(), Error::DecoderViolation);
    }

    #[test]
    fn threads_do_not_change_the_run() {
        let g = qr_code(23).unwrap();
        let mut a = SearchState::new(23);
        let mut b = SearchState::new(23);
        let cfg = small_cfg(8);
        wga_a1(&g, 2, &cfg, &mut a).unwrap();
        wga_a1(&g, 2, &GaConfig { threads: 4, ..cfg }, &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn config_validation_and_json() {
        let cfg = GaConfig::default();
        assert_eq!(GaConfig::from_json(&cfg.to_json()).unwrap(), cfg);
        assert!(GaConfig { ne: 0, ..cfg.clone() }.validate().is_err());
        assert!(GaConfig { pc: 1.5, ..cfg.clone() }.validate().is_err());
        let partial = r#"{"ni":10,"ne":5,"ngmax":3,"pc":0.9,"pm":0.1,"mr":0.2,"seed":7}"#;
        assert_eq!(GaConfig::from_json(partial).unwrap().threads, 1);
    }

    #[test]
    fn witnesses_round_trip() {
        let g = qr_code(23).unwrap();
        let s = bega(&g, &small_cfg(5), Variant::A1).unwrap();
        let back = SearchState::from_entries(&g, &s.witness_entries()).unwrap();
        assert_eq!(back.support(), s.support());
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
    }
}
