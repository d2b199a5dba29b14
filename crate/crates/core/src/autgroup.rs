//! Coordinate permutation groups acting on codes, and congruences for
//! weight counts obtained from the subcodes fixed by their subgroups.
//!
//! Coordinates are `0..n-1` plus, for extended codes, the infinity position
//! at index `n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize_u64, inverse_mod, is_prime_u64, smallest_primitive_root};
use crate::codes::{Construction, LinearCode};
use crate::error::{Error, Result};
use crate::exactcount::{exhaustive_spectrum, CountBudget};
use crate::gf2::{BinaryMatrix, BitWord};
use crate::spectra::WeightSpectrum;

/// A bijection of `0..degree`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut hit = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut hit[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    /// Moves coordinate `i` of `c` to position `σ(i)`.
    pub fn apply(&self, c: &BitWord) -> BitWord {
        BitWord::from_positions(c.len(), c.iter_ones().map(|i| self.images[i]))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.images)
    }
}

/// Finitely generated permutation group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroup {
    pub generators: Vec<Permutation>,
    pub known_order: Option<u64>,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>, known_order: Option<u64>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidPermutation("a group needs at least one generator".into()));
        };
        if generators.iter().any(|g| g.degree() != first.degree()) {
            return Err(Error::DimensionMismatch("generators of different degrees".into()));
        }
        Ok(PermGroup {
            generators,
            known_order,
        })
    }

    pub fn degree(&self) -> usize {
        self.generators[0].degree()
    }

    /// Product of 1 to 64 uniformly chosen generators or their inverses.
    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        let len = rng.gen_range(1..=64);
        let mut g = Permutation::identity(self.degree());
        for _ in 0..len {
            let s = &self.generators[rng.gen_range(0..self.generators.len())];
            g = if rng.gen_bool(0.5) { g.compose(s) } else { g.compose(&s.inverse()) };
        }
        g
    }
}

/// `S: y -> y+1`, `V: y -> ρ² y`, `T: y -> -1/y` on `{0..n-1, ∞}` with
/// `∞` at index `n` and `ρ` the smallest primitive root mod `n`.
pub fn psl2_generators(n: u64) -> Result<PermGroup> {
    if !is_prime_u64(n) || n < 5 {
        return Err(Error::NotPrime(n));
    }
    let inf = n as usize;
    let rho2 = {
        let r = smallest_primitive_root(n);
        r * r % n
    };
    let s: Vec<usize> = (0..n).map(|y| ((y + 1) % n) as usize).chain([inf]).collect();
    let v: Vec<usize> = (0..n).map(|y| (rho2 * y % n) as usize).chain([inf]).collect();
    let t: Vec<usize> = (0..n)
        .map(|y| if y == 0 { inf } else { ((n - inverse_mod(y, n)) % n) as usize })
        .chain([0])
        .collect();
    let gens = [s, v, t]
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(gens, Some(n * (n * n - 1) / 2))
}

/// Every generator row, permuted, stays in the code.
pub fn is_automorphism(code: &LinearCode, sigma: &Permutation) -> Result<bool> {
    if sigma.degree() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "permutation of degree {} on a code of length {}",
            sigma.degree(),
            code.n()
        )));
    }
    Ok(code.generator().rows().iter().all(|r| code.contains(&sigma.apply(r))))
}

/// An element of order exactly `q` (prime), found as a power of random
/// elements whose order `q` divides.
pub fn find_element_of_order(group: &PermGroup, q: u64, attempts: usize, rng: &mut impl Rng) -> Result<Permutation> {
    for _ in 0..attempts {
        let g = group.random_element(rng);
        let o = g.order();
        if o % q == 0 {
            let h = g.pow(o / q);
            debug_assert!(!h.is_identity() && h.pow(q).is_identity());
            return Ok(h);
        }
    }
    Err(Error::SearchExhausted(attempts))
}

fn element_of_order_power_of_two(group: &PermGroup, m: u32, rng: &mut impl Rng) -> Option<Permutation> {
    let g = group.random_element(rng);
    let o = g.order();
    let target = 1u64 << m;
    (o % target == 0).then(|| g.pow(o / target))
}

/// `(a, b)` with `a` of order `2^m`, `b` an involution and `b a b = a^{-1}`.
pub fn find_dihedral_pair(
    group: &PermGroup,
    m: u32,
    attempts: usize,
    rng: &mut impl Rng,
) -> Result<(Permutation, Permutation)> {
    if m == 0 {
        return Err(Error::InvalidConfig("dihedral pair needs m >= 1".into()));
    }
    let mut tries = 0;
    let mut a = None;
    while tries < attempts {
        tries += 1;
        if let Some(x) = element_of_order_power_of_two(group, m, rng) {
            a = Some(x);
            break;
        }
    }
    let a = a.ok_or(Error::SearchExhausted(attempts))?;
    if m == 1 {
        return Ok((a.clone(), a));
    }
    let a_inv = a.inverse();
    while tries < attempts {
        tries += 1;
        let Some(b) = element_of_order_power_of_two(group, 1, rng) else { continue };
        if b.compose(&a).compose(&b) == a_inv {
            return Ok((a, b));
        }
    }
    Err(Error::SearchExhausted(attempts))
}

/// Coordinate orbits of the group generated by `perms`.
fn orbits(n: usize, perms: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in perms {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, p.image(i)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Codewords fixed by every permutation in `perms`. A word is fixed exactly
/// when it is constant on each coordinate orbit, so the subcode is the set
/// of orbit-indicator combinations with zero syndrome.
pub fn fixed_subcode(code: &LinearCode, perms: &[Permutation]) -> Result<LinearCode> {
    let n = code.n();
    if let Some(p) = perms.iter().find(|p| p.degree() != n) {
        return Err(Error::DimensionMismatch(format!(
            "permutation of degree {} on a code of length {n}",
            p.degree()
        )));
    }
    let orbits = orbits(n, perms);
    let indicators: Vec<BitWord> = orbits.iter().map(|o| BitWord::from_positions(n, o.iter().copied())).collect();
    let h = code.parity_check();
    // Column o of `system` is the syndrome of orbit o.
    let rows: Vec<BitWord> = h
        .rows()
        .iter()
        .map(|hr| BitWord::from_bits(&indicators.iter().map(|ind| hr.dot(ind)).collect::<Vec<_>>()))
        .collect();
    let system = BinaryMatrix::new(orbits.len(), rows)?;
    let words: Vec<BitWord> = system
        .null_space()
        .rows()
        .iter()
        .map(|x| {
            let mut w = BitWord::zeros(n);
            for o in x.iter_ones() {
                w.xor_assign(&indicators[o]);
            }
            w
        })
        .collect();
    let sub = LinearCode::from_generator(BinaryMatrix::new(n, words)?)?;
    Ok(sub.with_construction(Construction::Fixed))
}

/// `(2^m + 1) F2_j - 2^{m-1} (F0_j + F1_j)` for every weight.
pub fn sylow2_spectrum(f2: &WeightSpectrum, f0: &WeightSpectrum, f1: &WeightSpectrum, m: u32) -> Result<WeightSpectrum> {
    if m == 0 {
        return Err(Error::InvalidConfig("the Sylow-2 formula needs m >= 1".into()));
    }
    let n = f2.n();
    if f0.n() != n || f1.n() != n {
        return Err(Error::DimensionMismatch("spectra of different lengths".into()));
    }
    let big = BigUint::one() << (m as usize);
    let half = BigUint::one() << (m as usize - 1);
    let coeffs = (0..=n)
        .map(|j| {
            let plus = (&big + 1u32) * f2.get(j);
            let minus = &half * (f0.get(j) + f1.get(j));
            if minus > plus {
                return Err(Error::NegativeCoefficient { weight: j });
            }
            Ok(plus - minus)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightSpectrum::from_coeffs(coeffs))
}

/// Unique residue modulo the product of pairwise coprime moduli.
pub fn crt_combine(residues: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut acc = (BigInt::zero(), BigInt::one());
    for (r, m) in residues {
        if !m.is_positive() {
            return Err(Error::InvalidConfig(format!("modulus {m} is not positive")));
        }
        let g = acc.1.extended_gcd(m);
        if !g.gcd.is_one() {
            return Err(Error::NotCoprime(acc.1.to_string(), m.to_string()));
        }
        // x = acc.0 + acc.1 * t with acc.1 * t = r - acc.0 (mod m)
        let t = ((r - &acc.0) * g.x).mod_floor(m);
        let modulus = &acc.1 * m;
        acc = ((&acc.0 + &acc.1 * t).mod_floor(&modulus), modulus);
    }
    Ok(acc)
}

/// Per-weight congruence data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceEntry {
    pub residues: Vec<(BigInt, BigInt)>,
    pub combined: (BigInt, BigInt),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CongruenceTable {
    pub entries: BTreeMap<usize, CongruenceEntry>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    residues: Vec<[String; 2]>,
    combined: [String; 2],
}

impl CongruenceTable {
    pub fn to_json(&self) -> String {
        let pair = |(r, m): &(BigInt, BigInt)| [r.to_string(), m.to_string()];
        let map: BTreeMap<String, EntryFile> = self
            .entries
            .iter()
            .map(|(w, e)| {
                (
                    w.to_string(),
                    EntryFile {
                        residues: e.residues.iter().map(pair).collect(),
                        combined: pair(&e.combined),
                    },
                )
            })
            .collect();
        serde_json::to_string_pretty(&map).expect("table serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let map: BTreeMap<String, EntryFile> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let parse = |[r, m]: &[String; 2]| -> Result<(BigInt, BigInt)> {
            let p = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {s:?}")));
            Ok((p(r)?, p(m)?))
        };
        let mut entries = BTreeMap::new();
        for (w, e) in &map {
            let w: usize = w.parse().map_err(|_| Error::Parse(format!("bad weight {w:?}")))?;
            entries.insert(
                w,
                CongruenceEntry {
                    residues: e.residues.iter().map(parse).collect::<Result<_>>()?,
                    combined: parse(&e.combined)?,
                },
            );
        }
        Ok(CongruenceTable { entries })
    }
}

/// Subgroups whose fixed subcodes feed the congruences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubgroupLabel {
    /// `{1, a^{2^{m-1}}}`
    H2,
    /// `{1, a^{2^{m-1}}, b, a^{2^{m-1}} b}`
    G40,
    /// `{1, a^{2^{m-1}}, ab, a^{1+2^{m-1}} b}`
    G41,
    /// Generated by one element of prime order `q`.
    Cyclic(u64),
}

impl fmt::Display for SubgroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupLabel::H2 => f.write_str("H2"),
            SubgroupLabel::G40 => f.write_str("G4_0"),
            SubgroupLabel::G41 => f.write_str("G4_1"),
            SubgroupLabel::Cyclic(q) => write!(f, "S{q}"),
        }
    }
}

impl std::str::FromStr for SubgroupLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H2" => Ok(SubgroupLabel::H2),
            "G4_0" => Ok(SubgroupLabel::G40),
            "G4_1" => Ok(SubgroupLabel::G41),
            _ => s
                .strip_prefix('S')
                .and_then(|q| q.parse().ok())
                .map(SubgroupLabel::Cyclic)
                .ok_or_else(|| Error::Parse(format!("unknown subgroup label {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub seed: u64,
    /// Random elements tried per search.
    pub attempts: usize,
    /// Largest fixed-subcode dimension enumerated exhaustively.
    pub max_dimension: usize,
    pub threads: usize,
    /// Externally supplied counts `label -> weight -> count`; these take
    /// precedence over enumeration.
    pub injected: BTreeMap<SubgroupLabel, BTreeMap<usize, BigUint>>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            attempts: 100_000,
            max_dimension: 26,
            threads: 1,
            injected: BTreeMap::new(),
        }
    }
}

/// One fixed subcode used by the pipeline.
#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub label: SubgroupLabel,
    pub generators: Vec<Permutation>,
    pub dimension: usize,
    pub counts: BTreeMap<usize, BigUint>,
    pub injected: bool,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub group_order: u64,
    /// Exponent with `2^{m+1}` the 2-part of the group order.
    pub m: u32,
    pub dihedral_pair: Option<(Permutation, Permutation)>,
    pub subgroups: Vec<SubgroupRecord>,
    pub table: CongruenceTable,
}

fn subgroup_counts(
    code: &LinearCode,
    label: SubgroupLabel,
    generators: Vec<Permutation>,
    weights: &[usize],
    cfg: &PipelineConfig,
) -> Result<SubgroupRecord> {
    let sub = fixed_subcode(code, &generators)?;
    let dimension = sub.k();
    let (counts, injected) = if let Some(given) = cfg.injected.get(&label) {
        let counts = weights
            .iter()
            .map(|&w| {
                given
                    .get(&w)
                    .cloned()
                    .map(|c| (w, c))
                    .ok_or(Error::MissingCoefficient { weight: w })
            })
            .collect::<Result<_>>()?;
        (counts, true)
    } else {
        if dimension > cfg.max_dimension {
            return Err(Error::SubcodeTooLarge {
                label: label.to_string(),
                dimension,
            });
        }
        let mut budget = CountBudget::new(BigUint::one() << cfg.max_dimension);
        let spectrum = exhaustive_spectrum(&sub, &mut budget, cfg.threads)?;
        (weights.iter().map(|&w| (w, spectrum.get(w).clone())).collect(), false)
    };
    Ok(SubgroupRecord {
        label,
        generators,
        dimension,
        counts,
        injected,
    })
}

/// Congruences for `E_w` modulo the group order, read from fixed subcodes:
/// for each odd prime `q^e` the subcode fixed by an element of order `q`
/// gives `E_w mod q^e`; the 2-part `2^{m+1}` comes from the Sylow-2 formula
/// over a dihedral pair; the residues are combined by CRT.
pub fn mykkeltveit_congruences(
    code: &LinearCode,
    group: &PermGroup,
    weights: &[usize],
    cfg: &PipelineConfig,
) -> Result<PipelineReport> {
    let order = group
        .known_order
        .ok_or_else(|| Error::InvalidConfig("the group order must be known".into()))?;
    if order <= 1 {
        return Err(Error::DegenerateGroup);
    }
    if group.degree() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "group of degree {} on a code of length {}",
            group.degree(),
            code.n()
        )));
    }
    if let Some(&w) = weights.iter().find(|&&w| w > code.n()) {
        return Err(Error::DimensionMismatch(format!("weight {w} exceeds {}", code.n())));
    }
    let mut per_weight: BTreeMap<usize, Vec<(BigInt, BigInt)>> = weights.iter().map(|&w| (w, Vec::new())).collect();
    let mut subgroups = Vec::new();
    let mut m = 0;
    let mut dihedral_pair = None;

    for (q, e) in factorize_u64(order) {
        let modulus = BigInt::from(q).pow(e);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(q);
        if q == 2 && e >= 2 {
            m = e - 1;
            let (a, b) = find_dihedral_pair(group, m, cfg.attempts, &mut rng)?;
            let z = a.pow(1 << (m - 1));
            let h2 = subgroup_counts(code, SubgroupLabel::H2, vec![z.clone()], weights, cfg)?;
            let g40 = subgroup_counts(code, SubgroupLabel::G40, vec![z.clone(), b.clone()], weights, cfg)?;
            let g41 = subgroup_counts(code, SubgroupLabel::G41, vec![z, a.compose(&b)], weights, cfg)?;
            let spectrum = |rec: &SubgroupRecord| {
                let mut s = WeightSpectrum::zeros(code.n());
                for (&w, c) in &rec.counts {
                    s.set(w, c.clone());
                }
                s
            };
            let e2 = sylow2_spectrum(&spectrum(&h2), &spectrum(&g40), &spectrum(&g41), m)?;
            for (&w, list) in per_weight.iter_mut() {
                list.push((BigInt::from(e2.get(w).clone()).mod_floor(&modulus), modulus.clone()));
            }
            subgroups.extend([h2, g40, g41]);
            dihedral_pair = Some((a, b));
        } else {
            let g = find_element_of_order(group, q, cfg.attempts, &mut rng)?;
            let rec = subgroup_counts(code, SubgroupLabel::Cyclic(q), vec![g], weights, cfg)?;
            for (&w, list) in per_weight.iter_mut() {
                list.push((BigInt::from(rec.counts[&w].clone()).mod_floor(&modulus), modulus.clone()));
            }
            subgroups.push(rec);
        }
    }

    let mut table = CongruenceTable::default();
    for (w, residues) in per_weight {
        let combined = crt_combine(&residues)?;
        table.entries.insert(w, CongruenceEntry { residues, combined });
    }
    Ok(PipelineReport {
        group_order: order,
        m,
        dihedral_pair,
        subgroups,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{extend_code, qr_code};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_images(vec![1, 2, 0, 3]).unwrap();
        assert_eq!(p.order(), 3);
        assert!(p.pow(3).is_identity());
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(4));
        let c: BitWord = "1000".parse().unwrap();
        assert_eq!(p.apply(&c).to_string(), "0100");
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[1,2,0,3]");
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }

    #[test]
    fn psl2_orders() {
        assert_eq!(psl2_generators(7).unwrap().known_order, Some(168));
        assert_eq!(psl2_generators(191).unwrap().known_order, Some(3483840));
        assert_eq!(psl2_generators(199).unwrap().known_order, Some(3940200));
        assert!(psl2_generators(21).is_err());
        let g = psl2_generators(23).unwrap();
        assert_eq!(g.generators[0].order(), 23);
        assert_eq!(g.generators[1].order(), 11);
        assert_eq!(g.generators[2].order(), 2);
    }

    #[test]
    fn generators_preserve_extended_codes() {
        for n in [7u64, 23] {
            let e = extend_code(&qr_code(n).unwrap());
            for g in &psl2_generators(n).unwrap().generators {
                assert!(is_automorphism(&e, g).unwrap());
            }
            let swap = Permutation::from_images({
                let mut v: Vec<usize> = (0..=n as usize).collect();
                v.swap(0, 1);
                v
            })
            .unwrap();
            assert!(!is_automorphism(&e, &swap).unwrap());
        }
    }

    #[test]
    fn element_searches() {
        let g = psl2_generators(23).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [2u64, 3, 11, 23] {
            let x = find_element_of_order(&g, q, 1000, &mut rng).unwrap();
            assert_eq!(x.order(), q);
        }
        assert!(matches!(find_element_of_order(&g, 5, 50, &mut rng), Err(Error::SearchExhausted(50))));
        let (a, b) = find_dihedral_pair(&g, 2, 10_000, &mut rng).unwrap();
        assert_eq!(a.order(), 4);
        assert_eq!(b.order(), 2);
        assert_eq!(b.compose(&a).compose(&b), a.inverse());
        let (a, b) = find_dihedral_pair(&g, 1, 1000, &mut rng).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fixed_subcodes() {
        let e = extend_code(&qr_code(23).unwrap());
        let id = Permutation::identity(24);
        assert!(fixed_subcode(&e, &[id]).unwrap().same_code(&e));
        let s = psl2_generators(23).unwrap().generators[0].clone();
        let f = fixed_subcode(&e, &[s.clone()]).unwrap();
        assert_eq!(f.k(), 1);
        assert_eq!(f.generator().row(0).weight(), 24);
        assert!(fixed_subcode(&e, &[Permutation::identity(5)]).is_err());
    }

    #[test]
    fn sylow2_arithmetic() {
        let s = |v: u32| WeightSpectrum::from_pairs(0, [(0, v)]);
        let e = sylow2_spectrum(&s(144), &s(6), &s(0), 5).unwrap();
        assert_eq!(e.get(0), &BigUint::from(4656u32));
        let e = sylow2_spectrum(&s(2675), &s(33), &s(15), 2).unwrap();
        assert_eq!(e.get(0), &BigUint::from(13279u32));
        assert_eq!(e.get(0) % 8u32, BigUint::from(7u32));
        let z = sylow2_spectrum(&s(0), &s(0), &s(0), 3).unwrap();
        assert_eq!(z.get(0), &BigUint::zero());
    }

    #[test]
    fn crt_cases() {
        assert_eq!(crt_combine(&[(big(0), big(2)), (big(0), big(3))]).unwrap(), (big(0), big(6)));
        let r = crt_combine(&[(big(48), big(64)), (big(0), big(3)), (big(0), big(5)), (big(0), big(19)), (big(0), big(191))]).unwrap();
        assert_eq!(r, (big(870960), big(3483840)));
        let r = crt_combine(&[(big(7), big(8)), (big(3), big(9)), (big(0), big(25)), (big(0), big(11)), (big(0), big(199))]).unwrap();
        assert_eq!(r, (big(2790975), big(3940200)));
        assert!(matches!(crt_combine(&[(big(1), big(4)), (big(1), big(6))]), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn golay_pipeline() {
        let e = extend_code(&qr_code(23).unwrap());
        let g = psl2_generators(23).unwrap();
        let report = mykkeltveit_congruences(&e, &g, &[8, 12], &PipelineConfig::default()).unwrap();
        assert_eq!(report.m, 2);
        assert_eq!(report.table.entries[&8].combined, (big(759), big(6072)));
        assert_eq!(report.table.entries[&12].combined, (big(2576), big(6072)));
        let back = CongruenceTable::from_json(&report.table.to_json()).unwrap();
        assert_eq!(back, report.table);
    }

    #[test]
    fn trivial_group_is_rejected() {
        let e = extend_code(&qr_code(7).unwrap());
        let g = PermGroup::new(vec![Permutation::identity(8)], Some(1)).unwrap();
        assert_eq!(mykkeltveit_congruences(&e, &g, &[4], &PipelineConfig::default()).unwrap_err(), Error::DegenerateGroup);
    }

    #[test]
    fn labels_round_trip() {
        for l in [SubgroupLabel::H2, SubgroupLabel::G40, SubgroupLabel::G41, SubgroupLabel::Cyclic(191)] {
            assert_eq!(l.to_string().parse::<SubgroupLabel>().unwrap(), l);
        }
    }
}
