//! Code constructions: generic linear codes, cyclic quadratic-residue codes
//! and parity extensions.
//!
//! Coordinate `j` of a cyclic code of length `n` carries the coefficient of
//! `x^j`, i.e. it is labelled by the residue `j mod n`. An extended code
//! places the overall parity at index `n`, the position called infinity.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::gf2::{cyclotomic_coset, BinaryMatrix, BitWord, Gf2Poly, RootsOfUnity, SystematicForm};

/// How a code was obtained; serialised as the header line of a code file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Raw,
    Qr { n: u64 },
    Cyclic { n: u64 },
    Extended(Box<Construction>),
    /// Subcode fixed by a set of coordinate permutations.
    Fixed,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Raw => f.write_str("raw"),
            Construction::Qr { n } => write!(f, "qr n={n}"),
            Construction::Cyclic { n } => write!(f, "cyclic n={n}"),
            Construction::Extended(parent) => match parent.as_ref() {
                Construction::Raw => f.write_str("extended"),
                p => write!(f, "extended {p}"),
            },
            Construction::Fixed => f.write_str("fixed"),
        }
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("extended") {
            let rest = rest.trim();
            let parent = if rest.is_empty() { Construction::Raw } else { rest.parse()? };
            return Ok(Construction::Extended(Box::new(parent)));
        }
        let parse_n = |rest: &str| -> Result<u64> {
            rest.trim()
                .strip_prefix("n=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad construction header {s:?}")))
        };
        if let Some(rest) = s.strip_prefix("qr") {
            return Ok(Construction::Qr { n: parse_n(rest)? });
        }
        if let Some(rest) = s.strip_prefix("cyclic") {
            return Ok(Construction::Cyclic { n: parse_n(rest)? });
        }
        match s {
            "raw" => Ok(Construction::Raw),
            "fixed" => Ok(Construction::Fixed),
            _ => Err(Error::Parse(format!("unknown construction header {s:?}"))),
        }
    }
}

/// A binary `[n, k]` linear code.
#[derive(Debug)]
pub struct LinearCode {
    generator: BinaryMatrix,
    parity_check: BinaryMatrix,
    cyclic_gen: Option<Gf2Poly>,
    extended_from: Option<usize>,
    construction: Construction,
    systematic: OnceLock<SystematicForm>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        LinearCode {
            generator: self.generator.clone(),
            parity_check: self.parity_check.clone(),
            cyclic_gen: self.cyclic_gen.clone(),
            extended_from: self.extended_from,
            construction: self.construction.clone(),
            systematic: self.systematic.clone(),
        }
    }
}

impl LinearCode {
    /// Code spanned by a full-rank generator matrix.
    pub fn from_generator(generator: BinaryMatrix) -> Result<Self> {
        let parity_check = generator.dual_basis()?;
        Ok(LinearCode {
            generator,
            parity_check,
            cyclic_gen: None,
            extended_from: None,
            construction: Construction::Raw,
            systematic: OnceLock::new(),
        })
    }

    /// Code spanned by arbitrary rows; dependent rows are dropped.
    pub fn spanned_by(ncols: usize, rows: Vec<BitWord>) -> Result<Self> {
        let basis = BinaryMatrix::new(ncols, rows)?.row_basis().0;
        Self::from_generator(basis)
    }

    /// Cyclic code with generator polynomial `g`, which must divide `x^n + 1`.
    pub fn cyclic(n: usize, g: Gf2Poly) -> Result<Self> {
        let deg = g
            .degree()
            .ok_or_else(|| Error::Inconsistent("zero generator polynomial".into()))?;
        if deg > n || !g.divides(&Gf2Poly::x_n_plus_one(n)) {
            return Err(Error::Inconsistent(format!("g(x) = {g} does not divide x^{n} + 1")));
        }
        let k = n - deg;
        let base = g.to_word(n)?;
        let rows = (0..k).map(|i| base.rotated(i)).collect();
        let mut code = Self::from_generator(BinaryMatrix::new(n, rows)?)?;
        code.cyclic_gen = Some(g);
        code.construction = Construction::Cyclic { n: n as u64 };
        Ok(code)
    }

    pub fn with_construction(mut self, construction: Construction) -> Self {
        self.construction = construction;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.generator.ncols()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.parity_check
    }

    pub fn cyclic_gen(&self) -> Option<&Gf2Poly> {
        self.cyclic_gen.as_ref()
    }

    /// Length of the parent code when this code is a parity extension.
    pub fn extended_from(&self) -> Option<usize> {
        self.extended_from
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Systematic form, computed on first use.
    pub fn systematic(&self) -> &SystematicForm {
        self.systematic.get_or_init(|| {
            self.generator
                .systematic_form()
                .expect("generator has full rank by construction")
        })
    }

    /// Membership test `c * H^T = 0`.
    pub fn contains(&self, c: &BitWord) -> bool {
        c.len() == self.n() && self.parity_check.annihilates(c)
    }

    /// Systematic encoding: the returned codeword equals `info` on the
    /// information set.
    pub fn encode(&self, info: &BitWord) -> Result<BitWord> {
        if info.len() != self.k() {
            return Err(Error::DimensionMismatch(format!(
                "information word of length {} for dimension {}",
                info.len(),
                self.k()
            )));
        }
        self.systematic().reduced.mul_vec(info)
    }

    /// The dual code.
    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(self.parity_check.clone())
            .expect("parity-check rows are independent")
    }

    /// True when both codes span the same space.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.generator.same_row_space(&other.generator)
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.k() == self.n() && self.generator.same_row_space(&self.parity_check)
    }

    /// Code file: construction header, then the matrix text format.
    pub fn to_file_text(&self) -> String {
        format!("{}\n{}", self.construction, self.generator.to_text())
    }

    pub fn parse_file_text(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        let (header, body) = trimmed
            .split_once('\n')
            .ok_or_else(|| Error::Parse("code file needs a header and a matrix".into()))?;
        let construction: Construction = header.parse()?;
        let generator = BinaryMatrix::parse_text(body)?;
        let code = match &construction {
            // Rebuild algebraic metadata for known constructions and check
            // the stored matrix spans the same code.
            Construction::Qr { n } => qr_code(*n)?,
            Construction::Extended(parent) if matches!(**parent, Construction::Qr { .. }) => {
                let Construction::Qr { n } = **parent else { unreachable!() };
                extend_code(&qr_code(n)?)
            }
            _ => {
                let mut c = LinearCode::from_generator(generator.clone())?;
                c.construction = construction.clone();
                if let Construction::Extended(_) = construction {
                    c.extended_from = Some(c.n() - 1);
                }
                return Ok(c);
            }
        };
        if !code.generator.same_row_space(&generator) {
            return Err(Error::Inconsistent(format!(
                "matrix does not span the {construction} code"
            )));
        }
        Ok(code)
    }
}

/// Nonzero quadratic residues modulo a prime.
pub fn quadratic_residues(n: u64) -> Result<BTreeSet<u64>> {
    if !is_prime_u64(n) {
        return Err(Error::NotPrime(n));
    }
    Ok((1..n).map(|j| j * j % n).collect())
}

/// Partition of `0..n` into cyclotomic cosets under multiplication by 2,
/// ordered by smallest representative.
pub fn cyclotomic_cosets(n: u64) -> Result<Vec<BTreeSet<u64>>> {
    if n % 2 == 0 {
        return Err(Error::InvalidModulus(n));
    }
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for s in 0..n {
        if !seen[s as usize] {
            let coset = cyclotomic_coset(n, s);
            for &x in &coset {
                seen[x as usize] = true;
            }
            cosets.push(coset);
        }
    }
    Ok(cosets)
}

/// The binary quadratic-residue code `QR(n, (n+1)/2)`, whose generator
/// polynomial has root exponents exactly the quadratic residues.
pub fn qr_code(n: u64) -> Result<LinearCode> {
    let q = quadratic_residues(n)?;
    if n % 8 != 1 && n % 8 != 7 {
        return Err(Error::NotQrPrime(n));
    }
    let roots = RootsOfUnity::new(n)?;
    let g = roots.product_of_roots(&q)?;
    debug_assert!(q.iter().all(|&e| roots.eval_at_power(&g, e) == 0));
    let code = LinearCode::cyclic(n as usize, g)?;
    Ok(code.with_construction(Construction::Qr { n }))
}

/// Adjoins an overall parity bit at index `n` (position infinity).
pub fn extend_code(code: &LinearCode) -> LinearCode {
    let rows = code
        .generator
        .rows()
        .iter()
        .map(|r| r.appended(r.weight() % 2 == 1))
        .collect();
    let generator = BinaryMatrix::new(code.n() + 1, rows).expect("rows share a length");
    let mut ext = LinearCode::from_generator(generator).expect("extension preserves rank");
    ext.extended_from = Some(code.n());
    ext.construction = Construction::Extended(Box::new(code.construction.clone()));
    ext
}

/// Drops the infinity coordinate (the last one).
pub fn puncture_at_infinity(c: &BitWord) -> BitWord {
    c.truncated()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming() -> LinearCode {
        qr_code(7).unwrap()
    }

    #[test]
    fn residues() {
        assert_eq!(quadratic_residues(7).unwrap(), BTreeSet::from([1, 2, 4]));
        assert_eq!(
            quadratic_residues(17).unwrap(),
            BTreeSet::from([1, 2, 4, 8, 9, 13, 15, 16])
        );
        assert_eq!(quadratic_residues(15).unwrap_err(), Error::NotPrime(15));
    }

    #[test]
    fn cosets_of_seven() {
        let c = cyclotomic_cosets(7).unwrap();
        assert_eq!(
            c,
            vec![BTreeSet::from([0]), BTreeSet::from([1, 2, 4]), BTreeSet::from([3, 5, 6])]
        );
        assert_eq!(cyclotomic_cosets(8).unwrap_err(), Error::InvalidModulus(8));
    }

    #[test]
    fn qr7_is_hamming() {
        let c = hamming();
        assert_eq!((c.n(), c.k()), (7, 4));
        assert_eq!(c.cyclic_gen().unwrap().to_string(), "1101");
        assert_eq!(qr_code(11).unwrap_err(), Error::NotQrPrime(11));
    }

    #[test]
    fn encode_systematic_and_linear() {
        let c = hamming();
        let zero = c.encode(&BitWord::zeros(4)).unwrap();
        assert!(zero.is_zero());
        let info: BitWord = "1000".parse().unwrap();
        let cw = c.encode(&info).unwrap();
        assert!(c.contains(&cw));
        assert_eq!(cw.restrict(&c.systematic().info_set), info);
        assert!(matches!(cw.weight(), 3 | 4));
        assert!(c.encode(&BitWord::zeros(3)).is_err());
    }

    #[test]
    fn extended_hamming_is_self_dual() {
        let e = extend_code(&hamming());
        assert_eq!((e.n(), e.k()), (8, 4));
        assert!(e.is_self_dual());
        assert_eq!(e.extended_from(), Some(7));
        for r in e.generator().rows() {
            assert_eq!(r.weight() % 2, 0);
        }
    }

    #[test]
    fn repetition_extension() {
        let rep = LinearCode::from_generator(
            BinaryMatrix::new(3, vec!["111".parse().unwrap()]).unwrap(),
        )
        .unwrap();
        let e = extend_code(&rep);
        assert_eq!(e.generator().row(0).to_string(), "1111");
    }

    #[test]
    fn puncture_zero_word() {
        assert_eq!(puncture_at_infinity(&BitWord::zeros(8)), BitWord::zeros(7));
    }

    #[test]
    fn construction_headers() {
        for h in ["raw", "qr n=23", "extended qr n=23", "extended", "fixed", "cyclic n=15"] {
            assert_eq!(h.parse::<Construction>().unwrap().to_string(), h);
        }
        assert!("qr 23".parse::<Construction>().is_err());
    }

    #[test]
    fn code_file_round_trip() {
        let e = extend_code(&qr_code(23).unwrap());
        let text = e.to_file_text();
        assert!(text.starts_with("extended qr n=23\n24 12\n"));
        let back = LinearCode::parse_file_text(&text).unwrap();
        assert!(back.same_code(&e));
        assert_eq!(back.extended_from(), Some(23));
    }
}
