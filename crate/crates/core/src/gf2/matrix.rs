use std::fmt;
use std::str::FromStr;

use super::word::BitWord;
use crate::error::{Error, Result};

/// A dense matrix over GF(2), stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    ncols: usize,
    rows: Vec<BitWord>,
}

/// Generator in systematic form.
///
/// `generator` is the column-permuted matrix `[I_k | A]`; column `j` of it
/// is original coordinate `perm[j]`. `reduced` is the same row space in the
/// original coordinates, with row `i` carrying the unit vector on
/// `info_set[i]`, so `u * reduced` is a codeword whose restriction to the
/// information set equals `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematicForm {
    pub generator: BinaryMatrix,
    pub perm: Vec<usize>,
    pub info_set: Vec<usize>,
    pub reduced: BinaryMatrix,
}

impl BinaryMatrix {
    pub fn new(ncols: usize, rows: Vec<BitWord>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {ncols} columns",
                bad.len()
            )));
        }
        Ok(BinaryMatrix { ncols, rows })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BinaryMatrix {
            ncols,
            rows: vec![BitWord::zeros(ncols); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BinaryMatrix {
            ncols: n,
            rows: (0..n).map(|i| BitWord::from_positions(n, [i])).collect(),
        }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitWord {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<BitWord> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Reduced row-echelon form and pivot columns. Zero rows sink to the
    /// bottom; the row count is preserved.
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (
            BinaryMatrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the reduced echelon form, with their pivots.
    pub fn row_basis(&self) -> (BinaryMatrix, Vec<usize>) {
        let (mut m, pivots) = self.rref();
        m.rows.truncate(pivots.len());
        (m, pivots)
    }

    /// `u * M` for a row vector `u` of length `nrows`.
    pub fn mul_vec(&self, u: &BitWord) -> Result<BitWord> {
        if u.len() != self.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                u.len(),
                self.nrows(),
                self.ncols
            )));
        }
        let mut out = BitWord::zeros(self.ncols);
        for i in u.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// `M * v^T` as a word of length `nrows` (a syndrome when `M` is a
    /// parity-check matrix).
    pub fn syndrome(&self, v: &BitWord) -> BitWord {
        let mut s = BitWord::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                s.set(i, true);
            }
        }
        s
    }

    /// True when every row is orthogonal to `v`.
    pub fn annihilates(&self, v: &BitWord) -> bool {
        self.rows.iter().all(|row| !row.dot(v))
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    /// Columns in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> BinaryMatrix {
        BinaryMatrix {
            ncols: cols.len(),
            rows: self.rows.iter().map(|r| r.restrict(cols)).collect(),
        }
    }

    /// Basis of the right null space `{x : M x^T = 0}`; rank deficiency is
    /// allowed.
    pub fn null_space(&self) -> BinaryMatrix {
        let (basis, pivots) = self.row_basis();
        let n = self.ncols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitWord::from_positions(n, [free]);
                for (r, &p) in pivots.iter().enumerate() {
                    if basis.rows[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BinaryMatrix { ncols: n, rows }
    }

    /// Parity-check matrix for the row space of a full-rank generator.
    pub fn dual_basis(&self) -> Result<BinaryMatrix> {
        let rank = self.rank();
        if rank != self.nrows() {
            return Err(Error::RankDeficient {
                rank,
                expected: self.nrows(),
            });
        }
        Ok(self.null_space())
    }

    pub fn systematic_form(&self) -> Result<SystematicForm> {
        let k = self.nrows();
        let (basis, pivots) = self.row_basis();
        if pivots.len() != k {
            return Err(Error::RankDeficient {
                rank: pivots.len(),
                expected: k,
            });
        }
        Ok(Self::systematic_from_basis(basis, pivots))
    }

    /// Systematic form whose information set is exactly `info_set`, or
    /// `None` when those columns are not of full rank.
    pub fn systematic_on(&self, info_set: &[usize]) -> Option<SystematicForm> {
        let k = self.nrows();
        if info_set.len() != k {
            return None;
        }
        // Reorder columns so the requested set comes first, reduce, then map
        // back to original coordinates.
        let mut order: Vec<usize> = info_set.to_vec();
        let mut chosen = vec![false; self.ncols];
        for &c in info_set {
            chosen[c] = true;
        }
        order.extend((0..self.ncols).filter(|&c| !chosen[c]));
        let (basis, pivots) = self.select_columns(&order).row_basis();
        if pivots.len() != k || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        let mut inverse = vec![0; self.ncols];
        for (j, &c) in order.iter().enumerate() {
            inverse[c] = j;
        }
        let reduced_rows = basis
            .rows
            .iter()
            .map(|r| BitWord::from_positions(self.ncols, (0..self.ncols).filter(|&c| r.get(inverse[c]))))
            .collect();
        let reduced = BinaryMatrix {
            ncols: self.ncols,
            rows: reduced_rows,
        };
        Some(Self::systematic_from_basis(reduced, info_set.to_vec()))
    }

    fn systematic_from_basis(reduced: BinaryMatrix, info_set: Vec<usize>) -> SystematicForm {
        let n = reduced.ncols;
        let mut in_set = vec![false; n];
        for &p in &info_set {
            in_set[p] = true;
        }
        let mut perm = info_set.clone();
        perm.extend((0..n).filter(|&c| !in_set[c]));
        SystematicForm {
            generator: reduced.select_columns(&perm),
            perm,
            info_set,
            reduced,
        }
    }

    /// True when `v` lies in the row space.
    pub fn row_space_contains(&self, v: &BitWord) -> bool {
        let (basis, pivots) = self.row_basis();
        let mut v = v.clone();
        for (r, &p) in pivots.iter().enumerate() {
            if v.get(p) {
                v.xor_assign(&basis.rows[r]);
            }
        }
        v.is_zero()
    }

    /// Row-space equality.
    pub fn same_row_space(&self, other: &BinaryMatrix) -> bool {
        self.ncols == other.ncols && self.row_basis().0 == other.row_basis().0
    }

    /// Parses the text format: a line `n k`, then `k` lines of `n` bits.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension {t:?}"))))
            .collect::<Result<_>>()?;
        let [n, k] = dims[..] else {
            return Err(Error::Parse(format!("expected \"n k\", got {header:?}")));
        };
        let rows = lines
            .take(k)
            .map(BitWord::from_str)
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != k {
            return Err(Error::Parse(format!("expected {k} rows, found {}", rows.len())));
        }
        Self::new(n, rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.ncols, self.nrows());
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.nrows(), self.ncols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> BinaryMatrix {
        let rows: Vec<BitWord> = rows.iter().map(|r| r.parse().unwrap()).collect();
        BinaryMatrix::new(rows[0].len(), rows).unwrap()
    }

    #[test]
    fn rref_identity_and_duplicates() {
        let id = BinaryMatrix::identity(2);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
        let dup = m(&["11", "11"]);
        let (r, p) = dup.rref();
        assert_eq!(r, m(&["11", "00"]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = BinaryMatrix::zeros(3, 5);
        let (r, p) = z.rref();
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn systematic_of_identity() {
        let id = BinaryMatrix::identity(4);
        let s = id.systematic_form().unwrap();
        assert_eq!(s.generator, id);
        assert_eq!(s.perm, vec![0, 1, 2, 3]);
        assert_eq!(s.info_set, vec![0, 1, 2, 3]);
    }

    #[test]
    fn rank_deficient_rejected() {
        let g = m(&["1100", "0011", "1111"]);
        assert_eq!(
            g.systematic_form().unwrap_err(),
            Error::RankDeficient { rank: 2, expected: 3 }
        );
        assert!(g.dual_basis().is_err());
    }

    #[test]
    fn full_space_has_empty_dual() {
        let h = BinaryMatrix::identity(5).dual_basis().unwrap();
        assert_eq!(h.nrows(), 0);
        assert_eq!(h.ncols(), 5);
    }

    #[test]
    fn systematic_on_chosen_columns() {
        let g = m(&["1101000", "0110100", "0011010", "0001101"]);
        let s = g.systematic_on(&[3, 4, 5, 6]).unwrap();
        assert_eq!(s.info_set, vec![3, 4, 5, 6]);
        for (i, row) in s.reduced.rows().iter().enumerate() {
            assert_eq!(row.restrict(&[3, 4, 5, 6]), BitWord::from_positions(4, [i]));
            assert!(g.row_space_contains(row));
        }
        // columns 0,1,2 cannot carry four independent rows
        assert!(g.systematic_on(&[0, 1, 2, 3]).is_some());
        assert!(m(&["1100", "0011"]).systematic_on(&[0, 1]).is_none());
    }

    #[test]
    fn text_round_trip() {
        let g = m(&["1101000", "0110100"]);
        let text = g.to_text();
        assert_eq!(text, "7 2\n1101000\n0110100\n");
        assert_eq!(BinaryMatrix::parse_text(&text).unwrap(), g);
        assert!(BinaryMatrix::parse_text("7 3\n1101000\n").is_err());
    }
}
