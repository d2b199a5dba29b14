//! Spectra whose coefficients are affine forms in free integer parameters,
//! and the exact rational elimination that produces them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::spectrum::WeightSpectrum;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub(crate) fn rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `constant + sum_t coeffs[t] * z_t` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
}

impl AffineForm {
    pub fn constant(value: Rational, params: usize) -> Self {
        AffineForm {
            constant: value,
            coeffs: vec![Rational::zero(); params],
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.is_constant()
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(values)
            .fold(self.constant.clone(), |acc, (c, v)| acc + c * v)
    }

    /// Integer-only view `(constant, coeffs)`, if every entry is integral.
    pub fn as_integers(&self) -> Option<(BigInt, Vec<BigInt>)> {
        if !self.constant.is_integer() || self.coeffs.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some((
            self.constant.to_integer(),
            self.coeffs.iter().map(|c| c.to_integer()).collect(),
        ))
    }
}

/// A family of spectra `A_w = c_w + sum_t d_{w,t} z_t`.
///
/// Each parameter has a pivot weight: the weight whose coefficient it was
/// introduced to stand for. Pivots are the lowest weights left undetermined
/// by the constraints, so knowing `A_w` for `w` up to the largest pivot fixes
/// the whole spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpectrum {
    n: usize,
    params: Vec<String>,
    pivots: Vec<usize>,
    rows: Vec<AffineForm>,
}

impl AffineSpectrum {
    pub fn new(n: usize, params: Vec<String>, pivots: Vec<usize>, rows: Vec<AffineForm>) -> Result<Self> {
        if rows.len() != n + 1
            || params.len() != pivots.len()
            || rows.iter().any(|r| r.coeffs.len() != params.len())
        {
            return Err(Error::DimensionMismatch(
                "affine spectrum rows do not match length or parameter count".into(),
            ));
        }
        Ok(AffineSpectrum { n, params, pivots, rows })
    }

    /// Family with no free parameters.
    pub fn fixed(spectrum: &WeightSpectrum) -> Self {
        AffineSpectrum {
            n: spectrum.n(),
            params: Vec::new(),
            pivots: Vec::new(),
            rows: spectrum
                .coeffs()
                .iter()
                .map(|c| AffineForm::constant(rat(BigInt::from(c.clone())), 0))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, w: usize) -> &AffineForm {
        &self.rows[w]
    }

    pub fn rows(&self) -> &[AffineForm] {
        &self.rows
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    /// Largest pivot weight; 0 when the family is a single spectrum.
    pub fn semi_local_threshold(&self) -> usize {
        self.pivots.iter().copied().max().unwrap_or(0)
    }

    /// Replaces parameter `t` by `factor * z_new`.
    pub fn reparameterize(&mut self, t: usize, factor: &Rational) {
        for row in &mut self.rows {
            row.coeffs[t] = &row.coeffs[t] * factor;
        }
    }

    pub fn rename_params(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.params.len());
        self.params = names;
    }

    /// Rescales every parameter so `A_w = s * z` at its pivot with
    /// `s = (n+1)/gcd(n+1, w)` for a family over an extended QR code of
    /// length `n+1 = self.n()`. Then `z` is the integer `A_{w-1}` of the
    /// punctured QR code divided by `w/gcd(n+1, w)`.
    pub fn qr_reparameterize(&mut self) -> Result<()> {
        let len = self.n as u64;
        for t in 0..self.params.len() {
            let w = self.pivots[t];
            let current = self.rows[w].coeffs[t].clone();
            if current.is_zero() || !self.rows[w].constant.is_zero() {
                return Err(Error::NotMonomial { weight: w });
            }
            let scale = rat(BigInt::from(len / len.gcd(&(w as u64))));
            let factor = scale / current;
            self.reparameterize(t, &factor);
        }
        Ok(())
    }

    /// Exact evaluation at integer parameter values.
    pub fn substitute(&self, values: &[BigInt]) -> Result<WeightSpectrum> {
        if values.len() != self.params.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} parameters",
                values.len(),
                self.params.len()
            )));
        }
        let values: Vec<Rational> = values.iter().cloned().map(rat).collect();
        let coeffs = self
            .rows
            .iter()
            .enumerate()
            .map(|(w, row)| {
                let v = row.eval(&values);
                if !v.is_integer() {
                    return Err(Error::NonIntegerResult { weight: w });
                }
                let v = v.to_integer();
                if v.is_negative() {
                    return Err(Error::NegativeCoefficient { weight: w });
                }
                Ok(v.to_biguint().expect("nonnegative"))
            })
            .collect::<Result<Vec<BigUint>>>()?;
        Ok(WeightSpectrum::from_coeffs(coeffs))
    }

    /// Substitution with values looked up by parameter name.
    pub fn substitute_named(&self, values: &BTreeMap<String, BigInt>) -> Result<WeightSpectrum> {
        let ordered = self
            .params
            .iter()
            .map(|p| {
                values
                    .get(p)
                    .cloned()
                    .ok_or_else(|| Error::DimensionMismatch(format!("no value for parameter {p}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&ordered)
    }

    pub fn to_file(&self) -> AffineSpectrumFile {
        let pair = |q: &Rational| [q.numer().to_string(), q.denom().to_string()];
        AffineSpectrumFile {
            n: self.n,
            params: self.params.clone(),
            pivots: self.pivots.clone(),
            rows: self
                .rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.is_zero())
                .map(|(w, r)| {
                    let mut terms = vec![pair(&r.constant)];
                    terms.extend(r.coeffs.iter().map(pair));
                    (w, terms)
                })
                .collect(),
        }
    }

    pub fn from_file(file: &AffineSpectrumFile) -> Result<Self> {
        let p = file.params.len();
        let parse = |s: &str| -> Result<BigInt> {
            s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        };
        let mut rows = vec![AffineForm::constant(Rational::zero(), p); file.n + 1];
        for (&w, terms) in &file.rows {
            if w > file.n || terms.len() != p + 1 {
                return Err(Error::Parse(format!("malformed affine row at weight {w}")));
            }
            let vals = terms
                .iter()
                .map(|[num, den]| {
                    let den = parse(den)?;
                    if den.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(Rational::new(parse(num)?, den))
                })
                .collect::<Result<Vec<_>>>()?;
            rows[w] = AffineForm {
                constant: vals[0].clone(),
                coeffs: vals[1..].to_vec(),
            };
        }
        Self::new(file.n, file.params.clone(), file.pivots.clone(), rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("affine spectrum serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AffineSpectrumFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}

impl fmt::Display for AffineSpectrum {
    /// One `w : c + d1 z1 - d2 z2` line per nonzero row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, row) in self.rows.iter().enumerate().filter(|(_, r)| !r.is_zero()) {
            write!(f, "{w:>4} : ")?;
            let mut first = true;
            if !row.constant.is_zero() {
                write!(f, "{}", row.constant)?;
                first = false;
            }
            for (c, name) in row.coeffs.iter().zip(&self.params).filter(|(c, _)| !c.is_zero()) {
                let mag = c.abs();
                let sign = if c.is_negative() { "-" } else { "+" };
                match (first, mag.is_one()) {
                    (true, true) => write!(f, "{}{name}", if c.is_negative() { "-" } else { "" })?,
                    (true, false) => write!(f, "{c} {name}")?,
                    (false, true) => write!(f, " {sign} {name}")?,
                    (false, false) => write!(f, " {sign} {mag} {name}")?,
                }
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// On-disk affine family. Each row lists `[numerator, denominator]` decimal
/// string pairs: the constant first, then one per parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSpectrumFile {
    pub n: usize,
    pub params: Vec<String>,
    pub pivots: Vec<usize>,
    pub rows: BTreeMap<usize, Vec<[String; 2]>>,
}

/// Reduced row-echelon accumulator for `sum_u a_u x_u = b` over the
/// rationals.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    unknowns: usize,
    /// Rows normalised to 1 at their pivot, fully reduced against each other.
    rows: Vec<(usize, Vec<Rational>, Rational)>,
}

/// `x = particular + sum_f t_f * null_basis[f]`.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub particular: Vec<Rational>,
    pub null_basis: Vec<Vec<Rational>>,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> Self {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds one equation; fails when it contradicts the ones already added.
    pub fn add(&mut self, mut coeffs: Vec<Rational>, mut rhs: Rational) -> Result<()> {
        assert_eq!(coeffs.len(), self.unknowns);
        for (p, row, b) in &self.rows {
            if !coeffs[*p].is_zero() {
                let f = coeffs[*p].clone();
                for (c, r) in coeffs.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *c -= &f * r;
                    }
                }
                rhs -= &f * b;
            }
        }
        let Some(p) = coeffs.iter().position(|c| !c.is_zero()) else {
            if rhs.is_zero() {
                return Ok(());
            }
            return Err(Error::Inconsistent("linear system has no solution".into()));
        };
        let inv = coeffs[p].recip();
        for c in coeffs.iter_mut() {
            *c *= &inv;
        }
        rhs *= &inv;
        for (_, row, b) in &mut self.rows {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (r, c) in row.iter_mut().zip(&coeffs) {
                    if !c.is_zero() {
                        *r -= &f * c;
                    }
                }
                *b -= &f * &rhs;
            }
        }
        self.rows.push((p, coeffs, rhs));
        Ok(())
    }

    pub fn solve(&self) -> SolutionSpace {
        let mut particular = vec![Rational::zero(); self.unknowns];
        let mut is_pivot = vec![false; self.unknowns];
        for (p, _, b) in &self.rows {
            particular[*p] = b.clone();
            is_pivot[*p] = true;
        }
        let null_basis = (0..self.unknowns)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.unknowns];
                v[f] = Rational::one();
                for (p, row, _) in &self.rows {
                    v[*p] = -row[f].clone();
                }
                v
            })
            .collect();
        SolutionSpace {
            particular,
            null_basis,
        }
    }
}

/// Expresses observable quantities (one per weight) of a solution space in
/// terms of parameters pinned at the lowest undetermined weights.
///
/// `observable[w]` is an affine form in the system's unknowns. Returns the
/// spectrum family and, for each unknown, its affine form in the same
/// parameters.
pub(crate) fn parameterize(
    n: usize,
    space: &SolutionSpace,
    observable: &[AffineForm],
) -> (AffineSpectrum, Vec<AffineForm>) {
    let unknowns = space.particular.len();
    let d = space.null_basis.len();
    // Observable w as c'_w + r_w . t where x = x0 + N t.
    let project = |form: &AffineForm| -> (Rational, Vec<Rational>) {
        let c = form
            .coeffs
            .iter()
            .zip(&space.particular)
            .fold(form.constant.clone(), |acc, (m, x)| acc + m * x);
        let r = space
            .null_basis
            .iter()
            .map(|v| form.coeffs.iter().zip(v).fold(Rational::zero(), |acc, (m, x)| acc + m * x))
            .collect();
        (c, r)
    };
    let projected: Vec<(Rational, Vec<Rational>)> = observable.iter().map(project).collect();

    // Lowest weights with independent parameter rows.
    let mut chooser = LinearSystem::new(d);
    let mut pivots = Vec::new();
    for (w, (_, r)) in projected.iter().enumerate() {
        if pivots.len() == d {
            break;
        }
        let before = chooser.rank();
        chooser
            .add(r.clone(), Rational::zero())
            .expect("homogeneous rows never conflict");
        if chooser.rank() > before {
            pivots.push(w);
        }
    }
    assert_eq!(pivots.len(), d, "null directions must be observable");

    // t = M^{-1} (p - c'_W): invert the pivot rows.
    let m: Vec<Vec<Rational>> = pivots.iter().map(|&w| projected[w].1.clone()).collect();
    let m_inv = invert(&m);
    let c_w: Vec<Rational> = pivots.iter().map(|&w| projected[w].0.clone()).collect();
    // t_s = sum_j m_inv[s][j] (p_j - c_w[j])
    let t_forms: Vec<AffineForm> = (0..d)
        .map(|s| AffineForm {
            constant: -(0..d).fold(Rational::zero(), |acc, j| acc + &m_inv[s][j] * &c_w[j]),
            coeffs: m_inv[s].clone(),
        })
        .collect();
    let compose = |c: &Rational, r: &[Rational]| -> AffineForm {
        let mut out = AffineForm::constant(c.clone(), d);
        for (rs, tf) in r.iter().zip(&t_forms) {
            if rs.is_zero() {
                continue;
            }
            out.constant += rs * &tf.constant;
            for (o, x) in out.coeffs.iter_mut().zip(&tf.coeffs) {
                *o += rs * x;
            }
        }
        out
    };
    let mut rows: Vec<AffineForm> = projected.iter().map(|(c, r)| compose(c, r)).collect();
    let mut unknown_forms: Vec<AffineForm> = (0..unknowns)
        .map(|u| {
            let r: Vec<Rational> = space.null_basis.iter().map(|v| v[u].clone()).collect();
            compose(&space.particular[u], &r)
        })
        .collect();

    // Content-one integer columns: p_t = scale_t * z_t.
    for t in 0..d {
        let column = rows.iter().map(|r| &r.coeffs[t]);
        let lcm_den = column.clone().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let gcd_num = column.fold(BigInt::zero(), |acc, q| acc.gcd(&(q.numer() * (&lcm_den / q.denom()))));
        let scale = Rational::new(lcm_den, gcd_num);
        for r in rows.iter_mut().chain(unknown_forms.iter_mut()) {
            r.coeffs[t] = &r.coeffs[t] * &scale;
        }
    }
    debug_assert_eq!(rows.len(), n + 1);
    let params = (1..=d).map(|i| format!("z{i}")).collect();
    (
        AffineSpectrum {
            n,
            params,
            pivots,
            rows,
        },
        unknown_forms,
    )
}

/// Gauss-Jordan inverse of a nonsingular square matrix.
fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !a[r][c].is_zero()).expect("matrix is nonsingular");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[d..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        rat(BigInt::from(n))
    }

    #[test]
    fn inconsistent_system() {
        let mut s = LinearSystem::new(2);
        s.add(vec![q(1), q(1)], q(2)).unwrap();
        s.add(vec![q(2), q(2)], q(4)).unwrap();
        assert!(s.add(vec![q(1), q(1)], q(3)).is_err());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn one_free_direction() {
        // x0 + x1 = 2, observables: A_0 = 1, A_1 = x0, A_2 = x1
        let mut s = LinearSystem::new(2);
        s.add(vec![q(1), q(1)], q(2)).unwrap();
        let space = s.solve();
        let obs = vec![
            AffineForm::constant(q(1), 2),
            AffineForm { constant: q(0), coeffs: vec![q(1), q(0)] },
            AffineForm { constant: q(0), coeffs: vec![q(0), q(1)] },
        ];
        let (fam, unknowns) = parameterize(2, &space, &obs);
        assert_eq!(fam.pivots(), &[1]);
        assert_eq!(fam.row(2), &AffineForm { constant: q(2), coeffs: vec![q(-1)] });
        assert_eq!(unknowns[0], AffineForm { constant: q(0), coeffs: vec![q(1)] });
        assert_eq!(fam.semi_local_threshold(), 1);
        let s = fam.substitute(&[BigInt::from(1)]).unwrap();
        assert_eq!(s.coeffs(), &[BigUint::from(1u32), BigUint::from(1u32), BigUint::from(1u32)]);
        assert_eq!(
            fam.substitute(&[BigInt::from(3)]).unwrap_err(),
            Error::NegativeCoefficient { weight: 2 }
        );
    }

    #[test]
    fn fractional_columns_are_rescaled() {
        // A_1 = t, A_2 = t/2 + 1/2: scaled so A_1 = 2z, A_2 = z + 1/2.
        let space = SolutionSpace {
            particular: vec![q(0)],
            null_basis: vec![vec![q(1)]],
        };
        let obs = vec![
            AffineForm::constant(q(1), 1),
            AffineForm { constant: q(0), coeffs: vec![q(1)] },
            AffineForm { constant: Rational::new(1.into(), 2.into()), coeffs: vec![Rational::new(1.into(), 2.into())] },
        ];
        let (fam, _) = parameterize(2, &space, &obs);
        assert_eq!(fam.row(1).coeffs, vec![q(2)]);
        assert_eq!(fam.row(2).coeffs, vec![q(1)]);
        assert_eq!(
            fam.substitute(&[BigInt::from(1)]).unwrap_err(),
            Error::NonIntegerResult { weight: 2 }
        );
    }

    #[test]
    fn json_round_trip() {
        let rows = vec![
            AffineForm::constant(q(1), 1),
            AffineForm { constant: q(0), coeffs: vec![q(48)] },
            AffineForm { constant: q(-5), coeffs: vec![Rational::new(3.into(), 7.into())] },
        ];
        let fam = AffineSpectrum::new(2, vec!["z1".into()], vec![1], rows).unwrap();
        let back = AffineSpectrum::from_json(&fam.to_json()).unwrap();
        assert_eq!(back, fam);
        assert_eq!(fam.to_string(), "   0 : 1\n   1 : 48 z1\n   2 : -5 + 3/7 z1\n");
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert_eq!(invert(&m), vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
    }
}
