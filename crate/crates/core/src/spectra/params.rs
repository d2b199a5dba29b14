//! Lifting a coefficient congruence to a free parameter, bounding the lift
//! index, and picking it from an estimate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::affine::{rat, AffineSpectrum, Rational};
use crate::error::{Error, Result};

/// `param = offset + eta * modulus` for a natural number `eta`, optionally
/// restricted to `[eta_min, eta_max]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterCongruence {
    pub param: String,
    #[serde(with = "decimal")]
    pub offset: BigInt,
    #[serde(with = "decimal")]
    pub modulus: BigInt,
    #[serde(default, with = "decimal_opt")]
    pub eta_min: Option<BigInt>,
    #[serde(default, with = "decimal_opt")]
    pub eta_max: Option<BigInt>,
}

impl ParameterCongruence {
    pub fn value(&self, eta: &BigInt) -> BigInt {
        &self.offset + eta * &self.modulus
    }

    pub fn with_bounds(mut self, interval: &EtaInterval) -> Self {
        self.eta_min = interval.lo.clone();
        self.eta_max = interval.hi.clone();
        self
    }
}

/// Integer interval for a lift index; `None` marks an open end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaInterval {
    pub param: String,
    #[serde(with = "decimal_opt")]
    pub lo: Option<BigInt>,
    #[serde(with = "decimal_opt")]
    pub hi: Option<BigInt>,
}

/// From `A_w = c z` and `A_w = r (mod M)` derive `z = r/c (mod M/c)`.
pub fn lift_congruence(
    family: &AffineSpectrum,
    w: usize,
    residue: &BigInt,
    modulus: &BigInt,
) -> Result<ParameterCongruence> {
    if w > family.n() {
        return Err(Error::DimensionMismatch(format!("weight {w} exceeds {}", family.n())));
    }
    let row = family.row(w);
    let nonzero: Vec<usize> = (0..row.coeffs.len()).filter(|&t| !row.coeffs[t].is_zero()).collect();
    let [t] = nonzero[..] else {
        return Err(Error::NotMonomial { weight: w });
    };
    if !row.constant.is_zero() || !row.coeffs[t].is_integer() {
        return Err(Error::NotMonomial { weight: w });
    }
    let c = row.coeffs[t].to_integer();
    if !modulus.is_positive() {
        return Err(Error::DivisibilityFailure(format!("modulus {modulus} is not positive")));
    }
    let (r, rem_r) = residue.div_rem(&c);
    let (m, rem_m) = modulus.div_rem(&c);
    if !rem_r.is_zero() || !rem_m.is_zero() {
        return Err(Error::DivisibilityFailure(format!(
            "coefficient {c} does not divide both {residue} and {modulus}"
        )));
    }
    let m = m.abs();
    Ok(ParameterCongruence {
        param: family.params()[t].clone(),
        offset: r.mod_floor(&m),
        modulus: m,
        eta_min: None,
        eta_max: None,
    })
}

fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// Interval of a variable: `(lo, hi)` with `None` for unbounded.
type Range = (Option<Rational>, Option<Rational>);

/// Propagates `A_w >= 0` for every row through the congruences until no
/// bound moves, and returns the resulting interval of each lift index.
pub fn bound_parameters(
    family: &AffineSpectrum,
    congruences: &[ParameterCongruence],
) -> Result<Vec<EtaInterval>> {
    let d = family.params().len();
    // Variable t is eta_t where a congruence exists, else z_t itself.
    let mut lift: Vec<Option<&ParameterCongruence>> = vec![None; d];
    for c in congruences {
        let t = family
            .param_index(&c.param)
            .ok_or_else(|| Error::DimensionMismatch(format!("unknown parameter {}", c.param)))?;
        if lift[t].is_some() {
            return Err(Error::DimensionMismatch(format!("two congruences for {}", c.param)));
        }
        lift[t] = Some(c);
    }
    // Rows rewritten in the chosen variables.
    let rows: Vec<(Rational, Vec<Rational>)> = family
        .rows()
        .iter()
        .filter(|r| !r.is_constant())
        .map(|r| {
            let mut constant = r.constant.clone();
            let coeffs = (0..d)
                .map(|t| match lift[t] {
                    Some(c) => {
                        constant += &r.coeffs[t] * rat(c.offset.clone());
                        &r.coeffs[t] * rat(c.modulus.clone())
                    }
                    None => r.coeffs[t].clone(),
                })
                .collect();
            (constant, coeffs)
        })
        .collect();

    let mut ranges: Vec<Range> = (0..d)
        .map(|t| {
            let c = lift[t];
            (
                c.and_then(|c| c.eta_min.clone()).map(rat),
                c.and_then(|c| c.eta_max.clone()).map(rat),
            )
        })
        .collect();
    // sup of a * v over the range of v
    let sup = |a: &Rational, r: &Range| -> Option<Rational> {
        if a.is_zero() {
            return Some(Rational::zero());
        }
        let end = if a.is_positive() { &r.1 } else { &r.0 };
        end.as_ref().map(|v| a * v)
    };
    for _ in 0..256 {
        let mut changed = false;
        for (constant, coeffs) in &rows {
            for u in (0..d).filter(|&u| !coeffs[u].is_zero()) {
                // coeffs[u] * v_u >= -(constant + sup of the other terms)
                let rest = (0..d)
                    .filter(|&t| t != u)
                    .try_fold(constant.clone(), |acc, t| sup(&coeffs[t], &ranges[t]).map(|s| acc + s));
                let Some(rest) = rest else { continue };
                let bound = -rest / &coeffs[u];
                let range = &mut ranges[u];
                if coeffs[u].is_positive() {
                    let b = rat(ceil(&bound));
                    if range.0.as_ref().map_or(true, |lo| &b > lo) {
                        range.0 = Some(b);
                        changed = true;
                    }
                } else {
                    let b = rat(floor(&bound));
                    if range.1.as_ref().map_or(true, |hi| &b < hi) {
                        range.1 = Some(b);
                        changed = true;
                    }
                }
                if let (Some(lo), Some(hi)) = &ranges[u] {
                    if lo > hi {
                        return Err(Error::EmptyInterval {
                            param: family.params()[u].clone(),
                        });
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(congruences
        .iter()
        .map(|c| {
            let t = family.param_index(&c.param).expect("checked above");
            EtaInterval {
                param: c.param.clone(),
                lo: ranges[t].0.as_ref().map(ceil),
                hi: ranges[t].1.as_ref().map(floor),
            }
        })
        .collect())
}

/// Lift index whose value lies nearest `estimate`; ties go to the smaller
/// index. The result is clamped to the congruence's bounds.
pub fn select_parameter(cong: &ParameterCongruence, estimate: &Rational) -> BigInt {
    let x = (estimate - rat(cong.offset.clone())) / rat(cong.modulus.clone());
    let f = x.floor();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut eta = if &x - &f > half { f.to_integer() + 1 } else { f.to_integer() };
    if let Some(lo) = &cong.eta_min {
        eta = eta.max(lo.clone());
    }
    if let Some(hi) = &cong.eta_max {
        eta = eta.min(hi.clone());
    }
    eta
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

mod decimal_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::affine::AffineForm;

    fn q(v: i64) -> Rational {
        rat(BigInt::from(v))
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// A_0 = 1, A_1 = z, A_2 = 5 - z.
    fn small_family() -> AffineSpectrum {
        let rows = vec![
            AffineForm::constant(q(1), 1),
            AffineForm { constant: q(0), coeffs: vec![q(1)] },
            AffineForm { constant: q(5), coeffs: vec![q(-1)] },
        ];
        AffineSpectrum::new(2, vec!["z".into()], vec![1], rows).unwrap()
    }

    #[test]
    fn trivial_bounds() {
        let f = small_family();
        let c = lift_congruence(&f, 1, &big(0), &big(1)).unwrap();
        let b = bound_parameters(&f, &[c]).unwrap();
        assert_eq!(b[0].lo, Some(big(0)));
        assert_eq!(b[0].hi, Some(big(5)));
    }

    #[test]
    fn empty_interval() {
        let f = small_family();
        let c = ParameterCongruence {
            param: "z".into(),
            offset: big(0),
            modulus: big(1),
            eta_min: Some(big(6)),
            eta_max: None,
        };
        assert!(matches!(bound_parameters(&f, &[c]), Err(Error::EmptyInterval { .. })));
    }

    #[test]
    fn lift_requires_monomial_and_divisibility() {
        let f = small_family();
        assert_eq!(
            lift_congruence(&f, 2, &big(0), &big(4)).unwrap_err(),
            Error::NotMonomial { weight: 2 }
        );
        let rows = vec![
            AffineForm::constant(q(1), 1),
            AffineForm { constant: q(0), coeffs: vec![q(48)] },
        ];
        let f = AffineSpectrum::new(1, vec!["z1".into()], vec![1], rows).unwrap();
        let c = lift_congruence(&f, 1, &big(870960), &big(3483840)).unwrap();
        assert_eq!((c.offset, c.modulus), (big(18145), big(72580)));
        assert!(matches!(
            lift_congruence(&f, 1, &big(100), &big(3483840)),
            Err(Error::DivisibilityFailure(_))
        ));
    }

    #[test]
    fn nearest_index_with_ties_down_and_clamping() {
        let mut c = ParameterCongruence {
            param: "z".into(),
            offset: big(1),
            modulus: big(10),
            eta_min: None,
            eta_max: None,
        };
        assert_eq!(select_parameter(&c, &q(6)), big(0));
        assert_eq!(select_parameter(&c, &q(7)), big(1));
        assert_eq!(select_parameter(&c, &q(17)), big(2));
        assert_eq!(select_parameter(&c, &q(-100)), big(-10));
        c.eta_min = Some(big(0));
        c.eta_max = Some(big(3));
        assert_eq!(select_parameter(&c, &q(-100)), big(0));
        assert_eq!(select_parameter(&c, &q(1000)), big(3));
    }

    #[test]
    fn congruence_json() {
        let c = ParameterCongruence {
            param: "z2".into(),
            offset: big(39919),
            modulus: big(580640),
            eta_min: Some(big(0)),
            eta_max: None,
        };
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"39919\""));
        assert_eq!(serde_json::from_str::<ParameterCongruence>(&text).unwrap(), c);
    }
}
