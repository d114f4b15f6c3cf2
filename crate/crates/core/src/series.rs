//! Truncated integer power series, rational generating functions and the
//! closed-form Hilbert-series predictors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;

/// Coefficients `a_0..a_D` of a power series, truncated at degree `D`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant term");
        TruncatedSeries { coeffs }
    }

    pub fn zero(d: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); d + 1],
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        TruncatedSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        TruncatedSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Truncation degree.
    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient at `d`; zero beyond the truncation is *not* implied, so
    /// callers asking past `D` get `None`.
    pub fn get(&self, d: usize) -> Option<&BigInt> {
        self.coeffs.get(d)
    }

    /// Coefficient at `d` as `i64`, panicking on overflow or out-of-range index.
    pub fn at(&self, d: usize) -> i64 {
        self.coeffs[d].to_i64().expect("coefficient fits in i64")
    }

    /// All coefficients as `i64`, if they fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn truncate(&self, d: usize) -> TruncatedSeries {
        let d = d.min(self.degree_bound());
        TruncatedSeries::new(self.coeffs[..=d].to_vec())
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let d = self.degree_bound().min(other.degree_bound());
        TruncatedSeries::new((0..=d).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let d = self.degree_bound().min(other.degree_bound());
        TruncatedSeries::new((0..=d).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect())
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let d = self.degree_bound().min(other.degree_bound());
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries::new(out)
    }

    /// Multiply by `t^k`, keeping the truncation degree.
    pub fn shift_up(&self, k: usize) -> TruncatedSeries {
        let d = self.degree_bound();
        TruncatedSeries::new(
            (0..=d)
                .map(|i| if i < k { BigInt::zero() } else { self.coeffs[i - k].clone() })
                .collect(),
        )
    }

    /// Divide by `t^k`, dropping the first `k` coefficients.
    pub fn shift_down(&self, k: usize) -> Option<TruncatedSeries> {
        (k <= self.degree_bound()).then(|| TruncatedSeries::new(self.coeffs[k..].to_vec()))
    }

    /// Coefficientwise maximum.
    pub fn max(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let d = self.degree_bound().min(other.degree_bound());
        TruncatedSeries::new(
            (0..=d)
                .map(|i| self.coeffs[i].clone().max(other.coeffs[i].clone()))
                .collect(),
        )
    }

    /// Coefficientwise `max(a_i, 0)`.
    pub fn clamp_nonnegative(&self) -> TruncatedSeries {
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .map(|c| if c.is_negative() { BigInt::zero() } else { c.clone() })
                .collect(),
        )
    }

    /// Partial sums `sum_{i <= d} a_i`.
    pub fn cumulative(&self) -> TruncatedSeries {
        let mut acc = BigInt::zero();
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect(),
        )
    }

    /// Least index with a nonpositive coefficient.
    pub fn first_nonpositive(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_positive())
    }

    /// Least index with a zero coefficient.
    pub fn first_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(Zero::is_zero)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Integers serialize as JSON numbers while they fit in 64 bits and as
/// decimal strings beyond that; both forms are accepted on input.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(b.to_string()),
        }
    }

    fn into_big<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(v)),
            JsonInt::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

fn ser_ints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(JsonInt::from_big))
}

fn de_ints<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    Vec::<JsonInt>::deserialize(d)?
        .into_iter()
        .map(JsonInt::into_big)
        .collect()
}

/// Serialized as the plain coefficient array `[a_0, ..., a_D]`.
impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_ints(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = de_ints(d)?;
        if coeffs.is_empty() {
            return Err(de::Error::custom("a series has at least the constant term"));
        }
        Ok(TruncatedSeries::new(coeffs))
    }
}

/// Univariate integer polynomial, ascending coefficients.
pub type IntPoly = Vec<BigInt>;

fn ipoly(c: &[i64]) -> IntPoly {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

fn ipoly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn ipoly_pow(a: &IntPoly, e: usize) -> IntPoly {
    let mut acc = ipoly(&[1]);
    for _ in 0..e {
        acc = ipoly_mul(&acc, a);
    }
    acc
}

/// `1 + t^k + t^{2k} + ... + t^{(q-1)k}`.
fn geometric_block(q: usize, k: usize) -> IntPoly {
    let mut p = vec![BigInt::zero(); (q - 1) * k + 1];
    for i in 0..q {
        p[i * k] = BigInt::one();
    }
    p
}

/// `1 - t^k`.
fn one_minus_tk(k: usize) -> IntPoly {
    let mut p = vec![BigInt::zero(); k + 1];
    p[0] = BigInt::one();
    p[k] -= 1;
    p
}

/// A generating function `num / den` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    pub num: IntPoly,
    pub den: IntPoly,
}

#[derive(Serialize, Deserialize)]
struct GfRepr {
    #[serde(serialize_with = "ser_ints", deserialize_with = "de_ints")]
    num: Vec<BigInt>,
    #[serde(serialize_with = "ser_ints", deserialize_with = "de_ints")]
    den: Vec<BigInt>,
}

impl Serialize for RationalGF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GfRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalGF {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GfRepr::deserialize(d)?;
        Ok(RationalGF { num: r.num, den: r.den })
    }
}

impl RationalGF {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        RationalGF { num, den }
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Self {
        RationalGF::new(ipoly(num), ipoly(den))
    }

    pub fn polynomial(num: IntPoly) -> Self {
        RationalGF::new(num, ipoly(&[1]))
    }

    pub fn expand(&self, d: usize) -> Result<TruncatedSeries> {
        expand(self, d)
    }
}

/// First `D+1` coefficients of `num/den`. The denominator's constant term
/// must be a unit (±1) so the expansion stays integral.
pub fn expand(gf: &RationalGF, d: usize) -> Result<TruncatedSeries> {
    let c0 = gf.den.first().cloned().unwrap_or_default();
    if c0.is_zero() {
        return Err(Error::NonUnitConstantTerm);
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc = gf.num.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(gf.den.len().saturating_sub(1)) {
            if !gf.den[j].is_zero() {
                acc -= &gf.den[j] * &out[k - j];
            }
        }
        if !(&acc % &c0).is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        out.push(acc / &c0);
    }
    Ok(TruncatedSeries::new(out))
}

/// Keep the series up to (not including) its first nonpositive coefficient
/// and zero everything from there on.
pub fn bracket(s: &TruncatedSeries) -> TruncatedSeries {
    let t0 = s.first_nonpositive().unwrap_or(s.coeffs.len());
    TruncatedSeries::new(
        s.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i < t0 { c.clone() } else { BigInt::zero() })
            .collect(),
    )
}

/// `prod (1 - t^{d_i}) / (1 - t)^n`.
pub fn predict_semiregular_char0(n: usize, degs: &[usize]) -> RationalGF {
    let num = degs
        .iter()
        .fold(ipoly(&[1]), |acc, &d| ipoly_mul(&acc, &one_minus_tk(d)));
    RationalGF::new(num, ipoly_pow(&one_minus_tk(1), n))
}

/// `(1 + t + ... + t^{q-1})^n / prod (1 + t^{d_i} + ... + t^{(q-1) d_i})`.
pub fn predict_semiregular_fq(n: usize, q: usize, degs: &[usize]) -> RationalGF {
    let den = degs
        .iter()
        .fold(ipoly(&[1]), |acc, &d| ipoly_mul(&acc, &geometric_block(q, d)));
    RationalGF::new(ipoly_pow(&geometric_block(q, 1), n), den)
}

/// Semiregular prediction for `m` quadratics in the regime set by `field`.
pub fn predict_semiregular(n: usize, m: usize, field: &FieldSpec) -> RationalGF {
    let degs = vec![2; m];
    if field.field_equations() {
        predict_semiregular_fq(n, field.p() as usize, &degs)
    } else {
        predict_semiregular_char0(n, &degs)
    }
}

/// Hilbert series of the oil ring `K[x_{v+1}, ..., x_n]`.
pub fn predict_oil_ring(n: usize, v: usize, field: &FieldSpec) -> RationalGF {
    let k = n - v;
    if field.field_equations() {
        RationalGF::polynomial(ipoly_pow(&geometric_block(field.p() as usize, 1), k))
    } else {
        RationalGF::new(ipoly(&[1]), ipoly_pow(&one_minus_tk(1), k))
    }
}

/// `binom(a, b)` as a big integer, zero when `b > a`.
pub fn binom(a: usize, b: usize) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Number of degree-`d` monomials in `k` variables.
fn free_dim(k: usize, d: usize) -> BigInt {
    if k == 0 {
        return if d == 0 { BigInt::one() } else { BigInt::zero() };
    }
    binom(k + d - 1, d)
}

/// Prediction for `H_{V/F}` together with the last degree it is defined for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfgPrediction {
    pub series: TruncatedSeries,
    /// Values above this degree are reported but lie outside the window
    /// where the prediction is claimed.
    pub window_end: usize,
}

/// `max{ H_{R/G}(d) - binom(n-v+d-1, d), 0 }` with `G` semiregular.
pub fn predict_ov_hfg(n: usize, v: usize, m: usize, d: usize) -> HfgPrediction {
    let g = bracket(
        &expand(&predict_semiregular_char0(n, &vec![2; m]), d).expect("unit denominator"),
    );
    let series = TruncatedSeries::new(
        (0..=d)
            .map(|k| {
                let x = &g.coeffs[k] - free_dim(n - v, k);
                if x.is_negative() {
                    BigInt::zero()
                } else {
                    x
                }
            })
            .collect(),
    );
    HfgPrediction {
        series,
        window_end: v + 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OvBranch {
    /// `m <= v`: regular sequence.
    Regular,
    /// `v < m < n`: raw expansion plus a correction starting at `t^{v+2}`.
    Intermediate,
    /// `m >= n`: coefficientwise max with the oil ring.
    Overdetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvPrediction {
    pub series: TruncatedSeries,
    pub branch: OvBranch,
    /// In the intermediate branch the correction `s(t) t^{v+2}` is not
    /// predicted; this is the first degree where it may act.
    pub correction_from: Option<usize>,
}

impl OvPrediction {
    /// `s(t) = (computed - base) / t^{v+2}` for the intermediate branch.
    pub fn measure_correction(&self, computed: &TruncatedSeries) -> Option<TruncatedSeries> {
        let k = self.correction_from?;
        computed.sub(&self.series).shift_down(k)
    }
}

/// Hilbert-series prediction for a semiregular homogeneous OV system.
pub fn predict_ov_semiregular(n: usize, v: usize, m: usize, d: usize) -> OvPrediction {
    let raw = expand(&predict_semiregular_char0(n, &vec![2; m]), d).expect("unit denominator");
    if m <= v {
        OvPrediction {
            series: raw,
            branch: OvBranch::Regular,
            correction_from: None,
        }
    } else if m < n {
        OvPrediction {
            series: raw,
            branch: OvBranch::Intermediate,
            correction_from: Some(v + 2),
        }
    } else {
        let oil = expand(&predict_oil_ring(n, v, &FieldSpec::default_proxy()), d)
            .expect("unit denominator");
        OvPrediction {
            series: bracket(&raw).max(&oil),
            branch: OvBranch::Overdetermined,
            correction_from: None,
        }
    }
}

/// Upper bound on the degree of regularity of an overdetermined semiregular OV system.
pub fn predict_dreg_bound(n: usize, v: usize, m: usize) -> Result<usize> {
    if m < n {
        return Err(Error::UnderdeterminedNotCovered { n, m });
    }
    Ok(v + 1)
}

/// How many never-appearing oil columns are discounted in `M_{<=d}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OilCount {
    /// `binom(n-v+d, d)`: all oil monomials of degree at most `d`.
    #[default]
    Cumulative,
    /// `binom(n-v+d-1, d)`: oil monomials of degree exactly `d`.
    Exact,
}

impl OilCount {
    pub fn count(self, n: usize, v: usize, d: usize) -> BigInt {
        match self {
            OilCount::Cumulative => binom(n - v + d, d),
            OilCount::Exact => free_dim(n - v, d),
        }
    }
}

/// Least `d >= 1` with `sum_{i<=d} h_i - OilCount(d) <= 0` (no oil term
/// when `oil` is `None`).
pub fn cumulative_solving_bound(
    h: &TruncatedSeries,
    oil: Option<(usize, usize)>,
    count: OilCount,
) -> Result<usize> {
    let sums = h.cumulative();
    // degree 0 always balances (1 = 1) and says nothing about solving
    for (d, s) in sums.coeffs.iter().enumerate().skip(1) {
        let slack = match oil {
            Some((n, v)) => s - count.count(n, v, d),
            None => s.clone(),
        };
        if !slack.is_positive() {
            return Ok(d);
        }
    }
    Err(Error::NotFoundWithin(h.degree_bound()))
}

/// Default truncation degree: `max(2n, 2(v+2), requested)`.
pub fn default_truncation(n: usize, v: usize, requested: usize) -> usize {
    (2 * n).max(2 * (v + 2)).max(requested)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ser(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64(c)
    }

    #[test]
    fn expansion_examples() {
        let g = predict_semiregular_fq(8, 2, &[2]);
        assert_eq!(expand(&g, 6).unwrap(), ser(&[1, 8, 27, 48, 43, 8, -15]));
        let g = predict_semiregular_fq(10, 2, &[2; 13]);
        assert_eq!(expand(&g, 4).unwrap(), ser(&[1, 10, 32, -10, -284]));
        let geo = RationalGF::from_i64(&[1], &[1, -1]);
        assert_eq!(expand(&geo, 5).unwrap(), ser(&[1; 6]));
    }

    #[test]
    fn expansion_needs_unit_constant() {
        assert!(matches!(
            expand(&RationalGF::from_i64(&[1], &[0, 1]), 3),
            Err(Error::NonUnitConstantTerm)
        ));
        assert!(matches!(
            expand(&RationalGF::from_i64(&[1], &[2, 1]), 3),
            Err(Error::NonUnitConstantTerm)
        ));
        // -1 is a unit
        assert_eq!(expand(&RationalGF::from_i64(&[1], &[-1]), 2).unwrap(), ser(&[-1, 0, 0]));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&ser(&[1, 8, 27, 48, 43, 8, -15])), ser(&[1, 8, 27, 48, 43, 8, 0]));
        assert_eq!(bracket(&ser(&[1, 2, 3])), ser(&[1, 2, 3]));
        assert_eq!(bracket(&ser(&[1, 10, 32, -10, -284])), ser(&[1, 10, 32, 0, 0]));
        // once a nonpositive value appears everything after is dropped
        assert_eq!(bracket(&ser(&[1, 0, 5])), ser(&[1, 0, 0]));
    }

    #[test]
    fn semiregular_char0_examples() {
        let s = expand(&predict_semiregular_char0(6, &[2; 6]), 8).unwrap();
        let want: Vec<i64> = (0..=8).map(|d| binom(6, d).to_i64().unwrap()).collect();
        assert_eq!(s, ser(&want));
        let s = bracket(&expand(&predict_semiregular_char0(9, &[2; 12]), 5).unwrap());
        assert_eq!(s.at(3), 57);
        let free = expand(&predict_semiregular_char0(4, &[]), 5).unwrap();
        assert_eq!(free, ser(&[1, 4, 10, 20, 35, 56]));
    }

    #[test]
    fn fq_predictor_cases() {
        let s = expand(&predict_semiregular_fq(3, 2, &[]), 4).unwrap();
        assert_eq!(s, ser(&[1, 3, 3, 1, 0]));
        assert_eq!(
            predict_semiregular_fq(8, 2, &[2]),
            RationalGF::new(ipoly_pow(&ipoly(&[1, 1]), 8), ipoly(&[1, 0, 1]))
        );
    }

    #[test]
    fn oil_ring_series() {
        let s = expand(&predict_oil_ring(9, 3, &FieldSpec::default_proxy()), 6).unwrap();
        assert_eq!(s, ser(&[1, 6, 21, 56, 126, 252, 462]));
        assert_eq!(s.at(2), binom(7, 2).to_i64().unwrap());
        let s = expand(&predict_oil_ring(10, 3, &FieldSpec::default_proxy()), 2).unwrap();
        assert_eq!(s.at(2), 28);
        let full = expand(&predict_oil_ring(5, 0, &FieldSpec::default_proxy()), 4).unwrap();
        assert_eq!(full, expand(&predict_semiregular_char0(5, &[]), 4).unwrap());
        let f2 = expand(&predict_oil_ring(5, 2, &FieldSpec::gf2(true)), 4).unwrap();
        assert_eq!(f2, ser(&[1, 3, 3, 1, 0]));
    }

    #[test]
    fn hfg_examples() {
        let p = predict_ov_hfg(9, 3, 12, 4);
        assert_eq!(p.series.at(1), 3);
        assert_eq!(p.series.at(2), 12);
        assert_eq!(p.series.at(3), 1);
        assert_eq!(p.window_end, 4);
        for n in 2..8 {
            for v in 1..n {
                assert_eq!(predict_ov_hfg(n, v, 0, 2).series.at(1), v as i64);
            }
        }
    }

    #[test]
    fn ov_semiregular_branches() {
        let p = predict_ov_semiregular(9, 3, 2, 8);
        assert_eq!(p.branch, OvBranch::Regular);
        assert_eq!(p.series, expand(&predict_semiregular_char0(9, &[2, 2]), 8).unwrap());
        let p = predict_ov_semiregular(9, 3, 12, 8);
        assert_eq!(p.branch, OvBranch::Overdetermined);
        assert_eq!(p.series.at(0), 1);
        for d in 4..=8 {
            assert_eq!(p.series.at(d), binom(6 + d - 1, d).to_i64().unwrap());
        }
        assert_eq!(p.series.truncate(3), ser(&[1, 9, 33, 57]));
        let p = predict_ov_semiregular(8, 2, 5, 6);
        assert_eq!(p.branch, OvBranch::Intermediate);
        assert_eq!(p.correction_from, Some(4));
        let computed = p.series.add(&ser(&[0, 0, 0, 0, 10, 0, 0]));
        assert_eq!(p.measure_correction(&computed).unwrap(), ser(&[10, 0, 0]));
    }

    #[test]
    fn dreg_bound_cases() {
        assert_eq!(predict_dreg_bound(9, 3, 12).unwrap(), 4);
        assert_eq!(predict_dreg_bound(7, 0, 7).unwrap(), 1);
        assert!(matches!(
            predict_dreg_bound(9, 3, 8),
            Err(Error::UnderdeterminedNotCovered { n: 9, m: 8 })
        ));
        // witness values: H_{V/F}(v) = binom(n-1, v-1), H_{V/F}(v+1) = 0 when m = n
        for n in 3..10 {
            for v in 1..n - 1 {
                let p = predict_ov_hfg(n, v, n, v + 1);
                assert_eq!(p.series.coeffs[v], binom(n - 1, v - 1));
                assert!(p.series.coeffs[v + 1].is_zero());
            }
        }
    }

    #[test]
    fn cumulative_bound_cases() {
        for n in 3..10 {
            for v in 1..n {
                // (1 - t^2)^{n+1} / (1 - t)^n = (1 + t)^n (1 - t)
                let h = expand(&predict_semiregular_char0(n, &vec![2; n + 1]), 2 * n).unwrap();
                let sums = h.cumulative();
                for d in 0..=n + 1 {
                    assert_eq!(sums.coeffs[d], binom(n + 1, d));
                }
                let b = cumulative_solving_bound(&h, Some((n, v)), OilCount::Cumulative).unwrap();
                assert_eq!(b, v + 1, "n={n} v={v}");
            }
        }
        assert!(matches!(
            cumulative_solving_bound(&ser(&[1, 2, 3]), None, OilCount::Cumulative),
            Err(Error::NotFoundWithin(2))
        ));
        assert_eq!(cumulative_solving_bound(&ser(&[1, -1, 3]), None, OilCount::Cumulative).unwrap(), 1);
    }

    #[test]
    fn json_shapes() {
        let s = ser(&[1, -2, 3]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[1,-2,3]");
        assert_eq!(serde_json::from_str::<TruncatedSeries>(&j).unwrap(), s);
        let big = TruncatedSeries::new(vec![binom(200, 100)]);
        let j = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<TruncatedSeries>(&j).unwrap(), big);
        assert!(serde_json::from_str::<TruncatedSeries>("[]").is_err());
        let g = RationalGF::from_i64(&[1, 0, -1], &[1, -1]);
        let j = serde_json::to_string(&g).unwrap();
        assert_eq!(j, r#"{"num":[1,0,-1],"den":[1,-1]}"#);
        assert_eq!(serde_json::from_str::<RationalGF>(&j).unwrap(), g);
    }

    #[test]
    fn truncation_default() {
        assert_eq!(default_truncation(9, 3, 0), 18);
        assert_eq!(default_truncation(2, 3, 0), 10);
        assert_eq!(default_truncation(2, 0, 30), 30);
    }

    proptest! {
        #[test]
        fn expand_is_linear(a in prop::collection::vec(-20i64..20, 1..5),
                            b in prop::collection::vec(-20i64..20, 1..5),
                            den in prop::collection::vec(-3i64..3, 0..4)) {
            let mut den_full = vec![1i64];
            den_full.extend(den);
            let len = a.len().max(b.len());
            let sum: Vec<i64> = (0..len)
                .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
                .collect();
            let ea = expand(&RationalGF::from_i64(&a, &den_full), 8).unwrap();
            let eb = expand(&RationalGF::from_i64(&b, &den_full), 8).unwrap();
            let es = expand(&RationalGF::from_i64(&sum, &den_full), 8).unwrap();
            prop_assert_eq!(es, ea.add(&eb));
        }

        #[test]
        fn bracket_idempotent(c in prop::collection::vec(-50i64..50, 1..12)) {
            let s = ser(&c);
            let b = bracket(&s);
            prop_assert_eq!(bracket(&b), b.clone());
            if let Some(t0) = b.first_nonpositive() {
                prop_assert!(b.coeffs()[t0..].iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn fq_free_sum_is_qn(n in 1usize..7, qi in 0usize..3) {
            let q = [2usize, 3, 5][qi];
            let s = expand(&predict_semiregular_fq(n, q, &[]), n * (q - 1)).unwrap();
            let total: BigInt = s.coeffs().iter().sum();
            prop_assert_eq!(total, BigInt::from(q).pow(n as u32));
        }

        #[test]
        fn regular_branch_is_char0_prediction(n in 3usize..10, v in 1usize..3, m in 0usize..3) {
            prop_assume!(v < n && m <= v);
            let p = predict_ov_semiregular(n, v, m, 10);
            prop_assert_eq!(p.series, expand(&predict_semiregular_char0(n, &vec![2; m]), 10).unwrap());
        }
    }
}
