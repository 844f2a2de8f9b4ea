//! Closed forms, evaluated exactly with arbitrary-precision integers.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::abacus::{pyramids, CoreTriple};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    MaxSize,
    YangZhongZhou,
    Anderson,
    OlssonStanton,
    ArmstrongTimes24,
    LCardinality,
}

/// An exact non-negative value tagged with the formula that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaValue {
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
    pub provenance: Formula,
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

impl FormulaValue {
    fn new(value: BigUint, provenance: Formula) -> Self {
        FormulaValue { value, provenance }
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.value).ok()
    }
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Division that must leave no remainder.
fn exact_div(num: BigUint, den: u64) -> BigUint {
    let (q, r) = num.div_rem(&big(den));
    assert!(r.is_zero(), "inexact division by {den}");
    q
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = exact_div(acc * big(n - i), i + 1);
    }
    acc
}

fn require_coprime(a: u64, b: u64) -> Result<()> {
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    Ok(())
}

/// Largest size of an `(s, ms-1, ms+1)`-core partition.
///
/// With `s = 2t-1` the value is `m²t(t-1)(t²-t+1)/6`; with `s = 2t-2` it is
/// `m²(t-1)²(t²-2t+3)/6 - m(t-1)²/2`, which is evaluated over the common
/// denominator 6 because the two terms are not integers separately.
pub fn max_size_formula(ct: &CoreTriple) -> FormulaValue {
    let m = big(ct.m());
    let t = big(ct.half_param());
    let one = BigUint::one();
    let value = if ct.s() % 2 == 1 {
        let num = &m * &m * &t * (&t - &one) * (&t * &t - &t + &one);
        exact_div(num, 6)
    } else {
        let tm1 = &t - &one;
        let sq = &tm1 * &tm1;
        // t² - 2t + 3 = (t-1)² + 2
        let num = &m * &m * &sq * (&sq + big(2)) - big(3) * &m * &sq;
        exact_div(num, 6)
    };
    FormulaValue::new(value, Formula::MaxSize)
}

/// Largest size of an `(s, s+1, s+2)`-core partition: `t·C(t+1,3)` for
/// `s = 2t-1`, `t·C(t,3) + C(t+1,3)` for `s = 2t-2`.
pub fn yzz_max(s: u64) -> FormulaValue {
    assert!(s >= 3, "needs s >= 3");
    let value = if s % 2 == 1 {
        let t = s.div_ceil(2);
        big(t) * binomial(t + 1, 3)
    } else {
        let t = (s + 2) / 2;
        big(t) * binomial(t, 3) + binomial(t + 1, 3)
    };
    FormulaValue::new(value, Formula::YangZhongZhou)
}

/// The `(s, s+1, s+2)` value next to the `m = 1` instance `(s+1, s, s+2)`.
pub fn yzz_consistency(s: u64) -> (FormulaValue, FormulaValue) {
    let ct = CoreTriple::new(s + 1, 1).expect("s + 1 >= 4");
    (yzz_max(s), max_size_formula(&ct))
}

/// Number of `(a, b)`-cores: `C(a+b, a) / (a+b)`.
pub fn anderson_count(a: u64, b: u64) -> Result<FormulaValue> {
    require_coprime(a, b)?;
    let value = exact_div(binomial(a + b, a), a + b);
    Ok(FormulaValue::new(value, Formula::Anderson))
}

/// Largest size of an `(a, b)`-core: `(a²-1)(b²-1)/24`.
pub fn olsson_stanton_max(a: u64, b: u64) -> Result<FormulaValue> {
    require_coprime(a, b)?;
    let num = (big(a) * big(a) - 1u32) * (big(b) * big(b) - 1u32);
    Ok(FormulaValue::new(exact_div(num, 24), Formula::OlssonStanton))
}

/// 24 times the mean size of an `(a, b)`-core: `(a-1)(b-1)(a+b+1)`.
pub fn armstrong_mean_times_24(a: u64, b: u64) -> Result<FormulaValue> {
    require_coprime(a, b)?;
    let value = big(a - 1) * big(b - 1) * big(a + b + 1);
    Ok(FormulaValue::new(value, Formula::ArmstrongTimes24))
}

/// `|L_m(s)|`: `(t-1)(mt-1)` for odd `s = 2t-1`, otherwise summed over the
/// pyramid rows.
pub fn l_cardinality(ct: &CoreTriple) -> FormulaValue {
    let value = if ct.s() % 2 == 1 {
        let t = ct.half_param();
        big(t - 1) * big(ct.m() * t - 1)
    } else {
        pyramids(ct)
            .iter()
            .flat_map(|p| (0..p.rows()).map(move |i| big(p.hi - p.lo + 1 - 2 * i)))
            .sum()
    };
    FormulaValue::new(value, Formula::LCardinality)
}
