//! Evaluation of explicit bound formulas.
//!
//! Factorials, binomials and integer powers are exact. Terms with logarithms,
//! roots or powers of `e` go through `f64` and are then nudged outward by a
//! relative margin well above the floating-point error: upper bounds are
//! rounded up, lower bounds down. Logarithms are base 2.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, invalid, Error, Result};

/// Exact values are skipped above this many bits; `log2` is then primary.
pub const MAX_EXACT_BITS: f64 = 4_194_304.0;

// relative outward margin applied to f64 results
const MARGIN: f64 = 1e-11;

pub const FORMULAS: &[&str] = &[
    "marcus_tardos",
    "klazar",
    "fox_legacy",
    "jk_minor",
    "framework",
    "repfree_exponent",
    "scattered_count",
    "grid_rhs",
    "xmatrix_rhs",
    "frk_closed",
    "highdim_lower",
    "brightwell",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Exact,
    Up,
    Down,
}

impl Rounding {
    pub fn name(self) -> &'static str {
        match self {
            Rounding::Exact => "exact",
            Rounding::Up => "up",
            Rounding::Down => "down",
        }
    }
}

pub type Params = BTreeMap<String, BigRational>;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub name: String,
    pub params: Params,
    /// Absent when the exact value is too large to materialize or underflows `f64`.
    pub value: Option<BigRational>,
    pub log2: f64,
    pub rounding: Rounding,
}

/// Parses `"k=9"` or `"q=1/2"`.
pub fn parse_param(s: &str) -> Result<(String, BigRational)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| Error::InvalidArgument(format!("parameter `{s}` is not of the form name=value")))?;
    let name = name.trim();
    if name.is_empty() {
        return invalid(format!("parameter `{s}` has an empty name"));
    }
    Ok((name.to_string(), parse_rational(value.trim())?))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not an integer or fraction"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return invalid(format!("`{s}` has a zero denominator"));
            }
            Ok(BigRational::new(a, b))
        }
        None => {
            if let Ok(i) = s.parse::<BigInt>() {
                return Ok(BigRational::from_integer(i));
            }
            let f: f64 = s.parse().map_err(|_| bad())?;
            BigRational::from_float(f).ok_or_else(bad)
        }
    }
}

fn get<'a>(params: &'a Params, name: &str, key: &str) -> Result<&'a BigRational> {
    params
        .get(key)
        .ok_or_else(|| Error::InvalidArgument(format!("{name} needs parameter `{key}`")))
}

fn int(params: &Params, name: &str, key: &str, min: u64) -> Result<u64> {
    let v = get(params, name, key)?;
    if !v.is_integer() {
        return domain(format!("{name}: `{key}` must be an integer"));
    }
    match v.to_integer().to_u64() {
        Some(x) if x >= min => Ok(x),
        _ => domain(format!("{name}: `{key}` must be an integer >= {min}")),
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn rat(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().expect("fits").to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits") as f64;
    top.log2() + shift as f64
}

/// `log2 |x|`; `-inf` for zero.
pub fn log2_rational(x: &BigRational) -> f64 {
    let n = x.numer().magnitude();
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_biguint(n) - log2_biguint(x.denom().magnitude())
}

fn is_power_of_two(x: u64) -> bool {
    x != 0 && x & (x - 1) == 0
}

fn exact(name: &str, params: &Params, value: BigRational) -> BoundValue {
    let log2 = log2_rational(&value);
    BoundValue { name: name.to_string(), params: params.clone(), value: Some(value), log2, rounding: Rounding::Exact }
}

fn too_big(name: &str, params: &Params, log2: f64) -> BoundValue {
    BoundValue { name: name.to_string(), params: params.clone(), value: None, log2, rounding: Rounding::Exact }
}

/// A value known only through `log2`, materialized with directed rounding when `f64` can hold it.
fn directed(name: &str, params: &Params, log2: f64, rounding: Rounding) -> BoundValue {
    let v = log2.exp2();
    let value = if v.is_finite() && v > f64::MIN_POSITIVE {
        let nudged = match rounding {
            Rounding::Up => (v * (1.0 + MARGIN)).next_up(),
            Rounding::Down => (v * (1.0 - MARGIN)).next_down(),
            Rounding::Exact => v,
        };
        BigRational::from_float(nudged)
    } else {
        None
    };
    BoundValue { name: name.to_string(), params: params.clone(), value, log2, rounding }
}

/// Smallest `i >= 1` with `q^i <= 1/u`, i.e. `ceil(-log u / log q)` for `q` in `(0, 1)`.
pub fn cascade_exponent(u: u64, q: &BigRational) -> Result<u64> {
    let one = BigRational::one();
    if !q.is_positive() || *q >= one {
        return domain("q must lie in (0, 1)");
    }
    if u < 2 {
        return domain("u must be at least 2");
    }
    let target = BigRational::new(BigInt::one(), BigInt::from(u));
    let mut power = q.clone();
    let mut i = 1;
    while power > target {
        power *= q;
        i += 1;
    }
    Ok(i)
}

fn check_framework_q(u: u64, q: &BigRational) -> Result<()> {
    let inv_u = BigRational::new(BigInt::one(), BigInt::from(u));
    if *q <= inv_u || *q >= BigRational::one() {
        return domain(format!("q must lie in (1/u, 1) = (1/{u}, 1)"));
    }
    Ok(())
}

/// Evaluates a catalog formula by name.
pub fn eval(name: &str, params: &Params) -> Result<BoundValue> {
    match name {
        "marcus_tardos" => {
            let k = int(params, name, "k", 1)?;
            let est = 1.0 + 4.0 * (k as f64).log2() + (k as f64) * (k as f64 * k as f64).log2();
            if est > MAX_EXACT_BITS {
                let log2 = 1.0 + 4.0 * (k as f64).log2() + log2_binomial(k * k, k);
                return Ok(too_big(name, params, log2));
            }
            Ok(exact(name, params, rat(big(2) * big(k).pow(4) * binomial(k * k, k))))
        }
        "klazar" => {
            let c = get(params, name, "c")?;
            if !c.is_positive() {
                return domain("klazar: `c` must be positive");
            }
            let cf = c.to_f64().unwrap_or(f64::INFINITY);
            let log2 = cf * 15f64.log2();
            if c.is_integer() {
                if log2 > MAX_EXACT_BITS {
                    return Ok(too_big(name, params, log2));
                }
                let e = c.to_integer().to_u32().expect("bounded by the bit limit");
                return Ok(exact(name, params, rat(big(15).pow(e))));
            }
            Ok(directed(name, params, log2, Rounding::Up))
        }
        "fox_legacy" => {
            let k = int(params, name, "k", 1)?;
            let log2 = (3.0 * k as f64).log2() + 8.0 * k as f64;
            if log2 > MAX_EXACT_BITS {
                return Ok(too_big(name, params, log2));
            }
            Ok(exact(name, params, rat(big(3 * k) << (8 * k as usize))))
        }
        "jk_minor" => {
            let k = int(params, name, "k", 1)?;
            let log2 = (8.0f64 / 3.0).log2() + 2.0 * (k as f64 + 1.0).log2() + 4.0 * k as f64;
            if log2 > MAX_EXACT_BITS {
                return Ok(too_big(name, params, log2));
            }
            let num = (big(8) * big(k + 1).pow(2)) << (4 * k as usize);
            Ok(exact(name, params, BigRational::new(BigInt::from(num), BigInt::from(3))))
        }
        "framework" => {
            let u = int(params, name, "u", 2)?;
            let q = get(params, name, "q")?;
            check_framework_q(u, q)?;
            let e = cascade_exponent(u, q)?;
            let log2 = 1.0 + (3 + e) as f64 * (u as f64).log2();
            if log2 > MAX_EXACT_BITS {
                return Ok(too_big(name, params, log2));
            }
            let e = u32::try_from(e).expect("bounded by the bit limit");
            Ok(exact(name, params, rat(big(2) * big(u).pow(3 + e))))
        }
        "repfree_exponent" => {
            let k = int(params, name, "k", 1)?;
            let r = int(params, name, "r", 1)?;
            if r > k {
                return domain("repfree_exponent: need 1 <= r <= k");
            }
            let lu = (4.0 * k as f64).log2();
            let e = 1.0 + 4.0 * lu + 34.0 * (r as f64).cbrt() * (k as f64).powf(2.0 / 3.0) * lu * lu;
            Ok(directed(name, params, e.log2(), Rounding::Up))
        }
        "scattered_count" => {
            let k = int(params, name, "k", 1)?;
            let r = int(params, name, "r", 1)?;
            if r > k {
                return domain("scattered_count: need r in [k]");
            }
            let quotient = (r + 1..=k).fold(BigUint::one(), |acc, i| acc * i);
            Ok(exact(name, params, rat(big(2) * big(k).pow(2) * quotient)))
        }
        "grid_rhs" => {
            let k = int(params, name, "k", 1)?;
            let l = int(params, name, "l", 1)?;
            let m = int(params, name, "m", 1)?;
            let ex_q = int(params, name, "exQ", 0)?;
            let side = BigInt::from(m * l - 1);
            if BigInt::from(ex_q) > &side * &side {
                return domain("grid_rhs: exQ cannot exceed (ml-1)^2");
            }
            let full = BigInt::from(m) * BigInt::from(k) * BigInt::from(l);
            let v = &full * &full - BigInt::from(k) * (&side * &side - BigInt::from(ex_q));
            Ok(exact(name, params, BigRational::from_integer(v)))
        }
        "xmatrix_rhs" => {
            let k = int(params, name, "k", 1)?;
            if k % 6 != 0 {
                if k % 2 == 0 {
                    return domain(format!(
                        "xmatrix_rhs: k must be a multiple of 6; even k = {k} is not covered by the counting argument"
                    ));
                }
                return domain(format!("xmatrix_rhs: k must be a multiple of 6, got odd k = {k}"));
            }
            let k2 = BigInt::from(k) * BigInt::from(k);
            let v = BigRational::from_integer(BigInt::from(4) * &k2) - BigRational::new(k2, BigInt::from(18));
            Ok(exact(name, params, v))
        }
        "frk_closed" => {
            let (r, k, t, s) = frk_args(name, params)?;
            if s < 1u64 << (k - 1) || s > t {
                return domain("frk_closed: need t >= s >= 2^(k-1)");
            }
            let ratio = big(t / s);
            Ok(exact(name, params, rat((big(r) * ratio.pow(2)) << (2 * k as usize - 2))))
        }
        "highdim_lower" => {
            let d = int(params, name, "d", 2)?;
            let k = int(params, name, "k", 2)?;
            let n = int(params, name, "n", 1)?;
            let (df, kf, nf) = (d as f64, k as f64, n as f64);
            let le = std::f64::consts::LOG2_E;
            let inv = 1.0 / (df - 1.0);
            let log2 = -2.0 * kf * (le + nf.log2()) + nf * (inv * (kf - 1.0).log2() - (1.0 + inv) * le);
            Ok(directed(name, params, log2, Rounding::Down))
        }
        "brightwell" => {
            let d = int(params, name, "d", 2)?;
            let n = int(params, name, "n", 1)?;
            let inv = 1.0 / (d as f64 - 1.0);
            let log2 = n as f64 * (-2.0 * std::f64::consts::LOG2_E + (1.0 - inv) * (n as f64).log2());
            Ok(directed(name, params, log2, Rounding::Down))
        }
        _ => invalid(format!("unknown formula `{name}`; known: {}", FORMULAS.join(", "))),
    }
}

fn log2_binomial(n: u64, k: u64) -> f64 {
    (0..k).map(|i| ((n - i) as f64).log2() - ((i + 1) as f64).log2()).sum()
}

fn frk_args(name: &str, params: &Params) -> Result<(u64, u64, u64, u64)> {
    let r = int(params, name, "r", 1)?;
    let k = int(params, name, "k", 1)?;
    let t = int(params, name, "t", 1)?;
    let s = int(params, name, "s", 1)?;
    if k > 63 {
        return domain(format!("{name}: k must be at most 63"));
    }
    if !is_power_of_two(t) || !is_power_of_two(s) {
        return invalid(format!("{name}: t and s must be powers of two"));
    }
    Ok((r, k, t, s))
}

/// Convenience wrapper taking `(name, value)` pairs.
pub fn eval_with(name: &str, params: &[(&str, BigRational)]) -> Result<BoundValue> {
    let map = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    eval(name, &map)
}

pub fn int_params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), BigRational::from_integer(v.into()))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeStep {
    pub i: u64,
    /// `max(1/u, q^i)`.
    pub q_i: BigRational,
    /// `h^i`.
    pub bound: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cascade {
    pub steps: Vec<CascadeStep>,
    /// First index where `q_i` reaches `1/u`.
    pub i0: u64,
}

/// The density schedule `q_i = max(1/u, q^i)` with bounds `h^i` for `i = 1..=imax`.
pub fn density_cascade(u: u64, q: &BigRational, h: &BigRational, imax: u64) -> Result<Cascade> {
    if u < 2 {
        return domain("density_cascade: u must be at least 2");
    }
    check_framework_q(u, q)?;
    let i0 = cascade_exponent(u, q)?;
    let floor = BigRational::new(BigInt::one(), BigInt::from(u));
    let mut steps = Vec::with_capacity(imax as usize);
    let mut power = BigRational::one();
    let mut bound = BigRational::one();
    for i in 1..=imax {
        power *= q;
        bound *= h;
        let q_i = if power > floor { power.clone() } else { floor.clone() };
        steps.push(CascadeStep { i, q_i, bound: bound.clone() });
    }
    Ok(Cascade { steps, i0 })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrkValue {
    pub recurrence: BigUint,
    pub closed: BigUint,
    /// `min(recurrence, closed)`.
    pub value: BigUint,
}

impl fmt::Display for FrkValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (closed form {})", self.recurrence, self.closed)
    }
}

/// Unfolds `f(k, t, s) <= 2 f(k, t/2, s) + 2 f(k-1, t/2, s/2)` down to
/// `f(1, t, s) = r - 1` and `f = 0` for `s > t`.
pub fn frk_recurrence(r: u64, k: u64, t: u64, s: u64) -> Result<FrkValue> {
    let params = int_params(&[("r", r as i64), ("k", k as i64), ("t", t as i64), ("s", s as i64)]);
    let (r, k, t, s) = frk_args("frk_recurrence", &params)?;
    if s > t {
        return Ok(FrkValue { recurrence: BigUint::zero(), closed: BigUint::zero(), value: BigUint::zero() });
    }
    if s < 1u64 << (k - 1) {
        return domain("frk_recurrence: need s >= 2^(k-1)");
    }
    let mut memo = HashMap::new();
    let recurrence = frk_unfold(r, k, t, s, &mut memo);
    let closed = (big(r) * big(t / s).pow(2)) << (2 * k as usize - 2);
    if recurrence > closed {
        return Err(Error::Internal(format!(
            "recurrence value {recurrence} exceeds closed form {closed} at r={r}, k={k}, t={t}, s={s}"
        )));
    }
    Ok(FrkValue { value: recurrence.clone(), recurrence, closed })
}

fn frk_unfold(r: u64, k: u64, t: u64, s: u64, memo: &mut HashMap<(u64, u64, u64), BigUint>) -> BigUint {
    if s > t {
        return BigUint::zero();
    }
    if k == 1 {
        return big(r - 1);
    }
    if let Some(v) = memo.get(&(k, t, s)) {
        return v.clone();
    }
    let v = big(2) * frk_unfold(r, k, t / 2, s, memo) + big(2) * frk_unfold(r, k - 1, t / 2, s / 2, memo);
    memo.insert((k, t, s), v.clone());
    v
}

/// `ex(s-1, P) ex(n, P) + ex(t, P) n (f_P(t, s) + g_P(t, s))`, an upper bound on `ex(tn, P)`.
pub fn mt_recursion_step(ex_sm1: u64, ex_n: u64, ex_t: u64, f: u64, g: u64, n: u64) -> BigUint {
    big(ex_sm1) * big(ex_n) + big(ex_t) * big(n) * (big(f) + big(g))
}
