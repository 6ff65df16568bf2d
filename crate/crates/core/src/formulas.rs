//! Closed-form extremal values.
//!
//! Every value is an exact integer, an exact upper bound, or an interval;
//! irrational densities are kept symbolic and compared by clearing
//! denominators, never in floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::constraints::{choose2, classify, ConstraintSpec, Regime};
use crate::constructions::turan_edge_count;
use crate::error::{Error, Result};
use crate::format::decimal;
use crate::fraction::Fraction;

/// `ex(n, {C3, C4})` for the small `n` where it is quoted directly.
pub const KNOWN_C3C4: [(usize, u64); 3] = [(4, 3), (5, 5), (6, 6)];

/// Supplies `ex(n, {C3, C4})` for `n` beyond [`KNOWN_C3C4`].
pub type C3C4Oracle<'a> = &'a dyn Fn(usize) -> Result<u64>;

/// A closed-form result together with how much it pins down.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum FormulaValue {
    #[serde(rename = "exact")]
    Exact {
        #[serde(serialize_with = "decimal")]
        value: BigUint,
    },
    #[serde(rename = "bound-only")]
    BoundOnly {
        #[serde(serialize_with = "decimal")]
        upper: BigUint,
    },
    #[serde(rename = "interval")]
    Interval {
        #[serde(serialize_with = "decimal")]
        lower: BigUint,
        #[serde(serialize_with = "decimal")]
        upper: BigUint,
    },
}

impl FormulaValue {
    pub fn status(&self) -> &'static str {
        match self {
            FormulaValue::Exact { .. } => "exact",
            FormulaValue::BoundOnly { .. } => "bound-only",
            FormulaValue::Interval { .. } => "interval",
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            FormulaValue::Exact { value } => Some(value),
            _ => None,
        }
    }

    /// A value every extremal quantity is known to reach.
    pub fn lower(&self) -> Option<&BigUint> {
        match self {
            FormulaValue::Exact { value } => Some(value),
            FormulaValue::Interval { lower, .. } => Some(lower),
            FormulaValue::BoundOnly { .. } => None,
        }
    }

    /// Whether `x` is consistent with this result.
    pub fn admits(&self, x: &BigUint) -> bool {
        match self {
            FormulaValue::Exact { value } => x == value,
            FormulaValue::BoundOnly { upper } => x <= upper,
            FormulaValue::Interval { lower, upper } => lower <= x && x <= upper,
        }
    }
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaValue::Exact { value } => write!(f, "{value}"),
            FormulaValue::BoundOnly { upper } => write!(f, "<={upper}"),
            FormulaValue::Interval { lower, upper } => write!(f, "[{lower},{upper}]"),
        }
    }
}

fn pow(base: u64, exp: u64) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

fn require_n(n: usize, s: usize) -> Result<()> {
    if n < s {
        return Err(Error::NTooSmall { n, s });
    }
    Ok(())
}

/// `ex_Π(n, s, q)`.
///
/// For `(s, q) = (4, 9)` and `n > 6` the value is `2^ex(n, {C3, C4})` with the
/// exponent taken from `c3c4`.
pub fn ex_pi_exact(n: usize, s: usize, q: u64, c3c4: Option<C3C4Oracle<'_>>) -> Result<FormulaValue> {
    let regime = classify(s, q)?;
    require_n(n, s)?;
    let pairs = choose2(n as u64);
    let value = match regime {
        Regime::ProductZero => BigUint::zero(),
        Regime::CaseI { a, b } => {
            let k = b * n as u64 / (b + 1);
            let upper = pow(a, pairs - k) * pow(a + 1, k);
            if b != 0 && b != s as u64 - 2 {
                return Ok(FormulaValue::Interval { lower: pow(a, pairs), upper });
            }
            upper
        }
        Regime::CaseII { a, t } => {
            let cross = turan_edge_count(s - t as usize, n);
            pow(a - 1, pairs - cross) * pow(a, cross)
        }
        Regime::Special49 => {
            let known = KNOWN_C3C4.iter().find(|&&(m, _)| m == n).map(|&(_, e)| e);
            let e = match (known, c3c4) {
                (Some(e), _) => e,
                (None, Some(oracle)) => oracle(n)?,
                (None, None) => return Err(Error::MissingOracle(n)),
            };
            pow(2, e)
        }
        Regime::Uncovered { .. } => return Err(Error::Uncovered { s, q }),
    };
    Ok(FormulaValue::Exact { value })
}

/// A density `base1 * base2^(exp_num / exp_den)` with `base2` rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DensityValue {
    pub base1: u64,
    pub base2_num: u64,
    pub base2_den: u64,
    pub exp_num: u64,
    pub exp_den: u64,
}

impl DensityValue {
    fn integer(a: u64) -> Self {
        DensityValue { base1: a, base2_num: 1, base2_den: 1, exp_num: 0, exp_den: 1 }
    }

    /// `log2` of the density in double precision; `None` for density 0.
    pub fn log2_value(&self) -> Option<f64> {
        if self.base1 == 0 {
            return None;
        }
        let ratio = (self.base2_num as f64).log2() - (self.base2_den as f64).log2();
        Some((self.base1 as f64).log2() + ratio * self.exp_num as f64 / self.exp_den as f64)
    }

    /// `density^e` as the exact rational `num / den` raised to `1/exp_den`:
    /// returns `(num, den, root)`.
    fn power_parts(&self, e: u64) -> (BigUint, BigUint, u64) {
        let num = pow(self.base1, e * self.exp_den) * pow(self.base2_num, e * self.exp_num);
        let den = pow(self.base2_den, e * self.exp_num);
        (num, den, self.exp_den)
    }

    /// Compares `x` with `density^e` exactly.
    pub fn cmp_power(&self, x: &BigUint, e: u64) -> Ordering {
        let (num, den, root) = self.power_parts(e);
        (Pow::pow(x, root) * den).cmp(&num)
    }

    /// The least integer at least `density^e`.
    pub fn ceil_power(&self, e: u64) -> BigUint {
        let (num, den, root) = self.power_parts(e);
        let root32 = u32::try_from(root).expect("exponent denominator fits u32");
        let approx = (&num + &den - 1u32) / &den;
        let mut x = approx.nth_root(root32);
        let reaches = |x: &BigUint| Pow::pow(x, root) * &den >= num;
        while !reaches(&x) {
            x += 1u32;
        }
        while !x.is_zero() && reaches(&(&x - 1u32)) {
            x -= 1u32;
        }
        x
    }
}

impl fmt::Display for DensityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp_num == 0 || self.base1 == 0 {
            return write!(f, "{}", self.base1);
        }
        let base2 = if self.base2_den == 1 {
            self.base2_num.to_string()
        } else {
            format!("({}/{})", self.base2_num, self.base2_den)
        };
        write!(f, "{}*{}^({}/{})", self.base1, base2, self.exp_num, self.exp_den)
    }
}

/// `ex_Π(s, q)`, the limiting per-pair geometric mean.
pub fn ex_pi_density(s: usize, q: u64) -> Result<DensityValue> {
    match classify(s, q)? {
        Regime::ProductZero => Ok(DensityValue::integer(0)),
        Regime::CaseI { a, .. } => Ok(DensityValue::integer(a)),
        Regime::CaseII { a, t } => {
            let parts = s as u64 - t;
            Ok(DensityValue { base1: a - 1, base2_num: a, base2_den: a - 1, exp_num: parts - 1, exp_den: parts })
        }
        Regime::Special49 | Regime::Uncovered { .. } => Err(Error::Uncovered { s, q }),
    }
}

/// `ex_Σ(n, s, q)`: exact for `q = a C(s,2) + b` with `b ∈ {0, s - 2}` and
/// for `q = a C(s,2) - t`, an upper bound for the remaining `b <= s - 2`.
pub fn ex_sigma_exact(n: usize, s: usize, q: u64) -> Result<FormulaValue> {
    let spec = ConstraintSpec::new(s, q)?;
    require_n(n, s)?;
    let m = spec.pairs_per_set();
    let pairs = choose2(n as u64);
    let s64 = s as u64;
    let (a, b) = (q / m, q % m);
    if a >= 1 && b <= s64 - 2 {
        let value = BigUint::from(a * pairs + b * n as u64 / (b + 1));
        return Ok(if b == 0 || b == s64 - 2 {
            FormulaValue::Exact { value }
        } else {
            FormulaValue::BoundOnly { upper: value }
        });
    }
    let (a, t) = (a + 1, m - b);
    // t >= 2 reduces to s' = s - t + 1 with t' = 1, whose Turan term is t_{s-t}
    if a >= 2 && (t == 1 || (s64 >= 4 && t <= s64 / 2)) {
        let cross = turan_edge_count(s - t as usize, n);
        return Ok(FormulaValue::Exact { value: BigUint::from((a - 1) * pairs + cross) });
    }
    Err(Error::Uncovered { s, q })
}

/// The maximum of `x_1 ... x_l` over positive integers with sum at most
/// `a l - k`, with its (unique) maximising multiset in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmgmMax {
    #[serde(serialize_with = "decimal")]
    pub product: BigUint,
    pub witness: Vec<u64>,
}

pub fn amgm_int_max(l: usize, k: usize, a: u64) -> Result<AmgmMax> {
    if l < 2 || k > l || a < 1 {
        return Err(Error::Infeasible(format!("need l >= 2, k <= l, a >= 1 (l={l}, k={k}, a={a})")));
    }
    if a == 1 && k >= 1 {
        return Err(Error::Infeasible(format!("{l} positive integers cannot sum to {}", l - k)));
    }
    let mut witness = vec![a; l - k];
    witness.extend(std::iter::repeat_n(a - 1, k));
    Ok(AmgmMax { product: pow(a, (l - k) as u64) * pow(a - 1, k as u64), witness })
}

/// Lower bounds on `|F(n, s, q)|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingBounds {
    /// `ex_Π(n, s, q)` (its lower end when only an interval is known).
    #[serde(serialize_with = "opt_decimal")]
    pub bound_a: Option<BigUint>,
    /// `ceil(ex_Π(s, q + C(s,2))^C(n,2))`.
    #[serde(serialize_with = "opt_decimal")]
    pub bound_b: Option<BigUint>,
    pub bound_b_log2: Option<f64>,
}

fn opt_decimal<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl CountingBounds {
    /// Whether `count` respects every available bound.
    pub fn holds_for(&self, count: &BigUint) -> bool {
        self.bound_a.iter().chain(&self.bound_b).all(|b| count >= b)
    }
}

/// Both counting bounds; either may be absent when its regime has no closed
/// form, but not both.
pub fn counting_lower_bounds(n: usize, s: usize, q: u64, c3c4: Option<C3C4Oracle<'_>>) -> Result<CountingBounds> {
    let spec = ConstraintSpec::new(s, q)?;
    require_n(n, s)?;
    let bound_a = match ex_pi_exact(n, s, q, c3c4) {
        Ok(v) => v.lower().cloned(),
        Err(Error::Uncovered { .. } | Error::MissingOracle(_)) => None,
        Err(e) => return Err(e),
    };
    let pairs = choose2(n as u64);
    let (bound_b, bound_b_log2) = match ex_pi_density(s, q + spec.pairs_per_set()) {
        Ok(d) => (Some(d.ceil_power(pairs)), d.log2_value().map(|l| l * pairs as f64)),
        Err(Error::Uncovered { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    if bound_a.is_none() && bound_b.is_none() {
        return Err(Error::Uncovered { s, q });
    }
    Ok(CountingBounds { bound_a, bound_b, bound_b_log2 })
}

/// Whether `oracle_value >= ex_Π(s, q)^C(n,2)`, decided in integers.
pub fn density_inequality_check(n: usize, s: usize, q: u64, oracle_value: &BigUint) -> Result<bool> {
    require_n(n, s)?;
    let d = ex_pi_density(s, q)?;
    Ok(d.cmp_power(oracle_value, choose2(n as u64)) != Ordering::Less)
}

/// `ex_Σ(s, q)` as a reduced fraction, the per-pair limit of the sum formulas,
/// whenever a formula for `ex_Σ(n, s, q)` is available.
pub fn ex_sigma_density(s: usize, q: u64) -> Result<Fraction> {
    let spec = ConstraintSpec::new(s, q)?;
    let m = spec.pairs_per_set();
    let s64 = s as u64;
    let (a, b) = (q / m, q % m);
    if a >= 1 && b <= s64 - 2 {
        // the linear term vanishes per pair
        return Fraction::new(a, 1);
    }
    let (a, t) = (a + 1, m - b);
    if a >= 2 && (t == 1 || (s64 >= 4 && t <= s64 / 2)) {
        let parts = s64 - t;
        // (a - 1) + (1 - 1/parts)
        return Fraction::new((a - 1) * parts + parts - 1, parts);
    }
    Err(Error::Uncovered { s, q })
}
