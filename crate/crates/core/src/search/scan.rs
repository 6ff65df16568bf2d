//! Near-extremal classes and direct bad-configuration counts.

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use super::engine::{collect_at_least, Goal, Layout, Outcome, Val};
use super::{fits_u128, max_product, SearchOptions};
use crate::constraints::{classify, ConstraintSpec, Regime};
use crate::constructions::{build_uniform, enumerate_family, Family};
use crate::error::{Error, Result};
use crate::format::{decimal, to_value};
use crate::fraction::Fraction;
use crate::multigraph::Multigraph;

/// Largest `n` accepted by [`near_extremal_scan`].
pub const MAX_SCAN_N: usize = 6;
/// Largest `(q + 1)^C(s,2)` accepted by [`count_bad_configs_bruteforce`].
pub const MAX_BAD_CONFIG_SPACE: u64 = 100_000_000;

/// One isomorphism class with product at least `ex^(1 - eps)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearExtremal {
    #[serde(serialize_with = "graph")]
    pub graph: Multigraph,
    #[serde(serialize_with = "decimal")]
    pub product: BigUint,
    /// Least number of differing pairs to a member of the target family.
    pub distance: usize,
}

fn graph<S: serde::Serializer>(g: &Multigraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    to_value(g).serialize(s)
}

/// The least integer `x` with `x^den >= ex^(den - num)`; 1 once `num >= den`.
fn threshold(ex: &BigUint, eps: Fraction) -> BigUint {
    if eps.num() >= eps.den() {
        return BigUint::from(1u32);
    }
    let root = eps.den();
    let target: BigUint = Pow::pow(ex, eps.den() - eps.num());
    let mut x = target.nth_root(u32::try_from(root).expect("small denominator"));
    while Pow::pow(&x, root) < target {
        x += 1u32;
    }
    x
}

fn collect(n: usize, spec: ConstraintSpec, t: &BigUint, opts: &SearchOptions) -> Result<Vec<Multigraph>> {
    let lay = Layout::new(n, spec.s(), spec.q(), 1);
    let limits = opts.limits()?;
    fn classes<V>(o: Outcome<V>) -> Vec<Multigraph> {
        o.classes.into_values().collect()
    }
    if fits_u128(n, spec.q()) {
        let t = u128::try_from(t).expect("threshold below the maximum product");
        collect_at_least::<u128>(&lay, Goal::Product, t, &limits, opts.parallelism).map(classes)
    } else {
        collect_at_least::<BigUint>(&lay, Goal::Product, t.big(), &limits, opts.parallelism).map(classes)
    }
}

/// Every class with `P(G) >= ex_Π(n, s, q)^(1 - eps)`, with its distance to
/// `U_a(n)` (first case) or to the nearest `T_{s-t,a}(n)` member (second
/// case), in canonical-form order.
pub fn near_extremal_scan(n: usize, spec: ConstraintSpec, eps: Fraction, opts: &SearchOptions) -> Result<Vec<NearExtremal>> {
    let family: Vec<Multigraph> = match classify(spec.s(), spec.q())? {
        Regime::CaseI { a, .. } => vec![build_uniform(n, a)],
        Regime::CaseII { a, t } => enumerate_family(n, Family::Turan { parts: spec.s() - t as usize, a })?,
        _ => return Err(Error::Uncovered { s: spec.s(), q: spec.q() }),
    };
    if n > MAX_SCAN_N {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the scan limit {MAX_SCAN_N}")));
    }
    let single = SearchOptions { all_witnesses: false, ..*opts };
    let ex = max_product(n, spec, &single)?.value;
    let t = threshold(&ex, eps);
    collect(n, spec, &t, opts)?
        .into_iter()
        .map(|g| {
            let distance = family
                .iter()
                .map(|f| g.edit_distance(f).map(|d| d.count))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min()
                .expect("families are nonempty");
            Ok(NearExtremal { product: g.product_total(), graph: g, distance })
        })
        .collect()
}

/// `g(s, q)` by visiting every weighting of the pairs of `[s]` with values in
/// `[0, q]`.
pub fn count_bad_configs_bruteforce(s: usize, q: u64) -> Result<u64> {
    let spec = ConstraintSpec::new(s, q)?;
    let m = spec.pairs_per_set() as u32;
    let space = (q + 1).checked_pow(m).filter(|&x| x <= MAX_BAD_CONFIG_SPACE);
    if space.is_none() {
        return Err(Error::CapExceeded(format!("(q+1)^{m} weightings exceed {MAX_BAD_CONFIG_SPACE}")));
    }
    fn rec(left: u32, sum: u64, q: u64) -> u64 {
        if left == 0 {
            return u64::from(sum > q);
        }
        (0..=q).map(|w| rec(left - 1, sum + w, q)).sum()
    }
    Ok(rec(m, 0, q))
}
