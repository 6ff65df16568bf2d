//! Exact oracles: product and sum maximisation over `F(n, s, q)`, labeled
//! member counts, `ex(n, {C3, C4})`, and near-extremal scans.
//!
//! All results are independent of the thread count.

mod engine;
pub mod girth;
pub mod scan;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::constraints::{choose2, is_member, ConstraintSpec};
use crate::error::{Error, Result};
use crate::format::{decimal, to_value};
use crate::multigraph::Multigraph;
use crate::par::Parallelism;
use engine::{solve, Goal, Layout, Limits, Outcome, Val};

pub use girth::{ex_c3c4, ex_c3c4_table, C3C4Extremal, MAX_GIRTH_N};
pub use scan::{count_bad_configs_bruteforce, near_extremal_scan, NearExtremal, MAX_BAD_CONFIG_SPACE};

/// Largest `n` accepted by [`max_product`], [`max_sum`] and [`count_members`].
pub const MAX_SEARCH_N: usize = 9;
pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Collect every extremal graph up to isomorphism, not just one.
    pub all_witnesses: bool,
    pub parallelism: Parallelism,
    pub max_nodes: u64,
    pub max_seconds: Option<f64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            all_witnesses: false,
            parallelism: Parallelism::default(),
            max_nodes: DEFAULT_MAX_NODES,
            max_seconds: None,
        }
    }
}

impl SearchOptions {
    pub fn all_witnesses(mut self) -> Self {
        self.all_witnesses = true;
        self
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    fn limits(&self) -> Result<Limits> {
        if self.max_nodes == 0 {
            return Err(Error::CapExceeded("max_nodes must be positive".into()));
        }
        let deadline = match self.max_seconds {
            Some(t) if !(t > 0.0 && t.is_finite()) => {
                return Err(Error::CapExceeded("max_seconds must be positive".into()))
            }
            Some(t) => Some(Instant::now() + Duration::from_secs_f64(t)),
            None => None,
        };
        Ok(Limits { max_nodes: self.max_nodes, deadline })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Product,
    Sum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub n: usize,
    pub s: usize,
    pub q: u64,
    pub all_witnesses: bool,
    pub max_nodes: u64,
}

/// The optimum of one objective together with graphs attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalCertificate {
    pub mode: Objective,
    #[serde(serialize_with = "decimal")]
    pub value: BigUint,
    /// Pairwise non-isomorphic, canonically labeled, sorted by canonical form.
    #[serde(serialize_with = "graphs")]
    pub witnesses: Vec<Multigraph>,
    /// Labeled extremal graphs; only known when all witnesses were requested.
    pub witness_count_labeled: Option<u64>,
    pub nodes_explored: u64,
    pub params: SearchParams,
}

fn graphs<S: Serializer>(gs: &[Multigraph], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(gs.iter().map(to_value))
}

fn check_size(n: usize, spec: ConstraintSpec) -> Result<()> {
    if n < spec.s() {
        return Err(Error::NTooSmall { n, s: spec.s() });
    }
    if n > MAX_SEARCH_N {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the search limit {MAX_SEARCH_N}")));
    }
    Ok(())
}

fn fits_u128(n: usize, q: u64) -> bool {
    let bits = 64 - q.leading_zeros() as u64;
    bits * choose2(n as u64) < 127
}

fn run(n: usize, spec: ConstraintSpec, goal: Goal, floor: u64, opts: &SearchOptions) -> Result<Outcome<BigUint>> {
    let limits = opts.limits()?;
    let lay = Layout::new(n, spec.s(), spec.q(), floor);
    let all = opts.all_witnesses;
    let lift = |o: Outcome<u128>| Outcome {
        best: o.best.map(|b| b.big()),
        found: o.found,
        classes: o.classes,
        labeled: o.labeled,
        count: o.count,
        nodes: o.nodes,
    };
    if goal != Goal::Product || fits_u128(n, spec.q()) {
        solve::<u128>(&lay, goal, all, &limits, opts.parallelism).map(lift)
    } else {
        solve::<BigUint>(&lay, goal, all, &limits, opts.parallelism)
    }
}

fn certificate(
    n: usize,
    spec: ConstraintSpec,
    mode: Objective,
    opts: &SearchOptions,
    value: BigUint,
    out: Outcome<BigUint>,
) -> ExtremalCertificate {
    let witnesses: Vec<Multigraph> = if opts.all_witnesses {
        out.classes.into_values().collect()
    } else {
        let w = out.found.expect("optimisation keeps a witness");
        let g = Multigraph::from_weights(n, w).expect("full assignment");
        vec![crate::canon::canonicalize(&g).graph(&g)]
    };
    for g in &witnesses {
        let attained = match mode {
            Objective::Product => g.product_total(),
            Objective::Sum => BigUint::from(g.sum_total()),
        };
        assert!(is_member(g, spec) && attained == value, "witness fails re-verification");
    }
    ExtremalCertificate {
        mode,
        value,
        witnesses,
        witness_count_labeled: opts.all_witnesses.then_some(out.labeled),
        nodes_explored: out.nodes,
        params: SearchParams { n, s: spec.s(), q: spec.q(), all_witnesses: opts.all_witnesses, max_nodes: opts.max_nodes },
    }
}

/// `ex_Π(n, s, q)` with one witness, or every witness up to isomorphism.
///
/// When `q < C(s, 2)` every member has a zero pair, so the value is 0; the
/// all-witness mode then lists every member class.
pub fn max_product(n: usize, spec: ConstraintSpec, opts: &SearchOptions) -> Result<ExtremalCertificate> {
    check_size(n, spec)?;
    if spec.q() < spec.pairs_per_set() {
        if !opts.all_witnesses {
            let out = Outcome { found: Some(vec![0; choose2(n as u64) as usize]), ..empty() };
            return Ok(certificate(n, spec, Objective::Product, opts, BigUint::default(), out));
        }
        let out = run(n, spec, Goal::Count { collect: true }, 0, opts)?;
        return Ok(certificate(n, spec, Objective::Product, opts, BigUint::default(), out));
    }
    let mut out = run(n, spec, Goal::Product, 1, opts)?;
    let value = out.best.take().expect("a positive member exists");
    Ok(certificate(n, spec, Objective::Product, opts, value, out))
}

/// `ex_Σ(n, s, q)` with one witness, or every witness up to isomorphism.
pub fn max_sum(n: usize, spec: ConstraintSpec, opts: &SearchOptions) -> Result<ExtremalCertificate> {
    check_size(n, spec)?;
    let mut out = run(n, spec, Goal::Sum, 0, opts)?;
    let value = out.best.take().expect("the zero graph is a member");
    Ok(certificate(n, spec, Objective::Sum, opts, value, out))
}

/// `|F(n, s, q)|`, counted over labeled multigraphs.
pub fn count_members(n: usize, spec: ConstraintSpec, opts: &SearchOptions) -> Result<BigUint> {
    check_size(n, spec)?;
    Ok(BigUint::from(run(n, spec, Goal::Count { collect: false }, 0, opts)?.count))
}

fn empty() -> Outcome<BigUint> {
    Outcome { best: None, found: None, classes: Default::default(), labeled: 0, count: 0, nodes: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::constructions::{enumerate_family, Family};

    fn spec(s: usize, q: u64) -> ConstraintSpec {
        ConstraintSpec::new(s, q).unwrap()
    }

    fn seq() -> SearchOptions {
        SearchOptions::default().with_parallelism(Parallelism::Sequential)
    }

    #[test]
    fn product_examples() {
        let c = max_product(4, spec(3, 6), &seq().all_witnesses()).unwrap();
        assert_eq!(c.value, BigUint::from(64u32));
        assert_eq!(c.witnesses, vec![Multigraph::constant(4, 2)]);
        assert_eq!(c.witness_count_labeled, Some(1));

        let c = max_product(4, spec(3, 5), &seq().all_witnesses()).unwrap();
        assert_eq!(c.value, BigUint::from(16u32));
        assert_eq!(c.witnesses.len(), 1);
        assert_eq!(c.witness_count_labeled, Some(3));
        let family = enumerate_family(4, Family::Turan { parts: 2, a: 2 }).unwrap();
        assert!(is_isomorphic(&c.witnesses[0], &family[0]));

        assert_eq!(max_product(4, spec(4, 9), &seq()).unwrap().value, BigUint::from(8u32));

        let c = max_product(4, spec(3, 4), &seq().all_witnesses()).unwrap();
        assert_eq!(c.value, BigUint::from(4u32));
        assert_eq!(c.witness_count_labeled, Some(3));
    }

    #[test]
    fn sum_examples() {
        assert_eq!(max_sum(4, spec(3, 6), &seq()).unwrap().value, BigUint::from(12u32));
        assert_eq!(max_sum(4, spec(3, 5), &seq()).unwrap().value, BigUint::from(10u32));
        assert_eq!(max_sum(3, spec(3, 4), &seq()).unwrap().value, BigUint::from(4u32));
    }

    #[test]
    fn zero_products() {
        let c = max_product(4, spec(4, 2), &seq()).unwrap();
        assert_eq!(c.value, BigUint::default());
        let c = max_product(3, spec(3, 1), &seq().all_witnesses()).unwrap();
        // zero graph and one single edge
        assert_eq!(c.witnesses.len(), 2);
        assert_eq!(c.witness_count_labeled, Some(4));
    }

    #[test]
    fn count_examples() {
        for q in 0..=10 {
            assert_eq!(count_members(2, spec(2, q), &seq()).unwrap(), BigUint::from(q + 1));
        }
        assert_eq!(count_members(3, spec(3, 3), &seq()).unwrap(), BigUint::from(20u32));
    }

    #[test]
    fn input_checks() {
        assert_eq!(max_product(3, spec(4, 9), &seq()), Err(Error::NTooSmall { n: 3, s: 4 }));
        assert!(matches!(max_sum(10, spec(3, 5), &seq()), Err(Error::CapExceeded(_))));
        assert!(matches!(
            max_product(7, spec(3, 6), &seq().with_max_nodes(10)),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let runs: Vec<_> = [Parallelism::Sequential, Parallelism::Threads(2), Parallelism::Threads(8)]
            .into_iter()
            .map(|p| {
                let o = SearchOptions::default().with_parallelism(p).all_witnesses();
                (
                    max_product(5, spec(3, 5), &o).unwrap(),
                    max_sum(5, spec(3, 6), &o).unwrap(),
                    count_members(4, spec(3, 3), &o).unwrap(),
                )
            })
            .collect();
        assert!(runs.windows(2).all(|w| w[0] == w[1]));
    }
}
