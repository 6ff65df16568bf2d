//! Formula-versus-oracle reports.
//!
//! A disagreement is recorded in the report, never raised; only exceeded
//! search caps abort a case.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::constraints::{choose2, classify, ConstraintSpec, Regime};
use crate::constructions::{enumerate_family, Family, MAX_ENUMERATION_N};
use crate::error::{Error, Result};
use crate::formulas::{counting_lower_bounds, density_inequality_check, ex_pi_exact, ex_sigma_exact, FormulaValue};
use crate::fraction::Fraction;
use crate::multigraph::Multigraph;
use crate::par::Parallelism;
use crate::search::{count_members, ex_c3c4, max_product, max_sum, near_extremal_scan, ExtremalCertificate, SearchOptions};

/// Labeled members are only counted when `(q + 1)^C(n,2)` is at most this.
pub const MAX_COUNT_SPACE: u64 = 10_000_000;

/// Every triple needed to reproduce the headline checks.
pub const DEFAULT_SUITE: [(usize, usize, u64); 14] = [
    (4, 3, 4),
    (5, 3, 4),
    (4, 3, 5),
    (5, 3, 5),
    (4, 3, 6),
    (5, 3, 6),
    (4, 3, 7),
    (4, 4, 9),
    (5, 4, 9),
    (6, 4, 9),
    (4, 4, 10),
    (5, 4, 10),
    (3, 3, 3),
    (4, 3, 3),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyCheck {
    /// The witness classes are exactly the family's.
    Equal,
    /// The family's class is among the witnesses, with others besides.
    Contains,
    /// Some family member is not extremal.
    Fails,
    NotApplicable,
}

impl FamilyCheck {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyCheck::Equal => "equal",
            FamilyCheck::Contains => "contains",
            FamilyCheck::Fails => "fails",
            FamilyCheck::NotApplicable => "not-applicable",
        }
    }
}

/// One checked inequality or identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    /// The statement being checked.
    pub statement: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub s: usize,
    pub q: u64,
    #[serde(flatten)]
    pub regime: Regime,
    pub formula: Option<FormulaValue>,
    #[serde(serialize_with = "opt_decimal")]
    pub oracle: Option<BigUint>,
    pub sum_formula: Option<FormulaValue>,
    #[serde(serialize_with = "opt_decimal")]
    pub sum_oracle: Option<BigUint>,
    #[serde(serialize_with = "opt_decimal")]
    pub member_count: Option<BigUint>,
    /// Whether every available closed form admits its oracle value.
    pub agreement: bool,
    pub witness_family_check: FamilyCheck,
    pub bounds_checked: Vec<BoundCheck>,
    pub time_ms: Option<u64>,
}

fn opt_decimal<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

impl SearchReport {
    /// Agreement, a non-failing family check and every bound holding.
    pub fn all_checks_pass(&self) -> bool {
        self.agreement && self.witness_family_check != FamilyCheck::Fails && self.bounds_checked.iter().all(|b| b.holds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[derive(Default)]
pub struct ValidationOptions {
    pub search: SearchOptions,
    /// Record wall-clock times (makes reports run-dependent).
    pub timings: bool,
}


/// Passes cap errors through; any other oracle error is treated as "no value".
fn soft<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::CapExceeded(_)) => Err(e),
        Err(_) => Ok(None),
    }
}

fn target_family(s: usize, regime: Regime) -> Option<Family> {
    match regime {
        Regime::CaseI { a, b: 0 } => Some(Family::Uniform { a }),
        Regime::CaseI { a, b } if b == s as u64 - 2 => Some(Family::StarBlocks { s: s - 1, a }),
        Regime::CaseII { a, t } => Some(Family::Turan { parts: s - t as usize, a }),
        _ => None,
    }
}

fn family_classes(n: usize, family: Family) -> Result<BTreeSet<CanonicalForm>> {
    let members = if n <= MAX_ENUMERATION_N { enumerate_family(n, family)? } else { vec![family.build(n)?] };
    Ok(members.iter().map(canonical_form).collect())
}

fn family_check(n: usize, family: Family, cert: &ExtremalCertificate) -> Result<FamilyCheck> {
    let fam = family_classes(n, family)?;
    let found: BTreeSet<CanonicalForm> = cert.witnesses.iter().map(canonical_form).collect();
    Ok(if fam == found {
        FamilyCheck::Equal
    } else if fam.is_subset(&found) {
        FamilyCheck::Contains
    } else {
        FamilyCheck::Fails
    })
}

fn count_is_small(n: usize, q: u64) -> bool {
    let pairs = choose2(n as u64) as u32;
    (q + 1).checked_pow(pairs).is_some_and(|x| x <= MAX_COUNT_SPACE)
}

/// Runs every applicable oracle for `(n, s, q)` and compares.
pub fn validate_case(n: usize, s: usize, q: u64, opts: &ValidationOptions) -> Result<SearchReport> {
    let started = Instant::now();
    let spec = ConstraintSpec::new(s, q)?;
    let regime = classify(s, q)?;
    let all = SearchOptions { all_witnesses: true, ..opts.search };
    let search = opts.search;
    let girth = |k: usize| ex_c3c4(k, search.parallelism).map(|r| r.value);

    let formula = soft(ex_pi_exact(n, s, q, Some(&girth)))?;
    let product = max_product(n, spec, &all)?;
    let oracle = product.value.clone();
    let mut agreement = formula.as_ref().is_none_or(|f| f.admits(&oracle));

    let sum_formula = soft(ex_sigma_exact(n, s, q))?;
    let sum_oracle = max_sum(n, spec, &search)?.value;
    agreement &= sum_formula.as_ref().is_none_or(|f| f.admits(&sum_oracle));

    let mut bounds = Vec::new();
    let mu_ok = product.witnesses.iter().all(|g| g.max_multiplicity().is_ok_and(|m| m <= q));
    bounds.push(BoundCheck { name: "witness-mu-at-most-q", statement: "mu(G) <= q for every witness", holds: mu_ok });

    if let Some(holds) = soft(density_inequality_check(n, s, q, &oracle))? {
        bounds.push(BoundCheck {
            name: "density-power",
            statement: "ex_Pi(n,s,q) >= ex_Pi(s,q)^C(n,2)",
            holds,
        });
    }

    if let Regime::CaseII { a, t } = regime {
        let s2 = s - t as usize + 1;
        if t >= 2 && n >= s2 {
            let q2 = a * choose2(s2 as u64) - 1;
            let reduced = max_product(n, ConstraintSpec::new(s2, q2)?, &search)?.value;
            bounds.push(BoundCheck {
                name: "reduction-equal",
                statement: "ex_Pi(n,s,aC(s,2)-t) = ex_Pi(n,s-t+1,aC(s-t+1,2)-1)",
                holds: reduced == oracle,
            });
        }
    }

    if regime == Regime::Special49 {
        let low = product.witnesses.iter().all(|g| g.max_multiplicity().is_ok_and(|m| m <= 2));
        bounds.push(BoundCheck { name: "witness-mu-at-most-2", statement: "mu(G) <= 2 for every witness", holds: low });
        let e = girth(n)?;
        bounds.push(BoundCheck {
            name: "girth-five-exponent",
            statement: "ex_Pi(n,4,9) = 2^ex(n,{C3,C4})",
            holds: oracle == Pow::pow(BigUint::from(2u32), e),
        });
    }

    let witness_family_check = match target_family(s, regime) {
        Some(f) => family_check(n, f, &product)?,
        None => FamilyCheck::NotApplicable,
    };

    let mut member_count = None;
    if count_is_small(n, q) {
        let count = count_members(n, spec, &search)?;
        bounds.push(BoundCheck {
            name: "count-at-least-max-product",
            statement: "|F(n,s,q)| >= ex_Pi(n,s,q)",
            holds: count >= oracle,
        });
        if let Some(cb) = soft(counting_lower_bounds(n, s, q, Some(&girth)))? {
            if let Some(b) = &cb.bound_a {
                bounds.push(BoundCheck {
                    name: "count-at-least-formula",
                    statement: "|F(n,s,q)| >= closed-form ex_Pi(n,s,q)",
                    holds: &count >= b,
                });
            }
            if let Some(b) = &cb.bound_b {
                bounds.push(BoundCheck {
                    name: "count-at-least-shifted-density",
                    statement: "|F(n,s,q)| >= ex_Pi(s,q+C(s,2))^C(n,2)",
                    holds: &count >= b,
                });
            }
        }
        member_count = Some(count);
    }

    Ok(SearchReport {
        n,
        s,
        q,
        regime,
        formula,
        oracle: Some(oracle),
        sum_formula,
        sum_oracle: Some(sum_oracle),
        member_count,
        agreement,
        witness_family_check,
        bounds_checked: bounds,
        time_ms: opts.timings.then(|| started.elapsed().as_millis() as u64),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub cases: usize,
    pub agreements: usize,
    pub disagreements: usize,
    /// Cases with a failing family check or bound, agreement aside.
    pub failed_checks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<SearchReport>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    pub fn all_agree(&self) -> bool {
        self.summary.disagreements == 0
    }
}

/// Validates every triple, in order. Triples run in parallel; each case's
/// own searches then run sequentially.
pub fn validate_suite(config: &[(usize, usize, u64)], opts: &ValidationOptions) -> Result<SuiteReport> {
    let inner = ValidationOptions {
        search: SearchOptions { parallelism: Parallelism::Sequential, ..opts.search },
        ..*opts
    };
    let results = opts.search.parallelism.map(config.to_vec(), |(n, s, q)| validate_case(n, s, q, &inner));
    let reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    let agreements = reports.iter().filter(|r| r.agreement).count();
    let failed_checks = reports.iter().filter(|r| !r.all_checks_pass()).count();
    let summary = SuiteSummary { cases: reports.len(), agreements, disagreements: reports.len() - agreements, failed_checks };
    Ok(SuiteReport { reports, summary })
}

/// Parses a suite file: one `n s q` triple per line; blank lines and lines
/// starting with `#` are skipped.
pub fn parse_suite(text: &str) -> Result<Vec<(usize, usize, u64)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, line)| {
            let bad = |what: &str| Error::Parse(format!("line {}: {what}", i + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [n, s, q] = fields.as_slice() else {
                return Err(bad("expected three fields `n s q`"));
            };
            Ok((
                n.parse().map_err(|_| bad("field n is not a nonnegative integer"))?,
                s.parse().map_err(|_| bad("field s is not a nonnegative integer"))?,
                q.parse().map_err(|_| bad("field q is not a nonnegative integer"))?,
            ))
        })
        .collect()
}

pub const CSV_HEADER: &str = "n,s,q,regime,formula,oracle,agree,family,time_ms";

pub fn to_csv(reports: &[SearchReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let formula = r.formula.as_ref().map_or("none".to_string(), |f| f.to_string());
        let oracle = r.oracle.as_ref().map_or(String::new(), |o| o.to_string());
        let time = r.time_ms.map_or(String::new(), |t| t.to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},\"{}\",{},{},{},{}",
            r.n,
            r.s,
            r.q,
            r.regime.tag(),
            formula,
            oracle,
            r.agreement,
            r.witness_family_check.as_str(),
            time
        );
    }
    out
}

/// One JSON object per line.
pub fn to_records(reports: &[SearchReport]) -> String {
    reports.iter().map(|r| serde_json::to_string(r).expect("reports serialize") + "\n").collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityRow {
    pub eps: String,
    pub classes: usize,
    pub max_distance: usize,
}

/// Near-extremal class counts and the largest distance to the target family
/// for each `eps`; observations only.
pub fn stability_report(n: usize, s: usize, q: u64, eps_grid: &[Fraction], opts: &SearchOptions) -> Result<Vec<StabilityRow>> {
    let spec = ConstraintSpec::new(s, q)?;
    eps_grid
        .iter()
        .map(|&eps| {
            let scan = near_extremal_scan(n, spec, eps, opts)?;
            Ok(StabilityRow {
                eps: eps.to_string(),
                classes: scan.len(),
                max_distance: scan.iter().map(|c| c.distance).max().unwrap_or(0),
            })
        })
        .collect()
}

/// Renders a witness list compactly for human output.
pub fn describe_witnesses(gs: &[Multigraph]) -> String {
    gs.iter().map(crate::format::emit).collect::<Vec<_>>().join("\n")
}
