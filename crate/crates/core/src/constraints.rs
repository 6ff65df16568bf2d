//! Membership in `F(n, s, q)`, violating `s`-sets, bad-configuration counts,
//! disjoint packings of heavy sets, and the regime classification of `(s, q)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// The pair `(s, q)`: every `s` vertices span total multiplicity at most `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConstraintSpec {
    s: usize,
    q: u64,
}

impl ConstraintSpec {
    pub fn new(s: usize, q: u64) -> Result<Self> {
        if s < 2 {
            return Err(Error::InvalidSpec { s, q });
        }
        Ok(ConstraintSpec { s, q })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `C(s, 2)`, the number of pairs inside one `s`-set.
    pub fn pairs_per_set(&self) -> u64 {
        choose2(self.s as u64)
    }
}

impl fmt::Display for ConstraintSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.q)
    }
}

pub const fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Which closed-form result covers `(s, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "regime")]
pub enum Regime {
    /// `q < C(s,2)`: every member has a zero pair once `n >= s`.
    ProductZero,
    /// `q = a C(s,2) + b` with `a >= 1`, `0 <= b <= s - 2`.
    CaseI { a: u64, b: u64 },
    /// `q = a C(s,2) - t` with `a >= 2` and `t = 1`, or `2 <= t <= s/2`.
    CaseII { a: u64, t: u64 },
    /// `(s, q) = (4, 9)`.
    Special49,
    /// `q = a C(s,2) + b` with `s - 2 < b < C(s,2) - floor(s/2)`.
    Uncovered { a: u64, b: u64 },
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::ProductZero => "ProductZero",
            Regime::CaseI { .. } => "CaseI",
            Regime::CaseII { .. } => "CaseII",
            Regime::Special49 => "Special49",
            Regime::Uncovered { .. } => "Uncovered",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::CaseI { a, b } => write!(f, "CaseI{{a={a}, b={b}}}"),
            Regime::CaseII { a, t } => write!(f, "CaseII{{a={a}, t={t}}}"),
            Regime::Uncovered { a, b } => write!(f, "Uncovered{{a={a}, b={b}}}"),
            other => f.write_str(other.tag()),
        }
    }
}

pub fn classify(s: usize, q: u64) -> Result<Regime> {
    let spec = ConstraintSpec::new(s, q)?;
    let m = spec.pairs_per_set();
    let s = s as u64;
    if q < m {
        return Ok(Regime::ProductZero);
    }
    if (s, q) == (4, 9) {
        return Ok(Regime::Special49);
    }
    let (a, b) = (q / m, q % m);
    if b <= s - 2 {
        return Ok(Regime::CaseI { a, b });
    }
    let t = m - b;
    // t >= 2 only fits under s/2 once s >= 4
    if t <= s / 2 {
        return Ok(Regime::CaseII { a: a + 1, t });
    }
    Ok(Regime::Uncovered { a, b })
}

/// Lexicographic `k`-subsets of `0..n`.
pub struct Subsets {
    n: usize,
    cur: Vec<usize>,
    done: bool,
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let k = self.cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] < self.n - k + i {
                self.cur[i] += 1;
                for j in i + 1..k {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets { n, cur: (0..k).collect(), done: k > n }
}

/// An `s`-set whose pair sum exceeds `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub set: Vec<usize>,
    pub sum: u64,
}

fn inner_sum(g: &Multigraph, x: &[usize]) -> u64 {
    let mut total = 0;
    for (i, &u) in x.iter().enumerate() {
        for &v in &x[i + 1..] {
            total += g.w(u, v);
        }
    }
    total
}

/// Whether every `s`-set spans at most `q`; vacuously true when `n < s`.
pub fn is_member(g: &Multigraph, spec: ConstraintSpec) -> bool {
    subsets(g.n(), spec.s).all(|x| inner_sum(g, &x) <= spec.q)
}

/// All violating `s`-sets in lexicographic order.
pub fn violations(g: &Multigraph, spec: ConstraintSpec) -> Vec<Violation> {
    subsets(g.n(), spec.s)
        .filter_map(|set| {
            let sum = inner_sum(g, &set);
            (sum > spec.q).then_some(Violation { set, sum })
        })
        .collect()
}

/// `s`-sets inducing a bad configuration: sum above `q` with every induced
/// multiplicity at most `q`. Equal to [`violations`] whenever `mu(G) <= q`.
pub fn bad_sets(g: &Multigraph, spec: ConstraintSpec) -> Vec<Vec<usize>> {
    subsets(g.n(), spec.s)
        .filter(|x| {
            let within_cap = x
                .iter()
                .enumerate()
                .all(|(i, &u)| x[i + 1..].iter().all(|&v| g.w(u, v) <= spec.q));
            within_cap && inner_sum(g, x) > spec.q
        })
        .collect()
}

/// `g(s, q)`: weightings of the `C(s,2)` pairs of `[s]` with values in
/// `[0, q]` and total above `q`.
///
/// A weighting with total at most `q` never meets the per-pair cap, so the
/// complement is the stars-and-bars count `C(q + m, m)`.
pub fn count_bad_configs(s: usize, q: u64) -> Result<BigUint> {
    let spec = ConstraintSpec::new(s, q)?;
    let m = spec.pairs_per_set();
    let all: BigUint = Pow::pow(BigUint::from(q + 1), m as u32);
    Ok(all - binomial(q + m, m))
}

/// A maximum family of pairwise disjoint heavy sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Packing {
    pub k: usize,
    pub witness: Vec<Vec<usize>>,
}

/// The largest number of pairwise disjoint `r`-sets `Y` with
/// `S(Y) >= threshold`, found by exhaustive backtracking.
pub fn disjoint_violation_packing(g: &Multigraph, r: usize, threshold: u64) -> Result<Packing> {
    let n = g.n();
    if r == 0 || r > n {
        return Err(Error::Infeasible(format!("set size {r} must lie in 1..={n}")));
    }
    if n > 64 {
        return Err(Error::CapExceeded(format!("packing over n = {n} > 64 vertices")));
    }
    let heavy: Vec<(u64, Vec<usize>)> = subsets(n, r)
        .filter(|x| inner_sum(g, x) >= threshold)
        .map(|x| (x.iter().fold(0u64, |m, &v| m | 1 << v), x))
        .collect();

    struct Ctx<'a> {
        heavy: &'a [(u64, Vec<usize>)],
        r: usize,
        n: usize,
        best: Vec<usize>,
        chosen: Vec<usize>,
    }
    fn rec(c: &mut Ctx, from: usize, used: u64) {
        if c.chosen.len() > c.best.len() {
            c.best = c.chosen.clone();
        }
        let room = (c.n - used.count_ones() as usize) / c.r;
        if c.chosen.len() + room.min(c.heavy.len() - from) <= c.best.len() {
            return;
        }
        for i in from..c.heavy.len() {
            let mask = c.heavy[i].0;
            if mask & used == 0 {
                c.chosen.push(i);
                rec(c, i + 1, used | mask);
                c.chosen.pop();
                let room = (c.n - used.count_ones() as usize) / c.r;
                if c.chosen.len() + room.min(c.heavy.len() - i - 1) <= c.best.len() {
                    return;
                }
            }
        }
    }
    let mut ctx = Ctx { heavy: &heavy, r, n, best: Vec::new(), chosen: Vec::new() };
    rec(&mut ctx, 0, 0);
    let witness: Vec<Vec<usize>> = ctx.best.iter().map(|&i| heavy[i].1.clone()).collect();
    Ok(Packing { k: witness.len(), witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn turan22() -> Multigraph {
        Multigraph::from_fn(4, |u, v| if (u < 2) == (v < 2) { 1 } else { 2 })
    }

    fn spec(s: usize, q: u64) -> ConstraintSpec {
        ConstraintSpec::new(s, q).unwrap()
    }

    #[test]
    fn membership() {
        let u2 = Multigraph::constant(4, 2);
        assert!(is_member(&u2, spec(3, 6)));
        assert!(is_member(&turan22(), spec(3, 5)));
        assert!(!is_member(&u2, spec(3, 5)));
        // n < s is vacuous
        assert!(is_member(&Multigraph::constant(3, 100), spec(4, 0)));
    }

    #[test]
    fn violation_lists() {
        let u2 = Multigraph::constant(4, 2);
        assert!(violations(&u2, spec(3, 6)).is_empty());
        let v = violations(&u2, spec(3, 5));
        assert_eq!(
            v.iter().map(|x| x.set.clone()).collect::<Vec<_>>(),
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        assert!(v.iter().all(|x| x.sum == 6));

        let heavy = Multigraph::zero(4).with_edges(&[(1, 2, 7)]).unwrap();
        assert_eq!(
            violations(&heavy, spec(3, 6)),
            vec![
                Violation { set: vec![0, 1, 2], sum: 7 },
                Violation { set: vec![1, 2, 3], sum: 7 }
            ]
        );
    }

    #[test]
    fn bad_set_readings() {
        assert_eq!(bad_sets(&Multigraph::constant(4, 2), spec(3, 5)).len(), 4);
        assert!(bad_sets(&Multigraph::constant(4, 2), spec(3, 6)).is_empty());
        assert_eq!(bad_sets(&Multigraph::constant(4, 3), spec(3, 6)).len(), 4);
        // a pair above q excludes its sets from the strict reading only
        let heavy = Multigraph::zero(4).with_edges(&[(1, 2, 7)]).unwrap();
        assert!(bad_sets(&heavy, spec(3, 6)).is_empty());
        assert_eq!(violations(&heavy, spec(3, 6)).len(), 2);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(3, 7).unwrap(), Regime::CaseI { a: 2, b: 1 });
        assert_eq!(classify(4, 9).unwrap(), Regime::Special49);
        assert!(matches!(classify(4, 15).unwrap(), Regime::Uncovered { .. }));
        assert_eq!(classify(3, 5).unwrap(), Regime::CaseII { a: 2, t: 1 });
        assert_eq!(classify(4, 2).unwrap(), Regime::ProductZero);
        assert_eq!(classify(4, 10).unwrap(), Regime::CaseII { a: 2, t: 2 });
        assert_eq!(classify(2, 0).unwrap(), Regime::ProductZero);
        assert_eq!(classify(2, 5).unwrap(), Regime::CaseI { a: 5, b: 0 });
        assert!(classify(1, 3).is_err());
    }

    #[test]
    fn classification_partitions_and_reconstructs() {
        for s in 2..=8usize {
            let m = choose2(s as u64);
            for q in 0..=6 * m + 3 {
                match classify(s, q).unwrap() {
                    Regime::ProductZero => assert!(q < m),
                    Regime::CaseI { a, b } => {
                        assert!(a >= 1 && b <= s as u64 - 2);
                        assert_eq!(a * m + b, q);
                    }
                    Regime::CaseII { a, t } => {
                        assert!(a >= 2 && t >= 1 && t <= s as u64 / 2);
                        assert!(t == 1 || s >= 4);
                        assert_eq!(a * m - t, q);
                        // never also a CaseI residue
                        assert!(q % m > s as u64 - 2);
                    }
                    Regime::Special49 => assert_eq!((s, q), (4, 9)),
                    Regime::Uncovered { a, b } => {
                        assert_eq!(a * m + b, q);
                        assert!(b > s as u64 - 2 && b < m - s as u64 / 2);
                    }
                }
            }
        }
    }

    #[test]
    fn bad_config_counts() {
        assert_eq!(count_bad_configs(2, 9).unwrap(), BigUint::default());
        assert_eq!(count_bad_configs(3, 2).unwrap(), BigUint::from(17u32));
        assert_eq!(count_bad_configs(3, 0).unwrap(), BigUint::default());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).count(), 6);
        assert_eq!(subsets(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 3).count(), 0);
        assert_eq!(subsets(5, 5).collect::<Vec<_>>(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn packings() {
        assert_eq!(disjoint_violation_packing(&Multigraph::constant(6, 1), 3, 6).unwrap().k, 0);
        let p = disjoint_violation_packing(&Multigraph::constant(6, 2), 3, 6).unwrap();
        assert_eq!(p.k, 2);
        assert_eq!(p.witness, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let g = Multigraph::constant(6, 1)
            .with_edges(&[(0, 1, 2), (0, 2, 2), (1, 2, 2)])
            .unwrap();
        let p = disjoint_violation_packing(&g, 3, 6).unwrap();
        assert_eq!((p.k, p.witness), (1, vec![vec![0, 1, 2]]));
        assert!(disjoint_violation_packing(&g, 7, 0).is_err());
    }

    #[test]
    fn packing_beats_greedy() {
        // lexicographic greedy takes {0,1} and blocks both {0,2} and {1,3}
        let g = Multigraph::zero(4).with_edges(&[(0, 1, 1), (0, 2, 1), (1, 3, 1)]).unwrap();
        let p = disjoint_violation_packing(&g, 2, 1).unwrap();
        assert_eq!(p.k, 2);
        assert_eq!(p.witness, vec![vec![0, 2], vec![1, 3]]);
    }
}
