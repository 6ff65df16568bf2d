//! Brute-force oracles written independently of the library's search code,
//! and the property suites shared by the property and acceptance targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use nsq::constraints::{count_bad_configs, is_member, ConstraintSpec};
use nsq::formulas::amgm_int_max;
use nsq::search::count_bad_configs_bruteforce;
use nsq::{canonical_form, Multigraph};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

pub const PROPERTY_CASES: u32 = 256;

/// Pairs of `[n]` in lexicographic order.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn weight(n: usize, w: &[u64], u: usize, v: usize) -> u64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    w[pair_list(n).iter().position(|&p| p == (u, v)).unwrap()]
}

/// Membership straight from the definition: every `s`-subset by bitmask.
pub fn naive_member(n: usize, s: usize, q: u64, w: &[u64]) -> bool {
    let pairs = pair_list(n);
    (0u32..1 << n).filter(|m| m.count_ones() as usize == s).all(|m| {
        let inside: u64 = pairs
            .iter()
            .zip(w)
            .filter(|((u, v), _)| m >> u & 1 == 1 && m >> v & 1 == 1)
            .map(|(_, &x)| x)
            .sum();
        inside <= q
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least weight sequence over all `n!` relabelings.
pub fn brute_canon(n: usize, w: &[u64]) -> Vec<u64> {
    let pairs = pair_list(n);
    permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| weight(n, w, p[u], p[v])).collect::<Vec<_>>())
        .min()
        .unwrap()
}

#[derive(Debug, Default)]
pub struct Brute {
    pub count: u64,
    pub max_product: BigUint,
    pub product_classes: BTreeSet<Vec<u64>>,
    pub product_labeled: u64,
    pub max_sum: u64,
    pub sum_classes: BTreeSet<Vec<u64>>,
}

/// Visits every weighting of `C(n,2)` pairs with values in `0..=q`.
pub fn brute_force(n: usize, s: usize, q: u64) -> Brute {
    let m = pair_list(n).len();
    let mut w = vec![0u64; m];
    let mut out = Brute::default();
    let mut product_maxima: Vec<Vec<u64>> = Vec::new();
    let mut sum_maxima: Vec<Vec<u64>> = Vec::new();
    loop {
        if naive_member(n, s, q, &w) {
            out.count += 1;
            let p: BigUint = w.iter().map(|&x| BigUint::from(x)).product();
            if p > out.max_product || product_maxima.is_empty() {
                out.max_product = p.clone();
                product_maxima.clear();
            }
            if p == out.max_product {
                product_maxima.push(w.clone());
            }
            let t: u64 = w.iter().sum();
            if t > out.max_sum || sum_maxima.is_empty() {
                out.max_sum = t;
                sum_maxima.clear();
            }
            if t == out.max_sum {
                sum_maxima.push(w.clone());
            }
        }
        let mut i = 0;
        while i < m && w[i] == q {
            w[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        w[i] += 1;
    }
    out.product_labeled = product_maxima.len() as u64;
    out.product_classes = product_maxima.iter().map(|w| brute_canon(n, w)).collect();
    out.sum_classes = sum_maxima.iter().map(|w| brute_canon(n, w)).collect();
    out
}

/// Brute canonical forms of library graphs, for comparing class sets.
pub fn classes_of(gs: &[Multigraph]) -> BTreeSet<Vec<u64>> {
    gs.iter().map(|g| brute_canon(g.n(), g.weights())).collect()
}

/// `ex(n, {C3, C4})` by branch and bound over edge inclusion.
pub fn girth_bruteforce(n: usize) -> u64 {
    fn free_with(adj: &[u32], u: usize, v: usize) -> bool {
        // a triangle or 4-cycle through the new edge uv means a path of
        // length 1 or 2 between u and v already, or 3 via one more edge
        if adj[u] & adj[v] != 0 {
            return false;
        }
        let mut nu = adj[u];
        while nu != 0 {
            let x = nu.trailing_zeros() as usize;
            nu &= nu - 1;
            if adj[x] & adj[v] != 0 {
                return false;
            }
        }
        true
    }
    fn rec(pairs: &[(usize, usize)], i: usize, adj: &mut Vec<u32>, edges: u64, best: &mut u64) {
        if edges > *best {
            *best = edges;
        }
        if i == pairs.len() || edges + (pairs.len() - i) as u64 <= *best {
            return;
        }
        let (u, v) = pairs[i];
        if free_with(adj, u, v) {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            rec(pairs, i + 1, adj, edges + 1, best);
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
        rec(pairs, i + 1, adj, edges, best);
    }
    let mut best = 0;
    rec(&pair_list(n), 0, &mut vec![0; n], 0, &mut best);
    best
}

/// The largest product of `l` positive integers with sum at most
/// `a l - k`, with every multiset attaining it.
pub fn amgm_exhaustive(l: usize, k: usize, a: u64) -> Option<(BigUint, BTreeSet<Vec<u64>>)> {
    let budget = (a * l as u64).checked_sub(k as u64)?;
    fn rec(left: usize, min: u64, budget: u64, cur: &mut Vec<u64>, best: &mut Option<(BigUint, BTreeSet<Vec<u64>>)>) {
        if left == 0 {
            let p: BigUint = cur.iter().map(|&x| BigUint::from(x)).product();
            match best {
                Some((b, set)) if *b == p => {
                    set.insert(cur.iter().rev().copied().collect());
                }
                Some((b, _)) if *b > p => {}
                _ => *best = Some((p, BTreeSet::from([cur.iter().rev().copied().collect()]))),
            }
            return;
        }
        let mut x = min;
        while x * left as u64 <= budget {
            cur.push(x);
            rec(left - 1, x, budget - x, cur, best);
            cur.pop();
            x += 1;
        }
    }
    let mut best = None;
    rec(l, 1, budget, &mut Vec::new(), &mut best);
    best
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

/// Lowers the largest pair of each overfull `s`-set until the graph is a member.
pub fn repair(n: usize, s: usize, q: u64, mut w: Vec<u64>) -> Multigraph {
    let pairs = pair_list(n);
    for m in (0u32..1 << n).filter(|m| m.count_ones() as usize == s) {
        let idx: Vec<usize> =
            (0..pairs.len()).filter(|&i| m >> pairs[i].0 & 1 == 1 && m >> pairs[i].1 & 1 == 1).collect();
        while idx.iter().map(|&i| w[i]).sum::<u64>() > q {
            let &top = idx.iter().max_by_key(|&&i| w[i]).unwrap();
            w[top] -= 1;
        }
    }
    // lowering one set never raises another, so a single pass suffices
    Multigraph::from_weights(n, w).unwrap()
}

/// `(n, s, q, weights)` with `s` in `{3, 4}`, `s <= n <= 6`, `q <= 10`.
pub fn raw_graph() -> impl Strategy<Value = (usize, usize, u64, Vec<u64>)> {
    (3usize..=4)
        .prop_flat_map(|s| (Just(s), s..=6usize, 0u64..=10))
        .prop_flat_map(|(s, n, q)| (Just(s), Just(n), Just(q), vec(0..=q + 2, n * (n - 1) / 2)))
        .prop_map(|(s, n, q, w)| (n, s, q, w))
}

pub fn member() -> impl Strategy<Value = (ConstraintSpec, Multigraph)> {
    raw_graph().prop_map(|(n, s, q, w)| (ConstraintSpec::new(s, q).unwrap(), repair(n, s, q, w)))
}

/// Members stay members after lowering pairs or deleting vertices.
pub fn downward_closure() -> Result<(), String> {
    run((member(), any::<u64>()), |((spec, g), seed)| {
        prop_assert!(is_member(&g, spec));
        let mut rng = StdRng::seed_from_u64(seed);
        let lowered: Vec<u64> = g.weights().iter().map(|&x| rand::Rng::gen_range(&mut rng, 0..=x)).collect();
        let h = Multigraph::from_weights(g.n(), lowered).unwrap();
        prop_assert!(is_member(&h, spec));
        let mut keep: Vec<usize> = (0..g.n()).collect();
        keep.shuffle(&mut rng);
        keep.truncate(rand::Rng::gen_range(&mut rng, 1..=g.n()));
        keep.sort_unstable();
        prop_assert!(is_member(&g.induced(&keep).unwrap(), spec));
        Ok(())
    })
}

/// `G` is in `F(n,s,q)` exactly when `G + 1` is in `F(n,s,q + C(s,2))`.
pub fn plus_one_shift() -> Result<(), String> {
    run(raw_graph(), |(n, s, q, w)| {
        let g = Multigraph::from_weights(n, w).unwrap();
        let shifted = ConstraintSpec::new(s, q + (s * (s - 1) / 2) as u64).unwrap();
        let spec = ConstraintSpec::new(s, q).unwrap();
        prop_assert_eq!(is_member(&g, spec), is_member(&g.plus_one(), shifted));
        prop_assert_eq!(is_member(&g, spec), naive_member(n, s, q, g.weights()));
        Ok(())
    })
}

/// No pair of a member with `n >= s` exceeds `q`.
pub fn multiplicity_cap() -> Result<(), String> {
    run(raw_graph(), |(n, s, q, w)| {
        let g = Multigraph::from_weights(n, w).unwrap();
        if is_member(&g, ConstraintSpec::new(s, q).unwrap()) {
            prop_assert!(g.max_multiplicity().unwrap() <= q);
        }
        Ok(())
    })
}

/// The canonical form survives 100 random relabelings.
pub fn canonical_relabel_invariance() -> Result<(), String> {
    let strategy = (1usize..=7)
        .prop_flat_map(|n| (Just(n), vec(0u64..=3, n * n.saturating_sub(1) / 2), any::<u64>()));
    run(strategy, |(n, w, seed)| {
        let g = Multigraph::from_weights(n, w).unwrap();
        let form = canonical_form(&g);
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            prop_assert_eq!(&canonical_form(&g.relabel(&perm).unwrap()), &form);
        }
        Ok(())
    })
}

/// The integer AM-GM maximiser agrees with exhaustive search and its witness
/// is the only maximising multiset.
pub fn amgm_matches_exhaustive() -> Result<(), String> {
    let strategy = (2usize..=6).prop_flat_map(|l| (Just(l), 0..=l, 1u64..=4));
    run(strategy, |(l, k, a)| {
        match (amgm_int_max(l, k, a), amgm_exhaustive(l, k, a)) {
            (Ok(m), Some((p, set))) => {
                prop_assert_eq!(&m.product, &p);
                prop_assert_eq!(set, BTreeSet::from([m.witness]));
            }
            (Err(_), None) => {}
            (lib, brute) => prop_assert!(false, "disagree: {:?} vs {:?}", lib, brute),
        }
        Ok(())
    })
}

/// `s = 3`, `q <= 4`: closed form, library enumeration and a direct loop agree.
pub fn bad_configs_match() -> Result<(), String> {
    run(0u64..=4, |q| {
        let mut direct = 0u64;
        for a in 0..=q {
            for b in 0..=q {
                for c in 0..=q {
                    direct += u64::from(a + b + c > q);
                }
            }
        }
        prop_assert_eq!(count_bad_configs_bruteforce(3, q).unwrap(), direct);
        prop_assert_eq!(count_bad_configs(3, q).unwrap(), BigUint::from(direct));
        Ok(())
    })
}
