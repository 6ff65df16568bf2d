//! Depth-first assignment of pair multiplicities in lexicographic pair order.
//!
//! Feasibility is kept as an invariant rather than checked at the leaves:
//! an edge may only take values up to its residual cap, the least over the
//! `s`-sets through it of `q - assigned - (open - 1) * floor`, where `floor`
//! is the smallest value still allowed on open pairs. Every leaf is therefore
//! a member.
//!
//! Parallel runs split the tree at a fixed depth and search each subtree with
//! its own incumbent, so node counts and results never depend on scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;

use crate::canon::{canonicalize, CanonicalForm};
use crate::constraints::{choose2, subsets};
use crate::error::{Error, Result};
use crate::multigraph::{pair_index, Multigraph};
use crate::par::Parallelism;

/// Nodes spent on the sequential warm start before splitting.
const WARM_NODES: u64 = 50_000;
/// Pairs assigned in every task prefix.
const SPLIT_DEPTH: usize = 3;
const MIN_PAIRS_TO_SPLIT: usize = 8;

/// Objective arithmetic; `u128` when the largest product fits.
pub(crate) trait Val: Clone + Ord + Send + Sync {
    fn of(x: u64) -> Self;
    fn mul(&self, x: u64) -> Self;
    fn mul_v(&self, other: &Self) -> Self;
    fn add(&self, x: u64) -> Self;
    fn add_v(&self, other: &Self) -> Self;
    fn big(&self) -> BigUint;
}

impl Val for u128 {
    fn of(x: u64) -> Self {
        x as u128
    }
    fn mul(&self, x: u64) -> Self {
        self * x as u128
    }
    fn mul_v(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, x: u64) -> Self {
        self + x as u128
    }
    fn add_v(&self, other: &Self) -> Self {
        self + other
    }
    fn big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Val for BigUint {
    fn of(x: u64) -> Self {
        BigUint::from(x)
    }
    fn mul(&self, x: u64) -> Self {
        self * x
    }
    fn mul_v(&self, other: &Self) -> Self {
        self * other
    }
    fn add(&self, x: u64) -> Self {
        self + x
    }
    fn add_v(&self, other: &Self) -> Self {
        self + other
    }
    fn big(&self) -> BigUint {
        self.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Goal {
    Product,
    Sum,
    /// Counts members; `collect` also gathers their isomorphism classes.
    Count { collect: bool },
}

/// The `s`-set incidence structure of `K_n`.
pub(crate) struct Layout {
    n: usize,
    q: u64,
    floor: u64,
    edges: usize,
    edge_sets: Vec<Vec<u32>>,
    set_edges: Vec<Vec<u32>>,
    /// `C(n - 2, s - 2)`, the number of `s`-sets through a pair.
    per_pair: u64,
}

impl Layout {
    pub(crate) fn new(n: usize, s: usize, q: u64, floor: u64) -> Self {
        let edges = choose2(n as u64) as usize;
        let mut edge_sets = vec![Vec::new(); edges];
        let mut set_edges = Vec::new();
        for (xi, x) in subsets(n, s).enumerate() {
            let mut es = Vec::with_capacity(choose2(s as u64) as usize);
            for (i, &u) in x.iter().enumerate() {
                for &v in &x[i + 1..] {
                    let e = pair_index(n, u, v);
                    es.push(e as u32);
                    edge_sets[e].push(xi as u32);
                }
            }
            set_edges.push(es);
        }
        let per_pair = edge_sets.first().map_or(0, |v| v.len() as u64);
        Layout { n, q, floor, edges, edge_sets, set_edges, per_pair }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    Budget,
    Deadline,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Limits {
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

/// What one search (or the merge of several) found.
#[derive(Debug, Clone)]
pub(crate) struct Outcome<V> {
    pub best: Option<V>,
    /// A labeled graph attaining `best` (optimisation without witness lists).
    pub found: Option<Vec<u64>>,
    /// Isomorphism classes of the collected graphs, canonically relabeled.
    pub classes: BTreeMap<CanonicalForm, Multigraph>,
    /// Labeled graphs collected into `classes`.
    pub labeled: u64,
    pub count: u128,
    pub nodes: u64,
}

impl<V> Outcome<V> {
    fn empty() -> Self {
        Outcome { best: None, found: None, classes: BTreeMap::new(), labeled: 0, count: 0, nodes: 0 }
    }
}

struct Engine<'a, V> {
    lay: &'a Layout,
    goal: Goal,
    all: bool,
    /// Keeps `best` fixed and collects every leaf reaching it.
    fixed: bool,
    w: Vec<u64>,
    set_sum: Vec<u64>,
    set_open: Vec<u64>,
    caps: Vec<u64>,
    out: Outcome<V>,
    budget: u64,
    deadline: Option<Instant>,
    stop: Option<Stop>,
}

impl<'a, V: Val> Engine<'a, V> {
    fn new(lay: &'a Layout, goal: Goal, all: bool, best: Option<V>, budget: u64, deadline: Option<Instant>) -> Self {
        let m = lay.set_edges.first().map_or(0, |x| x.len() as u64);
        let mut out = Outcome::empty();
        out.best = best;
        Engine {
            lay,
            goal,
            all,
            fixed: false,
            w: vec![0; lay.edges],
            set_sum: vec![0; lay.set_edges.len()],
            set_open: vec![m; lay.set_edges.len()],
            caps: vec![0; lay.edges],
            out,
            budget,
            deadline,
            stop: None,
        }
    }

    fn assign(&mut self, e: usize, v: u64) {
        self.w[e] = v;
        for &x in &self.lay.edge_sets[e] {
            self.set_sum[x as usize] += v;
            self.set_open[x as usize] -= 1;
        }
    }

    fn unassign(&mut self, e: usize) {
        let v = std::mem::take(&mut self.w[e]);
        for &x in &self.lay.edge_sets[e] {
            self.set_sum[x as usize] -= v;
            self.set_open[x as usize] += 1;
        }
    }

    fn cap(&self, e: usize) -> u64 {
        let lay = self.lay;
        lay.edge_sets[e]
            .iter()
            .map(|&x| {
                let x = x as usize;
                lay.q - self.set_sum[x] - (self.set_open[x] - 1) * lay.floor
            })
            .min()
            .unwrap_or(lay.q)
    }

    fn start(&mut self, prefix: &[u64]) -> V {
        let mut partial = match self.goal {
            Goal::Product => V::of(1),
            _ => V::of(0),
        };
        for (e, &v) in prefix.iter().enumerate() {
            self.assign(e, v);
            partial = match self.goal {
                Goal::Product => partial.mul(v),
                _ => partial.add(v),
            };
        }
        partial
    }

    fn leaf(&mut self, value: V) {
        match self.goal {
            Goal::Count { collect } => {
                self.out.count += 1;
                if collect {
                    self.collect();
                }
            }
            _ if self.fixed => {
                if self.out.best.as_ref().is_some_and(|b| value >= *b) {
                    self.collect();
                }
            }
            _ if self.all => {
                let better = match &self.out.best {
                    None => true,
                    Some(b) => value > *b,
                };
                if better {
                    self.out.best = Some(value.clone());
                    self.out.classes.clear();
                    self.out.labeled = 0;
                }
                if self.out.best.as_ref() == Some(&value) {
                    self.collect();
                }
            }
            _ => {
                if self.out.best.as_ref().is_none_or(|b| value > *b) {
                    self.out.best = Some(value);
                    self.out.found = Some(self.w.clone());
                }
            }
        }
    }

    fn collect(&mut self) {
        let g = Multigraph::from_weights(self.lay.n, self.w.clone()).expect("full assignment");
        let c = canonicalize(&g);
        self.out.labeled += 1;
        self.out.classes.entry(c.form.clone()).or_insert_with(|| c.graph(&g));
    }

    /// Upper bound contribution of the pairs after `depth`, which also
    /// refreshes `caps` for every open pair.
    fn rest(&mut self, depth: usize) -> (V, Option<u64>) {
        for e in depth..self.lay.edges {
            self.caps[e] = self.cap(e);
        }
        let tail = &self.caps[depth + 1..];
        match self.goal {
            Goal::Product => (tail.iter().fold(V::of(1), |acc, &c| acc.mul(c)), None),
            _ => {
                // each final s-set sum is at most min(q, assigned + open caps);
                // summing over sets counts every pair per_pair times
                let lay = self.lay;
                let total: u64 = lay
                    .set_edges
                    .iter()
                    .enumerate()
                    .map(|(x, es)| {
                        let open: u64 = es.iter().filter(|&&e| e as usize >= depth).map(|&e| self.caps[e as usize]).sum();
                        (self.set_sum[x] + open).min(lay.q)
                    })
                    .sum();
                (V::of(tail.iter().sum()), Some(total / lay.per_pair))
            }
        }
    }

    fn dfs(&mut self, depth: usize, partial: V) {
        self.out.nodes += 1;
        if self.out.nodes > self.budget {
            self.stop = Some(Stop::Budget);
            return;
        }
        if self.out.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop = Some(Stop::Deadline);
            return;
        }
        if depth == self.lay.edges {
            self.leaf(partial);
            return;
        }
        let floor = self.lay.floor;
        if let Goal::Count { collect } = self.goal {
            let cap = self.cap(depth);
            if !collect && depth + 1 == self.lay.edges {
                self.out.count += (cap - floor + 1) as u128;
                return;
            }
            for v in (floor..=cap).rev() {
                self.assign(depth, v);
                self.dfs(depth + 1, partial.clone());
                self.unassign(depth);
                if self.stop.is_some() {
                    return;
                }
            }
            return;
        }
        let (rest, whole) = self.rest(depth);
        let cap = self.caps[depth];
        for v in (floor..=cap).rev() {
            let (child, bound) = match self.goal {
                Goal::Product => {
                    let c = partial.mul(v);
                    let b = c.mul_v(&rest);
                    (c, b)
                }
                _ => {
                    let c = partial.add(v);
                    let mut b = c.add_v(&rest);
                    if let Some(wb) = whole {
                        b = b.min(V::of(wb));
                    }
                    (c, b)
                }
            };
            if let Some(best) = &self.out.best {
                if bound < *best || (!self.all && bound == *best) {
                    break;
                }
            }
            self.assign(depth, v);
            self.dfs(depth + 1, child);
            self.unassign(depth);
            if self.stop.is_some() {
                return;
            }
        }
    }
}

/// Every prefix of the first `depth` pairs, largest values first.
fn prefixes(lay: &Layout, depth: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut e: Engine<'_, u128> = Engine::new(lay, Goal::Count { collect: false }, false, None, u64::MAX, None);
    fn rec(e: &mut Engine<'_, u128>, depth: usize, target: usize, out: &mut Vec<Vec<u64>>) {
        if depth == target {
            out.push(e.w[..target].to_vec());
            return;
        }
        let cap = e.cap(depth);
        for v in (e.lay.floor..=cap).rev() {
            e.assign(depth, v);
            rec(e, depth + 1, target, out);
            e.unassign(depth);
        }
    }
    rec(&mut e, 0, depth, &mut out);
    out
}

/// Assigns each pair its full residual cap in order.
fn greedy<V: Val>(lay: &Layout, goal: Goal) -> (V, Vec<u64>) {
    let mut e: Engine<'_, V> = Engine::new(lay, goal, false, None, u64::MAX, None);
    let mut value = e.start(&[]);
    for i in 0..lay.edges {
        let c = e.cap(i);
        e.assign(i, c);
        value = match goal {
            Goal::Product => value.mul(c),
            _ => value.add(c),
        };
    }
    (value, e.w)
}

fn cap_error(limits: &Limits, stop: Stop) -> Error {
    match stop {
        Stop::Budget => Error::CapExceeded(format!("search exceeded {} nodes", limits.max_nodes)),
        Stop::Deadline => Error::CapExceeded("search exceeded its time limit".into()),
    }
}

/// Every member whose objective is at least `threshold`, up to isomorphism.
pub(crate) fn collect_at_least<V: Val>(
    lay: &Layout,
    goal: Goal,
    threshold: V,
    limits: &Limits,
    par: Parallelism,
) -> Result<Outcome<V>> {
    let depth = if lay.edges >= MIN_PAIRS_TO_SPLIT { SPLIT_DEPTH } else { 0 };
    let results = par.map(prefixes(lay, depth), |prefix| {
        let mut e: Engine<'_, V> = Engine::new(lay, goal, true, Some(threshold.clone()), limits.max_nodes, limits.deadline);
        e.fixed = true;
        let partial = e.start(&prefix);
        e.dfs(prefix.len(), partial);
        (e.out, e.stop)
    });
    let mut merged = Outcome::empty();
    for (out, stop) in results {
        if let Some(stop) = stop {
            return Err(cap_error(limits, stop));
        }
        merged.nodes += out.nodes;
        merged.labeled += out.labeled;
        merged.classes.extend(out.classes);
    }
    if merged.nodes > limits.max_nodes {
        return Err(cap_error(limits, Stop::Budget));
    }
    merged.best = Some(threshold);
    Ok(merged)
}

/// Runs a complete search, splitting into independent subtrees when the
/// warm start does not finish.
pub(crate) fn solve<V: Val>(lay: &Layout, goal: Goal, all: bool, limits: &Limits, par: Parallelism) -> Result<Outcome<V>> {
    let mut used = 0u64;
    let mut incumbent: Option<(V, Option<Vec<u64>>)> = None;
    if matches!(goal, Goal::Product | Goal::Sum) {
        let (value, w) = greedy::<V>(lay, goal);
        let budget = WARM_NODES.min(limits.max_nodes);
        let mut warm: Engine<'_, V> = Engine::new(lay, goal, false, Some(value.clone()), budget, limits.deadline);
        let partial = warm.start(&[]);
        warm.dfs(0, partial);
        used = warm.out.nodes.min(budget);
        let found = warm.out.found.take().or(Some(w));
        let best = warm.out.best.take().expect("warm start keeps its incumbent");
        match warm.stop {
            None if !all => {
                return Ok(Outcome { best: Some(best), found, nodes: used, ..Outcome::empty() });
            }
            Some(Stop::Deadline) => return Err(cap_error(limits, Stop::Deadline)),
            Some(Stop::Budget) if used >= limits.max_nodes => return Err(cap_error(limits, Stop::Budget)),
            _ => {}
        }
        incumbent = Some((best, found));
    }

    let depth = if lay.edges >= MIN_PAIRS_TO_SPLIT { SPLIT_DEPTH } else { 0 };
    let tasks = prefixes(lay, depth);
    let remaining = limits.max_nodes - used;
    let start_best = incumbent.as_ref().map(|(v, _)| v.clone());
    let results = par.map(tasks, |prefix| {
        let mut e: Engine<'_, V> = Engine::new(lay, goal, all, start_best.clone(), remaining, limits.deadline);
        let partial = e.start(&prefix);
        e.dfs(prefix.len(), partial);
        (e.out, e.stop)
    });

    let mut merged = Outcome::empty();
    merged.nodes = used;
    for (out, stop) in &results {
        if let Some(stop) = stop {
            return Err(cap_error(limits, *stop));
        }
        merged.nodes += out.nodes;
    }
    if merged.nodes > limits.max_nodes {
        return Err(cap_error(limits, Stop::Budget));
    }
    let best = results.iter().filter_map(|(o, _)| o.best.clone()).max();
    for (out, _) in results {
        merged.count += out.count;
        if matches!(goal, Goal::Count { .. }) || out.best == best {
            merged.labeled += out.labeled;
            merged.classes.extend(out.classes);
            if merged.found.is_none() {
                merged.found = out.found;
            }
        }
    }
    merged.best = best;
    if merged.found.is_none() {
        merged.found = incumbent.and_then(|(_, w)| w);
    }
    Ok(merged)
}
