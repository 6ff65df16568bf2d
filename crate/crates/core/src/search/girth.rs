//! `ex(n, {C3, C4})` by generating every `{C3, C4}`-free graph up to
//! isomorphism, one vertex at a time.
//!
//! A new vertex may join a set `S` exactly when `S` is independent (no
//! triangle) and no two vertices of `S` have a common neighbour (no 4-cycle),
//! so every such graph on `k + 1` vertices arises from one on `k` vertices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::canon::{canonicalize, CanonicalForm};
use crate::error::{Error, Result};
use crate::par::Parallelism;
use crate::simple::SimpleGraph;

pub const MAX_GIRTH_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C3C4Extremal {
    pub n: usize,
    pub value: u64,
    /// The extremal graph with the least canonical form.
    #[serde(serialize_with = "edge_list")]
    pub witness: SimpleGraph,
    /// Extremal graphs up to isomorphism.
    pub extremal_classes: usize,
    /// `{C3, C4}`-free graphs on `n` vertices up to isomorphism.
    pub classes: usize,
}

fn edge_list<S: serde::Serializer>(g: &SimpleGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(g.edges())
}

fn extensions(g: &SimpleGraph) -> Vec<(CanonicalForm, SimpleGraph)> {
    let k = g.n();
    let mut out = Vec::new();
    for mask in 0u64..1 << k {
        let ok = (0..k).filter(|&u| mask >> u & 1 == 1).all(|u| {
            let later = mask & !((2u64 << u) - 1);
            g.neighbours(u) & mask == 0
                && (0..k).filter(|&v| later >> v & 1 == 1).all(|v| g.neighbours(u) & g.neighbours(v) == 0)
        });
        if ok {
            let mut h = g.clone();
            h.add_vertex(mask);
            let m = h.to_multigraph();
            let c = canonicalize(&m);
            let canon = SimpleGraph::level_graph(&c.graph(&m), 1);
            out.push((c.form, canon));
        }
    }
    out
}

/// Every `{C3, C4}`-free graph class, level by level up to `n` vertices;
/// `levels[k]` maps canonical forms to canonically labeled graphs.
fn levels(n: usize, par: Parallelism) -> Vec<BTreeMap<CanonicalForm, SimpleGraph>> {
    let mut first = BTreeMap::new();
    let empty = SimpleGraph::empty(0);
    first.insert(canonicalize(&empty.to_multigraph()).form, empty);
    let mut out = vec![first];
    for _ in 0..n {
        let prev: Vec<SimpleGraph> = out.last().expect("nonempty").values().cloned().collect();
        let next: BTreeMap<_, _> = par.map(prev, |g| extensions(&g)).into_iter().flatten().collect();
        out.push(next);
    }
    out
}

fn summarise(n: usize, level: &BTreeMap<CanonicalForm, SimpleGraph>) -> C3C4Extremal {
    let value = level.values().map(|g| g.edge_count() as u64).max().unwrap_or(0);
    let mut extremal = level.values().filter(|g| g.edge_count() as u64 == value);
    let witness = extremal.next().cloned().unwrap_or_else(|| SimpleGraph::empty(n));
    C3C4Extremal { n, value, witness, extremal_classes: 1 + extremal.count(), classes: level.len() }
}

fn check(n: usize) -> Result<()> {
    if n > MAX_GIRTH_N {
        return Err(Error::CapExceeded(format!("n = {n} exceeds the girth search limit {MAX_GIRTH_N}")));
    }
    Ok(())
}

/// The largest edge count of a `{C3, C4}`-free graph on `n` vertices.
pub fn ex_c3c4(n: usize, par: Parallelism) -> Result<C3C4Extremal> {
    check(n)?;
    Ok(summarise(n, &levels(n, par)[n]))
}

/// [`ex_c3c4`] for every `0 <= k <= n` in one generation pass.
pub fn ex_c3c4_table(n: usize, par: Parallelism) -> Result<Vec<C3C4Extremal>> {
    check(n)?;
    Ok(levels(n, par).iter().enumerate().map(|(k, l)| summarise(k, l)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let table = ex_c3c4_table(6, Parallelism::Sequential).unwrap();
        let values: Vec<u64> = table.iter().map(|r| r.value).collect();
        assert_eq!(values, [0, 0, 1, 2, 3, 5, 6]);
        // the pentagon is the only extremal graph on five vertices
        assert_eq!(table[5].extremal_classes, 1);
        assert!(table.iter().all(|r| r.witness.is_c3_c4_free() && r.witness.edge_count() as u64 == r.value));
    }

    #[test]
    fn girth_five_class_counts() {
        // graphs of girth at least five, counted up to isomorphism
        let counts: Vec<usize> = ex_c3c4_table(7, Parallelism::Sequential).unwrap().iter().map(|r| r.classes).collect();
        assert_eq!(counts[1..], [1, 2, 3, 6, 11, 23, 48]);
    }

    #[test]
    fn cap() {
        assert!(ex_c3c4(MAX_GIRTH_N + 1, Parallelism::Sequential).is_err());
    }
}
