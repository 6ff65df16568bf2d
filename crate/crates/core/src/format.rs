//! The multigraph text format.
//!
//! A single JSON object:
//!
//! ```text
//! {"n":4,"default":2,"edges":[[0,1,3],[2,3,3]]}
//! ```
//!
//! `default` applies to every pair not listed in `edges`; each edge is a
//! 0-based `[u, v, w]` triple with `u < v < n`. Emission lists pairs in
//! lexicographic order against the most frequent multiplicity (smallest on a
//! tie), so emitted text is unique per labeled multigraph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{pair_index, pairs, Multigraph};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    n: usize,
    default: u64,
    edges: Vec<(usize, usize, u64)>,
}

/// Serializes a big integer as a decimal string.
pub(crate) fn decimal<S: serde::Serializer>(v: &num_bigint::BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn parse(text: &str) -> Result<Multigraph> {
    let rec: Record = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_record(rec)
}

pub fn parse_value(value: serde_json::Value) -> Result<Multigraph> {
    let rec: Record = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    from_record(rec)
}

fn from_record(rec: Record) -> Result<Multigraph> {
    let n = rec.n;
    let mut w = vec![rec.default; n * n.saturating_sub(1) / 2];
    let mut seen = vec![false; w.len()];
    for (i, &(u, v, m)) in rec.edges.iter().enumerate() {
        if !(u < v && v < n) {
            return Err(Error::Parse(format!(
                "edges[{i}]: need 0 <= u < v < n, got [{u}, {v}, {m}] with n = {n}"
            )));
        }
        let idx = pair_index(n, u, v);
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::Parse(format!("edges[{i}]: pair [{u}, {v}] listed twice")));
        }
        w[idx] = m;
    }
    Multigraph::from_weights(n, w)
}

fn to_record(g: &Multigraph) -> Record {
    let mut freq: BTreeMap<u64, usize> = BTreeMap::new();
    for &m in g.weights() {
        *freq.entry(m).or_default() += 1;
    }
    let default = freq
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&m, _)| m)
        .unwrap_or(0);
    let edges = pairs(g.n())
        .zip(g.weights())
        .filter(|(_, &m)| m != default)
        .map(|((u, v), &m)| (u, v, m))
        .collect();
    Record { n: g.n(), default, edges }
}

pub fn emit(g: &Multigraph) -> String {
    serde_json::to_string(&to_record(g)).expect("record serialises")
}

pub fn to_value(g: &Multigraph) -> serde_json::Value {
    serde_json::to_value(to_record(g)).expect("record serialises")
}
