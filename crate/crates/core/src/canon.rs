//! Canonical forms for multigraphs, exact for every `n`.
//!
//! Vertices are first coloured by iterated neighbourhood refinement (an
//! isomorphism-invariant ordered partition). The canonical labeling is the
//! cell-respecting vertex order that minimises the weight sequence read in
//! colex pair order `(0,1), (0,2), (1,2), (0,3), ..`, so that placing the
//! vertex at position `k` fixes exactly the next `k` entries. The search
//! branches only on candidates that attain the minimal next block, and on one
//! vertex per twin class (vertices whose transposition is an automorphism).

use std::collections::BTreeMap;

use crate::multigraph::Multigraph;

/// Canonical byte-comparable signature of a multigraph up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u64>);

impl CanonicalForm {
    /// `n` as 8 little-endian bytes, then every multiplicity likewise.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_le_bytes()).collect()
    }
}

/// A canonical form together with the labeling that produces it.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `order[k]` is the original vertex placed at canonical position `k`.
    pub order: Vec<usize>,
}

impl Canonical {
    /// The canonically relabeled multigraph.
    pub fn graph(&self, g: &Multigraph) -> Multigraph {
        let mut perm = vec![0; self.order.len()];
        for (pos, &v) in self.order.iter().enumerate() {
            perm[v] = pos;
        }
        g.relabel(&perm).expect("order is a permutation")
    }
}

/// A colour with the sorted multiset of (neighbour colour, multiplicity).
type Signature = (usize, Vec<(usize, u64)>);

fn refine_colours(g: &Multigraph) -> Vec<usize> {
    let n = g.n();
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u64)> =
                    (0..n).filter(|&u| u != v).map(|u| (colour[u], g.w(u, v))).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&Signature, usize> = {
            let mut m = BTreeMap::new();
            for s in &sigs {
                m.insert(s, 0);
            }
            for (i, val) in m.values_mut().enumerate() {
                *val = i;
            }
            m
        };
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let next_classes = ranks.len();
        colour = next;
        if next_classes == classes {
            return colour;
        }
        classes = next_classes;
    }
}

fn twin_classes(g: &Multigraph) -> Vec<usize> {
    let n = g.n();
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        if class[v] != v {
            continue;
        }
        for (u, c) in class.iter_mut().enumerate().skip(v + 1) {
            if *c == u && (0..n).all(|x| x == u || x == v || g.w(u, x) == g.w(v, x)) {
                *c = v;
            }
        }
    }
    class
}

struct Search<'a> {
    g: &'a Multigraph,
    colour: Vec<usize>,
    twin: Vec<usize>,
    order: Vec<usize>,
    placed: Vec<bool>,
    seq: Vec<u64>,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    /// `Less`/`Equal`/`Greater` of the current prefix against the best sequence.
    fn compare_prefix(&self) -> std::cmp::Ordering {
        match &self.best {
            None => std::cmp::Ordering::Less,
            Some((b, _)) => self.seq.as_slice().cmp(&b[..self.seq.len()]),
        }
    }

    fn run(&mut self) {
        let n = self.g.n();
        let k = self.order.len();
        if k == n {
            if self.compare_prefix() == std::cmp::Ordering::Less {
                self.best = Some((self.seq.clone(), self.order.clone()));
            }
            return;
        }
        let min_colour = (0..n).filter(|&v| !self.placed[v]).map(|v| self.colour[v]).min().unwrap();
        let mut best_block: Option<Vec<u64>> = None;
        let mut cands: Vec<usize> = Vec::new();
        for v in (0..n).filter(|&v| !self.placed[v] && self.colour[v] == min_colour) {
            let block: Vec<u64> = self.order.iter().map(|&p| self.g.w(p, v)).collect();
            match best_block.as_ref().map(|b| block.cmp(b)) {
                None | Some(std::cmp::Ordering::Less) => {
                    best_block = Some(block);
                    cands.clear();
                    cands.push(v);
                }
                Some(std::cmp::Ordering::Equal) => cands.push(v),
                Some(std::cmp::Ordering::Greater) => {}
            }
        }
        let base = self.seq.len();
        self.seq.extend_from_slice(&best_block.unwrap());
        let mut tried_twins: Vec<usize> = Vec::new();
        for v in cands {
            // re-checked per candidate: a sibling may have lowered the best
            if self.compare_prefix() == std::cmp::Ordering::Greater {
                break;
            }
            if tried_twins.contains(&self.twin[v]) {
                continue;
            }
            tried_twins.push(self.twin[v]);
            self.placed[v] = true;
            self.order.push(v);
            self.run();
            self.order.pop();
            self.placed[v] = false;
        }
        self.seq.truncate(base);
    }
}

/// Computes the canonical form and labeling of `g`.
pub fn canonicalize(g: &Multigraph) -> Canonical {
    let n = g.n();
    let colour = refine_colours(g);
    let twin = twin_classes(g);
    let mut s = Search {
        g,
        colour,
        twin,
        order: Vec::with_capacity(n),
        placed: vec![false; n],
        seq: Vec::with_capacity(g.weights().len()),
        best: None,
    };
    s.run();
    let (seq, order) = s.best.unwrap_or_default();
    let mut colours: Vec<u64> = order.iter().map(|&v| s.colour[v] as u64).collect();
    let mut form = Vec::with_capacity(1 + n + seq.len());
    form.push(n as u64);
    form.append(&mut colours);
    form.extend(seq);
    Canonical { form: CanonicalForm(form), order }
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    canonicalize(g).form
}

pub fn is_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
    g.n() == h.n() && canonical_form(g) == canonical_form(h)
}
