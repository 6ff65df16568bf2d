//! Builders for the extremal families and their labeled enumeration.
//!
//! * `U:a`       the constant multigraph with every multiplicity `a`;
//! * `Ustar:s,a` blocks of size `s` (plus a remainder block of size `n mod s`),
//!   each carrying a star of multiplicity `a + 1`, over a constant-`a` base;
//! * `T:p,a`     an equipartition into `p` parts with multiplicity `a - 1`
//!   inside parts and `a` across.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::simple::SimpleGraph;

/// Largest `n` for which [`enumerate_family`] lists members.
pub const MAX_ENUMERATION_N: usize = 8;
const MAX_FAMILY_MEMBERS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PartitionKind {
    /// Blocks of size `block` except one remainder of size `n mod block`.
    StarBlocks { block: usize },
    Equipartition,
}

/// An ordered list of disjoint blocks covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    blocks: Vec<Vec<usize>>,
    kind: PartitionKind,
}

fn check_cover(n: usize, blocks: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    for b in blocks {
        for &v in b {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPartition(format!("vertex {v} lies in two blocks")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPartition(format!("vertex {v} is in no block")));
    }
    Ok(())
}

impl BlockPartition {
    /// Validates a star-block partition of `0..n` with block size `block`.
    /// Empty blocks are dropped.
    pub fn star_blocks(n: usize, block: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if block == 0 {
            return Err(Error::InvalidPartition("block size must be positive".into()));
        }
        let blocks: Vec<_> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        check_cover(n, &blocks)?;
        let full = blocks.iter().filter(|b| b.len() == block).count();
        let rest: Vec<_> = blocks.iter().filter(|b| b.len() != block).collect();
        let rem = n % block;
        let ok = full == n / block
            && match rest.as_slice() {
                [] => rem == 0,
                [r] => r.len() == rem,
                _ => false,
            };
        if !ok {
            return Err(Error::InvalidPartition(format!(
                "need {} blocks of size {block} and one remainder of size {rem}",
                n / block
            )));
        }
        Ok(BlockPartition { blocks, kind: PartitionKind::StarBlocks { block } })
    }

    /// Validates an equipartition of `0..n` into exactly `parts` blocks
    /// (blocks may be empty only when `parts > n`).
    pub fn equipartition(n: usize, parts: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if parts == 0 || blocks.len() != parts {
            return Err(Error::InvalidPartition(format!(
                "expected {parts} blocks, got {}",
                blocks.len()
            )));
        }
        check_cover(n, &blocks)?;
        let lo = blocks.iter().map(Vec::len).min().unwrap_or(0);
        let hi = blocks.iter().map(Vec::len).max().unwrap_or(0);
        if hi - lo > 1 {
            return Err(Error::InvalidPartition(format!(
                "block sizes {lo} and {hi} differ by more than one"
            )));
        }
        Ok(BlockPartition { blocks, kind: PartitionKind::Equipartition })
    }

    /// Consecutive blocks `[0, block)`, `[block, 2 block)`, .. with the
    /// remainder last.
    pub fn default_star_blocks(n: usize, block: usize) -> Result<Self> {
        if block == 0 {
            return Err(Error::InvalidPartition("block size must be positive".into()));
        }
        let blocks = (0..n).step_by(block).map(|start| (start..(start + block).min(n)).collect()).collect();
        Self::star_blocks(n, block, blocks)
    }

    /// Larger blocks first, vertices assigned in ascending order.
    pub fn default_equipartition(n: usize, parts: usize) -> Result<Self> {
        if parts == 0 {
            return Err(Error::InvalidPartition("need at least one part".into()));
        }
        let mut blocks = Vec::with_capacity(parts);
        let mut next = 0;
        for i in 0..parts {
            let size = n / parts + usize::from(i < n % parts);
            blocks.push((next..next + size).collect());
            next += size;
        }
        Self::equipartition(n, parts, blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.n()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                of[v] = i;
            }
        }
        of
    }
}

/// `U_a(n)`.
pub fn build_uniform(n: usize, a: u64) -> Multigraph {
    Multigraph::constant(n, a)
}

/// A member of `U_{s,a}(n)`; `centres[i]` is the star centre of block `i`.
pub fn build_star_blocks(
    n: usize,
    s: usize,
    a: u64,
    partition: &BlockPartition,
    centres: &[usize],
) -> Result<Multigraph> {
    if a < 1 {
        return Err(Error::Infeasible("star-block families need a >= 1".into()));
    }
    if partition.kind != (PartitionKind::StarBlocks { block: s }) || partition.n() != n {
        return Err(Error::InvalidPartition(format!(
            "not a star-block partition of {n} vertices with block size {s}"
        )));
    }
    if centres.len() != partition.blocks.len() {
        return Err(Error::InvalidPartition(format!(
            "{} centres for {} blocks",
            centres.len(),
            partition.blocks.len()
        )));
    }
    let mut edges = Vec::new();
    for (b, &c) in partition.blocks.iter().zip(centres) {
        if !b.contains(&c) {
            return Err(Error::InvalidPartition(format!("centre {c} is outside its block")));
        }
        edges.extend(b.iter().filter(|&&v| v != c).map(|&v| (c, v, a + 1)));
    }
    Multigraph::constant(n, a).with_edges(&edges)
}

/// Whether `T_{p,a}` may be built with `a = 1` (zero inside parts).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TuranBase {
    #[default]
    Strict,
    AllowUnit,
}

/// A member of `T_{parts,a}(n)`.
pub fn build_turan_multigraph(
    n: usize,
    parts: usize,
    a: u64,
    partition: &BlockPartition,
    base: TuranBase,
) -> Result<Multigraph> {
    let min_a = if base == TuranBase::AllowUnit { 1 } else { 2 };
    if a < min_a {
        return Err(Error::Infeasible(format!("Turan multigraphs need a >= {min_a}, got {a}")));
    }
    if partition.kind != PartitionKind::Equipartition
        || partition.blocks.len() != parts
        || partition.n() != n
    {
        return Err(Error::InvalidPartition(format!(
            "not an equipartition of {n} vertices into {parts} parts"
        )));
    }
    let of = partition.block_of();
    Ok(Multigraph::from_fn(n, |u, v| if of[u] == of[v] { a - 1 } else { a }))
}

/// `t_parts(n)`, the edge count of the Turan graph.
pub fn turan_edge_count(parts: usize, n: usize) -> u64 {
    assert!(parts >= 1, "Turan graphs need at least one part");
    let (n64, p) = (n as u64, parts as u64);
    let (small, big) = (n64 / p, n64 / p + 1);
    let bigs = n64 % p;
    let inner = bigs * big * (big - 1) / 2 + (p - bigs) * small * small.saturating_sub(1) / 2;
    n64 * n64.saturating_sub(1) / 2 - inner
}

/// A family addressed by `U:a`, `Ustar:s,a` or `T:parts,a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Uniform { a: u64 },
    StarBlocks { s: usize, a: u64 },
    Turan { parts: usize, a: u64 },
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown family {text:?}; use U:a, Ustar:s,a or T:parts,a"));
        let (kind, args) = text.split_once(':').ok_or_else(bad)?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match (kind, nums.as_slice()) {
            ("U", &[a]) => Ok(Family::Uniform { a }),
            ("Ustar", &[s, a]) if s >= 1 => Ok(Family::StarBlocks { s: s as usize, a }),
            ("T", &[p, a]) if p >= 1 => Ok(Family::Turan { parts: p as usize, a }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Uniform { a } => write!(f, "U:{a}"),
            Family::StarBlocks { s, a } => write!(f, "Ustar:{s},{a}"),
            Family::Turan { parts, a } => write!(f, "T:{parts},{a}"),
        }
    }
}

impl Family {
    /// The deterministic default member (see the `default_*` partitions).
    pub fn build(&self, n: usize) -> Result<Multigraph> {
        match *self {
            Family::Uniform { a } => Ok(build_uniform(n, a)),
            Family::StarBlocks { s, a } => {
                let p = BlockPartition::default_star_blocks(n, s)?;
                let centres: Vec<usize> = p.blocks.iter().map(|b| b[0]).collect();
                build_star_blocks(n, s, a, &p, &centres)
            }
            Family::Turan { parts, a } => {
                let p = BlockPartition::default_equipartition(n, parts)?;
                build_turan_multigraph(n, parts, a, &p, TuranBase::Strict)
            }
        }
    }
}

/// Set partitions of `0..n` whose block sizes match `sizes` (a multiset given
/// as `(size, count)` pairs), each listed once.
fn partitions_with_sizes(n: usize, sizes: &mut [(usize, usize)], limit: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    fn rec(
        free: &mut Vec<usize>,
        sizes: &mut [(usize, usize)],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        limit: usize,
    ) -> Result<()> {
        let Some(&first) = free.first() else {
            if sizes.iter().all(|&(_, c)| c == 0) {
                if out.len() >= limit {
                    return Err(Error::FamilyTooLarge(format!("more than {limit} partitions")));
                }
                out.push(cur.clone());
            }
            return Ok(());
        };
        for k in 0..sizes.len() {
            let (size, count) = sizes[k];
            if count == 0 || size == 0 || size > free.len() {
                continue;
            }
            sizes[k].1 -= 1;
            let rest: Vec<usize> = free[1..].to_vec();
            for others in crate::constraints::subsets(rest.len(), size - 1) {
                let mut block = vec![first];
                block.extend(others.iter().map(|&i| rest[i]));
                let mut remaining: Vec<usize> = free.iter().copied().filter(|v| !block.contains(v)).collect();
                std::mem::swap(free, &mut remaining);
                cur.push(block);
                let r = rec(free, sizes, cur, out, limit);
                cur.pop();
                std::mem::swap(free, &mut remaining);
                r?;
            }
            sizes[k].1 += 1;
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), sizes, &mut Vec::new(), &mut out, limit)?;
    Ok(out)
}

/// Every labeled member of a family on `n <= 8` vertices, without duplicates,
/// in ascending order of weight sequence.
pub fn enumerate_family(n: usize, family: Family) -> Result<Vec<Multigraph>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::FamilyTooLarge(format!(
            "n = {n} exceeds the enumeration limit {MAX_ENUMERATION_N}"
        )));
    }
    let mut members = BTreeSet::new();
    match family {
        Family::Uniform { a } => {
            members.insert(build_uniform(n, a));
        }
        Family::StarBlocks { s, a } => {
            let mut sizes = vec![(s, n / s), (n % s, usize::from(!n.is_multiple_of(s)))];
            for blocks in partitions_with_sizes(n, &mut sizes, MAX_FAMILY_MEMBERS)? {
                let p = BlockPartition::star_blocks(n, s, blocks)?;
                let mut centres = vec![0usize; p.blocks.len()];
                loop {
                    let chosen: Vec<usize> = p.blocks.iter().zip(&centres).map(|(b, &i)| b[i]).collect();
                    members.insert(build_star_blocks(n, s, a, &p, &chosen)?);
                    if members.len() > MAX_FAMILY_MEMBERS {
                        return Err(Error::FamilyTooLarge(format!("more than {MAX_FAMILY_MEMBERS} members")));
                    }
                    // odometer over centre choices
                    let mut i = 0;
                    while i < centres.len() {
                        centres[i] += 1;
                        if centres[i] < p.blocks[i].len() {
                            break;
                        }
                        centres[i] = 0;
                        i += 1;
                    }
                    if i == centres.len() {
                        break;
                    }
                }
            }
        }
        Family::Turan { parts, a } => {
            let big = n % parts;
            let mut sizes = vec![(n / parts + 1, big), (n / parts, parts - big)];
            let empties = parts.saturating_sub(n);
            for mut blocks in partitions_with_sizes(n, &mut sizes, MAX_FAMILY_MEMBERS)? {
                blocks.extend(std::iter::repeat_with(Vec::new).take(empties));
                let p = BlockPartition::equipartition(n, parts, blocks)?;
                members.insert(build_turan_multigraph(n, parts, a, &p, TuranBase::Strict)?);
            }
        }
    }
    Ok(members.into_iter().collect())
}

/// Attaches `i` new pendant vertices to vertex 0 of a `{C3, C4}`-free graph.
pub fn pendant_extend(h: &SimpleGraph, i: usize) -> Result<SimpleGraph> {
    if !h.is_c3_c4_free() {
        return Err(Error::NotC3C4Free);
    }
    if h.n() == 0 {
        return Err(Error::EmptySubset);
    }
    if h.n() + i > crate::simple::MAX_SIMPLE_N {
        return Err(Error::CapExceeded(format!("{} vertices", h.n() + i)));
    }
    let mut g = h.clone();
    for _ in 0..i {
        g.add_vertex(1);
    }
    Ok(g)
}
