//! Dense labeled multigraphs.
//!
//! A [`Multigraph`] on `n` vertices stores one nonnegative multiplicity per
//! unordered pair `{u, v}`, `u < v`, in lexicographic pair order
//! `(0,1), (0,2), .., (0,n-1), (1,2), ..`. Values are immutable once built;
//! every operation returns a fresh value.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// Number of unordered pairs on `n` vertices.
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of pair `{u, v}` (`u < v < n`) in lexicographic pair order.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// All pairs of `[n]` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multigraph {
    n: usize,
    w: Vec<u64>,
}

/// The set of pairs on which two labeled multigraphs disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditDistanceReport {
    pub differing_pairs: Vec<(usize, usize)>,
    pub count: usize,
}

/// `(e_a, p_a, m_a)`: pairs at exactly, above and below multiplicity `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityProfile {
    pub equal: usize,
    pub plus: usize,
    pub minus: usize,
}

impl Multigraph {
    /// The multigraph with every multiplicity equal to `value`.
    pub fn constant(n: usize, value: u64) -> Self {
        Multigraph { n, w: vec![value; pair_count(n)] }
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, 0)
    }

    /// Builds from weights given in lexicographic pair order.
    pub fn from_weights(n: usize, w: Vec<u64>) -> Result<Self> {
        if w.len() != pair_count(n) {
            return Err(Error::SizeMismatch(w.len(), pair_count(n)));
        }
        Ok(Multigraph { n, w })
    }

    /// Builds from a weight function on pairs.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        Multigraph { n, w: pairs(n).map(|(u, v)| f(u, v)).collect() }
    }

    /// Returns a copy with the listed pair multiplicities replaced.
    pub fn with_edges(&self, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut w = self.w.clone();
        for &(u, v, m) in edges {
            let (u, v) = self.ordered_pair(u, v)?;
            w[pair_index(self.n, u, v)] = m;
        }
        Ok(Multigraph { n: self.n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Multiplicities in lexicographic pair order.
    pub fn weights(&self) -> &[u64] {
        &self.w
    }

    fn ordered_pair(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok((u, v)),
            std::cmp::Ordering::Greater => Ok((v, u)),
            std::cmp::Ordering::Equal => Err(Error::RepeatedVertex(u)),
        }
    }

    /// Multiplicity of `{u, v}`; the order of the endpoints does not matter.
    ///
    /// Panics on out-of-range or equal endpoints.
    #[inline]
    pub fn w(&self, u: usize, v: usize) -> u64 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        assert!(a != b && b < self.n, "invalid pair ({u}, {v}) for n = {}", self.n);
        self.w[pair_index(self.n, a, b)]
    }

    pub fn try_w(&self, u: usize, v: usize) -> Result<u64> {
        let (a, b) = self.ordered_pair(u, v)?;
        Ok(self.w[pair_index(self.n, a, b)])
    }

    /// `S(G)`.
    pub fn sum_total(&self) -> u64 {
        self.w.iter().sum()
    }

    /// `P(G)`, exact.
    pub fn product_total(&self) -> BigUint {
        product_of(self.w.iter().copied())
    }

    fn check_subset(&self, x: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.n];
        for &v in x {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        Ok(())
    }

    fn inner_pairs<'a>(&'a self, x: &'a [usize]) -> impl Iterator<Item = u64> + 'a {
        x.iter()
            .enumerate()
            .flat_map(move |(i, &u)| x[i + 1..].iter().map(move |&v| self.w(u, v)))
    }

    /// `S(X)`: the sum over pairs inside `X`.
    pub fn restricted_sum(&self, x: &[usize]) -> Result<u64> {
        self.check_subset(x)?;
        Ok(self.inner_pairs(x).sum())
    }

    /// `P(X)`: the product over pairs inside `X` (empty product is 1).
    pub fn restricted_product(&self, x: &[usize]) -> Result<BigUint> {
        self.check_subset(x)?;
        Ok(product_of(self.inner_pairs(x)))
    }

    fn check_star(&self, z: usize, y: &[usize]) -> Result<()> {
        self.check_subset(y)?;
        if z >= self.n {
            return Err(Error::VertexOutOfRange { vertex: z, n: self.n });
        }
        if y.contains(&z) {
            return Err(Error::CentreInSet(z));
        }
        Ok(())
    }

    /// `S_z(Y) = sum_{y in Y} w(yz)`.
    pub fn star_sum(&self, z: usize, y: &[usize]) -> Result<u64> {
        self.check_star(z, y)?;
        Ok(y.iter().map(|&v| self.w(z, v)).sum())
    }

    /// `P_z(Y) = prod_{y in Y} w(yz)`.
    pub fn star_product(&self, z: usize, y: &[usize]) -> Result<BigUint> {
        self.check_star(z, y)?;
        Ok(product_of(y.iter().map(|&v| self.w(z, v))))
    }

    /// `P(X, Y)` over all cross pairs of two disjoint sets.
    pub fn cross_product(&self, x: &[usize], y: &[usize]) -> Result<BigUint> {
        self.check_subset(x)?;
        self.check_subset(y)?;
        if let Some(&v) = x.iter().find(|v| y.contains(v)) {
            return Err(Error::OverlappingSets(v));
        }
        Ok(product_of(
            x.iter().flat_map(|&u| y.iter().map(move |&v| self.w(u, v))),
        ))
    }

    /// `G[X]`, relabeled `0..|X|` in the order the vertices are listed.
    pub fn induced(&self, x: &[usize]) -> Result<Multigraph> {
        if x.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.check_subset(x)?;
        Ok(Multigraph::from_fn(x.len(), |i, j| self.w(x[i], x[j])))
    }

    /// `G^+`: every multiplicity raised by one.
    pub fn plus_one(&self) -> Multigraph {
        Multigraph { n: self.n, w: self.w.iter().map(|&m| m + 1).collect() }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Multigraph> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(perm.len(), self.n));
        }
        self.check_subset(perm)?;
        let mut w = vec![0; self.w.len()];
        for (u, v) in pairs(self.n) {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            w[pair_index(self.n, a, b)] = self.w(u, v);
        }
        Ok(Multigraph { n: self.n, w })
    }

    fn check_same_n(&self, other: &Multigraph) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Whether every multiplicity of `self` is at most the matching one of `other`.
    pub fn is_submultigraph(&self, other: &Multigraph) -> Result<bool> {
        self.check_same_n(other)?;
        Ok(self.w.iter().zip(&other.w).all(|(a, b)| a <= b))
    }

    pub fn edit_distance(&self, other: &Multigraph) -> Result<EditDistanceReport> {
        self.check_same_n(other)?;
        let differing_pairs: Vec<_> = pairs(self.n)
            .zip(self.w.iter().zip(&other.w))
            .filter(|(_, (a, b))| a != b)
            .map(|(p, _)| p)
            .collect();
        Ok(EditDistanceReport { count: differing_pairs.len(), differing_pairs })
    }

    /// `|Delta(G, G')| <= delta * n^2`, compared exactly.
    pub fn is_delta_close(&self, other: &Multigraph, delta: Fraction) -> Result<bool> {
        let count = self.edit_distance(other)?.count as u128;
        let n2 = (self.n as u128) * (self.n as u128);
        Ok(count * delta.den() as u128 <= delta.num() as u128 * n2)
    }

    /// `mu(G)`.
    pub fn max_multiplicity(&self) -> Result<u64> {
        self.w.iter().copied().max().ok_or(Error::NoPairs(self.n))
    }

    pub fn multiplicity_profile(&self, a: u64) -> MultiplicityProfile {
        let mut p = MultiplicityProfile { equal: 0, plus: 0, minus: 0 };
        for &m in &self.w {
            match m.cmp(&a) {
                std::cmp::Ordering::Equal => p.equal += 1,
                std::cmp::Ordering::Greater => p.plus += 1,
                std::cmp::Ordering::Less => p.minus += 1,
            }
        }
        p
    }

    /// Pairs carrying multiplicity exactly `a`.
    pub fn pairs_with(&self, a: u64) -> BTreeSet<(usize, usize)> {
        pairs(self.n).zip(&self.w).filter(|(_, &m)| m == a).map(|(p, _)| p).collect()
    }
}

pub(crate) fn product_of(it: impl Iterator<Item = u64>) -> BigUint {
    let mut acc = BigUint::one();
    let mut word: u64 = 1;
    for m in it {
        if m == 0 {
            return BigUint::zero();
        }
        match word.checked_mul(m) {
            Some(v) => word = v,
            None => {
                acc *= word;
                word = m;
            }
        }
    }
    acc * word
}
