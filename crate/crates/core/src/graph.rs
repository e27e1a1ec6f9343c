//! Simple digraphs stored as row bitsets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};

/// A vertex of a [`Digraph`]: a dense index in `0..n`.
pub type Vertex = usize;

/// An arrow `(tail, head)`.
pub type Arrow = (Vertex, Vertex);

/// A simple digraph of order `n >= 1` on the vertices `0..n`.
///
/// Row `i` is a bitset whose bit `j` is set iff the arrow `(i, j)` is
/// present. Loops never occur. Values are immutable from the point of view
/// of the pure operations ([`Digraph::add_arrow`], [`Digraph::symmetric_closure`]
/// and friends); the `insert`/`delete` methods exist for builders.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Digraph {
    /// The arrowless digraph of order `n`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("a digraph needs at least one vertex"));
        }
        Ok(Self::empty(n))
    }

    pub(crate) fn empty(n: usize) -> Self {
        debug_assert!(n >= 1);
        let words = bits::words_for(n);
        Digraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    /// Builds a digraph from an arrow list. Duplicates are ignored.
    pub fn from_arrows<I>(n: usize, arrows: I) -> Result<Self>
    where
        I: IntoIterator<Item = Arrow>,
    {
        let mut g = Self::new(n)?;
        for (u, v) in arrows {
            g.insert(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn arrow_count(&self) -> usize {
        bits::count(&self.rows)
    }

    /// Out-neighbourhood of `u` as a bitset slice.
    #[inline]
    pub fn row(&self, u: Vertex) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    fn row_mut(&mut self, u: Vertex) -> &mut [u64] {
        &mut self.rows[u * self.words..(u + 1) * self.words]
    }

    /// Number of 64-bit words per row.
    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// `true` iff `(u, v)` is an arrow. Out-of-range vertices are never adjacent.
    #[inline]
    pub fn has_arrow(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && bits::get(self.row(u), v)
    }

    fn check_arrow(&self, u: Vertex, v: Vertex) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::arg(format!(
                "arrow ({u},{v}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::arg(format!("loop ({u},{u}) is not allowed")));
        }
        Ok(())
    }

    /// Returns a copy of `self` with the arrow `(u, v)` present.
    pub fn add_arrow(&self, u: Vertex, v: Vertex) -> Result<Digraph> {
        let mut g = self.clone();
        g.insert(u, v)?;
        Ok(g)
    }

    /// Returns a copy of `self` without the arrow `(u, v)`.
    pub fn remove_arrow(&self, u: Vertex, v: Vertex) -> Result<Digraph> {
        let mut g = self.clone();
        g.delete(u, v)?;
        Ok(g)
    }

    /// Sets the arrow in place; returns whether it was newly added.
    pub fn insert(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_arrow(u, v)?;
        let fresh = !bits::get(self.row(u), v);
        bits::set(self.row_mut(u), v);
        Ok(fresh)
    }

    /// Clears the arrow in place; returns whether it was present.
    pub fn delete(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_arrow(u, v)?;
        let had = bits::get(self.row(u), v);
        bits::clear(self.row_mut(u), v);
        Ok(had)
    }

    #[inline]
    pub(crate) fn set(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v && u < self.n && v < self.n);
        bits::set(self.row_mut(u), v);
    }

    #[inline]
    pub(crate) fn unset(&mut self, u: Vertex, v: Vertex) {
        bits::clear(self.row_mut(u), v);
    }

    /// All arrows in lexicographic `(tail, head)` order.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.n).flat_map(move |u| bits::ones(self.row(u)).map(move |v| (u, v)))
    }

    pub fn out_neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        bits::ones(self.row(u))
    }

    pub fn in_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&u| bits::get(self.row(u), v))
    }

    pub fn out_degree(&self, u: Vertex) -> usize {
        bits::count(self.row(u))
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        (0..self.n).filter(|&u| bits::get(self.row(u), v)).count()
    }

    pub fn transpose(&self) -> Digraph {
        let mut t = Digraph::empty(self.n);
        for (u, v) in self.arrows() {
            t.set(v, u);
        }
        t
    }

    /// The symmetrisation: `(i, j)` is an arrow iff `(i, j)` or `(j, i)` is.
    pub fn symmetric_closure(&self) -> Digraph {
        let mut s = self.clone();
        for (u, v) in self.arrows() {
            s.set(v, u);
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        self.arrows().all(|(u, v)| self.has_arrow(v, u))
    }

    /// Exactly one arrow between every unordered pair of distinct vertices.
    pub fn is_tournament(&self) -> bool {
        (0..self.n).all(|u| ((u + 1)..self.n).all(|v| self.has_arrow(u, v) != self.has_arrow(v, u)))
    }

    /// Vertices reachable from `s` by directed paths (including `s`).
    pub fn reachable_from(&self, s: Vertex) -> VertexSet {
        let mut seen = vec![0u64; self.words];
        let mut frontier = vec![0u64; self.words];
        bits::set(&mut seen, s);
        bits::set(&mut frontier, s);
        let mut next = vec![0u64; self.words];
        loop {
            next.iter_mut().for_each(|w| *w = 0);
            for u in bits::ones(&frontier) {
                for (x, r) in next.iter_mut().zip(self.row(u)) {
                    *x |= r;
                }
            }
            let mut any = false;
            for ((x, s), f) in next.iter_mut().zip(seen.iter_mut()).zip(frontier.iter_mut()) {
                *x &= !*s;
                *s |= *x;
                *f = *x;
                any |= *x != 0;
            }
            if !any {
                break;
            }
        }
        VertexSet {
            n: self.n,
            words: seen,
        }
    }

    /// Every ordered pair is joined by a directed path. A single vertex is
    /// strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        self.reachable_from(0).len() == self.n && self.transpose().reachable_from(0).len() == self.n
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[Vertex]) -> Result<Digraph> {
        if perm.len() != self.n {
            return Err(Error::arg("permutation length differs from the order"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::arg("not a permutation of the vertex set"));
            }
        }
        let mut h = Digraph::empty(self.n);
        for (u, v) in self.arrows() {
            h.set(perm[u], perm[v]);
        }
        Ok(h)
    }

    /// Subgraph induced by `set`; vertex `set.iter().nth(i)` becomes `i`.
    pub fn induced(&self, set: &VertexSet) -> Result<(Digraph, Vec<Vertex>)> {
        let members: Vec<Vertex> = set.iter().collect();
        if members.is_empty() {
            return Err(Error::arg("induced subgraph of an empty vertex set"));
        }
        let mut h = Digraph::empty(members.len());
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate() {
                if self.has_arrow(u, v) {
                    h.set(i, j);
                }
            }
        }
        Ok((h, members))
    }

    /// Contracts the pair `{u, v}` into a single vertex.
    ///
    /// The merged vertex keeps the label `min(u, v)` and inherits the union
    /// of both neighbourhoods; loops and parallel duplicates are dropped.
    /// Labels above `max(u, v)` shift down by one. Returns the contracted
    /// graph and the old-to-new label map.
    pub fn contract(&self, u: Vertex, v: Vertex) -> Result<(Digraph, Vec<Vertex>)> {
        self.check_arrow(u, v)?;
        if self.n < 2 {
            return Err(Error::arg("cannot contract in a graph of order 1"));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let map: Vec<Vertex> = (0..self.n)
            .map(|x| match x {
                x if x == gone => keep,
                x if x > gone => x - 1,
                x => x,
            })
            .collect();
        let mut h = Digraph::empty(self.n - 1);
        for (a, b) in self.arrows() {
            let (ma, mb) = (map[a], map[b]);
            if ma != mb {
                h.set(ma, mb);
            }
        }
        Ok((h, map))
    }

    /// Appends a vertex `n` with the given in- and out-neighbourhoods.
    pub fn extend(&self, preds: &[Vertex], succs: &[Vertex]) -> Result<Digraph> {
        let mut h = Digraph::empty(self.n + 1);
        for (a, b) in self.arrows() {
            h.set(a, b);
        }
        let w = self.n;
        for &p in preds {
            h.insert(p, w)?;
        }
        for &s in succs {
            h.insert(w, s)?;
        }
        Ok(h)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arrows=[", self.n)?;
        for (i, (u, v)) in self.arrows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "])")
    }
}

/// A subset of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; bits::words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            n,
            words: bits::full(n),
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(n: usize, vs: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in vs {
            if v >= n {
                return Err(Error::arg(format!("vertex {v} outside 0..{n}")));
            }
            bits::set(&mut s.words, v);
        }
        Ok(s)
    }

    pub fn singleton(n: usize, v: Vertex) -> Self {
        let mut s = Self::empty(n);
        bits::set(&mut s.words, v);
        s
    }

    /// Size of the host vertex range.
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.n && bits::get(&self.words, v)
    }

    pub fn insert(&mut self, v: Vertex) {
        assert!(v < self.n, "vertex {v} outside 0..{}", self.n);
        bits::set(&mut self.words, v);
    }

    pub fn remove(&mut self, v: Vertex) {
        if v < self.n {
            bits::clear(&mut self.words, v);
        }
    }

    pub fn len(&self) -> usize {
        bits::count(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        bits::ones(&self.words)
    }

    pub fn complement(&self) -> Self {
        let mut c = VertexSet::full(self.n);
        for (a, b) in c.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        c
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> Self {
        let mut u = self.clone();
        for (a, b) in u.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        u
    }

    pub fn intersection(&self, other: &VertexSet) -> Self {
        let mut u = self.clone();
        for (a, b) in u.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        u
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        Digraph::from_arrows(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn add_remove_has() {
        let g = Digraph::new(2).unwrap();
        let h = g.add_arrow(0, 1).unwrap();
        assert!(h.has_arrow(0, 1));
        assert!(!h.has_arrow(1, 0));
        assert_eq!(h.arrow_count(), 1);
        assert_eq!(g.arrow_count(), 0, "input must not be mutated");
        assert_eq!(h.add_arrow(0, 1).unwrap(), h);
        assert!(!h.remove_arrow(0, 1).unwrap().has_arrow(0, 1));
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        let g = Digraph::new(3).unwrap();
        assert!(matches!(g.add_arrow(1, 1), Err(Error::Argument(_))));
        assert!(matches!(g.add_arrow(0, 3), Err(Error::Argument(_))));
        assert!(matches!(g.remove_arrow(5, 0), Err(Error::Argument(_))));
        assert!(Digraph::new(0).is_err());
    }

    #[test]
    fn closure_of_cycle() {
        let s = cycle(3).symmetric_closure();
        assert_eq!(s.arrow_count(), 6);
        assert!(s.is_symmetric());
        assert_eq!(s.symmetric_closure(), s);
    }

    #[test]
    fn strong_connectivity() {
        assert!(cycle(5).is_strongly_connected());
        let p4 = Digraph::from_arrows(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!p4.is_strongly_connected());
        assert!(Digraph::new(1).unwrap().is_strongly_connected());
        assert!(!Digraph::new(2).unwrap().is_strongly_connected());
    }

    #[test]
    fn wide_graphs_use_several_words() {
        let g = cycle(150);
        assert_eq!(g.words_per_row(), 3);
        assert!(g.is_strongly_connected());
        assert!(!g.remove_arrow(149, 0).unwrap().is_strongly_connected());
    }

    #[test]
    fn contraction_drops_loops_and_duplicates() {
        // 0->1, 1->2, 0->2, 2->0: contract (0,1)
        let g = Digraph::from_arrows(3, [(0, 1), (1, 2), (0, 2), (2, 0)]).unwrap();
        let (h, map) = g.contract(0, 1).unwrap();
        assert_eq!(map, vec![0, 0, 1]);
        assert_eq!(h.order(), 2);
        assert_eq!(h.arrows().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn vertex_set_ops() {
        let a = VertexSet::from_vertices(5, [0, 2]).unwrap();
        let c = a.complement();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert!(a.is_disjoint(&c));
        assert_eq!(a.union(&c), VertexSet::full(5));
        assert!(VertexSet::from_vertices(3, [3]).is_err());
    }
}
