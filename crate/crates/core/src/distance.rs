//! Shortest-path distances and partial transmission sums.

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Vertex, VertexSet};

const UNREACHABLE: u32 = u32::MAX;

/// All-pairs shortest-path lengths, in number of arrows.
///
/// Unreachable pairs are reported as `None` by [`DistanceMatrix::get`]; the
/// storage marker never leaks into arithmetic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> Option<u32> {
        match self.dist[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Distance that must be finite; otherwise a domain error naming the pair.
    #[inline]
    pub fn finite(&self, u: Vertex, v: Vertex) -> Result<u64> {
        self.get(u, v)
            .map(u64::from)
            .ok_or_else(|| Error::domain(format!("vertex {v} is unreachable from vertex {u}")))
    }

    pub fn row(&self, u: Vertex) -> impl Iterator<Item = Option<u32>> + '_ {
        (0..self.n).map(move |v| self.get(u, v))
    }

    pub fn all_finite(&self) -> bool {
        self.dist.iter().all(|&d| d != UNREACHABLE)
    }

    /// Largest finite entry, `None` if some pair is unreachable.
    pub fn max_finite(&self) -> Option<u32> {
        if self.all_finite() {
            self.dist.iter().copied().max()
        } else {
            None
        }
    }

    /// Sum over all ordered pairs; `None` if some pair is unreachable.
    pub fn total(&self) -> Option<u64> {
        if self.all_finite() {
            Some(self.dist.iter().map(|&d| u64::from(d)).sum())
        } else {
            None
        }
    }

    /// `sigma(X, Y)`: sum of `|x, y|` over `x` in `X`, `y` in `Y`, for disjoint sets.
    pub fn sigma_between(&self, xs: &VertexSet, ys: &VertexSet) -> Result<u64> {
        self.check_set(xs)?;
        self.check_set(ys)?;
        if !xs.is_disjoint(ys) {
            return Err(Error::arg("sigma(X, Y) needs disjoint vertex sets"));
        }
        self.sum_pairs(xs, ys)
    }

    /// `sigma(X)`: sum of `|x, y|` over ordered pairs inside `X`.
    pub fn sigma_within(&self, xs: &VertexSet) -> Result<u64> {
        self.check_set(xs)?;
        self.sum_pairs(xs, xs)
    }

    /// `sigma(X, v)`: sum of `|x, v|` over `x` in `X`.
    pub fn sigma_to_vertex(&self, xs: &VertexSet, v: Vertex) -> Result<u64> {
        self.check_set(xs)?;
        self.check_vertex(v)?;
        xs.iter().map(|x| self.finite(x, v)).sum()
    }

    /// `sigma(v, X)`: sum of `|v, x|` over `x` in `X`.
    pub fn sigma_from_vertex(&self, v: Vertex, xs: &VertexSet) -> Result<u64> {
        self.check_set(xs)?;
        self.check_vertex(v)?;
        xs.iter().map(|x| self.finite(v, x)).sum()
    }

    fn sum_pairs(&self, xs: &VertexSet, ys: &VertexSet) -> Result<u64> {
        let mut s = 0;
        for x in xs.iter() {
            for y in ys.iter() {
                s += self.finite(x, y)?;
            }
        }
        Ok(s)
    }

    fn check_set(&self, xs: &VertexSet) -> Result<()> {
        if xs.universe() != self.n {
            return Err(Error::arg(format!(
                "vertex set over 0..{} used with a matrix of order {}",
                xs.universe(),
                self.n
            )));
        }
        Ok(())
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            return Err(Error::arg(format!("vertex {v} outside 0..{}", self.n)));
        }
        Ok(())
    }
}

/// Breadth-first distances from `s`, written into `out` (length `n`).
/// Unreachable vertices receive the storage marker.
fn bfs_from(g: &Digraph, s: Vertex, out: &mut [u32], scratch: &mut BfsScratch) {
    out.iter_mut().for_each(|d| *d = UNREACHABLE);
    let BfsScratch { seen, frontier, next } = scratch;
    seen.iter_mut().for_each(|w| *w = 0);
    frontier.iter_mut().for_each(|w| *w = 0);
    bits::set(seen, s);
    bits::set(frontier, s);
    out[s] = 0;
    let mut level = 0;
    loop {
        level += 1;
        next.iter_mut().for_each(|w| *w = 0);
        for u in bits::ones(frontier) {
            for (x, r) in next.iter_mut().zip(g.row(u)) {
                *x |= r;
            }
        }
        let mut any = false;
        for ((x, sn), f) in next.iter_mut().zip(seen.iter_mut()).zip(frontier.iter_mut()) {
            *x &= !*sn;
            *sn |= *x;
            *f = *x;
            any |= *x != 0;
        }
        if !any {
            break;
        }
        for v in bits::ones(frontier) {
            out[v] = level;
        }
    }
}

struct BfsScratch {
    seen: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
}

impl BfsScratch {
    fn new(words: usize) -> Self {
        BfsScratch {
            seen: vec![0; words],
            frontier: vec![0; words],
            next: vec![0; words],
        }
    }
}

/// Exact shortest-path lengths by one bitset breadth-first search per source.
pub fn all_pairs_distances(g: &Digraph) -> DistanceMatrix {
    let n = g.order();
    let mut dist = vec![UNREACHABLE; n * n];
    let mut scratch = BfsScratch::new(g.words_per_row());
    for s in 0..n {
        bfs_from(g, s, &mut dist[s * n..(s + 1) * n], &mut scratch);
    }
    DistanceMatrix { n, dist }
}

/// Sum of all ordered-pair distances, `None` when some pair is unreachable.
///
/// Avoids materialising the matrix; this is the hot path of the searches.
pub fn total_distance(g: &Digraph) -> Option<u64> {
    let n = g.order();
    if n <= 64 {
        return total_distance_small(g);
    }
    let mut row = vec![UNREACHABLE; n];
    let mut scratch = BfsScratch::new(g.words_per_row());
    let mut total = 0u64;
    for s in 0..n {
        bfs_from(g, s, &mut row, &mut scratch);
        for &d in &row {
            if d == UNREACHABLE {
                return None;
            }
            total += u64::from(d);
        }
    }
    Some(total)
}

fn total_distance_small(g: &Digraph) -> Option<u64> {
    let n = g.order();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rows: Vec<u64> = (0..n).map(|u| g.row(u)[0]).collect();
    let mut total = 0u64;
    for s in 0..n {
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut level = 0u64;
        while seen != all {
            level += 1;
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= rows[u];
            }
            next &= !seen;
            if next == 0 {
                return None;
            }
            total += level * u64::from(next.count_ones());
            seen |= next;
            frontier = next;
        }
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Digraph {
        Digraph::from_arrows(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn cycle_rows() {
        let d = all_pairs_distances(&cycle(3));
        for u in 0..3 {
            let row: Vec<_> = d.row(u).map(Option::unwrap).collect();
            assert_eq!(row.iter().sum::<u32>(), 3);
        }
        assert_eq!(d.total(), Some(9));
    }

    #[test]
    fn complete_is_all_ones() {
        let g = Digraph::from_arrows(4, (0..4).flat_map(|u| (0..4).filter(move |&v| v != u).map(move |v| (u, v)))).unwrap();
        let d = all_pairs_distances(&g);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(d.get(u, v), Some(u32::from(u != v)));
            }
        }
    }

    #[test]
    fn unreachable_is_explicit() {
        let g = Digraph::from_arrows(3, [(0, 1), (1, 2)]).unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(d.get(2, 0), None);
        assert_eq!(d.total(), None);
        assert_eq!(total_distance(&g), None);
        let all = VertexSet::full(3);
        let err = d.sigma_within(&all).unwrap_err();
        assert!(matches!(err, Error::Domain(ref m) if m.contains("vertex 0 is unreachable from vertex 1")));
    }

    #[test]
    fn partial_sums() {
        let c3 = cycle(3);
        let d = all_pairs_distances(&c3);
        let all = VertexSet::full(3);
        assert_eq!(d.sigma_within(&all).unwrap(), 9);
        let x = VertexSet::singleton(3, 0);
        let y = VertexSet::singleton(3, 2);
        assert_eq!(d.sigma_between(&x, &y).unwrap(), 2);
        assert!(d.sigma_between(&all, &y).is_err());
        assert_eq!(d.sigma_from_vertex(0, &all).unwrap(), 3);
        assert_eq!(d.sigma_to_vertex(&all, 0).unwrap(), 3);
    }

    #[test]
    fn small_and_wide_paths_agree() {
        let g = cycle(70);
        let expected = all_pairs_distances(&g).total();
        assert_eq!(total_distance(&g), expected);
        assert_eq!(expected, Some(70 * 70 * 69 / 2));
        let g = cycle(40);
        assert_eq!(total_distance(&g), all_pairs_distances(&g).total());
    }
}
