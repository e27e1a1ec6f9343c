//! Isomorphism-free enumeration of small digraphs and tournaments.
//!
//! Classes of order `m` are grown from classes of order `m - 1` by adding
//! one vertex with every possible in- and out-neighbourhood. Deleting any
//! vertex of a digraph leaves some digraph of order `m - 1`, so every class
//! of order `m` arises this way. Children are deduplicated by canonical form;
//! each parent is an independent shard and the shards' sets are unioned.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::iso::{canonical_form, CanonicalForm};

/// Largest order for [`digraph_classes`] and [`strongly_connected_classes`].
pub const DIGRAPH_ENUM_MAX_ORDER: usize = 6;

/// Largest order for the tournament enumerations.
pub const TOURNAMENT_ENUM_MAX_ORDER: usize = 7;

fn check(n: usize, cap: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::arg("order must be at least 1"));
    }
    if n > cap {
        return Err(Error::size(format!("{what} enumeration is limited to order {cap}, got {n}")));
    }
    Ok(())
}

/// `parent` plus a vertex `m - 1` with predecessors `preds` and successors `succs` (bit masks).
fn child(parent: &Digraph, preds: u64, succs: u64) -> Digraph {
    let m = parent.order() + 1;
    let mut g = Digraph::empty(m);
    for (u, v) in parent.arrows() {
        g.set(u, v);
    }
    let w = m - 1;
    for u in 0..w {
        if preds >> u & 1 == 1 {
            g.set(u, w);
        }
        if succs >> u & 1 == 1 {
            g.set(w, u);
        }
    }
    g
}

fn grow<F>(parents: &[CanonicalForm], children_of: F, keep: impl Fn(&Digraph) -> bool + Sync) -> Vec<CanonicalForm>
where
    F: Fn(usize) -> Vec<(u64, u64)> + Sync,
{
    let set = parents
        .par_iter()
        .fold(HashSet::new, |mut acc, cf| {
            let parent = cf.to_digraph();
            for (p, s) in children_of(parent.order()) {
                let g = child(&parent, p, s);
                if keep(&g) {
                    acc.insert(canonical_form(&g).expect("order within limit"));
                }
            }
            acc
        })
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            big.extend(small);
            big
        });
    let mut v: Vec<CanonicalForm> = set.into_iter().collect();
    v.sort_unstable();
    v
}

fn all_pairs(m: usize) -> Vec<(u64, u64)> {
    let full = 1u64 << m;
    (0..full).flat_map(|p| (0..full).map(move |s| (p, s))).collect()
}

fn orientations(m: usize) -> Vec<(u64, u64)> {
    let full = (1u64 << m) - 1;
    (0..=full).map(|p| (p, full & !p)).collect()
}

fn single_vertex() -> Vec<CanonicalForm> {
    vec![canonical_form(&Digraph::empty(1)).expect("order 1")]
}

/// Canonical forms of all digraphs of order `n`, sorted.
pub fn digraph_classes(n: usize) -> Result<Vec<CanonicalForm>> {
    check(n, DIGRAPH_ENUM_MAX_ORDER, "digraph")?;
    let mut level = single_vertex();
    for _ in 1..n {
        level = grow(&level, all_pairs, |_| true);
    }
    Ok(level)
}

/// Canonical forms of the strongly connected digraphs of order `n`, sorted.
pub fn strongly_connected_classes(n: usize) -> Result<Vec<CanonicalForm>> {
    check(n, DIGRAPH_ENUM_MAX_ORDER, "digraph")?;
    if n == 1 {
        return Ok(single_vertex());
    }
    let parents = digraph_classes(n - 1)?;
    Ok(grow(&parents, all_pairs, Digraph::is_strongly_connected))
}

/// Canonical forms of all tournaments of order `n`, sorted.
pub fn tournament_classes(n: usize) -> Result<Vec<CanonicalForm>> {
    check(n, TOURNAMENT_ENUM_MAX_ORDER, "tournament")?;
    let mut level = single_vertex();
    for _ in 1..n {
        level = grow(&level, orientations, |_| true);
    }
    Ok(level)
}

/// Canonical forms of the strongly connected tournaments of order `n`, sorted.
pub fn strongly_connected_tournament_classes(n: usize) -> Result<Vec<CanonicalForm>> {
    let mut all = tournament_classes(n)?;
    all.retain(|cf| cf.to_digraph().is_strongly_connected());
    Ok(all)
}

/// Calls `visit` once per class of digraphs of order `n`; returns the count.
pub fn enumerate_digraphs(n: usize, mut visit: impl FnMut(&Digraph)) -> Result<usize> {
    let classes = digraph_classes(n)?;
    classes.iter().for_each(|cf| visit(&cf.to_digraph()));
    Ok(classes.len())
}

/// Calls `visit` once per class of strongly connected digraphs of order `n`.
pub fn enumerate_strongly_connected(n: usize, mut visit: impl FnMut(&Digraph)) -> Result<usize> {
    let classes = strongly_connected_classes(n)?;
    classes.iter().for_each(|cf| visit(&cf.to_digraph()));
    Ok(classes.len())
}

/// Calls `visit` once per class of strongly connected tournaments of order `n`.
pub fn enumerate_tournaments(n: usize, mut visit: impl FnMut(&Digraph)) -> Result<usize> {
    let classes = strongly_connected_tournament_classes(n)?;
    classes.iter().for_each(|cf| visit(&cf.to_digraph()));
    Ok(classes.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    // Labelled brute force over all 2^(n(n-1)) arrow sets.
    fn brute_classes(n: usize, keep: impl Fn(&Digraph) -> bool) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        let mut set = HashSet::new();
        for mask in 0u32..1 << pairs.len() {
            let g = Digraph::from_arrows(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a)).unwrap();
            if keep(&g) {
                set.insert(canonical_form(&g).unwrap());
            }
        }
        set.len()
    }

    #[test]
    fn small_counts() {
        assert_eq!(strongly_connected_classes(2).unwrap().len(), 1);
        assert_eq!(strongly_connected_classes(3).unwrap().len(), 5);
        assert_eq!(strongly_connected_classes(4).unwrap().len(), 83);
        assert_eq!(digraph_classes(3).unwrap().len(), 16);
        assert_eq!(digraph_classes(4).unwrap().len(), 218);
    }

    #[test]
    fn matches_labelled_brute_force() {
        for n in 1..=3 {
            assert_eq!(strongly_connected_classes(n).unwrap().len(), brute_classes(n, Digraph::is_strongly_connected));
            assert_eq!(digraph_classes(n).unwrap().len(), brute_classes(n, |_| true));
        }
        assert_eq!(digraph_classes(4).unwrap().len(), brute_classes(4, |_| true));
    }

    #[test]
    fn tournament_counts() {
        let all: Vec<usize> = (1..=6).map(|n| tournament_classes(n).unwrap().len()).collect();
        assert_eq!(all, vec![1, 1, 2, 4, 12, 56]);
        let strong: Vec<usize> = (3..=6).map(|n| strongly_connected_tournament_classes(n).unwrap().len()).collect();
        assert_eq!(strong, vec![1, 1, 6, 35]);
    }

    #[test]
    fn visitors_see_valid_graphs() {
        let mut seen = 0;
        let count = enumerate_strongly_connected(4, |g| {
            assert!(g.is_strongly_connected());
            seen += 1;
        })
        .unwrap();
        assert_eq!(seen, count);
        enumerate_tournaments(5, |t| assert!(t.symmetric_closure().arrow_count() == 20)).unwrap();
    }

    #[test]
    fn caps() {
        assert!(matches!(digraph_classes(7), Err(Error::Size(_))));
        assert!(matches!(tournament_classes(8), Err(Error::Size(_))));
    }
}
