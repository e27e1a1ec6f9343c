use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Digraph, Vertex};

use super::t1::PathSearch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BunchOptions {
    /// Shortest path length (in arrows) that counts.
    pub min_len: usize,
    /// Also forbid arrows between inner vertices of different paths.
    pub mutually_chordless: bool,
}

impl Default for BunchOptions {
    fn default() -> Self {
        BunchOptions {
            min_len: 2,
            mutually_chordless: false,
        }
    }
}

/// Induced directed paths from `s` to `t` with pairwise disjoint interiors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bunch {
    pub s: Vertex,
    pub t: Vertex,
    pub paths: Vec<Vec<Vertex>>,
}

/// Every pair `(s, t)` joined by at least two induced paths that qualify
/// under `opts`. For each pair the reported family is grown greedily from the
/// first path (in lexicographic order) that has a compatible partner, so it
/// is maximal but not necessarily maximum.
///
/// All induced paths are enumerated: exponential, meant for small orders.
pub fn detect_bunches(g: &Digraph, opts: BunchOptions) -> Result<Vec<Bunch>> {
    let n = g.order();
    let search = PathSearch::new(g)?;
    let mut out = Vec::new();
    for s in 0..n {
        let mut by_end: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); n];
        let mut path = vec![s];
        collect(&search, &mut path, 1 << s, opts.min_len.max(1), &mut by_end);
        for (t, paths) in by_end.into_iter().enumerate() {
            if let Some(family) = pick(g, &paths, opts) {
                out.push(Bunch { s, t, paths: family });
            }
        }
    }
    Ok(out)
}

fn collect(s: &PathSearch, path: &mut Vec<Vertex>, blocked: u64, min_len: usize, out: &mut [Vec<Vec<Vertex>>]) {
    let last = *path.last().expect("non-empty path");
    if path.len() > min_len {
        out[last].push(path.clone());
    }
    let next_blocked = blocked | s.around(last);
    let mut ext = s.extensions(last, blocked);
    while ext != 0 {
        let w = ext.trailing_zeros() as usize;
        ext &= ext - 1;
        path.push(w);
        collect(s, path, next_blocked, min_len, out);
        path.pop();
    }
}

fn inner(p: &[Vertex]) -> &[Vertex] {
    &p[1..p.len() - 1]
}

fn compatible(g: &Digraph, p: &[Vertex], q: &[Vertex], opts: BunchOptions) -> bool {
    let (a, b) = (inner(p), inner(q));
    if a.iter().any(|v| b.contains(v)) {
        return false;
    }
    !opts.mutually_chordless || a.iter().all(|&u| b.iter().all(|&v| !g.has_arrow(u, v) && !g.has_arrow(v, u)))
}

fn pick(g: &Digraph, paths: &[Vec<Vertex>], opts: BunchOptions) -> Option<Vec<Vec<Vertex>>> {
    for (i, first) in paths.iter().enumerate() {
        let mut family = vec![first.clone()];
        for q in &paths[i + 1..] {
            if family.iter().all(|p| compatible(g, p, q, opts)) {
                family.push(q.clone());
            }
        }
        if family.len() >= 2 {
            return Some(family);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{canonical_bag, cycle};

    #[test]
    fn two_parallel_paths() {
        // s=0, a=1, b=2, t=3, back through 4
        let g = Digraph::from_arrows(5, [(0, 1), (1, 3), (0, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let b = detect_bunches(&g, BunchOptions::default()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].s, b[0].t), (0, 3));
        assert_eq!(b[0].paths, vec![vec![0, 1, 3], vec![0, 2, 3]]);
    }

    #[test]
    fn chordless_flag() {
        let g = Digraph::from_arrows(5, [(0, 1), (1, 3), (0, 2), (2, 3), (3, 4), (4, 0), (1, 2)]).unwrap();
        assert_eq!(detect_bunches(&g, BunchOptions::default()).unwrap().len(), 1);
        let strict = BunchOptions {
            mutually_chordless: true,
            ..Default::default()
        };
        assert!(detect_bunches(&g, strict).unwrap().is_empty());
    }

    #[test]
    fn cycles_and_bags_have_none() {
        assert!(detect_bunches(&cycle(6).unwrap(), BunchOptions::default()).unwrap().is_empty());
        for n in 4..=10 {
            for k in 3..n {
                let g = canonical_bag(n, k).unwrap();
                assert!(detect_bunches(&g, BunchOptions::default()).unwrap().is_empty(), "n={n} k={k}");
            }
        }
    }
}
