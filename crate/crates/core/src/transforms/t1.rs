use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Arrow, Digraph, Vertex};

use super::{pos, require_strong, Rule, TransformOutcome};

/// Orders up to this one always get an exhaustive search.
pub const LIP_EXACT_MAX_ORDER: usize = 14;

/// Extension steps allowed above [`LIP_EXACT_MAX_ORDER`].
pub const LIP_STEP_BUDGET: u64 = 50_000_000;

/// Longest induced path search is limited to this order.
pub const LIP_MAX_ORDER: usize = 64;

/// A directed path whose vertex set induces exactly the path's arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedPath {
    pub vertices: Vec<Vertex>,
    /// False when the search ran out of budget; the path is then the best
    /// one seen, not necessarily a longest one.
    pub exact: bool,
}

impl InducedPath {
    /// Number of arrows.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 2
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

pub(crate) struct PathSearch {
    pub(crate) out: Vec<u64>,
    pub(crate) inn: Vec<u64>,
}

impl PathSearch {
    pub(crate) fn new(g: &Digraph) -> Result<Self> {
        let n = g.order();
        if n > LIP_MAX_ORDER {
            return Err(Error::size(format!(
                "induced path search is limited to order {LIP_MAX_ORDER}, got {n}"
            )));
        }
        let out: Vec<u64> = (0..n).map(|u| g.row(u)[0]).collect();
        let mut inn = vec![0u64; n];
        for (u, v) in g.arrows() {
            inn[v] |= 1 << u;
        }
        Ok(PathSearch { out, inn })
    }

    /// Vertices `w` that may follow `last` on an induced path whose other
    /// vertices' neighbourhoods are in `blocked`.
    pub(crate) fn extensions(&self, last: Vertex, blocked: u64) -> u64 {
        self.out[last] & !self.inn[last] & !blocked
    }

    /// The closed neighbourhood of `v` in both directions.
    pub(crate) fn around(&self, v: Vertex) -> u64 {
        self.out[v] | self.inn[v] | 1 << v
    }
}

struct Lip<'a> {
    s: &'a PathSearch,
    n: usize,
    best: Vec<Vertex>,
    path: Vec<Vertex>,
    steps: u64,
    budget: Option<u64>,
}

impl Lip<'_> {
    // `blocked` covers the path and the neighbourhoods of every path vertex
    // except the last one.
    fn grow(&mut self, blocked: u64) -> bool {
        if let Some(b) = self.budget {
            if self.steps >= b {
                return false;
            }
        }
        self.steps += 1;
        if self.path.len() > self.best.len() {
            self.best.clone_from(&self.path);
        }
        let last = *self.path.last().expect("non-empty path");
        let room = (!(blocked | 1 << last) & mask(self.n)).count_ones() as usize;
        if self.path.len() + room <= self.best.len() {
            return true;
        }
        let next_blocked = blocked | self.s.around(last);
        let mut ext = self.s.extensions(last, blocked);
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            self.path.push(w);
            let ok = self.grow(next_blocked);
            self.path.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A longest induced directed path; the lexicographically smallest vertex
/// sequence among the longest ones.
///
/// Exhaustive backtracking up to [`LIP_EXACT_MAX_ORDER`]; above that the
/// same search runs under [`LIP_STEP_BUDGET`] and reports whether it finished.
pub fn longest_induced_path(g: &Digraph) -> Result<InducedPath> {
    let n = g.order();
    let s = PathSearch::new(g)?;
    let mut lip = Lip {
        s: &s,
        n,
        best: Vec::new(),
        path: Vec::with_capacity(n),
        steps: 0,
        budget: (n > LIP_EXACT_MAX_ORDER).then_some(LIP_STEP_BUDGET),
    };
    let mut exact = true;
    for start in 0..n {
        if lip.best.len() == n {
            break;
        }
        lip.path.push(start);
        exact = lip.grow(1 << start);
        lip.path.pop();
        if !exact {
            break;
        }
    }
    Ok(InducedPath {
        vertices: lip.best,
        exact,
    })
}

/// One arrow `a` off the path with the graph `G'_a` built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T1Candidate {
    pub arrow: Arrow,
    pub graph: Digraph,
    /// `None` when `G'_a` is not strongly connected.
    pub pos: Option<i64>,
}

/// `G'_a`: contract `a`, then subdivide the image of the first arrow of `p`
/// with a new vertex, which gets the label `n - 1`.
fn contract_insert(g: &Digraph, a: Arrow, p: &InducedPath) -> Result<Digraph> {
    let (h, map) = g.contract(a.0, a.1)?;
    let (x, y) = (map[p.vertices[0]], map[p.vertices[1]]);
    if x == y || !h.has_arrow(x, y) {
        return Err(Error::Invariant(format!("contracting {a:?} collapsed the first path arrow")));
    }
    let mut h = h.extend(&[x], &[y])?;
    h.unset(x, y);
    Ok(h)
}

/// The longest induced path and every candidate of the contraction-insertion
/// step, in lexicographic order of the contracted arrow.
pub fn t1_candidates(g: &Digraph) -> Result<(InducedPath, Vec<T1Candidate>)> {
    require_strong(g, "t1")?;
    let p = longest_induced_path(g)?;
    if p.is_empty() {
        return Err(Error::domain("t1 needs an induced path with at least one arrow"));
    }
    let on_path: Vec<Arrow> = p.arrows().collect();
    let arrows: Vec<Arrow> = g.arrows().filter(|a| !on_path.contains(a)).collect();
    if arrows.is_empty() {
        return Err(Error::domain("t1 needs an arrow outside the longest induced path"));
    }
    let cands = arrows
        .par_iter()
        .map(|&a| {
            let graph = contract_insert(g, a, &p)?;
            let pos = pos(&graph).ok();
            Ok(T1Candidate { arrow: a, graph, pos })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((p, cands))
}

/// One contraction-insertion step: takes the candidate with the largest
/// price gain (first one on ties) and applies it only if the gain is positive.
pub fn t1_step(g: &Digraph) -> Result<TransformOutcome> {
    let before = pos(g)?;
    let (_, cands) = t1_candidates(g)?;
    let best = cands
        .into_iter()
        .filter_map(|c| c.pos.map(|p| (p, c.graph)))
        .fold(None::<(i64, Digraph)>, |acc, (p, h)| match acc {
            Some((bp, _)) if bp >= p => acc,
            _ => Some((p, h)),
        });
    Ok(match best {
        Some((p, h)) if p > before => TransformOutcome {
            rule: Rule::T1,
            applied: true,
            result: Some(h),
            pos_before: before,
            pos_after: p,
        },
        Some((p, _)) => TransformOutcome {
            rule: Rule::T1,
            applied: false,
            result: None,
            pos_before: before,
            pos_after: p,
        },
        None => TransformOutcome {
            rule: Rule::T1,
            applied: false,
            result: None,
            pos_before: before,
            pos_after: before,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{canonical_bag, cycle, path};
    use crate::iso::are_isomorphic;

    fn is_induced(g: &Digraph, vs: &[Vertex]) -> bool {
        vs.iter()
            .flat_map(|&a| vs.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| g.has_arrow(a, b))
            .count()
            == vs.len() - 1
            && vs.windows(2).all(|w| g.has_arrow(w[0], w[1]))
    }

    fn brute_lip(g: &Digraph) -> usize {
        fn rec(g: &Digraph, p: &mut Vec<Vertex>, best: &mut usize) {
            *best = (*best).max(p.len() - 1);
            let last = *p.last().unwrap();
            for w in 0..g.order() {
                if !p.contains(&w) && g.has_arrow(last, w) {
                    p.push(w);
                    if is_induced(g, p) {
                        rec(g, p, best);
                    }
                    p.pop();
                }
            }
        }
        let mut best = 0;
        for s in 0..g.order() {
            rec(g, &mut vec![s], &mut best);
        }
        best
    }

    #[test]
    fn path_and_cycle() {
        let p = longest_induced_path(&path(5).unwrap()).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.exact);
        let c = longest_induced_path(&cycle(7).unwrap()).unwrap();
        assert_eq!(c.vertices, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn bag_path() {
        let g = canonical_bag(8, 4).unwrap();
        let p = longest_induced_path(&g).unwrap();
        assert!(is_induced(&g, &p.vertices));
        assert_eq!(p.len(), brute_lip(&g));
    }

    #[test]
    fn matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(2..=8);
            let p = rng.gen_range(0.1..0.6);
            let mut g = Digraph::new(n).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(p) {
                        g.set(u, v);
                    }
                }
            }
            let lip = longest_induced_path(&g).unwrap();
            assert!(is_induced(&g, &lip.vertices), "{g:?}");
            assert_eq!(lip.len(), brute_lip(&g), "{g:?}");
        }
    }

    #[test]
    fn bags_are_fixed_points() {
        for n in 11..=13 {
            for k in 3..n {
                let o = t1_step(&canonical_bag(n, k).unwrap()).unwrap();
                assert!(!o.applied, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn needs_an_arrow_off_the_path() {
        assert!(matches!(t1_step(&cycle(2).unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn candidates_keep_the_order() {
        let g = canonical_bag(9, 4).unwrap();
        let (_, cands) = t1_candidates(&g).unwrap();
        assert!(cands.iter().all(|c| c.graph.order() == 9));
    }

    // Subdividing a different arrow of the path can change the class.
    #[test]
    fn insertion_position_matters() {
        let g = canonical_bag(7, 4).unwrap();
        let p = longest_induced_path(&g).unwrap();
        let a = g.arrows().find(|a| !p.arrows().any(|b| b == *a)).unwrap();
        let (h, map) = g.contract(a.0, a.1).unwrap();
        let variants: Vec<Digraph> = p
            .arrows()
            .map(|(u, v)| {
                let (x, y) = (map[u], map[v]);
                let mut h = h.extend(&[x], &[y]).unwrap();
                h.unset(x, y);
                h
            })
            .collect();
        let distinct = variants
            .iter()
            .skip(1)
            .any(|h| !are_isomorphic(h, &variants[0]).unwrap());
        assert!(distinct);
    }
}
