//! Builders for the named digraph families.
//!
//! Vertices `v_1..v_n` of the usual notation are the labels `0..n-1`, in
//! construction order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::closed_forms::pos_hnk;
use crate::error::{Error, Result};
use crate::graph::{Arrow, Digraph};
use crate::iso::{canonical_form, CanonicalForm};

/// Largest order accepted by [`b_family`] (the family has `2^(n-1)` labelled members).
pub const B_FAMILY_MAX_ORDER: usize = 8;

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`. For `n = 2` this is the double arrow.
pub fn cycle(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::arg(format!("a cycle needs at least 2 vertices, got {n}")));
    }
    Digraph::from_arrows(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Directed path `0 -> 1 -> ... -> n-1`.
pub fn path(n: usize) -> Result<Digraph> {
    Digraph::from_arrows(n, (1..n).map(|i| (i - 1, i)))
}

/// Complete symmetric digraph.
pub fn complete(n: usize) -> Result<Digraph> {
    Digraph::from_arrows(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))))
}

/// In-star: centre `0`, arrows `(i, 0)` for every other vertex.
pub fn in_star(n: usize) -> Result<Digraph> {
    Digraph::from_arrows(n, (1..n).map(|i| (i, 0)))
}

/// Backward tournament: the forward path `(v_i, v_{i+1})` plus every
/// backward arrow `(v_i, v_j)` with `j <= i - 2`.
pub fn backward_tournament(n: usize) -> Result<Digraph> {
    if n < 3 {
        return Err(Error::arg(format!("backward tournaments need n >= 3, got {n}")));
    }
    let forward = (0..n - 1).map(|i| (i, i + 1));
    let backward = (2..n).flat_map(|i| (0..i - 1).map(move |j| (i, j)));
    Digraph::from_arrows(n, forward.chain(backward))
}

/// The diameter-extremal family: the backward tournament with any subset of
/// the arrows `(v_{i+1}, v_i)` added, one representative per isomorphism
/// class, ordered by canonical form.
pub fn b_family(n: usize) -> Result<Vec<Digraph>> {
    if n > B_FAMILY_MAX_ORDER {
        return Err(Error::size(format!(
            "b_family is limited to n <= {B_FAMILY_MAX_ORDER}, got {n}"
        )));
    }
    let base = backward_tournament(n)?;
    let mut classes = BTreeSet::new();
    for mask in 0u32..1 << (n - 1) {
        let mut g = base.clone();
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                g.set(i + 1, i);
            }
        }
        classes.insert(canonical_form(&g)?);
    }
    Ok(classes.into_iter().map(|c| c.to_digraph()).collect())
}

/// All graphs obtained from `g` by replacing at most `k` arrows `(u, v)`
/// either by `(v, u)` or by the pair `(u, v), (v, u)`; one representative
/// per isomorphism class, ordered by canonical form.
pub fn l_set(g: &Digraph, k: usize) -> Result<Vec<Digraph>> {
    let arrows: Vec<Arrow> = g.arrows().collect();
    let mut classes = BTreeSet::new();
    classes.insert(canonical_form(g)?);
    let mut current = g.clone();
    l_set_rec(&arrows, 0, k, &mut current, &mut classes)?;
    Ok(classes.into_iter().map(|c| c.to_digraph()).collect())
}

fn l_set_rec(
    arrows: &[Arrow],
    from: usize,
    budget: usize,
    current: &mut Digraph,
    out: &mut BTreeSet<CanonicalForm>,
) -> Result<()> {
    if budget == 0 {
        return Ok(());
    }
    for i in from..arrows.len() {
        let (u, v) = arrows[i];
        let had_reverse = current.has_arrow(v, u);
        for doubled in [false, true] {
            if !doubled {
                current.unset(u, v);
            }
            current.set(v, u);
            out.insert(canonical_form(current)?);
            l_set_rec(arrows, i + 1, budget - 1, current, out)?;
            current.set(u, v);
            if !had_reverse {
                current.unset(v, u);
            }
        }
    }
    Ok(())
}

/// Description of a bag `H_n(T, k, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BagSpec {
    n: usize,
    tournament: Digraph,
    dup_arrow: Arrow,
}

impl BagSpec {
    /// Validates that `tournament` is a tournament of order `k` with
    /// `3 <= k < n` and that `dup_arrow` is one of its arrows.
    pub fn new(n: usize, tournament: Digraph, dup_arrow: Arrow) -> Result<Self> {
        let k = tournament.order();
        if k < 3 || k >= n {
            return Err(Error::arg(format!("bag needs 3 <= k < n, got k={k}, n={n}")));
        }
        if !tournament.is_tournament() {
            return Err(Error::arg("bag core is not a tournament"));
        }
        if !tournament.has_arrow(dup_arrow.0, dup_arrow.1) {
            return Err(Error::arg(format!(
                "duplicated arrow ({},{}) is not an arrow of the tournament",
                dup_arrow.0, dup_arrow.1
            )));
        }
        Ok(BagSpec {
            n,
            tournament,
            dup_arrow,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.tournament.order()
    }

    pub fn tournament(&self) -> &Digraph {
        &self.tournament
    }

    pub fn dup_arrow(&self) -> Arrow {
        self.dup_arrow
    }

    /// Arrow count of the added path, `n - k + 1`.
    pub fn path_len(&self) -> usize {
        self.n - self.k() + 1
    }
}

/// Builds the bag: the tournament on `0..k`, with the duplicated arrow
/// `(u, v)` kept and a new path `u -> k -> k+1 -> ... -> n-1 -> v` added.
pub fn bag(spec: &BagSpec) -> Result<Digraph> {
    let (k, n) = (spec.k(), spec.n);
    let (u, v) = spec.dup_arrow;
    let mut g = Digraph::empty(n);
    for (a, b) in spec.tournament.arrows() {
        g.set(a, b);
    }
    let mut prev = u;
    for w in k..n {
        g.set(prev, w);
        prev = w;
    }
    g.set(prev, v);
    Ok(g)
}

/// `H_n(k)`: the bag over the backward tournament `B_k`, duplicating `(v_k, v_1)`.
pub fn canonical_bag(n: usize, k: usize) -> Result<Digraph> {
    if k < 3 || k >= n {
        return Err(Error::arg(format!("H_n(k) needs 3 <= k < n, got n={n}, k={k}")));
    }
    let spec = BagSpec::new(n, backward_tournament(k)?, (k - 1, 0))?;
    bag(&spec)
}

/// The optimal bag order for a given `n >= 11`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KStarResult {
    pub n: usize,
    /// `n(sqrt 2 - 1) + 8 - 11 sqrt(2) / 2`.
    pub r: f64,
    pub r_even: f64,
    pub r_odd: f64,
    /// `floor(r)` and `ceil(r)`, clamped to `[3, n-1]`.
    pub candidates: Vec<usize>,
    pub k_star: usize,
    /// Exact transmission price of `H_n(k)` at each candidate.
    pub pos_at_candidates: Vec<i64>,
}

/// Locates the candidate orders with floating point, then decides between
/// them by exact closed-form prices. A tie goes to the smaller order.
pub fn k_star(n: usize) -> Result<KStarResult> {
    if n < 11 {
        return Err(Error::domain(format!("k* is defined for n >= 11, got {n}")));
    }
    let nf = n as f64;
    let s2 = std::f64::consts::SQRT_2;
    let r = nf * (s2 - 1.0) + 8.0 - 11.0 * s2 / 2.0;
    let disc = 2.0 * nf * nf - 22.0 * nf;
    let r_even = 8.0 - nf + (disc + 344.0 / 6.0).sqrt();
    let r_odd = 8.0 - nf + (disc + 326.0 / 6.0).sqrt();
    let clamp = |x: f64| (x as usize).clamp(3, n - 1);
    let mut candidates = vec![clamp(r.floor()), clamp(r.ceil())];
    candidates.dedup();
    let pos_at_candidates = candidates
        .iter()
        .map(|&k| pos_hnk(n as i64, k as i64))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for i in 1..candidates.len() {
        if pos_at_candidates[i] > pos_at_candidates[best] {
            best = i;
        }
    }
    Ok(KStarResult {
        n,
        r,
        r_even,
        r_odd,
        k_star: candidates[best],
        candidates,
        pos_at_candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::all_pairs_distances;
    use crate::invariants::transmission;
    use crate::iso::are_isomorphic;

    #[test]
    fn small_families() {
        assert_eq!(cycle(3).unwrap().arrows().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(complete(3).unwrap().arrow_count(), 6);
        let s = in_star(5).unwrap();
        assert_eq!(s.arrow_count(), 4);
        assert!((1..5).all(|i| s.has_arrow(i, 0)));
        assert!(cycle(1).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn backward_tournaments() {
        assert!(are_isomorphic(&backward_tournament(3).unwrap(), &cycle(3).unwrap()).unwrap());
        let b6 = backward_tournament(6).unwrap();
        // Fig. 1 arrow list, 1-based in the figure.
        let fig: Vec<Arrow> = [
            (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
            (6, 4), (6, 3), (6, 2), (6, 1), (5, 3), (5, 2), (5, 1), (4, 2), (4, 1), (3, 1),
        ]
        .iter()
        .map(|&(a, b)| (a - 1, b - 1))
        .collect();
        assert_eq!(b6, Digraph::from_arrows(6, fig).unwrap());
        assert!(b6.is_tournament());
        assert!(b6.is_strongly_connected());
        assert_eq!(all_pairs_distances(&b6).get(0, 5), Some(5));
        assert_eq!(transmission(&backward_tournament(5).unwrap()).unwrap(), 34);
        assert!(backward_tournament(2).is_err());
    }

    #[test]
    fn b_family_small() {
        let fam = b_family(3).unwrap();
        // B_3, B_3 plus one back arrow, B_3 plus both.
        assert_eq!(fam.len(), 3);
        for m in &fam {
            assert_eq!(crate::invariants::diameter(m).unwrap(), 2);
            assert_eq!(crate::invariants::diameter(&m.symmetric_closure()).unwrap(), 1);
        }
        assert!(b_family(9).is_err());
    }

    #[test]
    fn l_set_of_in_star() {
        let is5 = in_star(5).unwrap();
        let l1 = l_set(&is5, 1).unwrap();
        assert_eq!(l1.len(), 3);
        let fig2 = [
            Digraph::from_arrows(5, [(1, 0), (2, 0), (3, 0), (4, 0)]).unwrap(),
            Digraph::from_arrows(5, [(0, 1), (2, 0), (3, 0), (4, 0)]).unwrap(),
            Digraph::from_arrows(5, [(0, 1), (1, 0), (2, 0), (3, 0), (4, 0)]).unwrap(),
        ];
        for f in &fig2 {
            assert!(l1.iter().any(|m| are_isomorphic(m, f).unwrap()));
        }
        assert_eq!(l_set(&is5, 0).unwrap().len(), 1);
        assert!(are_isomorphic(&l_set(&is5, 0).unwrap()[0], &is5).unwrap());
    }

    #[test]
    fn bag_shape() {
        let h = canonical_bag(8, 4).unwrap();
        assert_eq!(h.order(), 8);
        assert_eq!(h.arrow_count(), 6 + 5);
        assert!(h.is_strongly_connected());
        // Fig. 3 labels the tournament 5..8 and the path 8 -> 1 -> 2 -> 3 -> 4 -> 5.
        let fig: Vec<Arrow> = [(1, 2), (2, 3), (3, 4), (4, 5), (8, 5), (8, 1), (5, 6), (6, 7), (7, 8), (7, 5), (8, 6)]
            .iter()
            .map(|&(a, b)| (a - 1, b - 1))
            .collect();
        assert!(are_isomorphic(&h, &Digraph::from_arrows(8, fig).unwrap()).unwrap());
        let spec = BagSpec::new(8, backward_tournament(4).unwrap(), (3, 0)).unwrap();
        assert_eq!(spec.path_len(), 5);
        assert_eq!(BagSpec::new(5, backward_tournament(4).unwrap(), (3, 0)).unwrap().path_len(), 2);
    }

    #[test]
    fn bag_spec_validation() {
        let b4 = backward_tournament(4).unwrap();
        assert!(BagSpec::new(4, b4.clone(), (3, 0)).is_err());
        assert!(BagSpec::new(8, b4.clone(), (0, 3)).is_err());
        assert!(BagSpec::new(8, cycle(4).unwrap(), (0, 1)).is_err());
        assert!(canonical_bag(5, 2).is_err());
        assert!(canonical_bag(5, 5).is_err());
    }

    #[test]
    fn k_star_at_eleven() {
        let ks = k_star(11).unwrap();
        assert!((ks.r - (0.4142 * 11.0 + 0.2218)).abs() < 1e-3);
        assert_eq!(ks.candidates, vec![4, 5]);
        assert!(ks.r_odd < ks.r_even && ks.r_even < ks.r);
        assert!(ks.candidates.contains(&ks.k_star));
        assert!(k_star(10).is_err());
    }
}
