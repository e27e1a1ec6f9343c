use serde::Serialize;

use crate::distance::all_pairs_distances;
use crate::error::{Error, Result};
use crate::graph::{Digraph, Vertex, VertexSet};

use super::{pos, require_strong, Rule, TransformOutcome};

/// A 2-cycle `x <-> y` whose two arrows are the only arrows between the
/// sides `X` (holding `x`) and `Y` (holding `y`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgePartition {
    pub x: Vertex,
    pub y: Vertex,
    #[serde(rename = "X")]
    pub xs: VertexSet,
    #[serde(rename = "Y")]
    pub ys: VertexSet,
}

impl BridgePartition {
    pub fn n1(&self) -> usize {
        self.xs.len()
    }

    pub fn n2(&self) -> usize {
        self.ys.len()
    }

    /// Checks the partition invariants against `g`.
    pub fn validate(&self, g: &Digraph) -> Result<()> {
        let n = g.order();
        let bad = |m: String| Err(Error::Invariant(format!("bridge partition: {m}")));
        if self.xs.universe() != n || self.ys.universe() != n {
            return bad("vertex sets have the wrong universe".into());
        }
        if !self.xs.is_disjoint(&self.ys) || self.xs.len() + self.ys.len() != n {
            return bad("X and Y do not partition the vertices".into());
        }
        if !self.xs.contains(self.x) || !self.ys.contains(self.y) {
            return bad("x must lie in X and y in Y".into());
        }
        if !g.has_arrow(self.x, self.y) || !g.has_arrow(self.y, self.x) {
            return bad(format!("({0},{1}) and ({1},{0}) must both be arrows", self.x, self.y));
        }
        for (u, v) in g.arrows() {
            let crossing = self.xs.contains(u) != self.xs.contains(v);
            if crossing && (u, v) != (self.x, self.y) && (u, v) != (self.y, self.x) {
                return bad(format!("extra arrow ({u},{v}) between X and Y"));
            }
        }
        for side in [&self.xs, &self.ys] {
            if !g.induced(side)?.0.is_strongly_connected() {
                return bad("a side does not induce a strongly connected digraph".into());
            }
        }
        Ok(())
    }
}

/// First 2-cycle (in lexicographic order of `(x, y)`, `x < y`) whose two
/// arrows are both bridges. `Y` is the smaller side; on equal sides `Y`
/// holds the larger endpoint.
pub fn find_c2_bridge(g: &Digraph) -> Result<Option<BridgePartition>> {
    require_strong(g, "C2 bridge search")?;
    let n = g.order();
    let mut h = g.clone();
    for a in 0..n {
        for b in (a + 1)..n {
            if !(g.has_arrow(a, b) && g.has_arrow(b, a)) {
                continue;
            }
            h.unset(a, b);
            h.unset(b, a);
            let side_a = h.reachable_from(a);
            let closed = !side_a.contains(b) && h.transpose().reachable_from(a) == side_a;
            h.set(a, b);
            h.set(b, a);
            if !closed {
                continue;
            }
            // The side of `a` is closed in both directions once the 2-cycle
            // is removed, so the two arrows are the whole cut.
            let side_b = side_a.complement();
            let (x, y, xs, ys) = if side_b.len() <= side_a.len() {
                (a, b, side_a, side_b)
            } else {
                (b, a, side_b, side_a)
            };
            let p = BridgePartition { x, y, xs, ys };
            p.validate(g)?;
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Right-hand side of the decomposition
/// `sigma(X) + sigma(Y) + n1 (sigma(Y,y) + sigma(y,Y)) + n2 (sigma(X,x) + sigma(x,X)) + 2 n1 n2`.
/// Equals the transmission of `g`.
pub fn bridge_sigma_decomposition(g: &Digraph, p: &BridgePartition) -> Result<u64> {
    let d = all_pairs_distances(g);
    let (n1, n2) = (p.n1() as u64, p.n2() as u64);
    let sx = d.sigma_within(&p.xs)?;
    let sy = d.sigma_within(&p.ys)?;
    let yy = d.sigma_to_vertex(&p.ys, p.y)? + d.sigma_from_vertex(p.y, &p.ys)?;
    let xx = d.sigma_to_vertex(&p.xs, p.x)? + d.sigma_from_vertex(p.x, &p.xs)?;
    Ok(sx + sy + n1 * yy + n2 * xx + 2 * n1 * n2)
}

/// The rewiring `G - (y,x) + (y',x')` with its prices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakCandidate {
    pub x_prime: Vertex,
    pub y_prime: Vertex,
    pub graph: Digraph,
    pub pos_before: i64,
    pub pos_after: i64,
}

/// Picks `x'` in `X` maximising `sigma(x', X)` and `y'` in `Y` maximising
/// `sigma(Y, y')`, smallest vertex on ties, and rewires the back arrow.
pub fn break_c2_candidate(g: &Digraph, p: &BridgePartition) -> Result<BreakCandidate> {
    p.validate(g)?;
    let d = all_pairs_distances(g);
    let x_prime = argmax(&p.xs, |v| d.sigma_from_vertex(v, &p.xs))?;
    let y_prime = argmax(&p.ys, |v| d.sigma_to_vertex(&p.ys, v))?;
    let mut h = g.clone();
    h.unset(p.y, p.x);
    h.set(y_prime, x_prime);
    let pos_before = pos(g)?;
    let pos_after = pos(&h)?;
    Ok(BreakCandidate {
        x_prime,
        y_prime,
        graph: h,
        pos_before,
        pos_after,
    })
}

fn argmax(set: &VertexSet, f: impl Fn(Vertex) -> Result<u64>) -> Result<Vertex> {
    let mut best: Option<(u64, Vertex)> = None;
    for v in set.iter() {
        let s = f(v)?;
        if best.is_none_or(|(b, _)| s > b) {
            best = Some((s, v));
        }
    }
    best.map(|(_, v)| v).ok_or_else(|| Error::Invariant("empty side".into()))
}

/// Applies [`break_c2_candidate`] when it moves the arrow and does not
/// lower the price.
pub fn break_c2(g: &Digraph, p: &BridgePartition) -> Result<TransformOutcome> {
    let c = break_c2_candidate(g, p)?;
    let moved = (c.x_prime, c.y_prime) != (p.x, p.y);
    let applied = moved && c.pos_after >= c.pos_before;
    Ok(TransformOutcome {
        rule: Rule::BreakC2,
        applied,
        result: applied.then_some(c.graph),
        pos_before: c.pos_before,
        pos_after: c.pos_after,
    })
}

/// Contracts `(x, y)` into `z` (kept at `x`'s label) and hangs a fresh
/// vertex `w` (at `y`'s label) on `z` by a 2-cycle. The order is unchanged.
pub fn contract_c2(g: &Digraph, p: &BridgePartition) -> Result<TransformOutcome> {
    p.validate(g)?;
    let (z, w) = (p.x, p.y);
    let mut h = g.clone();
    for v in g.out_neighbors(w).filter(|&v| v != z).collect::<Vec<_>>() {
        h.unset(w, v);
        h.set(z, v);
    }
    for u in g.in_neighbors(w).filter(|&u| u != z).collect::<Vec<_>>() {
        h.unset(u, w);
        h.set(u, z);
    }
    let pos_before = pos(g)?;
    let pos_after = pos(&h)?;
    let applied = h != *g;
    Ok(TransformOutcome {
        rule: Rule::ContractC2,
        applied,
        result: applied.then_some(h),
        pos_before,
        pos_after,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::transmission;

    fn two_triangles() -> Digraph {
        Digraph::from_arrows(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn finds_double_bridge() {
        let g = two_triangles();
        let p = find_c2_bridge(&g).unwrap().unwrap();
        assert_eq!((p.n1(), p.n2()), (3, 3));
        assert_eq!((p.x, p.y), (0, 3));
        assert_eq!(bridge_sigma_decomposition(&g, &p).unwrap(), transmission(&g).unwrap());
    }

    #[test]
    fn pendant_c2() {
        let g = Digraph::from_arrows(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]).unwrap();
        let p = find_c2_bridge(&g).unwrap().unwrap();
        assert_eq!((p.x, p.y), (2, 3));
        assert_eq!(p.ys.iter().collect::<Vec<_>>(), vec![3]);
        let o = contract_c2(&g, &p).unwrap();
        assert!(!o.applied);
        assert_eq!(o.pos_before, o.pos_after);
    }

    #[test]
    fn cycles_have_no_bridge() {
        let c = Digraph::from_arrows(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(find_c2_bridge(&c).unwrap(), None);
    }

    #[test]
    fn c2_with_extra_crossing_is_not_a_bridge() {
        let mut g = two_triangles();
        g.set(1, 4);
        assert_eq!(find_c2_bridge(&g).unwrap(), None);
    }

    #[test]
    fn break_moves_to_far_vertices() {
        let g = two_triangles();
        let p = find_c2_bridge(&g).unwrap().unwrap();
        let c = break_c2_candidate(&g, &p).unwrap();
        // Every vertex of a directed triangle has the same profile.
        assert_eq!((c.x_prime, c.y_prime), (0, 3));
        let o = break_c2(&g, &p).unwrap();
        assert!(!o.applied);
    }

    #[test]
    fn contraction_identity() {
        let g = two_triangles();
        let p = find_c2_bridge(&g).unwrap().unwrap();
        let o = contract_c2(&g, &p).unwrap();
        let h = o.result.unwrap();
        let (n1, n2) = (3i64, 3i64);
        let sg = transmission(&g).unwrap() as i64;
        assert_eq!(transmission(&h).unwrap() as i64, sg - 2 * n1 * n2 + 2 * n1 + 2 * n2 - 2);
        assert_eq!(o.pos_before, o.pos_after);
        assert_eq!(h.order(), 6);
    }

    // Both instances violate the monotonicity the rewiring is meant to have:
    // the new arrow (y', x') also shortens paths inside the sides.
    #[test]
    fn rewiring_can_lower_the_price() {
        let g = Digraph::from_arrows(
            10,
            [
                (0, 1), (1, 0), (1, 2), (1, 5), (1, 6), (1, 7), (1, 8), (2, 4), (3, 6),
                (4, 9), (5, 3), (6, 1), (6, 5), (6, 7), (6, 8), (7, 3), (8, 7), (9, 7),
            ],
        )
        .unwrap();
        let p = BridgePartition {
            x: 0,
            y: 1,
            xs: VertexSet::singleton(10, 0),
            ys: VertexSet::from_vertices(10, 1..10).unwrap(),
        };
        let c = break_c2_candidate(&g, &p).unwrap();
        assert_eq!((c.x_prime, c.y_prime), (0, 9));
        assert_eq!(c.pos_after - c.pos_before, -6);
        assert!(!break_c2(&g, &p).unwrap().applied);
    }

    #[test]
    fn rewiring_can_leave_the_price_unchanged() {
        let g = Digraph::from_arrows(
            6,
            [(0, 4), (1, 0), (1, 4), (2, 3), (2, 4), (3, 1), (3, 2), (4, 2), (4, 5), (5, 4)],
        )
        .unwrap();
        let p = find_c2_bridge(&g).unwrap().unwrap();
        assert_eq!((p.x, p.y, p.n2()), (4, 5, 1));
        let c = break_c2_candidate(&g, &p).unwrap();
        assert_eq!((c.x_prime, c.y_prime), (0, 5));
        assert_eq!(c.pos_after, c.pos_before);
    }
}
