//! Random generators for strongly connected digraphs, bridged digraphs,
//! tournaments and bags.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::{bag, BagSpec};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Vertex, VertexSet};
use crate::transforms::BridgePartition;

/// A random strongly connected digraph on `n` vertices: a random ear
/// decomposition, then every other arrow with probability `extra`.
///
/// Every strongly connected digraph has an ear decomposition, so every one
/// can come out, though not uniformly.
pub fn random_strongly_connected<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: f64) -> Result<Digraph> {
    if n == 0 {
        return Err(Error::arg("order must be at least 1"));
    }
    let mut g = Digraph::new(n)?;
    if n == 1 {
        return Ok(g);
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    // First ear: a cycle on at least two vertices.
    let first = rng.gen_range(2..=n);
    for i in 0..first {
        g.set(order[i], order[(i + 1) % first]);
    }
    let mut placed = first;
    while placed < n {
        let len = rng.gen_range(1..=n - placed);
        let from = order[rng.gen_range(0..placed)];
        let to = order[rng.gen_range(0..placed)];
        let mut prev = from;
        for &w in &order[placed..placed + len] {
            g.set(prev, w);
            prev = w;
        }
        g.set(prev, to);
        placed += len;
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(extra) {
                g.set(u, v);
            }
        }
    }
    Ok(g)
}

/// Two random strongly connected sides joined by a single 2-cycle, with the
/// labels shuffled. `n >= 2`.
pub fn random_bridged<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<(Digraph, BridgePartition)> {
    if n < 2 {
        return Err(Error::arg("a bridged digraph needs at least two vertices"));
    }
    let n1 = rng.gen_range(1..n);
    let n2 = n - n1;
    let (pa, pb) = (rng.gen_range(0.0..0.5), rng.gen_range(0.0..0.5));
    let a = random_strongly_connected(rng, n1, pa)?;
    let b = random_strongly_connected(rng, n2, pb)?;
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Digraph::new(n)?;
    for (u, v) in a.arrows() {
        g.set(perm[u], perm[v]);
    }
    for (u, v) in b.arrows() {
        g.set(perm[n1 + u], perm[n1 + v]);
    }
    let x = perm[rng.gen_range(0..n1)];
    let y = perm[n1 + rng.gen_range(0..n2)];
    g.set(x, y);
    g.set(y, x);
    let xs = VertexSet::from_vertices(n, perm[..n1].iter().copied())?;
    let ys = xs.complement();
    let p = BridgePartition { x, y, xs, ys };
    p.validate(&g)?;
    Ok((g, p))
}

/// A uniformly random labelled tournament.
pub fn random_tournament<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Digraph> {
    let mut g = Digraph::new(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.5) {
                g.set(u, v);
            } else {
                g.set(v, u);
            }
        }
    }
    Ok(g)
}

/// A uniformly random strongly connected labelled tournament, by rejection.
pub fn random_strong_tournament<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Digraph> {
    if n < 3 {
        return Err(Error::arg("strongly connected tournaments need n >= 3"));
    }
    loop {
        let t = random_tournament(rng, n)?;
        if t.is_strongly_connected() {
            return Ok(t);
        }
    }
}

/// A bag over a random strongly connected tournament of random order, with a
/// random duplicated arrow.
pub fn random_bag<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Digraph> {
    if n < 4 {
        return Err(Error::arg("bags need n >= 4"));
    }
    let k = rng.gen_range(3..n);
    let t = random_strong_tournament(rng, k)?;
    let arrows: Vec<_> = t.arrows().collect();
    let a = *arrows.choose(rng).expect("tournament has arrows");
    bag(&BagSpec::new(n, t, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            assert!(random_strongly_connected(&mut rng, n, 0.1).unwrap().is_strongly_connected());
            if n >= 2 {
                let (g, p) = random_bridged(&mut rng, n).unwrap();
                assert!(g.is_strongly_connected());
                p.validate(&g).unwrap();
            }
            if n >= 3 {
                let t = random_strong_tournament(&mut rng, n).unwrap();
                assert!(t.is_tournament() && t.is_strongly_connected());
            }
            if n >= 4 {
                assert!(random_bag(&mut rng, n).unwrap().is_strongly_connected());
            }
        }
    }
}
