//! Canonical labelling and isomorphism testing for small digraphs.
//!
//! Individualisation-refinement: colour refinement on in/out neighbour
//! colour counts, then a search tree that individualises each vertex of the
//! first non-singleton cell. Every leaf fixes a vertex order; the canonical
//! code is the smallest adjacency code over all leaves. Vertices that are
//! twins (swapping them is an automorphism) are only tried once per cell.
//!
//! Only orders up to [`MAX_CANONICAL_ORDER`] are supported.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Largest order for which canonical forms are computed.
pub const MAX_CANONICAL_ORDER: usize = 10;

type Colors = [u8; MAX_CANONICAL_ORDER];

/// Canonical representative of an isomorphism class.
///
/// Two digraphs have equal canonical forms iff they are isomorphic. The
/// ordering is the integer order of the adjacency code, which makes sets of
/// forms sort deterministically.
/// Serialises as the hex string of [`CanonicalForm::to_bytes`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    n: u8,
    code: u128,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        usize::from(self.n)
    }

    /// Byte string: the order, then the adjacency code in big-endian bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.order();
        let len = (n * n.saturating_sub(1)).div_ceil(8);
        let mut out = Vec::with_capacity(len + 1);
        out.push(self.n);
        out.extend_from_slice(&self.code.to_be_bytes()[16 - len..]);
        out
    }

    /// Lower-case hex of [`CanonicalForm::to_bytes`].
    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Inverse of [`CanonicalForm::to_hex`].
    pub fn from_hex(s: &str) -> Result<CanonicalForm> {
        let bad = || Error::arg(format!("malformed canonical form {s:?}"));
        if !s.len().is_multiple_of(2) || !s.is_ascii() {
            return Err(bad());
        }
        let bytes = (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|_| bad()))
            .collect::<Result<Vec<u8>>>()?;
        let (&n, rest) = bytes.split_first().ok_or_else(bad)?;
        let order = usize::from(n);
        if order == 0 || order > MAX_CANONICAL_ORDER || rest.len() != (order * (order - 1)).div_ceil(8) {
            return Err(bad());
        }
        let code = rest.iter().fold(0u128, |c, &b| c << 8 | u128::from(b));
        if code >> (order * (order - 1)) != 0 {
            return Err(bad());
        }
        Ok(CanonicalForm { n, code })
    }

    /// The canonically labelled digraph itself.
    pub fn to_digraph(&self) -> Digraph {
        let n = self.order();
        let pairs = n * (n - 1);
        let mut g = Digraph::empty(n);
        let mut idx = 0;
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                if self.code >> (pairs - 1 - idx) & 1 == 1 {
                    g.set(p, q);
                }
                idx += 1;
            }
        }
        g
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalForm::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

struct Labeller {
    n: usize,
    out: [u16; MAX_CANONICAL_ORDER],
    inn: [u16; MAX_CANONICAL_ORDER],
    twins: [u16; MAX_CANONICAL_ORDER],
}

impl Labeller {
    fn new(g: &Digraph) -> Self {
        let n = g.order();
        let mut out = [0u16; MAX_CANONICAL_ORDER];
        let mut inn = [0u16; MAX_CANONICAL_ORDER];
        for (u, v) in g.arrows() {
            out[u] |= 1 << v;
            inn[v] |= 1 << u;
        }
        let mut twins = [0u16; MAX_CANONICAL_ORDER];
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let mask = !((1u16 << u) | (1u16 << v));
                let same_out = out[u] & mask == out[v] & mask;
                let same_in = inn[u] & mask == inn[v] & mask;
                let mutual = (out[u] >> v & 1) == (out[v] >> u & 1);
                if same_out && same_in && mutual {
                    twins[u] |= 1 << v;
                }
            }
        }
        Labeller { n, out, inn, twins }
    }

    /// Refines `colors` to the coarsest equitable partition below it.
    /// Colours are dense ranks; cell order is preserved.
    fn refine(&self, colors: &mut Colors) {
        let n = self.n;
        let mut ncolors = densify(colors, n);
        loop {
            let mut sigs = [[0u8; 2 * MAX_CANONICAL_ORDER + 1]; MAX_CANONICAL_ORDER];
            for v in 0..n {
                let s = &mut sigs[v];
                s[0] = colors[v];
                for w in 0..n {
                    if self.out[v] >> w & 1 == 1 {
                        s[1 + colors[w] as usize] += 1;
                    }
                    if self.inn[v] >> w & 1 == 1 {
                        s[1 + MAX_CANONICAL_ORDER + colors[w] as usize] += 1;
                    }
                }
            }
            let mut idx: [usize; MAX_CANONICAL_ORDER] = std::array::from_fn(|i| i);
            idx[..n].sort_unstable_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut rank = 0u8;
            for i in 0..n {
                if i > 0 && sigs[idx[i]] != sigs[idx[i - 1]] {
                    rank += 1;
                }
                colors[idx[i]] = rank;
            }
            let fresh = usize::from(rank) + 1;
            if fresh == ncolors {
                return;
            }
            ncolors = fresh;
        }
    }

    fn code(&self, colors: &Colors) -> u128 {
        let n = self.n;
        let mut order = [0usize; MAX_CANONICAL_ORDER];
        for v in 0..n {
            order[colors[v] as usize] = v;
        }
        let mut code = 0u128;
        for p in 0..n {
            let row = self.out[order[p]];
            for q in 0..n {
                if p != q {
                    code = code << 1 | u128::from(row >> order[q] & 1);
                }
            }
        }
        code
    }

    fn search(&self, colors: &Colors, best: &mut Option<u128>) {
        let n = self.n;
        let ncolors = count_colors(colors, n);
        if ncolors == n {
            let c = self.code(colors);
            if best.is_none_or(|b| c < b) {
                *best = Some(c);
            }
            return;
        }
        // First non-singleton cell.
        let mut sizes = [0u8; MAX_CANONICAL_ORDER];
        for &c in &colors[..n] {
            sizes[c as usize] += 1;
        }
        let target = (0..ncolors).find(|&c| sizes[c] > 1).expect("non-discrete partition") as u8;
        let mut tried = 0u16;
        for v in 0..n {
            if colors[v] != target || self.twins[v] & tried != 0 {
                continue;
            }
            tried |= 1 << v;
            let mut next = *colors;
            for w in 0..n {
                next[w] = next[w] * 2 + u8::from(w != v);
            }
            self.refine(&mut next);
            self.search(&next, best);
        }
    }
}

/// Replaces colours by their dense ranks; returns the number of colours.
fn densify(colors: &mut Colors, n: usize) -> usize {
    let mut present = 0u32;
    for &c in &colors[..n] {
        present |= 1 << c;
    }
    for c in colors[..n].iter_mut() {
        *c = (present & ((1u32 << *c) - 1)).count_ones() as u8;
    }
    present.count_ones() as usize
}

fn count_colors(colors: &Colors, n: usize) -> usize {
    colors[..n].iter().map(|&c| usize::from(c)).max().map_or(0, |m| m + 1)
}

/// Canonical form of `g`; errors above [`MAX_CANONICAL_ORDER`].
pub fn canonical_form(g: &Digraph) -> Result<CanonicalForm> {
    let n = g.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::size(format!(
            "canonical forms are only supported up to order {MAX_CANONICAL_ORDER}, got {n}"
        )));
    }
    let lab = Labeller::new(g);
    let mut colors = [0u8; MAX_CANONICAL_ORDER];
    lab.refine(&mut colors);
    let mut best = None;
    lab.search(&colors, &mut best);
    Ok(CanonicalForm {
        n: n as u8,
        code: best.expect("search visits at least one leaf"),
    })
}

/// Isomorphism test via canonical forms. Different orders are never isomorphic.
pub fn are_isomorphic(g: &Digraph, h: &Digraph) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.arrow_count() != h.arrow_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}
