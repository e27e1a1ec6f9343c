use crate::error::Result;
use crate::graph::{Arrow, Digraph};

use super::{pos, require_strong, Rule, TransformOutcome};

/// First arrow, in lexicographic order, whose removal keeps `g` strongly
/// connected and strictly raises the transmission price.
pub fn find_non_critical_arrow(g: &Digraph) -> Result<Option<Arrow>> {
    require_strong(g, "non-critical arrow search")?;
    let base = pos(g)?;
    Ok(scan(g, base).map(|(a, _, _)| a))
}

fn scan(g: &Digraph, base: i64) -> Option<(Arrow, Digraph, i64)> {
    let mut h = g.clone();
    for (u, v) in g.arrows() {
        h.unset(u, v);
        if h.is_strongly_connected() {
            let p = pos(&h).expect("strongly connected");
            if p > base {
                return Some(((u, v), h, p));
            }
        }
        h.set(u, v);
    }
    None
}

/// Removes one non-critical arrow, if there is one.
pub fn remove_non_critical(g: &Digraph) -> Result<TransformOutcome> {
    require_strong(g, "non-critical arrow removal")?;
    let base = pos(g)?;
    Ok(match scan(g, base) {
        Some((_, h, p)) => TransformOutcome {
            rule: Rule::Critical,
            applied: true,
            result: Some(h),
            pos_before: base,
            pos_after: p,
        },
        None => TransformOutcome {
            rule: Rule::Critical,
            applied: false,
            result: None,
            pos_before: base,
            pos_after: base,
        },
    })
}

/// Removes non-critical arrows until none is left.
pub fn make_critical(g: &Digraph) -> Result<Digraph> {
    Ok(make_critical_traced(g)?.0)
}

/// Like [`make_critical`], also returning the removed arrows with the price
/// after each removal.
pub fn make_critical_traced(g: &Digraph) -> Result<(Digraph, Vec<(Arrow, i64)>)> {
    require_strong(g, "make_critical")?;
    let mut cur = g.clone();
    let mut base = pos(&cur)?;
    let mut trace = Vec::new();
    while let Some((a, h, p)) = scan(&cur, base) {
        trace.push((a, p));
        cur = h;
        base = p;
    }
    Ok((cur, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cycle;

    #[test]
    fn cycles_are_critical() {
        let c = cycle(6).unwrap();
        assert_eq!(find_non_critical_arrow(&c).unwrap(), None);
        assert_eq!(make_critical(&c).unwrap(), c);
    }

    #[test]
    fn symmetric_triangle() {
        let tri = cycle(3).unwrap().symmetric_closure();
        assert_eq!(find_non_critical_arrow(&tri).unwrap(), Some((0, 1)));
        let (c, trace) = make_critical_traced(&tri).unwrap();
        assert!(pos(&c).unwrap() >= 1);
        assert!(trace.windows(2).all(|w| w[0].1 < w[1].1));
        assert_eq!(find_non_critical_arrow(&c).unwrap(), None);
    }

    #[test]
    fn disconnected_input_is_refused() {
        let g = Digraph::from_arrows(3, [(0, 1), (1, 2)]).unwrap();
        assert!(find_non_critical_arrow(&g).is_err());
    }
}
