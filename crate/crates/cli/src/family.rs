//! Family specifiers such as `cycle:5` or `bag:12:5`.

use symprice::constructions::{backward_tournament, canonical_bag, complete, cycle, in_star, path};
use symprice::{Digraph, Error, Result};

pub const FAMILY_HELP: &str = "cycle:N, path:N, complete:N, instar:N, backward:N or bag:N:K";

fn number(field: &str, spec: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::Argument(format!("bad number {field:?} in family {spec:?} (expected {FAMILY_HELP})")))
}

/// Builds the digraph named by `spec`.
pub fn parse_family(spec: &str) -> Result<Digraph> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["cycle", n] => cycle(number(n, spec)?),
        ["path", n] => path(number(n, spec)?),
        ["complete", n] => complete(number(n, spec)?),
        ["instar", n] => in_star(number(n, spec)?),
        ["backward", n] => backward_tournament(number(n, spec)?),
        ["bag", n, k] => canonical_bag(number(n, spec)?, number(k, spec)?),
        _ => Err(Error::Argument(format!("unknown family {spec:?} (expected {FAMILY_HELP})"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(parse_family("cycle:4").unwrap().arrow_count(), 4);
        assert_eq!(parse_family("bag:8:4").unwrap().arrow_count(), 11);
        assert_eq!(parse_family("backward:6").unwrap().arrow_count(), 15);
        assert!(matches!(parse_family("wheel:5"), Err(Error::Argument(_))));
        assert!(matches!(parse_family("cycle:x"), Err(Error::Argument(_))));
        assert!(matches!(parse_family("bag:5:5"), Err(Error::Argument(_))));
    }
}
