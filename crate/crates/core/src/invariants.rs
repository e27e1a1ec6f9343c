//! Graph invariants and the two prices of symmetrisation.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::distance::{all_pairs_distances, total_distance};
use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Exact rational number.
pub type Rational = Ratio<i64>;

/// Orders above this are refused by [`domination_number`].
pub const DOMINATION_MAX_ORDER: usize = 32;

/// Longest shortest path.
pub fn diameter(g: &Digraph) -> Result<u32> {
    all_pairs_distances(g)
        .max_finite()
        .ok_or_else(|| Error::not_strongly_connected("diameter"))
}

/// Sum of the distances over all `n(n-1)` ordered pairs.
pub fn transmission(g: &Digraph) -> Result<u64> {
    total_distance(g).ok_or_else(|| Error::not_strongly_connected("transmission"))
}

/// Transmission divided by `n(n-1)`, exactly.
pub fn average_distance(g: &Digraph) -> Result<Rational> {
    let n = g.order() as i64;
    if n < 2 {
        return Err(Error::domain("average distance needs at least two vertices"));
    }
    let s = transmission(g)? as i64;
    Ok(Rational::new(s, n * (n - 1)))
}

/// Minimum size of a set `D` such that every vertex outside `D` has an
/// in-neighbour in `D`.
///
/// Subsets are tried by increasing cardinality, so the first hit is optimal.
pub fn domination_number(g: &Digraph) -> Result<usize> {
    let n = g.order();
    if n > DOMINATION_MAX_ORDER {
        return Err(Error::size(format!(
            "exact domination is limited to order {DOMINATION_MAX_ORDER}, got {n}"
        )));
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let closed: Vec<u64> = (0..n).map(|u| g.row(u)[0] | 1 << u).collect();
    for size in 1..=n {
        // Gosper's hack over all `size`-subsets of 0..n.
        let mut set: u64 = (1u64 << size) - 1;
        while set <= full {
            let mut cover = 0u64;
            let mut s = set;
            while s != 0 {
                let u = s.trailing_zeros() as usize;
                s &= s - 1;
                cover |= closed[u];
            }
            if cover == full {
                return Ok(size);
            }
            let c = set & set.wrapping_neg();
            let r = set + c;
            if r == 0 {
                break;
            }
            set = (((r ^ set) >> 2) / c) | r;
        }
    }
    Ok(n)
}

/// Invariants for which prices are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    Diameter,
    Domination,
    Transmission,
    AverageDistance,
}

impl Invariant {
    pub const ALL: [Invariant; 4] = [
        Invariant::Diameter,
        Invariant::Domination,
        Invariant::Transmission,
        Invariant::AverageDistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Diameter => "diameter",
            Invariant::Domination => "domination",
            Invariant::Transmission => "transmission",
            Invariant::AverageDistance => "average-distance",
        }
    }

    /// Value of the invariant on `g`.
    pub fn eval(self, g: &Digraph) -> Result<Rational> {
        Ok(match self {
            Invariant::Diameter => Rational::from_integer(i64::from(diameter(g)?)),
            Invariant::Domination => Rational::from_integer(domination_number(g)? as i64),
            Invariant::Transmission => Rational::from_integer(transmission(g)? as i64),
            Invariant::AverageDistance => average_distance(g)?,
        })
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diameter" | "D" => Ok(Invariant::Diameter),
            "domination" | "gamma" => Ok(Invariant::Domination),
            "transmission" | "sigma" => Ok(Invariant::Transmission),
            "average-distance" | "mu" => Ok(Invariant::AverageDistance),
            other => Err(Error::arg(format!(
                "unknown invariant {other:?} (expected diameter, domination, transmission or average-distance)"
            ))),
        }
    }
}

/// Invariant values on a digraph and its symmetrisation, with both prices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriceReport {
    pub invariant: Invariant,
    #[serde(with = "rational_json")]
    pub value_g: Rational,
    #[serde(with = "rational_json")]
    pub value_sym: Rational,
    /// `|value_g - value_sym|`.
    #[serde(with = "rational_json")]
    pub pos_minus: Rational,
    /// `value_g / value_sym`; `None` when the symmetrised value is zero.
    #[serde(with = "rational_json::option")]
    pub pos_quot: Option<Rational>,
}

/// Computes the invariant on `g` and on its symmetric closure.
pub fn price(g: &Digraph, invariant: Invariant) -> Result<PriceReport> {
    let value_g = invariant.eval(g)?;
    let value_sym = invariant.eval(&g.symmetric_closure())?;
    let diff = value_g - value_sym;
    let pos_minus = if diff < Rational::from_integer(0) { -diff } else { diff };
    let pos_quot = (value_sym != Rational::from_integer(0)).then(|| value_g / value_sym);
    Ok(PriceReport {
        invariant,
        value_g,
        value_sym,
        pos_minus,
        pos_quot,
    })
}

/// `sigma(G) - sigma(sym G)`, the transmission price as a signed integer.
/// `None` when `g` is not strongly connected.
pub fn transmission_price(g: &Digraph) -> Option<i64> {
    let s = total_distance(g)? as i64;
    let t = total_distance(&g.symmetric_closure())? as i64;
    Some(s - t)
}

/// Serde adapter writing rationals as `{"num": .., "den": ..}`.
pub mod rational_json {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Rational;

    #[derive(Serialize, Deserialize)]
    struct Frac {
        num: i64,
        den: i64,
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Frac {
            num: *r.numer(),
            den: *r.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let f = Frac::deserialize(d)?;
        if f.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(f.num, f.den))
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            r.map(|r| Frac {
                num: *r.numer(),
                den: *r.denom(),
            })
            .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            match Option::<Frac>::deserialize(d)? {
                None => Ok(None),
                Some(f) if f.den == 0 => Err(serde::de::Error::custom("zero denominator")),
                Some(f) => Ok(Some(Rational::new(f.num, f.den))),
            }
        }
    }
}
