//! Exhaustive checks of the price bounds and of the extremal families.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{pos_cycle, sigma_backward};
use crate::constructions::{b_family, backward_tournament, cycle, in_star, l_set};
use crate::error::{Error, Result};
use crate::invariants::{price, rational_json, transmission, Invariant, Rational};
use crate::iso::{canonical_form, CanonicalForm};

use super::enumerate::{digraph_classes, strongly_connected_classes, strongly_connected_tournament_classes};
use super::{Objective, SearchOutcome};

/// Largest order accepted by [`verify_theorems`].
pub const THEOREM_MAX_ORDER: usize = 5;

/// Bound and equality-family check for one invariant at one order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub invariant: Invariant,
    pub n: usize,
    /// `"strongly-connected"` or `"all"`.
    pub domain: &'static str,
    pub classes_checked: usize,
    pub bound_minus: i64,
    pub bound_quot: i64,
    #[serde(with = "rational_json")]
    pub best_minus: Rational,
    #[serde(with = "rational_json")]
    pub best_quot: Rational,
    pub bounds_hold: bool,
    /// Classes whose difference price equals the bound.
    pub minus_equality: Vec<CanonicalForm>,
    /// Classes whose quotient price equals the bound.
    pub quot_equality: Vec<CanonicalForm>,
    /// The family claimed to be exactly the equality cases.
    pub expected: Vec<CanonicalForm>,
    /// Expected classes missing from an equality set.
    pub missing: Vec<CanonicalForm>,
    /// Classes in an equality set that are not expected.
    pub unexpected: Vec<CanonicalForm>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub diameter: FamilyCheck,
    pub domination: FamilyCheck,
    pub passed: bool,
}

fn family_check(
    n: usize,
    invariant: Invariant,
    classes: &[CanonicalForm],
    domain: &'static str,
    expected: BTreeSet<CanonicalForm>,
) -> Result<FamilyCheck> {
    let reports = classes
        .par_iter()
        .map(|cf| price(&cf.to_digraph(), invariant).map(|r| (*cf, r)))
        .collect::<Result<Vec<_>>>()?;
    let (bm, bq) = (n as i64 - 2, n as i64 - 1);
    let zero = Rational::from_integer(0);
    let mut best_minus = zero;
    let mut best_quot = zero;
    let mut minus_eq = BTreeSet::new();
    let mut quot_eq = BTreeSet::new();
    for (cf, r) in &reports {
        let q = r
            .pos_quot
            .ok_or_else(|| Error::Invariant(format!("zero {invariant} on a symmetrisation")))?;
        best_minus = best_minus.max(r.pos_minus);
        best_quot = best_quot.max(q);
        if r.pos_minus == Rational::from_integer(bm) {
            minus_eq.insert(*cf);
        }
        if q == Rational::from_integer(bq) {
            quot_eq.insert(*cf);
        }
    }
    let bounds_hold = best_minus <= Rational::from_integer(bm) && best_quot <= Rational::from_integer(bq);
    let missing: BTreeSet<_> = expected
        .iter()
        .filter(|cf| !minus_eq.contains(cf) || !quot_eq.contains(cf))
        .copied()
        .collect();
    let unexpected: BTreeSet<_> = minus_eq.union(&quot_eq).filter(|cf| !expected.contains(cf)).copied().collect();
    let passed = bounds_hold && missing.is_empty() && unexpected.is_empty();
    Ok(FamilyCheck {
        invariant,
        n,
        domain,
        classes_checked: classes.len(),
        bound_minus: bm,
        bound_quot: bq,
        best_minus,
        best_quot,
        bounds_hold,
        minus_equality: minus_eq.into_iter().collect(),
        quot_equality: quot_eq.into_iter().collect(),
        expected: expected.into_iter().collect(),
        missing: missing.into_iter().collect(),
        unexpected: unexpected.into_iter().collect(),
        passed,
    })
}

fn forms<'a>(gs: impl IntoIterator<Item = &'a crate::graph::Digraph>) -> Result<BTreeSet<CanonicalForm>> {
    gs.into_iter().map(canonical_form).collect()
}

/// Checks the diameter and domination price bounds at order `n` over every
/// class, and that the equality cases are exactly the `B_n` family and
/// `L_1(IS_n)` respectively.
///
/// Diameter is checked over strongly connected digraphs, domination over all
/// digraphs.
pub fn verify_theorems(n: usize) -> Result<TheoremReport> {
    if !(3..=THEOREM_MAX_ORDER).contains(&n) {
        return Err(Error::size(format!(
            "theorem checks run for 3 <= n <= {THEOREM_MAX_ORDER}, got {n}"
        )));
    }
    let strong = strongly_connected_classes(n)?;
    let all = digraph_classes(n)?;
    let diameter = family_check(
        n,
        Invariant::Diameter,
        &strong,
        "strongly-connected",
        forms(&b_family(n)?)?,
    )?;
    let domination = family_check(n, Invariant::Domination, &all, "all", forms(&l_set(&in_star(n)?, 1)?)?)?;
    let passed = diameter.passed && domination.passed;
    Ok(TheoremReport {
        n,
        diameter,
        domination,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankedClass {
    pub form: CanonicalForm,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub classes_checked: usize,
    pub best_value: i64,
    /// Closed-form price of the directed cycle.
    pub cycle_value: i64,
    pub maximizers: Vec<CanonicalForm>,
    /// The cycle is the only maximiser and its value matches the closed form.
    pub unique_cycle: bool,
    /// Five best classes, by value then canonical form.
    pub top: Vec<RankedClass>,
    pub passed: bool,
    pub elapsed: f64,
}

fn ranked(classes: &[CanonicalForm], objective: Objective) -> Result<Vec<RankedClass>> {
    let mut v = classes
        .par_iter()
        .map(|cf| {
            objective
                .value(&cf.to_digraph())
                .map(|value| RankedClass { form: *cf, value })
                .ok_or_else(|| Error::Invariant(format!("{objective} undefined on an enumerated class")))
        })
        .collect::<Result<Vec<_>>>()?;
    v.sort_by(|a, b| b.value.cmp(&a.value).then(a.form.cmp(&b.form)));
    Ok(v)
}

/// Over all strongly connected classes of order `n <= 6`, is the directed
/// cycle the unique maximiser of the transmission price?
pub fn verify_conjecture(n: usize) -> Result<ConjectureReport> {
    if n < 2 {
        return Err(Error::arg("the cycle comparison needs n >= 2"));
    }
    let start = Instant::now();
    let classes = strongly_connected_classes(n)?;
    let all = ranked(&classes, Objective::Sigma)?;
    let best_value = all[0].value;
    let maximizers: Vec<CanonicalForm> = all.iter().take_while(|r| r.value == best_value).map(|r| r.form).collect();
    let cycle_value = pos_cycle(n as i64)?;
    let unique_cycle = best_value == cycle_value && maximizers == [canonical_form(&cycle(n)?)?];
    Ok(ConjectureReport {
        n,
        classes_checked: classes.len(),
        best_value,
        cycle_value,
        maximizers,
        unique_cycle,
        top: all.into_iter().take(5).collect(),
        passed: unique_cycle,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TournamentReport {
    pub n: usize,
    pub classes_checked: usize,
    pub best_sigma: u64,
    /// Closed-form transmission of the backward tournament.
    pub backward_sigma: u64,
    pub maximizers: Vec<CanonicalForm>,
    pub unique_backward: bool,
    pub passed: bool,
}

/// Over all strongly connected tournament classes of order `n`, is the
/// backward tournament the unique transmission maximiser?
pub fn tournament_extremality(n: usize) -> Result<TournamentReport> {
    if n < 3 {
        return Err(Error::arg("strongly connected tournaments need n >= 3"));
    }
    let classes = strongly_connected_tournament_classes(n)?;
    let sigmas = classes
        .iter()
        .map(|cf| transmission(&cf.to_digraph()).map(|s| (*cf, s)))
        .collect::<Result<Vec<_>>>()?;
    let best_sigma = sigmas.iter().map(|&(_, s)| s).max().expect("at least one class");
    let maximizers: Vec<_> = sigmas.iter().filter(|&&(_, s)| s == best_sigma).map(|&(cf, _)| cf).collect();
    let backward_sigma = sigma_backward(n as i64)? as u64;
    let unique_backward = best_sigma == backward_sigma && maximizers == [canonical_form(&backward_tournament(n)?)?];
    Ok(TournamentReport {
        n,
        classes_checked: classes.len(),
        best_sigma,
        backward_sigma,
        maximizers,
        unique_backward,
        passed: unique_backward,
    })
}

/// Maximises an objective over every class of order `n <= 6`: strongly
/// connected classes for the distance objectives, all classes for domination.
pub fn exhaustive_search(n: usize, objective: Objective) -> Result<SearchOutcome> {
    let start = Instant::now();
    let classes = if objective.needs_strong() {
        strongly_connected_classes(n)?
    } else {
        digraph_classes(n)?
    };
    let all = ranked(&classes, objective)?;
    let best_value = all[0].value;
    let maximizers: Vec<CanonicalForm> = all.iter().take_while(|r| r.value == best_value).map(|r| r.form).collect();
    Ok(SearchOutcome {
        n,
        objective,
        best_value,
        graphs: maximizers.iter().map(CanonicalForm::to_digraph).collect(),
        maximizers,
        exhaustive: true,
        graphs_visited: classes.len() as u64,
        elapsed: start.elapsed().as_secs_f64(),
        trace: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorems_at_four() {
        let r = verify_theorems(4).unwrap();
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.diameter.best_minus, Rational::from_integer(2));
        assert_eq!(r.domination.best_minus, Rational::from_integer(2));
    }

    #[test]
    fn domination_at_three_has_an_extra_case() {
        let r = verify_theorems(3).unwrap();
        assert!(r.diameter.passed);
        assert!(r.domination.bounds_hold);
        let c3 = canonical_form(&cycle(3).unwrap()).unwrap();
        assert_eq!(r.domination.unexpected, vec![c3]);
        assert!(!r.passed);
    }

    #[test]
    fn conjecture_small() {
        for n in 2..=5 {
            let r = verify_conjecture(n).unwrap();
            assert!(r.passed, "n={n}: {r:?}");
        }
        assert_eq!(verify_conjecture(4).unwrap().best_value, 8);
    }

    #[test]
    fn tournaments_small() {
        for n in 3..=6 {
            assert!(tournament_extremality(n).unwrap().passed);
        }
        assert_eq!(tournament_extremality(5).unwrap().best_sigma, 34);
    }

    #[test]
    fn exhaustive_matches_conjecture() {
        let s = exhaustive_search(4, Objective::Sigma).unwrap();
        assert_eq!(s.best_value, 8);
        assert_eq!(s.maximizers, vec![canonical_form(&cycle(4).unwrap()).unwrap()]);
        assert!(s.exhaustive);
    }
}
