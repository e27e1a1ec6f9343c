//! Closed forms for the transmissions of cycles and of the bags `H_n(k)`,
//! the price cubics in `k`, and the cycle/bag crossover polynomial.
//!
//! The polynomials have fractional coefficients but integral values at
//! every valid `(n, k)`. They are evaluated exactly and the integrality is
//! checked, so a mistyped coefficient shows up as an invariant error rather
//! than as a silently wrong number.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: i64) -> Parity {
        if x.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

fn int(x: i64) -> Rational {
    Rational::from_integer(x)
}

fn integral(r: Rational, what: &str) -> Result<i64> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Invariant(format!("{what} evaluated to the non-integer {r}")))
    }
}

fn check_bag_range(n: i64, k: i64) -> Result<()> {
    if k < 3 || k >= n {
        return Err(Error::arg(format!("bag formulas need 3 <= k < n, got n={n}, k={k}")));
    }
    Ok(())
}

/// `sigma(C_n) = n^2 (n-1) / 2`.
pub fn sigma_cycle(n: i64) -> Result<i64> {
    if n < 2 {
        return Err(Error::arg(format!("cycle formulas need n >= 2, got {n}")));
    }
    integral(q(n * n * (n - 1), 2), "sigma(C_n)")
}

/// Transmission of the symmetrised cycle: `n^3/4` for even `n`,
/// `n(n+1)(n-1)/4` otherwise.
pub fn sigma_cycle_sym(n: i64) -> Result<i64> {
    if n < 2 {
        return Err(Error::arg(format!("cycle formulas need n >= 2, got {n}")));
    }
    let v = match Parity::of(n) {
        Parity::Even => q(n * n * n, 4),
        Parity::Odd => q(n * (n + 1) * (n - 1), 4),
    };
    integral(v, "sigma(sym C_n)")
}

pub fn pos_cycle(n: i64) -> Result<i64> {
    Ok(sigma_cycle(n)? - sigma_cycle_sym(n)?)
}

/// `sigma(B_n) = (n-1)(n^2 + 4n + 6) / 6`.
pub fn sigma_backward(n: i64) -> Result<i64> {
    if n < 3 {
        return Err(Error::arg(format!("backward tournaments need n >= 3, got {n}")));
    }
    integral(q((n - 1) * (n * n + 4 * n + 6), 6), "sigma(B_n)")
}

/// `sigma(H_n(k)) = n^3/2 - n^2/2 + k(1-k)n/2 + (k-1)(k^2+4k+6)/6`.
pub fn sigma_hnk(n: i64, k: i64) -> Result<i64> {
    check_bag_range(n, k)?;
    let v = q(n * n * n, 2) - q(n * n, 2) + q(k * (1 - k) * n, 2) + q((k - 1) * (k * k + 4 * k + 6), 6);
    integral(v, "sigma(H_n(k))")
}

/// Transmission of the symmetrised `H_n(k)`, branching on the parity of `n - k`.
pub fn sigma_hnk_sym(n: i64, k: i64) -> Result<i64> {
    check_bag_range(n, k)?;
    let head = q(n * n * n, 4) - q((k - 2) * n * n, 4);
    let v = match Parity::of(n - k) {
        Parity::Even => head - q((k - 2) * (k - 6) * n, 4) + q(k * (k - 2) * (k - 4), 4),
        Parity::Odd => head - q((k * k - 8 * k + 13) * n, 4) + q((k - 1) * (k - 2) * (k - 3), 4),
    };
    integral(v, "sigma(sym H_n(k))")
}

/// `sigma(H_n(k)) - sigma(sym H_n(k))`.
pub fn pos_hnk(n: i64, k: i64) -> Result<i64> {
    Ok(sigma_hnk(n, k)? - sigma_hnk_sym(n, k)?)
}

fn check_parity(n: i64, k: Rational, parity: Parity) -> Result<()> {
    if k.is_integer() && Parity::of(n - k.to_integer()) != parity {
        return Err(Error::arg(format!(
            "parity tag {} does not match n - k = {}",
            parity.name(),
            n - k.to_integer()
        )));
    }
    Ok(())
}

/// The price of `H_n(k)` as a cubic in `k` for a fixed parity class of `n - k`.
///
/// Agrees with [`pos_hnk`] on integers `k` of the matching parity; `k` may
/// be any rational for analysis of the cubic.
pub fn pos_cubic(n: i64, k: Rational, parity: Parity) -> Result<Rational> {
    check_parity(n, k, parity)?;
    let (c1, c0) = match parity {
        Parity::Even => (q(3 * n * n - 18 * n - 20, 12), q(n * n * n - 4 * n * n + 12 * n - 4, 4)),
        Parity::Odd => (q(3 * n * n - 18 * n - 29, 12), q(n * n * n - 4 * n * n + 13 * n + 2, 4)),
    };
    Ok(-k * k * k / int(12) + q(8 - n, 4) * k * k + c1 * k + c0)
}

/// Derivative of [`pos_cubic`] with respect to `k`.
pub fn pos_cubic_derivative(n: i64, k: Rational, parity: Parity) -> Result<Rational> {
    check_parity(n, k, parity)?;
    let c1 = match parity {
        Parity::Even => q(3 * n * n - 18 * n - 20, 12),
        Parity::Odd => q(3 * n * n - 18 * n - 29, 12),
    };
    Ok(-k * k / int(4) + q(8 - n, 2) * k + c1)
}

/// Larger root of the derivative: `8 - n + sqrt(2n^2 - 22n + c)` with
/// `c = 344/6` (even) or `326/6` (odd). `None` if the roots are complex.
pub fn derivative_root(n: i64, parity: Parity) -> Option<f64> {
    let nf = n as f64;
    let c = match parity {
        Parity::Even => 344.0 / 6.0,
        Parity::Odd => 326.0 / 6.0,
    };
    let disc = 2.0 * nf * nf - 22.0 * nf + c;
    (disc >= 0.0).then(|| 8.0 - nf + disc.sqrt())
}

/// Sign margin used by [`crossover_sign`].
pub const CROSSOVER_MARGIN: f64 = 1e-6;

/// The cubic `pos(C_n) - pos(H_n(r))` in `n`, evaluated in double precision.
pub fn crossover_poly(n: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    (5.0 - 4.0 * s2) / 12.0 * n.powi(3)
        + (11.0 * s2 - 14.0) / 2.0 * n * n
        + (944.0 - 707.0 * s2) / 24.0 * n
        + (2453.0 * s2 - 3408.0) / 48.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Indeterminate,
}

/// Sign of [`crossover_poly`]; values within [`CROSSOVER_MARGIN`] of zero are indeterminate.
pub fn crossover_sign(n: f64) -> Sign {
    let v = crossover_poly(n);
    if v > CROSSOVER_MARGIN {
        Sign::Positive
    } else if v < -CROSSOVER_MARGIN {
        Sign::Negative
    } else {
        Sign::Indeterminate
    }
}

/// Closed-form transmissions of a family member and of its symmetrisation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub n: i64,
    pub k: Option<i64>,
    pub sigma_g: i64,
    pub sigma_sym: i64,
    pub pos: i64,
    /// Parity of `n - k` for bags, of `n` for cycles.
    pub parity_branch: Parity,
}

pub fn cycle_report(n: i64) -> Result<ClosedFormReport> {
    let (sigma_g, sigma_sym) = (sigma_cycle(n)?, sigma_cycle_sym(n)?);
    Ok(ClosedFormReport {
        n,
        k: None,
        sigma_g,
        sigma_sym,
        pos: sigma_g - sigma_sym,
        parity_branch: Parity::of(n),
    })
}

pub fn hnk_report(n: i64, k: i64) -> Result<ClosedFormReport> {
    let (sigma_g, sigma_sym) = (sigma_hnk(n, k)?, sigma_hnk_sym(n, k)?);
    Ok(ClosedFormReport {
        n,
        k: Some(k),
        sigma_g,
        sigma_sym,
        pos: sigma_g - sigma_sym,
        parity_branch: Parity::of(n - k),
    })
}

/// Order `k` in `[3, n-1]` maximising [`pos_hnk`], smallest on ties.
/// Works for every `n >= 4`, unlike [`crate::constructions::k_star`].
pub fn best_bag_order(n: i64) -> Result<i64> {
    if n < 4 {
        return Err(Error::arg(format!("bags need n >= 4, got {n}")));
    }
    let mut best = 3;
    let mut best_pos = pos_hnk(n, 3)?;
    for k in 4..n {
        let p = pos_hnk(n, k)?;
        if p > best_pos {
            best = k;
            best_pos = p;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_values() {
        assert_eq!((sigma_cycle(3).unwrap(), sigma_cycle_sym(3).unwrap()), (9, 6));
        assert_eq!((sigma_cycle(4).unwrap(), sigma_cycle_sym(4).unwrap()), (24, 16));
        assert_eq!((sigma_cycle(2).unwrap(), sigma_cycle_sym(2).unwrap()), (2, 2));
        assert!(sigma_cycle(1).is_err());
    }

    #[test]
    fn backward_sub_term() {
        assert_eq!(sigma_backward(4).unwrap(), 19);
        for n in 3..=60 {
            let sum: i64 = (2..=n).map(|i| (i + 1) * i / 2).sum();
            assert_eq!(sigma_backward(n).unwrap(), sum);
        }
    }

    #[test]
    fn cubic_matches_closed_form() {
        for n in 11..=40 {
            for k in 3..n {
                let par = Parity::of(n - k);
                assert_eq!(pos_cubic(n, int(k), par).unwrap(), int(pos_hnk(n, k).unwrap()), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn parity_tag_checked() {
        assert!(pos_cubic(12, int(5), Parity::Even).is_err());
        assert!(pos_cubic_derivative(12, int(4), Parity::Odd).is_err());
        // Non-integral k carries no parity.
        assert!(pos_cubic_derivative(11, q(11, 2), Parity::Even).is_ok());
    }

    #[test]
    fn derivative_at_half_n() {
        for n in (11..=60).filter(|n| n % 4 != 2) {
            let d = pos_cubic_derivative(n, q(n, 2), Parity::Even).unwrap();
            assert_eq!(d, q(-3 * n * n + 24 * n - 80, 48));
            assert!(d < int(0));
        }
    }

    #[test]
    fn derivative_roots_are_roots() {
        for n in 11..=60 {
            for par in [Parity::Even, Parity::Odd] {
                let r = derivative_root(n, par).unwrap();
                let c1 = match par {
                    Parity::Even => (3 * n * n - 18 * n - 20) as f64 / 12.0,
                    Parity::Odd => (3 * n * n - 18 * n - 29) as f64 / 12.0,
                };
                let d = -r * r / 4.0 + (8 - n) as f64 / 2.0 * r + c1;
                assert!(d.abs() < 1e-8, "n={n} {par:?}: {d}");
            }
        }
        let r9 = 9.0 * (2f64.sqrt() - 1.0) + 8.0 - 11.0 * 2f64.sqrt() / 2.0;
        let diff = r9 - derivative_root(9, Parity::Odd).unwrap();
        assert!((diff - 0.668).abs() < 1e-3);
        assert!((diff - ((49.0f64 / 2.0).sqrt() - (55.0f64 / 3.0).sqrt())).abs() < 1e-12);
    }

    #[test]
    fn crossover_sign_table() {
        assert_eq!(crossover_sign(0.0), Sign::Positive);
        assert_eq!(crossover_sign(1.0), Sign::Negative);
        assert_eq!(crossover_sign(3.0), Sign::Negative);
        assert_eq!(crossover_sign(4.0), Sign::Positive);
        assert_eq!(crossover_sign(10.0), Sign::Positive);
        assert_eq!(crossover_sign(11.0), Sign::Negative);
    }

    #[test]
    fn reports() {
        let c = cycle_report(5).unwrap();
        assert_eq!((c.sigma_g, c.sigma_sym, c.pos), (50, 30, 20));
        assert_eq!(c.parity_branch, Parity::Odd);
        let h = hnk_report(9, 4).unwrap();
        assert_eq!(h.parity_branch, Parity::Odd);
        assert_eq!(h.pos, h.sigma_g - h.sigma_sym);
    }
}
