//! The `xi` refinement engine.
//!
//! For a scenario and an integer `m` set `alpha = (m - 1 - m0/p - 1/beta) xi`
//! and `alpha0 = ceil(alpha)`. Whenever condition (iv) holds the inequality
//! `m xi >= 2g - 2 + alpha0` improves the lower bound on `xi`; whenever
//! condition (v) holds at an `m` past the separation threshold the
//! `m`-canonical map is birational.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::scenario::Scenario;
use crate::error::BoundsError;
use crate::rational::{self, Rational};

/// Upper bound on saturation sweeps; each productive sweep strictly raises
/// `xi` inside a finite set, so this is never reached in practice.
const MAX_SWEEPS: usize = 10_000;

/// Strongest criterion that held at a step. Condition (v) implies (iv).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    None,
    ConditionIv,
    ConditionV,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub m: i64,
    pub alpha: Rational,
    pub alpha0: BigInt,
    pub xi_before: Rational,
    pub xi_after: Rational,
    pub criterion: Criterion,
}

impl TraceStep {
    /// Recomputes the step from `(m, xi_before)` and compares.
    pub fn replays(&self, sc: &Scenario) -> bool {
        refine_step(sc, self.m, &self.xi_before) == *self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub start_xi: Rational,
    pub xi_final: Rational,
    pub m_birational: Option<i64>,
    pub trace: Vec<TraceStep>,
    pub notes: Vec<String>,
}

impl BoundResult {
    pub fn replays(&self, sc: &Scenario) -> bool {
        self.trace.iter().all(|s| s.replays(sc))
    }

    pub fn step_at(&self, m: i64) -> Option<&TraceStep> {
        self.trace.iter().find(|s| s.m == m)
    }
}

pub fn alpha_of(sc: &Scenario, m: i64, xi: &Rational) -> Rational {
    sc.coefficient(m) * xi
}

pub fn condition_iv(sc: &Scenario, alpha: &Rational, positive_coeff: bool) -> bool {
    *alpha > rational::int(1) || (sc.nonhyperelliptic && sc.even_curve && positive_coeff)
}

pub fn condition_v(sc: &Scenario, alpha: &Rational, positive_coeff: bool) -> bool {
    *alpha > rational::int(2)
        || (rational::ceil(alpha) >= BigInt::from(2) && sc.nonhyperelliptic)
        || (sc.nonhyperelliptic && sc.even_curve && positive_coeff)
}

/// Limit of the inequality as `m` grows: `xi >= (2g - 2) / (1 + m0/p + 1/beta)`.
pub fn xi_seed_asymptotic(sc: &Scenario) -> Rational {
    rational::int(2 * sc.g_min - 2) / (rational::int(1) + sc.offset())
}

/// `max(xi0, asymptotic seed)`.
pub fn starting_xi(sc: &Scenario) -> Rational {
    let seed = xi_seed_asymptotic(sc);
    match &sc.xi0 {
        Some(xi0) if *xi0 > seed => xi0.clone(),
        _ => seed,
    }
}

pub fn refine_step(sc: &Scenario, m: i64, xi: &Rational) -> TraceStep {
    refine_step_with(sc, m, xi, rational::ceil)
}

/// [`refine_step`] with the `alpha -> alpha0` rounding supplied by the
/// caller. Used to check that the checkpoints detect a wrong rounding rule.
#[doc(hidden)]
pub fn refine_step_with(sc: &Scenario, m: i64, xi: &Rational, round: fn(&Rational) -> BigInt) -> TraceStep {
    let coeff = sc.coefficient(m);
    let positive = coeff.is_positive();
    let alpha = &coeff * xi;
    let alpha0 = round(&alpha);
    let (criterion, xi_after) = if condition_iv(sc, &alpha, positive) {
        let candidate = Rational::new(BigInt::from(2 * sc.g_min - 2) + &alpha0, BigInt::from(m));
        let criterion = if condition_v(sc, &alpha, positive) { Criterion::ConditionV } else { Criterion::ConditionIv };
        (criterion, if candidate > *xi { candidate } else { xi.clone() })
    } else {
        (Criterion::None, xi.clone())
    };
    TraceStep { m, alpha, alpha0, xi_before: xi.clone(), xi_after, criterion }
}

pub fn refine_xi(sc: &Scenario, m: i64, xi: &Rational) -> Rational {
    refine_step(sc, m, xi).xi_after
}

/// Folds [`refine_step`] over `schedule`, starting from [`starting_xi`].
/// `m_birational` is the least scheduled `m >= sep_m_min` at which
/// condition (v) holds for the `xi` in force when that step begins.
pub fn run_schedule(sc: &Scenario, schedule: &[i64]) -> Result<BoundResult, BoundsError> {
    if schedule.is_empty() {
        return Err(BoundsError::EmptySchedule);
    }
    let start = starting_xi(sc);
    let mut xi = start.clone();
    let mut trace = Vec::with_capacity(schedule.len());
    let mut m_birational = None;
    for &m in schedule {
        let step = refine_step(sc, m, &xi);
        if m >= sc.sep_m_min && step.criterion == Criterion::ConditionV && m_birational.is_none_or(|b| m < b) {
            m_birational = Some(m);
        }
        xi = step.xi_after.clone();
        trace.push(step);
    }
    Ok(BoundResult { start_xi: start, xi_final: xi, m_birational, trace, notes: Vec::new() })
}

pub fn default_m_hi(sc: &Scenario) -> i64 {
    12 * sc.m0
}

/// Saturates `xi` by sweeping `m = m0+2 ..= m_hi` until nothing changes,
/// then returns the least `m` in `[sep_m_min, m_hi]` where condition (v)
/// holds. The trace keeps every step that raised `xi`, followed by the
/// firing step.
pub fn min_birational_m(sc: &Scenario, m_hi: i64) -> Result<BoundResult, BoundsError> {
    if m_hi < sc.sep_m_min {
        return Err(BoundsError::RangeTooSmall { m_hi, sep: sc.sep_m_min });
    }
    let start = starting_xi(sc);
    let mut xi = start.clone();
    let mut trace = Vec::new();
    let mut sweeps = 0usize;
    loop {
        let mut changed = false;
        for m in sc.m0 + 2..=m_hi {
            let step = refine_step(sc, m, &xi);
            if step.xi_after != step.xi_before {
                xi = step.xi_after.clone();
                trace.push(step);
                changed = true;
            }
        }
        sweeps += 1;
        if !changed || sweeps >= MAX_SWEEPS {
            break;
        }
    }
    let mut notes = vec![format!("saturated after {sweeps} sweeps up to m = {m_hi}")];
    let mut m_birational = None;
    for m in sc.sep_m_min..=m_hi {
        let step = refine_step(sc, m, &xi);
        if step.criterion == Criterion::ConditionV {
            m_birational = Some(m);
            trace.push(step);
            break;
        }
    }
    if m_birational.is_none() {
        notes.push(format!("no birational m in [{}, {m_hi}]", sc.sep_m_min));
    }
    Ok(BoundResult { start_xi: start, xi_final: xi, m_birational, trace, notes })
}

/// Least `m` in `[from, to]` with condition (v) at a fixed `xi`, without
/// refining.
pub fn first_firing_m(sc: &Scenario, xi: &Rational, from: i64, to: i64) -> Option<i64> {
    (from..=to).find(|&m| {
        let coeff = sc.coefficient(m);
        condition_v(sc, &(&coeff * xi), coeff.is_positive())
    })
}

/// `deg D >= 8 xi > 2` for the product-of-pencils configuration.
pub fn prop_b_check(xi: &Rational) -> bool {
    rational::int(8) * xi > rational::int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use num_traits::Zero;

    fn sc(m0: i64, p: i64, beta: Rational, g: i64, sep: i64) -> Scenario {
        Scenario::new(m0, p, beta, g, sep).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let d5 = sc(5, 1, ratio(3, 5), 2, 14);
        assert_eq!(alpha_of(&d5, 14, &ratio(1, 3)), ratio(19, 9));
        let a2 = sc(5, 2, ratio(2, 7), 3, 14);
        assert_eq!(alpha_of(&a2, 14, &ratio(4, 7)), int(4));
        for m0 in 2..6 {
            let flat = sc(m0, 1, int(1), 2, m0 + 2);
            assert!(Zero::is_zero(&alpha_of(&flat, m0 + 2, &ratio(7, 3))));
        }
    }

    #[test]
    fn condition_examples() {
        let plain = sc(3, 1, ratio(1, 3), 2, 8);
        let flagged = plain.clone().even_nonhyperelliptic();
        let mut nonhyp = plain.clone();
        nonhyp.nonhyperelliptic = true;
        assert!(condition_iv(&plain, &ratio(8, 7), false));
        assert!(!condition_iv(&plain, &int(1), false));
        assert!(condition_iv(&flagged, &ratio(1, 2), true));
        assert!(!condition_iv(&flagged, &ratio(1, 2), false));
        assert!(condition_v(&plain, &ratio(19, 9), false));
        assert!(!condition_v(&plain, &int(2), false));
        assert!(condition_v(&nonhyp, &ratio(3, 2), false));
        assert!(!condition_v(&nonhyp, &int(1), false));
        assert!(condition_v(&flagged, &ratio(1, 2), true));
    }

    #[test]
    fn seed_examples() {
        assert_eq!(xi_seed_asymptotic(&sc(3, 1, ratio(1, 3), 2, 8)), ratio(2, 7));
        assert_eq!(xi_seed_asymptotic(&sc(3, 1, ratio(1, 4), 2, 14)), ratio(1, 4));
        assert_eq!(xi_seed_asymptotic(&sc(2, 1, int(1), 2, 4)), ratio(1, 2));
    }

    #[test]
    fn refine_examples() {
        let case2 = sc(3, 1, ratio(1, 3), 2, 8);
        let step = refine_step(&case2, 11, &ratio(2, 7));
        assert_eq!((step.alpha.clone(), step.alpha0.clone()), (ratio(8, 7), BigInt::from(2)));
        assert_eq!(step.xi_after, ratio(4, 11));
        let type_i = sc(3, 1, ratio(1, 4), 2, 14);
        let step = refine_step(&type_i, 17, &ratio(1, 4));
        assert_eq!((step.alpha.clone(), step.alpha0.clone()), (ratio(9, 4), BigInt::from(3)));
        assert_eq!(step.xi_after, ratio(5, 17));
        // alpha = 4/7 <= 1 and no flags: unchanged
        assert_eq!(refine_xi(&case2, 9, &ratio(2, 7)), ratio(2, 7));
        // an integral alpha is its own ceiling
        let step = refine_step(&case2, 14, &ratio(2, 7));
        assert_eq!(step.alpha, int(2));
        assert_eq!(step.alpha0, BigInt::from(2));
    }

    #[test]
    fn schedule_examples() {
        let d5_2 = sc(5, 1, ratio(3, 5), 2, 14).with_xi0(ratio(4, 17)).unwrap();
        let res = run_schedule(&d5_2, &[12, 14]).unwrap();
        assert_eq!(res.step_at(12).unwrap().xi_after, ratio(1, 3));
        assert_eq!(res.step_at(14).unwrap().alpha, ratio(19, 9));
        assert_eq!(res.m_birational, Some(14));
        assert!(res.replays(&d5_2));

        let a_i = sc(5, 2, ratio(2, 7), 2, 14).with_xi0(ratio(2, 7)).unwrap();
        let res = run_schedule(&a_i, &[12, 14]).unwrap();
        assert_eq!(res.step_at(12).unwrap().alpha, ratio(10, 7));
        assert_eq!(res.step_at(12).unwrap().xi_after, ratio(1, 3));
        assert_eq!(res.step_at(14).unwrap().alpha, ratio(7, 3));
        assert_eq!(res.m_birational, Some(14));

        let flat = sc(3, 1, int(1), 2, 5);
        let res = run_schedule(&flat, &[5]).unwrap();
        assert_eq!(res.xi_final, res.start_xi);
        assert_eq!(res.m_birational, None);
        assert_eq!(run_schedule(&flat, &[]), Err(BoundsError::EmptySchedule));
    }

    #[test]
    fn min_birational_examples() {
        let case1 = sc(3, 1, ratio(1, 3), 4, 5).with_xi0(ratio(2, 3)).unwrap();
        assert_eq!(min_birational_m(&case1, 36).unwrap().m_birational, Some(10));
        let case2 = sc(3, 1, ratio(1, 3), 2, 8);
        let res = min_birational_m(&case2, 36).unwrap();
        assert_eq!(res.m_birational, Some(13));
        assert!(res.replays(&case2));
        let type_i = sc(4, 1, ratio(1, 5), 2, 18);
        assert_eq!(min_birational_m(&type_i, 48).unwrap().m_birational, Some(18));
        assert!(matches!(min_birational_m(&type_i, 17), Err(BoundsError::RangeTooSmall { .. })));
        let hopeless = sc(3, 1, ratio(1, 100), 2, 5);
        let res = min_birational_m(&hopeless, 6).unwrap();
        assert_eq!(res.m_birational, None);
        assert!(res.notes.iter().any(|n| n.contains("no birational")));
    }

    #[test]
    fn prop_b_examples() {
        assert!(prop_b_check(&ratio(1, 3)));
        assert!(!prop_b_check(&ratio(1, 4)));
        assert!(prop_b_check(&ratio(2, 5)));
    }
}
