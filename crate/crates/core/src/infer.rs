//! Recovering the basket from a plurigenus sequence.
//!
//! Given `P_2..P_M` and all but one of `chi(O)`, `K^3`, the correction sums
//! `sum_Q R_m(Q)` are pinned down (exactly, or up to one unknown scalar).
//! Baskets are enumerated as non-decreasing sequences over the normalized
//! quotient types with `r <= r_max`, depth-first, pruning any branch whose
//! partial sums overshoot a target or can no longer reach it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::InferError;
use crate::lp::{self, LpOutcome};
use crate::rational::{self, Rational};
use crate::reid::{self, Basket, BasketSingularity};

pub const DEFAULT_R_MAX: u32 = 30;
pub const DEFAULT_SIZE_MAX: u32 = 12;

/// Upper bound on the number of matches listed in an ambiguity error.
const MAX_LISTED: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceProblem {
    /// `m -> P_m` for `m >= 2`.
    pub pluri: BTreeMap<i64, i64>,
    pub chi: Option<i64>,
    pub k3: Option<Rational>,
    pub r_max: u32,
    pub size_max: u32,
}

impl InferenceProblem {
    pub fn new(pluri: impl IntoIterator<Item = (i64, i64)>, chi: Option<i64>, k3: Option<Rational>) -> Self {
        Self { pluri: pluri.into_iter().collect(), chi, k3, r_max: DEFAULT_R_MAX, size_max: DEFAULT_SIZE_MAX }
    }

    pub fn with_bounds(mut self, r_max: u32, size_max: u32) -> Self {
        self.r_max = r_max;
        self.size_max = size_max;
        self
    }

    fn validate(&self) -> Result<(), InferError> {
        if let Some((&m, _)) = self.pluri.iter().next() {
            if m < 2 {
                return Err(InferError::Usage(format!("plurigenera must start at m >= 2, got m = {m}")));
            }
        }
        if !self.pluri.contains_key(&2) {
            return Err(InferError::Usage("P_2 is required".into()));
        }
        if self.pluri.keys().next_back().copied().unwrap_or(0) < 3 {
            return Err(InferError::Usage("need plurigenera up to at least m = 3".into()));
        }
        if self.chi.is_none() && self.k3.is_none() {
            return Err(InferError::Usage("at most one of chi and K^3 may be unknown".into()));
        }
        if let Some(k3) = &self.k3 {
            if !k3.is_positive() {
                return Err(InferError::Usage("K^3 must be positive".into()));
            }
        }
        if !(2..=MAX_SEARCH_R).contains(&self.r_max) {
            return Err(InferError::Usage(format!("r_max must lie in 2..={MAX_SEARCH_R}, got {}", self.r_max)));
        }
        if self.size_max > MAX_SEARCH_SIZE {
            return Err(InferError::Usage(format!("size_max must be at most {MAX_SEARCH_SIZE}")));
        }
        if self.pluri.keys().any(|&m| m > MAX_SEARCH_M) {
            return Err(InferError::Usage(format!("plurigenera are accepted up to m = {MAX_SEARCH_M}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InferenceResult {
    /// Conjugation-normalized.
    pub basket: Basket,
    pub chi: i64,
    pub k3: Rational,
    /// True when the plurigenus formula reproduces every supplied `P_m`.
    pub residual: bool,
}

/// Largest `r_max` for which the scaled integer search cannot overflow.
pub const MAX_SEARCH_R: u32 = 42;
const MAX_SEARCH_M: i64 = 1000;
const MAX_SEARCH_SIZE: u32 = 100;

/// Common denominator `12 lcm(2..=r_max)` of every `R_m(Q)` with `r <= r_max`.
fn scale(r_max: u32) -> i128 {
    12 * (2..=r_max as i128).fold(1, |acc, r| acc.lcm(&r))
}

/// `S * R_m(Q)` for `S` a multiple of `12 r`.
fn scaled_correction(q: &BasketSingularity, m: i64, s: i128) -> i128 {
    let r = q.r() as i64;
    let b = q.b() as i64;
    let m_bar = m.rem_euclid(r);
    let periodic: i64 = (1..m_bar).map(|j| (b * j) % r).map(|t| t * (r - t)).sum();
    let numer = (r * r - 1) * (m - m_bar) + 6 * periodic;
    numer as i128 * (s / (12 * r as i128))
}

/// `12 c_m` where `c_m K^3` is the volume term of `P_m`.
fn volume_weight(m: i64) -> i128 {
    (m * (m - 1) * (2 * m - 1)) as i128
}

/// Depth-first enumeration of multisets over `types` in difference form.
///
/// Column `i` holds `R_{m_i} - R_{m_{i-1}}` (with `R_{m_0}` itself first),
/// which is non-negative for every point, so every column can be pruned on
/// its own. In exact mode each column must hit `bound[i]`; otherwise it
/// must stay at or below `bound[i]` and `K^3` is read off the `m = 2`
/// column.
struct Search<'a> {
    types: &'a [BasketSingularity],
    ms: Vec<i64>,
    values: Vec<Vec<i128>>,
    /// `suffix_max[t][i]` is the largest `values[u][i]` over `u >= t`.
    suffix_max: Vec<Vec<i128>>,
    /// Every `values[u][i]` with `u >= t` is a multiple of `grain[t]`.
    grain: Vec<i128>,
    bound: Vec<i128>,
    /// `S (P_m + (2m-1) chi)`, used when `K^3` is unknown.
    raw_targets: Option<Vec<i128>>,
    size_max: usize,
    found: Vec<(Vec<usize>, Option<i128>)>,
    best: Option<(usize, Vec<usize>)>,
}

impl<'a> Search<'a> {
    fn new(
        types: &'a [BasketSingularity],
        ms: Vec<i64>,
        s: i128,
        bound: Vec<i128>,
        raw_targets: Option<Vec<i128>>,
        size_max: u32,
    ) -> Self {
        let values: Vec<Vec<i128>> = types
            .iter()
            .map(|q| {
                let raw: Vec<i128> = ms.iter().map(|&m| scaled_correction(q, m, s)).collect();
                (0..raw.len()).map(|i| if i == 0 { raw[0] } else { raw[i] - raw[i - 1] }).collect()
            })
            .collect();
        let mut suffix_max = vec![vec![0i128; ms.len()]; types.len() + 1];
        for t in (0..types.len()).rev() {
            for i in 0..ms.len() {
                suffix_max[t][i] = values[t][i].max(suffix_max[t + 1][i]);
            }
        }
        let mut grain = vec![s / 12; types.len() + 1];
        let mut lcm = 1i128;
        for t in (0..types.len()).rev() {
            lcm = lcm.lcm(&(types[t].r() as i128));
            grain[t] = s / (12 * lcm);
        }
        Self {
            types,
            ms,
            values,
            suffix_max,
            grain,
            bound,
            raw_targets,
            size_max: size_max as usize,
            found: Vec::new(),
            best: None,
        }
    }

    fn run(&mut self) {
        let sums = vec![0i128; self.ms.len()];
        let mut chosen = Vec::new();
        self.visit(0, &mut chosen, &sums);
    }

    fn visit(&mut self, start: usize, chosen: &mut Vec<usize>, sums: &[i128]) {
        if self.raw_targets.is_none() {
            let matched = sums.iter().zip(&self.bound).filter(|(s, b)| s == b).count();
            if matched == self.ms.len() {
                self.found.push((chosen.clone(), None));
            } else if self.best.as_ref().is_none_or(|(b, _)| matched > *b) {
                self.best = Some((matched, chosen.clone()));
            }
        } else if let Some(k3) = self.implied_k3(sums) {
            self.found.push((chosen.clone(), Some(k3)));
        }
        if chosen.len() == self.size_max || self.found.len() > MAX_LISTED {
            return;
        }
        let slots = (self.size_max - chosen.len() - 1) as i128;
        let mut next = vec![0i128; sums.len()];
        for t in start..self.types.len() {
            for (i, n) in next.iter_mut().enumerate() {
                *n = sums[i] + self.values[t][i];
            }
            if !self.feasible(t, slots, &next) {
                continue;
            }
            chosen.push(t);
            self.visit(t, chosen, &next.clone());
            chosen.pop();
            if self.found.len() > MAX_LISTED {
                return;
            }
        }
    }

    fn feasible(&self, t: usize, slots: i128, sums: &[i128]) -> bool {
        let exact = self.raw_targets.is_none();
        sums.iter().enumerate().all(|(i, s)| {
            *s <= self.bound[i]
                && (!exact
                    || (s + self.suffix_max[t][i] * slots >= self.bound[i] && (self.bound[i] - s) % self.grain[t] == 0))
        })
    }

    /// `S K^3` when one positive `K^3` closes every equation.
    fn implied_k3(&self, diffs: &[i128]) -> Option<i128> {
        let targets = self.raw_targets.as_ref()?;
        let mut raw = 0i128;
        let mut k3 = None;
        for (i, d) in diffs.iter().enumerate() {
            raw += d;
            let rest = targets[i] - raw;
            // rest = c_m S K^3, and c_2 = 1/2
            let k = *k3.get_or_insert(2 * rest);
            if k <= 0 || 12 * rest != volume_weight(self.ms[i]) * k {
                return None;
            }
        }
        k3
    }

    fn basket(&self, idx: &[usize]) -> Basket {
        Basket::from_points(idx.iter().map(|&t| self.types[t]))
    }
}

/// Normalized quotient types with `r <= r_max`, largest `r` first so that
/// the suffix bounds shrink as the search descends.
fn search_types(r_max: u32) -> Vec<BasketSingularity> {
    let mut types = reid::normalized_quotient_types(r_max);
    types.sort_by(|a, b| b.r().cmp(&a.r()).then(a.b().cmp(&b.b())));
    types
}

/// Finds the unique (up to conjugation) basket within the problem's bounds
/// reproducing every supplied plurigenus, solving for `chi` or `K^3` when
/// one of them is absent.
pub fn infer_basket(problem: &InferenceProblem) -> Result<InferenceResult, InferError> {
    problem.validate()?;
    let types = search_types(problem.r_max);
    let s = scale(problem.r_max);
    let mut matches: Vec<InferenceResult> = Vec::new();
    let mut diagnostics: Vec<String> = Vec::new();

    match (&problem.chi, &problem.k3) {
        (Some(chi), Some(k3)) => {
            search_exact(problem, &types, s, *chi, k3, &mut matches, &mut diagnostics);
        }
        (None, Some(k3)) => {
            let (lo, hi) = chi_range(problem, &types, k3);
            for chi in lo..=hi {
                search_exact(problem, &types, s, chi, k3, &mut matches, &mut diagnostics);
            }
            if lo > hi {
                diagnostics.push("no admissible chi".into());
            }
        }
        (Some(chi), None) => {
            let ms: Vec<i64> = problem.pluri.keys().copied().collect();
            let raw: Vec<i128> = problem.pluri.iter().map(|(&m, &p)| (p + (2 * m - 1) * chi) as i128 * s).collect();
            // K^3 > 0 and c_m increases with m, so every column sits strictly
            // below its K^3-free target.
            let bound = (0..raw.len()).map(|i| if i == 0 { raw[0] } else { raw[i] - raw[i - 1] } - 1).collect();
            let mut search = Search::new(&types, ms, s, bound, Some(raw), problem.size_max);
            search.run();
            for (idx, k3) in &search.found {
                let k3 = Rational::new(BigInt::from(k3.expect("implied K^3")), BigInt::from(s));
                matches.push(InferenceResult { basket: search.basket(idx), chi: *chi, k3, residual: true });
            }
            if search.found.is_empty() {
                diagnostics.push(format!("chi={chi}: no basket yields a consistent positive K^3"));
            }
        }
        (None, None) => unreachable!("validated"),
    }

    match matches.len() {
        0 => Err(InferError::NotFound {
            r_max: problem.r_max,
            size_max: problem.size_max,
            diagnostics: diagnostics.join("; "),
        }),
        1 => Ok(matches.pop().unwrap()),
        _ => Err(InferError::Ambiguous {
            candidates: matches
                .iter()
                .take(MAX_LISTED)
                .map(|r| format!("chi={} K3={} basket={{{}}}", r.chi, rational::format(&r.k3), r.basket))
                .collect(),
        }),
    }
}

fn search_exact(
    problem: &InferenceProblem,
    types: &[BasketSingularity],
    s: i128,
    chi: i64,
    k3: &Rational,
    matches: &mut Vec<InferenceResult>,
    diagnostics: &mut Vec<String>,
) {
    let scale = Rational::from_integer(BigInt::from(s));
    let mut raw = Vec::with_capacity(problem.pluri.len());
    for (&m, &p) in &problem.pluri {
        let target = (rational::int(p + (2 * m - 1) * chi) - reid::k3_coefficient(m) * k3) * &scale;
        match rational::is_integral(&target).then(|| target.numer().to_i128()).flatten() {
            Some(t) => raw.push(t),
            None => {
                diagnostics
                    .push(format!("chi={chi}: sum R_{m} is not a sum of corrections with r <= {}", problem.r_max));
                return;
            }
        }
    }
    let bound: Vec<i128> = (0..raw.len()).map(|i| if i == 0 { raw[0] } else { raw[i] - raw[i - 1] }).collect();
    if bound.iter().any(|b| *b < 0) {
        diagnostics.push(format!("chi={chi}: correction sums would decrease"));
        return;
    }
    let ms = problem.pluri.keys().copied().collect();
    let mut search = Search::new(types, ms, s, bound, None, problem.size_max);
    search.run();
    for (idx, _) in &search.found {
        matches.push(InferenceResult { basket: search.basket(idx), chi, k3: k3.clone(), residual: true });
    }
    if search.found.is_empty() {
        if let Some((matched, idx)) = &search.best {
            diagnostics.push(format!(
                "chi={chi}: closest basket {{{}}} matches {matched} of {} correction differences",
                search.basket(idx),
                problem.pluri.len()
            ));
        }
    }
}

/// Integer `chi` values for which some non-negative combination of at most
/// `size_max` types reproduces every correction sum, by the linear
/// relaxation of the search.
fn chi_range(problem: &InferenceProblem, types: &[BasketSingularity], k3: &Rational) -> (i64, i64) {
    let one = rational::int(1);
    let mut a = Vec::with_capacity(problem.pluri.len() + 1);
    let mut b = Vec::with_capacity(problem.pluri.len() + 1);
    // columns: one per type, then chi+, chi-, slack
    for (&m, &p) in &problem.pluri {
        let mut row: Vec<Rational> = types.iter().map(|q| reid::correction_unchecked(q, m)).collect();
        row.push(rational::int(1 - 2 * m));
        row.push(rational::int(2 * m - 1));
        row.push(Rational::zero());
        a.push(row);
        b.push(rational::int(p) - reid::k3_coefficient(m) * k3);
    }
    let mut size_row = vec![one.clone(); types.len()];
    size_row.extend([Rational::zero(), Rational::zero(), one.clone()]);
    a.push(size_row);
    b.push(rational::int(problem.size_max as i64));

    let mut objective = vec![Rational::zero(); types.len() + 3];
    objective[types.len()] = one.clone();
    objective[types.len() + 1] = -one;
    let hi = match lp::maximize(&a, &b, &objective) {
        LpOutcome::Optimal(v) => v.floor().to_integer().to_i64().unwrap_or(i64::MAX),
        _ => return (1, 0),
    };
    let objective: Vec<Rational> = objective.into_iter().map(|v| -v).collect();
    let lo = match lp::maximize(&a, &b, &objective) {
        LpOutcome::Optimal(v) => (-v).ceil().to_integer().to_i64().unwrap_or(i64::MIN),
        _ => return (1, 0),
    };
    (lo, hi)
}

/// The scalar recovered by [`solve_missing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Missing {
    Chi(i64),
    K3(Rational),
}

/// Solves `K^3/2 - 3 chi + sum R_2 = P_2` for whichever of `chi`, `K^3` is
/// absent.
pub fn solve_missing(p2: i64, chi: Option<i64>, k3: Option<&Rational>, basket: &Basket) -> Result<Missing, InferError> {
    let sum2 = basket.correction_sum_unchecked(2);
    match (chi, k3) {
        (Some(chi), None) => {
            let k3 = (rational::int(p2 + 3 * chi) - sum2) * rational::int(2);
            if !k3.is_positive() {
                return Err(InferError::Inconsistent(format!(
                    "solved K^3 = {} is not positive",
                    rational::format(&k3)
                )));
            }
            Ok(Missing::K3(k3))
        }
        (None, Some(k3)) => {
            let chi = (sum2 + k3 / BigInt::from(2) - rational::int(p2)) / BigInt::from(3);
            match rational::to_i64(&chi) {
                Some(c) => Ok(Missing::Chi(c)),
                None => {
                    Err(InferError::Inconsistent(format!("solved chi = {} is not an integer", rational::format(&chi))))
                }
            }
        }
        _ => Err(InferError::Usage("exactly one of chi and K^3 must be absent".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::reid::PluriData;

    fn sequence(data: &PluriData, m_max: i64) -> Vec<(i64, i64)> {
        (2..=m_max).map(|m| (m, rational::to_i64(&data.plurigenus(m).unwrap()).expect("integral"))).collect()
    }

    #[test]
    fn recovers_x28_basket() {
        let data = PluriData::new(0, ratio(1, 30), "1/2,1/3,1/5".parse().unwrap()).unwrap();
        let res = infer_basket(&InferenceProblem::new(sequence(&data, 8), Some(0), Some(ratio(1, 30)))).unwrap();
        assert_eq!(res.basket.to_string(), "1/2,1/3,1/5");
        assert_eq!(res.basket.len(), 3);
        assert!(res.residual);
    }

    #[test]
    fn gorenstein_data_gives_empty_basket() {
        let data = PluriData::new(-1, int(2), Basket::empty()).unwrap();
        let res = infer_basket(&InferenceProblem::new(sequence(&data, 8), Some(-1), Some(int(2)))).unwrap();
        assert!(res.basket.is_empty());
        assert!(res.residual);
    }

    #[test]
    fn solves_unknown_chi() {
        let data = PluriData::new(0, ratio(1, 12), "5*1/2,1/3,1/4".parse().unwrap()).unwrap();
        let res = infer_basket(&InferenceProblem::new(sequence(&data, 8), None, Some(ratio(1, 12)))).unwrap();
        assert_eq!(res.chi, 0);
        assert_eq!(res.basket.to_string(), "5*1/2,1/3,1/4");
    }

    #[test]
    fn solves_unknown_k3() {
        let data = PluriData::new(0, ratio(1, 30), "1/2,1/3,1/5".parse().unwrap()).unwrap();
        let res = infer_basket(&InferenceProblem::new(sequence(&data, 8), Some(0), None)).unwrap();
        assert_eq!(res.k3, ratio(1, 30));
        assert_eq!(res.basket.to_string(), "1/2,1/3,1/5");
    }

    #[test]
    fn conjugates_are_normalized() {
        let data = PluriData::new(0, ratio(1, 30), "1/2,2/3,4/5".parse().unwrap()).unwrap();
        let res = infer_basket(&InferenceProblem::new(sequence(&data, 8), Some(0), Some(ratio(1, 30)))).unwrap();
        assert_eq!(res.basket.to_string(), "1/2,1/3,1/5");
    }

    #[test]
    fn usage_and_not_found() {
        let p = InferenceProblem::new([(2, 1), (3, 2)], None, None);
        assert!(matches!(infer_basket(&p), Err(InferError::Usage(_))));
        let p = InferenceProblem::new([(2, 1)], Some(0), Some(int(1)));
        assert!(matches!(infer_basket(&p), Err(InferError::Usage(_))));
        let p = InferenceProblem::new([(1, 1), (2, 1), (3, 2)], Some(0), Some(int(1)));
        assert!(matches!(infer_basket(&p), Err(InferError::Usage(_))));
        // X_28 data with the wrong K^3 cannot be matched.
        let p = InferenceProblem::new([(2, 1), (3, 2), (4, 3), (5, 4)], Some(0), Some(ratio(1, 15))).with_bounds(10, 4);
        match infer_basket(&p) {
            Err(InferError::NotFound { diagnostics, .. }) => assert!(diagnostics.contains("closest")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn truncated_data_is_ambiguous() {
        // {1/3, 1/6} and {2*1/4} agree on R_2, R_3, R_4.
        let p = InferenceProblem::new([(2, 1), (3, 3), (4, 6)], Some(0), Some(ratio(1, 2))).with_bounds(8, 2);
        match infer_basket(&p) {
            Err(InferError::Ambiguous { candidates }) => {
                assert!(candidates.iter().any(|c| c.contains("{1/3,1/6}")));
                assert!(candidates.iter().any(|c| c.contains("{2*1/4}")));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn solve_missing_examples() {
        let b: Basket = "1/2,1/3,1/5".parse().unwrap();
        assert_eq!(solve_missing(1, Some(0), None, &b).unwrap(), Missing::K3(ratio(1, 30)));
        assert_eq!(solve_missing(6, Some(0), None, &Basket::empty()).unwrap(), Missing::K3(int(12)));
        let b: Basket = "2*1/2,1/3".parse().unwrap();
        assert_eq!(solve_missing(4, None, Some(&ratio(1, 3)), &b).unwrap(), Missing::Chi(-1));
        assert!(matches!(solve_missing(4, None, Some(&ratio(1, 2)), &b), Err(InferError::Inconsistent(_))));
        assert!(matches!(solve_missing(4, Some(0), Some(&int(1)), &b), Err(InferError::Usage(_))));
        assert!(matches!(solve_missing(4, None, None, &b), Err(InferError::Usage(_))));
        assert!(matches!(solve_missing(0, Some(0), None, &b), Err(InferError::Inconsistent(_))));
    }
}
