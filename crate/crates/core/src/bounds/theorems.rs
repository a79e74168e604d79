//! Assembled thresholds: the `chi(omega) >= 0` pipeline, the
//! `chi(omega) > 0` pipeline, and certified thresholds for concrete data.

use serde::Serialize;

use super::presets::{corollary_summary, theorem_44};
use crate::error::BoundsError;
use crate::rational::{self, Rational};
use crate::reid::{chi_omega, reid_plurigenus, PluriData};
use crate::wps::{catalog, WeightedHypersurface};

/// Birationality threshold known from outside the engine when `p_g >= 2`.
pub const CITED_PG_AT_LEAST_2: i64 = 8;
/// Birationality threshold known from outside the engine when `q > 0`.
pub const CITED_IRREGULAR: i64 = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineStep {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pipeline {
    pub threshold: i64,
    pub steps: Vec<PipelineStep>,
}

impl Pipeline {
    fn push(&mut self, label: impl Into<String>, value: impl ToString) {
        self.steps.push(PipelineStep { label: label.into(), value: value.to_string() });
    }
}

/// Triples `(p_g, q, h2)` with `p_g <= 1`, `q = 0`, `h2 <= h2_max` and
/// `chi(omega) >= 0`.
pub fn reduction_survivors(h2_max: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for p_g in 0..=1 {
        for h2 in 0..=h2_max {
            if chi_omega(p_g, 0, h2) >= 0 {
                out.push((p_g, 0, h2));
            }
        }
    }
    out
}

/// Threshold for all minimal threefolds of general type with
/// `chi(omega) >= 0`.
pub fn main_pipeline() -> Result<Pipeline, BoundsError> {
    let mut pl = Pipeline { threshold: 0, steps: Vec::new() };
    pl.push("p_g >= 2 (cited)", CITED_PG_AT_LEAST_2);
    pl.push("q > 0 (cited)", CITED_IRREGULAR);
    let survivors = reduction_survivors(8);
    let reduced = survivors == [(1, 0, 0)];
    pl.push("remaining (p_g, q, h2)", survivors.iter().map(|t| format!("{t:?}")).collect::<Vec<_>>().join(" "));
    if !reduced {
        return Err(BoundsError::InvalidScenario("reduction did not force p_g = 1, h2 = 0".into()));
    }
    pl.push("chi(omega) after reduction", chi_omega(1, 0, 0));
    pl.push("P5 > P4 > P3 > P2 >= 1, so m0", "2 or 3");
    let t2 = theorem_44(2, false)?;
    let t3 = theorem_44(3, true)?;
    pl.push("m0 = 2", t2);
    pl.push("m0 = 3, chi(O) = 0", t3);
    pl.threshold = [CITED_PG_AT_LEAST_2, CITED_IRREGULAR, t2, t3].into_iter().max().unwrap_or(0);
    pl.push("threshold", pl.threshold);
    Ok(pl)
}

/// Strict lower bound for `P2` when `chi(O) = chi`: `-3 chi`, since the
/// `K^3` term and every correction are positive.
pub fn p2_strict_lower_bound(chi: i64) -> i64 {
    -3 * chi
}

/// Threshold for all minimal threefolds of general type with
/// `chi(omega) > 0`.
pub fn corollary_pipeline() -> Result<Pipeline, BoundsError> {
    let mut pl = Pipeline { threshold: 0, steps: Vec::new() };
    let bound = p2_strict_lower_bound(-1);
    pl.push("chi(O) <= -1 gives P2 >", bound);
    pl.push("so P2 >=", bound + 1);
    pl.push("m0", 2);
    let summary = corollary_summary()?;
    for (id, t) in &summary.contributions {
        pl.push(id.as_str(), t);
    }
    pl.push("p_g(F) = 0 forces p_g >= 2 (cited)", CITED_PG_AT_LEAST_2);
    pl.threshold = summary.threshold.max(CITED_PG_AT_LEAST_2);
    pl.push("threshold", pl.threshold);
    Ok(pl)
}

/// Threshold certified for one threefold from its numerical data.
///
/// `chi(O) <= -1` goes through [`corollary_pipeline`]; `chi(O) = 0` picks
/// `m0 = 2` when `P2 >= 2` and `m0 = 3` otherwise.
pub fn certified_threshold(data: &PluriData) -> Result<i64, BoundsError> {
    let plurigenus = |m: i64| -> Result<i64, BoundsError> {
        let value = reid_plurigenus(data, m).map_err(|e| BoundsError::InvalidScenario(e.to_string()))?;
        rational::to_i64(&value).ok_or_else(|| {
            BoundsError::InvalidScenario(format!("P{m} = {} is not an integer", rational::format(&value)))
        })
    };
    match data.chi {
        c if c <= -1 => Ok(corollary_pipeline()?.threshold),
        0 => {
            let p2 = plurigenus(2)?;
            if p2 >= 2 {
                Ok(theorem_44(2, false)?.max(CITED_PG_AT_LEAST_2).max(CITED_IRREGULAR))
            } else if plurigenus(3)? >= 2 {
                theorem_44(3, true)
            } else {
                Err(BoundsError::InvalidScenario("P3 < 2 contradicts P3 > P2 >= 1".into()))
            }
        }
        c => Err(BoundsError::InvalidScenario(format!("chi(O) = {c} > 0 means chi(omega) < 0"))),
    }
}

/// A non-birationality fact about a known hypersurface, recorded rather
/// than computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalFact {
    pub name: &'static str,
    pub hypersurface: WeightedHypersurface,
    pub chi: i64,
    pub basket: &'static str,
    pub not_birational_at: i64,
}

impl ExternalFact {
    pub fn pluri_data(&self) -> Result<PluriData, BoundsError> {
        let k3: Rational = self.hypersurface.k3().map_err(|e| BoundsError::InvalidScenario(e.to_string()))?;
        let basket = self.basket.parse().map_err(BoundsError::Parse)?;
        PluriData::new(self.chi, k3, basket).map_err(|e| BoundsError::InvalidScenario(e.to_string()))
    }
}

pub fn external_facts() -> Vec<ExternalFact> {
    vec![
        ExternalFact {
            name: "X28",
            hypersurface: catalog::x28(),
            chi: 0,
            basket: "1/2,1/3,1/5",
            not_birational_at: 13,
        },
        ExternalFact { name: "X16", hypersurface: catalog::x16(), chi: -1, basket: "2*1/2,1/3", not_birational_at: 7 },
        ExternalFact {
            name: "X22",
            hypersurface: catalog::x22(),
            chi: 0,
            basket: "5*1/2,1/3,1/4",
            not_birational_at: 10,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(reduction_survivors(10), vec![(1, 0, 0)]);
    }

    #[test]
    fn pipelines() {
        assert_eq!(main_pipeline().unwrap().threshold, 14);
        assert_eq!(corollary_pipeline().unwrap().threshold, 8);
    }

    #[test]
    fn witnesses_are_sharp() {
        for fact in external_facts() {
            let t = certified_threshold(&fact.pluri_data().unwrap()).unwrap();
            assert_eq!(t, fact.not_birational_at + 1, "{}", fact.name);
        }
    }

    #[test]
    fn positive_chi_is_rejected() {
        let data = PluriData::new(1, rational::int(2), Default::default()).unwrap();
        assert!(certified_threshold(&data).is_err());
    }
}
