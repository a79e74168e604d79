//! Scenario catalog for every case of the birationality argument.
//!
//! Each preset fixes `(m0, p, beta, g, xi0, flags, sep)` for one geometric
//! configuration. The geometric facts themselves (fibration type, genus of
//! `C`, which separation threshold is available) are inputs here, never
//! checked.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::engine::{default_m_hi, min_birational_m};
use super::scenario::Scenario;
use crate::error::BoundsError;
use crate::rational::{int, ratio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PresetId {
    Case1,
    Case2,
    Sub31,
    TypeI,
    TypeII,
    TypeIII,
    D5_1,
    D5_2,
    D5_3,
    AI,
    AII,
    AIII,
    PropB,
    CorD2_3,
    CorD2_2,
    CorI,
    CorII,
    CorIII,
}

impl PresetId {
    pub const ALL: [PresetId; 18] = [
        PresetId::Case1,
        PresetId::Case2,
        PresetId::Sub31,
        PresetId::TypeI,
        PresetId::TypeII,
        PresetId::TypeIII,
        PresetId::D5_1,
        PresetId::D5_2,
        PresetId::D5_3,
        PresetId::AI,
        PresetId::AII,
        PresetId::AIII,
        PresetId::PropB,
        PresetId::CorD2_3,
        PresetId::CorD2_2,
        PresetId::CorI,
        PresetId::CorII,
        PresetId::CorIII,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PresetId::Case1 => "case1",
            PresetId::Case2 => "case2",
            PresetId::Sub31 => "sub31",
            PresetId::TypeI => "typeI",
            PresetId::TypeII => "typeII",
            PresetId::TypeIII => "typeIII",
            PresetId::D5_1 => "d5_1",
            PresetId::D5_2 => "d5_2",
            PresetId::D5_3 => "d5_3",
            PresetId::AI => "a_I",
            PresetId::AII => "a_II",
            PresetId::AIII => "a_III",
            PresetId::PropB => "prop_b",
            PresetId::CorD2_3 => "cor_d2_3",
            PresetId::CorD2_2 => "cor_d2_2",
            PresetId::CorI => "cor_I",
            PresetId::CorII => "cor_II",
            PresetId::CorIII => "cor_III",
        }
    }

    /// Presets whose `m0` is pinned by the configuration rather than taken
    /// from the caller.
    fn required_m0(&self) -> Option<i64> {
        match self {
            PresetId::D5_1
            | PresetId::D5_2
            | PresetId::D5_3
            | PresetId::AI
            | PresetId::AII
            | PresetId::AIII
            | PresetId::PropB => Some(3),
            PresetId::CorD2_3 | PresetId::CorD2_2 | PresetId::CorI | PresetId::CorII | PresetId::CorIII => Some(2),
            _ => None,
        }
    }

    /// Remarks attached to derivation traces for this preset.
    pub fn notes(&self) -> &'static [&'static str] {
        match self {
            PresetId::Case1 => &["g >= 4 because 2g - 2 > 4 for C in |S|_S|", "xi0 = 2/m0 from C^2 >= 2"],
            PresetId::Case2 => {
                &["p = 1 is kept even though the pencil class is t C with t >= 1; override p to explore"]
            }
            PresetId::Sub31 => {
                &["threshold m0 + 5 is recorded as a constant; it does not go through the alpha criteria"]
            }
            PresetId::TypeIII => &["C in |2 sigma^*K_F0| is even and non-hyperelliptic"],
            PresetId::TypeII => &["C has genus 3 and C^2 = 2, so xi0 = 2 beta"],
            PresetId::TypeI => &["C has genus 2"],
            PresetId::D5_1 => {
                &["beta is the limit 3/8 of the m0' = 5, p' = 3 sequence; xi0 = 1/3 from the type (I) chain"]
            }
            PresetId::D5_2 => {
                &["m0' = 5 with beta = 3/5; xi0 = 4/(3 m0' + 2)", "the refinement at m = 12 assumes g(C) = 2"]
            }
            PresetId::D5_3 => &["xi0 = 2/5 because |M_5| restricts to a finite map on C"],
            PresetId::AI => &["m0' = 5, p = 2, C of genus 2"],
            PresetId::AII => &["m0' = 5, p = 2, C of genus 3, xi0 = 2 beta"],
            PresetId::AIII => &["m0' = 5, p = 2, C in |2 sigma^*K| even and non-hyperelliptic"],
            PresetId::PropB => &[
                "beta = 1/2 encodes the sub-system K + ceil(8 pi^*K) + F1 + F2 of |14K|, so alpha(14) = 8 xi",
                "xi0 = 1/3 from the type (I) chain",
            ],
            PresetId::CorD2_3 => &["Case 1 argument with m0 = 2"],
            PresetId::CorD2_2 => &["Case 2 argument with m0 = 2 and p = 2"],
            PresetId::CorI | PresetId::CorII => &["p = 3 from O(3) in f_* omega^2; beta = 3/5 is the limit p/(m0+p)"],
            PresetId::CorIII => &["p = 3; beta = 3/10 is half the limit 3/5 because C lies in |2 sigma^*K|"],
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetId {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PresetId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| BoundsError::UnknownPreset(s.to_string()))
    }
}

pub fn preset(id: PresetId, m0: i64) -> Result<Scenario, BoundsError> {
    if m0 < 2 || id.required_m0().is_some_and(|r| r != m0) {
        return Err(BoundsError::NotApplicable { id: id.to_string(), m0 });
    }
    let sc = match id {
        PresetId::Case1 => Scenario::new(m0, 1, ratio(1, m0), 4, m0 + 2)?.with_xi0(ratio(2, m0))?,
        PresetId::Case2 => Scenario::new(m0, 1, ratio(1, m0), 2, 2 * m0 + 2)?,
        PresetId::Sub31 => Scenario::new(m0, 1, int(1), 2, m0 + 5)?,
        PresetId::TypeIII => Scenario::new(m0, 1, ratio(1, 2 * m0 + 2), 2, 4 * m0 + 2)?.even_nonhyperelliptic(),
        PresetId::TypeII => Scenario::new(m0, 1, ratio(1, m0 + 1), 3, 4 * m0 + 2)?.with_xi0(ratio(2, m0 + 1))?,
        PresetId::TypeI => Scenario::new(m0, 1, ratio(1, m0 + 1), 2, 4 * m0 + 2)?,
        PresetId::D5_1 => Scenario::new(3, 1, ratio(3, 8), 2, 14)?.with_xi0(ratio(1, 3))?,
        PresetId::D5_2 => Scenario::new(5, 1, ratio(3, 5), 2, 14)?.with_xi0(ratio(4, 17))?,
        PresetId::D5_3 => Scenario::new(3, 1, ratio(1, 4), 2, 14)?.with_xi0(ratio(2, 5))?,
        PresetId::AI => Scenario::new(5, 2, ratio(2, 7), 2, 14)?.with_xi0(ratio(2, 7))?,
        PresetId::AII => Scenario::new(5, 2, ratio(2, 7), 3, 14)?.with_xi0(ratio(4, 7))?,
        PresetId::AIII => Scenario::new(5, 2, ratio(1, 7), 2, 14)?.even_nonhyperelliptic(),
        PresetId::PropB => Scenario::new(3, 1, ratio(1, 2), 2, 14)?.with_xi0(ratio(1, 3))?,
        PresetId::CorD2_3 => Scenario::new(2, 1, ratio(1, 2), 4, 7)?.with_xi0(int(1))?,
        PresetId::CorD2_2 => Scenario::new(2, 2, ratio(1, 2), 2, 6)?,
        PresetId::CorI => Scenario::new(2, 3, ratio(3, 5), 2, 6)?.with_xi0(ratio(3, 5))?,
        PresetId::CorII => Scenario::new(2, 3, ratio(3, 5), 3, 6)?.with_xi0(ratio(6, 5))?,
        PresetId::CorIII => Scenario::new(2, 3, ratio(3, 10), 2, 6)?.even_nonhyperelliptic(),
    };
    Ok(sc)
}

/// Thresholds that are recorded rather than derived by the engine.
pub fn fixed_threshold(id: PresetId, m0: i64) -> Option<i64> {
    match id {
        PresetId::Sub31 => Some(m0 + 5),
        _ => None,
    }
}

/// The explicit sequence of `m` values the hand derivation walks through.
pub fn derivation_schedule(id: PresetId, m0: i64) -> Vec<i64> {
    match id {
        PresetId::Case1 => vec![3 * m0 + 2],
        PresetId::Case2 => vec![4 * m0 + 3, 3 * m0 + 2],
        PresetId::TypeII => vec![3 * m0 + 2, 4 * m0 + 2],
        PresetId::TypeI => vec![4 * m0 + 5, 4 * m0 + 4, 4 * m0 + 3, 4 * m0 + 2],
        PresetId::TypeIII => vec![4 * m0 + 2],
        PresetId::Sub31 => vec![m0 + 5],
        PresetId::D5_2 | PresetId::AI => vec![12, 14],
        PresetId::D5_1 | PresetId::D5_3 | PresetId::AII | PresetId::AIII | PresetId::PropB => vec![14],
        PresetId::CorD2_3 => vec![7],
        PresetId::CorD2_2 | PresetId::CorI | PresetId::CorII | PresetId::CorIII => vec![6, 7, 8],
    }
}

/// Certified threshold of one preset: the recorded constant, or the least
/// birational `m` after saturation up to `12 m0`.
pub fn preset_threshold(id: PresetId, m0: i64) -> Result<i64, BoundsError> {
    if let Some(t) = fixed_threshold(id, m0) {
        preset(id, m0)?;
        return Ok(t);
    }
    let sc = preset(id, m0)?;
    let m_hi = default_m_hi(&sc);
    min_birational_m(&sc, m_hi)?.m_birational.ok_or_else(|| BoundsError::NoThreshold(m_hi, id.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdSummary {
    pub threshold: i64,
    pub contributions: Vec<(PresetId, i64)>,
}

impl ThresholdSummary {
    fn from_family(family: &[PresetId], m0: i64) -> Result<Self, BoundsError> {
        let contributions =
            family.iter().map(|&id| preset_threshold(id, m0).map(|t| (id, t))).collect::<Result<Vec<_>, _>>()?;
        let threshold = contributions.iter().map(|(_, t)| *t).max().unwrap_or(0);
        Ok(Self { threshold, contributions })
    }
}

/// The configurations covering a threefold with `P_{m0} >= 2` and `p_g = 1`.
/// With `chi(O) = 0` and `m0 = 3`, the genus-2 fibre case is replaced by the
/// finer analysis through `|5K|`.
pub fn theorem_44_family(m0: i64, chi_zero: bool) -> Vec<PresetId> {
    let mut family = vec![PresetId::Case1, PresetId::Case2, PresetId::Sub31, PresetId::TypeIII, PresetId::TypeII];
    if chi_zero && m0 == 3 {
        family.extend([
            PresetId::D5_1,
            PresetId::D5_2,
            PresetId::D5_3,
            PresetId::AI,
            PresetId::AII,
            PresetId::AIII,
            PresetId::PropB,
        ]);
    } else {
        family.push(PresetId::TypeI);
    }
    family
}

pub fn theorem_44_summary(m0: i64, chi_zero: bool) -> Result<ThresholdSummary, BoundsError> {
    ThresholdSummary::from_family(&theorem_44_family(m0, chi_zero), m0)
}

/// Least `m` from which every configuration with the given `m0` certifies
/// birationality.
pub fn theorem_44(m0: i64, chi_zero: bool) -> Result<i64, BoundsError> {
    theorem_44_summary(m0, chi_zero).map(|s| s.threshold)
}

pub fn corollary_family() -> Vec<PresetId> {
    vec![PresetId::CorD2_3, PresetId::CorD2_2, PresetId::Sub31, PresetId::CorI, PresetId::CorII, PresetId::CorIII]
}

pub fn corollary_summary() -> Result<ThresholdSummary, BoundsError> {
    ThresholdSummary::from_family(&corollary_family(), 2)
}
