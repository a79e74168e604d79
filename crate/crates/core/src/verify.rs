//! Golden checkpoint harness.
//!
//! `golden/checkpoints.json` lists every exact value the library is
//! expected to reproduce. Each entry names a `kind` of computation and its
//! inputs; the harness recomputes the value and compares canonical text
//! forms (`p/q`, integers, basket and boolean strings) for equality.

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::bounds::engine::{self, refine_step_with, starting_xi, Criterion};
use crate::bounds::presets::{self, PresetId};
use crate::bounds::theorems::{self, reduction_survivors};
use crate::bounds::{alpha_of, beta_sequence, first_firing_m, min_birational_m, prop_b_check, Scenario};
use crate::infer::{infer_basket, solve_missing, InferenceProblem, Missing};
use crate::rational::{self, Rational};
use crate::reid::{self, Basket, BasketSingularity, PluriData};
use crate::report::{Check, Report};
use crate::wps::{self, WeightedHypersurface};

pub const GOLDEN: &str = include_str!("../golden/checkpoints.json");

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct Checkpoint {
    pub id: String,
    pub group: String,
    pub kind: String,
    pub inputs: Map<String, Value>,
    pub expected: String,
    pub anchor: String,
}

pub fn checkpoints() -> Vec<Checkpoint> {
    serde_json::from_str(GOLDEN).expect("golden file parses")
}

pub type Rounding = fn(&Rational) -> BigInt;

/// Runs checkpoints. The rounding used for `alpha0` in refinement steps is
/// replaceable so that a wrong rule can be shown to be caught.
#[derive(Clone, Debug)]
pub struct Harness {
    round: Rounding,
    filter: Option<String>,
}

impl Default for Harness {
    fn default() -> Self {
        Self { round: rational::ceil, filter: None }
    }
}

impl Harness {
    pub fn new() -> Self {
        Self::default()
    }

    #[doc(hidden)]
    pub fn with_rounding(mut self, round: Rounding) -> Self {
        self.round = round;
        self
    }

    /// Restricts the run to one group (`reid`, `wps`, `infer`, `reduction`,
    /// `beta`, `bounds`, `theorems`, `optimality`).
    pub fn filter(mut self, group: impl Into<String>) -> Self {
        self.filter = Some(group.into());
        self
    }

    pub fn run(&self) -> Report {
        let checks = checkpoints()
            .into_iter()
            .filter(|cp| self.filter.as_ref().is_none_or(|g| *g == cp.group))
            .map(|cp| {
                let actual = self.evaluate(&cp).unwrap_or_else(|e| format!("error: {e}"));
                Check {
                    pass: actual == cp.expected,
                    id: cp.id,
                    group: cp.group,
                    inputs: Value::Object(cp.inputs),
                    expected: cp.expected,
                    actual,
                    anchor: cp.anchor,
                }
            })
            .collect();
        Report::new(checks)
    }

    pub fn evaluate(&self, cp: &Checkpoint) -> Result<String, String> {
        let inp = Inputs(&cp.inputs);
        let text = match cp.kind.as_str() {
            "monotonicity" => reid::check_monotonicity(inp.int("r_max")? as u32).violations.len().to_string(),
            "correction" => {
                let q: BasketSingularity = single_point(&inp.str("point")?)?;
                fmt(&q.correction(inp.int("m")?).map_err(err)?)
            }
            "reid_plurigenus" => fmt(&inp.pluri_data()?.plurigenus(inp.int("m")?).map_err(err)?),
            "chi_omega" => reid::chi_omega(inp.int("p_g")?, inp.int("q")?, inp.int("h2")?).to_string(),
            "reduction_survivors" => reduction_survivors(inp.int("h2_max")?)
                .iter()
                .map(|(a, b, c)| format!("({a},{b},{c})"))
                .collect::<Vec<_>>()
                .join(" "),
            "wps_hilbert" => inp.hypersurface()?.hilbert_coefficient(inp.int("n")?).map_err(err)?.to_string(),
            "wps_plurigenus" => inp.hypersurface()?.plurigenus(inp.int("m")?).map_err(err)?.to_string(),
            "wps_k3" => fmt(&inp.hypersurface()?.k3().map_err(err)?),
            "wps_reid_agreement" => {
                let x = inp.hypersurface()?;
                let data = PluriData::new(inp.int("chi")?, x.k3().map_err(err)?, inp.basket()?).map_err(err)?;
                let m_max = inp.int("m_max")?;
                let mismatch = (2..=m_max).find(|&m| {
                    let w = wps::plurigenus_wps(&x, m).map(Rational::from_integer);
                    w.ok() != data.plurigenus(m).ok()
                });
                match mismatch {
                    None => "agree".into(),
                    Some(m) => format!("differ at m={m}"),
                }
            }
            "infer" => {
                let x = inp.hypersurface()?;
                let m_max = inp.int("m_max")?;
                let pluri = (2..=m_max)
                    .map(|m| Ok((m, to_i64(&Rational::from_integer(x.plurigenus(m).map_err(err)?))?)))
                    .collect::<Result<Vec<_>, String>>()?;
                let chi = inp.opt_int("chi")?;
                let res = infer_basket(&InferenceProblem::new(pluri, chi, Some(x.k3().map_err(err)?))).map_err(err)?;
                match inp.str("field")?.as_str() {
                    "basket" => res.basket.to_string(),
                    "size" => res.basket.len().to_string(),
                    "chi" => res.chi.to_string(),
                    "sum_r2" => fmt(&res.basket.correction_sum(2).map_err(err)?),
                    other => return Err(format!("unknown field `{other}`")),
                }
            }
            "solve_missing" => {
                let k3 = inp.opt_rat("k3")?;
                match solve_missing(inp.int("p2")?, inp.opt_int("chi")?, k3.as_ref(), &inp.basket()?).map_err(err)? {
                    Missing::Chi(c) => c.to_string(),
                    Missing::K3(k) => fmt(&k),
                }
            }
            "beta_term" => {
                let s = beta_sequence(inp.int("m0")?, inp.int("p")?, inp.int("t0")?, inp.int("n")? as usize)
                    .map_err(err)?;
                fmt(&s.term(inp.int("n")? as usize).ok_or("missing term")?)
            }
            "beta_limit" => fmt(&beta_sequence(inp.int("m0")?, inp.int("p")?, 1, 0).map_err(err)?.limit()),
            "beta_increasing" => {
                let n = inp.int("n")? as usize;
                let mut all = true;
                for m0 in inp.int("m0_lo")?..=inp.int("m0_hi")? {
                    for p in inp.int("p_lo")?..=inp.int("p_hi")? {
                        let s = beta_sequence(m0, p, 1, n).map_err(err)?;
                        all &= s.is_strictly_increasing() && s.terms().iter().all(|t| *t < s.limit());
                    }
                }
                all.to_string()
            }
            "seed" => fmt(&engine::xi_seed_asymptotic(&inp.scenario()?)),
            "alpha" => fmt(&alpha_of(&inp.scenario()?, inp.int("m")?, &inp.rat("xi")?)),
            "refine" => {
                let step = refine_step_with(&inp.scenario()?, inp.int("m")?, &inp.rat("xi")?, self.round);
                fmt(&step.xi_after)
            }
            "schedule" => self.schedule(&inp)?,
            "min_birational" => {
                let sc = inp.scenario()?;
                let res = min_birational_m(&sc, engine::default_m_hi(&sc)).map_err(err)?;
                res.m_birational.map_or("none".into(), |m| m.to_string())
            }
            "preset_threshold" => presets::preset_threshold(inp.preset()?, inp.int("m0")?).map_err(err)?.to_string(),
            "first_firing" => {
                let sc = inp.scenario()?;
                first_firing_m(&sc, &inp.rat("xi")?, inp.int("from")?, engine::default_m_hi(&sc))
                    .map_or("none".into(), |m| m.to_string())
            }
            "prop_b_degree" => fmt(&(rational::int(8) * inp.rat("xi")?)),
            "prop_b_check" => prop_b_check(&inp.rat("xi")?).to_string(),
            "theorem_44" => presets::theorem_44(inp.int("m0")?, inp.bool("chi_zero")?).map_err(err)?.to_string(),
            "pipeline" => match inp.str("name")?.as_str() {
                "main" => theorems::main_pipeline().map_err(err)?.threshold.to_string(),
                "corollary" => theorems::corollary_pipeline().map_err(err)?.threshold.to_string(),
                other => return Err(format!("unknown pipeline `{other}`")),
            },
            "certified_threshold" => {
                let x = inp.hypersurface()?;
                let data = PluriData::new(inp.int("chi")?, x.k3().map_err(err)?, inp.basket()?).map_err(err)?;
                theorems::certified_threshold(&data).map_err(err)?.to_string()
            }
            "external_fact" => {
                let name = inp.str("name")?;
                let fact = theorems::external_facts()
                    .into_iter()
                    .find(|f| f.name == name)
                    .ok_or_else(|| format!("no recorded fact for `{name}`"))?;
                fact.not_birational_at.to_string()
            }
            other => return Err(format!("unknown kind `{other}`")),
        };
        Ok(text)
    }

    /// `field` is `xi@m`, `alpha@m`, `alpha0@m` or `birational`.
    fn schedule(&self, inp: &Inputs) -> Result<String, String> {
        let sc = inp.scenario()?;
        let schedule: Vec<i64> = inp
            .get("schedule")?
            .as_array()
            .ok_or("schedule must be an array")?
            .iter()
            .map(|v| v.as_i64().ok_or("schedule entries must be integers"))
            .collect::<Result<_, _>>()?;
        let mut xi = starting_xi(&sc);
        let mut steps = Vec::new();
        let mut birational = None;
        for &m in &schedule {
            let step = refine_step_with(&sc, m, &xi, self.round);
            if m >= sc.sep_m_min && step.criterion == Criterion::ConditionV && birational.is_none_or(|b| m < b) {
                birational = Some(m);
            }
            xi = step.xi_after.clone();
            steps.push(step);
        }
        let field = inp.str("field")?;
        if field == "birational" {
            return Ok(birational.map_or("none".into(), |m| m.to_string()));
        }
        let (name, at) = field.split_once('@').ok_or_else(|| format!("bad field `{field}`"))?;
        let m: i64 = at.parse().map_err(|_| format!("bad field `{field}`"))?;
        let step = steps.iter().find(|s| s.m == m).ok_or_else(|| format!("m = {m} not scheduled"))?;
        Ok(match name {
            "xi" => fmt(&step.xi_after),
            "alpha" => fmt(&step.alpha),
            "alpha0" => step.alpha0.to_string(),
            _ => return Err(format!("bad field `{field}`")),
        })
    }
}

fn fmt(x: &Rational) -> String {
    rational::format(x)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn to_i64(x: &Rational) -> Result<i64, String> {
    rational::to_i64(x).ok_or_else(|| format!("{} is not an integer", fmt(x)))
}

fn single_point(text: &str) -> Result<BasketSingularity, String> {
    let basket = Basket::parse(text).map_err(err)?;
    match basket.entries() {
        [(q, 1)] => Ok(*q),
        _ => Err(format!("`{text}` is not a single point")),
    }
}

struct Inputs<'a>(&'a Map<String, Value>);

impl Inputs<'_> {
    fn get(&self, key: &str) -> Result<&Value, String> {
        self.0.get(key).ok_or_else(|| format!("missing input `{key}`"))
    }

    fn int(&self, key: &str) -> Result<i64, String> {
        self.get(key)?.as_i64().ok_or_else(|| format!("`{key}` must be an integer"))
    }

    fn opt_int(&self, key: &str) -> Result<Option<i64>, String> {
        if self.0.contains_key(key) {
            self.int(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn bool(&self, key: &str) -> Result<bool, String> {
        self.get(key)?.as_bool().ok_or_else(|| format!("`{key}` must be a boolean"))
    }

    fn str(&self, key: &str) -> Result<String, String> {
        self.get(key)?.as_str().map(str::to_string).ok_or_else(|| format!("`{key}` must be a string"))
    }

    fn rat(&self, key: &str) -> Result<Rational, String> {
        match self.get(key)? {
            Value::Number(n) => n.as_i64().map(rational::int).ok_or_else(|| format!("`{key}` must be an integer")),
            Value::String(s) => rational::parse(s).map_err(err),
            _ => Err(format!("`{key}` must be a rational string")),
        }
    }

    fn opt_rat(&self, key: &str) -> Result<Option<Rational>, String> {
        if self.0.contains_key(key) {
            self.rat(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn basket(&self) -> Result<Basket, String> {
        Basket::parse(&self.str("basket")?).map_err(err)
    }

    fn hypersurface(&self) -> Result<WeightedHypersurface, String> {
        WeightedHypersurface::parse(&self.str("hypersurface")?).map_err(err)
    }

    fn pluri_data(&self) -> Result<PluriData, String> {
        PluriData::new(self.int("chi")?, self.rat("k3")?, self.basket()?).map_err(err)
    }

    fn preset(&self) -> Result<PresetId, String> {
        self.str("preset")?.parse().map_err(err)
    }

    /// A preset at `m0`, or an explicit scenario text.
    fn scenario(&self) -> Result<Scenario, String> {
        if self.0.contains_key("scenario") {
            return self.str("scenario")?.parse().map_err(err);
        }
        presets::preset(self.preset()?, self.int("m0")?).map_err(err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ids_are_unique() {
        let cps = checkpoints();
        let mut ids: Vec<&str> = cps.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn full_suite_passes() {
        let report = Harness::new().run();
        assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn filter_restricts_groups() {
        let report = Harness::new().filter("reid").run();
        assert!(!report.checks.is_empty());
        assert!(report.checks.iter().all(|c| c.group == "reid"));
    }

    #[test]
    fn unknown_kind_fails() {
        let cp = Checkpoint {
            id: "x".into(),
            group: "g".into(),
            kind: "nope".into(),
            inputs: Map::new(),
            expected: "1".into(),
            anchor: String::new(),
        };
        assert!(Harness::new().evaluate(&cp).is_err());
    }
}
