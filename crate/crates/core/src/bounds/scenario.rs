use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::error::{BoundsError, ParseError};
use crate::rational::{self, Rational};

/// Numeric hypotheses for one application of the `xi`-inequality.
///
/// `m0` is the pluricanonical degree whose map induces the fibration, `p`
/// the fibration multiplicity, `beta` the coefficient with
/// `pi^*(K_X)|_S - beta C` effective, `g_min` a lower bound on the genus of
/// the auxiliary curve `C`, and `sep_m_min` the least `m` from which the
/// separation hypotheses are taken as certified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub m0: i64,
    pub p: i64,
    pub beta: Rational,
    pub g_min: i64,
    pub xi0: Option<Rational>,
    pub even_curve: bool,
    pub nonhyperelliptic: bool,
    pub sep_m_min: i64,
}

impl Scenario {
    pub fn new(m0: i64, p: i64, beta: Rational, g_min: i64, sep_m_min: i64) -> Result<Self, BoundsError> {
        let sc = Self { m0, p, beta, g_min, xi0: None, even_curve: false, nonhyperelliptic: false, sep_m_min };
        sc.validate()?;
        Ok(sc)
    }

    pub fn with_xi0(mut self, xi0: Rational) -> Result<Self, BoundsError> {
        self.xi0 = Some(xi0);
        self.validate()?;
        Ok(self)
    }

    pub fn even_nonhyperelliptic(mut self) -> Self {
        self.even_curve = true;
        self.nonhyperelliptic = true;
        self
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        let fail = |msg: String| Err(BoundsError::InvalidScenario(msg));
        if self.m0 < 2 {
            return fail(format!("m0 must be at least 2, got {}", self.m0));
        }
        if self.p < 1 {
            return fail(format!("p must be at least 1, got {}", self.p));
        }
        if !self.beta.is_positive() {
            return fail(format!("beta must be positive, got {}", rational::format(&self.beta)));
        }
        if self.g_min < 2 {
            return fail(format!("g must be at least 2, got {}", self.g_min));
        }
        if self.sep_m_min < self.m0 + 2 {
            return fail(format!("sep must be at least m0 + 2 = {}, got {}", self.m0 + 2, self.sep_m_min));
        }
        if let Some(xi0) = &self.xi0 {
            if !xi0.is_positive() {
                return fail(format!("xi0 must be positive, got {}", rational::format(xi0)));
            }
        }
        Ok(())
    }

    /// `m0/p + 1/beta`, the part of the coefficient that does not depend on `m`.
    pub fn offset(&self) -> Rational {
        rational::ratio(self.m0, self.p) + self.beta.recip()
    }

    /// `m - 1 - m0/p - 1/beta`.
    pub fn coefficient(&self, m: i64) -> Rational {
        rational::int(m - 1) - self.offset()
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m0={} p={} beta={} g={} sep={}",
            self.m0,
            self.p,
            rational::format(&self.beta),
            self.g_min,
            self.sep_m_min
        )?;
        if let Some(xi0) = &self.xi0 {
            write!(f, " xi0={}", rational::format(xi0))?;
        }
        if self.even_curve {
            f.write_str(" even")?;
        }
        if self.nonhyperelliptic {
            f.write_str(" nonhyp")?;
        }
        Ok(())
    }
}

// `m0=3 p=1 beta=1/3 g=2 sep=8 [xi0=2/7] [even] [nonhyp]`, tokens in any order.
impl FromStr for Scenario {
    type Err = BoundsError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut m0 = None;
        let mut p = None;
        let mut beta = None;
        let mut g = None;
        let mut sep = None;
        let mut xi0 = None;
        let mut even = false;
        let mut nonhyp = false;
        let mut offset = 0usize;
        for token in text.split(' ') {
            let pos = offset;
            offset += token.len() + 1;
            if token.is_empty() {
                continue;
            }
            let int_at = |v: &str, at: usize| -> Result<i64, ParseError> {
                v.parse::<i64>().map_err(|_| ParseError::new(at, format!("expected an integer, found `{v}`")))
            };
            match token.split_once('=') {
                None => match token {
                    "even" => even = true,
                    "nonhyp" => nonhyp = true,
                    other => return Err(ParseError::new(pos, format!("unknown flag `{other}`")).into()),
                },
                Some((key, value)) => {
                    let at = pos + key.len() + 1;
                    match key {
                        "m0" => m0 = Some(int_at(value, at)?),
                        "p" => p = Some(int_at(value, at)?),
                        "g" => g = Some(int_at(value, at)?),
                        "sep" => sep = Some(int_at(value, at)?),
                        "beta" => beta = Some(rational::parse_at(value, at)?),
                        "xi0" => xi0 = Some(rational::parse_at(value, at)?),
                        other => return Err(ParseError::new(pos, format!("unknown key `{other}`")).into()),
                    }
                }
            }
        }
        let missing = |name: &str| BoundsError::Parse(ParseError::new(text.len(), format!("missing `{name}=`")));
        let mut sc = Scenario {
            m0: m0.ok_or_else(|| missing("m0"))?,
            p: p.ok_or_else(|| missing("p"))?,
            beta: beta.ok_or_else(|| missing("beta"))?,
            g_min: g.ok_or_else(|| missing("g"))?,
            xi0,
            even_curve: false,
            nonhyperelliptic: false,
            sep_m_min: sep.ok_or_else(|| missing("sep"))?,
        };
        sc.even_curve = even;
        sc.nonhyperelliptic = nonhyp;
        sc.validate()?;
        Ok(sc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn text_round_trip() {
        let text = "m0=3 p=1 beta=1/3 g=2 sep=8 xi0=2/7 even nonhyp";
        let sc: Scenario = text.parse().unwrap();
        assert_eq!(sc.beta, ratio(1, 3));
        assert_eq!(sc.xi0, Some(ratio(2, 7)));
        assert!(sc.even_curve && sc.nonhyperelliptic);
        assert_eq!(sc.to_string(), text);
        let plain: Scenario = "sep=8 g=2 beta=1/3 p=1 m0=3".parse().unwrap();
        assert_eq!(plain.to_string(), "m0=3 p=1 beta=1/3 g=2 sep=8");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "m0=3 p=x beta=1/3 g=2 sep=8".parse::<Scenario>() {
            Err(BoundsError::Parse(e)) => assert_eq!(e.position, 7),
            other => panic!("{other:?}"),
        }
        match "m0=3 p=1 beta=1/3 g=2 sep=8 odd".parse::<Scenario>() {
            Err(BoundsError::Parse(e)) => assert_eq!(e.position, 28),
            other => panic!("{other:?}"),
        }
        assert!(matches!("m0=3 p=1 beta=1/3 g=2".parse::<Scenario>(), Err(BoundsError::Parse(_))));
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(Scenario::new(3, 1, ratio(1, 3), 2, 4).is_err());
        assert!(Scenario::new(3, 0, ratio(1, 3), 2, 8).is_err());
        assert!(Scenario::new(3, 1, ratio(0, 3), 2, 8).is_err());
        assert!(Scenario::new(3, 1, ratio(1, 3), 1, 8).is_err());
        assert!(Scenario::new(3, 1, ratio(1, 3), 2, 8).unwrap().with_xi0(ratio(-1, 2)).is_err());
    }

    #[test]
    fn coefficient() {
        let sc = Scenario::new(5, 1, ratio(3, 5), 2, 14).unwrap();
        assert_eq!(sc.coefficient(14), ratio(19, 3));
        assert_eq!(sc.coefficient(12), ratio(13, 3));
    }
}
