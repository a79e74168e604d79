//! The increasing sequence `beta_n = b_n / a_n` for a rational pencil.
//!
//! `a_0 = t0 p + 2 t0 m0`, `b_0 = t0 p`, and each step adds `p + m0` to `a`
//! and `p` to `b`. The terms increase strictly toward `p / (m0 + p)`.

use num_bigint::BigInt;

use crate::error::BoundsError;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaSequence {
    pub m0: i64,
    pub p: i64,
    pub t0: i64,
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
}

impl BetaSequence {
    pub fn terms(&self) -> Vec<Rational> {
        self.a.iter().zip(&self.b).map(|(a, b)| Rational::new(b.clone(), a.clone())).collect()
    }

    pub fn term(&self, n: usize) -> Option<Rational> {
        Some(Rational::new(self.b.get(n)?.clone(), self.a.get(n)?.clone()))
    }

    /// `p / (m0 + p)`.
    pub fn limit(&self) -> Rational {
        rational::ratio(self.p, self.m0 + self.p)
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.terms().windows(2).all(|w| w[0] < w[1])
    }
}

/// Terms `0..=n`.
pub fn beta_sequence(m0: i64, p: i64, t0: i64, n: usize) -> Result<BetaSequence, BoundsError> {
    if m0 < 1 || p < 1 || t0 < 1 {
        return Err(BoundsError::InvalidScenario(format!(
            "beta sequence needs positive m0, p, t0; got {m0}, {p}, {t0}"
        )));
    }
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    let mut an = BigInt::from(t0 * p + 2 * t0 * m0);
    let mut bn = BigInt::from(t0 * p);
    for _ in 0..=n {
        a.push(an.clone());
        b.push(bn.clone());
        an += p + m0;
        bn += p;
    }
    Ok(BetaSequence { m0, p, t0, a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn first_terms_and_limits() {
        let s = beta_sequence(5, 3, 1, 4).unwrap();
        assert_eq!(s.term(0), Some(ratio(3, 13)));
        assert_eq!(s.limit(), ratio(3, 8));
        let s = beta_sequence(2, 1, 7, 3).unwrap();
        assert_eq!(s.term(0), Some(ratio(1, 5)));
        assert_eq!(s.limit(), ratio(1, 3));
        assert_eq!(s.term(1), Some(ratio(8, 38)));
    }

    #[test]
    fn first_term_is_independent_of_t0() {
        for m0 in 1..8 {
            for p in 1..6 {
                for t0 in 1..5 {
                    let s = beta_sequence(m0, p, t0, 0).unwrap();
                    assert_eq!(s.term(0), Some(ratio(p, p + 2 * m0)));
                }
            }
        }
    }

    #[test]
    fn increasing_and_bounded() {
        let s = beta_sequence(3, 2, 2, 200).unwrap();
        assert!(s.is_strictly_increasing());
        assert!(s.terms().iter().all(|t| *t < s.limit()));
        assert!(beta_sequence(0, 1, 1, 1).is_err());
    }
}
