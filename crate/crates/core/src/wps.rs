//! Hypersurfaces `X_d` in weighted projective 4-space.
//!
//! For a quasi-smooth `X_d ⊂ P(a0, .., a4)` the graded ring has Hilbert
//! series `(1 - t^d) / prod(1 - t^ai)`, so `h^0(O_X(n))` is the number of
//! monomials of weighted degree `n` minus those of degree `n - d`. The
//! canonical sheaf is `O_X(k)` with `k = d - sum(ai)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{ParseError, WpsError};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightedHypersurface {
    pub weights: [u32; 5],
    pub degree: u32,
}

impl WeightedHypersurface {
    pub fn new(weights: [u32; 5], degree: u32) -> Result<Self, WpsError> {
        if degree == 0 || weights.contains(&0) {
            return Err(WpsError::NonPositive);
        }
        Ok(Self { weights, degree })
    }

    /// Like [`new`](Self::new) but also rejects ill-formed weights.
    pub fn well_formed_new(weights: [u32; 5], degree: u32) -> Result<Self, WpsError> {
        let x = Self::new(weights, degree)?;
        x.validate()?;
        Ok(x)
    }

    pub fn well_formed(&self) -> bool {
        well_formed(&self.weights)
    }

    fn validate(&self) -> Result<(), WpsError> {
        if self.well_formed() {
            Ok(())
        } else {
            Err(WpsError::IllFormed(self.weights))
        }
    }

    /// `k = d - sum(ai)`.
    pub fn canonical_weight(&self) -> i64 {
        self.degree as i64 - self.weights.iter().map(|&a| a as i64).sum::<i64>()
    }

    pub fn hilbert_coefficient(&self, n: i64) -> Result<BigInt, WpsError> {
        hilbert_coefficient(self, n)
    }

    pub fn plurigenus(&self, m: i64) -> Result<BigInt, WpsError> {
        plurigenus_wps(self, m)
    }

    pub fn k3(&self) -> Result<Rational, WpsError> {
        k3(self)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        text.parse()
    }
}

impl fmt::Display for WeightedHypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.weights;
        write!(f, "{}:{},{},{},{},{}", self.degree, w[0], w[1], w[2], w[3], w[4])
    }
}

// `d:a0,a1,a2,a3,a4`
impl FromStr for WeightedHypersurface {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let colon = text.find(':').ok_or_else(|| ParseError::new(text.len(), "expected `d:a0,a1,a2,a3,a4`"))?;
        let degree = parse_positive(&text[..colon], 0)?;
        let mut weights = [0u32; 5];
        let mut count = 0usize;
        let mut off = colon + 1;
        for piece in text[colon + 1..].split(',') {
            if count == 5 {
                return Err(ParseError::new(off, "expected exactly five weights"));
            }
            weights[count] = parse_positive(piece, off)?;
            count += 1;
            off += piece.len() + 1;
        }
        if count != 5 {
            return Err(ParseError::new(text.len(), "expected exactly five weights"));
        }
        Ok(Self { weights, degree })
    }
}

fn parse_positive(text: &str, base: usize) -> Result<u32, ParseError> {
    let lead = text.len() - text.trim_start().len();
    match text.trim().parse::<u32>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(ParseError::new(base + lead, format!("expected a positive integer, found `{}`", text.trim()))),
    }
}

/// True iff every 4-element subset of the weights has gcd 1.
pub fn well_formed(weights: &[u32; 5]) -> bool {
    (0..5).all(|skip| weights.iter().enumerate().filter(|(i, _)| *i != skip).fold(0u32, |g, (_, &a)| g.gcd(&a)) == 1)
}

/// Number of monomials of weighted degree `0..=n_max`, by convolving one
/// geometric series per weight.
pub fn monomial_counts(weights: &[u32; 5], n_max: usize) -> Vec<BigInt> {
    let mut counts = vec![BigInt::zero(); n_max + 1];
    counts[0] = BigInt::from(1);
    for &a in weights {
        let a = a as usize;
        for n in a..=n_max {
            let prev = counts[n - a].clone();
            counts[n] += prev;
        }
    }
    counts
}

/// `h^0(O_X(n))` for `n = 0..=n_max`.
pub fn hilbert_series(x: &WeightedHypersurface, n_max: usize) -> Result<Vec<BigInt>, WpsError> {
    x.validate()?;
    let raw = monomial_counts(&x.weights, n_max);
    let d = x.degree as usize;
    Ok((0..=n_max).map(|n| if n >= d { &raw[n] - &raw[n - d] } else { raw[n].clone() }).collect())
}

pub fn hilbert_coefficient(x: &WeightedHypersurface, n: i64) -> Result<BigInt, WpsError> {
    if n < 0 {
        return Err(WpsError::NegativeDegree(n));
    }
    let series = hilbert_series(x, n as usize)?;
    Ok(series[n as usize].clone())
}

/// `P_m = h^0(O_X(m k))`; `P_1 = p_g`.
pub fn plurigenus_wps(x: &WeightedHypersurface, m: i64) -> Result<BigInt, WpsError> {
    let k = x.canonical_weight();
    if k <= 0 {
        return Err(WpsError::UnsupportedDomain(k));
    }
    if m < 0 {
        return Err(WpsError::NegativeDegree(m));
    }
    hilbert_coefficient(x, m * k)
}

/// `P_1..=P_m_max` in one pass.
pub fn plurigenera(x: &WeightedHypersurface, m_max: i64) -> Result<Vec<BigInt>, WpsError> {
    let k = x.canonical_weight();
    if k <= 0 {
        return Err(WpsError::UnsupportedDomain(k));
    }
    let series = hilbert_series(x, (m_max.max(0) * k) as usize)?;
    Ok((1..=m_max).map(|m| series[(m * k) as usize].clone()).collect())
}

/// `K^3 = k^3 d / prod(ai)`.
pub fn k3(x: &WeightedHypersurface) -> Result<Rational, WpsError> {
    x.validate()?;
    let k = BigInt::from(x.canonical_weight());
    let prod: BigInt = x.weights.iter().map(|&a| BigInt::from(a)).product();
    Ok(Rational::new(&k * &k * &k * BigInt::from(x.degree), prod))
}

/// The three hypersurfaces used throughout the crate's examples.
pub mod catalog {
    use super::WeightedHypersurface;

    /// `X_28 ⊂ P(1,3,4,5,14)`.
    pub fn x28() -> WeightedHypersurface {
        WeightedHypersurface { weights: [1, 3, 4, 5, 14], degree: 28 }
    }

    /// `X_16 ⊂ P(1,1,2,3,8)`.
    pub fn x16() -> WeightedHypersurface {
        WeightedHypersurface { weights: [1, 1, 2, 3, 8], degree: 16 }
    }

    /// `X_22 ⊂ P(1,2,3,4,11)`.
    pub fn x22() -> WeightedHypersurface {
        WeightedHypersurface { weights: [1, 2, 3, 4, 11], degree: 22 }
    }
}
