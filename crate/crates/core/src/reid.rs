//! Terminal quotient singularity baskets and the singular Riemann–Roch
//! plurigenus formula for minimal threefolds of general type.
//!
//! A basket point of type `1/r(a, -a, 1)` is stored as `(b, r)` with
//! `a * b ≡ 1 (mod r)`. For `m >= 2` the plurigenus is
//!
//! ```text
//! P_m = m(m-1)(2m-1)/12 * K^3 - (2m-1) * chi(O) + sum_Q R_m(Q)
//! R_m(Q) = (r^2-1)/(12r) * (m - m') + sum_{j<m'} (bj mod r)(r - (bj mod r)) / (2r)
//! ```
//!
//! where `m'` is the least non-negative residue of `m` modulo `r`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{ParseError, ReidError};
use crate::rational::{self, Rational};

/// A terminal cyclic quotient type `1/r(a, -a, 1)`, keyed by `(b, r)`.
///
/// Ordering is by `(r, b)`, which is the canonical basket order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasketSingularity {
    r: u32,
    b: u32,
}

impl BasketSingularity {
    pub fn new(b: i64, r: i64) -> Result<Self, ReidError> {
        if r < 2 || b <= 0 || b >= r || b.gcd(&r) != 1 || r > u32::MAX as i64 {
            return Err(ReidError::InvalidSingularity { b, r });
        }
        Ok(Self { r: r as u32, b: b as u32 })
    }

    /// Builds the point from the `1/r(a, -a, 1)` weight `a`; `b` is the
    /// inverse of `a` modulo `r`.
    pub fn from_weight(a: i64, r: i64) -> Result<Self, ReidError> {
        if r < 2 || a <= 0 || a >= r {
            return Err(ReidError::InvalidSingularity { b: a, r });
        }
        let b = mod_inverse(a, r).ok_or(ReidError::InvalidSingularity { b: a, r })?;
        Self::new(b, r)
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The weight `a` of `1/r(a, -a, 1)`.
    pub fn a(&self) -> u32 {
        mod_inverse(self.b as i64, self.r as i64).expect("b is a unit mod r") as u32
    }

    pub fn conjugate(&self) -> Self {
        Self { r: self.r, b: self.r - self.b }
    }

    /// Representative with `b <= r - b`.
    pub fn normalized(&self) -> Self {
        if self.b * 2 > self.r {
            self.conjugate()
        } else {
            *self
        }
    }

    pub fn correction(&self, m: i64) -> Result<Rational, ReidError> {
        correction(self, m)
    }
}

impl fmt::Display for BasketSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.b, self.r)
    }
}

fn mod_inverse(a: i64, r: i64) -> Option<i64> {
    let e = a.extended_gcd(&r);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(r))
}

/// The correction term `R_m(Q)` of one basket point.
pub fn correction(q: &BasketSingularity, m: i64) -> Result<Rational, ReidError> {
    if m < 2 {
        return Err(ReidError::Domain(m));
    }
    Ok(correction_unchecked(q, m))
}

/// `R_m(Q)` without the `m >= 2` guard. The expression itself is defined for
/// every `m >= 0`; callers outside this crate go through [`correction`].
pub(crate) fn correction_unchecked(q: &BasketSingularity, m: i64) -> Rational {
    let r = q.r as i64;
    let b = q.b as i64;
    let m_bar = m.rem_euclid(r);
    let mut periodic = 0i64;
    for j in 1..m_bar {
        let t = (b * j) % r;
        periodic += t * (r - t);
    }
    // (r^2-1)(m-m')/(12r) + periodic/(2r), over the common denominator 12r
    let numer = BigInt::from(r * r - 1) * BigInt::from(m - m_bar) + BigInt::from(6 * periodic);
    Rational::new(numer, BigInt::from(12 * r))
}

/// A multiset of basket points, stored as `(point, multiplicity)` in
/// ascending `(r, b)` order with no repeated points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basket {
    entries: Vec<(BasketSingularity, u32)>,
}

impl Basket {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(entries: impl IntoIterator<Item = (BasketSingularity, u32)>) -> Result<Self, ReidError> {
        let mut v: Vec<(BasketSingularity, u32)> = Vec::new();
        for (q, mult) in entries {
            if mult == 0 {
                return Err(ReidError::ZeroMultiplicity);
            }
            v.push((q, mult));
        }
        Ok(Self::merged(v))
    }

    pub fn from_points(points: impl IntoIterator<Item = BasketSingularity>) -> Self {
        Self::merged(points.into_iter().map(|q| (q, 1)).collect())
    }

    fn merged(mut v: Vec<(BasketSingularity, u32)>) -> Self {
        v.sort_by_key(|(q, _)| *q);
        let mut entries: Vec<(BasketSingularity, u32)> = Vec::with_capacity(v.len());
        for (q, mult) in v {
            match entries.last_mut() {
                Some((last, n)) if *last == q => *n += mult,
                _ => entries.push((q, mult)),
            }
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[(BasketSingularity, u32)] {
        &self.entries
    }

    /// Each point repeated according to its multiplicity.
    pub fn points(&self) -> impl Iterator<Item = BasketSingularity> + '_ {
        self.entries.iter().flat_map(|(q, n)| std::iter::repeat_n(*q, *n as usize))
    }

    /// Total number of points counted with multiplicity.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|(_, n)| *n as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Replaces every `b` by `min(b, r - b)` and re-merges.
    pub fn normalized(&self) -> Self {
        Self::merged(self.entries.iter().map(|(q, n)| (q.normalized(), *n)).collect())
    }

    pub fn correction_sum(&self, m: i64) -> Result<Rational, ReidError> {
        if m < 2 {
            return Err(ReidError::Domain(m));
        }
        Ok(self.correction_sum_unchecked(m))
    }

    pub(crate) fn correction_sum_unchecked(&self, m: i64) -> Rational {
        self.entries.iter().fold(Rational::zero(), |acc, (q, n)| {
            acc + correction_unchecked(q, m) * Rational::from_integer(BigInt::from(*n))
        })
    }

    /// Least common multiple of the local indices. Diagnostics only.
    pub fn cartier_index(&self) -> u64 {
        self.entries.iter().fold(1u64, |acc, (q, _)| acc.lcm(&(q.r as u64)))
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_basket(text)
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, n)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *n > 1 {
                write!(f, "{n}*")?;
            }
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

impl FromStr for Basket {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_basket(s)
    }
}

// entry := [mult '*'] b '/' r  |  [mult '*'] '1/' r '(' a ',' x ',' 1 ')'
fn parse_basket(text: &str) -> Result<Basket, ParseError> {
    if text.trim().is_empty() {
        return Ok(Basket::empty());
    }
    let mut entries = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(|| ParseError::new(i, "unbalanced `)`"))?,
            ',' if depth == 0 => {
                entries.push(parse_entry(&text[start..i], start)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(ParseError::new(text.len(), "unclosed `(`"));
    }
    entries.push(parse_entry(&text[start..], start)?);
    Ok(Basket::merged(entries))
}

fn parse_int(text: &str, base: usize) -> Result<i64, ParseError> {
    let lead = text.len() - text.trim_start().len();
    text.trim()
        .parse::<i64>()
        .map_err(|_| ParseError::new(base + lead, format!("expected an integer, found `{}`", text.trim())))
}

fn parse_entry(text: &str, base: usize) -> Result<(BasketSingularity, u32), ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::new(base, "empty basket entry"));
    }
    let (mult, body, body_base) = match text.split_once('*') {
        Some((m, rest)) => {
            let mult = parse_int(m, base)?;
            if mult < 1 {
                return Err(ParseError::new(base, "multiplicity must be at least 1"));
            }
            (mult as u32, rest, base + m.len() + 1)
        }
        None => (1, text, base),
    };
    let slash = body.find('/').ok_or_else(|| ParseError::new(body_base + body.len(), "expected `b/r`"))?;
    let lhs = parse_int(&body[..slash], body_base)?;
    let rest = &body[slash + 1..];
    let rest_base = body_base + slash + 1;
    let point = match rest.find('(') {
        None => {
            let r = parse_int(rest, rest_base)?;
            BasketSingularity::new(lhs, r).map_err(|e| ParseError::new(body_base, e.to_string()))?
        }
        Some(open) => {
            if lhs != 1 {
                return Err(ParseError::new(body_base, "weight notation must read `1/r(a,-a,1)`"));
            }
            let r = parse_int(&rest[..open], rest_base)?;
            let inner_base = rest_base + open + 1;
            let close = rest.rfind(')').ok_or_else(|| ParseError::new(rest_base + rest.len(), "expected `)`"))?;
            if !rest[close + 1..].trim().is_empty() {
                return Err(ParseError::new(rest_base + close + 1, "trailing characters"));
            }
            let inner = &rest[open + 1..close];
            let mut weights = Vec::new();
            let mut off = 0usize;
            for piece in inner.split(',') {
                weights.push(parse_int(piece, inner_base + off)?);
                off += piece.len() + 1;
            }
            if weights.len() != 3 || r < 2 {
                return Err(ParseError::new(inner_base, "expected three weights `a,-a,1`"));
            }
            let a = weights[0].rem_euclid(r);
            if (weights[0] + weights[1]).rem_euclid(r) != 0 || weights[2].rem_euclid(r) != 1 {
                return Err(ParseError::new(inner_base, "weights must have the form `a,-a,1` mod r"));
            }
            BasketSingularity::from_weight(a, r).map_err(|e| ParseError::new(inner_base, e.to_string()))?
        }
    };
    Ok((point, mult))
}

/// The numerical data entering the plurigenus formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluriData {
    pub chi: i64,
    pub k3: Rational,
    pub basket: Basket,
}

impl PluriData {
    pub fn new(chi: i64, k3: Rational, basket: Basket) -> Result<Self, ReidError> {
        if !k3.is_positive() {
            return Err(ReidError::NonPositiveK3(rational::format(&k3)));
        }
        Ok(Self { chi, k3, basket })
    }

    pub fn plurigenus(&self, m: i64) -> Result<Rational, ReidError> {
        reid_plurigenus(self, m)
    }
}

/// `m(m-1)(2m-1)/12`, the coefficient of `K^3`.
pub fn k3_coefficient(m: i64) -> Rational {
    rational::ratio(m * (m - 1) * (2 * m - 1), 12)
}

pub fn reid_plurigenus(d: &PluriData, m: i64) -> Result<Rational, ReidError> {
    if m < 2 {
        return Err(ReidError::Domain(m));
    }
    Ok(k3_coefficient(m) * &d.k3 - rational::int((2 * m - 1) * d.chi) + d.basket.correction_sum_unchecked(m))
}

/// `chi(O_X) = 1 - q + h^2(O_X) - p_g` for a threefold. `chi(omega) = -chi(O)`.
pub fn chi_structure_sheaf(p_g: i64, q: i64, h2: i64) -> i64 {
    1 - q + h2 - p_g
}

pub fn chi_omega(p_g: i64, q: i64, h2: i64) -> i64 {
    -chi_structure_sheaf(p_g, q, h2)
}

/// All `(b, r)` with `2 <= r <= r_max`, `0 < b < r`, `gcd(b, r) = 1`, in
/// canonical order.
pub fn enumerate_quotient_types(r_max: u32) -> Vec<BasketSingularity> {
    let mut out = Vec::new();
    for r in 2..=r_max {
        for b in 1..r {
            if b.gcd(&r) == 1 {
                out.push(BasketSingularity { r, b });
            }
        }
    }
    out
}

/// The conjugation-normalized subset of [`enumerate_quotient_types`].
pub fn normalized_quotient_types(r_max: u32) -> Vec<BasketSingularity> {
    enumerate_quotient_types(r_max).into_iter().filter(|q| q.b * 2 <= q.r).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityViolation {
    pub point: BasketSingularity,
    /// `R_m < R_{m-1}` was observed at this `m`.
    pub m: i64,
}

#[derive(Clone, Debug, Default)]
pub struct MonotonicityReport {
    pub types_checked: usize,
    pub violations: Vec<MonotonicityViolation>,
    /// Points and `m` where `R_m = R_{m-1}` holds with equality.
    pub equalities: Vec<(BasketSingularity, i64, Rational)>,
}

impl MonotonicityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `R_5 >= R_4 >= R_3 >= R_2` for every quotient type with `r <= r_max`.
pub fn check_monotonicity(r_max: u32) -> MonotonicityReport {
    let mut report = MonotonicityReport::default();
    for q in enumerate_quotient_types(r_max) {
        report.types_checked += 1;
        let values: Vec<Rational> = (2..=5).map(|m| correction_unchecked(&q, m)).collect();
        for (i, pair) in values.windows(2).enumerate() {
            let m = i as i64 + 3;
            if pair[1] < pair[0] {
                report.violations.push(MonotonicityViolation { point: q, m });
            } else if pair[1] == pair[0] {
                report.equalities.push((q, m, pair[1].clone()));
            }
        }
    }
    report
}
