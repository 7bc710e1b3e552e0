//! Exact Laurent polynomials over the integers in the bracket variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("span undefined for the zero polynomial")]
    SpanOfZero,
    #[error("cannot parse polynomial term `{0}`")]
    Parse(String),
}

/// A finite sum `Σ c_e A^e` with nonzero integer coefficients.
///
/// Terms are kept in a map keyed by exponent; a zero coefficient is never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coeff · A^exp`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// The loop value `δ = −A² − A⁻²`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    /// `δ^k`, with `δ^0 = 1`.
    pub fn delta_power(k: u32) -> Self {
        let delta = Self::delta();
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * &delta;
        }
        out
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (exp, coeff) in terms {
            out.add_term(exp, coeff.into());
        }
        out
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest minus lowest exponent.
    pub fn span(&self) -> Result<u64, LaurentError> {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) as u64),
            _ => Err(LaurentError::SpanOfZero),
        }
    }

    /// Substitutes `A → A⁻¹`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    /// Machine form: `[exponent, coefficient]` pairs by descending exponent.
    pub fn machine_form(&self) -> Vec<(i64, BigInt)> {
        self.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    /// `true` when every exponent is divisible by `m`.
    pub fn exponents_divisible_by(&self, m: i64) -> bool {
        self.terms.keys().all(|e| e.rem_euclid(m) == 0)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical rendering, e.g. `-A^5 - A^-3 + A^-7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, coeff)) in self.terms().enumerate() {
            let magnitude = coeff.abs();
            match (i, coeff.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if exp == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            if exp == 1 {
                f.write_str("A")?;
            } else {
                write!(f, "A^{exp}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Parses the canonical rendering (and anything close to it: spacing and term
    /// order are not significant).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero());
        }
        if compact.is_empty() {
            return Err(LaurentError::Parse(s.to_string()));
        }
        // Split into signed chunks; a '-' directly after '^' belongs to the exponent.
        let mut chunks = Vec::new();
        let mut current = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && !current.is_empty() {
                chunks.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        chunks.push(current);

        let mut out = Self::zero();
        for chunk in chunks {
            let (exp, coeff) = parse_term(&chunk).ok_or_else(|| LaurentError::Parse(chunk.clone()))?;
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

fn parse_term(chunk: &str) -> Option<(i64, BigInt)> {
    let (sign, body) = match chunk.as_bytes().first()? {
        b'-' => (-1, &chunk[1..]),
        b'+' => (1, &chunk[1..]),
        _ => (1, chunk),
    };
    let (coeff, exp) = match body.find('A') {
        None => (body.parse::<BigInt>().ok()?, 0),
        Some(pos) => {
            let coeff = match &body[..pos] {
                "" => BigInt::one(),
                c => c.trim_end_matches('*').parse::<BigInt>().ok()?,
            };
            let rest = &body[pos + 1..];
            let exp = match rest {
                "" => 1,
                r => r.strip_prefix('^')?.parse::<i64>().ok()?,
            };
            (coeff, exp)
        }
    };
    Some((exp, coeff * sign))
}

impl Serialize for LaurentPoly {
    /// Serializes as the machine form. Coefficients that fit in `i64` are JSON
    /// integers; larger ones are decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (exp, coeff) in self.terms() {
            match coeff.to_i64() {
                Some(small) => seq.serialize_element(&(exp, small))?,
                None => seq.serialize_element(&(exp, coeff.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(i64, CoeffRepr)> = Vec::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero();
        for (exp, coeff) in raw {
            let coeff = match coeff {
                CoeffRepr::Small(c) => BigInt::from(c),
                CoeffRepr::Big(s) => s.parse::<BigInt>().map_err(de::Error::custom)?,
            };
            if coeff.is_zero() {
                return Err(de::Error::custom(format!("zero coefficient at exponent {exp}")));
            }
            out.add_term(exp, coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((&p("A^2") + &p("-A^2")).is_zero());
        assert_eq!(&p("A + A^-1") + &p("A"), p("2A + A^-1"));
        let d = LaurentPoly::delta();
        assert_eq!(&d + &d, p("-2A^2 - 2A^-2"));
    }

    #[test]
    fn mul_examples() {
        let q = p("3A^4 - A^-1 + 7");
        assert_eq!(&q * &LaurentPoly::one(), q);
        let d = LaurentPoly::delta();
        assert_eq!(&d * &d, p("A^4 + 2 + A^-4"));
        assert_eq!(&p("A") * &p("A^-1"), LaurentPoly::one());
    }

    #[test]
    fn delta_powers() {
        assert_eq!(LaurentPoly::delta_power(0), LaurentPoly::one());
        assert_eq!(LaurentPoly::delta_power(1), p("-A^2 - A^-2"));
        assert_eq!(LaurentPoly::delta_power(2), p("A^4 + 2 + A^-4"));
    }

    #[test]
    fn span_examples() {
        assert_eq!(p("A^3").span(), Ok(0));
        assert_eq!(p("-A^5 - A^-3 + A^-7").span(), Ok(12));
        assert_eq!(LaurentPoly::delta().span(), Ok(4));
        assert_eq!(LaurentPoly::zero().span(), Err(LaurentError::SpanOfZero));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(p("A^2 + 3A^-6").mirror(), p("A^-2 + 3A^6"));
        assert_eq!(LaurentPoly::delta().mirror(), LaurentPoly::delta());
    }

    #[test]
    fn canonical_rendering() {
        let q = LaurentPoly::from_terms([(-7, 1), (5, -1), (-3, -1)]);
        assert_eq!(q.to_string(), "-A^5 - A^-3 + A^-7");
        assert_eq!(p("2A + A^-1").to_string(), "2A + A^-1");
        assert_eq!(p("-3 + A^2").to_string(), "A^2 - 3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn machine_form_and_json() {
        let q = p("-A^5 - A^-3 + A^-7");
        assert_eq!(serde_json::to_string(&q).unwrap(), "[[5,-1],[-3,-1],[-7,1]]");
        let huge = LaurentPoly::monomial(2, BigInt::from(i64::MAX) * 1000);
        let text = serde_json::to_string(&huge).unwrap();
        assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), huge);
        assert!(serde_json::from_str::<LaurentPoly>("[[1,0]]").is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("A^".parse::<LaurentPoly>().is_err());
        assert!("B".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..=6, -4i64..=4), 0..5).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn span_is_additive(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).span().unwrap(), a.span().unwrap() + b.span().unwrap());
        }

        #[test]
        fn mirror_is_ring_involution(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(a.mirror().mirror(), a.clone());
            prop_assert_eq!((&a * &b).mirror(), &a.mirror() * &b.mirror());
            prop_assert_eq!((&a + &b).mirror(), &a.mirror() + &b.mirror());
        }

        #[test]
        fn text_round_trip(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
