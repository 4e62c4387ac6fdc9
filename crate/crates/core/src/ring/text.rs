//! Text and JSON renderings of Laurent polynomials.
//!
//! Text: terms in descending term order, each written as `coeff*u1^e1*u2^e2...` with
//! exponent `1` left implicit, e.g. `-1*u1^2*u2^-1 + 3`. Negative coefficients after the
//! first term are written with ` - `.
//!
//! JSON: a list of `[exponent-vector, coefficient-string]` pairs in the same order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::laurent::LaurentPoly;
use super::monomial::{Monomial, MAX_VARS};
use super::RingError;

/// Serialized form of a polynomial: `[[exponents...], "coefficient"]` pairs.
pub type PolyJson = Vec<(Vec<i32>, String)>;

fn write_term(
    f: &mut fmt::Formatter<'_>,
    m: &Monomial,
    c: &BigInt,
    nvars: usize,
) -> fmt::Result {
    write!(f, "{c}")?;
    for (i, &e) in m.exponents(nvars).iter().enumerate() {
        match e {
            0 => {}
            1 => write!(f, "*u{}", i + 1)?,
            _ => write!(f, "*u{}^{}", i + 1, e)?,
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().iter().enumerate() {
            if i == 0 {
                write_term(f, m, c, self.nvars())?;
            } else if c.is_negative() {
                write!(f, " - ")?;
                write_term(f, m, &-c, self.nvars())?;
            } else {
                write!(f, " + ")?;
                write_term(f, m, c, self.nvars())?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parses the text rendering. Variables are `u1`..`uk`; products use `*`; a bare
    /// variable or integer is accepted as a factor in any position.
    pub fn parse(text: &str, nvars: usize) -> Result<Self, RingError> {
        let bad = |msg: &str| RingError::Parse(format!("{msg} in {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty polynomial"));
        }

        // Split at top-level signs; a sign right after `^` belongs to an exponent.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                    negative = false;
                }
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(bad("dangling sign"));
        }
        pieces.push((negative, current));

        let mut terms = Vec::with_capacity(pieces.len());
        for (neg, body) in pieces {
            let mut coeff = BigInt::from(1);
            let mut exps = [0i32; MAX_VARS];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(bad("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('u') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx == 0 || idx > nvars {
                        return Err(bad("variable out of range"));
                    }
                    exps[idx - 1] += exp;
                } else {
                    let c: BigInt = factor.parse().map_err(|_| bad("bad coefficient"))?;
                    coeff *= c;
                }
            }
            if neg {
                coeff = -coeff;
            }
            terms.push((Monomial::from_exponents(&exps[..nvars]), coeff));
        }
        Ok(LaurentPoly::from_terms(nvars, terms))
    }

    pub fn to_json(&self) -> PolyJson {
        self.terms()
            .iter()
            .map(|(m, c)| (m.exponents(self.nvars()).to_vec(), c.to_string()))
            .collect()
    }

    pub fn from_json(nvars: usize, json: &PolyJson) -> Result<Self, RingError> {
        let mut terms = Vec::with_capacity(json.len());
        for (exps, coeff) in json {
            if exps.len() != nvars {
                return Err(RingError::Parse(format!(
                    "exponent vector of length {} for {nvars} variables",
                    exps.len()
                )));
            }
            let c: BigInt = coeff
                .parse()
                .map_err(|_| RingError::Parse(format!("bad coefficient {coeff:?}")))?;
            if c.is_zero() {
                return Err(RingError::Parse("zero coefficient stored".into()));
            }
            terms.push((Monomial::from_exponents(exps), c));
        }
        let p = LaurentPoly::from_terms(nvars, terms);
        if p.num_terms() != json.len() {
            return Err(RingError::Parse("repeated monomial".into()));
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.num_terms()))?;
        for (m, c) in self.terms() {
            seq.serialize_element(&(m.exponents(self.nvars()), c.to_string()))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_documented_example() {
        let p = LaurentPoly::from_terms(
            2,
            vec![
                (Monomial::ONE, BigInt::from(3)),
                (Monomial::from_exponents(&[2, -1]), BigInt::from(-1)),
            ],
        );
        assert_eq!(p.to_string(), "-1*u1^2*u2^-1 + 3");
        assert_eq!(LaurentPoly::parse("-1*u1^2*u2^-1 + 3", 2).unwrap(), p);
    }

    #[test]
    fn renders_negative_tail_and_zero() {
        let p = LaurentPoly::parse("u1 - 2*u2 - 1", 2).unwrap();
        assert_eq!(p.to_string(), "1*u1 - 2*u2 - 1");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        assert!(LaurentPoly::parse("0", 2).unwrap().is_zero());
    }

    #[test]
    fn parse_errors() {
        assert!(LaurentPoly::parse("u4", 3).is_err());
        assert!(LaurentPoly::parse("u1 +", 3).is_err());
        assert!(LaurentPoly::parse("", 3).is_err());
        assert!(LaurentPoly::parse("u1**u2", 3).is_err());
        assert!(LaurentPoly::parse("x", 3).is_err());
    }

    #[test]
    fn json_rejects_malformed() {
        assert!(LaurentPoly::from_json(2, &vec![(vec![1], "1".into())]).is_err());
        assert!(LaurentPoly::from_json(1, &vec![(vec![1], "0".into())]).is_err());
        assert!(LaurentPoly::from_json(1, &vec![(vec![1], "1".into()), (vec![1], "2".into())]).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::array::uniform3(-3i32..4), -20i64..21), 0..6).prop_map(
            |terms| {
                LaurentPoly::from_terms(
                    3,
                    terms
                        .into_iter()
                        .map(|(e, c)| (Monomial::from_exponents(&e), BigInt::from(c))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn text_round_trip(p in arb_poly()) {
            prop_assert_eq!(LaurentPoly::parse(&p.to_string(), 3).unwrap(), p);
        }

        #[test]
        fn json_round_trip(p in arb_poly()) {
            let text = serde_json::to_string(&p).unwrap();
            let back: PolyJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(LaurentPoly::from_json(3, &back).unwrap(), p);
        }
    }
}
