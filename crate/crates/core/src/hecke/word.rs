use std::fmt;

use super::SpecError;

/// Braid word as `(generator, exponent)` letters with 0-based generators.
///
/// Adjacent letters on the same generator are merged, so the stored form is freely
/// reduced with respect to single generators and never carries a zero exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<(usize, i32)>,
}

/// JSON form: `[[generator, exponent], ...]` with 1-based generators.
pub type WordJson = Vec<(usize, i32)>;

impl BraidWord {
    pub fn empty() -> Self {
        BraidWord::default()
    }

    pub fn letter(generator: usize, exponent: i32) -> Self {
        let mut w = BraidWord::empty();
        w.push(generator, exponent);
        w
    }

    /// Rejects zero exponents; adjacent letters on one generator are merged.
    pub fn new(letters: &[(usize, i32)]) -> Result<Self, SpecError> {
        let mut w = BraidWord::empty();
        for &(g, e) in letters {
            if e == 0 {
                return Err(SpecError::Word(format!("zero exponent on s{}", g + 1)));
            }
            w.push(g, e);
        }
        Ok(w)
    }

    fn push(&mut self, g: usize, e: i32) {
        match self.letters.last_mut() {
            Some((last, x)) if *last == g => {
                *x += e;
                if *x == 0 {
                    self.letters.pop();
                }
            }
            _ if e != 0 => self.letters.push((g, e)),
            _ => {}
        }
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> usize {
        self.letters.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, n: u32) -> BraidWord {
        (0..n).fold(BraidWord::empty(), |acc, _| acc.concat(self))
    }

    /// Reversed word with negated exponents.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Parses whitespace-separated `s<k>^<e>` tokens (`^1` may be omitted, `k` is
    /// 1-based). The empty string and `1` denote the empty word.
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(BraidWord::empty());
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let bad = || SpecError::Word(format!("bad token `{token}`"));
            let body = token.strip_prefix('s').ok_or_else(bad)?;
            let (gen, exp) = match body.split_once('^') {
                Some((g, e)) => (g, e.parse::<i32>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let g: usize = gen.parse().map_err(|_| bad())?;
            if g == 0 {
                return Err(SpecError::Word(format!("generators are numbered from 1 in `{token}`")));
            }
            if exp == 0 {
                return Err(SpecError::Word(format!("zero exponent in `{token}`")));
            }
            letters.push((g - 1, exp));
        }
        Self::new(&letters)
    }

    pub fn to_json(&self) -> WordJson {
        self.letters.iter().map(|&(g, e)| (g + 1, e)).collect()
    }

    pub fn from_json(json: &WordJson) -> Result<Self, SpecError> {
        let mut letters = Vec::with_capacity(json.len());
        for &(g, e) in json {
            if g == 0 {
                return Err(SpecError::Word("generator index 0 (indices are 1-based)".into()));
            }
            letters.push((g - 1, e));
        }
        Self::new(&letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let tokens: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    format!("s{}", g + 1)
                } else {
                    format!("s{}^{}", g + 1, e)
                }
            })
            .collect();
        write!(f, "{}", tokens.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_render() {
        let w = BraidWord::parse("s1^2 s2^-1 s2^-1").unwrap();
        assert_eq!(w.letters(), &[(0, 2), (1, -2)]);
        assert_eq!(w.to_string(), "s1^2 s2^-2");
        assert_eq!(BraidWord::parse("s1 s2 s1").unwrap().length(), 3);
        assert!(BraidWord::parse("").unwrap().is_empty());
        assert!(BraidWord::parse("1").unwrap().is_empty());
        assert_eq!(BraidWord::parse("s2 s2^-1").unwrap(), BraidWord::empty());
    }

    #[test]
    fn malformed_words() {
        for bad in ["s1^0", "s0", "t1", "s1^", "s1^x", "s", "s1 ^2"] {
            assert!(BraidWord::parse(bad).is_err(), "{bad}");
        }
        assert!(BraidWord::new(&[(0, 0)]).is_err());
        assert!(BraidWord::from_json(&vec![(0, 1)]).is_err());
    }

    #[test]
    fn inverse_and_powers() {
        let w = BraidWord::parse("s1 s2^-2").unwrap();
        assert_eq!(w.inverse().to_string(), "s2^2 s1^-1");
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.pow(2).length(), 6);
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(letters in prop::collection::vec((0usize..3, -3i32..=3), 0..8)) {
            let letters: Vec<_> = letters.into_iter().filter(|&(_, e)| e != 0).collect();
            let w = BraidWord::new(&letters).unwrap();
            prop_assert_eq!(BraidWord::parse(&w.to_string()).unwrap(), w.clone());
            prop_assert_eq!(BraidWord::from_json(&w.to_json()).unwrap(), w);
        }
    }
}
