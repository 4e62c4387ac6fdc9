use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::text::PolyJson;
use super::RingError;

/// An element `num / den` of the fraction field of the Laurent ring.
///
/// Kept in a light normal form: the denominator has no monomial factor, a positive leading
/// coefficient, and numerator and denominator share no integer content. If the
/// denominator divides the numerator the fraction collapses to `q / 1`. No polynomial gcd
/// is taken, so equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FracOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(RingError::VariableCount {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let den = LaurentPoly::one(p.nvars());
        RatFunc { num: p, den }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return Self::zero(nvars);
        }
        if den.num_terms() == 1 {
            // monomial denominators are absorbed up to their integer part
            let (m, c) = den.leading_term().unwrap().clone();
            let num = num.mul_monomial(&m.inv());
            let g = num.integer_content().gcd(&c);
            let mut num = num.div_integer_exact(&g);
            let mut c = c / g;
            if c.is_negative() {
                num = -num;
                c = -c;
            }
            return RatFunc {
                num,
                den: LaurentPoly::constant(nvars, c),
            };
        }
        if let Ok(q) = num.exact_div(&den) {
            return Self::from_poly(q);
        }
        let shift = den.monomial_content().inv();
        let mut num = num.mul_monomial(&shift);
        let mut den = den.mul_monomial(&shift);
        let g = num.integer_content().gcd(&den.integer_content());
        if !g.is_zero() && g != 1.into() {
            num = num.div_integer_exact(&g);
            den = den.div_integer_exact(&g);
        }
        if den.leading_term().unwrap().1.is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    #[inline]
    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    #[inline]
    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The element as a Laurent polynomial, when it lies in the ring.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            return Some(self.num.clone());
        }
        self.num.exact_div(&self.den).ok()
    }

    pub fn is_in_ring(&self) -> bool {
        self.to_poly().is_some()
    }

    pub fn arith(&self, other: &Self, op: FracOp) -> Result<Self, RingError> {
        if self.nvars() != other.nvars() {
            return Err(RingError::VariableCount {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(match op {
            FracOp::Add => self + other,
            FracOp::Sub => self - other,
            FracOp::Mul => self * other,
            FracOp::Div => self.checked_div(other)?,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RingError> {
        if other.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn inverse(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    fn add_sub(&self, other: &Self, negate: bool) -> Self {
        let combine = |a: &LaurentPoly, b: &LaurentPoly| if negate { a - b } else { a + b };
        if self.den == other.den {
            return Self::normalized(combine(&self.num, &other.num), self.den.clone());
        }
        if other.den.is_one() {
            return Self::normalized(combine(&self.num, &(&other.num * &self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return Self::normalized(combine(&(&self.num * &other.den), &other.num), other.den.clone());
        }
        Self::normalized(
            combine(&(&self.num * &other.den), &(&other.num * &self.den)),
            &self.den * &other.den,
        )
    }

    pub fn specialize(&self, point: &[BigRational]) -> Result<BigRational, RingError> {
        let d = self.den.specialize(point)?;
        if d.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(self.num.specialize(point)? / d)
    }

    pub fn to_json(&self) -> RatFuncJson {
        RatFuncJson {
            num: self.num.to_json(),
            den: self.den.to_json(),
        }
    }

    pub fn from_json(nvars: usize, json: &RatFuncJson) -> Result<Self, RingError> {
        Self::new(
            LaurentPoly::from_json(nvars, &json.num)?,
            LaurentPoly::from_json(nvars, &json.den)?,
        )
    }
}

/// JSON form of a rational function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_sub(rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_sub(rhs, true)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}
