use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::monomial::{Monomial, MAX_VARS};
use super::RingError;

/// An element of `Z[u1^±, ..., uk^±]`.
///
/// Terms are kept sorted in descending graded-lex order with no zero coefficients, so
/// structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: Vec<(Monomial, BigInt)>,
}

/// Binary operations accepted by [`LaurentPoly::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        LaurentPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, Monomial::ONE, c)
    }

    pub fn term(nvars: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// The variable `u_{index+1}` (zero-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        Self::term(nvars, Monomial::var(index, 1), 1)
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let raw: Vec<(Monomial, BigInt)> = terms.into_iter().map(|(m, c)| (m, c.into())).collect();
        Self::canonicalize(nvars, raw)
    }

    fn canonicalize(nvars: usize, mut raw: Vec<(Monomial, BigInt)>) -> Self {
        raw.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Monomial, BigInt)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        let mut p = Self::zero(nvars);
        p.terms = terms;
        p
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn trailing_term(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    /// Componentwise minimum of the exponents of all terms (the largest monomial factor).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter().map(|(m, _)| *m);
        match it.next() {
            Some(first) => it.fold(first, |acc, m| acc.gcd(&m)),
            None => Monomial::ONE,
        }
    }

    /// Nonnegative gcd of the integer coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_polynomial())
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(tm, _)| m.cmp(tm))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    fn check_vars(&self, other: &Self) -> Result<(), RingError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(RingError::VariableCount {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    /// Checked ring operation; fails only on mismatched variable counts.
    pub fn arith(&self, other: &Self, op: PolyOp) -> Result<Self, RingError> {
        self.check_vars(other)?;
        Ok(match op {
            PolyOp::Add => self.merge(other, false),
            PolyOp::Sub => self.merge(other, true),
            PolyOp::Mul => self.mul_impl(other),
        })
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    terms.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        terms.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(
            b[j..]
                .iter()
                .map(|(m, c)| (*m, if negate { -c } else { c.clone() })),
        );
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma.mul(mb), ca * cb));
            }
        }
        Self::canonicalize(self.nvars, raw)
    }

    /// Multiplication by a single term; order is preserved so no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&Monomial::ONE, c)
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub(crate) fn div_integer_exact(&self, c: &BigInt) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, tc)| {
                    debug_assert!((tc % c).is_zero());
                    (*m, tc / c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Returns the inverse when `self` is a unit of the Laurent ring, i.e. `±` a monomial.
    pub fn unit_inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(m, c)] if c.abs().is_one() => Some(Self::term(self.nvars, m.inv(), c.clone())),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.unit_inverse().is_some()
    }

    /// Exact quotient `self / divisor`, or [`RingError::NotDivisible`].
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, RingError> {
        self.check_vars(divisor)?;
        if divisor.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let [(m, c)] = divisor.terms.as_slice() {
            let minv = m.inv();
            if self.terms.iter().all(|(_, tc)| (tc % c).is_zero()) {
                return Ok(LaurentPoly {
                    nvars: self.nvars,
                    terms: self.terms.iter().map(|(tm, tc)| (tm.mul(&minv), tc / c)).collect(),
                });
            }
            return Err(RingError::NotDivisible);
        }

        // Reduce to ordinary polynomials without monomial factors; the quotient of two such
        // polynomials, when it exists in the Laurent ring, is itself a polynomial.
        let shift_num = self.monomial_content();
        let shift_den = divisor.monomial_content();
        let num = self.mul_monomial(&shift_num.inv());
        let den = divisor.mul_monomial(&shift_den.inv());
        let (lead_m, lead_c) = den.terms[0].clone();
        let lead_deg = lead_m.degree();

        let mut rem = num;
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            if rm.degree() < lead_deg || !rm.dominates(&lead_m) {
                return Err(RingError::NotDivisible);
            }
            let (q, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(RingError::NotDivisible);
            }
            let qm = rm.div(&lead_m);
            rem = rem.merge(&den.mul_term(&qm, &q), true);
            quotient.push((qm, q));
        }
        let q = LaurentPoly {
            nvars: self.nvars,
            terms: quotient,
        };
        Ok(q.mul_monomial(&shift_num.div(&shift_den)))
    }

    /// True when `divisor` divides `self` in the Laurent ring.
    pub fn divisible_by(&self, divisor: &Self) -> bool {
        self.exact_div(divisor).is_ok()
    }

    /// Exact value at a point with nonzero rational coordinates.
    pub fn specialize(&self, point: &[BigRational]) -> Result<BigRational, RingError> {
        if point.len() != self.nvars {
            return Err(RingError::PointDimension {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if point.iter().any(|x| x.is_zero()) {
            return Err(RingError::ZeroCoordinate);
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e != 0 {
                    t *= Pow::pow(x, e);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes polynomials for variables: `u_i -> images[i]`. Every image must be a unit
    /// whenever a negative exponent of that variable occurs.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<LaurentPoly, RingError> {
        let nvars = images.first().map(|p| p.nvars).unwrap_or(self.nvars);
        let mut total = LaurentPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(nvars, c.clone());
            for (i, img) in images.iter().enumerate().take(self.nvars) {
                let e = m.exponent(i);
                if e > 0 {
                    t = &t * &img.pow(e as u32);
                } else if e < 0 {
                    let inv = img.unit_inverse().ok_or(RingError::NotDivisible)?;
                    t = &t * &inv.pow((-e) as u32);
                }
            }
            total = &total + &t;
        }
        Ok(total)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        self.merge(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        self.mul_impl(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
