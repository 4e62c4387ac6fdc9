//! Exact arithmetic in `R = Z[u1^±, ..., uk^±]` and its fraction field.

mod laurent;
mod monomial;
mod ratfunc;
mod text;

pub use laurent::{LaurentPoly, PolyOp};
pub use monomial::{Monomial, MAX_VARS};
pub use ratfunc::{FracOp, RatFunc, RatFuncJson};
pub use text::PolyJson;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("specialization point has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("specialization point has a zero coordinate")]
    ZeroCoordinate,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Operations shared by the two coefficient domains so matrices can be generic over them.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn nvars(&self) -> usize;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for LaurentPoly {
    fn nvars(&self) -> usize {
        LaurentPoly::nvars(self)
    }
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for RatFunc {
    fn nvars(&self) -> usize {
        RatFunc::nvars(self)
    }
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Random polynomial with at most `max_terms` terms, exponents in `-max_exp..=max_exp`
/// and coefficients in `-max_coeff..=max_coeff`.
pub fn random_poly<G: Rng>(
    rng: &mut G,
    nvars: usize,
    max_terms: usize,
    max_exp: i32,
    max_coeff: i64,
) -> LaurentPoly {
    let nterms = rng.gen_range(0..=max_terms);
    let terms = (0..nterms).map(|_| {
        let exps: Vec<i32> = (0..nvars).map(|_| rng.gen_range(-max_exp..=max_exp)).collect();
        (
            Monomial::from_exponents(&exps),
            BigInt::from(rng.gen_range(-max_coeff..=max_coeff)),
        )
    });
    LaurentPoly::from_terms(nvars, terms)
}

/// Random nonzero polynomial (retries until nonzero).
pub fn random_nonzero_poly<G: Rng>(
    rng: &mut G,
    nvars: usize,
    max_terms: usize,
    max_exp: i32,
    max_coeff: i64,
) -> LaurentPoly {
    loop {
        let p = random_poly(rng, nvars, max_terms.max(1), max_exp, max_coeff);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random point with nonzero small rational coordinates, for probabilistic identity checks.
pub fn random_point<G: Rng>(rng: &mut G, nvars: usize) -> Vec<BigRational> {
    (0..nvars)
        .map(|_| {
            let mut n: i64 = 0;
            while n == 0 {
                n = rng.gen_range(-9..=9);
            }
            let d: i64 = rng.gen_range(1..=7);
            BigRational::new(n.into(), d.into())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::array::uniform3(-2i32..3), -9i64..10), 0..5).prop_map(
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

    fn arb_frac() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), arb_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    fn arb_point() -> impl Strategy<Value = Vec<BigRational>> {
        prop::collection::vec(
            (prop_oneof![-7i64..0, 1i64..8], 1i64..6)
                .prop_map(|(n, d)| BigRational::new(n.into(), d.into())),
            3,
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) - &q, p.clone());
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn specialization_is_a_homomorphism(p in arb_poly(), q in arb_poly(), x in arb_point()) {
            let (sp, sq) = (p.specialize(&x).unwrap(), q.specialize(&x).unwrap());
            prop_assert_eq!((&p + &q).specialize(&x).unwrap(), &sp + &sq);
            prop_assert_eq!((&p * &q).specialize(&x).unwrap(), sp * sq);
        }

        #[test]
        fn unit_inverse_is_exact(p in arb_poly()) {
            if let Some(inv) = p.unit_inverse() {
                prop_assert!((&p * &inv).is_one());
            }
        }

        #[test]
        fn exact_division_recovers_factor(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
        }

        #[test]
        fn field_laws(a in arb_frac(), b in arb_frac()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
            }
        }

        #[test]
        fn cross_multiplication_agrees_with_normal_form(n in arb_poly(), d in arb_poly(), m in arb_poly()) {
            prop_assume!(!d.is_zero() && !m.is_zero());
            // same element written two ways
            let a = RatFunc::new(n.clone(), d.clone()).unwrap();
            let b = RatFunc::new(&n * &m, &d * &m).unwrap();
            prop_assert_eq!(&a, &b);
            let diff = &a - &b;
            prop_assert!(diff.is_zero());
        }
    }
}
