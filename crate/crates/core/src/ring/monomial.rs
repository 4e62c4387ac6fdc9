use std::cmp::Ordering;

/// Largest number of indeterminates a polynomial may carry.
pub const MAX_VARS: usize = 6;

/// A Laurent monomial `u1^e1 * ... * uk^ek`. Slots past the owning polynomial's
/// variable count are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial([i32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_exponents(exps: &[i32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = [0; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    pub fn var(index: usize, power: i32) -> Self {
        let mut m = [0; MAX_VARS];
        m[index] = power;
        Monomial(m)
    }

    #[inline]
    pub fn exponent(&self, index: usize) -> i32 {
        self.0[index]
    }

    pub fn exponents(&self, nvars: usize) -> &[i32] {
        &self.0[..nvars]
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn inv(&self) -> Monomial {
        Monomial::ONE.div(self)
    }

    pub fn pow(&self, n: i32) -> Monomial {
        let mut m = self.0;
        for a in m.iter_mut() {
            *a *= n;
        }
        Monomial(m)
    }

    /// Componentwise minimum, i.e. the monomial gcd.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    /// True when every exponent of `self` is at least the corresponding one of `other`.
    pub fn dominates(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }
}

/// Graded lexicographic order: total degree first, then lexicographic with `u1` most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let u1 = Monomial::var(0, 1);
        let u2 = Monomial::var(1, 1);
        let u1u2 = u1.mul(&u2);
        let u1sq = Monomial::var(0, 2);
        assert!(u1 > u2);
        assert!(u1u2 > u1);
        assert!(u1sq > u1u2);
        assert!(Monomial::ONE > Monomial::var(2, -1));
        assert!(u1.mul(&Monomial::var(1, -1)) == Monomial::from_exponents(&[1, -1]));
    }

    #[test]
    fn mul_div_inverse() {
        let m = Monomial::from_exponents(&[2, -1, 3]);
        assert_eq!(m.mul(&m.inv()), Monomial::ONE);
        assert_eq!(m.mul(&m).div(&m), m);
        assert_eq!(m.pow(2), m.mul(&m));
    }
}
