use std::fmt;

use crate::linalg::PolyMatrix;
use crate::ring::{LaurentPoly, Monomial};

use super::SpecError;

/// Element `c_0 + c_1 σ + ... + c_{e-1} σ^{e-1}` of the parabolic subalgebra `H'`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HPrimeElement(pub Vec<LaurentPoly>);

impl HPrimeElement {
    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(LaurentPoly::is_zero)
    }
}

impl fmt::Display for HPrimeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*s"),
                _ => format!("({c})*s^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `k`-th elementary symmetric polynomial in the given variables.
pub fn elementary_symmetric(nvars: usize, vars: &[usize], k: usize) -> LaurentPoly {
    fn go(vars: &[usize], k: usize, acc: Monomial, out: &mut Vec<(Monomial, i64)>) {
        if k == 0 {
            out.push((acc, 1));
            return;
        }
        for (i, &v) in vars.iter().enumerate() {
            go(&vars[i + 1..], k - 1, acc.mul(&Monomial::var(v, 1)), out);
        }
    }
    let mut terms = Vec::new();
    go(vars, k, Monomial::ONE, &mut terms);
    LaurentPoly::from_terms(nvars, terms)
}

/// Coefficients `a_0, ..., a_{e-1}` of the positive Hecke relation
/// `σ^e = a_{e-1} σ^{e-1} + ... + a_0` for parameters `vars`, with
/// `a_{e-k} = (-1)^{k-1} f_k` where `f_k` is the `k`-th elementary symmetric polynomial.
pub fn hecke_relation(nvars: usize, vars: &[usize]) -> Vec<LaurentPoly> {
    let e = vars.len();
    let mut a = vec![LaurentPoly::zero(nvars); e];
    for k in 1..=e {
        let f = elementary_symmetric(nvars, vars, k);
        a[e - k] = if k % 2 == 1 { f } else { -&f };
    }
    a
}

/// `H' = R[σ]/(σ^e - a_{e-1} σ^{e-1} - ... - a_0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPrimeRing {
    nvars: usize,
    relation: Vec<LaurentPoly>,
    a0_inverse: LaurentPoly,
}

impl HPrimeRing {
    pub fn new(nvars: usize, relation: Vec<LaurentPoly>) -> Result<Self, SpecError> {
        if relation.is_empty() {
            return Err(SpecError::Invalid("Hecke relation of degree 0".into()));
        }
        let a0_inverse = relation[0]
            .unit_inverse()
            .ok_or_else(|| SpecError::Invalid(format!("constant term {} is not a unit", relation[0])))?;
        Ok(HPrimeRing {
            nvars,
            relation,
            a0_inverse,
        })
    }

    pub fn from_parameters(nvars: usize, vars: &[usize]) -> Result<Self, SpecError> {
        Self::new(nvars, hecke_relation(nvars, vars))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.relation.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn relation(&self) -> &[LaurentPoly] {
        &self.relation
    }

    pub fn zero(&self) -> HPrimeElement {
        HPrimeElement(vec![LaurentPoly::zero(self.nvars); self.degree()])
    }

    pub fn scalar(&self, c: LaurentPoly) -> HPrimeElement {
        let mut z = self.zero();
        z.0[0] = c;
        z
    }

    pub fn one(&self) -> HPrimeElement {
        self.scalar(LaurentPoly::one(self.nvars))
    }

    /// `σ^0 .. σ^{e-1}` as basis elements; `σ^e` and higher are reduced.
    pub fn sigma(&self) -> HPrimeElement {
        self.sigma_pow(1)
    }

    pub fn sigma_pow(&self, n: i32) -> HPrimeElement {
        let base = if n >= 0 {
            self.raw_sigma()
        } else {
            self.sigma_inverse()
        };
        let mut acc = self.one();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    fn raw_sigma(&self) -> HPrimeElement {
        if self.degree() == 1 {
            return self.scalar(self.relation[0].clone());
        }
        let mut s = self.zero();
        s.0[1] = LaurentPoly::one(self.nvars);
        s
    }

    /// `σ^{-1} = a_0^{-1} (σ^{e-1} - a_{e-1} σ^{e-2} - ... - a_1)`.
    pub fn sigma_inverse(&self) -> HPrimeElement {
        let e = self.degree();
        let mut inv = self.zero();
        inv.0[e - 1] = self.a0_inverse.clone();
        for j in 1..e {
            inv.0[j - 1] = -&(&self.a0_inverse * &self.relation[j]);
        }
        inv
    }

    pub fn add(&self, a: &HPrimeElement, b: &HPrimeElement) -> HPrimeElement {
        HPrimeElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &HPrimeElement, b: &HPrimeElement) -> HPrimeElement {
        HPrimeElement(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, a: &HPrimeElement, c: &LaurentPoly) -> HPrimeElement {
        HPrimeElement(a.0.iter().map(|x| x * c).collect())
    }

    /// Product reduced below degree `e` with the positive Hecke relation.
    pub fn mul(&self, a: &HPrimeElement, b: &HPrimeElement) -> HPrimeElement {
        let e = self.degree();
        let mut full = vec![LaurentPoly::zero(self.nvars); 2 * e - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] = &full[i + j] + &(x * y);
                }
            }
        }
        for d in (e..2 * e - 1).rev() {
            let t = std::mem::replace(&mut full[d], LaurentPoly::zero(self.nvars));
            if t.is_zero() {
                continue;
            }
            for (j, aj) in self.relation.iter().enumerate() {
                full[d - e + j] = &full[d - e + j] + &(&t * aj);
            }
        }
        full.truncate(e);
        HPrimeElement(full)
    }

    /// `e x e` matrix of `x -> x h` on the basis `1, σ, ..., σ^{e-1}`, acting on row vectors.
    pub fn regular_matrix(&self, h: &HPrimeElement) -> PolyMatrix {
        let e = self.degree();
        let mut m = PolyMatrix::zeros(e, e, &LaurentPoly::zero(self.nvars));
        let mut power = self.one();
        let sigma = self.raw_sigma();
        for p in 0..e {
            let row = self.mul(&power, h);
            for (q, c) in row.0.into_iter().enumerate() {
                m.set(p, q, c);
            }
            power = self.mul(&power, &sigma);
        }
        m
    }
}

/// Square matrix over `H'`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPrimeMatrix {
    pub size: usize,
    pub entries: Vec<HPrimeElement>,
}

impl HPrimeMatrix {
    pub fn get(&self, i: usize, j: usize) -> &HPrimeElement {
        &self.entries[i * self.size + j]
    }

    pub fn identity(ring: &HPrimeRing, size: usize) -> Self {
        let mut entries = vec![ring.zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = ring.one();
        }
        HPrimeMatrix { size, entries }
    }

    pub fn mul(&self, other: &Self, ring: &HPrimeRing) -> Self {
        let n = self.size;
        let mut entries = vec![ring.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        entries[i * n + j] = ring.add(&entries[i * n + j], &ring.mul(a, b));
                    }
                }
            }
        }
        HPrimeMatrix { size: n, entries }
    }

    /// Replaces each entry by its regular matrix, giving the `(e·m) x (e·m)` matrix over `R`
    /// in the basis `σ^p x_i` with index `e·i + p`.
    pub fn flatten(&self, ring: &HPrimeRing) -> PolyMatrix {
        let e = ring.degree();
        let n = self.size * e;
        let mut out = PolyMatrix::zeros(n, n, &LaurentPoly::zero(ring.nvars()));
        for i in 0..self.size {
            for j in 0..self.size {
                let h = self.get(i, j);
                if h.is_zero() {
                    continue;
                }
                let block = ring.regular_matrix(h);
                for p in 0..e {
                    for q in 0..e {
                        out.set(e * i + p, e * j + q, block.get(p, q).clone());
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PolyMatrix;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 3).unwrap()
    }

    fn g4_ring() -> HPrimeRing {
        HPrimeRing::from_parameters(3, &[0, 1, 2]).unwrap()
    }

    #[test]
    fn relation_matches_expanded_product() {
        // (x - u1)(x - u2)(x - u3) = x^3 - a x^2 - b x - c
        let a = p("u1 + u2 + u3");
        let b = p("-1*u1*u2 - u1*u3 - u2*u3");
        let c = p("u1*u2*u3");
        assert_eq!(g4_ring().relation(), &[c, b, a]);
        let quad = HPrimeRing::from_parameters(3, &[0, 1]).unwrap();
        assert_eq!(quad.relation(), &[p("-1*u1*u2"), p("u1 + u2")]);
    }

    #[test]
    fn cube_reduces_with_relation() {
        let r = g4_ring();
        let s = r.sigma();
        let s2 = r.mul(&s, &s);
        let s3 = r.mul(&s, &s2);
        let expected = HPrimeElement(vec![
            p("u1*u2*u3"),
            p("-1*u1*u2 - u1*u3 - u2*u3"),
            p("u1 + u2 + u3"),
        ]);
        assert_eq!(s3, expected);
        assert_eq!(r.mul(&s2, &s), r.mul(&s, &s2));
        let x = HPrimeElement(vec![p("u1^-1"), p("3"), p("u2*u3")]);
        assert_eq!(r.mul(&r.one(), &x), x);
    }

    #[test]
    fn inverse_relation() {
        let r = g4_ring();
        let inv = r.sigma_inverse();
        // c^-1 s^2 - a c^-1 s - b c^-1
        let expected = HPrimeElement(vec![
            p("u1^-1 + u2^-1 + u3^-1"),
            p("-1*u1^-1*u2^-1 - u1^-1*u3^-1 - u2^-1*u3^-1"),
            p("u1^-1*u2^-1*u3^-1"),
        ]);
        assert_eq!(inv, expected);
        assert_eq!(r.mul(&r.sigma(), &inv), r.one());
        assert_eq!(r.mul(&inv, &r.sigma()), r.one());

        // T^2 = c T + d  =>  T^-1 = d^-1 T - c d^-1
        let q = HPrimeRing::from_parameters(2, &[0, 1]).unwrap();
        let pp = |s: &str| LaurentPoly::parse(s, 2).unwrap();
        let d_inv = pp("-1*u1^-1*u2^-1");
        let c = pp("u1 + u2");
        assert_eq!(
            q.sigma_inverse(),
            HPrimeElement(vec![-&(&c * &d_inv), d_inv.clone()])
        );
        assert_eq!(q.sigma_pow(-2), q.mul(&q.sigma_inverse(), &q.sigma_inverse()));
    }

    #[test]
    fn flatten_is_multiplicative() {
        let r = g4_ring();
        let s = r.sigma();
        let si = r.sigma_inverse();
        let m1 = HPrimeMatrix {
            size: 2,
            entries: vec![s.clone(), r.one(), r.zero(), si.clone()],
        };
        let m2 = HPrimeMatrix {
            size: 2,
            entries: vec![r.scalar(p("u2 - 1")), s.clone(), si, r.mul(&s, &s)],
        };
        let lhs = m1.mul(&m2, &r).flatten(&r);
        let rhs = m1.flatten(&r).mul(&m2.flatten(&r)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            HPrimeMatrix::identity(&r, 3).flatten(&r),
            PolyMatrix::identity(9, &p("0"))
        );
    }

    #[test]
    fn flattened_sigma_satisfies_cubic() {
        let r = g4_ring();
        let s = HPrimeMatrix {
            size: 2,
            entries: vec![r.sigma(), r.zero(), r.zero(), r.sigma()],
        }
        .flatten(&r);
        let s2 = s.mul(&s).unwrap();
        let s3 = s2.mul(&s).unwrap();
        let id = PolyMatrix::identity(6, &p("0"));
        let rel = r.relation();
        let rhs = s2
            .scale(&rel[2])
            .add(&s.scale(&rel[1]))
            .unwrap()
            .add(&id.scale(&rel[0]))
            .unwrap();
        assert_eq!(s3, rhs);
    }
}
