use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::linalg::{poly_inverse, LinalgError, PolyMatrix};
use crate::ring::{LaurentPoly, RatFunc};

use super::spec::GroupSpec;
use super::word::BraidWord;
use super::SpecError;

/// Coefficient vector of an element of `H` in the basis `b_1..b_|W|`.
pub type HeckeElement = Vec<LaurentPoly>;
/// Coefficient vector over `Frac(R)`.
pub type FracElement = Vec<RatFunc>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The matrix model of `H`: elements are row vectors over `R`, and right multiplication by
/// a generator is the flattened `ρ(σ)`.
#[derive(Debug)]
pub struct HeckeAlgebra {
    spec: GroupSpec,
    generators: Vec<PolyMatrix>,
    inverses: Vec<OnceLock<Result<PolyMatrix, LinalgError>>>,
    basis_words: Vec<BraidWord>,
    commutators: OnceLock<Vec<(PolyMatrix, PolyMatrix)>>,
}

impl HeckeAlgebra {
    pub fn new(spec: GroupSpec) -> Self {
        let generators: Vec<PolyMatrix> = spec.rho.iter().map(|m| m.flatten(&spec.hprime)).collect();
        let basis_words = (0..spec.dim()).map(|j| spec.basis_word(j)).collect();
        HeckeAlgebra {
            inverses: generators.iter().map(|_| OnceLock::new()).collect(),
            generators,
            basis_words,
            spec,
            commutators: OnceLock::new(),
        }
    }

    /// Loads a builtin name or spec-file path.
    pub fn load(group: &str) -> Result<Self, SpecError> {
        Ok(Self::new(GroupSpec::resolve(group)?))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn nvars(&self) -> usize {
        self.spec.nvars
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Flattened `ρ(σ_g)`.
    pub fn generator_matrix(&self, g: usize) -> &PolyMatrix {
        &self.generators[g]
    }

    /// `ρ(σ_g)^{-1}`, solved once over `Frac(R)` and required to lie over `R`.
    pub fn inverse_matrix(&self, g: usize) -> Result<&PolyMatrix, SpecError> {
        self.inverses[g]
            .get_or_init(|| poly_inverse(&self.generators[g]))
            .as_ref()
            .map_err(|e| SpecError::Relation(format!("rho(s{}) is not invertible over R: {e}", g + 1)))
    }

    pub fn basis_word(&self, j: usize) -> &BraidWord {
        &self.basis_words[j]
    }

    pub fn zero(&self) -> HeckeElement {
        vec![LaurentPoly::zero(self.nvars()); self.dim()]
    }

    pub fn basis_element(&self, j: usize) -> HeckeElement {
        let mut v = self.zero();
        v[j] = LaurentPoly::one(self.nvars());
        v
    }

    pub fn one(&self) -> HeckeElement {
        self.basis_element(0)
    }

    fn check_word(&self, w: &BraidWord) -> Result<(), SpecError> {
        match w.max_generator() {
            Some(g) if g >= self.generator_count() => Err(SpecError::Word(format!(
                "word {w} uses s{} but the group has {} generators",
                g + 1,
                self.generator_count()
            ))),
            _ => Ok(()),
        }
    }

    /// `h · w`: applies the letters of `w` to the row vector `h`.
    pub fn right_mul_word(&self, h: &[LaurentPoly], w: &BraidWord) -> Result<HeckeElement, SpecError> {
        self.check_word(w)?;
        let mut v = h.to_vec();
        for &(g, e) in w.letters() {
            let m = if e > 0 {
                &self.generators[g]
            } else {
                self.inverse_matrix(g)?
            };
            for _ in 0..e.unsigned_abs() {
                v = m.left_apply(&v)?;
            }
        }
        Ok(v)
    }

    /// `ρ(w) · v` for a column vector `v`; with `v = e_1` the entries are `τ(b_i · w)`.
    pub fn word_matrix_times_column(&self, w: &BraidWord, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, SpecError> {
        self.check_word(w)?;
        let mut v = v.to_vec();
        for &(g, e) in w.letters().iter().rev() {
            let m = if e > 0 {
                &self.generators[g]
            } else {
                self.inverse_matrix(g)?
            };
            for _ in 0..e.unsigned_abs() {
                v = m.apply(&v)?;
            }
        }
        Ok(v)
    }

    /// Coefficients of the image of `w` in the basis.
    pub fn word_to_element(&self, w: &BraidWord) -> Result<HeckeElement, SpecError> {
        self.right_mul_word(&self.one(), w)
    }

    /// Matrix of `h -> h · w` on row vectors.
    pub fn word_matrix(&self, w: &BraidWord) -> Result<PolyMatrix, SpecError> {
        self.check_word(w)?;
        let n = self.dim();
        let mut acc = PolyMatrix::identity(n, &LaurentPoly::zero(self.nvars()));
        for &(g, e) in w.letters() {
            let m = if e > 0 {
                &self.generators[g]
            } else {
                self.inverse_matrix(g)?
            };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(m)?;
            }
        }
        Ok(acc)
    }

    /// `h1 · h2 = Σ_j h2_j (h1 · b_j)`.
    pub fn multiply(&self, h1: &[LaurentPoly], h2: &[LaurentPoly]) -> Result<HeckeElement, SpecError> {
        let mut out = self.zero();
        for (j, c) in h2.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let part = self.right_mul_word(h1, &self.basis_words[j])?;
            for (o, p) in out.iter_mut().zip(&part) {
                if !p.is_zero() {
                    *o = &*o + &(c * p);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `h -> w·h` (left) or `h -> h·w` (right) acting on coefficient columns:
    /// column `j` is the expansion of `w·b_j` (resp. `b_j·w`).
    pub fn mul_matrix_word(&self, w: &BraidWord, side: Side) -> Result<PolyMatrix, SpecError> {
        let columns = (0..self.dim())
            .map(|j| {
                let bj = &self.basis_words[j];
                let word = match side {
                    Side::Left => w.concat(bj),
                    Side::Right => bj.concat(w),
                };
                self.word_to_element(&word)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix::from_columns(&columns)?)
    }

    /// As [`Self::mul_matrix_word`] for an arbitrary element.
    pub fn mul_matrix(&self, h: &[LaurentPoly], side: Side) -> Result<PolyMatrix, SpecError> {
        let columns = (0..self.dim())
            .map(|j| {
                let bj = self.basis_element(j);
                match side {
                    Side::Left => self.multiply(h, &bj),
                    Side::Right => self.multiply(&bj, h),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix::from_columns(&columns)?)
    }

    /// `(L_σ, R_σ)` for every generator, computed once.
    pub fn generator_mul_matrices(&self) -> Result<&[(PolyMatrix, PolyMatrix)], SpecError> {
        if let Some(m) = self.commutators.get() {
            return Ok(m);
        }
        let mut out = Vec::with_capacity(self.generator_count());
        for g in 0..self.generator_count() {
            let w = BraidWord::letter(g, 1);
            let left = self.mul_matrix_word(&w, Side::Left)?;
            // b_j · σ is row j of ρ(σ)
            let right = self.generators[g].transpose();
            out.push((left, right));
        }
        Ok(self.commutators.get_or_init(|| out))
    }

    /// Rendering like `-1*u1^-1*b9 + (u1 + u2)*b13`, using the spec's basis labels.
    pub fn format_element<T: std::fmt::Display + crate::ring::Scalar>(&self, h: &[T]) -> String {
        let mut out = String::new();
        for (j, c) in h.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let label = self.spec.basis_label(j);
            let text = c.to_string();
            if text == "1" {
                out.push_str(&label);
            } else if text.contains(" + ") || text.contains(" - ") || text.contains('/') {
                let _ = write!(out, "({text})*{label}");
            } else {
                let _ = write!(out, "{text}*{label}");
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g4() -> HeckeAlgebra {
        HeckeAlgebra::load("g4").unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 3).unwrap()
    }

    #[test]
    fn empty_word_is_identity() {
        let alg = g4();
        assert_eq!(alg.word_to_element(&BraidWord::empty()).unwrap(), alg.one());
    }

    #[test]
    fn golden_expansion() {
        let alg = g4();
        let v = alg.word_to_element(&BraidWord::parse("s1^2 s2^2").unwrap()).unwrap();
        let a = p("u1 + u2 + u3");
        let b = p("-1*u1*u2 - u1*u3 - u2*u3");
        let ci = p("u1^-1*u2^-1*u3^-1");
        let ci2 = &ci * &ci;
        let mut expected = alg.zero();
        expected[8] = -&(&b * &ci);
        expected[12] = -&(&a * &ci);
        expected[16] = -&(&b * &ci2);
        expected[18] = -&(&a * &ci2);
        expected[21] = ci2;
        assert_eq!(v, expected);
    }

    #[test]
    fn z_equals_w_squared() {
        let alg = g4();
        let z = BraidWord::parse("s1 s2").unwrap().pow(3);
        let w = BraidWord::parse("s1 s2 s1").unwrap().pow(2);
        assert_eq!(alg.word_to_element(&z).unwrap(), alg.word_to_element(&w).unwrap());
    }

    #[test]
    fn basis_words_evaluate_to_unit_vectors() {
        let alg = g4();
        for j in 0..alg.dim() {
            assert_eq!(alg.word_to_element(alg.basis_word(j)).unwrap(), alg.basis_element(j), "b{}", j + 1);
        }
    }

    #[test]
    fn left_mul_columns_match_direct_evaluation() {
        let alg = g4();
        let (left, _) = &alg.generator_mul_matrices().unwrap()[0];
        for j in 0..alg.dim() {
            let word = BraidWord::letter(0, 1).concat(alg.basis_word(j));
            assert_eq!(left.column(j), alg.word_to_element(&word).unwrap());
        }
        let id = alg.mul_matrix(&alg.one(), Side::Left).unwrap();
        assert_eq!(id, PolyMatrix::identity(24, &p("0")));
    }

    #[test]
    fn left_and_right_multiplications_commute() {
        let alg = g4();
        let mats = alg.generator_mul_matrices().unwrap();
        for (l, _) in mats {
            for (_, r) in mats {
                assert_eq!(l.mul(r).unwrap(), r.mul(l).unwrap());
            }
        }
    }

    #[test]
    fn a2_quadratic_relation() {
        let alg = HeckeAlgebra::load("a2").unwrap();
        let q = |s: &str| LaurentPoly::parse(s, 2).unwrap();
        let ts = alg.basis_element(1);
        let mut expected = alg.zero();
        expected[0] = q("-1*u1*u2");
        expected[1] = q("u1 + u2");
        assert_eq!(alg.multiply(&ts, &ts).unwrap(), expected);
        let h = alg.word_to_element(&BraidWord::parse("s2 s1^-1").unwrap()).unwrap();
        assert_eq!(alg.multiply(&h, &alg.one()).unwrap(), h);
    }

    #[test]
    fn unknown_generator_is_rejected() {
        let alg = g4();
        assert!(alg.word_to_element(&BraidWord::parse("s3").unwrap()).is_err());
    }
}
