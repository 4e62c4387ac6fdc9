//! The trace `τ(Σ α_b b) = α_1`, its Gram matrix and the dual basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hecke::{BraidWord, HeckeAlgebra, HeckeElement, SpecError};
use crate::linalg::{bareiss_det, frac_solve_many, LinalgError, PolyMatrix};
use crate::ring::{random_poly, LaurentPoly, Monomial};

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Gram determinant {0} is not a unit")]
    NonUnitDeterminant(LaurentPoly),
    #[error("dual basis vector b{0}^∨ has coefficients outside R")]
    NotIntegral(usize),
    #[error("duality fails: τ(b{0} b{1}^∨) = {2}")]
    Duality(usize, usize, String),
    #[error("group has no pi_word")]
    NoPiWord,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Coefficient of `b_1`.
pub fn tau<T: Clone>(h: &[T]) -> T {
    h[0].clone()
}

/// Certified Gram matrix `A = (τ(b_i b_j))`.
#[derive(Clone, Debug, Serialize)]
pub struct GramData {
    pub matrix: PolyMatrix,
    pub det: LaurentPoly,
    pub det_inverse: LaurentPoly,
}

/// `A[i][j] = τ(b_i b_j)`. Column `j` is `ρ(b_j) e_1`, one matrix-vector pass per letter.
pub fn gram_matrix(alg: &HeckeAlgebra) -> Result<PolyMatrix, TraceError> {
    let e1 = alg.one();
    let columns = (0..alg.dim())
        .map(|j| alg.word_matrix_times_column(alg.basis_word(j), &e1))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMatrix::from_columns(&columns)?)
}

/// Checks symmetry entrywise and that the determinant is a unit of `R`.
pub fn certify_gram(matrix: PolyMatrix) -> Result<GramData, TraceError> {
    let n = matrix.rows();
    for i in 0..n {
        for j in i + 1..n {
            if matrix.get(i, j) != matrix.get(j, i) {
                return Err(TraceError::NotSymmetric(i + 1, j + 1));
            }
        }
    }
    let det = bareiss_det(&matrix)?;
    let det_inverse = det
        .unit_inverse()
        .ok_or_else(|| TraceError::NonUnitDeterminant(det.clone()))?;
    Ok(GramData {
        matrix,
        det,
        det_inverse,
    })
}

pub fn gram(alg: &HeckeAlgebra) -> Result<GramData, TraceError> {
    certify_gram(gram_matrix(alg)?)
}

/// `b_1^∨, ..., b_|W|^∨` over `R`.
#[derive(Clone, Debug, Serialize)]
pub struct DualBasis {
    pub vectors: Vec<HeckeElement>,
}

/// `b_i^∨` is column `i` of `A^{-1}`; each column is solved over `Frac(R)`, must land in
/// `R`, and `A · A^{-1} = I` is checked exactly.
pub fn dual_basis(gram: &GramData) -> Result<DualBasis, TraceError> {
    let a = &gram.matrix;
    let n = a.rows();
    let zero = LaurentPoly::zero(gram.det.nvars());
    let id = PolyMatrix::identity(n, &zero);
    let solutions = frac_solve_many(&a.to_frac(), &id.to_frac())?;
    let mut vectors = Vec::with_capacity(n);
    for (i, s) in solutions.into_iter().enumerate() {
        let x = s.unique().ok_or(LinalgError::Singular)?;
        let v = x
            .iter()
            .map(|r| r.to_poly())
            .collect::<Option<Vec<_>>>()
            .ok_or(TraceError::NotIntegral(i + 1))?;
        vectors.push(v);
    }
    let inverse = PolyMatrix::from_columns(&vectors)?;
    let product = a.mul(&inverse)?;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { LaurentPoly::one(zero.nvars()) } else { zero.clone() };
            if product.get(i, j) != &expected {
                return Err(TraceError::Duality(i + 1, j + 1, product.get(i, j).to_string()));
            }
        }
    }
    Ok(DualBasis { vectors })
}

impl DualBasis {
    /// The matrix whose columns are the dual vectors, i.e. `A^{-1}`.
    pub fn matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(&self.vectors).expect("square")
    }
}

/// `τ(b_i · b_j^∨)` for all pairs, evaluated with the Gram matrix as `A · A^{-1}`.
pub fn duality_matrix(gram: &GramData, duals: &DualBasis) -> Result<PolyMatrix, TraceError> {
    Ok(gram.matrix.mul(&duals.matrix())?)
}

#[derive(Clone, Debug, Serialize)]
pub struct TracePropertyReport {
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(String, String)>,
}

/// Random element with a few nonzero basis coefficients of small Laurent polynomials.
pub fn random_sparse_element<G: Rng>(alg: &HeckeAlgebra, rng: &mut G, max_terms: usize) -> HeckeElement {
    let mut h = alg.zero();
    let nterms = rng.gen_range(1..=max_terms);
    for _ in 0..nterms {
        let j = rng.gen_range(0..alg.dim());
        let mut c = random_poly(rng, alg.nvars(), 2, 1, 3);
        if c.is_zero() {
            c = LaurentPoly::term(alg.nvars(), Monomial::ONE, 1);
        }
        h[j] = &h[j] + &c;
    }
    h
}

/// Checks `τ(h1 h2) = τ(h2 h1)` on `samples` seeded random sparse pairs, evaluating both
/// products through the multiplication pipeline.
pub fn trace_property_check(alg: &HeckeAlgebra, samples: usize, seed: u64) -> Result<TracePropertyReport, TraceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let h1 = random_sparse_element(alg, &mut rng, 2);
        let h2 = random_sparse_element(alg, &mut rng, 2);
        let left = tau(&alg.multiply(&h1, &h2)?);
        let right = tau(&alg.multiply(&h2, &h1)?);
        if left != right {
            return Ok(TracePropertyReport {
                samples,
                seed,
                passed: false,
                counterexample: Some((alg.format_element(&h1), alg.format_element(&h2))),
            });
        }
    }
    Ok(TracePropertyReport {
        samples,
        seed,
        passed: true,
        counterexample: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MmReport {
    pub pi_word: String,
    /// `τ(π)`, reported but not constrained.
    pub tau_pi: LaurentPoly,
    /// `(j, τ(b_j^{-1} π))` for `j ≥ 2` (1-based).
    pub values: Vec<(usize, LaurentPoly)>,
    pub passed: bool,
}

/// `τ(x^{-1} π) = 0` for every basis word `x ≠ 1`.
pub fn mm_condition_check(alg: &HeckeAlgebra) -> Result<MmReport, TraceError> {
    let pi = alg.spec().pi_word.clone().ok_or(TraceError::NoPiWord)?;
    let tau_pi = tau(&alg.word_to_element(&pi)?);
    let mut values = Vec::with_capacity(alg.dim() - 1);
    for j in 1..alg.dim() {
        let w: BraidWord = alg.basis_word(j).inverse().concat(&pi);
        values.push((j + 1, tau(&alg.word_to_element(&w)?)));
    }
    let passed = values.iter().all(|(_, v)| v.is_zero());
    Ok(MmReport {
        pi_word: pi.to_string(),
        tau_pi,
        values,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> HeckeAlgebra {
        HeckeAlgebra::load("a2").unwrap()
    }

    fn q(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 2).unwrap()
    }

    /// `ℓ(w)` and the index of `w^{-1}` for the A2 basis `1, s, t, st, ts, sts`.
    const A2_LENGTH: [u32; 6] = [0, 1, 1, 2, 2, 3];
    const A2_INVERSE: [usize; 6] = [0, 1, 2, 4, 3, 5];

    #[test]
    fn tau_of_basis() {
        let alg = a2();
        assert!(tau(&alg.one()).is_one());
        for j in 1..6 {
            assert!(tau(&alg.basis_element(j)).is_zero());
        }
        let ts = alg.basis_element(1);
        assert_eq!(tau(&alg.multiply(&ts, &ts).unwrap()), q("-1*u1*u2"));
    }

    #[test]
    fn a2_gram_matches_length_oracle() {
        let alg = a2();
        let g = gram(&alg).unwrap();
        let d = q("-1*u1*u2");
        for i in 0..6 {
            for j in 0..6 {
                let expected = if j == A2_INVERSE[i] { d.pow(A2_LENGTH[i]) } else { q("0") };
                assert_eq!(g.matrix.get(i, j), &expected, "({i},{j})");
            }
        }
        // det = ±d^9 = u1^9 u2^9 up to sign; here the product of d^ℓ(w) with two swaps
        assert_eq!(g.det, q("u1^9*u2^9"));
        assert!((&g.det * &g.det_inverse).is_one());
    }

    #[test]
    fn a2_dual_basis_is_scaled_inverse() {
        let alg = a2();
        let g = gram(&alg).unwrap();
        let duals = dual_basis(&g).unwrap();
        let d_inv = q("-1*u1^-1*u2^-1");
        for (i, v) in duals.vectors.iter().enumerate() {
            let mut expected = alg.zero();
            expected[A2_INVERSE[i]] = d_inv.pow(A2_LENGTH[i]);
            assert_eq!(v, &expected);
        }
        let pairing = duality_matrix(&g, &duals).unwrap();
        assert_eq!(pairing, PolyMatrix::identity(6, &q("0")));
    }

    #[test]
    fn dual_pairing_is_inverse_gram() {
        let alg = a2();
        let g = gram(&alg).unwrap();
        let duals = dual_basis(&g).unwrap();
        let inv = duals.matrix();
        for i in 0..6 {
            for j in 0..6 {
                let p = tau(&alg.multiply(&duals.vectors[i], &duals.vectors[j]).unwrap());
                assert_eq!(&p, inv.get(i, j));
            }
        }
    }

    #[test]
    fn gram_mutation_is_rejected() {
        let alg = a2();
        let mut m = gram_matrix(&alg).unwrap();
        m.set(3, 4, q("0"));
        assert!(matches!(certify_gram(m.clone()), Err(TraceError::NotSymmetric(4, 5))));
        m.set(4, 3, q("0"));
        assert!(matches!(certify_gram(m), Err(TraceError::NonUnitDeterminant(d)) if d.is_zero()));
    }

    #[test]
    fn a2_trace_property_and_mm_condition() {
        let alg = a2();
        assert!(trace_property_check(&alg, 30, 3).unwrap().passed);
        let s = alg.basis_element(1);
        let t = alg.basis_element(2);
        assert!(tau(&alg.multiply(&s, &t).unwrap()).is_zero());
        assert!(tau(&alg.multiply(&t, &s).unwrap()).is_zero());
        let mm = mm_condition_check(&alg).unwrap();
        assert_eq!(mm.values.len(), 5);
        assert!(mm.passed);
    }
}
