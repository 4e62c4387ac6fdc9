//! Bases of the center `Z(H)`: the commutant of the generators, and the
//! class-coefficient constructions `y_C = Σ f_{w,C} b_w^∨`, `z_C = Σ g_{w,C} b_w`.

mod representation;

pub use representation::{Representation, RepresentationJson};

use serde::Serialize;
use thiserror::Error;

use crate::hecke::{FracElement, HeckeAlgebra, HeckeElement, SpecError};
use crate::linalg::{clear_denominators, frac_nullspace, frac_solve, frac_solve_many, rank, FracMatrix, LinalgError, PolyMatrix, Solution};
use crate::ring::{LaurentPoly, RatFunc, RatFuncJson};
use crate::trace::DualBasis;

#[derive(Debug, Error)]
pub enum CenterError {
    #[error("center has dimension {got}, but the group declares {expected} classes")]
    Dimension { expected: usize, got: usize },
    #[error("vector {0} is not central")]
    NotCentral(usize),
    #[error("chosen representatives do not separate classes")]
    Separation,
    #[error("representations: {0}")]
    Representation(String),
    #[error("class coefficients of representative {0} are not an indicator vector")]
    Indicator(usize),
    #[error("dual basis required to build y_C")]
    MissingDuals,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Commutant,
    /// `y_C` assembled on the dual basis.
    DualClassSums,
    /// `z_C` assembled on the basis.
    ClassSums,
    Reference,
}

/// Vectors spanning (part of) the center, with integrality flags per vector.
#[derive(Clone, Debug)]
pub struct CenterBasis {
    pub provenance: Provenance,
    pub vectors: Vec<FracElement>,
}

impl CenterBasis {
    pub fn from_poly(provenance: Provenance, vectors: &[HeckeElement]) -> Self {
        CenterBasis {
            provenance,
            vectors: vectors
                .iter()
                .map(|v| v.iter().map(|p| RatFunc::from_poly(p.clone())).collect())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Whether every coefficient of vector `i` lies in `R`.
    pub fn is_integral(&self, i: usize) -> bool {
        self.vectors[i].iter().all(RatFunc::is_in_ring)
    }

    /// Whether every coefficient of vector `i` lies in `Z[u1, ..., uk]`.
    pub fn is_polynomial(&self, i: usize) -> bool {
        self.vectors[i]
            .iter()
            .all(|x| x.to_poly().is_some_and(|p| p.is_polynomial()))
    }

    pub fn to_poly(&self) -> Option<Vec<HeckeElement>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(RatFunc::to_poly).collect())
            .collect()
    }

    pub fn report(&self, alg: &HeckeAlgebra) -> CenterReport {
        CenterReport {
            provenance: self.provenance,
            vectors: self
                .vectors
                .iter()
                .map(|v| v.iter().map(RatFunc::to_json).collect())
                .collect(),
            text: self.vectors.iter().map(|v| alg.format_element(v)).collect(),
            integral: (0..self.len()).map(|i| self.is_integral(i)).collect(),
            polynomial: (0..self.len()).map(|i| self.is_polynomial(i)).collect(),
        }
    }
}

/// Serializable view of a [`CenterBasis`].
#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub provenance: Provenance,
    pub vectors: Vec<Vec<RatFuncJson>>,
    pub text: Vec<String>,
    pub integral: Vec<bool>,
    pub polynomial: Vec<bool>,
}

/// `[L_σ - R_σ]` stacked over all generators; its nullspace is `Z(H)`.
pub fn commutant_system(alg: &HeckeAlgebra) -> Result<PolyMatrix, CenterError> {
    let blocks = alg
        .generator_mul_matrices()?
        .iter()
        .map(|(l, r)| l.sub(r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMatrix::vstack(&blocks)?)
}

/// Solves the commutant system; vectors are ordered by their free coordinate, cleared of
/// denominators and checked central.
pub fn commutant_center(alg: &HeckeAlgebra) -> Result<CenterBasis, CenterError> {
    let system = commutant_system(alg)?;
    let null = frac_nullspace(&system.to_frac())?;
    let expected = alg.spec().class_count;
    if null.len() != expected {
        return Err(CenterError::Dimension {
            expected,
            got: null.len(),
        });
    }
    let vectors: Vec<HeckeElement> = null.iter().map(|v| clear_denominators(v).0).collect();
    for (i, v) in vectors.iter().enumerate() {
        if !centrality_check(alg, v)? {
            return Err(CenterError::NotCentral(i + 1));
        }
    }
    Ok(CenterBasis::from_poly(Provenance::Commutant, &vectors))
}

/// `σ h = h σ` for every generator, exactly.
pub fn centrality_check(alg: &HeckeAlgebra, h: &[LaurentPoly]) -> Result<bool, CenterError> {
    for (l, r) in alg.generator_mul_matrices()? {
        if l.apply(h)? != r.apply(h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`centrality_check`] for coefficients in `Frac(R)`.
pub fn centrality_check_frac(alg: &HeckeAlgebra, h: &[RatFunc]) -> Result<bool, CenterError> {
    centrality_check(alg, &clear_denominators(h).0)
}

/// `χ(b_j)` for every representation `χ` (rows) and basis index `j` (columns).
pub fn basis_characters(alg: &HeckeAlgebra, reps: &[Representation]) -> Result<FracMatrix, CenterError> {
    let dims: usize = reps.iter().map(|r| r.dim * r.dim).sum();
    if dims != alg.dim() {
        return Err(CenterError::Representation(format!(
            "squared dimensions sum to {dims}, not |W| = {}",
            alg.dim()
        )));
    }
    let mut rows = Vec::with_capacity(reps.len());
    for rep in reps {
        rep.verify(alg)?;
        let row = rep
            .basis_matrices(alg)?
            .iter()
            .map(|m| (0..m.rows()).fold(RatFunc::zero(alg.nvars()), |acc, i| &acc + m.get(i, i)))
            .collect();
        rows.push(row);
    }
    Ok(FracMatrix::from_rows(rows)?)
}

/// `χ(h)` for every representation (rows) and element (columns).
pub fn char_values(alg: &HeckeAlgebra, reps: &[Representation], elements: &[FracElement]) -> Result<FracMatrix, CenterError> {
    let basis = basis_characters(alg, reps)?;
    let columns: Vec<Vec<RatFunc>> = elements.iter().map(|h| basis.apply(h)).collect::<Result<_, _>>()?;
    Ok(FracMatrix::from_columns(&columns)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffMode {
    /// `χ(b_w) = Σ_C f_{w,C} χ(b_{w_C})`.
    FOnBasis,
    /// `χ(b_w^∨) = Σ_C g_{w,C} χ(b_{w_C}^∨)`.
    GOnDuals,
}

/// Class coefficients; `rows[w][C]`.
#[derive(Clone, Debug)]
pub struct ClassCoeffs {
    pub mode: CoeffMode,
    pub class_reps: Vec<usize>,
    pub rows: Vec<Vec<RatFunc>>,
}

fn frac_vector(h: &[LaurentPoly]) -> FracElement {
    h.iter().map(|p| RatFunc::from_poly(p.clone())).collect()
}

/// Solves for `f_{w,C}` (resp. `g_{w,C}`) for every basis index `w`.
pub fn class_coeffs(
    alg: &HeckeAlgebra,
    reps: &[Representation],
    class_reps: &[usize],
    mode: CoeffMode,
    duals: Option<&DualBasis>,
) -> Result<ClassCoeffs, CenterError> {
    let elements: Vec<FracElement> = match mode {
        CoeffMode::FOnBasis => (0..alg.dim()).map(|j| frac_vector(&alg.basis_element(j))).collect(),
        CoeffMode::GOnDuals => duals
            .ok_or(CenterError::MissingDuals)?
            .vectors
            .iter()
            .map(|v| frac_vector(v))
            .collect(),
    };
    let values = char_values(alg, reps, &elements)?;
    let reps_columns: Vec<Vec<RatFunc>> = class_reps.iter().map(|&c| values.column(c)).collect();
    let m = FracMatrix::from_columns(&reps_columns)?;
    let solutions = match frac_solve_many(&m, &values) {
        Ok(s) => s,
        Err(LinalgError::Underdetermined { .. }) => return Err(CenterError::Separation),
        Err(e) => return Err(e.into()),
    };
    let rows = solutions
        .into_iter()
        .map(|s| s.unique().ok_or(CenterError::Separation))
        .collect::<Result<Vec<_>, _>>()?;
    for (ci, &w) in class_reps.iter().enumerate() {
        let indicator = rows[w].iter().enumerate().all(|(k, x)| if k == ci { x.is_one() } else { x.is_zero() });
        if !indicator {
            return Err(CenterError::Indicator(w + 1));
        }
    }
    Ok(ClassCoeffs {
        mode,
        class_reps: class_reps.to_vec(),
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildMode {
    /// `y_C = Σ_w coeff_{w,C} b_w^∨`.
    YFromDuals,
    /// `z_C = Σ_w coeff_{w,C} b_w`.
    ZFromBasis,
}

/// Assembles one vector per class and checks each is central.
pub fn build_center(
    alg: &HeckeAlgebra,
    coeffs: &ClassCoeffs,
    mode: BuildMode,
    duals: Option<&DualBasis>,
) -> Result<CenterBasis, CenterError> {
    let n = alg.dim();
    let nvars = alg.nvars();
    let classes = coeffs.class_reps.len();
    let mut vectors = vec![vec![RatFunc::zero(nvars); n]; classes];
    for (w, row) in coeffs.rows.iter().enumerate() {
        for (ci, coeff) in row.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            match mode {
                BuildMode::ZFromBasis => vectors[ci][w] = &vectors[ci][w] + coeff,
                BuildMode::YFromDuals => {
                    let dual = &duals.ok_or(CenterError::MissingDuals)?.vectors[w];
                    for (k, p) in dual.iter().enumerate() {
                        if !p.is_zero() {
                            vectors[ci][k] = &vectors[ci][k] + &(coeff * &RatFunc::from_poly(p.clone()));
                        }
                    }
                }
            }
        }
    }
    for (i, v) in vectors.iter().enumerate() {
        if !centrality_check_frac(alg, v)? {
            return Err(CenterError::NotCentral(i + 1));
        }
    }
    let provenance = match mode {
        BuildMode::YFromDuals => Provenance::DualClassSums,
        BuildMode::ZFromBasis => Provenance::ClassSums,
    };
    Ok(CenterBasis { provenance, vectors })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub equal_f_span: bool,
    pub x_in_r_span_of_y: bool,
    pub y_in_r_span_of_x: bool,
}

fn cleared_columns(b: &CenterBasis) -> Vec<HeckeElement> {
    b.vectors.iter().map(|v| clear_denominators(v).0).collect()
}

fn rank_of(alg: &HeckeAlgebra, columns: &[HeckeElement]) -> Result<usize, CenterError> {
    if columns.is_empty() {
        return Ok(0);
    }
    let _ = alg;
    Ok(rank(&PolyMatrix::from_columns(columns)?)?)
}

/// Every vector of `x` is an `R`-combination of the vectors of `y`.
fn in_r_span(x: &CenterBasis, y: &CenterBasis) -> Result<bool, CenterError> {
    if y.is_empty() {
        return Ok(x.vectors.iter().all(|v| v.iter().all(RatFunc::is_zero)));
    }
    let ymat = FracMatrix::from_columns(&y.vectors)?;
    for v in &x.vectors {
        match frac_solve(&ymat, v) {
            Ok(Solution::Unique(c)) => {
                if !c.iter().all(RatFunc::is_in_ring) {
                    return Ok(false);
                }
            }
            Ok(Solution::Inconsistent) | Err(LinalgError::Underdetermined { .. }) => return Ok(false),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(true)
}

/// Compares the `Frac(R)`-spans and the mutual `R`-membership of two bases.
pub fn span_compare(alg: &HeckeAlgebra, x: &CenterBasis, y: &CenterBasis) -> Result<SpanReport, CenterError> {
    let xc = cleared_columns(x);
    let yc = cleared_columns(y);
    let rx = rank_of(alg, &xc)?;
    let ry = rank_of(alg, &yc)?;
    let both: Vec<HeckeElement> = xc.iter().chain(&yc).cloned().collect();
    let rxy = rank_of(alg, &both)?;
    Ok(SpanReport {
        equal_f_span: rx == ry && ry == rxy,
        x_in_r_span_of_y: in_r_span(x, y)?,
        y_in_r_span_of_x: in_r_span(y, x)?,
    })
}

/// The group's reference center basis, if present.
pub fn reference_center(alg: &HeckeAlgebra) -> Option<CenterBasis> {
    alg.spec()
        .reference_center
        .as_ref()
        .map(|v| CenterBasis::from_poly(Provenance::Reference, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{dual_basis, gram};

    fn a2() -> HeckeAlgebra {
        HeckeAlgebra::load("a2").unwrap()
    }

    fn q(s: &str) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::parse(s, 2).unwrap())
    }

    #[test]
    fn a2_commutant_has_three_vectors() {
        let alg = a2();
        let z = commutant_center(&alg).unwrap();
        assert_eq!(z.len(), 3);
        assert!(z.vectors.iter().any(|v| v == &frac_vector(&alg.one())));
        assert!(!centrality_check(&alg, &alg.basis_element(1)).unwrap());
        assert!(centrality_check(&alg, &alg.one()).unwrap());
    }

    #[test]
    fn a2_characters() {
        let alg = a2();
        let reps = &alg.spec().representations;
        let chars = basis_characters(&alg, reps).unwrap();
        for (i, r) in reps.iter().enumerate() {
            assert_eq!(chars.get(i, 0), &q(&r.dim.to_string()));
        }
        // regular character: Σ d_χ χ(b_j) = tr(L_{b_j})
        for j in 0..alg.dim() {
            let l = alg.mul_matrix(&alg.basis_element(j), crate::hecke::Side::Left).unwrap();
            let tr = (0..alg.dim()).fold(LaurentPoly::zero(2), |acc, i| &acc + l.get(i, i));
            let regular = reps
                .iter()
                .enumerate()
                .fold(RatFunc::zero(2), |acc, (i, r)| &acc + &(&q(&r.dim.to_string()) * chars.get(i, j)));
            assert_eq!(regular, RatFunc::from_poly(tr));
        }
        let minimal = &alg.spec().class_reps("minimal").unwrap().basis;
        let m = FracMatrix::from_columns(&minimal.iter().map(|&c| chars.column(c)).collect::<Vec<_>>()).unwrap();
        assert_eq!(frac_nullspace(&m).unwrap().len(), 0);
    }

    #[test]
    fn non_separating_representatives_are_rejected() {
        let alg = a2();
        let reps = &alg.spec().representations;
        // s and t are conjugate
        let err = class_coeffs(&alg, reps, &[0, 1, 2], CoeffMode::FOnBasis, None).unwrap_err();
        assert!(matches!(err, CenterError::Separation));
    }

    #[test]
    fn span_compare_scaling() {
        let alg = a2();
        let z = commutant_center(&alg).unwrap();
        let r = span_compare(&alg, &z, &z).unwrap();
        assert!(r.equal_f_span && r.x_in_r_span_of_y && r.y_in_r_span_of_x);
        let scale = |f: &RatFunc| CenterBasis {
            provenance: Provenance::Reference,
            vectors: z.vectors.iter().map(|v| v.iter().map(|x| x * f).collect()).collect(),
        };
        let unit = span_compare(&alg, &z, &scale(&q("u1"))).unwrap();
        assert!(unit.equal_f_span && unit.x_in_r_span_of_y && unit.y_in_r_span_of_x);
        let nonunit = span_compare(&alg, &z, &scale(&q("u1 + u2"))).unwrap();
        assert!(nonunit.equal_f_span && !nonunit.x_in_r_span_of_y && nonunit.y_in_r_span_of_x);
    }

    #[test]
    fn class_coefficient_pipelines_are_central() {
        let alg = a2();
        let g = gram(&alg).unwrap();
        let duals = dual_basis(&g).unwrap();
        let reps = &alg.spec().representations;
        for set in ["minimal", "maximal"] {
            let cr = &alg.spec().class_reps(set).unwrap().basis;
            let f = class_coeffs(&alg, reps, cr, CoeffMode::FOnBasis, None).unwrap();
            let y = build_center(&alg, &f, BuildMode::YFromDuals, Some(&duals)).unwrap();
            let gc = class_coeffs(&alg, reps, cr, CoeffMode::GOnDuals, Some(&duals)).unwrap();
            let z = build_center(&alg, &gc, BuildMode::ZFromBasis, None).unwrap();
            let c = commutant_center(&alg).unwrap();
            for b in [&y, &z] {
                let r = span_compare(&alg, b, &c).unwrap();
                assert!(r.equal_f_span, "{set}");
            }
        }
    }
}
