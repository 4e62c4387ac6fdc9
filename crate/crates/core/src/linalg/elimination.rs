//! Fraction-free elimination over `R` and the solvers over `Frac(R)` built on it.
//!
//! Every interior division is performed with [`LaurentPoly::exact_div`]; a remainder
//! would surface as [`LinalgError::InexactDivision`] instead of silently producing a
//! wrong answer.

use super::matrix::{FracMatrix, Matrix, PolyMatrix};
use super::LinalgError;
use crate::ring::{LaurentPoly, RatFunc};

/// Index of the nonzero entry in `col` (rows `from..`) with the fewest terms; ties go to
/// the lowest row.
fn choose_pivot(m: &PolyMatrix, col: usize, from: usize) -> Option<usize> {
    (from..m.rows())
        .filter(|&i| !m.get(i, col).is_zero())
        .min_by_key(|&i| (m.get(i, col).num_terms(), i))
}

fn exact(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, LinalgError> {
    if b.is_one() {
        return Ok(a.clone());
    }
    a.exact_div(b).map_err(|_| LinalgError::InexactDivision)
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det(a: &PolyMatrix) -> Result<LaurentPoly, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let nvars = a.entries().first().map_or(0, LaurentPoly::nvars);
    if n == 0 {
        return Ok(LaurentPoly::one(nvars));
    }
    let mut m = a.clone();
    let mut prev = LaurentPoly::one(nvars);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = choose_pivot(&m, k, k) else {
            return Ok(LaurentPoly::zero(nvars));
        };
        if p != k {
            m.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = m.get(k, k).clone();
        for i in k + 1..n {
            let lead = m.get(i, k).clone();
            for j in k + 1..n {
                let t = &(&pivot * m.get(i, j)) - &(&lead * m.get(k, j));
                m.set(i, j, exact(&t, &prev)?);
            }
            m.set(i, k, LaurentPoly::zero(nvars));
        }
        prev = pivot;
    }
    Ok(if negate { -&prev } else { prev })
}

/// Result of fraction-free Gauss-Jordan elimination.
///
/// Rows `0..rank` are pivot rows; row `r` has the common pivot value `scale` in column
/// `pivots[r]` and zero in every other pivot column. Rows `rank..` are zero in the
/// eliminated columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: PolyMatrix,
    pub pivots: Vec<usize>,
    pub scale: LaurentPoly,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free Gauss-Jordan elimination, choosing pivots only among the first
/// `pivot_cols` columns (the rest are carried along, e.g. right-hand sides).
pub fn fraction_free_rref(a: &PolyMatrix, pivot_cols: usize) -> Result<Echelon, LinalgError> {
    let nvars = a.entries().first().map_or(0, LaurentPoly::nvars);
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = LaurentPoly::one(nvars);
    let mut pivots = Vec::new();
    for col in 0..pivot_cols.min(cols) {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(p) = choose_pivot(&m, col, r) else {
            continue;
        };
        m.swap_rows(p, r);
        let pivot = m.get(r, col).clone();
        let pivot_row: Vec<LaurentPoly> = m.row(r).to_vec();
        for i in (0..rows).filter(|&i| i != r) {
            let lead = m.get(i, col).clone();
            if lead.is_zero() && pivot == prev {
                continue;
            }
            for j in (0..cols).filter(|&j| j != col) {
                let cur = m.get(i, j);
                let t = if lead.is_zero() {
                    if cur.is_zero() {
                        continue;
                    }
                    &pivot * cur
                } else if pivot_row[j].is_zero() {
                    if cur.is_zero() {
                        continue;
                    }
                    &pivot * cur
                } else {
                    &(&pivot * cur) - &(&lead * &pivot_row[j])
                };
                m.set(i, j, exact(&t, &prev)?);
            }
            m.set(i, col, LaurentPoly::zero(nvars));
        }
        prev = pivot;
        pivots.push(col);
    }
    Ok(Echelon {
        matrix: m,
        pivots,
        scale: prev,
    })
}

/// Rank over `Frac(R)`.
pub fn rank(a: &PolyMatrix) -> Result<usize, LinalgError> {
    Ok(fraction_free_rref(a, a.cols())?.rank())
}

/// Multiplies each row by a common denominator so the matrix lies over `R`; the row
/// space (hence nullspace and solution set of `[A | b]`) is unchanged.
pub fn clear_row_denominators(a: &FracMatrix) -> PolyMatrix {
    let nvars = a.entries().first().map_or(0, RatFunc::nvars);
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let row = a.row(i);
        let mut dens: Vec<&LaurentPoly> = Vec::new();
        for x in row {
            let d = x.denom();
            if !x.is_zero() && !d.is_one() && !dens.contains(&d) {
                dens.push(d);
            }
        }
        let common = dens
            .iter()
            .fold(LaurentPoly::one(nvars), |acc, d| &acc * *d);
        rows.push(
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        LaurentPoly::zero(nvars)
                    } else {
                        let cofactor = common.exact_div(x.denom()).expect("denominator divides product");
                        x.numer() * &cofactor
                    }
                })
                .collect(),
        );
    }
    Matrix::from_rows(rows).expect("rectangular")
}

/// Basis of the right nullspace over `R`-entries, in reduced echelon shape: the vector for
/// free column `f` has coordinate 1 at `f` and 0 at every other free column. Ordered by
/// free column.
pub fn poly_nullspace(a: &PolyMatrix) -> Result<Vec<Vec<RatFunc>>, LinalgError> {
    let ech = fraction_free_rref(a, a.cols())?;
    let nvars = a.entries().first().map_or(0, LaurentPoly::nvars);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![RatFunc::zero(nvars); a.cols()];
        v[f] = RatFunc::one(nvars);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            let entry = ech.matrix.get(r, f);
            if !entry.is_zero() {
                v[pc] = RatFunc::new(-entry, ech.scale.clone())?;
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Right nullspace over `Frac(R)`; see [`poly_nullspace`] for the shape of the result.
/// Each returned vector is checked to satisfy `A v = 0` exactly.
pub fn frac_nullspace(a: &FracMatrix) -> Result<Vec<Vec<RatFunc>>, LinalgError> {
    let cleared = clear_row_denominators(a);
    let basis = poly_nullspace(&cleared)?;
    for v in &basis {
        if a.apply(v)?.iter().any(|x| !x.is_zero()) {
            return Err(LinalgError::Verification("nullspace vector fails A v = 0".into()));
        }
    }
    Ok(basis)
}

/// Outcome of solving a linear system.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<RatFunc>),
    Inconsistent,
}

impl Solution {
    pub fn unique(self) -> Option<Vec<RatFunc>> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Inconsistent => None,
        }
    }
}

/// Solves `A X = B` column by column over `Frac(R)` with one elimination of `[A | B]`.
/// `A` may be square or overdetermined but must have full column rank.
pub fn frac_solve_many(a: &FracMatrix, b: &FracMatrix) -> Result<Vec<Solution>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::Dimension(format!(
            "{} equations but {} right-hand-side rows",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let aug = clear_row_denominators(&FracMatrix::hstack(&[a.clone(), b.clone()])?);
    let ech = fraction_free_rref(&aug, n)?;
    if ech.rank() < n {
        return Err(LinalgError::Underdetermined {
            free: n - ech.rank(),
        });
    }
    let nvars = aug.entries().first().map_or(0, LaurentPoly::nvars);
    let mut out = Vec::with_capacity(b.cols());
    for k in 0..b.cols() {
        let col = n + k;
        if (ech.rank()..aug.rows()).any(|r| !ech.matrix.get(r, col).is_zero()) {
            out.push(Solution::Inconsistent);
            continue;
        }
        let mut x = vec![RatFunc::zero(nvars); n];
        for (r, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = RatFunc::new(ech.matrix.get(r, col).clone(), ech.scale.clone())?;
        }
        if a.apply(&x)? != b.column(k) {
            return Err(LinalgError::Verification("A x != b after solving".into()));
        }
        out.push(Solution::Unique(x));
    }
    Ok(out)
}

/// Solves `A x = b` over `Frac(R)`; the solution is verified by substitution.
pub fn frac_solve(a: &FracMatrix, b: &[RatFunc]) -> Result<Solution, LinalgError> {
    let rhs = FracMatrix::from_columns(&[b.to_vec()])?;
    Ok(frac_solve_many(a, &rhs)?.pop().expect("one column"))
}

/// Inverse of a square matrix over `R`, required to have all entries in `R`.
pub fn poly_inverse(a: &PolyMatrix) -> Result<PolyMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let proto = a.entries().first().cloned().unwrap_or_else(|| LaurentPoly::zero(0));
    let fa = a.to_frac();
    let cols = frac_solve_many(&fa, &PolyMatrix::identity(a.rows(), &proto).to_frac())?;
    let mut columns = Vec::with_capacity(cols.len());
    for s in cols {
        let x = s.unique().ok_or(LinalgError::Singular)?;
        let col = x
            .iter()
            .map(RatFunc::to_poly)
            .collect::<Option<Vec<_>>>()
            .ok_or(LinalgError::NotIntegral)?;
        columns.push(col);
    }
    PolyMatrix::from_columns(&columns)
}

/// Writes `v = w / s` with `w` over `R` of integer content 1 and no common monomial factor.
pub fn clear_denominators(v: &[RatFunc]) -> (Vec<LaurentPoly>, RatFunc) {
    let nvars = v.first().map_or(0, RatFunc::nvars);
    let mut dens: Vec<&LaurentPoly> = Vec::new();
    for x in v {
        if !x.is_zero() && !x.denom().is_one() && !dens.contains(&x.denom()) {
            dens.push(x.denom());
        }
    }
    let common = dens.iter().fold(LaurentPoly::one(nvars), |acc, d| &acc * *d);
    let mut w: Vec<LaurentPoly> = v
        .iter()
        .map(|x| {
            if x.is_zero() {
                LaurentPoly::zero(nvars)
            } else {
                x.numer() * &common.exact_div(x.denom()).expect("denominator divides product")
            }
        })
        .collect();
    let nonzero: Vec<&LaurentPoly> = w.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return (w, RatFunc::one(nvars));
    }
    let content = nonzero
        .iter()
        .fold(num_bigint::BigInt::from(0), |g, p| num_integer::Integer::gcd(&g, &p.integer_content()));
    let shift = nonzero
        .iter()
        .map(|p| p.monomial_content())
        .reduce(|a, b| a.gcd(&b))
        .expect("nonempty");
    let factor = LaurentPoly::term(nvars, shift, content);
    for p in w.iter_mut() {
        *p = p.exact_div(&factor).expect("content divides every entry");
    }
    let scale = RatFunc::new(common, factor).expect("nonzero content");
    (w, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{random_nonzero_poly, random_point, random_poly};
    use num_rational::BigRational;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 3).unwrap()
    }

    fn pm(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect())
            .unwrap()
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &PolyMatrix) -> LaurentPoly {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut total = LaurentPoly::zero(m.get(0, 0).nvars());
        for j in 0..n {
            let minor = PolyMatrix::from_rows(
                (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect())
                    .collect(),
            )
            .unwrap();
            let t = m.get(0, j) * &cofactor_det(&minor);
            total = if j % 2 == 0 { &total + &t } else { &total - &t };
        }
        total
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize) -> PolyMatrix {
        let data = (0..n * m).map(|_| random_poly(rng, 3, 3, 1, 3)).collect();
        PolyMatrix::new(n, m, data).unwrap()
    }

    #[test]
    fn det_identity_and_diagonal() {
        let id = PolyMatrix::identity(4, &p("0"));
        assert!(bareiss_det(&id).unwrap().is_one());
        let d = PolyMatrix::diagonal(&[p("u1"), p("u2"), p("-1*u3^-1")]);
        assert_eq!(bareiss_det(&d).unwrap(), p("-1*u1*u2*u3^-1"));
        assert!(matches!(
            bareiss_det(&PolyMatrix::zeros(2, 3, &p("0"))),
            Err(LinalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = random_matrix(&mut rng, 4, 4);
            assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&m));
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 3, 3);
            let b = random_matrix(&mut rng, 3, 3);
            let ab = a.mul(&b).unwrap();
            assert_eq!(
                bareiss_det(&ab).unwrap(),
                &bareiss_det(&a).unwrap() * &bareiss_det(&b).unwrap()
            );
        }
    }

    /// Rank over Q after substituting a rational point, maximized over a few points.
    fn specialized_rank(m: &PolyMatrix, rng: &mut ChaCha8Rng) -> usize {
        (0..3)
            .map(|_| {
                let pt = random_point(rng, 3);
                let mut a: Vec<Vec<BigRational>> = (0..m.rows())
                    .map(|i| m.row(i).iter().map(|x| x.specialize(&pt).unwrap()).collect())
                    .collect();
                let mut r = 0;
                for c in 0..m.cols() {
                    let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                        continue;
                    };
                    a.swap(p, r);
                    for i in r + 1..a.len() {
                        let f = &a[i][c] / &a[r][c];
                        for j in c..m.cols() {
                            let v = &a[i][j] - &f * &a[r][j];
                            a[i][j] = v;
                        }
                    }
                    r += 1;
                }
                r
            })
            .max()
            .unwrap()
    }

    #[test]
    fn fraction_free_divisions_are_exact_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..15 {
            let m = random_matrix(&mut rng, 4, 4);
            // any inexact step would return an error here
            let ech = fraction_free_rref(&m, 4).unwrap();
            assert_eq!(ech.rank(), specialized_rank(&m, &mut rng));
            if ech.rank() == 4 {
                let d = bareiss_det(&m).unwrap();
                assert!(ech.scale == d || ech.scale == -&d);
            }
        }
    }

    #[test]
    fn rank_deficient_elimination_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let a = random_matrix(&mut rng, 5, 3);
            let b = random_matrix(&mut rng, 3, 6);
            let m = a.mul(&b).unwrap();
            let ech = fraction_free_rref(&m, 6).unwrap();
            assert_eq!(ech.rank(), specialized_rank(&m, &mut rng));
            assert!(ech.rank() <= 3);
        }
    }

    #[test]
    fn nullspace_of_zero_and_invertible() {
        let z = PolyMatrix::zeros(2, 2, &p("0")).to_frac();
        let ns = frac_nullspace(&z).unwrap();
        assert_eq!(ns.len(), 2);
        assert!(ns[0][0].is_one() && ns[0][1].is_zero());
        assert!(ns[1][1].is_one() && ns[1][0].is_zero());
        let inv = pm(&[&["u1", "1"], &["1", "u2"]]).to_frac();
        assert!(frac_nullspace(&inv).unwrap().is_empty());
    }

    #[test]
    fn nullspace_is_sound_and_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..8 {
            let a = random_matrix(&mut rng, 4, 2);
            let b = random_matrix(&mut rng, 2, 5);
            let m = a.mul(&b).unwrap();
            let ns = frac_nullspace(&m.to_frac()).unwrap();
            assert_eq!(ns.len() + specialized_rank(&m, &mut rng), 5);
            for v in &ns {
                assert!(m.to_frac().apply(v).unwrap().iter().all(RatFunc::is_zero));
            }
        }
    }

    #[test]
    fn solve_identity_and_round_trip() {
        let id = PolyMatrix::identity(3, &p("0")).to_frac();
        let b: Vec<RatFunc> = ["u1", "u2^-1 + 3", "0"]
            .iter()
            .map(|s| RatFunc::from_poly(p(s)))
            .collect();
        assert_eq!(frac_solve(&id, &b).unwrap(), Solution::Unique(b.clone()));

        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut solved = 0;
        while solved < 3 {
            let a = random_matrix(&mut rng, 5, 5);
            if bareiss_det(&a).unwrap().is_zero() {
                continue;
            }
            let b: Vec<RatFunc> = (0..5)
                .map(|_| RatFunc::from_poly(random_poly(&mut rng, 3, 2, 1, 5)))
                .collect();
            let x = frac_solve(&a.to_frac(), &b).unwrap().unique().unwrap();
            assert_eq!(a.to_frac().apply(&x).unwrap(), b);
            solved += 1;
        }
    }

    #[test]
    fn solve_reports_inconsistency_and_underdetermined() {
        let a = pm(&[&["1", "0"], &["0", "1"], &["1", "1"]]).to_frac();
        let b: Vec<RatFunc> = ["1", "1", "3"].iter().map(|s| RatFunc::from_poly(p(s))).collect();
        assert_eq!(frac_solve(&a, &b).unwrap(), Solution::Inconsistent);
        let c: Vec<RatFunc> = ["1", "1", "2"].iter().map(|s| RatFunc::from_poly(p(s))).collect();
        assert!(matches!(frac_solve(&a, &c).unwrap(), Solution::Unique(_)));
        let under = pm(&[&["1", "1"]]).to_frac();
        assert!(matches!(
            frac_solve(&under, &[RatFunc::one(3)]),
            Err(LinalgError::Underdetermined { free: 1 })
        ));
    }

    #[test]
    fn inverse_over_ring() {
        let a = pm(&[&["u1", "1"], &["0", "-1*u2"]]);
        let inv = poly_inverse(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), PolyMatrix::identity(2, &p("0")));
        assert_eq!(
            poly_inverse(&pm(&[&["2", "0"], &["0", "1"]])),
            Err(LinalgError::NotIntegral)
        );
    }

    #[test]
    fn clearing_denominators() {
        let v = vec![RatFunc::new(p("1"), p("u1")).unwrap(), RatFunc::one(3)];
        let (w, s) = clear_denominators(&v);
        assert_eq!(w, vec![p("1"), p("u1")]);
        assert_eq!(s, RatFunc::from_poly(p("u1")));

        let v = vec![RatFunc::from_poly(p("u1 + 1")), RatFunc::from_poly(p("u2"))];
        let (w, s) = clear_denominators(&v);
        assert_eq!(w, vec![p("u1 + 1"), p("u2")]);
        assert!(s.is_one());

        let v = vec![
            RatFunc::new(p("2"), p("u1 + 1")).unwrap(),
            RatFunc::new(p("4*u2"), p("u1 - 1")).unwrap(),
        ];
        let (w, s) = clear_denominators(&v);
        for (wi, vi) in w.iter().zip(&v) {
            assert_eq!(&RatFunc::new(wi.clone(), LaurentPoly::one(3)).unwrap().checked_div(&s).unwrap(), vi);
        }
        assert_eq!(
            w.iter().fold(num_bigint::BigInt::from(0), |g, p| num_integer::Integer::gcd(&g, &p.integer_content())),
            1.into()
        );
        // idempotent
        let again: Vec<RatFunc> = w.iter().cloned().map(RatFunc::from_poly).collect();
        let (w2, s2) = clear_denominators(&again);
        assert_eq!(w2, w);
        assert!(s2.is_one());
    }

    /// Determinant as the signed product of pivots of ordinary elimination over Frac(R).
    fn frac_field_det(m: &PolyMatrix) -> RatFunc {
        let mut a = m.to_frac();
        let n = a.rows();
        let mut det = RatFunc::one(3);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return RatFunc::zero(3);
            };
            if p != c {
                a.swap_rows(p, c);
                det = -&det;
            }
            let piv = a.get(c, c).clone();
            det = &det * &piv;
            for i in c + 1..n {
                let f = a.get(i, c).checked_div(&piv).unwrap();
                for j in c..n {
                    let v = a.get(i, j) - &(&f * a.get(c, j));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    #[test]
    fn bareiss_agrees_with_fraction_field_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..10 {
            let data = (0..16).map(|_| random_nonzero_poly(&mut rng, 3, 2, 1, 4)).collect();
            let m = PolyMatrix::new(4, 4, data).unwrap();
            // bareiss_det errors out on any inexact interior division
            let d = bareiss_det(&m).unwrap();
            assert_eq!(RatFunc::from_poly(d), frac_field_det(&m));
        }
    }
}
