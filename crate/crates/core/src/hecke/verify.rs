use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::linalg::PolyMatrix;
use crate::ring::{random_point, LaurentPoly};

use super::algebra::HeckeAlgebra;
use super::word::BraidWord;
use super::SpecError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, result: Result<bool, SpecError>) -> Self {
        let name = name.into();
        match result {
            Ok(passed) => Check {
                name,
                passed,
                detail: None,
            },
            Err(e) => Check {
                name,
                passed: false,
                detail: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub group: String,
    pub checks: Vec<Check>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// `Σ coeffs[j] M^j`.
fn matrix_poly(m: &PolyMatrix, coeffs: &[LaurentPoly]) -> Result<PolyMatrix, SpecError> {
    let zero = LaurentPoly::zero(coeffs[0].nvars());
    let mut power = PolyMatrix::identity(m.rows(), &zero);
    let mut acc = PolyMatrix::zeros(m.rows(), m.cols(), &zero);
    for (j, c) in coeffs.iter().enumerate() {
        if j > 0 {
            power = power.mul(m)?;
        }
        if !c.is_zero() {
            acc = acc.add(&power.scale(c))?;
        }
    }
    Ok(acc)
}

/// `ρ(σ)^e - a_{e-1} ρ(σ)^{e-1} - ... - a_0 = 0`.
fn hecke_holds(alg: &HeckeAlgebra, g: usize) -> Result<bool, SpecError> {
    let mut coeffs: Vec<LaurentPoly> = alg.spec().relation_for(g).iter().map(|a| -a).collect();
    coeffs.push(LaurentPoly::one(alg.nvars()));
    Ok(matrix_poly(alg.generator_matrix(g), &coeffs)?.is_zero())
}

/// The solved inverse is a two-sided inverse and agrees with the inverse Hecke relation
/// `σ^{-1} = a_0^{-1}(σ^{e-1} - a_{e-1} σ^{e-2} - ... - a_1)`.
fn inverse_holds(alg: &HeckeAlgebra, g: usize) -> Result<bool, SpecError> {
    let m = alg.generator_matrix(g);
    let inv = alg.inverse_matrix(g)?;
    let id = PolyMatrix::identity(m.rows(), &LaurentPoly::zero(alg.nvars()));
    if m.mul(inv)? != id || inv.mul(m)? != id {
        return Ok(false);
    }
    let a = alg.spec().relation_for(g);
    let a0_inv = a[0]
        .unit_inverse()
        .ok_or_else(|| SpecError::Invalid("constant term of the Hecke relation is not a unit".into()))?;
    let e = a.len();
    let mut coeffs: Vec<LaurentPoly> = (1..e).map(|j| -&(&a0_inv * &a[j])).collect();
    coeffs.push(a0_inv);
    Ok(&matrix_poly(m, &coeffs)? == inv)
}

fn central_holds(alg: &HeckeAlgebra, w: &BraidWord) -> Result<bool, SpecError> {
    let z = alg.word_matrix(w)?;
    for g in 0..alg.generator_count() {
        let s = alg.generator_matrix(g);
        if z.mul(s)? != s.mul(&z)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs every relation check and records each outcome.
pub fn check_relations(alg: &HeckeAlgebra) -> RelationReport {
    let spec = alg.spec();
    let mut checks = Vec::new();
    checks.push(Check::new(
        format!("rank |W| = e*m = {}*{}", spec.e(), spec.coset_count),
        Ok(spec.e() * spec.coset_count == spec.dim()),
    ));
    for (l, r) in &spec.braid_relations {
        let result = (|| Ok(alg.word_matrix(l)? == alg.word_matrix(r)?))();
        checks.push(Check::new(format!("braid {l} = {r}"), result));
    }
    for g in 0..alg.generator_count() {
        checks.push(Check::new(format!("hecke relation of s{}", g + 1), hecke_holds(alg, g)));
    }
    for g in 0..alg.generator_count() {
        checks.push(Check::new(format!("inverse of s{}", g + 1), inverse_holds(alg, g)));
    }
    for w in &spec.central_words {
        checks.push(Check::new(format!("central {w}"), central_holds(alg, w)));
    }
    let basis = (|| {
        for j in 0..alg.dim() {
            if alg.word_to_element(alg.basis_word(j))? != alg.basis_element(j) {
                return Err(SpecError::Relation(format!(
                    "word {} of b{} does not evaluate to b{}",
                    alg.basis_word(j),
                    j + 1,
                    j + 1
                )));
            }
        }
        Ok(true)
    })();
    checks.push(Check::new("basis words evaluate to unit vectors", basis));
    RelationReport {
        group: spec.name.clone(),
        checks,
    }
}

/// As [`check_relations`], failing with the names of all violated relations.
pub fn verify_relations(alg: &HeckeAlgebra) -> Result<RelationReport, SpecError> {
    let report = check_relations(alg);
    if report.passed() {
        Ok(report)
    } else {
        let names: Vec<String> = report.failures().iter().map(|c| c.name.clone()).collect();
        Err(SpecError::Relation(names.join("; ")))
    }
}

type QMatrix = Vec<Vec<BigRational>>;

fn specialize_matrix(m: &PolyMatrix, point: &[BigRational]) -> Result<QMatrix, SpecError> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p| p.specialize(point).map_err(SpecError::from))
                .collect()
        })
        .collect()
}

fn q_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(BigRational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Braid and Hecke relations re-checked over `Q` at `points` random specializations.
pub fn specialized_relations_hold<G: Rng>(alg: &HeckeAlgebra, rng: &mut G, points: usize) -> Result<bool, SpecError> {
    let spec = alg.spec();
    for _ in 0..points {
        let pt = random_point(rng, alg.nvars());
        let gens = (0..alg.generator_count())
            .map(|g| specialize_matrix(alg.generator_matrix(g), &pt))
            .collect::<Result<Vec<_>, _>>()?;
        let positive = |w: &BraidWord| -> QMatrix {
            let n = alg.dim();
            let mut acc: QMatrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
                .collect();
            for &(g, e) in w.letters() {
                for _ in 0..e {
                    acc = q_mul(&acc, &gens[g]);
                }
            }
            acc
        };
        for (l, r) in &spec.braid_relations {
            if positive(l) != positive(r) {
                return Ok(false);
            }
        }
        for (g, m) in gens.iter().enumerate() {
            let a = spec.relation_for(g);
            let e = a.len();
            let mut powers = vec![positive(&BraidWord::empty())];
            for _ in 0..e {
                powers.push(q_mul(powers.last().unwrap(), m));
            }
            let mut rhs: QMatrix = powers[0].iter().map(|r| r.iter().map(|_| BigRational::zero()).collect()).collect();
            for (j, aj) in a.iter().enumerate() {
                let c = aj.specialize(&pt)?;
                for (ri, pi) in rhs.iter_mut().zip(&powers[j]) {
                    for (x, y) in ri.iter_mut().zip(pi) {
                        *x += &c * y;
                    }
                }
            }
            if rhs != powers[e] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
