use serde::{Deserialize, Serialize};

use crate::hecke::{BraidWord, HeckeAlgebra, SpecError};
use crate::linalg::{frac_solve_many, FracMatrix, LinalgError};
use crate::ring::{RatFunc, RatFuncJson};

/// JSON form of a representation: one `dim x dim` matrix per generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationJson {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<Vec<Vec<RatFuncJson>>>,
}

/// A matrix representation of `H` over `Frac(R)`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<FracMatrix>,
    inverses: Vec<FracMatrix>,
}

impl Representation {
    pub fn new(name: &str, generators: Vec<FracMatrix>) -> Result<Self, SpecError> {
        let dim = generators.first().map_or(0, FracMatrix::rows);
        if dim == 0 || generators.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(SpecError::Invalid(format!("representation `{name}` has inconsistent shapes")));
        }
        let id = FracMatrix::identity(dim, generators[0].get(0, 0));
        let mut inverses = Vec::with_capacity(generators.len());
        for (g, m) in generators.iter().enumerate() {
            let columns = frac_solve_many(m, &id)
                .map_err(|e| SpecError::Invalid(format!("`{name}`: s{} is not invertible ({e})", g + 1)))?
                .into_iter()
                .map(|s| s.unique().ok_or(LinalgError::Singular))
                .collect::<Result<Vec<_>, _>>()?;
            inverses.push(FracMatrix::from_columns(&columns)?);
        }
        Ok(Representation {
            name: name.to_string(),
            dim,
            generators,
            inverses,
        })
    }

    pub fn from_json(nvars: usize, generator_count: usize, json: &RepresentationJson) -> Result<Self, SpecError> {
        if json.generators.len() != generator_count {
            return Err(SpecError::Invalid(format!(
                "representation `{}` must give one matrix per generator",
                json.name
            )));
        }
        let mut gens = Vec::with_capacity(json.generators.len());
        for m in &json.generators {
            let rows = m
                .iter()
                .map(|r| r.iter().map(|x| RatFunc::from_json(nvars, x)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let mat = FracMatrix::from_rows(rows)?;
            if mat.rows() != json.dim || mat.cols() != json.dim {
                return Err(SpecError::Invalid(format!(
                    "representation `{}` declares dimension {} but has a {}x{} matrix",
                    json.name,
                    json.dim,
                    mat.rows(),
                    mat.cols()
                )));
            }
            gens.push(mat);
        }
        Self::new(&json.name, gens)
    }

    /// Image of a braid word (product of generator images in word order).
    pub fn word_matrix(&self, w: &BraidWord) -> Result<FracMatrix, SpecError> {
        let mut acc = FracMatrix::identity(self.dim, self.generators[0].get(0, 0));
        for &(g, e) in w.letters() {
            let m = if e > 0 {
                self.generators.get(g)
            } else {
                self.inverses.get(g)
            }
            .ok_or_else(|| SpecError::Word(format!("representation has no generator s{}", g + 1)))?;
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(m)?;
            }
        }
        Ok(acc)
    }

    /// Images of the basis elements `b_1..b_|W|`.
    pub fn basis_matrices(&self, alg: &HeckeAlgebra) -> Result<Vec<FracMatrix>, SpecError> {
        (0..alg.dim()).map(|j| self.word_matrix(alg.basis_word(j))).collect()
    }

    /// Checks the braid relations and the Hecke relation of every generator exactly.
    pub fn verify(&self, alg: &HeckeAlgebra) -> Result<(), SpecError> {
        let spec = alg.spec();
        for (l, r) in &spec.braid_relations {
            if self.word_matrix(l)? != self.word_matrix(r)? {
                return Err(SpecError::Relation(format!("`{}` violates {l} = {r}", self.name)));
            }
        }
        for (g, m) in self.generators.iter().enumerate() {
            let a = spec.relation_for(g);
            let proto = m.get(0, 0);
            let mut power = FracMatrix::identity(self.dim, proto);
            let mut rhs = FracMatrix::zeros(self.dim, self.dim, proto);
            for aj in &a {
                rhs = rhs.add(&power.scale(&RatFunc::from_poly(aj.clone())))?;
                power = power.mul(m)?;
            }
            if power != rhs {
                return Err(SpecError::Relation(format!(
                    "`{}` violates the Hecke relation of s{}",
                    self.name,
                    g + 1
                )));
            }
        }
        Ok(())
    }
}
