use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::center::{Representation, RepresentationJson};
use crate::ring::{LaurentPoly, PolyJson, MAX_VARS};

use super::hprime::{hecke_relation, HPrimeElement, HPrimeMatrix, HPrimeRing};
use super::word::{BraidWord, WordJson};
use super::{builtin, SpecError};

/// Named set of class representatives, one 1-based basis index per class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassRepsJson {
    pub name: String,
    pub basis: Vec<usize>,
}

/// On-disk group description. All generator, variable and basis indices are 1-based.
///
/// Each `rho` entry is an element of `H'` given as its `e` coefficients on
/// `1, σ0, ..., σ0^{e-1}`; basis element `b_{e·i + p + 1}` is `σ0^p x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub name: String,
    /// Number of indeterminates `u1..uk`.
    pub k: usize,
    pub generator_count: usize,
    /// Order `e_s` of each conjugacy family of generators.
    pub orders: Vec<usize>,
    /// Indeterminates `u_{s,1}, ..., u_{s,e_s}` of each family.
    pub parameters: Vec<Vec<usize>>,
    pub generator_family: Vec<usize>,
    pub group_order: usize,
    pub braid_relations: Vec<(WordJson, WordJson)>,
    /// The generator `σ0` of `H'`.
    pub distinguished: usize,
    pub e: usize,
    pub coset_count: usize,
    pub rho: Vec<Vec<Vec<Vec<PolyJson>>>>,
    pub coset_words: Vec<WordJson>,
    pub class_count: usize,
    pub class_reps: Vec<ClassRepsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_word: Option<WordJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub central_words: Vec<WordJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_center: Option<Vec<Vec<PolyJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub representations: Vec<RepresentationJson>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassReps {
    pub name: String,
    /// 0-based basis indices.
    pub basis: Vec<usize>,
}

/// Structurally validated group data. Algebraic validity is established separately by
/// [`super::verify_relations`].
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub nvars: usize,
    pub generator_count: usize,
    /// 0-based indeterminate indices per family.
    pub parameters: Vec<Vec<usize>>,
    pub generator_family: Vec<usize>,
    pub group_order: usize,
    pub braid_relations: Vec<(BraidWord, BraidWord)>,
    pub distinguished: usize,
    pub coset_count: usize,
    pub hprime: HPrimeRing,
    pub rho: Vec<HPrimeMatrix>,
    pub coset_words: Vec<BraidWord>,
    pub class_count: usize,
    pub class_reps: Vec<ClassReps>,
    pub pi_word: Option<BraidWord>,
    pub central_words: Vec<BraidWord>,
    pub reference_center: Option<Vec<Vec<LaurentPoly>>>,
    pub basis_labels: Option<Vec<String>>,
    pub representations: Vec<Representation>,
    source: GroupSpecFile,
}

fn invalid(msg: impl Into<String>) -> SpecError {
    SpecError::Invalid(msg.into())
}

fn one_based(index: usize, bound: usize, what: &str) -> Result<usize, SpecError> {
    if index == 0 || index > bound {
        return Err(invalid(format!("{what} index {index} out of range 1..={bound}")));
    }
    Ok(index - 1)
}

impl GroupSpec {
    pub fn from_file(file: GroupSpecFile) -> Result<Self, SpecError> {
        let nvars = file.k;
        if nvars > MAX_VARS {
            return Err(invalid(format!("at most {MAX_VARS} indeterminates are supported")));
        }
        let ngen = file.generator_count;
        if ngen == 0 {
            return Err(invalid("no generators"));
        }
        if file.orders.len() != file.parameters.len() {
            return Err(invalid("orders and parameters list different family counts"));
        }
        let mut parameters = Vec::with_capacity(file.parameters.len());
        for (f, (vars, &order)) in file.parameters.iter().zip(&file.orders).enumerate() {
            if vars.len() != order {
                return Err(invalid(format!(
                    "family {} has order {order} but {} parameters",
                    f + 1,
                    vars.len()
                )));
            }
            parameters.push(
                vars.iter()
                    .map(|&v| one_based(v, nvars, "parameter"))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        if file.generator_family.len() != ngen {
            return Err(invalid("generator_family must list one family per generator"));
        }
        let generator_family = file
            .generator_family
            .iter()
            .map(|&f| one_based(f, parameters.len(), "family"))
            .collect::<Result<Vec<_>, _>>()?;

        let distinguished = one_based(file.distinguished, ngen, "generator")?;
        let e = file.e;
        if parameters[generator_family[distinguished]].len() != e {
            return Err(invalid("e differs from the order of the distinguished generator"));
        }
        let hprime = HPrimeRing::from_parameters(nvars, &parameters[generator_family[distinguished]])?;
        let m = file.coset_count;
        if e * m != file.group_order {
            return Err(invalid(format!(
                "e·m = {}·{} differs from the group order {}",
                e, m, file.group_order
            )));
        }
        let dim = file.group_order;

        let word = |w: &WordJson| -> Result<BraidWord, SpecError> {
            let w = BraidWord::from_json(w)?;
            if w.max_generator().is_some_and(|g| g >= ngen) {
                return Err(invalid(format!("word {w} uses an unknown generator")));
            }
            Ok(w)
        };
        let braid_relations = file
            .braid_relations
            .iter()
            .map(|(l, r)| Ok((word(l)?, word(r)?)))
            .collect::<Result<Vec<_>, SpecError>>()?;

        if file.rho.len() != ngen {
            return Err(invalid("rho must give one matrix per generator"));
        }
        let mut rho = Vec::with_capacity(ngen);
        for (g, mat) in file.rho.iter().enumerate() {
            if mat.len() != m || mat.iter().any(|row| row.len() != m) {
                return Err(invalid(format!("rho of s{} is not {m}x{m}", g + 1)));
            }
            let mut entries = Vec::with_capacity(m * m);
            for entry in mat.iter().flatten() {
                if entry.len() != e {
                    return Err(invalid(format!("rho of s{} has an entry of length ≠ {e}", g + 1)));
                }
                let coeffs = entry
                    .iter()
                    .map(|p| LaurentPoly::from_json(nvars, p))
                    .collect::<Result<Vec<_>, _>>()?;
                entries.push(HPrimeElement(coeffs));
            }
            rho.push(HPrimeMatrix { size: m, entries });
        }

        if file.coset_words.len() != m {
            return Err(invalid("coset_words must list one word per coset"));
        }
        let coset_words = file.coset_words.iter().map(word).collect::<Result<Vec<_>, _>>()?;
        if !coset_words[0].is_empty() {
            return Err(invalid("x1 must be the empty word"));
        }

        let mut class_reps = Vec::with_capacity(file.class_reps.len());
        for set in &file.class_reps {
            if set.basis.len() != file.class_count {
                return Err(invalid(format!(
                    "class representative set `{}` has {} entries, expected {}",
                    set.name,
                    set.basis.len(),
                    file.class_count
                )));
            }
            class_reps.push(ClassReps {
                name: set.name.clone(),
                basis: set
                    .basis
                    .iter()
                    .map(|&j| one_based(j, dim, "basis"))
                    .collect::<Result<Vec<_>, _>>()?,
            });
        }

        let pi_word = file.pi_word.as_ref().map(word).transpose()?;
        let central_words = file.central_words.iter().map(word).collect::<Result<Vec<_>, _>>()?;

        let reference_center = match &file.reference_center {
            None => None,
            Some(vectors) => {
                let mut out = Vec::with_capacity(vectors.len());
                for v in vectors {
                    if v.len() != dim {
                        return Err(invalid("reference_center vector of wrong length"));
                    }
                    out.push(
                        v.iter()
                            .map(|p| LaurentPoly::from_json(nvars, p))
                            .collect::<Result<Vec<_>, _>>()?,
                    );
                }
                Some(out)
            }
        };
        if file.basis_labels.as_ref().is_some_and(|l| l.len() != dim) {
            return Err(invalid("basis_labels must name every basis element"));
        }
        let representations = file
            .representations
            .iter()
            .map(|r| Representation::from_json(nvars, ngen, r))
            .collect::<Result<Vec<_>, _>>()?;

        Ok(GroupSpec {
            name: file.name.clone(),
            nvars,
            generator_count: ngen,
            parameters,
            generator_family,
            group_order: dim,
            braid_relations,
            distinguished,
            coset_count: m,
            hprime,
            rho,
            coset_words,
            class_count: file.class_count,
            class_reps,
            pi_word,
            central_words,
            reference_center,
            basis_labels: file.basis_labels.clone(),
            representations,
            source: file,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self, SpecError> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self, SpecError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// A builtin name (`a2`, `g4`) or a path to a spec file.
    pub fn resolve(name_or_path: &str) -> Result<Self, SpecError> {
        match builtin::shipped_json(name_or_path) {
            Some(text) => Self::from_json_str(text),
            None if Path::new(name_or_path).exists() => Self::from_path(Path::new(name_or_path)),
            None => Err(SpecError::UnknownGroup(name_or_path.to_string())),
        }
    }

    pub fn to_file(&self) -> &GroupSpecFile {
        &self.source
    }

    #[inline]
    pub fn e(&self) -> usize {
        self.hprime.degree()
    }

    /// `|W|`, the rank of `H` over `R`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.group_order
    }

    /// Coefficients `a_0..a_{e-1}` of the positive Hecke relation of generator `g`.
    pub fn relation_for(&self, g: usize) -> Vec<LaurentPoly> {
        hecke_relation(self.nvars, &self.parameters[self.generator_family[g]])
    }

    /// Word for `b_j = σ0^p x_i`, `j = e·i + p` (0-based).
    pub fn basis_word(&self, j: usize) -> BraidWord {
        let e = self.e();
        let p = (j % e) as i32;
        let x = &self.coset_words[j / e];
        if p == 0 {
            x.clone()
        } else {
            BraidWord::letter(self.distinguished, p).concat(x)
        }
    }

    pub fn basis_label(&self, j: usize) -> String {
        match &self.basis_labels {
            Some(labels) => labels[j].clone(),
            None => format!("b{}", j + 1),
        }
    }

    pub fn class_reps(&self, name: &str) -> Option<&ClassReps> {
        self.class_reps.iter().find(|c| c.name == name)
    }
}
