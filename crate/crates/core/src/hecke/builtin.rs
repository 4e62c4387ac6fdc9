//! Generators for the shipped group files.
//!
//! The constants of the Hecke relations are computed from elementary symmetric
//! polynomials here; the JSON files under `groups/` are the output of these functions and a
//! test keeps them in sync.

use serde_json::Value;

use crate::center::RepresentationJson;
use crate::ring::{LaurentPoly, PolyJson, RatFunc};

use super::hprime::{HPrimeElement, HPrimeRing};
use super::spec::{ClassRepsJson, GroupSpecFile};
use super::word::{BraidWord, WordJson};

pub const A2_JSON: &str = include_str!("../../../../groups/a2.json");
pub const G4_JSON: &str = include_str!("../../../../groups/g4.json");

pub const BUILTIN_NAMES: [&str; 2] = ["a2", "g4"];

/// Text of a shipped spec file by builtin name.
pub fn shipped_json(name: &str) -> Option<&'static str> {
    match name {
        "a2" => Some(A2_JSON),
        "g4" => Some(G4_JSON),
        _ => None,
    }
}

/// Freshly generated spec file by builtin name.
pub fn generate(name: &str) -> Option<GroupSpecFile> {
    match name {
        "a2" => Some(a2()),
        "g4" => Some(g4()),
        _ => None,
    }
}

fn w(text: &str) -> WordJson {
    BraidWord::parse(text).expect("builtin word").to_json()
}

fn hp_json(h: &HPrimeElement) -> Vec<PolyJson> {
    h.0.iter().map(LaurentPoly::to_json).collect()
}

/// `m x m` matrix over `H'` from its nonzero entries `(row, col, value)` (0-based).
fn sparse(ring: &HPrimeRing, m: usize, entries: Vec<(usize, usize, HPrimeElement)>) -> Vec<Vec<Vec<PolyJson>>> {
    let zero = hp_json(&ring.zero());
    let mut out = vec![vec![zero; m]; m];
    for (i, j, h) in entries {
        out[i][j] = hp_json(&h);
    }
    out
}

/// Type `A2` with `W' = <s>`, cosets `1, t, ts`; basis `T_1, T_s, T_t, T_st, T_ts, T_sts`.
pub fn a2() -> GroupSpecFile {
    let k = 2;
    let r = HPrimeRing::from_parameters(k, &[0, 1]).expect("unit constant term");
    // T^2 = c T + d
    let d = r.relation()[0].clone();
    let c = r.relation()[1].clone();
    let sc = |p: &LaurentPoly| r.scalar(p.clone());
    let s = r.sigma();
    let one = r.one();

    let rho_s = sparse(
        &r,
        3,
        vec![(0, 0, s.clone()), (1, 2, one.clone()), (2, 1, sc(&d)), (2, 2, sc(&c))],
    );
    let rho_t = sparse(
        &r,
        3,
        vec![(0, 1, one.clone()), (1, 0, sc(&d)), (1, 1, sc(&c)), (2, 2, s)],
    );

    let u1 = LaurentPoly::var(k, 0);
    let u2 = LaurentPoly::var(k, 1);
    let zero = LaurentPoly::zero(k);
    let f = |p: &LaurentPoly| RatFunc::from_poly(p.clone()).to_json();
    let scalar_rep = |name: &str, u: &LaurentPoly| RepresentationJson {
        name: name.into(),
        dim: 1,
        generators: vec![vec![vec![f(u)]], vec![vec![f(u)]]],
    };
    let reflection = RepresentationJson {
        name: "reflection".into(),
        dim: 2,
        generators: vec![
            vec![vec![f(&u1), f(&zero)], vec![f(&LaurentPoly::one(k)), f(&u2)]],
            vec![vec![f(&u2), f(&d)], vec![f(&zero), f(&u1)]],
        ],
    };

    GroupSpecFile {
        name: "A2".into(),
        k,
        generator_count: 2,
        orders: vec![2],
        parameters: vec![vec![1, 2]],
        generator_family: vec![1, 1],
        group_order: 6,
        braid_relations: vec![(w("s1 s2 s1"), w("s2 s1 s2"))],
        distinguished: 1,
        e: 2,
        coset_count: 3,
        rho: vec![rho_s, rho_t],
        coset_words: vec![w("1"), w("s2"), w("s2 s1")],
        class_count: 3,
        class_reps: vec![
            ClassRepsJson {
                name: "minimal".into(),
                basis: vec![1, 2, 4],
            },
            ClassRepsJson {
                name: "maximal".into(),
                basis: vec![1, 6, 4],
            },
        ],
        pi_word: Some(w("s1 s2 s1 s2 s1 s2")),
        central_words: vec![w("s1 s2 s1 s2 s1 s2")],
        reference_center: None,
        basis_labels: Some(
            ["T_1", "T_s", "T_t", "T_st", "T_ts", "T_sts"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        ),
        representations: vec![scalar_rep("index", &u1), scalar_rep("sign", &u2), reflection],
    }
}

/// The exceptional group `G4` with `W' = <s1>`, eight cosets and basis
/// `b_{3i+p+1} = σ1^p x_{i+1}`.
pub fn g4() -> GroupSpecFile {
    let k = 3;
    let r = HPrimeRing::from_parameters(k, &[0, 1, 2]).expect("unit constant term");
    // σ^3 = a σ^2 + b σ + c
    let c = r.relation()[0].clone();
    let b = r.relation()[1].clone();
    let a = r.relation()[2].clone();
    let ci = c.unit_inverse().expect("c is a unit");
    let ci2 = &ci * &ci;

    let sc = |p: LaurentPoly| r.scalar(p);
    let s = r.sigma();
    let s2 = r.sigma_pow(2);
    let s_inv = r.sigma_inverse();
    let s_inv2 = r.sigma_pow(-2);
    let one = r.one();
    // p + q σ
    let lin = |p: LaurentPoly, q: LaurentPoly| r.add(&sc(p), &r.scale(&s, &q));

    let mut rho1 = Vec::new();
    for base in [0, 4] {
        rho1.extend([
            (base, base, s.clone()),
            (base + 1, base + 2, s_inv.clone()),
            (base + 2, base + 3, one.clone()),
            (base + 3, base + 1, r.scale(&s, &c)),
            (base + 3, base + 2, sc(b.clone())),
            (base + 3, base + 3, sc(a.clone())),
        ]);
    }
    let rho1 = sparse(&r, 8, rho1);

    let a2 = &a * &a;
    let b2 = &b * &b;
    let c2 = &c * &c;
    let rho2 = sparse(
        &r,
        8,
        vec![
            (0, 1, one.clone()),
            (1, 2, sc(-&(&b * &ci))),
            (1, 4, r.scale(&s_inv2, &-&(&a * &ci))),
            (1, 5, r.scale(&s_inv, &-&(&b * &ci2))),
            (1, 6, r.scale(&s_inv2, &-&(&a * &ci2))),
            (1, 7, r.scale(&s_inv2, &ci2)),
            (2, 2, s.clone()),
            (3, 4, s_inv.clone()),
            (4, 5, one.clone()),
            (5, 3, r.scale(&s, &c)),
            (5, 4, sc(b.clone())),
            (5, 5, sc(a.clone())),
            // entry (7,7) is σ1; the constant 1 there breaks the relations
            (6, 6, s.clone()),
            (7, 0, r.scale(&s2, &(&c2 * &c))),
            (7, 1, r.scale(&s2, &(&b * &c2))),
            (7, 2, lin(&b * &c2, &b2 * &c)),
            (7, 3, r.scale(&s2, &(&b * &c))),
            (7, 4, lin(-&(&a2 * &c), b2.clone())),
            (7, 5, sc(&a * &c)),
            (7, 6, lin(-&a2, a.clone())),
            (7, 7, sc(a.clone())),
        ],
    );

    let reference = g4_reference_center(&a, &b, &c);

    GroupSpecFile {
        name: "G4".into(),
        k,
        generator_count: 2,
        orders: vec![3],
        parameters: vec![vec![1, 2, 3]],
        generator_family: vec![1, 1],
        group_order: 24,
        braid_relations: vec![(w("s1 s2 s1"), w("s2 s1 s2"))],
        distinguished: 1,
        e: 3,
        coset_count: 8,
        rho: vec![rho1, rho2],
        coset_words: [
            "1",
            "s2",
            "s2 s1 s2",
            "s2 s1 s2 s1",
            "s1 s2 s1 s2 s1 s2",
            "s1 s2 s1 s2 s1 s2 s2",
            "s1 s2 s1 s2 s1 s2 s2 s1 s2",
            "s1 s2 s1 s2 s1 s2 s2 s1 s2 s1",
        ]
        .iter()
        .map(|t| w(t))
        .collect(),
        class_count: 7,
        class_reps: vec![ClassRepsJson {
            name: "reference".into(),
            basis: vec![1, 10, 13, 15, 22, 23, 24],
        }],
        pi_word: Some(BraidWord::parse("s1 s2").unwrap().pow(6).to_json()),
        central_words: vec![
            BraidWord::parse("s1 s2").unwrap().pow(3).to_json(),
            BraidWord::parse("s1 s2").unwrap().pow(6).to_json(),
        ],
        reference_center: Some(
            reference
                .iter()
                .map(|v| v.iter().map(LaurentPoly::to_json).collect())
                .collect(),
        ),
        basis_labels: None,
        representations: Vec::new(),
    }
}

/// Reference center basis `z1..z7` of the `G4` Hecke algebra.
fn g4_reference_center(a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly) -> Vec<Vec<LaurentPoly>> {
    let k = a.nvars();
    let one = LaurentPoly::one(k);
    let c2 = c * c;
    let c3 = &c2 * c;
    let vec_of = |entries: Vec<(Vec<usize>, LaurentPoly)>| {
        let mut v = vec![LaurentPoly::zero(k); 24];
        for (idx, coeff) in entries {
            for j in idx {
                v[j - 1] = &v[j - 1] + &coeff;
            }
        }
        v
    };
    vec![
        vec_of(vec![
            (vec![3, 5], a * &c3),
            (vec![6, 7], &(&(a * b) * &c2) + &c3),
            (vec![8], &(&(b * &c2) + &(&(a * &(b * b)) * c)) - &(&(a * a) * &c2)),
            (vec![9, 11], a * &c2),
            (vec![12], &(&(a * b) * c) + &c2),
            (vec![14], &(&(&(b * c) * &LaurentPoly::constant(k, 2)) + &(a * &(b * b))) - &(&(a * a) * c)),
            (vec![18, 19], c.clone()),
            (vec![20], b.clone()),
            (vec![24], one.clone()),
        ]),
        vec_of(vec![
            (vec![3], c3.clone()),
            (vec![6, 7], b * &c2),
            (vec![8], &(b * b) * c),
            (vec![12], b * c),
            (vec![14], &(b * b) - &(a * c)),
            (vec![17], c.clone()),
            (vec![20], -a),
            (vec![21, 23], one.clone()),
        ]),
        vec_of(vec![
            (vec![14, 16], c.clone()),
            (vec![19], -a),
            (vec![20, 22], one.clone()),
        ]),
        vec_of(vec![
            (vec![5], c2.clone()),
            (vec![8], -&(a * c)),
            (vec![9, 11], c.clone()),
            (vec![14], -a),
            (vec![15], one.clone()),
        ]),
        vec_of(vec![(vec![13], one.clone())]),
        vec_of(vec![
            (vec![2, 4], c.clone()),
            (vec![7], -a),
            (vec![8, 10], one.clone()),
        ]),
        vec_of(vec![(vec![1], one)]),
    ]
}

/// JSON with short arrays kept on one line, so matrices read row by row.
pub fn render_json(value: &Value) -> String {
    let mut out = String::new();
    render(value, 0, &mut out);
    out.push('\n');
    out
}

fn render(value: &Value, indent: usize, out: &mut String) {
    const WIDTH: usize = 100;
    let compact = value.to_string();
    if compact.len() + indent <= WIDTH || !(value.is_array() || value.is_object()) {
        out.push_str(&compact);
        return;
    }
    let pad = " ".repeat(indent + 2);
    match value {
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                render(item, indent + 2, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&" ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                render(item, indent + 2, out);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&" ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

/// Rendered text of a generated spec file.
pub fn generated_text(name: &str) -> Option<String> {
    let file = generate(name)?;
    Some(render_json(&serde_json::to_value(file).expect("serializable")))
}
