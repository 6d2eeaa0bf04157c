#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rinehart::enveloping::{Letter, NCElement, RewriteSystem};
use rinehart::finalg::{check_derivation, AlgebraElement, CommAlgebra, Derivation};
use rinehart::lierinehart::{LieAlgebra, LieRinehartData};
use rinehart::presets;
use rinehart::scalars::{FieldSpec, Scalar};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}

pub fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

pub fn small(rng: &mut Rng8, field: FieldSpec) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

/// Mostly zero, otherwise a small nonzero scalar.
pub fn sparse(rng: &mut Rng8, field: FieldSpec, density: f64) -> Scalar {
    if rng.gen_bool(density) {
        small(rng, field)
    } else {
        field.zero()
    }
}

/// `K[x]/(x^a)` or `K[x,y]/(x^a, y^b, ...)`, sometimes with a mixed relation.
pub fn random_monomial_quotient(rng: &mut Rng8, field: FieldSpec) -> CommAlgebra {
    let two = rng.gen_bool(0.6);
    let mut rel = vec![format!("x^{}", rng.gen_range(1..=4))];
    let mut vars = vec!["x"];
    if two {
        vars.push("y");
        rel.push(format!("y^{}", rng.gen_range(1..=3)));
        match rng.gen_range(0..3) {
            0 => rel.push("x*y".into()),
            1 => rel.push("x^2*y".into()),
            _ => {}
        }
    }
    let rel: Vec<&str> = rel.iter().map(String::as_str).collect();
    CommAlgebra::monomial_quotient(field, &vars, &rel).unwrap()
}

pub fn random_element(rng: &mut Rng8, alg: &CommAlgebra) -> AlgebraElement {
    let f = alg.field();
    AlgebraElement((0..alg.dim()).map(|_| small(rng, f)).collect())
}

pub fn sparse_element(rng: &mut Rng8, alg: &CommAlgebra, density: f64) -> AlgebraElement {
    let f = alg.field();
    AlgebraElement((0..alg.dim()).map(|_| sparse(rng, f, density)).collect())
}

/// A derivation from random generator images; `None` when the images do not
/// respect the relations.
pub fn try_derivation(rng: &mut Rng8, alg: &CommAlgebra, density: f64) -> Option<Derivation> {
    let nvars = alg.monomials().unwrap().variables.len();
    let images: Vec<AlgebraElement> = (0..nvars).map(|_| sparse_element(rng, alg, density)).collect();
    let d = alg.derivation_from_generators(&images)?.ok()?;
    check_derivation(alg, d.matrix()).passed().then_some(d)
}

pub fn random_derivation(rng: &mut Rng8, alg: &CommAlgebra) -> Derivation {
    for _ in 0..200 {
        if let Some(d) = try_derivation(rng, alg, 0.35) {
            return d;
        }
    }
    Derivation::zero(alg)
}

/// The Lie algebras used as enveloping-algebra controls.
pub fn controls(field: FieldSpec) -> Vec<(&'static str, LieRinehartData)> {
    vec![
        (
            "U(1-dim)",
            presets::classical_data(LieAlgebra::abelian(field, vec!["a".into()]).unwrap()),
        ),
        (
            "U(2-dim abelian)",
            presets::classical_data(LieAlgebra::abelian(field, vec!["a".into(), "b".into()]).unwrap()),
        ),
        ("U([h,e]=e)", presets::classical_data(presets::affine_line_lie(field))),
    ]
}

/// A random element with up to `terms` words of length up to `len` and at
/// most `max_l` L-letters per word.
pub fn random_nc(rng: &mut Rng8, sys: &RewriteSystem, terms: usize, len: usize, max_l: usize) -> NCElement {
    let alphabet = sys.alphabet();
    let (ls, rs): (Vec<Letter>, Vec<Letter>) = alphabet.iter().partition(|l| matches!(l, Letter::L(_)));
    let mut out = NCElement::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let n = rng.gen_range(0..=len);
        let mut w = Vec::new();
        let mut lcount = 0;
        for _ in 0..n {
            let pick_l = !ls.is_empty() && lcount < max_l && (rs.is_empty() || rng.gen_bool(0.5));
            if pick_l {
                w.push(*ls.choose(rng).unwrap());
                lcount += 1;
            } else if let Some(r) = rs.choose(rng) {
                w.push(*r);
            }
        }
        let c = sys.field().from_i64(rng.gen_range(1..=3));
        out.add_term(w, &c);
    }
    out
}

/// Exponent vector of a relation such as `x^2*y`.
pub fn relation_exponents(rel: &str, vars: &[String]) -> Vec<u32> {
    let mut e = vec![0; vars.len()];
    for factor in rel.split('*') {
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => (n, p.parse().unwrap()),
            None => (factor, 1),
        };
        e[vars.iter().position(|v| v == name.trim()).unwrap()] += pow;
    }
    e
}

/// `e_i · e_j` computed from exponent vectors: add, then zero if a relation
/// divides the result.
pub fn oracle_product(alg: &CommAlgebra, i: usize, j: usize) -> Vec<Scalar> {
    let m = alg.monomials().unwrap();
    let rels: Vec<Vec<u32>> = m.relations.iter().map(|r| relation_exponents(r, &m.variables)).collect();
    let sum: Vec<u32> = m.exponents[i].iter().zip(&m.exponents[j]).map(|(a, b)| a + b).collect();
    let mut out = vec![alg.field().zero(); alg.dim()];
    if !rels.iter().any(|r| r.iter().zip(&sum).all(|(a, b)| a <= b)) {
        let k = m.exponents.iter().position(|e| *e == sum).expect("standard monomial in basis");
        out[k] = alg.field().one();
    }
    out
}

pub fn oracle_mul(alg: &CommAlgebra, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let f = alg.field();
    let mut out = vec![f.zero(); alg.dim()];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            let xy = x * y;
            if xy.is_zero() {
                continue;
            }
            for (k, c) in oracle_product(alg, i, j).iter().enumerate() {
                out[k] = &out[k] + &(&xy * c);
            }
        }
    }
    AlgebraElement(out)
}

