mod common;

use common::*;
use proptest::prelude::*;

use rinehart::finalg::{
    check_algebra_axioms, check_character, check_derivation, derivation_commutator, multiplication_operator,
    Character, CommAlgebra,
};
use rinehart::lierinehart::{
    character_criterion, check_anchor_derivations, check_anchor_r_linear, check_leibniz, check_lie_algebra,
    check_lie_rinehart, check_module_action, make_character_module, Anchor, LieAlgebra, LieRinehartData,
    ModuleAction,
};
use rinehart::scalars::{FieldSpec, Scalar};

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(gf(2)), Just(gf(3)), Just(gf(5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn monomial_quotients_satisfy_the_axioms(seed in any::<u64>(), field in fields()) {
        let alg = random_monomial_quotient(&mut rng(seed), field);
        prop_assert!(check_algebra_axioms(&alg).passed());
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let expected = oracle_product(&alg, i, j);
                prop_assert_eq!(alg.product(i, j), expected.as_slice());
            }
        }
    }

    #[test]
    fn multiplication_operator_matches_products(seed in any::<u64>(), field in fields()) {
        let mut g = rng(seed);
        let alg = random_monomial_quotient(&mut g, field);
        let (a, b) = (random_element(&mut g, &alg), random_element(&mut g, &alg));
        let expected = oracle_mul(&alg, &a, &b);
        prop_assert_eq!(multiplication_operator(&alg, &a).mul_vec(b.coeffs()), expected.0.clone());
        prop_assert_eq!(alg.multiply(&a, &b).unwrap(), expected);
    }

    #[test]
    fn leibniz_extends_bilinearly(seed in any::<u64>(), field in fields()) {
        let mut g = rng(seed);
        let alg = random_monomial_quotient(&mut g, field);
        let d = random_derivation(&mut g, &alg);
        prop_assert!(check_derivation(&alg, d.matrix()).passed());
        for _ in 0..5 {
            let (a, b) = (random_element(&mut g, &alg), random_element(&mut g, &alg));
            let lhs = d.apply(&oracle_mul(&alg, &a, &b));
            let rhs = oracle_mul(&alg, &d.apply(&a), &b).add(&oracle_mul(&alg, &a, &d.apply(&b)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn commutators_are_derivations(seed in any::<u64>(), field in fields()) {
        let mut g = rng(seed);
        let alg = random_monomial_quotient(&mut g, field);
        let d1 = random_derivation(&mut g, &alg);
        let d2 = random_derivation(&mut g, &alg);
        prop_assert!(check_derivation(&alg, derivation_commutator(&d1, &d2).matrix()).passed());
    }

    #[test]
    fn character_criterion_matches_direct_checks(seed in any::<u64>(), field in fields()) {
        let mut g = rng(seed);
        let r = random_monomial_quotient(&mut g, field);
        let m = if rand::Rng::gen_bool(&mut g, 0.5) { 1 } else { 2 };
        let l = LieAlgebra::abelian(field, (0..m).map(|a| format!("a{a}")).collect()).unwrap();
        let anchor = Anchor::new((0..m).map(|_| random_derivation(&mut g, &r)).collect());
        let chi = Character::augmentation(&r);
        let data = LieRinehartData::new(r.clone(), l.clone(), ModuleAction::Character(chi.clone()), anchor.clone()).unwrap();
        let direct = check_leibniz(&data).passed() && check_anchor_r_linear(&data).passed();
        prop_assert_eq!(character_criterion(&r, &l, &anchor, &chi).passed(), direct);
    }

    #[test]
    fn character_modules_pass_every_component_check(seed in any::<u64>(), field in fields()) {
        let mut g = rng(seed);
        let r = random_monomial_quotient(&mut g, field);
        let l = LieAlgebra::abelian(field, vec!["a".into()]).unwrap();
        let anchor = Anchor::new(vec![random_derivation(&mut g, &r)]);
        let chi = Character::augmentation(&r);
        if let Ok(data) = make_character_module(r, l, anchor, chi) {
            prop_assert!(data.is_validated());
            prop_assert!(check_module_action(&data).passed());
            prop_assert!(check_anchor_derivations(&data).passed());
            prop_assert!(check_leibniz(&data).passed());
            prop_assert!(check_lie_rinehart(&data).passed());
        }
    }

    #[test]
    fn antisymmetry_is_checked_before_jacobi(seed in any::<u64>()) {
        let mut g = rng(seed);
        let f = FieldSpec::Rationals;
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let mut triples = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let v = sparse(&mut g, f, 0.3);
                    if !v.is_zero() {
                        triples.push((a, b, c, v));
                    }
                }
            }
        }
        let l = LieAlgebra::from_brackets(f, labels, &triples).unwrap();
        let antisymmetric = (0..3).all(|a| (0..3).all(|b| {
            l.bracket(a, b).iter().zip(l.bracket(b, a)).all(|(x, y)| (x + y).is_zero())
        }));
        let rep = check_lie_algebra(&l);
        if !antisymmetric {
            prop_assert_eq!(rep.first_witness().unwrap().property.as_str(), "antisymmetry");
        } else if !rep.passed() {
            prop_assert_eq!(rep.first_witness().unwrap().property.as_str(), "Jacobi identity");
        }
    }
}

/// Every character of `K[x,y]/(xy, x², y²)` is the augmentation: exhaustive
/// over small prime fields, and over a grid of rationals.
#[test]
fn square_zero_algebra_has_one_character() {
    for p in [2u64, 3, 5, 7] {
        let f = gf(p);
        let alg = CommAlgebra::monomial_quotient(f, &["x", "y"], &["x*y", "x^2", "y^2"]).unwrap();
        let mut found = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let chi: Vec<Scalar> = [a, b, c].iter().map(|&v| f.from_i64(v as i64)).collect();
                    if check_character(&alg, &chi).passed() {
                        found.push((a, b, c));
                    }
                }
            }
        }
        assert_eq!(found, vec![(1, 0, 0)], "GF({p})");
    }
    let q = FieldSpec::Rationals;
    let alg = CommAlgebra::monomial_quotient(q, &["x", "y"], &["x*y", "x^2", "y^2"]).unwrap();
    let mut grid: Vec<Scalar> = (-4..=4)
        .flat_map(|n| (1..=3).map(move |d| q.parse(&format!("{n}/{d}")).unwrap()))
        .collect();
    grid.sort_by_key(|s| s.to_string());
    grid.dedup();
    let mut found = 0;
    for a in &grid {
        for b in &grid {
            for c in &grid {
                if check_character(&alg, &[a.clone(), b.clone(), c.clone()]).passed() {
                    assert!(a.is_one() && b.is_zero() && c.is_zero());
                    found += 1;
                }
            }
        }
    }
    assert_eq!(found, 1);
}
