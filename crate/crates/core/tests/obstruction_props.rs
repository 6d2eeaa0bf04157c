mod common;

use common::*;
use proptest::prelude::*;

use rinehart::enveloping::{RewriteSystem, TruncatedEnvelope};
use rinehart::finalg::Character;
use rinehart::lierinehart::{make_character_module, Anchor, LieAlgebra, LieRinehartData};
use rinehart::obstruction::{
    build_and_verify_right_action, solve_partial, theorem1_pipeline, verify_partial, PartialMap,
};
use rinehart::presets;
use rinehart::report::Verdict;
use rinehart::scalars::SolveOutcome;

fn instance(seed: u64) -> Option<LieRinehartData> {
    let mut g = rng(seed);
    let field = [q(), gf(2), gf(3), gf(5)][(seed % 4) as usize];
    let r = random_monomial_quotient(&mut g, field);
    let l = if seed.is_multiple_of(3) {
        LieAlgebra::abelian(field, vec!["a".into(), "b".into()]).unwrap()
    } else {
        LieAlgebra::abelian(field, vec!["a".into()]).unwrap()
    };
    let anchor = Anchor::new((0..l.dim()).map(|_| random_derivation(&mut g, &r)).collect());
    let chi = Character::augmentation(&r);
    make_character_module(r, l, anchor, chi).ok()
}

fn candidates(seed: u64, data: &LieRinehartData) -> Vec<PartialMap> {
    let mut g = rng(seed ^ 0x9e37_79b9);
    let mut out = vec![PartialMap::zero(data), PartialMap::new(vec![data.r().one(); data.l().dim()])];
    for _ in 0..4 {
        out.push(PartialMap::new(
            (0..data.l().dim()).map(|_| sparse_element(&mut g, data.r(), 0.5)).collect(),
        ));
    }
    let solved = solve_partial(data).unwrap();
    if let Some(p) = solved.partial_map(data) {
        for dir in solved.free_directions(data) {
            let c = small(&mut g, data.field());
            out.push(PartialMap::new(
                p.values.iter().zip(&dir.values).map(|(v, d)| v.add(&d.scale(&c))).collect(),
            ));
        }
        out.push(p);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_and_right_action_agree(seed in any::<u64>()) {
        let Some(data) = instance(seed) else { return Ok(()) };
        let solved = solve_partial(&data).unwrap();
        prop_assert!(solved.verify());
        let env = TruncatedEnvelope::new(RewriteSystem::new(&data).unwrap(), 3);
        if let Some(p) = solved.partial_map(&data) {
            prop_assert!(verify_partial(&data, &p).unwrap().passed());
            for d in 1..=3 {
                let env_d = TruncatedEnvelope::new(RewriteSystem::new(&data).unwrap(), d);
                prop_assert!(build_and_verify_right_action(&data, &p, &env_d).unwrap().passed());
            }
        }
        for c in candidates(seed, &data) {
            let direct = verify_partial(&data, &c).unwrap().passed();
            let action = build_and_verify_right_action(&data, &c, &env).unwrap().passed();
            prop_assert_eq!(direct, action);
            if !solved.is_feasible() {
                prop_assert!(!action);
            }
        }
    }

    #[test]
    fn certificates_recheck_from_dense(seed in any::<u64>()) {
        let Some(data) = instance(seed) else { return Ok(()) };
        let solved = solve_partial(&data).unwrap();
        let a = solved.system.to_dense();
        let b = solved.system.rhs();
        let f = data.field();
        match &solved.outcome {
            SolveOutcome::Infeasible { certificate } => {
                for c in 0..a.cols() {
                    let s = (0..a.rows()).fold(f.zero(), |acc, r| &acc + &(&certificate[r] * a.get(r, c)));
                    prop_assert!(s.is_zero());
                }
                let ub = (0..a.rows()).fold(f.zero(), |acc, r| &acc + &(&certificate[r] * &b[r]));
                prop_assert!(!ub.is_zero());
            }
            SolveOutcome::Feasible { witness, .. } => {
                prop_assert_eq!(a.mul_vec(witness), b.to_vec());
            }
        }
    }
}

#[test]
fn verdict_structure_is_field_independent() {
    let reference: Vec<Verdict> = theorem1_pipeline(q(), 8).unwrap().report.verdicts().into_iter().map(|v| v.1).collect();
    for p in [2, 3, 5] {
        let rep = theorem1_pipeline(gf(p), 8).unwrap();
        let verdicts: Vec<Verdict> = rep.report.verdicts().into_iter().map(|v| v.1).collect();
        assert_eq!(verdicts, reference, "GF({p})");
        assert!(!rep.partial_outcome.is_feasible());
    }
}

#[test]
fn divisibility_is_degree_stable() {
    for field in [q(), gf(2)] {
        let sys = RewriteSystem::new(&presets::square_zero_data(field)).unwrap();
        let x = sys.parse_element("x").unwrap();
        let y = sys.parse_element("y").unwrap();
        for d in 1..=8 {
            let div = TruncatedEnvelope::new(sys.clone(), d).left_divide(&x, &y).unwrap();
            assert!(!div.is_feasible());
            assert!(div.verify());
        }
        // y = ᾱ·x, so ᾱ does divide y on the left
        let alpha = sys.parse_element("alpha").unwrap();
        let div = TruncatedEnvelope::new(sys.clone(), 1).left_divide(&alpha, &y).unwrap();
        assert!(div.is_feasible());
        assert!(div.verify());
    }
}
